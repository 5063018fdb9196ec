//! Partitions and the Schur-basis kernel: Littlewood–Richardson products, plethysm by
//! power sums, and the specializations the skein computations need.

mod expansion;
mod lr;
pub(crate) mod partition;
mod plethysm;
mod specialize;

pub use expansion::SchurExpansion;
pub use lr::lr_product;
pub use partition::{Partition, PartitionStats};
pub use plethysm::{character, plethysm_pm, z_factor};
pub use specialize::{
    e_mu_series, e_series_required, schur_from_e_series, schur_qmurho, schur_qmurho_with_head, schur_qrho,
};
