//! Exact arithmetic in the scalar ring and in truncated `(q, Q)`-series.
//!
//! The variable `q` never appears on its own: every `q`-power is stored as `s^{2k}`, so
//! half-integer `q`-powers are ordinary `s`-powers. `Q` is a separate series variable and
//! is identified with `-v²` only when converting for a comparison.

mod laurent;
mod scalar;
mod series;
mod sseries;

pub use laurent::LaurentPoly;
pub use scalar::{LambdaScalar, VProfile};
pub use series::{
    series_build, series_build_prec, series_equal, series_first_mismatch, SeriesFactor, SeriesShape, TruncatedSeries,
};
pub use sseries::SSeries;
