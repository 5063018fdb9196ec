//! The identities relating the two sides, as executable checks.
//!
//! Each check evaluates both sides independently, fits the monomial the statement allows,
//! and reports whether the fit holds through the requested truncation orders.

mod blowup_match;
mod bookkeeping;
mod flop;
mod main_checks;
mod report;

pub use blowup_match::{blowup_term_match, blowup_terms, TermPair};
pub use bookkeeping::{delta_shift, f_lambda, one_leg_h, one_leg_h_from_vertex, one_leg_h_power};
pub use flop::{skein_flop_check, vertex_flop_check};
pub use main_checks::{calibrated_framing_sign, germ_for_kind, homfly_hilbert_check, low_order_colored_check};
pub use report::{first_difference, fit_exact, fit_leading, leading_unit, MatchReport, Monomial, Orders};
