//! Links of plane-curve singularities as decorated elements of the annulus skein.
//!
//! A germ is given by truncated Puiseux data per branch. Its link is assembled from torus
//! and splice satellites by grouping branches on their leading exponent and coefficient,
//! and the axis `x = 0`, when present, becomes a decorated meridian applied last.

mod blowup;
mod branch;
mod germ;

pub use blowup::{blowup, Blowup, BlowupPoint};
pub use branch::{pairwise_linking, BranchStats, PuiseuxBranch};
pub use germ::{assemble_decorated, CurveGerm, LinkStats, LowestProfile, FRAMING_SIGN};
