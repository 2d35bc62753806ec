//! Independent numerical checks of the constructed solutions.

mod bumps;
mod grh;
mod lemmas;
pub mod quadrature;
mod scan;
mod weak;

pub use bumps::{random_bumps, verify_bumps};
pub use grh::{grh_residual, grh_residual_with_step, AtomTrack, GrhReport, DEFAULT_STEP};
pub use lemmas::{check_lemma, curve_order_checks, lemma_grid, lemma_margin, CurveLemma, LemmaCheck};
pub use scan::{classical_oracle, entropy_scan, OracleMiddle};
pub use weak::{weak_residual, weak_residual_with, ResidualReport, TestBump};

#[cfg(test)]
mod tests;
