//! Strict orderings between wave curves.

use serde::{Deserialize, Serialize};

use crate::curves::{curve_velocity, CurveId};
use crate::error::{Error, Result};
use crate::gas::{GasLaw, GasState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveLemma {
    /// `R2` left of `S22` for `rho > rho1`.
    H,
    /// `K(rho) < 0` on `[floor, rho1)`.
    K,
    /// `D1` left of `S1` for `rho > rho1`.
    D1BelowS1,
    /// `D2` left of `S2` for `rho < rho1`.
    D2AboveS2,
    /// `M2` right of `D2` on `(floor, rho1)`.
    M2BelowD2,
    /// `R1` left of `S11` for `rho < rho1`.
    R1LeftOfS11,
}

impl CurveLemma {
    pub const ALL: [CurveLemma; 6] = [
        CurveLemma::H,
        CurveLemma::K,
        CurveLemma::D1BelowS1,
        CurveLemma::D2AboveS2,
        CurveLemma::M2BelowD2,
        CurveLemma::R1LeftOfS11,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub lemma: CurveLemma,
    pub gamma: f64,
    pub rho1: f64,
    pub points: usize,
    /// Smallest margin; positive means the ordering holds strictly.
    pub min_margin: f64,
    pub argmin: f64,
    /// Margin at `rho = rho1`, expected to vanish.
    pub boundary_margin: f64,
    pub passed: bool,
}

fn k_function(law: &GasLaw, rho1: f64, rho: f64) -> f64 {
    let g = law.gamma();
    let pr = rho.powf(g);
    let d = rho - rho1;
    g * pr * d * d + (rho + rho1) * (rho + rho1) * law.pressure_jump(rho, rho1)
}

/// Positive where the lemma holds.
pub fn lemma_margin(law: &GasLaw, lemma: CurveLemma, base: GasState, rho: f64) -> f64 {
    let c = |id| curve_velocity(law, id, base, rho);
    match lemma {
        CurveLemma::H => c(CurveId::S22) - c(CurveId::R2),
        CurveLemma::K => -k_function(law, base.rho, rho),
        CurveLemma::D1BelowS1 => c(CurveId::S1) - c(CurveId::D1),
        CurveLemma::D2AboveS2 => c(CurveId::S2) - c(CurveId::D2),
        CurveLemma::M2BelowD2 => c(CurveId::M2) - c(CurveId::D2),
        CurveLemma::R1LeftOfS11 => c(CurveId::S11) - c(CurveId::R1),
    }
}

/// Default `n`-point grid inside the lemma's open domain.
pub fn lemma_grid(law: &GasLaw, lemma: CurveLemma, rho1: f64, n: usize) -> Vec<f64> {
    let log_grid = |lo: f64, hi: f64, include_lo: bool| -> Vec<f64> {
        let (a, b) = (lo.ln(), hi.ln());
        (0..n)
            .map(|i| {
                let s = if include_lo { i as f64 / (n - 1).max(1) as f64 } else { (i + 1) as f64 / n as f64 };
                (a + (b - a) * s).exp()
            })
            .collect()
    };
    let floor = law.speed_floor(rho1);
    match lemma {
        CurveLemma::H | CurveLemma::D1BelowS1 => log_grid(rho1, 1e3 * rho1, false),
        CurveLemma::D2AboveS2 | CurveLemma::R1LeftOfS11 => {
            let mut g = log_grid(rho1, 1e-6 * rho1, false);
            g.reverse();
            g
        }
        CurveLemma::K => (0..n).map(|i| floor + (rho1 - floor) * i as f64 / n as f64).collect(),
        CurveLemma::M2BelowD2 => (1..=n).map(|i| floor + (rho1 - floor) * i as f64 / (n + 1) as f64).collect(),
    }
}

/// Evaluate `lemma` on `grid`.
pub fn check_lemma(law: &GasLaw, lemma: CurveLemma, base: GasState, grid: &[f64]) -> Result<LemmaCheck> {
    base.validate()?;
    if grid.is_empty() {
        return Err(Error::argument("lemma grid is empty"));
    }
    let mut min_margin = f64::INFINITY;
    let mut argmin = f64::NAN;
    for &rho in grid {
        let m = lemma_margin(law, lemma, base, rho);
        if !(m >= min_margin) {
            min_margin = m;
            argmin = rho;
        }
    }
    Ok(LemmaCheck {
        lemma,
        gamma: law.gamma(),
        rho1: base.rho,
        points: grid.len(),
        min_margin,
        argmin,
        boundary_margin: lemma_margin(law, lemma, base, base.rho),
        passed: min_margin > 0.0,
    })
}

/// All lemmas on their default `n`-point grids.
pub fn curve_order_checks(law: &GasLaw, base: GasState, n: usize) -> Result<Vec<LemmaCheck>> {
    if n == 0 {
        return Err(Error::argument("grid must have at least one point"));
    }
    CurveLemma::ALL
        .iter()
        .map(|&lemma| check_lemma(law, lemma, base, &lemma_grid(law, lemma, base.rho, n)))
        .collect()
}
