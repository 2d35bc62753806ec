//! Wave curves in the `(u, rho)` phase plane.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gas::{GasLaw, GasState};
use crate::tol;

/// Named curves through (or, for the `M` family, anchored at) a base state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveId {
    S1,
    S2,
    S11,
    S22,
    R1,
    R2,
    R1Star,
    R2Star,
    D1,
    D2,
    M1,
    M2,
    M11,
    M21,
    D11,
    D21,
}

impl CurveId {
    pub const ALL: [CurveId; 16] = [
        CurveId::S1,
        CurveId::S2,
        CurveId::S11,
        CurveId::S22,
        CurveId::R1,
        CurveId::R2,
        CurveId::R1Star,
        CurveId::R2Star,
        CurveId::D1,
        CurveId::D2,
        CurveId::M1,
        CurveId::M2,
        CurveId::M11,
        CurveId::M21,
        CurveId::D11,
        CurveId::D21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveId::S1 => "S1",
            CurveId::S2 => "S2",
            CurveId::S11 => "S11",
            CurveId::S22 => "S22",
            CurveId::R1 => "R1",
            CurveId::R2 => "R2",
            CurveId::R1Star => "R1star",
            CurveId::R2Star => "R2star",
            CurveId::D1 => "D1",
            CurveId::D2 => "D2",
            CurveId::M1 => "M1",
            CurveId::M2 => "M2",
            CurveId::M11 => "M11",
            CurveId::M21 => "M21",
            CurveId::D11 => "D11",
            CurveId::D21 => "D21",
        }
    }

    /// Whether the closure of the curve contains its base state.
    pub fn passes_through_base(self) -> bool {
        !matches!(self, CurveId::M1 | CurveId::M11)
    }

    pub fn domain(self, law: &GasLaw, base_rho: f64) -> CurveDomain {
        use CurveId::*;
        let inf = f64::INFINITY;
        let floor = law.speed_floor(base_rho);
        match self {
            S1 | S22 | R2 | R1Star | D1 | D11 => CurveDomain::new(base_rho, true, inf, false),
            S2 | S11 | D2 | D21 => CurveDomain::new(0.0, false, base_rho, true),
            R1 | R2Star => CurveDomain::new(0.0, true, base_rho, true),
            M1 | M11 => CurveDomain::new(floor, true, inf, false),
            M2 | M21 => CurveDomain::new(floor, true, base_rho, true),
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveId::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::argument(format!("unknown curve `{s}`")))
    }
}

/// Density interval of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveDomain {
    pub lo: f64,
    pub lo_closed: bool,
    pub hi: f64,
    pub hi_closed: bool,
}

impl CurveDomain {
    fn new(lo: f64, lo_closed: bool, hi: f64, hi_closed: bool) -> Self {
        CurveDomain { lo, lo_closed, hi, hi_closed }
    }

    pub fn contains(&self, rho: f64) -> bool {
        let above = if self.lo_closed { rho >= self.lo } else { rho > self.lo };
        let below = if self.hi_closed { rho <= self.hi } else { rho < self.hi };
        above && below
    }
}

impl fmt::Display for CurveDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub rho: f64,
    pub u: f64,
}

/// Velocity of `curve` at density `rho`, without domain checks.
///
/// Outside the natural domain of a radical the radicand is clamped at zero.
pub fn curve_velocity(law: &GasLaw, curve: CurveId, base: GasState, rho: f64) -> f64 {
    use CurveId::*;
    let (ub, rb) = (base.u, base.rho);
    let jump = || law.pressure_jump(rho, rb);
    let shock = || ((rho - rb) * jump() / (rho * rb)).max(0.0).sqrt();
    let rare = || law.riemann_difference(rho, rb);
    let speed = || {
        let s = ((law.gamma() + 1.0) * law.p(rho) - law.p(rb)) / rb;
        (law.c(rho), s.max(0.0).sqrt())
    };
    match curve {
        S1 | S2 => ub - shock(),
        S11 | S22 => ub + shock(),
        R1 | R1Star => ub - rare(),
        R2 | R2Star => ub + rare(),
        D1 => ub - (jump() / rb).max(0.0).sqrt(),
        D11 => ub + (jump() / rb).max(0.0).sqrt(),
        D2 => ub - (-jump() / rho).max(0.0).sqrt(),
        D21 => ub + (-jump() / rho).max(0.0).sqrt(),
        M1 => {
            let (c, s) = speed();
            ub - c - s
        }
        M2 => {
            let (c, s) = speed();
            ub - c + s
        }
        M11 => {
            let (c, s) = speed();
            ub + c + s
        }
        M21 => {
            let (c, s) = speed();
            ub + c - s
        }
    }
}

fn check_base(base: GasState) -> Result<()> {
    base.validate()?;
    if base.rho <= 0.0 {
        return Err(Error::domain("curve base state must have positive density"));
    }
    Ok(())
}

/// Velocity of `curve` based at `base` at density `rho`.
pub fn eval_curve(law: &GasLaw, curve: CurveId, base: GasState, rho: f64) -> Result<f64> {
    check_base(base)?;
    let dom = curve.domain(law, base.rho);
    if !rho.is_finite() || !dom.contains(rho) {
        return Err(Error::domain(format!(
            "curve {curve} based at rho = {} requires rho in {dom}, got {rho}",
            base.rho
        )));
    }
    Ok(curve_velocity(law, curve, base, rho))
}

/// Whether `state` lies on `curve` within the on-curve tolerance.
pub fn on_curve(law: &GasLaw, curve: CurveId, base: GasState, state: GasState) -> bool {
    match eval_curve(law, curve, base, state.rho) {
        Ok(u) => tol::same_velocity(state.u, u),
        Err(_) => false,
    }
}

/// `n` points of `curve`, evenly spaced in density over `[lo, hi]`.
pub fn sample_curve(
    law: &GasLaw,
    curve: CurveId,
    base: GasState,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<CurvePoint>> {
    check_base(base)?;
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::argument(format!("empty or inverted density range [{lo}, {hi}]")));
    }
    if n < 2 {
        return Err(Error::argument("sample_curve needs at least two points"));
    }
    (0..n)
        .map(|i| {
            let rho = if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
            };
            eval_curve(law, curve, base, rho).map(|u| CurvePoint { rho, u })
        })
        .collect()
}
