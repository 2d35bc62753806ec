//! Classical Riemann solver: shocks, rarefactions and vacuum.

use serde::{Deserialize, Serialize};

use crate::classify::{classify, in_vacuum_region, RegionLabel};
use crate::curves::CurveId;
use crate::error::Result;
use crate::gas::{Family, GasLaw, GasState};
use crate::problem::RiemannData;
use crate::roots;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalWave {
    pub family: Family,
    pub kind: WaveKind,
    pub left: GasState,
    pub right: GasState,
    pub sigma: Option<f64>,
    pub fan_span: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    R1R2,
    R1S2,
    S1R2,
    S1S2,
    R1VacR2,
    SingleWave,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Middle {
    None,
    State { state: GasState },
    Vacuum { head: f64, tail: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalSolution {
    pub law: GasLaw,
    pub left: GasState,
    pub right: GasState,
    pub pattern: Pattern,
    pub waves: Vec<ClassicalWave>,
    pub middle: Middle,
}

/// Velocity change across the 1-wave (left) or 2-wave (right) at middle density `rho`.
fn wave_function(law: &GasLaw, k: GasState, rho: f64) -> f64 {
    if rho > k.rho {
        ((rho - k.rho) * law.pressure_jump(rho, k.rho) / (rho * k.rho)).sqrt()
    } else {
        law.riemann_difference(rho, k.rho)
    }
}

/// Middle density from bisection on the monotone velocity mismatch.
pub fn middle_density(law: &GasLaw, left: GasState, right: GasState) -> Result<f64> {
    let f = |rho: f64| wave_function(law, left, rho) + wave_function(law, right, rho) + right.u - left.u;
    let mut hi = left.rho.max(right.rho);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    roots::bisect(f, 0.0, hi, tol::ROOT)
}

fn shock(law: &GasLaw, family: Family, left: GasState, right: GasState) -> ClassicalWave {
    let sigma = (right.momentum() - left.momentum()) / (right.rho - left.rho);
    let _ = law;
    ClassicalWave { family, kind: WaveKind::Shock, left, right, sigma: Some(sigma), fan_span: None }
}

fn fan(law: &GasLaw, family: Family, left: GasState, right: GasState) -> ClassicalWave {
    let span = match family {
        Family::First => (left.u - law.c(left.rho), right.u - law.c(right.rho)),
        Family::Second => (left.u + law.c(left.rho), right.u + law.c(right.rho)),
    };
    ClassicalWave { family, kind: WaveKind::Rarefaction, left, right, sigma: None, fan_span: Some(span) }
}

fn wave(law: &GasLaw, family: Family, left: GasState, right: GasState) -> ClassicalWave {
    let compressive = match family {
        Family::First => right.rho > left.rho,
        Family::Second => left.rho > right.rho,
    };
    if compressive {
        shock(law, family, left, right)
    } else {
        fan(law, family, left, right)
    }
}

/// Entropy solution of the classical Riemann problem.
pub fn solve_classical(law: &GasLaw, left: GasState, right: GasState) -> Result<ClassicalSolution> {
    RiemannData::new(left, right).validate()?;
    let region = classify(law, left, right)?;
    let mut sol = ClassicalSolution {
        law: *law,
        left,
        right,
        pattern: Pattern::Constant,
        waves: Vec::new(),
        middle: Middle::None,
    };
    match region {
        RegionLabel::Coincident => return Ok(sol),
        RegionLabel::OnCurve(c @ (CurveId::S1 | CurveId::R1)) => {
            sol.pattern = Pattern::SingleWave;
            let w = if c == CurveId::S1 { shock(law, Family::First, left, right) } else { fan(law, Family::First, left, right) };
            sol.waves.push(w);
            return Ok(sol);
        }
        RegionLabel::OnCurve(c @ (CurveId::S2 | CurveId::R2)) => {
            sol.pattern = Pattern::SingleWave;
            let w = if c == CurveId::S2 { shock(law, Family::Second, left, right) } else { fan(law, Family::Second, left, right) };
            sol.waves.push(w);
            return Ok(sol);
        }
        _ => {}
    }

    if in_vacuum_region(law, left, right) {
        let head = left.u + law.riemann_offset(left.rho);
        let tail = right.u - law.riemann_offset(right.rho);
        let v1 = GasState { u: head, rho: 0.0 };
        let v2 = GasState { u: tail, rho: 0.0 };
        sol.pattern = Pattern::R1VacR2;
        sol.waves.push(fan(law, Family::First, left, v1));
        sol.waves.push(fan(law, Family::Second, v2, right));
        sol.middle = Middle::Vacuum { head, tail };
        return Ok(sol);
    }

    let rho_m = middle_density(law, left, right)?;
    let ul = left.u - wave_function(law, left, rho_m);
    let ur = right.u + wave_function(law, right, rho_m);
    let mid = GasState { u: 0.5 * (ul + ur), rho: rho_m };
    let w1 = wave(law, Family::First, left, mid);
    let w2 = wave(law, Family::Second, mid, right);
    sol.pattern = match (w1.kind, w2.kind) {
        (WaveKind::Rarefaction, WaveKind::Rarefaction) => Pattern::R1R2,
        (WaveKind::Rarefaction, WaveKind::Shock) => Pattern::R1S2,
        (WaveKind::Shock, WaveKind::Rarefaction) => Pattern::S1R2,
        (WaveKind::Shock, WaveKind::Shock) => Pattern::S1S2,
    };
    sol.waves = vec![w1, w2];
    sol.middle = Middle::State { state: mid };
    Ok(sol)
}

/// Expected pattern for a region label.
pub fn pattern_for_region(region: RegionLabel, vacuum: bool) -> Pattern {
    use RegionLabel::*;
    match region {
        Coincident => Pattern::Constant,
        OnCurve(CurveId::S1 | CurveId::S2 | CurveId::R1 | CurveId::R2) => Pattern::SingleWave,
        IV0 | IV1 | IV2 | OnCurve(CurveId::D1 | CurveId::D2) => Pattern::S1S2,
        III => Pattern::S1R2,
        II => Pattern::R1S2,
        V => Pattern::R1VacR2,
        _ if vacuum => Pattern::R1VacR2,
        _ => Pattern::R1R2,
    }
}

impl ClassicalWave {
    /// `(xi_lo, xi_hi)` occupied by the wave.
    pub fn span(&self) -> (f64, f64) {
        match (self.sigma, self.fan_span) {
            (Some(s), _) => (s, s),
            (None, Some(span)) => span,
            _ => unreachable!("wave without speed"),
        }
    }

    /// State inside a fan at `xi`.
    pub fn fan_state(&self, law: &GasLaw, xi: f64) -> GasState {
        match self.family {
            Family::First => law.fan_state(Family::First, self.left, xi),
            Family::Second => law.fan_state(Family::Second, self.right, xi),
        }
    }
}

impl ClassicalSolution {
    /// State at `xi = x/t`. At a shock the right state is returned.
    pub fn sample(&self, xi: f64) -> GasState {
        let mut state = self.left;
        for (i, w) in self.waves.iter().enumerate() {
            let (lo, hi) = w.span();
            if xi < lo {
                if i == 1 {
                    if let Middle::Vacuum { head, tail } = self.middle {
                        let s = (xi - head) / (tail - head);
                        return GasState { u: head + s * (tail - head), rho: 0.0 };
                    }
                }
                return state;
            }
            if xi < hi {
                return w.fan_state(&self.law, xi);
            }
            state = w.right;
        }
        state
    }
}

/// State of `sol` at `xi = x/t`.
pub fn sample_classical(sol: &ClassicalSolution, xi: f64) -> GasState {
    sol.sample(xi)
}
