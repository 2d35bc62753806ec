//! Bracket algebra and phase-plane regions of a right state relative to a left state.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curves::{curve_velocity, CurveId};
use crate::delta::{self, CaseRow, NoDeltaShock};
use crate::error::{Error, Result};
use crate::gas::{GasLaw, GasState};
use crate::problem::RiemannData;
use crate::tol;

/// Jumps `[q] = q2 - q1` and the discriminant quantities `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Brackets {
    pub d_rho: f64,
    pub d_u: f64,
    pub d_p: f64,
    pub d_m: f64,
    pub d_flux: f64,
    pub a: f64,
    pub b: f64,
}

impl Brackets {
    /// `a t^2 + 2 rho0 b t + rho0^2`.
    pub fn discriminant(&self, rho0: f64, t: f64) -> f64 {
        (self.a * t + 2.0 * rho0 * self.b) * t + rho0 * rho0
    }

    /// Magnitude against which `a` is compared to zero.
    pub fn a_scale(&self, left: GasState, right: GasState) -> f64 {
        left.rho * right.rho * self.d_u * self.d_u + (self.d_rho * self.d_p).abs()
    }
}

/// Bracket quantities for the pair `(left, right)` and point-mass velocity `u0`.
pub fn brackets(law: &GasLaw, left: GasState, right: GasState, u0: f64) -> Result<Brackets> {
    for s in [left, right] {
        s.validate()?;
        if s.rho <= 0.0 {
            return Err(Error::domain("bracket states must have positive density"));
        }
    }
    Ok(brackets_unchecked(law, left, right, u0))
}

pub(crate) fn brackets_unchecked(law: &GasLaw, left: GasState, right: GasState, u0: f64) -> Brackets {
    let (r1, r2, u1, u2) = (left.rho, right.rho, left.u, right.u);
    let d_rho = r2 - r1;
    let d_u = u2 - u1;
    let d_p = if r2 >= r1 { law.pressure_jump(r2, r1) } else { -law.pressure_jump(r1, r2) };
    let d_m = r2 * u2 - r1 * u1;
    let d_flux = r2 * u2 * u2 - r1 * u1 * u1 + d_p;
    let a = r1 * r2 * d_u * d_u - d_rho * d_p;
    let b = d_rho * u0 - d_m;
    Brackets { d_rho, d_u, d_p, d_m, d_flux, a, b }
}

/// Region of the right state relative to the left state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RegionLabel {
    I,
    I0Upper,
    I0Lower,
    HalfLineRho1,
    II,
    III,
    IV0,
    IV1,
    IV2,
    V,
    OnCurve(CurveId),
    Coincident,
}

impl RegionLabel {
    pub const INTERIOR: [RegionLabel; 10] = [
        RegionLabel::I,
        RegionLabel::I0Upper,
        RegionLabel::I0Lower,
        RegionLabel::II,
        RegionLabel::III,
        RegionLabel::IV0,
        RegionLabel::IV1,
        RegionLabel::IV2,
        RegionLabel::V,
        RegionLabel::HalfLineRho1,
    ];

    pub fn is_four(self) -> bool {
        matches!(
            self,
            RegionLabel::IV0
                | RegionLabel::IV1
                | RegionLabel::IV2
                | RegionLabel::OnCurve(CurveId::D1)
                | RegionLabel::OnCurve(CurveId::D2)
        )
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::I => f.write_str("I"),
            RegionLabel::I0Upper => f.write_str("I0_upper"),
            RegionLabel::I0Lower => f.write_str("I0_lower"),
            RegionLabel::HalfLineRho1 => f.write_str("HalfLine_rho1"),
            RegionLabel::II => f.write_str("II"),
            RegionLabel::III => f.write_str("III"),
            RegionLabel::IV0 => f.write_str("IV0"),
            RegionLabel::IV1 => f.write_str("IV1"),
            RegionLabel::IV2 => f.write_str("IV2"),
            RegionLabel::V => f.write_str("V"),
            RegionLabel::OnCurve(c) => write!(f, "OnCurve({c})"),
            RegionLabel::Coincident => f.write_str("Coincident"),
        }
    }
}

impl FromStr for RegionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(inner) = s.strip_prefix("OnCurve(").and_then(|r| r.strip_suffix(')')) {
            return Ok(RegionLabel::OnCurve(inner.parse()?));
        }
        RegionLabel::INTERIOR
            .iter()
            .chain(std::iter::once(&RegionLabel::Coincident))
            .copied()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::argument(format!("unknown region `{s}`")))
    }
}

impl From<RegionLabel> for String {
    fn from(r: RegionLabel) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for RegionLabel {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Region of `right` relative to `left`.
pub fn classify(law: &GasLaw, left: GasState, right: GasState) -> Result<RegionLabel> {
    RiemannData::new(left, right).validate()?;
    let (u1, r1, u2, r2) = (left.u, left.rho, right.u, right.rho);

    if r2 == r1 {
        if tol::same_velocity(u2, u1) {
            return Ok(RegionLabel::Coincident);
        }
        return Ok(if u2 < u1 {
            RegionLabel::IV0
        } else if in_vacuum_region(law, left, right) {
            RegionLabel::V
        } else {
            RegionLabel::HalfLineRho1
        });
    }

    let curves: [CurveId; 4] = if r2 > r1 {
        [CurveId::D1, CurveId::S1, CurveId::R2, CurveId::S22]
    } else {
        [CurveId::D2, CurveId::S2, CurveId::R1, CurveId::S11]
    };
    let vals = curves.map(|c| curve_velocity(law, c, left, r2));

    let nearest = curves
        .iter()
        .zip(vals.iter())
        .filter(|(_, v)| tol::same_velocity(u2, **v))
        .min_by(|a, b| (u2 - a.1).abs().total_cmp(&(u2 - b.1).abs()));
    if let Some((c, _)) = nearest {
        return Ok(RegionLabel::OnCurve(*c));
    }

    let [d, s, r, s_far] = vals;
    let upper = r2 > r1;
    let label = if u2 < d {
        RegionLabel::IV0
    } else if u2 < s {
        if upper { RegionLabel::IV1 } else { RegionLabel::IV2 }
    } else if u2 < r {
        if upper { RegionLabel::III } else { RegionLabel::II }
    } else if u2 > s_far {
        if upper { RegionLabel::I0Upper } else { RegionLabel::I0Lower }
    } else if in_vacuum_region(law, left, right) {
        RegionLabel::V
    } else {
        RegionLabel::I
    };
    Ok(label)
}

/// `u2 - u1 >= 2 (c1 + c2) / (gamma - 1)`.
pub fn in_vacuum_region(law: &GasLaw, left: GasState, right: GasState) -> bool {
    right.u - left.u >= law.riemann_offset(left.rho) + law.riemann_offset(right.rho)
}

/// Whether a single delta shock is admissible under the over-compressing
/// entropy condition for all time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "t", rename_all = "snake_case")]
pub enum Entropic {
    Always,
    Until(f64),
    Never,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExistenceReport {
    pub exists: bool,
    pub global_in_time: bool,
    pub entropic: Entropic,
    pub case_row: Option<CaseRow>,
    pub reason: Option<NoDeltaShock>,
}

/// Existence, lifespan class and entropy verdict of a single delta shock.
pub fn delta_existence(law: &GasLaw, data: RiemannData) -> Result<ExistenceReport> {
    let path = match delta::construct(law, data) {
        Ok(p) => p,
        Err(Error::NoDeltaShock(reason)) => {
            return Ok(ExistenceReport {
                exists: false,
                global_in_time: false,
                entropic: Entropic::Never,
                case_row: None,
                reason: Some(reason),
            })
        }
        Err(e) => return Err(e),
    };
    let interval = delta::entropy_interval(law, &path, data)?;
    let entropic = match (interval.valid_until, path.lifespan()) {
        (None, _) => Entropic::Always,
        (Some(t), _) if t <= 0.0 => Entropic::Never,
        (Some(t), Some(life)) if t >= life => Entropic::Always,
        (Some(t), _) => Entropic::Until(t),
    };
    Ok(ExistenceReport {
        exists: true,
        global_in_time: path.lifespan().is_none(),
        entropic,
        case_row: Some(path.case_row()),
        reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(u: f64, rho: f64) -> GasState {
        GasState { u, rho }
    }

    fn g2() -> GasLaw {
        GasLaw::new(2.0).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let b = brackets(&g2(), st(1.0, 1.0), st(-1.0, 1.0), 0.0).unwrap();
        assert_eq!((b.d_rho, b.d_u, b.a, b.b, b.d_m), (0.0, -2.0, 4.0, 2.0, -2.0));
        let b = brackets(&g2(), st(2.0, 1.0), st(-2.0, 4.0), 0.0).unwrap();
        assert_eq!((b.d_rho, b.d_u, b.d_p, b.a, b.d_m), (3.0, -4.0, 15.0, 19.0, -10.0));
        let b = brackets(&g2(), st(0.3, 2.0), st(0.3, 2.0), 7.0).unwrap();
        assert_eq!((b.d_rho, b.d_u, b.d_p, b.d_m, b.d_flux, b.a, b.b), (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0));
        assert!(brackets(&g2(), st(0.0, 0.0), st(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn classify_examples() {
        let g = g2();
        let l = st(0.0, 1.0);
        assert_eq!(classify(&g, l, st(0.0, 4.0)).unwrap(), RegionLabel::III);
        assert_eq!(classify(&g, l, st(6.0, 1.0)).unwrap(), RegionLabel::V);
        assert_eq!(classify(&g, l, st(2.0, 1.0)).unwrap(), RegionLabel::HalfLineRho1);
        assert_eq!(classify(&g, l, st(6.0, 1.5)).unwrap(), RegionLabel::I0Upper);
        assert_eq!(classify(&g, l, st(50.0, 100.0)).unwrap(), RegionLabel::V);
        assert_eq!(classify(&g, l, st(4.0, 0.05)).unwrap(), RegionLabel::V);
        assert_eq!(classify(&g, l, st(-3.0, 1.0)).unwrap(), RegionLabel::IV0);
        assert_eq!(classify(&g, l, l).unwrap(), RegionLabel::Coincident);
        assert_eq!(classify(&g, l, st(-1.5, 2.0)).unwrap(), RegionLabel::IV1);
        assert_eq!(classify(&g, l, st(-5.0, 2.0)).unwrap(), RegionLabel::IV0);
        assert_eq!(classify(&g, l, st(0.0, 0.25)).unwrap(), RegionLabel::II);
        assert_eq!(classify(&g, l, st(10.0, 2.0)).unwrap(), RegionLabel::I0Upper);
        assert_eq!(classify(&g, l, st(10.0, 0.5)).unwrap(), RegionLabel::I0Lower);
        assert_eq!(classify(&g, l, st(1.2, 2.0)).unwrap(), RegionLabel::I);
        assert!(classify(&g, l, st(0.0, 0.0)).is_err());
    }

    #[test]
    fn existence_examples() {
        let g = g2();
        let r = delta_existence(&g, RiemannData::new(st(2.0, 1.0), st(-2.0, 4.0))).unwrap();
        assert!(r.exists && r.global_in_time);
        assert_eq!(r.entropic, Entropic::Always);

        let r = delta_existence(&g, RiemannData::new(st(0.0, 1.0), st(0.0, 4.0))).unwrap();
        assert!(!r.exists && !r.global_in_time);
        assert_eq!(r.entropic, Entropic::Never);

        let r = delta_existence(&g, RiemannData::new(st(0.0, 1.0), st(-(2f64.sqrt()), 2.0))).unwrap();
        assert!(r.exists && r.global_in_time);
        assert_eq!(r.entropic, Entropic::Never);

        let s = st(0.4, 1.3);
        let r = delta_existence(&g, RiemannData::singular(s, s, 1.0, 0.4)).unwrap();
        assert!(r.exists && r.global_in_time);
        assert_eq!(r.entropic, Entropic::Always);
    }

    #[test]
    fn region_labels_round_trip() {
        for r in RegionLabel::INTERIOR {
            assert_eq!(r.to_string().parse::<RegionLabel>().unwrap(), r);
        }
        let r = RegionLabel::OnCurve(CurveId::R2Star);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"OnCurve(R2star)\"");
        assert_eq!(serde_json::from_str::<RegionLabel>(&js).unwrap(), r);
    }
}
