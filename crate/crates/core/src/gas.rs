//! Polytropic gas law `p = rho^gamma` and the states it acts on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pressure law `p(rho) = rho^gamma` with `gamma > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GasLawRepr")]
pub struct GasLaw {
    gamma: f64,
}

#[derive(Deserialize)]
struct GasLawRepr {
    gamma: f64,
}

impl TryFrom<GasLawRepr> for GasLaw {
    type Error = Error;

    fn try_from(r: GasLawRepr) -> Result<Self> {
        GasLaw::new(r.gamma)
    }
}

/// Velocity and density. `rho == 0` is vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasState {
    pub u: f64,
    pub rho: f64,
}

/// Wave family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
}

impl GasState {
    pub fn new(u: f64, rho: f64) -> Result<Self> {
        let s = GasState { u, rho };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.u.is_finite() {
            return Err(Error::domain(format!("velocity must be finite, got {}", self.u)));
        }
        check_density(self.rho)
    }

    pub fn momentum(&self) -> f64 {
        self.rho * self.u
    }

    /// Reflect `x -> -x`.
    pub fn mirrored(&self) -> GasState {
        GasState { u: -self.u, rho: self.rho }
    }
}

fn check_density(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho < 0.0 {
        return Err(Error::domain(format!(
            "density must be finite and non-negative, got {rho}"
        )));
    }
    Ok(())
}

impl GasLaw {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 1.0 {
            return Err(Error::GasLaw(format!(
                "gamma must be finite and greater than 1, got {gamma}"
            )));
        }
        Ok(GasLaw { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn pressure(&self, rho: f64) -> Result<f64> {
        check_density(rho)?;
        Ok(self.p(rho))
    }

    pub fn sound_speed(&self, rho: f64) -> Result<f64> {
        check_density(rho)?;
        Ok(self.c(rho))
    }

    /// `(u - c, u + c)`.
    pub fn eigenvalues(&self, s: GasState) -> Result<(f64, f64)> {
        s.validate()?;
        let c = self.c(s.rho);
        Ok((s.u - c, s.u + c))
    }

    pub(crate) fn p(&self, rho: f64) -> f64 {
        rho.powf(self.gamma)
    }

    pub(crate) fn c(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        (self.gamma * rho.powf(self.gamma - 1.0)).sqrt()
    }

    /// `p(rho) - p(base)` without cancellation for `rho` near `base`.
    pub fn pressure_jump(&self, rho: f64, base: f64) -> f64 {
        if base == 0.0 {
            return self.p(rho);
        }
        let eps = (rho - base) / base;
        if eps.abs() > 0.5 {
            return self.p(rho) - self.p(base);
        }
        self.p(base) * (self.gamma * eps.ln_1p()).exp_m1()
    }

    /// `2 sqrt(gamma)/(gamma - 1) * (rho^k - base^k)`, `k = (gamma - 1)/2`:
    /// the integral of `c(s)/s` from `base` to `rho`.
    pub fn riemann_difference(&self, rho: f64, base: f64) -> f64 {
        let k = 0.5 * (self.gamma - 1.0);
        let coef = 2.0 * self.gamma.sqrt() / (self.gamma - 1.0);
        if base == 0.0 {
            return coef * rho.powf(k);
        }
        let eps = (rho - base) / base;
        if eps.abs() > 0.5 {
            return coef * (rho.powf(k) - base.powf(k));
        }
        coef * base.powf(k) * (k * eps.ln_1p()).exp_m1()
    }

    /// `2 c / (gamma - 1)`.
    pub fn riemann_offset(&self, rho: f64) -> f64 {
        2.0 * self.c(rho) / (self.gamma - 1.0)
    }

    /// Lowest density on which the `M` curves are defined.
    pub fn speed_floor(&self, base: f64) -> f64 {
        base / (self.gamma + 1.0).powf(1.0 / self.gamma)
    }

    /// Density with sound speed `c`.
    pub fn density_from_sound_speed(&self, c: f64) -> f64 {
        if c <= 0.0 {
            return 0.0;
        }
        (c * c / self.gamma).powf(1.0 / (self.gamma - 1.0))
    }

    /// State inside a centred rarefaction fan at `xi = x/t`.
    ///
    /// `anchor` is the state on the outer side of the fan: the left state for
    /// a 1-fan, the right state for a 2-fan.
    pub fn fan_state(&self, family: Family, anchor: GasState, xi: f64) -> GasState {
        let g = self.gamma;
        let w = (g - 1.0) / (g + 1.0);
        match family {
            Family::First => {
                let c = (w * (anchor.u + self.riemann_offset(anchor.rho) - xi)).max(0.0);
                GasState { u: xi + c, rho: self.density_from_sound_speed(c) }
            }
            Family::Second => {
                let c = (w * (xi - anchor.u + self.riemann_offset(anchor.rho))).max(0.0);
                GasState { u: xi - c, rho: self.density_from_sound_speed(c) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_isothermal_and_below() {
        assert!(matches!(GasLaw::new(1.0), Err(Error::GasLaw(_))));
        assert!(GasLaw::new(0.5).is_err());
        assert!(GasLaw::new(f64::NAN).is_err());
    }

    #[test]
    fn known_values() {
        let g = GasLaw::new(2.0).unwrap();
        assert_eq!(g.pressure(2.0).unwrap(), 4.0);
        assert_eq!(g.sound_speed(2.0).unwrap(), 2.0);
        let (l1, l2) = g.eigenvalues(GasState { u: 1.0, rho: 2.0 }).unwrap();
        assert_eq!((l1, l2), (-1.0, 3.0));
        let g14 = GasLaw::new(1.4).unwrap();
        assert!((g14.sound_speed(1.0).unwrap() - 1.4f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn vacuum_and_negative_density() {
        let g = GasLaw::new(1.4).unwrap();
        assert_eq!(g.pressure(0.0).unwrap(), 0.0);
        assert_eq!(g.sound_speed(0.0).unwrap(), 0.0);
        assert!(g.pressure(-1.0).is_err());
        assert!(g.sound_speed(f64::INFINITY).is_err());
    }

    #[test]
    fn accurate_jumps_near_base() {
        let g = GasLaw::new(1.4).unwrap();
        let rho = 1.0 + 1e-9;
        let eps = rho - 1.0;
        let j = g.pressure_jump(rho, 1.0);
        assert!((j / (1.4 * eps) - 1.0).abs() < 1e-8);
        let r = g.riemann_difference(rho, 1.0);
        assert!((r / (1.4f64.sqrt() * eps) - 1.0).abs() < 1e-8);
        assert_eq!(g.pressure_jump(0.0, 2.0), -g.p(2.0));
    }

    #[test]
    fn fan_edges_match_anchor() {
        let g = GasLaw::new(1.4).unwrap();
        let a = GasState { u: 0.3, rho: 1.7 };
        let c = g.c(a.rho);
        let s = g.fan_state(Family::First, a, a.u - c);
        assert!((s.u - a.u).abs() < 1e-14 && (s.rho - a.rho).abs() < 1e-13);
        let s = g.fan_state(Family::Second, a, a.u + c);
        assert!((s.u - a.u).abs() < 1e-14 && (s.rho - a.rho).abs() < 1e-13);
    }

    #[test]
    fn serde_validates_gamma() {
        let ok: GasLaw = serde_json::from_str(r#"{"gamma":2.0}"#).unwrap();
        assert_eq!(ok.gamma(), 2.0);
        assert!(serde_json::from_str::<GasLaw>(r#"{"gamma":1.0}"#).is_err());
    }
}
