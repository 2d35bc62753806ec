use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gas::GasState;

/// Riemann data with an optional point mass `rho0` moving at `u0` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannData {
    pub left: GasState,
    pub right: GasState,
    #[serde(default)]
    pub rho0: f64,
    #[serde(default)]
    pub u0: f64,
}

impl RiemannData {
    /// Classical data, no point mass.
    pub fn new(left: GasState, right: GasState) -> Self {
        RiemannData { left, right, rho0: 0.0, u0: 0.0 }
    }

    pub fn singular(left: GasState, right: GasState, rho0: f64, u0: f64) -> Self {
        RiemannData { left, right, rho0, u0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (side, s) in [("left", self.left), ("right", self.right)] {
            s.validate()?;
            if s.rho <= 0.0 {
                return Err(Error::domain(format!("{side} density must be positive, got {}", s.rho)));
            }
        }
        if !self.rho0.is_finite() || self.rho0 < 0.0 {
            return Err(Error::domain(format!("rho0 must be finite and non-negative, got {}", self.rho0)));
        }
        if !self.u0.is_finite() {
            return Err(Error::domain(format!("u0 must be finite, got {}", self.u0)));
        }
        Ok(())
    }

    /// Data seen in the reflected frame `x -> -x`.
    pub fn mirrored(&self) -> Self {
        RiemannData {
            left: self.right.mirrored(),
            right: self.left.mirrored(),
            rho0: self.rho0,
            u0: -self.u0,
        }
    }
}
