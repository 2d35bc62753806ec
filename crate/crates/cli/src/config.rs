//! Problem configuration from flags or a JSON file.

use std::path::Path;

use clap::Args;
use delta_riemann::{GasLaw, GasState, RiemannData};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn default_pick() -> f64 {
    0.5
}

/// Gas law, Riemann data and the selection of the intermediate state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub gamma: f64,
    pub u1: f64,
    pub rho1: f64,
    pub u2: f64,
    pub rho2: f64,
    #[serde(default)]
    pub rho0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u0: Option<f64>,
    #[serde(default = "default_pick")]
    pub pick: f64,
}

/// Problem flags shared by every command.
#[derive(Debug, Clone, Default, Args)]
pub struct ProblemArgs {
    /// JSON file with the fields gamma, u1, rho1, u2, rho2, rho0, u0, pick.
    #[arg(long, value_name = "PATH")]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho2: Option<f64>,
    /// Point mass at the origin.
    #[arg(long, allow_negative_numbers = true)]
    pub rho0: Option<f64>,
    /// Velocity of the point mass; required when rho0 > 0.
    #[arg(long, allow_negative_numbers = true)]
    pub u0: Option<f64>,
    /// Position of the intermediate state inside its admissible interval, in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub pick: Option<f64>,
}

fn field(name: &str, msg: impl Into<String>) -> CliError {
    CliError::Config { field: name.to_string(), message: msg.into() }
}

fn required(name: &str, v: Option<f64>) -> Result<f64, CliError> {
    v.ok_or_else(|| field(name, "missing value"))
}

const FIELDS: [&str; 8] = ["gamma", "u1", "rho1", "u2", "rho2", "rho0", "u0", "pick"];

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| field("config", format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| field("config", "expected a JSON object"))?;
        for (k, v) in obj {
            if !FIELDS.contains(&k.as_str()) {
                return Err(field(k, format!("unknown field, expected one of {}", FIELDS.join(", "))));
            }
            if !v.is_number() {
                return Err(field(k, format!("expected a number, got {v}")));
            }
        }
        for k in &FIELDS[..5] {
            if !obj.contains_key(*k) {
                return Err(field(k, "missing field"));
            }
        }
        let cfg: ProblemConfig = serde_json::from_value(value).map_err(|e| field("config", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| field("config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Config file first, then individual flags override its fields.
    pub fn from_args(args: &ProblemArgs) -> Result<Self, CliError> {
        let base = match &args.config {
            Some(p) => Some(Self::load(p)?),
            None => None,
        };
        let pick = |f: Option<f64>, b: Option<f64>| f.or(b);
        let cfg = ProblemConfig {
            gamma: required("gamma", pick(args.gamma, base.map(|c| c.gamma)))?,
            u1: required("u1", pick(args.u1, base.map(|c| c.u1)))?,
            rho1: required("rho1", pick(args.rho1, base.map(|c| c.rho1)))?,
            u2: required("u2", pick(args.u2, base.map(|c| c.u2)))?,
            rho2: required("rho2", pick(args.rho2, base.map(|c| c.rho2)))?,
            rho0: pick(args.rho0, base.map(|c| c.rho0)).unwrap_or(0.0),
            u0: pick(args.u0, base.and_then(|c| c.u0)),
            pick: pick(args.pick, base.map(|c| c.pick)).unwrap_or(0.5),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("gamma", self.gamma),
            ("u1", self.u1),
            ("rho1", self.rho1),
            ("u2", self.u2),
            ("rho2", self.rho2),
            ("rho0", self.rho0),
            ("pick", self.pick),
        ] {
            if !v.is_finite() {
                return Err(field(name, format!("must be finite, got {v}")));
            }
        }
        if !(self.gamma > 1.0) {
            return Err(field("gamma", format!("must exceed 1, got {}", self.gamma)));
        }
        if !(self.rho1 > 0.0) {
            return Err(field("rho1", format!("must be positive, got {}", self.rho1)));
        }
        if !(self.rho2 > 0.0) {
            return Err(field("rho2", format!("must be positive, got {}", self.rho2)));
        }
        if self.rho0 < 0.0 {
            return Err(field("rho0", format!("must be non-negative, got {}", self.rho0)));
        }
        if !(0.0..=1.0).contains(&self.pick) {
            return Err(field("pick", format!("must lie in [0, 1], got {}", self.pick)));
        }
        match self.u0 {
            None if self.rho0 > 0.0 => return Err(field("u0", "required when rho0 > 0")),
            Some(_) if self.rho0 == 0.0 => return Err(field("u0", "only allowed when rho0 > 0")),
            Some(v) if !v.is_finite() => return Err(field("u0", format!("must be finite, got {v}"))),
            _ => {}
        }
        Ok(())
    }

    pub fn law(&self) -> GasLaw {
        GasLaw::new(self.gamma).expect("validated gamma")
    }

    pub fn data(&self) -> RiemannData {
        let left = GasState { u: self.u1, rho: self.rho1 };
        let right = GasState { u: self.u2, rho: self.rho2 };
        RiemannData::singular(left, right, self.rho0, self.u0.unwrap_or(0.0))
    }
}
