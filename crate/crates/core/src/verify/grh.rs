//! Generalized Rankine-Hugoniot residuals along a front.

use serde::{Deserialize, Serialize};

use crate::delta::{time_scale, DeltaShockPath};
use crate::error::{Error, Result};
use crate::gas::GasLaw;
use crate::problem::RiemannData;

/// Anything carrying a Dirac atom along a front.
pub trait AtomTrack {
    fn mass_weight(&self, t: f64) -> f64;
    fn momentum_weight(&self, t: f64) -> f64;
    fn velocity(&self, t: f64) -> f64;
    /// End of validity, `None` if global.
    fn lifespan(&self) -> Option<f64>;
    /// Characteristic time used for unbounded tracks and step control.
    fn time_scale(&self) -> f64;
    fn kinks(&self) -> Vec<f64> {
        Vec::new()
    }
    /// Whether the weights continue analytically to `t < 0`.
    fn extends_backward(&self) -> bool {
        false
    }
}

impl AtomTrack for DeltaShockPath {
    fn mass_weight(&self, t: f64) -> f64 {
        DeltaShockPath::mass_weight(self, t)
    }
    fn momentum_weight(&self, t: f64) -> f64 {
        DeltaShockPath::momentum_weight(self, t)
    }
    fn velocity(&self, t: f64) -> f64 {
        DeltaShockPath::velocity(self, t)
    }
    fn lifespan(&self) -> Option<f64> {
        DeltaShockPath::lifespan(self)
    }
    fn time_scale(&self) -> f64 {
        time_scale(self)
    }
    fn kinks(&self) -> Vec<f64> {
        DeltaShockPath::kinks(self)
    }
    fn extends_backward(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrhReport {
    /// `max |w_rho' - ([rho] x' - [rho u])|`.
    pub mass: f64,
    /// `max |w_m' - ([rho u] x' - [rho u^2 + p])|`.
    pub momentum: f64,
    /// Largest magnitude of the terms entering each identity.
    pub mass_scale: f64,
    pub momentum_scale: f64,
    pub points: usize,
    pub step_rel: f64,
}

impl GrhReport {
    pub fn mass_relative(&self) -> f64 {
        rel(self.mass, self.mass_scale)
    }

    pub fn momentum_relative(&self) -> f64 {
        rel(self.momentum, self.momentum_scale)
    }

    pub fn relative(&self) -> f64 {
        self.mass_relative().max(self.momentum_relative())
    }
}

pub const DEFAULT_STEP: f64 = 2e-5;

/// Residuals of the weight ODEs on an `n`-point grid of the track's lifetime.
pub fn grh_residual<T: AtomTrack + ?Sized>(law: &GasLaw, track: &T, data: RiemannData, n: usize) -> Result<GrhReport> {
    grh_residual_with_step(law, track, data, n, DEFAULT_STEP)
}

/// As [`grh_residual`] with central-difference step `h_rel` times the local time scale.
pub fn grh_residual_with_step<T: AtomTrack + ?Sized>(
    law: &GasLaw,
    track: &T,
    data: RiemannData,
    n: usize,
    h_rel: f64,
) -> Result<GrhReport> {
    data.validate()?;
    if n == 0 {
        return Err(Error::argument("grid must have at least one point"));
    }
    if !(h_rel > 0.0 && h_rel < 0.5) {
        return Err(Error::argument(format!("relative step must lie in (0, 0.5), got {h_rel}")));
    }
    let (l, r) = (data.left, data.right);
    let d_rho = r.rho - l.rho;
    let d_m = r.momentum() - l.momentum();
    let d_flux = r.momentum() * r.u + law.p(r.rho) - l.momentum() * l.u - law.p(l.rho);
    let ts = track.time_scale();
    let horizon = track.lifespan().unwrap_or(10.0 * ts);
    let kinks = track.kinks();

    let mut rep = GrhReport { mass: 0.0, momentum: 0.0, mass_scale: 0.0, momentum_scale: 0.0, points: n, step_rel: h_rel };
    for i in 0..n {
        let t = horizon * (i as f64 + 0.5) / n as f64;
        let mut room = if track.extends_backward() { ts } else { t.min(ts) };
        if track.lifespan().is_some() {
            room = room.min(horizon - t);
        }
        for k in &kinks {
            room = room.min((t - k).abs());
        }
        if room <= 0.0 {
            continue;
        }
        let (t1, t0) = (t + h_rel * room, t - h_rel * room);
        let span = t1 - t0;
        let dw = (track.mass_weight(t1) - track.mass_weight(t0)) / span;
        let dwm = (track.momentum_weight(t1) - track.momentum_weight(t0)) / span;
        let v = track.velocity(t);
        let rm = dw - (d_rho * v - d_m);
        let rmom = dwm - (d_m * v - d_flux);
        rep.mass = rep.mass.max(rm.abs());
        rep.momentum = rep.momentum.max(rmom.abs());
        let sm = dw.abs().max((d_rho * v).abs()).max(d_m.abs());
        let sp = dwm.abs().max((d_m * v).abs()).max(d_flux.abs());
        rep.mass_scale = rep.mass_scale.max(sm);
        rep.momentum_scale = rep.momentum_scale.max(sp);
    }
    Ok(rep)
}

fn rel(r: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        r / scale
    } else {
        r
    }
}
