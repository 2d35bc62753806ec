//! Numerical entropy scan and brute-force classical middle state.

use serde::{Deserialize, Serialize};

use crate::curves::{curve_velocity, CurveId};
use crate::delta::{first_violation, lifespan_grid, time_scale, Witness};
use crate::error::{Error, Result};
use crate::gas::{GasLaw, GasState};
use crate::measure::MeasureSolution;

/// First time the over-compressing condition fails along the first atom of `sol`.
pub fn entropy_scan(sol: &MeasureSolution, n: usize) -> Result<Option<Witness>> {
    if n < 2 {
        return Err(Error::argument("entropy scan needs at least two grid points"));
    }
    let mut plan = Some(&sol.plan);
    let (path, t0) = loop {
        match plan {
            Some(p) => {
                if let Some(path) = p.delta() {
                    break (path, p.origin.t);
                }
                plan = p.continuation.as_deref();
            }
            None => return Err(Error::argument("solution carries no atom")),
        }
    };
    let (ul, ur) = (path.left().u, path.right().u);
    let gl = |t: f64| ul - path.velocity(t);
    let gr = |t: f64| path.velocity(t) - ur;
    let grid = match path.lifespan() {
        Some(ts) => lifespan_grid(ts, n),
        None => {
            let tau = time_scale(path);
            let near = 10.0 * tau;
            let mut g: Vec<f64> = (0..n).map(|i| near * i as f64 / n as f64).collect();
            g.extend((0..n).map(|i| near * 10f64.powf(6.0 * i as f64 / (n - 1) as f64)));
            g
        }
    };
    Ok(first_violation(&grid, gl, gr)?.map(|(t, side)| Witness { t: t + t0, side }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleMiddle {
    pub state: GasState,
    /// Grid spacing of the scan.
    pub cell: f64,
}

fn forward(law: &GasLaw, left: GasState, rho: f64) -> f64 {
    let id = if rho >= left.rho { CurveId::S1 } else { CurveId::R1 };
    curve_velocity(law, id, left, rho)
}

fn backward(law: &GasLaw, right: GasState, rho: f64) -> f64 {
    let id = if rho >= right.rho { CurveId::S22 } else { CurveId::R2Star };
    curve_velocity(law, id, right, rho)
}

/// Middle state by a dense scan of the wave-curve mismatch.
pub fn classical_oracle(law: &GasLaw, left: GasState, right: GasState, grid_size: usize) -> Result<OracleMiddle> {
    left.validate()?;
    right.validate()?;
    if grid_size < 2 {
        return Err(Error::argument("oracle grid needs at least two points"));
    }
    if left == right {
        return Ok(OracleMiddle { state: left, cell: 0.0 });
    }
    let mismatch = |rho: f64| forward(law, left, rho) - backward(law, right, rho);
    if mismatch(0.0) <= 0.0 {
        return Err(Error::argument("data lie in the vacuum region"));
    }
    let mut hi = left.rho.max(right.rho);
    while mismatch(hi) > 0.0 {
        hi *= 2.0;
    }
    let cell = hi / (grid_size - 1) as f64;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..grid_size {
        let rho = cell * i as f64;
        let m = mismatch(rho).abs();
        if m < best.0 {
            best = (m, rho);
        }
    }
    let rho = best.1;
    let u = 0.5 * (forward(law, left, rho) + backward(law, right, rho));
    Ok(OracleMiddle { state: GasState { u, rho }, cell })
}
