//! Randomized test bumps and batch weak verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::weak::{weak_residual, ResidualReport, TestBump};
use crate::error::Result;
use crate::measure::{fan_speeds, MeasureSolution, Piece};

fn plan_speed(sol: &MeasureSolution) -> f64 {
    let law = &sol.law;
    let mut s: f64 = 0.1;
    let mut plan = Some(&sol.plan);
    while let Some(p) = plan {
        for piece in &p.pieces {
            match piece {
                Piece::Constant { state } => s = s.max(state.u.abs()),
                Piece::Fan { family, left, right } => {
                    let (a, b) = fan_speeds(law, *family, *left, *right);
                    s = s.max(a.abs()).max(b.abs());
                }
                Piece::Shock { speed, .. } => s = s.max(speed.abs()),
                Piece::Vacuum { head, tail } => s = s.max(head.abs()).max(tail.abs()),
                Piece::Delta { path } => s = s.max(path.velocity(0.0).abs().min(1e3)),
            }
        }
        plan = p.continuation.as_deref();
    }
    s
}

/// `n` reproducible bumps straddling the fronts of `sol`.
pub fn random_bumps(sol: &MeasureSolution, n: usize, seed: u64) -> Vec<TestBump> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let speed = plan_speed(sol);
    let (horizon, hard_end) = match (sol.final_time(), sol.plan.end) {
        (Some(tf), _) if sol.blows_up() => (tf, Some(tf)),
        (_, Some(te)) => (2.0 * te, None),
        _ => (1.0, None),
    };
    (0..n)
        .map(|i| {
            let t0 = horizon * rng.random_range(0.15..0.85);
            let mut rt = if i % 4 == 3 { 1.25 * t0 } else { t0 * rng.random_range(0.2..0.8) };
            if let Some(te) = hard_end {
                rt = rt.min(0.9 * (te - t0));
            }
            let atom = sol.plan.active(t0).ok().and_then(|p| p.atoms_at(t0).first().copied());
            let xc = match atom {
                Some(a) if a.x.is_finite() => a.x,
                _ => sol.plan.origin.x,
            };
            let rx = (speed * t0).max(0.05) * rng.random_range(0.5..2.0);
            let x0 = xc + rx * rng.random_range(-0.5..0.5);
            TestBump { center: (x0, t0), radii: (rx, rt), degree: 3 }
        })
        .collect()
}

/// Weak residuals of `sol` against every bump, in parallel.
pub fn verify_bumps(sol: &MeasureSolution, bumps: &[TestBump], order: usize) -> Result<Vec<ResidualReport>> {
    bumps.par_iter().map(|b| weak_residual(sol, b, order)).collect()
}
