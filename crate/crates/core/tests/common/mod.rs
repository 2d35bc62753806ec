#![allow(dead_code)]

use delta_riemann::curves::curve_velocity;
use delta_riemann::{CurveId, GasLaw, GasState};
use rand::Rng;

pub fn st(u: f64, rho: f64) -> GasState {
    GasState { u, rho }
}

pub fn lerp(a: f64, b: f64, s: f64) -> f64 {
    a + (b - a) * s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    IV0,
    IV1,
    IV2,
    III,
    II,
    I,
    V,
}

impl Zone {
    pub const ALL: [Zone; 7] = [Zone::IV0, Zone::IV1, Zone::IV2, Zone::III, Zone::II, Zone::I, Zone::V];
}

pub fn random_left<R: Rng>(rng: &mut R) -> GasState {
    st(rng.random_range(-1.0..1.0), rng.random_range(0.5..2.0))
}

/// Right state strictly inside `zone`, placed with the curve formulas.
pub fn sample_zone<R: Rng>(law: &GasLaw, rng: &mut R, left: GasState, zone: Zone) -> GasState {
    let upper = match zone {
        Zone::IV1 | Zone::III => true,
        Zone::IV2 | Zone::II => false,
        _ => rng.random_bool(0.5),
    };
    let f: f64 = rng.random_range(0.05..5f64.ln());
    let rho = if upper { left.rho * f.exp() } else { left.rho * (-f).exp() };
    let c = |id| curve_velocity(law, id, left, rho);
    let (d, s, r) = if upper {
        (c(CurveId::D1), c(CurveId::S1), c(CurveId::R2))
    } else {
        (c(CurveId::D2), c(CurveId::S2), c(CurveId::R1))
    };
    let vac = left.u + law.riemann_offset(left.rho) + law.riemann_offset(rho);
    let c1 = law.sound_speed(left.rho).unwrap();
    let s01: f64 = rng.random_range(0.02..0.98);
    let u = match zone {
        Zone::IV0 => d - rng.random_range(0.01..2.0) * c1,
        Zone::IV1 | Zone::IV2 => lerp(d, s, s01),
        Zone::III | Zone::II => lerp(s, r, s01),
        Zone::I => lerp(r, vac, s01),
        Zone::V => vac + rng.random_range(0.01..2.0) * c1,
    };
    st(u, rho)
}
