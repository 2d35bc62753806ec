//! Fixed configurations shared by the benchmarks.

use delta_riemann::{GasLaw, GasState, RiemannData};

pub fn law() -> GasLaw {
    GasLaw::new(1.4).unwrap()
}

pub fn st(u: f64, rho: f64) -> GasState {
    GasState { u, rho }
}

/// One pair per classical pattern: two shocks, shock-rarefaction, two fans, vacuum.
pub fn classical_pairs() -> Vec<(&'static str, GasState, GasState)> {
    vec![
        ("collision", st(1.0, 1.0), st(-1.0, 1.0)),
        ("dam_break", st(0.0, 4.0), st(0.0, 1.0)),
        ("expansion", st(-0.5, 1.0), st(0.5, 1.0)),
        ("vacuum", st(-6.0, 1.0), st(6.0, 1.0)),
    ]
}

/// Point-mass data: global, extinction and blow-up.
pub fn singular_data() -> Vec<(&'static str, RiemannData)> {
    vec![
        ("global", RiemannData::singular(st(1.0, 1.0), st(-1.0, 2.0), 1.0, 0.2)),
        ("extinction", RiemannData::singular(st(0.0, 1.0), st(0.0, 4.0), 1.0, 0.0)),
        ("blow_up", RiemannData::singular(st(-1.0, 1.0), st(1.0, 1.0), 1.0, 0.5)),
    ]
}
