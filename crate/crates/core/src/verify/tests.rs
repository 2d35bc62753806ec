use super::*;
use crate::classical::solve_classical;
use crate::delta::{construct, Side};
use crate::gas::{GasLaw, GasState};
use crate::measure::{solve_measure, solve_singular, MeasureSolution};
use crate::problem::RiemannData;

fn st(u: f64, rho: f64) -> GasState {
    GasState { u, rho }
}

fn g2() -> GasLaw {
    GasLaw::new(2.0).unwrap()
}

#[test]
fn bump_derivatives() {
    let b = TestBump::new(0.3, 1.0, 0.5, 0.4).unwrap();
    let (x, t, h) = (0.41, 1.13, 1e-6);
    let (_, px, pt) = b.eval(x, t);
    let fx = (b.eval(x + h, t).0 - b.eval(x - h, t).0) / (2.0 * h);
    let ft = (b.eval(x, t + h).0 - b.eval(x, t - h).0) / (2.0 * h);
    assert!((px - fx).abs() < 1e-8 && (pt - ft).abs() < 1e-8);
    assert_eq!(b.eval(0.9, 1.0).0, 0.0);
    assert!(TestBump::new(0.0, 1.0, 0.0, 1.0).is_err());
}

#[test]
fn constant_state_is_exact() {
    let law = g2();
    let sol = MeasureSolution::from_classical(&solve_classical(&law, st(0.7, 1.3), st(0.7, 1.3)).unwrap()).unwrap();
    let rep = weak_residual(&sol, &TestBump::new(0.2, 2.0, 1.0, 0.5).unwrap(), 16).unwrap();
    assert!(rep.scale > 0.0);
    assert!(rep.mass_residual.abs() <= 1e-12 * rep.scale);
    assert!(rep.momentum_residual.abs() <= 1e-12 * rep.scale);
}

#[test]
fn stationary_delta_and_corruption() {
    let law = g2();
    let sol = solve_measure(&law, st(1.0, 1.0), st(-1.0, 1.0), 0.5).unwrap();
    let bump = TestBump::new(0.0, 1.0, 0.7, 0.6).unwrap();
    let rep = weak_residual(&sol, &bump, 32).unwrap();
    assert!(rep.relative() <= 1e-8, "{rep:?}");
    let bad = weak_residual_with(&sol, &bump, 32, 1.01).unwrap();
    assert!(bad.mass_residual.abs() > 1e-3 * bad.scale, "{bad:?}");
}

#[test]
fn initial_term_and_moving_delta() {
    let law = g2();
    let sol = solve_measure(&law, st(2.0, 1.0), st(-2.0, 4.0), 0.5).unwrap();
    for bump in [TestBump::new(-1.5, 0.4, 1.2, 0.6).unwrap(), TestBump::new(-2.0, 1.0, 1.5, 0.5).unwrap()] {
        let rep = weak_residual(&sol, &bump, 32).unwrap();
        assert!(rep.relative() <= 1e-8, "{rep:?}");
    }
}

#[test]
fn composite_and_continuation() {
    let law = g2();
    let sol = solve_measure(&law, st(0.0, 1.0), st(0.0, 4.0), 0.5).unwrap();
    for b in random_bumps(&sol, 6, 7) {
        let rep = weak_residual(&sol, &b, 32).unwrap();
        assert!(rep.relative() <= 1e-6, "{b:?} {rep:?}");
    }
    let sol = solve_singular(&law, RiemannData::singular(st(0.0, 1.0), st(0.0, 4.0), 1.0, 0.0), 0.5).unwrap();
    let te = sol.plan.end.unwrap();
    let xe = sol.plan.atoms_at(te)[0].x;
    for (t0, rt) in [(0.5 * te, 0.4 * te), (2.0 * te, 0.8 * te)] {
        let rep = weak_residual(&sol, &TestBump::new(xe, t0, 0.5, rt).unwrap(), 32).unwrap();
        assert!(rep.relative() <= 1e-8, "{rep:?}");
    }
    // Across the extinction time the atom's residual momentum is lost.
    let wm = sol.plan.delta().unwrap().momentum_weight(te);
    assert!((wm + 5f64.sqrt()).abs() < 1e-12);
    let rep = weak_residual(&sol, &TestBump::new(xe, te, 0.5, 0.6 * te).unwrap(), 32).unwrap();
    assert!(rep.mass_residual.abs() <= 1e-10 * rep.scale, "{rep:?}");
    assert!((rep.momentum_residual - wm).abs() <= 1e-10, "{rep:?}");
}

#[test]
fn blow_up_bump_rejected() {
    let law = g2();
    let sol = solve_singular(&law, RiemannData::singular(st(-1.0, 1.0), st(1.0, 1.0), 1.0, 0.5), 0.5).unwrap();
    assert!(sol.blows_up());
    assert!(weak_residual(&sol, &TestBump::new(0.0, 0.4, 1.0, 0.2).unwrap(), 8).is_err());
}

#[test]
fn grh_linear_and_corrupted() {
    let law = g2();
    let data = RiemannData::new(st(2.0, 1.0), st(-2.0, 4.0));
    let path = construct(&law, data).unwrap();
    let rep = grh_residual(&law, &path, data, 2).unwrap();
    assert!(rep.mass_relative() <= 1e-10, "{rep:?}");
    assert!(grh_residual(&law, &path, data, 1000).unwrap().relative() <= 1e-8);

    struct Bent<'a>(&'a crate::DeltaShockPath, f64);
    impl AtomTrack for Bent<'_> {
        fn mass_weight(&self, t: f64) -> f64 {
            self.0.mass_weight(t)
        }
        fn momentum_weight(&self, t: f64) -> f64 {
            self.0.momentum_weight(t)
        }
        fn velocity(&self, t: f64) -> f64 {
            self.0.velocity(t) + 2.0 * self.1 * t
        }
        fn lifespan(&self) -> Option<f64> {
            None
        }
        fn time_scale(&self) -> f64 {
            1.0
        }
    }
    let rep = grh_residual(&law, &Bent(&path, 1e-3), data, 100).unwrap();
    assert!(rep.mass > 1e-6, "{rep:?}");
}

#[test]
fn grh_second_order() {
    let law = g2();
    let data = RiemannData::singular(st(0.0, 1.0), st(0.0, 4.0), 1.0, 0.0);
    let path = construct(&law, data).unwrap();
    let r: Vec<f64> = [4e-2, 2e-2, 1e-2]
        .iter()
        .map(|&h| grh_residual_with_step(&law, &path, data, 50, h).unwrap().mass)
        .collect();
    assert!(r[0] / r[1] > 3.5 && r[0] / r[1] < 4.5, "{r:?}");
    assert!(r[1] / r[2] > 3.5 && r[1] / r[2] < 4.5, "{r:?}");
    assert!(grh_residual(&law, &path, data, 1000).unwrap().relative() <= 1e-8);
}

#[test]
fn lemmas_hold() {
    for gamma in [1.4, 2.0, 3.0] {
        let law = GasLaw::new(gamma).unwrap();
        for rho1 in [0.1, 1.0, 10.0] {
            for c in curve_order_checks(&law, st(0.3, rho1), 10_000).unwrap() {
                assert!(c.passed, "{c:?}");
                assert!(c.boundary_margin.abs() <= 1e-12 * (1.0 + rho1.powf(gamma)), "{c:?}");
            }
        }
    }
    let law = GasLaw::new(3.0).unwrap();
    let lo = 0.5 / 4f64.powf(1.0 / 3.0);
    let grid: Vec<f64> = (0..1000).map(|i| lo + (0.5 - lo) * i as f64 / 1000.0).collect();
    assert!(check_lemma(&law, CurveLemma::K, st(0.0, 0.5), &grid).unwrap().passed);
}

#[test]
fn entropy_scan_cases() {
    let law = g2();
    let sol = solve_measure(&law, st(2.0, 1.0), st(-2.0, 4.0), 0.5).unwrap();
    assert_eq!(entropy_scan(&sol, 1000).unwrap(), None);

    let bad = MeasureSolution::from_delta(
        &law,
        construct(&law, RiemannData::new(st(0.0, 1.0), st(-2f64.sqrt(), 2.0))).unwrap(),
    )
    .unwrap();
    let w = entropy_scan(&bad, 1000).unwrap().unwrap();
    assert_eq!((w.t, w.side), (0.0, Side::Right));

    let classical = MeasureSolution::from_classical(&solve_classical(&law, st(0.0, 1.0), st(0.0, 0.25)).unwrap()).unwrap();
    assert!(entropy_scan(&classical, 10).is_err());
}

#[test]
fn oracle_examples() {
    let law = g2();
    let o = classical_oracle(&law, st(0.0, 1.0), st(0.0, 0.25), 100_000).unwrap();
    let exact = solve_classical(&law, st(0.0, 1.0), st(0.0, 0.25)).unwrap();
    let crate::Middle::State { state } = exact.middle else { panic!() };
    assert!((o.state.rho - state.rho).abs() <= o.cell);
    assert_eq!(classical_oracle(&law, st(1.0, 2.0), st(1.0, 2.0), 10).unwrap().state, st(1.0, 2.0));
    assert!(classical_oracle(&law, st(0.0, 1.0), st(6.0, 1.0), 10).is_err());
}
