use delta_riemann::classical::{solve_classical, Middle, WaveKind};
use delta_riemann::{
    brackets, classify, construct, delta_existence, eval_curve, sample_curve, solve_measure, solve_singular, CurveId,
    Entropic, GasLaw, GasState, MeasureSolution, RegionLabel, RiemannData,
};
use proptest::prelude::*;

fn law() -> impl Strategy<Value = GasLaw> {
    prop_oneof![Just(1.4), Just(2.0), Just(3.0), 1.05f64..4.0].prop_map(|g| GasLaw::new(g).unwrap())
}

fn state() -> impl Strategy<Value = GasState> {
    (-3.0f64..3.0, 0.05f64..20.0).prop_map(|(u, rho)| GasState { u, rho })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn strict_hyperbolicity(law in law(), s in state()) {
        let (l1, l2) = law.eigenvalues(s).unwrap();
        prop_assert!(l1 < l2);
        let c = law.sound_speed(s.rho).unwrap();
        let p = law.pressure(s.rho).unwrap();
        prop_assert!(rel_close(c * c, law.gamma() * p / s.rho, 1e-12));
    }

    #[test]
    fn a_is_symmetric(law in law(), l in state(), r in state(), u0 in -3.0f64..3.0) {
        let ab = brackets(&law, l, r, u0).unwrap().a;
        let ba = brackets(&law, r, l, u0).unwrap().a;
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn classifier_matches_existence(law in law(), l in state(), r in state()) {
        let region = classify(&law, l, r).unwrap();
        let rep = delta_existence(&law, RiemannData::new(l, r)).unwrap();
        let four = matches!(region, RegionLabel::IV0 | RegionLabel::IV1 | RegionLabel::IV2);
        let zero = matches!(region, RegionLabel::I0Upper | RegionLabel::I0Lower);
        if !matches!(region, RegionLabel::OnCurve(_) | RegionLabel::HalfLineRho1 | RegionLabel::Coincident) {
            prop_assert_eq!(rep.exists, four || zero, "{:?}", region);
            prop_assert_eq!(region == RegionLabel::IV0, rep.entropic == Entropic::Always, "{:?} {:?}", region, rep);
        }
    }

    #[test]
    fn sampled_curve_points_classify_on_the_curve(law in law(), base in state(), s in 0.05f64..0.95) {
        let hi = 4.0 * base.rho;
        let pts = sample_curve(&law, CurveId::S1, base, base.rho, hi, 21).unwrap();
        let p = pts[1 + (s * 19.0) as usize];
        let region = classify(&law, base, GasState { u: p.u, rho: p.rho }).unwrap();
        prop_assert_eq!(region, RegionLabel::OnCurve(CurveId::S1));
    }

    #[test]
    fn curves_pass_through_the_base(law in law(), base in state()) {
        for id in CurveId::ALL.into_iter().filter(|c| c.passes_through_base()) {
            let dom = id.domain(&law, base.rho);
            let noise = 1e-13 * (base.u.abs() + law.sound_speed(base.rho).unwrap());
            prop_assert!((eval_curve(&law, id, base, base.rho).unwrap() - base.u).abs() <= noise);
            let side = if dom.contains(base.rho * 1.01) { 1.0 } else { -1.0 };
            let mut prev = f64::INFINITY;
            for k in 2..=15 {
                let rho = base.rho * (1.0 + side * 10f64.powi(-k));
                let gap = (eval_curve(&law, id, base, rho).unwrap() - base.u).abs();
                prop_assert!(gap <= prev + noise, "{} not shrinking at 1e-{}", id, k);
                prev = gap;
            }
            prop_assert!(prev <= 1e-6 * (1.0 + law.sound_speed(base.rho).unwrap()), "{} {}", id, prev);
        }
    }

    #[test]
    fn classical_shocks_are_admissible(law in law(), l in state(), r in state()) {
        let sol = solve_classical(&law, l, r).unwrap();
        for w in &sol.waves {
            if w.kind != WaveKind::Shock {
                continue;
            }
            let s = w.sigma.unwrap();
            let (a, b) = (w.left, w.right);
            let mass = s * (b.rho - a.rho) - (b.momentum() - a.momentum());
            let fl = |q: GasState| q.rho * q.u * q.u + law.pressure(q.rho).unwrap();
            let mom = s * (b.momentum() - a.momentum()) - (fl(b) - fl(a));
            let scale = (s.abs() + a.u.abs() + b.u.abs() + 1.0) * (a.rho + b.rho) + fl(a) + fl(b);
            prop_assert!(mass.abs() <= 1e-10 * scale && mom.abs() <= 1e-10 * scale);
            let (la, lb) = (law.eigenvalues(a).unwrap(), law.eigenvalues(b).unwrap());
            let (ea, eb) = match w.family {
                delta_riemann::Family::First => (la.0, lb.0),
                delta_riemann::Family::Second => (la.1, lb.1),
            };
            prop_assert!(ea > s && s > eb);
        }
        if let Middle::State { state } = sol.middle {
            prop_assert!(state.rho > 0.0);
        }
    }

    #[test]
    fn classical_sampling_is_self_similar(law in law(), l in state(), r in state(), x in -5.0f64..5.0, t in 0.01f64..10.0, k in 0i32..6) {
        let sol = MeasureSolution::from_classical(&solve_classical(&law, l, r).unwrap()).unwrap();
        let f = 2f64.powi(k - 3);
        prop_assert_eq!(sol.plan.state_at(&law, x, t), sol.plan.state_at(&law, f * x, f * t));
    }

    #[test]
    fn point_mass_paths(law in law(), l in state(), r in state(), rho0 in 0.01f64..5.0, u0 in -3.0f64..3.0) {
        let data = RiemannData::singular(l, r, rho0, u0);
        let path = construct(&law, data).unwrap();
        let br = brackets(&law, l, r, u0).unwrap();
        let end = path.lifespan().unwrap_or(10.0);
        for i in 1..200 {
            let t = end * i as f64 / 200.0;
            let x = path.position(t);
            let w = path.mass_weight(t);
            prop_assert!(w >= -1e-12 * (rho0 + (br.d_m.abs() + br.d_rho.abs()) * t), "w({}) = {}", t, w);
            let terms = [
                0.5 * br.d_rho * x * x,
                (br.d_m * t - rho0) * x,
                0.5 * br.d_flux * t * t,
                rho0 * u0 * t,
            ];
            let r = terms[0] - terms[1] + terms[2] - terms[3];
            let scale = terms.iter().map(|v| v.abs()).fold(0.0, f64::max);
            prop_assert!(r.abs() <= 1e-10 * scale.max(f64::MIN_POSITIVE), "t {} residual {} scale {}", t, r, scale);
        }
        let t = 0.5 * end.min(10.0);
        let h = 1e-5 * t;
        let fd = (path.position(t + h) - path.position(t - h)) / (2.0 * h);
        let v = path.velocity(t);
        prop_assert!((fd - v).abs() <= 1e-5 * v.abs().max(1.0), "{} {}", fd, v);
    }

    #[test]
    fn solutions_survive_json(law in law(), l in state(), r in state(), rho0 in prop_oneof![Just(0.0), 0.1f64..3.0], sel in 0.0f64..1.0) {
        let sol = if rho0 > 0.0 {
            solve_singular(&law, RiemannData::singular(l, r, rho0, 0.5 * (l.u + r.u)), sel)
        } else {
            solve_measure(&law, l, r, sel)
        };
        if let Ok(sol) = sol {
            let text = serde_json::to_string(&sol).unwrap();
            let back: MeasureSolution = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &sol);
        }
    }
}

#[test]
fn rho0_zero_fronts_are_straight() {
    let law = GasLaw::new(2.0).unwrap();
    let l = GasState { u: 1.0, rho: 1.0 };
    let r = GasState { u: -2.0, rho: 3.0 };
    let path = construct(&law, RiemannData::new(l, r)).unwrap();
    let s = path.position(1.0);
    for e in -6..=6 {
        let t = 10f64.powi(e);
        assert!(rel_close(path.position(t) / t, s, 1e-15), "{t}");
    }
}
