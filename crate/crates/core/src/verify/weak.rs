//! Weak-formulation residuals against polynomial test bumps.

use serde::{Deserialize, Serialize};

use super::quadrature::GaussLegendre;
use crate::delta::DeltaShockPath;
use crate::error::{Error, Result};
use crate::gas::GasLaw;
use crate::measure::{fan_speeds, MeasureSolution, Piece, SolutionPlan};
use crate::roots;

/// `phi = (1 - X^2)_+^k (1 - T^2)_+^k` with `X = (x - x0)/rx`, `T = (t - t0)/rt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestBump {
    pub center: (f64, f64),
    pub radii: (f64, f64),
    pub degree: u32,
}

impl TestBump {
    pub fn new(x0: f64, t0: f64, rx: f64, rt: f64) -> Result<Self> {
        let b = TestBump { center: (x0, t0), radii: (rx, rt), degree: 3 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let (rx, rt) = self.radii;
        if !(rx > 0.0 && rt > 0.0 && rx.is_finite() && rt.is_finite()) {
            return Err(Error::argument(format!("bump radii must be positive, got ({rx}, {rt})")));
        }
        if !(self.center.0.is_finite() && self.center.1.is_finite()) {
            return Err(Error::argument("bump center must be finite"));
        }
        if self.degree < 2 {
            return Err(Error::argument(format!("bump degree must be at least 2, got {}", self.degree)));
        }
        Ok(())
    }

    fn factor(&self, s: f64) -> (f64, f64) {
        if s.abs() >= 1.0 {
            return (0.0, 0.0);
        }
        let k = self.degree as i32;
        let q = 1.0 - s * s;
        (q.powi(k), -2.0 * k as f64 * s * q.powi(k - 1))
    }

    /// `(phi, phi_x, phi_t)`.
    pub fn eval(&self, x: f64, t: f64) -> (f64, f64, f64) {
        let (x0, t0) = self.center;
        let (rx, rt) = self.radii;
        let (fx, dfx) = self.factor((x - x0) / rx);
        let (ft, dft) = self.factor((t - t0) / rt);
        (fx * ft, dfx * ft / rx, fx * dft / rt)
    }

    pub fn x_support(&self) -> (f64, f64) {
        (self.center.0 - self.radii.0, self.center.0 + self.radii.0)
    }

    pub fn t_support(&self) -> (f64, f64) {
        (self.center.1 - self.radii.1, self.center.1 + self.radii.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub mass_residual: f64,
    pub momentum_residual: f64,
    pub scale: f64,
    pub quadrature_order: usize,
}

impl ResidualReport {
    /// Larger residual relative to `scale`.
    pub fn relative(&self) -> f64 {
        let r = self.mass_residual.abs().max(self.momentum_residual.abs());
        if self.scale > 0.0 {
            r / self.scale
        } else {
            r
        }
    }
}

#[derive(Default)]
struct Acc {
    mass: f64,
    mom: f64,
    scale: [f64; 10],
}

enum Edge<'a> {
    Line { speed: f64 },
    Curve { path: &'a DeltaShockPath },
}

impl Edge<'_> {
    fn at(&self, tau: f64) -> f64 {
        match self {
            Edge::Line { speed } => speed * tau,
            Edge::Curve { path } => path.position(tau),
        }
    }
}

fn edges<'a>(law: &GasLaw, plan: &'a SolutionPlan) -> Vec<Edge<'a>> {
    let mut out = Vec::new();
    for p in &plan.pieces {
        match p {
            Piece::Constant { .. } => {}
            Piece::Fan { family, left, right } => {
                let (a, b) = fan_speeds(law, *family, *left, *right);
                out.push(Edge::Line { speed: a });
                out.push(Edge::Line { speed: b });
            }
            Piece::Shock { speed, .. } => out.push(Edge::Line { speed: *speed }),
            Piece::Vacuum { head, tail } => {
                out.push(Edge::Line { speed: *head });
                out.push(Edge::Line { speed: *tail });
            }
            Piece::Delta { path } => match path.speed() {
                Some(s) => out.push(Edge::Line { speed: s }),
                None => out.push(Edge::Curve { path }),
            },
        }
    }
    out
}

/// Weak residuals of mass and momentum conservation tested against `bump`.
pub fn weak_residual(sol: &MeasureSolution, bump: &TestBump, order: usize) -> Result<ResidualReport> {
    weak_residual_with(sol, bump, order, 1.0)
}

/// As [`weak_residual`], with all atom weights multiplied by `weight_factor`.
pub fn weak_residual_with(
    sol: &MeasureSolution,
    bump: &TestBump,
    order: usize,
    weight_factor: f64,
) -> Result<ResidualReport> {
    bump.validate()?;
    if order == 0 {
        return Err(Error::argument("quadrature order must be positive"));
    }
    let (t_lo, tb) = bump.t_support();
    if tb <= 0.0 {
        return Err(Error::argument("bump support lies entirely before t = 0"));
    }
    if sol.blows_up() {
        if let Some(tf) = sol.final_time() {
            if tb >= tf {
                return Err(Error::argument(format!(
                    "bump support reaches the blow-up time {tf} of the front"
                )));
            }
        }
    }
    let ta = t_lo.max(0.0);
    let gl = GaussLegendre::new(order);
    let law = &sol.law;
    let mut acc = Acc::default();

    let mut plan = Some(&sol.plan);
    while let Some(p) = plan {
        let s0 = p.origin.t.max(ta);
        let s1 = p.end.unwrap_or(f64::INFINITY).min(tb);
        if s1 > s0 {
            integrate_plan(law, p, bump, &gl, s0, s1, weight_factor, &mut acc);
        }
        plan = p.continuation.as_deref();
    }

    if t_lo < 0.0 {
        initial_term(sol, bump, &gl, &mut acc);
    }

    let scale = acc.scale.iter().copied().fold(0.0, f64::max);
    Ok(ResidualReport { mass_residual: acc.mass, momentum_residual: acc.mom, scale, quadrature_order: order })
}

#[allow(clippy::too_many_arguments)]
fn integrate_plan(
    law: &GasLaw,
    plan: &SolutionPlan,
    bump: &TestBump,
    gl: &GaussLegendre,
    s0: f64,
    s1: f64,
    wf: f64,
    acc: &mut Acc,
) {
    let (xl, xr) = bump.x_support();
    let tc = plan.origin.t;
    let xc = plan.origin.x;
    let es = edges(law, plan);

    let mut cuts = vec![s0, s1];
    for e in &es {
        for target in [xl, xr] {
            match e {
                Edge::Line { speed } => {
                    if *speed != 0.0 {
                        let t = tc + (target - xc) / speed;
                        cuts.push(t);
                    }
                }
                Edge::Curve { path } => {
                    let g = |t: f64| xc + path.position(t - tc) - target;
                    let m = 400;
                    let mut prev = s0;
                    let mut gp = g(prev);
                    for i in 1..=m {
                        let t = s0 + (s1 - s0) * i as f64 / m as f64;
                        let t = if i == m { s1 } else { t };
                        let gt = g(t);
                        if gp.is_finite() && gt.is_finite() && gp.signum() != gt.signum() {
                            if let Ok(r) = roots::bisect(g, prev, t, 1e-15) {
                                cuts.push(r);
                            }
                        }
                        prev = t;
                        gp = gt;
                    }
                }
            }
        }
    }
    if let Some(path) = plan.delta() {
        cuts.extend(path.kinks().into_iter().map(|k| tc + k));
    }
    cuts.retain(|t| *t >= s0 && *t <= s1 && t.is_finite());
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * a.abs().max(1.0));

    let extinct_end = plan.end_closed && plan.end == Some(s1);

    for (ci, w) in cuts.windows(2).enumerate() {
        let (c0, c1) = (w[0], w[1]);
        if c1 <= c0 {
            continue;
        }
        let last = ci + 2 == cuts.len();
        let nodes: Vec<(f64, f64)> = if extinct_end && last {
            gl.mapped(0.0, (c1 - c0).sqrt()).map(|(s, ws)| (c1 - s * s, 2.0 * s * ws)).collect()
        } else {
            gl.mapped(c0, c1).collect()
        };
        for (t, wt) in nodes {
            time_slice(law, plan, &es, bump, gl, t, wt, wf, acc);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn time_slice(
    law: &GasLaw,
    plan: &SolutionPlan,
    es: &[Edge<'_>],
    bump: &TestBump,
    gl: &GaussLegendre,
    t: f64,
    wt: f64,
    wf: f64,
    acc: &mut Acc,
) {
    let (xl, xr) = bump.x_support();
    let tau = t - plan.origin.t;
    let xc = plan.origin.x;
    let mut xs = vec![xl, xr];
    xs.extend(es.iter().map(|e| xc + e.at(tau)).filter(|x| *x > xl && *x < xr));
    xs.sort_by(|a, b| a.total_cmp(b));

    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        for (x, wx) in gl.mapped(a, b) {
            let s = plan.state_at(law, x, t);
            let (_, px, pt) = bump.eval(x, t);
            let m = s.rho * s.u;
            let f = m * s.u + law.p(s.rho);
            let ww = wt * wx;
            let terms = [s.rho * pt, m * px, m * pt, f * px];
            acc.mass += ww * (terms[0] + terms[1]);
            acc.mom += ww * (terms[2] + terms[3]);
            for (k, v) in terms.iter().enumerate() {
                acc.scale[k] += (ww * v).abs();
            }
        }
    }

    if let Some(path) = plan.delta() {
        let x = xc + path.position(tau);
        if x > xl && x < xr {
            let (_, px, pt) = bump.eval(x, t);
            let w = wf * path.mass_weight(tau);
            let wm = wf * path.momentum_weight(tau);
            let wn = if w == 0.0 && wm == 0.0 { 0.0 } else { wf * path.energy_weight(tau) };
            let terms = [w * pt, wm * px, wm * pt, wn * px];
            if terms.iter().all(|v| v.is_finite()) {
                acc.mass += wt * (terms[0] + terms[1]);
                acc.mom += wt * (terms[2] + terms[3]);
                for (k, v) in terms.iter().enumerate() {
                    acc.scale[4 + k] += (wt * v).abs();
                }
            }
        }
    }
}

fn initial_term(sol: &MeasureSolution, bump: &TestBump, gl: &GaussLegendre, acc: &mut Acc) {
    let (xl, xr) = bump.x_support();
    let (l, r) = (sol.data.left, sol.data.right);
    let mut mass = 0.0;
    let mut mom = 0.0;
    let mut abs = 0.0;
    let mut abs_m = 0.0;
    for (state, a, b) in [(l, xl, xr.min(0.0)), (r, xl.max(0.0), xr)] {
        if b > a {
            for (x, wx) in gl.mapped(a, b) {
                let (phi, _, _) = bump.eval(x, 0.0);
                mass += wx * state.rho * phi;
                mom += wx * state.rho * state.u * phi;
                abs += (wx * state.rho * phi).abs();
                abs_m += (wx * state.rho * state.u * phi).abs();
            }
        }
    }
    let (phi0, _, _) = bump.eval(0.0, 0.0);
    mass += sol.data.rho0 * phi0;
    mom += sol.data.rho0 * sol.data.u0 * phi0;
    acc.mass += mass;
    acc.mom += mom;
    acc.scale[8] += abs + (sol.data.rho0 * phi0).abs();
    acc.scale[9] += abs_m + (sol.data.rho0 * sol.data.u0 * phi0).abs();
}
