//! Measure-valued solutions: single delta shocks, delta shocks paired with a
//! rarefaction, point-mass data with continuation past extinction, and sampling.

use serde::{Deserialize, Serialize};

use crate::classical::{solve_classical, ClassicalSolution, Middle, Pattern, WaveKind};
use crate::classify::{classify, RegionLabel};
use crate::curves::CurveId;
use crate::delta::{construct, DeltaShockPath, Extinction};
use crate::error::{Error, Result};
use crate::gas::{Family, GasLaw, GasState};
use crate::problem::RiemannData;
use crate::roots;
use crate::tol;

/// One structure of a self-similar or point-mass solution, in plan-local coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "piece", rename_all = "snake_case")]
pub enum Piece {
    Constant { state: GasState },
    Fan { family: Family, left: GasState, right: GasState },
    Shock { family: Family, left: GasState, right: GasState, speed: f64 },
    Delta { path: DeltaShockPath },
    Vacuum { head: f64, tail: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanKind {
    Constant,
    SingleDelta,
    DeltaRarefaction,
    RarefactionDelta,
    Classical { pattern: Pattern },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Origin {
    pub x: f64,
    pub t: f64,
}

/// Ordered pieces valid on `[origin.t, end]`, optionally followed by another plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionPlan {
    pub kind: PlanKind,
    pub origin: Origin,
    pub pieces: Vec<Piece>,
    pub end: Option<f64>,
    pub end_closed: bool,
    pub continuation: Option<Box<SolutionPlan>>,
}

/// The non-unique intermediate state of a delta shock paired with a rarefaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntermediatePick {
    pub state: GasState,
    pub admissible_rho_interval: (f64, f64),
    pub selection: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSolution {
    pub law: GasLaw,
    pub data: RiemannData,
    pub region: RegionLabel,
    pub plan: SolutionPlan,
    pub pick: Option<IntermediatePick>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub w: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledProfile {
    pub time: f64,
    pub x: Vec<f64>,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureOptions {
    pub selection: f64,
    pub allow_nonentropic: bool,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions { selection: 0.5, allow_nonentropic: false }
    }
}

impl Piece {
    /// `(y_lo, y_hi)` covered at local time `tau`; `None` for constants.
    pub fn extent(&self, law: &GasLaw, tau: f64) -> Option<(f64, f64)> {
        match self {
            Piece::Constant { .. } => None,
            Piece::Fan { family, left, right } => {
                let (a, b) = fan_speeds(law, *family, *left, *right);
                Some((a * tau, b * tau))
            }
            Piece::Shock { speed, .. } => Some((speed * tau, speed * tau)),
            Piece::Delta { path } => {
                let x = path.position(tau);
                Some((x, x))
            }
            Piece::Vacuum { head, tail } => Some((head * tau, tail * tau)),
        }
    }
}

/// Characteristic speeds bounding a fan.
pub fn fan_speeds(law: &GasLaw, family: Family, left: GasState, right: GasState) -> (f64, f64) {
    match family {
        Family::First => (left.u - law.c(left.rho), right.u - law.c(right.rho)),
        Family::Second => (left.u + law.c(left.rho), right.u + law.c(right.rho)),
    }
}

impl SolutionPlan {
    fn new(kind: PlanKind, origin: Origin, pieces: Vec<Piece>) -> Self {
        SolutionPlan { kind, origin, pieces, end: None, end_closed: false, continuation: None }
    }

    pub fn left_state(&self) -> GasState {
        match self.pieces.first() {
            Some(Piece::Constant { state }) => *state,
            _ => unreachable!("plans start with a constant state"),
        }
    }

    pub fn right_state(&self) -> GasState {
        match self.pieces.last() {
            Some(Piece::Constant { state }) => *state,
            _ => unreachable!("plans end with a constant state"),
        }
    }

    pub fn delta(&self) -> Option<&DeltaShockPath> {
        self.pieces.iter().find_map(|p| match p {
            Piece::Delta { path } => Some(path),
            _ => None,
        })
    }

    /// Whether `t` lies in this plan's own validity interval.
    pub fn covers(&self, t: f64) -> bool {
        t >= self.origin.t
            && match self.end {
                None => true,
                Some(e) => t < e || (t == e && self.end_closed),
            }
    }

    /// Plan (this or a continuation) valid at `t`.
    pub fn active(&self, t: f64) -> Result<&SolutionPlan> {
        if self.covers(t) {
            return Ok(self);
        }
        match &self.continuation {
            Some(c) if t >= self.origin.t => c.active(t),
            _ => Err(Error::argument(format!("time {t} is outside the solution's validity"))),
        }
    }

    /// Absolutely continuous part at `(x, t)`; `t` must be covered by this plan.
    /// On a front the right state is returned.
    pub fn state_at(&self, law: &GasLaw, x: f64, t: f64) -> GasState {
        let tau = t - self.origin.t;
        let y = x - self.origin.x;
        let mut current = self.left_state();
        for piece in &self.pieces {
            if let Piece::Constant { state } = piece {
                current = *state;
                continue;
            }
            let (lo, hi) = piece.extent(law, tau).unwrap();
            if y < lo {
                return current;
            }
            if y < hi {
                let xi = y / tau;
                return match piece {
                    Piece::Fan { family: Family::First, left, .. } => law.fan_state(Family::First, *left, xi),
                    Piece::Fan { family: Family::Second, right, .. } => law.fan_state(Family::Second, *right, xi),
                    Piece::Vacuum { head, tail } => {
                        let s = (xi - head) / (tail - head);
                        GasState { u: head + s * (tail - head), rho: 0.0 }
                    }
                    _ => current,
                };
            }
        }
        current
    }

    /// Atoms at time `t` with their absolute positions.
    pub fn atoms_at(&self, t: f64) -> Vec<Atom> {
        let tau = t - self.origin.t;
        self.pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Delta { path } => Some(Atom {
                    x: self.origin.x + path.position(tau),
                    w: path.mass_weight(tau),
                    v: path.velocity(tau),
                }),
                _ => None,
            })
            .collect()
    }
}

impl MeasureSolution {
    /// Wrap a single delta shock issued from the origin.
    pub fn from_delta(law: &GasLaw, path: DeltaShockPath) -> Result<Self> {
        let data = RiemannData::singular(path.left(), path.right(), path.rho0(), path.u0());
        let region = classify(law, path.left(), path.right())?;
        let mut plan = single_delta_plan(path, Origin { x: 0.0, t: 0.0 });
        let path = plan.delta().unwrap().clone();
        if let Some(ts) = path.lifespan() {
            plan.end = Some(ts);
            plan.end_closed = path.lifespan_closed();
        }
        Ok(MeasureSolution { law: *law, data, region, plan, pick: None, notes: Vec::new() })
    }

    /// Wrap a classical solution.
    pub fn from_classical(sol: &ClassicalSolution) -> Result<Self> {
        let region = classify(&sol.law, sol.left, sol.right)?;
        Ok(MeasureSolution {
            law: sol.law,
            data: RiemannData::new(sol.left, sol.right),
            region,
            plan: classical_plan(sol, Origin { x: 0.0, t: 0.0 }),
            pick: None,
            notes: Vec::new(),
        })
    }

    /// Last time covered by some plan, `None` if unbounded.
    pub fn final_time(&self) -> Option<f64> {
        let mut p = &self.plan;
        while let Some(c) = &p.continuation {
            p = c;
        }
        p.end
    }

    /// Whether the solution ends in a blow-up of the front.
    pub fn blows_up(&self) -> bool {
        let mut p = &self.plan;
        loop {
            if let Some(path) = p.delta() {
                if matches!(path.extinction(), Extinction::BlowsUpAt { .. }) && p.continuation.is_none() {
                    return true;
                }
            }
            match &p.continuation {
                Some(c) => p = c,
                None => return false,
            }
        }
    }
}

fn single_delta_plan(path: DeltaShockPath, origin: Origin) -> SolutionPlan {
    let (l, r) = (path.left(), path.right());
    SolutionPlan::new(
        PlanKind::SingleDelta,
        origin,
        vec![Piece::Constant { state: l }, Piece::Delta { path }, Piece::Constant { state: r }],
    )
}

/// Plan of a classical solution centred at `origin`.
pub fn classical_plan(sol: &ClassicalSolution, origin: Origin) -> SolutionPlan {
    if sol.pattern == Pattern::Constant {
        return SolutionPlan::new(PlanKind::Constant, origin, vec![Piece::Constant { state: sol.left }]);
    }
    let mut pieces = vec![Piece::Constant { state: sol.left }];
    for (i, w) in sol.waves.iter().enumerate() {
        if i == 1 {
            match sol.middle {
                Middle::Vacuum { head, tail } => pieces.push(Piece::Vacuum { head, tail }),
                _ => pieces.push(Piece::Constant { state: w.left }),
            }
        }
        pieces.push(match w.kind {
            WaveKind::Shock => Piece::Shock { family: w.family, left: w.left, right: w.right, speed: w.sigma.unwrap() },
            WaveKind::Rarefaction => Piece::Fan { family: w.family, left: w.left, right: w.right },
        });
    }
    pieces.push(Piece::Constant { state: sol.right });
    SolutionPlan::new(PlanKind::Classical { pattern: sol.pattern }, origin, pieces)
}

fn check_selection(selection: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&selection) {
        return Err(Error::argument(format!("selection must lie in [0, 1], got {selection}")));
    }
    Ok(())
}

/// Measure solution for data without a point mass, using the default options.
pub fn solve_measure(law: &GasLaw, left: GasState, right: GasState, selection: f64) -> Result<MeasureSolution> {
    solve_measure_with(law, left, right, MeasureOptions { selection, allow_nonentropic: false })
}

pub fn solve_measure_with(
    law: &GasLaw,
    left: GasState,
    right: GasState,
    opts: MeasureOptions,
) -> Result<MeasureSolution> {
    let data = RiemannData::new(left, right);
    data.validate()?;
    check_selection(opts.selection)?;
    let region = classify(law, left, right)?;
    let plan = measure_plan(law, left, right, region, opts, Origin { x: 0.0, t: 0.0 })?;
    let mut notes = Vec::new();
    if region == RegionLabel::HalfLineRho1 {
        notes.push("right state on the half-line rho2 = rho1, u2 > u1: no continuous dependence".into());
    }
    if opts.allow_nonentropic && plan.0.kind == PlanKind::SingleDelta && !region.is_four() {
        notes.push("single delta shock violates the over-compressing entropy condition".into());
    }
    Ok(MeasureSolution { law: *law, data, region, plan: plan.0, pick: plan.1, notes })
}

fn measure_plan(
    law: &GasLaw,
    left: GasState,
    right: GasState,
    region: RegionLabel,
    opts: MeasureOptions,
    origin: Origin,
) -> Result<(SolutionPlan, Option<IntermediatePick>)> {
    use RegionLabel::*;
    match region {
        Coincident => Ok((SolutionPlan::new(PlanKind::Constant, origin, vec![Piece::Constant { state: left }]), None)),
        IV0 | OnCurve(CurveId::D1 | CurveId::D2) => {
            let path = construct(law, RiemannData::new(left, right))?;
            Ok((single_delta_plan(path, origin), None))
        }
        IV1 | III | OnCurve(CurveId::S1) => {
            let pick = pick_delta_rarefaction(law, left, right, opts.selection)?;
            let path = construct(law, RiemannData::new(left, pick.state))?;
            let lam2 = pick.state.u + law.c(pick.state.rho);
            let v = path.velocity(1.0);
            if !(v <= lam2 + tol::ON_CURVE * lam2.abs().max(1.0)) {
                return Err(Error::NoConvergence(format!(
                    "delta speed {v} exceeds the characteristic speed {lam2} of the intermediate state"
                )));
            }
            let pieces = vec![
                Piece::Constant { state: left },
                Piece::Delta { path },
                Piece::Constant { state: pick.state },
                Piece::Fan { family: Family::Second, left: pick.state, right },
                Piece::Constant { state: right },
            ];
            Ok((SolutionPlan::new(PlanKind::DeltaRarefaction, origin, pieces), Some(pick)))
        }
        IV2 | II | OnCurve(CurveId::S2) => {
            let m = pick_delta_rarefaction(law, right.mirrored(), left.mirrored(), opts.selection)?;
            let pick = IntermediatePick { state: m.state.mirrored(), ..m };
            let path = construct(law, RiemannData::new(pick.state, right))?;
            let lam1 = pick.state.u - law.c(pick.state.rho);
            let v = path.velocity(1.0);
            if !(v >= lam1 - tol::ON_CURVE * lam1.abs().max(1.0)) {
                return Err(Error::NoConvergence(format!(
                    "delta speed {v} is below the characteristic speed {lam1} of the intermediate state"
                )));
            }
            let pieces = vec![
                Piece::Constant { state: left },
                Piece::Fan { family: Family::First, left, right: pick.state },
                Piece::Constant { state: pick.state },
                Piece::Delta { path },
                Piece::Constant { state: right },
            ];
            Ok((SolutionPlan::new(PlanKind::RarefactionDelta, origin, pieces), Some(pick)))
        }
        _ => {
            if opts.allow_nonentropic {
                if let Ok(path) = construct(law, RiemannData::new(left, right)) {
                    return Ok((single_delta_plan(path, origin), None));
                }
            }
            Err(Error::NoMeasureSolution { region, reason: no_solution_reason(region) })
        }
    }
}

fn no_solution_reason(region: RegionLabel) -> String {
    match region {
        RegionLabel::I0Upper | RegionLabel::I0Lower => {
            "a single delta shock exists but violates the over-compressing entropy condition; \
             no solution with at most two waves contains an entropic delta shock"
                .into()
        }
        RegionLabel::V => "the states are separated by vacuum; no solution with at most two waves \
                           contains a delta shock"
            .into(),
        _ => "no solution consisting of one or two waves contains a delta shock; \
              the classical solution applies"
            .into(),
    }
}

/// Intermediate state on the backward 2-rarefaction curve of `right` reachable
/// from `left` by an entropic delta shock that is not faster than the fan head.
pub fn pick_delta_rarefaction(law: &GasLaw, left: GasState, right: GasState, selection: f64) -> Result<IntermediatePick> {
    check_selection(selection)?;
    let floor = law.speed_floor(left.rho);
    let gamma = law.gamma();
    let p1 = law.p(left.rho);
    let admissible = |rho: f64| -> bool {
        if !(rho >= floor) || rho >= right.rho {
            return false;
        }
        let um = right.u + law.riemann_difference(rho, right.rho);
        let v = left.u - um;
        if !(v > 0.0) {
            return false;
        }
        let vd = (law.pressure_jump(rho, left.rho).abs() / rho.min(left.rho)).sqrt();
        if v < vd {
            return false;
        }
        let s = (((gamma + 1.0) * law.p(rho) - p1) / left.rho).max(0.0).sqrt();
        law.c(rho) + s >= v
    };

    const N: usize = 1024;
    let top = right.rho;
    let mut grid: Vec<f64> = (1..=N).map(|k| top - (top - floor) * k as f64 / N as f64).collect();
    if left.rho > floor && left.rho < top {
        grid.push(left.rho);
    }
    grid.sort_by(|a, b| b.total_cmp(a));
    grid.dedup();

    let first = grid.iter().position(|&r| admissible(r)).ok_or_else(|| {
        Error::NoConvergence("no admissible intermediate density on the rarefaction curve".into())
    })?;
    let above = if first == 0 { top } else { grid[first - 1] };
    let rho_hi = roots::bisect_predicate(&admissible, grid[first], above, tol::ROOT);
    let last = grid[first..].iter().position(|&r| !admissible(r)).map(|k| first + k);
    let rho_lo = match last {
        None => *grid.last().unwrap(),
        Some(k) => roots::bisect_predicate(&admissible, grid[k - 1], grid[k], tol::ROOT),
    };
    let rho = (rho_lo + selection * (rho_hi - rho_lo)).clamp(rho_lo, rho_hi);
    let u = right.u + law.riemann_difference(rho, right.rho);
    Ok(IntermediatePick { state: GasState { u, rho }, admissible_rho_interval: (rho_lo, rho_hi), selection })
}

/// Solution for data with a point mass at the origin.
pub fn solve_singular(law: &GasLaw, data: RiemannData, selection: f64) -> Result<MeasureSolution> {
    data.validate()?;
    check_selection(selection)?;
    if data.rho0 <= 0.0 {
        return Err(Error::argument("solve_singular requires rho0 > 0"));
    }
    let region = classify(law, data.left, data.right)?;
    let path = construct(law, data)?;
    let mut notes = Vec::new();
    let mut pick = None;
    let extinction = path.extinction();
    let degenerate = path.is_degenerate();
    let mut plan = single_delta_plan(path, Origin { x: 0.0, t: 0.0 });
    let path = plan.delta().unwrap().clone();
    match extinction {
        Extinction::None => {}
        Extinction::BlowsUpAt { t, direction } => {
            plan.end = Some(t);
            plan.end_closed = false;
            notes.push(format!(
                "local solution: the front escapes to {} as t -> {t}",
                if direction > 0.0 { "+infinity" } else { "-infinity" }
            ));
        }
        Extinction::WeightVanishesAt { t } => {
            plan.end = Some(t);
            plan.end_closed = true;
            if degenerate {
                notes.push("point mass at the mean velocity: the front stays finite and the weight vanishes".into());
            }
            let wm = path.momentum_weight(t);
            if wm != 0.0 && wm.is_finite() {
                notes.push(format!(
                    "the atom still carries momentum {wm} as its mass vanishes at t = {t}; the continuation drops it"
                ));
            }
            let origin = Origin { x: path.position(t), t };
            let (l, r) = (data.left, data.right);
            let cont = if region.is_four() {
                let opts = MeasureOptions { selection, allow_nonentropic: false };
                let (c, p) = measure_plan(law, l, r, region, opts, origin)?;
                pick = p;
                c
            } else {
                if matches!(region, RegionLabel::I0Upper | RegionLabel::I0Lower) {
                    notes.push(
                        "continuation uses the classical solution; a non-entropic single delta shock also exists".into(),
                    );
                }
                classical_plan(&solve_classical(law, l, r)?, origin)
            };
            plan.continuation = Some(Box::new(cont));
        }
    }
    Ok(MeasureSolution { law: *law, data, region, plan, pick, notes })
}

/// Sample `sol` at time `t` on `n` evenly spaced points of `[x_lo, x_hi]`.
pub fn sample_solution(sol: &MeasureSolution, t: f64, x_lo: f64, x_hi: f64, n: usize) -> Result<SampledProfile> {
    if !(x_lo <= x_hi) || !x_lo.is_finite() || !x_hi.is_finite() {
        return Err(Error::argument(format!("invalid sampling window [{x_lo}, {x_hi}]")));
    }
    if n == 0 {
        return Err(Error::argument("sampling needs at least one point"));
    }
    if !t.is_finite() {
        return Err(Error::argument(format!("invalid time {t}")));
    }
    let plan = sol.plan.active(t)?;
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if n == 1 {
                x_lo
            } else if i + 1 == n {
                x_hi
            } else {
                x_lo + (x_hi - x_lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let mut rho = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    for &x in &xs {
        let s = plan.state_at(&sol.law, x, t);
        rho.push(s.rho);
        u.push(s.u);
    }
    let atoms = plan
        .atoms_at(t)
        .into_iter()
        .filter(|a| a.w > 0.0 && a.x >= x_lo && a.x <= x_hi)
        .collect();
    Ok(SampledProfile { time: t, x: xs, rho, u, atoms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(u: f64, rho: f64) -> GasState {
        GasState { u, rho }
    }

    fn g2() -> GasLaw {
        GasLaw::new(2.0).unwrap()
    }

    #[test]
    fn single_delta_in_iv0() {
        let s = solve_measure(&g2(), st(0.0, 1.0), st(-3.0, 1.0), 0.5).unwrap();
        assert_eq!(s.plan.kind, PlanKind::SingleDelta);
        let p = s.plan.delta().unwrap();
        assert_eq!(p.position(2.0), -3.0);
        assert_eq!(p.mass_weight(2.0), 6.0);
    }

    #[test]
    fn delta_then_rarefaction() {
        let g = g2();
        let s = solve_measure(&g, st(0.0, 1.0), st(0.0, 4.0), 0.5).unwrap();
        assert_eq!(s.plan.kind, PlanKind::DeltaRarefaction);
        let pick = s.pick.unwrap();
        let (lo, hi) = pick.admissible_rho_interval;
        assert!((lo - 1.0).abs() < 1e-10, "{lo}");
        assert!(hi > 1.9 && hi < 2.0, "{hi}");
        let sel = (1.5 - lo) / (hi - lo);
        let s = solve_measure(&g, st(0.0, 1.0), st(0.0, 4.0), sel).unwrap();
        let m = s.pick.unwrap().state;
        assert!((m.rho - 1.5).abs() < 1e-9);
        assert!((m.u + 2.1927).abs() < 1e-4, "{}", m.u);
        let v = s.plan.delta().unwrap().velocity(1.0);
        assert!((v + 1.446).abs() < 1e-3);
        assert!(v <= m.u + g.c(m.rho));
    }

    #[test]
    fn vacuum_has_no_measure_solution() {
        let e = solve_measure(&g2(), st(0.0, 1.0), st(6.0, 1.0), 0.5).unwrap_err();
        assert!(matches!(e, Error::NoMeasureSolution { region: RegionLabel::V, .. }));
    }

    #[test]
    fn stationary_point_mass_sampling() {
        let d = RiemannData::singular(st(1.0, 1.0), st(-1.0, 1.0), 1.0, 0.0);
        let s = solve_singular(&g2(), d, 0.5).unwrap();
        let prof = sample_solution(&s, 1.0, -1.0, 1.0, 3).unwrap();
        assert_eq!((prof.rho[0], prof.rho[2]), (1.0, 1.0));
        assert_eq!((prof.u[0], prof.u[2]), (1.0, -1.0));
        assert_eq!(prof.atoms, vec![Atom { x: 0.0, w: 3.0, v: 0.0 }]);
    }

    #[test]
    fn blow_up_is_local() {
        let d = RiemannData::singular(st(-1.0, 1.0), st(1.0, 1.0), 1.0, 0.5);
        let s = solve_singular(&g2(), d, 0.5).unwrap();
        assert!(s.blows_up());
        assert!(sample_solution(&s, 0.4, -1.0, 1.0, 3).is_ok());
        assert!(sample_solution(&s, 0.5, -1.0, 1.0, 3).is_err());
    }

    #[test]
    fn continuation_after_extinction() {
        let d = RiemannData::singular(st(0.0, 1.0), st(0.0, 4.0), 1.0, 0.0);
        let s = solve_singular(&g2(), d, 0.5).unwrap();
        let c = s.plan.continuation.as_ref().unwrap();
        assert_eq!(c.kind, PlanKind::Classical { pattern: Pattern::S1R2 });
        let ts = s.plan.end.unwrap();
        let prof = sample_solution(&s, 2.0 * ts, -2.0, 2.0, 11).unwrap();
        assert!(prof.atoms.is_empty());
    }
}
