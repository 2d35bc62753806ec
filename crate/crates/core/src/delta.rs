//! Closed-form delta-shock paths, their lifespans, entropy intervals and convexity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{brackets_unchecked, Brackets};
use crate::error::{Error, Result};
use crate::gas::{GasLaw, GasState};
use crate::problem::RiemannData;
use crate::roots;
use crate::tol;

/// Existence cases of a single delta shock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseRow {
    /// `rho0 = 0`, `[rho] = 0`, `[u] < 0`.
    MasslessEqualDensity,
    /// `rho0 = 0`, `[rho] != 0`, `a > 0`.
    MasslessPositiveA,
    /// `rho0 = 0`, `[rho] != 0`, `a = 0`: zero weight.
    MasslessZeroA,
    /// `rho0 > 0`, `[rho] = 0`, `[u] < 0`.
    EqualDensityConverging,
    /// `rho0 > 0`, `[rho] = 0`, `[u] = 0`.
    EqualDensityParallel,
    /// `rho0 > 0`, `[rho] = 0`, `[u] > 0`: local, front escapes.
    EqualDensityDiverging,
    /// `a > 0`, `b > -sqrt(a)`.
    PositiveAGrowing,
    /// `a > 0`, `b = -sqrt(a)`: weight touches zero once.
    PositiveATouching,
    /// `a > 0`, `b < -sqrt(a)`: local.
    PositiveADraining,
    /// `a = 0`, `b > 0`.
    ZeroAGrowing,
    /// `a = 0`, `b = 0`.
    ZeroASteady,
    /// `a = 0`, `b < 0`: local.
    ZeroADraining,
    /// `a < 0`, `b < 0`: local.
    NegativeADraining,
    /// `a < 0`, `b >= 0`: local.
    NegativeARiseFall,
}

/// Qualitative behaviour of `w_rho` on the lifespan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightTrend {
    Increasing,
    Constant,
    IdenticallyZero,
    DecreasingToZero,
    DipToZeroThenIncreasing,
    RiseThenFallToZero,
}

impl CaseRow {
    pub const ALL: [CaseRow; 14] = [
        CaseRow::MasslessEqualDensity,
        CaseRow::MasslessPositiveA,
        CaseRow::MasslessZeroA,
        CaseRow::EqualDensityConverging,
        CaseRow::EqualDensityParallel,
        CaseRow::EqualDensityDiverging,
        CaseRow::PositiveAGrowing,
        CaseRow::PositiveATouching,
        CaseRow::PositiveADraining,
        CaseRow::ZeroAGrowing,
        CaseRow::ZeroASteady,
        CaseRow::ZeroADraining,
        CaseRow::NegativeADraining,
        CaseRow::NegativeARiseFall,
    ];

    pub fn weight_trend(self) -> WeightTrend {
        use CaseRow::*;
        match self {
            MasslessEqualDensity | MasslessPositiveA | EqualDensityConverging | PositiveAGrowing
            | ZeroAGrowing => WeightTrend::Increasing,
            MasslessZeroA => WeightTrend::IdenticallyZero,
            EqualDensityParallel | ZeroASteady => WeightTrend::Constant,
            EqualDensityDiverging | PositiveADraining | ZeroADraining | NegativeADraining => {
                WeightTrend::DecreasingToZero
            }
            PositiveATouching => WeightTrend::DipToZeroThenIncreasing,
            NegativeARiseFall => WeightTrend::RiseThenFallToZero,
        }
    }

    pub fn is_global(self) -> bool {
        !matches!(
            self,
            CaseRow::EqualDensityDiverging
                | CaseRow::PositiveADraining
                | CaseRow::ZeroADraining
                | CaseRow::NegativeADraining
                | CaseRow::NegativeARiseFall
        )
    }
}

/// Why no single delta shock connects the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoDeltaShock {
    ANegative { a: f64 },
    UJumpPositive,
    DegenerateConstant,
}

impl fmt::Display for NoDeltaShock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoDeltaShock::ANegative { a } => write!(f, "a_negative (a = {a})"),
            NoDeltaShock::UJumpPositive => f.write_str("u_jump_positive"),
            NoDeltaShock::DegenerateConstant => f.write_str("degenerate_constant"),
        }
    }
}

/// Closed form of the front position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontForm {
    Linear,
    Rational,
    Radical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Extinction {
    None,
    WeightVanishesAt { t: f64 },
    BlowsUpAt { t: f64, direction: f64 },
}

/// Front `x(t)` and weights of a single delta shock issued from the origin.
///
/// Times are local: the shock starts at `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaShockPath {
    case_row: CaseRow,
    form: FrontForm,
    left: GasState,
    right: GasState,
    rho0: f64,
    u0: f64,
    brackets: Brackets,
    speed: Option<f64>,
    lifespan: Option<f64>,
    extinction: Extinction,
    other_root: Option<f64>,
    touch: Option<f64>,
    degenerate: bool,
}

/// Build the delta shock for `data`, or report why none exists.
pub fn construct(law: &GasLaw, data: RiemannData) -> Result<DeltaShockPath> {
    data.validate()?;
    let (l, r, rho0, u0) = (data.left, data.right, data.rho0, data.u0);
    let mut br = brackets_unchecked(law, l, r, u0);
    let a_scale = br.a_scale(l, r);
    let mut p = DeltaShockPath {
        case_row: CaseRow::MasslessEqualDensity,
        form: FrontForm::Linear,
        left: l,
        right: r,
        rho0,
        u0,
        brackets: br,
        speed: None,
        lifespan: None,
        extinction: Extinction::None,
        other_root: None,
        touch: None,
        degenerate: false,
    };

    if rho0 == 0.0 {
        if br.d_rho == 0.0 {
            if br.d_u > 0.0 {
                return Err(Error::NoDeltaShock(NoDeltaShock::UJumpPositive));
            }
            if br.d_u == 0.0 {
                return Err(Error::NoDeltaShock(NoDeltaShock::DegenerateConstant));
            }
            p.case_row = CaseRow::MasslessEqualDensity;
            p.speed = Some(0.5 * (l.u + r.u));
        } else {
            if tol::is_zero(br.a, a_scale) {
                br.a = 0.0;
                p.case_row = CaseRow::MasslessZeroA;
            } else if br.a < 0.0 {
                return Err(Error::NoDeltaShock(NoDeltaShock::ANegative { a: br.a }));
            } else {
                p.case_row = CaseRow::MasslessPositiveA;
            }
            p.speed = Some(self_similar_speed(&br));
        }
        p.brackets = br;
        return Ok(p);
    }

    if br.d_rho == 0.0 {
        if br.d_u < 0.0 {
            p.case_row = CaseRow::EqualDensityConverging;
            p.form = FrontForm::Rational;
        } else if br.d_u == 0.0 {
            p.case_row = CaseRow::EqualDensityParallel;
            p.speed = Some(u0);
        } else {
            p.case_row = CaseRow::EqualDensityDiverging;
            p.form = FrontForm::Rational;
            let t_star = rho0 / (l.rho * br.d_u);
            let mean = 0.5 * (l.u + r.u);
            p.lifespan = Some(t_star);
            if tol::is_zero(u0 - mean, l.u.abs() + r.u.abs() + u0.abs()) {
                log::warn!(
                    "point mass moves at the mean velocity {mean}: the front stays finite and \
                     the weight vanishes at t = {t_star}"
                );
                p.degenerate = true;
                p.form = FrontForm::Linear;
                p.speed = Some(mean);
                p.extinction = Extinction::WeightVanishesAt { t: t_star };
            } else {
                let direction = if u0 > mean { 1.0 } else { -1.0 };
                p.extinction = Extinction::BlowsUpAt { t: t_star, direction };
            }
        }
        return Ok(p);
    }

    p.form = FrontForm::Radical;
    let b_scale = (br.d_rho * u0).abs() + br.d_m.abs();
    if !tol::is_zero(br.a, a_scale) && br.a > 0.0 {
        let sa = br.a.sqrt();
        if tol::is_zero(br.b + sa, b_scale + sa) {
            br.b = -sa;
            p.case_row = CaseRow::PositiveATouching;
            p.touch = Some(rho0 / sa);
        } else if br.b > -sa {
            p.case_row = CaseRow::PositiveAGrowing;
        } else {
            p.case_row = CaseRow::PositiveADraining;
        }
    } else if br.a.abs() <= tol::ZERO_REL * a_scale.max(f64::MIN_POSITIVE) {
        br.a = 0.0;
        if tol::is_zero(br.b, b_scale) {
            br.b = 0.0;
            p.case_row = CaseRow::ZeroASteady;
        } else if br.b > 0.0 {
            p.case_row = CaseRow::ZeroAGrowing;
        } else {
            p.case_row = CaseRow::ZeroADraining;
        }
    } else if br.b < 0.0 {
        p.case_row = CaseRow::NegativeADraining;
    } else {
        p.case_row = CaseRow::NegativeARiseFall;
    }
    p.brackets = br;

    if !p.case_row.is_global() {
        let (a, b) = (br.a, br.b);
        let t_star = if a == 0.0 {
            -rho0 / (2.0 * b)
        } else if b <= 0.0 {
            rho0 / ((b * b - a).sqrt() - b)
        } else {
            rho0 * (b + (b * b - a).sqrt()) / (-a)
        };
        p.lifespan = Some(t_star);
        p.extinction = Extinction::WeightVanishesAt { t: t_star };
        if a != 0.0 {
            p.other_root = Some(rho0 * rho0 / (a * t_star));
        }
    }
    Ok(p)
}

/// Speed of the self-similar front between two states of different density.
fn self_similar_speed(br: &Brackets) -> f64 {
    let sa = br.a.max(0.0).sqrt();
    if br.d_m < 0.0 {
        br.d_flux / (br.d_m - sa)
    } else {
        (br.d_m + sa) / br.d_rho
    }
}

impl DeltaShockPath {
    pub fn case_row(&self) -> CaseRow {
        self.case_row
    }

    pub fn form(&self) -> FrontForm {
        self.form
    }

    pub fn left(&self) -> GasState {
        self.left
    }

    pub fn right(&self) -> GasState {
        self.right
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn brackets(&self) -> &Brackets {
        &self.brackets
    }

    /// Constant front speed for self-similar paths.
    pub fn speed(&self) -> Option<f64> {
        self.speed
    }

    /// `None` for global paths.
    pub fn lifespan(&self) -> Option<f64> {
        self.lifespan
    }

    /// Whether the lifespan includes its end point.
    pub fn lifespan_closed(&self) -> bool {
        matches!(self.extinction, Extinction::WeightVanishesAt { .. })
    }

    pub fn extinction(&self) -> Extinction {
        self.extinction
    }

    /// Mean-velocity point mass between diverging states of equal density.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Interior times where the path is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        self.touch.into_iter().collect()
    }

    pub fn is_self_similar(&self) -> bool {
        self.rho0 == 0.0
    }

    /// `a t^2 + 2 rho0 b t + rho0^2`, evaluated in factored form when a root is known.
    pub fn discriminant(&self, t: f64) -> f64 {
        let (a, b, rho0) = (self.brackets.a, self.brackets.b, self.rho0);
        if self.touch.is_some() {
            let s = a.sqrt() * t - rho0;
            return s * s;
        }
        match (self.lifespan, self.other_root) {
            (Some(ts), Some(t2)) if self.form == FrontForm::Radical => (a * (t - ts) * (t - t2)).max(0.0),
            (Some(ts), None) if self.form == FrontForm::Radical => (-2.0 * rho0 * b * (ts - t)).max(0.0),
            _ => self.brackets.discriminant(rho0, t).max(0.0),
        }
    }

    /// Front position.
    pub fn position(&self, t: f64) -> f64 {
        if let Some(s) = self.speed {
            return s * t;
        }
        let br = &self.brackets;
        let (l, r, rho0, u0) = (self.left, self.right, self.rho0, self.u0);
        match self.form {
            FrontForm::Rational => {
                let num = t * (l.rho * br.d_u * (l.u + r.u) * t - 2.0 * rho0 * u0);
                num / (2.0 * (l.rho * br.d_u * t - rho0))
            }
            _ => {
                let big_b = br.d_m * t - rho0;
                let big_c = 0.5 * br.d_flux * t * t - rho0 * u0 * t;
                let sd = self.discriminant(t).sqrt();
                if big_b <= 0.0 {
                    let den = big_b - sd;
                    if den == 0.0 {
                        0.0
                    } else {
                        2.0 * big_c / den
                    }
                } else {
                    (big_b + sd) / br.d_rho
                }
            }
        }
    }

    /// Mass weight `w_rho`.
    pub fn mass_weight(&self, t: f64) -> f64 {
        let br = &self.brackets;
        if self.rho0 == 0.0 {
            return if br.d_rho == 0.0 { -self.left.rho * br.d_u * t } else { br.a.max(0.0).sqrt() * t };
        }
        match self.form {
            FrontForm::Radical => self.discriminant(t).sqrt(),
            _ => (self.rho0 - self.left.rho * br.d_u * t).max(0.0),
        }
    }

    /// `a t + rho0 b`, the numerator of `d w_rho / dt` in the radical form.
    fn weight_slope_numerator(&self, t: f64) -> f64 {
        let br = &self.brackets;
        if self.touch.is_some() {
            let sa = br.a.sqrt();
            return sa * (sa * t - self.rho0);
        }
        br.a * t + self.rho0 * br.b
    }

    /// Front velocity `x'(t)`, the atom velocity.
    pub fn velocity(&self, t: f64) -> f64 {
        if let Some(s) = self.speed {
            return s;
        }
        let br = &self.brackets;
        let (l, rho0, u0) = (self.left, self.rho0, self.u0);
        match self.form {
            FrontForm::Rational => {
                let du = br.d_u;
                let du2 = du * (l.u + self.right.u);
                let den = l.rho * du * t - rho0;
                (l.rho * l.rho * du * du2 * t * t - 2.0 * rho0 * l.rho * du2 * t + 2.0 * rho0 * rho0 * u0)
                    / (2.0 * den * den)
            }
            _ => {
                let w = self.mass_weight(t);
                let num = self.weight_slope_numerator(t);
                if w == 0.0 {
                    if let Some(tt) = self.touch {
                        let q = if t >= tt { br.a.sqrt() } else { -br.a.sqrt() };
                        return (br.d_m + q) / br.d_rho;
                    }
                    return (br.d_m * w + num) / br.d_rho / 0.0;
                }
                let q = num / w;
                if q * br.d_m >= 0.0 {
                    (br.d_m + q) / br.d_rho
                } else {
                    let n = -br.d_flux * (br.a * t * t + 2.0 * rho0 * br.b * t)
                        + rho0 * rho0 * u0 * (br.d_rho * u0 - 2.0 * br.d_m);
                    n / (w * w * (q - br.d_m))
                }
            }
        }
    }

    /// Momentum weight `w_m = w_rho x'`.
    pub fn momentum_weight(&self, t: f64) -> f64 {
        if self.form == FrontForm::Radical {
            let br = &self.brackets;
            if self.touch.is_some() && self.mass_weight(t) == 0.0 {
                return 0.0;
            }
            return (br.d_m * self.mass_weight(t) + self.weight_slope_numerator(t)) / br.d_rho;
        }
        self.mass_weight(t) * self.velocity(t)
    }

    /// Momentum-flux weight `w_n = w_m x'`.
    pub fn energy_weight(&self, t: f64) -> f64 {
        self.momentum_weight(t) * self.velocity(t)
    }

    /// Pressure weight, identically zero.
    pub fn pressure_weight(&self, _t: f64) -> f64 {
        0.0
    }
}

/// Side of the over-compressing condition `u_l >= x' >= u_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `u_l >= x'` fails.
    Left,
    /// `x' >= u_r` fails.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub t: f64,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntropyMethod {
    ClosedForm { item: Option<u8> },
    Numerical,
}

/// Time interval on which the over-compressing entropy condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyInterval {
    /// `None` means the condition holds for all time.
    pub valid_until: Option<f64>,
    pub witness: Option<Witness>,
    pub method: EntropyMethod,
}

impl EntropyInterval {
    fn forever(item: u8) -> Self {
        EntropyInterval {
            valid_until: None,
            witness: None,
            method: EntropyMethod::ClosedForm { item: Some(item) },
        }
    }

    fn at(t: f64, side: Side, method: EntropyMethod) -> Self {
        EntropyInterval { valid_until: Some(t), witness: Some(Witness { t, side }), method }
    }
}

fn ge_tol(x: f64, y: f64) -> bool {
    x >= y - tol::ZERO_REL * x.abs().max(y.abs()).max(1.0)
}

/// Largest `T` such that `u1 >= x'(t) >= u2` on `[0, T)`.
pub fn entropy_interval(law: &GasLaw, path: &DeltaShockPath, data: RiemannData) -> Result<EntropyInterval> {
    let _ = law;
    data.validate()?;
    let br = path.brackets;
    let (u1, u2) = (data.left.u, data.right.u);
    let (r1, r2) = (data.left.rho, data.right.rho);
    let du2 = br.d_u * br.d_u;
    let side_at = |t: f64| if path.velocity(t) > u1 { Side::Left } else { Side::Right };

    if path.rho0 == 0.0 {
        let item = if br.d_rho == 0.0 && br.d_u < 0.0 {
            Some(1)
        } else if br.d_rho > 0.0 && br.d_u <= 0.0 && ge_tol(br.a, r1 * r1 * du2) {
            Some(2)
        } else if br.d_rho < 0.0 && br.d_u <= 0.0 && ge_tol(br.a, r2 * r2 * du2) {
            Some(3)
        } else {
            None
        };
        return Ok(match item {
            Some(i) => EntropyInterval::forever(i),
            None => EntropyInterval::at(0.0, side_at(0.0), EntropyMethod::ClosedForm { item: None }),
        });
    }

    let u0 = data.u0;
    if !ge_tol(u1, u0) {
        return Ok(EntropyInterval::at(0.0, Side::Left, EntropyMethod::ClosedForm { item: None }));
    }
    if !ge_tol(u0, u2) {
        return Ok(EntropyInterval::at(0.0, Side::Right, EntropyMethod::ClosedForm { item: None }));
    }
    if br.d_rho == 0.0 {
        return Ok(EntropyInterval::forever(4));
    }
    let (k, item_forever, item_until, side) = if br.d_rho > 0.0 {
        (r1 * br.d_u.abs(), 5, 7, Side::Right)
    } else {
        (r2 * br.d_u.abs(), 6, 8, Side::Left)
    };
    let a = br.a;
    let b = br.b;
    if a > 0.0 && b >= -a.sqrt() {
        if ge_tol(a, k * k) {
            return Ok(EntropyInterval::forever(item_forever));
        }
        let rr = k * ((b * b - a) / (k * k - a)).max(0.0).sqrt();
        let t = if b + rr > 0.0 {
            (path.rho0 * (b * b - k * k) / ((k * k - a) * (b + rr))).max(0.0)
        } else {
            0.0
        };
        return Ok(EntropyInterval::at(t, side, EntropyMethod::ClosedForm { item: Some(item_until) }));
    }
    numerical_entropy(path, u1, u2)
}

fn numerical_entropy(path: &DeltaShockPath, u1: f64, u2: f64) -> Result<EntropyInterval> {
    let gl = |t: f64| u1 - path.velocity(t);
    let gr = |t: f64| path.velocity(t) - u2;
    let grid = match path.lifespan {
        Some(ts) => lifespan_grid(ts, 10_000),
        None => {
            let tau = time_scale(path);
            let mut g = vec![0.0];
            g.extend((0..10_000).map(|i| tau * 10f64.powf(-6.0 + 12.0 * i as f64 / 9_999.0)));
            g
        }
    };
    if let Some((t, side)) = first_violation(&grid, gl, gr)? {
        return Ok(EntropyInterval::at(t, side, EntropyMethod::Numerical));
    }
    if let Some(ts) = path.lifespan {
        return Ok(EntropyInterval {
            valid_until: Some(ts),
            witness: None,
            method: EntropyMethod::Numerical,
        });
    }
    Ok(EntropyInterval { valid_until: None, witness: None, method: EntropyMethod::Numerical })
}

/// Characteristic time of a path with a point mass.
pub(crate) fn time_scale(path: &DeltaShockPath) -> f64 {
    let br = &path.brackets;
    let rate = br.b.abs().max(br.a.abs().sqrt()).max(path.left.rho * br.d_u.abs()).max(br.d_m.abs());
    if path.rho0 > 0.0 && rate > 0.0 {
        path.rho0 / rate
    } else {
        1.0
    }
}

/// Uniform grid on `[0, ts)` merged with a grid clustering at `ts`.
pub(crate) fn lifespan_grid(ts: f64, n: usize) -> Vec<f64> {
    let half = n / 2;
    let mut g: Vec<f64> = (0..half).map(|i| ts * i as f64 / half as f64).collect();
    g.extend((1..=n - half).map(|i| ts * (1.0 - 10f64.powf(-12.0 * i as f64 / (n - half) as f64))));
    g.sort_by(|a, b| a.total_cmp(b));
    g.dedup();
    g.retain(|&t| t < ts);
    g
}

/// First time on the sorted `grid` where `gl` or `gr` turns negative, refined by bisection.
pub(crate) fn first_violation<L, R>(grid: &[f64], gl: L, gr: R) -> Result<Option<(f64, Side)>>
where
    L: Fn(f64) -> f64,
    R: Fn(f64) -> f64,
{
    let neg = |v: f64| v < -tol::ZERO_REL * v.abs().max(1.0);
    if let Some(&t0) = grid.first() {
        if neg(gl(t0)) {
            return Ok(Some((t0, Side::Left)));
        }
        if neg(gr(t0)) {
            return Ok(Some((t0, Side::Right)));
        }
    }
    for w in grid.windows(2) {
        let (ta, tb) = (w[0], w[1]);
        let fl = neg(gl(tb));
        let fr = neg(gr(tb));
        if !fl && !fr {
            continue;
        }
        let mut best: Option<(f64, Side)> = None;
        for (fails, side) in [(fl, Side::Left), (fr, Side::Right)] {
            if !fails {
                continue;
            }
            let g: &dyn Fn(f64) -> f64 = if side == Side::Left { &gl } else { &gr };
            let t = roots::bisect(g, ta, tb, 1e-15).unwrap_or(tb);
            if best.map_or(true, |(bt, _)| t < bt) {
                best = Some((t, side));
            }
        }
        return Ok(best);
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convexity {
    Convex,
    Concave,
    Straight,
}

/// Sign of `x''` for entropy-satisfying data.
pub fn convexity(path: &DeltaShockPath, data: RiemannData) -> Result<Convexity> {
    if path.rho0 == 0.0 {
        return Ok(Convexity::Straight);
    }
    let (u1, u2, u0) = (data.left.u, data.right.u, data.u0);
    if !(ge_tol(u1, u0) && ge_tol(u0, u2)) {
        return Err(Error::argument(format!(
            "convexity requires u2 <= u0 <= u1, got u2 = {u2}, u0 = {u0}, u1 = {u1}"
        )));
    }
    let br = &path.brackets;
    let (value, scale) = if br.d_rho == 0.0 {
        (0.5 * (u1 + u2) - u0, u1.abs() + u2.abs() + u0.abs())
    } else {
        let bb = br.b * br.b;
        ((br.a - bb) / br.d_rho, (br.a.abs() + bb) / br.d_rho.abs())
    };
    Ok(if tol::is_zero(value, scale) || path.degenerate {
        Convexity::Straight
    } else if value > 0.0 {
        Convexity::Convex
    } else {
        Convexity::Concave
    })
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

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn symmetric_collision() {
        let p = construct(&g2(), RiemannData::new(st(1.0, 1.0), st(-1.0, 1.0))).unwrap();
        assert_eq!(p.case_row(), CaseRow::MasslessEqualDensity);
        for t in [0.0, 0.5, 3.0] {
            assert_eq!(p.position(t), 0.0);
            assert_eq!(p.mass_weight(t), 2.0 * t);
        }
        assert_eq!(p.lifespan(), None);
    }

    #[test]
    fn unequal_density_massless() {
        let p = construct(&g2(), RiemannData::new(st(2.0, 1.0), st(-2.0, 4.0))).unwrap();
        let s = (-10.0 + 19f64.sqrt()) / 3.0;
        assert!(close(p.velocity(1.0), s, 1e-14));
        assert!(close(p.position(2.0), 2.0 * s, 1e-14));
        assert!(close(p.mass_weight(2.0), 2.0 * 19f64.sqrt(), 1e-14));
    }

    #[test]
    fn diverging_equal_density_blows_up() {
        let d = RiemannData::singular(st(-1.0, 1.0), st(1.0, 1.0), 1.0, 0.5);
        let p = construct(&g2(), d).unwrap();
        assert_eq!(p.case_row(), CaseRow::EqualDensityDiverging);
        assert_eq!(p.lifespan(), Some(0.5));
        assert_eq!(p.extinction(), Extinction::BlowsUpAt { t: 0.5, direction: 1.0 });
        assert!(!p.lifespan_closed());
        for t in [0.1, 0.3, 0.45] {
            assert!(close(p.position(t), -t / (2.0 * (2.0 * t - 1.0)), 1e-14));
            assert!(close(p.mass_weight(t), 1.0 - 2.0 * t, 1e-14));
        }
        assert!(p.position(0.5 - 1e-9) > 1e7);
    }

    #[test]
    fn degenerate_mean_velocity_stays_finite() {
        let d = RiemannData::singular(st(-1.0, 1.0), st(3.0, 1.0), 1.0, 1.0);
        let p = construct(&g2(), d).unwrap();
        assert!(p.is_degenerate());
        assert_eq!(p.extinction(), Extinction::WeightVanishesAt { t: 0.25 });
        assert!(close(p.position(0.25), 0.25, 1e-15));
    }

    #[test]
    fn negative_a_has_no_massless_delta() {
        let e = construct(&g2(), RiemannData::new(st(0.0, 1.0), st(0.0, 4.0))).unwrap_err();
        assert_eq!(e, Error::NoDeltaShock(NoDeltaShock::ANegative { a: -45.0 }));
        let e = construct(&g2(), RiemannData::new(st(0.0, 1.0), st(1.0, 1.0))).unwrap_err();
        assert_eq!(e, Error::NoDeltaShock(NoDeltaShock::UJumpPositive));
        let e = construct(&g2(), RiemannData::new(st(0.0, 1.0), st(0.0, 1.0))).unwrap_err();
        assert_eq!(e, Error::NoDeltaShock(NoDeltaShock::DegenerateConstant));
    }

    #[test]
    fn draining_weight_vanishes_exactly() {
        let d = RiemannData::singular(st(0.0, 1.0), st(0.0, 4.0), 1.0, 0.0);
        let p = construct(&g2(), d).unwrap();
        assert_eq!(p.case_row(), CaseRow::NegativeARiseFall);
        let ts = p.lifespan().unwrap();
        assert!(close(ts, 45f64.sqrt() / 45.0, 1e-15));
        assert_eq!(p.mass_weight(ts), 0.0);
        assert!(p.position(ts).is_finite());
        assert!(p.velocity(ts * (1.0 - 1e-12)).abs() > 1e4);
    }

    #[test]
    fn entropy_examples() {
        let g = g2();
        let d = RiemannData::new(st(1.0, 1.0), st(-1.0, 1.0));
        let p = construct(&g, d).unwrap();
        assert_eq!(entropy_interval(&g, &p, d).unwrap().valid_until, None);

        let d = RiemannData::new(st(2.0, 1.0), st(-2.0, 4.0));
        let p = construct(&g, d).unwrap();
        let e = entropy_interval(&g, &p, d).unwrap();
        assert_eq!(e.valid_until, None);
        assert_eq!(e.method, EntropyMethod::ClosedForm { item: Some(2) });

        let d = RiemannData::new(st(0.0, 1.0), st(-(2f64.sqrt()), 2.0));
        let p = construct(&g, d).unwrap();
        let e = entropy_interval(&g, &p, d).unwrap();
        assert_eq!(e.valid_until, Some(0.0));
        assert_eq!(e.witness.unwrap().side, Side::Right);
    }

    #[test]
    fn convexity_examples() {
        let g = g2();
        let l = st(1.0, 1.0);
        let r = st(-1.0, 1.0);
        let d = RiemannData::singular(l, r, 1.0, -0.5);
        assert_eq!(convexity(&construct(&g, d).unwrap(), d).unwrap(), Convexity::Convex);
        let d = RiemannData::singular(l, r, 1.0, 0.0);
        assert_eq!(convexity(&construct(&g, d).unwrap(), d).unwrap(), Convexity::Straight);
        let d = RiemannData::new(l, r);
        assert_eq!(convexity(&construct(&g, d).unwrap(), d).unwrap(), Convexity::Straight);
        let d = RiemannData::singular(l, r, 1.0, 2.0);
        assert!(convexity(&construct(&g, d).unwrap(), d).is_err());
    }
}
