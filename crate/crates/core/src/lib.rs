//! Exact Riemann solvers for the isentropic Euler equations with pressure
//! `p = rho^gamma`, covering classical waves and delta shocks carrying a
//! point mass, plus numerical verifiers for both.

pub mod classical;
pub mod classify;
pub mod curves;
pub mod delta;
pub mod error;
pub mod gas;
pub mod measure;
pub mod problem;
pub mod roots;
pub mod tol;
pub mod verify;

pub use classical::{sample_classical, solve_classical, ClassicalSolution, ClassicalWave, Middle, Pattern, WaveKind};
pub use classify::{brackets, classify, delta_existence, Brackets, Entropic, ExistenceReport, RegionLabel};
pub use curves::{eval_curve, sample_curve, CurveId, CurvePoint};
pub use delta::{construct, convexity, entropy_interval, CaseRow, Convexity, DeltaShockPath, EntropyInterval};
pub use error::{Error, Result};
pub use gas::{Family, GasLaw, GasState};
pub use problem::RiemannData;
pub use measure::{
    sample_solution, solve_measure, solve_measure_with, solve_singular, Atom, IntermediatePick, MeasureOptions,
    MeasureSolution, Piece, PlanKind, SampledProfile, SolutionPlan,
};
pub use verify::{
    classical_oracle, curve_order_checks, entropy_scan, grh_residual, weak_residual, CurveLemma, LemmaCheck,
    ResidualReport, TestBump,
};
