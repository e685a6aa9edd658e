//! End-to-end verification of an assembled solution: residual gate plus
//! agreement with the Runge–Kutta reference.

use crate::cauchy::{Problem, Solution};
use crate::error::Result;

use super::{compare, interior_grid, residual, rk_reference, KnotJump};

/// Default residual threshold for assembled solutions (quadrature-limited).
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;
/// Default agreement threshold against the RK4 reference.
pub const RK_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_RK_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub max_residual: f64,
    pub max_vs_rk: f64,
    pub knot_jumps: Vec<KnotJump>,
    pub residual_tolerance: f64,
    pub rk_tolerance: f64,
    pub pass: bool,
}

pub fn verify(solution: &Solution, rk_step: f64) -> Result<VerifyReport> {
    let problem = solution.problem();
    let res = residual(|t| solution.eval_all(t), problem, 20)?;
    let traj = rk_reference(problem, rk_step)?;
    let grid = interior_grid(problem.tau, problem.intervals, 50);
    let max_vs_rk = compare(|t| solution.eval(t), |t| traj.sample(t), &grid)?;
    let pass = res.max_residual < RESIDUAL_TOLERANCE && max_vs_rk < RK_TOLERANCE;
    Ok(VerifyReport {
        max_residual: res.max_residual,
        max_vs_rk,
        knot_jumps: res.knot_jumps,
        residual_tolerance: RESIDUAL_TOLERANCE,
        rk_tolerance: RK_TOLERANCE,
        pass,
    })
}

/// Five problems covering the pure-delay and delay-free limits, mixed
/// frequencies, resonant forcing and a non-trivial history.
pub fn canned_problems() -> Vec<(&'static str, Problem)> {
    let p = |w1, w2, tau, k, phi, f| Problem::new(w1, w2, tau, k, phi, f).unwrap();
    vec![
        ("pure-delay", p(0.0, 1.0, 1.0, 5, "1", "0")),
        ("delay-free", p(1.5, 0.0, 1.0, 5, "cos(t)", "0")),
        ("mixed", p(1.0, 0.8, 0.7, 8, "1 + t", "0")),
        ("resonant-forcing", p(2.0, 1.0, 1.0, 5, "0", "cos(2*t)")),
        (
            "history-and-forcing",
            p(1.3, 0.6, 1.0, 5, "sin(t)", "cos(2*t)"),
        ),
    ]
}
