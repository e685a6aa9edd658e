//! Independent checks of a computed solution: the pointwise residual of the
//! delay equation, measured jumps at the knots `kτ`, and a Runge–Kutta
//! reference march ([`rk`]) that shares no code with the analytic path.

pub mod rk;
pub mod verify;

use crate::cauchy::Problem;
use crate::error::Result;

pub use rk::{rk_reference, Trajectory};
pub use verify::{canned_problems, verify, VerifyReport};

/// Pass threshold when the evaluator supplies exact `x''`.
pub const EXACT_TOLERANCE: f64 = 1e-8;
/// Pass threshold when `x''` comes from central differences.
pub const FD_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Exact,
    FiniteDifference,
}

/// Right value minus left limit of x, x', x'' at a knot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnotJump {
    pub t: f64,
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub mode: DerivativeMode,
    pub grid: Vec<f64>,
    /// `|x'' + ω₁²x(t) + ω₂²x(t−τ) − f(t)|` at each grid point.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// One entry per knot `kτ`, k = 0..K−1.
    pub knot_jumps: Vec<KnotJump>,
}

impl ResidualReport {
    /// Threshold matching how `x''` was obtained.
    pub fn tolerance(&self) -> f64 {
        match self.mode {
            DerivativeMode::Exact => EXACT_TOLERANCE,
            DerivativeMode::FiniteDifference => FD_TOLERANCE,
        }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_residual < tolerance
    }
}

/// Grid points strictly inside each interval `((k−1)τ, kτ)`, k = 1..=K.
pub fn interior_grid(tau: f64, intervals: usize, points_per_interval: usize) -> Vec<f64> {
    let n = points_per_interval.max(3);
    (1..=intervals)
        .flat_map(|k| (0..n).map(move |i| (k - 1) as f64 * tau + (i as f64 + 0.5) * tau / n as f64))
        .collect()
}

/// Residual of `evaluator` (returning `[x, x', x'']`) against the problem's
/// equation, using the evaluator itself for the delayed term.
pub fn residual<E>(
    evaluator: E,
    problem: &Problem,
    points_per_interval: usize,
) -> Result<ResidualReport>
where
    E: Fn(f64) -> Result<[f64; 3]>,
{
    let w1sq = problem.omega1 * problem.omega1;
    let w2sq = problem.omega2 * problem.omega2;
    let grid = interior_grid(problem.tau, problem.intervals, points_per_interval);
    let residuals = grid
        .iter()
        .map(|&t| {
            let [x, _, xpp] = evaluator(t)?;
            let delayed = evaluator(t - problem.tau)?[0];
            Ok((xpp + w1sq * x + w2sq * delayed - problem.f.eval(t)?).abs())
        })
        .collect::<Result<Vec<f64>>>()?;

    let delta = 1e-10 * problem.tau;
    let knot_jumps = (0..problem.intervals)
        .map(|k| {
            let t = k as f64 * problem.tau;
            let (l, r) = (evaluator(t - delta)?, evaluator(t + delta)?);
            Ok(KnotJump {
                t,
                value: r[0] - l[0],
                first: r[1] - l[1],
                second: r[2] - l[2],
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(report(DerivativeMode::Exact, grid, residuals, knot_jumps))
}

/// As [`residual`] for an evaluator that only returns `x`: `x''` by central
/// differences with `h = 1e−5·τ`, knot jumps by one-sided stencils.
pub fn residual_fd<E>(
    evaluator: E,
    problem: &Problem,
    points_per_interval: usize,
) -> Result<ResidualReport>
where
    E: Fn(f64) -> Result<f64>,
{
    let w1sq = problem.omega1 * problem.omega1;
    let w2sq = problem.omega2 * problem.omega2;
    let h = 1e-5 * problem.tau;
    let grid = interior_grid(problem.tau, problem.intervals, points_per_interval);
    let residuals = grid
        .iter()
        .map(|&t| {
            let x = evaluator(t)?;
            let xpp = (evaluator(t + h)? - 2.0 * x + evaluator(t - h)?) / (h * h);
            let delayed = evaluator(t - problem.tau)?;
            Ok((xpp + w1sq * x + w2sq * delayed - problem.f.eval(t)?).abs())
        })
        .collect::<Result<Vec<f64>>>()?;

    // one-sided stencils; step large enough that x'' round-off stays small
    let hs = 1e-3 * problem.tau;
    let one_sided = |t: f64, dir: f64| -> Result<[f64; 3]> {
        let f: Vec<f64> = (0..4)
            .map(|i| evaluator(t + dir * i as f64 * hs))
            .collect::<Result<_>>()?;
        let d1 = dir * (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * hs);
        let d2 = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (hs * hs);
        Ok([f[0], d1, d2])
    };
    let knot_jumps = (0..problem.intervals)
        .map(|k| {
            let t = k as f64 * problem.tau;
            let r = one_sided(t, 1.0)?;
            // left limit: the stencil's first sample sits on the knot, so
            // start it one ulp-scale step to the left
            let l = one_sided(t - 1e-12 * problem.tau.max(t.abs()), -1.0)?;
            Ok(KnotJump {
                t,
                value: r[0] - l[0],
                first: r[1] - l[1],
                second: r[2] - l[2],
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(report(
        DerivativeMode::FiniteDifference,
        grid,
        residuals,
        knot_jumps,
    ))
}

fn report(
    mode: DerivativeMode,
    grid: Vec<f64>,
    residuals: Vec<f64>,
    knot_jumps: Vec<KnotJump>,
) -> ResidualReport {
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    ResidualReport {
        mode,
        grid,
        residuals,
        max_residual,
        knot_jumps,
    }
}

/// `max |a(t) − b(t)|` over the grid.
pub fn compare<A, B>(a: A, b: B, grid: &[f64]) -> Result<f64>
where
    A: Fn(f64) -> Result<f64>,
    B: Fn(f64) -> Result<f64>,
{
    grid.iter()
        .try_fold(0.0_f64, |m, &t| Ok(m.max((a(t)? - b(t)?).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundamental::{build_fundamental, delay_cosine, Kind};

    #[test]
    fn interior_grid_avoids_knots() {
        let g = interior_grid(0.5, 3, 4);
        assert_eq!(g.len(), 12);
        for t in g {
            let frac = t / 0.5 - (t / 0.5).floor();
            assert!(frac > 0.1 && frac < 0.9);
        }
    }

    #[test]
    fn exact_first_fundamental_has_tiny_residual() {
        let (w1, w2, tau) = (1.3, 0.9, 0.7);
        let x1 = build_fundamental(Kind::X1, w1, w2, tau, 8).unwrap();
        let p = Problem::new(w1, w2, tau, 8, "1", "0").unwrap();
        let r = residual(|t| x1.eval_all(t), &p, 25).unwrap();
        assert!(r.max_residual < 1e-8, "{}", r.max_residual);
        assert_eq!(r.residuals.len(), r.grid.len());
        let j0 = r.knot_jumps[0];
        assert!((j0.second + (w1 * w1 + w2 * w2)).abs() < 1e-8, "{j0:?}");
        for j in &r.knot_jumps[1..] {
            assert!(j.second.abs() < 1e-6, "{j:?}");
        }
    }

    #[test]
    fn zero_function_has_zero_residual() {
        let p = Problem::new(1.0, 2.0, 1.0, 4, "0", "0").unwrap();
        let r = residual(|_| Ok([0.0; 3]), &p, 5).unwrap();
        assert_eq!(r.max_residual, 0.0);
        let r = residual_fd(|_| Ok(0.0), &p, 5).unwrap();
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn finite_difference_mode_passes_its_own_threshold() {
        let (w, tau) = (1.1, 0.8);
        let p = Problem::new(0.0, w, tau, 4, "1", "0").unwrap();
        let r = residual_fd(|t| delay_cosine(w, tau, t), &p, 10).unwrap();
        assert!(r.passes(r.tolerance()), "{}", r.max_residual);
        assert!((r.knot_jumps[0].second + w * w).abs() < 1e-2);
        assert!(r.knot_jumps[0].value.abs() < 1e-9);
    }

    #[test]
    fn compare_examples() {
        let grid: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        assert_eq!(
            compare(|t| Ok(t.sin()), |t| Ok(t.sin()), &grid).unwrap(),
            0.0
        );
        let d = compare(Ok, |t| Ok(2.0 * t), &grid).unwrap();
        assert!((d - 2.7).abs() < 1e-12);
    }
}
