//! Reference integrator: classical RK4 on `(x, x')` with the delayed value
//! taken from φ on the first interval and from cubic Hermite interpolation
//! of the stored march afterwards.
//!
//! The step divides τ, so every knot is a grid point and the delayed stage
//! times `t_n + c·h − τ` land on stored samples except at `c = 1/2`.
//! This module must not depend on the analytic construction.

use crate::cauchy::Problem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub step: f64,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

impl Trajectory {
    /// Cubic Hermite interpolation between stored samples.
    pub fn sample(&self, t: f64) -> Result<f64> {
        let end = *self.times.last().unwrap();
        if !(0.0..=end).contains(&t) {
            return Err(Error::OutOfHorizon { t, end });
        }
        let n = self.times.len() - 1;
        let i = ((t / self.step).floor() as usize).min(n.saturating_sub(1));
        let h = self.times[i + 1] - self.times[i];
        let u = (t - self.times[i]) / h;
        Ok(hermite(
            self.values[i],
            self.derivatives[i],
            self.values[i + 1],
            self.derivatives[i + 1],
            h,
            u,
        ))
    }
}

fn hermite(x0: f64, v0: f64, x1: f64, v1: f64, h: f64, u: f64) -> f64 {
    let u2 = u * u;
    let u3 = u2 * u;
    (2.0 * u3 - 3.0 * u2 + 1.0) * x0
        + (u3 - 2.0 * u2 + u) * h * v0
        + (-2.0 * u3 + 3.0 * u2) * x1
        + (u3 - u2) * h * v1
}

/// Marches `x'' = f(t) − ω₁²x − ω₂²x(t−τ)` from `t = 0` to `Kτ`.
///
/// `h` is rounded down to `τ / ceil(τ/h)`; it must not exceed `τ/10`.
pub fn rk_reference(problem: &Problem, h: f64) -> Result<Trajectory> {
    let tau = problem.tau;
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tau must be positive, got {tau}"
        )));
    }
    if !(h > 0.0 && h <= tau / 10.0) {
        return Err(Error::InvalidParameter(format!(
            "step {h} must be in (0, tau/10 = {}]",
            tau / 10.0
        )));
    }
    let per_interval = (tau / h).ceil() as usize;
    let step = tau / per_interval as f64;
    let total = per_interval * problem.intervals;

    let phi = &problem.phi;
    let dphi = problem.phi.differentiate();
    let w1sq = problem.omega1 * problem.omega1;
    let w2sq = problem.omega2 * problem.omega2;

    let mut times = Vec::with_capacity(total + 1);
    let mut xs = Vec::with_capacity(total + 1);
    let mut vs = Vec::with_capacity(total + 1);
    times.push(0.0);
    xs.push(phi.eval(0.0)?);
    vs.push(dphi.eval(0.0)?);

    for n in 0..total {
        let t = n as f64 * step;
        // delayed x at t + c·h − τ for c ∈ {0, 1/2, 1}
        let delayed = |c: f64| -> Result<f64> {
            let back = n as isize - per_interval as isize;
            if back < 0 {
                return Ok(phi.eval(t + c * step - tau)?);
            }
            let j = back as usize;
            Ok(if c == 0.0 {
                xs[j]
            } else if c == 1.0 {
                xs[j + 1]
            } else {
                hermite(xs[j], vs[j], xs[j + 1], vs[j + 1], step, c)
            })
        };
        let d0 = delayed(0.0)?;
        let dm = delayed(0.5)?;
        let d1 = delayed(1.0)?;
        let accel = |tt: f64, x: f64, d: f64| -> Result<f64> {
            Ok(problem.f.eval(tt)? - w1sq * x - w2sq * d)
        };

        let (x, v) = (xs[n], vs[n]);
        let k1x = v;
        let k1v = accel(t, x, d0)?;
        let k2x = v + 0.5 * step * k1v;
        let k2v = accel(t + 0.5 * step, x + 0.5 * step * k1x, dm)?;
        let k3x = v + 0.5 * step * k2v;
        let k3v = accel(t + 0.5 * step, x + 0.5 * step * k2x, dm)?;
        let k4x = v + step * k3v;
        let k4v = accel(t + step, x + step * k3x, d1)?;

        xs.push(x + step / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x));
        vs.push(v + step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v));
        times.push((n + 1) as f64 * step);
    }

    Ok(Trajectory {
        step,
        times,
        values: xs,
        derivatives: vs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_oscillator_converges() {
        let p = Problem::new(1.0, 0.0, 1.0, 5, "1", "0").unwrap();
        let traj = rk_reference(&p, 1e-3).unwrap();
        let err = traj
            .times
            .iter()
            .zip(&traj.values)
            .map(|(t, x)| (x - t.cos()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
        assert_eq!(traj.times.len(), 5001);
    }

    #[test]
    fn step_is_rounded_to_divide_tau() {
        let p = Problem::new(1.0, 0.5, 0.7, 2, "1", "0").unwrap();
        let traj = rk_reference(&p, 0.03).unwrap();
        assert!((traj.step - 0.7 / 24.0).abs() < 1e-15);
        assert!((traj.times.last().unwrap() - 1.4).abs() < 1e-12);
    }

    #[test]
    fn rejects_large_steps() {
        let p = Problem::new(1.0, 0.5, 1.0, 2, "1", "0").unwrap();
        assert!(rk_reference(&p, 0.2).is_err());
        assert!(rk_reference(&p, 0.0).is_err());
        assert!(rk_reference(&p, 0.1).is_ok());
    }

    #[test]
    fn fourth_order_self_convergence() {
        let p = Problem::new(0.7, 1.2, 1.0, 3, "cos(t)", "sin(2*t)").unwrap();
        let coarse = rk_reference(&p, 0.02).unwrap();
        let mid = rk_reference(&p, 0.01).unwrap();
        let fine = rk_reference(&p, 0.005).unwrap();
        let diff = |a: &Trajectory, b: &Trajectory| {
            a.times
                .iter()
                .map(|&t| (a.sample(t).unwrap() - b.sample(t).unwrap()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = diff(&coarse, &mid) / diff(&mid, &fine);
        assert!(ratio > 12.0 && ratio < 20.0, "ratio {ratio}");
    }

    #[test]
    fn sample_interpolates_stored_points() {
        let p = Problem::new(1.0, 0.0, 1.0, 1, "1", "0").unwrap();
        let traj = rk_reference(&p, 0.01).unwrap();
        assert!((traj.sample(0.5).unwrap() - traj.values[50]).abs() < 1e-15);
        assert!((traj.sample(0.505).unwrap() - 0.505f64.cos()).abs() < 1e-9);
        assert!(traj.sample(1.01).is_err());
    }

    #[test]
    fn independent_of_analytic_path() {
        let src = include_str!("rk.rs");
        let code = src.split("#[cfg(test)]").next().unwrap();
        for forbidden in [
            "trigpoly",
            "fundamental",
            "TrigPoly",
            "PiecewiseSolution",
            "Solution",
        ] {
            assert!(!code.contains(forbidden), "rk.rs references {forbidden}");
        }
    }
}
