//! Cauchy problem assembly from the fundamental solutions.
//!
//! For `t > 0`
//!
//! ```text
//! x(t) = φ(−τ)·x₁(t) + φ'(−τ)·x₂(t)
//!      + ∫_{−τ}^{0} K(t−τ−s)·h(s) ds + ∫_{0}^{t} K(t−τ−s)·f(s) ds
//! ```
//!
//! With [`ForcingKernel::Impulse`] the kernel `K` is the impulse response
//! (zero value and unit slope at `−τ`, solving the oscillator on the
//! prelude) and
//! `h(s) = φ''(s) + ω₁²·(φ(s) − φ(−τ) − φ'(−τ)(s+τ))`; the ω₁² term
//! accounts for the preludes of x₁ and x₂ not solving `x'' + ω₁²x = 0`.
//! When ω₁ = 0 this is exactly `K = x₂`, `h = φ''`.
//!
//! [`ForcingKernel::X2`] and [`ForcingKernel::X1`] use `h = φ''` with kernel
//! x₂ in the history term and x₂ resp. x₁ in the forcing term. They are exact
//! only when ω₁ = 0 (X2) or never (X1), and are kept so that the residual
//! checker can show the difference.

use crate::error::{Error, Result};
use crate::expr::{parse, Expr};
use crate::fundamental::{build_fundamental, Kind, PiecewiseSolution};
use crate::quadrature::{panels, GaussLegendre, MAX_NODES, MIN_NODES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForcingKernel {
    #[default]
    Impulse,
    X2,
    X1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub omega1: f64,
    pub omega2: f64,
    pub tau: f64,
    /// Horizon in delay intervals, K.
    pub intervals: usize,
    /// History on `[−τ, 0]`.
    pub phi: Expr,
    /// Forcing on `[0, Kτ)`.
    pub f: Expr,
    pub forcing_kernel: ForcingKernel,
}

impl Problem {
    /// Parses `phi` and `f`; other parameters are checked by [`solve`].
    pub fn new(
        omega1: f64,
        omega2: f64,
        tau: f64,
        intervals: usize,
        phi: &str,
        f: &str,
    ) -> Result<Self> {
        Ok(Problem {
            omega1,
            omega2,
            tau,
            intervals,
            phi: parse(phi)?,
            f: parse(f)?,
            forcing_kernel: ForcingKernel::default(),
        })
    }

    pub fn with_kernel(mut self, kernel: ForcingKernel) -> Self {
        self.forcing_kernel = kernel;
        self
    }

    pub fn horizon(&self) -> f64 {
        self.intervals as f64 * self.tau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre order on each smooth panel.
    pub nodes_per_panel: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes_per_panel: 16,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    problem: Problem,
    x1: PiecewiseSolution,
    x2: PiecewiseSolution,
    history_kernel: PiecewiseSolution,
    forcing_kernel: PiecewiseSolution,
    quadrature: QuadratureConfig,
    rule: GaussLegendre,
    phi_d: [Expr; 3],
    f_d: [Expr; 2],
    /// φ(−τ), φ'(−τ)
    phi_start: [f64; 2],
}

pub fn solve(problem: Problem) -> Result<Solution> {
    solve_with(problem, QuadratureConfig::default())
}

pub fn solve_with(problem: Problem, quadrature: QuadratureConfig) -> Result<Solution> {
    if !(MIN_NODES..=MAX_NODES).contains(&quadrature.nodes_per_panel) {
        return Err(Error::InvalidParameter(format!(
            "nodes per panel must be in [{MIN_NODES}, {MAX_NODES}], got {}",
            quadrature.nodes_per_panel
        )));
    }
    let build = |kind| {
        build_fundamental(
            kind,
            problem.omega1,
            problem.omega2,
            problem.tau,
            problem.intervals,
        )
    };
    let x1 = build(Kind::X1)?;
    let x2 = build(Kind::X2)?;
    let (history_kernel, forcing_kernel) = match problem.forcing_kernel {
        ForcingKernel::Impulse if problem.omega1 == 0.0 => (x2.clone(), x2.clone()),
        ForcingKernel::Impulse => {
            let g = build(Kind::Impulse)?;
            (g.clone(), g)
        }
        ForcingKernel::X2 => (x2.clone(), x2.clone()),
        ForcingKernel::X1 => (x2.clone(), x1.clone()),
    };

    let phi1 = problem.phi.differentiate();
    let phi2 = phi1.differentiate();
    let f1 = problem.f.differentiate();
    let phi_start = [problem.phi.eval(-problem.tau)?, phi1.eval(-problem.tau)?];
    Ok(Solution {
        phi_start,
        phi_d: [problem.phi.clone(), phi1, phi2],
        f_d: [problem.f.clone(), f1],
        rule: GaussLegendre::new(quadrature.nodes_per_panel)?,
        problem,
        x1,
        x2,
        history_kernel,
        forcing_kernel,
        quadrature,
    })
}

impl Solution {
    pub fn problem(&self) -> &Problem {
        &self.problem
    }
    pub fn x1(&self) -> &PiecewiseSolution {
        &self.x1
    }
    pub fn x2(&self) -> &PiecewiseSolution {
        &self.x2
    }
    pub fn quadrature(&self) -> QuadratureConfig {
        self.quadrature
    }

    /// `x(t)` on `[−τ, Kτ)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.eval_all(t)?[0])
    }

    /// `[x, x', x'']` at `t`, derivatives taken exactly under the integrals.
    pub fn eval_all(&self, t: f64) -> Result<[f64; 3]> {
        let tau = self.problem.tau;
        let end = self.problem.horizon();
        if t.is_nan() || t < -tau || t >= end {
            return Err(Error::OutOfHorizon { t, end });
        }
        if t <= 0.0 {
            return Ok([
                self.phi_d[0].eval(t)?,
                self.phi_d[1].eval(t)?,
                self.phi_d[2].eval(t)?,
            ]);
        }
        let [a, b] = self.phi_start;
        let x1 = self.x1.eval_all(t)?;
        let x2 = self.x2.eval_all(t)?;
        let hist = self.history_terms(t, &[])?;
        let forc = self.forcing_terms(t, &[])?;
        Ok(std::array::from_fn(|i| {
            a * x1[i] + b * x2[i] + hist[i] + forc[i]
        }))
    }

    /// The history term `∫_{−τ}^{0} K(t−τ−s)·h(s) ds` at `t > 0`.
    pub fn history_integral(&self, t: f64) -> Result<f64> {
        Ok(self.history_terms(t, &[])?[0])
    }

    /// The forcing term `∫_{0}^{t} K(t−τ−s)·f(s) ds` at `t > 0`.
    pub fn forcing_integral(&self, t: f64) -> Result<f64> {
        Ok(self.forcing_terms(t, &[])?[0])
    }

    fn history_density(&self, s: f64) -> Result<f64> {
        let phi2 = self.phi_d[2].eval(s)?;
        let w1 = self.problem.omega1;
        if self.problem.forcing_kernel != ForcingKernel::Impulse || w1 == 0.0 {
            return Ok(phi2);
        }
        let tau = self.problem.tau;
        let [a, b] = self.phi_start;
        let rem = self.phi_d[0].eval(s)? - a - b * (s + tau);
        Ok(phi2 + w1 * w1 * rem)
    }

    fn history_terms(&self, t: f64, extra: &[f64]) -> Result<[f64; 3]> {
        let tau = self.problem.tau;
        self.convolve(&self.history_kernel, t, -tau, 0.0, extra, |s| {
            self.history_density(s)
        })
    }

    fn forcing_terms(&self, t: f64, extra: &[f64]) -> Result<[f64; 3]> {
        let mut out = self.convolve(&self.forcing_kernel, t, 0.0, t, extra, |s| {
            Ok(self.f_d[0].eval(s)?)
        })?;
        // the upper limit moves with t: boundary terms K(−τ⁺)f and K'(−τ⁺)f
        let [k0, k1, _] = self.forcing_kernel.eval_all(-self.problem.tau)?;
        if k0 != 0.0 || k1 != 0.0 {
            let ft = self.f_d[0].eval(t)?;
            out[1] += k0 * ft;
            out[2] += k1 * ft;
            if k0 != 0.0 {
                out[2] += k0 * self.f_d[1].eval(t)?;
            }
        }
        Ok(out)
    }

    /// `∫_a^b K^{(i)}(t−τ−s)·g(s) ds` for i = 0, 1, 2, split where the kernel
    /// argument crosses a knot `jτ`, j ≥ −1.
    fn convolve<G>(
        &self,
        kernel: &PiecewiseSolution,
        t: f64,
        a: f64,
        b: f64,
        extra: &[f64],
        mut g: G,
    ) -> Result<[f64; 3]>
    where
        G: FnMut(f64) -> Result<f64>,
    {
        let tau = self.problem.tau;
        let knots = (0..=self.problem.intervals + 1).map(|m| t - m as f64 * tau);
        let pts = panels(a, b, knots.chain(extra.iter().copied()));
        let mut acc = [0.0; 3];
        for w in pts.windows(2) {
            for (s, wt) in self.rule.panel(w[0], w[1]) {
                let k = kernel.eval_all(t - tau - s)?;
                let gs = g(s)?;
                for i in 0..3 {
                    acc[i] += wt * k[i] * gs;
                }
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(w1: f64, w2: f64, tau: f64, k: usize, phi: &str, f: &str) -> Solution {
        solve(Problem::new(w1, w2, tau, k, phi, f).unwrap()).unwrap()
    }

    #[test]
    fn constant_history_gives_first_fundamental() {
        let s = sol(1.3, 0.6, 0.8, 4, "1", "0");
        for i in 0..50 {
            let t = -0.8 + i as f64 * 0.07;
            let v = s.eval(t).unwrap();
            assert!((v - s.x1().eval(t, 0).unwrap()).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn linear_history_gives_second_fundamental_in_pure_delay() {
        let s = sol(0.0, 0.9, 1.0, 4, "t + 1", "0");
        for i in 0..40 {
            let t = -1.0 + i as f64 * 0.1;
            let (v, x2) = (s.eval(t).unwrap(), s.x2().eval(t, 0).unwrap());
            assert!((v - x2).abs() < 1e-13, "t={t}: {v} vs {x2}");
        }
    }

    #[test]
    fn linear_history_literal_kernel_collapses_to_x2() {
        let p = Problem::new(1.4, 0.9, 1.0, 4, "t + 1", "0").unwrap();
        let s = solve(p.with_kernel(ForcingKernel::X2)).unwrap();
        for t in [0.1, 1.5, 3.2] {
            assert!((s.eval(t).unwrap() - s.x2().eval(t, 0).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn unit_forcing_pure_delay_first_interval() {
        let s = sol(0.0, 1.0, 1.0, 2, "0", "1");
        for t in [0.1, 0.5, 0.9] {
            assert!((s.eval(t).unwrap() - t * t / 2.0).abs() < 1e-14);
        }
        assert!((s.forcing_integral(0.5).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(s.history_integral(0.5).unwrap(), 0.0);
    }

    #[test]
    fn history_region_is_phi() {
        let s = sol(1.0, 1.0, 1.0, 2, "sin(t) + t^2", "0");
        let t = -0.5;
        assert_eq!(s.eval(t).unwrap(), t.sin() + t * t);
        assert!(s.eval(-1.0001).is_err());
        assert!(s.eval(2.0).is_err());
    }

    #[test]
    fn classical_reduction() {
        let s = sol(1.0, 0.0, 1.0, 5, "1", "0");
        for i in 1..50 {
            let t = i as f64 * 0.1;
            assert!((s.eval(t).unwrap() - t.cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn impulse_kernel_corrects_history_with_natural_frequency() {
        // ω₂ = 0: the exact solution is φ(0)cos t + φ'(0)sin t = 0 for φ = s²/2
        let s = sol(1.0, 0.0, 1.0, 3, "t^2/2", "0");
        for t in [0.2, 0.7, 1.5, 2.5] {
            assert!(s.eval(t).unwrap().abs() < 1e-13, "t={t}");
        }
        let literal = solve(
            Problem::new(1.0, 0.0, 1.0, 3, "t^2/2", "0")
                .unwrap()
                .with_kernel(ForcingKernel::X2),
        )
        .unwrap();
        // literal x1/x2 history form: 1.5(1 − cos t) − t²/2 on (0, 1)
        let t: f64 = 0.7;
        let expect = 1.5 * (1.0 - t.cos()) - t * t / 2.0;
        assert!((literal.eval(t).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn history_integral_vanishes_for_linear_phi() {
        let s = sol(0.0, 2.0, 0.5, 4, "3*t - 1", "0");
        assert_eq!(s.history_integral(1.1).unwrap(), 0.0);
    }

    #[test]
    fn history_integral_near_origin() {
        // at t = 0⁺ the kernel argument covers the whole prelude [−τ, 0], where
        // x₂(u) = u + τ, so the term is ∫ −s ds = τ²/2 and x(0⁺) = φ(0) = 0
        let tau = 1.0;
        let s = sol(0.0, 1.3, tau, 2, "t^2/2", "0");
        let v = s.history_integral(1e-12).unwrap();
        assert!((v - tau * tau / 2.0).abs() < 1e-11, "{v}");
        assert!(s.eval(1e-12).unwrap().abs() < 1e-11);
    }

    #[test]
    fn history_quadrature_self_converges() {
        let p = Problem::new(0.8, 1.1, 1.0, 5, "sin(t)", "0").unwrap();
        let a = solve_with(
            p.clone(),
            QuadratureConfig {
                nodes_per_panel: 16,
            },
        )
        .unwrap();
        let b = solve_with(
            p,
            QuadratureConfig {
                nodes_per_panel: 32,
            },
        )
        .unwrap();
        for t in [0.3, 1.7, 4.2] {
            let (u, v) = (
                a.history_integral(t).unwrap(),
                b.history_integral(t).unwrap(),
            );
            assert!((u - v).abs() < 1e-10, "t={t}: {u} vs {v}");
        }
    }

    #[test]
    fn extra_split_points_do_not_change_integrals() {
        let s = sol(1.2, 0.7, 0.9, 5, "cos(2*t) + t", "exp(-t)*sin(3*t)");
        for t in [0.4, 1.3, 3.9] {
            let extra = [-0.77, -0.31, 0.05, 0.5, 1.0, 2.2, 3.3];
            let (h0, h1) = (
                s.history_terms(t, &[]).unwrap(),
                s.history_terms(t, &extra).unwrap(),
            );
            let (f0, f1) = (
                s.forcing_terms(t, &[]).unwrap(),
                s.forcing_terms(t, &extra).unwrap(),
            );
            for i in 0..3 {
                assert!((h0[i] - h1[i]).abs() < 1e-10, "history t={t} i={i}");
                assert!((f0[i] - f1[i]).abs() < 1e-10, "forcing t={t} i={i}");
            }
        }
    }

    #[test]
    fn zero_data_gives_zero() {
        let s = sol(1.5, 2.0, 0.6, 6, "0", "0");
        for i in 0..60 {
            let t = -0.6 + i as f64 * 0.07;
            assert_eq!(s.eval_all(t).unwrap(), [0.0; 3]);
        }
    }

    #[test]
    fn rejects_bad_quadrature_and_expressions() {
        let p = Problem::new(1.0, 1.0, 1.0, 2, "1", "0").unwrap();
        assert!(solve_with(p.clone(), QuadratureConfig { nodes_per_panel: 1 }).is_err());
        assert!(solve_with(
            p,
            QuadratureConfig {
                nodes_per_panel: 65
            }
        )
        .is_err());
        assert!(matches!(
            Problem::new(1.0, 1.0, 1.0, 2, "t+", "0"),
            Err(Error::Expression(_))
        ));
        let p = Problem::new(1.0, 1.0, 1.0, 2, "1/t", "0").unwrap();
        let s = solve(p).unwrap();
        assert!(matches!(s.eval(0.0), Err(Error::Expression(_))));
    }
}
