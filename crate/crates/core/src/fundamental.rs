//! Fundamental solutions of `x'' + ω₁²x(t) + ω₂²x(t−τ) = 0` built by the
//! method of steps, and the delayed cosine/sine special functions.
//!
//! On the k-th interval `[(k−1)τ, kτ)` the delayed term is the previous
//! segment, so each step is the ODE `y'' + ω₁²y = −ω₂²·x_{k−1}(t−τ)` with
//! value and slope continued from the left. Segments are kept in local time
//! `s = t − (k−1)τ`; in that variable the delayed forcing of segment k is
//! segment k−1 itself, evaluated at the same `s`.
//!
//! Each step is solved in closed form with undetermined coefficients when
//! `ω₁τ ≥ SERIES_LIMIT`, and by the Taylor recurrence
//! `a_{n+2} = −(ω₁²a_n + ω₂²b_n)/((n+1)(n+2))` otherwise.

use crate::error::{Error, Result};
use crate::trigpoly::{homogeneous_with_ic, solve_particular, Polynomial, TrigPoly};

/// Hard cap on the number of delay intervals.
pub const MAX_INTERVALS: usize = 64;
/// Beyond this many intervals the polynomial degree makes double precision
/// evaluation noticeably ill-conditioned for large t.
pub const WARN_INTERVALS: usize = 32;

/// Initial data on `[−τ, 0]`; the function is zero before `−τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `x ≡ 1`, `x' ≡ 0`.
    X1,
    /// `x ≡ t + τ`, `x' ≡ 1`.
    X2,
    /// `x = sin(ω₁(t+τ))/ω₁` (or `t + τ` when ω₁ = 0): zero value and unit
    /// slope at `−τ` and a solution of `x'' + ω₁²x = 0` on the prelude, so the
    /// shifted function is the impulse response of the delayed oscillator.
    Impulse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSolution {
    kind: Kind,
    tau: f64,
    omega1: f64,
    omega2: f64,
    /// Index 0 is the prelude on `[−τ, 0)`; index k ≥ 1 is segment k.
    /// Entry i is in local time with origin `(i−1)τ`.
    pieces: [Vec<TrigPoly>; 3],
}

fn check_frequency(name: &str, w: f64) -> Result<()> {
    if w.is_finite() && w >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and non-negative, got {w}"
        )))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "tau must be finite and positive, got {tau}"
        )))
    }
}

/// Builds x₁, x₂ or the impulse response on `[−τ, Kτ)`.
pub fn build_fundamental(
    kind: Kind,
    omega1: f64,
    omega2: f64,
    tau: f64,
    intervals: usize,
) -> Result<PiecewiseSolution> {
    check_frequency("omega1", omega1)?;
    check_frequency("omega2", omega2)?;
    check_tau(tau)?;
    if !(1..=MAX_INTERVALS).contains(&intervals) {
        return Err(Error::InvalidParameter(format!(
            "interval count must be in [1, {MAX_INTERVALS}], got {intervals}"
        )));
    }

    let series = omega1 * tau < SERIES_LIMIT;
    let mut values = Vec::with_capacity(intervals + 1);
    if series {
        let zero = Polynomial::zero();
        let prelude = match kind {
            Kind::X1 => Polynomial::constant(1.0),
            Kind::X2 => Polynomial::new(vec![0.0, 1.0]),
            Kind::Impulse => taylor_step(omega1, 0.0, tau, &zero, 0.0, 1.0),
        };
        values.push(prelude);
        for _ in 0..intervals {
            let prev = values.last().unwrap();
            let (y0, y0p) = (prev.eval(tau), prev.derivative().eval(tau));
            let seg = taylor_step(omega1, omega2, tau, prev, y0, y0p);
            values.push(seg);
        }
        let values: Vec<TrigPoly> = values.into_iter().map(TrigPoly::pure).collect();
        return Ok(assemble(kind, tau, omega1, omega2, values));
    }

    let prelude = match kind {
        Kind::X1 => TrigPoly::pure(Polynomial::constant(1.0)),
        Kind::X2 => TrigPoly::pure(Polynomial::new(vec![0.0, 1.0])),
        Kind::Impulse => TrigPoly::new(
            omega1,
            Polynomial::zero(),
            Polynomial::zero(),
            Polynomial::constant(1.0 / omega1),
        ),
    };
    let mut values = vec![prelude];
    for _ in 0..intervals {
        let prev = values.last().unwrap();
        let dprev = prev.derivative();
        let part = solve_particular(&prev.scale(-omega2 * omega2), omega1)?;
        let y0 = prev.eval(tau) - part.eval(0.0);
        let y0p = dprev.eval(tau) - part.derivative().eval(0.0);
        let seg = homogeneous_with_ic(omega1, y0, y0p, 0.0).add(&part)?;
        values.push(seg);
    }
    Ok(assemble(kind, tau, omega1, omega2, values))
}

fn assemble(
    kind: Kind,
    tau: f64,
    omega1: f64,
    omega2: f64,
    values: Vec<TrigPoly>,
) -> PiecewiseSolution {
    let first: Vec<TrigPoly> = values.iter().map(TrigPoly::derivative).collect();
    let second: Vec<TrigPoly> = first.iter().map(TrigPoly::derivative).collect();
    PiecewiseSolution {
        kind,
        tau,
        omega1,
        omega2,
        pieces: [values, first, second],
    }
}

/// Below this value of `ω₁τ` segments are built as Taylor polynomials. For
/// small `ω₁τ` the trigonometric form needs coefficients of size
/// `(ω₁τ)^(−2k)` that cancel on evaluation; the Taylor form does not, and it
/// loses only about `e^(ω₁τ)` in relative accuracy.
pub const SERIES_LIMIT: f64 = 3.0;

/// Taylor coefficients of `y'' + ω₁²y = −ω₂²·b(s)`, `y(0) = y0`, `y'(0) = y0p`,
/// continued until both parity chains fall below round-off on `[0, τ]`.
fn taylor_step(
    omega1: f64,
    omega2: f64,
    tau: f64,
    b: &Polynomial,
    y0: f64,
    y0p: f64,
) -> Polynomial {
    let (w1sq, w2sq) = (omega1 * omega1, omega2 * omega2);
    let bc = b.coeffs();
    let mut a = vec![y0, y0p];
    let mut scale = y0.abs().max(y0p.abs() * tau);
    let mut n = 0;
    loop {
        let bn = bc.get(n).copied().unwrap_or(0.0);
        let next = -(w1sq * a[n] + w2sq * bn) / ((n + 1) * (n + 2)) as f64;
        a.push(next);
        let m = n + 2;
        let size = next.abs() * tau.powi(m as i32);
        scale = scale.max(size);
        let prev = a[m - 1].abs() * tau.powi(m as i32 - 1);
        if m > bc.len() + 1 && size <= 1e-18 * scale && prev <= 1e-18 * scale {
            break;
        }
        if m >= 4096 || !scale.is_finite() {
            break;
        }
        n += 1;
    }
    Polynomial::new(a)
}

impl PiecewiseSolution {
    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }
    pub fn omega1(&self) -> f64 {
        self.omega1
    }
    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    /// Number of step intervals K.
    pub fn intervals(&self) -> usize {
        self.pieces[0].len() - 1
    }

    /// End of the covered range, `Kτ` (exclusive).
    pub fn horizon(&self) -> f64 {
        self.intervals() as f64 * self.tau
    }

    /// Prelude on `[−τ, 0)` in global time.
    pub fn prelude(&self) -> TrigPoly {
        self.pieces[0][0].shift(self.tau)
    }

    /// Segment k (1-based) on `[(k−1)τ, kτ)` in global time `t`.
    pub fn segment(&self, k: usize) -> Option<TrigPoly> {
        if k == 0 {
            return None;
        }
        let origin = (k - 1) as f64 * self.tau;
        self.pieces[0].get(k).map(|s| s.shift(-origin))
    }

    /// Segment k (1-based) in local time `s = t − (k−1)τ`.
    pub fn segment_local(&self, k: usize) -> Option<&TrigPoly> {
        if k == 0 {
            return None;
        }
        self.pieces[0].get(k)
    }

    /// Which piece owns `t`, and the local time there. `None` below `−τ`.
    fn locate(&self, t: f64) -> Result<Option<(usize, f64)>> {
        let end = self.horizon();
        if t.is_nan() || t >= end {
            return Err(Error::OutOfHorizon { t, end });
        }
        if t < -self.tau {
            return Ok(None);
        }
        if t < 0.0 {
            return Ok(Some((0, t + self.tau)));
        }
        let k = ((t / self.tau).floor() as usize + 1).min(self.intervals());
        Ok(Some((k, t - (k - 1) as f64 * self.tau)))
    }

    /// Value (order 0) or exact derivative (order 1, 2) at `t`.
    pub fn eval(&self, t: f64, order: usize) -> Result<f64> {
        let pieces = self.pieces.get(order).ok_or_else(|| {
            Error::InvalidParameter(format!("derivative order must be 0, 1 or 2, got {order}"))
        })?;
        Ok(match self.locate(t)? {
            None => 0.0,
            Some((k, s)) => pieces[k].eval(s),
        })
    }

    /// `[x, x', x'']` at `t`.
    pub fn eval_all(&self, t: f64) -> Result<[f64; 3]> {
        Ok(match self.locate(t)? {
            None => [0.0; 3],
            Some((k, s)) => [
                self.pieces[0][k].eval(s),
                self.pieces[1][k].eval(s),
                self.pieces[2][k].eval(s),
            ],
        })
    }

    /// Right value minus left limit of the given derivative at knot `kτ`,
    /// from the two adjoining polynomials (k = 0 uses the prelude on the left).
    pub fn knot_jump(&self, k: usize, order: usize) -> Option<f64> {
        let pieces = self.pieces.get(order)?;
        let right = pieces.get(k + 1)?.eval(0.0);
        let left = pieces[k].eval(self.tau);
        Some(right - left)
    }
}

fn check_trig_args(omega: f64, tau: f64) -> Result<()> {
    check_frequency("omega", omega)?;
    check_tau(tau)
}

/// Σ_{j=0}^{n} (−1)ʲ (ω·[t − (j−1)τ])^{2j+odd} / (2j+odd)!
fn delay_series(omega: f64, tau: f64, t: f64, terms: i64, odd: u32) -> f64 {
    let mut sum = 0.0;
    for j in 0..=terms {
        let x = omega * (t - (j - 1) as f64 * tau);
        let power = 2 * j as u32 + odd;
        let mut term = 1.0;
        for m in 1..=power {
            term *= x / m as f64;
        }
        sum += if j % 2 == 0 { term } else { -term };
    }
    sum
}

/// Index of the last active term: `floor(t/τ) + 1` (−1 below `−τ`).
fn active_terms(tau: f64, t: f64) -> i64 {
    if t < -tau {
        -1
    } else {
        (t / tau).floor() as i64 + 1
    }
}

/// Delayed cosine: 0 before `−τ`, 1 on `[−τ, 0)`, and on `[(k−1)τ, kτ)`
/// the sum `Σ_{j=0}^{k} (−1)ʲ ω²ʲ [t−(j−1)τ]²ʲ/(2j)!`.
pub fn delay_cosine(omega: f64, tau: f64, t: f64) -> Result<f64> {
    check_trig_args(omega, tau)?;
    Ok(delay_series(omega, tau, t, active_terms(tau, t), 0))
}

/// Delayed sine: 0 before `−τ`, `ω(t+τ)` on `[−τ, 0)`, and on `[(k−1)τ, kτ)`
/// the sum `Σ_{j=0}^{k} (−1)ʲ ω²ʲ⁺¹ [t−(j−1)τ]²ʲ⁺¹/(2j+1)!`.
pub fn delay_sine(omega: f64, tau: f64, t: f64) -> Result<f64> {
    check_trig_args(omega, tau)?;
    Ok(delay_series(omega, tau, t, active_terms(tau, t), 1))
}

/// Left limit of the delayed cosine at `t`, using the row of the interval
/// that ends at `t` when `t` is a knot.
pub fn delay_cosine_left(omega: f64, tau: f64, t: f64) -> Result<f64> {
    check_trig_args(omega, tau)?;
    Ok(delay_series(omega, tau, t, (t / tau).ceil() as i64, 0))
}

pub fn delay_sine_left(omega: f64, tau: f64, t: f64) -> Result<f64> {
    check_trig_args(omega, tau)?;
    Ok(delay_series(omega, tau, t, (t / tau).ceil() as i64, 1))
}
