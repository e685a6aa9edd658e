//! Closed algebra of functions `P(t) + Q(t)·cos(ωt) + R(t)·sin(ωt)`.
//!
//! Every step segment of the fundamental solutions lives in this space: the
//! delayed forcing of a segment is the previous segment itself, and resonant
//! forcing at the natural frequency only raises the polynomial degree by one.
//! Nothing here discretizes; evaluation error is floating round-off only.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Real polynomial, `coeffs[i]` multiplies `t^i`.
///
/// Canonical form never stores a trailing zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0.0)
                    + other.coeffs.get(i).copied().unwrap_or(0.0)
            })
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, c: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at `t = 0`.
    pub fn antiderivative(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / (i + 1) as f64),
        );
        Polynomial::new(coeffs)
    }

    /// Returns `u` with `u(t) = self(t + c)` (Taylor shift).
    pub fn shift(&self, c: f64) -> Polynomial {
        let mut a = self.coeffs.clone();
        let n = a.len();
        if c == 0.0 || n < 2 {
            return Polynomial::new(a);
        }
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                a[j] += c * a[j + 1];
            }
        }
        Polynomial::new(a)
    }
}

/// `p(t) + q(t)·cos(ωt) + r(t)·sin(ωt)`.
///
/// A value with `q` and `r` both zero is *pure*; its `omega` is irrelevant
/// and it combines with a trig value of any frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    omega: f64,
    p: Polynomial,
    q: Polynomial,
    r: Polynomial,
}

impl TrigPoly {
    /// Panics if `omega` is negative or NaN.
    pub fn new(omega: f64, p: Polynomial, q: Polynomial, r: Polynomial) -> Self {
        assert!(omega >= 0.0, "omega must be non-negative, got {omega}");
        if omega == 0.0 {
            // cos(0·t) = 1, sin(0·t) = 0
            return TrigPoly {
                omega,
                p: p.add(&q),
                q: Polynomial::zero(),
                r: Polynomial::zero(),
            };
        }
        TrigPoly { omega, p, q, r }
    }

    pub fn pure(p: Polynomial) -> Self {
        TrigPoly::new(0.0, p, Polynomial::zero(), Polynomial::zero())
    }

    pub fn zero() -> Self {
        TrigPoly::pure(Polynomial::zero())
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn p(&self) -> &Polynomial {
        &self.p
    }
    pub fn q(&self) -> &Polynomial {
        &self.q
    }
    pub fn r(&self) -> &Polynomial {
        &self.r
    }

    pub fn is_pure(&self) -> bool {
        self.q.is_zero() && self.r.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.is_pure() && self.p.is_zero()
    }

    /// Highest polynomial degree over the three factors.
    pub fn degree(&self) -> Option<usize> {
        [&self.p, &self.q, &self.r]
            .iter()
            .filter_map(|poly| poly.degree())
            .max()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = self.p.eval(t);
        if !self.is_pure() {
            let (s, c) = (self.omega * t).sin_cos();
            v += self.q.eval(t) * c + self.r.eval(t) * s;
        }
        v
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        let omega = match (self.is_pure(), other.is_pure()) {
            (true, _) => other.omega,
            (false, true) => self.omega,
            (false, false) if self.omega == other.omega => self.omega,
            (false, false) => return Err(Error::FrequencyMismatch(self.omega, other.omega)),
        };
        Ok(TrigPoly {
            omega,
            p: self.p.add(&other.p),
            q: self.q.add(&other.q),
            r: self.r.add(&other.r),
        })
    }

    pub fn scale(&self, c: f64) -> TrigPoly {
        TrigPoly {
            omega: self.omega,
            p: self.p.scale(c),
            q: self.q.scale(c),
            r: self.r.scale(c),
        }
    }

    /// Exact derivative: `p → p'`, `q → q' + ωr`, `r → r' − ωq`.
    pub fn derivative(&self) -> TrigPoly {
        let w = self.omega;
        TrigPoly {
            omega: w,
            p: self.p.derivative(),
            q: self.q.derivative().add(&self.r.scale(w)),
            r: self.r.derivative().add(&self.q.scale(-w)),
        }
    }

    /// Returns `u` with `u(t) = self(t + c)`.
    pub fn shift(&self, c: f64) -> TrigPoly {
        let p = self.p.shift(c);
        if self.is_pure() {
            return TrigPoly {
                omega: self.omega,
                p,
                q: Polynomial::zero(),
                r: Polynomial::zero(),
            };
        }
        let (sc, cc) = (self.omega * c).sin_cos();
        let qs = self.q.shift(c);
        let rs = self.r.shift(c);
        TrigPoly {
            omega: self.omega,
            p,
            q: qs.scale(cc).add(&rs.scale(sc)),
            r: rs.scale(cc).add(&qs.scale(-sc)),
        }
    }
}

/// A particular solution `y` of `y'' + ω₁²·y = rhs`.
///
/// For `ω₁ > 0` the pure part is inverted by the Neumann series of
/// `(D² + ω₁²)⁻¹` on polynomials; the trig part is resonant, so with
/// `y = U cos + V sin` and `W = U + iV` it reduces to `W'' − 2iω₁W' = A + iB`,
/// which is solved for `W'` and integrated once (degree rises by one).
/// For `ω₁ = 0` it is the double antiderivative with zero constants.
pub fn solve_particular(rhs: &TrigPoly, omega1: f64) -> Result<TrigPoly> {
    if !rhs.is_pure() && rhs.omega != omega1 {
        return Err(Error::FrequencyMismatch(rhs.omega, omega1));
    }
    if omega1 == 0.0 {
        return Ok(TrigPoly::pure(rhs.p.antiderivative().antiderivative()));
    }

    let w2 = omega1 * omega1;
    let mut pure = Polynomial::zero();
    let mut term = rhs.p.scale(1.0 / w2);
    while !term.is_zero() {
        pure = pure.add(&term);
        term = term.derivative().derivative().scale(-1.0 / w2);
    }

    if rhs.is_pure() {
        return Ok(TrigPoly::new(
            omega1,
            pure,
            Polynomial::zero(),
            Polynomial::zero(),
        ));
    }

    let n = rhs.q.coeffs().len().max(rhs.r.coeffs().len());
    let g: Vec<Complex64> = (0..n)
        .map(|i| {
            Complex64::new(
                rhs.q.coeffs().get(i).copied().unwrap_or(0.0),
                rhs.r.coeffs().get(i).copied().unwrap_or(0.0),
            )
        })
        .collect();

    // (D − a)W' = G with a = 2iω₁  ⇒  W' = −Σ_j Dʲ G / a^{j+1}
    let a = Complex64::new(0.0, 2.0 * omega1);
    let mut wprime = vec![Complex64::new(0.0, 0.0); n];
    let mut deriv = g;
    let mut inv_pow = -1.0 / a;
    while !deriv.is_empty() {
        for (acc, d) in wprime.iter_mut().zip(&deriv) {
            *acc += d * inv_pow;
        }
        deriv = deriv
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as f64)
            .collect();
        inv_pow /= a;
    }

    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    for (i, c) in wprime.iter().enumerate() {
        u[i + 1] = c.re / (i + 1) as f64;
        v[i + 1] = c.im / (i + 1) as f64;
    }
    Ok(TrigPoly::new(
        omega1,
        pure,
        Polynomial::new(u),
        Polynomial::new(v),
    ))
}

/// Solution of `y'' + ω₁²·y = 0` with `y(t0) = y0`, `y'(t0) = y0p`,
/// expanded about `t = 0`.
pub fn homogeneous_with_ic(omega1: f64, y0: f64, y0p: f64, t0: f64) -> TrigPoly {
    assert!(omega1 >= 0.0, "omega1 must be non-negative, got {omega1}");
    if omega1 == 0.0 {
        return TrigPoly::pure(Polynomial::new(vec![y0 - y0p * t0, y0p]));
    }
    TrigPoly::new(
        omega1,
        Polynomial::zero(),
        Polynomial::constant(y0),
        Polynomial::constant(y0p / omega1),
    )
    .shift(-t0)
}
