//! Exact solver for the oscillator with one constant delay
//!
//! ```text
//! x''(t) + ω₁²·x(t) + ω₂²·x(t − τ) = f(t),   t ≥ 0,
//! x(t) = φ(t),                                −τ ≤ t ≤ 0.
//! ```
//!
//! The fundamental solutions are built interval by interval in the closed
//! algebra `P(t) + Q(t)cos ω₁t + R(t)sin ω₁t` ([`trigpoly`]), so no step of
//! the construction discretizes. When `ω₁τ` is small that form cancels
//! badly, and segments are built as Taylor polynomials carried to round-off
//! instead (exact when `ω₁ = 0`). The Cauchy solution is assembled from them
//! with panel-split Gauss–Legendre integrals ([`cauchy`]) and checked against
//! an independent Runge–Kutta march and the pointwise residual ([`oracle`]).

pub mod cauchy;
pub mod error;
pub mod expr;
pub mod fundamental;
pub mod oracle;
pub mod quadrature;
pub mod trigpoly;

pub use cauchy::{solve, ForcingKernel, Problem, QuadratureConfig, Solution};
pub use error::{Error, Result};
pub use expr::{parse, Expr, ExprError};
pub use fundamental::{
    build_fundamental, delay_cosine, delay_cosine_left, delay_sine, delay_sine_left, Kind,
    PiecewiseSolution,
};
pub use trigpoly::{Polynomial, TrigPoly};
