//! Expression language for the history function φ(t) and forcing f(t).
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" integer ] ;
//! primary = number | "t" | func "(" expr ")" | "(" expr ")" ;
//! func    = "sin" | "cos" | "exp" ;
//! number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-t^2` is `-(t^2)`. There is no
//! implicit multiplication.

mod diff;
mod parser;

use std::fmt;

use thiserror::Error;

pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("evaluation failed at t = {t}: {reason}")]
    Eval { t: f64, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Exp => x.exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, t: f64) -> Result<f64, ExprError> {
        let v = self.eval_raw(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::Eval {
                t,
                reason: format!("non-finite result {v}"),
            })
        }
    }

    fn eval_raw(&self, t: f64) -> Result<f64, ExprError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Neg(e) => -e.eval_raw(t)?,
            Expr::Binary(op, a, b) => {
                let (x, y) = (a.eval_raw(t)?, b.eval_raw(t)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(ExprError::Eval {
                                t,
                                reason: "division by zero".into(),
                            });
                        }
                        x / y
                    }
                }
            }
            Expr::Pow(e, n) => e.eval_raw(t)?.powi(*n as i32),
            Expr::Call(f, e) => f.apply(e.eval_raw(t)?),
        })
    }

    pub fn differentiate(&self) -> Expr {
        diff::differentiate(self)
    }

    /// Binding strength used by the printer; atoms are highest.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var | Expr::Call(..) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Canonical printer; its output parses back to an equal-valued tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                write_child(f, e, e.precedence() < 3)
            }
            Expr::Binary(op, a, b) => {
                let prec = self.precedence();
                let sym = match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write_child(f, a, a.precedence() < prec)?;
                f.write_str(sym)?;
                write_child(f, b, b.precedence() <= prec)
            }
            Expr::Pow(e, n) => {
                write_child(f, e, e.precedence() < 5)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, t: f64) -> f64 {
        parse(s).unwrap().eval(t).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ev("7", 123.0), 7.0);
        assert_eq!(ev("t^3", 2.0), 8.0);
        assert_eq!(ev("1 - t^2/2", 1.0), 0.5);
        assert_eq!(ev("sin(2*t)+1", 0.0), 1.0);
    }

    #[test]
    fn division_by_zero_is_eval_error() {
        let e = parse("1/t").unwrap();
        assert!(matches!(e.eval(0.0), Err(ExprError::Eval { .. })));
        assert!(matches!(
            parse("exp(t)").unwrap().eval(1e4),
            Err(ExprError::Eval { .. })
        ));
    }

    #[test]
    fn printer_parenthesizes_only_when_needed() {
        for (src, printed) in [
            ("1 - (t - 2)", "1 - (t - 2)"),
            ("(1 - t) - 2", "1 - t - 2"),
            ("2*(t + 1)", "2*(t + 1)"),
            ("t/(2*t)", "t/(2*t)"),
            ("-t^2", "-t^2"),
            ("(-t)^2", "(-t)^2"),
            ("-(t + 1)", "-(t + 1)"),
            ("sin(t)^2", "sin(t)^2"),
            ("-2*t", "-2*t"),
        ] {
            assert_eq!(parse(src).unwrap().to_string(), printed, "{src}");
        }
    }

    #[test]
    fn printer_round_trips_negative_literals() {
        let e = Expr::Binary(BinOp::Sub, Box::new(Expr::Var), Box::new(Expr::Const(-2.0)));
        let back = parse(&e.to_string()).unwrap();
        assert_eq!(back.eval(1.0).unwrap(), 3.0);
        let e = Expr::Pow(Box::new(Expr::Const(-2.0)), 2);
        assert_eq!(parse(&e.to_string()).unwrap().eval(0.0).unwrap(), 4.0);
    }
}
