use super::{BinOp, Expr, Func};

// Smart constructors: constant folding and 0/1 elimination only.

fn c(v: f64) -> Expr {
    Expr::Const(v)
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(v) => c(-v),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => c(x + y),
        (Expr::Const(0.0), e) | (e, Expr::Const(0.0)) => e,
        (a, b) => Expr::Binary(BinOp::Add, Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => c(x - y),
        (e, Expr::Const(0.0)) => e,
        (Expr::Const(0.0), e) => neg(e),
        (a, b) => Expr::Binary(BinOp::Sub, Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => c(x * y),
        (Expr::Const(z), _) | (_, Expr::Const(z)) if z == 0.0 => c(0.0),
        (Expr::Const(o), e) | (e, Expr::Const(o)) if o == 1.0 => e,
        (Expr::Const(m), e) | (e, Expr::Const(m)) if m == -1.0 => neg(e),
        // keep numeric factors in front: 2*cos(2*t), not cos(2*t)*2
        (e, k @ Expr::Const(_)) => Expr::Binary(BinOp::Mul, Box::new(k), Box::new(e)),
        (a, b) => Expr::Binary(BinOp::Mul, Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) if y != 0.0 => c(x / y),
        (Expr::Const(0.0), _) => c(0.0),
        (e, Expr::Const(1.0)) => e,
        (a, b) => Expr::Binary(BinOp::Div, Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, n: u32) -> Expr {
    match (a, n) {
        (_, 0) => c(1.0),
        (a, 1) => a,
        (Expr::Const(x), n) => c(x.powi(n as i32)),
        (a, n) => Expr::Pow(Box::new(a), n),
    }
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

pub(super) fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => c(0.0),
        Expr::Var => c(1.0),
        Expr::Neg(a) => neg(differentiate(a)),
        Expr::Binary(op, a, b) => {
            let (da, db) = (differentiate(a), differentiate(b));
            let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
            match op {
                BinOp::Add => add(da, db),
                BinOp::Sub => sub(da, db),
                BinOp::Mul => add(mul(da, b), mul(a, db)),
                // (a/b)' = a'/b − a·b'/b²
                BinOp::Div => sub(div(da, b.clone()), div(mul(a, db), pow(b, 2))),
            }
        }
        Expr::Pow(a, n) => match n {
            0 => c(0.0),
            n => mul(
                mul(c(*n as f64), pow(a.as_ref().clone(), n - 1)),
                differentiate(a),
            ),
        },
        Expr::Call(f, a) => {
            let inner = a.as_ref().clone();
            let outer = match f {
                Func::Sin => call(Func::Cos, inner),
                Func::Cos => neg(call(Func::Sin, inner)),
                Func::Exp => call(Func::Exp, inner),
            };
            mul(differentiate(a), outer)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;

    fn d(s: &str) -> String {
        parse(s).unwrap().differentiate().to_string()
    }

    #[test]
    fn goldens() {
        assert_eq!(d("t^2"), "2*t");
        assert_eq!(d("sin(2*t)"), "2*cos(2*t)");
        assert_eq!(
            parse("t + 3")
                .unwrap()
                .differentiate()
                .differentiate()
                .to_string(),
            "0"
        );
        assert_eq!(d("cos(t)"), "-sin(t)");
        assert_eq!(d("exp(t)"), "exp(t)");
        assert_eq!(d("5"), "0");
        assert_eq!(d("-t"), "-1");
        assert_eq!(d("t^3"), "3*t^2");
    }
}
