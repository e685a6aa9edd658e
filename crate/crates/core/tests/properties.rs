use delayosc_core::oracle::{self, rk_reference};
use delayosc_core::{build_fundamental, parse, solve, ForcingKernel, Kind, Problem};
use proptest::prelude::*;

fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a + (b - a) * i as f64 / n as f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solution_is_linear_in_data(
        w1 in 0.0f64..2.5, w2 in 0.0f64..2.0, tau in 0.4f64..1.5,
        a in -2.0f64..2.0, b in -2.0f64..2.0,
        c0 in -1.0f64..1.0, c1 in -1.0f64..1.0, wf in 0.3f64..2.0,
    ) {
        let k = 4;
        let (phi1, f1) = (format!("{c0} + sin(t)"), "cos(t)".to_string());
        let (phi2, f2) = (format!("({c1})*t^2"), format!("exp(-t)*sin({wf}*t)"));
        let mk = |phi: &str, f: &str| solve(Problem::new(w1, w2, tau, k, phi, f).unwrap()).unwrap();
        let s1 = mk(&phi1, &f1);
        let s2 = mk(&phi2, &f2);
        let s = mk(&format!("({a})*({phi1}) + ({b})*({phi2})"), &format!("({a})*({f1}) + ({b})*({f2})"));
        for t in grid(-tau, k as f64 * tau, 80) {
            let want = a * s1.eval(t).unwrap() + b * s2.eval(t).unwrap();
            prop_assert!((s.eval(t).unwrap() - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn solution_agrees_with_runge_kutta(
        w1 in 0.0f64..2.5, w2 in 0.0f64..2.0, tau in 0.5f64..1.5,
        p in -1.0f64..1.0, wf in 0.0f64..3.0,
    ) {
        let problem = Problem::new(w1, w2, tau, 4, &format!("1 + ({p})*t"), &format!("cos({wf}*t)")).unwrap();
        let sol = solve(problem.clone()).unwrap();
        let traj = rk_reference(&problem, 1e-3).unwrap();
        let grid: Vec<f64> = grid(0.0, problem.horizon(), 97).collect();
        let err = oracle::compare(|t| sol.eval(t), |t| traj.sample(t), &grid).unwrap();
        prop_assert!(err < 1e-6, "max |analytic − RK| = {err:e}");
    }

    #[test]
    fn fundamental_residual_is_round_off(
        w1 in 0.0f64..4.0, w2 in 0.0f64..2.0, tau in 0.2f64..2.0, kind in 0usize..3,
    ) {
        let kind = [Kind::X1, Kind::X2, Kind::Impulse][kind];
        let x = build_fundamental(kind, w1, w2, tau, 8).unwrap();
        let problem = Problem::new(w1, w2, tau, 8, "0", "0").unwrap();
        let r = oracle::residual(|t| x.eval_all(t), &problem, 10).unwrap();
        let size = r.grid.iter().map(|&t| x.eval(t, 0).unwrap().abs()).fold(1.0, f64::max);
        prop_assert!(r.max_residual < 1e-12 * size * (1.0 + w1 * w1 + w2 * w2));
    }

    #[test]
    fn printed_expressions_reparse_to_the_same_function(t in -2.0f64..2.0) {
        for src in ["-t^2 + 3*t - 1", "sin(t)/(1 + t^2)", "exp(-(t - 1)^2)*cos(3*t)", "2 - (t - (1 - t))"] {
            let e = parse(src).unwrap();
            let again = parse(&e.to_string()).unwrap();
            prop_assert_eq!(e.eval(t).unwrap(), again.eval(t).unwrap());
            let d = e.differentiate();
            prop_assert_eq!(parse(&d.to_string()).unwrap().eval(t).unwrap(), d.eval(t).unwrap());
        }
    }
}

#[test]
fn impulse_kernel_is_exact_where_literal_kernels_are_not() {
    let residual = |kernel| {
        let p = Problem::new(1.0, 0.5, 1.0, 5, "t^2/2", "sin(t)")
            .unwrap()
            .with_kernel(kernel);
        let s = solve(p.clone()).unwrap();
        oracle::residual(|t| s.eval_all(t), &p, 20)
            .unwrap()
            .max_residual
    };
    assert!(residual(ForcingKernel::Impulse) < 1e-12);
    assert!(residual(ForcingKernel::X2) > 1e-2);
    assert!(residual(ForcingKernel::X1) > 1e-2);
}

#[test]
fn history_is_reproduced_on_the_prelude() {
    let s = solve(Problem::new(0.7, 1.3, 0.9, 3, "cos(2*t) - t", "1").unwrap()).unwrap();
    for t in grid(-0.9, 0.0, 10) {
        let [x, dx, ddx] = s.eval_all(t).unwrap();
        assert_eq!(x, (2.0 * t).cos() - t);
        assert!((dx - (-2.0 * (2.0 * t).sin() - 1.0)).abs() < 1e-15);
        assert!((ddx + 4.0 * (2.0 * t).cos()).abs() < 1e-15);
    }
    // continuity of value and slope into the first interval
    let right = s.eval_all(1e-12).unwrap();
    assert!((right[0] - 1.0).abs() < 1e-10);
    assert!((right[1] + 1.0).abs() < 1e-10);
}
