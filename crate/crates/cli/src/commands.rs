use delayosc_core::cauchy::solve_with;
use delayosc_core::fundamental::{self, Kind, WARN_INTERVALS};
use delayosc_core::oracle::verify::{canned_problems, verify as verify_solution, VerifyReport};
use delayosc_core::{ForcingKernel, Problem, QuadratureConfig};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{emit, Table};
use crate::CliError;

fn kernel_name(k: ForcingKernel) -> &'static str {
    match k {
        ForcingKernel::Impulse => "impulse",
        ForcingKernel::X2 => "x2",
        ForcingKernel::X1 => "x1",
    }
}

fn warn_conditioning(cfg: &RunConfig) {
    if cfg.horizon > WARN_INTERVALS {
        eprintln!(
            "delayosc: warning: horizon {} exceeds {WARN_INTERVALS} intervals; \
             segment polynomials of this degree lose accuracy in double precision",
            cfg.horizon
        );
    }
}

fn problem_table(cfg: &RunConfig, command: &str, columns: &[&str]) -> Table {
    Table::new(columns)
        .meta("command", command)
        .meta("omega1", cfg.omega1)
        .meta("omega2", cfg.omega2)
        .meta("tau", cfg.tau)
        .meta("horizon", cfg.horizon)
}

fn problem(cfg: &RunConfig) -> Result<Problem, CliError> {
    Ok(Problem::new(
        cfg.omega1,
        cfg.omega2,
        cfg.tau,
        cfg.build_intervals(),
        &cfg.phi,
        &cfg.f,
    )?
    .with_kernel(cfg.kernel))
}

pub fn solve(cfg: &RunConfig) -> Result<(), CliError> {
    warn_conditioning(cfg);
    let sol = solve_with(
        problem(cfg)?,
        QuadratureConfig {
            nodes_per_panel: cfg.quad_nodes,
        },
    )?;
    let mut table = problem_table(cfg, "solve", &["t", "x", "dx"])
        .meta("phi", &cfg.phi)
        .meta("f", &cfg.f)
        .meta("kernel", kernel_name(cfg.kernel))
        .meta("quad_nodes", cfg.quad_nodes);
    for t in cfg.grid.points() {
        let [x, dx, _] = sol.eval_all(t)?;
        table.rows.push(vec![t, x, dx]);
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format)?)
}

pub fn fundamental(cfg: &RunConfig) -> Result<(), CliError> {
    warn_conditioning(cfg);
    let k = cfg.build_intervals();
    let x1 = fundamental::build_fundamental(Kind::X1, cfg.omega1, cfg.omega2, cfg.tau, k)?;
    let x2 = fundamental::build_fundamental(Kind::X2, cfg.omega1, cfg.omega2, cfg.tau, k)?;
    let mut table = problem_table(
        cfg,
        "fundamental",
        &["t", "x1", "dx1", "ddx1", "x2", "dx2", "ddx2"],
    );
    for t in cfg.grid.points() {
        let a = x1.eval_all(t)?;
        let b = x2.eval_all(t)?;
        table.rows.push(vec![t, a[0], a[1], a[2], b[0], b[1], b[2]]);
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format)?)
}

pub fn delay_trig(cfg: &RunConfig) -> Result<(), CliError> {
    let (w, tau) = (cfg.omega, cfg.tau);
    let mut table = Table::new(&["t", "cos_tau", "sin_tau"])
        .meta("command", "delay-trig")
        .meta("omega", w)
        .meta("tau", tau)
        .meta(
            "knots",
            "rows at t = k*tau appear twice: left limit, then value",
        );
    for mut t in cfg.grid.points() {
        let k = (t / tau).round();
        if k >= -1.0 && (t - k * tau).abs() <= 1e-12 * tau.max(t.abs()) {
            // snap so that round-off in the grid cannot land left of the knot
            t = k * tau;
            table.rows.push(vec![
                t,
                fundamental::delay_cosine_left(w, tau, t)?,
                fundamental::delay_sine_left(w, tau, t)?,
            ]);
        }
        table.rows.push(vec![
            t,
            fundamental::delay_cosine(w, tau, t)?,
            fundamental::delay_sine(w, tau, t)?,
        ]);
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format)?)
}

#[derive(Serialize)]
struct JumpJson {
    t: f64,
    value: f64,
    first: f64,
    second: f64,
}

#[derive(Serialize)]
struct CaseJson {
    name: String,
    omega1: f64,
    omega2: f64,
    tau: f64,
    horizon: usize,
    phi: String,
    f: String,
    kernel: &'static str,
    max_residual: f64,
    max_vs_rk: f64,
    residual_tolerance: f64,
    rk_tolerance: f64,
    knot_jumps: Vec<JumpJson>,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson {
    rk_h: f64,
    quad_nodes: usize,
    cases: Vec<CaseJson>,
    pass: bool,
}

fn case_json(name: &str, p: &Problem, r: VerifyReport) -> CaseJson {
    CaseJson {
        name: name.to_string(),
        omega1: p.omega1,
        omega2: p.omega2,
        tau: p.tau,
        horizon: p.intervals,
        phi: p.phi.to_string(),
        f: p.f.to_string(),
        kernel: kernel_name(p.forcing_kernel),
        max_residual: r.max_residual,
        max_vs_rk: r.max_vs_rk,
        residual_tolerance: r.residual_tolerance,
        rk_tolerance: r.rk_tolerance,
        knot_jumps: r
            .knot_jumps
            .iter()
            .map(|j| JumpJson {
                t: j.t,
                value: j.value,
                first: j.first,
                second: j.second,
            })
            .collect(),
        pass: r.pass,
    }
}

pub fn verify(cfg: &RunConfig, suite: bool) -> Result<(), CliError> {
    warn_conditioning(cfg);
    let quadrature = QuadratureConfig {
        nodes_per_panel: cfg.quad_nodes,
    };
    let problems: Vec<(String, Problem)> = if suite {
        canned_problems()
            .into_iter()
            .map(|(n, p)| (n.to_string(), p.with_kernel(cfg.kernel)))
            .collect()
    } else {
        let mut p = problem(cfg)?;
        p.intervals = cfg.horizon;
        vec![("configured".to_string(), p)]
    };

    let mut cases = Vec::with_capacity(problems.len());
    for (name, p) in problems {
        let sol = solve_with(p.clone(), quadrature)?;
        let report = verify_solution(&sol, cfg.rk_h)?;
        cases.push(case_json(&name, &p, report));
    }
    let pass = cases.iter().all(|c| c.pass);
    let report = ReportJson {
        rk_h: cfg.rk_h,
        quad_nodes: cfg.quad_nodes,
        cases,
        pass,
    };
    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    if cfg.format == Format::Csv && cfg.out.is_some() {
        eprintln!("delayosc: note: verify always writes a JSON report");
    }
    emit(cfg.out.as_deref(), &text)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}
