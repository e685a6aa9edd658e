mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::RawConfig;

#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("expression error: {0}")]
    Expression(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Expression(_) => 3,
        }
    }
}

impl From<delayosc_core::Error> for CliError {
    fn from(e: delayosc_core::Error) -> Self {
        match e {
            delayosc_core::Error::Expression(e) => CliError::Expression(e.to_string()),
            delayosc_core::Error::OutOfHorizon { t, end } => CliError::Config(format!(
                "out of horizon: t = {t} is not below K*tau = {end}"
            )),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "delayosc",
    version,
    about = "Exact solver for x'' + w1^2 x(t) + w2^2 x(t - tau) = f(t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the Cauchy solution: t, x, x'.
    Solve(Common),
    /// Tabulate x1, x2 and their first two derivatives.
    Fundamental(Common),
    /// Residual and Runge-Kutta cross-check; writes a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run the built-in five-problem suite instead of the configured problem.
        #[arg(long)]
        suite: bool,
    },
    /// Tabulate the delayed cosine and sine.
    DelayTrig(Common),
}

#[derive(Args, Default)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    omega1: Option<String>,
    #[arg(long)]
    omega2: Option<String>,
    /// Frequency for delay-trig.
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    tau: Option<String>,
    /// Number of delay intervals K.
    #[arg(long)]
    horizon: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// START:END:N
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// impulse, x2 or x1
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long)]
    quad_nodes: Option<String>,
    #[arg(long)]
    rk_h: Option<String>,
}

impl Common {
    fn raw(&self) -> Result<RawConfig, CliError> {
        let mut raw = match &self.config {
            Some(path) => RawConfig::load(path)?,
            None => RawConfig::default(),
        };
        let flags = [
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
            ("omega", &self.omega),
            ("tau", &self.tau),
            ("horizon", &self.horizon),
            ("phi", &self.phi),
            ("f", &self.f),
            ("grid", &self.grid),
            ("out", &self.out),
            ("format", &self.format),
            ("kernel", &self.kernel),
            ("quad-nodes", &self.quad_nodes),
            ("rk-h", &self.rk_h),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                raw.set(key, v.clone());
            }
        }
        Ok(raw)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(c) => commands::solve(&c.raw()?.resolve()?),
        Command::Fundamental(c) => commands::fundamental(&c.raw()?.resolve()?),
        Command::Verify { common, suite } => commands::verify(&common.raw()?.resolve()?, suite),
        Command::DelayTrig(c) => commands::delay_trig(&c.raw()?.resolve()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("delayosc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
