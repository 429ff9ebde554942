//! `satake`: the numerical checks as subcommands, with JSON or CSV output.
//!
//! Exit status is 0 when every requested check passes, 2 when a check
//! fails and 1 on invalid input or a runtime error.

mod cmd;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::output::{emit, Format, Report};

#[derive(Parser, Debug)]
#[command(name = "satake", version, about = "Numerical checks for GL(N) Satake parameters, adjoint L-factors and GL(3) Kuznetsov kernels")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Output file; relative paths resolve against $SATAKE_OUT_DIR when set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kostka-Foulkes polynomials at beta = 0: definition against closed form.
    Kf(cmd::kf::KfArgs),
    /// Character moments of the Plancherel measure against Kostka-Foulkes values.
    Moments(cmd::moments::MomentsArgs),
    /// Adjoint local factor: direct product against its expansions.
    Adjoint(cmd::adjoint::AdjointArgs),
    /// Symmetric powers of the adjoint against the Kostka-Foulkes generating series.
    Poincare(cmd::adjoint::PoincareArgs),
    /// Kernel identities: Mellin-Barnes, integral representations, gamma and Bessel transforms.
    Kernels(cmd::kernels::KernelsArgs),
    /// Monte Carlo moments of Plancherel samples.
    Equidist(cmd::equidist::EquidistArgs),
    /// Main term of the spectral average and its growth in T.
    Delta(cmd::delta::DeltaArgs),
    /// Growth of the transform and of the Phi integrals.
    Scaling(cmd::scaling::ScalingArgs),
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Kf(a) => cmd::kf::run(a),
        Command::Moments(a) => cmd::moments::run(a),
        Command::Adjoint(a) => cmd::adjoint::run(a),
        Command::Poincare(a) => cmd::adjoint::run_poincare(a),
        Command::Kernels(a) => cmd::kernels::run(a),
        Command::Equidist(a) => cmd::equidist::run(a),
        Command::Delta(a) => cmd::delta::run(a),
        Command::Scaling(a) => cmd::scaling::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: could not start {} worker threads", n);
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let result = dispatch(&cli).and_then(|r| emit(&r, cli.format, cli.out.as_ref()).map(|_| r.pass));
    eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
