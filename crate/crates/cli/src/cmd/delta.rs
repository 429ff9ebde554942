use clap::{Args, ValueEnum};
use serde::Serialize;

use satake::kernels::spectral::{loglog_slope, main_term_delta};
use satake::kernels::TestFunctionSpec;

use crate::error::CliError;
use crate::output::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Signed,
    Abs,
}

/// Test function parameters shared by the spectral subcommands.
#[derive(Args, Debug, Clone, Serialize)]
pub struct SpecArgs {
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Imaginary parts of (nu1, nu2) at the base point.
    #[arg(long, value_delimiter = ',', default_value = "4,4", num_args = 2)]
    pub nu0: Vec<f64>,
    /// Number of pole-compensating factors minus one.
    #[arg(long, default_value_t = 2)]
    pub a: usize,
}

impl SpecArgs {
    pub fn spec(&self, t: f64) -> Result<TestFunctionSpec, CliError> {
        if self.nu0.len() != 2 {
            return Err(CliError::Usage("--nu0 takes two values".into()));
        }
        let s = TestFunctionSpec {
            t,
            nu0: [self.nu0[0], self.nu0[1]],
            a: self.a,
            eps: self.eps,
        };
        s.validate()?;
        Ok(s)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct DeltaArgs {
    #[arg(long = "T", value_delimiter = ',', default_value = "8,16,32")]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Lattice step in units of the Gaussian width; halved once for the
    /// refinement estimate.
    #[arg(long, default_value_t = 0.1)]
    pub refine: f64,
    /// Which value the "value" column carries.
    #[arg(long, value_enum, default_value_t = Convention::Abs)]
    pub convention: Convention,
    /// Allowed distance of the fitted slope from 5 - 2 eps.
    #[arg(long, default_value_t = 0.2)]
    pub slope_tol: f64,
}

#[derive(Serialize)]
struct Row {
    quantity: &'static str,
    t: Option<f64>,
    value: f64,
    signed: Option<f64>,
    abs: Option<f64>,
    rel_change: Option<f64>,
    target: Option<f64>,
    pass: bool,
}

pub fn run(args: &DeltaArgs) -> Result<Report, CliError> {
    if args.t.is_empty() || !(args.refine > 0.0 && args.refine < 1.0) {
        return Err(CliError::Usage("need at least one T and 0 < --refine < 1".into()));
    }
    let mut report = Report::new(args)?;
    let mut abs = Vec::new();
    for &t in &args.t {
        let d = main_term_delta(&args.spec.spec(t)?, args.refine)?;
        abs.push(d.abs);
        report.push(&Row {
            quantity: "delta",
            t: Some(t),
            value: match args.convention {
                Convention::Signed => d.signed,
                Convention::Abs => d.abs,
            },
            signed: Some(d.signed),
            abs: Some(d.abs),
            rel_change: Some(d.rel_change),
            target: None,
            pass: d.rel_change < 1e-6,
        })?;
    }
    if args.t.len() >= 2 {
        let slope = loglog_slope(&args.t, &abs);
        let target = 5.0 - 2.0 * args.spec.eps;
        report.push(&Row {
            quantity: "slope",
            t: None,
            value: slope,
            signed: None,
            abs: None,
            rel_change: None,
            target: Some(target),
            pass: (slope - target).abs() <= args.slope_tol,
        })?;
    }
    Ok(report)
}
