use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use satake::adjoint_l::{poincare_series_check, random_torus_point, three_way_sweep, AdjointForms};
use satake::exact::exact_sweep;

use crate::error::CliError;
use crate::output::Report;

#[derive(Args, Debug, Serialize)]
pub struct AdjointArgs {
    #[arg(long = "N", value_delimiter = ',', default_value = "3")]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub p: Vec<u64>,
    /// Truncation order in t.
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Compare only the Kostka-Foulkes expansion with the direct product.
    #[arg(long)]
    pub kf_only: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Check in exact rational arithmetic at rational torus points; the
    /// coefficients do not depend on p, so --p is ignored.
    #[arg(long)]
    pub exact: bool,
    /// Bound on numerators and denominators of the rational slopes.
    #[arg(long, default_value_t = 16)]
    pub height: i64,
}

#[derive(Serialize)]
struct ExactRow {
    n: usize,
    order: usize,
    samples: usize,
    seed: u64,
    forms: &'static str,
    mismatches: usize,
    max_abs_dev: f64,
    float_max_abs_dev: f64,
    float_max_rel_dev: f64,
    pass: bool,
}

fn forms_label(forms: AdjointForms, n: usize) -> &'static str {
    match (forms, n) {
        (AdjointForms::KfOnly, _) => "kf",
        (_, 2) => "kf+shimura",
        (_, 3) => "kf+explicit",
        _ => "kf",
    }
}

#[derive(Serialize)]
struct Row {
    n: usize,
    p: u64,
    order: usize,
    samples: usize,
    seed: u64,
    forms: &'static str,
    max_abs_dev: f64,
    pass: bool,
}

pub fn run(args: &AdjointArgs) -> Result<Report, CliError> {
    if args.samples == 0 || args.n.is_empty() || args.p.is_empty() || !(args.tol > 0.0) {
        return Err(CliError::Usage("need samples > 0, ranks, primes and --tol > 0".into()));
    }
    let mut report = Report::new(args)?;
    let forms = if args.kf_only { AdjointForms::KfOnly } else { AdjointForms::All };
    if args.exact {
        for &n in &args.n {
            let r = exact_sweep(n, args.order, args.samples, args.seed, args.height, forms)?;
            report.push(&ExactRow {
                n,
                order: r.order,
                samples: r.samples,
                seed: args.seed,
                forms: forms_label(forms, n),
                mismatches: r.mismatches,
                max_abs_dev: r.max_abs_dev,
                float_max_abs_dev: r.float_max_abs_dev,
                float_max_rel_dev: r.float_max_rel_dev,
                pass: r.mismatches == 0,
            })?;
        }
        return Ok(report);
    }
    for &n in &args.n {
        for &p in &args.p {
            let r = three_way_sweep(n, p, args.order, args.samples, args.seed, forms)?;
            let label = forms_label(forms, n);
            report.push(&Row {
                n,
                p,
                order: r.order,
                samples: r.samples,
                seed: args.seed,
                forms: label,
                max_abs_dev: r.max_abs_dev,
                pass: r.max_abs_dev < args.tol,
            })?;
        }
    }
    Ok(report)
}

#[derive(Args, Debug, Serialize)]
pub struct PoincareArgs {
    #[arg(long = "N", default_value_t = 3)]
    pub n: usize,
    /// Highest q-degree compared.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    /// Number of random regular torus points.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long, default_value_t = 5)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Serialize)]
struct PoincareRow {
    n: usize,
    point: Vec<f64>,
    degree: usize,
    max_abs_dev: f64,
    pass: bool,
}

pub fn run_poincare(args: &PoincareArgs) -> Result<Report, CliError> {
    if args.points == 0 || !(args.tol > 0.0) {
        return Err(CliError::Usage("need --points > 0 and --tol > 0".into()));
    }
    let mut report = Report::new(args)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut done = 0;
    while done < args.points {
        let x = random_torus_point(args.n, &mut rng);
        let r = match poincare_series_check(&x, args.n, args.degree) {
            Ok(r) => r,
            // near-wall draws are skipped; the stream stays deterministic
            Err(satake::Error::SingularPoint) | Err(satake::Error::Degenerate(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        report.push(&PoincareRow {
            n: args.n,
            point: x.thetas().to_vec(),
            degree: args.degree,
            max_abs_dev: r.max_abs_dev,
            pass: r.max_abs_dev < args.tol,
        })?;
        done += 1;
    }
    Ok(report)
}
