use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use satake::lie_typea::KostantTable;
use satake::measures::{density_table, empirical_moment, sample_plancherel, write_density_csv, DensitySpec};

use super::moments::{indices, kf_target};
use crate::error::CliError;
use crate::output::{resolve_path, Report};

#[derive(Args, Debug, Serialize)]
pub struct EquidistArgs {
    #[arg(long = "N", default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// All indices with m1 + ... + m_{N-1} <= deg.
    #[arg(long, default_value_t = 3)]
    pub deg: i64,
    /// Allowed distance from the target in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
    /// Also write the density on a grid (rank 3) to this CSV file.
    #[arg(long)]
    pub density_dump: Option<PathBuf>,
    #[arg(long, default_value_t = 128)]
    pub dump_grid: usize,
}

#[derive(Serialize)]
struct Row {
    m: Vec<i64>,
    mean: f64,
    mean_imag: f64,
    sigma: f64,
    target: f64,
    z: f64,
    pass: bool,
}

pub fn run(args: &EquidistArgs) -> Result<Report, CliError> {
    if args.deg < 0 || !(args.sigmas > 0.0) {
        return Err(CliError::Usage("need --deg >= 0 and --sigmas > 0".into()));
    }
    let samples = sample_plancherel(args.p, args.n, args.samples, args.seed)?;
    let mut table = KostantTable::new(args.n)?;
    let mut report = Report::new(args)?;
    for m in indices(args.n - 1, args.deg) {
        let e = empirical_moment(&samples, &m)?;
        let target = kf_target(&mut table, &m, args.p)?;
        let diff = (e.mean - target).abs();
        // the trivial moment has zero variance and must be exact
        let (z, pass) = if e.sigma == 0.0 {
            (0.0, diff < 1e-12)
        } else {
            (diff / e.sigma, diff <= args.sigmas * e.sigma)
        };
        report.push(&Row {
            m,
            mean: e.mean,
            mean_imag: e.mean_imag,
            sigma: e.sigma,
            target,
            z,
            pass,
        })?;
    }
    if let Some(path) = &args.density_dump {
        let rows = density_table(&DensitySpec::plancherel(args.p, args.n), args.dump_grid)?;
        let mut w = BufWriter::new(File::create(resolve_path(path))?);
        write_density_csv(&mut w, &rows)?;
    }
    Ok(report)
}
