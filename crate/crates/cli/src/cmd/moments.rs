use clap::Args;
use serde::Serialize;

use satake::characters::partition_of;
use satake::lie_typea::{kostka_foulkes_with, KostantTable, Weight};
use satake::measures::{character_moment, QuadratureGrid};

use crate::error::CliError;
use crate::output::Report;

#[derive(Args, Debug, Serialize)]
pub struct MomentsArgs {
    #[arg(long = "N", default_value_t = 3)]
    pub n: usize,
    /// Primes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub p: Vec<u64>,
    /// All indices with m1 + ... + m_{N-1} <= deg.
    #[arg(long, default_value_t = 4)]
    pub deg: i64,
    /// A single index instead of the degree sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<i64>>,
    /// Nodes per angle of the torus grid.
    #[arg(long, default_value_t = 128)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Serialize)]
struct Row {
    p: u64,
    m: Vec<i64>,
    moment: f64,
    target: f64,
    deviation: f64,
    pass: bool,
}

pub(crate) fn indices(len: usize, deg: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().sum();
            for k in 0..=deg - used {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

/// Kostka-Foulkes value at beta = 0 and q = 1/p for the partition of m.
pub(crate) fn kf_target(table: &mut KostantTable, m: &[i64], p: u64) -> Result<f64, CliError> {
    let lam = Weight::from_ints(&partition_of(m)?);
    let kf = kostka_foulkes_with(table, &lam, &Weight::zero(m.len() + 1))?;
    Ok(kf.eval_f64(1.0 / p as f64))
}

pub fn run(args: &MomentsArgs) -> Result<Report, CliError> {
    if !(2..=4).contains(&args.n) {
        return Err(CliError::Usage("--N must lie in 2..=4".into()));
    }
    if args.deg < 0 || args.p.is_empty() || !(args.tol > 0.0) {
        return Err(CliError::Usage("need --deg >= 0, at least one prime and --tol > 0".into()));
    }
    let ms = match &args.m {
        Some(m) if m.len() + 1 != args.n => return Err(CliError::Usage("--m needs N-1 entries".into())),
        Some(m) => vec![m.clone()],
        None => indices(args.n - 1, args.deg),
    };
    let grid = QuadratureGrid::new(args.grid, args.n)?;
    let mut table = KostantTable::new(args.n)?;
    let mut report = Report::new(args)?;
    for &p in &args.p {
        for m in &ms {
            let moment = character_moment(m, p, args.n, &grid)?;
            let target = kf_target(&mut table, m, p)?;
            let deviation = (moment - target).abs();
            report.push(&Row {
                p,
                m: m.clone(),
                moment,
                target,
                deviation,
                pass: deviation < args.tol,
            })?;
        }
    }
    Ok(report)
}
