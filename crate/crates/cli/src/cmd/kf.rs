use clap::Args;
use serde::Serialize;

use satake::lie_typea::{aleph, kf_closed_form_n3, kostka_foulkes_with, KostantTable, Weight};

use crate::error::CliError;
use crate::output::Report;

#[derive(Args, Debug, Serialize)]
pub struct KfArgs {
    /// Rank N (2..=6); the closed form exists for N = 3 only.
    #[arg(long = "N", default_value_t = 3)]
    pub n: usize,
    /// Largest index l1, l2.
    #[arg(long, default_value_t = 8)]
    pub lmax: i64,
}

#[derive(Serialize)]
struct Row {
    l1: i64,
    l2: i64,
    definition: String,
    closed_form: Option<String>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    pass: bool,
}

pub fn run(args: &KfArgs) -> Result<Report, CliError> {
    if args.lmax < 0 {
        return Err(CliError::Usage("--lmax must be nonnegative".into()));
    }
    if !(2..=6).contains(&args.n) {
        return Err(CliError::Usage("--N must lie in 2..=6".into()));
    }
    let mut report = Report::new(args)?;
    let mut table = KostantTable::new(args.n)?;
    let zero = Weight::zero(args.n);
    if args.n == 3 {
        for l1 in 0..=args.lmax {
            for l2 in 0..=args.lmax {
                let def = kostka_foulkes_with(&mut table, &aleph(&[l2, l1])?, &zero)?;
                let closed = kf_closed_form_n3(l1, l2)?;
                let ok = def == closed;
                report.push(&Row {
                    l1,
                    l2,
                    definition: def.to_string(),
                    closed_form: Some(closed.to_string()),
                    matches: Some(ok),
                    pass: ok,
                })?;
            }
        }
    } else {
        // only the first index is varied; the others stay zero
        for l1 in 0..=args.lmax {
            let mut l = vec![0; args.n - 1];
            l[args.n - 2] = l1;
            let def = kostka_foulkes_with(&mut table, &aleph(&l)?, &zero)?;
            report.push(&Row {
                l1,
                l2: 0,
                definition: def.to_string(),
                closed_form: None,
                matches: None,
                pass: true,
            })?;
        }
    }
    Ok(report)
}
