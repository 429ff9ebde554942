use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use satake::kernels::intrep::{k_sym_int, k_w4_int, widen_cutoff, IntRepOpts};
use satake::kernels::mellin::{
    beta_identity_check, bessel_mellin_check, j_half_mellin_check, k_sym_mb, k_w4_mb, symmetrize_check,
};
use satake::kernels::{CheckReport, ContourSpec, MbPlan, SpectralParam};

use crate::error::CliError;
use crate::output::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelCheck {
    All,
    Bessel,
    JHalf,
    Beta,
    Symmetrize,
    KSym,
    KW4,
}

#[derive(Args, Debug, Serialize)]
pub struct KernelsArgs {
    #[arg(long, value_enum, default_value_t = KernelCheck::All)]
    pub check: KernelCheck,
    /// Point y1,y2 for symmetrize and k-sym; y1 alone for k-w4.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Option<Vec<f64>>,
    /// Argument for the Bessel check.
    #[arg(long)]
    pub z: Option<f64>,
    #[arg(long)]
    pub d3: Option<u8>,
    /// Imaginary parts of (mu1, mu2); mu3 = -mu1 - mu2.
    #[arg(long, value_delimiter = ',', default_value = "1,0.5", allow_hyphen_values = true)]
    pub mu: Vec<f64>,
    /// Overrides the per-check tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Serialize)]
struct Row {
    check: &'static str,
    point: String,
    lhs: [f64; 2],
    rhs: [f64; 2],
    deviation: f64,
    relative: bool,
    tolerance: f64,
    /// Deviation of the printed variant of the identity, where one differs.
    printed_deviation: Option<f64>,
    /// Change under a narrower cutoff window, integral representations only.
    residual: Option<f64>,
    pass: bool,
}

const SYM_POINTS: [[f64; 2]; 5] = [[0.05, 0.05], [0.5, -2.0], [-1.0, 0.3], [-0.7, -1.3], [0.01, 0.02]];
const KSYM_POINTS: [[f64; 2]; 3] = [[0.3, -2.0], [-0.3, -2.0], [-1.0, 0.5]];
const KW4_POINTS: [f64; 3] = [1.0, -1.0, 2.5];

fn push_report(out: &mut Report, check: &'static str, r: &CheckReport, printed: Option<f64>, residual: Option<f64>) -> Result<(), CliError> {
    for i in 0..r.points.len() {
        out.push(&Row {
            check,
            point: r.points[i].clone(),
            lhs: r.lhs[i],
            rhs: r.rhs[i],
            deviation: r.deviations[i],
            relative: r.relative,
            tolerance: r.tolerance,
            printed_deviation: printed,
            residual,
            pass: r.deviations[i] <= r.tolerance,
        })?;
    }
    Ok(())
}

fn wants(args: &KernelsArgs, c: KernelCheck) -> bool {
    args.check == KernelCheck::All || args.check == c
}

pub fn run(args: &KernelsArgs) -> Result<Report, CliError> {
    if args.mu.len() != 2 {
        return Err(CliError::Usage("--mu takes two values".into()));
    }
    let i = Complex64::i();
    let mu = SpectralParam::from_mu([i * args.mu[0], i * args.mu[1], -i * (args.mu[0] + args.mu[1])])?;
    let tol = |default: f64| args.tol.unwrap_or(default);
    let contour = ContourSpec::default();
    let mut report = Report::new(args)?;

    if wants(args, KernelCheck::Bessel) {
        let zs = args.z.map(|z| vec![z]).unwrap_or_else(|| vec![0.1, 0.5, 1.0, 3.0, 10.0]);
        let ds = args.d3.map(|d| vec![d]).unwrap_or_else(|| vec![0, 1]);
        for &d in &ds {
            for &z in &zs {
                let r = bessel_mellin_check(z, d, &contour, tol(1e-6))?;
                push_report(&mut report, "bessel", &r, None, None)?;
            }
        }
    }
    if wants(args, KernelCheck::JHalf) {
        for d in 0..2 {
            for x in [0.5, 1.0, 4.0] {
                let r = j_half_mellin_check(x, d, tol(1e-6))?;
                push_report(&mut report, "j-half", &r.check, Some(r.printed_deviation), None)?;
            }
        }
    }
    if wants(args, KernelCheck::Beta) {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let points = [
            ([c(0.3, 0.0), c(0.1, 0.0)], c(0.05, 0.0)),
            ([c(0.2, 0.5), c(0.15, -0.3)], c(0.0, 0.4)),
        ];
        for (s, u) in points {
            for d in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                let b = beta_identity_check(s, u, d, tol(1e-6))?;
                report.push(&Row {
                    check: "beta",
                    point: format!("s=({}, {}) u={} d=({}, {})", s[0], s[1], u, d[0], d[1]),
                    lhs: b.integral_side,
                    rhs: b.beta_sum,
                    deviation: b.deviation,
                    relative: true,
                    tolerance: b.tolerance,
                    printed_deviation: None,
                    residual: None,
                    pass: b.pass,
                })?;
            }
        }
    }
    let pair = |v: &Vec<f64>| -> Result<[f64; 2], CliError> {
        match v.as_slice() {
            [a, b] => Ok([*a, *b]),
            _ => Err(CliError::Usage("--y takes y1,y2 here".into())),
        }
    };
    if wants(args, KernelCheck::Symmetrize) {
        let ys = match &args.y {
            Some(v) if args.check != KernelCheck::All => vec![pair(v)?],
            _ => SYM_POINTS.to_vec(),
        };
        for y in ys {
            let r = symmetrize_check(y, &mu, &contour, tol(1e-4))?;
            push_report(&mut report, "symmetrize", &r, None, None)?;
        }
    }
    if wants(args, KernelCheck::KSym) {
        let ys = match &args.y {
            Some(v) if args.check != KernelCheck::All => vec![pair(v)?],
            _ => KSYM_POINTS.to_vec(),
        };
        let plan = MbPlan::new(&mu, &contour)?;
        for y in ys {
            // the residual overstates the error several times over
            let (int, used) = widen_cutoff(&IntRepOpts::sym_default(), tol(1e-3) / 2.0, 640.0, |o| k_sym_int(y, &mu, o))?;
            let mb = k_sym_mb(y, &mu, &plan)?.value;
            let mut r = CheckReport::new("symmetrised kernel: integral vs Mellin-Barnes", tol(1e-3), true);
            r.push(format!("y=({}, {}) cutoff={}", y[0], y[1], used.window[1]), int.value, mb);
            let printed = (int.printed - mb).norm() / mb.norm();
            push_report(&mut report, "k-sym", &r, Some(printed), Some(int.residual / mb.norm()))?;
        }
    }
    if wants(args, KernelCheck::KW4) {
        let ys = match &args.y {
            Some(v) if args.check != KernelCheck::All => vec![*v.first().ok_or_else(|| CliError::Usage("--y is empty".into()))?],
            _ => KW4_POINTS.to_vec(),
        };
        let plan = MbPlan::new(&mu, &contour)?;
        for y in ys {
            let (int, used) = widen_cutoff(&IntRepOpts::w4_default(), tol(1e-2) / 2.0, 256.0, |o| k_w4_int(y, &mu, o))?;
            let mb = k_w4_mb(y, &mu, &plan)?.value;
            let mut r = CheckReport::new("w4 kernel: integral vs Mellin-Barnes", tol(1e-2), true);
            r.push(format!("y={} cutoff={}", y, used.window[1]), int.value, mb);
            let printed = (int.printed - mb).norm() / mb.norm();
            push_report(&mut report, "k-w4", &r, Some(printed), Some(int.residual / mb.norm()))?;
        }
    }
    Ok(report)
}
