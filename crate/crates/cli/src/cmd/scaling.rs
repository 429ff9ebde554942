use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use satake::kernels::spectral::{loglog_slope, main_term_delta};
use satake::kernels::transform::{phi_w4, phi_w6, trivial_bound_w6, HatOpts, HatTransform, PhiOpts};

use super::delta::SpecArgs;
use crate::error::CliError;
use crate::output::{resolve_path, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingCheck {
    All,
    Hat,
    PhiW6,
    PhiW4,
}

#[derive(Args, Debug, Serialize)]
pub struct ScalingArgs {
    #[arg(long, value_enum, default_value_t = ScalingCheck::All)]
    pub check: ScalingCheck,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// T values for the transform sup.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
    pub hat_t: Vec<f64>,
    /// T values for Phi_w6.
    #[arg(long, value_delimiter = ',', default_value = "8,16")]
    pub w6_t: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,1", allow_hyphen_values = true)]
    pub w6_y: Vec<f64>,
    /// Absolute tolerance for Phi_w6, in units of its trivial bound at the
    /// first T; the same absolute tolerance is used at every T.
    #[arg(long, default_value_t = 1e-11)]
    pub w6_tol: f64,
    #[arg(long, default_value_t = 8.0)]
    pub w4_t: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.1,1")]
    pub small_y: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
    pub large_y: Vec<f64>,
    /// Multipliers of y whose maximum forms the envelope.
    #[arg(long, value_delimiter = ',', default_value = "1,1.25")]
    pub window: Vec<f64>,
    /// Allowed excess of a fitted exponent over its target.
    #[arg(long, default_value_t = 0.2)]
    pub slope_tol: f64,
    /// Allowed distance of the y-exponent from +-1/6.
    #[arg(long, default_value_t = 0.05)]
    pub exponent_tol: f64,
    /// Write the transform at the first hat T on its FFT grid to this CSV file.
    #[arg(long)]
    pub dump_hat: Option<PathBuf>,
}

#[derive(Serialize, Default)]
struct Row {
    quantity: String,
    t: Option<f64>,
    y: Option<Vec<f64>>,
    value: Option<[f64; 2]>,
    error: Option<f64>,
    /// |value| + error.
    bound: Option<f64>,
    majorant: Option<f64>,
    majorant_error: Option<f64>,
    /// Half-side of the square in x carrying the transform.
    support: Option<f64>,
    slope: Option<f64>,
    target: Option<String>,
    pass: Option<bool>,
}

fn hat_for(args: &ScalingArgs, t: f64) -> Result<HatTransform, CliError> {
    Ok(HatTransform::new(&args.spec.spec(t)?, &HatOpts::default())?)
}

fn run_hat(args: &ScalingArgs, report: &mut Report) -> Result<(), CliError> {
    let mut sups = Vec::new();
    for (k, &t) in args.hat_t.iter().enumerate() {
        let hat = hat_for(args, t)?;
        let grid = hat.grid();
        let sup = grid.sup();
        // with h spec of one sign the peak sits at 0 and equals a multiple of the main term
        let delta = main_term_delta(&args.spec.spec(t)?, 0.1)?;
        let expect = -delta.signed * std::f64::consts::PI.powi(4) / (32.0 * t.powi(3));
        let agree = (hat.peak().re - expect).abs() <= 1e-6 * expect.abs() && (sup - hat.peak().norm()).abs() <= 1e-9 * sup;
        report.push(&Row {
            quantity: "hat_sup".into(),
            t: Some(t),
            value: Some([hat.peak().re, hat.peak().im]),
            bound: Some(sup),
            support: Some(hat.support()),
            pass: Some(agree),
            ..Row::default()
        })?;
        sups.push(sup);
        if k == 0 {
            if let Some(path) = &args.dump_hat {
                let w = BufWriter::new(File::create(resolve_path(path))?);
                grid.write_csv(w, hat.support())?;
            }
        }
    }
    if sups.len() >= 2 {
        let slope = loglog_slope(&args.hat_t, &sups);
        let target = 2.0 - 2.0 * args.spec.eps;
        report.push(&Row {
            quantity: "hat_sup_slope".into(),
            slope: Some(slope),
            target: Some(format!("<= {}", target + args.slope_tol)),
            pass: Some(slope <= target + args.slope_tol),
            ..Row::default()
        })?;
    }
    Ok(())
}

fn run_w6(args: &ScalingArgs, report: &mut Report) -> Result<(), CliError> {
    let y = match args.w6_y.as_slice() {
        [a, b] => [*a, *b],
        _ => return Err(CliError::Usage("--w6-y takes y1,y2".into())),
    };
    let mut absolute = None;
    let (mut bounds, mut majorants) = (Vec::new(), Vec::new());
    for &t in &args.w6_t {
        let hat = hat_for(args, t)?;
        let trivial = trivial_bound_w6(&hat);
        let abs = *absolute.get_or_insert(args.w6_tol * trivial);
        let signed = phi_w6(
            &hat,
            y,
            &PhiOpts {
                abs_tol: abs / trivial,
                rel_tol: 1e-9,
                modulus: false,
            },
        )?;
        let major = phi_w6(
            &hat,
            y,
            &PhiOpts {
                modulus: true,
                rel_tol: 5e-2,
                ..PhiOpts::default()
            },
        )?;
        let bound = signed.value.norm() + signed.error;
        bounds.push(bound);
        majorants.push(major.value.re);
        report.push(&Row {
            quantity: "phi_w6".into(),
            t: Some(t),
            y: Some(y.to_vec()),
            value: Some([signed.value.re, signed.value.im]),
            error: Some(signed.error),
            bound: Some(bound),
            majorant: Some(major.value.re),
            majorant_error: Some(major.error),
            pass: Some(signed.converged),
            ..Row::default()
        })?;
    }
    if bounds.len() >= 2 {
        let target = 3.0 + args.spec.eps;
        let slope = loglog_slope(&args.w6_t, &bounds);
        report.push(&Row {
            quantity: "phi_w6_slope".into(),
            slope: Some(slope),
            target: Some(format!("<= {}", target + args.slope_tol)),
            pass: Some(slope <= target + args.slope_tol),
            ..Row::default()
        })?;
        report.push(&Row {
            quantity: "phi_w6_majorant_slope".into(),
            slope: Some(loglog_slope(&args.w6_t, &majorants)),
            ..Row::default()
        })?;
    }
    Ok(())
}

fn run_w4(args: &ScalingArgs, report: &mut Report) -> Result<(), CliError> {
    if args.window.is_empty() {
        return Err(CliError::Usage("--window needs at least one multiplier".into()));
    }
    let hat = hat_for(args, args.w4_t)?;
    let opts = PhiOpts {
        modulus: true,
        rel_tol: 5e-2,
        ..PhiOpts::default()
    };
    let mut cache: Vec<(f64, f64)> = Vec::new();
    let mut envelope = |y: f64| -> Result<f64, CliError> {
        if let Some(&(_, v)) = cache.iter().find(|c| c.0 == y) {
            return Ok(v);
        }
        let mut best = 0.0f64;
        for w in &args.window {
            best = best.max(phi_w4(&hat, y * w, &opts)?.value.re);
        }
        cache.push((y, best));
        Ok(best)
    };
    let sixth = 1.0 / 6.0;
    for (name, ys) in [("small", &args.small_y), ("large", &args.large_y)] {
        let mut env = Vec::new();
        for &y in ys {
            let e = envelope(y)?;
            let signed = phi_w4(&hat, y, &PhiOpts::default())?;
            report.push(&Row {
                quantity: format!("phi_w4_{}_y", name),
                t: Some(args.w4_t),
                y: Some(vec![y]),
                value: Some([signed.value.re, signed.value.im]),
                error: Some(signed.error),
                bound: Some(signed.value.norm() + signed.error),
                majorant: Some(e),
                ..Row::default()
            })?;
            env.push(e);
        }
        if ys.len() >= 2 {
            let slope = loglog_slope(ys, &env);
            let ok = (slope.abs() - sixth).abs() <= args.exponent_tol;
            report.push(&Row {
                quantity: format!("phi_w4_{}_y_exponent", name),
                t: Some(args.w4_t),
                slope: Some(slope),
                target: Some(format!("+-1/6 +- {}", args.exponent_tol)),
                pass: Some(ok),
                ..Row::default()
            })?;
        }
    }
    Ok(())
}

pub fn run(args: &ScalingArgs) -> Result<Report, CliError> {
    let mut report = Report::new(args)?;
    let all = args.check == ScalingCheck::All;
    if all || args.check == ScalingCheck::Hat {
        run_hat(args, &mut report)?;
    }
    if all || args.check == ScalingCheck::PhiW6 {
        run_w6(args, &mut report)?;
    }
    if all || args.check == ScalingCheck::PhiW4 {
        run_w4(args, &mut report)?;
    }
    Ok(report)
}
