//! Real-variable integral representations of the symmetrised long-element
//! kernel and the w4 kernel.
//!
//! Both integrands have unit-modulus spectral factors and converge only
//! through the oscillation of the Bessel or sine factor. The oscillatory
//! factor is damped by a smooth cutoff in its own argument, so the thin
//! regions where that argument stays small are kept in full. The residual
//! reported is the change when the cutoff band is shortened by a quarter.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::mellin::Sign;
use super::quad::{adaptive, graded_breaks, smooth_window, AdaptiveOpts};
use super::spectral::SpectralParam;
use crate::error::{Error, Result};
use crate::special::{bessel_k0, bessel_y0};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntRepOpts {
    /// Cutoff in the oscillation variable: 1 below window[0], 0 above window[1].
    pub window: [f64; 2],
    /// Half-width of the integration box in u = log z.
    pub reach: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl IntRepOpts {
    pub fn sym_default() -> Self {
        IntRepOpts {
            window: [5.0, 80.0],
            reach: 36.0,
            abs_tol: 1e-9,
            rel_tol: 1e-8,
        }
    }

    pub fn w4_default() -> Self {
        IntRepOpts {
            window: [4.0, 16.0],
            reach: 90.0,
            abs_tol: 1e-9,
            rel_tol: 1e-8,
        }
    }

    fn narrowed(&self) -> Self {
        IntRepOpts {
            window: [self.window[0], self.window[0] + 0.75 * (self.window[1] - self.window[0])],
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.window[0] > 0.0 && self.window[1] > self.window[0] && self.reach > 0.0) {
            return Err(Error::Domain(format!("bad cutoff {:?} or reach {}", self.window, self.reach)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntRepValue {
    pub value: Complex64,
    /// The same integral with the constant and kernel exactly as printed.
    pub printed: Complex64,
    pub residual: f64,
    pub quadrature_error: f64,
    pub converged: bool,
    /// Largest |kernel| / log(3 + 1/|z4|) seen; only for the long element.
    pub envelope_ratio: Option<f64>,
}

fn check_imaginary(mu: &SpectralParam) -> Result<()> {
    if !mu.is_imaginary() {
        return Err(Error::Domain("integral representations need Re mu = 0".into()));
    }
    Ok(())
}

/// |1 + eta e^{u/2}| and sgn(1 + eta e^u), accurate near u = 0.
fn shifted_root(u: f64, eta: f64) -> (f64, f64) {
    if eta > 0.0 {
        (1.0 + (u / 2.0).exp(), 1.0)
    } else {
        ((u / 2.0).exp_m1().abs(), if u > 0.0 { -1.0 } else { 1.0 })
    }
}

const ETAS: [f64; 2] = [1.0, -1.0];

/// Nested adaptive quadrature over the box, split in u1 for parallel work.
fn nested<const K: usize, F>(f: &F, outer_sing: &[f64], inner_sing: impl Fn(f64) -> Vec<f64> + Sync, opts: &IntRepOpts) -> ([Complex64; K], f64, bool)
where
    F: Fn(f64, f64) -> [Complex64; K] + Sync,
{
    let r = opts.reach;
    let outer = graded_breaks(-r, r, outer_sing, 1.0, 10);
    let pieces = outer.len() - 1;
    let inner_opts = AdaptiveOpts {
        abs_tol: opts.abs_tol / (4.0 * r),
        rel_tol: opts.rel_tol,
        max_intervals: 4000,
    };
    let outer_opts = AdaptiveOpts {
        abs_tol: opts.abs_tol / pieces as f64,
        rel_tol: opts.rel_tol,
        max_intervals: 2000,
    };
    let parts: Vec<([Complex64; K], f64, bool)> = outer
        .par_windows(2)
        .map(|w| {
            let mut ok = true;
            let res = adaptive(
                |u1| {
                    let breaks = graded_breaks(-r, r, &inner_sing(u1), 1.0, 10);
                    let inner = adaptive(|u2| f(u1, u2), &breaks, inner_opts);
                    ok &= inner.converged;
                    inner.value
                },
                w,
                outer_opts,
            );
            (res.value, res.error, ok && res.converged)
        })
        .collect();
    let mut total = [Complex64::new(0.0, 0.0); K];
    let mut err = 0.0;
    let mut converged = true;
    for (v, e, c) in parts {
        for k in 0..K {
            total[k] += v[k];
        }
        err += e;
        converged &= c;
    }
    (total, err, converged)
}

fn k_sym_parts(y: [f64; 2], mu: &SpectralParam, opts: &IntRepOpts) -> ([Complex64; 4], f64, bool, f64) {
    let nu = mu.nu();
    let (y1, y2) = (y[0].abs(), y[1].abs());
    let lr = (y2 / y1).ln();
    // nonnegative floats order like their bit patterns
    let envelope = AtomicU64::new(0);
    let f = |u1: f64, u2: f64| {
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        let mut env = 0.0f64;
        let w3 = u2 - u1 - 2.0 * lr;
        for e1 in ETAS {
            let (f1, s1) = shifted_root(u1, e1);
            for e2 in ETAS {
                let (f2, s2) = shifted_root(u2, e2);
                for e3 in ETAS {
                    let (f3, s3) = shifted_root(w3, e3);
                    let z4 = f1 * f2 * f3 * y2 * (-u2 / 2.0).exp();
                    if z4 == 0.0 {
                        continue;
                    }
                    let x = 4.0 * PI * z4.sqrt();
                    let win = smooth_window(x, opts.window[0], opts.window[1]);
                    if win == 0.0 {
                        continue;
                    }
                    let k0 = if x < 60.0 { 2.0 / PI * bessel_k0(x) } else { 0.0 };
                    let yy = bessel_y0(x);
                    env = env.max((k0.abs() + yy.abs()) / (3.0 + 1.0 / z4).ln());
                    let sg = s1 * s2 * s3;
                    for d1 in 0..2 {
                        for d2 in 0..2 {
                            let d3 = d1 ^ d2;
                            let mut coef = if d1 == 1 { e1 * e3 } else { 1.0 };
                            if d2 == 1 {
                                coef *= e2;
                            }
                            if (d1 + d2) % 2 == 1 {
                                coef *= sg;
                            }
                            let kern = if d3 == 0 { k0 - yy } else { k0 + yy };
                            acc[2 * d1 + d2] += Complex64::new(coef * kern * win, 0.0);
                        }
                    }
                }
            }
        }
        envelope.fetch_max(env.to_bits(), Ordering::Relaxed);
        let phase = (-nu[0] * (lr + 1.5 * u1) - nu[1] * (-lr + 1.5 * u2)).exp();
        acc.map(|a| a * phase)
    };
    let (v, e, c) = nested(&f, &[0.0, -2.0 * lr], |u1| vec![0.0, u1 + 2.0 * lr], opts);
    let env = f64::from_bits(envelope.into_inner());
    (v, e, c, env)
}

fn combine_sym(parts: &[Complex64; 4], alpha: [Sign; 2]) -> Complex64 {
    let mut v = Complex64::new(0.0, 0.0);
    for d1 in 0..2 {
        for d2 in 0..2 {
            let mut w = 1.0;
            if d1 == 1 {
                w *= alpha[0].value();
            }
            if d2 == 1 {
                w *= alpha[1].value();
            }
            v += parts[2 * d1 + d2] * w;
        }
    }
    v
}

/// K^sym_{w6}(y; mu) from its double integral over (z1, z2), alpha the signs
/// of y. `printed` uses the constant 1/(6144 pi); `value` uses 1/(1536 pi).
pub fn k_sym_int(y: [f64; 2], mu: &SpectralParam, opts: &IntRepOpts) -> Result<IntRepValue> {
    check_imaginary(mu)?;
    opts.validate()?;
    if y.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::Domain("y must be finite and nonzero".into()));
    }
    let alpha = [Sign::of(y[0]), Sign::of(y[1])];
    let (a, err, conv, env) = k_sym_parts(y, mu, opts);
    let (b, _, conv_b, _) = k_sym_parts(y, mu, &opts.narrowed());
    let raw = combine_sym(&a, alpha);
    let raw_wide = combine_sym(&b, alpha);
    let k = 1.0 / (1536.0 * PI);
    Ok(IntRepValue {
        value: raw * k,
        printed: raw / (6144.0 * PI),
        residual: (raw - raw_wide).norm() * k,
        quadrature_error: err * k,
        converged: conv && conv_b,
        envelope_ratio: Some(env),
    })
}

/// Re-evaluates with the upper cutoff edge doubled until the residual is
/// below `rel_target` times the value or the edge would pass `max_upper`.
/// Some sign patterns of y cancel slowly and need a much longer band.
pub fn widen_cutoff<F>(opts: &IntRepOpts, rel_target: f64, max_upper: f64, eval: F) -> Result<(IntRepValue, IntRepOpts)>
where
    F: Fn(&IntRepOpts) -> Result<IntRepValue>,
{
    let mut o = *opts;
    loop {
        let v = eval(&o)?;
        if v.residual <= rel_target * v.value.norm() || 2.0 * o.window[1] > max_upper {
            return Ok((v, o));
        }
        o.window[1] *= 2.0;
    }
}

/// Corrected terms (d = 0, 1) then printed terms (d = 0, 1).
fn k_w4_parts(y: f64, mu: &SpectralParam, opts: &IntRepOpts) -> ([Complex64; 4], f64, bool) {
    let m = mu.mu();
    let ycube = y.abs().cbrt();
    let f = |u1: f64, u2: f64| {
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for e1 in ETAS {
            let (f1, _) = shifted_root(u1, e1);
            for e2 in ETAS {
                let (f2, s2) = shifted_root(u2, e2);
                let x = ycube * f1.powf(2.0 / 3.0) * f2 * (-(u1 + u2) / 6.0).exp();
                let win = smooth_window(x, opts.window[0], opts.window[1]);
                if win == 0.0 {
                    continue;
                }
                let a = (-m[1] * f1.ln() - m[0] * u1 / 2.0 - m[1] * u2 / 2.0).exp() * win;
                let (sn, cs) = (2.0 * PI * x).sin_cos();
                let c1 = e1 * e2 * s2;
                acc[0] += a * cs;
                acc[1] += a * (c1 * sn);
                acc[2] += a * (x.sqrt() * sn);
                acc[3] += a * (c1 * cs / x.sqrt());
            }
        }
        acc
    };
    nested(&f, &[0.0], |_| vec![0.0], opts)
}

/// K_{w4}(y; mu) from its double integral, alpha the sign of y.
pub fn k_w4_int(y: f64, mu: &SpectralParam, opts: &IntRepOpts) -> Result<IntRepValue> {
    check_imaginary(mu)?;
    opts.validate()?;
    if y == 0.0 || !y.is_finite() {
        return Err(Error::Domain("y must be finite and nonzero".into()));
    }
    let alpha = Sign::of(y).value();
    let corrected = |p: &[Complex64; 4]| p[0] + Complex64::new(0.0, -alpha) * p[1];
    let printed = |p: &[Complex64; 4]| -(p[2] - alpha * p[3]);
    let (a, err, conv) = k_w4_parts(y, mu, opts);
    let (b, _, conv_b) = k_w4_parts(y, mu, &opts.narrowed());
    let k = 1.0 / (8192.0 * 9.0 * PI.powi(5));
    Ok(IntRepValue {
        value: corrected(&a) * k,
        printed: printed(&a) * k,
        residual: (corrected(&a) - corrected(&b)).norm() * k,
        quadrature_error: err * k,
        converged: conv && conv_b,
        envelope_ratio: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_root_near_one() {
        let (f, s) = shifted_root(1e-12, -1.0);
        assert!((f - 5e-13).abs() < 1e-24);
        assert_eq!(s, -1.0);
        assert_eq!(shifted_root(-0.3, -1.0).1, 1.0);
        assert_eq!(shifted_root(0.0, 1.0), (2.0, 1.0));
    }

    #[test]
    fn rejects_non_tempered() {
        let mu = SpectralParam::from_nu(Complex64::new(0.1, 0.2), Complex64::new(0.0, 0.3));
        assert!(k_w4_int(1.0, &mu, &IntRepOpts::w4_default()).is_err());
        let mu = SpectralParam::imaginary(0.3, 0.2);
        assert!(k_sym_int([0.0, 1.0], &mu, &IntRepOpts::sym_default()).is_err());
    }
}
