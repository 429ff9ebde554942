//! Gamma-ratio kernels and their Mellin-Barnes integrals.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use super::contour::{shifted_poles, Contour, ContourSpec};
use super::spectral::SpectralParam;
use super::CheckReport;
use crate::error::{Error, Result};
use crate::special::{bessel_k0, bessel_y0, gamma, ln_gamma, rgamma};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_gamma_arg(z: Complex64) -> Result<()> {
    let k = z.re.round();
    if k <= 0.0 && (z - c(k)).norm() < 1e-12 {
        return Err(Error::Pole(format!("Gamma({})", z)));
    }
    Ok(())
}

fn lg(z: Complex64) -> Complex64 {
    ln_gamma(z)
}

/// Gamma(s1 + s2)^{-1} prod_j Gamma(s1 - mu_j) Gamma(s2 + mu_j).
pub fn g_meromorphic(s: [Complex64; 2], mu: &SpectralParam) -> Result<Complex64> {
    let mut v = rgamma(s[0] + s[1]);
    for m in mu.mu() {
        check_gamma_arg(s[0] - m)?;
        check_gamma_arg(s[1] + m)?;
        v *= gamma(s[0] - m) * gamma(s[1] + m);
    }
    Ok(v)
}

/// The single-variable kernel of the w4 Weyl element, with the sign of the
/// second product selected by `sign`.
pub fn g_tilde(s: Complex64, mu: &SpectralParam, sign: Sign) -> Result<Complex64> {
    let mut e1 = c(0.0);
    let mut e2 = c(0.0);
    for m in mu.mu() {
        check_gamma_arg((s - m) / 2.0)?;
        check_gamma_arg((1.0 + s - m) / 2.0)?;
        e1 += lg((s - m) / 2.0) - lg((1.0 - s + m) / 2.0);
        e2 += lg((1.0 + s - m) / 2.0) - lg((2.0 - s + m) / 2.0);
    }
    let pref = (-3.0 * s * PI.ln()).exp() / (12288.0 * PI.powf(3.5));
    Ok(pref * (e1.exp() + Complex64::new(0.0, sign.value()) * e2.exp()))
}

fn half_angle(nu: Complex64) -> (Complex64, Complex64) {
    let z = nu * (1.5 * PI);
    (z.cos(), z.sin())
}

/// Prefactor of the trigonometric factor that does not depend on s.
fn trig_prefactor(mu: &SpectralParam, alpha: [Sign; 2]) -> Result<Complex64> {
    let nu = mu.nu();
    let cs: Vec<(Complex64, Complex64)> = nu.iter().map(|&n| half_angle(n)).collect();
    let wall = |k: usize| -> Result<Complex64> {
        if cs[k].1.norm() < 1e-10 {
            return Err(Error::Domain(format!("nu_{} = {} is on a Weyl chamber wall", k + 1, nu[k])));
        }
        Ok(cs[k].1)
    };
    Ok(match alpha {
        [Sign::Plus, Sign::Plus] => cs[0].0 * cs[1].0 * cs[2].0 / (24.0 * PI * PI),
        [Sign::Plus, Sign::Minus] => -cs[1].0 / (32.0 * PI * PI * wall(0)? * wall(2)?),
        [Sign::Minus, Sign::Plus] => -cs[0].0 / (32.0 * PI * PI * wall(1)? * wall(2)?),
        [Sign::Minus, Sign::Minus] => cs[2].0 / (32.0 * PI * PI * wall(1)? * wall(0)?),
    })
}

/// S^{alpha1 alpha2}(s, mu).
pub fn s_trig(s: [Complex64; 2], mu: &SpectralParam, alpha: [Sign; 2]) -> Result<Complex64> {
    let pref = trig_prefactor(mu, alpha)?;
    let m = mu.mu();
    let sp = |z: Complex64| (z * PI).sin();
    let den = sp(s[0] + s[1]);
    let needs_den = matches!(alpha, [Sign::Plus, Sign::Minus] | [Sign::Minus, Sign::Plus]);
    if needs_den && den.norm() < 1e-12 {
        return Err(Error::Pole(format!("sin(pi(s1+s2)) at s1+s2 = {}", s[0] + s[1])));
    }
    Ok(match alpha {
        [Sign::Plus, Sign::Plus] => pref,
        [Sign::Plus, Sign::Minus] => pref * sp(s[0] - m[0]) * sp(s[1] + m[1]) * sp(s[1] + m[2]) / den,
        [Sign::Minus, Sign::Plus] => pref * sp(s[0] - m[0]) * sp(s[0] - m[1]) * sp(s[1] + m[2]) / den,
        [Sign::Minus, Sign::Minus] => pref * sp(s[0] - m[1]) * sp(s[1] + m[1]),
    })
}

fn sym_factor(s1: Complex64, mu: &[Complex64; 3], d: u8, sign: f64) -> Complex64 {
    let d = d as f64;
    mu.iter()
        .map(|&m| lg((d + s1 - sign * m) / 2.0) - lg((1.0 + d - s1 + sign * m) / 2.0))
        .sum()
}

fn sym_coupling(s: Complex64, d3: u8) -> Complex64 {
    let d = d3 as f64;
    (lg((1.0 + d - s) / 2.0) - lg((d + s) / 2.0)).exp()
}

fn alpha_weight(alpha: [Sign; 2], d1: u8, d2: u8) -> f64 {
    let mut w = 1.0;
    if d1 == 1 {
        w *= alpha[0].value();
    }
    if d2 == 1 {
        w *= alpha[1].value();
    }
    if d1 * d2 == 1 {
        w = -w;
    }
    w
}

/// The Weyl-symmetrised double kernel: a four-term sum of gamma ratios.
pub fn g_alpha_sym(s: [Complex64; 2], mu: &SpectralParam, alpha: [Sign; 2]) -> Result<Complex64> {
    let m = mu.mu();
    for &mj in &m {
        for d in 0..2 {
            check_gamma_arg((d as f64 + s[0] - mj) / 2.0)?;
            check_gamma_arg((d as f64 + s[1] + mj) / 2.0)?;
        }
    }
    let mut total = c(0.0);
    for d1 in 0..2u8 {
        for d2 in 0..2u8 {
            let d3 = d1 ^ d2;
            check_gamma_arg((1.0 + d3 as f64 - s[0] - s[1]) / 2.0)?;
            let e = sym_factor(s[0], &m, d1, 1.0) + sym_factor(s[1], &m, d2, -1.0);
            total += alpha_weight(alpha, d1, d2) * e.exp() * sym_coupling(s[0] + s[1], d3);
        }
    }
    Ok(total * PI.sqrt() / 768.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MbValue {
    pub value: Complex64,
    /// Contribution of the outermost ray panels.
    pub tail: f64,
}

/// Contours and s-only coupling tables shared by all kernels at one spectral
/// parameter (and its Weyl images, which have the same poles).
pub struct MbPlan {
    pub spec: ContourSpec,
    pub s1: Contour,
    pub s2: Contour,
    sym: [OnceLock<Vec<Complex64>>; 2],
    inv_gamma: OnceLock<Vec<Complex64>>,
    refl_gamma: OnceLock<Vec<Complex64>>,
}

impl MbPlan {
    pub fn new(mu: &SpectralParam, spec: &ContourSpec) -> Result<MbPlan> {
        let m = mu.mu();
        let depth = spec.ray_abscissa.abs().ceil() as usize + 3;
        let p1 = shifted_poles(&m, depth);
        let p2 = shifted_poles(&m.map(|x| -x), depth);
        let staged = spec.staged();
        let s1 = Contour::build(spec, &p1)?;
        let s2 = Contour::build(
            &ContourSpec {
                height: Some(s1.height),
                ..staged
            },
            &p2,
        )?;
        Ok(MbPlan {
            spec: *spec,
            s1,
            s2,
            sym: [OnceLock::new(), OnceLock::new()],
            inv_gamma: OnceLock::new(),
            refl_gamma: OnceLock::new(),
        })
    }

    fn table<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        let mut t = Vec::with_capacity(self.s1.len() * self.s2.len());
        for a in &self.s1.nodes {
            for b in &self.s2.nodes {
                t.push(f(a + b));
            }
        }
        t
    }

    fn sym_table(&self, d3: u8) -> &[Complex64] {
        self.sym[d3 as usize].get_or_init(|| self.table(|s| sym_coupling(s, d3)))
    }

    fn inv_gamma_table(&self) -> &[Complex64] {
        self.inv_gamma.get_or_init(|| self.table(|s| (-lg(s)).exp()))
    }

    fn refl_gamma_table(&self) -> &[Complex64] {
        self.refl_gamma.get_or_init(|| self.table(|s| lg(1.0 - s).exp()))
    }

    /// sum_ij w1_i w2_j f_i T_ij g_j, and the part with i or j on an outer panel.
    fn contract(&self, f: &[Complex64], table: &[Complex64], g: &[Complex64]) -> (Complex64, Complex64) {
        let n2 = self.s2.len();
        let mut total = c(0.0);
        let mut tail = c(0.0);
        for (i, fi) in f.iter().enumerate() {
            let row = &table[i * n2..(i + 1) * n2];
            let mut acc = c(0.0);
            let mut acc_outer = c(0.0);
            for ((t, gj), o) in row.iter().zip(g).zip(&self.s2.outer) {
                let v = t * gj;
                acc += v;
                if *o {
                    acc_outer += v;
                }
            }
            let wf = fi * self.s1.weights[i];
            total += wf * acc;
            tail += if self.s1.outer[i] { wf * acc } else { wf * acc_outer };
        }
        (total, tail)
    }

    fn weighted_s2(&self, g: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
        self.s2.nodes.iter().zip(&self.s2.weights).map(|(s, w)| g(*s) * w).collect()
    }

    fn on_s1(&self, f: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
        self.s1.nodes.iter().map(|s| f(*s)).collect()
    }
}

fn check_y(y: &[f64]) -> Result<()> {
    if y.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::Domain("kernel arguments must be finite and nonzero".into()));
    }
    Ok(())
}

/// K^{alpha1 alpha2}_{w6}(y; mu) with alpha the signs of y.
pub fn k_w6_mb(y: [f64; 2], mu: &SpectralParam, plan: &MbPlan) -> Result<MbValue> {
    check_y(&y)?;
    let alpha = [Sign::of(y[0]), Sign::of(y[1])];
    let pref = trig_prefactor(mu, alpha)?;
    let m = mu.mu();
    let l1 = (4.0 * PI * PI * y[0].abs()).ln();
    let l2 = (4.0 * PI * PI * y[1].abs()).ln();
    let (f, g, table): (Vec<Complex64>, Vec<Complex64>, &[Complex64]) = match alpha {
        [Sign::Plus, Sign::Plus] => (
            plan.on_s1(|s| (-s * l1 + lg(s - m[0]) + lg(s - m[1]) + lg(s - m[2])).exp()),
            plan.weighted_s2(|s| (-s * l2 + lg(s + m[0]) + lg(s + m[1]) + lg(s + m[2])).exp()),
            plan.inv_gamma_table(),
        ),
        [Sign::Plus, Sign::Minus] => (
            plan.on_s1(|s| (-s * l1 - lg(1.0 - s + m[0]) + lg(s - m[1]) + lg(s - m[2])).exp()),
            plan.weighted_s2(|s| (-s * l2 + lg(s + m[0]) - lg(1.0 - s - m[1]) - lg(1.0 - s - m[2])).exp()),
            plan.refl_gamma_table(),
        ),
        [Sign::Minus, Sign::Plus] => (
            plan.on_s1(|s| (-s * l1 - lg(1.0 - s + m[0]) - lg(1.0 - s + m[1]) + lg(s - m[2])).exp()),
            plan.weighted_s2(|s| (-s * l2 + lg(s + m[0]) + lg(s + m[1]) - lg(1.0 - s - m[2])).exp()),
            plan.refl_gamma_table(),
        ),
        [Sign::Minus, Sign::Minus] => (
            plan.on_s1(|s| (-s * l1 + lg(s - m[0]) - lg(1.0 - s + m[1]) + lg(s - m[2])).exp()),
            plan.weighted_s2(|s| (-s * l2 + lg(s + m[0]) - lg(1.0 - s - m[1]) + lg(s + m[2])).exp()),
            plan.inv_gamma_table(),
        ),
    };
    // the sine factors were folded into the gammas by reflection, gaining pi^2
    let fold = if alpha == [Sign::Plus, Sign::Plus] { 1.0 } else { PI * PI };
    let (v, t) = plan.contract(&f, table, &g);
    Ok(MbValue {
        value: v * pref * fold,
        tail: (t * pref * fold).norm(),
    })
}

/// The symmetrised kernel K^sym_{w6}(alpha y; mu), alpha the signs of y.
pub fn k_sym_mb(y: [f64; 2], mu: &SpectralParam, plan: &MbPlan) -> Result<MbValue> {
    check_y(&y)?;
    let alpha = [Sign::of(y[0]), Sign::of(y[1])];
    let m = mu.mu();
    let l1 = (PI * PI * y[0].abs()).ln();
    let l2 = (PI * PI * y[1].abs()).ln();
    let f: Vec<Vec<Complex64>> = (0..2u8)
        .map(|d| plan.on_s1(|s| (-s * l1 + sym_factor(s, &m, d, 1.0)).exp()))
        .collect();
    let g: Vec<Vec<Complex64>> = (0..2u8)
        .map(|d| plan.weighted_s2(|s| (-s * l2 + sym_factor(s, &m, d, -1.0)).exp()))
        .collect();
    let mut total = c(0.0);
    let mut tail = c(0.0);
    for d1 in 0..2u8 {
        for d2 in 0..2u8 {
            let (v, t) = plan.contract(&f[d1 as usize], plan.sym_table(d1 ^ d2), &g[d2 as usize]);
            let w = alpha_weight(alpha, d1, d2);
            total += w * v;
            tail += w * t;
        }
    }
    let k = PI.sqrt() / 768.0;
    Ok(MbValue {
        value: total * k,
        tail: tail.norm() * k,
    })
}

/// K_{w4}(y; mu), alpha the sign of y.
pub fn k_w4_mb(y: f64, mu: &SpectralParam, plan: &MbPlan) -> Result<MbValue> {
    check_y(&[y])?;
    let sign = Sign::of(y);
    let m = mu.mu();
    let ly = y.abs().ln();
    let lpi = PI.ln();
    let (value, tail) = plan.s1.integrate(|s| {
        let mut e1 = -s * (ly + 3.0 * lpi);
        let mut e2 = e1;
        for &mj in &m {
            e1 += lg((s - mj) / 2.0) - lg((1.0 - s + mj) / 2.0);
            e2 += lg((1.0 + s - mj) / 2.0) - lg((2.0 - s + mj) / 2.0);
        }
        e1.exp() + Complex64::new(0.0, sign.value()) * e2.exp()
    });
    let k = 1.0 / (12288.0 * PI.powf(3.5));
    Ok(MbValue {
        value: value * k,
        tail: tail * k,
    })
}

const WEYL_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

/// Average of K_{w6} over the Weyl orbit of mu against the symmetrised kernel.
pub fn symmetrize_check(y: [f64; 2], mu: &SpectralParam, spec: &ContourSpec, tol: f64) -> Result<CheckReport> {
    let plan = MbPlan::new(mu, spec)?;
    let mut lhs = c(0.0);
    for p in WEYL_PERMS {
        lhs += k_w6_mb(y, &mu.permute_mu(p), &plan)?.value;
    }
    lhs /= 6.0;
    let rhs = k_sym_mb(y, mu, &plan)?.value;
    let mut r = CheckReport::new("weyl-symmetrised long-element kernel", tol, true);
    r.contour = Some(*spec);
    r.push(format!("y=({}, {}) mu={}", y[0], y[1], fmt_mu(mu)), lhs, rhs);
    Ok(r)
}

pub(crate) fn fmt_mu(mu: &SpectralParam) -> String {
    let m = mu.mu();
    format!("({}, {}, {})", m[0], m[1], m[2])
}

/// (1/2 pi i) int Gamma(d/2 + s)^2 / Gamma((1+d)/2 - s)^2 z^{-s} ds against
/// (2/pi) K0(4 z^{1/4}) - (-1)^d Y0(4 z^{1/4}).
pub fn bessel_mellin_check(z: f64, d3: u8, spec: &ContourSpec, tol: f64) -> Result<CheckReport> {
    if !(z > 0.0) || d3 > 1 {
        return Err(Error::Domain(format!("need z > 0 and d3 in {{0,1}}, got z={}, d3={}", z, d3)));
    }
    let d = d3 as f64;
    let poles = shifted_poles(&[c(-d / 2.0)], spec.ray_abscissa.abs().ceil() as usize + 3);
    let contour = Contour::build(spec, &poles)?;
    let lz = z.ln();
    let (lhs, _) = contour.integrate(|s| (2.0 * lg(d / 2.0 + s) - 2.0 * lg((1.0 + d) / 2.0 - s) - s * lz).exp());
    let x = 4.0 * z.powf(0.25);
    let sign = if d3 == 0 { 1.0 } else { -1.0 };
    let rhs = c(2.0 / PI * bessel_k0(x) - sign * bessel_y0(x));
    let mut r = CheckReport::new("Mellin inverse of a squared gamma ratio (K0/Y0)", tol, false);
    r.contour = Some(*spec);
    r.push(format!("z={} d3={}", z, d3), lhs, rhs);
    Ok(r)
}

/// Closed form of (1/2 pi i) int Gamma(d - 1/2 + s) / Gamma(1 - s) x^{-s} ds.
pub fn j_half_closed_form(x: f64, d: u8) -> f64 {
    let dd = d as f64;
    PI.powf(-0.5) * x.powf(-(1.0 - dd) / 2.0) * (PI * (1.0 - dd) / 2.0 + 2.0 * x.sqrt()).sin()
}

/// The closed form as printed: pi^{-1/2} x^{-1/4} sin(pi d / 2 + 2 sqrt x).
pub fn j_half_printed_form(x: f64, d: u8) -> f64 {
    PI.powf(-0.5) * x.powf(-0.25) * (PI * d as f64 / 2.0 + 2.0 * x.sqrt()).sin()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JHalfReport {
    pub check: CheckReport,
    /// Deviation of the printed closed form from the contour integral.
    pub printed_deviation: f64,
}

pub fn j_half_mellin_check(x: f64, d: u8, tol: f64) -> Result<JHalfReport> {
    if !(x > 0.0) || d > 1 {
        return Err(Error::Domain(format!("need x > 0 and d in {{0,1}}, got x={}, d={}", x, d)));
    }
    let spec = ContourSpec {
        abscissa: 0.75,
        ..ContourSpec::default()
    };
    let dd = d as f64;
    let poles = shifted_poles(&[c(0.5 - dd)], 8);
    let contour = Contour::build(&spec, &poles)?;
    let lx = x.ln();
    let (lhs, _) = contour.integrate(|s| (lg(dd - 0.5 + s) - lg(1.0 - s) - s * lx).exp());
    let mut check = CheckReport::new("Mellin inverse of Gamma(d-1/2+s)/Gamma(1-s)", tol, false);
    check.contour = Some(spec);
    check.push(format!("x={} d={}", x, d), lhs, c(j_half_closed_form(x, d)));
    let printed_deviation = (lhs - j_half_printed_form(x, d)).norm();
    Ok(JHalfReport {
        check,
        printed_deviation,
    })
}

pub fn complex_beta(a: Complex64, b: Complex64) -> Complex64 {
    (lg(a) + lg(b) - lg(a + b)).exp()
}

/// Tanh-sinh rule on [0, 1]; `f` receives (x, 1 - x), both accurate.
fn tanh_sinh<F: FnMut(f64, f64) -> Complex64>(mut f: F, h: f64) -> Complex64 {
    let n = (6.5 / h).ceil() as i64;
    let mut total = c(0.0);
    for k in -n..=n {
        let t = k as f64 * h;
        let u = PI * t.sinh();
        let x = 1.0 / (1.0 + (-u).exp());
        let one_minus = 1.0 / (1.0 + u.exp());
        if x <= 0.0 || one_minus <= 0.0 {
            continue;
        }
        let w = h * PI * t.cosh() * x * one_minus;
        if w == 0.0 {
            continue;
        }
        total += f(x, one_minus) * w;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaReport {
    pub gamma_side: [f64; 2],
    pub integral_side: [f64; 2],
    pub beta_sum: [f64; 2],
    /// Max relative deviation among the three evaluations.
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Gamma-ratio side, z-integral side and beta-function sum of the
/// gamma/beta identity. The beta sum carries the factor (-1)^{d1 d2}.
pub fn beta_identity_check(s: [Complex64; 2], u: Complex64, d: [u8; 2], tol: f64) -> Result<BetaReport> {
    let (s1, s2) = (s[0], s[1]);
    if !((s1 - u).re > 0.0 && (s2 + u).re > 0.0 && (s1 + s2).re < 0.5) || d[0] > 1 || d[1] > 1 {
        return Err(Error::Domain(
            "need Re(s1-u) > 0, Re(s2+u) > 0, Re(s1+s2) < 1/2 and d in {0,1}^2".into(),
        ));
    }
    let (d1, d2) = (d[0] as f64, d[1] as f64);
    let d3 = ((d[0] + d[1]) % 2) as f64;
    let ss = s1 + s2;
    let gamma_side = PI.sqrt()
        * (lg((1.0 + d3) / 2.0 - ss) + lg(d1 / 2.0 + s1 - u) + lg(d2 / 2.0 + s2 + u)
            - lg(d3 / 2.0 + ss)
            - lg((1.0 + d1) / 2.0 - s1 + u)
            - lg((1.0 + d2) / 2.0 - s2 - u))
            .exp();
    let sign_d1d2 = if d[0] * d[1] == 1 { -1.0 } else { 1.0 };
    let sgn_pow = |neg: bool| if neg && (d[0] + d[1]) % 2 == 1 { -1.0 } else { 1.0 };
    let integral = |h: f64| {
        let mut tot = c(0.0);
        for eta in [1.0f64, -1.0] {
            let eta_d1 = if d[0] == 1 { eta } else { 1.0 };
            // z in (0, 1]
            let low = tanh_sinh(
                |x, om| {
                    let r = x.sqrt();
                    let base = if eta > 0.0 { 1.0 + r } else { om / (1.0 + r) };
                    (-2.0 * ss * base.ln() + (s1 - u - 1.0) * x.ln()).exp()
                },
                h,
            );
            // z = 1/w, w in (0, 1)
            let high = tanh_sinh(
                |w, om| {
                    let r = w.sqrt();
                    let base = if eta > 0.0 { r + 1.0 } else { om / (1.0 + r) };
                    (-2.0 * ss * base.ln() + ss * w.ln() + (u - s1 - 1.0) * w.ln()).exp()
                },
                h,
            ) * sgn_pow(eta < 0.0);
            tot += eta_d1 * (low + high);
        }
        tot * sign_d1d2 / 2.0
    };
    let coarse = integral(1.0 / 32.0);
    let integral_side = integral(1.0 / 64.0);
    let one = c(1.0);
    let beta_sum = sign_d1d2
        * (if d[0] == 1 { -one } else { one } * complex_beta(1.0 - 2.0 * ss, 2.0 * s1 - 2.0 * u)
            + if d[1] == 1 { -one } else { one } * complex_beta(1.0 - 2.0 * ss, 2.0 * s2 + 2.0 * u)
            + complex_beta(2.0 * s1 - 2.0 * u, 2.0 * s2 + 2.0 * u));
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1e-300);
    let deviation = rel(gamma_side, beta_sum)
        .max(rel(integral_side, beta_sum))
        .max(rel(integral_side, coarse));
    Ok(BetaReport {
        gamma_side: [gamma_side.re, gamma_side.im],
        integral_side: [integral_side.re, integral_side.im],
        beta_sum: [beta_sum.re, beta_sum.im],
        deviation,
        tolerance: tol,
        pass: deviation <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_mu() -> SpectralParam {
        SpectralParam::from_mu([Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.5), Complex64::new(0.0, -1.5)]).unwrap()
    }

    #[test]
    fn g_at_half() {
        let z = SpectralParam::imaginary(0.0, 0.0);
        let v = g_meromorphic([c(0.5), c(0.5)], &z).unwrap();
        assert!((v - c(PI.powi(3))).norm() < 1e-12);
        let mu = sample_mu();
        let s = [Complex64::new(0.3, 0.7), Complex64::new(0.2, -1.1)];
        let a = g_meromorphic(s, &mu).unwrap();
        let b = g_meromorphic(s, &mu.permute_mu([1, 0, 2])).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
        let mc = SpectralParam::from_mu(mu.mu().map(|m| m.conj())).unwrap();
        let cc = g_meromorphic([s[0].conj(), s[1].conj()], &mc).unwrap();
        assert!((cc - a.conj()).norm() < 1e-12 * a.norm());
        assert!(matches!(g_meromorphic([c(0.0), c(0.5)], &z), Err(Error::Pole(_))));
    }

    #[test]
    fn g_tilde_difference() {
        let mu = sample_mu();
        let s = Complex64::new(0.3, 0.4);
        let diff = g_tilde(s, &mu, Sign::Plus).unwrap() - g_tilde(s, &mu, Sign::Minus).unwrap();
        let mut prod = c(1.0);
        for m in mu.mu() {
            prod *= gamma((1.0 + s - m) / 2.0) / gamma((2.0 - s + m) / 2.0);
        }
        let expect = Complex64::new(0.0, 2.0) * (-3.0 * s * PI.ln()).exp() / (12288.0 * PI.powf(3.5)) * prod;
        assert!((diff - expect).norm() < 1e-12 * expect.norm());
    }

    #[test]
    fn s_trig_cases() {
        let mu = sample_mu();
        let s = [Complex64::new(0.25, 1.0), Complex64::new(0.25, -2.0)];
        let a = s_trig(s, &mu, [Sign::Plus, Sign::Plus]).unwrap();
        let b = s_trig([c(0.1), c(0.2)], &mu, [Sign::Plus, Sign::Plus]).unwrap();
        assert_eq!(a, b);
        for alpha in [[Sign::Plus, Sign::Minus], [Sign::Minus, Sign::Plus], [Sign::Minus, Sign::Minus]] {
            assert!(s_trig(s, &mu, alpha).unwrap().is_finite());
        }
        let t = 0.4;
        let on = SpectralParam::imaginary(t, t);
        let direct = {
            let nu = on.nu();
            let m = on.mu();
            let sp = |z: Complex64| (z * PI).sin();
            (nu[2] * 1.5 * PI).cos() * sp(s[0] - m[1]) * sp(s[1] + m[1])
                / (32.0 * PI * PI * (nu[1] * 1.5 * PI).sin() * (nu[0] * 1.5 * PI).sin())
        };
        let v = s_trig(s, &on, [Sign::Minus, Sign::Minus]).unwrap();
        assert!((v - direct).norm() < 1e-13 * direct.norm());
        let wall = SpectralParam::imaginary(0.0, 0.7);
        assert!(s_trig(s, &wall, [Sign::Minus, Sign::Minus]).is_err());
    }

    #[test]
    fn g_alpha_sym_is_weyl_invariant() {
        let mu = sample_mu();
        let s = [Complex64::new(0.2, 0.3), Complex64::new(0.1, -0.4)];
        let a = g_alpha_sym(s, &mu, [Sign::Plus, Sign::Minus]).unwrap();
        for p in WEYL_PERMS {
            let b = g_alpha_sym(s, &mu.permute_mu(p), [Sign::Plus, Sign::Minus]).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn bessel_and_j_half_transforms() {
        let spec = ContourSpec::default();
        for d3 in 0..2 {
            for z in [0.5, 1.0, 3.0] {
                let r = bessel_mellin_check(z, d3, &spec, 1e-6).unwrap();
                assert!(r.pass, "{:?}", r);
            }
        }
        for d in 0..2 {
            for x in [0.5, 1.0, 4.0] {
                let r = j_half_mellin_check(x, d, 1e-6).unwrap();
                assert!(r.check.pass, "{:?}", r);
                assert!(r.printed_deviation > 1e-3);
            }
        }
    }

    #[test]
    fn beta_identity_three_ways() {
        for d in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let r = beta_identity_check([c(0.3), c(0.1)], c(0.05), d, 1e-6).unwrap();
            assert!(r.pass, "{:?} {:?}", d, r);
        }
        let r = beta_identity_check(
            [Complex64::new(0.2, 0.5), Complex64::new(0.15, -0.3)],
            Complex64::new(0.0, 0.4),
            [1, 0],
            1e-6,
        )
        .unwrap();
        assert!(r.pass, "{:?}", r);
        assert!(beta_identity_check([c(0.3), c(0.3)], c(0.0), [0, 0], 1e-6).is_err());
    }

    #[test]
    fn w4_kernel_contour_independence() {
        let mu = sample_mu();
        let a = k_w4_mb(1.0, &mu, &MbPlan::new(&mu, &ContourSpec::default()).unwrap()).unwrap();
        let other = ContourSpec {
            abscissa: 0.1,
            ray_abscissa: -2.5,
            height: Some(12.0),
            truncation: 80.0,
            hmax: 0.8,
        };
        let b = k_w4_mb(1.0, &mu, &MbPlan::new(&mu, &other).unwrap()).unwrap();
        assert!((a.value - b.value).norm() < 1e-6 * a.value.norm(), "{:?} {:?}", a, b);
        // conjugation: K(-y; conj mu) = conj K(y; mu)
        let mr = SpectralParam::from_mu(mu.mu().map(|m| m.conj())).unwrap();
        let r = k_w4_mb(-1.0, &mr, &MbPlan::new(&mr, &ContourSpec::default()).unwrap()).unwrap();
        assert!((r.value - a.value.conj()).norm() < 1e-8 * a.value.norm(), "{:?} {:?}", r, a);
    }
}
