//! Quadrature helpers shared by the kernel evaluations.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::Zero;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            dp = n as f64 * (z * p - p0) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

pub fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static CELL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CELL.get_or_init(|| gauss_legendre(16))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod rule with embedded 7-point Gauss error estimate.
fn gk15<const K: usize, F>(f: &mut F, a: f64, b: f64) -> ([Complex64; K], f64)
where
    F: FnMut(f64) -> [Complex64; K],
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kr = [Complex64::zero(); K];
    let mut ga = [Complex64::zero(); K];
    let fc = f(c);
    for k in 0..K {
        kr[k] = fc[k] * WGK[7];
        ga[k] = fc[k] * WG[3];
    }
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        for k in 0..K {
            let s = f1[k] + f2[k];
            kr[k] += s * WGK[j];
            if j % 2 == 1 {
                ga[k] += s * WG[j / 2];
            }
        }
    }
    let mut err = 0.0f64;
    for k in 0..K {
        kr[k] *= h;
        ga[k] *= h;
        err = err.max((kr[k] - ga[k]).norm());
    }
    (kr, err)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveOpts {
    fn default() -> Self {
        AdaptiveOpts {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_intervals: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveResult<const K: usize> {
    pub value: [Complex64; K],
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

/// Globally adaptive Gauss-Kronrod over consecutive breakpoints, bisecting the
/// worst interval first. Breakpoints must be sorted.
pub fn adaptive<const K: usize, F>(mut f: F, breaks: &[f64], opts: AdaptiveOpts) -> AdaptiveResult<K>
where
    F: FnMut(f64) -> [Complex64; K],
{
    let mut pieces: Vec<(f64, f64, [Complex64; K], f64)> = Vec::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gk15(&mut f, w[0], w[1]);
            pieces.push((w[0], w[1], v, e));
        }
    }
    let total = |p: &[(f64, f64, [Complex64; K], f64)]| {
        let mut v = [Complex64::zero(); K];
        let mut e = 0.0;
        for q in p {
            for k in 0..K {
                v[k] += q.2[k];
            }
            e += q.3;
        }
        (v, e)
    };
    loop {
        let (v, e) = total(&pieces);
        let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let converged = e <= opts.abs_tol.max(opts.rel_tol * scale);
        if converged || pieces.len() >= opts.max_intervals {
            return AdaptiveResult {
                value: v,
                error: e,
                intervals: pieces.len(),
                converged,
            };
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .3.total_cmp(&b.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (a, b, _, _) = pieces.swap_remove(worst);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return AdaptiveResult {
                value: v,
                error: e,
                intervals: pieces.len() + 1,
                converged: false,
            };
        }
        let (v1, e1) = gk15(&mut f, a, m);
        let (v2, e2) = gk15(&mut f, m, b);
        pieces.push((a, m, v1, e1));
        pieces.push((m, b, v2, e2));
    }
}

/// Splits [a, b] at the given interior points and into pieces no longer than
/// `hmax`; pieces touching a listed point are refined geometrically towards it.
pub fn graded_breaks(a: f64, b: f64, singular: &[f64], hmax: f64, levels: usize) -> Vec<f64> {
    let mut pts = vec![a, b];
    pts.extend(singular.iter().copied().filter(|&s| s > a && s < b));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let is_sing = |x: f64| singular.contains(&x);
    let mut out = vec![a];
    for w in pts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let n = ((hi - lo) / hmax).ceil().max(1.0) as usize;
        let h = (hi - lo) / n as f64;
        for i in 1..=n {
            out.push(if i == n { hi } else { lo + i as f64 * h });
        }
        for k in 1..=levels {
            let r = h * 0.15f64.powi(k as i32);
            if is_sing(lo) {
                out.push(lo + r);
            }
            if is_sing(hi) {
                out.push(hi - r);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Composite 16-point Gauss-Legendre rule over consecutive breakpoints.
pub fn composite_nodes(breaks: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (xg, wg) = gl16();
    let mut x = Vec::with_capacity(16 * breaks.len());
    let mut w = Vec::with_capacity(16 * breaks.len());
    for p in breaks.windows(2) {
        let c = 0.5 * (p[0] + p[1]);
        let h = 0.5 * (p[1] - p[0]);
        for (xi, wi) in xg.iter().zip(wg) {
            x.push(c + h * xi);
            w.push(h * wi);
        }
    }
    (x, w)
}

fn bump(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// C-infinity cutoff: 1 on |u| <= inner, 0 beyond outer.
pub fn smooth_window(u: f64, inner: f64, outer: f64) -> f64 {
    let a = ((u.abs() - inner) / (outer - inner)).clamp(0.0, 1.0);
    let p = bump(1.0 - a);
    p / (p + bump(a))
}

/// Second-order Cesaro weight: the iterated running average of a sharp
/// cutoff, 1 on |u| <= inner and 0 beyond outer, piecewise quadratic between.
pub fn cesaro2_window(u: f64, inner: f64, outer: f64) -> f64 {
    let a = ((u.abs() - inner) / (outer - inner)).clamp(0.0, 1.0);
    if a < 0.5 {
        1.0 - 2.0 * a * a
    } else {
        2.0 * (1.0 - a) * (1.0 - a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(16);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m30: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_log_singularity() {
        let r = adaptive(
            |x: f64| [Complex64::new(x.abs().ln(), 0.0)],
            &[-1.0, 0.0, 1.0],
            AdaptiveOpts {
                rel_tol: 1e-13,
                ..AdaptiveOpts::default()
            },
        );
        assert!(r.converged, "{:?}", r);
        assert!((r.value[0].re + 2.0).abs() < 1e-10, "{:?}", r);
    }

    #[test]
    fn graded_breaks_cluster_at_singular_points() {
        let b = graded_breaks(-1.0, 1.0, &[0.0], 0.5, 8);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(b[0], -1.0);
        assert_eq!(*b.last().unwrap(), 1.0);
        let near = b.iter().filter(|x| x.abs() < 0.01 && **x != 0.0).count();
        assert!(near >= 4);
        let (x, w) = composite_nodes(&b);
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.abs().ln()).sum();
        assert!((v + 2.0).abs() < 1e-6, "{} {:?}", v, b);
    }

    #[test]
    fn windows_are_monotone_and_normalised() {
        for win in [smooth_window, cesaro2_window] {
            assert_eq!(win(0.5, 1.0, 2.0), 1.0);
            assert_eq!(win(2.5, 1.0, 2.0), 0.0);
            let mut prev = 1.0;
            for i in 0..=100 {
                let v = win(1.0 + i as f64 / 100.0, 1.0, 2.0);
                assert!(v <= prev + 1e-15);
                prev = v;
            }
            assert!((win(1.5, 1.0, 2.0) - 0.5).abs() < 1e-12);
        }
    }
}
