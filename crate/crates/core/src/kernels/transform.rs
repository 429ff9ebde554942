//! The Fourier transform of h_T spec on the imaginary plane, and the Phi_w
//! integrals obtained by pairing it with the kernel integral representations.
//!
//! Everything is written in x = log v. The transform is a lattice sum over
//! the squares around the T-orbit of nu0; for a fixed line in the x-plane it
//! collapses to a one-dimensional trigonometric sum (a slice).

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use super::contour::ContourSpec;
use super::mellin::{k_sym_mb, MbPlan, Sign};
use super::quad::{adaptive, composite_nodes, graded_breaks, AdaptiveOpts};
use super::spectral::{spec_imag, SpectralParam, TestFunctionSpec};
use crate::error::{Error, Result};
use crate::special::{bessel_k0, bessel_y0};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HatOpts {
    /// Lattice nodes per Gaussian width T^{1-eps}.
    pub nodes_per_width: f64,
    /// Half-side of the square kept around each orbit centre, in widths.
    pub radius_widths: f64,
    /// |transform| / peak level that defines the support radius in x.
    pub support_level: f64,
}

impl Default for HatOpts {
    fn default() -> Self {
        HatOpts {
            nodes_per_width: 16.0,
            radius_widths: 3.0,
            support_level: 1e-12,
        }
    }
}

/// x -> -3 T^{-3} / (6144 pi) int h_T(iu) spec(iu) e^{i u.x} du.
#[derive(Clone, Debug)]
pub struct HatTransform {
    spec: TestFunctionSpec,
    step: f64,
    nodes: Vec<(i64, i64, f64)>,
    support: f64,
    peak: Complex64,
}

fn lattice(spec: &TestFunctionSpec, step: f64, radius_widths: f64) -> BTreeSet<(i64, i64)> {
    let r = (radius_widths * spec.width() / step).ceil() as i64;
    let mut idx = BTreeSet::new();
    for c in spec.orbit_centres() {
        let (ci, cj) = ((c[0] / step).round() as i64, (c[1] / step).round() as i64);
        for i in ci - r..=ci + r {
            for j in cj - r..=cj + r {
                idx.insert((i, j));
            }
        }
    }
    idx
}

impl HatTransform {
    pub fn new(spec: &TestFunctionSpec, opts: &HatOpts) -> Result<HatTransform> {
        spec.validate()?;
        if !(opts.nodes_per_width >= 2.0 && opts.radius_widths > 0.0 && opts.support_level > 0.0) {
            return Err(Error::Domain(format!("bad transform options {:?}", opts)));
        }
        let step = spec.width() / opts.nodes_per_width;
        let scale = -3.0 / spec.t.powi(3) / (6144.0 * PI) * step * step;
        let nodes: Vec<(i64, i64, f64)> = lattice(spec, step, opts.radius_widths)
            .into_iter()
            .map(|(i, j)| {
                let (u1, u2) = (i as f64 * step, j as f64 * step);
                (i, j, spec.h_imag(u1, u2) * spec_imag(u1, u2) * scale)
            })
            .filter(|n| n.2 != 0.0)
            .collect();
        let mut hat = HatTransform {
            spec: *spec,
            step,
            nodes,
            support: 0.0,
            peak: Complex64::new(0.0, 0.0),
        };
        hat.peak = hat.eval([0.0, 0.0]);
        let grid = hat.grid();
        let support = grid.support_radius(opts.support_level);
        // the lattice sum is periodic in x; its frame must already be negligible
        let edge = grid.edge_level();
        if edge > opts.support_level {
            return Err(Error::Precision {
                requested: opts.support_level,
                achieved: edge,
            });
        }
        hat.support = support;
        Ok(hat)
    }

    pub fn spec(&self) -> &TestFunctionSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Half-side of the square in x outside which |transform| < level * peak.
    pub fn support(&self) -> f64 {
        self.support
    }

    /// Panel width for fixed rules: two periods of the fastest oscillation.
    pub fn panel(&self) -> f64 {
        let kmax = self.nodes.iter().map(|n| n.0.abs() + n.1.abs()).max().unwrap_or(1).max(1);
        4.0 * PI / (self.step * kmax as f64)
    }

    /// Value at x = 0, which is also the supremum since h_T spec has one sign.
    pub fn peak(&self) -> Complex64 {
        self.peak
    }

    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        self.nodes
            .iter()
            .map(|&(i, j, w)| Complex64::from_polar(w, self.step * (i as f64 * x[0] + j as f64 * x[1])))
            .sum()
    }

    /// Restriction to the line base + t dir, dir an integer vector.
    pub fn slice(&self, base: [f64; 2], dir: [i64; 2]) -> HatSlice {
        let key = |i: i64, j: i64| i * dir[0] + j * dir[1];
        let kmin = self.nodes.iter().map(|n| key(n.0, n.1)).min().unwrap_or(0);
        let kmax = self.nodes.iter().map(|n| key(n.0, n.1)).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (kmax - kmin + 1) as usize];
        for &(i, j, w) in &self.nodes {
            coeffs[(key(i, j) - kmin) as usize] +=
                Complex64::from_polar(w, self.step * (i as f64 * base[0] + j as f64 * base[1]));
        }
        HatSlice {
            kmin,
            coeffs,
            step: self.step,
        }
    }

    /// Values on the FFT grid x = 2 pi m / (n step).
    pub fn grid(&self) -> HatGrid {
        let range = |f: fn(&(i64, i64, f64)) -> i64| {
            let lo = self.nodes.iter().map(f).min().unwrap_or(0);
            let hi = self.nodes.iter().map(f).max().unwrap_or(0);
            hi - lo + 1
        };
        let span = range(|n| n.0).max(range(|n| n.1)) as usize;
        let n = (2 * span).next_power_of_two();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        let wrap = |k: i64| k.rem_euclid(n as i64) as usize;
        for &(i, j, w) in &self.nodes {
            data[wrap(i) * n + wrap(j)] += w;
        }
        let fft = FftPlanner::new().plan_fft_inverse(n);
        for row in data.chunks_mut(n) {
            fft.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..n {
            for r in 0..n {
                col[r] = data[r * n + c];
            }
            fft.process(&mut col);
            for r in 0..n {
                data[r * n + c] = col[r];
            }
        }
        // reorder so that index 0 is the most negative frequency
        let half = n / 2;
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                values[((r + half) % n) * n + (c + half) % n] = data[r * n + c];
            }
        }
        HatGrid {
            spacing: 2.0 * PI / (n as f64 * self.step),
            n,
            values,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HatSlice {
    kmin: i64,
    coeffs: Vec<Complex64>,
    step: f64,
}

impl HatSlice {
    pub fn eval(&self, t: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, t * self.step);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * Complex64::from_polar(1.0, t * self.step * self.kmin as f64)
    }
}

#[derive(Clone, Debug)]
pub struct HatGrid {
    pub spacing: f64,
    pub n: usize,
    /// Row-major in (x1, x2), both running from -n/2 to n/2 - 1 spacings.
    pub values: Vec<Complex64>,
}

impl HatGrid {
    pub fn coord(&self, k: usize) -> f64 {
        (k as f64 - (self.n / 2) as f64) * self.spacing
    }

    pub fn half_width(&self) -> f64 {
        (self.n / 2) as f64 * self.spacing
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// max(|x1|, |x2|) over grid points with |value| >= level * sup.
    pub fn support_radius(&self, level: f64) -> f64 {
        let cut = level * self.sup();
        let mut r = 0.0f64;
        for a in 0..self.n {
            for b in 0..self.n {
                if self.values[a * self.n + b].norm() >= cut {
                    r = r.max(self.coord(a).abs()).max(self.coord(b).abs());
                }
            }
        }
        r
    }

    /// Largest |value| / sup on the outer frame of the grid.
    pub fn edge_level(&self) -> f64 {
        let n = self.n;
        let mut m = 0.0f64;
        for k in 0..n {
            for (a, b) in [(0, k), (n - 1, k), (k, 0), (k, n - 1)] {
                m = m.max(self.values[a * n + b].norm());
            }
        }
        m / self.sup()
    }

    /// CSV rows x1,x2,re,im,abs for grid points with max(|x1|,|x2|) <= radius.
    pub fn write_csv<W: Write>(&self, mut out: W, radius: f64) -> std::io::Result<()> {
        writeln!(out, "x1,x2,re,im,abs")?;
        for a in 0..self.n {
            let x1 = self.coord(a);
            if x1.abs() > radius {
                continue;
            }
            for b in 0..self.n {
                let x2 = self.coord(b);
                if x2.abs() > radius {
                    continue;
                }
                let v = self.values[a * self.n + b];
                writeln!(out, "{:.9e},{:.9e},{:.12e},{:.12e},{:.12e}", x1, x2, v.re, v.im, v.norm())?;
            }
        }
        Ok(())
    }
}

/// log |1 + eta e^{u/2}| and sgn(1 + eta e^u), stable for large |u|.
fn ln_shifted_root(u: f64, eta: f64) -> (f64, f64) {
    let h = u / 2.0;
    if eta > 0.0 {
        (h.max(0.0) + (-h.abs()).exp().ln_1p(), 1.0)
    } else if u > 0.0 {
        (h + (-(-h).exp_m1()).ln(), -1.0)
    } else {
        ((-(h.exp_m1())).ln(), 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Integrate |transform| |kernel| instead, the majorant of |Phi|.
    pub modulus: bool,
}

impl Default for PhiOpts {
    fn default() -> Self {
        PhiOpts {
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            modulus: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiValue {
    pub t: f64,
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
    /// Half-side of the x-square integrated over.
    pub support: f64,
}

/// int int |transform| |kernel| by fixed composite rules with panels of
/// width `panel`; the error is the change against panels twice as wide.
fn sliced_majorant<S, B, G>(outer: [f64; 2], slice_at: S, inner_range: B, kernel: G, panel: f64) -> (f64, f64)
where
    S: Fn(f64) -> HatSlice + Sync,
    B: Fn(f64) -> ([f64; 2], Vec<f64>) + Sync,
    G: Fn(f64, f64) -> Complex64 + Sync,
{
    let panels = |lo: f64, hi: f64, h: f64| {
        let k = ((hi - lo) / h).ceil().max(1.0) as usize;
        composite_nodes(&(0..=k).map(|i| lo + (hi - lo) * i as f64 / k as f64).collect::<Vec<_>>())
    };
    let run = |h: f64| -> f64 {
        let (xa, wa) = panels(outer[0], outer[1], h);
        let rows: Vec<f64> = xa
            .par_iter()
            .zip(wa.par_iter())
            .map(|(&a, &wa)| {
                let ([lo, hi], _) = inner_range(a);
                if hi <= lo {
                    return 0.0;
                }
                let sl = slice_at(a);
                let (xb, wb) = panels(lo, hi, h);
                wa * xb.iter().zip(&wb).map(|(&b, &w)| w * sl.eval(b).norm() * kernel(a, b).norm()).sum::<f64>()
            })
            .collect();
        rows.iter().sum()
    };
    let fine = run(panel);
    let coarse = run(2.0 * panel);
    (fine, (fine - coarse).abs())
}

#[allow(clippy::too_many_arguments)]
fn pair<S, B, G>(
    outer: [f64; 2],
    outer_sing: &[f64],
    slice_at: S,
    inner_range: B,
    kernel: G,
    scale: f64,
    panel: f64,
    opts: &PhiOpts,
) -> (Complex64, f64, bool)
where
    S: Fn(f64) -> HatSlice + Sync,
    B: Fn(f64) -> ([f64; 2], Vec<f64>) + Sync,
    G: Fn(f64, f64) -> Complex64 + Sync,
{
    if opts.modulus {
        let (v, e) = sliced_majorant(outer, slice_at, inner_range, kernel, panel);
        (Complex64::new(v, 0.0), e, e <= opts.rel_tol.max(1e-3) * v)
    } else {
        sliced_integral(outer, outer_sing, slice_at, inner_range, kernel, scale, opts)
    }
}

/// Outer integral over a, inner over b, with the transform sliced along b.
fn sliced_integral<S, B, G>(
    outer: [f64; 2],
    outer_sing: &[f64],
    slice_at: S,
    inner_range: B,
    kernel: G,
    scale: f64,
    opts: &PhiOpts,
) -> (Complex64, f64, bool)
where
    S: Fn(f64) -> HatSlice + Sync,
    B: Fn(f64) -> ([f64; 2], Vec<f64>) + Sync,
    G: Fn(f64, f64) -> Complex64 + Sync,
{
    let breaks = graded_breaks(outer[0], outer[1], outer_sing, (outer[1] - outer[0]) / 16.0, 8);
    let inner_opts = AdaptiveOpts {
        abs_tol: opts.abs_tol * scale,
        rel_tol: opts.rel_tol,
        max_intervals: 4000,
    };
    let outer_opts = AdaptiveOpts {
        abs_tol: opts.abs_tol * scale / breaks.len() as f64,
        rel_tol: opts.rel_tol,
        max_intervals: 4000,
    };
    let parts: Vec<(Complex64, f64, bool)> = breaks
        .par_windows(2)
        .map(|w| {
            let mut ok = true;
            let r = adaptive(
                |a| {
                    let ([lo, hi], sing) = inner_range(a);
                    if hi <= lo {
                        return [Complex64::new(0.0, 0.0)];
                    }
                    let sl = slice_at(a);
                    let br = graded_breaks(lo, hi, &sing, (hi - lo) / 16.0, 8);
                    let inner = adaptive(|b| [sl.eval(b) * kernel(a, b)], &br, inner_opts);
                    ok &= inner.converged;
                    inner.value
                },
                w,
                outer_opts,
            );
            (r.value[0], r.error, ok && r.converged)
        })
        .collect();
    let mut v = Complex64::new(0.0, 0.0);
    let mut e = 0.0;
    let mut c = true;
    for p in parts {
        v += p.0;
        e += p.1;
        c &= p.2;
    }
    (v, e, c)
}

fn check_y(y: &[f64]) -> Result<()> {
    if y.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::Domain("y must be finite and nonzero".into()));
    }
    Ok(())
}

/// Bessel kernel of the long element at log-coordinates (u1, u2), summed
/// over the eight sign choices and the four parities for signs alpha.
fn long_element_kernel(u1: f64, u2: f64, lr: f64, ln_y2: f64, alpha: [f64; 2]) -> f64 {
    let w3 = u2 - u1 + 2.0 * lr;
    let mut total = 0.0;
    for e1 in [1.0, -1.0] {
        let (l1, s1) = ln_shifted_root(u1, e1);
        for e2 in [1.0, -1.0] {
            let (l2, s2) = ln_shifted_root(u2, e2);
            for e3 in [1.0, -1.0] {
                let (l3, s3) = ln_shifted_root(w3, e3);
                let ln_z4 = l1 + l2 + l3 + ln_y2 - u2 / 2.0;
                let x = 4.0 * PI * (ln_z4 / 2.0).exp();
                if !(x > 0.0) || !x.is_finite() {
                    continue;
                }
                let k0 = if x < 60.0 { 2.0 / PI * bessel_k0(x) } else { 0.0 };
                let y0 = bessel_y0(x);
                let sg = s1 * s2 * s3;
                let even = k0 - y0;
                let odd = k0 + y0;
                total += even + e1 * e3 * alpha[0] * sg * odd + e2 * alpha[1] * sg * odd + e1 * e2 * e3 * alpha[0] * alpha[1] * even;
            }
        }
    }
    total
}

/// The size of Phi_{w6} with no cancellation at all: its constant times
/// sup |transform| times the area of the integration square. Integration
/// tolerances are relative to this.
pub fn trivial_bound_w6(hat: &HatTransform) -> f64 {
    let r = hat.support();
    16.0 / 9.0 * hat.spec().t.powi(3) * hat.peak().norm() * 4.0 * r * r
}

/// Phi_{w6}(y) = int h_T K_{w6}^{sgn y}(y; mu) spec(mu) dmu through the transform.
pub fn phi_w6(hat: &HatTransform, y: [f64; 2], opts: &PhiOpts) -> Result<PhiValue> {
    check_y(&y)?;
    let alpha = [Sign::of(y[0]).value(), Sign::of(y[1]).value()];
    let (a1, a2) = (y[0].abs(), y[1].abs());
    let lr = (a1 / a2).ln();
    let ln_y2 = a2.ln();
    let r = hat.support();
    let t = hat.spec().t;
    let scale = hat.peak().norm() * 4.0 * r * r;
    let (v, e, c) = pair(
        [-r, r],
        &[lr, -2.0 * lr],
        |x1| hat.slice([x1, 0.0], [0, 1]),
        |x1| ([-r, r], vec![-lr, x1 + lr]),
        |x1, x2| {
            let u1 = (lr - x1) / 1.5;
            let u2 = (-lr - x2) / 1.5;
            Complex64::new(long_element_kernel(u1, u2, lr, ln_y2, alpha), 0.0)
        },
        scale,
        hat.panel(),
        opts,
    );
    let k = 16.0 / 9.0 * t.powi(3);
    Ok(PhiValue {
        t,
        value: v * k,
        error: e * k,
        converged: c,
        support: r,
    })
}

/// Shared w4 machinery; `reflect` evaluates the transform at -x, which is
/// the (-y, -mu) reuse giving Phi_{w5}.
fn phi_w4_impl(hat: &HatTransform, y: f64, reflect: bool, opts: &PhiOpts) -> Result<PhiValue> {
    check_y(&[y])?;
    let alpha = if reflect { -Sign::of(y).value() } else { Sign::of(y).value() };
    let ln_ycube = y.abs().ln() / 3.0;
    let r = hat.support();
    let t = hat.spec().t;
    let scale = hat.peak().norm() * 4.0 * r * r;
    let rot = Complex64::new(0.0, -alpha);
    let kernel = |s: f64, x2: f64| {
        let u1 = -2.0 * s / 3.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for e1 in [1.0, -1.0] {
            let (l1, _) = ln_shifted_root(u1, e1);
            if !l1.is_finite() {
                continue;
            }
            let u2 = -2.0 * x2 - 2.0 * l1 - u1;
            for e2 in [1.0, -1.0] {
                let (l2, s2) = ln_shifted_root(u2, e2);
                let x = (ln_ycube + 2.0 / 3.0 * l1 + l2 - (u1 + u2) / 6.0).exp();
                if !x.is_finite() {
                    continue;
                }
                let (sn, cs) = (2.0 * PI * x).sin_cos();
                acc += cs + rot * (e1 * e2 * s2 * sn);
            }
        }
        acc
    };
    let sing = |s: f64| {
        let lo = (-r).max(s - r);
        let hi = r.min(s + r);
        let pts = [1.0, -1.0]
            .iter()
            .map(|&e| -ln_shifted_root(-2.0 * s / 3.0, e).0 + s / 3.0)
            .filter(|p| p.is_finite())
            .collect();
        ([lo, hi], pts)
    };
    let (v, e, c) = if reflect {
        pair([-2.0 * r, 2.0 * r], &[0.0], |s| hat.slice([-s, 0.0], [1, -1]), sing, kernel, scale, hat.panel(), opts)
    } else {
        pair([-2.0 * r, 2.0 * r], &[0.0], |s| hat.slice([s, 0.0], [-1, 1]), sing, kernel, scale, hat.panel(), opts)
    };
    let k = t.powi(3) / (9.0 * PI.powi(4));
    Ok(PhiValue {
        t,
        value: v * k,
        error: e * k,
        converged: c,
        support: r,
    })
}

/// Phi_{w4}(y) = int h_T K_{w4}(y; mu) spec(mu) dmu through the transform.
pub fn phi_w4(hat: &HatTransform, y: f64, opts: &PhiOpts) -> Result<PhiValue> {
    phi_w4_impl(hat, y, false, opts)
}

/// Phi_{w5}(y) = int h_T K_{w4}(-y; -mu) spec(mu) dmu.
pub fn phi_w5(hat: &HatTransform, y: f64, opts: &PhiOpts) -> Result<PhiValue> {
    phi_w4_impl(hat, y, true, opts)
}

/// Phi_{w6}(y) by integrating h_T K^sym spec directly over a coarse lattice
/// in u, each kernel value from its Mellin-Barnes integral.
pub fn phi_w6_direct(
    spec: &TestFunctionSpec,
    y: [f64; 2],
    nodes_per_width: f64,
    radius_widths: f64,
    contour: &ContourSpec,
) -> Result<PhiValue> {
    spec.validate()?;
    check_y(&y)?;
    let step = spec.width() / nodes_per_width;
    let pts: Vec<(f64, f64, f64)> = lattice(spec, step, radius_widths)
        .into_iter()
        .map(|(i, j)| {
            let (u1, u2) = (i as f64 * step, j as f64 * step);
            (u1, u2, spec.h_imag(u1, u2) * spec_imag(u1, u2))
        })
        .collect();
    let fmax = pts.iter().map(|p| p.2.abs()).fold(0.0, f64::max);
    let kept: Vec<&(f64, f64, f64)> = pts.iter().filter(|p| p.2.abs() > 1e-12 * fmax).collect();
    let vals: Vec<Result<(Complex64, f64)>> = kept
        .par_iter()
        .map(|&&(u1, u2, f)| {
            let mu = SpectralParam::imaginary(u1, u2);
            let plan = MbPlan::new(&mu, contour)?;
            let k = k_sym_mb(y, &mu, &plan)?;
            Ok((k.value * f, k.tail * f.abs()))
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for v in vals {
        let (a, b) = v?;
        total += a;
        tail += b;
    }
    let w = -3.0 * step * step;
    Ok(PhiValue {
        t: spec.t,
        value: total * w,
        error: tail * w.abs(),
        converged: true,
        support: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_log_roots() {
        for u in [-50.0, -3.0, -1e-9, 1e-9, 2.0, 80.0] {
            for e in [1.0, -1.0] {
                let (l, s) = ln_shifted_root(u, e);
                let direct = (1.0 + e * (u / 2.0).exp()).abs().ln();
                assert!((l - direct).abs() < 1e-6 * (1.0 + direct.abs()), "{} {} {} {}", u, e, l, direct);
                assert_eq!(s, if e < 0.0 && u > 0.0 { -1.0 } else { 1.0 });
            }
        }
        assert!((ln_shifted_root(2000.0, -1.0).0 - 1000.0).abs() < 1e-12);
    }

    #[test]
    fn transform_peak_matches_main_term() {
        let spec = TestFunctionSpec::default();
        let hat = HatTransform::new(&spec, &HatOpts::default()).unwrap();
        let delta = super::super::spectral::main_term_delta(&spec, 0.1).unwrap();
        let expect = -delta.signed * PI.powi(4) / (32.0 * spec.t.powi(3));
        assert!((hat.peak().re - expect).abs() < 1e-8 * expect.abs(), "{} {}", hat.peak(), expect);
        assert!(hat.peak().im.abs() < 1e-12 * expect.abs());
        let grid = hat.grid();
        assert!((grid.sup() - hat.peak().norm()).abs() < 1e-10 * grid.sup());
        assert!(hat.support() * spec.width() < 40.0);
    }

    #[test]
    fn slices_agree_with_direct_sums() {
        let hat = HatTransform::new(&TestFunctionSpec::with_t(4.0), &HatOpts::default()).unwrap();
        let sl = hat.slice([0.03, -0.01], [-1, 1]);
        for t in [-0.2, 0.0, 0.07] {
            let a = sl.eval(t);
            let b = hat.eval([0.03 - t, -0.01 + t]);
            assert!((a - b).norm() < 1e-12 * hat.peak().norm());
        }
        // real h spec: conj at x equals value at -x
        let x = [0.05, -0.02];
        assert!((hat.eval(x).conj() - hat.eval([-x[0], -x[1]])).norm() < 1e-13 * hat.peak().norm());
    }
}
