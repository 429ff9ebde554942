//! Bent vertical contours for Mellin-Barnes integrals.
//!
//! The path runs up the ray Re s = `ray_abscissa` from -i R to -i H, across to
//! the bounded segment at Re s = `abscissa`, up to +i H, back left and up the
//! second ray to +i R. Poles listed as "left" must lie to its left.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::quad::gl16;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContourSpec {
    pub abscissa: f64,
    pub ray_abscissa: f64,
    /// Corner height; defaults to max(10, 2 max |Im pole|).
    pub height: Option<f64>,
    pub truncation: f64,
    /// Largest panel half-length.
    pub hmax: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            abscissa: 0.25,
            ray_abscissa: -3.0,
            height: None,
            truncation: 60.0,
            hmax: 1.0,
        }
    }
}

impl ContourSpec {
    /// Second variable of a double integral: rays moved slightly further left
    /// so that s1 + s2 stays off the real integers on the unbounded parts.
    pub fn staged(&self) -> Self {
        ContourSpec {
            ray_abscissa: self.ray_abscissa - 0.13,
            ..*self
        }
    }

    pub fn coarse(&self) -> Self {
        ContourSpec {
            hmax: self.hmax * 2.0,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ray_abscissa < 0.0 && self.ray_abscissa < self.abscissa) {
            return Err(Error::Contour(format!(
                "rays at {} must lie left of zero and of the bounded segment at {}",
                self.ray_abscissa, self.abscissa
            )));
        }
        if !(self.truncation > 0.0 && self.hmax > 0.0) {
            return Err(Error::Contour("truncation and panel size must be positive".into()));
        }
        Ok(())
    }
}

/// Nodes and weights with sum w f(s) ~ (1/2 pi i) int f(s) ds.
#[derive(Clone, Debug)]
pub struct Contour {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
    pub height: f64,
    /// Marks nodes on the outer fifth of either ray.
    pub outer: Vec<bool>,
}

fn dist_to_segment(p: Complex64, q: Complex64, z: Complex64) -> f64 {
    let v = q - p;
    let t = (((z - p) * v.conj()).re / v.norm_sqr()).clamp(0.0, 1.0);
    (p + v * t - z).norm()
}

fn pole_panels(a: Complex64, b: Complex64, poles: &[Complex64], hmax: f64) -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::new();
    let mut stack = vec![(a, b)];
    while let Some((p, q)) = stack.pop() {
        let h = (q - p).norm() / 2.0;
        let d = poles
            .iter()
            .map(|&z| dist_to_segment(p, q, z))
            .fold(f64::INFINITY, f64::min);
        if h > hmax || h > 0.8 * d {
            let m = (p + q) / 2.0;
            stack.push((m, q));
            stack.push((p, m));
        } else {
            out.push((p, q));
        }
    }
    out
}

impl Contour {
    pub fn build(spec: &ContourSpec, left_poles: &[Complex64]) -> Result<Contour> {
        spec.validate()?;
        let im_max = left_poles.iter().map(|p| p.im.abs()).fold(0.0, f64::max);
        let h = spec.height.unwrap_or((2.0 * im_max).max(10.0));
        if spec.truncation <= h {
            return Err(Error::Contour(format!("truncation {} below corner height {}", spec.truncation, h)));
        }
        for p in left_poles {
            let ok = if p.im.abs() < h {
                p.re < spec.abscissa
            } else {
                p.re < spec.ray_abscissa
            };
            if !ok {
                return Err(Error::Contour(format!("pole {} on the wrong side", p)));
            }
        }
        let (c, cl, r) = (spec.abscissa, spec.ray_abscissa, spec.truncation);
        let i = Complex64::i();
        let corners = [
            cl - i * r,
            cl - i * h,
            c - i * h,
            c + i * h,
            cl + i * h,
            cl + i * r,
        ];
        let mut panels: Vec<(Complex64, Complex64, bool)> = Vec::new();
        for (k, w) in corners.windows(2).enumerate() {
            if k == 0 || k == 4 {
                let mut edges = vec![h];
                while *edges.last().unwrap() < r {
                    let e = *edges.last().unwrap();
                    edges.push((e + (2.0 * spec.hmax).max(0.15 * e)).min(r));
                }
                let outer_from = r - 0.2 * (r - h);
                if k == 0 {
                    panels.extend(edges.windows(2).rev().map(|e| (cl - i * e[1], cl - i * e[0], e[0] >= outer_from)));
                } else {
                    panels.extend(edges.windows(2).map(|e| (cl + i * e[0], cl + i * e[1], e[0] >= outer_from)));
                }
            } else {
                panels.extend(pole_panels(w[0], w[1], left_poles, spec.hmax).into_iter().map(|(p, q)| (p, q, false)));
            }
        }
        let min_dist = left_poles
            .iter()
            .flat_map(|&z| corners.windows(2).map(move |w| dist_to_segment(w[0], w[1], z)))
            .fold(f64::INFINITY, f64::min);
        if min_dist < 1e-3 {
            return Err(Error::Contour(format!("pole within {:e} of the path", min_dist)));
        }
        let (xg, wg) = gl16();
        let scale = Complex64::new(0.0, 2.0 * PI).inv();
        let mut nodes = Vec::with_capacity(16 * panels.len());
        let mut weights = Vec::with_capacity(16 * panels.len());
        let mut outer = Vec::with_capacity(16 * panels.len());
        for (p, q, o) in panels {
            let mid = (p + q) / 2.0;
            let half = (q - p) / 2.0;
            for (x, w) in xg.iter().zip(wg) {
                nodes.push(mid + half * *x);
                weights.push(half * *w * scale);
                outer.push(o);
            }
        }
        Ok(Contour {
            nodes,
            weights,
            height: h,
            outer,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// (1/2 pi i) int f(s) ds, together with the part carried by the outer
    /// ray panels as a truncation estimate.
    pub fn integrate<F: FnMut(Complex64) -> Complex64>(&self, mut f: F) -> (Complex64, f64) {
        let mut total = Complex64::new(0.0, 0.0);
        let mut tail = Complex64::new(0.0, 0.0);
        for ((s, w), o) in self.nodes.iter().zip(&self.weights).zip(&self.outer) {
            let v = f(*s) * w;
            total += v;
            if *o {
                tail += v;
            }
        }
        (total, tail.norm())
    }
}

/// The pole families c - k, k = 0..depth, for each centre c.
pub fn shifted_poles(centres: &[Complex64], depth: usize) -> Vec<Complex64> {
    centres
        .iter()
        .flat_map(|&m| (0..depth).map(move |k| m - k as f64))
        .collect()
}
