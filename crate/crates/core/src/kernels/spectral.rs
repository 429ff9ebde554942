//! Spectral parameters, the test function h_T, spec(nu) and the main term.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Point of the complexified dual Lie algebra, held in nu-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralParam {
    nu: [Complex64; 2],
}

/// The six Weyl elements acting on (nu1, nu2, nu3): a coordinate permutation
/// and a sign. Transpositions of mu act by minus a transposition of nu.
const WEYL_NU: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
    ([1, 0, 2], -1.0),
];

impl SpectralParam {
    pub fn from_nu(nu1: Complex64, nu2: Complex64) -> Self {
        SpectralParam { nu: [nu1, nu2] }
    }

    /// Purely imaginary point nu = i u.
    pub fn imaginary(u1: f64, u2: f64) -> Self {
        Self::from_nu(Complex64::new(0.0, u1), Complex64::new(0.0, u2))
    }

    pub fn from_mu(mu: [Complex64; 3]) -> Result<Self> {
        let s = mu[0] + mu[1] + mu[2];
        if s.norm() > 1e-12 * (1.0 + mu.iter().map(|m| m.norm()).sum::<f64>()) {
            return Err(Error::Domain(format!("mu does not sum to zero ({})", s)));
        }
        Ok(Self::from_nu((mu[0] - mu[1]) / 3.0, (mu[0] + 2.0 * mu[1]) / 3.0))
    }

    pub fn nu(&self) -> [Complex64; 3] {
        [self.nu[0], self.nu[1], -self.nu[0] - self.nu[1]]
    }

    pub fn mu(&self) -> [Complex64; 3] {
        let [n1, n2, n3] = self.nu();
        [n1 - n3, n2 - n1, n3 - n2]
    }

    pub fn is_imaginary(&self) -> bool {
        self.nu.iter().all(|n| n.re.abs() < 1e-14 * (1.0 + n.norm()))
    }

    /// Image under the Weyl element that permutes mu by `perm`
    /// (new mu_i = old mu_{perm[i]}).
    pub fn permute_mu(&self, perm: [usize; 3]) -> Self {
        let m = self.mu();
        Self::from_mu([m[perm[0]], m[perm[1]], m[perm[2]]]).expect("permutation preserves the trace")
    }

    pub fn weyl_orbit(&self) -> Vec<SpectralParam> {
        let n = self.nu();
        WEYL_NU
            .iter()
            .map(|(p, s)| Self::from_nu(n[p[0]] * *s, n[p[1]] * *s))
            .collect()
    }

    /// Smallest |nu_j|; the walls are nu_j = 0.
    pub fn wall_distance(&self) -> f64 {
        self.nu().iter().map(|n| n.norm()).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestFunctionSpec {
    pub t: f64,
    /// Imaginary parts of (nu1, nu2) at the base point.
    pub nu0: [f64; 2],
    pub a: usize,
    pub eps: f64,
}

impl Default for TestFunctionSpec {
    fn default() -> Self {
        TestFunctionSpec {
            t: 8.0,
            nu0: [4.0, 4.0],
            a: 2,
            eps: 0.1,
        }
    }
}

impl TestFunctionSpec {
    pub fn with_t(t: f64) -> Self {
        TestFunctionSpec { t, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 1.0) {
            return Err(Error::Domain(format!("T={} must be at least 1", self.t)));
        }
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return Err(Error::Domain(format!("eps={} outside (0, 1/2)", self.eps)));
        }
        let base = SpectralParam::imaginary(self.nu0[0], self.nu0[1]);
        if base.wall_distance() < 1e-9 {
            return Err(Error::Domain("nu0 lies on a Weyl chamber wall".into()));
        }
        Ok(())
    }

    /// Gaussian width T^{1-eps}.
    pub fn width(&self) -> f64 {
        self.t.powf(1.0 - self.eps)
    }

    /// T times the Weyl orbit of nu0, as (u1, u2) with nu = i u.
    pub fn orbit_centres(&self) -> Vec<[f64; 2]> {
        let u0 = [self.nu0[0], self.nu0[1], -self.nu0[0] - self.nu0[1]];
        WEYL_NU
            .iter()
            .map(|(p, s)| [self.t * s * u0[p[0]], self.t * s * u0[p[1]]])
            .collect()
    }

    /// h_T(i u) for real u, in closed form.
    pub fn h_imag(&self, u1: f64, u2: f64) -> f64 {
        let u = [u1, u2, -u1 - u2];
        let mut sq = [u1 * u1, u2 * u2, u[2] * u[2]];
        sq.sort_by(f64::total_cmp);
        let t2 = self.t * self.t;
        let mut p = 1.0;
        for n in 0..=self.a {
            let c = ((1 + 2 * n) as f64).powi(2) / 9.0;
            for s in sq {
                p *= (-s - c) / t2;
            }
        }
        let tau2 = self.width().powi(2);
        let u0 = [self.nu0[0], self.nu0[1], -self.nu0[0] - self.nu0[1]];
        let mut terms = [0.0; 6];
        for (k, (perm, sign)) in WEYL_NU.iter().enumerate() {
            let mut d2 = 0.0;
            for j in 0..3 {
                let d = sign * u[perm[j]] - self.t * u0[j];
                d2 += d * d;
            }
            terms[k] = (-3.0 * d2 / tau2).exp();
        }
        terms.sort_by(f64::total_cmp);
        let s: f64 = terms.iter().sum();
        p * p * s * s
    }
}

/// h_T at an imaginary spectral parameter; Weyl invariant and nonnegative.
pub fn h_test(spec: &TestFunctionSpec, nu: &SpectralParam) -> Result<f64> {
    if !nu.is_imaginary() {
        return Err(Error::Domain("h_T is evaluated on Re nu = 0 only".into()));
    }
    let n = nu.nu();
    Ok(spec.h_imag(n[0].im, n[1].im))
}

/// One factor 3 v tan(3 pi v / 2), stable for large imaginary parts.
fn spec_factor(v: Complex64) -> Result<Complex64> {
    let z = v * (1.5 * PI);
    let (x, y) = (2.0 * z.re, 2.0 * z.im);
    let den = x.cos() + y.cosh();
    let t = if y.abs() > 40.0 {
        Complex64::new(0.0, y.signum())
    } else {
        if den.abs() < 1e-12 {
            return Err(Error::Pole(format!("tan(3 pi nu / 2) at nu = {}", v)));
        }
        Complex64::new(x.sin() / den, y.sinh() / den)
    };
    Ok(3.0 * v * t)
}

/// prod_j 3 nu_j tan(3 pi nu_j / 2).
pub fn spec_measure(nu: &SpectralParam) -> Result<Complex64> {
    let mut f = nu.nu().map(spec_factor).into_iter().collect::<Result<Vec<_>>>()?;
    f.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(f.iter().product())
}

/// spec(i u) for real u; each factor is -3 u_j tanh(3 pi u_j / 2).
pub fn spec_imag(u1: f64, u2: f64) -> f64 {
    [u1, u2, -u1 - u2]
        .iter()
        .map(|&u| -3.0 * u * (1.5 * PI * u).tanh())
        .product()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaReport {
    pub t: f64,
    pub signed: f64,
    pub abs: f64,
    pub step: f64,
    pub refined: f64,
    pub rel_change: f64,
}

/// Trapezoid sum of h_T(iu) spec(iu) over the square holding the T-orbit of nu0.
fn delta_sum(spec: &TestFunctionSpec, step: f64) -> f64 {
    let tau = spec.width();
    let reach = spec
        .orbit_centres()
        .iter()
        .flat_map(|c| [c[0].abs(), c[1].abs()])
        .fold(0.0, f64::max)
        + 8.0 * tau;
    let n = (reach / step).ceil() as i64;
    let rows: Vec<f64> = (-n..=n)
        .into_par_iter()
        .map(|i| {
            let u1 = i as f64 * step;
            (-n..=n)
                .map(|j| {
                    let u2 = j as f64 * step;
                    spec.h_imag(u1, u2) * spec_imag(u1, u2)
                })
                .sum()
        })
        .collect();
    rows.iter().sum::<f64>() * step * step / (64.0 * PI.powi(5))
}

/// (1/64 pi^5) int h_T(iu) spec(iu) du1 du2, with a halved-step refinement.
pub fn main_term_delta(spec: &TestFunctionSpec, step_over_width: f64) -> Result<DeltaReport> {
    spec.validate()?;
    let step = step_over_width * spec.width();
    let coarse = delta_sum(spec, step);
    let fine = delta_sum(spec, step / 2.0);
    let rel_change = ((fine - coarse) / fine).abs();
    if !rel_change.is_finite() {
        return Err(Error::Quadrature("main term did not evaluate to a finite value".into()));
    }
    Ok(DeltaReport {
        t: spec.t,
        signed: fine,
        abs: fine.abs(),
        step: step / 2.0,
        refined: coarse,
        rel_change,
    })
}

/// Least-squares slope of log y against log x.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mu_nu_round_trip() {
        let p = SpectralParam::from_nu(c(0.1, 0.7), c(-0.3, 0.2));
        let [n1, n2, n3] = p.nu();
        let m = p.mu();
        assert!((m[0] - (n1 - n3)).norm() < 1e-14);
        assert!((m[1] - (n2 - n1)).norm() < 1e-14);
        assert!((m[2] - (n3 - n2)).norm() < 1e-14);
        let q = SpectralParam::from_mu(m).unwrap();
        assert!((q.nu()[0] - n1).norm() < 1e-14 && (q.nu()[1] - n2).norm() < 1e-14);
        assert!(SpectralParam::from_mu([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn weyl_orbit_matches_mu_permutations() {
        let p = SpectralParam::imaginary(0.7, 0.2);
        let orbit = p.weyl_orbit();
        let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
        for perm in perms {
            let q = p.permute_mu(perm);
            assert!(orbit
                .iter()
                .any(|o| (o.nu()[0] - q.nu()[0]).norm() < 1e-14 && (o.nu()[1] - q.nu()[1]).norm() < 1e-14));
        }
    }

    #[test]
    fn h_test_is_weyl_invariant_exactly() {
        let spec = TestFunctionSpec::default();
        let p = SpectralParam::imaginary(30.1, 33.7);
        let h = h_test(&spec, &p).unwrap();
        assert!(h > 0.0);
        for q in p.weyl_orbit() {
            assert_eq!(h_test(&spec, &q).unwrap(), h);
        }
        assert!(h_test(&spec, &SpectralParam::from_nu(c(0.1, 1.0), c(0.0, 1.0))).is_err());
    }

    #[test]
    fn h_test_at_base_point() {
        let spec = TestFunctionSpec::default();
        let u = [spec.t * spec.nu0[0], spec.t * spec.nu0[1]];
        let h = spec.h_imag(u[0], u[1]);
        let uu = [u[0], u[1], -u[0] - u[1]];
        let mut p = 1.0;
        for n in 0..=spec.a {
            for x in uu {
                p *= (-x * x - ((1 + 2 * n) as f64).powi(2) / 9.0) / (spec.t * spec.t);
            }
        }
        assert!((h / (p * p) - 1.0).abs() < 1e-12);
        let far = spec.h_imag(0.5 * u[0], -0.3 * u[1]);
        assert!(far < 1e-16 * p * p);
    }

    #[test]
    fn spec_measure_values() {
        assert_eq!(spec_measure(&SpectralParam::imaginary(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let p = SpectralParam::imaginary(3.0, -1.2);
        let v = spec_measure(&p).unwrap();
        assert!(v.im.abs() < 1e-12 * v.norm());
        assert!((v.re - spec_imag(3.0, -1.2)).abs() < 1e-12 * v.norm());
        assert!(v.re < 0.0);
        for q in p.weyl_orbit() {
            assert!((spec_measure(&q).unwrap() - v).norm() < 1e-12 * v.norm());
        }
        let big = spec_measure(&SpectralParam::imaginary(200.0, 100.0)).unwrap();
        assert!((big.re - (-27.0 * 200.0 * 100.0 * 300.0)).abs() < 1e-6 * big.norm());
        assert!(matches!(
            spec_measure(&SpectralParam::from_nu(c(1.0 / 3.0, 0.0), c(0.2, 0.0))),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn delta_is_refinement_stable() {
        let r = main_term_delta(&TestFunctionSpec::with_t(8.0), 0.1).unwrap();
        assert!(r.signed < 0.0);
        assert!(r.rel_change < 1e-6);
    }
}
