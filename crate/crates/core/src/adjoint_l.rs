//! Local adjoint L-factors as truncated power series in t = p^{-s}.
//!
//! Three constructions are provided: the Euler product over adjoint
//! eigenvalues, the Kostka-Foulkes expansion against Schur values, and for
//! N = 3 the explicit double sum. Coefficients do not depend on p once the
//! Satake parameter is fixed; p is carried for reporting.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{adjoint_symmetric_power_chars, schur, weyl_character, SatakeParam, TorusPoint};
use crate::error::{Error, Result};
use crate::lie_typea::{
    aleph, aleph_indices_up_to, aleph_min_degree_bound, kf_closed_form_n3, kostka_foulkes_with, KostantTable,
    QSeries, Weight,
};
use crate::special::ln_gamma;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalFactor {
    pub series: QSeries<Complex64>,
    pub order: usize,
    pub p: u64,
    pub n: usize,
}

impl LocalFactor {
    fn new(coeffs: Vec<Complex64>, order: usize, p: u64, n: usize) -> Self {
        LocalFactor {
            series: QSeries::new(coeffs, Some(order)),
            order,
            p,
            n,
        }
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.series.coeff(k)
    }

    pub fn max_abs_dev(&self, other: &LocalFactor) -> f64 {
        let k = self.order.min(other.order);
        (0..=k)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}

fn mul_trunc(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); order + 1];
    for (i, &x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Multiplies in place by 1/(1 - a t^step).
fn mul_geometric(s: &mut [Complex64], a: Complex64, step: usize) {
    for k in step..s.len() {
        let prev = s[k - step];
        s[k] += a * prev;
    }
}

/// prod_{l=2}^{N} 1/(1 - t^l), truncated.
fn zeta_product(n: usize, order: usize) -> Vec<Complex64> {
    let mut s = vec![Complex64::zero(); order + 1];
    s[0] = Complex64::one();
    for l in 2..=n {
        mul_geometric(&mut s, Complex64::one(), l);
    }
    s
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::Domain(format!("p={} is not a prime", p)));
    }
    Ok(())
}

/// prod_{i != j} (1 - (a_i/a_j) t)^{-1} (1 - t)^{-(N-1)}.
pub fn adjoint_factor_direct(x: &SatakeParam, p: u64, order: usize) -> Result<LocalFactor> {
    check_prime(p)?;
    let mut s = vec![Complex64::zero(); order + 1];
    s[0] = Complex64::one();
    for e in x.adjoint_eigenvalues() {
        mul_geometric(&mut s, e, 1);
    }
    Ok(LocalFactor::new(s, order, p, x.rank()))
}

/// Kostka-Foulkes polynomials of every aleph(l) that can reach degree
/// `order`, computed once and reused across Satake parameters.
#[derive(Clone, Debug)]
pub struct KfExpansion {
    n: usize,
    order: usize,
    terms: Vec<(Vec<i64>, Vec<i64>)>,
}

impl KfExpansion {
    pub fn new(n: usize, order: usize) -> Result<Self> {
        let mut table = KostantTable::with_cap(n, Some(order))?;
        let zero = Weight::zero(n);
        let mut terms = Vec::new();
        for l in aleph_indices_up_to(n, order)? {
            let poly = kostka_foulkes_with(&mut table, &aleph(&l)?, &zero)?;
            if poly.is_zero() {
                continue;
            }
            let lo = poly.min_degree().unwrap_or(0);
            if (lo as i64) < aleph_min_degree_bound(&l) {
                return Err(Error::TruncationUnsound { found: lo, order });
            }
            terms.push((l, poly.coeffs().to_vec()));
        }
        Ok(KfExpansion { n, order, terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Pairs (l, coefficients of KF_{aleph(l)}).
    pub fn terms(&self) -> &[(Vec<i64>, Vec<i64>)] {
        &self.terms
    }

    /// sum over l of KF_{aleph(l)}(t) schur(l, x), without the zeta factors.
    pub fn weighted_sum<F>(&self, mut value: F) -> Result<Vec<Complex64>>
    where
        F: FnMut(&[i64]) -> Result<Complex64>,
    {
        let mut s = vec![Complex64::zero(); self.order + 1];
        for (l, poly) in &self.terms {
            let v = value(l)?;
            for (k, &c) in poly.iter().enumerate().take(self.order + 1) {
                s[k] += v * c as f64;
            }
        }
        Ok(s)
    }

    pub fn factor(&self, x: &SatakeParam, p: u64) -> Result<LocalFactor> {
        check_prime(p)?;
        if x.rank() != self.n {
            return Err(Error::Domain("rank mismatch".into()));
        }
        let sum = self.weighted_sum(|l| schur(l, x))?;
        let s = mul_trunc(&zeta_product(self.n, self.order), &sum, self.order);
        Ok(LocalFactor::new(s, self.order, p, self.n))
    }
}

pub const KF_MAX_ORDER: usize = 24;

/// zeta_p(2s)...zeta_p(Ns) times the sum of KF_{aleph(l)}(t) schur(l, x).
pub fn adjoint_factor_kf(x: &SatakeParam, p: u64, n: usize, order: usize) -> Result<LocalFactor> {
    if order > KF_MAX_ORDER {
        return Err(Error::Domain(format!("order {} above {}", order, KF_MAX_ORDER)));
    }
    KfExpansion::new(n, order)?.factor(x, p)
}

/// N = 3 double sum over 3 | m1 - m2 with the closed-form polynomials.
pub fn adjoint_factor_n3_explicit(x: &SatakeParam, p: u64, order: usize) -> Result<LocalFactor> {
    check_prime(p)?;
    if x.rank() != 3 {
        return Err(Error::UnsupportedRank { got: x.rank(), expected: 3 });
    }
    let k = order as i64;
    let mut s = vec![Complex64::zero(); order + 1];
    for m1 in 0..=k {
        for m2 in 0..=k {
            if (m1 - m2).rem_euclid(3) != 0 || m1.max(m2) > k {
                continue;
            }
            let a = schur(&[m1, m2], x)?;
            let poly = kf_closed_form_n3(m1, m2)?;
            for (j, &c) in poly.coeffs().iter().enumerate().take(order + 1) {
                s[j] += a * c as f64;
            }
        }
    }
    let s = mul_trunc(&zeta_product(3, order), &s, order);
    Ok(LocalFactor::new(s, order, p, 3))
}

/// N = 2: zeta_p(2s) sum_m schur((2m), x) t^m.
pub fn adjoint_factor_n2_shimura(x: &SatakeParam, p: u64, order: usize) -> Result<LocalFactor> {
    check_prime(p)?;
    if x.rank() != 2 {
        return Err(Error::UnsupportedRank { got: x.rank(), expected: 2 });
    }
    let mut s = (0..=order)
        .map(|m| schur(&[2 * m as i64], x))
        .collect::<Result<Vec<_>>>()?;
    mul_geometric(&mut s, Complex64::one(), 2);
    Ok(LocalFactor::new(s, order, p, 2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoincareReport {
    pub max_abs_dev: f64,
    pub degree: usize,
    pub n: usize,
    pub lhs: Vec<[f64; 2]>,
    pub rhs: Vec<[f64; 2]>,
}

/// Compares sum_n char(Sym^n adj) q^n with
/// prod_{l=2}^N (1 - q^l)^{-1} sum_lambda KF_lambda(q) char(V_lambda).
pub fn poincare_series_check(x: &TorusPoint, n: usize, degree: usize) -> Result<PoincareReport> {
    if x.rank() != n {
        return Err(Error::Domain("rank mismatch".into()));
    }
    let lhs = adjoint_symmetric_power_chars(degree, x);
    let exp = KfExpansion::new(n, degree)?;
    let sum = exp.weighted_sum(|l| weyl_character(&aleph(l)?, x))?;
    let rhs = mul_trunc(&zeta_product(n, degree), &sum, degree);
    let max_abs_dev = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(PoincareReport {
        max_abs_dev,
        degree,
        n,
        lhs: lhs.iter().map(|c| [c.re, c.im]).collect(),
        rhs: rhs.iter().map(|c| [c.re, c.im]).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaFactorSpec {
    pub mu: [Complex64; 3],
    pub s: Complex64,
}

/// pi^{-s/2} Gamma(s/2).
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    let h = s / 2.0;
    if h.re <= 1e-8 && (h.re - h.re.round()).abs() < 1e-8 && h.im.abs() < 1e-8 {
        return Err(Error::Pole(format!("Gamma_R({})", s)));
    }
    Ok((ln_gamma(h) - h * std::f64::consts::PI.ln()).exp())
}

/// Gamma_R(s)^2 prod_{i != j} Gamma_R(s - mu_j + mu_i).
pub fn completed_gamma_factor(spec: &GammaFactorSpec) -> Result<Complex64> {
    let mut v = gamma_r(spec.s)?.powi(2);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                v *= gamma_r(spec.s - spec.mu[j] + spec.mu[i])?;
            }
        }
    }
    Ok(v)
}

/// Random tempered parameter with independent uniform angles.
pub fn random_torus_point<R: Rng>(n: usize, rng: &mut R) -> TorusPoint {
    let t = (0..n - 1).map(|_| rng.gen::<f64>() * std::f64::consts::TAU).collect();
    TorusPoint::new(t).expect("finite")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub max_abs_dev: f64,
    pub order: usize,
    pub samples: usize,
    pub prime: u64,
}

/// Which factors the sweep compares against the direct product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdjointForms {
    /// KF expansion; plus the explicit sum for N = 3 and the Shimura form for N = 2.
    All,
    KfOnly,
}

/// Largest coefficient deviation between the direct product and the other
/// forms over `samples` random tempered parameters. Sample k is drawn from
/// stream k of a ChaCha generator seeded with `seed`.
pub fn three_way_sweep(n: usize, p: u64, order: usize, samples: usize, seed: u64, forms: AdjointForms) -> Result<IdentityReport> {
    let exp = KfExpansion::new(n, order)?;
    let devs: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let x = random_torus_point(n, &mut rng).satake();
            let direct = adjoint_factor_direct(&x, p, order)?;
            let mut dev = direct.max_abs_dev(&exp.factor(&x, p)?);
            if forms == AdjointForms::All {
                if n == 3 {
                    dev = dev.max(direct.max_abs_dev(&adjoint_factor_n3_explicit(&x, p, order)?));
                }
                if n == 2 {
                    dev = dev.max(direct.max_abs_dev(&adjoint_factor_n2_shimura(&x, p, order)?));
                }
            }
            Ok(dev)
        })
        .collect::<Result<_>>()?;
    Ok(IdentityReport {
        max_abs_dev: devs.iter().cloned().fold(0.0, f64::max),
        order,
        samples,
        prime: p,
    })
}
