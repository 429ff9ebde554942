//! Characters of SL(N) evaluated at Satake parameters and torus points.
//!
//! Index convention: `schur(m, x)` with m = (m_1, ..., m_{N-1}) is the
//! character of the irreducible representation with highest weight
//! `aleph(m)`, i.e. the Schur polynomial of the partition
//! (m_1 + ... + m_{N-1}, m_1 + ... + m_{N-2}, ..., m_1, 0).
//! With this choice the coefficient of t^k in the standard Euler factor is
//! `schur((0, ..., 0, k), x)`.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie_typea::{aleph, positive_roots, rho, weyl_group, QSeries, Weight};

const VANDERMONDE_FLOOR: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParam {
    alphas: Vec<Complex64>,
}

impl SatakeParam {
    pub fn new(alphas: Vec<Complex64>) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(Error::InvalidRank(alphas.len()));
        }
        if alphas.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Domain("non-finite eigenvalue".into()));
        }
        let prod: Complex64 = alphas.iter().product();
        if (prod - 1.0).norm() > 1e-12 * alphas.iter().map(|a| a.norm()).product::<f64>().max(1.0) {
            return Err(Error::Domain(format!("eigenvalue product {} is not 1", prod)));
        }
        Ok(SatakeParam { alphas })
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    pub fn is_tempered(&self) -> bool {
        self.alphas.iter().all(|a| (a.norm() - 1.0).abs() < 1e-12)
    }

    pub fn identity(n: usize) -> Self {
        SatakeParam {
            alphas: vec![Complex64::one(); n],
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        SatakeParam {
            alphas: perm.iter().map(|&i| self.alphas[i]).collect(),
        }
    }

    /// Eigenvalues of the adjoint action: a_i/a_j for i != j, then N-1 ones.
    pub fn adjoint_eigenvalues(&self) -> Vec<Complex64> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(self.alphas[i] / self.alphas[j]);
                }
            }
        }
        out.extend(std::iter::repeat(Complex64::one()).take(n - 1));
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    thetas: Vec<f64>,
}

impl TorusPoint {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidRank(1));
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return Err(Error::Domain("non-finite angle".into()));
        }
        Ok(TorusPoint { thetas })
    }

    pub fn identity(n: usize) -> Self {
        TorusPoint {
            thetas: vec![0.0; n - 1],
        }
    }

    pub fn rank(&self) -> usize {
        self.thetas.len() + 1
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// All N angles; the last is minus the sum of the others.
    pub fn full_angles(&self) -> Vec<f64> {
        let mut a = self.thetas.clone();
        a.push(-self.thetas.iter().sum::<f64>());
        a
    }

    pub fn satake(&self) -> SatakeParam {
        SatakeParam {
            alphas: self
                .full_angles()
                .iter()
                .map(|&t| Complex64::from_polar(1.0, t))
                .collect(),
        }
    }
}

/// Partition attached to m under the module's index convention.
pub fn partition_of(m: &[i64]) -> Result<Vec<i64>> {
    if m.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!("negative index in {:?}", m)));
    }
    let n = m.len() + 1;
    let mut lam = vec![0i64; n];
    for k in 0..n - 1 {
        lam[k] = m[..n - 1 - k].iter().sum();
    }
    Ok(lam)
}

/// Weyl dimension formula, exact.
pub fn weyl_dimension(lambda: &Weight) -> Result<u64> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let c = lambda.coords();
    let n = c.len();
    let mut d = Rational64::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = Rational64::from((j - i) as i64);
            d *= (c[i] - c[j] + gap) / gap;
        }
    }
    if !d.is_integer() {
        return Err(Error::Domain(format!("{} is not integral", lambda)));
    }
    Ok(d.to_integer() as u64)
}

pub(crate) fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::one();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[piv][col].is_zero() {
            return Complex64::zero();
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col];
        d *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[r][k] -= f * v;
            }
        }
    }
    d
}

/// Complete homogeneous symmetric polynomials h_0..=h_kmax.
pub fn complete_homogeneous(x: &[Complex64], kmax: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::zero(); kmax + 1];
    h[0] = Complex64::one();
    for &xi in x {
        for k in 1..=kmax {
            let prev = h[k - 1];
            h[k] += xi * prev;
        }
    }
    h
}

fn schur_bialternant(lam: &[i64], x: &[Complex64]) -> Complex64 {
    let n = x.len();
    let num = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| x[i].powi((lam[j] + (n - 1 - j) as i64) as i32))
                .collect()
        })
        .collect();
    let mut vand = Complex64::one();
    for i in 0..n {
        for j in i + 1..n {
            vand *= x[i] - x[j];
        }
    }
    det(num) / vand
}

fn schur_jacobi_trudi(lam: &[i64], x: &[Complex64]) -> Complex64 {
    let n = lam.len();
    let kmax = (lam[0] as usize) + n;
    let h = complete_homogeneous(x, kmax);
    let hk = |k: i64| if k < 0 { Complex64::zero() } else { h[k as usize] };
    let a = (0..n)
        .map(|i| (0..n).map(|j| hk(lam[i] - i as i64 + j as i64)).collect())
        .collect();
    det(a)
}

fn vandermonde_abs(x: &[Complex64]) -> f64 {
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= (x[i] - x[j]).norm();
        }
    }
    v
}

/// Which evaluation route `schur` takes at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurRoute {
    Scalar,
    Bialternant,
    JacobiTrudi,
}

pub fn schur_route(x: &SatakeParam) -> SchurRoute {
    let a = x.alphas();
    if a.iter().all(|&z| (z - a[0]).norm() < 1e-14) {
        SchurRoute::Scalar
    } else if vandermonde_abs(a) < VANDERMONDE_FLOOR {
        SchurRoute::JacobiTrudi
    } else {
        SchurRoute::Bialternant
    }
}

pub fn schur(m: &[i64], x: &SatakeParam) -> Result<Complex64> {
    if m.len() + 1 != x.rank() {
        return Err(Error::Domain(format!(
            "index of length {} used at rank {}",
            m.len(),
            x.rank()
        )));
    }
    let lam = partition_of(m)?;
    let a = x.alphas();
    Ok(match schur_route(x) {
        SchurRoute::Scalar => {
            let total: i64 = lam.iter().sum();
            a[0].powi(total as i32) * weyl_dimension(&aleph(m)?)? as f64
        }
        SchurRoute::JacobiTrudi => schur_jacobi_trudi(&lam, a),
        SchurRoute::Bialternant => schur_bialternant(&lam, a),
    })
}

/// Jacobi-Trudi evaluation regardless of the point; used as a cross-check.
pub fn schur_jt(m: &[i64], x: &SatakeParam) -> Result<Complex64> {
    let lam = partition_of(m)?;
    Ok(schur_jacobi_trudi(&lam, x.alphas()))
}

fn torus_monomial(mu: &Weight, x: &SatakeParam) -> Result<Complex64> {
    let e = mu
        .torus_exponents()
        .ok_or_else(|| Error::Domain(format!("{} is not in the weight lattice", mu)))?;
    Ok(x
        .alphas()
        .iter()
        .zip(&e)
        .map(|(a, &k)| a.powi(k as i32))
        .product())
}

/// Alternating Weyl numerator over the product of (1 - e^{-beta}).
pub fn weyl_character(lambda: &Weight, x: &TorusPoint) -> Result<Complex64> {
    let n = x.rank();
    if lambda.rank() != n {
        return Err(Error::Domain("rank mismatch".into()));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let s = x.satake();
    let r = rho(n)?;
    let lr = lambda + &r;
    let mut num = Complex64::zero();
    for w in weyl_group(n)? {
        num += w.sign() as f64 * torus_monomial(&(&w.act(&lr) - &r), &s)?;
    }
    let mut den = Complex64::one();
    for b in positive_roots(n)? {
        den *= Complex64::one() - torus_monomial(&-&b, &s)?;
    }
    if den.norm() < 1e-10 {
        return Err(Error::SingularPoint);
    }
    Ok(num / den)
}

/// Characters of the symmetric powers 0..=nmax of the adjoint representation,
/// by Newton's identity n h_n = sum_k p_k h_{n-k}.
pub fn adjoint_symmetric_power_chars(nmax: usize, x: &TorusPoint) -> Vec<Complex64> {
    let eig = x.satake().adjoint_eigenvalues();
    symmetric_power_chars(&eig, nmax)
}

pub(crate) fn symmetric_power_chars(eig: &[Complex64], nmax: usize) -> Vec<Complex64> {
    let mut p = vec![Complex64::zero(); nmax + 1];
    let mut pw = eig.to_vec();
    for pk in p.iter_mut().skip(1) {
        *pk = pw.iter().sum();
        for (w, &e) in pw.iter_mut().zip(eig) {
            *w *= e;
        }
    }
    let mut h = vec![Complex64::zero(); nmax + 1];
    h[0] = Complex64::one();
    for n in 1..=nmax {
        let mut acc = Complex64::zero();
        for k in 1..=n {
            acc += p[k] * h[n - k];
        }
        h[n] = acc / n as f64;
    }
    h
}

pub fn adjoint_symmetric_power_char(n: usize, x: &TorusPoint) -> Complex64 {
    adjoint_symmetric_power_chars(n, x)[n]
}

/// Euler factor of the standard L-function, prod (1 - a_i t)^{-1}, up to t^order.
pub fn standard_l_factor(x: &SatakeParam, order: usize) -> Result<QSeries<Complex64>> {
    if order < 1 {
        return Err(Error::Domain("truncation order must be at least 1".into()));
    }
    let mut acc = vec![Complex64::zero(); order + 1];
    acc[0] = Complex64::one();
    for &a in x.alphas() {
        // multiply by the geometric series in a t
        let mut next = vec![Complex64::zero(); order + 1];
        for (i, &c) in acc.iter().enumerate() {
            let mut pw = c;
            for slot in next.iter_mut().skip(i) {
                *slot += pw;
                pw *= a;
            }
        }
        acc = next;
    }
    Ok(QSeries::new(acc, Some(order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    fn pt(t: &[f64]) -> TorusPoint {
        TorusPoint::new(t.to_vec()).unwrap()
    }

    #[test]
    fn schur_examples() {
        let x = pt(&[0.3, 1.1]).satake();
        assert!(close(schur(&[0, 0], &x).unwrap(), Complex64::one(), 1e-14));
        let th = 0.7;
        let x2 = pt(&[th]).satake();
        assert!(close(schur(&[1], &x2).unwrap(), Complex64::new(2.0 * th.cos(), 0.0), 1e-13));
        let id = SatakeParam::identity(3);
        assert_eq!(schur(&[1, 1], &id).unwrap(), Complex64::new(8.0, 0.0));
        assert_eq!(schur_route(&id), SchurRoute::Scalar);
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&aleph(&[1, 1]).unwrap()).unwrap(), 8);
        assert_eq!(weyl_dimension(&aleph(&[0, 3]).unwrap()).unwrap(), 10);
        assert_eq!(weyl_dimension(&aleph(&[2, 0, 0]).unwrap()).unwrap(), 10);
    }

    #[test]
    fn near_identity_uses_jacobi_trudi() {
        let x = pt(&[1e-4, 2e-4]).satake();
        assert_eq!(schur_route(&x), SchurRoute::JacobiTrudi);
        let v = schur(&[1, 1], &x).unwrap();
        assert!((v.re - 8.0).abs() < 1e-6);
    }

    #[test]
    fn weyl_character_examples() {
        let x = pt(&[0.4, 2.0]);
        assert!(close(weyl_character(&Weight::zero(3), &x).unwrap(), Complex64::one(), 1e-12));
        let a = x.satake();
        let mut adj = Complex64::new(2.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    adj += a.alphas()[i] / a.alphas()[j];
                }
            }
        }
        assert!(close(weyl_character(&aleph(&[1, 1]).unwrap(), &x).unwrap(), adj, 1e-12));
        // identity limit approached along a regular ray
        let lam = aleph(&[0, 3]).unwrap();
        let v = weyl_character(&lam, &pt(&[1e-3, 2.1e-3])).unwrap();
        assert!((v.re - 10.0).abs() < 1e-3, "{}", v);
        assert!(matches!(
            weyl_character(&lam, &pt(&[0.0, 0.0])),
            Err(Error::SingularPoint)
        ));
    }

    #[test]
    fn convention_matches_weyl_character() {
        let x = pt(&[0.9, -2.3]);
        for m in [[1, 0], [0, 1], [2, 1], [0, 3]] {
            let a = schur(&m, &x.satake()).unwrap();
            let b = weyl_character(&aleph(&m).unwrap(), &x).unwrap();
            assert!(close(a, b, 1e-11), "{:?}: {} vs {}", m, a, b);
        }
    }

    #[test]
    fn symmetric_powers() {
        let id = TorusPoint::identity(3);
        assert_eq!(adjoint_symmetric_power_char(0, &id), Complex64::one());
        assert!(close(adjoint_symmetric_power_char(1, &id), Complex64::new(8.0, 0.0), 1e-14));
        assert!(close(
            adjoint_symmetric_power_char(2, &TorusPoint::identity(2)),
            Complex64::new(6.0, 0.0),
            1e-14
        ));
    }

    #[test]
    fn standard_factor_coefficients() {
        let x = pt(&[0.5, 2.5]).satake();
        let l = standard_l_factor(&x, 8).unwrap();
        assert_eq!(l.coeff(0), Complex64::one());
        let s: Complex64 = x.alphas().iter().sum();
        assert!(close(l.coeff(1), s, 1e-14));
        for k in 0..=6 {
            assert!(close(l.coeff(k), schur(&[0, k as i64], &x).unwrap(), 1e-11));
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SatakeParam::new(vec![Complex64::new(2.0, 0.0), Complex64::one()]).is_err());
        let x = SatakeParam::new(vec![Complex64::from_polar(1.0, PI / 3.0), Complex64::from_polar(1.0, -PI / 3.0)]).unwrap();
        assert!(x.is_tempered());
        assert!(schur(&[1, 1], &x).is_err());
    }
}
