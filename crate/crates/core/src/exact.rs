//! Adjoint factors in exact arithmetic at rational points of the torus.
//!
//! Points are built from the rational parametrisation of the unit circle,
//! alpha = ((1 - s^2) + 2 i s) / (1 + s^2), with the last coordinate fixed
//! by det = 1, so every coefficient is a Gaussian rational and the factor
//! identities can be checked without rounding.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjoint_l::{
    adjoint_factor_direct, adjoint_factor_n2_shimura, adjoint_factor_n3_explicit, AdjointForms, KfExpansion,
};
use crate::characters::{partition_of, SatakeParam};
use crate::error::{Error, Result};
use crate::lie_typea::kf_closed_form_n3;

pub type GaussInt = Complex<BigInt>;
pub type GaussRat = Complex<BigRational>;

fn gi(a: i64) -> GaussInt {
    Complex::new(BigInt::from(a), BigInt::zero())
}

fn pow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// A point of the torus with coordinates nums[i] / den, nums Gaussian
/// integers. Series coefficients are carried as numerators over a fixed
/// power of den so that every comparison is an integer comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalTorusPoint {
    nums: Vec<GaussInt>,
    den: BigInt,
}

impl RationalTorusPoint {
    /// Unit-circle points from the slopes s_i = a_i / b_i; the last
    /// coordinate is the inverse of the product of the others.
    pub fn from_slopes(slopes: &[(i64, i64)]) -> Result<Self> {
        if slopes.is_empty() {
            return Err(Error::InvalidRank(slopes.len() + 1));
        }
        if slopes.iter().any(|&(_, b)| b == 0) {
            return Err(Error::Domain("zero denominator".into()));
        }
        // (b + ia)^2 / (a^2 + b^2) has modulus one
        let ws: Vec<GaussInt> = slopes
            .iter()
            .map(|&(a, b)| {
                let z = Complex::new(BigInt::from(b), BigInt::from(a));
                &z * &z
            })
            .collect();
        let cs: Vec<BigInt> = slopes.iter().map(|&(a, b)| BigInt::from(a * a + b * b)).collect();
        let den = cs.iter().fold(BigInt::one(), |acc, c| acc * c);
        let mut nums: Vec<GaussInt> = ws.iter().zip(&cs).map(|(w, c)| w * (&den / c)).collect();
        // |prod w| = den, so the inverse of the product is its conjugate over den
        nums.push(ws.iter().fold(gi(1), |acc, w| acc * w).conj());
        Ok(RationalTorusPoint { nums, den })
    }

    /// Slopes drawn uniformly from {-h, ..., h} / {1, ..., h}.
    pub fn random<R: Rng>(n: usize, height: i64, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let slopes: Vec<(i64, i64)> = (0..n - 1)
            .map(|_| (rng.gen_range(-height..=height), rng.gen_range(1..=height)))
            .collect();
        Self::from_slopes(&slopes)
    }

    pub fn rank(&self) -> usize {
        self.nums.len()
    }

    pub fn alphas(&self) -> Vec<GaussRat> {
        self.nums
            .iter()
            .map(|z| {
                Complex::new(
                    BigRational::new(z.re.clone(), self.den.clone()),
                    BigRational::new(z.im.clone(), self.den.clone()),
                )
            })
            .collect()
    }

    pub fn to_satake(&self) -> Result<SatakeParam> {
        SatakeParam::new(self.alphas().iter().map(to_f64).collect())
    }

    /// Rescales numerators over den^e into the complex number they denote.
    pub fn value(&self, num: &GaussInt, e: u32) -> GaussRat {
        let d = pow(&self.den, e);
        Complex::new(BigRational::new(num.re.clone(), d.clone()), BigRational::new(num.im.clone(), d))
    }
}

fn to_f64(z: &GaussRat) -> num_complex::Complex64 {
    num_complex::Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

fn mul_geometric(s: &mut [GaussInt], a: &GaussInt, step: usize) {
    for k in step..s.len() {
        let prev = &s[k - step] * a;
        s[k] = &s[k] + prev;
    }
}

fn zeta_product(n: usize, order: usize) -> Vec<GaussInt> {
    let mut s = vec![gi(0); order + 1];
    s[0] = gi(1);
    for l in 2..=n {
        mul_geometric(&mut s, &gi(1), l);
    }
    s
}

fn mul_trunc(a: &[GaussInt], b: &[GaussInt], order: usize) -> Vec<GaussInt> {
    let mut out = vec![gi(0); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    out
}

fn check_scale(e: u32, need: usize) -> Result<()> {
    if (e as usize) < need {
        return Err(Error::Domain(format!("scale exponent {} below {}", e, need)));
    }
    Ok(())
}

/// Numerators over den^e of prod_{i != j} (1 - (a_i/a_j) t)^{-1} (1 - t)^{-(N-1)};
/// needs e >= 2 order.
pub fn direct_exact(x: &RationalTorusPoint, order: usize, e: u32) -> Result<Vec<GaussInt>> {
    check_scale(e, 2 * order)?;
    let b = &x.nums;
    let n = b.len();
    // coefficient k sits over den^{2k} until rescaled
    let mut s = vec![gi(0); order + 1];
    s[0] = gi(1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mul_geometric(&mut s, &(&b[i] * b[j].conj()), 1);
            }
        }
    }
    for (k, c) in s.iter_mut().enumerate() {
        *c = &*c * pow(&x.den, e - 2 * k as u32);
    }
    for _ in 1..n {
        mul_geometric(&mut s, &gi(1), 1);
    }
    Ok(s)
}

/// Schur polynomials at one point by Jacobi-Trudi, from the complete
/// homogeneous polynomials of the numerators.
pub struct SchurTable<'a> {
    point: &'a RationalTorusPoint,
    h: Vec<GaussInt>,
    perms: Vec<(Vec<usize>, bool)>,
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            out.push((prefix.clone(), odd));
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            go(prefix, rest, odd ^ (k % 2 == 1), out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), false, &mut out);
    out
}

impl<'a> SchurTable<'a> {
    /// Covers every partition with first part at most `lam_max`.
    pub fn new(point: &'a RationalTorusPoint, lam_max: usize) -> Self {
        let n = point.rank();
        let mut h = vec![gi(0); lam_max + n];
        h[0] = gi(1);
        for z in &point.nums {
            mul_geometric(&mut h, z, 1);
        }
        SchurTable { point, h, perms: permutations(n) }
    }

    /// Numerator of s_lambda over den^e for the partition attached to m.
    pub fn schur(&self, m: &[i64], e: u32) -> Result<GaussInt> {
        if m.len() + 1 != self.point.rank() {
            return Err(Error::Domain("rank mismatch".into()));
        }
        let lam = partition_of(m)?;
        let n = lam.len();
        let size: i64 = lam.iter().sum();
        check_scale(e, size as usize)?;
        if lam[0] as usize + n > self.h.len() {
            return Err(Error::Domain("partition beyond table".into()));
        }
        let mut det = gi(0);
        for (perm, odd) in &self.perms {
            let mut term = gi(1);
            for (i, &j) in perm.iter().enumerate() {
                let k = lam[i] - i as i64 + j as i64;
                if k < 0 {
                    term = gi(0);
                    break;
                }
                term *= &self.h[k as usize];
            }
            det = if *odd { det - term } else { det + term };
        }
        Ok(det * pow(&self.point.den, e - size as u32))
    }
}

fn lam_size(m: &[i64]) -> usize {
    partition_of(m).map(|l| l.iter().sum::<i64>() as usize).unwrap_or(0)
}

fn lam_first(m: &[i64]) -> usize {
    m.iter().sum::<i64>().max(0) as usize
}

/// Smallest scale exponent valid for every route at this order.
pub fn scale_exponent(exp: &KfExpansion) -> u32 {
    let kf = exp.terms().iter().map(|(l, _)| lam_size(l)).max().unwrap_or(0);
    kf.max(3 * exp.order()) as u32
}

pub fn kf_exact(exp: &KfExpansion, table: &SchurTable, e: u32) -> Result<Vec<GaussInt>> {
    let order = exp.order();
    let mut s = vec![gi(0); order + 1];
    for (l, poly) in exp.terms() {
        let v = table.schur(l, e)?;
        for (k, &c) in poly.iter().enumerate().take(order + 1) {
            if c != 0 {
                s[k] = &s[k] + &v * gi(c);
            }
        }
    }
    Ok(mul_trunc(&zeta_product(exp.rank(), order), &s, order))
}

pub fn n3_explicit_exact(table: &SchurTable, order: usize, e: u32) -> Result<Vec<GaussInt>> {
    let k = order as i64;
    let mut s = vec![gi(0); order + 1];
    for m1 in 0..=k {
        for m2 in 0..=k {
            if (m1 - m2).rem_euclid(3) != 0 {
                continue;
            }
            let poly = kf_closed_form_n3(m1, m2)?;
            if poly.min_degree().is_none_or(|d| d > order) {
                continue;
            }
            let a = table.schur(&[m1, m2], e)?;
            for (j, &c) in poly.coeffs().iter().enumerate().take(order + 1) {
                if c != 0 {
                    s[j] = &s[j] + &a * gi(c);
                }
            }
        }
    }
    Ok(mul_trunc(&zeta_product(3, order), &s, order))
}

pub fn n2_shimura_exact(table: &SchurTable, order: usize, e: u32) -> Result<Vec<GaussInt>> {
    let mut s = (0..=order)
        .map(|m| table.schur(&[2 * m as i64], e))
        .collect::<Result<Vec<_>>>()?;
    mul_geometric(&mut s, &gi(1), 2);
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactSweepReport {
    pub n: usize,
    pub order: usize,
    pub samples: usize,
    /// Samples at which some coefficient differs exactly.
    pub mismatches: usize,
    /// Largest |difference| of exact coefficients, rounded to f64.
    pub max_abs_dev: f64,
    /// The same comparison in floating point at the same points.
    pub float_max_abs_dev: f64,
    /// Floating deviation over max(1, |coefficient|).
    pub float_max_rel_dev: f64,
}

/// Exact comparison of the direct product with the other forms at
/// `samples` rational points; sample k uses stream k of a ChaCha generator
/// seeded with `seed`.
pub fn exact_sweep(
    n: usize,
    order: usize,
    samples: usize,
    seed: u64,
    height: i64,
    forms: AdjointForms,
) -> Result<ExactSweepReport> {
    if height < 1 {
        return Err(Error::Domain("height must be at least 1".into()));
    }
    let exp = KfExpansion::new(n, order)?;
    let e = scale_exponent(&exp);
    let lam_max = exp
        .terms()
        .iter()
        .map(|(l, _)| lam_first(l))
        .max()
        .unwrap_or(0)
        .max(2 * order);
    let rows: Vec<(bool, f64, f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let x = RationalTorusPoint::random(n, height, &mut rng)?;
            let table = SchurTable::new(&x, lam_max);
            let direct = direct_exact(&x, order, e)?;
            let mut others = vec![kf_exact(&exp, &table, e)?];
            if forms == AdjointForms::All && n == 3 {
                others.push(n3_explicit_exact(&table, order, e)?);
            }
            if forms == AdjointForms::All && n == 2 {
                others.push(n2_shimura_exact(&table, order, e)?);
            }
            let equal = others.iter().all(|o| *o == direct);
            let dev = others
                .iter()
                .flat_map(|o| o.iter().zip(&direct))
                .filter(|(a, b)| a != b)
                .map(|(a, b)| to_f64(&x.value(&(a - b), e)).norm())
                .fold(0.0, f64::max);

            let xf = x.to_satake()?;
            let df = adjoint_factor_direct(&xf, 2, order)?;
            let mut float = vec![exp.factor(&xf, 2)?];
            if forms == AdjointForms::All && n == 3 {
                float.push(adjoint_factor_n3_explicit(&xf, 2, order)?);
            }
            if forms == AdjointForms::All && n == 2 {
                float.push(adjoint_factor_n2_shimura(&xf, 2, order)?);
            }
            let mut fabs = 0.0f64;
            let mut frel = 0.0f64;
            for f in &float {
                for i in 0..=order {
                    let d = (f.coeff(i) - df.coeff(i)).norm();
                    fabs = fabs.max(d);
                    frel = frel.max(d / df.coeff(i).norm().max(1.0));
                }
            }
            Ok((equal, dev, fabs, frel))
        })
        .collect::<Result<_>>()?;
    Ok(ExactSweepReport {
        n,
        order,
        samples,
        mismatches: rows.iter().filter(|r| !r.0).count(),
        max_abs_dev: rows.iter().map(|r| r.1).fold(0.0, f64::max),
        float_max_abs_dev: rows.iter().map(|r| r.2).fold(0.0, f64::max),
        float_max_rel_dev: rows.iter().map(|r| r.3).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn points_lie_on_the_torus() {
        let x = RationalTorusPoint::from_slopes(&[(1, 2), (-3, 5)]).unwrap();
        let one = Complex::new(rat(1, 1), rat(0, 1));
        let prod = x.alphas().iter().fold(one, |a, z| a * z);
        assert_eq!(prod, Complex::new(rat(1, 1), rat(0, 1)));
        for z in x.alphas() {
            assert_eq!(z.norm_sqr(), rat(1, 1));
        }
        assert!(x.to_satake().unwrap().is_tempered());
    }

    #[test]
    fn schur_matches_float_route() {
        let x = RationalTorusPoint::from_slopes(&[(1, 3), (2, 7)]).unwrap();
        let xf = x.to_satake().unwrap();
        let table = SchurTable::new(&x, 8);
        for m in [[0, 0], [1, 0], [2, 1], [3, 3]] {
            let e = to_f64(&x.value(&table.schur(&m, 9).unwrap(), 9));
            let f = crate::characters::schur(&m, &xf).unwrap();
            assert!((e - f).norm() < 1e-12, "{:?} {} {}", m, e, f);
        }
    }

    #[test]
    fn identities_hold_exactly() {
        let x = RationalTorusPoint::from_slopes(&[(2, 5), (-1, 4)]).unwrap();
        let exp = KfExpansion::new(3, 6).unwrap();
        let e = scale_exponent(&exp);
        let table = SchurTable::new(&x, 12);
        let d = direct_exact(&x, 6, e).unwrap();
        assert_eq!(kf_exact(&exp, &table, e).unwrap(), d);
        assert_eq!(n3_explicit_exact(&table, 6, e).unwrap(), d);
        let y = RationalTorusPoint::from_slopes(&[(3, 4)]).unwrap();
        let ty = SchurTable::new(&y, 12);
        assert_eq!(n2_shimura_exact(&ty, 6, 12).unwrap(), direct_exact(&y, 6, 12).unwrap());
    }

    #[test]
    fn scale_guard() {
        let x = RationalTorusPoint::from_slopes(&[(1, 1)]).unwrap();
        assert!(direct_exact(&x, 4, 7).is_err());
    }
}
