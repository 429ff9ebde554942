//! Combinatorics of the type A_{N-1} root system.
//!
//! Weights live in the epsilon basis with rational coordinates, canonicalized
//! so that they sum to zero.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 6;

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coords: Vec<Rational64>,
}

impl Weight {
    pub fn new(coords: Vec<Rational64>) -> Self {
        let n = coords.len() as i64;
        let mean = coords.iter().fold(Rational64::zero(), |a, &c| a + c) / Rational64::from(n.max(1));
        Weight {
            coords: coords.into_iter().map(|c| c - mean).collect(),
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Rational64::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight {
            coords: vec![Rational64::zero(); n],
        }
    }

    /// e_i - e_j (0-based indices).
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut c = vec![0i64; n];
        c[i] += 1;
        c[j] -= 1;
        Self::from_ints(&c)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn coords_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| *c.numer() as f64 / *c.denom() as f64)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn in_root_lattice(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer shifts c_i - c_N; these are the exponents of e^mu on the torus
    /// where the product of the eigenvalues is one.
    pub fn torus_exponents(&self) -> Option<Vec<i64>> {
        let last = *self.coords.last()?;
        self.coords
            .iter()
            .map(|&c| {
                let d = c - last;
                d.is_integer().then(|| d.to_integer())
            })
            .collect()
    }

    /// Coordinates in the basis of simple roots: b_k = c_1 + ... + c_k.
    /// `None` when the weight is not in the root lattice.
    pub fn simple_root_coords(&self) -> Option<Vec<i64>> {
        if !self.in_root_lattice() {
            return None;
        }
        let mut acc = Rational64::zero();
        let mut out = Vec::with_capacity(self.rank() - 1);
        for c in &self.coords[..self.rank() - 1] {
            acc += c;
            out.push(acc.to_integer());
        }
        Some(out)
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        // (w.mu)_{perm[i]} = mu_i
        let mut c = vec![Rational64::zero(); self.rank()];
        for (i, &p) in perm.iter().enumerate() {
            c[p] = self.coords[i];
        }
        Weight { coords: c }
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight {
            coords: self.coords.iter().map(|c| c * Rational64::from(k)).collect(),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    length: usize,
}

impl WeylElement {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Domain(format!("not a permutation: {:?}", perm)));
            }
            seen[p] = true;
        }
        let mut length = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    length += 1;
                }
            }
        }
        Ok(WeylElement { perm, length })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, w: &Weight) -> Weight {
        w.permuted(&self.perm)
    }
}

/// All N! elements, in lexicographic order of the permutation.
pub fn weyl_group(n: usize) -> Result<Vec<WeylElement>> {
    check_rank(n)?;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(WeylElement::new(perm.clone())?);
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

/// Dense polynomial or truncated series in one variable. Trailing zeros are
/// never stored; `order`, when set, is the highest degree that is exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QSeries<T> {
    coeffs: Vec<T>,
    order: Option<usize>,
}

impl<T: Clone + Zero + PartialEq> QSeries<T> {
    pub fn new(mut coeffs: Vec<T>, order: Option<usize>) -> Self {
        if let Some(k) = order {
            coeffs.truncate(k + 1);
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QSeries { coeffs, order }
    }

    pub fn polynomial(coeffs: Vec<T>) -> Self {
        Self::new(coeffs, None)
    }

    pub fn zero() -> Self {
        QSeries {
            coeffs: Vec::new(),
            order: None,
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl QSeries<i64> {
    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * q + c as f64)
    }

    pub fn eval_i64(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl fmt::Display for QSeries<i64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{}q", a)?,
                (_, 1) => write!(f, "q^{}", k)?,
                _ => write!(f, "{}q^{}", a, k)?,
            }
        }
        Ok(())
    }
}

pub fn positive_roots(n: usize) -> Result<Vec<Weight>> {
    check_rank(n)?;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Weight::root(n, i, j));
        }
    }
    Ok(out)
}

pub fn rho(n: usize) -> Result<Weight> {
    check_rank(n)?;
    let c = (0..n)
        .map(|i| Rational64::new(n as i64 - 1 - 2 * i as i64, 2))
        .collect();
    Ok(Weight::new(c))
}

/// Fundamental weight e_1 + ... + e_i, canonicalized.
pub fn fundamental_weight(n: usize, i: usize) -> Result<Weight> {
    check_rank(n)?;
    if i == 0 || i >= n {
        return Err(Error::Domain(format!("fundamental weight index {} out of 1..{}", i, n - 1)));
    }
    let c: Vec<i64> = (0..n).map(|k| i64::from(k < i)).collect();
    Ok(Weight::from_ints(&c))
}

/// Maps (l_{N-1}, ..., l_1) to l_1 w_1 + ... + l_{N-1} w_{N-1}.
pub fn aleph(l: &[i64]) -> Result<Weight> {
    let n = l.len() + 1;
    check_rank(n)?;
    if let Some(&x) = l.iter().find(|&&x| x < 0) {
        return Err(Error::Domain(format!("negative entry {} in {:?}", x, l)));
    }
    let mut c = vec![0i64; n];
    for (k, &lk) in l.iter().enumerate() {
        let i = n - 1 - k;
        for ck in c.iter_mut().take(i) {
            *ck += lk;
        }
    }
    Ok(Weight::from_ints(&c))
}

/// Inverse of [`aleph`] on dominant integral weights.
pub fn aleph_inverse(lambda: &Weight) -> Result<Vec<i64>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let n = lambda.rank();
    let c = lambda.coords();
    let mut l = vec![0i64; n - 1];
    for i in 1..n {
        let d = c[i - 1] - c[i];
        if !d.is_integer() {
            return Err(Error::Domain(format!("{} is not integral", lambda)));
        }
        l[n - 1 - i] = d.to_integer();
    }
    Ok(l)
}

fn poly_add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, cap: Option<usize>) {
    for (k, &c) in p.iter().enumerate() {
        let d = k + shift;
        if cap.map_or(false, |m| d > m) {
            break;
        }
        if acc.len() <= d {
            acc.resize(d + 1, 0);
        }
        acc[d] += c;
    }
}

/// Memoized Kostant q-partition function for a fixed rank. Positive roots are
/// processed in lexicographic order (i, j); the memo key is the root index and
/// the remaining weight in simple-root coordinates.
pub struct KostantTable {
    n: usize,
    // each root e_i - e_j covers simple roots i..j-1
    spans: Vec<(usize, usize)>,
    cap: Option<usize>,
    memo: HashMap<(usize, Vec<i64>), Vec<i64>>,
}

impl KostantTable {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, None)
    }

    /// Drops every term of degree above `cap`.
    pub fn with_cap(n: usize, cap: Option<usize>) -> Result<Self> {
        check_rank(n)?;
        let mut spans = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                spans.push((i, j));
            }
        }
        Ok(KostantTable {
            n,
            spans,
            cap,
            memo: HashMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&mut self, beta: &Weight) -> QSeries<i64> {
        let Some(b) = beta.simple_root_coords() else {
            return QSeries::zero();
        };
        if b.iter().any(|&x| x < 0) {
            return QSeries::zero();
        }
        let v = self.count(0, b);
        QSeries::new(v, self.cap)
    }

    fn count(&mut self, idx: usize, b: Vec<i64>) -> Vec<i64> {
        if let Some(cap) = self.cap {
            if b.iter().any(|&x| x > cap as i64) {
                return Vec::new();
            }
        }
        if idx == self.spans.len() {
            return if b.iter().all(|&x| x == 0) { vec![1] } else { Vec::new() };
        }
        let key = (idx, b);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (idx, b) = key;
        let (lo, hi) = self.spans[idx];
        // roots after idx cannot touch simple roots before the first index
        // still reachable; if b_k > 0 for some k no later root covers, bail
        if (0..self.n - 1).any(|k| b[k] != 0 && !self.spans[idx..].iter().any(|&(i, j)| i <= k && k < j)) {
            self.memo.insert((idx, b), Vec::new());
            return Vec::new();
        }
        let mut acc = Vec::new();
        let mut rem = b.clone();
        let mut k = 0usize;
        loop {
            if self.cap.map_or(false, |m| k > m) {
                break;
            }
            let sub = self.count(idx + 1, rem.clone());
            poly_add_shifted(&mut acc, &sub, k, self.cap);
            if rem[lo..hi].iter().any(|&x| x < 1) {
                break;
            }
            for x in &mut rem[lo..hi] {
                *x -= 1;
            }
            k += 1;
        }
        while acc.last() == Some(&0) {
            acc.pop();
        }
        self.memo.insert((idx, b), acc.clone());
        acc
    }
}

pub fn kostant_q_partition(beta: &Weight, n: usize) -> Result<QSeries<i64>> {
    if beta.rank() != n {
        return Err(Error::Domain(format!("weight of rank {} used with N={}", beta.rank(), n)));
    }
    Ok(KostantTable::new(n)?.get(beta))
}

/// Alternating Weyl sum of Kostant partitions, using the given table.
pub fn kostka_foulkes_with(table: &mut KostantTable, lambda: &Weight, beta: &Weight) -> Result<QSeries<i64>> {
    let n = table.rank();
    if lambda.rank() != n || beta.rank() != n {
        return Err(Error::Domain("rank mismatch".into()));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let r = rho(n)?;
    let lr = lambda + &r;
    let br = beta + &r;
    let mut acc: Vec<i64> = Vec::new();
    for w in weyl_group(n)? {
        let p = table.get(&(&w.act(&lr) - &br));
        let s = w.sign();
        for (k, &c) in p.coeffs().iter().enumerate() {
            if acc.len() <= k {
                acc.resize(k + 1, 0);
            }
            acc[k] += s * c;
        }
    }
    Ok(QSeries::new(acc, table.cap))
}

pub fn kostka_foulkes(lambda: &Weight, beta: &Weight, n: usize) -> Result<QSeries<i64>> {
    let mut table = KostantTable::new(n)?;
    kostka_foulkes_with(&mut table, lambda, beta)
}

/// Closed form for N=3: sum of q^i over max(l1,l2) <= i <= l1+l2 when
/// 3 divides l1-l2, else zero.
pub fn kf_closed_form_n3(l1: i64, l2: i64) -> Result<QSeries<i64>> {
    if l1 < 0 || l2 < 0 {
        return Err(Error::Domain(format!("negative index ({}, {})", l1, l2)));
    }
    if (l1 - l2).rem_euclid(3) != 0 {
        return Ok(QSeries::zero());
    }
    let mut c = vec![0i64; (l1 + l2) as usize + 1];
    for x in &mut c[l1.max(l2) as usize..] {
        *x = 1;
    }
    Ok(QSeries::polynomial(c))
}

/// Sum of q^{length(w)} over the Weyl group.
pub fn weyl_poincare_poly(n: usize) -> Result<QSeries<i64>> {
    let mut c = Vec::new();
    for w in weyl_group(n)? {
        let l = w.length();
        if c.len() <= l {
            c.resize(l + 1, 0);
        }
        c[l] += 1;
    }
    Ok(QSeries::polynomial(c))
}

/// Product of (1 + q + ... + q^{k-1}) over k = 1..N.
pub fn weyl_poincare_poly_product(n: usize) -> Result<QSeries<i64>> {
    check_rank(n)?;
    let mut acc = vec![1i64];
    for k in 2..=n {
        let mut next = vec![0i64; acc.len() + k - 1];
        for (i, &a) in acc.iter().enumerate() {
            for x in &mut next[i..i + k] {
                *x += a;
            }
        }
        acc = next;
    }
    Ok(QSeries::polynomial(acc))
}

/// Every dominant weight aleph(l) of rank n whose Kostka-Foulkes polynomial
/// can have a term of degree at most `k`. The bound used is that each
/// positive coordinate c_i of the canonical form forces at least c_i roots
/// starting at position i.
pub fn aleph_indices_up_to(n: usize, k: usize) -> Result<Vec<Vec<i64>>> {
    check_rank(n)?;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n - 1];
    fn rec(n: usize, k: usize, pos: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == n - 1 {
            if aleph_min_degree_bound(cur) <= k as i64 {
                out.push(cur.clone());
            }
            return;
        }
        // each l entry alone already contributes to the bound, so l <= n*k suffices
        for v in 0..=(k as i64 * n as i64) {
            cur[pos] = v;
            let mut probe = cur.clone();
            for x in probe.iter_mut().skip(pos + 1) {
                *x = 0;
            }
            if aleph_min_degree_bound(&probe) > k as i64 {
                break;
            }
            rec(n, k, pos + 1, cur, out);
        }
        cur[pos] = 0;
    }
    rec(n, k, 0, &mut cur, &mut out);
    Ok(out)
}

/// Lower bound on the lowest degree of the Kostka-Foulkes polynomial at
/// aleph(l) with beta = 0: the sum of the positive canonical coordinates.
pub fn aleph_min_degree_bound(l: &[i64]) -> i64 {
    let w = aleph(l).expect("nonnegative");
    let s = w
        .coords()
        .iter()
        .filter(|c| **c > Rational64::zero())
        .fold(Rational64::zero(), |a, c| a + c);
    // ceil
    let q = s.to_integer();
    if Rational64::from(q) == s {
        q
    } else {
        q + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QSeries<i64> {
        QSeries::polynomial(c.to_vec())
    }

    #[test]
    fn roots_and_rho() {
        assert_eq!(positive_roots(2).unwrap().len(), 1);
        assert_eq!(positive_roots(3).unwrap().len(), 3);
        assert_eq!(positive_roots(4).unwrap().len(), 6);
        assert!(positive_roots(1).is_err());
        let r = rho(2).unwrap();
        assert_eq!(r.coords(), &[Rational64::new(1, 2), Rational64::new(-1, 2)]);
        let sum = positive_roots(4)
            .unwrap()
            .iter()
            .fold(Weight::zero(4), |a, b| &a + b);
        assert_eq!(sum, rho(4).unwrap().scale(2));
    }

    #[test]
    fn aleph_examples() {
        assert!(aleph(&[0, 0]).unwrap().is_zero());
        assert_eq!(aleph(&[1, 1]).unwrap(), Weight::from_ints(&[1, 0, -1]));
        assert_eq!(
            aleph(&[1]).unwrap().coords(),
            &[Rational64::new(1, 2), Rational64::new(-1, 2)]
        );
        assert!(aleph(&[-1, 0]).is_err());
        // first entry multiplies the top fundamental weight
        assert_eq!(aleph(&[1, 0]).unwrap(), fundamental_weight(3, 2).unwrap());
        assert_eq!(aleph(&[0, 1]).unwrap(), fundamental_weight(3, 1).unwrap());
        for l in [[3, 0], [2, 5], [0, 4]] {
            assert_eq!(aleph_inverse(&aleph(&l).unwrap()).unwrap(), l.to_vec());
        }
    }

    #[test]
    fn root_lattice_membership() {
        for l1 in 0..5 {
            for l2 in 0..5 {
                let w = aleph(&[l2, l1]).unwrap();
                assert_eq!(w.in_root_lattice(), (l1 - l2) % 3 == 0);
            }
        }
    }

    #[test]
    fn kostant_examples() {
        assert_eq!(kostant_q_partition(&Weight::zero(3), 3).unwrap(), q(&[1]));
        assert_eq!(kostant_q_partition(&Weight::root(3, 0, 2), 3).unwrap(), q(&[0, 1, 1]));
        assert!(kostant_q_partition(&Weight::root(3, 1, 0), 3).unwrap().is_zero());
        // half-integral weight is outside the root lattice
        assert!(kostant_q_partition(&aleph(&[0, 1]).unwrap(), 3).unwrap().is_zero());
    }

    #[test]
    fn kostka_foulkes_examples() {
        assert_eq!(kostka_foulkes(&Weight::zero(3), &Weight::zero(3), 3).unwrap(), q(&[1]));
        assert_eq!(
            kostka_foulkes(&aleph(&[1, 1]).unwrap(), &Weight::zero(3), 3).unwrap(),
            q(&[0, 1, 1])
        );
        assert!(kostka_foulkes(&aleph(&[0, 1]).unwrap(), &Weight::zero(3), 3)
            .unwrap()
            .is_zero());
        let bad = Weight::from_ints(&[0, 1, -1]);
        assert!(matches!(
            kostka_foulkes(&bad, &Weight::zero(3), 3),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(kf_closed_form_n3(3, 0).unwrap(), q(&[0, 0, 0, 1]));
        assert_eq!(kf_closed_form_n3(2, 2).unwrap(), q(&[0, 0, 1, 1, 1]));
        assert!(kf_closed_form_n3(1, 0).unwrap().is_zero());
    }

    #[test]
    fn poincare_polys() {
        assert_eq!(weyl_poincare_poly(2).unwrap(), q(&[1, 1]));
        assert_eq!(weyl_poincare_poly(3).unwrap(), q(&[1, 2, 2, 1]));
        for n in 2..=MAX_RANK {
            let a = weyl_poincare_poly(n).unwrap();
            assert_eq!(a, weyl_poincare_poly_product(n).unwrap());
            assert_eq!(a.eval_i64(1), (1..=n as i64).product::<i64>());
        }
    }

    #[test]
    fn capped_table_truncates() {
        let lam = aleph(&[2, 2]).unwrap();
        let full = kostka_foulkes(&lam, &Weight::zero(3), 3).unwrap();
        let mut t = KostantTable::with_cap(3, Some(3)).unwrap();
        let cut = kostka_foulkes_with(&mut t, &lam, &Weight::zero(3)).unwrap();
        for k in 0..=3 {
            assert_eq!(full.coeff(k), cut.coeff(k));
        }
        assert!(cut.degree().unwrap_or(0) <= 3);
    }

    #[test]
    fn min_degree_bound_holds() {
        for l in aleph_indices_up_to(3, 6).unwrap() {
            let p = kostka_foulkes(&aleph(&l).unwrap(), &Weight::zero(3), 3).unwrap();
            if let Some(m) = p.min_degree() {
                assert!(m as i64 >= aleph_min_degree_bound(&l), "{:?}", l);
            }
        }
        // for N=3 the bound equals max(l1, l2) on the root lattice
        assert_eq!(aleph_min_degree_bound(&[2, 2]), 2);
        assert_eq!(aleph_min_degree_bound(&[3, 0]), 2);
    }

    #[test]
    fn weyl_group_sizes() {
        assert_eq!(weyl_group(3).unwrap().len(), 6);
        assert_eq!(weyl_group(4).unwrap().len(), 24);
        let signs: i64 = weyl_group(4).unwrap().iter().map(|w| w.sign()).sum();
        assert_eq!(signs, 0);
    }
}
