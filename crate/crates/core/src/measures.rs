//! Sato-Tate and unramified p-adic Plancherel densities on the maximal torus
//! of SU(N), their character moments, and a rejection sampler.
//!
//! Densities are taken against the normalized Haar measure of the torus, so
//! both integrate to one.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{schur, TorusPoint};
use crate::error::{Error, Result};
use crate::lie_typea::weyl_poincare_poly;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum DensityKind {
    SatoTate,
    Plancherel { p: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensitySpec {
    pub kind: DensityKind,
    pub n: usize,
}

impl DensitySpec {
    pub fn sato_tate(n: usize) -> Self {
        DensitySpec {
            kind: DensityKind::SatoTate,
            n,
        }
    }

    pub fn plancherel(p: u64, n: usize) -> Self {
        DensitySpec {
            kind: DensityKind::Plancherel { p },
            n,
        }
    }

    pub fn eval(&self, x: &TorusPoint) -> f64 {
        match self.kind {
            DensityKind::SatoTate => sato_tate_density(x, self.n),
            DensityKind::Plancherel { p } => plancherel_density(x, p, self.n),
        }
    }

    /// Evaluator with the constant factor computed once.
    pub fn evaluator(&self) -> impl Fn(&TorusPoint) -> f64 + Sync + '_ {
        let (q, wf) = match self.kind {
            DensityKind::SatoTate => (0.0, 1.0 / factorial(self.n)),
            DensityKind::Plancherel { p } => {
                let q = 1.0 / p as f64;
                (q, weyl_factor(q, self.n))
            }
        };
        move |x: &TorusPoint| plancherel_kernel(x.thetas(), q, wf, self.n)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// (1/N!) prod_{i<j} |a_i - a_j|^2.
pub fn sato_tate_density(x: &TorusPoint, n: usize) -> f64 {
    debug_assert_eq!(x.rank(), n);
    let a = x.full_angles();
    let mut v = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            v *= 2.0 - 2.0 * (a[i] - a[j]).cos();
        }
    }
    v / factorial(n)
}

/// W(1/p) / prod_{i != j} (1 - a_i/(a_j p)) times the Sato-Tate density.
pub fn plancherel_density(x: &TorusPoint, p: u64, n: usize) -> f64 {
    let q = 1.0 / p as f64;
    plancherel_kernel(x.thetas(), q, weyl_factor(q, n), n)
}

fn weyl_factor(q: f64, n: usize) -> f64 {
    weyl_poincare_poly(n).expect("rank >= 2").eval_f64(q) / factorial(n)
}

// thetas holds N-1 free angles; `wf` is W(q)/N!.
fn plancherel_kernel(thetas: &[f64], q: f64, wf: f64, n: usize) -> f64 {
    let last = -thetas.iter().sum::<f64>();
    let ang = |i: usize| if i + 1 == n { last } else { thetas[i] };
    let mut num = 1.0;
    let mut den = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            let c = (ang(i) - ang(j)).cos();
            num *= 2.0 - 2.0 * c;
            den *= 1.0 - 2.0 * c * q + q * q;
        }
    }
    wf * num / den
}

/// Uniform tensor grid on [0, 2pi)^{N-1} with equal weights summing to one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureGrid {
    pub m: usize,
    pub dim: usize,
}

impl QuadratureGrid {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        if m == 0 {
            return Err(Error::Domain("grid needs at least one point".into()));
        }
        Ok(QuadratureGrid { m, dim: n - 1 })
    }

    pub fn len(&self) -> usize {
        self.m.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    pub fn node(&self, mut idx: usize) -> TorusPoint {
        let h = TAU / self.m as f64;
        let mut t = vec![0.0; self.dim];
        for slot in t.iter_mut().rev() {
            *slot = (idx % self.m) as f64 * h;
            idx /= self.m;
        }
        TorusPoint::new(t).expect("finite")
    }

    /// Sum of f over nodes times the weight. Rows along the first angle are
    /// summed in parallel and combined in a fixed order.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&TorusPoint) -> f64 + Sync,
    {
        let row = self.len() / self.m;
        let rows: Vec<f64> = (0..self.m)
            .into_par_iter()
            .map(|r| (r * row..(r + 1) * row).map(|i| f(&self.node(i))).sum())
            .collect();
        rows.iter().sum::<f64>() * self.weight()
    }

    fn integrate_complex<F>(&self, f: F) -> (f64, f64)
    where
        F: Fn(&TorusPoint) -> (f64, f64) + Sync,
    {
        let row = self.len() / self.m;
        let rows: Vec<(f64, f64)> = (0..self.m)
            .into_par_iter()
            .map(|r| {
                (r * row..(r + 1) * row).fold((0.0, 0.0), |acc, i| {
                    let v = f(&self.node(i));
                    (acc.0 + v.0, acc.1 + v.1)
                })
            })
            .collect();
        let (re, im) = rows.iter().fold((0.0, 0.0), |a, v| (a.0 + v.0, a.1 + v.1));
        (re * self.weight(), im * self.weight())
    }
}

/// Integral of schur(m, .) against the density. The imaginary part must
/// vanish to 1e-10.
pub fn character_moment_with(m: &[i64], density: &DensitySpec, grid: &QuadratureGrid) -> Result<f64> {
    if grid.dim + 1 != density.n || m.len() + 1 != density.n {
        return Err(Error::Domain("rank mismatch".into()));
    }
    let dens = density.evaluator();
    let (re, im) = grid.integrate_complex(|x| {
        let d = dens(x);
        if d == 0.0 {
            return (0.0, 0.0);
        }
        let s = schur(m, &x.satake()).expect("valid index");
        (s.re * d, s.im * d)
    });
    if im.abs() > 1e-10 {
        return Err(Error::Quadrature(format!("imaginary residue {:e}", im)));
    }
    Ok(re)
}

pub fn character_moment(m: &[i64], p: u64, n: usize, grid: &QuadratureGrid) -> Result<f64> {
    if grid.m < 64 {
        return Err(Error::Domain(format!("grid M={} below 64", grid.m)));
    }
    character_moment_with(m, &DensitySpec::plancherel(p, n), grid)
}

/// Certified upper bound on the Plancherel density.
pub fn plancherel_envelope(p: u64, n: usize) -> f64 {
    let q = 1.0 / p as f64;
    let w = weyl_poincare_poly(n).expect("rank >= 2").eval_f64(q);
    let e = (n * (n - 1)) as i32;
    w * (1.0 - q).powi(-e) * 2f64.powi(e) / factorial(n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSet {
    pub points: Vec<Vec<f64>>,
    pub proposals: u64,
    pub acceptance_rate: f64,
    pub envelope: f64,
}

/// Accepted samples drawn per independent stream.
pub const SAMPLES_PER_CHUNK: usize = 2048;

fn sample_chunk(p: u64, n: usize, quota: usize, seed: u64, stream: u64, env: f64) -> (Vec<Vec<f64>>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let q = 1.0 / p as f64;
    let wf = weyl_factor(q, n);
    let mut out = Vec::with_capacity(quota);
    let mut tries = 0u64;
    let mut t = vec![0.0; n - 1];
    while out.len() < quota {
        tries += 1;
        for x in t.iter_mut() {
            *x = rng.gen::<f64>() * TAU;
        }
        let u: f64 = rng.gen();
        let d = plancherel_kernel(&t, q, wf, n);
        debug_assert!(d <= env);
        if u * env < d {
            out.push(t.clone());
        }
    }
    (out, tries)
}

/// I.i.d. samples from the Plancherel measure by rejection from Haar measure.
/// The output depends only on (p, n, count, seed); chunk k is drawn from
/// stream k of a ChaCha generator seeded with `seed`.
pub fn sample_plancherel(p: u64, n: usize, count: usize, seed: u64) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    if p < 2 {
        return Err(Error::Domain(format!("p={} is not a prime", p)));
    }
    let env = plancherel_envelope(p, n);
    let chunks = count.div_ceil(SAMPLES_PER_CHUNK);
    let parts: Vec<(Vec<Vec<f64>>, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let quota = SAMPLES_PER_CHUNK.min(count - c * SAMPLES_PER_CHUNK);
            sample_chunk(p, n, quota, seed, c as u64, env)
        })
        .collect();
    let mut points = Vec::with_capacity(count);
    let mut proposals = 0;
    for (pts, tries) in parts {
        points.extend(pts);
        proposals += tries;
    }
    Ok(SampleSet {
        acceptance_rate: count as f64 / proposals as f64,
        points,
        proposals,
        envelope: env,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmpiricalMoment {
    pub mean: f64,
    pub mean_imag: f64,
    pub sigma: f64,
}

/// Sample mean of the real part of schur(m, .) with the standard error of
/// the mean.
pub fn empirical_moment(samples: &SampleSet, m: &[i64]) -> Result<EmpiricalMoment> {
    let vals: Vec<(f64, f64)> = samples
        .points
        .par_iter()
        .map(|t| {
            let x = TorusPoint::new(t.clone()).expect("finite");
            schur(m, &x.satake()).map(|v| (v.re, v.im))
        })
        .collect::<Result<_>>()?;
    let k = vals.len() as f64;
    let mean = vals.iter().map(|v| v.0).sum::<f64>() / k;
    let mean_imag = vals.iter().map(|v| v.1).sum::<f64>() / k;
    let var = vals.iter().map(|v| (v.0 - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
    Ok(EmpiricalMoment {
        mean,
        mean_imag,
        sigma: (var / k).sqrt(),
    })
}

/// Rows (theta_1, theta_2, density) on an m x m grid, rank 3 only.
pub fn density_table(spec: &DensitySpec, m: usize) -> Result<Vec<[f64; 3]>> {
    if spec.n != 3 {
        return Err(Error::UnsupportedRank { got: spec.n, expected: 3 });
    }
    let grid = QuadratureGrid::new(m, 3)?;
    Ok((0..grid.len())
        .map(|i| {
            let x = grid.node(i);
            [x.thetas()[0], x.thetas()[1], spec.eval(&x)]
        })
        .collect())
}

pub fn write_density_csv<W: Write>(out: &mut W, rows: &[[f64; 3]]) -> std::io::Result<()> {
    writeln!(out, "theta1,theta2,density")?;
    for r in rows {
        writeln!(out, "{:.12},{:.12},{:.12e}", r[0], r[1], r[2])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sato_tate_examples() {
        assert_eq!(sato_tate_density(&TorusPoint::identity(3), 3), 0.0);
        let x = TorusPoint::new(vec![PI / 2.0]).unwrap();
        assert!((sato_tate_density(&x, 2) - 2.0).abs() < 1e-14);
        let g = QuadratureGrid::new(64, 3).unwrap();
        assert!((g.integrate(|x| sato_tate_density(x, 3)) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn plancherel_normalized() {
        let g = QuadratureGrid::new(128, 3).unwrap();
        for p in [2, 3, 5] {
            let mass = g.integrate(|x| plancherel_density(x, p, 3));
            assert!((mass - 1.0).abs() < 1e-10, "p={} mass={}", p, mass);
        }
        assert_eq!(plancherel_density(&TorusPoint::identity(3), 2, 3), 0.0);
    }

    #[test]
    fn large_p_limit() {
        let x = TorusPoint::new(vec![0.4, 1.7]).unwrap();
        let a = plancherel_density(&x, 1_000_000_007, 3);
        assert!((a - sato_tate_density(&x, 3)).abs() < 1e-7);
    }

    #[test]
    fn envelope_dominates() {
        let g = QuadratureGrid::new(97, 3).unwrap();
        let env = plancherel_envelope(2, 3);
        for i in 0..g.len() {
            assert!(plancherel_density(&g.node(i), 2, 3) <= env);
        }
    }

    #[test]
    fn moment_examples() {
        let g = QuadratureGrid::new(128, 3).unwrap();
        assert!((character_moment(&[0, 0], 2, 3, &g).unwrap() - 1.0).abs() < 1e-10);
        assert!((character_moment(&[1, 1], 2, 3, &g).unwrap() - 0.75).abs() < 1e-10);
        assert!(character_moment(&[1, 0], 3, 3, &g).unwrap().abs() < 1e-10);
        assert!(character_moment(&[1, 0], 2, 3, &QuadratureGrid::new(32, 3).unwrap()).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = sample_plancherel(2, 3, 3000, 11).unwrap();
        let b = sample_plancherel(2, 3, 3000, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points.len(), 3000);
        let c = sample_plancherel(2, 3, 3000, 12).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn csv_has_header() {
        let rows = density_table(&DensitySpec::sato_tate(3), 4).unwrap();
        let mut buf = Vec::new();
        write_density_csv(&mut buf, &rows).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("theta1,theta2,density\n"));
        assert_eq!(s.lines().count(), 17);
    }
}
