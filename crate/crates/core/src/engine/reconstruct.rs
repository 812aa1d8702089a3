//! Recovery of generic (q, ρ) dependence from prime-field samples.
//!
//! At a fixed q₀ ∈ F_p the algebra is sampled at ρ = q₀ⁿ for consecutive n,
//! which fixes the ρ-Laurent coefficients (plus one check sample). Each
//! coefficient, as a function of q₀, is then recovered as a rational function
//! by Padé approximation over growing point sets, lifted to Q by rational
//! reconstruction, and finally checked against direct samples at a second prime.

use super::basis::CellularBasis;
use super::coords::CoordSystem;
use crate::error::{Result, WbqError};
use crate::scalars::{rational_reconstruct, Field, FieldSpec, Fp, Frac, Poly, RatFn, Ring, Scalar, P1, P2};
use crate::tensor::TensorParams;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

type F1 = Fp<P1>;

/// Σ_k c_k(q) ρ^k.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RhoLaurent(pub BTreeMap<i64, RatFn>);

impl RhoLaurent {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn to_scalar(&self, spec: &FieldSpec) -> Result<Scalar> {
        let rho = spec.rho();
        let mut acc = spec.zero();
        for (k, c) in &self.0 {
            acc = acc.add(&spec.from_ratfn(c)?.mul(&rho.pow_i(*k)));
        }
        Ok(acc)
    }
    pub fn eval_mod<const P: u64>(&self, q0: Fp<P>, rho: Fp<P>) -> Option<Fp<P>> {
        let mut acc = Fp(0);
        for (k, c) in &self.0 {
            let z = Fp::<P>(0);
            let n = c.num().eval_map(&q0, |a| z.from_rat_like(a));
            let d = c.den().eval_map(&q0, |a| z.from_rat_like(a));
            acc = acc.add(&n.mul(&d.inv()?).mul(&rho.pow_i(*k)));
        }
        Some(acc)
    }
}

/// What is computed at each sample, as a flat vector.
pub trait Extract: Sync {
    fn extract<const P: u64>(&self, basis: &CellularBasis, c: &CoordSystem<Fp<P>>) -> Result<Vec<Fp<P>>>;
}

/// Dense right-regular matrices of the generators, concatenated.
pub struct GeneratorMatrices;

impl Extract for GeneratorMatrices {
    fn extract<const P: u64>(&self, basis: &CellularBasis, c: &CoordSystem<Fp<P>>) -> Result<Vec<Fp<P>>> {
        let mut out = vec![];
        for g in basis.generators() {
            for row in c.regular_matrix(g)? {
                out.extend(row);
            }
        }
        Ok(out)
    }
}

/// All products C_a·C_b, expanded; entry (a, b, k) at (a·N + b)·N + k.
pub struct ProductTable;

impl Extract for ProductTable {
    fn extract<const P: u64>(&self, basis: &CellularBasis, c: &CoordSystem<Fp<P>>) -> Result<Vec<Fp<P>>> {
        let mut out = vec![];
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                out.extend(c.product(basis, a, b)?);
            }
        }
        Ok(out)
    }
}

/// ρ-interpolation degree bound 2·min(r,s) + 2.
pub fn degree_bound(r: usize, s: usize) -> usize {
    2 * r.min(s) + 2
}

fn first_n(basis: &CellularBasis) -> usize {
    (basis.r + basis.s).max(1)
}

fn sample<const P: u64, E: Extract>(basis: &CellularBasis, ex: &E, n: usize, q0: Fp<P>, seed: u64) -> Result<Vec<Fp<P>>> {
    let qt = q0.inv().ok_or_else(|| WbqError::InvalidInput("q0 = 0".into()))?;
    let c = CoordSystem::build(basis, TensorParams::new(n, qt), seed)?;
    ex.extract(basis, &c)
}

/// Solves for the ρ-Laurent coefficients c_{−D..D} at one q₀.
fn rho_coefficients<E: Extract>(basis: &CellularBasis, ex: &E, q0: F1, d: usize, seed: u64) -> Result<Vec<Vec<F1>>> {
    let n0 = first_n(basis);
    let m = 2 * d + 1;
    let rhos: Vec<F1> = (0..=m).map(|j| q0.pow_u((n0 + j) as u64)).collect();
    let samples: Vec<Vec<F1>> = (0..=m).map(|j| sample(basis, ex, n0 + j, q0, seed)).collect::<Result<_>>()?;
    // Vandermonde on ρ_0..ρ_{m−1} for the polynomial ρ^D·f(ρ)
    let mut vand: Vec<Vec<F1>> = (0..m).map(|j| (0..m).map(|k| rhos[j].pow_u(k as u64)).collect()).collect();
    let inv = invert(&mut vand).ok_or_else(|| WbqError::InterpolationUnstable("repeated ρ sample".into()))?;
    let len = samples[0].len();
    let mut out = vec![vec![F1::new(0); m]; len];
    for (e, coeffs) in out.iter_mut().enumerate() {
        let ys: Vec<F1> = (0..m).map(|j| samples[j][e].mul(&rhos[j].pow_u(d as u64))).collect();
        if ys.iter().all(|y| y.is_zero()) && samples[m][e].is_zero() {
            continue;
        }
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = F1::new(0);
            for j in 0..m {
                acc = acc.add(&inv[k][j].mul(&ys[j]));
            }
            *c = acc;
        }
        // check sample
        let r = rhos[m];
        let mut v = F1::new(0);
        for c in coeffs.iter().rev() {
            v = v.mul(&r).add(c);
        }
        if v != samples[m][e].mul(&r.pow_u(d as u64)) {
            return Err(WbqError::InterpolationUnstable(format!("ρ-degree exceeds {d}")));
        }
    }
    Ok(out)
}

fn invert<K: Field>(a: &mut [Vec<K>]) -> Option<Vec<Vec<K>>> {
    let n = a.len();
    let z = a[0][0].zero_like();
    let mut inv = crate::linalg::identity(n, &z);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let pi = a[c][c].inv()?;
        for x in a[c].iter_mut() {
            *x = x.mul(&pi);
        }
        for x in inv[c].iter_mut() {
            *x = x.mul(&pi);
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = a[c][k].mul(&f);
                    a[r][k] = a[r][k].sub(&t);
                    let t = inv[c][k].mul(&f);
                    inv[r][k] = inv[r][k].sub(&t);
                }
            }
        }
    }
    Some(inv)
}

fn interpolate<K: Field>(xs: &[K], ys: &[K]) -> Poly<K> {
    // Newton divided differences
    let n = xs.len();
    let z = xs[0].zero_like();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = c[i].sub(&c[i - 1]).div(&xs[i].sub(&xs[i - j])).expect("distinct points");
        }
    }
    let mut p = Poly::constant(c[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p.mul(&Poly::new(vec![xs[i].neg(), z.one_like()], z.clone())).add(&Poly::constant(c[i].clone()));
    }
    p
}

/// Maximal-quotient rational reconstruction of the function through (xs, ys).
pub fn pade<K: Field>(xs: &[K], ys: &[K]) -> Option<(Poly<K>, Poly<K>)> {
    let z = xs[0].zero_like();
    let y = interpolate(xs, ys);
    if y.is_zero() {
        return Some((y, Poly::constant(z.one_like())));
    }
    let mut modp = Poly::constant(z.one_like());
    for x in xs {
        modp = modp.mul(&Poly::new(vec![x.neg(), z.one_like()], z.clone()));
    }
    let (mut r0, mut r1) = (modp, y);
    let (mut t0, mut t1) = (Poly::zero(&z), Poly::constant(z.one_like()));
    let mut best: Option<(usize, Poly<K>, Poly<K>)> = None;
    while !r1.is_zero() {
        let (q, rem) = r0.divrem(&r1);
        let score = q.deg().unwrap_or(0);
        if best.as_ref().is_none_or(|b| score > b.0) {
            best = Some((score, r1.clone(), t1.clone()));
        }
        let t2 = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, rem);
        (t0, t1) = (t1, t2);
    }
    let (score, n, d) = best?;
    if score < 2 {
        return None;
    }
    let l = d.lead().inv()?;
    Some((n.scale(&l), d.scale(&l)))
}

fn lift(p: &Poly<F1>) -> Option<Poly<BigRational>> {
    let c = p.coeffs().iter().map(|x| rational_reconstruct(*x)).collect::<Option<Vec<_>>>()?;
    Some(Poly::new(c, crate::scalars::rat(0)))
}

fn eval_frac<K: Field>(n: &Poly<K>, d: &Poly<K>, x: &K) -> Option<K> {
    n.eval(x).div(&d.eval(x))
}

/// Outcome of a reconstruction run.
#[derive(Clone, Debug)]
pub struct Reconstructed {
    pub d: usize,
    pub values: Vec<RhoLaurent>,
    /// Number of q₀ samples used.
    pub points: usize,
}

const POINT_SCHEDULE: [usize; 5] = [16, 32, 64, 128, 256];
const HELD_OUT: usize = 3;

pub fn reconstruct<E: Extract>(basis: &CellularBasis, ex: &E, seed: u64, progress: &(dyn Fn(&str) + Sync)) -> Result<Reconstructed> {
    let d0 = degree_bound(basis.r, basis.s);
    match reconstruct_with(basis, ex, seed, d0, progress) {
        Err(WbqError::InterpolationUnstable(m)) if m.starts_with("ρ-degree") => {
            progress(&format!("ρ-degree bound {d0} too small, retrying with {}", 2 * d0));
            reconstruct_with(basis, ex, seed, 2 * d0, progress)
        }
        x => x,
    }
}

fn reconstruct_with<E: Extract>(basis: &CellularBasis, ex: &E, seed: u64, d: usize, progress: &(dyn Fn(&str) + Sync)) -> Result<Reconstructed> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_9e7a);
    let mut xs: Vec<F1> = vec![];
    let mut cols: Vec<Vec<Vec<F1>>> = vec![]; // per q0: entries × (2d+1)
    let mut results: Vec<Option<RhoLaurent>> = vec![];
    let mut pending: Vec<usize> = vec![];
    let mut failures = 0usize;
    for &target in &POINT_SCHEDULE {
        while xs.len() < target {
            let want = target - xs.len();
            let cand: Vec<F1> = (0..want).map(|_| F1::new(rng.gen_range(2..P1 - 1))).filter(|x| !xs.contains(x)).collect();
            let got: Vec<(F1, Result<Vec<Vec<F1>>>)> = cand.par_iter().map(|&q| (q, rho_coefficients(basis, ex, q, d, seed))).collect();
            for (q, r) in got {
                match r {
                    Ok(v) => {
                        xs.push(q);
                        cols.push(v);
                    }
                    Err(WbqError::RankCertificationFailed { .. }) => {
                        failures += 1;
                        if failures > 8 {
                            return Err(WbqError::InterpolationUnstable("too many degenerate sample points".into()));
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        progress(&format!("B_{{{},{}}}: {} sample points", basis.r, basis.s, xs.len()));
        let len = cols[0].len();
        if results.is_empty() {
            results = vec![None; len];
            pending = (0..len).collect();
        }
        let fit = xs.len() - HELD_OUT;
        let solved: Vec<(usize, Option<RhoLaurent>)> = pending
            .par_iter()
            .map(|&e| {
                let mut out = RhoLaurent::default();
                for k in 0..=2 * d {
                    let ys: Vec<F1> = cols.iter().map(|c| c[e][k]).collect();
                    if ys.iter().all(|y| y.is_zero()) {
                        continue;
                    }
                    let Some((n, den)) = pade(&xs[..fit], &ys[..fit]) else { return (e, None) };
                    for j in fit..xs.len() {
                        if eval_frac(&n, &den, &xs[j]) != Some(ys[j]) {
                            return (e, None);
                        }
                    }
                    let (Some(nq), Some(dq)) = (lift(&n), lift(&den)) else { return (e, None) };
                    let Some(f) = Frac::from_parts(nq, dq) else { return (e, None) };
                    out.0.insert(k as i64 - d as i64, f);
                }
                (e, Some(out))
            })
            .collect();
        pending.clear();
        for (e, r) in solved {
            match r {
                Some(v) => results[e] = Some(v),
                None => pending.push(e),
            }
        }
        if pending.is_empty() {
            let values: Vec<RhoLaurent> = results.into_iter().map(|x| x.unwrap()).collect();
            verify(basis, ex, &values, seed)?;
            return Ok(Reconstructed { d, values, points: xs.len() });
        }
    }
    Err(WbqError::InterpolationUnstable(format!("{} entries not recovered from {} points", pending.len(), xs.len())))
}

/// Compares against direct samples at the second prime.
fn verify<E: Extract>(basis: &CellularBasis, ex: &E, values: &[RhoLaurent], seed: u64) -> Result<()> {
    let n0 = first_n(basis);
    let checks: Vec<(u64, usize)> = vec![(1_234_567, n0), (7_654_321, n0 + 1), (31_415_926, n0 + 3)];
    checks.par_iter().try_for_each(|&(q, n)| {
        let q0 = Fp::<P2>::new(q);
        let direct = sample(basis, ex, n, q0, seed)?;
        let rho = q0.pow_u(n as u64);
        for (i, (v, x)) in values.iter().zip(&direct).enumerate() {
            if v.eval_mod(q0, rho) != Some(*x) {
                return Err(WbqError::InterpolationUnstable(format!("entry {i} disagrees at the check prime (n = {n})")));
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pade_recovers_rational_function() {
        let xs: Vec<F1> = (2..20).map(F1::new).collect();
        // (q^3 + 2)/(q^2 − 1)
        let ys: Vec<F1> = xs.iter().map(|x| x.pow_u(3).add(&F1::new(2)).div(&x.pow_u(2).sub(&F1::new(1))).unwrap()).collect();
        let (n, d) = pade(&xs, &ys).unwrap();
        assert_eq!(n.deg(), Some(3));
        assert_eq!(d.deg(), Some(2));
    }

    #[test]
    fn b11_generic_core() {
        let b = CellularBasis::new(1, 1);
        let r = reconstruct(&b, &GeneratorMatrices, 1, &|_| {}).unwrap();
        // row of e₁ (index 0) times e₁ = δ e₁
        let delta = FieldSpec::Generic.delta();
        assert_eq!(r.values[0].to_scalar(&FieldSpec::Generic).unwrap(), delta);
        assert!(r.values[1].is_zero());
    }
}
