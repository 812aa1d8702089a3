//! B_{r,s} over a chosen field, as right-regular generator matrices in the
//! cellular basis.

use super::basis::CellularBasis;
use super::coords::CoordSystem;
use super::reconstruct::{reconstruct, GeneratorMatrices};
use crate::error::{Result, WbqError};
use crate::scalars::{Cyc, Field, FieldSpec, RatFn, RhoSpec, Ring, Scalar};
use crate::tensor::TensorParams;
use crate::words::{Elem, Gen};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Row-sparse matrix: row i lists (column, entry).
pub type SparseMat = Vec<Vec<(usize, Scalar)>>;

#[derive(Clone, Debug)]
pub struct Algebra {
    pub spec: FieldSpec,
    pub basis: Arc<CellularBasis>,
    /// Positive generators in `CellularBasis::generators` order.
    pub gens: Vec<(Gen, SparseMat)>,
    inv: HashMap<Gen, SparseMat>,
    pub seed: u64,
    /// ρ-degree bound used when the constants were interpolated.
    pub d: usize,
}

fn sparse_from_dense(m: Vec<Vec<Scalar>>) -> SparseMat {
    m.into_iter().map(|row| row.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()).collect()
}

impl Algebra {
    pub fn from_gens(spec: FieldSpec, basis: Arc<CellularBasis>, gens: Vec<(Gen, SparseMat)>, seed: u64, d: usize) -> Self {
        // g⁻¹ = g − (q − q⁻¹)
        let q = spec.q();
        let c = q.sub(&q.inv().unwrap());
        let mut inv = HashMap::new();
        for (g, m) in &gens {
            if let Some(gi) = g.inverse() {
                let rows = m
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let mut row = row.clone();
                        match row.iter_mut().find(|(k, _)| *k == i) {
                            Some(e) => e.1 = e.1.sub(&c),
                            None => {
                                row.push((i, c.neg()));
                                row.sort_by_key(|x| x.0);
                            }
                        }
                        row.retain(|(_, x)| !x.is_zero());
                        row
                    })
                    .collect();
                inv.insert(gi, rows);
            }
        }
        Algebra { spec, basis, gens, inv, seed, d }
    }

    /// Generic (q, ρ) constants by interpolation.
    pub fn generic(basis: Arc<CellularBasis>, seed: u64, progress: &(dyn Fn(&str) + Sync)) -> Result<Self> {
        let rc = reconstruct(&basis, &GeneratorMatrices, seed, progress)?;
        let n = basis.len();
        let spec = FieldSpec::Generic;
        let gens = basis
            .generators()
            .into_iter()
            .enumerate()
            .map(|(gi, g)| {
                let rows = (0..n)
                    .map(|i| {
                        (0..n)
                            .filter_map(|k| {
                                let v = &rc.values[(gi * n + i) * n + k];
                                (!v.is_zero()).then(|| v.to_scalar(&spec).map(|x| (k, x)))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<SparseMat>>()?;
                Ok((g, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Algebra::from_gens(spec, basis, gens, seed, rc.d))
    }

    /// Base change of Generic constants.
    pub fn specialize(&self, spec: FieldSpec) -> Result<Self> {
        if self.spec != FieldSpec::Generic {
            return Err(WbqError::InvalidInput("only Generic constants can be specialized".into()));
        }
        spec.validate()?;
        let gens = self
            .gens
            .iter()
            .map(|(g, m)| {
                let rows = m
                    .par_iter()
                    .map(|row| {
                        let mut out = vec![];
                        for (k, x) in row {
                            let y = spec.specialize(x)?;
                            if !y.is_zero() {
                                out.push((*k, y));
                            }
                        }
                        Ok(out)
                    })
                    .collect::<Result<SparseMat>>()?;
                Ok((*g, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Algebra::from_gens(spec, self.basis.clone(), gens, self.seed, self.d))
    }

    /// Constants computed directly in a faithful tensor space where ρ is a
    /// power of q: QPower(a) with a ≥ r+s, or Cyclotomic with ρ = ζ^a.
    pub fn direct(basis: Arc<CellularBasis>, spec: FieldSpec, seed: u64) -> Result<Self> {
        let need = (basis.r + basis.s).max(1);
        let gens = match spec {
            FieldSpec::QPower(a) if a >= need as i64 => {
                let z = crate::scalars::rat(0);
                let qt = RatFn::var_pow(&z, -1);
                let c = CoordSystem::build(&basis, TensorParams::new(a as usize, qt), seed)?;
                wrap(&basis, &c, Scalar::Q)?
            }
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(a) } => {
                spec.validate()?;
                let m64 = m as i64;
                let mut n = a.rem_euclid(m64);
                while n < need as i64 {
                    n += m64;
                }
                let qt = Cyc::zeta_pow(m, -1);
                let c = CoordSystem::build(&basis, TensorParams::new(n as usize, qt), seed)?;
                wrap(&basis, &c, Scalar::Cy)?
            }
            _ => return Err(WbqError::InvalidInput(format!("no faithful tensor space realizes {spec} directly"))),
        };
        Ok(Algebra::from_gens(spec, basis, gens, seed, 0))
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn zero(&self) -> Scalar {
        self.spec.zero()
    }
    pub fn matrix(&self, g: Gen) -> &SparseMat {
        match g {
            Gen::E | Gen::G(_) | Gen::H(_) => &self.gens.iter().find(|x| x.0 == g).expect("generator in range").1,
            _ => &self.inv[&g],
        }
    }
    pub fn unit_vec(&self, a: usize) -> Vec<Scalar> {
        let z = self.zero();
        let mut v = vec![z.clone(); self.len()];
        v[a] = z.one_like();
        v
    }
    pub fn one(&self) -> Vec<Scalar> {
        self.unit_vec(self.basis.unit_index())
    }

    pub fn act_gen(&self, v: &[Scalar], g: Gen) -> Vec<Scalar> {
        let m = self.matrix(g);
        let mut out = vec![self.zero(); v.len()];
        for (x, row) in v.iter().zip(m) {
            if x.is_zero() {
                continue;
            }
            for (k, c) in row {
                out[*k] = out[*k].add(&x.mul(c));
            }
        }
        out
    }

    /// v·x for a basis-coordinate vector v.
    pub fn act(&self, v: &[Scalar], x: &Elem) -> Vec<Scalar> {
        let mut cur = v.to_vec();
        for f in &x.0 {
            let mut acc = vec![self.zero(); cur.len()];
            for (c, w) in &f.0 {
                let mut y = cur.clone();
                for g in w {
                    y = self.act_gen(&y, *g);
                }
                let cv = self.spec.eval_lz(c);
                for (a, b) in acc.iter_mut().zip(y) {
                    if !b.is_zero() {
                        *a = a.add(&b.mul(&cv));
                    }
                }
            }
            cur = acc;
        }
        cur
    }

    /// Cellular-basis coordinates of a formal element.
    pub fn coords(&self, x: &Elem) -> Vec<Scalar> {
        self.act(&self.one(), x)
    }

    /// Expansion of C_a·C_b.
    pub fn product(&self, a: usize, b: usize) -> Vec<Scalar> {
        self.act(&self.unit_vec(a), &self.basis.elems[b].word)
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.zero(); self.len()];
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            let xb = self.act(x, &self.basis.elems[b].word);
            for (a, v) in acc.iter_mut().zip(xb) {
                if !v.is_zero() {
                    *a = a.add(&v.mul(yb));
                }
            }
        }
        acc
    }

    /// The full table C_a·C_b (row-compressed), rows in parallel.
    pub fn structure_constants(&self) -> Vec<Vec<SparseRow>> {
        (0..self.len())
            .into_par_iter()
            .map(|a| (0..self.len()).map(|b| compress(self.product(a, b))).collect())
            .collect()
    }
}

pub type SparseRow = Vec<(usize, Scalar)>;

pub fn compress(v: Vec<Scalar>) -> SparseRow {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

fn wrap<K: Field>(basis: &CellularBasis, c: &CoordSystem<K>, f: impl Fn(K) -> Scalar) -> Result<Vec<(Gen, SparseMat)>> {
    basis
        .generators()
        .into_iter()
        .map(|g| {
            let m = c.regular_matrix(g)?;
            Ok((g, sparse_from_dense(m.into_iter().map(|row| row.into_iter().map(&f).collect()).collect())))
        })
        .collect()
}
