//! Finite-dimensional right representations given by generator matrices.

use crate::linalg::{identity, mat_mul, trace, Mat};
use crate::relations::{defining_relations, Relation};
use crate::scalars::{Field, FieldSpec, Ring, Scalar};
use crate::words::{Elem, Gen, Word};

/// v ↦ v·M_g on row vectors.
#[derive(Clone, Debug)]
pub struct Rep {
    pub spec: FieldSpec,
    pub dim: usize,
    /// Positive generators.
    pub gens: Vec<(Gen, Mat<Scalar>)>,
    inv: Vec<(Gen, Mat<Scalar>)>,
}

impl Rep {
    pub fn new(spec: FieldSpec, dim: usize, gens: Vec<(Gen, Mat<Scalar>)>) -> Self {
        let q = spec.q();
        let c = q.sub(&q.inv().expect("q is invertible"));
        let inv = gens
            .iter()
            .filter_map(|(g, m)| {
                let gi = g.inverse()?;
                let mut m = m.clone();
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = row[i].sub(&c);
                }
                Some((gi, m))
            })
            .collect();
        Rep { spec, dim, gens, inv }
    }

    pub fn zero(&self) -> Scalar {
        self.spec.zero()
    }

    pub fn matrix(&self, g: Gen) -> &Mat<Scalar> {
        self.gens
            .iter()
            .chain(&self.inv)
            .find(|x| x.0 == g)
            .map(|x| &x.1)
            .unwrap_or_else(|| panic!("generator {g} not in this representation"))
    }

    fn act_word(&self, rows: &Mat<Scalar>, w: &Word) -> Mat<Scalar> {
        let z = self.zero();
        w.iter().fold(rows.clone(), |acc, g| mat_mul(&acc, self.matrix(*g), &z))
    }

    /// Each row acted on by x.
    pub fn act_rows(&self, rows: &Mat<Scalar>, x: &Elem) -> Mat<Scalar> {
        let z = self.zero();
        let mut cur = rows.clone();
        for f in &x.0 {
            let mut acc = vec![vec![z.clone(); self.dim]; cur.len()];
            for (c, w) in &f.0 {
                let cv = self.spec.eval_lz(c);
                for (a, b) in acc.iter_mut().zip(self.act_word(&cur, w)) {
                    for (x, y) in a.iter_mut().zip(b) {
                        if !y.is_zero() {
                            *x = x.add(&y.mul(&cv));
                        }
                    }
                }
            }
            cur = acc;
        }
        cur
    }

    pub fn elem_matrix(&self, x: &Elem) -> Mat<Scalar> {
        self.act_rows(&identity(self.dim, &self.zero()), x)
    }

    pub fn trace(&self, x: &Elem) -> Scalar {
        trace(&self.elem_matrix(x), &self.zero())
    }

    fn relation_matrix(&self, rel: &Relation) -> Mat<Scalar> {
        let sp = &self.spec;
        let (q, rho, delta) = (sp.q(), sp.rho(), sp.delta());
        let z = self.zero();
        let id = identity(self.dim, &z);
        let mut acc = vec![vec![z.clone(); self.dim]; self.dim];
        for (c, w) in &rel.terms {
            let cv = c.eval(&q, &rho, &delta);
            for (a, b) in acc.iter_mut().zip(self.act_word(&id, w)) {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = x.add(&y.mul(&cv));
                }
            }
        }
        acc
    }

    /// Names of the defining relations of B_{r,s} that fail.
    pub fn relation_failures(&self, r: usize, s: usize) -> Vec<String> {
        defining_relations(r, s)
            .into_iter()
            .filter(|rel| self.relation_matrix(rel).iter().flatten().any(|x| !x.is_zero()))
            .map(|rel| rel.name)
            .collect()
    }
}
