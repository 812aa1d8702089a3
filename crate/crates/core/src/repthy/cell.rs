//! Cell modules, the cellular form and simple heads.

use super::rep::Rep;
use crate::combinatorics::{label_order, CellLabel, LabelOrder};
use crate::engine::{Algebra, CellularBasis};
use crate::error::{Result, WbqError};
use crate::linalg::{mat_mul, rank, rref, transpose, Mat, RowSolver};
use crate::scalars::{Cyc, Field, FieldSpec, RatFn, RhoSpec, Scalar};
use crate::tensor::{act_generator, contravariant_form, singular_vectors, TensorParams, TensorVector};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    StructureConstants,
    SingularVectors,
}

/// C(f,λ) on the index set Std(λ)×D^f, in the order of `CellularBasis::frames`.
#[derive(Clone, Debug)]
pub struct CellModule {
    pub label: CellLabel,
    pub provenance: Provenance,
    pub rep: Rep,
    /// Contravariant form on the singular vectors (SingularVectors only).
    pub form: Option<Mat<Scalar>>,
}

impl CellModule {
    pub fn dim(&self) -> usize {
        self.rep.dim
    }
}

/// Reads C(f,λ) off the right regular representation: the same-label part of
/// C_{a,y}·g, which must not depend on the left index a.
pub fn cell_module(alg: &Algebra, label: usize) -> Result<CellModule> {
    let b = &alg.basis;
    let lab = &b.labels[label];
    let dim = b.dim_cell(label);
    let z = alg.zero();
    let mut gens = vec![];
    for g in b.generators() {
        let m = alg.matrix(g);
        let mut out: Mat<Scalar> = vec![];
        for a in 0..dim {
            let mut block = vec![vec![z.clone(); dim]; dim];
            for (y, row) in block.iter_mut().enumerate() {
                for (k, c) in &m[b.index(label, a, y)] {
                    let e = &b.elems[*k];
                    if e.label == label && e.left == a {
                        row[e.right] = c.clone();
                    } else if e.label == label || label_order(&b.labels[e.label], lab) != LabelOrder::Greater {
                        return Err(WbqError::OracleMismatch(format!("C·{g} leaves the cell ideal of {lab}")));
                    }
                }
            }
            if a == 0 {
                out = block;
            } else if block != out {
                return Err(WbqError::OracleMismatch(format!("action of {g} on {lab} depends on the left index")));
            }
        }
        gens.push((g, out));
    }
    Ok(CellModule { label: lab.clone(), provenance: Provenance::StructureConstants, rep: Rep::new(alg.spec, dim, gens), form: None })
}

/// Tensor rank n for the singular-vector realization under `spec`.
pub fn tensor_rank_for(spec: &FieldSpec, r: usize, s: usize) -> Result<usize> {
    let need = (r + s).max(1);
    match *spec {
        FieldSpec::QPower(a) if a >= need as i64 => Ok(a as usize),
        FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(a) } => {
            let mut n = a.rem_euclid(m as i64);
            while n < need as i64 {
                n += m as i64;
            }
            Ok(n as usize)
        }
        _ => Err(WbqError::InvalidInput(format!("{spec} has no tensor space with rho = q^n and n >= {need}"))),
    }
}

/// C(f,λ) realized on the singular vectors v_{λ′,t,d}: every generator image
/// is expanded exactly in that family.
pub fn cell_module_singular(label: &CellLabel, spec: FieldSpec) -> Result<CellModule> {
    let (r, s) = (label.r(), label.s());
    let n = tensor_rank_for(&spec, r, s)?;
    match spec {
        FieldSpec::QPower(_) => {
            let z = crate::scalars::rat(0);
            let p = TensorParams::new(n, RatFn::var_pow(&z, -1));
            singular_realization(label, spec, &p, |x: RatFn| spec.from_ratfn(&x))
        }
        FieldSpec::Cyclotomic { m, .. } => {
            let p = TensorParams::new(n, Cyc::zeta_pow(m, -1));
            singular_realization(label, spec, &p, |x: Cyc| Ok(Scalar::Cy(x)))
        }
        _ => unreachable!(),
    }
}

fn singular_realization<K: Field>(label: &CellLabel, spec: FieldSpec, p: &TensorParams<K>, wrap: impl Fn(K) -> Result<Scalar>) -> Result<CellModule> {
    let vs = singular_vectors(&label.conjugate(), p)?;
    let z = p.zero();
    let codes: Vec<u64> = vs.iter().flat_map(|v| v.map.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let coords = |v: &TensorVector<K>| -> Option<Vec<K>> {
        if v.map.keys().any(|c| codes.binary_search(c).is_err()) {
            return None;
        }
        Some(codes.iter().map(|c| v.map.get(c).cloned().unwrap_or_else(|| z.clone())).collect())
    };
    let rows: Mat<K> = vs.iter().map(|v| coords(v).expect("own support")).collect();
    let solver = RowSolver::new(&rows, &z);
    if solver.rank() != vs.len() {
        return Err(WbqError::OracleMismatch(format!("singular vectors of {} are dependent", label.conjugate())));
    }
    let wrap_row = |r: Vec<K>| r.into_iter().map(&wrap).collect::<Result<Vec<_>>>();
    let mut gens = vec![];
    for g in crate::words::Gen::generators(label.r(), label.s()) {
        let mut m = vec![];
        for v in &vs {
            let img = act_generator(v, g, p)?;
            let c = coords(&img)
                .and_then(|y| solver.express(&y))
                .ok_or_else(|| WbqError::NotInSpan(format!("{g} moves a singular vector of {} off the singular family", label.conjugate())))?;
            m.push(wrap_row(c)?);
        }
        gens.push((g, m));
    }
    let form = vs.iter().map(|x| wrap_row(vs.iter().map(|y| contravariant_form(x, y, p)).collect())).collect::<Result<Mat<Scalar>>>()?;
    Ok(CellModule { label: label.clone(), provenance: Provenance::SingularVectors, rep: Rep::new(spec, vs.len(), gens), form: Some(form) })
}

/// The matrix of φ_{f,λ}, with rank.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub label: CellLabel,
    pub matrix: Mat<Scalar>,
    pub rank: usize,
}

impl GramMatrix {
    pub fn from_matrix(label: CellLabel, matrix: Mat<Scalar>) -> Self {
        let rank = rank(&matrix);
        GramMatrix { label, matrix, rank }
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.matrix.len()
    }
    /// Basis of Rad φ = {x : φ(x, ·) = 0}.
    pub fn radical(&self, z: &Scalar) -> Mat<Scalar> {
        crate::linalg::kernel(&transpose(&self.matrix), self.matrix.len(), z)
    }
}

/// φ(x,y) = coefficient of the frame a in x·C_{y,a}.
pub fn gram_matrix_at(basis: &CellularBasis, m: &CellModule, a: usize) -> Mat<Scalar> {
    let label = basis.label_index(&m.label).expect("label of this algebra");
    let dim = m.dim();
    let mut g = vec![vec![m.rep.zero(); dim]; dim];
    for y in 0..dim {
        let col = m.rep.elem_matrix(&basis.elems[basis.index(label, y, a)].word);
        for (x, row) in g.iter_mut().enumerate() {
            row[y] = col[x][a].clone();
        }
    }
    g
}

pub fn gram_matrix(basis: &CellularBasis, m: &CellModule) -> GramMatrix {
    GramMatrix::from_matrix(m.label.clone(), gram_matrix_at(basis, m, 0))
}

/// D^{f,λ} = C(f,λ)/Rad φ, realized on the row space of the Gram matrix.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    pub label: CellLabel,
    pub rep: Rep,
}

pub fn simple_quotient(m: &CellModule, g: &GramMatrix) -> Option<SimpleModule> {
    if g.rank == 0 {
        return None;
    }
    let z = m.rep.zero();
    let mut t = transpose(&g.matrix);
    let rows: Vec<usize> = rref(&mut t);
    let basis: Mat<Scalar> = rows.iter().map(|&i| g.matrix[i].clone()).collect();
    let solver = RowSolver::new(&basis, &z);
    let gens = m
        .rep
        .gens
        .iter()
        .map(|(gen, mg)| {
            let img = mat_mul(mg, &g.matrix, &z);
            let d = rows.iter().map(|&i| solver.express(&img[i]).expect("radical is a submodule")).collect();
            (*gen, d)
        })
        .collect();
    Some(SimpleModule { label: m.label.clone(), rep: Rep::new(m.rep.spec, rows.len(), gens) })
}
