//! Decomposition numbers by the trace method, blocks and semisimplicity.

use super::cell::{cell_module, gram_matrix, simple_quotient, CellModule, GramMatrix, SimpleModule};
use crate::combinatorics::{label_order, CellLabel, LabelOrder};
use crate::engine::{Algebra, CellularBasis};
use crate::error::{Result, WbqError};
use crate::linalg::RowSolver;
use crate::scalars::{Field, FieldSpec, Ring, Scalar};
use rayon::prelude::*;

/// Everything computed for one label.
#[derive(Clone, Debug)]
pub struct CellData {
    pub module: CellModule,
    pub gram: GramMatrix,
    pub simple: Option<SimpleModule>,
    /// Traces of all cellular basis elements on C(f,λ).
    pub cell_traces: Vec<Scalar>,
    /// Same on D^{f,λ}, when nonzero.
    pub simple_traces: Option<Vec<Scalar>>,
}

pub fn trace_vector(basis: &CellularBasis, rep: &super::Rep) -> Vec<Scalar> {
    basis.elems.iter().map(|e| rep.trace(&e.word)).collect()
}

pub fn cell_data(alg: &Algebra, label: usize) -> Result<CellData> {
    let module = cell_module(alg, label)?;
    let gram = gram_matrix(&alg.basis, &module);
    let simple = simple_quotient(&module, &gram);
    let cell_traces = trace_vector(&alg.basis, &module.rep);
    let simple_traces = simple.as_ref().map(|d| trace_vector(&alg.basis, &d.rep));
    Ok(CellData { module, gram, simple, cell_traces, simple_traces })
}

/// All labels, in parallel; results in label order.
pub fn analyze(alg: &Algebra) -> Result<Vec<CellData>> {
    (0..alg.basis.labels.len()).into_par_iter().map(|l| cell_data(alg, l)).collect()
}

/// d_{(f,λ),(ℓ,μ)} = [C(f,λ):D^{ℓ,μ}].
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionMatrix {
    pub labels: Vec<CellLabel>,
    /// Label indices with D ≠ 0.
    pub columns: Vec<usize>,
    /// One row per label.
    pub entries: Vec<Vec<i64>>,
}

impl DecompositionMatrix {
    /// Entry for row label `row` and column label `col` (0 if `col` is not a column).
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns.iter().position(|&c| c == col).map_or(0, |j| self.entries[row][j])
    }
    pub fn is_identity(&self) -> bool {
        self.columns.len() == self.labels.len() && (0..self.labels.len()).all(|i| (0..self.labels.len()).all(|j| self.get(i, self.columns[j]) == i64::from(i == self.columns[j])))
    }
    pub fn row_of(&self, l: &CellLabel) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }
}

/// Solves tr_{C(f,λ)} = Σ d·tr_{D^{ℓ,μ}} and checks integrality,
/// non-negativity and unitriangularity.
pub fn decompose(data: &[CellData], labels: &[CellLabel], z: &Scalar) -> Result<DecompositionMatrix> {
    let columns: Vec<usize> = (0..data.len()).filter(|&i| data[i].simple.is_some()).collect();
    let rows: Vec<Vec<Scalar>> = columns.iter().map(|&i| data[i].simple_traces.clone().unwrap()).collect();
    let solver = RowSolver::new(&rows, z);
    if solver.rank() != columns.len() {
        return Err(WbqError::TraceSystemSingular(format!("{} simple characters span only rank {}", columns.len(), solver.rank())));
    }
    let mut entries = vec![];
    for (i, d) in data.iter().enumerate() {
        let c = solver
            .express(&d.cell_traces)
            .ok_or_else(|| WbqError::TraceSystemSingular(format!("character of C{} is not a combination of simple characters", labels[i])))?;
        let mut row = vec![];
        for (j, x) in c.iter().enumerate() {
            let k = x
                .to_integer()
                .ok_or_else(|| WbqError::IntegralityViolation(format!("[C{}:D{}] = {}", labels[i], labels[columns[j]], x.to_text())))?;
            if k < 0 {
                return Err(WbqError::IntegralityViolation(format!("[C{}:D{}] = {k} < 0", labels[i], labels[columns[j]])));
            }
            if k != 0 && !matches!(label_order(&labels[i], &labels[columns[j]]), LabelOrder::Greater | LabelOrder::Equal) {
                return Err(WbqError::OracleMismatch(format!("D{} occurs in C{} against the cell order", labels[columns[j]], labels[i])));
            }
            if columns[j] == i && k != 1 {
                return Err(WbqError::OracleMismatch(format!("[C{0}:D{0}] = {k}", labels[i])));
            }
            row.push(k);
        }
        entries.push(row);
    }
    Ok(DecompositionMatrix { labels: labels.to_vec(), columns, entries })
}

pub fn decomposition_matrix(alg: &Algebra) -> Result<DecompositionMatrix> {
    let data = analyze(alg)?;
    decompose(&data, &alg.basis.labels, &alg.zero())
}

/// Linkage classes: labels sharing a nonzero column, closed transitively.
/// Each block is sorted; blocks are ordered by their first label.
pub fn blocks(d: &DecompositionMatrix) -> Vec<Vec<usize>> {
    let n = d.labels.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (j, &col) in d.columns.iter().enumerate() {
        for i in 0..n {
            if d.entries[i][j] != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, col));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = vec![];
    for i in 0..n {
        let r = find(&mut parent, i);
        match out.iter_mut().find(|b| find(&mut parent, b[0]) == r) {
            Some(b) => b.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

/// The closed-form semisimplicity criterion: e > max(r,s), and either
/// δ ≠ 0 with ρ² ≠ q^{2a} for |a| ≤ r+s−2, or δ = 0 with (r,s) one of
/// (1,2), (2,1), (1,3), (3,1).
pub fn predicted_semisimple(r: usize, s: usize, spec: &FieldSpec) -> bool {
    if !spec.quantum_characteristic().exceeds(r.max(s)) {
        return false;
    }
    if spec.delta().is_zero() {
        return matches!((r, s), (1, 2) | (2, 1) | (1, 3) | (3, 1));
    }
    let (q, rho) = (spec.q(), spec.rho());
    let rho2 = rho.mul(&rho);
    let k = (r + s) as i64 - 2;
    (-k..=k).all(|a| rho2 != q.pow_i(2 * a))
}

/// (computed, predicted): every Gram matrix nondegenerate vs. the closed form.
pub fn semisimplicity(alg: &Algebra) -> Result<(bool, bool)> {
    let computed = (0..alg.basis.labels.len())
        .into_par_iter()
        .map(|l| cell_module(alg, l).map(|m| gram_matrix(&alg.basis, &m).is_nondegenerate()))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|x| x);
    Ok((computed, predicted_semisimple(alg.basis.r, alg.basis.s, &alg.spec)))
}
