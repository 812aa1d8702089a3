//! Dense exact linear algebra over any [`Field`]. Vectors are rows.

use crate::scalars::Field;

pub type Mat<K> = Vec<Vec<K>>;

/// Row-reduces in place to reduced echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<K: Field>(m: &mut Mat<K>) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        if !inv.is_one() {
            for x in m[row].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let prow = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<K: Field>(m: &Mat<K>) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of {x : m·xᵀ = 0}, one vector per free column (that entry set to 1).
pub fn kernel<K: Field>(m: &Mat<K>, ncols: usize, z: &K) -> Mat<K> {
    let mut c = m.clone();
    let piv = rref(&mut c);
    let mut out = vec![];
    for free in (0..ncols).filter(|j| !piv.contains(j)) {
        let mut v = vec![z.clone(); ncols];
        v[free] = z.one_like();
        for (r, &p) in piv.iter().enumerate() {
            v[p] = c[r][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn transpose<K: Field>(m: &Mat<K>) -> Mat<K> {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<K: Field>(a: &Mat<K>, b: &Mat<K>, z: &K) -> Mat<K> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![z.clone(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o = o.add(&x.mul(y));
                    }
                }
            }
            out
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul<K: Field>(v: &[K], b: &Mat<K>, z: &K) -> Vec<K> {
    let n = b.first().map_or(0, |r| r.len());
    let mut out = vec![z.clone(); n];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(&b[k]) {
            if !y.is_zero() {
                *o = o.add(&x.mul(y));
            }
        }
    }
    out
}

pub fn identity<K: Field>(n: usize, z: &K) -> Mat<K> {
    (0..n)
        .map(|i| {
            let mut r = vec![z.clone(); n];
            r[i] = z.one_like();
            r
        })
        .collect()
}

pub fn trace<K: Field>(m: &Mat<K>, z: &K) -> K {
    m.iter().enumerate().fold(z.clone(), |acc, (i, r)| acc.add(&r[i]))
}

pub fn det<K: Field>(m: &Mat<K>, z: &K) -> K {
    let n = m.len();
    let mut a = m.clone();
    let mut d = z.one_like();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else { return z.clone() };
        if p != col {
            a.swap(p, col);
            d = d.neg();
        }
        d = d.mul(&a[col][col]);
        let inv = a[col][col].inv().unwrap();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].mul(&inv);
            for j in col..n {
                let t = f.mul(&a[col][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    d
}

/// Echelonized row basis that can express vectors in terms of the original rows.
#[derive(Clone, Debug)]
pub struct RowSolver<K: Field> {
    rows: Mat<K>,
    pivots: Vec<usize>,
    /// `rows[i] = Σ_j trans[i][j] · original[j]`
    trans: Mat<K>,
    n_orig: usize,
    z: K,
}

impl<K: Field> RowSolver<K> {
    pub fn new(orig: &Mat<K>, z: &K) -> Self {
        let k = orig.len();
        let dim = orig.first().map_or(0, |r| r.len());
        // augmented [orig | I]
        let mut aug: Mat<K> = orig
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..k).map(|j| if i == j { z.one_like() } else { z.clone() }));
                v
            })
            .collect();
        let piv = rref(&mut aug);
        let mut rows = vec![];
        let mut pivots = vec![];
        let mut trans = vec![];
        for (r, p) in aug.into_iter().zip(piv) {
            if p >= dim {
                break;
            }
            rows.push(r[..dim].to_vec());
            trans.push(r[dim..].to_vec());
            pivots.push(p);
        }
        RowSolver { rows, pivots, trans, n_orig: k, z: z.clone() }
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    /// Coefficients c with Σ c_j original[j] = y, or None if y is outside the span.
    /// When the rows are dependent the choice of c is the canonical one
    /// supported on the pivot combinations.
    pub fn express(&self, y: &[K]) -> Option<Vec<K>> {
        let mut res = y.to_vec();
        let mut c = vec![self.z.clone(); self.n_orig];
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = res[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in res.iter_mut().zip(&self.rows[i]) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
            for (x, t) in c.iter_mut().zip(&self.trans[i]) {
                if !t.is_zero() {
                    *x = x.add(&f.mul(t));
                }
            }
        }
        res.iter().all(|x| x.is_zero()).then_some(c)
    }
    /// Reduces y modulo the row space; returns the residual.
    pub fn reduce(&self, y: &[K]) -> Vec<K> {
        let mut res = y.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = res[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in res.iter_mut().zip(&self.rows[i]) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        res
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Ring};
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Mat<BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_kernel_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3, &rat(0));
        assert_eq!(k.len(), 1);
        for row in &a {
            let s = row.iter().zip(&k[0]).fold(rat(0), |acc, (x, y)| acc + x * y);
            assert!(s.is_zero());
        }
        let sol = RowSolver::new(&a, &rat(0));
        assert_eq!(sol.rank(), 2);
        let y = vec![rat(3), rat(4), rat(7)]; // row0 + 2*row2
        let c = sol.express(&y).unwrap();
        let back = (0..3).map(|j| (0..3).fold(rat(0), |acc, i| acc + &c[i] * &a[i][j])).collect::<Vec<_>>();
        assert_eq!(back, y);
        assert!(sol.express(&[rat(0), rat(0), rat(1)]).is_none());
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]]), &rat(0)), rat(5));
        assert_eq!(det(&a, &rat(0)), rat(0));
    }
}
