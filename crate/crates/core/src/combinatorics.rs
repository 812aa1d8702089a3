//! Partitions, labels of the cell poset, tableaux, coset representatives and weights.

use crate::error::{Result, WbqError};
use crate::scalars::QChar;
use serde_json::json;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(WbqError::InvalidInput(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }
    pub fn empty() -> Self {
        Partition(vec![])
    }
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn conjugate(&self) -> Self {
        let w = self.part(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }
    /// λ ⊵ μ (same size assumed by callers; sizes are compared too).
    pub fn dominates(&self, o: &Self) -> bool {
        if self.size() != o.size() {
            return false;
        }
        let n = self.len().max(o.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += o.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
    /// Removable nodes (row, col), 1-based.
    pub fn removable(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter(|&i| self.part(i) > self.part(i + 1)).map(|i| (i + 1, self.0[i])).collect()
    }
    /// Addable nodes (row, col), 1-based.
    pub fn addable(&self) -> Vec<(usize, usize)> {
        (0..=self.len()).filter(|&i| i == 0 || self.part(i) < self.part(i - 1)).map(|i| (i + 1, self.part(i) + 1)).collect()
    }
    /// Residue j − i of a node.
    pub fn residue(node: (usize, usize)) -> i64 {
        node.1 as i64 - node.0 as i64
    }
    pub fn add_node(&self, row: usize) -> Self {
        let mut p = self.0.clone();
        if row > p.len() {
            p.push(1);
        } else {
            p[row - 1] += 1;
        }
        Partition(p)
    }
    pub fn remove_node(&self, row: usize) -> Self {
        let mut p = self.0.clone();
        p[row - 1] -= 1;
        Partition::new(p).unwrap()
    }
    /// All partitions of n, in descending lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        rec(n, n, &mut vec![], &mut out);
        out
    }
    /// λ_i − λ_{i+1} < e for all i.
    pub fn is_e_restricted(&self, e: QChar) -> bool {
        match e {
            QChar::Infinite => true,
            QChar::Finite(e) => (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < e as usize),
        }
    }
    pub fn is_e_regular(&self, e: QChar) -> bool {
        self.conjugate().is_e_restricted(e)
    }
    /// Number of standard tableaux via the hook length formula.
    pub fn hook_count(&self) -> u128 {
        let c = self.conjugate();
        let mut den: u128 = 1;
        for i in 0..self.len() {
            for j in 0..self.0[i] {
                den *= (self.0[i] - j - 1 + c.part(j) - i - 1 + 1) as u128;
            }
        }
        (1..=self.size() as u128).product::<u128>() / den
    }
    pub fn to_json(&self) -> serde_json::Value {
        json!(self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Componentwise dominance on bipartitions.
pub fn bi_dominates(a: &(Partition, Partition), b: &(Partition, Partition)) -> bool {
    a.0.dominates(&b.0) && a.1.dominates(&b.1)
}

/// Node (f, λ) of the cell poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellLabel {
    pub f: usize,
    pub l1: Partition,
    pub l2: Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl CellLabel {
    pub fn new(f: usize, l1: Partition, l2: Partition) -> Self {
        CellLabel { f, l1, l2 }
    }
    pub fn r(&self) -> usize {
        self.f + self.l1.size()
    }
    pub fn s(&self) -> usize {
        self.f + self.l2.size()
    }
    pub fn conjugate(&self) -> Self {
        CellLabel { f: self.f, l1: self.l1.conjugate(), l2: self.l2.conjugate() }
    }
    pub fn bipartition(&self) -> (Partition, Partition) {
        (self.l1.clone(), self.l2.clone())
    }
    pub fn is_e_restricted(&self, e: QChar) -> bool {
        self.l1.is_e_restricted(e) && self.l2.is_e_restricted(e)
    }
    pub fn is_e_regular(&self, e: QChar) -> bool {
        self.l1.is_e_regular(e) && self.l2.is_e_regular(e)
    }
    /// Position in the canonical total order (smaller = earlier = higher).
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        o.f.cmp(&self.f).then_with(|| o.l1.cmp(&self.l1)).then_with(|| o.l2.cmp(&self.l2))
    }
    pub fn to_json(&self) -> serde_json::Value {
        json!({"f": self.f, "lambda1": self.l1.to_json(), "lambda2": self.l2.to_json()})
    }
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || WbqError::Parse(format!("bad label json {v}"));
        let f = v.get("f").and_then(|x| x.as_u64()).ok_or_else(bad)? as usize;
        let part = |k: &str| -> Result<Partition> {
            let a = v.get(k).and_then(|x| x.as_array()).ok_or_else(bad)?;
            let p = a.iter().map(|x| x.as_u64().map(|y| y as usize).ok_or_else(bad)).collect::<Result<Vec<_>>>()?;
            Partition::new(p)
        };
        Ok(CellLabel { f, l1: part("lambda1")?, l2: part("lambda2")? })
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},({},{}))", self.f, self.l1, self.l2)
    }
}

/// (f,λ) vs (ℓ,μ): larger f is higher; equal f compares bipartitions by dominance.
pub fn label_order(a: &CellLabel, b: &CellLabel) -> LabelOrder {
    if a == b {
        return LabelOrder::Equal;
    }
    match a.f.cmp(&b.f) {
        Ordering::Greater => LabelOrder::Greater,
        Ordering::Less => LabelOrder::Less,
        Ordering::Equal => {
            let (x, y) = (a.bipartition(), b.bipartition());
            if bi_dominates(&x, &y) {
                LabelOrder::Greater
            } else if bi_dominates(&y, &x) {
                LabelOrder::Less
            } else {
                LabelOrder::Incomparable
            }
        }
    }
}

/// Labels of B_{r,s}, degenerate sizes allowed (r or s may be 0).
pub fn labels_any(r: usize, s: usize) -> Vec<CellLabel> {
    let mut out = vec![];
    for f in (0..=r.min(s)).rev() {
        for l1 in Partition::all(r - f) {
            for l2 in Partition::all(s - f) {
                out.push(CellLabel { f, l1: l1.clone(), l2 });
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

pub fn enumerate_labels(r: usize, s: usize) -> Result<Vec<CellLabel>> {
    if r == 0 || s == 0 {
        return Err(WbqError::InvalidInput(format!("r, s >= 1 required (got r={r}, s={s})")));
    }
    Ok(labels_any(r, s))
}

/// Tableau with absolute entries, stored as rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len()).collect())
    }
    /// Row-reading fill with entries offset+1, offset+2, ...
    pub fn row_filled(shape: &Partition, offset: usize) -> Self {
        let mut k = offset;
        Tableau {
            rows: shape
                .parts()
                .iter()
                .map(|&l| {
                    (0..l)
                        .map(|_| {
                            k += 1;
                            k
                        })
                        .collect()
                })
                .collect(),
        }
    }
    /// Column-reading fill with entries offset+1, ...
    pub fn col_filled(shape: &Partition, offset: usize) -> Self {
        let conj = shape.conjugate();
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
        let mut k = offset;
        for (c, &h) in conj.parts().iter().enumerate() {
            for row in rows.iter_mut().take(h) {
                k += 1;
                row[c] = k;
            }
        }
        Tableau { rows }
    }
    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.rows.windows(2).all(|w| w[1].iter().enumerate().all(|(j, x)| w[0][j] < *x));
        rows_ok && cols_ok
    }
    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().copied()
    }
    /// Right action t·w of a word in simple transpositions (absolute indices).
    pub fn act(&self, word: &[usize]) -> Self {
        let mut t = self.clone();
        for &a in word {
            for x in t.rows.iter_mut().flatten() {
                if *x == a {
                    *x = a + 1;
                } else if *x == a + 1 {
                    *x = a;
                }
            }
        }
        t
    }
    /// All standard tableaux of the shape with entries offset+1..offset+|shape|.
    pub fn standard(shape: &Partition, offset: usize) -> Vec<Tableau> {
        fn rec(shape: &Partition, cur: &mut Vec<Vec<usize>>, next: usize, last: usize, out: &mut Vec<Tableau>) {
            if next > last {
                out.push(Tableau { rows: cur.clone() });
                return;
            }
            for i in 0..shape.len() {
                let len = cur[i].len();
                if len < shape.part(i) && (i == 0 || cur[i - 1].len() > len) {
                    cur[i].push(next);
                    rec(shape, cur, next + 1, last, out);
                    cur[i].pop();
                }
            }
        }
        let mut out = vec![];
        let mut cur = vec![vec![]; shape.len()];
        rec(shape, &mut cur, offset + 1, offset + shape.size(), &mut out);
        out.sort();
        // put the row-filled tableau first
        let t0 = Tableau::row_filled(shape, offset);
        if let Some(p) = out.iter().position(|t| *t == t0) {
            let t = out.remove(p);
            out.insert(0, t);
        }
        out
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "[{}]", rows.join("|"))
    }
}

/// Pair (t₁, t₂) for a bipartition at layer f.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauPair {
    pub f: usize,
    pub t1: Tableau,
    pub t2: Tableau,
}

impl fmt::Display for TableauPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t1, self.t2)
    }
}

pub fn standard_tableaux(l1: &Partition, l2: &Partition, f: usize) -> Vec<TableauPair> {
    let a = Tableau::standard(l1, f);
    let b = Tableau::standard(l2, f);
    let mut out = vec![];
    for x in &a {
        for y in &b {
            out.push(TableauPair { f, t1: x.clone(), t2: y.clone() });
        }
    }
    out
}

/// (t^λ, t_λ): row-filled and column-filled pairs.
pub fn initial_tableaux(l1: &Partition, l2: &Partition, f: usize) -> (TableauPair, TableauPair) {
    (
        TableauPair { f, t1: Tableau::row_filled(l1, f), t2: Tableau::row_filled(l2, f) },
        TableauPair { f, t1: Tableau::col_filled(l1, f), t2: Tableau::col_filled(l2, f) },
    )
}

/// Reduced word (absolute generator indices) of the permutation sending
/// offset+1+k to offset+1+img[k] under the right action.
pub fn reduced_word(img: &[usize], offset: usize) -> Vec<usize> {
    let mut a = img.to_vec();
    let mut word = vec![];
    loop {
        let Some(i) = (0..a.len().saturating_sub(1)).find(|&i| a[i] > a[i + 1]) else { break };
        a.swap(i, i + 1);
        word.push(offset + i + 1);
    }
    word
}

/// d(t): the permutation with t^λ·d(t) = t, as a reduced word.
pub fn d_of_tableau(t: &Tableau, offset: usize) -> Vec<usize> {
    let t0 = Tableau::row_filled(&t.shape(), offset);
    let m = t.shape().size();
    let mut img = vec![0; m];
    for (x, y) in t0.entries().zip(t.entries()) {
        img[x - offset - 1] = y - offset - 1;
    }
    reduced_word(&img, offset)
}

/// (d(t₁), d(t₂)) as reduced words.
pub fn d_of(t: &TableauPair) -> (Vec<usize>, Vec<usize>) {
    (d_of_tableau(&t.t1, t.f), d_of_tableau(&t.t2, t.f))
}

/// Letter of a word in the Coxeter generators s_i (V side) and s*_j (W side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SGen {
    V(usize),
    W(usize),
}

/// Element of D^f_{r,s}: i₁<…<i_f ≤ r and k ≤ j_k ≤ s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetRep {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl CosetRep {
    pub fn identity(f: usize) -> Self {
        CosetRep { i: (1..=f).collect(), j: (1..=f).collect() }
    }
    pub fn f(&self) -> usize {
        self.i.len()
    }
    /// s_{f,i_f} s*_{f,j_f} ⋯ s_{1,i_1} s*_{1,j_1} with s_{k,i} = s_k s_{k+1} ⋯ s_{i−1}.
    pub fn word(&self) -> Vec<SGen> {
        let mut w = vec![];
        for k in (1..=self.f()).rev() {
            w.extend((k..self.i[k - 1]).map(SGen::V));
            w.extend((k..self.j[k - 1]).map(SGen::W));
        }
        w
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{:?}{:?}", self.i, self.j)
    }
}

pub fn coset_reps(r: usize, s: usize, f: usize) -> Vec<CosetRep> {
    fn incr(r: usize, f: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == f {
            out.push(cur.clone());
            return;
        }
        for x in start..=r {
            cur.push(x);
            incr(r, f, x + 1, cur, out);
            cur.pop();
        }
    }
    fn js(s: usize, f: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len() + 1;
        if k > f {
            out.push(cur.clone());
            return;
        }
        for x in k..=s {
            cur.push(x);
            js(s, f, cur, out);
            cur.pop();
        }
    }
    if f > r.min(s) {
        return vec![];
    }
    let mut is = vec![];
    incr(r, f, 1, &mut vec![], &mut is);
    let mut jv = vec![];
    js(s, f, &mut vec![], &mut jv);
    let mut out = vec![];
    for i in &is {
        for j in &jv {
            out.push(CosetRep { i: i.clone(), j: j.clone() });
        }
    }
    // identity first
    out.sort_by_key(|d| (d != &CosetRep::identity(f), d.clone()));
    out
}

pub type Weight = Vec<i64>;

/// λ̃ = (λ⁽¹⁾, 0, …, 0, −reversed λ⁽²⁾) of length n.
pub fn phi_map(l: &CellLabel, n: usize) -> Result<Weight> {
    let need = l.r() + l.s();
    if n < need {
        return Err(WbqError::RankTooSmall { n, need });
    }
    Ok(phi_unchecked(l, n))
}

pub(crate) fn phi_unchecked(l: &CellLabel, n: usize) -> Weight {
    let mut w = vec![0i64; n];
    for (k, &p) in l.l1.parts().iter().enumerate() {
        w[k] = p as i64;
    }
    for (k, &p) in l.l2.parts().iter().enumerate() {
        w[n - 1 - k] -= p as i64;
    }
    w
}

pub fn is_dominant(w: &Weight) -> bool {
    w.windows(2).all(|x| x[0] >= x[1])
}

/// Λ(r,s) for rank n.
pub fn mixed_weights(r: usize, s: usize, n: usize) -> BTreeSet<Weight> {
    // distribute `pos` positive units and `neg` negative units over n slots, no slot both.
    fn rec(n: usize, k: usize, pos: usize, neg: usize, cur: &mut Weight, out: &mut BTreeSet<Weight>) {
        if k == n {
            if pos == 0 && neg == 0 {
                out.insert(cur.clone());
            }
            return;
        }
        for v in -(neg as i64)..=(pos as i64) {
            cur.push(v);
            let (p, q) = if v >= 0 { (pos - v as usize, neg) } else { (pos, neg - (-v) as usize) };
            rec(n, k + 1, p, q, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    for f in 0..=r.min(s) {
        rec(n, 0, r - f, s - f, &mut vec![], &mut out);
    }
    out
}

/// wt(i, j)_k = #{i_ℓ = k} − #{j_ℓ = k}; indices are 1-based.
pub fn weight_of(i: &[usize], j: &[usize], n: usize) -> Weight {
    let mut w = vec![0i64; n];
    for &x in i {
        w[x - 1] += 1;
    }
    for &x in j {
        w[x - 1] -= 1;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn label_examples() {
        let l = enumerate_labels(1, 1).unwrap();
        assert_eq!(l, vec![CellLabel::new(1, p(&[]), p(&[])), CellLabel::new(0, p(&[1]), p(&[1]))]);
        let l = enumerate_labels(2, 1).unwrap();
        assert_eq!(
            l,
            vec![
                CellLabel::new(1, p(&[1]), p(&[])),
                CellLabel::new(0, p(&[2]), p(&[1])),
                CellLabel::new(0, p(&[1, 1]), p(&[1]))
            ]
        );
        assert!(enumerate_labels(1, 0).is_err());
        assert_eq!(label_order(&l[0], &l[1]), LabelOrder::Greater);
        assert_eq!(label_order(&l[1], &l[2]), LabelOrder::Greater);
        assert_eq!(label_order(&l[2], &l[1]), LabelOrder::Less);
        assert_eq!(label_order(&l[1], &l[1]), LabelOrder::Equal);
        let a = CellLabel::new(0, p(&[3, 1, 1, 1]), p(&[]));
        let b = CellLabel::new(0, p(&[2, 2, 2]), p(&[]));
        assert_eq!(label_order(&a, &b), LabelOrder::Incomparable);
    }

    #[test]
    fn tableaux_examples() {
        let (t0, tc) = initial_tableaux(&p(&[4, 3, 1]), &p(&[]), 0);
        assert_eq!(t0.t1.rows, vec![vec![1, 2, 3, 4], vec![5, 6, 7], vec![8]]);
        assert_eq!(tc.t1.rows, vec![vec![1, 4, 6, 8], vec![2, 5, 7], vec![3]]);
        let (t0, _) = initial_tableaux(&p(&[1]), &p(&[3, 2, 1]), 1);
        assert_eq!(t0.t1.rows, vec![vec![2]]);
        assert_eq!(t0.t2.rows, vec![vec![2, 3, 4], vec![5, 6], vec![7]]);
        assert_eq!(Tableau::standard(&p(&[2, 1]), 0).len(), 2);
        let t = Tableau { rows: vec![vec![1, 3], vec![2]] };
        assert_eq!(d_of_tableau(&t, 0), vec![2]);
        assert!(d_of_tableau(&Tableau::row_filled(&p(&[3, 2]), 4), 4).is_empty());
    }

    #[test]
    fn d_of_composition_exhaustive() {
        for n in 0..=5 {
            for lam in Partition::all(n) {
                for off in [0, 2] {
                    let t0 = Tableau::row_filled(&lam, off);
                    for t in Tableau::standard(&lam, off) {
                        assert!(t.is_standard());
                        let w = d_of_tableau(&t, off);
                        assert_eq!(t0.act(&w), t);
                    }
                }
            }
        }
    }

    #[test]
    fn hook_lengths() {
        for n in 0..=6 {
            for lam in Partition::all(n) {
                assert_eq!(Tableau::standard(&lam, 0).len() as u128, lam.hook_count(), "{lam}");
            }
        }
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_reps(3, 2, 0), vec![CosetRep::identity(0)]);
        assert!(coset_reps(3, 2, 0)[0].word().is_empty());
        let d = coset_reps(2, 1, 1);
        assert_eq!(d.len(), 2);
        assert_eq!(d[1].word(), vec![SGen::V(1)]);
    }

    #[test]
    fn rank_identity() {
        for n in 2..=6usize {
            for r in 1..n {
                let s = n - r;
                let mut total: u128 = 0;
                for l in enumerate_labels(r, s).unwrap() {
                    let k = (l.l1.hook_count() * l.l2.hook_count()) * coset_reps(r, s, l.f).len() as u128;
                    total += k * k;
                }
                assert_eq!(total, (1..=n as u128).product::<u128>(), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let e2 = QChar::Finite(2);
        assert!(p(&[5]).is_e_restricted(QChar::Infinite));
        assert!(!CellLabel::new(0, p(&[2]), p(&[])).is_e_restricted(e2));
        for n in 0..=6 {
            for lam in Partition::all(n) {
                for e in [2, 3, 4] {
                    let e = QChar::Finite(e);
                    assert_eq!(lam.is_e_regular(e), lam.conjugate().is_e_restricted(e));
                }
            }
        }
    }

    #[test]
    fn partition_invariants() {
        for n in 0..=6 {
            let all = Partition::all(n);
            for a in &all {
                assert_eq!(a.conjugate().conjugate(), *a);
                assert_eq!(a.addable().len(), a.removable().len() + 1);
                for b in &all {
                    if a.dominates(b) {
                        assert!(b.conjugate().dominates(&a.conjugate()));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_order_refines_dominance() {
        for (r, s) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let l = enumerate_labels(r, s).unwrap();
            for (i, a) in l.iter().enumerate() {
                for (j, b) in l.iter().enumerate() {
                    if label_order(a, b) == LabelOrder::Greater {
                        assert!(i < j);
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let l = enumerate_labels(1, 1).unwrap();
        assert_eq!(phi_map(&l[0], 2).unwrap(), vec![0, 0]);
        assert_eq!(phi_map(&l[1], 2).unwrap(), vec![1, -1]);
        let l = enumerate_labels(2, 1).unwrap();
        assert_eq!(phi_map(&l[1], 3).unwrap(), vec![2, 0, -1]);
        assert!(matches!(phi_map(&l[1], 2), Err(WbqError::RankTooSmall { .. })));
    }

    #[test]
    fn weights() {
        let w = mixed_weights(1, 1, 2);
        assert_eq!(w, [vec![1, -1], vec![-1, 1], vec![0, 0]].into_iter().collect());
        for total in 2..=5usize {
            for r in 1..total {
                let s = total - r;
                let n = total;
                let dom: BTreeSet<Weight> = mixed_weights(r, s, n).into_iter().filter(is_dominant).collect();
                let img: BTreeSet<Weight> =
                    enumerate_labels(r, s).unwrap().iter().map(|l| phi_map(l, n).unwrap()).collect();
                assert_eq!(dom, img);
                assert_eq!(img.len(), enumerate_labels(r, s).unwrap().len());
            }
        }
    }

    #[test]
    fn tensor_index_weights_lie_in_mixed_weights() {
        for n in 2..=3usize {
            for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)] {
                let set = mixed_weights(r, s, n);
                let total = r + s;
                for code in 0..n.pow(total as u32) {
                    let mut c = code;
                    let mut d = vec![];
                    for _ in 0..total {
                        d.push(c % n + 1);
                        c /= n;
                    }
                    assert!(set.contains(&weight_of(&d[..r], &d[r..], n)));
                }
            }
        }
    }

    #[test]
    fn shifted_weights_form_an_ideal() {
        for total in 2..=5usize {
            for r in 1..total {
                let s = total - r;
                let n = total;
                let m = r + (n - 1) * s;
                let set: BTreeSet<Vec<usize>> = enumerate_labels(r, s)
                    .unwrap()
                    .iter()
                    .map(|l| phi_map(l, n).unwrap().iter().map(|&x| (x + s as i64) as usize).collect())
                    .collect();
                for lam in Partition::all(m).into_iter().filter(|p| p.len() <= n) {
                    let v: Vec<usize> = (0..n).map(|i| lam.part(i)).collect();
                    let below = set.iter().any(|w| {
                        let pw = Partition::new(w.clone()).unwrap();
                        pw.dominates(&lam)
                    });
                    assert_eq!(below, set.contains(&v), "r={r} s={s} {lam}");
                }
            }
        }
    }
}
