//! The cellular basis as generator words.

use crate::combinatorics::{coset_reps, d_of, labels_any, standard_tableaux, CellLabel, CosetRep, TableauPair};
use crate::words::{coset_word, e_word, young_symmetrizer_word, Elem, Gen, Symmetrizer, Word};
use std::collections::HashMap;

/// An element of I(f,λ) = Std(λ) × D^f.
pub type Frame = (TableauPair, CosetRep);

#[derive(Clone, Debug)]
pub struct BasisElem {
    pub label: usize,
    /// positions in `CellularBasis::frames[label]`
    pub left: usize,
    pub right: usize,
    pub word: Elem,
}

#[derive(Clone, Debug)]
pub struct CellularBasis {
    pub r: usize,
    pub s: usize,
    /// Labels in canonical order.
    pub labels: Vec<CellLabel>,
    pub frames: Vec<Vec<Frame>>,
    pub elems: Vec<BasisElem>,
    index: HashMap<(usize, usize, usize), usize>,
}

/// g_{d(t)} as a word.
pub fn dt_word(t: &TableauPair) -> Word {
    let (a, b) = d_of(t);
    let mut w: Word = a.into_iter().map(Gen::G).collect();
    w.extend(b.into_iter().map(Gen::H));
    w
}

/// σ(g_e)·e^f·σ(g_{d(s)})·n_λ·g_{d(t)}·g_d
pub fn cellular_word(label: &CellLabel, x: &Frame, y: &Frame) -> Elem {
    let (s, e) = x;
    let (t, d) = y;
    let mut left = coset_word(e);
    left.reverse();
    left.extend(e_word(label.f));
    let mut ds = dt_word(s);
    ds.reverse();
    left.extend(ds);
    let mut right = dt_word(t);
    right.extend(coset_word(d));
    Elem::word(left).mul(&young_symmetrizer_word(&label.l1, &label.l2, label.f, Symmetrizer::N)).mul(&Elem::word(right))
}

pub fn frames_of(label: &CellLabel) -> Vec<Frame> {
    let mut out = vec![];
    for t in standard_tableaux(&label.l1, &label.l2, label.f) {
        for d in coset_reps(label.r(), label.s(), label.f) {
            out.push((t.clone(), d));
        }
    }
    out
}

impl CellularBasis {
    /// Works for all r, s ≥ 0 (r = 0 or s = 0 gives a Hecke algebra).
    pub fn new(r: usize, s: usize) -> Self {
        let labels = labels_any(r, s);
        let frames: Vec<Vec<Frame>> = labels.iter().map(frames_of).collect();
        let mut elems = vec![];
        let mut index = HashMap::new();
        for (li, l) in labels.iter().enumerate() {
            let fr = &frames[li];
            for (a, x) in fr.iter().enumerate() {
                for (b, y) in fr.iter().enumerate() {
                    index.insert((li, a, b), elems.len());
                    elems.push(BasisElem { label: li, left: a, right: b, word: cellular_word(l, x, y) });
                }
            }
        }
        CellularBasis { r, s, labels, frames, elems, index }
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn index(&self, label: usize, left: usize, right: usize) -> usize {
        self.index[&(label, left, right)]
    }
    pub fn label_index(&self, l: &CellLabel) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }
    pub fn dim_cell(&self, label: usize) -> usize {
        self.frames[label].len()
    }
    /// Index of σ(C_{xy}) = C_{yx}.
    pub fn transpose_index(&self, i: usize) -> usize {
        let e = &self.elems[i];
        self.index(e.label, e.right, e.left)
    }
    /// The basis element equal to 1: label (0, (1^r), (1^s)).
    pub fn unit_index(&self) -> usize {
        let l = self
            .labels
            .iter()
            .position(|l| l.f == 0 && l.l1.parts().iter().all(|&p| p == 1) && l.l2.parts().iter().all(|&p| p == 1))
            .expect("column label exists");
        self.index(l, 0, 0)
    }
    pub fn generators(&self) -> Vec<Gen> {
        Gen::generators(self.r, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn basis_size_is_factorial() {
        for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2), (0, 3), (2, 0), (0, 0)] {
            assert_eq!(CellularBasis::new(r, s).len(), fact(r + s), "({r},{s})");
        }
    }

    #[test]
    fn unit_word_is_empty() {
        for (r, s) in [(1, 1), (2, 2), (3, 1)] {
            let b = CellularBasis::new(r, s);
            let u = &b.elems[b.unit_index()];
            assert_eq!(u.word.expand(), crate::words::Sum(vec![(crate::scalars::Lz::int(1), vec![])]));
        }
    }

    #[test]
    fn b11_words() {
        let b = CellularBasis::new(1, 1);
        assert_eq!(b.labels[0].f, 1);
        assert_eq!(b.elems[0].word, Elem::word(vec![Gen::E]));
    }
}
