//! Generator words and formal elements of B_{r,s}.
//!
//! Coefficients are Laurent polynomials in the presentation parameter q.
//! Elements are kept as products of sums so that symmetrizers never get
//! multiplied out before they act.

use crate::combinatorics::{coset_reps, reduced_word, CosetRep, Partition, SGen};
use crate::error::{Result, WbqError};
use crate::scalars::{Lz, Ring};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// e₁
    E,
    /// g_i
    G(usize),
    /// g_i⁻¹
    Gi(usize),
    /// g*_j
    H(usize),
    /// g*_j⁻¹
    Hi(usize),
}

impl Gen {
    pub fn inverse(self) -> Option<Gen> {
        match self {
            Gen::E => None,
            Gen::G(i) => Some(Gen::Gi(i)),
            Gen::Gi(i) => Some(Gen::G(i)),
            Gen::H(j) => Some(Gen::Hi(j)),
            Gen::Hi(j) => Some(Gen::H(j)),
        }
    }
    pub fn check(self, r: usize, s: usize) -> Result<()> {
        let ok = match self {
            Gen::E => r >= 1 && s >= 1,
            Gen::G(i) | Gen::Gi(i) => i >= 1 && i < r,
            Gen::H(j) | Gen::Hi(j) => j >= 1 && j < s,
        };
        if ok {
            Ok(())
        } else {
            Err(WbqError::IndexOutOfRange(format!("{self} in B_{{{r},{s}}}")))
        }
    }
    /// The positive generators of B_{r,s}.
    pub fn generators(r: usize, s: usize) -> Vec<Gen> {
        let mut v = vec![];
        if r >= 1 && s >= 1 {
            v.push(Gen::E);
        }
        v.extend((1..r).map(Gen::G));
        v.extend((1..s).map(Gen::H));
        v
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E => write!(f, "e1"),
            Gen::G(i) => write!(f, "g{i}"),
            Gen::Gi(i) => write!(f, "g{i}^-1"),
            Gen::H(j) => write!(f, "g*{j}"),
            Gen::Hi(j) => write!(f, "g*{j}^-1"),
        }
    }
}

pub type Word = Vec<Gen>;

pub fn sgen_word(w: &[SGen]) -> Word {
    w.iter()
        .map(|x| match *x {
            SGen::V(a) => Gen::G(a),
            SGen::W(a) => Gen::H(a),
        })
        .collect()
}

/// Σ coefficient · word.
#[derive(Clone, Debug, PartialEq)]
pub struct Sum(pub Vec<(Lz, Word)>);

impl Sum {
    pub fn word(w: Word) -> Self {
        Sum(vec![(Lz::int(1), w)])
    }
    pub fn sigma(&self) -> Self {
        Sum(self.0.iter().map(|(c, w)| (c.clone(), w.iter().rev().copied().collect())).collect())
    }
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0[0].1.is_empty() && self.0[0].0.is_one()
    }
}

/// Product of sums, read left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem(pub Vec<Sum>);

impl Elem {
    pub fn one() -> Self {
        Elem(vec![])
    }
    pub fn word(w: Word) -> Self {
        if w.is_empty() {
            Elem::one()
        } else {
            Elem(vec![Sum::word(w)])
        }
    }
    pub fn gen(g: Gen) -> Self {
        Elem::word(vec![g])
    }
    pub fn sum(s: Sum) -> Self {
        if s.is_unit() {
            Elem::one()
        } else {
            Elem(vec![s])
        }
    }
    pub fn mul(&self, o: &Elem) -> Elem {
        let mut v = self.0.clone();
        v.extend(o.0.iter().cloned());
        Elem(v)
    }
    pub fn scale(&self, c: &Lz) -> Elem {
        let mut v = self.0.clone();
        v.insert(0, Sum(vec![(c.clone(), vec![])]));
        Elem(v)
    }
    /// σ: reverse every word and the order of factors.
    pub fn sigma(&self) -> Elem {
        Elem(self.0.iter().rev().map(|s| s.sigma()).collect())
    }
    /// Multiplied out into a single sum (words concatenated, equal words merged).
    pub fn expand(&self) -> Sum {
        let mut acc: Vec<(Lz, Word)> = vec![(Lz::int(1), vec![])];
        for f in &self.0 {
            let mut next: Vec<(Lz, Word)> = vec![];
            for (c, w) in &acc {
                for (d, u) in &f.0 {
                    let mut ww = w.clone();
                    ww.extend(u.iter().copied());
                    let cc = c.mul(d);
                    if let Some(e) = next.iter_mut().find(|(_, x)| *x == ww) {
                        e.0 = e.0.add(&cc);
                    } else {
                        next.push((cc, ww));
                    }
                }
            }
            acc = next.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        }
        Sum(acc)
    }
    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().flat_map(|s| s.0.iter().flat_map(|(_, w)| w.iter().copied()))
    }
    pub fn check(&self, r: usize, s: usize) -> Result<()> {
        self.letters().try_for_each(|g| g.check(r, s))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.expand();
        if s.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = s
            .0
            .iter()
            .map(|(c, w)| {
                let ws = if w.is_empty() { "1".to_string() } else { w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("·") };
                if c.is_one() {
                    ws
                } else {
                    let cs = crate::scalars::FieldSpec::Generic.eval_lz(c).to_text();
                    format!("({cs})·{ws}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// All permutations of {0..m} (as image arrays).
fn perms(m: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(m, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = vec![];
    rec(m, &mut vec![], &mut vec![false; m], &mut out);
    out
}

/// Reduced words of the row stabilizer of the row-filled tableau of shape λ
/// with entries offset+1, …; generator indices are absolute.
pub fn young_subgroup_words(lam: &Partition, offset: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    let mut start = offset;
    for &len in lam.parts() {
        let mut next = vec![];
        for w in &acc {
            for p in perms(len) {
                let mut ww = w.clone();
                ww.extend(reduced_word(&p, start));
                next.push(ww);
            }
        }
        acc = next;
        start += len;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetrizer {
    /// n_λ = Σ (−q)^{−ℓ(w)} g_w
    N,
    /// m_λ = Σ q^{ℓ(w)} g_w
    M,
}

fn symmetrizer_sum(lam: &Partition, offset: usize, kind: Symmetrizer, star: bool) -> Sum {
    let terms = young_subgroup_words(lam, offset)
        .into_iter()
        .map(|w| {
            let l = w.len() as i64;
            let c = match kind {
                Symmetrizer::N => Lz::mono(if l % 2 == 0 { 1 } else { -1 }, -l),
                Symmetrizer::M => Lz::mono(1, l),
            };
            let word = w.into_iter().map(|a| if star { Gen::H(a) } else { Gen::G(a) }).collect();
            (c, word)
        })
        .collect();
    Sum(terms)
}

/// n_λ or m_λ for a bipartition at layer f (generators shifted by f).
pub fn young_symmetrizer_word(l1: &Partition, l2: &Partition, f: usize, kind: Symmetrizer) -> Elem {
    let a = symmetrizer_sum(l1, f, kind, false);
    let b = symmetrizer_sum(l2, f, kind, true);
    Elem::sum(a).mul(&Elem::sum(b))
}

/// e_{i,j} = g_{1,i}⁻¹ g*_{j,1} e₁ g_{1,i} (g*_{j,1})⁻¹ with
/// g_{1,i} = g₁g₂⋯g_{i−1} and g*_{j,1} = g*_{j−1}⋯g*₁.
pub fn e_ij_word(i: usize, j: usize) -> Word {
    let mut w = vec![];
    w.extend((1..i).rev().map(Gen::Gi));
    w.extend((1..j).rev().map(Gen::H));
    w.push(Gen::E);
    w.extend((1..i).map(Gen::G));
    w.extend((1..j).map(Gen::Hi));
    w
}

/// e^f = e₁e₂⋯e_f with e_i = e_{i,i}.
pub fn e_word(f: usize) -> Word {
    (1..=f).flat_map(|i| e_ij_word(i, i)).collect()
}

/// Word of g_d for a coset representative.
pub fn coset_word(d: &CosetRep) -> Word {
    sgen_word(&d.word())
}

pub fn all_coset_words(r: usize, s: usize, f: usize) -> Vec<Word> {
    coset_reps(r, s, f).iter().map(coset_word).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn symmetrizer_examples() {
        let n11 = young_symmetrizer_word(&p(&[1, 1]), &p(&[]), 0, Symmetrizer::N);
        assert_eq!(n11.expand(), Sum(vec![(Lz::int(1), vec![])]));
        let n2 = young_symmetrizer_word(&p(&[2]), &p(&[]), 0, Symmetrizer::N).expand();
        assert_eq!(n2, Sum(vec![(Lz::int(1), vec![]), (Lz::mono(-1, -1), vec![Gen::G(1)])]));
        let m2 = young_symmetrizer_word(&p(&[2]), &p(&[]), 0, Symmetrizer::M).expand();
        assert_eq!(m2, Sum(vec![(Lz::int(1), vec![]), (Lz::mono(1, 1), vec![Gen::G(1)])]));
        // shifted, star side
        let n = young_symmetrizer_word(&p(&[]), &p(&[2]), 1, Symmetrizer::N).expand();
        assert_eq!(n.0[1].1, vec![Gen::H(2)]);
        assert_eq!(young_subgroup_words(&p(&[3]), 0).len(), 6);
    }

    #[test]
    fn e_words() {
        assert_eq!(e_word(1), vec![Gen::E]);
        assert_eq!(e_ij_word(1, 1), vec![Gen::E]);
        assert!(e_word(0).is_empty());
        assert_eq!(e_ij_word(2, 2), vec![Gen::Gi(1), Gen::H(1), Gen::E, Gen::G(1), Gen::Hi(1)]);
    }

    #[test]
    fn sigma_involution() {
        let x = Elem::word(vec![Gen::E, Gen::G(1)]);
        assert_eq!(x.sigma(), Elem::word(vec![Gen::G(1), Gen::E]));
        let y = young_symmetrizer_word(&p(&[2, 1]), &p(&[2]), 1, Symmetrizer::N).mul(&x);
        assert_eq!(y.sigma().sigma(), y);
        assert!(Elem::gen(Gen::G(3)).check(3, 1).is_err());
        assert!(Elem::gen(Gen::G(2)).check(3, 1).is_ok());
    }
}
