//! The defining relations of B_{r,s} as data, for checking representations.

use crate::scalars::{Field, Lz};
use crate::words::{Gen, Word};

/// Coefficient of a relation term: a Laurent polynomial in q, optionally
/// times ρ or δ.
#[derive(Clone, Debug, PartialEq)]
pub enum RelCoef {
    Q(Lz),
    Rho(Lz),
    Delta(Lz),
}

impl RelCoef {
    pub fn eval<K: Field>(&self, q: &K, rho: &K, delta: &K) -> K {
        match self {
            RelCoef::Q(l) => l.eval(q),
            RelCoef::Rho(l) => l.eval(q).mul(rho),
            RelCoef::Delta(l) => l.eval(q).mul(delta),
        }
    }
}

/// Σ coef·word = 0.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(RelCoef, Word)>,
}

fn one() -> RelCoef {
    RelCoef::Q(Lz::int(1))
}
fn minus() -> RelCoef {
    RelCoef::Q(Lz::int(-1))
}

fn eq(name: String, a: Word, b: Word) -> Relation {
    Relation { name, terms: vec![(one(), a), (minus(), b)] }
}

/// (g − q)(g + q⁻¹) = g² − (q − q⁻¹)g − 1
fn quadratic(g: Gen) -> Relation {
    let c = Lz::from_terms([(1, (-1).into()), (-1, 1.into())]);
    Relation { name: format!("quadratic {g}"), terms: vec![(one(), vec![g, g]), (RelCoef::Q(c), vec![g]), (minus(), vec![])] }
}

/// Every defining relation that makes sense in B_{r,s}.
pub fn defining_relations(r: usize, s: usize) -> Vec<Relation> {
    use Gen::*;
    let mut out = vec![];
    for (m, mk) in [(r, G as fn(usize) -> Gen), (s, H as fn(usize) -> Gen)] {
        for i in 1..m {
            out.push(quadratic(mk(i)));
            if i + 1 < m {
                out.push(eq(format!("braid {} {}", mk(i), mk(i + 1)), vec![mk(i), mk(i + 1), mk(i)], vec![mk(i + 1), mk(i), mk(i + 1)]));
            }
            for j in i + 2..m {
                out.push(eq(format!("commute {} {}", mk(i), mk(j)), vec![mk(i), mk(j)], vec![mk(j), mk(i)]));
            }
            if i > 1 && r >= 1 && s >= 1 {
                out.push(eq(format!("commute {} e1", mk(i)), vec![mk(i), E], vec![E, mk(i)]));
            }
        }
    }
    for i in 1..r {
        for j in 1..s {
            out.push(eq(format!("commute g{i} g*{j}"), vec![G(i), H(j)], vec![H(j), G(i)]));
        }
    }
    if r >= 1 && s >= 1 {
        out.push(Relation { name: "e1 e1 = delta e1".into(), terms: vec![(one(), vec![E, E]), (RelCoef::Delta(Lz::int(-1)), vec![E])] });
        if r >= 2 {
            out.push(Relation { name: "e1 g1 e1 = rho e1".into(), terms: vec![(one(), vec![E, G(1), E]), (RelCoef::Rho(Lz::int(-1)), vec![E])] });
        }
        if s >= 2 {
            out.push(Relation { name: "e1 g*1 e1 = rho e1".into(), terms: vec![(one(), vec![E, H(1), E]), (RelCoef::Rho(Lz::int(-1)), vec![E])] });
        }
        if r >= 2 && s >= 2 {
            out.push(eq("e1 g1^-1 g*1 e1 g1 = e1 g1^-1 g*1 e1 g*1".into(), vec![E, Gi(1), H(1), E, G(1)], vec![E, Gi(1), H(1), E, H(1)]));
            out.push(eq("g1 e1 g1^-1 g*1 e1 = g*1 e1 g1^-1 g*1 e1".into(), vec![G(1), E, Gi(1), H(1), E], vec![H(1), E, Gi(1), H(1), E]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts() {
        // B_{1,1}: only e1² = δe1
        assert_eq!(defining_relations(1, 1).len(), 1);
        // B_{2,2}: 2 quadratics, g1g*1, e1², two ρ relations, two mixed
        assert_eq!(defining_relations(2, 2).len(), 8);
        let names: Vec<String> = defining_relations(3, 1).into_iter().map(|r| r.name).collect();
        assert!(names.contains(&"commute g2 e1".to_string()));
        assert!(names.contains(&"braid g1 g2".to_string()));
        assert!(defining_relations(3, 0).iter().all(|r| r.terms.iter().all(|(_, w)| !w.contains(&Gen::E))));
    }
}
