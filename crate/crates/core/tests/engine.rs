use std::sync::Arc;
use wbq_core::combinatorics::{label_order, LabelOrder};
use wbq_core::engine::cache::{deserialize, load_or_build, serialize};
use wbq_core::engine::{Algebra, CellularBasis};
use wbq_core::scalars::{Field, FieldSpec, Ring, RhoSpec, Scalar};
use wbq_core::words::{Elem, Gen};

fn generic(r: usize, s: usize) -> Algebra {
    Algebra::generic(Arc::new(CellularBasis::new(r, s)), 1, &|_| {}).unwrap()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn combo(a: &Algebra, terms: &[(Scalar, Elem)]) -> Vec<Scalar> {
    let mut acc = vec![a.zero(); a.len()];
    for (c, x) in terms {
        for (s, t) in acc.iter_mut().zip(a.coords(x)) {
            *s = s.add(&t.mul(c));
        }
    }
    acc
}

#[test]
fn b11_products() {
    let a = generic(1, 1);
    let e = a.basis.index(0, 0, 0);
    let p = a.product(e, e);
    assert_eq!(p[e], FieldSpec::Generic.delta());
    assert!(p.iter().enumerate().all(|(i, x)| i == e || x.is_zero()));
    let u = a.basis.unit_index();
    for c in 0..a.len() {
        assert_eq!(a.product(u, c), a.unit_vec(c));
        assert_eq!(a.product(c, u), a.unit_vec(c));
    }
}

#[test]
fn defining_relations_expand_to_zero() {
    use Gen::*;
    for (r, s) in [(2, 2), (3, 1), (1, 3)] {
        let a = generic(r, s);
        let sp = a.spec;
        let (q, rho, delta, one) = (sp.q(), sp.rho(), sp.delta(), sp.one());
        let qi = q.inv().unwrap();
        let m1 = one.neg();
        let w = |v: Vec<Gen>| Elem::word(v);
        let mut rels: Vec<Vec<(Scalar, Elem)>> = vec![
            vec![(one.clone(), w(vec![E, E])), (delta.neg(), w(vec![E]))],
        ];
        for i in 1..r {
            rels.push(vec![(one.clone(), w(vec![G(i), G(i)])), (q.sub(&qi).neg(), w(vec![G(i)])), (m1.clone(), Elem::one())]);
            if i > 1 {
                rels.push(vec![(one.clone(), w(vec![G(i), E])), (m1.clone(), w(vec![E, G(i)]))]);
            }
            if i + 1 < r {
                rels.push(vec![(one.clone(), w(vec![G(i), G(i + 1), G(i)])), (m1.clone(), w(vec![G(i + 1), G(i), G(i + 1)]))]);
            }
            for j in 1..s {
                rels.push(vec![(one.clone(), w(vec![G(i), H(j)])), (m1.clone(), w(vec![H(j), G(i)]))]);
            }
        }
        for j in 1..s {
            rels.push(vec![(one.clone(), w(vec![H(j), H(j)])), (q.sub(&qi).neg(), w(vec![H(j)])), (m1.clone(), Elem::one())]);
            if j > 1 {
                rels.push(vec![(one.clone(), w(vec![H(j), E])), (m1.clone(), w(vec![E, H(j)]))]);
            }
        }
        if r >= 2 {
            rels.push(vec![(one.clone(), w(vec![E, G(1), E])), (rho.neg(), w(vec![E]))]);
        }
        if s >= 2 {
            rels.push(vec![(one.clone(), w(vec![E, H(1), E])), (rho.neg(), w(vec![E]))]);
        }
        if r >= 2 && s >= 2 {
            rels.push(vec![(one.clone(), w(vec![E, Gi(1), H(1), E, G(1)])), (m1.clone(), w(vec![E, Gi(1), H(1), E, H(1)]))]);
            rels.push(vec![(one.clone(), w(vec![G(1), E, Gi(1), H(1), E])), (m1.clone(), w(vec![H(1), E, Gi(1), H(1), E]))]);
        }
        for rel in &rels {
            assert!(is_zero(&combo(&a, rel)), "({r},{s})");
        }
    }
}

#[test]
fn triangularity_of_all_products() {
    let a = generic(2, 1);
    let b = &a.basis;
    for x in 0..a.len() {
        for y in 0..a.len() {
            let p = a.product(x, y);
            let (ex, ey) = (&b.elems[x], &b.elems[y]);
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let ek = &b.elems[k];
                if ek.label == ex.label {
                    assert_eq!(ek.left, ex.left);
                } else {
                    assert_eq!(label_order(&b.labels[ek.label], &b.labels[ex.label]), LabelOrder::Greater);
                }
                if ek.label == ey.label {
                    assert_eq!(ek.right, ey.right);
                } else {
                    assert_eq!(label_order(&b.labels[ek.label], &b.labels[ey.label]), LabelOrder::Greater);
                }
            }
        }
    }
}

#[test]
fn sigma_transposes_basis() {
    let a = generic(2, 1);
    for i in 0..a.len() {
        let v = a.coords(&a.basis.elems[i].word.sigma());
        assert_eq!(v, a.unit_vec(a.basis.transpose_index(i)), "{i}");
    }
}

#[test]
fn generic_specializes_to_direct() {
    for (r, s) in [(2, 1), (1, 2)] {
        let g = generic(r, s);
        let n = (r + s + 1) as i64;
        let sp = g.specialize(FieldSpec::QPower(n)).unwrap();
        let d = Algebra::direct(g.basis.clone(), FieldSpec::QPower(n), 5).unwrap();
        assert_eq!(sp.gens, d.gens, "({r},{s})");
    }
    for (r, s, m) in [(2, 1, 6), (1, 2, 5), (2, 2, 3)] {
        let g = generic(r, s);
        let cy = FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(1) };
        let sp = g.specialize(cy).unwrap();
        let d = Algebra::direct(g.basis.clone(), cy, 5).unwrap();
        assert_eq!(sp.gens, d.gens, "({r},{s}) {cy}");
    }
}

#[test]
fn associativity_spot_check() {
    use rand::{Rng, SeedableRng};
    let a = generic(2, 2).specialize(FieldSpec::QPower(3)).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (x, y, z) = (rng.gen_range(0..a.len()), rng.gen_range(0..a.len()), rng.gen_range(0..a.len()));
        let left = a.act(&a.product(x, y), &a.basis.elems[z].word);
        let right = a.mul(&a.unit_vec(x), &a.product(y, z));
        assert_eq!(left, right);
    }
}

#[test]
fn denominators_are_powers_of_q_minus_inverse() {
    use wbq_core::scalars::{Poly, RatFn};
    let a = generic(2, 2);
    let z = wbq_core::scalars::rat(0);
    // q²−1 and q generate every admissible denominator
    let p = Poly::new(vec![wbq_core::scalars::rat(-1), z.clone(), wbq_core::scalars::rat(1)], z.clone());
    for (_, m) in &a.gens {
        for row in m {
            for (_, x) in row {
                let Scalar::Gen(f) = x else { panic!() };
                for c in f.num().coeffs().iter().chain(f.den().coeffs()) {
                    let mut d = c.den().clone();
                    while d.deg().unwrap() > 0 && d.rem(&p).is_zero() {
                        d = d.divrem(&p).0;
                    }
                    assert!(d.is_monomial(), "denominator {:?}", RatFn::from_poly(c.den().clone()));
                }
            }
        }
    }
}

#[test]
fn cache_round_trip_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = load_or_build(2, 1, FieldSpec::Generic, 1, Some(dir.path()), &|_| {}).unwrap();
    let text = serialize(&a, None);
    let f = wbq_core::engine::cache::cache_file(dir.path(), 2, 1, &FieldSpec::Generic);
    assert_eq!(std::fs::read_to_string(&f).unwrap(), text);
    let b = load_or_build(2, 1, FieldSpec::Generic, 1, Some(dir.path()), &|_| {}).unwrap();
    assert_eq!(b.gens, a.gens);
    let l = deserialize(&text, a.basis.clone(), FieldSpec::Generic, 1).unwrap();
    assert_eq!(serialize(&l.algebra, None), text);
    // a specialized file is written next to the generic one
    let c = load_or_build(2, 1, FieldSpec::QPower(0), 1, Some(dir.path()), &|_| {}).unwrap();
    assert_eq!(c.gens, a.specialize(FieldSpec::QPower(0)).unwrap().gens);
    assert_eq!(wbq_core::engine::cache::list(dir.path()).unwrap().len(), 2);
}
