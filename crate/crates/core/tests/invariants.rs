use proptest::prelude::*;
use std::sync::OnceLock;
use wbq_core::combinatorics::{enumerate_labels, label_order, LabelOrder, Partition};
use wbq_core::engine::Algebra;
use wbq_core::repthy::oracles::random_tensor_vectors;
use wbq_core::repthy::Family;
use wbq_core::scalars::{rat, FieldSpec, RatFn, RhoSpec};
use wbq_core::tensor::{act_generator, contravariant_form, Shape, TensorParams};
use wbq_core::words::Gen;

fn b22() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| Family::quiet(1).algebra(2, 2, FieldSpec::Cyclotomic { m: 6, rho: RhoSpec::Free }).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_a_partial_order_reversed_by_conjugation(n in 1usize..=7, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let all = Partition::all(n);
        let (a, b, c) = (&all[i.index(all.len())], &all[j.index(all.len())], &all[k.index(all.len())]);
        prop_assert!(a.dominates(a));
        if a.dominates(b) && b.dominates(a) {
            prop_assert_eq!(a, b);
        }
        if a.dominates(b) && b.dominates(c) {
            prop_assert!(a.dominates(c));
        }
        prop_assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
    }

    #[test]
    fn label_order_is_antisymmetric(r in 1usize..=3, s in 1usize..=3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let ls = enumerate_labels(r, s).unwrap();
        let (a, b) = (&ls[i.index(ls.len())], &ls[j.index(ls.len())]);
        let flip = match label_order(a, b) {
            LabelOrder::Greater => LabelOrder::Less,
            LabelOrder::Less => LabelOrder::Greater,
            o => o,
        };
        prop_assert_eq!(label_order(b, a), flip);
    }

    #[test]
    fn multiplication_is_associative(x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>(), z in any::<prop::sample::Index>()) {
        let a = b22();
        let (x, y, z) = (x.index(a.len()), y.index(a.len()), z.index(a.len()));
        let left = a.act(&a.product(x, y), &a.basis.elems[z].word);
        let right = a.mul(&a.unit_vec(x), &a.product(y, z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn form_is_invariant_under_generators(seed in any::<u64>(), n in 2usize..=3) {
        let p = TensorParams::new(n, RatFn::var_pow(&rat(0), 1));
        let sh = Shape::new(n, 2, 1);
        let vs = random_tensor_vectors(sh, 2, 4, seed, &p.zero());
        for g in Gen::generators(2, 1) {
            let lhs = contravariant_form(&act_generator(&vs[0], g, &p).unwrap(), &vs[1], &p);
            let rhs = contravariant_form(&vs[0], &act_generator(&vs[1], g, &p).unwrap(), &p);
            prop_assert_eq!(lhs, rhs, "{}", g);
        }
    }
}
