use contalg_core::boolean::{
    check_homomorphism, generated_subalgebra, min_dense_cardinality, relative_algebra, subalgebras,
    BoolOp, OpValue,
};
use contalg_core::{BooleanAlgebra, Element, ElementMap};
use proptest::prelude::*;

#[test]
fn symmetric_difference_vanishes_exactly_on_equal_pairs() {
    for k in 0..=5 {
        let b = BooleanAlgebra::powerset(k).unwrap();
        let elems: Vec<Element> = b.elements().collect();
        for x in &elems {
            for y in &elems {
                assert_eq!(b.symdiff(x, y).unwrap().is_zero(), x == y);
            }
        }
    }
}

#[test]
fn relative_embedding_preserves_order_and_relative_complement() {
    for k in 1..=4 {
        let b = BooleanAlgebra::powerset(k).unwrap();
        for u in 1..b.size() {
            let rel = relative_algebra(&b, &b.element(u).unwrap()).unwrap();
            let small = rel.algebra();
            for x in 0..small.size() {
                let ex = rel.embed_bits(x);
                assert_eq!(ex & !u, 0);
                assert_eq!(rel.restrict_bits(ex), x);
                let comp = rel.embed_bits(!x & small.top());
                assert_eq!(comp, !ex & b.top() & u);
                assert_eq!(rel.relative_complement_in_parent(ex), comp);
                for y in 0..small.size() {
                    let leq = x & !y == 0;
                    assert_eq!(leq, ex & !rel.embed_bits(y) == 0);
                }
            }
        }
    }
}

#[test]
fn density_equals_atom_count() {
    for k in 1..=5 {
        let b = BooleanAlgebra::powerset(k).unwrap();
        let w = min_dense_cardinality(&b);
        assert_eq!(w.size, k);
        let bits: Vec<u64> = w.members.iter().map(Element::bits).collect();
        assert_eq!(bits, (0..k).map(|i| 1u64 << i).collect::<Vec<_>>());
    }
    assert_eq!(min_dense_cardinality(&BooleanAlgebra::powerset(0).unwrap()).size, 0);
}

fn check_generated_is_least(b: &BooleanAlgebra, s: &[u64]) {
    let elems: Vec<Element> = s.iter().map(|&x| b.element(x).unwrap()).collect();
    let g = generated_subalgebra(b, &elems).unwrap();
    assert!(s.iter().all(|&x| g.contains_bits(x)));
    for other in subalgebras(b) {
        if s.iter().all(|&x| other.contains_bits(x)) {
            assert!(g.member_bits().iter().all(|&x| other.contains_bits(x)));
        }
    }
}

#[test]
fn generated_subalgebras_are_least() {
    for k in 0..=3 {
        let b = BooleanAlgebra::powerset(k).unwrap();
        for code in 0..1u64 << b.size() {
            let s: Vec<u64> = (0..b.size()).filter(|&x| code >> x & 1 == 1).collect();
            check_generated_is_least(&b, &s);
        }
    }
    let b = BooleanAlgebra::powerset(4).unwrap();
    for x in 0..16 {
        for y in x..16 {
            check_generated_is_least(&b, &[x, y]);
        }
    }
}

#[test]
fn operations_reject_foreign_elements() {
    let b1 = BooleanAlgebra::powerset(2).unwrap();
    let b2 = BooleanAlgebra::powerset(2).unwrap();
    let x = b1.one();
    let y = b2.one();
    assert!(b1.join(&x, &y).is_err());
    assert!(b1.apply(BoolOp::Leq, &x, Some(&y)).is_err());
    assert_eq!(b1.apply(BoolOp::Leq, &x, Some(&x)).unwrap(), OpValue::Truth(true));
}

proptest! {
    #[test]
    fn lattice_laws(k in 1usize..=24, seed in any::<[u64; 3]>()) {
        let b = BooleanAlgebra::powerset(k).unwrap();
        let [x, y, z] = seed.map(|s| b.element(s & b.top()).unwrap());
        let j = |p: &Element, q: &Element| b.join(p, q).unwrap();
        let m = |p: &Element, q: &Element| b.meet(p, q).unwrap();
        let c = |p: &Element| b.complement(p).unwrap();
        prop_assert_eq!(m(&x, &j(&y, &z)), j(&m(&x, &y), &m(&x, &z)));
        prop_assert_eq!(c(&j(&x, &y)), m(&c(&x), &c(&y)));
        prop_assert_eq!(j(&x, &c(&x)), b.one());
        prop_assert_eq!(m(&x, &c(&x)), b.zero());
        prop_assert_eq!(b.leq(&x, &y).unwrap(), j(&x, &y) == y);
    }

    #[test]
    fn atom_maps_give_homomorphisms(k1 in 1usize..=4, assign in prop::collection::vec(0usize..4, 0..=4)) {
        let source = BooleanAlgebra::powerset(k1).unwrap();
        let target = BooleanAlgebra::powerset(assign.len()).unwrap();
        let assign: Vec<usize> = assign.into_iter().map(|p| p % k1).collect();
        let h = ElementMap::from_atom_map(&source, &target, &assign).unwrap();
        prop_assert!(check_homomorphism(&h).holds());
        let surjective = (0..k1).all(|p| assign.contains(&p));
        prop_assert_eq!(h.is_injective(), surjective);
    }
}
