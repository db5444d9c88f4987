//! Bases and weights of local contact algebras.
//!
//! A base is a dV-dense subset of the bounded elements; the weight `w_a` is
//! the least size of a base. Each bounded pair `a ≪ c` demands a base
//! element in the interval `[a, c]`, so a minimum base is a minimum hitting
//! set of those intervals.

use std::collections::BTreeSet;

use crate::bits::submasks;
use crate::boolean::{is_dense_bits, min_dense_cardinality, BooleanAlgebra, DenseWitness, Subalgebra};
use crate::contact::{check_relation_axiom, Axiom, AxiomFailure, Bundle, ContactAlgebra};
use crate::error::{Error, Result};
use crate::hitting::HittingSetProblem;
use crate::lca::LocalContactAlgebra;
use crate::verdict::Verdict;

/// D is dV-dense, i.e. a base.
pub fn is_base(l: &LocalContactAlgebra, d: &[u64]) -> Result<Verdict<(u64, u64)>> {
    l.is_dv_dense(d)
}

/// A minimum base: the lexicographically smallest among those of least size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseWitness {
    pub size: usize,
    pub members: Vec<u64>,
}

fn interval_problem(l: &LocalContactAlgebra, allowed: impl Fn(u64) -> bool) -> HittingSetProblem {
    let mut problem = HittingSetProblem::new(l.algebra().size() as usize);
    for a in l.bounded_elements() {
        for c in l.bounded_elements() {
            if l.way_below(a, c) {
                let between = submasks(c & !a).map(|s| a | s).filter(|&x| allowed(x));
                problem.require(between.map(|x| x as usize));
            }
        }
    }
    problem
}

/// `w_a(L)` with a witness base.
///
/// Computed for any structure; on an invalid one the number is only the
/// least size of a dV-dense set.
pub fn weight_w_a(l: &LocalContactAlgebra) -> BaseWitness {
    let picked = interval_problem(l, |_| true)
        .solve()
        .expect("every interval contains its upper end");
    BaseWitness {
        size: picked.len(),
        members: picked.into_iter().map(|x| x as u64).collect(),
    }
}

/// `πw_a(B)`: least size of a dense subset.
pub fn pi_weight_a(b: &BooleanAlgebra) -> DenseWitness {
    min_dense_cardinality(b)
}

/// `B_S = {a : a ≪ a}`.
pub fn s_part(ca: &ContactAlgebra) -> Vec<u64> {
    ca.self_way_below()
}

/// `B_S ∩ 𝔹` is a base. Only defined for valid algebras.
pub fn zero_dim_criterion(l: &LocalContactAlgebra) -> Result<bool> {
    l.require_valid()?;
    let d: Vec<u64> = s_part(l.ca())
        .into_iter()
        .filter(|&a| l.is_bounded(a))
        .collect();
    Ok(is_base(l, &d)?.holds())
}

/// Result of building a contact relation from a subalgebra.
#[derive(Clone, Debug)]
pub struct SubalgebraContact {
    pub ca: ContactAlgebra,
    /// Verdicts of the way-below axioms on the defined relation.
    pub way_below: Vec<(Axiom, Verdict<AxiomFailure>)>,
    pub s_part_is_a0: bool,
    /// `A0` is a base of `⟨A, ρ, A⟩` and no smaller base exists.
    pub a0_minimum_base: bool,
    pub dense: bool,
    pub normal: bool,
}

impl SubalgebraContact {
    pub fn verdict(&self, axiom: Axiom) -> Option<&Verdict<AxiomFailure>> {
        self.way_below.iter().find(|(a, _)| *a == axiom).map(|(_, v)| v)
    }

    /// Dense exactly when normal, and a non-dense `A0` breaks (≪6).
    pub fn boundary_consistent(&self) -> bool {
        let ll6 = self.verdict(Axiom::LL6).is_some_and(|v| v.holds());
        self.dense == self.normal && (self.dense || !ll6)
    }
}

/// `a ≪ b` iff some `c ∈ A0` has `a ≤ c ≤ b`, and `a ρ b` iff not `a ≪ b*`.
pub fn rho_from_subalgebra(a: &BooleanAlgebra, a0: &Subalgebra) -> Result<SubalgebraContact> {
    if a0.parent().id() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let top = a.top();
    let members = a0.member_bits();
    let ll = |x: u64, y: u64| members.iter().any(|&c| x & !c == 0 && c & !y == 0);
    let contact = |x: u64, y: u64| !ll(x, !y & top);

    // On atoms the relation is "same block of A0".
    let rows: Vec<u64> = (0..a.atom_count()).map(|p| a0.upper_cover(1 << p)).collect();
    let ca = ContactAlgebra::from_rows(a, rows)?;
    for x in 0..a.size() {
        for y in 0..a.size() {
            if ca.contact_bits(x, y) != contact(x, y) {
                return Err(Error::Internal(format!(
                    "subalgebra contact is not additive at ({x:#b}, {y:#b})"
                )));
            }
        }
    }

    let way_below = Axiom::WAY_BELOW
        .iter()
        .map(|&ax| (ax, check_relation_axiom(a.atom_count(), contact, ax)))
        .collect();
    let s: BTreeSet<u64> = s_part(&ca).into_iter().collect();
    let s_part_is_a0 = s.iter().copied().eq(members.iter().copied());
    let l = LocalContactAlgebra::with_all_bounded(ca.clone());
    let a0_minimum_base =
        is_base(&l, members)?.holds() && weight_w_a(&l).size == members.len();
    Ok(SubalgebraContact {
        dense: is_dense_bits(a, members),
        normal: ca.check_bundle(Bundle::Normal).holds(),
        ca,
        way_below,
        s_part_is_a0,
        a0_minimum_base,
    })
}

/// All members of `d` with all their finite joins, including the empty join 0.
pub fn join_closure(d: &[u64]) -> Vec<u64> {
    let mut set: BTreeSet<u64> = d.iter().copied().collect();
    set.insert(0);
    loop {
        let current: Vec<u64> = set.iter().copied().collect();
        let before = set.len();
        for &x in &current {
            for &y in &current {
                set.insert(x | y);
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBase {
    pub members: Vec<u64>,
    /// The size equals `w_a(L)`.
    pub attains_weight: bool,
    /// Every member already lies in `D`.
    pub within_d: bool,
}

/// A smallest base among subsets of the join-closure of the base `d`.
pub fn minimal_base_within(l: &LocalContactAlgebra, d: &[u64]) -> Result<MinimalBase> {
    if !is_base(l, d)?.holds() {
        return Err(Error::NotABase);
    }
    let closure = join_closure(d);
    let picked = interval_problem(l, |x| closure.binary_search(&x).is_ok())
        .solve()
        .ok_or_else(|| Error::Internal("join-closure of a base is not a base".into()))?;
    let members: Vec<u64> = picked.into_iter().map(|x| x as u64).collect();
    Ok(MinimalBase {
        attains_weight: members.len() == weight_w_a(l).size,
        within_d: members.iter().all(|x| d.contains(x)),
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::generated_subalgebra;

    fn overlap(k: usize) -> LocalContactAlgebra {
        let b = BooleanAlgebra::powerset(k).unwrap();
        LocalContactAlgebra::with_all_bounded(ContactAlgebra::smallest(&b))
    }

    #[test]
    fn overlap_weight_is_the_whole_algebra() {
        for k in 0..=4 {
            let l = overlap(k);
            let w = weight_w_a(&l);
            assert_eq!(w.size, 1 << k);
            assert_eq!(w.members, (0..1u64 << k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn bases_of_overlap_algebras() {
        let l = overlap(3);
        let all: Vec<u64> = (0..8).collect();
        assert!(is_base(&l, &all).unwrap().holds());
        for skip in 1..8 {
            let d: Vec<u64> = all.iter().copied().filter(|&x| x != skip).collect();
            assert_eq!(is_base(&l, &d).unwrap(), Verdict::Fails((skip, skip)));
        }
    }

    #[test]
    fn s_parts() {
        let b = BooleanAlgebra::powerset(3).unwrap();
        assert_eq!(s_part(&ContactAlgebra::smallest(&b)).len(), 8);
        assert_eq!(s_part(&ContactAlgebra::largest(&b)), vec![0, 7]);
        assert_eq!(s_part(&ContactAlgebra::cycle(6).unwrap()), vec![0, 63]);
    }

    #[test]
    fn zero_dimensionality_is_validity_first() {
        assert!(zero_dim_criterion(&overlap(3)).unwrap());
        let b = BooleanAlgebra::powerset(2).unwrap();
        let l = LocalContactAlgebra::with_all_bounded(ContactAlgebra::largest(&b));
        assert!(matches!(zero_dim_criterion(&l), Err(Error::InvalidLca(_))));
    }

    #[test]
    fn whole_subalgebra_gives_overlap() {
        for k in 0..=4 {
            let a = BooleanAlgebra::powerset(k).unwrap();
            let all: Vec<_> = a.elements().collect();
            let a0 = Subalgebra::new(&a, &all).unwrap();
            let r = rho_from_subalgebra(&a, &a0).unwrap();
            assert_eq!(r.ca, ContactAlgebra::smallest(&a));
            assert!(r.s_part_is_a0 && r.a0_minimum_base && r.dense && r.normal);
            assert!(r.boundary_consistent());
        }
    }

    #[test]
    fn trivial_subalgebra_breaks_ll6_at_each_atom() {
        let a = BooleanAlgebra::powerset(2).unwrap();
        let a0 = generated_subalgebra(&a, &[]).unwrap();
        let r = rho_from_subalgebra(&a, &a0).unwrap();
        assert_eq!(r.ca, ContactAlgebra::largest(&a));
        // Only 0 lies below an atom inside {0, 1}.
        for atom in [0b01u64, 0b10] {
            assert!(!(1..4).any(|b| r.ca.way_below_bits(b, atom)));
        }
        let ll6 = r.verdict(Axiom::LL6).unwrap();
        assert_eq!(ll6.witness().unwrap().args, vec![0b01]);
        assert!(!r.dense && !r.normal && r.boundary_consistent());
    }

    #[test]
    fn pair_generated_subalgebra_diagnostics() {
        let a = BooleanAlgebra::powerset(3).unwrap();
        let a0 = generated_subalgebra(&a, &[a.element(0b011).unwrap()]).unwrap();
        let r = rho_from_subalgebra(&a, &a0).unwrap();
        assert_eq!(r.ca.rows(), &[0b011, 0b011, 0b100]);
        assert!(r.s_part_is_a0);
        assert!(r.a0_minimum_base);
        assert!(!r.dense);
        assert_eq!(r.verdict(Axiom::LL6).unwrap().witness().unwrap().args, vec![0b001]);
        for ax in [Axiom::LL1, Axiom::LL2, Axiom::LL3, Axiom::LL4, Axiom::LL5, Axiom::LL7] {
            assert!(r.verdict(ax).unwrap().holds(), "{ax}");
        }
    }

    #[test]
    fn minimal_bases_within_a_base() {
        let l = overlap(2);
        let all: Vec<u64> = (0..4).collect();
        let m = minimal_base_within(&l, &all).unwrap();
        assert_eq!(m.members, all);
        assert!(m.attains_weight && m.within_d);
        assert_eq!(minimal_base_within(&l, &[0, 3]).unwrap_err(), Error::NotABase);
    }

    #[test]
    fn cycle_weight_fixture() {
        let c6 = LocalContactAlgebra::with_all_bounded(ContactAlgebra::cycle(6).unwrap());
        let w = weight_w_a(&c6);
        assert!(is_base(&c6, &w.members).unwrap().holds());
        assert!(pi_weight_a(c6.algebra()).size <= w.size);
        let all: Vec<u64> = (0..64).collect();
        let m = minimal_base_within(&c6, &all).unwrap();
        assert_eq!(m.members, w.members);
    }

    #[test]
    fn join_closure_includes_zero() {
        assert_eq!(join_closure(&[0b01, 0b10]), vec![0, 0b01, 0b10, 0b11]);
        assert_eq!(join_closure(&[]), vec![0]);
    }
}
