//! Precontact and contact relations on finite Boolean algebras.
//!
//! A relation is stored on atoms only. The relation on elements is always
//! the additive extension `a C b ⇔ ∃ p ≤ a, q ≤ b atoms with p R q`, which
//! is what (C1) and (C2) force on a finite algebra.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::bits::{self, full_mask, ones, submasks};
use crate::boolean::{check_homomorphism, BooleanAlgebra, Element, ElementMap};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Neighbour tables are precomputed up to this many atoms.
const TABLE_ATOMS: usize = 16;

/// The contact axioms (C1)–(C6) and the way-below axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    LL1,
    LL2,
    LL2Top,
    LL3,
    LL4,
    LL4Meet,
    LL5,
    LL6,
    LL7,
}

impl Axiom {
    pub const ALL: [Axiom; 15] = [
        Axiom::C1,
        Axiom::C2,
        Axiom::C3,
        Axiom::C4,
        Axiom::C5,
        Axiom::C6,
        Axiom::LL1,
        Axiom::LL2,
        Axiom::LL2Top,
        Axiom::LL3,
        Axiom::LL4,
        Axiom::LL4Meet,
        Axiom::LL5,
        Axiom::LL6,
        Axiom::LL7,
    ];

    pub const WAY_BELOW: [Axiom; 9] = [
        Axiom::LL1,
        Axiom::LL2,
        Axiom::LL2Top,
        Axiom::LL3,
        Axiom::LL4,
        Axiom::LL4Meet,
        Axiom::LL5,
        Axiom::LL6,
        Axiom::LL7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::C5 => "C5",
            Axiom::C6 => "C6",
            Axiom::LL1 => "LL1",
            Axiom::LL2 => "LL2",
            Axiom::LL2Top => "LL2'",
            Axiom::LL3 => "LL3",
            Axiom::LL4 => "LL4",
            Axiom::LL4Meet => "LL4'",
            Axiom::LL5 => "LL5",
            Axiom::LL6 => "LL6",
            Axiom::LL7 => "LL7",
        }
    }

    fn index(self) -> usize {
        Axiom::ALL.iter().position(|&a| a == self).unwrap()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// Named groups of axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    Precontact,
    Contact,
    Extensional,
    Normal,
}

impl Bundle {
    pub fn axioms(self) -> &'static [Axiom] {
        match self {
            Bundle::Precontact => &[Axiom::C1, Axiom::C2],
            Bundle::Contact => &[Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4],
            Bundle::Extensional => &[Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::C6],
            Bundle::Normal => &[
                Axiom::C1,
                Axiom::C2,
                Axiom::C3,
                Axiom::C4,
                Axiom::C5,
                Axiom::C6,
            ],
        }
    }
}

/// A failed axiom together with the first offending tuple of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub args: Vec<u64>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.axiom.name())?;
        for a in &self.args {
            write!(f, " {}", bits::fmt_set(*a))?;
        }
        Ok(())
    }
}

/// A Boolean algebra with a precontact relation given on its atoms.
#[derive(Clone, Debug)]
pub struct ContactAlgebra {
    algebra: BooleanAlgebra,
    /// `rel[p]` is the set of atoms `q` with `p R q`.
    rel: Vec<u64>,
    nbr: OnceLock<Vec<u64>>,
    flags: [OnceLock<Verdict<AxiomFailure>>; 15],
}

impl PartialEq for ContactAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.rel == other.rel
    }
}

impl ContactAlgebra {
    /// `matrix[p][q]` says whether atom `p` is in contact with atom `q`.
    pub fn from_atom_relation(b: &BooleanAlgebra, matrix: &[Vec<bool>]) -> Result<Self> {
        let k = b.atom_count();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(Error::BadMatrix { atoms: k });
        }
        let rows = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x)
                    .fold(0u64, |acc, (q, _)| acc | 1 << q)
            })
            .collect();
        Self::from_rows(b, rows)
    }

    /// Rows as bit masks: bit `q` of `rows[p]` is `p R q`.
    pub fn from_rows(b: &BooleanAlgebra, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != b.atom_count() || rows.iter().any(|&r| !b.is_bits(r)) {
            return Err(Error::BadMatrix {
                atoms: b.atom_count(),
            });
        }
        Ok(ContactAlgebra {
            algebra: *b,
            rel: rows,
            nbr: OnceLock::new(),
            flags: Default::default(),
        })
    }

    /// Builds from a list of related atom pairs; no closure is applied.
    pub fn from_pairs(b: &BooleanAlgebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let k = b.atom_count();
        let mut rows = vec![0u64; k];
        for &(p, q) in pairs {
            for i in [p, q] {
                if i >= k {
                    return Err(Error::AtomOutOfRange { index: i, atoms: k });
                }
            }
            rows[p] |= 1 << q;
        }
        Self::from_rows(b, rows)
    }

    /// The overlap relation `ρ_s`: `a C b ⇔ a ∧ b ≠ 0`.
    pub fn smallest(b: &BooleanAlgebra) -> Self {
        let rows = (0..b.atom_count()).map(|p| 1u64 << p).collect();
        Self::from_rows(b, rows).expect("identity rows fit")
    }

    /// `ρ_l`: `a C b ⇔ a ≠ 0 and b ≠ 0`.
    pub fn largest(b: &BooleanAlgebra) -> Self {
        let rows = vec![b.top(); b.atom_count()];
        Self::from_rows(b, rows).expect("full rows fit")
    }

    /// Atoms on a cycle, each touching itself and its two neighbours.
    pub fn cycle(n: usize) -> Result<Self> {
        let b = BooleanAlgebra::powerset(n)?;
        let rows = (0..n)
            .map(|p| 1u64 << p | 1 << ((p + 1) % n) | 1 << ((p + n - 1) % n))
            .collect();
        Self::from_rows(&b, rows)
    }

    /// Atoms on a path `0 - 1 - … - (n-1)`, each touching itself and its neighbours.
    pub fn path(n: usize) -> Result<Self> {
        let b = BooleanAlgebra::powerset(n)?;
        let rows = (0..n)
            .map(|p| {
                let mut r = 1u64 << p;
                if p > 0 {
                    r |= 1 << (p - 1);
                }
                if p + 1 < n {
                    r |= 1 << (p + 1);
                }
                r
            })
            .collect();
        Self::from_rows(&b, rows)
    }

    pub fn algebra(&self) -> &BooleanAlgebra {
        &self.algebra
    }

    pub fn atom_count(&self) -> usize {
        self.algebra.atom_count()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rel
    }

    pub fn atom_related(&self, p: usize, q: usize) -> bool {
        self.rel[p] >> q & 1 == 1
    }

    /// Related atom pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rel
            .iter()
            .enumerate()
            .flat_map(|(p, &r)| ones(r).map(move |q| (p, q)))
            .collect()
    }

    pub fn reflexive_symmetric_closure(&self) -> Self {
        let mut rows = self.rel.clone();
        for (p, &r) in self.rel.iter().enumerate() {
            rows[p] |= 1 << p;
            for q in ones(r) {
                rows[q] |= 1 << p;
            }
        }
        Self::from_rows(&self.algebra, rows).expect("same shape")
    }

    /// Union of the rows of the atoms of `a`: everything `a` touches.
    #[inline]
    pub fn neighbours(&self, a: u64) -> u64 {
        if let Some(t) = self.nbr.get() {
            return t[a as usize];
        }
        if self.atom_count() <= TABLE_ATOMS {
            return self.table()[a as usize];
        }
        ones(a).fold(0, |acc, p| acc | self.rel[p])
    }

    fn table(&self) -> &Vec<u64> {
        self.nbr.get_or_init(|| {
            let size = 1usize << self.atom_count();
            let mut t = vec![0u64; size];
            for a in 1..size {
                let low = a.trailing_zeros() as usize;
                t[a] = t[a & (a - 1)] | self.rel[low];
            }
            t
        })
    }

    #[inline]
    pub fn contact_bits(&self, a: u64, b: u64) -> bool {
        self.neighbours(a) & b != 0
    }

    /// `a ≪ b ⇔ a (−C) b*`.
    #[inline]
    pub fn way_below_bits(&self, a: u64, b: u64) -> bool {
        self.neighbours(a) & !b & self.algebra.top() == 0
    }

    pub fn contact(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.contact_bits(self.algebra.bits_of(a)?, self.algebra.bits_of(b)?))
    }

    pub fn way_below(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.way_below_bits(self.algebra.bits_of(a)?, self.algebra.bits_of(b)?))
    }

    /// Exhaustive check of one axiom, memoized.
    pub fn check_axiom(&self, axiom: Axiom) -> Verdict<AxiomFailure> {
        self.flags[axiom.index()]
            .get_or_init(|| {
                check_relation_axiom(self.atom_count(), |a, b| self.contact_bits(a, b), axiom)
            })
            .clone()
    }

    pub fn satisfies(&self, axiom: Axiom) -> bool {
        self.check_axiom(axiom).holds()
    }

    /// First failing axiom of the bundle, if any.
    pub fn check_bundle(&self, bundle: Bundle) -> Verdict<AxiomFailure> {
        for &ax in bundle.axioms() {
            if let Verdict::Fails(w) = self.check_axiom(ax) {
                return Verdict::Fails(w);
            }
        }
        Verdict::Holds
    }

    pub fn is_contact(&self) -> bool {
        self.check_bundle(Bundle::Contact).holds()
    }

    pub fn is_normal(&self) -> bool {
        self.check_bundle(Bundle::Normal).holds()
    }

    pub(crate) fn require_contact(&self) -> Result<()> {
        match self.check_bundle(Bundle::Contact) {
            Verdict::Holds => Ok(()),
            Verdict::Fails(w) => Err(Error::NotContact(w.axiom.name())),
        }
    }

    /// Every `a ∉ {0, 1}` touches its complement. `Err` for non-contact relations.
    pub fn is_connected(&self) -> Result<bool> {
        self.require_contact()?;
        Ok(self.disconnecting_element().is_none())
    }

    /// Smallest `a ∉ {0, 1}` with `a (−C) a*`.
    pub fn disconnecting_element(&self) -> Option<u64> {
        let top = self.algebra.top();
        (1..top).find(|&a| !self.contact_bits(a, !a & top))
    }

    /// Elements that are way below themselves.
    pub fn self_way_below(&self) -> Vec<u64> {
        (0..self.algebra.size())
            .filter(|&a| self.way_below_bits(a, a))
            .collect()
    }
}

/// Exhaustive check of `axiom` for the element relation `contact` on the
/// power set of `atoms` atoms. The relation need not be additive; this is
/// what lets tests quantify over arbitrary element-level relations.
///
/// Tuples are scanned in lexicographic order of their bit patterns, so the
/// reported counterexample is the first one in that order.
pub fn check_relation_axiom(
    atoms: usize,
    contact: impl Fn(u64, u64) -> bool,
    axiom: Axiom,
) -> Verdict<AxiomFailure> {
    let top = full_mask(atoms);
    let size = 1u64 << atoms;
    let c = |a: u64, b: u64| contact(a, b);
    let ll = |a: u64, b: u64| !contact(a, !b & top);
    let fail = |args: Vec<u64>| Verdict::Fails(AxiomFailure { axiom, args });
    match axiom {
        Axiom::C1 => {
            for a in 0..size {
                for b in 0..size {
                    if c(a, b) && (a == 0 || b == 0) {
                        return fail(vec![a, b]);
                    }
                }
            }
        }
        Axiom::C2 => {
            for a in 0..size {
                for b in 0..size {
                    for d in 0..size {
                        if c(a, b | d) != (c(a, b) || c(a, d)) || c(a | b, d) != (c(a, d) || c(b, d))
                        {
                            return fail(vec![a, b, d]);
                        }
                    }
                }
            }
        }
        Axiom::C3 => {
            if let Some(a) = (1..size).find(|&a| !c(a, a)) {
                return fail(vec![a]);
            }
        }
        Axiom::C4 => {
            for a in 0..size {
                for b in 0..size {
                    if c(a, b) && !c(b, a) {
                        return fail(vec![a, b]);
                    }
                }
            }
        }
        Axiom::C5 => {
            for a in 0..size {
                for b in 0..size {
                    if !c(a, b) && !(0..size).any(|d| !c(a, d) && !c(b, !d & top)) {
                        return fail(vec![a, b]);
                    }
                }
            }
        }
        Axiom::C6 => {
            for a in 0..size {
                if a != top && !(1..size).any(|b| !c(b, a)) {
                    return fail(vec![a]);
                }
            }
        }
        Axiom::LL1 => {
            for a in 0..size {
                for b in 0..size {
                    if ll(a, b) && a & !b != 0 {
                        return fail(vec![a, b]);
                    }
                }
            }
        }
        Axiom::LL2 => {
            if !ll(0, 0) {
                return fail(vec![0, 0]);
            }
        }
        Axiom::LL2Top => {
            if !ll(top, top) {
                return fail(vec![top, top]);
            }
        }
        Axiom::LL3 => {
            // Scan (a, b, c, t) lexicographically; only b ≪ c matters.
            for a in 0..size {
                for b in 0..size {
                    if a & !b != 0 {
                        continue;
                    }
                    for d in 0..size {
                        if !ll(b, d) {
                            continue;
                        }
                        for t in submasks(top) {
                            if d & !t == 0 && !ll(a, t) {
                                return fail(vec![a, b, d, t]);
                            }
                        }
                    }
                }
            }
        }
        Axiom::LL4 => {
            for a in 0..size {
                for b in 0..size {
                    for d in 0..size {
                        if ll(a, d) && ll(b, d) && !ll(a | b, d) {
                            return fail(vec![a, b, d]);
                        }
                    }
                }
            }
        }
        Axiom::LL4Meet => {
            for a in 0..size {
                for b in 0..size {
                    for d in 0..size {
                        if ll(a, b) && ll(a, d) && !ll(a, b & d) {
                            return fail(vec![a, b, d]);
                        }
                    }
                }
            }
        }
        Axiom::LL5 => {
            for a in 0..size {
                for d in 0..size {
                    if ll(a, d) && !(0..size).any(|b| ll(a, b) && ll(b, d)) {
                        return fail(vec![a, d]);
                    }
                }
            }
        }
        Axiom::LL6 => {
            for a in 1..size {
                if !(1..size).any(|b| ll(b, a)) {
                    return fail(vec![a]);
                }
            }
        }
        Axiom::LL7 => {
            for a in 0..size {
                for b in 0..size {
                    if ll(a, b) && !ll(!b & top, !a & top) {
                        return fail(vec![a, b]);
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Direction of a contact-morphism check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismMode {
    /// `h(a) C₂ h(b) ⇒ a C₁ b`.
    Reflects,
    /// `a C₁ b ⇒ h(a) C₂ h(b)`.
    Preserves,
}

/// Exhaustive check of a homomorphism against two contact algebras; the
/// witness is the first offending pair `(a, b)` of source elements.
pub fn check_ca_morphism(
    h: &ElementMap,
    source: &ContactAlgebra,
    target: &ContactAlgebra,
    mode: MorphismMode,
) -> Result<Verdict<(u64, u64)>> {
    if h.source().id() != source.algebra().id() || h.target().id() != target.algebra().id() {
        return Err(Error::AlgebraMismatch);
    }
    if let Verdict::Fails(v) = check_homomorphism(h) {
        return Err(Error::NotHomomorphism(v.to_string()));
    }
    let size = source.algebra().size();
    for a in 0..size {
        for b in 0..size {
            let before = source.contact_bits(a, b);
            let after = target.contact_bits(h.get(a), h.get(b));
            let bad = match mode {
                MorphismMode::Reflects => after && !before,
                MorphismMode::Preserves => before && !after,
            };
            if bad {
                return Ok(Verdict::Fails((a, b)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Bijective, contact preserved and reflected.
pub fn is_ca_isomorphism(
    h: &ElementMap,
    source: &ContactAlgebra,
    target: &ContactAlgebra,
) -> Result<bool> {
    Ok(h.is_bijective()
        && check_ca_morphism(h, source, target, MorphismMode::Reflects)?.holds()
        && check_ca_morphism(h, source, target, MorphismMode::Preserves)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(ca: &ContactAlgebra, atoms: &[usize]) -> Element {
        ca.algebra().element_of_atoms(atoms).unwrap()
    }

    #[test]
    fn extremal_relations_match_their_definitions() {
        for k in 0..=5 {
            let b = BooleanAlgebra::powerset(k).unwrap();
            let s = ContactAlgebra::smallest(&b);
            let l = ContactAlgebra::largest(&b);
            for x in 0..b.size() {
                for y in 0..b.size() {
                    assert_eq!(s.contact_bits(x, y), x & y != 0);
                    assert_eq!(l.contact_bits(x, y), x != 0 && y != 0);
                    assert_eq!(s.way_below_bits(x, y), x & !y == 0);
                    assert_eq!(l.way_below_bits(x, y), x == 0 || y == b.top());
                }
            }
        }
    }

    #[test]
    fn smallest_relation_is_normal() {
        for k in 0..=4 {
            let s = ContactAlgebra::smallest(&BooleanAlgebra::powerset(k).unwrap());
            for ax in Axiom::ALL {
                assert!(s.satisfies(ax), "{ax} on {k} atoms");
            }
        }
    }

    #[test]
    fn largest_relation_is_not_extensional() {
        let l = ContactAlgebra::largest(&BooleanAlgebra::powerset(2).unwrap());
        assert!(l.is_contact());
        assert_eq!(
            l.check_axiom(Axiom::C6),
            Verdict::Fails(AxiomFailure {
                axiom: Axiom::C6,
                args: vec![0b01]
            })
        );
    }

    #[test]
    fn non_reflexive_atom_breaks_c3() {
        let b = BooleanAlgebra::powerset(2).unwrap();
        let ca = ContactAlgebra::from_pairs(&b, &[(0, 0)]).unwrap();
        assert_eq!(ca.check_axiom(Axiom::C3).witness().unwrap().args, vec![0b10]);
        assert!(ca.check_bundle(Bundle::Precontact).holds());
        assert!(matches!(ca.is_connected(), Err(Error::NotContact("C3"))));
    }

    #[test]
    fn cycle_contact_and_way_below() {
        let c6 = ContactAlgebra::cycle(6).unwrap();
        let zero = c6.algebra().zero();
        assert!(!c6.contact(&zero, &c6.algebra().one()).unwrap());
        assert!(c6.contact(&elem(&c6, &[0]), &elem(&c6, &[1])).unwrap());
        assert!(!c6.contact(&elem(&c6, &[0]), &elem(&c6, &[3])).unwrap());
        assert!(c6.way_below(&elem(&c6, &[0]), &elem(&c6, &[5, 0, 1])).unwrap());
        assert!(!c6.way_below(&elem(&c6, &[0]), &elem(&c6, &[0, 1])).unwrap());
    }

    #[test]
    fn cycle_fixture_verdicts() {
        let c6 = ContactAlgebra::cycle(6).unwrap();
        for ax in [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4] {
            assert!(c6.satisfies(ax));
        }
        // {0} and {2} are apart but both touch atom 1, so no c separates them.
        assert_eq!(c6.check_axiom(Axiom::C5).witness().unwrap().args, vec![0b1, 0b100]);
        // The complement of {0,3} contains no three consecutive atoms, so
        // every nonzero b touches {0,3}.
        assert_eq!(c6.check_axiom(Axiom::C6).witness().unwrap().args, vec![0b1001]);
        assert!(c6.is_connected().unwrap());
    }

    #[test]
    fn connectedness() {
        let b2 = BooleanAlgebra::powerset(2).unwrap();
        assert!(!ContactAlgebra::smallest(&b2).is_connected().unwrap());
        for k in 2..=4 {
            let b = BooleanAlgebra::powerset(k).unwrap();
            assert!(ContactAlgebra::largest(&b).is_connected().unwrap());
        }
    }

    #[test]
    fn closure_adds_diagonal_and_transpose() {
        let b = BooleanAlgebra::powerset(3).unwrap();
        let ca = ContactAlgebra::from_pairs(&b, &[(0, 1)]).unwrap();
        let closed = ca.reflexive_symmetric_closure();
        assert_eq!(closed.pairs(), vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]);
        assert!(closed.is_contact());
    }

    #[test]
    fn matrix_shape_is_validated() {
        let b = BooleanAlgebra::powerset(2).unwrap();
        assert!(matches!(
            ContactAlgebra::from_atom_relation(&b, &[vec![true]]),
            Err(Error::BadMatrix { atoms: 2 })
        ));
        let m = vec![vec![true, false], vec![false, true]];
        assert_eq!(
            ContactAlgebra::from_atom_relation(&b, &m).unwrap(),
            ContactAlgebra::smallest(&b)
        );
    }

    #[test]
    fn axiom_names_round_trip() {
        for ax in Axiom::ALL {
            assert_eq!(ax.name().parse::<Axiom>().unwrap(), ax);
        }
    }

    #[test]
    fn morphism_checks() {
        let b = BooleanAlgebra::powerset(2).unwrap();
        let s = ContactAlgebra::smallest(&b);
        let id = ElementMap::identity(&b);
        assert!(check_ca_morphism(&id, &s, &s, MorphismMode::Reflects).unwrap().holds());
        assert!(is_ca_isomorphism(&id, &s, &s).unwrap());
        let l = ContactAlgebra::largest(&b);
        // Identity from ρ_s to ρ_l preserves contact but does not reflect it.
        assert!(check_ca_morphism(&id, &s, &l, MorphismMode::Preserves).unwrap().holds());
        assert_eq!(
            check_ca_morphism(&id, &s, &l, MorphismMode::Reflects).unwrap(),
            Verdict::Fails((0b01, 0b10))
        );
        let bad = ElementMap::from_fn(&b, &b, |_| 0).unwrap();
        assert!(matches!(
            check_ca_morphism(&bad, &s, &s, MorphismMode::Reflects),
            Err(Error::NotHomomorphism(_))
        ));
    }
}
