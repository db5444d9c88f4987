//! Finite Boolean algebras as power sets of atoms.
//!
//! An element is the set of atoms below it, stored as a bit mask. Every
//! algebra gets a process-unique identity at construction and every
//! [`Element`] remembers the algebra it came from; checked operations reject
//! operands from different algebras instead of reinterpreting their bits.
//!
//! The degenerate algebra (zero atoms, `0 = 1`) is an ordinary value here.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::bits::{self, full_mask, ones, submasks};
use crate::error::{Error, Result};
use crate::hitting::HittingSetProblem;
use crate::verdict::Verdict;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

/// The power-set algebra on `atom_count` atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BooleanAlgebra {
    id: AlgebraId,
    atoms: usize,
}

impl BooleanAlgebra {
    /// Default cap on the number of atoms; every search is exponential in it.
    pub const MAX_ATOMS: usize = 24;

    pub fn powerset(atoms: usize) -> Result<Self> {
        Self::with_cap(atoms, Self::MAX_ATOMS)
    }

    /// Like [`powerset`](Self::powerset) with a caller-chosen cap (at most 63).
    pub fn with_cap(atoms: usize, cap: usize) -> Result<Self> {
        let cap = cap.min(63);
        if atoms > cap {
            return Err(Error::TooManyAtoms { atoms, cap });
        }
        Ok(BooleanAlgebra {
            id: AlgebraId(NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)),
            atoms,
        })
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    /// `|B| = 2^atom_count`.
    pub fn size(&self) -> u64 {
        1u64 << self.atoms
    }

    pub fn is_degenerate(&self) -> bool {
        self.atoms == 0
    }

    /// Bits of the top element.
    pub fn top(&self) -> u64 {
        full_mask(self.atoms)
    }

    pub fn is_bits(&self, bits: u64) -> bool {
        bits & !self.top() == 0
    }

    pub fn element(&self, bits: u64) -> Result<Element> {
        if !self.is_bits(bits) {
            return Err(Error::NotAnElement {
                bits,
                atoms: self.atoms,
            });
        }
        Ok(Element {
            algebra: self.id,
            bits,
        })
    }

    pub fn element_of_atoms(&self, atoms: &[usize]) -> Result<Element> {
        let mut bits = 0;
        for &i in atoms {
            if i >= self.atoms {
                return Err(Error::AtomOutOfRange {
                    index: i,
                    atoms: self.atoms,
                });
            }
            bits |= 1 << i;
        }
        self.element(bits)
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.id,
            bits: 0,
        }
    }

    pub fn one(&self) -> Element {
        Element {
            algebra: self.id,
            bits: self.top(),
        }
    }

    pub fn atom(&self, i: usize) -> Result<Element> {
        self.element_of_atoms(&[i])
    }

    pub fn atoms(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.atoms).map(move |i| Element {
            algebra: self.id,
            bits: 1 << i,
        })
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(move |bits| Element {
            algebra: self.id,
            bits,
        })
    }

    pub fn owns(&self, e: &Element) -> bool {
        e.algebra == self.id
    }

    /// Bits of `e`, or an error when `e` belongs to another algebra.
    pub fn bits_of(&self, e: &Element) -> Result<u64> {
        if self.owns(e) {
            Ok(e.bits)
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn bits_of_all(&self, es: &[Element]) -> Result<Vec<u64>> {
        es.iter().map(|e| self.bits_of(e)).collect()
    }

    fn wrap(&self, bits: u64) -> Element {
        Element {
            algebra: self.id,
            bits,
        }
    }

    pub fn join(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.wrap(self.bits_of(a)? | self.bits_of(b)?))
    }

    pub fn meet(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.wrap(self.bits_of(a)? & self.bits_of(b)?))
    }

    pub fn complement(&self, a: &Element) -> Result<Element> {
        Ok(self.wrap(!self.bits_of(a)? & self.top()))
    }

    /// `a △ b = (a ∧ b*) ∨ (b ∧ a*)`.
    pub fn symdiff(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.wrap(self.bits_of(a)? ^ self.bits_of(b)?))
    }

    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.bits_of(a)? & !self.bits_of(b)? == 0)
    }

    pub fn apply(&self, op: BoolOp, a: &Element, b: Option<&Element>) -> Result<OpValue> {
        let need = |b: Option<&Element>| b.copied().ok_or(Error::AlgebraMismatch);
        Ok(match op {
            BoolOp::Join => OpValue::Element(self.join(a, &need(b)?)?),
            BoolOp::Meet => OpValue::Element(self.meet(a, &need(b)?)?),
            BoolOp::SymDiff => OpValue::Element(self.symdiff(a, &need(b)?)?),
            BoolOp::Leq => OpValue::Truth(self.leq(a, &need(b)?)?),
            BoolOp::Complement => OpValue::Element(self.complement(a)?),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Join,
    Meet,
    Complement,
    SymDiff,
    Leq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpValue {
    Element(Element),
    Truth(bool),
}

/// An element of a specific [`BooleanAlgebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    algebra: AlgebraId,
    bits: u64,
}

impl Element {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits::fmt_set(self.bits))
    }
}

/// `B_u = {x : x ≤ u}` as an algebra of its own, with the order embedding
/// back into the parent.
#[derive(Clone, Debug)]
pub struct RelativeAlgebra {
    algebra: BooleanAlgebra,
    parent: BooleanAlgebra,
    top: u64,
}

impl RelativeAlgebra {
    pub fn algebra(&self) -> &BooleanAlgebra {
        &self.algebra
    }

    pub fn parent(&self) -> &BooleanAlgebra {
        &self.parent
    }

    /// The element `u` of the parent.
    pub fn top_in_parent(&self) -> u64 {
        self.top
    }

    /// Parent atom index of each relative atom.
    pub fn parent_atoms(&self) -> Vec<usize> {
        ones(self.top).collect()
    }

    /// Relative bits to parent bits.
    pub fn embed_bits(&self, bits: u64) -> u64 {
        bits::expand(bits, self.top)
    }

    /// Parent bits `x` to the relative element `x ∧ u`.
    pub fn restrict_bits(&self, bits: u64) -> u64 {
        bits::compress(bits & self.top, self.top)
    }

    pub fn embed(&self, e: &Element) -> Result<Element> {
        let b = self.algebra.bits_of(e)?;
        self.parent.element(self.embed_bits(b))
    }

    /// Relative complement `x* ∧ u`, computed in the parent.
    pub fn relative_complement_in_parent(&self, parent_bits: u64) -> u64 {
        !parent_bits & self.top
    }
}

/// The relative algebra of `b` at a nonzero element `u`.
pub fn relative_algebra(b: &BooleanAlgebra, u: &Element) -> Result<RelativeAlgebra> {
    let top = b.bits_of(u)?;
    if top == 0 {
        return Err(Error::ZeroRelativeTop);
    }
    Ok(RelativeAlgebra {
        algebra: BooleanAlgebra::powerset(top.count_ones() as usize)?,
        parent: *b,
        top,
    })
}

/// `M` is dense: every nonzero element dominates a nonzero member of `M`.
pub fn is_dense_subset(b: &BooleanAlgebra, m: &[Element]) -> Result<bool> {
    let m = b.bits_of_all(m)?;
    Ok(is_dense_bits(b, &m))
}

pub(crate) fn is_dense_bits(b: &BooleanAlgebra, m: &[u64]) -> bool {
    (1..b.size()).all(|a| m.iter().any(|&x| x != 0 && x & !a == 0))
}

/// Minimum dense subset and its size: the density `πw_a(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseWitness {
    pub size: usize,
    pub members: Vec<Element>,
}

/// Minimum cardinality of a dense subset, by exact hitting-set search over
/// the constraints `{b ∈ B⁺ : b ≤ a}` for `a ∈ B⁺`.
pub fn min_dense_cardinality(b: &BooleanAlgebra) -> DenseWitness {
    let mut problem = HittingSetProblem::new(b.size() as usize);
    for a in 1..b.size() {
        problem.require(submasks(a).skip(1).map(|x| x as usize));
    }
    let picked = problem
        .solve()
        .expect("every constraint contains its own element");
    DenseWitness {
        size: picked.len(),
        members: picked.into_iter().map(|x| b.wrap(x as u64)).collect(),
    }
}

/// A Boolean subalgebra, stored as its sorted member bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    parent: BooleanAlgebra,
    members: Vec<u64>,
}

impl Subalgebra {
    /// Checks 0, 1 and closure under meet and complement.
    pub fn new(parent: &BooleanAlgebra, members: &[Element]) -> Result<Self> {
        let mut bits = parent.bits_of_all(members)?;
        bits.sort_unstable();
        bits.dedup();
        Self::from_bits(parent, bits)
    }

    pub(crate) fn from_bits(parent: &BooleanAlgebra, members: Vec<u64>) -> Result<Self> {
        let top = parent.top();
        let has = |x: u64| members.binary_search(&x).is_ok();
        if !has(0) || !has(top) {
            return Err(Error::NotSubalgebra("missing 0 or 1".into()));
        }
        for &x in &members {
            if !has(!x & top) {
                return Err(Error::NotSubalgebra(format!(
                    "complement of {} missing",
                    bits::fmt_set(x)
                )));
            }
            for &y in &members {
                if !has(x & y) {
                    return Err(Error::NotSubalgebra(format!(
                        "meet of {} and {} missing",
                        bits::fmt_set(x),
                        bits::fmt_set(y)
                    )));
                }
            }
        }
        Ok(Subalgebra {
            parent: *parent,
            members,
        })
    }

    pub fn parent(&self) -> &BooleanAlgebra {
        &self.parent
    }

    pub fn member_bits(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> Vec<Element> {
        self.members.iter().map(|&x| self.parent.wrap(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_bits(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// The atoms of the subalgebra, i.e. the blocks of the atom partition it induces.
    pub fn blocks(&self) -> Vec<u64> {
        self.members
            .iter()
            .copied()
            .filter(|&x| x != 0 && self.members.iter().all(|&y| y == 0 || y == x || y & !x != 0))
            .collect()
    }

    /// Smallest member above `x`.
    pub fn upper_cover(&self, x: u64) -> u64 {
        self.blocks()
            .into_iter()
            .filter(|blk| blk & x != 0)
            .fold(0, |acc, blk| acc | blk)
    }
}

/// Smallest subalgebra containing `s`, by closure under meet and complement.
pub fn generated_subalgebra(b: &BooleanAlgebra, s: &[Element]) -> Result<Subalgebra> {
    let top = b.top();
    let mut set: std::collections::BTreeSet<u64> = b.bits_of_all(s)?.into_iter().collect();
    set.insert(0);
    set.insert(top);
    loop {
        let current: Vec<u64> = set.iter().copied().collect();
        let before = set.len();
        for &x in &current {
            set.insert(!x & top);
            for &y in &current {
                set.insert(x & y);
            }
        }
        if set.len() == before {
            break;
        }
    }
    Subalgebra::from_bits(b, set.into_iter().collect())
}

/// Every subalgebra of `b`, one per partition of the atoms, in the order of
/// the partitions' restricted growth strings.
pub fn subalgebras(b: &BooleanAlgebra) -> Vec<Subalgebra> {
    let k = b.atom_count();
    let mut out = Vec::new();
    let mut label = vec![0usize; k];
    loop {
        let blocks = label.iter().max().map_or(0, |&m| m + 1);
        let mut block_bits = vec![0u64; blocks];
        for (atom, &l) in label.iter().enumerate() {
            block_bits[l] |= 1 << atom;
        }
        let mut members: Vec<u64> = (0..1u64 << blocks)
            .map(|s| bits::ones(s).fold(0, |acc, i| acc | block_bits[i]))
            .collect();
        members.sort_unstable();
        out.push(Subalgebra {
            parent: *b,
            members,
        });
        // Next restricted growth string: label[i] ≤ 1 + max(label[..i]).
        let mut i = k;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let bound = label[..i].iter().max().map_or(0, |&m| m + 1);
            if label[i] < bound {
                label[i] += 1;
                label[i + 1..].iter_mut().for_each(|l| *l = 0);
                break;
            }
        }
    }
}

/// A total map between the elements of two algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMap {
    source: BooleanAlgebra,
    target: BooleanAlgebra,
    table: Vec<u64>,
}

impl ElementMap {
    /// `table[x]` is the image of the source element with bits `x`.
    pub fn new(source: &BooleanAlgebra, target: &BooleanAlgebra, table: Vec<u64>) -> Result<Self> {
        if table.len() as u64 != source.size() {
            return Err(Error::PartialTable {
                got: table.len(),
                expected: source.size() as usize,
            });
        }
        if let Some(&bad) = table.iter().find(|&&y| !target.is_bits(y)) {
            return Err(Error::NotAnElement {
                bits: bad,
                atoms: target.atom_count(),
            });
        }
        Ok(ElementMap {
            source: *source,
            target: *target,
            table,
        })
    }

    pub fn from_fn(
        source: &BooleanAlgebra,
        target: &BooleanAlgebra,
        f: impl Fn(u64) -> u64,
    ) -> Result<Self> {
        Self::new(source, target, (0..source.size()).map(f).collect())
    }

    pub fn identity(b: &BooleanAlgebra) -> Self {
        ElementMap {
            source: *b,
            target: *b,
            table: (0..b.size()).collect(),
        }
    }

    /// The homomorphism dual to an atom map: `assign[q]` is the source atom
    /// sent to target atom `q`, and `h(a) = {q : assign[q] ∈ a}`.
    pub fn from_atom_map(
        source: &BooleanAlgebra,
        target: &BooleanAlgebra,
        assign: &[usize],
    ) -> Result<Self> {
        if assign.len() != target.atom_count() {
            return Err(Error::PartialTable {
                got: assign.len(),
                expected: target.atom_count(),
            });
        }
        if let Some(&bad) = assign.iter().find(|&&p| p >= source.atom_count()) {
            return Err(Error::AtomOutOfRange {
                index: bad,
                atoms: source.atom_count(),
            });
        }
        Self::from_fn(source, target, |a| {
            assign
                .iter()
                .enumerate()
                .filter(|(_, &p)| a >> p & 1 == 1)
                .fold(0, |acc, (q, _)| acc | 1 << q)
        })
    }

    pub fn source(&self) -> &BooleanAlgebra {
        &self.source
    }

    pub fn target(&self) -> &BooleanAlgebra {
        &self.target
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn get(&self, bits: u64) -> u64 {
        self.table[bits as usize]
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        let x = self.source.bits_of(e)?;
        Ok(self.target.wrap(self.get(x)))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.table.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_bijective(&self) -> bool {
        self.source.atom_count() == self.target.atom_count() && self.is_injective()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ElementMap) -> Result<ElementMap> {
        if first.target.id() != self.source.id() {
            return Err(Error::NotComposable);
        }
        Ok(ElementMap {
            source: first.source,
            target: self.target,
            table: first.table.iter().map(|&x| self.get(x)).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomLaw {
    Zero,
    One,
    Meet,
    Complement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub law: HomLaw,
    pub args: Vec<u64>,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.law)?;
        for a in &self.args {
            write!(f, " {}", bits::fmt_set(*a))?;
        }
        Ok(())
    }
}

/// Exhaustive check that `h` preserves 0, 1, meets and complements.
pub fn check_homomorphism(h: &ElementMap) -> Verdict<HomViolation> {
    let s_top = h.source.top();
    let t_top = h.target.top();
    if h.get(0) != 0 {
        return Verdict::Fails(HomViolation {
            law: HomLaw::Zero,
            args: vec![],
        });
    }
    if h.get(s_top) != t_top {
        return Verdict::Fails(HomViolation {
            law: HomLaw::One,
            args: vec![],
        });
    }
    for a in 0..h.source.size() {
        for b in 0..h.source.size() {
            if h.get(a & b) != h.get(a) & h.get(b) {
                return Verdict::Fails(HomViolation {
                    law: HomLaw::Meet,
                    args: vec![a, b],
                });
            }
        }
        if h.get(!a & s_top) != !h.get(a) & t_top {
            return Verdict::Fails(HomViolation {
                law: HomLaw::Complement,
                args: vec![a],
            });
        }
    }
    Verdict::Holds
}
