//! Local contact algebras `⟨B, ρ, 𝔹⟩` and the morphism calculus on them.
//!
//! The bounded ideal is stored as its top element `u`: every ideal of a
//! finite Boolean algebra is the principal down-set of its join.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bits::{self, compress, ones, submasks};
use crate::boolean::{check_homomorphism, relative_algebra, BooleanAlgebra, ElementMap};
use crate::contact::ContactAlgebra;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcaAxiom {
    LC1,
    LC2,
    LC3,
}

impl LcaAxiom {
    pub const ALL: [LcaAxiom; 3] = [LcaAxiom::LC1, LcaAxiom::LC2, LcaAxiom::LC3];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcaFailure {
    pub axiom: LcaAxiom,
    pub args: Vec<u64>,
}

impl fmt::Display for LcaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.axiom)?;
        for a in &self.args {
            write!(f, " {}", bits::fmt_set(*a))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct LocalContactAlgebra {
    ca: ContactAlgebra,
    bounded: u64,
    validity: OnceLock<Result<Verdict<LcaFailure>>>,
}

impl PartialEq for LocalContactAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ca == other.ca && self.bounded == other.bounded
    }
}

impl LocalContactAlgebra {
    /// `bounded` is the top of the ideal of bounded elements.
    pub fn new(ca: ContactAlgebra, bounded: u64) -> Result<Self> {
        if !ca.algebra().is_bits(bounded) {
            return Err(Error::NotAnElement {
                bits: bounded,
                atoms: ca.atom_count(),
            });
        }
        Ok(LocalContactAlgebra {
            ca,
            bounded,
            validity: OnceLock::new(),
        })
    }

    /// `⟨B, C, B⟩`: every element bounded.
    pub fn with_all_bounded(ca: ContactAlgebra) -> Self {
        let top = ca.algebra().top();
        Self::new(ca, top).expect("top is an element")
    }

    pub fn ca(&self) -> &ContactAlgebra {
        &self.ca
    }

    pub fn algebra(&self) -> &BooleanAlgebra {
        self.ca.algebra()
    }

    pub fn bounded_top(&self) -> u64 {
        self.bounded
    }

    #[inline]
    pub fn is_bounded(&self, a: u64) -> bool {
        a & !self.bounded == 0
    }

    /// Bounded elements in increasing order.
    pub fn bounded_elements(&self) -> impl Iterator<Item = u64> {
        submasks(self.bounded)
    }

    #[inline]
    pub fn way_below(&self, a: u64, b: u64) -> bool {
        self.ca.way_below_bits(a, b)
    }

    /// Exhaustive LC1–LC3 sweep; `Err` when the relation is not a contact relation.
    pub fn check_axioms(&self) -> Result<Verdict<LcaFailure>> {
        self.validity
            .get_or_init(|| {
                self.ca.require_contact()?;
                Ok(self.sweep())
            })
            .clone()
    }

    fn sweep(&self) -> Verdict<LcaFailure> {
        LcaAxiom::ALL
            .into_iter()
            .map(|ax| self.check_axiom(ax))
            .find(|v| !v.holds())
            .unwrap_or(Verdict::Holds)
    }

    /// One of LC1–LC3 on its own. The relation need not be a contact relation.
    pub fn check_axiom(&self, axiom: LcaAxiom) -> Verdict<LcaFailure> {
        let size = self.algebra().size();
        let args = match axiom {
            LcaAxiom::LC1 => self.bounded_elements().find_map(|a| {
                (0..size)
                    .find(|&c| {
                        self.way_below(a, c)
                            && !self
                                .bounded_elements()
                                .any(|b| self.way_below(a, b) && self.way_below(b, c))
                    })
                    .map(|c| vec![a, c])
            }),
            // Contact is monotone, so the largest bounded c is the best candidate.
            LcaAxiom::LC2 => (0..size).find_map(|a| {
                (0..size)
                    .find(|&b| self.ca.contact_bits(a, b) && !self.ca.contact_bits(a, self.bounded & b))
                    .map(|b| vec![a, b])
            }),
            LcaAxiom::LC3 => self.sweep_lc3().map(|a| vec![a]),
        };
        match args {
            Some(args) => Verdict::Fails(LcaFailure { axiom, args }),
            None => Verdict::Holds,
        }
    }

    fn sweep_lc3(&self) -> Option<u64> {
        (1..self.algebra().size())
            .find(|&a| !self.bounded_elements().any(|b| b != 0 && self.way_below(b, a)))
    }

    /// Contact relation and LC1–LC3 all hold.
    pub fn is_valid(&self) -> bool {
        matches!(self.check_axioms(), Ok(Verdict::Holds))
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.check_axioms()? {
            Verdict::Holds => Ok(()),
            Verdict::Fails(w) => Err(Error::InvalidLca(w.to_string())),
        }
    }

    /// Checks that `d` consists of bounded elements.
    pub fn require_bounded(&self, d: &[u64]) -> Result<()> {
        match d.iter().find(|&&x| !self.is_bounded(x)) {
            Some(&bits) => Err(Error::NotBounded { bits }),
            None => Ok(()),
        }
    }

    /// dV-density of `d ⊆ 𝔹`: every bounded `a ≪ c` has `d ∈ D` with
    /// `a ≤ d ≤ c`. The witness is the first uninterpolated pair.
    ///
    /// The interpolating form `a ≪ d ≪ c` is evaluated as well. On a valid
    /// algebra the two must agree, and a disagreement is reported as an
    /// internal error.
    pub fn is_dv_dense(&self, d: &[u64]) -> Result<Verdict<(u64, u64)>> {
        self.require_bounded(d)?;
        let mut first_le = None;
        let mut first_ll = None;
        for a in self.bounded_elements() {
            for c in self.bounded_elements() {
                if !self.way_below(a, c) {
                    continue;
                }
                if first_le.is_none() && !d.iter().any(|&x| a & !x == 0 && x & !c == 0) {
                    first_le = Some((a, c));
                }
                if first_ll.is_none()
                    && !d.iter().any(|&x| self.way_below(a, x) && self.way_below(x, c))
                {
                    first_ll = Some((a, c));
                }
            }
        }
        if first_le.is_some() != first_ll.is_some() && self.is_valid() {
            return Err(Error::Internal(format!(
                "dV-density forms disagree: {:?} vs {:?}",
                first_le, first_ll
            )));
        }
        Ok(first_le.into())
    }
}

/// `∏ L_i`: atoms are the disjoint union of the factors' atoms, in order.
pub fn product_lca(
    factors: &[Arc<LocalContactAlgebra>],
) -> Result<(Arc<LocalContactAlgebra>, Vec<LcaMorphism>)> {
    if factors.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let total: usize = factors.iter().map(|f| f.algebra().atom_count()).sum();
    let b = BooleanAlgebra::powerset(total)?;
    let mut rows = Vec::with_capacity(total);
    let mut bounded = 0;
    let mut offsets = Vec::with_capacity(factors.len());
    let mut offset = 0;
    for f in factors {
        offsets.push(offset);
        rows.extend(f.ca().rows().iter().map(|r| r << offset));
        bounded |= f.bounded_top() << offset;
        offset += f.algebra().atom_count();
    }
    let product = Arc::new(LocalContactAlgebra::new(
        ContactAlgebra::from_rows(&b, rows)?,
        bounded,
    )?);
    let projections = factors
        .iter()
        .zip(offsets)
        .map(|(f, off)| {
            let block = f.algebra().top() << off;
            let table = (0..b.size()).map(|x| (x & block) >> off).collect();
            LcaMorphism::new(product.clone(), f.clone(), table)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((product, projections))
}

/// `⟨B_m, ρ ↾ B_m², {b ∧ m : b ∈ 𝔹}⟩` for `m ≠ 0`.
pub fn relative_lca(l: &LocalContactAlgebra, m: u64) -> Result<LocalContactAlgebra> {
    let alg = l.algebra();
    let rel = relative_algebra(alg, &alg.element(m)?)?;
    let rows = ones(m)
        .map(|p| compress(l.ca().rows()[p] & m, m))
        .collect();
    let ca = ContactAlgebra::from_rows(rel.algebra(), rows)?;
    LocalContactAlgebra::new(ca, compress(l.bounded_top() & m, m))
}

/// A total element map between two local contact algebras.
#[derive(Clone, Debug)]
pub struct LcaMorphism {
    source: Arc<LocalContactAlgebra>,
    target: Arc<LocalContactAlgebra>,
    table: Vec<u64>,
}

impl PartialEq for LcaMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl LcaMorphism {
    pub fn new(
        source: Arc<LocalContactAlgebra>,
        target: Arc<LocalContactAlgebra>,
        table: Vec<u64>,
    ) -> Result<Self> {
        ElementMap::new(source.algebra(), target.algebra(), table.clone())?;
        Ok(LcaMorphism {
            source,
            target,
            table,
        })
    }

    pub fn identity(l: Arc<LocalContactAlgebra>) -> Self {
        let table = (0..l.algebra().size()).collect();
        LcaMorphism {
            source: l.clone(),
            target: l,
            table,
        }
    }

    pub fn source(&self) -> &Arc<LocalContactAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LocalContactAlgebra> {
        &self.target
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn get(&self, a: u64) -> u64 {
        self.table[a as usize]
    }

    pub fn element_map(&self) -> ElementMap {
        ElementMap::new(self.source.algebra(), self.target.algebra(), self.table.clone())
            .expect("validated at construction")
    }
}

/// The four conditions of an LCA-embedding, each with its first witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub contact_preserved: Verdict<(u64, u64)>,
    pub contact_reflected: Verdict<(u64, u64)>,
    pub bounded_preserved: Verdict<u64>,
    pub bounded_reflected: Verdict<u64>,
    pub injective: bool,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.contact_preserved.holds()
            && self.contact_reflected.holds()
            && self.bounded_preserved.holds()
            && self.bounded_reflected.holds()
    }
}

pub fn check_lca_embedding(t: &LcaMorphism) -> Result<EmbeddingReport> {
    if let Verdict::Fails(v) = check_homomorphism(&t.element_map()) {
        return Err(Error::NotHomomorphism(v.to_string()));
    }
    let (s, g) = (&t.source, &t.target);
    let size = s.algebra().size();
    let mut preserved = None;
    let mut reflected = None;
    for a in 0..size {
        for b in 0..size {
            let before = s.ca().contact_bits(a, b);
            let after = g.ca().contact_bits(t.get(a), t.get(b));
            if before && !after && preserved.is_none() {
                preserved = Some((a, b));
            }
            if after && !before && reflected.is_none() {
                reflected = Some((a, b));
            }
        }
    }
    let bounded_preserved = (0..size).find(|&a| s.is_bounded(a) && !g.is_bounded(t.get(a)));
    let bounded_reflected = (0..size).find(|&a| !s.is_bounded(a) && g.is_bounded(t.get(a)));
    Ok(EmbeddingReport {
        contact_preserved: preserved.into(),
        contact_reflected: reflected.into(),
        bounded_preserved: bounded_preserved.into(),
        bounded_reflected: bounded_reflected.into(),
        injective: t.element_map().is_injective(),
    })
}

/// `ψ̌(a) = ⋁{ψ(b) : b ∈ 𝔹, b ≪ a}`; an empty join is 0.
pub fn lower_sharp(t: &LcaMorphism) -> LcaMorphism {
    let table = sharp_table(&t.source, |b| t.get(b));
    LcaMorphism {
        source: t.source.clone(),
        target: t.target.clone(),
        table,
    }
}

fn sharp_table(source: &LocalContactAlgebra, psi: impl Fn(u64) -> u64) -> Vec<u64> {
    let bounded: Vec<u64> = source.bounded_elements().collect();
    (0..source.algebra().size())
        .map(|a| {
            bounded
                .iter()
                .filter(|&&b| source.way_below(b, a))
                .fold(0, |acc, &b| acc | psi(b))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DhlcAxiom {
    DLC1,
    DLC2,
    DLC3,
    DLC4,
    DLC5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhlcFailure {
    pub axiom: DhlcAxiom,
    pub args: Vec<u64>,
}

impl fmt::Display for DhlcFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.axiom)?;
        for a in &self.args {
            write!(f, " {}", bits::fmt_set(*a))?;
        }
        Ok(())
    }
}

/// Exhaustive DLC1–DLC5 check.
pub fn check_dhlc_morphism(t: &LcaMorphism) -> Verdict<DhlcFailure> {
    let (s, g) = (&t.source, &t.target);
    let size = s.algebra().size();
    let s_top = s.algebra().top();
    let g_top = g.algebra().top();
    let fail = |axiom, args| Verdict::Fails(DhlcFailure { axiom, args });
    if t.get(0) != 0 {
        return fail(DhlcAxiom::DLC1, vec![]);
    }
    for a in 0..size {
        for b in 0..size {
            if t.get(a & b) != t.get(a) & t.get(b) {
                return fail(DhlcAxiom::DLC2, vec![a, b]);
            }
        }
    }
    for a in s.bounded_elements() {
        for b in 0..size {
            if s.way_below(a, b) && !g.way_below(!t.get(!a & s_top) & g_top, t.get(b)) {
                return fail(DhlcAxiom::DLC3, vec![a, b]);
            }
        }
    }
    for b in g.bounded_elements() {
        if !s.bounded_elements().any(|a| b & !t.get(a) == 0) {
            return fail(DhlcAxiom::DLC4, vec![b]);
        }
    }
    let sharp = sharp_table(s, |b| t.get(b));
    if let Some(a) = (0..size).find(|&a| sharp[a as usize] != t.get(a)) {
        return fail(DhlcAxiom::DLC5, vec![a]);
    }
    Verdict::Holds
}

fn same_lca(a: &Arc<LocalContactAlgebra>, b: &Arc<LocalContactAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `t2 ◇ t1 = (t2 ∘ t1)̌`.
pub fn compose_diamond(t2: &LcaMorphism, t1: &LcaMorphism) -> Result<LcaMorphism> {
    if !same_lca(&t1.target, &t2.source) {
        return Err(Error::NotComposable);
    }
    let table = sharp_table(&t1.source, |b| t2.get(t1.get(b)));
    Ok(LcaMorphism {
        source: t1.source.clone(),
        target: t2.target.clone(),
        table,
    })
}

/// Laws of the identity completion of a finite algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    pub embedding: EmbeddingReport,
    pub image_dense: Verdict<(u64, u64)>,
}

impl CompletionReport {
    pub fn holds(&self) -> bool {
        self.embedding.holds() && self.image_dense.holds()
    }
}

/// A finite algebra is complete, so the identity is its completion.
/// Returns the identity embedding with the checked completion laws.
pub fn identity_completion(
    l: Arc<LocalContactAlgebra>,
) -> Result<(LcaMorphism, CompletionReport)> {
    let id = LcaMorphism::identity(l.clone());
    let embedding = check_lca_embedding(&id)?;
    let image: Vec<u64> = l.bounded_elements().map(|b| id.get(b)).collect();
    let image_dense = l.is_dv_dense(&image)?;
    Ok((
        id,
        CompletionReport {
            embedding,
            image_dense,
        },
    ))
}

/// Every map `B → B'` preserving 0 and binary meets, in a fixed order.
///
/// Such a map is fixed by choosing, for each target atom `q`, either nothing
/// or a nonzero source element `s_q`, and setting `φ(a) = {q : s_q ≤ a}`.
pub fn meet_preserving_tables(source: &BooleanAlgebra, target: &BooleanAlgebra) -> Vec<Vec<u64>> {
    let size = source.size();
    let k = target.atom_count();
    let choices = size; // 0 encodes "never"
    let total = choices.pow(k as u32);
    (0..total)
        .map(|code| {
            let mut gens = vec![0u64; k];
            let mut c = code;
            for g in gens.iter_mut() {
                *g = c % choices;
                c /= choices;
            }
            (0..size)
                .map(|a| {
                    gens.iter()
                        .enumerate()
                        .filter(|(_, &s)| s != 0 && s & !a == 0)
                        .fold(0, |acc, (q, _)| acc | 1 << q)
                })
                .collect()
        })
        .collect()
}

/// All DHLC-morphisms among the meet-preserving tables.
pub fn dhlc_morphisms(
    source: &Arc<LocalContactAlgebra>,
    target: &Arc<LocalContactAlgebra>,
) -> Vec<LcaMorphism> {
    meet_preserving_tables(source.algebra(), target.algebra())
        .into_iter()
        .map(|table| LcaMorphism {
            source: source.clone(),
            target: target.clone(),
            table,
        })
        .filter(|t| check_dhlc_morphism(t).holds())
        .collect()
}
