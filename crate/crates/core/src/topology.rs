//! Finite topological spaces.
//!
//! Everything here is computed from the open sets directly, with no use of
//! the contact-algebra machinery beyond packaging the results, so the
//! algebraic side can be tested against it.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::bits::{fmt_set, full_mask, ones, submasks};
use crate::boolean::{BooleanAlgebra, ElementMap};
use crate::contact::{is_ca_isomorphism, ContactAlgebra};
use crate::dimension::DimValue;
use crate::error::{Error, Result};
use crate::hitting::HittingSetProblem;
use crate::lca::{check_dhlc_morphism, LcaMorphism, LocalContactAlgebra};
use crate::verdict::Verdict;
use crate::weight::BaseWitness;

/// A topology on the points `0..n`, stored as its sorted open sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    points: usize,
    opens: Vec<u64>,
}

impl FiniteSpace {
    pub const MAX_POINTS: usize = 5;

    /// `∅` and `X` are added if missing; the family must then be closed
    /// under union and intersection.
    pub fn new(points: usize, opens: &[u64]) -> Result<Self> {
        if points > Self::MAX_POINTS {
            return Err(Error::InvalidSpace(format!(
                "{points} points exceeds the cap of {}",
                Self::MAX_POINTS
            )));
        }
        let top = full_mask(points);
        let mut set = BTreeSet::from([0, top]);
        for &u in opens {
            if u & !top != 0 {
                return Err(Error::InvalidSpace(format!(
                    "open set {} has points outside 0..{points}",
                    fmt_set(u)
                )));
            }
            set.insert(u);
        }
        for &u in &set {
            for &v in &set {
                for (w, what) in [(u | v, "union"), (u & v, "intersection")] {
                    if !set.contains(&w) {
                        return Err(Error::InvalidSpace(format!(
                            "{what} of {} and {} is not open",
                            fmt_set(u),
                            fmt_set(v)
                        )));
                    }
                }
            }
        }
        Ok(FiniteSpace {
            points,
            opens: set.into_iter().collect(),
        })
    }

    fn trusted(points: usize, opens: Vec<u64>) -> Self {
        FiniteSpace { points, opens }
    }

    pub fn discrete(points: usize) -> Result<Self> {
        Self::new(points, &[])?;
        Ok(Self::trusted(points, (0..1u64 << points).collect()))
    }

    pub fn indiscrete(points: usize) -> Result<Self> {
        Self::new(points, &[])
    }

    /// Two points, opens `∅, {1}, X`.
    pub fn sierpinski() -> Self {
        Self::trusted(2, vec![0, 0b10, 0b11])
    }

    /// Opens `∅ ⊂ {0} ⊂ {0,1} ⊂ … ⊂ X`.
    pub fn chain(points: usize) -> Result<Self> {
        let opens: Vec<u64> = (0..=points).map(full_mask).collect();
        Self::new(points, &opens)
    }

    /// The space whose minimal open neighbourhoods are `m[x]`.
    pub fn from_neighbourhoods(m: &[u64]) -> Result<Self> {
        let points = m.len();
        Self::new(points, &[])?;
        for (x, &mx) in m.iter().enumerate() {
            if mx >> x & 1 == 0 || mx & !full_mask(points) != 0 {
                return Err(Error::InvalidSpace(format!("bad neighbourhood of point {x}")));
            }
            if ones(mx).any(|y| m[y] & !mx != 0) {
                return Err(Error::InvalidSpace(format!(
                    "neighbourhoods are not transitive at point {x}"
                )));
            }
        }
        let opens = (0..1u64 << points)
            .filter(|&u| ones(u).all(|x| m[x] & !u == 0))
            .collect();
        Ok(Self::trusted(points, opens))
    }

    /// Every topology on `points` points, each exactly once.
    pub fn all(points: usize) -> Result<Vec<Self>> {
        Self::new(points, &[])?;
        let choices: Vec<Vec<u64>> = (0..points)
            .map(|x| submasks(full_mask(points) & !(1 << x)).map(|s| s | 1 << x).collect())
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; points];
        loop {
            let m: Vec<u64> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            if let Ok(space) = Self::from_neighbourhoods(&m) {
                out.push(space);
            }
            let mut i = 0;
            loop {
                if i == points {
                    return Ok(out);
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn top(&self) -> u64 {
        full_mask(self.points)
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn is_open(&self, s: u64) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: u64) -> bool {
        self.is_open(self.top() & !s)
    }

    pub fn interior(&self, s: u64) -> u64 {
        self.opens
            .iter()
            .filter(|&&u| u & !s == 0)
            .fold(0, |acc, &u| acc | u)
    }

    pub fn closure(&self, s: u64) -> u64 {
        self.top() & !self.interior(self.top() & !s)
    }

    /// The least open set containing `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> u64 {
        self.opens
            .iter()
            .filter(|&&u| u >> x & 1 == 1)
            .fold(self.top(), |acc, &u| acc & u)
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1 << self.points
    }

    /// Singletons are closed.
    pub fn is_t1(&self) -> bool {
        (0..self.points).all(|x| self.is_closed(1 << x))
    }

    pub fn regular_closed(&self) -> Vec<u64> {
        self.sweep(|s| self.closure(self.interior(s)))
    }

    pub fn regular_open(&self) -> Vec<u64> {
        self.sweep(|s| self.interior(self.closure(s)))
    }

    pub fn clopens(&self) -> Vec<u64> {
        self.opens
            .iter()
            .copied()
            .filter(|&u| self.is_closed(u))
            .collect()
    }

    fn sweep(&self, f: impl Fn(u64) -> u64) -> Vec<u64> {
        let set: BTreeSet<u64> = (0..1u64 << self.points).map(f).collect();
        set.into_iter().collect()
    }
}

/// Minimal nonempty members of a finite Boolean algebra of sets, checked
/// to generate exactly `family` by unions.
fn atoms_of(family: &[u64], join: impl Fn(u64) -> u64) -> Result<Vec<u64>> {
    let atoms: Vec<u64> = family
        .iter()
        .copied()
        .filter(|&f| f != 0 && !family.iter().any(|&g| g != 0 && g != f && g & !f == 0))
        .collect();
    if family.len() != 1 << atoms.len() {
        return Err(Error::Internal(format!(
            "{} sets do not form a Boolean algebra on {} atoms",
            family.len(),
            atoms.len()
        )));
    }
    let generated: BTreeSet<u64> = (0..1u64 << atoms.len())
        .map(|bits| join(ones(bits).fold(0, |acc, i| acc | atoms[i])))
        .collect();
    if !generated.iter().eq(family.iter()) {
        return Err(Error::Internal("atoms do not generate the family".into()));
    }
    Ok(atoms)
}

/// `RC(X)` as an abstract algebra with the overlap contact, all of it bounded.
#[derive(Clone, Debug)]
pub struct RcAlgebra {
    space: FiniteSpace,
    atoms: Vec<u64>,
    lca: Arc<LocalContactAlgebra>,
}

pub fn rc_algebra(x: &FiniteSpace) -> RcAlgebra {
    let family = x.regular_closed();
    let atoms = atoms_of(&family, |s| s).expect("regular closed sets form a Boolean algebra");
    let b = BooleanAlgebra::powerset(atoms.len()).expect("at most 2^5 regular closed sets");
    let matrix: Vec<Vec<bool>> = atoms
        .iter()
        .map(|&f| atoms.iter().map(|&g| f & g != 0).collect())
        .collect();
    let ca = ContactAlgebra::from_atom_relation(&b, &matrix).expect("square matrix");
    RcAlgebra {
        space: x.clone(),
        atoms,
        lca: Arc::new(LocalContactAlgebra::with_all_bounded(ca)),
    }
}

impl RcAlgebra {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn lca(&self) -> &Arc<LocalContactAlgebra> {
        &self.lca
    }

    pub fn ca(&self) -> &ContactAlgebra {
        self.lca.ca()
    }

    pub fn algebra(&self) -> &BooleanAlgebra {
        self.lca.algebra()
    }

    pub fn atom_sets(&self) -> &[u64] {
        &self.atoms
    }

    /// The regular closed set of an abstract element.
    pub fn set_of(&self, bits: u64) -> u64 {
        ones(bits).fold(0, |acc, i| acc | self.atoms[i])
    }

    /// The abstract element of a regular closed set.
    pub fn element_of_set(&self, set: u64) -> Option<u64> {
        let bits = (0..self.atoms.len())
            .filter(|&i| self.atoms[i] & !set == 0)
            .fold(0, |acc, i| acc | 1 << i);
        (self.set_of(bits) == set).then_some(bits)
    }

    /// Compares the abstract operations with `F ∪ G`, `cl(int(F ∩ G))`,
    /// `cl(X \ F)` and `F ∩ G ≠ ∅`; the failure names the first law broken.
    pub fn check_operations(&self) -> Verdict<String> {
        let x = &self.space;
        let top = self.algebra().top();
        for a in 0..self.algebra().size() {
            let f = self.set_of(a);
            if self.set_of(!a & top) != x.closure(x.top() & !f) {
                return Verdict::Fails(format!("complement of {}", fmt_set(f)));
            }
            for b in 0..self.algebra().size() {
                let g = self.set_of(b);
                if self.set_of(a | b) != f | g {
                    return Verdict::Fails(format!("join of {} and {}", fmt_set(f), fmt_set(g)));
                }
                if self.set_of(a & b) != x.closure(x.interior(f & g)) {
                    return Verdict::Fails(format!("meet of {} and {}", fmt_set(f), fmt_set(g)));
                }
                if self.ca().contact_bits(a, b) != (f & g != 0) {
                    return Verdict::Fails(format!("contact of {} and {}", fmt_set(f), fmt_set(g)));
                }
            }
        }
        Verdict::Holds
    }
}

/// `RO(X)` with `U D V ⇔ cl U ∩ cl V ≠ ∅` and the map `ν(U) = cl U`.
#[derive(Clone, Debug)]
pub struct RoAlgebra {
    space: FiniteSpace,
    atoms: Vec<u64>,
    ca: ContactAlgebra,
    nu: ElementMap,
}

/// Fails only if `ν` is not a contact isomorphism onto `rc`.
pub fn ro_algebra(x: &FiniteSpace, rc: &RcAlgebra) -> Result<RoAlgebra> {
    if rc.space() != x {
        return Err(Error::InvalidSpace("RC algebra of a different space".into()));
    }
    let family = x.regular_open();
    let atoms = atoms_of(&family, |s| x.interior(x.closure(s)))?;
    let b = BooleanAlgebra::powerset(atoms.len())?;
    let matrix: Vec<Vec<bool>> = atoms
        .iter()
        .map(|&u| atoms.iter().map(|&v| x.closure(u) & x.closure(v) != 0).collect())
        .collect();
    let ca = ContactAlgebra::from_atom_relation(&b, &matrix)?;
    let set_of = |bits: u64| x.interior(x.closure(ones(bits).fold(0, |acc, i| acc | atoms[i])));
    let table = (0..b.size())
        .map(|bits| {
            rc.element_of_set(x.closure(set_of(bits)))
                .ok_or_else(|| Error::Internal("closure of a regular open set".into()))
        })
        .collect::<Result<Vec<u64>>>()?;
    let nu = ElementMap::new(&b, rc.algebra(), table)?;
    if !is_ca_isomorphism(&nu, &ca, rc.ca())? {
        return Err(Error::Internal("closure is not a contact isomorphism RO → RC".into()));
    }
    Ok(RoAlgebra {
        space: x.clone(),
        atoms,
        ca,
        nu,
    })
}

impl RoAlgebra {
    pub fn ca(&self) -> &ContactAlgebra {
        &self.ca
    }

    pub fn nu(&self) -> &ElementMap {
        &self.nu
    }

    pub fn atom_sets(&self) -> &[u64] {
        &self.atoms
    }

    /// The regular open set of an abstract element.
    pub fn set_of(&self, bits: u64) -> u64 {
        let x = &self.space;
        x.interior(x.closure(ones(bits).fold(0, |acc, i| acc | self.atoms[i])))
    }

    /// Compares the abstract operations with `int(cl(U ∪ V))`, `U ∩ V`,
    /// `int(X \ U)` and `cl U ∩ cl V ≠ ∅`.
    pub fn check_operations(&self) -> Verdict<String> {
        let x = &self.space;
        let b = self.ca.algebra();
        for a in 0..b.size() {
            let u = self.set_of(a);
            if self.set_of(!a & b.top()) != x.interior(x.top() & !u) {
                return Verdict::Fails(format!("complement of {}", fmt_set(u)));
            }
            for c in 0..b.size() {
                let v = self.set_of(c);
                if self.set_of(a | c) != x.interior(x.closure(u | v)) {
                    return Verdict::Fails(format!("join of {} and {}", fmt_set(u), fmt_set(v)));
                }
                if self.set_of(a & c) != u & v {
                    return Verdict::Fails(format!("meet of {} and {}", fmt_set(u), fmt_set(v)));
                }
                if self.ca.contact_bits(a, c) != (x.closure(u) & x.closure(v) != 0) {
                    return Verdict::Fails(format!("contact of {} and {}", fmt_set(u), fmt_set(v)));
                }
            }
        }
        Verdict::Holds
    }
}

/// Largest `n` such that some `n + 1` members, counted by index, share a
/// point; `-1` when no point lies in any member.
pub fn ord(family: &[u64]) -> Result<i64> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let points = family.iter().fold(0, |acc, &f| acc | f);
    Ok(ones(points)
        .map(|p| family.iter().filter(|&&f| f >> p & 1 == 1).count() as i64 - 1)
        .max()
        .unwrap_or(-1))
}

pub fn is_cover(x: &FiniteSpace, family: &[u64]) -> bool {
    family.iter().fold(0, |acc, &f| acc | f) == x.top()
}

/// Every member of `fine` lies inside some member of `coarse`.
pub fn is_refinement(fine: &[u64], coarse: &[u64]) -> bool {
    fine.iter().all(|&g| coarse.iter().any(|&f| g & !f == 0))
}

/// How `g` relates to `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPredicates {
    /// `g` covers the space.
    pub is_cover: bool,
    pub is_refinement: bool,
    /// `g` is a cover with `g_i ⊆ f_i`.
    pub is_shrinking: bool,
    /// `f_i ⊆ g_i` and the same index sets have empty intersection; the
    /// failure carries the offending indices.
    pub is_swelling: Verdict<Vec<usize>>,
}

pub fn cover_predicates(x: &FiniteSpace, f: &[u64], g: &[u64]) -> Result<CoverPredicates> {
    if f.len() != g.len() {
        return Err(Error::IndexMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let is_cover = is_cover(x, g);
    let is_shrinking = is_cover && f.iter().zip(g).all(|(&a, &b)| b & !a == 0);
    let is_swelling = match f.iter().zip(g).position(|(&a, &b)| a & !b != 0) {
        Some(i) => Verdict::Fails(vec![i]),
        None => swelling_pattern(x, f, g),
    };
    Ok(CoverPredicates {
        is_cover,
        is_refinement: is_refinement(g, f),
        is_shrinking,
        is_swelling,
    })
}

fn swelling_pattern(x: &FiniteSpace, f: &[u64], g: &[u64]) -> Verdict<Vec<usize>> {
    let mut subsets: Vec<u64> = (1..1u64 << f.len()).collect();
    subsets.sort_by_key(|s| (s.count_ones(), ones(*s).collect::<Vec<_>>()));
    for s in subsets {
        let meet = |fam: &[u64]| ones(s).fold(x.top(), |acc, i| acc & fam[i]);
        if (meet(f) == 0) != (meet(g) == 0) {
            return Verdict::Fails(ones(s).collect());
        }
    }
    Verdict::Holds
}

/// Which open covers the dimension quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverEnumeration {
    /// Covers by distinct opens from which no member can be dropped.
    Irredundant,
    /// Every set of opens whose union is the space.
    All,
}

fn open_covers(x: &FiniteSpace, mode: CoverEnumeration) -> Vec<Vec<u64>> {
    let nonempty: Vec<u64> = x.opens().iter().copied().filter(|&u| u != 0).collect();
    match mode {
        CoverEnumeration::All => (0..1u64 << nonempty.len())
            .map(|s| ones(s).map(|i| nonempty[i]).collect::<Vec<u64>>())
            .filter(|fam| is_cover(x, fam))
            .collect(),
        CoverEnumeration::Irredundant => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let mut stack = Vec::new();
            irredundant(x, &nonempty, 0, &mut stack, &mut seen, &mut out);
            out.sort();
            out
        }
    }
}

fn irredundant(
    x: &FiniteSpace,
    opens: &[u64],
    covered: u64,
    stack: &mut Vec<u64>,
    seen: &mut HashSet<Vec<u64>>,
    out: &mut Vec<Vec<u64>>,
) {
    let missing = x.top() & !covered;
    if missing == 0 {
        let mut fam = stack.clone();
        fam.sort();
        let keep = (0..fam.len()).all(|i| {
            let rest = fam.iter().enumerate().filter(|&(j, _)| j != i);
            rest.fold(0, |acc, (_, &f)| acc | f) != x.top()
        });
        if keep && seen.insert(fam.clone()) {
            out.push(fam);
        }
        return;
    }
    let p = missing.trailing_zeros();
    for &u in opens.iter().filter(|&&u| u >> p & 1 == 1) {
        stack.push(u);
        irredundant(x, opens, covered | u, stack, seen, out);
        stack.pop();
    }
}

/// An open refinement of `cover` in which no point lies in more than
/// `n + 1` members.
fn refinement_of_order(x: &FiniteSpace, cover: &[u64], n: i64) -> bool {
    let candidates: Vec<u64> = x
        .opens()
        .iter()
        .copied()
        .filter(|&u| u != 0 && cover.iter().any(|&f| u & !f == 0))
        .collect();
    let mut mult = vec![0i64; x.point_count()];
    fn go(x: &FiniteSpace, cands: &[u64], covered: u64, mult: &mut [i64], limit: i64) -> bool {
        let missing = x.top() & !covered;
        if missing == 0 {
            return true;
        }
        let p = missing.trailing_zeros();
        for &u in cands.iter().filter(|&&u| u >> p & 1 == 1) {
            if ones(u).any(|q| mult[q] >= limit) {
                continue;
            }
            ones(u).for_each(|q| mult[q] += 1);
            let found = go(x, cands, covered | u, mult, limit);
            ones(u).for_each(|q| mult[q] -= 1);
            if found {
                return true;
            }
        }
        false
    }
    go(x, &candidates, 0, &mut mult, n + 1)
}

/// `dim X ≤ n`, failing with the first open cover that has no open
/// refinement of order at most `n`.
pub fn cl_leq(x: &FiniteSpace, n: i64, mode: CoverEnumeration) -> Verdict<Vec<u64>> {
    open_covers(x, mode)
        .into_iter()
        .find(|cover| !refinement_of_order(x, cover, n))
        .into()
}

pub fn dim_cl(x: &FiniteSpace, n_cap: i64) -> DimValue {
    dim_cl_with(x, n_cap, CoverEnumeration::Irredundant)
}

pub fn dim_cl_with(x: &FiniteSpace, n_cap: i64, mode: CoverEnumeration) -> DimValue {
    (-1..=n_cap)
        .find(|&n| cl_leq(x, n, mode).holds())
        .map_or(DimValue::Above(n_cap), DimValue::Exactly)
}

/// The regular-set characterisation of `dim X ≤ n` on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkingCheck {
    /// Every regular open cover by `n + 2` sets has a regular closed
    /// shrinking with empty intersection.
    pub closed_shrinking: bool,
    /// The same, with the interiors of the shrinking also covering.
    pub with_interiors: bool,
    /// The space is T1 (and so discrete and normal).
    pub within_hypotheses: bool,
    pub dim_cl_leq: bool,
}

/// Within the hypotheses both predicates must agree with `dim X ≤ n`;
/// a disagreement there is an `Internal` error.
pub fn regular_shrinking_dim_check(x: &FiniteSpace, n: i64) -> Result<ShrinkingCheck> {
    if n < -1 {
        return Err(Error::BadLevel(n));
    }
    let ro = x.regular_open();
    let rc = x.regular_closed();
    let len = (n + 2) as usize;
    let mut closed_shrinking = true;
    let mut with_interiors = true;
    let mut tuple = vec![0usize; len];
    'tuples: loop {
        let cover: Vec<u64> = tuple.iter().map(|&i| ro[i]).collect();
        if is_cover(x, &cover) {
            let (plain, strong) = shrinking_exists(x, &rc, &cover);
            closed_shrinking &= plain;
            with_interiors &= strong;
        }
        // Next nondecreasing tuple.
        let mut i = len;
        loop {
            if i == 0 {
                break 'tuples;
            }
            i -= 1;
            if tuple[i] + 1 < ro.len() {
                let v = tuple[i] + 1;
                tuple[i..].iter_mut().for_each(|t| *t = v);
                break;
            }
        }
    }
    let check = ShrinkingCheck {
        closed_shrinking,
        with_interiors,
        within_hypotheses: x.is_t1(),
        dim_cl_leq: cl_leq(x, n, CoverEnumeration::Irredundant).holds(),
    };
    if check.within_hypotheses
        && (check.closed_shrinking != check.dim_cl_leq || check.with_interiors != check.dim_cl_leq)
    {
        return Err(Error::Internal(format!(
            "regular shrinking check disagrees with dim ≤ {n}"
        )));
    }
    Ok(check)
}

/// Whether `cover` has a regular closed shrinking with empty intersection,
/// without and with the interior condition.
fn shrinking_exists(x: &FiniteSpace, rc: &[u64], cover: &[u64]) -> (bool, bool) {
    let options: Vec<Vec<u64>> = cover
        .iter()
        .map(|&u| rc.iter().copied().filter(|&f| f & !u == 0).collect())
        .collect();
    let mut plain = false;
    let mut strong = false;
    let mut pick = vec![0usize; cover.len()];
    loop {
        let fs: Vec<u64> = pick.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        let meet = fs.iter().fold(x.top(), |acc, &f| acc & f);
        if meet == 0 && is_cover(x, &fs) {
            plain = true;
            if fs.iter().fold(0, |acc, &f| acc | x.interior(f)) == x.top() {
                strong = true;
                return (plain, strong);
            }
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return (plain, strong);
            }
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Every open set is a union of members of `family`.
pub fn is_space_base(x: &FiniteSpace, family: &[u64]) -> bool {
    family.iter().all(|&b| x.is_open(b))
        && x.opens().iter().all(|&u| {
            family
                .iter()
                .filter(|&&b| b & !u == 0)
                .fold(0, |acc, &b| acc | b)
                == u
        })
}

/// Every nonempty open set contains a nonempty member of `family`.
pub fn is_pi_base(x: &FiniteSpace, family: &[u64]) -> bool {
    family.iter().all(|&b| b != 0 && x.is_open(b))
        && x
            .opens()
            .iter()
            .all(|&u| u == 0 || family.iter().any(|&b| b & !u == 0))
}

fn min_family(x: &FiniteSpace, constraints: impl Iterator<Item = Vec<u64>>) -> BaseWitness {
    let index = |u: u64| x.opens().binary_search(&u).expect("open set");
    let mut problem = HittingSetProblem::new(x.opens().len());
    for c in constraints {
        problem.require(c.into_iter().map(index));
    }
    let picked = problem.solve().expect("every constraint is satisfiable");
    BaseWitness {
        size: picked.len(),
        members: picked.into_iter().map(|i| x.opens()[i]).collect(),
    }
}

/// Least size of a base, by hitting every `{B open : x ∈ B ⊆ U}`.
pub fn weight_of_space(x: &FiniteSpace) -> BaseWitness {
    let opens = x.opens();
    let constraints = opens.iter().flat_map(|&u| {
        ones(u).map(move |p| {
            opens
                .iter()
                .copied()
                .filter(|&b| b >> p & 1 == 1 && b & !u == 0)
                .collect()
        })
    });
    min_family(x, constraints)
}

/// Least size of a π-base, by hitting every `{V ≠ ∅ open : V ⊆ U}`.
pub fn pi_weight_of_space(x: &FiniteSpace) -> BaseWitness {
    let opens = x.opens();
    let constraints = opens.iter().filter(|&&u| u != 0).map(|&u| {
        opens
            .iter()
            .copied()
            .filter(|&v| v != 0 && v & !u == 0)
            .collect()
    });
    min_family(x, constraints)
}

/// `RO(X)` is a base.
pub fn is_semiregular(x: &FiniteSpace) -> bool {
    is_space_base(x, &x.regular_open())
}

/// `RO(X)` is a π-base.
pub fn is_pi_semiregular(x: &FiniteSpace) -> bool {
    let nonempty: Vec<u64> = x.regular_open().into_iter().filter(|&u| u != 0).collect();
    is_pi_base(x, &nonempty)
}

/// No clopen set besides `∅` and `X`.
pub fn is_connected_space(x: &FiniteSpace) -> bool {
    x.clopens().iter().all(|&u| u == 0 || u == x.top())
}

/// A continuous map between finite spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousMap {
    source: FiniteSpace,
    target: FiniteSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: &FiniteSpace, target: &FiniteSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.point_count() {
            return Err(Error::IndexMismatch {
                left: map.len(),
                right: source.point_count(),
            });
        }
        if let Some(&p) = map.iter().find(|&&p| p >= target.point_count()) {
            return Err(Error::InvalidSpace(format!("point {p} is not in the target")));
        }
        let f = ContinuousMap {
            source: source.clone(),
            target: target.clone(),
            map,
        };
        if let Some(&open) = target.opens().iter().find(|&&v| !source.is_open(f.preimage(v))) {
            return Err(Error::Discontinuous { open });
        }
        Ok(f)
    }

    pub fn identity(x: &FiniteSpace) -> Self {
        ContinuousMap {
            source: x.clone(),
            target: x.clone(),
            map: (0..x.point_count()).collect(),
        }
    }

    /// Every continuous map from `source` to `target`.
    pub fn all(source: &FiniteSpace, target: &FiniteSpace) -> Vec<Self> {
        let (n, m) = (source.point_count(), target.point_count());
        if n > 0 && m == 0 {
            return Vec::new();
        }
        let total = (m as u64).pow(n as u32);
        (0..total)
            .filter_map(|code| {
                let map = (0..n).map(|i| (code / (m as u64).pow(i as u32) % m as u64) as usize).collect();
                ContinuousMap::new(source, target, map).ok()
            })
            .collect()
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn points(&self) -> &[usize] {
        &self.map
    }

    pub fn preimage(&self, s: u64) -> u64 {
        (0..self.map.len())
            .filter(|&i| s >> self.map[i] & 1 == 1)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ContinuousMap) -> Result<ContinuousMap> {
        if first.target != self.source {
            return Err(Error::NotComposable);
        }
        Ok(ContinuousMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&p| self.map[p]).collect(),
        })
    }
}

/// `G ↦ cl(f⁻¹(int G))` from `RC(Y)` to `RC(X)` for `f : X → Y`.
///
/// Between discrete spaces the result must satisfy DLC1–DLC5.
pub fn lambda_t_map(f: &ContinuousMap, rc_source: &RcAlgebra, rc_target: &RcAlgebra) -> Result<LcaMorphism> {
    if rc_source.space() != f.source() || rc_target.space() != f.target() {
        return Err(Error::InvalidSpace("RC algebras do not match the map".into()));
    }
    let (x, y) = (f.source(), f.target());
    let table = (0..rc_target.algebra().size())
        .map(|g| {
            let set = x.closure(f.preimage(y.interior(rc_target.set_of(g))));
            rc_source
                .element_of_set(set)
                .ok_or_else(|| Error::Internal(format!("{} is not regular closed", fmt_set(set))))
        })
        .collect::<Result<Vec<u64>>>()?;
    let t = LcaMorphism::new(rc_target.lca().clone(), rc_source.lca().clone(), table)?;
    if x.is_discrete() && y.is_discrete() {
        if let Verdict::Fails(v) = check_dhlc_morphism(&t) {
            return Err(Error::Internal(format!("image of a continuous map fails {v}")));
        }
    }
    Ok(t)
}

/// The discrete space on the atoms.
pub fn stone_dual(b: &BooleanAlgebra) -> Result<FiniteSpace> {
    FiniteSpace::discrete(b.atom_count())
}

/// The algebra of clopen sets.
#[derive(Clone, Debug)]
pub struct CoAlgebra {
    pub algebra: BooleanAlgebra,
    /// Point sets of the atoms, in atom order.
    pub atoms: Vec<u64>,
}

impl CoAlgebra {
    pub fn set_of(&self, bits: u64) -> u64 {
        ones(bits).fold(0, |acc, i| acc | self.atoms[i])
    }
}

pub fn co_algebra(x: &FiniteSpace) -> CoAlgebra {
    let atoms = atoms_of(&x.clopens(), |s| s).expect("clopen sets form a Boolean algebra");
    CoAlgebra {
        algebra: BooleanAlgebra::powerset(atoms.len()).expect("at most 5 atoms"),
        atoms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_adds_bounds_and_rejects_unclosed_families() {
        let x = FiniteSpace::new(2, &[0b01]).unwrap();
        assert_eq!(x.opens(), &[0, 0b01, 0b11]);
        assert!(matches!(FiniteSpace::new(3, &[0b001, 0b010]), Err(Error::InvalidSpace(_))));
        assert!(matches!(FiniteSpace::new(2, &[0b100]), Err(Error::InvalidSpace(_))));
        assert!(matches!(FiniteSpace::new(6, &[]), Err(Error::InvalidSpace(_))));
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| FiniteSpace::all(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn closure_and_interior() {
        let d = FiniteSpace::discrete(3).unwrap();
        for s in 0..8 {
            assert_eq!(d.closure(s), s);
            assert_eq!(d.interior(s), s);
        }
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.closure(0b10), 0b11);
        assert_eq!(s.closure(0b01), 0b01);
        assert_eq!(s.interior(0b01), 0);
        assert_eq!(s.interior(s.top()), s.top());
    }

    #[test]
    fn rc_of_small_spaces() {
        let d = rc_algebra(&FiniteSpace::discrete(3).unwrap());
        assert_eq!(d.atom_sets(), &[1, 2, 4]);
        assert_eq!(*d.ca(), ContactAlgebra::smallest(d.algebra()));
        assert_eq!(d.lca().bounded_top(), 7);

        let s = rc_algebra(&FiniteSpace::sierpinski());
        assert_eq!(s.atom_sets(), &[0b11]);

        let x = FiniteSpace::new(3, &[0b001, 0b011, 0b101]).unwrap();
        assert_eq!(x.regular_closed(), vec![0, 0b111]);

        let empty = rc_algebra(&FiniteSpace::discrete(0).unwrap());
        assert!(empty.algebra().is_degenerate());
    }

    #[test]
    fn ro_of_small_spaces() {
        let d = FiniteSpace::discrete(3).unwrap();
        let ro = ro_algebra(&d, &rc_algebra(&d)).unwrap();
        assert_eq!(ro.nu().table(), (0..8).collect::<Vec<u64>>().as_slice());

        let s = FiniteSpace::sierpinski();
        let rc = rc_algebra(&s);
        let ro = ro_algebra(&s, &rc).unwrap();
        assert_eq!(s.regular_open(), vec![0, 0b11]);
        assert_eq!(rc.set_of(ro.nu().get(1)), 0b11);
    }

    #[test]
    fn order_of_families() {
        assert_eq!(ord(&[0]), Ok(-1));
        assert_eq!(ord(&[0b001, 0b010, 0b100]), Ok(0));
        assert_eq!(ord(&[0b011, 0b110, 0b010]), Ok(2));
        assert_eq!(ord(&[0b1, 0b1]), Ok(1));
        assert_eq!(ord(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn cover_predicate_examples() {
        let x = FiniteSpace::discrete(2).unwrap();
        let f = [0b01, 0b11];
        let same = cover_predicates(&x, &f, &f).unwrap();
        assert!(same.is_cover && same.is_refinement && same.is_shrinking);
        assert!(same.is_swelling.holds());

        assert!(is_refinement(&[0b01, 0b10], &[0b11]));

        let swollen = cover_predicates(&x, &[0b01, 0b10], &[0b01, 0b11]).unwrap();
        assert_eq!(swollen.is_swelling, Verdict::Fails(vec![0, 1]));
        let shrunk = cover_predicates(&x, &[0b01, 0b10], &[0b00, 0b10]).unwrap();
        assert_eq!(shrunk.is_swelling, Verdict::Fails(vec![0]));

        assert_eq!(
            cover_predicates(&x, &[0b01], &[0b01, 0b10]),
            Err(Error::IndexMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn dimension_of_small_spaces() {
        assert_eq!(dim_cl(&FiniteSpace::discrete(0).unwrap(), 2), DimValue::Exactly(-1));
        assert_eq!(dim_cl(&FiniteSpace::discrete(4).unwrap(), 2), DimValue::Exactly(0));
        // Every cover of a chain contains X itself.
        assert_eq!(dim_cl(&FiniteSpace::chain(3).unwrap(), 2), DimValue::Exactly(0));
        assert_eq!(dim_cl(&FiniteSpace::sierpinski(), 2), DimValue::Exactly(0));
        // Two overlapping minimal neighbourhoods force order 1.
        let v = FiniteSpace::new(3, &[0b011, 0b110, 0b010]).unwrap();
        assert_eq!(dim_cl(&v, 2), DimValue::Exactly(1));
        assert_eq!(
            cl_leq(&v, 0, CoverEnumeration::Irredundant),
            Verdict::Fails(vec![0b011, 0b110])
        );
    }

    #[test]
    fn irredundant_covers_give_the_same_dimension() {
        for n in 0..=3 {
            for x in FiniteSpace::all(n).unwrap() {
                for level in -1..=2 {
                    assert_eq!(
                        cl_leq(&x, level, CoverEnumeration::Irredundant).holds(),
                        cl_leq(&x, level, CoverEnumeration::All).holds(),
                        "{x:?} at {level}"
                    );
                }
            }
        }
    }

    #[test]
    fn regular_shrinkings() {
        let d3 = FiniteSpace::discrete(3).unwrap();
        let c = regular_shrinking_dim_check(&d3, 0).unwrap();
        assert!(c.closed_shrinking && c.with_interiors && c.within_hypotheses && c.dim_cl_leq);

        let c = regular_shrinking_dim_check(&FiniteSpace::discrete(2).unwrap(), -1).unwrap();
        assert!(!c.closed_shrinking && !c.dim_cl_leq);

        let s = regular_shrinking_dim_check(&FiniteSpace::sierpinski(), 0).unwrap();
        assert!(!s.within_hypotheses);
        // RO = RC = {∅, X}, and (∅, X) shrinks every cover by two sets.
        assert!(s.closed_shrinking && s.with_interiors && s.dim_cl_leq);
    }

    #[test]
    fn weights_of_small_spaces() {
        for n in 0..=4 {
            let d = FiniteSpace::discrete(n).unwrap();
            assert_eq!(weight_of_space(&d).size, n);
            assert_eq!(pi_weight_of_space(&d).size, n);
        }
        let s = FiniteSpace::sierpinski();
        assert_eq!(weight_of_space(&s).members, vec![0b10, 0b11]);
        assert_eq!(pi_weight_of_space(&s).members, vec![0b10]);
    }

    #[test]
    fn semiregularity() {
        let d = FiniteSpace::discrete(3).unwrap();
        assert!(is_semiregular(&d) && is_pi_semiregular(&d));
        let s = FiniteSpace::sierpinski();
        assert!(!is_semiregular(&s) && !is_pi_semiregular(&s));
        let chain = FiniteSpace::chain(4).unwrap();
        assert_eq!(chain.regular_open(), vec![0, 0b1111]);
        assert!(!is_pi_semiregular(&chain));
    }

    #[test]
    fn connectedness() {
        assert!(!is_connected_space(&FiniteSpace::discrete(2).unwrap()));
        assert!(is_connected_space(&FiniteSpace::sierpinski()));
        assert!(is_connected_space(&FiniteSpace::chain(3).unwrap()));
        assert!(rc_algebra(&FiniteSpace::sierpinski()).ca().is_connected().unwrap());
    }

    #[test]
    fn continuity() {
        let s = FiniteSpace::sierpinski();
        let d = FiniteSpace::discrete(2).unwrap();
        assert!(ContinuousMap::new(&d, &s, vec![0, 1]).is_ok());
        assert_eq!(
            ContinuousMap::new(&s, &d, vec![0, 1]),
            Err(Error::Discontinuous { open: 0b01 })
        );
        assert_eq!(ContinuousMap::all(&s, &s).len(), 3);
    }

    #[test]
    fn lambda_t_of_simple_maps() {
        let d2 = FiniteSpace::discrete(2).unwrap();
        let d1 = FiniteSpace::discrete(1).unwrap();
        let (r2, r1) = (rc_algebra(&d2), rc_algebra(&d1));
        let id = lambda_t_map(&ContinuousMap::identity(&d2), &r2, &r2).unwrap();
        assert_eq!(id.table(), &[0, 1, 2, 3]);
        let constant = ContinuousMap::new(&d2, &d1, vec![0, 0]).unwrap();
        assert_eq!(lambda_t_map(&constant, &r2, &r1).unwrap().table(), &[0, 3]);
        let inclusion = ContinuousMap::new(&d1, &d2, vec![1]).unwrap();
        assert_eq!(lambda_t_map(&inclusion, &r1, &r2).unwrap().table(), &[0, 0, 1, 1]);
    }

    #[test]
    fn stone_duality() {
        let b = BooleanAlgebra::powerset(3).unwrap();
        let x = stone_dual(&b).unwrap();
        assert!(x.is_discrete() && x.point_count() == 3);
        assert_eq!(co_algebra(&x).algebra.atom_count(), 3);
        assert_eq!(co_algebra(&FiniteSpace::sierpinski()).atoms, vec![0b11]);
    }
}
