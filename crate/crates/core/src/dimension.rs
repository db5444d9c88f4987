//! The algebraic dimension `dim_a(D; ⟨B, ρ⟩)`.
//!
//! `dim_a ≤ n` (for `n ≥ 0`, `k = n + 2`) says: whenever `a_i, b_i ∈ D` with
//! `b_i ≪ a_i` and `⋁ b_i = 1`, there are `c_i, d_i ∈ D` with
//! `c_i ≪ d_i ≪ a_i`, `⋁ c_i = 1` and `⋀ d_i = 0`.
//!
//! Both the hypothesis and the conclusion depend on each `a_i` only through
//! `down(a_i) = {x ∈ D : x ≪ a_i}`, and both are invariant under permuting
//! the index positions. The search therefore ranges over nondecreasing
//! tuples of class representatives (the least `a` with a given `down(a)`).
//! The first counterexample found is still the lexicographically first one
//! over all of `D^k`: replacing entries by smaller representatives and
//! sorting never increases a tuple.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::bits;
use crate::contact::ContactAlgebra;
use crate::error::{Error, Result};
use crate::lca::{relative_lca, LocalContactAlgebra};
use crate::verdict::Verdict;

pub const DEFAULT_N_CAP: i64 = 3;

/// A failing instance of the hypothesis: `b_i ≪ a_i`, `⋁ b_i = 1`, and no
/// `(c, d)` witness exists. Empty for a failed `n = -1` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[u64]| xs.iter().map(|&x| bits::fmt_set(x)).collect::<Vec<_>>().join(" ");
        write!(f, "a=[{}] b=[{}]", show(&self.a), show(&self.b))
    }
}

/// `dim_a(D; ⟨B, ρ⟩)` questions for one algebra and one set `D`.
#[derive(Clone, Debug)]
pub struct DimensionQuery<'a> {
    ca: &'a ContactAlgebra,
    d: Vec<u64>,
    n_cap: i64,
    jobs: usize,
}

impl<'a> DimensionQuery<'a> {
    /// `D` must contain 0 and 1; it is sorted and deduplicated.
    pub fn new(ca: &'a ContactAlgebra, d: &[u64], n_cap: i64) -> Result<Self> {
        let b = ca.algebra();
        if let Some(&bits) = d.iter().find(|&&x| !b.is_bits(x)) {
            return Err(Error::NotAnElement {
                bits,
                atoms: b.atom_count(),
            });
        }
        if !d.contains(&0) || !d.contains(&b.top()) {
            return Err(Error::MissingBounds);
        }
        if n_cap < -1 {
            return Err(Error::BadLevel(n_cap));
        }
        let mut d = d.to_vec();
        d.sort_unstable();
        d.dedup();
        Ok(DimensionQuery {
            ca,
            d,
            n_cap,
            jobs: 1,
        })
    }

    /// `D = B`.
    pub fn full(ca: &'a ContactAlgebra, n_cap: i64) -> Result<Self> {
        let d: Vec<u64> = (0..ca.algebra().size()).collect();
        Self::new(ca, &d, n_cap)
    }

    /// Number of worker threads for the outer enumeration; results do not
    /// depend on it.
    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn subset(&self) -> &[u64] {
        &self.d
    }

    pub fn n_cap(&self) -> i64 {
        self.n_cap
    }

    pub fn ca(&self) -> &ContactAlgebra {
        self.ca
    }
}

/// `dim_a(D; ⟨B, ρ⟩) ≤ n`, with the first counterexample on failure.
pub fn dim_leq(q: &DimensionQuery, n: i64) -> Result<Verdict<Counterexample>> {
    if n < -1 {
        return Err(Error::BadLevel(n));
    }
    if n == -1 {
        return Ok(if q.ca.algebra().is_degenerate() {
            Verdict::Holds
        } else {
            Verdict::Fails(Counterexample {
                a: vec![],
                b: vec![],
            })
        });
    }
    let search = Search::new(q, (n + 2) as usize);
    let found = if q.jobs == 1 {
        (0..search.reps.len()).find_map(|first| search.search_from(first))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(q.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| {
            (0..search.reps.len())
                .into_par_iter()
                .find_map_first(|first| search.search_from(first))
        })
    };
    Ok(found.into())
}

struct Search<'q> {
    top: u64,
    k: usize,
    /// Class representatives, ascending.
    reps: Vec<u64>,
    /// `down(rep)` in ascending order.
    down: Vec<Vec<u64>>,
    down_join: Vec<u64>,
    /// Join of `down_join` over representatives from index `i` on.
    suffix_join: Vec<u64>,
    /// Pareto-optimal `(c, d)` with `c ≪ d ≪ rep`: `c` maximal, `d` minimal.
    pairs: Vec<Vec<(u64, u64)>>,
    c_max: Vec<u64>,
    d_min: Vec<u64>,
    _q: std::marker::PhantomData<&'q ()>,
}

impl<'q> Search<'q> {
    fn new(q: &'q DimensionQuery, k: usize) -> Self {
        let ca = q.ca;
        let top = ca.algebra().top();
        let down_of = |a: u64| -> Vec<u64> {
            q.d.iter().copied().filter(|&x| ca.way_below_bits(x, a)).collect()
        };
        let mut classes: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for &a in &q.d {
            classes.entry(down_of(a)).or_insert(a);
        }
        let mut reps: Vec<(u64, Vec<u64>)> = classes.into_iter().map(|(dn, a)| (a, dn)).collect();
        reps.sort_unstable();

        let down: Vec<Vec<u64>> = reps.iter().map(|(_, dn)| dn.clone()).collect();
        let reps: Vec<u64> = reps.into_iter().map(|(a, _)| a).collect();
        let down_join: Vec<u64> = down.iter().map(|dn| dn.iter().fold(0, |acc, x| acc | x)).collect();
        let mut suffix_join = vec![0u64; reps.len() + 1];
        for i in (0..reps.len()).rev() {
            suffix_join[i] = suffix_join[i + 1] | down_join[i];
        }
        let pairs: Vec<Vec<(u64, u64)>> = down
            .iter()
            .map(|dn| {
                let all: Vec<(u64, u64)> = dn
                    .iter()
                    .flat_map(|&d| down_of(d).into_iter().map(move |c| (c, d)))
                    .collect();
                pareto(all)
            })
            .collect();
        let c_max = pairs.iter().map(|p| p.iter().fold(0, |acc, &(c, _)| acc | c)).collect();
        let d_min = pairs.iter().map(|p| p.iter().fold(top, |acc, &(_, d)| acc & d)).collect();
        Search {
            top,
            k,
            reps,
            down,
            down_join,
            suffix_join,
            pairs,
            c_max,
            d_min,
            _q: std::marker::PhantomData,
        }
    }

    /// First counterexample among tuples starting with representative `first`.
    fn search_from(&self, first: usize) -> Option<Counterexample> {
        let mut tuple = vec![first];
        self.extend(&mut tuple, self.down_join[first])
    }

    fn extend(&self, tuple: &mut Vec<usize>, join: u64) -> Option<Counterexample> {
        let last = *tuple.last().unwrap();
        if tuple.len() == self.k {
            return self.check(tuple);
        }
        for next in last..self.reps.len() {
            // Hypothesis needs ⋁ b = 1; later entries are ≥ next.
            if join | self.suffix_join[next] != self.top {
                break;
            }
            tuple.push(next);
            let found = self.extend(tuple, join | self.down_join[next]);
            tuple.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn check(&self, tuple: &[usize]) -> Option<Counterexample> {
        let b = self.first_cover(tuple)?;
        if self.has_witness(tuple) {
            return None;
        }
        Some(Counterexample {
            a: tuple.iter().map(|&i| self.reps[i]).collect(),
            b,
        })
    }

    /// Lexicographically first `b` with `b_i ∈ down(a_i)` and `⋁ b_i = 1`.
    fn first_cover(&self, tuple: &[usize]) -> Option<Vec<u64>> {
        let k = tuple.len();
        let mut reach = vec![0u64; k + 1];
        for i in (0..k).rev() {
            reach[i] = reach[i + 1] | self.down_join[tuple[i]];
        }
        if reach[0] != self.top {
            return None;
        }
        let mut b = Vec::with_capacity(k);
        fn go(s: &Search, tuple: &[usize], reach: &[u64], b: &mut Vec<u64>, join: u64) -> bool {
            let i = b.len();
            if i == tuple.len() {
                return join == s.top;
            }
            for &x in &s.down[tuple[i]] {
                if join | x | reach[i + 1] != s.top {
                    continue;
                }
                b.push(x);
                if go(s, tuple, reach, b, join | x) {
                    return true;
                }
                b.pop();
            }
            false
        }
        go(self, tuple, &reach, &mut b, 0).then_some(b)
    }

    fn has_witness(&self, tuple: &[usize]) -> bool {
        let k = tuple.len();
        let mut reach_c = vec![0u64; k + 1];
        let mut reach_d = vec![self.top; k + 1];
        for i in (0..k).rev() {
            reach_c[i] = reach_c[i + 1] | self.c_max[tuple[i]];
            reach_d[i] = reach_d[i + 1] & self.d_min[tuple[i]];
        }
        let mut dead: HashSet<(usize, u64, u64)> = HashSet::new();
        #[allow(clippy::too_many_arguments)]
        fn go(
            s: &Search,
            tuple: &[usize],
            reach_c: &[u64],
            reach_d: &[u64],
            dead: &mut HashSet<(usize, u64, u64)>,
            i: usize,
            join: u64,
            meet: u64,
        ) -> bool {
            if join | reach_c[i] != s.top || meet & reach_d[i] != 0 {
                return false;
            }
            if i == tuple.len() {
                return true;
            }
            if dead.contains(&(i, join, meet)) {
                return false;
            }
            for &(c, d) in &s.pairs[tuple[i]] {
                if go(s, tuple, reach_c, reach_d, dead, i + 1, join | c, meet & d) {
                    return true;
                }
            }
            dead.insert((i, join, meet));
            false
        }
        go(self, tuple, &reach_c, &reach_d, &mut dead, 0, 0, self.top)
    }
}

/// Keeps the pairs not dominated by another with larger `c` and smaller `d`.
fn pareto(mut all: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    all.sort_unstable();
    all.dedup();
    let dominated = |&(c, d): &(u64, u64), &(c2, d2): &(u64, u64)| {
        (c, d) != (c2, d2) && c & !c2 == 0 && d2 & !d == 0
    };
    all.iter()
        .copied()
        .filter(|p| !all.iter().any(|q| dominated(p, q)))
        .collect()
}

/// A value of `dim_a`, or "above the cap".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DimValue {
    Exactly(i64),
    Above(i64),
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exactly(n) => write!(f, "{n}"),
            DimValue::Above(cap) => write!(f, ">{cap}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub value: DimValue,
    /// Verdict of `dim_a ≤ n` for every `n` from -1 to the cap.
    pub levels: Vec<(i64, Verdict<Counterexample>)>,
    /// Pairs `n < m` where `≤ n` holds but `≤ m` fails.
    pub anomalies: Vec<(i64, i64)>,
}

/// Evaluates every level from -1 to the cap independently and reports the
/// least one that holds.
pub fn dim_a(q: &DimensionQuery) -> Result<DimensionReport> {
    let levels = (-1..=q.n_cap)
        .map(|n| Ok((n, dim_leq(q, n)?)))
        .collect::<Result<Vec<_>>>()?;
    let value = levels
        .iter()
        .find(|(_, v)| v.holds())
        .map_or(DimValue::Above(q.n_cap), |&(n, _)| DimValue::Exactly(n));
    let mut anomalies = Vec::new();
    for (n, v) in &levels {
        for (m, w) in &levels {
            if n < m && v.holds() && !w.holds() {
                anomalies.push((*n, *m));
            }
        }
    }
    Ok(DimensionReport {
        value,
        levels,
        anomalies,
    })
}

/// Which elements supply the witnesses when measuring an LCA.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcaWitnesses {
    /// `D = B`, the reading used throughout.
    All,
    /// `D = 𝔹 ∪ {1}`; experimental.
    BoundedAndTop,
}

pub fn lca_dim_a(l: &LocalContactAlgebra, mode: LcaWitnesses, n_cap: i64) -> Result<DimensionReport> {
    let q = match mode {
        LcaWitnesses::All => DimensionQuery::full(l.ca(), n_cap)?,
        LcaWitnesses::BoundedAndTop => {
            let mut d: Vec<u64> = l.bounded_elements().collect();
            d.push(l.algebra().top());
            DimensionQuery::new(l.ca(), &d, n_cap)?
        }
    };
    dim_a(&q)
}

/// (DV): every `a ≪ b` in `B` has `c ∈ D` with `a ≪ c ≪ b`.
pub fn is_dv_dense(ca: &ContactAlgebra, d: &[u64]) -> Result<Verdict<(u64, u64)>> {
    let b = ca.algebra();
    if let Some(&bits) = d.iter().find(|&&x| !b.is_bits(x)) {
        return Err(Error::NotAnElement {
            bits,
            atoms: b.atom_count(),
        });
    }
    for x in 0..b.size() {
        for y in 0..b.size() {
            if ca.way_below_bits(x, y)
                && !d.iter().any(|&c| ca.way_below_bits(x, c) && ca.way_below_bits(c, y))
            {
                return Ok(Verdict::Fails((x, y)));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub full: DimValue,
    pub restricted: DimValue,
}

impl InvarianceCheck {
    pub fn holds(&self) -> bool {
        self.full == self.restricted
    }
}

/// Compares `dim_a(⟨B, ρ⟩)` with `dim_a(D; ⟨B, ρ⟩)` for a DV-dense `D ∋ 0, 1`.
pub fn check_lemma_dv_invariance(ca: &ContactAlgebra, d: &[u64], n_cap: i64) -> Result<InvarianceCheck> {
    if let Verdict::Fails((x, y)) = is_dv_dense(ca, d)? {
        return Err(Error::NotDense(format!(
            "{} ≪ {} has no interpolant in D",
            bits::fmt_set(x),
            bits::fmt_set(y)
        )));
    }
    let full = dim_a(&DimensionQuery::full(ca, n_cap)?)?.value;
    let restricted = dim_a(&DimensionQuery::new(ca, d, n_cap)?)?.value;
    Ok(InvarianceCheck { full, restricted })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityCheck {
    pub ambient: DimValue,
    pub relative: DimValue,
    /// The ambient value is above the cap, so nothing was compared.
    pub vacuous: bool,
}

impl MonotonicityCheck {
    pub fn holds(&self) -> bool {
        match (self.ambient, self.relative) {
            (DimValue::Above(_), _) => true,
            (DimValue::Exactly(_), DimValue::Above(_)) => false,
            (DimValue::Exactly(a), DimValue::Exactly(r)) => r <= a,
        }
    }
}

/// `dim_a` of the relative algebra at `m` against the ambient one, without
/// checking that `l` is valid.
pub fn relative_dimension_check(l: &LocalContactAlgebra, m: u64, n_cap: i64) -> Result<MonotonicityCheck> {
    let rel = relative_lca(l, m)?;
    let ambient = lca_dim_a(l, LcaWitnesses::All, n_cap)?.value;
    let relative = lca_dim_a(&rel, LcaWitnesses::All, n_cap)?.value;
    Ok(MonotonicityCheck {
        ambient,
        relative,
        vacuous: matches!(ambient, DimValue::Above(_)),
    })
}

/// `dim_a(⟨B_m, ρ_m, 𝔹_m⟩) ≤ dim_a(⟨B, ρ, 𝔹⟩)` for a valid `l` and `m ≠ 0`.
pub fn check_relative_monotonicity(l: &LocalContactAlgebra, m: u64, n_cap: i64) -> Result<MonotonicityCheck> {
    if m == 0 {
        return Err(Error::ZeroRelativeTop);
    }
    l.require_valid()?;
    relative_dimension_check(l, m, n_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::BooleanAlgebra;

    fn smallest(k: usize) -> ContactAlgebra {
        ContactAlgebra::smallest(&BooleanAlgebra::powerset(k).unwrap())
    }

    #[test]
    fn degenerate_algebra_has_dimension_minus_one() {
        let ca = smallest(0);
        let q = DimensionQuery::full(&ca, 2).unwrap();
        assert!(dim_leq(&q, -1).unwrap().holds());
        let report = dim_a(&q).unwrap();
        assert_eq!(report.value, DimValue::Exactly(-1));
        assert!(report.anomalies.is_empty());
    }

    #[test]
    fn overlap_on_three_atoms_has_dimension_zero() {
        let ca = smallest(3);
        let q = DimensionQuery::full(&ca, 2).unwrap();
        assert!(!dim_leq(&q, -1).unwrap().holds());
        assert!(dim_leq(&q, 0).unwrap().holds());
        assert_eq!(dim_a(&q).unwrap().value, DimValue::Exactly(0));
    }

    #[test]
    fn overlap_witnesses_from_the_two_set_argument() {
        // c₁ = d₁ = (a₁ ∧ a₂)* ∧ a₁ and c₂ = d₂ = a₂ settle every admissible pair.
        let ca = smallest(3);
        for a1 in 0..8u64 {
            for a2 in 0..8u64 {
                if a1 | a2 != 7 {
                    continue;
                }
                let c1 = !(a1 & a2) & 7 & a1;
                let c2 = a2;
                assert!(ca.way_below_bits(c1, c1) && ca.way_below_bits(c1, a1));
                assert!(ca.way_below_bits(c2, a2));
                assert_eq!(c1 | c2, 7);
                assert_eq!(c1 & c2, 0);
            }
        }
    }

    #[test]
    fn bounds_are_required() {
        let ca = smallest(2);
        assert_eq!(DimensionQuery::new(&ca, &[0, 1], 2).unwrap_err(), Error::MissingBounds);
        let q = DimensionQuery::full(&ca, 2).unwrap();
        assert_eq!(dim_leq(&q, -2).unwrap_err(), Error::BadLevel(-2));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let ca = ContactAlgebra::cycle(6).unwrap();
        let q1 = DimensionQuery::full(&ca, 1).unwrap();
        let q4 = q1.clone().jobs(4);
        for n in -1..=1 {
            assert_eq!(dim_leq(&q1, n).unwrap(), dim_leq(&q4, n).unwrap());
        }
    }

    #[test]
    fn dv_density_fixtures() {
        let ca = smallest(3);
        let all: Vec<u64> = (0..8).collect();
        assert!(is_dv_dense(&ca, &all).unwrap().holds());
        let l = ContactAlgebra::largest(&BooleanAlgebra::powerset(3).unwrap());
        assert!(is_dv_dense(&l, &[0, 7]).unwrap().holds());
        assert!(matches!(
            check_lemma_dv_invariance(&ca, &[0, 7], 1),
            Err(Error::NotDense(_))
        ));
    }

    #[test]
    fn pareto_keeps_only_undominated_pairs() {
        let p = pareto(vec![(0b01, 0b11), (0b11, 0b11), (0b01, 0b01), (0b01, 0b01)]);
        assert_eq!(p, vec![(0b01, 0b01), (0b11, 0b11)]);
    }
}
