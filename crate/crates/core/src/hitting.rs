//! Exact minimum hitting set.
//!
//! Every minimum-cardinality search in the crate (dense sets, bases of
//! algebras, bases and pi-bases of spaces) asks for the smallest set of
//! candidates meeting each of a family of constraint sets. The solver runs a
//! size-increasing branch and bound, preseeded with the members of singleton
//! constraints, and then fixes the lexicographically smallest optimal witness
//! one element at a time.

use crate::bits::BitSet;

#[derive(Clone, Debug)]
pub struct HittingSetProblem {
    universe: usize,
    sets: Vec<BitSet>,
}

impl HittingSetProblem {
    pub fn new(universe: usize) -> Self {
        HittingSetProblem {
            universe,
            sets: Vec::new(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Adds the constraint "the solution meets `members`".
    pub fn require(&mut self, members: impl IntoIterator<Item = usize>) {
        self.sets.push(BitSet::from_iter(self.universe, members));
    }

    pub fn constraint_count(&self) -> usize {
        self.sets.len()
    }

    /// Lexicographically smallest minimum hitting set, as ascending indices.
    /// `None` when some constraint is empty.
    pub fn solve(&self) -> Option<Vec<usize>> {
        if self.sets.iter().any(BitSet::is_empty) {
            return None;
        }
        let sets = minimal_constraints(&self.sets);
        let solver = Solver {
            universe: self.universe,
            sets: &sets,
        };

        let mut forced = BitSet::new(self.universe);
        for s in sets.iter().filter(|s| s.count() == 1) {
            forced.insert(s.iter().next().unwrap());
        }
        let excluded = BitSet::new(self.universe);

        let mut extra = solver.packing_bound(&forced, &excluded);
        while !solver.feasible(&forced, &excluded, extra) {
            extra += 1;
        }

        // Fix the witness greedily, smallest index first.
        let mut chosen = forced;
        let mut excluded = excluded;
        let mut remaining = extra;
        for e in 0..self.universe {
            if remaining == 0 {
                break;
            }
            if chosen.contains(e) {
                continue;
            }
            chosen.insert(e);
            if solver.feasible(&chosen, &excluded, remaining - 1) {
                remaining -= 1;
            } else {
                chosen.remove(e);
                excluded.insert(e);
            }
        }
        debug_assert!(sets.iter().all(|s| s.intersects(&chosen)));
        Some(chosen.iter().collect())
    }
}

/// Drops duplicate constraints and those containing another constraint.
fn minimal_constraints(sets: &[BitSet]) -> Vec<BitSet> {
    let mut sorted: Vec<BitSet> = sets.to_vec();
    sorted.sort_by_key(|s| s.count());
    sorted.dedup();
    let mut kept: Vec<BitSet> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

struct Solver<'a> {
    universe: usize,
    sets: &'a [BitSet],
}

impl Solver<'_> {
    /// Number of pairwise disjoint unhit constraints, restricted to the
    /// non-excluded candidates; a lower bound on the picks still needed.
    fn packing_bound(&self, chosen: &BitSet, excluded: &BitSet) -> usize {
        let mut used = BitSet::new(self.universe);
        let mut count = 0;
        for s in self.sets {
            if s.intersects(chosen) {
                continue;
            }
            let avail = s.difference(excluded);
            if !avail.intersects(&used) {
                for i in avail.iter() {
                    used.insert(i);
                }
                count += 1;
            }
        }
        count
    }

    fn feasible(&self, chosen: &BitSet, excluded: &BitSet, budget: usize) -> bool {
        let mut branch: Option<BitSet> = None;
        let mut branch_size = usize::MAX;
        for s in self.sets {
            if s.intersects(chosen) {
                continue;
            }
            let avail = s.difference(excluded);
            let n = avail.count();
            if n == 0 {
                return false;
            }
            if n < branch_size {
                branch_size = n;
                branch = Some(avail);
            }
        }
        let Some(branch) = branch else {
            return true;
        };
        if budget == 0 || self.packing_bound(chosen, excluded) > budget {
            return false;
        }
        let mut excluded = excluded.clone();
        let mut chosen = chosen.clone();
        for e in branch.iter() {
            chosen.insert(e);
            if self.feasible(&chosen, &excluded, budget - 1) {
                return true;
            }
            chosen.remove(e);
            excluded.insert(e);
        }
        false
    }
}
