//! Enumeration of atom relations up to isomorphism, with a table of their
//! properties.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bits::ones;
use crate::boolean::BooleanAlgebra;
use crate::contact::{Bundle, ContactAlgebra};
use crate::dimension::{dim_a, DimValue, DimensionQuery};
use crate::error::{Error, Result};
use crate::lca::LocalContactAlgebra;
use crate::weight::weight_w_a;

/// Which atom relations to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationClass {
    /// Every relation, i.e. every precontact structure.
    Any,
    /// Reflexive and symmetric relations, i.e. the contact structures.
    ReflexiveSymmetric,
}

impl RelationClass {
    /// Largest atom count the enumeration accepts.
    pub fn max_atoms(self) -> usize {
        match self {
            RelationClass::Any => 4,
            RelationClass::ReflexiveSymmetric => 6,
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn permute_rows(rows: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; rows.len()];
    for (p, &row) in rows.iter().enumerate() {
        out[perm[p]] = ones(row).fold(0, |acc, q| acc | 1 << perm[q]);
    }
    out
}

/// Least row vector among all relabellings of the atoms.
pub fn canonical_rows(rows: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| permute_rows(rows, p))
        .min()
        .unwrap_or_default()
}

/// Every relation of the class on `atoms` atoms, labelled.
pub fn labelled_relations(atoms: usize, class: RelationClass) -> Result<Vec<Vec<u64>>> {
    if atoms > class.max_atoms() {
        return Err(Error::TooManyAtoms {
            atoms,
            cap: class.max_atoms(),
        });
    }
    Ok(match class {
        RelationClass::Any => (0..1u64 << (atoms * atoms))
            .map(|code| {
                (0..atoms)
                    .map(|p| code >> (p * atoms) & ((1 << atoms) - 1))
                    .collect()
            })
            .collect(),
        RelationClass::ReflexiveSymmetric => {
            let edges: Vec<(usize, usize)> = (0..atoms)
                .flat_map(|p| (p + 1..atoms).map(move |q| (p, q)))
                .collect();
            (0..1u64 << edges.len())
                .map(|code| {
                    let mut rows: Vec<u64> = (0..atoms).map(|p| 1 << p).collect();
                    for i in ones(code) {
                        let (p, q) = edges[i];
                        rows[p] |= 1 << q;
                        rows[q] |= 1 << p;
                    }
                    rows
                })
                .collect()
        }
    })
}

/// One representative per isomorphism class, each in canonical form, sorted.
pub fn relations_up_to_isomorphism(atoms: usize, class: RelationClass) -> Result<Vec<Vec<u64>>> {
    let perms = permutations(atoms);
    let set: BTreeSet<Vec<u64>> = labelled_relations(atoms, class)?
        .into_par_iter()
        .map(|rows| canonical_rows(&rows, &perms))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(set.into_iter().collect())
}

/// Properties of one relation, with every bounded element allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRow {
    pub atoms: usize,
    pub rows: Vec<u64>,
    /// Precontact, contact, extensional, normal.
    pub bundles: [bool; 4],
    /// `None` when the relation is not a contact relation.
    pub connected: Option<bool>,
    pub dim: DimValue,
    pub lca_valid: bool,
    pub weight: usize,
}

pub fn tabulate(atoms: usize, class: RelationClass, n_cap: i64, jobs: usize) -> Result<Vec<SearchRow>> {
    let relations = relations_up_to_isomorphism(atoms, class)?;
    let b = BooleanAlgebra::powerset(atoms)?;
    let row = |rows: &Vec<u64>| -> Result<SearchRow> {
        let ca = ContactAlgebra::from_rows(&b, rows.clone())?;
        let bundles = [Bundle::Precontact, Bundle::Contact, Bundle::Extensional, Bundle::Normal]
            .map(|bundle| ca.check_bundle(bundle).holds());
        let dim = dim_a(&DimensionQuery::full(&ca, n_cap)?)?.value;
        let connected = ca.is_connected().ok();
        let l = LocalContactAlgebra::with_all_bounded(ca);
        Ok(SearchRow {
            atoms,
            rows: rows.clone(),
            bundles,
            connected,
            dim,
            lca_valid: l.is_valid(),
            weight: weight_w_a(&l).size,
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    pool.install(|| relations.par_iter().map(row).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_order() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        let p3 = permutations(3);
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[1], vec![0, 2, 1]);
        assert_eq!(p3[5], vec![2, 1, 0]);
    }

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (0..=5)
            .map(|k| relations_up_to_isomorphism(k, RelationClass::ReflexiveSymmetric).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn relation_counts() {
        let counts: Vec<usize> = (0..=3)
            .map(|k| relations_up_to_isomorphism(k, RelationClass::Any).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 10, 104]);
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        let perms = permutations(4);
        let path = vec![0b0011, 0b0111, 0b1110, 0b1100];
        let relabelled = permute_rows(&path, &[2, 0, 3, 1]);
        assert_ne!(path, relabelled);
        assert_eq!(canonical_rows(&path, &perms), canonical_rows(&relabelled, &perms));
    }

    #[test]
    fn caps() {
        assert!(labelled_relations(5, RelationClass::Any).is_err());
        assert!(labelled_relations(7, RelationClass::ReflexiveSymmetric).is_err());
    }

    #[test]
    fn table_is_independent_of_workers() {
        let one = tabulate(3, RelationClass::ReflexiveSymmetric, 2, 1).unwrap();
        let four = tabulate(3, RelationClass::ReflexiveSymmetric, 2, 4).unwrap();
        assert_eq!(one, four);
        let overlap = one.iter().find(|r| r.rows == vec![1, 2, 4]).unwrap();
        assert_eq!(overlap.bundles, [true; 4]);
        assert_eq!(overlap.dim, DimValue::Exactly(0));
        assert!(overlap.lca_valid);
        assert_eq!(overlap.weight, 8);
    }
}
