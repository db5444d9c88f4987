//! Shared fixtures for the benchmarks.

use contalg_core::{BooleanAlgebra, ContactAlgebra, LocalContactAlgebra};

pub fn cycle(n: usize) -> ContactAlgebra {
    ContactAlgebra::cycle(n).unwrap()
}

pub fn overlap(atoms: usize) -> LocalContactAlgebra {
    let b = BooleanAlgebra::powerset(atoms).unwrap();
    LocalContactAlgebra::with_all_bounded(ContactAlgebra::smallest(&b))
}
