//! Finite Boolean contact algebras: construction, axiom checking, the
//! algebraic dimension and weights, and a finite-topology oracle to test
//! them against.

pub mod bits;
pub mod boolean;
pub mod contact;
pub mod dimension;
pub mod error;
pub mod hitting;
pub mod lca;
pub mod search;
pub mod topology;
pub mod verdict;
pub mod weight;

pub use boolean::{BooleanAlgebra, Element, ElementMap, Subalgebra};
pub use contact::{Axiom, Bundle, ContactAlgebra};
pub use error::{Error, Result};
pub use lca::{LcaMorphism, LocalContactAlgebra};
pub use topology::FiniteSpace;
pub use verdict::Verdict;
