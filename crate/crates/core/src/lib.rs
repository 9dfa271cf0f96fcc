//! List-agreement testing on weighted pure simplicial complexes.
//!
//! The crate provides exact-rational simplicial complexes, group-valued
//! cochains, representation complexes, covers induced by cochains, the
//! empty-triangle coboundary tester, the list-agreement tester, the
//! direct-sum tester, generators for test inputs, and brute-force oracles
//! that evaluate distances exactly on small instances.

pub mod assignment;
pub mod cheeger;
pub mod cochain;
pub mod complex;
pub mod covers;
pub mod direct_sum;
pub mod error;
pub mod generators;
pub mod group;
pub mod harness;
pub mod homology;
pub mod io;
pub mod list_agreement;
pub mod rational;
pub mod representation;
pub mod sampling;

pub use complex::{Face, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use group::{Bit, Group, Perm};
pub use rational::Rational;
