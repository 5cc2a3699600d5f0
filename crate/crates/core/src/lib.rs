//! Homological invariants of bound quiver algebras with monomial relations
//! over prime fields.

pub mod algebra;
pub mod approx;
pub mod catalog;
pub mod cli;
pub mod linalg;
pub mod homology;
pub mod rep;
pub mod verify;
