#![forbid(unsafe_code)]

//! Kirchhoff and Dodgson polynomials of multigraphs, five-invariants and
//! denominator reduction, splitting decisions for 5-configurations,
//! delta-wye families, planar duals, and forbidden-minor scanning.

pub mod cli;
pub mod kirchhoff;
pub mod multigraph;
pub mod polynomial;
pub mod splitting;
pub mod structure;

pub use kirchhoff::{DodgsonSpec, IncidenceFixture};
pub use multigraph::{EdgeSet, FullComponent, Multigraph};
pub use polynomial::{Monomial, Polynomial};
