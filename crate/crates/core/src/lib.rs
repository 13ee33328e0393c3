//! Exact combinatorics of r-th roots of line bundles on twisted nodal curves.
//!
//! A twisted curve is modelled by its decorated dual graph ([`DualGraph`]):
//! vertex genera, markings and the stabilizer order at every node. On top of
//! it the crate counts r-torsion and r-th roots, checks the numerical root
//! criterion, builds explicit roots, and studies the action of ghost
//! automorphisms on root classes.
//!
//! The exact linear algebra in [`exactalg`] is generic over the integer type;
//! the aliases below fix the arbitrary-precision instantiation used by the
//! rest of the crate.

pub mod error;
pub mod exactalg;
pub mod graphs;
pub mod orbits;
pub mod picard;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use error::{Error, Result};
pub use picard::LineBundle;
pub use graphs::{DualGraph, Edge, MultiIndex, NodeType, SidePartition, Vertex};


/// Integer matrix with arbitrary-precision entries.
pub type IntMatrix = exactalg::Matrix<BigInt>;
/// Homomorphism between finite products of cyclic groups, arbitrary precision.
pub type CyclicHom = exactalg::CyclicHomomorphism<BigInt>;
/// Smith normal form with arbitrary-precision entries.
pub type IntSmithForm = exactalg::SmithForm<BigInt>;
/// Exact rational degree of a line bundle on a component.
pub type VertexDegree = Ratio<i64>;
/// Exact rational with arbitrary-precision numerator and denominator.
pub type BigRational = Ratio<BigInt>;
