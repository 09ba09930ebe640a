//! Exact arithmetic for polarized hyperkähler manifolds of K3^[m]-type.
//!
//! The crate is organised bottom-up:
//!
//! * [`pell`] — Pell-type equations `e1·a² − e2·b² = t`, their solution
//!   classes under the fundamental unit, and ordered solution streams.
//! * [`lattice`] — block-sum lattices (U, E8(−1), I1(t), small Gram blocks),
//!   discriminant groups and Eichler orbit invariants.
//! * [`cones`] — nef and movable cones of Hilbert squares/powers of K3
//!   surfaces and of Picard-rank-2 fourfolds, with their wall decompositions.
//! * [`rrinv`] — Riemann–Roch polynomials, Fujiki constants, Betti numbers.
//! * [`autgroups`] — biregular and birational automorphism groups in the
//!   classified situations.
//! * [`periods`] — Heegner divisors and the image of the period map.
//! * [`report`] — deterministic rendering of the classical tables.
//!
//! All integers that can grow (Pell solutions, slopes) are arbitrary
//! precision; no floating point is used anywhere.

pub mod arith;
pub mod autgroups;
pub mod cones;
pub mod lattice;
pub mod pell;
pub mod periods;
pub mod report;
pub mod rrinv;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
