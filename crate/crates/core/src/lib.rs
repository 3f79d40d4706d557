//! Power-law duality toolkit.
//!
//! Radial problems with potentials `λ_a r^a` and `λ_b ρ^b`, `(a+2)(b+2) = 4`,
//! are related by `r = C ρ^η`. This crate implements the exponent algebra,
//! the classical orbit maps, semiclassical and supersymmetric quantization, the
//! quantum Coulomb/Hooke/confinement/Morse constructions, and an independent
//! shooting oracle to check them against each other.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod duality;
pub mod error;
pub mod oracle;
pub mod orbits;
pub mod quantum;
pub mod roots;
pub mod semiclassical;
pub mod specfun;
pub mod susy;
pub mod verify;

pub use duality::{DualityMap, MapClass, PairClass, PowerPotential, PowerTerm, RadialSystem};
pub use error::{DualError, Result};
pub use oracle::{quadrature, RadialGrid, Spacing};
