//! chordlab: an exact-arithmetic workbench for rooted chord diagrams.
//!
//! The crate computes, enumerates, and machine-verifies the decompositions
//! and identities connecting chord-diagram classes:
//!
//! - [`series`] — truncated formal power series over exact rationals and
//!   the catalog of named generating functions (D, C, I, I0, I2, D≤2, A, Z);
//! - [`diagram`] — the chord-diagram data model: crossings, connectivity,
//!   dangling diagrams, indecomposable factorization, root removal;
//! - [`enumerate`] — exhaustive streaming generators, the ground truth for
//!   every counting claim;
//! - [`bijection`] — the executable bijections Φ and Θ with their inverses
//!   and the tree validator;
//! - [`asymptotics`] — the rational alien-derivative series of C and the
//!   connectedness report;
//! - [`oeis`] — offline b-file cross-checks.
//!
//! Every value is immutable after construction and every operation is a
//! pure function; nothing here uses floating point.

pub mod asymptotics;
pub mod bijection;
pub mod diagram;
pub mod enumerate;
pub mod oeis;
pub mod rational;
pub mod series;

pub use diagram::{ChordDiagram, DiagramError, IntersectionGraph};
pub use rational::Rat;
pub use series::{catalog_series, lagrange_power_coeff, PowerSeries, SeriesError, SeriesName};
