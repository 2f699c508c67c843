//! Numerical toolkit for the entanglement of uniformly accelerated boson,
//! fermion, and anyon field modes.
//!
//! The library constructs the joint Alice/Rindler-region-I density matrices
//! as functions of the thermal factor `u = exp(-2 pi omega / a)`, interpolates
//! between the bosonic and fermionic states with a statistical parameter
//! `alpha`, and evaluates entanglement entropy, (logarithmic) negativity, and
//! the relative entropy of coherence on the results. A standalone solver for
//! the fractional-exclusion occupation distribution rounds out the toolkit.

pub mod anyonstat;
pub mod error;
pub mod matrixcore;
pub mod measures;
pub mod unruh;

pub use error::CoreError;
