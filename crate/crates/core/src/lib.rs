//! Exact state-vector simulation of three-party single-qutrit operation sharing.
//!
//! The crate is organised bottom-up:
//!
//! * [`qutrit`] – labelled qutrit registers, dense operators and projective
//!   measurement that returns every outcome instead of sampling one.
//! * [`channels`] – the named states, gates, corrections and measurement bases
//!   the two sharing schemes are built from.
//! * [`classify`] – the restricted operation families, commutation tests and
//!   the commutant-dimension oracle.
//! * [`protocol`] – both schemes as Alice/Bob/Charlie state machines with
//!   explicit classical trit messages, expanded into full branch trees.
//! * [`random`] – seeded samplers for states, unitaries and basis parameters.
//!
//! Amplitude indices are big-endian in the register's label order: the first
//! label is the most significant trit.

pub mod channels;
pub mod classify;
mod error;
pub mod protocol;
pub mod qutrit;
pub mod random;

pub use error::{QosError, Result};
pub use num_complex::Complex64 as C64;

/// Entrywise tolerance used for every unitarity, orthonormality and
/// commutation check in the crate.
pub const TOL: f64 = 1e-9;

/// Outcomes whose probability falls below this are reported as null branches.
pub const NULL_PROBABILITY: f64 = 1e-12;
