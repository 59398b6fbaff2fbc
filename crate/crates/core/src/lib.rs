//! Gaussian fermionic PEPS engine.
//!
//! The building blocks live in three layers:
//!
//! * low-level Gaussian-state algebra: antisymmetric (Majorana) covariance
//!   matrices, Pfaffians, the Gaussian channel `A + B (D - G_in)^-1 B^T`, and
//!   the pair-vacuum determinant identity `det(A D B C^T + 1)`;
//! * the translation- and rotation-invariant fiducial-state parametrization
//!   `(t, y, z)` with its momentum-space covariance blocks, closed-form BCS
//!   amplitudes and parent-Hamiltonian coefficients;
//! * phase-diagram analysis: gapless-locus classification and lattice Chern
//!   numbers of the BdG vector field.
//!
//! Everything is a pure function of its inputs; values are freely shareable
//! across threads.

pub mod bcs;
pub mod channel;
pub mod chern;
pub mod correlators;
pub mod det_identity;
pub mod error;
pub mod fiducial;
pub mod linalg;
pub mod momentum;
pub mod parent;
pub mod pfaffian;
pub mod phase;
pub mod tmatrix;

pub use error::CoreError;

pub type C64 = num_complex::Complex64;

/// Shorthand used throughout: `c(re, im)`.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
