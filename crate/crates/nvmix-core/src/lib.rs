//! Theory engine for frequency-mixing magnetic resonance of spin-1 triplet
//! defects near their ground-state level anti-crossing.
//!
//! The crate is organized bottom-up:
//!
//! - [`mat`]: small dense complex matrices and a tagged 3x3 triplet type,
//! - [`bessel`]: first-kind Bessel functions via power series and backward
//!   recurrence,
//! - [`eigen`]: Jacobi eigenvalues of small Hermitian matrices,
//! - [`roots`]: bracketing 1-D root finder,
//! - [`spin`]: the triplet Hamiltonian and its level curves versus field,
//! - [`frame`]: half-angle rotation that diagonalizes the static part near
//!   the anti-crossing, and the drive terms it induces,
//! - [`rwa`]: sideband expansion of the modulated drive and the steady-state
//!   polarization coefficient of the dominant term,
//! - [`resonance`]: field positions solving the mixing resonance conditions,
//! - [`lindblad`]: brute-force time-domain master-equation solver used as an
//!   independent check on the rotating-wave results.
//!
//! All frequencies are angular (rad/s), all fields are expressed through the
//! gyromagnetic ratio as angular frequencies, and magnetic fields at the API
//! boundary are in tesla.
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the default
//! `std` feature for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bessel;
pub mod eigen;
pub mod error;
pub mod frame;
pub mod lindblad;
pub mod mat;
pub mod resonance;
pub mod roots;
pub mod rwa;
pub mod spin;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
