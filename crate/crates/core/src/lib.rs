//! Energy-spectrum design and local potential reconstruction.
//!
//! A quantum system here is fixed by a designed energy map `E(z²)` and a
//! square-integrable orthonormal basis. The expansion coefficients of the
//! wavefunction are the orthonormal continuous dual Hahn polynomials
//! `S_n^μ(z²; a, a)`, generated by their three-term recursion. From that
//! recursion the crate produces:
//!
//! * the bound-state spectrum, weights and scattering phase shift
//!   ([`system`]),
//! * the Hamiltonian matrix `H = E(R)`, the kinetic matrix and the
//!   potential matrix `V = H - T` ([`hamiltonian`]),
//! * the potential function `V(x)` sampled locally, either from one column
//!   of the potential matrix or at the Gauss nodes of the basis followed by
//!   a continued-fraction fit ([`reconstruct`]),
//! * bound and continuum wavefunction components ([`wavefunction`]).
//!
//! The crate is `no_std` and only needs `alloc`. Everything is pure and
//! deterministic; all types are `Send + Sync`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod hamiltonian;
pub mod integrate;
pub mod linalg;
pub mod ortho_poly;
pub mod params;
pub mod reconstruct;
pub mod special;
pub mod system;
pub mod wavefunction;

pub use error::{Error, Result};
pub use hamiltonian::{assemble, OperatorMatrices};
pub use linalg::{EigenDecomposition, Matrix, TridiagonalSymmetric};
pub use ortho_poly::{BasisFamily, BasisSet, RecursionCoefficients};
pub use params::PhysicalParams;
pub use reconstruct::{Grid, Method, PotentialTable, RationalFit};
pub use system::{QuantumSystem, SpectralMap, SpectrumResult, SystemKind};
pub use wavefunction::{bound_component, continuum_component, divergence_diagnostic, WavefunctionSample};
