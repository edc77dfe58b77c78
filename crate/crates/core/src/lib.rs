//! Exact spectral physics of the equilateral-triangle billiard.
//!
//! The equilateral triangle (vertices at `(0,0)`, `(±a/2, √3a/2)`) is one of
//! the few two-dimensional billiards with closed-form eigenstates. Its
//! energies are integer multiples of
//! `E₀ = (ħ²/2μa²)(4π/3)²`, `ε(m,n) = m² + n² − mn`, which makes every wave
//! packet revive exactly. The 30-60-90 "half" triangle obtained by folding
//! along the `x = 0` bisector keeps only the odd-parity states.
//!
//! Modules:
//!
//! - [`spectrum`]: quantum numbers, levels, ordered enumeration, Weyl count.
//! - [`eigenfunctions`]: closed-form wavefunctions, quadrature, symmetry checks.
//! - [`orbits`]: classical closed-orbit families from the triangular tiling.
//! - [`length_spectrum`]: `ρ_N(L) = Σ e^{i k_n L}`, peak detection, matching.
//! - [`wavepacket`]: Gaussian packets, closed-form expansion, autocorrelation,
//!   timescales, revivals, density snapshots.
//! - [`transforms`]: integer quantum-number maps `T_(p,q)` and their algebra.
//! - [`presets`]: parameter sets for the published figures.

pub mod config;
pub mod eigenfunctions;
pub mod error;
pub mod length_spectrum;
pub mod numeric;
pub mod orbits;
pub mod presets;
pub mod spectrum;
pub mod transforms;
pub mod wavepacket;

pub use config::{BilliardConfig, Variant};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spectrum::{EnergyLevel, QuantumNumbers, Symmetry};
