//! Quantum Jensen-Shannon divergence toolkit.
//!
//! Building blocks for measuring distances between quantum states and for
//! quantifying two-qubit entanglement geometrically:
//!
//! - dense complex linear algebra with a Hermitian eigensolver ([`linalg`]),
//! - validated density matrices and entropy kernels ([`density`]),
//! - the Bell basis, Werner/MEM/PDC families and random-state sampling
//!   ([`families`]),
//! - relative entropy, QJSD, the sqrt-JS metric and the Bures distance,
//!   with Monte Carlo property harnesses ([`divergences`]),
//! - the Wootters concurrence, the PPT certificate and a simulated-annealing
//!   minimizer of the distance to the separable set ([`entanglement`]),
//! - a plain-text state file format ([`io`]).
//!
//! The core is generic over the scalar type through [`scalar::Real`]
//! (`f64` and `f32` are provided); the aliases below fix the `f64`
//! instantiation that the command-line tools and the documented numerical
//! tolerances refer to.
//!
//! All entropies and divergences are in bits. For bipartite systems,
//! subsystem A is the slow (most significant) index.

pub mod density;
pub mod divergences;
pub mod entanglement;
pub mod error;
pub mod families;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod seeding;

pub use density::{DensityMatrix, Subsystem};
pub use divergences::{
    bures_distance, fidelity, js_distance, qjsd, relative_entropy, DistanceMetric,
    DivergenceValue,
};
pub use entanglement::{
    concurrence, entanglement_bures, entanglement_js, is_ppt, minimize_distance,
    AnnealingSchedule, EntanglementResult, SeparableDecomposition, SeparableTerm,
};
pub use error::{Error, Result};
pub use families::{
    linear_entropy, maximally_mixed, mem_state, pdc_state, random_density, random_unitary,
    werner_state, BellBasis, Family, FamilyParameter,
};
pub use linalg::{hermitian_eigendecompose, hermitian_eigenvalues, Spectrum};
pub use scalar::Real;

/// Complex scalar of the default `f64` instantiation.
pub type C64 = num_complex::Complex<f64>;
/// Square complex matrix over `f64`.
pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
/// Complex vector over `f64`.
pub type ComplexVector64 = linalg::ComplexVector<f64>;
/// Density matrix over `f64`.
pub type DensityMatrix64 = density::DensityMatrix<f64>;
/// Annealing schedule over `f64`.
pub type AnnealingSchedule64 = entanglement::AnnealingSchedule<f64>;
