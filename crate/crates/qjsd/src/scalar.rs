//! Scalar abstraction: the whole library is generic over the floating-point
//! type carrying matrix entries and divergence values.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar for matrix entries, eigenvalues and divergences.
///
/// Numerical tolerances are part of the scalar contract because they scale
/// with the precision of the type: the `f64` values below are the reference
/// ones used by every documented tolerance in this crate.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Construction-time tolerance for Hermiticity and unit-trace checks.
    fn build_tol() -> Self;

    /// Eigenvalue clamp threshold. Eigenvalues in `[-eig_tol, 0)` are treated
    /// as rounding noise and clamped to zero before entropy evaluation;
    /// anything below `-eig_tol` rejects construction. Doubles as the support
    /// cutoff for the relative entropy.
    fn eig_tol() -> Self;
}

impl Real for f64 {
    fn build_tol() -> f64 {
        1e-12
    }
    fn eig_tol() -> f64 {
        1e-10
    }
}

impl Real for f32 {
    fn build_tol() -> f32 {
        1e-5
    }
    fn eig_tol() -> f32 {
        1e-4
    }
}

/// Shorthand for lifting an `f64` literal into the generic scalar.
#[inline]
pub(crate) fn lit<R: Real>(v: f64) -> R {
    R::from_f64(v).expect("finite f64 literal converts to any Real")
}
