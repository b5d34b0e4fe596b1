//! Two-qubit entanglement machinery: the Wootters concurrence, the PPT
//! separability certificate, and the separable-decomposition search space
//! the distance minimizer walks on.

mod anneal;

pub use anneal::{
    entanglement_bures, entanglement_js, minimize_distance, singlet_scale, AnnealingSchedule,
    EntanglementResult,
};

use num_complex::Complex;

use crate::density::{DensityMatrix, Subsystem};
use crate::divergences::channels::spin_flip_operator;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::scalar::{lit, Real};

/// Wootters concurrence of a two-qubit state:
/// max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
/// eigenvalues of rho (sy x sy) rho* (sy x sy).
pub fn concurrence<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let flip = spin_flip_operator::<R>();
    let rho_tilde = flip.matmul(&rho.mat().conj()).matmul(&flip);
    // eigenvalues of rho rho_tilde via the Hermitian form sqrt(rho) rho_tilde sqrt(rho)
    let root = rho.spectrum().map(|x| x.max(R::zero()).sqrt());
    let m = root.matmul(&rho_tilde).matmul(&root);
    let eigs = hermitian_eigenvalues(&m)?;
    let ls: Vec<R> = eigs.into_iter().map(|x| x.max(R::zero()).sqrt()).collect();
    Ok((ls[0] - ls[1] - ls[2] - ls[3]).max(R::zero()))
}

/// Peres-Horodecki check: positivity of the partial transpose, exact for
/// 2x2 systems. Returns the verdict and the minimum eigenvalue.
pub fn is_ppt<R: Real>(rho: &DensityMatrix<R>, dims: (usize, usize)) -> Result<(bool, R)> {
    let pt = rho.partial_transpose(dims, Subsystem::B)?;
    let eigs = hermitian_eigenvalues(&pt)?;
    let min = *eigs.last().expect("non-empty spectrum");
    Ok((min >= -R::eig_tol(), min))
}

/// One product term of a separable decomposition: a weight and the Bloch
/// vectors of the two local pure states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableTerm<R: Real> {
    pub weight: R,
    pub bloch_a: [R; 3],
    pub bloch_b: [R; 3],
}

/// A 16-term mixture of product pure states. Sixteen terms saturate the
/// Caratheodory bound for the 15-dimensional two-qubit state body, so every
/// separable state is representable and every representable state is
/// separable by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableDecomposition<R: Real> {
    terms: Vec<SeparableTerm<R>>,
}

/// Fixed number of product terms.
pub const DECOMPOSITION_TERMS: usize = 16;

impl<R: Real> SeparableDecomposition<R> {
    pub fn new(terms: Vec<SeparableTerm<R>>) -> Result<Self> {
        if terms.len() != DECOMPOSITION_TERMS {
            return Err(Error::DimensionMismatch(format!(
                "separable decomposition needs exactly {DECOMPOSITION_TERMS} terms, got {}",
                terms.len()
            )));
        }
        let mut sum = R::zero();
        for t in &terms {
            if t.weight < R::zero() {
                return Err(Error::ParameterOutOfRange {
                    name: "weight",
                    value: t.weight.to_f64().unwrap_or(f64::NAN),
                    min: 0.0,
                    max: 1.0,
                });
            }
            sum += t.weight;
            for b in [t.bloch_a, t.bloch_b] {
                let n2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
                if (n2 - R::one()).abs() > lit(1e-9) {
                    return Err(Error::Parse(format!(
                        "Bloch vector is not unit length (|v|^2 = {})",
                        n2.to_f64().unwrap_or(f64::NAN)
                    )));
                }
            }
        }
        if (sum - R::one()).abs() > R::build_tol() {
            return Err(Error::TraceNotUnit {
                trace: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { terms })
    }

    pub(crate) fn from_parts(terms: Vec<SeparableTerm<R>>) -> Self {
        debug_assert_eq!(terms.len(), DECOMPOSITION_TERMS);
        Self { terms }
    }

    pub fn terms(&self) -> &[SeparableTerm<R>] {
        &self.terms
    }

    /// The 16-term decomposition of I/4: the four computational product
    /// states, each repeated four times with weight 1/16.
    pub fn maximally_mixed_init() -> Self {
        let up = [R::zero(), R::zero(), R::one()];
        let down = [R::zero(), R::zero(), -R::one()];
        let w = R::one() / lit::<R>(16.0);
        let mut terms = Vec::with_capacity(DECOMPOSITION_TERMS);
        for k in 0..DECOMPOSITION_TERMS {
            let a = if (k % 4) / 2 == 0 { up } else { down };
            let b = if (k % 4) % 2 == 0 { up } else { down };
            terms.push(SeparableTerm {
                weight: w,
                bloch_a: a,
                bloch_b: b,
            });
        }
        Self { terms }
    }

    /// sum_i w_i |a_i><a_i| (x) |b_i><b_i|
    pub fn materialize(&self) -> DensityMatrix<R> {
        let mut acc = ComplexMatrix::zeros(4);
        for t in &self.terms {
            let prod = bloch_projector(t.bloch_a).kron(&bloch_projector(t.bloch_b));
            acc = acc.add(&prod.scaled(t.weight));
        }
        DensityMatrix::trusted(acc)
    }
}

/// Pure-qubit projector from a unit Bloch vector: (I + v . sigma) / 2.
pub(crate) fn bloch_projector<R: Real>(v: [R; 3]) -> ComplexMatrix<R> {
    let half = lit::<R>(0.5);
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 0, Complex::new((R::one() + v[2]) * half, R::zero()));
    m.set(0, 1, Complex::new(v[0] * half, -v[1] * half));
    m.set(1, 0, Complex::new(v[0] * half, v[1] * half));
    m.set(1, 1, Complex::new((R::one() - v[2]) * half, R::zero()));
    m
}
