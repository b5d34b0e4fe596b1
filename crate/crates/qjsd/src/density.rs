//! Density matrices: Hermitian, positive semidefinite, unit-trace operators,
//! plus the entropy kernels and bipartite reductions built on their spectra.
//!
//! Bipartite index convention: subsystem A is the slow (most significant)
//! index, so a composite basis state |a,b> sits at row `a * dim_b + b`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecompose, hermitian_eigenvalues, ComplexMatrix, ComplexVector, Spectrum};
use crate::scalar::{lit, Real};

/// Which tensor factor of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A validated quantum state.
///
/// Construction enforces the three state axioms within the scalar's
/// tolerances: Hermiticity and unit trace within `R::build_tol()`, smallest
/// eigenvalue above `-R::eig_tol()`. Eigenvalues in `[-eig_tol, 0)` are
/// rounding noise and get clamped to zero wherever spectra are consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<R: Real> {
    mat: ComplexMatrix<R>,
}

impl<R: Real> DensityMatrix<R> {
    /// Validating constructor.
    pub fn new(mat: ComplexMatrix<R>) -> Result<Self> {
        let defect = mat.hermiticity_defect();
        if defect > R::build_tol() {
            return Err(Error::NonHermitian {
                max_dev: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr = mat.trace();
        let tr_dev = (tr - Complex::new(R::one(), R::zero())).norm_sqr().sqrt();
        if tr_dev > R::build_tol() {
            return Err(Error::TraceNotUnit {
                trace: tr.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        let eigs = hermitian_eigenvalues(&mat)?;
        let min = *eigs.last().expect("non-empty spectrum");
        if min < -R::eig_tol() {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { mat })
    }

    /// Constructor for matrices that satisfy the state axioms by
    /// construction (convex mixtures of states, unitary conjugations,
    /// partial traces, ...). Skips the eigenvalue check.
    pub(crate) fn trusted(mat: ComplexMatrix<R>) -> Self {
        debug_assert!(mat.hermiticity_defect() <= lit(1e-9));
        Self { mat }
    }

    /// Pure state |v><v| (v gets normalized).
    pub fn from_pure(v: &ComplexVector<R>) -> Self {
        let v = v.normalized();
        Self::trusted(v.outer(&v))
    }

    /// I/n.
    pub fn maximally_mixed(n: usize) -> Self {
        assert!(n >= 2, "maximally mixed state needs dimension >= 2");
        Self::trusted(ComplexMatrix::identity(n).scaled(R::one() / lit(n as f64)))
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn mat(&self) -> &ComplexMatrix<R> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<R> {
        self.mat
    }

    /// (self + other) / 2
    pub fn blend(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot blend states of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Self::trusted(
            self.mat.add(&other.mat).scaled(lit(0.5)),
        ))
    }

    /// Convex mixture sum_i w_i rho_i; weights must be a probability vector.
    pub fn mixture(parts: &[(R, &DensityMatrix<R>)]) -> Result<Self> {
        assert!(!parts.is_empty(), "mixture of nothing");
        let n = parts[0].1.dim();
        let mut acc = ComplexMatrix::zeros(n);
        let mut wsum = R::zero();
        for (w, rho) in parts {
            if rho.dim() != n {
                return Err(Error::DimensionMismatch(
                    "mixture parts have different dimensions".into(),
                ));
            }
            acc = acc.add(&rho.mat.scaled(*w));
            wsum += *w;
        }
        if (wsum - R::one()).abs() > R::build_tol() {
            return Err(Error::TraceNotUnit {
                trace: wsum.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::trusted(acc))
    }

    /// U rho U^dagger.
    pub fn conjugate_by(&self, u: &ComplexMatrix<R>) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary of dimension {} applied to state of dimension {}",
                u.dim(),
                self.dim()
            )));
        }
        Ok(Self::trusted(u.matmul(&self.mat).matmul(&u.adjoint())))
    }

    /// Full spectral decomposition (eigenvalues descending).
    pub fn spectrum(&self) -> Spectrum<R> {
        hermitian_eigendecompose(&self.mat).expect("density matrix is Hermitian by invariant")
    }

    /// Eigenvalues, descending, clamped at zero.
    pub fn eigenvalues(&self) -> Vec<R> {
        hermitian_eigenvalues(&self.mat)
            .expect("density matrix is Hermitian by invariant")
            .into_iter()
            .map(|x| x.max(R::zero()))
            .collect()
    }

    /// Von Neumann entropy -tr(rho log2 rho), in bits.
    pub fn von_neumann_entropy(&self) -> R {
        entropy_from_eigenvalues(&self.eigenvalues())
    }

    /// tr(rho^2). For Hermitian matrices this is the squared Frobenius norm,
    /// so no eigensolve is needed.
    pub fn purity(&self) -> R {
        let f = self.mat.frobenius_norm();
        f * f
    }

    /// Reduce a bipartite state (dims.0 x dims.1) to one subsystem.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let (da, db) = check_bipartite(self.dim(), dims)?;
        let mat = match keep {
            Subsystem::A => ComplexMatrix::from_fn(da, |a, a2| {
                let mut acc = Complex::new(R::zero(), R::zero());
                for b in 0..db {
                    acc = acc + self.mat.get(a * db + b, a2 * db + b);
                }
                acc
            }),
            Subsystem::B => ComplexMatrix::from_fn(db, |b, b2| {
                let mut acc = Complex::new(R::zero(), R::zero());
                for a in 0..da {
                    acc = acc + self.mat.get(a * db + b, a * db + b2);
                }
                acc
            }),
        };
        Ok(Self::trusted(mat))
    }

    /// Transpose one subsystem. The result is Hermitian and unit trace but in
    /// general not positive, hence a plain matrix.
    pub fn partial_transpose(
        &self,
        dims: (usize, usize),
        subsystem: Subsystem,
    ) -> Result<ComplexMatrix<R>> {
        let (da, db) = check_bipartite(self.dim(), dims)?;
        let n = self.dim();
        let out = ComplexMatrix::from_fn(n, |i, j| {
            let (a, b) = (i / db, i % db);
            let (a2, b2) = (j / db, j % db);
            match subsystem {
                // transpose on A: (a b, a' b') <- (a' b, a b')
                Subsystem::A => self.mat.get(a2 * db + b, a * db + b2),
                // transpose on B: (a b, a' b') <- (a b', a' b)
                Subsystem::B => self.mat.get(a * db + b2, a2 * db + b),
            }
        });
        debug_assert_eq!(da * db, n);
        Ok(out)
    }
}

fn check_bipartite(n: usize, dims: (usize, usize)) -> Result<(usize, usize)> {
    let (da, db) = dims;
    if da == 0 || db == 0 || da * db != n {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {n} is not {da} x {db}"
        )));
    }
    Ok((da, db))
}

/// -sum_i lambda_i log2 lambda_i with 0 log 0 = 0, applied at the eigenvalue
/// level (never via a matrix logarithm of a singular operator).
pub(crate) fn entropy_from_eigenvalues<R: Real>(eigs: &[R]) -> R {
    let mut h = R::zero();
    for &x in eigs {
        if x > R::zero() {
            h -= x * x.log2();
        }
    }
    h
}

/// Entropy of an arbitrary PSD operator (no unit-trace requirement); used by
/// the projector-additivity and tensor-projector checks where sub-blocks are
/// subnormalized.
pub fn psd_entropy<R: Real>(mat: &ComplexMatrix<R>) -> Result<R> {
    let eigs = hermitian_eigenvalues(mat)?;
    let clamped: Vec<R> = eigs.into_iter().map(|x| x.max(R::zero())).collect();
    Ok(entropy_from_eigenvalues(&clamped))
}
