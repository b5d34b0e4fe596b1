//! Dense complex linear algebra at desk scale: square matrices, vectors, and
//! a Hermitian eigensolver (cyclic Jacobi with complex rotations).
//!
//! Matrices are row-major `Vec<Complex<R>>`; dimensions stay small (two-qubit
//! work is 4x4, random-state experiments go up to ~8), so everything is
//! straightforward O(N^2)/O(N^3) with no blocking.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<R: Real> {
    dim: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> ComplexMatrix<R> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(R::zero(), R::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex::new(R::one(), R::zero()));
        }
        m
    }

    /// Build from an entry function over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<R>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from row-major data; `data.len()` must be a perfect square.
    pub fn from_vec(dim: usize, data: Vec<Complex<R>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<R> {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<R>) {
        self.data[i * self.dim + j] = v;
    }

    pub fn data(&self) -> &[Complex<R>] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in sub");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn scaled(&self, factor: R) -> Self {
        let data = self.data.iter().map(|a| a.scale(factor)).collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    /// self += factor * other, in place.
    pub fn add_scaled_assign(&mut self, other: &Self, factor: R) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add_scaled_assign");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + b.scale(factor);
        }
    }

    pub fn fill_zero(&mut self) {
        let zero = Complex::new(R::zero(), R::zero());
        for a in self.data.iter_mut() {
            *a = zero;
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.re == R::zero() && aik.im == R::zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(|a| a.conj()).collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn trace(&self) -> Complex<R> {
        let mut t = Complex::new(R::zero(), R::zero());
        for i in 0..self.dim {
            t = t + self.get(i, i);
        }
        t
    }

    /// Kronecker product; subsystem `self` is the slow (most significant) index.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut out = Self::zeros(n);
        for ia in 0..na {
            for ja in 0..na {
                let a = self.get(ia, ja);
                for ib in 0..nb {
                    for jb in 0..nb {
                        out.set(ia * nb + ib, ja * nb + jb, a * other.get(ib, jb));
                    }
                }
            }
        }
        out
    }

    /// max_ij |a_ij - conj(a_ji)|
    pub fn hermiticity_defect(&self) -> R {
        let mut worst = R::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm_sqr().sqrt();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: R) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn frobenius_norm(&self) -> R {
        self.data
            .iter()
            .map(|a| a.norm_sqr())
            .fold(R::zero(), |acc, x| acc + x)
            .sqrt()
    }

    /// max_ij |a_ij - b_ij|
    pub fn max_abs_diff(&self, other: &Self) -> R {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        let mut worst = R::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            let d = (a - b).norm_sqr().sqrt();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &ComplexVector<R>) -> ComplexVector<R> {
        assert_eq!(self.dim, v.dim(), "dimension mismatch in mul_vec");
        let mut out = vec![Complex::new(R::zero(), R::zero()); self.dim];
        for i in 0..self.dim {
            let mut acc = Complex::new(R::zero(), R::zero());
            for j in 0..self.dim {
                acc = acc + self.get(i, j) * v.data[j];
            }
            out[i] = acc;
        }
        ComplexVector::new(out)
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector<R: Real> {
    data: Vec<Complex<R>>,
}

impl<R: Real> ComplexVector<R> {
    pub fn new(data: Vec<Complex<R>>) -> Self {
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![Complex::new(R::zero(), R::zero()); dim],
        }
    }

    /// Computational basis state |index> in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = Self::zeros(dim);
        v.data[index] = Complex::new(R::one(), R::zero());
        v
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self {
            data: entries
                .iter()
                .map(|&x| Complex::new(crate::scalar::lit(x), R::zero()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[Complex<R>] {
        &self.data
    }

    pub fn norm(&self) -> R {
        self.data
            .iter()
            .map(|c| c.norm_sqr())
            .fold(R::zero(), |acc, x| acc + x)
            .sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > R::zero(), "cannot normalize the zero vector");
        Self {
            data: self.data.iter().map(|c| c.unscale(n)).collect(),
        }
    }

    /// <self|other>
    pub fn inner(&self, other: &Self) -> Complex<R> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in inner");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(R::zero(), R::zero()), |acc, x| acc + x)
    }

    /// |self><other|
    pub fn outer(&self, other: &Self) -> ComplexMatrix<R> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in outer");
        ComplexMatrix::from_fn(self.dim(), |i, j| self.data[i] * other.data[j].conj())
    }

    /// |self> (x) |other>, slow index first.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { data }
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in descending
/// order, eigenvectors as the columns of a unitary.
#[derive(Debug, Clone)]
pub struct Spectrum<R: Real> {
    pub eigenvalues: Vec<R>,
    pub eigenvectors: ComplexMatrix<R>,
}

impl<R: Real> Spectrum<R> {
    /// V diag(lambda) V^dagger
    pub fn reconstruct(&self) -> ComplexMatrix<R> {
        self.map(|x| x)
    }

    /// Spectral function: V diag(f(lambda)) V^dagger.
    pub fn map(&self, f: impl Fn(R) -> R) -> ComplexMatrix<R> {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |i, j| {
            let mut acc = Complex::new(R::zero(), R::zero());
            for k in 0..n {
                acc = acc + v.get(i, k) * v.get(j, k).conj().scale(f(self.eigenvalues[k]));
            }
            acc
        })
    }
}

const MAX_JACOBI_SWEEPS: usize = 64;

/// Full eigendecomposition of a Hermitian matrix.
///
/// Input must be Hermitian within `R::eig_tol()`; it is symmetrized before
/// iterating so the tolerated asymmetry never leaks into the result.
pub fn hermitian_eigendecompose<R: Real>(a: &ComplexMatrix<R>) -> Result<Spectrum<R>> {
    let (values, vectors) = jacobi(a, true)?;
    Ok(Spectrum {
        eigenvalues: values,
        eigenvectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only (descending); skips eigenvector accumulation, which is
/// what the divergence evaluations in hot loops want.
pub fn hermitian_eigenvalues<R: Real>(a: &ComplexMatrix<R>) -> Result<Vec<R>> {
    let (values, _) = jacobi(a, false)?;
    Ok(values)
}

/// Cyclic Jacobi with complex Givens rotations.
fn jacobi<R: Real>(
    a: &ComplexMatrix<R>,
    with_vectors: bool,
) -> Result<(Vec<R>, Option<ComplexMatrix<R>>)> {
    let n = a.dim();
    let defect = a.hermiticity_defect();
    if defect > R::eig_tol() {
        return Err(Error::NonHermitian {
            max_dev: defect.to_f64().unwrap_or(f64::NAN),
        });
    }

    // Work on the exact Hermitian part.
    let half = crate::scalar::lit::<R>(0.5);
    let mut m = ComplexMatrix::from_fn(n, |i, j| (a.get(i, j) + a.get(j, i).conj()).scale(half));
    let mut v = with_vectors.then(|| ComplexMatrix::<R>::identity(n));

    let fro = m.frobenius_norm();
    // Converged when every off-diagonal entry is negligible at working precision.
    let stop = R::epsilon() * fro.max(R::min_positive_value());

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = R::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let abs_apq = apq.norm_sqr().sqrt();
                if abs_apq > off {
                    off = abs_apq;
                }
                if abs_apq <= stop {
                    continue;
                }

                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let tau = (app - aqq) / (abs_apq + abs_apq);
                let sign = if tau >= R::zero() { R::one() } else { -R::one() };
                let t = sign / (tau.abs() + (tau * tau + R::one()).sqrt());
                let c = R::one() / (t * t + R::one()).sqrt();
                let phase = apq.unscale(abs_apq);
                let s = phase.scale(t * c); // complex sine

                // A <- A V with V = [[c, -s], [conj(s), c]] on the (p,q) plane
                for i in 0..n {
                    let aip = m.get(i, p);
                    let aiq = m.get(i, q);
                    m.set(i, p, aip.scale(c) + aiq * s.conj());
                    m.set(i, q, aiq.scale(c) - aip * s);
                }
                // A <- V^dagger A
                for j in 0..n {
                    let apj = m.get(p, j);
                    let aqj = m.get(q, j);
                    m.set(p, j, apj.scale(c) + s * aqj);
                    m.set(q, j, aqj.scale(c) - s.conj() * apj);
                }
                // Rotated-away entries are zero by construction; pin them to
                // kill accumulated drift.
                m.set(p, q, Complex::new(R::zero(), R::zero()));
                m.set(q, p, Complex::new(R::zero(), R::zero()));
                let dp = m.get(p, p);
                let dq = m.get(q, q);
                m.set(p, p, Complex::new(dp.re, R::zero()));
                m.set(q, q, Complex::new(dq.re, R::zero()));

                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vip = vm.get(i, p);
                        let viq = vm.get(i, q);
                        vm.set(i, p, vip.scale(c) + viq * s.conj());
                        vm.set(i, q, viq.scale(c) - vip * s);
                    }
                }
            }
        }
        if off <= stop {
            break;
        }
    }

    // Sort descending, ties broken by original position for determinism.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(j, j)
            .re
            .partial_cmp(&m.get(i, i).re)
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let values: Vec<R> = order.iter().map(|&i| m.get(i, i).re).collect();
    let vectors = v.map(|vm| {
        ComplexMatrix::from_fn(n, |i, k| vm.get(i, order[k]))
    });
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;
    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix<f64> {
        let g = ComplexMatrix::from_fn(n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        g.add(&g.adjoint()).scaled(0.5)
    }

    #[test]
    fn eigendecompose_identity() {
        let spec = hermitian_eigendecompose(&ComplexMatrix::<f64>::identity(2)).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((spec.eigenvalues[1] - 1.0).abs() < 1e-14);
        let vtv = spec.eigenvectors.adjoint().matmul(&spec.eigenvectors);
        assert!(vtv.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-10);
    }

    #[test]
    fn eigendecompose_diagonal() {
        let m = ComplexMatrix::from_vec(2, vec![c(0.7, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)])
            .unwrap();
        let spec = hermitian_eigendecompose(&m).unwrap();
        assert!((spec.eigenvalues[0] - 0.7).abs() < 1e-14);
        assert!((spec.eigenvalues[1] - 0.3).abs() < 1e-14);
    }

    #[test]
    fn eigendecompose_pauli_x() {
        let m = ComplexMatrix::from_vec(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let spec = hermitian_eigendecompose(&m).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_vec(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(
            hermitian_eigendecompose(&m),
            Err(crate::error::Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn reconstruction_and_unitarity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[2usize, 3, 4, 6, 8, 13] {
            for _ in 0..20 {
                let m = random_hermitian(n, &mut rng);
                let spec = hermitian_eigendecompose(&m).unwrap();
                assert!(
                    spec.reconstruct().max_abs_diff(&m) < 1e-10,
                    "reconstruction failed at n={n}"
                );
                let vtv = spec.eigenvectors.adjoint().matmul(&spec.eigenvectors);
                assert!(
                    vtv.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10,
                    "eigenvectors not unitary at n={n}"
                );
                // descending order
                for w in spec.eigenvalues.windows(2) {
                    assert!(w[0] >= w[1]);
                }
                // values-only path agrees
                let vals = hermitian_eigenvalues(&m).unwrap();
                for (a, b) in vals.iter().zip(&spec.eigenvalues) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert!(i2.kron(&i2).max_abs_diff(&ComplexMatrix::identity(4)) == 0.0);
    }

    #[test]
    fn kron_of_diagonal_projectors() {
        let p0 = ComplexMatrix::from_vec(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        let p1 = ComplexMatrix::from_vec(2, vec![c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap();
        let k = p0.kron(&p1);
        // diag(0,1,0,0): A is the slow index
        assert_eq!(k.get(1, 1), c(1.0, 0.0));
        assert_eq!(k.trace(), c(1.0, 0.0));
    }

    #[test]
    fn kron_trace_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(2, &mut rng);
        let b = random_hermitian(3, &mut rng);
        let t = a.kron(&b).trace();
        let expect = a.trace() * b.trace();
        assert!((t - expect).norm() < 1e-12);
    }

    #[test]
    fn spectral_map_square_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_hermitian(4, &mut rng);
        let psd = g.matmul(&g.adjoint()); // PSD by construction
        let spec = hermitian_eigendecompose(&psd).unwrap();
        let root = spec.map(|x| x.max(0.0).sqrt());
        assert!(root.matmul(&root).max_abs_diff(&psd) < 1e-10);
    }
}
