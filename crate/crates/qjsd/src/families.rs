//! Two-qubit state families, the Bell basis, linear entropy, and random
//! state/unitary sampling.
//!
//! Random sampling always consumes `f64` draws from the caller's generator
//! and converts to the working scalar, so the random stream (and therefore
//! any seeded experiment) is identical across scalar types.

use num_complex::Complex;
use rand::Rng;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::scalar::{lit, Real};

/// The four maximally entangled two-qubit states as unit vectors in the
/// computational basis (A slow index): phi+- = (|00> +- |11>)/sqrt(2),
/// psi+- = (|01> +- |10>)/sqrt(2).
#[derive(Debug, Clone)]
pub struct BellBasis<R: Real> {
    pub phi_plus: ComplexVector<R>,
    pub phi_minus: ComplexVector<R>,
    pub psi_plus: ComplexVector<R>,
    pub psi_minus: ComplexVector<R>,
}

impl<R: Real> BellBasis<R> {
    pub fn standard() -> Self {
        let s = lit::<R>(std::f64::consts::FRAC_1_SQRT_2);
        let z = R::zero();
        let v = |a: R, b: R, c: R, d: R| {
            ComplexVector::new(vec![
                Complex::new(a, R::zero()),
                Complex::new(b, R::zero()),
                Complex::new(c, R::zero()),
                Complex::new(d, R::zero()),
            ])
        };
        Self {
            phi_plus: v(s, z, z, s),
            phi_minus: v(s, z, z, -s),
            psi_plus: v(z, s, s, z),
            psi_minus: v(z, s, -s, z),
        }
    }

    pub fn vectors(&self) -> [&ComplexVector<R>; 4] {
        [&self.phi_plus, &self.phi_minus, &self.psi_plus, &self.psi_minus]
    }
}

/// The three parametric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Werner,
    Mem,
    Pdc,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Werner, Family::Mem, Family::Pdc];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Mem => "mem",
            Family::Pdc => "pdc",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "werner" => Ok(Family::Werner),
            "mem" => Ok(Family::Mem),
            "pdc" => Ok(Family::Pdc),
            other => Err(Error::UnknownFamily(other.into())),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with a parameter value in [0, 1].
#[derive(Debug, Clone, Copy)]
pub struct FamilyParameter<R: Real> {
    pub family: Family,
    pub value: R,
}

impl<R: Real> FamilyParameter<R> {
    pub fn new(family: Family, value: R) -> Result<Self> {
        check_unit_range(family_param_name(family), value)?;
        Ok(Self { family, value })
    }

    pub fn state(&self) -> Result<DensityMatrix<R>> {
        family_state(self.family, self.value)
    }
}

fn family_param_name(family: Family) -> &'static str {
    match family {
        Family::Werner => "x",
        Family::Mem => "gamma",
        Family::Pdc => "lambda",
    }
}

fn check_unit_range<R: Real>(name: &'static str, value: R) -> Result<()> {
    if !(value >= R::zero() && value <= R::one()) {
        return Err(Error::ParameterOutOfRange {
            name,
            value: value.to_f64().unwrap_or(f64::NAN),
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

pub fn family_state<R: Real>(family: Family, value: R) -> Result<DensityMatrix<R>> {
    match family {
        Family::Werner => werner_state(value),
        Family::Mem => mem_state(value),
        Family::Pdc => pdc_state(value),
    }
}

/// Werner state x |psi-><psi-| + (1-x) I/4. Separable iff x <= 1/3.
pub fn werner_state<R: Real>(x: R) -> Result<DensityMatrix<R>> {
    check_unit_range("x", x)?;
    let bell = BellBasis::standard();
    let singlet = DensityMatrix::from_pure(&bell.psi_minus);
    let mm = DensityMatrix::maximally_mixed(4);
    let mat = singlet.mat().scaled(x).add(&mm.mat().scaled(R::one() - x));
    Ok(DensityMatrix::trusted(mat))
}

/// Maximally entangled mixed state with concurrence gamma (Munro-James
/// parameterization): (g + gamma/2)|phi+><phi+| + (g - gamma/2)|phi-><phi-|
/// + (1 - 2g)|01><01|, with g = gamma/2 for gamma >= 2/3 and g = 1/3 below.
///
/// The |01><01| term carries a psi+/psi- coherence of (1-2g)/2, so this
/// family is not Bell-diagonal except at gamma = 1.
pub fn mem_state<R: Real>(gamma: R) -> Result<DensityMatrix<R>> {
    check_unit_range("gamma", gamma)?;
    let half = lit::<R>(0.5);
    let third = R::one() / lit::<R>(3.0);
    let g = if gamma >= lit::<R>(2.0) * third {
        gamma * half
    } else {
        third
    };
    let bell = BellBasis::standard();
    let phi_p = DensityMatrix::from_pure(&bell.phi_plus);
    let phi_m = DensityMatrix::from_pure(&bell.phi_minus);
    let e01 = DensityMatrix::from_pure(&ComplexVector::basis(4, 1));
    let mat = phi_p
        .mat()
        .scaled(g + gamma * half)
        .add(&phi_m.mat().scaled(g - gamma * half))
        .add(&e01.mat().scaled(R::one() - g - g));
    Ok(DensityMatrix::trusted(mat))
}

/// Down-conversion noise model: lambda |phi+><phi+| +
/// (1-lambda)(|01><01| + |10><10|)/2. The noise term equals
/// (|psi+><psi+| + |psi-><psi-|)/2, so the family is Bell-diagonal.
pub fn pdc_state<R: Real>(lam: R) -> Result<DensityMatrix<R>> {
    check_unit_range("lambda", lam)?;
    let half = lit::<R>(0.5);
    let bell = BellBasis::standard();
    let phi_p = DensityMatrix::from_pure(&bell.phi_plus);
    let e01 = DensityMatrix::from_pure(&ComplexVector::basis(4, 1));
    let e10 = DensityMatrix::from_pure(&ComplexVector::basis(4, 2));
    let noise = e01.mat().add(e10.mat()).scaled(half);
    let mat = phi_p.mat().scaled(lam).add(&noise.scaled(R::one() - lam));
    Ok(DensityMatrix::trusted(mat))
}

/// Normalized impurity (N/(N-1)) (1 - tr rho^2), in [0, 1].
pub fn linear_entropy<R: Real>(rho: &DensityMatrix<R>) -> R {
    let n = lit::<R>(rho.dim() as f64);
    n / (n - R::one()) * (R::one() - rho.purity())
}

/// I/n, re-exported here next to the families it baselines.
pub fn maximally_mixed<R: Real>(n: usize) -> DensityMatrix<R> {
    DensityMatrix::maximally_mixed(n)
}

/// Hilbert-Schmidt-measure random state: G G^dagger / tr(G G^dagger) with G
/// an n x rank standard complex Gaussian matrix. `rank = n` gives the
/// full-rank HS ensemble; `rank = 1` gives Haar-random pure states.
pub fn random_density<R: Real>(
    n: usize,
    rank: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix<R>> {
    if rank == 0 || rank > n {
        return Err(Error::BadRank { rank, dim: n });
    }
    // G row-major, re before im, fixed order for reproducibility.
    let mut g = vec![Complex::new(R::zero(), R::zero()); n * rank];
    for entry in g.iter_mut() {
        let re = standard_normal(rng);
        let im = standard_normal(rng);
        *entry = Complex::new(lit(re), lit(im));
    }
    let mut mat = ComplexMatrix::<R>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(R::zero(), R::zero());
            for k in 0..rank {
                acc = acc + g[i * rank + k] * g[j * rank + k].conj();
            }
            mat.set(i, j, acc);
        }
    }
    let tr = mat.trace().re;
    Ok(DensityMatrix::trusted(mat.scaled(R::one() / tr)))
}

/// Haar-distributed random unitary: QR of a complex Ginibre matrix via
/// modified Gram-Schmidt (which fixes the R diagonal positive, making the
/// factorization unique and the Q factor Haar).
pub fn random_unitary<R: Real>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<R> {
    let mut cols: Vec<ComplexVector<R>> = (0..n)
        .map(|_| {
            ComplexVector::new(
                (0..n)
                    .map(|_| Complex::new(lit(standard_normal(rng)), lit(standard_normal(rng))))
                    .collect(),
            )
        })
        .collect();
    for j in 0..n {
        for i in 0..j {
            let proj = cols[i].inner(&cols[j]);
            let data: Vec<Complex<R>> = cols[j]
                .data()
                .iter()
                .zip(cols[i].data())
                .map(|(x, e)| x - e * proj)
                .collect();
            cols[j] = ComplexVector::new(data);
        }
        cols[j] = cols[j].normalized();
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j].data()[i])
}

/// Haar-random pure state vector.
pub fn random_pure<R: Real>(n: usize, rng: &mut impl Rng) -> ComplexVector<R> {
    let v = ComplexVector::new(
        (0..n)
            .map(|_| Complex::new(lit(standard_normal(rng)), lit(standard_normal(rng))))
            .collect(),
    );
    v.normalized()
}

/// Bell-basis matrix elements of a two-qubit state: the four diagonal
/// weights and the largest off-diagonal magnitude.
pub fn bell_weights<R: Real>(rho: &DensityMatrix<R>) -> Result<([R; 4], R)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "Bell weights need a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let bell = BellBasis::standard();
    let vs = bell.vectors();
    let mut diag = [R::zero(); 4];
    let mut max_off = R::zero();
    for i in 0..4 {
        for j in 0..4 {
            let elem = vs[i].inner(&rho.mat().mul_vec(vs[j]));
            let mag = elem.norm_sqr().sqrt();
            if i == j {
                diag[i] = elem.re;
            } else if mag > max_off {
                max_off = mag;
            }
        }
    }
    Ok((diag, max_off))
}

/// Marsaglia polar method over the caller's generator; always draws f64.
fn standard_normal(rng: &mut impl Rng) -> f64 {
    loop {
        let u = 2.0 * rng.gen::<f64>() - 1.0;
        let v = 2.0 * rng.gen::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Subsystem;
    use crate::linalg::hermitian_eigenvalues;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bell_basis_is_orthonormal() {
        let bell = BellBasis::<f64>::standard();
        let vs = bell.vectors();
        for i in 0..4 {
            for j in 0..4 {
                let ip = vs[i].inner(vs[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip.re - expect).abs() < 1e-12 && ip.im.abs() < 1e-12);
            }
        }
        // psi- is exactly (|01> - |10>)/sqrt(2)
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(bell.psi_minus.data()[1].re, s);
        assert_eq!(bell.psi_minus.data()[2].re, -s);
    }

    #[test]
    fn werner_endpoints() {
        let w0 = werner_state(0.0f64).unwrap();
        assert!(w0.mat().max_abs_diff(maximally_mixed(4).mat()) < 1e-15);
        let w1 = werner_state(1.0f64).unwrap();
        let singlet = DensityMatrix::from_pure(&BellBasis::standard().psi_minus);
        assert!(w1.mat().max_abs_diff(singlet.mat()) < 1e-15);
        assert!(werner_state(1.5f64).is_err());
        assert!(werner_state(-0.1f64).is_err());
    }

    #[test]
    fn werner_ppt_boundary_at_one_third() {
        let w = werner_state(1.0f64 / 3.0).unwrap();
        let pt = w.partial_transpose((2, 2), Subsystem::B).unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        assert!(eigs.last().unwrap().abs() < 1e-12);
    }

    #[test]
    fn werner_purity_at_half() {
        let w = werner_state(0.5f64).unwrap();
        assert!((w.purity() - 0.4375).abs() < 1e-12);
        assert!((linear_entropy(&w) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn linear_entropy_range() {
        let pure = DensityMatrix::from_pure(&BellBasis::<f64>::standard().phi_plus);
        assert!(linear_entropy(&pure).abs() < 1e-12);
        assert!((linear_entropy(&maximally_mixed::<f64>(4)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mem_endpoints() {
        // gamma = 1 is the pure Bell state phi+
        let m1 = mem_state(1.0f64).unwrap();
        let phi_p = DensityMatrix::from_pure(&BellBasis::standard().phi_plus);
        assert!(m1.mat().max_abs_diff(phi_p.mat()) < 1e-15);
        // gamma = 0 is PPT (separable)
        let m0 = mem_state(0.0f64).unwrap();
        let pt = m0.partial_transpose((2, 2), Subsystem::B).unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        assert!(*eigs.last().unwrap() >= -1e-12);
    }

    #[test]
    fn pdc_is_bell_diagonal_and_mem_is_not() {
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let (_, off_w) = bell_weights(&werner_state(t).unwrap()).unwrap();
            let (_, off_p) = bell_weights(&pdc_state(t).unwrap()).unwrap();
            assert!(off_w <= 1e-12, "werner off-diagonal {off_w} at {t}");
            assert!(off_p <= 1e-12, "pdc off-diagonal {off_p} at {t}");
            // MEM carries a psi+/psi- coherence of (1 - 2g)/2; document the
            // known deviation instead of pretending it is Bell-diagonal.
            let g: f64 = if t >= 2.0 / 3.0 { t / 2.0 } else { 1.0 / 3.0 };
            let (_, off_m) = bell_weights(&mem_state(t).unwrap()).unwrap();
            assert!(
                (off_m - (1.0 - 2.0 * g) / 2.0).abs() < 1e-12,
                "unexpected MEM off-diagonal {off_m} at {t}"
            );
        }
    }

    #[test]
    fn pdc_bell_weights() {
        let (w, _) = bell_weights(&pdc_state(0.3f64).unwrap()).unwrap();
        // (phi+, phi-, psi+, psi-) = (lam, 0, (1-lam)/2, (1-lam)/2)
        assert!((w[0] - 0.3).abs() < 1e-12);
        assert!(w[1].abs() < 1e-12);
        assert!((w[2] - 0.35).abs() < 1e-12);
        assert!((w[3] - 0.35).abs() < 1e-12);
    }

    #[test]
    fn random_density_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &n in &[2usize, 3, 4, 6] {
            for _ in 0..50 {
                let rho = random_density::<f64>(n, n, &mut rng).unwrap();
                // constructive guarantees, re-checked through the validator
                assert!(DensityMatrix::new(rho.mat().clone()).is_ok());
            }
        }
    }

    #[test]
    fn random_density_rank_one_is_pure() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let rho = random_density::<f64>(4, 1, &mut rng).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_density_rejects_bad_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            random_density::<f64>(3, 4, &mut rng),
            Err(Error::BadRank { .. })
        ));
        assert!(matches!(
            random_density::<f64>(3, 0, &mut rng),
            Err(Error::BadRank { .. })
        ));
    }

    #[test]
    fn random_density_is_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let ra = random_density::<f64>(2, 2, &mut a).unwrap();
        let rb = random_density::<f64>(2, 2, &mut b).unwrap();
        assert_eq!(ra.mat().data(), rb.mat().data());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for &n in &[2usize, 4, 6] {
            let u = random_unitary::<f64>(n, &mut rng);
            let utu = u.adjoint().matmul(&u);
            assert!(utu.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn entropy_invariant_under_random_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let rho = random_density::<f64>(4, 4, &mut rng).unwrap();
            let u = random_unitary::<f64>(4, &mut rng);
            let rotated = rho.conjugate_by(&u).unwrap();
            assert!((rotated.von_neumann_entropy() - rho.von_neumann_entropy()).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_trace_round_trip_over_tensor() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let a = random_density::<f64>(2, 2, &mut rng).unwrap();
            let b = random_density::<f64>(3, 3, &mut rng).unwrap();
            let joint = DensityMatrix::new(a.mat().kron(b.mat())).unwrap();
            let back = joint.partial_trace((2, 3), Subsystem::A).unwrap();
            assert!(back.mat().max_abs_diff(a.mat()) < 1e-12);
        }
    }
}
