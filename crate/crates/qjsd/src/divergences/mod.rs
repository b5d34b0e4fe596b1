//! State-space divergences and distances: relative entropy (with the support
//! rule), the quantum Jensen-Shannon divergence, the sqrt-JS metric, and the
//! Bures distance, plus Monte Carlo harnesses for their structural
//! properties.
//!
//! All entropic quantities are in bits (base-2 logarithms throughout).

pub(crate) mod channels;
mod verify;

pub use channels::KrausChannel;
pub use verify::{
    triangle_check, verify_property, PropertyReport, PropertyTag, TriangleReport,
};

use crate::density::{entropy_from_eigenvalues, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::scalar::{lit, Real};

/// Value of a divergence evaluation. Only the relative entropy can be
/// infinite; the QJSD and the Bures distance are always finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceValue<R: Real> {
    pub value: R,
    pub finite: bool,
}

impl<R: Real> DivergenceValue<R> {
    pub fn finite(value: R) -> Self {
        Self { value, finite: true }
    }

    pub fn infinite() -> Self {
        Self {
            value: R::infinity(),
            finite: false,
        }
    }
}

fn check_same_dim<R: Real>(rho: &DensityMatrix<R>, sigma: &DensityMatrix<R>) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

/// Relative entropy tr[rho (log2 rho - log2 sigma)].
///
/// Returns the infinite sentinel when the support of sigma does not contain
/// the support of rho: any rho-eigenvector with eigenvalue above
/// `R::eig_tol()` whose weight outside sigma's support exceeds the same
/// tolerance triggers it.
pub fn relative_entropy<R: Real>(
    rho: &DensityMatrix<R>,
    sigma: &DensityMatrix<R>,
) -> Result<DivergenceValue<R>> {
    check_same_dim(rho, sigma)?;
    let tol = R::eig_tol();
    let n = rho.dim();
    let spec_r = rho.spectrum();
    let spec_s = sigma.spectrum();

    // overlap[i][j] = |<v_i|w_j>|^2
    let overlap = spec_r.eigenvectors.adjoint().matmul(&spec_s.eigenvectors);

    let mut s = R::zero();
    for i in 0..n {
        let li = spec_r.eigenvalues[i].max(R::zero());
        if li <= tol {
            continue;
        }
        s += li * li.log2();
        let mut outside = R::zero();
        for j in 0..n {
            let w = overlap.get(i, j).norm_sqr();
            let mu = spec_s.eigenvalues[j];
            if mu > tol {
                s -= li * w * mu.log2();
            } else {
                outside += w;
            }
        }
        if outside > tol {
            return Ok(DivergenceValue::infinite());
        }
    }
    Ok(DivergenceValue::finite(s))
}

/// Quantum Jensen-Shannon divergence, always computed through the entropy
/// form H((rho+sigma)/2) - H(rho)/2 - H(sigma)/2. Always finite, in [0, 1].
pub fn qjsd<R: Real>(rho: &DensityMatrix<R>, sigma: &DensityMatrix<R>) -> Result<DivergenceValue<R>> {
    check_same_dim(rho, sigma)?;
    let mid = rho.blend(sigma)?;
    let half = lit::<R>(0.5);
    // grouped so the expression is manifestly symmetric down to the bit level
    let v = mid.von_neumann_entropy()
        - half * (rho.von_neumann_entropy() + sigma.von_neumann_entropy());
    Ok(DivergenceValue::finite(v))
}

/// d_JS = sqrt(JS); satisfies the triangle inequality. Range [0, 1].
pub fn js_distance<R: Real>(rho: &DensityMatrix<R>, sigma: &DensityMatrix<R>) -> Result<R> {
    Ok(qjsd(rho, sigma)?.value.max(R::zero()).sqrt())
}

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
pub fn fidelity<R: Real>(rho: &DensityMatrix<R>, sigma: &DensityMatrix<R>) -> Result<R> {
    check_same_dim(rho, sigma)?;
    let root = rho.spectrum().map(|x| x.max(R::zero()).sqrt());
    Ok(fidelity_with_root(&root, sigma.mat()))
}

/// sqrt(F) given a precomputed sqrt(rho); shared with the hot path.
fn sqrt_fidelity_with_root<R: Real>(root_rho: &ComplexMatrix<R>, sigma: &ComplexMatrix<R>) -> R {
    let m = root_rho.matmul(sigma).matmul(root_rho);
    let eigs = hermitian_eigenvalues(&m).expect("product is Hermitian");
    let mut acc = R::zero();
    for e in eigs {
        acc += e.max(R::zero()).sqrt();
    }
    acc
}

fn fidelity_with_root<R: Real>(root_rho: &ComplexMatrix<R>, sigma: &ComplexMatrix<R>) -> R {
    let s = sqrt_fidelity_with_root(root_rho, sigma);
    s * s
}

/// Bures distance sqrt(2 - 2 sqrt(F)).
pub fn bures_distance<R: Real>(rho: &DensityMatrix<R>, sigma: &DensityMatrix<R>) -> Result<R> {
    check_same_dim(rho, sigma)?;
    let root = rho.spectrum().map(|x| x.max(R::zero()).sqrt());
    let two = lit::<R>(2.0);
    let sf = sqrt_fidelity_with_root(&root, sigma.mat());
    Ok((two - two * sf).max(R::zero()).sqrt())
}

/// Which distance a minimization or measurement runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMetric {
    Js,
    Bures,
}

impl DistanceMetric {
    pub fn name(&self) -> &'static str {
        match self {
            DistanceMetric::Js => "js",
            DistanceMetric::Bures => "bures",
        }
    }
}

impl std::str::FromStr for DistanceMetric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "js" => Ok(DistanceMetric::Js),
            "bures" => Ok(DistanceMetric::Bures),
            other => Err(Error::Parse(format!(
                "unknown metric {other:?} (expected js or bures)"
            ))),
        }
    }
}

/// Distance from a fixed target state, with the target-side work
/// (its entropy, its matrix square root) hoisted out of the evaluation loop.
///
/// For `Js` the value is the JS divergence in bits; for `Bures` it is the
/// Bures distance. Candidates are passed as raw matrices that must already
/// satisfy the state axioms.
pub struct PreparedDistance<R: Real> {
    metric: DistanceMetric,
    dim: usize,
    target: ComplexMatrix<R>,
    target_entropy_half: R,
    target_root: Option<ComplexMatrix<R>>,
}

impl<R: Real> PreparedDistance<R> {
    pub fn new(metric: DistanceMetric, target: &DensityMatrix<R>) -> Self {
        let target_root = match metric {
            DistanceMetric::Js => None,
            DistanceMetric::Bures => Some(target.spectrum().map(|x| x.max(R::zero()).sqrt())),
        };
        Self {
            metric,
            dim: target.dim(),
            target: target.mat().clone(),
            target_entropy_half: lit::<R>(0.5) * target.von_neumann_entropy(),
            target_root,
        }
    }

    pub fn metric(&self) -> DistanceMetric {
        self.metric
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Distance from the target to `candidate`.
    pub fn eval(&self, candidate: &ComplexMatrix<R>) -> R {
        debug_assert_eq!(candidate.dim(), self.dim);
        match self.metric {
            DistanceMetric::Js => {
                let half = lit::<R>(0.5);
                let mid = self.target.add(candidate).scaled(half);
                let h_mid = entropy_of_state_matrix(&mid);
                let h_cand = entropy_of_state_matrix(candidate);
                h_mid - self.target_entropy_half - half * h_cand
            }
            DistanceMetric::Bures => {
                let root = self.target_root.as_ref().expect("prepared for Bures");
                let two = lit::<R>(2.0);
                let sf = sqrt_fidelity_with_root(root, candidate);
                (two - two * sf).max(R::zero()).sqrt()
            }
        }
    }
}

fn entropy_of_state_matrix<R: Real>(mat: &ComplexMatrix<R>) -> R {
    let eigs = hermitian_eigenvalues(mat).expect("state matrix is Hermitian");
    let clamped: Vec<R> = eigs.into_iter().map(|x| x.max(R::zero())).collect();
    entropy_from_eigenvalues(&clamped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityMatrix;
    use crate::families::{random_density, BellBasis};
    use crate::linalg::{ComplexMatrix, ComplexVector};
    use num_complex::Complex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag(entries: &[f64]) -> DensityMatrix<f64> {
        let n = entries.len();
        DensityMatrix::new(ComplexMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex::new(entries[i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        }))
        .unwrap()
    }

    fn pure_qubit(theta: f64) -> DensityMatrix<f64> {
        let v = ComplexVector::new(vec![
            Complex::new(theta.cos(), 0.0),
            Complex::new(theta.sin(), 0.0),
        ]);
        DensityMatrix::from_pure(&v)
    }

    #[test]
    fn relative_entropy_of_state_with_itself_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density::<f64>(4, 4, &mut rng).unwrap();
        let s = relative_entropy(&rho, &rho).unwrap();
        assert!(s.finite);
        assert!(s.value.abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_support_rule() {
        let zero = pure_qubit(0.0);
        let one = pure_qubit(std::f64::consts::FRAC_PI_2);
        let s = relative_entropy(&zero, &one).unwrap();
        assert!(!s.finite);
        assert!(s.value.is_infinite());
    }

    #[test]
    fn relative_entropy_matches_scalar_kl_on_commuting_diagonals() {
        // independent oracle: scalar Kullback-Leibler arithmetic
        let p: [f64; 2] = [0.5, 0.5];
        let q: [f64; 2] = [0.75, 0.25];
        let kl: f64 = p
            .iter()
            .zip(&q)
            .map(|(pi, qi)| pi * (pi / qi).log2())
            .sum();
        assert!((kl - 0.2075187496394219).abs() < 1e-12);
        let s = relative_entropy(&diag(&p), &diag(&q)).unwrap();
        assert!(s.finite);
        assert!((s.value - kl).abs() < 1e-12);
    }

    #[test]
    fn qjsd_of_identical_states_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random_density::<f64>(3, 3, &mut rng).unwrap();
        let v = qjsd(&rho, &rho).unwrap();
        assert!(v.finite);
        assert!(v.value.abs() < 1e-12);
    }

    #[test]
    fn qjsd_of_orthogonal_pure_states_is_one() {
        let zero = pure_qubit(0.0);
        let one = pure_qubit(std::f64::consts::FRAC_PI_2);
        let v = qjsd(&zero, &one).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
        assert!((js_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qjsd_matches_scalar_oracle_on_commuting_diagonals() {
        // independent scalar oracle on the eigenvalue distributions
        let h = |p: &[f64]| -> f64 {
            -p.iter().filter(|x| **x > 0.0).map(|x| x * x.log2()).sum::<f64>()
        };
        let p: [f64; 2] = [0.5, 0.5];
        let q: [f64; 2] = [0.75, 0.25];
        let m: [f64; 2] = [0.625, 0.375];
        let oracle = h(&m) - 0.5 * h(&p) - 0.5 * h(&q);
        assert!((oracle - 0.048794940695398745).abs() < 1e-15);
        let v = qjsd(&diag(&p), &diag(&q)).unwrap();
        assert!((v.value - oracle).abs() < 1e-12);
    }

    #[test]
    fn qjsd_is_bitwise_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let a = random_density::<f64>(4, 4, &mut rng).unwrap();
            let b = random_density::<f64>(4, 4, &mut rng).unwrap();
            assert_eq!(qjsd(&a, &b).unwrap().value, qjsd(&b, &a).unwrap().value);
        }
    }

    #[test]
    fn qjsd_dimension_mismatch() {
        let a = diag(&[0.5, 0.5]);
        let b = diag(&[0.25, 0.25, 0.25, 0.25]);
        assert!(qjsd(&a, &b).is_err());
        assert!(relative_entropy(&a, &b).is_err());
        assert!(bures_distance(&a, &b).is_err());
    }

    #[test]
    fn js_distance_monotone_with_qjsd() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut pairs: Vec<(f64, f64)> = Vec::new();
        for _ in 0..30 {
            let a = random_density::<f64>(4, 4, &mut rng).unwrap();
            let b = random_density::<f64>(4, 4, &mut rng).unwrap();
            pairs.push((qjsd(&a, &b).unwrap().value, js_distance(&a, &b).unwrap()));
        }
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for w in pairs.windows(2) {
            assert!(w[0].1 <= w[1].1 + 1e-15);
        }
    }

    #[test]
    fn bures_distance_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rho = random_density::<f64>(4, 4, &mut rng).unwrap();
        assert!(bures_distance(&rho, &rho).unwrap().abs() < 1e-7);
        let zero = pure_qubit(0.0);
        let one = pure_qubit(std::f64::consts::FRAC_PI_2);
        let d = bures_distance(&zero, &one).unwrap();
        assert!((d - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn bures_distance_of_pure_pair_matches_overlap_formula() {
        // fidelity of pure states is the squared overlap; check the closed form
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let theta = rng.gen::<f64>() * std::f64::consts::FRAC_PI_2;
            let a = pure_qubit(0.0);
            let b = pure_qubit(theta);
            let c = theta.cos().powi(2); // |<a|b>|^2
            let expect = (2.0 - 2.0 * c.sqrt()).max(0.0).sqrt();
            let d = bures_distance(&a, &b).unwrap();
            assert!((d - expect).abs() < 1e-8, "theta={theta}: {d} vs {expect}");
            let f = fidelity(&a, &b).unwrap();
            assert!((f - c).abs() < 1e-8);
        }
    }

    #[test]
    fn prepared_distance_agrees_with_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let target = random_density::<f64>(4, 4, &mut rng).unwrap();
        let js = PreparedDistance::new(DistanceMetric::Js, &target);
        let bu = PreparedDistance::new(DistanceMetric::Bures, &target);
        for _ in 0..20 {
            let cand = random_density::<f64>(4, 4, &mut rng).unwrap();
            assert!((js.eval(cand.mat()) - qjsd(&target, &cand).unwrap().value).abs() < 1e-12);
            assert!((bu.eval(cand.mat()) - bures_distance(&target, &cand).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn equivalence_of_divergence_and_entropy_forms() {
        // the averaged-relative-entropy route is kept here, independent of
        // the production entropy-form path
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..50 {
            let a = random_density::<f64>(4, 4, &mut rng).unwrap();
            let b = random_density::<f64>(4, 4, &mut rng).unwrap();
            let mid = a.blend(&b).unwrap();
            let s1 = relative_entropy(&a, &mid).unwrap();
            let s2 = relative_entropy(&b, &mid).unwrap();
            assert!(s1.finite && s2.finite);
            let via_relent = 0.5 * (s1.value + s2.value);
            let via_entropy = qjsd(&a, &b).unwrap().value;
            assert!(
                (via_relent - via_entropy).abs() < 1e-10,
                "{via_relent} vs {via_entropy}"
            );
        }
    }

    #[test]
    fn singlet_bures_distance_to_werner_boundary() {
        // fidelity of a pure target with any state is the diagonal overlap
        let singlet = DensityMatrix::from_pure(&BellBasis::<f64>::standard().psi_minus);
        let boundary = crate::families::werner_state(1.0 / 3.0).unwrap();
        let d = bures_distance(&singlet, &boundary).unwrap();
        let expect = (2.0 - 2.0 * (0.5f64).sqrt()).sqrt();
        assert!((d - expect).abs() < 1e-10);
    }
}
