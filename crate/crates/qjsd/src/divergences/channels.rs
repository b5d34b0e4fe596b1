//! Kraus-form quantum channels. The monotonicity harness runs over a fixed,
//! hard-coded set of these; nothing here tries to be a general channel
//! calculus.

use num_complex::Complex;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{lit, Real};

/// A completely positive trace-preserving map given by Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausChannel<R: Real> {
    pub name: String,
    pub ops: Vec<ComplexMatrix<R>>,
}

impl<R: Real> KrausChannel<R> {
    fn check_probability(p: R) -> Result<()> {
        if !(p >= R::zero() && p <= R::one()) {
            return Err(Error::ParameterOutOfRange {
                name: "p",
                value: p.to_f64().unwrap_or(f64::NAN),
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(())
    }

    /// Single-qubit depolarizing channel: identity with probability 1 - 3p/4,
    /// each Pauli kick with probability p/4.
    pub fn depolarizing(p: R) -> Result<Self> {
        Self::check_probability(p)?;
        let quarter = p / lit::<R>(4.0);
        let k0 = pauli_i::<R>().scaled((R::one() - lit::<R>(3.0) * quarter).sqrt());
        let kx = pauli_x::<R>().scaled(quarter.sqrt());
        let ky = pauli_y::<R>().scaled(quarter.sqrt());
        let kz = pauli_z::<R>().scaled(quarter.sqrt());
        Ok(Self {
            name: format!("depolarizing({})", p.to_f64().unwrap_or(f64::NAN)),
            ops: vec![k0, kx, ky, kz],
        })
    }

    /// Single-qubit dephasing: off-diagonals shrink by 1 - p, fully dephased
    /// at p = 1.
    pub fn dephasing(p: R) -> Result<Self> {
        Self::check_probability(p)?;
        let k0 = pauli_i::<R>().scaled((R::one() - p).sqrt());
        let mut k1 = ComplexMatrix::zeros(2);
        k1.set(0, 0, Complex::new(p.sqrt(), R::zero()));
        let mut k2 = ComplexMatrix::zeros(2);
        k2.set(1, 1, Complex::new(p.sqrt(), R::zero()));
        Ok(Self {
            name: format!("dephasing({})", p.to_f64().unwrap_or(f64::NAN)),
            ops: vec![k0, k1, k2],
        })
    }

    /// Single-qubit amplitude damping with decay probability p.
    pub fn amplitude_damping(p: R) -> Result<Self> {
        Self::check_probability(p)?;
        let mut k0 = ComplexMatrix::zeros(2);
        k0.set(0, 0, Complex::new(R::one(), R::zero()));
        k0.set(1, 1, Complex::new((R::one() - p).sqrt(), R::zero()));
        let mut k1 = ComplexMatrix::zeros(2);
        k1.set(0, 1, Complex::new(p.sqrt(), R::zero()));
        Ok(Self {
            name: format!("amplitude-damping({})", p.to_f64().unwrap_or(f64::NAN)),
            ops: vec![k0, k1],
        })
    }

    /// Extend to act on the first factor of a bipartite system: K -> K (x) I.
    pub fn on_first_factor(&self, other_dim: usize) -> Self {
        let eye = ComplexMatrix::identity(other_dim);
        Self {
            name: format!("{} (x) I_{other_dim}", self.name),
            ops: self.ops.iter().map(|k| k.kron(&eye)).collect(),
        }
    }

    /// sum_k K rho K^dagger.
    pub fn apply(&self, rho: &DensityMatrix<R>) -> Result<DensityMatrix<R>> {
        let d = self.ops[0].dim();
        if rho.dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "channel on dimension {d} applied to state of dimension {}",
                rho.dim()
            )));
        }
        let mut acc = ComplexMatrix::zeros(d);
        for k in &self.ops {
            acc = acc.add(&k.matmul(rho.mat()).matmul(&k.adjoint()));
        }
        Ok(DensityMatrix::trusted(acc))
    }

    /// max-norm defect of sum_k K^dagger K = I.
    pub fn trace_preservation_defect(&self) -> R {
        let d = self.ops[0].dim();
        let mut acc = ComplexMatrix::zeros(d);
        for k in &self.ops {
            acc = acc.add(&k.adjoint().matmul(k));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(d))
    }
}

fn pauli_i<R: Real>() -> ComplexMatrix<R> {
    ComplexMatrix::identity(2)
}

fn pauli_x<R: Real>() -> ComplexMatrix<R> {
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 1, Complex::new(R::one(), R::zero()));
    m.set(1, 0, Complex::new(R::one(), R::zero()));
    m
}

fn pauli_y<R: Real>() -> ComplexMatrix<R> {
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 1, Complex::new(R::zero(), -R::one()));
    m.set(1, 0, Complex::new(R::zero(), R::one()));
    m
}

fn pauli_z<R: Real>() -> ComplexMatrix<R> {
    let mut m = ComplexMatrix::identity(2);
    m.set(1, 1, Complex::new(-R::one(), R::zero()));
    m
}

/// sigma_y (x) sigma_y, the spin-flip operator used by the concurrence.
pub(crate) fn spin_flip_operator<R: Real>() -> ComplexMatrix<R> {
    pauli_y::<R>().kron(&pauli_y::<R>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::random_density;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn channels_are_trace_preserving() {
        for p in [0.0f64, 0.1, 0.5, 0.9, 1.0] {
            for ch in [
                KrausChannel::depolarizing(p).unwrap(),
                KrausChannel::dephasing(p).unwrap(),
                KrausChannel::amplitude_damping(p).unwrap(),
            ] {
                assert!(ch.trace_preservation_defect() < 1e-12, "{}", ch.name);
                assert!(
                    ch.on_first_factor(2).trace_preservation_defect() < 1e-12,
                    "{} lifted",
                    ch.name
                );
            }
        }
    }

    #[test]
    fn channel_output_is_a_valid_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let rho = random_density::<f64>(4, 4, &mut rng).unwrap();
        for p in [0.1f64, 0.5, 0.9] {
            for ch in [
                KrausChannel::depolarizing(p).unwrap(),
                KrausChannel::dephasing(p).unwrap(),
                KrausChannel::amplitude_damping(p).unwrap(),
            ] {
                let out = ch.on_first_factor(2).apply(&rho).unwrap();
                assert!(DensityMatrix::new(out.mat().clone()).is_ok(), "{}", ch.name);
            }
        }
    }

    #[test]
    fn full_depolarizing_sends_everything_to_maximally_mixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let rho = random_density::<f64>(2, 2, &mut rng).unwrap();
        let out = KrausChannel::depolarizing(1.0f64).unwrap().apply(&rho).unwrap();
        assert!(out.mat().max_abs_diff(DensityMatrix::maximally_mixed(2).mat()) < 1e-12);
    }

    #[test]
    fn rejects_out_of_range_probability() {
        assert!(KrausChannel::depolarizing(1.5f64).is_err());
        assert!(KrausChannel::amplitude_damping(-0.1f64).is_err());
    }
}
