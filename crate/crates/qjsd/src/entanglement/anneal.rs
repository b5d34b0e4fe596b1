//! Simulated-annealing minimization of the distance from a two-qubit state
//! to the separable set, over the 16-term product-decomposition
//! parameterization. Every candidate the walker visits is separable by
//! construction, so feasibility never needs repair; the PPT certificate
//! stays available as an independent check on the output.

use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::density::DensityMatrix;
use crate::divergences::{DistanceMetric, PreparedDistance};
use crate::entanglement::{bloch_projector, SeparableDecomposition, SeparableTerm, DECOMPOSITION_TERMS};
use crate::error::{Error, Result};
use crate::families::BellBasis;
use crate::linalg::ComplexMatrix;
use crate::scalar::{lit, Real};
use crate::seeding::derive_seed;

/// Seed of the one-off singlet calibration runs.
pub const CALIBRATION_SEED: u64 = 314_159;

/// Fraction of proposals that rotate a Bloch vector (the rest shift the
/// weight simplex). There are 32 Bloch coordinates against one weight
/// vector, and weight shifts touch all 16 weights at once, so they get the
/// smaller share.
const BLOCH_MOVE_PROBABILITY: f64 = 0.8;

/// Move scales follow the temperature down as T / t_initial but never below
/// this fraction: the cold tail then keeps making small, mostly greedy
/// refinement steps instead of freezing in place. Without the floor the
/// walker stalls two orders of magnitude above the true minimum.
const MIN_SCALE_FRACTION: f64 = 0.03;

/// Temperature ladder and move scales for the minimizer. Temperatures are in
/// the units of the chosen distance (bits for JS).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealingSchedule<R: Real> {
    pub t_initial: R,
    pub t_final: R,
    /// geometric factor applied per sweep
    pub cooling: R,
    pub sweeps: usize,
    pub moves_per_sweep: usize,
    /// initial angular scale of Bloch-vector moves, radians
    pub bloch_step: R,
    /// initial scale of weight-simplex moves
    pub weight_step: R,
    pub restarts: usize,
    pub seed: u64,
}

impl<R: Real> Default for AnnealingSchedule<R> {
    fn default() -> Self {
        Self {
            t_initial: lit(0.1),
            t_final: lit(1e-6),
            cooling: lit(0.93),
            sweeps: 200,
            moves_per_sweep: 200,
            bloch_step: lit(0.5),
            weight_step: lit(0.05),
            restarts: 4,
            seed: 42,
        }
    }
}

impl<R: Real> AnnealingSchedule<R> {
    /// High-effort variant used to pin the singlet normalization.
    pub fn calibration() -> Self {
        Self {
            sweeps: 400,
            restarts: 16,
            seed: CALIBRATION_SEED,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > R::zero() && self.t_initial > self.t_final) {
            return Err(Error::ScheduleInvalid(
                "need 0 < t_final < t_initial".into(),
            ));
        }
        if !(self.cooling > R::zero() && self.cooling < R::one()) {
            return Err(Error::ScheduleInvalid("need 0 < cooling < 1".into()));
        }
        if self.sweeps < 1 || self.moves_per_sweep < 1 || self.restarts < 1 {
            return Err(Error::ScheduleInvalid(
                "sweeps, moves_per_sweep and restarts must be >= 1".into(),
            ));
        }
        if !(self.bloch_step > R::zero() && self.weight_step > R::zero()) {
            return Err(Error::ScheduleInvalid("move scales must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a distance minimization.
#[derive(Debug, Clone)]
pub struct EntanglementResult<R: Real> {
    /// minimum distance found (bits for JS, distance units for Bures)
    pub raw_value: R,
    /// raw value divided by the singlet's raw value for the same metric
    pub normalized_value: R,
    pub closest_state: DensityMatrix<R>,
    pub decomposition: SeparableDecomposition<R>,
    /// best two restarts agreed within 1e-4
    pub converged: bool,
    /// number of distance evaluations across all restarts
    pub evaluations: u64,
}

/// Walker state: weights, Bloch vectors (2 per term) and the cached product
/// projectors.
struct Chain<R: Real> {
    weights: Vec<R>,
    bloch: Vec<[R; 3]>, // index 2*term + (0 for A, 1 for B)
    projs: Vec<ComplexMatrix<R>>,
    sigma: ComplexMatrix<R>, // scratch for the materialized mixture
}

impl<R: Real> Chain<R> {
    fn from_decomposition(dec: &SeparableDecomposition<R>) -> Self {
        let mut weights = Vec::with_capacity(DECOMPOSITION_TERMS);
        let mut bloch = Vec::with_capacity(2 * DECOMPOSITION_TERMS);
        let mut projs = Vec::with_capacity(DECOMPOSITION_TERMS);
        for t in dec.terms() {
            weights.push(t.weight);
            bloch.push(t.bloch_a);
            bloch.push(t.bloch_b);
            projs.push(bloch_projector(t.bloch_a).kron(&bloch_projector(t.bloch_b)));
        }
        Self {
            weights,
            bloch,
            projs,
            sigma: ComplexMatrix::zeros(4),
        }
    }

    fn rebuild_proj(&mut self, term: usize) {
        self.projs[term] =
            bloch_projector(self.bloch[2 * term]).kron(&bloch_projector(self.bloch[2 * term + 1]));
    }

    fn materialize(&mut self) -> &ComplexMatrix<R> {
        self.sigma.fill_zero();
        for (w, p) in self.weights.iter().zip(&self.projs) {
            self.sigma.add_scaled_assign(p, *w);
        }
        &self.sigma
    }

    fn snapshot(&self) -> (Vec<R>, Vec<[R; 3]>) {
        (self.weights.clone(), self.bloch.clone())
    }

    fn to_decomposition(weights: &[R], bloch: &[[R; 3]]) -> SeparableDecomposition<R> {
        let terms = (0..DECOMPOSITION_TERMS)
            .map(|k| SeparableTerm {
                weight: weights[k],
                bloch_a: bloch[2 * k],
                bloch_b: bloch[2 * k + 1],
            })
            .collect();
        SeparableDecomposition::from_parts(terms)
    }
}

enum Move<R: Real> {
    Bloch { index: usize, old: [R; 3] },
    Weights { old: Vec<R> },
    Rejected,
}

/// Propose one move in place; returns what is needed to undo it. Draws are
/// f64 regardless of the scalar so seeded runs agree across types.
fn propose<R: Real>(
    chain: &mut Chain<R>,
    scale: R,
    bloch_step: R,
    weight_step: R,
    rng: &mut ChaCha8Rng,
) -> Move<R> {
    if rng.gen::<f64>() < BLOCH_MOVE_PROBABILITY {
        // rotate one Bloch vector by a random tangent angle
        let index = (rng.gen::<u64>() as usize) % (2 * DECOMPOSITION_TERMS);
        let v = chain.bloch[index];
        let t = match random_tangent(v, rng) {
            Some(t) => t,
            None => return Move::Rejected,
        };
        let angle = bloch_step * scale * lit::<R>(normal(rng));
        let (c, s) = (angle.cos(), angle.sin());
        let mut new = [
            c * v[0] + s * t[0],
            c * v[1] + s * t[1],
            c * v[2] + s * t[2],
        ];
        let n = (new[0] * new[0] + new[1] * new[1] + new[2] * new[2]).sqrt();
        for x in new.iter_mut() {
            *x = *x / n;
        }
        chain.bloch[index] = new;
        chain.rebuild_proj(index / 2);
        Move::Bloch { index, old: v }
    } else {
        // shift the whole weight simplex, clamp at zero, renormalize
        let old = chain.weights.clone();
        let step = weight_step * scale;
        let mut sum = R::zero();
        for w in chain.weights.iter_mut() {
            *w = (*w + step * lit::<R>(normal(rng))).max(R::zero());
            sum += *w;
        }
        if sum <= lit(1e-300) {
            chain.weights = old;
            return Move::Rejected;
        }
        for w in chain.weights.iter_mut() {
            *w = *w / sum;
        }
        Move::Weights { old }
    }
}

fn undo<R: Real>(chain: &mut Chain<R>, mv: Move<R>) {
    match mv {
        Move::Bloch { index, old } => {
            chain.bloch[index] = old;
            chain.rebuild_proj(index / 2);
        }
        Move::Weights { old } => chain.weights = old,
        Move::Rejected => {}
    }
}

/// Unit vector orthogonal to `v` in a random tangent direction.
fn random_tangent<R: Real>(v: [R; 3], rng: &mut ChaCha8Rng) -> Option<[R; 3]> {
    for _ in 0..8 {
        let g = [
            lit::<R>(normal(rng)),
            lit::<R>(normal(rng)),
            lit::<R>(normal(rng)),
        ];
        let dot = g[0] * v[0] + g[1] * v[1] + g[2] * v[2];
        let t = [g[0] - dot * v[0], g[1] - dot * v[1], g[2] - dot * v[2]];
        let n = (t[0] * t[0] + t[1] * t[1] + t[2] * t[2]).sqrt();
        if n > lit(1e-9) {
            return Some([t[0] / n, t[1] / n, t[2] / n]);
        }
    }
    None
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u = 2.0 * rng.gen::<f64>() - 1.0;
        let v = 2.0 * rng.gen::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

/// One annealing chain from the maximally mixed decomposition; returns the
/// best value seen, its decomposition snapshot, and the evaluation count.
fn run_chain<R: Real>(
    prep: &PreparedDistance<R>,
    schedule: &AnnealingSchedule<R>,
    seed: u64,
) -> (R, Vec<R>, Vec<[R; 3]>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = Chain::from_decomposition(&SeparableDecomposition::maximally_mixed_init());

    // decorrelating jitter: one unconditional move at full scale
    let _ = propose(
        &mut chain,
        R::one(),
        schedule.bloch_step,
        schedule.weight_step,
        &mut rng,
    );

    let mut evals: u64 = 0;
    let mut energy = prep.eval(chain.materialize());
    evals += 1;
    let (mut best_e, mut best_w, mut best_b) = {
        let (w, b) = chain.snapshot();
        (energy, w, b)
    };

    let mut temp = schedule.t_initial;
    for _sweep in 0..schedule.sweeps {
        let scale = (temp / schedule.t_initial).max(lit(MIN_SCALE_FRACTION));
        for _ in 0..schedule.moves_per_sweep {
            let mv = propose(
                &mut chain,
                scale,
                schedule.bloch_step,
                schedule.weight_step,
                &mut rng,
            );
            if matches!(mv, Move::Rejected) {
                continue;
            }
            let candidate = prep.eval(chain.materialize());
            evals += 1;
            let delta = candidate - energy;
            let accept = if delta <= R::zero() {
                true
            } else {
                let ratio = (-(delta / temp)).to_f64().unwrap_or(f64::NEG_INFINITY);
                rng.gen::<f64>() < ratio.exp()
            };
            if accept {
                energy = candidate;
                if energy < best_e {
                    best_e = energy;
                    let (w, b) = chain.snapshot();
                    best_w = w;
                    best_b = b;
                }
            } else {
                undo(&mut chain, mv);
            }
        }
        temp = (temp * schedule.cooling).max(schedule.t_final);
    }

    (best_e, best_w, best_b, evals)
}

fn minimize_raw<R: Real>(
    rho: &DensityMatrix<R>,
    metric: DistanceMetric,
    schedule: &AnnealingSchedule<R>,
) -> Result<(R, SeparableDecomposition<R>, bool, u64)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "separable-set minimization needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    schedule.validate()?;
    let prep = PreparedDistance::new(metric, rho);

    let mut evals = 0u64;
    let mut results: Vec<R> = Vec::with_capacity(schedule.restarts);
    let mut best: Option<(R, Vec<R>, Vec<[R; 3]>)> = None;
    for k in 0..schedule.restarts {
        let seed = derive_seed(schedule.seed, k as u64);
        let (e, w, b, n) = run_chain(&prep, schedule, seed);
        evals += n;
        results.push(e);
        // strict improvement keeps the lowest restart index on ties
        if best.as_ref().map_or(true, |(be, _, _)| e < *be) {
            best = Some((e, w, b));
        }
    }
    let (best_e, best_w, best_b) = best.expect("at least one restart");
    results.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    let converged = results.len() >= 2 && results[1] - results[0] <= lit(1e-4);
    Ok((
        best_e,
        Chain::to_decomposition(&best_w, &best_b),
        converged,
        evals,
    ))
}

/// Full minimization: anneal, then normalize by the singlet calibration for
/// the same metric.
pub fn minimize_distance<R: Real>(
    rho: &DensityMatrix<R>,
    metric: DistanceMetric,
    schedule: &AnnealingSchedule<R>,
) -> Result<EntanglementResult<R>> {
    let (raw, dec, converged, evaluations) = minimize_raw(rho, metric, schedule)?;
    let scale = singlet_scale::<R>(metric);
    let closest_state = dec.materialize();
    Ok(EntanglementResult {
        raw_value: raw,
        normalized_value: raw / scale,
        closest_state,
        decomposition: dec,
        converged,
        evaluations,
    })
}

/// E_JS: minimum QJSD to the separable set, normalized so the singlet maps
/// to 1. Default schedule.
pub fn entanglement_js<R: Real>(rho: &DensityMatrix<R>) -> Result<EntanglementResult<R>> {
    minimize_distance(rho, DistanceMetric::Js, &AnnealingSchedule::default())
}

/// E_B: same minimization under the Bures distance.
pub fn entanglement_bures<R: Real>(rho: &DensityMatrix<R>) -> Result<EntanglementResult<R>> {
    minimize_distance(rho, DistanceMetric::Bures, &AnnealingSchedule::default())
}

/// Raw singlet minimum for the given metric: the normalization constant of
/// Eq-style rescaled measures. Computed once per process in f64 with the
/// high-effort calibration schedule and converted to the working scalar.
pub fn singlet_scale<R: Real>(metric: DistanceMetric) -> R {
    static JS: OnceLock<f64> = OnceLock::new();
    static BURES: OnceLock<f64> = OnceLock::new();
    let cell = match metric {
        DistanceMetric::Js => &JS,
        DistanceMetric::Bures => &BURES,
    };
    let value = *cell.get_or_init(|| {
        let singlet = DensityMatrix::<f64>::from_pure(&BellBasis::standard().psi_minus);
        let (raw, _, _, _) = minimize_raw(&singlet, metric, &AnnealingSchedule::calibration())
            .expect("calibration on a valid two-qubit state");
        raw
    });
    lit(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences::qjsd;
    use crate::entanglement::is_ppt;
    use crate::families::werner_state;

    #[test]
    fn schedule_validation() {
        let mut s = AnnealingSchedule::<f64>::default();
        assert!(s.validate().is_ok());
        s.cooling = 1.2;
        assert!(s.validate().is_err());
        let mut s2 = AnnealingSchedule::<f64>::default();
        s2.t_final = 0.2;
        assert!(s2.validate().is_err());
        let mut s3 = AnnealingSchedule::<f64>::default();
        s3.restarts = 0;
        assert!(s3.validate().is_err());
    }

    #[test]
    fn rejects_wrong_dimension() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        assert!(matches!(
            minimize_distance(&rho, DistanceMetric::Js, &AnnealingSchedule::default()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn separable_werner_has_tiny_js_minimum() {
        let rho = werner_state(0.25f64).unwrap();
        let result = entanglement_js(&rho).unwrap();
        assert!(
            result.raw_value <= 1e-4,
            "raw minimum {} too large for a separable state",
            result.raw_value
        );
        assert!(result.normalized_value <= 1e-3);
        let (ppt, _) = is_ppt(&result.closest_state, (2, 2)).unwrap();
        assert!(ppt, "closest state must always be separable");
    }

    #[test]
    fn singlet_normalizes_to_one() {
        let singlet = DensityMatrix::<f64>::from_pure(&BellBasis::standard().psi_minus);
        let result = entanglement_js(&singlet).unwrap();
        assert!(
            (result.normalized_value - 1.0).abs() < 5e-3,
            "normalized singlet value {}",
            result.normalized_value
        );
        assert!(result.converged);
        // closest state is separable and its distance matches the raw value
        let d = qjsd(&singlet, &result.closest_state).unwrap().value;
        assert!((d - result.raw_value).abs() < 1e-12);
    }

    #[test]
    fn calibration_is_cached_and_positive() {
        let a = singlet_scale::<f64>(DistanceMetric::Js);
        let b = singlet_scale::<f64>(DistanceMetric::Js);
        assert_eq!(a, b);
        assert!(a > 0.25 && a < 0.4, "JS singlet scale {a}");
    }
}
