//! Monte Carlo verification of the structural properties of the QJSD and of
//! the metric character of its square root. Failures are data, not errors:
//! each harness returns a report with the worst violation and a witness.

use rand::Rng;

use crate::density::{psd_entropy, DensityMatrix, Subsystem};
use crate::divergences::{js_distance, qjsd, KrausChannel};
use crate::error::Result;
use crate::families::{random_density, random_unitary};
use crate::linalg::ComplexMatrix;
use crate::scalar::{lit, Real};

/// The seven verified properties: nonnegativity/identity, unitary
/// invariance, partial-trace monotonicity, joint convexity, monotonicity
/// under the fixed channel set, projector additivity, and tensor-projector
/// invariance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyTag {
    Nonnegativity,
    UnitaryInvariance,
    PartialTraceMonotonicity,
    JointConvexity,
    ChannelMonotonicity,
    ProjectorAdditivity,
    TensorProjectorInvariance,
}

impl PropertyTag {
    pub const ALL: [PropertyTag; 7] = [
        PropertyTag::Nonnegativity,
        PropertyTag::UnitaryInvariance,
        PropertyTag::PartialTraceMonotonicity,
        PropertyTag::JointConvexity,
        PropertyTag::ChannelMonotonicity,
        PropertyTag::ProjectorAdditivity,
        PropertyTag::TensorProjectorInvariance,
    ];

    /// Roman-numeral label used in reports.
    pub fn roman(&self) -> &'static str {
        match self {
            PropertyTag::Nonnegativity => "i",
            PropertyTag::UnitaryInvariance => "ii",
            PropertyTag::PartialTraceMonotonicity => "iii",
            PropertyTag::JointConvexity => "iv",
            PropertyTag::ChannelMonotonicity => "v",
            PropertyTag::ProjectorAdditivity => "vi",
            PropertyTag::TensorProjectorInvariance => "vii",
        }
    }
}

/// Outcome of one property run.
#[derive(Debug, Clone)]
pub struct PropertyReport<R: Real> {
    pub tag: PropertyTag,
    pub trials: usize,
    pub max_violation: R,
    pub witness: Option<(DensityMatrix<R>, DensityMatrix<R>)>,
}

impl<R: Real> PropertyReport<R> {
    pub fn passed(&self, tol: R) -> bool {
        self.max_violation <= tol
    }

    pub fn csv_header() -> &'static str {
        "property,trials,max_violation,witness_file_or_empty"
    }

    pub fn csv_row(&self, witness_file: &str) -> String {
        format!(
            "{},{},{},{}",
            self.tag.roman(),
            self.trials,
            self.max_violation,
            witness_file
        )
    }
}

/// Run `trials` sampled instances of one property. The sampler supplies
/// same-dimension state pairs; bipartite checks (iii, v, vii on lifted
/// channels) split the dimension as (2, dim/2) and therefore need an even
/// sampled dimension. Violations are amounts in bits: for equalities the
/// absolute deviation, for one-sided inequalities the positive excess.
pub fn verify_property<R, G, S>(
    tag: PropertyTag,
    mut sampler: S,
    trials: usize,
    tol: R,
    rng: &mut G,
) -> PropertyReport<R>
where
    R: Real,
    G: Rng,
    S: FnMut(&mut G) -> (DensityMatrix<R>, DensityMatrix<R>),
{
    assert!(trials >= 1, "at least one trial");
    let mut max_violation = R::zero();
    let mut witness = None;

    // channel set for (v), built once
    let channel_ps = [lit::<R>(0.1), lit::<R>(0.5), lit::<R>(0.9)];

    for _ in 0..trials {
        let (rho, sigma) = sampler(rng);
        let violation = match tag {
            PropertyTag::Nonnegativity => {
                let v = qjsd(&rho, &sigma).expect("sampler yields equal dims").value;
                let self_v = qjsd(&rho, &rho).expect("same state").value;
                (-v).max(self_v.abs())
            }
            PropertyTag::UnitaryInvariance => {
                let u = random_unitary::<R>(rho.dim(), rng);
                let before = qjsd(&rho, &sigma).expect("equal dims").value;
                let after = qjsd(
                    &rho.conjugate_by(&u).expect("same dim"),
                    &sigma.conjugate_by(&u).expect("same dim"),
                )
                .expect("equal dims")
                .value;
                (after - before).abs()
            }
            PropertyTag::PartialTraceMonotonicity => {
                let dims = split_dims(rho.dim());
                let before = qjsd(&rho, &sigma).expect("equal dims").value;
                let mut worst = R::zero();
                for keep in [Subsystem::A, Subsystem::B] {
                    let ra = rho.partial_trace(dims, keep).expect("bipartite");
                    let sa = sigma.partial_trace(dims, keep).expect("bipartite");
                    let after = qjsd(&ra, &sa).expect("equal dims").value;
                    worst = worst.max(after - before);
                }
                worst
            }
            PropertyTag::JointConvexity => {
                let k = 2 + (rng.gen::<u32>() % 2) as usize;
                let mut parts = vec![(rho.clone(), sigma.clone())];
                for _ in 1..k {
                    parts.push(sampler(rng));
                }
                let mut weights: Vec<R> = (0..k).map(|_| lit(rng.gen::<f64>().max(1e-12))).collect();
                let total: R = weights.iter().copied().fold(R::zero(), |a, b| a + b);
                for w in weights.iter_mut() {
                    *w = *w / total;
                }
                let rho_mix = DensityMatrix::mixture(
                    &weights.iter().zip(&parts).map(|(w, p)| (*w, &p.0)).collect::<Vec<_>>(),
                )
                .expect("weights normalized");
                let sigma_mix = DensityMatrix::mixture(
                    &weights.iter().zip(&parts).map(|(w, p)| (*w, &p.1)).collect::<Vec<_>>(),
                )
                .expect("weights normalized");
                let lhs = qjsd(&rho_mix, &sigma_mix).expect("equal dims").value;
                let rhs = weights
                    .iter()
                    .zip(&parts)
                    .map(|(w, p)| *w * qjsd(&p.0, &p.1).expect("equal dims").value)
                    .fold(R::zero(), |a, b| a + b);
                lhs - rhs
            }
            PropertyTag::ChannelMonotonicity => {
                let dims = split_dims(rho.dim());
                let before = qjsd(&rho, &sigma).expect("equal dims").value;
                let mut worst = R::zero();
                for &p in &channel_ps {
                    for ch in [
                        KrausChannel::depolarizing(p).expect("p in range"),
                        KrausChannel::dephasing(p).expect("p in range"),
                        KrausChannel::amplitude_damping(p).expect("p in range"),
                    ] {
                        let lifted = ch.on_first_factor(dims.1);
                        let after = qjsd(
                            &lifted.apply(&rho).expect("dims match"),
                            &lifted.apply(&sigma).expect("dims match"),
                        )
                        .expect("equal dims")
                        .value;
                        worst = worst.max(after - before);
                    }
                }
                // partial trace is part of the fixed map set
                let ra = rho.partial_trace(dims, Subsystem::B).expect("bipartite");
                let sa = sigma.partial_trace(dims, Subsystem::B).expect("bipartite");
                let after = qjsd(&ra, &sa).expect("equal dims").value;
                worst.max(after - before)
            }
            PropertyTag::ProjectorAdditivity => {
                let blocks = random_blocks(rho.dim(), rng);
                let rho_p = pinch(rho.mat(), &blocks);
                let sigma_p = pinch(sigma.mat(), &blocks);
                let lhs = qjsd(
                    &DensityMatrix::new(rho_p.clone()).expect("pinching preserves the axioms"),
                    &DensityMatrix::new(sigma_p.clone()).expect("pinching preserves the axioms"),
                )
                .expect("equal dims")
                .value;
                let mut rhs = R::zero();
                for b in &blocks {
                    rhs += js_psd(&submatrix(&rho_p, b), &submatrix(&sigma_p, b));
                }
                (lhs - rhs).abs()
            }
            PropertyTag::TensorProjectorInvariance => {
                let base = qjsd(&rho, &sigma).expect("equal dims").value;
                let anc_dim = 2 + (rng.gen::<u32>() % 2) as usize;
                let u = random_unitary::<R>(anc_dim, rng);
                // rank-1 projector: exact identity on states
                let p1 = projector_from_columns(&u, 1);
                let r1 = DensityMatrix::trusted(rho.mat().kron(&p1));
                let s1 = DensityMatrix::trusted(sigma.mat().kron(&p1));
                let v1 = (qjsd(&r1, &s1).expect("equal dims").value - base).abs();
                // higher-rank projector, normalized to a state on its support
                let p2 = projector_from_columns(&u, 2).scaled(lit::<R>(0.5));
                let r2 = DensityMatrix::trusted(rho.mat().kron(&p2));
                let s2 = DensityMatrix::trusted(sigma.mat().kron(&p2));
                let v2 = (qjsd(&r2, &s2).expect("equal dims").value - base).abs();
                v1.max(v2)
            }
        };
        if violation > max_violation {
            max_violation = violation;
            if violation > tol {
                witness = Some((rho, sigma));
            }
        }
    }

    PropertyReport {
        tag,
        trials,
        max_violation,
        witness,
    }
}

/// JS on subnormalized PSD blocks, via the unnormalized entropy kernel.
fn js_psd<R: Real>(a: &ComplexMatrix<R>, b: &ComplexMatrix<R>) -> R {
    let half = lit::<R>(0.5);
    let mid = a.add(b).scaled(half);
    psd_entropy(&mid).expect("Hermitian block") // blocks of Hermitian matrices are Hermitian
        - half * psd_entropy(a).expect("Hermitian block")
        - half * psd_entropy(b).expect("Hermitian block")
}

fn split_dims(n: usize) -> (usize, usize) {
    assert!(n % 2 == 0, "bipartite checks need an even dimension");
    (2, n / 2)
}

/// Random partition of 0..n into 2 or 3 contiguous index blocks.
fn random_blocks(n: usize, rng: &mut impl Rng) -> Vec<std::ops::Range<usize>> {
    assert!(n >= 2);
    let want_three = n >= 3 && rng.gen::<bool>();
    if want_three {
        let c1 = 1 + (rng.gen::<u64>() as usize) % (n - 2);
        let c2 = c1 + 1 + (rng.gen::<u64>() as usize) % (n - c1 - 1);
        vec![0..c1, c1..c2, c2..n]
    } else {
        let c = 1 + (rng.gen::<u64>() as usize) % (n - 1);
        vec![0..c, c..n]
    }
}

/// Zero every entry that straddles two different blocks.
fn pinch<R: Real>(m: &ComplexMatrix<R>, blocks: &[std::ops::Range<usize>]) -> ComplexMatrix<R> {
    let block_of = |i: usize| blocks.iter().position(|b| b.contains(&i)).expect("covers");
    ComplexMatrix::from_fn(m.dim(), |i, j| {
        if block_of(i) == block_of(j) {
            m.get(i, j)
        } else {
            num_complex::Complex::new(R::zero(), R::zero())
        }
    })
}

fn submatrix<R: Real>(m: &ComplexMatrix<R>, range: &std::ops::Range<usize>) -> ComplexMatrix<R> {
    ComplexMatrix::from_fn(range.len(), |i, j| m.get(range.start + i, range.start + j))
}

/// P = sum of |u_k><u_k| over the first `rank` columns of a unitary.
fn projector_from_columns<R: Real>(u: &ComplexMatrix<R>, rank: usize) -> ComplexMatrix<R> {
    let n = u.dim();
    ComplexMatrix::from_fn(n, |i, j| {
        let mut acc = num_complex::Complex::new(R::zero(), R::zero());
        for k in 0..rank {
            acc = acc + u.get(i, k) * u.get(j, k).conj();
        }
        acc
    })
}

/// Outcome of a triangle-inequality run for d_JS = sqrt(JS).
#[derive(Debug, Clone)]
pub struct TriangleReport<R: Real> {
    pub dim: usize,
    pub rank: usize,
    pub trials: usize,
    /// min over trials of d(a,b) + d(b,c) - d(a,c); negative means broken.
    pub worst_slack: R,
    pub violations: usize,
    pub witness: Option<[DensityMatrix<R>; 3]>,
}

impl<R: Real> TriangleReport<R> {
    pub fn csv_header() -> &'static str {
        PropertyReport::<R>::csv_header()
    }

    pub fn csv_row(&self, witness_file: &str) -> String {
        let broken = (-self.worst_slack).max(R::zero());
        format!(
            "triangle_d{}_r{},{},{},{}",
            self.dim, self.rank, self.trials, broken, witness_file
        )
    }
}

/// Slack below this counts as a violation.
pub fn triangle_tolerance<R: Real>() -> R {
    lit(-1e-9)
}

/// Sample random state triples and check the triangle inequality of the
/// sqrt-JS distance. `rank` selects the sampled ensemble (rank = n is the
/// full-rank Hilbert-Schmidt measure, rank = 1 pure states).
pub fn triangle_check<R: Real>(
    n: usize,
    rank: usize,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<TriangleReport<R>> {
    assert!(trials >= 1, "at least one trial");
    let mut worst_slack = R::infinity();
    let mut violations = 0usize;
    let mut witness = None;
    for _ in 0..trials {
        let a = random_density::<R>(n, rank, rng)?;
        let b = random_density::<R>(n, rank, rng)?;
        let c = random_density::<R>(n, rank, rng)?;
        let slack =
            js_distance(&a, &b)? + js_distance(&b, &c)? - js_distance(&a, &c)?;
        if slack < worst_slack {
            worst_slack = slack;
            if slack < triangle_tolerance() {
                witness = Some([a, b, c]);
            }
        }
        if slack < triangle_tolerance() {
            violations += 1;
        }
    }
    Ok(TriangleReport {
        dim: n,
        rank,
        trials,
        worst_slack,
        violations,
        witness,
    })
}
