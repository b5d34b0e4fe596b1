// scratch probe for annealing quality (not part of the deliverable)
use qjsd::entanglement::{minimize_distance, AnnealingSchedule};
use qjsd::families::{werner_state, BellBasis};
use qjsd::{DensityMatrix64, DistanceMetric};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let sweeps: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let cooling: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.93);
    let moves: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(200);

    let sched = AnnealingSchedule::<f64> {
        sweeps,
        cooling,
        moves_per_sweep: moves,
        restarts: 4,
        ..AnnealingSchedule::default()
    };
    println!(
        "sweeps={sweeps} cooling={cooling} moves={moves} floor={}",
        std::env::var("QJSD_FLOOR").unwrap_or_default()
    );

    let singlet = DensityMatrix64::from_pure(&BellBasis::standard().psi_minus);
    let exact = [
        ("singlet", 1.0, 0.3112781244591327),
        ("werner 0.25", 0.25, 0.0),
        ("werner 0.4", 0.4, 0.0018086520),
        ("werner 0.8", 0.8, 0.1048159702),
    ];
    for (name, x, truth) in exact {
        let rho = if x == 1.0 {
            singlet.clone()
        } else {
            werner_state(x).unwrap()
        };
        let t0 = Instant::now();
        // bypass normalization cost: metric raw via minimize_distance
        let r = minimize_distance(&rho, DistanceMetric::Js, &sched).unwrap();
        println!(
            "{name}: raw={:.3e} truth={:.3e} err={:+.2e} conv={} dt={:?}",
            r.raw_value,
            truth,
            r.raw_value - truth,
            r.converged,
            t0.elapsed()
        );
    }
}
