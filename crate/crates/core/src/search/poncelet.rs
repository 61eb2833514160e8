use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::kepler::state::{WallRoot, WallState};

/// Rejected samples tolerated per requested start.
const ATTEMPTS_PER_START: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Periodic,
    NotPeriodic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub n: usize,
    pub seed: u64,
    pub starts: Vec<WallState<f64>>,
    /// Distance between each start and its `n`-th image.
    pub closure_distances: Vec<f64>,
    /// `k`-step distance minimised over the starts, for `k = 1 … n − 1`.
    pub min_k_step_distances: Vec<f64>,
    /// Proper divisors `k` of `n` (including 1) with their entry from
    /// `min_k_step_distances`.
    pub divisor_distances: Vec<(usize, f64)>,
    pub verdict: Verdict,
}

impl ClosureReport {
    pub fn max_closure_distance(&self) -> f64 {
        self.closure_distances.iter().copied().fold(0.0, f64::max)
    }
}

/// Draws `num_starts` admissible states (uniform angle on the circle of
/// `A`, random wall root), runs each for `n` steps and decides whether the
/// level set is `n`-periodic.
///
/// Periodic means every `n`-step distance is below `close` while no proper
/// divisor of `n` brings any start back within `divisor`.
pub fn verify_poncelet(p: &SystemParams<f64>, n: usize, num_starts: usize, seed: u64) -> Result<ClosureReport> {
    if n == 0 {
        return Err(Error::UnsupportedPeriod(0));
    }
    p.check_regular()?;
    p.require_r()?;
    let tol = p.tolerances();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = Vec::with_capacity(num_starts);
    let mut attempts = 0;
    while starts.len() < num_starts {
        if attempts == ATTEMPTS_PER_START * num_starts.max(1) {
            return Err(Error::AdmissibleSampleNotFound { attempts });
        }
        attempts += 1;
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let root = if rng.random_bool(0.5) { WallRoot::Plus } else { WallRoot::Minus };
        if let Ok(s) = WallState::from_circle_angle(p, theta, root) {
            starts.push(s);
        }
    }

    let mut closure_distances = Vec::with_capacity(num_starts);
    let mut min_k_step_distances = vec![f64::INFINITY; n.saturating_sub(1)];
    for s in &starts {
        let orbit = s.orbit(p, n)?;
        for (k, m) in min_k_step_distances.iter_mut().enumerate() {
            *m = m.min(s.distance(&orbit[k + 1]));
        }
        closure_distances.push(s.distance(&orbit[n]));
    }
    let divisor_distances: Vec<(usize, f64)> = (1..n)
        .filter(|k| n % k == 0)
        .map(|k| (k, min_k_step_distances[k - 1]))
        .collect();

    let closes = closure_distances.iter().all(|&d| d < tol.close);
    let no_divisor = divisor_distances.iter().all(|&(_, d)| d > tol.divisor);
    Ok(ClosureReport {
        n,
        seed,
        starts,
        closure_distances,
        min_k_step_distances,
        divisor_distances,
        verdict: if closes && no_divisor { Verdict::Periodic } else { Verdict::NotPeriodic },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_three_closes() {
        let rep = verify_poncelet(&SystemParams::new(-5.0 / 24.0, 1.75), 3, 20, 7).unwrap();
        assert_eq!(rep.verdict, Verdict::Periodic);
        assert_eq!(rep.starts.len(), 20);
        assert_eq!(rep.divisor_distances.len(), 1);
    }

    #[test]
    fn generic_parameters_do_not_close() {
        let rep = verify_poncelet(&SystemParams::new(-7.0 / 24.0, 1.75), 3, 20, 7).unwrap();
        assert_eq!(rep.verdict, Verdict::NotPeriodic);
        assert!(rep.closure_distances.iter().all(|&d| d > 1e-4));
    }

    #[test]
    fn period_three_is_not_reported_as_six() {
        let rep = verify_poncelet(&SystemParams::new(-5.0 / 24.0, 1.75), 6, 5, 1).unwrap();
        assert!(rep.max_closure_distance() < 1e-9);
        assert_eq!(rep.verdict, Verdict::NotPeriodic);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let p = SystemParams::new(-31.0 / 140.0, 0.8);
        assert_eq!(verify_poncelet(&p, 6, 8, 42).unwrap(), verify_poncelet(&p, 6, 8, 42).unwrap());
    }

    #[test]
    fn singular_parameters_are_rejected() {
        assert!(verify_poncelet(&SystemParams::new(-1.0 / 3.0, 2.0), 3, 1, 0).is_err());
    }
}
