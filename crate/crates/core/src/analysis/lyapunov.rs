use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::report::KeyValue;
use super::spectral::ln_biguint;
use crate::error::{Error, Result};
use crate::matrix::{Integers, Mat2};

/// Empirical growth rate of the largest entry along random products.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LyapunovReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Mean over trials of `ln(max_abs_entry) / n`.
    pub mean_log_max_entry_over_n: f64,
}

impl KeyValue for LyapunovReport {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n", self.n.to_string()),
            ("trials", self.trials.to_string()),
            ("seed", self.seed.to_string()),
            (
                "mean_log_max_entry_over_n",
                format!("{:.9}", self.mean_log_max_entry_over_n),
            ),
            (
                "growth_rate",
                format!("{:.6}", self.mean_log_max_entry_over_n.exp()),
            ),
        ]
    }
}

/// Multiplies `n` uniformly chosen generators per trial. Trial `i` draws
/// from ChaCha stream `i` under `seed`, so the report is identical however
/// the trials are scheduled.
pub fn random_growth(
    gens: &[Mat2<Integers>],
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<LyapunovReport> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    if trials == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "n and trials must be at least 1".into(),
        ));
    }
    let logs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let m = (0..n).fold(Mat2::identity(&Integers), |acc, _| {
                acc.mul_same_ring(&gens[rng.gen_range(0..gens.len())])
            });
            ln_biguint(&m.max_abs_entry()) / n as f64
        })
        .collect();
    let mean = logs.iter().sum::<f64>() / trials as f64;
    Ok(LyapunovReport {
        n,
        trials,
        seed,
        mean_log_max_entry_over_n: mean,
    })
}
