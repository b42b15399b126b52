//! Counting experiments over prefix normal words.
//!
//! `pnw(n)` is the number of prefix normal words of length `n`. Counts are
//! produced by the generator in counting mode, one density per rayon task,
//! merged in density order.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::BudgetError;
use crate::normal::pnf_critical_prefix_len;
use crate::pngen::generate_pn_fixed_density;
use crate::word::BinaryWord;

/// Largest `n` counted without explicit opt-in.
pub const DEFAULT_MAX_N: usize = 26;
/// Largest `n` accepted with the extended budget.
pub const EXTENDED_MAX_N: usize = 34;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
}

impl Budget {
    pub fn standard() -> Self {
        Budget {
            max_n: DEFAULT_MAX_N,
        }
    }

    pub fn extended() -> Self {
        Budget {
            max_n: EXTENDED_MAX_N,
        }
    }

    pub fn check(&self, n: usize) -> Result<(), BudgetError> {
        if n > self.max_n {
            Err(BudgetError::LengthOverLimit {
                n,
                limit: self.max_n,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::standard()
    }
}

/// Prefix normal words of one length, split by density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnwCount {
    pub n: usize,
    pub per_density: Vec<u64>,
    /// Sum of critical prefix lengths `s + t` over all counted words.
    pub critical_prefix_sum: u64,
}

impl PnwCount {
    pub fn total(&self) -> u64 {
        self.per_density.iter().sum()
    }

    /// Mean `s + t` over the prefix normal words of length `n`.
    pub fn mean_critical_prefix(&self) -> f64 {
        self.critical_prefix_sum as f64 / self.total() as f64
    }
}

fn tally_density(n: usize, d: usize) -> (u64, u64) {
    let mut cr_sum = 0u64;
    let count = generate_pn_fixed_density(n, d, |v| {
        cr_sum += v.node().critical_prefix_len() as u64;
    });
    (count, cr_sum)
}

/// Exact `pnw(n)` with per-density counts.
pub fn count_pnw(n: usize, budget: Budget) -> Result<PnwCount, BudgetError> {
    budget.check(n)?;
    let tallies: Vec<(u64, u64)> = (0..=n)
        .into_par_iter()
        .map(|d| tally_density(n, d))
        .collect();
    Ok(PnwCount {
        n,
        per_density: tallies.iter().map(|t| t.0).collect(),
        critical_prefix_sum: tallies.iter().map(|t| t.1).sum(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PnwRow {
    pub count: PnwCount,
    /// `pnw(n) / pnw(n - 1)`, with `pnw(0) = 1`.
    pub ratio: f64,
}

impl PnwRow {
    pub fn n(&self) -> usize {
        self.count.n
    }

    pub fn pnw(&self) -> u64 {
        self.count.total()
    }

    pub fn mean_critical_prefix(&self) -> f64 {
        self.count.mean_critical_prefix()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PnwSeries {
    pub rows: Vec<PnwRow>,
}

impl PnwSeries {
    /// `n,pnw,ratio,mean_cr`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,pnw,ratio,mean_cr\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{:.6},{:.6}",
                row.n(),
                row.pnw(),
                row.ratio,
                row.mean_critical_prefix()
            )
            .unwrap();
        }
        out
    }

    /// `n,d,count`
    pub fn per_density_csv(&self) -> String {
        let mut out = String::from("n,d,count\n");
        for row in &self.rows {
            for (d, c) in row.count.per_density.iter().enumerate() {
                writeln!(out, "{},{},{}", row.n(), d, c).unwrap();
            }
        }
        out
    }
}

/// Counts for every `n = 1..=max_n`.
pub fn series(max_n: usize, budget: Budget) -> Result<PnwSeries, BudgetError> {
    budget.check(max_n)?;
    let mut rows = Vec::with_capacity(max_n);
    let mut previous = 1u64;
    for n in 1..=max_n {
        let count = count_pnw(n, budget)?;
        let total = count.total();
        rows.push(PnwRow {
            ratio: total as f64 / previous as f64,
            count,
        });
        previous = total;
    }
    Ok(PnwSeries { rows })
}

/// Monte Carlo estimate of the expected critical prefix length of the
/// prefix normal form of a uniformly random word.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomPnfSample {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub mean: f64,
    pub std_error: f64,
}

impl RandomPnfSample {
    /// `n,samples,seed,mean_z,std_error`
    pub fn to_csv(&self) -> String {
        format!(
            "n,samples,seed,mean_z,std_error\n{},{},{},{:.6},{:.6}\n",
            self.n, self.samples, self.seed, self.mean, self.std_error
        )
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BinaryWord {
    let mut word = BinaryWord::new();
    let mut remaining = n;
    while remaining > 0 {
        let chunk: u64 = rng.random();
        let take = remaining.min(64);
        for k in 0..take {
            word.push((chunk >> k) & 1 == 1);
        }
        remaining -= take;
    }
    word
}

/// Draws `samples` uniform words of length `n` from a ChaCha8 stream seeded
/// with `seed`. Sums are kept in integers, so the report is bit-identical
/// for a given seed.
pub fn random_pnf_experiment(n: usize, samples: u64, seed: u64) -> RandomPnfSample {
    assert!(samples >= 1, "at least one sample is required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    for _ in 0..samples {
        let z = pnf_critical_prefix_len(&random_word(&mut rng, n)) as u128;
        sum += z;
        sum_sq += z * z;
    }
    let m = samples as f64;
    let mean = sum as f64 / m;
    let std_error = if samples > 1 {
        // integer numerator avoids cancellation
        let num = samples as u128 * sum_sq - sum * sum;
        let var = num as f64 / (m * (m - 1.0));
        (var / m).sqrt()
    } else {
        0.0
    };
    RandomPnfSample {
        n,
        samples,
        seed,
        mean,
        std_error,
    }
}
