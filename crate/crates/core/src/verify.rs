//! Self-check suites run by `pnw verify`.
//!
//! Each suite checks one length `n` and stops at the first failure.

use std::collections::HashSet;
use std::fmt;

use crate::error::BudgetError;
use crate::normal::is_prefix_normal;
use crate::pngen::{
    generate_pn_fixed_density, generate_pn_fixed_density_with, Order, PnOracle, WorkCounters,
};
use crate::word::{bits_to_string, BinaryWord};

/// Work per word may not exceed this multiple of `n`.
pub const AMORTIZED_FACTOR: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Generated words equal the brute-force filtered words, per density.
    Oracle,
    /// Adjacent listed words differ in at most four positions.
    GrayCode,
    /// Replacing the first `01` of a prefix normal word by `10` keeps it prefix normal.
    Bubble,
    /// Instrumented work per word stays below `AMORTIZED_FACTOR * n`.
    Amortized,
}

impl Mode {
    /// Largest `n` the suite accepts.
    pub fn limit(self) -> usize {
        match self {
            Mode::Oracle | Mode::Bubble => 20,
            Mode::GrayCode | Mode::Amortized => crate::stats::DEFAULT_MAX_N,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}: {}", self.n, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass(String),
    Fail(Failure),
}

pub fn run(mode: Mode, n: usize) -> Result<Outcome, BudgetError> {
    if n > mode.limit() {
        return Err(BudgetError::LengthOverLimit {
            n,
            limit: mode.limit(),
        });
    }
    let result = match mode {
        Mode::Oracle => oracle(n),
        Mode::GrayCode => gray_code(n),
        Mode::Bubble => bubble(n),
        Mode::Amortized => amortized(n).map(|(work, words)| {
            format!(
                "{work} steps for {words} words ({:.3} per word)",
                work as f64 / words as f64
            )
        }),
    };
    Ok(match result {
        Ok(summary) => Outcome::Pass(summary),
        Err(message) => Outcome::Fail(Failure { n, message }),
    })
}

fn all_words(n: usize) -> impl Iterator<Item = BinaryWord> {
    (0..1u64 << n).map(move |v| BinaryWord::from_u64(v, n))
}

fn oracle(n: usize) -> Result<String, String> {
    let mut brute: Vec<HashSet<BinaryWord>> = vec![HashSet::new(); n + 1];
    for w in all_words(n).filter(is_prefix_normal) {
        brute[w.density()].insert(w);
    }
    let mut total = 0;
    for (d, expected) in brute.iter().enumerate() {
        let mut got = HashSet::new();
        let mut dup = None;
        generate_pn_fixed_density(n, d, |v| {
            if !got.insert(v.to_word()) {
                dup.get_or_insert_with(|| v.to_string());
            }
        });
        if let Some(w) = dup {
            return Err(format!("density {d}: {w} generated twice"));
        }
        if let Some(w) = got.difference(expected).next() {
            return Err(format!("density {d}: generated {w} is not prefix normal"));
        }
        if let Some(w) = expected.difference(&got).next() {
            return Err(format!("density {d}: prefix normal {w} was not generated"));
        }
        total += got.len();
    }
    Ok(format!("{total} words match the brute-force filter"))
}

fn distance(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Streams one listing and checks adjacent pairs without storing it.
fn check_listing(n: usize, order: Order, cyclic: bool) -> Result<usize, String> {
    let mut first: Option<Vec<u8>> = None;
    let mut prev: Vec<u8> = Vec::new();
    let mut error = None;
    let mut count = 0;
    for d in order.densities(n) {
        let mut block_start = true;
        generate_pn_fixed_density(n, d, |v| {
            let bits = v.bits();
            if error.is_none() {
                if first.is_none() {
                    first = Some(bits.to_vec());
                } else if distance(&prev, bits) > 4 {
                    error = Some(format!(
                        "{} -> {} differ in more than 4 positions",
                        bits_to_string(&prev),
                        v
                    ));
                } else if !block_start && bits.iter().filter(|&&b| b == 1).count() != d {
                    error = Some(format!("{v} breaks density block {d}"));
                }
            }
            block_start = false;
            prev.clear();
            prev.extend_from_slice(bits);
            count += 1;
        });
    }
    if let Some(e) = error {
        return Err(e);
    }
    if cyclic {
        if let Some(first) = first {
            if distance(&prev, &first) > 4 {
                return Err(format!(
                    "wraparound {} -> {} differs in more than 4 positions",
                    bits_to_string(&prev),
                    bits_to_string(&first)
                ));
            }
        }
    }
    Ok(count)
}

fn gray_code(n: usize) -> Result<String, String> {
    for d in 0..=n {
        check_listing_block(n, d)?;
    }
    let words = check_listing(n, Order::DensityIncreasing, false)?;
    check_listing(n, Order::CyclicOddEven, true)?;
    Ok(format!(
        "{words} words in both orders, every block a Gray code"
    ))
}

fn check_listing_block(n: usize, d: usize) -> Result<(), String> {
    let mut prev: Option<Vec<u8>> = None;
    let mut error = None;
    generate_pn_fixed_density(n, d, |v| {
        if let Some(p) = &prev {
            if error.is_none() && distance(p, v.bits()) > 4 {
                error = Some(format!("density {d}: {} -> {v}", bits_to_string(p)));
            }
        }
        prev = Some(v.bits().to_vec());
    });
    error.map_or(Ok(()), Err)
}

/// Replaces the first `01` by `10`, if any.
pub fn bubble_up(w: &BinaryWord) -> Option<BinaryWord> {
    let k = (1..w.len()).find(|&k| !w.get(k - 1) && w.get(k))?;
    Some(w.swapped(k - 1, k).expect("positions in range"))
}

fn bubble(n: usize) -> Result<String, String> {
    let mut checked = 0;
    for w in all_words(n).filter(is_prefix_normal) {
        if let Some(up) = bubble_up(&w) {
            if !is_prefix_normal(&up) {
                return Err(format!("{w} -> {up} is not prefix normal"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} prefix normal words closed under the first 01 -> 10 move"
    ))
}

/// Total instrumented work and word count over all densities of length `n`.
pub fn amortized_work(n: usize) -> (WorkCounters, u64) {
    let mut total = WorkCounters::default();
    let mut words = 0;
    for d in 0..=n {
        let mut oracle = PnOracle::new(n);
        words += generate_pn_fixed_density_with(&mut oracle, n, d, |_| {});
        total.add(&oracle.counters());
    }
    (total, words)
}

fn amortized(n: usize) -> Result<(u64, u64), String> {
    let (work, words) = amortized_work(n);
    let work = work.total();
    let bound = AMORTIZED_FACTOR * n.max(1) as u64 * words;
    if work > bound {
        Err(format!(
            "{work} steps for {words} words exceeds {AMORTIZED_FACTOR}n per word"
        ))
    } else {
        Ok((work, words))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_modes_pass_at_twelve() {
        for mode in [Mode::Oracle, Mode::GrayCode, Mode::Bubble, Mode::Amortized] {
            match run(mode, 12).unwrap() {
                Outcome::Pass(_) => {}
                Outcome::Fail(f) => panic!("{mode:?}: {f}"),
            }
        }
    }

    #[test]
    fn guards() {
        assert!(run(Mode::Oracle, 21).is_err());
        assert!(run(Mode::Amortized, 27).is_err());
    }

    #[test]
    fn bubble_up_examples() {
        let w = |s: &str| s.parse::<BinaryWord>().unwrap();
        assert_eq!(bubble_up(&w("11010")), Some(w("11100")));
        assert_eq!(bubble_up(&w("10101")), Some(w("11001")));
        assert_eq!(bubble_up(&w("1100")), None);
    }
}
