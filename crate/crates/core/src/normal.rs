//! Prefix and substring one-counts, prefix normality, and prefix normal forms.
//!
//! For a word `w` of length `n` and `0 <= i <= n`:
//!
//! * `P(w, i)` is the number of 1s in the length-`i` prefix,
//! * `F(w, i)` is the largest number of 1s in any length-`i` substring.
//!
//! A word is prefix normal when `F(w, i) = P(w, i)` for every `i`. Every word
//! has a unique prefix normal form sharing its `F` function. Everything here
//! is the quadratic reference path; the generator in [`crate::pngen`] never
//! calls into it.

use crate::error::WordError;
use crate::word::BinaryWord;

/// `p[i] = P(w, i)` for `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCounts(Vec<usize>);

impl PrefixCounts {
    pub fn of(w: &BinaryWord) -> Self {
        let mut p = Vec::with_capacity(w.len() + 1);
        let mut acc = 0;
        p.push(0);
        for bit in w.iter() {
            acc += usize::from(bit);
            p.push(acc);
        }
        PrefixCounts(p)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Length of the underlying word.
    pub fn word_len(&self) -> usize {
        self.0.len() - 1
    }

    /// Ones in `w[start..start + len]` (0-based, half open).
    fn window(&self, start: usize, len: usize) -> usize {
        self.0[start + len] - self.0[start]
    }
}

/// `f[i] = F(w, i)` for `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxOnesTable(Vec<usize>);

impl MaxOnesTable {
    /// Per-length sliding-window scan, `O(n^2)` overall.
    pub fn of(w: &BinaryWord) -> Self {
        let p = PrefixCounts::of(w);
        let n = w.len();
        MaxOnesTable((0..=n).map(|len| window_max(&p, len)).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }
}

fn window_max(p: &PrefixCounts, len: usize) -> usize {
    (0..=p.word_len() - len)
        .map(|start| p.window(start, len))
        .max()
        .unwrap_or(0)
}

fn check_len(w: &BinaryWord, i: usize) -> Result<(), WordError> {
    if i > w.len() {
        Err(WordError::IndexOutOfRange {
            index: i,
            len: w.len(),
        })
    } else {
        Ok(())
    }
}

/// `P(w, i)`: ones among `w_1..w_i`.
pub fn prefix_ones(w: &BinaryWord, i: usize) -> Result<usize, WordError> {
    check_len(w, i)?;
    Ok((0..i).filter(|&k| w.get(k)).count())
}

/// `F(w, i)`: the maximum number of ones over all length-`i` windows.
pub fn max_ones(w: &BinaryWord, i: usize) -> Result<usize, WordError> {
    check_len(w, i)?;
    Ok(window_max(&PrefixCounts::of(w), i))
}

/// Brute-force test: no substring has more ones than the prefix of the same length.
pub fn is_prefix_normal(w: &BinaryWord) -> bool {
    let p = PrefixCounts::of(w);
    (1..=w.len()).all(|len| window_max(&p, len) == p.get(len))
}

/// A word written as `1^s 0^t γ` where `γ` is empty or starts with 1.
///
/// The all-ones word `1^n` has no first 0-run; it is represented as
/// `(n, 0, ε)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPrefix {
    pub s: usize,
    pub t: usize,
    pub gamma: BinaryWord,
}

impl CriticalPrefix {
    /// `cr(w) = s + t`.
    pub fn len(&self) -> usize {
        self.s + self.t
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reassemble(&self) -> BinaryWord {
        BinaryWord::ones_then_zeros(self.s, self.t).concat(&self.gamma)
    }
}

pub fn critical_prefix(w: &BinaryWord) -> CriticalPrefix {
    let n = w.len();
    let s = w.iter().take_while(|&b| b).count();
    let t = w.iter().skip(s).take_while(|&b| !b).count();
    CriticalPrefix {
        s,
        t,
        gamma: w.slice(s + t, n),
    }
}

/// Which symbol the normal form maximises in prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Ones,
    Zeros,
}

/// Prefix normal form of `w` with respect to `polarity`.
///
/// For ones, `w'_i = 1` exactly when `F(w, i) - F(w, i - 1) = 1`. The zeros
/// form is the complement of the ones form of the complement.
pub fn pnf(w: &BinaryWord, polarity: Polarity) -> BinaryWord {
    match polarity {
        Polarity::Ones => {
            let f = MaxOnesTable::of(w);
            f.as_slice().windows(2).map(|d| d[1] > d[0]).collect()
        }
        Polarity::Zeros => pnf(&w.complement(), Polarity::Ones).complement(),
    }
}

/// Critical prefix length of `pnf(w, Ones)` in linear time.
///
/// The ones form starts with `1^s` where `s` is the longest 1-run of `w`.
/// Its next 1 sits at the shortest window length holding `s + 1` ones, so
/// only that one window length has to be found.
pub fn pnf_critical_prefix_len(w: &BinaryWord) -> usize {
    let n = w.len();
    let positions: Vec<usize> = (0..n).filter(|&i| w.get(i)).collect();
    let mut longest = 0;
    let mut run = 0;
    for bit in w.iter() {
        run = if bit { run + 1 } else { 0 };
        longest = longest.max(run);
    }
    if positions.len() == longest {
        // all ones in one run (or none): the form is 1^s 0^(n-s)
        return n;
    }
    let k = longest + 1;
    let shortest = positions
        .windows(k)
        .map(|win| win[k - 1] - win[0] + 1)
        .min()
        .expect("density exceeds the longest run");
    shortest - 1
}
