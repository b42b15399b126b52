//! Binary jumbled pattern matching index.
//!
//! For a fixed length `k`, the one-counts of the length-`k` substrings of a
//! binary text form an integer interval. Storing the minimum and maximum per
//! length therefore answers "is there a substring with exactly `x` ones and
//! `y` zeros" in constant time. The maxima are the prefix counts of the
//! ones-normal form; the minima follow from the zeros-normal form.

use std::fmt;
use std::str::FromStr;

use crate::error::IndexParseError;
use crate::normal::{pnf, Polarity, PrefixCounts};
use crate::word::BinaryWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumbledIndex {
    n: usize,
    min_ones: Vec<usize>,
    max_ones: Vec<usize>,
}

impl JumbledIndex {
    pub fn build(text: &BinaryWord) -> Self {
        let n = text.len();
        let max_ones = PrefixCounts::of(&pnf(text, Polarity::Ones))
            .as_slice()
            .to_vec();
        let zeros_form = PrefixCounts::of(&pnf(text, Polarity::Zeros));
        // ones in the k-prefix of the zeros form = k - (zeros in that prefix)
        let min_ones = zeros_form.as_slice().to_vec();
        debug_assert_eq!(max_ones.len(), n + 1);
        JumbledIndex {
            n,
            min_ones,
            max_ones,
        }
    }

    /// Index from explicit tables. Both must have length `n + 1`.
    pub fn from_tables(min_ones: Vec<usize>, max_ones: Vec<usize>) -> Self {
        assert_eq!(min_ones.len(), max_ones.len());
        assert!(!min_ones.is_empty());
        JumbledIndex {
            n: min_ones.len() - 1,
            min_ones,
            max_ones,
        }
    }

    /// Length of the indexed text.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `(min, max)` ones over all length-`k` substrings.
    pub fn bounds(&self, k: usize) -> Option<(usize, usize)> {
        (k <= self.n).then(|| (self.min_ones[k], self.max_ones[k]))
    }

    pub fn min_ones(&self) -> &[usize] {
        &self.min_ones
    }

    pub fn max_ones(&self) -> &[usize] {
        &self.max_ones
    }

    /// Whether some substring has exactly `x` ones and `y` zeros. The empty
    /// substring always exists; lengths beyond the text give `false`.
    pub fn query(&self, x: usize, y: usize) -> bool {
        match x.checked_add(y).and_then(|k| self.bounds(k)) {
            Some((lo, hi)) => lo <= x && x <= hi,
            None => false,
        }
    }
}

/// Serialized as a header `n=<n>` followed by rows `k,min,max` for `k = 0..=n`.
impl fmt::Display for JumbledIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for k in 0..=self.n {
            writeln!(f, "{},{},{}", k, self.min_ones[k], self.max_ones[k])?;
        }
        Ok(())
    }
}

impl FromStr for JumbledIndex {
    type Err = IndexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(IndexParseError::MissingHeader)?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or(IndexParseError::MissingHeader)?;
        let mut min_ones = Vec::with_capacity(n + 1);
        let mut max_ones = Vec::with_capacity(n + 1);
        for (idx, line) in lines {
            let malformed = |msg: &str| IndexParseError::Malformed {
                line: idx + 1,
                msg: msg.to_string(),
            };
            let fields: Vec<usize> = line
                .trim()
                .split(',')
                .map(|f| f.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| malformed("expected three unsigned integers `k,min,max`"))?;
            let [k, lo, hi] = fields[..] else {
                return Err(malformed("expected three fields `k,min,max`"));
            };
            if k != min_ones.len() {
                return Err(malformed("rows must be numbered 0, 1, 2, ..."));
            }
            if lo > hi || hi > k {
                return Err(malformed("need min <= max <= k"));
            }
            min_ones.push(lo);
            max_ones.push(hi);
        }
        if min_ones.len() != n + 1 {
            return Err(IndexParseError::RowCount {
                expected: n + 1,
                found: min_ones.len(),
            });
        }
        Ok(JumbledIndex {
            n,
            min_ones,
            max_ones,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn example() -> JumbledIndex {
        JumbledIndex::build(&"10011011001001".parse().unwrap())
    }

    #[test]
    fn worked_example() {
        let idx = example();
        assert_eq!(idx.bounds(6), Some((2, 4)));
        assert_eq!(idx.bounds(0), Some((0, 0)));
        assert_eq!(idx.bounds(14), Some((7, 7)));
        assert_eq!(idx.bounds(15), None);
        for (x, y) in [(4, 2), (3, 3), (2, 4)] {
            assert!(idx.query(x, y));
        }
        assert!(!idx.query(5, 1));
        assert!(!idx.query(1, 5));
        assert!(idx.query(0, 0));
        assert!(!idx.query(7, 8));
        assert!(!idx.query(usize::MAX, 1));
    }

    #[test]
    fn empty_text() {
        let idx = JumbledIndex::build(&BinaryWord::new());
        assert!(idx.query(0, 0));
        assert!(!idx.query(1, 0));
        assert_eq!(idx.to_string(), "n=0\n0,0,0\n");
    }

    #[test]
    fn serialization_format() {
        let idx = JumbledIndex::build(&"101".parse().unwrap());
        assert_eq!(idx.to_string(), "n=3\n0,0,0\n1,0,1\n2,1,1\n3,2,2\n");
        assert_eq!(idx.to_string().parse::<JumbledIndex>().unwrap(), idx);
    }

    #[test]
    fn rejects_malformed_files() {
        assert_eq!(
            "".parse::<JumbledIndex>(),
            Err(IndexParseError::MissingHeader)
        );
        assert_eq!(
            "m=3".parse::<JumbledIndex>(),
            Err(IndexParseError::MissingHeader)
        );
        assert!(matches!(
            "n=1\n0,0,0\n".parse::<JumbledIndex>(),
            Err(IndexParseError::RowCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            "n=1\n0,0,0\n1,1,0\n".parse::<JumbledIndex>(),
            Err(IndexParseError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            "n=1\n0,0\n".parse::<JumbledIndex>(),
            Err(IndexParseError::Malformed { line: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn table_shape(bits in prop::collection::vec(any::<bool>(), 0..120)) {
            let text: BinaryWord = bits.into_iter().collect();
            let idx = JumbledIndex::build(&text);
            let n = text.len();
            prop_assert_eq!(idx.bounds(n), Some((text.density(), text.density())));
            for k in 1..=n {
                let (lo, hi) = idx.bounds(k).unwrap();
                let (plo, phi) = idx.bounds(k - 1).unwrap();
                prop_assert!(lo <= hi);
                prop_assert!(lo - plo <= 1 && hi - phi <= 1);
            }
            prop_assert_eq!(idx.to_string().parse::<JumbledIndex>().unwrap(), idx);
        }
    }
}
