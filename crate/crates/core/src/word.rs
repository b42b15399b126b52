//! Packed binary words.
//!
//! A [`BinaryWord`] stores its symbols in 64-bit blocks. Position 0 holds
//! the first symbol `w_1`, and the textual form prints `w_1` first.

use std::fmt;
use std::str::FromStr;

use crate::error::WordError;

const BLOCK: usize = 64;

/// A finite word over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryWord {
    // Invariant: bits at positions >= len are zero, so derived Eq/Hash are sound.
    blocks: Vec<u64>,
    len: usize,
}

impl BinaryWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            blocks: vec![0; len.div_ceil(BLOCK)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self::zeros(len);
        for b in &mut w.blocks {
            *b = u64::MAX;
        }
        w.clear_tail();
        w
    }

    /// `1^ones 0^zeros`
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Self {
        let mut w = Self::zeros(ones + zeros);
        for i in 0..ones {
            w.set(i, true);
        }
        w
    }

    /// Builds a word from 0/1 bytes. Any non-zero byte counts as a 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        bits.iter().map(|&b| b != 0).collect()
    }

    /// The low `len` bits of `value`, most significant first, so that
    /// `from_u64(0b1100, 4)` is `1100`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= BLOCK, "from_u64 supports at most 64 symbols");
        (0..len)
            .map(|k| (value >> (len - 1 - k)) & 1 == 1)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at 0-based position `i`. Panics when out of range, like slice indexing.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "position {i} out of range for length {}",
            self.len
        );
        (self.blocks[i / BLOCK] >> (i % BLOCK)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i < self.len,
            "position {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % BLOCK);
        if bit {
            self.blocks[i / BLOCK] |= mask;
        } else {
            self.blocks[i / BLOCK] &= !mask;
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(BLOCK) {
            self.blocks.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    /// Number of 1 symbols.
    pub fn density(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Exchanges every 0 with 1.
    pub fn complement(&self) -> Self {
        let mut w = Self {
            blocks: self.blocks.iter().map(|b| !b).collect(),
            len: self.len,
        };
        w.clear_tail();
        w
    }

    /// Exchanges the symbols at 0-based positions `i` and `j` in place.
    /// Applying the same swap twice restores the word.
    pub fn swap(&mut self, i: usize, j: usize) -> Result<(), WordError> {
        for k in [i, j] {
            if k >= self.len {
                return Err(WordError::PositionOutOfRange {
                    pos: k,
                    len: self.len,
                });
            }
        }
        let (a, b) = (self.get(i), self.get(j));
        self.set(i, b);
        self.set(j, a);
        Ok(())
    }

    /// Copy of the word with positions `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Result<Self, WordError> {
        let mut w = self.clone();
        w.swap(i, j)?;
        Ok(w)
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BinaryWord) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    /// Subword of positions `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        (start..end).map(|i| self.get(i)).collect()
    }

    fn clear_tail(&mut self) {
        let used = self.len % BLOCK;
        if used != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl FromIterator<bool> for BinaryWord {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut w = BinaryWord::new();
        for b in iter {
            w.push(b);
        }
        w
    }
}

impl FromStr for BinaryWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(WordError::InvalidSymbol { pos, ch }),
            })
            .collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord(\"{self}\")")
    }
}

/// Renders a 0/1 byte slice in the textual word format.
pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b != 0 { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("1001010").to_string(), "1001010");
        assert_eq!(w("").len(), 0);
        assert_eq!(w("").to_string(), "");
        assert_eq!(
            "10x1".parse::<BinaryWord>(),
            Err(WordError::InvalidSymbol { pos: 2, ch: 'x' })
        );
    }

    #[test]
    fn density_across_blocks() {
        let word = BinaryWord::ones(130);
        assert_eq!(word.density(), 130);
        assert_eq!(word.complement(), BinaryWord::zeros(130));
        assert_eq!(BinaryWord::ones_then_zeros(3, 2).to_string(), "11100");
    }

    #[test]
    fn from_u64_is_msb_first() {
        assert_eq!(BinaryWord::from_u64(0b1100, 4).to_string(), "1100");
        assert_eq!(BinaryWord::from_u64(1, 5).to_string(), "00001");
    }

    #[test]
    fn swap_examples() {
        // positions 2 and 3 in 1-based terms
        assert_eq!(w("1100").swapped(1, 2).unwrap(), w("1010"));
        let x = w("10110");
        assert_eq!(x.swapped(3, 3).unwrap(), x);
        assert_eq!(
            x.swapped(0, 5),
            Err(WordError::PositionOutOfRange { pos: 5, len: 5 })
        );
    }

    #[test]
    fn complement_keeps_tail_clear() {
        let a = w("101");
        let b = a.complement().complement();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn swap_is_an_involution(bits in prop::collection::vec(any::<bool>(), 1..200), i in 0usize..200, j in 0usize..200) {
            let word: BinaryWord = bits.iter().copied().collect();
            let (i, j) = (i % word.len(), j % word.len());
            let back = word.swapped(i, j).unwrap().swapped(i, j).unwrap();
            prop_assert_eq!(back, word);
        }

        #[test]
        fn text_round_trip(bits in prop::collection::vec(any::<bool>(), 0..200)) {
            let word: BinaryWord = bits.iter().copied().collect();
            prop_assert_eq!(word.to_string().parse::<BinaryWord>().unwrap(), word.clone());
            prop_assert_eq!(word.density(), bits.iter().filter(|&&b| b).count());
        }
    }
}
