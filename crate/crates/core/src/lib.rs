//! Prefix normal words: generation in cool-lex Gray code order, prefix
//! normal forms, and the binary jumbled pattern matching index they induce.
//!
//! A binary word is prefix normal when no substring has more 1s than the
//! prefix of the same length. The set of such words is closed under
//! replacing the first `01` with `10`, which lets the recursive swap
//! traversal in [`bubble`] enumerate it with an incremental child test
//! ([`pngen`]).
//!
//! ```
//! use pnw_core::pngen::{generate_pn_all, Order};
//!
//! let mut words = Vec::new();
//! generate_pn_all(4, Order::DensityIncreasing, |w| words.push(w.to_string()));
//! assert_eq!(words, ["0000", "1000", "1010", "1001", "1100", "1101", "1110", "1111"]);
//! ```

pub mod bubble;
pub mod error;
pub mod jpm;
pub mod normal;
pub mod pngen;
pub mod stats;
pub mod verify;
pub mod word;

pub use error::{BudgetError, IndexParseError, WordError};
pub use jpm::JumbledIndex;
pub use normal::{
    critical_prefix, is_prefix_normal, max_ones, pnf, prefix_ones, CriticalPrefix, Polarity,
};
pub use word::BinaryWord;
