//! Generation of prefix normal words in cool-lex order.
//!
//! Prefix normal words of one density form a subtree of the swap
//! computation tree (see [`crate::bubble`]), so the traversal only needs to
//! decide, for an accepted node `w = 1^s 0^t γ`, whether child
//! `swap(w, s, s + i)` is still prefix normal. With `γ̄ = γ 0^(s+t)` the
//! child is rejected exactly when
//!
//! 1. some length `s + i - 1` window of `γ̄` holds at least `s` ones, or
//! 2. `P(γ̄, s + 2(i - 1) - t) >= s - 1` (non-positive lengths count 0).
//!
//! Both are O(1) given `F(γ, ·)` and a running prefix count `z`. The table
//! is derived from the parent's in time `s + t` when entering a node, since
//! for `γ' = 1 0^r γ` we have `F(γ', j) = max(P(γ', j), F(γ, min(j, |γ|)))`.

use crate::bubble::{ChildOracle, GenNode, SwapGenerator, WordView};
use crate::word::BinaryWord;

/// `F(γ, ·)` for the current node, valid up to its critical prefix length,
/// with an undo journal per open node.
#[derive(Debug, Clone)]
pub struct FTable {
    f: Vec<usize>,
    journal: Vec<(usize, usize)>,
    marks: Vec<usize>,
}

impl FTable {
    /// All-zero table for words of length `n`, i.e. `F(ε, ·)`.
    pub fn new(n: usize) -> Self {
        FTable {
            f: vec![0; n + 1],
            journal: Vec::new(),
            marks: Vec::new(),
        }
    }

    #[inline]
    pub fn get(&self, len: usize) -> usize {
        self.f[len]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.f
    }

    /// Open nodes whose update has not been restored yet.
    pub fn depth(&self) -> usize {
        self.marks.len()
    }

    /// Moves the table from a suffix `γ` to `γ' = 1 0^r γ`, where `gamma`
    /// holds `γ'` (positions past its end read as 0). Entries `1..=bound`
    /// become `max(P(γ', j), F(γ, j))`; every overwritten entry is
    /// journaled. Returns the number of entries examined.
    pub fn update(&mut self, gamma: &[u8], bound: usize) -> usize {
        assert!(bound < self.f.len(), "bound {bound} exceeds table length");
        self.marks.push(self.journal.len());
        let mut ones = 0;
        for j in 1..=bound {
            ones += usize::from(gamma.get(j - 1).copied().unwrap_or(0));
            if ones > self.f[j] {
                self.journal.push((j, self.f[j]));
                self.f[j] = ones;
            }
        }
        bound
    }

    /// Undoes the most recent unrestored [`update`](Self::update). Returns
    /// the number of entries rewritten.
    ///
    /// Panics if no update is open.
    pub fn restore(&mut self) -> usize {
        let mark = self
            .marks
            .pop()
            .expect("FTable::restore without a matching update");
        let undone = self.journal.len() - mark;
        for (j, old) in self.journal.drain(mark..).rev() {
            self.f[j] = old;
        }
        undone
    }
}

/// Work performed by one generation run, in unit steps.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct WorkCounters {
    pub f_update_steps: u64,
    pub f_restore_steps: u64,
    pub z_init_steps: u64,
    pub z_updates: u64,
    pub membership_tests: u64,
}

impl WorkCounters {
    pub fn total(&self) -> u64 {
        self.f_update_steps
            + self.f_restore_steps
            + self.z_init_steps
            + self.z_updates
            + self.membership_tests
    }

    pub fn add(&mut self, other: &WorkCounters) {
        self.f_update_steps += other.f_update_steps;
        self.f_restore_steps += other.f_restore_steps;
        self.z_init_steps += other.z_init_steps;
        self.z_updates += other.z_updates;
        self.membership_tests += other.membership_tests;
    }
}

/// `γ̄` at 1-based position `k` for node `node`; non-positive positions and
/// padding read as 0.
#[inline]
fn padded_gamma(word: &[u8], node: GenNode, k: isize) -> usize {
    if k < 1 {
        return 0;
    }
    word.get(node.gamma_start + k as usize - 1)
        .map_or(0, |&b| usize::from(b))
}

/// Prefix length `s + 2(i - 1) - t` used by the second rejection condition.
#[inline]
fn second_condition_len(node: GenNode, i: usize) -> isize {
    node.s as isize + 2 * (i as isize - 1) - node.t as isize
}

/// The prefix normal child test as a [`ChildOracle`].
///
/// `z` holds `P(γ̄, s + 2(i - 1) - t)` for the child index about to be
/// tested. With `checked` set, every test also recomputes `z` and the
/// table from scratch and panics on a mismatch.
#[derive(Debug, Clone)]
pub struct PnOracle {
    table: FTable,
    // one z per open node; a child's subtree overwrites nothing of ours
    z_stack: Vec<usize>,
    counters: WorkCounters,
    checked: bool,
}

impl PnOracle {
    pub fn new(n: usize) -> Self {
        PnOracle {
            table: FTable::new(n),
            z_stack: Vec::new(),
            counters: WorkCounters::default(),
            checked: false,
        }
    }

    /// Oracle that cross-checks its incremental state on every test.
    pub fn checked(n: usize) -> Self {
        PnOracle {
            checked: true,
            ..Self::new(n)
        }
    }

    pub fn counters(&self) -> WorkCounters {
        self.counters
    }

    pub fn table(&self) -> &FTable {
        &self.table
    }

    fn check_state(&self, word: &[u8], node: GenNode, i: usize, z: usize) {
        let len = second_condition_len(node, i);
        let expect: usize = (1..=len).map(|k| padded_gamma(word, node, k)).sum();
        assert_eq!(z, expect, "z out of sync at node {node:?}, child {i}");
        let gamma = &word[node.gamma_start..];
        for j in 0..=node.critical_prefix_len() {
            let m = j.min(gamma.len());
            let brute = (0..=gamma.len() - m)
                .map(|a| {
                    gamma[a..a + m]
                        .iter()
                        .map(|&b| usize::from(b))
                        .sum::<usize>()
                })
                .max()
                .unwrap_or(0);
            assert_eq!(
                self.table.get(j),
                brute,
                "F({j}) out of sync at node {node:?}"
            );
        }
    }
}

/// Pure form of the child test. `f_value` is `F(γ̄, s + i - 1)` and `z` is
/// `P(γ̄, s + 2(i - 1) - t)`.
#[inline]
pub fn is_pn_child(s: usize, f_value: usize, z: usize) -> bool {
    debug_assert!(s > 0);
    !(f_value >= s || z + 1 >= s)
}

impl ChildOracle for PnOracle {
    fn enter(&mut self, word: &[u8], node: GenNode) {
        let bound = node.critical_prefix_len();
        self.counters.f_update_steps += self.table.update(&word[node.gamma_start..], bound) as u64;
        // z <- P(γ̄, s - t)
        let init_len = node.s as isize - node.t as isize;
        let z = (1..=init_len).map(|k| padded_gamma(word, node, k)).sum();
        self.counters.z_init_steps += init_len.max(0) as u64;
        self.z_stack.push(z);
    }

    #[inline]
    fn accepts(&mut self, word: &[u8], node: GenNode, i: usize) -> bool {
        self.counters.membership_tests += 1;
        let z = *self.z_stack.last().expect("accepts outside a node");
        if self.checked {
            self.check_state(word, node, i, z);
        }
        is_pn_child(node.s, self.table.get(node.s + i - 1), z)
    }

    #[inline]
    fn accepted(&mut self, word: &[u8], node: GenNode, i: usize) {
        self.counters.z_updates += 1;
        let len = second_condition_len(node, i);
        debug_assert!(len + 2 <= word.len() as isize);
        let step = padded_gamma(word, node, len + 1) + padded_gamma(word, node, len + 2);
        *self.z_stack.last_mut().expect("accepted outside a node") += step;
    }

    fn leave(&mut self, _word: &[u8], _node: GenNode) {
        self.z_stack.pop();
        self.counters.f_restore_steps += self.table.restore() as u64;
    }
}

/// Visits the prefix normal words of length `n` and density `d` in
/// cool-lex order; the last one is `1^d 0^(n-d)`. Returns the count.
pub fn generate_pn_fixed_density<V>(n: usize, d: usize, visit: V) -> u64
where
    V: FnMut(WordView<'_>),
{
    generate_pn_fixed_density_with(&mut PnOracle::new(n), n, d, visit)
}

/// Same as [`generate_pn_fixed_density`] with a caller-supplied oracle, so
/// that counters or checked mode can be inspected afterwards.
pub fn generate_pn_fixed_density_with<V>(oracle: &mut PnOracle, n: usize, d: usize, visit: V) -> u64
where
    V: FnMut(WordView<'_>),
{
    let mut gen = SwapGenerator::fixed_density(n, d);
    let count = gen.run(d, n - d, oracle, visit);
    debug_assert_eq!(oracle.table.depth(), 0);
    count
}

/// Order of density blocks when listing every length-`n` prefix normal word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    /// Densities `0, 1, ..., n`.
    DensityIncreasing,
    /// Odd densities ascending, then even densities descending. The result
    /// is a cyclic Gray code.
    CyclicOddEven,
}

impl Order {
    pub fn densities(self, n: usize) -> Vec<usize> {
        match self {
            Order::DensityIncreasing => (0..=n).collect(),
            Order::CyclicOddEven => (1..=n)
                .step_by(2)
                .chain((0..=n).rev().filter(|d| d % 2 == 0))
                .collect(),
        }
    }
}

/// Visits every prefix normal word of length `n`, one density block after
/// another, each block with a fresh table. Returns the total count.
pub fn generate_pn_all<V>(n: usize, order: Order, mut visit: V) -> u64
where
    V: FnMut(WordView<'_>),
{
    order
        .densities(n)
        .into_iter()
        .map(|d| generate_pn_fixed_density(n, d, &mut visit))
        .sum()
}

/// Collects [`generate_pn_all`] into owned words. Only for small `n`.
pub fn list_pn(n: usize, order: Order) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    generate_pn_all(n, order, |v| out.push(v.to_word()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble::verify_fixed_density_gray_code;
    use crate::normal::{is_prefix_normal, max_ones};
    use std::collections::HashSet;

    fn strings(words: &[BinaryWord]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    fn bits(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn update_from_empty_suffix() {
        let mut table = FTable::new(4);
        table.update(&bits("10"), 2);
        assert_eq!(&table.as_slice()[..3], &[0, 1, 1]);
    }

    #[test]
    fn update_matches_brute_force_on_10101() {
        // γ = 101 -> γ' = 10101
        let gamma = "101".parse::<BinaryWord>().unwrap();
        let mut table = FTable::new(7);
        for j in 1..=7 {
            table.f[j] = max_ones(&gamma, j.min(3)).unwrap();
        }
        table.update(&bits("10101"), 5);
        let next: BinaryWord = "10101".parse().unwrap();
        let brute: Vec<usize> = (1..=5).map(|j| max_ones(&next, j).unwrap()).collect();
        assert_eq!(brute, [1, 1, 2, 2, 3]);
        assert_eq!(&table.as_slice()[1..=5], &brute[..]);
    }

    #[test]
    fn prefix_dominates_when_larger() {
        let mut table = FTable::new(6);
        table.update(&bits("111"), 3);
        assert_eq!(&table.as_slice()[1..=3], &[1, 2, 3]);
    }

    #[test]
    fn update_then_restore_is_identity() {
        let mut table = FTable::new(8);
        table.update(&bits("1001"), 6);
        let before = table.as_slice().to_vec();
        table.update(&bits("1101001"), 5);
        assert_ne!(table.as_slice(), &before[..]);
        table.restore();
        assert_eq!(table.as_slice(), &before[..]);
        table.restore();
        assert!(table.as_slice().iter().all(|&x| x == 0));
    }

    #[test]
    #[should_panic(expected = "without a matching update")]
    fn unbalanced_restore_panics() {
        FTable::new(3).restore();
    }

    #[test]
    fn nested_updates_unwind_against_recomputation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 24;
        for _ in 0..200 {
            let mut table = FTable::new(n);
            let mut snapshots = vec![table.as_slice().to_vec()];
            // grow γ by prefixing 1 0^r, as the generator does
            let mut gamma: Vec<u8> = Vec::new();
            while gamma.len() + 2 < n && rng.random_bool(0.8) {
                let r = rng.random_range(0..3);
                let mut next = vec![1u8];
                next.extend(std::iter::repeat_n(0, r));
                next.extend(&gamma);
                if next.len() > n - 1 {
                    break;
                }
                gamma = next;
                table.update(&gamma, n - gamma.len().min(n - 1));
                snapshots.push(table.as_slice().to_vec());
            }
            while table.depth() > 0 {
                snapshots.pop();
                table.restore();
                assert_eq!(table.as_slice(), &snapshots.last().unwrap()[..]);
            }
        }
    }

    #[test]
    fn child_test_examples() {
        // 11010 = 1^2 0^1 (10): γ̄ = 10000, F(γ̄, 2) = 1, z = P(γ̄, 1) = 1
        assert!(!is_pn_child(2, 1, 1));
        // 11000: γ = ε, all children pass
        for _ in 1..=3 {
            assert!(is_pn_child(2, 0, 0));
        }
    }

    #[test]
    fn child_test_agrees_with_brute_force() {
        struct Audit {
            inner: PnOracle,
            checked: u64,
        }
        impl ChildOracle for Audit {
            fn enter(&mut self, word: &[u8], node: GenNode) {
                self.inner.enter(word, node)
            }
            fn accepts(&mut self, word: &[u8], node: GenNode, i: usize) -> bool {
                let fast = self.inner.accepts(word, node, i);
                let (a, b) = node.swap_positions(i);
                let child = BinaryWord::from_bits(word).swapped(a, b).unwrap();
                assert_eq!(fast, is_prefix_normal(&child), "child {child}");
                self.checked += 1;
                // keep scanning so every child of an accepted node is audited
                for j in i + 1..=node.t {
                    let (a, b) = node.swap_positions(j);
                    let other = BinaryWord::from_bits(word).swapped(a, b).unwrap();
                    if !fast {
                        assert!(
                            !is_prefix_normal(&other),
                            "bubble closure broken at {other}"
                        );
                    }
                }
                fast
            }
            fn accepted(&mut self, word: &[u8], node: GenNode, i: usize) {
                self.inner.accepted(word, node, i)
            }
            fn leave(&mut self, word: &[u8], node: GenNode) {
                self.inner.leave(word, node)
            }
        }
        for n in 1..=11 {
            for d in 0..=n {
                let mut audit = Audit {
                    inner: PnOracle::checked(n),
                    checked: 0,
                };
                SwapGenerator::fixed_density(n, d).run(d, n - d, &mut audit, |_| {});
            }
        }
    }

    #[test]
    fn density_two_of_length_five() {
        let mut out = Vec::new();
        let count = generate_pn_fixed_density(5, 2, |v| out.push(v.to_string()));
        assert_eq!(count, 4);
        assert_eq!(out, ["10100", "10010", "10001", "11000"]);
        let mut zero = Vec::new();
        generate_pn_fixed_density(5, 0, |v| zero.push(v.to_string()));
        assert_eq!(zero, ["00000"]);
    }

    #[test]
    fn full_listing_of_length_five() {
        assert_eq!(
            strings(&list_pn(5, Order::DensityIncreasing)),
            [
                "00000", "10000", "10100", "10010", "10001", "11000", "11010", "10101", "11001",
                "11100", "11011", "11101", "11110", "11111"
            ]
        );
        assert_eq!(strings(&list_pn(1, Order::DensityIncreasing)), ["0", "1"]);
        assert_eq!(strings(&list_pn(0, Order::DensityIncreasing)), [""]);
    }

    #[test]
    fn cyclic_order_densities() {
        assert_eq!(Order::CyclicOddEven.densities(5), [1, 3, 5, 4, 2, 0]);
        assert_eq!(Order::CyclicOddEven.densities(4), [1, 3, 4, 2, 0]);
        assert_eq!(Order::CyclicOddEven.densities(0), [0]);
    }

    #[test]
    fn sound_and_complete_up_to_twelve() {
        for n in 0..=12usize {
            for d in 0..=n {
                let mut got = Vec::new();
                generate_pn_fixed_density(n, d, |v| got.push(v.to_word()));
                let set: HashSet<_> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len(), "duplicates for n={n} d={d}");
                let brute: HashSet<_> = (0..1u64 << n)
                    .map(|v| BinaryWord::from_u64(v, n))
                    .filter(|w| w.density() == d && is_prefix_normal(w))
                    .collect();
                assert_eq!(set, brute, "n={n} d={d}");
                assert_eq!(got.last(), Some(&BinaryWord::ones_then_zeros(d, n - d)));
                assert!(verify_fixed_density_gray_code(&got));
            }
        }
    }

    #[test]
    fn amortized_work_is_linear() {
        for n in 1..=16usize {
            let mut total = WorkCounters::default();
            let mut words = 0;
            for d in 0..=n {
                let mut oracle = PnOracle::new(n);
                words += generate_pn_fixed_density_with(&mut oracle, n, d, |_| {});
                total.add(&oracle.counters());
            }
            assert!(total.total() <= 8 * n as u64 * words, "n={n}");
        }
    }
}
