//! Recursive swap generation of fixed-density binary words.
//!
//! The computation tree `T(n, d)` is rooted at `1^d 0^(n-d)`. A node
//! `1^s 0^t γ` has `t` children; child `i` (1-based) is
//! `1^(s-1) 0^i 1 0^(t-i) γ`, obtained by swapping the last 1 of the leading
//! run with the `i`-th 0 of the first 0-run. The suffix `γ` never changes
//! inside a subtree. A post-order traversal lists every word of the tree in
//! cool-lex order, and consecutive words differ by at most two swaps.
//!
//! A language closed under "replace the first `01` by `10`" (a bubble
//! language) restricted to one density is a subtree of `T(n, d)` that is
//! closed under parents and left siblings, so the traversal only needs a
//! [`ChildOracle`] that says when to stop scanning children.

use crate::word::{bits_to_string, BinaryWord};

/// A node `1^s 0^t γ` of the computation tree. `γ` occupies
/// `gamma_start..n` of the shared working word, and `gamma_start == s + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenNode {
    pub s: usize,
    pub t: usize,
    pub gamma_start: usize,
}

impl GenNode {
    pub fn new(s: usize, t: usize) -> Self {
        GenNode {
            s,
            t,
            gamma_start: s + t,
        }
    }

    /// Critical prefix length `s + t`.
    pub fn critical_prefix_len(&self) -> usize {
        self.s + self.t
    }

    pub fn has_children(&self) -> bool {
        self.s > 0 && self.t > 0
    }

    /// The `i`-th child, `1 <= i <= t`.
    pub fn child(&self, i: usize) -> GenNode {
        debug_assert!(self.has_children() && (1..=self.t).contains(&i));
        GenNode::new(self.s - 1, i)
    }

    /// 0-based positions exchanged to move from this node to child `i`.
    #[inline]
    pub fn swap_positions(&self, i: usize) -> (usize, usize) {
        (self.s - 1, self.s + i - 1)
    }
}

/// Decides which children of an accepted node belong to the language.
///
/// For every node with children the engine calls `enter`, then `accepts`
/// for `i = 1, 2, ...` until it returns false or `i > t`, calling `accepted`
/// after each accepted child's subtree is done, and finally `leave`. The
/// working word passed in is always the node's own word; children are never
/// materialised before they are accepted.
///
/// Acceptance must be monotone: if child `k` is accepted, so are `1..k`.
pub trait ChildOracle {
    fn enter(&mut self, _word: &[u8], _node: GenNode) {}

    fn accepts(&mut self, word: &[u8], node: GenNode, i: usize) -> bool;

    fn accepted(&mut self, _word: &[u8], _node: GenNode, _i: usize) {}

    fn leave(&mut self, _word: &[u8], _node: GenNode) {}
}

/// Accepts every child; the traversal lists all of `B(n, d)`.
#[derive(Debug, Default, Clone, Copy)]
pub struct AcceptAll;

impl ChildOracle for AcceptAll {
    fn accepts(&mut self, _word: &[u8], _node: GenNode, _i: usize) -> bool {
        true
    }
}

/// Tests each child by materialising it and calling a membership predicate.
pub struct MembershipOracle<P> {
    predicate: P,
    scratch: Vec<u8>,
}

impl<P: FnMut(&[u8]) -> bool> MembershipOracle<P> {
    pub fn new(predicate: P) -> Self {
        MembershipOracle {
            predicate,
            scratch: Vec::new(),
        }
    }
}

impl<P: FnMut(&[u8]) -> bool> ChildOracle for MembershipOracle<P> {
    fn accepts(&mut self, word: &[u8], node: GenNode, i: usize) -> bool {
        self.scratch.clear();
        self.scratch.extend_from_slice(word);
        let (a, b) = node.swap_positions(i);
        self.scratch.swap(a, b);
        (self.predicate)(&self.scratch)
    }
}

/// Read-only view of the working word handed to visitors. It must not
/// outlive the callback.
#[derive(Debug, Clone, Copy)]
pub struct WordView<'a> {
    bits: &'a [u8],
    node: GenNode,
}

impl<'a> WordView<'a> {
    /// Symbols as 0/1 bytes, `w_1` first.
    pub fn bits(&self) -> &'a [u8] {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The tree node being visited. Its `(s, t)` is the word's canonical
    /// critical prefix, with `(n, 0)` for `1^n`.
    pub fn node(&self) -> GenNode {
        self.node
    }

    pub fn to_word(&self) -> BinaryWord {
        BinaryWord::from_bits(self.bits)
    }
}

impl std::fmt::Display for WordView<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&bits_to_string(self.bits))
    }
}

/// Owns the shared working word for one traversal.
#[derive(Debug, Clone)]
pub struct SwapGenerator {
    word: Vec<u8>,
}

impl SwapGenerator {
    /// Working word `1^s 0^t γ`.
    pub fn new(s: usize, t: usize, gamma: &BinaryWord) -> Self {
        let mut word = vec![1u8; s];
        word.resize(s + t, 0);
        word.extend(gamma.iter().map(u8::from));
        SwapGenerator { word }
    }

    pub fn fixed_density(n: usize, d: usize) -> Self {
        assert!(d <= n, "density {d} exceeds length {n}");
        Self::new(d, n - d, &BinaryWord::new())
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Post-order traversal of the subtree rooted at the current word, whose
    /// leading runs must be `1^s 0^t`. Returns the number of visited words.
    pub fn run<O, V>(&mut self, s: usize, t: usize, oracle: &mut O, mut visit: V) -> u64
    where
        O: ChildOracle + ?Sized,
        V: FnMut(WordView<'_>),
    {
        debug_assert!(self.word[..s].iter().all(|&b| b == 1));
        debug_assert!(self.word[s..s + t].iter().all(|&b| b == 0));
        self.recurse(GenNode::new(s, t), oracle, &mut visit)
    }

    fn recurse<O, V>(&mut self, node: GenNode, oracle: &mut O, visit: &mut V) -> u64
    where
        O: ChildOracle + ?Sized,
        V: FnMut(WordView<'_>),
    {
        let mut visited = 0;
        if node.has_children() {
            oracle.enter(&self.word, node);
            let mut i = 1;
            while i <= node.t && oracle.accepts(&self.word, node, i) {
                let child = node.child(i);
                debug_assert!(child.critical_prefix_len() < node.critical_prefix_len());
                let (a, b) = node.swap_positions(i);
                self.word.swap(a, b);
                visited += self.recurse(child, oracle, visit);
                // undo with the same index as the forward swap
                self.word.swap(a, b);
                oracle.accepted(&self.word, node, i);
                i += 1;
            }
            oracle.leave(&self.word, node);
        }
        visit(WordView {
            bits: &self.word,
            node,
        });
        visited + 1
    }
}

/// Lists the oracle-accepted part of `T(n, d)` in cool-lex order, starting
/// from the root `1^d 0^(n-d)`. Returns the number of visited words.
pub fn generate_fixed_density<O, V>(n: usize, d: usize, oracle: &mut O, visit: V) -> u64
where
    O: ChildOracle + ?Sized,
    V: FnMut(WordView<'_>),
{
    let mut gen = SwapGenerator::fixed_density(n, d);
    gen.run(d, n - d, oracle, visit)
}

/// Number of positions where `a` and `b` differ. Both must have equal length.
pub fn hamming(a: &BinaryWord, b: &BinaryWord) -> usize {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).filter(|(x, y)| x != y).count()
}

/// True when every adjacent pair differs in at most four positions, which is
/// what two transpositions (or a flip plus a transposition) can change.
pub fn verify_gray_code(words: &[BinaryWord]) -> bool {
    first_gray_violation(words, false).is_none()
}

/// [`verify_gray_code`] plus equal density throughout, for one density block.
pub fn verify_fixed_density_gray_code(words: &[BinaryWord]) -> bool {
    verify_gray_code(words)
        && words
            .first()
            .is_none_or(|w0| words.iter().all(|w| w.density() == w0.density()))
}

/// Index `k` of the first pair `(k, k + 1)` that breaks the Gray property.
/// With `cyclic`, the wraparound pair `(last, first)` is checked too and is
/// reported as `k = len - 1`.
pub fn first_gray_violation(words: &[BinaryWord], cyclic: bool) -> Option<usize> {
    let bad = |a: &BinaryWord, b: &BinaryWord| a.len() != b.len() || hamming(a, b) > 4;
    if let Some(k) = words.windows(2).position(|p| bad(&p[0], &p[1])) {
        return Some(k);
    }
    match (cyclic, words.first(), words.last()) {
        (true, Some(first), Some(last)) if words.len() > 1 && bad(last, first) => {
            Some(words.len() - 1)
        }
        _ => None,
    }
}
