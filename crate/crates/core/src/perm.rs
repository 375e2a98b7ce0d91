//! Permutations, pattern containment, inversions, direct sums, and
//! enumeration of the avoidance classes `Av_n(T)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A permutation of {1, ..., n} in one-line notation, 1-indexed values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Validates that `entries` is a bijection on {1, ..., n}.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{entries:?} is not a bijection on 1..={n}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { entries })
    }

    /// The identity permutation 1 2 ... n.
    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-indexed position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    /// Number of pairs (i, j) with i < j and entry_i > entry_j.
    pub fn inversions(&self) -> u64 {
        inversions_of_word(&self.entries)
    }

    /// True iff some subsequence of `self` is order-isomorphic to `tau`.
    pub fn contains(&self, tau: &Permutation) -> bool {
        word_contains(&self.entries, tau.entries())
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|tau| !self.contains(tau))
    }

    /// Places `other` above and to the right of `self`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let l = self.entries.len() as u32;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|&v| v + l));
        Permutation { entries }
    }

    /// True iff the permutation is not a direct sum of two shorter ones,
    /// i.e. no proper prefix of length l has value set {1, ..., l}.
    pub fn is_sum_indecomposable(&self) -> bool {
        let n = self.entries.len();
        let mut running_max = 0u32;
        for (i, &v) in self.entries.iter().enumerate() {
            running_max = running_max.max(v);
            if i + 1 < n && running_max as usize == i + 1 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// A canonicalized (deduplicated, length-then-lexicographic) list of patterns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(mut patterns: Vec<Permutation>) -> Self {
        patterns.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.entries.cmp(&b.entries)));
        patterns.dedup();
        Self { patterns }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.patterns.iter()
    }

    /// Prefix-extension prune: given that `word` minus its last element avoided
    /// every pattern, the new word contains a pattern iff some occurrence uses
    /// the last position.
    pub fn prunes(&self, word: &[u32]) -> bool {
        self.patterns
            .iter()
            .any(|tau| word_contains_ending_at_last(word, tau.entries()))
    }
}

pub fn inversions_of_word(word: &[u32]) -> u64 {
    let mut inv = 0u64;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Pattern containment in a word of distinct values (not necessarily 1..n).
pub fn word_contains(word: &[u32], tau: &[u32]) -> bool {
    occurrence_search(word, tau, false)
}

/// Containment restricted to occurrences whose last pattern entry is matched
/// at the last position of `word`. Used for incremental pruning.
pub fn word_contains_ending_at_last(word: &[u32], tau: &[u32]) -> bool {
    occurrence_search(word, tau, true)
}

/// Depth-first subsequence matching with value-window pruning: the candidate
/// for pattern index j must lie strictly between the largest chosen value
/// below tau_j and the smallest chosen value above it.
fn occurrence_search(word: &[u32], tau: &[u32], force_last: bool) -> bool {
    let m = tau.len();
    let n = word.len();
    if m == 0 {
        return true;
    }
    if n < m {
        return false;
    }
    let mut chosen: Vec<u32> = Vec::with_capacity(m);

    fn dfs(
        word: &[u32],
        tau: &[u32],
        force_last: bool,
        j: usize,
        start: usize,
        chosen: &mut Vec<u32>,
    ) -> bool {
        let m = tau.len();
        let n = word.len();
        if j == m {
            return true;
        }
        let last = j == m - 1;
        let range = if force_last && last {
            (n - 1)..n
        } else {
            start..(n - (m - j) + 1)
        };
        for p in range {
            let v = word[p];
            let mut ok = true;
            for (a, &w) in chosen.iter().enumerate() {
                if (tau[a] < tau[j]) != (w < v) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            chosen.push(v);
            if dfs(word, tau, force_last, j + 1, p + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    dfs(word, tau, force_last, 0, 0, &mut chosen)
}

/// Streams Av_n(T) in lexicographic order into `visit`.
///
/// Position-by-position backtracking: values are tried in increasing order
/// and a branch is cut as soon as the prefix contains a pattern (containment
/// in a prefix persists under extension).
pub fn for_each_avoider<F: FnMut(&[u32])>(n: usize, patterns: &PatternSet, mut visit: F) {
    let mut prefix: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec<F: FnMut(&[u32])>(
        n: usize,
        patterns: &PatternSet,
        prefix: &mut Vec<u32>,
        used: &mut [bool],
        visit: &mut F,
    ) {
        if prefix.len() == n {
            visit(prefix);
            return;
        }
        for v in 1..=n as u32 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            if !patterns.prunes(prefix) {
                used[v as usize] = true;
                rec(n, patterns, prefix, used, visit);
                used[v as usize] = false;
            }
            prefix.pop();
        }
    }
    rec(n, patterns, &mut prefix, &mut used, &mut visit);
}

/// |Av_n(T)| as an exact integer.
pub fn count_avoiders(n: usize, patterns: &PatternSet) -> BigUint {
    let mut count = BigUint::zero();
    for_each_avoider(n, patterns, |_| count += 1u32);
    count
}

/// Av_n(T) as a lexicographically sorted list.
pub fn list_avoiders(n: usize, patterns: &PatternSet) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_avoider(n, patterns, |w| {
        out.push(Permutation {
            entries: w.to_vec(),
        })
    });
    out
}

/// n-th Catalan number, binomial(2n, n) / (n + 1).
pub fn catalan(n: usize) -> BigUint {
    let mut num = BigUint::one();
    for i in 0..n {
        num *= (n + i + 1) as u64;
    }
    let mut den = BigUint::one();
    for i in 1..=n {
        den *= i as u64;
    }
    num / (den * (n as u64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(entries: &[u32]) -> Permutation {
        Permutation::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn containment_examples() {
        // Heap word from a 12-vertex binary heap.
        let sigma = p(&[1, 3, 2, 4, 6, 9, 7, 12, 5, 11, 8, 10]);
        assert!(sigma.contains(&p(&[3, 2, 1])));
        assert!(!p(&[1, 2, 3, 4, 5]).contains(&p(&[2, 1])));
        assert!(!p(&[5, 3, 6, 1, 4, 2]).contains(&p(&[1, 2, 4, 3])));
    }

    #[test]
    fn avoids_all_examples() {
        let t1243 = PatternSet::new(vec![p(&[1, 2, 4, 3])]);
        assert!(p(&[5, 3, 1, 6, 4, 2]).avoids_all(&t1243));
        let t1 = PatternSet::new(vec![p(&[1])]);
        assert!(!p(&[2, 1]).avoids_all(&t1));
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        assert!(!p(&[3, 2, 1]).avoids_all(&t321));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(p(&[5, 3, 1, 6, 4, 2]).inversions(), 9);
        assert_eq!(p(&[1, 2, 3, 4, 5]).inversions(), 0);
        assert_eq!(p(&[3, 2, 1]).inversions(), 3);
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(p(&[2, 1]).direct_sum(&p(&[1])), p(&[2, 1, 3]));
        assert_eq!(p(&[1]).direct_sum(&p(&[1])), p(&[1, 2]));
        assert_eq!(p(&[3, 2, 1]).direct_sum(&p(&[2, 1])), p(&[3, 2, 1, 5, 4]));
    }

    #[test]
    fn sum_indecomposable_examples() {
        assert!(p(&[1]).is_sum_indecomposable());
        assert!(!p(&[1, 2]).is_sum_indecomposable());
        assert!(p(&[2, 4, 1, 3]).is_sum_indecomposable());
    }

    #[test]
    fn avoider_count_examples() {
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        assert_eq!(count_avoiders(3, &t321), BigUint::from(5u32));
        assert_eq!(count_avoiders(4, &t321), BigUint::from(14u32));
        let t1 = PatternSet::new(vec![p(&[1])]);
        assert_eq!(count_avoiders(4, &t1), BigUint::zero());
        assert_eq!(count_avoiders(0, &t1), BigUint::one());
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::one());
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(5), BigUint::from(42u32));
    }

    #[test]
    fn list_mode_is_lexicographic_and_consistent() {
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        let listed = list_avoiders(4, &t321);
        assert_eq!(listed.len(), 14);
        let mut sorted = listed.clone();
        sorted.sort();
        assert_eq!(listed, sorted);
        for sigma in &listed {
            assert!(sigma.avoids_all(&t321));
        }
    }

    #[test]
    fn reflexive_containment() {
        for w in [vec![1], vec![2, 1, 3], vec![4, 2, 3, 1]] {
            let sigma = p(&w);
            assert!(sigma.contains(&sigma));
            assert!(sigma.contains(&p(&[1])));
        }
    }
}
