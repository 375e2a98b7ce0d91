//! Cross-checks of the pruned enumeration kernels against independent
//! brute-force oracles: exhaustive subsequence scans for containment,
//! full-symmetric-group filtering for avoidance classes, and
//! filter-after-enumeration for pattern-pruned extensions.

use itertools::Itertools;
use num_bigint::BigUint;

use linext_core::perm::{count_avoiders, list_avoiders, word_contains, PatternSet, Permutation};
use linext_core::poset::{
    complete_kary_tree, count_extensions, hook_count_rect, hook_count_tree, list_extensions,
    rectangular_poset,
};

/// Oracle: containment by exhaustive scan of all m-element subsequences.
fn brute_contains(word: &[u32], tau: &[u32]) -> bool {
    let m = tau.len();
    (0..word.len()).combinations(m).any(|idx| {
        (0..m)
            .cartesian_product(0..m)
            .all(|(a, b)| (tau[a] < tau[b]) == (word[idx[a]] < word[idx[b]]))
    })
}

fn all_permutations(n: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..=n as u32).permutations(n)
}

#[test]
fn containment_matches_exhaustive_scan() {
    let patterns: Vec<Vec<u32>> = vec![
        vec![1],
        vec![2, 1],
        vec![3, 2, 1],
        vec![1, 2, 4, 3],
        vec![2, 1, 4, 3],
        vec![2, 4, 1, 3],
    ];
    for word in all_permutations(6) {
        for tau in &patterns {
            assert_eq!(
                word_contains(&word, tau),
                brute_contains(&word, tau),
                "word {word:?}, pattern {tau:?}"
            );
        }
    }
}

#[test]
fn fig1_word_containment_against_oracle() {
    let word = [1u32, 3, 2, 4, 6, 9, 7, 12, 5, 11, 8, 10];
    for tau in [vec![3u32, 2, 1], vec![1, 2, 4, 3], vec![2, 1, 4, 3]] {
        assert_eq!(word_contains(&word, &tau), brute_contains(&word, &tau));
    }
    assert!(brute_contains(&word, &[3, 2, 1]));
}

#[test]
fn avoider_enumeration_matches_symmetric_group_filter() {
    for tau in [vec![3u32, 2, 1], vec![1, 2, 4, 3], vec![2, 1, 4, 3]] {
        let patterns = PatternSet::new(vec![Permutation::new(tau.clone()).unwrap()]);
        for n in 0..=6 {
            let brute: Vec<Vec<u32>> = all_permutations(n)
                .filter(|w| !brute_contains(w, &tau))
                .sorted()
                .collect();
            let fast: Vec<Vec<u32>> = list_avoiders(n, &patterns)
                .iter()
                .map(|p| p.entries().to_vec())
                .collect();
            assert_eq!(fast, brute, "n={n}, tau={tau:?}");
        }
    }
}

#[test]
fn extension_pruning_matches_filter_after_enumeration() {
    let posets = [
        rectangular_poset(3, 3).unwrap(),
        rectangular_poset(2, 5).unwrap(),
        rectangular_poset(5, 2).unwrap(),
        complete_kary_tree(9, 2).unwrap(),
        complete_kary_tree(10, 3).unwrap(),
    ];
    let patterns = [
        vec![3u32, 2, 1],
        vec![1, 2, 4, 3],
        vec![2, 1, 4, 3],
        vec![1, 3, 2],
    ];
    for poset in &posets {
        let all = list_extensions(poset, &PatternSet::empty());
        for tau in &patterns {
            let pattern_set = PatternSet::new(vec![Permutation::new(tau.clone()).unwrap()]);
            let filtered = all
                .iter()
                .filter(|pi| !brute_contains(pi.entries(), tau))
                .count();
            let pruned = count_extensions(poset, &pattern_set);
            assert_eq!(
                pruned,
                BigUint::from(filtered as u64),
                "poset n={}, tau={tau:?}",
                poset.n()
            );
        }
    }
}

#[test]
fn extension_counts_match_hook_lengths_small() {
    for (s, t) in [(1, 1), (1, 6), (4, 1), (2, 4), (3, 3), (2, 5)] {
        let poset = rectangular_poset(s, t).unwrap();
        assert_eq!(
            count_extensions(&poset, &PatternSet::empty()),
            hook_count_rect(s, t).unwrap(),
            "rectangle {s}x{t}"
        );
    }
    for k in [2, 3] {
        for n in 1..=9 {
            let tree = complete_kary_tree(n, k).unwrap();
            assert_eq!(
                count_extensions(&tree, &PatternSet::empty()),
                hook_count_tree(n, k).unwrap(),
                "tree n={n}, k={k}"
            );
        }
    }
}

#[test]
fn catalan_counts_avoiders_of_321() {
    let t321 = PatternSet::new(vec![Permutation::new(vec![3, 2, 1]).unwrap()]);
    for n in 0..=8 {
        assert_eq!(count_avoiders(n, &t321), linext_core::perm::catalan(n));
    }
}
