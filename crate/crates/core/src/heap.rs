//! k-ary heaps, their associated permutations, pattern-avoiding heap
//! counting H_n^k, and growth statistics.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::{PatternSet, Permutation};
use crate::poset::kary_parent;

/// True iff reading sigma as breadth-first labels of the complete k-ary tree
/// gives every vertex a label smaller than its children's.
pub fn is_heap_permutation(sigma: &Permutation, k: u32) -> bool {
    let e = sigma.entries();
    (2..=e.len()).all(|i| e[kary_parent(i, k) - 1] < e[i - 1])
}

/// Streams the associated permutations of heaps in H_n^k(T), backtracking
/// over breadth-first positions with heap-property and pattern-prefix
/// pruning. Values at each position are tried in increasing order.
pub fn for_each_heap<F: FnMut(&[u32])>(n: usize, k: u32, patterns: &PatternSet, mut visit: F) {
    if n == 0 {
        return;
    }
    let mut prefix: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec<F: FnMut(&[u32])>(
        n: usize,
        k: u32,
        patterns: &PatternSet,
        prefix: &mut Vec<u32>,
        used: &mut [bool],
        visit: &mut F,
    ) {
        if prefix.len() == n {
            visit(prefix);
            return;
        }
        let i = prefix.len() + 1;
        let floor = if i >= 2 { prefix[kary_parent(i, k) - 1] } else { 0 };
        for v in floor + 1..=n as u32 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            if !patterns.prunes(prefix) {
                used[v as usize] = true;
                rec(n, k, patterns, prefix, used, visit);
                used[v as usize] = false;
            }
            prefix.pop();
        }
    }
    rec(n, k, patterns, &mut prefix, &mut used, &mut visit);
}

/// |H_n^k(T)| as an exact integer.
pub fn count_heaps(n: usize, k: u32, patterns: &PatternSet) -> BigUint {
    let mut count = BigUint::zero();
    for_each_heap(n, k, patterns, |_| count += 1u32);
    count
}

pub fn list_heaps(n: usize, k: u32, patterns: &PatternSet) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_heap(n, k, patterns, |w| {
        out.push(Permutation::new(w.to_vec()).expect("heap labeling is a permutation"));
    });
    out
}

/// Split index m = ceil((n-1)/k): v_{m+1..n} are pairwise incomparable and
/// v_{1..m} form a complete k-ary tree. (The floor variant fails at n=12,
/// k=2, where v_6 is the parent of v_12.)
pub fn split_index(n: usize, k: u32) -> usize {
    (n - 1).div_ceil(k as usize)
}

/// Checks the direct-sum ingredient: for lambda a heap permutation of length
/// m = split_index(m + |mu|, k), lambda (+) mu must again be a heap
/// permutation.
pub fn verify_direct_sum_claim(lambda: &Permutation, mu: &Permutation, k: u32) -> Result<bool> {
    let n = lambda.len() + mu.len();
    let m = split_index(n, k);
    if lambda.len() != m {
        return Err(Error::Parameter(format!(
            "|lambda|={} but split_index({n},{k})={m}",
            lambda.len()
        )));
    }
    if !is_heap_permutation(lambda, k) {
        return Err(Error::Parameter("lambda is not a heap permutation".into()));
    }
    Ok(is_heap_permutation(&lambda.direct_sum(mu), k))
}

#[derive(Debug, Clone)]
pub struct GrowthRow {
    pub n: usize,
    pub count: BigUint,
    /// count^{1/n}, reported to 6 decimal places.
    pub b_n: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// CSV with header "n,count,b_n"; b_n printed with 6 decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,b_n\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{:.6}\n", row.n, row.count, row.b_n));
        }
        out
    }
}

/// Per-n table of |H_n^k(T)| and the root statistic b(n) = count^{1/n}.
pub fn growth_table(k: u32, patterns: &PatternSet, n_max: usize) -> GrowthTable {
    let rows = (1..=n_max)
        .map(|n| {
            let count = count_heaps(n, k, patterns);
            let b_n = count
                .to_f64()
                .map(|c| c.powf(1.0 / n as f64))
                .unwrap_or(f64::INFINITY);
            GrowthRow { n, count, b_n }
        })
        .collect();
    GrowthTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::hook_count_tree;
    use num_traits::One;

    fn p(entries: &[u32]) -> Permutation {
        Permutation::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn heap_permutation_examples() {
        assert!(is_heap_permutation(
            &p(&[1, 3, 2, 4, 6, 9, 7, 12, 5, 11, 8, 10]),
            2
        ));
        assert!(!is_heap_permutation(&p(&[2, 1, 3]), 2));
        assert!(is_heap_permutation(&p(&[1, 3, 2]), 2));
    }

    #[test]
    fn heap_enumeration_small() {
        let none = PatternSet::empty();
        let words: Vec<Vec<u32>> = list_heaps(3, 2, &none)
            .iter()
            .map(|h| h.entries().to_vec())
            .collect();
        assert_eq!(words, [vec![1, 2, 3], vec![1, 3, 2]]);
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        assert_eq!(count_heaps(5, 2, &t321), BigUint::from(7u32));
        assert_eq!(count_heaps(7, 2, &none), hook_count_tree(7, 2).unwrap());
    }

    #[test]
    fn split_index_examples() {
        assert_eq!(split_index(12, 2), 6);
        assert_eq!(split_index(1, 2), 0);
        assert_eq!(split_index(1, 7), 0);
        assert_eq!(split_index(7, 2), 3);
    }

    #[test]
    fn direct_sum_claim_examples() {
        // m = 3 = split_index(7, 2); every mu in S_4 works
        let lambda = p(&[1, 2, 3]);
        let mut mus = 0;
        crate::perm::for_each_avoider(4, &PatternSet::empty(), |w| {
            let mu = Permutation::new(w.to_vec()).unwrap();
            assert!(verify_direct_sum_claim(&lambda, &mu, 2).unwrap());
            mus += 1;
        });
        assert_eq!(mus, 24);

        assert!(verify_direct_sum_claim(&p(&[1]), &p(&[1]), 2).unwrap());

        // floor-variant sizes are rejected: split_index(12, 2) = 6, not 5
        let bad = verify_direct_sum_claim(&p(&[1, 2, 3, 4, 5]), &p(&[1, 2, 3, 4, 5, 6, 7]), 2);
        assert!(bad.is_err());
    }

    #[test]
    fn growth_table_examples() {
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        let table = growth_table(2, &t321, 5);
        let counts: Vec<u64> = table
            .rows
            .iter()
            .map(|r| r.count.to_u64().unwrap())
            .collect();
        assert_eq!(counts, [1, 1, 2, 3, 7]);

        let t1 = PatternSet::new(vec![p(&[1])]);
        for row in growth_table(2, &t1, 4).rows {
            assert!(row.count.is_zero());
        }

        let free = growth_table(2, &PatternSet::empty(), 4);
        for row in &free.rows {
            assert_eq!(row.count, hook_count_tree(row.n, 2).unwrap());
        }
        assert_eq!(free.rows[0].count, BigUint::one());
    }

    #[test]
    fn growth_csv_format() {
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        let csv = growth_table(2, &t321, 3).to_csv();
        assert_eq!(csv, "n,count,b_n\n1,1,1.000000\n2,1,1.000000\n3,2,1.259921\n");
    }

    #[test]
    fn streamed_heaps_satisfy_both_predicates() {
        let t321 = PatternSet::new(vec![p(&[3, 2, 1])]);
        for h in list_heaps(6, 2, &t321) {
            assert!(is_heap_permutation(&h, 2));
            assert!(h.avoids_all(&t321));
        }
    }
}
