//! The two poset families, generic pattern-pruned linear-extension
//! enumeration, and hook-length counting oracles.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{inversions_of_word, PatternSet, Permutation};
use crate::qpoly::QPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetFamily {
    /// Complete k-ary tree with breadth-first element order; extensions are
    /// read in the canonical (breadth-first) element order by `heap`.
    KaryTree { k: u32 },
    /// Product of an s-chain and a t-chain with the canonical labeling
    /// label(i, j) = t*(s-i) + j; extensions are read in visit order.
    Rectangular { s: usize, t: usize },
}

/// Poset on labels 1..=n given by its transitively reduced cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    n: usize,
    /// (a, b) means a is covered by b; a must precede b in any extension.
    covers: Vec<(u32, u32)>,
    family: PosetFamily,
}

/// Parent index of breadth-first vertex i (1-indexed, i >= 2).
pub fn kary_parent(i: usize, k: u32) -> usize {
    (i - 1).div_ceil(k as usize)
}

/// The unique complete k-ary tree on n vertices, breadth-first element order,
/// last level packed left.
pub fn complete_kary_tree(n: usize, k: u32) -> Result<LabeledPoset> {
    if n < 1 {
        return Err(Error::Parameter("tree needs n >= 1".into()));
    }
    if k < 2 {
        return Err(Error::Parameter(format!("arity k={k} must be >= 2")));
    }
    let covers = (2..=n)
        .map(|i| (kary_parent(i, k) as u32, i as u32))
        .collect();
    Ok(LabeledPoset {
        n,
        covers,
        family: PosetFamily::KaryTree { k },
    })
}

/// Canonical label of cell (i, j) in the s-by-t rectangular poset.
pub fn rect_label(s: usize, t: usize, i: usize, j: usize) -> u32 {
    (t * (s - i) + j) as u32
}

/// The product of an s-chain and a t-chain: (i, j) <= (i', j') iff i <= i'
/// and j <= j', under the canonical labeling.
pub fn rectangular_poset(s: usize, t: usize) -> Result<LabeledPoset> {
    if s < 1 || t < 1 {
        return Err(Error::Parameter(format!(
            "rectangular poset needs s, t >= 1, got s={s}, t={t}"
        )));
    }
    let mut covers = Vec::new();
    for i in 1..=s {
        for j in 1..=t {
            if i < s {
                covers.push((rect_label(s, t, i, j), rect_label(s, t, i + 1, j)));
            }
            if j < t {
                covers.push((rect_label(s, t, i, j), rect_label(s, t, i, j + 1)));
            }
        }
    }
    covers.sort_unstable();
    Ok(LabeledPoset {
        n: s * t,
        covers,
        family: PosetFamily::Rectangular { s, t },
    })
}

impl LabeledPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    pub fn family(&self) -> PosetFamily {
        self.family
    }

    /// Debug/golden-test dump: header line then one "a<b" cover per line,
    /// ascending.
    pub fn dump(&self) -> String {
        let header = match self.family {
            PosetFamily::KaryTree { k } => format!("poset kary_tree k={} n={}", k, self.n),
            PosetFamily::Rectangular { s, t } => {
                format!("poset rectangular s={} t={} n={}", s, t, self.n)
            }
        };
        let mut covers = self.covers.clone();
        covers.sort_unstable();
        let mut out = header;
        for (a, b) in covers {
            out.push('\n');
            out.push_str(&format!("{a}<{b}"));
        }
        out
    }

    /// True iff `word` lists the labels 1..=n in an order where every cover
    /// (a, b) has a before b, i.e. every prefix is an order ideal.
    pub fn is_extension(&self, word: &[u32]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut pos = vec![usize::MAX; self.n + 1];
        for (p, &v) in word.iter().enumerate() {
            if v == 0 || v as usize > self.n || pos[v as usize] != usize::MAX {
                return false;
            }
            pos[v as usize] = p;
        }
        self.covers
            .iter()
            .all(|&(a, b)| pos[a as usize] < pos[b as usize])
    }
}

/// Streams every linear-extension listing of `poset` that avoids `patterns`.
///
/// Depth-first choice over currently-minimal unplaced elements, minimal
/// elements tried in increasing label order; any prefix already containing a
/// pattern is cut (containment persists under extension).
pub fn for_each_extension<F: FnMut(&[u32])>(
    poset: &LabeledPoset,
    patterns: &PatternSet,
    mut visit: F,
) {
    let n = poset.n;
    let mut succs: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    let mut indeg = vec![0u32; n + 1];
    for &(a, b) in &poset.covers {
        succs[a as usize].push(b);
        indeg[b as usize] += 1;
    }
    let mut placed = vec![false; n + 1];
    let mut prefix: Vec<u32> = Vec::with_capacity(n);

    fn rec<F: FnMut(&[u32])>(
        n: usize,
        succs: &[Vec<u32>],
        indeg: &mut [u32],
        placed: &mut [bool],
        prefix: &mut Vec<u32>,
        patterns: &PatternSet,
        visit: &mut F,
    ) {
        if prefix.len() == n {
            visit(prefix);
            return;
        }
        for v in 1..=n as u32 {
            if placed[v as usize] || indeg[v as usize] != 0 {
                continue;
            }
            prefix.push(v);
            if !patterns.prunes(prefix) {
                placed[v as usize] = true;
                for &w in &succs[v as usize] {
                    indeg[w as usize] -= 1;
                }
                rec(n, succs, indeg, placed, prefix, patterns, visit);
                for &w in &succs[v as usize] {
                    indeg[w as usize] += 1;
                }
                placed[v as usize] = false;
            }
            prefix.pop();
        }
    }
    rec(
        n,
        &succs,
        &mut indeg,
        &mut placed,
        &mut prefix,
        patterns,
        &mut visit,
    );
}

/// Pattern-avoiding extension listings, in the documented stable order.
pub fn list_extensions(poset: &LabeledPoset, patterns: &PatternSet) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_extension(poset, patterns, |w| {
        out.push(Permutation::new(w.to_vec()).expect("listing is a permutation of labels"));
    });
    out
}

pub fn count_extensions(poset: &LabeledPoset, patterns: &PatternSet) -> BigUint {
    let mut count = BigUint::zero();
    for_each_extension(poset, patterns, |_| count += 1u32);
    count
}

/// Sum of q^{inv(pi)} over the pattern-avoiding extension listings.
pub fn extension_inv_polynomial(poset: &LabeledPoset, patterns: &PatternSet) -> QPolynomial {
    let mut poly = QPolynomial::zero();
    for_each_extension(poset, patterns, |w| {
        poly += &QPolynomial::monomial(1, inversions_of_word(w));
    });
    poly
}

/// Hook length formula for the s-by-t rectangle: (st)! over the product of
/// hook lengths. Independent oracle for extension counts of the rectangular
/// poset.
pub fn hook_count_rect(s: usize, t: usize) -> Result<BigUint> {
    if s < 1 || t < 1 {
        return Err(Error::Parameter("hook_count_rect needs s, t >= 1".into()));
    }
    let mut num = BigUint::one();
    for i in 2..=(s * t) as u64 {
        num *= i;
    }
    let mut den = BigUint::one();
    for i in 0..s {
        for j in 0..t {
            den *= ((s - 1 - i) + (t - 1 - j) + 1) as u64;
        }
    }
    Ok(num / den)
}

/// Linear extensions of a rooted tree: n! over the product of subtree sizes.
/// Independent oracle for the total number of k-ary heaps on n vertices.
pub fn hook_count_tree(n: usize, k: u32) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::Parameter("hook_count_tree needs n >= 1".into()));
    }
    if k < 2 {
        return Err(Error::Parameter(format!("arity k={k} must be >= 2")));
    }
    let mut subtree = vec![1u64; n + 1];
    for i in (2..=n).rev() {
        let p = kary_parent(i, k);
        subtree[p] += subtree[i];
    }
    let mut num = BigUint::one();
    for i in 2..=n as u64 {
        num *= i;
    }
    let mut den = BigUint::one();
    for i in 1..=n {
        den *= subtree[i];
    }
    Ok(num / den)
}

/// True iff vertices v_{m+1}, ..., v_n of the complete k-ary tree are
/// pairwise incomparable. Since parent indices are strictly smaller, that
/// holds exactly when every such vertex's parent lies in v_1..v_m.
pub fn suffix_incomparable(n: usize, k: u32, m: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::Parameter(format!("arity k={k} must be >= 2")));
    }
    if m > n {
        return Err(Error::Parameter(format!("m={m} exceeds n={n}")));
    }
    Ok((m + 1..=n).all(|j| j < 2 || kary_parent(j, k) <= m))
}
