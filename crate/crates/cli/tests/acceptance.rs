//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing criteria as well.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use linext_core::heap;
use linext_core::oeis::{self, OeisClient};
use linext_core::perm::{self, PatternSet, Permutation};
use linext_core::poset;
use linext_core::qseries::{self, DiagonalKind};

fn pat(word: &[u32]) -> Permutation {
    Permutation::new(word.to_vec()).unwrap()
}

fn report(number: u32, started: Instant, pass: bool, detail: &str) {
    println!(
        "criterion {number}: {} ({:.2}s) — {detail}",
        if pass { "pass" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    assert!(pass, "criterion {number} failed: {detail}");
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("linext".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = linext_cli::run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn criterion_01_rect_3_2_exact_word_list() {
    let t0 = Instant::now();
    let (code, out) = run_cli(&["extensions", "--poset", "rect:3,2"]);
    let expected = "5 3 1 6 4 2\n5 3 6 1 4 2\n5 3 6 4 1 2\n5 6 3 1 4 2\n5 6 3 4 1 2\n";
    report(
        1,
        t0,
        code == 0 && out == expected,
        "CLI lists exactly the five extensions of the 3x2 rectangle",
    );
}

#[test]
fn criterion_02_thm2_identities_and_structure() {
    let t0 = Instant::now();
    let tau = qseries::pattern_1243();
    let mut ok = true;
    for t in 1..=6 {
        let enumerated =
            qseries::inv_polynomial(&poset::rectangular_poset(3, t).unwrap(), &tau);
        let closed = qseries::thm2_closed_form(t).unwrap();
        ok &= closed == enumerated && closed == qseries::thm2_double_sum(t);
    }
    let mut members = 0usize;
    for t in 3..=5 {
        let class = poset::list_extensions(
            &poset::rectangular_poset(3, t).unwrap(),
            &PatternSet::new(vec![tau.clone()]),
        );
        members += class.len();
        ok &= class
            .iter()
            .all(|pi| qseries::thm2_structure(pi, t).is_ok());
    }
    report(
        2,
        t0,
        ok,
        &format!(
            "closed form = double sum = enumeration for t=1..6; (i,j) structure on all {members} members for t=3..5"
        ),
    );
}

#[test]
fn criterion_03_thm3_closed_form_and_eta_bijection() {
    let t0 = Instant::now();
    let tau = qseries::pattern_2143();
    let mut ok = true;
    for s in 1..=7usize {
        let poset = poset::rectangular_poset(s, 2).unwrap();
        ok &= qseries::thm3_closed_form(s).unwrap() == qseries::inv_polynomial(&poset, &tau);
        let class = poset::list_extensions(&poset, &PatternSet::new(vec![tau.clone()]));
        let base = ((2 * s - 1) * (s - 1)) as u64;
        let mut images: Vec<Vec<u32>> = Vec::new();
        for pi in &class {
            let subset = qseries::thm3_eta(pi, s).unwrap();
            ok &= perm::inversions_of_word(pi.entries()) == base + subset.len() as u64;
            images.push(subset);
        }
        images.sort();
        images.dedup();
        ok &= class.len() == 1 << (s - 1) && images.len() == 1 << (s - 1);
    }
    report(
        3,
        t0,
        ok,
        "closed form matches for s=1..7; eta bijects onto all 2^(s-1) subsets with inv = (2s-1)(s-1)+|image|",
    );
}

#[test]
fn criterion_04_thm4_closed_form_partition_recurrences() {
    let t0 = Instant::now();
    let tau = qseries::pattern_2143();
    let mut ok = true;
    for s in 1..=5usize {
        ok &= qseries::thm4_closed_form(s).unwrap()
            == qseries::inv_polynomial(&poset::rectangular_poset(s, 3).unwrap(), &tau);
    }
    for s in 2..=5usize {
        ok &= qseries::verify_thm4_partition(s).unwrap().pass;
    }
    for l in 1..=4usize {
        ok &= qseries::h_polynomial(l).unwrap() == qseries::h_polynomial_direct(l).unwrap();
    }
    report(
        4,
        t0,
        ok,
        "closed form s=1..5, prefix partition + shift identities + both recurrences s=2..5, H_l recurrence vs enumeration l=1..4",
    );
}

#[test]
fn criterion_05_rational_series_matches_recurrence() {
    let t0 = Instant::now();
    let series = qseries::a_series_expand(10);
    let ok = (0..=10).all(|s| series.coeffs()[s] == qseries::fs_polynomial(s));
    report(5, t0, ok, "series expansion to x^10 equals F_0..F_10 from the recurrence");
}

#[test]
fn criterion_06_coefficient_diagonals_vs_oeis_fixtures() {
    let t0 = Instant::now();
    let client = OeisClient::offline_fixtures();
    let mut ok = true;
    let mut details = Vec::new();
    for kind in DiagonalKind::ALL {
        let computed = qseries::diagonal_coefficients(kind, 12).unwrap();
        let sequence = client.fetch_sequence(kind.oeis_id()).unwrap();
        let aligned = oeis::align_and_compare(&computed, &sequence, 6).unwrap();
        ok &= aligned.pass && aligned.overlap >= 6;
        details.push(format!("{}:{}", kind.oeis_id(), aligned.overlap));
    }
    let gf = qseries::bullet2_gf_check(12).unwrap();
    ok &= gf.pass;
    report(
        6,
        t0,
        ok,
        &format!(
            "six diagonals of F_s (s=2..12) align offline with overlaps [{}]; rational GF matches coefficient-for-coefficient",
            details.join(", ")
        ),
    );
}

#[test]
fn criterion_07_catalan_counts() {
    let t0 = Instant::now();
    let t321 = PatternSet::new(vec![pat(&[3, 2, 1])]);
    let ok = (1..=10).all(|n| perm::count_avoiders(n, &t321) == perm::catalan(n));
    let at10 = perm::count_avoiders(10, &t321);
    report(
        7,
        t0,
        ok && at10 == BigUint::from(16796u32),
        "|Av_n(321)| = C_n for n=1..10 (16796 at n=10)",
    );
}

#[test]
fn criterion_08_heap_counts_oracle_and_finite_bounds() {
    let t0 = Instant::now();
    let t321 = PatternSet::new(vec![pat(&[3, 2, 1])]);
    let t2143 = PatternSet::new(vec![pat(&[2, 1, 4, 3])]);
    let none = PatternSet::empty();
    let mut ok = true;

    // fast count vs an oracle that enumerates every heap (validated against
    // the hook-length count) and filters containment afterwards
    let mut counts = Vec::new();
    for n in 1..=12usize {
        let all = heap::list_heaps(n, 2, &none);
        ok &= BigUint::from(all.len()) == poset::hook_count_tree(n, 2).unwrap();
        let naive = all
            .iter()
            .filter(|h| !perm::word_contains(h.entries(), pat(&[3, 2, 1]).entries()))
            .count();
        let fast = heap::count_heaps(n, 2, &t321);
        ok &= fast == BigUint::from(naive);
        counts.push(fast);
    }
    let pinned: Vec<BigUint> = [1u32, 1, 2, 3, 7].iter().map(|&v| v.into()).collect();
    ok &= counts[..5] == pinned[..];

    // 4^n upper bound everywhere; report where 2^(n-1) is first beaten
    let mut first_lower = None;
    for (i, count) in counts.iter().enumerate() {
        let n = i + 1;
        ok &= *count < BigUint::from(4u32).pow(n as u32);
        if first_lower.is_none() && *count > (BigUint::one() << (n - 1)) {
            first_lower = Some(n);
        }
    }

    // finite-n substitutes for the asymptotic statements: the injection
    // bound for both patterns, and the direct-sum lower bound where it is
    // mathematically valid (sum-indecomposable patterns); 2143 = 21+21 is
    // sum decomposable and the lower bound provably fails for it
    let mut counterexample = String::new();
    for k in [2u32, 3] {
        for n in 1..=10usize {
            for t in [&t321, &t2143] {
                ok &= heap::count_heaps(n, k, t) <= perm::count_avoiders(n, t);
            }
            let m = heap::split_index(n, k);
            if m == 0 || m == n {
                continue;
            }
            let lower = heap::count_heaps(m, k, &t321) * perm::count_avoiders(n - m, &t321);
            ok &= heap::count_heaps(n, k, &t321) >= lower;
            if k == 2 && n == 7 {
                let h7 = heap::count_heaps(7, 2, &t2143);
                let bound = heap::count_heaps(3, 2, &t2143) * perm::count_avoiders(4, &t2143);
                ok &= h7 < bound;
                counterexample = format!("{h7} < {bound}");
            }
        }
    }

    report(
        8,
        t0,
        ok,
        &format!(
            "counts n<=12 match the filter-after-enumeration oracle; pinned 1,1,2,3,7; < 4^n; \
             2^(n-1) first undercut at n={}; injection bound n<=10 for 321 and 2143; \
             direct-sum lower bound holds for 321 and fails for decomposable 2143 at n=7, k=2 ({counterexample})",
            first_lower.map_or("never".to_string(), |n| n.to_string())
        ),
    );
}

#[test]
fn criterion_09_hook_length_oracles() {
    let t0 = Instant::now();
    let none = PatternSet::empty();
    let mut ok = true;
    let mut cases = 0usize;
    for s in 1..=15usize {
        for t in 1..=15usize {
            if s * t > 15 {
                continue;
            }
            let poset = poset::rectangular_poset(s, t).unwrap();
            ok &= poset::count_extensions(&poset, &none) == poset::hook_count_rect(s, t).unwrap();
            cases += 1;
        }
    }
    for k in [2u32, 3] {
        for n in 1..=12usize {
            let tree = poset::complete_kary_tree(n, k).unwrap();
            ok &= poset::count_extensions(&tree, &none) == poset::hook_count_tree(n, k).unwrap();
            cases += 1;
        }
    }
    report(
        9,
        t0,
        ok,
        &format!("extension counts equal hook-length values in all {cases} cases (rectangles s*t<=15, trees n<=12, k=2,3)"),
    );
}

#[test]
fn criterion_10_direct_sum_closure_and_split_index() {
    let t0 = Instant::now();
    let none = PatternSet::empty();
    let mut ok = true;
    let mut pairs = 0usize;
    for k in [2u32, 3] {
        for n in 2..=9usize {
            let m = heap::split_index(n, k);
            if m == 0 || m == n {
                continue;
            }
            for lambda in heap::list_heaps(m, k, &none) {
                for mu in perm::list_avoiders(n - m, &none) {
                    ok &= heap::verify_direct_sum_claim(&lambda, &mu, k).unwrap();
                    pairs += 1;
                }
            }
        }
    }
    for n in 1..=200usize {
        for k in [2u32, 3, 4, 5] {
            ok &= poset::suffix_incomparable(n, k, heap::split_index(n, k)).unwrap();
        }
    }
    ok &= !poset::suffix_incomparable(12, 2, 5).unwrap();
    report(
        10,
        t0,
        ok,
        &format!(
            "all {pairs} direct sums land in the heap class (n<=9, k=2,3); suffix incomparability at m=ceil((n-1)/k) for n<=200; floor variant refuted at n=12, k=2"
        ),
    );
}
