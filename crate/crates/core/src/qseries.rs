//! Inversion q-polynomials of the pattern-avoiding extension classes: the
//! closed forms for N_{3,t}(1243), N_{s,2}(2143), N_{s,3}(2143), the F_s
//! recurrence and its bivariate series, and the coefficient-diagonal
//! extractions.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::perm::{PatternSet, Permutation};
use crate::poset::{extension_inv_polynomial, rectangular_poset, LabeledPoset};
use crate::qpoly::{QLaurent, QPolynomial, XSeries};

pub fn pattern_1243() -> Permutation {
    Permutation::new(vec![1, 2, 4, 3]).unwrap()
}

pub fn pattern_2143() -> Permutation {
    Permutation::new(vec![2, 1, 4, 3]).unwrap()
}

/// Sum of q^{inv(pi)} over the extensions of `poset` avoiding `tau`.
pub fn inv_polynomial(poset: &LabeledPoset, tau: &Permutation) -> QPolynomial {
    extension_inv_polynomial(poset, &PatternSet::new(vec![tau.clone()]))
}

/// Closed form for N_{3,t}(1243)(q): the rational expression
/// q^{3(t^2-t+1)} (1 - q^{2t-1} - 2q^{2t} + q^{3t-1} + q^{3t}) / ((1-q)(1-q^2))
/// reduced by exact division.
pub fn thm2_closed_form(t: usize) -> Result<QPolynomial> {
    if t < 1 {
        return Err(Error::Parameter("t must be >= 1".into()));
    }
    let t = t as u64;
    let bracket = QPolynomial::from_pairs([
        (0u64, 1i64),
        (2 * t - 1, -1),
        (2 * t, -2),
        (3 * t - 1, 1),
        (3 * t, 1),
    ]);
    let numerator = bracket.shift_up(3 * (t * t - t + 1));
    let denom = &QPolynomial::from_pairs([(0u64, 1i64), (1, -1)])
        * &QPolynomial::from_pairs([(0u64, 1i64), (2, -1)]);
    numerator.div_exact(&denom)
}

/// The same polynomial as the double sum over i in [1, t], j in [i+1, 2t]
/// of q^{3t^2 - 3t + i + j}.
pub fn thm2_double_sum(t: usize) -> QPolynomial {
    let t = t as u64;
    let mut out = QPolynomial::zero();
    for i in 1..=t {
        for j in i + 1..=2 * t {
            out += &QPolynomial::monomial(1, 3 * t * t - 3 * t + i + j);
        }
    }
    out
}

/// The structural (i, j) of a member of N_{3,t}(1243): pi_{i+1} = t+1 and
/// pi_{j+1} = 1. Verifies that deleting the entries 1 and t+1 leaves the
/// fixed word (2t+1)...(3t)(t+2)...(2t)23...t and that
/// inv(pi) = 3t^2 - 3t + i + j; for t >= 3 also the ranges 1 <= i <= t and
/// i < j <= 2t.
pub fn thm2_structure(pi: &Permutation, t: usize) -> Result<(usize, usize)> {
    let poset = rectangular_poset(3, t)?;
    if !poset.is_extension(pi.entries()) || pi.contains(&pattern_1243()) {
        return Err(Error::Validation(format!(
            "{pi} is not a 1243-avoiding extension of the 3x{t} poset"
        )));
    }
    let pos = |v: u32| pi.entries().iter().position(|&x| x == v).unwrap() + 1;
    let i = pos(t as u32 + 1) - 1;
    let j = pos(1) - 1;

    let mut expected: Vec<u32> = (2 * t as u32 + 1..=3 * t as u32).collect();
    expected.extend(t as u32 + 2..=2 * t as u32);
    expected.extend(2..=t as u32);
    let removed: Vec<u32> = pi
        .entries()
        .iter()
        .copied()
        .filter(|&v| v != 1 && v != t as u32 + 1)
        .collect();
    if removed != expected {
        return Err(Error::Validation(format!(
            "removal word {removed:?} differs from {expected:?}"
        )));
    }
    if t >= 3 && !(1 <= i && i <= t && i < j && j <= 2 * t) {
        return Err(Error::Validation(format!(
            "positions (i, j) = ({i}, {j}) out of range for t = {t}"
        )));
    }
    let expected_inv = (3 * t * t - 3 * t + i + j) as u64;
    if pi.inversions() != expected_inv {
        return Err(Error::Validation(format!(
            "inv({pi}) = {} but 3t^2-3t+i+j = {expected_inv}",
            pi.inversions()
        )));
    }
    Ok((i, j))
}

/// Closed form for N_{s,2}(2143)(q) = q^{(2s-1)(s-1)} (1+q)^{s-1}.
pub fn thm3_closed_form(s: usize) -> Result<QPolynomial> {
    if s < 1 {
        return Err(Error::Parameter("s must be >= 1".into()));
    }
    let s = s as u64;
    let one_plus_q = QPolynomial::from_pairs([(0u64, 1i64), (1, 1)]);
    Ok(one_plus_q.pow((s - 1) as u32).shift_up((2 * s - 1) * (s - 1)))
}

/// The set eta(pi) = { odd i <= 2s-3 : i+3 appears before i in pi }, for
/// pi in N_{s,2}(2143). Checks inv(pi) = (2s-1)(s-1) + |eta(pi)|.
pub fn thm3_eta(pi: &Permutation, s: usize) -> Result<Vec<u32>> {
    let poset = rectangular_poset(s, 2)?;
    if !poset.is_extension(pi.entries()) || pi.contains(&pattern_2143()) {
        return Err(Error::Validation(format!(
            "{pi} is not a 2143-avoiding extension of the {s}x2 poset"
        )));
    }
    let pos = |v: u32| pi.entries().iter().position(|&x| x == v).unwrap();
    let eta: Vec<u32> = (1..=2 * s as u32).step_by(2)
        .filter(|&i| i + 3 <= 2 * s as u32)
        .filter(|&i| pos(i + 3) < pos(i))
        .collect();
    let expected_inv = ((2 * s - 1) * (s - 1) + eta.len()) as u64;
    if pi.inversions() != expected_inv {
        return Err(Error::Validation(format!(
            "inv({pi}) = {} but (2s-1)(s-1)+|eta| = {expected_inv}",
            pi.inversions()
        )));
    }
    Ok(eta)
}

/// F_s by the recurrence F_0 = F_1 = 1,
/// F_s = (1 + r + 2r^2) F_{s-1} + r^3 F_{s-2}.
pub fn fs_polynomial(s: usize) -> QPolynomial {
    let mut prev = QPolynomial::one();
    let mut cur = QPolynomial::one();
    let step = QPolynomial::from_pairs([(0u64, 1i64), (1, 1), (2, 2)]);
    let cube = QPolynomial::monomial(1, 3);
    for _ in 2..=s {
        let next = &(&step * &cur) + &(&cube * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed form for N_{s,3}(2143)(q) = q^{9 C(s,2)} F_s(1/q). The Laurent
/// intermediate must land back in an ordinary polynomial.
pub fn thm4_closed_form(s: usize) -> Result<QPolynomial> {
    if s < 1 {
        return Err(Error::Parameter("s must be >= 1".into()));
    }
    let shift = 9 * (s as i64) * (s as i64 - 1) / 2;
    let laurent: QLaurent = fs_polynomial(s).reciprocal_substitution().shift(shift);
    laurent.into_polynomial()
}

/// H_l(q) by the recurrence H_1 = 1,
/// H_l = q^{9(l-1)-1} (1+q) N_{l-1,3}(2143)(q) + q^{9(l-1)-2} H_{l-1}(q).
pub fn h_polynomial(l: usize) -> Result<QPolynomial> {
    if l < 1 {
        return Err(Error::Parameter("l must be >= 1".into()));
    }
    let one_plus_q = QPolynomial::from_pairs([(0u64, 1i64), (1, 1)]);
    let mut h = QPolynomial::one();
    for cur in 2..=l {
        let base = 9 * (cur as u64 - 1);
        let n_prev = thm4_closed_form(cur - 1)?;
        h = &(&one_plus_q * &n_prev).shift_up(base - 1) + &h.shift_up(base - 2);
    }
    Ok(h)
}

/// Direct enumeration of H_l(q): extensions of N_{l,3} avoiding 2143 whose
/// second entry is 3l - 1.
pub fn h_polynomial_direct(l: usize) -> Result<QPolynomial> {
    let poset = rectangular_poset(l, 3)?;
    let mut out = QPolynomial::zero();
    for pi in crate::poset::list_extensions(&poset, &PatternSet::new(vec![pattern_2143()])) {
        if l == 1 || pi.at(2) == 3 * l as u32 - 1 {
            out += &QPolynomial::monomial(1, pi.inversions());
        }
    }
    Ok(out)
}

/// Outcome of a structural verification sweep. `lines` carries one
/// human-readable line per sub-check, including any offending permutation.
#[derive(Debug, Clone)]
pub struct Report {
    pub pass: bool,
    pub lines: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report { pass: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: String) {
        self.lines.push(format!("{} {}", if ok { "PASS" } else { "FAIL" }, what));
        self.pass &= ok;
    }
}

/// Verifies the prefix-defined partition of N_{s,3}(2143) into J_1..J_5, the
/// five removal bijections with their inversion shifts, the two recurrence
/// identities, and that J_1, J_2, J_5 partition H_s.
pub fn verify_thm4_partition(s: usize) -> Result<Report> {
    if s < 2 {
        return Err(Error::Parameter("partition check needs s >= 2".into()));
    }
    let mut report = Report::new();
    let n = 3 * s as u32;
    let class = crate::poset::list_extensions(
        &rectangular_poset(s, 3)?,
        &PatternSet::new(vec![pattern_2143()]),
    );
    let prefixes: [Vec<u32>; 5] = [
        vec![n - 2, n - 1, n],
        vec![n - 2, n - 1, n - 5, n],
        vec![n - 2, n - 5, n - 1, n],
        vec![n - 2, n - 5, n - 1, n - 4, n],
        vec![n - 2, n - 1, n - 5, n - 4, n],
    ];
    let mut parts: [Vec<&Permutation>; 5] = Default::default();
    let mut partitioned = true;
    for pi in &class {
        let matches: Vec<usize> = (0..5)
            .filter(|&a| pi.entries().starts_with(&prefixes[a]))
            .collect();
        if matches.len() == 1 {
            parts[matches[0]].push(pi);
        } else {
            partitioned = false;
            report.lines.push(format!(
                "FAIL J-partition: {pi} matched {} prefix classes",
                matches.len()
            ));
        }
    }
    report.check(partitioned, format!("J1..J5 partition the {} class members", class.len()));

    // Removal bijections: deleting the three largest values
    let sub_poset = rectangular_poset(s - 1, 3)?;
    let n_prev = inv_polynomial(&sub_poset, &pattern_2143());
    let h_prev = h_polynomial_direct(s - 1)?;
    let shifts: [u64; 5] = [
        9 * (s as u64 - 1),
        9 * (s as u64 - 1) - 1,
        9 * (s as u64 - 1) - 2,
        9 * (s as u64 - 1) - 3,
        9 * (s as u64 - 1) - 2,
    ];
    for a in 0..5 {
        let target_h = a >= 3;
        let mut image_poly = QPolynomial::zero();
        let mut ok = true;
        for pi in &parts[a] {
            let removed: Vec<u32> = pi
                .entries()
                .iter()
                .copied()
                .filter(|&v| v < n - 2)
                .collect();
            let in_class = sub_poset.is_extension(&removed)
                && !crate::perm::word_contains(&removed, pattern_2143().entries())
                && (!target_h || s == 2 || removed[1] == 3 * (s as u32 - 1) - 1);
            let shift_ok =
                pi.inversions() == crate::perm::inversions_of_word(&removed) + shifts[a];
            if !in_class || !shift_ok {
                ok = false;
                report
                    .lines
                    .push(format!("FAIL J{} removal bijection at {pi}", a + 1));
            }
            image_poly += &QPolynomial::monomial(1, crate::perm::inversions_of_word(&removed));
        }
        let target = if target_h { &h_prev } else { &n_prev };
        report.check(
            ok && image_poly == *target,
            format!("J{} maps onto {} with shift q^{}", a + 1, if target_h { "H_(s-1)" } else { "N_(s-1,3)(2143)" }, shifts[a]),
        );
        // the displayed q-power identity for this block
        let block_poly: QPolynomial = parts[a]
            .iter()
            .fold(QPolynomial::zero(), |acc, pi| {
                &acc + &QPolynomial::monomial(1, pi.inversions())
            });
        report.check(
            block_poly == target.shift_up(shifts[a]),
            format!("sum over J{} of q^inv = q^{} * target", a + 1, shifts[a]),
        );
    }

    // Recurrence identities at this s, against direct enumeration
    let n_cur: QPolynomial = class
        .iter()
        .fold(QPolynomial::zero(), |acc, pi| {
            &acc + &QPolynomial::monomial(1, pi.inversions())
        });
    let one_plus_q = QPolynomial::from_pairs([(0u64, 1i64), (1, 1)]);
    let one_q_q2 = QPolynomial::from_pairs([(0u64, 1i64), (1, 1), (2, 1)]);
    let base = 9 * (s as u64 - 1);
    let eq2_rhs = &(&one_q_q2 * &n_prev).shift_up(base - 2)
        + &(&one_plus_q * &h_prev).shift_up(base - 3);
    report.check(n_cur == eq2_rhs, format!("three-term recurrence for N_{{{s},3}}(2143)(q)"));

    let h_cur = h_polynomial_direct(s)?;
    let eq3_rhs = &(&one_plus_q * &n_prev).shift_up(base - 1) + &h_prev.shift_up(base - 2);
    report.check(h_cur == eq3_rhs, format!("two-term recurrence for H_{s}(q)"));

    // J1, J2, J5 partition H_s (the members with second entry 3s - 1)
    let h_members: Vec<&Permutation> = class.iter().filter(|pi| pi.at(2) == n - 1).collect();
    let j125: usize = parts[0].len() + parts[1].len() + parts[4].len();
    let j125_ok = h_members.len() == j125
        && h_members
            .iter()
            .all(|pi| [0usize, 1, 4].iter().any(|&a| parts[a].contains(pi)));
    report.check(j125_ok, "J1, J2, J5 partition H_s".to_string());

    Ok(report)
}

/// Expands A(x, q) = (1 - (q + 2q^2) x) / (1 - (1 + q + 2q^2) x - q^3 x^2)
/// to order N by exact series division.
pub fn a_series_expand(trunc: usize) -> XSeries {
    let num = XSeries::new(
        trunc,
        vec![
            QPolynomial::one(),
            QPolynomial::from_pairs([(1u64, -1i64), (2, -2)]),
        ],
    );
    let den = XSeries::new(
        trunc,
        vec![
            QPolynomial::one(),
            QPolynomial::from_pairs([(0u64, -1i64), (1, -1), (2, -2)]),
            QPolynomial::monomial(-1, 3),
        ],
    );
    num.div(&den).expect("denominator has unit constant term")
}

/// Which coefficient diagonal of F_s to read off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalKind {
    /// [q^3] F_s
    Q3,
    /// [q^{2s-2}] F_s
    TwoSMinus2,
    /// [q^{s-1}] F_s
    SMinus1,
    /// [q^s] F_s
    S,
    /// [q^{s+1}] F_s
    SPlus1,
    /// [q^{s+2}] F_s
    SPlus2,
}

impl DiagonalKind {
    pub const ALL: [DiagonalKind; 6] = [
        DiagonalKind::Q3,
        DiagonalKind::TwoSMinus2,
        DiagonalKind::SMinus1,
        DiagonalKind::S,
        DiagonalKind::SPlus1,
        DiagonalKind::SPlus2,
    ];

    pub fn exponent(&self, s: u64) -> u64 {
        match self {
            DiagonalKind::Q3 => 3,
            DiagonalKind::TwoSMinus2 => 2 * s - 2,
            DiagonalKind::SMinus1 => s - 1,
            DiagonalKind::S => s,
            DiagonalKind::SPlus1 => s + 1,
            DiagonalKind::SPlus2 => s + 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DiagonalKind::Q3 => "q3",
            DiagonalKind::TwoSMinus2 => "2s-2",
            DiagonalKind::SMinus1 => "s-1",
            DiagonalKind::S => "s",
            DiagonalKind::SPlus1 => "s+1",
            DiagonalKind::SPlus2 => "s+2",
        }
    }

    /// OEIS id this diagonal is checked against.
    pub fn oeis_id(&self) -> &'static str {
        match self {
            DiagonalKind::Q3 => "A134465",
            DiagonalKind::TwoSMinus2 => "A098156",
            DiagonalKind::SMinus1 => "A116914",
            DiagonalKind::S => "A072547",
            DiagonalKind::SPlus1 => "A002054",
            DiagonalKind::SPlus2 => "A127531",
        }
    }
}

impl FromStr for DiagonalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q3" => Ok(DiagonalKind::Q3),
            "2s-2" => Ok(DiagonalKind::TwoSMinus2),
            "s-1" => Ok(DiagonalKind::SMinus1),
            "s" => Ok(DiagonalKind::S),
            "s+1" => Ok(DiagonalKind::SPlus1),
            "s+2" => Ok(DiagonalKind::SPlus2),
            other => Err(Error::Parameter(format!("unknown diagonal kind {other:?}"))),
        }
    }
}

/// ([q^e] F_s)_{s=2..s_max} with e determined by `kind`.
pub fn diagonal_coefficients(kind: DiagonalKind, s_max: usize) -> Result<Vec<BigInt>> {
    if s_max < 2 {
        return Err(Error::Parameter("s_max must be >= 2".into()));
    }
    Ok((2..=s_max)
        .map(|s| fs_polynomial(s).coeff(kind.exponent(s as u64)))
        .collect())
}

/// Expands x (1 - 2x + x^2 + x^3) / (1 - 2x)^2 exactly and confirms its
/// x^s coefficients equal [q^{2s-2}] F_s for s >= 2.
pub fn bullet2_gf_check(s_max: usize) -> Result<Report> {
    if s_max < 2 {
        return Err(Error::Parameter("s_max must be >= 2".into()));
    }
    let series = bullet2_gf_series(s_max);
    let diag = diagonal_coefficients(DiagonalKind::TwoSMinus2, s_max)?;
    let mut report = Report::new();
    for (idx, value) in diag.iter().enumerate() {
        let s = idx + 2;
        let gf_coeff = series[s].clone();
        report.check(
            gf_coeff == *value,
            format!("x^{s} coefficient {gf_coeff} vs [q^{}]F_{s} = {value}", 2 * s - 2),
        );
        if gf_coeff != *value {
            // first differing index is enough detail; stop expanding the report
            break;
        }
    }
    Ok(report)
}

/// Coefficients of x(1 - 2x + x^2 + x^3) / (1 - 2x)^2 up to x^{trunc}.
pub fn bullet2_gf_series(trunc: usize) -> Vec<BigInt> {
    let cpoly = |v: i64| QPolynomial::monomial(v, 0);
    let num = XSeries::new(trunc, vec![cpoly(0), cpoly(1), cpoly(-2), cpoly(1), cpoly(1)]);
    let den = XSeries::new(trunc, vec![cpoly(1), cpoly(-4), cpoly(4)]);
    num.div(&den)
        .expect("denominator has unit constant term")
        .coeffs()
        .iter()
        .map(|c| c.coeff(0))
        .collect()
}
