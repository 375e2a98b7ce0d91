//! Exact integer-coefficient polynomials in q, Laurent variants, and
//! truncated power series in x with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse polynomial in q with exact integer coefficients and nonnegative
/// exponents. Canonical form stores no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    terms: BTreeMap<u64, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial<C: Into<BigInt>>(coeff: C, exp: u64) -> Self {
        let mut terms = BTreeMap::new();
        let c = coeff.into();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_pairs<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (u64, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, exp: u64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending (exponent, coefficient) pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Evaluation at q = 1, i.e. the coefficient sum. Used as the
    /// cardinality cross-check.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Multiplication by q^e.
    pub fn shift_up(&self, e: u64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact polynomial division; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        let d_deg = divisor
            .degree()
            .ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        let d_lead = divisor.coeff(d_deg);
        let mut rem = self.clone();
        let mut quot = QPolynomial::zero();
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let r_lead = rem.coeff(r_deg);
            let (q, r) = num_integer::Integer::div_rem(&r_lead, &d_lead);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "non-exact division: leading coefficient {r_lead} not divisible by {d_lead}"
                )));
            }
            let term = QPolynomial::monomial(q, r_deg - d_deg);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "non-exact division: remainder {rem}"
            )));
        }
        Ok(quot)
    }

    /// Substitutes q -> 1/q, producing a Laurent polynomial.
    pub fn reciprocal_substitution(&self) -> QLaurent {
        QLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (-(e as i64), c.clone()))
                .collect(),
        }
    }

    /// Text form: ascending exponents, terms "c*q^e" joined by " + ",
    /// with "1*" and "q^0" omitted.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, c)| match (e, c) {
                (0, c) => c.to_string(),
                (e, c) if c.is_one() => format!("q^{e}"),
                (e, c) => format!("{c}*q^{e}"),
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

/// As `QPolynomial` but exponents may be negative. Confined to
/// reciprocal-variable intermediates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    /// Multiplication by q^e (e may be negative).
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Converts back to an ordinary polynomial; any negative exponent is an
    /// internal consistency error.
    pub fn into_polynomial(self) -> Result<QPolynomial> {
        let mut out = QPolynomial::zero();
        for (e, c) in self.terms {
            if e < 0 {
                return Err(Error::Internal(format!(
                    "negative exponent q^{e} in a value required to be a polynomial"
                )));
            }
            out.add_term(e as u64, c);
        }
        Ok(out)
    }
}

impl From<&QPolynomial> for QLaurent {
    fn from(p: &QPolynomial) -> Self {
        Self {
            terms: p.terms.iter().map(|(&e, c)| (e as i64, c.clone())).collect(),
        }
    }
}

/// Truncated power series in x with QPolynomial coefficients; arithmetic is
/// exact modulo x^{trunc+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSeries {
    trunc: usize,
    coeffs: Vec<QPolynomial>,
}

impl XSeries {
    /// Builds a series from the given coefficients, truncating or
    /// zero-padding to order `trunc`.
    pub fn new(trunc: usize, mut coeffs: Vec<QPolynomial>) -> Self {
        coeffs.truncate(trunc + 1);
        coeffs.resize(trunc + 1, QPolynomial::zero());
        Self { trunc, coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, s: usize) -> &QPolynomial {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[QPolynomial] {
        &self.coeffs
    }

    pub fn mul(&self, rhs: &XSeries) -> XSeries {
        assert_eq!(self.trunc, rhs.trunc);
        let mut out = vec![QPolynomial::zero(); self.trunc + 1];
        for i in 0..=self.trunc {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.trunc - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        XSeries::new(self.trunc, out)
    }

    /// Exact division modulo x^{trunc+1}; the divisor's constant term must
    /// be the unit polynomial 1.
    pub fn div(&self, rhs: &XSeries) -> Result<XSeries> {
        assert_eq!(self.trunc, rhs.trunc);
        if rhs.coeffs[0] != QPolynomial::one() {
            return Err(Error::Internal(
                "series division requires a unit constant term".into(),
            ));
        }
        let mut out = vec![QPolynomial::zero(); self.trunc + 1];
        for s in 0..=self.trunc {
            // c_s = a_s - sum_{j=1..s} b_j * c_{s-j}
            let mut c = self.coeffs[s].clone();
            for j in 1..=s {
                c = &c - &(&rhs.coeffs[j] * &out[s - j]);
            }
            out[s] = c;
        }
        Ok(XSeries::new(self.trunc, out))
    }
}
