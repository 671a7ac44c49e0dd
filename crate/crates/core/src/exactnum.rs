//! Exact arithmetic for q-integers, q-factorials, and Gaussian (q-binomial)
//! coefficients, both as integers for a fixed q and as polynomials in q.
//!
//! The q-integer is `[k]_q = 1 + q + ... + q^{k-1}`, the q-factorial is
//! `[n]_q! = [1]_q [2]_q ... [n]_q`, and the Gaussian coefficient is
//!
//! ```text
//! [n choose m]_q = [n]_q! / ([n-m]_q! [m]_q!)
//! ```
//!
//! which counts the m-dimensional subspaces of an n-dimensional vector space
//! over GF(q). Substituting q = 1 recovers the ordinary binomial coefficient.
//!
//! Everything here is exact: integers are arbitrary precision and rationals
//! are kept in lowest terms, so tightness checks (a sum equal to 1 exactly)
//! are meaningful equalities rather than floating-point approximations.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number; integers are the denominator-one case.
///
/// Always stored in lowest terms with a positive denominator, so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_int<T: Into<BigInt>>(value: T) -> Self {
        ExactScalar(BigRational::from_integer(value.into()))
    }

    /// Builds `numer / denom`, reducing to lowest terms.
    pub fn from_ratio<T: Into<BigInt>, U: Into<BigInt>>(numer: T, denom: U) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(ExactScalar(BigRational::new(numer.into(), denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The integer value, if the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// Unwraps an integer value; panics if the scalar is a proper fraction.
    /// Reserved for quantities that are integral by construction (counts).
    pub fn expect_integer(&self) -> BigInt {
        assert!(self.is_integer(), "expected integer, got {}", self);
        self.0.to_integer()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_integer().and_then(|n| n.to_u64())
    }

    /// Exact power with negative exponents allowed for nonzero values.
    pub fn pow(&self, exp: i32) -> ExactScalar {
        assert!(
            exp >= 0 || !self.is_zero(),
            "negative power of zero is undefined"
        );
        ExactScalar(self.0.pow(exp))
    }

    /// Always renders as `p/q`, including a denominator of one (`8/1`).
    pub fn as_ratio_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Parses either an integer string (`35`, `-2`) or a ratio (`3/4`).
    pub fn parse(text: &str) -> Result<ExactScalar> {
        let bad = || Error::InvalidParameter(format!("cannot parse {text:?} as a rational"));
        match text.split_once('/') {
            None => {
                let n = BigInt::from_str(text.trim()).map_err(|_| bad())?;
                Ok(ExactScalar::from_int(n))
            }
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                ExactScalar::from_ratio(n, d)
            }
        }
    }

    pub fn abs(&self) -> ExactScalar {
        ExactScalar(self.0.abs())
    }
}

impl fmt::Display for ExactScalar {
    /// Integers render without a denominator (`35`), proper fractions as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({})", self)
    }
}

impl Serialize for ExactScalar {
    /// Machine form is always the full `p/q` string; integer-string output is
    /// a presentation choice left to callers.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.as_ratio_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        ExactScalar::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl From<u64> for ExactScalar {
    fn from(value: u64) -> Self {
        ExactScalar::from_int(value)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(value: BigInt) -> Self {
        ExactScalar::from_int(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero");
        ExactScalar(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &'a ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero");
        ExactScalar(&self.0 / &rhs.0)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: ExactScalar) {
        self.0 *= rhs.0;
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")))
    } else {
        Ok(())
    }
}

/// Converts a user-supplied exponent; values past i32 would silently wrap
/// in an `as` cast and corrupt an exact result.
pub(crate) fn checked_exponent(value: usize, what: &str) -> Result<i32> {
    i32::try_from(value)
        .map_err(|_| Error::InvalidParameter(format!("{what} = {value} is too large")))
}

/// `a * b` guarded the same way, for exponents built from two parameters.
pub(crate) fn checked_exponent_product(a: usize, b: usize, what: &str) -> Result<i32> {
    let product = a
        .checked_mul(b)
        .ok_or_else(|| Error::InvalidParameter(format!("{what} overflows")))?;
    checked_exponent(product, what)
}

/// The q-integer `[k]_q = 1 + q + ... + q^{k-1} = (q^k - 1)/(q - 1)`.
///
/// `q_int(0, q) = 0` (empty sum).
pub fn q_int(k: usize, q: u64) -> Result<ExactScalar> {
    check_q(q)?;
    let k =
        u32::try_from(k).map_err(|_| Error::InvalidParameter(format!("k = {k} is too large")))?;
    let qb = BigInt::from(q);
    let num = qb.pow(k) - 1u32;
    let den = BigInt::from(q) - 1;
    let (quo, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    Ok(ExactScalar::from_int(quo))
}

/// The q-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize, q: u64) -> Result<ExactScalar> {
    check_q(q)?;
    let mut acc = BigInt::one();
    for k in 1..=n {
        acc *= q_int(k, q)?.expect_integer();
    }
    Ok(ExactScalar::from_int(acc))
}

/// The Gaussian coefficient `[n choose m]_q` as an exact integer.
///
/// Computed by the product formula `prod_{i=1}^{m} (q^{n-m+i} - 1)/(q^i - 1)`
/// with stepwise exact division (every partial product is itself a Gaussian
/// coefficient, hence an integer), rather than by dividing factorials.
///
/// `m > n` returns 0: there are no m-dimensional subspaces inside a smaller
/// space, and sum formulas rely on those terms vanishing term-wise.
pub fn q_binomial(n: usize, m: usize, q: u64) -> Result<ExactScalar> {
    check_q(q)?;
    if m > n {
        return Ok(ExactScalar::zero());
    }
    if u32::try_from(n).is_err() {
        return Err(Error::InvalidParameter(format!("n = {n} is too large")));
    }
    let m = m.min(n - m);
    let qb = BigInt::from(q);
    let mut acc = BigInt::one();
    for i in 1..=m {
        acc *= qb.pow((n - m + i) as u32) - 1u32;
        let (quo, rem) = acc.div_rem(&(qb.pow(i as u32) - 1u32));
        debug_assert!(rem.is_zero());
        acc = quo;
    }
    Ok(ExactScalar::from_int(acc))
}

/// `[top choose bottom]_q` extended to signed arguments: any configuration
/// with no corresponding subspaces (negative or out-of-range indices) is 0.
pub(crate) fn q_binomial_signed(top: i64, bottom: i64, q: u64) -> Result<ExactScalar> {
    check_q(q)?;
    if top < 0 || bottom < 0 || bottom > top {
        return Ok(ExactScalar::zero());
    }
    q_binomial(top as usize, bottom as usize, q)
}

/// A polynomial in q with integer coefficients, stored dense by degree.
///
/// Canonical form: no trailing zero coefficient. The coefficients of a
/// Gaussian polynomial are all non-negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients low-to-high; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluation by Horner's rule at an arbitrary integer point. Evaluating
    /// a Gaussian polynomial at q = 1 yields the plain binomial coefficient.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn eval_u64(&self, q: u64) -> ExactScalar {
        ExactScalar::from_int(self.eval(&BigInt::from(q)))
    }

    fn add(&self, other: &QPolynomial) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPolynomial::from_coeffs(coeffs)
    }

    /// Multiplication by `q^shift`.
    fn shifted(&self, shift: usize) -> QPolynomial {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Low-to-high coefficients as a space-separated string; `0` for zero.
    pub fn coeffs_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial[{}]", self.coeffs_string())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeffs_string())
    }
}

/// The Gaussian coefficient `[n choose m]_q` as a polynomial in q.
///
/// Built by the q-Pascal recurrence
/// `[n choose m]_q = [n-1 choose m-1]_q + q^m [n-1 choose m]_q`,
/// which keeps every intermediate coefficient a non-negative integer.
/// `m > n` yields the zero polynomial.
pub fn q_binomial_poly(n: usize, m: usize) -> QPolynomial {
    if m > n {
        return QPolynomial::zero();
    }
    // row[k] = [row_n choose k]_q, built upward from [0 choose 0]_q = 1
    let mut row = vec![QPolynomial::one()];
    for _ in 1..=n {
        let prev = row;
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(QPolynomial::one());
        for k in 1..prev.len() {
            next.push(prev[k - 1].add(&prev[k].shifted(k)));
        }
        next.push(QPolynomial::one());
        row = next;
    }
    row[m].clone()
}
