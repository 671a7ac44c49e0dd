//! Exact evaluation of the size bounds and weighted sums attached to the
//! pair-system conditions.
//!
//! Everything is computed in exact rational arithmetic: caps like
//! `(q/(q-1))^n q^{uv}` are rationals, and tightness checks (a sum equal to
//! 1 exactly) would be meaningless in floating point.
//!
//! An evaluator never re-checks the hypotheses of the inequality it
//! evaluates. On a system that fails its verifier the left-hand side is
//! still a well-defined number worth inspecting, it just carries no claim;
//! callers decide whether [`BoundResult::holds`] means anything by pairing
//! it with the matching verifier from [`crate::pairsystems`].

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    checked_exponent, checked_exponent_product, q_binomial, q_binomial_signed, ExactScalar,
};
use crate::pairsystems::{SetPairSystem, SubspacePairSystem};

/// An evaluated inequality `lhs <= rhs`, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    /// True iff lhs <= rhs as exact rationals.
    pub holds: bool,
}

impl BoundResult {
    fn new(lhs: ExactScalar, rhs: ExactScalar) -> BoundResult {
        let holds = lhs <= rhs;
        BoundResult { lhs, rhs, holds }
    }

    /// Whether the inequality is tight (lhs = rhs exactly).
    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `sum_i 1 / C(|A_i|+|B_i|, |A_i|) <= 1`.
///
/// The inequality is a theorem only under the both-direction
/// cross-intersection hypothesis (`verify_bollobas`).
pub fn bollobas_sum(s: &SetPairSystem) -> BoundResult {
    let mut lhs = ExactScalar::zero();
    for (a, b) in s.pairs() {
        let c = binomial(BigInt::from(a.len() + b.len()), BigInt::from(a.len()));
        lhs += ExactScalar::from_ratio(BigInt::one(), c).expect("binomial is positive");
    }
    BoundResult::new(lhs, ExactScalar::one())
}

/// `sum_i p^{|A_i|} (1-p)^{|B_i|} <= 1` for a rational weight 0 < p < 1.
///
/// A theorem under the one-direction cross-intersection hypothesis
/// (`verify_tuza_sets`), for every admissible p simultaneously.
pub fn tuza_sum(s: &SetPairSystem, p: &ExactScalar) -> Result<BoundResult> {
    if *p <= ExactScalar::zero() || *p >= ExactScalar::one() {
        return Err(Error::InvalidParameter(format!(
            "weight p must satisfy 0 < p < 1, got {p}"
        )));
    }
    let t = ExactScalar::one() - p.clone();
    let mut lhs = ExactScalar::zero();
    for (a, b) in s.pairs() {
        lhs += p.pow(a.len() as i32) * t.pow(b.len() as i32);
    }
    Ok(BoundResult::new(lhs, ExactScalar::one()))
}

/// The uniform-size caps on the number of pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformCaps {
    /// `C(r+s, s)`, for both-direction uniform systems.
    pub thm12: ExactScalar,
    /// `(r+s)^{r+s} / (r^r s^s)`, for one-direction uniform systems.
    pub thm14: ExactScalar,
    /// `C(r+s, r)`, for the skew subspace condition.
    pub thm16: ExactScalar,
}

/// Caps for r-uniform / s-uniform systems. Requires r, s >= 1 because the
/// second cap has `r^r s^s` in its denominator and no 0^0 convention is
/// assumed.
pub fn uniform_caps(r: usize, s: usize) -> Result<UniformCaps> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidParameter(
            "uniform caps need r >= 1 and s >= 1".into(),
        ));
    }
    let c_rs = binomial(BigInt::from(r + s), BigInt::from(s));
    let numer = BigInt::from(r + s).pow((r + s) as u32);
    let denom = BigInt::from(r).pow(r as u32) * BigInt::from(s).pow(s as u32);
    Ok(UniformCaps {
        thm12: ExactScalar::from_int(c_rs.clone()),
        thm14: ExactScalar::from_ratio(numer, denom)?,
        thm16: ExactScalar::from_int(c_rs),
    })
}

/// Recursive lower bound for the largest one-direction uniform set-pair
/// system with |A_i| = a, |B_i| = b.
///
/// Base case: the largest (a, 1) system has exactly 2a+1 pairs. The second
/// base m(1, b) = 2b+1 comes from role symmetry (swapping every (A_i, B_i)
/// preserves the conditions); for a, b >= 2 the recursion
/// `m(a, b) >= m(a, b-1) + m(a-1, b)` applies. This is a certified lower
/// bound, not the extremal value itself.
pub fn prop15_lower(a: usize, b: usize) -> Result<ExactScalar> {
    Ok(ExactScalar::from_int(prop15_table(a, b)?[a][b].clone()))
}

/// Whether [`prop15_lower`] relied on the role-symmetry base m(1, b) = 2b+1.
pub fn prop15_assumes_symmetry(a: usize, b: usize) -> bool {
    a >= 1 && b >= 2
}

/// Full DP table of the recursive lower bound, indexed `[i][j]` for
/// 1 <= i <= a, 1 <= j <= b (row/column 0 unused).
pub fn prop15_table(a: usize, b: usize) -> Result<Vec<Vec<BigInt>>> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(
            "lower bound is defined for a >= 1 and b >= 1 only".into(),
        ));
    }
    let mut table = vec![vec![BigInt::zero(); b + 1]; a + 1];
    for i in 1..=a {
        for j in 1..=b {
            let value = if j == 1 {
                BigInt::from(2 * i + 1)
            } else if i == 1 {
                BigInt::from(2 * j + 1)
            } else {
                &table[i][j - 1] + &table[i - 1][j]
            };
            table[i][j] = value;
        }
    }
    Ok(table)
}

/// The weighted subspace-count sum
/// `sum_i [n-v_i-u_i choose j-u_i]_q q^{(j-u_i)v_i} / [n choose j]_q`
/// with u_i = dim U_i, v_i = dim V_i, against the constant 1.
///
/// Terms whose Gaussian coefficient has out-of-range indices (j < u_i, or
/// j - u_i > n - v_i - u_i) vanish: they count empty families of subspaces.
/// The inequality is a theorem for weak ISP-systems at every 0 <= j <= n.
pub fn thm18_lhs(s: &SubspacePairSystem, j: usize) -> Result<BoundResult> {
    let n = s.ambient_dim();
    let q = s.q();
    if j > n {
        return Err(Error::InvalidParameter(format!(
            "j = {j} exceeds ambient dimension {n}"
        )));
    }
    let total = q_binomial(n, j, q)?;
    let mut lhs = ExactScalar::zero();
    for i in 0..s.len() {
        let (u, v) = s.dims(i)?;
        let top = n as i64 - v as i64 - u as i64;
        let bottom = j as i64 - u as i64;
        let count = q_binomial_signed(top, bottom, q)?;
        if count.is_zero() {
            continue;
        }
        // bottom >= 0 whenever the count is nonzero
        let exp = checked_exponent_product(bottom as usize, v, "(j - u_i) * v_i")?;
        lhs += &(count * ExactScalar::from_int(q).pow(exp)) / &total;
    }
    Ok(BoundResult::new(lhs, ExactScalar::one()))
}

/// The size cap `(q/(q-1))^n q^{uv}` for weak (u,v)-systems in F_q^n.
pub fn thm19_cap(n: usize, u: usize, v: usize, q: u64) -> Result<ExactScalar> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")));
    }
    let ratio = ExactScalar::from_ratio(q, q - 1)?;
    let n_exp = checked_exponent(n, "n")?;
    let uv_exp = checked_exponent_product(u, v, "u * v")?;
    Ok(ratio.pow(n_exp) * ExactScalar::from_int(q).pow(uv_exp))
}

/// Gaussian-coefficient cap `[n choose j]_q <= (q/(q-1))^n q^{j(n-j)}`.
///
/// This is a proven bound for all 0 <= j <= n: a failed check signals an
/// implementation bug, not a mathematical discovery.
pub fn lemma21_check(n: usize, j: usize, q: u64) -> Result<BoundResult> {
    if j > n {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds n = {n}")));
    }
    let lhs = q_binomial(n, j, q)?;
    let ratio = ExactScalar::from_ratio(q, q - 1)?;
    let n_exp = checked_exponent(n, "n")?;
    let j_exp = checked_exponent_product(j, n - j, "j * (n - j)")?;
    let rhs = ratio.pow(n_exp) * ExactScalar::from_int(q).pow(j_exp);
    Ok(BoundResult::new(lhs, rhs))
}
