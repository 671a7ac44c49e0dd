//! Subspaces of F_q^n in canonical reduced-row-echelon form, together with
//! the lattice operations and exhaustive enumeration of all j-dimensional
//! subspaces.
//!
//! A subspace is stored as its unique RREF basis matrix: pivot columns
//! strictly increase row by row, every pivot entry is 1, and every pivot
//! column is zero elsewhere. Uniqueness of the RREF makes structural
//! equality coincide with equality as sets of vectors, so subspaces can be
//! hashed, ordered, and deduplicated directly.
//!
//! Enumeration walks the standard pivot-pattern decomposition: choose the j
//! pivot columns (patterns in lexicographic order), then fill the free
//! entries in row-major order, last position varying fastest. Summing
//! q^(free cells) over all patterns is a combinatorial route to the Gaussian
//! coefficient that never touches the q-factorial definition, which is what
//! makes the enumeration count a genuine independent oracle for
//! [`crate::exactnum::q_binomial`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{q_binomial, ExactScalar};
use crate::gfq::{make_field, FieldTable};

/// Default cap on the number of subspaces an enumeration may yield.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A subspace of F_q^n, canonically represented by its RREF basis.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "SubspaceJson", into = "SubspaceJson")]
pub struct Subspace {
    field: Arc<FieldTable>,
    n: usize,
    basis: Vec<Vec<u8>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.n == other.n && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.n.hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Lexicographic on (q, n, basis rows); within one ambient space this is
    /// plain lexicographic comparison of the RREF matrices.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.q(), self.n, &self.basis).cmp(&(other.field.q(), other.n, &other.basis))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(n={}, q={}, basis={:?})",
            self.n,
            self.field.q(),
            self.basis
        )
    }
}

impl Subspace {
    /// The zero subspace of F_q^n.
    pub fn zero(field: &Arc<FieldTable>, n: usize) -> Subspace {
        Subspace {
            field: Arc::clone(field),
            n,
            basis: Vec::new(),
        }
    }

    /// The full space F_q^n.
    pub fn full(field: &Arc<FieldTable>, n: usize) -> Subspace {
        let basis = (0..n)
            .map(|i| {
                let mut row = vec![0u8; n];
                row[i] = 1;
                row
            })
            .collect();
        Subspace {
            field: Arc::clone(field),
            n,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    /// RREF basis rows; empty for the zero subspace.
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn is_zero_space(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.field.q() != other.field.q() {
            return Err(Error::InvalidInput(format!(
                "field mismatch: GF({}) vs GF({})",
                self.field.q(),
                other.field.q()
            )));
        }
        Ok(())
    }

    /// Reduces `v` in place against this basis (v minus its projection onto
    /// the pivot coordinates). Afterwards v is zero iff v was in the span.
    pub fn reduce_vector(&self, v: &mut [u8]) {
        let f = &self.field;
        for row in &self.basis {
            let pivot = row.iter().position(|&e| e != 0).expect("RREF row nonzero");
            let c = v[pivot];
            if c != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = f.sub(*vi, f.mul(c, *ri));
                }
            }
        }
    }

    pub fn contains_vector(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(v.len(), self.n));
        }
        let mut w = v.to_vec();
        self.reduce_vector(&mut w);
        Ok(w.iter().all(|&e| e == 0))
    }

    /// Whether `other` is contained in `self` (every basis vector of `other`
    /// reduces to zero against `self`).
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for row in &other.basis {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The subspace U + V, canonical.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref(&self.field, self.n, &rows)
    }

    /// The subspace U ∩ V, canonical, via the Zassenhaus double matrix:
    /// row-reduce rows [u | u] and [v | 0]; rows whose left half vanished
    /// span the intersection on the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut rows: Vec<Vec<u8>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = vec![0u8; 2 * n];
            row[..n].copy_from_slice(u);
            row[n..].copy_from_slice(u);
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = vec![0u8; 2 * n];
            row[..n].copy_from_slice(v);
            rows.push(row);
        }
        let reduced = rref_rows(&self.field, 2 * n, rows);
        let right: Vec<Vec<u8>> = reduced
            .into_iter()
            .filter(|r| r[..n].iter().all(|&e| e == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        rref(&self.field, n, &right)
    }

    /// True iff dim(U ∩ V) = 0, checked as dim(U + V) = dim U + dim V.
    pub fn is_trivial_intersection(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }
}

/// Canonicalizes a list of row vectors into the subspace they span.
///
/// Idempotent: re-reducing an RREF basis reproduces it. Rejects ragged rows
/// and entries outside `0..q`.
pub fn rref(field: &Arc<FieldTable>, n: usize, vectors: &[Vec<u8>]) -> Result<Subspace> {
    for v in vectors {
        if v.len() != n {
            return Err(Error::InvalidInput(format!(
                "row of length {} in ambient dimension {n}",
                v.len()
            )));
        }
        for &e in v {
            field.check_element(e)?;
        }
    }
    let basis = rref_rows(field, n, vectors.to_vec());
    Ok(Subspace {
        field: Arc::clone(field),
        n,
        basis,
    })
}

/// In-place Gauss-Jordan elimination to RREF; zero rows are dropped.
fn rref_rows(field: &FieldTable, width: usize, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let scale = field
            .inv(rows[pivot_row][col])
            .expect("pivot entry is nonzero");
        for e in rows[pivot_row].iter_mut() {
            *e = field.mul(*e, scale);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let c = row[col];
            if c != 0 {
                for (e, pe) in row.iter_mut().zip(&pivot) {
                    *e = field.sub(*e, field.mul(c, *pe));
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Combinatorial count of j-dimensional subspaces of F_q^n: the sum of
/// q^(free cells) over all pivot patterns. Agrees with the Gaussian
/// coefficient without using the q-factorial definition.
pub fn count_subspaces(n: usize, j: usize, q: u64) -> Result<ExactScalar> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")));
    }
    if j > n {
        return Ok(ExactScalar::zero());
    }
    let mut total = BigInt::from(0);
    let mut pattern = Pattern::first(n, j);
    while let Some(cols) = pattern.current() {
        total += BigInt::from(q).pow(free_cells(n, cols).len() as u32);
        pattern.advance();
    }
    Ok(ExactScalar::from_int(total))
}

/// Pivot-pattern odometer: combinations of j columns out of n, lexicographic.
#[derive(Debug)]
struct Pattern {
    n: usize,
    cols: Vec<usize>,
    done: bool,
}

impl Pattern {
    fn first(n: usize, j: usize) -> Pattern {
        Pattern {
            n,
            cols: (0..j).collect(),
            done: j > n,
        }
    }

    fn current(&self) -> Option<&[usize]> {
        (!self.done).then_some(&self.cols)
    }

    fn advance(&mut self) {
        let j = self.cols.len();
        if j == 0 {
            self.done = true;
            return;
        }
        let mut i = j;
        while i > 0 {
            i -= 1;
            if self.cols[i] < self.n - j + i {
                self.cols[i] += 1;
                for t in i + 1..j {
                    self.cols[t] = self.cols[t - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

/// Free cells of a pivot pattern in row-major order: positions (r, c) with
/// c right of the r-th pivot and c not itself a pivot column.
fn free_cells(n: usize, cols: &[usize]) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (r, &p) in cols.iter().enumerate() {
        for c in p + 1..n {
            if !cols.contains(&c) {
                cells.push((r, c));
            }
        }
    }
    cells
}

/// Streams every j-dimensional subspace of F_q^n exactly once.
///
/// Deterministic order: pivot patterns lexicographically, and within a
/// pattern the free entries count up in row-major order with the last cell
/// varying fastest.
#[derive(Debug)]
pub struct SubspaceEnumerator {
    field: Arc<FieldTable>,
    n: usize,
    pattern: Pattern,
    cells: Vec<(usize, usize)>,
    digits: Vec<u8>,
    fresh_pattern: bool,
}

impl SubspaceEnumerator {
    fn new(field: Arc<FieldTable>, n: usize, j: usize) -> SubspaceEnumerator {
        let pattern = Pattern::first(n, j);
        SubspaceEnumerator {
            field,
            n,
            pattern,
            cells: Vec::new(),
            digits: Vec::new(),
            fresh_pattern: true,
        }
    }

    fn build(&self) -> Subspace {
        let cols = self.pattern.current().expect("pattern active");
        let mut basis: Vec<Vec<u8>> = cols
            .iter()
            .map(|&p| {
                let mut row = vec![0u8; self.n];
                row[p] = 1;
                row
            })
            .collect();
        for (&(r, c), &d) in self.cells.iter().zip(&self.digits) {
            basis[r][c] = d;
        }
        Subspace {
            field: Arc::clone(&self.field),
            n: self.n,
            basis,
        }
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            self.pattern.current()?;
            if self.fresh_pattern {
                self.cells = free_cells(self.n, self.pattern.current()?);
                self.digits = vec![0u8; self.cells.len()];
                self.fresh_pattern = false;
                return Some(self.build());
            }
            // odometer over free entries, last cell fastest
            let q = self.field.q() as u8;
            let mut i = self.digits.len();
            while i > 0 {
                i -= 1;
                if self.digits[i] + 1 < q {
                    self.digits[i] += 1;
                    for d in &mut self.digits[i + 1..] {
                        *d = 0;
                    }
                    return Some(self.build());
                }
            }
            self.pattern.advance();
            self.fresh_pattern = true;
        }
    }
}

/// Enumerates all j-dimensional subspaces of F_q^n under the default cap.
///
/// `j > n` yields an empty stream. If the total count `[n choose j]_q`
/// exceeds the cap the enumeration is refused up front.
pub fn enumerate_subspaces(
    field: &Arc<FieldTable>,
    n: usize,
    j: usize,
) -> Result<SubspaceEnumerator> {
    enumerate_subspaces_capped(field, n, j, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_subspaces`] with an explicit cap.
pub fn enumerate_subspaces_capped(
    field: &Arc<FieldTable>,
    n: usize,
    j: usize,
    cap: u64,
) -> Result<SubspaceEnumerator> {
    if j <= n {
        let count = q_binomial(n, j, field.q())?;
        if count.expect_integer() > BigInt::from(cap) {
            return Err(Error::EnumerationTooLarge {
                count: count.to_string(),
                cap,
            });
        }
    }
    Ok(SubspaceEnumerator::new(Arc::clone(field), n, j))
}

/// JSON form of a subspace: `{"n":…,"q":…,"basis":[[…],…]}`.
///
/// On input the basis rows must already be in RREF; anything else is
/// rejected rather than silently re-reduced.
#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    n: usize,
    q: u64,
    basis: Vec<Vec<u8>>,
}

impl TryFrom<SubspaceJson> for Subspace {
    type Error = Error;

    fn try_from(json: SubspaceJson) -> Result<Subspace> {
        let field = make_field(json.q)?;
        let canonical = rref(&field, json.n, &json.basis)?;
        if canonical.basis != json.basis {
            return Err(Error::InvalidInput(
                "basis rows are not in reduced row echelon form".into(),
            ));
        }
        Ok(canonical)
    }
}

impl From<Subspace> for SubspaceJson {
    fn from(s: Subspace) -> SubspaceJson {
        SubspaceJson {
            n: s.n,
            q: s.field.q(),
            basis: s.basis,
        }
    }
}
