//! Table-backed finite fields GF(q) for prime powers q <= 16.
//!
//! Every supported field is realized by complete addition, multiplication,
//! negation, and inversion tables built once at construction and validated
//! exhaustively (at q <= 16 a full axiom sweep is at most 16^3 triples per
//! law). Elements are the integers `0..q`; for extension fields GF(p^k) the
//! integer is the base-p encoding of the polynomial representative, low
//! digit = constant term.
//!
//! Extension fields are constructed modulo a fixed irreducible polynomial
//! per (p, k) so element encodings are identical across runs and platforms:
//!
//! | q  | modulus            |
//! |----|--------------------|
//! | 4  | x^2 + x + 1        |
//! | 8  | x^3 + x + 1        |
//! | 16 | x^4 + x + 1        |
//! | 9  | x^2 + 2x + 2       |

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 16;

/// Irreducible modulus for GF(p^k), coefficients low-to-high, monic.
fn irreducible(p: u64, k: u32) -> Option<&'static [u8]> {
    match (p, k) {
        (2, 2) => Some(&[1, 1, 1]),
        (2, 3) => Some(&[1, 1, 0, 1]),
        (2, 4) => Some(&[1, 1, 0, 0, 1]),
        (3, 2) => Some(&[2, 2, 1]),
        _ => None,
    }
}

/// Decomposes q into (p, k) with q = p^k, p prime, or `None`.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut k = 0;
    while rest > 1 {
        if rest % p != 0 {
            return None;
        }
        rest /= p;
        k += 1;
    }
    Some((p, k))
}

/// Arithmetic tables for GF(q).
///
/// Immutable after construction; share freely across threads via [`Arc`].
pub struct FieldTable {
    q: u64,
    p: u64,
    k: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>, // index 0 unused
}

impl PartialEq for FieldTable {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for FieldTable {}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTable(GF({}))", self.q)
    }
}

impl FieldTable {
    /// Builds and validates the tables for GF(q), q a prime power <= 16.
    pub fn new(q: u64) -> Result<FieldTable> {
        if q > MAX_ORDER {
            return Err(Error::UnsupportedField(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        let modulus = if k > 1 {
            Some(irreducible(p, k).ok_or(Error::UnsupportedField(q))?)
        } else {
            None
        };

        let qs = q as usize;
        let to_digits = |mut e: u64| -> Vec<u64> {
            let mut d = vec![0u64; k as usize];
            for slot in d.iter_mut() {
                *slot = e % p;
                e /= p;
            }
            d
        };
        let from_digits = |d: &[u64]| -> u64 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = to_digits(a);
            for b in 0..q {
                let db = to_digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_digits(&sum) as u8;

                // polynomial product, then reduction by the monic modulus
                let mut prod = vec![0u64; 2 * k as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if let Some(m) = modulus {
                    for deg in (k as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        prod[deg] = 0;
                        for (i, &mc) in m.iter().enumerate().take(k as usize) {
                            let idx = deg - k as usize + i;
                            prod[idx] = (prod[idx] + p * p - c * mc as u64 % p) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = from_digits(&prod[..k as usize]) as u8;
            }
        }

        let mut neg = vec![0u8; qs];
        for a in 0..q {
            neg[a as usize] = (0..q)
                .find(|&b| add[(a * q + b) as usize] == 0)
                .expect("additive inverse exists") as u8;
        }
        let mut inv = vec![0u8; qs];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[(a * q + b) as usize] == 1)
                .ok_or(Error::UnsupportedField(q))? as u8;
        }

        let table = FieldTable {
            q,
            p,
            k,
            add,
            mul,
            neg,
            inv,
        };
        table.validate()?;
        Ok(table)
    }

    /// Exhaustive field-axiom sweep; cheap at q <= 16.
    fn validate(&self) -> Result<()> {
        let q = self.q as u8;
        let fail = |law: &str| {
            Err(Error::InvariantViolation(format!(
                "GF({}) table failed {law}",
                self.q
            )))
        };
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return fail("identity laws");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse");
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return fail("multiplicative inverse");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        // characteristic: 1 added p times is 0, and no earlier
        let mut acc = 0u8;
        for i in 1..=self.p {
            acc = self.add(acc, 1);
            if (acc == 0) != (i == self.p) {
                return fail("characteristic");
            }
        }
        Ok(())
    }

    /// Field order q.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Characteristic p.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree k, with q = p^k.
    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    pub fn check_element(&self, a: u8) -> Result<()> {
        if (a as u64) < self.q {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: a as u64,
                q: self.q,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: u8) -> Result<u8> {
        self.check_element(a)?;
        if a == 0 {
            Err(Error::DivisionByZero(self.q))
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e by repeated multiplication.
    pub fn pow(&self, a: u8, e: u64) -> u8 {
        let mut acc = 1u8;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }
}

/// All supported field orders in increasing order.
pub const SUPPORTED_ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Builds a shareable GF(q) table.
pub fn make_field(q: u64) -> Result<Arc<FieldTable>> {
    Ok(Arc::new(FieldTable::new(q)?))
}
