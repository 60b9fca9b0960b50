//! Small finite fields via precomputed tables.
//!
//! Supports the field orders needed by the affine-code construction:
//! 2, 3, 4, 5, 7, 8, 9. Elements are represented as `0..q-1`; for prime
//! powers `p^e` the representation is the base-`p` digit vector of the value
//! (most significant digit first), and multiplication reduces polynomial
//! products modulo a fixed irreducible.

use crate::error::ConstructError;

/// Arithmetic tables for one finite field of order `q <= 9`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// `(p, e, reduction)` for the supported orders; `reduction[j]` is the
/// coefficient of `x^j` in the expansion of `x^e` (so `x^2 = x + 1` in
/// `GF(4)` is `[1, 1]`).
fn field_shape(q: u32) -> Option<(u32, usize, Vec<u32>)> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, vec![])),
        4 => Some((2, 2, vec![1, 1])),    // x^2 = x + 1
        8 => Some((2, 3, vec![1, 1, 0])), // x^3 = x + 1
        9 => Some((3, 2, vec![2, 0])),    // x^2 = 2
        _ => None,
    }
}

fn to_digits(value: u32, p: u32, e: usize) -> Vec<u32> {
    let mut digits = vec![0u32; e];
    let mut v = value;
    for d in digits.iter_mut().rev() {
        *d = v % p;
        v /= p;
    }
    digits
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().fold(0, |acc, &d| acc * p + d)
}

impl GaloisField {
    /// Builds the tables for a supported prime-power order.
    pub fn new(q: u32) -> Result<Self, ConstructError> {
        let (p, e, reduction) =
            field_shape(q).ok_or(ConstructError::UnsupportedFieldOrder { given: q })?;
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let da = to_digits(a, p, e);
                let db = to_digits(b, p, e);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_digits(&sum, p);

                // Polynomial product; index 0 is the most significant digit,
                // so convert to ascending powers for the reduction step.
                let fa: Vec<u32> = da.iter().rev().copied().collect();
                let fb: Vec<u32> = db.iter().rev().copied().collect();
                let mut prod = vec![0u32; 2 * e - 1];
                for (i, &x) in fa.iter().enumerate() {
                    for (j, &y) in fb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (e..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (j, &red) in reduction.iter().enumerate() {
                        prod[i - e + j] = (prod[i - e + j] + c * red) % p;
                    }
                }
                let digits: Vec<u32> = prod[..e].iter().rev().copied().collect();
                mul[(a * q + b) as usize] = from_digits(&digits, p);
            }
        }
        Ok(GaloisField { q, add, mul })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    /// Dot product of two element vectors.
    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}
