//! Tiny finite-field helpers: F16 arithmetic and small matrices over F2.

use crate::error::{Error, Result};
use std::ops::{Add, Mul};

/// Reduction polynomial t^4 + t + 1.
const F16_MODULUS: u8 = 0b1_0011;

/// An element of F16 = F2[t]/(t^4 + t + 1), stored as a 4-bit vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F16(u8);

impl F16 {
    pub const ZERO: F16 = F16(0);
    pub const ONE: F16 = F16(1);

    pub fn new(bits: u8) -> Self {
        F16(bits & 0x0f)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = F16> {
        (0u8..16).map(F16)
    }

    pub fn pow(self, mut e: u32) -> F16 {
        let mut base = self;
        let mut acc = F16::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for F16 {
    type Output = F16;
    fn add(self, rhs: F16) -> F16 {
        F16(self.0 ^ rhs.0)
    }
}

impl Mul for F16 {
    type Output = F16;
    fn mul(self, rhs: F16) -> F16 {
        let mut a = self.0 as u16;
        let mut b = rhs.0 as u16;
        let mut acc = 0u16;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
        }
        for bit in (4..8).rev() {
            if acc >> bit & 1 == 1 {
                acc ^= (F16_MODULUS as u16) << (bit - 4);
            }
        }
        F16(acc as u8)
    }
}

/// A square matrix over F2 of dimension 1 to 4. Row `i` is a bitmask whose
/// bit `j` is the `(i, j)` entry; vectors are column bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    dim: u8,
    rows: [u8; 4],
}

impl F2Matrix {
    pub fn new(dim: usize, rows: &[u8]) -> Result<Self> {
        if !(1..=4).contains(&dim) || rows.len() != dim {
            return Err(Error::ParamOutOfRange(format!(
                "F2 matrix of dimension {dim} with {} rows",
                rows.len()
            )));
        }
        let mask = (1u8 << dim) - 1;
        let mut r = [0u8; 4];
        for (i, &row) in rows.iter().enumerate() {
            r[i] = row & mask;
        }
        Ok(F2Matrix { dim: dim as u8, rows: r })
    }

    pub fn identity(dim: usize) -> Self {
        let rows: Vec<u8> = (0..dim).map(|i| 1u8 << i).collect();
        F2Matrix::new(dim, &rows).expect("dimension checked by caller")
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &F2Matrix) -> Result<F2Matrix> {
        let d1 = self.dim as usize;
        let mut rows: Vec<u8> = self.rows[..d1].to_vec();
        rows.extend(other.rows().iter().map(|r| r << d1));
        F2Matrix::new(d1 + other.dim(), &rows)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows[..self.dim as usize]
    }

    pub fn apply(&self, v: u8) -> u8 {
        let mut out = 0u8;
        for (i, &row) in self.rows().iter().enumerate() {
            out |= (((row & v).count_ones() & 1) as u8) << i;
        }
        out
    }

    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let mut rows = [0u8; 4];
        for (i, &row) in self.rows().iter().enumerate() {
            let mut acc = 0u8;
            for (j, &rrow) in rhs.rows().iter().enumerate() {
                if row >> j & 1 == 1 {
                    acc ^= rrow;
                }
            }
            rows[i] = acc;
        }
        F2Matrix { dim: self.dim, rows }
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Multiplicative order in GL(dim, 2).
    pub fn order(&self) -> Result<u32> {
        if !self.is_invertible() {
            return Err(Error::Singular);
        }
        let id = F2Matrix::identity(self.dim());
        let mut acc = *self;
        let mut k = 1;
        while acc != id {
            acc = acc.mul(self);
            k += 1;
        }
        Ok(k)
    }

    /// Nonzero vectors fixed by the matrix.
    pub fn fixed_vectors(&self) -> Vec<u8> {
        (1u8..(1 << self.dim))
            .filter(|&v| self.apply(v) == v)
            .collect()
    }
}

/// Rank over F2 of a list of bitmask vectors.
pub fn rank_of(vectors: &[u8]) -> usize {
    let mut basis: Vec<u8> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Every element of GL(dim, 2), each exactly once, in lexicographic row order.
pub fn gl_elements(dim: usize) -> Result<impl Iterator<Item = F2Matrix>> {
    if !(1..=4).contains(&dim) {
        return Err(Error::ParamOutOfRange(format!("GL dimension {dim}")));
    }
    let span = 1u32 << dim;
    let total = span.pow(dim as u32);
    Ok((0..total).filter_map(move |code| {
        let rows: Vec<u8> = (0..dim)
            .map(|i| ((code / span.pow(i as u32)) % span) as u8)
            .collect();
        let m = F2Matrix::new(dim, &rows).ok()?;
        m.is_invertible().then_some(m)
    }))
}

/// |GL(dim, 2)| = prod (2^dim - 2^i).
pub fn gl_order(dim: usize) -> u64 {
    (0..dim).map(|i| (1u64 << dim) - (1u64 << i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f16_units_have_order_dividing_15() {
        for x in F16::all().filter(|&x| x != F16::ZERO) {
            assert_eq!(x.pow(15), F16::ONE, "{x:?}");
        }
    }

    #[test]
    fn f16_fourth_power_is_field_automorphism() {
        for x in F16::all() {
            for y in F16::all() {
                assert_eq!((x + y).pow(4), x.pow(4) + y.pow(4));
                assert_eq!((x * y).pow(4), x.pow(4) * y.pow(4));
            }
        }
        let images: std::collections::BTreeSet<_> = F16::all().map(|x| x.pow(4)).collect();
        assert_eq!(images.len(), 16);
    }

    #[test]
    fn f16_multiplication_is_field() {
        for x in F16::all().filter(|&x| x != F16::ZERO) {
            assert_eq!(F16::all().filter(|&y| x * y == F16::ONE).count(), 1);
        }
    }

    #[test]
    fn gl_counts() {
        assert_eq!(gl_elements(1).unwrap().count(), 1);
        assert_eq!(gl_elements(2).unwrap().count(), 6);
        assert_eq!(gl_elements(3).unwrap().count(), 168);
        // (16-1)(16-2)(16-4)(16-8)
        assert_eq!(gl_elements(4).unwrap().count(), 15 * 14 * 12 * 8);
        assert_eq!(gl_order(4), 20160);
    }

    #[test]
    fn identity_order_and_singular() {
        assert_eq!(F2Matrix::identity(4).order().unwrap(), 1);
        let sing = F2Matrix::new(2, &[0b11, 0b11]).unwrap();
        assert_eq!(sing.order(), Err(Error::Singular));
    }

    #[test]
    fn order_divides_gl_order() {
        for m in gl_elements(3).unwrap() {
            assert_eq!(168 % m.order().unwrap() as u64, 0);
        }
    }
}
