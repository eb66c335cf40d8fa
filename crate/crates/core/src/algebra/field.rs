//! Prime fields F_p with p < 2^31.

use crate::error::{Error, Result};

pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

/// The prime field F_p. Elements are plain `u32` residues in `[0, p)`;
/// products are formed in `u64` and reduced once, which cannot overflow
/// because `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_CHARACTERISTIC).contains(&p) || !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        // extended Euclid on i64 keeps this fast for every supported p
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(self.p as i64) as u32
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn from_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Symmetric representative, used only for display of negative signs.
    pub fn is_negative_repr(&self, a: u32) -> bool {
        a > self.p / 2
    }
}

/// Deterministic trial division; adequate for p < 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
