//! Prime field arithmetic.
//!
//! Coefficients are stored as `u32` residues in `0..p`; the [`Field`]
//! descriptor carries `p` and performs the modular operations. Mixing
//! values from different fields is caught at the polynomial level.

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest prime accepted. Span matrices store entries in a byte.
pub const MAX_PRIME: u32 = 251;

/// The prime field F_p for an odd prime `p <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

impl TryFrom<u32> for Field {
    type Error = AlgebraError;

    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if p == 2 || !is_prime(p) || p > MAX_PRIME {
            return Err(AlgebraError::UnsupportedPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduces a signed integer into `0..p`.
    #[inline]
    pub fn reduce(self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32, AlgebraError> {
        let a = a % self.p;
        if a == 0 {
            return Err(AlgebraError::InverseOfZero);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// `C(n, r) mod p`, computed by Lucas' theorem.
    pub fn binomial(self, n: u64, r: u64) -> Result<u32, AlgebraError> {
        if r > n {
            return Err(AlgebraError::BinomialRange { n, r });
        }
        let p = self.p as u64;
        let (mut n, mut r) = (n, r);
        let mut acc = 1u32;
        while r > 0 || n > 0 {
            let (nd, rd) = (n % p, r % p);
            if rd > nd {
                return Ok(0);
            }
            acc = self.mul(acc, self.small_binomial(nd as u32, rd as u32));
            n /= p;
            r /= p;
        }
        Ok(acc)
    }

    // n, r < p, so every factor in the denominator is invertible.
    fn small_binomial(self, n: u32, r: u32) -> u32 {
        let mut num = 1;
        let mut den = 1;
        for i in 0..r {
            num = self.mul(num, (n - i) % self.p);
            den = self.mul(den, (i + 1) % self.p);
        }
        self.mul(num, self.inv(den).expect("nonzero denominator"))
    }

    /// Maps a residue to the symmetric range `(-p/2, p/2]`, for display.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}
