use std::fmt;

use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive). Keeps every product of two
/// residues below 2^62 so several can be summed in a `u64` before reducing.
pub const PRIME_BOUND: u64 = 1 << 31;

/// A validated prime characteristic `2 <= p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if (2..PRIME_BOUND).contains(&p) && crate::arith::numtheory::is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    pub fn pow(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i64(t0))
    }

    /// Number of `(p-1)^2` products that fit in a `u64` accumulator.
    #[inline]
    pub fn lazy_budget(self) -> usize {
        let m = (self.0 - 1).max(1);
        (u64::MAX / (m * m)).min(usize::MAX as u64) as usize
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the prime field, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    p: Prime,
}

// Fallible on mismatched moduli, so not the operator traits.
#[allow(clippy::should_implement_trait)]
impl FpElem {
    pub fn new(p: Prime, value: u64) -> Self {
        FpElem { value: value % p.get(), p }
    }

    pub fn from_i64(p: Prime, value: i64) -> Self {
        FpElem { value: p.reduce_i64(value), p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FpElem) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p.get(), other.p.get()))
        }
    }

    pub fn add(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        Ok(FpElem { value: self.p.add(self.value, other.value), p: self.p })
    }

    pub fn sub(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        Ok(FpElem { value: self.p.sub(self.value, other.value), p: self.p })
    }

    pub fn mul(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        Ok(FpElem { value: self.p.mul(self.value, other.value), p: self.p })
    }

    pub fn neg(self) -> FpElem {
        FpElem { value: self.p.neg(self.value), p: self.p }
    }

    pub fn inv(self) -> Result<FpElem> {
        let value = self.p.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FpElem { value, p: self.p })
    }

    pub fn pow(self, e: u64) -> FpElem {
        FpElem { value: self.p.pow(self.value, e), p: self.p }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(PRIME_BOUND + 11).is_err());
        assert_eq!(Prime::new(2147483647).unwrap().get(), 2147483647);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Prime::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(p.mul(a, p.inv(a).unwrap()), 1);
        }
        assert_eq!(p.inv(0), None);
    }

    #[test]
    fn elem_mismatch() {
        let a = FpElem::new(Prime::new(3).unwrap(), 1);
        let b = FpElem::new(Prime::new(5).unwrap(), 1);
        assert_eq!(a.add(b), Err(Error::ModulusMismatch(3, 5)));
        assert_eq!(FpElem::from_i64(Prime::new(7).unwrap(), -1).value(), 6);
    }
}
