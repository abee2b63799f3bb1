use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact quotient `a / b`. A nonzero remainder is reported as an error since
/// every caller relies on a divisibility guarantee.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::InexactDivision(b.to_string(), a.to_string()));
    }
    Ok(q)
}

/// `p^e` as a big integer.
pub fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Least nonnegative residue of `a` modulo `m > 0`, as a `u128`.
pub fn mod_u128(a: &BigInt, m: u128) -> u128 {
    a.mod_floor(&BigInt::from(m)).to_u128().expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(exact_div(&b(72), &b(9)).unwrap(), b(8));
        assert_eq!(exact_div(&b(0), &b(5)).unwrap(), b(0));
        assert_eq!(exact_div(&b(-13), &b(1)).unwrap(), b(-13));
        assert!(matches!(exact_div(&b(7), &b(2)), Err(Error::InexactDivision(..))));
        assert_eq!(exact_div(&b(7), &b(0)), Err(Error::DivisionByZero));
        assert_eq!(mod_u128(&b(-8), 15), 7);
        assert_eq!(big_pow(2, 100).bits(), 101);
    }
}
