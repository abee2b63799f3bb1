use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};

use super::prime::{FpElem, Prime};
use crate::error::{Error, Result};

/// Operand length at which multiplication switches to Karatsuba.
const KARATSUBA_THRESHOLD: usize = 40;

/// Dense univariate polynomial over F_p, ascending coefficients, no trailing
/// zeros. The zero polynomial has an empty coefficient vector and
/// `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn zero(p: Prime) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: Prime) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: Prime) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn constant(p: Prime, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn monomial(p: Prime, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(p, coeffs)
    }

    /// Builds a polynomial from ascending coefficients, reducing mod p.
    pub fn new(p: Prime, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p.get();
        }
        let mut f = FpPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn from_i64(p: Prime, coeffs: &[i64]) -> Self {
        FpPoly::new(p, coeffs.iter().map(|&c| p.reduce_i64(c)).collect())
    }

    /// Builds from already-reduced coefficients.
    pub(crate) fn from_reduced(p: Prime, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p.get()));
        let mut f = FpPoly { p, coeffs };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient vector zero-padded (or truncated) to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(n, 0);
        v
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff_elem(&self, i: usize) -> FpElem {
        FpElem::new(self.p, self.coeff(i))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &FpPoly) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p.get(), other.p.get()))
        }
    }

    pub fn try_add(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| p.add(self.coeff(i), other.coeff(i))).collect();
        Ok(FpPoly::from_reduced(p, coeffs))
    }

    pub fn try_sub(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| p.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(FpPoly::from_reduced(p, coeffs))
    }

    pub fn try_mul(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        Ok(FpPoly::from_reduced(self.p, mul_slices(self.p, &self.coeffs, &other.coeffs)))
    }

    /// Plain quadratic product, kept separate so tests can compare the two
    /// multipliers.
    pub fn mul_schoolbook(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        Ok(FpPoly::from_reduced(self.p, schoolbook(self.p, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        let c = c % p.get();
        FpPoly::from_reduced(p, self.coeffs.iter().map(|&a| p.mul(a, c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        FpPoly { p: self.p, coeffs }
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> FpPoly {
        FpPoly::from_reduced(self.p, self.coeffs.iter().take(n).copied().collect())
    }

    /// Reverses with respect to degree bound `n`: `x^n f(1/x)`.
    pub fn reverse(&self, n: usize) -> FpPoly {
        let mut v = self.padded(n + 1);
        v.reverse();
        FpPoly::from_reduced(self.p, v)
    }

    pub fn monic(&self) -> FpPoly {
        match self.p.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| p.mul(c, i as u64 % p.get()))
            .collect();
        FpPoly::from_reduced(p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| p.add(p.mul(acc, x), c))
    }

    /// Euclidean division: returns `(q, r)` with `self = q*b + r`,
    /// `deg r < deg b`.
    pub fn divrem(&self, b: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        if self.coeffs.len() <= db {
            return Ok((FpPoly::zero(p), self.clone()));
        }
        let inv_lead = p.inv(b.leading()).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = p.mul(r[k + db], inv_lead);
            q[k] = c;
            if c != 0 {
                let nc = p.neg(c);
                for (i, &bi) in b.coeffs.iter().enumerate() {
                    r[k + i] = p.add(r[k + i], p.mul(nc, bi));
                }
            }
        }
        r.truncate(db);
        Ok((FpPoly::from_reduced(p, q), FpPoly::from_reduced(p, r)))
    }

    pub fn rem(&self, b: &FpPoly) -> Result<FpPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &FpPoly) -> Result<(FpPoly, FpPoly, FpPoly)> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = p.inv(r0.leading()).ok_or(Error::DivisionByZero)?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn mulmod(&self, other: &FpPoly, m: &FpPoly) -> Result<FpPoly> {
        self.try_mul(other)?.rem(m)
    }

    /// `self^e mod m` for a nonnegative big exponent.
    pub fn powmod(&self, e: &BigInt, m: &FpPoly) -> Result<FpPoly> {
        if e.sign() == Sign::Minus {
            return Err(Error::NegativeExponent);
        }
        self.powmod_biguint(e.magnitude(), m)
    }

    pub fn powmod_biguint(&self, e: &BigUint, m: &FpPoly) -> Result<FpPoly> {
        self.check(m)?;
        match m.degree() {
            None | Some(0) => return Err(Error::ConstantModulus),
            _ => {}
        }
        let base = self.rem(m)?;
        let mut acc = FpPoly::one(self.p);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m)?;
            if e.bit(i) {
                acc = acc.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn powmod_u128(&self, e: u128, m: &FpPoly) -> Result<FpPoly> {
        self.powmod_biguint(&BigUint::from(e), m)
    }

    /// `self(g) mod m` by Horner's rule.
    pub fn compose_mod(&self, g: &FpPoly, m: &FpPoly) -> Result<FpPoly> {
        self.check(g)?;
        let g = g.rem(m)?;
        let mut acc = FpPoly::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mulmod(&g, m)?.try_add(&FpPoly::constant(self.p, c))?;
        }
        Ok(acc)
    }

    /// Power series inverse modulo `x^n`; requires a nonzero constant term.
    pub fn inv_series(&self, n: usize) -> Result<FpPoly> {
        let p = self.p;
        let c0 = p.inv(self.coeff(0)).ok_or(Error::DivisionByZero)?;
        let mut out = vec![0u64; n];
        for k in 0..n {
            // out_k = -c0 * sum_{i=1..k} f_i out_{k-i}  (out_0 = c0)
            let mut acc = if k == 0 { 1 } else { 0 };
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = p.sub(acc, p.mul(self.coeffs[i], out[k - i]));
            }
            out[k] = p.mul(acc, c0);
        }
        Ok(FpPoly::from_reduced(p, out))
    }

    /// Human-readable sparse form, descending degree, e.g. `x^15+x+1`.
    pub fn to_human(&self) -> String {
        self.to_human_var("x")
    }

    pub fn to_human_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }

    /// Ascending decimal coefficients separated by spaces.
    pub fn to_machine(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn schoolbook(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let terms = a.len().min(b.len());
    if terms <= p.lazy_budget() {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += x * y;
            }
        }
        for c in acc.iter_mut() {
            *c %= p.get();
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot = (*slot + x * y) % p.get();
            }
        }
    }
    acc
}

fn add_into(p: Prime, dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = p.add(*d, s);
    }
}

fn sub_into(p: Prime, dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = p.sub(*d, s);
    }
}

fn padded_sum(p: Prime, lo: &[u64], hi: &[u64]) -> Vec<u64> {
    let mut v = lo.to_vec();
    v.resize(lo.len().max(hi.len()), 0);
    add_into(p, &mut v, hi);
    v
}

/// Product of two nonempty coefficient slices; Karatsuba above the threshold.
pub(crate) fn mul_slices(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(p, a, b);
    }
    let h = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(h.min(a.len()));
    let (b0, b1) = b.split_at(h.min(b.len()));
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let z0 = mul_slices(p, a0, b0);
    add_into(p, &mut out, &z0);
    let mut mid = mul_slices(p, &padded_sum(p, a0, a1), &padded_sum(p, b0, b1));
    sub_into(p, &mut mid, &z0);
    if !a1.is_empty() && !b1.is_empty() {
        let z2 = mul_slices(p, a1, b1);
        sub_into(p, &mut mid, &z2);
        add_into(p, &mut out[2 * h..], &z2);
    }
    // `mid` may carry structural zeros past the product length.
    let end = (out.len() - h).min(mid.len());
    add_into(p, &mut out[h..], &mid[..end]);
    out
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self.to_human())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human())
    }
}

// Operator forms panic on modulus mismatch; use the `try_*` methods on
// untrusted input.
impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.try_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self.try_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.try_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        let p = self.p;
        FpPoly::from_reduced(p, self.coeffs.iter().map(|&c| p.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn square_in_char_two() {
        let f = FpPoly::new(p(2), vec![1, 1]);
        assert_eq!(&f * &f, FpPoly::new(p(2), vec![1, 0, 1]));
        assert!((&f * &FpPoly::zero(p(2))).is_zero());
    }

    #[test]
    fn division_examples() {
        let a = FpPoly::new(p(2), vec![1, 0, 1]);
        let b = FpPoly::new(p(2), vec![1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (q, r) = a.divrem(&a).unwrap();
        assert!(q.is_one() && r.is_zero());
        assert_eq!(a.divrem(&FpPoly::zero(p(2))), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let a = FpPoly::new(p(5), vec![2, 0, 4]);
        assert_eq!(a.gcd(&FpPoly::zero(p(5))).unwrap(), a.monic());
        let f = FpPoly::new(p(2), vec![1, 0, 1]);
        let g = FpPoly::new(p(2), vec![1, 1]);
        assert_eq!(f.gcd(&g).unwrap(), g);
        assert_eq!(FpPoly::zero(p(2)).gcd(&FpPoly::zero(p(2))), Err(Error::ZeroGcd));
    }

    #[test]
    fn powmod_examples() {
        let m = FpPoly::new(p(2), vec![1, 1, 0, 0, 1]);
        let x = FpPoly::x(p(2));
        assert!(x.powmod(&BigInt::from(0), &m).unwrap().is_one());
        assert_eq!(x.powmod(&BigInt::from(1), &m).unwrap(), x);
        assert_eq!(x.powmod(&BigInt::from(16), &m).unwrap(), x);
        assert_eq!(x.powmod(&BigInt::from(-1), &m), Err(Error::NegativeExponent));
        assert_eq!(x.powmod(&BigInt::from(3), &FpPoly::one(p(2))), Err(Error::ConstantModulus));
    }

    #[test]
    fn human_format() {
        let f = FpPoly::new(p(2), vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(f.to_human(), "x^15+x+1");
        assert_eq!(FpPoly::new(p(3), vec![2, 2, 1]).to_human(), "x^2+2*x+2");
        assert_eq!(FpPoly::zero(p(3)).to_human(), "0");
        assert_eq!(FpPoly::new(p(3), vec![2, 2, 1]).to_machine(), "2 2 1");
    }

    #[test]
    fn modulus_mismatch() {
        let a = FpPoly::one(p(2));
        let b = FpPoly::one(p(3));
        assert_eq!(a.try_mul(&b), Err(Error::ModulusMismatch(2, 3)));
    }

    #[test]
    fn series_inverse() {
        let f = FpPoly::new(p(7), vec![3, 1, 4, 1, 5]);
        let g = f.inv_series(12).unwrap();
        assert!((&f * &g).truncate(12).is_one());
    }

    fn poly_strategy(pr: u64, max_len: usize) -> impl Strategy<Value = FpPoly> {
        proptest::collection::vec(0..pr, 0..max_len).prop_map(move |c| FpPoly::new(p(pr), c))
    }

    fn oracle_mul(a: &FpPoly, b: &FpPoly) -> Vec<u64> {
        // Independent convolution: sum over index pairs with u128 accumulators.
        let pr = a.modulus().get() as u128;
        if a.is_zero() || b.is_zero() {
            return vec![];
        }
        let n = a.coeffs().len() + b.coeffs().len() - 1;
        let mut out = vec![0u64; n];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut s = 0u128;
            for i in 0..=k {
                s += a.coeff(i) as u128 * b.coeff(k - i) as u128;
            }
            *slot = (s % pr) as u64;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    proptest! {
        #[test]
        fn mul_matches_convolution(a in poly_strategy(3, 130), b in poly_strategy(3, 130)) {
            prop_assert_eq!((&a * &b).into_coeffs(), oracle_mul(&a, &b));
        }

        #[test]
        fn karatsuba_matches_schoolbook(a in poly_strategy(65521, 200), b in poly_strategy(65521, 170)) {
            prop_assert_eq!(a.try_mul(&b).unwrap(), a.mul_schoolbook(&b).unwrap());
        }

        #[test]
        fn divrem_roundtrip(a in poly_strategy(7, 40), b in poly_strategy(7, 20)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in poly_strategy(5, 15), b in poly_strategy(5, 15), c in poly_strategy(5, 6)) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            // Force a known common divisor c.
            let (ac, bc) = (&a * &c, &b * &c);
            prop_assume!(!(ac.is_zero() && bc.is_zero()));
            let g = ac.gcd(&bc).unwrap();
            prop_assert!(ac.rem(&g).unwrap().is_zero());
            prop_assert!(bc.rem(&g).unwrap().is_zero());
            prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
        }

        #[test]
        fn powmod_adds_exponents(a in poly_strategy(5, 8), e1 in 0u64..500, e2 in 0u64..500) {
            let m = FpPoly::new(p(5), vec![2, 0, 3, 1, 0, 1]);
            let lhs = a.powmod(&BigInt::from(e1 + e2), &m).unwrap();
            let rhs = a.powmod(&BigInt::from(e1), &m).unwrap()
                .mulmod(&a.powmod(&BigInt::from(e2), &m).unwrap(), &m).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn xgcd_bezout(a in poly_strategy(7, 12), b in poly_strategy(7, 12)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let (g, s, t) = a.xgcd(&b).unwrap();
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert_eq!(g, a.gcd(&b).unwrap());
        }
    }

    #[test]
    fn ring_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for pr in [2u64, 3, 5, 7] {
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let len = rng.gen_range(0..12);
                FpPoly::new(p(pr), (0..len).map(|_| rng.gen_range(0..pr)).collect())
            };
            for _ in 0..1000 {
                let (a, b, c) = (rand_poly(&mut rng), rand_poly(&mut rng), rand_poly(&mut rng));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            }
        }
    }
}
