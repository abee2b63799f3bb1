//! Explicit extension fields `F_p[X]/(f)` with a cached Frobenius matrix.

mod dlog;
mod irreducible;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use crate::arith::numtheory::{self, group_order};
use crate::arith::{FpMatrix, FpPoly, IncrementalSpan, Prime, SpanInsert};
use crate::error::{Error, Result};

pub use dlog::discrete_log_raw;
pub use irreducible::{is_irreducible, random_irreducible};

/// The field `F_p[X]/(f)` for a monic irreducible `f` of degree `n`.
///
/// Elements are represented by their reduced residues of degree `< n`. The
/// matrix of the Frobenius `x -> x^p` in the power basis is built eagerly;
/// column `i` holds the coordinates of `X^{ip}`.
pub struct ExtField {
    p: Prime,
    modulus: FpPoly,
    frob: FpMatrix,
    order_factors: OnceLock<Vec<(u128, u32)>>,
    primitive: OnceLock<FpPoly>,
}

impl ExtField {
    /// Validates irreducibility, then builds the field.
    pub fn new(modulus: FpPoly) -> Result<Arc<Self>> {
        if !is_irreducible(&modulus)? {
            return Err(Error::Reducible);
        }
        Ok(Self::new_unchecked(modulus))
    }

    /// Builds the field without testing irreducibility; the caller vouches
    /// for `modulus`.
    pub fn new_unchecked(modulus: FpPoly) -> Arc<Self> {
        let modulus = modulus.monic();
        let p = modulus.modulus();
        let frob = frobenius_matrix(&modulus);
        Arc::new(ExtField { p, modulus, frob, order_factors: OnceLock::new(), primitive: OnceLock::new() })
    }

    pub fn characteristic(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn frobenius_matrix(&self) -> &FpMatrix {
        &self.frob
    }

    /// `p^n - 1`.
    pub fn group_order(&self) -> Result<u128> {
        group_order(self.p.get(), self.degree())
    }

    /// Factorization of `p^n - 1`, computed once.
    pub fn group_order_factors(&self) -> Result<&[(u128, u32)]> {
        let n = self.group_order()?;
        Ok(self.order_factors.get_or_init(|| numtheory::factor(n)))
    }

    // Raw operations on reduced residues. They assume their inputs are
    // already reduced modulo the defining polynomial.

    pub fn reduce(&self, a: &FpPoly) -> FpPoly {
        a.rem(&self.modulus).expect("same characteristic")
    }

    pub fn mul_raw(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.reduce(&(a * b))
    }

    pub fn inv_raw(&self, a: &FpPoly) -> Result<FpPoly> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = a.xgcd(&self.modulus)?;
        debug_assert!(g.is_one());
        Ok(self.reduce(&s))
    }

    pub fn pow_raw(&self, a: &FpPoly, e: &BigUint) -> FpPoly {
        a.powmod_biguint(e, &self.modulus).expect("nonconstant modulus")
    }

    pub fn pow_raw_u128(&self, a: &FpPoly, e: u128) -> FpPoly {
        self.pow_raw(a, &BigUint::from(e))
    }

    /// Coordinates in the power basis, length `n`.
    pub fn coords(&self, a: &FpPoly) -> Vec<u64> {
        a.padded(self.degree())
    }

    pub fn from_coords(&self, v: &[u64]) -> FpPoly {
        FpPoly::new(self.p, v.to_vec())
    }

    /// `a^{p^k}` by repeated application of the cached matrix.
    pub fn frob_raw(&self, a: &FpPoly, k: i64) -> FpPoly {
        let n = self.degree() as i64;
        let mut v = self.coords(a);
        for _ in 0..k.rem_euclid(n) {
            v = self.frob.mul_vec(&v).expect("square matrix");
        }
        self.from_coords(&v)
    }

    /// Absolute trace to F_p.
    pub fn trace_raw(&self, a: &FpPoly) -> u64 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.degree() {
            cur = self.frob_raw(&cur, 1);
            acc = &acc + &cur;
        }
        acc.coeff(0)
    }

    /// Minimal polynomial over F_p, from the first linear dependency among
    /// `1, a, a^2, ...`.
    pub fn minpoly_raw(&self, a: &FpPoly) -> FpPoly {
        let n = self.degree();
        let mut span = IncrementalSpan::new(self.p, n);
        let mut power = FpPoly::one(self.p);
        loop {
            match span.insert(&self.coords(&power)).expect("dimension n") {
                SpanInsert::Independent(_) => power = self.mul_raw(&power, a),
                SpanInsert::Dependent(c) => {
                    // a^k = sum c_i a^i, so the polynomial is X^k - sum c_i X^i.
                    let k = c.len();
                    let mut coeffs: Vec<u64> = c.iter().map(|&x| self.p.neg(x)).collect();
                    coeffs.push(1);
                    debug_assert_eq!(coeffs.len(), k + 1);
                    return FpPoly::from_reduced(self.p, coeffs);
                }
            }
        }
    }

    /// Exact multiplicative order of a nonzero residue.
    pub fn order_raw(&self, a: &FpPoly) -> Result<u128> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.group_order()?;
        for &(q, _) in self.group_order_factors()? {
            while order % q == 0 && self.pow_raw_u128(a, order / q).is_one() {
                order /= q;
            }
        }
        Ok(order)
    }

    pub fn is_primitive_raw(&self, a: &FpPoly) -> Result<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        let n = self.group_order()?;
        for &(q, _) in self.group_order_factors()? {
            if self.pow_raw_u128(a, n / q).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A fixed primitive element: the class of `X` when it is primitive
    /// (always the case for Conway moduli), otherwise the first primitive
    /// residue in the order of the integer encoding of its coefficients.
    pub fn primitive_raw(&self) -> Result<FpPoly> {
        if let Some(g) = self.primitive.get() {
            return Ok(g.clone());
        }
        let x = self.reduce(&FpPoly::x(self.p));
        let g = if self.is_primitive_raw(&x)? {
            x
        } else {
            let p = self.p.get();
            let mut code = 1u64;
            loop {
                let mut digits = Vec::new();
                let mut c = code;
                while c > 0 {
                    digits.push(c % p);
                    c /= p;
                }
                let cand = FpPoly::new(self.p, digits);
                if cand.degree().unwrap_or(0) < self.degree() && self.is_primitive_raw(&cand)? {
                    break cand;
                }
                code += 1;
            }
        };
        Ok(self.primitive.get_or_init(|| g).clone())
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtField(F_{}[X]/({}))", self.p, self.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

fn frobenius_matrix(f: &FpPoly) -> FpMatrix {
    let p = f.modulus();
    let n = f.degree().expect("nonconstant");
    let xp = FpPoly::x(p).powmod_u128(p.get() as u128, f).expect("nonconstant modulus");
    let mut cols = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        cols.push(cur.padded(n));
        cur = cur.mulmod(&xp, f).expect("same characteristic");
    }
    FpMatrix::from_cols(p, &cols).expect("square")
}

/// An element of an [`ExtField`].
#[derive(Clone)]
pub struct FFElem {
    field: Arc<ExtField>,
    rep: FpPoly,
}

impl FFElem {
    /// Reduces `rep` into `field`.
    pub fn new(field: &Arc<ExtField>, rep: FpPoly) -> Result<Self> {
        if rep.modulus() != field.p {
            return Err(Error::ModulusMismatch(rep.modulus().get(), field.p.get()));
        }
        Ok(FFElem { rep: field.reduce(&rep), field: field.clone() })
    }

    pub(crate) fn from_raw(field: &Arc<ExtField>, rep: FpPoly) -> Self {
        debug_assert!(rep.degree().is_none_or(|d| d < field.degree()));
        FFElem { field: field.clone(), rep }
    }

    pub fn from_coords(field: &Arc<ExtField>, v: &[u64]) -> Result<Self> {
        if v.len() != field.degree() {
            return Err(Error::Dimension(format!("{} coordinates for a degree {} field", v.len(), field.degree())));
        }
        Ok(Self::from_raw(field, field.from_coords(v)))
    }

    pub fn zero(field: &Arc<ExtField>) -> Self {
        Self::from_raw(field, FpPoly::zero(field.p))
    }

    pub fn one(field: &Arc<ExtField>) -> Self {
        Self::from_raw(field, FpPoly::one(field.p))
    }

    /// The class of `X`.
    pub fn generator(field: &Arc<ExtField>) -> Self {
        Self::from_raw(field, field.reduce(&FpPoly::x(field.p)))
    }

    pub fn from_u64(field: &Arc<ExtField>, c: u64) -> Self {
        Self::from_raw(field, FpPoly::constant(field.p, c))
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn rep(&self) -> &FpPoly {
        &self.rep
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(&self.rep)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    fn check(&self, other: &FFElem) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, &self.rep + &other.rep))
    }

    pub fn try_sub(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, &self.rep - &other.rep))
    }

    pub fn try_mul(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, self.field.mul_raw(&self.rep, &other.rep)))
    }

    pub fn try_div(&self, other: &FFElem) -> Result<FFElem> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FFElem> {
        Ok(Self::from_raw(&self.field, self.field.inv_raw(&self.rep)?))
    }

    pub fn scale(&self, c: u64) -> FFElem {
        Self::from_raw(&self.field, self.rep.scale(c))
    }

    pub fn pow(&self, e: &BigUint) -> FFElem {
        Self::from_raw(&self.field, self.field.pow_raw(&self.rep, e))
    }

    pub fn pow_u128(&self, e: u128) -> FFElem {
        self.pow(&BigUint::from(e))
    }

    /// `x^{p^k}`; `k` is taken modulo the degree.
    pub fn frobenius(&self, k: i64) -> FFElem {
        Self::from_raw(&self.field, self.field.frob_raw(&self.rep, k))
    }

    pub fn trace(&self) -> u64 {
        self.field.trace_raw(&self.rep)
    }

    pub fn minimal_polynomial(&self) -> FpPoly {
        self.field.minpoly_raw(&self.rep)
    }

    pub fn multiplicative_order(&self) -> Result<u128> {
        self.field.order_raw(&self.rep)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.field.is_primitive_raw(&self.rep)
    }

    /// `k` with `base^k = self`, `0 <= k < p^n - 1`.
    pub fn discrete_log(&self, base: &FFElem) -> Result<u128> {
        self.check(base)?;
        discrete_log_raw(&self.field, &self.rep, &base.rep)
    }

    /// An `ell`-th root, `g^j` for the field's fixed primitive element `g`
    /// and the smallest `j >= 0` with `j * ell = log_g(self) mod p^n - 1`.
    pub fn nth_root(&self, ell: u64) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let g = FFElem::from_raw(&self.field, self.field.primitive_raw()?);
        let n = self.field.group_order()?;
        let k = self.discrete_log(&g)?;
        let ell = ell as u128;
        let d = numtheory::gcd(ell, n);
        if k % d != 0 {
            return Err(Error::NoRoot(ell as u64));
        }
        let modulus = n / d;
        let inv = numtheory::inv_mod(ell / d % modulus, modulus).expect("coprime after dividing the gcd");
        let j = numtheory::mul_mod(k / d, inv, modulus);
        Ok(g.pow_u128(j))
    }

    pub fn to_human(&self) -> String {
        self.rep.to_human()
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.rep == other.rep
    }
}

impl Eq for FFElem {}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFElem({} mod {})", self.rep, self.field.modulus)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rep.to_human())
    }
}

// Operator forms panic on a field mismatch; the `try_*` methods report it.
impl Add for &FFElem {
    type Output = FFElem;
    fn add(self, rhs: &FFElem) -> FFElem {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FFElem {
    type Output = FFElem;
    fn sub(self, rhs: &FFElem) -> FFElem {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FFElem {
    type Output = FFElem;
    fn mul(self, rhs: &FFElem) -> FFElem {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        FFElem::from_raw(&self.field, -&self.rep)
    }
}
