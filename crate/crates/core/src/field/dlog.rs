use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;

use super::ExtField;
use crate::arith::numtheory::{inv_mod, mul_mod};
use crate::arith::FpPoly;
use crate::error::{Error, Result};

/// Largest prime subgroup order handled by baby-step giant-step.
const BSGS_LIMIT: u128 = 1 << 44;

/// Discrete logarithm of `x` to a primitive `base`, by Pohlig-Hellman over
/// the prime-power factors of `p^n - 1` and baby-step giant-step within each
/// prime-order subgroup.
pub fn discrete_log_raw(field: &Arc<ExtField>, x: &FpPoly, base: &FpPoly) -> Result<u128> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !field.is_primitive_raw(base)? {
        return Err(Error::NotPrimitive);
    }
    let n = field.group_order()?;
    let mut residue = 0u128;
    let mut modulus = 1u128;
    for &(q, e) in field.group_order_factors()? {
        let qe = q.pow(e);
        let cofactor = n / qe;
        // Work in the subgroup of order q^e.
        let g = field.pow_raw_u128(base, cofactor);
        let h = field.pow_raw_u128(x, cofactor);
        let g_inv = field.inv_raw(&g)?;
        let gamma = field.pow_raw_u128(&g, qe / q);
        let mut digits = 0u128;
        let mut q_k = 1u128;
        for k in 0..e {
            let shifted = field.mul_raw(&h, &field.pow_raw_u128(&g_inv, digits));
            let hk = field.pow_raw_u128(&shifted, qe / q / q_k);
            let d = bsgs(field, &gamma, &hk, q)?;
            digits += d * q_k;
            if k + 1 < e {
                q_k *= q;
            }
        }
        residue = crt(residue, modulus, digits, qe);
        modulus *= qe;
    }
    Ok(residue)
}

/// `k < order` with `g^k = h`, where `g` has prime order `order`.
fn bsgs(field: &Arc<ExtField>, g: &FpPoly, h: &FpPoly, order: u128) -> Result<u128> {
    if order > BSGS_LIMIT {
        return Err(Error::ResourceBound(format!("subgroup of prime order {order}")));
    }
    let m = (order as f64).sqrt().ceil() as u128 + 1;
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = FpPoly::one(field.characteristic());
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = field.mul_raw(&cur, g);
    }
    let giant = field.inv_raw(&field.pow_raw(g, &BigUint::from(m)))?;
    let mut gamma = h.clone();
    for i in 0..m {
        if let Some(&j) = table.get(&gamma) {
            return Ok((i * m + j) % order);
        }
        gamma = field.mul_raw(&gamma, &giant);
    }
    Err(Error::Invariant("element outside the cyclic subgroup".into()))
}

/// Combines `x = a mod m` and `x = b mod n` for coprime moduli.
fn crt(a: u128, m: u128, b: u128, n: u128) -> u128 {
    if m == 1 {
        return b % n;
    }
    let inv = inv_mod(m % n, n).expect("coprime moduli");
    let t = mul_mod((b + n - a % n) % n, inv, n);
    a + m * t
}
