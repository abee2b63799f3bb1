use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::numtheory::prime_divisors;
use crate::arith::{FpMatrix, FpPoly, Prime};
use crate::error::{Error, Result};

/// Rabin's test: `f` of degree `n` is irreducible iff `X^{p^n} = X mod f`
/// and `gcd(X^{p^{n/q}} - X, f) = 1` for every prime `q | n`.
pub fn is_irreducible(f: &FpPoly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let p = f.modulus();
    let q = power_matrix(&f);
    let x = FpPoly::x(p);
    let maximal: Vec<usize> = prime_divisors(n as u128).into_iter().map(|q| n / q as usize).collect();
    let mut v = x.padded(n);
    for k in 1..=n {
        v = q.mul_vec(&v)?;
        if maximal.contains(&k) {
            let diff = &FpPoly::new(p, v.clone()) - &x;
            if !diff.gcd(&f)?.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(FpPoly::new(p, v) == x)
}

/// Matrix of `g -> g^p mod f` on `F_p[X]/(f)` for arbitrary monic `f`.
fn power_matrix(f: &FpPoly) -> FpMatrix {
    let p = f.modulus();
    let n = f.degree().expect("nonconstant");
    let xp = FpPoly::x(p).powmod_u128(p.get() as u128, f).expect("nonconstant");
    let mut cols = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        cols.push(cur.padded(n));
        cur = cur.mulmod(&xp, f).expect("same characteristic");
    }
    FpMatrix::from_cols(p, &cols).expect("square")
}

/// A monic irreducible polynomial of degree `n`, drawn by rejection sampling
/// from a ChaCha stream keyed by `seed` and `n`.
pub fn random_irreducible(p: Prime, n: usize, seed: u64) -> Result<FpPoly> {
    if n == 0 {
        return Err(Error::ConstantModulus);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    loop {
        let mut coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p.get())).collect();
        coeffs.push(1);
        let f = FpPoly::new(p, coeffs);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
}
