//! `[beta]_eta`: the `eta^0` coordinate of an element of
//! `F_{p^l} (x) F_p(eta)` with `eta = zeta_l^{l/d}`.

use std::sync::Arc;

use super::{KummerAlg, KummerElem};
use crate::arith::matrix::dot;
use crate::arith::{FpMatrix, FpPoly};
use crate::error::{Error, Result};
use crate::field::FFElem;

/// Algebra dimension from which [`ProjectMethod::Auto`] uses the trace form.
const TRACE_THRESHOLD: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectMethod {
    /// Linear solve in the `eta`-power basis, row by row.
    Linear,
    /// Precomputed linear form built from the trace.
    Trace,
    /// `Linear` for small algebras, `Trace` otherwise.
    Auto,
}

impl KummerAlg {
    /// `eta = zeta^{l/sub}` and its degree over F_p.
    fn sub_root(&self, sub: usize) -> Result<(FpPoly, usize)> {
        let l = self.ell();
        if sub == 0 || !l.is_multiple_of(sub) {
            return Err(Error::NotDivisible(sub as u64, l as u64));
        }
        let eta = self.zeta_power((l / sub) as u64);
        let deg = self.scalars().minpoly_raw(&eta).degree().expect("nonzero");
        Ok((eta, deg))
    }
}

impl KummerElem {
    /// The `eta^0` coordinate of `self = sum_i y_i (x) eta^i`, where
    /// `eta = zeta_l^{l/sub}`. Fails with [`Error::NotInImage`] when `self`
    /// has scalars outside `F_p(eta)`.
    pub fn project_first(&self, sub: usize, method: ProjectMethod) -> Result<FFElem> {
        let alg = &self.alg;
        let method = match method {
            ProjectMethod::Auto if alg.dimension() >= TRACE_THRESHOLD => ProjectMethod::Trace,
            ProjectMethod::Auto => ProjectMethod::Linear,
            m => m,
        };
        let rows = match method {
            ProjectMethod::Trace => self.project_trace(sub)?,
            _ => self.project_linear(sub)?,
        };
        FFElem::from_coords(alg.left(), &rows)
    }

    fn project_linear(&self, sub: usize) -> Result<Vec<u64>> {
        let alg = &self.alg;
        let k = alg.scalars();
        let (eta, d) = alg.sub_root(sub)?;
        let mut cols = Vec::with_capacity(d);
        let mut cur = FpPoly::one(alg.characteristic());
        for _ in 0..d {
            cols.push(k.coords(&cur));
            cur = k.mul_raw(&cur, &eta);
        }
        let basis = FpMatrix::from_cols(alg.characteristic(), &cols)?;
        (0..alg.ell())
            .map(|i| {
                let c = basis.solve(&k.coords(&self.row(i)))?.ok_or(Error::NotInImage)?;
                Ok(c[0])
            })
            .collect()
    }

    /// With `L = F_p(zeta)` of degree `b` and `k = F_p(eta)` of degree `d`,
    /// the `eta^0` coordinate of `r` in `k` is `Tr_{k/F_p}(r delta)` for
    /// `delta = -h_k(0) / (eta h_k'(eta))`, the dual basis element. It is
    /// lifted to `L` as `Tr_{L/F_p}(r eta' delta)` with `Tr_{L/k}(eta') = 1`.
    /// The form `w_i = Tr_L(zeta^i delta)` comes from the power series
    /// `rev_{b-1}(tau) / rev_b(h_L) mod Z^b`, where `tau = delta h_L'(zeta)`.
    fn project_trace(&self, sub: usize) -> Result<Vec<u64>> {
        let alg = &self.alg;
        let k = alg.scalars();
        let (eta, d) = alg.sub_root(sub)?;
        if self.frob_right(d as i64) != *self {
            return Err(Error::NotInImage);
        }
        let w = trace_form(alg, &eta)?;
        let eta_prime = relative_trace_preimage(alg, d)?;
        Ok((0..alg.ell())
            .map(|i| dot(alg.characteristic(), &w, &k.coords(&k.mul_raw(&self.row(i), &eta_prime))))
            .collect())
    }
}

/// `w_i = Tr_L(zeta^i delta)` for `i < b`, from the power series identity.
pub(super) fn trace_form(alg: &Arc<KummerAlg>, eta: &FpPoly) -> Result<Vec<u64>> {
    let k = alg.scalars();
    let p = alg.characteristic();
    let b = alg.level();
    let h = k.modulus();
    let h_sub = k.minpoly_raw(eta);
    let h0 = h_sub.coeff(0);
    let dh_zeta = k.reduce(&h.derivative());
    let dh_sub_eta = h_sub.derivative().compose_mod(eta, h)?;
    // tau = -(h0 / eta) h'(zeta) / h_sub'(eta)
    let denom = k.mul_raw(eta, &dh_sub_eta);
    let tau = k.mul_raw(&dh_zeta, &k.inv_raw(&denom)?).scale(p.neg(h0));
    let num = tau.reverse(b - 1);
    let den = h.reverse(b).inv_series(b)?;
    Ok((&num * &den).padded(b))
}

/// An element of `L` with relative trace `1` down to the degree-`d`
/// subfield: `zeta^i / Tr_{L/k}(zeta^i)` for the first `i` with nonzero
/// relative trace.
pub(super) fn relative_trace_preimage(alg: &Arc<KummerAlg>, d: usize) -> Result<FpPoly> {
    let k = alg.scalars();
    let b = alg.level();
    let p = alg.characteristic();
    for i in 0..b {
        let z = FpPoly::monomial(p, 1, i);
        let z = k.reduce(&z);
        let mut t = FpPoly::zero(p);
        let mut cur = z.clone();
        for _ in 0..b / d {
            t = &t + &cur;
            cur = k.frob_raw(&cur, d as i64);
        }
        if !t.is_zero() {
            return Ok(k.mul_raw(&z, &k.inv_raw(&t)?));
        }
    }
    Err(Error::Invariant("relative trace vanishes on a basis".into()))
}
