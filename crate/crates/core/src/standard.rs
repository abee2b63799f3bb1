//! Decorated fields and standard compatible embeddings.
//!
//! A decoration of `F_{p^l}` is a solution `alpha_l` of
//! `(sigma (x) 1) x = (1 (x) zeta_l) x` with `alpha_l^l = 1 (x) abar_l`. Its
//! first coordinate `s_l` generates the field and its minimal polynomial
//! `P_l` depends only on the cyclotomic lattice.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::bigint::{big_pow, exact_div, mod_u128};
use crate::arith::numtheory::{gcd, group_order};
use crate::arith::FpPoly;
use crate::cyclo::CycloLattice;
use crate::error::{Error, Result};
use crate::field::{random_irreducible, ExtField, FFElem};
use crate::kummer::{KummerAlg, KummerElem, ProjectMethod};

/// Seed used for the defining polynomial when none is supplied.
pub const DEFAULT_SEED: u64 = 0;

/// Default bound on the dimension of the complete algebra in
/// [`verify_key_identity`].
pub const KEY_IDENTITY_DIMENSION_BOUND: usize = 4096;

/// `(F_{p^l}, s_l)` with its standard polynomial.
#[derive(Clone)]
pub struct DecoratedField {
    alg: Arc<KummerAlg>,
    s: FFElem,
    poly: FpPoly,
    alpha: Option<KummerElem>,
}

impl DecoratedField {
    pub fn degree(&self) -> usize {
        self.alg.ell()
    }

    /// `nu(l)`.
    pub fn level(&self) -> usize {
        self.alg.level()
    }

    /// `F_{p^l}` as defined by the caller's polynomial `f_l`.
    pub fn field(&self) -> &Arc<ExtField> {
        self.alg.left()
    }

    pub fn algebra(&self) -> &Arc<KummerAlg> {
        &self.alg
    }

    /// The standard generator `s_l`.
    pub fn generator(&self) -> &FFElem {
        &self.s
    }

    /// The standard polynomial `P_l`.
    pub fn standard_poly(&self) -> &FpPoly {
        &self.poly
    }

    /// `alpha_l`, from the cache or rebuilt from `s_l`.
    pub fn alpha(&self) -> Result<KummerElem> {
        match &self.alpha {
            Some(a) => Ok(a.clone()),
            None => self.alg.recover_alpha(&self.s),
        }
    }

    pub fn has_cached_alpha(&self) -> bool {
        self.alpha.is_some()
    }

    /// Drops the cached `alpha_l`, leaving `O(l)` stored coefficients.
    pub fn forget_alpha(mut self) -> Self {
        self.alpha = None;
        self
    }

    /// Rebuilds a decoration from stored data, checking that `s` is the
    /// first coordinate of a standard solution and `poly` its minimal
    /// polynomial.
    pub fn from_parts(lattice: &CycloLattice, field: Arc<ExtField>, s: FFElem, poly: FpPoly) -> Result<Self> {
        if s.field().modulus() != field.modulus() {
            return Err(Error::FieldMismatch);
        }
        let alg = KummerAlg::new(field, lattice)?;
        let alpha = alg.recover_alpha(&s)?;
        let abar = lattice.standard_constant(alg.ell() as u64)?;
        if alpha.kummer_constant()? != abar {
            return Err(Error::Invariant("generator is not standard".into()));
        }
        if s.minimal_polynomial() != poly {
            return Err(Error::Invariant("polynomial is not the minimal polynomial of the generator".into()));
        }
        Ok(DecoratedField { alg, s, poly, alpha: None })
    }

    fn check_lattice(&self, lattice: &CycloLattice) -> Result<()> {
        let e = lattice.entry(self.degree() as u64)?;
        if e.conway.modulus() != self.alg.cyclo().conway.modulus() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

impl std::fmt::Debug for DecoratedField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DecoratedField(l={}, P={})", self.degree(), self.poly)
    }
}

/// Decorates `F_{p^l}` defined by `f`, or by a seeded random irreducible
/// polynomial when `f` is `None`.
pub fn decorate(lattice: &CycloLattice, ell: usize, f: Option<FpPoly>) -> Result<DecoratedField> {
    let p = lattice.characteristic();
    if ell == 0 {
        return Err(Error::OutOfRange("degree 0".into()));
    }
    if (ell as u64).is_multiple_of(p.get()) {
        return Err(Error::DegreeDivisibleByP { ell: ell as u64, p: p.get() });
    }
    let f = match f {
        Some(f) => {
            if f.modulus() != p {
                return Err(Error::ModulusMismatch(f.modulus().get(), p.get()));
            }
            if f.degree() != Some(ell) {
                return Err(Error::Dimension(format!("defining polynomial has degree {:?}, expected {ell}", f.degree())));
            }
            f
        }
        None => random_irreducible(p, ell, DEFAULT_SEED)?,
    };
    decorate_field(lattice, ExtField::new(f)?)
}

/// Decoration of an already constructed `F_{p^l}`.
pub fn decorate_field(lattice: &CycloLattice, field: Arc<ExtField>) -> Result<DecoratedField> {
    let alg = KummerAlg::new(field, lattice)?;
    let ell = alg.ell() as u64;
    let abar = lattice.standard_constant(ell)?;
    let alpha0 = alg.solve_h90(1)?;
    let a0 = alpha0.kummer_constant()?;
    let kappa = abar.try_div(&a0)?.nth_root(ell)?;
    let alpha = alpha0.mul_scalar(&alg.cyclo().to_scalar(&kappa)?);
    if alpha.kummer_constant()? != abar {
        return Err(Error::Invariant("decorated solution has the wrong constant".into()));
    }
    let s = alpha.first_column();
    let poly = s.minimal_polynomial();
    if poly.degree() != Some(alg.ell()) {
        return Err(Error::Invariant("standard generator does not generate".into()));
    }
    Ok(DecoratedField { alg, s, poly, alpha: Some(alpha) })
}

/// `-E / ((p^a - 1) l) mod (p^b - 1)` with
/// `E = (b-a) p^{b+a} - b p^b + a p^a`, where `a = nu(l)`, `b = nu(m)`.
pub fn kappa_exponent(lattice: &CycloLattice, ell: u64, m: u64) -> Result<u128> {
    if ell == 0 || !m.is_multiple_of(ell) {
        return Err(Error::NotDivisible(ell, m));
    }
    let p = lattice.characteristic().get();
    let (a, b) = (lattice.level(ell)?, lattice.level(m)?);
    let e = big_pow(p, b + a) * (b - a) as i64 - big_pow(p, b) * b as i64 + big_pow(p, a) * a as i64;
    let den = (big_pow(p, a) - 1) * ell as i64;
    let q = exact_div(&e, &den)?;
    Ok(mod_u128(&-q, group_order(p, b as usize)?))
}

/// `kappa_{l,m} = zeta_{p^b-1}^{kappa_exponent}` in `K_m`.
pub fn kappa_constant(lattice: &CycloLattice, ell: u64, m: u64) -> Result<FFElem> {
    let e = kappa_exponent(lattice, ell, m)?;
    let k = lattice.conway_field(lattice.level(m)?)?;
    Ok(FFElem::generator(&k).pow_u128(e))
}

/// The image `t` of `s_l` in `F_{p^m}` and the constant used.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingDesc {
    pub source_degree: usize,
    pub target_degree: usize,
    pub s_image: FFElem,
    pub kappa: FFElem,
}

/// Standard embedding together with `(1 (x) kappa) alpha_m^{m/l}`.
#[derive(Clone, Debug)]
pub struct EmbeddingTrace {
    pub desc: EmbeddingDesc,
    pub hat_alpha: KummerElem,
}

/// `s_l -> [(1 (x) kappa_{l,m}) alpha_m^{m/l}]_{zeta_m^{m/l}}`.
pub fn standard_embed(src: &DecoratedField, dst: &DecoratedField, lattice: &CycloLattice) -> Result<EmbeddingDesc> {
    Ok(standard_embed_traced(src, dst, lattice, ProjectMethod::Auto)?.desc)
}

pub fn standard_embed_traced(
    src: &DecoratedField,
    dst: &DecoratedField,
    lattice: &CycloLattice,
    method: ProjectMethod,
) -> Result<EmbeddingTrace> {
    let (ell, m) = (src.degree(), dst.degree());
    if m % ell != 0 {
        return Err(Error::NotDivisible(ell as u64, m as u64));
    }
    src.check_lattice(lattice)?;
    dst.check_lattice(lattice)?;
    let kappa = kappa_constant(lattice, ell as u64, m as u64)?;
    // kappa^l abar_m = iota(abar_l) is what makes the power standard.
    let lhs = &kappa.pow_u128(ell as u128) * &lattice.standard_constant(m as u64)?;
    if lhs != lattice.embed_cyclo(ell as u64, m as u64, &lattice.standard_constant(ell as u64)?)? {
        return Err(Error::Invariant("kappa does not relate the standard constants".into()));
    }
    let alpha_m = dst.alpha()?;
    let hat_alpha = alpha_m.pow_u128((m / ell) as u128).mul_scalar(&dst.alg.cyclo().to_scalar(&kappa)?);
    let t = hat_alpha.project_first(ell, method)?;
    if t.minimal_polynomial() != src.poly {
        return Err(Error::Invariant(format!("image of s_{ell} in degree {m} has the wrong minimal polynomial")));
    }
    Ok(EmbeddingTrace { desc: EmbeddingDesc { source_degree: ell, target_degree: m, s_image: t, kappa }, hat_alpha })
}

/// Baseline embedding from arbitrary solutions: returns `(s, t)` where
/// `s` generates the source and `s -> t` extends to an embedding.
pub fn allombert_embed(
    src: &Arc<ExtField>,
    dst: &Arc<ExtField>,
    lattice: &CycloLattice,
) -> Result<(FFElem, FFElem)> {
    let (ell, m) = (src.degree(), dst.degree());
    if m % ell != 0 {
        return Err(Error::NotDivisible(ell as u64, m as u64));
    }
    let (al, am) = (KummerAlg::new(src.clone(), lattice)?, KummerAlg::new(dst.clone(), lattice)?);
    let alpha_l = al.solve_h90(1)?;
    let alpha_m = am.solve_h90(1)?;
    let target = lattice.embed_cyclo(ell as u64, m as u64, &alpha_l.kummer_constant()?)?;
    let kappa = target.try_div(&alpha_m.kummer_constant()?)?.nth_root(ell as u64)?;
    let beta = alpha_m.pow_u128((m / ell) as u128).mul_scalar(&am.cyclo().to_scalar(&kappa)?);
    Ok((alpha_l.first_column(), beta.project_first(ell, ProjectMethod::Auto)?))
}

/// Checks `alpha^{(p^b-1)/(p^a-1)} = (1 (x) zeta)^{E/(p^a-1)^2} N_{b/a}(alpha)`
/// for the decorated solution in the complete algebra `A_{p^b-1}`.
pub fn verify_key_identity(lattice: &CycloLattice, a: u32, b: u32, dimension_bound: usize) -> Result<bool> {
    if a == 0 || !b.is_multiple_of(a) {
        return Err(Error::NotDivisible(a as u64, b as u64));
    }
    let p = lattice.characteristic().get();
    let top = group_order(p, b as usize)?;
    let dim = (top as usize).saturating_mul(b as usize);
    if top > usize::MAX as u128 || dim > dimension_bound {
        return Err(Error::ResourceBound(format!("complete algebra of level {b} has dimension {top}*{b}")));
    }
    let bottom = group_order(p, a as usize)?;
    let dec = decorate(lattice, top as usize, None)?;
    let alpha = dec.alpha()?;
    let e = big_pow(p, b + a) * (b - a) as i64 - big_pow(p, b) * b as i64 + big_pow(p, a) * a as i64;
    let q = exact_div(&e, &(BigInt::from(bottom) * BigInt::from(bottom)))?;
    let exp = if q.is_zero() { 0 } else { mod_u128(&q, top) };
    let lhs = alpha.pow_u128(top / bottom);
    let rhs = &KummerElem::zeta(dec.algebra()).pow_u128(exp) * &alpha.scalar_norm(b as usize, a as usize)?;
    Ok(lhs == rhs)
}

/// True iff `gcd(l, p) = 1`.
pub fn valid_degree(p: u64, ell: u64) -> bool {
    ell > 0 && gcd(ell as u128, p as u128) == 1
}

#[cfg(test)]
mod tests;
