//! Kummer algebras `A_l = F_{p^l} (x) F_p(zeta_l)` as bivariate quotients.
//!
//! An element is an `l x a` coefficient matrix: entry `(i, j)` is the
//! coefficient of `X^i (x) zeta^j`, where `X` generates `F_{p^l}` and `a` is
//! the level. Row `i` is therefore a scalar in the `zeta`-power basis and
//! column `j` an element of `F_{p^l}`.

mod h90;
mod project;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::arith::poly::mul_slices;
use crate::arith::{FpMatrix, FpPoly, Prime};
use crate::cyclo::{CycloEntry, CycloLattice};
use crate::error::{Error, Result};
use crate::field::{ExtField, FFElem};

pub use project::ProjectMethod;

/// The algebra `A_l` for a chosen defining polynomial of `F_{p^l}`.
pub struct KummerAlg {
    p: Prime,
    ell: usize,
    level: usize,
    left: Arc<ExtField>,
    cyclo: Arc<CycloEntry>,
}

impl KummerAlg {
    /// `A_l` with `l` the degree of `left`.
    pub fn new(left: Arc<ExtField>, lattice: &CycloLattice) -> Result<Arc<Self>> {
        let ell = left.degree();
        let cyclo = lattice.entry(ell as u64)?;
        Ok(Arc::new(KummerAlg { p: left.characteristic(), ell, level: cyclo.level as usize, left, cyclo }))
    }

    pub fn characteristic(&self) -> Prime {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Degree `a` of the scalar field.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dimension(&self) -> usize {
        self.ell * self.level
    }

    /// `F_{p^l}`.
    pub fn left(&self) -> &Arc<ExtField> {
        &self.left
    }

    /// `F_p(zeta_l)` in the `zeta`-power basis.
    pub fn scalars(&self) -> &Arc<ExtField> {
        &self.cyclo.scalar
    }

    pub fn cyclo(&self) -> &Arc<CycloEntry> {
        &self.cyclo
    }

    fn same(&self, other: &KummerAlg) -> bool {
        self.ell == other.ell && self.left.modulus() == other.left.modulus() && self.cyclo.h == other.cyclo.h
    }
}

impl fmt::Debug for KummerAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KummerAlg(l={}, a={}, f={}, h={})", self.ell, self.level, self.left.modulus(), self.cyclo.h)
    }
}

/// An element of a [`KummerAlg`].
#[derive(Clone)]
pub struct KummerElem {
    alg: Arc<KummerAlg>,
    c: Vec<u64>,
}

impl KummerElem {
    pub fn zero(alg: &Arc<KummerAlg>) -> Self {
        KummerElem { alg: alg.clone(), c: vec![0; alg.dimension()] }
    }

    pub fn one(alg: &Arc<KummerAlg>) -> Self {
        let mut e = Self::zero(alg);
        e.c[0] = 1;
        e
    }

    /// Builds from an `l x a` row-major coefficient matrix.
    pub fn from_matrix(alg: &Arc<KummerAlg>, c: Vec<u64>) -> Result<Self> {
        if c.len() != alg.dimension() {
            return Err(Error::Dimension(format!("{} coefficients for an algebra of dimension {}", c.len(), alg.dimension())));
        }
        let p = alg.p;
        Ok(KummerElem { alg: alg.clone(), c: c.into_iter().map(|x| x % p.get()).collect() })
    }

    /// `sum_j x_j (x) zeta^j`.
    pub fn from_columns(alg: &Arc<KummerAlg>, cols: &[FpPoly]) -> Result<Self> {
        let (l, a) = (alg.ell, alg.level);
        if cols.len() != a {
            return Err(Error::Dimension(format!("{} columns for level {a}", cols.len())));
        }
        let mut e = Self::zero(alg);
        for (j, x) in cols.iter().enumerate() {
            for (i, v) in alg.left.coords(x).into_iter().enumerate().take(l) {
                e.c[i * a + j] = v;
            }
        }
        Ok(e)
    }

    /// `x (x) 1`.
    pub fn from_left(alg: &Arc<KummerAlg>, x: &FFElem) -> Result<Self> {
        if x.field().modulus() != alg.left.modulus() {
            return Err(Error::FieldMismatch);
        }
        let mut cols = vec![FpPoly::zero(alg.p); alg.level];
        cols[0] = x.rep().clone();
        Self::from_columns(alg, &cols)
    }

    /// `1 (x) z` for `z` in the `zeta`-power basis.
    pub fn from_scalar(alg: &Arc<KummerAlg>, z: &FpPoly) -> Self {
        let mut e = Self::zero(alg);
        let v = alg.cyclo.scalar.coords(&alg.cyclo.scalar.reduce(z));
        e.c[..alg.level].copy_from_slice(&v);
        e
    }

    /// `1 (x) zeta`.
    pub fn zeta(alg: &Arc<KummerAlg>) -> Self {
        Self::from_scalar(alg, &FpPoly::x(alg.p))
    }

    pub fn algebra(&self) -> &Arc<KummerAlg> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Column `j`, an element of `F_{p^l}`.
    pub fn column(&self, j: usize) -> FpPoly {
        let a = self.alg.level;
        FpPoly::new(self.alg.p, (0..self.alg.ell).map(|i| self.c[i * a + j]).collect())
    }

    /// `[self]_zeta`, the `zeta^0` column as a field element.
    pub fn first_column(&self) -> FFElem {
        FFElem::new(&self.alg.left, self.column(0)).expect("reduced")
    }

    /// Row `i`, a scalar in the `zeta`-power basis.
    pub fn row(&self, i: usize) -> FpPoly {
        let a = self.alg.level;
        FpPoly::new(self.alg.p, self.c[i * a..(i + 1) * a].to_vec())
    }

    fn set_row(&mut self, i: usize, z: &FpPoly) {
        let a = self.alg.level;
        let v = z.padded(a);
        self.c[i * a..(i + 1) * a].copy_from_slice(&v);
    }

    fn check(&self, other: &KummerElem) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &KummerElem) -> Result<KummerElem> {
        self.check(other)?;
        let p = self.alg.p;
        let c = self.c.iter().zip(&other.c).map(|(&x, &y)| p.add(x, y)).collect();
        Ok(KummerElem { alg: self.alg.clone(), c })
    }

    pub fn try_sub(&self, other: &KummerElem) -> Result<KummerElem> {
        self.check(other)?;
        let p = self.alg.p;
        let c = self.c.iter().zip(&other.c).map(|(&x, &y)| p.sub(x, y)).collect();
        Ok(KummerElem { alg: self.alg.clone(), c })
    }

    /// Bivariate product reduced modulo `h_l` in `zeta` and `f_l` in `X`.
    /// The product is computed by Kronecker substitution
    /// `X^i zeta^j -> Y^{i(2a-1)+j}`.
    pub fn try_mul(&self, other: &KummerElem) -> Result<KummerElem> {
        self.check(other)?;
        let alg = &self.alg;
        let (p, l, a) = (alg.p, alg.ell, alg.level);
        let w = 2 * a - 1;
        let pack = |c: &[u64]| {
            let mut v = vec![0u64; l * w];
            for i in 0..l {
                v[i * w..i * w + a].copy_from_slice(&c[i * a..(i + 1) * a]);
            }
            v
        };
        let prod = mul_slices(p, &pack(&self.c), &pack(&other.c));
        let rows = 2 * l - 1;
        let b = &alg.cyclo.b;
        // Reduce each X-row modulo h (zeta^a = sum b_k zeta^k).
        let mut red = vec![0u64; rows * a];
        let mut buf = vec![0u64; w];
        for i in 0..rows {
            let src = &prod[(i * w).min(prod.len())..((i + 1) * w).min(prod.len())];
            buf.iter_mut().for_each(|x| *x = 0);
            buf[..src.len()].copy_from_slice(src);
            for j in (a..w).rev() {
                let cj = buf[j];
                if cj == 0 {
                    continue;
                }
                for (k, &bk) in b.iter().enumerate() {
                    buf[j - a + k] = (buf[j - a + k] + cj * bk) % p.get();
                }
            }
            red[i * a..(i + 1) * a].copy_from_slice(&buf[..a]);
        }
        // Reduce modulo f in X: X^l = -sum f_k X^k.
        let f = alg.left.modulus().coeffs();
        for i in (l..rows).rev() {
            let (head, tail) = red.split_at_mut(i * a);
            let r = &tail[..a];
            for (k, &fk) in f.iter().enumerate().take(l) {
                if fk == 0 {
                    continue;
                }
                let nf = p.neg(fk);
                let dst = &mut head[(i - l + k) * a..(i - l + k + 1) * a];
                for (d, &x) in dst.iter_mut().zip(r) {
                    *d = (*d + nf * x) % p.get();
                }
            }
        }
        red.truncate(l * a);
        Ok(KummerElem { alg: alg.clone(), c: red })
    }

    pub fn pow(&self, e: &BigUint) -> KummerElem {
        let mut acc = KummerElem::one(&self.alg);
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn pow_u128(&self, e: u128) -> KummerElem {
        self.pow(&BigUint::from(e))
    }

    /// `(1 (x) z) self`, row by row in the scalar field.
    pub fn mul_scalar(&self, z: &FpPoly) -> KummerElem {
        let k = &self.alg.cyclo.scalar;
        let z = k.reduce(z);
        let mut out = self.clone();
        for i in 0..self.alg.ell {
            out.set_row(i, &k.mul_raw(&self.row(i), &z));
        }
        out
    }

    /// `(sigma^k (x) 1) self`: Frobenius on every column.
    pub fn frob_left(&self, k: i64) -> KummerElem {
        let alg = &self.alg;
        let (l, a) = (alg.ell, alg.level);
        let mut m = FpMatrix::from_rows(alg.p, &self.c.chunks(a).map(<[u64]>::to_vec).collect::<Vec<_>>()).expect("rectangular");
        for _ in 0..k.rem_euclid(l as i64) {
            m = alg.left.frobenius_matrix().mul(&m).expect("l x l times l x a");
        }
        KummerElem { alg: alg.clone(), c: (0..l).flat_map(|i| m.row(i).to_vec()).collect() }
    }

    /// `(1 (x) sigma^k) self`: Frobenius on every row.
    pub fn frob_right(&self, k: i64) -> KummerElem {
        let alg = &self.alg;
        let (l, a) = (alg.ell, alg.level);
        let g = alg.cyclo.scalar.frobenius_matrix().transpose();
        let mut m = FpMatrix::from_rows(alg.p, &self.c.chunks(a).map(<[u64]>::to_vec).collect::<Vec<_>>()).expect("rectangular");
        for _ in 0..k.rem_euclid(a as i64) {
            m = m.mul(&g).expect("l x a times a x a");
        }
        KummerElem { alg: alg.clone(), c: (0..l).flat_map(|i| m.row(i).to_vec()).collect() }
    }

    /// Scalar norm `N_{b/a}(self) = prod_{j < b/a} (1 (x) sigma^{ja}) self`.
    /// Requires `a | b | level` and invariance of `self` under
    /// `1 (x) sigma^b`.
    pub fn scalar_norm(&self, b: usize, a: usize) -> Result<KummerElem> {
        let level = self.alg.level;
        if a == 0 || !b.is_multiple_of(a) || !level.is_multiple_of(b) {
            return Err(Error::NotDivisible(a as u64, b as u64));
        }
        if self.frob_right(b as i64) != *self {
            return Err(Error::Invariant(format!("element not fixed by 1 (x) sigma^{b}")));
        }
        let mut acc = self.clone();
        for j in 1..b / a {
            acc = &acc * &self.frob_right((j * a) as i64);
        }
        debug_assert!(acc.frob_right(a as i64) == acc);
        Ok(acc)
    }
}

impl PartialEq for KummerElem {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.c == other.c
    }
}

impl Eq for KummerElem {}

impl fmt::Debug for KummerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KummerElem[l={}, a={}]{:?}", self.alg.ell, self.alg.level, self.c)
    }
}

impl std::ops::Add for &KummerElem {
    type Output = KummerElem;
    fn add(self, rhs: &KummerElem) -> KummerElem {
        self.try_add(rhs).expect("algebra mismatch")
    }
}

impl std::ops::Sub for &KummerElem {
    type Output = KummerElem;
    fn sub(self, rhs: &KummerElem) -> KummerElem {
        self.try_sub(rhs).expect("algebra mismatch")
    }
}

impl std::ops::Mul for &KummerElem {
    type Output = KummerElem;
    fn mul(self, rhs: &KummerElem) -> KummerElem {
        self.try_mul(rhs).expect("algebra mismatch")
    }
}
