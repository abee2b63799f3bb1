//! Solutions of `(sigma (x) 1)(x) = (1 (x) eta) x` and the data derived from
//! them.

use std::sync::Arc;

use super::{KummerAlg, KummerElem};
use crate::arith::{FpMatrix, FpPoly};
use crate::error::{Error, Result};
use crate::field::{ExtField, FFElem};

impl KummerAlg {
    /// `zeta^k` in the scalar field.
    pub fn zeta_power(&self, k: u64) -> FpPoly {
        let s = self.scalars();
        s.pow_raw_u128(&s.reduce(&FpPoly::x(self.characteristic())), k as u128)
    }

    /// Nonzero solution for `eta = zeta^eta_power`, normalized so that its
    /// first nonzero row is `1`.
    ///
    /// Writing `x = sum_i X^i (x) r_i` with scalars `r_i`, the equation is
    /// `(F - eta I) r = 0` over the scalar field, where `F` is the Frobenius
    /// matrix of `F_{p^l}`. That `l x l` system is solved by elimination over
    /// the scalar field.
    pub fn solve_h90(self: &Arc<Self>, eta_power: u64) -> Result<KummerElem> {
        let k = self.scalars().clone();
        let l = self.ell();
        let eta = self.zeta_power(eta_power);
        let frob = self.left().frobenius_matrix();
        let mut m: Vec<Vec<FpPoly>> = (0..l)
            .map(|r| {
                (0..l)
                    .map(|c| {
                        let entry = FpPoly::constant(self.characteristic(), frob.get(r, c));
                        if r == c {
                            &entry - &eta
                        } else {
                            entry
                        }
                    })
                    .collect()
            })
            .collect();
        let pivots = rref_over(&k, &mut m)?;
        if pivots.len() + 1 != l {
            return Err(Error::Invariant(format!("solution space has dimension {} over the scalars", l - pivots.len())));
        }
        let free = (0..l).find(|c| !pivots.contains(c)).expect("one free column");
        let mut sol = KummerElem::zero(self);
        sol.set_row(free, &FpPoly::one(self.characteristic()));
        for (row, &c) in pivots.iter().enumerate() {
            sol.set_row(c, &-&m[row][free]);
        }
        Ok(normalize(sol))
    }

    /// Same solution as [`KummerAlg::solve_h90`], from the `la x la` kernel
    /// over F_p. Cubic in `la`; kept as an independent cross-check.
    pub fn solve_h90_dense(self: &Arc<Self>, eta_power: u64) -> Result<KummerElem> {
        let (l, a) = (self.ell(), self.level());
        let p = self.characteristic();
        let k = self.scalars();
        let eta = self.zeta_power(eta_power);
        // Multiplication by eta on the zeta-power basis.
        let mut mul_eta = FpMatrix::zeros(p, a, a);
        for j in 0..a {
            let col = k.coords(&k.mul_raw(&eta, &FpPoly::monomial(p, 1, j)));
            for (r, v) in col.into_iter().enumerate() {
                mul_eta.set(r, j, v);
            }
        }
        let frob = self.left().frobenius_matrix();
        let n = l * a;
        let mut big = FpMatrix::zeros(p, n, n);
        for kr in 0..l {
            for jr in 0..a {
                let row = kr * a + jr;
                for i in 0..l {
                    let fv = frob.get(kr, i);
                    if fv != 0 {
                        big.set(row, i * a + jr, fv);
                    }
                }
                for jc in 0..a {
                    let col = kr * a + jc;
                    big.set(row, col, p.sub(big.get(row, col), mul_eta.get(jr, jc)));
                }
            }
        }
        let kernel = big.kernel();
        if kernel.len() != a {
            return Err(Error::Invariant(format!("kernel has F_p-dimension {}, expected {a}", kernel.len())));
        }
        Ok(normalize(KummerElem::from_matrix(self, kernel[0].clone())?))
    }
}

/// Scales by the inverse of the first nonzero row.
fn normalize(x: KummerElem) -> KummerElem {
    let k = x.alg.scalars().clone();
    match (0..x.alg.ell()).map(|i| x.row(i)).find(|r| !r.is_zero()) {
        Some(r) => x.mul_scalar(&k.inv_raw(&r).expect("nonzero")),
        None => x,
    }
}

/// In-place reduced row echelon form over an extension field; returns the
/// pivot columns.
fn rref_over(k: &Arc<ExtField>, m: &mut [Vec<FpPoly>]) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = k.inv_raw(&m[r][c])?;
        for x in m[r][c..].iter_mut() {
            *x = k.mul_raw(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x = &*x - &k.mul_raw(&f, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

impl KummerElem {
    /// True iff `(sigma (x) 1) self = (1 (x) zeta^eta_power) self`.
    pub fn satisfies_h90(&self, eta_power: u64) -> bool {
        self.frob_left(1) == self.mul_scalar(&self.alg.zeta_power(eta_power))
    }

    /// `a_l` with `self^l = 1 (x) a_l`, in the Conway basis of `K_l`.
    pub fn kummer_constant(&self) -> Result<FFElem> {
        let l = self.alg.ell();
        let pw = self.pow_u128(l as u128);
        if (1..l).any(|i| !pw.row(i).is_zero()) {
            return Err(Error::Invariant("power is not a pure scalar".into()));
        }
        let c = pw.row(0);
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.alg.cyclo().from_scalar(&c))
    }
}

impl KummerAlg {
    /// Rebuilds a solution from its `zeta^0` column using the minimal
    /// equation `zeta^a = sum b_i zeta^i`:
    /// `x_{a-1} = sigma(x_0)/b_0` and
    /// `x_i = sigma(x_{i+1}) - b_{i+1} x_{a-1}` for `i = a-2, ..., 1`.
    pub fn recover_alpha(self: &Arc<Self>, x0: &FFElem) -> Result<KummerElem> {
        let left = self.left();
        if x0.field().modulus() != left.modulus() {
            return Err(Error::FieldMismatch);
        }
        let a = self.level();
        let b = &self.cyclo().b;
        let p = self.characteristic();
        let mut cols = vec![FpPoly::zero(p); a];
        cols[0] = x0.rep().clone();
        if a > 1 {
            let b0_inv = p.inv(b[0]).ok_or(Error::DivisionByZero)?;
            let top = left.frob_raw(&cols[0], 1).scale(b0_inv);
            cols[a - 1] = top.clone();
            for i in (1..a - 1).rev() {
                cols[i] = &left.frob_raw(&cols[i + 1], 1) - &top.scale(b[i + 1]);
            }
        }
        let alpha = KummerElem::from_columns(self, &cols)?;
        if !alpha.satisfies_h90(1) {
            return Err(Error::Invariant("element is not the first coordinate of a solution".into()));
        }
        Ok(alpha)
    }
}
