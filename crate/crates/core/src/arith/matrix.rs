use std::fmt;

use super::prime::Prime;
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with the pivot column of each nonzero
/// row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: Prime, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| x % p.get()).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(p: Prime, cols: &[Vec<u64>]) -> Result<Self> {
        Ok(Self::from_rows(p, cols)?.transpose())
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        let budget = p.lazy_budget();
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0;
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                if pending == budget {
                    acc.iter_mut().for_each(|x| *x %= p.get());
                    pending = 1;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b;
                }
                pending += 1;
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x % p.get();
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("{} columns vs vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| dot(self.p, self.row(i), v)).collect())
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = p.inv(m.get(r, c)).expect("nonzero pivot");
            m.scale_row(r, inv);
            let pivot_row = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f != 0 {
                    let nf = p.neg(f);
                    let start = i * m.cols + c;
                    for (x, &y) in m.data[start..start + pivot_row.len()].iter_mut().zip(&pivot_row) {
                        *x = (*x + nf * y) % p.get();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel basis read off the reduced echelon form: one vector per free
    /// column, in ascending order, with a 1 at that column and zeros at the
    /// other free columns.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let Echelon { matrix: r, pivots } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (row, &c) in pivots.iter().enumerate() {
                    v[c] = p.neg(r.get(row, f));
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b` with free variables set to zero, or
    /// `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("{} rows vs right-hand side of length {}", self.rows, b.len())));
        }
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        #[allow(clippy::needless_range_loop)]
        for i in 0..self.rows {
            aug.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols].copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % self.p.get();
        }
        let Echelon { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::Dimension(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let Echelon { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&r.row(i)[n..]);
        }
        Ok(inv)
    }

    pub fn pow(&self, mut e: u64) -> Result<FpMatrix> {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        let p = self.p;
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = p.mul(*x, c);
        }
    }
}

/// Inner product of two residue vectors.
pub fn dot(p: Prime, a: &[u64], b: &[u64]) -> u64 {
    let budget = p.lazy_budget();
    let mut acc = 0u64;
    // A reduced accumulator counts as one product against the budget.
    let mut pending = 0;
    for (&x, &y) in a.iter().zip(b) {
        if pending == budget {
            acc %= p.get();
            pending = 1;
        }
        acc += x * y;
        pending += 1;
    }
    acc % p.get()
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix[p={}, {}x{}]", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Outcome of feeding a vector to an [`IncrementalSpan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanInsert {
    /// The vector enlarged the span; it received the returned index.
    Independent(usize),
    /// The vector equals `sum c_i v_i` over the previously inserted vectors.
    Dependent(Vec<u64>),
}

/// Sequential elimination that detects the first linear dependency among
/// inserted vectors and expresses it in terms of the earlier ones.
#[derive(Clone, Debug)]
pub struct IncrementalSpan {
    p: Prime,
    dim: usize,
    // (reduced vector with pivot entry 1, pivot index, combination of inputs)
    rows: Vec<(Vec<u64>, usize, Vec<u64>)>,
}

impl IncrementalSpan {
    pub fn new(p: Prime, dim: usize) -> Self {
        IncrementalSpan { p, dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn insert(&mut self, v: &[u64]) -> Result<SpanInsert> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} in span of dimension {}", v.len(), self.dim)));
        }
        let p = self.p;
        let n = self.rows.len();
        let mut v: Vec<u64> = v.iter().map(|&x| x % p.get()).collect();
        let mut combo = vec![0u64; n + 1];
        combo[n] = 1;
        for (row, piv, rc) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            let nc = p.neg(c);
            for (x, &y) in v.iter_mut().zip(row) {
                *x = (*x + nc * y) % p.get();
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = (*x + nc * y) % p.get();
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                // combo . inputs = 0 with combo[n] = 1.
                combo.pop();
                Ok(SpanInsert::Dependent(combo.into_iter().map(|c| p.neg(c)).collect()))
            }
            Some(piv) => {
                let inv = p.inv(v[piv]).expect("nonzero");
                v.iter_mut().for_each(|x| *x = p.mul(*x, inv));
                combo.iter_mut().for_each(|x| *x = p.mul(*x, inv));
                self.rows.push((v, piv, combo));
                Ok(SpanInsert::Independent(n))
            }
        }
    }
}
