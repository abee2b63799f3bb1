//! The cyclotomic system `{(K_l, zeta_l)}` backed by Conway polynomials.
//!
//! `K_l` is the Conway field of degree `a = nu(l)` and
//! `zeta_l = X^{(p^a-1)/l}`. Norm compatibility of the Conway polynomials
//! makes the embeddings `zeta_l -> zeta_m^{m/l}` compatible.

pub mod conway;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::arith::numtheory::{group_order, order_mod};
use crate::arith::{FpMatrix, FpPoly, Prime};
use crate::error::{Error, Result};
use crate::field::{ExtField, FFElem};

pub use conway::{ConwayTable, SearchMode, DEFAULT_WORK_BOUND};

/// Cached data for one root of unity `zeta_l`.
pub struct CycloEntry {
    pub ell: u64,
    /// `a = nu(l)`.
    pub level: u32,
    /// `K_l`, the Conway field of degree `a`.
    pub conway: Arc<ExtField>,
    /// `zeta_l` as a residue of the Conway field.
    pub zeta: FpPoly,
    /// Minimal polynomial `h_l` of `zeta_l`.
    pub h: FpPoly,
    /// `F_p[Z]/(h_l)`: the same field written in the basis of powers of
    /// `zeta_l`. Kummer algebra scalars live here.
    pub scalar: Arc<ExtField>,
    /// `zeta^a = sum b_i zeta^i`.
    pub b: Vec<u64>,
    to_conway: FpMatrix,
    from_conway: FpMatrix,
}

impl CycloEntry {
    /// Conway coordinates to the `zeta`-power basis.
    pub fn to_scalar(&self, x: &FFElem) -> Result<FpPoly> {
        if x.field().modulus() != self.conway.modulus() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.scalar.from_coords(&self.from_conway.mul_vec(&x.coords())?))
    }

    /// `zeta`-power basis to Conway coordinates.
    pub fn from_scalar(&self, z: &FpPoly) -> FFElem {
        let v = self.to_conway.mul_vec(&self.scalar.coords(z)).expect("square");
        FFElem::from_coords(&self.conway, &v).expect("length a")
    }

    pub fn zeta_elem(&self) -> FFElem {
        FFElem::new(&self.conway, self.zeta.clone()).expect("reduced")
    }
}

impl std::fmt::Debug for CycloEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycloEntry(l={}, a={}, h={})", self.ell, self.level, self.h)
    }
}

/// Conway-backed cyclotomic lattice for one characteristic. All caches are
/// append-only; an entry becomes visible only once fully built.
pub struct CycloLattice {
    p: Prime,
    table: RwLock<ConwayTable>,
    mode: SearchMode,
    work_bound: u128,
    fields: RwLock<HashMap<u32, Arc<ExtField>>>,
    entries: RwLock<HashMap<u64, Arc<CycloEntry>>>,
}

impl CycloLattice {
    /// Lattice over the embedded Conway table.
    pub fn new(p: Prime) -> Self {
        Self::with_table(ConwayTable::builtin(p), SearchMode::Conway, DEFAULT_WORK_BOUND)
    }

    pub fn with_table(table: ConwayTable, mode: SearchMode, work_bound: u128) -> Self {
        CycloLattice {
            p: table.characteristic(),
            table: RwLock::new(table),
            mode,
            work_bound,
            fields: RwLock::new(HashMap::new()),
            entries: RwLock::new(HashMap::new()),
        }
    }

    pub fn characteristic(&self) -> Prime {
        self.p
    }

    /// Snapshot of the Conway table, including searched entries.
    pub fn table(&self) -> ConwayTable {
        self.table.read().expect("lock").clone()
    }

    /// `nu(l)`, the order of `p` modulo `l`.
    pub fn level(&self, ell: u64) -> Result<u32> {
        order_mod(self.p.get(), ell)
    }

    pub fn conway(&self, a: u32) -> Result<FpPoly> {
        if let Some(f) = self.table.read().expect("lock").get(a) {
            return Ok(f.clone());
        }
        self.table.write().expect("lock").lookup_or_search(a, self.mode, self.work_bound)
    }

    /// The Conway field of degree `a`; its generator `X` is `zeta_{p^a-1}`.
    pub fn conway_field(&self, a: u32) -> Result<Arc<ExtField>> {
        if let Some(k) = self.fields.read().expect("lock").get(&a) {
            return Ok(k.clone());
        }
        let k = ExtField::new_unchecked(self.conway(a)?);
        Ok(self.fields.write().expect("lock").entry(a).or_insert(k).clone())
    }

    pub fn entry(&self, ell: u64) -> Result<Arc<CycloEntry>> {
        if let Some(e) = self.entries.read().expect("lock").get(&ell) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.build_entry(ell)?);
        Ok(self.entries.write().expect("lock").entry(ell).or_insert(e).clone())
    }

    fn build_entry(&self, ell: u64) -> Result<CycloEntry> {
        let level = self.level(ell)?;
        let conway = self.conway_field(level)?;
        let n = group_order(self.p.get(), level as usize)?;
        let x = conway.reduce(&FpPoly::x(self.p));
        let zeta = conway.pow_raw_u128(&x, n / ell as u128);
        let h = conway.minpoly_raw(&zeta);
        if h.degree() != Some(level as usize) {
            return Err(Error::Invariant(format!("zeta_{ell} has degree {:?}, expected {level}", h.degree())));
        }
        let a = level as usize;
        let mut cols = Vec::with_capacity(a);
        let mut cur = FpPoly::one(self.p);
        for _ in 0..a {
            cols.push(conway.coords(&cur));
            cur = conway.mul_raw(&cur, &zeta);
        }
        let to_conway = FpMatrix::from_cols(self.p, &cols)?;
        let from_conway = to_conway.inverse()?;
        let b = (0..a).map(|i| self.p.neg(h.coeff(i))).collect();
        let scalar = ExtField::new_unchecked(h.clone());
        Ok(CycloEntry { ell, level, conway, zeta, h, scalar, b, to_conway, from_conway })
    }

    /// `(K_l, zeta_l)`.
    pub fn zeta(&self, ell: u64) -> Result<(Arc<ExtField>, FFElem)> {
        let e = self.entry(ell)?;
        Ok((e.conway.clone(), e.zeta_elem()))
    }

    /// `zeta_m^{m/l}` in `K_m`, the image of `zeta_l`.
    fn image_of_zeta(&self, ell: u64, m: u64) -> Result<(Arc<CycloEntry>, Arc<CycloEntry>, FpPoly)> {
        if ell == 0 || !m.is_multiple_of(ell) {
            return Err(Error::NotDivisible(ell, m));
        }
        let (el, em) = (self.entry(ell)?, self.entry(m)?);
        let eta = em.conway.pow_raw_u128(&em.zeta, (m / ell) as u128);
        Ok((el, em, eta))
    }

    /// `iota_{l,m}`: write `x` in powers of `zeta_l` and evaluate at
    /// `zeta_m^{m/l}`.
    pub fn embed_cyclo(&self, ell: u64, m: u64, x: &FFElem) -> Result<FFElem> {
        let (el, em, eta) = self.image_of_zeta(ell, m)?;
        let c = el.to_scalar(x)?;
        let k = &em.conway;
        let mut acc = FpPoly::zero(self.p);
        for &cj in c.coeffs().iter().rev() {
            acc = &k.mul_raw(&acc, &eta) + &FpPoly::constant(self.p, cj);
        }
        FFElem::new(k, acc)
    }

    /// Preimage under `iota_{l,m}`, or [`Error::NotInImage`].
    pub fn embed_cyclo_inverse(&self, ell: u64, m: u64, y: &FFElem) -> Result<FFElem> {
        let (el, em, eta) = self.image_of_zeta(ell, m)?;
        if y.field().modulus() != em.conway.modulus() {
            return Err(Error::FieldMismatch);
        }
        let k = &em.conway;
        let mut cols = Vec::with_capacity(el.level as usize);
        let mut cur = FpPoly::one(self.p);
        for _ in 0..el.level {
            cols.push(k.coords(&cur));
            cur = k.mul_raw(&cur, &eta);
        }
        let basis = FpMatrix::from_cols(self.p, &cols)?;
        let c = basis.solve(&y.coords())?.ok_or(Error::NotInImage)?;
        Ok(el.from_scalar(&el.scalar.from_coords(&c)))
    }

    /// `abar_l`, the preimage of `zeta_{p^a-1}^a` under `iota_{l,p^a-1}`.
    pub fn standard_constant(&self, ell: u64) -> Result<FFElem> {
        let a = self.level(ell)?;
        let top = group_order(self.p.get(), a as usize)?;
        let top = u64::try_from(top).map_err(|_| Error::OutOfRange(format!("{}^{a} - 1", self.p)))?;
        let k = self.conway_field(a)?;
        let y = FFElem::generator(&k).pow_u128(a as u128);
        self.embed_cyclo_inverse(ell, top, &y)
    }
}

impl std::fmt::Debug for CycloLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycloLattice(p={})", self.p)
    }
}
