//! An incremental registry of decorated fields and their standard
//! embeddings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use crate::arith::{FpMatrix, FpPoly, Prime};
use crate::cyclo::CycloLattice;
use crate::error::{Error, Result};
use crate::field::{random_irreducible, ExtField, FFElem};
use crate::standard::{decorate, standard_embed, DecoratedField, EmbeddingDesc};

/// Linear data for evaluating an embedding and its section.
#[derive(Clone, Debug)]
pub struct EmbeddingEvalData {
    /// Column `i` holds the coordinates of `s_l^i`.
    pub power_basis_matrix: FpMatrix,
    /// Column `i` holds the coordinates of `t^i`.
    pub target_powers: FpMatrix,
    /// Matrix of the embedding on source coordinates.
    phi: FpMatrix,
}

impl EmbeddingEvalData {
    fn new(s: &FFElem, t: &FFElem) -> Result<Self> {
        let (l, p) = (s.field().degree(), s.field().characteristic());
        let mut src = Vec::with_capacity(l);
        let mut dst = Vec::with_capacity(l);
        let (mut a, mut b) = (FFElem::one(s.field()), FFElem::one(t.field()));
        for _ in 0..l {
            src.push(a.coords());
            dst.push(b.coords());
            a = &a * s;
            b = &b * t;
        }
        let power_basis_matrix = FpMatrix::from_cols(p, &src)?;
        let target_powers = FpMatrix::from_cols(p, &dst)?;
        let phi = target_powers.mul(&power_basis_matrix.inverse()?)?;
        Ok(EmbeddingEvalData { power_basis_matrix, target_powers, phi })
    }
}

/// A cached embedding.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub desc: EmbeddingDesc,
    pub data: EmbeddingEvalData,
    source: Arc<ExtField>,
    target: Arc<ExtField>,
}

impl Embedding {
    pub fn eval(&self, x: &FFElem) -> Result<FFElem> {
        if x.field().modulus() != self.source.modulus() {
            return Err(Error::FieldMismatch);
        }
        FFElem::from_coords(&self.target, &self.data.phi.mul_vec(&x.coords())?)
    }

    /// The preimage of `y`, or [`Error::NotInImage`].
    pub fn section(&self, y: &FFElem) -> Result<FFElem> {
        if y.field().modulus() != self.target.modulus() {
            return Err(Error::FieldMismatch);
        }
        let c = self.data.phi.solve(&y.coords())?.ok_or(Error::NotInImage)?;
        FFElem::from_coords(&self.source, &c)
    }
}

/// Outcome of one triangle `l | m | n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleResult {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct LatticeReport {
    pub triangles: Vec<TriangleResult>,
}

impl LatticeReport {
    pub fn all_passed(&self) -> bool {
        self.triangles.iter().all(|t| t.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TriangleResult> {
        self.triangles.iter().filter(|t| !t.passed)
    }
}

/// Registry of decorated fields over one cyclotomic lattice. Entries are
/// only ever added.
pub struct StdLattice {
    cyclo: CycloLattice,
    seed: u64,
    cache_alpha: bool,
    fields: RwLock<BTreeMap<usize, Arc<DecoratedField>>>,
    embeddings: RwLock<BTreeMap<(usize, usize), Arc<Embedding>>>,
    computed: AtomicUsize,
}

impl StdLattice {
    /// Lattice over the built-in Conway table.
    pub fn new(p: Prime) -> Self {
        Self::with_cyclo(CycloLattice::new(p), 0)
    }

    /// `seed` drives the defining polynomials picked by [`StdLattice::add_field`].
    pub fn with_cyclo(cyclo: CycloLattice, seed: u64) -> Self {
        StdLattice {
            cyclo,
            seed,
            cache_alpha: false,
            fields: RwLock::new(BTreeMap::new()),
            embeddings: RwLock::new(BTreeMap::new()),
            computed: AtomicUsize::new(0),
        }
    }

    /// Keeps the full `alpha_l` of each field instead of rebuilding it.
    pub fn with_alpha_cache(mut self, on: bool) -> Self {
        self.cache_alpha = on;
        self
    }

    pub fn characteristic(&self) -> Prime {
        self.cyclo.characteristic()
    }

    pub fn cyclo(&self) -> &CycloLattice {
        &self.cyclo
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Registered degrees in increasing order.
    pub fn degrees(&self) -> Vec<usize> {
        self.fields.read().unwrap().keys().copied().collect()
    }

    /// Registered pairs with a cached embedding.
    pub fn cached_pairs(&self) -> Vec<(usize, usize)> {
        self.embeddings.read().unwrap().keys().copied().collect()
    }

    /// Number of embeddings computed so far (cache hits excluded).
    pub fn embeddings_computed(&self) -> usize {
        self.computed.load(Ordering::Relaxed)
    }

    /// Decorates and registers `F_{p^l}`. Registering a degree again returns
    /// the stored field, unless `f` names a different polynomial.
    pub fn add_field(&self, ell: usize, f: Option<FpPoly>) -> Result<Arc<DecoratedField>> {
        if let Some(d) = self.fields.read().unwrap().get(&ell) {
            return match f {
                Some(f) if f.monic() != *d.field().modulus() => Err(Error::AlreadyRegistered(ell as u64)),
                _ => Ok(d.clone()),
            };
        }
        let p = self.characteristic();
        let f = match f {
            Some(f) => f,
            None if ell > 0 && !(ell as u64).is_multiple_of(p.get()) => random_irreducible(p, ell, self.seed)?,
            None => return Err(Error::DegreeDivisibleByP { ell: ell as u64, p: p.get() }),
        };
        let mut d = decorate(&self.cyclo, ell, Some(f))?;
        if !self.cache_alpha {
            d = d.forget_alpha();
        }
        self.insert(d)
    }

    fn insert(&self, d: DecoratedField) -> Result<Arc<DecoratedField>> {
        let ell = d.degree();
        let mut fields = self.fields.write().unwrap();
        match fields.get(&ell) {
            Some(existing) if existing.field().modulus() != d.field().modulus() => Err(Error::AlreadyRegistered(ell as u64)),
            Some(existing) => Ok(existing.clone()),
            None => {
                let d = Arc::new(d);
                fields.insert(ell, d.clone());
                Ok(d)
            }
        }
    }

    pub fn field(&self, ell: usize) -> Result<Arc<DecoratedField>> {
        self.fields.read().unwrap().get(&ell).cloned().ok_or(Error::Unregistered(ell as u64))
    }

    /// Cached or freshly computed standard embedding of degree `l` into `m`.
    pub fn get_embedding(&self, ell: usize, m: usize) -> Result<Arc<Embedding>> {
        if let Some(e) = self.embeddings.read().unwrap().get(&(ell, m)) {
            return Ok(e.clone());
        }
        let (src, dst) = (self.field(ell)?, self.field(m)?);
        if !m.is_multiple_of(ell) {
            return Err(Error::NotDivisible(ell as u64, m as u64));
        }
        let desc = standard_embed(&src, &dst, &self.cyclo)?;
        self.computed.fetch_add(1, Ordering::Relaxed);
        self.insert_embedding(&src, &dst, desc)
    }

    fn insert_embedding(&self, src: &DecoratedField, dst: &DecoratedField, desc: EmbeddingDesc) -> Result<Arc<Embedding>> {
        let data = EmbeddingEvalData::new(src.generator(), &desc.s_image)?;
        let e = Arc::new(Embedding { desc, data, source: src.field().clone(), target: dst.field().clone() });
        let key = (src.degree(), dst.degree());
        Ok(self.embeddings.write().unwrap().entry(key).or_insert(e).clone())
    }

    pub fn embed_eval(&self, ell: usize, m: usize, x: &FFElem) -> Result<FFElem> {
        self.get_embedding(ell, m)?.eval(x)
    }

    pub fn section_eval(&self, ell: usize, m: usize, y: &FFElem) -> Result<FFElem> {
        self.get_embedding(ell, m)?.section(y)
    }

    /// `phi_{l,m}(s_l)` over the powers of `s_m`, i.e. as a residue modulo
    /// `P_m`.
    pub fn image_over_standard_basis(&self, ell: usize, m: usize) -> Result<FpPoly> {
        let t = self.get_embedding(ell, m)?.desc.s_image.coords();
        let basis = &self.get_embedding(m, m)?.data.power_basis_matrix;
        let c = basis.solve(&t)?.ok_or_else(|| Error::Invariant(format!("s_{m} does not generate")))?;
        Ok(FpPoly::new(self.characteristic(), c))
    }

    /// Checks `phi_{m,n}(phi_{l,m}(s_l)) = phi_{l,n}(s_l)` for every
    /// registered `l | m | n` with `l < m < n`.
    pub fn verify_lattice(&self) -> LatticeReport {
        let degrees = self.degrees();
        let mut triangles = Vec::new();
        for (i, &l) in degrees.iter().enumerate() {
            for (j, &m) in degrees.iter().enumerate().skip(i + 1) {
                if m % l != 0 {
                    continue;
                }
                for &n in degrees.iter().skip(j + 1).filter(|&&n| n % m == 0) {
                    let outcome = self.check_triangle(l, m, n);
                    triangles.push(TriangleResult {
                        l,
                        m,
                        n,
                        passed: matches!(outcome, Ok(true)),
                        error: outcome.err().map(|e| e.to_string()),
                    });
                }
            }
        }
        LatticeReport { triangles }
    }

    fn check_triangle(&self, l: usize, m: usize, n: usize) -> Result<bool> {
        let s = self.field(l)?.generator().clone();
        let composed = self.embed_eval(m, n, &self.embed_eval(l, m, &s)?)?;
        Ok(composed == self.embed_eval(l, n, &s)?)
    }

    /// Field coefficients held for the registered fields: `f_l`, `s_l` and
    /// `P_l`, plus `alpha_l` when cached.
    pub fn stored_coefficients(&self) -> usize {
        self.fields
            .read()
            .unwrap()
            .values()
            .map(|d| {
                let base = 3 * d.degree() + 2;
                if d.has_cached_alpha() {
                    base + d.degree() * d.level()
                } else {
                    base
                }
            })
            .sum()
    }

    /// Text form: `p <p>`, then `field l f.. s.. P..` and
    /// `embedding l m t..` lines with ascending decimal coefficients.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# conway {}", self.cyclo.table().provenance()).unwrap();
        writeln!(out, "p {}", self.characteristic()).unwrap();
        for (l, d) in self.fields.read().unwrap().iter() {
            let f = d.field().modulus().padded(l + 1);
            let s = d.generator().coords();
            let pl = d.standard_poly().padded(l + 1);
            writeln!(out, "field {l} {} {} {}", join(&f), join(&s), join(&pl)).unwrap();
        }
        for ((l, m), e) in self.embeddings.read().unwrap().iter() {
            writeln!(out, "embedding {l} {m} {}", join(&e.desc.s_image.coords())).unwrap();
        }
        out
    }

    /// Parses [`StdLattice::to_text`] output against `cyclo`, re-validating
    /// every decoration and recomputing every embedding.
    pub fn from_text(text: &str, cyclo: CycloLattice, seed: u64) -> Result<Self> {
        let p = cyclo.characteristic();
        let lat = StdLattice::with_cyclo(cyclo, seed);
        let mut seen_p = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let perr = |msg: String| Error::Parse { line, msg };
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let mut tok = raw.split_whitespace();
            let tag = tok.next().unwrap();
            let nums: Vec<u64> = tok.map(|t| t.parse::<u64>().map_err(|e| perr(format!("{t:?}: {e}")))).collect::<Result<_>>()?;
            match tag {
                "p" => {
                    if nums != [p.get()] {
                        return Err(perr(format!("characteristic {nums:?} does not match {p}")));
                    }
                    seen_p = true;
                }
                _ if !seen_p => return Err(perr("missing `p` header".into())),
                "field" => {
                    let l = *nums.first().ok_or_else(|| perr("missing degree".into()))? as usize;
                    if l == 0 || nums.len() != 1 + 3 * l + 2 {
                        return Err(perr(format!("expected {} numbers for degree {l}", 3 * l + 2)));
                    }
                    let f = FpPoly::new(p, nums[1..l + 2].to_vec());
                    let field = ExtField::new(f)?;
                    let s = FFElem::from_coords(&field, &nums[l + 2..2 * l + 2])?;
                    let pl = FpPoly::new(p, nums[2 * l + 2..].to_vec());
                    let d = DecoratedField::from_parts(&lat.cyclo, field, s, pl).map_err(|e| perr(e.to_string()))?;
                    if lat.fields.read().unwrap().contains_key(&l) {
                        return Err(perr(format!("degree {l} listed twice")));
                    }
                    lat.insert(d)?;
                }
                "embedding" => {
                    if nums.len() < 2 {
                        return Err(perr("missing degrees".into()));
                    }
                    let (l, m) = (nums[0] as usize, nums[1] as usize);
                    if nums.len() != 2 + m {
                        return Err(perr(format!("expected {m} coefficients")));
                    }
                    let (src, dst) = (lat.field(l)?, lat.field(m)?);
                    let t = FFElem::from_coords(dst.field(), &nums[2..])?;
                    let desc = standard_embed(&src, &dst, &lat.cyclo).map_err(|e| perr(e.to_string()))?;
                    if desc.s_image != t {
                        return Err(perr(format!("embedding {l} -> {m} is not the standard one")));
                    }
                    lat.insert_embedding(&src, &dst, desc)?;
                }
                other => return Err(perr(format!("unknown record {other:?}"))),
            }
        }
        if !seen_p {
            return Err(Error::Parse { line: 0, msg: "missing `p` header".into() });
        }
        Ok(lat)
    }
}

impl std::fmt::Debug for StdLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StdLattice(p={}, degrees={:?})", self.characteristic(), self.degrees())
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}
