//! Conway polynomial tables: parsing, validation and brute-force search.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::numtheory::{divisors, group_order};
use crate::arith::{FpPoly, Prime};
use crate::error::{Error, Result};
use crate::field::{is_irreducible, ExtField};

/// The table shipped with the crate.
pub const BUILTIN_TABLE: &str = include_str!("../../data/conway.txt");

/// Default cap on the size of a brute-force search space, `p^{a-1}`.
pub const DEFAULT_WORK_BOUND: u128 = 1 << 22;

/// Conway polynomials of one characteristic, keyed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayTable {
    p: Prime,
    polys: BTreeMap<u32, FpPoly>,
    canonical: bool,
    provenance: String,
}

/// How a missing entry is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Lexicographically first candidate in the sign-twisted order used by
    /// published tables.
    Conway,
    /// First acceptable candidate from a seeded starting point; the result
    /// is primitive and norm-compatible but generally not the Conway
    /// polynomial.
    Pseudo { seed: u64 },
}

impl ConwayTable {
    pub fn empty(p: Prime) -> Self {
        ConwayTable { p, polys: BTreeMap::new(), canonical: true, provenance: "empty".into() }
    }

    /// The embedded table restricted to `p` (possibly empty).
    pub fn builtin(p: Prime) -> Self {
        let mut t = Self::parse(BUILTIN_TABLE, p).expect("embedded table parses");
        t.provenance = "builtin".into();
        t
    }

    /// Parses `p a c_0 ... c_a` lines, keeping the entries for `p`. Lines
    /// starting with `#` and blank lines are skipped. No mathematical
    /// validation happens here; see [`ConwayTable::validate`].
    pub fn parse(text: &str, p: Prime) -> Result<Self> {
        let mut polys = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: idx + 1, msg: msg.to_string() };
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(|w| w.parse::<u64>().map_err(|_| err(&format!("not an integer: {w}"))))
                .collect::<Result<_>>()?;
            if nums.len() < 4 {
                return Err(err("expected `p a c_0 ... c_a`"));
            }
            let (lp, a) = (nums[0], nums[1]);
            if lp != p.get() {
                continue;
            }
            if a == 0 || nums.len() != a as usize + 3 {
                return Err(err(&format!("degree {a} needs {} coefficients", a + 1)));
            }
            if nums[2..].iter().any(|&c| c >= lp) {
                return Err(err("coefficient not reduced modulo p"));
            }
            let f = FpPoly::new(p, nums[2..].to_vec());
            if !f.is_monic() || f.degree() != Some(a as usize) {
                return Err(err("polynomial must be monic of the stated degree"));
            }
            if polys.insert(a as u32, f).is_some() {
                return Err(err(&format!("duplicate entry for degree {a}")));
            }
        }
        Ok(ConwayTable { p, polys, canonical: true, provenance: "file".into() })
    }

    /// Checks irreducibility, primitivity and pairwise norm compatibility.
    pub fn validate(&self) -> Result<()> {
        for (&a, f) in &self.polys {
            if !is_irreducible(f)? {
                return Err(Error::Invariant(format!("table entry of degree {a} is reducible")));
            }
            if !is_primitive_poly(f)? {
                return Err(Error::Invariant(format!("table entry of degree {a} is not primitive")));
            }
        }
        for (&a, fa) in &self.polys {
            for (&b, fb) in self.polys.range(a + 1..) {
                if b % a == 0 && !norm_compatible(fa, a, fb, b)? {
                    return Err(Error::Invariant(format!("entries of degrees {a} and {b} are not norm compatible")));
                }
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> Prime {
        self.p
    }

    pub fn get(&self, a: u32) -> Option<&FpPoly> {
        self.polys.get(&a)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.polys.keys().copied()
    }

    /// False once any pseudo-Conway entry has been added.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Where the entries came from: `builtin`, `file`, `empty`, with a
    /// `+search` or `+pseudo` suffix when entries were computed.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_provenance(&mut self, provenance: &str) {
        self.provenance = provenance.to_string();
    }

    fn insert(&mut self, a: u32, f: FpPoly, mode: SearchMode) {
        let tag = match mode {
            SearchMode::Conway => "+search",
            SearchMode::Pseudo { .. } => {
                self.canonical = false;
                "+pseudo"
            }
        };
        if !self.provenance.ends_with(tag) {
            self.provenance.push_str(tag);
        }
        self.polys.insert(a, f);
    }

    /// Table lookup, falling back to a search that first fills in every
    /// missing divisor degree.
    pub fn lookup_or_search(&mut self, a: u32, mode: SearchMode, work_bound: u128) -> Result<FpPoly> {
        if a == 0 {
            return Err(Error::OutOfRange("degree 0".into()));
        }
        if let Some(f) = self.polys.get(&a) {
            return Ok(f.clone());
        }
        // An exhaustive search fails before filling in divisors when the
        // requested degree itself is out of reach.
        let free = a.saturating_sub(1).max(1);
        let exhaustive = matches!(mode, SearchMode::Conway);
        if exhaustive && (self.p.get() as u128).checked_pow(free).is_none_or(|s| s > work_bound) {
            return Err(Error::ConwayUnavailable { p: self.p.get(), degree: a });
        }
        for d in divisors(a as u64) {
            let d = d as u32;
            if d < a {
                self.lookup_or_search(d, mode, work_bound)?;
            }
        }
        let f = search(self.p, a, &self.polys, mode, work_bound)?;
        self.insert(a, f.clone(), mode);
        Ok(f)
    }

    /// Serializes in the table file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (a, f) in &self.polys {
            out.push_str(&format!("{} {} {}\n", self.p, a, f.to_machine()));
        }
        out
    }
}

/// True iff the class of `X` generates the multiplicative group.
pub fn is_primitive_poly(f: &FpPoly) -> Result<bool> {
    let field = ExtField::new_unchecked(f.clone());
    let x = field.reduce(&FpPoly::x(f.modulus()));
    field.is_primitive_raw(&x)
}

/// `C_a(X^{(p^b-1)/(p^a-1)}) = 0 mod C_b`.
pub fn norm_compatible(ca: &FpPoly, a: u32, cb: &FpPoly, b: u32) -> Result<bool> {
    let p = ca.modulus().get();
    let e = group_order(p, b as usize)? / group_order(p, a as usize)?;
    let y = FpPoly::x(ca.modulus()).powmod_u128(e, cb)?;
    Ok(ca.compose_mod(&y, cb)?.is_zero())
}

/// Builds the candidate whose sign-twisted coefficient tuple is `t`:
/// the coefficient of `x^{n-i}` is `(-1)^i t_i`.
fn candidate(p: Prime, t: &[u64]) -> FpPoly {
    let n = t.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    for (i, &ti) in t.iter().enumerate() {
        let i = i + 1;
        coeffs[n - i] = if i % 2 == 0 { ti } else { p.neg(ti) };
    }
    FpPoly::from_reduced(p, coeffs)
}

fn acceptable(f: &FpPoly, n: u32, known: &BTreeMap<u32, FpPoly>) -> Result<bool> {
    if !is_irreducible(f)? {
        return Ok(false);
    }
    for (&d, cd) in known.range(..n) {
        if n.is_multiple_of(d) && !norm_compatible(cd, d, f, n)? {
            return Ok(false);
        }
    }
    is_primitive_poly(f)
}

/// Walks sign-twisted tuples in increasing order, from zero in Conway
/// mode or from a seeded random tuple (wrapping around) in pseudo mode.
/// Conway mode needs the whole space within `work_bound`; pseudo mode tries
/// at most `work_bound` candidates.
fn search(p: Prime, n: u32, known: &BTreeMap<u32, FpPoly>, mode: SearchMode, work_bound: u128) -> Result<FpPoly> {
    let unavailable = || Error::ConwayUnavailable { p: p.get(), degree: n };
    let pv = p.get();
    // The last tuple entry is pinned by norm compatibility with degree 1,
    // except for degree 1 itself where it is the free variable.
    let free = if n == 1 { 1 } else { n as usize - 1 };
    let space = (pv as u128).checked_pow(free as u32);
    let trials = match mode {
        SearchMode::Conway => space.filter(|&s| s <= work_bound).ok_or_else(unavailable)?,
        SearchMode::Pseudo { .. } => space.map_or(work_bound, |s| s.min(work_bound)),
    };
    let pinned = if n == 1 {
        None
    } else {
        let c1 = known.get(&1).ok_or_else(unavailable)?;
        Some(p.neg(c1.coeff(0)))
    };
    let mut t = vec![0u64; n as usize];
    if let SearchMode::Pseudo { seed } = mode {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
        for x in t.iter_mut().take(free) {
            *x = rng.gen_range(0..pv);
        }
    }
    for _ in 0..trials {
        if let Some(g) = pinned {
            t[n as usize - 1] = g;
        }
        let f = candidate(p, &t);
        if acceptable(&f, n, known)? {
            return Ok(f);
        }
        // Odometer step; t_1 is the most significant digit.
        for x in t[..free].iter_mut().rev() {
            *x += 1;
            if *x < pv {
                break;
            }
            *x = 0;
        }
    }
    Err(unavailable())
}
