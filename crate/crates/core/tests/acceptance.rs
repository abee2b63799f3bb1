//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fflattice::arith::numtheory::order_mod;
use fflattice::bench;
use fflattice::cyclo::{ConwayTable, SearchMode, DEFAULT_WORK_BOUND};
use fflattice::field::random_irreducible;
use fflattice::standard::{kappa_constant, valid_degree, verify_key_identity, KEY_IDENTITY_DIMENSION_BOUND};
use fflattice::{decorate, CycloLattice, Error, ExtField, FFElem, Prime, StdLattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_ONE_LIMIT: Duration = Duration::from_secs(60);
const TRIANGLE_LIMIT: Duration = Duration::from_secs(300);
const KEY_IDENTITY_LIMIT: Duration = Duration::from_secs(30);
const STANDARDNESS_MAX: usize = 40;
const TRIANGLE_MAX: usize = 60;
const UNIQUENESS_PAIRS: usize = 20;
const LEVEL_EQUAL_PAIRS: usize = 10;
const HOMOMORPHISM_SAMPLES: usize = 100;
const NON_SUBFIELD_SAMPLES: usize = 10;
const BENCH_MAX: usize = 100;

const TABLE_ONE: [&str; 10] = [
    "x+1",
    "x^3+x+1",
    "x^5+x^3+1",
    "x^7+x+1",
    "x^9+x^7+x^4+x^2+1",
    "x^11+x^8+x^7+x^6+x^2+x+1",
    "x^13+x^10+x^5+x^3+1",
    "x^15+x+1",
    "x^17+x^11+x^10+x^8+x^7+x^6+x^4+x^3+x^2+x+1",
    "x^19+x^17+x^16+x^15+x^14+x^13+x^12+x^8+x^7+x^6+x^5+x^3+1",
];

type Outcome = Result<String, String>;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<f64, String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("{what} took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()));
    }
    Ok(t.as_secs_f64())
}

fn table_one() -> Outcome {
    let start = Instant::now();
    let lattice = CycloLattice::new(prime(2));
    for (i, want) in TABLE_ONE.iter().enumerate() {
        let ell = 2 * i + 1;
        let got = decorate(&lattice, ell, None).map_err(err)?.standard_poly().to_human();
        if got != *want {
            return Err(format!("l={ell}: got {got}, expected {want}"));
        }
    }
    let t = within(start, TABLE_ONE_LIMIT, "table")?;
    Ok(format!("10 polynomials bit-exact in {t:.2}s (limit {}s)", TABLE_ONE_LIMIT.as_secs()))
}

fn standardness() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3, 5] {
        let lattice = CycloLattice::new(prime(p));
        let table = lattice.table();
        for ell in bench::reachable_degrees(p, STANDARDNESS_MAX, |a| table.get(a).is_some()) {
            let d = decorate(&lattice, ell, None).map_err(err)?;
            let alpha = d.alpha().map_err(err)?;
            if !alpha.satisfies_h90(1) {
                return Err(format!("p={p} l={ell}: (H90) fails"));
            }
            let abar = lattice.standard_constant(ell as u64).map_err(err)?;
            if alpha.kummer_constant().map_err(err)? != abar {
                return Err(format!("p={p} l={ell}: alpha^l != 1 (x) abar"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} decorated fields over p in {{2,3,5}}, l <= {STANDARDNESS_MAX}"))
}

fn build_triangle_lattices() -> Result<(Vec<StdLattice>, usize, f64), String> {
    let start = Instant::now();
    let mut lattices = Vec::new();
    let mut triangles = 0;
    for p in [2u64, 3, 5] {
        let l = StdLattice::new(prime(p));
        for ell in bench::table_degrees(&l, TRIANGLE_MAX) {
            l.add_field(ell, None).map_err(err)?;
        }
        let report = l.verify_lattice();
        if let Some(f) = report.failures().next() {
            return Err(format!("p={p}: triangle {}|{}|{} failed: {:?}", f.l, f.m, f.n, f.error));
        }
        triangles += report.triangles.len();
        lattices.push(l);
    }
    let t = within(start, TRIANGLE_LIMIT, "triangles")?;
    Ok((lattices, triangles, t))
}

fn uniqueness() -> Outcome {
    let cases: [(u64, usize); UNIQUENESS_PAIRS] = [
        (2, 3), (2, 5), (2, 7), (2, 9), (2, 11), (2, 15), (2, 17), (2, 21),
        (3, 2), (3, 4), (3, 5), (3, 7), (3, 8), (3, 10), (3, 13),
        (5, 2), (5, 3), (5, 4), (5, 6),
        (7, 3),
    ];
    for (p, ell) in cases {
        let lattice = CycloLattice::new(prime(p));
        let f1 = random_irreducible(prime(p), ell, 1).map_err(err)?;
        let mut f2 = f1.clone();
        for seed in 2..64 {
            f2 = random_irreducible(prime(p), ell, seed).map_err(err)?;
            if f2 != f1 {
                break;
            }
        }
        if f1 == f2 {
            return Err(format!("p={p} l={ell}: no second defining polynomial found"));
        }
        let a = decorate(&lattice, ell, Some(f1)).map_err(err)?;
        let b = decorate(&lattice, ell, Some(f2)).map_err(err)?;
        if a.standard_poly() != b.standard_poly() {
            return Err(format!("p={p} l={ell}: {} vs {}", a.standard_poly(), b.standard_poly()));
        }
    }
    Ok(format!("{UNIQUENESS_PAIRS} (p, l) pairs, two defining polynomials each"))
}

fn level_equal_kappa() -> Outcome {
    let mut pairs = Vec::new();
    'outer: for p in [2u64, 3, 5] {
        let lattice = CycloLattice::new(prime(p));
        for m in 2..=60u64 {
            for ell in (1..m).filter(|l| m % l == 0) {
                if !valid_degree(p, m) || order_mod(p, ell).ok() != order_mod(p, m).ok() || order_mod(p, m).map_err(err)? > 12 {
                    continue;
                }
                let k = kappa_constant(&lattice, ell, m).map_err(err)?;
                if !k.is_one() {
                    return Err(format!("p={p} {ell}->{m}: kappa = {}", k.to_human()));
                }
                pairs.push(format!("{p}:{ell}->{m}"));
                if pairs.len() == LEVEL_EQUAL_PAIRS {
                    break 'outer;
                }
            }
        }
    }
    if pairs.len() < LEVEL_EQUAL_PAIRS {
        return Err(format!("only {} pairs found", pairs.len()));
    }
    Ok(format!("kappa = 1 on {}", pairs.join(" ")))
}

fn key_identity() -> Outcome {
    let start = Instant::now();
    for (p, a, b) in [(2u64, 1u32, 2u32), (2, 2, 4), (3, 1, 2), (5, 1, 2)] {
        let ok = verify_key_identity(&CycloLattice::new(prime(p)), a, b, KEY_IDENTITY_DIMENSION_BOUND).map_err(err)?;
        if !ok {
            return Err(format!("identity fails for p={p} a={a} b={b}"));
        }
    }
    let t = within(start, KEY_IDENTITY_LIMIT, "key identity")?;
    Ok(format!("4 cases in {t:.2}s (limit {}s)", KEY_IDENTITY_LIMIT.as_secs()))
}

fn random_elem(field: &std::sync::Arc<ExtField>, rng: &mut ChaCha8Rng) -> FFElem {
    let p = field.characteristic().get();
    FFElem::from_coords(field, &(0..field.degree()).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>()).unwrap()
}

fn homomorphism(lattices: &[StdLattice]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut embeddings = 0;
    let mut rejected = 0;
    for lat in lattices {
        for (l, m) in lat.cached_pairs() {
            let e = lat.get_embedding(l, m).map_err(err)?;
            let (src, dst) = (lat.field(l).map_err(err)?, lat.field(m).map_err(err)?);
            for _ in 0..HOMOMORPHISM_SAMPLES {
                let (x, y) = (random_elem(src.field(), &mut rng), random_elem(src.field(), &mut rng));
                let (fx, fy) = (e.eval(&x).map_err(err)?, e.eval(&y).map_err(err)?);
                if e.eval(&(&x + &y)).map_err(err)? != &fx + &fy || e.eval(&(&x * &y)).map_err(err)? != &fx * &fy {
                    return Err(format!("p={} {l}->{m}: not a homomorphism", lat.characteristic()));
                }
                if e.section(&fx).map_err(err)? != x {
                    return Err(format!("p={} {l}->{m}: section round trip fails", lat.characteristic()));
                }
            }
            if l < m {
                let mut found = 0;
                while found < NON_SUBFIELD_SAMPLES {
                    let y = random_elem(dst.field(), &mut rng);
                    let deg = y.minimal_polynomial().degree().unwrap();
                    if l % deg == 0 {
                        continue;
                    }
                    match e.section(&y) {
                        Err(Error::NotInImage) => found += 1,
                        other => return Err(format!("p={} {l}->{m}: non-subfield element gave {other:?}", lat.characteristic())),
                    }
                }
                rejected += found;
            }
            embeddings += 1;
        }
    }
    Ok(format!("{embeddings} embeddings x {HOMOMORPHISM_SAMPLES} pairs, {rejected} non-subfield elements rejected"))
}

fn conway_search() -> Outcome {
    for (p, max) in [(2u64, 8u32), (3, 6)] {
        let builtin = ConwayTable::builtin(prime(p));
        let mut fresh = ConwayTable::empty(prime(p));
        for a in 1..=max {
            let got = fresh.lookup_or_search(a, SearchMode::Conway, DEFAULT_WORK_BOUND).map_err(err)?;
            if Some(&got) != builtin.get(a) {
                return Err(format!("p={p} a={a}: search gave {got}"));
            }
        }
    }
    Ok("p=2 a<=8 and p=3 a<=6 match the embedded table".into())
}

fn bench_p3() -> Outcome {
    let lat = StdLattice::new(prime(3));
    let degrees = bench::table_degrees(&lat, BENCH_MAX);
    let rows = bench::run(&lat, &degrees, |_| {}).map_err(err)?;
    let slowest = rows.iter().max_by(|a, b| a.decorate_seconds.total_cmp(&b.decorate_seconds)).unwrap();
    let total: f64 = rows.iter().map(|r| r.decorate_seconds + r.embed_seconds).sum();
    Ok(format!(
        "{} rows for p=3, l <= {BENCH_MAX}; total {total:.2}s, slowest decoration l={} ({:.3}s); trend is report-only",
        rows.len(),
        slowest.ell,
        slowest.decorate_seconds
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, outcome: Outcome| {
        match &outcome {
            Ok(msg) => println!("PASS {n} {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n} {name}: {msg}");
            }
        }
    };
    report(1, "table-one", table_one());
    report(2, "standardness", standardness());
    let lattices = build_triangle_lattices();
    let (lattices, c3) = match lattices {
        Ok((l, n, t)) => (l, Ok(format!("{n} triangles over p in {{2,3,5}}, degrees <= {TRIANGLE_MAX}, {t:.1}s (limit {}s)", TRIANGLE_LIMIT.as_secs()))),
        Err(e) => (Vec::new(), Err(e)),
    };
    let built = c3.is_ok();
    report(3, "triangles", c3);
    report(4, "uniqueness", uniqueness());
    report(5, "level-equal-kappa", level_equal_kappa());
    report(6, "key-identity", key_identity());
    report(7, "homomorphism-section", if built { homomorphism(&lattices) } else { Err("no lattices from criterion 3".into()) });
    report(8, "conway-search", conway_search());
    report(9, "bench", bench_p3());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
