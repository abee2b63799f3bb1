use super::*;
use crate::arith::Prime;

fn lat(p: u64) -> CycloLattice {
    CycloLattice::new(Prime::new(p).unwrap())
}

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

#[test]
fn first_standard_polynomials_over_f2() {
    let lattice = lat(2);
    for (i, want) in TABLE_ONE.iter().enumerate() {
        let ell = 2 * i + 1;
        let d = decorate(&lattice, ell, None).unwrap();
        assert_eq!(d.standard_poly().to_human(), *want, "l={ell}");
    }
}

#[test]
fn quadratic_over_f3_by_enumeration() {
    // A_2 = F_9 (x) F_3: solutions of sigma(x) = -x with x^2 = abar_2 = 2,
    // found by enumerating F_9.
    let lattice = lat(3);
    assert_eq!(lattice.standard_constant(2).unwrap(), FFElem::from_u64(&lattice.conway_field(1).unwrap(), 2));
    let f9 = ExtField::new(FpPoly::new(Prime::new(3).unwrap(), vec![2, 2, 1])).unwrap();
    let mut polys = Vec::new();
    for c0 in 0..3 {
        for c1 in 0..3 {
            let x = FFElem::from_coords(&f9, &[c0, c1]).unwrap();
            if x.frobenius(1) == -&x && &x * &x == FFElem::from_u64(&f9, 2) {
                polys.push(x.minimal_polynomial().to_human());
            }
        }
    }
    assert_eq!(polys, ["x^2+1", "x^2+1"]);
    let d = decorate(&lattice, 2, Some(f9.modulus().clone())).unwrap();
    assert_eq!(d.standard_poly().to_human(), "x^2+1");
}

#[test]
fn degree_one() {
    for p in [2u64, 3, 5, 7] {
        let lattice = lat(p);
        let d = decorate(&lattice, 1, None).unwrap();
        // P_1 = x - zeta_{p-1}.
        let z = lattice.conway(1).unwrap();
        assert_eq!(d.standard_poly(), &z);
    }
}

#[test]
fn standardness() {
    for (p, degrees) in [(2u64, vec![1usize, 3, 5, 7, 9, 15, 21]), (3, vec![1, 2, 4, 5, 8, 10, 13]), (5, vec![1, 2, 3, 4, 6, 12])] {
        let lattice = lat(p);
        for ell in degrees {
            let d = decorate(&lattice, ell, None).unwrap();
            let alpha = d.alpha().unwrap();
            assert!(alpha.satisfies_h90(1), "p={p} l={ell}");
            assert_eq!(alpha.kummer_constant().unwrap(), lattice.standard_constant(ell as u64).unwrap());
            assert_eq!(d.clone().forget_alpha().alpha().unwrap(), alpha);
        }
    }
}

#[test]
fn polynomial_independent_of_defining_polynomial() {
    for (p, ell) in [(2u64, 9usize), (3, 7), (5, 6), (7, 5), (2, 21)] {
        let lattice = lat(p);
        let prime = Prime::new(p).unwrap();
        let polys: Vec<FpPoly> = (1..4)
            .map(|seed| {
                let f = random_irreducible(prime, ell, seed).unwrap();
                decorate(&lattice, ell, Some(f)).unwrap().standard_poly().clone()
            })
            .collect();
        assert!(polys.windows(2).all(|w| w[0] == w[1]), "p={p} l={ell}");
    }
}

#[test]
fn bad_degrees() {
    let lattice = lat(3);
    assert!(matches!(decorate(&lattice, 6, None), Err(Error::DegreeDivisibleByP { ell: 6, p: 3 })));
    assert!(decorate(&lattice, 0, None).is_err());
    let f = FpPoly::new(Prime::new(3).unwrap(), vec![1, 0, 1]);
    assert!(matches!(decorate(&lattice, 4, Some(f)), Err(Error::Dimension(_))));
}

/// `-E / ((p^a-1) l) mod (p^b-1)` in plain machine integers.
fn oracle_exponent(p: i128, ell: i128, a: u32, b: u32) -> i128 {
    let e = (b - a) as i128 * p.pow(a + b) - b as i128 * p.pow(b) + a as i128 * p.pow(a);
    let den = (p.pow(a) - 1) * ell;
    assert_eq!(e % den, 0);
    (-e / den).rem_euclid(p.pow(b) - 1)
}

#[test]
fn kappa_exponents() {
    let lattice = lat(2);
    assert_eq!(kappa_exponent(&lattice, 3, 15).unwrap(), 7);
    assert_eq!(kappa_constant(&lattice, 3, 15).unwrap(), FFElem::generator(&lattice.conway_field(4).unwrap()).pow_u128(7));
    for (p, pairs) in [(2i128, vec![(1u64, 3u64), (3, 9), (5, 15), (3, 21), (7, 21), (1, 63), (5, 255)]), (3, vec![(2, 4), (4, 8), (2, 16), (5, 10), (8, 80)]), (5, vec![(2, 4), (3, 6), (4, 12)])] {
        let lattice = lat(p as u64);
        for (ell, m) in pairs {
            let (a, b) = (lattice.level(ell).unwrap(), lattice.level(m).unwrap());
            assert_eq!(kappa_exponent(&lattice, ell, m).unwrap() as i128, oracle_exponent(p, ell as i128, a, b), "p={p} {ell}->{m}");
        }
    }
    assert!(kappa_exponent(&lattice, 3, 5).is_err());
}

#[test]
fn kappa_trivial_on_equal_levels() {
    let lattice = lat(2);
    for (ell, m) in [(3u64, 3u64), (5, 15), (7, 7), (9, 63), (21, 63), (17, 51), (13, 65), (11, 33)] {
        assert!(kappa_constant(&lattice, ell, m).unwrap().is_one(), "{ell}->{m}");
    }
}

#[test]
fn embeddings_preserve_polynomials() {
    for (p, pairs) in [(2u64, vec![(1usize, 3usize), (3, 15), (5, 15), (3, 9), (1, 7), (7, 21)]), (3, vec![(2, 4), (4, 8), (1, 5), (2, 10)]), (5, vec![(2, 4), (3, 6)])] {
        let lattice = lat(p);
        for (ell, m) in pairs {
            let src = decorate(&lattice, ell, None).unwrap();
            let dst = decorate(&lattice, m, None).unwrap().forget_alpha();
            let e = standard_embed(&src, &dst, &lattice).unwrap();
            assert_eq!(e.s_image.minimal_polynomial(), *src.standard_poly());
            let (s, t) = allombert_embed(src.field(), dst.field(), &lattice).unwrap();
            assert_eq!(s.minimal_polynomial(), t.minimal_polynomial(), "p={p} {ell}->{m}");
            assert_eq!(s.minimal_polynomial().degree(), Some(ell));
        }
    }
}

#[test]
fn identity_embedding() {
    let lattice = lat(2);
    let d = decorate(&lattice, 15, None).unwrap();
    let e = standard_embed(&d, &d, &lattice).unwrap();
    assert_eq!(&e.s_image, d.generator());
    assert!(e.kappa.is_one());
}

#[test]
fn equal_levels_are_power_compatible() {
    let lattice = lat(2);
    let (src, dst) = (decorate(&lattice, 5, None).unwrap(), decorate(&lattice, 15, None).unwrap());
    let tr = standard_embed_traced(&src, &dst, &lattice, ProjectMethod::Linear).unwrap();
    assert!(tr.desc.kappa.is_one());
    assert_eq!(tr.hat_alpha, dst.alpha().unwrap().pow_u128(3));
}

#[test]
fn projection_methods_give_same_embedding() {
    let lattice = lat(3);
    let (src, dst) = (decorate(&lattice, 4, None).unwrap(), decorate(&lattice, 16, None).unwrap());
    let lin = standard_embed_traced(&src, &dst, &lattice, ProjectMethod::Linear).unwrap();
    let tr = standard_embed_traced(&src, &dst, &lattice, ProjectMethod::Trace).unwrap();
    assert_eq!(lin.desc, tr.desc);
}

#[test]
fn embedding_rejects_bad_input() {
    let lattice = lat(2);
    let (a, b) = (decorate(&lattice, 3, None).unwrap(), decorate(&lattice, 5, None).unwrap());
    assert!(matches!(standard_embed(&a, &b, &lattice), Err(Error::NotDivisible(3, 5))));
    let other = CycloLattice::with_table(
        crate::cyclo::ConwayTable::empty(Prime::new(2).unwrap()),
        crate::cyclo::SearchMode::Pseudo { seed: 5 },
        crate::cyclo::DEFAULT_WORK_BOUND,
    );
    let c = decorate(&lattice, 15, None).unwrap();
    // Pseudo-Conway degree 4 differs from the Conway entry for this seed,
    // or the check passes trivially when they coincide.
    if other.conway(4).unwrap() != lattice.conway(4).unwrap() {
        assert!(matches!(standard_embed(&a, &c, &other), Err(Error::AlgebraMismatch)));
    }
}

#[test]
fn from_parts_validates() {
    let lattice = lat(5);
    let d = decorate(&lattice, 3, None).unwrap();
    let back = DecoratedField::from_parts(&lattice, d.field().clone(), d.generator().clone(), d.standard_poly().clone()).unwrap();
    assert_eq!(back.generator(), d.generator());
    assert!(!back.has_cached_alpha());
    // A conjugate of s_l is standard as well.
    let conj = d.generator().frobenius(1);
    assert!(DecoratedField::from_parts(&lattice, d.field().clone(), conj, d.standard_poly().clone()).is_ok());
    // 2 s_l belongs to a solution with constant 8 abar.
    let twice = d.generator().scale(2);
    let poly = twice.minimal_polynomial();
    assert!(matches!(DecoratedField::from_parts(&lattice, d.field().clone(), twice, poly), Err(Error::Invariant(_))));
}

#[test]
fn key_identity() {
    for (p, a, b) in [(2u64, 1u32, 2u32), (2, 2, 4), (3, 1, 2), (5, 1, 2), (2, 2, 2), (2, 1, 3)] {
        assert!(verify_key_identity(&lat(p), a, b, KEY_IDENTITY_DIMENSION_BOUND).unwrap(), "p={p} a={a} b={b}");
    }
    assert!(matches!(verify_key_identity(&lat(2), 1, 10, KEY_IDENTITY_DIMENSION_BOUND), Err(Error::ResourceBound(_))));
}
