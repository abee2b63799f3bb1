use fflattice_web::{embed_text, standard_polys_text, verify_text, MAX_DEGREE};

#[test]
fn standard_polynomials_listing() {
    let out = standard_polys_text(2, 7).unwrap();
    assert_eq!(out, "1: x+1\n3: x^3+x+1\n5: x^5+x^3+1\n7: x^7+x+1\n");
}

#[test]
fn embedding_report() {
    let out = embed_text(2, 3, 15).unwrap();
    assert!(out.starts_with("P_3 = x^3+x+1\nP_15 = x^15+x+1\n"));
    assert!(out.ends_with("minimal polynomial of t: x^3+x+1 (ok)\n"));
    assert!(embed_text(2, 3, 10).is_err());
    assert!(embed_text(2, 3, 5).is_err());
}

#[test]
fn triangle_report() {
    let out = verify_text(3, 8).unwrap();
    assert!(out.ends_with("triangles, 0 failed\n"), "{out}");
    assert!(out.contains("1 | 2 | 4: ok"));
}

#[test]
fn limits() {
    assert!(standard_polys_text(2, MAX_DEGREE + 1).is_err());
    assert!(standard_polys_text(4, 5).is_err());
}
