//! The shipped fixture corpus parses and validates.

use std::path::{Path, PathBuf};
use symcoh::schema::{crossed_extension_from_file, group_from_spec, module_from_spec};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/v1")
}

#[test]
fn all_group_fixtures_validate() {
    let expected = [
        ("z2.json", 2),
        ("z3.json", 3),
        ("z4.json", 4),
        ("z5.json", 5),
        ("z9.json", 9),
        ("z2xz2.json", 4),
        ("z3xz3.json", 9),
        ("s3.json", 6),
    ];
    for (file, order) in expected {
        let g = group_from_spec(file, &fixture_dir()).unwrap_or_else(|e| panic!("{file}: {e}"));
        assert_eq!(g.order(), order, "{file}");
    }
}

#[test]
fn s3_has_three_involutions() {
    let g = group_from_spec("s3.json", &fixture_dir()).unwrap();
    let selfinv = g.elements().filter(|&x| x != 0 && g.inv(x) == x).count();
    assert_eq!(selfinv, 3);
    // And elements of order 3 exist (it is not abelian).
    assert!(g.elements().any(|x| g.element_order(x) == 3));
    assert!(g.elements().any(|a| g.elements().any(|b| g.mul(a, b) != g.mul(b, a))));
}

#[test]
fn sign_module_fixtures_validate() {
    let dir = fixture_dir();
    let s3 = group_from_spec("s3.json", &dir).unwrap();
    let m = module_from_spec("s3_sign3.json", s3, &dir).unwrap();
    assert_eq!(m.exponents(), &[3]);
    assert!(!m.is_trivial_action());

    let klein = group_from_spec("z2xz2.json", &dir).unwrap();
    let m = module_from_spec("z2xz2_sign3.json", klein, &dir).unwrap();
    assert_eq!(m.action_matrix(2), &[2]);
}

#[test]
fn crossed_extension_fixtures_validate() {
    let dir = fixture_dir();
    for (file, g_order) in [
        ("x9.json", 3),
        ("x9_twisted.json", 3),
        ("x25.json", 5),
        ("x4.json", 2),
        ("xtrivial_z3.json", 3),
        ("xtrivial_z5.json", 5),
        ("x_sign3_z2.json", 2),
    ] {
        let xe = crossed_extension_from_file(&dir.join(file))
            .unwrap_or_else(|e| panic!("{file}: {e}"));
        assert_eq!(xe.group().order(), g_order, "{file}");
    }
}
