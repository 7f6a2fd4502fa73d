mod common;

use std::collections::HashMap;

use common::*;
use hsx_core::hypersymplectic::*;
use hsx_core::salamon::parse_salamon;
use hsx_core::structures::{is_closed, pullback, two_form, Endo};
use hsx_core::{LieAlgebra, Scalar};
use hsx_exact::linalg::invert;
use hsx_exact::{Matrix, Rational, Var};
use proptest::prelude::*;

fn at_c(values: &[&str]) -> Vec<Bindings> {
    values
        .iter()
        .map(|v| HashMap::from([(Var::new("c"), v.parse::<Rational>().unwrap())]))
        .collect()
}

#[test]
fn hat_recursion_operator_is_a_product_structure() {
    let e = build_e(&hat_pk(), &hat_cs()).unwrap();
    assert_eq!(almost_product_test(&e), AlmostProduct::Yes);
    // ω_pK(EX, ·) = ω_cs(X, ·)
    assert_eq!(e.transpose().dot(&hat_pk()), hat_cs().neg().transpose());
    assert!(verify_anticommutation(&j_c(), &e, &hat_pk(), &hat_cs()).unwrap());
}

#[test]
fn hat_triple_assembles() {
    let t = assemble_triple(&h(), &j_c(), &hat_pk(), &hat_cs(), &at_c(&["1", "2", "1/3"])).unwrap();
    assert_eq!(t.omega1, hat_pk());
    assert_eq!(t.omega3, hat_cs());
    assert!(is_closed(&h(), &t.omega2));
    assert_eq!(t.signatures.len(), 3);
    assert!(t.signatures.iter().all(|(_, s)| *s == (4, 4)));
    let l = verify_e_identities(&t.j, &t.e, &t.metric, &hat_cs());
    assert!(l.first && l.second && l.consistent());
}

#[test]
fn nonflat_triple_assembles() {
    let t = assemble_triple(&h(), &j_c(), &nonflat_pk(), &hat_cs(), &at_c(&["1", "3/2"])).unwrap();
    assert!(t.e.dot(&t.e).is_identity());
    let s = splitting(&h(), &nonflat_pk(), &hat_cs(), &t.e).unwrap();
    assert!(s.all_ok(8));
}

#[test]
fn splitting_of_the_flat_triple() {
    let e = build_e(&hat_pk(), &hat_cs()).unwrap();
    let s = splitting(&h(), &hat_pk(), &hat_cs(), &e).unwrap();
    assert_eq!(s.dims(), (4, 4));
    assert_eq!(s.kernels_agree, (true, true));
    assert_eq!(s.subalgebra, (true, true));
    assert_eq!(s.restricted_nondegenerate, (true, true));
}

#[test]
fn example_with_kodaira_algebra() {
    let g = parse_salamon("(0^4,12,14+23)").unwrap().direct_sum(&LieAlgebra::abelian(2));
    let j = jmap(8, &[(1, &[(2, "1")]), (3, &[(4, "-1")]), (5, &[(7, "2")]), (6, &[(8, "-1")])]);
    let a = Var::new;
    let p = |n: &str| Scalar::var(a(n));
    let two = q("2");
    let terms = |sign: i64| -> Vec<(usize, usize, Scalar)> {
        let s = Scalar::from_int(sign);
        let mut t = vec![
            (0, 2, p("a13")),
            (1, 3, &s * &p("a13")),
            (0, 4, &two * &p("a15")),
            (1, 6, -(&s * &p("a15"))),
            (0, 6, p("a17")),
            (1, 4, &(&s * &two) * &p("a17")),
            (0, 5, &two * &p("a16")),
            (1, 7, &(&s * &two) * &p("a16")),
            (2, 4, -(&two * &p("a16"))),
            (3, 6, -(&s * &p("a16"))),
            (0, 7, &two * &p("a18")),
            (1, 5, -(&(&s * &two) * &p("a18"))),
            (2, 6, p("a18")),
            (3, 4, -(&(&s * &two) * &p("a18"))),
        ];
        // the skew family carries the extra b12, b34 terms
        if sign < 0 {
            t.push((0, 1, p("b12")));
            t.push((2, 3, p("b34")));
        }
        t
    };
    let cs = two_form(8, &terms(1));
    let pk = two_form(8, &terms(-1));
    let e = build_e(&pk, &cs).unwrap();
    assert_eq!(almost_product_test(&e), AlmostProduct::Yes);
    let sample: Bindings = [("a13", 1), ("a15", -2), ("a16", 1), ("a17", 3), ("a18", 2), ("b12", 5), ("b34", -1)]
        .into_iter()
        .map(|(n, v)| (a(n), Rational::from_int(v)))
        .collect();
    let t = assemble_triple(&g, &j, &pk, &cs, &[sample]).unwrap();
    assert_eq!(t.signatures[0].1, (4, 4));
}

fn example_49() -> (LieAlgebra, Endo) {
    let g = parse_salamon("(0^3,12,13+24,14-23,15+26,16+7·25+8·34)").unwrap();
    let j = jmap(8, &[(1, &[(2, "1")]), (3, &[(4, "-3")]), (5, &[(6, "-1")]), (7, &[(8, "3")])]);
    (g, j)
}

#[test]
fn example_never_product_diagonal_entries() {
    let (g, j) = example_49();
    let cs = form(
        8,
        &[
            (1, 7, "3*a17"),
            (2, 8, "-a17"),
            (3, 5, "-12*a17"),
            (4, 6, "4*a17"),
            (1, 8, "a18"),
            (2, 7, "3*a18"),
            (3, 6, "12*a18"),
            (4, 5, "4*a18"),
        ],
    );
    let pk = form(8, &[(1, 7, "3*b17"), (2, 8, "b17"), (3, 5, "6*b17"), (4, 6, "2*b17")]);
    assert!(is_closed(&g, &cs) && is_closed(&g, &pk));
    let e = build_e(&pk, &cs).unwrap();
    let sq = e.dot(&e);
    assert_eq!(sq[(0, 0)], q("(a17^2+a18^2)/b17^2"));
    assert_eq!(sq[(2, 2)], q("4*(a17^2+a18^2)/b17^2"));
    match assemble_triple(&g, &j, &pk.map(|x| x.eval(&sample49()).unwrap()), &cs.map(|x| x.eval(&sample49()).unwrap()), &[]) {
        Err(HsError::NotAlmostProduct(w)) => {
            assert_eq!(w.failure, ProductFailure::SquareNotIdentity);
            // (E²)[1,1] = 1 at this point, so the first mismatch is (E²)[3,3] = 4
            assert_eq!((w.row, w.col), (3, 3));
            assert_eq!(w.value, q("4"));
        }
        other => panic!("{other:?}"),
    }
}

fn sample49() -> Bindings {
    [("a17", 1), ("a18", 0), ("b17", 1)]
        .into_iter()
        .map(|(n, v)| (Var::new(n), Rational::from_int(v)))
        .collect()
}

#[test]
fn failure_modes_are_classified() {
    let bad_j = Matrix::<Scalar>::identity(8);
    assert!(matches!(assemble_triple(&h(), &bad_j, &hat_pk(), &hat_cs(), &[]), Err(HsError::NotComplex(_))));
    match assemble_triple(&h(), &j_c(), &hat_pk(), &hat_pk(), &[]) {
        Err(HsError::Form(m)) => assert!(m.contains("symmetric")),
        other => panic!("{other:?}"),
    }
    let degenerate = form(8, &[(1, 7, "1")]);
    assert!(matches!(
        assemble_triple(&h(), &j_c(), &degenerate, &hat_cs(), &[]),
        Err(HsError::Form(_))
    ));
    assert!(verify_anticommutation(&j_c(), &Matrix::identity(8), &hat_cs(), &hat_cs()).is_err());
    let id = Matrix::<Scalar>::identity(4);
    match almost_product_test(&id) {
        AlmostProduct::No(w) => assert_eq!(w.failure, ProductFailure::EqualsIdentity),
        AlmostProduct::Yes => panic!(),
    }
}

#[test]
fn report_has_all_stages() {
    let r = engine_report(&h(), &j_c(), &hat_pk(), &hat_cs(), &at_c(&["1"]));
    assert_eq!(r["E_squared_ok"], true);
    assert_eq!(r["je_anticommute"], true);
    assert_eq!(r["triple_ok"], true);
    assert_eq!(r["splitting"]["dims"], serde_json::json!([4, 4]));
    let bad = engine_report(&h(), &j_c(), &hat_pk(), &hat_pk(), &[]);
    assert_eq!(bad["triple_ok"], false);
}

fn small_matrix() -> impl Strategy<Value = Matrix<Scalar>> {
    proptest::collection::vec(-3i64..=3, 16).prop_map(|v| {
        Matrix::from_fn(4, 4, |i, j| Scalar::from_int(v[4 * i + j] + if i == j { 7 } else { 0 }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recursion_operator_is_natural(phi in small_matrix(), a in 1i64..5, b in -4i64..4) {
        let pk = form(4, &[(1, 4, "1"), (2, 3, "1")]);
        let cs = two_form(4, &[(0, 1, Scalar::from_int(a)), (2, 3, Scalar::from_int(b)), (0, 2, Scalar::one())]);
        let inv = invert(&phi).unwrap();
        let e = build_e(&pk, &cs).unwrap();
        let e2 = build_e(&pullback(&phi, &pk).unwrap(), &pullback(&phi, &cs).unwrap()).unwrap();
        prop_assert_eq!(e2, inv.dot(&e).dot(&phi));
    }

    #[test]
    fn hat_metric_is_neutral(n in 1i64..40, d in 1i64..40) {
        let b = HashMap::from([(Var::new("c"), Rational::frac(n, d))]);
        let g = metric(&j_c(), &hat_pk());
        prop_assert_eq!(signature_at(&g, &b).unwrap(), (4, 4, 0));
    }
}
