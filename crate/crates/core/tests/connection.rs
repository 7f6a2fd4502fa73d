mod common;

use std::collections::HashMap;

use common::*;
use hsx_core::connection::*;
use hsx_core::hypersymplectic::{assemble_triple, metric};
use hsx_core::structures::Endo;
use hsx_core::{CoreError, LieAlgebra, Scalar, Vector};
use hsx_exact::{Matrix, Rational, Var};
use proptest::prelude::*;

fn table(values: &[(usize, usize, &[(usize, &str)])]) -> Vec<(usize, usize, Vector)> {
    values.iter().map(|(i, j, v)| (i - 1, j - 1, vecs(8, v))).collect()
}

fn hat_table() -> Vec<(usize, usize, Vector)> {
    table(&[
        (1, 1, &[(3, "(c+1)/c")]),
        (1, 2, &[(4, "-1")]),
        (1, 3, &[(5, "c")]),
        (1, 4, &[(6, "-1")]),
        (1, 5, &[(7, "-1/(2*c+3)")]),
        (1, 6, &[(8, "-1")]),
        (3, 1, &[(5, "c+1")]),
        (3, 2, &[(6, "1")]),
        (3, 3, &[(7, "c/(2*c+3)")]),
        (3, 4, &[(8, "-1")]),
        (5, 1, &[(7, "(2*c+2)/(2*c+3)")]),
        (5, 2, &[(8, "2")]),
    ])
}

fn nonflat_table() -> Vec<(usize, usize, Vector)> {
    table(&[
        (1, 1, &[(3, "(c+1)/c"), (6, "(c+1)^2/c^3"), (7, "-(c+1)^2/(c^3*(2*c+3))")]),
        (1, 2, &[(4, "-1"), (5, "-(c+1)/c"), (8, "-(c+1)/c^3")]),
        (1, 3, &[(5, "c"), (8, "(c+1)/c^2")]),
        (1, 4, &[(6, "-1"), (7, "(c+1)/(c*(2*c+3))")]),
        (1, 5, &[(7, "-1/(2*c+3)")]),
        (1, 6, &[(8, "-1")]),
        (2, 1, &[(5, "-(c+1)/c"), (8, "-(c+1)/c^3")]),
        (2, 2, &[(6, "-1/c"), (7, "1/(c*(2*c+3))")]),
        (2, 3, &[(7, "-1/(2*c+3)")]),
        (2, 4, &[(8, "1/c")]),
        (3, 1, &[(5, "c+1"), (8, "(c+1)/c^2")]),
        (3, 2, &[(6, "1"), (7, "-1/(2*c+3)")]),
        (3, 3, &[(7, "c/(2*c+3)")]),
        (3, 4, &[(8, "-1")]),
        (4, 1, &[(7, "(c+1)/(c*(2*c+3))")]),
        (4, 2, &[(8, "1/c")]),
        (5, 1, &[(7, "(2*c+2)/(2*c+3)")]),
        (5, 2, &[(8, "2")]),
    ])
}

fn hat_connection() -> ConnectionTable {
    koszul(&h(), &metric(&j_c(), &hat_pk())).unwrap()
}

fn nonflat_connection() -> ConnectionTable {
    koszul(&h(), &metric(&j_c(), &nonflat_pk())).unwrap()
}

#[test]
fn flat_table_reproduced() {
    assert_eq!(hat_connection().nonzero(), hat_table());
}

#[test]
fn nonflat_table_reproduced() {
    assert_eq!(nonflat_connection().nonzero(), nonflat_table());
}

#[test]
fn abelian_connection_vanishes() {
    let g = LieAlgebra::abelian(4);
    let m = form(4, &[(1, 2, "1"), (3, 4, "1")]);
    let sym = m.transpose().dot(&m);
    assert_eq!(koszul(&g, &sym).unwrap(), ConnectionTable::zero(4));
    assert!(curvature(&ConnectionTable::zero(4), &g).is_zero());
    assert!(ricci(&curvature(&ConnectionTable::zero(4), &g)).is_zero());
}

#[test]
fn degenerate_metric_rejected() {
    let g = LieAlgebra::abelian(2);
    let m = Matrix::from_fn(2, 2, |i, j| if i == 0 && j == 0 { Scalar::one() } else { Scalar::zero() });
    assert!(matches!(koszul(&g, &m), Err(CoreError::Precondition(_))));
}

#[test]
fn flat_and_nonflat_curvature() {
    let hat = curvature(&hat_connection(), &h());
    assert!(hat.is_zero());
    let r = curvature(&nonflat_connection(), &h());
    assert!(!r.is_zero());
    assert_eq!(r.apply(0, 1, 0), vecs(8, &[(7, "3*(c+1)/(c*(2*c+3))")]));
    assert_eq!(r.apply(0, 1, 1), vecs(8, &[(8, "3/c")]));
    assert!(r.is_antisymmetric());
    assert!(r.satisfies_bianchi());
    assert!(ricci(&r).is_zero());
}

#[test]
fn triple_tensors_are_parallel() {
    for (pk, conn) in [(hat_pk(), hat_connection()), (nonflat_pk(), nonflat_connection())] {
        let t = assemble_triple(&h(), &j_c(), &pk, &hat_cs(), &[]).unwrap();
        assert!(is_parallel_endo(&conn, &t.j));
        assert!(is_parallel_endo(&conn, &t.e));
        for w in [&t.omega1, &t.omega2, &t.omega3] {
            assert!(is_parallel_form(&conn, w));
        }
        assert!(is_parallel(&conn, &Tensor::Form(hat_cs())));
    }
}

#[test]
fn nonparallel_tensor_detected() {
    let conn = hat_connection();
    let a = Endo::from_fn(8, 8, |i, j| if i == 0 && j == 0 { Scalar::one() } else { Scalar::zero() });
    assert!(!is_parallel_endo(&conn, &a));
    let d = covariant_derivative_endo(&conn, &a);
    assert!(!d[0].is_zero());
}

#[test]
fn segal_criterion() {
    assert!(segal_complete(&hat_connection(), &h()).unwrap());
    assert!(segal_complete(&ConnectionTable::zero(3), &LieAlgebra::abelian(3)).unwrap());
    let synthetic = ConnectionTable::from_values(2, &[(0, 0, vec![Scalar::one(), Scalar::zero()])]).unwrap();
    assert!(is_flat(&synthetic, &LieAlgebra::abelian(2)));
    assert!(!segal_complete(&synthetic, &LieAlgebra::abelian(2)).unwrap());
    assert!(matches!(segal_complete(&nonflat_connection(), &h()), Err(CoreError::Precondition(_))));
}

fn geodesic_system_printed() -> Vec<&'static str> {
    vec![
        "0",
        "0",
        "-(c+1)/c*x1^2",
        "x1*x2",
        "2*(c+1)/c*x1*x2-(2*c+1)*x1*x3",
        "-(c+1)^2/c^3*x1^2+1/c*x2^2+x1*x4-x2*x3",
        "((c+1)^2*x1^2-c^2*x2^2-c^4*x3^2)/(c^3*(2*c+3))-2*(c+1)/(c*(2*c+3))*x1*x4-(2*c+1)/(2*c+3)*x1*x5+2/(2*c+3)*x2*x3",
        "2*(c+1)/c^3*x1*x2-2*(c+1)/c^2*x1*x3-2/c*x2*x4+x1*x6+x3*x4-2*x2*x5",
    ]
}

#[test]
fn geodesic_system_matches() {
    let sys = geodesic_ode(&nonflat_connection());
    for (k, printed) in geodesic_system_printed().into_iter().enumerate() {
        assert_eq!(sys.rhs[k], q(printed), "x{}'", k + 1);
    }
    assert!(sys.is_triangular());
}

#[test]
fn geodesics_are_polynomial() {
    let t = Var::new("t");
    let sol = polynomial_solve(&geodesic_ode(&nonflat_connection()), t).unwrap();
    assert_eq!(sol[0], q("x1_0"));
    assert_eq!(sol[2], q("x3_0-(c+1)/c*x1_0^2*t"));
    for s in &sol {
        assert!(s.denom().vars().iter().all(|v| v.name() == "c"));
    }
    let flat = polynomial_solve(&geodesic_ode(&hat_connection()), t).unwrap();
    assert_eq!(flat.len(), 8);
    let zero = polynomial_solve(&geodesic_ode(&ConnectionTable::zero(3)), t).unwrap();
    assert_eq!(zero, vec![q("x1_0"), q("x2_0"), q("x3_0")]);
}

#[test]
fn cyclic_systems_are_refused() {
    let t = Var::new("t");
    let sys = OdeSystem {
        vars: generic_vector(2, "x"),
        rhs: vec![q("x2"), q("x1")],
    };
    assert!(matches!(polynomial_solve(&sys, t), Err(CoreError::Unsolvable(_))));
    let own = OdeSystem {
        vars: generic_vector(1, "x"),
        rhs: vec![q("x1^2")],
    };
    assert!(matches!(polynomial_solve(&own, t), Err(CoreError::Unsolvable(_))));
    // triangular after reordering
    let perm = OdeSystem {
        vars: generic_vector(2, "x"),
        rhs: vec![q("x2^2"), q("0")],
    };
    assert!(!perm.is_triangular());
    assert_eq!(polynomial_solve(&perm, t).unwrap()[0], q("x1_0+x2_0^2*t"));
}

#[test]
fn report_shapes() {
    let r = connection_report(&h(), &metric(&j_c(), &hat_pk()), &[("E", Tensor::Endo(j_c()))]).unwrap();
    assert_eq!(r["flat"], true);
    assert_eq!(r["ricci_flat"], true);
    assert_eq!(r["completeness"]["criterion"], "segal");
    assert_eq!(r["completeness"]["verdict"], true);
    assert_eq!(r["parallel_tensors"]["E"], true);
    assert_eq!(r["connection_table"].as_array().unwrap().len(), 12);
    let n = connection_report(&h(), &metric(&j_c(), &nonflat_pk()), &[]).unwrap();
    assert_eq!(n["flat"], false);
    assert_eq!(n["ricci_flat"], true);
    assert_eq!(n["completeness"]["criterion"], "polynomial_geodesics");
    assert_eq!(n["completeness"]["verdict"], true);
}

fn permuted(g: &LieAlgebra, m: &Matrix<Scalar>, p: &[usize]) -> (LieAlgebra, Matrix<Scalar>) {
    let n = g.dim();
    let mut consts = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let c = g.c(p[k], p[i], p[j]);
                if !c.is_zero() {
                    consts.push((k, i, j, c));
                }
            }
        }
    }
    let g2 = LieAlgebra::from_constants(n, consts).unwrap();
    (g2, Matrix::from_fn(n, n, |a, b| m[(p[a], p[b])].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn segal_verdict_is_basis_independent(p in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(), c in 1i64..5) {
        let b = HashMap::from([(Var::new("c"), Rational::from_int(c))]);
        let m = metric(&j_c(), &hat_pk()).map(|x| x.eval(&b).unwrap());
        let (g2, m2) = permuted(&h(), &m, &p);
        let conn = koszul(&g2, &m2).unwrap();
        prop_assert!(conn.is_torsion_free(&g2) && conn.is_metric(&m2));
        prop_assert_eq!(segal_complete(&conn, &g2), Ok(true));
    }

    #[test]
    fn nonflat_curvature_identities_at_samples(n in 1i64..9, d in 1i64..5) {
        let b = HashMap::from([(Var::new("c"), Rational::frac(n, d))]);
        let conn = eval_connection(&nonflat_connection(), &b).unwrap();
        let r = curvature(&conn, &h());
        prop_assert!(r.is_antisymmetric() && r.satisfies_bianchi());
        prop_assert!(ricci(&r).is_zero());
    }
}
