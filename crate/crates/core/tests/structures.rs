use hsx_core::lie::unit;
use hsx_core::salamon::parse_salamon;
use hsx_core::structures::*;
use hsx_core::{CoreError, LieAlgebra, Scalar};
use hsx_exact::{Matrix, RatFun};
use proptest::prelude::*;

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn vecs(dim: usize, terms: &[(usize, &str)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    for (i, c) in terms {
        v[i - 1] = q(c);
    }
    v
}

/// J from images of basis vectors, 1-based: (i, [(k, coeff)]).
fn jmap(dim: usize, images: &[(usize, &[(usize, &str)])]) -> Endo {
    let data: Vec<(usize, Vec<Scalar>)> = images.iter().map(|(i, t)| (i - 1, vecs(dim, t))).collect();
    complex_structure_on_basis(dim, &data).unwrap()
}

fn form(dim: usize, terms: &[(usize, usize, &str)]) -> TwoForm {
    let t: Vec<(usize, usize, Scalar)> = terms.iter().map(|(i, j, c)| (i - 1, j - 1, q(c))).collect();
    two_form(dim, &t)
}

#[test]
fn nijenhuis_examples() {
    let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
    let j = jmap(4, &[(1, &[(2, "-1")]), (3, &[(4, "-1")])]);
    assert!(is_integrable(&rh3, &j).unwrap());
    let bad = endo_from_columns(&[vecs(4, &[(3, "1")]), vecs(4, &[(4, "1")]), vecs(4, &[(1, "-1")]), vecs(4, &[(2, "-1")])]);
    assert!(is_almost_complex(&bad));
    let n = nijenhuis(&rh3, &bad).unwrap();
    assert!(n[0][1].iter().any(|x| !x.is_zero()));
    assert_eq!(nijenhuis_witness(&rh3, &bad).unwrap().map(|w| (w.0, w.1)), Some((1, 2)));
}

#[test]
fn j_c_is_integrable_symbolically() {
    let h = parse_salamon("(0^3,12,13,14+23,15,16+2·25+34)").unwrap();
    let j = jmap(8, &[(1, &[(2, "(c+1)/c")]), (3, &[(4, "-1")]), (5, &[(6, "1/c")]), (7, &[(8, "(3+2*c)/c")])]);
    assert_eq!(j[(0, 1)], q("-c/(c+1)"));
    assert!(is_integrable(&h, &j).unwrap());
}

#[test]
fn completion_examples() {
    let j = jmap(4, &[(1, &[(2, "1")]), (3, &[(4, "1")])]);
    assert_eq!(j.column(1), vecs(4, &[(1, "-1")]));
    let e1 = unit(4, 0);
    match complete_complex_structure(4, &[(e1.clone(), e1.clone())]) {
        Err(CoreError::Inconsistent(_)) => {}
        other => panic!("{other:?}"),
    }
    match complete_complex_structure(4, &[(e1, unit(4, 1))]) {
        Err(CoreError::NonSpanning(_)) => {}
        other => panic!("{other:?}"),
    }
    let dup = [(unit(4, 0), unit(4, 1)), (unit(4, 1), unit(4, 0))];
    assert!(complete_complex_structure(4, &dup).is_err());
}

#[test]
fn closed_forms_examples() {
    let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
    let f = closed_two_forms(&rh3);
    assert_eq!(f.params, ["a12", "a13", "a14", "a23", "a24"]);
    let printed: Vec<TwoForm> = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
        .iter()
        .map(|&(i, j)| form(4, &[(i, j, "1")]))
        .collect();
    assert!(f.same_span(&printed));
    assert_eq!(closed_two_forms(&LieAlgebra::abelian(4)).len(), 6);
    let r4 = parse_salamon("(14,-24,-34,0)").unwrap();
    let f = closed_two_forms(&r4);
    assert_eq!(f.params, ["a12", "a13", "a14", "a24", "a34"]);
    for b in &f.basis {
        assert!(is_closed(&r4, b));
    }
}

#[test]
fn d4_lambda_side_condition() {
    let d4 = parse_salamon("((lambda)*14,(1-lambda)*24,-12+34,0)").unwrap();
    let all = closed_two_forms(&d4);
    assert_eq!(all.params, ["a12", "a13", "a14", "a23", "a24"]);
    assert_eq!(all.side_zero, vec![q("(lambda+1)*a13"), q("(lambda-2)*a23")]);
    // λ ≥ 1/2, so only the (λ-2) factor can vanish
    let lambda = hsx_exact::Var::new("lambda");
    let at2: std::collections::HashMap<_, _> = [(lambda, "2".parse().unwrap())].into_iter().collect();
    let f = all.drop_side_conditions(|eq| {
        eq.numer().eval_partial(&at2).is_zero()
    });
    assert_eq!(f.params, ["a12", "a14", "a23", "a24"]);
    assert_eq!(f.side_zero, vec![q("(lambda-2)*a23")]);
    assert_eq!(f.generic_basis().len(), 3);
    assert_eq!(f.basis[0], form(4, &[(1, 2, "1"), (3, 4, "-1")]));
}

#[test]
fn symmetric_families() {
    let r4 = parse_salamon("(14,-24,-34,0)").unwrap();
    let j = jmap(4, &[(1, &[(4, "-1")]), (2, &[(3, "1")])]);
    assert!(is_integrable(&r4, &j).unwrap());
    let sym = symmetry_constraint(&r4, &j, Symmetry::Symmetric);
    assert_eq!(sym.params, ["a12", "a13"]);
    assert!(sym.same_span(&[form(4, &[(1, 2, "1"), (3, 4, "-1")]), form(4, &[(1, 3, "1"), (2, 4, "1")])]));
    assert!(sym.generically_nondegenerate().unwrap());

    let rr30 = parse_salamon("(0,-12,0,0)").unwrap();
    let j = jmap(4, &[(1, &[(2, "1")]), (3, &[(4, "1")])]);
    let sym = symmetry_constraint(&rr30, &j, Symmetry::Symmetric);
    assert!(!sym.generically_nondegenerate().unwrap());
    assert!(hsx_exact::poly_identically_zero(sym.generic_pfaffian().unwrap().numer()));
}

#[test]
fn symplectic_examples() {
    let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
    assert!(is_symplectic(&rh3, &form(4, &[(1, 4, "1"), (2, 3, "1")])));
    assert!(!is_symplectic(&LieAlgebra::abelian(4), &form(4, &[(1, 2, "1")])));
    assert!(!is_symplectic(&rh3, &form(4, &[(3, 4, "1")])));
}

#[test]
fn generic_pfaffian_of_rh3_matches_table() {
    let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
    let pf = closed_two_forms(&rh3).generic_pfaffian().unwrap();
    assert_eq!(pf, q("a14*a23 - a13*a24"));
}

#[test]
fn pullback_by_rotation_on_r2_prime() {
    // ψ_{r,θ} with cos θ = s, sin θ = t on the circle s = (1-u²)/(1+u²), t = 2u/(1+u²)
    let g = parse_salamon("(0,0,-13+24,-14-23)").unwrap();
    let s = q("(1-u^2)/(1+u^2)");
    let t = q("2*u/(1+u^2)");
    let r = q("r");
    let z = Scalar::zero();
    let one = Scalar::one();
    let psi = endo_from_columns(&[
        vec![one.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), one.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), &r * &s, -(&r * &t)],
        vec![z.clone(), z.clone(), &r * &t, &r * &s],
    ]);
    assert!(is_automorphism(&g, &psi).unwrap());
    let ji = jmap(4, &[(1, &[(2, "1")]), (3, &[(4, "1")])]);
    assert_eq!(ji.dot(&psi), psi.dot(&ji));
    let w = form(4, &[(1, 3, "a13"), (2, 4, "-a13"), (1, 4, "a14"), (2, 3, "a14")]);
    let pulled = pullback(&psi, &w).unwrap();
    let c1 = &r * &(&(&q("a13") * &s) - &(&q("a14") * &t));
    let c2 = &r * &(&(&q("a13") * &t) + &(&q("a14") * &s));
    let expected = two_form(4, &[(0, 2, c1.clone()), (1, 3, -c1), (0, 3, c2.clone()), (1, 2, c2)]);
    assert_eq!(pulled, expected);
}

#[test]
fn identity_pullback_and_singular_map() {
    let w = form(4, &[(1, 2, "3"), (3, 4, "c")]);
    assert_eq!(pullback(&Matrix::identity(4), &w).unwrap(), w);
    assert!(pullback(&Matrix::zeros(4, 4), &w).is_err());
}

#[test]
fn phi_r_on_d42() {
    let d42 = parse_salamon("(2*14,-24,-12+34,0)").unwrap();
    let ri = q("1/r");
    let mut phi = Matrix::identity(4);
    phi[(0, 0)] = ri.clone();
    phi[(2, 2)] = ri;
    assert!(is_automorphism(&d42, &phi).unwrap());
    let j2 = jmap(4, &[(1, &[(3, "1")]), (2, &[(4, "1")])]);
    assert!(is_integrable(&d42, &j2).unwrap());
    assert_eq!(j2.dot(&phi), phi.dot(&j2));
}

fn rh3_j() -> Endo {
    jmap(4, &[(1, &[(2, "-1")]), (3, &[(4, "-1")])])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_and_skew_families_meet_in_zero(coeffs in proptest::collection::vec(-3i64..=3, 6)) {
        let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
        let j = rh3_j();
        let sym = symmetry_constraint(&rh3, &j, Symmetry::Symmetric);
        let skew = symmetry_constraint(&rh3, &j, Symmetry::Skew);
        // a random combination of symmetric members is never skew unless zero
        let mut w = Matrix::zeros(4, 4);
        for (b, c) in sym.basis.iter().zip(&coeffs) {
            w = w.add(&b.scale(&RatFun::from_int(*c)));
        }
        prop_assert_eq!(has_symmetry(&j, &w, Symmetry::Skew), w.is_zero());
        for b in sym.basis.iter() {
            prop_assert_eq!(transform(&j, b), b.neg());
        }
        for b in skew.basis.iter() {
            prop_assert_eq!(&transform(&j, b), b);
        }
    }

    #[test]
    fn nijenhuis_is_antisymmetric(entries in proptest::collection::vec(-2i64..=2, 16)) {
        let g = parse_salamon("(0,0,-12,0)").unwrap();
        let a = Matrix::from_fn(4, 4, |i, j| RatFun::from_int(entries[4 * i + j]));
        let n = nijenhuis(&g, &a).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let neg: Vec<Scalar> = n[j][i].iter().map(|x| -x).collect();
                prop_assert_eq!(&n[i][j], &neg);
            }
        }
        prop_assert!(is_integrable(&g, &Matrix::identity(4)).unwrap());
        prop_assert!(is_integrable(&g, &Matrix::<Scalar>::identity(4).neg()).unwrap());
    }

    #[test]
    fn nondegeneracy_verdict_ignores_parameter_names(perm in Just(()).prop_perturb(|_, mut rng| {
        let mut v = vec![0usize, 1, 2, 3, 4];
        for i in (1..v.len()).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            v.swap(i, j);
        }
        v
    })) {
        let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
        let f = closed_two_forms(&rh3);
        let names = ["p0", "p1", "p2", "p3", "p4"];
        let new: Vec<&str> = perm.iter().map(|&i| names[i]).collect();
        let renamed = f.rename(&new);
        prop_assert_eq!(renamed.generically_nondegenerate().unwrap(), f.generically_nondegenerate().unwrap());
        let rr = parse_salamon("(0,-12,0,0)").unwrap();
        let j = jmap(4, &[(1, &[(2, "1")]), (3, &[(4, "1")])]);
        let sym = symmetry_constraint(&rr, &j, Symmetry::Symmetric);
        let names: Vec<&str> = names[..sym.len()].to_vec();
        prop_assert!(!sym.rename(&names).generically_nondegenerate().unwrap());
    }
}
