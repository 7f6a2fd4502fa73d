use hsx_exact::linalg::{det, invert, invert_antisymmetric, kernel, pfaffian, rank, signature};
use hsx_exact::{MPoly, Matrix, RatFun, Rational, Var};
use proptest::prelude::*;

fn int_matrix(n: usize, m: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(-4i64..=4, n * m).prop_map(move |v| {
        Matrix::from_fn(n, m, |i, j| Rational::from_int(v[i * m + j]))
    })
}

fn antisym(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        Matrix::from_fn(n, n, |i, j| {
            if i < j {
                Rational::from_int(v[i * n + j])
            } else if i > j {
                -Rational::from_int(v[j * n + i])
            } else {
                Rational::zero()
            }
        })
    })
}

fn small_ratfun() -> impl Strategy<Value = RatFun> {
    let atom = prop_oneof![
        (-3i64..=3).prop_map(RatFun::from_int),
        Just(RatFun::param("c")),
        Just(RatFun::param("t")),
    ];
    proptest::collection::vec((atom, 0u8..3), 1..4).prop_map(|parts| {
        let mut acc = RatFun::one();
        for (a, op) in parts {
            acc = match op {
                0 => &acc + &a,
                1 => &acc * &a,
                _ => {
                    let d = &a + &RatFun::param("c");
                    match acc.checked_div(&d) {
                        Some(q) => q,
                        None => acc,
                    }
                }
            };
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn pfaffian_squared_is_determinant_2(m in antisym(2)) {
        let p = pfaffian(&m).unwrap();
        prop_assert_eq!(&p * &p, det(&m).unwrap());
    }

    #[test]
    fn pfaffian_squared_is_determinant_4(m in antisym(4)) {
        let p = pfaffian(&m).unwrap();
        prop_assert_eq!(&p * &p, det(&m).unwrap());
    }

    #[test]
    fn pfaffian_squared_is_determinant_6(m in antisym(6)) {
        let p = pfaffian(&m).unwrap();
        prop_assert_eq!(&p * &p, det(&m).unwrap());
    }

    #[test]
    fn pfaffian_squared_is_determinant_8(m in antisym(8)) {
        let p = pfaffian(&m).unwrap();
        prop_assert_eq!(&p * &p, det(&m).unwrap());
    }

    #[test]
    fn pfaffian_inverse_agrees_with_gauss_jordan(m in antisym(6)) {
        match invert(&m) {
            Ok(inv) => {
                let pf_inv = invert_antisymmetric(&m).unwrap();
                prop_assert_eq!(pf_inv, inv);
            }
            Err(_) => prop_assert!(invert_antisymmetric(&m).is_err()),
        }
    }

    #[test]
    fn inverse_is_two_sided(m in int_matrix(4, 4)) {
        if let Ok(inv) = invert(&m) {
            prop_assert!(m.dot(&inv).is_identity());
            prop_assert!(inv.dot(&m).is_identity());
        } else {
            prop_assert!(det(&m).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in int_matrix(3, 5)) {
        let k = kernel(&m);
        prop_assert_eq!(k.len() + rank(&m), 5);
        for v in &k {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(3, 3), b in int_matrix(3, 3)) {
        prop_assert_eq!(det(&a.dot(&b)).unwrap(), &det(&a).unwrap() * &det(&b).unwrap());
    }

    #[test]
    fn signature_of_gram_matrix_is_definite(m in int_matrix(3, 3)) {
        let g = m.transpose().dot(&m);
        let (_, neg, zero) = signature(&g).unwrap();
        prop_assert_eq!(neg, 0);
        prop_assert_eq!(zero, 3 - rank(&m));
    }

    #[test]
    fn ratfun_field_axioms(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFun::zero());
        if let Some(ai) = a.inv() {
            prop_assert!((&a * &ai).is_one());
        }
    }

    #[test]
    fn ratfun_display_round_trips(a in small_ratfun()) {
        let back: RatFun = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn polynomial_division_inverts_multiplication(
        u in proptest::collection::vec(-3i64..=3, 4),
        v in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let x = MPoly::var(Var::new("x"));
        let y = MPoly::var(Var::new("y"));
        let build = |c: &[i64]| {
            &(&(&x.scale(&Rational::from_int(c[0])) + &y.scale(&Rational::from_int(c[1])))
                + &(&x * &y).scale(&Rational::from_int(c[2])))
                + &MPoly::int(c[3])
        };
        let p = build(&u);
        let q = build(&v);
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
        }
    }
}

#[test]
fn symbolic_pfaffian_inverse() {
    let c = RatFun::param("c");
    let one = RatFun::one();
    let z = RatFun::zero();
    let m = Matrix::from_rows(vec![
        vec![z.clone(), c.clone(), one.clone(), z.clone()],
        vec![-c.clone(), z.clone(), z.clone(), one.clone()],
        vec![-one.clone(), z.clone(), z.clone(), c.clone()],
        vec![z.clone(), -one.clone(), -c.clone(), z.clone()],
    ])
    .unwrap();
    let pf = pfaffian(&m).unwrap();
    assert_eq!(pf, "c^2 - 1".parse::<RatFun>().unwrap());
    let inv = invert_antisymmetric(&m).unwrap();
    assert!(m.dot(&inv).is_identity());
    for x in inv.entries() {
        assert!((&pf * x).is_polynomial());
    }
}
