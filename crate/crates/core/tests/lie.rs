use hsx_core::lie::{multi_indices, unit};
use hsx_core::salamon::{parse_salamon, print_salamon};
use hsx_core::{CoreError, KForm, LieAlgebra, Scalar};
use hsx_exact::RatFun;

fn s(n: i64) -> Scalar {
    RatFun::from_int(n)
}

fn e(dim: usize, idx: &[usize]) -> KForm {
    KForm::basis(dim, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
}

#[test]
fn rh3_bracket_follows_d_convention() {
    let g = parse_salamon("(0,0,-12,0)").unwrap();
    assert_eq!(g.bracket_basis(0, 1), vec![s(0), s(0), s(1), s(0)]);
    assert_eq!(g.bracket_basis(1, 0), vec![s(0), s(0), s(-1), s(0)]);
}

#[test]
fn abelian_bracket_vanishes() {
    let g = LieAlgebra::abelian(4);
    assert!(g.bracket_basis(0, 1).iter().all(|x| x.is_zero()));
    assert!(g.d(&e(4, &[1, 2])).is_zero());
}

#[test]
fn h_bracket_e2_e5() {
    let g = parse_salamon("(0^3,12,13,14+23,15,16+2·25+34)").unwrap();
    // de^8 carries 2·e^25, so e^8([e2,e5]) = -de^8(e2,e5) = -2
    let b = g.bracket_basis(1, 4);
    assert_eq!(b[7], s(-2));
    assert!(b[..7].iter().all(|x| x.is_zero()));
}

#[test]
fn differential_examples() {
    let g = parse_salamon("(0,0,-12,0)").unwrap();
    assert_eq!(g.d(&e(4, &[3])), e(4, &[1, 2]).neg());
    assert_eq!(g.d(&e(4, &[3, 4])), e(4, &[1, 2, 4]).neg());
}

#[test]
fn jacobi_check() {
    assert!(parse_salamon("(0,0,-12,0)").is_ok());
    assert!(LieAlgebra::abelian(4).is_jacobi());
    match parse_salamon("(0,0,12,34)") {
        Err(CoreError::Jacobi { slot, witness }) => {
            assert_eq!(slot, 4);
            assert_eq!(witness, "e124");
        }
        other => panic!("expected a Jacobi failure, got {other:?}"),
    }
}

#[test]
fn wedge_examples() {
    let w = e(4, &[1, 4]).add(&e(4, &[2, 3]));
    assert_eq!(w.wedge_power(2), e(4, &[1, 2, 3, 4]).scale(&s(2)));
    assert!(e(4, &[1]).wedge(&e(4, &[1])).is_zero());
}

#[test]
fn nilpotency_steps() {
    assert_eq!(LieAlgebra::abelian(4).nilpotency_step(), Some(1));
    let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
    assert_eq!(rh3.lower_central_series(), vec![4, 1, 0]);
    assert_eq!(rh3.nilpotency_step(), Some(2));
    let h = parse_salamon("(0^3,12,13,14+23,15,16+2·25+34)").unwrap();
    assert_eq!(h.nilpotency_step(), Some(4));
    let solvable = parse_salamon("(0,-12,0,0)").unwrap();
    assert_eq!(solvable.nilpotency_step(), None);
}

#[test]
fn direct_sums() {
    let h4 = parse_salamon("(0^4,12,14+23)").unwrap();
    let g = h4.direct_sum(&LieAlgebra::abelian(2));
    assert_eq!(g.dim(), 8);
    assert_eq!(g.nilpotency_step(), Some(2));
    let rh3 = parse_salamon("(0,0,-12,0)").unwrap();
    assert_eq!(rh3.direct_sum(&LieAlgebra::abelian(0)), rh3);
    let h = parse_salamon("(0^3,12,13,14+23,15,16+2·25+34)").unwrap();
    let big = h.direct_sum(&LieAlgebra::abelian(4));
    assert_eq!(big.dim(), 12);
    assert!(big.is_jacobi());
    assert_eq!(big.nilpotency_step(), Some(4));
}

#[test]
fn d_squared_vanishes_in_every_degree() {
    let h = parse_salamon("(0^3,12,13,14+23,15,16+2·25+34)").unwrap();
    for k in 1..4 {
        for idx in multi_indices(8, k) {
            let f = KForm::basis(8, &idx);
            assert!(h.d(&h.d(&f)).is_zero(), "d² e{idx:?}");
        }
    }
}

#[test]
fn bracket_dual_to_d() {
    let g = parse_salamon("(1/2·14+24,1/2·24,-12+34,0)").unwrap();
    for a in 0..4 {
        let da = g.de(a);
        for i in 0..4 {
            for j in 0..4 {
                let b = g.bracket(&unit(4, i), &unit(4, j)).unwrap();
                assert_eq!(da.coeff(&[i, j]), -b[a].clone());
            }
        }
    }
}

#[test]
fn dimension_mismatch_is_an_error() {
    let g = LieAlgebra::abelian(3);
    assert!(g.bracket(&[s(1)], &[s(1), s(0), s(0)]).is_err());
}

#[test]
fn print_examples() {
    assert_eq!(print_salamon(&parse_salamon("(0,0,-12,0)").unwrap()), "(0,0,-12,0)");
    assert_eq!(print_salamon(&LieAlgebra::abelian(4)), "(0,0,0,0)");
    let h4 = parse_salamon("(1/2·14+24,1/2·24,-12+34,0)").unwrap();
    assert_eq!(print_salamon(&h4), "(1/2*14+24,1/2*24,-12+34,0)");
}
