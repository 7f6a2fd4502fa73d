use hsx_exact::linalg::{det, invert, kernel, pfaffian, solve_linear_checked};
use hsx_exact::{poly_identically_zero, ExactError, MPoly, Matrix, RatFun, Rational, Var};

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn form4(pairs: &[(usize, usize, i64)]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(4, 4);
    for &(i, j, v) in pairs {
        m[(i - 1, j - 1)] = Rational::from_int(v);
        m[(j - 1, i - 1)] = Rational::from_int(-v);
    }
    m
}

#[test]
fn kernel_of_zero_and_identity() {
    let z = Matrix::<Rational>::zeros(2, 2);
    assert_eq!(kernel(&z).len(), 2);
    let id = Matrix::<Rational>::identity(3);
    assert!(kernel(&id).is_empty());
}

#[test]
fn kernel_rejects_foreign_parameters() {
    let c = Var::new("c");
    let m = Matrix::from_rows(vec![vec![RatFun::param("c"), RatFun::param("zeta")]]).unwrap();
    assert!(solve_linear_checked(&m, &[c, Var::new("zeta")]).is_ok());
    match solve_linear_checked(&m, &[c]) {
        Err(ExactError::FieldMismatch { row, col, var }) => {
            assert_eq!((row, col), (0, 1));
            assert_eq!(var, "zeta");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn invert_small_cases() {
    let id = Matrix::<Rational>::identity(3);
    assert_eq!(invert(&id).unwrap(), id);
    let mut d = Matrix::<Rational>::zeros(2, 2);
    d[(0, 0)] = q(2, 1);
    d[(1, 1)] = q(1, 3);
    let inv = invert(&d).unwrap();
    assert_eq!(inv[(0, 0)], q(1, 2));
    assert_eq!(inv[(1, 1)], q(3, 1));
    assert!(inv[(0, 1)].is_zero());
    match invert(&form4(&[(1, 2, 1), (1, 3, 1)])) {
        Err(ExactError::Singular { det }) => assert_eq!(det, "0"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn symbolic_inverse_multiplies_back() {
    let c = RatFun::param("c");
    let one = RatFun::one();
    let m = Matrix::from_rows(vec![
        vec![&c + &one, c.clone()],
        vec![one.clone(), c.inv().unwrap()],
    ])
    .unwrap();
    let inv = invert(&m).unwrap();
    assert!(m.dot(&inv).is_identity());
    assert!(inv.dot(&m).is_identity());
}

#[test]
fn pfaffian_examples() {
    assert_eq!(pfaffian(&form4(&[(1, 4, 1), (2, 3, 1)])).unwrap(), Rational::one());
    assert!(pfaffian(&form4(&[(1, 2, 1), (1, 3, 1)])).unwrap().is_zero());
    let odd = Matrix::<Rational>::zeros(3, 3);
    assert!(matches!(pfaffian(&odd), Err(ExactError::Shape(_))));
    let mut bad = form4(&[(1, 2, 1)]);
    bad[(1, 0)] = Rational::one();
    assert!(matches!(pfaffian(&bad), Err(ExactError::Shape(_))));
    let big = Matrix::<Rational>::zeros(10, 10);
    assert!(matches!(pfaffian(&big), Err(ExactError::Shape(_))));
}

#[test]
fn generic_pfaffian_of_four_by_four() {
    let names = ["a12", "a13", "a14", "a23", "a24", "a34"];
    let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut m = Matrix::<RatFun>::zeros(4, 4);
    for (name, &(i, j)) in names.iter().zip(&idx) {
        m[(i, j)] = RatFun::param(name);
        m[(j, i)] = -RatFun::param(name);
    }
    let pf = pfaffian(&m).unwrap();
    let expect: RatFun = "a12*a34 - a13*a24 + a14*a23".parse().unwrap();
    assert_eq!(pf, expect);
    assert_eq!(&pf * &pf, det(&m).unwrap());
}

#[test]
fn identically_zero_polynomials() {
    assert!(poly_identically_zero(&MPoly::zero()));
    let a17 = MPoly::var(Var::new("a17"));
    let a18 = MPoly::var(Var::new("a18"));
    assert!(!poly_identically_zero(&(&(&a17 * &a17) + &(&a18 * &a18))));
    assert!(poly_identically_zero(&(&(&a17 * &a18) - &(&a18 * &a17))));
}
