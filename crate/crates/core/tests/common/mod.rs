#![allow(dead_code)]

use hsx_core::salamon::parse_salamon;
use hsx_core::structures::{complex_structure_on_basis, two_form, Endo, TwoForm};
use hsx_core::{LieAlgebra, Scalar};

pub fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

pub fn vecs(dim: usize, terms: &[(usize, &str)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    for (i, c) in terms {
        v[i - 1] = q(c);
    }
    v
}

/// J from images of basis vectors, 1-based.
pub fn jmap(dim: usize, images: &[(usize, &[(usize, &str)])]) -> Endo {
    let data: Vec<(usize, Vec<Scalar>)> = images.iter().map(|(i, t)| (i - 1, vecs(dim, t))).collect();
    complex_structure_on_basis(dim, &data).unwrap()
}

pub fn form(dim: usize, terms: &[(usize, usize, &str)]) -> TwoForm {
    let t: Vec<(usize, usize, Scalar)> = terms.iter().map(|(i, j, c)| (i - 1, j - 1, q(c))).collect();
    two_form(dim, &t)
}

pub fn h() -> LieAlgebra {
    parse_salamon("(0^3,12,13,14+23,15,16+2·25+34)").unwrap()
}

pub fn j_c() -> Endo {
    jmap(8, &[(1, &[(2, "(c+1)/c")]), (3, &[(4, "-1")]), (5, &[(6, "1/c")]), (7, &[(8, "(3+2*c)/c")])])
}

pub fn hat_cs() -> TwoForm {
    form(8, &[(1, 7, "(c+1)*(2*c+3)"), (2, 8, "-c^2"), (3, 5, "c"), (4, 6, "c^2")])
}

pub fn hat_pk() -> TwoForm {
    form(8, &[(1, 7, "(c+1)*(2*c+3)"), (2, 8, "c^2"), (3, 5, "c"), (4, 6, "-c^2")])
}

pub fn nonflat_pk() -> TwoForm {
    form(
        8,
        &[
            (1, 3, "-(c+1)*(c+2)/(2*c^2)"),
            (1, 6, "c+1"),
            (1, 7, "(c+1)*(2*c+3)"),
            (2, 4, "(c+2)/(2*c)"),
            (2, 5, "-1"),
            (2, 8, "c^2"),
            (3, 4, "-(c+2)"),
            (3, 5, "c"),
            (4, 6, "-c^2"),
        ],
    )
}
