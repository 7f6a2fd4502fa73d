//! Exact linear algebra: determinants, inverses, Pfaffians, kernels, signature.

use std::collections::BTreeSet;

use crate::error::ExactError;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::var::Var;

fn require_square<F: Field>(m: &Matrix<F>) -> Result<(), ExactError> {
    if !m.is_square() {
        return Err(ExactError::Shape(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn pick_pivot<F: Field>(a: &Matrix<F>, col: usize, from: usize) -> Option<usize> {
    (from..a.rows())
        .filter(|&r| !a[(r, col)].is_zero())
        .min_by_key(|&r| a[(r, col)].complexity())
}

/// Fraction-free (Bareiss) determinant.
pub fn det<F: Field>(m: &Matrix<F>) -> Result<F, ExactError> {
    require_square(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(F::one());
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = F::one();
    for k in 0..n - 1 {
        let Some(p) = pick_pivot(&a, k, k) else {
            return Ok(F::zero());
        };
        if p != k {
            for j in 0..n {
                let t = a[(k, j)].clone();
                a[(k, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)]
                    .mul_ref(&a[(k, k)])
                    .sub_ref(&a[(i, k)].mul_ref(&a[(k, j)]));
                a[(i, j)] = num
                    .try_div(&prev)
                    .expect("Bareiss divisor is a previous nonzero pivot");
            }
            a[(i, k)] = F::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if sign_flip { d.neg_ref() } else { d })
}

/// Inverse by fraction-free elimination on `[M | I]` followed by
/// back-substitution. A singular input reports its (vanishing) determinant.
pub fn invert<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, ExactError> {
    require_square(m)?;
    let n = m.rows();
    let w = 2 * n;
    let mut a = Matrix::<F>::from_fn(n, w, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let mut prev = F::one();
    for k in 0..n {
        let Some(p) = pick_pivot(&a, k, k) else {
            return Err(ExactError::Singular { det: "0".into() });
        };
        if p != k {
            for j in 0..w {
                let t = a[(k, j)].clone();
                a[(k, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
        }
        for i in k + 1..n {
            let aik = a[(i, k)].clone();
            for j in k + 1..w {
                let mut num = a[(i, j)].mul_ref(&a[(k, k)]);
                if !aik.is_zero() && !a[(k, j)].is_zero() {
                    num = num.sub_ref(&aik.mul_ref(&a[(k, j)]));
                }
                a[(i, j)] = if num.is_zero() {
                    num
                } else {
                    num.try_div(&prev)
                        .expect("Bareiss divisor is a previous nonzero pivot")
                };
            }
            a[(i, k)] = F::zero();
        }
        prev = a[(k, k)].clone();
    }
    let mut x = Matrix::<F>::zeros(n, n);
    for c in 0..n {
        for i in (0..n).rev() {
            let mut s = a[(i, n + c)].clone();
            for j in i + 1..n {
                if !a[(i, j)].is_zero() && !x[(j, c)].is_zero() {
                    s = s.sub_ref(&a[(i, j)].mul_ref(&x[(j, c)]));
                }
            }
            x[(i, c)] = if s.is_zero() {
                s
            } else {
                s.try_div(&a[(i, i)]).expect("nonzero diagonal")
            };
        }
    }
    Ok(x)
}

fn require_antisymmetric<F: Field>(m: &Matrix<F>) -> Result<(), ExactError> {
    require_square(m)?;
    if !m.is_antisymmetric() {
        return Err(ExactError::Shape("matrix is not antisymmetric".into()));
    }
    Ok(())
}

fn pf_rec<F: Field>(m: &Matrix<F>, idx: &[usize]) -> F {
    if idx.is_empty() {
        return F::one();
    }
    let i0 = idx[0];
    let mut acc = F::zero();
    for (k, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[(i0, j)];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&x| x != i0 && x != j)
            .collect();
        let sub = pf_rec(m, &rest);
        if sub.is_zero() {
            continue;
        }
        let term = a.mul_ref(&sub);
        acc = if k % 2 == 1 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

/// Largest size accepted by [`pfaffian`] and [`invert_antisymmetric`].
pub const PFAFFIAN_MAX_DIM: usize = 8;

fn require_pfaffian_shape<F: Field>(m: &Matrix<F>) -> Result<(), ExactError> {
    require_antisymmetric(m)?;
    let n = m.rows();
    if n % 2 == 1 {
        return Err(ExactError::Shape(format!("Pfaffian of odd size {n}")));
    }
    if n > PFAFFIAN_MAX_DIM {
        return Err(ExactError::Shape(format!(
            "Pfaffian expansion is limited to size {PFAFFIAN_MAX_DIM}, got {n}"
        )));
    }
    Ok(())
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian<F: Field>(m: &Matrix<F>) -> Result<F, ExactError> {
    require_pfaffian_shape(m)?;
    let n = m.rows();
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf_rec(m, &idx))
}

/// Inverse of an antisymmetric matrix from Pfaffian minors, so that the only
/// denominator is `Pf(A)` rather than `det(A) = Pf(A)^2`.
pub fn invert_antisymmetric<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, ExactError> {
    require_pfaffian_shape(m)?;
    let n = m.rows();
    let all: Vec<usize> = (0..n).collect();
    let pf = pf_rec(m, &all);
    let Some(pf_inv) = pf.inv() else {
        return Err(ExactError::Singular { det: "0".into() });
    };
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let rest: Vec<usize> = all.iter().copied().filter(|&x| x != i && x != j).collect();
            let minor = pf_rec(m, &rest);
            if minor.is_zero() {
                continue;
            }
            // 0-based i+j has the parity of the 1-based (i+1)+(j+1)
            let v = minor.mul_ref(&pf_inv);
            let v = if (i + j) % 2 == 0 { v.neg_ref() } else { v };
            out[(j, i)] = v.clone();
            out[(i, j)] = v.neg_ref();
        }
    }
    Ok(out)
}

/// Reduced row echelon form with pivots chosen from the rightmost column
/// leftwards. Returns the reduced matrix and the pivot column of each
/// nonzero row.
pub fn rref_right<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in (0..cols).rev() {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(&a, col, r) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(r, j)].clone();
                a[(r, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
        }
        let inv = a[(r, col)].inv().expect("nonzero pivot");
        for j in 0..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = a[(r, j)].mul_ref(&inv);
            }
        }
        for i in 0..rows {
            if i == r || a[(i, col)].is_zero() {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in 0..cols {
                if !a[(r, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].sub_ref(&f.mul_ref(&a[(r, j)]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref_right(m).1.len()
}

/// Kernel basis. Free columns are the earliest ones; the basis vector for a
/// free column has a 1 there and 0 at every other free column.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let cols = m.cols();
    let (a, pivots) = rref_right(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                if !a[(row, f)].is_zero() {
                    v[p] = a[(row, f)].neg_ref();
                }
            }
            v
        })
        .collect()
}

/// Names the free columns of [`kernel`] in order.
pub fn free_columns<F: Field>(m: &Matrix<F>) -> Vec<usize> {
    let pivots = rref_right(m).1;
    (0..m.cols()).filter(|c| !pivots.contains(c)).collect()
}

/// Rejects entries whose parameters are outside `allowed`.
pub fn check_field<F: Field>(m: &Matrix<F>, allowed: &[Var]) -> Result<(), ExactError> {
    let allowed: BTreeSet<Var> = allowed.iter().copied().collect();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some(v) = m[(i, j)].params().into_iter().find(|v| !allowed.contains(v)) {
                return Err(ExactError::FieldMismatch {
                    row: i,
                    col: j,
                    var: v.name().to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Kernel of `m` after checking that it lives over ℚ(allowed).
pub fn solve_linear_checked<F: Field>(
    m: &Matrix<F>,
    allowed: &[Var],
) -> Result<Vec<Vec<F>>, ExactError> {
    check_field(m, allowed)?;
    Ok(kernel(m))
}

/// Whether two lists of vectors span the same subspace.
pub fn span_eq<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let dim = a.first().or(b.first()).map(|v| v.len()).unwrap_or(0);
    let to_m = |vs: &[Vec<F>]| {
        if vs.is_empty() {
            Matrix::<F>::zeros(0, dim)
        } else {
            Matrix::from_rows(vs.to_vec()).expect("equal lengths")
        }
    };
    let ra = rank(&to_m(a));
    let rb = rank(&to_m(b));
    let both: Vec<Vec<F>> = a.iter().chain(b.iter()).cloned().collect();
    ra == rb && rank(&to_m(&both)) == ra
}

/// Sylvester signature `(positive, negative, zero)` of a symmetric rational
/// matrix, by symmetric Gaussian elimination.
pub fn signature(m: &Matrix<Rational>) -> Result<(usize, usize, usize), ExactError> {
    require_square(m)?;
    if !m.is_symmetric() {
        return Err(ExactError::Shape("matrix is not symmetric".into()));
    }
    let mut a = m.clone();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let k = match diag {
            Some(k) => k,
            None => {
                let off = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = off else {
                    break;
                };
                // e_i <- e_i + e_j makes the diagonal entry 2 a_ij nonzero
                for t in 0..n {
                    let v = &a[(i, t)] + &a[(j, t)];
                    a[(i, t)] = v;
                }
                for t in 0..n {
                    let v = &a[(t, i)] + &a[(t, j)];
                    a[(t, i)] = v;
                }
                i
            }
        };
        let p = a[(k, k)].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != k);
        for &i in &active {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &p;
            for &j in &active {
                let v = &a[(i, j)] - &(&f * &a[(k, j)]);
                a[(i, j)] = v;
            }
        }
        for &i in &active {
            a[(i, k)] = Rational::zero();
            a[(k, i)] = Rational::zero();
        }
    }
    Ok((pos, neg, n - pos - neg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&m).unwrap(), Rational::from_int(18));
        let inv = invert(&m).unwrap();
        assert!(m.dot(&inv).is_identity());
        let s = q(&[&[1, 2], &[2, 4]]);
        assert!(matches!(invert(&s), Err(ExactError::Singular { .. })));
    }

    #[test]
    fn pfaffian_of_standard_form() {
        let m = q(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        assert_eq!(pfaffian(&m).unwrap(), Rational::one());
        let inv = invert_antisymmetric(&m).unwrap();
        assert!(m.dot(&inv).is_identity());
    }

    #[test]
    fn kernel_prefers_early_free_columns() {
        let m = q(&[&[1, 1, 1]]);
        assert_eq!(free_columns(&m), vec![0, 1]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![Rational::one(), Rational::zero(), -Rational::one()]);
    }

    #[test]
    fn signature_with_zero_diagonal() {
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&m).unwrap(), (1, 1, 0));
        let m = q(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -3]]);
        assert_eq!(signature(&m).unwrap(), (1, 1, 1));
    }
}
