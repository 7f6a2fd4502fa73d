//! Exterior forms on a fixed dual basis e^1..e^n.
//!
//! Indices are 0-based internally; display is 1-based, with `.` between
//! indices once the ambient dimension exceeds 9.

use std::collections::BTreeMap;
use std::fmt;

use hsx_exact::{Matrix, RatFun};

use crate::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Scalar>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> KForm {
        KForm {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The scalar `c` as a 0-form.
    pub fn constant(dim: usize, c: Scalar) -> KForm {
        let mut f = KForm::zero(dim, 0);
        f.add_term(&[], c);
        f
    }

    /// e^{i1} ∧ … ∧ e^{ik}, indices in any order.
    pub fn basis(dim: usize, idx: &[usize]) -> KForm {
        let mut f = KForm::zero(dim, idx.len());
        f.add_term(idx, Scalar::one());
        f
    }

    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> KForm
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut f = KForm::zero(dim, degree);
        for (idx, c) in terms {
            f.add_term(&idx, c);
        }
        f
    }

    /// Adds `c · e^{idx}`; unsorted indices pick up the permutation sign.
    pub fn add_term(&mut self, idx: &[usize], c: Scalar) {
        assert_eq!(idx.len(), self.degree, "form degree");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let mut key = idx.to_vec();
        let Some(sign) = sort_sign(&mut key) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        let slot = self.coeffs.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of e^{idx} (indices in any order).
    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        let mut key = idx.to_vec();
        match sort_sign(&mut key) {
            None => Scalar::zero(),
            Some(sign) => {
                let c = self.coeffs.get(&key).cloned().unwrap_or_else(Scalar::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &KForm) -> KForm {
        self.check_same(other);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &KForm) -> KForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KForm {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (idx, c) in &self.coeffs {
            out.coeffs.insert(idx.clone(), c * s);
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        for (idx, c) in &self.coeffs {
            out.add_term(idx, f(c));
        }
        out
    }

    fn check_same(&self, other: &KForm) {
        assert_eq!(self.dim, other.dim, "ambient dimension");
        assert_eq!(self.degree, other.degree, "form degree");
    }

    pub fn wedge(&self, other: &KForm) -> KForm {
        assert_eq!(self.dim, other.dim, "ambient dimension");
        let mut out = KForm::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return out;
        }
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let idx: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                out.add_term(&idx, ca * cb);
            }
        }
        out
    }

    /// ω ∧ … ∧ ω (m factors); m = 0 gives the constant 1.
    pub fn wedge_power(&self, m: usize) -> KForm {
        let mut out = KForm::constant(self.dim, Scalar::one());
        for _ in 0..m {
            out = out.wedge(self);
        }
        out
    }

    /// Antisymmetric matrix ω_ij = ω(e_i, e_j) of a 2-form.
    pub fn to_matrix(&self) -> Matrix<Scalar> {
        assert_eq!(self.degree, 2, "matrix view needs a 2-form");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (idx, c) in &self.coeffs {
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c;
        }
        m
    }

    /// Reads the upper triangle of a square matrix as a 2-form.
    pub fn from_matrix(m: &Matrix<Scalar>) -> KForm {
        assert!(m.is_square(), "square matrix");
        let n = m.rows();
        let mut f = KForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.add_term(&[i, j], m[(i, j)].clone());
            }
        }
        f
    }

    pub fn eval(&self, bindings: &std::collections::HashMap<hsx_exact::Var, hsx_exact::Rational>) -> crate::Result<KForm> {
        let mut out = KForm::zero(self.dim, self.degree);
        for (idx, c) in &self.coeffs {
            out.add_term(idx, c.eval(bindings)?);
        }
        Ok(out)
    }
}

/// Formats a multi-index 1-based, dot-separated above dimension 9.
pub fn index_label(dim: usize, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    if dim > 9 {
        parts.join(".")
    } else {
        parts.concat()
    }
}

/// `c·` prefix for a coefficient in a sum, with its sign split off.
pub(crate) fn signed_coeff(c: &RatFun) -> (bool, String) {
    let neg = match c.as_rational() {
        Some(q) => q.is_negative(),
        None => c
            .numer()
            .leading_by_name()
            .map(|(_, k)| k.is_negative())
            .unwrap_or(false),
    };
    let a = if neg { -c } else { c.clone() };
    let body = if a.is_one() {
        String::new()
    } else if a.is_constant() {
        format!("{a}*")
    } else {
        format!("({a})*")
    };
    (neg, body)
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            let (neg, body) = signed_coeff(c);
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if idx.is_empty() {
                let a = if neg { -c } else { c.clone() };
                write!(f, "{a}")?;
            } else {
                write!(f, "{body}e{}", index_label(self.dim, idx))?;
            }
        }
        Ok(())
    }
}
