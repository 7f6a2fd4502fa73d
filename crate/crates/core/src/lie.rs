//! Lie algebras given by the differentials de^k = Σ_{i<j} c^k_ij e^{ij} of a
//! dual basis. The bracket is [e_i, e_j] = −Σ_k c^k_ij e_k, which is what
//! dα(X, Y) = −α([X, Y]) forces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hsx_exact::{Matrix, Rational, Var};

use crate::error::{CoreError, Result};
use crate::forms::KForm;
use crate::Scalar;

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    // keyed by (k, i, j) with i < j
    c: BTreeMap<(usize, usize, usize), Scalar>,
    validated: bool,
}

impl LieAlgebra {
    /// Builds from sparse constants `(k, i, j, c^k_ij)`, 0-based, without the
    /// Jacobi check. Pairs with i > j are folded in with a sign flip.
    pub fn from_constants_unchecked<I>(dim: usize, consts: I) -> Result<LieAlgebra>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut c: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (k, i, j, v) in consts {
            let bad = [k, i, j].into_iter().find(|&x| x >= dim);
            if let Some(x) = bad {
                return Err(CoreError::IndexRange {
                    index: x + 1,
                    dim,
                    offset: 0,
                });
            }
            if i == j {
                return Err(CoreError::Precondition(format!(
                    "repeated index in pair ({},{})",
                    i + 1,
                    j + 1
                )));
            }
            let (key, v) = if i < j { ((k, i, j), v) } else { ((k, j, i), -v) };
            let slot = c.entry(key).or_insert_with(Scalar::zero);
            *slot = &*slot + &v;
            if slot.is_zero() {
                c.remove(&key);
            }
        }
        Ok(LieAlgebra {
            dim,
            names: (1..=dim).map(|i| format!("e{i}")).collect(),
            c,
            validated: false,
        })
    }

    /// Builds and runs the Jacobi check.
    pub fn from_constants<I>(dim: usize, consts: I) -> Result<LieAlgebra>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut g = LieAlgebra::from_constants_unchecked(dim, consts)?;
        g.check_jacobi()?;
        g.validated = true;
        Ok(g)
    }

    /// From the differentials de^1..de^n given as 2-forms.
    pub fn from_differentials(ds: &[KForm]) -> Result<LieAlgebra> {
        let dim = ds.len();
        let mut consts = Vec::new();
        for (k, f) in ds.iter().enumerate() {
            if f.degree() != 2 || f.dim() != dim {
                return Err(CoreError::Precondition(format!(
                    "de^{} must be a 2-form in dimension {dim}",
                    k + 1
                )));
            }
            for (idx, v) in f.terms() {
                consts.push((k, idx[0], idx[1], v.clone()));
            }
        }
        LieAlgebra::from_constants(dim, consts)
    }

    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra {
            dim,
            names: (1..=dim).map(|i| format!("e{i}")).collect(),
            c: BTreeMap::new(),
            validated: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<LieAlgebra> {
        if names.len() != self.dim {
            return Err(CoreError::Dimension {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// c^k_ij for any i, j (antisymmetric).
    pub fn c(&self, k: usize, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.c.get(&(k, i, j)).cloned().unwrap_or_else(Scalar::zero),
            Greater => -self.c.get(&(k, j, i)).cloned().unwrap_or_else(Scalar::zero),
            Equal => Scalar::zero(),
        }
    }

    pub fn constants(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.c.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.is_empty()
    }

    /// de^k as a 2-form.
    pub fn de(&self, k: usize) -> KForm {
        KForm::from_terms(
            self.dim,
            2,
            self.c
                .range((k, 0, 0)..(k + 1, 0, 0))
                .map(|(&(_, i, j), v)| (vec![i, j], v.clone())),
        )
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim).map(|k| -self.c(k, i, j)).collect()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(k, i, j), v) in &self.c {
            let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if w.is_zero() {
                continue;
            }
            out[k] = &out[k] - &(&w * v);
        }
        Ok(out)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(CoreError::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Chevalley–Eilenberg differential, extended as an antiderivation.
    pub fn d(&self, phi: &KForm) -> KForm {
        assert_eq!(phi.dim(), self.dim, "ambient dimension");
        let des: Vec<KForm> = (0..self.dim).map(|k| self.de(k)).collect();
        let mut out = KForm::zero(self.dim, phi.degree() + 1);
        for (idx, coef) in phi.terms() {
            for (r, &ir) in idx.iter().enumerate() {
                if des[ir].is_zero() {
                    continue;
                }
                let mut piece = KForm::constant(self.dim, coef.clone());
                for &i in &idx[..r] {
                    piece = piece.wedge(&KForm::basis(self.dim, &[i]));
                }
                piece = piece.wedge(&des[ir]);
                for &i in &idx[r + 1..] {
                    piece = piece.wedge(&KForm::basis(self.dim, &[i]));
                }
                out = if r % 2 == 0 { out.add(&piece) } else { out.sub(&piece) };
            }
        }
        out
    }

    /// d(de^k) = 0 for every k; the error names the first failing slot.
    pub fn check_jacobi(&self) -> Result<()> {
        for k in 0..self.dim {
            let dd = self.d(&self.de(k));
            if !dd.is_zero() {
                return Err(CoreError::Jacobi {
                    slot: k + 1,
                    witness: dd.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn is_jacobi(&self) -> bool {
        self.check_jacobi().is_ok()
    }

    /// Dimensions of 𝔤 = 𝔤¹ ⊇ 𝔤² = [𝔤,𝔤] ⊇ 𝔤³ ⊇ … until the series stabilizes.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let mut span: Vec<Vector> = (0..self.dim)
            .map(|i| unit(self.dim, i))
            .collect();
        let mut dims = vec![self.dim];
        loop {
            let mut gens = Vec::new();
            for i in 0..self.dim {
                for v in &span {
                    let b = self.bracket(&unit(self.dim, i), v).expect("dims agree");
                    if b.iter().any(|x| !x.is_zero()) {
                        gens.push(b);
                    }
                }
            }
            let next = independent_subset(&gens);
            let n = next.len();
            if n == *dims.last().unwrap() {
                return dims;
            }
            dims.push(n);
            if n == 0 {
                return dims;
            }
            span = next;
        }
    }

    /// The k with 𝔤^{k+1} = 0 ≠ 𝔤^k, or `None` when not nilpotent. The
    /// abelian algebra is 1-step; the zero algebra is 0-step.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let s = self.lower_central_series();
        if *s.last().unwrap() == 0 {
            Some(s.len() - 1)
        } else {
            None
        }
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim;
        let mut c = self.c.clone();
        for (&(k, i, j), v) in &other.c {
            c.insert((k + n, i + n, j + n), v.clone());
        }
        let names = (1..=n + other.dim).map(|i| format!("e{i}")).collect();
        LieAlgebra {
            dim: n + other.dim,
            names,
            c,
            validated: self.validated && other.validated,
        }
    }

    /// Parameters appearing in the structure constants.
    pub fn params(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for v in self.c.values() {
            out.extend(v.vars());
        }
        out
    }

    /// Specializes parameters, re-running the Jacobi check.
    pub fn eval(&self, bindings: &HashMap<Var, Rational>) -> Result<LieAlgebra> {
        let mut consts = Vec::new();
        for (&(k, i, j), v) in &self.c {
            consts.push((k, i, j, v.eval(bindings)?));
        }
        let g = LieAlgebra::from_constants(self.dim, consts)?;
        g.with_names(self.names.clone())
    }

    /// Matrix of d: Λ² → Λ³ in the lex bases, with the index lists.
    pub fn d2_matrix(&self) -> (Matrix<Scalar>, Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let cols = multi_indices(self.dim, 2);
        let rows = multi_indices(self.dim, 3);
        let row_pos: HashMap<&Vec<usize>, usize> =
            rows.iter().enumerate().map(|(n, r)| (r, n)).collect();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (col, idx) in cols.iter().enumerate() {
            let df = self.d(&KForm::basis(self.dim, idx));
            for (r, v) in df.terms() {
                m[(row_pos[r], col)] = v.clone();
            }
        }
        (m, rows, cols)
    }
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Strictly increasing index tuples of length k in lex order.
pub fn multi_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, k, 0, &mut Vec::new(), &mut out);
    out
}

/// A maximal linearly independent subset, keeping the input order.
pub fn independent_subset(vs: &[Vector]) -> Vec<Vector> {
    // incremental echelon form: each reduced row has a leading 1 at its pivot
    let mut echelon: Vec<(usize, Vector)> = Vec::new();
    let mut kept = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for (p, row) in &echelon {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (a, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&f * b);
                }
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            let inv = w[p].inv().expect("nonzero pivot");
            for a in w.iter_mut() {
                *a = &*a * &inv;
            }
            echelon.push((p, w));
            kept.push(v.clone());
        }
    }
    kept
}
