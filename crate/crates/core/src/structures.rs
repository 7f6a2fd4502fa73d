//! Complex structures, Nijenhuis integrability and the linear solvers for
//! closed, symmetric and skew 2-form families.
//!
//! An endomorphism is a matrix whose column j is the image of e_j; a 2-form is
//! its antisymmetric matrix Ω_ij = ω(e_i, e_j).

use std::collections::BTreeSet;

use hsx_exact::linalg::{det, kernel, pfaffian, rank, rref_right, PFAFFIAN_MAX_DIM};
use hsx_exact::{Matrix, RatFun, Var};

use crate::error::{CoreError, Result};
use crate::forms::KForm;
use crate::lie::{unit, LieAlgebra, Vector};
use crate::Scalar;

pub type Endo = Matrix<Scalar>;
pub type TwoForm = Matrix<Scalar>;

/// J² = −Id.
pub fn is_almost_complex(j: &Endo) -> bool {
    j.is_square() && j.dot(j).neg().is_identity()
}

pub fn is_involution(e: &Endo) -> bool {
    e.is_square() && e.dot(e).is_identity()
}

fn check_dim(g: &LieAlgebra, m: &Matrix<Scalar>) -> Result<()> {
    if !m.is_square() || m.rows() != g.dim() {
        return Err(CoreError::Dimension {
            expected: g.dim(),
            found: m.rows(),
        });
    }
    Ok(())
}

/// N_A(e_i, e_j) for all basis pairs, as `table[i][j]`.
pub fn nijenhuis(g: &LieAlgebra, a: &Endo) -> Result<Vec<Vec<Vector>>> {
    check_dim(g, a)?;
    let n = g.dim();
    let a2 = a.dot(a);
    let cols: Vec<Vector> = (0..n).map(|i| a.column(i)).collect();
    let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let xy = g.bracket_basis(i, j);
            let axy = g.bracket(&cols[i], &unit(n, j))?;
            let xay = g.bracket(&unit(n, i), &cols[j])?;
            let axay = g.bracket(&cols[i], &cols[j])?;
            let mut inner = vec![Scalar::zero(); n];
            for k in 0..n {
                inner[k] = &axy[k] + &xay[k];
            }
            let t1 = a2.apply(&xy);
            let t2 = a.apply(&inner);
            let v: Vector = (0..n).map(|k| &(&t2[k] - &t1[k]) - &axay[k]).collect();
            table[j][i] = v.iter().map(|x| -x).collect();
            table[i][j] = v;
        }
    }
    Ok(table)
}

pub fn is_integrable(g: &LieAlgebra, a: &Endo) -> Result<bool> {
    Ok(nijenhuis(g, a)?
        .iter()
        .all(|row| row.iter().all(|v| v.iter().all(|x| x.is_zero()))))
}

/// First basis pair (1-based) where N_A is nonzero, with its value.
pub fn nijenhuis_witness(g: &LieAlgebra, a: &Endo) -> Result<Option<(usize, usize, Vector)>> {
    let t = nijenhuis(g, a)?;
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate().skip(i + 1) {
            if v.iter().any(|x| !x.is_zero()) {
                return Ok(Some((i + 1, j + 1, v.clone())));
            }
        }
    }
    Ok(None)
}

/// Extends J from prescribed values J(v) = w by J(w) = −v. The vectors and
/// their images together must form a basis.
pub fn complete_complex_structure(dim: usize, partial: &[(Vector, Vector)]) -> Result<Endo> {
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for (n, (v, w)) in partial.iter().enumerate() {
        if v.len() != dim || w.len() != dim {
            return Err(CoreError::Dimension {
                expected: dim,
                found: v.len().max(w.len()),
            });
        }
        let pair = Matrix::from_rows(vec![v.clone(), w.clone()]).expect("equal lengths");
        if rank(&pair) < 2 {
            return Err(CoreError::Inconsistent(format!(
                "assignment {} maps a vector into its own span, so J² = −Id fails",
                n + 1
            )));
        }
        src.push(v.clone());
        src.push(w.clone());
        dst.push(w.clone());
        dst.push(v.iter().map(|x| -x).collect());
    }
    if src.len() != dim {
        return Err(CoreError::NonSpanning(format!(
            "{} vectors given for dimension {dim}",
            src.len()
        )));
    }
    let v = Matrix::from_columns(&src).expect("equal lengths");
    let w = Matrix::from_columns(&dst).expect("equal lengths");
    let vinv = hsx_exact::linalg::invert(&v)
        .map_err(|_| CoreError::NonSpanning("vectors and images are linearly dependent".into()))?;
    let j = w.dot(&vinv);
    if !is_almost_complex(&j) {
        return Err(CoreError::Inconsistent("completed map does not square to −Id".into()));
    }
    Ok(j)
}

/// `complete_complex_structure` with basis preimages: `(i, J e_i)`, 0-based.
pub fn complex_structure_on_basis(dim: usize, images: &[(usize, Vector)]) -> Result<Endo> {
    let partial: Vec<(Vector, Vector)> = images.iter().map(|(i, w)| (unit(dim, *i), w.clone())).collect();
    complete_complex_structure(dim, &partial)
}

/// Endomorphism from the images of every basis vector (column j = image of e_j).
pub fn endo_from_columns(cols: &[Vector]) -> Endo {
    Matrix::from_columns(cols).expect("equal lengths")
}

pub fn two_form(dim: usize, terms: &[(usize, usize, Scalar)]) -> TwoForm {
    let mut f = KForm::zero(dim, 2);
    for (i, j, c) in terms {
        f.add_term(&[*i, *j], c.clone());
    }
    f.to_matrix()
}

pub fn as_kform(omega: &TwoForm) -> KForm {
    KForm::from_matrix(omega)
}

pub fn is_closed(g: &LieAlgebra, omega: &TwoForm) -> bool {
    g.d(&as_kform(omega)).is_zero()
}

/// Pfaffian up to dimension 8, determinant beyond; zero exactly when ω is
/// degenerate.
pub fn nondegeneracy_polynomial(omega: &TwoForm) -> Result<Scalar> {
    if omega.rows() <= PFAFFIAN_MAX_DIM {
        Ok(pfaffian(omega)?)
    } else {
        Ok(det(omega)?)
    }
}

pub fn is_nondegenerate(omega: &TwoForm) -> bool {
    nondegeneracy_polynomial(omega).is_ok_and(|p| !p.is_zero())
}

pub fn is_symplectic(g: &LieAlgebra, omega: &TwoForm) -> bool {
    omega.is_antisymmetric() && is_closed(g, omega) && is_nondegenerate(omega)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// ω(JX, Y) = ω(X, JY)
    Symmetric,
    /// ω(JX, Y) = −ω(X, JY)
    Skew,
}

/// Jᵀ Ω ∓ Ω J, which vanishes exactly when J has the given symmetry.
pub fn symmetry_defect(j: &Endo, omega: &TwoForm, mode: Symmetry) -> Matrix<Scalar> {
    let a = j.transpose().dot(omega);
    let b = omega.dot(j);
    match mode {
        Symmetry::Symmetric => a.sub(&b),
        Symmetry::Skew => a.add(&b),
    }
}

pub fn has_symmetry(j: &Endo, omega: &TwoForm, mode: Symmetry) -> bool {
    symmetry_defect(j, omega, mode).is_zero()
}

/// φᵀ Ω φ, that is (φ*ω)(X, Y) = ω(φX, φY).
pub fn transform(phi: &Endo, omega: &TwoForm) -> TwoForm {
    phi.transpose().dot(omega).dot(phi)
}

pub fn pullback(phi: &Endo, omega: &TwoForm) -> Result<TwoForm> {
    if det(phi)?.is_zero() {
        return Err(CoreError::Exact(hsx_exact::ExactError::Singular { det: "0".into() }));
    }
    Ok(transform(phi, omega))
}

/// φ[e_i, e_j] = [φe_i, φe_j] on all basis pairs and φ invertible.
pub fn is_automorphism(g: &LieAlgebra, phi: &Endo) -> Result<bool> {
    check_dim(g, phi)?;
    if det(phi)?.is_zero() {
        return Ok(false);
    }
    let n = g.dim();
    let cols: Vec<Vector> = (0..n).map(|i| phi.column(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.apply(&g.bracket_basis(i, j));
            let rhs = g.bracket(&cols[i], &cols[j])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A span of 2-forms with named coefficients and polynomial side conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormFamily {
    pub dim: usize,
    pub params: Vec<String>,
    pub basis: Vec<TwoForm>,
    /// Each entry must vanish (e.g. (λ−2)·a23).
    pub side_zero: Vec<Scalar>,
    /// Each entry must not vanish.
    pub side_nonzero: Vec<Scalar>,
}

impl TwoFormFamily {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn param_vars(&self) -> Vec<Var> {
        self.params.iter().map(|p| Var::new(p)).collect()
    }

    /// Σ a_f B_f with the parameters as indeterminates.
    pub fn generic(&self) -> TwoForm {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (v, b) in self.param_vars().into_iter().zip(&self.basis) {
            m = m.add(&b.scale(&RatFun::var(v)));
        }
        m
    }

    /// Members whose coefficient is forced to vanish by a side equation over
    /// the parameter field are left out.
    pub fn generic_basis(&self) -> Vec<TwoForm> {
        let forced = self.forced_zero();
        self.basis
            .iter()
            .zip(&self.params)
            .filter(|(_, p)| !forced.contains(p.as_str()))
            .map(|(b, _)| b.clone())
            .collect()
    }

    fn forced_zero(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for eq in &self.side_zero {
            let vars = eq.vars();
            let fam: Vec<&String> = self.params.iter().filter(|p| vars.contains(&Var::new(p))).collect();
            if fam.len() == 1 {
                out.insert(fam[0].as_str());
            }
        }
        out
    }

    pub fn generic_pfaffian(&self) -> Result<Scalar> {
        nondegeneracy_polynomial(&self.generic())
    }

    /// The generic member is nondegenerate, i.e. its Pfaffian is not the zero
    /// polynomial. Side equations are imposed first by dropping the members
    /// they force to zero.
    pub fn generically_nondegenerate(&self) -> Result<bool> {
        let restricted = TwoFormFamily {
            dim: self.dim,
            params: self
                .params
                .iter()
                .filter(|p| !self.forced_zero().contains(p.as_str()))
                .cloned()
                .collect(),
            basis: self.generic_basis(),
            side_zero: Vec::new(),
            side_nonzero: Vec::new(),
        };
        if restricted.is_empty() {
            return Ok(self.dim == 0);
        }
        Ok(!restricted.generic_pfaffian()?.is_zero())
    }

    /// Drops the side equations `keep` rejects together with the members they
    /// force to zero. Used when a factor like (λ+1) cannot vanish on the
    /// admissible parameter range.
    pub fn drop_side_conditions(&self, keep: impl Fn(&Scalar) -> bool) -> TwoFormFamily {
        let mut out = self.clone();
        out.side_zero.clear();
        let mut dropped = BTreeSet::new();
        for eq in &self.side_zero {
            if keep(eq) {
                out.side_zero.push(eq.clone());
                continue;
            }
            let vars = eq.vars();
            for p in &self.params {
                if vars.contains(&Var::new(p)) {
                    dropped.insert(p.clone());
                }
            }
        }
        let (params, basis) = self
            .params
            .iter()
            .zip(&self.basis)
            .filter(|(p, _)| !dropped.contains(*p))
            .map(|(p, b)| (p.clone(), b.clone()))
            .unzip();
        out.params = params;
        out.basis = basis;
        out
    }

    pub fn rename(&self, names: &[&str]) -> TwoFormFamily {
        assert_eq!(names.len(), self.params.len(), "one name per parameter");
        let mut out = self.clone();
        let old = self.param_vars();
        let new: Vec<RatFun> = names.iter().map(|n| RatFun::param(n)).collect();
        let subst = |x: &Scalar| {
            let mut y = x.clone();
            // two passes through fresh names avoid capture when names overlap
            let tmp: Vec<Var> = (0..old.len()).map(|i| Var::new(&format!("__rename{i}"))).collect();
            for (o, t) in old.iter().zip(&tmp) {
                y = y.substitute(*o, &RatFun::var(*t)).expect("variable substitution");
            }
            for (t, n) in tmp.iter().zip(&new) {
                y = y.substitute(*t, n).expect("variable substitution");
            }
            y
        };
        out.side_zero = self.side_zero.iter().map(subst).collect();
        out.side_nonzero = self.side_nonzero.iter().map(subst).collect();
        out.params = names.iter().map(|s| s.to_string()).collect();
        out
    }

    /// Whether ω lies in the span of the basis.
    pub fn contains(&self, omega: &TwoForm) -> bool {
        let flat = |m: &TwoForm| -> Vector { upper(m) };
        let mut rows: Vec<Vector> = self.basis.iter().map(flat).collect();
        let r0 = if rows.is_empty() {
            0
        } else {
            rank(&Matrix::from_rows(rows.clone()).expect("equal lengths"))
        };
        rows.push(flat(omega));
        rank(&Matrix::from_rows(rows).expect("equal lengths")) == r0
    }

    /// Same span as `other` over the scalar field.
    pub fn same_span(&self, other: &[TwoForm]) -> bool {
        let a: Vec<Vector> = self.basis.iter().map(upper).collect();
        let b: Vec<Vector> = other.iter().map(upper).collect();
        if a.is_empty() || b.is_empty() {
            return a.iter().chain(&b).all(|v| v.iter().all(|x| x.is_zero()));
        }
        hsx_exact::linalg::span_eq(&a, &b)
    }
}

/// Upper-triangle coordinates in lex order of (i, j).
pub fn upper(m: &TwoForm) -> Vector {
    let n = m.rows();
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(m[(i, j)].clone());
        }
    }
    v
}

pub fn coefficient_name(prefix: &str, dim: usize, i: usize, j: usize) -> String {
    if dim > 9 {
        format!("{prefix}{}_{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}{}", i + 1, j + 1)
    }
}

/// ker(d: Λ² → Λ³), with coefficients named a_ij after the free lex
/// position. An equation p·a_ij = 0 whose coefficient p depends on the
/// algebra's parameters is kept as a side condition instead of being solved,
/// so that the special parameter values stay visible.
pub fn closed_two_forms(g: &LieAlgebra) -> TwoFormFamily {
    let (m, _, cols) = g.d2_matrix();
    let support = |r: usize| -> Vec<usize> { (0..m.cols()).filter(|&c| !m[(r, c)].is_zero()).collect() };
    let candidate = |r: usize| {
        let nz = support(r);
        (nz.len() == 1 && !m[(r, nz[0])].is_constant()).then(|| nz[0])
    };
    // a candidate column that other equations also constrain is solved normally
    let mut blocked = BTreeSet::new();
    for r in 0..m.rows() {
        if candidate(r).is_none() {
            blocked.extend(support(r));
        }
    }
    let mut keep = Vec::new();
    let mut side_zero = Vec::new();
    for r in 0..m.rows() {
        match candidate(r) {
            Some(c) if !blocked.contains(&c) => {
                let name = coefficient_name("a", g.dim(), cols[c][0], cols[c][1]);
                let p = m[(r, c)].numer().normalize().1;
                side_zero.push(&RatFun::from_poly(p) * &RatFun::param(&name));
            }
            _ if support(r).is_empty() => {}
            _ => keep.push(m.row(r).to_vec()),
        }
    }
    side_zero.dedup();
    let reduced = if keep.is_empty() {
        Matrix::zeros(0, cols.len())
    } else {
        Matrix::from_rows(keep).expect("equal lengths")
    };
    let (_, pivots) = rref_right(&reduced);
    let free: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
    let ker = kernel(&reduced);
    let params = free
        .iter()
        .map(|&c| coefficient_name("a", g.dim(), cols[c][0], cols[c][1]))
        .collect();
    let basis = ker
        .iter()
        .map(|v| {
            let terms: Vec<(usize, usize, Scalar)> = cols
                .iter()
                .zip(v)
                .map(|(ij, x)| (ij[0], ij[1], x.clone()))
                .collect();
            two_form(g.dim(), &terms)
        })
        .collect();
    TwoFormFamily {
        dim: g.dim(),
        params,
        basis,
        side_zero,
        side_nonzero: Vec::new(),
    }
}

/// Linear conditions on the coefficients t_f of Σ t_f B_f: one row per entry of
/// Jᵀ Ω ∓ Ω J.
pub fn constraint_matrix(j: &Endo, basis: &[TwoForm], mode: Symmetry) -> Matrix<Scalar> {
    let n = j.rows();
    let defects: Vec<Matrix<Scalar>> = basis.iter().map(|b| symmetry_defect(j, b, mode)).collect();
    let mut rows = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let row: Vector = defects.iter().map(|d| d[(p, q)].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        Matrix::zeros(0, basis.len())
    } else {
        Matrix::from_rows(rows).expect("equal lengths")
    }
}

/// The members of `family` (its generic part) with the given symmetry with
/// respect to J. Parameters keep the names of the coefficients left free.
pub fn symmetry_constraint_in(j: &Endo, family: &TwoFormFamily, mode: Symmetry) -> TwoFormFamily {
    let forced = family.forced_zero();
    let (names, basis): (Vec<String>, Vec<TwoForm>) = family
        .params
        .iter()
        .zip(&family.basis)
        .filter(|(p, _)| !forced.contains(p.as_str()))
        .map(|(p, b)| (p.clone(), b.clone()))
        .unzip();
    let m = constraint_matrix(j, &basis, mode);
    let (_, pivots) = rref_right(&m);
    let free: Vec<usize> = (0..basis.len()).filter(|c| !pivots.contains(c)).collect();
    let ker = kernel(&m);
    let new_basis = ker
        .iter()
        .map(|v| {
            let mut acc = Matrix::zeros(family.dim, family.dim);
            for (x, b) in v.iter().zip(&basis) {
                if !x.is_zero() {
                    acc = acc.add(&b.scale(x));
                }
            }
            acc
        })
        .collect();
    TwoFormFamily {
        dim: family.dim,
        params: free.iter().map(|&c| names[c].clone()).collect(),
        basis: new_basis,
        side_zero: Vec::new(),
        side_nonzero: family.side_nonzero.clone(),
    }
}

pub fn symmetry_constraint(g: &LieAlgebra, j: &Endo, mode: Symmetry) -> TwoFormFamily {
    symmetry_constraint_in(j, &closed_two_forms(g), mode)
}
