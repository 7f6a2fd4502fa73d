//! Levi-Civita connections of left-invariant metrics, their curvature, and the
//! two completeness criteria: nilpotency of the Segal matrix for flat
//! connections, and polynomial integrability of the geodesic equation.

use std::collections::{BTreeSet, HashMap};

use hsx_exact::linalg::invert;
use hsx_exact::{MPoly, Matrix, Monomial, RatFun, Rational, Var};
use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::json::scalar_to_json;
use crate::lie::{LieAlgebra, Vector};
use crate::structures::{Endo, TwoForm};
use crate::Scalar;

/// Γ stored as one matrix per direction: column j of `nabla[i]` is ∇_{e_i} e_j.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionTable {
    dim: usize,
    nabla: Vec<Matrix<Scalar>>,
}

impl ConnectionTable {
    pub fn zero(dim: usize) -> ConnectionTable {
        ConnectionTable {
            dim,
            nabla: vec![Matrix::zeros(dim, dim); dim],
        }
    }

    /// Builds a table from the nonzero values ∇_{e_i} e_j (0-based).
    pub fn from_values(dim: usize, values: &[(usize, usize, Vector)]) -> Result<ConnectionTable> {
        let mut t = ConnectionTable::zero(dim);
        for (i, j, v) in values {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(CoreError::Dimension {
                    expected: dim,
                    found: v.len().max(i + 1).max(j + 1),
                });
            }
            for (k, x) in v.iter().enumerate() {
                t.nabla[*i][(k, *j)] = x.clone();
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Γ^k_{ij}, 0-based.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.nabla[i][(k, j)]
    }

    pub fn operator(&self, i: usize) -> &Matrix<Scalar> {
        &self.nabla[i]
    }

    pub fn on_basis(&self, i: usize, j: usize) -> Vector {
        self.nabla[i].column(j)
    }

    /// ∇_x y for constant coefficient vectors.
    pub fn covariant(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, v) in self.nabla[i].apply(y).into_iter().enumerate() {
                out[k] = &out[k] + &(xi * &v);
            }
        }
        out
    }

    /// Nonzero ∇_{e_i} e_j as (i, j, vector), 0-based, in lexicographic order.
    pub fn nonzero(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.on_basis(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_torsion_free(&self, g: &LieAlgebra) -> bool {
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| {
                let lhs: Vector = self
                    .on_basis(i, j)
                    .iter()
                    .zip(self.on_basis(j, i))
                    .map(|(a, b)| a - &b)
                    .collect();
                lhs == g.bracket_basis(i, j)
            })
        })
    }

    pub fn is_metric(&self, metric: &Matrix<Scalar>) -> bool {
        self.nabla
            .iter()
            .all(|a| a.transpose().dot(metric).add(&metric.dot(a)).is_zero())
    }
}

fn bilinear(m: &Matrix<Scalar>, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let my = m.apply(y);
    x.iter().zip(&my).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Levi-Civita connection by the Koszul formula
/// 2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y).
pub fn koszul(g: &LieAlgebra, metric: &Matrix<Scalar>) -> Result<ConnectionTable> {
    let n = g.dim();
    if metric.rows() != n || !metric.is_square() {
        return Err(CoreError::Dimension {
            expected: n,
            found: metric.rows(),
        });
    }
    if !metric.is_symmetric() {
        return Err(CoreError::Precondition("metric is not symmetric".into()));
    }
    let inv = invert(metric).map_err(|_| CoreError::Precondition("metric is degenerate".into()))?;
    let br: Vec<Vec<Vector>> = (0..n).map(|i| (0..n).map(|j| g.bracket_basis(i, j)).collect()).collect();
    let e = |i: usize| crate::lie::unit(n, i);
    let half: Scalar = RatFun::from_rational(Rational::frac(1, 2));
    let mut t = ConnectionTable::zero(n);
    for i in 0..n {
        for j in 0..n {
            let lower: Vector = (0..n)
                .map(|k| {
                    let s = &(&bilinear(metric, &br[i][j], &e(k)) - &bilinear(metric, &br[j][k], &e(i)))
                        + &bilinear(metric, &br[k][i], &e(j));
                    &s * &half
                })
                .collect();
            for (k, v) in inv.apply(&lower).into_iter().enumerate() {
                t.nabla[i][(k, j)] = v;
            }
        }
    }
    if !t.is_torsion_free(g) {
        return Err(CoreError::Inconsistent("Koszul output has torsion".into()));
    }
    if !t.is_metric(metric) {
        return Err(CoreError::Inconsistent("Koszul output is not metric".into()));
    }
    Ok(t)
}

/// R(e_i, e_j) as endomorphisms; component R^l_{kij} is `operator(i, j)[(l, k)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    dim: usize,
    ops: Vec<Matrix<Scalar>>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operator(&self, i: usize, j: usize) -> &Matrix<Scalar> {
        &self.ops[i * self.dim + j]
    }

    pub fn component(&self, l: usize, k: usize, i: usize, j: usize) -> &Scalar {
        &self.operator(i, j)[(l, k)]
    }

    /// R(e_i, e_j) e_k.
    pub fn apply(&self, i: usize, j: usize, k: usize) -> Vector {
        self.operator(i, j).column(k)
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(|m| m.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| *self.operator(i, j) == self.operator(j, i).neg()))
    }

    pub fn satisfies_bianchi(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self
                        .apply(i, j, k)
                        .iter()
                        .zip(self.apply(j, k, i))
                        .zip(self.apply(k, i, j))
                        .all(|((a, b), c)| (&(a + &b) + &c).is_zero());
                    if !s {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]} on left-invariant fields.
pub fn curvature(conn: &ConnectionTable, g: &LieAlgebra) -> CurvatureTensor {
    let n = conn.dim;
    let mut ops = vec![Matrix::zeros(n, n); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&conn.nabla[i], &conn.nabla[j]);
            let mut r = a.dot(b).sub(&b.dot(a));
            for (m, c) in g.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    r = r.sub(&conn.nabla[m].scale(c));
                }
            }
            ops[j * n + i] = r.neg();
            ops[i * n + j] = r;
        }
    }
    CurvatureTensor { dim: n, ops }
}

/// Ric(X, Y) = trace(Z ↦ R(Z, X) Y).
pub fn ricci(curv: &CurvatureTensor) -> Matrix<Scalar> {
    let n = curv.dim;
    Matrix::from_fn(n, n, |a, b| {
        (0..n).fold(Scalar::zero(), |acc, z| &acc + curv.component(z, b, z, a))
    })
}

pub fn is_flat(conn: &ConnectionTable, g: &LieAlgebra) -> bool {
    curvature(conn, g).is_zero()
}

/// ∇_{e_i} A = [∇_{e_i}, A] for each i.
pub fn covariant_derivative_endo(conn: &ConnectionTable, a: &Endo) -> Vec<Endo> {
    conn.nabla.iter().map(|m| m.dot(a).sub(&a.dot(m))).collect()
}

/// (∇_{e_i} ω)(Y, Z) = −ω(∇_{e_i} Y, Z) − ω(Y, ∇_{e_i} Z) as matrices.
pub fn covariant_derivative_form(conn: &ConnectionTable, omega: &TwoForm) -> Vec<TwoForm> {
    conn.nabla
        .iter()
        .map(|m| m.transpose().dot(omega).add(&omega.dot(m)).neg())
        .collect()
}

pub fn is_parallel_endo(conn: &ConnectionTable, a: &Endo) -> bool {
    covariant_derivative_endo(conn, a).iter().all(|m| m.is_zero())
}

pub fn is_parallel_form(conn: &ConnectionTable, omega: &TwoForm) -> bool {
    covariant_derivative_form(conn, omega).iter().all(|m| m.is_zero())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tensor {
    Endo(Endo),
    Form(TwoForm),
}

pub fn is_parallel(conn: &ConnectionTable, t: &Tensor) -> bool {
    match t {
        Tensor::Endo(a) => is_parallel_endo(conn, a),
        Tensor::Form(w) => is_parallel_form(conn, w),
    }
}

/// Names of the fresh symbols used for a generic vector.
pub fn generic_vector(dim: usize, prefix: &str) -> Vec<Var> {
    (1..=dim).map(|i| Var::new(&format!("{prefix}{i}"))).collect()
}

/// Matrix of y ↦ ∇_y x for x = Σ x_i e_i with symbolic x_i.
pub fn segal_matrix(conn: &ConnectionTable) -> Matrix<Scalar> {
    let n = conn.dim;
    let xs: Vec<Scalar> = generic_vector(n, "x").into_iter().map(RatFun::var).collect();
    Matrix::from_fn(n, n, |k, j| {
        (0..n).fold(Scalar::zero(), |acc, i| &acc + &(&xs[i] * conn.gamma(k, j, i)))
    })
}

pub fn segal_complete(conn: &ConnectionTable, g: &LieAlgebra) -> Result<bool> {
    if !is_flat(conn, g) {
        return Err(CoreError::Precondition("the Segal criterion needs a flat connection".into()));
    }
    Ok(segal_matrix(conn).pow(conn.dim as u32).is_zero())
}

/// x_k' = rhs[k] with right-hand sides in the symbols `vars`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeSystem {
    pub vars: Vec<Var>,
    pub rhs: Vec<Scalar>,
}

impl OdeSystem {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// Indices of the unknowns occurring in each right-hand side.
    pub fn dependencies(&self) -> Vec<BTreeSet<usize>> {
        self.rhs
            .iter()
            .map(|r| {
                let vs = r.vars();
                (0..self.dim()).filter(|j| vs.contains(&self.vars[*j])).collect()
            })
            .collect()
    }

    /// x_i' involves only x_j with j < i.
    pub fn is_triangular(&self) -> bool {
        self.dependencies()
            .iter()
            .enumerate()
            .all(|(i, d)| d.iter().all(|j| *j < i))
    }

    /// An order in which each right-hand side only uses earlier unknowns.
    pub fn solve_order(&self) -> Result<Vec<usize>> {
        let deps = self.dependencies();
        let n = self.dim();
        if let Some(i) = (0..n).find(|i| deps[*i].contains(i)) {
            return Err(CoreError::Unsolvable(format!(
                "{}' depends on {} itself; not solvable by integration",
                self.vars[i].name(),
                self.vars[i].name()
            )));
        }
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n).find(|i| !done[*i] && deps[*i].iter().all(|j| done[*j]));
            match next {
                Some(i) => {
                    done[i] = true;
                    order.push(i);
                }
                None => {
                    let stuck: Vec<&str> = (0..n).filter(|i| !done[*i]).map(|i| self.vars[i].name()).collect();
                    return Err(CoreError::Unsolvable(format!(
                        "cyclic dependency among {}; not solvable by integration",
                        stuck.join(", ")
                    )));
                }
            }
        }
        Ok(order)
    }
}

/// The geodesic equation x' = −∇_x x, i.e. x_k' = −Σ Γ^k_{ij} x_i x_j.
pub fn geodesic_ode(conn: &ConnectionTable) -> OdeSystem {
    let n = conn.dim;
    let vars = generic_vector(n, "x");
    let xs: Vec<Scalar> = vars.iter().map(|v| RatFun::var(*v)).collect();
    let rhs = (0..n)
        .map(|k| {
            let mut s = Scalar::zero();
            for i in 0..n {
                for j in 0..n {
                    let c = conn.gamma(k, i, j);
                    if !c.is_zero() {
                        s = &s - &(&(c * &xs[i]) * &xs[j]);
                    }
                }
            }
            s
        })
        .collect();
    OdeSystem { vars, rhs }
}

/// The antiderivative in `t` vanishing at t = 0 of a polynomial in `t`.
fn integrate(f: &Scalar, t: Var) -> Result<Scalar> {
    let den = f.denom();
    if den.vars().contains(&t) {
        return Err(CoreError::Unsolvable("integrand is not polynomial in t".into()));
    }
    let mut num = MPoly::zero();
    for (m, c) in f.numer().terms() {
        let e = m.exponent(t);
        let mut pairs: Vec<(Var, u32)> = m.pairs().iter().copied().filter(|(v, _)| *v != t).collect();
        pairs.push((t, e + 1));
        let c = c * &Rational::frac(1, i64::from(e) + 1);
        num.add_term(Monomial::from_pairs(pairs), &c);
    }
    Ok(RatFun::new(num, den)?)
}

/// Initial-value symbol for the i-th unknown (`x1_0`, `x2_0`, ...).
pub fn initial_symbol(v: Var) -> Var {
    Var::new(&format!("{}_0", v.name()))
}

/// Solves by iterated integration along the dependency order. Each result is
/// a polynomial in `t` over the field extended by the initial-value symbols;
/// the solution is differentiated back against the system before returning.
pub fn polynomial_solve(sys: &OdeSystem, t: Var) -> Result<Vec<Scalar>> {
    let order = sys.solve_order()?;
    let n = sys.dim();
    let mut sol: Vec<Option<Scalar>> = vec![None; n];
    for &i in &order {
        let mut f = sys.rhs[i].clone();
        for j in 0..n {
            if let Some(s) = &sol[j] {
                f = f.substitute(sys.vars[j], s)?;
            }
        }
        let x0 = RatFun::var(initial_symbol(sys.vars[i]));
        sol[i] = Some(&x0 + &integrate(&f, t)?);
    }
    let sol: Vec<Scalar> = sol.into_iter().map(|s| s.expect("every index is ordered")).collect();
    for i in 0..n {
        let mut f = sys.rhs[i].clone();
        for j in 0..n {
            f = f.substitute(sys.vars[j], &sol[j])?;
        }
        if sol[i].derivative(t) != f {
            return Err(CoreError::Inconsistent(format!("{}' does not match", sys.vars[i].name())));
        }
        let at0 = sol[i].substitute(t, &Scalar::zero())?;
        if at0 != RatFun::var(initial_symbol(sys.vars[i])) {
            return Err(CoreError::Inconsistent(format!("{}(0) does not match", sys.vars[i].name())));
        }
    }
    Ok(sol)
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn connection_table_json(conn: &ConnectionTable) -> Value {
    Value::Array(
        conn.nonzero()
            .into_iter()
            .map(|(i, j, v)| json!({"i": i + 1, "j": j + 1, "value": vector_json(&v)}))
            .collect(),
    )
}

/// The connection report. Completeness uses the Segal criterion when the
/// connection is flat and polynomial geodesics otherwise; an undecided
/// verdict is `null`.
pub fn connection_report(g: &LieAlgebra, metric: &Matrix<Scalar>, tensors: &[(&str, Tensor)]) -> Result<Value> {
    let conn = koszul(g, metric)?;
    let curv = curvature(&conn, g);
    let flat = curv.is_zero();
    let ric = ricci(&curv);
    let parallel: serde_json::Map<String, Value> = tensors
        .iter()
        .map(|(name, t)| (name.to_string(), json!(is_parallel(&conn, t))))
        .collect();
    let completeness = if flat {
        json!({"criterion": "segal", "verdict": segal_complete(&conn, g)?})
    } else {
        let sys = geodesic_ode(&conn);
        match polynomial_solve(&sys, Var::new("t")) {
            Ok(sol) => json!({
                "criterion": "polynomial_geodesics",
                "verdict": true,
                "solution": vector_json(&sol),
            }),
            Err(CoreError::Unsolvable(why)) => json!({
                "criterion": "polynomial_geodesics",
                "verdict": Value::Null,
                "reason": why,
            }),
            Err(e) => return Err(e),
        }
    };
    Ok(json!({
        "connection_table": connection_table_json(&conn),
        "flat": flat,
        "ricci_flat": ric.is_zero(),
        "parallel_tensors": parallel,
        "completeness": completeness,
    }))
}

/// Evaluates every Γ at the given parameter values.
pub fn eval_connection(conn: &ConnectionTable, b: &HashMap<Var, Rational>) -> Result<ConnectionTable> {
    let nabla = conn
        .nabla
        .iter()
        .map(|m| m.try_map(|x| x.eval(b)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(ConnectionTable { dim: conn.dim, nabla })
}
