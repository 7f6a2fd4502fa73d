//! The recursion operator E = ω_pK⁻¹ ∘ ω_cs and the hypersymplectic triple
//! (J, E, g) with g(X, Y) = ω_pK(X, JY).
//!
//! As matrices: E = Ω_pK⁻¹ Ω_cs and G = Ω_pK J. The forms of the triple are
//! ω₁ = Jᵀ G, ω₂ = Eᵀ G and ω₃ = (JE)ᵀ G.

use std::collections::HashMap;
use std::fmt;

use hsx_exact::linalg::{det, invert, invert_antisymmetric, kernel, rank, signature, span_eq, PFAFFIAN_MAX_DIM};
use hsx_exact::{Matrix, Rational, Var};
use serde_json::{json, Value};

use crate::error::CoreError;
use crate::json::{algebra_to_json, endo_to_json, scalar_to_json, two_form_to_json};
use crate::lie::{unit, LieAlgebra, Vector};
use crate::structures::{
    has_symmetry, is_almost_complex, is_closed, is_integrable, is_nondegenerate, nijenhuis_witness, Endo, Symmetry,
    TwoForm,
};
use crate::Scalar;

/// Failures of the construction, grouped the way callers report them.
#[derive(Clone, Debug, PartialEq)]
pub enum HsError {
    NotComplex(String),
    Form(String),
    NotAlmostProduct(ProductWitness),
    Invariant(String),
    Core(CoreError),
}

impl fmt::Display for HsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HsError::NotComplex(m) => write!(f, "J is not a complex structure: {m}"),
            HsError::Form(m) => write!(f, "form precondition failed: {m}"),
            HsError::NotAlmostProduct(w) => write!(f, "E is not an almost product structure: {w}"),
            HsError::Invariant(m) => write!(f, "invariant failed: {m}"),
            HsError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for HsError {}

impl From<CoreError> for HsError {
    fn from(e: CoreError) -> Self {
        HsError::Core(e)
    }
}

impl From<hsx_exact::ExactError> for HsError {
    fn from(e: hsx_exact::ExactError) -> Self {
        HsError::Core(CoreError::Exact(e))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProductFailure {
    SquareNotIdentity,
    EqualsIdentity,
    EqualsMinusIdentity,
}

/// First entry (1-based) of E² that differs from the identity, or the
/// reason E is excluded.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductWitness {
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
    pub failure: ProductFailure,
}

impl fmt::Display for ProductWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failure {
            ProductFailure::SquareNotIdentity => {
                write!(f, "(E²)[{},{}] = {}", self.row, self.col, self.value)
            }
            ProductFailure::EqualsIdentity => f.write_str("E = Id"),
            ProductFailure::EqualsMinusIdentity => f.write_str("E = -Id"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlmostProduct {
    Yes,
    No(ProductWitness),
}

fn invert_form(omega: &TwoForm) -> Result<Matrix<Scalar>, HsError> {
    let inv = if omega.rows() <= PFAFFIAN_MAX_DIM {
        invert_antisymmetric(omega)
    } else {
        invert(omega)
    };
    inv.map_err(|_| HsError::Form("ω_pK is degenerate".into()))
}

/// E with ω_pK(EX, ·) = ω_cs(X, ·), i.e. Ω_pK E = Ω_cs.
pub fn build_e(omega_pk: &TwoForm, omega_cs: &TwoForm) -> Result<Endo, HsError> {
    if omega_pk.rows() != omega_cs.rows() {
        return Err(HsError::Core(CoreError::Dimension {
            expected: omega_pk.rows(),
            found: omega_cs.rows(),
        }));
    }
    Ok(invert_form(omega_pk)?.dot(omega_cs))
}

/// G_ij = g(e_i, e_j) = ω_pK(e_i, J e_j).
pub fn metric(j: &Endo, omega_pk: &TwoForm) -> Matrix<Scalar> {
    omega_pk.dot(j)
}

pub fn almost_product_test(e: &Endo) -> AlmostProduct {
    let n = e.rows();
    let sq = e.dot(e);
    for r in 0..n {
        for c in 0..n {
            let want = if r == c { Scalar::one() } else { Scalar::zero() };
            if sq[(r, c)] != want {
                return AlmostProduct::No(ProductWitness {
                    row: r + 1,
                    col: c + 1,
                    value: sq[(r, c)].clone(),
                    failure: ProductFailure::SquareNotIdentity,
                });
            }
        }
    }
    let id = Matrix::<Scalar>::identity(n);
    let fail = |failure| {
        AlmostProduct::No(ProductWitness {
            row: 0,
            col: 0,
            value: Scalar::zero(),
            failure,
        })
    };
    if *e == id {
        fail(ProductFailure::EqualsIdentity)
    } else if *e == id.neg() {
        fail(ProductFailure::EqualsMinusIdentity)
    } else {
        AlmostProduct::Yes
    }
}

fn check_symmetries(j: &Endo, omega_pk: &TwoForm, omega_cs: &TwoForm) -> Result<(), HsError> {
    if !has_symmetry(j, omega_cs, Symmetry::Symmetric) {
        return Err(HsError::Form("J is not symmetric with respect to ω_cs".into()));
    }
    if !has_symmetry(j, omega_pk, Symmetry::Skew) {
        return Err(HsError::Form("J is not skew-symmetric with respect to ω_pK".into()));
    }
    Ok(())
}

/// EJ + JE = 0, after checking that J is symmetric for ω_cs and skew for ω_pK.
pub fn verify_anticommutation(j: &Endo, e: &Endo, omega_pk: &TwoForm, omega_cs: &TwoForm) -> Result<bool, HsError> {
    check_symmetries(j, omega_pk, omega_cs)?;
    Ok(e.dot(j).add(&j.dot(e)).is_zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EIdentities {
    /// g(EX, Y) = −g(X, EY) = ω_cs(X, JY)
    pub first: bool,
    /// g(EX, EY) = −g(X, Y)
    pub second: bool,
    pub e_squared_identity: bool,
}

impl EIdentities {
    /// The second identity holds exactly when E² = Id.
    pub fn consistent(&self) -> bool {
        self.second == self.e_squared_identity
    }
}

pub fn verify_e_identities(j: &Endo, e: &Endo, g: &Matrix<Scalar>, omega_cs: &TwoForm) -> EIdentities {
    let ge = e.transpose().dot(g);
    let minus_eg = g.dot(e).neg();
    let csj = omega_cs.dot(j);
    EIdentities {
        first: ge == minus_eg && minus_eg == csj,
        second: e.transpose().dot(g).dot(e) == g.neg(),
        e_squared_identity: e.dot(e).is_identity(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplittingReport {
    pub plus: Vec<Vector>,
    pub minus: Vec<Vector>,
    /// ker(E ∓ Id) = ker(ω_pK ∓ ω_cs)
    pub kernels_agree: (bool, bool),
    pub subalgebra: (bool, bool),
    pub restricted_nondegenerate: (bool, bool),
}

impl SplittingReport {
    pub fn dims(&self) -> (usize, usize) {
        (self.plus.len(), self.minus.len())
    }

    pub fn all_ok(&self, dim: usize) -> bool {
        self.kernels_agree == (true, true)
            && self.subalgebra == (true, true)
            && self.restricted_nondegenerate == (true, true)
            && self.dims() == (dim / 2, dim / 2)
    }
}

fn closed_under_bracket(g: &LieAlgebra, basis: &[Vector]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let r = basis.len();
    for a in 0..r {
        for b in a + 1..r {
            let x = g.bracket(&basis[a], &basis[b]).expect("dims agree");
            let mut rows = basis.to_vec();
            rows.push(x);
            if rank(&Matrix::from_rows(rows).expect("equal lengths")) > r {
                return false;
            }
        }
    }
    true
}

fn restricted_nondegenerate(omega: &TwoForm, basis: &[Vector]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let b = Matrix::from_columns(basis).expect("equal lengths");
    let restricted = b.transpose().dot(omega).dot(&b);
    det(&restricted).is_ok_and(|d| !d.is_zero())
}

/// 𝔤₊ and 𝔤₋ computed as E-eigenspaces and as kernels of ω_pK ∓ ω_cs.
pub fn splitting(g: &LieAlgebra, omega_pk: &TwoForm, omega_cs: &TwoForm, e: &Endo) -> Result<SplittingReport, HsError> {
    if !e.dot(e).is_identity() {
        return Err(HsError::Invariant("splitting needs E² = Id".into()));
    }
    let n = e.rows();
    let id = Matrix::<Scalar>::identity(n);
    let plus = kernel(&e.sub(&id));
    let minus = kernel(&e.add(&id));
    let kplus = kernel(&omega_pk.sub(omega_cs));
    let kminus = kernel(&omega_pk.add(omega_cs));
    let agree = |a: &[Vector], b: &[Vector]| {
        if a.is_empty() || b.is_empty() {
            a.len() == b.len()
        } else {
            span_eq(a, b)
        }
    };
    Ok(SplittingReport {
        kernels_agree: (agree(&plus, &kplus), agree(&minus, &kminus)),
        subalgebra: (closed_under_bracket(g, &plus), closed_under_bracket(g, &minus)),
        restricted_nondegenerate: (
            restricted_nondegenerate(omega_pk, &plus),
            restricted_nondegenerate(omega_pk, &minus),
        ),
        plus,
        minus,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperTriple {
    pub algebra: LieAlgebra,
    pub j: Endo,
    pub e: Endo,
    pub metric: Matrix<Scalar>,
    pub omega1: TwoForm,
    pub omega2: TwoForm,
    pub omega3: TwoForm,
    /// (bindings, (positive, negative)) for each sampled parameter point.
    pub signatures: Vec<(String, (usize, usize))>,
}

pub type Bindings = HashMap<Var, Rational>;

pub fn bindings_label(b: &Bindings) -> String {
    let mut parts: Vec<String> = b.iter().map(|(v, q)| format!("{}={q}", v.name())).collect();
    parts.sort();
    parts.join(",")
}

/// Signature of the metric after binding every parameter it contains.
pub fn signature_at(metric: &Matrix<Scalar>, b: &Bindings) -> Result<(usize, usize, usize), HsError> {
    let m = metric.try_map(|x| x.eval_rational(b))?;
    Ok(signature(&m)?)
}

fn require(ok: bool, what: &str) -> Result<(), HsError> {
    if ok {
        Ok(())
    } else {
        Err(HsError::Invariant(what.to_string()))
    }
}

/// Runs the whole construction and checks every identity of the triple. The
/// signature is evaluated at each of `samples`; with no parameters present a
/// single evaluation is made.
pub fn assemble_triple(
    g: &LieAlgebra,
    j: &Endo,
    omega_pk: &TwoForm,
    omega_cs: &TwoForm,
    samples: &[Bindings],
) -> Result<HyperTriple, HsError> {
    let n = g.dim();
    for m in [j, omega_pk, omega_cs] {
        if !m.is_square() || m.rows() != n {
            return Err(HsError::Core(CoreError::Dimension {
                expected: n,
                found: m.rows(),
            }));
        }
    }
    if !is_almost_complex(j) {
        return Err(HsError::NotComplex("J² ≠ −Id".into()));
    }
    if let Some((a, b, v)) = nijenhuis_witness(g, j)? {
        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(HsError::NotComplex(format!("N_J(e{a},e{b}) = ({})", v.join(", "))));
    }
    for (name, w) in [("ω_pK", omega_pk), ("ω_cs", omega_cs)] {
        if !w.is_antisymmetric() {
            return Err(HsError::Form(format!("{name} is not antisymmetric")));
        }
        if !is_closed(g, w) {
            return Err(HsError::Form(format!("{name} is not closed")));
        }
        if !is_nondegenerate(w) {
            return Err(HsError::Form(format!("{name} is degenerate")));
        }
    }
    check_symmetries(j, omega_pk, omega_cs)?;
    let e = build_e(omega_pk, omega_cs)?;
    if let AlmostProduct::No(w) = almost_product_test(&e) {
        return Err(HsError::NotAlmostProduct(w));
    }
    let gm = metric(j, omega_pk);
    require(j.dot(&e) == e.dot(j).neg(), "JE = -EJ")?;
    require(gm.is_symmetric(), "g is symmetric")?;
    require(j.transpose().dot(&gm).dot(j) == gm, "g(JX,JY) = g(X,Y)")?;
    require(e.transpose().dot(&gm).dot(&e) == gm.neg(), "g(EX,EY) = -g(X,Y)")?;
    let omega1 = j.transpose().dot(&gm);
    let omega2 = e.transpose().dot(&gm);
    let omega3 = j.dot(&e).transpose().dot(&gm);
    require(omega1 == *omega_pk, "ω1 = g∘J equals ω_pK")?;
    require(omega3 == *omega_cs, "ω3 = g∘(J∘E) equals ω_cs")?;
    require(omega2.is_antisymmetric(), "ω2 is a 2-form")?;
    require(omega2 == j.transpose().dot(&omega3), "ω2(X,Y) = ω3(JX,Y)")?;
    for (name, w) in [("dω1 = 0", &omega1), ("dω2 = 0", &omega2), ("dω3 = 0", &omega3)] {
        require(is_closed(g, w), name)?;
    }
    require(is_integrable(g, &e)?, "N_E = 0")?;
    let half = n / 2;
    let mut signatures = Vec::new();
    let params: Vec<Var> = gm.entries().iter().flat_map(|x| x.vars()).collect();
    let points: Vec<Bindings> = if params.is_empty() && samples.is_empty() {
        vec![Bindings::new()]
    } else {
        samples.to_vec()
    };
    for b in &points {
        let (p, q, z) = signature_at(&gm, b)?;
        if (p, q, z) != (half, half, 0) {
            return Err(HsError::Invariant(format!(
                "signature at {} is ({p},{q}) with {z} null directions",
                bindings_label(b)
            )));
        }
        signatures.push((bindings_label(b), (p, q)));
    }
    Ok(HyperTriple {
        algebra: g.clone(),
        j: j.clone(),
        e,
        metric: gm,
        omega1,
        omega2,
        omega3,
        signatures,
    })
}

/// The machine-readable engine report. Every stage is attempted so that a
/// failure leaves the earlier results in place.
pub fn engine_report(g: &LieAlgebra, j: &Endo, omega_pk: &TwoForm, omega_cs: &TwoForm, samples: &[Bindings]) -> Value {
    let mut out = json!({
        "algebra": algebra_to_json(g),
        "J": endo_to_json(j),
        "omega_pK": two_form_to_json(omega_pk),
        "omega_cs": two_form_to_json(omega_cs),
    });
    let e = match build_e(omega_pk, omega_cs) {
        Ok(e) => e,
        Err(err) => {
            out["error"] = json!(err.to_string());
            out["triple_ok"] = json!(false);
            return out;
        }
    };
    out["E"] = endo_to_json(&e);
    out["E_squared_ok"] = match almost_product_test(&e) {
        AlmostProduct::Yes => json!(true),
        AlmostProduct::No(w) => {
            out["E_squared_witness"] = json!({"row": w.row, "col": w.col, "value": scalar_to_json(&w.value), "reason": w.to_string()});
            json!(false)
        }
    };
    out["je_anticommute"] = match verify_anticommutation(j, &e, omega_pk, omega_cs) {
        Ok(b) => json!(b),
        Err(err) => json!({"precondition": err.to_string()}),
    };
    let gm = metric(j, omega_pk);
    let ids = verify_e_identities(j, &e, &gm, omega_cs);
    out["e_identities"] = json!({"first": ids.first, "second": ids.second, "E_squared_identity": ids.e_squared_identity});
    if let Ok(s) = splitting(g, omega_pk, omega_cs, &e) {
        out["splitting"] = json!({
            "dims": [s.plus.len(), s.minus.len()],
            "kernels_agree": [s.kernels_agree.0, s.kernels_agree.1],
            "subalgebra": [s.subalgebra.0, s.subalgebra.1],
            "restricted_nondegenerate": [s.restricted_nondegenerate.0, s.restricted_nondegenerate.1],
        });
    }
    match assemble_triple(g, j, omega_pk, omega_cs, samples) {
        Ok(t) => {
            out["triple_ok"] = json!(true);
            out["metric"] = two_form_to_json_symmetric(&t.metric);
            out["signature_samples"] = Value::Array(
                t.signatures
                    .iter()
                    .map(|(b, (p, q))| json!({"at": b, "signature": [p, q]}))
                    .collect(),
            );
        }
        Err(err) => {
            out["triple_ok"] = json!(false);
            out["error"] = json!(err.to_string());
        }
    }
    out
}

fn two_form_to_json_symmetric(m: &Matrix<Scalar>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

/// Basis vector helper for callers assembling data by hand.
pub fn basis_vector(dim: usize, i: usize) -> Vector {
    unit(dim, i)
}
