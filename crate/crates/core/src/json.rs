//! The `hsx/1` JSON exchange format.
//!
//! Every document is `{"schema": "hsx/1", "kind", "dim", "payload"}` with
//! kind one of `lie_algebra`, `two_form`, `endo`, `report`. Rational scalars
//! are decimal strings such as `"-3/2"`; other scalars are
//! `{"num": terms, "den": terms}` where a term is `[coeff, [[var, exp], ...]]`.
//! Indices in payloads are 1-based.

use hsx_exact::{MPoly, Matrix, Monomial, RatFun, Rational, Var};
use serde_json::{json, Map, Value};

use crate::error::{CoreError, Result};
use crate::lie::LieAlgebra;
use crate::salamon::print_salamon;
use crate::Scalar;

pub const SCHEMA: &str = "hsx/1";

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Algebra(LieAlgebra),
    TwoForm(Matrix<Scalar>),
    Endo(Matrix<Scalar>),
    Report { dim: usize, payload: Value },
}

fn violation(pointer: &str, message: impl Into<String>) -> CoreError {
    CoreError::Schema {
        pointer: if pointer.is_empty() { "/".into() } else { pointer.into() },
        message: message.into(),
    }
}

fn poly_terms(p: &MPoly) -> Value {
    Value::Array(
        p.terms_by_name()
            .into_iter()
            .map(|(m, c)| {
                let vars: Vec<Value> = m.pairs().iter().map(|(v, e)| json!([v.name(), e])).collect();
                json!([c.to_string(), vars])
            })
            .collect(),
    )
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x.as_rational() {
        Some(q) => Value::String(q.to_string()),
        None => json!({"num": poly_terms(x.numer()), "den": poly_terms(&x.denom())}),
    }
}

fn rational_from_str(s: &str, ptr: &str) -> Result<Rational> {
    let q: Rational = s
        .parse()
        .map_err(|_| violation(ptr, format!("malformed rational {s:?}")))?;
    Ok(q)
}

fn poly_from_json(v: &Value, ptr: &str) -> Result<MPoly> {
    let arr = v.as_array().ok_or_else(|| violation(ptr, "expected a term list"))?;
    let mut p = MPoly::zero();
    for (n, t) in arr.iter().enumerate() {
        let tp = format!("{ptr}/{n}");
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| violation(&tp, "expected [coeff, monomial]"))?;
        let cs = pair[0]
            .as_str()
            .ok_or_else(|| violation(&format!("{tp}/0"), "coefficient must be a string"))?;
        let c = rational_from_str(cs, &format!("{tp}/0"))?;
        let vars = pair[1]
            .as_array()
            .ok_or_else(|| violation(&format!("{tp}/1"), "expected a variable list"))?;
        let mut m = Monomial::one();
        for (k, ve) in vars.iter().enumerate() {
            let vp = format!("{tp}/1/{k}");
            let ve = ve
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| violation(&vp, "expected [name, exponent]"))?;
            let name = ve[0].as_str().ok_or_else(|| violation(&format!("{vp}/0"), "name must be a string"))?;
            let var = Var::try_new(name).map_err(|_| violation(&format!("{vp}/0"), format!("invalid name {name:?}")))?;
            let e = ve[1]
                .as_u64()
                .filter(|&e| e > 0 && e <= u32::MAX as u64)
                .ok_or_else(|| violation(&format!("{vp}/1"), "exponent must be a positive integer"))?;
            m = m.mul(&Monomial::var(var, e as u32));
        }
        p.add_term(m, &c);
    }
    Ok(p)
}

pub fn scalar_from_json(v: &Value, ptr: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(RatFun::from_rational(rational_from_str(s, ptr)?)),
        Value::Object(o) => {
            let num = poly_from_json(o.get("num").ok_or_else(|| violation(ptr, "missing \"num\""))?, &format!("{ptr}/num"))?;
            let den = poly_from_json(o.get("den").ok_or_else(|| violation(ptr, "missing \"den\""))?, &format!("{ptr}/den"))?;
            RatFun::new(num, den).map_err(|_| violation(&format!("{ptr}/den"), "zero denominator"))
        }
        _ => Err(violation(ptr, "scalar must be a string or {num, den}")),
    }
}

fn matrix_to_json(m: &Matrix<Scalar>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

fn matrix_from_json(v: &Value, dim: usize, ptr: &str) -> Result<Matrix<Scalar>> {
    let rows = v.as_array().ok_or_else(|| violation(ptr, "expected an array of rows"))?;
    if rows.len() != dim {
        return Err(violation(ptr, format!("expected {dim} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{ptr}/{i}");
        let r = r.as_array().ok_or_else(|| violation(&rp, "expected a row"))?;
        if r.len() != dim {
            return Err(violation(&rp, format!("expected {dim} entries, found {}", r.len())));
        }
        out.push(
            r.iter()
                .enumerate()
                .map(|(j, x)| scalar_from_json(x, &format!("{rp}/{j}")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out).expect("square rows"))
}

fn document(kind: &str, dim: usize, payload: Value) -> Value {
    json!({"schema": SCHEMA, "kind": kind, "dim": dim, "payload": payload})
}

pub fn algebra_to_json(g: &LieAlgebra) -> Value {
    let consts: Vec<Value> = g
        .constants()
        .map(|(&(k, i, j), v)| json!({"k": k + 1, "i": i + 1, "j": j + 1, "value": scalar_to_json(v)}))
        .collect();
    document(
        "lie_algebra",
        g.dim(),
        json!({"names": g.names(), "structure_equations": print_salamon(g), "constants": consts}),
    )
}

pub fn two_form_to_json(m: &Matrix<Scalar>) -> Value {
    document("two_form", m.rows(), json!({"matrix": matrix_to_json(m)}))
}

/// Column j of the matrix is the image of e_j.
pub fn endo_to_json(m: &Matrix<Scalar>) -> Value {
    document("endo", m.rows(), json!({"matrix": matrix_to_json(m)}))
}

pub fn report_to_json(dim: usize, payload: Value) -> Value {
    document("report", dim, payload)
}

fn index_field(o: &Map<String, Value>, key: &str, dim: usize, ptr: &str) -> Result<usize> {
    let p = format!("{ptr}/{key}");
    let x = o
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| violation(&p, "expected a positive integer index"))? as usize;
    if x == 0 || x > dim {
        return Err(violation(&p, format!("index {x} outside 1..={dim}")));
    }
    Ok(x - 1)
}

pub fn from_json(v: &Value) -> Result<Document> {
    let o = v.as_object().ok_or_else(|| violation("", "document must be an object"))?;
    match o.get("schema") {
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(_) => return Err(violation("/schema", format!("expected {SCHEMA:?}"))),
        None => return Err(violation("/schema", "missing schema field")),
    }
    let dim = o
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| violation("/dim", "expected a non-negative integer"))? as usize;
    let payload = o.get("payload").ok_or_else(|| violation("/payload", "missing payload"))?;
    let kind = o
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| violation("/kind", "expected a string"))?;
    match kind {
        "lie_algebra" => {
            let p = payload.as_object().ok_or_else(|| violation("/payload", "expected an object"))?;
            let list = p
                .get("constants")
                .and_then(Value::as_array)
                .ok_or_else(|| violation("/payload/constants", "expected an array"))?;
            let mut consts = Vec::new();
            for (n, c) in list.iter().enumerate() {
                let ptr = format!("/payload/constants/{n}");
                let co = c.as_object().ok_or_else(|| violation(&ptr, "expected an object"))?;
                let k = index_field(co, "k", dim, &ptr)?;
                let i = index_field(co, "i", dim, &ptr)?;
                let j = index_field(co, "j", dim, &ptr)?;
                if i == j {
                    return Err(violation(&format!("{ptr}/j"), "i and j must differ"));
                }
                let value = scalar_from_json(
                    co.get("value").ok_or_else(|| violation(&format!("{ptr}/value"), "missing value"))?,
                    &format!("{ptr}/value"),
                )?;
                consts.push((k, i, j, value));
            }
            let mut g = LieAlgebra::from_constants(dim, consts)?;
            if let Some(names) = p.get("names") {
                let names: Vec<String> = names
                    .as_array()
                    .and_then(|a| a.iter().map(|x| x.as_str().map(str::to_string)).collect())
                    .ok_or_else(|| violation("/payload/names", "expected an array of strings"))?;
                g = g
                    .with_names(names)
                    .map_err(|_| violation("/payload/names", format!("expected {dim} names")))?;
            }
            Ok(Document::Algebra(g))
        }
        "two_form" | "endo" => {
            let m = payload
                .get("matrix")
                .ok_or_else(|| violation("/payload/matrix", "missing matrix"))?;
            let m = matrix_from_json(m, dim, "/payload/matrix")?;
            if kind == "two_form" {
                if !m.is_antisymmetric() {
                    return Err(violation("/payload/matrix", "two-form matrix is not antisymmetric"));
                }
                Ok(Document::TwoForm(m))
            } else {
                Ok(Document::Endo(m))
            }
        }
        "report" => Ok(Document::Report {
            dim,
            payload: payload.clone(),
        }),
        other => Err(violation("/kind", format!("unknown kind {other:?}"))),
    }
}
