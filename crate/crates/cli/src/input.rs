//! Command-line inputs: an argument is literal text, a file path, or `-` for
//! stdin. Algebras are Salamon strings or `hsx/1` documents.
//!
//! Two-forms: `14:1; 23:-1/2` lists coefficients of e^{ij} (write `1.12`
//! when an index exceeds 9). Complex structures: `1>2:1; 3>4:-1` gives J on
//! half the basis, `J e1 = e2, J e3 = -e4`; an image may have several
//! components, `1>2:1,4:c`. The rest follows from J² = −Id.

use std::fs;
use std::io::Read;
use std::path::Path;

use hsx_core::json::{from_json, Document};
use hsx_core::salamon::parse_salamon;
use hsx_core::structures::{complex_structure_on_basis, two_form, Endo, TwoForm};
use hsx_core::{CoreError, LieAlgebra, Scalar};
use hsx_exact::Rational;

pub fn read_source(arg: &str) -> Result<String, String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
        return Ok(s);
    }
    if Path::new(arg).is_file() {
        return fs::read_to_string(arg).map_err(|e| format!("reading {arg}: {e}"));
    }
    Ok(arg.to_string())
}

fn document(text: &str) -> Option<Result<Document, CoreError>> {
    let t = text.trim();
    if !t.starts_with('{') {
        return None;
    }
    Some(
        serde_json::from_str(t)
            .map_err(|e| CoreError::Schema { pointer: "/".into(), message: e.to_string() })
            .and_then(|v| from_json(&v)),
    )
}

/// Parsed and checked for Jacobi; a Jacobi failure comes back as
/// `CoreError::Jacobi`.
pub fn algebra(arg: &str) -> Result<LieAlgebra, InputError> {
    let text = read_source(arg).map_err(InputError::Io)?;
    match document(&text) {
        Some(doc) => match doc? {
            Document::Algebra(g) => {
                g.check_jacobi()?;
                Ok(g)
            }
            _ => Err(InputError::Io("expected a lie_algebra document".into())),
        },
        None => Ok(parse_salamon(text.trim())?),
    }
}

fn index_pair(s: &str, dim: usize) -> Result<(usize, usize), String> {
    let s = s.trim();
    let (i, j) = match s.split_once('.') {
        Some((a, b)) => (a.parse::<usize>(), b.parse::<usize>()),
        None if s.len() == 2 => (s[..1].parse(), s[1..].parse()),
        None => return Err(format!("index pair {s:?}: write ij, or i.j above 9")),
    };
    let (i, j) = (i.map_err(|_| format!("bad index in {s:?}"))?, j.map_err(|_| format!("bad index in {s:?}"))?);
    if i == 0 || j == 0 || i > dim || j > dim || i == j {
        return Err(format!("index pair {s:?} outside 1..={dim} or repeated"));
    }
    Ok((i - 1, j - 1))
}

fn coefficient(s: &str) -> Result<Scalar, String> {
    s.trim().parse().map_err(|e| format!("coefficient {s:?}: {e}"))
}

fn items(text: &str) -> impl Iterator<Item = &str> {
    text.split(';').map(str::trim).filter(|x| !x.is_empty())
}

pub fn form(arg: &str, dim: usize) -> Result<TwoForm, InputError> {
    let text = read_source(arg).map_err(InputError::Io)?;
    if let Some(doc) = document(&text) {
        return match doc? {
            Document::TwoForm(m) if m.rows() == dim => Ok(m),
            Document::TwoForm(m) => Err(CoreError::Dimension { expected: dim, found: m.rows() }.into()),
            _ => Err(InputError::Io("expected a two_form document".into())),
        };
    }
    let mut terms = Vec::new();
    for item in items(&text) {
        let (pair, c) = item.split_once(':').ok_or_else(|| InputError::Io(format!("term {item:?}: expected ij:coefficient")))?;
        let (i, j) = index_pair(pair, dim).map_err(InputError::Io)?;
        terms.push((i, j, coefficient(c).map_err(InputError::Io)?));
    }
    Ok(two_form(dim, &terms))
}

pub fn complex_structure(arg: &str, dim: usize) -> Result<Endo, InputError> {
    let text = read_source(arg).map_err(InputError::Io)?;
    if let Some(doc) = document(&text) {
        return match doc? {
            Document::Endo(m) if m.rows() == dim => Ok(m),
            Document::Endo(m) => Err(CoreError::Dimension { expected: dim, found: m.rows() }.into()),
            _ => Err(InputError::Io("expected an endo document".into())),
        };
    }
    let mut images = Vec::new();
    for item in items(&text) {
        let (src, img) = item.split_once('>').ok_or_else(|| InputError::Io(format!("assignment {item:?}: expected i>j:coefficient")))?;
        let i: usize = src.trim().parse().map_err(|_| InputError::Io(format!("bad index {src:?}")))?;
        if i == 0 || i > dim {
            return Err(InputError::Io(format!("index {i} outside 1..={dim}")));
        }
        let mut v = vec![Scalar::zero(); dim];
        for comp in img.split(',') {
            let (k, c) = comp.split_once(':').ok_or_else(|| InputError::Io(format!("component {comp:?}: expected j:coefficient")))?;
            let k: usize = k.trim().parse().map_err(|_| InputError::Io(format!("bad index {k:?}")))?;
            if k == 0 || k > dim {
                return Err(InputError::Io(format!("index {k} outside 1..={dim}")));
            }
            v[k - 1] = coefficient(c).map_err(InputError::Io)?;
        }
        images.push((i - 1, v));
    }
    Ok(complex_structure_on_basis(dim, &images)?)
}

/// `NAME=RATIONAL`.
pub fn binding(s: &str) -> Result<(String, Rational), String> {
    let (n, v) = s.split_once('=').ok_or_else(|| format!("{s:?}: expected NAME=RATIONAL"))?;
    let n = n.trim();
    if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(format!("{n:?} is not a parameter name"));
    }
    let q = hsx_exact::parse_rational_expr(v.trim()).map_err(|e| format!("{v:?} is not rational: {e}"))?;
    Ok((n.to_string(), q))
}

#[derive(Debug)]
pub enum InputError {
    Io(String),
    Core(CoreError),
}

impl From<CoreError> for InputError {
    fn from(e: CoreError) -> Self {
        InputError::Core(e)
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(m) => f.write_str(m),
            InputError::Core(e) => write!(f, "{e}"),
        }
    }
}
