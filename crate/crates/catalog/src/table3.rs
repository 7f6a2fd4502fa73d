use hsx_core::hypersymplectic::{almost_product_test, assemble_triple, build_e, AlmostProduct, HyperTriple};
use hsx_core::structures::{is_nondegenerate, Endo, Symmetry, TwoForm, TwoFormFamily};
use hsx_core::{CoreError, LieAlgebra, Scalar};
use hsx_exact::Rational;

use crate::entries::{entry, four_dimensional, rat, CatalogEntry};
use crate::report::SuiteReport;
use crate::table2::{admits_nondegenerate, at_label, family_for, r2_rigidity, POSITIVES};

pub struct Row {
    pub label: &'static str,
    pub entry: &'static str,
    pub at: &'static [&'static str],
    pub sym: bool,
    pub skew: bool,
}

const NONE: &[&str] = &[];

pub const ROWS: &[Row] = &[
    Row { label: "rh_3", entry: "rh_3", at: NONE, sym: true, skew: true },
    Row { label: "rr_3,0", entry: "rr_3,0", at: NONE, sym: false, skew: true },
    Row { label: "rr'_3,0", entry: "rr'_3,0", at: NONE, sym: false, skew: true },
    Row { label: "r_2r_2", entry: "r_2r_2", at: NONE, sym: false, skew: true },
    Row { label: "r'_2", entry: "r'_2", at: NONE, sym: true, skew: true },
    Row { label: "r_4,-1,-1", entry: "r_4,-1,-1", at: NONE, sym: true, skew: true },
    Row { label: "r'_4,0,delta", entry: "r'_4,0,delta", at: &["1", "2"], sym: false, skew: true },
    Row { label: "d_4,1", entry: "d_4,lambda", at: &["1"], sym: false, skew: true },
    Row { label: "d_4,2", entry: "d_4,lambda", at: &["2"], sym: true, skew: true },
    Row { label: "d_4,1/2", entry: "d_4,lambda", at: &["1/2"], sym: false, skew: true },
    Row { label: "d'_4,delta", entry: "d'_4,delta", at: &["1", "2"], sym: false, skew: true },
];

/// Skew-✗ rows from the pseudo-Kähler classification that Table 3 omits.
pub const SKEW_FREE: &[Row] = &[
    Row { label: "h_4", entry: "h_4", at: NONE, sym: false, skew: false },
    Row { label: "d_4,3", entry: "d_4,lambda", at: &["3"], sym: false, skew: false },
];

#[derive(Clone, Debug, PartialEq)]
pub struct JVerdict {
    pub j: &'static str,
    pub sym: bool,
    pub skew: bool,
}

pub fn j_verdicts(e: &CatalogEntry, v: Option<&Rational>) -> Result<Vec<JVerdict>, CoreError> {
    let mut out = Vec::new();
    for spec in e.structures_at(v) {
        let sym = admits_nondegenerate(&family_for(e, spec.label, v, Symmetry::Symmetric)?)?;
        let skew = admits_nondegenerate(&family_for(e, spec.label, v, Symmetry::Skew)?)?;
        out.push(JVerdict { j: spec.label, sym, skew });
    }
    Ok(out)
}

fn points(row: &Row) -> Vec<Option<Rational>> {
    if row.at.is_empty() {
        vec![None]
    } else {
        row.at.iter().map(|s| Some(rat(s))).collect()
    }
}

/// (Sym, Skew) for a row, across all its sample points.
pub fn row_verdict(row: &Row) -> Result<(bool, bool, Vec<String>), CoreError> {
    let e = entry(row.entry).expect("catalog entry");
    let mut sym = None;
    let mut skew = None;
    let mut detail = Vec::new();
    for v in points(row) {
        let vs = j_verdicts(&e, v.as_ref())?;
        let s = vs.iter().any(|x| x.sym);
        let k = vs.iter().any(|x| x.skew);
        // a row with several sample points must behave uniformly
        if sym.is_some_and(|p| p != s) || skew.is_some_and(|p| p != k) {
            return Err(CoreError::Inconsistent(format!("{} changes verdict across samples", row.label)));
        }
        sym = Some(s);
        skew = Some(k);
        for x in vs {
            detail.push(format!("{}: {}{}", at_label(&e, v.as_ref()), x.j, mark(x.sym, x.skew)));
        }
    }
    Ok((sym.unwrap_or(false), skew.unwrap_or(false), detail))
}

fn mark(sym: bool, skew: bool) -> String {
    let m = |b: bool| if b { "✓" } else { "✗" };
    format!(" sym {} skew {}", m(sym), m(skew))
}

fn check_rows(r: &mut SuiteReport, rows: &[Row]) {
    for row in rows {
        r.check_result(row.label, row_verdict(row), |(s, k, d)| {
            (*s == row.sym && *k == row.skew, format!("({}, {}) expected ({}, {}); {}", tick(*s), tick(*k), tick(row.sym), tick(row.skew), d.join("; ")))
        });
    }
}

fn tick(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

pub fn run() -> SuiteReport {
    let mut r = SuiteReport::new("table 3");
    check_rows(&mut r, ROWS);
    let e = entry("r'_2").expect("catalog entry");
    r.check_result("r'_2: J_i symmetric-only, J and J_-i skew-only", j_verdicts(&e, None), |vs| {
        let find = |n: &str| vs.iter().find(|x| x.j == n).map(|x| (x.sym, x.skew));
        let ok = find("J_i") == Some((true, false)) && find("J") == Some((false, true)) && find("J_-i") == Some((false, true));
        (ok, vs.iter().map(|x| format!("{}{}", x.j, mark(x.sym, x.skew))).collect::<Vec<_>>().join("; "))
    });
    r
}

pub fn run_skew_free() -> SuiteReport {
    let mut r = SuiteReport::new("pseudo-Kähler exclusions");
    check_rows(&mut r, SKEW_FREE);
    r
}

/// Table 2 positives ⊂ Table 3 Sym rows ⊂ Table 1 rows.
pub fn run_inclusions() -> SuiteReport {
    let mut r = SuiteReport::new("inclusions");
    let sym_rows: Vec<&str> = ROWS
        .iter()
        .filter(|row| matches!(row_verdict(row), Ok((true, _, _))))
        .map(|row| row.label)
        .collect();
    let missing: Vec<&str> = POSITIVES
        .iter()
        .filter(|p| p.label != "R^4")
        .map(|p| p.label)
        .filter(|l| !sym_rows.contains(l))
        .collect();
    r.check("non-abelian Table 2 rows are Sym rows of Table 3", missing.is_empty(), format!("missing {missing:?}"));
    let table1: Vec<&str> = four_dimensional().iter().filter(|e| e.in_table1).map(|e| e.label).collect();
    let outside: Vec<&str> = ROWS
        .iter()
        .filter(|row| sym_rows.contains(&row.label))
        .filter(|row| !table1.contains(&row.entry))
        .map(|row| row.label)
        .collect();
    r.check("Sym rows of Table 3 belong to Table 1", outside.is_empty(), format!("outside {outside:?}"));
    r
}

fn combos(k: usize, range: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-range..=range).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn member(basis: &[TwoForm], coeffs: &[i64]) -> TwoForm {
    let n = basis.first().map_or(0, |b| b.rows());
    let mut m = TwoForm::zeros(n, n);
    for (b, c) in basis.iter().zip(coeffs) {
        if *c != 0 {
            m = m.add(&b.scale(&Scalar::from_int(*c)));
        }
    }
    m
}

/// Searches small integer combinations of the two families for a pair whose
/// recursion operator is a product structure.
pub fn hs_witness(g: &LieAlgebra, j: &Endo, cs: &TwoFormFamily, pk: &TwoFormFamily, range: i64) -> Option<(TwoForm, TwoForm, HyperTriple)> {
    let (bs, bp) = (cs.generic_basis(), pk.generic_basis());
    let sym: Vec<TwoForm> = combos(bs.len(), range).iter().map(|c| member(&bs, c)).filter(is_nondegenerate).collect();
    let skew: Vec<TwoForm> = combos(bp.len(), range).iter().map(|c| member(&bp, c)).filter(is_nondegenerate).collect();
    for p in &skew {
        for s in &sym {
            let Ok(e) = build_e(p, s) else { continue };
            if almost_product_test(&e) != AlmostProduct::Yes {
                continue;
            }
            if let Ok(t) = assemble_triple(g, j, p, s, &[]) {
                return Some((p.clone(), s.clone(), t));
            }
        }
    }
    None
}

/// For each catalogued J: a witness when both families are nondegenerate,
/// otherwise the degenerate family is the obstruction.
pub fn hs_search(e: &CatalogEntry, v: Option<&Rational>) -> Result<Option<(&'static str, TwoForm, TwoForm)>, String> {
    let g = e.algebra_at(v).map_err(|x| x.to_string())?;
    for spec in e.structures_at(v) {
        if spec.label == "J_xi" {
            continue;
        }
        let cs = family_for(e, spec.label, v, Symmetry::Symmetric).map_err(|x| x.to_string())?;
        let pk = family_for(e, spec.label, v, Symmetry::Skew).map_err(|x| x.to_string())?;
        let both = admits_nondegenerate(&cs).map_err(|x| x.to_string())? && admits_nondegenerate(&pk).map_err(|x| x.to_string())?;
        if !both {
            continue;
        }
        let j = e.j_at(spec, v).map_err(|x| x.to_string())?;
        match hs_witness(&g, &j, &cs, &pk, 1).or_else(|| hs_witness(&g, &j, &cs, &pk, 2)) {
            Some((p, s, _)) => return Ok(Some((spec.label, p, s))),
            None => return Err(format!("{}: both families nondegenerate but no small witness", spec.label)),
        }
    }
    Ok(None)
}

pub fn hs_points(e: &CatalogEntry) -> Vec<Option<Rational>> {
    match &e.param {
        None => vec![None],
        Some(p) => p.samples.iter().map(|s| Some(rat(s))).collect(),
    }
}

/// Hypersymplectic witnesses exist exactly for ℝ⁴, 𝔯𝔥₃, 𝔯₄,₋₁,₋₁, 𝔡₄,₂.
pub fn run_four_dim_hypersymplectic() -> SuiteReport {
    let mut r = SuiteReport::new("4-dimensional hypersymplectic");
    let expected = ["R^4", "rh_3", "r_4,-1,-1", "d_4,2"];
    for e in four_dimensional() {
        for v in hs_points(&e) {
            let name = match (&v, e.label) {
                (Some(x), "d_4,lambda") => format!("d_4,{x}"),
                _ => e.label.to_string(),
            };
            let at = at_label(&e, v.as_ref());
            let want = expected.contains(&name.as_str());
            r.check_result(format!("{name} ({at})"), hs_search(&e, v.as_ref()), |w| match w {
                Some((j, p, s)) => (want, format!("{j}, pK {}, cs {}", show(p), show(s))),
                None => (!want, "no J with both families nondegenerate".into()),
            });
        }
    }
    r.check_result("r'_2: symmetric J_xi only at xi = i, and J_i is not pseudo-Kähler", r2_rigidity(), |x| {
        let e = entry("r'_2").expect("catalog entry");
        let skew = family_for(&e, "J_i", None, Symmetry::Skew).and_then(|f| admits_nondegenerate(&f));
        let ok = x.points == vec![(Rational::zero(), Rational::one())] && matches!(skew, Ok(false));
        (ok, format!("rank drops at {:?}", x.points))
    });
    r
}

pub fn show(w: &TwoForm) -> String {
    let n = w.rows();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = &w[(i, j)];
            if !c.is_zero() {
                terms.push(format!("({c})e{}{}", i + 1, j + 1));
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
