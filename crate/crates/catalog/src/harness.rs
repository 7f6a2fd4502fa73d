use std::fmt;
use std::time::{Duration, Instant};

use hsx_core::hypersymplectic::{assemble_triple, HyperTriple};
use hsx_core::salamon::parse_salamon_unchecked;
use hsx_core::structures::{as_kform, is_closed, is_integrable, Endo, TwoForm, TwoFormFamily};
use hsx_core::{CoreError, LieAlgebra, Scalar};
use hsx_exact::{Matrix, Rational, Var};
use serde_json::{json, Value};

use crate::entries::{endo, entry, four_dimensional, kodaira, never_product, eight_dim as s5, CatalogEntry};
use crate::examples::{kodaira_j, kodaira_pair, kodaira_sample, kodaira_triple, never_product_j};
use crate::properties::{run_d_squared, triple_invariants};
use crate::report::SuiteReport;
use crate::table3::{hs_search, run_inclusions, run_skew_free, run_four_dim_hypersymplectic, row_verdict, ROWS};
use crate::{examples, eight_dim, table1, table2, table3};

/// An algebra of the corpus with the structures and families attached to it.
pub struct Item {
    pub label: String,
    pub equations: String,
    pub structures: Vec<(String, Result<Endo, CoreError>)>,
    pub families: Vec<(String, TwoFormFamily)>,
}

pub struct Corpus {
    pub items: Vec<Item>,
}

fn point_label(e: &CatalogEntry, v: Option<&Rational>) -> String {
    match (v, &e.param) {
        (Some(x), Some(p)) => format!("{} at {}={x}", e.label, p.name),
        _ => e.label.to_string(),
    }
}

impl Corpus {
    pub fn builtin() -> Corpus {
        let mut items = Vec::new();
        for e in four_dimensional() {
            for v in e.points() {
                let Some(g) = e.algebra_at(v.as_ref()).ok().map(|g| hsx_core::salamon::print_salamon(&g)) else { continue };
                let structures = e
                    .structures_at(v.as_ref())
                    .into_iter()
                    .map(|s| (s.label.to_string(), e.j_at(s, v.as_ref())))
                    .collect();
                let families = e.printed_family_at(v.as_ref()).map(|f| vec![("printed".to_string(), f)]).unwrap_or_default();
                items.push(Item {
                    label: point_label(&e, v.as_ref()),
                    equations: g,
                    structures,
                    families,
                });
            }
        }
        items.push(Item {
            label: "h".into(),
            equations: s5::H.into(),
            structures: vec![("J_c".into(), endo(8, s5::J_C))],
            families: vec![
                ("omega_cs".into(), s5::family(8, s5::CS_FAMILY, &[])),
                ("omega_pK".into(), s5::family(8, s5::PK_FAMILY, &[s5::PK_SIDE])),
            ],
        });
        items.push(Item {
            label: "h_4+R^2".into(),
            equations: kodaira::ALGEBRA.into(),
            structures: vec![("J".into(), Ok(kodaira_j()))],
            families: vec![
                ("omega_cs".into(), s5::family(8, kodaira::CS_FAMILY, &[])),
                ("omega_pK".into(), s5::family(8, kodaira::PK_FAMILY, &[])),
            ],
        });
        items.push(Item {
            label: "4-step example".into(),
            equations: never_product::ALGEBRA.into(),
            structures: vec![("J".into(), Ok(never_product_j()))],
            families: vec![
                ("omega_cs".into(), s5::family(8, never_product::CS_FAMILY, &[])),
                ("omega_pK".into(), s5::family(8, never_product::PK_FAMILY, &[])),
            ],
        });
        Corpus { items }
    }

    /// The built-in corpus with one algebra's equations replaced; used to
    /// exercise the precheck.
    pub fn with_equations(label: &str, equations: &str) -> Corpus {
        let mut c = Corpus::builtin();
        for it in c.items.iter_mut().filter(|it| it.label == label) {
            it.equations = equations.to_string();
        }
        c
    }
}

/// A member constrained by a side condition k·p = 0 need only be closed
/// where k vanishes: its differential is k times monomials.
fn closed_on_side(g: &LieAlgebra, f: &TwoFormFamily, p: &str, b: &TwoForm) -> bool {
    let v = Var::new(p);
    let d = g.d(&as_kform(b));
    f.side_zero.iter().filter(|s| s.vars().contains(&v)).any(|s| {
        let Some(k) = s.checked_div(&Scalar::param(p)) else { return false };
        !k.vars().contains(&v) && d.terms().all(|(_, c)| c.checked_div(&k).is_some_and(|q| q.numer().is_term() && q.denom().is_term()))
    })
}

/// Jacobi for every algebra, Nijenhuis for every J, closedness of every
/// family member.
pub fn precheck(corpus: &Corpus) -> SuiteReport {
    let mut r = SuiteReport::new("precheck");
    for it in &corpus.items {
        let parsed = parse_salamon_unchecked(&it.equations);
        let Some(g) = r.check_result(format!("{}: Jacobi", it.label), parsed.and_then(|g| g.check_jacobi().map(|_| g)), |_| (true, String::new())) else {
            continue;
        };
        for (name, j) in &it.structures {
            let ok = j.as_ref().map_err(|e| e.to_string()).and_then(|j| {
                let sq = j.dot(j).add(&Matrix::identity(j.rows()));
                Ok(sq.is_zero() && is_integrable(&g, j).map_err(|e| e.to_string())?)
            });
            r.check_result(format!("{}: {name} complex", it.label), ok, |ok| (*ok, String::new()));
        }
        for (name, f) in &it.families {
            let bad = f
                .params
                .iter()
                .zip(&f.basis)
                .filter(|(p, b)| !is_closed(&g, b) && !closed_on_side(&g, f, p, b))
                .map(|(p, _)| p.clone())
                .collect::<Vec<_>>();
            r.check(format!("{}: {name} closed", it.label), bad.is_empty(), if bad.is_empty() { String::new() } else { format!("not closed: {bad:?}") });
        }
    }
    r
}

/// Four-dimensional hypersymplectic witnesses as assembled triples.
pub fn witness_triples() -> Vec<(String, Result<(HyperTriple, TwoForm, TwoForm), String>)> {
    [("R^4", None), ("rh_3", None), ("r_4,-1,-1", None), ("d_4,lambda", Some(Rational::from_int(2)))]
        .into_iter()
        .map(|(label, v)| {
            let e = entry(label).expect("catalog entry");
            let name = point_label(&e, v.as_ref());
            let t = (|| {
                let (j, pk, cs) = hs_search(&e, v.as_ref())?.ok_or("no witness")?;
                let g = e.algebra_at(v.as_ref()).map_err(|x| x.to_string())?;
                let j = e.j_at(e.structure(j).ok_or("structure")?, v.as_ref()).map_err(|x| x.to_string())?;
                let t = assemble_triple(&g, &j, &pk, &cs, &[]).map_err(|x| x.to_string())?;
                Ok((t, pk, cs))
            })();
            (name, t)
        })
        .collect()
}

/// The structural identities on every triple the catalog assembles.
pub fn run_properties() -> SuiteReport {
    let mut r = SuiteReport::new("properties");
    r.absorb(run_d_squared());
    let (hat, nonflat) = (eight_dim::hat_pk(), eight_dim::nonflat_pk());
    for (name, pk) in [("flat family", &hat), ("non-flat family", &nonflat)] {
        if let Some(t) = r.check_result(format!("{name}: assembles"), eight_dim::triple(pk), |_| (true, String::new())) {
            r.absorb(triple_invariants(name, &t, pk, &eight_dim::hat_cs(), None));
        }
    }
    if let Some(t) = r.check_result("h_4+R^2: assembles", kodaira_triple(), |_| (true, String::new())) {
        let (pk, cs) = kodaira_pair();
        r.absorb(triple_invariants("h_4+R^2", &t, &pk, &cs, Some(&kodaira_sample())));
    }
    for (name, t) in witness_triples() {
        if let Some((t, pk, cs)) = r.check_result(format!("{name}: assembles"), t, |_| (true, String::new())) {
            r.absorb(triple_invariants(&name, &t, &pk, &cs, None));
        }
    }
    if let Some((p, pk4)) = eight_dim::product() {
        for (name, pk8) in [("product, flat", &hat), ("product, non-flat", &nonflat)] {
            let pk = pk8.direct_sum(&pk4);
            let t = assemble_triple(&p.algebra, &p.j, &pk, &p.cs, &s5::c_samples());
            if let Some(t) = r.check_result(format!("{name}: assembles"), t, |_| (true, String::new())) {
                r.absorb(triple_invariants(name, &t, &pk, &p.cs, None));
            }
        }
    } else {
        r.check("product: R^4 witness", false, "");
    }
    r
}

fn table3_all() -> SuiteReport {
    let mut r = table3::run();
    r.absorb(run_skew_free());
    r
}

pub struct Criterion {
    pub number: usize,
    pub name: &'static str,
    pub run: fn() -> SuiteReport,
}

pub const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "Table 1 regeneration", run: table1::run },
    Criterion { number: 2, name: "complex symplectic classification", run: table2::run },
    Criterion { number: 3, name: "r'_2 rigidity", run: table2::run_rigidity },
    Criterion { number: 4, name: "Table 3 pattern", run: table3_all },
    Criterion { number: 5, name: "Kodaira example", run: examples::run_kodaira },
    Criterion { number: 6, name: "4-step example without product structure", run: examples::run_never_product },
    Criterion { number: 7, name: "flat family", run: eight_dim::run_flat },
    Criterion { number: 8, name: "non-flat family", run: eight_dim::run_nonflat },
    Criterion { number: 9, name: "E^2 = Id conditions", run: eight_dim::run_e_squared },
    Criterion { number: 10, name: "property suites", run: run_properties },
    Criterion { number: 11, name: "product construction, n = 3", run: eight_dim::run_product },
];

/// Cross-checks outside the numbered criteria.
pub const CROSS_CHECKS: &[(&str, fn() -> SuiteReport)] = &[
    ("inclusions", run_inclusions),
    ("four-dimensional hypersymplectic", run_four_dim_hypersymplectic),
];

pub struct Outcome {
    pub number: Option<usize>,
    pub name: String,
    pub report: SuiteReport,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        let n = self.report.checks.len();
        let ok = self.report.checks.iter().filter(|c| c.passed).count();
        let tag = self.number.map_or("  ".to_string(), |k| format!("{k:>2}"));
        let verdict = if self.report.passed() { "PASS" } else { "FAIL" };
        format!("{verdict} {tag} {} [{ok}/{n}] {:.2?}", self.name, self.elapsed)
    }
}

fn timed(number: Option<usize>, name: &str, f: fn() -> SuiteReport) -> Outcome {
    let t = Instant::now();
    let report = f();
    Outcome {
        number,
        name: name.to_string(),
        report,
        elapsed: t.elapsed(),
    }
}

pub fn run_criterion(c: &Criterion) -> Outcome {
    timed(Some(c.number), c.name, c.run)
}

/// The precheck, then every suite; suites are skipped when the precheck fails.
pub struct CatalogRun {
    pub precheck: SuiteReport,
    pub outcomes: Vec<Outcome>,
}

impl CatalogRun {
    pub fn passed(&self) -> bool {
        self.precheck.passed() && !self.outcomes.is_empty() && self.outcomes.iter().all(|o| o.report.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "precheck": self.precheck.to_json(),
            "suites": self.outcomes.iter().map(|o| json!({
                "criterion": o.number,
                "name": o.name,
                "passed": o.report.passed(),
                "report": o.report.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub const ALL: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

pub fn run_catalog(corpus: &Corpus, numbers: &[usize], cross_checks: bool) -> CatalogRun {
    let pre = precheck(corpus);
    let mut outcomes = Vec::new();
    if pre.passed() {
        for c in CRITERIA.iter().filter(|c| numbers.contains(&c.number)) {
            outcomes.push(run_criterion(c));
        }
        if cross_checks {
            for (name, f) in CROSS_CHECKS {
                outcomes.push(timed(None, name, *f));
            }
        }
    }
    CatalogRun { precheck: pre, outcomes }
}

impl fmt::Display for CatalogRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.precheck.checks.len();
        if self.precheck.passed() {
            writeln!(f, "precheck: {n} checks passed")?;
        } else {
            writeln!(f, "precheck failed; suites not run")?;
            for c in self.precheck.failures() {
                writeln!(f, "  FAIL {}: {}", c.name, c.detail)?;
            }
        }
        for o in &self.outcomes {
            writeln!(f, "{}", o.line())?;
            for c in o.report.failures() {
                writeln!(f, "       FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Sym/Skew per row of the four-dimensional structure table, recomputed.
pub fn verdict_table() -> String {
    let m = |b: bool| if b { "✓" } else { "✗" };
    let mut out = format!("{:<14} {:<5} {:<5}\n", "algebra", "Sym", "Skew");
    for row in ROWS {
        match row_verdict(row) {
            Ok((s, k, _)) => out.push_str(&format!("{:<14} {:<5} {:<5}\n", row.label, m(s), m(k))),
            Err(e) => out.push_str(&format!("{:<14} error: {e}\n", row.label)),
        }
    }
    out
}

/// Input data of a catalogued construction, for front ends.
pub struct Example {
    pub algebra: hsx_core::LieAlgebra,
    pub j: Endo,
    pub pk: TwoForm,
    pub cs: TwoForm,
}

pub const EXAMPLES: &[&str] = &["flat", "nonflat", "kodaira", "4-step", "R^4", "rh_3", "r_4,-1,-1", "d_4,2"];

pub fn example(name: &str) -> Option<Example> {
    match name {
        "flat" | "nonflat" => Some(Example {
            algebra: s5::algebra(),
            j: s5::j_c(),
            pk: if name == "flat" { eight_dim::hat_pk() } else { eight_dim::nonflat_pk() },
            cs: eight_dim::hat_cs(),
        }),
        "kodaira" => {
            let (pk, cs) = kodaira_pair();
            Some(Example { algebra: kodaira::algebra(), j: kodaira_j(), pk, cs })
        }
        "4-step" => Some(Example {
            algebra: never_product::algebra(),
            j: never_product_j(),
            pk: s5::family(8, never_product::PK_FAMILY, &[]).generic(),
            cs: s5::family(8, never_product::CS_FAMILY, &[]).generic(),
        }),
        _ => {
            let (label, v) = if name == "d_4,2" { ("d_4,lambda", Some(Rational::from_int(2))) } else { (name, None) };
            let e = entry(label)?;
            let (j, pk, cs) = hs_search(&e, v.as_ref()).ok()??;
            Some(Example {
                algebra: e.algebra_at(v.as_ref()).ok()?,
                j: e.j_at(e.structure(j)?, v.as_ref()).ok()?,
                pk,
                cs,
            })
        }
    }
}
