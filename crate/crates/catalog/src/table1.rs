use hsx_core::structures::{as_kform, closed_two_forms, is_almost_complex, is_integrable, TwoFormFamily};
use hsx_core::Scalar;
use hsx_exact::{Rational, Var};

use crate::entries::{four_dimensional, scalar, CatalogEntry};
use crate::report::SuiteReport;
use crate::util::{agrees_up_to_unit, coefficient_vars, settle_on_domain};

fn point_label(value: Option<&Rational>, entry: &CatalogEntry) -> String {
    match (value, &entry.param) {
        (Some(v), Some(p)) => format!("{}={v}", p.name),
        _ => "symbolic".into(),
    }
}

/// Closedness equations of the printed generic form, as nonzero scalars.
fn closedness_equations(entry: &CatalogEntry, fam: &TwoFormFamily) -> Result<Vec<Scalar>, String> {
    let g = entry.algebra().map_err(|e| e.to_string())?;
    let d = g.d(&as_kform(&fam.generic()));
    Ok(d.terms().map(|(_, c)| c.clone()).filter(|c| !c.is_zero()).collect())
}

/// Each closedness equation is a constant multiple of a printed side
/// condition and every side condition occurs.
fn side_conditions_match(found: &[Scalar], printed: &[Scalar]) -> bool {
    let prop = |a: &Scalar, b: &Scalar| a.checked_div(b).is_some_and(|r| r.is_constant());
    found.iter().all(|f| printed.iter().any(|p| prop(f, p))) && printed.iter().all(|p| found.iter().any(|f| prop(f, p)))
}

fn shown(eqs: &[Scalar]) -> Vec<String> {
    eqs.iter().map(|e| format!("{e} = 0")).collect()
}

pub fn run_entry(entry: &CatalogEntry) -> SuiteReport {
    let mut r = SuiteReport::new(entry.label);
    let dim = entry.dim();
    if !entry.in_table1 {
        if let Ok(g) = entry.algebra() {
            let fam = closed_two_forms(&g);
            r.check("all 2-forms closed", fam.len() == dim * (dim - 1) / 2, format!("{} closed", fam.len()));
        }
    }
    let printed = entry.printed_family();
    match closedness_equations(entry, &printed) {
        Ok(eqs) => {
            let ok = side_conditions_match(&eqs, &printed.side_zero);
            r.check("side conditions are the closedness constraints", ok, shown(&eqs).join(", "));
        }
        Err(e) => {
            r.check("side conditions are the closedness constraints", false, e);
        }
    }
    for value in entry.points() {
        let at = point_label(value.as_ref(), entry);
        let g = match entry.algebra_at(value.as_ref()) {
            Ok(g) => g,
            Err(e) => {
                r.check(format!("{at}: algebra"), false, e.to_string());
                continue;
            }
        };
        if !r.check(format!("{at}: Jacobi"), g.is_jacobi(), "") {
            continue;
        }
        let fam = match entry.printed_family_at(value.as_ref()) {
            Ok(f) if value.is_none() => settle_on_domain(&f, entry.param.as_ref()),
            Ok(f) => f,
            Err(e) => {
                r.check(format!("{at}: printed family"), false, e.to_string());
                continue;
            }
        };
        let computed = closed_two_forms(&g);
        let computed = if value.is_none() {
            settle_on_domain(&computed, entry.param.as_ref())
        } else {
            computed
        };
        r.check(
            format!("{at}: closed 2-forms span the printed family"),
            fam.same_span(&computed.basis) && side_conditions_match(&computed.side_zero, &fam.side_zero),
            format!("dim {} vs printed {}, side conditions {:?}", computed.len(), fam.len(), shown(&computed.side_zero)),
        );
        let dropped: Vec<String> = printed.params.iter().filter(|p| !fam.params.contains(p)).cloned().collect();
        let mut condition = scalar(entry.nondegeneracy);
        for name in &dropped {
            condition = condition.substitute(Var::new(name), &Scalar::zero()).expect("substitution");
        }
        if let Some(v) = &value {
            condition = condition.eval(&entry.bindings(v)).expect("evaluation");
        }
        let param = if value.is_some() { None } else { entry.param.as_ref() };
        r.check_result(format!("{at}: nondegeneracy condition"), fam.generic_pfaffian(), |pf| {
            agrees_up_to_unit(pf, &condition, &coefficient_vars(&fam), param)
        });
        for spec in entry.structures_at(value.as_ref()) {
            r.check_result(
                format!("{at}: {} integrable", spec.label),
                entry.j_at(spec, value.as_ref()).map_err(|e| e.to_string()).and_then(|j| {
                    let sq = is_almost_complex(&j);
                    is_integrable(&g, &j).map(|n| (sq, n)).map_err(|e| e.to_string())
                }),
                |(sq, n)| (*sq && *n, format!("J^2 = -Id: {sq}, N_J = 0: {n}")),
            );
        }
    }
    r
}

pub fn run() -> SuiteReport {
    let mut r = SuiteReport::new("table 1");
    for e in four_dimensional() {
        r.absorb(run_entry(&e));
    }
    r
}
