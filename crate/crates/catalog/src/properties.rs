use hsx_core::connection::{curvature, is_parallel_endo, is_parallel_form, koszul};
use hsx_core::hypersymplectic::{splitting, verify_anticommutation, verify_e_identities, Bindings, HyperTriple};
use hsx_core::structures::{is_closed, TwoForm};
use hsx_core::{CoreError, KForm, LieAlgebra};

use crate::entries::{four_dimensional, kodaira, never_product, eight_dim};
use crate::report::SuiteReport;

fn eval_matrix(m: &TwoForm, b: Option<&Bindings>) -> Result<TwoForm, CoreError> {
    match b {
        Some(b) => Ok(m.try_map(|x| x.eval(b))?),
        None => Ok(m.clone()),
    }
}

/// The invariants every assembled triple satisfies. Connection checks run at
/// `sample` when given, symbolically otherwise.
pub fn triple_invariants(label: &str, t: &HyperTriple, pk: &TwoForm, cs: &TwoForm, sample: Option<&Bindings>) -> SuiteReport {
    let mut r = SuiteReport::new(label);
    let g = &t.algebra;
    let n = g.dim();
    r.check("omega_2 closed", is_closed(g, &t.omega2), "");
    r.check_result("JE = -EJ", verify_anticommutation(&t.j, &t.e, pk, cs), |ok| (*ok, String::new()));
    let l = verify_e_identities(&t.j, &t.e, &t.metric, cs);
    r.check("g(JX,JY) = g(X,Y) and g(EX,EY) = -g(X,Y)", l.first && l.second && l.consistent(), "");
    r.check_result("eigenspaces of E", splitting(g, pk, cs, &t.e), |s| {
        (s.all_ok(n), format!("dims {:?}, kernels {:?}, subalgebras {:?}", s.dims(), s.kernels_agree, s.subalgebra))
    });
    let parts = (|| -> Result<_, CoreError> {
        let ev = |m: &TwoForm| eval_matrix(m, sample);
        let metric = ev(&t.metric)?;
        let alg = match sample {
            Some(b) => g.eval(b)?,
            None => g.clone(),
        };
        let conn = koszul(&alg, &metric)?;
        Ok((alg, metric, conn, ev(&t.j)?, ev(&t.e)?, [ev(&t.omega1)?, ev(&t.omega2)?, ev(&t.omega3)?]))
    })();
    if let Some((alg, metric, conn, j, e, omegas)) = r.check_result("Levi-Civita connection", parts, |_| (true, String::new())) {
        r.check("torsion-free and metric", conn.is_torsion_free(&alg) && conn.is_metric(&metric), "");
        let curv = curvature(&conn, &alg);
        r.check("curvature antisymmetric, first Bianchi", curv.is_antisymmetric() && curv.satisfies_bianchi(), "");
        r.check("J and E parallel", is_parallel_endo(&conn, &j) && is_parallel_endo(&conn, &e), "");
        r.check("omega_1, omega_2, omega_3 parallel", omegas.iter().all(|w| is_parallel_form(&conn, w)), "");
    }
    r
}

/// d² = 0 on every generator of every catalog algebra.
pub fn d_squared(label: &str, g: &LieAlgebra) -> (bool, String) {
    let n = g.dim();
    let bad: Vec<usize> = (0..n).filter(|&k| !g.d(&g.de(k)).is_zero()).collect();
    (bad.is_empty(), if bad.is_empty() { format!("{label}: dim {n}") } else { format!("{label}: d(de{}) != 0", bad[0] + 1) })
}

pub fn run_d_squared() -> SuiteReport {
    let mut r = SuiteReport::new("d^2 = 0");
    for e in four_dimensional() {
        for v in e.points() {
            if let Ok(g) = e.algebra_at(v.as_ref()) {
                let (ok, d) = d_squared(e.label, &g);
                r.check(format!("{} {}", e.label, v.map_or("symbolic".into(), |x| x.to_string())), ok, d);
            }
        }
    }
    for (label, g) in [
        ("h", eight_dim::algebra()),
        ("h_4+R^2", kodaira::algebra()),
        ("4-step example", never_product::algebra()),
    ] {
        let (ok, d) = d_squared(label, &g);
        r.check(label, ok, d);
        // d(a∧b) = da∧b − a∧db on 1-forms
        let a = KForm::basis(g.dim(), &[0]);
        let b = KForm::basis(g.dim(), &[g.dim() - 1]);
        let lhs = g.d(&a.wedge(&b));
        let rhs = g.d(&a).wedge(&b).sub(&a.wedge(&g.d(&b)));
        r.check(format!("{label}: Leibniz"), lhs == rhs, "");
    }
    r
}
