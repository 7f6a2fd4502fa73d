use hsx_core::hypersymplectic::{almost_product_test, assemble_triple, build_e, AlmostProduct, Bindings, HsError, HyperTriple};
use hsx_core::structures::{
    complete_complex_structure, has_symmetry, is_closed, is_integrable, symmetry_constraint, Endo, Symmetry, TwoForm,
    TwoFormFamily,
};
use hsx_core::{LieAlgebra, Scalar, Vector};
use hsx_exact::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entries::{bind, endo, kodaira, never_product, scalar, eight_dim::family, vector};
use crate::properties::triple_invariants;
use crate::report::SuiteReport;

fn printed_family_checks(r: &mut SuiteReport, g: &LieAlgebra, j: &Endo, fam: &TwoFormFamily, mode: Symmetry, name: &str) {
    let closed = fam.basis.iter().all(|b| is_closed(g, b));
    let sym = fam.basis.iter().all(|b| has_symmetry(j, b, mode));
    r.check(format!("{name}: printed members closed and compatible with J"), closed && sym, "");
    let computed = symmetry_constraint(g, j, mode);
    r.check(
        format!("{name}: printed family is the general solution"),
        fam.same_span(&computed.basis),
        format!("computed dim {}, printed {}", computed.len(), fam.len()),
    );
}

/// J on 𝔥₄ ⊕ ℝ², completed from its values on e1, e3, e5, e6.
pub fn kodaira_j() -> Endo {
    let pairs: Vec<(Vector, Vector)> = kodaira::J_PAIRS
        .iter()
        .map(|(i, t)| (vector(8, &[(*i, "1")]), vector(8, t)))
        .collect();
    complete_complex_structure(8, &pairs).expect("catalog J")
}

/// The two printed families with a_ij = b_ij and b14 = 0.
pub fn kodaira_pair() -> (TwoForm, TwoForm) {
    let cs = family(8, kodaira::CS_FAMILY, &[]);
    let pk = family(8, kodaira::PK_FAMILY, &[]);
    let rename = |f: &TwoFormFamily, zero: &[&str]| -> TwoForm {
        let mut w = TwoForm::zeros(8, 8);
        for (p, b) in f.params.iter().zip(&f.basis) {
            if zero.contains(&p.as_str()) {
                continue;
            }
            let name = if p.starts_with('b') && p != "b12" && p != "b34" { p.replacen('b', "a", 1) } else { p.clone() };
            w = w.add(&b.scale(&Scalar::param(&name)));
        }
        w
    };
    (rename(&pk, &["b14"]), rename(&cs, &["a14"]))
}

pub fn kodaira_sample() -> Bindings {
    bind(&[("a13", "1"), ("a15", "-2"), ("a16", "1"), ("a17", "3"), ("a18", "2"), ("b12", "5"), ("b34", "-1")])
}

pub fn kodaira_triple() -> Result<HyperTriple, HsError> {
    let (pk, cs) = kodaira_pair();
    assemble_triple(&kodaira::algebra(), &kodaira_j(), &pk, &cs, &[kodaira_sample()])
}

pub fn run_kodaira() -> SuiteReport {
    let mut r = SuiteReport::new("h_4+R^2");
    let g = kodaira::algebra();
    let j = kodaira_j();
    r.check("dimension 8, 2-step nilpotent", g.dim() == 8 && g.nilpotency_step() == Some(2), format!("{:?}", g.lower_central_series()));
    r.check_result("J integrable", is_integrable(&g, &j), |ok| (*ok, String::new()));
    r.check("J e5 = 2e7, J e6 = -e8", j.column(4) == vector(8, &[(7, "2")]) && j.column(5) == vector(8, &[(8, "-1")]), "");
    printed_family_checks(&mut r, &g, &j, &family(8, kodaira::CS_FAMILY, &[]), Symmetry::Symmetric, "omega_cs");
    printed_family_checks(&mut r, &g, &j, &family(8, kodaira::PK_FAMILY, &[]), Symmetry::Skew, "omega_pK");
    let (pk, cs) = kodaira_pair();
    if let Some(e) = r.check_result("E = omega_pK^-1 omega_cs", build_e(&pk, &cs), |_| (true, String::new())) {
        let sq = e.dot(&e);
        r.check("E^2 = Id identically", sq.is_identity(), "");
        r.check("E is a product structure", almost_product_test(&e) == AlmostProduct::Yes, "");
    }
    if let Some(t) = r.check_result("triple assembles", kodaira_triple(), |t| (true, format!("signature {:?}", t.signatures))) {
        r.check("neutral signature at the sample", t.signatures.iter().all(|(_, s)| *s == (4, 4)), "");
        r.absorb(triple_invariants("invariants", &t, &pk, &cs, Some(&kodaira_sample())));
    }
    r
}

pub fn never_product_j() -> Endo {
    endo(8, never_product::J).expect("catalog J")
}

pub struct NeverProduct {
    pub e_squared: Matrix<Scalar>,
}

pub fn never_product_e() -> Result<NeverProduct, HsError> {
    let cs = family(8, never_product::CS_FAMILY, &[]).generic();
    let pk = family(8, never_product::PK_FAMILY, &[]).generic();
    let e = build_e(&pk, &cs)?;
    Ok(NeverProduct { e_squared: e.dot(&e) })
}

pub fn run_never_product() -> SuiteReport {
    let mut r = SuiteReport::new("4-step example");
    let g = never_product::algebra();
    let j = never_product_j();
    r.check("dimension 8, 4-step nilpotent", g.dim() == 8 && g.nilpotency_step() == Some(4), format!("{:?}", g.lower_central_series()));
    r.check_result("J integrable", is_integrable(&g, &j), |ok| (*ok, String::new()));
    printed_family_checks(&mut r, &g, &j, &family(8, never_product::CS_FAMILY, &[]), Symmetry::Symmetric, "omega_cs");
    printed_family_checks(&mut r, &g, &j, &family(8, never_product::PK_FAMILY, &[]), Symmetry::Skew, "omega_pK");
    let Some(np) = r.check_result("E over the generic families", never_product_e(), |_| (true, String::new())) else {
        return r;
    };
    let e11 = &np.e_squared[(0, 0)];
    let e33 = &np.e_squared[(2, 2)];
    r.check("(E^2)_11 = (a17^2+a18^2)/b17^2", *e11 == scalar("(a17^2+a18^2)/b17^2"), e11.to_string());
    r.check("(E^2)_33 = 4(a17^2+a18^2)/b17^2", *e33 == scalar("4*(a17^2+a18^2)/b17^2"), e33.to_string());
    // both equal to 1 would force 4 = 1
    let ratio = e33.checked_div(e11);
    r.check(
        "(E^2)_33 = 4 (E^2)_11, so both cannot equal 1",
        ratio == Some(Scalar::from_int(4)),
        format!("ratio {}", ratio.map_or("undefined".into(), |x| x.to_string())),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    let cs = family(8, never_product::CS_FAMILY, &[]).generic();
    let pk = family(8, never_product::PK_FAMILY, &[]).generic();
    let names = ["a13", "a14", "a15", "a16", "a17", "a18", "b12", "b13", "b14", "b16", "b17"];
    let (mut refused, mut trials) = (0, 0);
    while trials < 10 {
        let vals: Vec<String> = names
            .iter()
            .map(|n| {
                let mut v = rng.gen_range(-5i64..=5);
                if *n == "b17" && v == 0 {
                    v = 1;
                }
                v.to_string()
            })
            .collect();
        let pairs: Vec<(&str, &str)> = names.iter().copied().zip(vals.iter().map(|s| s.as_str())).collect();
        let b = bind(&pairs);
        let ev = |m: &TwoForm| m.try_map(|x| x.eval(&b)).expect("evaluation");
        match assemble_triple(&g, &j, &ev(&pk), &ev(&cs), &[]) {
            Err(HsError::Form(_)) => continue,
            Err(HsError::NotAlmostProduct(_)) => refused += 1,
            _ => {}
        }
        trials += 1;
    }
    r.check("random nondegenerate members never assemble", refused == trials, format!("{refused}/{trials} refused"));
    r
}
