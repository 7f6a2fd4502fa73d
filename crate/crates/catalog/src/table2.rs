use std::collections::HashMap;

use hsx_core::structures::{
    closed_two_forms, constraint_matrix, endo_from_columns, has_symmetry, is_automorphism, is_symplectic, pullback,
    symmetry_constraint, Endo, Symmetry, TwoForm, TwoFormFamily,
};
use hsx_core::{CoreError, Scalar};
use hsx_exact::{Rational, Var};

use crate::entries::{entry, form, rat, CatalogEntry, FormTerms};
use crate::report::SuiteReport;
use crate::util::rank_drop_locus;

pub struct Positive {
    pub label: &'static str,
    pub entry: &'static str,
    pub structure: &'static str,
    pub at: Option<&'static str>,
    pub omega: FormTerms,
    /// The printed symmetric family, when the classification states it.
    pub family: &'static [FormTerms],
}

pub const POSITIVES: &[Positive] = &[
    Positive {
        label: "R^4",
        entry: "R^4",
        structure: "J",
        at: None,
        omega: &[(1, 4, "1"), (2, 3, "1")],
        family: &[],
    },
    Positive {
        label: "rh_3",
        entry: "rh_3",
        structure: "J",
        at: None,
        omega: &[(1, 4, "1"), (2, 3, "1")],
        family: &[],
    },
    Positive {
        label: "r'_2",
        entry: "r'_2",
        structure: "J_i",
        at: None,
        omega: &[(1, 3, "1"), (2, 4, "-1")],
        family: &[&[(1, 3, "1"), (2, 4, "-1")], &[(1, 4, "1"), (2, 3, "1")]],
    },
    Positive {
        label: "r_4,-1,-1",
        entry: "r_4,-1,-1",
        structure: "J",
        at: None,
        omega: &[(1, 2, "1"), (3, 4, "-1")],
        family: &[&[(1, 2, "1"), (3, 4, "-1")], &[(1, 3, "1"), (2, 4, "1")]],
    },
    Positive {
        label: "d_4,2",
        entry: "d_4,lambda",
        structure: "J_2",
        at: Some("2"),
        omega: &[(1, 2, "1"), (3, 4, "-1")],
        family: &[&[(1, 2, "1"), (3, 4, "-1")], &[(1, 4, "1"), (2, 3, "-1")]],
    },
];

pub const NEGATIVES: &[&str] = &["rr_3,0", "rr'_3,0", "r_2r_2", "r'_4,0,delta", "d_4,lambda", "d'_4,delta", "h_4"];

/// Parameter points at which a negative row is checked.
pub fn negative_points(e: &CatalogEntry) -> Vec<Option<Rational>> {
    match e.param.as_ref().map(|p| p.name) {
        Some("lambda") => vec![None, Some(rat("1/2")), Some(rat("1")), Some(rat("3"))],
        Some(_) => vec![Some(rat("1")), Some(rat("2"))],
        None => vec![None],
    }
}

pub fn at_label(e: &CatalogEntry, v: Option<&Rational>) -> String {
    match (v, &e.param) {
        (Some(v), Some(p)) => format!("{}={v}", p.name),
        _ => "symbolic".into(),
    }
}

/// The symmetric (or skew) family of one catalogued J at a parameter point.
pub fn family_for(e: &CatalogEntry, j: &str, v: Option<&Rational>, mode: Symmetry) -> Result<TwoFormFamily, CoreError> {
    let g = e.algebra_at(v)?;
    let spec = e
        .structure(j)
        .ok_or_else(|| CoreError::Precondition(format!("{} has no structure {j}", e.label)))?;
    Ok(symmetry_constraint(&g, &e.j_at(spec, v)?, mode))
}

/// Nondegenerate members exist: the generic Pfaffian, after the forced
/// members are removed, is not the zero polynomial.
pub fn admits_nondegenerate(fam: &TwoFormFamily) -> Result<bool, CoreError> {
    fam.generically_nondegenerate()
}

fn positive(p: &Positive) -> SuiteReport {
    let mut r = SuiteReport::new(p.label);
    let e = entry(p.entry).expect("catalog entry");
    let v = p.at.map(rat);
    let g = e.algebra_at(v.as_ref()).expect("catalog algebra");
    let j = e.j_at(e.structure(p.structure).expect("structure"), v.as_ref()).expect("catalog J");
    let w = form(4, p.omega);
    r.check("witness is symplectic", is_symplectic(&g, &w), "");
    r.check("J is symmetric for the witness", has_symmetry(&j, &w, Symmetry::Symmetric), "");
    let fam = symmetry_constraint(&g, &j, Symmetry::Symmetric);
    r.check("symmetric family contains the witness", fam.contains(&w), format!("family dim {}", fam.len()));
    if !p.family.is_empty() {
        let printed: Vec<TwoForm> = p.family.iter().map(|t| form(4, t)).collect();
        r.check("symmetric family equals the printed span", fam.same_span(&printed), "");
    }
    r
}

fn rotation_images(r: &Scalar, s: &Scalar, a: usize, b: usize) -> Endo {
    // cos θ = (1−s²)/(1+s²), sin θ = 2s/(1+s²)
    let one = Scalar::one();
    let n = &one + &(s * s);
    let cos = &(&one - &(s * s)) / &n;
    let sin = &(&Scalar::from_int(2) * s) / &n;
    let mut cols: Vec<Vec<Scalar>> = (0..4)
        .map(|i| (0..4).map(|k| if i == k { one.clone() } else { Scalar::zero() }).collect())
        .collect();
    cols[a] = vec![Scalar::zero(); 4];
    cols[a][a] = r * &cos;
    cols[a][b] = -(r * &sin);
    cols[b] = vec![Scalar::zero(); 4];
    cols[b][b] = r * &cos;
    cols[b][a] = r * &sin;
    endo_from_columns(&cols)
}

/// ψ_{r,θ} on 𝔯′₂, φ_{r,θ} on 𝔯₄,₋₁,₋₁ and φ_r on 𝔡₄,₂: automorphisms
/// commuting with J that act on the symmetric family as printed.
fn automorphisms() -> SuiteReport {
    let mut rep = SuiteReport::new("automorphisms");
    let r = Scalar::param("r");
    let s = Scalar::param("s");
    let one = Scalar::one();
    let n = &one + &(&s * &s);
    let cos = &(&one - &(&s * &s)) / &n;
    let sin = &(&Scalar::from_int(2) * &s) / &n;
    let lin = |a: &Scalar, b: &Scalar, x: &TwoForm, y: &TwoForm| x.scale(a).add(&y.scale(b));

    let cases: [(&str, &str, (usize, usize), (&str, &str), FormTerms, FormTerms); 2] = [
        ("psi_r,theta on r'_2", "r'_2", (2, 3), ("a13", "a14"), &[(1, 3, "1"), (2, 4, "-1")], &[(1, 4, "1"), (2, 3, "1")]),
        ("phi_r,theta on r_4,-1,-1", "r_4,-1,-1", (1, 2), ("a12", "a13"), &[(1, 2, "1"), (3, 4, "-1")], &[(1, 3, "1"), (2, 4, "1")]),
    ];
    for (label, name, (ia, ib), (ca, cb), fa, fb) in cases {
        let e = entry(name).expect("catalog entry");
        let g = e.algebra().expect("catalog algebra");
        let j = match name {
            "r'_2" => e.j_at(e.structure("J_i").expect("J_i"), None),
            _ => e.j_at(e.structure("J").expect("J"), None),
        }
        .expect("catalog J");
        let psi = rotation_images(&r, &s, ia, ib);
        rep.check_result(format!("{label}: automorphism"), is_automorphism(&g, &psi), |ok| (*ok, String::new()));
        rep.check(format!("{label}: commutes with J"), j.dot(&psi) == psi.dot(&j), "");
        let (x, y) = (form(4, fa), form(4, fb));
        let (a, b) = (Scalar::param(ca), Scalar::param(cb));
        let w = lin(&a, &b, &x, &y);
        let expected = lin(
            &(&r * &(&(&a * &cos) - &(&b * &sin))),
            &(&r * &(&(&a * &sin) + &(&b * &cos))),
            &x,
            &y,
        );
        rep.check_result(format!("{label}: pullback as printed"), pullback(&psi, &w), |p| (*p == expected, String::new()));
    }

    let e = entry("d_4,lambda").expect("catalog entry");
    let two = rat("2");
    let g = e.algebra_at(Some(&two)).expect("catalog algebra");
    let j = e.j_at(e.structure("J_2").expect("J_2"), Some(&two)).expect("catalog J");
    let inv = &one / &r;
    let phi = endo_from_columns(&[
        vec![inv.clone(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), one.clone(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), inv.clone(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), one.clone()],
    ]);
    rep.check_result("phi_r on d_4,2: automorphism", is_automorphism(&g, &phi), |ok| (*ok, String::new()));
    rep.check("phi_r on d_4,2: commutes with J_2", j.dot(&phi) == phi.dot(&j), "");
    let w = form(4, &[(1, 2, "a"), (3, 4, "-a"), (1, 4, "b"), (2, 3, "-b")]);
    rep.check_result("phi_r on d_4,2: pullback is omega/r", pullback(&phi, &w), |p| (*p == w.scale(&inv), String::new()));
    let a12 = Var::new("a");
    let normalized = pullback(&endo_eval(&phi, Var::new("r"), &Scalar::var(a12)), &w).ok();
    let target = form(4, &[(1, 2, "1"), (3, 4, "-1"), (1, 4, "b/a"), (2, 3, "-b/a")]);
    rep.check("phi_a12 normalizes the e12-e34 coefficient", normalized == Some(target), "");
    rep
}

fn endo_eval(m: &Endo, v: Var, value: &Scalar) -> Endo {
    m.map(|x| x.substitute(v, value).expect("substitution"))
}

fn negative(label: &str) -> SuiteReport {
    let mut r = SuiteReport::new(label);
    let e = entry(label).expect("catalog entry");
    for v in negative_points(&e) {
        let at = at_label(&e, v.as_ref());
        let specs = e.structures_at(v.as_ref());
        r.check(format!("{at}: structures listed"), !specs.is_empty(), "");
        for spec in specs {
            r.check_result(
                format!("{at}: {} symmetric family degenerate", spec.label),
                family_for(&e, spec.label, v.as_ref(), Symmetry::Symmetric).and_then(|f| {
                    let pf = if f.is_empty() { Scalar::zero() } else { f.generic_pfaffian()? };
                    Ok((f.len(), pf, admits_nondegenerate(&f)?))
                }),
                |(n, pf, nd)| (pf.is_zero() && !nd, format!("dim {n}, Pf = {pf}")),
            );
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct Rigidity {
    pub forced: Vec<String>,
    pub points: Vec<(Rational, Rational)>,
    pub minor: Scalar,
}

/// Real ξ = p + qi (q ≠ 0) for which J_ξ is symmetric for a nondegenerate
/// closed form on 𝔯′₂.
pub fn r2_rigidity() -> Result<Rigidity, String> {
    let e = entry("r'_2").expect("catalog entry");
    let g = e.algebra().map_err(|x| x.to_string())?;
    let j = e.j_at(e.structure("J_xi").expect("J_xi"), None).map_err(|x| x.to_string())?;
    let closed = closed_two_forms(&g);
    let c = constraint_matrix(&j, &closed.basis, Symmetry::Symmetric);
    let (p, q) = (Var::new("p"), Var::new("q"));
    let drop = rank_drop_locus(&c, p, q, &[q])?;
    let mut points = Vec::new();
    for pt in drop.points {
        let b = HashMap::from([(p, pt.0.clone()), (q, pt.1.clone())]);
        let jp = j.try_map(|x| x.eval(&b)).map_err(|x| x.to_string())?;
        let fam = symmetry_constraint(&g, &jp, Symmetry::Symmetric);
        if admits_nondegenerate(&fam).map_err(|x| x.to_string())? {
            points.push(pt);
        }
    }
    Ok(Rigidity {
        forced: drop.forced.iter().map(|&k| closed.params[k].clone()).collect(),
        points,
        minor: drop.minor,
    })
}

pub fn run_rigidity() -> SuiteReport {
    let mut r = SuiteReport::new("r'_2 rigidity");
    r.check_result("symmetric J_xi forces xi = i", r2_rigidity(), |x| {
        let ok = x.points == vec![(Rational::zero(), Rational::one())] && x.forced == vec!["a12".to_string()];
        (ok, format!("forced {:?}, minor {}, points {:?}", x.forced, x.minor, x.points))
    });
    let e = entry("r'_2").expect("catalog entry");
    let g = e.algebra().expect("catalog algebra");
    let j = e.j_at(e.structure("J_xi").expect("J_xi"), None).expect("catalog J");
    for (name, p, q) in [("1+i", "1", "1"), ("2i", "0", "2"), ("i", "0", "1")] {
        let b = HashMap::from([(Var::new("p"), rat(p)), (Var::new("q"), rat(q))]);
        let fam = j
            .try_map(|x| x.eval(&b))
            .map_err(CoreError::from)
            .map(|jp| symmetry_constraint(&g, &jp, Symmetry::Symmetric));
        let expect_nd = name == "i";
        r.check_result(format!("xi = {name}: symmetric family"), fam.and_then(|f| Ok((f.len(), admits_nondegenerate(&f)?))), |(n, nd)| {
            (*nd == expect_nd, format!("dim {n}, nondegenerate member: {nd}"))
        });
    }
    let ji = e.j_at(e.structure("J_i").expect("J_i"), None).expect("catalog J");
    let b = HashMap::from([(Var::new("p"), Rational::zero()), (Var::new("q"), Rational::one())]);
    r.check("J_xi at xi = i is J_i", j.try_map(|x| x.eval(&b)).ok() == Some(ji), "");
    r
}

pub fn run() -> SuiteReport {
    let mut r = SuiteReport::new("table 2");
    for p in POSITIVES {
        r.absorb(positive(p));
    }
    r.absorb(automorphisms());
    for n in NEGATIVES {
        r.absorb(negative(n));
    }
    r
}

pub fn run_only(label: &str) -> Option<SuiteReport> {
    if let Some(p) = POSITIVES.iter().find(|p| p.label == label) {
        return Some(positive(p));
    }
    NEGATIVES.contains(&label).then(|| negative(label))
}
