use std::collections::HashMap;

use hsx_core::connection::{
    curvature, geodesic_ode, koszul, polynomial_solve, ricci, segal_complete, segal_matrix, ConnectionTable,
};
use hsx_core::hypersymplectic::{assemble_triple, build_e, metric, Bindings, HsError, HyperTriple};
use hsx_core::structures::{is_closed, is_integrable, symmetry_constraint, symmetry_defect, Endo, Symmetry, TwoForm};
use hsx_core::{LieAlgebra, Scalar, Vector};
use hsx_exact::{MPoly, Matrix, Monomial, Rational, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entries::eight_dim::{self as s5, family};
use crate::entries::{entry, form, scalar, vector};
use crate::properties::triple_invariants;
use crate::report::SuiteReport;
use crate::table3::hs_search;

pub fn hat_pk() -> TwoForm {
    form(8, s5::HAT_PK)
}

pub fn hat_cs() -> TwoForm {
    form(8, s5::HAT_CS)
}

pub fn nonflat_pk() -> TwoForm {
    form(8, s5::NONFLAT_PK)
}

fn table(values: &[(usize, usize, &[(usize, &str)])]) -> Vec<(usize, usize, Vector)> {
    values.iter().map(|(i, j, v)| (i - 1, j - 1, vector(8, v))).collect()
}

pub fn triple(pk: &TwoForm) -> Result<HyperTriple, HsError> {
    assemble_triple(&s5::algebra(), &s5::j_c(), pk, &hat_cs(), &s5::c_samples())
}

fn connection(pk: &TwoForm) -> Result<ConnectionTable, String> {
    koszul(&s5::algebra(), &metric(&s5::j_c(), pk)).map_err(|e| e.to_string())
}

fn common_checks(r: &mut SuiteReport, pk: &TwoForm) -> Option<HyperTriple> {
    let t = r.check_result("triple assembles over Q(c)", triple(pk), |t| (true, format!("signatures {:?}", t.signatures)))?;
    r.check("E^2 = Id over Q(c)", t.e.dot(&t.e).is_identity(), "");
    r.check(
        "signature (4,4) at c = 1/2, 1, 2",
        t.signatures.len() == 3 && t.signatures.iter().all(|(_, s)| *s == (4, 4)),
        "",
    );
    r.absorb(triple_invariants("invariants", &t, pk, &hat_cs(), None));
    Some(t)
}

/// Flat family: Ê² = Id, ∇̂ as printed, R̂ = 0, Segal nilpotency.
pub fn run_flat() -> SuiteReport {
    let mut r = SuiteReport::new("flat family");
    let h = s5::algebra();
    r.check("h is 4-step nilpotent", h.nilpotency_step() == Some(4), format!("{:?}", h.lower_central_series()));
    r.check_result("J_c integrable", is_integrable(&h, &s5::j_c()), |ok| (*ok, String::new()));
    common_checks(&mut r, &hat_pk());
    if let Some(conn) = r.check_result("Levi-Civita connection", connection(&hat_pk()), |_| (true, String::new())) {
        let found = conn.nonzero();
        r.check("connection equals the printed table", found == table(s5::FLAT_TABLE), format!("{} nonzero entries", found.len()));
        r.check("curvature vanishes", curvature(&conn, &h).is_zero(), "");
        let m = segal_matrix(&conn);
        r.check("M(x)^8 = 0", m.pow(8).is_zero(), "");
        r.check_result("complete by the nilpotency criterion", segal_complete(&conn, &h), |ok| (*ok, String::new()));
    }
    r
}

/// Non-flat family: ∇ as printed, the two curvature values, Ricci-flat,
/// polynomial geodesics.
pub fn run_nonflat() -> SuiteReport {
    let mut r = SuiteReport::new("non-flat family");
    let h = s5::algebra();
    // b16 = b17 = 1, a17 = 1 and b13 from the third E^2 = Id condition
    let b13 = b13_formula()
        .substitute(Var::new("b16"), &Scalar::one())
        .and_then(|x| x.substitute(Var::new("b17"), &Scalar::one()))
        .and_then(|x| x.substitute(Var::new("a17"), &Scalar::one()))
        .and_then(|x| x.substitute(Var::new("a18"), &Scalar::zero()))
        .and_then(|x| x.substitute(Var::new("a14"), &Scalar::zero()))
        .and_then(|x| x.substitute(Var::new("a13"), &Scalar::zero()))
        .expect("substitution");
    let pk_family = family(8, s5::PK_FAMILY, &[]);
    let rebuilt = pk_family.basis[1]
        .scale(&b13)
        .add(&pk_family.basis[3])
        .add(&pk_family.basis[4]);
    r.check("omega_pK is the family member with b13 from the E^2 = Id conditions", rebuilt == nonflat_pk(), format!("b13 = {b13}"));
    common_checks(&mut r, &nonflat_pk());
    let Some(conn) = r.check_result("Levi-Civita connection", connection(&nonflat_pk()), |_| (true, String::new())) else {
        return r;
    };
    let found = conn.nonzero();
    r.check("connection equals the printed table", found == table(s5::NONFLAT_TABLE), format!("{} nonzero entries", found.len()));
    let curv = curvature(&conn, &h);
    r.check("curvature nonzero", !curv.is_zero(), "");
    let r121 = curv.apply(0, 1, 0);
    let r122 = curv.apply(0, 1, 1);
    r.check("R(e1,e2)e1 = 3(c+1)/(c(2c+3)) e7", r121 == vector(8, &[(7, "3*(c+1)/(c*(2*c+3))")]), format!("{r121:?}"));
    r.check("R(e1,e2)e2 = (3/c) e8", r122 == vector(8, &[(8, "3/c")]), format!("{r122:?}"));
    r.check("Ricci-flat", ricci(&curv).is_zero(), "");
    let sys = geodesic_ode(&conn);
    let printed: Vec<Scalar> = s5::GEODESIC_SYSTEM.iter().map(|s| scalar(s)).collect();
    r.check("geodesic system as printed", sys.rhs == printed, "");
    r.check("geodesic system triangular", sys.is_triangular(), "");
    let t = Var::new("t");
    r.check_result("geodesics polynomial in t", polynomial_solve(&sys, t), |sol| {
        let poly = sol.len() == 8 && sol.iter().all(|x| x.denom().vars().iter().all(|v| v.name() == "c"));
        (poly, format!("x3 = {}", sol.get(2).map_or(String::new(), |x| x.to_string())))
    });
    r
}

pub fn b13_formula() -> Scalar {
    scalar("-((2+c)*b16^2+2*c*a14*a18-2*c^2*a13*a17)/(2*c^2*b17)")
}

fn generic(members: &[(&str, crate::entries::FormTerms)], zero: &[&str]) -> TwoForm {
    let f = family(8, members, &[]);
    let mut w = TwoForm::zeros(8, 8);
    for (p, b) in f.params.iter().zip(&f.basis) {
        if !zero.contains(&p.as_str()) {
            w = w.add(&b.scale(&Scalar::param(p)));
        }
    }
    w
}

fn subst(m: &Matrix<Scalar>, pairs: &[(&str, Scalar)]) -> Matrix<Scalar> {
    m.map(|x| {
        let mut y = x.clone();
        for (n, v) in pairs {
            y = y.substitute(Var::new(n), v).expect("substitution");
        }
        y
    })
}

/// Reduces a polynomial modulo 2c² − 3, the locus where the b18 member is
/// pseudo-Kähler.
fn mod_locus(p: &MPoly) -> MPoly {
    let c = Var::new("c");
    MPoly::from_terms(p.terms().map(|(m, k)| {
        let e = m.exponent(c);
        let rest: Vec<(Var, u32)> = m.pairs().iter().filter(|(v, _)| *v != c).cloned().chain((e % 2 == 1).then_some((c, 1))).collect();
        (Monomial::from_pairs(rest), k * &Rational::frac(3, 2).pow(e / 2))
    }))
}

pub struct SquareEntries {
    pub e11: Scalar,
    pub e33: Scalar,
}

/// E² entries (1,1) and (3,3) with all ten coefficients free.
pub fn square_entries() -> Result<SquareEntries, HsError> {
    let cs = generic(s5::CS_FAMILY, &[]);
    let pk = generic(s5::PK_FAMILY, &[]);
    let e = build_e(&pk, &cs)?;
    let sq = e.dot(&e);
    Ok(SquareEntries {
        e11: sq[(0, 0)].clone(),
        e33: sq[(2, 2)].clone(),
    })
}

/// a17, a18 on the norm circle c²a17² + a18² = c²b17² through s.
fn circle(s: &Scalar) -> (Scalar, Scalar) {
    let one = Scalar::one();
    let n = &one + &(s * s);
    let b17 = Scalar::param("b17");
    let c = Scalar::param("c");
    let a17 = &(&b17 * &(&one - &(s * s))) / &n;
    let a18 = &(&(&c * &b17) * &(&Scalar::from_int(2) * s)) / &n;
    (a17, a18)
}

pub fn run_e_squared() -> SuiteReport {
    let mut r = SuiteReport::new("E^2 = Id conditions");
    let h = s5::algebra();
    let j = s5::j_c();
    let cs_printed = family(8, s5::CS_FAMILY, &[]);
    let pk_printed = family(8, s5::PK_FAMILY, &[s5::PK_SIDE]);
    let cs = symmetry_constraint(&h, &j, Symmetry::Symmetric);
    r.check("symmetric family as printed", cs_printed.same_span(&cs.basis) && cs.side_zero.is_empty(), format!("dim {}", cs.len()));
    let pk = symmetry_constraint(&h, &j, Symmetry::Skew);
    let i18 = pk_printed.params.iter().position(|p| p == "b18").expect("b18 member");
    let rest: Vec<TwoForm> = pk_printed.basis.iter().enumerate().filter(|(i, _)| *i != i18).map(|(_, b)| b.clone()).collect();
    r.check("skew family as printed away from 2c^2 = 3", pk.same_span(&rest), format!("dim {}", pk.len()));
    // the b18 member is closed, and its failure to be J-skew is 2c² − 3 times
    // monomials in c
    let b18 = &pk_printed.basis[i18];
    let side = scalar(s5::PK_SIDE).checked_div(&scalar("b18")).expect("side condition");
    let defect = symmetry_defect(&j, b18, Symmetry::Skew);
    let multiple = !defect.is_zero() && defect.entries().iter().filter(|x| !x.is_zero()).all(|x| x.checked_div(&side).is_some_and(|q| q.numer().is_term() && q.denom().is_term()));
    r.check("b18 member closed, J-skew exactly when (2c^2-3) b18 = 0", is_closed(&h, b18) && multiple, "");

    let e11_printed = scalar("(c^2*a17^2+a18^2)/(c^2*b17^2+b18^2)");
    let e33_printed = scalar("(c^2*a17^2+a18^2)/(c^2*b17^2+(5+4*c)^2*b18^2)");
    if let Some(d) = r.check_result("E^2 over the general families", square_entries(), |_| (true, String::new())) {
        r.check("(E^2)_11 as printed", d.e11 == e11_printed, d.e11.to_string());
        let diff = &d.e33 - &e33_printed;
        r.check("(E^2)_33 as printed on 2c^2 = 3", mod_locus(&diff.numer()).is_zero(), "");
        let at_zero = |x: &Scalar| x.substitute(Var::new("b18"), &Scalar::zero()).expect("substitution");
        r.check("(E^2)_33 as printed at b18 = 0", at_zero(&d.e33) == at_zero(&e33_printed), "");
    }
    // equal numerators force equal denominators; they differ by a positive
    // multiple of b18² when c > 0
    let n = scalar("c^2*a17^2+a18^2");
    let gap = &(&n / &e33_printed) - &(&n / &e11_printed);
    let coeff = gap.checked_div(&scalar("b18^2"));
    r.check("b18 = 0 is necessary", coeff == Some(scalar("8*(c+1)*(2*c+3)")), format!("denominator difference {gap}"));
    let e11 = e11_printed.substitute(Var::new("b18"), &Scalar::zero()).expect("substitution");
    let defect = &(&e11 - &Scalar::one()) * &scalar("c^2*b17^2");
    r.check("norm relation is necessary", defect == &n - &scalar("c^2*b17^2"), format!("(E^2)_11 - 1 = {}", &e11 - &Scalar::one()));

    let sp = Scalar::param("s");
    let (a17, a18) = circle(&sp);
    let cs = subst(&generic(s5::CS_FAMILY, &[]), &[("a17", a17.clone()), ("a18", a18.clone())]);
    let pk = generic(s5::PK_FAMILY, &["b18"]);
    if let Some(e) = r.check_result("E on the norm circle", build_e(&pk, &cs), |_| (true, String::new())) {
        let sq = e.dot(&e);
        let id = Matrix::<Scalar>::identity(8);
        let dm = sq.sub(&id);
        let upper_ok = (0..8).all(|i| (0..8).all(|k| (i >= 4 && k < 4) || dm[(i, k)].is_zero()));
        let alpha = dm[(5, 1)].clone();
        let expect = [
            &scalar("1+c") * &alpha,
            alpha.clone(),
            &scalar("-c/(3+2*c)") * &alpha,
            alpha.clone(),
        ];
        let diag = (0..4).all(|i| (0..4).all(|k| dm[(4 + i, k)] == if i == k { expect[i].clone() } else { Scalar::zero() }));
        r.check("E^2 = [[Id, 0], [D, Id]]", upper_ok && !alpha.is_zero(), "");
        r.check("D = diag((1+c)a, a, -c/(3+2c) a, a)", diag, "");
        let num = scalar("(2+c)*b16^2+2*c^2*b13*b17+2*c*a14*a18-2*c^2*a13*a17");
        let circ = |x: Scalar| x.substitute(Var::new("a17"), &a17).and_then(|y| y.substitute(Var::new("a18"), &a18)).expect("substitution");
        let first = circ(&num / &scalar("c^3*(c^2*a17^2+a18^2)"));
        let second = circ(
            &(&(&scalar("c^2*a17^2+a18^2") * &scalar("(2+c)*b16^2+2*c^2*b13*b17"))
                + &(&scalar("2*c^3*b17^2") * &scalar("a14*a18-c*a13*a17")))
                / &scalar("c^5*b17^4"),
        );
        r.check(
            "alpha agrees with the printed expressions",
            alpha == second && alpha.checked_div(&first) == Some(scalar("c^2")),
            format!("alpha = c^2 times the second printed form; alpha = {alpha}"),
        );
        let b13 = circ(b13_formula());
        let closed = subst(&sq, &[("b13", b13.clone())]);
        r.check("b13 from the E^2 = Id conditions gives E^2 = Id", closed.is_identity(), format!("b13 = {b13}"));
    }

    let t = Scalar::param("t");
    let c = Scalar::param("c");
    let (a17, a18, b17) = (&Scalar::from_int(3) * &t, &(&Scalar::from_int(4) * &c) * &t, &Scalar::from_int(5) * &t);
    let slice = [("a17", a17.clone()), ("a18", a18.clone()), ("b17", b17.clone())];
    let b13 = b13_formula();
    let b13 = slice.iter().fold(b13, |x, (n, v)| x.substitute(Var::new(n), v).expect("substitution"));
    let cs = subst(&generic(s5::CS_FAMILY, &[]), &slice);
    let pk = subst(&generic(s5::PK_FAMILY, &["b18"]), &[("b17", b17.clone()), ("b13", b13)]);
    r.check_result("slice a17=3t, a18=4ct, b17=5t: E^2 = Id in Q(c,t)", build_e(&pk, &cs), |e| {
        (e.dot(e).is_identity(), String::new())
    });

    r.absorb(random_points(50, 52));
    r
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=6);
        if !nonzero || n != 0 {
            return Rational::frac(n, d);
        }
    }
}

/// Exact checks at seeded random points of the constraint variety; each
/// point also fails once b13 is moved off the formula.
pub fn random_points(count: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("random points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = generic(s5::CS_FAMILY, &[]);
    let pk = generic(s5::PK_FAMILY, &[]);
    let (mut ok, mut rigid) = (0, 0);
    for _ in 0..count {
        let c = Rational::frac(rng.gen_range(1i64..=12), rng.gen_range(1i64..=6));
        let s = random_rational(&mut rng, false);
        let b17 = random_rational(&mut rng, true);
        let one = Rational::one();
        let den = &one + &(&s * &s);
        let a17 = &(&b17 * &(&one - &(&s * &s))) / &den;
        let a18 = &(&(&c * &b17) * &(&Rational::from_int(2) * &s)) / &den;
        let mut b: Bindings = HashMap::from([
            (Var::new("c"), c),
            (Var::new("a17"), a17),
            (Var::new("a18"), a18),
            (Var::new("b17"), b17),
            (Var::new("b18"), Rational::zero()),
        ]);
        for n in ["a13", "a14", "b12", "b14", "b16"] {
            b.insert(Var::new(n), random_rational(&mut rng, false));
        }
        let b13 = b13_formula().eval_rational(&b).expect("b17 nonzero");
        b.insert(Var::new("b13"), b13.clone());
        let ev = |m: &TwoForm, b: &Bindings| m.try_map(|x| x.eval(b)).expect("evaluation");
        if build_e(&ev(&pk, &b), &ev(&cs, &b)).is_ok_and(|e| e.dot(&e).is_identity()) {
            ok += 1;
        }
        b.insert(Var::new("b13"), &b13 + &Rational::one());
        if build_e(&ev(&pk, &b), &ev(&cs, &b)).is_ok_and(|e| !e.dot(&e).is_identity()) {
            rigid += 1;
        }
    }
    r.check("E^2 = Id at every sampled point", ok == count, format!("{ok}/{count}"));
    r.check("moving b13 breaks E^2 = Id", rigid == count, format!("{rigid}/{count}"));
    r
}

fn embed(m: &Matrix<Scalar>, n: usize) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |i, j| if i < m.rows() && j < m.cols() { m[(i, j)].clone() } else { Scalar::zero() })
}

/// The R⁴ witness from the four-dimensional search.
pub fn r4_witness() -> Option<(Endo, TwoForm, TwoForm)> {
    let e = entry("R^4")?;
    let (label, pk, cs) = hs_search(&e, None).ok()??;
    let j = e.j_at(e.structure(label)?, None).ok()?;
    Some((j, pk, cs))
}

pub struct Product {
    pub algebra: LieAlgebra,
    pub j: Endo,
    pub cs: TwoForm,
}

pub fn product() -> Option<(Product, TwoForm)> {
    let (j4, pk4, cs4) = r4_witness()?;
    let algebra = s5::algebra().direct_sum(&LieAlgebra::abelian(4));
    Some((
        Product {
            algebra,
            j: s5::j_c().direct_sum(&j4),
            cs: hat_cs().direct_sum(&cs4),
        },
        pk4,
    ))
}

/// h ⊕ ℝ⁴ in dimension 12 with both triples.
pub fn run_product() -> SuiteReport {
    let mut r = SuiteReport::new("product with R^4");
    let Some((p, pk4)) = product() else {
        r.check("R^4 witness", false, "no hypersymplectic pair on R^4");
        return r;
    };
    r.check("dimension 12", p.algebra.dim() == 12, "");
    r.check("4-step nilpotent", p.algebra.nilpotency_step() == Some(4), format!("{:?}", p.algebra.lower_central_series()));
    let h = s5::algebra();
    for (name, pk8) in [("flat", hat_pk()), ("non-flat", nonflat_pk())] {
        let pk = pk8.direct_sum(&pk4);
        let Some(t) = r.check_result(format!("{name}: triple assembles"), assemble_triple(&p.algebra, &p.j, &pk, &p.cs, &s5::c_samples()), |t| {
            (t.signatures.iter().all(|(_, s)| *s == (6, 6)), format!("signatures {:?}", t.signatures))
        }) else {
            continue;
        };
        let Some(conn) = r.check_result(format!("{name}: Levi-Civita connection"), koszul(&p.algebra, &t.metric), |_| (true, String::new())) else {
            continue;
        };
        let curv = curvature(&conn, &p.algebra);
        let small = curvature(&koszul(&h, &metric(&s5::j_c(), &pk8)).expect("8-dim connection"), &h);
        let embedded = (0..12).all(|i| {
            (0..12).all(|j| {
                let expect = if i < 8 && j < 8 { embed(small.operator(i, j), 12) } else { Matrix::zeros(12, 12) };
                *curv.operator(i, j) == expect
            })
        });
        r.check(format!("{name}: curvature is the 8-dimensional one embedded"), embedded, "");
        r.check(format!("{name}: flat iff the factor is"), curv.is_zero() == (name == "flat"), "");
        if name == "non-flat" {
            r.check(
                "non-flat: R(e1,e2)e1, R(e1,e2)e2 unchanged",
                curv.apply(0, 1, 0)[..8] == vector(8, &[(7, "3*(c+1)/(c*(2*c+3))")])[..] && curv.apply(0, 1, 1)[..8] == vector(8, &[(8, "3/c")])[..],
                "",
            );
        }
    }
    r
}
