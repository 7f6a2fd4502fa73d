//! The built-in corpus: four-dimensional solvable Lie algebras with their
//! complex structures and closed 2-forms, and the eight-dimensional data of
//! the hypersymplectic examples.

use std::collections::HashMap;

use hsx_core::salamon::parse_salamon_unchecked;
use hsx_core::structures::{complex_structure_on_basis, two_form, Endo, TwoForm, TwoFormFamily};
use hsx_core::{CoreError, LieAlgebra, Scalar};
use hsx_exact::{Rational, Var};

pub type Bindings = HashMap<Var, Rational>;

/// Images of basis vectors, 1-based: (i, [(k, coefficient)]).
pub type Images = &'static [(usize, &'static [(usize, &'static str)])];

/// Basis 2-forms with rational-function coefficients, 1-based.
pub type FormTerms = &'static [(usize, usize, &'static str)];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum When {
    Always,
    At(&'static str),
    Except(&'static [&'static str]),
}

#[derive(Clone, Debug)]
pub struct JSpec {
    pub label: &'static str,
    pub images: Images,
    pub when: When,
}

impl JSpec {
    pub fn endo(&self, dim: usize) -> Result<Endo, CoreError> {
        let data: Vec<(usize, Vec<Scalar>)> = self.images.iter().map(|(i, t)| (i - 1, vector(dim, t))).collect();
        complex_structure_on_basis(dim, &data)
    }

    pub fn applies_at(&self, value: Option<&Rational>) -> bool {
        match (self.when, value) {
            (When::Always, _) => true,
            (When::At(v), Some(x)) => rat(v) == *x,
            (When::At(_), None) => false,
            (When::Except(vs), Some(x)) => vs.iter().all(|v| rat(v) != *x),
            (When::Except(_), None) => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    AtLeast(&'static str),
    Positive,
}

impl Domain {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Domain::AtLeast(v) => *x >= rat(v),
            Domain::Positive => x.is_positive(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Param {
    pub name: &'static str,
    pub domain: Domain,
    pub samples: &'static [&'static str],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub cs: bool,
    pub pk: bool,
    pub hs: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub equations: &'static str,
    pub param: Option<Param>,
    pub structures: Vec<JSpec>,
    /// Printed closed 2-forms: (coefficient name, basis form).
    pub family: &'static [(&'static str, FormTerms)],
    pub side_conditions: &'static [&'static str],
    pub nondegeneracy: &'static str,
    /// Verdicts for a generic parameter value.
    pub expected: Verdicts,
    pub in_table1: bool,
}

pub fn rat(s: &str) -> Rational {
    s.parse().expect("catalog rational")
}

pub fn scalar(s: &str) -> Scalar {
    s.parse().expect("catalog scalar")
}

pub fn vector(dim: usize, terms: &[(usize, &str)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    for (i, c) in terms {
        v[i - 1] = scalar(c);
    }
    v
}

pub fn form(dim: usize, terms: &[(usize, usize, &str)]) -> TwoForm {
    let t: Vec<(usize, usize, Scalar)> = terms.iter().map(|(i, j, c)| (i - 1, j - 1, scalar(c))).collect();
    two_form(dim, &t)
}

pub fn endo(dim: usize, images: Images) -> Result<Endo, CoreError> {
    JSpec {
        label: "",
        images,
        when: When::Always,
    }
    .endo(dim)
}

pub fn bind(pairs: &[(&str, &str)]) -> Bindings {
    pairs.iter().map(|(n, v)| (Var::new(n), rat(v))).collect()
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        4
    }

    /// The algebra as stored; Jacobi is checked separately by the precheck.
    pub fn algebra(&self) -> Result<LieAlgebra, CoreError> {
        parse_salamon_unchecked(self.equations)
    }

    pub fn bindings(&self, value: &Rational) -> Bindings {
        let p = self.param.as_ref().expect("parametrized entry");
        HashMap::from([(Var::new(p.name), value.clone())])
    }

    pub fn algebra_at(&self, value: Option<&Rational>) -> Result<LieAlgebra, CoreError> {
        let g = self.algebra()?;
        match value {
            Some(v) => g.eval(&self.bindings(v)),
            None => Ok(g),
        }
    }

    /// Parameter points a suite visits: the symbolic one, then the samples.
    pub fn points(&self) -> Vec<Option<Rational>> {
        let mut out = vec![None];
        if let Some(p) = &self.param {
            out.extend(p.samples.iter().map(|s| Some(rat(s))));
        }
        out
    }

    pub fn structures_at(&self, value: Option<&Rational>) -> Vec<&JSpec> {
        self.structures.iter().filter(|j| j.applies_at(value)).collect()
    }

    pub fn structure(&self, label: &str) -> Option<&JSpec> {
        self.structures.iter().find(|j| j.label == label)
    }

    pub fn j_at(&self, spec: &JSpec, value: Option<&Rational>) -> Result<Endo, CoreError> {
        let j = spec.endo(self.dim())?;
        match value {
            Some(v) => {
                let b = self.bindings(v);
                Ok(j.try_map(|x| x.eval(&b))?)
            }
            None => Ok(j),
        }
    }

    /// The printed family, with side conditions as stored.
    pub fn printed_family(&self) -> TwoFormFamily {
        TwoFormFamily {
            dim: self.dim(),
            params: self.family.iter().map(|(n, _)| n.to_string()).collect(),
            basis: self.family.iter().map(|(_, t)| form(self.dim(), t)).collect(),
            side_zero: self.side_conditions.iter().map(|s| scalar(s)).collect(),
            side_nonzero: vec![scalar(self.nondegeneracy)],
        }
    }

    /// The printed family at a parameter value: side conditions that do not
    /// vanish there remove the members they constrain.
    pub fn printed_family_at(&self, value: Option<&Rational>) -> Result<TwoFormFamily, CoreError> {
        let fam = self.printed_family();
        let Some(v) = value else { return Ok(fam) };
        let b = self.bindings(v);
        let eval = |x: &Scalar| x.eval(&b);
        let fam = TwoFormFamily {
            dim: fam.dim,
            params: fam.params.clone(),
            basis: fam
                .basis
                .iter()
                .map(|m| m.try_map(eval))
                .collect::<Result<_, _>>()?,
            side_zero: fam
                .side_zero
                .iter()
                .map(eval)
                .filter(|x| !matches!(x, Ok(z) if z.is_zero()))
                .collect::<Result<_, _>>()?,
            side_nonzero: fam.side_nonzero.iter().map(eval).collect::<Result<_, _>>()?,
        };
        Ok(fam.drop_side_conditions(|_| false))
    }
}

const LAMBDA_SAMPLES: &[&str] = &["1/2", "1", "2", "3"];
const DELTA_SAMPLES: &[&str] = &["1", "2"];

fn j(label: &'static str, images: Images) -> JSpec {
    JSpec {
        label,
        images,
        when: When::Always,
    }
}

fn j_when(label: &'static str, images: Images, when: When) -> JSpec {
    JSpec { label, images, when }
}

/// The ten rows of the four-dimensional table, then ℝ⁴.
pub fn four_dimensional() -> Vec<CatalogEntry> {
    let v = |cs, pk, hs| Verdicts { cs, pk, hs };
    vec![
        CatalogEntry {
            label: "rh_3",
            equations: "(0,0,-12,0)",
            param: None,
            structures: vec![j("J", &[(1, &[(2, "-1")]), (3, &[(4, "-1")])])],
            family: &[
                ("a12", &[(1, 2, "1")]),
                ("a13", &[(1, 3, "1")]),
                ("a14", &[(1, 4, "1")]),
                ("a23", &[(2, 3, "1")]),
                ("a24", &[(2, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a14*a23-a13*a24",
            expected: v(true, true, true),
            in_table1: true,
        },
        CatalogEntry {
            label: "rr_3,0",
            equations: "(0,-12,0,0)",
            param: None,
            structures: vec![j("J", &[(1, &[(2, "1")]), (3, &[(4, "1")])])],
            family: &[
                ("a12", &[(1, 2, "1")]),
                ("a13", &[(1, 3, "1")]),
                ("a14", &[(1, 4, "1")]),
                ("a34", &[(3, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a12*a34",
            expected: v(false, true, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "rr'_3,0",
            equations: "(0,-13,12,0)",
            param: None,
            structures: vec![j("J", &[(1, &[(4, "1")]), (2, &[(3, "1")])])],
            family: &[
                ("a12", &[(1, 2, "1")]),
                ("a13", &[(1, 3, "1")]),
                ("a14", &[(1, 4, "1")]),
                ("a23", &[(2, 3, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a14*a23",
            expected: v(false, true, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "r_2r_2",
            equations: "(0,-12,0,-34)",
            param: None,
            structures: vec![j("J", &[(1, &[(2, "1")]), (3, &[(4, "1")])])],
            family: &[("a12", &[(1, 2, "1")]), ("a13", &[(1, 3, "1")]), ("a34", &[(3, 4, "1")])],
            side_conditions: &[],
            nondegeneracy: "a12*a34",
            expected: v(false, true, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "r'_2",
            equations: "(0,0,-13+24,-14-23)",
            param: None,
            structures: vec![
                j("J", &[(1, &[(3, "1")]), (2, &[(4, "1")])]),
                j("J_xi", &[(1, &[(1, "p/q"), (2, "(p^2+q^2)/q")]), (3, &[(4, "1")])]),
                j("J_i", &[(1, &[(2, "1")]), (3, &[(4, "1")])]),
                j("J_-i", &[(1, &[(2, "-1")]), (3, &[(4, "1")])]),
            ],
            family: &[
                ("a12", &[(1, 2, "1")]),
                ("a13", &[(1, 3, "1"), (2, 4, "-1")]),
                ("a14", &[(1, 4, "1"), (2, 3, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a13^2+a14^2",
            expected: v(true, true, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "r_4,-1,-1",
            equations: "(14,-24,-34,0)",
            param: None,
            structures: vec![j("J", &[(1, &[(4, "-1")]), (2, &[(3, "1")])])],
            family: &[
                ("a12", &[(1, 2, "1")]),
                ("a13", &[(1, 3, "1")]),
                ("a14", &[(1, 4, "1")]),
                ("a24", &[(2, 4, "1")]),
                ("a34", &[(3, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a12*a34-a13*a24",
            expected: v(true, true, true),
            in_table1: true,
        },
        CatalogEntry {
            label: "r'_4,0,delta",
            equations: "(14,(delta)*34,-(delta)*24,0)",
            param: Some(Param {
                name: "delta",
                domain: Domain::Positive,
                samples: DELTA_SAMPLES,
            }),
            structures: vec![
                j("J_+", &[(1, &[(4, "-1")]), (2, &[(3, "1")])]),
                j("J_-", &[(1, &[(4, "-1")]), (2, &[(3, "-1")])]),
            ],
            family: &[
                ("a14", &[(1, 4, "1")]),
                ("a23", &[(2, 3, "1")]),
                ("a24", &[(2, 4, "1")]),
                ("a34", &[(3, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a14*a23",
            expected: v(false, true, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "d_4,lambda",
            equations: "((lambda)*14,(1-lambda)*24,-12+34,0)",
            param: Some(Param {
                name: "lambda",
                domain: Domain::AtLeast("1/2"),
                samples: LAMBDA_SAMPLES,
            }),
            structures: vec![
                j_when("J_+", &[(1, &[(2, "1")]), (3, &[(4, "-1")])], When::At("1/2")),
                j_when("J_-", &[(1, &[(2, "-1")]), (3, &[(4, "-1")])], When::At("1/2")),
                j_when("J'", &[(1, &[(4, "-1")]), (2, &[(3, "-2")])], When::At("1/2")),
                j_when("J", &[(1, &[(4, "1")]), (2, &[(3, "1")])], When::At("1")),
                j_when("J_1", &[(1, &[(4, "1/lambda")]), (2, &[(3, "1")])], When::Except(&["1/2", "1"])),
                j_when("J_2", &[(1, &[(3, "1")]), (2, &[(4, "1/(lambda-1)")])], When::Except(&["1/2", "1"])),
            ],
            family: &[
                ("a12", &[(1, 2, "1"), (3, 4, "-1")]),
                ("a14", &[(1, 4, "1")]),
                ("a23", &[(2, 3, "1")]),
                ("a24", &[(2, 4, "1")]),
            ],
            side_conditions: &["(lambda-2)*a23"],
            nondegeneracy: "a12^2-a14*a23",
            expected: v(false, false, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "d'_4,delta",
            equations: "((delta/2)*14+24,-14+(delta/2)*24,-12+(delta)*34,0)",
            param: Some(Param {
                name: "delta",
                domain: Domain::Positive,
                samples: DELTA_SAMPLES,
            }),
            structures: vec![
                j("J_++", &[(1, &[(2, "1")]), (3, &[(4, "1")])]),
                j("J_+-", &[(1, &[(2, "1")]), (3, &[(4, "-1")])]),
                j("J_-+", &[(1, &[(2, "-1")]), (3, &[(4, "1")])]),
                j("J_--", &[(1, &[(2, "-1")]), (3, &[(4, "-1")])]),
            ],
            family: &[
                ("a12", &[(1, 2, "1"), (3, 4, "-delta")]),
                ("a14", &[(1, 4, "1")]),
                ("a24", &[(2, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a12",
            expected: v(false, true, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "h_4",
            equations: "(1/2*14+24,1/2*24,-12+34,0)",
            param: None,
            structures: vec![j("J", &[(1, &[(3, "2")]), (2, &[(4, "-1")])])],
            family: &[
                ("a12", &[(1, 2, "1"), (3, 4, "-1")]),
                ("a14", &[(1, 4, "1")]),
                ("a24", &[(2, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a12",
            expected: v(false, false, false),
            in_table1: true,
        },
        CatalogEntry {
            label: "R^4",
            equations: "(0,0,0,0)",
            param: None,
            structures: vec![j("J", &[(1, &[(2, "-1")]), (3, &[(4, "-1")])])],
            family: &[
                ("a12", &[(1, 2, "1")]),
                ("a13", &[(1, 3, "1")]),
                ("a14", &[(1, 4, "1")]),
                ("a23", &[(2, 3, "1")]),
                ("a24", &[(2, 4, "1")]),
                ("a34", &[(3, 4, "1")]),
            ],
            side_conditions: &[],
            nondegeneracy: "a12*a34-a13*a24+a14*a23",
            expected: v(true, true, true),
            in_table1: false,
        },
    ]
}

pub fn entry(label: &str) -> Option<CatalogEntry> {
    four_dimensional().into_iter().find(|e| e.label == label)
}

/// 𝔥 = (0³,12,13,14+23,15,16+2·25+34) with J_c and the two chosen pairs.
pub mod eight_dim {
    use super::*;

    pub const H: &str = "(0^3,12,13,14+23,15,16+2*25+34)";

    pub const J_C: Images = &[(1, &[(2, "(c+1)/c")]), (3, &[(4, "-1")]), (5, &[(6, "1/c")]), (7, &[(8, "(3+2*c)/c")])];

    /// Printed symmetric family: (coefficient, basis form).
    pub const CS_FAMILY: &[(&str, FormTerms)] = &[
        ("a13", &[(1, 3, "c+1"), (2, 4, "c")]),
        ("a14", &[(1, 4, "c+1"), (2, 3, "-c")]),
        ("a17", &[(1, 7, "(c+1)*(2*c+3)"), (2, 8, "-c^2"), (3, 5, "c"), (4, 6, "c^2")]),
        ("a18", &[(1, 8, "c+1"), (2, 7, "2*c+3"), (3, 6, "c"), (4, 5, "-1")]),
    ];

    /// Printed skew family; b18 carries the side condition (2c²−3)b18 = 0.
    pub const PK_FAMILY: &[(&str, FormTerms)] = &[
        ("b12", &[(1, 2, "1")]),
        ("b13", &[(1, 3, "c+1"), (2, 4, "-c")]),
        ("b14", &[(1, 4, "c+1"), (2, 3, "c")]),
        ("b16", &[(1, 6, "c+1"), (2, 5, "-1"), (3, 4, "-(c+2)")]),
        ("b17", &[(1, 7, "(c+1)*(2*c+3)"), (2, 8, "c^2"), (3, 5, "c"), (4, 6, "-c^2")]),
        ("b18", &[(1, 8, "c+1"), (2, 7, "-(2*c+3)"), (3, 6, "5*c+6"), (4, 5, "4*c+5")]),
    ];

    pub const PK_SIDE: &str = "(2*c^2-3)*b18";

    pub const HAT_CS: FormTerms = &[(1, 7, "(c+1)*(2*c+3)"), (2, 8, "-c^2"), (3, 5, "c"), (4, 6, "c^2")];
    pub const HAT_PK: FormTerms = &[(1, 7, "(c+1)*(2*c+3)"), (2, 8, "c^2"), (3, 5, "c"), (4, 6, "-c^2")];
    pub const NONFLAT_PK: FormTerms = &[
        (1, 3, "-(c+1)*(c+2)/(2*c^2)"),
        (1, 6, "c+1"),
        (1, 7, "(c+1)*(2*c+3)"),
        (2, 4, "(c+2)/(2*c)"),
        (2, 5, "-1"),
        (2, 8, "c^2"),
        (3, 4, "-(c+2)"),
        (3, 5, "c"),
        (4, 6, "-c^2"),
    ];

    /// Nonzero ∇̂_{e_i} e_j, 1-based.
    pub const FLAT_TABLE: &[(usize, usize, &[(usize, &str)])] = &[
        (1, 1, &[(3, "(c+1)/c")]),
        (1, 2, &[(4, "-1")]),
        (1, 3, &[(5, "c")]),
        (1, 4, &[(6, "-1")]),
        (1, 5, &[(7, "-1/(2*c+3)")]),
        (1, 6, &[(8, "-1")]),
        (3, 1, &[(5, "c+1")]),
        (3, 2, &[(6, "1")]),
        (3, 3, &[(7, "c/(2*c+3)")]),
        (3, 4, &[(8, "-1")]),
        (5, 1, &[(7, "(2*c+2)/(2*c+3)")]),
        (5, 2, &[(8, "2")]),
    ];

    /// Nonzero ∇_{e_i} e_j of the non-flat metric, 1-based.
    pub const NONFLAT_TABLE: &[(usize, usize, &[(usize, &str)])] = &[
        (1, 1, &[(3, "(c+1)/c"), (6, "(c+1)^2/c^3"), (7, "-(c+1)^2/(c^3*(2*c+3))")]),
        (1, 2, &[(4, "-1"), (5, "-(c+1)/c"), (8, "-(c+1)/c^3")]),
        (1, 3, &[(5, "c"), (8, "(c+1)/c^2")]),
        (1, 4, &[(6, "-1"), (7, "(c+1)/(c*(2*c+3))")]),
        (1, 5, &[(7, "-1/(2*c+3)")]),
        (1, 6, &[(8, "-1")]),
        (2, 1, &[(5, "-(c+1)/c"), (8, "-(c+1)/c^3")]),
        (2, 2, &[(6, "-1/c"), (7, "1/(c*(2*c+3))")]),
        (2, 3, &[(7, "-1/(2*c+3)")]),
        (2, 4, &[(8, "1/c")]),
        (3, 1, &[(5, "c+1"), (8, "(c+1)/c^2")]),
        (3, 2, &[(6, "1"), (7, "-1/(2*c+3)")]),
        (3, 3, &[(7, "c/(2*c+3)")]),
        (3, 4, &[(8, "-1")]),
        (4, 1, &[(7, "(c+1)/(c*(2*c+3))")]),
        (4, 2, &[(8, "1/c")]),
        (5, 1, &[(7, "(2*c+2)/(2*c+3)")]),
        (5, 2, &[(8, "2")]),
    ];

    /// Printed right-hand sides of the geodesic equation of the non-flat metric.
    pub const GEODESIC_SYSTEM: [&str; 8] = [
        "0",
        "0",
        "-(c+1)/c*x1^2",
        "x1*x2",
        "2*(c+1)/c*x1*x2-(2*c+1)*x1*x3",
        "-(c+1)^2/c^3*x1^2+1/c*x2^2+x1*x4-x2*x3",
        "((c+1)^2*x1^2-c^2*x2^2-c^4*x3^2)/(c^3*(2*c+3))-2*(c+1)/(c*(2*c+3))*x1*x4-(2*c+1)/(2*c+3)*x1*x5+2/(2*c+3)*x2*x3",
        "2*(c+1)/c^3*x1*x2-2*(c+1)/c^2*x1*x3-2/c*x2*x4+x1*x6+x3*x4-2*x2*x5",
    ];

    pub const C_SAMPLES: &[&str] = &["1/2", "1", "2"];

    pub fn algebra() -> LieAlgebra {
        hsx_core::salamon::parse_salamon(H).expect("catalog algebra")
    }

    pub fn j_c() -> Endo {
        endo(8, J_C).expect("catalog J")
    }

    pub fn family(dim: usize, members: &[(&str, FormTerms)], side: &[&str]) -> TwoFormFamily {
        TwoFormFamily {
            dim,
            params: members.iter().map(|(n, _)| n.to_string()).collect(),
            basis: members.iter().map(|(_, t)| form(dim, t)).collect(),
            side_zero: side.iter().map(|s| scalar(s)).collect(),
            side_nonzero: Vec::new(),
        }
    }

    pub fn c_samples() -> Vec<Bindings> {
        C_SAMPLES.iter().map(|c| bind(&[("c", c)])).collect()
    }
}

/// 𝔥₄ ⊕ ℝ² with a complex structure of Kodaira type.
pub mod kodaira {
    use super::*;

    pub const ALGEBRA: &str = "(0^4,12,14+23,0,0)";

    /// J given on e1, e3, e5, e6; the rest follows from J² = −Id.
    pub const J_PAIRS: &[(usize, &[(usize, &str)])] = &[(1, &[(2, "1")]), (3, &[(4, "-1")]), (5, &[(7, "2")]), (6, &[(8, "-1")])];

    pub const CS_FAMILY: &[(&str, FormTerms)] = &[
        ("a13", &[(1, 3, "1"), (2, 4, "1")]),
        ("a14", &[(1, 4, "1"), (2, 3, "-1")]),
        ("a15", &[(1, 5, "2"), (2, 7, "-1")]),
        ("a17", &[(1, 7, "1"), (2, 5, "2")]),
        ("a16", &[(1, 6, "2"), (2, 8, "2"), (3, 5, "-2"), (4, 7, "-1")]),
        ("a18", &[(1, 8, "2"), (2, 6, "-2"), (3, 7, "1"), (4, 5, "-2")]),
    ];

    pub const PK_FAMILY: &[(&str, FormTerms)] = &[
        ("b12", &[(1, 2, "1")]),
        ("b13", &[(1, 3, "1"), (2, 4, "-1")]),
        ("b14", &[(1, 4, "1"), (2, 3, "1")]),
        ("b15", &[(1, 5, "2"), (2, 7, "1")]),
        ("b17", &[(1, 7, "1"), (2, 5, "-2")]),
        ("b16", &[(1, 6, "2"), (2, 8, "-2"), (3, 5, "-2"), (4, 7, "1")]),
        ("b18", &[(1, 8, "2"), (2, 6, "2"), (3, 7, "1"), (4, 5, "2")]),
        ("b34", &[(3, 4, "1")]),
    ];

    pub fn algebra() -> LieAlgebra {
        hsx_core::salamon::parse_salamon(ALGEBRA).expect("catalog algebra")
    }
}

/// The 4-step algebra on which no hypersymplectic metric exists.
pub mod never_product {
    use super::*;

    pub const ALGEBRA: &str = "(0^3,12,13+24,14-23,15+26,16+7*25+8*34)";

    pub const J: Images = &[(1, &[(2, "1")]), (3, &[(4, "-3")]), (5, &[(6, "-1")]), (7, &[(8, "3")])];

    pub const CS_FAMILY: &[(&str, FormTerms)] = &[
        ("a13", &[(1, 3, "3"), (2, 4, "1")]),
        ("a14", &[(1, 4, "1"), (2, 3, "-3")]),
        ("a15", &[(1, 5, "1"), (2, 6, "1")]),
        ("a16", &[(1, 6, "1"), (2, 5, "-1")]),
        ("a17", &[(1, 7, "3"), (2, 8, "-1"), (3, 5, "-12"), (4, 6, "4")]),
        ("a18", &[(1, 8, "1"), (2, 7, "3"), (3, 6, "12"), (4, 5, "4")]),
    ];

    pub const PK_FAMILY: &[(&str, FormTerms)] = &[
        ("b12", &[(1, 2, "1")]),
        ("b13", &[(1, 3, "3"), (2, 4, "-1")]),
        ("b14", &[(1, 4, "1"), (2, 3, "3")]),
        ("b16", &[(1, 6, "1"), (2, 5, "1"), (3, 4, "2")]),
        ("b17", &[(1, 7, "3"), (2, 8, "1"), (3, 5, "6"), (4, 6, "2")]),
    ];

    pub fn algebra() -> LieAlgebra {
        hsx_core::salamon::parse_salamon(ALGEBRA).expect("catalog algebra")
    }
}
