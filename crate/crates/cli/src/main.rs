mod input;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsx_catalog::entries::entry;
use hsx_catalog::harness::{self, example, run_catalog, verdict_table, CatalogRun, Corpus, ALL, EXAMPLES};
use hsx_catalog::table3::show;
use hsx_catalog::{table1, table2, table3, SuiteReport};
use hsx_core::connection::{connection_report, curvature, koszul, Tensor};
use hsx_core::hypersymplectic::{assemble_triple, build_e, engine_report, metric, HsError};
use hsx_core::json::{algebra_to_json, endo_to_json, report_to_json, scalar_to_json, two_form_to_json};
use hsx_core::salamon::print_salamon;
use hsx_core::structures::{closed_two_forms, is_almost_complex, nijenhuis_witness, symmetry_constraint, Endo, Symmetry, TwoForm, TwoFormFamily};
use hsx_core::{CoreError, LieAlgebra, Scalar};
use hsx_exact::{Matrix, Rational, Var};
use serde_json::{json, Value};

use crate::input::InputError;

#[derive(Parser)]
#[command(name = "hsx", version, about = "Complex, symplectic and hypersymplectic structures on Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Bind a parameter, e.g. `--param c=1`; repeatable.
    #[arg(long = "param", value_name = "NAME=RATIONAL", global = true)]
    params: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct Construction {
    /// A catalogued construction instead of explicit data.
    #[arg(long, conflicts_with_all = ["algebra", "j", "pk", "cs"])]
    example: Option<String>,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    pk: Option<String>,
    #[arg(long)]
    cs: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra, check Jacobi, print its lower central series.
    Validate { input: String },
    /// Closed 2-forms, and with --j the symmetric and skew families.
    Structures {
        input: String,
        #[arg(long)]
        j: Option<String>,
    },
    /// Build E = ω_pK⁻¹ω_cs and the hypersymplectic triple.
    ConstructHs {
        #[command(flatten)]
        data: Construction,
        /// Require the metric signature; refused while parameters are free.
        #[arg(long)]
        signature: bool,
    },
    /// Levi-Civita connection of g = ω_pK∘J, curvature and completeness.
    Connection {
        #[command(flatten)]
        data: Construction,
    },
    /// Complete J from its values on half the basis.
    Complete {
        #[arg(long)]
        dim: usize,
        partial: String,
    },
    /// The four-dimensional classification suites.
    Tables {
        #[arg(long)]
        only: Option<String>,
    },
    /// The eight-dimensional families and the product construction.
    Section5,
    /// Every suite, after the corpus precheck.
    Catalog,
}

struct Failure {
    code: u8,
    message: String,
    json: Value,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        let message = message.into();
        Failure { code, json: json!({"error": message}), message }
    }
}

fn core_code(e: &CoreError) -> u8 {
    match e {
        CoreError::Jacobi { .. } => 2,
        CoreError::NotComplex(_) | CoreError::NonSpanning(_) | CoreError::Inconsistent(_) => 3,
        _ => 1,
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Io(m) => Failure::new(1, m),
            InputError::Core(c) => Failure::new(core_code(&c), c.to_string()),
        }
    }
}

fn hs_code(e: &HsError) -> u8 {
    match e {
        HsError::NotComplex(_) => 3,
        HsError::Form(_) => 4,
        HsError::NotAlmostProduct(_) => 5,
        HsError::Invariant(_) => 6,
        HsError::Core(c) => core_code(c),
    }
}

struct Output {
    human: String,
    json: Value,
    code: u8,
}

type Bindings = HashMap<Var, Rational>;

fn bindings(c: &Common) -> Result<Bindings, Failure> {
    c.params
        .iter()
        .map(|s| input::binding(s).map(|(n, q)| (Var::new(&n), q)).map_err(|m| Failure::new(1, m)))
        .collect()
}

fn bind_matrix(m: &Matrix<Scalar>, b: &Bindings) -> Result<Matrix<Scalar>, Failure> {
    if b.is_empty() {
        return Ok(m.clone());
    }
    m.try_map(|x| x.eval(b)).map_err(|e| Failure::new(1, e.to_string()))
}

fn bind_algebra(g: LieAlgebra, b: &Bindings) -> Result<LieAlgebra, Failure> {
    if b.is_empty() {
        return Ok(g);
    }
    g.eval(b).map_err(|e| Failure::new(core_code(&e), e.to_string()))
}

fn validate(arg: &str, b: &Bindings) -> Result<Output, Failure> {
    let g = match input::algebra(arg) {
        Err(InputError::Core(e @ CoreError::Jacobi { .. })) => {
            return Err(Failure { code: 2, message: e.to_string(), json: json!({"valid": false, "error": e.to_string()}) });
        }
        r => bind_algebra(r?, b)?,
    };
    g.check_jacobi().map_err(|e| Failure::new(2, e.to_string()))?;
    let series = g.lower_central_series();
    let step = g.nilpotency_step();
    let kind = match step {
        _ if g.is_abelian() => "abelian".to_string(),
        Some(k) => format!("{k}-step nilpotent"),
        None => "not nilpotent".to_string(),
    };
    let mut h = String::new();
    writeln!(h, "valid Lie algebra of dimension {}", g.dim()).ok();
    writeln!(h, "structure equations {}", print_salamon(&g)).ok();
    writeln!(h, "lower central series dimensions {series:?}").ok();
    writeln!(h, "{kind}").ok();
    let j = report_to_json(
        g.dim(),
        json!({"valid": true, "algebra": algebra_to_json(&g), "lower_central_series": series, "nilpotency_step": step, "abelian": g.is_abelian()}),
    );
    Ok(Output { human: h, json: j, code: 0 })
}

fn family_json(f: &TwoFormFamily) -> Value {
    json!({
        "params": f.params,
        "basis": f.basis.iter().map(two_form_to_json).collect::<Vec<_>>(),
        "side_zero": f.side_zero.iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

fn family_text(h: &mut String, name: &str, f: &TwoFormFamily) -> Result<bool, Failure> {
    let nondeg = !f.is_empty() && f.generically_nondegenerate().map_err(|e| Failure::new(1, e.to_string()))?;
    writeln!(h, "{name}: dimension {}, {}", f.len(), if nondeg { "generically nondegenerate" } else { "degenerate" }).ok();
    for (p, m) in f.params.iter().zip(&f.basis) {
        writeln!(h, "  {p}: {}", show(m)).ok();
    }
    for s in &f.side_zero {
        writeln!(h, "  with {s} = 0").ok();
    }
    Ok(nondeg)
}

fn structures(arg: &str, j: Option<&str>, b: &Bindings) -> Result<Output, Failure> {
    let g = bind_algebra(input::algebra(arg)?, b)?;
    let mut h = String::new();
    let closed = closed_two_forms(&g);
    family_text(&mut h, "closed 2-forms", &closed)?;
    let mut out = json!({"closed": family_json(&closed)});
    if let Some(j) = j {
        let j = bind_matrix(&input::complex_structure(j, g.dim())?, b)?;
        require_complex(&g, &j)?;
        out["J"] = endo_to_json(&j);
        for (name, mode) in [("symmetric", Symmetry::Symmetric), ("skew", Symmetry::Skew)] {
            let f = symmetry_constraint(&g, &j, mode);
            let nondeg = family_text(&mut h, name, &f)?;
            out[name] = family_json(&f);
            out[name]["nondegenerate"] = json!(nondeg);
        }
    }
    Ok(Output { human: h, json: report_to_json(g.dim(), out), code: 0 })
}

fn require_complex(g: &LieAlgebra, j: &Endo) -> Result<(), Failure> {
    if !is_almost_complex(j) {
        return Err(Failure::new(3, "J is not a complex structure: J² ≠ −Id"));
    }
    match nijenhuis_witness(g, j) {
        Ok(None) => Ok(()),
        Ok(Some((a, c, v))) => {
            let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Failure::new(3, format!("J is not integrable: N_J(e{a},e{c}) = ({})", v.join(", "))))
        }
        Err(e) => Err(Failure::new(1, e.to_string())),
    }
}

fn construction(d: &Construction, b: &Bindings, need_cs: bool) -> Result<(LieAlgebra, Endo, TwoForm, Option<TwoForm>), Failure> {
    let (g, j, pk, cs) = if let Some(name) = &d.example {
        let ex = example(name).ok_or_else(|| Failure::new(1, format!("unknown example {name:?}; known: {}", EXAMPLES.join(", "))))?;
        (ex.algebra, ex.j, ex.pk, Some(ex.cs))
    } else {
        let missing = |f: &str| Failure::new(1, format!("--{f} is required without --example"));
        let g = input::algebra(d.algebra.as_deref().ok_or_else(|| missing("algebra"))?)?;
        let n = g.dim();
        let j = input::complex_structure(d.j.as_deref().ok_or_else(|| missing("j"))?, n)?;
        let pk = input::form(d.pk.as_deref().ok_or_else(|| missing("pk"))?, n)?;
        let cs = match d.cs.as_deref() {
            Some(s) => Some(input::form(s, n)?),
            None if need_cs => return Err(missing("cs")),
            None => None,
        };
        (g, j, pk, cs)
    };
    let cs = cs.map(|m| bind_matrix(&m, b)).transpose()?;
    Ok((bind_algebra(g, b)?, bind_matrix(&j, b)?, bind_matrix(&pk, b)?, cs))
}

fn free_params(ms: &[&Matrix<Scalar>]) -> Vec<String> {
    let mut v: Vec<String> = ms.iter().flat_map(|m| m.entries().iter().flat_map(|x| x.vars())).map(|v| v.name().to_string()).collect();
    v.sort();
    v.dedup();
    v
}

fn construct_hs(d: &Construction, want_signature: bool, b: &Bindings) -> Result<Output, Failure> {
    let (g, j, pk, cs) = construction(d, b, true)?;
    let cs = cs.expect("required");
    let free = free_params(&[&j, &pk, &cs]);
    if want_signature && !free.is_empty() {
        return Err(Failure::new(
            1,
            format!("the signature needs values for {}; bind them with --param", free.join(", ")),
        ));
    }
    let mut report = engine_report(&g, &j, &pk, &cs, &[]);
    let mut h = String::new();
    match assemble_triple(&g, &j, &pk, &cs, &[]) {
        Ok(t) => {
            writeln!(h, "hypersymplectic structure on a {}-dimensional algebra", g.dim()).ok();
            writeln!(h, "E columns: {}", columns(&t.e)).ok();
            if free.is_empty() {
                for (_, (p, q)) in &t.signatures {
                    writeln!(h, "signature ({p},{q})").ok();
                }
            } else {
                writeln!(h, "signature not evaluated: parameters {} are free", free.join(", ")).ok();
                report["signature"] = json!({"refused": "symbolic parameters", "free": free});
            }
            let flat = koszul(&g, &t.metric).map(|c| curvature(&c, &g).is_zero());
            if let Ok(flat) = flat {
                writeln!(h, "{}", if flat { "flat" } else { "not flat" }).ok();
                report["flat"] = json!(flat);
            }
            Ok(Output { human: h, json: report_to_json(g.dim(), report), code: 0 })
        }
        Err(e) => {
            writeln!(h, "{e}").ok();
            if let (HsError::NotAlmostProduct(_), Ok(e)) = (&e, build_e(&pk, &cs)) {
                let sq = e.dot(&e);
                let entries: Vec<(usize, usize)> = [(1, 1), (3, 3)].into_iter().filter(|(i, _)| *i <= g.dim()).collect();
                for (r, c) in &entries {
                    writeln!(h, "(E^2)[{r},{c}] = {}", sq[(r - 1, c - 1)]).ok();
                }
                report["E_squared_entries"] =
                    Value::Array(entries.iter().map(|(r, c)| json!({"row": r, "col": c, "value": scalar_to_json(&sq[(r - 1, c - 1)])})).collect());
            }
            Err(Failure { code: hs_code(&e), message: h.trim_end().to_string(), json: report_to_json(g.dim(), report) })
        }
    }
}

fn columns(m: &Matrix<Scalar>) -> String {
    (0..m.cols())
        .map(|j| {
            let terms: Vec<String> = (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| format!("({})e{}", m[(i, j)], i + 1)).collect();
            format!("e{} -> {}", j + 1, if terms.is_empty() { "0".into() } else { terms.join(" + ") })
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn connection(d: &Construction, b: &Bindings) -> Result<Output, Failure> {
    let (g, j, pk, cs) = construction(d, b, false)?;
    require_complex(&g, &j)?;
    let gm = metric(&j, &pk);
    let mut tensors = vec![("J", Tensor::Endo(j.clone())), ("omega_pK", Tensor::Form(pk.clone()))];
    if let Some(cs) = &cs {
        tensors.push(("omega_cs", Tensor::Form(cs.clone())));
        if let Ok(e) = build_e(&pk, cs) {
            tensors.push(("E", Tensor::Endo(e)));
        }
    }
    let r = connection_report(&g, &gm, &tensors).map_err(|e| Failure::new(core_code(&e), e.to_string()))?;
    let conn = koszul(&g, &gm).map_err(|e| Failure::new(1, e.to_string()))?;
    let mut h = String::new();
    for (i, k, v) in conn.nonzero() {
        let terms: Vec<String> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(l, x)| format!("({x})e{}", l + 1)).collect();
        writeln!(h, "nabla_e{} e{} = {}", i + 1, k + 1, terms.join(" + ")).ok();
    }
    writeln!(h, "flat: {}", r["flat"]).ok();
    writeln!(h, "Ricci-flat: {}", r["ricci_flat"]).ok();
    if let Some(p) = r["parallel_tensors"].as_object() {
        for (k, v) in p {
            writeln!(h, "{k} parallel: {v}").ok();
        }
    }
    let c = &r["completeness"];
    writeln!(h, "complete: {} ({})", c["verdict"], c["criterion"].as_str().unwrap_or("")).ok();
    Ok(Output { human: h, json: report_to_json(g.dim(), r), code: 0 })
}

fn complete(dim: usize, partial: &str, b: &Bindings) -> Result<Output, Failure> {
    let j = bind_matrix(&input::complex_structure(partial, dim)?, b)?;
    Ok(Output { human: format!("{}\n", columns(&j)), json: endo_to_json(&j), code: 0 })
}

fn suite_output(run: &CatalogRun, extra: &str) -> Output {
    let code = if run.passed() { 0 } else { 6 };
    Output { human: format!("{run}{extra}"), json: run.to_json(), code }
}

fn single(reports: Vec<SuiteReport>) -> Output {
    let passed = reports.iter().all(|r| r.passed());
    let human: String = reports.iter().map(|r| r.to_string()).collect();
    let json = json!({"passed": passed, "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()});
    Output { human, json, code: if passed { 0 } else { 6 } }
}

fn tables(only: Option<&str>) -> Result<Output, Failure> {
    let Some(label) = only else {
        return Ok(suite_output(&run_catalog(&Corpus::builtin(), &[1, 2, 3, 4], true), ""));
    };
    let pre = harness::precheck(&Corpus::builtin());
    if !pre.passed() {
        return Ok(single(vec![pre]));
    }
    let mut reports = Vec::new();
    if let Some(e) = entry(label) {
        reports.push(table1::run_entry(&e));
    }
    if let Some(r) = table2::run_only(label) {
        reports.push(r);
    }
    if let Some(row) = table3::ROWS.iter().find(|r| r.label == label) {
        let mut r = SuiteReport::new(format!("table 3 row {label}"));
        r.check_result(label, table3::row_verdict(row), |(s, k, d)| (*s == row.sym && *k == row.skew, d.join("; ")));
        reports.push(r);
    }
    if reports.is_empty() {
        return Err(Failure::new(1, format!("no table row labelled {label:?}")));
    }
    Ok(single(reports))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let b = bindings(&cli.common)?;
    match &cli.command {
        Command::Validate { input } => validate(input, &b),
        Command::Structures { input, j } => structures(input, j.as_deref(), &b),
        Command::ConstructHs { data, signature } => construct_hs(data, *signature, &b),
        Command::Connection { data } => connection(data, &b),
        Command::Complete { dim, partial } => complete(*dim, partial, &b),
        Command::Tables { only } => tables(only.as_deref()),
        Command::Section5 => Ok(suite_output(&run_catalog(&Corpus::builtin(), &[7, 8, 9, 11], false), "")),
        Command::Catalog => {
            let run = run_catalog(&Corpus::builtin(), ALL, true);
            let table = if run.precheck.passed() { format!("\n{}", verdict_table()) } else { String::new() };
            Ok(suite_output(&run, &table))
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), String> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing {path}: {e}")),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("writing stdout: {e}")),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.common.format == Format::Json;
    let (text, code, err) = match run(&cli) {
        Ok(o) => (if json { format!("{:#}\n", o.json) } else { o.human }, o.code, None),
        Err(f) => {
            if json {
                (format!("{:#}\n", f.json), f.code, None)
            } else {
                (String::new(), f.code, Some(f.message))
            }
        }
    };
    if let Err(e) = emit(&cli.common, &text) {
        eprintln!("hsx: {e}");
        return ExitCode::from(1);
    }
    if let Some(m) = err {
        eprintln!("hsx: {m}");
    }
    ExitCode::from(code)
}
