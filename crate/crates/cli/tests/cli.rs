use std::io::Write;
use std::process::{Command, Output, Stdio};

use hsx_core::json::{from_json, Document};
use serde_json::Value;

fn hsx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsx")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn validate_reports_the_step() {
    let o = hsx(&["validate", "(0,0,-12,0)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2-step nilpotent"));
    let o = hsx(&["validate", "(0,0,0,0)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("abelian"));
    let o = hsx(&["validate", "(0^3,12,13,14+23,15,16+2*25+34)", "--format", "json"]);
    assert_eq!(json(&o)["payload"]["nilpotency_step"], 4);
}

#[test]
fn jacobi_failure_exits_2_with_witness() {
    let o = hsx(&["validate", "(0,0,12,34)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("e124"), "{}", stderr(&o));
}

#[test]
fn syntax_error_exits_1() {
    let o = hsx(&["validate", "(0,0,1x2)"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("byte"));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hsx"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"(0,0,-12,0)").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2-step"));
}

#[test]
fn json_output_is_an_hsx_document() {
    let o = hsx(&["validate", "(0,0,-12,0)", "--format", "json"]);
    let v = json(&o);
    assert!(matches!(from_json(&v), Ok(Document::Report { dim: 4, .. })));
    let algebra = &v["payload"]["algebra"];
    let Ok(Document::Algebra(g)) = from_json(algebra) else { panic!("algebra document") };
    assert_eq!(hsx_core::salamon::print_salamon(&g), "(0,0,-12,0)");
    // an algebra document is itself accepted as input
    let o = hsx(&["validate", &algebra.to_string()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn flat_pair_at_c_equal_one() {
    let o = hsx(&["construct-hs", "--example", "flat", "--param", "c=1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("signature (4,4)") && s.contains("flat"), "{s}");
}

#[test]
fn four_step_example_exits_5_with_two_entries() {
    let o = hsx(&["construct-hs", "--example", "4-step"]);
    assert_eq!(code(&o), 5);
    let e = stderr(&o);
    assert!(e.contains("(E^2)[1,1] = (a17^2 + a18^2)/(b17^2)"), "{e}");
    assert!(e.contains("(E^2)[3,3] = (4*a17^2 + 4*a18^2)/(b17^2)"), "{e}");
    let o = hsx(&["construct-hs", "--example", "4-step", "--format", "json"]);
    assert_eq!(code(&o), 5);
    assert_eq!(json(&o)["payload"]["E_squared_entries"].as_array().map(Vec::len), Some(2));
}

#[test]
fn same_form_twice_exits_4() {
    let o = hsx(&["construct-hs", "--algebra", "(0,0,-12,0)", "--j", "1>2:-1; 3>4:-1", "--pk", "14:1; 23:1", "--cs", "14:1; 23:1"]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
}

#[test]
fn non_integrable_j_exits_3() {
    let o = hsx(&["construct-hs", "--algebra", "(0,0,-12,0)", "--j", "1>3:1; 2>4:1", "--pk", "14:1; 23:1", "--cs", "13:1; 24:-1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    let o = hsx(&["complete", "--dim", "2", "1>1:1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn r4_witness_from_explicit_data() {
    let o = hsx(&["construct-hs", "--algebra", "(0,0,0,0)", "--j", "1>2:-1; 3>4:-1", "--pk", "12:-1;13:-1;14:-1;23:1;24:-1;34:-1", "--cs", "13:-1;24:1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("signature (2,2)"));
}

#[test]
fn symbolic_signature_refused() {
    let o = hsx(&["construct-hs", "--example", "flat", "--signature"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--param"));
    let o = hsx(&["construct-hs", "--example", "flat"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("signature not evaluated"));
}

#[test]
fn complete_j_c() {
    let o = hsx(&["complete", "--dim", "8", "1>2:(c+1)/c; 3>4:-1; 5>6:1/c; 7>8:(3+2*c)/c"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("e2 -> ((-c)/(c + 1))e1"), "{}", stdout(&o));
}

#[test]
fn structures_families() {
    let o = hsx(&["structures", "(0,0,-12,0)", "--j", "1>2:-1; 3>4:-1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["payload"]["closed"]["params"].as_array().map(Vec::len), Some(5));
    assert_eq!(v["payload"]["symmetric"]["nondegenerate"], true);
}

#[test]
fn connection_of_the_non_flat_family() {
    let o = hsx(&["connection", "--example", "nonflat", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let p = &json(&o)["payload"];
    assert_eq!(p["flat"], false);
    assert_eq!(p["ricci_flat"], true);
    assert_eq!(p["completeness"]["criterion"], "polynomial_geodesics");
    assert_eq!(p["parallel_tensors"]["E"], true);
}

#[test]
fn tables_only_one_row() {
    let o = hsx(&["tables", "--only", "d_4,2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("symmetric family equals the printed span"));
    let o = hsx(&["tables", "--only", "nonsense"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("hsx-out-{}.json", std::process::id()));
    let o = hsx(&["section5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().map(Vec::len), Some(4));
    std::fs::remove_file(path).ok();
}

#[test]
fn bad_param_binding() {
    let o = hsx(&["construct-hs", "--example", "flat", "--param", "c=x"]);
    assert_eq!(code(&o), 1);
}
