use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = r#"{"n": 3, "ideals": [{"vars": [1, 2], "power": 1}, {"vars": [2, 3], "power": 1}, {"vars": [1, 3], "power": 1}]}"#;
const COUNTER: &str = r#"{"n": 3, "ideals": [{"vars": [1, 2], "power": 2}, {"vars": [2, 3], "power": 2}, {"vars": [1, 3], "power": 2}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multirees"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generators_of_the_triangle_are_the_four_and_stable() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TRIANGLE);
    let a = run(&["gb", "--generators", s(&f)]);
    assert_eq!(a.status.code(), Some(0));
    let lines: Vec<String> = stdout(&a).lines().map(String::from).collect();
    assert_eq!(
        lines,
        [
            "T[x1,t3]*x3 - T[x3,t3]*x1",
            "T[x2,t2]*x3 - T[x3,t2]*x2",
            "T[x1,t1]*x2 - T[x2,t1]*x1",
            "T[x1,t3]*T[x3,t2]*T[x2,t1] - T[x3,t3]*T[x2,t2]*T[x1,t1]",
        ]
    );
    let b = run(&["gb", "--generators", s(&f)]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn triangle_basis_has_seven_elements() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TRIANGLE);
    let o = run(&["gb", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn sink_certificate_on_the_triangle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TRIANGLE);
    let o = run(&["verify", "--method", "sink", "--degcap", "4", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("sink: pass"));
}

#[test]
fn all_methods_in_fixed_order() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TRIANGLE);
    let o = run(&["--format", "json", "verify", "--method", "oracle,buchberger,sink", "--fiber", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let methods: Vec<&str> = v["results"][0]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["buchberger", "sink", "oracle"]);
    assert_eq!(v["results"][0]["map"], "psi");
}

#[test]
fn chordal_reports_the_six_cycle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.json", COUNTER);
    let o = run(&["chordal", s(&f)]);
    assert_eq!(stdout(&o), "non-chordal\nwitness: x1 - t1 - x2 - t2 - x3 - t3 - x1\n");
    let g = run(&["chordal", "--gamma-free", s(&f)]);
    assert!(stdout(&g).starts_with("non-chordal\n"));
    let dot = run(&["--format", "dot", "chordal", s(&f)]);
    assert_eq!(stdout(&dot).matches(" -- ").count(), 6);
}

#[test]
fn m2_scripts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TRIANGLE);
    let o = run(&["--format", "m2", "gb", "--generators", s(&f)]);
    let text = stdout(&o);
    assert!(text.contains("S = QQ[T_1, T_2, T_3, T_4, T_5, T_6, x_1, x_2, x_3, MonomialOrder => Lex];"));
    let body = text.split("I = ideal(\n").nth(1).unwrap().split("\n);").next().unwrap();
    assert_eq!(body.lines().count(), 4);

    let lin = write(&dir, "l.json", r#"{"n": 2, "ideals": [{"vars": [1, 2], "power": 1}]}"#);
    let o = run(&["--format", "m2", "fiber-gb", s(&lin)]);
    assert!(stdout(&o).contains("I = ideal(0_S);"));

    let o = run(&["--format", "m2", "chordal", s(&lin)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn counter_json_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.json", COUNTER);
    let o = run(&["--format", "json", "matrix", s(&f)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["instance_hash"].as_str().unwrap().len(), 64);
    let model = &v["results"][0]["model"];
    assert_eq!(model["ideals"].as_array().unwrap().len(), 3);
    assert_eq!(model["t_variables"].as_array().unwrap().len(), 9);
    assert_eq!(model["matrix"]["cells"].as_array().unwrap().len(), 15);
    assert_eq!(model["schema"], v["schema"]);
}

#[test]
fn instance_hash_ignores_formatting() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", COUNTER);
    let b = write(&dir, "b.json", &COUNTER.replace(' ', "\n  "));
    let hash = |p: &Path| {
        let v: Value = serde_json::from_str(&stdout(&run(&["--format", "json", "fiber-gb", s(p)]))).unwrap();
        v["instance_hash"].as_str().unwrap().to_string()
    };
    assert_eq!(hash(&a), hash(&b));
}

#[test]
fn flags_override_file_options() {
    let dir = TempDir::new().unwrap();
    let with_opts = COUNTER.replacen('{', r#"{"options": {"order-variant": "x-above-T"}, "#, 1);
    let f = write(&dir, "o.json", &with_opts);
    let plain = write(&dir, "p.json", COUNTER);
    let file_order = stdout(&run(&["reduced-gb", s(&f)]));
    let flag_order = stdout(&run(&["--order-variant", "x-above-T", "reduced-gb", s(&plain)]));
    let overridden = stdout(&run(&["--order-variant", "convention", "reduced-gb", s(&f)]));
    let convention = stdout(&run(&["reduced-gb", s(&plain)]));
    assert_eq!(file_order, flag_order);
    assert_eq!(overridden, convention);
    assert_ne!(file_order, convention);
    assert!(file_order.lines().any(|l| l == "x2*T[x3^2,t3]*T[x1^2,t1] - x3*T[x1*x3,t3]*T[x1*x2,t1]"), "{file_order}");
}

#[test]
fn input_errors_exit_two_with_positions() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "{\"n\": 3,\n \"ideals\": [}");
    let o = run(&["gb", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));

    let f = write(&dir, "range.json", r#"{"n": 2, "ideals": [{"vars": [3], "power": 1}]}"#);
    let o = run(&["gb", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x3"));

    let c = write(&dir, "c.json", COUNTER);
    let o = run(&["fiber-type", s(&c), "x1*T[x2,t1 - x2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column"));

    let o = run(&["gb", "/nonexistent/instance.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_is_reported() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", COUNTER);
    let o = run(&["--cap", "10", "verify", "--method", "sink", "--degcap", "5", s(&c)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("resource cap exceeded"), "{}", stderr(&o));
}

#[test]
fn fiber_type_rewrites_the_counter_minor() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", COUNTER);
    let o = run(&["fiber-type", s(&c), "x2*T[x2*x3,t2]*T[x1^2,t3] - x1*T[x2^2,t2]*T[x1*x3,t3]"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("[2x2 x-minor]").count(), 2);
    assert!(text.ends_with("expansion exact: true\n"));

    let o = run(&["fiber-type", s(&c), "T[x1^2,t1]*T[x2^2,t2]*T[x3^2,t3] - T[x1*x2,t1]*T[x2*x3,t2]*T[x1*x3,t3]"]);
    assert_eq!(o.status.code(), Some(2), "not a binary quasi-minor of C");
}

#[test]
fn koszul_and_cycles() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", COUNTER);
    let o = run(&["koszul", s(&c)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("outside quadric span: true"));

    let t = write(&dir, "t.json", TRIANGLE);
    let o = run(&["cycles", s(&t)]);
    let text = stdout(&o);
    assert!(text.contains("T[x1,t3]*T[x3,t2]*T[x2,t1] - T[x3,t3]*T[x2,t2]*T[x1,t1]"), "{text}");
    let short = run(&["cycles", "--max-len", "4", s(&t)]);
    assert_eq!(stdout(&short).lines().count(), 3);
}

#[test]
fn reference_cases() {
    let o = run(&["paper-examples", "--only", "2,6,8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    let o2 = run(&["paper-examples", "--only", "2,6,8"]);
    assert_eq!(o.stdout, o2.stdout);

    let o = run(&["paper-examples", "--only", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL [1]"));
}

#[test]
fn fuzz_is_seeded() {
    let a = run(&["fuzz", "--seed", "7", "--count", "6"]);
    let b = run(&["fuzz", "--seed", "7", "--count", "6"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let ja = run(&["--format", "json", "fuzz", "--seed", "7", "--count", "6"]);
    let jb = run(&["--format", "json", "fuzz", "--seed", "8", "--count", "6"]);
    assert_ne!(ja.stdout, jb.stdout);
}
