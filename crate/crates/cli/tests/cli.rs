use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const HEISENBERG: &str = r#"{"dim":3,"labels":["x","y","z"],"brackets":[[0,1,[[2,"1"]]]]}"#;

fn nilgrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgrade")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        let f = Files(tempfile::tempdir().unwrap());
        f.put("h.json", HEISENBERG);
        f
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn alg(&self) -> String {
        self.path("h.json").to_str().unwrap().to_owned()
    }
}

#[test]
fn free_writes_hall_table() {
    let o = nilgrade(&["free", "--gens", "4", "--class", "2", "--out", "-"]);
    assert_eq!(code(&o), 0);
    let j = stdout_json(&o);
    assert_eq!(j["dim"], 10);
    assert_eq!(j["labels"][4], "[X1,X2]");
    assert_eq!(j["multidegree"][4], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(j["brackets"][0], serde_json::json!([0, 1, [[4, "1"]]]));
}

#[test]
fn free_to_file_matches_stdout() {
    let f = Files::new();
    let out = f.path("free.json");
    let o = nilgrade(&["free", "--gens", "2", "--class", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(from_file, stdout_json(&nilgrade(&["free", "--gens", "2", "--class", "3"])));
    assert_eq!(from_file["dim"], 5);
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(code(&nilgrade(&["free", "--gens", "0", "--class", "2"])), 2);
    assert_eq!(code(&nilgrade(&["free", "--gens", "2"])), 2);
    assert_eq!(code(&nilgrade(&["no-such-command"])), 2);
    let f = Files::new();
    let missing = f.path("missing.json");
    assert_eq!(code(&nilgrade(&["check-grading", "--alg", missing.to_str().unwrap(), "--grading", &f.alg()])), 2);
    let garbage = f.put("garbage.json", "{not json");
    assert_eq!(code(&nilgrade(&["check-automorphism", "--alg", &garbage, "--matrix", &garbage])), 2);
}

#[test]
fn quotient_by_center() {
    let f = Files::new();
    let ideal = f.put("z.json", r#"[["0","0","1"]]"#);
    let o = nilgrade(&["quotient", "--alg", &f.alg(), "--ideal", &ideal]);
    assert_eq!(code(&o), 0);
    let j = stdout_json(&o);
    assert_eq!(j["algebra"]["dim"], 2);
    assert_eq!(j["algebra"]["brackets"], serde_json::json!([]));
    assert_eq!(j["projection"]["kept"], serde_json::json!([0, 1]));
}

#[test]
fn quotient_rejects_non_ideal_unless_closed() {
    let f = Files::new();
    let rows = f.put("x.json", r#"[[[0, "1"]]]"#);
    assert_eq!(code(&nilgrade(&["quotient", "--alg", &f.alg(), "--ideal", &rows])), 2);
    let o = nilgrade(&["quotient", "--alg", &f.alg(), "--ideal", &rows, "--close"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["algebra"]["dim"], 1);
}

#[test]
fn check_grading_exit_codes() {
    let f = Files::new();
    let cases = [
        (r#"{"weights":[1,2],"bases":[[["1","0","0"],["0","1","0"]],[["0","0","1"]]]}"#, 0, "positive"),
        (r#"{"weights":[0,1],"bases":[[[[0,"1"]]],[[[1,"1"]],[[2,"1"]]]]}"#, 10, "nonnegative_nontrivial"),
        (r#"{"weights":[0],"bases":[[[[0,"1"]],[[1,"1"]],[[2,"1"]]]]}"#, 11, "trivial"),
        (r#"{"weights":[-1,0,1],"bases":[[[[0,"1"]]],[[[2,"1"]]],[[[1,"1"]]]]}"#, 12, "other"),
    ];
    for (k, (grading, expected, class)) in cases.iter().enumerate() {
        let g = f.put(&format!("g{k}.json"), grading);
        let o = nilgrade(&["check-grading", "--alg", &f.alg(), "--grading", &g]);
        assert_eq!(code(&o), *expected, "{grading}");
        assert_eq!(stdout_json(&o)["class"], *class);
    }
}

#[test]
fn check_grading_reports_invalid_gradings() {
    let f = Files::new();
    let bracket = f.put("b.json", r#"{"weights":[1,2],"bases":[[[[0,"1"]]],[[[1,"1"]],[[2,"1"]]]]}"#);
    let o = nilgrade(&["check-grading", "--alg", &f.alg(), "--grading", &bracket]);
    assert_eq!(code(&o), 2);
    let j = stdout_json(&o);
    assert_eq!(j["valid"], false);
    assert_eq!(j["witness"]["components"], serde_json::json!([1, 2]));
    let short = f.put("s.json", r#"{"weights":[1],"bases":[[[[0,"1"]]]]}"#);
    assert_eq!(code(&nilgrade(&["check-grading", "--alg", &f.alg(), "--grading", &short])), 2);
}

fn check_automorphism(f: &Files, name: &str, matrix: &str) -> Output {
    let m = f.put(name, matrix);
    nilgrade(&["check-automorphism", "--alg", &f.alg(), "--matrix", &m])
}

#[test]
fn check_automorphism_exit_codes() {
    let f = Files::new();
    let o = check_automorphism(&f, "exp.json", "[[2,0,0],[0,3,0],[0,0,6]]");
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["spectrum"]["kind"], "expanding");
    let o = check_automorphism(&f, "part.json", "[[1,0,0],[0,2,0],[0,0,2]]");
    assert_eq!(code(&o), 10);
    assert_eq!(stdout_json(&o)["spectrum"]["eigenvalue_one_multiplicity"], 1);
    let o = check_automorphism(&f, "neither.json", r#"[[2,0,0],[0,"1/2",0],[0,0,1]]"#);
    assert_eq!(code(&o), 12);
    assert_eq!(stdout_json(&o)["spectrum"]["partition"]["inside"], 1);
    let o = check_automorphism(&f, "hom.json", "[[2,0,0],[0,3,0],[0,0,5]]");
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["automorphism"]["violation"], serde_json::json!([0, 1]));
    let o = check_automorphism(&f, "singular.json", "[[1,0,0],[1,0,0],[0,0,0]]");
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["automorphism"]["invertible"], false);
    assert_eq!(code(&check_automorphism(&f, "shape.json", "[[1,0],[0,1]]")), 2);
}

#[test]
fn grading_from_automorphism() {
    let f = Files::new();
    let m = f.put("m.json", "[[2,0,0],[0,2,0],[0,0,4]]");
    let o = nilgrade(&["grading-from-aut", "--alg", &f.alg(), "--matrix", &m]);
    assert_eq!(code(&o), 0);
    let j = stdout_json(&o);
    assert_eq!(j["mu"], "2");
    assert_eq!(j["class"], "positive");
    assert_eq!(j["grading"]["weights"], serde_json::json!([1, 2]));

    let g = f.put("g.json", &j["grading"].to_string());
    assert_eq!(code(&nilgrade(&["check-grading", "--alg", &f.alg(), "--grading", &g])), 0);

    let jordan = f.put("jordan.json", "[[2,1,0],[0,2,0],[0,0,4]]");
    let o = nilgrade(&["grading-from-aut", "--alg", &f.alg(), "--matrix", &jordan]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["recovered"], false);
    let bad = f.put("bad.json", "[[2,0,0],[0,3,0],[0,0,5]]");
    assert_eq!(code(&nilgrade(&["grading-from-aut", "--alg", &f.alg(), "--matrix", &bad])), 2);
}

#[test]
fn paper_example_verify_passes_and_is_deterministic() {
    let a = nilgrade(&["paper-example", "verify"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let j = stdout_json(&a);
    assert_eq!(j["passed"], true);
    assert!(j["report"]["claims"].as_array().unwrap().len() >= 15);
    let b = nilgrade(&["paper-example", "verify", "--seed", "0", "--samples", "10000"]);
    assert_eq!(a.stdout, b.stdout);
    let c = nilgrade(&["--seed", "7", "--samples", "50", "paper-example", "verify"]);
    assert_eq!(code(&c), 0);
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn paper_example_build_writes_tower() {
    let f = Files::new();
    let dir = f.path("tower");
    let o = nilgrade(&["paper-example", "build", "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(&dir, "free.json")["dim"], 964);
    assert_eq!(read(&dir, "ntilde.json")["dim"], 344);
    assert_eq!(read(&dir, "n.json")["dim"], 342);
    let p = read(&dir, "projection_free_ntilde.json");
    assert_eq!(p["source_dim"], 964);
    assert_eq!(p["ideal_basis"].as_array().unwrap().len(), 620);
    let q = read(&dir, "projection_ntilde_n.json");
    assert_eq!(q["ideal_basis"].as_array().unwrap().len(), 2);

    // the written quotient reproduces through the quotient subcommand
    let rows = f.put("j.json", &q["ideal_basis"].to_string());
    let o = nilgrade(&["quotient", "--alg", dir.join("ntilde.json").to_str().unwrap(), "--ideal", &rows]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["algebra"], read(&dir, "n.json"));
}

#[test]
fn find_pisot_on_default_field() {
    let o = nilgrade(&["find-pisot", "--height", "3"]);
    assert_eq!(code(&o), 0);
    let j = stdout_json(&o);
    assert_eq!(j["mu"], serde_json::json!(["-1", "0", "2", "1"]));
    assert_eq!(j["pisot"]["passed"], true);
    assert_eq!(code(&nilgrade(&["find-pisot", "--height", "0"])), 1);
    let f = Files::new();
    let bad = f.put("f.json", r#"{"min_poly":[2,0,0,0,3]}"#);
    assert_eq!(code(&nilgrade(&["find-pisot", "--field", &bad])), 2);
}

#[test]
fn anosov_check_exit_codes() {
    let a = nilgrade(&["anosov-check"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let j = stdout_json(&a);
    assert_eq!(j["hyperbolic"], true);
    assert_eq!(j["equivariant"], true);
    assert_eq!(j["offending_weight"], Value::Null);

    let f = Files::new();
    let field = f.put("field.json", r#"{"min_poly":[2,0,-4,0,1],"sigma":[0,-3,0,1]}"#);
    let mu = f.put("mu.json", r#"["-1","0","2","1"]"#);
    let b = nilgrade(&["anosov-check", "--field", &field, "--mu", &mu]);
    assert_eq!(code(&b), 0);
    assert_eq!(a.stdout, b.stdout);

    let theta = f.put("theta.json", "[0, 1]");
    let o = nilgrade(&["anosov-check", "--mu", &theta]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["report"]["unit"], false);
    let d4 = f.put("d4.json", r#"{"min_poly":[-2,0,0,0,1]}"#);
    assert_eq!(code(&nilgrade(&["anosov-check", "--field", &d4, "--mu", &theta])), 1);
    let long = f.put("long.json", "[1, 2, 3, 4, 5]");
    assert_eq!(code(&nilgrade(&["anosov-check", "--mu", &long])), 2);
}

#[test]
fn field_without_sigma_gets_one_by_search() {
    let f = Files::new();
    let field = f.put("field.json", r#"{"min_poly":[2,0,-4,0,1]}"#);
    let o = nilgrade(&["find-pisot", "--field", &field]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["field"]["sigma"], serde_json::json!([0, -3, 0, 1]));
}
