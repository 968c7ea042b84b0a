use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_conevanish"));
    c.env_remove("CONEVANISH_THREADS");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scenario(name: &str) -> PathBuf {
    conevanish_cli::bundled_scenario_dir().join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn betti_of_three_coordinate_points() {
    let o = run(&["--json", "betti", p(&data("triangle.txt"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["betti"].as_array().unwrap();
    let get = |i: u64, j: i64| {
        entries
            .iter()
            .find(|e| e["i"] == i && e["j"] == j)
            .map_or(0, |e| e["value"].as_u64().unwrap())
    };
    assert_eq!((get(0, 0), get(1, 2), get(2, 3)), (1, 3, 2));
    assert_eq!(v["projective_dimension"], 2);
}

#[test]
fn gorenstein_and_cm_flags() {
    let o = run(&["--json", "gorenstein", p(&data("triangle.txt"))]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cohen_macaulay"], true);
    assert_eq!(v["gorenstein"], false);
}

#[test]
fn cohomology_with_negative_twist() {
    let o = run(&["--json", "cohomology", p(&data("cubic_x.txt")), "--i", "1", "--twist", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // h1(O_E(-2)) = h0(O_E(2)) = 6
    assert_eq!(v["value"], 6);
}

#[test]
fn input_errors_exit_with_two() {
    let o = run(&["cohomology", p(&data("cubic_x.txt")), "--i", "4", "--twist", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--field", "F32", "gb", p(&data("triangle.txt"))]).status.code(), Some(2));
    assert_eq!(run(&["gb", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn parse_errors_report_line_and_column() {
    let o = run(&["run", p(&data("bad_syntax.scn"))]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn inconclusive_verdict_exits_with_one() {
    let o = run(&["verify", "gorenstein", "--iv", p(&data("cubic_x.txt")), "--iw", p(&data("not_ci.txt"))]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("INCONCLUSIVE"));
    assert!(text.contains("FAIL hypothesis.w_complete_intersection"), "{text}");
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let o = run(&["--budget-pairs", "2", "--json", "verify", "e1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn failures_are_recorded_per_invocation() {
    let o = run(&["--json", "run", p(&data("mixed.scn"))]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let statuses: Vec<&str> = v["invocations"].as_array().unwrap().iter().map(|i| i["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["inconclusive", "error", "ok"]);
}

#[test]
fn prop32_alias_and_out_file() {
    let dir = std::env::temp_dir().join(format!("conevanish-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("fiber.json");
    let o = run(&[
        "--json",
        "--out",
        p(&out),
        "verify",
        "prop32",
        "--iv",
        p(&data("cubic_x.txt")),
        "--iw",
        p(&data("cubic_y.txt")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["claim_id"], "exceptional_fiber");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fiber_cone_from_product_files() {
    let o = run(&["--json", "fiber-cone", "--iv", p(&data("cubic_x.txt")), "--iw", p(&data("cubic_y.txt"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ideal"], serde_json::json!(["T0^3 + T1^3 + T2^3"]));
}

#[test]
fn bundled_scenarios_exit_zero() {
    for name in ["conifold.scn", "e1_fermat.scn", "normality_cubics.scn", "segre_small.scn"] {
        let o = run(&["run", p(&scenario(name))]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn empty_scenario_is_an_empty_passing_report() {
    let dir = std::env::temp_dir().join(format!("conevanish-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("empty.scn");
    std::fs::write(&f, "# nothing\n").unwrap();
    let o = run(&["--json", "run", p(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invocations"], serde_json::json!([]));
    assert_eq!(v["scenario"], "empty");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_cap_does_not_change_output() {
    let path = scenario("e1_fermat.scn");
    let args = ["--json", "run", p(&path)];
    let one = bin().args(args).env("CONEVANISH_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("CONEVANISH_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, four.stdout);
    let parallel = run(&["--json", "run", "--parallel", p(&path)]);
    assert_eq!(one.stdout, parallel.stdout);
}
