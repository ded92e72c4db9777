use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn flagq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagq"))
        .args(args)
        .env_remove("FLAGQ_CACHE")
        .output()
        .expect("run flagq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn fl5_product_text() {
    let o = flagq(&[
        "product",
        "--n",
        "5",
        "--u",
        "4 3 5 1 2",
        "--v-word",
        "2,3,4",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q3*q4*s[4,2,3,1,2,1] + q3*q4*s[3,4,2,3,1,2]\n");
}

#[test]
fn product_json_shares_term_order() {
    let o = flagq(&[
        "--format", "json", "product", "--n", "5", "--u", "43512", "--v-word", "2,3,4",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    let words: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["word"].as_str().unwrap())
        .collect();
    assert_eq!(words, ["s[4,2,3,1,2,1]", "s[3,4,2,3,1,2]"]);
    assert_eq!(v["terms"][0]["q"], serde_json::json!([0, 0, 1, 1]));
}

#[test]
fn seidel_sweep_n3() {
    let o = flagq(&["verify", "seidel", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6/6 pass\n");
}

#[test]
fn verify_json_report() {
    let o = flagq(&[
        "verify",
        "pieri",
        "--n",
        "4",
        "--engine-check",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 4);
    assert_eq!(v["total"], 72);
    assert_eq!(v["passed"], 72);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
}

#[test]
fn reduce_trace_ends_in_one() {
    let o = flagq(&[
        "reduce", "--n", "4", "--u-word", "3,2,1,2", "--v-word", "2,1,2", "--w-word", "1,2,3",
        "--lambda", "1,1,0",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.trim_end().ends_with("= 1"), "{text}");
    assert!(text.starts_with("N[s[3,1,2,1], s[1,2,1]; s[1,2,3], q1*q2]"));
}

#[test]
fn k_commands() {
    let o = flagq(&["k-product", "--n", "4", "--hook", "2", "--v-word", "1 2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-O[1,2,3,1,2] + O[2,3,1,2] + O[1,2,3,2]\n");

    let o = flagq(&[
        "qk-conjecture",
        "--n",
        "4",
        "--hook",
        "2",
        "--u-word",
        "2,3,2,1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q3*O[3,1,2,1] - q1*q2*q3*O[3] + q1*q2*q3*O[]\n");
}

#[test]
fn grassmannian_projection() {
    let o = flagq(&[
        "qk-conjecture",
        "--n",
        "6",
        "--hook",
        "3",
        "--u-word",
        "5,3,4,1,2,3,2,1",
        "--project",
        "1,2,4,5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(
        last,
        "q3*O(1) - q3*O(2) - q3*O(1,1) + q3*O(2,1) + O(3,3,1) + O(3,2,2) - O(3,3,2)"
    );
}

#[test]
fn explore_json() {
    let o = flagq(&[
        "explore", "--n", "4", "--i", "2", "--j", "3", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 24);
}

#[test]
fn conflicting_forms_are_usage_errors() {
    let o = flagq(&[
        "product", "--n", "4", "--u", "2134", "--u-word", "1", "--v", "1234",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--u"));
}

#[test]
fn bad_values_name_the_flag() {
    let o = flagq(&["product", "--n", "4", "--u", "2234", "--v", "1234"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--u"), "{}", stderr(&o));

    let o = flagq(&["product", "--n", "4", "--v", "1234"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--u"));

    let o = flagq(&["verify", "filtration", "--n", "3", "--degree-cap", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--degree-cap"));

    let o = flagq(&["verify", "seidel", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--n"));
}

fn with_cache(dir: &Path, args: &[&str]) -> Output {
    let mut full = vec!["--cache-dir", dir.to_str().unwrap()];
    full.extend_from_slice(args);
    flagq(&full)
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = with_cache(dir.path(), &["table", "--n", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = dir.path().join("fl4.table");
    assert!(table.exists());

    let query = [
        "product", "--n", "4", "--u-word", "3,2,1,2", "--v-word", "2,1,2,3",
    ];
    let cold = flagq(&query);
    let warm = with_cache(dir.path(), &query);
    assert_eq!(cold.stdout, warm.stdout);

    let a = with_cache(dir.path(), &["verify", "all", "--n", "4"]);
    let b = with_cache(dir.path(), &["verify", "all", "--n", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, flagq(&["verify", "all", "--n", "4"]).stdout);
}

#[test]
fn env_overrides_cache_dir() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_flagq"))
        .args([
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
            "table",
            "--n",
            "3",
        ])
        .env("FLAGQ_CACHE", env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(env_dir.path().join("fl3.table").exists());
    assert!(!flag_dir.path().join("fl3.table").exists());
}

#[test]
fn corrupt_cache_reports_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fl3.table");
    fs::write(
        &path,
        "# flagq structure table\n3 123 123 123 0,0 1\n3 123 213 oops 0,0 1\n",
    )
    .unwrap();
    let o = with_cache(
        dir.path(),
        &["product", "--n", "3", "--u", "123", "--v", "123"],
    );
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains(&format!("{}:3", path.display())), "{err}");
}

#[test]
fn wrong_cached_product_is_a_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    // claims s1s2 * s1 = s[2,1] with no quantum term
    fs::write(
        dir.path().join("fl3.table"),
        "3 231 213 312 0,0 1\n3 213 231 312 0,0 1\n",
    )
    .unwrap();
    let o = with_cache(dir.path(), &["verify", "seidel", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("5/6 pass, 1 counterexample"));
}
