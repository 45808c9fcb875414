use std::process::{Command, Output};

fn tsab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsab")).args(args).output().expect("binary runs")
}

fn tsab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tsab"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn necklace_listing() {
    let o = tsab(&["necklaces", "--m", "2", "--max-deg", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "length 1: 2 x1 x2\nlength 2: 1 x1.x2\nlength 3: 2 x1.x1.x2 x1.x2.x2\ntotal: 5\n"
    );
    let o = tsab(&["necklaces", "--m", "1", "--max-deg", "4"]);
    assert!(stdout(&o).ends_with("total: 1\n"));
    let o = tsab(&["necklaces", "--m", "2", "--max-deg", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let counts: Vec<u64> = v.as_array().unwrap().iter().map(|g| g["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 1, 2]);
    assert_eq!(v[1]["necklaces"][0], serde_json::json!([1, 2]));
}

#[test]
fn element_commands() {
    let o = tsab(&["mul", "--n", "2", "--lhs", "e1[x1]", "--rhs", "e1[x1]", "--oracle"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2*e2[x1] + e1[x1.x1]\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle: ok"));

    let o = tsab(&["mul", "--free", "--lhs", "f1[x1]", "--rhs", "f1[x2]"]);
    assert_eq!(stdout(&o), "f{x1:1, x2:1} + f1[x1.x2]\n");

    let o = tsab(&["mul", "--n", "2", "--lhs", "e1[x1]", "--rhs", "-e1[x2]", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], serde_json::json!({"truncated": 2}));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);

    assert_eq!(stdout(&tsab(&["newton", "--h", "1", "--k", "2"])), "E1^2 - 2*E2\n");
    assert_eq!(stdout(&tsab(&["newton", "--h", "2", "--k", "2", "--vars", "6"])), "-2*E1*E3 + E2^2 + 2*E4\n");
    assert_eq!(stdout(&tsab(&["rewrite", "--alpha", "{x2.x1:1}"])), "f[1;x1.x2]\n");
    assert_eq!(stdout(&tsab(&["rewrite", "--alpha", "f{x1:1, x2:1}"])), "f[1;x1]*f[1;x2] - f[1;x1.x2]\n");
    assert_eq!(stdout(&tsab(&["sigma", "--n", "2", "--i", "1", "--word", "x1"])), "xi[1,1,1] + xi[2,2,1]\n");
    assert_eq!(stdout(&tsab(&["expand", "--n", "3", "--elem", "e{x1:2, x2:1}"])), "x1⊗x1⊗x2 + x1⊗x2⊗x1 + x2⊗x1⊗x1\n");

    let o = tsab(&["delta", "--n", "2", "--alpha", "e{x1:1, x2:1}"]);
    assert_eq!(code(&o), 0);
    let via_poly = tsab(&["delta", "--n", "2", "--poly", "f[1;x1]*f[1;x2] - f[1;x1.x2]"]);
    assert_eq!(stdout(&o), stdout(&via_poly));
    assert_eq!(stdout(&tsab(&["delta", "--n", "2", "--poly", "f[3;x1]"])), "0\n");
}

#[test]
fn invalid_input_exits_2() {
    let cases: &[&[&str]] = &[
        &["necklaces", "--m", "0", "--max-deg", "3"],
        &["necklaces", "--m", "2"],
        &["mul", "--n", "2", "--lhs", "e1[x1", "--rhs", "e1[x1]"],
        &["mul", "--n", "2", "--lhs", "e3[x1]", "--rhs", "e1[x1]"],
        &["mul", "--n", "2", "--free", "--lhs", "e1[x1]", "--rhs", "e1[x1]"],
        &["mul", "--free", "--lhs", "f1[x1]", "--rhs", "f1[x1]", "--oracle"],
        &["rewrite", "--alpha", "{x0:1}"],
        &["newton", "--h", "0", "--k", "2"],
        &["sigma", "--n", "2", "--i", "3", "--word", "x1"],
        &["sigma", "--n", "2", "--i", "1", "--word", ""],
        &["delta", "--n", "2", "--alpha", "e{x1:2, x2:1}"],
        &["delta", "--n", "2", "--poly", "f[1;x2.x1]"],
        &["verify-iso", "--n", "0", "--m", "2", "--max-deg", "2"],
        &["verify-iso", "--n", "2", "--m", "2"],
        &["no-such-command"],
    ];
    for args in cases {
        assert_eq!(code(&tsab(args)), 2, "{args:?}");
    }
    let o = tsab_env(&["verify-iso", "--n", "1", "--m", "1", "--max-deg", "1"], &[("TSAB_MAX_BASIS", "many")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn caps_exit_3() {
    assert_eq!(code(&tsab(&["verify-iso", "--n", "2", "--m", "2", "--max-deg", "99"])), 3);
    let o = tsab_env(&["verify-iso", "--n", "2", "--m", "2", "--max-deg", "4"], &[("TSAB_MAX_BASIS", "10")]);
    assert_eq!(code(&o), 3);
    let o = tsab_env(&["verify-iso", "--n", "2", "--m", "2", "--max-deg", "4"], &[("TSAB_MAX_ROWS", "5")]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&tsab(&["necklaces", "--m", "3", "--max-deg", "12"])), 3);
    assert_eq!(code(&tsab(&["mul", "--n", "7", "--lhs", "e1[x1]", "--rhs", "e1[x1]", "--oracle"])), 3);
}

#[test]
fn verify_success_exits_0() {
    let o = tsab(&["verify-iso", "--n", "1", "--m", "2", "--max-deg", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: all rows agree"));
}

#[test]
fn verify_json_is_stable() {
    let args = ["verify-iso", "--n", "2", "--m", "2", "--max-deg", "3", "--json", "--seed", "7"];
    let a = tsab(&[&args[..], &["--threads", "1"]].concat());
    let b = tsab(&[&args[..], &["--threads", "4"]].concat());
    let c = tsab(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    assert!(v["rows"][0].get("elapsed_ms").is_none());

    let timed = tsab(&[&args[..], &["--timings"]].concat());
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["rows"][0]["elapsed_ms"].is_u64());
}
