use std::process::{Command, Output};

fn tatecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tatecalc"))
        .args(args)
        .env_remove("TATECALC_MAX_WEIGHT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn e2_writes_chart_and_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let o = tatecalc(&[
        "e2",
        "--sig",
        "1,2",
        "--max-weight",
        "4",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("E2 page (1,2) full, q ≤ 4\n"));
    assert!(out.contains("α'2        0   3   2    1"));
    assert!(out.contains("θ1         1   1   1    0"));
    let chart = std::fs::read_to_string(&svg).unwrap();
    assert!(chart.contains(r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1""#));
    assert!(chart.contains(">θ1^2<"));
}

#[test]
fn max_weight_defaults_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tatecalc"))
        .args(["verify", "rank", "--sig", "1,2"])
        .env("TATECALC_MAX_WEIGHT", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("through weight 5"));

    let o = Command::new(env!("CARGO_BIN_EXE_tatecalc"))
        .args(["verify", "rank", "--sig", "1,2", "--max-weight", "3"])
        .env("TATECALC_MAX_WEIGHT", "5")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("through weight 3"));

    let o = tatecalc(&["verify", "rank", "--sig", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TATECALC_MAX_WEIGHT"));
}

#[test]
fn chart_to_stdout_and_file_match() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    let a = tatecalc(&["chart", "--sig", "2,4", "--max-weight", "6"]);
    let b = tatecalc(&[
        "chart",
        "--sig",
        "2,4",
        "--max-weight",
        "6",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(std::fs::read(&svg).unwrap(), a.stdout);
}

#[test]
fn motive_formats() {
    let o = tatecalc(&["motive", "gr", "--m", "2", "--n", "4", "--format", "poly"]);
    assert_eq!(stdout(&o), "1 + t^2*u + 2*t^4*u^2 + t^6*u^3 + t^8*u^4\n");
    let o = tatecalc(&["motive", "gl", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"summands": [{"p": 0, "q": 0, "mult": 1}, {"p": 1, "q": 1, "mult": 1}]})
    );
    let o = tatecalc(&["motive", "v", "--m", "1", "--n", "3"]);
    assert!(stdout(&o).contains("     5      3      1        1"));
    let o = tatecalc(&["motive", "a", "--sig", "1,2", "--format", "poly"]);
    assert_eq!(stdout(&o), "1 + t*u + t^2*u + t^3*u^2\n");
}

#[test]
fn verification_reports() {
    for args in [
        vec!["verify", "splitting", "--n", "6", "--format", "json"],
        vec!["verify", "thom", "--n", "4", "--format", "json"],
        vec![
            "verify",
            "ss",
            "--sig",
            "2,3",
            "--max-weight",
            "6",
            "--format",
            "json",
        ],
        vec![
            "verify",
            "rank",
            "--sig",
            "1,2,3",
            "--max-weight",
            "6",
            "--format",
            "json",
        ],
        vec!["verify", "dual-exterior", "--n", "3", "--format", "json"],
        vec!["verify", "adjoint", "--n", "2", "--format", "json"],
        vec![
            "verify",
            "bijection",
            "--m",
            "1",
            "--sig",
            "3,5",
            "--format",
            "json",
        ],
    ] {
        let o = tatecalc(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for (args, needle) in [
        (vec!["motive", "fl", "--sig", "1,1"], "strictly increasing"),
        (vec!["motive", "gl", "--n", "x"], "--n"),
        (vec!["motive", "gl"], "--n"),
        (
            vec!["verify", "bijection", "--m", "2", "--sig", "2,3"],
            "m < n_1",
        ),
        (
            vec![
                "e2",
                "--sig",
                "1,2",
                "--max-weight",
                "2",
                "--format",
                "poly",
            ],
            "poly",
        ),
        (vec!["verify"], "CHECK"),
    ] {
        let o = tatecalc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn unwritable_svg_is_a_runtime_error() {
    let o = tatecalc(&[
        "chart",
        "--sig",
        "1,2",
        "--max-weight",
        "2",
        "--svg",
        "/nonexistent/dir/x.svg",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"));
}
