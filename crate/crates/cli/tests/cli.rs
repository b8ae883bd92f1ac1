use std::process::{Command, Output};

fn photoion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photoion"))
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

/// Data rows of a CSV table as optional cells.
fn rows(csv: &str) -> Vec<Vec<Option<f64>>> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').map(|c| c.parse().ok()).collect())
        .collect()
}

#[test]
fn list_shows_the_catalog() {
    let o = photoion(&["list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 7);

    let o = photoion(&["list", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);

    let o = photoion(&["list", "--kind", "yukawa", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["params"], serde_json::json!(["g", "lambda"]));

    assert_eq!(photoion(&["list", "--kind", "nope"]).status.code(), Some(1));
}

#[test]
fn ft_table_columns() {
    let o = photoion(&[
        "ft",
        "--potential",
        "yukawa",
        "--param",
        "g=1",
        "--param",
        "lambda=1",
        "--p-min",
        "1",
        "--p-max",
        "10",
        "--n",
        "10",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# photoion-csv/1 ft"));
    assert_eq!(lines.next(), Some("p,v_analytic,v_quad,rel_diff,err_est"));
    let yukawa = rows(&text);
    assert_eq!(yukawa.len(), 10);
    for r in yukawa {
        assert!(r[3].unwrap() < 1e-8);
    }

    let bubble = photoion(&[
        "ft",
        "--potential",
        "dirac-bubble",
        "--param",
        "v0=-1",
        "--param",
        "r=1",
        "--n",
        "4",
    ]);
    for r in rows(&stdout(&bubble)) {
        assert!(r[1].is_some() && r[2].is_none());
    }

    let tietz = photoion(&["ft", "--potential", "tietz", "--param", "Z=10", "--n", "4"]);
    assert!(tietz.status.success(), "{}", stderr(&tietz));
    for r in rows(&stdout(&tietz)) {
        assert!(r[1].is_none() && r[2].is_some());
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "ft",
        "--potential",
        "lorentzian",
        "--param",
        "v0=-1",
        "--param",
        "a=1",
        "--format",
        "json",
    ];
    assert_eq!(photoion(&args).stdout, photoion(&args).stdout);
}

#[test]
fn over_screened_yukawa_exits_2() {
    let o = photoion(&[
        "bound",
        "--potential",
        "yukawa",
        "--param",
        "g=1",
        "--param",
        "lambda=10",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no bound state found"));
}

#[test]
fn bound_reports_kato_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["bound", "--potential", "coulomb", "--param", "g=1", "--cache-dir", d];
    let first = photoion(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(stderr(&first).contains("kato_residual"));
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!((v["state"]["energy"].as_f64().unwrap() + 0.5).abs() < 1e-8);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let second = photoion(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn sigma_example_point() {
    let base = [
        "sigma",
        "--potential",
        "coulomb",
        "--param",
        "g=1",
        "--omega",
        "2",
        "--psi0sq",
        "0.3183099",
    ];
    let o = photoion(&base);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("omega,p,sigma_eq6,sigma_closed,ratio"));
    let r = &rows(&text)[0];
    let sigma = r[2].unwrap();
    assert!((sigma / 1.5284e-2 - 1.0).abs() < 1e-4, "{sigma}");
    assert!((r[4].unwrap() - 1.0).abs() < 1e-12);

    let stobbe = rows(&stdout(&photoion(&[&base[..], &["--stobbe"]].concat())))[0][2].unwrap();
    assert!((stobbe / sigma - 0.207_880).abs() < 5e-7);

    let two = rows(&stdout(&photoion(&[&base[..], &["--k-electrons", "2"]].concat())))[0][2].unwrap();
    assert!((two / sigma - 2.0).abs() < 1e-14);

    let barn = rows(&stdout(&photoion(&[&base[..], &["--units", "physical"]].concat())))[0][2].unwrap();
    assert!((barn / sigma - 386.159_267_96_f64.powi(2) / 100.0).abs() < 1e-6);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec![
            "sigma",
            "--potential",
            "lorentzian",
            "--param",
            "v0=-1",
            "--param",
            "a=1",
            "--omega",
            "5",
            "--psi0sq",
            "0.1",
            "--stobbe",
        ],
        vec!["ft", "--potential", "yukawa", "--param", "g=1"],
        vec!["ft", "--potential", "yukawa", "--param", "g=1", "--param", "lambda=-2"],
        vec!["ft", "--potential", "coulomb", "--param", "g=1", "--n", "1"],
        vec!["sigma", "--potential", "coulomb", "--param", "g=1", "--psi0sq", "0.3"],
        vec!["verify", "nonsense"],
    ] {
        let o = photoion(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn low_energy_warning_respects_force() {
    let args = [
        "sigma",
        "--potential",
        "coulomb",
        "--param",
        "g=1",
        "--omega",
        "1,2,100",
    ];
    let o = photoion(&args);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
    let forced = photoion(&[&args[..], &["--force"]].concat());
    assert!(!stderr(&forced).contains("warning"));
    assert_eq!(o.stdout, forced.stdout);
}

#[test]
fn potential_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pot.json");
    std::fs::write(&path, r#"{"kind": "yukawa", "params": {"g": 1.0, "lambda": 0.5}}"#).unwrap();
    let from_file = photoion(&["ft", "--potential-file", path.to_str().unwrap(), "--n", "5"]);
    let from_flags = photoion(&[
        "ft",
        "--potential",
        "yukawa",
        "--param",
        "g=1",
        "--param",
        "lambda=0.5",
        "--n",
        "5",
    ]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_flags.stdout);
}

#[test]
fn fit_tail_on_a_written_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sigma.csv");
    let t = table.to_str().unwrap();
    let o = photoion(&["sigma", "--potential", "coulomb", "--param", "g=1", "--out", t]);
    assert!(o.status.success(), "{}", stderr(&o));
    let fit = photoion(&["fit-tail", "--input", t, "--law", "power"]);
    assert!(fit.status.success(), "{}", stderr(&fit));
    let v: serde_json::Value = serde_json::from_slice(&fit.stdout).unwrap();
    assert!((v["model"]["exponent"].as_f64().unwrap() + 3.5).abs() < 1e-6);
}

#[test]
fn fit_tail_pipeline_reports_a_verdict() {
    let o = photoion(&[
        "fit-tail",
        "--potential",
        "lorentzian",
        "--param",
        "v0=-3",
        "--param",
        "a=1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["verdict"], "pass");
    assert_eq!(v["report"]["fitted"]["kind"], "exponential");
}

#[test]
fn verify_suite_report() {
    let o = photoion(&["verify", "xsec"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "photoion-verify/1");
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["suite"] == "xsec"));
}
