use std::fs;
use std::process::{Command, Output};

fn qasym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qasym")).args(args).output().expect("run qasym")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn expand_to_stdout_and_files() {
    let o = qasym(&["expand", "--spec", "prod(k>=1, 1/(1-q^k))", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "10 42"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("p.json");
    let o = qasym(&["expand", "--spec", "prod(k>=1, 1/(1-q^k))", "--order", "5", "--out", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<String> = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v, ["1", "1", "2", "3", "5", "7"]);

    let spec = dir.path().join("spec.txt");
    fs::write(&spec, "prod(k>=1, (1+q^k))\n").unwrap();
    let b = dir.path().join("b.txt");
    let at = format!("@{}", spec.display());
    let o = qasym(&["expand", "--spec", &at, "--order", "6", "--out", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&b).unwrap().lines().any(|l| l == "6 4"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qasym(&["expand", "--spec", "prod(k>=1, 1/(1-q^k)", "--order", "5"]).status.code(), Some(2));
    assert_eq!(qasym(&["form", "--family", "nosuch"]).status.code(), Some(2));
    assert_eq!(qasym(&["form", "--family", "powerminus", "--params", "m=0,s=1,t=1"]).status.code(), Some(2));
    assert_eq!(qasym(&["verify"]).status.code(), Some(2));
    assert_eq!(qasym(&["suite", "--filter", "zzz*"]).status.code(), Some(2));
    assert_eq!(qasym(&["bogus"]).status.code(), Some(2));
}

#[test]
fn form_and_algebra_compose() {
    let o = qasym(&["form", "--family", "partminus", "--params", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let hr = stdout(&o);
    let dp = stdout(&qasym(&["form", "--family", "partplus", "--params", "1,1"]));
    let o = qasym(&["conv", &hr, &dp]);
    assert_eq!(o.status.code(), Some(0));
    let conv = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&conv).unwrap();
    assert!((v["v"].as_f64().unwrap() - 0.125).abs() < 1e-12);

    let o = qasym(&["solve", "--target", &conv, "--known", &hr]);
    assert_eq!(o.status.code(), Some(0));
    let back: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: serde_json::Value = serde_json::from_str(&dp).unwrap();
    assert!((back["v"].as_f64().unwrap() - want["v"].as_f64().unwrap()).abs() < 1e-12);

    assert_eq!(qasym(&["power", &hr, "--h", "3/2"]).status.code(), Some(0));
    assert_eq!(qasym(&["power", &hr, "--h", "x"]).status.code(), Some(2));
    assert_eq!(
        qasym(&["form", "--family", "powerminus", "--params", "m=2,s=1,t=1", "--derive"]).status.code(),
        Some(0)
    );
}

#[test]
fn verify_exit_codes() {
    let o = qasym(&[
        "verify",
        "--family",
        "partminus",
        "--params",
        "1,1",
        "--checkpoints",
        "100,500,1000",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"], "converging");

    // an alternating form against a positive series
    let alt = stdout(&qasym(&["form", "--family", "powerplusdenom", "--params", "1"]));
    let o = qasym(&["verify", "--spec", "prod(k>=1, 1/(1-q^k))", "--form", &alt, "--checkpoints", "101,201"]);
    assert_eq!(o.status.code(), Some(1));

    // amplitude off by a factor growing in n: delta grows
    let wrong = stdout(&qasym(&["form", "--family", "partplus", "--params", "1,1"]));
    let o = qasym(&[
        "verify",
        "--family",
        "partminus",
        "--params",
        "1,1",
        "--form",
        &wrong,
        "--checkpoints",
        "100,400,1600",
    ]);
    assert_eq!(o.status.code(), Some(1));

    let o =
        qasym(&["verify", "--family", "partminus", "--params", "1,1", "--checkpoints", "50,100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn suite_and_catalog() {
    let o = qasym(&["suite", "--filter", "part*", "--checkpoints", "100,200,400", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);

    let o = qasym(&["catalog", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().len() >= 40);
    assert_eq!(qasym(&["catalog", "--format", "csv"]).status.code(), Some(0));
}

#[test]
fn bfile_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    fs::write(&good, "# A000041\n0 1\n1 1\n2 2\n3 3\n4 5\n5 7\n").unwrap();
    let o = qasym(&["bfile", "check", "--family", "partminus", "--params", "1,1", "--file", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6 terms"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1\n1 1\n2 2\n3 4\n").unwrap();
    let o = qasym(&["bfile", "check", "--spec", "prod(k>=1, 1/(1-q^k))", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let broken = dir.path().join("broken.txt");
    fs::write(&broken, "0 1\n2 2\n").unwrap();
    let o = qasym(&["bfile", "check", "--spec", "prod(k>=1, 1/(1-q^k))", "--file", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
