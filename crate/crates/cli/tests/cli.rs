use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_splice-sig"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn eval_examples() {
    let o = run(&["eval", r#"{"hopf": [2, 2]}"#, "--at", "1/3,1/3,1/3,1/3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("1"));

    let o = run(&["eval", "referee-L", "--at", "1/8,1/8,1/8"]);
    assert_eq!(stdout(&o).lines().next(), Some("4"));
}

#[test]
fn guard_exit_code() {
    let expr = r#"{"splice": [{"hopf": [1, 2]}, [1, 1], {"hopf": [1, 2]}, [1, 1]]}"#;
    let o = run(&["eval", expr, "--at", "1/2,1/2,1/2,1/2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["--json", "eval", expr, "--at", "1/2,1/2,1/2,1/2"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "GuardViolated");
}

#[test]
fn parse_and_boundary_exit_codes() {
    assert_eq!(run(&["eval", r#"{"hopf": "#, "--at", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "no-such-fixture", "--at", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "referee-L", "--at", "1/x"]).status.code(), Some(2));
    let o = run(&["--json", "eval", &data("spliced.json"), "--at", "0,1/5"]);
    assert_eq!(o.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "BoundaryCharacter");
}

#[test]
fn file_leaves_resolve_relative_to_expression() {
    let o = run(&["eval", &data("spliced.json"), "--at", "1/3,1/5"]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn sweep_reproduces_first_table() {
    let o = run(&["sweep", "referee-KL1", "--order", "8", "--open", "--format", "json"]);
    assert!(o.status.success());
    let cells: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cells.len(), 49);
    for c in &cells {
        let parts: Vec<f64> = c["character"]
            .as_str()
            .unwrap()
            .split(',')
            .map(|a| {
                let (n, d) = a.split_once('/').unwrap();
                n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
            })
            .collect();
        let x = parts[0] + parts[1];
        let expected = if x < 0.5 - 1e-9 {
            1
        } else if (x - 0.5).abs() < 1e-9 {
            0
        } else if x < 1.5 - 1e-9 {
            -1
        } else if (x - 1.5).abs() < 1e-9 {
            0
        } else {
            1
        };
        assert_eq!(c["signature"], expected, "{c}");
    }
}

#[test]
fn sweep_hopf_one_n_is_zero() {
    let o = run(&["sweep", r#"{"hopf": [1, 3]}"#, "--order", "6", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega_1,omega_2,omega_3,omega_4,signature,error"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6usize.pow(4));
    assert!(rows.iter().all(|r| r.ends_with(",0,")));
}

#[test]
fn sweep_is_deterministic_and_writes_csv() {
    let dir = std::env::temp_dir().join(format!("splice-sig-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("out.csv");
    let a = run(&["sweep", "referee-L", "--order", "4", "--csv", csv.to_str().unwrap()]);
    let b = run(&["sweep", "referee-L", "--order", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let written = std::fs::read_to_string(&csv).unwrap();
    assert!(written.starts_with("omega_1,omega_2,omega_3,signature,error\n"));
    assert_eq!(written.lines().count(), 1 + 64);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn defect_table_matches_direct_values() {
    let o = run(&["defect-table", "--lambda", "1,2", "--order", "12"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    // Row ω_1 = 0, column ω_2 = 1/4: ind(1/2) − 2 ind(1/4) = −1.
    let row0: Vec<&str> = lines[1].split('\t').collect();
    assert_eq!(row0[0], "0");
    assert_eq!(row0[4], "-1");
    let o = run(&["defect-table", "--lambda", "1,1,1", "--order", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 27);
}

#[test]
fn verify_suites() {
    for suite in ["hopf-oracle", "referee-splice", "defect-lemma"] {
        let o = run(&["verify", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    let o = run(&["--json", "verify", "guard"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v[0]["suite"], "guard");
}

#[test]
fn torus_sig() {
    assert_eq!(stdout(&run(&["torus-sig", "2", "3", "1/2"])).trim(), "-2");
    assert_eq!(stdout(&run(&["torus-sig", "2", "3", "1/12"])).trim(), "0");
    assert_eq!(stdout(&run(&["torus-sig", "2", "-3", "1/2"])).trim(), "2");
    assert_eq!(run(&["torus-sig", "2", "4", "1/2"]).status.code(), Some(1));
}

#[test]
fn precision_override() {
    let o = bin().env("SPLICE_SIG_PRECISION", "8").args(["eval", "referee-L", "--at", "1/8,3/8,5/8"]).output().unwrap();
    let reference = run(&["eval", "referee-L", "--at", "1/8,3/8,5/8"]);
    assert_eq!(o.stdout, reference.stdout);
    let bad = bin().env("SPLICE_SIG_PRECISION", "lots").args(["torus-sig", "2", "3", "1/2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
