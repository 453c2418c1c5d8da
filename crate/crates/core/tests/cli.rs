use std::process::{Command, Output};

fn pqhstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqhstar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = pqhstar(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn wheel_all_methods_agree() {
    let v = json(&["hstar", "W4", "--method", "all", "--json"]);
    assert_eq!(v["volume"], "66");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["hstar"], serde_json::json!(["1", "12", "36", "16", "1"]));
    let methods: Vec<_> = v["methods"].as_array().unwrap().iter().map(|m| m["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["interior", "pms", "formula", "oracle"]);
}

#[test]
fn multipartite_formula() {
    let v = json(&["hstar", "KP:1,3", "--method", "formula", "--json"]);
    assert_eq!(v["volume"], "8");
    assert_eq!(v["hstar_text"], "1 + 3*x + 3*x^2 + 1*x^3");
}

#[test]
fn text_output() {
    let o = pqhstar(&["interior", "D:K3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("h*: 1 + 4*x + 1*x^2"), "{text}");
    assert!(text.contains("hypertrees: 6"), "{text}");
}

#[test]
fn single_edge_bipartite() {
    let v = json(&["interior", "EL2:p=1,q=1;1-1", "--json"]);
    assert_eq!(v["hstar"], serde_json::json!(["1"]));
    assert_eq!(v["hypertrees"], 1);
}

#[test]
fn disconnected_double_is_an_error() {
    let o = pqhstar(&["hstar", "E2", "--method", "interior"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains("disconnected"), "{err}");
}

#[test]
fn parse_error_names_token() {
    let o = pqhstar(&["hstar", "J:(K2"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("<end of input>"), "{err}");

    let o = pqhstar(&["hstar", "Q5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("Q5"));
}

#[test]
fn json_is_deterministic() {
    let args = ["hstar", "J:(C3,E2)", "--method", "all", "--json"];
    let a = pqhstar(&args);
    let b = pqhstar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = pqhstar(&["--threads", "1", "hstar", "J:(C3,E2)", "--method", "all", "--json"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn verify_wheels_rows() {
    let o = pqhstar(&["verify", "wheels", "--max-n", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<_> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(rows.len(), 6, "{text}");
    assert!(rows.iter().all(|l| l.starts_with("PASS")));
    assert!(text.contains("volume 6306"));
}

#[test]
fn verify_joins_and_oracle() {
    for corpus in [["verify", "joins", "--max-m", "7"], ["verify", "oracle", "--max-n", "4"]] {
        let mut args = corpus.to_vec();
        args.push("--json");
        let v = json(&args);
        let rows = v.as_array().unwrap();
        assert!(rows.len() >= 10, "{corpus:?}");
        assert!(rows.iter().all(|r| r["pass"] == true), "{v}");
    }
}

#[test]
fn batch_file_emits_one_line_per_spec() {
    let dir = std::env::temp_dir().join(format!("pqhstar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("specs.txt");
    std::fs::write(&path, "W3\nKP:2,2\n").unwrap();
    let o = pqhstar(&["hstar", "--file", path.to_str().unwrap(), "--method", "formula", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let vols: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["volume"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(vols, ["20", "16"]);
    std::fs::remove_dir_all(dir).ok();
}
