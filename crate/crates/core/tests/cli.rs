use std::process::{Command, Output};

fn tiltbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltbench")).args(args).env_remove("TILTBENCH_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("tiltbench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn validate_builtin() {
    let o = tiltbench(&["validate", "ex1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid"));
}

#[test]
fn validate_truncated_file() {
    let text = tiltbench::data::KX2;
    let cut = &text[..text.find("END").expect("format A ends with END")];
    let p = temp_file("cut.alg", cut);
    let o = tiltbench(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unexpected end of file"));
}

#[test]
fn validate_non_associative_table() {
    // (x*x)*x = z but x*(x*x) = 0
    let mut text = String::from("ALGEBRA broken\nFIELD p=3\nDIM 4\nBASIS 1 x y z\nONE 1,0,0,0\nIDEMPOTENTS 1\nRADICAL x y z\n");
    for b in ["1", "x", "y", "z"] {
        text.push_str(&format!("MULT 1 {b} = {b}\n"));
        if b != "1" {
            text.push_str(&format!("MULT {b} 1 = {b}\n"));
        }
    }
    text.push_str("MULT x x = y\nMULT y x = z\nEND\n");
    let p = temp_file("nonassoc.alg", &text);
    let o = tiltbench(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("associativ") && err.contains("x, x, x"), "{err}");
}

#[test]
fn info_reports() {
    let o = tiltbench(&["info", "ex1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Cartan [[5, 4], [4, 5]]"));

    let o = tiltbench(&["--format", "json", "info", "a4"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims: Vec<u64> = doc["algebra"]["projectives"].as_array().unwrap().iter().map(|p| p["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![4, 4, 4]);
    assert_eq!(doc["field_name"], "GF(2^2) mod x^2 + x + 1");

    let o = tiltbench(&["--format", "json", "info", "kx2"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["algebra"]["dim"], 2);
    assert_eq!(doc["algebra"]["radical_layers"], serde_json::json!([1, 1]));
}

#[test]
fn analyze_ex1_json_and_determinism() {
    let out1 = temp_file("r1.json", "");
    let out2 = temp_file("r2.json", "");
    let args = ["analyze", "ex1", "--take", "k", "--target", "eps", "--steps", "6", "--tilt-t", "3", "--json"];
    let mut a1 = args.to_vec();
    a1.push(out1.to_str().unwrap());
    let mut a2 = args.to_vec();
    a2.push(out2.to_str().unwrap());
    assert_eq!(tiltbench(&a1).status.code(), Some(0));
    assert_eq!(tiltbench(&a2).status.code(), Some(0));
    let (j1, j2) = (std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    assert_eq!(j1, j2);
    let doc: serde_json::Value = serde_json::from_slice(&j1).unwrap();
    assert_eq!(doc["verdict"]["kind"], "GROWTH_OBSERVED");
    assert!(doc["audit"]["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));
    assert!(doc["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().contains("3a_s + 1")));
}

#[test]
fn analyze_ex2_and_inapplicable() {
    let o = tiltbench(&["analyze", "ex2", "--take", "k", "--target", "eps", "--steps", "3", "--tilt-t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict PERIODIC"));
    let o = tiltbench(&["analyze", "ex1", "--take", "k,eps", "--target", "eps"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict INAPPLICABLE"));
}

#[test]
fn exit_codes() {
    let o = tiltbench(&["--cap", "5", "tilt", "ex1", "--take", "k", "--t", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_tiltbench"))
        .args(["tilt", "ex1", "--take", "k", "--t", "2"])
        .env("TILTBENCH_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let a4 = tiltbench::data::A4.replace("FIELD p=2 e=2 poly=1,1,1", "FIELD p=2");
    let p = temp_file("a4-gf2.grp", &a4);
    let o = tiltbench(&["info", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("extend field"));

    let o = tiltbench(&["info", "/nonexistent/input"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tiltbench(&["endo", "ex1", "--take", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn other_commands() {
    let o = tiltbench(&["endo", "ex1", "--take", "k"]);
    assert!(stdout(&o).contains("radical layers [1, 3, 1]"));
    let o = tiltbench(&["resolve", "ex1", "--take", "k", "--target", "eps", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M = Hom(Q_0, P(eps)): dim 4, head 2, socle 2"));
    let o = tiltbench(&["tilt", "ex1", "--take", "k", "--t", "2", "--verify"]);
    assert!(stdout(&o).contains("t = 2: [[5, 14], [14, 41]]  det 9"));
    assert!(stdout(&o).contains("tilting t = 2: window [-3, 3], 24 triples checked, pass"));
    let o = tiltbench(&["demo", "a4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("verdict PERIODIC").count(), 2);
}
