use std::process::{Command, Output};

fn modcong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcong"))
        .args(args)
        .env_remove("MODCONG_CACHE_DIR")
        .output()
        .expect("run modcong")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_formats() {
    let o = modcong(&["expand", "--form", "f1", "--terms", "10", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1,-4,0,16,-14,0,0,-64,81");

    let o = modcong(&["expand", "--form", "lambda", "--terms", "5"]);
    assert_eq!(stdout(&o).trim(), "q - 8*q^2 + 44*q^3 - 192*q^4 + O(q^5)");

    let o = modcong(&["expand", "--form", "theta", "--terms", "6", "--format", "csv"]);
    assert_eq!(stdout(&o).trim(), "1,4,4,0,4,8");

    let o = modcong(&["expand", "--seq", "A:3", "--terms", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["name"], "A");
    assert_eq!(v["n"], 3);
    assert_eq!(v["prec"], 5);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "12", "156", "2128", "29916"]));
}

#[test]
fn verify_exit_codes() {
    let o = modcong(&["verify", "identity.lemma5", "--terms", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 1 pass, 0 fail"));

    let o = modcong(&["verify", "theorem2b", "--prime-max", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "theorem2b");
    assert_eq!(v["summary"]["fail"], 0);

    // parameter errors exit 2 before any report is written
    assert_eq!(modcong(&["verify", "cor1.eq1", "--prime-min", "3"]).status.code(), Some(2));
    assert_eq!(modcong(&["verify", "intro-apery", "--m-max", "2"]).status.code(), Some(2));
    assert_eq!(modcong(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(modcong(&["verify", "cor1.eq3", "--terms", "10"]).status.code(), Some(2));
    assert_eq!(modcong(&["verify", "identity.lemma4", "--terms", "x"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "cor1.eq3", "--prime-max", "23", "--m-max", "3", "--format", "json"];
    let a = stdout(&modcong(&args));
    let b = stdout(&modcong(&args));
    assert_eq!(a, b);
    let single = Command::new(env!("CARGO_BIN_EXE_modcong"))
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&single), a);
}

#[test]
fn cornacchia_and_hecke() {
    let o = modcong(&["cornacchia", "13"]);
    assert_eq!(stdout(&o), "13 = 2^2 + 3^2\n");
    assert_eq!(modcong(&["cornacchia", "11"]).status.code(), Some(2));
    let o = modcong(&["hecke", "--form", "f1", "--prime-max", "11", "--range", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(modcong(&["hecke", "--form", "g1"]).status.code(), Some(2));
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = modcong(&["cache", "write", "--form", "h:2", "--terms", "12", "--dir", d]);
    assert!(o.status.success());
    assert!(dir.path().join("h_2.json").exists());
    let o = modcong(&["cache", "read", "--form", "h:2", "--dir", d]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["prec"], 12);
    assert_eq!(v["coeffs"][4], "1");

    let env_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_modcong"))
        .args(["cache", "write", "--seq", "D3", "--terms", "5"])
        .env("MODCONG_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(env_dir.path().join("D3.json").exists());

    let o = modcong(&["cache", "clear", "--dir", d]);
    assert_eq!(stdout(&o).trim(), format!("removed 1 entries from {d}"));
    assert_eq!(modcong(&["cache", "read", "--form", "h:2", "--dir", d]).status.code(), Some(2));
}
