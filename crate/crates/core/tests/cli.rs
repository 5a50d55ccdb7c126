use std::process::Command;

fn functcat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_functcat")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/");
    let z6 = format!("{fixtures}z6.cat");
    assert_eq!(functcat(&["describe", &z6]).0, 0);
    assert_eq!(functcat(&["describe"]).0, 2);
    assert_eq!(functcat(&["idempotency", &z6, "--bundle", "nope"]).0, 4);

    let dir = std::env::temp_dir().join(format!("functcat-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cat");
    std::fs::write(&bad, "field Q\nvertex 1\nmodule M { dim 1=1; map }\n").unwrap();
    let (code, _, err) = functcat(&["describe", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("line 3, column"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn describe_shapes() {
    let (code, out, _) = functcat(&["describe", "aus_a2"]);
    assert_eq!(code, 0);
    assert!(out.contains("vertices 3  arrows 2  relations 1"));
    assert!(out.contains("gl.dim = 2"));
}

#[test]
fn seed_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_functcat"))
        .args(["--json", "recollement-check", "a2", "--bundle", "P2"])
        .env("FUNCTCAT_SEED", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["seed"], 7);
    assert_eq!(v["timings"], serde_json::json!({}));
}

#[test]
fn resolve_z6_simple() {
    let (code, out, _) = functcat(&["resolve", "z6", "--module", "S1", "--length", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("pd = 5"), "{out}");
    assert!(out.contains("P5 = P6"), "{out}");
}
