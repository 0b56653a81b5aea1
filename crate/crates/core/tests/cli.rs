mod common;

use common::data_path;
use polygraphs::cli::run;

fn go(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["polygraph"];
    argv.extend_from_slice(args);
    run(argv)
}

#[test]
fn eq_and_nf_on_the_braid_monoid() {
    let f = data_path("b3plus.pg");
    assert_eq!(go(&["eq", &f, "s t s", "t s t"]), (0, "EQUAL (normal form: a s)\n".to_string()));
    let (code, out) = go(&["eq", &f, "s t", "t s"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NOT EQUAL"), "{out}");
    let (code, out) = go(&["nf", &f, "s t s", "--strategy", "rightmost"]);
    assert_eq!(code, 0);
    assert!(out.contains("a s"), "{out}");
}

#[test]
fn exit_codes() {
    let f = data_path("b3plus.pg");
    assert_eq!(go(&["nf", &f, "s t s t s t", "--fuel", "1"]).0, 3);
    assert_eq!(go(&["nf", &f, "s q"]).0, 2);
    assert_eq!(go(&["frobnicate"]).0, 2);
    assert_eq!(go(&["check", "/nonexistent.pg"]).0, 2);
    assert_eq!(go(&["--help"]).0, 0);
    assert_eq!(go(&["cp", &data_path("xyx.pg")]).0, 1);
    assert_eq!(go(&["complete", &data_path("lp.pg"), "--max-rules", "6"]).0, 3);
}

#[test]
fn sampled_termination_must_be_acknowledged() {
    let (sq, cert) = (data_path("sq.pg"), data_path("sq.cert"));
    let (code, _) = go(&["--cert", &cert, "eq", &sq, "y x", "1"]);
    assert_ne!(code, 0);
    let (code, out) = go(&["--cert", &cert, "--ack-sampled", "eq", &sq, "y x", "1"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("NOT EQUAL"));
    let (code, out) = go(&["cert", &sq, &cert]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS (sampled)"), "{out}");
}

#[test]
fn json_output_is_deterministic() {
    let f = data_path("xyx.pg");
    let a = go(&["--json", "complete", &f]);
    let b = go(&["--json", "complete", &f]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["command"], "complete");
    assert_eq!(v["result"], "Completed");
}

#[test]
fn homology_reports_identities() {
    let (code, out) = go(&["--json", "homology", &data_path("idempotent.pg")]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in polygraphs::homology::IDENTITY_KEYS {
        assert_eq!(v["identities"][key], "ok", "{key}");
    }
}

#[test]
fn homology_export_writes_matrices() {
    let dir = std::env::temp_dir().join(format!("polygraph-cli-export-{}", std::process::id()));
    let (code, out) = go(&["homology", &data_path("idempotent.pg"), "--export", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let d3 = std::fs::read_to_string(dir.join("d3.txt")).unwrap();
    assert_eq!(d3, "matrix d3 2 x 2\nrows: 1[mu] a[mu]\ncols: 1[A] a[A]\n-1 0\n1 0\n");
    assert!(dir.join("d2.sym.txt").exists());
}

#[test]
fn standard_and_transfer() {
    let (code, out) = go(&["std", &data_path("two.table")]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = go(&[
        "--pump-bound",
        "3",
        "--cert",
        &data_path("sq.cert"),
        "--ack-sampled",
        "transfer",
        &data_path("sq.pg"),
        &data_path("sq_tilde.pg"),
        &data_path("sq_map.txt"),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("A3'") && out.contains("tau_alpha"), "{out}");
}
