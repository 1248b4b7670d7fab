use std::path::Path;
use std::process::{Command, Output};

fn eqku(args: &[&str]) -> Output {
    eqku_in(args, None)
}

fn eqku_in(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eqku"));
    cmd.args(args).env_remove("EQKU_OUT_DIR");
    if let Some(dir) = out_dir {
        cmd.env("EQKU_OUT_DIR", dir);
    }
    cmd.output().expect("run eqku")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn table_matches_golden() {
    let o = eqku(&["table"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("table.txt"));
    assert_eq!(
        stdout(&eqku(&["table", "--format", "json"])),
        golden("table.jsonl")
    );
}

#[test]
fn trace_json_matches_golden_and_is_stable() {
    let a = eqku(&["trace", "--format", "json"]);
    let b = eqku(&["trace", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), golden("trace.jsonl"));
    let last = stdout(&a).lines().last().unwrap().to_string();
    assert!(last.contains(r#""valid":true"#), "{last}");
}

#[test]
fn unknown_subcommand_fails() {
    let o = eqku(&["frobnicate"]);
    assert!(!o.status.success());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ext_vanishing_from_the_command_line() {
    let o = eqku(&["ext", "--from", "M:0,0", "--to", "M:1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 in all degrees"));
    let o = eqku(&["ext", "--from", "Y:0,0,0", "--to", "Y:0,0,0"]);
    assert!(stdout(&o).contains("Ext^0 = 1"));
    assert_eq!(
        eqku(&["ext", "--from", "M:0,5", "--to", "M:1,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cohomology_command() {
    let o = eqku(&[
        "cohomology",
        "--space",
        "p2",
        "--weights",
        "0,0,1",
        "--degree",
        "1",
        "--hypersurface",
        "3,0",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "H^0 = C^2χ0 ⊕ Cχ1\n");
    let bad = eqku(&[
        "cohomology",
        "--space",
        "p2",
        "--weights",
        "0,1",
        "--degree",
        "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn injected_fault_aborts_the_trace() {
    let o = eqku(&["trace", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("swap_orthogonal"), "{err}");
}

#[test]
fn emit_honours_env_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = eqku_in(&["trace", "--emit", "certs/trace.jsonl"], Some(dir.path()));
    assert!(o.status.success());
    let written = std::fs::read_to_string(dir.path().join("certs/trace.jsonl")).unwrap();
    assert_eq!(written.lines().count(), 7);
    assert!(golden("trace.jsonl").starts_with(&written));

    let out = dir.path().join("from-config");
    let cfg = dir.path().join("eqku.toml");
    std::fs::write(
        &cfg,
        format!(
            "output_dir = {:?}\nformat = \"json\"\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = eqku(&[
        "--config",
        cfg.to_str().unwrap(),
        "table",
        "--emit",
        "table.jsonl",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("table.jsonl"));
    assert_eq!(
        std::fs::read_to_string(out.join("table.jsonl")).unwrap(),
        golden("table.jsonl")
    );
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "primes = [5]\nunknown = 1\n").unwrap();
    let o = eqku(&["--config", cfg.to_str().unwrap(), "table"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn singular_pair_from_config_fails_smoothness() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("singular.toml");
    std::fs::write(
        &cfg,
        "primes = [7]\n[cubics]\nf0 = [0,0,0,0,0,0,1,0,0,0]\nf1 = [0,0,0,0,0,0,1,0,0,0]\n",
    )
    .unwrap();
    let o = eqku(&["--config", cfg.to_str().unwrap(), "charts", "--smoothness"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("U(x0,y0,y3)"));
    let o = eqku(&["charts", "--check-iso", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 18);
}
