use std::process::{Command, Output};

use expsum::export::{MagicDocument, PairDocument, ReducedDocument};

fn expsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expsum"))
        .args(args)
        .env_remove("EXPSUM_DOMAIN")
        .env_remove("EXPSUM_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const DATA3: [&str; 4] = ["--base", "-1,2.1;3.4,-2.3", "--shifts", "0,1,-0.5"];

#[test]
fn generate_json_has_eight_values_per_side() {
    let out = expsum(&[&["generate"], &DATA3[..], &["--format", "json"]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: PairDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.xs, ["-1", "2.1", "4.4", "-1.3", "2.9", "-2.8", "-0.5", "2.6"]);
    assert_eq!(doc.ys, ["3.4", "-2.3", "0", "3.1", "-1.5", "1.6", "3.9", "-1.8"]);
    assert_eq!(doc.level, Some(3));
}

#[test]
fn magic_surd_square() {
    let out = expsum(&["magic", "--params", "0,6,1,5,sqrt(2),sqrt(3)", "--domain", "surd", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: MagicDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.magic_sum, "12+2*sqrt(2)+2*sqrt(3)");
    assert_eq!(doc.entries[0], "5+sqrt(2)+sqrt(3)");
    assert_eq!(doc.entries[15], "1");
    assert!(doc.passed);

    let text = stdout(&expsum(&["magic"]));
    assert!(text.starts_with("16  2   3   13\n"), "{text}");
    assert!(text.contains("magic_sum 34"));
}

#[test]
fn magic_rejects_surds_in_the_rational_domain() {
    let out = expsum(&["magic", "--params", "0,6,1,5,sqrt(2),sqrt(3)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column"), "{}", stderr(&out));
}

#[test]
fn prouhet_three() {
    let out = expsum(&["prouhet", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ones:  1, 4, 6, 7, 10, 11, 13, 16"), "{text}");
    assert!(text.contains("zeros: 2, 3, 5, 8, 9, 12, 14, 15"));
    assert!(text.contains("verified powers: 1..3"));
}

#[test]
fn json_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let gen = expsum(&[&["generate"], &DATA3[..], &["--format", "json", "-o", path.to_str().unwrap()]].concat());
    assert_eq!(gen.status.code(), Some(0));
    assert!(gen.stdout.is_empty());

    let from_file = expsum(&["verify", "--from-file", path.to_str().unwrap(), "--checks", "system,pyramid"]);
    let direct = expsum(&[&["verify"], &DATA3[..], &["--checks", "system,pyramid"]].concat());
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    assert_eq!(stdout(&from_file), stdout(&direct));
    assert!(stdout(&from_file).contains("111.136"));
}

#[test]
fn surd_pairs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surd.json");
    let gen = expsum(&[
        "generate", "--domain", "surd", "--base", "0,6;1,5", "--shifts", "0,sqrt(2),sqrt(3)", "--format", "json",
        "-o", path.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));
    // the file carries its own domain
    let out = expsum(&["verify", "--from-file", path.to_str().unwrap(), "--checks", "system,blocks,parity"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn tampered_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    expsum(&[&["generate"], &DATA3[..], &["--format", "json", "-o", path.to_str().unwrap()]].concat());
    let text = std::fs::read_to_string(&path).unwrap().replacen("\"2.9\"", "\"3.0\"", 1);
    std::fs::write(&path, text).unwrap();
    let out = expsum(&["verify", "--from-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn bare_value_lists() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lists.json");
    std::fs::write(&path, r#"{"xs":["1","5","6"],"ys":["2","3","7"],"max_power":2}"#).unwrap();
    let ok = expsum(&["verify", "--from-file", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    let pyramid = expsum(&["verify", "--from-file", path.to_str().unwrap(), "--checks", "pyramid"]);
    assert_eq!(pyramid.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["generate", "--base", "1,3,7;2,4,5", "--shifts", "0,-1,1.3,-2.5", "--format", "csv"],
        vec!["reduce", "--base", "1,3;2,2", "--shifts", "0,1,-2,3", "--format", "json"],
        vec!["appendix-check", "--base", "1,4;2,3", "--shifts", "0,4,8"],
        vec!["verify", "--base", "1,3;2,2", "--shifts", "0,1,-2,3", "--format", "csv"],
    ] {
        let a = expsum(&args);
        let b = expsum(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn reduce_full_and_step_limited() {
    let out = expsum(&["reduce", "--base", "1,3;2,2", "--shifts", "0,1,-2,3", "--format", "json"]);
    let doc: ReducedDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.left, ["5", "5", "7", "4"]);
    assert_eq!(doc.right, ["2", "-1", "1", "1", "6", "6", "6"]);

    let out = expsum(&[
        "reduce", "--base", "1,3,7;2,4,5", "--shifts", "0,-1,1.3,-2.5", "--cancel", "4,5.3,1.5,2.8", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: ReducedDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((doc.left_len, doc.right_len), (20, 20));

    let missing = expsum(&["reduce", "--base", "1,3;2,2", "--shifts", "0,1", "--cancel", "100"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn blocks_for_one_power() {
    let out = expsum(&["blocks", "--base", "1,3,7;2,4,5", "--shifts", "0,-1,1.3,-2.5", "--power", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("7..12   144.54"), "{text}");
    let bad = expsum(&["blocks", "--base", "1,4;2,3", "--shifts", "0,1", "--power", "3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_uses_the_scalar_grammar() {
    let out = expsum(&["generate", "--domain", "surd", "--base", "0,6;1,5", "--shifts", "0,sqrt(2)", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "i,x,y\n1,0,1\n2,6,5\n3,1+sqrt(2),sqrt(2)\n4,5+sqrt(2),6+sqrt(2)\n"
    );
}

#[test]
fn input_errors_exit_with_two() {
    let unbalanced = expsum(&["generate", "--base", "1,2;3,4", "--shifts", "1"]);
    assert_eq!(unbalanced.status.code(), Some(2));
    let msg = stderr(&unbalanced);
    assert!(msg.contains('3') && msg.contains('7'), "{msg}");

    let parse = expsum(&["generate", "--base", "1,2.x;3,0.x", "--shifts", "1"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(stderr(&parse).contains("column 3"), "{}", stderr(&parse));

    assert_eq!(expsum(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(expsum(&["generate", "--shifts", "1"]).status.code(), Some(2));
    assert_eq!(expsum(&["generate", "--base", "1,4;2,3", "--shifts", "1", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("job.json");
    std::fs::write(
        &config,
        r#"{"command":"generate","base":"1,4;2,3","shifts":"0,4,8","format":"csv"}"#,
    )
    .unwrap();
    let cfg = config.to_str().unwrap();
    let out = expsum(&["--config", cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("i,x,y\n1,1,2\n"));

    let out = expsum(&["--config", cfg, "--format", "json"]);
    let doc: PairDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.xs.len(), 8);

    std::fs::write(&config, r#"{"command":"generate","bogus":1}"#).unwrap();
    assert_eq!(expsum(&["--config", cfg]).status.code(), Some(2));
}

#[test]
fn environment_sets_the_default_domain() {
    let out = Command::new(env!("CARGO_BIN_EXE_expsum"))
        .args(["generate", "--base", "0,6;1,5", "--shifts", "sqrt(2)", "--format", "json"])
        .env("EXPSUM_DOMAIN", "surd")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: PairDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.xs[0], "sqrt(2)");
}

#[test]
fn approx_domain_with_tolerance() {
    let out = expsum(&["verify", "--domain", "approx", "--base", "-1,2.1;3.4,-2.3", "--shifts", "0,1,-0.5", "--tolerance", "1e-12"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("[system] PASS"));
}
