//! Golden outputs for every verb. Set `FINFTY_BLESS=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &str)] = &[
    ("axioms", "axioms polygon4.finalg"),
    ("axioms_refuted", "axioms bad_assoc.finalg"),
    ("axioms_cyclotomic", "axioms c2.finalg"),
    ("order", "order free2.finalg"),
    ("dim", "dim polygon4.finalg"),
    ("dual", "dual polygon4.finalg"),
    ("join", "join polygon4.finalg e0 e1"),
    ("join_top", "join polygon4.finalg v0 v2"),
    ("polygon", "polygon --n 3"),
    ("coproduct", "coproduct finfty.finalg finfty.finalg"),
    ("product", "product field.finalg field.finalg"),
    ("tensor", "tensor free2.finalg finfty.finalg"),
    ("sym", "sym free2.finalg --n 2"),
    ("pclosure", "pclosure finfty.finalg"),
    ("funring", "funring free2.finalg --n 1"),
    ("congruence", "congruence square.finalg --pairs square_pairs.txt"),
    ("congruence_poly", "congruence --pairs poly_pairs.txt --bound 2"),
    ("classify", "classify square.finalg --pairs square_kernel.txt"),
    ("spec", "spec square.finalg"),
    ("spec_dot", "spec nil2.finalg --dot"),
    ("krull", "krull --n-max 2 --bound 4 --two-variable"),
    ("catalog", "catalog --family 13 --n 2"),
    ("catalog_bounded", "catalog --family 9 --n 2 --bound 5"),
    ("verify_catalog", "verify-catalog --n-max 2 --bound 4"),
    ("decompose", "decompose square.finalg --pairs square_kernel.txt"),
    ("decompose_nil2", "decompose nil2.finalg --pairs empty.txt"),
    ("fraction_field", "fraction-field field.finalg"),
    ("fraction_field_refuted", "fraction-field nil2.finalg"),
    ("maxcong", "maxcong nil2.finalg --ideal 0,x,-x"),
    ("maxcong_not_ideal", "maxcong nil2.finalg --ideal 0,1"),
    ("missing_file", "dim nowhere.finalg"),
    ("bound_exceeded", "congruence --pairs poly_pairs.txt --bound 0"),
];

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn run(args: &str, json: bool) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_finfty"));
    cmd.current_dir(data()).args(args.split_whitespace());
    if json {
        cmd.arg("--json");
    }
    let out = cmd.output().expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().expect("exit code"), text)
}

#[test]
fn golden_outputs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("FINFTY_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in CASES {
        let (code, out) = run(args, false);
        let actual = format!("$ finfty {args}\nexit {code}\n{out}");
        let path = dir.join(format!("{name}.txt"));
        if bless {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if expected != actual {
            failures.push(format!("{name}:\n--- expected\n{expected}\n--- actual\n{actual}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_verb_has_a_golden_case() {
    let verbs = [
        "axioms", "order", "dim", "dual", "join", "polygon", "coproduct", "product", "tensor", "sym", "pclosure",
        "funring", "congruence", "classify", "spec", "krull", "catalog", "verify-catalog", "decompose",
        "fraction-field", "maxcong",
    ];
    for v in verbs {
        assert!(CASES.iter().any(|(_, a)| a.split_whitespace().next() == Some(v)), "{v}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run("axioms polygon4.finalg", false).0, 0);
    assert_eq!(run("axioms bad_assoc.finalg", false).0, 1);
    assert_eq!(run("fraction-field nil2.finalg", false).0, 1);
    assert_eq!(run("dim nowhere.finalg", false).0, 2);
    assert_eq!(run("polygon", false).0, 2);
    assert_eq!(run("frobnicate", false).0, 2);
}

#[test]
fn json_reports_match_schema() {
    let schema_text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    for (name, args) in CASES {
        let (code, text_out) = run(args, false);
        let (jcode, out) = run(args, true);
        assert_eq!(code, jcode, "{name}");
        if code == 2 {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{name}: {e}\n{out}"));
        if let Err(errors) = validator.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{name}: {}", msgs.join("; "));
        }
        assert_eq!(v["verified"], serde_json::json!(code == 0), "{name}");
        let _ = text_out;
    }
}
