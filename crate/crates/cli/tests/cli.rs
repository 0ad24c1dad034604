use std::process::Command;

use blowup_cli::cli::execute_args;
use blowup_cli::problem::{parse, FieldSpec, FiltrationDecl, IdealDecl, ModuleDecl, ProblemSpec, RingDecl};
use blowup_core::parse::parse_poly;
use blowup_core::{Poly, Rational};
use proptest::prelude::*;
use serde_json::Value;

const VARS: [&str; 3] = ["x", "y", "z"];

fn run(args: &[&str], input: &str) -> blowup_cli::cli::Outcome {
    let input = input.to_string();
    execute_args(std::iter::once("blowup").chain(args.iter().copied()), move || Ok(input))
}

/// Canonical text of a random polynomial: parsed over QQ and printed back.
fn poly_text() -> impl Strategy<Value = String> {
    let term = (-9i64..=9, 1i64..=4, 0u32..3, 0u32..3, 0u32..2);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        let src = ts.iter().map(|(c, d, a, b, e)| format!("({c}/{d})*x^{a}*y^{b}*z^{e}")).collect::<Vec<_>>().join(" + ");
        let names: Vec<String> = VARS.iter().map(|s| s.to_string()).collect();
        let p: Poly<Rational> = parse_poly(&src, &names).expect("generated text parses");
        p.display(&names).to_string()
    })
}

fn vectors(rank: usize) -> impl Strategy<Value = Vec<Vec<String>>> {
    prop::collection::vec(prop::collection::vec(poly_text(), rank), 0..3)
}

fn spec() -> impl Strategy<Value = ProblemSpec> {
    let field = prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::Prime(7)), Just(FieldSpec::Prime(32003))];
    let rank = 1usize..3;
    (field, prop::collection::vec(poly_text(), 0..2), prop::option::of(prop::collection::vec(poly_text(), 1..4)), rank)
        .prop_flat_map(|(field, relations, ideal, rank)| (Just(field), Just(relations), Just(ideal), Just(rank), vectors(rank), prop::option::of(prop::collection::vec(vectors(rank), 1..3))))
        .prop_map(|(field, relations, ideal, rank, mrels, levels)| {
            let ring = RingDecl { name: "R".into(), field, vars: VARS.iter().map(|s| s.to_string()).collect(), relations };
            let ideal = ideal.map(|gens| IdealDecl { name: "I".into(), gens });
            let modules = vec![ModuleDecl { name: "E".into(), rank, relations: mrels }];
            // an empty level would not print as a level at all
            let filtrations = levels.filter(|ls| ls.iter().all(|l| !l.is_empty())).map(|levels| vec![FiltrationDecl { name: "F".into(), module: "E".into(), levels }]).unwrap_or_default();
            ProblemSpec { ring, ideal, modules, filtrations }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_the_identity(s in spec()) {
        let text = s.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn comments_and_layout_do_not_matter() {
    let a = parse("ring R = QQ[x,y];ideal I=(x,y);").unwrap();
    let b = parse("# plane\nring R = QQ[x, y];   # the ring\n\n  ideal I = (x,\n y);\n").unwrap();
    assert_eq!(a, b);
}

#[test]
fn output_is_deterministic() {
    let plane = "ring R = QQ[x, y]; ideal I = (x, y);";
    for args in [&["--json", "cohomology", "--twist", "-2..2"][..], &["--json", "grring"], &["--json", "charts"], &["sections", "--twist", "0..3"]] {
        let a = run(args, plane);
        let b = run(args, plane);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_reports_carry_the_fixed_keys() {
    let o = run(&["--json", "bound", "--limit", "2"], "ring R = QQ[x, y]; ideal I = (x, y);");
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    for key in ["command", "verdict", "window", "entries", "certificates"] {
        assert!(v.get(key).is_some(), "missing {key}: {v}");
    }
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn exit_codes() {
    let nil = "ring R = QQ[x] / (x^3); ideal I = (x);";
    assert_eq!(run(&["rho-cert", "--level", "3"], nil).code, 0);
    assert_eq!(run(&["rho-cert", "--level", "2"], nil).code, 1);
    assert_eq!(run(&["semiorth", "--scenario", "strata-orthogonal"], nil).code, 1);
    assert_eq!(run(&["rees"], "ring R = QQ[x]; ideal I = (x + );").code, 2);
    assert_eq!(run(&["rees"], "ring R = FP6[x]; ideal I = (x);").code, 2);
    assert_eq!(run(&["semiorth", "--scenario", "nope"], nil).code, 2);
    assert_eq!(run(&["--of", "G", "sections", "--twist", "0..0"], "ring R = QQ[x]; ideal I = (x);").code, 2);
}

#[test]
fn field_override_switches_arithmetic() {
    let src = "ring R = QQ[x, y]; ideal I = (x, 2*y);";
    let q = run(&["--json", "rees"], src);
    let p = run(&["--json", "--field", "FP2", "rees"], src);
    assert_eq!(q.code, 0);
    assert_eq!(p.code, 0);
    // over F_2 the second generator vanishes and the Rees ideal changes
    assert_ne!(q.stdout, p.stdout);
}

#[test]
fn declared_filtrations_give_sheaves() {
    let src = include_str!("../../../problems/filtered.blow");
    let o = run(&["--json", "--of", "F", "sections", "--twist", "0..2"], src);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn cache_directory_is_reused() {
    let dir = std::env::temp_dir().join(format!("blowup-cli-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let d = dir.to_string_lossy().into_owned();
    let src = "ring R = QQ[x, y, z]; ideal I = (x*y, y*z, z*x);";
    let first = run(&["--cache-dir", &d, "--json", "extrees"], src);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let files = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(files, 1);
    let second = run(&["--cache-dir", &d, "--json", "extrees"], src);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn binary_reads_files_and_stdin() {
    let exe = env!("CARGO_BIN_EXE_blowup");
    let plane = concat!(env!("CARGO_MANIFEST_DIR"), "/../../problems/plane.blow");
    let out = Command::new(exe).args(["rees", plane]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("y0") && text.contains("y1"), "{text}");

    use std::io::Write;
    let mut child = Command::new(exe).args(["--json", "rees"]).stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped()).stderr(std::process::Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"ring R = QQ[x];\nideal I = (x").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"], serde_json::json!([]));
    assert_eq!(v["error"]["line"], 2);
}
