//! Acceptance criteria 1 to 8, one line each. Every criterion combines the
//! built-in suite, end-to-end runs of the command line, and values frozen from
//! independent oracles. Time limits are pinned below; exact checks have none.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use blowup_cli::cli::execute_args;
use blowup_cli::commands::Options;
use blowup_cli::oracle::{plane_blowup_h1, ring_map_kernel_dim};
use blowup_cli::report::Verdict;
use blowup_cli::suites::run_suite;
use blowup_core::parse::parse_poly;
use blowup_core::{Poly, Rational};
use serde_json::Value;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_3: Duration = Duration::from_secs(30);
const LIMIT_4: Duration = Duration::from_secs(600);
const LIMIT_5: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(120);

/// `dim_k` of the Rees kernel of `(x, y)` in degrees 0..4 of `k[x, y, y0, y1]`
/// (standard grading), by elimination over dense matrices. One quadric generates,
/// so these are `C(d + 1, 3)`.
const PLANE_REES_KERNEL: [usize; 5] = [0, 0, 1, 4, 10];

/// `h^1(O(m))` on the plane blowup for `m = -3..=4`, from the Laurent-monomial count.
const PLANE_H1: [usize; 8] = [3, 1, 0, 0, 0, 0, 0, 0];

fn problem(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    json: Value,
}

fn cli(args: &[&str]) -> Run {
    let o = execute_args(["blowup", "--json"].iter().chain(args), || Ok(String::new()));
    let json = serde_json::from_str(&o.stdout).unwrap_or(Value::Null);
    Run { code: o.code, json }
}

fn suite(name: &str) -> (bool, Value) {
    match run_suite(name, &Options::default()) {
        Ok(r) => (r.verdict() == Verdict::Pass, Value::Array(r.entries)),
        Err(e) => (false, Value::String(e.to_string())),
    }
}

/// Outcome of one criterion: failed sub-checks are named.
struct Outcome {
    failed: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failed: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn within(&mut self, took: Duration, limit: Duration) {
        self.expect(took <= limit, format!("took {took:.2?}, limit {limit:?}"));
    }
}

fn poly(s: &str, names: &[&str]) -> Poly<Rational> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    parse_poly(s, &names).expect("fixed polynomial parses")
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let r = cli(&["rees", &problem("plane.blow")]);
    o.within(start.elapsed(), LIMIT_1);
    o.expect(r.code == 0, format!("rees exit {}", r.code));
    let rels = &r.json["entries"][0]["relations"];
    let principal = *rels == serde_json::json!(["x*y1 - y*y0"]) || *rels == serde_json::json!(["y*y0 - x*y1"]);
    o.expect(principal, format!("relations {rels}"));
    let t = ["x", "y", "t"];
    let images = [poly("x", &t), poly("y", &t), poly("x*t", &t), poly("y*t", &t)];
    let dims: Vec<usize> = (0..5).map(|d| ring_map_kernel_dim(&images, d)).collect();
    o.expect(dims == PLANE_REES_KERNEL, format!("elimination dims {dims:?}"));
    let (pass, detail) = suite("rees-plane");
    o.expect(pass, format!("suite rees-plane: {detail}"));
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let r = cli(&["--window", "-3..3", "extrees", &problem("principal.blow")]);
    o.within(start.elapsed(), LIMIT_2);
    o.expect(r.code == 0, format!("extrees exit {}", r.code));
    let rels = &r.json["entries"][0]["relations"];
    let ok = *rels == serde_json::json!(["y0*u - x"]) || *rels == serde_json::json!(["x - y0*u"]);
    o.expect(ok, format!("relations {rels}"));
    let pieces: Vec<&Value> = r.json["entries"].as_array().map(|a| a.iter().filter(|e| e.get("degree").is_some()).collect()).unwrap_or_default();
    o.expect(pieces.len() == 7, format!("{} pieces on [-3, 3]", pieces.len()));
    o.expect(pieces.iter().all(|p| p["matches"] == true), "a piece differs from I^n or R");
    o.expect(r.json["certificates"][0]["pass"] == true, "u = 1 does not recover R");
    let (pass, detail) = suite("extrees-principal");
    o.expect(pass, format!("suite extrees-principal: {detail}"));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let plane = problem("plane.blow");
    let s = cli(&["sections", "--twist", "0..4", &plane]);
    o.expect(s.code == 0, format!("sections exit {}", s.code));
    let iso = s.json["entries"].as_array().is_some_and(|a| a.len() == 5 && a.iter().all(|e| e["piece_isomorphic"] == true));
    o.expect(iso, "I^m -> H^0(O(m)) is not an isomorphism for some 0 <= m <= 4");
    let c = cli(&["cohomology", "--twist", "-3..4", "--max-h", "1", &plane]);
    o.expect(c.code == 0, format!("cohomology exit {}", c.code));
    let h1: Vec<Option<u64>> = c.json["entries"].as_array().map(|a| a.iter().map(|e| e["columns"][1]["kdim"].as_u64()).collect()).unwrap_or_default();
    let frozen: Vec<Option<u64>> = PLANE_H1.iter().map(|&k| Some(k as u64)).collect();
    o.expect(h1 == frozen, format!("h^1 on [-3, 4] is {h1:?}"));
    let cech: Vec<usize> = (-3..=4).map(plane_blowup_h1).collect();
    o.expect(cech == PLANE_H1, format!("Čech count {cech:?}"));
    let b = cli(&["bound", "--limit", "4", &plane]);
    o.expect(b.code == 0 && b.json["certificates"][0]["n"] == 0, format!("bound gives {}", b.json["certificates"][0]["n"]));
    let (pass, detail) = suite("plane-blowup");
    o.expect(pass, format!("suite plane-blowup: {detail}"));
    o.within(start.elapsed(), LIMIT_3);
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let cone = problem("cone.blow");
    let b = cli(&["bound", "--limit", "3", &cone]);
    let n = b.json["certificates"][0]["n"].as_i64();
    o.expect(b.code == 0 && n.is_some_and(|n| n >= 1), format!("bound gives {:?}", n));
    let witness = b.json["entries"].as_array().and_then(|a| a.iter().find(|e| e["twist"] == 0)).map(|e| e["higher"][0].clone());
    let nonzero = witness.as_ref().is_some_and(|h| h[0] == 1 && h[1] == false && h[2].as_u64().is_some_and(|k| k > 0));
    o.expect(nonzero, format!("H^1 at m = 0: {witness:?}"));
    let r0 = cli(&["rho-cert", "--level", "0", &cone]);
    o.expect(r0.code == 1, format!("rho-cert at level 0 exits {}", r0.code));
    if let Some(n) = n {
        let level = n.to_string();
        let rn = cli(&["rho-cert", "--level", &level, &cone]);
        o.expect(rn.code == 0, format!("rho-cert at level {n} exits {}", rn.code));
    }
    let (pass, detail) = suite("cone");
    o.expect(pass, format!("suite cone: {detail}"));
    o.within(start.elapsed(), LIMIT_4);
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let nil = problem("nilpotent.blow");
    let c = cli(&["charts", &nil]);
    let all_empty = c.json["entries"].as_array().is_some_and(|a| !a.is_empty() && a.iter().all(|e| e["empty"] == true));
    o.expect(c.code == 0 && all_empty, "a chart ideal is not the unit ideal");
    let r = cli(&["rho-cert", "--level", "3", &nil]);
    o.expect(r.code == 0, format!("rho-cert at level 3 exits {}", r.code));
    o.expect(r.json["certificates"][0]["obar_level"] == 3, format!("torsion level {}", r.json["certificates"][0]["obar_level"]));
    let s = cli(&["semiorth", "--scenario", "stratification", &nil]);
    o.expect(s.code == 0, format!("semiorth exits {}", s.code));
    let (pass, detail) = suite("semiorth-nilpotent");
    o.expect(pass, format!("suite semiorth-nilpotent: {detail}"));
    o.within(start.elapsed(), LIMIT_5);
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let (pass, detail) = suite("functor-identities");
    o.expect(pass, format!("suite functor-identities: {detail}"));
    o.expect(detail[0]["detail"]["trials"] == 20, "expected 20 random modules");
    o.expect(detail[2]["detail"].as_array().is_some_and(|a| a.len() == 10), "expected 10 adjunction cases");
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let (pass, detail) = suite("serre");
    o.expect(pass, format!("suite serre: {detail}"));
    o.expect(detail[1]["detail"].as_array().is_some_and(|a| a.len() == 5), "expected five torsion modules");
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let (pass, detail) = suite("oracle");
    o.within(start.elapsed(), LIMIT_8);
    o.expect(pass, format!("suite oracle: {detail}"));
    o.expect(detail[0]["detail"]["ideals"] == 25, "expected 25 ideals");
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("Rees algebra of (x, y) is principal", criterion_1),
        ("extended Rees algebra of (x)", criterion_2),
        ("plane blowup sections, cohomology and bound", criterion_3),
        ("cubic cone bound and rho certificates", criterion_4),
        ("nilpotent blowup is empty, torsion level 3", criterion_5),
        ("functor identities and adjunction", criterion_6),
        ("Serre invariance and torsion on charts", criterion_7),
        ("Gröbner engine against Macaulay matrices", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        if out.failed.is_empty() {
            println!("criterion {}: PASS  {name} ({took:.2?})", i + 1);
        } else {
            failures += 1;
            println!("criterion {}: FAIL  {name} ({took:.2?}): {}", i + 1, out.failed.join("; "));
        }
    }
    if failures > 0 {
        println!("{failures} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria pass");
}
