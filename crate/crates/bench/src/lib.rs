//! Fixed inputs shared by the benchmarks.

use blowup_core::rees::{rees_data, ReesData};
use blowup_core::{BaseRing, Limits, Poly, Rational};

/// `(base, ideal generators)` parsed over QQ.
pub fn problem(vars: &[&str], rels: &[&str], ideal: &[&str]) -> (BaseRing<Rational>, Vec<Poly<Rational>>) {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let parse = |s: &&str| blowup_core::parse::parse_poly::<Rational>(s, &names).expect("fixture parses");
    let base = BaseRing::new(names.clone(), rels.iter().map(parse).collect(), Limits::default()).expect("fixture ring");
    let gens = ideal.iter().map(parse).collect();
    (base, gens)
}

/// Blowup of the plane at the origin.
pub fn plane() -> ReesData<Rational> {
    let (base, gens) = problem(&["x", "y"], &[], &["x", "y"]);
    rees_data(&base, &gens, Limits::default()).expect("plane Rees data")
}

/// Cone over the Fermat cubic, blown up at its vertex.
pub fn cubic_cone() -> ReesData<Rational> {
    let (base, gens) = problem(&["x", "y", "z"], &["x^3 + y^3 + z^3"], &["x", "y", "z"]);
    rees_data(&base, &gens, Limits::default()).expect("cone Rees data")
}
