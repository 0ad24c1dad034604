//! On-disk cache of the Rees kernels, keyed by a SHA-256 of the canonical
//! field, ring and ideal text. A damaged entry is recomputed and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use blowup_core::graded::GradedRing;
use blowup_core::rees::{ext_rees_ideal, rees_data_from_kernels, rees_ideal, ReesData};
use blowup_core::{BaseRing, Field, Limits, Poly, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const VERSION: &str = "rees-kernels v1";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    rees_ideal: Vec<String>,
    ext_ideal: Vec<String>,
}

pub fn content_hash(text: &str) -> String {
    let digest = Sha256::digest(format!("{VERSION}\n{text}").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn path_for(dir: &Path, hash: &str) -> PathBuf {
    dir.join(format!("{hash}.json"))
}

fn names<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], has_u: bool) -> Result<Vec<String>> {
    Ok(GradedRing::new(base.clone(), gens.to_vec(), Vec::new(), has_u, false)?.names().to_vec())
}

fn load<F: Field>(file: &Path, key: &str, base: &BaseRing<F>, gens: &[Poly<F>]) -> Option<ReesData<F>> {
    let e: Entry = serde_json::from_str(&fs::read_to_string(file).ok()?).ok()?;
    if e.key != key {
        return None;
    }
    let rn = names(base, gens, false).ok()?;
    let en = names(base, gens, true).ok()?;
    let rk = e.rees_ideal.iter().map(|s| blowup_core::parse::parse_poly(s, &rn)).collect::<Result<Vec<Poly<F>>>>().ok()?;
    let ek = e.ext_ideal.iter().map(|s| blowup_core::parse::parse_poly(s, &en)).collect::<Result<Vec<Poly<F>>>>().ok()?;
    rees_data_from_kernels(base, gens, rk, ek).ok()
}

/// Rees data for `(base, gens)`; `key` is the canonical text describing them.
/// Returns whether the cache supplied the kernels.
pub fn rees_data_cached<F: Field>(dir: Option<&Path>, key: &str, base: &BaseRing<F>, gens: &[Poly<F>], limits: Limits) -> Result<(ReesData<F>, bool)> {
    let gens: Vec<Poly<F>> = gens.iter().map(|g| base.reduce(g)).collect();
    let Some(dir) = dir else {
        return Ok((blowup_core::rees::rees_data(base, &gens, limits)?, false));
    };
    let file = path_for(dir, &content_hash(key));
    if let Some(d) = load(&file, key, base, &gens) {
        return Ok((d, true));
    }
    let rk = rees_ideal(base, &gens, limits)?.gens;
    let ek = ext_rees_ideal(base, &gens, limits)?.gens;
    let rn = names(base, &gens, false)?;
    let en = names(base, &gens, true)?;
    let entry = Entry { key: key.to_string(), rees_ideal: rk.iter().map(|p| p.display(&rn).to_string()).collect(), ext_ideal: ek.iter().map(|p| p.display(&en).to_string()).collect() };
    // the cache is an optimisation: failing to write it is not an error
    if fs::create_dir_all(dir).is_ok() {
        let tmp = file.with_extension("tmp");
        if fs::write(&tmp, serde_json::to_string_pretty(&entry).expect("cache entries serialize")).is_ok() {
            let _ = fs::rename(&tmp, &file);
        }
    }
    Ok((rees_data_from_kernels(base, &gens, rk, ek)?, false))
}
