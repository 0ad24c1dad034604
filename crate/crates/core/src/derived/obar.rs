use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{DegreeWindow, GradedModule};
use crate::proj::{pushforward_tilde, Pushforward};
use crate::rees::ReesData;

use super::complex::{cone, BaseComplex, ChainMap, ComplexOfGradedModules, Differential, Term};

/// Consecutive vanishing levels needed before an onset is reported.
pub const TORSION_RUN: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionLevel {
    /// Least `n >= 0` with `gr^m = 0` for every scanned `m >= n`; `None` when
    /// the top of the scan does not vanish.
    pub level: Option<i64>,
    /// `(m, gr^m is acyclic)` for `m = 0..=max_level`.
    pub scanned: Vec<(i64, bool)>,
}

/// `gr^m X = cone(u: X_{m+1} -> X_m)`, a complex of base modules.
pub fn gr_complex<F: Field>(x: &ComplexOfGradedModules<F>, m: i64) -> Result<BaseComplex<F>> {
    let ring = &x.ring;
    if !ring.has_u {
        return Err(AlgebraError::Malformed("gr needs the variable u".into()));
    }
    let u = ring.var(ring.u());
    let hi = x.slice(m + 1)?;
    let lo = x.slice(m)?;
    let mut maps = Vec::new();
    for t in x.terms() {
        maps.push(t.pieces().act(&u, m + 1)?);
    }
    let start = x.start;
    let f = |p: i64| -> Vec<crate::poly::Vector<F>> {
        if p < start {
            Vec::new()
        } else {
            maps.get((p - start) as usize).cloned().unwrap_or_default()
        }
    };
    Ok(BaseComplex::cone(&ring.base, &hi, &lo, &f))
}

/// Onset of vanishing of `gr^m` over `m = 0..=max_level`.
///
/// The onset is reported only when the vanishing run reaching `max_level`
/// is at least `TORSION_RUN` long; a shorter run is inconclusive.
pub fn torsion_level<F: Field>(x: &ComplexOfGradedModules<F>, max_level: i64) -> Result<TorsionLevel> {
    if !x.filtered {
        return Err(AlgebraError::Malformed("torsion_level needs a filtered complex".into()));
    }
    let base = &x.ring.base;
    let mut scanned = Vec::new();
    for m in 0..=max_level.max(0) {
        let g = gr_complex(x, m)?;
        scanned.push((m, g.is_exact(base)?));
    }
    let mut level = None;
    for &(m, zero) in scanned.iter().rev() {
        if !zero {
            break;
        }
        level = Some(m);
    }
    if let Some(n) = level {
        if max_level - n + 1 < TORSION_RUN && n > 0 {
            return Err(AlgebraError::Inconclusive(format!("gr vanishes only on [{n}, {max_level}]; scan further")));
        }
    }
    Ok(TorsionLevel { level, scanned })
}

/// The triangle `Ã -> R f~_* O_Y -> Ō -> Ã[1]`.
pub struct Obar<F: Field> {
    pub pushforward: ComplexOfGradedModules<F>,
    pub unit: ChainMap<F>,
    pub obar: ComplexOfGradedModules<F>,
    pub torsion: TorsionLevel,
    /// Least `m >= 0` from which every cohomology piece of `Ō` vanishes on the scan.
    pub cohomology_onset: Option<i64>,
    pub stage: Vec<u32>,
}

impl<F: Field> Obar<F> {
    pub fn level(&self) -> Option<i64> {
        self.torsion.level
    }
}

/// `Ō` as the cone of the unit map, with its torsion level scanned up to `max_level`.
///
/// `R f~_* O_Y` is modelled by its cohomology modules with zero differentials.
pub fn obar_complex<F: Field>(data: &ReesData<F>, max_level: i64, max_steps: usize) -> Result<Obar<F>> {
    let ext = data.ext.clone();
    let oy = GradedModule::ring_module(data.rees.clone());
    let depth = data.rees.ny().saturating_sub(1);
    let window = DegreeWindow::new(0, max_level + 1);
    let pf: Vec<Arc<Pushforward<F>>> = pushforward_tilde(&oy, &ext, window, depth, max_steps)?.into_iter().map(Arc::new).collect();
    let stage = pf.iter().map(|p| p.stage).collect();
    let terms: Vec<Term<F>> = pf.iter().map(|p| Term::Pieces(p.clone())).collect();
    let mut push = ComplexOfGradedModules::with_zero_differentials(ext.clone(), 0, terms);
    push.filtered = true;
    let a = ComplexOfGradedModules::single(Arc::new(GradedModule::ring_module(ext.clone())), 0).flag_filtered(window)?;
    let p0 = pf[0].clone();
    let unit_map = Differential::Degreewise(Arc::new(move |d: i64| p0.unit_at(d)));
    let unit = ChainMap::new(a, push.clone(), vec![unit_map])?;
    let obar = cone(&unit)?;
    let torsion = torsion_level(&obar, max_level)?;
    let base = &ext.base;
    let mut onset = None;
    for m in (0..=max_level).rev() {
        let s = obar.slice(m)?;
        if !s.is_exact(base)? {
            break;
        }
        onset = Some(m);
    }
    Ok(Obar { pushforward: push, unit, obar, torsion, cohomology_onset: onset, stage })
}

/// Bounded complex of free base modules, `ranks[i]` in degree `start + i`.
/// Only the ranks enter the criterion: `gr` commutes with `E ⊗ -` termwise.
#[derive(Clone, Debug, Serialize)]
pub struct FreeBaseComplex {
    pub start: i64,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoCertificate {
    pub n: i64,
    /// Torsion level of `Ō`.
    pub obar_level: i64,
    pub pass: bool,
    /// `(degree, rank, torsion level of E^q ⊗ Ō)`; zero terms contribute nothing.
    pub terms: Vec<(i64, usize, Option<i64>)>,
    pub scanned: Vec<(i64, bool)>,
}

/// `ρ(E)` lies in the right orthogonal of the torsion objects of level `n`
/// exactly when `gr^m(E ⊗ Ō) = 0` for `m >= n`; that holds iff `n >= N`.
pub fn rho_n_certificate<F: Field>(obar: &Obar<F>, e: &FreeBaseComplex, n: i64) -> Result<RhoCertificate> {
    if n < 0 {
        return Err(AlgebraError::Malformed("the level must be non-negative".into()));
    }
    let big_n = obar.level().ok_or_else(|| AlgebraError::Inconclusive("Ō is not torsion on the scanned levels".into()))?;
    let terms = e.ranks.iter().enumerate().map(|(i, &r)| (e.start + i as i64, r, if r == 0 { None } else { Some(big_n) })).collect::<Vec<_>>();
    let effective = terms.iter().filter_map(|t| t.2).max().unwrap_or(0);
    Ok(RhoCertificate { n, obar_level: big_n, pass: n >= effective, terms, scanned: obar.torsion.scanned.clone() })
}
