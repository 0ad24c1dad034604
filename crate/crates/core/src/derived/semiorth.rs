use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{DegreeWindow, GradedModule};
use crate::groebner::Limits;
use crate::rees::{gr_f, i_n_module, is_n_stable, ZModule};

use super::complex::ComplexOfGradedModules;
use super::ext::{base_hom_dim, hyper_ext};

/// A member of a family. When it is `i_n(N)`, the tag enables the
/// adjunction cross-check for cells landing in it.
#[derive(Clone)]
pub struct FamilyObject<F: Field> {
    pub name: String,
    pub complex: ComplexOfGradedModules<F>,
    pub i_n: Option<(i64, ZModule<F>)>,
}

impl<F: Field> FamilyObject<F> {
    pub fn new(name: impl Into<String>, complex: ComplexOfGradedModules<F>) -> Self {
        FamilyObject { name: name.into(), complex, i_n: None }
    }

    /// `i_n(N)` in cohomological degree 0, flagged filtered.
    pub fn i_n(name: impl Into<String>, nmod: &ZModule<F>, n: i64, ext: &Arc<crate::graded::GradedRing<F>>) -> Result<Self> {
        let m = Arc::new(i_n_module(nmod, n, ext)?);
        let complex = ComplexOfGradedModules::single(m, 0).flag_filtered(DegreeWindow::new(n.min(0) - 1, n.max(0)))?;
        Ok(FamilyObject { name: name.into(), complex, i_n: Some((n, nmod.clone())) })
    }
}

#[derive(Clone)]
pub struct Family<F: Field> {
    pub name: String,
    pub objects: Vec<FamilyObject<F>>,
}

/// Which cells must vanish for families `A_1, ..., A_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    /// `<A_1, ..., A_r>`: `Ext(A_j, A_i) = 0` for `j > i`.
    Semiorthogonal,
    /// Both directions vanish for distinct families.
    Orthogonal,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiorthWindows {
    pub k_lo: i64,
    pub k_hi: i64,
    pub degrees: DegreeWindow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Zero,
    Nonzero,
    Inconclusive(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionCheck {
    pub ext_dim: Option<usize>,
    pub hom_dim: Option<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiorthCell {
    pub source_family: String,
    pub source: String,
    pub target_family: String,
    pub target: String,
    pub k: i64,
    pub degree: i64,
    pub kdim: Option<usize>,
    pub verdict: Verdict,
    pub adjunction: Option<AdjunctionCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiorthCertificate {
    pub claim: Claim,
    /// Family names with their members, in order.
    pub families: Vec<(String, Vec<String>)>,
    pub windows: SemiorthWindows,
    pub cells: Vec<SemiorthCell>,
    pub pass: bool,
}

/// `(dim Ext^0(X, i_n N)_0, dim Hom_{R/I}(gr^n X, N))` for an `n`-stable module `X`.
pub fn adjunction_dims<F: Field>(x: &Arc<GradedModule<F>>, nmod: &ZModule<F>, n: i64, limits: Limits) -> Result<(Option<usize>, Option<usize>)> {
    if !is_n_stable(x, n)?.stable {
        return Err(AlgebraError::Malformed(format!("the adjunction needs an {n}-stable source")));
    }
    let ring = &x.ring;
    let target = Arc::new(i_n_module(nmod, n, ring)?);
    let src = ComplexOfGradedModules::single(x.clone(), 0).flag_filtered(DegreeWindow::new(0, 0))?;
    let tgt = ComplexOfGradedModules::single(target, 0);
    let cell = hyper_ext(&src, &tgt, 0..=0, DegreeWindow::new(0, 0), limits)?.remove(0);
    let hom = base_hom_dim(&ring.base, &gr_f(x.as_ref(), n)?, &nmod.module)?;
    Ok((cell.kdim, hom))
}

fn required(claim: Claim, i: usize, j: usize) -> bool {
    match claim {
        Claim::Semiorthogonal => j > i,
        Claim::Orthogonal => i != j,
    }
}

/// Compute every cell `Ext^k(a, b)_d` that the claim requires to vanish,
/// with `a` from a later family than `b`. Cells landing in a tagged `i_n(N)`
/// from an `n`-stable single module are cross-checked through the adjunction
/// in the cell `k = 0, d = 0`.
pub fn semiorth_check<F: Field>(families: &[Family<F>], claim: Claim, windows: &SemiorthWindows, limits: Limits) -> Result<SemiorthCertificate> {
    let mut cells = Vec::new();
    for (j, fam_a) in families.iter().enumerate() {
        for (i, fam_b) in families.iter().enumerate() {
            if !required(claim, i, j) {
                continue;
            }
            for a in &fam_a.objects {
                for b in &fam_b.objects {
                    let cell = |k: i64, degree: i64, kdim: Option<usize>, verdict: Verdict| SemiorthCell {
                        source_family: fam_a.name.clone(),
                        source: a.name.clone(),
                        target_family: fam_b.name.clone(),
                        target: b.name.clone(),
                        k,
                        degree,
                        kdim,
                        verdict,
                        adjunction: None,
                    };
                    match hyper_ext(&a.complex, &b.complex, windows.k_lo..=windows.k_hi, windows.degrees, limits) {
                        Ok(table) => {
                            for e in table {
                                let mut c = cell(e.k, e.degree, e.kdim, if e.is_zero { Verdict::Zero } else { Verdict::Nonzero });
                                if e.k == 0 && e.degree == 0 {
                                    c.adjunction = adjunction_for(a, b, limits).map(|(ext_dim, hom_dim)| AdjunctionCheck { ext_dim, hom_dim, agree: ext_dim == e.kdim && ext_dim == hom_dim });
                                }
                                cells.push(c);
                            }
                        }
                        Err(AlgebraError::Inconclusive(msg)) | Err(AlgebraError::ResourceLimit(msg)) => {
                            cells.push(cell(windows.k_lo, windows.degrees.lo, None, Verdict::Inconclusive(msg)));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    let pass = cells.iter().all(|c| c.verdict == Verdict::Zero && c.adjunction.as_ref().is_none_or(|a| a.agree));
    Ok(SemiorthCertificate { claim, families: families.iter().map(|f| (f.name.clone(), f.objects.iter().map(|o| o.name.clone()).collect())).collect(), windows: windows.clone(), cells, pass })
}

fn adjunction_for<F: Field>(a: &FamilyObject<F>, b: &FamilyObject<F>, limits: Limits) -> Option<(Option<usize>, Option<usize>)> {
    let (n, nmod) = b.i_n.as_ref()?;
    if a.complex.len() != 1 || a.complex.start != 0 {
        return None;
    }
    let m = a.complex.terms()[0].module()?;
    if !is_n_stable(m, *n).ok()?.stable {
        return None;
    }
    adjunction_dims(m, nmod, *n, limits).ok()
}
