use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{GroebnerBasis, Lifter, Limits};
use crate::mono::TermOrder;
use crate::poly::{vector, Poly, Vector};

use super::module::{vector_degree, GradedHom, GradedModule, GradedPieces};
use super::DegreeWindow;

/// Submodule generated by the pieces of degree `>= d`, with its inclusion.
pub fn truncate<F: Field>(m: &Arc<GradedModule<F>>, d: i64, limits: Limits) -> Result<GradedHom<F>> {
    let ring = m.ring.clone();
    let n = ring.nvars();
    let mut gens: Vec<Vector<F>> = Vec::new();
    let mut degs = Vec::new();
    for (j, &t) in m.twists.iter().enumerate() {
        if t >= d {
            gens.push(vector::unit(m.rank(), n, j));
            degs.push(t);
        } else {
            for mu in ring.pure_monomials(d - t) {
                gens.push(m.basis_element(j, &mu));
                degs.push(d);
            }
        }
    }
    let mut rels = m.rels.clone();
    for k in 0..m.rank() {
        for l in &ring.ideal().gens {
            let mut v = vector::zero(m.rank(), n);
            v[k] = l.clone();
            rels.push(v);
        }
    }
    let syz = if gens.is_empty() { Vec::new() } else { Lifter::new(&gens, &rels, m.rank(), n, limits)?.syzygies() };
    let lgb = ring.ideal().gb(limits)?;
    let mut new_rels = Vec::new();
    for s in syz {
        let s: Vector<F> = s.iter().map(|p| lgb.reduce_poly(p)).collect::<Result<_>>()?;
        if vector_degree(&ring, &degs, &s)?.is_some() {
            new_rels.push(s);
        }
    }
    let t = Arc::new(GradedModule::new(ring, degs, new_rels)?);
    GradedHom::new(t, m.clone(), gens)
}

/// Outcome of a torsion test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub torsion: bool,
    /// Pieces vanish from this degree on.
    pub d0: Option<i64>,
    /// Per chart `i`: `M / (y_i - 1) M = 0`.
    pub charts_zero: Vec<bool>,
    /// Degrees checked explicitly, with their vanishing.
    pub scanned: Vec<(i64, bool)>,
}

/// Decide whether `M_d = 0` for `d >> 0`.
///
/// Torsion holds iff every `y_i` acts nilpotently, i.e. `M/(y_i - 1)M = 0` on
/// each chart. The onset is then found by scanning: above the largest
/// generator degree, `M_{d+1}` is spanned by `y`-multiples of `M_d`, so one
/// vanishing piece there forces vanishing onward.
pub fn is_torsion<F: Field>(m: &GradedModule<F>, limits: Limits, max_scan: usize) -> Result<TorsionCertificate> {
    let ring = &m.ring;
    let n = ring.nvars();
    let r = m.rank();
    let mut charts_zero = Vec::new();
    for i in 0..ring.ny() {
        let mut rels = m.rels.clone();
        for k in 0..r {
            for l in &ring.ideal().gens {
                let mut v = vector::zero(r, n);
                v[k] = l.clone();
                rels.push(v);
            }
            let mut v = vector::zero(r, n);
            v[k] = ring.var(ring.y(i)).sub(&Poly::one(n));
            rels.push(v);
        }
        let gb = GroebnerBasis::new(&rels, r, n, &TermOrder::default(), limits)?;
        charts_zero.push(r == 0 || gb.is_everything());
    }
    let mut cert = TorsionCertificate { torsion: false, d0: None, charts_zero, scanned: Vec::new() };
    if !cert.charts_zero.iter().all(|&z| z) {
        return Ok(cert);
    }
    if r == 0 {
        cert.torsion = true;
        cert.d0 = Some(0);
        return Ok(cert);
    }
    let base = &ring.base;
    let maxt = *m.twists.iter().max().unwrap();
    let mint = *m.twists.iter().min().unwrap();
    let spread = (maxt - mint).max(2);
    let mut d = maxt;
    let mut steps = 0;
    loop {
        let z = m.piece(d)?.is_zero(base)?;
        cert.scanned.push((d, z));
        if z {
            break;
        }
        d += 1;
        steps += 1;
        if steps > max_scan {
            return Err(AlgebraError::Inconclusive(format!("pieces nonzero up to degree {d} although every chart is empty")));
        }
    }
    let top_zero = d;
    for e in top_zero + 1..top_zero + spread {
        let z = m.piece(e)?.is_zero(base)?;
        cert.scanned.push((e, z));
        if !z {
            return Err(AlgebraError::Inconclusive(format!("piece {e} nonzero after vanishing at {top_zero}")));
        }
    }
    let floor = if ring.has_u { mint - 1 } else { mint };
    let mut d0 = top_zero;
    let mut e = top_zero - 1;
    while e >= floor {
        let z = m.piece(e)?.is_zero(base)?;
        cert.scanned.push((e, z));
        if !z {
            break;
        }
        d0 = e;
        e -= 1;
    }
    cert.torsion = true;
    cert.d0 = Some(d0);
    Ok(cert)
}

/// Per-degree invariant of a piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HilbertEntry {
    /// `k`-dimension (finite).
    Dim(usize),
    /// Generator count after pruning, when the dimension is infinite.
    Generators(usize),
}

pub fn hilbert_data<F: Field>(m: &dyn GradedPieces<F>, window: DegreeWindow) -> Result<Vec<HilbertEntry>> {
    let base = &m.ring().base;
    window
        .degrees()
        .map(|d| {
            let p = m.piece(d)?;
            Ok(match p.kdim(base)? {
                Some(k) => HilbertEntry::Dim(k),
                None => HilbertEntry::Generators(p.pruned_ngens(base)?),
            })
        })
        .collect()
}

/// `u: M_d -> M_{d-1}` is bijective for every `d` in the window. Only the
/// window is examined, so this is evidence for objects without a presentation.
pub fn is_n_stable_pieces<F: Field>(m: &dyn GradedPieces<F>, window: DegreeWindow) -> Result<bool> {
    let ring = m.ring();
    if !ring.has_u {
        return Err(AlgebraError::Malformed("stability is defined over the extended Rees algebra".into()));
    }
    let base = &ring.base;
    let u = ring.var(ring.u());
    for d in window.degrees() {
        if !crate::base::is_iso(base, &m.piece(d)?, &m.piece(d - 1)?, &m.act(&u, d)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
