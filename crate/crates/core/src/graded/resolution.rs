use std::sync::Arc;

use crate::base::{self, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{GroebnerBasis, Lifter, Limits};
use crate::mono::{Mono, TermOrder};
use crate::poly::{vector, Poly, Vector};

use super::module::{vector_degree, GradedModule, GradedPieces};
use super::ring::GradedRing;
use super::DegreeWindow;

/// `F_L -> ... -> F_0 -> M`, with `F_p = ⊕ S(-twists[p][j])`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub twists: Vec<Vec<i64>>,
    /// Images of the generators of `F_0` in the ambient of `M`.
    pub augmentation: Vec<Vector<F>>,
    /// `maps[p]` (for `p >= 1`) sends generators of `F_p` into `F_{p-1}`; `maps[0]` is empty.
    pub maps: Vec<Vec<Vector<F>>>,
    /// Generators replaced by degree-0 lifts, as (step, original degree).
    pub lifted: Vec<(usize, i64)>,
}

impl<F: Field> FreeResolution<F> {
    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.twists.iter().flatten().copied().min()
    }
}

fn ring_rels<F: Field>(ring: &GradedRing<F>, rank: usize) -> Vec<Vector<F>> {
    let n = ring.nvars();
    let mut out = Vec::new();
    for k in 0..rank {
        for l in &ring.ideal().gens {
            let mut v = vector::zero(rank, n);
            v[k] = l.clone();
            out.push(v);
        }
    }
    out
}

/// `s / u^e` for a vector whose entries are pure powers of `u` of exponent at least `e`.
fn divide_by_u<F: Field>(ring: &GradedRing<F>, s: &[Poly<F>], e: u16) -> Result<Vector<F>> {
    let n = ring.nvars();
    let u = ring.u();
    let mut out = Vec::with_capacity(s.len());
    for p in s {
        let mut acc = Poly::zero(n);
        for (m, c) in ring.pure_form(p) {
            if m.0[u] < e || ring.weight_of(&m) != -(m.0[u] as i64) {
                return Err(AlgebraError::Malformed("entry is not divisible by the required power of u".into()));
            }
            let q = Mono::var(n, u, m.0[u] - e);
            acc = acc.add(&ring.lift_base(&c).mul_mono(&q, &F::one()));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Graded free resolution over `S/L` of length at most `length`.
///
/// With `nonneg`, generators of negative degree are replaced by degree-0
/// lifts: for a 0-stable module `u` is bijective in degrees `<= 0`, so every
/// element of negative degree is a `u`-power multiple of one in degree 0.
/// The replacement is verified by a membership test, so a module that is not
/// 0-stable yields an error instead of a resolution of something else.
pub fn free_resolution<F: Field>(m: &GradedModule<F>, length: usize, nonneg: bool, limits: Limits) -> Result<FreeResolution<F>> {
    let ring = m.ring.clone();
    let n = ring.nvars();
    let lgb = ring.ideal().gb(limits)?;
    let mut lifted = Vec::new();

    let mut gens0: Vec<(Vector<F>, i64)> = Vec::new();
    let mut replaced = false;
    for (j, &t) in m.twists.iter().enumerate() {
        if nonneg && t < 0 && ring.has_u {
            replaced = true;
            lifted.push((0, t));
            for mu in ring.pure_monomials(-t) {
                gens0.push((m.basis_element(j, &mu), 0));
            }
        } else {
            gens0.push((vector::unit(m.rank(), n, j), t));
        }
    }
    let mut prev_rels: Vec<Vector<F>> = m.rels.clone();
    prev_rels.extend(ring_rels(&ring, m.rank()));
    if replaced {
        let vs: Vec<Vector<F>> = gens0.iter().map(|g| g.0.clone()).collect();
        let l = Lifter::new(&vs, &prev_rels, m.rank(), n, limits)?;
        for (j, &t) in m.twists.iter().enumerate() {
            if t < 0 && !l.contains(&vector::unit(m.rank(), n, j))? {
                return Err(AlgebraError::Malformed(format!("generator {j} is not a u-multiple of degree-0 elements: module is not 0-stable")));
            }
        }
    }

    let mut res = FreeResolution { twists: vec![gens0.iter().map(|g| g.1).collect()], augmentation: gens0.iter().map(|g| g.0.clone()).collect(), maps: vec![Vec::new()], lifted };
    let mut cur = gens0;
    let mut prev_rank = m.rank();
    for step in 1..=length {
        if cur.is_empty() {
            break;
        }
        let gens: Vec<Vector<F>> = cur.iter().map(|g| g.0.clone()).collect();
        let twists: Vec<i64> = cur.iter().map(|g| g.1).collect();
        let syz = Lifter::new(&gens, &prev_rels, prev_rank, n, limits)?.syzygies();
        let prev_gb = GroebnerBasis::new(&prev_rels, prev_rank, n, &TermOrder::default(), limits)?;
        let mut cands: Vec<(Vector<F>, i64)> = Vec::new();
        for s in syz {
            let s: Vector<F> = s.iter().map(|p| lgb.reduce_poly(p)).collect::<Result<_>>()?;
            let Some(mut d) = vector_degree(&ring, &twists, &s)? else { continue };
            let mut s = s;
            if nonneg && d < 0 && ring.has_u {
                s = divide_by_u(&ring, &s, (-d) as u16)?;
                let img = vector::combine(&s, &gens, prev_rank, n);
                if !prev_gb.contains(&img)? {
                    return Err(AlgebraError::Malformed("degree-0 lift of a syzygy is not a syzygy: module is not 0-stable".into()));
                }
                res.lifted.push((step, d));
                d = 0;
            }
            cands.push((s, d));
        }
        cands.sort_by_key(|c| c.1);
        let base_rels = ring_rels(&ring, gens.len());
        let mut kept: Vec<(Vector<F>, i64)> = Vec::new();
        let mut span_gb: Option<GroebnerBasis<F>> = None;
        for c in cands {
            let redundant = match &span_gb {
                Some(gb) => gb.contains(&c.0)?,
                None => GroebnerBasis::new(&base_rels, gens.len(), n, &TermOrder::default(), limits)?.contains(&c.0)?,
            };
            if redundant {
                continue;
            }
            kept.push(c);
            let mut span: Vec<Vector<F>> = kept.iter().map(|k| k.0.clone()).collect();
            span.extend(base_rels.iter().cloned());
            span_gb = Some(GroebnerBasis::new(&span, gens.len(), n, &TermOrder::default(), limits)?);
        }
        // u has negative weight, so degree order does not give minimality
        let mut i = kept.len();
        while kept.len() > 1 && i > 0 {
            i -= 1;
            let mut span: Vec<Vector<F>> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, k)| k.0.clone()).collect();
            span.extend(base_rels.iter().cloned());
            if GroebnerBasis::new(&span, gens.len(), n, &TermOrder::default(), limits)?.contains(&kept[i].0)? {
                kept.remove(i);
            }
        }
        if kept.is_empty() {
            break;
        }
        res.twists.push(kept.iter().map(|k| k.1).collect());
        res.maps.push(kept.iter().map(|k| k.0.clone()).collect());
        prev_rank = gens.len();
        prev_rels = base_rels;
        cur = kept;
    }
    Ok(res)
}

/// Direct sum of pieces with block bookkeeping.
pub(crate) struct Blocks<F: Field> {
    pub sum: Subquotient<F>,
    pub gen_offsets: Vec<usize>,
    pub rank_offsets: Vec<usize>,
}

pub(crate) fn block_sum<F: Field>(pieces: &[Subquotient<F>], nvars: usize) -> Blocks<F> {
    let mut sum = Subquotient::zero();
    let (mut gen_offsets, mut rank_offsets) = (Vec::new(), Vec::new());
    for p in pieces {
        gen_offsets.push(sum.ngens());
        rank_offsets.push(sum.rank);
        sum = sum.direct_sum(p, nvars);
    }
    Blocks { sum, gen_offsets, rank_offsets }
}

impl<F: Field> Blocks<F> {
    pub fn embed(&self, block: usize, v: &[Poly<F>], nvars: usize) -> Vector<F> {
        let mut out = vector::zero(self.sum.rank, nvars);
        for (i, p) in v.iter().enumerate() {
            out[self.rank_offsets[block] + i] = p.clone();
        }
        out
    }
}

/// `Hom(F_p, N)_d = ⊕_j N_{twists[j] + d}`.
pub fn hom_complex_piece<F: Field>(twists: &[i64], target: &dyn GradedPieces<F>, d: i64) -> Result<Subquotient<F>> {
    Ok(hom_blocks(twists, target, d)?.sum)
}

pub(crate) fn hom_blocks<F: Field>(twists: &[i64], target: &dyn GradedPieces<F>, d: i64) -> Result<Blocks<F>> {
    let pieces: Vec<Subquotient<F>> = twists.iter().map(|&a| target.piece(a + d)).collect::<Result<_>>()?;
    Ok(block_sum(&pieces, target.ring().nbase()))
}

/// Generator images of `Hom(F_p, N)_d -> Hom(F_{p+1}, N)_d`, `phi -> phi . dmap`.
pub(crate) fn hom_differential<F: Field>(src: &Blocks<F>, tgt: &Blocks<F>, src_twists: &[i64], dmap: &[Vector<F>], target: &dyn GradedPieces<F>, d: i64) -> Result<Vec<Vector<F>>> {
    let k = target.ring().nbase();
    let mut images: Vec<Vector<F>> = vec![vector::zero(tgt.sum.rank, k); src.sum.ngens()];
    for (b, col) in dmap.iter().enumerate() {
        for (a, entry) in col.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let acts = target.act(entry, src_twists[a] + d)?;
            for (g, img) in acts.iter().enumerate() {
                let e = tgt.embed(b, img, k);
                let slot = &mut images[src.gen_offsets[a] + g];
                *slot = vector::add(slot, &e);
            }
        }
    }
    Ok(images)
}

/// One cell `Ext^i(M, N)_d`.
#[derive(Clone, Debug)]
pub struct ExtEntry<F: Field> {
    pub degree: i64,
    pub module: Subquotient<F>,
    pub kdim: Option<usize>,
    pub is_zero: bool,
}

/// `Ext^i(M, N)_d` for `d` in the window, from a resolution of `M` with
/// non-negative twists.
pub fn graded_ext<F: Field>(m: &GradedModule<F>, target: &dyn GradedPieces<F>, i: usize, window: DegreeWindow, limits: Limits) -> Result<Vec<ExtEntry<F>>> {
    let res = free_resolution(m, i + 1, true, limits)?;
    ext_from_resolution(&res, target, i, window)
}

pub fn ext_from_resolution<F: Field>(res: &FreeResolution<F>, target: &dyn GradedPieces<F>, i: usize, window: DegreeWindow) -> Result<Vec<ExtEntry<F>>> {
    let ring: &Arc<GradedRing<F>> = target.ring();
    let base = &ring.base;
    let empty: Vec<i64> = Vec::new();
    let tw = |p: usize| -> &[i64] { res.twists.get(p).map(|v| v.as_slice()).unwrap_or(&empty) };
    let mut out = Vec::new();
    for d in window.degrees() {
        let cur = hom_blocks(tw(i), target, d)?;
        let next = hom_blocks(tw(i + 1), target, d)?;
        let out_map = if i + 1 < res.len() { hom_differential(&cur, &next, tw(i), &res.maps[i + 1], target, d)? } else { vec![vector::zero(next.sum.rank, base.nvars()); cur.sum.ngens()] };
        let (prev_sum, in_map) = if i == 0 {
            (Subquotient::zero(), Vec::new())
        } else {
            let prev = hom_blocks(tw(i - 1), target, d)?;
            let m = hom_differential(&prev, &cur, tw(i - 1), &res.maps[i], target, d)?;
            (prev.sum, m)
        };
        let h = base::homology(base, &prev_sum, &cur.sum, &next.sum, &in_map, &out_map)?;
        let is_zero = h.is_zero(base)?;
        let kdim = if is_zero { Some(0) } else { h.kdim(base)? };
        out.push(ExtEntry { degree: d, module: h, kdim, is_zero });
    }
    Ok(out)
}
