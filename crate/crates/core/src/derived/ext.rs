use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;

use crate::base::{self, BaseRing, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{block_sum, free_resolution, hom_blocks, hom_differential, Blocks, DegreeWindow, FreeResolution, GradedModule, GradedPieces, GradedRing};
use crate::groebner::{GroebnerBasis, Lifter, Limits};
use crate::poly::{vector, Poly, Vector};

use super::complex::{ComplexOfGradedModules, Differential, Term};

/// One cell `Ext^k(X, Y)_d`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtCell<F: Field> {
    pub k: i64,
    pub degree: i64,
    pub kdim: Option<usize>,
    pub is_zero: bool,
    #[serde(skip)]
    pub module: Subquotient<F>,
}

/// Bounded complex of graded free modules `⊕ S(-t)`, `twists[i]` in degree `start + i`.
struct FreeComplex<F: Field> {
    start: i64,
    twists: Vec<Vec<i64>>,
    /// `maps[i]`: generators of term `i` into term `i + 1`.
    maps: Vec<Vec<Vector<F>>>,
}

impl<F: Field> FreeComplex<F> {
    fn twists(&self, q: i64) -> &[i64] {
        if q < self.start {
            return &[];
        }
        self.twists.get((q - self.start) as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn map(&self, q: i64) -> &[Vector<F>] {
        if q < self.start {
            return &[];
        }
        self.maps.get((q - self.start) as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn end(&self) -> i64 {
        self.start + self.twists.len() as i64 - 1
    }
}

/// Part of `p` of weight `w`.
fn homogeneous_part<F: Field>(ring: &GradedRing<F>, p: &Poly<F>, w: i64) -> Poly<F> {
    Poly::from_terms(p.nvars(), p.terms().iter().filter(|(m, _)| ring.weight_of(m) == w).cloned().collect())
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

/// Express `v` (homogeneous of degree `deg`) through `gens` of degrees
/// `gen_degs` modulo `rels`, with homogeneous coefficients.
fn lift_homogeneous<F: Field>(ring: &GradedRing<F>, lifter: Option<&Lifter<F>>, gen_degs: &[i64], v: &[Poly<F>], deg: i64, lgb: &GroebnerBasis<F>) -> Result<Vector<F>> {
    let Some(l) = lifter else {
        let r: Vector<F> = v.iter().map(|p| lgb.reduce_poly(p)).collect::<Result<_>>()?;
        if !vector::is_zero(&r) {
            return Err(AlgebraError::Malformed("chain map does not lift: target resolution ended".into()));
        }
        return Ok(Vec::new());
    };
    let c = l.lift(v)?.ok_or_else(|| AlgebraError::Malformed("chain map does not lift through the resolution".into()))?;
    // the relations are homogeneous, so the weight-correct parts still lift v
    c.iter().zip(gen_degs).map(|(p, &t)| lgb.reduce_poly(&homogeneous_part(ring, p, deg - t))).collect()
}

/// Lift `h: X -> X'` (generator images in the ambient of `X'`) to a chain map
/// `phi_p: P_p -> Q_p` between resolutions, `p = 0..=len`.
fn lift_chain_map<F: Field>(ring: &GradedRing<F>, target: &GradedModule<F>, images: &[Vector<F>], p: &FreeResolution<F>, q: &FreeResolution<F>, limits: Limits) -> Result<Vec<Vec<Vector<F>>>> {
    let n = ring.nvars();
    let lgb = ring.ideal().gb(limits)?;
    let mut rels0 = target.rels.clone();
    rels0.extend(ring_rels(ring, target.rank()));
    let l0 = Lifter::new(&q.augmentation, &rels0, target.rank(), n, limits)?;
    let mut phi: Vec<Vec<Vector<F>>> = Vec::new();
    let mut first = Vec::new();
    for (a, &t) in p.augmentation.iter().zip(&p.twists[0]) {
        let v = vector::combine(a, images, target.rank(), n);
        first.push(lift_homogeneous(ring, Some(&l0), &q.twists[0], &v, t, &lgb)?);
    }
    phi.push(first);
    for step in 1..p.len() {
        let qn = q.twists.get(step - 1).map(|t| t.len()).unwrap_or(0);
        let lifter = match q.maps.get(step) {
            Some(m) if step < q.len() => Some(Lifter::new(m, &ring_rels(ring, qn), qn, n, limits)?),
            _ => None,
        };
        let degs: &[i64] = q.twists.get(step).map(|v| v.as_slice()).unwrap_or(&[]);
        let mut cur = Vec::new();
        for (g, &t) in p.maps[step].iter().zip(&p.twists[step]) {
            let w = vector::combine(g, &phi[step - 1], qn, n);
            cur.push(lift_homogeneous(ring, lifter.as_ref(), degs, &w, t, &lgb)?);
        }
        phi.push(cur);
    }
    Ok(phi)
}

/// Free replacement of a filtered complex of length at most two, good in
/// cohomological degrees `>= lowest`.
fn free_replacement<F: Field>(x: &ComplexOfGradedModules<F>, lowest: i64, limits: Limits) -> Result<FreeComplex<F>> {
    let ring = &x.ring;
    let n = ring.nvars();
    let module = |t: &Term<F>| -> Result<Arc<GradedModule<F>>> { t.module().cloned().ok_or_else(|| AlgebraError::Malformed("hyper_ext needs presented terms in the source".into())) };
    let s = x.start;
    match x.len() {
        0 => Ok(FreeComplex { start: 0, twists: Vec::new(), maps: Vec::new() }),
        1 => {
            let m = module(&x.terms()[0])?;
            let len = (s - lowest).max(0) as usize + 1;
            let r = free_resolution(&m, len, true, limits)?;
            // P_p sits in degree s - p; maps run upward
            let l = r.len();
            let twists: Vec<Vec<i64>> = (0..l).rev().map(|p| r.twists[p].clone()).collect();
            let maps: Vec<Vec<Vector<F>>> = (1..l).rev().map(|p| r.maps[p].clone()).collect();
            Ok(FreeComplex { start: s - l as i64 + 1, twists, maps })
        }
        2 => {
            let (m0, m1) = (module(&x.terms()[0])?, module(&x.terms()[1])?);
            let images = match x.differential(s) {
                Some(Differential::Hom(h)) => h.images.clone(),
                _ => return Err(AlgebraError::Malformed("hyper_ext needs the differential of the source as a module map".into())),
            };
            let len = (s + 1 - lowest).max(0) as usize + 1;
            let p = free_resolution(&m0, len, true, limits)?;
            let q = free_resolution(&m1, len + 1, true, limits)?;
            let phi = lift_chain_map(ring, &m1, &images, &p, &q, limits)?;
            // Tot^c = P_{s-c} ⊕ Q_{s+1-c}
            let lo = (s - p.len() as i64 + 1).min(s + 2 - q.len() as i64);
            let hi = s + 1;
            let pt = |i: i64| -> Vec<i64> {
                if i >= 0 {
                    p.twists.get(i as usize).cloned().unwrap_or_default()
                } else {
                    Vec::new()
                }
            };
            let qt = |i: i64| -> Vec<i64> {
                if i >= 0 {
                    q.twists.get(i as usize).cloned().unwrap_or_default()
                } else {
                    Vec::new()
                }
            };
            let mut twists = Vec::new();
            let mut maps = Vec::new();
            for c in lo..=hi {
                let (pi, qi) = (s - c, s + 1 - c);
                let mut t = pt(pi);
                t.extend(qt(qi));
                twists.push(t);
                if c == hi {
                    break;
                }
                // target Tot^{c+1} = P_{pi-1} ⊕ Q_{pi}
                let (np, nq) = (pt(pi - 1).len(), qt(pi).len());
                let sign = if pi % 2 == 0 { Poly::one(n) } else { Poly::one(n).neg() };
                let mut cols = Vec::new();
                for g in 0..pt(pi).len() {
                    let dp = if pi >= 1 { p.maps[pi as usize][g].clone() } else { Vec::new() };
                    let dp = if dp.is_empty() { vector::zero(np, n) } else { dp };
                    let f = phi.get(pi as usize).and_then(|m| m.get(g)).cloned().unwrap_or_default();
                    let f = if f.is_empty() { vector::zero(nq, n) } else { vector::scale(&f, &sign) };
                    cols.push(vector::concat(&dp, &f));
                }
                for g in 0..qt(qi).len() {
                    let dq = if qi >= 1 { q.maps[qi as usize][g].clone() } else { Vec::new() };
                    let dq = if dq.is_empty() { vector::zero(nq, n) } else { dq };
                    cols.push(vector::concat(&vector::zero(np, n), &dq));
                }
                maps.push(cols);
            }
            Ok(FreeComplex { start: lo, twists, maps })
        }
        _ => Err(AlgebraError::Malformed("hyper_ext handles sources of length at most two".into())),
    }
}

/// `Hom^k(T, Y)_d = ⊕_c Hom(T^c, Y^{c+k})_d`, with the inner blocks kept for embedding.
struct HomTerm<F: Field> {
    outer: Blocks<F>,
    inner: Vec<(i64, Blocks<F>)>,
}

fn hom_term<F: Field>(t: &FreeComplex<F>, y: &ComplexOfGradedModules<F>, k: i64, d: i64) -> Result<HomTerm<F>> {
    let mut inner = Vec::new();
    for c in t.start..=t.end() {
        if let Some(yt) = y.term(c + k) {
            let yp = yt.pieces();
            inner.push((c, hom_blocks(t.twists(c), yp.as_ref(), d)?));
        }
    }
    let sums: Vec<Subquotient<F>> = inner.iter().map(|(_, b)| b.sum.clone()).collect();
    Ok(HomTerm { outer: block_sum(&sums, y.ring.nbase()), inner })
}

impl<F: Field> HomTerm<F> {
    fn position(&self, c: i64) -> Option<usize> {
        self.inner.iter().position(|(cc, _)| *cc == c)
    }
}

/// `D phi = d_Y phi - (-1)^k phi d_T` from `Hom^k` to `Hom^{k+1}`.
fn hom_total_differential<F: Field>(t: &FreeComplex<F>, y: &ComplexOfGradedModules<F>, k: i64, d: i64, src: &HomTerm<F>, tgt: &HomTerm<F>) -> Result<Vec<Vector<F>>> {
    let kb = y.ring.nbase();
    let mut out = vec![vector::zero(tgt.outer.sum.rank, kb); src.outer.sum.ngens()];
    let sign = if k % 2 == 0 { Poly::one(kb).neg() } else { Poly::one(kb) };
    for (bi, (c, blocks)) in src.inner.iter().enumerate() {
        let yp = y.term(c + k).expect("hom block has a target").pieces();
        let base_off = src.outer.gen_offsets[bi];
        // d_Y: Hom(T^c, Y^{c+k}) -> Hom(T^c, Y^{c+k+1})
        if let (Some(ti), Some(dy)) = (tgt.position(*c), y.differential(c + k)) {
            let tb = &tgt.inner[ti].1;
            for (j, &tw) in t.twists(*c).iter().enumerate() {
                let imgs = dy.at(tw + d)?;
                for (g, v) in imgs.iter().enumerate() {
                    let e = tgt.outer.embed(ti, &tb.embed(j, v, kb), kb);
                    let slot = &mut out[base_off + blocks.gen_offsets[j] + g];
                    *slot = vector::add(slot, &e);
                }
            }
        }
        // precomposition with d_T: T^{c-1} -> T^c lands in Hom(T^{c-1}, Y^{c+k})
        if let Some(ti) = tgt.position(c - 1) {
            let tb = &tgt.inner[ti].1;
            let dmap = t.map(c - 1);
            if !dmap.is_empty() {
                let imgs = hom_differential(blocks, tb, t.twists(*c), dmap, yp.as_ref(), d)?;
                for (g, v) in imgs.iter().enumerate() {
                    let e = tgt.outer.embed(ti, &vector::scale(v, &sign), kb);
                    let slot = &mut out[base_off + g];
                    *slot = vector::add(slot, &e);
                }
            }
        }
    }
    let base = &y.ring.base;
    Ok(out.into_iter().map(|v| base.reduce_vector(&v)).collect())
}

/// Table of `Ext^k(X, Y)_d` for `k` in `ks` and `d` in the window.
///
/// `X` must be flagged filtered; it is replaced by a complex of graded frees
/// with non-negative twists, and `Ext` is the cohomology of the total Hom
/// complex into `Y`.
pub fn hyper_ext<F: Field>(x: &ComplexOfGradedModules<F>, y: &ComplexOfGradedModules<F>, ks: RangeInclusive<i64>, window: DegreeWindow, limits: Limits) -> Result<Vec<ExtCell<F>>> {
    if !x.filtered {
        return Err(AlgebraError::Malformed("the source of hyper_ext must be flagged filtered".into()));
    }
    let base = &x.ring.base;
    let mut out = Vec::new();
    if x.is_empty() || y.is_empty() {
        for k in ks {
            for d in window.degrees() {
                out.push(ExtCell { k, degree: d, kdim: Some(0), is_zero: true, module: Subquotient::zero() });
            }
        }
        return Ok(out);
    }
    let kmax = *ks.end();
    let t = free_replacement(x, y.start - kmax - 2, limits)?;
    for k in ks {
        for d in window.degrees() {
            let prev = hom_term(&t, y, k - 1, d)?;
            let cur = hom_term(&t, y, k, d)?;
            let next = hom_term(&t, y, k + 1, d)?;
            let din = hom_total_differential(&t, y, k - 1, d, &prev, &cur)?;
            let dout = hom_total_differential(&t, y, k, d, &cur, &next)?;
            let h = base::homology(base, &prev.outer.sum, &cur.outer.sum, &next.outer.sum, &din, &dout)?;
            let is_zero = h.is_zero(base)?;
            let kdim = if is_zero { Some(0) } else { h.kdim(base)? };
            out.push(ExtCell { k, degree: d, kdim, is_zero, module: h });
        }
    }
    Ok(out)
}

/// `Hom_R(M, N)` as a subquotient of `N^g`, `g` the number of generators of `M`.
pub fn base_hom<F: Field>(base: &BaseRing<F>, m: &Subquotient<F>, n: &Subquotient<F>) -> Result<Subquotient<F>> {
    let k = base.nvars();
    let g = m.ngens();
    let copies = |c: usize| block_sum(&vec![n.clone(); c], k);
    let src = copies(g);
    let pres = m.presentation(base)?;
    if pres.is_empty() || n.ngens() == 0 {
        return Ok(src.sum);
    }
    let tgt = copies(pres.len());
    let mut images = Vec::new();
    for j in 0..g {
        for h in &n.gens {
            let mut v = vector::zero(tgt.sum.rank, k);
            for (r, rel) in pres.iter().enumerate() {
                if !rel[j].is_zero() {
                    v = vector::add(&v, &tgt.embed(r, &vector::scale(h, &rel[j]), k));
                }
            }
            images.push(v);
        }
    }
    base::kernel(base, &src.sum, &tgt.sum, &images)
}

/// `dim_k Hom_R(M, N)`, `None` when infinite.
pub fn base_hom_dim<F: Field>(base: &BaseRing<F>, m: &Subquotient<F>, n: &Subquotient<F>) -> Result<Option<usize>> {
    let h = base_hom(base, m, n)?;
    if h.is_zero(base)? {
        return Ok(Some(0));
    }
    h.kdim(base)
}

/// Convenience: `Ext^k(M, N)` for single modules in degree zero.
pub fn module_ext<F: Field>(m: &Arc<GradedModule<F>>, n: Arc<dyn GradedPieces<F>>, ks: RangeInclusive<i64>, window: DegreeWindow, limits: Limits) -> Result<Vec<ExtCell<F>>> {
    let x = ComplexOfGradedModules::single(m.clone(), 0).flag_filtered(window)?;
    let y = ComplexOfGradedModules::single_pieces(n, 0);
    hyper_ext(&x, &y, ks, window, limits)
}
