use serde::Serialize;

use crate::base::{self, BaseRing, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{block_sum, Blocks, DegreeWindow, GradedHom, GradedModule, GradedMorphism, GradedPieces};
use crate::poly::{vector, Poly, Vector};

/// Čech complex of `M~(m)` on the cover by `y_i != 0`, truncated at
/// denominator exponent `d`: `K^p = ⊕_{|S| = p+1} M_{m + d(p+1)}`, where the
/// summand for `S` stands for fractions `a / y_S^d`.
pub struct StageComplex<F: Field> {
    pub twist: i64,
    pub stage: u32,
    pub subsets: Vec<Vec<Vec<usize>>>,
    pub(crate) terms: Vec<Blocks<F>>,
    /// `diffs[p]`: images of the generators of `K^p` in the ambient of `K^{p+1}`.
    pub(crate) diffs: Vec<Vec<Vector<F>>>,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn y_power<F: Field>(m: &GradedModule<F>, vars: &[usize], e: u32) -> Poly<F> {
    let ring = &m.ring;
    let mut p = Poly::one(ring.nvars());
    for &i in vars {
        p = p.mul(&ring.var(ring.y(i)).pow(e));
    }
    p
}

/// Apply a block-diagonal family of piece maps to an ambient vector.
/// `parts` lists (source block, target block, sign, images of the unit generators of the source piece).
fn apply_blocks<F: Field>(src: &Blocks<F>, tgt: &Blocks<F>, parts: &[(usize, usize, bool, Vec<Vector<F>>)], v: &[Poly<F>], k: usize) -> Vector<F> {
    let mut out = vector::zero(tgt.sum.rank, k);
    for (a, b, neg, imgs) in parts {
        let off = src.rank_offsets[*a];
        for (j, img) in imgs.iter().enumerate() {
            let c = &v[off + j];
            if c.is_zero() {
                continue;
            }
            let c = if *neg { c.neg() } else { c.clone() };
            let e = tgt.embed(*b, &vector::scale(img, &c), k);
            out = vector::add(&out, &e);
        }
    }
    out
}

pub fn stage_complex<F: Field>(m: &GradedModule<F>, twist: i64, d: u32) -> Result<StageComplex<F>> {
    let ring = &m.ring;
    let ny = ring.ny();
    let k = ring.nbase();
    let subsets: Vec<Vec<Vec<usize>>> = (1..=ny).map(|s| subsets_of_size(ny, s)).collect();
    let deg = |p: usize| twist + (d as i64) * (p as i64 + 1);
    let mut terms = Vec::with_capacity(ny);
    for (p, subs) in subsets.iter().enumerate() {
        let pieces: Vec<Subquotient<F>> = subs.iter().map(|_| m.piece(deg(p))).collect::<Result<_>>()?;
        terms.push(block_sum(&pieces, k));
    }
    let mut diffs = Vec::with_capacity(ny);
    for p in 0..ny.saturating_sub(1) {
        let mut parts = Vec::new();
        for (a, s) in subsets[p].iter().enumerate() {
            for i in (0..ny).filter(|i| !s.contains(i)) {
                let mut t = s.clone();
                t.push(i);
                t.sort_unstable();
                let pos = t.iter().position(|&x| x == i).unwrap();
                let b = subsets[p + 1].iter().position(|x| *x == t).unwrap();
                let imgs = m.act(&y_power(m, &[i], d), deg(p))?;
                parts.push((a, b, pos % 2 == 1, imgs));
            }
        }
        let src = &terms[p];
        let gens: Vec<Vector<F>> = src.sum.gens.clone();
        diffs.push(gens.iter().map(|g| apply_blocks(src, &terms[p + 1], &parts, g, k)).collect());
    }
    Ok(StageComplex { twist, stage: d, subsets, terms, diffs })
}

impl<F: Field> StageComplex<F> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, p: usize) -> &Subquotient<F> {
        &self.terms[p].sum
    }

    /// `H^p` of the truncated complex, inside the ambient of `K^p`.
    pub fn homology(&self, base: &BaseRing<F>, p: usize) -> Result<Subquotient<F>> {
        let cur = &self.terms[p].sum;
        let (prev, f) = if p == 0 { (Subquotient::zero(), Vec::new()) } else { (self.terms[p - 1].sum.clone(), self.diffs[p - 1].clone()) };
        let (next, g) = if p + 1 < self.terms.len() { (self.terms[p + 1].sum.clone(), self.diffs[p].clone()) } else { (Subquotient::zero(), vec![Vec::new(); cur.ngens()]) };
        base::homology(base, &prev, cur, &next, &f, &g)
    }

    /// Block-diagonal multiplication `K^p -> target^p`, by `f(S)` on the summand of `S`.
    pub(crate) fn block_mul(&self, m: &GradedModule<F>, target: &StageComplex<F>, p: usize, f: impl Fn(&[usize]) -> Poly<F>, vs: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
        let k = m.ring.nbase();
        let deg = self.twist + (self.stage as i64) * (p as i64 + 1);
        let mut parts = Vec::new();
        for (a, s) in self.subsets[p].iter().enumerate() {
            parts.push((a, a, false, m.act(&f(s), deg)?));
        }
        Ok(vs.iter().map(|v| apply_blocks(&self.terms[p], &target.terms[p], &parts, v, k)).collect())
    }

    /// Ambient map `K_d^p -> K_{d+1}^p`, `a / y_S^d -> a y_S / y_S^{d+1}`.
    pub fn transition(&self, m: &GradedModule<F>, next: &StageComplex<F>, p: usize, vs: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
        self.block_mul(m, next, p, |s| y_power(m, s, 1), vs)
    }

    /// Ambient map `K_d^p(m) -> K_{d+1}^p(m-1)`, multiplication by `u`
    /// realized as `a / y_S^d -> (u y_S) a / y_S^{d+1}` with `u y_S = g_{s0} y_{S - s0}`.
    pub(crate) fn u_map(&self, m: &GradedModule<F>, gens: &[Poly<F>], next: &StageComplex<F>, p: usize, vs: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
        let ring = &m.ring;
        self.block_mul(m, next, p, |s| y_power(m, &s[1..], 1).mul(&ring.lift_base(&gens[s[0]])), vs)
    }

    /// Ambient image in `K^0` of a degree-`twist` element of `F0`: `a -> a y_i^d / y_i^d`.
    pub(crate) fn canonical_vector(&self, m: &GradedModule<F>, v: &[Poly<F>]) -> Result<Vector<F>> {
        let k = m.ring.nbase();
        let deg = self.twist + self.stage as i64;
        let mut out = vector::zero(self.terms[0].sum.rank, k);
        for (b, s) in self.subsets[0].iter().enumerate() {
            let e = y_power(m, s, self.stage);
            let w: Vector<F> = v.iter().map(|p| p.mul(&e)).collect();
            let c = m.coords(&w, deg)?;
            out = vector::add(&out, &self.terms[0].embed(b, &c, k));
        }
        Ok(out)
    }

    /// Images of the unit generators of `M_twist` in `K^0`: `a -> a y_i^d / y_i^d`.
    pub fn canonical_map(&self, m: &GradedModule<F>) -> Result<Vec<Vector<F>>> {
        let k = m.ring.nbase();
        let src = m.piece(self.twist)?;
        let src_blocks = block_sum(std::slice::from_ref(&src), k);
        let mut parts = Vec::new();
        for (b, s) in self.subsets[0].iter().enumerate() {
            parts.push((0, b, false, m.act(&y_power(m, s, self.stage), self.twist)?));
        }
        Ok(src.gens.iter().map(|g| apply_blocks(&src_blocks, &self.terms[0], &parts, g, k)).collect())
    }
}

/// `H^i(Y, M~(m))` with the exponent at which the colimit was accepted.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyEntry<F: Field> {
    pub twist: i64,
    pub index: usize,
    #[serde(skip)]
    pub module: Subquotient<F>,
    pub kdim: Option<usize>,
    pub generators: usize,
    pub is_zero: bool,
    /// Exponent `d` with `H(K_d) -> H(K_{d+1})` an isomorphism; 0 for the
    /// Čech-length bound.
    pub exponent: u32,
}

pub(crate) struct Stable<F: Field> {
    pub entry: CohomologyEntry<F>,
    pub complex: StageComplex<F>,
}

fn first_stage<F: Field>(m: &GradedModule<F>, twist: i64) -> u32 {
    let low = m.twists.iter().copied().min().unwrap_or(0);
    (low - twist).max(1) as u32
}

pub(crate) fn stable_at<F: Field>(m: &GradedModule<F>, twist: i64, i: usize, start: u32, max_steps: usize) -> Result<Stable<F>> {
    let base = &m.ring.base;
    let mut d = start;
    let mut cur = stage_complex(m, twist, d)?;
    let mut h = cur.homology(base, i)?;
    for _ in 0..max_steps.max(1) {
        let next = stage_complex(m, twist, d + 1)?;
        let nh = next.homology(base, i)?;
        let imgs = cur.transition(m, &next, i, &h.gens)?;
        if base::is_iso(base, &h, &nh, &imgs)? {
            let is_zero = h.is_zero(base)?;
            let kdim = if is_zero { Some(0) } else { h.kdim(base)? };
            let generators = if is_zero { 0 } else { h.pruned_ngens(base)? };
            let entry = CohomologyEntry { twist, index: i, module: h, kdim, generators, is_zero, exponent: d };
            return Ok(Stable { entry, complex: cur });
        }
        d += 1;
        cur = next;
        h = nh;
    }
    Err(AlgebraError::Inconclusive(format!("H^{i} at twist {twist} did not stabilize by exponent {d}")))
}

fn entry<F: Field>(m: &GradedModule<F>, twist: i64, i: usize, max_steps: usize) -> Result<CohomologyEntry<F>> {
    if i >= m.ring.ny() {
        return Ok(CohomologyEntry { twist, index: i, module: Subquotient::zero(), kdim: Some(0), generators: 0, is_zero: true, exponent: 0 });
    }
    Ok(stable_at(m, twist, i, first_stage(m, twist), max_steps)?.entry)
}

/// `H^0(Y, M~(m))`.
pub fn twisted_sections<F: Field>(m: &GradedModule<F>, twist: i64, max_steps: usize) -> Result<CohomologyEntry<F>> {
    entry(m, twist, 0, max_steps)
}

/// `H^i(Y, M~(m))` for `i >= 1`; zero beyond the number of charts.
pub fn higher_cohomology<F: Field>(m: &GradedModule<F>, twist: i64, i: usize, max_steps: usize) -> Result<CohomologyEntry<F>> {
    if i == 0 {
        return Err(AlgebraError::Malformed("higher cohomology starts at index 1".into()));
    }
    entry(m, twist, i, max_steps)
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable<F: Field> {
    pub window: DegreeWindow,
    pub max_index: usize,
    /// Rows by twist, columns by index `0..=max_index`.
    pub rows: Vec<(i64, Vec<CohomologyEntry<F>>)>,
}

pub fn cohomology_table<F: Field>(m: &GradedModule<F>, window: DegreeWindow, max_index: usize, max_steps: usize) -> Result<CohomologyTable<F>> {
    let rows = window.degrees().map(|t| Ok((t, (0..=max_index).map(|i| entry(m, t, i, max_steps)).collect::<Result<Vec<_>>>()?))).collect::<Result<Vec<_>>>()?;
    Ok(CohomologyTable { window, max_index, rows })
}

/// Per-twist evidence for the stability bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundEvidence {
    pub twist: i64,
    /// `I^m = M_m -> H^0(Y, O(m))` is an isomorphism.
    pub sections_match: bool,
    pub sections_exponent: u32,
    /// `k`-dimensions (when finite) and vanishing of `H^i`, `i >= 1`.
    pub higher: Vec<(usize, bool, Option<usize>)>,
}

impl BoundEvidence {
    pub fn holds(&self) -> bool {
        self.sections_match && self.higher.iter().all(|h| h.1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    /// Smallest `n` in `[0, limit]` with the conditions for every `m` in `[n, limit]`.
    pub n: Option<i64>,
    pub limit: i64,
    /// Twists from `limit` downward, up to the first failure.
    pub evidence: Vec<BoundEvidence>,
}

/// `H^0(Y, M~(m))` and whether the canonical map `M_m -> H^0(Y, M~(m))` is an isomorphism.
pub fn sections_with_comparison<F: Field>(m: &GradedModule<F>, twist: i64, max_steps: usize) -> Result<(CohomologyEntry<F>, bool)> {
    let base = &m.ring.base;
    let st = stable_at(m, twist, 0, first_stage(m, twist), max_steps)?;
    let imgs = st.complex.canonical_map(m)?;
    let src = m.piece(twist)?;
    let iso = base::is_iso(base, &src, &st.entry.module, &imgs)?;
    Ok((st.entry, iso))
}

/// Evidence at one twist for `O_Y = (Rees ring)~`.
pub fn bound_evidence<F: Field>(rees: &GradedModule<F>, twist: i64, max_steps: usize) -> Result<BoundEvidence> {
    let (sections, sections_match) = sections_with_comparison(rees, twist, max_steps)?;
    let mut higher = Vec::new();
    for i in 1..rees.ring.ny() {
        let e = entry(rees, twist, i, max_steps)?;
        higher.push((i, e.is_zero, e.kdim));
    }
    Ok(BoundEvidence { twist, sections_match, sections_exponent: sections.exponent, higher })
}

/// Effective bound: smallest `n <= limit` such that `H^0(O(m)) = I^m` and
/// higher cohomology of `O(m)` vanishes for all `m` in `[n, limit]`.
pub fn stability_bound<F: Field>(rees: &GradedModule<F>, limit: i64, max_steps: usize) -> Result<BoundCertificate> {
    if limit < 0 {
        return Err(AlgebraError::Malformed("limit must be non-negative".into()));
    }
    let mut evidence = Vec::new();
    let mut n = Some(0);
    for m in (0..=limit).rev() {
        let ev = bound_evidence(rees, m, max_steps)?;
        let ok = ev.holds();
        evidence.push(ev);
        if !ok {
            n = if m == limit { None } else { Some(m + 1) };
            break;
        }
    }
    Ok(BoundCertificate { n, limit, evidence })
}

/// Whether a degree-0 map `M -> N` induces an isomorphism on `H^i(Y, -(m))`.
/// Both sides are read at a common exponent that is stable for each.
pub fn induced_map_is_iso<F: Field>(hom: &GradedHom<F>, twist: i64, i: usize, max_steps: usize) -> Result<bool> {
    let (src, tgt) = (&*hom.source, &*hom.target);
    if i >= src.ring.ny() {
        return Ok(true);
    }
    let base = &src.ring.base;
    let a = stable_at(src, twist, i, first_stage(src, twist), max_steps)?.entry.exponent;
    let b = stable_at(tgt, twist, i, first_stage(tgt, twist), max_steps)?.entry.exponent;
    let d = a.max(b);
    let ks = stage_complex(src, twist, d)?;
    let kt = stage_complex(tgt, twist, d)?;
    for (m, k) in [(src, &ks), (tgt, &kt)] {
        let next = stage_complex(m, twist, d + 1)?;
        let h = k.homology(base, i)?;
        let imgs = k.transition(m, &next, i, &h.gens)?;
        if !base::is_iso(base, &h, &next.homology(base, i)?, &imgs)? {
            return Err(AlgebraError::Inconclusive(format!("exponent {d} is not stable at twist {twist}")));
        }
    }
    let deg = twist + (d as i64) * (i as i64 + 1);
    let at = hom.at(deg)?;
    let parts: Vec<_> = (0..ks.subsets[i].len()).map(|a| (a, a, false, at.clone())).collect();
    let hs = ks.homology(base, i)?;
    let ht = kt.homology(base, i)?;
    let k = src.ring.nbase();
    let imgs: Vec<Vector<F>> = hs.gens.iter().map(|v| apply_blocks(&ks.terms[i], &kt.terms[i], &parts, v, k)).collect();
    base::is_iso(base, &hs, &ht, &imgs)
}
