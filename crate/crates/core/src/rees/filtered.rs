use std::sync::Arc;

use serde::Serialize;

use crate::base::{self, BaseRing, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{DegreeWindow, GradedModule, GradedPieces, GradedRing};
use crate::groebner::GroebnerBasis;
use crate::mono::{ModuleOrder, MonoOrder, TermOrder};
use crate::poly::{vector, Poly, Vector};

/// An `R`-module annihilated by `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZModule<F: Field> {
    pub module: Subquotient<F>,
}

impl<F: Field> ZModule<F> {
    pub fn new(ring: &GradedRing<F>, module: Subquotient<F>) -> Result<Self> {
        let base = &ring.base;
        let gb = module.rel_basis(base)?;
        for (j, g) in module.gens.iter().enumerate() {
            for (i, gi) in ring.gens.iter().enumerate() {
                if !gb.contains(&vector::scale(g, gi))? {
                    return Err(AlgebraError::Malformed(format!("generator {i} of the ideal does not kill generator {j}")));
                }
            }
        }
        Ok(ZModule { module })
    }

    /// `R / (x_0, .., x_k)`, when `I` lies in the maximal ideal at the origin.
    pub fn residue_field(ring: &GradedRing<F>) -> Result<Self> {
        let k = ring.nbase();
        let rels = (0..k).map(|i| vec![Poly::var(k, i)]).collect();
        ZModule::new(ring, Subquotient::cokernel(1, k, rels))
    }

    /// Presentation `R^m / rels` on the generators.
    pub fn presentation(&self, base: &BaseRing<F>) -> Result<Subquotient<F>> {
        self.module.to_cokernel(base)
    }
}

/// `E = F^0 ⊇ F^1 ⊇ .. ⊇ F^s`, continued by `F^{n+1} = I F^n` for `n >= s`.
/// Every level is given by generators in the ambient of `E`.
#[derive(Clone, Debug)]
pub struct FilteredModule<F: Field> {
    pub e: Subquotient<F>,
    /// `levels[0]` are the generators of `E`.
    pub levels: Vec<Vec<Vector<F>>>,
}

impl<F: Field> FilteredModule<F> {
    pub fn new(e: Subquotient<F>, higher: Vec<Vec<Vector<F>>>) -> Self {
        let mut levels = vec![e.gens.clone()];
        levels.extend(higher);
        FilteredModule { e, levels }
    }

    /// The `I`-adic filtration `F^n = I^n E`.
    pub fn adic(e: Subquotient<F>) -> Self {
        FilteredModule::new(e, Vec::new())
    }

    pub fn s(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Subquotient<F> {
        Subquotient::new(self.e.rank, self.levels[n].clone(), self.e.rels.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// `F^n ⊄ F^{n-1}`.
    NotDecreasing,
    /// `I F^n ⊄ F^{n+1}`.
    NotMultiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationViolation {
    pub kind: ViolationKind,
    pub level: usize,
    pub generator: usize,
}

/// First violation of the filtration axioms, if any.
pub fn filtration_wellformed<F: Field>(f: &FilteredModule<F>, ring: &GradedRing<F>) -> Result<Option<FiltrationViolation>> {
    let base = &ring.base;
    for n in 1..=f.s() {
        let prev = f.level(n - 1).lifter(base)?;
        for (l, v) in f.levels[n].iter().enumerate() {
            if !prev.contains(v)? {
                return Ok(Some(FiltrationViolation { kind: ViolationKind::NotDecreasing, level: n, generator: l }));
            }
        }
    }
    for n in 0..f.s() {
        let next = f.level(n + 1).lifter(base)?;
        for (l, v) in f.levels[n].iter().enumerate() {
            for g in &ring.gens {
                if !next.contains(&vector::scale(v, g))? {
                    return Ok(Some(FiltrationViolation { kind: ViolationKind::NotMultiplicative, level: n, generator: l }));
                }
            }
        }
    }
    Ok(None)
}

/// `⊕_n F^n t^n` (with `F^n = E` for `n < 0`) over the extended Rees algebra.
///
/// Generators `ε_{n,l}` of degree `n` for `0 <= n <= s`, one per generator of
/// `F^n`. Relations: `u ε_{n,l}` and `y_i ε_{n,l}` expressed on the
/// neighbouring level, the syzygies of each level, and the Rees-module
/// relations of `F^s` (elimination of `t` from the graph of `y_i -> g_i t`).
pub fn rees_module<F: Field>(f: &FilteredModule<F>, ext: &Arc<GradedRing<F>>) -> Result<GradedModule<F>> {
    if !ext.has_u {
        return Err(AlgebraError::Malformed("the Rees module lives over the extended Rees algebra".into()));
    }
    let base = &ext.base;
    let n = ext.nvars();
    let s = f.s();
    let mut offsets = Vec::new();
    let mut twists = Vec::new();
    for (lvl, gens) in f.levels.iter().enumerate() {
        offsets.push(twists.len());
        twists.extend(std::iter::repeat_n(lvl as i64, gens.len()));
    }
    let total = twists.len();
    let place = |lvl: usize, coeffs: &[Poly<F>]| -> Vector<F> {
        let mut v = vector::zero(total, n);
        for (l, c) in coeffs.iter().enumerate() {
            v[offsets[lvl] + l] = ext.lift_base(c);
        }
        v
    };
    let unit = |lvl: usize, l: usize, p: Poly<F>| -> Vector<F> {
        let mut v = vector::zero(total, n);
        v[offsets[lvl] + l] = p;
        v
    };
    let mut rels: Vec<Vector<F>> = Vec::new();
    let lifters = (0..=s).map(|lvl| f.level(lvl).lifter(base)).collect::<Result<Vec<_>>>()?;
    for lvl in 1..=s {
        for (l, v) in f.levels[lvl].iter().enumerate() {
            let c = lifters[lvl - 1].lift(v)?.ok_or_else(|| AlgebraError::Malformed(format!("level {lvl} is not contained in level {}", lvl - 1)))?;
            rels.push(vector::sub(&unit(lvl, l, ext.var(ext.u())), &place(lvl - 1, &c)));
        }
    }
    for lvl in 0..s {
        for (l, v) in f.levels[lvl].iter().enumerate() {
            for (i, g) in ext.gens.iter().enumerate() {
                let c = lifters[lvl + 1].lift(&vector::scale(v, g))?.ok_or_else(|| AlgebraError::Malformed(format!("I F^{lvl} is not contained in F^{}", lvl + 1)))?;
                rels.push(vector::sub(&unit(lvl, l, ext.var(ext.y(i))), &place(lvl + 1, &c)));
            }
        }
        for syz in f.level(lvl).presentation(base)? {
            rels.push(place(lvl, &syz));
        }
    }
    for c in adic_relations(f, ext, base)? {
        let mut v = vector::zero(total, n);
        for (l, p) in c.into_iter().enumerate() {
            v[offsets[s] + l] = p;
        }
        rels.push(v);
    }
    GradedModule::new(ext.clone(), twists, rels)
}

/// Kernel of `R[y]^N -> E[t]`, `e_l -> f_l`, `y_i -> g_i t`, for the top level,
/// as vectors in the variables of `ext`.
fn adic_relations<F: Field>(f: &FilteredModule<F>, ext: &GradedRing<F>, base: &BaseRing<F>) -> Result<Vec<Vector<F>>> {
    let top = &f.levels[f.s()];
    if top.is_empty() {
        return Ok(Vec::new());
    }
    let (k, ny) = (ext.nbase(), ext.ny());
    let r = f.e.rank;
    let m = top.len();
    let nv = k + ny + 1;
    let t = k + ny;
    let lift: Vec<usize> = (0..k).collect();
    let up = |p: &Poly<F>| p.rename(&lift, nv);
    let mut rows: Vec<Vector<F>> = Vec::new();
    for (l, fl) in top.iter().enumerate() {
        let a: Vector<F> = fl.iter().map(up).collect();
        rows.push(vector::concat(&a, &vector::unit(m, nv, l)));
    }
    let mut erels: Vec<Vector<F>> = f.e.rels.clone();
    erels.extend(base.rel_vectors(r));
    for rho in &erels {
        let a: Vector<F> = rho.iter().map(up).collect();
        rows.push(vector::concat(&a, &vector::zero(m, nv)));
    }
    for (i, g) in ext.gens.iter().enumerate() {
        let d = Poly::var(nv, k + i).sub(&up(g).mul(&Poly::var(nv, t)));
        for c in 0..r {
            let mut a = vector::zero(r, nv);
            a[c] = d.clone();
            rows.push(vector::concat(&a, &vector::zero(m, nv)));
        }
    }
    let mut levels = vec![1u32; r];
    levels.extend(std::iter::repeat_n(0, m));
    let order = TermOrder { mono: MonoOrder::elimination(nv, &[t]), module: ModuleOrder::Top, levels: Some(levels) };
    let gb = GroebnerBasis::new(&rows, r + m, nv, &order, base.limits)?;
    let mask: Vec<bool> = (0..nv).map(|i| i != t).collect();
    let to_ext: Vec<usize> = (0..nv).collect();
    let mut out = Vec::new();
    for v in gb.basis() {
        if !vector::is_zero(&v[..r]) || !v[r..].iter().all(|p| p.uses_only(&mask)) {
            continue;
        }
        out.push(v[r..].iter().map(|p| p.rename(&to_ext, ext.nvars())).collect());
    }
    Ok(out)
}

/// Images in the ambient of `E` of the pure basis of `M_d`, for a module whose
/// generator `j` maps to `images[j]` under `u -> 1`, `y_i -> g_i`.
pub fn laurent_realization<F: Field>(m: &GradedModule<F>, images: &[Vector<F>], d: i64) -> Vec<Vector<F>> {
    let ring = &m.ring;
    m.basis(d)
        .into_iter()
        .map(|(j, mu)| {
            let c = ring.to_laurent_coefficient(&Poly::monomial(mu, F::one()));
            ring.base.reduce_vector(&vector::scale(&images[j], &c))
        })
        .collect()
}

/// The filtration concentrated up to level `n`: `F^k = N` for `k <= n`, zero after.
pub fn i_n<F: Field>(nmod: &ZModule<F>, n: usize) -> FilteredModule<F> {
    let gens = nmod.module.gens.clone();
    let mut higher: Vec<Vec<Vector<F>>> = vec![gens; n];
    higher.push(Vec::new());
    FilteredModule::new(nmod.module.clone(), higher)
}

/// `i_n(N)` directly as a graded module: `N` placed in degree `n`, with
/// `y` acting by zero and `u` bijective below.
pub fn i_n_module<F: Field>(nmod: &ZModule<F>, n: i64, ext: &Arc<GradedRing<F>>) -> Result<GradedModule<F>> {
    let pres = nmod.presentation(&ext.base)?;
    let m = pres.rank;
    let nv = ext.nvars();
    let mut rels: Vec<Vector<F>> = pres.rels.iter().map(|r| r.iter().map(|p| ext.lift_base(p)).collect()).collect();
    for j in 0..m {
        for i in 0..ext.ny() {
            let mut v = vector::zero(m, nv);
            v[j] = ext.var(ext.y(i));
            rels.push(v);
        }
    }
    GradedModule::new(ext.clone(), vec![n; m], rels)
}

/// Free module `Ã^rank` in degree 0, the image of `R^rank` with its `I`-adic filtration.
pub fn rho<F: Field>(ext: &Arc<GradedRing<F>>, rank: usize) -> GradedModule<F> {
    GradedModule::free(ext.clone(), vec![0; rank])
}

/// `coker(u: M_{n+1} -> M_n)`.
pub fn gr_f<F: Field>(m: &dyn GradedPieces<F>, n: i64) -> Result<Subquotient<F>> {
    let ring = m.ring();
    if !ring.has_u {
        return Err(AlgebraError::Malformed("gr needs the variable u".into()));
    }
    let p = m.piece(n)?;
    let mut rels = p.rels.clone();
    rels.extend(m.act(&ring.var(ring.u()), n + 1)?);
    Ok(Subquotient::new(p.rank, p.gens, rels))
}

/// `M_{>=0}` as a module over the Rees algebra.
pub fn tau<F: Field>(m: &GradedModule<F>, rees: &Arc<GradedRing<F>>) -> Result<GradedModule<F>> {
    let ring = &m.ring;
    if !ring.has_u {
        return Err(AlgebraError::Malformed("tau restricts from the extended Rees algebra".into()));
    }
    let n = ring.nvars();
    let r = m.rank();
    let u = ring.u();
    let mut gens: Vec<Vector<F>> = Vec::new();
    let mut degs = Vec::new();
    for (j, &t) in m.twists.iter().enumerate() {
        if t >= 0 {
            for c in 0..=t {
                let mut v = vector::zero(r, n);
                v[j] = Poly::var(n, u).pow(c as u32);
                gens.push(v);
                degs.push(t - c);
            }
        } else {
            for mu in ring.pure_monomials(-t) {
                gens.push(m.basis_element(j, &mu));
                degs.push(0);
            }
        }
    }
    let g = gens.len();
    let mut rows: Vec<Vector<F>> = Vec::new();
    for (i, v) in gens.iter().enumerate() {
        rows.push(vector::concat(v, &vector::unit(g, n, i)));
    }
    let mut rels = m.rels.clone();
    for c in 0..r {
        for l in &ring.ideal().gens {
            let mut v = vector::zero(r, n);
            v[c] = l.clone();
            rels.push(v);
        }
    }
    for v in &rels {
        rows.push(vector::concat(v, &vector::zero(g, n)));
    }
    let mut levels = vec![1u32; r];
    levels.extend(std::iter::repeat_n(0, g));
    let order = TermOrder { mono: MonoOrder::elimination(n, &[u]), module: ModuleOrder::Top, levels: Some(levels) };
    let gb = GroebnerBasis::new(&rows, r + g, n, &order, ring.base.limits)?;
    let mask: Vec<bool> = (0..n).map(|i| i != u).collect();
    let to_rees: Vec<usize> = (0..n).map(|i| if i == u { 0 } else { i }).collect();
    let mut out = Vec::new();
    for v in gb.basis() {
        if !vector::is_zero(&v[..r]) || !v[r..].iter().all(|p| p.uses_only(&mask)) {
            continue;
        }
        out.push(v[r..].iter().map(|p| p.rename(&to_rees, rees.nvars())).collect());
    }
    GradedModule::new(rees.clone(), degs, out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityCertificate {
    pub stable: bool,
    /// `u: M_d -> M_{d-1}` was tested for every `d` with `lo < d <= hi`.
    pub window: DegreeWindow,
    pub failures: Vec<i64>,
}

/// `u: M_d -> M_{d-1}` is bijective for all `d <= n`.
///
/// Below every generator and relation degree, shifted by the largest `y`-degree
/// appearing in a relation, pieces and relations repeat under `u`, so the
/// finite window tested is enough.
pub fn is_n_stable<F: Field>(m: &GradedModule<F>, n: i64) -> Result<StabilityCertificate> {
    let ring = &m.ring;
    if !ring.has_u {
        return Err(AlgebraError::Malformed("stability is defined over the extended Rees algebra".into()));
    }
    let base = &ring.base;
    let ydeg = |p: &Poly<F>| -> i64 { p.terms().iter().map(|(mo, _)| (0..ring.ny()).map(|i| mo.0[ring.y(i)] as i64).sum::<i64>()).max().unwrap_or(0) };
    let maxy = m.rels.iter().flatten().chain(ring.ideal().gens.iter()).map(ydeg).max().unwrap_or(0);
    let low = m.twists.iter().chain(m.rel_degrees()).copied().min().unwrap_or(0).min(n);
    let lo = low - maxy - 1;
    let u = ring.var(ring.u());
    let mut failures = Vec::new();
    for d in lo + 1..=n {
        let src = m.piece(d)?;
        let tgt = m.piece(d - 1)?;
        let img = m.act(&u, d)?;
        if !base::is_iso(base, &src, &tgt, &img)? {
            failures.push(d);
        }
    }
    Ok(StabilityCertificate { stable: failures.is_empty(), window: DegreeWindow::new(lo, n), failures })
}
