use std::collections::HashMap;
use std::sync::Arc;

use crate::base::{self, BaseRing, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{block_sum, is_n_stable_pieces, DegreeWindow, GradedHom, GradedModule, GradedMorphism, GradedPieces, GradedRing};
use crate::poly::{vector, Poly, Vector};

/// One term of a complex: either a presented module (resolvable) or an
/// object known only through its pieces, such as a pushforward.
#[derive(Clone)]
pub enum Term<F: Field> {
    Module(Arc<GradedModule<F>>),
    Pieces(Arc<dyn GradedPieces<F>>),
}

impl<F: Field> Term<F> {
    pub fn pieces(&self) -> Arc<dyn GradedPieces<F>> {
        match self {
            Term::Module(m) => m.clone(),
            Term::Pieces(p) => p.clone(),
        }
    }

    pub fn module(&self) -> Option<&Arc<GradedModule<F>>> {
        match self {
            Term::Module(m) => Some(m),
            Term::Pieces(_) => None,
        }
    }
}

/// A differential: a homomorphism of presented modules, or a map given
/// degree by degree.
#[derive(Clone)]
pub enum Differential<F: Field> {
    Hom(GradedHom<F>),
    Degreewise(Arc<dyn GradedMorphism<F>>),
}

impl<F: Field> Differential<F> {
    pub fn at(&self, d: i64) -> Result<Vec<Vector<F>>> {
        match self {
            Differential::Hom(h) => h.at(d),
            Differential::Degreewise(g) => g.at(d),
        }
    }

    /// The zero map between two terms.
    pub fn zero(src: &Term<F>, tgt: &Term<F>) -> Self {
        let (s, t) = (src.pieces(), tgt.pieces());
        Differential::Degreewise(Arc::new(move |d: i64| -> Result<Vec<Vector<F>>> {
            let k = s.ring().nbase();
            let rank = t.piece(d)?.rank;
            Ok(vec![vector::zero(rank, k); s.piece(d)?.ngens()])
        }))
    }
}

/// Bounded complex `C^start -> C^{start+1} -> ...` of graded objects over one ring.
#[derive(Clone)]
pub struct ComplexOfGradedModules<F: Field> {
    pub ring: Arc<GradedRing<F>>,
    pub start: i64,
    terms: Vec<Term<F>>,
    /// `diffs[i]: terms[i] -> terms[i + 1]`.
    diffs: Vec<Differential<F>>,
    /// Terms are 0-stable: an object of the filtered derived category.
    pub filtered: bool,
}

impl<F: Field> ComplexOfGradedModules<F> {
    pub fn new(ring: Arc<GradedRing<F>>, start: i64, terms: Vec<Term<F>>, diffs: Vec<Differential<F>>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(AlgebraError::OrderMismatch(format!("{} terms need {} differentials, got {}", terms.len(), terms.len().saturating_sub(1), diffs.len())));
        }
        for t in &terms {
            if !Arc::ptr_eq(t.pieces().ring(), &ring) && t.pieces().ring().names() != ring.names() {
                return Err(AlgebraError::OrderMismatch("terms live over different rings".into()));
            }
        }
        Ok(ComplexOfGradedModules { ring, start, terms, diffs, filtered: false })
    }

    /// `M` placed in cohomological degree `pos`.
    pub fn single(m: Arc<GradedModule<F>>, pos: i64) -> Self {
        let ring = m.ring.clone();
        ComplexOfGradedModules { ring, start: pos, terms: vec![Term::Module(m)], diffs: Vec::new(), filtered: false }
    }

    pub fn single_pieces(p: Arc<dyn GradedPieces<F>>, pos: i64) -> Self {
        let ring = p.ring().clone();
        ComplexOfGradedModules { ring, start: pos, terms: vec![Term::Pieces(p)], diffs: Vec::new(), filtered: false }
    }

    /// Modules with zero differentials, `terms[i]` in degree `start + i`.
    pub fn with_zero_differentials(ring: Arc<GradedRing<F>>, start: i64, terms: Vec<Term<F>>) -> Self {
        let diffs = terms.windows(2).map(|w| Differential::zero(&w[0], &w[1])).collect();
        ComplexOfGradedModules { ring, start, terms, diffs, filtered: false }
    }

    pub fn zero(ring: Arc<GradedRing<F>>) -> Self {
        ComplexOfGradedModules { ring, start: 0, terms: Vec::new(), diffs: Vec::new(), filtered: true }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Last cohomological degree carrying a term.
    pub fn end(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }

    pub fn term(&self, p: i64) -> Option<&Term<F>> {
        if p < self.start {
            return None;
        }
        self.terms.get((p - self.start) as usize)
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    /// `d^p: C^p -> C^{p+1}`.
    pub fn differential(&self, p: i64) -> Option<&Differential<F>> {
        if p < self.start {
            return None;
        }
        self.diffs.get((p - self.start) as usize)
    }

    /// `X[k]`: `X[k]^p = X^{p+k}`, differentials negated for odd `k`.
    pub fn shift(&self, k: i64) -> Self {
        let diffs = if k % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(negate).collect() };
        ComplexOfGradedModules { ring: self.ring.clone(), start: self.start - k, terms: self.terms.clone(), diffs, filtered: self.filtered }
    }

    /// Verify that every presented term is 0-stable and set the flag.
    /// Terms known only through pieces are checked on `window`.
    pub fn flag_filtered(mut self, window: DegreeWindow) -> Result<Self> {
        for (i, t) in self.terms.iter().enumerate() {
            let stable = match t {
                Term::Module(m) => crate::rees::is_n_stable(m, 0)?.stable,
                Term::Pieces(p) => is_n_stable_pieces(p.as_ref(), DegreeWindow::new(window.lo.min(0), 0))?,
            };
            if !stable {
                return Err(AlgebraError::Malformed(format!("term in degree {} is not 0-stable", self.start + i as i64)));
            }
        }
        self.filtered = true;
        Ok(self)
    }

    /// The complex of base modules in internal degree `d`.
    pub fn slice(&self, d: i64) -> Result<BaseComplex<F>> {
        let terms: Vec<Subquotient<F>> = self.terms.iter().map(|t| t.pieces().piece(d)).collect::<Result<_>>()?;
        let diffs = self.diffs.iter().map(|f| f.at(d)).collect::<Result<_>>()?;
        Ok(BaseComplex { start: self.start, terms, diffs })
    }

    /// `d . d = 0` in every degree of the window.
    pub fn check_d_squared(&self, window: DegreeWindow) -> Result<bool> {
        let base = &self.ring.base;
        for d in window.degrees() {
            if !self.slice(d)?.d_squared_vanishes(base)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `H^p` in internal degree `d`.
    pub fn homology(&self, p: i64, d: i64) -> Result<Subquotient<F>> {
        self.slice(d)?.homology(&self.ring.base, p)
    }

    pub fn is_exact(&self, window: DegreeWindow) -> Result<bool> {
        for d in window.degrees() {
            if !self.slice(d)?.is_exact(&self.ring.base)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Euler characteristic of homology per degree; `None` where some
    /// homology group is infinite dimensional.
    pub fn euler_characteristic(&self, window: DegreeWindow) -> Result<Vec<Option<i64>>> {
        window.degrees().map(|d| self.slice(d)?.euler(&self.ring.base)).collect()
    }
}

fn negate<F: Field>(f: &Differential<F>) -> Differential<F> {
    let f = f.clone();
    Differential::Degreewise(Arc::new(move |d: i64| -> Result<Vec<Vector<F>>> { Ok(f.at(d)?.iter().map(|v| neg(v)).collect()) }))
}

fn neg<F: Field>(v: &[Poly<F>]) -> Vector<F> {
    v.iter().map(|p| p.neg()).collect()
}

/// Bounded complex of base modules, `terms[i]` in degree `start + i`.
#[derive(Clone, Debug)]
pub struct BaseComplex<F: Field> {
    pub start: i64,
    pub terms: Vec<Subquotient<F>>,
    pub diffs: Vec<Vec<Vector<F>>>,
}

impl<F: Field> BaseComplex<F> {
    pub fn term(&self, p: i64) -> Subquotient<F> {
        if p < self.start {
            return Subquotient::zero();
        }
        self.terms.get((p - self.start) as usize).cloned().unwrap_or_else(Subquotient::zero)
    }

    /// Generator images of `d^p`; zero outside the stored range.
    pub fn diff(&self, p: i64, nvars: usize) -> Vec<Vector<F>> {
        if p >= self.start {
            if let Some(d) = self.diffs.get((p - self.start) as usize) {
                return d.clone();
            }
        }
        vec![vector::zero(self.term(p + 1).rank, nvars); self.term(p).ngens()]
    }

    fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.start..=self.start + self.terms.len() as i64 - 1
    }

    pub fn homology(&self, base: &BaseRing<F>, p: i64) -> Result<Subquotient<F>> {
        let k = base.nvars();
        base::homology(base, &self.term(p - 1), &self.term(p), &self.term(p + 1), &self.diff(p - 1, k), &self.diff(p, k))
    }

    pub fn is_exact(&self, base: &BaseRing<F>) -> Result<bool> {
        for p in self.range() {
            if !self.homology(base, p)?.is_zero(base)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn d_squared_vanishes(&self, base: &BaseRing<F>) -> Result<bool> {
        let k = base.nvars();
        for p in self.range() {
            let mid = self.term(p + 1);
            let tgt = self.term(p + 2);
            if self.term(p).ngens() == 0 || tgt.rank == 0 {
                continue;
            }
            let dd = base::compose(base, &mid, tgt.rank, &self.diff(p, k), &self.diff(p + 1, k))?;
            let gb = tgt.rel_basis(base)?;
            for v in &dd {
                if !gb.contains(v)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn euler(&self, base: &BaseRing<F>) -> Result<Option<i64>> {
        let mut chi = 0i64;
        for p in self.range() {
            let h = self.homology(base, p)?;
            if h.is_zero(base)? {
                continue;
            }
            match h.kdim(base)? {
                Some(n) => chi += if p.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) },
                None => return Ok(None),
            }
        }
        Ok(Some(chi))
    }

    /// Cone of `f: A -> B` with `f[p]` the generator images of `A^p -> B^p`:
    /// `cone^p = A^{p+1} ⊕ B^p`, `d(a, b) = (-d a, f a + d b)`.
    pub fn cone(base: &BaseRing<F>, a: &BaseComplex<F>, b: &BaseComplex<F>, f: &dyn Fn(i64) -> Vec<Vector<F>>) -> BaseComplex<F> {
        let k = base.nvars();
        let lo = (a.start - 1).min(b.start);
        let hi = (a.start + a.terms.len() as i64 - 2).max(b.start + b.terms.len() as i64 - 1);
        if hi < lo {
            return BaseComplex { start: 0, terms: Vec::new(), diffs: Vec::new() };
        }
        let blocks = |p: i64| block_sum(&[a.term(p + 1), b.term(p)], k);
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for p in lo..=hi {
            let src = blocks(p);
            let tgt = blocks(p + 1);
            let mut imgs = Vec::new();
            let da = a.diff(p + 1, k);
            let fa = if a.term(p + 1).ngens() > 0 && b.term(p + 1).rank > 0 { f(p + 1) } else { vec![vector::zero(b.term(p + 1).rank, k); a.term(p + 1).ngens()] };
            for (x, y) in da.iter().zip(&fa) {
                imgs.push(vector::add(&tgt.embed(0, &neg(x), k), &tgt.embed(1, y, k)));
            }
            for y in b.diff(p, k) {
                imgs.push(tgt.embed(1, &y, k));
            }
            terms.push(src.sum);
            if p < hi {
                diffs.push(imgs);
            }
        }
        BaseComplex { start: lo, terms, diffs }
    }
}

/// Direct sum of two graded objects; either side may be absent.
struct DirectSum<F: Field> {
    ring: Arc<GradedRing<F>>,
    parts: [Option<Arc<dyn GradedPieces<F>>>; 2],
}

impl<F: Field> DirectSum<F> {
    fn pieces(&self, d: i64) -> Result<[Subquotient<F>; 2]> {
        let get = |p: &Option<Arc<dyn GradedPieces<F>>>| match p {
            Some(p) => p.piece(d),
            None => Ok(Subquotient::zero()),
        };
        Ok([get(&self.parts[0])?, get(&self.parts[1])?])
    }
}

impl<F: Field> GradedPieces<F> for DirectSum<F> {
    fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    fn piece(&self, d: i64) -> Result<Subquotient<F>> {
        Ok(block_sum(&self.pieces(d)?, self.ring.nbase()).sum)
    }

    fn act(&self, a: &Poly<F>, d: i64) -> Result<Vec<Vector<F>>> {
        let k = self.ring.nbase();
        let w = self.ring.degree_of(a).unwrap_or(0);
        let tgt = block_sum(&self.pieces(d + w)?, k);
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            if let Some(p) = p {
                for v in p.act(a, d)? {
                    out.push(tgt.embed(i, &v, k));
                }
            }
        }
        Ok(out)
    }
}

/// Degreewise chain map `f^p: X^p -> Y^p`, one component per term of `X`.
#[derive(Clone)]
pub struct ChainMap<F: Field> {
    pub source: ComplexOfGradedModules<F>,
    pub target: ComplexOfGradedModules<F>,
    pub components: Vec<Differential<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(source: ComplexOfGradedModules<F>, target: ComplexOfGradedModules<F>, components: Vec<Differential<F>>) -> Result<Self> {
        if components.len() != source.len() {
            return Err(AlgebraError::OrderMismatch("one component per source term required".into()));
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn identity(x: &ComplexOfGradedModules<F>) -> Self {
        let components = x
            .terms()
            .iter()
            .map(|t| {
                let p = t.pieces();
                Differential::Degreewise(Arc::new(move |d: i64| -> Result<Vec<Vector<F>>> { Ok(p.piece(d)?.gens) }))
            })
            .collect();
        ChainMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn component(&self, p: i64) -> Option<&Differential<F>> {
        if p < self.source.start {
            return None;
        }
        self.components.get((p - self.source.start) as usize)
    }

    /// `f d_X = d_Y f` on the window.
    pub fn commutes(&self, window: DegreeWindow) -> Result<bool> {
        let base = &self.source.ring.base;
        let k = base.nvars();
        for d in window.degrees() {
            let xs = self.source.slice(d)?;
            let ys = self.target.slice(d)?;
            for p in self.source.start..=self.source.end() {
                let tgt = ys.term(p + 1);
                if xs.term(p).ngens() == 0 || tgt.rank == 0 {
                    continue;
                }
                let f = |q: i64| -> Result<Vec<Vector<F>>> {
                    match self.component(q) {
                        Some(c) if ys.term(q).rank > 0 => c.at(d),
                        _ => Ok(vec![vector::zero(ys.term(q).rank, k); xs.term(q).ngens()]),
                    }
                };
                let lhs = base::compose(base, &xs.term(p + 1), tgt.rank, &xs.diff(p, k), &f(p + 1)?)?;
                let rhs = base::compose(base, &ys.term(p), tgt.rank, &f(p)?, &ys.diff(p, k))?;
                let gb = tgt.rel_basis(base)?;
                for (l, r) in lhs.iter().zip(&rhs) {
                    if !gb.contains(&vector::sub(l, r))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `f` in internal degree `d` as base-module maps, zero where `Y` has no term.
    fn slice_map(&self, d: i64, p: i64) -> Result<Vec<Vector<F>>> {
        let k = self.source.ring.nbase();
        let rank = match self.target.term(p) {
            Some(t) => t.pieces().piece(d)?.rank,
            None => 0,
        };
        match (self.component(p), rank) {
            (Some(c), r) if r > 0 => c.at(d),
            _ => {
                let n = match self.source.term(p) {
                    Some(t) => t.pieces().piece(d)?.ngens(),
                    None => 0,
                };
                Ok(vec![vector::zero(rank, k); n])
            }
        }
    }
}

/// `cone(f)^p = X^{p+1} ⊕ Y^p` with `d(x, y) = (-d x, f x + d y)`.
pub fn cone<F: Field>(f: &ChainMap<F>) -> Result<ComplexOfGradedModules<F>> {
    let (x, y) = (&f.source, &f.target);
    let ring = x.ring.clone();
    if x.is_empty() && y.is_empty() {
        return Ok(ComplexOfGradedModules::zero(ring));
    }
    let lo = if x.is_empty() {
        y.start
    } else if y.is_empty() {
        x.start - 1
    } else {
        (x.start - 1).min(y.start)
    };
    let hi = if x.is_empty() {
        y.end()
    } else if y.is_empty() {
        x.end() - 1
    } else {
        (x.end() - 1).max(y.end())
    };
    let mut terms = Vec::new();
    for p in lo..=hi {
        let parts = [x.term(p + 1).map(|t| t.pieces()), y.term(p).map(|t| t.pieces())];
        terms.push(Term::Pieces(Arc::new(DirectSum { ring: ring.clone(), parts })));
    }
    let mut diffs: Vec<Differential<F>> = Vec::new();
    for p in lo..hi {
        let f = f.clone();
        diffs.push(Differential::Degreewise(Arc::new(move |d: i64| -> Result<Vec<Vector<F>>> {
            let base = &f.source.ring.base;
            let (xs, ys) = (f.source.slice(d)?, f.target.slice(d)?);
            let maps: HashMap<i64, Vec<Vector<F>>> = (p..=p + 1).map(|q| Ok((q, f.slice_map(d, q)?))).collect::<Result<_>>()?;
            let c = BaseComplex::cone(base, &xs, &ys, &|q| maps.get(&q).cloned().unwrap_or_default());
            let want = xs.term(p + 1).ngens() + ys.term(p).ngens();
            let got = c.diff(p, base.nvars());
            if got.len() != want {
                return Err(AlgebraError::OrderMismatch("cone differential has the wrong shape".into()));
            }
            Ok(got)
        })));
    }
    let mut c = ComplexOfGradedModules::new(ring, lo, terms, diffs)?;
    c.filtered = x.filtered && y.filtered;
    Ok(c)
}

/// `χ(cone f) = χ(Y) - χ(X)` in every degree of the window where all three are finite.
pub fn cone_euler_holds<F: Field>(f: &ChainMap<F>, window: DegreeWindow) -> Result<bool> {
    let c = cone(f)?.euler_characteristic(window)?;
    let x = f.source.euler_characteristic(window)?;
    let y = f.target.euler_characteristic(window)?;
    for ((c, x), y) in c.into_iter().zip(x).zip(y) {
        if let (Some(c), Some(x), Some(y)) = (c, x, y) {
            if c != y - x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Presented modules viewed as a complex concentrated in one degree.
impl<F: Field> From<GradedModule<F>> for ComplexOfGradedModules<F> {
    fn from(m: GradedModule<F>) -> Self {
        ComplexOfGradedModules::single(Arc::new(m), 0)
    }
}
