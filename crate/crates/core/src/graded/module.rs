use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::base::Subquotient;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::mono::Mono;
use crate::poly::{vector, Poly, Vector};

use super::ring::GradedRing;

/// Anything whose graded pieces are computable as base-ring modules, together
/// with the action of homogeneous ring elements between pieces.
pub trait GradedPieces<F: Field>: Send + Sync {
    fn ring(&self) -> &Arc<GradedRing<F>>;

    fn piece(&self, d: i64) -> Result<Subquotient<F>>;

    /// Images of the generators of `piece(d)` under multiplication by the
    /// homogeneous element `a` of weight `w`, as vectors in the ambient of
    /// `piece(d + w)`.
    fn act(&self, a: &Poly<F>, d: i64) -> Result<Vec<Vector<F>>>;
}

/// Degree-wise map between graded objects: generator images per degree.
pub trait GradedMorphism<F: Field>: Send + Sync {
    fn at(&self, d: i64) -> Result<Vec<Vector<F>>>;
}

impl<F: Field, T: Fn(i64) -> Result<Vec<Vector<F>>> + Send + Sync> GradedMorphism<F> for T {
    fn at(&self, d: i64) -> Result<Vec<Vector<F>>> {
        self(d)
    }
}

/// Finitely presented graded module `F0 / K` with `F0 = ⊕ S e_j`, `deg e_j = twists[j]`.
/// The relations `L F0` of the ring are implicit.
pub struct GradedModule<F: Field> {
    pub ring: Arc<GradedRing<F>>,
    pub twists: Vec<i64>,
    pub rels: Vec<Vector<F>>,
    rel_degrees: Vec<i64>,
    cache: Mutex<HashMap<i64, Subquotient<F>>>,
}

impl<F: Field> Clone for GradedModule<F> {
    fn clone(&self) -> Self {
        GradedModule { ring: self.ring.clone(), twists: self.twists.clone(), rels: self.rels.clone(), rel_degrees: self.rel_degrees.clone(), cache: Mutex::new(HashMap::new()) }
    }
}

impl<F: Field> std::fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule(twists {:?}, {} relations)", self.twists, self.rels.len())
    }
}

/// Degree of a homogeneous vector with respect to generator degrees `twists`.
pub fn vector_degree<F: Field>(ring: &GradedRing<F>, twists: &[i64], v: &[Poly<F>]) -> Result<Option<i64>> {
    let mut deg = None;
    for (j, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let w = ring.degree_of(p).ok_or_else(|| AlgebraError::Malformed(format!("entry {} is not homogeneous", ring.display(p))))?;
        let d = w + twists[j];
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Err(AlgebraError::Malformed("vector mixes degrees".into())),
            _ => {}
        }
    }
    Ok(deg)
}

impl<F: Field> GradedModule<F> {
    pub fn new(ring: Arc<GradedRing<F>>, twists: Vec<i64>, rels: Vec<Vector<F>>) -> Result<Self> {
        let mut kept = Vec::new();
        let mut rel_degrees = Vec::new();
        for r in rels {
            if r.len() != twists.len() {
                return Err(AlgebraError::OrderMismatch("relation of the wrong length".into()));
            }
            if let Some(d) = vector_degree(&ring, &twists, &r)? {
                kept.push(r);
                rel_degrees.push(d);
            }
        }
        Ok(GradedModule { ring, twists, rels: kept, rel_degrees, cache: Mutex::new(HashMap::new()) })
    }

    pub fn free(ring: Arc<GradedRing<F>>, twists: Vec<i64>) -> Self {
        GradedModule::new(ring, twists, Vec::new()).expect("free module")
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: Arc<GradedRing<F>>) -> Self {
        Self::free(ring, vec![0])
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn rel_degrees(&self) -> &[i64] {
        &self.rel_degrees
    }

    /// `twist(M, k)_d = M_{d+k}`.
    pub fn twist(&self, k: i64) -> GradedModule<F> {
        let twists = self.twists.iter().map(|t| t - k).collect();
        GradedModule::new(self.ring.clone(), twists, self.rels.clone()).expect("twist keeps homogeneity")
    }

    /// Add relations.
    pub fn quotient(&self, extra: Vec<Vector<F>>) -> Result<GradedModule<F>> {
        let mut rels = self.rels.clone();
        rels.extend(extra);
        GradedModule::new(self.ring.clone(), self.twists.clone(), rels)
    }

    pub fn direct_sum(&self, other: &GradedModule<F>) -> GradedModule<F> {
        let n = self.nvars();
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().copied());
        let mut rels: Vec<Vector<F>> = self.rels.iter().map(|r| vector::concat(r, &vector::zero(other.rank(), n))).collect();
        rels.extend(other.rels.iter().map(|r| vector::concat(&vector::zero(self.rank(), n), r)));
        GradedModule::new(self.ring.clone(), twists, rels).expect("sum of homogeneous modules")
    }

    /// Pure basis of `(F0)_d`: pairs (generator, pure monomial).
    pub fn basis(&self, d: i64) -> Vec<(usize, Mono)> {
        let mut out = Vec::new();
        for (j, &t) in self.twists.iter().enumerate() {
            for m in self.ring.pure_monomials(d - t) {
                out.push((j, m));
            }
        }
        out
    }

    fn basis_index(&self, d: i64) -> HashMap<(usize, Mono), usize> {
        self.basis(d).into_iter().enumerate().map(|(i, b)| (b, i)).collect()
    }

    /// Coordinates over `R` of a homogeneous degree-`d` element of `F0`.
    pub fn coords_in(&self, v: &[Poly<F>], d: i64, index: &HashMap<(usize, Mono), usize>) -> Result<Vector<F>> {
        let k = self.ring.nbase();
        let mut out = vector::zero(index.len(), k);
        for (j, p) in v.iter().enumerate() {
            for (m, c) in self.ring.pure_form(p) {
                let pos = index.get(&(j, m)).ok_or_else(|| AlgebraError::Malformed(format!("element is not homogeneous of degree {d}")))?;
                out[*pos] = out[*pos].add(&c);
            }
        }
        Ok(out)
    }

    pub fn coords(&self, v: &[Poly<F>], d: i64) -> Result<Vector<F>> {
        self.coords_in(v, d, &self.basis_index(d))
    }

    /// The element of `F0` given by basis element `(j, m)`.
    pub fn basis_element(&self, j: usize, m: &Mono) -> Vector<F> {
        let mut v = vector::zero(self.rank(), self.nvars());
        v[j] = Poly::monomial(m.clone(), F::one());
        v
    }

    fn compute_piece(&self, d: i64) -> Result<Subquotient<F>> {
        let ring = &self.ring;
        let k = ring.nbase();
        let n = ring.nvars();
        let index = self.basis_index(d);
        let size = index.len();
        let mut rels = Vec::new();
        for (r, &rd) in self.rels.iter().zip(&self.rel_degrees) {
            for mu in ring.pure_monomials(d - rd) {
                let v: Vector<F> = r.iter().map(|p| p.mul_mono(&mu, &F::one())).collect();
                let c = self.coords_in(&v, d, &index)?;
                if !vector::is_zero(&c) {
                    rels.push(c);
                }
            }
        }
        let base_mask: Vec<bool> = (0..n).map(|i| i < k).collect();
        for l in &ring.ideal().gens {
            if l.uses_only(&base_mask) {
                continue;
            }
            let w = ring.degree_of(l).expect("homogeneous ring relation");
            for (j, &t) in self.twists.iter().enumerate() {
                for mu in ring.pure_monomials(d - t - w) {
                    let mut v = vector::zero(self.rank(), n);
                    v[j] = l.mul_mono(&mu, &F::one());
                    let c = self.coords_in(&v, d, &index)?;
                    if !vector::is_zero(&c) && !rels.contains(&c) {
                        rels.push(c);
                    }
                }
            }
        }
        Ok(Subquotient::cokernel(size, k, rels))
    }

    /// Images of the pure basis of degree `d` under multiplication by `a`.
    pub fn act_on_basis(&self, a: &Poly<F>, d: i64) -> Result<Vec<Vector<F>>> {
        let w = match self.ring.degree_of(a) {
            Some(w) => w,
            None if a.is_zero() => 0,
            None => return Err(AlgebraError::Malformed("acting element is not homogeneous".into())),
        };
        let target = self.basis_index(d + w);
        let mut out = Vec::new();
        for (j, m) in self.basis(d) {
            let mut v = vector::zero(self.rank(), self.nvars());
            v[j] = a.mul_mono(&m, &F::one());
            out.push(self.coords_in(&v, d + w, &target)?);
        }
        Ok(out)
    }
}

impl<F: Field> GradedPieces<F> for GradedModule<F> {
    fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    fn piece(&self, d: i64) -> Result<Subquotient<F>> {
        if let Some(p) = self.cache.lock().unwrap().get(&d) {
            return Ok(p.clone());
        }
        let p = self.compute_piece(d)?;
        self.cache.lock().unwrap().insert(d, p.clone());
        Ok(p)
    }

    fn act(&self, a: &Poly<F>, d: i64) -> Result<Vec<Vector<F>>> {
        self.act_on_basis(a, d)
    }
}

/// Homogeneous degree-0 map of finitely presented modules, by generator images
/// (vectors of the target's `F0`).
#[derive(Clone)]
pub struct GradedHom<F: Field> {
    pub source: Arc<GradedModule<F>>,
    pub target: Arc<GradedModule<F>>,
    pub images: Vec<Vector<F>>,
}

impl<F: Field> GradedHom<F> {
    pub fn new(source: Arc<GradedModule<F>>, target: Arc<GradedModule<F>>, images: Vec<Vector<F>>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(AlgebraError::OrderMismatch("one image per generator required".into()));
        }
        for (j, v) in images.iter().enumerate() {
            if let Some(d) = vector_degree(&target.ring, &target.twists, v)? {
                if d != source.twists[j] {
                    return Err(AlgebraError::Malformed(format!("image of generator {j} has degree {d}, expected {}", source.twists[j])));
                }
            }
        }
        Ok(GradedHom { source, target, images })
    }

    pub fn identity(m: Arc<GradedModule<F>>) -> Self {
        let n = m.nvars();
        let images = (0..m.rank()).map(|j| vector::unit(m.rank(), n, j)).collect();
        GradedHom { source: m.clone(), target: m, images }
    }
}

impl<F: Field> GradedMorphism<F> for GradedHom<F> {
    fn at(&self, d: i64) -> Result<Vec<Vector<F>>> {
        let index = self.target.basis_index(d);
        let mut out = Vec::new();
        for (j, m) in self.source.basis(d) {
            let v: Vector<F> = self.images[j].iter().map(|p| p.mul_mono(&m, &F::one())).collect();
            out.push(self.target.coords_in(&v, d, &index)?);
        }
        Ok(out)
    }
}
