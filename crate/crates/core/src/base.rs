//! Finitely presented modules over a base ring `R = k[x]/J`.
//!
//! A module is a subquotient of a free module `R^rank`: the span of `gens`
//! modulo the span of `rels` (and `J R^rank`, always implicit). Maps between
//! subquotients are given by images of generators.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{GroebnerBasis, Ideal, Lifter, Limits};
use crate::mono::TermOrder;
use crate::parse::parse_poly;
use crate::poly::{vector, Poly, Vector};

/// Quotient ring `k[x]/J` with a cached reduced basis of `J`.
#[derive(Clone)]
pub struct BaseRing<F: Field> {
    names: Vec<String>,
    ideal: Ideal<F>,
    gb: GroebnerBasis<F>,
    pub limits: Limits,
}

impl<F: Field> std::fmt::Debug for BaseRing<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BaseRing({:?} / {:?})", self.names, self.ideal.gens)
    }
}

impl<F: Field> BaseRing<F> {
    pub fn new(names: Vec<String>, rels: Vec<Poly<F>>, limits: Limits) -> Result<Self> {
        let n = names.len();
        let ideal = Ideal::new(n, rels).normalized(limits)?;
        let gb = ideal.gb(limits)?;
        Ok(BaseRing { names, ideal, gb, limits })
    }

    pub fn polynomial(names: &[&str], limits: Limits) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new(), limits).expect("polynomial ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Reduced basis of the defining ideal.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn parse(&self, s: &str) -> Result<Poly<F>> {
        parse_poly(s, &self.names)
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::var(self.nvars(), i)
    }

    pub fn one(&self) -> Poly<F> {
        Poly::one(self.nvars())
    }

    pub fn zero(&self) -> Poly<F> {
        Poly::zero(self.nvars())
    }

    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        self.gb.reduce_poly(p).expect("reduction by a fixed basis")
    }

    pub fn reduce_vector(&self, v: &[Poly<F>]) -> Vector<F> {
        v.iter().map(|p| self.reduce(p)).collect()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_everything()
    }

    /// `J e_k` for every generator of `J` and every `k < rank`.
    pub fn rel_vectors(&self, rank: usize) -> Vec<Vector<F>> {
        let n = self.nvars();
        let mut out = Vec::new();
        for k in 0..rank {
            for g in &self.ideal.gens {
                let mut v = vector::zero(rank, n);
                v[k] = g.clone();
                out.push(v);
            }
        }
        out
    }

    /// `k`-dimension of `R`, when finite.
    pub fn dimension(&self) -> Option<usize> {
        self.gb.quotient_dimension()
    }

    pub fn display(&self, p: &Poly<F>) -> String {
        p.display(&self.names).to_string()
    }
}

/// The module `(span(gens) + span(rels) + J F) / (span(rels) + J F)` in `F = R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient<F: Field> {
    pub rank: usize,
    pub gens: Vec<Vector<F>>,
    pub rels: Vec<Vector<F>>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(rank: usize, gens: Vec<Vector<F>>, rels: Vec<Vector<F>>) -> Self {
        Subquotient { rank, gens, rels }
    }

    pub fn free(rank: usize, nvars: usize) -> Self {
        Subquotient { rank, gens: (0..rank).map(|k| vector::unit(rank, nvars, k)).collect(), rels: Vec::new() }
    }

    /// `R^rank / span(rels)`.
    pub fn cokernel(rank: usize, nvars: usize, rels: Vec<Vector<F>>) -> Self {
        Subquotient { rank, gens: (0..rank).map(|k| vector::unit(rank, nvars, k)).collect(), rels }
    }

    pub fn zero() -> Self {
        Subquotient { rank: 0, gens: Vec::new(), rels: Vec::new() }
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    fn all_rels(&self, ring: &BaseRing<F>) -> Vec<Vector<F>> {
        let mut r: Vec<Vector<F>> = self.rels.iter().filter(|v| !vector::is_zero(v)).cloned().collect();
        r.extend(ring.rel_vectors(self.rank));
        r
    }

    pub fn rel_basis(&self, ring: &BaseRing<F>) -> Result<GroebnerBasis<F>> {
        GroebnerBasis::new(&self.all_rels(ring), self.rank, ring.nvars(), &TermOrder::default(), ring.limits)
    }

    pub fn is_zero(&self, ring: &BaseRing<F>) -> Result<bool> {
        if self.gens.iter().all(|g| vector::is_zero(g)) {
            return Ok(true);
        }
        let gb = self.rel_basis(ring)?;
        for g in &self.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lifter expressing ambient vectors through the generators modulo relations.
    pub fn lifter(&self, ring: &BaseRing<F>) -> Result<Lifter<F>> {
        Lifter::new(&self.gens, &self.all_rels(ring), self.rank, ring.nvars(), ring.limits)
    }

    /// Relations among the generators: the module is `R^ngens / presentation`.
    pub fn presentation(&self, ring: &BaseRing<F>) -> Result<Vec<Vector<F>>> {
        if self.gens.is_empty() {
            return Ok(Vec::new());
        }
        let syz = self.lifter(ring)?.syzygies();
        Ok(syz.into_iter().map(|v| ring.reduce_vector(&v)).filter(|v| !vector::is_zero(v)).collect())
    }

    /// Same module as a cokernel of a matrix on its generators.
    pub fn to_cokernel(&self, ring: &BaseRing<F>) -> Result<Subquotient<F>> {
        Ok(Subquotient::cokernel(self.ngens(), ring.nvars(), self.presentation(ring)?))
    }

    /// `k`-dimension, or `None` when infinite.
    pub fn kdim(&self, ring: &BaseRing<F>) -> Result<Option<usize>> {
        if self.gens.is_empty() {
            return Ok(Some(0));
        }
        let mut rels = self.presentation(ring)?;
        rels.extend(ring.rel_vectors(self.ngens()));
        let gb = GroebnerBasis::new(&rels, self.ngens(), ring.nvars(), &TermOrder::default(), ring.limits)?;
        Ok(gb.quotient_dimension())
    }

    /// Greedily drop generators that lie in the span of the others plus relations.
    pub fn prune(&self, ring: &BaseRing<F>) -> Result<Subquotient<F>> {
        let mut gens: Vec<Vector<F>> = self.gens.clone();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            let mut span: Vec<Vector<F>> = gens.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            span.extend(self.all_rels(ring));
            let gb = GroebnerBasis::new(&span, self.rank, ring.nvars(), &TermOrder::default(), ring.limits)?;
            if gb.contains(&gens[i])? {
                gens.remove(i);
            }
        }
        Ok(Subquotient { rank: self.rank, gens, rels: self.rels.clone() })
    }

    /// Number of generators after greedy pruning.
    pub fn pruned_ngens(&self, ring: &BaseRing<F>) -> Result<usize> {
        Ok(self.prune(ring)?.ngens())
    }

    /// Coordinates of an ambient vector with respect to the generators.
    pub fn coords(&self, ring: &BaseRing<F>, v: &[Poly<F>]) -> Result<Option<Vec<Poly<F>>>> {
        self.lifter(ring)?.lift(v)
    }

    pub fn direct_sum(&self, other: &Subquotient<F>, nvars: usize) -> Subquotient<F> {
        let r = self.rank + other.rank;
        let left = |v: &Vector<F>| vector::concat(v, &vector::zero(other.rank, nvars));
        let right = |v: &Vector<F>| vector::concat(&vector::zero(self.rank, nvars), v);
        let mut gens: Vec<Vector<F>> = self.gens.iter().map(left).collect();
        gens.extend(other.gens.iter().map(right));
        let mut rels: Vec<Vector<F>> = self.rels.iter().map(left).collect();
        rels.extend(other.rels.iter().map(right));
        Subquotient { rank: r, gens, rels }
    }

    /// Same generators span the same submodule over the same relations.
    pub fn same_as(&self, other: &Subquotient<F>, ring: &BaseRing<F>) -> Result<bool> {
        if self.rank != other.rank {
            return Ok(false);
        }
        let ra = self.rel_basis(ring)?;
        let rb = other.rel_basis(ring)?;
        if ra.basis() != rb.basis() {
            return Ok(false);
        }
        let mut a = self.gens.clone();
        a.extend(self.all_rels(ring));
        let mut b = other.gens.clone();
        b.extend(other.all_rels(ring));
        crate::groebner::same_submodule(&a, &b, self.rank, ring.nvars(), ring.limits)
    }
}

/// `sum c_k v_k` for generator images `v_k`.
pub fn combine<F: Field>(coeffs: &[Poly<F>], images: &[Vector<F>], rank: usize, nvars: usize) -> Vector<F> {
    vector::combine(coeffs, images, rank, nvars)
}

/// Kernel of the map `src -> tgt` sending generator `k` to `images[k]`,
/// as a subquotient of the ambient module of `src`.
pub fn kernel<F: Field>(ring: &BaseRing<F>, src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<Subquotient<F>> {
    check_map(src, tgt, images)?;
    let n = ring.nvars();
    if src.gens.is_empty() {
        return Ok(Subquotient::new(src.rank, Vec::new(), src.rels.clone()));
    }
    let syz = Lifter::new(images, &tgt.all_rels(ring), tgt.rank, n, ring.limits)?.syzygies();
    let gens: Vec<Vector<F>> = syz.into_iter().map(|c| ring.reduce_vector(&vector::combine(&c, &src.gens, src.rank, n))).filter(|v| !vector::is_zero(v)).collect();
    Ok(Subquotient::new(src.rank, gens, src.rels.clone()))
}

/// Image of the map as a subquotient of the ambient module of `tgt`.
pub fn image<F: Field>(src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<Subquotient<F>> {
    check_map(src, tgt, images)?;
    Ok(Subquotient::new(tgt.rank, images.to_vec(), tgt.rels.clone()))
}

/// Homology `ker(g) / im(f)` of `A --f--> B --g--> C`, inside the ambient of `B`.
pub fn homology<F: Field>(ring: &BaseRing<F>, a: &Subquotient<F>, b: &Subquotient<F>, c: &Subquotient<F>, f: &[Vector<F>], g: &[Vector<F>]) -> Result<Subquotient<F>> {
    check_map(a, b, f)?;
    let k = kernel(ring, b, c, g)?;
    let mut rels = b.rels.clone();
    rels.extend(f.iter().cloned());
    Ok(Subquotient::new(b.rank, k.gens, rels))
}

pub fn is_injective<F: Field>(ring: &BaseRing<F>, src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<bool> {
    kernel(ring, src, tgt, images)?.is_zero(ring)
}

pub fn is_surjective<F: Field>(ring: &BaseRing<F>, src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<bool> {
    check_map(src, tgt, images)?;
    let mut span = images.to_vec();
    span.extend(tgt.all_rels(ring));
    let gb = GroebnerBasis::new(&span, tgt.rank, ring.nvars(), &TermOrder::default(), ring.limits)?;
    for b in &tgt.gens {
        if !gb.contains(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_iso<F: Field>(ring: &BaseRing<F>, src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<bool> {
    Ok(is_surjective(ring, src, tgt, images)? && is_injective(ring, src, tgt, images)?)
}

/// Generator images of the inverse of an isomorphism.
pub fn inverse<F: Field>(ring: &BaseRing<F>, src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
    let n = ring.nvars();
    let l = Lifter::new(images, &tgt.all_rels(ring), tgt.rank, n, ring.limits)?;
    let mut out = Vec::with_capacity(tgt.ngens());
    for b in &tgt.gens {
        let c = l.lift(b)?.ok_or_else(|| AlgebraError::Malformed("map is not surjective".into()))?;
        out.push(ring.reduce_vector(&vector::combine(&c, &src.gens, src.rank, n)));
    }
    Ok(out)
}

/// Generator images of `g . f` where `f: A -> B`, `g: B -> C`.
pub fn compose<F: Field>(ring: &BaseRing<F>, b: &Subquotient<F>, c_rank: usize, f: &[Vector<F>], g: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
    let n = ring.nvars();
    if f.is_empty() {
        return Ok(Vec::new());
    }
    let l = b.lifter(ring)?;
    let mut out = Vec::with_capacity(f.len());
    for v in f {
        let c = l.lift(v)?.ok_or_else(|| AlgebraError::Malformed("image outside target module".into()))?;
        out.push(ring.reduce_vector(&vector::combine(&c, g, c_rank, n)));
    }
    Ok(out)
}

/// The map is well defined on generators in the sense of shapes.
fn check_map<F: Field>(src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<()> {
    if images.len() != src.ngens() || images.iter().any(|v| v.len() != tgt.rank) {
        return Err(AlgebraError::OrderMismatch(format!("map with {} images for {} generators into rank {}", images.len(), src.ngens(), tgt.rank)));
    }
    Ok(())
}

/// Relations of `src` are sent into relations of `tgt` (the map is well defined).
pub fn is_well_defined<F: Field>(ring: &BaseRing<F>, src: &Subquotient<F>, tgt: &Subquotient<F>, images: &[Vector<F>]) -> Result<bool> {
    let n = ring.nvars();
    let rb = tgt.rel_basis(ring)?;
    for r in src.presentation(ring)? {
        let v = vector::combine(&r, images, tgt.rank, n);
        if !rb.contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn ring(names: &[&str], rels: &[&str]) -> BaseRing<Rational> {
        let n: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_poly(r, &n).unwrap()).collect();
        BaseRing::new(n, rels, Limits::default()).unwrap()
    }

    #[test]
    fn ideal_as_module_is_rank_one_presented() {
        let r = ring(&["x", "y"], &[]);
        let m = Subquotient::new(1, vec![vec![r.var(0)], vec![r.var(1)]], vec![]);
        let pres = m.presentation(&r).unwrap();
        assert_eq!(pres.len(), 1);
        assert_eq!(m.kdim(&r).unwrap(), None);
        let q = Subquotient::cokernel(1, 2, vec![vec![r.var(0)], vec![r.var(1)]]);
        assert_eq!(q.kdim(&r).unwrap(), Some(1));
    }

    #[test]
    fn nilpotent_module_dimensions() {
        let r = ring(&["x"], &["x^3"]);
        let m = Subquotient::new(1, vec![vec![r.var(0)]], vec![]);
        assert_eq!(m.kdim(&r).unwrap(), Some(2));
        let x3 = Subquotient::new(1, vec![vec![r.parse("x^3").unwrap()]], vec![]);
        assert!(x3.is_zero(&r).unwrap());
    }

    #[test]
    fn multiplication_by_x_kernel_and_cokernel() {
        let r = ring(&["x"], &["x^2"]);
        let free = Subquotient::free(1, 1);
        let img = vec![vec![r.var(0)]];
        let k = kernel(&r, &free, &free, &img).unwrap();
        assert_eq!(k.kdim(&r).unwrap(), Some(1));
        let h = homology(&r, &free, &free, &free, &img, &img).unwrap();
        assert!(h.is_zero(&r).unwrap());
        assert!(!is_injective(&r, &free, &free, &img).unwrap());
    }

    #[test]
    fn iso_and_inverse() {
        let r = ring(&["x", "y"], &[]);
        // R -> (x) ⊂ R, 1 |-> x
        let src = Subquotient::free(1, 2);
        let tgt = Subquotient::new(1, vec![vec![r.var(0)]], vec![]);
        let img = vec![vec![r.var(0)]];
        assert!(is_iso(&r, &src, &tgt, &img).unwrap());
        let inv = inverse(&r, &src, &tgt, &img).unwrap();
        assert_eq!(inv, vec![vec![r.one()]]);
    }
}
