use crate::error::Result;
use crate::field::Field;
use crate::mono::{MonoOrder, TermOrder};
use crate::poly::{Poly, Vector};

use super::{GroebnerBasis, Limits};

/// Ideal of `k[x_0..x_{n-1}]` given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal<F: Field> {
    pub nvars: usize,
    pub gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, gens: Vec<Poly<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, gens }
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal { nvars, gens: vec![Poly::one(nvars)] }
    }

    pub fn gb(&self, limits: Limits) -> Result<GroebnerBasis<F>> {
        GroebnerBasis::ideal(&self.gens, self.nvars, &MonoOrder::DegRevLex, limits)
    }

    /// Reduced degrevlex basis as a new ideal; canonical, so usable for equality.
    pub fn normalized(&self, limits: Limits) -> Result<Ideal<F>> {
        Ok(Ideal { nvars: self.nvars, gens: self.gb(limits)?.polys() })
    }

    pub fn is_unit(&self, limits: Limits) -> Result<bool> {
        Ok(self.gb(limits)?.is_everything())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, p: &Poly<F>, limits: Limits) -> Result<bool> {
        Ok(self.gb(limits)?.reduce_poly(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>, limits: Limits) -> Result<bool> {
        let gb = self.gb(limits)?;
        for g in &other.gens {
            if !gb.reduce_poly(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Ideal<F>, limits: Limits) -> Result<bool> {
        Ok(self.normalized(limits)? == other.normalized(limits)?)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.nvars, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(self.nvars, gens)
    }

    /// `I^n` modulo `modulus`, as a reduced basis of `I^n + modulus` with
    /// generators of the modulus removed again when they are not needed.
    /// The returned generators are the n-fold products reduced modulo the
    /// modulus, deduplicated; the zero ideal is returned when all vanish.
    pub fn power(&self, n: u32, modulus: &Ideal<F>, limits: Limits) -> Result<Ideal<F>> {
        let mut cur = Ideal::unit(self.nvars);
        let mgb = modulus.gb(limits)?;
        for _ in 0..n {
            let prod = cur.product(self);
            let mut gens = Vec::new();
            for g in prod.gens {
                let r = mgb.reduce_poly(&g)?;
                if !r.is_zero() && !gens.contains(&r) {
                    gens.push(r);
                }
            }
            cur = Ideal::new(self.nvars, gens);
            cur = cur.minimalize(modulus, limits)?;
        }
        Ok(cur)
    }

    /// Drop generators lying in the ideal generated by the others plus `modulus`.
    pub fn minimalize(&self, modulus: &Ideal<F>, limits: Limits) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            let mut others: Vec<Poly<F>> = gens.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            others.extend(modulus.gens.iter().cloned());
            let gb = GroebnerBasis::ideal(&others, self.nvars, &MonoOrder::DegRevLex, limits)?;
            if gb.reduce_poly(&gens[i])?.is_zero() {
                gens.remove(i);
            }
        }
        Ok(Ideal::new(self.nvars, gens))
    }

    /// `I ∩ k[remaining variables]`; indices are kept (no renaming).
    pub fn eliminate(&self, vars: &[usize], limits: Limits) -> Result<Ideal<F>> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let order = MonoOrder::elimination(self.nvars, vars);
        let gb = GroebnerBasis::ideal(&self.gens, self.nvars, &order, limits)?;
        let mask: Vec<bool> = (0..self.nvars).map(|i| !vars.contains(&i)).collect();
        let gens = gb.polys().into_iter().filter(|p| p.uses_only(&mask)).collect();
        Ok(Ideal::new(self.nvars, gens))
    }

    /// Rename variables into a ring with `nvars` variables: old `i` becomes `map[i]`.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Ideal<F> {
        Ideal::new(nvars, self.gens.iter().map(|g| g.rename(map, nvars)).collect())
    }

    /// Ideal quotient `(I : J)`.
    pub fn quotient(&self, j: &Ideal<F>, limits: Limits) -> Result<Ideal<F>> {
        let gens: Vec<Vector<F>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        let mut acc: Option<Vec<Vector<F>>> = None;
        for f in &j.gens {
            let q = super::module_quotient(&gens, f, 1, self.nvars, limits)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => super::intersect(&prev, &q, 1, self.nvars, limits)?,
            });
        }
        Ok(match acc {
            None => Ideal::unit(self.nvars),
            Some(v) => Ideal::new(self.nvars, v.into_iter().map(|mut x| x.swap_remove(0)).collect()),
        })
    }

    /// Saturation `(I : J^inf)`.
    pub fn saturate(&self, j: &Ideal<F>, max_steps: usize, limits: Limits) -> Result<Ideal<F>> {
        let gens: Vec<Vector<F>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        let sat = super::saturate(&gens, &j.gens, 1, self.nvars, max_steps, limits)?;
        Ok(Ideal::new(self.nvars, sat.into_iter().map(|mut x| x.swap_remove(0)).collect()))
    }

    pub fn intersect(&self, other: &Ideal<F>, limits: Limits) -> Result<Ideal<F>> {
        let a: Vec<Vector<F>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        let b: Vec<Vector<F>> = other.gens.iter().map(|g| vec![g.clone()]).collect();
        let v = super::intersect(&a, &b, 1, self.nvars, limits)?;
        Ok(Ideal::new(self.nvars, v.into_iter().map(|mut x| x.swap_remove(0)).collect()))
    }

    /// The grading-compatible basis under a caller-chosen order.
    pub fn gb_with(&self, order: &TermOrder, limits: Limits) -> Result<GroebnerBasis<F>> {
        let vs: Vec<Vector<F>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        GroebnerBasis::new(&vs, 1, self.nvars, order, limits)
    }
}

/// Kernel of `k[s_0..s_{m-1}] -> k[t_0..t_{n-1}]/target_rels`, `s_i -> images[i]`.
///
/// The graph ideal lives in `k[t, s]` (target variables first); the target
/// variables are eliminated and the result is renamed into the source ring.
/// Laurent targets are modelled by including `t*s - 1` among `target_rels`.
pub fn kernel_of_ring_map<F: Field>(source_nvars: usize, target_nvars: usize, target_rels: &[Poly<F>], images: &[Poly<F>], limits: Limits) -> Result<Ideal<F>> {
    assert_eq!(images.len(), source_nvars);
    let total = target_nvars + source_nvars;
    let lift: Vec<usize> = (0..target_nvars).collect();
    let mut gens: Vec<Poly<F>> = target_rels.iter().map(|r| r.rename(&lift, total)).collect();
    for (i, im) in images.iter().enumerate() {
        gens.push(Poly::var(total, target_nvars + i).sub(&im.rename(&lift, total)));
    }
    let target_vars: Vec<usize> = (0..target_nvars).collect();
    let elim = Ideal::new(total, gens).eliminate(&target_vars, limits)?;
    // project onto the source variables
    let proj: Vec<usize> = (0..total).map(|i| i.saturating_sub(target_nvars)).collect();
    Ok(Ideal::new(source_nvars, elim.gens.iter().map(|g| g.rename(&proj, source_nvars)).collect()))
}
