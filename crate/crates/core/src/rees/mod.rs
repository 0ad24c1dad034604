//! Rees and extended Rees algebras of an ideal, filtered modules and the
//! functors between filtered, graded and base-ring modules.

mod filtered;

use std::sync::Arc;

use crate::base::BaseRing;
use crate::error::Result;
use crate::field::Field;
use crate::graded::GradedRing;
use crate::groebner::{kernel_of_ring_map, Ideal, Limits};
use crate::poly::Poly;

pub use filtered::{
    filtration_wellformed, gr_f, i_n, i_n_module, is_n_stable, laurent_realization, rees_module, rho, tau, FilteredModule, FiltrationViolation, StabilityCertificate, ViolationKind, ZModule,
};

/// Base ring, ideal generators, and both Rees rings.
#[derive(Clone, Debug)]
pub struct ReesData<F: Field> {
    pub base: BaseRing<F>,
    pub gens: Vec<Poly<F>>,
    /// `R[y]/(Rees ideal)`, weights 0 on the base and 1 on `y`.
    pub rees: Arc<GradedRing<F>>,
    /// `R[y, u]/(extended kernel)`, with `u` of weight -1.
    pub ext: Arc<GradedRing<F>>,
    /// Generators of the kernel of `R[y] -> R[t]` (in the variables of `rees`).
    pub rees_ideal: Vec<Poly<F>>,
    /// Generators of the kernel of `R[y, u] -> R[t, t^-1]` (in the variables of `ext`).
    pub ext_ideal: Vec<Poly<F>>,
}

/// Kernel of `k[x, y] -> k[x, t]/J`, `y_i -> g_i t`.
pub fn rees_ideal<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], limits: Limits) -> Result<Ideal<F>> {
    let k = base.nvars();
    let ny = gens.len();
    // target k[x, t]
    let tn = k + 1;
    let lift: Vec<usize> = (0..k).collect();
    let t = Poly::var(tn, k);
    let rels: Vec<Poly<F>> = base.ideal().gens.iter().map(|g| g.rename(&lift, tn)).collect();
    let mut images: Vec<Poly<F>> = (0..k).map(|i| Poly::var(tn, i)).collect();
    for g in gens {
        images.push(g.rename(&lift, tn).mul(&t));
    }
    let ker = kernel_of_ring_map(k + ny, tn, &rels, &images, limits)?;
    ker.normalized(limits)
}

/// Kernel of `k[x, y, u] -> k[x, t, s]/(J, ts - 1)`, `y_i -> g_i t`, `u -> s`.
pub fn ext_rees_ideal<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], limits: Limits) -> Result<Ideal<F>> {
    let k = base.nvars();
    let ny = gens.len();
    let tn = k + 2;
    let lift: Vec<usize> = (0..k).collect();
    let t = Poly::var(tn, k);
    let s = Poly::var(tn, k + 1);
    let mut rels: Vec<Poly<F>> = base.ideal().gens.iter().map(|g| g.rename(&lift, tn)).collect();
    rels.push(t.mul(&s).sub(&Poly::one(tn)));
    let mut images: Vec<Poly<F>> = (0..k).map(|i| Poly::var(tn, i)).collect();
    for g in gens {
        images.push(g.rename(&lift, tn).mul(&t));
    }
    images.push(s);
    let ker = kernel_of_ring_map(k + ny + 1, tn, &rels, &images, limits)?;
    ker.normalized(limits)
}

/// Rees algebra presentation.
pub fn rees_presentation<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], limits: Limits) -> Result<Arc<GradedRing<F>>> {
    let ker = rees_ideal(base, gens, limits)?;
    Ok(Arc::new(GradedRing::new(base.clone(), gens.to_vec(), ker.gens, false, true)?))
}

/// Both presentations together.
pub fn rees_data<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], limits: Limits) -> Result<ReesData<F>> {
    let gens: Vec<Poly<F>> = gens.iter().map(|g| base.reduce(g)).collect();
    let rk = rees_ideal(base, &gens, limits)?;
    let ek = ext_rees_ideal(base, &gens, limits)?;
    rees_data_from_kernels(base, &gens, rk.gens, ek.gens)
}

/// Assemble [`ReesData`] from kernels computed earlier (by [`rees_ideal`]
/// and [`ext_rees_ideal`] on the same generators).
pub fn rees_data_from_kernels<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], rees_ideal: Vec<Poly<F>>, ext_ideal: Vec<Poly<F>>) -> Result<ReesData<F>> {
    let gens: Vec<Poly<F>> = gens.iter().map(|g| base.reduce(g)).collect();
    let k = base.nvars();
    let ny = gens.len();
    let rees = Arc::new(GradedRing::new(base.clone(), gens.clone(), rees_ideal.clone(), false, true)?);
    // the Rees generators are included explicitly: piece bookkeeping relies on them
    let to_ext: Vec<usize> = (0..k + ny).collect();
    let mut rels = ext_ideal.clone();
    for g in &rees_ideal {
        let h = g.rename(&to_ext, k + ny + 1);
        if !rels.contains(&h) {
            rels.push(h);
        }
    }
    let ext = Arc::new(GradedRing::new(base.clone(), gens.clone(), rels, true, true)?);
    Ok(ReesData { base: base.clone(), gens, rees, ext, rees_ideal, ext_ideal })
}

/// Extended Rees algebra presentation.
pub fn ext_rees_presentation<F: Field>(base: &BaseRing<F>, gens: &[Poly<F>], limits: Limits) -> Result<Arc<GradedRing<F>>> {
    Ok(rees_data(base, gens, limits)?.ext)
}

/// `Ã / u Ã`, the associated graded ring of the `I`-adic filtration.
pub fn assoc_graded<F: Field>(ext: &GradedRing<F>) -> Result<Arc<GradedRing<F>>> {
    let u = ext.var(ext.u());
    Ok(Arc::new(ext.with_extra_relations(vec![u], false)?))
}

/// Setting `u = 1` in the extended Rees algebra recovers `R`: the
/// elimination ideal of `L + (u - 1)` onto the base variables equals `J`.
pub fn u_equals_one_recovers_base<F: Field>(ext: &GradedRing<F>, limits: Limits) -> Result<bool> {
    let n = ext.nvars();
    let k = ext.nbase();
    let u = ext.var(ext.u()).sub(&Poly::one(n));
    let with = ext.ideal().sum(&Ideal::new(n, vec![u]));
    let elim: Vec<usize> = (k..n).collect();
    let e = with.eliminate(&elim, limits)?;
    let proj: Vec<usize> = (0..n).map(|i| i.min(k.saturating_sub(1))).collect();
    let down = Ideal::new(k, e.gens.iter().map(|g| g.rename(&proj, k)).collect());
    down.same_as(ext.base.ideal(), limits)
}

#[cfg(test)]
mod tests;
