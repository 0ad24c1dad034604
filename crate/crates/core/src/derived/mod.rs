//! Bounded complexes over the extended Rees algebra as a model of the
//! filtered derived category: cones, hyper-Ext, the triangle of the unit
//! map, torsion levels, and semiorthogonality certificates.

mod complex;
mod ext;
mod obar;
mod semiorth;

pub use complex::{cone, cone_euler_holds, BaseComplex, ChainMap, ComplexOfGradedModules, Differential, Term};
pub use ext::{base_hom, base_hom_dim, hyper_ext, module_ext, ExtCell};
pub use obar::{gr_complex, obar_complex, rho_n_certificate, torsion_level, FreeBaseComplex, Obar, RhoCertificate, TorsionLevel, TORSION_RUN};
pub use semiorth::{adjunction_dims, semiorth_check, AdjunctionCheck, Claim, Family, FamilyObject, SemiorthCell, SemiorthCertificate, SemiorthWindows, Verdict};

#[cfg(test)]
mod tests;
