use std::sync::Arc;

use super::*;
use crate::base::BaseRing;
use crate::graded::{DegreeWindow, GradedHom, GradedModule};
use crate::rees::{i_n_module, rees_data, ReesData, ZModule};
use crate::{Limits, Poly, Rational};

type Q = Rational;

const STEPS: usize = 6;

fn lim() -> Limits {
    Limits::default()
}

fn setup(names: &[&str], rels: &[&str], ideal: &[&str]) -> ReesData<Q> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let probe = BaseRing::<Q>::new(names.clone(), Vec::new(), lim()).unwrap();
    let rels = rels.iter().map(|r| probe.parse(r).unwrap()).collect();
    let base = BaseRing::new(names, rels, lim()).unwrap();
    let gens: Vec<Poly<Q>> = ideal.iter().map(|g| base.parse(g).unwrap()).collect();
    rees_data(&base, &gens, lim()).unwrap()
}

fn ring_complex(d: &ReesData<Q>) -> ComplexOfGradedModules<Q> {
    ComplexOfGradedModules::single(Arc::new(GradedModule::ring_module(d.ext.clone())), 0).flag_filtered(DegreeWindow::new(-1, 0)).unwrap()
}

fn i_n_complex(d: &ReesData<Q>, n: i64) -> ComplexOfGradedModules<Q> {
    let k = ZModule::residue_field(&d.ext).unwrap();
    ComplexOfGradedModules::single(Arc::new(i_n_module(&k, n, &d.ext).unwrap()), 0).flag_filtered(DegreeWindow::new(-1, n.max(0))).unwrap()
}

fn dims(cells: &[ExtCell<Q>]) -> Vec<Option<usize>> {
    cells.iter().map(|c| c.kdim).collect()
}

#[test]
fn cone_of_identity_is_exact() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let x = ring_complex(&d);
    let c = cone(&ChainMap::identity(&x)).unwrap();
    let w = DegreeWindow::new(-2, 3);
    assert!(c.check_d_squared(w).unwrap());
    assert!(c.is_exact(w).unwrap());
    assert!(cone_euler_holds(&ChainMap::identity(&x), w).unwrap());
}

#[test]
fn cone_from_zero_is_the_target() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let zero = ComplexOfGradedModules::zero(d.ext.clone());
    let m = ring_complex(&d);
    let f = ChainMap::new(zero, m.clone(), Vec::new()).unwrap();
    let c = cone(&f).unwrap();
    let base = &d.base;
    for deg in -1..=3 {
        let h = c.homology(0, deg).unwrap().kdim(base).unwrap();
        let expect = m.slice(deg).unwrap().term(0).kdim(base).unwrap();
        assert_eq!(h, expect, "degree {deg}");
    }
    // I-adic pieces of Q[x]/(x^3): 3, 2, 1, 0 from degree 0 on
    let chi = c.euler_characteristic(DegreeWindow::new(0, 3)).unwrap();
    assert_eq!(chi, vec![Some(3), Some(2), Some(1), Some(0)]);
}

#[test]
fn cone_of_u_is_the_associated_graded() {
    let d = setup(&["x"], &[], &["x"]);
    let src = Arc::new(GradedModule::ring_module(d.ext.clone()));
    let tgt = Arc::new(GradedModule::ring_module(d.ext.clone()).twist(-1));
    let u = d.ext.var(d.ext.u());
    let h = GradedHom::new(src.clone(), tgt.clone(), vec![vec![u]]).unwrap();
    let x = ComplexOfGradedModules::single(src, 0);
    let y = ComplexOfGradedModules::single(tgt, 0);
    let f = ChainMap::new(x, y, vec![Differential::Hom(h)]).unwrap();
    let w = DegreeWindow::new(-3, 2);
    assert!(f.commutes(w).unwrap());
    let c = cone(&f).unwrap();
    assert!(c.check_d_squared(w).unwrap());
    let base = &d.base;
    for deg in w.degrees() {
        // H^0 in degree d is Ã_{d-1} / u Ã_d = I^{d-1} / I^d: one-dimensional for d >= 1
        let h0 = c.homology(0, deg).unwrap();
        let expect = if deg >= 1 { 1 } else { 0 };
        assert_eq!(h0.kdim(base).unwrap(), Some(expect), "degree {deg}");
        assert!(c.homology(-1, deg).unwrap().is_zero(base).unwrap());
    }
}

#[test]
fn rho_is_fully_faithful_on_the_ring() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let r = ring_complex(&d);
    let cells = hyper_ext(&r, &r, 0..=2, DegreeWindow::new(0, 0), lim()).unwrap();
    let base = &d.base;
    // Ext^0_0 = R: a free module of rank one over the base
    assert_eq!(cells[0].kdim, None);
    assert_eq!(cells[0].module.prune(base).unwrap().ngens(), 1);
    assert!(cells[1].is_zero && cells[2].is_zero);
}

#[test]
fn torsion_source_against_stable_target() {
    let d = setup(&["x"], &[], &["x"]);
    let cells = hyper_ext(&i_n_complex(&d, 0), &ring_complex(&d), 0..=1, DegreeWindow::new(0, 0), lim()).unwrap();
    assert_eq!(dims(&cells), vec![Some(0), Some(0)]);
    // Ext^1(i_0 k, Ã)_d = (Ã / y Ã)_{d+1}, nonzero for d <= -1
    let e1 = hyper_ext(&i_n_complex(&d, 0), &ring_complex(&d), 1..=1, DegreeWindow::new(-2, 0), lim()).unwrap();
    assert_eq!(dims(&e1), vec![Some(1), Some(1), Some(0)]);
}

#[test]
fn self_ext_contains_the_identity() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    for n in 0..3 {
        let x = i_n_complex(&d, n);
        let cells = hyper_ext(&x, &x, 0..=0, DegreeWindow::new(0, 0), lim()).unwrap();
        assert!(!cells[0].is_zero, "i_{n}");
    }
}

/// `[Ã(-1) --y--> Ã]` in degrees -1, 0 resolves `i_0(k)` over `Q[x]`, so
/// its hyper-Ext must equal the module Ext.
#[test]
fn two_term_complex_agrees_with_its_cokernel() {
    let d = setup(&["x"], &[], &["x"]);
    let ext = &d.ext;
    let src = Arc::new(GradedModule::free(ext.clone(), vec![1]));
    let tgt = Arc::new(GradedModule::ring_module(ext.clone()));
    let y = ext.var(ext.y(0));
    let h = GradedHom::new(src.clone(), tgt.clone(), vec![vec![y]]).unwrap();
    let x = ComplexOfGradedModules::new(ext.clone(), -1, vec![Term::Module(src), Term::Module(tgt)], vec![Differential::Hom(h)]).unwrap().flag_filtered(DegreeWindow::new(-1, 0)).unwrap();
    let w = DegreeWindow::new(-1, 1);
    assert!(x.check_d_squared(w).unwrap());
    let i0 = i_n_complex(&d, 0);
    for target in [ring_complex(&d), i_n_complex(&d, 0), i_n_complex(&d, 1)] {
        let a = hyper_ext(&x, &target, 0..=2, w, lim()).unwrap();
        let b = hyper_ext(&i0, &target, 0..=2, w, lim()).unwrap();
        assert_eq!(dims(&a), dims(&b));
    }
}

#[test]
fn base_hom_dimensions() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let base = &d.base;
    let k = ZModule::residue_field(&d.ext).unwrap().module;
    let r = crate::Subquotient::free(1, 1);
    assert_eq!(base_hom_dim(base, &k, &k).unwrap(), Some(1));
    assert_eq!(base_hom_dim(base, &r, &k).unwrap(), Some(1));
    // Hom(R, R) = R has dimension 3, Hom(k, R) = socle is one-dimensional
    assert_eq!(base_hom_dim(base, &r, &r).unwrap(), Some(3));
    assert_eq!(base_hom_dim(base, &k, &r).unwrap(), Some(1));
}

#[test]
fn torsion_levels_of_simple_objects() {
    let d = setup(&["x"], &[], &["x"]);
    for n in 0..3 {
        assert_eq!(torsion_level(&i_n_complex(&d, n), 5).unwrap().level, Some(n + 1), "i_{n}");
    }
    assert_eq!(torsion_level(&ring_complex(&d), 5).unwrap().level, None);
    assert!(torsion_level(&ComplexOfGradedModules::single(Arc::new(GradedModule::ring_module(d.ext.clone())), 0), 2).is_err());
}

#[test]
fn nilpotent_obar_has_level_three() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let o = obar_complex(&d, 6, STEPS).unwrap();
    assert!(o.obar.check_d_squared(DegreeWindow::new(-1, 4)).unwrap());
    assert_eq!(o.level(), Some(3));
    assert_eq!(o.cohomology_onset, Some(3));
    let e = FreeBaseComplex { start: 0, ranks: vec![2] };
    assert!(!rho_n_certificate(&o, &e, 2).unwrap().pass);
    assert!(rho_n_certificate(&o, &e, 3).unwrap().pass);
}

#[test]
fn plane_obar_is_exact() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let o = obar_complex(&d, 3, STEPS).unwrap();
    assert!(o.unit.commutes(DegreeWindow::new(-1, 3)).unwrap());
    assert!(o.obar.is_exact(DegreeWindow::new(-2, 4)).unwrap());
    assert_eq!(o.level(), Some(0));
    let e = FreeBaseComplex { start: -1, ranks: vec![1, 3] };
    assert!(rho_n_certificate(&o, &e, 0).unwrap().pass);
}

fn windows() -> SemiorthWindows {
    SemiorthWindows { k_lo: 0, k_hi: 2, degrees: DegreeWindow::new(0, 0) }
}

#[test]
fn nilpotent_stratification_is_semiorthogonal() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let k = ZModule::residue_field(&d.ext).unwrap();
    let families: Vec<Family<Q>> = (0..3).map(|n| Family { name: format!("i{n}"), objects: vec![FamilyObject::i_n(format!("i{n}(k)"), &k, n, &d.ext).unwrap()] }).collect();
    let cert = semiorth_check(&families, Claim::Semiorthogonal, &windows(), lim()).unwrap();
    assert!(cert.pass, "{:?}", cert.cells);
    assert_eq!(cert.cells.len(), 3 * 3);
    let crossed = cert.cells.iter().filter(|c| c.adjunction.is_some()).count();
    assert_eq!(crossed, 3);
    // the other direction does not vanish: Hom(i_0 k, i_1 k) contains the map induced by u
    let both = semiorth_check(&families, Claim::Orthogonal, &windows(), lim()).unwrap();
    assert!(!both.pass);
}

#[test]
fn empty_family_passes() {
    let cert = semiorth_check::<Q>(&[], Claim::Semiorthogonal, &windows(), lim()).unwrap();
    assert!(cert.pass && cert.cells.is_empty());
}

#[test]
fn torsion_is_orthogonal_to_the_plane_pushforward() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let o = obar_complex(&d, 2, STEPS).unwrap();
    let k = ZModule::residue_field(&d.ext).unwrap();
    let families = vec![
        Family { name: "Y".into(), objects: vec![FamilyObject::new("Rf_*O_Y", o.pushforward.clone())] },
        Family { name: "tors".into(), objects: vec![FamilyObject::i_n("i0(k)", &k, 0, &d.ext).unwrap()] },
    ];
    let cert = semiorth_check(&families, Claim::Semiorthogonal, &windows(), lim()).unwrap();
    assert!(cert.pass, "{:?}", cert.cells);
}

#[test]
fn adjunction_on_stable_sources() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let k = ZModule::residue_field(&d.ext).unwrap();
    let i2 = Arc::new(i_n_module(&k, 2, &d.ext).unwrap());
    let i1 = Arc::new(i_n_module(&k, 1, &d.ext).unwrap());
    let r = Arc::new(GradedModule::ring_module(d.ext.clone()));
    assert_eq!(adjunction_dims(&i2, &k, 1, lim()).unwrap(), (Some(0), Some(0)));
    assert_eq!(adjunction_dims(&i1, &k, 1, lim()).unwrap(), (Some(1), Some(1)));
    assert_eq!(adjunction_dims(&r, &k, 0, lim()).unwrap(), (Some(1), Some(1)));
    // i_0 k is not 1-stable
    let i0 = Arc::new(i_n_module(&k, 0, &d.ext).unwrap());
    assert!(adjunction_dims(&i0, &k, 1, lim()).is_err());
}

#[test]
fn cone_obar_is_torsion_of_positive_level() {
    let d = setup(&["x", "y", "z"], &["x^3 + y^3 + z^3"], &["x", "y", "z"]);
    let o = obar_complex(&d, 3, STEPS).unwrap();
    let n = o.level().unwrap();
    assert!(n >= 1);
    let e = FreeBaseComplex { start: 0, ranks: vec![1] };
    assert!(!rho_n_certificate(&o, &e, 0).unwrap().pass);
    assert!(rho_n_certificate(&o, &e, n).unwrap().pass);
    println!("cone level {n}, scanned {:?}", o.torsion.scanned);
}
