use std::sync::Arc;

use super::*;
use crate::base::{self, Subquotient};
use crate::graded::{free_resolution, graded_ext, hilbert_data, is_torsion, truncate, DegreeWindow, GradedModule, GradedPieces, HilbertEntry};
use crate::groebner::Ideal;
use crate::{Limits, Rational};

type Q = Rational;

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

/// Piece `d` of `m` maps isomorphically onto the span of `target` in `E`.
fn realizes(m: &GradedModule<Q>, images: &[Vec<Poly<Q>>], d: i64, e: &Subquotient<Q>, target: Vec<Vec<Poly<Q>>>) -> bool {
    let base = &m.ring.base;
    let real = laurent_realization(m, images, d);
    let tgt = Subquotient::new(e.rank, target, e.rels.clone());
    let piece = m.piece(d).unwrap();
    base::is_iso(base, &piece, &tgt, &real).unwrap()
}

/// Generators of `I^n` as vectors of rank one.
fn power_gens(data: &ReesData<Q>, n: u32) -> Vec<Vec<Poly<Q>>> {
    let i = Ideal::new(data.base.nvars(), data.gens.clone());
    i.power(n, data.base.ideal(), lim()).unwrap().gens.into_iter().map(|g| vec![g]).collect()
}

#[test]
fn rees_of_plane_maximal_ideal_is_one_relation() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let expect = d.rees.parse("x*y1 - y*y0").unwrap();
    let got = Ideal::new(d.rees.nvars(), d.rees_ideal.clone());
    assert!(got.same_as(&Ideal::new(d.rees.nvars(), vec![expect]), lim()).unwrap());
}

#[test]
fn rees_pieces_are_powers() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = GradedModule::ring_module(d.rees.clone());
    let e = Subquotient::free(1, 2);
    let one = vec![vec![d.base.one()]];
    for n in 0..4 {
        assert!(realizes(&m, &one, n, &e, power_gens(&d, n as u32)), "degree {n}");
    }
}

#[test]
fn extended_rees_of_principal_ideal() {
    let d = setup(&["x"], &[], &["x"]);
    let expect = d.ext.parse("y0*u - x").unwrap();
    let got = Ideal::new(d.ext.nvars(), d.ext_ideal.clone());
    assert!(got.same_as(&Ideal::new(d.ext.nvars(), vec![expect]), lim()).unwrap());
    assert!(u_equals_one_recovers_base(&d.ext, lim()).unwrap());
    let m = GradedModule::ring_module(d.ext.clone());
    let e = Subquotient::free(1, 1);
    let one = vec![vec![d.base.one()]];
    for n in -3i64..=3 {
        let target = if n <= 0 { vec![vec![d.base.one()]] } else { power_gens(&d, n as u32) };
        assert!(realizes(&m, &one, n, &e, target), "degree {n}");
    }
}

#[test]
fn twisted_rees_ring_starts_at_the_ideal() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = GradedModule::ring_module(d.rees.clone()).twist(1);
    let e = Subquotient::free(1, 2);
    let one = vec![vec![d.base.one()]];
    assert!(realizes(&m, &one, 0, &e, power_gens(&d, 1)));
}

#[test]
fn associated_graded_has_linear_hilbert_function() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let gr = assoc_graded(&d.ext).unwrap();
    let m = GradedModule::ring_module(gr);
    let h = hilbert_data(&m, DegreeWindow::new(0, 3)).unwrap();
    // I^n / I^{n+1} over k[x, y] / (x, y)-torsion pieces: generator counts 1, 2, 3, 4
    let counts: Vec<usize> = h
        .iter()
        .map(|e| match e {
            HilbertEntry::Dim(k) | HilbertEntry::Generators(k) => *k,
        })
        .collect();
    assert_eq!(counts, vec![1, 2, 3, 4]);
    assert!(h.iter().all(|e| matches!(e, HilbertEntry::Dim(_))));
    let neg = hilbert_data(&m, DegreeWindow::new(-2, -1)).unwrap();
    assert_eq!(neg, vec![HilbertEntry::Dim(0), HilbertEntry::Dim(0)]);
}

#[test]
fn rees_module_of_adic_filtration_matches_powers() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let e = Subquotient::free(1, 2);
    let m = rees_module(&FilteredModule::adic(e.clone()), &d.ext).unwrap();
    let one = vec![vec![d.base.one()]];
    for n in -2i64..=3 {
        let target = if n <= 0 { one.clone() } else { power_gens(&d, n as u32) };
        assert!(realizes(&m, &one, n, &e, target), "degree {n}");
    }
    assert!(is_n_stable(&m, 0).unwrap().stable);
}

#[test]
fn rees_module_of_shifted_filtration() {
    // F^0 = R, F^1 = F^2 = I, then I-adic: pieces I, I, I^2, ...
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let e = Subquotient::free(1, 2);
    let i1 = power_gens(&d, 1);
    let f = FilteredModule::new(e.clone(), vec![i1.clone(), i1.clone()]);
    assert_eq!(filtration_wellformed(&f, &d.ext).unwrap(), None);
    let m = rees_module(&f, &d.ext).unwrap();
    let images: Vec<Vec<Poly<Q>>> = f.levels.iter().flatten().cloned().collect();
    let expect = [(0, power_gens(&d, 0)), (1, i1.clone()), (2, i1.clone()), (3, power_gens(&d, 2)), (4, power_gens(&d, 3))];
    for (n, target) in expect {
        assert!(realizes(&m, &images, n, &e, target), "degree {n}");
    }
}

#[test]
fn malformed_filtration_reports_witness() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let e = Subquotient::free(1, 2);
    let x = vec![d.base.parse("x").unwrap()];
    let y = vec![d.base.parse("y").unwrap()];
    let f = FilteredModule::new(e.clone(), vec![vec![x.clone()], vec![y]]);
    let w = filtration_wellformed(&f, &d.ext).unwrap().unwrap();
    assert_eq!((w.kind, w.level, w.generator), (ViolationKind::NotDecreasing, 2, 0));
    let g = FilteredModule::new(e, vec![vec![x.clone()], vec![x.iter().map(|p| p.mul(p)).collect()]]);
    let w = filtration_wellformed(&g, &d.ext).unwrap().unwrap();
    // I F^0 = (x, y) is not inside F^1 = (x)
    assert_eq!((w.kind, w.level), (ViolationKind::NotMultiplicative, 0));
}

#[test]
fn i_n_constructions_agree() {
    let d = setup(&["x"], &[], &["x"]);
    let k = ZModule::residue_field(&d.ext).unwrap();
    let base = &d.base;
    for n in 0..3usize {
        let direct = i_n_module(&k, n as i64, &d.ext).unwrap();
        let via = rees_module(&i_n(&k, n), &d.ext).unwrap();
        for deg in -2..=(n as i64 + 2) {
            let a = direct.piece(deg).unwrap().kdim(base).unwrap();
            let b = via.piece(deg).unwrap().kdim(base).unwrap();
            let expect = if deg <= n as i64 { 1 } else { 0 };
            assert_eq!((a, b), (Some(expect), Some(expect)), "n {n} degree {deg}");
        }
        for m in -1..=(n as i64 + 1) {
            let g = gr_f(&direct, m).unwrap();
            assert_eq!(g.kdim(base).unwrap(), Some(usize::from(m == n as i64)), "gr^{m} of i_{n}");
        }
        assert!(is_n_stable(&direct, n as i64).unwrap().stable);
        let next = is_n_stable(&direct, n as i64 + 1).unwrap();
        assert_eq!(next.failures, vec![n as i64 + 1]);
    }
}

#[test]
fn residue_field_rejects_modules_not_killed_by_the_ideal() {
    let d = setup(&["x"], &[], &["x"]);
    let r = Subquotient::free(1, 1);
    assert!(ZModule::new(&d.ext, r).is_err());
}

#[test]
fn tau_of_rho_is_the_rees_ring() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let t = tau(&rho(&d.ext, 1), &d.rees).unwrap();
    let e = Subquotient::free(1, 2);
    let one = vec![vec![d.base.one()]];
    for n in 0..3 {
        assert!(realizes(&t, &one, n, &e, power_gens(&d, n as u32)), "degree {n}");
    }
    assert!(t.piece(-1).unwrap().is_zero(&d.base).unwrap());
}

#[test]
fn torsion_detection() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let ys: Vec<Vec<Poly<Q>>> = (0..2).map(|i| vec![d.rees.var(d.rees.y(i))]).collect();
    let m = GradedModule::new(d.rees.clone(), vec![0], ys).unwrap();
    let c = is_torsion(&m, lim(), 20).unwrap();
    assert!(c.torsion);
    assert_eq!(c.d0, Some(1));
    let free = GradedModule::<Q>::free(d.rees.clone(), vec![0]);
    assert!(!is_torsion(&free, lim(), 20).unwrap().torsion);

    let nil = setup(&["x"], &["x^3"], &["x"]);
    let r = GradedModule::ring_module(nil.rees.clone());
    let c = is_torsion(&r, lim(), 20).unwrap();
    assert!(c.torsion);
    assert_eq!(c.d0, Some(3));
}

#[test]
fn truncation_keeps_high_pieces() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = Arc::new(GradedModule::ring_module(d.rees.clone()));
    let t = truncate(&m, 2, lim()).unwrap();
    let base = &d.base;
    assert!(t.source.piece(1).unwrap().is_zero(base).unwrap());
    for deg in 2..5 {
        let src = t.source.piece(deg).unwrap();
        let tgt = m.piece(deg).unwrap();
        let img = crate::graded::GradedMorphism::at(&t, deg).unwrap();
        assert!(base::is_iso(base, &src, &tgt, &img).unwrap(), "degree {deg}");
    }
}

#[test]
fn residue_field_resolution_and_ext() {
    let d = setup(&["x"], &[], &["x"]);
    let k = ZModule::residue_field(&d.ext).unwrap();
    let m = i_n_module(&k, 0, &d.ext).unwrap();
    let res = free_resolution(&m, 3, true, lim()).unwrap();
    assert!(res.min_twist().unwrap() >= 0);
    let base = &d.base;
    let hom = graded_ext(&m, &m, 0, DegreeWindow::new(0, 0), lim()).unwrap();
    assert_eq!(hom[0].kdim, Some(1));
    // resolution 0 -> Ã(-1) -y-> Ã, so Ext^1_d = N_{d+1}
    let e1 = graded_ext(&m, &m, 1, DegreeWindow::new(-2, 1), lim()).unwrap();
    let dims: Vec<Option<usize>> = e1.iter().map(|e| e.kdim).collect();
    assert_eq!(dims, vec![Some(1), Some(1), Some(0), Some(0)]);
    assert_eq!(res.twists.iter().map(|t| t.len()).collect::<Vec<_>>(), vec![1, 1]);
    let _ = base;
}
