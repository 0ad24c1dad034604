use std::sync::Arc;

use super::*;
use crate::base;
use crate::graded::{truncate, DegreeWindow, GradedModule, GradedPieces};
use crate::rees::{rees_data, ReesData};
use crate::{Limits, Rational};

type Q = Rational;

const STEPS: usize = 6;

fn setup(names: &[&str], rels: &[&str], ideal: &[&str]) -> ReesData<Q> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let probe = BaseRing::<Q>::new(names.clone(), Vec::new(), Limits::default()).unwrap();
    let rels = rels.iter().map(|r| probe.parse(r).unwrap()).collect();
    let base = BaseRing::new(names, rels, Limits::default()).unwrap();
    let gens: Vec<Poly<Q>> = ideal.iter().map(|g| base.parse(g).unwrap()).collect();
    rees_data(&base, &gens, Limits::default()).unwrap()
}

/// Torus-fixed count of `H^1(O(m))` on the blowup of the plane at the origin:
/// Laurent monomials `x^a y^b` on the overlap of the two charts lying in
/// neither chart, i.e. `a, b <= -1` with `a + b >= m`.
fn toric_h1(m: i64) -> usize {
    let mut n = 0;
    for a in m..0 {
        for b in m..0 {
            if a + b >= m {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn toric_oracle_values() {
    assert_eq!((toric_h1(0), toric_h1(-1), toric_h1(-2), toric_h1(-3)), (0, 0, 1, 3));
}

#[test]
fn plane_charts() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let atlas = blowup_charts(&d.rees, Limits::default()).unwrap();
    assert_eq!(atlas.charts.len(), 2);
    assert!(!atlas.is_empty_space());
    let c0 = &atlas.charts[0];
    let rel = c0.ring.parse("y - x*z1").unwrap();
    assert!(c0.ring.ideal().contains(&rel, Limits::default()).unwrap());
    assert!(c0.ring.ideal().same_as(&crate::Ideal::new(3, vec![rel]), Limits::default()).unwrap());
}

#[test]
fn nilpotent_charts_are_empty() {
    let d = setup(&["x"], &["x^2"], &["x"]);
    let atlas = blowup_charts(&d.rees, Limits::default()).unwrap();
    assert!(atlas.is_empty_space());
    let m = GradedModule::ring_module(d.rees.clone());
    assert!(sheaf_is_zero(&m, &atlas).unwrap());
}

#[test]
fn restrictions() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let atlas = blowup_charts(&d.rees, Limits::default()).unwrap();
    let ring = GradedModule::ring_module(d.rees.clone());
    let o1 = ring.twist(1);
    for c in &atlas.charts {
        let r = sheaf_restrict(&ring, c);
        assert_eq!(r.prune(&c.ring).unwrap().ngens(), 1);
        assert!(!r.is_zero(&c.ring).unwrap());
        // O(1) is trivial on each chart
        assert_eq!(sheaf_restrict(&o1, c).kdim(&c.ring).unwrap(), None);
    }
    let ys: Vec<Vec<Poly<Q>>> = (0..2).map(|i| vec![d.rees.var(d.rees.y(i)).pow(2)]).collect();
    let tors = GradedModule::new(d.rees.clone(), vec![0], ys).unwrap();
    assert!(sheaf_is_zero(&tors, &atlas).unwrap());
    assert!(!sheaf_is_zero(&ring, &atlas).unwrap());
}

#[test]
fn plane_sections_are_powers() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = GradedModule::ring_module(d.rees.clone());
    for t in 0..3 {
        let ev = bound_evidence(&m, t, STEPS).unwrap();
        assert!(ev.sections_match, "twist {t}");
        assert!(ev.holds(), "twist {t}");
    }
}

#[test]
fn plane_h1_matches_toric_count() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = GradedModule::ring_module(d.rees.clone());
    for t in -3..=1 {
        let h = higher_cohomology(&m, t, 1, STEPS).unwrap();
        assert_eq!(h.kdim, Some(toric_h1(t)), "twist {t}");
    }
    assert!(higher_cohomology(&m, 0, 2, STEPS).unwrap().is_zero);
}

#[test]
fn plane_bound_is_zero() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = GradedModule::ring_module(d.rees.clone());
    let c = stability_bound(&m, 2, STEPS).unwrap();
    assert_eq!(c.n, Some(0));
}

#[test]
fn nilpotent_bound_is_nilpotency_order() {
    let d = setup(&["x"], &["x^3"], &["x"]);
    let m = GradedModule::ring_module(d.rees.clone());
    let c = stability_bound(&m, 4, STEPS).unwrap();
    assert_eq!(c.n, Some(3));
    assert!(twisted_sections(&m, 0, STEPS).unwrap().is_zero);
}

#[test]
fn sections_survive_truncation() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = Arc::new(GradedModule::ring_module(d.rees.clone()));
    for (cut, t) in [(1, 1), (1, 2), (2, 2), (0, 1)] {
        let inc = truncate(&m, cut, Limits::default()).unwrap();
        assert!(induced_map_is_iso(&inc, t, 0, STEPS).unwrap(), "cut {cut} twist {t}");
    }
}

#[test]
fn pushforward_of_plane_structure_sheaf_is_the_extended_rees_algebra() {
    let d = setup(&["x", "y"], &[], &["x", "y"]);
    let m = GradedModule::ring_module(d.rees.clone());
    let window = DegreeWindow::new(-2, 3);
    let pf = pushforward_tilde(&m, &d.ext, window, 1, STEPS).unwrap();
    let a = GradedModule::ring_module(d.ext.clone());
    let base = &d.base;
    for n in window.degrees() {
        let unit = pf[0].unit_at(n).unwrap();
        assert!(base::is_iso(base, &a.piece(n).unwrap(), &pf[0].piece(n).unwrap(), &unit).unwrap(), "degree {n}");
        assert!(pf[1].piece(n).unwrap().is_zero(base).unwrap(), "H^1 in degree {n}");
    }
    // u and y act compatibly with the unit map
    let u = d.ext.var(d.ext.u());
    let y0 = d.ext.var(d.ext.y(0));
    for n in -1..=2 {
        for (a_el, w) in [(&u, -1), (&y0, 1)] {
            let lhs = base::compose(base, &a.piece(n + w).unwrap(), pf[0].piece(n + w).unwrap().rank, &a.act(a_el, n).unwrap(), &pf[0].unit_at(n + w).unwrap()).unwrap();
            let rhs = base::compose(base, &pf[0].piece(n).unwrap(), pf[0].piece(n + w).unwrap().rank, &pf[0].unit_at(n).unwrap(), &pf[0].act(a_el, n).unwrap()).unwrap();
            let tgt = pf[0].piece(n + w).unwrap();
            let gb = tgt.rel_basis(base).unwrap();
            for (l, r) in lhs.iter().zip(&rhs) {
                assert!(gb.contains(&crate::poly::vector::sub(l, r)).unwrap(), "degree {n} weight {w}");
            }
        }
    }
}

#[test]
fn cone_bound_detects_irrational_singularity() {
    let d = setup(&["x", "y", "z"], &["x^3 + y^3 + z^3"], &["x", "y", "z"]);
    let m = GradedModule::ring_module(d.rees.clone());
    let h1 = higher_cohomology(&m, 0, 1, STEPS).unwrap();
    assert_eq!(h1.kdim, Some(1));
    let c = stability_bound(&m, 3, STEPS).unwrap();
    assert_eq!(c.n, Some(1));
}
