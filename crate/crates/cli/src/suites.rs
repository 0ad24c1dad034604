//! Built-in verification suites. Each works over the rationals on a fixed
//! scenario with seeded randomness, so its report is reproducible.

use std::sync::Arc;

use blowup_core::base::{self, Subquotient};
use blowup_core::derived::{adjunction_dims, rho_n_certificate, semiorth_check, Claim, Family, FamilyObject, FreeBaseComplex, SemiorthWindows};
use blowup_core::graded::{truncate, DegreeWindow, GradedModule, GradedRing};
use blowup_core::proj::{blowup_charts, higher_cohomology, sections_with_comparison, sheaf_is_zero, stability_bound};
use blowup_core::rees::{gr_f, i_n_module, rees_data, u_equals_one_recovers_base, ReesData, ZModule};
use blowup_core::{AlgebraError, BaseRing, Ideal, Limits, Poly, Rational, Result, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::commands::{obar_with_level, piece_is_power, Options};
use crate::oracle::{plane_blowup_h1, ring_map_kernel_dim, Macaulay};
use crate::report::{error_verdict, Report, Verdict};

type Q = Rational;

pub const SUITES: &[&str] = &["rees-plane", "extrees-principal", "plane-blowup", "cone", "semiorth-nilpotent", "functor-identities", "serre", "oracle"];

pub fn run_suite(name: &str, opts: &Options) -> Result<Report> {
    match name {
        "all" => {
            let mut r = Report::new("verify all");
            for s in SUITES {
                let sub = run_suite(s, opts).unwrap_or_else(|e| {
                    let mut f = Report::from_error(format!("verify {s}"), &e);
                    f.verdict = Some(error_verdict(&e).and(Verdict::Fail));
                    f
                });
                r.absorb(sub);
            }
            Ok(r)
        }
        "rees-plane" => rees_plane(opts),
        "extrees-principal" => extrees_principal(opts),
        "plane-blowup" => plane_blowup(opts),
        "cone" => cone(opts),
        "semiorth-nilpotent" => semiorth_nilpotent(opts),
        "functor-identities" => functor_identities(opts),
        "serre" => serre(opts),
        "oracle" => oracle(opts),
        other => Err(AlgebraError::Malformed(format!("unknown suite `{other}`; known: all, {}", SUITES.join(", ")))),
    }
}

fn check(r: &mut Report, name: &str, pass: bool, detail: serde_json::Value) {
    r.entry(json!({ "check": name, "pass": pass, "detail": detail }), format!("[{}] {name} {detail}", if pass { "pass" } else { "FAIL" }));
    r.set_verdict(Verdict::from_pass(pass));
}

fn setup(names: &[&str], rels: &[&str], ideal: &[&str], limits: Limits) -> Result<ReesData<Q>> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let parse = |s: &&str| blowup_core::parse::parse_poly::<Q>(s, &names);
    let rels = rels.iter().map(parse).collect::<Result<Vec<_>>>()?;
    let base = BaseRing::new(names.clone(), rels, limits)?;
    let gens = ideal.iter().map(parse).collect::<Result<Vec<_>>>()?;
    rees_data(&base, &gens, limits)
}

fn poly(ring: &GradedRing<Q>, s: &str) -> Result<Poly<Q>> {
    ring.parse(s)
}

fn rees_plane(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let mut r = Report::new("verify rees-plane");
    let d = setup(&["x", "y"], &[], &["x", "y"], limits)?;
    let expect = poly(&d.rees, "x*y1 - y*y0")?;
    let got = Ideal::new(d.rees.nvars(), d.rees_ideal.clone());
    let order = blowup_core::MonoOrder::DegRevLex;
    let principal = got.gens.len() == 1 && got.gens[0].make_monic(&order) == expect.make_monic(&order);
    let shown: Vec<String> = got.gens.iter().map(|g| d.rees.display(g)).collect();
    check(&mut r, "rees ideal is (x*y1 - y*y0) up to a unit", principal, json!(shown));
    // x, y, y0, y1 -> x, y, x t, y t; the Rees ideal is the kernel
    let t = ["x", "y", "t"].map(String::from);
    let images = ["x", "y", "x*t", "y*t"].iter().map(|s| blowup_core::parse::parse_poly::<Q>(s, &t)).collect::<Result<Vec<_>>>()?;
    let in_kernel = got.gens.iter().all(|g| g.substitute(&images, 3).is_zero());
    check(&mut r, "generators vanish under y_i -> g_i t", in_kernel, json!(null));
    let dims: Vec<(usize, usize)> = (0..=4).map(|deg| (ring_map_kernel_dim(&images, deg), Macaulay::new(&got.gens, 4, deg).dim())).collect();
    check(&mut r, "Macaulay elimination agrees in degrees 0..4", dims.iter().all(|(a, b)| a == b), json!(dims));
    Ok(r)
}

fn extrees_principal(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let mut r = Report::new("verify extrees-principal");
    let d = setup(&["x"], &[], &["x"], limits)?;
    let expect = Ideal::new(d.ext.nvars(), vec![poly(&d.ext, "y0*u - x")?]);
    let same = Ideal::new(d.ext.nvars(), d.ext_ideal.clone()).same_as(&expect, limits)?;
    check(&mut r, "extended Rees ideal is (y0*u - x)", same, json!(d.ext_ideal.iter().map(|g| d.ext.display(g)).collect::<Vec<_>>()));
    let pieces = (-3..=3).map(|n| Ok((n, piece_is_power(&d, n, limits)?))).collect::<Result<Vec<_>>>()?;
    check(&mut r, "pieces on [-3, 3] are I^n (n >= 1) and R (n <= 0)", pieces.iter().all(|p| p.1), json!(pieces));
    check(&mut r, "u = 1 recovers R", u_equals_one_recovers_base(&d.ext, limits)?, json!(null));
    Ok(r)
}

fn plane_blowup(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let steps = opts.max_sat_steps;
    let mut r = Report::new("verify plane-blowup");
    let d = setup(&["x", "y"], &[], &["x", "y"], limits)?;
    let m = GradedModule::ring_module(d.rees.clone());
    let mut rows = Vec::new();
    for t in -3..=4 {
        let (h0, iso) = sections_with_comparison(&m, t, steps)?;
        let h1 = higher_cohomology(&m, t, 1, steps)?;
        rows.push((t, iso, h0.is_zero, h1.kdim, plane_blowup_h1(t)));
    }
    let sections_ok = rows.iter().filter(|x| x.0 >= 0).all(|x| x.1);
    check(&mut r, "H^0(O(m)) = I^m for 0 <= m <= 4", sections_ok, json!(rows.iter().map(|x| (x.0, x.1)).collect::<Vec<_>>()));
    let vanish = rows.iter().filter(|x| x.0 >= 0).all(|x| x.3 == Some(0));
    check(&mut r, "H^1(O(m)) = 0 for 0 <= m <= 4", vanish, json!(null));
    let at_minus_two = rows.iter().find(|x| x.0 == -2).and_then(|x| x.3);
    check(&mut r, "H^1(O(-2)) != 0", at_minus_two.is_some_and(|k| k > 0), json!(at_minus_two));
    let cech: Vec<(i64, Option<usize>, usize)> = rows.iter().map(|x| (x.0, x.3, x.4)).collect();
    check(&mut r, "h^1 agrees with the Laurent-monomial Čech count on [-3, 4]", cech.iter().all(|c| c.1 == Some(c.2)), json!(cech));
    let b = stability_bound(&m, 4, steps)?;
    check(&mut r, "bound with limit 4 is n = 0", b.n == Some(0), json!(b.n));
    Ok(r)
}

fn cone(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let steps = opts.max_sat_steps;
    let mut r = Report::new("verify cone");
    let d = setup(&["x", "y", "z"], &["x^3 + y^3 + z^3"], &["x", "y", "z"], limits)?;
    let m = GradedModule::ring_module(d.rees.clone());
    let b = stability_bound(&m, 3, steps)?;
    let n = b.n.unwrap_or(i64::MAX);
    check(&mut r, "bound with limit 3 is n >= 1", b.n.is_some_and(|n| n >= 1), json!(b.n));
    let witness = b.evidence.iter().find(|e| e.twist == 0).and_then(|e| e.higher.iter().find(|h| h.0 == 1)).map(|h| (h.1, h.2));
    check(&mut r, "H^1(O) != 0 witnesses the failure at m = 0", witness.is_some_and(|w| !w.0), json!(witness));
    let o = obar_with_level(&d, 0, 8, steps)?;
    let e = FreeBaseComplex { start: 0, ranks: vec![1] };
    let c0 = rho_n_certificate(&o, &e, 0)?;
    check(&mut r, "rho certificate fails at level 0", !c0.pass, json!({ "obar_level": c0.obar_level }));
    if b.n.is_some() {
        let cn = rho_n_certificate(&o, &e, n)?;
        check(&mut r, "rho certificate passes at the bound", cn.pass, json!({ "n": n, "obar_level": cn.obar_level }));
    }
    Ok(r)
}

fn semiorth_nilpotent(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let mut r = Report::new("verify semiorth-nilpotent");
    let d = setup(&["x"], &["x^3"], &["x"], limits)?;
    let atlas = blowup_charts(&d.rees, limits)?;
    check(&mut r, "every chart ideal is the unit ideal", atlas.charts.iter().all(|c| c.empty), json!(atlas.charts.len()));
    let o = obar_with_level(&d, 3, 8, opts.max_sat_steps)?;
    check(&mut r, "torsion level of Obar is 3", o.level() == Some(3), json!(o.torsion.scanned));
    let e = FreeBaseComplex { start: 0, ranks: vec![1] };
    check(&mut r, "rho certificate passes at level 3", rho_n_certificate(&o, &e, 3)?.pass, json!(null));
    check(&mut r, "rho certificate fails at level 2", !rho_n_certificate(&o, &e, 2)?.pass, json!(null));
    let k = ZModule::residue_field(&d.ext)?;
    let families = (0..3).map(|n| Ok(Family { name: format!("i{n}"), objects: vec![FamilyObject::i_n(format!("i{n}(k)"), &k, n, &d.ext)?] })).collect::<Result<Vec<_>>>()?;
    let windows = SemiorthWindows { k_lo: 0, k_hi: 2, degrees: DegreeWindow::new(0, 0) };
    let cert = semiorth_check(&families, Claim::Semiorthogonal, &windows, limits)?;
    let finite = cert.cells.iter().all(|c| c.kdim.is_some());
    let crossed = cert.cells.iter().filter(|c| c.adjunction.is_some()).count();
    check(&mut r, "<i0(k), i1(k), i2(k)> is semiorthogonal", cert.pass, json!({ "cells": cert.cells.len(), "adjunction_checks": crossed }));
    check(&mut r, "every Ext cell is finite dimensional", finite, json!(null));
    Ok(r)
}

fn small(rng: &mut ChaCha8Rng) -> Q {
    Rational::new(rng.gen_range(-2..=2), 1)
}

/// `R^r / (x^2 R^r + random relations)` over `R = k[x]`, `I = (x^2)`: killed by `I`.
fn random_zmodule(rng: &mut ChaCha8Rng, ring: &GradedRing<Q>) -> Result<ZModule<Q>> {
    let rank = rng.gen_range(1..=3);
    let x = ring.base.var(0);
    let mut rels: Vec<Vector<Q>> = (0..rank).map(|j| (0..rank).map(|i| if i == j { x.pow(2) } else { Poly::zero(1) }).collect()).collect();
    for _ in 0..rng.gen_range(0..=2) {
        // a constant term would usually kill a generator outright
        let unit_part = rng.gen_bool(0.2);
        rels.push((0..rank).map(|_| if unit_part { Poly::constant(1, small(rng)) } else { Poly::zero(1) }.add(&x.scale(&small(rng)))).collect());
    }
    ZModule::new(ring, Subquotient::cokernel(rank, 1, rels))
}

fn functor_identities(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let mut r = Report::new("verify functor-identities");
    let d = setup(&["x"], &[], &["x^2"], limits)?;
    let base = &d.base;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut id_ok = 0;
    let mut zero_ok = 0;
    let trials = 20;
    for t in 0..trials {
        let nmod = random_zmodule(&mut rng, &d.ext)?;
        let n = (t % 3) as i64;
        let m = i_n_module(&nmod, n, &d.ext)?;
        let pres = nmod.presentation(base)?;
        let g = gr_f(&m, n)?;
        let units: Vec<Vector<Q>> = (0..pres.rank).map(|j| blowup_core::poly::vector::unit(pres.rank, 1, j)).collect();
        id_ok += usize::from(g.rank == pres.rank && base::is_iso(base, &pres, &g, &units)?);
        let others = [-1, n - 1, n + 1, n + 2].into_iter().filter(|&k| k != n).map(|k| gr_f(&m, k)?.is_zero(base)).collect::<Result<Vec<_>>>()?;
        zero_ok += usize::from(others.iter().all(|&z| z));
    }
    check(&mut r, "gr^n i_n = Id on random modules", id_ok == trials, json!({ "trials": trials, "passed": id_ok }));
    check(&mut r, "gr^m i_n = 0 for m != n", zero_ok == trials, json!({ "trials": trials, "passed": zero_ok }));
    let mut agree = 0;
    let mut seen = Vec::new();
    let cases = 10;
    for t in 0..cases {
        let n = (t % 2) as i64;
        let level = n + rng.gen_range(0..=1);
        let xmod = random_zmodule(&mut rng, &d.ext)?;
        let x = Arc::new(i_n_module(&xmod, level, &d.ext)?);
        let target = random_zmodule(&mut rng, &d.ext)?;
        let (e, h) = adjunction_dims(&x, &target, n, limits)?;
        agree += usize::from(e.is_some() && e == h);
        seen.push((n, level, e, h));
    }
    check(&mut r, "dim Ext^0(X, i_n N)_0 = dim Hom(gr^n X, N) on n-stable torsion X", agree == cases, json!(seen));
    Ok(r)
}

/// A random homogeneous vector of degree `deg` over the plane Rees ring.
fn random_element(rng: &mut ChaCha8Rng, ring: &GradedRing<Q>, twists: &[i64], deg: i64) -> Vector<Q> {
    let n = ring.nvars();
    let base_monos = [Poly::one(n), ring.var(0), ring.var(1)];
    twists
        .iter()
        .map(|&t| {
            let w = deg - t;
            let mut p = Poly::zero(n);
            if w < 0 {
                return p;
            }
            for a in 0..=w {
                let ymono = ring.var(ring.y(0)).pow(a as u32).mul(&ring.var(ring.y(1)).pow((w - a) as u32));
                for b in &base_monos {
                    if rng.gen_bool(0.4) {
                        p = p.add(&ymono.mul(b).scale(&small(rng)));
                    }
                }
            }
            p
        })
        .collect()
}

fn serre(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let steps = opts.max_sat_steps;
    let mut r = Report::new("verify serre");
    let d = setup(&["x", "y"], &[], &["x", "y"], limits)?;
    let ring = d.rees.clone();
    let atlas = blowup_charts(&ring, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut invariant = Vec::new();
    let mut torsion = Vec::new();
    for _ in 0..5 {
        let rank = rng.gen_range(1..=2);
        let twists: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
        let rels = (0..rng.gen_range(1..=2)).map(|_| random_element(&mut rng, &ring, &twists, 2)).filter(|v| v.iter().any(|p| !p.is_zero())).collect();
        let m = Arc::new(GradedModule::new(ring.clone(), twists.clone(), rels)?);
        let mut ok = true;
        for (cut, twist) in [(0, 1), (1, 1), (1, 2)] {
            let hom = truncate(&m, cut, limits)?;
            ok &= blowup_core::proj::induced_map_is_iso(&hom, twist, 0, steps)?;
        }
        invariant.push(ok);
        // kill (y0, y1)^2 on every generator: torsion
        let k = 2;
        let mut trels = m.rels.clone();
        for j in 0..rank {
            for a in 0..=k {
                let mut v = blowup_core::poly::vector::zero(rank, ring.nvars());
                v[j] = ring.var(ring.y(0)).pow(a).mul(&ring.var(ring.y(1)).pow(k - a));
                trels.push(v);
            }
        }
        let t = GradedModule::new(ring.clone(), twists, trels)?;
        torsion.push(sheaf_is_zero(&t, &atlas)?);
    }
    check(&mut r, "sections are invariant under truncation at d <= m", invariant.iter().all(|&b| b), json!(invariant));
    check(&mut r, "torsion modules restrict to zero on every chart", torsion.iter().all(|&b| b), json!(torsion));
    Ok(r)
}

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Poly<Q> {
    let mut p = Poly::zero(nvars);
    for m in blowup_core::mono::monomials_of_degree(nvars, deg) {
        if rng.gen_bool(0.5) {
            p = p.add(&Poly::monomial(m, Rational::new(rng.gen_range(-3..=3), 1)));
        }
    }
    p
}

fn oracle(opts: &Options) -> Result<Report> {
    let limits = opts.limits();
    let mut r = Report::new("verify oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut agree = 0;
    let mut membership = 0;
    let mut tested = 0;
    let ideals = 25;
    for _ in 0..ideals {
        let nv = rng.gen_range(1..=3);
        let mut gens: Vec<Poly<Q>> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let deg = rng.gen_range(1..=3);
            let g = random_form(&mut rng, nv, deg);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let gb = Ideal::new(nv, gens.clone()).gb(limits)?;
        let leads: Vec<_> = gb.leading_terms().into_iter().map(|(m, _)| m).collect();
        let mut same = true;
        for deg in 0..=6u32 {
            let mac = Macaulay::new(&gens, nv, deg);
            let monos = blowup_core::mono::monomials_of_degree(nv, deg);
            let reducible = monos.iter().filter(|m| leads.iter().any(|l| l.divides(m))).count();
            same &= reducible == mac.dim();
            for _ in 0..2 {
                // one element built from the generators, one arbitrary form
                let mut f = random_form(&mut rng, nv, deg);
                if rng.gen_bool(0.5) {
                    f = Poly::zero(nv);
                    for g in &gens {
                        if let Some(gd) = g.total_degree().filter(|&gd| gd <= deg) {
                            f = f.add(&random_form(&mut rng, nv, deg - gd).mul(g));
                        }
                    }
                }
                tested += 1;
                membership += usize::from(gb.reduce_poly(&f)?.is_zero() == mac.contains(&f));
            }
        }
        agree += usize::from(same);
    }
    check(&mut r, "dim I_d from leading terms = Macaulay rank, d <= 6", agree == ideals, json!({ "ideals": ideals, "agree": agree }));
    check(&mut r, "normal form zero iff in the Macaulay row space", membership == tested, json!({ "tested": tested, "agree": membership }));
    Ok(r)
}
