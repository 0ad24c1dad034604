//! Subcommands over a parsed problem.

use std::path::PathBuf;

use blowup_core::base::{self, Subquotient};
use blowup_core::derived::{obar_complex, rho_n_certificate, semiorth_check, Claim, Family, FamilyObject, FreeBaseComplex, Obar, SemiorthWindows, Verdict as CellVerdict, TORSION_RUN};
use blowup_core::field::{set_prime, Fp};
use blowup_core::graded::{hilbert_data, DegreeWindow, GradedModule, GradedPieces, HilbertEntry};
use blowup_core::proj::{blowup_charts, cohomology_table, sections_with_comparison, stability_bound};
use blowup_core::rees::{assoc_graded, filtration_wellformed, laurent_realization, rees_module, tau, u_equals_one_recovers_base, FilteredModule, ReesData, ZModule};
use blowup_core::{AlgebraError, Field, Ideal, Limits, Poly, Rational, Result};
use rayon::prelude::*;
use serde_json::json;

use crate::cache::rees_data_cached;
use crate::problem::{FieldSpec, Problem, ProblemSpec};
use crate::report::{Report, Verdict};
use crate::suites;

#[derive(Clone, Debug)]
pub struct Options {
    /// Overrides the field of the ring declaration.
    pub field: Option<FieldSpec>,
    pub window: Option<DegreeWindow>,
    pub max_terms: Option<usize>,
    /// Colimit steps allowed when saturating (Čech stages beyond the first).
    pub max_sat_steps: usize,
    pub cache_dir: Option<PathBuf>,
    /// A declared module or filtration to use in place of `O_Y`.
    pub of: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options { field: None, window: None, max_terms: None, max_sat_steps: 6, cache_dir: None, of: None }
    }
}

impl Options {
    pub fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(t) = self.max_terms {
            l.max_terms = t;
        }
        l
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Rees,
    ExtRees,
    GrRing,
    Charts,
    Sections { twist: DegreeWindow },
    Cohomology { twist: DegreeWindow, max_h: usize },
    Bound { limit: i64 },
    RhoCert { level: i64 },
    Semiorth { scenario: String },
    Verify { suite: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rees => "rees",
            Command::ExtRees => "extrees",
            Command::GrRing => "grring",
            Command::Charts => "charts",
            Command::Sections { .. } => "sections",
            Command::Cohomology { .. } => "cohomology",
            Command::Bound { .. } => "bound",
            Command::RhoCert { .. } => "rho-cert",
            Command::Semiorth { .. } => "semiorth",
            Command::Verify { .. } => "verify",
        }
    }
}

pub const SCENARIOS: &[&str] = &["stratification", "strata-orthogonal", "torsion-vs-pushforward"];

/// Run `cmd` on `spec`. Errors are rejected input (exit 2) or exhausted
/// limits (exit 3); failed checks come back as a report with verdict `fail`.
pub fn run(spec: &ProblemSpec, cmd: &Command, opts: &Options) -> Result<Report> {
    if let Command::Verify { suite } = cmd {
        return suites::run_suite(suite, opts);
    }
    let spec = spec.clone().with_field(opts.field);
    match spec.ring.field {
        FieldSpec::Rationals => run_field::<Rational>(&spec, cmd, opts),
        FieldSpec::Prime(p) => {
            let got = set_prime(p);
            if got != p {
                return Err(AlgebraError::Malformed(format!("this session already works modulo {got}")));
            }
            run_field::<Fp>(&spec, cmd, opts)
        }
    }
}

struct Ctx<'a, F: Field> {
    spec: &'a ProblemSpec,
    opts: &'a Options,
    problem: Problem<F>,
}

impl<F: Field> Ctx<'_, F> {
    fn data(&self) -> Result<ReesData<F>> {
        self.spec.ideal_gens()?;
        let key = ProblemSpec { modules: Vec::new(), filtrations: Vec::new(), ..self.spec.clone() }.to_string();
        Ok(rees_data_cached(self.opts.cache_dir.as_deref(), &key, &self.problem.base, &self.problem.gens, self.opts.limits())?.0)
    }

    fn steps(&self) -> usize {
        self.opts.max_sat_steps
    }
}

fn run_field<F: Field>(spec: &ProblemSpec, cmd: &Command, opts: &Options) -> Result<Report> {
    let problem = spec.build::<F>(opts.limits())?;
    let cx = Ctx { spec, opts, problem };
    let mut r = Report::new(cmd.name());
    match cmd {
        Command::Rees => rees(&cx, &mut r)?,
        Command::ExtRees => extrees(&cx, &mut r)?,
        Command::GrRing => grring(&cx, &mut r)?,
        Command::Charts => charts(&cx, &mut r)?,
        Command::Sections { twist } => sections(&cx, *twist, &mut r)?,
        Command::Cohomology { twist, max_h } => cohomology(&cx, *twist, *max_h, &mut r)?,
        Command::Bound { limit } => bound(&cx, *limit, &mut r)?,
        Command::RhoCert { level } => rho_cert(&cx, *level, &mut r)?,
        Command::Semiorth { scenario } => semiorth(&cx, scenario, &mut r)?,
        Command::Verify { .. } => unreachable!("handled before field dispatch"),
    }
    Ok(r)
}

/// Printed generators, repeats dropped.
fn show<F: Field>(ps: &[Poly<F>], names: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for p in ps {
        let s = p.display(names).to_string();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn rees<F: Field>(cx: &Ctx<'_, F>, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let names = d.rees.names().to_vec();
    let rels = show(&d.rees_ideal, &names);
    r.entry(json!({ "variables": names, "relations": rels }), format!("{}[{}] / ({})", F::field_name(), names.join(", "), rels.join(", ")));
    Ok(())
}

/// Generators of `I^n`, or `R` for `n <= 0`, as vectors of rank one.
fn power_gens<F: Field>(d: &ReesData<F>, n: i64, limits: Limits) -> Result<Vec<Vec<Poly<F>>>> {
    if n <= 0 {
        return Ok(vec![vec![d.base.one()]]);
    }
    let i = Ideal::new(d.base.nvars(), d.gens.clone());
    Ok(i.power(n as u32, d.base.ideal(), limits)?.gens.into_iter().map(|g| vec![g]).collect())
}

/// Piece `n` of the extended Rees algebra maps isomorphically onto `I^n` (or `R`).
pub fn piece_is_power<F: Field>(d: &ReesData<F>, n: i64, limits: Limits) -> Result<bool> {
    let m = GradedModule::ring_module(d.ext.clone());
    let base = &d.base;
    let real = laurent_realization(&m, &[vec![base.one()]], n);
    let tgt = Subquotient::new(1, power_gens(d, n, limits)?, Vec::new());
    base::is_iso(base, &m.piece(n)?, &tgt, &real)
}

fn extrees<F: Field>(cx: &Ctx<'_, F>, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let names = d.ext.names().to_vec();
    let rels = show(&d.ext_ideal, &names);
    r.entry(json!({ "variables": names, "relations": rels }), format!("{}[{}] / ({})", F::field_name(), names.join(", "), rels.join(", ")));
    let w = cx.opts.window.unwrap_or(DegreeWindow::new(-3, 3));
    r.window = Some(w);
    let limits = cx.opts.limits();
    let checks = w.degrees().collect::<Vec<_>>().into_par_iter().map(|n| Ok((n, piece_is_power(&d, n, limits)?))).collect::<Result<Vec<_>>>()?;
    for (n, ok) in checks {
        let what = if n <= 0 { "R".to_string() } else { format!("I^{n}") };
        r.entry(json!({ "degree": n, "expected": what, "matches": ok }), format!("degree {n}: piece {} {what}", if ok { "is" } else { "is NOT" }));
        r.set_verdict(Verdict::from_pass(ok));
    }
    let back = u_equals_one_recovers_base(&d.ext, limits)?;
    r.certificate(json!({ "check": "u=1 recovers R", "pass": back }), format!("u = 1 recovers R: {back}"));
    r.set_verdict(Verdict::from_pass(back));
    Ok(())
}

fn grring<F: Field>(cx: &Ctx<'_, F>, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let g = assoc_graded(&d.ext)?;
    let names = g.names().to_vec();
    let rels = show(&g.ideal().gens, &names);
    r.entry(json!({ "variables": names, "relations": rels }), format!("gr = {}[{}] / ({})", F::field_name(), names.join(", "), rels.join(", ")));
    let w = cx.opts.window.unwrap_or(DegreeWindow::new(0, 4));
    r.window = Some(w);
    let m = GradedModule::ring_module(g.clone());
    for (deg, h) in w.degrees().zip(hilbert_data(&m, w)?) {
        let line = match h {
            HilbertEntry::Dim(k) => format!("degree {deg}: dim {k}"),
            HilbertEntry::Generators(g) => format!("degree {deg}: infinite, {g} generators"),
        };
        r.entry(json!({ "degree": deg, "hilbert": h }), line);
    }
    Ok(())
}

fn charts<F: Field>(cx: &Ctx<'_, F>, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let atlas = blowup_charts(&d.rees, cx.opts.limits())?;
    for c in &atlas.charts {
        let s = c.summary();
        let line = if s.empty { format!("chart {}: empty (unit ideal)", s.index) } else { format!("chart {}: k[{}] / ({})", s.index, s.variables.join(", "), s.relations.join(", ")) };
        r.entry(&s, line);
    }
    let empty = atlas.is_empty_space();
    r.certificate(json!({ "empty_blowup": empty }), format!("blowup is empty: {empty}"));
    Ok(())
}

/// `O_Y`, or the sheaf of a declared filtration (a bare module gets the `I`-adic one).
fn sheaf<F: Field>(cx: &Ctx<'_, F>, d: &ReesData<F>) -> Result<(String, GradedModule<F>)> {
    let Some(name) = &cx.opts.of else {
        return Ok(("O_Y".into(), GradedModule::ring_module(d.rees.clone())));
    };
    let p = &cx.problem;
    let f: FilteredModule<F> = if let Some((_, f)) = p.filtrations.iter().find(|(n, _)| n == name) {
        f.clone()
    } else if let Some((_, e)) = p.modules.iter().find(|(n, _)| n == name) {
        FilteredModule::adic(e.clone())
    } else {
        return Err(AlgebraError::Malformed(format!("no module or filtration named `{name}`")));
    };
    if let Some(v) = filtration_wellformed(&f, &d.ext)? {
        return Err(AlgebraError::Malformed(format!("filtration `{name}` violates {:?} at level {} generator {}", v.kind, v.level, v.generator)));
    }
    let m = rees_module(&f, &d.ext)?;
    Ok((format!("{name}~"), tau(&m, &d.rees)?))
}

fn sections<F: Field>(cx: &Ctx<'_, F>, twist: DegreeWindow, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let (label, m) = sheaf(cx, &d)?;
    r.window = Some(twist);
    let steps = cx.steps();
    let rows = twist.degrees().collect::<Vec<_>>().into_par_iter().map(|t| sections_with_comparison(&m, t, steps)).collect::<Result<Vec<_>>>()?;
    for (e, iso) in rows {
        let dim = e.kdim.map_or_else(|| format!("{} generators", e.generators), |k| format!("dim {k}"));
        let line = format!("H^0({label}({})): {dim}, M_{} -> H^0 {}, exponent {}", e.twist, e.twist, if iso { "iso" } else { "not iso" }, e.exponent);
        r.entry(json!({ "twist": e.twist, "kdim": e.kdim, "generators": e.generators, "is_zero": e.is_zero, "piece_isomorphic": iso, "exponent": e.exponent }), line);
    }
    Ok(())
}

fn cohomology<F: Field>(cx: &Ctx<'_, F>, twist: DegreeWindow, max_h: usize, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let (label, m) = sheaf(cx, &d)?;
    r.window = Some(twist);
    let steps = cx.steps();
    let rows = twist.degrees().collect::<Vec<_>>().into_par_iter().map(|t| Ok(cohomology_table(&m, DegreeWindow::new(t, t), max_h, steps)?.rows.remove(0))).collect::<Result<Vec<_>>>()?;
    for (t, cols) in rows {
        let cells: Vec<String> = cols.iter().map(|e| format!("h{}={}", e.index, e.kdim.map_or_else(|| format!("inf({} gens)", e.generators), |k| k.to_string()))).collect();
        r.entry(json!({ "twist": t, "columns": cols }), format!("{label}({t}): {}", cells.join(" ")));
    }
    Ok(())
}

fn bound<F: Field>(cx: &Ctx<'_, F>, limit: i64, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let m = GradedModule::ring_module(d.rees.clone());
    let c = stability_bound(&m, limit, cx.steps())?;
    r.window = Some(DegreeWindow::new(0, limit.max(0)));
    for ev in &c.evidence {
        let hi: Vec<String> = ev.higher.iter().map(|(i, z, k)| format!("H^{i} {}", if *z { "= 0".to_string() } else { format!("!= 0 (dim {})", k.map_or("inf".into(), |k| k.to_string())) })).collect();
        r.entry(ev, format!("m = {}: sections {} I^m; {}", ev.twist, if ev.sections_match { "=" } else { "!=" }, hi.join(", ")));
    }
    let line = match c.n {
        Some(n) => format!("effective bound n = {n} (checked up to {limit})"),
        None => format!("conditions fail at the limit {limit}"),
    };
    r.certificate(json!({ "n": c.n, "limit": c.limit }), line);
    r.set_verdict(Verdict::from_pass(c.n.is_some()));
    Ok(())
}

/// `Ō` scanned far enough to settle its torsion level, widening the scan
/// while the level is undecided, up to `cap`.
pub fn obar_with_level<F: Field>(d: &ReesData<F>, want: i64, cap: i64, steps: usize) -> Result<Obar<F>> {
    let mut max_level = want.max(1) + TORSION_RUN;
    loop {
        match obar_complex(d, max_level, steps) {
            Ok(o) if o.level().is_some() || max_level >= cap => return Ok(o),
            Err(AlgebraError::Inconclusive(_)) if max_level < cap => {}
            Ok(_) => {}
            Err(e) => return Err(e),
        }
        max_level = (max_level + 2).min(cap);
    }
}

fn rho_cert<F: Field>(cx: &Ctx<'_, F>, level: i64, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let cap = cx.opts.window.map_or(8, |w| w.hi).max(level + TORSION_RUN);
    let o = obar_with_level(&d, level, cap, cx.steps())?;
    let e = FreeBaseComplex { start: 0, ranks: vec![1] };
    let c = rho_n_certificate(&o, &e, level)?;
    r.window = Some(DegreeWindow::new(0, c.scanned.last().map_or(0, |s| s.0)));
    for (m, zero) in &c.scanned {
        r.entry(json!({ "level": m, "gr_vanishes": zero }), format!("gr^{m} of Obar {}", if *zero { "vanishes" } else { "does not vanish" }));
    }
    r.certificate(&c, format!("torsion level of Obar N = {}; rho at level {level}: {}", c.obar_level, if c.pass { "pass" } else { "fail" }));
    r.set_verdict(Verdict::from_pass(c.pass));
    Ok(())
}

fn semiorth<F: Field>(cx: &Ctx<'_, F>, scenario: &str, r: &mut Report) -> Result<()> {
    let d = cx.data()?;
    let k = ZModule::residue_field(&d.ext)?;
    let windows = SemiorthWindows { k_lo: 0, k_hi: 2, degrees: DegreeWindow::new(0, 0) };
    let strata =
        |lo: i64, hi: i64| -> Result<Vec<Family<F>>> { (lo..=hi).map(|n| Ok(Family { name: format!("i{n}"), objects: vec![FamilyObject::i_n(format!("i{n}(k)"), &k, n, &d.ext)?] })).collect() };
    let levels = cx.opts.window.unwrap_or(DegreeWindow::new(0, 2));
    let (families, claim) = match scenario {
        "stratification" => (strata(levels.lo, levels.hi)?, Claim::Semiorthogonal),
        "strata-orthogonal" => (strata(levels.lo, levels.hi)?, Claim::Orthogonal),
        "torsion-vs-pushforward" => {
            let o = obar_complex(&d, 2, cx.steps())?;
            let y = Family { name: "Y".into(), objects: vec![FamilyObject::new("Rf_*O_Y", o.pushforward)] };
            (vec![y, Family { name: "tors".into(), objects: vec![FamilyObject::i_n("i0(k)", &k, 0, &d.ext)?] }], Claim::Semiorthogonal)
        }
        other => return Err(AlgebraError::Malformed(format!("unknown scenario `{other}`; known: {}", SCENARIOS.join(", ")))),
    };
    let cert = semiorth_check(&families, claim, &windows, cx.opts.limits())?;
    for c in &cert.cells {
        let adj = c.adjunction.as_ref().map_or(String::new(), |a| format!(" [adjunction {:?} vs {:?}: {}]", a.ext_dim, a.hom_dim, if a.agree { "agree" } else { "DISAGREE" }));
        r.entry(c, format!("Ext^{}({}, {})_{} = {}{adj}", c.k, c.source, c.target, c.degree, c.kdim.map_or("?".into(), |k| k.to_string())));
    }
    let inconclusive = cert.cells.iter().any(|c| matches!(c.verdict, CellVerdict::Inconclusive(_)));
    r.certificate(
        json!({ "claim": cert.claim, "families": cert.families, "windows": cert.windows, "pass": cert.pass }),
        format!("{:?} claim: {}", cert.claim, if cert.pass { "pass" } else { "fail" }),
    );
    r.set_verdict(if inconclusive { Verdict::Inconclusive } else { Verdict::from_pass(cert.pass) });
    Ok(())
}
