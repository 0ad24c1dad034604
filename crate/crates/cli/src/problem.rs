//! Problem files: a ring, an ideal, and optional modules and filtrations.
//!
//! ```text
//! # comments run to the end of the line
//! ring R = QQ[x, y] / (x^2 - y^3);
//! ideal I = (x, y);
//! module E = R^2 / ([x, 0], [0, y]);
//! filtration F of E { level 1: [x, 0], [0, 1]; level 2: [x^2, 0], [0, y]; }
//! ```
//!
//! Polynomials are stored in the printed form of their parse over the
//! rationals, so printing and re-parsing is the identity.

use std::fmt::{self, Write as _};

use blowup_core::base::{BaseRing, Subquotient};
use blowup_core::parse::{tokenize, Cursor, Tok};
use blowup_core::rees::FilteredModule;
use blowup_core::{AlgebraError, Field, Limits, Poly, Rational, Result, Vector};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "FP{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s.strip_prefix("FP").map(|r| r.trim_start_matches('<').trim_end_matches('>'));
        match digits.and_then(|d| d.parse::<u32>().ok()) {
            Some(p) if is_prime(p) => Ok(FieldSpec::Prime(p)),
            Some(p) => Err(format!("{p} is not prime")),
            None => Err(format!("unknown field `{s}`; expected QQ or FP<p>")),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u64| d * d <= p as u64).all(|d| !(p as u64).is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealDecl {
    pub name: String,
    pub gens: Vec<String>,
}

/// `R^rank / (relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleDecl {
    pub name: String,
    pub rank: usize,
    pub relations: Vec<Vec<String>>,
}

/// Levels `F^1, .., F^s` of a filtration on a declared module; `F^0` is the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationDecl {
    pub name: String,
    pub module: String,
    pub levels: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemSpec {
    pub ring: RingDecl,
    pub ideal: Option<IdealDecl>,
    pub modules: Vec<ModuleDecl>,
    pub filtrations: Vec<FiltrationDecl>,
}

/// A spec instantiated over a concrete field.
pub struct Problem<F: Field> {
    pub base: BaseRing<F>,
    pub gens: Vec<Poly<F>>,
    pub modules: Vec<(String, Subquotient<F>)>,
    pub filtrations: Vec<(String, FilteredModule<F>)>,
}

fn canonical(c: &mut Cursor<'_>, names: &[String]) -> Result<String> {
    let p: Poly<Rational> = c.parse_poly(names)?;
    Ok(p.display(names).to_string())
}

fn poly_list(c: &mut Cursor<'_>, names: &[String]) -> Result<Vec<String>> {
    c.expect_sym('(')?;
    let mut out = Vec::new();
    if c.at_sym(')') {
        c.next();
        return Ok(out);
    }
    loop {
        out.push(canonical(c, names)?);
        if c.at_sym(',') {
            c.next();
        } else if c.at_sym(')') {
            c.next();
            return Ok(out);
        } else {
            return Err(c.error("one of `,` `)` or an operator"));
        }
    }
}

fn vector(c: &mut Cursor<'_>, names: &[String], rank: usize) -> Result<Vec<String>> {
    let (line, col) = (c.peek().line, c.peek().col);
    c.expect_sym('[')?;
    let mut out = Vec::new();
    loop {
        out.push(canonical(c, names)?);
        if c.at_sym(',') {
            c.next();
        } else if c.at_sym(']') {
            c.next();
            break;
        } else {
            return Err(c.error("one of `,` `]` or an operator"));
        }
    }
    if out.len() != rank {
        return Err(AlgebraError::Parse { line, col, expected: format!("a vector with {rank} entries, found {}", out.len()) });
    }
    Ok(out)
}

fn field(c: &mut Cursor<'_>) -> Result<FieldSpec> {
    let t = c.peek().clone();
    let Tok::Ident(id) = &t.tok else {
        return Err(c.error("one of `QQ` `FP<p>`"));
    };
    c.next();
    let text = if id == "FP" && c.at_sym('<') {
        c.next();
        let p = c.expect_int()?;
        c.expect_sym('>')?;
        format!("FP{p}")
    } else {
        id.clone()
    };
    text.parse().map_err(|e: String| AlgebraError::Parse { line: t.line, col: t.col, expected: e })
}

fn ring(c: &mut Cursor<'_>) -> Result<RingDecl> {
    c.expect_keyword("ring")?;
    let name = c.expect_ident()?;
    c.expect_sym('=')?;
    let field = field(c)?;
    c.expect_sym('[')?;
    let mut vars = Vec::new();
    loop {
        let (line, col) = (c.peek().line, c.peek().col);
        let v = c.expect_ident()?;
        if vars.contains(&v) || v == name {
            return Err(AlgebraError::Parse { line, col, expected: format!("a fresh variable name, found `{v}` again") });
        }
        vars.push(v);
        if c.at_sym(',') {
            c.next();
        } else if c.at_sym(']') {
            c.next();
            break;
        } else {
            return Err(c.error("one of `,` `]`"));
        }
    }
    let relations = if c.at_sym('/') {
        c.next();
        poly_list(c, &vars)?
    } else {
        Vec::new()
    };
    c.expect_sym(';')?;
    Ok(RingDecl { name, field, vars, relations })
}

fn module(c: &mut Cursor<'_>, ring: &RingDecl) -> Result<ModuleDecl> {
    c.expect_keyword("module")?;
    let name = c.expect_ident()?;
    c.expect_sym('=')?;
    c.expect_keyword(&ring.name)?;
    let rank = if c.at_sym('^') {
        c.next();
        let r = c.expect_i64()?;
        usize::try_from(r).ok().filter(|&r| r > 0).ok_or_else(|| c.error("a positive rank"))?
    } else {
        1
    };
    let mut relations = Vec::new();
    if c.at_sym('/') {
        c.next();
        c.expect_sym('(')?;
        if c.at_sym(')') {
            c.next();
        } else {
            loop {
                relations.push(vector(c, &ring.vars, rank)?);
                if c.at_sym(',') {
                    c.next();
                } else if c.at_sym(')') {
                    c.next();
                    break;
                } else {
                    return Err(c.error("one of `,` `)`"));
                }
            }
        }
    }
    c.expect_sym(';')?;
    Ok(ModuleDecl { name, rank, relations })
}

fn filtration(c: &mut Cursor<'_>, ring: &RingDecl, modules: &[ModuleDecl]) -> Result<FiltrationDecl> {
    c.expect_keyword("filtration")?;
    let name = c.expect_ident()?;
    c.expect_keyword("of")?;
    let (line, col) = (c.peek().line, c.peek().col);
    let module = c.expect_ident()?;
    let Some(m) = modules.iter().find(|m| m.name == module) else {
        return Err(AlgebraError::Parse { line, col, expected: format!("a declared module, found `{module}`") });
    };
    c.expect_sym('{')?;
    let mut levels = Vec::new();
    while !c.at_sym('}') {
        c.expect_keyword("level")?;
        let (line, col) = (c.peek().line, c.peek().col);
        let n = c.expect_i64()?;
        if n != levels.len() as i64 + 1 {
            return Err(AlgebraError::Parse { line, col, expected: format!("level {}", levels.len() + 1) });
        }
        c.expect_sym(':')?;
        let mut gens = Vec::new();
        loop {
            gens.push(vector(c, &ring.vars, m.rank)?);
            if c.at_sym(',') {
                c.next();
            } else if c.at_sym(';') {
                c.next();
                break;
            } else {
                return Err(c.error("one of `,` `;`"));
            }
        }
        levels.push(gens);
    }
    c.expect_sym('}')?;
    if c.at_sym(';') {
        c.next();
    }
    Ok(FiltrationDecl { name, module, levels })
}

fn taken(names: &[&str], c: &Cursor<'_>, name: &str) -> Result<()> {
    if names.contains(&name) {
        let t = c.peek();
        return Err(AlgebraError::Parse { line: t.line, col: t.col, expected: format!("a fresh name, `{name}` is already declared") });
    }
    Ok(())
}

pub fn parse(src: &str) -> Result<ProblemSpec> {
    let toks = tokenize(src)?;
    let mut c = Cursor::new(&toks);
    let ring = ring(&mut c)?;
    let mut ideal = None;
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut filtrations: Vec<FiltrationDecl> = Vec::new();
    while !c.at_eof() {
        let kw = match &c.peek().tok {
            Tok::Ident(k) => k.clone(),
            _ => String::new(),
        };
        let mut names: Vec<&str> = vec![ring.name.as_str()];
        names.extend(ideal.iter().map(|i: &IdealDecl| i.name.as_str()));
        names.extend(modules.iter().map(|m| m.name.as_str()));
        names.extend(filtrations.iter().map(|f| f.name.as_str()));
        match kw.as_str() {
            "ideal" if ideal.is_none() => {
                c.next();
                let name = c.expect_ident()?;
                taken(&names, &c, &name)?;
                c.expect_sym('=')?;
                let gens = poly_list(&mut c, &ring.vars)?;
                c.expect_sym(';')?;
                ideal = Some(IdealDecl { name, gens });
            }
            "module" => {
                let save = c.pos;
                c.next();
                let name = c.expect_ident()?;
                taken(&names, &c, &name)?;
                c.pos = save;
                modules.push(module(&mut c, &ring)?);
            }
            "filtration" => {
                let save = c.pos;
                c.next();
                let name = c.expect_ident()?;
                taken(&names, &c, &name)?;
                c.pos = save;
                filtrations.push(filtration(&mut c, &ring, &modules)?);
            }
            _ if ideal.is_none() => return Err(c.error("one of `ideal` `module` `filtration` or end of input")),
            _ => return Err(c.error("one of `module` `filtration` or end of input")),
        }
    }
    Ok(ProblemSpec { ring, ideal, modules, filtrations })
}

fn write_list(out: &mut String, items: &[String]) {
    let _ = write!(out, "({})", items.join(", "));
}

fn write_vectors(out: &mut String, vs: &[Vec<String>]) {
    let parts: Vec<String> = vs.iter().map(|v| format!("[{}]", v.join(", "))).collect();
    out.push_str(&parts.join(", "));
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        let mut out = format!("ring {} = {}[{}]", r.name, r.field, r.vars.join(", "));
        if !r.relations.is_empty() {
            out.push_str(" / ");
            write_list(&mut out, &r.relations);
        }
        out.push_str(";\n");
        if let Some(i) = &self.ideal {
            let _ = write!(out, "ideal {} = ", i.name);
            write_list(&mut out, &i.gens);
            out.push_str(";\n");
        }
        for m in &self.modules {
            let _ = write!(out, "module {} = {}", m.name, r.name);
            if m.rank != 1 {
                let _ = write!(out, "^{}", m.rank);
            }
            if !m.relations.is_empty() {
                out.push_str(" / (");
                write_vectors(&mut out, &m.relations);
                out.push(')');
            }
            out.push_str(";\n");
        }
        for fl in &self.filtrations {
            let _ = writeln!(out, "filtration {} of {} {{", fl.name, fl.module);
            for (i, gens) in fl.levels.iter().enumerate() {
                let _ = write!(out, "  level {}: ", i + 1);
                write_vectors(&mut out, gens);
                out.push_str(";\n");
            }
            out.push_str("}\n");
        }
        f.write_str(&out)
    }
}

impl ProblemSpec {
    pub fn with_field(mut self, field: Option<FieldSpec>) -> Self {
        if let Some(f) = field {
            self.ring.field = f;
        }
        self
    }

    pub fn ideal_gens(&self) -> Result<&[String]> {
        self.ideal.as_ref().map(|i| i.gens.as_slice()).ok_or_else(|| AlgebraError::Malformed("this command needs an `ideal` declaration".into()))
    }

    /// Instantiate over `F`; the caller installs the prime for `Fp` first.
    pub fn build<F: Field>(&self, limits: Limits) -> Result<Problem<F>> {
        let names = &self.ring.vars;
        let p = |s: &String| blowup_core::parse::parse_poly::<F>(s, names);
        let rels = self.ring.relations.iter().map(p).collect::<Result<Vec<_>>>()?;
        let base = BaseRing::new(names.clone(), rels, limits)?;
        let gens = match &self.ideal {
            Some(i) => i.gens.iter().map(p).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let vec_of = |v: &Vec<String>| v.iter().map(p).collect::<Result<Vector<F>>>();
        let mut modules = Vec::new();
        for m in &self.modules {
            let rels = m.relations.iter().map(vec_of).collect::<Result<Vec<_>>>()?;
            modules.push((m.name.clone(), Subquotient::cokernel(m.rank, names.len(), rels)));
        }
        let mut filtrations = Vec::new();
        for fl in &self.filtrations {
            let (_, e) = modules.iter().find(|(n, _)| *n == fl.module).expect("checked at parse time");
            let higher = fl.levels.iter().map(|l| l.iter().map(vec_of).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            filtrations.push((fl.name.clone(), FilteredModule::new(e.clone(), higher)));
        }
        Ok(Problem { base, gens, modules, filtrations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "# a cusp\nring R = QQ[x, y] / (x^2 - y^3);\nideal I = (x, y);\nmodule E = R^2 / ([x, 0], [0, y]);\nfiltration F of E { level 1: [x, 0], [0, 1]; level 2: [x^2, 0], [0, y]; }\n";

    #[test]
    fn parses_the_plane() {
        let s = parse("ring R = QQ[x,y]; ideal I = (x,y);").unwrap();
        assert_eq!(s.ring.vars, ["x", "y"]);
        assert_eq!(s.ideal.unwrap().gens, ["x", "y"]);
    }

    #[test]
    fn parses_the_nilpotent_ring() {
        let s = parse("ring R = QQ[x]/(x^2); ideal I = (x);").unwrap();
        assert_eq!(s.ring.relations, ["x^2"]);
    }

    #[test]
    fn unterminated_ideal_fails_at_eof() {
        let err = parse("ring R = QQ[x,y];\nideal I = (x").unwrap_err();
        match err {
            AlgebraError::Parse { line, col, expected } => {
                assert_eq!((line, col), (2, 13));
                assert!(expected.contains("`,`") && expected.contains("`)`"), "{expected}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn full_spec_round_trips() {
        let s = parse(FULL).unwrap();
        assert_eq!(s.modules[0].rank, 2);
        assert_eq!(s.filtrations[0].levels.len(), 2);
        let printed = s.to_string();
        assert_eq!(parse(&printed).unwrap(), s);
        assert_eq!(parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn prime_fields() {
        assert_eq!(parse("ring R = FP7[x]; ideal I = (x);").unwrap().ring.field, FieldSpec::Prime(7));
        assert_eq!(parse("ring R = FP<101>[x];").unwrap().ring.field, FieldSpec::Prime(101));
        assert!(matches!(parse("ring R = FP8[x];"), Err(AlgebraError::Parse { .. })));
    }

    #[test]
    fn polynomials_are_canonical() {
        let s = parse("ring R = QQ[x,y]; ideal I = (y*x + x*y, 2/4*x^2);").unwrap();
        assert_eq!(s.ideal.unwrap().gens, ["2*x*y", "1/2*x^2"]);
    }

    #[test]
    fn rejects_bad_input() {
        for src in [
            "ideal I = (x);",
            "ring R = QQ[x,x];",
            "ring R = QQ[x]; module E = R^2 / ([x]);",
            "ring R = QQ[x]; filtration F of E { }",
            "ring R = QQ[x]; ideal I = (x); ideal J = (x);",
            "ring R = QQ[x]; ideal R = (x);",
        ] {
            assert!(matches!(parse(src), Err(AlgebraError::Parse { .. })), "{src}");
        }
    }

    #[test]
    fn builds_over_both_fields() {
        let s = parse(FULL).unwrap();
        let p = s.build::<Rational>(Limits::default()).unwrap();
        assert_eq!(p.gens.len(), 2);
        assert_eq!(p.filtrations[0].1.s(), 2);
    }
}
