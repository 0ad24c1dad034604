//! Buchberger's algorithm on free modules over a polynomial ring.
//!
//! Pair selection uses the sugar strategy; useless pairs are discarded with
//! the Gebauer–Möller update (chain criterion everywhere, product criterion
//! only for rank-one input, where it is valid).

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::mono::{ModuleOrder, Mono, MonoOrder, TermOrder};
use crate::poly::{Poly, Vector};

/// Resource limits for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of terms any intermediate element may carry.
    pub max_terms: usize,
    /// Largest number of S-pairs reduced in one computation.
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_terms: 200_000, max_pairs: 2_000_000 }
    }
}

type Key = SmallVec<[i32; 20]>;

fn push_degrevlex(m: &Mono, vars: impl DoubleEndedIterator<Item = usize> + Clone, out: &mut Key) {
    out.push(vars.clone().map(|i| m.0[i] as i32).sum());
    for i in vars.rev() {
        out.push(-(m.0[i] as i32));
    }
}

fn push_mono_key(order: &MonoOrder, m: &Mono, out: &mut Key) {
    match order {
        MonoOrder::DegRevLex => push_degrevlex(m, 0..m.nvars(), out),
        MonoOrder::Lex => out.extend(m.0.iter().map(|&e| e as i32)),
        MonoOrder::Block(blocks) => {
            for b in blocks {
                push_degrevlex(m, b.iter().copied(), out);
            }
        }
        MonoOrder::Weighted(w, tie) => {
            out.push(m.0.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum::<i64>() as i32);
            push_mono_key(tie, m, out);
        }
    }
}

/// Sort key realizing a term order as lexicographic comparison of integer vectors.
#[derive(Clone, Debug)]
pub(crate) struct Keyer {
    order: TermOrder,
}

impl Keyer {
    pub(crate) fn new(order: &TermOrder) -> Self {
        Keyer { order: order.clone() }
    }

    fn key(&self, m: &Mono, comp: u32) -> Key {
        let mut k = Key::new();
        if self.order.levels.is_some() {
            k.push(self.order.level(comp) as i32);
        }
        if self.order.module == ModuleOrder::Pot {
            k.push(-(comp as i32));
        }
        push_mono_key(&self.order.mono, m, &mut k);
        if self.order.module == ModuleOrder::Top {
            k.push(-(comp as i32));
        }
        k
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term<F> {
    key: Key,
    mono: Mono,
    comp: u32,
    coeff: F,
    mask: u64,
}

fn mask_of(m: &Mono) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.0.iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// Module element in engine representation: terms sorted by decreasing key.
#[derive(Clone, Debug)]
pub(crate) struct Elem<F> {
    terms: Vec<Term<F>>,
    sugar: u32,
}

impl<F: Field> Elem<F> {
    pub(crate) fn from_vector(v: &[Poly<F>], keyer: &Keyer) -> Self {
        let mut terms = Vec::new();
        for (c, p) in v.iter().enumerate() {
            for (m, a) in p.terms() {
                terms.push(Term { key: keyer.key(m, c as u32), mono: m.clone(), comp: c as u32, coeff: a.clone(), mask: mask_of(m) });
            }
        }
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        let sugar = terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0);
        Elem { terms, sugar }
    }

    pub(crate) fn to_vector(&self, rank: usize, nvars: usize) -> Vector<F> {
        let mut per: Vec<Vec<(Mono, F)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            per[t.comp as usize].push((t.mono.clone(), t.coeff.clone()));
        }
        per.into_iter().map(|ts| Poly::from_terms(nvars, ts)).collect()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Term<F> {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.inv();
                for t in &mut self.terms {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
    }

    /// `self - c * m * g`, restricted to terms from index `from` of `self`.
    fn sub_multiple(&self, from: usize, c: &F, m: &Mono, m_key: &Key, g: &Elem<F>) -> Vec<Term<F>> {
        let a = &self.terms[from..];
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let shifted = |t: &Term<F>| -> Term<F> {
            let mono = t.mono.mul(m);
            let mut key = t.key.clone();
            add_mono_key(&mut key, m_key);
            Term { key, mask: mask_of(&mono), mono, comp: t.comp, coeff: t.coeff.mul(c).neg() }
        };
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term<F>> = None;
        loop {
            if pending.is_none() && j < g.terms.len() {
                pending = Some(shifted(&g.terms[j]));
                j += 1;
            }
            match (a.get(i), pending.as_ref()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(pending.take().unwrap()),
                (Some(x), Some(y)) => match x.key.cmp(&y.key) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(pending.take().unwrap()),
                    Ordering::Equal => {
                        let s = x.coeff.add(&y.coeff);
                        if !s.is_zero() {
                            let mut t = x.clone();
                            t.coeff = s;
                            out.push(t);
                        }
                        pending = None;
                        i += 1;
                    }
                },
            }
        }
        out
    }
}

// The monomial part of a key is additive in the exponent vector; the
// component entries are untouched because the multiplier key has zeros there.
fn add_mono_key(key: &mut Key, m_key: &Key) {
    for (a, b) in key.iter_mut().zip(m_key.iter()) {
        *a += *b;
    }
}

#[derive(Clone)]
pub(crate) struct Engine<F: Field> {
    keyer: Keyer,
    nvars: usize,
    rank: usize,
    limits: Limits,
    _f: std::marker::PhantomData<F>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

impl<F: Field> Engine<F> {
    pub(crate) fn new(order: &TermOrder, nvars: usize, rank: usize, limits: Limits) -> Self {
        Engine { keyer: Keyer::new(order), nvars, rank, limits, _f: std::marker::PhantomData }
    }

    /// Key of a pure monomial multiplier: component slots are zero.
    fn multiplier_key(&self, m: &Mono) -> Key {
        let order = &self.keyer.order;
        let mut k = Key::new();
        if order.levels.is_some() {
            k.push(0);
        }
        if order.module == ModuleOrder::Pot {
            k.push(0);
        }
        push_mono_key(&order.mono, m, &mut k);
        if order.module == ModuleOrder::Top {
            k.push(0);
        }
        k
    }

    pub(crate) fn elem(&self, v: &[Poly<F>]) -> Elem<F> {
        Elem::from_vector(v, &self.keyer)
    }

    fn find_reducer(&self, t: &Term<F>, basis: &[Elem<F>], active: &[bool]) -> Option<usize> {
        basis.iter().enumerate().position(|(idx, g)| {
            if !active[idx] {
                return false;
            }
            let l = g.lead();
            l.comp == t.comp && (l.mask & !t.mask) == 0 && l.mono.divides(&t.mono)
        })
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n > self.limits.max_terms {
            Err(AlgebraError::ResourceLimit(format!("intermediate element with {n} terms exceeds cap {}", self.limits.max_terms)))
        } else {
            Ok(())
        }
    }

    /// Full reduction of `f` by the active basis elements.
    pub(crate) fn reduce(&self, f: Elem<F>, basis: &[Elem<F>], active: &[bool], top_only: bool) -> Result<Elem<F>> {
        let mut done: Vec<Term<F>> = Vec::new();
        let mut cur = f.terms;
        let mut sugar = f.sugar;
        let mut pos = 0;
        while pos < cur.len() {
            let t = &cur[pos];
            match self.find_reducer(t, basis, active) {
                Some(idx) => {
                    let g = &basis[idx];
                    let lead = g.lead();
                    let m = lead.mono.quotient_of(&t.mono);
                    let c = t.coeff.div(&lead.coeff);
                    sugar = sugar.max(g.sugar + m.degree());
                    let mk = self.multiplier_key(&m);
                    let tmp = Elem { terms: std::mem::take(&mut cur), sugar: 0 };
                    cur = tmp.sub_multiple(pos, &c, &m, &mk, g);
                    pos = 0;
                    self.check_size(cur.len() + done.len())?;
                }
                None => {
                    if top_only && done.is_empty() {
                        // leading term irreducible: stop
                        return Ok(Elem { terms: cur.split_off(pos), sugar });
                    }
                    done.push(cur[pos].clone());
                    pos += 1;
                    // drop processed prefix lazily
                    if pos > 64 {
                        cur.drain(..pos);
                        pos = 0;
                    }
                }
            }
        }
        done.extend(cur.drain(pos..));
        Ok(Elem { terms: done, sugar })
    }

    fn spoly(&self, f: &Elem<F>, g: &Elem<F>, lcm: &Mono) -> Elem<F> {
        let (lf, lg) = (f.lead(), g.lead());
        let mf = lf.mono.quotient_of(lcm);
        let mg = lg.mono.quotient_of(lcm);
        let kf = self.multiplier_key(&mf);
        let kg = self.multiplier_key(&mg);
        // (lcm/lf)/cf * f - (lcm/lg)/cg * g
        let cf = lf.coeff.inv();
        let cg = lg.coeff.inv();
        let zero = Elem { terms: Vec::new(), sugar: 0 };
        let first = zero.sub_multiple(0, &cf.neg(), &mf, &kf, f);
        let tmp = Elem { terms: first, sugar: 0 };
        let mut terms = tmp.sub_multiple(0, &cg, &mg, &kg, g);
        // leading terms cancel exactly
        terms.retain(|t| !t.coeff.is_zero());
        let sugar = (f.sugar + mf.degree()).max(g.sugar + mg.degree());
        Elem { terms, sugar }
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`.
    pub(crate) fn groebner(&self, gens: &[Vector<F>]) -> Result<Vec<Elem<F>>> {
        let mut basis: Vec<Elem<F>> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let ideal_case = self.rank == 1;

        let mut input: Vec<Elem<F>> = gens.iter().map(|v| self.elem(v)).filter(|e| !e.is_zero()).collect();
        input.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
        for f in input {
            let mut h = self.reduce(f, &basis, &active, false)?;
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            self.update(&mut basis, &mut active, &mut pairs, h, ideal_case);
        }

        let mut processed = 0usize;
        while !pairs.is_empty() {
            // smallest sugar, then smallest lcm
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.sugar.cmp(&pb.sugar).then_with(|| {
                        let ka = self.keyer.key(&pa.lcm, basis[pa.i].lead().comp);
                        let kb = self.keyer.key(&pb.lcm, basis[pb.i].lead().comp);
                        ka.cmp(&kb)
                    })
                })
                .unwrap();
            let p = pairs.swap_remove(best);
            processed += 1;
            if processed > self.limits.max_pairs {
                return Err(AlgebraError::ResourceLimit(format!("more than {} S-pairs", self.limits.max_pairs)));
            }
            let s = self.spoly(&basis[p.i], &basis[p.j], &p.lcm);
            if s.is_zero() {
                continue;
            }
            let mut h = self.reduce(s, &basis, &active, true)?;
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            self.update(&mut basis, &mut active, &mut pairs, h, ideal_case);
        }

        // minimal basis, then interreduce tails
        let mut mins: Vec<Elem<F>> = Vec::new();
        for (idx, g) in basis.iter().enumerate() {
            if !active[idx] {
                continue;
            }
            let l = g.lead();
            let redundant = basis.iter().enumerate().any(|(k, o)| {
                k != idx && active[k] && {
                    let lo = o.lead();
                    lo.comp == l.comp && lo.mono.divides(&l.mono) && (lo.mono != l.mono || k < idx)
                }
            });
            if !redundant {
                mins.push(g.clone());
            }
        }
        let all = vec![true; mins.len()];
        let mut out = Vec::with_capacity(mins.len());
        for i in 0..mins.len() {
            let mut others = all.clone();
            others[i] = false;
            let g = mins[i].clone();
            let head = Elem { terms: vec![g.terms[0].clone()], sugar: g.sugar };
            let tail = Elem { terms: g.terms[1..].to_vec(), sugar: g.sugar };
            let tail = self.reduce(tail, &mins, &others, false)?;
            let mut terms = head.terms;
            terms.extend(tail.terms);
            let mut e = Elem { terms, sugar: g.sugar };
            e.make_monic();
            out.push(e);
        }
        out.sort_by(|a, b| b.lead().key.cmp(&a.lead().key));
        Ok(out)
    }

    fn update(&self, basis: &mut Vec<Elem<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Elem<F>, ideal_case: bool) {
        let hl = h.lead().clone();
        let k = basis.len();
        let sugar_of = |g: &Elem<F>, lcm: &Mono| -> u32 {
            let gl = g.lead();
            (g.sugar + lcm.degree() - gl.mono.degree()).max(h.sugar + lcm.degree() - hl.mono.degree())
        };
        // candidate pairs (g, h)
        let mut cands: Vec<(usize, Mono, bool)> = Vec::new();
        for (idx, g) in basis.iter().enumerate() {
            if !active[idx] || g.lead().comp != hl.comp {
                continue;
            }
            let gl = g.lead();
            let lcm = gl.mono.lcm(&hl.mono);
            let coprime = ideal_case && gl.mono.is_coprime(&hl.mono);
            cands.push((idx, lcm, coprime));
        }
        // criterion M: drop pairs whose lcm is a proper multiple of another lcm
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                    // among equal lcms keep one, preferring a coprime one
                    if cands[b].1 == cands[a].1 && cands[a].2 && !cands[b].2 {
                        continue;
                    }
                    keep[a] = false;
                    break;
                }
            }
        }
        // criterion B on old pairs
        pairs.retain(|p| {
            let pc = basis[p.i].lead().comp;
            if pc != hl.comp || !hl.mono.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead().mono.lcm(&hl.mono);
            let lj = basis[p.j].lead().mono.lcm(&hl.mono);
            li == p.lcm || lj == p.lcm
        });
        for (c, (idx, lcm, coprime)) in cands.into_iter().enumerate() {
            if keep[c] && !coprime {
                let sugar = sugar_of(&basis[idx], &lcm);
                pairs.push(Pair { i: idx, j: k, lcm, sugar });
            }
        }
        for idx in 0..basis.len() {
            if active[idx] {
                let gl = basis[idx].lead();
                if gl.comp == hl.comp && hl.mono.divides(&gl.mono) {
                    active[idx] = false;
                }
            }
        }
        basis.push(h);
        active.push(true);
    }

    /// Reduce a vector to normal form by a (reduced) basis.
    pub(crate) fn normal_form(&self, v: &[Poly<F>], basis: &[Elem<F>]) -> Result<Vector<F>> {
        let active = vec![true; basis.len()];
        let r = self.reduce(self.elem(v), basis, &active, false)?;
        Ok(r.to_vector(self.rank, self.nvars))
    }

    pub(crate) fn lead_of(e: &Elem<F>) -> (Mono, u32) {
        let l = e.lead();
        (l.mono.clone(), l.comp)
    }

    pub(crate) fn to_vectors(&self, elems: &[Elem<F>]) -> Vec<Vector<F>> {
        elems.iter().map(|e| e.to_vector(self.rank, self.nvars)).collect()
    }

    pub(crate) fn sugar_free_spoly(&self, f: &Elem<F>, g: &Elem<F>) -> Option<Elem<F>> {
        let (lf, lg) = (f.lead(), g.lead());
        if lf.comp != lg.comp {
            return None;
        }
        let lcm = lf.mono.lcm(&lg.mono);
        Some(self.spoly(f, g, &lcm))
    }
}

pub(crate) fn elem_is_zero<F: Field>(e: &Elem<F>) -> bool {
    e.is_zero()
}
