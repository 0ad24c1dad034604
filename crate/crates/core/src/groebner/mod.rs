//! Gröbner bases of submodules of free modules, syzygies, lifting and the
//! ideal operations built from them.

mod engine;
mod ideal;

use std::collections::HashSet;

use crate::error::Result;
use crate::field::Field;
use crate::mono::{ModuleOrder, Mono, MonoOrder, TermOrder};
use crate::poly::{vector, Poly, Vector};

pub use engine::Limits;
pub use ideal::{kernel_of_ring_map, Ideal};

use engine::{Elem, Engine};

/// Reduced Gröbner basis of a submodule of `k[x]^rank`.
#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    engine: Engine<F>,
    elems: Vec<Elem<F>>,
    order: TermOrder,
    rank: usize,
    nvars: usize,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn new(gens: &[Vector<F>], rank: usize, nvars: usize, order: &TermOrder, limits: Limits) -> Result<Self> {
        for g in gens {
            if g.len() != rank {
                return Err(crate::AlgebraError::OrderMismatch(format!("vector of length {} in rank {rank}", g.len())));
            }
        }
        let engine = Engine::new(order, nvars, rank, limits);
        let elems = engine.groebner(gens)?;
        Ok(GroebnerBasis { engine, elems, order: order.clone(), rank, nvars })
    }

    /// Basis of an ideal of `k[x]`.
    pub fn ideal(gens: &[Poly<F>], nvars: usize, order: &MonoOrder, limits: Limits) -> Result<Self> {
        let vs: Vec<Vector<F>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::new(&vs, 1, nvars, &TermOrder::new(order.clone()), limits)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis vectors, monic, sorted by decreasing leading term.
    pub fn basis(&self) -> Vec<Vector<F>> {
        self.engine.to_vectors(&self.elems)
    }

    /// Rank-one convenience: the basis polynomials.
    pub fn polys(&self) -> Vec<Poly<F>> {
        self.basis().into_iter().map(|mut v| v.swap_remove(0)).collect()
    }

    pub fn leading_terms(&self) -> Vec<(Mono, u32)> {
        self.elems.iter().map(Engine::lead_of).collect()
    }

    pub fn reduce(&self, v: &[Poly<F>]) -> Result<Vector<F>> {
        self.engine.normal_form(v, &self.elems)
    }

    pub fn reduce_poly(&self, p: &Poly<F>) -> Result<Poly<F>> {
        Ok(self.reduce(std::slice::from_ref(p))?.swap_remove(0))
    }

    pub fn contains(&self, v: &[Poly<F>]) -> Result<bool> {
        Ok(vector::is_zero(&self.reduce(v)?))
    }

    /// True when the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        let mut comps = HashSet::new();
        for (m, c) in self.leading_terms() {
            if m.is_one() {
                comps.insert(c);
            }
        }
        comps.len() == self.rank
    }

    /// Every S-vector of the basis reduces to zero.
    pub fn satisfies_buchberger(&self) -> Result<bool> {
        let all = vec![true; self.elems.len()];
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if let Some(s) = self.engine.sugar_free_spoly(&self.elems[i], &self.elems[j]) {
                    let r = self.engine.reduce(s, &self.elems, &all, false)?;
                    if !engine::elem_is_zero(&r) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `k`-dimension of the quotient `k[x]^rank / M`, or `None` if infinite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        let leads = self.leading_terms();
        let mut total = 0usize;
        for comp in 0..self.rank as u32 {
            let mine: Vec<&Mono> = leads.iter().filter(|(_, c)| *c == comp).map(|(m, _)| m).collect();
            // a pure power of every variable must appear
            let mut bound = vec![0u16; self.nvars];
            for (i, b) in bound.iter_mut().enumerate() {
                let pure = mine.iter().filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0)).map(|m| m.0[i]).min();
                {
                    let p = pure?;
                    *b = p
                }
            }
            if mine.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut cur = vec![0u16; self.nvars];
            total += count_standard(&mine, &bound, &mut cur, 0);
        }
        Some(total)
    }

    /// Standard monomials `(mono, comp)` of a finite-dimensional quotient, in a fixed order.
    pub fn standard_monomials(&self) -> Option<Vec<(Mono, u32)>> {
        self.quotient_dimension()?;
        let leads = self.leading_terms();
        let mut out = Vec::new();
        for comp in 0..self.rank as u32 {
            let mine: Vec<&Mono> = leads.iter().filter(|(_, c)| *c == comp).map(|(m, _)| m).collect();
            if mine.iter().any(|m| m.is_one()) {
                continue;
            }
            let bound: Vec<u16> = (0..self.nvars).map(|i| mine.iter().filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0)).map(|m| m.0[i]).min().unwrap()).collect();
            let mut cur = vec![0u16; self.nvars];
            collect_standard(&mine, &bound, &mut cur, 0, comp, &mut out);
        }
        Some(out)
    }
}

fn count_standard(leads: &[&Mono], bound: &[u16], cur: &mut Vec<u16>, i: usize) -> usize {
    let mut out = Vec::new();
    collect_standard(leads, bound, cur, i, 0, &mut out);
    out.len()
}

fn collect_standard(leads: &[&Mono], bound: &[u16], cur: &mut Vec<u16>, i: usize, comp: u32, out: &mut Vec<(Mono, u32)>) {
    let m = Mono::from_slice(cur);
    if leads.iter().any(|l| l.divides(&m)) {
        return;
    }
    if i == cur.len() {
        out.push((m, comp));
        return;
    }
    for e in 0..bound[i] {
        cur[i] = e;
        collect_standard(leads, bound, cur, i + 1, comp, out);
        // divisibility is monotone in each exponent
        let probe = Mono::from_slice(cur);
        if leads.iter().any(|l| l.divides(&probe)) {
            break;
        }
    }
    cur[i] = 0;
}

/// Gröbner basis of the graph module `[g_i | e_i]` together with relations
/// `[r_j | 0]`. Components of the original module carry a higher level, so
/// reduction of `[v | 0]` decides membership and yields cofactors, and basis
/// elements supported in the cofactor block generate the syzygies.
#[derive(Clone)]
pub struct Lifter<F: Field> {
    gb: GroebnerBasis<F>,
    rank: usize,
    ngens: usize,
}

impl<F: Field> Lifter<F> {
    pub fn new(gens: &[Vector<F>], rels: &[Vector<F>], rank: usize, nvars: usize, limits: Limits) -> Result<Self> {
        let m = gens.len();
        let mut rows = Vec::with_capacity(m + rels.len());
        for (i, g) in gens.iter().enumerate() {
            rows.push(vector::concat(g, &vector::unit(m, nvars, i)));
        }
        for r in rels {
            rows.push(vector::concat(r, &vector::zero(m, nvars)));
        }
        let mut levels = vec![1u32; rank];
        levels.extend(std::iter::repeat_n(0, m));
        let order = TermOrder { mono: MonoOrder::DegRevLex, module: ModuleOrder::Top, levels: Some(levels) };
        let gb = GroebnerBasis::new(&rows, rank + m, nvars, &order, limits)?;
        Ok(Lifter { gb, rank, ngens: m })
    }

    /// Cofactors `c` with `v = sum c_i g_i` modulo the relations, if `v` lies in the span.
    pub fn lift(&self, v: &[Poly<F>]) -> Result<Option<Vec<Poly<F>>>> {
        let nvars = self.gb.nvars();
        let row = vector::concat(v, &vector::zero(self.ngens, nvars));
        let r = self.gb.reduce(&row)?;
        if !vector::is_zero(&r[..self.rank]) {
            return Ok(None);
        }
        Ok(Some(r[self.rank..].iter().map(|p| p.neg()).collect()))
    }

    pub fn contains(&self, v: &[Poly<F>]) -> Result<bool> {
        Ok(self.lift(v)?.is_some())
    }

    /// Generators of the syzygy module of the `g_i` modulo the relations.
    pub fn syzygies(&self) -> Vec<Vector<F>> {
        let leads = self.gb.leading_terms();
        self.gb.basis().into_iter().zip(leads).filter(|(_, (_, c))| (*c as usize) >= self.rank).map(|(v, _)| v[self.rank..].to_vec()).collect()
    }
}

/// Syzygies of `gens` modulo `rels` in `k[x]^rank`.
pub fn syzygies<F: Field>(gens: &[Vector<F>], rels: &[Vector<F>], rank: usize, nvars: usize, limits: Limits) -> Result<Vec<Vector<F>>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    Ok(Lifter::new(gens, rels, rank, nvars, limits)?.syzygies())
}

/// Module quotient `(M : f) = { v : f v in M }` for `M` spanned by `gens`.
pub fn module_quotient<F: Field>(gens: &[Vector<F>], f: &Poly<F>, rank: usize, nvars: usize, limits: Limits) -> Result<Vec<Vector<F>>> {
    let mut cols: Vec<Vector<F>> = (0..rank).map(|k| vector::scale(&vector::unit(rank, nvars, k), f)).collect();
    cols.extend(gens.iter().cloned());
    let syz = syzygies(&cols, &[], rank, nvars, limits)?;
    Ok(syz.into_iter().map(|s| s[..rank].to_vec()).filter(|v| !vector::is_zero(v)).collect())
}

/// Intersection of two submodules of `k[x]^rank`.
pub fn intersect<F: Field>(a: &[Vector<F>], b: &[Vector<F>], rank: usize, nvars: usize, limits: Limits) -> Result<Vec<Vector<F>>> {
    let mut cols = a.to_vec();
    cols.extend(b.iter().cloned());
    let syz = syzygies(&cols, &[], rank, nvars, limits)?;
    Ok(syz.into_iter().map(|s| vector::combine(&s[..a.len()], a, rank, nvars)).filter(|v| !vector::is_zero(v)).collect())
}

/// Saturation `(M : J^inf)` by iterated quotients until the basis stabilizes.
pub fn saturate<F: Field>(gens: &[Vector<F>], by: &[Poly<F>], rank: usize, nvars: usize, max_steps: usize, limits: Limits) -> Result<Vec<Vector<F>>> {
    let order = TermOrder::default();
    let mut cur = GroebnerBasis::new(gens, rank, nvars, &order, limits)?;
    for _ in 0..max_steps {
        let basis = cur.basis();
        // (M : J) = intersection over generators of J
        let mut acc: Option<Vec<Vector<F>>> = None;
        for f in by.iter().filter(|f| !f.is_zero()) {
            let q = module_quotient(&basis, f, rank, nvars, limits)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => intersect(&prev, &q, rank, nvars, limits)?,
            });
        }
        let next_gens = match acc {
            Some(v) => v,
            // J = 0: every vector multiplies into M
            None => (0..rank).map(|k| vector::unit(rank, nvars, k)).collect(),
        };
        let next = GroebnerBasis::new(&next_gens, rank, nvars, &order, limits)?;
        if next.basis() == basis {
            return Ok(basis);
        }
        cur = next;
    }
    Err(crate::AlgebraError::ResourceLimit(format!("saturation did not stabilize within {max_steps} steps")))
}

/// Equality of submodules, decided by comparing reduced bases.
pub fn same_submodule<F: Field>(a: &[Vector<F>], b: &[Vector<F>], rank: usize, nvars: usize, limits: Limits) -> Result<bool> {
    let order = TermOrder::default();
    let ga = GroebnerBasis::new(a, rank, nvars, &order, limits)?;
    let gb = GroebnerBasis::new(b, rank, nvars, &order, limits)?;
    Ok(ga.basis() == gb.basis())
}

#[cfg(test)]
mod tests;
