//! Monomials, monomial orders and term orders on free modules.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// Exponent vector over the ambient variables of a ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub Exponents);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Mono::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_slice(e: &[u16]) -> Self {
        Mono(SmallVec::from_slice(e))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Weighted degree `sum e_i * w_i`.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, n: u16) -> Mono {
        Mono(self.0.iter().map(|e| e * n).collect())
    }

    /// True when the monomial only involves variables flagged in `mask`.
    pub fn supported_in(&self, mask: &[bool]) -> bool {
        self.0.iter().zip(mask).all(|(&e, &m)| e == 0 || m)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Mono::from_slice(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Mono::one(0));
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Monomial orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonoOrder {
    #[default]
    DegRevLex,
    Lex,
    /// Blocks of variable indices compared in sequence, each block by degrevlex.
    /// The first block is the most significant; every variable appears once.
    Block(Vec<Vec<usize>>),
    /// Non-negative weight vector, ties broken by the inner order.
    Weighted(Vec<i64>, Box<MonoOrder>),
}

fn degrevlex_on(a: &[u16], b: &[u16], vars: impl DoubleEndedIterator<Item = usize> + Clone) -> Ordering {
    let da: u32 = vars.clone().map(|i| a[i] as u32).sum();
    let db: u32 = vars.clone().map(|i| b[i] as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in vars.rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonoOrder {
    /// Elimination order: `first` variables dominate the rest.
    pub fn elimination(nvars: usize, first: &[usize]) -> MonoOrder {
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        let mut blocks = vec![];
        if !first.is_empty() {
            blocks.push(first.to_vec());
        }
        if !rest.is_empty() {
            blocks.push(rest);
        }
        MonoOrder::Block(blocks)
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        let (a, b) = (&a.0[..], &b.0[..]);
        match self {
            MonoOrder::DegRevLex => degrevlex_on(a, b, 0..a.len()),
            MonoOrder::Lex => a.cmp(b),
            MonoOrder::Block(blocks) => {
                for blk in blocks {
                    let o = degrevlex_on(a, b, blk.iter().copied());
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            MonoOrder::Weighted(w, tie) => {
                let wa: i64 = a.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum();
                let wb: i64 = b.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum();
                wa.cmp(&wb).then_with(|| tie.cmp(&Mono::from_slice(a), &Mono::from_slice(b)))
            }
        }
    }

    /// Orders must be well-orders on monomials: weights are non-negative and
    /// blocks partition the variables.
    pub fn validate(&self, nvars: usize) -> bool {
        match self {
            MonoOrder::DegRevLex | MonoOrder::Lex => true,
            MonoOrder::Block(blocks) => {
                let mut seen = vec![false; nvars];
                for &i in blocks.iter().flatten() {
                    if i >= nvars || seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
                seen.into_iter().all(|s| s)
            }
            MonoOrder::Weighted(w, tie) => w.len() == nvars && w.iter().all(|&x| x >= 0) && tie.validate(nvars),
        }
    }
}

/// How module components enter the comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrder {
    /// Position over term: lower component index is larger.
    Pot,
    /// Term over position.
    Top,
}

/// Order on terms `(monomial, component)` of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    pub mono: MonoOrder,
    pub module: ModuleOrder,
    /// Optional level per component, compared before everything else
    /// (higher level is larger). Used to eliminate whole blocks of components.
    pub levels: Option<Vec<u32>>,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder { mono: MonoOrder::DegRevLex, module: ModuleOrder::Top, levels: None }
    }
}

impl TermOrder {
    pub fn new(mono: MonoOrder) -> Self {
        TermOrder { mono, module: ModuleOrder::Top, levels: None }
    }

    pub fn pot(mono: MonoOrder) -> Self {
        TermOrder { mono, module: ModuleOrder::Pot, levels: None }
    }

    pub fn with_levels(mut self, levels: Vec<u32>) -> Self {
        self.levels = Some(levels);
        self
    }

    pub fn level(&self, comp: u32) -> u32 {
        match &self.levels {
            Some(l) => l.get(comp as usize).copied().unwrap_or(0),
            None => 0,
        }
    }

    pub fn cmp(&self, a: (&Mono, u32), b: (&Mono, u32)) -> Ordering {
        if self.levels.is_some() {
            let o = self.level(a.1).cmp(&self.level(b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        match self.module {
            ModuleOrder::Pot => b.1.cmp(&a.1).then_with(|| self.mono.cmp(a.0, b.0)),
            ModuleOrder::Top => self.mono.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Mono {
        Mono::from_slice(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonoOrder::DegRevLex;
        // x^2 > xy > y^2 > xz in degrevlex with x>y>z
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        let o = MonoOrder::elimination(3, &[2]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert!(o.validate(3));
        assert!(!MonoOrder::Block(vec![vec![0], vec![0, 1]]).validate(2));
    }

    #[test]
    fn levels_dominate() {
        let o = TermOrder::new(MonoOrder::DegRevLex).with_levels(vec![1, 0]);
        assert_eq!(o.cmp((&m(&[0]), 0), (&m(&[9]), 1)), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert_eq!(monomials_of_degree(0, 1).len(), 0);
    }
}
