//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are stored in a canonical order (lexicographically decreasing
//! exponent vectors) so that equal polynomials compare equal. Gröbner
//! computations convert to their own order internally.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::mono::{Mono, MonoOrder};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: Vec<(Mono, F)>,
}

/// A vector of polynomials: an element of a free module of finite rank.
pub type Vector<F> = Vec<Poly<F>>;

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Poly { nvars, terms: vec![(Mono::one(nvars), c)] }
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly { nvars, terms: vec![(Mono::var(nvars, i, 1), F::one())] }
    }

    pub fn monomial(m: Mono, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Poly { nvars, terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary terms: merges duplicates and drops zeros.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, F)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term (zero when absent).
    pub fn constant_term(&self) -> F {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common weighted degree of all terms, `None` for zero or inhomogeneous input.
    pub fn homogeneous_weight(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| m.weight(weights));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        self.is_zero() || self.homogeneous_weight(weights).is_some()
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonoOrder) -> Option<&(Mono, F)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.neg())).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // multiplication by a monomial preserves lex order
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect() }
    }

    fn merge(&self, other: &Self, sign: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign { b[j].1.clone() } else { b[j].1.neg() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { a[i].1.add(&b[j].1) } else { a[i].1.sub(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if sign { t.1.clone() } else { t.1.neg() };
            out.push((t.0.clone(), c));
        }
        Poly { nvars: self.nvars.max(other.nvars), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.mul(n), a.mul(b)));
            }
        }
        Self::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `images[i]` for variable `i`; the images live in a ring with
    /// `target_nvars` variables.
    pub fn substitute(&self, images: &[Poly<F>], target_nvars: usize) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let mut acc = Poly::zero(target_nvars);
        // cache powers per variable
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(target_nvars), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-embed into a ring with `nvars` variables, sending variable `i` to
    /// variable `map[i]`.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Poly<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Mono::one(nvars);
                for (i, &x) in m.0.iter().enumerate() {
                    e.0[map[i]] += x;
                }
                (e, c.clone())
            })
            .collect();
        Poly::from_terms(nvars, terms)
    }

    /// Set the listed variables to one (dehomogenize).
    pub fn set_to_one(&self, vars: &[usize]) -> Poly<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.clone();
                for &v in vars {
                    e.0[v] = 0;
                }
                (e, c.clone())
            })
            .collect();
        Poly::from_terms(self.nvars, terms)
    }

    pub fn uses_only(&self, mask: &[bool]) -> bool {
        self.terms.iter().all(|(m, _)| m.supported_in(mask))
    }

    /// Divide by the leading coefficient under `order`.
    pub fn make_monic(&self, order: &MonoOrder) -> Poly<F> {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, names }
    }
}

/// Default variable names `x0, x1, ...`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a Poly<F>,
    names: &'a [String],
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let order = MonoOrder::DegRevLex;
        let mut terms: Vec<&(Mono, F)> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative_display();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display(&names))
    }
}

/// Helpers on polynomial vectors.
pub mod vector {
    use super::*;

    pub fn zero<F: Field>(rank: usize, nvars: usize) -> Vector<F> {
        vec![Poly::zero(nvars); rank]
    }

    pub fn unit<F: Field>(rank: usize, nvars: usize, i: usize) -> Vector<F> {
        let mut v = zero(rank, nvars);
        v[i] = Poly::one(nvars);
        v
    }

    pub fn is_zero<F: Field>(v: &[Poly<F>]) -> bool {
        v.iter().all(|p| p.is_zero())
    }

    pub fn add<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vector<F> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    pub fn sub<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vector<F> {
        a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
    }

    pub fn scale<F: Field>(a: &[Poly<F>], p: &Poly<F>) -> Vector<F> {
        a.iter().map(|x| x.mul(p)).collect()
    }

    /// `sum c_k v_k`.
    pub fn combine<F: Field>(coeffs: &[Poly<F>], vs: &[Vector<F>], rank: usize, nvars: usize) -> Vector<F> {
        let mut acc = zero(rank, nvars);
        for (c, v) in coeffs.iter().zip(vs) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(v) {
                if !x.is_zero() {
                    *a = a.add(&c.mul(x));
                }
            }
        }
        acc
    }

    /// Apply a matrix given by its columns (`cols[j]` is the image of `e_j`).
    pub fn apply<F: Field>(cols: &[Vector<F>], v: &[Poly<F>], target_rank: usize, nvars: usize) -> Vector<F> {
        combine(v, cols, target_rank, nvars)
    }

    pub fn concat<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vector<F> {
        a.iter().chain(b).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type P = Poly<Rational>;

    fn x() -> P {
        P::var(2, 0)
    }
    fn y() -> P {
        P::var(2, 1)
    }

    #[test]
    fn arithmetic_is_canonical() {
        let a = x().add(&y());
        let b = y().add(&x());
        assert_eq!(a, b);
        let sq = a.mul(&a);
        assert_eq!(sq.len(), 3);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn substitution_and_display() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x().mul(&x()).sub(&P::constant(2, Rational::new(3, 2)).mul(&y()));
        assert_eq!(p.display(&names).to_string(), "x^2 - 3/2*y");
        let q = p.substitute(&[y(), x()], 2);
        assert_eq!(q.display(&names).to_string(), "y^2 - 3/2*x");
    }

    #[test]
    fn homogeneity() {
        let p = x().mul(&y()).add(&x());
        assert!(!p.is_homogeneous(&[1, 1]));
        assert!(p.is_homogeneous(&[1, 0]));
        assert_eq!(p.homogeneous_weight(&[0, 1]), None);
        assert_eq!(p.homogeneous_weight(&[1, 0]), Some(1));
    }
}
