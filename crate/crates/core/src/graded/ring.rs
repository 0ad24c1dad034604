use std::collections::HashMap;
use std::sync::Mutex;

use crate::base::BaseRing;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::mono::{monomials_of_degree, Mono};
use crate::poly::Poly;

/// `S/L` with `S = R[y_0..y_r]` or `S = R[y_0..y_r, u]`, graded by
/// weight 0 on the base variables, 1 on each `y_i` and -1 on `u`.
///
/// Variables of `S` are ordered base first, then the `y_i`, then `u`.
/// `L` always contains `J`, the relations among the `y_i`, and (when `u`
/// is present) every `y_i u - g_i`. With those generators each graded piece
/// is spanned over `R` by pure monomials (`y^a` or `u^b`), which is what
/// makes pieces computable by bookkeeping alone.
pub struct GradedRing<F: Field> {
    pub base: BaseRing<F>,
    /// `g_i`, the image of `y_i` under `y_i -> g_i t`.
    pub gens: Vec<Poly<F>>,
    pub has_u: bool,
    /// True when `S/L` embeds into `R[t, t^-1]` via `y_i -> g_i t`, `u -> t^-1`.
    pub embedded: bool,
    ideal: Ideal<F>,
    names: Vec<String>,
    weights: Vec<i64>,
    gprod: Mutex<HashMap<Vec<u16>, Poly<F>>>,
}

impl<F: Field> Clone for GradedRing<F> {
    fn clone(&self) -> Self {
        GradedRing {
            base: self.base.clone(),
            gens: self.gens.clone(),
            has_u: self.has_u,
            embedded: self.embedded,
            ideal: self.ideal.clone(),
            names: self.names.clone(),
            weights: self.weights.clone(),
            gprod: Mutex::new(HashMap::new()),
        }
    }
}

impl<F: Field> std::fmt::Debug for GradedRing<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedRing({:?})", self.names)
    }
}

impl<F: Field> GradedRing<F> {
    /// Build from the relations among the `y_i` (polynomials in `S`, without `u`).
    /// `J`, and `y_i u - g_i` when `has_u`, are added here.
    pub fn new(base: BaseRing<F>, gens: Vec<Poly<F>>, y_relations: Vec<Poly<F>>, has_u: bool, embedded: bool) -> Result<Self> {
        let k = base.nvars();
        let ny = gens.len();
        let n = k + ny + usize::from(has_u);
        let mut names: Vec<String> = base.names().to_vec();
        for i in 0..ny {
            names.push(fresh_name(&names, &format!("y{i}")));
        }
        if has_u {
            names.push(fresh_name(&names, "u"));
        }
        let mut weights = vec![0i64; k];
        weights.extend(std::iter::repeat_n(1, ny));
        if has_u {
            weights.push(-1);
        }
        let lift: Vec<usize> = (0..k).collect();
        let mut l: Vec<Poly<F>> = base.ideal().gens.iter().map(|g| g.rename(&lift, n)).collect();
        for r in y_relations {
            if r.nvars() != n {
                return Err(AlgebraError::OrderMismatch("relation in the wrong ambient ring".into()));
            }
            l.push(r);
        }
        if has_u {
            for (i, g) in gens.iter().enumerate() {
                let yu = Poly::var(n, k + i).mul(&Poly::var(n, k + ny));
                l.push(yu.sub(&g.rename(&lift, n)));
            }
        }
        for p in &l {
            if !p.is_homogeneous(&weights) {
                return Err(AlgebraError::Malformed(format!("relation {} is not homogeneous", p.display(&names))));
            }
        }
        let gens = gens.iter().map(|g| base.reduce(g)).collect();
        Ok(GradedRing { base, gens, has_u, embedded, ideal: Ideal::new(n, l), names, weights, gprod: Mutex::new(HashMap::new()) })
    }

    /// Add further homogeneous relations (used for `S/(L + (u))`).
    pub fn with_extra_relations(&self, extra: Vec<Poly<F>>, embedded: bool) -> Result<Self> {
        let mut r = self.clone();
        for p in &extra {
            if !p.is_homogeneous(&self.weights) {
                return Err(AlgebraError::Malformed("extra relation is not homogeneous".into()));
            }
        }
        r.ideal = self.ideal.sum(&Ideal::new(self.nvars(), extra));
        r.embedded = embedded;
        Ok(r)
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn nbase(&self) -> usize {
        self.base.nvars()
    }

    pub fn ny(&self) -> usize {
        self.gens.len()
    }

    pub fn y(&self, i: usize) -> usize {
        self.nbase() + i
    }

    /// Index of `u`; only meaningful when `has_u`.
    pub fn u(&self) -> usize {
        self.nbase() + self.ny()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Generators of the defining ideal `L`.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::var(self.nvars(), i)
    }

    pub fn parse(&self, s: &str) -> Result<Poly<F>> {
        crate::parse::parse_poly(s, &self.names)
    }

    pub fn display(&self, p: &Poly<F>) -> String {
        p.display(&self.names).to_string()
    }

    pub fn lift_base(&self, p: &Poly<F>) -> Poly<F> {
        let lift: Vec<usize> = (0..self.nbase()).collect();
        p.rename(&lift, self.nvars())
    }

    pub fn weight_of(&self, m: &Mono) -> i64 {
        m.weight(&self.weights)
    }

    /// Weight of a homogeneous polynomial, `None` for zero or inhomogeneous input.
    pub fn degree_of(&self, p: &Poly<F>) -> Option<i64> {
        p.homogeneous_weight(&self.weights)
    }

    /// Pure monomials of weight `w` in a fixed order: `y^a` with `|a| = w`, or `u^{-w}`.
    pub fn pure_monomials(&self, w: i64) -> Vec<Mono> {
        let (k, ny, n) = (self.nbase(), self.ny(), self.nvars());
        if w >= 0 {
            monomials_of_degree(ny, w as u32)
                .into_iter()
                .map(|a| {
                    let mut m = Mono::one(n);
                    for i in 0..ny {
                        m.0[k + i] = a.0[i];
                    }
                    m
                })
                .collect()
        } else if self.has_u {
            vec![Mono::var(n, self.u(), (-w) as u16)]
        } else {
            Vec::new()
        }
    }

    /// Product of the `g_i` with multiplicities `counts`, reduced in `R`.
    fn g_product(&self, counts: &[u16]) -> Poly<F> {
        if let Some(p) = self.gprod.lock().unwrap().get(counts) {
            return p.clone();
        }
        let mut acc = self.base.one();
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                acc = self.base.reduce(&acc.mul(&self.gens[i]));
            }
        }
        self.gprod.lock().unwrap().insert(counts.to_vec(), acc.clone());
        acc
    }

    /// Rewrite with `y_i u -> g_i` (lowest `i` first) until every monomial is
    /// pure. Returns pure monomial (base exponents zero) and base coefficient.
    pub fn pure_form(&self, p: &Poly<F>) -> Vec<(Mono, Poly<F>)> {
        let (k, ny) = (self.nbase(), self.ny());
        let mut acc: HashMap<Mono, Poly<F>> = HashMap::new();
        for (m, c) in p.terms() {
            let mut pure = m.clone();
            let mut xpart = Mono::one(k);
            for i in 0..k {
                xpart.0[i] = m.0[i];
                pure.0[i] = 0;
            }
            let mut counts = vec![0u16; ny];
            if self.has_u {
                let u = self.u();
                let mut i = 0;
                while pure.0[u] > 0 && i < ny {
                    let take = pure.0[k + i].min(pure.0[u]);
                    pure.0[k + i] -= take;
                    pure.0[u] -= take;
                    counts[i] = take;
                    i += 1;
                }
            }
            let mut coeff = Poly::monomial(xpart, c.clone());
            if counts.iter().any(|&c| c > 0) {
                coeff = coeff.mul(&self.g_product(&counts));
            }
            let e = acc.entry(pure).or_insert_with(|| Poly::zero(k));
            *e = e.add(&coeff);
        }
        let mut out: Vec<(Mono, Poly<F>)> = acc.into_iter().map(|(m, c)| (m, self.base.reduce(&c))).filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Image in `R` under `y_i -> g_i`, `u -> 1`: the coefficient of `t^w`
    /// in the embedding into `R[t, t^-1]`.
    pub fn to_laurent_coefficient(&self, p: &Poly<F>) -> Poly<F> {
        let k = self.nbase();
        let mut images: Vec<Poly<F>> = (0..k).map(|i| Poly::var(k, i)).collect();
        images.extend(self.gens.iter().cloned());
        if self.has_u {
            images.push(Poly::one(k));
        }
        self.base.reduce(&p.substitute(&images, k))
    }
}

fn fresh_name(taken: &[String], want: &str) -> String {
    let mut name = want.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}
