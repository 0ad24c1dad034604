//! Independent checks by dense linear algebra, sharing nothing with the
//! Gröbner engine beyond polynomial arithmetic.

use std::collections::HashMap;

use blowup_core::mono::{monomials_of_degree, Mono};
use blowup_core::{Field, Poly};

/// Reduced row echelon form of a set of dense rows.
pub struct Echelon<F: Field> {
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(input: Vec<Vec<F>>) -> Self {
        let mut e = Echelon { rows: Vec::new(), pivots: Vec::new() };
        for r in input {
            e.insert(r);
        }
        e
    }

    fn reduce_row(&self, mut v: Vec<F>) -> Vec<F> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = a.sub(&c.mul(b));
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<F>) {
        let v = self.reduce_row(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return;
        };
        let inv = v[p].inv();
        let v: Vec<F> = v.iter().map(|c| c.mul(&inv)).collect();
        // keep earlier rows reduced against the new pivot
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = a.sub(&c.mul(b));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: Vec<F>) -> bool {
        self.reduce_row(v).iter().all(|c| c.is_zero())
    }
}

/// Column index over the monomials of one degree.
struct Columns {
    index: HashMap<Mono, usize>,
}

impl Columns {
    fn of_degree(nvars: usize, d: u32) -> Self {
        Columns { index: monomials_of_degree(nvars, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect() }
    }

    /// Dense coordinates of a polynomial homogeneous of this degree.
    fn dense<F: Field>(&self, p: &Poly<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.index.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }
}

fn total_degree_parts<F: Field>(p: &Poly<F>) -> Vec<(u32, Poly<F>)> {
    let mut by: HashMap<u32, Vec<(Mono, F)>> = HashMap::new();
    for (m, c) in p.terms() {
        by.entry(m.degree()).or_default().push((m.clone(), c.clone()));
    }
    let mut out: Vec<(u32, Poly<F>)> = by.into_iter().map(|(d, t)| (d, Poly::from_terms(p.nvars(), t))).collect();
    out.sort_by_key(|x| x.0);
    out
}

/// Degree-`d` Macaulay matrix of homogeneous generators: the span of every
/// `m * g` with `deg m + deg g = d`, which is exactly `I_d`.
pub struct Macaulay<F: Field> {
    cols: Columns,
    space: Echelon<F>,
    degree: u32,
}

impl<F: Field> Macaulay<F> {
    pub fn new(gens: &[Poly<F>], nvars: usize, d: u32) -> Self {
        let cols = Columns::of_degree(nvars, d);
        let mut rows = Vec::new();
        for g in gens {
            let parts = total_degree_parts(g);
            assert!(parts.len() <= 1, "Macaulay matrices need homogeneous generators");
            let Some((gd, _)) = parts.first() else {
                continue;
            };
            if *gd > d {
                continue;
            }
            for m in monomials_of_degree(nvars, d - gd) {
                rows.push(cols.dense(&g.mul_mono(&m, &F::one())));
            }
        }
        Macaulay { cols, space: Echelon::new(rows), degree: d }
    }

    /// `dim_k I_d`.
    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    /// Membership of a polynomial homogeneous of this degree.
    pub fn contains(&self, f: &Poly<F>) -> bool {
        assert!(f.terms().iter().all(|(m, _)| m.degree() == self.degree), "test polynomials must be homogeneous of the matrix degree");
        self.space.contains(self.cols.dense(f))
    }
}

/// `dim_k` of the degree-`d` part of the kernel of `k[z_0..z_s] -> k[w]`,
/// `z_i -> images[i]`. The images must be homogeneous of degree one for some
/// grading of the target, so the kernel is homogeneous in the `z`.
pub fn ring_map_kernel_dim<F: Field>(images: &[Poly<F>], d: u32) -> usize {
    let tn = images.first().map_or(0, |p| p.nvars());
    let srcs = monomials_of_degree(images.len(), d);
    let polys: Vec<Poly<F>> = srcs
        .iter()
        .map(|m| {
            let mut p = Poly::one(tn);
            for (i, &e) in m.0.iter().enumerate() {
                p = p.mul(&images[i].pow(e as u32));
            }
            p
        })
        .collect();
    let mut index: HashMap<Mono, usize> = HashMap::new();
    for p in &polys {
        for (m, _) in p.terms() {
            let n = index.len();
            index.entry(m.clone()).or_insert(n);
        }
    }
    let rows = polys
        .iter()
        .map(|p| {
            let mut v = vec![F::zero(); index.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect();
    srcs.len() - Echelon::new(rows).rank()
}

/// `dim_k H^1(Y, O_Y(m))` for the blowup `Y` of the plane at the origin, by
/// counting Laurent monomials `x^a y^b` of the double overlap (`a + b >= m`)
/// that lie in neither chart, i.e. have `a < 0` and `b < 0`.
pub fn plane_blowup_h1(m: i64) -> usize {
    let mut count = 0;
    // a, b <= -1 forces a + b <= -2
    for s in m..=-2 {
        for a in (s + 1)..=-1 {
            let b = s - a;
            if b <= -1 {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use blowup_core::parse::parse_poly;
    use blowup_core::Rational;

    fn p(s: &str, names: &[&str]) -> Poly<Rational> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &names).unwrap()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let q = |a: i64| Rational::new(a, 1);
        let e = Echelon::new(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]]);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(vec![q(1), q(3), q(4)]));
        assert!(!e.contains(vec![q(0), q(0), q(1)]));
    }

    #[test]
    fn macaulay_dimensions_of_a_monomial_ideal() {
        let v = ["x", "y"];
        let g = vec![p("x^2", &v), p("x*y", &v)];
        // degree 3: x^3, x^2 y, x y^2 span I_3
        assert_eq!(Macaulay::new(&g, 2, 3).dim(), 3);
        assert!(Macaulay::new(&g, 2, 3).contains(&p("x^3 - 2*x*y^2", &v)));
        assert!(!Macaulay::new(&g, 2, 3).contains(&p("y^3", &v)));
    }

    #[test]
    fn plane_rees_kernel_is_one_quadric_per_degree_shift() {
        // z = (x, y, y0, y1) -> (x, y, x t, y t) in k[x, y, t]
        let t = ["x", "y", "t"];
        let images = vec![p("x", &t), p("y", &t), p("x*t", &t), p("y*t", &t)];
        let rel = vec![p("x*y1 - y*y0", &["x", "y", "y0", "y1"])];
        for d in 0..5 {
            assert_eq!(ring_map_kernel_dim(&images, d), Macaulay::new(&rel, 4, d).dim(), "degree {d}");
        }
    }

    #[test]
    fn plane_h1_counts() {
        let got: Vec<usize> = (-4..=2).map(plane_blowup_h1).collect();
        assert_eq!(got, [6, 3, 1, 0, 0, 0, 0]);
    }
}
