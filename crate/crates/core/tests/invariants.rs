//! Randomized checks of the structural invariants of arithmetic, monomial
//! orders and Gröbner computations.

use std::cmp::Ordering;

use blowup_core::field::{prime, set_prime};
use blowup_core::rees::rees_ideal;
use blowup_core::{BaseRing, Field, Fp, Ideal, Limits, Mono, MonoOrder, Poly, Rational};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

const NVARS: usize = 3;

fn lim() -> Limits {
    Limits { max_terms: 50_000, max_pairs: 50_000 }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| Rational::new(a, b))
}

fn mono(nvars: usize, max_exp: u16) -> impl Strategy<Value = Mono> {
    prop::collection::vec(0..=max_exp, nvars).prop_map(|e| Mono::from_slice(&e))
}

fn poly(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec((mono(nvars, max_exp), rational()), 1..=max_terms).prop_map(move |t| Poly::from_terms(nvars, t))
}

/// Small ideals of low degree, so that the bases stay desk-sized.
fn ideal() -> impl Strategy<Value = Ideal<Rational>> {
    prop::collection::vec(poly(NVARS, 2, 3), 1..=3).prop_map(|g| Ideal::new(NVARS, g))
}

/// Ideal generators over F_101, where coefficient growth cannot hide a slow case.
fn ideal_mod_p(max_exp: u16) -> impl Strategy<Value = Ideal<Fp>> {
    let term = (mono(NVARS, max_exp), -5i64..=5);
    prop::collection::vec(prop::collection::vec(term, 1..=2), 1..=3).prop_map(|gs| {
        set_prime(101);
        Ideal::new(NVARS, gs.into_iter().map(|t| Poly::from_terms(NVARS, t.into_iter().map(|(m, c)| (m, Fp::new(c))).collect())).collect())
    })
}

fn well_formed(p: &Poly<Rational>) -> bool {
    let t = p.terms();
    t.iter().all(|(_, c)| !c.is_zero()) && t.windows(2).all(|w| w[0].0 > w[1].0)
}

fn reduced(q: &Rational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_stay_normalized(a in rational(), b in rational()) {
        for q in [a.add(&b), a.sub(&b), a.mul(&b), a.neg()] {
            prop_assert!(reduced(&q));
        }
        if !b.is_zero() {
            prop_assert!(reduced(&a.div(&b)));
            prop_assert_eq!(a.div(&b).mul(&b), a);
        }
    }

    #[test]
    fn residues_lie_in_range(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let p = set_prime(101);
        prop_assert_eq!(p, prime());
        let (x, y) = (Fp::new(a), Fp::new(b));
        for r in [x.add(&y), x.sub(&y), x.mul(&y), x.neg()] {
            prop_assert!(r.value() < p);
        }
        if !y.is_zero() {
            prop_assert!(x.div(&y).mul(&y) == x);
        }
    }

    #[test]
    fn polynomials_keep_canonical_terms(f in poly(NVARS, 3, 5), g in poly(NVARS, 3, 5)) {
        for h in [f.add(&g), f.sub(&g), f.mul(&g), f.sub(&f)] {
            prop_assert!(well_formed(&h));
        }
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn monomial_orders_are_total_and_multiplicative(a in mono(NVARS, 4), b in mono(NVARS, 4), c in mono(NVARS, 4)) {
        let orders = [MonoOrder::DegRevLex, MonoOrder::Lex, MonoOrder::elimination(NVARS, &[0]), MonoOrder::Weighted(vec![2, 1, 0], Box::new(MonoOrder::DegRevLex))];
        for o in &orders {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), o.cmp(&a, &b));
            prop_assert_ne!(o.cmp(&Mono::one(NVARS), &c), Ordering::Greater);
        }
    }

    #[test]
    fn bases_satisfy_the_buchberger_criterion(i in ideal()) {
        let gb = i.gb(lim());
        prop_assume!(gb.is_ok());
        prop_assert!(gb.unwrap().satisfies_buchberger().unwrap());
    }

    #[test]
    fn normal_form_is_a_projection(i in ideal(), f in poly(NVARS, 3, 6)) {
        let gb = i.gb(lim());
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        let once = gb.reduce_poly(&f).unwrap();
        prop_assert_eq!(gb.reduce_poly(&once).unwrap(), once.clone());
        // f and its normal form differ by an element of the ideal
        prop_assert!(i.contains(&f.sub(&once), lim()).unwrap());
    }

    #[test]
    fn powers_multiply(i in ideal_mod_p(2), a in 0u32..4, b in 0u32..4) {
        prop_assume!(a + b <= 6);
        let zero = Ideal::zero(NVARS);
        let (pa, pb, pab) = (i.power(a, &zero, lim()), i.power(b, &zero, lim()), i.power(a + b, &zero, lim()));
        prop_assume!(pa.is_ok() && pb.is_ok() && pab.is_ok());
        let same = pa.unwrap().product(&pb.unwrap()).same_as(&pab.unwrap(), lim());
        prop_assume!(same.is_ok());
        prop_assert!(same.unwrap());
    }

    #[test]
    fn saturation_is_idempotent(i in ideal_mod_p(2), j in ideal_mod_p(1)) {
        let once = i.saturate(&j, 8, lim());
        prop_assume!(once.is_ok());
        let once = once.unwrap();
        let twice = once.saturate(&j, 8, lim());
        prop_assume!(twice.is_ok());
        prop_assert!(twice.unwrap().same_as(&once, lim()).unwrap());
    }

    #[test]
    fn rees_relations_vanish_under_y_to_gt(gens in prop::collection::vec(poly(2, 2, 2), 1..=2)) {
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let base = BaseRing::<Rational>::polynomial(&["x", "y"], lim());
        let rel = rees_ideal(&base, &gens, lim());
        prop_assume!(rel.is_ok());
        // R[y_0..] -> R[t], y_i -> g_i t
        let t = Poly::var(3, 2);
        let mut images: Vec<Poly<Rational>> = (0..2).map(|i| Poly::var(3, i)).collect();
        images.extend(gens.iter().map(|g| g.rename(&[0, 1], 3).mul(&t)));
        for r in &rel.unwrap().gens {
            prop_assert!(r.substitute(&images, 3).is_zero());
        }
    }
}
