use super::*;
use crate::field::Rational;
use crate::parse::parse_poly;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn p(s: &str, n: &[String]) -> Poly<Rational> {
    parse_poly(s, n).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn lex_basis_of_small_system() {
    let n = names(&["x", "y"]);
    let gb = GroebnerBasis::ideal(&[p("x^2 - 1", &n), p("x*y - 1", &n)], 2, &MonoOrder::Lex, lim()).unwrap();
    let mut got = gb.polys();
    got.sort_by_key(|q| q.display(&n).to_string());
    assert_eq!(got, vec![p("x - y", &n), p("y^2 - 1", &n)]);
    assert!(gb.satisfies_buchberger().unwrap());
    assert_eq!(gb.reduce_poly(&p("x^2", &n)).unwrap(), p("1", &n));
}

#[test]
fn trivial_bases() {
    let n = names(&["x", "y"]);
    let gb = GroebnerBasis::ideal(&[Poly::<Rational>::zero(2)], 2, &MonoOrder::DegRevLex, lim()).unwrap();
    assert!(gb.is_empty());
    assert_eq!(gb.reduce_poly(&p("x + 1", &n)).unwrap(), p("x + 1", &n));
    let gb = GroebnerBasis::ideal(&[p("x", &n), p("y", &n)], 2, &MonoOrder::DegRevLex, lim()).unwrap();
    assert_eq!(gb.polys(), vec![p("x", &n), p("y", &n)]);
    assert!(gb.reduce_poly(&p("x", &n)).unwrap().is_zero());
}

#[test]
fn koszul_syzygy() {
    let n = names(&["x", "y"]);
    let syz = syzygies(&[vec![p("x", &n)], vec![p("y", &n)]], &[], 1, 2, lim()).unwrap();
    assert_eq!(syz.len(), 1);
    let s = &syz[0];
    assert!(s[0].mul(&p("x", &n)).add(&s[1].mul(&p("y", &n))).is_zero());
    assert!(same_submodule(&syz, &[vec![p("y", &n), p("-x", &n)]], 2, 2, lim()).unwrap());
}

#[test]
fn principal_has_no_syzygies() {
    let n = names(&["x", "y", "a", "b"]);
    assert!(syzygies(&[vec![p("x*b - y*a", &n)]], &[], 1, 4, lim()).unwrap().is_empty());
    assert!(syzygies(&[vec![p("1", &n)]], &[], 1, 4, lim()).unwrap().is_empty());
}

#[test]
fn lift_recovers_cofactors() {
    let n = names(&["x", "y"]);
    let gens = vec![vec![p("x", &n)], vec![p("y", &n)]];
    let l = Lifter::new(&gens, &[], 1, 2, lim()).unwrap();
    let v = vec![p("x^2 + 3*x*y - y", &n)];
    let c = l.lift(&v).unwrap().unwrap();
    assert_eq!(vector::combine(&c, &gens, 1, 2), v);
    assert!(l.lift(&[p("1", &n)]).unwrap().is_none());
}

#[test]
fn elimination_gives_rees_relation() {
    let n = names(&["x", "y", "a", "b", "t"]);
    let i = Ideal::new(5, vec![p("a - x*t", &n), p("b - y*t", &n)]);
    let e = i.eliminate(&[4], lim()).unwrap().normalized(lim()).unwrap();
    assert_eq!(e.gens.len(), 1);
    let g = &e.gens[0];
    assert!(g == &p("x*b - y*a", &n) || g == &p("y*a - x*b", &n));
    let unit = Ideal::<Rational>::unit(5).eliminate(&[0, 1, 2, 3, 4], lim()).unwrap();
    assert!(unit.is_unit(lim()).unwrap());
}

#[test]
fn ring_map_kernel_with_laurent_target() {
    // k[y,u] -> k[x][t,s]/(ts-1)
    let tn = names(&["x", "t", "s"]);
    let sn = names(&["x", "y", "u"]);
    let k = kernel_of_ring_map(3, 3, &[p("t*s - 1", &tn)], &[p("x", &tn), p("x*t", &tn), p("s", &tn)], lim()).unwrap();
    let k = k.normalized(lim()).unwrap();
    assert!(k.same_as(&Ideal::new(3, vec![p("y*u - x", &sn)]), lim()).unwrap());
    // identity map
    let id = kernel_of_ring_map(2, 2, &[], &[p("x", &tn[..2]), p("t", &tn[..2])], lim()).unwrap();
    assert!(id.is_zero());
    // zero ring target
    let z = kernel_of_ring_map(1, 1, &[Poly::<Rational>::one(1)], &[Poly::var(1, 0)], lim()).unwrap();
    assert!(z.is_unit(lim()).unwrap());
}

#[test]
fn powers_and_nilpotents() {
    let n = names(&["x", "y"]);
    let m = Ideal::new(2, vec![p("x", &n), p("y", &n)]);
    let sq = m.power(2, &Ideal::zero(2), lim()).unwrap();
    assert!(sq.same_as(&Ideal::new(2, vec![p("x^2", &n), p("x*y", &n), p("y^2", &n)]), lim()).unwrap());
    assert!(m.power(0, &Ideal::zero(2), lim()).unwrap().is_unit(lim()).unwrap());
    let n1 = names(&["x"]);
    let cube = Ideal::new(1, vec![p("x", &n1)]).power(3, &Ideal::new(1, vec![p("x^2", &n1)]), lim()).unwrap();
    assert!(cube.is_zero());
}

#[test]
fn saturation_examples() {
    let n = names(&["x", "y"]);
    let x = Ideal::new(2, vec![p("x", &n)]);
    let s = Ideal::new(2, vec![p("x^2", &n)]).saturate(&x, 10, lim()).unwrap();
    assert!(s.is_unit(lim()).unwrap());
    let s = Ideal::new(2, vec![p("x*y", &n)]).saturate(&x, 10, lim()).unwrap();
    assert!(s.same_as(&Ideal::new(2, vec![p("y", &n)]), lim()).unwrap());
    let m = Ideal::new(2, vec![p("x*y", &n), p("y^3", &n)]);
    assert!(m.saturate(&Ideal::unit(2), 10, lim()).unwrap().same_as(&m, lim()).unwrap());
}

#[test]
fn finite_quotient_dimension() {
    let n = names(&["x", "y"]);
    let gb = GroebnerBasis::ideal(&[p("x^3", &n), p("y^2", &n)], 2, &MonoOrder::DegRevLex, lim()).unwrap();
    assert_eq!(gb.quotient_dimension(), Some(6));
    let gb = GroebnerBasis::ideal(&[p("x^3", &n)], 2, &MonoOrder::DegRevLex, lim()).unwrap();
    assert_eq!(gb.quotient_dimension(), None);
}

#[test]
fn term_cap_is_an_error() {
    let n = names(&["x", "y", "z"]);
    let tight = Limits { max_terms: 3, max_pairs: 1000 };
    let r = GroebnerBasis::ideal(&[p("x^3 + y^3 + z^3", &n), p("x*y*z - 1", &n), p("x + y + z", &n)], 3, &MonoOrder::DegRevLex, tight);
    assert!(matches!(r, Err(crate::AlgebraError::ResourceLimit(_))));
}
