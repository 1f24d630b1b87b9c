use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use genpoly::build::{height_layer, moebius_apply, MoebiusMap};
use genpoly::cli::parse::{parse_bipoly, parse_unipoly};
use genpoly::cli::render::{render_bi, render_uni};
use genpoly::cover::genus_galois;
use genpoly::exact::ring::squarefree_int;
use genpoly::exact::ring::Ring;
use genpoly::exact::{ratio, BiPoly, NumberField, Rat, UniPoly};
use genpoly::schinzel::{
    conductor_and_root_number, kronecker, minimal_model, ogg_exponent, quadratic_twist, tate, valuation, witness_search, EllipticCurve,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| ratio(a, b))
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

fn bi() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0usize..4, 0usize..4), small_rat()), 0..8).prop_map(BiPoly::new)
}

fn curve() -> impl Strategy<Value = EllipticCurve> {
    prop::array::uniform5(-20i64..=20).prop_filter_map("singular", |a| EllipticCurve::from_ints(a).ok())
}

fn squarefree_d() -> impl Strategy<Value = BigInt> {
    (-60i64..=60).prop_filter_map("not squarefree", |d| {
        let d = BigInt::from(d);
        (!d.is_zero() && squarefree_int(&d) == d).then_some(d)
    })
}

fn moebius() -> impl Strategy<Value = MoebiusMap> {
    prop::array::uniform4(-5i64..=5).prop_filter_map("degenerate", |[a, b, c, d]| MoebiusMap::from_ints(a, b, c, d).ok())
}

fn scale_y(p: &BiPoly, l: &Rat) -> BiPoly {
    let n = p.deg_y();
    BiPoly::new(p.terms().iter().map(|(&(i, j), c)| ((i, j), c.clone() * Ring::pow(l, (n - j) as u32))))
}

fn exact_root(r: &Rat, e: u32) -> Option<Rat> {
    let root = |x: &BigInt| {
        let y = x.magnitude().nth_root(e);
        (y.pow(e) == *x.magnitude()).then(|| BigInt::from(y))
    };
    let num = root(r.numer())?;
    let num = if r.numer().is_negative() {
        if e.is_multiple_of(2) {
            return None;
        }
        -num
    } else {
        num
    };
    Some(Rat::new(num, root(r.denom())?))
}

// true when b(T, Y) = l^n a(T, Y / l) for some nonzero rational l
fn equal_up_to_y_scale(a: &BiPoly, b: &BiPoly) -> bool {
    let n = a.deg_y();
    if b.deg_y() != n {
        return false;
    }
    let (ca, cb) = (a.y_coeffs(), b.y_coeffs());
    let Some(i) = (0..n).rev().find(|&i| !ca[i].is_zero()) else {
        return a == b;
    };
    if cb[i].is_zero() {
        return false;
    }
    let ratio = cb[i].lc() / ca[i].lc();
    let Some(l) = exact_root(&ratio, (n - i) as u32) else {
        return false;
    };
    [l.clone(), -l].iter().any(|l| scale_y(a, l) == *b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divrem_identity(f in uni(6), g in uni(3)) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g);
        prop_assert_eq!(q * g.clone() + r.clone(), f);
        prop_assert!(r.is_zero() || r.deg() < g.deg());
    }

    #[test]
    fn gcd_divides(f in uni(4), g in uni(4), h in uni(2)) {
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let a = f * h.clone();
        let b = g * h.clone();
        let d = a.gcd(&b);
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert!(h.divides(&d));
    }

    #[test]
    fn parse_render_round_trip(p in bi()) {
        let s = render_bi(&p, "T", "Y");
        prop_assert_eq!(parse_bipoly(&s).unwrap(), p);
    }

    #[test]
    fn parse_render_round_trip_uni(f in uni(5)) {
        prop_assert_eq!(parse_unipoly(&render_uni(&f, "x"), "x").unwrap(), f);
    }

    #[test]
    fn moebius_composition(m1 in moebius(), m2 in moebius(), x in small_rat()) {
        let direct = m1.apply_rat(m2.apply_rat(Some(&x)).as_ref());
        prop_assert_eq!(m1.compose(&m2).apply_rat(Some(&x)), direct);
        prop_assert_eq!(m1.compose(&m1.inverse()).apply_rat(Some(&x)), Some(x));
    }

    #[test]
    fn moebius_keeps_monic(m in moebius()) {
        let p = parse_bipoly("Y^3 + T*Y + T").unwrap();
        let q = moebius_apply(&p, &m);
        prop_assert!(q.is_monic_in_y());
        prop_assert_eq!(q.deg_y(), 3);
    }

    #[test]
    fn moebius_action_composes(m1 in moebius(), m2 in moebius()) {
        for text in ["Y^2 - T", "Y^3 + T*Y + T", "Y^3 - T*Y^2 + (T - 3)*Y + 1"] {
            let p = parse_bipoly(text).unwrap();
            let two_step = moebius_apply(&moebius_apply(&p, &m1), &m2);
            let one_step = moebius_apply(&p, &m1.compose(&m2));
            prop_assert!(equal_up_to_y_scale(&one_step, &two_step), "{} vs {}", two_step, one_step);
        }
    }

    #[test]
    fn kronecker_multiplicative_top(a in -200i64..200, b in -200i64..200, n in 1i64..400) {
        prop_assume!(a != 0 && b != 0);
        let k = |x: i64| kronecker(&BigInt::from(x), &BigInt::from(n));
        prop_assert_eq!(k(a * b), k(a) * k(b));
    }

    #[test]
    fn curve_identities_after_twist(e in curve(), d in squarefree_d()) {
        let tw = quadratic_twist(&e, &d).unwrap();
        for c in [&e, &tw] {
            let (c4, c6, disc) = (c.c4(), c.c6(), c.discriminant());
            prop_assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, BigInt::from(1728) * disc);
        }
        prop_assert!(quadratic_twist(&tw, &d).unwrap().is_isomorphic(&e));
    }

    #[test]
    fn conductor_bounds(e in curve()) {
        let m = minimal_model(&e);
        prop_assert!(m.is_isomorphic(&e));
        let data = conductor_and_root_number(&m);
        let disc = m.discriminant();
        for l in &data.locals {
            prop_assert!(l.f_p <= valuation(&disc, &l.p));
            prop_assert_eq!(l.f_p == 0, l.w_p == Some(1) && l.reduction.as_str() == "good");
            if l.p >= BigInt::from(5) {
                prop_assert!(l.f_p <= 2);
                prop_assert_eq!(ogg_exponent(&m, &l.p), Some(l.f_p));
            }
            // the algorithm's model is minimal at p
            prop_assert_eq!(tate(&m, &l.p).local.v_delta_min, valuation(&disc, &l.p));
        }
    }

    #[test]
    fn witnesses_lie_on_the_curve(c in prop::array::uniform4(-6i64..=6), u0 in -6i64..=6) {
        prop_assume!(c[3] != 0 && u0 != 0);
        let q = UniPoly::from_ints(&c);
        let k = NumberField::rationals();
        if let Some((t, y)) = witness_search(&q, &Rat::from_integer(u0.into()), &k, 4) {
            let y = y.as_rational().unwrap();
            prop_assert!(!y.is_zero());
            prop_assert_eq!(y.clone() * y, Rat::from_integer(u0.into()) * q.eval(&t));
        }
    }

    #[test]
    fn cyclic_genus_zero(n in 2usize..30) {
        prop_assert_eq!(genus_galois(n, &[n, n]).unwrap(), 0);
        prop_assert_eq!(genus_galois(2 * n, &[2, 2, n]).unwrap(), 0);
    }
}

#[test]
fn height_layers_are_exact() {
    for h in 1..15i64 {
        let layer = height_layer(h);
        let mut seen = std::collections::BTreeSet::new();
        for r in &layer {
            let ht = r.numer().magnitude().max(r.denom().magnitude()).clone();
            assert_eq!(ht, num_bigint::BigUint::from(h as u64));
            assert!(seen.insert(r.clone()));
        }
    }
}
