use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exact::{rat, ratio};

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

fn curve(a: [i64; 5]) -> EllipticCurve {
    EllipticCurve::from_ints(a).unwrap()
}

fn paper_cubic() -> UniPoly {
    UniPoly::new(vec![ratio(41, 4), rat(-7), rat(-1), rat(1)])
}

fn legendre_brute(a: i64, p: i64) -> i8 {
    let a = a.rem_euclid(p);
    if a == 0 {
        0
    } else if (1..p).any(|x| x * x % p == a) {
        1
    } else {
        -1
    }
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn kronecker_against_brute_force() {
    for p in (3..100).filter(|p| is_prime(*p)) {
        for a in -30..30 {
            assert_eq!(kronecker(&z(a), &z(p)), legendre_brute(a, p), "({a}|{p})");
        }
    }
    let squares: Vec<i64> = (0..11).filter(|d| kronecker(&z(*d), &z(11)) == 1).collect();
    assert_eq!(squares, vec![1, 3, 4, 5, 9]);
    assert_eq!(kronecker(&z(5), &z(11)), 1);
    assert_eq!(kronecker(&z(2), &z(11)), -1);
    for n in -20..20 {
        assert_eq!(kronecker(&z(1), &z(n)), 1);
    }
}

#[test]
fn kronecker_multiplicative() {
    for a in -12..12 {
        for b in -12..12 {
            for n in -15..15 {
                if a != 0 && b != 0 {
                    assert_eq!(kronecker(&z(a * b), &z(n)), kronecker(&z(a), &z(n)) * kronecker(&z(b), &z(n)));
                    assert_eq!(kronecker(&z(n), &z(a * b)), kronecker(&z(n), &z(a)) * kronecker(&z(n), &z(b)));
                }
            }
        }
    }
    // values at 2: (a|2) depends on a mod 8
    assert_eq!([1, 3, 5, 7].map(|a| kronecker(&z(a), &z(2))), [1, -1, -1, 1]);
}

#[test]
fn local_examples() {
    let l = tate(&curve([0, 0, 0, 0, 1]), &z(7)).local;
    assert_eq!((l.reduction, l.f_p, l.w_p), (Reduction::Good, 0, Some(1)));
    let l = tate(&curve([0, -1, 1, 0, 0]), &z(11)).local;
    assert_eq!((l.kodaira, l.f_p), (Kodaira::I(1), 1));
    assert_eq!(l.reduction, Reduction::SplitMultiplicative);
    let (e, _) = integral_short_model(&paper_cubic()).unwrap();
    let l = tate(&e, &z(11)).local;
    assert_eq!((l.reduction, l.f_p, l.kodaira), (Reduction::Additive, 2, Kodaira::III));
    assert_eq!(ogg_exponent(&e, &z(11)), Some(2));
}

#[test]
fn paper_curve() {
    let (e, m) = integral_short_model(&paper_cubic()).unwrap();
    assert_eq!(m, z(2));
    let (c4, c6, d) = (e.c4(), e.c6(), e.discriminant());
    assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, z(1728) * &d);
    let bad: Vec<_> = tate::bad_primes(&e).into_iter().map(|l| l.p).collect();
    assert_eq!(bad, vec![z(11)]);
    let data = conductor_and_root_number(&e);
    assert_eq!(data.conductor, z(121));
    assert_eq!(data.w, Some(-1));
    assert_eq!(minimal_model(&e), cm_curve(11).unwrap());
}

#[test]
fn conductors_and_signs() {
    // (a-invariants, conductor, root number)
    let table: [([i64; 5], i64, Option<i8>); 8] = [
        ([0, -1, 1, 0, 0], 11, Some(1)),
        ([0, -1, 1, -10, -20], 11, Some(1)),
        ([0, 0, 1, -1, 0], 37, Some(-1)),
        ([0, 0, 1, 0, 0], 27, None),
        ([0, 0, 0, -1, 0], 32, None),
        ([0, 0, 0, 0, 1], 36, None),
        ([0, 0, 0, 1, 0], 64, None),
        ([1, 0, 1, 4, -6], 14, Some(1)),
    ];
    for (a, n, w) in table {
        let d = conductor_and_root_number(&curve(a));
        assert_eq!(d.conductor, z(n), "{a:?}");
        assert_eq!(d.w, w, "{a:?}");
        assert_eq!(d.partial, w.is_none());
    }
    let e = curve([0, 0, 0, 0, 1]);
    assert_eq!(conductor_and_root_number(&quadratic_twist(&e, &z(1)).unwrap()).conductor, z(36));
}

#[test]
fn twisted_conductors() {
    let e = curve([0, -1, 1, -10, -20]);
    for (d, n) in [(-1, 176), (2, 704), (3, 1584), (5, 275), (-11, 121)] {
        let tw = quadratic_twist(&e, &z(d)).unwrap();
        assert_eq!(conductor_and_root_number(&tw).conductor, z(n), "d = {d}");
        for l in tate::bad_primes(&tw).iter().filter(|l| l.p >= z(5)) {
            assert_eq!(ogg_exponent(&tw, &l.p), Some(l.f_p));
        }
    }
    let l = tate(&quadratic_twist(&e, &z(5)).unwrap(), &z(5)).local;
    assert_eq!(l.kodaira, Kodaira::IStar(0));
}

#[test]
fn cm_curves() {
    let js: [(i64, i64); 5] = [
        (11, -32768),
        (19, -884736),
        (43, -884736000),
        (67, -147197952000),
        (163, -262537412640768000),
    ];
    for (m, j) in js {
        let e = cm_curve(m).unwrap();
        assert_eq!(e.j_invariant(), rat(j), "m = {m}");
        let data = conductor_and_root_number(&e);
        assert_eq!(data.conductor, z(m * m), "m = {m}");
        for l in &data.locals {
            assert_eq!(ogg_exponent(&e, &l.p), Some(l.f_p));
        }
    }
    assert!(matches!(cm_curve(7), Err(SchinzelError::UnsupportedM(7))));
}

#[test]
fn twist_shortcut_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for a in [[0, -1, 1, -7, 10], [0, -1, 1, 0, 0], [0, 0, 1, -1, 0]] {
        let e = curve(a);
        let n = conductor_and_root_number(&e).conductor;
        let mut checked = 0;
        while checked < 20 {
            let d = z(rng.gen_range(-200..200));
            if d.is_zero() || d.is_one() || squarefree_int(&d) != d || !fundamental_discriminant(&d).gcd(&n).is_one() {
                continue;
            }
            let r = root_number_over_quadratic(&e, &d).unwrap();
            assert_eq!(Some(r.w_twist), r.shortcut, "{e} twisted by {d}");
            assert_eq!(r.w_over_k, r.w_e * r.w_twist);
            checked += 1;
        }
    }
}

#[test]
fn quadratic_root_numbers() {
    let e = cm_curve(11).unwrap();
    assert_eq!(root_number_over_quadratic(&e, &z(1)).unwrap().w_over_k, 1);
    let (model, _) = integral_short_model(&paper_cubic()).unwrap();
    let r = root_number_over_quadratic(&model, &z(-5)).unwrap();
    assert_eq!(r.shortcut, Some(r.w_twist));
    let e = curve([0, -1, 1, 0, 0]);
    let r = root_number_over_quadratic(&e, &z(-7)).unwrap();
    assert_eq!(r.w_twist, kronecker(&z(-7), &z(-11)) * r.w_e);
    assert!(matches!(root_number_over_quadratic(&curve([0, 0, 0, 0, 1]), &z(5)), Err(SchinzelError::PartialRootNumber(_))));
}

#[test]
fn lawful_evil() {
    let e = cm_curve(11).unwrap();
    let rep = lawful_evil_report(&e, 11, 30).unwrap();
    let find = |d: i64| rep.iter().find(|x| x.d == d).unwrap();
    assert!(find(5).passes);
    assert!(!find(2).passes);
    assert_eq!(find(11).symbol, 0);
    assert!(rep.iter().all(|x| x.d != 4 && x.d != 12));
    let passing: Vec<i64> = rep.iter().filter(|x| x.passes).map(|x| x.d).collect();
    assert_eq!(passing, vec![1, 3, 5, 14, 15, 23, 26]);
    assert!(rep.iter().filter(|x| x.passes).all(|x| x.w_over_k == Some(-1)));
    assert!(lawful_evil_report(&e, 7, 10).is_err());
}

fn brute_witness(q: &UniPoly, u0: &Rat, h: i64) -> Option<(Rat, Rat)> {
    let mut cands: Vec<(i64, i64, i64)> = Vec::new();
    for b in 1..=h {
        for a in -h..=h {
            if num_integer::gcd(a, b) == 1 || (a == 0 && b == 1) {
                cands.push((if a == 0 { 0 } else { a.abs().max(b) }, a, b));
            }
        }
    }
    // height, then denominator, then |numerator|, then sign
    cands.sort_by_key(|&(ht, a, b)| (ht, b, a.abs(), a < 0));
    cands.into_iter().find_map(|(_, a, b)| {
        let t = ratio(a, b);
        let v = u0.clone() * q.eval(&t);
        if v.is_zero() {
            return None;
        }
        crate::exact::ring::rat_sqrt(&v).map(|y| (t, y))
    })
}

#[test]
fn witnesses() {
    let qq = NumberField::rationals();
    let cube = UniPoly::from_ints(&[1, 0, 0, 1]);
    let (t, y) = witness_search(&cube, &rat(1), &qq, 5).unwrap();
    assert_eq!((t, y.as_rational().unwrap().abs()), (rat(0), rat(1)));
    let (t, y) = witness_search(&cube, &rat(4), &qq, 5).unwrap();
    assert_eq!((t, y.as_rational().unwrap().abs()), (rat(0), rat(2)));
    for u0 in [rat(1), rat(-1), rat(3), rat(-7)] {
        let fast = witness_search(&paper_cubic(), &u0, &qq, 10).map(|(t, y)| (t, y.as_rational().unwrap().abs()));
        let slow = brute_witness(&paper_cubic(), &u0, 10).map(|(t, y)| (t, y.abs()));
        assert_eq!(fast, slow, "u0 = {u0}");
        if let Some((t, y)) = fast {
            assert_eq!(y.clone() * y, u0 * paper_cubic().eval(&t));
        }
    }
    let k = NumberField::quadratic(-1).unwrap();
    let (t, y) = witness_search(&cube, &rat(-1), &k, 5).unwrap();
    assert_eq!(t, rat(0));
    assert_eq!(y.clone() * y, k.from_rat(&rat(-1)));
}

#[test]
fn twist_invariants() {
    let e = cm_curve(19).unwrap();
    for d in [-3, 2, 5, -7, 13, 30] {
        let tw = quadratic_twist(&e, &z(d)).unwrap();
        let (c4, c6, disc) = (tw.c4(), tw.c6(), tw.discriminant());
        assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, z(1728) * disc);
        assert!(quadratic_twist(&tw, &z(d)).unwrap().is_isomorphic(&e));
    }
}
