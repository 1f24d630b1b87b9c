//! Tate's algorithm, minimal models and local root numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::curve::{valuation, EllipticCurve};
use super::kronecker;
use crate::exact::ring::factor_int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl Reduction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reduction::Good => "good",
            Reduction::SplitMultiplicative => "split-multiplicative",
            Reduction::NonsplitMultiplicative => "nonsplit-multiplicative",
            Reduction::Additive => "additive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    #[serde(serialize_with = "ser_int")]
    pub p: BigInt,
    pub kodaira: Kodaira,
    pub f_p: u32,
    pub reduction: Reduction,
    /// None for additive reduction at 2 or 3.
    pub w_p: Option<i8>,
    /// Valuation of the minimal discriminant.
    pub v_delta_min: u32,
}

pub(crate) fn ser_int<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Output of one run of the algorithm: local data and a model minimal at p.
#[derive(Clone, Debug)]
pub struct TateOutput {
    pub local: LocalData,
    pub model: EllipticCurve,
}

fn pw(p: &BigInt, k: u32) -> BigInt {
    num_traits::pow(p.clone(), k as usize)
}

fn divides(p: &BigInt, n: &BigInt) -> bool {
    (n % p).is_zero()
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.mod_floor(m).extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

fn zero() -> BigInt {
    BigInt::zero()
}

/// A point (x0, y0) of the reduction mod p at which the curve is singular.
fn singular_point(e: &EllipticCurve, p: &BigInt) -> (BigInt, BigInt) {
    if p.to_u32().is_some_and(|q| q <= 3) {
        let q = p.to_i64().unwrap();
        for x in 0..q {
            for y in 0..q {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                let f = &y * &y + &e.a1 * &x * &y + &e.a3 * &y - &x * &x * &x - &e.a2 * &x * &x - &e.a4 * &x - &e.a6;
                let fx = &e.a1 * &y - BigInt::from(3) * &x * &x - BigInt::from(2) * &e.a2 * &x - &e.a4;
                let fy = BigInt::from(2) * &y + &e.a1 * &x + &e.a3;
                if divides(p, &f) && divides(p, &fx) && divides(p, &fy) {
                    return (x, y);
                }
            }
        }
        unreachable!("bad reduction without a singular point");
    }
    let c4 = e.c4();
    let r = if divides(p, &c4) {
        -e.b2() * inverse_mod(&BigInt::from(12), p)
    } else {
        -(e.c6() + e.b2() * &c4) * inverse_mod(&(BigInt::from(12) * &c4), p)
    };
    let r = r.mod_floor(p);
    let t = (-(&e.a1 * &r + &e.a3) * inverse_mod(&BigInt::from(2), p)).mod_floor(p);
    (r, t)
}

/// Roots mod p of T^3 + a T^2 + b T + c, returned with multiplicities.
fn cubic_roots_mod(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> Vec<(BigInt, u32)> {
    let ev = |x: &BigInt| x * x * x + a * x * x + b * x + c;
    let d1 = |x: &BigInt| BigInt::from(3) * x * x + BigInt::from(2) * a * x + b;
    if let Some(q) = p.to_u32().filter(|q| *q <= 3) {
        // at 2 and 3 derivatives do not separate multiplicities; count by division
        let mut out = Vec::new();
        let mut poly = vec![c.mod_floor(p), b.mod_floor(p), a.mod_floor(p), BigInt::one()];
        for x in 0..q {
            let x = BigInt::from(x);
            let mut m = 0;
            loop {
                let val = poly.iter().rev().fold(zero(), |acc, co| (acc * &x + co).mod_floor(p));
                if poly.len() < 2 || !val.is_zero() {
                    break;
                }
                // synthetic division by (T - x)
                let n = poly.len() - 1;
                let mut q = vec![zero(); n];
                let mut carry = zero();
                for i in (0..n).rev() {
                    carry = (&poly[i + 1] + &carry * &x).mod_floor(p);
                    q[i] = carry.clone();
                }
                poly = q;
                m += 1;
            }
            if m > 0 {
                out.push((x, m));
            }
        }
        return out;
    }
    // p >= 5: a multiple root is a root of the derivative
    let disc_shift = a * a - BigInt::from(3) * b;
    if divides(p, &disc_shift) {
        let x = (-a * inverse_mod(&BigInt::from(3), p)).mod_floor(p);
        if divides(p, &ev(&x)) {
            return vec![(x, 3)];
        }
    } else {
        let num = BigInt::from(9) * c - a * b;
        let x = (num * inverse_mod(&(BigInt::from(2) * &disc_shift), p)).mod_floor(p);
        if divides(p, &ev(&x)) && divides(p, &d1(&x)) {
            return vec![(x, 2)];
        }
    }
    Vec::new()
}

/// Whether the quadratic T^2 + b T + c has a repeated root mod p.
fn quad_double_root(b: &BigInt, c: &BigInt, p: &BigInt) -> Option<BigInt> {
    if p == &BigInt::from(2) {
        return b.is_even().then(|| c.mod_floor(p));
    }
    divides(p, &(b * b - BigInt::from(4) * c)).then(|| (-b * inverse_mod(&BigInt::from(2), p)).mod_floor(p))
}

/// Tate's algorithm at the prime p.
pub fn tate(e: &EllipticCurve, p: &BigInt) -> TateOutput {
    let mut e = e.clone();
    loop {
        let v = valuation(&e.discriminant(), p);
        let done = |e: EllipticCurve, kodaira, f_p, reduction| {
            let v_delta_min = valuation(&e.discriminant(), p);
            let mut local = LocalData { p: p.clone(), kodaira, f_p, reduction, w_p: None, v_delta_min };
            local.w_p = local_root_number(&e, &local);
            TateOutput { local, model: e }
        };
        if v == 0 {
            return done(e, Kodaira::I(0), 0, Reduction::Good);
        }
        let (r, t) = singular_point(&e, p);
        e = e.transform(&r, &zero(), &t);
        debug_assert!(divides(p, &e.a3) && divides(p, &e.a4) && divides(p, &e.a6));
        let b2 = e.b2();
        if !divides(p, &b2) {
            let split = if p == &BigInt::from(2) { e.a2.is_even() } else { kronecker(&b2, p) == 1 };
            let red = if split { Reduction::SplitMultiplicative } else { Reduction::NonsplitMultiplicative };
            return done(e, Kodaira::I(v), 1, red);
        }
        if !divides(&pw(p, 2), &e.a6) {
            return done(e, Kodaira::II, v, Reduction::Additive);
        }
        if !divides(&pw(p, 3), &e.b8()) {
            return done(e, Kodaira::III, v - 1, Reduction::Additive);
        }
        if !divides(&pw(p, 3), &e.b6()) {
            return done(e, Kodaira::IV, v - 2, Reduction::Additive);
        }
        // make p | a1, a2 and p^2 | a3, a4, p^3 | a6
        e = shift_for_star(&e, p);
        let (a, b, c) = (&e.a2 / p, &e.a4 / pw(p, 2), &e.a6 / pw(p, 3));
        let roots = cubic_roots_mod(&a, &b, &c, p);
        match roots.iter().map(|(_, m)| *m).max() {
            None | Some(1) => return done(e, Kodaira::IStar(0), v - 4, Reduction::Additive),
            Some(2) => {
                let alpha = roots.iter().find(|(_, m)| *m == 2).unwrap().0.clone();
                e = e.transform(&(p * alpha), &zero(), &zero());
                let (e2, m) = istar_chain(e, p);
                return done(e2, Kodaira::IStar(m), v - 4 - m, Reduction::Additive);
            }
            Some(_) => {
                let alpha = roots[0].0.clone();
                e = e.transform(&(p * alpha), &zero(), &zero());
            }
        }
        // triple root moved to 0: p^2 | a2, p^3 | a4, p^4 | a6
        let (xa3, xa6) = (&e.a3 / pw(p, 2), &e.a6 / pw(p, 4));
        match quad_double_root(&xa3, &-xa6, p) {
            None => return done(e, Kodaira::IVStar, v - 6, Reduction::Additive),
            Some(y) => e = e.transform(&zero(), &zero(), &(pw(p, 2) * y)),
        }
        if !divides(&pw(p, 4), &e.a4) {
            return done(e, Kodaira::IIIStar, v - 7, Reduction::Additive);
        }
        if !divides(&pw(p, 6), &e.a6) {
            return done(e, Kodaira::IIStar, v - 8, Reduction::Additive);
        }
        e = e.scale_down(p);
    }
}

fn shift_for_star(e: &EllipticCurve, p: &BigInt) -> EllipticCurve {
    let ok = |e: &EllipticCurve| {
        divides(p, &e.a1)
            && divides(p, &e.a2)
            && divides(&pw(p, 2), &e.a3)
            && divides(&pw(p, 2), &e.a4)
            && divides(&pw(p, 3), &e.a6)
    };
    if p.to_u32().is_some_and(|q| q <= 3) {
        let q = p.to_i64().unwrap();
        for s in 0..q {
            for t in 0..q * q * q {
                let cand = e.transform(&zero(), &BigInt::from(s), &(p * BigInt::from(t)));
                if ok(&cand) {
                    return cand;
                }
            }
        }
        unreachable!("no translation reaching the star configuration");
    }
    let half = inverse_mod(&BigInt::from(2), p);
    let s = (-&e.a1 * &half).mod_floor(p);
    let e = e.transform(&zero(), &s, &zero());
    let p2 = pw(p, 2);
    let t = (-&e.a3 * inverse_mod(&BigInt::from(2), &p2)).mod_floor(&p2);
    let e = e.transform(&zero(), &zero(), &t);
    debug_assert!(ok(&e));
    e
}

/// The I_m* subprocedure; returns the final model and m >= 1.
fn istar_chain(mut e: EllipticCurve, p: &BigInt) -> (EllipticCurve, u32) {
    let mut m = 1;
    let mut mx = pw(p, 2);
    let mut my = pw(p, 2);
    loop {
        let xa2 = &e.a2 / p;
        let xa3 = &e.a3 / &my;
        let xa6 = &e.a6 / (&mx * &my);
        match quad_double_root(&xa3, &-&xa6, p) {
            None => return (e, m),
            Some(y) => e = e.transform(&zero(), &zero(), &(&my * y)),
        }
        my *= p;
        m += 1;
        let xa4 = &e.a4 / (p * &mx);
        let xa6 = &e.a6 / (&mx * &my);
        // xa2 X^2 + xa4 X + xa6 with xa2 a unit
        let inv = inverse_mod(&xa2, p);
        match quad_double_root(&(&xa4 * &inv), &(&xa6 * &inv), p) {
            None => return (e, m),
            Some(x) => e = e.transform(&(&mx * x), &zero(), &zero()),
        }
        mx *= p;
        m += 1;
    }
}

/// Local root number from the reduction type; None for additive reduction at 2 and 3.
fn local_root_number(e: &EllipticCurve, l: &LocalData) -> Option<i8> {
    let p = &l.p;
    match l.reduction {
        Reduction::Good | Reduction::NonsplitMultiplicative => Some(1),
        Reduction::SplitMultiplicative => Some(-1),
        Reduction::Additive if p <= &BigInt::from(3) => None,
        Reduction::Additive => {
            let sym = |a: i64| kronecker(&BigInt::from(a), p);
            if is_potentially_multiplicative(e, p) {
                return Some(sym(-1));
            }
            let ee = 12 / (l.v_delta_min as u64).gcd(&12);
            Some(match ee {
                2 | 6 => sym(-1),
                3 => sym(-3),
                4 => sym(-2),
                _ => 1,
            })
        }
    }
}

fn is_potentially_multiplicative(e: &EllipticCurve, p: &BigInt) -> bool {
    let j = e.j_invariant();
    valuation(j.denom(), p) > 0 && !j.numer().is_zero()
}

/// Conductor exponent at p >= 5 from Ogg's formula, computed without Tate's loop.
pub fn ogg_exponent(e: &EllipticCurve, p: &BigInt) -> Option<u32> {
    if p < &BigInt::from(5) {
        return None;
    }
    let (c4, c6, d) = (e.c4(), e.c6(), e.discriminant());
    let (v4, v6, vd) = (valuation(&c4, p), valuation(&c6, p), valuation(&d, p));
    let k = (v4 / 4).min(v6 / 6).min(vd / 12);
    let vmin = vd - 12 * k;
    if vmin == 0 {
        return Some(0);
    }
    let v4min = v4.saturating_sub(4 * k);
    if v4min == 0 {
        return Some(1);
    }
    let components = if v4min.saturating_mul(3) < vmin {
        // potentially multiplicative: I_n* with n = vmin - 6
        vmin - 6 + 5
    } else {
        match vmin {
            2 => 1,
            3 => 2,
            4 => 3,
            6 => 5,
            8 => 7,
            9 => 8,
            10 => 9,
            _ => return None,
        }
    };
    Some(vmin - components + 1)
}

/// Global minimal model, reduced.
pub fn minimal_model(e: &EllipticCurve) -> EllipticCurve {
    let mut e = e.clone();
    for (p, _) in factor_int(&e.discriminant()) {
        e = tate(&e, &p).model;
    }
    e.reduced()
}

/// Local data at every prime dividing the discriminant.
pub fn bad_primes(e: &EllipticCurve) -> Vec<LocalData> {
    factor_int(&e.discriminant())
        .into_iter()
        .map(|(p, _)| tate(e, &p).local)
        .filter(|l| l.reduction != Reduction::Good)
        .collect()
}
