//! Elliptic curves y^2 = Q(x): conductors, root numbers, quadratic twists and
//! rational points on twisted curves.

pub mod curve;
pub mod tate;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub use curve::{cubic_model, integral_short_model, quadratic_twist, valuation, EllipticCurve};
pub use tate::{minimal_model, ogg_exponent, tate, Kodaira, LocalData, Reduction};

use crate::build::height_layer;
use crate::exact::ring::squarefree_int;
use crate::exact::{NfElem, NumberField, Rat, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchinzelError {
    #[error("singular curve (zero discriminant)")]
    Singular,
    #[error("expected a cubic, got degree {0}")]
    WrongDegree(usize),
    #[error("{0} is not a squarefree nonzero integer")]
    NotSquarefree(BigInt),
    #[error("m = {0} is not one of 11, 19, 43, 67, 163")]
    UnsupportedM(i64),
    #[error("root number unknown: {0}")]
    PartialRootNumber(String),
}

/// The Kronecker symbol (a | n).
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut res = 1i8;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            res = -res;
        }
    }
    let two = BigInt::from(2);
    let v = valuation(&n, &two);
    if v > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= v as usize;
        let r = a.mod_floor(&BigInt::from(8));
        if v % 2 == 1 && (r == BigInt::from(3) || r == BigInt::from(5)) {
            res = -res;
        }
    }
    // Jacobi symbol (a | n) for odd positive n
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            res = -res;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        res
    } else {
        0
    }
}

/// Discriminant of Q(sqrt d) for squarefree d.
pub fn fundamental_discriminant(d: &BigInt) -> BigInt {
    if d.mod_floor(&BigInt::from(4)).is_one() {
        d.clone()
    } else {
        BigInt::from(4) * d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveArithData {
    #[serde(serialize_with = "tate::ser_int")]
    pub conductor: BigInt,
    /// Global root number; None when a local factor is unknown.
    pub w: Option<i8>,
    pub partial: bool,
    pub locals: Vec<LocalData>,
}

/// Conductor and global root number W = -prod w_p.
pub fn conductor_and_root_number(e: &EllipticCurve) -> CurveArithData {
    assemble(tate::bad_primes(e))
}

fn assemble(locals: Vec<LocalData>) -> CurveArithData {
    let conductor = locals.iter().fold(BigInt::one(), |acc, l| acc * num_traits::pow(l.p.clone(), l.f_p as usize));
    let w = locals.iter().try_fold(-1i8, |acc, l| l.w_p.map(|x| acc * x));
    CurveArithData { conductor, w, partial: w.is_none(), locals }
}

/// (-1, d)_p: the value at -1 of the local character of Q(sqrt d) at p.
fn hilbert_minus_one(d: &BigInt, p: &BigInt) -> i8 {
    if p == &BigInt::from(2) {
        let odd = d >> valuation(d, p) as usize;
        if odd.mod_floor(&BigInt::from(4)).is_one() {
            1
        } else {
            -1
        }
    } else if valuation(d, p) % 2 == 1 {
        kronecker(&BigInt::from(-1), p)
    } else {
        1
    }
}

/// Arithmetic data of the twist by d. Where the twist is additive at 2 or 3
/// but e is good or multiplicative there, w_p = (-1, d)_p.
pub fn twist_arith(e: &EllipticCurve, d: &BigInt) -> Result<CurveArithData, SchinzelError> {
    let tw = quadratic_twist(e, d)?;
    let mut locals = tate::bad_primes(&tw);
    for l in locals.iter_mut().filter(|l| l.w_p.is_none()) {
        if tate(e, &l.p).local.reduction != Reduction::Additive {
            l.w_p = Some(hilbert_minus_one(d, &l.p));
        }
    }
    Ok(assemble(locals))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    #[serde(serialize_with = "tate::ser_int")]
    pub d: BigInt,
    #[serde(serialize_with = "tate::ser_int")]
    pub fundamental_discriminant: BigInt,
    pub w_e: i8,
    pub w_twist: i8,
    pub w_over_k: i8,
    /// kronecker(D, -N) W(E), recorded when gcd(D, N) = 1.
    pub shortcut: Option<i8>,
}

/// W(E / Q(sqrt d)) = W(E) W(E^(d)).
pub fn root_number_over_quadratic(e: &EllipticCurve, d: &BigInt) -> Result<TwistReport, SchinzelError> {
    let base = conductor_and_root_number(e);
    let w_e = base.w.ok_or_else(|| SchinzelError::PartialRootNumber(format!("additive reduction of {e} at 2 or 3")))?;
    let tw = twist_arith(e, d)?;
    let w_twist = tw.w.ok_or_else(|| SchinzelError::PartialRootNumber(format!("twist of {e} by {d}")))?;
    let disc = fundamental_discriminant(d);
    let shortcut = (d.is_one() || disc.gcd(&base.conductor).is_one()).then(|| kronecker(&disc, &-&base.conductor) * w_e);
    Ok(TwistReport { d: d.clone(), fundamental_discriminant: disc, w_e, w_twist, w_over_k: w_e * w_twist, shortcut })
}

pub const CM_DISCRIMINANTS: [i64; 5] = [11, 19, 43, 67, 163];

/// A model of the curve of conductor m^2 with CM by the maximal order of Q(sqrt -m).
pub fn cm_curve(m: i64) -> Result<EllipticCurve, SchinzelError> {
    let a: [i64; 5] = match m {
        11 => [0, -1, 1, -7, 10],
        19 => [0, 0, 1, -38, 90],
        43 => [0, 0, 1, -860, 9707],
        67 => [0, 0, 1, -7370, 243528],
        163 => [0, 0, 1, -2174420, 1234136692],
        _ => return Err(SchinzelError::UnsupportedM(m)),
    };
    EllipticCurve::from_ints(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawfulEvilEntry {
    pub d: i64,
    pub symbol: i8,
    pub passes: bool,
    /// W(E / Q(sqrt -d)) for passing d.
    pub w_over_k: Option<i8>,
}

/// For squarefree 0 < d <= d_range: whether (d/m) = 1, with W(E/Q(sqrt -d)) for passing d.
pub fn lawful_evil_report(e: &EllipticCurve, m: i64, d_range: i64) -> Result<Vec<LawfulEvilEntry>, SchinzelError> {
    if !CM_DISCRIMINANTS.contains(&m) {
        return Err(SchinzelError::UnsupportedM(m));
    }
    let mut out = Vec::new();
    for d in 1..=d_range {
        let db = BigInt::from(d);
        if squarefree_int(&db) != db {
            continue;
        }
        let symbol = kronecker(&db, &BigInt::from(m));
        let passes = symbol == 1;
        let w_over_k = if passes { Some(root_number_over_quadratic(e, &-db)?.w_over_k) } else { None };
        out.push(LawfulEvilEntry { d, symbol, passes, w_over_k });
    }
    Ok(out)
}

/// Smallest-height t in Q with u0 q(t) a nonzero square in k, and a square root y.
pub fn witness_search(q: &UniPoly, u0: &Rat, k: &NumberField, height_bound: i64) -> Option<(Rat, NfElem)> {
    for h in 0..=height_bound {
        for t in height_layer(h) {
            let v = u0.clone() * q.eval(&t);
            if v.is_zero() {
                continue;
            }
            if let Some(y) = k.sqrt(&k.from_rat(&v)) {
                return Some((t, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
