//! Weierstrass models over Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SchinzelError;
use crate::exact::ring::{common_denom, squarefree_int};
use crate::exact::{Rat, UniPoly};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

impl EllipticCurve {
    pub fn new(a: [BigInt; 5]) -> Result<Self, SchinzelError> {
        let [a1, a2, a3, a4, a6] = a;
        let e = EllipticCurve { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(SchinzelError::Singular);
        }
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, SchinzelError> {
        Self::new(a.map(BigInt::from))
    }

    pub fn coeffs(&self) -> [BigInt; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn b2(&self) -> BigInt {
        &self.a1 * &self.a1 + b(4) * &self.a2
    }

    pub fn b4(&self) -> BigInt {
        b(2) * &self.a4 + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> BigInt {
        &self.a3 * &self.a3 + b(4) * &self.a6
    }

    pub fn b8(&self) -> BigInt {
        &self.a1 * &self.a1 * &self.a6 + b(4) * &self.a2 * &self.a6 - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4
    }

    pub fn c4(&self) -> BigInt {
        let b2 = self.b2();
        &b2 * &b2 - b(24) * self.b4()
    }

    pub fn c6(&self) -> BigInt {
        let b2 = self.b2();
        -(&b2 * &b2 * &b2) + b(36) * &b2 * self.b4() - b(216) * self.b6()
    }

    pub fn discriminant(&self) -> BigInt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - b(8) * &b4 * &b4 * &b4 - b(27) * &b6 * &b6 + b(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Rat {
        let c4 = self.c4();
        Rat::new(&c4 * &c4 * &c4, self.discriminant())
    }

    /// The model obtained by x = x' + r, y = y' + s x' + t.
    pub fn transform(&self, r: &BigInt, s: &BigInt, t: &BigInt) -> Self {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        EllipticCurve {
            a1: a1 + b(2) * s,
            a2: a2 - s * a1 + b(3) * r - s * s,
            a3: a3 + r * a1 + b(2) * t,
            a4: a4 - s * a3 + b(2) * r * a2 - (t + r * s) * a1 + b(3) * r * r - b(2) * s * t,
            a6: a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
        }
    }

    /// Divide a_i by u^i; the caller guarantees divisibility.
    pub fn scale_down(&self, u: &BigInt) -> Self {
        let pw = |i: u32| num_traits::pow(u.clone(), i as usize);
        EllipticCurve {
            a1: &self.a1 / pw(1),
            a2: &self.a2 / pw(2),
            a3: &self.a3 / pw(3),
            a4: &self.a4 / pw(4),
            a6: &self.a6 / pw(6),
        }
    }

    /// Standard normalisation a1, a3 in {0, 1}, a2 in {-1, 0, 1}.
    pub fn reduced(&self) -> Self {
        let s = (self.a1.mod_floor(&b(2)) - &self.a1) / b(2);
        let e = self.transform(&BigInt::zero(), &s, &BigInt::zero());
        let a2m = e.a2.mod_floor(&b(3));
        let target = if a2m == b(2) { b(-1) } else { a2m };
        let r = (&target - &e.a2) / b(3);
        let e = e.transform(&r, &BigInt::zero(), &BigInt::zero());
        let t = (e.a3.mod_floor(&b(2)) - &e.a3) / b(2);
        e.transform(&BigInt::zero(), &BigInt::zero(), &t)
    }

    /// Short model y^2 = x^3 - 27 c4 x - 54 c6, isomorphic over Q.
    pub fn short_model(&self) -> (BigInt, BigInt) {
        (b(-27) * self.c4(), b(-54) * self.c6())
    }

    /// Whether the curves are isomorphic over Q.
    pub fn is_isomorphic(&self, o: &Self) -> bool {
        let (c4, c6, d4, d6) = (self.c4(), self.c6(), o.c4(), o.c6());
        if self.j_invariant() != o.j_invariant() {
            return false;
        }
        // c4' = u^4 c4 and c6' = u^6 c6 for some rational u
        let lam = if c4.is_zero() {
            // j = 0: need c6'/c6 a sixth power
            return is_rational_power(&Rat::new(d6, c6), 6);
        } else if c6.is_zero() {
            return is_rational_power(&Rat::new(d4, c4), 4);
        } else {
            Rat::new(&d6 * &c4, &c6 * &d4)
        };
        is_rational_power(&lam, 2) && Rat::from(d4) == lam.clone() * lam * Rat::from(c4)
    }
}

fn is_rational_power(r: &Rat, k: u32) -> bool {
    let root = |n: &BigInt| {
        let x = n.abs().nth_root(k);
        (num_traits::pow(x.clone(), k as usize) == n.abs()).then_some(x)
    };
    if r.is_negative() && k.is_multiple_of(2) {
        return false;
    }
    root(r.numer()).is_some() && root(r.denom()).is_some()
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

/// Q(x) with y^2 = Q(x) isomorphic to e: completing the square gives
/// x^3 + (b2/4) x^2 + (b4/2) x + b6/4.
pub fn cubic_model(e: &EllipticCurve) -> UniPoly {
    UniPoly::new(vec![Rat::new(e.b6(), b(4)), Rat::new(e.b4(), b(2)), Rat::new(e.b2(), b(4)), Rat::from(b(1))])
}

/// Integral model of y^2 = q(x) for a separable cubic q, with the scaling
/// factor m (the model is reached by X = m^2 x', Y = m^3 y' after making q monic).
pub fn integral_short_model(q: &UniPoly) -> Result<(EllipticCurve, BigInt), SchinzelError> {
    if q.deg() != 3 {
        return Err(SchinzelError::WrongDegree(q.deg()));
    }
    if !q.is_squarefree() {
        return Err(SchinzelError::Singular);
    }
    // y^2 = a x^3 + b x^2 + c x + d  ->  (a y)^2 = (a x)^3 + b (a x)^2 + a c (a x) + a^2 d
    let a = q.coeff(3);
    let (a2, a4, a6) = (q.coeff(2), a.clone() * q.coeff(1), a.clone() * a * q.coeff(0));
    let m = scaling_for(&a2, &a4, &a6);
    let pw = |k: usize| Rat::from(num_traits::pow(m.clone(), k));
    let int = |r: Rat| {
        debug_assert!(r.is_integer());
        r.to_integer()
    };
    let e = EllipticCurve::new([BigInt::zero(), int(a2 * pw(2)), BigInt::zero(), int(a4 * pw(4)), int(a6 * pw(6))])?;
    Ok((e, m))
}

/// Smallest m > 0 with m^2 a2, m^4 a4, m^6 a6 integral.
fn scaling_for(a2: &Rat, a4: &Rat, a6: &Rat) -> BigInt {
    let den = common_denom([a2, a4, a6]);
    let mut m = BigInt::one();
    for (p, _) in crate::exact::ring::factor_int(&den) {
        let need = |r: &Rat, w: u32| {
            let v = valuation(r.denom(), &p);
            v.div_ceil(w)
        };
        let k = need(a2, 2).max(need(a4, 4)).max(need(a6, 6));
        m *= num_traits::pow(p.clone(), k as usize);
    }
    m
}

pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Quadratic twist by a squarefree d, returned as a reduced minimal model.
pub fn quadratic_twist(e: &EllipticCurve, d: &BigInt) -> Result<EllipticCurve, SchinzelError> {
    if d.is_zero() || &squarefree_int(d) != d {
        return Err(SchinzelError::NotSquarefree(d.clone()));
    }
    if d.is_one() {
        return Ok(e.clone());
    }
    let (a, bb) = if e.a1.is_zero() && e.a2.is_zero() && e.a3.is_zero() {
        (e.a4.clone(), e.a6.clone())
    } else {
        e.short_model()
    };
    let tw = EllipticCurve::new([BigInt::zero(), BigInt::zero(), BigInt::zero(), a * d * d, bb * d * d * d])?;
    Ok(super::tate::minimal_model(&tw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn invariants_identity() {
        for a in [[0, -1, 1, -7, 10], [0, 0, 0, 0, 1], [1, -1, 1, -5, 7], [0, 0, 1, -38, 90]] {
            let e = EllipticCurve::from_ints(a).unwrap();
            let (c4, c6, d) = (e.c4(), e.c6(), e.discriminant());
            assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, BigInt::from(1728) * d);
        }
    }

    #[test]
    fn integral_models() {
        let (e, m) = integral_short_model(&UniPoly::from_ints(&[1, 1, 0, 1])).unwrap();
        assert_eq!((e, m), (EllipticCurve::from_ints([0, 0, 0, 1, 1]).unwrap(), BigInt::one()));
        let q = UniPoly::new(vec![ratio(41, 4), rat(-7), rat(-1), rat(1)]);
        let (e, m) = integral_short_model(&q).unwrap();
        assert_eq!(e, EllipticCurve::from_ints([0, -4, 0, -112, 656]).unwrap());
        assert_eq!(m, BigInt::from(2));
        let (e, _) = integral_short_model(&UniPoly::new(vec![rat(0), ratio(1, 4), rat(0), rat(1)])).unwrap();
        assert_eq!(e, EllipticCurve::from_ints([0, 0, 0, 4, 0]).unwrap());
        assert!(matches!(integral_short_model(&UniPoly::from_ints(&[0, 0, 1])), Err(SchinzelError::WrongDegree(2))));
        let cm = EllipticCurve::from_ints([0, -1, 1, -7, 10]).unwrap();
        assert_eq!(cubic_model(&cm), q);
    }

    #[test]
    fn twists() {
        let e = EllipticCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(quadratic_twist(&e, &BigInt::from(-1)).unwrap(), e);
        let e = EllipticCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(quadratic_twist(&e, &BigInt::from(2)).unwrap(), EllipticCurve::from_ints([0, 0, 0, 0, 8]).unwrap());
        assert_eq!(quadratic_twist(&e, &BigInt::one()).unwrap(), e);
        let f = EllipticCurve::from_ints([0, -1, 1, -7, 10]).unwrap();
        let back = quadratic_twist(&quadratic_twist(&f, &BigInt::from(-7)).unwrap(), &BigInt::from(-7)).unwrap();
        assert!(back.is_isomorphic(&f));
        assert!(!quadratic_twist(&f, &BigInt::from(2)).unwrap().is_isomorphic(&f));
        assert!(quadratic_twist(&f, &BigInt::from(12)).is_err());
    }
}
