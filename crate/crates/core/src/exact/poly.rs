//! Dense univariate polynomials over an exact coefficient ring.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ring::{Field, Rat, Ring};

/// Dense polynomial, coefficients lowest degree first. Never has trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    c: Vec<R>,
}

/// Polynomial with rational coefficients.
pub type UniPoly = Poly<Rat>;

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(a: R) -> Self {
        Self::new(vec![a])
    }

    /// The monomial a*x^d.
    pub fn monomial(a: R, d: usize) -> Self {
        let mut c = vec![R::zero(); d + 1];
        c[d] = a;
        Self::new(c)
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| R::from_i64(n)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * R::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, a: &R) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc * g.clone() + Self::constant(a.clone());
        }
        acc
    }

    /// x^k * self.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Self { c }
    }

    /// Reverse the coefficient list relative to degree `n` (x^n * self(1/x)).
    pub fn reverse(&self, n: usize) -> Self {
        let mut c = vec![R::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Self::new(c)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }
}

impl<R: Field> Poly<R> {
    pub fn from_rats(c: &[Rat]) -> Self {
        Self::new(c.iter().map(R::from_rat).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![R::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let a = r[i + dd].clone() * inv.clone();
            if a.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] = r[i + j].clone() - a.clone() * b.clone();
            }
            q[i] = a;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun's squarefree decomposition: monic a_1, a_2, ... with
    /// self = lc * prod a_i^i. Entry i-1 holds a_i (possibly 1).
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = df.div_exact(&a).unwrap() - b.derivative();
        let mut out = Vec::new();
        loop {
            let g = b.gcd(&c);
            out.push(g.clone());
            b = b.div_exact(&g).unwrap();
            if b.deg() == 0 {
                break;
            }
            c = c.div_exact(&g).unwrap() - b.derivative();
        }
        out
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        let f = self.monic();
        f.div_exact(&f.gcd(&f.derivative())).unwrap()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> R {
        if self.is_zero() || other.is_zero() {
            return R::zero();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = R::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return acc * b.lc().pow(da as u32);
            }
            if da < db {
                if da * db % 2 == 1 {
                    acc = -acc;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return R::zero();
            }
            if da * db % 2 == 1 {
                acc = -acc;
            }
            acc = acc * b.lc().pow((da - r.deg()) as u32);
            a = b;
            b = r;
        }
    }

    /// Discriminant (-1)^(n(n-1)/2) Res(f, f') / lc(f).
    pub fn discriminant(&self) -> R {
        let n = self.deg();
        if n == 0 {
            return R::one();
        }
        let r = self.resultant(&self.derivative()).div(&self.lc());
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Lagrange interpolation through (x_i, y_i) with distinct x_i.
    pub fn interpolate(points: &[(R, R)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut num = Self::one();
            let mut den = R::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    num = num * Self::new(vec![-xj.clone(), R::one()]);
                    den = den * (xi.clone() - xj.clone());
                }
            }
            acc = acc + num.scale(&(yi.clone() * den.inv()));
        }
        acc
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly { c: vec![R::one()] }
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut long, short) = if self.c.len() >= o.c.len() { (self.c, o.c) } else { (o.c, self.c) };
        for (i, b) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + b;
        }
        Self::new(long)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }
}

impl UniPoly {
    /// Rational roots of a nonzero polynomial, sorted, without multiplicity.
    pub fn rational_roots(&self) -> Vec<Rat> {
        super::factor::factor_over_q(self)
            .map(|fs| {
                let mut r: Vec<Rat> = fs
                    .into_iter()
                    .filter(|(f, _)| f.deg() == 1)
                    .map(|(f, _)| -f.coeff(0))
                    .collect();
                r.sort();
                r
            })
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::{rat, ratio};

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn divrem_and_gcd() {
        let f = q(&[-1, 0, 1]);
        let g = q(&[1, 1]);
        let (qq, r) = f.divrem(&g);
        assert_eq!(qq, q(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&q(&[-1, 1]).pow(2)), q(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_examples() {
        // -4T^3 - 27T^2 -> T(T + 27/4)
        let f = q(&[0, 0, -27, -4]);
        let sf = f.squarefree_part();
        assert_eq!(sf, UniPoly::new(vec![rat(0), ratio(27, 4), rat(1)]));
        assert_eq!(q(&[0, 0, 1]).squarefree_part(), q(&[0, 1]));
        assert_eq!(q(&[5]).squarefree_part(), q(&[1]));
    }

    #[test]
    fn yun_decomposition() {
        let a = q(&[1, 1]);
        let b = q(&[-2, 0, 1]);
        let f = a.clone() * b.pow(3).scale(&rat(7));
        let d = f.squarefree_decomposition();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], a);
        assert!(d[1].is_one());
        assert_eq!(d[2], b);
    }

    #[test]
    fn interpolation_recovers() {
        let f = q(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i), f.eval(&rat(i)))).collect();
        assert_eq!(UniPoly::interpolate(&pts), f);
    }

    #[test]
    fn discriminants() {
        // x^3 + x + 1: -4 - 27 = -31
        assert_eq!(q(&[1, 1, 0, 1]).discriminant(), rat(-31));
        assert_eq!(q(&[-5, 0, 1]).discriminant(), rat(20));
        assert_eq!(q(&[1, 2, 1]).discriminant(), rat(0));
        // Res(x^2 - 1, x - 2) = 3
        assert_eq!(q(&[-1, 0, 1]).resultant(&q(&[-2, 1])), rat(3));
    }

    #[test]
    fn xgcd_identity() {
        let f = q(&[1, 0, 1]);
        let g = q(&[2, 3]);
        let (d, s, t) = f.xgcd(&g);
        assert!(d.is_one());
        assert_eq!(s * f + t * g, d);
    }
}
