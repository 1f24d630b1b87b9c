//! Certified isolation of complex roots with rational rectangles.
//!
//! Approximations come from Durand-Kerner iteration, first in f64 and then in
//! dyadic rational arithmetic when more precision is needed. Every answer is
//! checked exactly: the disk around z_j of radius n|W_j|, where W_j is the
//! Weierstrass correction, contains a root, and pairwise disjoint disks hold
//! exactly one root each.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::UniPoly;
use super::ring::{rat, Rat};
use super::ExactError;

/// Closed axis-parallel rectangle with rational corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rect {
    #[serde(serialize_with = "ser_rat")]
    pub re_lo: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub re_hi: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub im_lo: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub im_hi: Rat,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Rect {
    pub fn point(re: Rat, im: Rat) -> Self {
        Rect { re_lo: re.clone(), re_hi: re, im_lo: im.clone(), im_hi: im }
    }

    pub fn around(re: &Rat, im: &Rat, r: &Rat) -> Self {
        Rect { re_lo: re - r, re_hi: re + r, im_lo: im - r, im_hi: im + r }
    }

    pub fn center(&self) -> (Rat, Rat) {
        let two = rat(2);
        ((&self.re_lo + &self.re_hi) / &two, (&self.im_lo + &self.im_hi) / two)
    }

    pub fn width(&self) -> Rat {
        let a = &self.re_hi - &self.re_lo;
        let b = &self.im_hi - &self.im_lo;
        a.max(b)
    }

    pub fn contains(&self, re: &Rat, im: &Rat) -> bool {
        &self.re_lo <= re && re <= &self.re_hi && &self.im_lo <= im && im <= &self.im_hi
    }

    pub fn disjoint(&self, o: &Rect) -> bool {
        self.re_hi < o.re_lo || o.re_hi < self.re_lo || self.im_hi < o.im_lo || o.im_hi < self.im_lo
    }

    /// Order by the centre: imaginary part first, then real part.
    pub fn center_cmp(&self, o: &Rect) -> Ordering {
        let (a_re, a_im) = self.center();
        let (b_re, b_im) = o.center();
        a_im.cmp(&b_im).then(a_re.cmp(&b_re))
    }

    /// Order used for listing roots: real part, then imaginary part.
    pub fn listing_cmp(&self, o: &Rect) -> Ordering {
        let (a_re, a_im) = self.center();
        let (b_re, b_im) = o.center();
        a_re.cmp(&b_re).then(a_im.cmp(&b_im))
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]i", self.re_lo, self.re_hi, self.im_lo, self.im_hi)
    }
}

/// An algebraic number: its minimal polynomial over Q and an isolating rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgPoint {
    pub minpoly: UniPoly,
    pub rect: Rect,
}

impl AlgPoint {
    pub fn is_rational(&self) -> bool {
        self.minpoly.deg() == 1
    }

    pub fn rational_value(&self) -> Option<Rat> {
        self.is_rational().then(|| -self.minpoly.coeff(0) / self.minpoly.coeff(1))
    }
}

#[derive(Clone, Debug, PartialEq)]
struct C {
    re: Rat,
    im: Rat,
}

impl C {
    fn zero() -> Self {
        C { re: Rat::zero(), im: Rat::zero() }
    }
    fn sub(&self, o: &C) -> C {
        C { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &C) -> C {
        C { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn norm2(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &C) -> C {
        let n = o.norm2();
        let num = self.mul(&C { re: o.re.clone(), im: -&o.im });
        C { re: num.re / &n, im: num.im / n }
    }
    fn round(&self, bits: u32) -> C {
        C { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
}

fn round_dyadic(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let y = x * Rat::from_integer(scale.clone());
    Rat::new((y + Rat::new(BigInt::one(), BigInt::from(2))).floor().to_integer(), scale)
}

fn eval_c(f: &[Rat], z: &C) -> C {
    let mut acc = C::zero();
    for c in f.iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// Rational upper bound for sqrt(x), x >= 0.
fn sqrt_upper(x: &Rat) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let approx = x.to_f64().unwrap_or(f64::MAX).sqrt();
    let mut u = if approx.is_finite() && approx > 0.0 {
        Rat::from_float(approx * (1.0 + 1e-9)).unwrap_or_else(|| rat(1))
    } else {
        rat(1)
    };
    while &(&u * &u) < x {
        u = &u * rat(2);
    }
    u
}

fn weierstrass(f: &[Rat], zs: &[C]) -> Vec<C> {
    let lc = C { re: f.last().unwrap().clone(), im: Rat::zero() };
    (0..zs.len())
        .map(|j| {
            let mut den = lc.clone();
            for (k, zk) in zs.iter().enumerate() {
                if k != j {
                    den = den.mul(&zs[j].sub(zk));
                }
            }
            if den.norm2().is_zero() {
                C { re: rat(1), im: rat(1) }
            } else {
                eval_c(f, &zs[j]).div(&den)
            }
        })
        .collect()
}

fn certify(f: &[Rat], zs: &[C]) -> Option<Vec<Rect>> {
    let n = zs.len();
    let ws = weierstrass(f, zs);
    let rects: Vec<Rect> = zs
        .iter()
        .zip(&ws)
        .map(|(z, w)| {
            let r = sqrt_upper(&w.norm2()) * rat(n as i64);
            Rect::around(&z.re, &z.im, &r)
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if !rects[i].disjoint(&rects[j]) {
                return None;
            }
        }
    }
    Some(rects)
}

fn f64_seed(f: &[Rat]) -> Vec<C> {
    let n = f.len() - 1;
    let cf: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let lc = cf[n];
    let bound = 1.0 + cf[..n].iter().map(|c| (c / lc).abs()).fold(0.0, f64::max);
    let mut zs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (bound.min(1e6) * t.cos(), bound.min(1e6) * t.sin())
        })
        .collect();
    let ev = |z: (f64, f64)| {
        let mut a = (0.0, 0.0);
        for c in cf.iter().rev() {
            a = (a.0 * z.0 - a.1 * z.1 + c, a.0 * z.1 + a.1 * z.0);
        }
        a
    };
    for _ in 0..800 {
        let mut moved = 0.0f64;
        for j in 0..n {
            let mut den = (lc, 0.0);
            for k in 0..n {
                if k != j {
                    let d = (zs[j].0 - zs[k].0, zs[j].1 - zs[k].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let num = ev(zs[j]);
            let nn = den.0 * den.0 + den.1 * den.1;
            if nn == 0.0 || !nn.is_finite() {
                continue;
            }
            let w = ((num.0 * den.0 + num.1 * den.1) / nn, (num.1 * den.0 - num.0 * den.1) / nn);
            if w.0.is_finite() && w.1.is_finite() {
                zs[j] = (zs[j].0 - w.0, zs[j].1 - w.1);
                moved = moved.max(w.0.abs() + w.1.abs());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    zs.into_iter()
        .map(|(a, b)| C {
            re: Rat::from_float(a).unwrap_or_else(Rat::zero),
            im: Rat::from_float(b).unwrap_or_else(Rat::zero),
        })
        .map(|c| c.round(60))
        .collect()
}

/// Isolate every complex root of a squarefree polynomial.
pub fn isolate_roots(f: &UniPoly) -> Result<Vec<Rect>, ExactError> {
    isolate_roots_width(f, None)
}

/// Isolate roots, refining until every rectangle is narrower than `width`.
pub fn isolate_roots_width(f: &UniPoly, width: Option<&Rat>) -> Result<Vec<Rect>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if !f.is_squarefree() {
        return Err(ExactError::Isolation("polynomial is not squarefree".into()));
    }
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let r = -f.coeff(0) / f.coeff(1);
        return Ok(vec![Rect::point(r, Rat::zero())]);
    }
    let cf: Vec<Rat> = f.coeffs().to_vec();
    let mut zs = f64_seed(&cf);
    let mut bits = 64u32;
    for _round in 0..40 {
        if let Some(rects) = certify(&cf, &zs) {
            if width.is_none_or(|w| rects.iter().all(|r| &r.width() < w)) {
                let mut rects = rects;
                rects.sort_by(|a, b| a.listing_cmp(b));
                return Ok(rects);
            }
        }
        for _ in 0..6 {
            let ws = weierstrass(&cf, &zs);
            zs = zs.iter().zip(&ws).map(|(z, w)| z.sub(w).round(bits)).collect();
        }
        bits = (bits * 2).min(8192);
    }
    Err(ExactError::Isolation(format!("could not separate the roots of a degree {n} polynomial")))
}

/// Algebraic points for every root of a nonzero polynomial, grouped by
/// irreducible factor over Q.
pub fn alg_points(f: &UniPoly) -> Result<Vec<AlgPoint>, ExactError> {
    let mut out = Vec::new();
    for (g, _) in super::factor::factor_internal(f)? {
        for rect in isolate_roots(&g)? {
            out.push(AlgPoint { minpoly: g.clone(), rect });
        }
    }
    Ok(out)
}

/// Sign test helper: whether the rectangle lies strictly in the upper half plane.
pub fn strictly_upper(r: &Rect) -> bool {
    r.im_lo.is_positive()
}
