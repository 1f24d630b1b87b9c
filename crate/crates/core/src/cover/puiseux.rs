//! Exact Newton-Puiseux analysis of a cover at one point.
//!
//! The input is f(X, Y) with coefficients in L[X] and the question is how the
//! roots of f over the Puiseux field of L-bar((X)) fall into cycles under the
//! monodromy X -> e^{2 pi i} X. Cycle lengths are the ramification indices of
//! the places above X = 0. Substitutions are exact polynomial maps (rational
//! Puiseux expansions in the style of Duval), so nothing is truncated.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::bipoly::KBiPoly;
use crate::exact::numfield::{NfElem, NfPoly, NumberField};
use crate::exact::{ExactError, Field, Poly, Ring};

/// Cycle lengths of all roots of a polynomial monic in Y.
pub fn cycle_type(f: &KBiPoly, l: &NumberField) -> Result<Vec<usize>, ExactError> {
    let n = f.deg();
    let f0 = NfPoly::new(f.coeffs().iter().map(|c| c.coeff(0)).collect());
    let mut out = Vec::new();
    for (g, mult) in l.factor(&f0)? {
        if mult == 1 {
            out.extend(std::iter::repeat_n(1, g.deg()));
            continue;
        }
        let (l2, f2, c) = adjoin_root(l, f, &g)?;
        let shifted = shift_y(&f2, &c);
        let sub = positive_cycles(&shifted, &l2, 1)?;
        for _ in 0..g.deg() {
            out.extend(sub.iter().copied());
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(out.iter().sum::<usize>(), n);
    Ok(out)
}

/// Field containing a root of g (irreducible over l), f mapped into it, and the root.
fn adjoin_root(l: &NumberField, f: &KBiPoly, g: &NfPoly) -> Result<(NumberField, KBiPoly, NfElem), ExactError> {
    if g.deg() == 1 {
        let g = g.monic();
        return Ok((l.clone(), f.clone(), -g.coeff(0)));
    }
    let (l2, gen_img, root) = l.extend(g)?;
    let f2 = map_bi(f, &l2, &gen_img);
    Ok((l2, f2, root))
}

fn map_bi(f: &KBiPoly, l2: &NumberField, gen_img: &NfElem) -> KBiPoly {
    Poly::new(
        f.coeffs()
            .iter()
            .map(|c| NfPoly::new(c.coeffs().iter().map(|a| NumberField::embed_into(a, l2, gen_img)).collect()))
            .collect(),
    )
}

/// f(X, c + Y).
fn shift_y(f: &KBiPoly, c: &NfElem) -> KBiPoly {
    let lin = KBiPoly::new(vec![NfPoly::constant(c.clone()), NfPoly::one()]);
    let mut acc = KBiPoly::zero();
    for a in f.coeffs().iter().rev() {
        acc = acc * lin.clone() + KBiPoly::constant(a.clone());
    }
    acc
}

fn val(a: &NfPoly) -> Option<usize> {
    a.low_order()
}

/// Cycle lengths of the roots of F with positive X-adic valuation, each
/// multiplied by `emul`.
fn positive_cycles(f: &KBiPoly, l: &NumberField, emul: usize) -> Result<Vec<usize>, ExactError> {
    let mut out = Vec::new();
    let mut f = f.clone();
    while !f.is_zero() && f.coeff(0).is_zero() {
        // Y = 0 is an exact root: a single unramified branch
        out.push(emul);
        f = KBiPoly::new(f.coeffs()[1..].to_vec());
    }
    let coeffs = f.coeffs();
    let vals: Vec<Option<usize>> = coeffs.iter().map(val).collect();
    let Some(istar) = vals.iter().position(|v| *v == Some(0)) else {
        return Err(ExactError::Isolation("Newton polygon has no vertex on the axis".into()));
    };
    if istar == 0 {
        return Ok(out);
    }
    let mut i = 0;
    while i < istar {
        let vi = vals[i].expect("hull starts at a finite point") as i64;
        let mut best: Option<(usize, i64, i64)> = None;
        for j in i + 1..=istar {
            let Some(vj) = vals[j] else { continue };
            let (num, den) = (vj as i64 - vi, (j - i) as i64);
            match best {
                None => best = Some((j, num, den)),
                Some((_, bn, bd)) => {
                    if num * bd <= bn * den {
                        best = Some((j, num, den));
                    }
                }
            }
        }
        let (j, _, _) = best.unwrap();
        let vj = vals[j].unwrap() as i64;
        let dv = (vi - vj) as usize;
        let di = j - i;
        let g = dv.gcd(&di);
        let (m, q) = (dv / g, di / g);
        let psi = NfPoly::new(
            (0..=g)
                .map(|kk| coeffs[i + kk * q].coeff(vi as usize - kk * m))
                .collect(),
        );
        for (phi, mu) in l.factor(&psi)? {
            let d = phi.deg();
            if mu == 1 {
                out.extend(std::iter::repeat_n(emul * q, d));
                continue;
            }
            let (l2, gen_img, xi) = if d == 1 {
                (l.clone(), l.gen(), -phi.monic().coeff(0))
            } else {
                l.extend(&phi)?
            };
            let f2 = if d == 1 { f.clone() } else { map_bi(&f, &l2, &gen_img) };
            let n_shift = q * vi as usize + m * i;
            let f1 = duval_step(&f2, &xi, m, q, n_shift);
            let sub = positive_cycles(&f1, &l2, emul * q)?;
            for _ in 0..d {
                out.extend(sub.iter().copied());
            }
        }
        i = j;
    }
    Ok(out)
}

/// Substitute X = xi^v T^q, Y = T^m (xi^u + Y1) with u q - v m = 1 and divide by T^N.
fn duval_step(f: &KBiPoly, xi: &NfElem, m: usize, q: usize, n_shift: usize) -> KBiPoly {
    let (u, v) = bezout(m, q);
    let xi_pow = |e: i64| -> NfElem {
        if e >= 0 {
            xi.pow(e as u32)
        } else {
            xi.inv().pow((-e) as u32)
        }
    };
    let xv = xi_pow(v);
    let base = KBiPoly::new(vec![NfPoly::constant(xi_pow(u as i64)), NfPoly::one()]);
    let mut acc = KBiPoly::zero();
    let mut pow_base = KBiPoly::one();
    for (i, a) in f.coeffs().iter().enumerate() {
        if i > 0 {
            pow_base = pow_base * base.clone();
        }
        if a.is_zero() {
            continue;
        }
        // a(xv T^q) T^(m i)
        let mut c = Vec::new();
        let mut scale = NfElem::one();
        for (j, aj) in a.coeffs().iter().enumerate() {
            if j > 0 {
                scale = scale * xv.clone();
            }
            let deg = q * j + m * i;
            if c.len() <= deg {
                c.resize(deg + 1, NfElem::zero());
            }
            c[deg] = aj.clone() * scale.clone();
        }
        let b = NfPoly::new(c);
        acc = acc + pow_base.clone() * KBiPoly::constant(b);
    }
    KBiPoly::new(
        acc.coeffs()
            .iter()
            .map(|c| {
                debug_assert!(c.is_zero() || c.low_order().unwrap() >= n_shift);
                NfPoly::new(c.coeffs().iter().skip(n_shift).cloned().collect())
            })
            .collect(),
    )
}

/// (u, v) with u q - v m = 1, u >= 0.
fn bezout(m: usize, q: usize) -> (usize, i64) {
    if m == 1 {
        return (0, -1);
    }
    let u = (1..m).find(|u| (u * q) % m == 1).expect("m and q coprime");
    (u, ((u * q) as i64 - 1) / m as i64)
}

/// Rescaled model at infinity: S^(k n) P(1/S, Z/S^k), monic in Z.
pub fn model_at_infinity(coeffs: &[crate::exact::UniPoly]) -> Vec<crate::exact::UniPoly> {
    use crate::exact::UniPoly;
    let n = coeffs.len() - 1;
    let k = (0..n)
        .filter(|&i| !coeffs[i].is_zero())
        .map(|i| coeffs[i].deg().div_ceil(n - i))
        .max()
        .unwrap_or(0);
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if a.is_zero() {
                return UniPoly::zero();
            }
            // a(1/S) S^(k (n - i)) = reverse(a) * S^(k (n - i) - deg a)
            let d = a.deg();
            let shift = k * (n - i) - d;
            a.reverse(d).shift_up(shift)
        })
        .collect()
}
