//! Arithmetic in k[T] and k(T) needed by the resolvent tests: squares, d-th
//! powers and roots of monic polynomials in Y with coefficients in k[T].

use num_traits::{One, Zero};

use crate::exact::bipoly::KBiPoly;
use crate::exact::numfield::{NfElem, NfPoly, NumberField};
use crate::exact::{rat, ExactError, Field, Ring};

/// Whether f (a polynomial in T over k) is a d-th power in k(T), or in
/// k-bar(T) when `closure` is set. Zero counts as a power.
pub fn is_power(f: &NfPoly, d: usize, k: &NumberField, closure: bool) -> bool {
    if f.is_zero() || d == 1 {
        return true;
    }
    if f.deg() > 0 {
        for (i, part) in f.squarefree_decomposition().iter().enumerate() {
            if part.deg() > 0 && (i + 1) % d != 0 {
                return false;
            }
        }
    }
    if closure {
        return true;
    }
    let lc = f.lc();
    let mut xd = vec![NfElem::zero(); d + 1];
    xd[0] = -lc;
    xd[d] = NfElem::one();
    k.roots(&NfPoly::new(xd)).map(|r| !r.is_empty()).unwrap_or(false)
}

pub fn is_square(f: &NfPoly, k: &NumberField, closure: bool) -> bool {
    is_power(f, 2, k, closure)
}

/// Whether f/g is a square in k(T) (or k-bar(T)), for f, g with rational coefficients.
pub fn rat_func_is_square(f: &crate::exact::UniPoly, g: &crate::exact::UniPoly, k: &NumberField, over_closure: bool) -> bool {
    assert!(!g.is_zero(), "zero denominator");
    // f/g is a square iff f*g is
    let prod = f.clone() * g.clone();
    is_square(&k.lift_poly(&prod), k, over_closure)
}

/// Remainder of a Y-polynomial by a monic divisor, over the ring k[T].
pub fn rem_monic(f: &KBiPoly, d: &KBiPoly) -> KBiPoly {
    let dd = d.deg();
    let mut r: Vec<NfPoly> = f.coeffs().to_vec();
    while r.len() > dd {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let off = r.len() - dd;
        for (j, b) in d.coeffs().iter().enumerate().take(dd) {
            r[off + j] = r[off + j].clone() - top.clone() * b.clone();
        }
    }
    KBiPoly::new(r)
}

fn trunc(f: &NfPoly, prec: usize) -> NfPoly {
    NfPoly::new(f.coeffs().iter().take(prec).cloned().collect())
}

fn series_inv(a: &NfPoly, prec: usize) -> NfPoly {
    let a0inv = a.coeff(0).inv();
    let mut b: Vec<NfElem> = vec![a0inv.clone()];
    for kk in 1..prec {
        let mut s = NfElem::zero();
        for j in 1..=kk {
            s = s + a.coeff(j) * b[kk - j].clone();
        }
        b.push(-(s * a0inv.clone()));
    }
    NfPoly::new(b)
}

fn eval_y(f: &KBiPoly, h: &NfPoly, prec: Option<usize>) -> NfPoly {
    let mut acc = NfPoly::zero();
    for a in f.coeffs().iter().rev() {
        acc = acc * h.clone() + a.clone();
        if let Some(p) = prec {
            acc = trunc(&acc, p);
        }
    }
    acc
}

/// Substitute T -> T + t0 in every coefficient.
fn shift_t(f: &KBiPoly, t0: &NfElem) -> KBiPoly {
    let lin = NfPoly::new(vec![t0.clone(), NfElem::one()]);
    KBiPoly::new(f.coeffs().iter().map(|c| c.compose(&lin)).collect())
}

/// All roots in k[T] of a monic separable polynomial in Y over k[T].
/// Roots in k(T) are integral, so this is every root in k(T).
pub fn roots_in_kt(f: &KBiPoly, k: &NumberField) -> Result<Vec<NfPoly>, ExactError> {
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    debug_assert!(f.lc().is_one());
    if f.coeffs().iter().all(|c| c.deg() == 0) {
        let g = NfPoly::new(f.coeffs().iter().map(|c| c.coeff(0)).collect());
        return Ok(k.roots(&g)?.into_iter().map(NfPoly::constant).collect());
    }
    let bound = (0..n)
        .filter(|&i| !f.coeff(i).is_zero())
        .map(|i| f.coeff(i).deg().div_ceil(n - i))
        .max()
        .unwrap_or(0);
    let prec = bound + 1;
    let df = KBiPoly::new(f.coeffs().iter().enumerate().skip(1).map(|(i, c)| c.scale(&NfElem::from_i64(i as i64))).collect());
    for t in (0..).flat_map(|j: i64| if j == 0 { vec![0] } else { vec![j, -j] }).take(200) {
        let t0 = NfElem::from_rational(rat(t));
        let spec = NfPoly::new(f.coeffs().iter().map(|c| c.eval(&t0)).collect());
        if !spec.is_squarefree() {
            continue;
        }
        let g = shift_t(f, &t0);
        let dg = shift_t(&df, &t0);
        let back = NfPoly::new(vec![-t0.clone(), NfElem::one()]);
        let mut out = Vec::new();
        for c in k.roots(&spec)? {
            let mut h = NfPoly::constant(c);
            let mut p = 1;
            while p < prec {
                p = (2 * p).min(prec);
                let num = eval_y(&g, &h, Some(p));
                let den = eval_y(&dg, &h, Some(p));
                h = trunc(&(h - trunc(&(num * series_inv(&den, p)), p)), p);
            }
            let cand = h.compose(&back);
            if eval_y(f, &cand, None).is_zero() {
                out.push(cand);
            }
        }
        out.sort_by(cmp_nfpoly);
        return Ok(out);
    }
    Err(ExactError::Isolation("no separable specialisation found".into()))
}

pub fn cmp_nfpoly(a: &NfPoly, b: &NfPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let (x, y) = (a.coeff(i), b.coeff(i));
            for j in (0..x.rep().deg().max(y.rep().deg()) + 1).rev() {
                let o = x.rep().coeff(j).cmp(&y.rep().coeff(j));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::UniPoly;

    fn kq(c: &[i64]) -> NfPoly {
        NumberField::rationals().lift_poly(&UniPoly::from_ints(c))
    }

    #[test]
    fn squares_in_function_fields() {
        let q = NumberField::rationals();
        assert!(!is_square(&kq(&[0, 4]), &q, true));
        let s = kq(&[9, -3, 1]);
        assert!(is_square(&(s.clone() * s), &q, false));
        assert!(!is_square(&kq(&[-27, -4]), &q, false));
        assert!(!is_square(&kq(&[-1]), &q, false));
        assert!(is_square(&kq(&[-1]), &q, true));
        assert!(is_square(&kq(&[-1]), &NumberField::gaussian(), false));
    }

    #[test]
    fn square_over_k_implies_square_over_closure() {
        let q = NumberField::rationals();
        for a in -6i64..=6 {
            for b in -3i64..=3 {
                let f = UniPoly::from_ints(&[a, b, 1]);
                let g = UniPoly::from_ints(&[b, 1]);
                if rat_func_is_square(&f, &g, &q, false) {
                    assert!(rat_func_is_square(&f, &g, &q, true));
                }
            }
        }
    }

    #[test]
    fn polynomial_roots() {
        let q = NumberField::rationals();
        // (Y - T^2 - 1)(Y + 3T)(Y^2 - T)
        let lin = |c: &[i64]| KBiPoly::new(vec![kq(c), kq(&[1])]);
        let f = lin(&[-1, 0, -1]) * lin(&[0, 3]) * KBiPoly::new(vec![kq(&[0, -1]), NfPoly::zero(), kq(&[1])]);
        let roots = roots_in_kt(&f, &q).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&kq(&[1, 0, 1])));
        assert!(roots.contains(&kq(&[0, -3])));
    }
}
