//! Exact Galois groups of monic polynomials of degree at most 4 over k(T)
//! (constant polynomials give the case of k itself), and of Kummer binomials.

use num_traits::{One, Zero};

use super::kt::{is_power, is_square, rem_monic, roots_in_kt};
use super::{GaloisError, GroupId};
use crate::exact::bipoly::KBiPoly;
use crate::exact::numfield::{has_root_of_unity, NfElem, NfPoly, NumberField};
use crate::exact::{Field, Ring};

/// Exact identification together with the data needed to compare with the
/// geometric group later.
#[derive(Clone, Debug)]
pub struct Ident {
    pub group: GroupId,
    pub disc: NfPoly,
    /// Radicands whose square roots generate the quadratic subextensions
    /// (C4: one class; V4: three; D4: Delta, B, Delta*B).
    pub quad_classes: Vec<NfPoly>,
    /// For Kummer binomials Y^n - a: the radicand.
    pub kummer: Option<NfPoly>,
}

/// Discriminant of a monic polynomial of degree at most 4 from its coefficients.
pub fn disc_small<R: Ring>(c: &[R]) -> R {
    let n = c.len() - 1;
    let i = |v: i64| R::from_i64(v);
    match n {
        0 | 1 => R::one(),
        2 => {
            let (cc, b) = (c[0].clone(), c[1].clone());
            b.clone() * b - i(4) * cc
        }
        3 => {
            let (cc, b, a) = (c[0].clone(), c[1].clone(), c[2].clone());
            a.clone() * a.clone() * b.clone() * b.clone() - i(4) * b.pow(3) - i(4) * a.pow(3) * cc.clone()
                - i(27) * cc.clone() * cc.clone()
                + i(18) * a * b * cc
        }
        4 => {
            let (d, cc, b, a) = (c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
            let t = |k: i64, ea: u32, eb: u32, ec: u32, ed: u32| {
                i(k) * a.pow(ea) * b.pow(eb) * cc.pow(ec) * d.pow(ed)
            };
            t(256, 0, 0, 0, 3) - t(192, 1, 0, 1, 2) - t(128, 0, 2, 0, 2) + t(144, 0, 1, 2, 1) - t(27, 0, 0, 4, 0)
                + t(144, 2, 1, 0, 2)
                - t(6, 2, 0, 2, 1)
                - t(80, 1, 2, 1, 1)
                + t(18, 1, 1, 3, 0)
                + t(16, 0, 4, 0, 1)
                - t(4, 0, 3, 2, 0)
                - t(27, 4, 0, 0, 2)
                + t(18, 3, 1, 1, 1)
                - t(4, 3, 0, 3, 0)
                - t(4, 2, 3, 0, 1)
                + t(1, 2, 2, 2, 0)
        }
        _ => panic!("disc_small supports degree <= 4"),
    }
}

/// Whether f is Y^n + c with n >= 2.
pub fn binomial_radicand(f: &KBiPoly) -> Option<NfPoly> {
    let n = f.deg();
    if n < 2 || !(1..n).all(|i| f.coeff(i).is_zero()) {
        return None;
    }
    Some(-f.coeff(0))
}

/// Largest divisor d of n such that a is a d-th power.
pub fn kummer_power(a: &NfPoly, n: usize, k: &NumberField, closure: bool) -> usize {
    (1..=n).rev().find(|d| n.is_multiple_of(*d) && is_power(a, *d, k, closure)).unwrap_or(1)
}

fn half() -> NfElem {
    NfElem::from_i64(2).inv()
}

/// Try to split a monic quartic into two quadratics over k(T).
fn splits_2_2(f: &KBiPoly, resolvent_roots: &[NfPoly], k: &NumberField) -> bool {
    let (d, b, a) = (f.coeff(0), f.coeff(2), f.coeff(3));
    for th in resolvent_roots {
        let u = th.clone() * th.clone() - d.scale(&NfElem::from_i64(4));
        let w = a.clone() * a.clone() - b.scale(&NfElem::from_i64(4)) + th.scale(&NfElem::from_i64(4));
        let (Some(su), Some(sw)) = (sqrt_kt(&u, k), sqrt_kt(&w, k)) else { continue };
        for s1 in [su.clone(), -su.clone()] {
            for s2 in [sw.clone(), -sw.clone()] {
                let t = (th.clone() + s1.clone()).scale(&half());
                let s = (a.clone() + s2.clone()).scale(&half());
                let q = KBiPoly::new(vec![t, s, NfPoly::one()]);
                if rem_monic(f, &q).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Square root in k[T], if it exists.
pub fn sqrt_kt(f: &NfPoly, k: &NumberField) -> Option<NfPoly> {
    if f.is_zero() {
        return Some(NfPoly::zero());
    }
    let y2 = KBiPoly::new(vec![-f.clone(), NfPoly::zero(), NfPoly::one()]);
    roots_in_kt(&y2, k).ok()?.into_iter().next()
}

/// Resolvent cubic z^3 - b z^2 + (ac - 4d) z - (a^2 d - 4bd + c^2), roots a1a2 + a3a4 etc.
pub fn resolvent_cubic(f: &KBiPoly) -> KBiPoly {
    let (d, c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
    let four = NfElem::from_i64(4);
    KBiPoly::new(vec![
        -(a.clone() * a.clone() * d.clone() - (b.clone() * d.clone()).scale(&four) + c.clone() * c.clone()),
        a * c - d.scale(&four),
        -b,
        NfPoly::one(),
    ])
}

/// Identify the group of an irreducible monic polynomial of degree <= 4 over
/// k(T), or of a Kummer binomial of any degree when k holds the roots of unity.
pub fn identify(f: &KBiPoly, k: &NumberField) -> Result<Ident, GaloisError> {
    let n = f.deg();
    if let Some(a) = binomial_radicand(f) {
        if n > 4 || has_root_of_unity(k, n as u64) {
            if !has_root_of_unity(k, n as u64) {
                return Err(GaloisError::Unsupported(format!("binomial of degree {n} without roots of unity")));
            }
            let d = kummer_power(&a, n, k, false);
            if d != 1 {
                return Err(GaloisError::Reducible);
            }
            let disc = NfPoly::zero();
            return Ok(Ident { group: GroupId::Cyclic(n), disc, quad_classes: Vec::new(), kummer: Some(a) });
        }
    }
    if n > 4 {
        return Err(GaloisError::DegreeTooLarge { degree: n, max: 4 });
    }
    let disc = disc_small(f.coeffs());
    if disc.is_zero() {
        return Err(GaloisError::Inseparable);
    }
    let sq = is_square(&disc, k, false);
    let ident = |group| Ok(Ident { group, disc: disc.clone(), quad_classes: Vec::new(), kummer: None });
    match n {
        0 => Err(GaloisError::Reducible),
        1 => ident(GroupId::Cyclic(1)),
        2 => {
            if sq {
                Err(GaloisError::Reducible)
            } else {
                ident(GroupId::Cyclic(2))
            }
        }
        3 => {
            if !roots_in_kt(f, k)?.is_empty() {
                return Err(GaloisError::Reducible);
            }
            ident(if sq { GroupId::Cyclic(3) } else { GroupId::Dihedral(3) })
        }
        _ => {
            if !roots_in_kt(f, k)?.is_empty() {
                return Err(GaloisError::Reducible);
            }
            let res = resolvent_cubic(f);
            let thetas = roots_in_kt(&res, k)?;
            if splits_2_2(f, &thetas, k) {
                return Err(GaloisError::Reducible);
            }
            let (d, b, a) = (f.coeff(0), f.coeff(2), f.coeff(3));
            let four = NfElem::from_i64(4);
            let class_of = |th: &NfPoly| {
                let u = th.clone() * th.clone() - d.scale(&four);
                if u.is_zero() {
                    a.clone() * a.clone() - b.scale(&four) + th.scale(&four)
                } else {
                    u
                }
            };
            match thetas.len() {
                0 => ident(if sq { GroupId::A4 } else { GroupId::S4 }),
                1 => {
                    let bcls = class_of(&thetas[0]);
                    let ab = disc.clone() * bcls.clone();
                    if is_square(&ab, k, false) {
                        Ok(Ident { group: GroupId::Cyclic(4), disc: disc.clone(), quad_classes: vec![disc.clone()], kummer: None })
                    } else {
                        Ok(Ident { group: GroupId::Dihedral(4), disc: disc.clone(), quad_classes: vec![disc.clone(), bcls, ab], kummer: None })
                    }
                }
                _ => Ok(Ident {
                    group: GroupId::V4,
                    disc: disc.clone(),
                    quad_classes: thetas.iter().map(class_of).collect(),
                    kummer: None,
                }),
            }
        }
    }
}

/// Order of the geometric group (over k-bar(T)) from the arithmetic
/// identification, the number of branch points and the inertia cycle types.
pub fn geometric_order(id: &Ident, k: &NumberField, n: usize, r: usize, cycle_types: &[Vec<usize>]) -> usize {
    let sq = |f: &NfPoly| is_square(f, k, true);
    let has_3cycle = cycle_types.iter().any(|c| c.contains(&3));
    if let Some(a) = &id.kummer {
        return n / kummer_power(a, n, k, true);
    }
    let ramified = r > 0;
    match id.group {
        GroupId::Cyclic(1) => 1,
        GroupId::Cyclic(m) if m == 2 || m == 3 => {
            if ramified {
                m
            } else {
                1
            }
        }
        GroupId::Dihedral(3) => {
            if !sq(&id.disc) {
                6
            } else if ramified {
                3
            } else {
                1
            }
        }
        GroupId::Cyclic(4) => {
            if !sq(&id.quad_classes[0]) {
                4
            } else if ramified {
                2
            } else {
                1
            }
        }
        GroupId::V4 => match id.quad_classes.iter().filter(|c| sq(c)).count() {
            0 => 4,
            1 => 2,
            _ => 1,
        },
        GroupId::Dihedral(4) => match id.quad_classes.iter().filter(|c| sq(c)).count() {
            0 => 8,
            1 => 4,
            _ => {
                if ramified {
                    2
                } else {
                    1
                }
            }
        },
        GroupId::A4 | GroupId::S4 => {
            if id.group == GroupId::S4 && !sq(&id.disc) {
                24
            } else if has_3cycle {
                12
            } else if ramified {
                4
            } else {
                1
            }
        }
        _ => id.group.order(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, UniPoly};

    fn lift(cs: &[&[i64]], k: &NumberField) -> KBiPoly {
        KBiPoly::new(cs.iter().map(|c| k.lift_poly(&UniPoly::from_ints(c))).collect())
    }

    #[test]
    fn quartic_discriminant_matches_resultant() {
        let f = UniPoly::from_ints(&[3, -2, 5, 1, 1]);
        let c: Vec<_> = f.coeffs().to_vec();
        assert_eq!(disc_small(&c), f.discriminant());
        let g = UniPoly::from_ints(&[1, 1, 0, 1]);
        assert_eq!(disc_small(g.coeffs()), rat(-31));
    }

    #[test]
    fn function_field_groups() {
        let q = NumberField::rationals();
        assert_eq!(identify(&lift(&[&[0, -1], &[], &[1]], &q), &q).unwrap().group, GroupId::Cyclic(2));
        assert_eq!(identify(&lift(&[&[0, 1], &[0, 1], &[], &[1]], &q), &q).unwrap().group, GroupId::Dihedral(3));
        assert_eq!(identify(&lift(&[&[1], &[-3, 1], &[0, -1], &[1]], &q), &q).unwrap().group, GroupId::Cyclic(3));
        assert_eq!(identify(&lift(&[&[0, -1], &[], &[], &[], &[1]], &q), &q).unwrap().group, GroupId::Dihedral(4));
        let qi = NumberField::gaussian();
        assert_eq!(identify(&lift(&[&[0, -1], &[], &[], &[], &[1]], &qi), &qi).unwrap().group, GroupId::Cyclic(4));
        // Y^4 - T^2 is reducible
        assert!(matches!(identify(&lift(&[&[0, 0, -1], &[], &[], &[], &[1]], &q), &q), Err(GaloisError::Reducible)));
        // (Y^2 - T)(Y^2 - 2T) ... reducible 2+2 without linear factors
        let g = lift(&[&[0, -1], &[], &[1]], &q) * lift(&[&[0, -2], &[], &[1]], &q);
        assert!(matches!(identify(&g, &q), Err(GaloisError::Reducible)));
    }

    #[test]
    fn generic_quartic_is_s4() {
        let q = NumberField::rationals();
        // Y^4 + T Y + 1
        let id = identify(&lift(&[&[1], &[0, 1], &[], &[], &[1]], &q), &q).unwrap();
        assert_eq!(id.group, GroupId::S4);
        // Y^4 - 10Y^2 + 1 generates Q(sqrt2, sqrt3)
        let v = identify(&lift(&[&[1], &[], &[-10], &[], &[1]], &q), &q).unwrap();
        assert_eq!(v.group, GroupId::V4);
    }
}
