//! Branch points, ramification, genus and regularity of the Galois closure of
//! a cover given by P(T, Y).

pub mod puiseux;

use std::cmp::Ordering;

use num_integer::Integer;
use thiserror::Error;

use crate::exact::factor::{cmp_poly, factor_internal};
use crate::exact::numfield::{NfPoly, NumberField};
use crate::exact::roots::isolate_roots;
use crate::exact::{AlgPoint, BiPoly, ExactError, Rat, Rect, UniPoly};
use crate::galois::small::geometric_order;
use crate::galois::{self, GaloisError, GroupId, GroupResult, MAX_COVER_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("polynomial is inseparable")]
    Inseparable,
    #[error("polynomial is reducible over k(T)")]
    Reducible,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("polynomial is not monic in Y")]
    NotMonic,
    #[error("ramification data {e:?} give a non-integral genus for a group of order {order}")]
    NonIntegralGenus { order: usize, e: Vec<usize> },
    #[error(transparent)]
    Galois(GaloisError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl From<GaloisError> for CoverError {
    fn from(e: GaloisError) -> Self {
        match e {
            GaloisError::Inseparable => CoverError::Inseparable,
            GaloisError::Reducible => CoverError::Reducible,
            GaloisError::NotMonic => CoverError::NotMonic,
            GaloisError::DegreeTooLarge { degree, max } => CoverError::DegreeTooLarge { degree, max },
            GaloisError::Exact(e) => CoverError::Exact(e),
            other => CoverError::Galois(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchLocation {
    Finite(AlgPoint),
    Infinity,
}

impl BranchLocation {
    pub fn is_infinity(&self) -> bool {
        matches!(self, BranchLocation::Infinity)
    }

    pub fn rational_value(&self) -> Option<Rat> {
        match self {
            BranchLocation::Finite(a) => a.rational_value(),
            BranchLocation::Infinity => None,
        }
    }
}

/// Conjugacy data of an inertia generator: its order and cycle type on the roots of P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaClass {
    pub order: usize,
    pub label: String,
    pub cycle_type: Vec<usize>,
}

impl InertiaClass {
    fn from_cycle_type(cycle_type: Vec<usize>) -> Self {
        let order = cycle_type.iter().fold(1usize, |a, &b| a.lcm(&b));
        InertiaClass { order, label: format!("C{order}"), cycle_type }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPointRecord {
    pub point: BranchLocation,
    /// Minimal polynomial over k of the point; None for infinity and k-rational points.
    pub orbit_poly: Option<NfPoly>,
    pub ram_index: usize,
    pub inertia_class: InertiaClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Yes,
    No,
    Unknown,
}

impl Regularity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regularity::Yes => "yes",
            Regularity::No => "no",
            Regularity::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverInvariants {
    pub group: GroupResult,
    pub r: usize,
    pub branch: Vec<BranchPointRecord>,
    pub e_tuple: Vec<usize>,
    /// Order of the group over k-bar(T), when it can be decided.
    pub geometric_order: Option<usize>,
    pub genus: usize,
    pub regular: Regularity,
    pub all_branch_in_k: bool,
}

fn lift_shifted(p: &BiPoly, l: &NumberField, center: &crate::exact::NfElem) -> crate::exact::bipoly::KBiPoly {
    let lin = NfPoly::new(vec![center.clone(), l.from_rat(&crate::exact::rat(1))]);
    crate::exact::bipoly::KBiPoly::new(p.y_coeffs().iter().map(|c| l.lift_poly(c).compose(&lin)).collect())
}

/// Cycle type of local monodromy at t0 (None for infinity), sorted descending.
pub fn cycle_type_at(p: &BiPoly, t0: Option<&Rat>) -> Result<Vec<usize>, CoverError> {
    let q = NumberField::rationals();
    let f = match t0 {
        Some(t) => lift_shifted(p, &q, &q.from_rat(t)),
        None => crate::exact::bipoly::KBiPoly::new(
            puiseux::model_at_infinity(&p.y_coeffs()).iter().map(|c| q.lift_poly(c)).collect(),
        ),
    };
    Ok(puiseux::cycle_type(&f, &q)?)
}

/// Cycle type at one root of an irreducible factor m of the discriminant,
/// occurring there with multiplicity `mult`.
fn cycle_type_at_root(p: &BiPoly, m: &UniPoly, mult: usize) -> Result<Vec<usize>, CoverError> {
    let n = p.deg_y();
    if mult == 1 {
        // a simple zero of the discriminant is a single simple transposition
        let mut c = vec![2];
        c.extend(std::iter::repeat_n(1, n - 2));
        return Ok(c);
    }
    if m.deg() == 1 {
        return cycle_type_at(p, Some(&(-m.coeff(0) / m.coeff(1))));
    }
    let l = NumberField::internal(m.clone(), "theta")?;
    let f = lift_shifted(p, &l, &l.gen());
    Ok(puiseux::cycle_type(&f, &l)?)
}

fn approx(r: &Rect) -> (f64, f64) {
    use num_traits::ToPrimitive;
    let (re, im) = r.center();
    (re.to_f64().unwrap_or(0.0), im.to_f64().unwrap_or(0.0))
}

/// |g(z)| for g over k with k's generator sent to `gen`.
fn abs_eval(g: &NfPoly, gen: (f64, f64), z: (f64, f64)) -> f64 {
    use num_traits::ToPrimitive;
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let elem = |c: &crate::exact::NfElem| {
        let mut acc = (0.0, 0.0);
        for a in c.rep().coeffs().iter().rev() {
            acc = cmul(acc, gen);
            acc.0 += a.to_f64().unwrap_or(0.0);
        }
        acc
    };
    let mut acc = (0.0, 0.0);
    for c in g.coeffs().iter().rev() {
        acc = cmul(acc, z);
        let e = elem(c);
        acc = (acc.0 + e.0, acc.1 + e.1);
    }
    acc.0.hypot(acc.1)
}

/// For each root rectangle of m (irreducible over Q), its minimal polynomial over k.
fn orbit_polys(m: &UniPoly, rects: &[Rect], k: &NumberField) -> Result<Vec<Option<NfPoly>>, CoverError> {
    if k.is_rationals() {
        return Ok(rects.iter().map(|_| (m.deg() > 1).then(|| k.lift_poly(m))).collect());
    }
    let factors: Vec<NfPoly> = k.factor(&k.lift_poly(m))?.into_iter().map(|(g, _)| g).collect();
    if factors.len() == 1 {
        return Ok(rects.iter().map(|_| (m.deg() > 1).then(|| factors[0].clone())).collect());
    }
    let emb = match k.embedding() {
        Some(r) => r.clone(),
        None => isolate_roots(k.modulus())?.into_iter().max_by(|a, b| a.center_cmp(b)).expect("field has roots"),
    };
    let gen = approx(&emb);
    Ok(rects
        .iter()
        .map(|r| {
            let z = approx(r);
            let best = factors
                .iter()
                .min_by(|a, b| abs_eval(a, gen, z).partial_cmp(&abs_eval(b, gen, z)).unwrap_or(Ordering::Equal))
                .expect("nonempty factor list");
            (best.deg() > 1).then(|| best.clone())
        })
        .collect())
}

fn record_cmp(a: &BranchPointRecord, b: &BranchPointRecord) -> Ordering {
    use BranchLocation::*;
    match (&a.point, &b.point) {
        (Infinity, Infinity) => Ordering::Equal,
        (Infinity, _) => Ordering::Greater,
        (_, Infinity) => Ordering::Less,
        (Finite(x), Finite(y)) => match (x.rational_value(), y.rational_value()) {
            (Some(u), Some(v)) => u.cmp(&v),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => cmp_poly(&x.minpoly, &y.minpoly).then_with(|| x.rect.listing_cmp(&y.rect)),
        },
    }
}

/// Branch data without the irreducibility check.
fn branch_data_unchecked(p: &BiPoly, k: &NumberField) -> Result<Vec<BranchPointRecord>, CoverError> {
    let disc = p.disc_y();
    let mut out = Vec::new();
    if disc.deg() > 0 {
        for (m, mult) in factor_internal(&disc)? {
            let ct = cycle_type_at_root(p, &m, mult)?;
            if ct.iter().all(|&c| c == 1) {
                continue;
            }
            let class = InertiaClass::from_cycle_type(ct);
            let rects = if m.deg() == 1 {
                let v = -m.coeff(0) / m.coeff(1);
                vec![Rect::point(v, Rat::from_integer(0.into()))]
            } else {
                isolate_roots(&m)?
            };
            let orbits = orbit_polys(&m, &rects, k)?;
            for (rect, orbit_poly) in rects.into_iter().zip(orbits) {
                out.push(BranchPointRecord {
                    point: BranchLocation::Finite(AlgPoint { minpoly: m.clone(), rect }),
                    orbit_poly,
                    ram_index: class.order,
                    inertia_class: class.clone(),
                });
            }
        }
    }
    let ct = cycle_type_at(p, None)?;
    if ct.iter().any(|&c| c > 1) {
        let class = InertiaClass::from_cycle_type(ct);
        out.push(BranchPointRecord { point: BranchLocation::Infinity, orbit_poly: None, ram_index: class.order, inertia_class: class });
    }
    out.sort_by(record_cmp);
    Ok(out)
}

fn check_degree(p: &BiPoly) -> Result<(), CoverError> {
    if p.deg_y() > MAX_COVER_DEGREE {
        return Err(CoverError::DegreeTooLarge { degree: p.deg_y(), max: MAX_COVER_DEGREE });
    }
    Ok(())
}

/// Branch points of the Galois closure with their ramification indices.
pub fn branch_data(p: &BiPoly, k: &NumberField) -> Result<Vec<BranchPointRecord>, CoverError> {
    check_degree(p)?;
    galois::validate(p)?;
    if !galois::is_irreducible(p, k)? {
        return Err(CoverError::Reducible);
    }
    branch_data_unchecked(p, k)
}

/// Riemann-Hurwitz: 2g - 2 = |G| (-2 + sum (1 - 1/e_i)).
pub fn genus_galois(order: usize, e: &[usize]) -> Result<usize, CoverError> {
    let bad = || CoverError::NonIntegralGenus { order, e: e.to_vec() };
    if order == 0 || e.iter().any(|&x| x == 0 || !order.is_multiple_of(x)) {
        return Err(bad());
    }
    let n = order as i64;
    // 2g - 2 = -2n + sum (n - n/e_i)
    let twice: i64 = -2 * n + e.iter().map(|&x| n - n / x as i64).sum::<i64>() + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(bad());
    }
    Ok((twice / 2) as usize)
}

/// Whether (G, e) is one of the genus-zero shapes.
pub fn genus_zero_shape(g: &GroupId, e: &[usize]) -> bool {
    let mut e: Vec<usize> = e.to_vec();
    e.sort_unstable();
    let order = g.order();
    match g {
        GroupId::Cyclic(1) => e.is_empty(),
        GroupId::Cyclic(n) => e == [*n, *n],
        GroupId::Dihedral(n) => e == [2, 2, *n],
        GroupId::V4 => e == [2, 2, 2],
        GroupId::A4 => e == [2, 3, 3],
        GroupId::S4 => e == [2, 3, 4],
        GroupId::A5 => e == [2, 3, 5],
        GroupId::Sn(_) | GroupId::Other(_) => match order {
            6 => e == [2, 2, 3],
            _ => false,
        },
    }
}

/// Whether every branch point lies in P^1(k).
pub fn branch_rationality(branch: &[BranchPointRecord], _k: &NumberField) -> bool {
    branch.iter().all(|b| b.orbit_poly.is_none())
}

fn geometric(p: &BiPoly, k: &NumberField, group: &GroupResult, branch: &[BranchPointRecord]) -> Option<usize> {
    let id = group.ident.as_ref()?;
    let types: Vec<Vec<usize>> = branch.iter().map(|b| b.inertia_class.cycle_type.clone()).collect();
    Some(geometric_order(id, k, p.deg_y(), branch.len(), &types))
}

fn regularity_of(group: &GroupResult, geo: Option<usize>) -> Regularity {
    match geo {
        Some(g) if g == group.group.order() => Regularity::Yes,
        Some(_) => Regularity::No,
        None => Regularity::Unknown,
    }
}

/// Whether the Galois closure is regular over k (no constant field extension).
pub fn regularity(p: &BiPoly, k: &NumberField) -> Result<Regularity, CoverError> {
    Ok(compute_invariants(p, k)?.regular)
}

/// Every invariant of the cover in one pass.
pub fn compute_invariants(p: &BiPoly, k: &NumberField) -> Result<CoverInvariants, CoverError> {
    check_degree(p)?;
    let group = galois::group_over_function_field(p, k)?;
    let branch = branch_data_unchecked(p, k)?;
    let e_tuple: Vec<usize> = branch.iter().map(|b| b.ram_index).collect();
    let geo = geometric(p, k, &group, &branch);
    let genus = genus_galois(geo.unwrap_or(group.group.order()), &e_tuple)?;
    Ok(CoverInvariants {
        regular: regularity_of(&group, geo),
        r: branch.len(),
        all_branch_in_k: branch_rationality(&branch, k),
        geometric_order: geo,
        group,
        branch,
        e_tuple,
        genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use num_traits::Zero;

    fn bi(cs: &[&[i64]]) -> BiPoly {
        BiPoly::from_y_coeffs(&cs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
    }

    fn summary(b: &[BranchPointRecord]) -> Vec<(Option<Rat>, usize)> {
        b.iter().map(|r| (r.point.rational_value(), r.ram_index)).collect()
    }

    #[test]
    fn kummer_branch_points() {
        let q = NumberField::rationals();
        let b = branch_data(&bi(&[&[0, -1], &[], &[1]]), &q).unwrap();
        assert_eq!(summary(&b), vec![(Some(rat(0)), 2), (None, 2)]);
        assert!(b[1].point.is_infinity());
    }

    #[test]
    fn s3_cover() {
        let q = NumberField::rationals();
        let p = bi(&[&[0, 1], &[0, 1], &[], &[1]]);
        let inv = compute_invariants(&p, &q).unwrap();
        assert_eq!(summary(&inv.branch), vec![(Some(ratio(-27, 4)), 2), (Some(rat(0)), 3), (None, 2)]);
        let labels: Vec<_> = inv.branch.iter().map(|b| b.inertia_class.label.as_str()).collect();
        assert_eq!(labels, ["C2", "C3", "C2"]);
        assert_eq!((inv.genus, inv.regular, inv.all_branch_in_k), (0, Regularity::Yes, true));
    }

    #[test]
    fn shanks_cover() {
        let q = NumberField::rationals();
        let p = bi(&[&[1], &[-3, 1], &[0, -1], &[1]]);
        let inv = compute_invariants(&p, &q).unwrap();
        assert_eq!(inv.r, 2);
        assert_eq!(inv.e_tuple, vec![3, 3]);
        assert!(!inv.all_branch_in_k);
        assert_eq!(inv.regular, Regularity::Yes);
        assert_eq!(inv.branch[0].orbit_poly.as_ref().unwrap().deg(), 2);
        // over Q(zeta3) both points become rational
        let k = NumberField::cyclotomic(3).unwrap();
        let b = branch_data(&p, &k).unwrap();
        assert!(branch_rationality(&b, &k));
    }

    #[test]
    fn elliptic_double_cover() {
        let q = NumberField::rationals();
        // Y^2 - (T^3 - T^2 - 7T + 41/4), scaled: coefficients of 4Q
        let c = UniPoly::new(vec![ratio(-41, 4), rat(7), rat(1), rat(-1)]);
        let p = BiPoly::from_y_coeffs(&[c, UniPoly::zero(), UniPoly::from_ints(&[1])]);
        let inv = compute_invariants(&p, &q).unwrap();
        assert_eq!(inv.e_tuple, vec![2, 2, 2, 2]);
        assert_eq!(inv.genus, 1);
    }

    #[test]
    fn regularity_examples() {
        let q = NumberField::rationals();
        assert_eq!(regularity(&bi(&[&[0, -1], &[], &[1]]), &q).unwrap(), Regularity::Yes);
        assert_eq!(regularity(&bi(&[&[1], &[], &[1]]), &q).unwrap(), Regularity::No);
        // Y^4 - T over Q: D4 arithmetically, C4 geometrically
        let inv = compute_invariants(&bi(&[&[0, -1], &[], &[], &[], &[1]]), &q).unwrap();
        assert_eq!((inv.group.group.clone(), inv.geometric_order, inv.regular), (GroupId::Dihedral(4), Some(4), Regularity::No));
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus_galois(2, &[2, 2]).unwrap(), 0);
        assert_eq!(genus_galois(2, &[2, 2, 2, 2]).unwrap(), 1);
        assert_eq!(genus_galois(6, &[2, 2, 3]).unwrap(), 0);
        assert_eq!(genus_galois(3, &[3, 3, 3]).unwrap(), 1);
        assert!(genus_galois(6, &[4, 2]).is_err());
        assert!(genus_zero_shape(&GroupId::A5, &[5, 3, 2]));
        assert!(genus_zero_shape(&GroupId::S4, &[2, 3, 4]));
        assert!(!genus_zero_shape(&GroupId::Cyclic(3), &[3, 3, 3]));
    }
}
