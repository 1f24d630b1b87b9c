//! Galois groups over k(T) and of specialisations, splitting fields and the
//! inertia data attached to branch points.

pub mod kt;
pub mod sample;
pub mod small;
pub mod split;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::cover::{self, CoverError, InertiaClass};
use crate::exact::numfield::{NfPoly, NumberField};
use crate::exact::ring::squarefree_class;
use crate::exact::{BiPoly, ExactError, Rat, UniPoly};
use small::{identify, Ident};
use split::{splitting_field, Over, MAX_SPLITTING_DEGREE};

/// Largest Y-degree accepted for covers.
pub const MAX_COVER_DEGREE: usize = 8;

/// Largest group order for which inertia classes are labelled.
pub const MAX_LABELLED_ORDER: usize = 24;

/// A transitive permutation group, up to isomorphism. S3 is `Dihedral(3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    Cyclic(usize),
    /// Dihedral group of order 2n, n >= 3.
    Dihedral(usize),
    V4,
    A4,
    S4,
    A5,
    Sn(usize),
    Other(usize),
}

impl GroupId {
    pub fn order(&self) -> usize {
        match self {
            GroupId::Cyclic(n) => *n,
            GroupId::Dihedral(n) => 2 * n,
            GroupId::V4 => 4,
            GroupId::A4 => 12,
            GroupId::S4 => 24,
            GroupId::A5 => 60,
            GroupId::Sn(n) => (1..=*n).product(),
            GroupId::Other(o) => *o,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupId::Cyclic(_))
    }

    /// Short name used in reports: C3, D4, V4, A4, S4, A5, S5, G20.
    pub fn label(&self) -> String {
        match self {
            GroupId::Cyclic(n) => format!("C{n}"),
            GroupId::Dihedral(n) => format!("D{n}"),
            GroupId::V4 => "V4".into(),
            GroupId::A4 => "A4".into(),
            GroupId::S4 => "S4".into(),
            GroupId::A5 => "A5".into(),
            GroupId::Sn(n) => format!("S{n}"),
            GroupId::Other(o) => format!("G{o}"),
        }
    }

    /// Parse a label as produced by [`GroupId::label`]; S3 maps to D3.
    pub fn parse(s: &str) -> Option<GroupId> {
        let s = s.trim();
        let num = |t: &str| t.parse::<usize>().ok();
        match s {
            "V4" => return Some(GroupId::V4),
            "A4" => return Some(GroupId::A4),
            "S4" => return Some(GroupId::S4),
            "A5" => return Some(GroupId::A5),
            "S3" => return Some(GroupId::Dihedral(3)),
            _ => {}
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        match head {
            "C" | "Z" => num(tail.trim_start_matches('/')).filter(|&n| n >= 1).map(GroupId::Cyclic),
            "D" => num(tail).and_then(|n| match n {
                2 => Some(GroupId::V4),
                n if n >= 3 => Some(GroupId::Dihedral(n)),
                _ => None,
            }),
            "S" => num(tail).filter(|&n| n >= 5).map(GroupId::Sn),
            _ => None,
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("polynomial is reducible over the base field")]
    Reducible,
    #[error("polynomial is inseparable")]
    Inseparable,
    #[error("polynomial is not monic in Y")]
    NotMonic,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("parameter is a branch point")]
    BranchPoint,
    #[error("group of order {0} is too large for this operation")]
    GroupTooLarge(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A group together with its provenance.
#[derive(Clone, Debug)]
pub struct GroupResult {
    pub group: GroupId,
    /// False when the identification relies on Frobenius sampling.
    pub certified: bool,
    pub ident: Option<Ident>,
}

/// Basic checks shared by all cover operations.
pub fn validate(p: &BiPoly) -> Result<(), GaloisError> {
    let n = p.deg_y();
    if n == 0 || !p.is_monic_in_y() {
        return Err(GaloisError::NotMonic);
    }
    if n > MAX_COVER_DEGREE {
        return Err(GaloisError::DegreeTooLarge { degree: n, max: MAX_COVER_DEGREE });
    }
    if p.disc_y().is_zero() {
        return Err(GaloisError::Inseparable);
    }
    Ok(())
}

fn exact_applies(f: &crate::exact::bipoly::KBiPoly) -> bool {
    f.deg() <= 4 || small::binomial_radicand(f).is_some()
}

/// Irreducibility over k(T) for degrees beyond the exact range: some
/// specialisation irreducible over k proves it. Returns false if none of
/// the sampled specialisations is irreducible.
fn sampled_irreducible(p: &BiPoly, k: &NumberField) -> Result<bool, GaloisError> {
    let mut tried = 0;
    for t0 in sample::small_integers().take(200) {
        let f = p.specialize(&t0);
        if !f.is_squarefree() {
            continue;
        }
        if k.is_irreducible(&k.lift_poly(&f))? {
            return Ok(true);
        }
        tried += 1;
        if tried == 30 {
            break;
        }
    }
    Ok(false)
}

/// Galois group of P over k(T).
pub fn group_over_function_field(p: &BiPoly, k: &NumberField) -> Result<GroupResult, GaloisError> {
    validate(p)?;
    let f = p.to_k(k);
    if exact_applies(&f) {
        match identify(&f, k) {
            Ok(id) => return Ok(GroupResult { group: id.group.clone(), certified: true, ident: Some(id) }),
            Err(GaloisError::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if !sampled_irreducible(p, k)? {
        return Err(GaloisError::Reducible);
    }
    let types = sample::cover_cycle_types(p, k);
    let disc_square = kt::is_square(&k.lift_poly(&p.disc_y()), k, false);
    Ok(GroupResult { group: sample::guess_group(p.deg_y(), &types, disc_square), certified: false, ident: None })
}

/// Whether P is irreducible over k(T).
pub fn is_irreducible(p: &BiPoly, k: &NumberField) -> Result<bool, GaloisError> {
    match group_over_function_field(p, k) {
        Ok(_) => Ok(true),
        Err(GaloisError::Reducible) => Ok(false),
        Err(e) => Err(e),
    }
}

fn constant_bi(f: &NfPoly) -> crate::exact::bipoly::KBiPoly {
    crate::exact::bipoly::KBiPoly::new(f.coeffs().iter().map(|c| NfPoly::constant(c.clone())).collect())
}

/// Galois group over k of a nonzero separable polynomial with coefficients in k.
pub fn group_of_poly(f: &NfPoly, k: &NumberField) -> Result<GroupResult, GaloisError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial.into());
    }
    if !f.is_squarefree() {
        return Err(GaloisError::Inseparable);
    }
    let mut parts: Vec<NfPoly> = k.factor(f)?.into_iter().map(|(g, _)| g).filter(|g| g.deg() > 1).collect();
    parts.sort_by_key(|g| g.deg());
    let exact = |g: &NfPoly| -> Result<GroupResult, GaloisError> {
        let b = constant_bi(g);
        if exact_applies(&b) {
            match identify(&b, k) {
                Ok(id) => return Ok(GroupResult { group: id.group.clone(), certified: true, ident: Some(id) }),
                Err(GaloisError::Unsupported(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if g.coeffs().iter().all(|c| c.as_rational().is_some()) {
            let gq = UniPoly::new(g.coeffs().iter().map(|c| c.as_rational().unwrap()).collect());
            let types = sample::poly_cycle_types(&gq, k, 300);
            let sq = kt::is_square(&NfPoly::constant(gq.discriminant().into_nf()), k, false);
            return Ok(GroupResult { group: sample::guess_group(g.deg(), &types, sq), certified: false, ident: None });
        }
        Err(GaloisError::Unsupported("sampling needs rational coefficients".into()))
    };
    match parts.as_slice() {
        [] => Ok(GroupResult { group: GroupId::Cyclic(1), certified: true, ident: None }),
        [g] => exact(g),
        [g1, g2] if g1.deg() == 2 && g2.deg() == 2 => {
            let d = small::disc_small(g1.coeffs()) * small::disc_small(g2.coeffs());
            let group = if k.is_square(&d) { GroupId::Cyclic(2) } else { GroupId::V4 };
            Ok(GroupResult { group, certified: true, ident: None })
        }
        [g1, g2] if g1.deg() == 2 && g2.deg() == 3 => {
            let cubic = exact(g2)?;
            let group = match cubic.group {
                GroupId::Cyclic(3) => GroupId::Cyclic(6),
                _ => {
                    let d = small::disc_small(g1.coeffs()) * small::disc_small(g2.coeffs());
                    if k.is_square(&d) {
                        GroupId::Dihedral(3)
                    } else {
                        GroupId::Dihedral(6)
                    }
                }
            };
            Ok(GroupResult { group, certified: true, ident: None })
        }
        _ => Err(GaloisError::Unsupported("specialisation with several nonlinear factors".into())),
    }
}

trait IntoNf {
    fn into_nf(self) -> crate::exact::NfElem;
}

impl IntoNf for Rat {
    fn into_nf(self) -> crate::exact::NfElem {
        crate::exact::NfElem::from_rational(self)
    }
}

/// P(t0, Y) for finite t0, or the fibre of the monic model at infinity.
pub fn fibre(p: &BiPoly, t0: Option<&Rat>) -> UniPoly {
    match t0 {
        Some(t) => p.specialize(t),
        None => {
            let model = cover::puiseux::model_at_infinity(&p.y_coeffs());
            UniPoly::new(model.iter().map(|c| c.coeff(0)).collect())
        }
    }
}

fn checked_fibre(p: &BiPoly, t0: Option<&Rat>, k: &NumberField) -> Result<UniPoly, GaloisError> {
    validate(p)?;
    let f = fibre(p, t0);
    if f.is_squarefree() {
        return Ok(f);
    }
    let ramified = match cover::cycle_type_at(p, t0) {
        Ok(c) => c.iter().any(|&e| e > 1),
        Err(CoverError::Galois(e)) => return Err(e),
        Err(_) => false,
    };
    let _ = k;
    Err(if ramified { GaloisError::BranchPoint } else { GaloisError::Inseparable })
}

/// Galois group over k of the specialisation at t0 (None meaning infinity).
pub fn group_of_specialization(p: &BiPoly, t0: Option<&Rat>, k: &NumberField) -> Result<GroupResult, GaloisError> {
    let f = checked_fibre(p, t0, k)?;
    group_of_poly(&k.lift_poly(&f), k)
}

/// Description of a specialisation field F_t0.
#[derive(Clone, Debug)]
pub struct SplittingFieldDesc {
    pub degree: usize,
    /// For quadratic fields: squarefree d with F = k(sqrt d), as text.
    pub kernel: Option<String>,
    /// Absolute defining polynomial over Q of the splitting field when its degree over k is at most 6.
    pub defining_poly: Option<UniPoly>,
    pub group: GroupId,
    pub field: Over,
}

pub fn specialization_field(p: &BiPoly, t0: Option<&Rat>, k: &NumberField) -> Result<SplittingFieldDesc, GaloisError> {
    let f = checked_fibre(p, t0, k)?;
    poly_splitting_desc(&k.lift_poly(&f), k)
}

/// Splitting-field descriptor of a separable polynomial over k.
pub fn poly_splitting_desc(f: &NfPoly, k: &NumberField) -> Result<SplittingFieldDesc, GaloisError> {
    let g = group_of_poly(f, k)?;
    if g.group.order() > MAX_SPLITTING_DEGREE {
        return Err(GaloisError::DegreeTooLarge { degree: g.group.order(), max: MAX_SPLITTING_DEGREE });
    }
    let over = splitting_field(f, k)?;
    let degree = over.rel_degree;
    let kernel = (degree == 2).then(|| {
        let quad = k.factor(f).ok().and_then(|fs| fs.into_iter().map(|(g, _)| g).find(|g| g.deg() == 2));
        let d = quad.map(|q| small::disc_small(q.coeffs())).unwrap_or_else(crate::exact::NfElem::zero);
        match d.as_rational() {
            Some(r) if k.is_rationals() => squarefree_class(&r).to_string(),
            Some(r) => squarefree_class(&r).to_string(),
            None => d.to_string(),
        }
    });
    let defining_poly = (degree <= 6).then(|| over.field.modulus().clone());
    Ok(SplittingFieldDesc { degree, kernel, defining_poly, group: g.group, field: over })
}

/// One inertia class per branch point, labelled by the order of a generator.
pub fn inertia_invariant(p: &BiPoly, k: &NumberField) -> Result<Vec<InertiaClass>, CoverError> {
    let g = group_over_function_field(p, k)?;
    if g.group.order() > MAX_LABELLED_ORDER {
        return Err(CoverError::Galois(GaloisError::GroupTooLarge(g.group.order())));
    }
    Ok(cover::branch_data(p, k)?.into_iter().map(|b| b.inertia_class).collect())
}

/// Squarefree integer class of a rational quadratic discriminant.
pub fn quadratic_kernel(d: &Rat) -> BigInt {
    squarefree_class(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn bi(cs: &[&[i64]]) -> BiPoly {
        BiPoly::from_y_coeffs(&cs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
    }

    #[test]
    fn group_labels_round_trip() {
        for g in [GroupId::Cyclic(3), GroupId::Dihedral(4), GroupId::V4, GroupId::S4, GroupId::Sn(5)] {
            assert_eq!(GroupId::parse(&g.label()), Some(g.clone()));
        }
        assert_eq!(GroupId::parse("S3"), Some(GroupId::Dihedral(3)));
        assert_eq!(GroupId::Dihedral(3).order(), 6);
    }

    #[test]
    fn specialisation_groups() {
        let q = NumberField::rationals();
        let kummer = bi(&[&[0, -1], &[], &[1]]);
        assert_eq!(group_of_specialization(&kummer, Some(&rat(4)), &q).unwrap().group, GroupId::Cyclic(1));
        let shanks = bi(&[&[1], &[-3, 1], &[0, -1], &[1]]);
        assert_eq!(group_of_specialization(&shanks, Some(&rat(0)), &q).unwrap().group, GroupId::Cyclic(3));
        let s3 = bi(&[&[0, 1], &[0, 1], &[], &[1]]);
        assert_eq!(group_of_specialization(&s3, Some(&rat(1)), &q).unwrap().group, GroupId::Dihedral(3));
        assert_eq!(group_of_specialization(&s3, Some(&rat(0)), &q).unwrap_err(), GaloisError::BranchPoint);
    }

    #[test]
    fn specialisation_fields() {
        let q = NumberField::rationals();
        let kummer = bi(&[&[0, -1], &[], &[1]]);
        let d = specialization_field(&kummer, Some(&rat(5)), &q).unwrap();
        assert_eq!((d.degree, d.kernel.as_deref()), (2, Some("5")));
        assert_eq!(specialization_field(&kummer, Some(&rat(9)), &q).unwrap().degree, 1);
        let s3 = bi(&[&[0, 1], &[0, 1], &[], &[1]]);
        let d = specialization_field(&s3, Some(&rat(1)), &q).unwrap();
        assert_eq!((d.degree, d.group.clone()), (6, GroupId::Dihedral(3)));
        let cubic = q.lift_poly(&UniPoly::from_ints(&[1, 1, 0, 1]));
        assert!(split::contains_splitting_field(&d.field, &cubic, &q).unwrap());
    }

    #[test]
    fn lemma_compatibility_for_kummer() {
        // kernel 5 at t0 = 5 becomes split over Q(sqrt5); 2 and 3 stay quadratic
        let kummer = bi(&[&[0, -1], &[], &[1]]);
        let k5 = NumberField::quadratic(5).unwrap();
        assert_eq!(specialization_field(&kummer, Some(&rat(5)), &k5).unwrap().degree, 1);
        for t in [2, 3] {
            assert_eq!(specialization_field(&kummer, Some(&rat(t)), &k5).unwrap().degree, 2);
        }
    }
}
