//! Splitting fields over k as towers of simple extensions, flattened to one
//! absolute primitive element at every step.

use super::GaloisError;
use crate::exact::numfield::{NfElem, NfPoly, NumberField};

/// Largest splitting-field degree over k that is built explicitly.
pub const MAX_SPLITTING_DEGREE: usize = 24;

/// A field L containing k, with the image of k's generator in L.
#[derive(Clone, Debug)]
pub struct Over {
    pub field: NumberField,
    pub k_gen: NfElem,
    pub rel_degree: usize,
}

impl Over {
    pub fn base(k: &NumberField) -> Self {
        Over { field: k.clone(), k_gen: k.gen(), rel_degree: 1 }
    }

    /// Map a polynomial over k into L.
    pub fn map(&self, f: &NfPoly) -> NfPoly {
        NfPoly::new(f.coeffs().iter().map(|a| NumberField::embed_into(a, &self.field, &self.k_gen)).collect())
    }

    /// Whether f (over k) has a root in L.
    pub fn has_root(&self, f: &NfPoly) -> Result<bool, GaloisError> {
        Ok(!self.field.roots(&self.map(f))?.is_empty())
    }

    /// Adjoin a root of g, irreducible over L.
    fn adjoin(&self, g: &NfPoly) -> Result<Self, GaloisError> {
        let (l2, img, _) = self.field.extend(g)?;
        let k_gen = NumberField::embed_into(&self.k_gen, &l2, &img);
        Ok(Over { field: l2, k_gen, rel_degree: self.rel_degree * g.deg() })
    }
}

/// Splitting field over k of a nonzero polynomial with coefficients in k.
pub fn splitting_field(f: &NfPoly, k: &NumberField) -> Result<Over, GaloisError> {
    let mut l = Over::base(k);
    loop {
        let fl = l.map(f);
        let next = l.field.factor(&fl)?.into_iter().map(|(g, _)| g).find(|g| g.deg() > 1);
        let Some(g) = next else { return Ok(l) };
        if l.rel_degree * g.deg() > MAX_SPLITTING_DEGREE {
            return Err(GaloisError::DegreeTooLarge { degree: l.rel_degree * g.deg(), max: MAX_SPLITTING_DEGREE });
        }
        l = l.adjoin(&g)?;
    }
}

/// Whether every irreducible factor of f over k has a root in L, i.e. the
/// splitting field of f lies inside the Galois extension L.
pub fn contains_splitting_field(l: &Over, f: &NfPoly, k: &NumberField) -> Result<bool, GaloisError> {
    for (g, _) in k.factor(f)? {
        if g.deg() > 1 && !l.has_root(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::UniPoly;

    #[test]
    fn s3_splitting_field() {
        let q = NumberField::rationals();
        let f = q.lift_poly(&UniPoly::from_ints(&[1, 1, 0, 1]));
        let l = splitting_field(&f, &q).unwrap();
        assert_eq!(l.rel_degree, 6);
        assert!(contains_splitting_field(&l, &f, &q).unwrap());
        // Q(sqrt(-31)) lies inside
        assert!(l.has_root(&q.lift_poly(&UniPoly::from_ints(&[31, 0, 1]))).unwrap());
        assert!(!l.has_root(&q.lift_poly(&UniPoly::from_ints(&[-2, 0, 1]))).unwrap());
    }

    #[test]
    fn relative_to_gaussian_field() {
        let k = NumberField::gaussian();
        // x^4 + 1 splits over Q(i)(sqrt 2) = Q(zeta8)
        let f = k.lift_poly(&UniPoly::from_ints(&[1, 0, 0, 0, 1]));
        let l = splitting_field(&f, &k).unwrap();
        assert_eq!(l.rel_degree, 2);
        assert_eq!(l.field.degree(), 4);
    }
}
