//! Simple algebraic number fields Q[a]/(m(a)) and polynomial arithmetic over them.
//!
//! Q itself is the degree-one field with modulus `x`, so every caller can treat the
//! base field uniformly. Factorization over a field goes through Trager's norm
//! method on top of [`factor_internal`](super::factor).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::factor::{cmp_poly, factor_internal, is_irreducible_over_q};
use super::linalg::det;
use super::poly::{Poly, UniPoly};
use super::ring::{rat, Field, Rat, Ring};
use super::roots::{isolate_roots, Rect};
use super::ExactError;

/// Largest degree accepted for a user-supplied base field.
pub const MAX_BASE_FIELD_DEGREE: usize = 4;

#[derive(Debug, PartialEq, Eq)]
pub struct FieldData {
    modulus: UniPoly,
    name: String,
}

#[derive(Clone, Debug)]
pub struct NumberField {
    data: Arc<FieldData>,
    embedding: Option<Rect>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.data.modulus == other.data.modulus
    }
}

/// Element of a number field, stored as a reduced polynomial in the generator.
/// Elements without a field tag are rational constants and combine with anything.
#[derive(Clone, Debug)]
pub struct NfElem {
    rep: UniPoly,
    field: Option<Arc<FieldData>>,
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl NfElem {
    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn from_rational(r: Rat) -> Self {
        NfElem { rep: UniPoly::constant(r), field: None }
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.rep.deg() {
            0 => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn join(a: &Option<Arc<FieldData>>, b: &Option<Arc<FieldData>>) -> Option<Arc<FieldData>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                debug_assert!(Arc::ptr_eq(x, y) || x.modulus == y.modulus, "mixing number fields");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem { rep: UniPoly::zero(), field: None }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl One for NfElem {
    fn one() -> Self {
        NfElem { rep: UniPoly::one(), field: None }
    }
}

impl Add for NfElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        NfElem { field: Self::join(&self.field, &o.field), rep: self.rep + o.rep }
    }
}

impl Sub for NfElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        NfElem { field: Self::join(&self.field, &o.field), rep: self.rep - o.rep }
    }
}

impl Neg for NfElem {
    type Output = Self;
    fn neg(self) -> Self {
        NfElem { rep: -self.rep, field: self.field }
    }
}

impl Mul for NfElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let field = Self::join(&self.field, &o.field);
        let prod = self.rep * o.rep;
        let rep = match &field {
            Some(f) if prod.deg() >= f.modulus.deg() => prod.rem(&f.modulus),
            _ => prod,
        };
        NfElem { rep, field }
    }
}

impl Ring for NfElem {
    fn from_i64(n: i64) -> Self {
        Self::from_rational(rat(n))
    }
}

impl Field for NfElem {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.field {
            Some(f) if self.rep.deg() > 0 => {
                let (g, s, _) = self.rep.xgcd(&f.modulus);
                debug_assert!(g.is_one());
                NfElem { rep: s, field: self.field.clone() }
            }
            _ => NfElem { rep: UniPoly::constant(self.rep.coeff(0).recip()), field: self.field.clone() },
        }
    }

    fn from_rat(r: &Rat) -> Self {
        Self::from_rational(r.clone())
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::cli::render::render_uni(&self.rep, "a"))
    }
}

/// Polynomial over a number field.
pub type NfPoly = Poly<NfElem>;

impl NumberField {
    /// A base field Q[a]/(modulus); modulus must be monic, irreducible, degree <= 4.
    pub fn new(modulus: UniPoly, name: impl Into<String>) -> Result<Self, ExactError> {
        if modulus.deg() > MAX_BASE_FIELD_DEGREE {
            return Err(ExactError::DegreeTooLarge { degree: modulus.deg(), max: MAX_BASE_FIELD_DEGREE });
        }
        Self::internal(modulus, name)
    }

    /// Any simple extension, used for residue and splitting fields.
    pub fn internal(modulus: UniPoly, name: impl Into<String>) -> Result<Self, ExactError> {
        let modulus = modulus.monic();
        if modulus.deg() == 0 || !is_irreducible_over_q(&modulus) {
            return Err(ExactError::NotIrreducible(crate::cli::render::render_uni(&modulus, "x")));
        }
        Ok(Self::unchecked(modulus, name.into()))
    }

    fn unchecked(modulus: UniPoly, name: String) -> Self {
        NumberField { data: Arc::new(FieldData { modulus, name }), embedding: None }
    }

    pub fn rationals() -> Self {
        Self::unchecked(UniPoly::x(), "Q".into())
    }

    /// Q(sqrt(d)) for a non-square integer d.
    pub fn quadratic(d: i64) -> Result<Self, ExactError> {
        Self::new(UniPoly::from_ints(&[-d, 0, 1]), format!("Q(sqrt({d}))"))
    }

    pub fn gaussian() -> Self {
        Self::new(UniPoly::from_ints(&[1, 0, 1]), "Q(i)").unwrap()
    }

    /// Q(zeta_n) for phi(n) <= 4.
    pub fn cyclotomic(n: u64) -> Result<Self, ExactError> {
        let phi = cyclotomic_poly(n);
        if phi.deg() == 1 {
            return Ok(Self::rationals());
        }
        Self::new(phi, format!("Q(zeta{n})"))
    }

    /// Choose a complex embedding: the root of the modulus with the largest
    /// imaginary part, ties broken by real part.
    pub fn with_default_embedding(mut self) -> Self {
        if self.degree() > 1 {
            if let Ok(mut rects) = isolate_roots(&self.data.modulus) {
                rects.sort_by(|a, b| b.center_cmp(a));
                self.embedding = rects.into_iter().next();
            }
        }
        self
    }

    pub fn embedding(&self) -> Option<&Rect> {
        self.embedding.as_ref()
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.data.modulus
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn degree(&self) -> usize {
        self.data.modulus.deg()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn elem(&self, rep: UniPoly) -> NfElem {
        let rep = if rep.deg() >= self.degree() { rep.rem(&self.data.modulus) } else { rep };
        // rationals stay untagged so they combine with any field
        let field = (!self.is_rationals()).then(|| self.data.clone());
        NfElem { rep, field }
    }

    pub fn from_rat(&self, r: &Rat) -> NfElem {
        self.elem(UniPoly::constant(r.clone()))
    }

    pub fn gen(&self) -> NfElem {
        self.elem(UniPoly::x())
    }

    pub fn lift_poly(&self, f: &UniPoly) -> NfPoly {
        f.map(|c| self.from_rat(c))
    }

    /// Coordinates of an element on the power basis, padded to the field degree.
    pub fn coords(&self, a: &NfElem) -> Vec<Rat> {
        (0..self.degree()).map(|i| a.rep.coeff(i)).collect()
    }

    /// Multiplication-by-a matrix on the power basis.
    fn mul_matrix(&self, a: &NfElem) -> Vec<Vec<Rat>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut b = a.clone();
        for _ in 0..d {
            cols.push(self.coords(&b));
            b = b * self.gen();
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self, a: &NfElem) -> Rat {
        if self.is_rationals() {
            return a.rep.coeff(0);
        }
        det(self.mul_matrix(a))
    }

    /// Norm of a polynomial down to Q[x]: the product of its conjugates.
    pub fn poly_norm(&self, f: &NfPoly) -> UniPoly {
        if self.is_rationals() {
            return f.map(|c| c.rep.coeff(0));
        }
        let n = f.deg() * self.degree();
        let pts: Vec<(Rat, Rat)> = (0..=n as i64)
            .map(|j| {
                let x = rat(j);
                let v = f.eval(&NfElem::from_rational(x.clone()));
                (x, self.norm(&self.elem(v.rep)))
            })
            .collect();
        UniPoly::interpolate(&pts)
    }

    /// Factor a nonzero polynomial over this field into monic irreducibles with multiplicity.
    pub fn factor(&self, f: &NfPoly) -> Result<Vec<(NfPoly, usize)>, ExactError> {
        if f.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if self.is_rationals() {
            let g = f.map(|c| c.rep.coeff(0));
            return Ok(factor_internal(&g)?.into_iter().map(|(h, m)| (self.lift_poly(&h), m)).collect());
        }
        let mut out = Vec::new();
        for (i, part) in f.squarefree_decomposition().into_iter().enumerate() {
            if part.deg() == 0 {
                continue;
            }
            for g in self.trager(&part)? {
                out.push((g, i + 1));
            }
        }
        Ok(out)
    }

    fn trager(&self, f: &NfPoly) -> Result<Vec<NfPoly>, ExactError> {
        if f.deg() == 1 {
            return Ok(vec![f.monic()]);
        }
        let a = self.gen();
        for s in shift_sequence() {
            let shift = NfPoly::new(vec![-(a.clone() * NfElem::from_i64(s)), NfElem::one()]);
            let g = f.compose(&shift);
            let nrm = self.poly_norm(&g);
            if !nrm.is_squarefree() {
                continue;
            }
            let back = NfPoly::new(vec![a.clone() * NfElem::from_i64(s), NfElem::one()]);
            let mut out = Vec::new();
            for (h, _) in factor_internal(&nrm)? {
                let d = g.gcd(&self.lift_poly(&h));
                if d.deg() > 0 {
                    out.push(d.compose(&back).monic());
                }
            }
            return Ok(out);
        }
        unreachable!("no squarefree norm found")
    }

    pub fn is_irreducible(&self, f: &NfPoly) -> Result<bool, ExactError> {
        let fs = self.factor(f)?;
        Ok(fs.len() == 1 && fs[0].1 == 1)
    }

    /// All roots of f lying in this field, without multiplicity, in a fixed order.
    pub fn roots(&self, f: &NfPoly) -> Result<Vec<NfElem>, ExactError> {
        let mut out: Vec<NfElem> = self
            .factor(f)?
            .into_iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| -g.coeff(0))
            .collect();
        out.sort_by(|x, y| cmp_poly(&x.rep, &y.rep));
        Ok(out)
    }

    pub fn roots_of_rational(&self, f: &UniPoly) -> Result<Vec<NfElem>, ExactError> {
        self.roots(&self.lift_poly(f))
    }

    /// Square root in the field, if any.
    pub fn sqrt(&self, a: &NfElem) -> Option<NfElem> {
        if a.is_zero() {
            return Some(NfElem::zero());
        }
        let f = NfPoly::new(vec![-a.clone(), NfElem::zero(), NfElem::one()]);
        self.roots(&f).ok()?.into_iter().next()
    }

    pub fn is_square(&self, a: &NfElem) -> bool {
        self.sqrt(a).is_some()
    }

    /// Adjoin a root of `g`, irreducible over this field. Returns the absolute
    /// field L, the image of this field's generator in L, and the adjoined root.
    pub fn extend(&self, g: &NfPoly) -> Result<(NumberField, NfElem, NfElem), ExactError> {
        let g = g.monic();
        if self.is_rationals() {
            let m = g.map(|c| c.rep.coeff(0));
            let l = NumberField::internal(m, "L")?;
            let w = l.gen();
            return Ok((l, NfElem::zero(), w));
        }
        let a = self.gen();
        for lam in shift_sequence() {
            // minimal polynomial of z = w + lam*a
            let shift = NfPoly::new(vec![-(a.clone() * NfElem::from_i64(lam)), NfElem::one()]);
            let h = g.compose(&shift);
            let m = self.poly_norm(&h);
            if !m.is_squarefree() {
                continue;
            }
            let l = NumberField::internal(m, "L")?;
            // image of a: common root y of modulus(y) and g(z - lam*y) over L
            let z = l.gen();
            let lin = NfPoly::new(vec![z.clone(), NfElem::from_i64(-lam)]);
            let mut gy = NfPoly::zero();
            for c in g.coeffs().iter().rev() {
                let coeff = l.lift_poly(&c.rep.clone()).compose(&NfPoly::x());
                gy = gy * lin.clone() + coeff;
            }
            let my = l.lift_poly(self.modulus());
            let d = my.gcd(&gy);
            if d.deg() != 1 {
                continue;
            }
            let a_img = -d.coeff(0);
            let w = z - a_img.clone() * NfElem::from_i64(lam);
            return Ok((l, a_img, w));
        }
        unreachable!()
    }

    /// Map an element of self into L given the image of the generator.
    pub fn embed_into(a: &NfElem, l: &NumberField, gen_image: &NfElem) -> NfElem {
        match a.rep.deg() {
            0 => l.from_rat(&a.rep.coeff(0)),
            _ => {
                let mut acc = l.from_rat(&rat(0));
                for c in a.rep.coeffs().iter().rev() {
                    acc = acc * gen_image.clone() + l.from_rat(c);
                }
                acc
            }
        }
    }
}

fn shift_sequence() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] }).take(64)
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    assert!(n >= 1);
    let mut f = UniPoly::monomial(rat(1), n as usize) - UniPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic_poly(d)).unwrap();
        }
    }
    f
}

/// Minimal polynomial of 2cos(2 pi / n).
pub fn cos_min_poly(n: u64) -> UniPoly {
    match n {
        1 => return UniPoly::from_ints(&[-2, 1]),
        2 => return UniPoly::from_ints(&[2, 1]),
        _ => {}
    }
    let phi = cyclotomic_poly(n);
    let c = phi.deg() / 2;
    // x^j + x^-j as a polynomial in y = x + 1/x
    let mut d_prev = UniPoly::from_ints(&[2]);
    let mut d_cur = UniPoly::x();
    let mut acc = UniPoly::constant(phi.coeff(c));
    for j in 1..=c {
        acc = acc + d_cur.scale(&phi.coeff(c + j));
        let next = UniPoly::x() * d_cur.clone() - d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    acc.monic()
}

/// Whether k contains a primitive n-th root of unity.
pub fn has_root_of_unity(k: &NumberField, n: u64) -> bool {
    assert!(n >= 1);
    let phi = cyclotomic_poly(n);
    if !k.degree().is_multiple_of(phi.deg()) {
        return false;
    }
    k.roots_of_rational(&phi).map(|r| !r.is_empty()).unwrap_or(false)
}

/// Whether k contains 2cos(2 pi / n) = zeta_n + zeta_n^-1.
pub fn has_cos_of_root_of_unity(k: &NumberField, n: u64) -> bool {
    assert!(n >= 1);
    let psi = cos_min_poly(n);
    if !k.degree().is_multiple_of(psi.deg()) {
        return false;
    }
    k.roots_of_rational(&psi).map(|r| !r.is_empty()).unwrap_or(false)
}

/// Some root of f in k, if one exists.
pub fn root_in_field(f: &UniPoly, k: &NumberField) -> Result<Option<NfElem>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if f.deg() > super::factor::MAX_FACTOR_DEGREE {
        return Err(ExactError::DegreeTooLarge { degree: f.deg(), max: super::factor::MAX_FACTOR_DEGREE });
    }
    Ok(k.roots_of_rational(f)?.into_iter().next())
}
