//! Bivariate polynomials P(T, Y) with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::numfield::{NfElem, NfPoly, NumberField};
use super::poly::{Poly, UniPoly};
use super::ring::{rat, Rat};

/// Sparse bivariate polynomial, keyed by (deg_T, deg_Y).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rat>,
}

/// A polynomial in Y whose coefficients are polynomials in T over k.
pub type KBiPoly = Poly<NfPoly>;

impl BiPoly {
    pub fn new(terms: impl IntoIterator<Item = ((usize, usize), Rat)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in terms {
            let e: &mut Rat = map.entry(k).or_insert_with(Rat::zero);
            *e += v;
        }
        map.retain(|_, v| !v.is_zero());
        BiPoly { terms: map }
    }

    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    /// Build from coefficients of Y^0, Y^1, ... as polynomials in T.
    pub fn from_y_coeffs(cs: &[UniPoly]) -> Self {
        Self::new(cs.iter().enumerate().flat_map(|(j, c)| {
            c.coeffs().iter().enumerate().map(move |(i, a)| ((i, j), a.clone())).collect::<Vec<_>>()
        }))
    }

    pub fn from_univariate_t(f: &UniPoly) -> Self {
        Self::from_y_coeffs(std::slice::from_ref(f))
    }

    pub fn from_univariate_y(f: &UniPoly) -> Self {
        Self::from_y_coeffs(&f.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect::<Vec<_>>())
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn deg_t(&self) -> usize {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Coefficient of Y^j as a polynomial in T.
    pub fn y_coeff(&self, j: usize) -> UniPoly {
        let d = self.terms.keys().filter(|k| k.1 == j).map(|k| k.0).max();
        match d {
            None => UniPoly::zero(),
            Some(d) => {
                let mut c = vec![Rat::zero(); d + 1];
                for (&(i, jj), a) in &self.terms {
                    if jj == j {
                        c[i] = a.clone();
                    }
                }
                UniPoly::new(c)
            }
        }
    }

    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        (0..=self.deg_y()).map(|j| self.y_coeff(j)).collect()
    }

    /// Whether the leading coefficient in Y is the constant 1.
    pub fn is_monic_in_y(&self) -> bool {
        !self.is_zero() && self.y_coeff(self.deg_y()).is_one()
    }

    /// Whether Y does not occur.
    pub fn is_univariate_t(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    pub fn is_univariate_y(&self) -> bool {
        self.terms.keys().all(|k| k.0 == 0)
    }

    /// P(t0, Y) as a polynomial in Y.
    pub fn specialize(&self, t0: &Rat) -> UniPoly {
        UniPoly::new(self.y_coeffs().iter().map(|c| c.eval(t0)).collect())
    }

    /// P(t0, Y) for t0 in a number field.
    pub fn specialize_in(&self, k: &NumberField, t0: &NfElem) -> NfPoly {
        NfPoly::new(self.y_coeffs().iter().map(|c| k.lift_poly(c).eval(t0)).collect())
    }

    /// Y-polynomial with coefficients in Q[T].
    pub fn to_y_poly(&self) -> Poly<UniPoly> {
        Poly::new(self.y_coeffs())
    }

    pub fn from_y_poly(p: &Poly<UniPoly>) -> Self {
        Self::from_y_coeffs(p.coeffs())
    }

    /// Lift to a Y-polynomial over k[T].
    pub fn to_k(&self, k: &NumberField) -> KBiPoly {
        Poly::new(self.y_coeffs().iter().map(|c| k.lift_poly(c)).collect())
    }

    /// Partial derivative in Y.
    pub fn derivative_y(&self) -> Self {
        Self::new(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), a)| ((i, j - 1), a * rat(j as i64))),
        )
    }

    /// Discriminant with respect to Y, a polynomial in T. Computed by
    /// evaluation at enough integer points and interpolation.
    pub fn disc_y(&self) -> UniPoly {
        let n = self.deg_y();
        if n == 0 {
            return UniPoly::one();
        }
        let lead = self.y_coeff(n);
        let bound = (2 * n - 1) * self.deg_t() + 1;
        let mut pts = Vec::with_capacity(bound);
        let mut t = 0i64;
        while pts.len() < bound {
            let tr = rat(t);
            t += 1;
            if lead.eval(&tr).is_zero() {
                continue;
            }
            pts.push((tr.clone(), self.specialize(&tr).discriminant()));
        }
        UniPoly::interpolate(&pts)
    }

    /// Substitute T -> g(T).
    pub fn compose_t(&self, g: &UniPoly) -> Self {
        Self::from_y_coeffs(&self.y_coeffs().iter().map(|c| c.compose(g)).collect::<Vec<_>>())
    }

    pub fn scale(&self, a: &Rat) -> Self {
        Self::new(self.terms.iter().map(|(&k, v)| (k, v * a)))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::render::render_bi(self, "T", "Y"))
    }
}
