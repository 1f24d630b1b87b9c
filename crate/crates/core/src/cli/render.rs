//! Canonical text rendering of polynomials, the inverse of the parser.
//!
//! Multiplication and powers are always explicit, terms run in decreasing
//! (deg_Y, deg_T) order and rational coefficients are written a/b.

use num_traits::{One, Signed, Zero};

use crate::exact::numfield::NfPoly;
use crate::exact::{BiPoly, Rat, UniPoly};

fn monomial(vars: &[(&str, usize)]) -> String {
    vars.iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn join_terms(terms: impl IntoIterator<Item = (Rat, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono
        } else {
            format!("{a}*{mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Render a univariate polynomial in the named variable.
pub fn render_uni(f: &UniPoly, var: &str) -> String {
    join_terms(
        f.coeffs()
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| (c.clone(), monomial(&[(var, i)]))),
    )
}

/// Render P(T, Y) with terms ordered by decreasing (deg_Y, deg_T).
pub fn render_bi(p: &BiPoly, t: &str, y: &str) -> String {
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by(|a, b| (b.0 .1, b.0 .0).cmp(&(a.0 .1, a.0 .0)));
    join_terms(terms.into_iter().map(|(&(i, j), c)| (c.clone(), monomial(&[(t, i), (y, j)]))))
}

/// Render a polynomial over a number field; non-rational coefficients are
/// written in the generator a and parenthesised.
pub fn render_nf(f: &NfPoly, var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        let mono = monomial(&[(var, i)]);
        let piece = match c.as_rational() {
            Some(r) if r.is_zero() => continue,
            Some(r) => join_terms([(r, mono)]),
            None if mono.is_empty() => format!("({c})"),
            None => format!("({c})*{mono}"),
        };
        match piece.strip_prefix('-') {
            Some(rest) if !parts.is_empty() => parts.push(format!("- {rest}")),
            _ if !parts.is_empty() => parts.push(format!("+ {piece}")),
            _ => parts.push(piece),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::ratio;

    #[test]
    fn renders_canonically() {
        let shanks = BiPoly::from_y_coeffs(&[
            UniPoly::from_ints(&[1]),
            UniPoly::from_ints(&[-3, 1]),
            UniPoly::from_ints(&[0, -1]),
            UniPoly::from_ints(&[1]),
        ]);
        assert_eq!(render_bi(&shanks, "T", "Y"), "Y^3 - T*Y^2 + T*Y - 3*Y + 1");
        let q = UniPoly::new(vec![ratio(41, 4), ratio(-7, 1), ratio(-1, 1), ratio(1, 1)]);
        assert_eq!(render_uni(&q, "x"), "x^3 - x^2 - 7*x + 41/4");
        assert_eq!(render_uni(&UniPoly::zero(), "x"), "0");
        let k = crate::exact::NumberField::gaussian();
        let f = NfPoly::new(vec![k.gen(), k.from_rat(&ratio(-1, 1)), k.from_rat(&ratio(1, 1))]);
        assert_eq!(render_nf(&f, "T"), "T^2 - T + (a)");
    }
}
