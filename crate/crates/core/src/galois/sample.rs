//! Frobenius cycle-type statistics, used when no exact method applies.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::GroupId;
use crate::exact::modp::Fp;
use crate::exact::numfield::NumberField;
use crate::exact::ring::{common_denom, is_prime_u64};
use crate::exact::{rat, BiPoly, Rat, UniPoly};

pub const SPECIALIZATIONS: usize = 40;
pub const PRIMES_PER_SPECIALIZATION: usize = 25;

fn reduce(f: &UniPoly, fp: &Fp) -> Option<Vec<u64>> {
    let p = BigInt::from(fp.p);
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        if (c.denom() % &p).is_zero() {
            return None;
        }
        let n = c.numer().mod_floor(&p).to_u64().unwrap();
        let d = c.denom().mod_floor(&p).to_u64().unwrap();
        out.push(fp.mul(n, fp.inv(d)));
    }
    Some(fp.trim(out))
}

/// Whether the prime p splits completely in k (always true for k = Q).
fn splits_in(k: &NumberField, fp: &Fp) -> bool {
    if k.is_rationals() {
        return true;
    }
    match reduce(k.modulus(), fp) {
        Some(m) if m.len() == k.degree() + 1 && fp.is_squarefree(&m) => fp.factor_degrees(&m).iter().all(|&d| d == 1),
        _ => false,
    }
}

/// Cycle types of Frobenius elements of f over k at `count` good primes.
pub fn poly_cycle_types(f: &UniPoly, k: &NumberField, count: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let n = f.deg();
    let mut seen = 0;
    let den = common_denom(f.coeffs());
    let mut p = 3u64;
    while seen < count && p < 200_000 {
        p += 2;
        if !is_prime_u64(p) || (&den % p).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        if !splits_in(k, &fp) {
            continue;
        }
        let Some(g) = reduce(f, &fp) else { continue };
        if g.len() != n + 1 || !fp.is_squarefree(&g) {
            continue;
        }
        let mut t = fp.factor_degrees(&g);
        t.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(t);
        seen += 1;
    }
    out
}

/// Rational parameters 0, 1, -1, 2, -2, ...
pub fn small_integers() -> impl Iterator<Item = Rat> {
    (0..).flat_map(|j: i64| if j == 0 { vec![rat(0)] } else { vec![rat(j), rat(-j)] })
}

/// Cycle types over many separable specialisations.
pub fn cover_cycle_types(p: &BiPoly, k: &NumberField) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut used = 0;
    for t0 in small_integers().take(400) {
        if used == SPECIALIZATIONS {
            break;
        }
        let f = p.specialize(&t0);
        if !f.is_squarefree() {
            continue;
        }
        out.extend(poly_cycle_types(&f, k, PRIMES_PER_SPECIALIZATION));
        used += 1;
    }
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Best guess for a transitive group of degree n from the observed cycle types.
pub fn guess_group(n: usize, types: &BTreeSet<Vec<usize>>, disc_square: bool) -> GroupId {
    let has = |t: &[usize]| types.contains(&t.to_vec());
    let ones = |lead: &[usize]| {
        let mut v = lead.to_vec();
        v.extend(std::iter::repeat_n(1, n - lead.iter().sum::<usize>()));
        v
    };
    if n == 5 {
        return if disc_square {
            if has(&ones(&[3])) {
                GroupId::A5
            } else if has(&ones(&[2, 2])) {
                GroupId::Dihedral(5)
            } else {
                GroupId::Cyclic(5)
            }
        } else if has(&ones(&[2])) || has(&[3, 2]) || has(&ones(&[3])) {
            GroupId::Sn(5)
        } else {
            GroupId::Other(20)
        };
    }
    let full_cycle = has(&[n]);
    let near_cycle = has(&ones(&[n - 1]));
    if full_cycle && near_cycle && has(&ones(&[2])) {
        return GroupId::Sn(n);
    }
    if disc_square && (full_cycle || near_cycle) && has(&ones(&[3])) && (n % 2 == 1 || near_cycle) {
        return GroupId::Other(factorial(n) / 2);
    }
    let mut lower = n;
    for t in types {
        lower = lower.lcm(&t.iter().fold(1usize, |a, &b| a.lcm(&b)));
    }
    if full_cycle && types.iter().all(|t| t.iter().all(|&c| c == t[0])) {
        // every element acts semiregularly: consistent with a cyclic group
        return GroupId::Cyclic(n);
    }
    GroupId::Other(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_quintic_groups() {
        let q = NumberField::rationals();
        // x^5 - x - 1 has group S5
        let t = poly_cycle_types(&UniPoly::from_ints(&[-1, -1, 0, 0, 0, 1]), &q, 200);
        assert_eq!(guess_group(5, &t, false), GroupId::Sn(5));
        // x^5 - 5 x + 12 has group D5, x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1 is cyclic
        let d5 = poly_cycle_types(&UniPoly::from_ints(&[12, -5, 0, 0, 0, 1]), &q, 200);
        assert_eq!(guess_group(5, &d5, true), GroupId::Dihedral(5));
        let c5 = poly_cycle_types(&UniPoly::from_ints(&[1, 3, -3, -4, 1, 1]), &q, 200);
        assert_eq!(guess_group(5, &c5, true), GroupId::Cyclic(5));
    }
}
