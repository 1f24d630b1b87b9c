//! Factorization of rational polynomials: squarefree decomposition, modular
//! factorization, Hensel lifting and subset recombination (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, PolyP};
use super::poly::{Poly, UniPoly};
use super::ring::{common_denom, is_prime_u64, Rat};
use super::ExactError;

/// Largest degree accepted by the public factorization entry point.
pub const MAX_FACTOR_DEGREE: usize = 12;

/// Internal ceiling, used by norm computations over number fields.
pub(crate) const MAX_INTERNAL_DEGREE: usize = 64;

type ZPoly = Vec<BigInt>;

/// Factor a nonzero rational polynomial into monic irreducibles with multiplicity.
/// The discarded leading constant is `f.lc()`. Degree capped at 12.
pub fn factor_over_q(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if f.deg() > MAX_FACTOR_DEGREE {
        return Err(ExactError::DegreeTooLarge { degree: f.deg(), max: MAX_FACTOR_DEGREE });
    }
    factor_internal(f)
}

pub(crate) fn factor_internal(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if f.deg() > MAX_INTERNAL_DEGREE {
        return Err(ExactError::DegreeTooLarge { degree: f.deg(), max: MAX_INTERNAL_DEGREE });
    }
    let mut out = Vec::new();
    for (i, part) in f.squarefree_decomposition().into_iter().enumerate() {
        if part.deg() == 0 {
            continue;
        }
        for g in factor_squarefree(&part) {
            out.push((g, i + 1));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    Ok(out)
}

/// Deterministic ordering: by degree, then coefficients from the top.
pub fn cmp_poly(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let o = a.coeff(i).cmp(&b.coeff(i));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn is_irreducible_over_q(f: &UniPoly) -> bool {
    match factor_internal(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

/// Primitive integer polynomial with positive leading coefficient, proportional to f.
pub fn primitive_integer(f: &UniPoly) -> ZPoly {
    let den = common_denom(f.coeffs());
    let mut v: ZPoly = f.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn to_unipoly(v: &[BigInt]) -> UniPoly {
    Poly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn reduce(v: &[BigInt], fp: &Fp) -> PolyP {
    let p = BigInt::from(fp.p);
    fp.trim(v.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
}

fn lift_zp(v: &[u64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c.iter().map(|x| x.mod_floor(m)).collect()
}

fn symmetric(v: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.monic()];
    }
    let mut zf = primitive_integer(f);
    // strip x factors first so that the constant term is nonzero
    let mut out = Vec::new();
    if zf[0].is_zero() {
        out.push(UniPoly::x());
        zf.remove(0);
        if zf.len() <= 2 {
            if zf.len() == 2 {
                out.push(to_unipoly(&zf).monic());
            }
            return out;
        }
    }
    out.extend(zassenhaus(&zf).into_iter().map(|g| to_unipoly(&g).monic()));
    out
}

/// Choose a small odd prime keeping f squarefree with the fewest modular factors.
fn choose_prime(f: &[BigInt]) -> (Fp, Vec<PolyP>) {
    let lc = f.last().unwrap();
    let mut best: Option<(Fp, Vec<PolyP>)> = None;
    let mut tried = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut p = 3u64;
    while tried < 6 {
        p += 2;
        if !is_prime_u64(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fm = reduce(f, &fp);
        if !fp.is_squarefree(&fm) {
            continue;
        }
        tried += 1;
        let degs = fp.factor_degrees(&fm);
        if best.as_ref().is_none_or(|(_, b)| degs.len() < b.len()) {
            let facs = fp.factor_squarefree(&fp.monic(&fm), &mut rng);
            best = Some((fp, facs));
            if degs.len() == 1 {
                break;
            }
        }
    }
    best.unwrap()
}

/// Lift f = lc * g * h (mod p) to mod p^k, g monic. Returns (g_k, h_k) with
/// f = g_k * h_k mod p^k.
fn hensel_pair(f: &[BigInt], g: &PolyP, h: &PolyP, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = fp.poly_xgcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(fp.p);
    let mut g = lift_zp(g);
    let mut h = lift_zp(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * &p;
        let prod = zmul(&g, &h, &next);
        let diff: ZPoly = (0..f.len())
            .map(|i| (f[i].clone() - prod.get(i).cloned().unwrap_or_default()).mod_floor(&next) / &pj)
            .collect();
        let e = reduce(&diff, fp);
        let te = fp.poly_mul(&t, &e);
        let gm = reduce(&g, fp);
        let (q, r) = fp.poly_divrem(&te, &gm);
        let hm = reduce(&h, fp);
        let upd_h = fp.poly_add(&fp.poly_mul(&s, &e), &fp.poly_mul(&q, &hm));
        let add = |a: &mut ZPoly, u: &PolyP| {
            if a.len() < u.len() {
                a.resize(u.len(), BigInt::zero());
            }
            for (i, c) in u.iter().enumerate() {
                a[i] = (&a[i] + &pj * BigInt::from(*c)).mod_floor(&next);
            }
        };
        add(&mut g, &r);
        add(&mut h, &upd_h);
        pj = next;
    }
    (g, h)
}

fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let (fp, facs) = choose_prime(f);
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    // coefficient bound for any factor times lc
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2).pow(n as u32 + 1) * BigInt::from(n as u64 + 1) * maxc * lc.abs() * lc.abs();
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    // multifactor lift by peeling one factor at a time
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest_target: ZPoly = f.to_vec();
    let mut rest_facs = facs.clone();
    while rest_facs.len() > 1 {
        let g = rest_facs.remove(0);
        let lcm = reduce(&[rest_target.last().unwrap().clone()], &fp);
        let hm = rest_facs.iter().fold(lcm, |acc, u| fp.poly_mul(&acc, u));
        let (gl, hl) = hensel_pair(&rest_target, &g, &hm, &fp, k);
        lifted.push(gl);
        rest_target = hl;
    }
    // remaining factor: make monic mod p^k
    let lc_rest = rest_target.last().unwrap().clone();
    let inv = lc_rest.modinv(&pk).expect("leading coefficient invertible mod p^k");
    lifted.push(rest_target.iter().map(|c| (c * &inv).mod_floor(&pk)).collect());

    let mut remaining: Vec<ZPoly> = lifted;
    let mut fcur: ZPoly = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        let idx: Vec<usize> = (0..remaining.len()).collect();
        for subset in combinations(&idx, s) {
            let lcur = fcur.last().unwrap().clone();
            let mut g: ZPoly = vec![lcur.clone()];
            for &i in &subset {
                g = zmul(&g, &remaining[i], &pk);
            }
            let g = symmetric(&g, &pk);
            let gq = to_unipoly(&g);
            let fq = to_unipoly(&fcur);
            if let Some(q) = fq.div_exact(&gq) {
                let gp = primitive_integer(&gq);
                out.push(gp.clone());
                fcur = primitive_integer(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if fcur.len() > 1 {
        out.push(fcur);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Product of factors^multiplicity, monic.
pub fn expand_factors(fs: &[(UniPoly, usize)]) -> UniPoly {
    fs.iter().fold(UniPoly::one(), |acc, (g, m)| acc * g.pow(*m as u32))
}
