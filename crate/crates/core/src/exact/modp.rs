//! Polynomials over a prime field F_p, p < 2^32. Used for the modular steps of
//! Zassenhaus factorization and for cycle-type sampling.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer residue.
    pub fn from_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    pub fn trim(&self, mut a: PolyP) -> PolyP {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = self.add(c[i + j], self.mul(x, y));
            }
        }
        self.trim(c)
    }

    pub fn poly_divrem(&self, a: &[u64], d: &[u64]) -> (PolyP, PolyP) {
        assert!(!d.is_empty(), "division by zero polynomial mod p");
        let dd = d.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= dd {
            return (Vec::new(), self.trim(r));
        }
        let inv = self.inv(d[dd]);
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + dd], inv);
            if c == 0 {
                continue;
            }
            for (j, &y) in d.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(c, y));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (self.trim(q), self.trim(r))
    }

    pub fn poly_rem(&self, a: &[u64], d: &[u64]) -> PolyP {
        self.poly_divrem(a, d).1
    }

    pub fn monic(&self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&x| self.mul(x, inv)).collect()
            }
        }
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut a, mut b) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Bezout coefficients (s, t) with s*a + t*b = 1 for coprime a, b.
    pub fn poly_xgcd(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("xgcd of zeros"));
        let sc = |v: &[u64]| self.trim(v.iter().map(|&x| self.mul(x, inv)).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(&self, a: &[u64]) -> PolyP {
        let v = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        self.trim(v)
    }

    pub fn powmod(&self, base: &[u64], mut e: u128, m: &[u64]) -> PolyP {
        let mut r = vec![1u64];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.poly_gcd(a, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn ddf(&self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, self.p as u128, &f);
            let g = self.poly_gcd(&f, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                f = self.poly_divrem(&f, &g).0;
                h = self.poly_rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_degrees(&self, f: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            for _ in 0..(g.len() - 1) / d {
                out.push(d);
            }
        }
        out.sort_unstable();
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus, odd p).
    fn edf(&self, f: PolyP, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PolyP>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f);
            return;
        }
        loop {
            let a: PolyP = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1)/2)
            let mut c = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                c = self.powmod(&c, self.p as u128, &f);
                acc = self.poly_rem(&self.poly_mul(&acc, &c), &f);
            }
            let b = self.poly_sub(&self.powmod(&acc, (self.p as u128 - 1) / 2, &f), &[1]);
            let g = self.poly_gcd(&f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(&f, &g).0;
                self.edf(g, d, rng, out);
                self.edf(self.monic(&h), d, rng, out);
                return;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<PolyP> {
        assert!(self.p % 2 == 1);
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            self.edf(g, d, rng, &mut out);
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_mod_7() {
        let fp = Fp::new(7);
        // x^4 - 1 = (x-1)(x+1)(x^2+1) over F_7
        let f = vec![6, 0, 0, 0, 1];
        assert_eq!(fp.factor_degrees(&f), vec![1, 1, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1u64], |acc, g| fp.poly_mul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn xgcd_mod_p() {
        let fp = Fp::new(11);
        let a = vec![1, 0, 1];
        let b = vec![3, 1];
        let (g, s, t) = fp.poly_xgcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = fp.poly_add(&fp.poly_mul(&s, &a), &fp.poly_mul(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
