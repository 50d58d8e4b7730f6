//! Arithmetic in Z[ζ_K] = Z[x]/Φ_K(x), elements stored as coefficient vectors of length φ(K).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; returns `(quotient, remainder)`.
fn poly_divmod_monic(a: &[BigInt], m: &[BigInt]) -> (Poly, Poly) {
    let dm = m.len() - 1;
    let mut r: Poly = a.to_vec();
    if r.len() <= dm {
        r.resize(dm.max(1), BigInt::zero());
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - dm] = c.clone();
        for (j, mj) in m.iter().enumerate() {
            r[i - dm + j] -= &c * mj;
        }
    }
    r.truncate(dm);
    (q, r)
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Poly {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut p = num;
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly_divmod_monic(&p, &cyclotomic_poly(d));
            debug_assert!(r.iter().all(|c| c.is_zero()));
            p = trim(q);
        }
    }
    p
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

#[derive(Clone, Debug)]
pub struct CycloRing {
    pub k: u64,
    pub modulus: Poly,
}

impl CycloRing {
    pub fn new(k: u64) -> Self {
        assert!(k >= 1);
        CycloRing { k, modulus: cyclotomic_poly(k) }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, p: &[BigInt]) -> Poly {
        let (_, mut r) = poly_divmod_monic(p, &self.modulus);
        r.resize(self.degree(), BigInt::zero());
        r
    }

    pub fn zero(&self) -> Poly {
        vec![BigInt::zero(); self.degree()]
    }

    pub fn from_int(&self, n: i64) -> Poly {
        let mut z = self.zero();
        z[0] = BigInt::from(n);
        z
    }

    pub fn zeta_pow(&self, e: i64) -> Poly {
        let e = e.rem_euclid(self.k as i64) as usize;
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        self.reduce(&p)
    }

    /// Σ counts[e] ζ^e.
    pub fn from_exponent_counts(&self, counts: &[BigInt]) -> Poly {
        self.reduce(counts)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Poly {
        self.reduce(&poly_mul(a, b))
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Poly {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn neg(&self, a: &[BigInt]) -> Poly {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &[BigInt], c: &BigInt) -> Poly {
        a.iter().map(|x| x * c).collect()
    }

    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Quadratic Gauss sum Σ_{a mod p} ζ_p^{a²} for an odd prime p dividing K.
    pub fn gauss_sum(&self, p: u64) -> Poly {
        assert!(self.k % p == 0);
        let step = (self.k / p) as i64;
        let mut counts = vec![BigInt::zero(); self.k as usize];
        for a in 0..p {
            let e = ((a * a) % p) as i64 * step;
            counts[e as usize] += 1;
        }
        self.reduce(&counts)
    }

    /// The positive square root of an odd prime p dividing K, or of 2 when 8 | K.
    pub fn sqrt_prime(&self, p: u64) -> Poly {
        if p == 2 {
            assert!(self.k % 8 == 0);
            let s = (self.k / 8) as i64;
            return self.add(&self.zeta_pow(s), &self.zeta_pow(-s));
        }
        let g = self.gauss_sum(p);
        if p % 4 == 1 {
            g
        } else {
            // g = i √p, so √p = -i g.
            assert!(self.k % 4 == 0);
            let minus_i = self.zeta_pow(-((self.k / 4) as i64));
            self.mul(&minus_i, &g)
        }
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Element of Q(ω_p) in the power basis 1, ω, …, ω^{p-2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicNumber {
    pub p: u64,
    pub coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(p: u64) -> Self {
        CyclotomicNumber { p, coeffs: vec![BigRational::zero(); (p - 1) as usize] }
    }

    pub fn from_rational(p: u64, c: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = c;
        z
    }

    pub fn from_ints(p: u64, cs: &[i64]) -> Self {
        let mut raw = vec![BigRational::zero(); cs.len().max(1)];
        for (i, c) in cs.iter().enumerate() {
            raw[i] = BigRational::from_integer(BigInt::from(*c));
        }
        Self::reduce_raw(p, raw)
    }

    /// ω^e.
    pub fn omega_pow(p: u64, e: i64) -> Self {
        let e = e.rem_euclid(p as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::reduce_raw(p, raw)
    }

    /// Reduces a polynomial in ω using ω^p = 1 and 1 + ω + … + ω^{p-1} = 0.
    fn reduce_raw(p: u64, raw: Vec<BigRational>) -> Self {
        let p = p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in raw.into_iter().enumerate() {
            full[i % p] += c;
        }
        let top = full[p - 1].clone();
        let coeffs = full[..p - 1].iter().map(|c| c - &top).collect();
        CyclotomicNumber { p: p as u64, coeffs }
    }

    pub fn add(&self, o: &Self) -> Self {
        CyclotomicNumber { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce_raw(self.p, raw)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CyclotomicNumber { p: self.p, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Complex conjugation ω ↦ ω^{-1}.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut raw = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            raw[(p - i) % p] += a;
        }
        Self::reduce_raw(self.p, raw)
    }

    /// Trace to Q: Σ over the Galois conjugates.
    pub fn trace(&self) -> BigRational {
        let n = BigRational::from_integer(BigInt::from(self.p - 1));
        let mut t = &self.coeffs[0] * n;
        for c in &self.coeffs[1..] {
            t -= c;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        let i = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(1), i(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), i(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), i(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(8), i(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(12).len(), 5);
        assert_eq!(euler_phi(66), 20);
    }

    #[test]
    fn square_roots() {
        let r = CycloRing::new(120);
        for p in [2u64, 3, 5] {
            let s = r.sqrt_prime(p);
            assert_eq!(r.mul(&s, &s), r.from_int(p as i64));
        }
        let r7 = CycloRing::new(56);
        let s = r7.sqrt_prime(7);
        assert_eq!(r7.mul(&s, &s), r7.from_int(7));
    }

    #[test]
    fn cyclotomic_numbers() {
        let w = CyclotomicNumber::omega_pow(5, 1);
        let w4 = CyclotomicNumber::omega_pow(5, 4);
        assert_eq!(w.conj(), w4);
        assert_eq!(w.mul(&w4), CyclotomicNumber::from_ints(5, &[1]));
        assert_eq!(w.trace(), BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(CyclotomicNumber::from_ints(5, &[3]).trace(), BigRational::from_integer(BigInt::from(12)));
    }
}
