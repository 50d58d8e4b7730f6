//! Fixed-point arithmetic: the BNS dimension formula, holomorphic Lefschetz censuses on
//! K3^[2]-type fourfolds, divisor Euler characteristics and symplectic quotients of K3 surfaces.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutInvariants {
    pub p: u64,
    /// Length of the discriminant group of S.
    pub a: u64,
    /// rank(S)/(p − 1).
    pub m: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Dimension of H*(X^G, Z/p) for G of prime order p on a K3^[2]-type manifold.
///
/// The middle term is subtracted. Checked against three independent values:
/// (3, 5, 9) → 16, (7, 3, 3) → 9, (11, 2, 2) → 5.
pub fn bns_dimension(inv: &AutInvariants) -> Result<i64> {
    let AutInvariants { p, a, m } = *inv;
    if !is_prime(p) || !(3..=19).contains(&p) || p == 5 {
        return Err(Error::Invalid(format!("p = {p} is outside 3 ≤ p ≤ 19, p ≠ 5")));
    }
    if a > (p - 1) * m || (p - 1) * m > 23 {
        return Err(Error::Invalid(format!("(a, m) = ({a}, {m}) is not admissible for p = {p}")));
    }
    let (p, a, m) = (p as i64, a as i64, m as i64);
    let twice = 2 * (324 - 2 * a * (25 - a) - (p - 2) * m * (25 - 2 * a)) + m * ((p - 2) * (p - 2) * m - p);
    if twice % 2 != 0 {
        return Err(Error::Invalid(format!("non-integral dimension {twice}/2 for (p, a, m) = ({p}, {a}, {m})")));
    }
    let d = twice / 2;
    if d < 0 {
        return Err(Error::Invalid(format!("negative dimension {d}")));
    }
    Ok(d)
}

// ---------------------------------------------------------------------------------------------
// Q(√5)

/// r + s√5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q5 {
    pub r: BigRational,
    pub s: BigRational,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Q5 {
    pub fn new(r: BigRational, s: BigRational) -> Self {
        Q5 { r, s }
    }
    pub fn int(n: i64) -> Self {
        Q5::new(q(n, 1), BigRational::zero())
    }
    pub fn frac(rn: i64, rd: i64, sn: i64, sd: i64) -> Self {
        Q5::new(q(rn, rd), q(sn, sd))
    }
    pub fn zero() -> Self {
        Q5::int(0)
    }
    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }
    pub fn inv(&self) -> Result<Self> {
        let norm = &self.r * &self.r - BigRational::from_integer(5.into()) * &self.s * &self.s;
        if norm.is_zero() {
            return Err(Error::Other("division by zero in Q(√5)".into()));
        }
        Ok(Q5::new(&self.r / &norm, -&self.s / &norm))
    }
    pub fn scale(&self, c: &BigRational) -> Self {
        Q5::new(&self.r * c, &self.s * c)
    }
}

impl Add for &Q5 {
    type Output = Q5;
    fn add(self, o: &Q5) -> Q5 {
        Q5::new(&self.r + &o.r, &self.s + &o.s)
    }
}
impl Sub for &Q5 {
    type Output = Q5;
    fn sub(self, o: &Q5) -> Q5 {
        Q5::new(&self.r - &o.r, &self.s - &o.s)
    }
}
impl Mul for &Q5 {
    type Output = Q5;
    fn mul(self, o: &Q5) -> Q5 {
        let five = BigRational::from_integer(5.into());
        Q5::new(&self.r * &o.r + five * &self.s * &o.s, &self.r * &o.s + &self.s * &o.r)
    }
}
impl Neg for &Q5 {
    type Output = Q5;
    fn neg(self) -> Q5 {
        Q5::new(-&self.r, -&self.s)
    }
}

/// 2cos(2πj/p) for p ∈ {3, 5}.
fn two_cos(p: u64, j: i64) -> Result<Q5> {
    let j = j.rem_euclid(p as i64);
    Ok(match (p, j) {
        (_, 0) => Q5::int(2),
        (3, _) => Q5::int(-1),
        (5, 1) | (5, 4) => Q5::frac(-1, 2, 1, 2),
        (5, 2) | (5, 3) => Q5::frac(-1, 2, -1, 2),
        _ => return Err(Error::Invalid(format!("p = {p} not supported"))),
    })
}

// ---------------------------------------------------------------------------------------------
// Truncated characteristic-class algebra on a fixed surface Z.
//
// N^∨ = L ⊕ L^∨ with g acting by ζ on L; x = c₁(L), δ = ζ − ζ̄ (so δ² = 2cos(4πk/p) − 2 is real).
// Classes above degree 4 vanish; x · c₂ = 0; ∫x² = ∫c₂(Z) − ∫c₂(X)|_Z.

#[derive(Clone, Debug)]
struct Jet {
    c0: Q5,
    /// Coefficient of δ·x.
    dx: Q5,
    x2: Q5,
    c2x: Q5,
    c2z: Q5,
}

impl Jet {
    fn constant(c: Q5) -> Self {
        Jet { c0: c, dx: Q5::zero(), x2: Q5::zero(), c2x: Q5::zero(), c2z: Q5::zero() }
    }

    fn mul(&self, o: &Jet, delta2: &Q5) -> Jet {
        let x2 = &(&(&self.c0 * &o.x2) + &(&self.x2 * &o.c0)) + &(&(&self.dx * &o.dx) * delta2);
        Jet {
            c0: &self.c0 * &o.c0,
            dx: &(&self.c0 * &o.dx) + &(&self.dx * &o.c0),
            x2,
            c2x: &(&self.c0 * &o.c2x) + &(&self.c2x * &o.c0),
            c2z: &(&self.c0 * &o.c2z) + &(&self.c2z * &o.c0),
        }
    }

    fn inv(&self, delta2: &Q5) -> Result<Jet> {
        let i0 = self.c0.inv()?;
        let i02 = &i0 * &i0;
        let i03 = &i02 * &i0;
        Ok(Jet {
            c0: i0.clone(),
            dx: -&(&self.dx * &i02),
            x2: &(&(&(&self.dx * &self.dx) * delta2) * &i03) - &(&self.x2 * &i02),
            c2x: -&(&self.c2x * &i02),
            c2z: -&(&self.c2z * &i02),
        })
    }

    /// ∫_Z as (coefficient of ∫c₂(X)|_Z, coefficient of ∫c₂(Z)).
    fn integrate(&self) -> (Q5, Q5) {
        (&self.c2x - &self.x2, &self.c2z + &self.x2)
    }
}

/// Sheaves whose equivariant Euler characteristics are used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sheaf {
    O,
    Omega1,
    Omega2,
}

const SHEAVES: [Sheaf; 3] = [Sheaf::O, Sheaf::Omega1, Sheaf::Omega2];

/// Contribution of an isolated point where g acts on the cotangent space by ζ^i, ζ^j, ζ^-i, ζ^-j.
fn point_contribution(p: u64, i: i64, j: i64, f: Sheaf) -> Result<Q5> {
    let (ci, cj) = (two_cos(p, i)?, two_cos(p, j)?);
    let denom = &(&Q5::int(2) - &ci) * &(&Q5::int(2) - &cj);
    let ct = match f {
        Sheaf::O => Q5::int(1),
        Sheaf::Omega1 => &ci + &cj,
        Sheaf::Omega2 => &(&Q5::int(2) + &two_cos(p, i + j)?) + &two_cos(p, i - j)?,
    };
    Ok(&ct * &denom.inv()?)
}

/// Contribution of a fixed surface of kind k: (coefficient of A, coefficient of K), where A = ∫c₂(X)|_Z
/// and K counts K3 surfaces (∫c₂(Z) = 24 for a K3 and 0 for an abelian surface).
fn surface_contribution(p: u64, k: i64, f: Sheaf) -> Result<(Q5, Q5)> {
    let c = two_cos(p, k)?;
    let delta2 = &two_cos(p, 2 * k)? - &Q5::int(2);
    let half = q(1, 2);
    // ct(λ₋₁N^∨) = |1 − ζ|² − δx − Re(ζ)x².
    let denom = Jet { c0: &Q5::int(2) - &c, dx: Q5::int(-1), x2: (-&c).scale(&half), c2x: Q5::zero(), c2z: Q5::zero() };
    let todd = Jet { c2z: Q5::frac(1, 12, 0, 1), ..Jet::constant(Q5::int(1)) };
    let ct = match f {
        Sheaf::O => Jet::constant(Q5::int(1)),
        // Ω¹_Z ⊕ N^∨.
        Sheaf::Omega1 => Jet { c0: &Q5::int(2) + &c, dx: Q5::int(1), x2: c.scale(&half), c2x: Q5::zero(), c2z: Q5::int(-1) },
        // K_Z ⊕ Ω¹_Z ⊗ N^∨ ⊕ Λ²N^∨.
        Sheaf::Omega2 => Jet { c0: &Q5::int(2) + &c.scale(&q(2, 1)), dx: Q5::int(2), x2: c.clone(), c2x: Q5::zero(), c2z: -&c },
    };
    let integrand = todd.mul(&ct, &delta2).mul(&denom.inv(&delta2)?, &delta2);
    let (ca, cz) = integrand.integrate();
    Ok((ca, cz.scale(&q(24, 1))))
}

/// Equivariant Euler characteristic of a sheaf on X, for φ with rank S_φ = (p − 1)a.
/// On H² the trace is 23 − pa; H⁴ = Sym²H².
fn global_side(p: u64, a: i64, f: Sheaf) -> BigRational {
    let t = 23 - p as i64 * a;
    match f {
        Sheaf::O => q(3, 1),
        Sheaf::Omega1 => q(-2 * (t - 2), 1),
        Sheaf::Omega2 => q(t * t + t, 2) - q(2 * (t - 2), 1),
    }
}

/// Unknowns of the census for order p: point kinds, then (K_k, A_k) per surface kind.
#[derive(Clone, Debug, Serialize)]
pub struct CensusVariables {
    pub point_kinds: Vec<(i64, i64)>,
    pub surface_kinds: Vec<i64>,
}

impl CensusVariables {
    pub fn for_prime(p: u64) -> Result<Self> {
        match p {
            3 => Ok(CensusVariables { point_kinds: vec![(1, 1)], surface_kinds: vec![1] }),
            5 => Ok(CensusVariables { point_kinds: vec![(1, 1), (2, 2), (1, 2)], surface_kinds: vec![1, 2] }),
            _ => Err(Error::Invalid(format!("census for p = {p} not supported"))),
        }
    }
    pub fn len(&self) -> usize {
        self.point_kinds.len() + 2 * self.surface_kinds.len()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn k_index(&self, s: usize) -> usize {
        self.point_kinds.len() + 2 * s
    }
    fn a_index(&self, s: usize) -> usize {
        self.point_kinds.len() + 2 * s + 1
    }
    /// Index permutation induced by replacing φ with φ²: kinds 1 and 2 swap for p = 5.
    fn square_permutation(&self, p: u64) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        if p == 5 {
            perm[0] = 1;
            perm[1] = 0;
            perm[self.k_index(0)] = self.k_index(1);
            perm[self.k_index(1)] = self.k_index(0);
            perm[self.a_index(0)] = self.a_index(1);
            perm[self.a_index(1)] = self.a_index(0);
        }
        perm
    }
}

/// One linear equation Σ coeffs·vars = rhs.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearEquation {
    pub sheaf: Sheaf,
    /// "rational" or "sqrt5" part.
    pub part: &'static str,
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

/// Holomorphic Lefschetz equations for O, Ω¹, Ω², split into rational and √5 parts.
pub fn lefschetz_system(p: u64, a: i64) -> Result<(CensusVariables, Vec<LinearEquation>)> {
    let vars = CensusVariables::for_prime(p)?;
    let mut eqs = vec![];
    for f in SHEAVES {
        let mut row: Vec<Q5> = vec![];
        for &(i, j) in &vars.point_kinds {
            row.push(point_contribution(p, i, j, f)?);
        }
        for &k in &vars.surface_kinds {
            let (ca, ck) = surface_contribution(p, k, f)?;
            row.push(ck);
            row.push(ca);
        }
        let rhs = global_side(p, a, f);
        eqs.push(LinearEquation { sheaf: f, part: "rational", coeffs: row.iter().map(|x| x.r.clone()).collect(), rhs });
        if row.iter().any(|x| !x.s.is_zero()) {
            eqs.push(LinearEquation { sheaf: f, part: "sqrt5", coeffs: row.iter().map(|x| x.s.clone()).collect(), rhs: BigRational::zero() });
        }
    }
    Ok((vars, eqs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocusProfile {
    pub p: u64,
    /// Dimension of the ω-eigenspace on H^{1,1}.
    pub a: i64,
    /// Isolated points by local kind.
    pub points: Vec<i64>,
    /// K3 surfaces by kind.
    pub k3: Vec<i64>,
    /// ∫c₂(X) over fixed surfaces, by kind.
    #[serde(serialize_with = "ser_rationals")]
    pub c2_integrals: Vec<BigRational>,
    /// Lower bound for the number of abelian surfaces.
    pub abelian_at_least: i64,
}

impl FixedLocusProfile {
    pub fn isolated_points(&self) -> i64 {
        self.points.iter().sum()
    }
    pub fn surface_free(&self) -> bool {
        self.k3.iter().all(|&k| k == 0) && self.c2_integrals.iter().all(|a| a.is_zero()) && self.abelian_at_least == 0
    }
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Order-3 census from the reduced system: K from 9a² − 135a + 486 − 18K = 0, N = 81 − 9a − 15K,
/// A = 18 − 2N/3 + 20K, filtered by −N/3 + 4K = 9a²/2 − 129a/2 + 216.
pub fn census_order3() -> Vec<FixedLocusProfile> {
    let mut out = vec![];
    for a in 0..=9i64 {
        let num = 9 * a * a - 135 * a + 486;
        if num % 18 != 0 {
            continue;
        }
        let k = num / 18;
        let n = 81 - 9 * a - 15 * k;
        if k < 0 || n < 0 {
            continue;
        }
        let aval = q(18, 1) - q(2 * n, 3) + q(20 * k, 1);
        if aval.is_negative() {
            continue;
        }
        let lhs = q(-n, 3) + q(4 * k, 1);
        let rhs = q(9 * a * a, 2) - q(129 * a, 2) + q(216, 1);
        if lhs != rhs {
            continue;
        }
        let abelian = if k == 0 && !aval.is_zero() { 1 } else { 0 };
        out.push(FixedLocusProfile { p: 3, a, points: vec![n], k3: vec![k], c2_integrals: vec![aval], abelian_at_least: abelian });
    }
    out
}

/// Solution set of A x = b over Q: a particular solution and a kernel basis.
fn solve_affine(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<BigRational>> = rows.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let pv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut part = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        part[c] = m[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); n];
            v[fc] = BigRational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][fc].clone();
            }
            v
        })
        .collect();
    Some((part, kernel))
}

/// Search window for the c₂-integrals, which are the free parameters of the order-5 system.
pub const C2_WINDOW: i64 = 20_000;

/// Order-5 census: the Lefschetz system with coefficients computed here, closed under φ ↦ φ²,
/// solved in nonnegative integers.
pub fn census_order5() -> Result<Vec<FixedLocusProfile>> {
    let mut out = vec![];
    // rank S = 4a ≤ 23.
    for a in 0..=5i64 {
        let (vars, eqs) = lefschetz_system(5, a)?;
        let perm = vars.square_permutation(5);
        let mut rows = vec![];
        let mut rhs = vec![];
        for e in &eqs {
            rows.push(e.coeffs.clone());
            rhs.push(e.rhs.clone());
            let mut sw = vec![BigRational::zero(); e.coeffs.len()];
            for (i, c) in e.coeffs.iter().enumerate() {
                sw[perm[i]] = c.clone();
            }
            rows.push(sw);
            rhs.push(e.rhs.clone());
        }
        let a_idx: Vec<usize> = (0..vars.surface_kinds.len()).map(|s| vars.a_index(s)).collect();
        // Eliminate with the c₂-integrals last so that they come out as the free parameters.
        let order: Vec<usize> = (0..vars.len()).filter(|i| !a_idx.contains(i)).chain(a_idx.iter().copied()).collect();
        let permuted: Vec<Vec<BigRational>> = rows.iter().map(|r| order.iter().map(|&i| r[i].clone()).collect()).collect();
        let Some((ppart, pkernel)) = solve_affine(&permuted, &rhs) else { continue };
        let unpermute = |v: &Vec<BigRational>| {
            let mut out = vec![BigRational::zero(); v.len()];
            for (k, &i) in order.iter().enumerate() {
                out[i] = v[k].clone();
            }
            out
        };
        let part = unpermute(&ppart);
        let kernel: Vec<Vec<BigRational>> = pkernel.iter().map(unpermute).collect();
        // The free parameters must be exactly the c₂-integrals, so every other unknown is affine in them.
        let free_ok = kernel.len() == a_idx.len() && kernel.iter().zip(&a_idx).all(|(v, &i)| v[i].is_one() && a_idx.iter().all(|&j| j == i || v[j].is_zero()));
        if !free_ok {
            return Err(Error::DerivationMismatch(format!("unexpected solution space of dimension {} at a = {a}", kernel.len())));
        }
        let value = |idx: usize, params: &[BigRational]| -> BigRational {
            let mut v = part[idx].clone();
            for (k, t) in kernel.iter().zip(params) {
                v += &k[idx] * t;
            }
            v
        };
        let nonneg: Vec<usize> = (0..vars.len()).filter(|i| !a_idx.contains(i)).collect();
        // Two parameters: for each A₁, the admissible A₂ form an interval.
        for a1 in -C2_WINDOW..=C2_WINDOW {
            let t1 = q(a1, 1);
            let (mut lo, mut hi) = (q(-C2_WINDOW, 1), q(C2_WINDOW, 1));
            let mut empty = false;
            for &i in &nonneg {
                let base = value(i, &[t1.clone(), BigRational::zero()]);
                let slope = kernel[1][i].clone();
                if slope.is_zero() {
                    if base.is_negative() {
                        empty = true;
                    }
                } else {
                    let bound = -&base / &slope;
                    if slope.is_positive() {
                        lo = lo.max(bound);
                    } else {
                        hi = hi.min(bound);
                    }
                }
            }
            if empty || lo > hi {
                continue;
            }
            let mut a2 = lo.ceil().to_integer().to_i64().unwrap();
            let top = hi.floor().to_integer().to_i64().unwrap();
            while a2 <= top {
                let params = [t1.clone(), q(a2, 1)];
                let vals: Vec<BigRational> = (0..vars.len()).map(|i| value(i, &params)).collect();
                if nonneg.iter().all(|&i| vals[i].is_integer() && !vals[i].is_negative()) {
                    let points = (0..vars.point_kinds.len()).map(|i| vals[i].to_integer().to_i64().unwrap()).collect();
                    let k3 = (0..vars.surface_kinds.len()).map(|s| vals[vars.k_index(s)].to_integer().to_i64().unwrap()).collect();
                    let c2: Vec<BigRational> = a_idx.iter().map(|&i| vals[i].clone()).collect();
                    let k3v: &Vec<i64> = &k3;
                    let abelian = if k3v.iter().all(|&k| k == 0) && c2.iter().any(|x| !x.is_zero()) { 1 } else { 0 };
                    out.push(FixedLocusProfile { p: 5, a, points, k3, c2_integrals: c2, abelian_at_least: abelian });
                }
                a2 += 1;
            }
        }
    }
    let expected = out.len() == 1 && out[0].surface_free() && out[0].isolated_points() == 14 && out[0].a == 4;
    if !expected {
        return Err(Error::DerivationMismatch(format!("order-5 census gave {out:?}")));
    }
    Ok(out)
}

/// The profile seen by φ² instead of φ.
pub fn square_profile(pr: &FixedLocusProfile) -> FixedLocusProfile {
    let mut out = pr.clone();
    if pr.p == 5 {
        out.points.swap(0, 1);
        out.k3.swap(0, 1);
        out.c2_integrals.swap(0, 1);
    }
    out
}

/// Whether a profile satisfies the order-p Lefschetz system (unknowns in census order).
pub fn satisfies_lefschetz(pr: &FixedLocusProfile) -> Result<bool> {
    let (vars, eqs) = lefschetz_system(pr.p, pr.a)?;
    let mut vals = vec![BigRational::zero(); vars.len()];
    for (i, &n) in pr.points.iter().enumerate() {
        vals[i] = q(n, 1);
    }
    for s in 0..vars.surface_kinds.len() {
        vals[vars.k_index(s)] = q(pr.k3[s], 1);
        vals[vars.a_index(s)] = pr.c2_integrals[s].clone();
    }
    Ok(eqs.iter().all(|e| e.coeffs.iter().zip(&vals).fold(BigRational::zero(), |acc, (c, v)| acc + c * v) == e.rhs))
}

// ---------------------------------------------------------------------------------------------
// Divisors

fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    r
}

/// χ(D) = binom(q/2 + n + 1, n) on a K3^[n]-type manifold, q = (D, D).
pub fn divisor_euler_characteristic(q: i64, n: u64) -> Result<BigInt> {
    if q % 2 != 0 {
        return Err(Error::Invalid(format!("odd square {q}")));
    }
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    Ok(binomial(&BigInt::from(q / 2 + n as i64 + 1), n))
}

#[derive(Clone, Debug, Serialize)]
pub struct VspPolarization {
    /// l = a·h − 3δ.
    pub a: i64,
    pub square: i64,
    pub divisibility: i64,
    /// (a, l², χ(l)) for every a tried.
    pub tried: Vec<(i64, i64, String)>,
}

/// Polarization of the variety of sums of powers: Pic = ⟨h, δ⟩ with h² = 14, δ² = −2 of divisibility 2,
/// (l, D_p) = 3 fixes the δ-coefficient at −3; keep a ≥ 2 with χ(l) ≤ 1365.
pub fn vsp_polarization() -> Result<VspPolarization> {
    let bound = BigInt::from(1365);
    let mut tried = vec![];
    let mut found = None;
    for a in 2.. {
        let sq = 14 * a * a - 2 * 9;
        let chi = divisor_euler_characteristic(sq, 2)?;
        tried.push((a, sq, chi.to_string()));
        if chi > bound {
            // χ increases with a from here on.
            break;
        }
        found = Some((a, sq));
    }
    let (a, square) = found.ok_or_else(|| Error::Other("no admissible polarization".into()))?;
    // h = e + 7f in the first U of L₂, δ the (−2) generator.
    let l2 = crate::catalog::l_n(2)?;
    let mut v = vec![BigInt::zero(); l2.rank()];
    v[0] = BigInt::from(a);
    v[1] = BigInt::from(7 * a);
    v[22] = BigInt::from(-3);
    if l2.norm(&v) != BigInt::from(square) {
        return Err(Error::Other("polarization square mismatch".into()));
    }
    let div = l2.divisibility(&v)?.to_i64().unwrap();
    Ok(VspPolarization { a, square, divisibility: div, tried })
}

// ---------------------------------------------------------------------------------------------
// Symplectic abelian groups on K3 surfaces

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupShape {
    Cyclic(u64),
    CyclicSquare(u64),
    CyclicProduct(u64, u64),
}

impl GroupShape {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().trim_start_matches("Z/").trim_start_matches("z/");
        let n: u64 = s.parse().ok()?;
        let mut f = vec![];
        let mut m = n;
        let mut d = 2;
        while m > 1 {
            while m % d == 0 {
                f.push(d);
                m /= d;
            }
            d += 1;
        }
        match f.as_slice() {
            [p] => Some(GroupShape::Cyclic(*p)),
            [p, q] if p == q => Some(GroupShape::CyclicSquare(*p)),
            [p, q] => Some(GroupShape::CyclicProduct(*p, *q)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CensusVerdict {
    Consistent,
    Contradiction(String),
    GeometricallyExcluded(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct K3Census {
    pub group: GroupShape,
    /// (stabilizer order, number of points), when the counting relation has an integral solution.
    pub counts: Vec<(u64, i64)>,
    pub verdict: CensusVerdict,
}

/// Rank of the exceptional lattice of the resolved quotient: one A_{m−1} per orbit of points.
fn exceptional_rank(group_order: u64, counts: &[(u64, i64)]) -> i64 {
    counts.iter().map(|&(m, k)| k * m as i64 / group_order as i64 * (m as i64 - 1)).sum()
}

fn orbit_check(group_order: u64, counts: &[(u64, i64)]) -> Option<String> {
    for &(m, k) in counts {
        let orbit = (group_order / m) as i64;
        if k < 0 {
            return Some(format!("negative count t_{m} = {k}"));
        }
        if k % orbit != 0 {
            let all: Vec<String> = counts.iter().map(|(m, k)| format!("t_{m} = {k}")).collect();
            return Some(format!("{}: {orbit} must divide t_{m}", all.join(", ")));
        }
    }
    None
}

/// Solves (24 − k)/|G| = 24 − Σ k_i m_i²/|G| for the fixed points of a symplectic abelian group.
pub fn k3_census(g: GroupShape) -> Result<K3Census> {
    let finish = |order: u64, counts: Vec<(u64, i64)>| {
        if let Some(why) = orbit_check(order, &counts) {
            return K3Census { group: g, counts, verdict: CensusVerdict::Contradiction(why) };
        }
        let r = exceptional_rank(order, &counts);
        let verdict = if r > 19 {
            CensusVerdict::GeometricallyExcluded(format!("the exceptional curves span a negative definite lattice of rank {r} > 19 in NS"))
        } else {
            CensusVerdict::Consistent
        };
        K3Census { group: g, counts, verdict }
    };
    match g {
        GroupShape::Cyclic(p) => {
            if !is_prime(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            if 24 % (p + 1) != 0 {
                return Ok(K3Census { group: g, counts: vec![], verdict: CensusVerdict::Contradiction(format!("k = 24/{} is not an integer", p + 1)) });
            }
            Ok(finish(p, vec![(p, (24 / (p + 1)) as i64)]))
        }
        GroupShape::CyclicSquare(p) => {
            if !is_prime(p) || 24 % (p + 1) != 0 {
                return Ok(K3Census { group: g, counts: vec![], verdict: CensusVerdict::Contradiction(format!("Z/{p} already admits no solution")) });
            }
            // 24 = 24/(p+1) + t_{p²} p².
            let k = (24 / (p + 1)) as i64;
            let rest = 24 - k;
            let p2 = (p * p) as i64;
            if rest % p2 != 0 {
                return Ok(K3Census { group: g, counts: vec![], verdict: CensusVerdict::Contradiction(format!("t_{p2} = {rest}/{p2} is not an integer")) });
            }
            let t2 = rest / p2;
            Ok(finish(p * p, vec![(p, k - t2), (p * p, t2)]))
        }
        GroupShape::CyclicProduct(p, q) => {
            if !is_prime(p) || !is_prime(q) || p == q {
                return Err(Error::Invalid("need distinct primes".into()));
            }
            if 24 % (p + 1) != 0 || 24 % (q + 1) != 0 {
                return Ok(K3Census { group: g, counts: vec![], verdict: CensusVerdict::Contradiction("a cyclic factor admits no solution".into()) });
            }
            let (kp, kq) = ((24 / (p + 1)) as i64, (24 / (q + 1)) as i64);
            let (p, q) = (p as i64, q as i64);
            // 24(pq − 1) = (kp − t)(p² − 1) + (kq − t)(q² − 1) + t(p²q² − 1).
            let lhs = 24 * (p * q - 1) - kp * (p * p - 1) - kq * (q * q - 1);
            let coef = p * p * q * q - 1 - (p * p - 1) - (q * q - 1);
            if lhs % coef != 0 {
                return Ok(K3Census { group: g, counts: vec![], verdict: CensusVerdict::Contradiction(format!("t_{} = {lhs}/{coef} is not an integer", p * q)) });
            }
            let t = lhs / coef;
            Ok(finish((p * q) as u64, vec![(p as u64, kp - t), (q as u64, kq - t), ((p * q) as u64, t)]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bns_values() {
        assert_eq!(bns_dimension(&AutInvariants { p: 3, a: 5, m: 9 }).unwrap(), 16);
        assert_eq!(bns_dimension(&AutInvariants { p: 7, a: 3, m: 3 }).unwrap(), 9);
        assert_eq!(bns_dimension(&AutInvariants { p: 11, a: 2, m: 2 }).unwrap(), 5);
        assert_eq!(bns_dimension(&AutInvariants { p: 3, a: 6, m: 6 }).unwrap(), 27);
        assert!(bns_dimension(&AutInvariants { p: 5, a: 4, m: 4 }).is_err());
        assert!(bns_dimension(&AutInvariants { p: 2, a: 8, m: 8 }).is_err());
    }

    #[test]
    fn order3_printed_system_matches_lefschetz() {
        // The generic engine reproduces N/9 − 10K/3 + A/6, −2N/9 − 70K/3 + 2A/3, N/3 − 16K + A.
        let (_, eqs) = lefschetz_system(3, 0).unwrap();
        let rows: Vec<Vec<BigRational>> = eqs.iter().map(|e| e.coeffs.clone()).collect();
        assert_eq!(rows, vec![vec![q(1, 9), q(-10, 3), q(1, 6)], vec![q(-2, 9), q(-70, 3), q(2, 3)], vec![q(1, 3), q(-16, 1), q(1, 1)]]);
        for pr in census_order3() {
            assert!(satisfies_lefschetz(&pr).unwrap(), "{pr:?}");
        }
    }

    #[test]
    fn order3_profiles() {
        let got: Vec<(i64, i64, i64, BigRational)> = census_order3().into_iter().map(|p| (p.a, p.points[0], p.k3[0], p.c2_integrals[0].clone())).collect();
        assert_eq!(got, vec![(5, 6, 2, q(54, 1)), (6, 27, 0, q(0, 1)), (9, 0, 0, q(18, 1))]);
    }

    #[test]
    fn order5_profile() {
        let pr = census_order5().unwrap();
        assert_eq!(pr.len(), 1);
        assert_eq!(pr[0].points, vec![1, 1, 12]);
        assert!(satisfies_lefschetz(&square_profile(&pr[0])).unwrap());
    }

    #[test]
    fn point_contributions_order5() {
        assert_eq!(point_contribution(5, 1, 1, Sheaf::Omega2).unwrap(), Q5::frac(4, 5, 1, 5));
        assert_eq!(point_contribution(5, 1, 2, Sheaf::O).unwrap(), Q5::frac(1, 5, 0, 1));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(divisor_euler_characteristic(6, 2).unwrap(), BigInt::from(15));
        assert_eq!(divisor_euler_characteristic(38, 2).unwrap(), BigInt::from(231));
        assert_eq!(divisor_euler_characteristic(108, 2).unwrap(), BigInt::from(1596));
        assert!(divisor_euler_characteristic(7, 2).is_err());
        let v = vsp_polarization().unwrap();
        assert_eq!((v.a, v.square, v.divisibility), (2, 38, 2));
    }

    #[test]
    fn k3_quotients() {
        for (p, k) in [(2, 8), (3, 6), (5, 4), (7, 3)] {
            let c = k3_census(GroupShape::Cyclic(p)).unwrap();
            assert_eq!(c.counts, vec![(p, k)]);
            assert_eq!(c.verdict, CensusVerdict::Consistent);
        }
        let c = k3_census(GroupShape::Cyclic(11)).unwrap();
        assert_eq!(c.counts, vec![(11, 2)]);
        assert!(matches!(c.verdict, CensusVerdict::GeometricallyExcluded(_)));
        let c = k3_census(GroupShape::CyclicSquare(3)).unwrap();
        assert_eq!(c.counts, vec![(3, 4), (9, 2)]);
        assert!(matches!(c.verdict, CensusVerdict::Contradiction(_)));
        assert!(matches!(k3_census(GroupShape::parse("Z/15").unwrap()).unwrap().verdict, CensusVerdict::GeometricallyExcluded(_)));
        assert_eq!(k3_census(GroupShape::parse("Z/6").unwrap()).unwrap().verdict, CensusVerdict::Consistent);
        assert_eq!(k3_census(GroupShape::CyclicSquare(2)).unwrap().verdict, CensusVerdict::Consistent);
    }
}
