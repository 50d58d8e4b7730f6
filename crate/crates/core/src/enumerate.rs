//! Definite lattices: short vectors, representation of integers, isometry testing and
//! unimodular overlattices.

use crate::disc::{discriminant_module, isotropic_subgroup_of_order, overlattice, Overlattice};
use crate::lattice::GramLattice;
use crate::linalg::{self, Mat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Exact scalars for the Cholesky data. Operations return `None` on overflow.
trait Exact: Clone + Send + Sync + PartialOrd {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn from_int(x: i64) -> Self;
    fn zero() -> Self;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn floor_i64(&self) -> Option<i64>;
}

type Small = Ratio<i128>;

impl Exact for Small {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128().map(Ratio::from_integer)
    }
    fn from_int(x: i64) -> Self {
        Ratio::from_integer(x as i128)
    }
    fn zero() -> Self {
        Ratio::from_integer(0)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn floor_i64(&self) -> Option<i64> {
        self.numer().div_floor(self.denom()).to_i64()
    }
}

impl Exact for BigRational {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(BigRational::from_integer(x.clone()))
    }
    fn from_int(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }
}

/// Cholesky data `Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²` of a positive definite Gram.
struct Chol<F> {
    q: Vec<Vec<F>>,
}

impl<F: Exact> Chol<F> {
    fn new(g: &Mat) -> Option<Self> {
        let n = g.len();
        let mut q: Vec<Vec<F>> = Vec::with_capacity(n);
        for r in g {
            q.push(r.iter().map(F::from_big).collect::<Option<Vec<F>>>()?);
        }
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = q[i][j].div(&q[i][i])?;
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = q[k][i].mul(&q[i][l])?;
                    q[k][l] = q[k][l].sub(&t)?;
                }
            }
        }
        Some(Chol { q })
    }
}

struct Overflow;

/// Depth-first enumeration below level `top` with fixed coordinates above it.
/// Visits every x ≠ 0 with Q(x) ≤ bound, one of each ± pair when `half` is set.
#[allow(clippy::too_many_arguments)]
fn descend<F: Exact>(
    ch: &Chol<F>,
    level: usize,
    x: &mut Vec<i64>,
    rem: F,
    bound: &F,
    zero_above: bool,
    half: bool,
    out: &mut dyn FnMut(&[i64], i64),
) -> std::result::Result<(), Overflow> {
    let n = x.len();
    let q = &ch.q;
    let mut c = F::zero();
    for j in level + 1..n {
        if x[j] != 0 {
            let t = q[level][j].mul(&F::from_int(x[j])).ok_or(Overflow)?;
            c = c.sub(&t).ok_or(Overflow)?;
        }
    }
    let qii = &q[level][level];
    let visit = |xi: i64, x: &mut Vec<i64>, out: &mut dyn FnMut(&[i64], i64)| -> std::result::Result<bool, Overflow> {
        let d = F::from_int(xi).sub(&c).ok_or(Overflow)?;
        let t = qii.mul(&d.mul(&d).ok_or(Overflow)?).ok_or(Overflow)?;
        if t > rem {
            return Ok(false);
        }
        let r = rem.sub(&t).ok_or(Overflow)?;
        x[level] = xi;
        let za = zero_above && xi == 0;
        if level == 0 {
            if !za {
                let norm = bound.sub(&r).ok_or(Overflow)?.floor_i64().ok_or(Overflow)?;
                out(x, norm);
            }
        } else {
            descend(ch, level - 1, x, r, bound, za, half, out)?;
        }
        x[level] = 0;
        Ok(true)
    };
    let start = c.floor_i64().ok_or(Overflow)?;
    let lo_limit = if half && zero_above { 0 } else { i64::MIN };
    let mut xi = start;
    while xi >= lo_limit {
        if !visit(xi, x, out)? {
            break;
        }
        xi -= 1;
    }
    let mut xi = start + 1;
    loop {
        if !visit(xi, x, out)? {
            break;
        }
        xi += 1;
    }
    Ok(())
}

/// Values the top coordinate can take.
fn top_values<F: Exact>(ch: &Chol<F>, bound: &F, half: bool) -> std::result::Result<Vec<i64>, Overflow> {
    let n = ch.q.len();
    let qnn = &ch.q[n - 1][n - 1];
    let mut vals = vec![];
    let lo = if half { 0 } else { i64::MIN };
    let mut xi = 0i64;
    loop {
        let t = qnn.mul(&F::from_int(xi * xi)).ok_or(Overflow)?;
        if &t > bound {
            break;
        }
        vals.push(xi);
        if xi != 0 && -xi >= lo {
            vals.push(-xi);
        }
        xi += 1;
    }
    vals.sort_unstable();
    Ok(vals)
}

/// Vectors with Q(x) ≤ bound (x ≠ 0), coordinates in the basis of `g`, with their norms.
fn enumerate_with<F: Exact>(g: &Mat, bound: i64, half: bool, keep: &(dyn Fn(&[i64], i64) -> bool + Sync)) -> Option<Vec<(Vec<i64>, i64)>> {
    let n = g.len();
    let ch: Chol<F> = Chol::new(g)?;
    let b = F::from_int(bound);
    let tops = top_values(&ch, &b, half).ok()?;
    let parts: Vec<Option<Vec<(Vec<i64>, i64)>>> = tops
        .par_iter()
        .map(|&t| {
            let mut x = vec![0i64; n];
            x[n - 1] = t;
            let qnn = &ch.q[n - 1][n - 1];
            let used = qnn.mul(&F::from_int(t * t))?;
            let rem = b.sub(&used)?;
            let mut found = vec![];
            let mut sink = |v: &[i64], norm: i64| {
                if keep(v, norm) {
                    found.push((v.to_vec(), norm));
                }
            };
            if n == 1 {
                if t != 0 {
                    let norm = b.sub(&rem)?.floor_i64()?;
                    sink(&x, norm);
                }
            } else {
                descend(&ch, n - 2, &mut x, rem, &b, t == 0, half, &mut sink).ok()?;
            }
            Some(found)
        })
        .collect();
    let mut out = vec![];
    for p in parts {
        out.extend(p?);
    }
    Some(out)
}

/// Orientation of a definite lattice: +1 positive, -1 negative.
pub fn definite_sign(l: &GramLattice) -> Result<i64> {
    if l.rank() == 0 {
        return Ok(1);
    }
    let (p, n) = l.signature();
    if n == 0 {
        Ok(1)
    } else if p == 0 {
        Ok(-1)
    } else {
        Err(Error::Indefinite)
    }
}

/// LLL-reduced positive data for a definite lattice.
struct Reduced {
    sign: i64,
    /// Rows: reduced basis in original coordinates.
    t: Vec<Vec<i64>>,
    gram: Mat,
}

fn reduce(l: &GramLattice) -> Result<Reduced> {
    let sign = definite_sign(l)?;
    let pos = if sign < 0 { linalg::scale(&l.gram, &BigInt::from(-1)) } else { l.gram.clone() };
    let (t, g) = linalg::lll_gram(&pos);
    let t = linalg::to_i64(&t).ok_or_else(|| Error::Other("reduction matrix too large".into()))?;
    Ok(Reduced { sign, t, gram: g })
}

fn to_original(t: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let n = t[0].len();
    let mut out = vec![0i64; n];
    for (i, &xi) in x.iter().enumerate() {
        if xi != 0 {
            for j in 0..n {
                out[j] += xi * t[i][j];
            }
        }
    }
    out
}

/// Vectors of a definite lattice with 0 < |norm| ≤ bound, one per ± pair, in original
/// coordinates, filtered by `keep` (called with original coordinates and signed norm).
pub fn short_vectors_filtered(l: &GramLattice, bound: i64, keep: &(dyn Fn(&[i64], i64) -> bool + Sync)) -> Result<Vec<(Vec<i64>, i64)>> {
    if bound < 0 {
        return Err(Error::Invalid("negative bound".into()));
    }
    if l.rank() == 0 {
        return Ok(vec![]);
    }
    let r = reduce(l)?;
    let sign = r.sign;
    let t = r.t.clone();
    let wrapped = move |x: &[i64], norm: i64| keep(&to_original(&t, x), sign * norm);
    let found = match enumerate_with::<Small>(&r.gram, bound, true, &wrapped) {
        Some(v) => v,
        None => enumerate_with::<BigRational>(&r.gram, bound, true, &wrapped).ok_or_else(|| Error::Other("enumeration overflow".into()))?,
    };
    Ok(found.into_iter().map(|(x, n)| (to_original(&r.t, &x), sign * n)).collect())
}

/// Norm census of a definite lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorCensus {
    pub bound: i64,
    /// Signed norm ↦ number of vectors (both signs counted).
    pub counts: BTreeMap<i64, u64>,
    /// One representative per ± pair.
    pub representatives: Vec<(Vec<i64>, i64)>,
}

pub fn short_vectors(l: &GramLattice, bound: i64) -> Result<VectorCensus> {
    let reps = short_vectors_filtered(l, bound, &|_, _| true)?;
    let mut counts = BTreeMap::new();
    for (_, n) in &reps {
        *counts.entry(*n).or_insert(0) += 2;
    }
    Ok(VectorCensus { bound, counts, representatives: reps })
}

/// Half of the vectors of exact norm `norm` (one of each ± pair).
pub fn vectors_of_norm(l: &GramLattice, norm: i64) -> Result<Vec<Vec<i64>>> {
    let v = short_vectors_filtered(l, norm.abs(), &move |_, n| n == norm)?;
    Ok(v.into_iter().map(|(x, _)| x).collect())
}

pub fn root_count(l: &GramLattice) -> Result<u64> {
    let s = definite_sign(l)?;
    Ok(2 * vectors_of_norm(l, 2 * s)?.len() as u64)
}

pub fn is_rootless(l: &GramLattice) -> Result<bool> {
    Ok(root_count(l)? == 0)
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| a.gcd(&b))
}

fn divisibility_i64(g: &[Vec<i64>], v: &[i64]) -> i64 {
    let n = v.len();
    let mut d = 0i64;
    for j in 0..n {
        let mut s = 0i64;
        for i in 0..n {
            s += v[i] * g[i][j];
        }
        d = d.gcd(&s);
    }
    d
}

/// A vector of norm `n`, optionally primitive and of prescribed divisibility.
pub fn represents(l: &GramLattice, n: i64, primitive: bool, div: Option<i64>) -> Result<Option<Vec<i64>>> {
    let sign = definite_sign(l)?;
    if n == 0 || n.signum() != sign {
        return Ok(None);
    }
    let g = l.gram_i64().ok_or_else(|| Error::Other("Gram entries too large".into()))?;
    let keep = move |x: &[i64], norm: i64| {
        norm == n && (!primitive || gcd_vec(x) == 1) && div.map_or(true, |d| divisibility_i64(&g, x) == d)
    };
    let found = short_vectors_filtered(l, n.abs(), &keep)?;
    Ok(found.into_iter().map(|(x, _)| x).next())
}

/// Outcome of an isometry test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// `m` with `m · G₂ · mᵀ = G₁` (rows of `m` are images of the basis of L₁).
    Isometric(Mat),
    /// Budget exhausted; determinant, parity, discriminant form and vector census agree.
    StrongInvariantMatch(String),
    NotIsometric(String),
    Timeout,
}

impl IsoVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Isometric(_) => "isometric",
            IsoVerdict::StrongInvariantMatch(_) => "strong-invariant match",
            IsoVerdict::NotIsometric(_) => "not isometric",
            IsoVerdict::Timeout => "timeout",
        }
    }
}

/// Default node budget, overridden by `HYPERLAT_BUDGET`.
pub fn default_budget() -> u64 {
    std::env::var("HYPERLAT_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(20_000_000)
}

/// Searches an isometry between two definite lattices.
pub fn isometric(l1: &GramLattice, l2: &GramLattice, budget: u64) -> Result<IsoVerdict> {
    if l1.rank() != l2.rank() {
        return Ok(IsoVerdict::NotIsometric("ranks differ".into()));
    }
    if l1.det() != l2.det() {
        return Ok(IsoVerdict::NotIsometric("determinants differ".into()));
    }
    if l1.is_even() != l2.is_even() {
        return Ok(IsoVerdict::NotIsometric("parity differs".into()));
    }
    let s1 = definite_sign(l1)?;
    let s2 = definite_sign(l2)?;
    if s1 != s2 {
        return Ok(IsoVerdict::NotIsometric("signatures differ".into()));
    }
    let n = l1.rank();
    if n == 0 {
        return Ok(IsoVerdict::Isometric(vec![]));
    }
    let r1 = reduce(l1)?;
    let target = linalg::to_i64(&r1.gram).ok_or_else(|| Error::Other("Gram entries too large".into()))?;
    let maxd = (0..n).map(|i| target[i][i]).max().unwrap();
    let g2 = l2.gram_i64().ok_or_else(|| Error::Other("Gram entries too large".into()))?;
    let g2pos: Vec<Vec<i64>> = g2.iter().map(|r| r.iter().map(|x| x * s2).collect()).collect();
    // Candidate images grouped by norm.
    let reps = short_vectors_filtered(l2, maxd, &|_, _| true)?;
    let mut by_norm: HashMap<i64, Vec<(Vec<i64>, Vec<i64>)>> = HashMap::new();
    for (v, nm) in reps {
        for sgn in [1i64, -1] {
            let w: Vec<i64> = v.iter().map(|x| x * sgn).collect();
            let wg: Vec<i64> = (0..n).map(|j| (0..n).map(|i| w[i] * g2pos[i][j]).sum()).collect();
            by_norm.entry(nm * s2).or_default().push((w, wg));
        }
    }
    for i in 0..n {
        if !by_norm.contains_key(&target[i][i]) {
            return Ok(IsoVerdict::NotIsometric(format!("no vector of norm {}", target[i][i] * s1)));
        }
    }
    let empty = vec![];
    let cands: Vec<&Vec<(Vec<i64>, Vec<i64>)>> = (0..n).map(|i| by_norm.get(&target[i][i]).unwrap_or(&empty)).collect();
    let mut chosen: Vec<usize> = vec![];
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        cands: &[&Vec<(Vec<i64>, Vec<i64>)>],
        target: &[Vec<i64>],
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if i == cands.len() {
            return Some(true);
        }
        for (k, (_, wg)) in cands[i].iter().enumerate() {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            let ok = (0..i).all(|j| {
                let y = &cands[j][chosen[j]].0;
                wg.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() == target[i][j]
            });
            if ok {
                chosen.push(k);
                match rec(i + 1, cands, target, chosen, nodes, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                chosen.pop();
            }
        }
        Some(false)
    }
    match rec(0, &cands, &target, &mut chosen, &mut nodes, budget) {
        Some(true) => {
            let y: Mat = (0..n).map(|i| cands[i][chosen[i]].0.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let t1: Mat = linalg::from_i64(&r1.t);
            let t1inv = linalg::from_q(&linalg::inverse(&t1).expect("unimodular")).expect("unimodular");
            let m = linalg::mul(&t1inv, &y);
            if linalg::congruent(&m, &l2.gram) != l1.gram {
                return Err(Error::Other("isometry verification failed".into()));
            }
            Ok(IsoVerdict::Isometric(m))
        }
        Some(false) => Ok(IsoVerdict::NotIsometric("exhaustive search found no isometry".into())),
        None => strong_invariants(l1, l2, maxd),
    }
}

fn strong_invariants(l1: &GramLattice, l2: &GramLattice, bound: i64) -> Result<IsoVerdict> {
    let c1 = short_vectors(l1, bound)?.counts;
    let c2 = short_vectors(l2, bound)?.counts;
    if c1 != c2 {
        return Ok(IsoVerdict::NotIsometric(format!("vector census up to {bound} differs")));
    }
    if l1.is_even() {
        let d1 = discriminant_module(l1)?.fqm;
        let d2 = discriminant_module(l2)?.fqm;
        if !d1.is_isometric(&d2) {
            return Ok(IsoVerdict::NotIsometric("discriminant forms differ".into()));
        }
    }
    if l1.rank() >= 18 {
        Ok(IsoVerdict::StrongInvariantMatch(format!("det, parity, discriminant form and census up to {bound} agree")))
    } else {
        Ok(IsoVerdict::Timeout)
    }
}

/// Result of a unimodular-overlattice search.
#[derive(Clone, Debug)]
pub struct OverlatticeSearch {
    pub witness: Option<Overlattice>,
    /// False when the subgroup search hit its cap before finishing.
    pub exhaustive: bool,
}

/// Even unimodular overlattice of an even lattice, if one exists.
pub fn unimodular_overlattice(l: &GramLattice) -> Result<OverlatticeSearch> {
    if !l.is_even() {
        return Err(Error::NotEven);
    }
    let d = l.det().abs();
    let s = d.sqrt();
    if &s * &s != d {
        return Ok(OverlatticeSearch { witness: None, exhaustive: true });
    }
    let dm = discriminant_module(l)?;
    let s = s.to_u64().ok_or_else(|| Error::Other("discriminant too large".into()))?;
    let (h, partial) = isotropic_subgroup_of_order(&dm.fqm, s);
    match h {
        Some(h) => {
            let o = overlattice(l, &dm, &h)?;
            if !o.lattice.det().abs().is_one() {
                return Err(Error::Other("overlattice is not unimodular".into()));
            }
            Ok(OverlatticeSearch { witness: Some(o), exhaustive: true })
        }
        None => Ok(OverlatticeSearch { witness: None, exhaustive: !partial }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a_n, d_n, e_n};

    #[test]
    fn e8_roots() {
        let c = short_vectors(&e_n(8), 4).unwrap();
        assert_eq!(c.counts.get(&2), Some(&240));
        assert_eq!(c.counts.get(&4), Some(&2160));
        assert_eq!(root_count(&e_n(8).negated()).unwrap(), 240);
    }

    #[test]
    fn brute_force_agreement() {
        let l = a_n(3);
        let c = short_vectors(&l, 6).unwrap();
        let g = l.gram_i64().unwrap();
        let mut brute: BTreeMap<i64, u64> = BTreeMap::new();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                for cc in -4..=4i64 {
                    let x = [a, b, cc];
                    let n: i64 = (0..3).map(|i| (0..3).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
                    if n > 0 && n <= 6 {
                        *brute.entry(n).or_insert(0) += 1;
                    }
                }
            }
        }
        assert_eq!(c.counts, brute);
    }

    #[test]
    fn indefinite_rejected() {
        assert_eq!(short_vectors(&crate::catalog::u(), 2), Err(Error::Indefinite));
    }

    #[test]
    fn permuted_sum_is_isometric() {
        let a = crate::catalog::rank_one(2).oplus(&crate::catalog::rank_one(4));
        let b = crate::catalog::rank_one(4).oplus(&crate::catalog::rank_one(2));
        assert!(matches!(isometric(&a, &b, 1000).unwrap(), IsoVerdict::Isometric(_)));
        let c = crate::catalog::rank_one(8).oplus(&crate::catalog::rank_one(1));
        assert!(matches!(isometric(&a, &c, 1000).unwrap(), IsoVerdict::NotIsometric(_)));
    }

    #[test]
    fn d8_overlattice_is_e8() {
        let s = unimodular_overlattice(&d_n(8)).unwrap();
        let w = s.witness.unwrap();
        assert!(w.lattice.det().abs().is_one());
        assert_eq!(root_count(&w.lattice).unwrap(), 240);
        assert!(matches!(isometric(&w.lattice, &e_n(8), 100_000).unwrap(), IsoVerdict::Isometric(_)));
    }

    #[test]
    fn representation_filters() {
        let l = a_n(2);
        assert!(represents(&l, 2, true, None).unwrap().is_some());
        assert!(represents(&l, 4, false, None).unwrap().is_none());
        assert!(represents(&l, 8, true, None).unwrap().is_none());
        assert!(represents(&l, 8, false, None).unwrap().is_some());
        assert!(represents(&l, -2, false, None).unwrap().is_none());
    }
}
