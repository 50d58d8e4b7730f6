//! Discriminant groups, finite quadratic modules, overlattices and gluing.

use crate::cyclo::{factorize, CycloRing};
use crate::lattice::GramLattice;
use crate::linalg::{self, Mat, QMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

pub type Elem = Vec<i64>;

pub fn mod2(r: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    r - two * (r / two).floor()
}

pub fn mod1(r: Rational64) -> Rational64 {
    r - r.floor()
}

fn big_to_r64(r: &BigRational) -> Rational64 {
    Rational64::new(r.numer().to_i64().expect("small numerator"), r.denom().to_i64().expect("small denominator"))
}

/// Finite abelian group `⊕ Z/d_i` with a Q/2Z-valued quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fqm {
    pub orders: Vec<i64>,
    pub q: Vec<Rational64>,
    pub b: Vec<Vec<Rational64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FqmInvariants {
    pub order: u64,
    pub length: usize,
    pub signature_mod8: i64,
}

#[derive(Serialize, Deserialize)]
struct FqmJson {
    orders: Vec<i64>,
    q: Vec<String>,
    b: Vec<Vec<String>>,
}

impl Fqm {
    pub fn trivial() -> Self {
        Fqm { orders: vec![], q: vec![], b: vec![] }
    }

    /// Cyclic module Z/d generated by an element with q = `q`.
    pub fn cyclic(d: i64, q: Rational64) -> Self {
        Fqm { orders: vec![d], q: vec![mod2(q)], b: vec![vec![mod1(q)]] }
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        let mut best = 0;
        for (p, _) in factorize(self.order().max(1)) {
            let c = self.orders.iter().filter(|&&d| d % p as i64 == 0).count();
            best = best.max(c);
        }
        best
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.ngens()]
    }

    pub fn reduce(&self, x: &mut Elem) {
        for (xi, &d) in x.iter_mut().zip(&self.orders) {
            *xi = xi.rem_euclid(d);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Elem {
        let mut z: Elem = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&mut z);
        z
    }

    pub fn neg(&self, x: &[i64]) -> Elem {
        let mut z: Elem = x.iter().map(|a| -a).collect();
        self.reduce(&mut z);
        z
    }

    pub fn smul(&self, k: i64, x: &[i64]) -> Elem {
        let mut z: Elem = x.iter().map(|a| a * k).collect();
        self.reduce(&mut z);
        z
    }

    pub fn qv(&self, x: &[i64]) -> Rational64 {
        let n = self.ngens();
        let mut s = Rational64::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            s += self.q[i] * Rational64::from_integer(x[i] * x[i]);
            for j in i + 1..n {
                if x[j] != 0 {
                    s += self.b[i][j] * Rational64::from_integer(2 * x[i] * x[j]);
                }
            }
        }
        mod2(s)
    }

    pub fn bv(&self, x: &[i64], y: &[i64]) -> Rational64 {
        let n = self.ngens();
        let mut s = Rational64::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] != 0 {
                    s += self.b[i][j] * Rational64::from_integer(x[i] * y[j]);
                }
            }
        }
        mod1(s)
    }

    pub fn elem_order(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.orders).fold(1, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    pub fn index_of(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (a, &d) in x.iter().zip(&self.orders) {
            idx = idx * d as usize + *a as usize;
        }
        idx
    }

    pub fn elem_at(&self, mut idx: usize) -> Elem {
        let mut x = vec![0; self.ngens()];
        for i in (0..self.ngens()).rev() {
            let d = self.orders[i] as usize;
            x[i] = (idx % d) as i64;
            idx /= d;
        }
        x
    }

    pub fn elements(&self) -> Vec<Elem> {
        (0..self.order() as usize).map(|i| self.elem_at(i)).collect()
    }

    pub fn negated(&self) -> Self {
        Fqm {
            orders: self.orders.clone(),
            q: self.q.iter().map(|&x| mod2(-x)).collect(),
            b: self.b.iter().map(|r| r.iter().map(|&x| mod1(-x)).collect()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Fqm) -> Self {
        let n = self.ngens();
        let m = other.ngens();
        let mut b = vec![vec![Rational64::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.b[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                b[n + i][n + j] = other.b[i][j];
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut q = self.q.clone();
        q.extend(&other.q);
        Fqm { orders, q, b }
    }

    /// Checks the module axioms on generators.
    pub fn is_valid(&self) -> bool {
        let n = self.ngens();
        for i in 0..n {
            let d = Rational64::from_integer(self.orders[i]);
            if !mod2(self.q[i] * d * d).is_zero() {
                return false;
            }
            if !mod1(self.q[i] - self.b[i][i]).is_zero() {
                return false;
            }
            for j in 0..n {
                if self.b[i][j] != self.b[j][i] {
                    return false;
                }
                if !mod1(self.b[i][j] * Rational64::from_integer(self.orders[i])).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_nondegenerate(&self) -> bool {
        let els = self.elements();
        let gens: Vec<Elem> = (0..self.ngens()).map(|i| unit(self.ngens(), i)).collect();
        els.iter().skip(1).all(|x| gens.iter().any(|g| !self.bv(x, g).is_zero()))
    }

    fn denominator_lcm(&self) -> i64 {
        let mut m = 1i64;
        for x in &self.q {
            m = m.lcm(x.denom());
        }
        for r in &self.b {
            for x in r {
                m = m.lcm(x.denom());
            }
        }
        m
    }

    /// Signature mod 8 from Milgram's Gauss sum, evaluated in Z[ζ_K].
    pub fn signature_mod8(&self) -> Result<i64> {
        if self.ngens() == 0 {
            return Ok(0);
        }
        let m = self.denominator_lcm();
        let k = 8i64.lcm(&(2 * m)) as u64;
        let ring = CycloRing::new(k);
        let n = self.ngens();
        let qi: Vec<i64> = self.q.iter().map(|x| (*x * m).to_integer()).collect();
        let bij: Vec<Vec<i64>> = self.b.iter().map(|r| r.iter().map(|x| (*x * m).to_integer()).collect()).collect();
        let scale = k as i64 / (2 * m);
        let mut counts = vec![BigInt::zero(); k as usize];
        for idx in 0..self.order() as usize {
            let x = self.elem_at(idx);
            let mut s: i64 = 0;
            for i in 0..n {
                s += x[i] * x[i] * qi[i];
                for j in i + 1..n {
                    s += 2 * x[i] * x[j] * bij[i][j];
                }
                s = s.rem_euclid(2 * m);
            }
            counts[(s * scale).rem_euclid(k as i64) as usize] += 1;
        }
        let sum = ring.from_exponent_counts(&counts);
        let mut root = ring.from_int(1);
        for (p, e) in factorize(self.order()) {
            let half = BigInt::from(p).pow(e / 2);
            root = ring.scale(&root, &half);
            if e % 2 == 1 {
                root = ring.mul(&root, &ring.sqrt_prime(p));
            }
        }
        for s in 0..8 {
            let cand = ring.mul(&root, &ring.zeta_pow(s * (k as i64 / 8)));
            if cand == sum {
                return Ok(s);
            }
        }
        Err(Error::FormNotWellDefined)
    }

    pub fn invariants(&self) -> Result<FqmInvariants> {
        Ok(FqmInvariants { order: self.order(), length: self.length(), signature_mod8: self.signature_mod8()? })
    }

    pub fn to_json(&self) -> String {
        let j = FqmJson {
            orders: self.orders.clone(),
            q: self.q.iter().map(|x| x.to_string()).collect(),
            b: self.b.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: FqmJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let parse = |t: &str| -> Result<Rational64> { t.parse::<Rational64>().map_err(|e| Error::Invalid(format!("{t}: {e}"))) };
        let q = j.q.iter().map(|t| parse(t).map(mod2)).collect::<Result<Vec<_>>>()?;
        let b = j.b.iter().map(|r| r.iter().map(|t| parse(t).map(mod1)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let f = Fqm { orders: j.orders, q, b };
        if !f.is_valid() {
            return Err(Error::FormNotWellDefined);
        }
        Ok(f)
    }

    /// Subgroup generated by `gens`, as a sorted list of element indices.
    pub fn span(&self, gens: &[Elem]) -> Vec<usize> {
        let mut seen: HashSet<usize> = HashSet::new();
        let z = self.zero();
        seen.insert(self.index_of(&z));
        let mut queue = VecDeque::from(vec![z]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(self.index_of(&y)) {
                    queue.push_back(y);
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Orthogonal complement of a subgroup (given by generators).
    pub fn orthogonal(&self, gens: &[Elem]) -> Vec<Elem> {
        self.elements().into_iter().filter(|x| gens.iter().all(|g| self.bv(x, g).is_zero())).collect()
    }

    /// Finds an isometry `self → other` as images of the generators of `self`.
    pub fn isometry_to(&self, other: &Fqm) -> Option<Vec<Elem>> {
        if self.order() != other.order() {
            return None;
        }
        let n = self.ngens();
        if n == 0 {
            return Some(vec![]);
        }
        let els = other.elements();
        let cands: Vec<Vec<&Elem>> = (0..n)
            .map(|i| {
                let d = self.orders[i];
                els.iter().filter(|y| other.elem_order(y) == d && other.qv(y) == self.q[i]).collect()
            })
            .collect();
        let mut chosen: Vec<Elem> = vec![];
        fn rec<'a>(i: usize, a: &Fqm, b: &Fqm, cands: &[Vec<&'a Elem>], chosen: &mut Vec<Elem>) -> bool {
            if i == cands.len() {
                return true;
            }
            for y in &cands[i] {
                if (0..i).all(|j| b.bv(y, &chosen[j]) == a.b[i][j]) {
                    chosen.push((*y).clone());
                    if rec(i + 1, a, b, cands, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        if rec(0, self, other, &cands, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    pub fn is_isometric(&self, other: &Fqm) -> bool {
        self.isometry_to(other).is_some()
    }

    /// Module `H⊥/H` with the induced form, for an isotropic subgroup `H`.
    pub fn subquotient(&self, h_gens: &[Elem]) -> Fqm {
        let perp = self.orthogonal(h_gens);
        let h: HashSet<usize> = self.span(h_gens).into_iter().collect();
        // Presentation of H⊥/H via Smith form of the relation lattice.
        quotient_module(self, &perp, &h)
    }
}

fn unit(n: usize, i: usize) -> Elem {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Builds a presentation of `P/H` (P a subgroup given by all its elements, H ⊂ P) as an `Fqm`.
fn quotient_module(a: &Fqm, p: &[Elem], h: &HashSet<usize>) -> Fqm {
    // Lift to Z^n: P is generated by its elements plus d_i e_i; H likewise.
    let n = a.ngens();
    let mut prel: Mat = p.iter().map(|x| x.iter().map(|&c| BigInt::from(c)).collect()).collect();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[i] = BigInt::from(a.orders[i]);
        prel.push(r);
    }
    let pbasis = linalg::hnf_basis(&prel);
    let mut hrel: Mat = h.iter().map(|&i| a.elem_at(i).into_iter().map(BigInt::from).collect()).collect();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[i] = BigInt::from(a.orders[i]);
        hrel.push(r);
    }
    let hbasis = linalg::hnf_basis(&hrel);
    // Coordinates of H in the P basis.
    let coords = linalg::int_coords_in(&pbasis, &hbasis).expect("H inside P");
    let (d, _u, v) = linalg::snf(&coords);
    // New generators: rows of V^{-1} P.
    let vinv = linalg::from_q(&linalg::inverse(&v).unwrap()).unwrap();
    let gens = linalg::mul(&vinv, &pbasis);
    let k = gens.len();
    let mut orders = vec![];
    let mut gel = vec![];
    for i in 0..k {
        let di = if i < d.len() && i < linalg::ncols(&d) { d[i][i].clone() } else { BigInt::zero() };
        let di = di.to_i64().unwrap();
        if di > 1 {
            orders.push(di);
            let mut x: Elem = gens[i].iter().map(|c| c.to_i64().unwrap()).collect();
            a.reduce(&mut x);
            gel.push(x);
        }
    }
    let m = gel.len();
    let q = gel.iter().map(|x| a.qv(x)).collect();
    let b = (0..m).map(|i| (0..m).map(|j| a.bv(&gel[i], &gel[j])).collect()).collect();
    Fqm { orders, q, b }
}

/// Discriminant module of a lattice together with its embedding data.
#[derive(Clone, Debug)]
pub struct DiscModule {
    pub fqm: Fqm,
    /// Generators as dual vectors, rows in lattice coordinates.
    pub gens: QMat,
    /// `y ↦ y * coord_map` (mod orders) gives coordinates of a dual vector.
    pub coord_map: Mat,
    /// Column offset: coordinates correspond to columns `offset..` of `coord_map`.
    pub offset: usize,
}

impl DiscModule {
    pub fn coords(&self, y: &[BigRational]) -> Result<Elem> {
        let n = self.coord_map.len();
        let mut out = vec![];
        for (k, &d) in self.fqm.orders.iter().enumerate() {
            let col = self.offset + k;
            let mut s = BigRational::zero();
            for i in 0..n {
                s += &y[i] * BigRational::from_integer(self.coord_map[i][col].clone());
            }
            if !s.is_integer() {
                return Err(Error::Invalid("vector is not in the dual lattice".into()));
            }
            out.push(s.to_integer().mod_floor(&BigInt::from(d)).to_i64().unwrap());
        }
        Ok(out)
    }

    /// Dual vector (lattice coordinates) representing an element.
    pub fn lift(&self, x: &[i64]) -> Vec<BigRational> {
        let n = self.coord_map.len();
        let mut v = vec![BigRational::zero(); n];
        for (k, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in 0..n {
                v[i] += &self.gens[k][i] * BigRational::from_integer(BigInt::from(c));
            }
        }
        v
    }
}

pub fn discriminant_module(l: &GramLattice) -> Result<DiscModule> {
    if !l.is_even() {
        return Err(Error::NotEven);
    }
    let g = &l.gram;
    let n = l.rank();
    let (d, u, v) = linalg::snf(g);
    let coord_map = linalg::mul(g, &v);
    let mut gens = vec![];
    let mut orders = vec![];
    let mut offset = None;
    for i in 0..n {
        let di = d[i][i].clone();
        if di.is_zero() {
            return Err(Error::Degenerate);
        }
        if di > BigInt::one() {
            offset.get_or_insert(i);
            let row: Vec<BigRational> = u[i].iter().map(|x| BigRational::new(x.clone(), di.clone())).collect();
            gens.push(row);
            orders.push(di.to_i64().ok_or_else(|| Error::Other("discriminant too large".into()))?);
        }
    }
    let offset = offset.unwrap_or(n);
    let gq: QMat = gens.clone();
    let gram_q = linalg::to_q(g);
    let prod = linalg::qmul(&linalg::qmul(&gq, &gram_q), &linalg::transpose(&gq));
    let k = orders.len();
    let reduce = |r: &BigRational, m: i64| {
        let m = BigRational::from_integer(BigInt::from(m));
        big_to_r64(&(r - &m * (r / &m).floor()))
    };
    let q = (0..k).map(|i| reduce(&prod[i][i], 2)).collect();
    let b = (0..k).map(|i| (0..k).map(|j| reduce(&prod[i][j], 1)).collect()).collect();
    Ok(DiscModule { fqm: Fqm { orders, q, b }, gens, coord_map, offset })
}

/// A subgroup on which q and b vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicSubgroup {
    pub generators: Vec<Elem>,
    pub order: u64,
}

pub struct SubgroupSearch {
    pub subgroups: Vec<IsotropicSubgroup>,
    pub partial: bool,
}

/// All totally isotropic subgroups of order at most `bound`.
pub fn isotropic_subgroups(a: &Fqm, bound: u64) -> SubgroupSearch {
    isotropic_search(a, bound, 200_000)
}

fn isotropic_search(a: &Fqm, bound: u64, max_subgroups: usize) -> SubgroupSearch {
    let els = a.elements();
    let iso: Vec<&Elem> = els.iter().skip(1).filter(|x| a.qv(x).is_zero()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let start = vec![a.index_of(&a.zero())];
    seen.insert(start);
    let mut out = vec![IsotropicSubgroup { generators: vec![], order: 1 }];
    let mut queue: VecDeque<(Vec<Elem>, Vec<usize>)> = VecDeque::from(vec![(vec![], vec![0usize])]);
    let mut partial = false;
    while let Some((gens, members)) = queue.pop_front() {
        let member_set: HashSet<usize> = members.iter().copied().collect();
        for x in &iso {
            let ix = a.index_of(x);
            if member_set.contains(&ix) {
                continue;
            }
            if !gens.iter().all(|g| a.bv(x, g).is_zero()) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push((*x).clone());
            let span = a.span(&ng);
            if span.len() as u64 > bound {
                continue;
            }
            if seen.insert(span.clone()) {
                if seen.len() > max_subgroups {
                    partial = true;
                    return SubgroupSearch { subgroups: out, partial };
                }
                out.push(IsotropicSubgroup { generators: ng.clone(), order: span.len() as u64 });
                queue.push_back((ng, span));
            }
        }
    }
    SubgroupSearch { subgroups: out, partial }
}

/// An isotropic subgroup of exactly the given order, if one exists. Depth-first, so a witness
/// is usually found after few steps; the flag reports a search cut short by the node cap.
pub fn isotropic_subgroup_of_order(a: &Fqm, order: u64) -> (Option<IsotropicSubgroup>, bool) {
    if order == 1 {
        return (Some(IsotropicSubgroup { generators: vec![], order: 1 }), false);
    }
    let els = a.elements();
    let iso: Vec<Elem> = els.into_iter().skip(1).filter(|x| a.qv(x).is_zero()).collect();
    // Span ↦ smallest position of a last generator reaching it; a later arrival with a larger
    // position has fewer candidates left and can be skipped.
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut budget = 2_000_000usize;
    let all: Vec<usize> = (0..iso.len()).collect();
    let found = isotropic_dfs(a, order, &[], &[0], &iso, &all, &mut seen, &mut budget);
    (found.map(|generators| IsotropicSubgroup { generators, order }), budget == 0)
}

#[allow(clippy::too_many_arguments)]
fn isotropic_dfs(
    a: &Fqm,
    order: u64,
    gens: &[Elem],
    members: &[usize],
    iso: &[Elem],
    cands: &[usize],
    seen: &mut HashMap<Vec<usize>, usize>,
    budget: &mut usize,
) -> Option<Vec<Elem>> {
    if members.len() as u64 == order {
        return Some(gens.to_vec());
    }
    let member_set: HashSet<usize> = members.iter().copied().collect();
    for (i, &pos) in cands.iter().enumerate() {
        let x = &iso[pos];
        if member_set.contains(&a.index_of(x)) {
            continue;
        }
        let mut ng = gens.to_vec();
        ng.push(x.clone());
        let span = a.span(&ng);
        if order % span.len() as u64 != 0 || seen.get(&span).is_some_and(|&p| p <= pos) {
            continue;
        }
        seen.insert(span.clone(), pos);
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let rest: Vec<usize> = cands[i + 1..].iter().copied().filter(|&y| a.bv(x, &iso[y]).is_zero()).collect();
        if let Some(g) = isotropic_dfs(a, order, &ng, &span, iso, &rest, seen, budget) {
            return Some(g);
        }
    }
    None
}

/// Overlattice of `l` generated by the lifts of an isotropic subgroup.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: GramLattice,
    /// Basis rows in the rational coordinates of the original lattice.
    pub basis: QMat,
}

pub fn overlattice_from_vectors(l: &GramLattice, extra: &[Vec<BigRational>]) -> Result<Overlattice> {
    let n = l.rank();
    let mut rows: QMat = linalg::to_q(&linalg::identity(n));
    rows.extend(extra.iter().cloned());
    let (scaled, den) = linalg::clear_denominators(&rows);
    let basis_int = linalg::hnf_basis(&scaled);
    let basis: QMat = basis_int
        .iter()
        .map(|r| r.iter().map(|x| BigRational::new(x.clone(), den.clone())).collect())
        .collect();
    let gram = linalg::qmul(&linalg::qmul(&basis, &linalg::to_q(&l.gram)), &linalg::transpose(&basis));
    let gram = linalg::from_q(&gram).ok_or_else(|| Error::Invalid("non-integral overlattice".into()))?;
    let lat = GramLattice::new(gram)?;
    Ok(Overlattice { lattice: lat, basis })
}

pub fn overlattice(l: &GramLattice, dm: &DiscModule, h: &IsotropicSubgroup) -> Result<Overlattice> {
    for g in &h.generators {
        if !dm.fqm.qv(g).is_zero() {
            return Err(Error::Invalid("subgroup is not isotropic".into()));
        }
        for g2 in &h.generators {
            if !dm.fqm.bv(g, g2).is_zero() {
                return Err(Error::Invalid("subgroup is not isotropic".into()));
            }
        }
    }
    let lifts: Vec<Vec<BigRational>> = h.generators.iter().map(|g| dm.lift(g)).collect();
    let o = overlattice_from_vectors(l, &lifts)?;
    if !o.lattice.is_even() {
        return Err(Error::Invalid("overlattice is not even".into()));
    }
    Ok(o)
}

/// Anti-isometry between subgroups: `domain[i] ↦ image[i]`.
#[derive(Clone, Debug)]
pub struct GlueMap {
    pub domain: Vec<Elem>,
    pub image: Vec<Elem>,
}

/// Glues `l1 ⊕ l2` along the graph of an anti-isometry.
pub fn glue_pair(l1: &GramLattice, l2: &GramLattice, gamma: &GlueMap) -> Result<Overlattice> {
    let d1 = discriminant_module(l1)?;
    let d2 = discriminant_module(l2)?;
    for (x, y) in gamma.domain.iter().zip(&gamma.image) {
        if !mod2(d1.fqm.qv(x) + d2.fqm.qv(y)).is_zero() {
            return Err(Error::Invalid("glue map is not an anti-isometry".into()));
        }
    }
    let sum = l1.oplus(l2);
    let n1 = l1.rank();
    let lifts: Vec<Vec<BigRational>> = gamma
        .domain
        .iter()
        .zip(&gamma.image)
        .map(|(x, y)| {
            let mut v = d1.lift(x);
            v.extend(d2.lift(y));
            v
        })
        .collect();
    let o = overlattice_from_vectors(&sum, &lifts)?;
    if !o.lattice.is_even() {
        return Err(Error::Invalid("glued lattice is not even".into()));
    }
    let _ = n1;
    Ok(o)
}

/// Three-valued existence verdict.
#[derive(Clone, Debug)]
pub enum Verdict {
    Yes(Option<GramLattice>),
    No(String),
    Unknown(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

fn u_plane() -> GramLattice {
    GramLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
}

/// Small even lattices used as cores when looking for a lattice with prescribed form.
fn builtin_cores() -> Vec<GramLattice> {
    use crate::catalog::{a_n, d_n, e_n, rank_one, u_n};
    let mut out = vec![GramLattice { gram: vec![], name: Some("0".into()), basis_tag: None }];
    let mut base = vec![];
    for n in 1..=8 {
        base.push(a_n(n));
    }
    for n in 4..=8 {
        base.push(d_n(n));
    }
    base.push(e_n(6));
    base.push(e_n(7));
    for k in 1..=12 {
        base.push(rank_one(2 * k));
    }
    for n in 2..=7 {
        base.push(u_n(n));
    }
    let a2 = a_n(2);
    base.push(a2.scaled(3).unwrap());
    for b in &base {
        out.push(b.clone());
        out.push(b.negated());
    }
    out
}

/// Existence of an even lattice with signature `sig` and discriminant form `a`.
pub fn exists_even_lattice(sig: (usize, usize), a: &Fqm, witnesses: &[GramLattice]) -> Verdict {
    let (tp, tm) = sig;
    if tp + tm < a.length() {
        return Verdict::No(format!("rank {} < l(A) = {}", tp + tm, a.length()));
    }
    let s = match a.signature_mod8() {
        Ok(s) => s,
        Err(_) => return Verdict::No("form not well-defined".into()),
    };
    if (tp as i64 - tm as i64 - s).rem_euclid(8) != 0 {
        return Verdict::No(format!("signature mod 8: form has {s}, target {}", (tp as i64 - tm as i64).rem_euclid(8)));
    }
    let mut cores: Vec<GramLattice> = witnesses.to_vec();
    cores.extend(builtin_cores());
    for c in cores {
        let (cp, cm) = if c.rank() == 0 { (0, 0) } else { c.signature() };
        if cp > tp || cm > tm {
            continue;
        }
        let det = if c.rank() == 0 { BigInt::one() } else { c.det().abs() };
        if det != BigInt::from(a.order()) {
            continue;
        }
        let (dp, dm) = (tp - cp, tm - cm);
        // Pad with U^u ⊕ E8^x ⊕ E8(-1)^y.
        let mut pad = None;
        'outer: for x in 0..=dp / 8 {
            for y in 0..=dm / 8 {
                let (rp, rm) = (dp - 8 * x, dm - 8 * y);
                if rp == rm {
                    pad = Some((rp, x, y));
                    break 'outer;
                }
            }
        }
        let Some((uu, x, y)) = pad else { continue };
        let dmod = if c.rank() == 0 {
            Fqm::trivial()
        } else {
            match discriminant_module(&c) {
                Ok(d) => d.fqm,
                Err(_) => continue,
            }
        };
        if !dmod.is_isometric(a) {
            continue;
        }
        let mut parts: Vec<GramLattice> = vec![];
        for _ in 0..uu {
            parts.push(u_plane());
        }
        for _ in 0..x {
            parts.push(crate::catalog::e_n(8));
        }
        for _ in 0..y {
            parts.push(crate::catalog::e_n(8).negated());
        }
        if c.rank() > 0 {
            parts.push(c.clone());
        }
        let refs: Vec<&GramLattice> = parts.iter().collect();
        let w = GramLattice::direct_sum(&refs);
        return Verdict::Yes(Some(w));
    }
    Verdict::Unknown("no constructive witness found".into())
}

/// Splitting test: does `l` split off U (`e8 = false`) or E8(-1) (`e8 = true`)?
pub fn splits_off(l: &GramLattice, e8: bool) -> Result<bool> {
    let (tp, tm) = l.signature();
    let len = discriminant_module(l)?.fqm.length();
    Ok(if e8 {
        tp > 0 && tm > 7 && tp + tm > 8 + len
    } else {
        tp > 0 && tm > 0 && tp + tm > 2 + len
    })
}

/// Existence of a primitive embedding of `s` into an even unimodular lattice of signature `target`.
pub fn exists_primitive_embedding(s: &GramLattice, target: (usize, usize), witnesses: &[GramLattice]) -> Result<Verdict> {
    let (sp, sm) = s.signature();
    if sp > target.0 || sm > target.1 {
        return Ok(Verdict::No("signature too large".into()));
    }
    let a = discriminant_module(s)?.fqm.negated();
    Ok(exists_even_lattice((target.0 - sp, target.1 - sm), &a, witnesses))
}

/// Sufficient condition rank + l(A) ≤ 21 for embedding into U³ ⊕ E8(-1)².
pub fn embeds_in_k3_lattice_by_length(s: &GramLattice) -> Result<bool> {
    let l = discriminant_module(s)?.fqm.length();
    let (sp, sm) = s.signature();
    Ok(sp <= 3 && sm <= 19 && s.rank() + l <= 21)
}

/// Data describing one candidate class of primitive embeddings `S → N`.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    pub h_s: Vec<Elem>,
    pub h_n: Vec<Elem>,
    pub gamma: GlueMap,
    pub delta: Fqm,
    pub k_signature: (usize, usize),
    pub k_exists: Verdict,
}

/// Enumerates `(H_S, H_N, γ)` with `γ: q_S|H_S ≅ q_N|H_N` and the form δ on `Γ⊥/Γ`.
/// Results with isometric `(H_S, δ)` data are identified.
pub fn primitive_embeddings_small(s: &GramLattice, n: &GramLattice, witnesses: &[GramLattice]) -> Result<Vec<EmbeddingData>> {
    let ds = discriminant_module(s)?.fqm;
    let dn = discriminant_module(n)?.fqm;
    let (sp, sm) = s.signature();
    let (np, nm) = n.signature();
    if sp > np || sm > nm {
        return Ok(vec![]);
    }
    let ksig = (np - sp, nm - sm);
    let cap = ds.order().min(dn.order());
    let subs_s = all_subgroups(&ds, cap);
    let subs_n = all_subgroups(&dn, cap);
    let sum = ds.direct_sum(&dn.negated());
    let mut out: Vec<EmbeddingData> = vec![];
    for hs in &subs_s {
        let hs_mod = restrict_form(&ds, hs);
        for hn in &subs_n {
            if hn.len() != hs.len() {
                continue;
            }
            let hn_els: Vec<Elem> = hn.iter().map(|&i| dn.elem_at(i)).collect();
            for img in restricted_isometries(&ds, &hs_mod.1, &dn, &hn_els) {
                let graph: Vec<Elem> = hs_mod
                    .1
                    .iter()
                    .zip(&img)
                    .map(|(x, y)| {
                        let mut z = x.clone();
                        z.extend(y.iter().copied());
                        z
                    })
                    .collect();
                let delta = sum.subquotient(&graph);
                let k_exists = exists_even_lattice(ksig, &delta.negated(), witnesses);
                let dup = out.iter().any(|e| e.h_s.len() == hs_mod.1.len() && e.delta.is_isometric(&delta) && span_eq(&ds, &e.h_s, &hs_mod.1));
                if dup {
                    continue;
                }
                out.push(EmbeddingData {
                    h_s: hs_mod.1.clone(),
                    h_n: img.clone(),
                    gamma: GlueMap { domain: hs_mod.1.clone(), image: img },
                    delta,
                    k_signature: ksig,
                    k_exists,
                });
            }
        }
    }
    Ok(out)
}

fn span_eq(a: &Fqm, x: &[Elem], y: &[Elem]) -> bool {
    a.span(x) == a.span(y)
}

/// All subgroups of a small module, each as a generating list (canonical by element set).
fn all_subgroups(a: &Fqm, max_order: u64) -> Vec<Vec<usize>> {
    let els = a.elements();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let z = vec![0usize];
    seen.insert(z.clone());
    let mut queue = VecDeque::from(vec![(Vec::<Elem>::new(), z)]);
    let mut out = vec![];
    while let Some((gens, members)) = queue.pop_front() {
        out.push(members.clone());
        let ms: HashSet<usize> = members.iter().copied().collect();
        for x in els.iter().skip(1) {
            if ms.contains(&a.index_of(x)) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(x.clone());
            let sp = a.span(&ng);
            if sp.len() as u64 <= max_order && seen.insert(sp.clone()) {
                queue.push_back((ng, sp));
            }
        }
    }
    out
}

/// Returns (all elements, a greedy generating set) for a subgroup given by element indices.
fn restrict_form(a: &Fqm, members: &[usize]) -> (Vec<Elem>, Vec<Elem>) {
    let els: Vec<Elem> = members.iter().map(|&i| a.elem_at(i)).collect();
    // Greedy generating set.
    let mut gens: Vec<Elem> = vec![];
    let mut cur: HashSet<usize> = [a.index_of(&a.zero())].into_iter().collect();
    let mut sorted = els.clone();
    sorted.sort_by_key(|x| std::cmp::Reverse(a.elem_order(x)));
    for x in &sorted {
        if !cur.contains(&a.index_of(x)) {
            gens.push(x.clone());
            cur = a.span(&gens).into_iter().collect();
        }
    }
    (els, gens)
}

/// Images of `gens` in the subgroup `target` of `b` preserving q and b, extending to an isomorphism.
fn restricted_isometries(a: &Fqm, gens: &[Elem], b: &Fqm, target: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = vec![];
    let size = a.span(gens).len();
    let mut chosen: Vec<Elem> = vec![];
    #[allow(clippy::too_many_arguments)]
    fn rec(i: usize, a: &Fqm, gens: &[Elem], b: &Fqm, target: &[Elem], size: usize, chosen: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if i == gens.len() {
            if b.span(chosen).len() == size && relations_hold(a, gens, b, chosen) {
                out.push(chosen.clone());
            }
            return;
        }
        for y in target {
            if b.elem_order(y) != a.elem_order(&gens[i]) || b.qv(y) != a.qv(&gens[i]) {
                continue;
            }
            if !(0..i).all(|j| b.bv(y, &chosen[j]) == a.bv(&gens[i], &gens[j])) {
                continue;
            }
            chosen.push(y.clone());
            rec(i + 1, a, gens, b, target, size, chosen, out);
            chosen.pop();
        }
    }
    rec(0, a, gens, b, target, size, &mut chosen, &mut out);
    out
}

/// The map `gens[i] ↦ imgs[i]` is a well-defined homomorphism.
fn relations_hold(a: &Fqm, gens: &[Elem], b: &Fqm, imgs: &[Elem]) -> bool {
    // Check all coefficient vectors that vanish in `a` also vanish in `b` by walking the span.
    let mut seen: std::collections::HashMap<usize, Elem> = std::collections::HashMap::new();
    seen.insert(a.index_of(&a.zero()), b.zero());
    let mut queue = VecDeque::from(vec![(a.zero(), b.zero())]);
    while let Some((x, y)) = queue.pop_front() {
        for (g, h) in gens.iter().zip(imgs) {
            let nx = a.add(&x, g);
            let ny = b.add(&y, h);
            match seen.get(&a.index_of(&nx)) {
                Some(prev) => {
                    if *prev != ny {
                        return false;
                    }
                }
                None => {
                    seen.insert(a.index_of(&nx), ny.clone());
                    queue.push_back((nx, ny));
                }
            }
        }
    }
    true
}

pub fn rational_vec(xs: &[(i64, i64)]) -> Vec<BigRational> {
    xs.iter().map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect()
}

pub fn is_zero_r(x: &BigRational) -> bool {
    x.is_zero()
}

pub fn abs_det(l: &GramLattice) -> BigInt {
    l.det().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn l2_and_u2_forms() {
        let a = discriminant_module(&catalog::l_n(2).unwrap()).unwrap().fqm;
        assert_eq!(a.orders, vec![2]);
        assert_eq!(a.q[0], Rational64::new(3, 2));
        let s = isotropic_subgroups(&a, 2);
        assert_eq!(s.subgroups.len(), 1);
        let u2 = discriminant_module(&catalog::u_n(2)).unwrap();
        let s = isotropic_subgroups(&u2.fqm, 2);
        assert!(s.subgroups.iter().any(|h| h.order == 2));
    }

    #[test]
    fn d8_glues_to_e8() {
        let d8 = catalog::d_n(8);
        let dm = discriminant_module(&d8).unwrap();
        let h = isotropic_subgroups(&dm.fqm, 2).subgroups.into_iter().find(|h| h.order == 2).unwrap();
        let o = overlattice(&d8, &dm, &h).unwrap();
        assert_eq!(abs_det(&o.lattice), BigInt::one());
    }

    #[test]
    fn milgram_small_cases() {
        let q = Fqm::cyclic(2, Rational64::new(1, 2));
        assert_eq!(q.signature_mod8().unwrap(), 1);
        let inv = Fqm::trivial().invariants().unwrap();
        assert_eq!((inv.order, inv.length, inv.signature_mod8), (1, 0, 0));
        let m2 = discriminant_module(&catalog::m2()).unwrap().fqm;
        assert_eq!((m2.order(), m2.length()), (512, 9));
    }

    fn q_histogram(a: &Fqm) -> Vec<(Rational64, usize)> {
        let mut h: HashMap<Rational64, usize> = HashMap::new();
        for x in a.elements() {
            *h.entry(a.qv(&x)).or_default() += 1;
        }
        let mut h: Vec<_> = h.into_iter().collect();
        h.sort();
        h
    }

    // Two (-2)-vectors of divisibility 2 in M2 with non-isometric complements.
    #[test]
    fn m2_has_two_divisibility_two_classes() {
        let m2 = catalog::m2();
        let unit = |i: usize| (0..15).map(|j| BigInt::from((i == j) as i64)).collect::<Vec<_>>();
        let t = unit(14);
        let a = crate::enumerate::vectors_of_norm(&catalog::e_n(8), 4).unwrap()[0].clone();
        let mut e = t.clone();
        for i in 0..8 {
            e[i] = BigInt::from(a[i]);
        }
        e[8] = BigInt::from(2);
        e[9] = BigInt::from(2);
        let mut forms = vec![];
        for w in [&t, &e] {
            assert_eq!(m2.norm(w), BigInt::from(-2));
            assert_eq!(m2.divisibility(w).unwrap(), BigInt::from(2));
            let k = m2.orthogonal_complement(&vec![w.clone()]);
            let k = m2.sublattice(&k.rows).unwrap();
            forms.push(discriminant_module(&k).unwrap().fqm);
        }
        assert_eq!(forms[0].order(), forms[1].order());
        assert_ne!(q_histogram(&forms[0]), q_histogram(&forms[1]));
    }
}
