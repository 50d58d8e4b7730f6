//! The 24 Niemeier lattices from root systems and glue codes, holy constructions, and the
//! Leech lattice by three routes.

use crate::catalog::{cartan_a, cartan_d, cartan_e, fundamental_weight};
use crate::disc::{overlattice_from_vectors, Overlattice};
use crate::enumerate;
use crate::lattice::GramLattice;
use crate::linalg::{self, Mat, QMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A(usize),
    D(usize),
    E(usize),
}

impl RootType {
    pub fn rank(&self) -> usize {
        match *self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        match *self {
            RootType::A(n) => cartan_a(n),
            RootType::D(n) => cartan_d(n),
            RootType::E(n) => cartan_e(n),
        }
    }

    pub fn root_count(&self) -> u64 {
        match *self {
            RootType::A(n) => (n * (n + 1)) as u64,
            RootType::D(n) => (2 * n * (n - 1)) as u64,
            RootType::E(6) => 72,
            RootType::E(7) => 126,
            RootType::E(_) => 240,
        }
    }

    pub fn coxeter_number(&self) -> u64 {
        match *self {
            RootType::A(n) => n as u64 + 1,
            RootType::D(n) => 2 * n as u64 - 2,
            RootType::E(6) => 12,
            RootType::E(7) => 18,
            RootType::E(_) => 30,
        }
    }

    /// Order of the discriminant group.
    pub fn label_count(&self) -> usize {
        match *self {
            RootType::A(n) => n + 1,
            RootType::D(_) => 4,
            RootType::E(6) => 3,
            RootType::E(7) => 2,
            RootType::E(_) => 1,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            RootType::A(n) => format!("A{n}"),
            RootType::D(n) => format!("D{n}"),
            RootType::E(n) => format!("E{n}"),
        }
    }

    /// Fundamental weight (1-based) representing a nonzero glue label.
    fn weight_for(&self, label: usize) -> Option<usize> {
        match *self {
            RootType::A(n) => (label <= n).then_some(label),
            RootType::D(n) => match label {
                1 => Some(n),
                2 => Some(1),
                3 => Some(n - 1),
                _ => None,
            },
            RootType::E(6) => match label {
                1 => Some(1),
                2 => Some(6),
                _ => None,
            },
            RootType::E(7) => (label == 1).then_some(7),
            RootType::E(_) => None,
        }
    }
}

/// Minimal coset representative of a glue label, in root-basis coordinates.
pub fn glue_vector(t: RootType, label: usize) -> Result<Vec<BigRational>> {
    if label >= t.label_count() {
        return Err(Error::BadGlue(format!("label {label} invalid for {}", t.name())));
    }
    if label == 0 {
        return Ok(vec![BigRational::zero(); t.rank()]);
    }
    let k = t.weight_for(label).expect("label checked");
    Ok(fundamental_weight(&t.cartan(), k))
}

/// The class `[label]` of A_n in the coordinates of Z^{n+1}.
pub fn glue_vector_a_euclidean(n: usize, label: usize) -> Vec<BigRational> {
    let h = BigInt::from(n as i64 + 1);
    let i = label as i64;
    let j = n as i64 + 1 - i;
    (0..=n)
        .map(|k| if (k as i64) < i { BigRational::new(BigInt::from(j), h.clone()) } else { BigRational::new(BigInt::from(-i), h.clone()) })
        .collect()
}

/// Value of the discriminant form of `A(-1)` on a glue vector.
pub fn glue_norm(t: RootType, label: usize) -> Result<BigRational> {
    let v = glue_vector(t, label)?;
    let c = linalg::to_q(&linalg::from_i64(&t.cartan()));
    let vc: Vec<BigRational> = (0..v.len()).map(|j| (0..v.len()).map(|i| &v[i] * &c[i][j]).sum()).collect();
    let n: BigRational = vc.iter().zip(&v).map(|(a, b)| a * b).sum();
    Ok(-n)
}

#[derive(Clone, Debug, Serialize)]
pub struct GlueCode {
    pub components: Vec<RootType>,
    pub generators: Vec<Vec<usize>>,
}

/// Rows of the Niemeier table: name, components, printed generating code, Coxeter number.
pub const TABLE: &[(&str, &str, &str, u64)] = &[
    ("N1", "D24", "[1]", 46),
    ("N2", "D16 E8", "[10]", 30),
    ("N3", "E8^3", "[000]", 30),
    ("N4", "A24", "[5]", 25),
    ("N5", "D12^2", "[12], [21]", 22),
    ("N6", "A17 E7", "[31]", 18),
    ("N7", "D10 E7^2", "[110], [301]", 18),
    ("N8", "A15 D9", "[21]", 16),
    ("N9", "D8^3", "[(122)]", 14),
    ("N10", "A12^2", "[15]", 13),
    ("N11", "A11 D7 E6", "[111]", 12),
    ("N12", "E6^4", "[1(012)]", 12),
    ("N13", "A9^2 D6", "[240], [501], [053]", 10),
    ("N14", "D6^4", "even permutations of 0123", 10),
    ("N15", "A8^3", "[(114)]", 9),
    ("N16", "A7^2 D5^2", "[1112], [1721]", 8),
    ("N17", "A6^4", "[1(216)]", 7),
    ("N18", "A5^4 D4", "[2(024)0], [33001], [30302], [30033]", 6),
    ("N19", "D4^6", "[111111], [0(02332)]", 6),
    ("N20", "A4^6", "[1(01441)]", 5),
    ("N21", "A3^8", "[3(2001011)]", 4),
    ("N22", "A2^12", "[2(11211122212)]", 3),
    ("N23", "A1^24", "[1(00000101001100110101111)]", 2),
];

fn parse_components(s: &str) -> Result<Vec<RootType>> {
    let mut out = vec![];
    for tok in s.split_whitespace() {
        let (base, mult) = match tok.split_once('^') {
            Some((b, m)) => (b, m.parse::<usize>().map_err(|_| Error::Invalid(tok.into()))?),
            None => (tok, 1),
        };
        let n: usize = base[1..].parse().map_err(|_| Error::Invalid(tok.into()))?;
        let t = match &base[..1] {
            "A" => RootType::A(n),
            "D" => RootType::D(n),
            "E" => RootType::E(n),
            _ => return Err(Error::Invalid(tok.into())),
        };
        out.extend(std::iter::repeat(t).take(mult));
    }
    Ok(out)
}

/// Expands one printed codeword: a parenthesized block stands for all its cyclic shifts.
pub fn expand_codeword(w: &str) -> Result<Vec<Vec<usize>>> {
    let w = w.trim().trim_start_matches('[').trim_end_matches(']');
    let digit = |c: char| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::BadGlue(format!("bad label {c}")));
    match (w.find('('), w.find(')')) {
        (Some(a), Some(b)) => {
            let pre: Vec<usize> = w[..a].chars().map(digit).collect::<Result<_>>()?;
            let block: Vec<usize> = w[a + 1..b].chars().map(digit).collect::<Result<_>>()?;
            let post: Vec<usize> = w[b + 1..].chars().map(digit).collect::<Result<_>>()?;
            let k = block.len();
            Ok((0..k)
                .map(|s| {
                    let mut v = pre.clone();
                    v.extend((0..k).map(|i| block[(i + k - s) % k]));
                    v.extend(post.iter().copied());
                    v
                })
                .collect())
        }
        (None, None) => Ok(vec![w.chars().map(digit).collect::<Result<_>>()?]),
        _ => Err(Error::BadGlue(format!("unbalanced parentheses in {w}"))),
    }
}

fn even_permutations(k: usize) -> Vec<Vec<usize>> {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = vec![];
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let base: Vec<usize> = (0..k).collect();
    perms(&base)
        .into_iter()
        .filter(|p| {
            let inv = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            inv % 2 == 0
        })
        .collect()
}

pub fn glue_code(name: &str) -> Result<GlueCode> {
    let &(_, comps, code, _) = TABLE.iter().find(|r| r.0 == name).ok_or_else(|| Error::Invalid(format!("unknown Niemeier lattice {name}")))?;
    let components = parse_components(comps)?;
    let generators = if code.starts_with("even") {
        even_permutations(4)
    } else {
        let mut g = vec![];
        for w in code.split(", ") {
            g.extend(expand_codeword(w)?);
        }
        g
    };
    let mut generators = generators;
    if components.len() > 1 && components.iter().all(|c| *c == RootType::D(4)) {
        // D4^n codes are read as F4-linear: close under simultaneous triality of the labels.
        let images: Vec<Vec<usize>> = generators.iter().map(|w| w.iter().map(|&l| if l == 0 { 0 } else { l % 3 + 1 }).collect()).collect();
        generators.extend(images);
    }
    for w in &generators {
        if w.len() != components.len() {
            return Err(Error::BadGlue(format!("codeword {w:?} has wrong length")));
        }
    }
    Ok(GlueCode { components, generators })
}

pub fn coxeter_number(name: &str) -> Option<u64> {
    TABLE.iter().find(|r| r.0 == name).map(|r| r.3)
}

/// A Niemeier lattice with its basis expressed in root coordinates.
#[derive(Clone, Debug)]
pub struct RootedLattice24 {
    pub name: String,
    pub code: GlueCode,
    pub lattice: GramLattice,
    /// Basis rows in the coordinates of the simple roots of all components.
    pub basis: QMat,
}

impl RootedLattice24 {
    /// Offsets of each component in root coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = vec![];
        let mut s = 0;
        for c in &self.code.components {
            o.push(s);
            s += c.rank();
        }
        o
    }

    /// Root-coordinate vector of a codeword.
    pub fn glue_lift(&self, w: &[usize]) -> Result<Vec<BigRational>> {
        let mut v = vec![];
        for (c, &l) in self.code.components.iter().zip(w) {
            v.extend(glue_vector(*c, l)?);
        }
        Ok(v)
    }
}

/// Root lattice `⊕ A(-1)` of a list of components.
pub fn root_lattice(components: &[RootType]) -> GramLattice {
    let parts: Vec<Mat> = components.iter().map(|c| linalg::scale(&linalg::from_i64(&c.cartan()), &BigInt::from(-1))).collect();
    let refs: Vec<&Mat> = parts.iter().collect();
    GramLattice::new(linalg::block_diag(&refs)).expect("root lattices are nondegenerate")
}

pub fn build_niemeier(name: &str) -> Result<RootedLattice24> {
    let code = glue_code(name)?;
    let r = root_lattice(&code.components);
    let mut glue = vec![];
    for w in &code.generators {
        let mut v = vec![];
        for (c, &l) in code.components.iter().zip(w) {
            v.extend(glue_vector(*c, l)?);
        }
        glue.push(v);
    }
    let Overlattice { lattice, basis } = overlattice_from_vectors(&r, &glue).map_err(|e| Error::BadGlue(format!("{name}: {e}")))?;
    if !lattice.is_even() {
        return Err(Error::BadGlue(format!("{name}: glue group is not isotropic")));
    }
    if !lattice.det().abs().is_one() {
        return Err(Error::BadGlue(format!("{name}: glue group order mismatch, |det| = {}", lattice.det().abs())));
    }
    Ok(RootedLattice24 { name: name.into(), code, lattice: lattice.named(name), basis })
}

/// Dynkin components recovered from the roots of a definite lattice, sorted by name.
pub fn root_system(l: &GramLattice) -> Result<Vec<RootType>> {
    let sign = enumerate::definite_sign(l)?;
    let half = enumerate::vectors_of_norm(l, 2 * sign)?;
    let mut roots: Vec<Vec<i64>> = half.clone();
    roots.extend(half.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    let g = l.gram_i64().ok_or_else(|| Error::Other("Gram too large".into()))?;
    let n = g.len();
    let rg: Vec<Vec<i64>> = roots.iter().map(|r| (0..n).map(|j| (0..n).map(|i| r[i] * g[i][j]).sum()).collect()).collect();
    let m = roots.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for i in 0..m {
        for j in i + 1..m {
            let d: i64 = rg[i].iter().zip(&roots[j]).map(|(a, b)| a * b).sum();
            if d != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut out = vec![];
    for members in comps.values() {
        let rows: Mat = members.iter().map(|&i| roots[i].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let rank = linalg::rank(&rows);
        let count = members.len();
        let t = if count == rank * (rank + 1) {
            RootType::A(rank)
        } else if rank >= 4 && count == 2 * rank * (rank - 1) {
            RootType::D(rank)
        } else if matches!((rank, count), (6, 72) | (7, 126) | (8, 240)) {
            RootType::E(rank)
        } else {
            return Err(Error::Other(format!("unrecognized root component: rank {rank}, {count} roots")));
        };
        out.push(t);
    }
    out.sort_by_key(|t| (t.name().chars().next(), std::cmp::Reverse(t.rank())));
    Ok(out)
}

/// Verification record of a Niemeier build.
#[derive(Clone, Debug, Serialize)]
pub struct NiemeierReport {
    pub name: String,
    pub rank: usize,
    pub det: String,
    pub even: bool,
    pub roots: u64,
    pub expected_roots: u64,
    pub root_system_matches: bool,
    pub coxeter_ok: bool,
}

impl NiemeierReport {
    pub fn ok(&self) -> bool {
        self.rank == 24 && self.det == "1" && self.even && self.roots == self.expected_roots && self.root_system_matches && self.coxeter_ok
    }
}

pub fn verify_niemeier(n: &RootedLattice24) -> Result<NiemeierReport> {
    let l = &n.lattice;
    let found = root_system(l)?;
    let mut want = n.code.components.clone();
    want.sort_by_key(|t| (t.name().chars().next(), std::cmp::Reverse(t.rank())));
    let roots: u64 = found.iter().map(|t| t.root_count()).sum();
    let expected: u64 = n.code.components.iter().map(|t| t.root_count()).sum();
    let h = coxeter_number(&n.name).unwrap_or(0);
    let coxeter_ok = n.code.components.iter().all(|c| c.coxeter_number() == h) && roots == 24 * h;
    Ok(NiemeierReport {
        name: n.name.clone(),
        rank: l.rank(),
        det: l.det().abs().to_string(),
        even: l.is_even(),
        roots,
        expected_roots: expected,
        root_system_matches: found == want,
        coxeter_ok,
    })
}

/// Integer row space maintained in Hermite normal form, for spans of many generators.
#[derive(Clone, Debug)]
pub struct RowSpan {
    pub n: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(n: usize) -> Self {
        RowSpan { n, rows: vec![], pivots: vec![] }
    }

    /// Adds a generator; returns true if the span grew.
    pub fn add(&mut self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        let mut i = 0;
        let mut grew = false;
        while i < self.rows.len() {
            let p = self.pivots[i];
            let lead = v.iter().position(|x| !x.is_zero());
            let Some(lead) = lead else { return grew };
            if lead < p {
                // New pivot before row i.
                self.rows.insert(i, v.clone());
                self.pivots.insert(i, lead);
                self.normalize(i);
                return true;
            }
            if lead == p {
                let a = self.rows[i][p].clone();
                let b = v[p].clone();
                if (&b % &a).is_zero() {
                    let q = &b / &a;
                    for (x, y) in v.iter_mut().zip(&self.rows[i]) {
                        *x -= &q * y;
                    }
                } else {
                    let eg = a.extended_gcd(&b);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let (a_g, b_g) = (&a / &g, &b / &g);
                    let r = self.rows[i].clone();
                    let new_row: Vec<BigInt> = r.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                    let new_v: Vec<BigInt> = r.iter().zip(&v).map(|(x, y)| &a_g * y - &b_g * x).collect();
                    self.rows[i] = new_row;
                    v = new_v;
                    grew = true;
                    self.normalize(i);
                }
            }
            i += 1;
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            self.rows.push(v);
            self.pivots.push(lead);
            let k = self.rows.len() - 1;
            self.normalize(k);
            return true;
        }
        grew
    }

    /// Makes the pivot of row k positive and reduces the entries above it.
    fn normalize(&mut self, k: usize) {
        let p = self.pivots[k];
        if self.rows[k][p].is_negative() {
            for x in self.rows[k].iter_mut() {
                *x = -x.clone();
            }
        }
        let piv = self.rows[k][p].clone();
        for i in 0..k {
            let q = self.rows[i][p].div_floor(&piv);
            if !q.is_zero() {
                let rk = self.rows[k].clone();
                for (x, y) in self.rows[i].iter_mut().zip(&rk) {
                    *x -= &q * y;
                }
            }
        }
    }

    /// Integer coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut c = vec![BigInt::zero(); self.rows.len()];
        for (i, r) in self.rows.iter().enumerate() {
            let p = self.pivots[i];
            if v[p].is_zero() {
                continue;
            }
            let (q, rem) = v[p].div_rem(&r[p]);
            if !rem.is_zero() {
                return None;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x -= &q * y;
            }
            c[i] = q;
        }
        v.iter().all(|x| x.is_zero()).then_some(c)
    }
}

/// Monomial map of the ambient coordinates: coordinate k goes to `target[k]` with sign `sign[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientMap {
    pub target: Vec<usize>,
    pub sign: Vec<i64>,
}

impl AmbientMap {
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); v.len()];
        for (k, x) in v.iter().enumerate() {
            out[self.target[k]] = x * self.sign[k];
        }
        out
    }
}

/// Holy construction for a Niemeier lattice of type A_n^m: N and Λ inside Q^{m(n+1)}
/// with the negative Euclidean form. All coordinates are scaled by `den`.
#[derive(Clone, Debug)]
pub struct HolyPair {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub h: usize,
    pub den: BigInt,
    pub codewords: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
    pub niemeier: RowSpan,
    pub leech: RowSpan,
    pub n_lattice: GramLattice,
    pub leech_lattice: GramLattice,
}

/// Names of the pure A-type Niemeier lattices.
pub fn pure_a_names() -> Vec<&'static str> {
    vec!["N4", "N10", "N15", "N17", "N20", "N21", "N22", "N23"]
}

fn span_group(gens: &[Vec<usize>], modulus: usize, m: usize) -> Vec<Vec<usize>> {
    let zero = vec![0usize; m];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut q = VecDeque::from(vec![zero]);
    while let Some(x) = q.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(y.clone()) {
                q.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

impl HolyPair {
    pub fn dim(&self) -> usize {
        self.m * (self.n + 1)
    }

    /// Extended root f_i of copy j (i in 0..=n), scaled by den.
    pub fn extended_root(&self, j: usize, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        let o = j * (self.n + 1);
        let d = &self.den;
        if i == 0 {
            v[o] = d.clone();
            v[o + self.n] = -d.clone();
        } else {
            v[o + i - 1] = -d.clone();
            v[o + i] = d.clone();
        }
        v
    }

    /// Holy vector h_w, scaled by den.
    pub fn holy_vector(&self, w: &[usize]) -> Vec<BigInt> {
        let h = self.h as i64;
        let n = self.n as i64;
        let unit = &self.den / BigInt::from(2 * h);
        let mut v = vec![BigInt::zero(); self.dim()];
        for (j, &shift) in w.iter().enumerate() {
            for k in 0..self.h {
                // g_0[k] = (-n/2 + k)/h; g_i[k] = g_0[k - i].
                let src = (k as i64 - shift as i64).rem_euclid(h);
                v[j * self.h + k] = &unit * BigInt::from(-n + 2 * src);
            }
        }
        v
    }

    pub fn in_code(&self, w: &[usize]) -> bool {
        self.codewords.binary_search(&w.to_vec()).is_ok()
    }

    /// Builds the pair for a pure A-type Niemeier lattice.
    pub fn new(name: &str) -> Result<HolyPair> {
        let code = glue_code(name)?;
        let n = match code.components[0] {
            RootType::A(n) if code.components.iter().all(|c| *c == RootType::A(n)) => n,
            _ => return Err(Error::Invalid(format!("{name} is not of pure A type"))),
        };
        let m = code.components.len();
        let h = n + 1;
        let codewords = span_group(&code.generators, h, m);
        let mut hp = HolyPair {
            name: name.into(),
            n,
            m,
            h,
            den: BigInt::from(2 * h as i64),
            codewords,
            generators: code.generators.clone(),
            niemeier: RowSpan::new(m * h),
            leech: RowSpan::new(m * h),
            n_lattice: GramLattice { gram: vec![], name: None, basis_tag: None },
            leech_lattice: GramLattice { gram: vec![], name: None, basis_tag: None },
        };
        let h0 = hp.holy_vector(&vec![0; m]);
        let sub = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
        let mut ns = RowSpan::new(hp.dim());
        let mut ls = RowSpan::new(hp.dim());
        for j in 0..m {
            for i in 0..=n {
                let f = hp.extended_root(j, i);
                ns.add(&f);
                ls.add(&sub(&f, &h0));
            }
        }
        for w in &hp.codewords {
            let hw = hp.holy_vector(w);
            let d = sub(&hw, &h0);
            ns.add(&d);
            ls.add(&d);
        }
        ls.add(&vec![BigInt::zero(); hp.dim()]);
        let gram = |s: &RowSpan| -> Result<GramLattice> {
            let d2 = &hp.den * &hp.den;
            let g: Mat = s
                .rows
                .iter()
                .map(|a| {
                    s.rows
                        .iter()
                        .map(|b| {
                            let dot: BigInt = a.iter().zip(b).map(|(x, y)| x * y).sum();
                            let (q, r) = (-dot).div_rem(&d2);
                            if r.is_zero() {
                                Ok(q)
                            } else {
                                Err(Error::Other("non-integral holy Gram".into()))
                            }
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            GramLattice::new(g)
        };
        hp.n_lattice = gram(&ns)?.named(name).tagged(&format!("holy:{name}"));
        hp.leech_lattice = gram(&ls)?.named("Leech").tagged(&format!("holy:{name}"));
        hp.niemeier = ns;
        hp.leech = ls;
        Ok(hp)
    }

    /// `[N : N∩Λ]` and `[Λ : N∩Λ]`.
    pub fn indices(&self) -> (BigInt, BigInt) {
        let a = &self.niemeier.rows;
        let b = &self.leech.rows;
        let meet = linalg::intersect(a, b);
        let ca = linalg::int_coords_in(a, &meet).expect("inside N");
        let cb = linalg::int_coords_in(b, &meet).expect("inside Λ");
        (linalg::det(&ca).abs(), linalg::det(&cb).abs())
    }

    /// Ambient map of a glue translation by `t` followed by the component permutation `perm`
    /// (component i goes to perm[i]); `reflect[i]` applies the central symmetry on copy i first.
    pub fn ambient_map(&self, perm: &[usize], shift: &[usize], reflect: &[bool]) -> Result<AmbientMap> {
        let (m, h) = (self.m, self.h);
        if perm.len() != m || shift.len() != m || reflect.len() != m {
            return Err(Error::Dimension("isometry data must have one entry per component".into()));
        }
        let mut seen = vec![false; m];
        for &p in perm {
            if p >= m || seen[p] {
                return Err(Error::Invalid("component map is not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut target = vec![0; m * h];
        let mut sign = vec![1; m * h];
        for j in 0..m {
            for k in 0..h {
                let k1 = if reflect[j] { (h - 1) - k } else { k };
                let k2 = (k1 + shift[j]) % h;
                target[j * h + k] = perm[j] * h + k2;
                if reflect[j] {
                    sign[j * h + k] = -1;
                }
            }
        }
        Ok(AmbientMap { target, sign })
    }

    /// Codewords violated by a component permutation (generators whose image leaves the code).
    pub fn violated_codewords(&self, perm: &[usize], reflect: &[bool]) -> Vec<Vec<usize>> {
        let h = self.h;
        self.generators
            .iter()
            .filter(|w| {
                let mut img = vec![0usize; self.m];
                for (j, &l) in w.iter().enumerate() {
                    img[perm[j]] = if reflect[j] { (h - l) % h } else { l };
                }
                !self.in_code(&img)
            })
            .cloned()
            .collect()
    }

    /// Matrix (rows = images of basis vectors) of an ambient map on N or Λ.
    pub fn matrix_on(&self, map: &AmbientMap, leech: bool) -> Result<Mat> {
        let span = if leech { &self.leech } else { &self.niemeier };
        span.rows
            .iter()
            .map(|r| span.coords(&map.apply(r)).ok_or_else(|| Error::NotIsometry("map does not preserve the lattice".into())))
            .collect()
    }

    /// Ambient rows of a sublattice given in basis coordinates.
    pub fn to_ambient(&self, coords: &Mat, leech: bool) -> Mat {
        let span = if leech { &self.leech } else { &self.niemeier };
        linalg::mul(coords, &span.rows)
    }
}

/// Which construction of the Leech lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LeechRoute {
    Mod23,
    Holy(String),
    WeylQuotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeechReport {
    pub route: String,
    pub rank: usize,
    pub det: String,
    pub even: bool,
    pub roots: u64,
}

impl LeechReport {
    pub fn ok(&self) -> bool {
        self.rank == 24 && self.det == "1" && self.even && self.roots == 0
    }
}

/// Checks the rootless even unimodular rank-24 characterization.
pub fn certify_leech(l: &GramLattice, route: &str) -> Result<LeechReport> {
    let sign = enumerate::definite_sign(l)?;
    let roots = enumerate::vectors_of_norm(l, 2 * sign)?;
    let rep = LeechReport { route: route.into(), rank: l.rank(), det: l.det().abs().to_string(), even: l.is_even(), roots: 2 * roots.len() as u64 };
    if let Some(r) = roots.first() {
        return Err(Error::NotLeech(r.clone()));
    }
    Ok(rep)
}

fn quadratic_residues_23() -> BTreeSet<usize> {
    (1..23).map(|x| x * x % 23).collect()
}

/// Generators of the mod-23 model, multiplied by √8; positions ∞, 0, …, 22.
pub fn leech_mod23_generators() -> Vec<Vec<i64>> {
    let qr = quadratic_residues_23();
    let mut q: Vec<usize> = qr.iter().copied().collect();
    q.push(0);
    let mut gens = vec![];
    for t in 0..23 {
        let mut v = vec![0i64; 24];
        for &x in &q {
            v[1 + (x + t) % 23] = 2;
        }
        gens.push(v);
    }
    let mut v = vec![1i64; 24];
    v[0] = -3;
    gens.push(v);
    for i in 0..24 {
        for j in i + 1..24 {
            for s in [1i64, -1] {
                let mut v = vec![0i64; 24];
                v[i] = 4;
                v[j] = 4 * s;
                gens.push(v);
            }
        }
    }
    gens
}

/// Lattice spanned by integer vectors with pairing `-x·y/scale`; returns the basis and Gram.
pub fn lattice_from_vectors(gens: &[Vec<i64>], scale: i64) -> Result<(Mat, GramLattice)> {
    let n = gens.first().map_or(0, |g| g.len());
    let mut span = RowSpan::new(n);
    for g in gens {
        span.add(&g.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }
    let s = BigInt::from(scale);
    let mut gram = vec![];
    for a in &span.rows {
        let mut row = vec![];
        for b in &span.rows {
            let dot: BigInt = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let (q, r) = (-dot).div_rem(&s);
            if !r.is_zero() {
                return Err(Error::Invalid("pairing is not integral".into()));
            }
            row.push(q);
        }
        gram.push(row);
    }
    Ok((span.rows.clone(), GramLattice::new(gram)?))
}

pub fn leech_mod23() -> Result<GramLattice> {
    let (_, l) = lattice_from_vectors(&leech_mod23_generators(), 8)?;
    Ok(l.named("Leech").tagged("mod23"))
}

/// Basis of Π_{1,25} = {x ∈ Z²⁶ ∪ (Z+½)²⁶ : x₀ + Σ xᵢ even}, scaled by 2, via Hermite form.
pub fn pi_1_25_basis() -> Mat {
    let mut gens: Vec<Vec<BigInt>> = vec![];
    let unit = |i: usize, c: i64| {
        let mut v = vec![BigInt::zero(); 26];
        v[i] = BigInt::from(c);
        v
    };
    for i in 0..26 {
        for j in i + 1..26 {
            let mut a = unit(i, 2);
            a[j] = BigInt::from(2);
            gens.push(a);
            let mut b = unit(i, 2);
            b[j] = BigInt::from(-2);
            gens.push(b);
        }
    }
    let mut h = vec![BigInt::one(); 26];
    h[25] = -BigInt::one();
    gens.push(h);
    let mut span = RowSpan::new(26);
    for g in &gens {
        span.add(g);
    }
    span.rows
}

/// Lorentzian product x₀y₀ − Σ xᵢyᵢ on vectors scaled by 2 (so divided by 4).
fn lorentz(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = &a[0] * &b[0];
    for i in 1..26 {
        s -= &a[i] * &b[i];
    }
    s
}

/// `(w⊥ ∩ Π)/w` for a primitive isotropic `w` given in standard coordinates.
pub fn isotropic_quotient(w: &[i64]) -> Result<GramLattice> {
    let basis = pi_1_25_basis();
    let w2: Vec<BigInt> = w.iter().map(|&x| BigInt::from(2 * x)).collect();
    if !lorentz(&w2, &w2).is_zero() {
        return Err(Error::Invalid("vector is not isotropic".into()));
    }
    let span = RowSpan { n: 26, rows: basis.clone(), pivots: basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect() };
    let wc = span.coords(&w2).ok_or_else(|| Error::Invalid("vector not in the lattice".into()))?;
    let gram: Mat = basis.iter().map(|a| basis.iter().map(|b| lorentz(a, b) / BigInt::from(4)).collect()).collect();
    // w⊥ in lattice coordinates.
    let wg = linalg::vec_mat(&wc, &gram);
    let col: Mat = wg.iter().map(|x| vec![x.clone()]).collect();
    let perp = linalg::left_kernel(&col);
    // Coordinates of w inside the basis of w⊥, then a complement of w.
    let c = linalg::int_coords_in(&perp, &vec![wc.clone()]).ok_or_else(|| Error::Invalid("w not in w⊥".into()))?;
    let c = &c[0];
    if !linalg::gcd_all(c).is_one() {
        return Err(Error::Invalid("vector is not primitive".into()));
    }
    let colc: Mat = c.iter().map(|x| vec![x.clone()]).collect();
    let (_, u, _) = linalg::hnf(&colc);
    let winv = linalg::from_q(&linalg::inverse(&u).expect("unimodular")).expect("unimodular");
    // Rows of (U^{-1})^T form a basis of Z^25 whose first row is ±c.
    let wt = linalg::transpose(&winv);
    let rest: Mat = wt[1..].to_vec();
    let rows = linalg::mul(&rest, &perp);
    let g = linalg::congruent(&rows, &gram);
    GramLattice::new(g)
}

pub fn weyl_vector() -> Vec<i64> {
    let mut w = vec![70i64];
    w.extend(0..25);
    w
}

pub fn leech_weyl() -> Result<GramLattice> {
    Ok(isotropic_quotient(&weyl_vector())?.named("Leech").tagged("weyl"))
}

pub fn leech(route: &LeechRoute) -> Result<GramLattice> {
    match route {
        LeechRoute::Mod23 => leech_mod23(),
        LeechRoute::WeylQuotient => leech_weyl(),
        LeechRoute::Holy(n) => Ok(HolyPair::new(n)?.leech_lattice),
    }
}

/// Permutation x ↦ 2x of P¹(F₂₃) on positions (∞, 0, …, 22).
pub fn order11_permutation() -> Vec<usize> {
    let mut p = vec![0usize; 24];
    p[0] = 0;
    for x in 0..23 {
        p[1 + x] = 1 + (2 * x) % 23;
    }
    p
}

/// Cycles of a permutation given as `p[i]` = image of i, in the printed orientation.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = vec![];
    for i in 0..p.len() {
        if seen.contains(&i) {
            continue;
        }
        let mut c = vec![i];
        seen.insert(i);
        let mut j = p[i];
        while j != i {
            c.push(j);
            seen.insert(j);
            j = p[j];
        }
        out.push(c);
    }
    out
}

/// Reduces a rational matrix row by row to the integer matrix of denominators cleared.
pub fn rational_rows(rows: &QMat) -> (Mat, BigInt) {
    linalg::clear_denominators(rows)
}

/// Number of nonzero codewords of a holy pair.
pub fn codeword_count(hp: &HolyPair) -> usize {
    hp.codewords.len()
}

/// Order of a codeword in the glue group.
pub fn codeword_order(hp: &HolyPair, w: &[usize]) -> u64 {
    let h = hp.h as u64;
    w.iter().fold(1u64, |acc, &x| {
        let o = h / (x as u64).gcd(&h);
        acc.lcm(&o)
    })
}

pub fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glue_vectors() {
        let v = glue_vector(RootType::A(1), 1).unwrap();
        assert_eq!(v, vec![BigRational::new(1.into(), 2.into())]);
        assert_eq!(glue_norm(RootType::A(1), 1).unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(glue_vector_a_euclidean(1, 1), vec![BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())]);
        assert!(glue_vector(RootType::A(2), 0).unwrap().iter().all(|x| x.is_zero()));
        assert!(glue_vector(RootType::A(2), 3).is_err());
        // Spinor class of D8 has norm 2 in D8, hence isotropic.
        assert_eq!(glue_norm(RootType::D(8), 1).unwrap(), BigRational::from_integer((-2).into()));
    }

    #[test]
    fn cyclic_expansion() {
        let w = expand_codeword("[2(024)0]").unwrap();
        assert_eq!(w, vec![vec![2, 0, 2, 4, 0], vec![2, 4, 0, 2, 0], vec![2, 2, 4, 0, 0]]);
        assert_eq!(expand_codeword("[1(00000101001100110101111)]").unwrap().len(), 23);
        assert_eq!(even_permutations(4).len(), 12);
    }

    #[test]
    fn order11_matches_printed_cycles() {
        let p = order11_permutation();
        let label = |i: usize| if i == 0 { "inf".to_string() } else { (i - 1).to_string() };
        let cyc: Vec<Vec<String>> = cycles(&p).into_iter().map(|c| c.into_iter().map(label).collect()).collect();
        assert!(cyc.contains(&vec!["inf".to_string()]));
        let first: Vec<String> = ["1", "2", "4", "8", "16", "9", "18", "13", "3", "6", "12"].iter().map(|s| s.to_string()).collect();
        assert!(cyc.contains(&first));
        let second: Vec<String> = ["5", "10", "20", "17", "11", "22", "21", "19", "15", "7", "14"].iter().map(|s| s.to_string()).collect();
        assert!(cyc.contains(&second));
    }

    #[test]
    fn row_span_matches_hnf() {
        let rows = vec![vec![2i64, 4, 6], vec![3, 5, 7], vec![1, 1, 1], vec![0, 2, 4]];
        let mut s = RowSpan::new(3);
        for r in &rows {
            s.add(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
        assert_eq!(s.rows, linalg::hnf_basis(&linalg::from_i64(&rows)));
    }
}
