//! Isometries of lattices: verification and algebra, Niemeier-lattice isometries from
//! combinatorial data, fixed and co-fixed sublattices, Eichler transvections, discriminant
//! actions and the extension to the Mukai lattice.
//!
//! Vectors are rows. An isometry `M` of a lattice with Gram `G` satisfies `M·G·Mᵀ = G`;
//! the image of the row vector `v` is `v·M`.

use crate::catalog;
use crate::disc::{self, discriminant_module, Elem, Fqm};
use crate::lattice::{GramLattice, Sublattice};
use crate::linalg::{self, Mat, QMat};
use crate::niemeier::{HolyPair, RootType, RootedLattice24};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_ORDER_BOUND: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    pub matrix: Mat,
    pub lattice: GramLattice,
}

impl LatticeIsometry {
    /// Verifies `M·G·Mᵀ = G`, reporting the first violated Gram entry.
    pub fn new(lattice: &GramLattice, matrix: Mat) -> Result<Self> {
        let n = lattice.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("expected {n}×{n} matrix")));
        }
        let img = linalg::congruent(&matrix, &lattice.gram);
        for i in 0..n {
            for j in 0..n {
                if img[i][j] != lattice.gram[i][j] {
                    return Err(Error::NotIsometry(format!("entry ({i},{j}): {} ≠ {}", img[i][j], lattice.gram[i][j])));
                }
            }
        }
        if !linalg::det(&matrix).abs().is_one() {
            return Err(Error::NotIsometry("determinant is not ±1".into()));
        }
        Ok(LatticeIsometry { matrix, lattice: lattice.clone() })
    }

    pub fn identity(l: &GramLattice) -> Self {
        LatticeIsometry { matrix: linalg::identity(l.rank()), lattice: l.clone() }
    }

    pub fn minus_identity(l: &GramLattice) -> Self {
        LatticeIsometry { matrix: linalg::scale(&linalg::identity(l.rank()), &BigInt::from(-1)), lattice: l.clone() }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &LatticeIsometry) -> Result<LatticeIsometry> {
        if self.lattice.gram != other.lattice.gram {
            return Err(Error::Dimension("isometries of different lattices".into()));
        }
        Ok(LatticeIsometry { matrix: linalg::mul(&self.matrix, &other.matrix), lattice: self.lattice.clone() })
    }

    pub fn inverse(&self) -> LatticeIsometry {
        let inv = linalg::from_q(&linalg::inverse(&self.matrix).expect("unimodular")).expect("unimodular");
        LatticeIsometry { matrix: inv, lattice: self.lattice.clone() }
    }

    pub fn pow(&self, e: u64) -> LatticeIsometry {
        LatticeIsometry { matrix: linalg::pow(&self.matrix, e), lattice: self.lattice.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.rank())
    }

    pub fn order(&self) -> Result<u64> {
        self.order_bounded(DEFAULT_ORDER_BOUND)
    }

    pub fn order_bounded(&self, bound: u64) -> Result<u64> {
        let id = linalg::identity(self.rank());
        let mut m = self.matrix.clone();
        for k in 1..=bound {
            if m == id {
                return Ok(k);
            }
            m = linalg::mul(&m, &self.matrix);
        }
        Err(Error::Other(format!("order exceeds {bound}")))
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        linalg::vec_mat(v, &self.matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DiagramTag {
    #[default]
    Id,
    /// Central symmetry of A_n, or the diagram symmetry of E6.
    Sigma,
    /// Triality of D4: α4 → α1 → α3 → α4.
    Gamma,
    /// Swap of the last two nodes of D_n.
    Lambda,
}

/// Combinatorial description of an isometry of a Niemeier lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometrySpec {
    /// Component i goes to component `perm[i]`.
    pub perm: Vec<usize>,
    #[serde(default)]
    pub diagram: Vec<DiagramTag>,
    /// Glue translation (holy pairs only).
    #[serde(default)]
    pub glue: Vec<usize>,
}

impl IsometrySpec {
    pub fn permutation(perm: Vec<usize>) -> Self {
        IsometrySpec { perm, diagram: vec![], glue: vec![] }
    }

    pub fn translation(t: Vec<usize>) -> Self {
        IsometrySpec { perm: (0..t.len()).collect(), diagram: vec![], glue: t }
    }

    /// Permutation from 1-based cycles over `m` components.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Self {
        let mut perm: Vec<usize> = (0..m).collect();
        for c in cycles {
            for k in 0..c.len() {
                perm[c[k] - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Self::permutation(perm)
    }

    fn tag(&self, i: usize) -> DiagramTag {
        self.diagram.get(i).copied().unwrap_or_default()
    }
}

/// Node permutation (0-based) of a diagram automorphism.
pub fn node_map(t: RootType, tag: DiagramTag) -> Result<Vec<usize>> {
    let r = t.rank();
    let id: Vec<usize> = (0..r).collect();
    let bad = || Error::Invalid(format!("{tag:?} is not a diagram automorphism of {}", t.name()));
    Ok(match (t, tag) {
        (_, DiagramTag::Id) => id,
        (RootType::A(_), DiagramTag::Sigma) => (0..r).map(|k| r - 1 - k).collect(),
        (RootType::E(6), DiagramTag::Sigma) => vec![5, 1, 4, 3, 2, 0],
        (RootType::D(4), DiagramTag::Gamma) => vec![2, 1, 3, 0],
        (RootType::D(n), DiagramTag::Lambda) => {
            let mut p = id;
            p.swap(n - 2, n - 1);
            p
        }
        _ => return Err(bad()),
    })
}

/// Isometry of a Niemeier lattice built from root systems and glue.
pub fn from_spec_rooted(n: &RootedLattice24, spec: &IsometrySpec) -> Result<LatticeIsometry> {
    let comps = &n.code.components;
    let m = comps.len();
    check_perm(&spec.perm, m)?;
    if spec.glue.iter().any(|&x| x != 0) {
        return Err(Error::Invalid("glue translations act on holy constructions only".into()));
    }
    let offs = n.offsets();
    let dim = comps.iter().map(|c| c.rank()).sum();
    let mut r = linalg::zeros(dim, dim);
    for i in 0..m {
        let j = spec.perm[i];
        if comps[j] != comps[i] {
            return Err(Error::BadGlue(format!("component {} ({}) cannot map to {} ({})", i + 1, comps[i].name(), j + 1, comps[j].name())));
        }
        let nm = node_map(comps[i], spec.tag(i))?;
        for (k, &kk) in nm.iter().enumerate() {
            r[offs[i] + k][offs[j] + kk] = BigInt::one();
        }
    }
    let rq = linalg::to_q(&r);
    let binv = linalg::qinverse(&n.basis).ok_or(Error::Degenerate)?;
    let mq = linalg::qmul(&linalg::qmul(&n.basis, &rq), &binv);
    match linalg::from_q(&mq) {
        Some(mat) => LatticeIsometry::new(&n.lattice, mat),
        None => {
            let mut bad = vec![];
            for w in &n.code.generators {
                let lift = n.glue_lift(w)?;
                let img: Vec<BigRational> = (0..dim).map(|c| (0..dim).map(|k| &lift[k] * &rq[k][c]).sum()).collect();
                let coords: Vec<BigRational> = (0..dim).map(|c| (0..dim).map(|k| &img[k] * &binv[k][c]).sum()).collect();
                if coords.iter().any(|x| !x.is_integer()) {
                    bad.push(w.clone());
                }
            }
            Err(Error::BadGlue(format!("glue code not preserved; violated codewords {bad:?}")))
        }
    }
}

fn check_perm(perm: &[usize], m: usize) -> Result<()> {
    if perm.len() != m {
        return Err(Error::Dimension(format!("permutation of {m} components expected")));
    }
    let mut seen = vec![false; m];
    for &p in perm {
        if p >= m || seen[p] {
            return Err(Error::Invalid("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// The same ambient map acting on the Niemeier lattice and on the Leech lattice of a holy pair.
#[derive(Clone, Debug)]
pub struct HolyIsometry {
    pub on_niemeier: LatticeIsometry,
    pub on_leech: LatticeIsometry,
    pub ambient: crate::niemeier::AmbientMap,
}

pub fn from_spec_holy(hp: &HolyPair, spec: &IsometrySpec) -> Result<HolyIsometry> {
    check_perm(&spec.perm, hp.m)?;
    let mut reflect = vec![false; hp.m];
    for (i, r) in reflect.iter_mut().enumerate() {
        match spec.tag(i) {
            DiagramTag::Id => {}
            DiagramTag::Sigma => *r = true,
            t => return Err(Error::Invalid(format!("{t:?} is not available on A-type components"))),
        }
    }
    let shift = if spec.glue.is_empty() { vec![0; hp.m] } else { spec.glue.clone() };
    if shift.len() != hp.m || !hp.in_code(&shift.iter().map(|x| x % hp.h).collect::<Vec<_>>()) {
        return Err(Error::BadGlue(format!("translation {shift:?} is not a codeword")));
    }
    let bad = hp.violated_codewords(&spec.perm, &reflect);
    if !bad.is_empty() {
        return Err(Error::BadGlue(format!("glue code not preserved; violated codewords {bad:?}")));
    }
    let ambient = hp.ambient_map(&spec.perm, &shift, &reflect)?;
    let mn = hp.matrix_on(&ambient, false)?;
    let ml = hp.matrix_on(&ambient, true)?;
    Ok(HolyIsometry { on_niemeier: LatticeIsometry::new(&hp.n_lattice, mn)?, on_leech: LatticeIsometry::new(&hp.leech_lattice, ml)?, ambient })
}

/// Invariant lattice `T_G` and its orthogonal complement `S_G`.
#[derive(Clone, Debug)]
pub struct FixedSublattices {
    pub t: Sublattice,
    pub s: Sublattice,
    pub t_lattice: Option<GramLattice>,
    pub s_lattice: Option<GramLattice>,
}

pub fn fixed_sublattices(l: &GramLattice, gens: &[LatticeIsometry]) -> Result<FixedSublattices> {
    let n = l.rank();
    for g in gens {
        if g.lattice.gram != l.gram {
            return Err(Error::NotIsometry("generator acts on a different lattice".into()));
        }
    }
    let t_rows = if gens.is_empty() {
        linalg::identity(n)
    } else {
        let mut stacked = vec![vec![]; n];
        for g in gens {
            let d = linalg::sub(&g.matrix, &linalg::identity(n));
            for (i, row) in d.into_iter().enumerate() {
                stacked[i].extend(row);
            }
        }
        linalg::left_kernel(&stacked)
    };
    let t = l.saturate(&t_rows);
    let s = if t.rank() == 0 { Sublattice { rows: linalg::identity(n), primitive: true } } else { l.orthogonal_complement(&t.rows) };
    let mk = |sub: &Sublattice| -> Result<Option<GramLattice>> { if sub.rank() == 0 { Ok(None) } else { l.sublattice(&sub.rows).map(Some) } };
    Ok(FixedSublattices { t_lattice: mk(&t)?, s_lattice: mk(&s)?, t, s })
}

/// Matrix of an isometry restricted to an invariant sublattice, in the sublattice basis.
pub fn restrict(g: &LatticeIsometry, rows: &Mat) -> Result<Mat> {
    let img = linalg::mul(rows, &g.matrix);
    linalg::int_coords_in(rows, &img).ok_or_else(|| Error::NotIsometry("sublattice is not invariant".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// Exponent of `L/(T ⊕ S)`.
    pub exponent: String,
    pub exponent_divides_order: bool,
    /// No nonzero vector of S is fixed by the generator.
    pub free_on_s: bool,
    /// `Φ_p(g)` vanishes on S (prime order only).
    pub cyclotomic_annihilates: Option<bool>,
    pub order: u64,
}

pub fn structure_checks(l: &GramLattice, gens: &[LatticeIsometry], group_order: u64) -> Result<StructureReport> {
    let fs = fixed_sublattices(l, gens)?;
    let n = l.rank();
    let mut rows = fs.t.rows.clone();
    if fs.t.rank() < n {
        rows.extend(fs.s.rows.clone());
    }
    let inv = linalg::invariant_factors(&rows);
    let exponent = inv.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |a, b| a.lcm(b));
    let exponent_divides_order = (BigInt::from(group_order) % &exponent).is_zero();
    let mut free_on_s = true;
    let mut cyclo = None;
    if let Some(g) = gens.first() {
        if fs.s.rank() > 0 && fs.t.rank() < n {
            let c = restrict(g, &fs.s.rows)?;
            let k = c.len();
            let d = linalg::sub(&c, &linalg::identity(k));
            free_on_s = linalg::left_kernel(&d).is_empty();
            if gens.len() == 1 && is_prime(group_order) {
                let mut acc = linalg::zeros(k, k);
                let mut pw = linalg::identity(k);
                for _ in 0..group_order {
                    acc = linalg::add(&acc, &pw);
                    pw = linalg::mul(&pw, &c);
                }
                cyclo = Some(acc.iter().all(|r| r.iter().all(|x| x.is_zero())));
            }
        }
    }
    Ok(StructureReport { exponent: exponent.to_string(), exponent_divides_order, free_on_s, cyclotomic_annihilates: cyclo, order: group_order })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `t(e,a): v ↦ v − (a,v)e + (e,v)a − ½(a,a)(e,v)e`.
pub fn eichler_transvection(l: &GramLattice, e: &[BigInt], a: &[BigInt]) -> Result<LatticeIsometry> {
    let n = l.rank();
    if e.len() != n || a.len() != n {
        return Err(Error::Dimension("vector length".into()));
    }
    if !l.norm(e).is_zero() {
        return Err(Error::Invalid("e is not isotropic".into()));
    }
    if !l.pair(e, a).is_zero() {
        return Err(Error::Invalid("a is not orthogonal to e".into()));
    }
    let eg = linalg::vec_mat(e, &l.gram);
    let ag = linalg::vec_mat(a, &l.gram);
    let a2 = l.norm(a);
    let mut m = linalg::identity(n);
    for i in 0..n {
        let ev = &eg[i];
        let half = &a2 * ev;
        if half.is_odd() {
            return Err(Error::Invalid("(a,a)(e,v) is odd".into()));
        }
        let coef_e = -&ag[i] - (half / 2);
        for k in 0..n {
            m[i][k] += &coef_e * &e[k] + ev * &a[k];
        }
    }
    LatticeIsometry::new(l, m)
}

/// A hyperbolic pair basis `(e, f, e₁, f₁)` of `U(n) ⊕ U(n)` inside T.
#[derive(Clone, Debug)]
pub struct HyperbolicSplitting {
    pub e: Vec<BigInt>,
    pub f: Vec<BigInt>,
    pub e1: Vec<BigInt>,
    pub f1: Vec<BigInt>,
    pub n: BigInt,
}

impl HyperbolicSplitting {
    /// Checks the Gram matrix of the four vectors and that they split off T.
    pub fn new(t: &GramLattice, e: Vec<BigInt>, f: Vec<BigInt>, e1: Vec<BigInt>, f1: Vec<BigInt>) -> Result<Self> {
        let n = t.pair(&e, &f);
        let vs = [&e, &f, &e1, &f1];
        let mut want = vec![vec![BigInt::zero(); 4]; 4];
        for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            want[i][j] = n.clone();
        }
        for i in 0..4 {
            for j in 0..4 {
                if t.pair(vs[i], vs[j]) != want[i][j] {
                    return Err(Error::Invalid("vectors do not span U(n)⊕U(n)".into()));
                }
            }
        }
        if n.is_zero() {
            return Err(Error::Invalid("degenerate hyperbolic pair".into()));
        }
        let rows: Mat = vs.iter().map(|v| (*v).clone()).collect();
        let perp = t.orthogonal_complement(&rows);
        let mut all = rows.clone();
        all.extend(perp.rows);
        if linalg::rank(&all) != t.rank() || !linalg::det(&all).abs().is_one() {
            return Err(Error::Invalid("U(n)⊕U(n) does not split off".into()));
        }
        Ok(HyperbolicSplitting { e, f, e1, f1, n })
    }

    /// Standard splitting when the first four basis vectors span U ⊕ U (or U(n) ⊕ U(n)) in order.
    pub fn leading(t: &GramLattice, offset: usize) -> Result<Self> {
        let unit = |i: usize| {
            let mut v = vec![BigInt::zero(); t.rank()];
            v[offset + i] = BigInt::one();
            v
        };
        Self::new(t, unit(0), unit(1), unit(2), unit(3))
    }
}

/// Chain of transvections moving `v` into the second hyperbolic plane (U ⊕ U₁ case).
pub fn reduce_to_second_plane(t: &GramLattice, sp: &HyperbolicSplitting, v: &[BigInt]) -> Result<(LatticeIsometry, Vec<BigInt>)> {
    if !sp.n.is_one() {
        return Err(Error::Invalid("constructive reduction needs unimodular hyperbolic planes".into()));
    }
    // v ↔ X = [[α, γ], [−δ, β]] with α = (v,f), β = (v,e), γ = (v,f₁), δ = (v,e₁).
    // Elementary operations on X are transvections:
    //   row1 += k·row2  ↔ t(e, k e₁)     row2 += k·row1 ↔ t(f₁, k f)
    //   col2 += k·col1  ↔ t(f, k e₁)     col1 += k·col2 ↔ t(f₁, k e)
    #[derive(Clone, Copy)]
    enum Op {
        R12,
        R21,
        C21,
        C12,
    }
    let mut x = [[t.pair(v, &sp.f), t.pair(v, &sp.f1)], [-t.pair(v, &sp.e1), t.pair(v, &sp.e)]];
    let mut ops: Vec<(Op, BigInt)> = vec![];
    let apply = |x: &mut [[BigInt; 2]; 2], op: Op, k: BigInt, ops: &mut Vec<(Op, BigInt)>| {
        match op {
            Op::R12 => {
                for c in 0..2 {
                    let d = &k * &x[1][c];
                    x[0][c] += d;
                }
            }
            Op::R21 => {
                for c in 0..2 {
                    let d = &k * &x[0][c];
                    x[1][c] += d;
                }
            }
            Op::C21 => {
                for r in 0..2 {
                    let d = &k * &x[r][0];
                    x[r][1] += d;
                }
            }
            Op::C12 => {
                for r in 0..2 {
                    let d = &k * &x[r][1];
                    x[r][0] += d;
                }
            }
        }
        ops.push((op, k));
    };
    while !(x[1][0].is_zero() && x[0][1].is_zero()) {
        while !x[1][0].is_zero() {
            if x[0][0].is_zero() {
                apply(&mut x, Op::R12, BigInt::one(), &mut ops);
            }
            let q = x[1][0].div_floor(&x[0][0]);
            apply(&mut x, Op::R21, -q, &mut ops);
            if !x[1][0].is_zero() {
                let q = x[0][0].div_floor(&x[1][0]);
                apply(&mut x, Op::R12, -q, &mut ops);
            }
        }
        while !x[0][1].is_zero() {
            if x[0][0].is_zero() {
                apply(&mut x, Op::C12, BigInt::one(), &mut ops);
            }
            let q = x[0][1].div_floor(&x[0][0]);
            apply(&mut x, Op::C21, -q, &mut ops);
            if !x[0][1].is_zero() {
                let q = x[0][0].div_floor(&x[0][1]);
                apply(&mut x, Op::C12, -q, &mut ops);
            }
        }
    }
    // diag(a, d) · [[0,1],[−1,0]] moves everything off the diagonal.
    apply(&mut x, Op::C21, BigInt::one(), &mut ops);
    apply(&mut x, Op::C12, -BigInt::one(), &mut ops);
    apply(&mut x, Op::C21, BigInt::one(), &mut ops);
    let mut g = LatticeIsometry::identity(t);
    let scaled = |x: &[BigInt], k: &BigInt| x.iter().map(|c| c * k).collect::<Vec<_>>();
    for (op, k) in ops {
        if k.is_zero() {
            continue;
        }
        let (e, a) = match op {
            Op::R12 => (&sp.e, scaled(&sp.e1, &k)),
            Op::R21 => (&sp.f1, scaled(&sp.f, &k)),
            Op::C21 => (&sp.f, scaled(&sp.e1, &k)),
            Op::C12 => (&sp.f1, scaled(&sp.e, &k)),
        };
        g = g.then(&eichler_transvection(t, e, &a)?)?;
    }
    let img = g.apply(v);
    if !(t.pair(&img, &sp.e).is_zero() && t.pair(&img, &sp.f).is_zero()) {
        return Err(Error::Other("Eichler reduction failed".into()));
    }
    Ok((g, img))
}

#[derive(Clone, Debug)]
pub struct EichlerVerdict {
    pub equivalent: Option<bool>,
    pub reason: String,
    pub witness: Option<LatticeIsometry>,
}

/// Which discriminant classes are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscCondition {
    /// `[v/m] = [w/m]`.
    Equal,
    /// `[v/m] = h[w/m]` for some isometry h of A_T.
    Orbit,
}

/// Eichler's criterion, with a constructive witness when the planes are unimodular and `Equal` is used.
pub fn eichler_equivalent(t: &GramLattice, sp: &HyperbolicSplitting, v: &[BigInt], w: &[BigInt], cond: DiscCondition) -> Result<EichlerVerdict> {
    let no = |r: &str| Ok(EichlerVerdict { equivalent: Some(false), reason: r.into(), witness: None });
    for x in [v, w] {
        if !linalg::gcd_all(x).is_one() {
            return Err(Error::Invalid("vectors must be primitive".into()));
        }
    }
    if t.norm(v) != t.norm(w) {
        return no("different squares");
    }
    let m = t.divisibility(v)?;
    if t.divisibility(w)? != m {
        return no("different divisibility");
    }
    let same_class = v.iter().zip(w).all(|(a, b)| ((a - b) % &m).is_zero());
    let class_ok = if same_class {
        Some(true)
    } else if cond == DiscCondition::Equal {
        Some(false)
    } else {
        disc_orbit_contains(t, v, w, &m)?
    };
    match class_ok {
        Some(false) => return no("discriminant classes differ"),
        None => return Ok(EichlerVerdict { equivalent: None, reason: "discriminant orbit search exhausted its budget".into(), witness: None }),
        Some(true) => {}
    }
    let witness = if same_class && sp.n.is_one() { Some(eichler_chain(t, sp, v, w, &m)?) } else { None };
    Ok(EichlerVerdict { equivalent: Some(true), reason: "equal square, divisibility and discriminant class".into(), witness })
}

/// Builds g with g(v) = w: reduce both into the second plane, then the three-step chain.
fn eichler_chain(t: &GramLattice, sp: &HyperbolicSplitting, v: &[BigInt], w: &[BigInt], m: &BigInt) -> Result<LatticeIsometry> {
    let (fv, v1) = reduce_to_second_plane(t, sp, v)?;
    let (fw, w1) = reduce_to_second_plane(t, sp, w)?;
    let (d, e) = (&sp.f, &sp.e);
    let vbar = dual_partner(t, sp, &v1, m)?;
    let wbar = dual_partner(t, sp, &w1, m)?;
    let diff: Vec<BigInt> = v1.iter().zip(&w1).map(|(a, b)| {
        let x: BigInt = a - b;
        x / m
    }).collect();
    let k1 = eichler_transvection(t, e, &vbar)?;
    let k2 = eichler_transvection(t, d, &diff)?;
    let neg: Vec<BigInt> = wbar.iter().map(|x| -x).collect();
    let k3 = eichler_transvection(t, e, &neg)?;
    let g = fv.then(&k1)?.then(&k2)?.then(&k3)?.then(&fw.inverse())?;
    if g.apply(v) != w {
        return Err(Error::Other("Eichler chain does not map v to w".into()));
    }
    Ok(g)
}

/// An element orthogonal to the first plane pairing to m with `x` (x orthogonal to that plane).
fn dual_partner(t: &GramLattice, sp: &HyperbolicSplitting, x: &[BigInt], m: &BigInt) -> Result<Vec<BigInt>> {
    let perp = t.orthogonal_complement(&vec![sp.e.clone(), sp.f.clone()]);
    let vals: Vec<BigInt> = perp.rows.iter().map(|r| t.pair(x, r)).collect();
    // Extended gcd over the values.
    let mut coeffs = vec![BigInt::zero(); vals.len()];
    let mut g = BigInt::zero();
    for (i, a) in vals.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let eg = g.extended_gcd(a);
        for c in coeffs.iter_mut().take(i) {
            *c *= &eg.x;
        }
        coeffs[i] = eg.y.clone();
        g = eg.gcd;
    }
    if g.is_zero() || !(m % &g).is_zero() || g.abs() != m.abs() {
        return Err(Error::Invalid("divisibility changed under reduction".into()));
    }
    let s = m / &g;
    let mut out = vec![BigInt::zero(); t.rank()];
    for (c, r) in coeffs.iter().zip(&perp.rows) {
        for (o, y) in out.iter_mut().zip(r) {
            *o += &s * c * y;
        }
    }
    Ok(out)
}

/// Whether some isometry of A_T maps `[w/m]` to `[v/m]`; `None` if the search budget runs out.
fn disc_orbit_contains(t: &GramLattice, v: &[BigInt], w: &[BigInt], m: &BigInt) -> Result<Option<bool>> {
    let dm = discriminant_module(t)?;
    let to_q = |x: &[BigInt]| x.iter().map(|c| BigRational::new(c.clone(), m.clone())).collect::<Vec<_>>();
    let x = dm.coords(&to_q(v))?;
    let y = dm.coords(&to_q(w))?;
    Ok(fqm_maps(&dm.fqm, &y, &x, 2_000_000))
}

/// Searches an automorphism of `a` with `φ(y) = x`.
pub fn fqm_maps(a: &Fqm, y: &[i64], x: &[i64], budget: u64) -> Option<bool> {
    if a.qv(x) != a.qv(y) || a.elem_order(x) != a.elem_order(y) {
        return Some(false);
    }
    let n = a.ngens();
    let els = a.elements();
    let mut order: Vec<usize> = (0..n).filter(|&i| y[i] != 0).collect();
    order.extend((0..n).filter(|&i| y[i] == 0));
    let cands: Vec<Vec<&Elem>> = order.iter().map(|&i| els.iter().filter(|z| a.elem_order(z) == a.orders[i] && a.qv(z) == a.q[i]).collect()).collect();
    let first_free = order.iter().position(|&i| y[i] == 0).unwrap_or(n);
    let mut chosen: Vec<Elem> = vec![];
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(k: usize, a: &Fqm, order: &[usize], cands: &[Vec<&Elem>], chosen: &mut Vec<Elem>, y: &[i64], x: &[i64], first_free: usize, nodes: &mut u64, budget: u64) -> Option<bool> {
        if k == first_free {
            let mut img = a.zero();
            for (j, &i) in order.iter().enumerate().take(k) {
                img = a.add(&img, &a.smul(y[i], &chosen[j]));
            }
            if img != x {
                return Some(false);
            }
        }
        if k == order.len() {
            return Some(true);
        }
        let mut exhausted = false;
        for z in &cands[k] {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            let i = order[k];
            if (0..k).all(|j| a.bv(z, &chosen[j]) == a.b[i][order[j]]) {
                chosen.push((*z).clone());
                let r = rec(k + 1, a, order, cands, chosen, y, x, first_free, nodes, budget);
                chosen.pop();
                match r {
                    Some(true) => return Some(true),
                    None => exhausted = true,
                    Some(false) => {}
                }
                if exhausted {
                    return None;
                }
            }
        }
        Some(false)
    }
    rec(0, a, &order, &cands, &mut chosen, y, x, first_free, &mut nodes, budget)
}

/// Induced action on the discriminant group, as images of the Smith generators.
#[derive(Clone, Debug, Serialize)]
pub struct DiscAction {
    pub images: Vec<Elem>,
    pub trivial: bool,
}

pub fn discriminant_action(g: &LatticeIsometry) -> Result<DiscAction> {
    let dm = discriminant_module(&g.lattice)?;
    let mq = linalg::to_q(&g.matrix);
    let mut images = vec![];
    let mut trivial = true;
    for (k, y) in dm.gens.iter().enumerate() {
        let img: Vec<BigRational> = (0..mq.len()).map(|c| (0..y.len()).map(|i| &y[i] * &mq[i][c]).sum()).collect();
        let x = dm.coords(&img)?;
        let mut unit = vec![0; dm.fqm.ngens()];
        unit[k] = 1;
        if x != unit {
            trivial = false;
        }
        images.push(x);
    }
    Ok(DiscAction { images, trivial })
}

/// Extension of an isometry of L₂ = U³ ⊕ E8(-1)² ⊕ (-2) to the Mukai lattice.
#[derive(Clone, Debug)]
pub struct MukaiExtension {
    pub extension: LatticeIsometry,
    /// Rows of the Mukai lattice basis in the coordinates of L₂ ⊕ Zx.
    pub basis: QMat,
    pub s_preserved: bool,
}

pub fn extend_to_mukai(g: &LatticeIsometry) -> Result<MukaiExtension> {
    let l2 = catalog::l_n(2)?;
    if g.lattice.gram != l2.gram {
        return Err(Error::Invalid("expected an isometry of L_2 in its standard basis".into()));
    }
    let n = l2.rank();
    let x = catalog::rank_one(2);
    let sum = l2.oplus(&x);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut glue = vec![BigRational::zero(); n + 1];
    glue[n - 1] = half.clone();
    glue[n] = half;
    let ov = disc::overlattice_from_vectors(&sum, &[glue])?;
    let mut ext = linalg::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            ext[i][j] = g.matrix[i][j].clone();
        }
    }
    let binv = linalg::qinverse(&ov.basis).ok_or(Error::Degenerate)?;
    let mq = linalg::qmul(&linalg::qmul(&ov.basis, &linalg::to_q(&ext)), &binv);
    let m = linalg::from_q(&mq).ok_or_else(|| Error::NotIsometry("extension is not integral".into()))?;
    let extension = LatticeIsometry::new(&ov.lattice, m)?;
    // Compare S inside the common ambient L₂ ⊕ Zx.
    let s_small = fixed_sublattices(&l2, std::slice::from_ref(g))?.s;
    let s_big = fixed_sublattices(&ov.lattice, std::slice::from_ref(&extension))?.s;
    let lift_small: QMat = s_small.rows.iter().map(|r| r.iter().cloned().chain(std::iter::once(BigInt::zero())).map(BigRational::from_integer).collect()).collect();
    let lift_big = linalg::qmul(&linalg::to_q(&s_big.rows), &ov.basis);
    let s_preserved = same_span(&lift_small, &lift_big);
    Ok(MukaiExtension { extension, basis: ov.basis, s_preserved })
}

/// Equality of the Z-spans of two rational row sets.
pub fn same_span(a: &QMat, b: &QMat) -> bool {
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    let (_, d) = linalg::clear_denominators(&all);
    let scale = |m: &QMat| -> Mat { m.iter().map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect()).collect() };
    let (ia, ib) = (scale(a), scale(b));
    if ia.is_empty() || ib.is_empty() {
        return ia.is_empty() && ib.is_empty();
    }
    linalg::hnf_basis(&ia) == linalg::hnf_basis(&ib)
}

/// Induced Gram of a rational row set under an ambient rational Gram.
pub fn gram_of(rows: &QMat, ambient: &QMat) -> QMat {
    linalg::qmul(&linalg::qmul(rows, ambient), &linalg::transpose(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::v;
    use crate::niemeier::build_niemeier;

    #[test]
    fn identity_and_minus_identity() {
        let l = catalog::e_n(8);
        assert_eq!(LatticeIsometry::identity(&l).order().unwrap(), 1);
        assert_eq!(LatticeIsometry::minus_identity(&l).order().unwrap(), 2);
        let bad = linalg::from_i64(&[vec![1, 1], vec![0, 1]]);
        let err = LatticeIsometry::new(&catalog::a_n(2), bad).unwrap_err();
        assert!(matches!(err, Error::NotIsometry(s) if s.contains("entry")));
    }

    #[test]
    fn e8_cube_cycle() {
        let n3 = build_niemeier("N3").unwrap();
        let g = from_spec_rooted(&n3, &IsometrySpec::from_cycles(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!(g.order().unwrap(), 3);
        let fs = fixed_sublattices(&n3.lattice, &[g]).unwrap();
        assert_eq!((fs.t.rank(), fs.s.rank()), (8, 16));
    }

    #[test]
    fn glue_violations_reported() {
        let n5 = build_niemeier("N5").unwrap();
        // D12² with glue [12],[21]: swapping the components preserves the code.
        assert!(from_spec_rooted(&n5, &IsometrySpec::permutation(vec![1, 0])).is_ok());
        let n8 = build_niemeier("N8").unwrap();
        let err = from_spec_rooted(&n8, &IsometrySpec::permutation(vec![1, 0])).unwrap_err();
        assert!(matches!(err, Error::BadGlue(_)));
        let n6 = build_niemeier("N6").unwrap();
        // σ on A17 sends [31] to [15 1] = 5·[31].
        let spec = IsometrySpec { perm: vec![0, 1], diagram: vec![DiagramTag::Sigma, DiagramTag::Id], glue: vec![] };
        assert_eq!(from_spec_rooted(&n6, &spec).unwrap().order().unwrap(), 2);
        // A12² with glue [15]: the swap sends [15] to [51], not a codeword.
        let n10 = build_niemeier("N10").unwrap();
        let err = from_spec_rooted(&n10, &IsometrySpec::permutation(vec![1, 0])).unwrap_err();
        assert!(matches!(err, Error::BadGlue(s) if s.contains("[1, 5]")));
        let hp = HolyPair::new("N10").unwrap();
        let err = from_spec_holy(&hp, &IsometrySpec::permutation(vec![1, 0])).unwrap_err();
        assert!(matches!(err, Error::BadGlue(s) if s.contains("[1, 5]")));
    }

    #[test]
    fn eichler_laws() {
        let l = catalog::u().oplus(&catalog::u()).oplus(&catalog::e_n(8).negated());
        let e = v(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let a = v(&[0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 0, 0]);
        let b = v(&[0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0]);
        let ab: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ta = eichler_transvection(&l, &e, &a).unwrap();
        let tb = eichler_transvection(&l, &e, &b).unwrap();
        let tab = eichler_transvection(&l, &e, &ab).unwrap();
        assert_eq!(ta.then(&tb).unwrap(), tab);
        assert_eq!(ta.apply(&e), e);
        assert!(eichler_transvection(&l, &e, &vec![BigInt::zero(); 12]).unwrap().is_identity());
    }

    #[test]
    fn lemma_reduction_lands_in_second_plane() {
        let l = catalog::u().oplus(&catalog::u());
        let sp = HyperbolicSplitting::leading(&l, 0).unwrap();
        for vec in [[3i64, 5, 7, 2], [1, 0, 0, 0], [0, 4, 6, 0], [2, -3, 0, 5]] {
            let x = v(&vec);
            let (g, img) = reduce_to_second_plane(&l, &sp, &x).unwrap();
            assert_eq!(g.apply(&x), img);
            assert!(img[0].is_zero() && img[1].is_zero(), "{vec:?} -> {img:?}");
        }
        let a = v(&[1, 0, 0, 0]);
        let b = v(&[0, 0, 0, 1]);
        let r = eichler_equivalent(&l, &sp, &a, &b, DiscCondition::Equal).unwrap();
        assert_eq!(r.equivalent, Some(true));
        assert_eq!(r.witness.unwrap().apply(&a), b);
    }

    #[test]
    fn discriminant_actions() {
        let a2 = catalog::a_n(2);
        let act = discriminant_action(&LatticeIsometry::minus_identity(&a2)).unwrap();
        assert!(!act.trivial);
        assert!(discriminant_action(&LatticeIsometry::identity(&a2)).unwrap().trivial);
        let l2 = catalog::l_n(2).unwrap();
        assert!(discriminant_action(&LatticeIsometry::minus_identity(&l2)).unwrap().trivial);
    }

    #[test]
    fn mukai_extension() {
        let l2 = catalog::l_n(2).unwrap();
        let id = extend_to_mukai(&LatticeIsometry::identity(&l2)).unwrap();
        assert!(id.extension.is_identity());
        let (p, m) = id.extension.lattice.signature();
        assert_eq!((p, m, id.extension.lattice.det().abs()), (4, 20, BigInt::one()));
        let mut g = linalg::identity(23);
        for (i, row) in g.iter_mut().enumerate().skip(6).take(16) {
            row[i] = BigInt::from(-1);
        }
        let g = LatticeIsometry::new(&l2, g).unwrap();
        let ext = extend_to_mukai(&g).unwrap();
        assert!(ext.s_preserved);
        let s = fixed_sublattices(&ext.extension.lattice, &[ext.extension.clone()]).unwrap().s;
        assert_eq!(s.rank(), 16);
    }
}
