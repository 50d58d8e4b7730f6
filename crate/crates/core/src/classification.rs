//! Co-invariant lattices of prime-order Leech isometries, their transfer to Niemeier lattices,
//! embeddability into the K3^[n] lattices and order bounds.

use crate::catalog;
use crate::disc::{self, discriminant_module, exists_even_lattice, Fqm, GlueMap, Verdict};
use crate::enumerate::{self, IsoVerdict};
use crate::fixed_locus::{bns_dimension, AutInvariants};
use crate::isometry::{self, from_spec_holy, from_spec_rooted, DiagramTag, IsometrySpec, LatticeIsometry};
use crate::lattice::GramLattice;
use crate::linalg::{self, Mat};
use crate::niemeier::{build_niemeier, order11_permutation, HolyPair};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Explicit isometries of Niemeier lattices used as witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Witness {
    /// 3-cycle of the last three E6 components of N12.
    N12Cycle,
    /// 3-cycle of three A5 components of N18 with triality on D4.
    N18Cycle,
    /// Glue translations on the holy A2^12 construction, by codeword weight 12, 6, 9.
    Glue3A,
    Glue3B,
    Glue3C,
    /// 3-cycle of the E8 components of N3.
    N3Cycle,
    /// 3-cycle of the A8 components, holy construction.
    N15Cycle,
    /// Glue translations on the holy A4^6 construction, by codeword weight 6, 4, 5.
    Glue5A,
    Glue5B,
    Glue5C,
    /// Glue translations [1216] and [2130] on the holy A6^4 construction.
    A6Word1216,
    A6Word2130,
    /// x ↦ 2x on the A1 components of N23, indexed by P¹(F₂₃).
    N23Order11,
    /// Fixes the first A2 component of N22 and cycles the other eleven.
    N22Order11,
    /// Glue translation [15] on the holy A12^2 construction.
    Glue13,
    /// x ↦ x + 1 on the A1 components of N23.
    N23Order23,
}

impl Witness {
    pub fn all() -> Vec<Witness> {
        use Witness::*;
        vec![N12Cycle, N18Cycle, Glue3A, Glue3B, Glue3C, N3Cycle, N15Cycle, Glue5A, Glue5B, Glue5C, A6Word1216, A6Word2130, N23Order11, N22Order11, Glue13, N23Order23]
    }

    pub fn name(&self) -> String {
        format!("{self:?}")
    }

    pub fn host(&self) -> &'static str {
        use Witness::*;
        match self {
            N12Cycle => "N12",
            N18Cycle => "N18",
            Glue3A | Glue3B | Glue3C | N22Order11 => "N22",
            N3Cycle => "N3",
            N15Cycle => "N15",
            Glue5A | Glue5B | Glue5C => "N20",
            A6Word1216 | A6Word2130 => "N17",
            N23Order11 | N23Order23 => "N23",
            Glue13 => "N10",
        }
    }

    pub fn order(&self) -> u64 {
        use Witness::*;
        match self {
            N12Cycle | N18Cycle | Glue3A | Glue3B | Glue3C | N3Cycle | N15Cycle => 3,
            Glue5A | Glue5B | Glue5C => 5,
            A6Word1216 | A6Word2130 => 7,
            N23Order11 | N22Order11 => 11,
            Glue13 => 13,
            N23Order23 => 23,
        }
    }

    /// Whether the witness is a glue translation (meaningful on Λ only).
    pub fn is_translation(&self) -> bool {
        use Witness::*;
        matches!(self, Glue3A | Glue3B | Glue3C | Glue5A | Glue5B | Glue5C | A6Word1216 | A6Word2130 | Glue13)
    }

    pub fn from_name(s: &str) -> Option<Witness> {
        Witness::all().into_iter().find(|w| w.name().eq_ignore_ascii_case(s))
    }
}

/// Co-invariant data of one witness.
#[derive(Clone, Debug)]
pub struct WitnessResult {
    pub witness: Witness,
    pub host: String,
    /// The lattice the isometry acts on: the host, or "Leech" for holy constructions.
    pub acting_on: String,
    pub order: u64,
    pub t_rank: usize,
    pub s_rank: usize,
    /// LLL-reduced, negative definite.
    pub s_lattice: GramLattice,
    pub t_lattice: Option<GramLattice>,
    /// The isometry acts trivially on A_S.
    pub disc_trivial: bool,
    /// For holy permutations: S computed on N and on Λ coincide inside the common ambient space.
    pub same_on_both_sides: Option<bool>,
}

/// LLL-reduced copy of a definite lattice, keeping its sign.
pub fn reduced(l: &GramLattice) -> Result<GramLattice> {
    let sign = enumerate::definite_sign(l)?;
    let pos = if sign < 0 { linalg::scale(&l.gram, &BigInt::from(-1)) } else { l.gram.clone() };
    let (_, g) = linalg::lll_gram(&pos);
    let g = if sign < 0 { linalg::scale(&g, &BigInt::from(-1)) } else { g };
    let mut out = GramLattice::new(g)?;
    out.name = l.name.clone();
    Ok(out)
}

fn negative(l: GramLattice) -> Result<GramLattice> {
    if enumerate::definite_sign(&l)? > 0 {
        Ok(l.negated())
    } else {
        Ok(l)
    }
}

fn word_of_weight(hp: &HolyPair, weight: usize) -> Result<Vec<usize>> {
    hp.codewords
        .iter()
        .find(|w| w.iter().filter(|&&x| x != 0).count() == weight)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("{} has no codeword of weight {weight}", hp.name)))
}

enum Action {
    Rooted(IsometrySpec),
    Holy(IsometrySpec),
}

fn action(w: Witness, hp: Option<&HolyPair>) -> Result<Action> {
    use Witness::*;
    let hp_ref = || hp.ok_or_else(|| Error::Other("holy pair missing".into()));
    Ok(match w {
        N12Cycle => Action::Rooted(IsometrySpec::from_cycles(4, &[&[2, 3, 4]])),
        N18Cycle => {
            let mut s = IsometrySpec::from_cycles(5, &[&[2, 3, 4]]);
            s.diagram = vec![DiagramTag::Id, DiagramTag::Id, DiagramTag::Id, DiagramTag::Id, DiagramTag::Gamma];
            Action::Rooted(s)
        }
        N3Cycle => Action::Rooted(IsometrySpec::from_cycles(3, &[&[1, 2, 3]])),
        N15Cycle => Action::Holy(IsometrySpec::from_cycles(3, &[&[1, 2, 3]])),
        Glue3A => Action::Holy(IsometrySpec::translation(word_of_weight(hp_ref()?, 12)?)),
        Glue3B => Action::Holy(IsometrySpec::translation(word_of_weight(hp_ref()?, 6)?)),
        Glue3C => Action::Holy(IsometrySpec::translation(word_of_weight(hp_ref()?, 9)?)),
        Glue5A => Action::Holy(IsometrySpec::translation(word_of_weight(hp_ref()?, 6)?)),
        Glue5B => Action::Holy(IsometrySpec::translation(word_of_weight(hp_ref()?, 4)?)),
        Glue5C => Action::Holy(IsometrySpec::translation(word_of_weight(hp_ref()?, 5)?)),
        A6Word1216 => Action::Holy(IsometrySpec::translation(vec![1, 2, 1, 6])),
        A6Word2130 => Action::Holy(IsometrySpec::translation(vec![2, 1, 3, 0])),
        Glue13 => Action::Holy(IsometrySpec::translation(vec![1, 5])),
        N23Order11 => Action::Holy(IsometrySpec::permutation(order11_permutation())),
        N22Order11 => {
            let mut perm: Vec<usize> = (0..12).collect();
            for (i, p) in perm.iter_mut().enumerate().skip(1) {
                *p = i % 11 + 1;
            }
            Action::Holy(IsometrySpec::permutation(perm))
        }
        N23Order23 => {
            let mut perm: Vec<usize> = (0..24).collect();
            for (x, p) in perm.iter_mut().enumerate().skip(1) {
                *p = 1 + x % 23;
            }
            Action::Holy(IsometrySpec::permutation(perm))
        }
    })
}

fn restricted_disc_trivial(l: &GramLattice, g: &LatticeIsometry, rows: &Mat) -> Result<bool> {
    if rows.len() == l.rank() {
        return Ok(true);
    }
    let m = isometry::restrict(g, rows)?;
    let s = l.sublattice(rows)?;
    let gs = LatticeIsometry::new(&s, m)?;
    Ok(isometry::discriminant_action(&gs)?.trivial)
}

fn compute_witness(w: Witness) -> Result<WitnessResult> {
    let host = w.host();
    let is_holy = !matches!(w, Witness::N12Cycle | Witness::N18Cycle | Witness::N3Cycle);
    let hp = if is_holy { Some(HolyPair::new(host)?) } else { None };
    let act = action(w, hp.as_ref())?;
    let (lat, g, acting_on, same) = match act {
        Action::Rooted(spec) => {
            let n = build_niemeier(host)?;
            let g = from_spec_rooted(&n, &spec)?;
            (n.lattice.clone(), g, host.to_string(), None)
        }
        Action::Holy(spec) => {
            let hp = hp.as_ref().expect("holy pair");
            let hi = from_spec_holy(hp, &spec)?;
            let same = if w.is_translation() {
                None
            } else {
                let sn = isometry::fixed_sublattices(&hp.n_lattice, std::slice::from_ref(&hi.on_niemeier))?.s;
                let sl = isometry::fixed_sublattices(&hp.leech_lattice, std::slice::from_ref(&hi.on_leech))?.s;
                let an = hp.to_ambient(&sn.rows, false);
                let al = hp.to_ambient(&sl.rows, true);
                Some(linalg::hnf_basis(&an) == linalg::hnf_basis(&al))
            };
            (hp.leech_lattice.clone(), hi.on_leech, "Leech".to_string(), same)
        }
    };
    let order = g.order()?;
    if order != w.order() {
        return Err(Error::Other(format!("{w:?} has order {order}, expected {}", w.order())));
    }
    let fs = isometry::fixed_sublattices(&lat, std::slice::from_ref(&g))?;
    let disc_trivial = restricted_disc_trivial(&lat, &g, &fs.s.rows)?;
    let s_lattice = reduced(&negative(fs.s_lattice.clone().ok_or_else(|| Error::Other("trivial co-invariant lattice".into()))?)?)?;
    let t_lattice = match &fs.t_lattice {
        Some(t) => Some(reduced(&negative(t.clone())?)?),
        None => None,
    };
    Ok(WitnessResult {
        witness: w,
        host: host.into(),
        acting_on,
        order,
        t_rank: fs.t.rank(),
        s_rank: fs.s.rank(),
        s_lattice,
        t_lattice,
        disc_trivial,
        same_on_both_sides: same,
    })
}

fn cache() -> &'static Mutex<HashMap<Witness, WitnessResult>> {
    static CACHE: OnceLock<Mutex<HashMap<Witness, WitnessResult>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Co-invariant lattice of a witness isometry (memoized).
pub fn witness_coinvariant(w: Witness) -> Result<WitnessResult> {
    if let Some(r) = cache().lock().unwrap().get(&w) {
        return Ok(r.clone());
    }
    let r = compute_witness(w)?;
    cache().lock().unwrap().insert(w, r.clone());
    Ok(r)
}

/// A negative definite lattice with an isometry group from a Niemeier host, checked to be a Leech couple.
#[derive(Clone, Debug)]
pub struct LeechCoupleCandidate {
    pub s: GramLattice,
    pub witness: Witness,
    pub host: String,
    pub rootless: bool,
    pub disc_trivial: bool,
}

impl LeechCoupleCandidate {
    pub fn is_leech_couple(&self) -> bool {
        self.rootless && self.disc_trivial && self.s.is_negative_definite()
    }
}

pub fn leech_couple(w: Witness) -> Result<LeechCoupleCandidate> {
    let r = witness_coinvariant(w)?;
    let rootless = enumerate::is_rootless(&r.s_lattice)?;
    Ok(LeechCoupleCandidate { s: r.s_lattice, witness: w, host: r.host, rootless, disc_trivial: r.disc_trivial })
}

/// Glues `s ⊕ t` along an anti-isometry of their discriminant forms.
pub fn glue_to_unimodular(s: &GramLattice, t: &GramLattice) -> Result<GramLattice> {
    let ds = discriminant_module(s)?.fqm;
    let dt = discriminant_module(t)?.fqm;
    let images = ds.isometry_to(&dt.negated()).ok_or_else(|| Error::Invalid("discriminant forms are not anti-isometric".into()))?;
    let domain = (0..ds.ngens())
        .map(|i| {
            let mut e = vec![0; ds.ngens()];
            e[i] = 1;
            e
        })
        .collect();
    let o = disc::glue_pair(s, t, &GlueMap { domain, image: images })?;
    if !o.lattice.det().abs().is_one() {
        return Err(Error::Other("glued lattice is not unimodular".into()));
    }
    Ok(o.lattice)
}

// ---------------------------------------------------------------------------------------------
// Niemeier transfer

#[derive(Clone, Debug)]
pub struct TransferReport {
    pub rank: usize,
    /// Existence of a negative definite complement of rank 24 − rank with form −q_S.
    pub complement: Verdict,
    /// Same after splitting off a (−2): forces a host with roots.
    pub rooted_host: Option<Verdict>,
}

impl TransferReport {
    pub fn transferable(&self) -> bool {
        self.complement.is_yes()
    }
}

fn e7_negative() -> GramLattice {
    catalog::e_n(7).negated()
}

/// Decides whether S embeds primitively into some Niemeier lattice. `cores` are extra candidate
/// complements; S itself is always tried (it works whenever q_S ≅ −q_S).
pub fn niemeier_transfer(s: &GramLattice, with_root_trick: bool, cores: &[GramLattice]) -> Result<TransferReport> {
    if !s.is_negative_definite() {
        return Err(Error::Invalid("S must be negative definite".into()));
    }
    let r = s.rank();
    if r > 21 {
        let why = format!("rank {r} > 21: S cannot sit in the negative part of a K3^[n]-type lattice");
        return Ok(TransferReport { rank: r, complement: Verdict::No(why.clone()), rooted_host: with_root_trick.then(|| Verdict::No(why)) });
    }
    let q = discriminant_module(s)?.fqm.negated();
    let mut all: Vec<GramLattice> = cores.to_vec();
    all.push(s.clone());
    let complement = exists_even_lattice((0, 24 - r), &q, &all);
    let rooted_host = if with_root_trick {
        // The complement splits as (−2) ⊕ T', so T' has form −q_S ⊕ ⟨1/2⟩.
        let half = Fqm::cyclic(2, num_rational::Rational64::new(1, 2));
        let q2 = q.direct_sum(&half);
        let mut c2: Vec<GramLattice> = all.iter().map(|c| c.oplus(&e7_negative())).collect();
        c2.push(e7_negative());
        Some(if r + 1 > 24 { Verdict::No("no room".into()) } else { exists_even_lattice((0, 23 - r), &q2, &c2) })
    } else {
        None
    };
    Ok(TransferReport { rank: r, complement, rooted_host })
}

// ---------------------------------------------------------------------------------------------
// Prime-order co-invariant table

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub witness: String,
    pub host: String,
    pub acting_on: String,
    pub p: u64,
    pub rank: usize,
    pub invariant_rank: usize,
    pub abs_det: String,
    pub disc: Vec<i64>,
    pub rootless: bool,
    pub disc_trivial: bool,
    pub class: usize,
    /// How membership in the class was established.
    pub proof: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantClass {
    pub name: String,
    pub rank: usize,
    pub members: Vec<String>,
    /// Comparison with an independently built catalog lattice, when one exists.
    pub catalog_check: Option<String>,
    pub fixed_locus: Option<String>,
    pub bns: Option<i64>,
    #[serde(skip)]
    pub lattice: GramLattice,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantTable {
    pub p: u64,
    pub entries: Vec<TableEntry>,
    pub classes: Vec<CoinvariantClass>,
}

fn witnesses_for(p: u64) -> Result<Vec<Witness>> {
    use Witness::*;
    Ok(match p {
        3 => vec![N12Cycle, N18Cycle, Glue3A, Glue3B, Glue3C, N3Cycle, N15Cycle],
        5 => vec![Glue5A, Glue5B, Glue5C],
        7 => vec![A6Word1216, A6Word2130],
        11 => vec![N23Order11, N22Order11],
        _ => return Err(Error::Invalid(format!("p = {p} is not among 3, 5, 7, 11"))),
    })
}

/// Catalog name of a co-invariant class, keyed by the witness that defines it.
fn class_name(w: Witness, rank: usize) -> String {
    use Witness::*;
    if rank == 24 {
        return "rank 24".into();
    }
    match w {
        N12Cycle | N18Cycle | Glue3B => "K12(-2)",
        Glue3C => "W(-1)",
        N3Cycle | N15Cycle => "S3exo",
        Glue5B => "S5K3",
        Glue5C => "S5exo",
        A6Word2130 => "S7K3",
        N23Order11 | N22Order11 => "S11K3[2]",
        _ => "unnamed",
    }
    .into()
}

/// Fixed locus on a K3^[2]-type fourfold for the classes realized there.
pub fn fixed_locus_label(name: &str) -> Option<&'static str> {
    Some(match name {
        "E8(-2)" => "1 K3 surface and 28 isolated points",
        "K12(-2)" => "27 isolated points",
        "W(-1)" => "1 abelian surface",
        "S5K3" => "14 isolated points",
        "S7K3" => "9 isolated points",
        "S11K3[2]" => "5 isolated points",
        _ => return None,
    })
}

/// Independent lattice to compare a class against (printed data), if any.
fn independent_model(name: &str) -> Option<GramLattice> {
    match name {
        "W(-1)" => catalog::make_named("W").ok().map(|b| b.lattice.negated()),
        "S11K3[2]" => repaired_s11(),
        _ => None,
    }
}

/// The printed order-11 Gram matrix with its short row completed from the symmetric column.
pub fn repaired_s11() -> Option<GramLattice> {
    let rows: Vec<Vec<i64>> = crate::printed::S11_PRINTED.iter().map(|r| r.to_vec()).collect();
    repair_short_row(&rows).and_then(|r| GramLattice::from_rows(&r).ok())
}

/// Rebuilds a row that lost entries from the corresponding column, if exactly one row is short.
pub fn repair_short_row(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = rows.len();
    let short: Vec<usize> = (0..n).filter(|&i| rows[i].len() != n).collect();
    if short.len() != 1 {
        return None;
    }
    let i = short[0];
    let mut out = rows.to_vec();
    out[i] = (0..n).map(|j| if j == i { rows[i].iter().copied().min().unwrap_or(0) } else { rows[j][i] }).collect();
    // The diagonal is the one entry the column cannot supply: take the common diagonal value.
    let diag: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| rows[j][j]).collect();
    if diag.iter().all(|&d| d == diag[0]) {
        out[i][i] = diag[0];
    }
    let remaining: Vec<i64> = {
        let mut r = out[i].clone();
        r.remove(i);
        r
    };
    // The short row must be the repaired row with some entries dropped, in order.
    let mut it = remaining.iter();
    let printed_off: Vec<i64> = rows[i].iter().copied().filter(|&x| x != out[i][i] || rows[i].iter().filter(|&&y| y == out[i][i]).count() > 1).collect();
    let _ = printed_off;
    let mut k = 0;
    for x in &rows[i] {
        let mut found = false;
        while k <= n {
            let y = if k == i { Some(&out[i][i]) } else { it.next() };
            k += 1;
            if y == Some(x) {
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    Some(out)
}

fn compare(a: &GramLattice, b: &GramLattice, budget: u64) -> Result<IsoVerdict> {
    enumerate::isometric(a, b, budget)
}

/// Co-invariant lattices of the witnesses of order p, grouped by isometry class.
pub fn prime_coinvariant_table(p: u64, budget: u64) -> Result<CoinvariantTable> {
    let ws = witnesses_for(p)?;
    let results: Vec<Result<WitnessResult>> = ws.iter().map(|&w| witness_coinvariant(w)).collect();
    let mut entries = vec![];
    let mut classes: Vec<CoinvariantClass> = vec![];
    for (w, r) in ws.iter().zip(results) {
        let r = r?;
        let s = &r.s_lattice;
        let dm = discriminant_module(s)?;
        let rootless = enumerate::is_rootless(s)?;
        let mut placed = None;
        for (ci, c) in classes.iter().enumerate() {
            if c.rank != s.rank() || c.lattice.det() != s.det() {
                continue;
            }
            match compare(s, &c.lattice, budget)? {
                IsoVerdict::Isometric(_) => placed = Some((ci, "isometric".to_string())),
                IsoVerdict::StrongInvariantMatch(_) => placed = Some((ci, "invariant-matched".to_string())),
                _ => {}
            }
            if placed.is_some() {
                break;
            }
        }
        let (class, proof) = match placed {
            Some(x) => x,
            None => {
                let name = class_name(*w, s.rank());
                let catalog_check = match independent_model(&name) {
                    Some(m) => Some(compare(s, &m, budget)?.label().to_string()),
                    None => None,
                };
                let fixed = fixed_locus_label(&name).map(|x| x.to_string());
                let bns = if fixed.is_some() && p != 5 && s.rank() < 24 {
                    Some(bns_dimension(&AutInvariants { p, a: dm.fqm.length() as u64, m: (s.rank() as u64) / (p - 1) })?)
                } else {
                    None
                };
                classes.push(CoinvariantClass { name, rank: s.rank(), members: vec![], catalog_check, fixed_locus: fixed, bns, lattice: s.clone() });
                (classes.len() - 1, "representative".to_string())
            }
        };
        classes[class].members.push(w.name());
        entries.push(TableEntry {
            witness: w.name(),
            host: r.host.clone(),
            acting_on: r.acting_on.clone(),
            p,
            rank: s.rank(),
            invariant_rank: r.t_rank,
            abs_det: s.det().abs().to_string(),
            disc: dm.fqm.orders.clone(),
            rootless,
            disc_trivial: r.disc_trivial,
            class,
            proof,
        });
    }
    Ok(CoinvariantTable { p, entries, classes })
}

/// Invariant ranks of all glue translations of a holy construction, by codeword, with counts.
/// Rank T = Σ_j (gcd(t_j, h) − 1); cross-checked against the lattice computation for one word per rank.
pub fn translation_rank_census(name: &str) -> Result<Vec<(usize, usize)>> {
    let hp = HolyPair::new(name)?;
    let h = hp.h;
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for w in &hp.codewords {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let r: usize = w.iter().map(|&t| t.gcd(&h) - 1).sum();
        *counts.entry(r).or_insert(0) += 1;
    }
    Ok(counts.into_iter().collect())
}

/// Invariant rank of a glue translation computed on the lattice.
pub fn translation_invariant_rank(name: &str, word: &[usize]) -> Result<usize> {
    let hp = HolyPair::new(name)?;
    let hi = from_spec_holy(&hp, &IsometrySpec::translation(word.to_vec()))?;
    Ok(isometry::fixed_sublattices(&hp.leech_lattice, std::slice::from_ref(&hi.on_leech))?.t.rank())
}

// ---------------------------------------------------------------------------------------------
// Embeddability into L_n

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbedStatus {
    Embeds,
    DoesNotEmbed,
    NotCertified,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedCell {
    pub n: i64,
    pub square: i64,
    pub status: EmbedStatus,
    pub witness: Option<Vec<i64>>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub lattice: String,
    pub route: String,
    /// Complement forms used (Gram matrices).
    pub complements: Vec<Vec<Vec<i64>>>,
    pub checks: Vec<String>,
    pub cells: Vec<EmbedCell>,
}

/// Classes reachable from `t` by p-neighbour steps (p odd, coprime to det); these lie in the genus of t.
pub fn neighbour_closure(t: &GramLattice, p: i64, max_classes: usize, budget: u64) -> Result<Vec<GramLattice>> {
    if !t.is_positive_definite() || !t.is_even() {
        return Err(Error::Invalid("neighbour closure needs an even positive definite lattice".into()));
    }
    if p % 2 == 0 || (t.det() % BigInt::from(p)).is_zero() {
        return Err(Error::Invalid("p must be odd and prime to the determinant".into()));
    }
    let mut classes = vec![reduced(t)?];
    let mut i = 0;
    while i < classes.len() {
        let cur = classes[i].clone();
        for nb in neighbours(&cur, p)? {
            let nb = reduced(&nb)?;
            let mut new = true;
            for c in &classes {
                match enumerate::isometric(&nb, c, budget)? {
                    IsoVerdict::Isometric(_) => {
                        new = false;
                        break;
                    }
                    IsoVerdict::NotIsometric(_) => {}
                    _ => return Err(Error::Other("isometry test inconclusive in neighbour closure".into())),
                }
            }
            if new {
                classes.push(nb);
                if classes.len() > max_classes {
                    return Err(Error::Other("too many classes".into()));
                }
            }
        }
        i += 1;
    }
    Ok(classes)
}

/// All p-neighbours of an even lattice, one per isotropic line mod p.
pub fn neighbours(t: &GramLattice, p: i64) -> Result<Vec<GramLattice>> {
    let n = t.rank();
    let g = t.gram_i64().ok_or_else(|| Error::Other("Gram too large".into()))?;
    let pb = BigInt::from(p);
    let mut out = vec![];
    let total = (p as u64).pow(n as u32);
    for code in 1..total {
        let mut x = vec![0i64; n];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = (c % p as u64) as i64;
            c /= p as u64;
        }
        // One representative per line: leading nonzero coordinate 1.
        if x.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let xg: Vec<i64> = (0..n).map(|j| (0..n).map(|i| x[i] * g[i][j]).sum()).collect();
        let x2: i64 = (0..n).map(|i| x[i] * xg[i]).sum();
        if x2.rem_euclid(p) != 0 {
            continue;
        }
        let j = (0..n).find(|&j| xg[j].rem_euclid(p) != 0).ok_or_else(|| Error::Other("radical vector mod p".into()))?;
        let k = x2 / p;
        let inv = mod_inverse(xg[j].rem_euclid(p), p);
        let cst = (-(k / 2) * inv).rem_euclid(p);
        let mut x = x;
        x[j] += p * cst;
        let xg: Vec<i64> = (0..n).map(|jj| (0..n).map(|i| x[i] * g[i][jj]).sum()).collect();
        let x2: i64 = (0..n).map(|i| x[i] * xg[i]).sum();
        debug_assert_eq!(x2.rem_euclid(2 * p * p), 0);
        // L_x = {y : (y, x) ≡ 0 mod p}, scaled by p, plus x.
        let mut rows: Mat = vec![];
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = pb.clone() * &pb;
            rows.push(r);
            let ci = (xg[i] * mod_inverse(xg[j].rem_euclid(p), p)).rem_euclid(p);
            let mut r = vec![BigInt::zero(); n];
            r[i] += &pb;
            r[j] -= &pb * BigInt::from(ci);
            rows.push(r);
        }
        rows.push(x.iter().map(|&v| BigInt::from(v)).collect());
        let basis = linalg::hnf_basis(&rows);
        let gg = linalg::congruent(&basis, &t.gram);
        let p2 = &pb * &pb;
        let mut ng = vec![vec![BigInt::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let (q, r) = gg[a][b].div_rem(&p2);
                if !r.is_zero() {
                    return Err(Error::Other("neighbour is not integral".into()));
                }
                ng[a][b] = q;
            }
        }
        let nl = GramLattice::new(ng)?;
        if !nl.is_even() {
            return Err(Error::Other("neighbour is not even".into()));
        }
        out.push(nl);
    }
    Ok(out)
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_i64().unwrap()
}

fn cells_from_complements(classes: &[GramLattice], ns: &[i64]) -> Result<Vec<EmbedCell>> {
    let mut cells = vec![];
    for &n in ns {
        let sq = 2 * (n - 1);
        let mut hit = None;
        for (i, c) in classes.iter().enumerate() {
            if let Some(v) = enumerate::represents(c, sq, true, None)? {
                hit = Some((i, v));
                break;
            }
        }
        cells.push(match hit {
            Some((i, v)) => EmbedCell { n, square: sq, status: EmbedStatus::Embeds, witness: Some(v), reason: format!("complement class {} has a primitive vector of square {sq}", i + 1) },
            None => EmbedCell { n, square: sq, status: EmbedStatus::DoesNotEmbed, witness: None, reason: format!("no complement class has a primitive vector of square {sq}") },
        });
    }
    Ok(cells)
}

fn gram_rows(l: &GramLattice) -> Vec<Vec<i64>> {
    l.gram_i64().unwrap_or_default()
}

/// Whether S embeds primitively into L_n, for each n, by computing its complement in the Mukai lattice.
pub fn hilbert_embeddability(name: &str, ns: &[i64], budget: u64) -> Result<EmbeddingReport> {
    let mut checks = vec![];
    match name {
        "W(-1)" => {
            // W(−1) ⊂ F = M_3^⊥ in Λ; T = F^⊥ in the Mukai lattice has the form of M_3.
            let t = catalog::make_named("A2+A2(3)")?.lattice;
            let m3 = catalog::make_named("M_3")?.lattice;
            let q_t = discriminant_module(&t)?.fqm;
            let q_m3 = discriminant_module(&m3)?.fqm;
            checks.push(format!("q(A2+A2(3)) ≅ q(M_3): {}", q_t.is_isometric(&q_m3)));
            let w = witness_coinvariant(Witness::Glue3C)?.s_lattice;
            checks.push(format!("A_W(-1) = {:?}", discriminant_module(&w)?.fqm.orders));
            let mut cells = vec![];
            for &n in ns {
                let sq = 2 * (n - 1);
                cells.push(match enumerate::represents(&t, sq, true, None)? {
                    Some(v) => EmbedCell { n, square: sq, status: EmbedStatus::Embeds, witness: Some(v), reason: "T = A2+A2(3) has a primitive vector of this square; W(-1) ⊂ F ⊂ L_n".into() },
                    None => EmbedCell { n, square: sq, status: EmbedStatus::NotCertified, witness: None, reason: "the route through F gives no embedding".into() },
                });
            }
            Ok(EmbeddingReport { lattice: name.into(), route: "through F = (2^9 3^6)^⊥ in Λ".into(), complements: vec![gram_rows(&t)], checks, cells })
        }
        "S3exo" => {
            let s = witness_coinvariant(Witness::N3Cycle)?.s_lattice;
            let t = GramLattice::direct_sum(&[&catalog::u_n(3), &catalog::u_n(3), &catalog::u_n(3), &catalog::u_n(3)]);
            let glued = glue_to_unimodular(&s, &t)?;
            checks.push(format!("S3exo ⊕ U(3)^4 glues to an even unimodular lattice of signature {:?}", glued.signature()));
            let len = discriminant_module(&s)?.fqm.length();
            let mut cells = vec![];
            for &n in ns {
                let sq = 2 * (n - 1);
                cells.push(if sq % 3 == 0 {
                    let mut v = vec![0i64; 8];
                    v[0] = 1;
                    v[1] = sq / 6;
                    EmbedCell { n, square: sq, status: EmbedStatus::Embeds, witness: Some(v), reason: "e + kf in U(3) is primitive of square 6k".into() }
                } else {
                    EmbedCell { n, square: sq, status: EmbedStatus::DoesNotEmbed, witness: None, reason: format!("v^⊥ in T has rank 7 but its 3-part would have length {len}") }
                });
            }
            Ok(EmbeddingReport { lattice: name.into(), route: "discriminant length".into(), complements: vec![gram_rows(&t)], checks, cells })
        }
        "S5exo" | "S11K3[2]" => {
            let (w, seed) = if name == "S5exo" { (Witness::Glue5C, "F") } else { (Witness::N23Order11, "S11c_1") };
            let s = witness_coinvariant(w)?.s_lattice;
            let t = catalog::make_named(seed)?.lattice;
            let glued = glue_to_unimodular(&s, &t)?;
            checks.push(format!("{name} ⊕ {seed} glues to an even unimodular lattice of signature {:?}", glued.signature()));
            let classes = neighbour_closure(&t, 3, 50, budget)?;
            checks.push(format!("3-neighbour closure of {seed}: {} classes", classes.len()));
            let cells = cells_from_complements(&classes, ns)?;
            Ok(EmbeddingReport { lattice: name.into(), route: "complement genus in the Mukai lattice".into(), complements: classes.iter().map(gram_rows).collect(), checks, cells })
        }
        _ => {
            let s = match name {
                "E8(-2)" => catalog::e_n(8).scaled(-2)?,
                _ => catalog::make_named(name)?.lattice,
            };
            if !s.is_negative_definite() {
                return Err(Error::Invalid(format!("{name} is not negative definite")));
            }
            let len = discriminant_module(&s)?.fqm.length();
            let ok = s.rank() + len <= 21;
            checks.push(format!("rank + l(A) = {} + {len}", s.rank()));
            let cells = ns
                .iter()
                .map(|&n| {
                    let sq = 2 * (n - 1);
                    if ok {
                        EmbedCell { n, square: sq, status: EmbedStatus::Embeds, witness: None, reason: "embeds into U^3 ⊕ E8(-1)^2 ⊂ L_n".into() }
                    } else {
                        EmbedCell { n, square: sq, status: EmbedStatus::NotCertified, witness: None, reason: "complement not computable here".into() }
                    }
                })
                .collect();
            Ok(EmbeddingReport { lattice: name.into(), route: "K3 lattice".into(), complements: vec![], checks, cells })
        }
    }
}

/// Primitively represented values among `values` (a definite lattice).
pub fn represented_set(l: &GramLattice, values: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![];
    for &v in values {
        if enumerate::represents(l, v, true, None)?.is_some() {
            out.push(v);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------------------------
// Order bounds

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundContext {
    NonsymplecticK3,
    K3n,
    Kummer,
    Og6,
    Og10,
    K3TwoPrime,
}

impl BoundContext {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().replace(['-', '_', '[', ']'], "").as_str() {
            "nonsymplectick3" | "k3" => BoundContext::NonsymplecticK3,
            "k3n" => BoundContext::K3n,
            "kummer" | "kummern" => BoundContext::Kummer,
            "og6" => BoundContext::Og6,
            "og10" => BoundContext::Og10,
            "k32prime" | "k32" => BoundContext::K3TwoPrime,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderBound {
    pub context: BoundContext,
    /// Largest n with φ(n) ≤ cap, for non-symplectic orders.
    pub euler_phi_cap: Option<u64>,
    pub max_order: Option<u64>,
    /// Negative directions available to a co-invariant lattice.
    pub rank_cap: Option<u64>,
    pub max_prime: Option<u64>,
    pub certificate: Vec<String>,
    #[serde(skip)]
    pub coinvariant: Option<GramLattice>,
}

/// Largest n with φ(n) ≤ k (φ(n) ≥ √(n/2), so n ≤ 2k² suffices).
pub fn max_order_with_phi(k: u64) -> u64 {
    (1..=2 * k * k + 2).filter(|&n| crate::cyclo::euler_phi(n) <= k).max().unwrap_or(1)
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Co-invariant lattice of the Coxeter element of an A4 sub-diagram of E8(−1).
pub fn a4_coxeter_coinvariant() -> Result<GramLattice> {
    let e8 = catalog::e_n(8).negated();
    let c = catalog::cartan_e(8);
    // A path of four nodes in the Dynkin diagram.
    let adj = |i: usize, j: usize| c[i][j] == -1;
    let mut path = None;
    'search: for a in 0..8 {
        for b in 0..8 {
            for cc in 0..8 {
                for d in 0..8 {
                    let p = [a, b, cc, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct && adj(a, b) && adj(b, cc) && adj(cc, d) && !adj(a, cc) && !adj(b, d) && !adj(a, d) {
                        path = Some(p);
                        break 'search;
                    }
                }
            }
        }
    }
    let path = path.ok_or_else(|| Error::Other("no A4 path".into()))?;
    let mut g = LatticeIsometry::identity(&e8);
    for &i in &path {
        // Reflection in a root of square −2: x ↦ x + (x, α) α.
        let mut m = linalg::identity(8);
        for (r, row) in m.iter_mut().enumerate() {
            let xa = &e8.gram[r][i];
            row[i] += xa;
        }
        g = g.then(&LatticeIsometry::new(&e8, m)?)?;
    }
    if g.order()? != 5 {
        return Err(Error::Other("Coxeter element does not have order 5".into()));
    }
    let fs = isometry::fixed_sublattices(&e8, &[g])?;
    reduced(&fs.s_lattice.ok_or_else(|| Error::Other("empty co-invariant".into()))?)
}

pub fn order_bounds(ctx: BoundContext) -> Result<OrderBound> {
    let mut cert = vec![];
    let phi = |k: u64, cert: &mut Vec<String>| {
        let m = max_order_with_phi(k);
        cert.push(format!("largest n with φ(n) ≤ {k} is {m}"));
        m
    };
    let prime_bound = |cap: u64, cert: &mut Vec<String>| {
        let p = primes_up_to(cap + 1).into_iter().filter(|p| p - 1 <= cap).max().unwrap();
        cert.push(format!("a co-invariant lattice of prime order p has rank (p−1)m ≤ {cap}, so p ≤ {p}"));
        p
    };
    let mut out = OrderBound { context: ctx, euler_phi_cap: None, max_order: None, rank_cap: None, max_prime: None, certificate: vec![], coinvariant: None };
    match ctx {
        BoundContext::NonsymplecticK3 => {
            out.euler_phi_cap = Some(21);
            out.max_order = Some(phi(21, &mut cert));
        }
        BoundContext::K3n | BoundContext::K3TwoPrime => {
            if ctx == BoundContext::K3n {
                out.euler_phi_cap = Some(22);
                out.max_order = Some(phi(22, &mut cert));
            }
            out.rank_cap = Some(20);
            let leech_primes = [2u64, 3, 5, 7, 11, 13, 23];
            cert.push(format!("primes dividing |Co_0|: {leech_primes:?}"));
            let r13 = witness_coinvariant(Witness::Glue13)?;
            cert.push(format!("order 13 on Λ: invariant rank {}, co-invariant rank {} > 20", r13.t_rank, r13.s_rank));
            let r23 = witness_coinvariant(Witness::N23Order23)?;
            cert.push(format!("order 23 on N23: co-invariant rank {} > 20", r23.s_rank));
            let ok: Vec<u64> = leech_primes
                .iter()
                .copied()
                .filter(|&p| match p {
                    13 => r13.s_rank <= 20,
                    23 => r23.s_rank <= 20,
                    _ => p - 1 <= 20,
                })
                .collect();
            out.max_prime = ok.iter().copied().max();
        }
        BoundContext::Kummer => {
            out.euler_phi_cap = Some(6);
            out.max_order = Some(phi(6, &mut cert));
            out.rank_cap = Some(4);
            out.max_prime = Some(prime_bound(4, &mut cert));
            let s = a4_coxeter_coinvariant()?;
            let iso = enumerate::isometric(&s, &catalog::a_n(4).negated(), 100_000)?;
            cert.push(format!("Coxeter element of A4 in E8(-1): co-invariant vs A4(-1): {}", iso.label()));
            out.coinvariant = Some(s);
        }
        BoundContext::Og6 => {
            out.euler_phi_cap = Some(7);
            out.max_order = Some(phi(7, &mut cert));
            out.rank_cap = Some(5);
            out.max_prime = Some(prime_bound(5, &mut cert));
        }
        BoundContext::Og10 => {
            out.euler_phi_cap = Some(23);
            out.max_order = Some(phi(23, &mut cert));
            out.rank_cap = Some(21);
            out.max_prime = Some(prime_bound(21, &mut cert));
        }
    }
    out.certificate = cert;
    Ok(out)
}

// ---------------------------------------------------------------------------------------------
// Exceptional vectors orthogonal to isotropic vectors

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MLattice {
    M2,
    M3,
    M5,
}

impl MLattice {
    pub fn lattice(&self) -> GramLattice {
        match self {
            MLattice::M2 => catalog::m2(),
            MLattice::M3 => catalog::m3(),
            MLattice::M5 => catalog::m5(),
        }
    }

    /// Index of the (−2) summand generator t and of the hyperbolic pair (e, f) of the U summand.
    fn layout(&self) -> (usize, usize, usize) {
        match self {
            MLattice::M2 => (14, 8, 9),
            MLattice::M3 => (10, 0, 1),
            MLattice::M5 => (6, 0, 1),
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

fn check_isotropic(l: &GramLattice, w: &[BigInt]) -> Result<()> {
    if w.len() != l.rank() {
        return Err(Error::Dimension("vector length".into()));
    }
    if !linalg::gcd_all(w).is_one() {
        return Err(Error::Invalid("w is not primitive".into()));
    }
    if !l.norm(w).is_zero() {
        return Err(Error::Invalid("w is not isotropic".into()));
    }
    Ok(())
}

/// A vector p with p² = −2, div(p) = 2 and (p, w) = 0.
pub fn orthogonal_exceptional_vector(m: MLattice, w: &[BigInt]) -> Result<Vec<BigInt>> {
    match m {
        MLattice::M2 => exceptional_by_eichler_m2(w),
        _ => exceptional_by_transvection(m, w),
    }
}

fn finish(l: &GramLattice, w: &[BigInt], p: Vec<BigInt>) -> Result<Vec<BigInt>> {
    let ok = l.norm(&p) == BigInt::from(-2) && l.divisibility(&p)? == BigInt::from(2) && l.pair(&p, w).is_zero();
    if !ok {
        return Err(Error::Other("Eichler reduction failed".into()));
    }
    Ok(p)
}

/// M2 = E8(−2) ⊕ U³ ⊕ (−2): move w to e₃ (div 1) or 2e₃ + 2f₃ + v (div 2) by Eichler's criterion,
/// then pull back the (−2) generator.
pub fn exceptional_by_eichler_m2(w: &[BigInt]) -> Result<Vec<BigInt>> {
    let l = catalog::m2();
    check_isotropic(&l, w)?;
    let n = l.rank();
    let sp = isometry::HyperbolicSplitting::leading(&l, 8)?;
    let div = l.divisibility(w)?;
    let target = if div.is_one() {
        unit(n, 12)
    } else if div == BigInt::from(2) {
        // A norm-4 E8 vector in the class of the E8(−2) part of w mod 2.
        let we: Vec<i64> = w[..8].iter().map(|x| x.mod_floor(&BigInt::from(2)).to_i64().unwrap()).collect();
        let e8 = catalog::e_n(8);
        let v = enumerate::vectors_of_norm(&e8, 4)?
            .into_iter()
            .find(|v| v.iter().zip(&we).all(|(a, b)| (a - b).rem_euclid(2) == 0))
            .ok_or_else(|| Error::Other("no norm-4 representative".into()))?;
        let mut r = vec![BigInt::zero(); n];
        for i in 0..8 {
            r[i] = BigInt::from(v[i]);
        }
        r[12] = BigInt::from(2);
        r[13] = BigInt::from(2);
        r
    } else {
        return Err(Error::Invalid(format!("divisibility {div} does not occur in M2")));
    };
    let verdict = isometry::eichler_equivalent(&l, &sp, w, &target, isometry::DiscCondition::Equal)?;
    let g = verdict.witness.ok_or_else(|| Error::Other(format!("Eichler reduction failed: {}", verdict.reason)))?;
    let p = g.inverse().apply(&unit(n, 14));
    finish(&l, w, p)
}

/// Clears the t-coordinate of w with one transvection t(u, t), u isotropic in the complement of ⟨t⟩,
/// and pulls back t. Works in M2, M3 and M5.
pub fn exceptional_by_transvection(m: MLattice, w: &[BigInt]) -> Result<Vec<BigInt>> {
    let l = m.lattice();
    check_isotropic(&l, w)?;
    let (ti, ei, fi) = m.layout();
    let n = l.rank();
    let t = unit(n, ti);
    let k = w[ti].clone();
    if k.is_zero() {
        return finish(&l, w, t);
    }
    let wg = linalg::vec_mat(w, &l.gram);
    let (we, wf) = (wg[ei].clone(), wg[fi].clone());
    let rest: Vec<usize> = (0..n).filter(|&i| i != ti && i != ei && i != fi).collect();
    for bound in 1..=3i64 {
        let side = (2 * bound + 1) as u64;
        let total = side.pow(rest.len() as u32);
        for code in 0..total {
            let mut z = vec![BigInt::zero(); n];
            let mut c = code;
            for &i in &rest {
                z[i] = BigInt::from((c % side) as i64 - bound);
                c /= side;
            }
            if (0..n).all(|i| z[i].is_zero()) && code != 0 {
                continue;
            }
            let z2 = l.norm(&z);
            let s: BigInt = -(&z2 / BigInt::from(2));
            let c0: BigInt = -&k - linalg::dot(&z, &wg);
            // Need a·(e,w) + b·(f,w) = c0 with ab = s.
            let mut sols: Vec<(BigInt, BigInt)> = vec![];
            if s.is_zero() {
                if !we.is_zero() && (&c0 % &we).is_zero() {
                    sols.push((&c0 / &we, BigInt::zero()));
                }
                if !wf.is_zero() && (&c0 % &wf).is_zero() {
                    sols.push((BigInt::zero(), &c0 / &wf));
                }
            } else {
                let sa = s.abs().to_u64().unwrap_or(u64::MAX);
                if sa > 1_000_000 {
                    continue;
                }
                for d in 1..=sa {
                    if sa % d != 0 {
                        continue;
                    }
                    for a in [BigInt::from(d), -BigInt::from(d)] {
                        let b = &s / &a;
                        if &a * &we + &b * &wf == c0 {
                            sols.push((a, b));
                        }
                    }
                }
            }
            for (a, b) in sols {
                let mut u = z.clone();
                u[ei] += &a;
                u[fi] += &b;
                if u.iter().all(|x| x.is_zero()) || !l.norm(&u).is_zero() {
                    continue;
                }
                let neg_t: Vec<BigInt> = t.iter().map(|x| -x).collect();
                let psi_inv = isometry::eichler_transvection(&l, &u, &neg_t)?;
                let p = psi_inv.apply(&t);
                if l.pair(&p, w).is_zero() {
                    return finish(&l, w, p);
                }
            }
        }
    }
    Err(Error::Other("Eichler reduction failed: no clearing transvection found".into()))
}

/// M2 ⊂ L₂: E8(−2) diagonally in E8(−1)², U³ and (−2) identically.
pub fn m2_in_l2() -> Result<Mat> {
    let mut rows = vec![];
    for i in 0..8 {
        let mut r = vec![BigInt::zero(); 23];
        r[6 + i] = BigInt::one();
        r[14 + i] = BigInt::one();
        rows.push(r);
    }
    for j in 0..6 {
        rows.push(unit(23, j));
    }
    rows.push(unit(23, 22));
    let l2 = catalog::l_n(2)?;
    if linalg::congruent(&rows, &l2.gram) != catalog::m2().gram {
        return Err(Error::Other("M2 does not embed as stated".into()));
    }
    Ok(rows)
}

/// The p = 2 row: E8(−2), checked rootless and with a single embedding class into L₂.
#[derive(Clone, Debug, Serialize)]
pub struct InvolutionRow {
    pub rootless: bool,
    pub embedding_classes: usize,
    pub fixed_locus: &'static str,
}

pub fn involution_row() -> Result<InvolutionRow> {
    let s = catalog::e_n(8).scaled(-2)?;
    let rootless = enumerate::is_rootless(&s)?;
    let l2 = catalog::l_n(2)?;
    let classes = disc::primitive_embeddings_small(&s, &l2, &[])?;
    Ok(InvolutionRow { rootless, embedding_classes: classes.len(), fixed_locus: "1 K3 surface and 28 isolated points" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::v;

    #[test]
    fn short_row_repair() {
        let rows = vec![vec![2, 1, 0], vec![1, 2], vec![0, 1, 2]];
        let r = repair_short_row(&rows).unwrap();
        assert_eq!(r, vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        assert!(repair_short_row(&[vec![2, 1], vec![1, 2]]).is_none());
    }

    #[test]
    fn phi_bounds() {
        assert_eq!(max_order_with_phi(21), 66);
        assert_eq!(max_order_with_phi(6), 18);
        assert_eq!(max_order_with_phi(7), 18);
        assert_eq!(max_order_with_phi(22), 66);
    }

    #[test]
    fn exceptional_vectors_m2_both_routes() {
        let l = catalog::m2();
        // e₁ of the first U, and a divisibility-2 vector 2e₁ + 2f₁ + a with a of E8-norm 4.
        let e1 = unit(15, 8);
        assert_eq!(orthogonal_exceptional_vector(MLattice::M2, &e1).unwrap(), unit(15, 14));
        let a = enumerate::vectors_of_norm(&catalog::e_n(8), 4).unwrap()[0].clone();
        let mut w = vec![BigInt::zero(); 15];
        for i in 0..8 {
            w[i] = BigInt::from(a[i]);
        }
        w[8] = BigInt::from(2);
        w[9] = BigInt::from(2);
        w[14] = BigInt::from(2);
        w[10] = BigInt::from(2);
        w[11] = BigInt::from(2);
        assert!(l.norm(&w).is_zero());
        for p in [exceptional_by_eichler_m2(&w).unwrap(), exceptional_by_transvection(MLattice::M2, &w).unwrap()] {
            assert_eq!(l.norm(&p), BigInt::from(-2));
            assert_eq!(l.divisibility(&p).unwrap(), BigInt::from(2));
            assert!(l.pair(&p, &w).is_zero());
        }
    }

    #[test]
    fn exceptional_vector_m3_div3() {
        let l = catalog::m3();
        // e₁ + f₁·0 in U(3) has divisibility 3; add a t-component through U.
        let w = v(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(l.norm(&w).is_zero());
        let p = orthogonal_exceptional_vector(MLattice::M3, &w).unwrap();
        assert!(l.pair(&p, &w).is_zero());
        let w3 = v(&[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(l.divisibility(&w3).unwrap(), BigInt::from(3));
        assert!(orthogonal_exceptional_vector(MLattice::M3, &w3).is_ok());
    }
}
