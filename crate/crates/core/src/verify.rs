//! Batch verification of the published lattice and counting claims.

use crate::classification::{self, BoundContext, EmbedStatus, MLattice, Witness};
use crate::disc::{discriminant_module, Verdict};
use crate::fixed_locus::{self, AutInvariants, CensusVerdict, GroupShape};
use crate::lattice::{v, GramLattice};
use crate::niemeier::{self, HolyPair, LeechRoute};
use crate::{catalog, enumerate, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Topic of the published statement.
    pub citation: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    /// "paper" for published values, "derived" for values computed here.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Invalid(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{}: {} [{}]", c.id, c.status.label(), c.citation));
            if c.status == Status::Pass {
                out.push_str(&format!(" = {}\n", c.computed));
            } else {
                out.push_str(&format!("\n    computed: {}\n    expected: {}\n", c.computed, c.expected));
            }
        }
        out.push_str(&format!("{} pass, {} fail, {} unknown\n", self.count(Status::Pass), self.count(Status::Fail), self.count(Status::Unknown)));
        out
    }
}

/// Section keys in report order.
pub const SECTIONS: &[&str] = &[
    "niemeier",
    "leech",
    "holy",
    "order11",
    "ranks",
    "catalog",
    "bns",
    "census",
    "k3",
    "representation",
    "t11",
    "euler",
    "exceptional",
    "overlattice",
    "bounds",
];

struct Sec {
    topic: &'static str,
    citation: &'static str,
    checks: Vec<Check>,
}

impl Sec {
    fn new(topic: &'static str, citation: &'static str) -> Self {
        Sec { topic, citation, checks: vec![] }
    }

    fn push(&mut self, id: &str, prov: &str, expected: impl Display, computed: impl Display, pass: bool) {
        self.checks.push(Check {
            id: format!("{}.{id}", self.topic),
            citation: self.citation.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            computed: computed.to_string(),
            expected: expected.to_string(),
            provenance: prov.into(),
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, id: &str, prov: &str, expected: T, computed: T) {
        let pass = expected == computed;
        self.push(id, prov, format!("{expected:?}"), format!("{computed:?}"), pass);
    }

    fn unknown(&mut self, id: &str, prov: &str, expected: impl Display, why: impl Display) {
        self.checks.push(Check {
            id: format!("{}.{id}", self.topic),
            citation: self.citation.into(),
            status: Status::Unknown,
            computed: why.to_string(),
            expected: expected.to_string(),
            provenance: prov.into(),
        });
    }

    /// Runs a fallible block; an error becomes an unknown check.
    fn guard(&mut self, id: &str, f: impl FnOnce(&mut Sec) -> Result<()>) {
        if let Err(e) = f(self) {
            self.unknown(id, "derived", "a result", format!("error: {e}"));
        }
    }
}

fn niemeier_section() -> Vec<Check> {
    let mut s = Sec::new("niemeier", "Niemeier lattices");
    let rows: Vec<_> = niemeier::TABLE
        .par_iter()
        .map(|(name, comps, _, _)| (name, comps, niemeier::build_niemeier(name).and_then(|n| niemeier::verify_niemeier(&n))))
        .collect();
    for (name, comps, r) in rows {
        match r {
            Ok(r) => {
                s.push(&format!("{name} unimodular"), "paper", "even, rank 24, det 1", format!("even {}, rank {}, det {}", r.even, r.rank, r.det), r.even && r.rank == 24 && r.det == "1");
                s.push(&format!("{name} roots"), "derived", format!("{} ({comps})", r.expected_roots), format!("{} (system matches: {})", r.roots, r.root_system_matches), r.roots == r.expected_roots && r.root_system_matches);
                s.push(&format!("{name} coxeter"), "derived", "all components share h and roots = 24h", r.coxeter_ok, r.coxeter_ok);
            }
            Err(e) => s.unknown(&format!("{name} unimodular"), "paper", "even, rank 24, det 1", e),
        }
    }
    s.checks
}

fn leech_section() -> Vec<Check> {
    let mut s = Sec::new("leech", "Leech lattice");
    for (id, route) in [("mod23", LeechRoute::Mod23), ("holy N23", LeechRoute::Holy("N23".into())), ("weyl quotient", LeechRoute::WeylQuotient)] {
        s.guard(id, |s| {
            let l = niemeier::leech(&route)?;
            let r = niemeier::certify_leech(&l, id)?;
            s.push(id, "paper", "even unimodular rank 24, no roots", format!("even {}, rank {}, det {}, roots {}", r.even, r.rank, r.det, r.roots), r.ok());
            Ok(())
        });
    }
    s.checks
}

fn holy_section() -> Vec<Check> {
    let mut s = Sec::new("holy", "holy constructions");
    for (name, h) in [("N23", 2u64), ("N22", 3), ("N20", 5), ("N17", 7)] {
        s.guard(name, |s| {
            let hp = HolyPair::new(name)?;
            let (a, b) = hp.indices();
            let want = BigInt::from(h);
            s.push(&format!("{name} indices"), "paper", format!("[N : N∩Λ] = [Λ : N∩Λ] = {h}"), format!("{a}, {b}"), a == want && b == want);
            Ok(())
        });
    }
    s.checks
}

fn order11_section() -> Vec<Check> {
    let mut s = Sec::new("order11", "order-11 co-invariant lattices");
    s.guard("N23", |s| {
        let r = classification::witness_coinvariant(Witness::N23Order11)?;
        let l = &r.s_lattice;
        let dm = discriminant_module(l)?;
        s.eq("N23 rank", "paper", 20, r.s_rank);
        s.eq("N23 det", "paper", BigInt::from(121), l.det().abs());
        s.eq("N23 length", "paper", 2, dm.fqm.length());
        s.eq("N23 rootless", "paper", true, enumerate::is_rootless(l)?);
        s.eq("N23 same on N and Leech", "paper", Some(true), r.same_on_both_sides);
        let built = catalog::make_named("S11K3[2]")?;
        let iso = enumerate::isometric(l, &built.lattice, enumerate::default_budget())?;
        let ok = matches!(iso, enumerate::IsoVerdict::Isometric(_) | enumerate::IsoVerdict::StrongInvariantMatch(_));
        s.push("N23 vs printed", "paper", "isometric or strong-invariant match", iso.label(), ok);
        Ok(())
    });
    s.guard("N22", |s| {
        let r = classification::witness_coinvariant(Witness::N22Order11)?;
        s.eq("N22 rank", "paper", 20, r.s_rank);
        Ok(())
    });
    s.checks
}

fn ranks_section() -> Vec<Check> {
    let mut s = Sec::new("ranks", "glue translations on the Leech lattice");
    for (name, want) in [("N22", vec![0usize, 6, 12]), ("N20", vec![0, 4, 8])] {
        s.guard(name, |s| {
            let got: Vec<usize> = classification::translation_rank_census(name)?.into_iter().map(|(r, _)| r).collect();
            s.eq(&format!("{name} invariant ranks"), "paper", want, got);
            Ok(())
        });
    }
    s.guard("order13", |s| {
        let r = classification::witness_coinvariant(Witness::Glue13)?;
        s.eq("order 13 invariant rank", "paper", 0, r.t_rank);
        Ok(())
    });
    s.guard("order7", |s| {
        let a = classification::witness_coinvariant(Witness::A6Word1216)?.s_rank;
        let b = classification::witness_coinvariant(Witness::A6Word2130)?.s_rank;
        s.eq("order 7 co-invariant ranks", "paper", vec![24, 18], vec![a, b]);
        Ok(())
    });
    s.checks
}

fn catalog_section() -> Vec<Check> {
    let mut s = Sec::new("catalog", "named lattices");
    for name in catalog::names() {
        s.guard(name, |s| {
            let b = catalog::make_named(name)?;
            for c in &b.checks {
                s.push(&format!("{name} {}", c.claim), "paper", &c.expected, &c.got, c.pass);
            }
            Ok(())
        });
    }
    s.guard("K12", |s| {
        let l = catalog::make_named("K12(-2)")?.lattice;
        let fqm = discriminant_module(&l)?.fqm;
        let orders: Vec<i64> = fqm.elements().iter().filter(|x| x.iter().any(|&c| c != 0)).map(|x| fqm.elem_order(x)).collect();
        s.eq("K12(-2) rank", "paper", 12, l.rank());
        s.push("K12(-2) element orders", "paper", "all 3", format!("{} nonzero elements", orders.len()), orders.iter().all(|&o| o == 3));
        Ok(())
    });
    s.guard("S3exo", |s| {
        let r = classification::witness_coinvariant(Witness::N3Cycle)?;
        let t = r.t_lattice.ok_or_else(|| crate::Error::Other("no invariant lattice".into()))?;
        let e8_3 = catalog::e_n(8).scaled(-3)?;
        let t = if t.is_negative_definite() { t } else { t.negated() };
        let iso = enumerate::isometric(&t, &e8_3, enumerate::default_budget())?;
        s.push("S3exo complement", "paper", "E8(-3)", iso.label(), matches!(iso, enumerate::IsoVerdict::Isometric(_)));
        Ok(())
    });
    s.checks
}

fn bns_section() -> Vec<Check> {
    let mut s = Sec::new("bns", "fixed-locus cohomology dimension");
    for (p, a, m, want) in [(3u64, 5u64, 9u64, 16i64), (7, 3, 3, 9), (11, 2, 2, 5)] {
        s.guard(&format!("({p},{a},{m})"), |s| {
            s.eq(&format!("({p},{a},{m})"), "paper", want, fixed_locus::bns_dimension(&AutInvariants { p, a, m })?);
            Ok(())
        });
    }
    s.guard("K12", |s| {
        let l = catalog::make_named("K12(-2)")?.lattice;
        let a = discriminant_module(&l)?.fqm.length() as u64;
        let m = l.rank() as u64 / 2;
        s.eq("K12(-2)", "derived", 27, fixed_locus::bns_dimension(&AutInvariants { p: 3, a, m })?);
        Ok(())
    });
    s.checks
}

fn census_section() -> Vec<Check> {
    let mut s = Sec::new("census", "holomorphic Lefschetz census");
    let got: Vec<(i64, i64, i64)> = fixed_locus::census_order3().iter().map(|p| (p.a, p.isolated_points(), p.k3.iter().sum())).collect();
    s.eq("order 3 profiles", "paper", vec![(5, 6, 2), (6, 27, 0), (9, 0, 0)], got);
    s.guard("order 5", |s| {
        let pr = fixed_locus::census_order5()?;
        let got: Vec<(i64, i64, bool)> = pr.iter().map(|p| (p.a, p.isolated_points(), p.surface_free())).collect();
        s.eq("order 5 profile", "paper", vec![(4, 14, true)], got);
        Ok(())
    });
    s.checks
}

fn k3_section() -> Vec<Check> {
    let mut s = Sec::new("k3", "symplectic quotients of K3 surfaces");
    for (p, k) in [(2u64, 8i64), (3, 6), (5, 4), (7, 3)] {
        s.guard(&format!("Z/{p}"), |s| {
            let c = fixed_locus::k3_census(GroupShape::Cyclic(p))?;
            s.eq(&format!("Z/{p} fixed points"), "paper", vec![(p, k)], c.counts);
            Ok(())
        });
    }
    for g in ["Z/9", "Z/15"] {
        s.guard(g, |s| {
            let shape = GroupShape::parse(g).ok_or_else(|| crate::Error::Invalid(g.into()))?;
            let c = fixed_locus::k3_census(shape)?;
            let label = match &c.verdict {
                CensusVerdict::Consistent => "consistent".to_string(),
                CensusVerdict::Contradiction(w) => format!("contradiction: {w}"),
                CensusVerdict::GeometricallyExcluded(w) => format!("excluded: {w}"),
            };
            s.push(&format!("{g} excluded"), "paper", "no such action", label, c.verdict != CensusVerdict::Consistent);
            Ok(())
        });
    }
    s.checks
}

fn representation_section() -> Vec<Check> {
    let mut s = Sec::new("representation", "embeddings into K3^[n]-type lattices");
    let values: Vec<i64> = (1..=8).map(|k| 2 * k).collect();
    for (name, want) in [("A2+A2(3)", vec![2i64, 6, 8, 14]), ("F", vec![4, 6, 10, 12, 14, 16])] {
        s.guard(name, |s| {
            let l = catalog::make_named(name)?.lattice;
            s.eq(&format!("{name} primitive values up to 16"), "paper", want, classification::represented_set(&l, &values)?);
            Ok(())
        });
    }
    s.guard("S11", |s| {
        let ns: Vec<i64> = (2..=9).collect();
        let r = classification::hilbert_embeddability("S11K3[2]", &ns, enumerate::default_budget())?;
        let got: Vec<i64> = r.cells.iter().filter(|c| c.status == EmbedStatus::Embeds).map(|c| c.n).collect();
        s.eq("S11K3[2] embeds into L_n", "paper", ns, got);
        Ok(())
    });
    s.checks
}

fn t11_section() -> Vec<Check> {
    let mut s = Sec::new("t11", "order-11 transcendental lattices");
    for (name, sq2, sq6) in [("T11_1", true, false), ("T11_2", false, true)] {
        s.guard(name, |s| {
            let l = catalog::make_named(name)?.lattice;
            s.eq(&format!("{name} primitive square 2"), "paper", sq2, enumerate::represents(&l, 2, true, None)?.is_some());
            s.eq(&format!("{name} square 6 divisibility 2"), "paper", sq6, enumerate::represents(&l, 6, false, Some(2))?.is_some());
            Ok(())
        });
    }
    s.checks
}

fn euler_section() -> Vec<Check> {
    let mut s = Sec::new("euler", "Euler characteristic of divisors");
    s.guard("chi", |s| {
        s.eq("chi(38)", "derived", BigInt::from(231), fixed_locus::divisor_euler_characteristic(38, 2)?);
        s.eq("chi(108)", "derived", BigInt::from(1596), fixed_locus::divisor_euler_characteristic(108, 2)?);
        let p = fixed_locus::vsp_polarization()?;
        s.eq("polarization square", "paper", 38, p.square);
        s.eq("polarization divisibility", "paper", 2, p.divisibility);
        Ok(())
    });
    s.checks
}

fn exceptional_section() -> Vec<Check> {
    let mut s = Sec::new("exceptional", "exceptional vectors orthogonal to isotropic vectors");
    let conditions = |l: &GramLattice, p: &[BigInt], w: &[BigInt]| -> Result<bool> {
        Ok(l.norm(p) == BigInt::from(-2) && l.divisibility(p)? == BigInt::from(2) && l.pair(p, w) == BigInt::from(0))
    };
    s.guard("M2", |s| {
        let l = MLattice::M2.lattice();
        let mut w = v(&[0; 15]);
        w[8] = BigInt::from(1);
        let p = classification::orthogonal_exceptional_vector(MLattice::M2, &w)?;
        let mut t = v(&[0; 15]);
        t[14] = BigInt::from(1);
        s.push("M2 e1", "paper", "the (-2) summand generator", format!("{p:?}"), p == t && conditions(&l, &p, &w)?);
        Ok(())
    });
    s.guard("M3", |s| {
        let l = MLattice::M3.lattice();
        let w = v(&[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let div = l.divisibility(&w)?;
        let p = classification::orthogonal_exceptional_vector(MLattice::M3, &w)?;
        s.push("M3 divisibility 3", "paper", "p² = -2, div 2, p ⊥ w", format!("div(w) = {div}, p = {p:?}"), div == BigInt::from(3) && conditions(&l, &p, &w)?);
        Ok(())
    });
    s.guard("L2", |s| {
        let m = classification::m2_in_l2()?;
        s.push("M2 in L2", "paper", "primitive embedding preserving divisibility 2 of exceptional vectors", format!("{} rows", m.len()), m.len() == 15);
        Ok(())
    });
    s.checks
}

fn overlattice_section() -> Vec<Check> {
    let mut s = Sec::new("overlattice", "unimodular overlattices");
    s.guard("D8", |s| {
        let o = enumerate::unimodular_overlattice(&catalog::d_n(8))?;
        let found = o.witness.map(|w| w.lattice);
        let ok = match &found {
            Some(l) => matches!(enumerate::isometric(l, &catalog::e_n(8), enumerate::default_budget())?, enumerate::IsoVerdict::Isometric(_)),
            None => false,
        };
        s.push("D8", "paper", "E8", if ok { "E8" } else { "none" }, ok);
        Ok(())
    });
    for (name, want) in [("M_5C", true), ("M_3", false)] {
        s.guard(name, |s| {
            let m = catalog::make_named(name)?.lattice;
            let o = enumerate::unimodular_overlattice(&m.oplus(&m))?;
            let got = match &o.witness {
                Some(w) => matches!(enumerate::isometric(&w.lattice, &catalog::e_n(8).negated(), enumerate::default_budget())?, enumerate::IsoVerdict::Isometric(_)),
                None => false,
            };
            if o.witness.is_none() && !o.exhaustive {
                s.unknown(&format!("{name} ⊕ {name}"), "paper", want, "search not exhaustive");
            } else {
                s.eq(&format!("{name} ⊕ {name} has E8(-1) overlattice"), "paper", want, got);
            }
            Ok(())
        });
    }
    s.checks
}

fn bounds_section() -> Vec<Check> {
    let mut s = Sec::new("bounds", "order bounds");
    for (ctx, order, prime) in [
        (BoundContext::NonsymplecticK3, Some(66u64), None),
        (BoundContext::Kummer, None, Some(5u64)),
        (BoundContext::Og10, None, Some(19)),
        (BoundContext::K3TwoPrime, None, Some(11)),
    ] {
        s.guard(&format!("{ctx:?}"), |s| {
            let b = classification::order_bounds(ctx)?;
            if order.is_some() {
                s.eq(&format!("{ctx:?} order"), "paper", order, b.max_order);
            }
            if prime.is_some() {
                s.eq(&format!("{ctx:?} prime"), "paper", prime, b.max_prime);
            }
            Ok(())
        });
    }
    s.guard("E8(-2) involution", |s| {
        let r = classification::involution_row()?;
        s.eq("E8(-2) rootless, one embedding class", "paper", (true, 1), (r.rootless, r.embedding_classes));
        Ok(())
    });
    s.guard("E8(-2) transfer", |s| {
        let t = classification::niemeier_transfer(&catalog::e_n(8).scaled(-2)?, true, &[])?;
        s.eq("E8(-2) rooted host", "paper", true, t.rooted_host.as_ref().map_or(false, Verdict::is_yes));
        Ok(())
    });
    s.checks
}

fn section(key: &str) -> Vec<Check> {
    match key {
        "niemeier" => niemeier_section(),
        "leech" => leech_section(),
        "holy" => holy_section(),
        "order11" => order11_section(),
        "ranks" => ranks_section(),
        "catalog" => catalog_section(),
        "bns" => bns_section(),
        "census" => census_section(),
        "k3" => k3_section(),
        "representation" => representation_section(),
        "t11" => t11_section(),
        "euler" => euler_section(),
        "exceptional" => exceptional_section(),
        "overlattice" => overlattice_section(),
        "bounds" => bounds_section(),
        _ => vec![],
    }
}

/// Runs one section, or all of them; sections run in parallel, output order is fixed.
pub fn run(only: Option<&str>) -> Result<VerificationReport> {
    let keys: Vec<&str> = match only {
        Some(k) if SECTIONS.contains(&k) => vec![k],
        Some(k) => return Err(crate::Error::Invalid(format!("unknown section {k}; expected one of {}", SECTIONS.join(", ")))),
        None => SECTIONS.to_vec(),
    };
    let parts: Vec<Vec<Check>> = keys.par_iter().map(|k| section(k)).collect();
    Ok(VerificationReport { checks: parts.into_iter().flatten().collect() })
}
