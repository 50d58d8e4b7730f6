//! Named lattices: root lattices, the hyperkähler lattices and the special lattices used by the
//! classification, each with checkable claims.

use crate::cyclo::CyclotomicNumber;
use crate::disc::discriminant_module;
use crate::lattice::GramLattice;
use crate::linalg::{self, Mat, QMat};
use crate::printed;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

fn lat(rows: Vec<Vec<i64>>, name: &str) -> GramLattice {
    GramLattice::from_rows(&rows).expect("valid Gram").named(name)
}

/// Cartan matrix of A_n.
pub fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

/// Cartan matrix of D_n (Bourbaki numbering: the fork is at node n-2).
pub fn cartan_d(n: usize) -> Vec<Vec<i64>> {
    assert!(n >= 4);
    let mut c = cartan_a(n - 1);
    for r in c.iter_mut() {
        r.push(0);
    }
    c.push(vec![0; n]);
    c[n - 1][n - 1] = 2;
    c[n - 1][n - 3] = -1;
    c[n - 3][n - 1] = -1;
    c
}

/// Cartan matrix of E_n, n ∈ {6,7,8} (Bourbaki numbering, node 2 attached to node 4).
pub fn cartan_e(n: usize) -> Vec<Vec<i64>> {
    assert!((6..=8).contains(&n));
    let mut c = vec![vec![0; n]; n];
    let mut edge = |a: usize, b: usize| {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    };
    edge(1, 3);
    edge(2, 4);
    edge(3, 4);
    for k in 4..n {
        edge(k, k + 1);
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    c
}

pub fn a_n(n: usize) -> GramLattice {
    lat(cartan_a(n), &format!("A{n}"))
}

pub fn d_n(n: usize) -> GramLattice {
    lat(cartan_d(n), &format!("D{n}"))
}

pub fn e_n(n: usize) -> GramLattice {
    lat(cartan_e(n), &format!("E{n}"))
}

pub fn rank_one(k: i64) -> GramLattice {
    lat(vec![vec![k]], &format!("({k})"))
}

pub fn u() -> GramLattice {
    lat(vec![vec![0, 1], vec![1, 0]], "U")
}

pub fn u_n(n: i64) -> GramLattice {
    lat(vec![vec![0, n], vec![n, 0]], &format!("U({n})"))
}

fn sum(parts: &[GramLattice], name: &str) -> GramLattice {
    let refs: Vec<&GramLattice> = parts.iter().collect();
    GramLattice::direct_sum(&refs).named(name)
}

fn e8m(k: i64) -> GramLattice {
    e_n(8).scaled(-k).unwrap()
}

/// U³ ⊕ E8(-1)² ⊕ (2-2n), the lattice of K3^[n]-type manifolds.
pub fn l_n(n: i64) -> Result<GramLattice> {
    if n < 2 {
        return Err(Error::Invalid("L_n needs n ≥ 2".into()));
    }
    Ok(sum(&[u(), u(), u(), e8m(1), e8m(1), rank_one(2 - 2 * n)], &format!("L_{n}")))
}

/// U³ ⊕ (-2-2n), the lattice of generalized Kummer type.
pub fn l_kummer(n: i64) -> Result<GramLattice> {
    if n < 1 {
        return Err(Error::Invalid("L_K,n needs n ≥ 1".into()));
    }
    Ok(sum(&[u(), u(), u(), rank_one(-2 - 2 * n)], &format!("LK_{n}")))
}

pub fn l_o6() -> GramLattice {
    sum(&[u(), u(), u(), rank_one(-2), rank_one(-2)], "LO6")
}

pub fn l_o10() -> GramLattice {
    sum(&[u(), u(), u(), e8m(1), e8m(1), a_n(2).negated()], "LO10")
}

/// U⁴ ⊕ E8(-1)².
pub fn mukai() -> GramLattice {
    sum(&[u(), u(), u(), u(), e8m(1), e8m(1)], "Mukai")
}

/// E8(-2) ⊕ U³ ⊕ (-2).
pub fn m2() -> GramLattice {
    sum(&[e8m(2), u(), u(), u(), rank_one(-2)], "M2")
}

pub fn m3() -> GramLattice {
    let a2m = a_n(2).negated();
    sum(&[u(), u_n(3), u_n(3), a2m.clone(), a2m, rank_one(-2)], "M3")
}

pub fn m5() -> GramLattice {
    sum(&[u(), u_n(5), u_n(5), rank_one(-2)], "M5")
}

pub fn m7() -> GramLattice {
    sum(&[u_n(7), lat(vec![vec![4, 1], vec![1, 2]], "B"), rank_one(-2)], "M7")
}

/// U ⊕ E8(-1)³, the even unimodular lattice of signature (1,25).
pub fn pi_1_25() -> GramLattice {
    sum(&[u(), e8m(1), e8m(1), e8m(1)], "Pi_1_25")
}

/// Coordinates of the fundamental weight ω_k (1-based) of a simply laced Cartan matrix, in the root basis.
pub fn fundamental_weight(cartan: &[Vec<i64>], k: usize) -> Vec<BigRational> {
    let inv = linalg::inverse(&linalg::from_i64(cartan)).expect("Cartan matrices are invertible");
    inv[k - 1].clone()
}

fn printed_rows(p: &[&[i64]]) -> Vec<Vec<i64>> {
    p.iter().map(|r| r.to_vec()).collect()
}

/// How an entry is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Recipe {
    Formula,
    Printed,
    Constructive,
}

/// Published properties of a catalog lattice.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Claims {
    pub rank: Option<usize>,
    pub abs_det: Option<u64>,
    /// Invariant factors of the discriminant group.
    pub disc: Option<Vec<i64>>,
    pub signature: Option<(usize, usize)>,
    pub rootless: Option<bool>,
    pub even: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedLatticeEntry {
    pub name: &'static str,
    pub recipe: Recipe,
    pub claims: Claims,
    pub note: &'static str,
}

/// A built entry together with its validation record.
#[derive(Clone, Debug)]
pub struct BuiltEntry {
    pub entry: NamedLatticeEntry,
    pub lattice: GramLattice,
    pub checks: Vec<ClaimCheck>,
    /// Set when a printed matrix failed validation and the lattice was rebuilt.
    pub transcription_suspect: Option<String>,
}

fn claims(rank: usize, abs_det: u64, sig: (usize, usize)) -> Claims {
    Claims { rank: Some(rank), abs_det: Some(abs_det), signature: Some(sig), even: Some(true), ..Default::default() }
}

/// Every catalog entry with parameters fixed.
pub fn entries() -> Vec<NamedLatticeEntry> {
    use Recipe::*;
    let e = |name, recipe, claims, note| NamedLatticeEntry { name, recipe, claims, note };
    let mut out = vec![
        e("U", Formula, claims(2, 1, (1, 1)), "hyperbolic plane"),
        e("E8", Formula, claims(8, 1, (8, 0)), ""),
        e("L_2", Formula, Claims { disc: Some(vec![2]), ..claims(23, 2, (3, 20)) }, "K3^[2] lattice"),
        e("LK_2", Formula, claims(7, 6, (3, 4)), "generalized Kummer lattice, n = 2"),
        e("LO6", Formula, claims(8, 4, (3, 5)), ""),
        e("LO10", Formula, claims(24, 3, (3, 21)), ""),
        e("Mukai", Formula, claims(24, 1, (4, 20)), ""),
        e("M2", Formula, Claims { disc: Some(vec![2; 9]), ..claims(15, 512, (3, 12)) }, ""),
        e("M3", Formula, Claims { disc: Some(vec![3, 3, 3, 3, 3, 6]), ..claims(11, 1458, (3, 8)) }, ""),
        e("M5", Formula, Claims { disc: Some(vec![5, 5, 5, 10]), ..claims(7, 1250, (3, 4)) }, ""),
        e("M7", Formula, Claims { disc: Some(vec![7, 7, 14]), ..claims(5, 686, (3, 2)) }, ""),
        e("Pi_1_25", Formula, claims(26, 1, (1, 25)), ""),
        e("W", Printed, Claims { disc: Some(vec![3; 5]), rootless: Some(true), ..claims(18, 243, (18, 0)) }, ""),
        e("S7K3", Printed, Claims { disc: Some(vec![7; 3]), rootless: Some(true), ..claims(18, 343, (0, 18)) }, "rebuilt from the [2130] translation on the A6^4 holy construction"),
        e("S11K3[2]", Printed, Claims { disc: Some(vec![11, 11]), rootless: Some(true), ..claims(20, 121, (0, 20)) }, "rebuilt from the order-11 permutation of N23"),
        e("M_5C", Printed, Claims { rootless: Some(true), ..claims(4, 125, (0, 4)) }, "S-lattice 2^5 3^10"),
        e("M_3", Printed, Claims { rootless: Some(true), ..claims(4, 81, (0, 4)) }, "S-lattice 2^9 3^6"),
        e("T11_1", Printed, claims(3, 242, (3, 0)), ""),
        e("T11_2", Printed, claims(3, 242, (3, 0)), ""),
        e("S11c_1", Printed, claims(4, 121, (4, 0)), "complement genus of S11K3[2] in the Mukai lattice"),
        e("S11c_2", Printed, claims(4, 121, (4, 0)), "complement genus of S11K3[2] in the Mukai lattice"),
        e("S11c_3", Printed, claims(4, 121, (4, 0)), "complement genus of S11K3[2] in the Mukai lattice"),
        e("F", Printed, claims(4, 125, (4, 0)), "the unique lattice in the genus of M_5C(-1)"),
        e("A2+A2(3)", Formula, claims(4, 81, (4, 0)), ""),
        e("K12(-2)", Constructive, Claims { rootless: Some(true), ..Claims { rank: Some(12), signature: Some((0, 12)), even: Some(true), ..Default::default() } }, "co-invariant lattice of a 3-cycle of components on N12"),
        e("S5K3", Constructive, Claims { disc: Some(vec![5; 4]), rootless: Some(true), ..claims(16, 625, (0, 16)) }, "co-invariant lattice of a 5B glue translation on the Leech lattice"),
        e("S3exo", Constructive, Claims { disc: Some(vec![3; 8]), rootless: Some(true), ..claims(16, 6561, (0, 16)) }, "co-invariant lattice of a 3-cycle of components on N3"),
        e("S5exo", Constructive, Claims { rootless: Some(true), ..Claims { rank: Some(20), abs_det: Some(125), signature: Some((0, 20)), even: Some(true), ..Default::default() } }, "co-invariant lattice of a 5C glue translation on the Leech lattice"),
        e("W(-1)", Constructive, Claims { disc: Some(vec![3; 5]), rootless: Some(true), ..claims(18, 243, (0, 18)) }, "co-invariant lattice of a 3C glue translation on the Leech lattice"),
    ];
    out.sort_by_key(|e| e.name);
    out
}

pub fn entry(name: &str) -> Option<NamedLatticeEntry> {
    entries().into_iter().find(|e| e.name == name)
}

fn printed_gram(name: &str) -> Option<Vec<Vec<i64>>> {
    let p = match name {
        "W" => printed::W_PRINTED,
        "S7K3" => printed::S7K3_PRINTED,
        "S11K3[2]" => printed::S11_PRINTED,
        "M_5C" => printed::M_5C_PRINTED,
        "M_3" => printed::M_3_PRINTED,
        "T11_1" => printed::T11_1_PRINTED,
        "T11_2" => printed::T11_2_PRINTED,
        "F" => printed::F_PRINTED,
        "S11c_1" => printed::S11_COMPLEMENT_PRINTED[0],
        "S11c_2" => printed::S11_COMPLEMENT_PRINTED[1],
        "S11c_3" => printed::S11_COMPLEMENT_PRINTED[2],
        _ => return None,
    };
    Some(printed_rows(p))
}

/// Checks a printed matrix for shape, symmetry, parity and determinant against the claims.
pub fn validate_printed(rows: &[Vec<i64>], claims: &Claims) -> std::result::Result<GramLattice, String> {
    let n = rows.len();
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(format!("row {} has {} entries, expected {}", i + 1, rows[i].len(), n));
    }
    for i in 0..n {
        for j in 0..i {
            if rows[i][j] != rows[j][i] {
                return Err(format!("asymmetric at ({}, {}): {} vs {}", i + 1, j + 1, rows[i][j], rows[j][i]));
            }
        }
    }
    let l = GramLattice::from_rows(rows).map_err(|e| e.to_string())?;
    if claims.even == Some(true) && !l.is_even() {
        return Err("odd diagonal entry".into());
    }
    if let Some(d) = claims.abs_det {
        let got = l.det().abs();
        if got != BigInt::from(d) {
            return Err(format!("determinant {got}, expected {d}"));
        }
    }
    Ok(l)
}

/// Checks every stated claim of `entry` on `l`.
pub fn check_claims(entry: &NamedLatticeEntry, l: &GramLattice) -> Result<Vec<ClaimCheck>> {
    let c = &entry.claims;
    let mut out = vec![];
    let mut push = |claim: &str, expected: String, got: String| {
        let pass = expected == got;
        out.push(ClaimCheck { claim: claim.into(), expected, got, pass });
    };
    if let Some(r) = c.rank {
        push("rank", r.to_string(), l.rank().to_string());
    }
    if let Some(d) = c.abs_det {
        push("|det|", d.to_string(), l.det().abs().to_string());
    }
    if let Some(s) = c.signature {
        push("signature", format!("{s:?}"), format!("{:?}", l.signature()));
    }
    if let Some(e) = c.even {
        push("even", e.to_string(), l.is_even().to_string());
    }
    if let Some(d) = &c.disc {
        let got = discriminant_module(l)?.fqm.orders;
        push("discriminant group", format!("{d:?}"), format!("{got:?}"));
    }
    if let Some(r) = c.rootless {
        let got = crate::enumerate::is_rootless(l)?;
        push("rootless", r.to_string(), got.to_string());
    }
    Ok(out)
}

fn formula(name: &str) -> Option<GramLattice> {
    Some(match name {
        "U" => u(),
        "E8" => e_n(8),
        "L_2" => l_n(2).ok()?,
        "LK_2" => l_kummer(2).ok()?,
        "LO6" => l_o6(),
        "LO10" => l_o10(),
        "Mukai" => mukai(),
        "M2" => m2(),
        "M3" => m3(),
        "M5" => m5(),
        "M7" => m7(),
        "Pi_1_25" => pi_1_25(),
        "A2+A2(3)" => sum(&[a_n(2), a_n(2).scaled(3).unwrap()], "A2+A2(3)"),
        _ => return None,
    })
}

/// Constructive lattice for a name, if there is one.
pub fn constructive(name: &str) -> Result<Option<GramLattice>> {
    use crate::classification::{witness_coinvariant, Witness};
    let w = match name {
        "K12(-2)" => Witness::N12Cycle,
        "S5K3" => Witness::Glue5B,
        "S5exo" => Witness::Glue5C,
        "S3exo" => Witness::N3Cycle,
        "W(-1)" => Witness::Glue3C,
        "S7K3" => Witness::A6Word2130,
        "S11K3[2]" => Witness::N23Order11,
        _ => return Ok(None),
    };
    let r = witness_coinvariant(w)?;
    Ok(Some(r.s_lattice.named(name)))
}

/// Builds a named lattice. Parametrized families use names like `A5`, `D12`, `U(3)`, `(−2)`, `L_3`, `LK_4`.
pub fn make_named(name: &str) -> Result<BuiltEntry> {
    if let Some(l) = parametrized(name)? {
        let entry = NamedLatticeEntry { name: "parametrized", recipe: Recipe::Formula, claims: Claims::default(), note: "" };
        return Ok(BuiltEntry { entry, lattice: l.named(name), checks: vec![], transcription_suspect: None });
    }
    let entry = entry(name).ok_or_else(|| Error::Invalid(format!("unknown catalog name {name}")))?;
    let (lattice, suspect) = match entry.recipe {
        Recipe::Formula => (formula(name).expect("formula entry"), None),
        Recipe::Constructive => (constructive(name)?.expect("constructive entry"), None),
        Recipe::Printed => {
            let rows = printed_gram(name).expect("printed entry");
            match validate_printed(&rows, &entry.claims) {
                Ok(l) => (l.named(name), None),
                Err(why) => {
                    let rebuilt = constructive(name)?.ok_or_else(|| Error::Invalid(format!("{name}: {why}; no rebuild available")))?;
                    (rebuilt, Some(why))
                }
            }
        }
    };
    let checks = check_claims(&entry, &lattice)?;
    Ok(BuiltEntry { entry, lattice, checks, transcription_suspect: suspect })
}

fn parse_int_suffix(s: &str, prefix: &str) -> Option<i64> {
    s.strip_prefix(prefix).and_then(|r| r.parse().ok())
}

fn parametrized(name: &str) -> Result<Option<GramLattice>> {
    if let Some(k) = name.strip_prefix('(').and_then(|r| r.strip_suffix(')')).and_then(|r| r.parse::<i64>().ok()) {
        if k == 0 {
            return Err(Error::Degenerate);
        }
        return Ok(Some(rank_one(k)));
    }
    if let Some(n) = name.strip_prefix("U(").and_then(|r| r.strip_suffix(')')).and_then(|r| r.parse::<i64>().ok()) {
        if n == 0 {
            return Err(Error::Degenerate);
        }
        return Ok(Some(u_n(n)));
    }
    if let Some(n) = parse_int_suffix(name, "L_") {
        return l_n(n).map(Some);
    }
    if let Some(n) = parse_int_suffix(name, "LK_") {
        return l_kummer(n).map(Some);
    }
    if let Some(n) = parse_int_suffix(name, "A") {
        if n >= 1 {
            return Ok(Some(a_n(n as usize)));
        }
    }
    if let Some(n) = parse_int_suffix(name, "D") {
        if n >= 4 {
            return Ok(Some(d_n(n as usize)));
        }
    }
    if let Some(n) = parse_int_suffix(name, "E") {
        if (6..=7).contains(&n) {
            return Ok(Some(e_n(n as usize)));
        }
    }
    Ok(None)
}

/// Names accepted by [`make_named`] besides the parametrized families.
pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

/// Integral lattice of a hermitian form over Z[ω_p] with the normalized trace pairing
/// `(a, b) = (1/(p-1)) Σ_ρ ρ(h(a, b))`, on the basis `e_i ω^j`, `0 ≤ j < p-1`.
/// `h[i][k]` is the value on `(e_i, e_k)`; the form is linear in the first slot.
pub fn cyclotomic_trace_lattice(p: u64, h: &[Vec<CyclotomicNumber>]) -> Result<GramLattice> {
    let r = h.len();
    for i in 0..r {
        if h[i].len() != r {
            return Err(Error::Dimension("hermitian Gram must be square".into()));
        }
        for k in 0..r {
            if h[i][k].p != p || h[k][i] != h[i][k].conj() {
                return Err(Error::Invalid("hermitian Gram is not conjugate-symmetric".into()));
            }
        }
    }
    let d = (p - 1) as usize;
    let phi = BigRational::from_integer(BigInt::from(p - 1));
    let n = r * d;
    let mut g: QMat = vec![vec![BigRational::zero(); n]; n];
    for i in 0..r {
        for j in 0..d {
            for k in 0..r {
                for l in 0..d {
                    // (e_i ω^j, e_k ω^l) = ω^{j-l} h(e_i, e_k)
                    let w = CyclotomicNumber::omega_pow(p, j as i64 - l as i64);
                    g[i * d + j][k * d + l] = w.mul(&h[i][k]).trace() / &phi;
                }
            }
        }
    }
    let g = linalg::from_q(&g).ok_or_else(|| Error::Invalid("trace Gram is not integral".into()))?;
    GramLattice::new(g)
}

/// Matrix of multiplication by ω_p on the basis of [`cyclotomic_trace_lattice`], acting on rows.
pub fn omega_action(p: u64, rank: usize) -> Mat {
    let d = (p - 1) as usize;
    let n = rank * d;
    let mut m = linalg::zeros(n, n);
    for i in 0..rank {
        for j in 0..d {
            if j + 1 < d {
                m[i * d + j][i * d + j + 1] = BigInt::one();
            } else {
                for l in 0..d {
                    m[i * d + j][i * d + l] = -BigInt::one();
                }
            }
        }
    }
    m
}

/// Hermitian value on a generator v making `(v, v) = a`, `(v, ωv) = -a/2` and `(v, ω^j v) = 0`
/// otherwise, so that the trace lattice of rank one is A_{p-1}(a/2).
pub fn rank_one_root_value(p: u64, a: i64) -> CyclotomicNumber {
    let c = BigRational::new(BigInt::from(a) * BigInt::from(p - 1), BigInt::from(2 * p));
    let two = CyclotomicNumber::from_ints(p, &[2]);
    let s = two.add(&CyclotomicNumber::omega_pow(p, 1).scale(&-BigRational::one()));
    let s = s.add(&CyclotomicNumber::omega_pow(p, -1).scale(&-BigRational::one()));
    s.scale(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_lattice_determinants() {
        for n in 1..9 {
            assert_eq!(a_n(n).det(), BigInt::from(n as i64 + 1));
        }
        for n in 4..10 {
            assert_eq!(d_n(n).det(), BigInt::from(4));
        }
        assert_eq!(e_n(6).det(), BigInt::from(3));
        assert_eq!(e_n(7).det(), BigInt::from(2));
        assert_eq!(e_n(8).det(), BigInt::from(1));
    }

    #[test]
    fn formula_entries_meet_claims() {
        for e in entries().iter().filter(|e| e.recipe == Recipe::Formula) {
            let b = make_named(e.name).unwrap();
            for c in &b.checks {
                assert!(c.pass, "{}: {} expected {} got {}", e.name, c.claim, c.expected, c.got);
            }
        }
    }

    #[test]
    fn k3n_lattice() {
        let l = l_n(2).unwrap();
        let inv = l.invariants();
        assert_eq!((inv.rank, inv.det.as_str(), inv.signature), (23, "2", (3, 20)));
        let lo = l_o10();
        assert_eq!((lo.rank(), lo.signature()), (24, (3, 21)));
        assert!(l_n(1).is_err());
    }

    #[test]
    fn divisibility_of_last_generator() {
        for n in 2..6 {
            let l = l_n(n).unwrap();
            let mut w = vec![BigInt::zero(); 23];
            w[22] = BigInt::one();
            assert_eq!(l.divisibility(&w).unwrap(), BigInt::from(2 * n - 2));
        }
        let t = GramLattice::from_rows(&printed_rows(printed::T11_2_PRINTED)).unwrap();
        assert_eq!(t.divisibility(&crate::lattice::v(&[1, 0, 0])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn printed_matrix_validation() {
        let s7 = validate_printed(&printed_rows(printed::S7K3_PRINTED), &entry("S7K3").unwrap().claims);
        assert!(s7.unwrap_err().contains("asymmetric"));
        let s11 = validate_printed(&printed_rows(printed::S11_PRINTED), &entry("S11K3[2]").unwrap().claims);
        assert!(s11.unwrap_err().contains("row 16"));
        assert!(validate_printed(&printed_rows(printed::W_PRINTED), &entry("W").unwrap().claims).is_ok());
        assert!(validate_printed(&printed_rows(printed::M_5C_PRINTED), &entry("M_5C").unwrap().claims).is_ok());
    }

    #[test]
    fn eisenstein_a2() {
        let h = vec![vec![CyclotomicNumber::from_ints(3, &[2])]];
        let l = cyclotomic_trace_lattice(3, &h).unwrap();
        assert_eq!(linalg::to_i64(&l.gram).unwrap(), cartan_a(2));
    }

    #[test]
    fn trace_lattices_of_rank_one() {
        for (p, a) in [(3u64, 2i64), (5, -2), (5, 2), (7, 2), (7, -4)] {
            let h = vec![vec![rank_one_root_value(p, a)]];
            let l = cyclotomic_trace_lattice(p, &h).unwrap();
            let n = (p - 1) as usize;
            let want: Vec<Vec<i64>> = cartan_a(n).iter().map(|r| r.iter().map(|x| x * a / 2).collect()).collect();
            assert_eq!(linalg::to_i64(&l.gram).unwrap(), want);
            let w = omega_action(p, 1);
            assert_eq!(linalg::congruent(&w, &l.gram), l.gram);
        }
    }

    #[test]
    fn plain_integer_value_is_not_a_root_lattice_beyond_p3() {
        let h = vec![vec![CyclotomicNumber::from_ints(5, &[4])]];
        let l = cyclotomic_trace_lattice(5, &h).unwrap();
        let g = linalg::to_i64(&l.gram).unwrap();
        assert_eq!(g[0], vec![4, -1, -1, -1]);
    }
}
