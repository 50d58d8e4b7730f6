//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr (bypassing output capture)
//! and asserts. Two criteria disagree with the published values; those print FAIL and assert that
//! the computed discrepancy reproduces exactly.

use hyperlat::catalog;
use hyperlat::classification::{self, EmbedStatus, Witness};
use hyperlat::disc::{self, discriminant_module};
use hyperlat::enumerate::{self, IsoVerdict};
use hyperlat::fixed_locus::{self, AutInvariants, CensusVerdict, GroupShape};
use hyperlat::isometry::{self, LatticeIsometry};
use hyperlat::lattice::GramLattice;
use hyperlat::linalg;
use hyperlat::niemeier::{self, HolyPair, LeechRoute};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

fn line(n: u32, title: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n:>2} {status} {title}: {detail}");
}

// ---------------------------------------------------------------------------------------------
// Oracles

/// Root count of a Dynkin diagram written like "A5^4 D4".
fn dynkin_roots(s: &str) -> u64 {
    s.split_whitespace()
        .map(|tok| {
            let (base, mult) = tok.split_once('^').map_or((tok, 1u64), |(b, m)| (b, m.parse().unwrap()));
            let n: u64 = base[1..].parse().unwrap();
            let r = match &base[..1] {
                "A" => n * (n + 1),
                "D" => 2 * n * (n - 1),
                "E" => [72, 126, 240][(n - 6) as usize],
                _ => unreachable!(),
            };
            r * mult
        })
        .sum()
}

fn norm_i64(g: &[Vec<i64>], x: &[i64]) -> i64 {
    (0..x.len()).map(|i| (0..x.len()).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum()
}

/// Box bounds |x_i| ≤ sqrt(n · (G⁻¹)_ii) for a positive definite Gram, by Gauss–Jordan in f64.
fn box_bounds(g: &[Vec<i64>], n: i64) -> Vec<i64> {
    let k = g.len();
    let mut a: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for c in 0..k {
        let p = (c..k).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c];
        for j in 0..k {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for i in 0..k {
            if i != c {
                let f = a[i][c];
                for j in 0..k {
                    a[i][j] -= f * a[c][j];
                    inv[i][j] -= f * inv[c][j];
                }
            }
        }
    }
    (0..k).map(|i| ((n as f64) * inv[i][i]).sqrt().floor() as i64 + 1).collect()
}

/// All (norm, primitive, divisibility) triples of vectors with norm ≤ n, by brute force over a box.
fn brute_vectors(g: &[Vec<i64>], n: i64) -> Vec<(Vec<i64>, i64, i64)> {
    let b = box_bounds(g, n);
    let k = g.len();
    let mut out = vec![];
    let mut x: Vec<i64> = b.iter().map(|&v| -v).collect();
    loop {
        let nv = norm_i64(g, &x);
        if nv > 0 && nv <= n {
            let div = (0..k).fold(0i64, |d, j| d.gcd(&(0..k).map(|i| x[i] * g[i][j]).sum::<i64>()));
            let gcd = x.iter().fold(0i64, |d, &v| d.gcd(&v));
            if gcd == 1 {
                out.push((x.clone(), nv, div));
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            x[i] += 1;
            if x[i] > b[i] {
                x[i] = -b[i];
                i += 1;
            } else {
                break;
            }
        }
    }
}

fn brute_primitive_values(g: &[Vec<i64>], n: i64) -> BTreeSet<i64> {
    brute_vectors(g, n).into_iter().map(|(_, v, _)| v).collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn isometric(a: &GramLattice, b: &GramLattice) -> bool {
    matches!(enumerate::isometric(a, b, enumerate::default_budget()).unwrap(), IsoVerdict::Isometric(_))
}

// ---------------------------------------------------------------------------------------------

#[test]
fn criterion_01_niemeier_suite() {
    let t = Instant::now();
    let mut bad = vec![];
    for (name, comps, _, _) in niemeier::TABLE {
        let n = niemeier::build_niemeier(name).unwrap();
        let l = &n.lattice;
        let roots = enumerate::root_count(l).unwrap();
        let ok = l.rank() == 24 && l.det().abs().is_one() && l.is_even() && roots == dynkin_roots(comps);
        if !ok {
            bad.push(format!("{name}: roots {roots}"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let spot: Vec<u64> = ["N23", "N22", "N3"].iter().map(|n| enumerate::root_count(&niemeier::build_niemeier(n).unwrap().lattice).unwrap()).collect();
    let pass = bad.is_empty() && spot == vec![48, 72, 720] && secs < 60.0;
    line(1, "Niemeier suite", pass, &format!("24 lattices even unimodular with Dynkin root counts, N23/N22/N3 roots {spot:?}, {secs:.1} s"));
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_02_leech_routes() {
    let mut parts = vec![];
    let mut pass = true;
    for (label, route) in [("mod 23", LeechRoute::Mod23), ("holy N23", LeechRoute::Holy("N23".into())), ("Weyl quotient", LeechRoute::WeylQuotient)] {
        let l = niemeier::leech(&route).unwrap();
        let roots = enumerate::root_count(&l).unwrap();
        let ok = l.rank() == 24 && l.det().abs().is_one() && l.is_even() && roots == 0;
        pass &= ok;
        parts.push(format!("{label}: rank {}, |det| {}, roots {roots}", l.rank(), l.det().abs()));
    }
    line(2, "Leech lattice by three routes", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_03_holy_indices() {
    let mut parts = vec![];
    let mut pass = true;
    for (name, h) in [("N23", 2), ("N22", 3), ("N20", 5), ("N17", 7)] {
        let hp = HolyPair::new(name).unwrap();
        let (a, b) = hp.indices();
        pass &= a == BigInt::from(h) && b == BigInt::from(h) && niemeier::coxeter_number(name) == Some(h as u64);
        parts.push(format!("{name}: {a}/{b}"));
    }
    line(3, "holy-pair indices equal Coxeter numbers", pass, &parts.join(", "));
    assert!(pass);
}

#[test]
fn criterion_04_order11() {
    let r = classification::witness_coinvariant(Witness::N23Order11).unwrap();
    let s = &r.s_lattice;
    let dm = discriminant_module(s).unwrap();
    let rootless = enumerate::is_rootless(s).unwrap();
    // Oracle for l(A): number of invariant factors of the Gram matrix different from 1.
    let len = linalg::invariant_factors(&s.gram).iter().filter(|d| !d.is_one()).count();
    let r22 = classification::witness_coinvariant(Witness::N22Order11).unwrap();
    let printed = catalog::make_named("S11K3[2]").unwrap();
    let verdict = enumerate::isometric(s, &printed.lattice, enumerate::default_budget()).unwrap();
    let matched = matches!(verdict, IsoVerdict::Isometric(_) | IsoVerdict::StrongInvariantMatch(_));
    let pass = r.s_rank == 20
        && s.det().abs() == BigInt::from(121)
        && len == 2
        && dm.fqm.length() == 2
        && rootless
        && r.same_on_both_sides == Some(true)
        && r22.s_rank == 20
        && matched;
    line(
        4,
        "order-11 co-invariant lattices",
        pass,
        &format!("N23: rank {}, |det| {}, l(A) {len}, rootless {rootless}, same on N and Λ {:?}; N22: rank {}; catalog matrix: {}", r.s_rank, s.det().abs(), r.same_on_both_sides, r22.s_rank, verdict.label()),
    );
    assert!(pass);
}

#[test]
fn criterion_05_class_ranks() {
    let mut parts = vec![];
    let mut pass = true;
    for (name, want) in [("N22", vec![0usize, 6, 12]), ("N20", vec![0, 4, 8])] {
        let hp = HolyPair::new(name).unwrap();
        let census: Vec<usize> = classification::translation_rank_census(name).unwrap().into_iter().map(|(r, _)| r).collect();
        // Lattice route for one codeword of each rank.
        let mut lattice_ranks = BTreeSet::new();
        for &rank in &want {
            let w = hp.codewords.iter().find(|w| w.iter().any(|&x| x != 0) && w.iter().map(|&t| t.gcd(&hp.h) - 1).sum::<usize>() == rank).unwrap();
            lattice_ranks.insert(classification::translation_invariant_rank(name, w).unwrap());
        }
        let lr: Vec<usize> = lattice_ranks.into_iter().collect();
        pass &= census == want && lr == want;
        parts.push(format!("{name} invariant ranks {census:?} (lattice {lr:?})"));
    }
    let t13 = classification::witness_coinvariant(Witness::Glue13).unwrap().t_rank;
    let s7: Vec<usize> = [Witness::A6Word1216, Witness::A6Word2130].iter().map(|w| classification::witness_coinvariant(*w).unwrap().s_rank).collect();
    pass &= t13 == 0 && s7 == vec![24, 18];
    parts.push(format!("order 13 invariant rank {t13}; order 7 co-invariant ranks {s7:?}"));
    line(5, "class ranks on the Leech lattice", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_06_constructive_catalog() {
    let k12 = catalog::make_named("K12(-2)").unwrap().lattice;
    let fk = discriminant_module(&k12).unwrap().fqm;
    let k12_ok = k12.rank() == 12 && fk.elements().iter().filter(|x| x.iter().any(|&c| c != 0)).all(|x| fk.elem_order(x) == 3);
    let s5 = catalog::make_named("S5K3").unwrap().lattice;
    let s5_orders = discriminant_module(&s5).unwrap().fqm.orders.clone();
    let s5_ok = s5.rank() == 16 && s5_orders == vec![5, 5, 5, 5];
    let t3 = classification::witness_coinvariant(Witness::N3Cycle).unwrap().t_lattice.unwrap();
    let t3 = if t3.is_negative_definite() { t3 } else { t3.negated() };
    let exo_ok = isometric(&t3, &catalog::e_n(8).scaled(-3).unwrap());
    let w = catalog::make_named("W(-1)").unwrap().lattice;
    let w_orders = discriminant_module(&w).unwrap().fqm.orders.clone();
    let w_rootless = enumerate::is_rootless(&w).unwrap();
    let w_ok = w.rank() == 18 && w_orders == vec![3; 5] && w_rootless;
    let printed_w = catalog::make_named("W").unwrap().lattice.negated();
    let w_vs_printed = enumerate::isometric(&w, &printed_w, enumerate::default_budget()).unwrap();
    let pass = k12_ok && s5_ok && exo_ok && w_ok && !matches!(w_vs_printed, IsoVerdict::NotIsometric(_));
    line(
        6,
        "constructive catalog",
        pass,
        &format!("K12(-2) rank {} all nonzero classes of order 3 {k12_ok}; S5K3 rank {} A {s5_orders:?}; S3exo complement ≅ E8(-3) {exo_ok}; W(-1) rank {} A {w_orders:?} rootless {w_rootless}, vs printed W: {}", k12.rank(), s5.rank(), w.rank(), w_vs_printed.label()),
    );
    assert!(pass);
}

#[test]
fn criterion_07_bns() {
    let bns = |p, a, m| fixed_locus::bns_dimension(&AutInvariants { p, a, m }).unwrap();
    let vals = [bns(3, 5, 9), bns(7, 3, 3), bns(11, 2, 2)];
    let k12 = catalog::make_named("K12(-2)").unwrap().lattice;
    let a = discriminant_module(&k12).unwrap().fqm.length() as u64;
    let m = k12.rank() as u64 / 2;
    let k = bns(3, a, m);
    // Cross-check: the order-3 profile with 27 isolated points and nothing else has H* of dimension 27.
    let isolated_only = fixed_locus::census_order3().into_iter().find(|p| p.surface_free()).map(|p| p.isolated_points());
    let pass = vals == [16, 9, 5] && (a, m) == (6, 6) && k == 27 && isolated_only == Some(27);
    line(7, "BNS dimension", pass, &format!("bns(3,5,9), bns(7,3,3), bns(11,2,2) = {vals:?}; K12(-2): a = {a} computed, bns(3,{a},{m}) = {k}; census cross-check {isolated_only:?}"));
    assert!(pass);
}

#[test]
fn criterion_08_lefschetz_census() {
    let got: Vec<(i64, i64, i64)> = fixed_locus::census_order3().iter().map(|p| (p.a, p.isolated_points(), p.k3.iter().sum())).collect();
    let lefschetz = fixed_locus::census_order3().iter().all(|p| fixed_locus::satisfies_lefschetz(p).unwrap());
    // The other root of the K-equation: a = 4 gives K = 5 and N = 81 − 36 − 75 < 0.
    let k4 = (9 * 16 - 135 * 4 + 486) / 18;
    let n4 = 81 - 9 * 4 - 15 * k4;
    let order5 = fixed_locus::census_order5().unwrap();
    let o5: Vec<(i64, i64, bool)> = order5.iter().map(|p| (p.a, p.isolated_points(), p.surface_free())).collect();
    let squared = order5.iter().all(|p| fixed_locus::satisfies_lefschetz(&fixed_locus::square_profile(p)).unwrap());
    let pass = got == vec![(5, 6, 2), (6, 27, 0), (9, 0, 0)] && lefschetz && k4 == 5 && n4 < 0 && o5 == vec![(4, 14, true)] && squared;
    line(8, "Lefschetz censuses", pass, &format!("order 3 (a, N, K): {got:?}; a = 4 root has K = {k4}, N = {n4}; order 5 (a, points, surface-free): {o5:?}"));
    assert!(pass);
}

#[test]
fn criterion_09_k3_counting() {
    let mut parts = vec![];
    let mut pass = true;
    for p in [2u64, 3, 5, 7] {
        let c = fixed_locus::k3_census(GroupShape::Cyclic(p)).unwrap();
        let ok = c.counts == vec![(p, (24 / (p + 1)) as i64)] && c.verdict == CensusVerdict::Consistent;
        pass &= ok;
        parts.push(format!("Z/{p}: {}", c.counts[0].1));
    }
    let z9 = fixed_locus::k3_census(GroupShape::parse("Z/9").unwrap()).unwrap();
    let z15 = fixed_locus::k3_census(GroupShape::parse("Z/15").unwrap()).unwrap();
    pass &= matches!(z9.verdict, CensusVerdict::Contradiction(_)) && z15.verdict != CensusVerdict::Consistent;
    parts.push(format!("Z/9: {:?}; Z/15: {:?}", z9.verdict, z15.verdict));
    line(9, "K3 fixed-point counting", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_10_representability() {
    let values: Vec<i64> = (1..=8).map(|k| 2 * k).collect();
    let mut mismatches = vec![];
    let mut reproduced = true;
    // (lattice, published set, set obtained by brute force and by the library)
    for (name, published, expected_here) in [("A2+A2(3)", vec![2i64, 6, 8, 14], vec![2i64, 6, 8, 12, 14]), ("F", vec![4, 6, 10, 12, 14, 16], vec![4, 6, 10, 14, 16])] {
        let l = catalog::make_named(name).unwrap().lattice;
        let lib = classification::represented_set(&l, &values).unwrap();
        let brute: Vec<i64> = brute_primitive_values(&l.gram_i64().unwrap(), 16).into_iter().filter(|v| values.contains(v)).collect();
        reproduced &= lib == brute && lib == expected_here;
        if lib != published {
            mismatches.push(format!("{name} computed {lib:?} vs published {published:?}"));
        }
    }
    let f = catalog::make_named("F").unwrap().lattice;
    let no_eight = enumerate::represents(&f, 8, true, None).unwrap().is_none();
    let ns: Vec<i64> = (2..=9).collect();
    let s11 = classification::hilbert_embeddability("S11K3[2]", &ns, enumerate::default_budget()).unwrap();
    let s11_all = s11.cells.iter().all(|c| c.status == EmbedStatus::Embeds);
    let pass = mismatches.is_empty() && no_eight && s11_all;
    line(
        10,
        "representability table",
        pass,
        &format!(
            "{}; F misses 8 {no_eight}; S11K3[2] embeds into L_2..L_9 {s11_all}. Analysis: A2+A2(3) has the primitive vector (-2,-1,-1,-1) of square 12, and F has no vector of square 12 at all; a brute-force box enumeration agrees with the library on both sets",
            mismatches.join("; ")
        ),
    );
    assert!(reproduced && no_eight && s11_all, "discrepancy did not reproduce");
}

#[test]
fn criterion_11_t11() {
    let mut parts = vec![];
    let mut pass = true;
    for (name, want2, want6) in [("T11_1", true, false), ("T11_2", false, true)] {
        let l = catalog::make_named(name).unwrap().lattice;
        let has2 = enumerate::represents(&l, 2, true, None).unwrap().is_some();
        let has6 = enumerate::represents(&l, 6, false, Some(2)).unwrap().is_some();
        let brute = brute_vectors(&l.gram_i64().unwrap(), 6);
        let b2 = brute.iter().any(|(_, n, _)| *n == 2);
        // A square-6 vector of divisibility 2 is primitive or twice a square-3/2 vector, so primitive suffices.
        let b6 = brute.iter().any(|(_, n, d)| *n == 6 && *d == 2);
        pass &= has2 == want2 && has6 == want6 && b2 == has2 && b6 == has6;
        parts.push(format!("{name}: primitive square 2 {has2}, square 6 divisibility 2 {has6}"));
    }
    line(11, "T11 discrimination", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_12_euler_characteristic() {
    let c38 = fixed_locus::divisor_euler_characteristic(38, 2).unwrap();
    let c108 = fixed_locus::divisor_euler_characteristic(108, 2).unwrap();
    let o38 = binomial(38 / 2 + 3, 2);
    let o108 = binomial(108 / 2 + 3, 2);
    let v = fixed_locus::vsp_polarization().unwrap();
    let pass = c38 == BigInt::from(231) && c108 == BigInt::from(1596) && o38 == 231 && o108 == 1596 && c38 <= BigInt::from(1365) && c108 > BigInt::from(1365) && v.square == 38;
    line(12, "Euler characteristic of divisors", pass, &format!("χ(38) = {c38} ≤ 1365, χ(108) = {c108} > 1365, polarization square {}", v.square));
    assert!(pass);
}

// ---------------------------------------------------------------------------------------------
// Property suites

fn random_block(rng: &mut ChaCha8Rng) -> GramLattice {
    let base = match rng.gen_range(0..6) {
        0 => catalog::a_n(rng.gen_range(1..=4)),
        1 => catalog::d_n(rng.gen_range(4..=5)),
        2 => catalog::e_n(rng.gen_range(6..=7)),
        3 => catalog::rank_one(2 * rng.gen_range(1..=6)),
        4 => catalog::u_n(rng.gen_range(1..=4)),
        _ => catalog::a_n(2),
    };
    let k = rng.gen_range(1..=3);
    let l = base.scaled(k).unwrap();
    if rng.gen_bool(0.5) {
        l.negated()
    } else {
        l
    }
}

fn random_lattice(rng: &mut ChaCha8Rng, max_rank: usize) -> GramLattice {
    loop {
        let parts: Vec<GramLattice> = (0..rng.gen_range(1..=3)).map(|_| random_block(rng)).collect();
        let refs: Vec<&GramLattice> = parts.iter().collect();
        let l = GramLattice::direct_sum(&refs);
        if l.rank() <= max_rank {
            return l;
        }
    }
}

fn random_positive_block(rng: &mut ChaCha8Rng) -> GramLattice {
    let base = match rng.gen_range(0..4) {
        0 => catalog::a_n(rng.gen_range(1..=3)),
        1 => catalog::d_n(4),
        2 => catalog::rank_one(2 * rng.gen_range(1..=4)),
        _ => catalog::a_n(2),
    };
    base.scaled(rng.gen_range(1..=2)).unwrap()
}

fn overlattice_laws(rng: &mut ChaCha8Rng) -> (usize, Vec<String>) {
    let mut done = 0;
    let mut failures = vec![];
    let mut attempts = 0;
    while done < 100 && attempts < 5000 {
        attempts += 1;
        let l = random_lattice(rng, 8);
        let Some(order) = disc::abs_det(&l).to_u64() else { continue };
        if order > 4000 || order == 1 {
            continue;
        }
        let dm = discriminant_module(&l).unwrap();
        let subs = disc::isotropic_subgroups(&dm.fqm, order).subgroups;
        let nontrivial: Vec<_> = subs.into_iter().filter(|h| h.order > 1).collect();
        let Some(h) = nontrivial.choose(rng) else { continue };
        let o = disc::overlattice(&l, &dm, h).unwrap();
        let m = &o.lattice;
        let index2 = (h.order * h.order) as u64;
        let det_law = disc::abs_det(&l) == disc::abs_det(m) * BigInt::from(index2);
        // Item 1: A_M ≅ H⊥/H; item 2: with the restricted form.
        let sub = dm.fqm.subquotient(&h.generators);
        let am = discriminant_module(m).unwrap().fqm;
        let form_law = sub.order() == am.order() && sub.is_isometric(&am);
        // L ⊂ M: lattice rows have integral coordinates in the overlattice basis.
        let contains = linalg::coords_in(&linalg::clear_denominators(&o.basis).0, &linalg::scale(&linalg::identity(l.rank()), &linalg::clear_denominators(&o.basis).1))
            .map_or(false, |c| c.iter().flatten().all(|x| x.is_integer()));
        if !(m.is_even() && det_law && form_law && contains) {
            failures.push(format!("{:?} with H of order {}", l.gram_i64(), h.order));
        }
        done += 1;
    }
    (done, failures)
}

fn milgram(rng: &mut ChaCha8Rng) -> (usize, Vec<String>) {
    let mut failures = vec![];
    let mut done = 0;
    let mut check = |l: &GramLattice, label: String| {
        let (p, m, _) = linalg::inertia(&l.gram);
        let want = (p as i64 - m as i64).rem_euclid(8);
        let got = discriminant_module(l).unwrap().fqm.signature_mod8().unwrap();
        if got != want {
            failures.push(format!("{label}: {got} vs {want}"));
        }
        done += 1;
    };
    for name in catalog::names() {
        let l = catalog::make_named(name).unwrap().lattice;
        check(&l, name.to_string());
    }
    for i in 0..100 {
        let l = random_lattice(rng, 12);
        check(&l, format!("random {i}"));
    }
    (done, failures)
}

fn eichler(rng: &mut ChaCha8Rng) -> (usize, Vec<String>) {
    let mut failures = vec![];
    for i in 0..100 {
        let extra = random_positive_block(rng).negated();
        let l = GramLattice::direct_sum(&[&catalog::u(), &catalog::u(), &extra]);
        let n = l.rank();
        let (a0, b0): (i64, i64) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let mut e = vec![BigInt::zero(); n];
        e[0] = BigInt::from(a0);
        e[1] = BigInt::from(b0);
        e[2] = BigInt::one();
        e[3] = BigInt::from(-a0 * b0);
        let rand_vec = |rng: &mut ChaCha8Rng| -> Vec<BigInt> { (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect() };
        let perp = |rng: &mut ChaCha8Rng| -> Vec<BigInt> {
            let (x, y) = (rand_vec(rng), rand_vec(rng));
            let (ex, ey) = (l.pair(&e, &x), l.pair(&e, &y));
            (0..n).map(|k| &ey * &x[k] - &ex * &y[k]).collect()
        };
        let (a, b) = (perp(rng), perp(rng));
        let ab: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let neg: Vec<BigInt> = a.iter().map(|x| -x).collect();
        let ta = isometry::eichler_transvection(&l, &e, &a).unwrap();
        let tb = isometry::eichler_transvection(&l, &e, &b).unwrap();
        let tab = isometry::eichler_transvection(&l, &e, &ab).unwrap();
        let tneg = isometry::eichler_transvection(&l, &e, &neg).unwrap();
        let preserves = linalg::congruent(&ta.matrix, &l.gram) == l.gram;
        let composition = ta.then(&tb).unwrap().matrix == tab.matrix && tb.then(&ta).unwrap().matrix == tab.matrix;
        let inverse = ta.then(&tneg).unwrap().is_identity();
        let fixes_e = ta.apply(&e) == e;
        if !(preserves && composition && inverse && fixes_e) {
            failures.push(format!("instance {i}"));
        }
    }
    (100, failures)
}

fn torsion(rng: &mut ChaCha8Rng) -> (usize, Vec<String>) {
    let mut failures = vec![];
    for i in 0..100 {
        let b = random_positive_block(rng);
        let copies = rng.gen_range(2..=4);
        let parts: Vec<&GramLattice> = (0..copies).map(|_| &b).collect();
        let l = GramLattice::direct_sum(&parts);
        let r = b.rank();
        let mut perm: Vec<usize> = (0..copies).collect();
        perm.shuffle(rng);
        let sign = if rng.gen_bool(0.3) { -1 } else { 1 };
        let mut m = linalg::zeros(l.rank(), l.rank());
        for (c, &pc) in perm.iter().enumerate() {
            for k in 0..r {
                m[c * r + k][pc * r + k] = BigInt::from(sign);
            }
        }
        let g = LatticeIsometry::new(&l, m).unwrap();
        let ord = g.order().unwrap();
        let fs = isometry::fixed_sublattices(&l, std::slice::from_ref(&g)).unwrap();
        let mut ok = fs.t_lattice.as_ref().map_or(true, |t| !t.det().is_zero()) && fs.s_lattice.as_ref().map_or(true, |s| !s.det().is_zero());
        let mut both = fs.t.rows.clone();
        both.extend(fs.s.rows.clone());
        for _ in 0..3 {
            let v: Vec<BigInt> = (0..l.rank()).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
            let mut orbit_sum = vec![BigInt::zero(); v.len()];
            let mut w = v.clone();
            for _ in 0..ord {
                orbit_sum = orbit_sum.iter().zip(&w).map(|(x, y)| x + y).collect();
                w = g.apply(&w);
            }
            let diff: Vec<BigInt> = v.iter().zip(g.apply(&v)).map(|(x, y)| x - y).collect();
            let scaled: Vec<BigInt> = v.iter().map(|x| x * BigInt::from(ord)).collect();
            let in_span = |rows: &linalg::Mat, x: &[BigInt]| if rows.is_empty() { x.iter().all(|c| c.is_zero()) } else { linalg::int_coords_in(rows, &vec![x.to_vec()]).is_some() };
            ok &= in_span(&fs.t.rows, &orbit_sum) && in_span(&fs.s.rows, &diff) && in_span(&both, &scaled);
        }
        if !ok {
            failures.push(format!("instance {i}: order {ord}"));
        }
    }
    (100, failures)
}

#[test]
fn criterion_13_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a77);
    let suites: Vec<(&str, (usize, Vec<String>))> = vec![
        ("overlattice laws", overlattice_laws(&mut rng)),
        ("Milgram signature", milgram(&mut rng)),
        ("Eichler transvections", eichler(&mut rng)),
        ("torsion bounds", torsion(&mut rng)),
    ];
    let pass = suites.iter().all(|(_, (n, f))| *n >= 100 && f.is_empty());
    let detail: Vec<String> = suites.iter().map(|(name, (n, f))| format!("{name} {n} instances, {} failures", f.len())).collect();
    line(13, "property suites", pass, &detail.join("; "));
    assert!(pass, "{:?}", suites.iter().map(|(n, (_, f))| (n, f)).collect::<Vec<_>>());
}

#[test]
fn criterion_14_overlattices() {
    let d8 = enumerate::unimodular_overlattice(&catalog::d_n(8)).unwrap();
    let d8_ok = d8.witness.as_ref().map_or(false, |w| isometric(&w.lattice, &catalog::e_n(8)));
    let e8m = catalog::e_n(8).negated();
    let m5 = catalog::make_named("M_5C").unwrap().lattice;
    let o5 = enumerate::unimodular_overlattice(&m5.oplus(&m5)).unwrap();
    let m5_ok = o5.witness.as_ref().map_or(false, |w| isometric(&w.lattice, &e8m));
    let m3 = catalog::make_named("M_3").unwrap().lattice;
    let o3 = enumerate::unimodular_overlattice(&m3.oplus(&m3)).unwrap();
    // Published: none. Independent validation of the witness found here: even, unimodular,
    // E8(−1), and containing M ⊕ M with index 81.
    let m3_found = match &o3.witness {
        Some(w) => {
            let (rows, den) = linalg::clear_denominators(&w.basis);
            let contains = linalg::coords_in(&rows, &linalg::scale(&linalg::identity(8), &den)).map_or(false, |c| c.iter().flatten().all(|x| x.is_integer()));
            let index = m3.oplus(&m3).det().abs() / w.lattice.det().abs();
            w.lattice.is_even() && w.lattice.det().abs().is_one() && contains && index == BigInt::from(6561) && isometric(&w.lattice, &e8m)
        }
        None => false,
    };
    let pass = d8_ok && m5_ok && !m3_found;
    line(
        14,
        "overlattice searches",
        pass,
        &format!(
            "D8 → E8 {d8_ok}; M⊕M for 2^5 3^10 has an E8(-1) overlattice {m5_ok}; M'⊕M' for 2^9 3^6 admits one {m3_found} (published: none). Analysis: A_M' = Z/3 + Z/3 + Z/9 and A_M' ⊕ A_M' has a totally isotropic subgroup of order 81, checked independently"
        ),
    );
    assert!(d8_ok && m5_ok && m3_found, "discrepancy did not reproduce");
}
