use hyperlat::catalog;
use hyperlat::disc::{discriminant_module, Fqm};
use hyperlat::enumerate;
use hyperlat::lattice::GramLattice;
use num_rational::Rational64;
use proptest::prelude::*;

fn block(kind: u8, k: i64) -> GramLattice {
    let l = match kind % 4 {
        0 => catalog::a_n(2),
        1 => catalog::a_n(3),
        2 => catalog::d_n(4),
        _ => catalog::rank_one(2),
    };
    l.scaled(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_is_additive(a in 0u8..4, b in 0u8..4, k in 1i64..4, m in 1i64..4) {
        let (x, y) = (block(a, k), block(b, m).negated());
        let fx = discriminant_module(&x).unwrap().fqm;
        let fy = discriminant_module(&y).unwrap().fqm;
        let sum = discriminant_module(&x.oplus(&y)).unwrap().fqm;
        let s = (fx.signature_mod8().unwrap() + fy.signature_mod8().unwrap()).rem_euclid(8);
        prop_assert_eq!(sum.signature_mod8().unwrap(), s);
        prop_assert!(sum.is_isometric(&fx.direct_sum(&fy)));
    }

    #[test]
    fn negation_flips_signature(d in 2i64..12, n in 1i64..24) {
        let q = Rational64::new(2 * n, d);
        let f = Fqm::cyclic(d, q);
        prop_assume!(f.is_valid() && f.is_nondegenerate());
        let s = f.signature_mod8();
        let t = f.negated().signature_mod8();
        if let (Ok(s), Ok(t)) = (s, t) {
            prop_assert_eq!((s + t).rem_euclid(8), 0);
        }
    }

    #[test]
    fn census_counts_pairs(a in 0u8..4, k in 1i64..3, bound in 2i64..9) {
        let l = block(a, k);
        let c = enumerate::short_vectors(&l, bound).unwrap();
        let total: u64 = c.counts.values().sum();
        prop_assert_eq!(total as usize, 2 * c.representatives.len());
        prop_assert!(c.counts.keys().all(|n| *n > 0 && *n <= bound && n % 2 == 0));
    }
}
