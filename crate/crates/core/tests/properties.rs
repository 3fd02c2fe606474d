use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use pelltrib::contfrac::expand_terms;
use pelltrib::factor::{is_squarefree_by_trial, sqfree_decompose, FactoringEffort};
use pelltrib::pell::{fundamental, p_minus, p_plus, x_coordinate, x_sequence, PellSign};
use pelltrib::realnum::{CertifiedReal, PrecisionPolicy};
use pelltrib::search::{integer_root, membership_pairs};
use pelltrib::tribonacci::TribCache;

fn nonsquare(d: u32) -> bool {
    let r = (d as f64).sqrt() as u32;
    (r.saturating_sub(1)..=r + 1).all(|s| s * s != d)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pell_identity_holds_along_the_orbit(d in 2u32..400, n in 0usize..40) {
        prop_assume!(nonsquare(d));
        let f = fundamental(&BigUint::from(d), PrecisionPolicy::default()).unwrap();
        let (k, x, y) = f.solutions().nth(n).unwrap();
        let lhs = BigInt::from(&x * &x) - BigInt::from(d) * BigInt::from(&y * &y);
        prop_assert_eq!(lhs, BigInt::from(f.epsilon.pow(k).value()));
    }

    #[test]
    fn p_polynomials_give_x_coordinates(d in 2u32..400, n in 1u64..30) {
        prop_assume!(nonsquare(d));
        let f = fundamental(&BigUint::from(d), PrecisionPolicy::default()).unwrap();
        let via_p = match f.epsilon {
            PellSign::Plus => BigInt::from(p_plus(n, &f.x1)),
            PellSign::Minus => p_minus(n, &f.x1),
        };
        prop_assert_eq!(via_p, BigInt::from(x_coordinate(&f, n)));
    }

    #[test]
    fn integer_root_inverts_p(x in 1u64..100_000, n in 1u64..8, plus in any::<bool>()) {
        let sign = if plus { PellSign::Plus } else { PellSign::Minus };
        let x = BigUint::from(x);
        let value = match sign {
            PellSign::Plus => p_plus(n, &x),
            PellSign::Minus => p_minus(n, &x).to_biguint().unwrap(),
        };
        prop_assert_eq!(integer_root(sign, n, &value), Some(x.clone()));
        let next = &value + 1u32;
        if let Some(r) = integer_root(sign, n, &next) {
            prop_assert!(r > x);
        }
    }

    #[test]
    fn sqfree_decomposition_is_exact(n in 1u64..1_000_000_000_000) {
        let big = BigUint::from(n);
        let dec = sqfree_decompose(&big, FactoringEffort::default());
        prop_assert_eq!(&dec.d * &dec.y * &dec.y, big);
        if dec.complete {
            prop_assert!(is_squarefree_by_trial(dec.d.to_u64().unwrap()));
        }
    }

    #[test]
    fn membership_pairs_are_genuine(m in 1usize..80, plus in any::<bool>()) {
        let sign = if plus { PellSign::Plus } else { PellSign::Minus };
        let cache = TribCache::new(100);
        let x1 = cache.values()[m].clone();
        prop_assume!(!(plus && x1 == BigUint::from(1u32)));
        let pairs = membership_pairs(&x1, sign, &cache);
        prop_assert!(pairs.iter().any(|&(n, mm)| n == 1 && mm as usize == m));
        let xs: Vec<BigUint> = x_sequence(&x1, sign).take(40).collect();
        for (n, mm) in pairs {
            prop_assert_eq!(&xs[n as usize], &cache.values()[mm as usize]);
        }
    }

    #[test]
    fn convergents_obey_the_approximation_law(d in 2u32..1000, p in -50i64..50, q in 1i64..50) {
        prop_assume!(nonsquare(d));
        let target = CertifiedReal::from_int(d).sqrt().unwrap().add(&CertifiedReal::from_ratio(p, q));
        let cf = expand_terms(&target, 30).unwrap();
        let c = cf.convergents();
        for k in 0..cf.len() {
            prop_assert!(cf.certify_convergent(k).unwrap());
            if k >= 1 {
                // p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1)
                let det = &c[k].p * &c[k - 1].q - &c[k - 1].p * &c[k].q;
                prop_assert_eq!(det, BigInt::from(if k % 2 == 1 { 1 } else { -1 }));
            }
        }
    }

    #[test]
    fn refinement_keeps_the_enclosure(n in 1i64..10_000, d in 1i64..10_000, bits in 64u32..600) {
        let q = BigRational::new(n.into(), d.into());
        let x = CertifiedReal::from_rational(q.clone()).sqrt().unwrap();
        let r = x.refine_bits(bits).unwrap();
        prop_assert!(r.lower() * r.lower() <= q && q <= r.upper() * r.upper());
        prop_assert!(r.err() <= x.err());
        let bound = BigRational::new(1.into(), BigInt::from(2u32).pow(bits));
        prop_assert!(r.err() <= bound);
    }

    #[test]
    fn log_exp_round_trip_encloses(n in 1i64..1000, d in 1i64..1000) {
        let q = BigRational::new(n.into(), d.into());
        let x = CertifiedReal::from_rational(q.clone());
        let back = x.log().unwrap().exp().sub(&x);
        prop_assert!(back.lower() <= BigRational::zero() && BigRational::zero() <= back.upper());
    }
}
