use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::curve::{enumerate_prime_divisors, CurveModel, HyperellipticCurve};
use crate::ff::{standard_field, Poly};
use crate::jacobian::{blackbox_from_curve, CyclicProduct, Jacobian, JacobianGroup};

fn iv(lo: u64, hi: u64) -> WeilInterval {
    WeilInterval { lower: BigUint::from(lo), upper: BigUint::from(hi) }
}

fn one() -> BigUint {
    BigUint::one()
}

#[test]
fn trivial_group() {
    let g = CyclicProduct::new(&[1]);
    for mode in [OrderOracleMode::BruteforceClosure { budget: 10 }, OrderOracleMode::interval_search(0)] {
        assert_eq!(group_order(&g, &mode, &iv(1, 1), &one(), None).unwrap(), one());
    }
}

#[test]
fn cyclic_six_forced_by_interval() {
    let g = CyclicProduct::new(&[6]).with_generators(&[vec![1]]);
    assert_eq!(element_order_bsgs(&g, &g.generators()[0], &BigUint::from(7u32)).unwrap(), BigUint::from(6u32));
    let got = group_order(&g, &OrderOracleMode::interval_search(1), &iv(5, 7), &one(), None).unwrap();
    assert_eq!(got, BigUint::from(6u32));
    let q = group_order(&g, &OrderOracleMode::QuantumSim { register_bits: 8, runs: 5 }, &iv(5, 7), &one(), None).unwrap();
    assert_eq!(q, BigUint::from(6u32));
}

#[test]
fn bsgs_matches_naive_orders() {
    let g = CyclicProduct::new(&[12, 35, 4]);
    for a in 0..12 {
        for b in [0u64, 1, 5, 7, 14, 34] {
            for c in 0..4 {
                let x = g.encode(&[a, b, c]);
                let naive = (1..=g.order()).find(|&k| g.power(&x, &BigUint::from(k)).unwrap() == g.identity()).unwrap();
                assert_eq!(element_order_bsgs(&g, &x, &BigUint::from(g.order())).unwrap(), BigUint::from(naive));
            }
        }
    }
    let x = g.encode(&[1, 1, 1]);
    assert!(matches!(element_order_bsgs(&g, &x, &BigUint::from(100u32)), Err(OrderError::BoundExceeded(_))));
}

#[test]
fn ambiguity_is_reported() {
    // (Z/3)^2: exponent 3, interval [5, 12] holds 6, 9, 12
    let g = CyclicProduct::new(&[3, 3]).with_generators(&[vec![1, 0], vec![0, 1]]);
    match group_order(&g, &OrderOracleMode::interval_search(1), &iv(5, 12), &one(), None) {
        Err(OrderError::Ambiguous(c)) => assert_eq!(c, vec![BigUint::from(6u32), BigUint::from(9u32), BigUint::from(12u32)]),
        other => panic!("{other:?}"),
    }
    // a known divisor of 9 resolves it
    assert_eq!(group_order(&g, &OrderOracleMode::interval_search(1), &iv(5, 12), &BigUint::from(9u32), None).unwrap(), BigUint::from(9u32));
    assert!(matches!(
        group_order(&g, &OrderOracleMode::BruteforceClosure { budget: 5 }, &iv(5, 12), &one(), None),
        Err(OrderError::ClosureBudget(5))
    ));
}

#[test]
fn extra_samples_extend_the_exponent() {
    // generator spans Z/4 inside Z/4 x Z/3; random products stay inside, so
    // samples come from the full group instead
    let full = CyclicProduct::new(&[4, 3]).with_generators(&[vec![1, 0]]);
    struct Full<'a>(&'a CyclicProduct, ChaCha8Rng);
    impl RandomElements for Full<'_> {
        fn random_element(&mut self) -> Result<Encoding, OrderError> {
            use rand::Rng;
            Ok(self.0.encode(&[self.1.gen_range(0..4), self.1.gen_range(0..3)]))
        }
    }
    let mut src = Full(&full, ChaCha8Rng::seed_from_u64(1));
    let got = group_order(&full, &OrderOracleMode::interval_search(0), &iv(5, 14), &one(), Some(&mut src)).unwrap();
    assert_eq!(got, BigUint::from(12u32));
}

fn jacobian_group(c: &HyperellipticCurve) -> JacobianGroup {
    let j = Jacobian::new(c, 1).unwrap();
    let m = CurveModel::Hyperelliptic(j.base_curve().clone());
    let mut gens = Vec::new();
    for e in 1..=j.genus() {
        for d in enumerate_prime_divisors(&m, e, 1 << 20).unwrap() {
            gens.push(j.from_prime_divisor(&d).unwrap());
        }
    }
    blackbox_from_curve(c, 1, &gens).unwrap()
}

#[test]
fn all_modes_agree_on_supersingular_curve() {
    let k = standard_field(2, 1).unwrap();
    let c = HyperellipticCurve::new(k.clone(), Poly::from_u64s(&k, &[0, 0, 0, 1]), Poly::one(&k)).unwrap();
    let bb = jacobian_group(&c);
    let w = WeilInterval::class_number(&BigUint::from(2u32), 1, 1);
    assert!(w.contains(&BigUint::from(3u32)));
    let modes = [
        OrderOracleMode::ExactFromZeta { weil: "q=2 g=1 coeffs=1,0,2".into(), n: 1 },
        OrderOracleMode::BruteforceClosure { budget: 100 },
        OrderOracleMode::interval_search(1),
        OrderOracleMode::QuantumSim { register_bits: 8, runs: 5 },
    ];
    for m in modes {
        assert_eq!(group_order(&bb, &m, &w, &one(), None).unwrap(), BigUint::from(3u32), "{}", m.name());
    }
}

#[test]
fn two_torsion_and_lagrange_on_jacobians() {
    let k = standard_field(5, 1).unwrap();
    let c = HyperellipticCurve::new(k.clone(), Poly::from_u64s(&k, &[0, 1, 0, 1]), Poly::zero()).unwrap();
    let bb = jacobian_group(&c);
    let j = bb.jacobian();
    let t = j.from_point(&k.zero(), &k.zero()).unwrap();
    assert_eq!(element_order_bsgs(&bb, &j.encode(&t), &BigUint::from(100u32)).unwrap(), BigUint::from(2u32));
    let w = WeilInterval::class_number(&BigUint::from(5u32), 1, 1);
    let h = group_order(&bb, &OrderOracleMode::BruteforceClosure { budget: 1000 }, &w, &one(), None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let d = j.random_divisor(&mut rng).unwrap();
        let o = element_order_bsgs(&bb, &j.encode(&d), &w.upper).unwrap();
        assert!((&h % &o).is_zero());
    }
}
