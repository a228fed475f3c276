use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::curve::{enumerate_prime_divisors, CurveModel};
use crate::ff::standard_field;
use crate::weil::class_number;

fn hyp(p: u64, a: usize, f: &[u64], h: &[u64]) -> HyperellipticCurve {
    let k = standard_field(p, a).unwrap();
    HyperellipticCurve::new(k.clone(), Poly::from_u64s(&k, f), Poly::from_u64s(&k, h)).unwrap()
}

type Pt = Option<(Fe, Fe)>;

/// Chord-tangent law on `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
fn chord_tangent(c: &HyperellipticCurve, p: &Pt, q: &Pt) -> Pt {
    let k = c.field();
    let (a1, a3) = (c.h().coeff(k, 1), c.h().coeff(k, 0));
    let (a2, a4) = (c.f().coeff(k, 2), c.f().coeff(k, 1));
    let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
        return p.clone().or(q.clone());
    };
    let l = if x1 != x2 {
        k.div(&k.sub(y2, y1), &k.sub(x2, x1)).unwrap()
    } else {
        let s = k.add(&k.add(y1, y2), &k.add(&k.mul(&a1, x2), &a3));
        if s.is_zero() {
            return None;
        }
        let num = k.sub(
            &k.add(&k.add(&k.scale(&k.square(x1), 3), &k.scale(&k.mul(&a2, x1), 2)), &a4),
            &k.mul(&a1, y1),
        );
        let den = k.add(&k.add(&k.scale(y1, 2), &k.mul(&a1, x1)), &a3);
        k.div(&num, &den).unwrap()
    };
    let nu = k.sub(y1, &k.mul(&l, x1));
    let x3 = k.sub(&k.sub(&k.sub(&k.add(&k.square(&l), &k.mul(&a1, &l)), &a2), x1), x2);
    let y3 = k.sub(&k.sub(&k.neg(&k.mul(&k.add(&l, &a1), &x3)), &nu), &a3);
    Some((x3, y3))
}

fn to_point(j: &Jacobian, d: &MumfordDivisor) -> Pt {
    if j.is_identity(d) {
        return None;
    }
    assert_eq!(d.u.deg(), 1);
    let k = j.field();
    Some((k.neg(&d.u.coeff(k, 0)), d.v.coeff(k, 0)))
}

fn affine_points(j: &Jacobian) -> Vec<(Fe, Fe)> {
    let k = j.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    for i in 0..k.order_u128().unwrap() {
        let x = k.from_index(i);
        for y in j.curve().fiber(&x, &mut rng).unwrap() {
            out.push((x.clone(), y));
        }
    }
    out
}

#[test]
fn cantor_matches_chord_tangent() {
    for (c, n) in [(hyp(5, 1, &[0, 1, 0, 1], &[]), 1), (hyp(2, 1, &[0, 0, 0, 1], &[1]), 2), (hyp(2, 2, &[1, 0, 0, 1], &[0, 1]), 1)] {
        let j = Jacobian::new(&c, n).unwrap();
        let pts = affine_points(&j);
        let mut all: Vec<Pt> = pts.into_iter().map(Some).collect();
        all.push(None);
        for p in &all {
            for q in &all {
                let dp = p.as_ref().map_or(j.identity(), |(x, y)| j.from_point(x, y).unwrap());
                let dq = q.as_ref().map_or(j.identity(), |(x, y)| j.from_point(x, y).unwrap());
                assert_eq!(to_point(&j, &j.add(&dp, &dq)), chord_tangent(j.curve(), p, q));
            }
        }
    }
}

#[test]
fn two_torsion_has_v_zero() {
    let j = Jacobian::new(&hyp(5, 1, &[0, 1, 0, 1], &[]), 1).unwrap();
    for (x, y) in affine_points(&j) {
        let d = j.from_point(&x, &y).unwrap();
        assert_eq!(j.neg(&d) == d, y.is_zero());
    }
    assert_eq!(j.neg(&j.identity()), j.identity());
}

fn corpus() -> Vec<HyperellipticCurve> {
    vec![
        hyp(2, 1, &[0, 0, 0, 1], &[1]),
        hyp(5, 1, &[0, 1, 0, 1], &[]),
        hyp(3, 1, &[1, 2, 0, 0, 0, 1], &[]),
        hyp(7, 1, &[1, 2, 0, 3, 0, 1], &[1, 1]),
        hyp(2, 1, &[1, 0, 0, 0, 0, 1], &[0, 1, 1]),
        hyp(2, 2, &[0, 1, 0, 1], &[1]),
        hyp(3, 1, &[1, 1, 0, 0, 0, 0, 0, 1], &[]),
    ]
}

#[test]
fn group_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in corpus() {
        let j = Jacobian::new(&c, 2).unwrap();
        for _ in 0..200 {
            let a = j.random_divisor(&mut rng).unwrap();
            let b = j.random_divisor(&mut rng).unwrap();
            let d = j.random_divisor(&mut rng).unwrap();
            assert!(j.is_reduced(&a));
            assert_eq!(j.add(&j.add(&a, &b), &d), j.add(&a, &j.add(&b, &d)));
            assert_eq!(j.add(&a, &b), j.add(&b, &a));
            assert_eq!(j.add(&a, &j.identity()), a);
            assert!(j.is_identity(&j.add(&a, &j.neg(&a))));
            assert_eq!(j.neg(&j.neg(&a)), a);
        }
    }
}

fn generators(j: &Jacobian) -> Vec<MumfordDivisor> {
    let m = CurveModel::Hyperelliptic(j.base_curve().clone());
    let mut out = Vec::new();
    for e in 1..=j.genus() {
        for d in enumerate_prime_divisors(&m, e, 1 << 20).unwrap() {
            out.push(j.from_prime_divisor(&d).unwrap());
        }
    }
    out
}

#[test]
fn closure_order_equals_p_at_one() {
    for c in corpus() {
        let p = CurveModel::Hyperelliptic(c.clone()).zeta(1 << 20).unwrap();
        let gens = generators(&Jacobian::new(&c, 1).unwrap());
        let bb = blackbox_from_curve(&c, 1, &gens).unwrap();
        let all = closure(&bb, bb.generators(), 1 << 16).unwrap();
        let h = class_number(&p, 1).to_biguint().unwrap();
        assert_eq!(BigUint::from(all.len()), h, "{c:?}");
        for x in bb.generators() {
            assert_eq!(bb.power(x, &h).unwrap(), bb.identity());
        }
    }
}

#[test]
fn supersingular_curve_has_three_classes() {
    let c = hyp(2, 1, &[0, 0, 0, 1], &[1]);
    let j = Jacobian::new(&c, 1).unwrap();
    let pts: Vec<MumfordDivisor> = affine_points(&j).iter().map(|(x, y)| j.from_point(x, y).unwrap()).collect();
    let bb = blackbox_from_curve(&c, 1, &pts).unwrap();
    assert_eq!(closure(&bb, bb.generators(), 100).unwrap().len(), 3);
    let empty = blackbox_from_curve(&c, 1, &[]).unwrap();
    assert_eq!(closure(&empty, empty.generators(), 100).unwrap().len(), 1);
}

#[test]
fn even_degree_model_uses_odd_transform() {
    let k = standard_field(7, 1).unwrap();
    let c = HyperellipticCurve::new(k.clone(), Poly::from_i64s(&k, &[0, 1, -1, -2, 0, 1, 1]), Poly::zero()).unwrap();
    let p = CurveModel::Hyperelliptic(c.clone()).zeta(1 << 20).unwrap();
    let j = Jacobian::new(&c, 1).unwrap();
    assert!(j.curve().is_odd_degree());
    let bb = blackbox_from_curve(&c, 1, &generators(&j)).unwrap();
    assert_eq!(BigUint::from(closure(&bb, bb.generators(), 1 << 16).unwrap().len()), class_number(&p, 1).to_biguint().unwrap());
}

#[test]
fn encoding_round_trip_and_uniqueness() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in corpus() {
        let j = Jacobian::new(&c, 3).unwrap();
        let id = j.encode(&j.identity());
        assert_eq!(id.len_bits(), j.bit_length());
        assert_eq!(id.as_bytes()[0], FORMAT_TAG);
        assert!((8..id.len_bits()).all(|i| !id.bit(i)));
        let mut seen = std::collections::HashMap::new();
        for _ in 0..300 {
            let d = j.random_divisor(&mut rng).unwrap();
            let e = j.encode(&d);
            assert_eq!(j.decode(&e).unwrap(), d);
            assert_eq!(seen.entry(e).or_insert_with(|| d.clone()), &d);
        }
    }
}

#[test]
fn malformed_encodings_rejected() {
    let j = Jacobian::new(&hyp(5, 1, &[0, 1, 0, 1], &[]), 1).unwrap();
    let k = j.field();
    let good = j.encode(&j.from_point(&k.from_u64(0), &k.from_u64(0)).unwrap());
    let bits = j.bit_length();
    assert_eq!(j.decode(&Encoding::from_hex(&good.to_hex(), bits).unwrap()).unwrap(), j.from_point(&k.zero(), &k.zero()).unwrap());
    // wrong tag
    let mut b = good.as_bytes().to_vec();
    b[0] = 9;
    assert!(j.decode(&Encoding::from_bytes(b, bits).unwrap()).is_err());
    // (x, 1) is not on y^2 = x^3 + x
    let off = MumfordDivisor { u: Poly::x(k), v: Poly::one(k) };
    assert!(matches!(j.decode(&j.encode(&off)), Err(JacobianError::Decode(_))));
    // coordinate 7 >= p in the u_0 slot
    let mut b = good.as_bytes().to_vec();
    let base = 8 + 1;
    for i in 0..3 {
        b[(base + i) / 8] |= 1 << ((base + i) % 8);
    }
    assert!(j.decode(&Encoding::from_bytes(b, bits).unwrap()).is_err());
    // nonzero padding, wrong lengths
    assert!(Encoding::from_bytes(vec![0; 1], bits).is_err());
    assert!(Encoding::from_bytes(vec![0xff; bits.div_ceil(8)], bits).is_err());
}
