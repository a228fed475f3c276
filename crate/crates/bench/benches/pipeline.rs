use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zeta_core::curve::HyperellipticCurve;
use zeta_core::ff::{standard_field, Poly};
use zeta_core::jacobian::{blackbox_from_curve, Jacobian};
use zeta_core::order::{group_order, OrderOracleMode};
use zeta_core::weil::{reconstruct_main, ClassNumberSequence, WeilInterval, WeilPolynomial};

fn field_mul(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut g = c.benchmark_group("field_mul");
    for (p, k) in [(1031, 1), (1031, 4), (4093, 12)] {
        let f = standard_field(p, k).unwrap();
        let (a, b) = (f.random(&mut rng), f.random(&mut rng));
        g.bench_function(format!("F_{p}^{k}"), |bch| bch.iter(|| f.mul(black_box(&a), black_box(&b))));
    }
    g.finish();
}

fn genus2() -> HyperellipticCurve {
    let k = standard_field(1031, 1).unwrap();
    HyperellipticCurve::new(k.clone(), Poly::from_u64s(&k, &[1, 2, 0, 3, 0, 1]), Poly::zero()).unwrap()
}

fn cantor_add(c: &mut Criterion) {
    let curve = genus2();
    let jac = Jacobian::new(&curve, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = jac.random_divisor(&mut rng).unwrap();
    let b = jac.random_divisor(&mut rng).unwrap();
    c.bench_function("cantor_add_g2_F1031", |bch| bch.iter(|| jac.add(black_box(&a), black_box(&b))));
}

fn reconstruct(c: &mut Criterion) {
    let mut g = c.benchmark_group("reconstruct_main");
    g.sample_size(20);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for genus in [1, 2, 4] {
        let p = WeilPolynomial::random_synthetic(1031, genus, &mut rng);
        let seq = ClassNumberSequence::from_weil(&p, 18.max(2 * genus));
        g.bench_function(format!("g{genus}_q1031"), |bch| bch.iter(|| reconstruct_main(black_box(&seq)).unwrap()));
    }
    g.finish();
}

fn interval_search(c: &mut Criterion) {
    let curve = genus2();
    let jac = Jacobian::new(&curve, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let gens = (0..4).map(|_| jac.encode(&jac.random_divisor(&mut rng).unwrap())).collect();
    let bb = blackbox_from_curve(&curve, 1, &[]).unwrap().with_generators(gens);
    let iv = WeilInterval::class_number(&BigUint::from(1031u32), 2, 1);
    let mode = OrderOracleMode::interval_search(2);
    let mut g = c.benchmark_group("interval_search");
    g.sample_size(10);
    g.bench_function("g2_F1031", |bch| {
        bch.iter(|| group_order(&bb, &mode, &iv, &BigUint::from(1u32), None).unwrap())
    });
    g.finish();
}

criterion_group!(benches, field_mul, cantor_add, reconstruct, interval_search);
criterion_main!(benches);
