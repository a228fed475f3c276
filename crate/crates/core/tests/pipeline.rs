use zeta_core::curve::parse_curve_file;
use zeta_core::driver::{class_numbers, compute_zeta, ReconstructionPath, ZetaConfig};
use zeta_core::order::OrderOracleMode;
use zeta_core::weil::{reconstruct_main, ClassNumberSequence, WeilPolynomial};

const CURVE: &str = "\
# ordinary elliptic curve
field p=263 a=1
curve kind=hyperelliptic f=x^3 + x + 1 h=0
";

#[test]
fn curve_file_to_weil_polynomial() {
    let model = parse_curve_file(CURVE).unwrap();
    let truth = model.zeta(1 << 20).unwrap();
    let curve = model.as_hyperelliptic().unwrap();
    let r = compute_zeta(curve, &ZetaConfig::new(OrderOracleMode::interval_search(1), 3)).unwrap();
    assert_eq!(r.polynomial, truth);
    assert_eq!(r.path, ReconstructionPath::Main { m: 2 });
    assert!(r.verification.round_trip && r.verification.within_weil_bounds && r.verification.functional_equation);
}

#[test]
fn oracle_class_numbers_feed_reconstruction() {
    let model = parse_curve_file(CURVE).unwrap();
    let curve = model.as_hyperelliptic().unwrap();
    let cfg = ZetaConfig::new(OrderOracleMode::BruteforceClosure { budget: 1 << 17 }, 0);
    let recs = class_numbers(curve, &cfg, &[1, 2]).unwrap();
    let text = format!(
        "# from closure\nclassnumbers q=263 g=1 m=2\n{}\n{}\n",
        recs[0].value, recs[1].value
    );
    let seq = ClassNumberSequence::parse(&text).unwrap();
    let (p, _) = reconstruct_main(&seq).unwrap();
    assert_eq!(p, model.zeta(1 << 20).unwrap());
    assert_eq!(ClassNumberSequence::parse(&seq.to_text()).unwrap().values, seq.values);
}

#[test]
fn weil_text_round_trip() {
    let p: WeilPolynomial = "weil q=5 g=2 coeffs=1,2,3,10,25".parse().unwrap();
    assert_eq!(p.to_string().parse::<WeilPolynomial>().unwrap(), p);
    assert!("weil q=5 g=2 coeffs=1,2,3,10,24".parse::<WeilPolynomial>().is_err());
}
