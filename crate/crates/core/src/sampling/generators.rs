//! Generating sets for `Cl^0(C)` from random prime divisors of degree up
//! to `2g + 1`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::RngCore;
use serde::Serialize;

use crate::curve::HyperellipticCurve;
use crate::jacobian::{Encoding, Jacobian};

use super::{prime_divisor_oracle, BUniformOracle, SamplingError};

#[derive(Clone, Debug, Default)]
pub struct GeneratorConfig {
    /// Draws per degree; `None` means `2 (h + 3)`.
    pub cap_per_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeLog {
    pub degree: usize,
    pub n_param: usize,
    pub list_size: usize,
    pub drawn: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCertificate {
    #[serde(skip)]
    pub generators: Vec<Encoding>,
    pub h: usize,
    pub logs: Vec<DegreeLog>,
}

fn log2(q: &BigUint) -> f64 {
    let bits = q.bits();
    if bits <= 1000 {
        return q.to_f64().expect("finite").log2();
    }
    let top = (q >> (bits - 64)).to_f64().expect("finite");
    top.log2() + (bits - 64) as f64
}

/// `h = ceil(g log2(q + sqrt q))` and, for each degree `i <= 2g + 1`,
/// `N_i = ceil(1 + (2g - 2 + d) / i)` and list size
/// `32 N_i^2 (2g - 1)^2 (h + 3)`.
pub fn generator_list_parameters(q: &BigUint, g: usize, d: usize) -> (usize, Vec<DegreeLog>) {
    let lq = log2(q);
    // log2(q + sqrt q) = log2 q + log2(1 + q^(-1/2))
    let h = (g as f64 * (lq + (1.0 + (-lq / 2.0).exp2()).log2()) - 1e-9).ceil().max(1.0) as usize;
    let logs = (1..=2 * g + 1)
        .map(|i| {
            let n = 1 + (2 * g + d - 2).div_ceil(i);
            let w = (2 * g).saturating_sub(1).max(1);
            DegreeLog { degree: i, n_param: n, list_size: 32 * n * n * w * w * (h + 3), drawn: 0, failures: 0 }
        })
        .collect();
    (h, logs)
}

/// Draws prime divisors of every degree `1..=2g+1` and returns their
/// classes as encodings. The list sizes are capped by `cfg`.
pub fn find_generators(
    curve: &HyperellipticCurve,
    cfg: &GeneratorConfig,
    rng: &mut dyn RngCore,
) -> Result<GeneratorCertificate, SamplingError> {
    let jac = Jacobian::new(curve, 1)?;
    let g = jac.genus();
    let q = jac.field().order();
    let (h, mut logs) = generator_list_parameters(&q, g, jac.base_curve().plane_degree());
    let cap = cfg.cap_per_degree.unwrap_or(2 * (h + 3));
    let mut generators = Vec::new();
    for log in &mut logs {
        let oracle = prime_divisor_oracle(jac.base_curve(), log.degree)?;
        for _ in 0..log.list_size.min(cap) {
            match oracle.sample(rng)? {
                Some(p) => {
                    let e = jac.encode(&jac.from_prime_divisor(&p)?);
                    if !generators.contains(&e) {
                        generators.push(e);
                    }
                    log.drawn += 1;
                }
                None => log.failures += 1,
            }
        }
    }
    Ok(GeneratorCertificate { generators, h, logs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;
    use crate::ff::{standard_field, Poly};
    use crate::jacobian::{blackbox_from_curve, closure, BlackBoxGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parameter_example() {
        let (h, logs) = generator_list_parameters(&BigUint::from(1031u32), 1, 3);
        assert_eq!(h, 11);
        assert_eq!(logs.len(), 3);
        assert_eq!((logs[0].n_param, logs[0].list_size), (4, 7168));
    }

    #[test]
    fn generators_span_the_class_group() {
        let k = standard_field(263, 1).unwrap();
        let c = HyperellipticCurve::new(k.clone(), Poly::from_u64s(&k, &[1, 1, 0, 1]), Poly::zero()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cert = find_generators(&c, &GeneratorConfig::default(), &mut rng).unwrap();
        assert!(cert.logs.iter().all(|l| l.drawn > 0));
        let bb = blackbox_from_curve(&c, 1, &[]).unwrap().with_generators(cert.generators);
        let n1 = CurveModel::Hyperelliptic(c).count_points(1, 1 << 20).unwrap().count;
        let size = closure(&bb, bb.generators(), 1000).unwrap().len();
        assert_eq!(BigUint::from(size), n1);
    }
}
