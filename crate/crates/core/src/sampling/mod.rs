//! Near-uniform samplers: success boosting, rejection to uniform, random
//! prime divisors via Riemann-Roch spaces, and generator finding for the
//! class group.

mod generators;
mod prime;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::curve::CurveError;
use crate::jacobian::{closure, BlackBoxGroup, CyclicProduct, JacobianError};

pub use generators::{find_generators, generator_list_parameters, DegreeLog, GeneratorCertificate, GeneratorConfig};
pub use prime::{prime_divisor_oracle, PrimeDivisorOracle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplingError {
    #[error("hypothesis 16g < q^(e/2) fails for g={g}, q={q}, e={e}")]
    Hypothesis { g: usize, q: String, e: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Group(#[from] JacobianError),
    #[error("sampler failed {0} times in a row")]
    Exhausted(usize),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoostTarget {
    Half,
    ThreeQuarters,
}

/// Invocations of a success-probability-`a` procedure needed to succeed
/// with probability at least 1/2 (`8/a^2`) or 3/4 (`16/a^2`).
pub fn boost_invocations(a: f64, target: BoostTarget) -> u64 {
    assert!(a > 0.0 && a <= 1.0, "success probability must lie in (0, 1]");
    let c = match target {
        BoostTarget::Half => 8.0,
        BoostTarget::ThreeQuarters => 16.0,
    };
    if a == 1.0 {
        return 1;
    }
    ((c / (a * a)) - 1e-9).ceil().max(1.0) as u64
}

/// A sampler over a finite set whose output probabilities differ by at
/// most a factor `bound()`, failing with probability at most
/// `failure_bound()`.
pub trait BUniformOracle {
    type Item;
    fn bound(&self) -> f64;
    fn failure_bound(&self) -> f64 {
        0.25
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Result<Option<Self::Item>, SamplingError>;
}

/// Rejection conversion of a sampler with known output probabilities
/// `probs` (conditioned on success) into a uniform one. Draws at most
/// `16 b^2` times.
pub struct ToUniform<F> {
    pub probs: Vec<f64>,
    pub b: f64,
    pub draw: F,
}

impl<F> ToUniform<F> {
    pub fn invocations(&self) -> u64 {
        (16.0 * self.b * self.b).ceil() as u64
    }

    fn p0(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl<F: Fn(&mut dyn RngCore) -> Option<usize>> BUniformOracle for ToUniform<F> {
    type Item = usize;

    fn bound(&self) -> f64 {
        1.0
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<Option<usize>, SamplingError> {
        if self.probs.is_empty() || self.probs.iter().any(|&p| p <= 0.0) {
            return Err(SamplingError::Invalid("distribution must be positive on V".into()));
        }
        let p0 = self.p0();
        for _ in 0..self.invocations() {
            let Some(x) = (self.draw)(rng) else { continue };
            if rng.gen::<f64>() * self.probs[x] < p0 {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Exact output law of `ToUniform` for a raw sampler that succeeds with
/// probability `success` and then follows `probs`: returns the per-element
/// output probabilities and the failure probability.
pub fn to_uniform_law(probs: &[f64], success: f64, invocations: u64) -> (Vec<f64>, f64) {
    let p0 = probs.iter().copied().fold(f64::INFINITY, f64::min);
    let per_round = success * p0 * probs.len() as f64;
    let fail = (1.0 - per_round).powi(invocations as i32);
    let each = (1.0 - fail) / probs.len() as f64;
    (vec![each; probs.len()], fail)
}

/// Fraction of `trials` in which `h + i` uniform elements generate the
/// group `Z/n_1 x ... x Z/n_k`.
pub fn pak_generation_probability_check<R: Rng + ?Sized>(moduli: &[u64], h: usize, i: usize, trials: usize, rng: &mut R) -> f64 {
    let order: u64 = moduli.iter().product();
    let mut hits = 0;
    for _ in 0..trials {
        let gens: Vec<Vec<u64>> = (0..h + i).map(|_| moduli.iter().map(|&n| rng.gen_range(0..n)).collect()).collect();
        let g = CyclicProduct::new(moduli).with_generators(&gens);
        let size = closure(&g, g.generators(), order as usize).expect("bounded by the group order").len();
        if size as u64 == order {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}
