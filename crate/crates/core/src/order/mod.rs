//! Group-order oracles for black-box groups: brute-force closure,
//! baby-step giant-step exponent plus Weil-interval search, and a simulated
//! quantum period finder.

mod quantum;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobian::{closure, BlackBoxGroup, Encoding, JacobianError};
use crate::weil::{class_number, WeilInterval, WeilPolynomial};

pub use quantum::{
    analytic_phase_distribution, continued_fraction_denominator, quantum_order_sim, recover_order,
    simulate_phase_distribution, total_variation, PhaseSampler, MAX_REGISTER_BITS,
};

/// Baby-step table cap.
pub const BSGS_TABLE_CAP: usize = 1 << 22;
/// Default closure budget.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error(transparent)]
    Group(#[from] JacobianError),
    #[error("element order exceeds the bound {0}")]
    BoundExceeded(BigUint),
    #[error("{} candidates remain in the interval: {}", .0.len(), join(.0))]
    Ambiguous(Vec<BigUint>),
    #[error("no multiple of {exponent} lies in [{lower}, {upper}]")]
    NoCandidate { exponent: BigUint, lower: BigUint, upper: BigUint },
    #[error("closure exceeds the budget of {0} elements")]
    ClosureBudget(usize),
    #[error("register of {bits} bits is too small for period {r}")]
    RegisterTooSmall { r: u64, bits: u32 },
    #[error("simulated period finding did not recover order {0}")]
    QuantumFailed(u64),
    #[error("{0}")]
    InvalidMode(String),
}

fn join(v: &[BigUint]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum OrderOracleMode {
    /// Reads the answer off a known numerator; verification use only.
    ExactFromZeta { weil: String, n: usize },
    BruteforceClosure { budget: usize },
    /// `extra_samples` random elements are folded into the exponent before
    /// giving up on ambiguity.
    IntervalSearch { extra_samples: usize },
    QuantumSim { register_bits: u32, runs: usize },
}

impl OrderOracleMode {
    pub fn name(&self) -> &'static str {
        match self {
            OrderOracleMode::ExactFromZeta { .. } => "exact_from_zeta",
            OrderOracleMode::BruteforceClosure { .. } => "bruteforce_closure",
            OrderOracleMode::IntervalSearch { .. } => "interval_search",
            OrderOracleMode::QuantumSim { .. } => "quantum_sim",
        }
    }

    /// Interval search with the `2g + 10` sample policy.
    pub fn interval_search(g: usize) -> Self {
        OrderOracleMode::IntervalSearch { extra_samples: 2 * g + 10 }
    }
}

/// Source of extra random elements for interval search.
pub trait RandomElements {
    fn random_element(&mut self) -> Result<Encoding, OrderError>;
}

/// Random products of the generators.
pub struct GeneratorProducts<'a, G: BlackBoxGroup + ?Sized> {
    pub group: &'a G,
    pub bound: BigUint,
    pub rng: &'a mut dyn RngCore,
}

impl<G: BlackBoxGroup + ?Sized> RandomElements for GeneratorProducts<'_, G> {
    fn random_element(&mut self) -> Result<Encoding, OrderError> {
        let mut acc = self.group.identity();
        for t in self.group.generators() {
            let e = num_bigint::RandBigInt::gen_biguint_below(self.rng, &self.bound.clone().max(BigUint::one()));
            acc = self.group.compose(&acc, &self.group.power(t, &e)?)?;
        }
        Ok(acc)
    }
}

/// Exact order of `x`, assumed at most `bound`, by baby-step giant-step.
/// The baby table holds at most `BSGS_TABLE_CAP` entries; larger bounds
/// take proportionally more giant steps.
pub fn element_order_bsgs<G: BlackBoxGroup + ?Sized>(g: &G, x: &Encoding, bound: &BigUint) -> Result<BigUint, OrderError> {
    let id = g.identity();
    if *x == id {
        return Ok(BigUint::one());
    }
    let b = bound.to_u128().ok_or_else(|| OrderError::BoundExceeded(bound.clone()))?;
    let m = ((b as f64).sqrt().ceil() as u128 + 1).min(BSGS_TABLE_CAP as u128) as u64;
    let mut table: HashMap<Encoding, u64> = HashMap::with_capacity(m as usize);
    let mut cur = id.clone();
    for j in 0..m {
        if j > 0 && cur == id {
            return Ok(BigUint::from(j));
        }
        table.entry(cur.clone()).or_insert(j);
        cur = g.compose(&cur, x)?;
    }
    // cur = x^m
    let step = cur;
    let mut giant = step.clone();
    let mut i: u128 = 1;
    while i * m as u128 <= b + m as u128 {
        if let Some(&j) = table.get(&giant) {
            return Ok(BigUint::from(i * m as u128 - j as u128));
        }
        giant = g.compose(&giant, &step)?;
        i += 1;
    }
    Err(OrderError::BoundExceeded(bound.clone()))
}

/// Multiples of `e` in `[lower, upper]`.
fn candidates(e: &BigUint, iv: &WeilInterval) -> Vec<BigUint> {
    let first = iv.lower.div_ceil(e) * e;
    let mut out = Vec::new();
    let mut c = first;
    while c <= iv.upper {
        if !c.is_zero() {
            out.push(c.clone());
        }
        c += e;
        if out.len() > 64 {
            break;
        }
    }
    out
}

/// `lcm(l, ord x)`, found as `l · ord(x^l)`: the first multiple of `l` in
/// the interval killing `x` is located by baby-step giant-step over the
/// scaled interval, then trimmed to the exact order.
fn extend_exponent<G: BlackBoxGroup + ?Sized>(g: &G, x: &Encoding, l: &BigUint, iv: &WeilInterval) -> Result<BigUint, OrderError> {
    let id = g.identity();
    let y = g.power(x, l)?;
    if y == id {
        return Ok(l.clone());
    }
    let klo = iv.lower.div_ceil(l).max(BigUint::one());
    let khi = &iv.upper / l;
    let none = || OrderError::NoCandidate { exponent: l.clone(), lower: iv.lower.clone(), upper: iv.upper.clone() };
    if klo > khi {
        return Err(none());
    }
    let width = (&khi - &klo).to_u128().ok_or_else(|| OrderError::BoundExceeded(iv.upper.clone()))?;
    let m = ((width as f64 + 1.0).sqrt().ceil() as u128 + 1).min(BSGS_TABLE_CAP as u128) as u64;
    // table of y^{-j}
    let yinv = g.invert(&y)?;
    let mut table: HashMap<Encoding, u64> = HashMap::with_capacity(m as usize);
    let mut cur = id.clone();
    for j in 0..m {
        if j > 0 && cur == id {
            return Ok(l * BigUint::from(j));
        }
        table.entry(cur.clone()).or_insert(j);
        cur = g.compose(&cur, &yinv)?;
    }
    let step = g.power(&y, &BigUint::from(m))?;
    let mut giant = g.power(&y, &klo)?;
    let mut i: u128 = 0;
    while i * m as u128 <= width {
        if let Some(&j) = table.get(&giant) {
            let k0 = &klo + BigUint::from(i * m as u128 + j as u128);
            if k0 > khi {
                break;
            }
            return Ok(l * trim_to_order(g, &y, k0)?);
        }
        giant = g.compose(&giant, &step)?;
        i += 1;
    }
    Err(none())
}

/// Exact order of `y` given a multiple `k`.
fn trim_to_order<G: BlackBoxGroup + ?Sized>(g: &G, y: &Encoding, k: BigUint) -> Result<BigUint, OrderError> {
    let k128 = k.to_u128().ok_or_else(|| OrderError::BoundExceeded(k.clone()))?;
    let id = g.identity();
    let mut o = k128;
    for (p, e) in num_prime::nt_funcs::factorize128(k128) {
        for _ in 0..e {
            if g.power(y, &BigUint::from(o / p))? == id {
                o /= p;
            } else {
                break;
            }
        }
    }
    Ok(BigUint::from(o))
}

/// Order of the group spanned by the generators (and, for interval search,
/// the extra random elements). `known_divisor` is a number the answer must
/// be a multiple of, e.g. `#Cl(C_d)` for `d | n`.
pub fn group_order<G: BlackBoxGroup + ?Sized>(
    g: &G,
    mode: &OrderOracleMode,
    interval: &WeilInterval,
    known_divisor: &BigUint,
    extra: Option<&mut dyn RandomElements>,
) -> Result<BigUint, OrderError> {
    match mode {
        OrderOracleMode::ExactFromZeta { weil, n } => {
            let p: WeilPolynomial = weil.parse().map_err(|e| OrderError::InvalidMode(format!("{e}")))?;
            class_number(&p, *n).to_biguint().ok_or_else(|| OrderError::InvalidMode("nonpositive class number".into()))
        }
        OrderOracleMode::BruteforceClosure { budget } => {
            let all = closure(g, g.generators(), *budget).map_err(|e| match e {
                JacobianError::ClosureLimit(b) => OrderError::ClosureBudget(b),
                e => e.into(),
            })?;
            Ok(BigUint::from(all.len()))
        }
        OrderOracleMode::IntervalSearch { extra_samples } => {
            let mut l = known_divisor.clone();
            for x in g.generators() {
                if candidates(&l, interval).len() == 1 {
                    break;
                }
                l = extend_exponent(g, x, &l, interval)?;
            }
            search(g, l, interval, *extra_samples, extra)
        }
        OrderOracleMode::QuantumSim { register_bits, runs } => {
            let mut e = BigUint::one();
            for x in g.generators() {
                let r = element_order_bsgs(g, x, &interval.upper)?;
                let r = r.to_u64().ok_or(OrderError::RegisterTooSmall { r: u64::MAX, bits: *register_bits })?;
                e = e.lcm(&BigUint::from(quantum_element_order(r, *register_bits, *runs)?));
            }
            search(g, e.lcm(known_divisor), interval, 0, None)
        }
    }
}

/// Runs the simulated period finder until the lcm of `runs` measurements
/// equals the hidden order, up to 10 rounds.
fn quantum_element_order(r: u64, bits: u32, runs: usize) -> Result<u64, OrderError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(r);
    let sampler = PhaseSampler::new(r, bits)?;
    for _ in 0..10 {
        let got = recover_order(&sampler, runs, &mut rng);
        if got == r {
            return Ok(got);
        }
    }
    Err(OrderError::QuantumFailed(r))
}

fn search<G: BlackBoxGroup + ?Sized>(
    g: &G,
    mut l: BigUint,
    interval: &WeilInterval,
    extra_samples: usize,
    mut extra: Option<&mut dyn RandomElements>,
) -> Result<BigUint, OrderError> {
    let mut samples = 0;
    loop {
        let c = candidates(&l, interval);
        match c.len() {
            0 => {
                return Err(OrderError::NoCandidate { exponent: l, lower: interval.lower.clone(), upper: interval.upper.clone() })
            }
            1 => return Ok(c.into_iter().next().unwrap()),
            _ if samples >= extra_samples || extra.is_none() => return Err(OrderError::Ambiguous(c)),
            _ => {
                let x = extra.as_mut().unwrap().random_element()?;
                l = extend_exponent(g, &x, &l, interval)?;
                samples += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests;
