//! End-to-end zeta computation: generators of each `Cl(C_n)`, class numbers
//! through a group-order oracle, reconstruction of `P(t)`, round-trip check.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::audit;
use crate::curve::{enumerate_prime_divisors, CurveError, CurveModel, HyperellipticCurve, DEFAULT_ENUMERATION_BUDGET};
use crate::ff::make_extension;
use crate::jacobian::{blackbox_from_curve, Encoding, JacobianError, JacobianGroup};
use crate::order::{group_order, GeneratorProducts, OrderError, OrderOracleMode};
use crate::sampling::{find_generators, GeneratorConfig, SamplingError};
use crate::weil::{
    class_number, find_prime_pair, min_sequence_length, reconstruct_main, reconstruct_smallq, ClassNumberSequence,
    Provenance, WeilError, WeilInterval, WeilPolynomial,
};

/// Per-degree draws used with order search.
pub const SEARCH_GENERATORS_PER_DEGREE: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct ZetaConfig {
    pub mode: OrderOracleMode,
    pub seed: u64,
    /// Draws per degree in generator finding; `None` keeps the default.
    pub generator_cap: Option<usize>,
    /// Overrides the number of class numbers per sequence.
    pub sequence_length: Option<usize>,
    /// Point enumeration limit when generators are listed exhaustively.
    pub enumeration_budget: u128,
    /// Record wall-clock stage timings (breaks byte-identical reports).
    pub timings: bool,
}

impl ZetaConfig {
    /// Closure needs a generating set, so it keeps the full per-degree list.
    /// Order search only needs elements whose orders leave one candidate in
    /// the interval, and draws random products beyond that.
    pub fn new(mode: OrderOracleMode, seed: u64) -> Self {
        let generator_cap = match mode {
            OrderOracleMode::BruteforceClosure { .. } => None,
            _ => Some(SEARCH_GENERATORS_PER_DEGREE),
        };
        ZetaConfig { mode, seed, generator_cap, sequence_length: None, enumeration_budget: DEFAULT_ENUMERATION_BUDGET, timings: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Setup,
    Generators,
    ClassNumbers,
    Reconstruction,
    Verification,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Setup => "setup",
            Stage::Generators => "generators",
            Stage::ClassNumbers => "class_numbers",
            Stage::Reconstruction => "reconstruction",
            Stage::Verification => "verification",
        }
    }

    /// The result each stage relies on.
    pub fn reference(self) -> &'static str {
        match self {
            Stage::Setup => "prime pair search for the small-q path",
            Stage::Generators => "random prime divisors generate the class group",
            Stage::ClassNumbers => "group order within the Weil interval",
            Stage::Reconstruction => "Moebius-truncated log series and Newton-Girard rounding",
            Stage::Verification => "class numbers as cyclic resultants",
        }
    }
}

/// How a failure should be reported to a caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Budget,
    Invariant,
}

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("stage {} ({}): {source}", .stage.name(), .stage.reference())]
    Curve { stage: Stage, source: CurveError },
    #[error("stage {} ({}), n={n}: {source}", .stage.name(), .stage.reference())]
    Sampling { stage: Stage, n: usize, source: SamplingError },
    #[error("stage {} ({}), n={n}: {source}", .stage.name(), .stage.reference())]
    Order { stage: Stage, n: usize, source: OrderError },
    #[error("stage {} ({}): {source}", .stage.name(), .stage.reference())]
    Weil { stage: Stage, source: WeilError },
    #[error("stage {} ({}): {msg}", .stage.name(), .stage.reference())]
    Invariant { stage: Stage, msg: String },
}

fn curve_kind(e: &CurveError) -> ErrorKind {
    match e {
        CurveError::Budget { .. } => ErrorKind::Budget,
        CurveError::WeilViolation { .. } => ErrorKind::Invariant,
        _ => ErrorKind::Input,
    }
}

impl ZetaError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            ZetaError::Curve { source, .. } => curve_kind(source),
            ZetaError::Sampling { source, .. } => match source {
                SamplingError::Curve(c) => curve_kind(c),
                SamplingError::Exhausted(_) => ErrorKind::Budget,
                SamplingError::Hypothesis { .. } | SamplingError::Group(JacobianError::Unsupported(_)) => ErrorKind::Input,
                _ => ErrorKind::Invariant,
            },
            ZetaError::Order { source, .. } => match source {
                OrderError::Ambiguous(_)
                | OrderError::ClosureBudget(_)
                | OrderError::BoundExceeded(_)
                | OrderError::RegisterTooSmall { .. }
                | OrderError::QuantumFailed(_) => ErrorKind::Budget,
                OrderError::InvalidMode(_) => ErrorKind::Input,
                _ => ErrorKind::Invariant,
            },
            ZetaError::Weil { source, .. } => match source {
                WeilError::NoPrimePair { .. } => ErrorKind::Budget,
                WeilError::Parse { .. } | WeilError::Invalid(_) => ErrorKind::Input,
                _ => ErrorKind::Invariant,
            },
            ZetaError::Invariant { .. } => ErrorKind::Invariant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "path")]
pub enum ReconstructionPath {
    Trivial,
    Main { m: usize },
    SmallQ { m1: u64, m2: u64, len1: usize, len2: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassNumberRecord {
    /// Extension degree over the base field.
    pub n: usize,
    pub value: String,
    pub provenance: Provenance,
    pub generators: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub round_trip: bool,
    pub within_weil_bounds: bool,
    pub functional_equation: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageTiming {
    pub stage: Stage,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub q: String,
    pub g: usize,
    pub config: ZetaConfig,
    pub path: ReconstructionPath,
    pub class_numbers: Vec<ClassNumberRecord>,
    pub weil: String,
    pub coeffs: Vec<String>,
    pub verification: Verification,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<StageTiming>,
    #[serde(skip)]
    pub polynomial: WeilPolynomial,
}

struct Run<'a> {
    curve: &'a HyperellipticCurve,
    cfg: &'a ZetaConfig,
    q: BigUint,
    g: usize,
    rng: ChaCha8Rng,
    known: BTreeMap<usize, ClassNumberRecord>,
    values: BTreeMap<usize, BigUint>,
    gen_millis: u128,
}

impl Run<'_> {
    /// `#Cl(C_n)`, computing all `#Cl(C_d)` for `d | n` first: they divide it.
    fn class_number(&mut self, n: usize) -> Result<BigUint, ZetaError> {
        if let Some(v) = self.values.get(&n) {
            return Ok(v.clone());
        }
        let mut known = BigUint::one();
        if matches!(self.cfg.mode, OrderOracleMode::IntervalSearch { .. } | OrderOracleMode::QuantumSim { .. }) {
            // a proper divisor only sharpens the search, so ambiguity there is not fatal
            for d in (1..n).filter(|d| n % d == 0) {
                match self.class_number(d) {
                    Ok(v) => known = known.lcm(&v),
                    Err(ZetaError::Order { source: OrderError::Ambiguous(_), .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        let interval = WeilInterval::class_number(&self.q, self.g, n);
        let (value, provenance, generators) = match &self.cfg.mode {
            OrderOracleMode::ExactFromZeta { weil, .. } => {
                let p: WeilPolynomial =
                    weil.parse().map_err(|source| ZetaError::Weil { stage: Stage::ClassNumbers, source })?;
                let v = class_number(&p, n).to_biguint().ok_or_else(|| ZetaError::Invariant {
                    stage: Stage::ClassNumbers,
                    msg: format!("nonpositive class number at n={n}"),
                })?;
                (v, Provenance::ExactFromZeta, 0)
            }
            mode => {
                let curve_err = |source| ZetaError::Curve { stage: Stage::Generators, source };
                let (_, emb) = make_extension(self.curve.field(), n).map_err(|e| curve_err(e.into()))?;
                let curve_n = self.curve.base_change(&emb);
                let order_err = |source| ZetaError::Order { stage: Stage::ClassNumbers, n, source };
                let t = Instant::now();
                let bb = blackbox_from_curve(&curve_n, 1, &[]).map_err(|e| order_err(e.into()))?;
                let gens = self.generators(&curve_n, &bb, n)?;
                self.gen_millis += t.elapsed().as_millis();
                let count = gens.len();
                let bb = bb.with_generators(gens);
                let mut extra = GeneratorProducts { group: &bb, bound: interval.upper.clone(), rng: &mut self.rng };
                let v = group_order(&bb, mode, &interval, &known, Some(&mut extra)).map_err(order_err)?;
                (v, Provenance::GroupOrder, count)
            }
        };
        if !audit::check_class_number(&self.q, self.g, n, &value) {
            return Err(ZetaError::Invariant {
                stage: Stage::ClassNumbers,
                msg: format!("#Cl(C_{n}) = {value} lies outside [{}, {}]", interval.lower, interval.upper),
            });
        }
        self.known.insert(n, ClassNumberRecord { n, value: value.to_string(), provenance, generators });
        self.values.insert(n, value.clone());
        Ok(value)
    }

    /// Random prime divisors when `16 g < q^(n/2)`; otherwise every prime
    /// divisor of degree at most `g`, which generate since each class has a
    /// reduced representative of degree at most `g`.
    fn generators(&mut self, curve_n: &HyperellipticCurve, bb: &JacobianGroup, n: usize) -> Result<Vec<Encoding>, ZetaError> {
        let g = self.g;
        let qn = self.q.pow(n as u32);
        if BigUint::from(256 * g * g) < qn {
            let cfg = GeneratorConfig { cap_per_degree: self.cfg.generator_cap };
            let cert = find_generators(curve_n, &cfg, &mut self.rng)
                .map_err(|source| ZetaError::Sampling { stage: Stage::Generators, n, source })?;
            return Ok(cert.generators);
        }
        let jac = bb.jacobian();
        let model = CurveModel::Hyperelliptic(jac.base_curve().clone());
        let mut out = Vec::new();
        for e in 1..=g {
            let divisors = enumerate_prime_divisors(&model, e, self.cfg.enumeration_budget)
                .map_err(|source| ZetaError::Curve { stage: Stage::Generators, source })?;
            for d in divisors {
                let enc = jac.encode(&jac.from_prime_divisor(&d).map_err(|e| ZetaError::Order {
                    stage: Stage::Generators,
                    n,
                    source: e.into(),
                })?);
                if !out.contains(&enc) {
                    out.push(enc);
                }
            }
        }
        Ok(out)
    }

    fn sequence(&mut self, step: usize, len: usize) -> Result<ClassNumberSequence, ZetaError> {
        let mut values = Vec::with_capacity(len);
        let mut prov = Vec::with_capacity(len);
        for i in 1..=len {
            values.push(self.class_number(step * i)?);
            prov.push(self.known[&(step * i)].provenance);
        }
        Ok(ClassNumberSequence { q: self.q.pow(step as u32), g: self.g, values, provenance: prov })
    }
}

impl<'a> Run<'a> {
    fn new(curve: &'a HyperellipticCurve, cfg: &'a ZetaConfig) -> Self {
        Run {
            curve,
            cfg,
            q: curve.field().order().clone(),
            g: curve.genus(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            known: BTreeMap::new(),
            values: BTreeMap::new(),
            gen_millis: 0,
        }
    }
}

/// `#Cl(C_n)` for each requested `n` through the configured oracle, sorted
/// by `n`. Search modes also compute and include divisors of each `n`.
pub fn class_numbers(
    curve: &HyperellipticCurve,
    cfg: &ZetaConfig,
    ns: &[usize],
) -> Result<Vec<ClassNumberRecord>, ZetaError> {
    let mut run = Run::new(curve, cfg);
    for &n in ns {
        run.class_number(n)?;
    }
    Ok(run.known.into_values().collect())
}

/// Computes `P(t)` for `curve` over its base field.
///
/// When `16 g < sqrt q` the class numbers of `C_1, ..., C_m` are used
/// directly; otherwise those of `C_{m1 n}` and `C_{m2 n}` for a prime pair
/// `(m1, m2)`, and the roots are recombined.
pub fn compute_zeta(curve: &HyperellipticCurve, cfg: &ZetaConfig) -> Result<ZetaReport, ZetaError> {
    let start = Instant::now();
    let g = curve.genus();
    let q = curve.field().order().clone();
    let mut run = Run::new(curve, cfg);
    let weil_err = |stage| move |source| ZetaError::Weil { stage, source };
    let small_q = BigUint::from(256 * g * g) >= q;
    let pair = if g > 0 && small_q { Some(find_prime_pair(&q, g).map_err(weil_err(Stage::Setup))?) } else { None };
    let setup_ms = start.elapsed().as_millis();

    let t = Instant::now();
    let (path, polynomial) = if g == 0 {
        (ReconstructionPath::Trivial, WeilPolynomial::trivial(q.clone()))
    } else if let Some((m1, m2)) = pair {
        let (q1, q2) = (q.pow(m1 as u32), q.pow(m2 as u32));
        let len1 = cfg.sequence_length.unwrap_or_else(|| min_sequence_length(&q1, g));
        let len2 = cfg.sequence_length.unwrap_or_else(|| min_sequence_length(&q2, g));
        let s1 = run.sequence(m1 as usize, len1)?;
        let s2 = run.sequence(m2 as usize, len2)?;
        let p = reconstruct_smallq(&s1, &s2, &q, m1, m2).map_err(weil_err(Stage::Reconstruction))?;
        (ReconstructionPath::SmallQ { m1, m2, len1, len2 }, p)
    } else {
        let m = cfg.sequence_length.unwrap_or_else(|| min_sequence_length(&q, g));
        let s = run.sequence(1, m)?;
        let (p, _) = reconstruct_main(&s).map_err(weil_err(Stage::Reconstruction))?;
        (ReconstructionPath::Main { m }, p)
    };
    let total_ms = t.elapsed().as_millis();

    let t = Instant::now();
    let mut round_trip = true;
    for (&n, v) in &run.values {
        if class_number(&polynomial, n).to_biguint().as_ref() != Some(v) {
            round_trip = false;
        }
    }
    let within_weil_bounds = run.values.iter().all(|(&n, v)| WeilInterval::class_number(&q, g, n).contains(v));
    let functional_equation = WeilPolynomial::new(q.clone(), g, polynomial.coeffs().to_vec()).is_ok();
    if !round_trip || !within_weil_bounds || !functional_equation {
        return Err(ZetaError::Invariant {
            stage: Stage::Verification,
            msg: format!(
                "round_trip={round_trip} within_weil_bounds={within_weil_bounds} functional_equation={functional_equation}"
            ),
        });
    }
    let verify_ms = t.elapsed().as_millis();

    let timings = if cfg.timings {
        vec![
            StageTiming { stage: Stage::Setup, millis: setup_ms },
            StageTiming { stage: Stage::Generators, millis: run.gen_millis },
            StageTiming { stage: Stage::ClassNumbers, millis: total_ms.saturating_sub(run.gen_millis) },
            StageTiming { stage: Stage::Verification, millis: verify_ms },
        ]
    } else {
        Vec::new()
    };
    Ok(ZetaReport {
        q: q.to_string(),
        g,
        config: cfg.clone(),
        path,
        class_numbers: run.known.into_values().collect(),
        weil: polynomial.to_line(),
        coeffs: polynomial.coeffs().iter().map(|c| c.to_string()).collect(),
        verification: Verification { round_trip, within_weil_bounds, functional_equation },
        timings,
        polynomial,
    })
}
