use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use zeta_core::curve::{format_poly, parse_curve_file, CurveModel, HyperellipticCurve, Support, DEFAULT_ENUMERATION_BUDGET};
use zeta_core::driver::{class_numbers as run_class_numbers, compute_zeta, ReconstructionPath, ZetaConfig};
use zeta_core::order::OrderOracleMode;
use zeta_core::sampling::{prime_divisor_oracle, BUniformOracle};
use zeta_core::weil::{
    class_numbers, cyclic_resultant, reconstruct_main, reconstruct_smallq, ClassNumberSequence, Provenance,
    WeilPolynomial,
};

use crate::report::Report;
use crate::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Read the order off the brute-force zeta function (presumes the answer).
    Exact,
    Closure,
    Interval,
    Qsim,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OracleArgs {
    /// Group-order oracle.
    #[arg(long, value_enum, default_value = "interval")]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest subgroup the closure oracle will enumerate.
    #[arg(long, default_value_t = 1_000_000)]
    pub closure_budget: usize,
    /// Statevector register size for the simulated period finding.
    #[arg(long, default_value_t = 22)]
    pub register_bits: u32,
    /// Period-finding runs combined per element.
    #[arg(long, default_value_t = 5)]
    pub qsim_runs: usize,
    /// Random elements folded into the exponent before reporting ambiguity;
    /// defaults to 2g + 10.
    #[arg(long)]
    pub extra_samples: Option<usize>,
    /// Prime divisors drawn per degree when finding generators.
    #[arg(long)]
    pub generator_cap: Option<usize>,
    /// Limit on enumerated x-values for brute-force steps.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub enumeration_budget: u128,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    pub curve: PathBuf,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Use class numbers of the brute-force zeta function. This presumes
    /// the answer and only exercises reconstruction.
    #[arg(long)]
    pub test_oracle: bool,
    /// Class numbers per sequence; defaults to the certified minimum.
    #[arg(long)]
    pub sequence_length: Option<usize>,
    /// Record per-stage wall-clock timings.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct CountsArgs {
    pub curve: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub max: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub enumeration_budget: u128,
}

#[derive(Args, Debug)]
pub struct ClassnumArgs {
    /// Curve file; class numbers come from the chosen order oracle.
    #[arg(required_unless_present = "weil", conflicts_with = "weil")]
    pub curve: Option<PathBuf>,
    /// Weil polynomial `q=<q> g=<g> coeffs=<a_0,...>`.
    #[arg(long)]
    pub weil: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub max: usize,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Args, Debug)]
pub struct ResultantsArgs {
    #[arg(long)]
    pub weil: String,
    #[arg(long, default_value_t = 1)]
    pub max: usize,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    /// Sequence file; give two together with `--q` for the two-extension path.
    #[arg(long = "in", required = true, num_args = 1)]
    pub inputs: Vec<PathBuf>,
    /// Base field size when recovering from two extensions.
    #[arg(long)]
    pub q: Option<BigUint>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    pub curve: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    pub curve: PathBuf,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_curve(path: &Path) -> Result<CurveModel> {
    let text = read(path)?;
    parse_curve_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn hyperelliptic(model: CurveModel, path: &Path) -> Result<HyperellipticCurve> {
    match model {
        CurveModel::Hyperelliptic(c) => Ok(c),
        CurveModel::Plane(_) => Err(InputError(format!("{}: this command needs a hyperelliptic model", path.display())).into()),
    }
}

fn parse_weil(s: &str) -> Result<WeilPolynomial> {
    s.parse::<WeilPolynomial>().with_context(|| format!("parsing Weil polynomial `{s}`"))
}

impl OracleArgs {
    fn config(&self, model: &CurveModel) -> Result<ZetaConfig> {
        let g = model.genus();
        let mode = match self.mode {
            Mode::Exact => {
                let p = model.zeta(self.enumeration_budget).context("brute-force zeta function")?;
                OrderOracleMode::ExactFromZeta { weil: p.to_string(), n: 1 }
            }
            Mode::Closure => OrderOracleMode::BruteforceClosure { budget: self.closure_budget },
            Mode::Interval => match self.extra_samples {
                Some(extra_samples) => OrderOracleMode::IntervalSearch { extra_samples },
                None => OrderOracleMode::interval_search(g),
            },
            Mode::Qsim => OrderOracleMode::QuantumSim { register_bits: self.register_bits, runs: self.qsim_runs },
        };
        let mut cfg = ZetaConfig::new(mode, self.seed);
        if self.generator_cap.is_some() {
            cfg.generator_cap = self.generator_cap;
        }
        cfg.enumeration_budget = self.enumeration_budget;
        Ok(cfg)
    }
}

pub fn zeta(a: ZetaArgs) -> Result<Report> {
    let model = load_curve(&a.curve)?;
    let mut oracle = a.oracle.clone();
    if a.test_oracle {
        oracle.mode = Mode::Exact;
    } else if oracle.mode == Mode::Exact {
        return Err(InputError("mode `exact` presumes the answer; pass --test-oracle to use it".into()).into());
    }
    let mut cfg = oracle.config(&model)?;
    cfg.sequence_length = a.sequence_length;
    cfg.timings = a.timings;
    let curve = hyperelliptic(model, &a.curve)?;
    let r = compute_zeta(&curve, &cfg)?;
    let mut rep = Report::new("zeta", &cfg).result(&r);
    if a.test_oracle {
        rep.line("# test oracle: class numbers were read off the brute-force zeta function");
    }
    rep.line(r.polynomial.to_string());
    rep.line(match &r.path {
        ReconstructionPath::Trivial => "path trivial".to_string(),
        ReconstructionPath::Main { m } => format!("path main m={m}"),
        ReconstructionPath::SmallQ { m1, m2, len1, len2 } => format!("path small_q m1={m1} m2={m2} len1={len1} len2={len2}"),
    });
    for c in &r.class_numbers {
        let prov = serde_json::to_value(c.provenance)?;
        rep.line(format!("classnumber n={} value={} provenance={} generators={}", c.n, c.value, prov.as_str().unwrap_or(""), c.generators));
    }
    let v = &r.verification;
    rep.line(format!(
        "verification round_trip={} within_weil_bounds={} functional_equation={}",
        v.round_trip, v.within_weil_bounds, v.functional_equation
    ));
    for t in &r.timings {
        rep.line(format!("timing stage={} millis={}", t.stage.name(), t.millis));
    }
    Ok(rep)
}

pub fn counts(a: CountsArgs) -> Result<Report> {
    let model = load_curve(&a.curve)?;
    let counts = (1..=a.max)
        .map(|n| model.count_points(n, a.enumeration_budget))
        .collect::<Result<Vec<_>, _>>()
        .context("point counting")?;
    let cfg = json!({ "curve": a.curve, "max": a.max, "enumeration_budget": a.enumeration_budget });
    let q = model.field().order().clone();
    let mut rep = Report::new("counts", cfg).result(json!({ "q": q.to_string(), "g": model.genus(), "counts": counts }));
    rep.line(format!("counts q={q} g={} m={}", model.genus(), a.max));
    for c in &counts {
        rep.line(format!("n={} count={}", c.n, c.count));
    }
    Ok(rep)
}

pub fn classnum(a: ClassnumArgs) -> Result<Report> {
    let (seq, cfg) = match (&a.weil, &a.curve) {
        (Some(w), _) => {
            let p = parse_weil(w)?;
            let seq = ClassNumberSequence::from_weil(&p, a.max);
            (seq, json!({ "weil": w, "max": a.max }))
        }
        (None, Some(path)) => {
            let model = load_curve(path)?;
            let cfg = a.oracle.config(&model)?;
            let q = model.field().order().clone();
            let g = model.genus();
            let curve = hyperelliptic(model, path)?;
            let ns: Vec<usize> = (1..=a.max).collect();
            let recs = run_class_numbers(&curve, &cfg, &ns)?;
            let values = recs.iter().map(|r| r.value.parse::<BigUint>()).collect::<Result<Vec<_>, _>>()?;
            let mut seq = ClassNumberSequence::new(q, g, values, Provenance::GroupOrder);
            seq.provenance = recs.iter().map(|r| r.provenance).collect();
            (seq, serde_json::to_value(&cfg)?)
        }
        (None, None) => return Err(InputError("need a curve file or --weil".into()).into()),
    };
    let mut rep = Report::new("classnum", cfg).result(&seq);
    rep.line(seq.to_text().trim_end());
    Ok(rep)
}

pub fn resultants(a: ResultantsArgs) -> Result<Report> {
    let p = parse_weil(&a.weil)?;
    let values: Vec<String> = (1..=a.max).map(|m| cyclic_resultant(p.coeffs(), m).to_string()).collect();
    // cross-check against the power-sum route
    let exact = class_numbers(&p, a.max);
    for (m, (r, c)) in values.iter().zip(&exact).enumerate() {
        anyhow::ensure!(*r == c.to_string(), "resultant and class number disagree at m={}", m + 1);
    }
    let cfg = json!({ "weil": a.weil, "max": a.max });
    let mut rep = Report::new("resultants", cfg).result(json!({ "q": p.q().to_string(), "g": p.genus(), "values": values }));
    rep.line(format!("resultants q={} g={} m={}", p.q(), p.genus(), a.max));
    rep.lines.extend(values);
    Ok(rep)
}

/// `log_q(x)` when `x` is an exact power of `q`.
fn exact_log(x: &BigUint, q: &BigUint) -> Option<u64> {
    if *q < BigUint::from(2u32) {
        return None;
    }
    let mut k = 0;
    let mut y = BigUint::from(1u32);
    while y < *x {
        y *= q;
        k += 1;
    }
    (y == *x).then_some(k)
}

pub fn recover(a: RecoverArgs) -> Result<Report> {
    let seqs = a
        .inputs
        .iter()
        .map(|p| read(p).and_then(|t| ClassNumberSequence::parse(&t).with_context(|| format!("parsing {}", p.display()))))
        .collect::<Result<Vec<_>>>()?;
    let cfg = json!({ "inputs": a.inputs, "q": a.q.as_ref().map(|q| q.to_string()) });
    let p = match (seqs.as_slice(), &a.q) {
        ([s], None) => reconstruct_main(s)?.0,
        ([s1, s2], Some(q)) => {
            let m1 = exact_log(&s1.q, q).ok_or_else(|| InputError(format!("{} is not a power of q={q}", s1.q)))?;
            let m2 = exact_log(&s2.q, q).ok_or_else(|| InputError(format!("{} is not a power of q={q}", s2.q)))?;
            reconstruct_smallq(s1, s2, q, m1, m2)?
        }
        ([_, _], None) => return Err(InputError("two sequences need --q".into()).into()),
        _ => return Err(InputError("give one --in, or two --in with --q".into()).into()),
    };
    let mut rep = Report::new("recover", cfg).result(json!({
        "q": p.q().to_string(),
        "g": p.genus(),
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    }));
    rep.line(p.to_string());
    Ok(rep)
}

#[derive(Serialize)]
struct SampledDivisor {
    degree: usize,
    kind: &'static str,
    u: Option<String>,
    v: Option<String>,
}

pub fn sample(a: SampleArgs) -> Result<Report> {
    let model = load_curve(&a.curve)?;
    let curve = hyperelliptic(model, &a.curve)?;
    let k = curve.field().clone();
    let oracle = prime_divisor_oracle(&curve, a.degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut out = Vec::with_capacity(a.count);
    let mut failures = 0usize;
    while out.len() < a.count {
        match oracle.sample(&mut rng)? {
            Some(d) => out.push(match &d.support {
                Support::Infinity { .. } => SampledDivisor { degree: d.degree, kind: "infinity", u: None, v: None },
                Support::Affine { u, v } => SampledDivisor {
                    degree: d.degree,
                    kind: "affine",
                    u: Some(format_poly(u, &k, "x")),
                    v: Some(format_poly(v, &k, "x")),
                },
                Support::Conjugate { u } => {
                    SampledDivisor { degree: d.degree, kind: "conjugate", u: Some(format_poly(u, &k, "x")), v: None }
                }
                Support::Plane => SampledDivisor { degree: d.degree, kind: "plane", u: None, v: None },
            }),
            None => failures += 1,
        }
    }
    let cfg = json!({ "curve": a.curve, "degree": a.degree, "count": a.count, "seed": a.seed });
    let mut rep = Report::new("sample", cfg).result(json!({ "divisors": out, "failures": failures }));
    for d in &out {
        let mut s = format!("divisor degree={} kind={}", d.degree, d.kind);
        if let Some(u) = &d.u {
            s.push_str(&format!(" u={u}"));
        }
        if let Some(v) = &d.v {
            s.push_str(&format!(" v={v}"));
        }
        rep.line(s);
    }
    Ok(rep)
}

pub fn order(a: OrderArgs) -> Result<Report> {
    if a.n == 0 {
        return Err(InputError("--n must be positive".into()).into());
    }
    let model = load_curve(&a.curve)?;
    let cfg = a.oracle.config(&model)?;
    let curve = hyperelliptic(model, &a.curve)?;
    let recs = run_class_numbers(&curve, &cfg, &[a.n])?;
    let rec = recs.into_iter().find(|r| r.n == a.n).expect("requested degree is computed");
    let mut rep = Report::new("order", &cfg).result(&rec);
    rep.line(format!("order n={} mode={} value={} generators={}", rec.n, cfg.mode.name(), rec.value, rec.generators));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_log_powers() {
        let q = BigUint::from(4u32);
        assert_eq!(exact_log(&BigUint::from(64u32), &q), Some(3));
        assert_eq!(exact_log(&BigUint::from(1u32), &q), Some(0));
        assert_eq!(exact_log(&BigUint::from(48u32), &q), None);
    }
}
