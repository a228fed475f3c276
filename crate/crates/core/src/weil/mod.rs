//! Weil polynomials, exact class numbers and cyclic resultants, and recovery
//! of the Weil polynomial from class numbers.

mod complex;
mod reconstruct;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::real::Interval;

pub use complex::{complex_roots, ComplexRoot};
pub use reconstruct::{
    find_prime_pair, min_sequence_length, reconstruct_main, reconstruct_smallq, tail_bound,
    tail_bound_table, working_precision, PrecisionReport, TAIL_LIMIT_DEN, TAIL_LIMIT_NUM,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeilError {
    #[error("invalid Weil polynomial: {0}")]
    Invalid(String),
    #[error("sequence too short: have {have} class numbers, need {need}")]
    SequenceTooShort { have: usize, need: usize },
    #[error("truncation tail for n={n}, k={k} is not certified below 0.495")]
    TailNotCertified { n: usize, k: usize },
    #[error("numeric error for n={n} not certified below 0.005 at {bits} bits")]
    Precision { n: usize, bits: u32 },
    #[error("no integer in the forced residue class near the estimate of p_{n}; class numbers inconsistent")]
    Rounding { n: usize },
    #[error("round-trip check failed at n={n}")]
    RoundTrip { n: usize },
    #[error("class number N_{n} = {value} is not positive")]
    NonPositive { n: usize, value: String },
    #[error("no prime pair found below {cap}")]
    NoPrimePair { cap: u64 },
    #[error("root pairing ambiguous: {0}")]
    Pairing(String),
    #[error("complex root finding did not converge at {bits} bits")]
    RootFinding { bits: u32 },
    #[error("coefficient rounding residual {residual:e} too large")]
    CoefficientRounding { residual: f64 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// `P(t) = 1 + a_1 t + ... + a_{2g} t^{2g}` over `F_q`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeilPolynomial {
    q: BigUint,
    g: usize,
    coeffs: Vec<BigInt>,
}

impl WeilPolynomial {
    /// Validates degree, constant term and the functional equation.
    pub fn new(q: BigUint, g: usize, coeffs: Vec<BigInt>) -> Result<Self, WeilError> {
        if q < BigUint::from(2u32) {
            return Err(WeilError::Invalid(format!("field size {q} < 2")));
        }
        if coeffs.len() != 2 * g + 1 {
            return Err(WeilError::Invalid(format!(
                "expected {} coefficients for genus {g}, got {}",
                2 * g + 1,
                coeffs.len()
            )));
        }
        if !coeffs[0].is_one() {
            return Err(WeilError::Invalid("constant term must be 1".into()));
        }
        let qi = BigInt::from(q.clone());
        let mut qpow = BigInt::one();
        for i in 1..=g {
            qpow *= &qi;
            if coeffs[g + i] != &qpow * &coeffs[g - i] {
                return Err(WeilError::Invalid(format!(
                    "functional equation fails at a_{}",
                    g + i
                )));
            }
        }
        Ok(WeilPolynomial { q, g, coeffs })
    }

    /// Builds `P` from `a_1..a_g` via the functional equation.
    pub fn from_first_half(q: BigUint, g: usize, first: &[BigInt]) -> Result<Self, WeilError> {
        if first.len() != g {
            return Err(WeilError::Invalid("need exactly g leading coefficients".into()));
        }
        let qi = BigInt::from(q.clone());
        let mut c = vec![BigInt::one()];
        c.extend(first.iter().cloned());
        let mut qpow = BigInt::one();
        for i in 1..=g {
            qpow *= &qi;
            let v = &qpow * &c[g - i];
            c.push(v);
        }
        Self::new(q, g, c)
    }

    /// `prod_j (1 - b_j t + q t^2)`.
    pub fn from_quadratic_factors(q: u64, bs: &[i64]) -> Result<Self, WeilError> {
        let mut c = vec![BigInt::one()];
        for &b in bs {
            if (b as i128) * (b as i128) > 4 * q as i128 {
                return Err(WeilError::Invalid(format!("|b| = {} exceeds 2 sqrt(q)", b.abs())));
            }
            let f = [BigInt::one(), BigInt::from(-b), BigInt::from(q)];
            c = poly_mul(&c, &f);
        }
        Self::new(BigUint::from(q), bs.len(), c)
    }

    /// A random product of `g` quadratics `1 - b t + q t^2`, `b^2 <= 4q`.
    pub fn random_synthetic<R: Rng + ?Sized>(q: u64, g: usize, rng: &mut R) -> Self {
        let bmax = (4 * q).sqrt() as i64;
        let bs: Vec<i64> = (0..g).map(|_| rng.gen_range(-bmax..=bmax)).collect();
        Self::from_quadratic_factors(q, &bs).expect("b within bound")
    }

    pub fn trivial(q: BigUint) -> Self {
        WeilPolynomial { q, g: 0, coeffs: vec![BigInt::one()] }
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Power sums `p_1..p_count` of the reciprocal roots `r_i`.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        power_sums(&self.coeffs, count)
    }

    /// `P(1) = #Cl(C)`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Number of points on the curve over `F_{q^n}`: `q^n + 1 - p_n`.
    pub fn point_count(&self, n: usize) -> BigInt {
        let p = self.power_sums(n);
        BigInt::from(self.q.pow(n as u32)) + 1 - &p[n - 1]
    }

    /// Canonical text form `weil q=<q> g=<g> coeffs=<a_0,...>`.
    pub fn to_line(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("weil q={} g={} coeffs={}", self.q, self.g, cs.join(","))
    }
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl FromStr for WeilPolynomial {
    type Err = WeilError;

    /// Accepts the `to_line` form, with or without the leading `weil`.
    fn from_str(s: &str) -> Result<Self, WeilError> {
        let perr = |msg: String| WeilError::Parse { line: 1, msg };
        let mut q = None;
        let mut g = None;
        let mut coeffs = None;
        for tok in s.split_whitespace() {
            if tok == "weil" {
                continue;
            }
            let (k, v) = tok.split_once('=').ok_or_else(|| perr(format!("expected key=value, got `{tok}`")))?;
            match k {
                "q" => q = Some(v.parse::<BigUint>().map_err(|e| perr(format!("q: {e}")))?),
                "g" => g = Some(v.parse::<usize>().map_err(|e| perr(format!("g: {e}")))?),
                "coeffs" => {
                    let c: Result<Vec<BigInt>, _> = v.split(',').map(|x| x.trim().parse::<BigInt>()).collect();
                    coeffs = Some(c.map_err(|e| perr(format!("coeffs: {e}")))?);
                }
                _ => return Err(perr(format!("unknown key `{k}`"))),
            }
        }
        let q = q.ok_or_else(|| perr("missing q".into()))?;
        let g = g.ok_or_else(|| perr("missing g".into()))?;
        let coeffs = coeffs.ok_or_else(|| perr("missing coeffs".into()))?;
        WeilPolynomial::new(q, g, coeffs)
    }
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Power sums of the `r_i` where `sum a_i t^i = prod (1 - r_i t)`, `a_0 = 1`.
/// Uses `k a_k + p_k + sum_{i<k} a_{k-i} p_i = 0`.
pub fn power_sums(a: &[BigInt], count: usize) -> Vec<BigInt> {
    debug_assert!(a.first().is_some_and(|x| x.is_one()));
    let mut p: Vec<BigInt> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut s = if k < a.len() { BigInt::from(k) * &a[k] } else { BigInt::zero() };
        for i in 1..k {
            if k - i < a.len() {
                s += &a[k - i] * &p[i - 1];
            }
        }
        p.push(-s);
    }
    p
}

/// Inverse of `power_sums`: coefficients `a_0..a_d` of `prod (1 - r_i t)`
/// from `p_1..p_d`. Exact division is asserted.
pub fn coeffs_from_power_sums(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::one()];
    for k in 1..=d {
        let mut s = p[k - 1].clone();
        for i in 1..k {
            s += &a[k - i] * &p[i - 1];
        }
        let (quo, rem) = (-s).div_rem(&BigInt::from(k));
        assert!(rem.is_zero(), "power sums not integral at k={k}");
        a.push(quo);
    }
    a
}

/// The Weil polynomial of the base change to `F_{q^m}`: roots `r_i^m`.
pub fn base_change(p: &WeilPolynomial, m: usize) -> WeilPolynomial {
    assert!(m >= 1);
    if m == 1 {
        return p.clone();
    }
    let d = 2 * p.g;
    let ps = p.power_sums(d * m);
    let sub: Vec<BigInt> = (1..=d).map(|j| ps[j * m - 1].clone()).collect();
    let coeffs = coeffs_from_power_sums(&sub, d);
    WeilPolynomial { q: p.q.pow(m as u32), g: p.g, coeffs }
}

/// `#Cl(C_n) = prod (1 - r_i^n)`, exactly.
pub fn class_number(p: &WeilPolynomial, n: usize) -> BigInt {
    assert!(n >= 1);
    base_change(p, n).at_one()
}

/// Class numbers `N_1..N_m`.
pub fn class_numbers(p: &WeilPolynomial, m: usize) -> Vec<BigUint> {
    (1..=m)
        .map(|n| {
            let v = class_number(p, n).to_biguint().expect("class numbers of Weil polynomials are positive");
            crate::audit::check_class_number(&p.q, p.g, n, &v);
            v
        })
        .collect()
}

/// `Res(P, t^m - 1)` for an integer polynomial `P` (lowest degree first),
/// with the convention `Res(A, B) = lc(A)^deg B prod_{A(a)=0} B(a)`.
///
/// Computed from power sums of the roots of the monic rescaling
/// `c^{d-1} P(t/c)`, `c = lc(P)`.
pub fn cyclic_resultant(p: &[BigInt], m: usize) -> BigInt {
    assert!(m >= 1);
    let mut c: Vec<BigInt> = p.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return BigInt::zero();
    }
    let d = c.len() - 1;
    let lc = c[d].clone();
    if d == 0 {
        return lc.pow(m as u32);
    }
    // monic Q(t) = t^d + sum_{i<d} c_i lc^{d-1-i} t^i with roots beta = lc * alpha
    let mut rev = vec![BigInt::one()];
    for i in (0..d).rev() {
        rev.push(&c[i] * lc.pow((d - 1 - i) as u32));
    }
    // rev is prod (1 - beta t); power sums of beta^m give prod (x - beta^m)
    let ps = power_sums(&rev, d * m);
    let sub: Vec<BigInt> = (1..=d).map(|j| ps[j * m - 1].clone()).collect();
    let e = coeffs_from_power_sums(&sub, d); // prod (1 - beta^m t)
    // prod_j (beta_j^m - x) at x = lc^m equals sum_k e_k x^{d-k} * (-1)^d
    let x = lc.pow(m as u32);
    let mut acc = BigInt::zero();
    for ek in &e {
        acc = acc * &x + ek;
    }
    // acc = prod (x - beta^m); prod(beta^m - x) = (-1)^d acc
    if d % 2 == 1 {
        acc = -acc;
    }
    // Res = lc^m prod (alpha^m - 1) = lc^m * prod(beta^m - lc^m) / lc^{md}
    let den = lc.pow((m * d) as u32);
    let num = acc * lc.pow(m as u32);
    let (quo, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quo
}

/// Where a class number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ExactFromZeta,
    GroupOrder,
    ExternalFile,
}

/// `N_n = #Cl(C_n)` for `n = 1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNumberSequence {
    pub q: BigUint,
    pub g: usize,
    pub values: Vec<BigUint>,
    pub provenance: Vec<Provenance>,
}

impl ClassNumberSequence {
    pub fn new(q: BigUint, g: usize, values: Vec<BigUint>, prov: Provenance) -> Self {
        let provenance = vec![prov; values.len()];
        ClassNumberSequence { q, g, values, provenance }
    }

    /// Exact sequence from a known Weil polynomial.
    pub fn from_weil(p: &WeilPolynomial, m: usize) -> Self {
        Self::new(p.q.clone(), p.g, class_numbers(p, m), Provenance::ExactFromZeta)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the first value outside its Weil interval, if any.
    pub fn first_out_of_bounds(&self) -> Option<usize> {
        (1..=self.values.len())
            .find(|&n| !WeilInterval::class_number(&self.q, self.g, n).contains(&self.values[n - 1]))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("classnumbers q={} g={} m={}\n", self.q, self.g, self.values.len());
        for v in &self.values {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, WeilError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(WeilError::Parse { line: 1, msg: "empty input".into() })?;
        let perr = |line: usize, msg: String| WeilError::Parse { line: line + 1, msg };
        let mut toks = header.split_whitespace();
        if toks.next() != Some("classnumbers") {
            return Err(perr(hl, "expected header `classnumbers q=.. g=.. m=..`".into()));
        }
        let (mut q, mut g, mut m) = (None, None, None);
        for t in toks {
            let (k, v) = t.split_once('=').ok_or_else(|| perr(hl, format!("bad token `{t}`")))?;
            match k {
                "q" => q = Some(v.parse::<BigUint>().map_err(|e| perr(hl, format!("q: {e}")))?),
                "g" => g = Some(v.parse::<usize>().map_err(|e| perr(hl, format!("g: {e}")))?),
                "m" => m = Some(v.parse::<usize>().map_err(|e| perr(hl, format!("m: {e}")))?),
                _ => return Err(perr(hl, format!("unknown key `{k}`"))),
            }
        }
        let q = q.ok_or_else(|| perr(hl, "missing q".into()))?;
        let g = g.ok_or_else(|| perr(hl, "missing g".into()))?;
        let m = m.ok_or_else(|| perr(hl, "missing m".into()))?;
        let mut values = Vec::with_capacity(m);
        for (ln, l) in lines {
            let v = l.trim().parse::<BigUint>().map_err(|e| perr(ln, format!("class number: {e}")))?;
            values.push(v);
        }
        if values.len() != m {
            return Err(perr(hl, format!("header says m={m} but {} values follow", values.len())));
        }
        Ok(Self::new(q, g, values, Provenance::ExternalFile))
    }
}

/// Inclusive integer interval guaranteed to contain a quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilInterval {
    pub lower: BigUint,
    pub upper: BigUint,
}

impl WeilInterval {
    /// `[(sqrt(Q) - 1)^{2g}, (sqrt(Q) + 1)^{2g}]` with `Q = q^n`, rounded outward.
    pub fn class_number(q: &BigUint, g: usize, n: usize) -> Self {
        if g == 0 {
            return WeilInterval { lower: BigUint::one(), upper: BigUint::one() };
        }
        let big_q = q.pow(n as u32);
        let prec = 32 + 2 * g as u32 * big_q.bits() as u32;
        let s = Interval::from_int(BigInt::from(big_q), prec).sqrt();
        let one = Interval::from_int(1, prec);
        let lo = s.sub(&one).powi(2 * g as u32);
        let hi = s.add(&one).powi(2 * g as u32);
        let (lo_int, _) = lo.integer_range();
        let (_, hi_int) = hi.integer_range();
        WeilInterval {
            lower: lo_int.max(BigInt::one()).to_biguint().unwrap(),
            upper: hi_int.to_biguint().unwrap(),
        }
    }

    /// `[Q + 1 - 2g sqrt(Q), Q + 1 + 2g sqrt(Q)]` for `#C(F_{q^n})`, exact
    /// integer rounding. The `+1` matters: `y^2 + y = x^3` has 9 points over `F_4`.
    pub fn point_count(q: &BigUint, g: usize, n: usize) -> Self {
        let center = q.pow(n as u32) + 1u32;
        let r = (BigUint::from(4 * g * g) * q.pow(n as u32)).sqrt();
        let lower = if r > center { BigUint::zero() } else { &center - &r };
        WeilInterval { lower, upper: center + r }
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> BigUint {
        &self.upper - &self.lower
    }

    pub fn upper_u128(&self) -> Option<u128> {
        self.upper.to_u128()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p12() -> WeilPolynomial {
        WeilPolynomial::new(BigUint::from(2u32), 1, bi(&[1, 0, 2])).unwrap()
    }

    /// Fraction-free Gaussian elimination determinant.
    fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// `Res(A, B)` from the Sylvester matrix; coefficients lowest degree first.
    fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
        let (m, n) = (a.len() - 1, b.len() - 1);
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut rows = Vec::with_capacity(size);
        for i in 0..n {
            let mut r = vec![BigInt::zero(); size];
            for (j, c) in a.iter().rev().enumerate() {
                r[i + j] = c.clone();
            }
            rows.push(r);
        }
        for i in 0..m {
            let mut r = vec![BigInt::zero(); size];
            for (j, c) in b.iter().rev().enumerate() {
                r[i + j] = c.clone();
            }
            rows.push(r);
        }
        bareiss_det(rows)
    }

    fn cyclic_by_sylvester(p: &[BigInt], m: usize) -> BigInt {
        let mut b = vec![BigInt::zero(); m + 1];
        b[0] = BigInt::from(-1);
        b[m] = BigInt::one();
        sylvester_resultant(p, &b)
    }

    #[test]
    fn class_numbers_of_1_plus_2t2() {
        let got: Vec<BigInt> = (1..=5).map(|n| class_number(&p12(), n)).collect();
        // r^4 = 4 for both roots, so N_4 = (1 - 4)^2 = 9
        assert_eq!(got, bi(&[3, 9, 9, 9, 33]));
        assert_eq!(cyclic_resultant(&bi(&[1, 0, 2]), 1), BigInt::from(3));
    }

    #[test]
    fn trivial_polynomial() {
        let p = WeilPolynomial::trivial(BigUint::from(7u32));
        for n in 1..6 {
            assert_eq!(class_number(&p, n), BigInt::one());
            assert_eq!(cyclic_resultant(&bi(&[1]), n), BigInt::one());
        }
    }

    #[test]
    fn base_change_squares_roots() {
        let b = base_change(&p12(), 2);
        assert_eq!(b.coeffs(), &bi(&[1, 4, 4])[..]);
        assert_eq!(b.q(), &BigUint::from(4u32));
        for n in 1..=6 {
            assert_eq!(class_number(&b, n), class_number(&p12(), 2 * n));
        }
        assert_eq!(base_change(&p12(), 1), p12());
    }

    #[test]
    fn consistency_triangle_on_synthetic_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let q = [2u64, 3, 5, 257, 1031][rng.gen_range(0..5)];
            let g = rng.gen_range(1..=4);
            let p = WeilPolynomial::random_synthetic(q, g, &mut rng);
            for m in 1..=6 {
                let b = base_change(&p, m);
                WeilPolynomial::new(b.q().clone(), g, b.coeffs().to_vec()).unwrap();
                for n in 1..=6 {
                    assert_eq!(class_number(&b, n), class_number(&p, m * n));
                }
            }
        }
    }

    #[test]
    fn cyclic_resultant_matches_sylvester() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let d = rng.gen_range(0..=12);
            let mut p: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            if p[d].is_zero() {
                p[d] = BigInt::from(rng.gen_range(1i64..=5));
            }
            let m = rng.gen_range(1..=24);
            assert_eq!(cyclic_resultant(&p, m), cyclic_by_sylvester(&p, m), "p={p:?} m={m}");
        }
    }

    #[test]
    fn cyclic_resultant_is_class_number_for_weil() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let p = WeilPolynomial::random_synthetic(5, 3, &mut rng);
            for m in 1..=8 {
                assert_eq!(cyclic_resultant(p.coeffs(), m), class_number(&p, m));
            }
        }
    }

    #[test]
    fn functional_equation_is_enforced() {
        assert!(WeilPolynomial::new(BigUint::from(2u32), 1, bi(&[1, 0, 3])).is_err());
        assert!(WeilPolynomial::new(BigUint::from(2u32), 1, bi(&[2, 0, 4])).is_err());
        let p = WeilPolynomial::from_first_half(BigUint::from(5u32), 1, &bi(&[3])).unwrap();
        assert_eq!(p.coeffs(), &bi(&[1, 3, 5])[..]);
        assert_eq!(p.point_count(1), BigInt::from(9));
    }

    #[test]
    fn text_round_trips() {
        let p: WeilPolynomial = "q=2 g=1 coeffs=1,0,2".parse().unwrap();
        assert_eq!(p, p12());
        assert_eq!(p.to_line().parse::<WeilPolynomial>().unwrap(), p);
        let s = ClassNumberSequence::from_weil(&p, 5);
        let back = ClassNumberSequence::parse(&s.to_text()).unwrap();
        assert_eq!(back.values, s.values);
        assert!(matches!(
            ClassNumberSequence::parse("classnumbers q=2 g=1 m=2\n3\nx\n"),
            Err(WeilError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn intervals_contain_corpus_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let q = [2u64, 3, 4, 5, 49, 1031][rng.gen_range(0..6)];
            let g = rng.gen_range(1..=3);
            let p = WeilPolynomial::random_synthetic(q, g, &mut rng);
            let qb = BigUint::from(q);
            for n in 1..=6 {
                let cn = class_number(&p, n).to_biguint().unwrap();
                assert!(WeilInterval::class_number(&qb, g, n).contains(&cn));
                // synthetic products need not come from curves, so counts may be negative for g > 1
                if let Some(pc) = p.point_count(n).to_biguint() {
                    assert!(WeilInterval::point_count(&qb, g, n).contains(&pc));
                }
            }
        }
        // extremal supersingular case: q = 4, P = (1 - 2t)^2 has P(1) = 1
        let p = WeilPolynomial::from_quadratic_factors(4, &[4]).unwrap();
        assert_eq!(p.at_one(), BigInt::one());
        assert!(WeilInterval::class_number(&BigUint::from(4u32), 1, 1).contains(&BigUint::one()));
    }
}
