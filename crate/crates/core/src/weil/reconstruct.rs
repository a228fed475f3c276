//! Recovery of `P(t)` from class numbers: Moebius-truncated log series with
//! certified interval arithmetic, residue-class rounding of power sums, and
//! the two-prime route for small `q`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::complex::{complex_roots, CFix, ComplexRoot};
use super::{base_change, class_number, ClassNumberSequence, WeilError, WeilPolynomial};
use crate::ff::is_prime_u64;
use crate::real::Interval;

/// The truncation tail must be certified below `TAIL_LIMIT_NUM / TAIL_LIMIT_DEN`.
pub const TAIL_LIMIT_NUM: u64 = 495;
pub const TAIL_LIMIT_DEN: u64 = 1000;

const TAIL_PREC: u32 = 64;
const PRIME_SEARCH_CAP: u64 = 10_000;

/// Upper enclosure of `(k+1) Q^{-(k-1)/2} / (1 - Q^{-1/2})`, `Q = q^n`.
pub fn tail_bound(n: usize, k: usize, q: &BigUint) -> Interval {
    assert!(k >= 1 && n >= 1);
    let big_q = q.pow(n as u32);
    assert!(big_q >= BigUint::from(2u32), "q^n must be at least 2");
    let s = Interval::from_int(BigInt::from(big_q), TAIL_PREC).sqrt();
    let s1 = s.sub(&Interval::from_int(1, TAIL_PREC));
    let kk = Interval::from_int(k as u64 + 1, TAIL_PREC);
    // (k+1) s^{2-k} / (s - 1)
    if k == 1 {
        kk.mul(&s).div(&s1).expect("s > 1")
    } else {
        kk.div(&s.powi(k as u32 - 2).mul(&s1)).expect("s > 1")
    }
}

fn tail_ok(n: usize, k: usize, q: &BigUint) -> bool {
    tail_bound(n, k, q).upper_lt_ratio(TAIL_LIMIT_NUM, TAIL_LIMIT_DEN)
}

/// The seven `(k0, q0)` pairs, each with its certified upper tail value.
pub fn tail_bound_table() -> Vec<(usize, u64, f64)> {
    [(2, 50), (3, 14), (4, 7), (5, 5), (6, 4), (8, 3), (15, 2)]
        .into_iter()
        .map(|(k, q)| (k, q, tail_bound(1, k, &BigUint::from(q)).upper_f64()))
        .collect()
}

/// Smallest `m >= 2g` for which the tail is certified for every `n <= g`.
pub fn min_sequence_length(q: &BigUint, g: usize) -> usize {
    if g == 0 {
        return 1;
    }
    (2 * g..)
        .find(|&m| (1..=g).all(|n| tail_ok(n, m / n, q)))
        .expect("the tail vanishes as m grows")
}

/// `64 + ceil(g m log2 q) + 4 ceil(log2 m)` bits.
pub fn working_precision(q: &BigUint, g: usize, m: usize) -> u32 {
    let lq = q.bits() as usize; // >= log2 q
    let lm = usize::BITS - m.max(1).leading_zeros();
    (64 + g * m * lq + 4 * lm as usize) as u32
}

fn mobius(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Per-`n` certificate of a reconstruction.
#[derive(Clone, Debug, Serialize)]
pub struct PrecisionReport {
    pub bits: u32,
    /// `(n, k, tail upper bound, numeric interval width)` for each `n <= g`.
    pub steps: Vec<(usize, usize, f64, f64)>,
}

/// Recovers `P(t)` from `N_1..N_m`. Requires `m >= 2g` and a certified tail
/// for every `n <= g` (always the case for `m >= max(18, 2g)`).
pub fn reconstruct_main(seq: &ClassNumberSequence) -> Result<(WeilPolynomial, PrecisionReport), WeilError> {
    let (q, g, m) = (&seq.q, seq.g, seq.values.len());
    if let Some(n) = seq.values.iter().position(|v| v.is_zero()) {
        return Err(WeilError::NonPositive { n: n + 1, value: "0".into() });
    }
    if g == 0 {
        if let Some(n) = seq.values.iter().position(|v| !v.is_one()) {
            return Err(WeilError::RoundTrip { n: n + 1 });
        }
        return Ok((WeilPolynomial::trivial(q.clone()), PrecisionReport { bits: 0, steps: vec![] }));
    }
    let need = min_sequence_length(q, g);
    if m < need {
        return Err(WeilError::SequenceTooShort { have: m, need });
    }
    let bits = working_precision(q, g, m);
    let (first, report) = match recover_half(seq, bits) {
        Err(WeilError::Precision { .. }) => recover_half(seq, 2 * bits)?,
        other => other?,
    };
    let p = WeilPolynomial::from_first_half(q.clone(), g, &first)?;
    for (i, v) in seq.values.iter().enumerate() {
        if class_number(&p, i + 1) != BigInt::from(v.clone()) {
            return Err(WeilError::RoundTrip { n: i + 1 });
        }
    }
    Ok((p, report))
}

fn recover_half(seq: &ClassNumberSequence, bits: u32) -> Result<(Vec<BigInt>, PrecisionReport), WeilError> {
    let (q, g, m) = (&seq.q, seq.g, seq.values.len());
    let lnq = Interval::ln_int(q, bits);
    // log c_j = log N_j - g j log q
    let logc: Vec<Interval> = seq
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let j = (i + 1) * g;
            Interval::ln_int(v, bits).sub(&lnq.mul_int(&BigInt::from(j)))
        })
        .collect();
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    let mut p: Vec<BigInt> = Vec::with_capacity(g);
    let mut steps = Vec::with_capacity(g);
    let qi = BigInt::from(q.clone());
    for n in 1..=g {
        let k = m / n;
        if !tail_ok(n, k, q) {
            return Err(WeilError::TailNotCertified { n, k });
        }
        // q^n e_n = sum_{i<=k} -q^n mu(i) log c_{ni} / (n i)
        let mut e = Interval::from_int(0, bits);
        for i in 1..=k {
            let mu = mobius(i);
            if mu != 0 {
                let t = logc[n * i - 1].mul_int(&BigInt::from(-mu)).div_int(&BigInt::from(n * i));
                e = e.add(&t);
            }
        }
        let e = e.mul_int(&qi.pow(n as u32));
        if !e.width_lt(5, 1000) {
            return Err(WeilError::Precision { n, bits });
        }
        let tail = tail_bound(n, k, q);
        steps.push((n, k, tail.upper_f64(), e.width_f64()));
        // p_n lies in n * (e +- tail)
        let slack = tail.with_precision(bits);
        let lo_tail = Interval::from_raw(-slack.hi_raw().clone(), slack.hi_raw().clone(), bits);
        let window = e.add(&lo_tail).mul_int(&BigInt::from(n));
        let (lo, hi) = window.integer_range();
        let nb = BigInt::from(n);
        let mut known = BigInt::zero();
        for i in 1..n {
            known += &a[i] * &p[n - i - 1];
        }
        let rho = (-&known).mod_floor(&nb);
        let first = &lo + (&rho - &lo).mod_floor(&nb);
        if first > hi || &first + &nb <= hi {
            return Err(WeilError::Rounding { n });
        }
        let an = -(&first + &known);
        debug_assert!(an.is_multiple_of(&nb));
        a.push(an / &nb);
        p.push(first);
    }
    a.remove(0);
    Ok((a, PrecisionReport { bits, steps }))
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            best = d;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        best = n;
    }
    best
}

/// Smallest `m1 < m2`, both prime, each `m_i - 1` having a prime factor
/// `> 2g`, and `16 g < q^{m1/2}`.
pub fn find_prime_pair(q: &BigUint, g: usize) -> Result<(u64, u64), WeilError> {
    assert!(g >= 1);
    let valid = |m: u64| is_prime_u64(m) && largest_prime_factor(m - 1) > 2 * g as u64;
    let bound = BigUint::from(256 * g as u64 * g as u64);
    let m1 = (3..PRIME_SEARCH_CAP)
        .find(|&m| valid(m) && q.pow(m as u32) > bound)
        .ok_or(WeilError::NoPrimePair { cap: PRIME_SEARCH_CAP })?;
    let m2 = (m1 + 1..PRIME_SEARCH_CAP)
        .find(|&m| valid(m))
        .ok_or(WeilError::NoPrimePair { cap: PRIME_SEARCH_CAP })?;
    Ok((m1, m2))
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    debug_assert_eq!(r0, 1);
    (s0, t0)
}

/// Fixed-point `sqrt(v)` at `w` fractional bits.
fn sqrt_fixed(v: &BigUint, w: u32) -> BigInt {
    BigInt::from((v << (2 * w)).sqrt())
}

/// Roots `r^m` of the base change, normalized onto the unit circle.
fn unit_roots(p: &WeilPolynomial, bits: u32, w: u32) -> Result<Vec<(CFix, usize)>, WeilError> {
    // reversed polynomial t^{2g} P(1/t) has roots r_i
    let rev: Vec<BigInt> = p.coeffs().iter().rev().cloned().collect();
    let roots: Vec<ComplexRoot> = complex_roots(&rev, bits)?;
    let s = CFix::from_raw_real(sqrt_fixed(p.q(), w), w);
    roots
        .into_iter()
        .map(|r| {
            let z = r.z.with_precision(w).div(&s).ok_or(WeilError::RootFinding { bits })?;
            Ok((z, r.multiplicity))
        })
        .collect()
}

/// Recovers `P` over `F_q` from class numbers of `C_{m1}` and `C_{m2}`.
pub fn reconstruct_smallq(
    seq1: &ClassNumberSequence,
    seq2: &ClassNumberSequence,
    q: &BigUint,
    m1: u64,
    m2: u64,
) -> Result<WeilPolynomial, WeilError> {
    let g = seq1.g;
    if seq2.g != g || seq1.q != q.pow(m1 as u32) || seq2.q != q.pow(m2 as u32) {
        return Err(WeilError::Invalid("sequences do not match q^m1, q^m2".into()));
    }
    let (p1, _) = reconstruct_main(seq1)?;
    let (p2, _) = reconstruct_main(seq2)?;
    if g == 0 {
        return Ok(WeilPolynomial::trivial(q.clone()));
    }
    let bits = 256 + 16 * g as u32 * (q.bits() as u32 + 1) + 8 * (64 - (m1 * m2).leading_zeros());
    match pair_and_assemble(&p1, &p2, q, m1, m2, bits) {
        Ok(p) => Ok(p),
        Err(WeilError::Pairing(_)) | Err(WeilError::CoefficientRounding { .. }) | Err(WeilError::RootFinding { .. }) => {
            pair_and_assemble(&p1, &p2, q, m1, m2, 2 * bits)
        }
        Err(e) => Err(e),
    }
}

fn pair_and_assemble(
    p1: &WeilPolynomial,
    p2: &WeilPolynomial,
    q: &BigUint,
    m1: u64,
    m2: u64,
    bits: u32,
) -> Result<WeilPolynomial, WeilError> {
    let g = p1.genus();
    let w = bits + 64;
    let a = unit_roots(p1, bits, w)?;
    let b = unit_roots(p2, bits, w)?;
    // A^{m2} and B^{m1} are both r^{m1 m2} / |r|^{m1 m2}
    let ap: Vec<CFix> = a.iter().map(|(z, _)| z.powi(m2 as i64).unwrap()).collect();
    let bp: Vec<CFix> = b.iter().map(|(z, _)| z.powi(m1 as i64).unwrap()).collect();
    let tol_log2 = -(bits as f64) / 4.0;
    let (u, v) = bezout(m1 as i64, m2 as i64);
    let mut used = vec![false; b.len()];
    let mut roots: Vec<(CFix, usize)> = Vec::with_capacity(a.len());
    for (i, x) in ap.iter().enumerate() {
        let mut d: Vec<(f64, usize)> = bp.iter().enumerate().map(|(j, y)| (x.sub(y).log2_abs(), j)).collect();
        d.sort_by(|s, t| s.0.partial_cmp(&t.0).unwrap());
        let (best, j) = d[0];
        if best > tol_log2 {
            return Err(WeilError::Pairing(format!("no partner within tolerance for root {i}")));
        }
        if d.len() > 1 && d[1].0 < best + 1.0 {
            return Err(WeilError::Pairing(format!("two partners nearly tie for root {i}")));
        }
        if used[j] || a[i].1 != b[j].1 {
            return Err(WeilError::Pairing(format!("partner of root {i} reused or multiplicity differs")));
        }
        used[j] = true;
        let r = a[i].0.powi(u).unwrap().mul(&b[j].0.powi(v).unwrap());
        roots.push((r, a[i].1));
    }
    if used.iter().any(|x| !x) {
        return Err(WeilError::Pairing("unpaired roots remain".into()));
    }
    // prod (1 - sqrt(q) r' t)
    let sq = CFix::from_raw_real(sqrt_fixed(q, w), w);
    let one = CFix::from_int(&BigInt::one(), w);
    let mut coeffs = vec![one];
    for (r, mult) in &roots {
        let r = r.mul(&sq).neg();
        for _ in 0..*mult {
            let mut next = vec![CFix::zero(w); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] = next[k].add(c);
                next[k + 1] = next[k + 1].add(&c.mul(&r));
            }
            coeffs = next;
        }
    }
    let half = BigInt::one() << (w - 1);
    let mut ints = Vec::with_capacity(coeffs.len());
    let mut worst = f64::NEG_INFINITY;
    for c in &coeffs {
        let n = (&c.re + &half) >> w;
        let resid = CFix { re: &c.re - (&n << w), im: c.im.clone(), w };
        worst = worst.max(resid.log2_abs());
        ints.push(n);
    }
    if worst > -10.0 {
        return Err(WeilError::CoefficientRounding { residual: 2f64.powf(worst) });
    }
    let p = WeilPolynomial::new(q.clone(), g, ints)?;
    if base_change(&p, m1 as usize) != *p1 || base_change(&p, m2 as usize) != *p2 {
        return Err(WeilError::Pairing("base changes do not reproduce the inputs".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qb(q: u64) -> BigUint {
        BigUint::from(q)
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn tail_examples() {
        let t = tail_bound(1, 2, &qb(50));
        let exact = 3.0 / (50f64.sqrt() - 1.0);
        assert!(t.lower_f64() <= exact && exact <= t.upper_f64());
        assert!(t.upper_f64() < 0.495 && t.upper_f64() > 0.494);
        let t = tail_bound(1, 15, &qb(2));
        let exact = 16.0 * 2f64.powi(-7) / (1.0 - 0.5f64.sqrt());
        assert!((t.mid_f64() - exact).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for k in 1..40 {
            let v = tail_bound(1, k, &qb(3)).upper_f64();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn tails_certified_for_max_18_2g() {
        for q in 2..=64u64 {
            for g in 1..=12 {
                let m = 18.max(2 * g);
                for n in 1..=g {
                    assert!(tail_ok(n, m / n, &qb(q)), "q={q} g={g} n={n}");
                }
                assert!(min_sequence_length(&qb(q), g) <= m);
            }
        }
    }

    #[test]
    fn prime_pairs() {
        assert_eq!(find_prime_pair(&qb(2), 1).unwrap(), (11, 13));
        assert_eq!(find_prime_pair(&qb(2), 2).unwrap(), (11, 23));
        for (q, g) in [(2u64, 3usize), (3, 2), (1031, 1), (5, 4)] {
            let (m1, m2) = find_prime_pair(&qb(q), g).unwrap();
            assert!(m1 < m2 && is_prime_u64(m1) && is_prime_u64(m2));
            assert!(largest_prime_factor(m1 - 1) > 2 * g as u64);
            assert!(largest_prime_factor(m2 - 1) > 2 * g as u64);
            assert!(BigUint::from(q).pow(m1 as u32) > BigUint::from(256 * g * g));
        }
    }

    #[test]
    fn bezout_identity() {
        assert_eq!(bezout(2, 3), (-1, 1));
        let (u, v) = bezout(11, 13);
        assert_eq!(11 * u + 13 * v, 1);
    }

    #[test]
    fn round_trip_1_plus_2t2() {
        let p = WeilPolynomial::from_quadratic_factors(2, &[0]).unwrap();
        let seq = ClassNumberSequence::from_weil(&p, 18);
        assert_eq!(reconstruct_main(&seq).unwrap().0, p);
    }

    #[test]
    fn genus_zero() {
        let seq = ClassNumberSequence::from_weil(&WeilPolynomial::trivial(qb(9)), 18);
        assert_eq!(reconstruct_main(&seq).unwrap().0.genus(), 0);
    }

    #[test]
    fn corrupted_sequence_rejected() {
        let p = WeilPolynomial::from_quadratic_factors(5, &[3, -1]).unwrap();
        let mut seq = ClassNumberSequence::from_weil(&p, 18);
        seq.values[0] += 7u32;
        assert!(reconstruct_main(&seq).is_err());
    }

    #[test]
    fn synthetic_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..30 {
            let q = [2u64, 3, 5, 257, 1031][rng.gen_range(0..5)];
            let g = rng.gen_range(1..=4);
            let p = WeilPolynomial::random_synthetic(q, g, &mut rng);
            let m = 18.max(2 * g);
            let (got, rep) = reconstruct_main(&ClassNumberSequence::from_weil(&p, m)).unwrap();
            assert_eq!(got, p);
            assert!(rep.steps.iter().all(|s| s.2 < 0.495 && s.3 < 0.005));
            // the shortest certified length works too
            let m = min_sequence_length(&qb(q), g);
            assert_eq!(reconstruct_main(&ClassNumberSequence::from_weil(&p, m)).unwrap().0, p);
        }
    }

    #[test]
    fn smallq_supersingular_f2() {
        let p = WeilPolynomial::from_quadratic_factors(2, &[0]).unwrap();
        let (m1, m2) = find_prime_pair(&qb(2), 1).unwrap();
        let s1 = ClassNumberSequence::from_weil(&base_change(&p, m1 as usize), 18);
        let s2 = ClassNumberSequence::from_weil(&base_change(&p, m2 as usize), 18);
        assert_eq!(reconstruct_smallq(&s1, &s2, &qb(2), m1, m2).unwrap(), p);
    }

    #[test]
    fn smallq_repeated_roots() {
        let p = WeilPolynomial::from_quadratic_factors(2, &[2, 2]).unwrap();
        assert_eq!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "-4", "8", "-8", "4"]);
        let (m1, m2) = find_prime_pair(&qb(2), 2).unwrap();
        let s1 = ClassNumberSequence::from_weil(&base_change(&p, m1 as usize), 18);
        let s2 = ClassNumberSequence::from_weil(&base_change(&p, m2 as usize), 18);
        assert_eq!(reconstruct_smallq(&s1, &s2, &qb(2), m1, m2).unwrap(), p);
    }
}
