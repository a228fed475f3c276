//! Dense statevector simulation of period finding for `f(x) = x mod r` over
//! `Z/2^bits`, with continued-fraction postprocessing.
//!
//! This is a classical stand-in for a quantum order-finding oracle: the
//! hidden period is an input.

use num_integer::Integer;
use rand::Rng;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::OrderError;

/// Statevector size cap, `2^22` amplitudes.
pub const MAX_REGISTER_BITS: u32 = 22;

fn check(r: u64, bits: u32) -> Result<(), OrderError> {
    if bits > MAX_REGISTER_BITS || r == 0 || r > 1u64 << (bits / 2) {
        return Err(OrderError::RegisterTooSmall { r, bits });
    }
    Ok(())
}

/// Number of `x in [0, 2^bits)` with `x = s mod r`, for `s = 0` and `s = r-1`.
fn fiber_sizes(r: u64, bits: u32) -> (u64, u64, u64) {
    let n = 1u64 << bits;
    let big = n.div_ceil(r);
    let n_big = n % r;
    let n_big = if n_big == 0 { r } else { n_big };
    (big, n_big, n / r)
}

/// Measured-phase distribution from the simulated state: the second register
/// is measured (giving residue `s` with probability `c_s / N`), the first
/// register is Fourier transformed and measured.
pub fn simulate_phase_distribution(r: u64, bits: u32) -> Result<Vec<f64>, OrderError> {
    check(r, bits)?;
    let n = 1usize << bits;
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let (c_big, n_big, c_small) = fiber_sizes(r, bits);
    let mut dist = vec![0.0; n];
    // |amplitude| depends on s only through the fiber size
    for (s, c, weight) in [(0u64, c_big, n_big), (r - 1, c_small, r - n_big)] {
        if weight == 0 || c == 0 {
            continue;
        }
        let amp = 1.0 / (c as f64).sqrt();
        let mut state = vec![Complex64::new(0.0, 0.0); n];
        let mut x = s as usize;
        while x < n {
            state[x] = Complex64::new(amp, 0.0);
            x += r as usize;
        }
        fft.process(&mut state);
        let p_s = weight as f64 * c as f64 / n as f64;
        for (d, a) in dist.iter_mut().zip(&state) {
            *d += p_s * a.norm_sqr() / n as f64;
        }
    }
    Ok(dist)
}

/// Closed form: `P(y) = N^-2 sum_s sin^2(pi c_s r y / N) / sin^2(pi r y / N)`.
pub fn analytic_phase_distribution(r: u64, bits: u32) -> Result<Vec<f64>, OrderError> {
    check(r, bits)?;
    let n = 1u64 << bits;
    let (c_big, n_big, c_small) = fiber_sizes(r, bits);
    let nf = n as f64;
    let f = |c: u64, y: u64| -> f64 {
        let ry = (r as u128 * y as u128 % n as u128) as u64;
        if ry == 0 {
            return (c * c) as f64;
        }
        let th = std::f64::consts::PI * ry as f64 / nf;
        let num = (c as f64 * th).sin();
        num * num / (th.sin() * th.sin())
    };
    Ok((0..n)
        .map(|y| (n_big as f64 * f(c_big, y) + (r - n_big) as f64 * f(c_small, y)) / (nf * nf))
        .collect())
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}

/// Largest convergent denominator of `y / 2^bits` not exceeding `max_den`.
pub fn continued_fraction_denominator(y: u64, bits: u32, max_den: u64) -> u64 {
    let (mut num, mut den) = (y as u128, 1u128 << bits);
    let (mut q_prev, mut q) = (0u128, 1u128);
    let mut best = 1u64;
    while num != 0 {
        let a = den / num;
        (den, num) = (num, den - a * num);
        let q_next = a * q + q_prev;
        if q_next > max_den as u128 {
            break;
        }
        best = q_next as u64;
        (q_prev, q) = (q, q_next);
    }
    best
}

/// Draws measurements from the simulated distribution.
pub struct PhaseSampler {
    r: u64,
    bits: u32,
    cdf: Vec<f64>,
}

impl PhaseSampler {
    pub fn new(r: u64, bits: u32) -> Result<Self, OrderError> {
        let dist = simulate_phase_distribution(r, bits)?;
        let mut acc = 0.0;
        let cdf = dist
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(PhaseSampler { r, bits, cdf })
    }

    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u = rng.gen::<f64>() * self.cdf.last().copied().unwrap_or(1.0);
        self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1) as u64
    }

    /// One run: measured phase to continued-fraction denominator.
    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        continued_fraction_denominator(self.measure(rng), self.bits, 1u64 << (self.bits / 2))
    }
}

/// A single simulated run for hidden period `r`.
pub fn quantum_order_sim<R: Rng + ?Sized>(r: u64, bits: u32, rng: &mut R) -> Result<u64, OrderError> {
    Ok(PhaseSampler::new(r, bits)?.run(rng))
}

/// lcm of the denominators of `runs` runs, keeping those that divide the
/// hidden period (the check a group oracle performs by exponentiation).
pub fn recover_order<R: Rng + ?Sized>(s: &PhaseSampler, runs: usize, rng: &mut R) -> u64 {
    (0..runs).map(|_| s.run(rng)).filter(|d| s.r % d == 0).fold(1, |acc, d| acc.lcm(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn simulation_matches_closed_form() {
        for bits in [4u32, 8, 12] {
            for r in 1..=(1u64 << (bits / 2)) {
                let s = simulate_phase_distribution(r, bits).unwrap();
                let a = analytic_phase_distribution(r, bits).unwrap();
                assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                assert!(total_variation(&s, &a) < 1e-9, "r={r} bits={bits}");
            }
        }
    }

    #[test]
    fn trivial_and_exact_periods() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(quantum_order_sim(1, 8, &mut rng).unwrap(), 1);
        }
        // r = 4 divides 2^8: peaks exactly at multiples of 64
        let d = simulate_phase_distribution(4, 8).unwrap();
        for (y, p) in d.iter().enumerate() {
            if y % 64 == 0 {
                assert!((p - 0.25).abs() < 1e-12);
            } else {
                assert!(*p < 1e-12);
            }
        }
        let s = PhaseSampler::new(4, 8).unwrap();
        for _ in 0..50 {
            assert_eq!(4 % s.run(&mut rng), 0);
        }
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(continued_fraction_denominator(0, 8, 16), 1);
        assert_eq!(continued_fraction_denominator(64, 8, 16), 4);
        assert_eq!(continued_fraction_denominator(128, 8, 16), 2);
        // 3/7 of 4096 = 1755.4
        assert_eq!(continued_fraction_denominator(1755, 12, 64), 7);
    }

    #[test]
    fn register_checks() {
        assert!(PhaseSampler::new(17, 8).is_err());
        assert!(PhaseSampler::new(4, 24).is_err());
    }
}
