//! Certified complex roots of integer polynomials: squarefree splitting over
//! the rationals, Aberth iteration in binary fixed point, and Weierstrass
//! inclusion disks as the certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::WeilError;

/// Complex number `(re + i im) * 2^-w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CFix {
    pub re: BigInt,
    pub im: BigInt,
    pub w: u32,
}

fn log2_big(v: &BigInt) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    let shift = bits.saturating_sub(60);
    let m = (v.abs() >> shift).to_f64().unwrap();
    m.log2() + shift as f64
}

impl CFix {
    pub fn zero(w: u32) -> Self {
        CFix { re: BigInt::zero(), im: BigInt::zero(), w }
    }

    pub fn from_int(v: &BigInt, w: u32) -> Self {
        CFix { re: v << w, im: BigInt::zero(), w }
    }

    pub fn from_ratio(v: &BigRational, w: u32) -> Self {
        let n: BigInt = v.numer() << w;
        CFix { re: n.div_floor(v.denom()), im: BigInt::zero(), w }
    }

    pub fn from_f64(re: f64, im: f64, w: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            // exact for the 53-bit mantissa, then shifted into place
            let scaled = x * 2f64.powi(60);
            let b = BigInt::from(scaled as i128);
            if w >= 60 { b << (w - 60) } else { b >> (60 - w) }
        };
        CFix { re: conv(re), im: conv(im), w }
    }

    /// Real fixed-point value `v * 2^-w` given directly.
    pub fn from_raw_real(v: BigInt, w: u32) -> Self {
        CFix { re: v, im: BigInt::zero(), w }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        CFix { re: &self.re + &o.re, im: &self.im + &o.im, w: self.w }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CFix { re: &self.re - &o.re, im: &self.im - &o.im, w: self.w }
    }

    pub fn neg(&self) -> Self {
        CFix { re: -&self.re, im: -&self.im, w: self.w }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let w = self.w;
        CFix {
            re: (&self.re * &o.re - &self.im * &o.im) >> w,
            im: (&self.re * &o.im + &self.im * &o.re) >> w,
            w,
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let w = self.w;
        let nr = (&self.re * &o.re + &self.im * &o.im) << w;
        let ni = (&self.im * &o.re - &self.re * &o.im) << w;
        Some(CFix { re: nr / &den, im: ni / &den, w })
    }

    pub fn inv(&self) -> Option<Self> {
        CFix::from_int(&BigInt::one(), self.w).div(self)
    }

    pub fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CFix::from_int(&BigInt::one(), self.w);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// `|z|^2 * 2^(2w)`.
    pub fn abs2_raw(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `log2 |z|`, approximately (a few ulps of f64).
    pub fn log2_abs(&self) -> f64 {
        0.5 * log2_big(&self.abs2_raw()) - self.w as f64
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let f = |v: &BigInt| -> f64 {
            let bits = v.bits();
            let shift = bits.saturating_sub(60);
            (v >> shift).to_f64().unwrap() * 2f64.powi(shift as i32 - self.w as i32)
        };
        (f(&self.re), f(&self.im))
    }

    pub fn with_precision(&self, w: u32) -> Self {
        if w >= self.w {
            CFix { re: &self.re << (w - self.w), im: &self.im << (w - self.w), w }
        } else {
            CFix { re: &self.re >> (self.w - w), im: &self.im >> (self.w - w), w }
        }
    }
}

/// One distinct root with its multiplicity and certified error radius.
#[derive(Clone, Debug)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    /// `log2` of an upper bound on the distance to the true root.
    pub radius_log2: f64,
    pub(crate) z: CFix,
}

// ---- rational polynomial helpers (lowest degree first, trimmed) ----

type RPoly = Vec<BigRational>;

fn rtrim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rderiv(p: &RPoly) -> RPoly {
    rtrim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn rdivrem(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (rtrim(q), rtrim(r))
}

fn rmonic(p: &RPoly) -> RPoly {
    let lc = p.last().unwrap().clone();
    p.iter().map(|c| c / &lc).collect()
}

fn rgcd(a: &RPoly, b: &RPoly) -> RPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rdivrem(&x, &y).1;
        x = y;
        y = r;
    }
    rmonic(&x)
}

fn rsub(a: &RPoly, b: &RPoly) -> RPoly {
    let n = a.len().max(b.len());
    rtrim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x - y
            })
            .collect(),
    )
}

/// Yun's squarefree decomposition: monic `(factor, multiplicity)` pairs.
fn squarefree_parts(f: &RPoly) -> Vec<(RPoly, usize)> {
    let f = rmonic(f);
    let df = rderiv(&f);
    let a0 = rgcd(&f, &df);
    let mut b = rdivrem(&f, &a0).0;
    let c = rdivrem(&df, &a0).0;
    let mut d = rsub(&c, &rderiv(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = rgcd(&b, &d);
        b = rdivrem(&b, &a).0;
        let c = rdivrem(&d, &a).0;
        d = rsub(&c, &rderiv(&b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn horner(c: &[CFix], z: &CFix) -> (CFix, CFix) {
    // value and derivative
    let w = z.w;
    let mut p = CFix::zero(w);
    let mut dp = CFix::zero(w);
    for a in c.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(a);
    }
    (p, dp)
}

/// Aberth iteration on a squarefree monic polynomial given as fixed-point
/// coefficients; returns approximations and certified `log2` radii.
fn aberth_simple(c: &[CFix], coeff_log2: f64, w: u32, target_log2: f64) -> Option<Vec<(CFix, f64)>> {
    let d = c.len() - 1;
    if d == 1 {
        let z = c[0].neg();
        return Some(vec![(z, -(w as f64) + 2.0)]);
    }
    // initial guesses on the circle of radius |c_0|^(1/d)
    let r0 = {
        let l = c[0].log2_abs();
        if l.is_finite() { 2f64.powf(l / d as f64) } else { 1.0 }
    };
    let mut z: Vec<CFix> = (0..d)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
            CFix::from_f64(r0 * th.cos(), r0 * th.sin(), w)
        })
        .collect();
    let stop = -(w as f64) * 0.8;
    let max_iter = 400 + 4 * w as usize;
    let mut settled = 0;
    for _ in 0..max_iter {
        let mut max_step = f64::NEG_INFINITY;
        for i in 0..d {
            let (p, dp) = horner(c, &z[i]);
            if p.is_zero() {
                continue;
            }
            let Some(ratio) = p.div(&dp) else { continue };
            let mut s = CFix::zero(w);
            for j in 0..d {
                if j != i {
                    if let Some(t) = z[i].sub(&z[j]).inv() {
                        s = s.add(&t);
                    }
                }
            }
            let one = CFix::from_int(&BigInt::one(), w);
            let den = one.sub(&ratio.mul(&s));
            let step = ratio.div(&den).unwrap_or(ratio);
            max_step = max_step.max(step.log2_abs());
            z[i] = z[i].sub(&step);
        }
        if max_step < stop {
            settled += 1;
            if settled >= 2 {
                break;
            }
        }
    }
    // Weierstrass disks: |root - z_i| <= d |p(z_i)| / prod |z_i - z_j|
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let (p, _) = horner(c, &z[i]);
        let zl = z[i].log2_abs().max(0.0);
        // evaluation rounding: about (d+1) ulps times the size of the terms
        let eval_err = -(w as f64) + coeff_log2 + d as f64 * (zl + 1.0) + (d as f64 + 2.0).log2() + 2.0;
        let pl = p.log2_abs();
        let num = if pl.is_finite() { log_add(pl, eval_err) } else { eval_err } + 1e-6;
        let mut den = 0.0;
        for j in 0..d {
            if j != i {
                let l = z[i].sub(&z[j]).log2_abs();
                if !l.is_finite() {
                    return None;
                }
                den += l - 1e-6;
            }
        }
        out.push((z[i].clone(), (d as f64).log2() + num - den));
    }
    // disks must be pairwise disjoint for each to hold exactly one root
    for i in 0..d {
        for j in i + 1..d {
            let sep = out[i].0.sub(&out[j].0).log2_abs();
            if log_add(out[i].1, out[j].1) >= sep {
                return None;
            }
        }
    }
    if out.iter().any(|(_, r)| *r > target_log2) {
        return None;
    }
    Some(out)
}

fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + 2f64.powf(lo - hi)).log2()
}

/// Distinct complex roots of the integer polynomial `p` (lowest degree first)
/// with multiplicities; each certified to lie within `2^(-bits/2)` of a true root.
///
/// Working precision is escalated once (doubled) on failure.
pub fn complex_roots(p: &[BigInt], bits: u32) -> Result<Vec<ComplexRoot>, WeilError> {
    match complex_roots_at(p, bits) {
        Some(r) => Ok(r),
        None => complex_roots_at(p, 2 * bits).ok_or(WeilError::RootFinding { bits: 2 * bits }),
    }
}

fn complex_roots_at(p: &[BigInt], bits: u32) -> Option<Vec<ComplexRoot>> {
    let f: RPoly = rtrim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    assert!(!f.is_empty(), "zero polynomial has no root list");
    if f.len() == 1 {
        return Some(vec![]);
    }
    let target = -(bits as f64) / 2.0;
    let mut out = Vec::new();
    for (fac, mult) in squarefree_parts(&f) {
        let coeff_log2 = fac
            .iter()
            .map(|c| {
                let v = c.abs();
                log2_big(&(v.numer() + BigInt::one())) - log2_big(v.denom())
            })
            .fold(0.0f64, f64::max)
            + (fac.len() as f64).log2();
        let root_log2 = coeff_log2.max(0.0) + 1.0;
        let w = bits + 64 + (fac.len() as u32) * (root_log2.ceil() as u32 + 2);
        let c: Vec<CFix> = fac.iter().map(|x| CFix::from_ratio(x, w)).collect();
        let roots = aberth_simple(&c, coeff_log2, w, target)?;
        for (z, r) in roots {
            let (re, im) = z.to_f64();
            out.push(ComplexRoot { re, im, multiplicity: mult, radius_log2: r, z });
        }
    }
    out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::WeilPolynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quadratic_roots() {
        let r = complex_roots(&bi(&[1, 0, 2]), 200).unwrap();
        assert_eq!(r.len(), 2);
        let s = 0.5f64.sqrt();
        assert!((r[0].re).abs() < 1e-15 && (r[0].im + s).abs() < 1e-15);
        assert!((r[1].im - s).abs() < 1e-15);
        assert!(r.iter().all(|x| x.radius_log2 <= -100.0));
    }

    #[test]
    fn linear_factors() {
        // (t - 3)(t + 5)(2t - 1)^2
        let mut p = bi(&[1]);
        for f in [bi(&[-3, 1]), bi(&[5, 1]), bi(&[-1, 2]), bi(&[-1, 2])] {
            p = crate::weil::poly_mul(&p, &f);
        }
        let r = complex_roots(&p, 128).unwrap();
        let got: Vec<(f64, usize)> = r.iter().map(|x| (x.re, x.multiplicity)).collect();
        assert_eq!(got.len(), 3);
        assert!((got[0].0 + 5.0).abs() < 1e-12 && got[0].1 == 1);
        assert!((got[1].0 - 0.5).abs() < 1e-12 && got[1].1 == 2);
        assert!((got[2].0 - 3.0).abs() < 1e-12 && got[2].1 == 1);
    }

    #[test]
    fn weil_roots_on_circle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..25 {
            let q = [2u64, 3, 5, 257, 1031][rng.gen_range(0..5)];
            let g = rng.gen_range(1..=5);
            let p = WeilPolynomial::random_synthetic(q, g, &mut rng);
            let roots = complex_roots(p.coeffs(), 160).unwrap();
            let total: usize = roots.iter().map(|r| r.multiplicity).sum();
            assert_eq!(total, 2 * g);
            let expect = -(q as f64).log2() / 2.0;
            for r in roots {
                assert!((r.z.log2_abs() - expect).abs() < 1e-9, "{q} {g} {:?}", p.coeffs());
                assert!(r.radius_log2 <= -80.0);
            }
        }
    }

    #[test]
    fn squarefree_split() {
        // (t^2 + 1)^2 (t - 2)
        let f: RPoly = bi(&[-2, 1, -4, 2, -2, 1]).into_iter().map(BigRational::from_integer).collect();
        let parts = squarefree_parts(&f);
        let degs: Vec<(usize, usize)> = parts.iter().map(|(p, m)| (p.len() - 1, *m)).collect();
        assert_eq!(degs, vec![(1, 1), (2, 2)]);
    }
}
