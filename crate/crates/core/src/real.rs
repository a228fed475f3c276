//! Binary fixed-point interval arithmetic with outward rounding.
//!
//! An `Interval` at precision `P` is a pair of integers `[lo, hi]` standing for
//! the real interval `[lo * 2^-P, hi * 2^-P]`. Every operation rounds the lower
//! end down and the upper end up, so the true value is always enclosed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]@{}", self.lower_f64(), self.upper_f64(), self.prec)
    }
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shr_floor(a: &BigInt, s: u32) -> BigInt {
    // arithmetic shift on BigInt rounds toward negative infinity
    a >> s
}

fn shr_ceil(a: &BigInt, s: u32) -> BigInt {
    -((-a) >> s)
}

fn big_to_f64(v: &BigInt, prec: u32) -> f64 {
    // scale before converting so huge mantissas do not overflow
    let bits = v.bits() as i64;
    let shift = (bits - 60).max(0) as u32;
    let m = (v >> shift).to_f64().unwrap_or(0.0);
    m * 2f64.powi(shift as i32 - prec as i32)
}

impl Interval {
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        let v: BigInt = v.into() << prec;
        Interval { lo: v.clone(), hi: v, prec }
    }

    /// Enclosure of `num / den`, `den != 0`.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: u32) -> Self {
        let mut num: BigInt = num.into() << prec;
        let mut den: BigInt = den.into();
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Interval { lo: div_floor(&num, &den), hi: div_ceil(&num, &den), prec }
    }

    /// Interval from raw scaled endpoints.
    pub fn from_raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        assert!(lo <= hi);
        Interval { lo, hi, prec }
    }

    pub fn lo_raw(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_raw(&self) -> &BigInt {
        &self.hi
    }

    /// Width as an enclosing `f64` upper bound.
    pub fn width_f64(&self) -> f64 {
        big_to_f64(&(&self.hi - &self.lo), self.prec).next_up()
    }

    /// Whether the width is strictly below `num/den`.
    pub fn width_lt(&self, num: u64, den: u64) -> bool {
        (&self.hi - &self.lo) * BigInt::from(den) < BigInt::from(num) << self.prec
    }

    pub fn lower_f64(&self) -> f64 {
        big_to_f64(&self.lo, self.prec).next_down()
    }

    pub fn upper_f64(&self) -> f64 {
        big_to_f64(&self.hi, self.prec).next_up()
    }

    pub fn mid_f64(&self) -> f64 {
        big_to_f64(&((&self.lo + &self.hi) >> 1), self.prec)
    }

    /// Whether every point of the interval is strictly below `num/den` (`den > 0`).
    pub fn upper_lt_ratio(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> bool {
        &self.hi * den.into() < num.into() << self.prec
    }

    /// Whether every point is `>= num/den` (`den > 0`).
    pub fn lower_ge_ratio(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> bool {
        &self.lo * den.into() >= num.into() << self.prec
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.sign() == Sign::Minus {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero());
        let (lo, hi) = if d.is_negative() {
            (-&self.hi, -&self.lo)
        } else {
            (self.lo.clone(), self.hi.clone())
        };
        let d = d.abs();
        Interval { lo: div_floor(&lo, &d), hi: div_ceil(&hi, &d), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.prec, o.prec);
        let cands = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = cands.iter().min().unwrap();
        let hi = cands.iter().max().unwrap();
        Interval { lo: shr_floor(lo, self.prec), hi: shr_ceil(hi, self.prec), prec: self.prec }
    }

    /// Division by an interval that does not contain zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        assert_eq!(self.prec, o.prec);
        if !o.lo.is_positive() && !o.hi.is_negative() {
            return None;
        }
        let p = self.prec;
        let num = [&self.lo << p, &self.hi << p];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &num {
            for d in [&o.lo, &o.hi] {
                let (f, c) = (div_floor(n, d), div_ceil(n, d));
                lo = Some(match lo { Some(x) if x <= f => x, _ => f });
                hi = Some(match hi { Some(x) if x >= c => x, _ => c });
            }
        }
        Some(Interval { lo: lo.unwrap(), hi: hi.unwrap(), prec: p })
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Interval::from_int(1, self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root of a nonnegative interval.
    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of negative interval");
        let p = self.prec;
        let lo = (self.lo.magnitude() << p).sqrt();
        let hi_sq = self.hi.magnitude() << p;
        let mut hi = hi_sq.sqrt();
        if &hi * &hi < hi_sq {
            hi += 1u32;
        }
        Interval { lo: BigInt::from(lo), hi: BigInt::from(hi), prec: p }
    }

    /// Re-express at a different precision, rounding outward.
    pub fn with_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Interval { lo: &self.lo << s, hi: &self.hi << s, prec }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Interval { lo: shr_floor(&self.lo, s), hi: shr_ceil(&self.hi, s), prec }
            }
        }
    }

    pub fn hull(&self, o: &Self) -> Self {
        assert_eq!(self.prec, o.prec);
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.prec,
        }
    }

    /// Integers in the interval.
    pub fn integer_range(&self) -> (BigInt, BigInt) {
        (shr_ceil(&self.lo, self.prec), shr_floor(&self.hi, self.prec))
    }

    /// Enclosure of the natural log of a positive integer.
    pub fn ln_int(n: &BigUint, prec: u32) -> Self {
        assert!(!n.is_zero(), "log of zero");
        let s = n.bits() - 1;
        let two_s = BigUint::one() << s;
        let mant = if s == 0 {
            Interval::from_int(0, prec)
        } else {
            // ln(n / 2^s) = 2 atanh((n - 2^s) / (n + 2^s)), argument in [0, 1/3)
            let num = BigInt::from(n - &two_s);
            let den = BigInt::from(n + &two_s);
            atanh_series(&num, &den, prec).mul_int(&BigInt::from(2))
        };
        if s == 0 {
            return mant;
        }
        ln2(prec).mul_int(&BigInt::from(s)).add(&mant)
    }

    /// Enclosure of `ln(num/den)` for positive integers.
    pub fn ln_ratio(num: &BigUint, den: &BigUint, prec: u32) -> Self {
        Self::ln_int(num, prec).sub(&Self::ln_int(den, prec))
    }
}

/// Enclosure of ln 2.
pub fn ln2(prec: u32) -> Interval {
    atanh_series(&BigInt::from(1), &BigInt::from(3), prec).mul_int(&BigInt::from(2))
}

/// Enclosure of `atanh(num/den)` for `0 <= num/den <= 1/3`.
fn atanh_series(num: &BigInt, den: &BigInt, prec: u32) -> Interval {
    assert!(!num.is_negative() && BigInt::from(3) * num <= *den);
    if num.is_zero() {
        return Interval::from_int(0, prec);
    }
    let guard = 2 * (32 - prec.leading_zeros()) + 16;
    let w = prec + guard;
    // z rounded down, error < 1 ulp
    let z: BigInt = (num << w) / den;
    let z2: BigInt = (&z * &z) >> w;
    // terms: pw_j ~ z^(2j+1); accumulated truncation error grows linearly in j
    let mut pw = z.clone();
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    let mut err = BigInt::zero();
    loop {
        let term = &pw / BigInt::from(2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum += &term;
        err += BigInt::from(3 * j + 2);
        pw = (&pw * &z2) >> w;
        j += 1;
    }
    // tail once the term underflows: bounded by pw / (1 - z^2) <= 9/8 * pw, plus one ulp
    err += (&pw * 9u32) / 8u32 + 2u32;
    let lo = &sum - &err;
    let hi = &sum + &err;
    Interval::from_raw(lo, hi, w).with_precision(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_encloses_f64_values() {
        for n in [1u64, 2, 3, 10, 1031, 123_456_789, u64::MAX] {
            let iv = Interval::ln_int(&BigUint::from(n), 80);
            let f = (n as f64).ln();
            assert!(iv.lower_f64() <= f + 1e-12 && f - 1e-12 <= iv.upper_f64(), "{n}");
            assert!(iv.width_lt(1, 1 << 40));
        }
    }

    #[test]
    fn ln_is_additive() {
        let a = BigUint::from(1031u32).pow(7);
        let b = BigUint::from(257u32).pow(11);
        let prec = 200;
        let lhs = Interval::ln_int(&(&a * &b), prec);
        let rhs = Interval::ln_int(&a, prec).add(&Interval::ln_int(&b, prec));
        // the two enclosures must overlap
        assert!(lhs.lo_raw() <= rhs.hi_raw() && rhs.lo_raw() <= lhs.hi_raw());
        assert!(lhs.width_lt(1, 1 << 60));
    }

    #[test]
    fn ln2_digits() {
        let iv = ln2(128);
        // ln 2 = 0.693147180559945309417232121458176568...
        assert!(iv.lower_f64() <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= iv.upper_f64());
        assert!(iv.width_lt(1, 1 << 62));
    }

    #[test]
    fn sqrt_and_division_enclose() {
        let s = Interval::from_int(50, 64).sqrt();
        assert!(s.lower_f64() <= 50f64.sqrt() && 50f64.sqrt() <= s.upper_f64());
        let one = Interval::from_int(1, 64);
        let q = Interval::from_int(3, 64).div(&s.sub(&one)).unwrap();
        let f = 3.0 / (50f64.sqrt() - 1.0);
        assert!(q.lower_f64() <= f && f <= q.upper_f64());
    }
}
