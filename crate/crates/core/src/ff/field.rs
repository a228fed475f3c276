use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use smallvec::{smallvec, SmallVec};

use super::{is_prime_u64, FfError};

/// Coordinates of a field element in the power basis of the field modulus.
pub type Coords = SmallVec<[u64; 4]>;

/// An element of some `FiniteField`, stored as its canonical coordinate
/// vector (always exactly `degree()` entries, each in `[0, p)`).
///
/// Elements do not carry a pointer to their field; arithmetic goes through
/// the owning `FiniteField`. Equality is equality of canonical coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) Coords);

impl Fe {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            f.debug_list().entries(self.0.iter()).finish()
        }
    }
}

struct Inner {
    p: u64,
    k: usize,
    /// Monic modulus, `modulus[i]` is the coefficient of `t^i`, length `k + 1`.
    modulus: Vec<u64>,
    order: BigUint,
    /// Absolute trace `Tr(t^i)` for `i < k`.
    trace_basis: Vec<u64>,
    /// Row `i` holds the coordinates of `(t^i)^p`.
    frob: Vec<Coords>,
    small_p: bool,
    nonresidue: OnceLock<Fe>,
}

/// The field `F_p[t] / (modulus)` with `p` prime and the modulus monic
/// irreducible of degree `k`.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

/// Jacobi symbol `(a / n)` for odd `n`.
pub(crate) fn jacobi(mut a: u64, mut n: u64) -> i8 {
    a %= n;
    let mut r = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            r = -r;
        }
        a %= n;
    }
    if n == 1 { r } else { 0 }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

/// Largest prime accepted as a field characteristic. Products of two
/// residues must fit a `u64` with room for one addition.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

impl FiniteField {
    /// The prime field `F_p`, represented as `F_p[t]/(t)`.
    pub fn prime(p: u64) -> Result<Self, FfError> {
        Self::check_prime(p)?;
        Ok(Self::build(p, vec![0, 1]))
    }

    /// `F_{p^k}` with the lowest irreducible monic modulus of degree `k`.
    ///
    /// Candidates `t^k + c_{k-1} t^{k-1} + ... + c_0` are scanned in increasing
    /// order of the integer `sum c_i p^i`, so the choice depends only on `(p, k)`.
    pub fn new(p: u64, k: usize) -> Result<Self, FfError> {
        if k == 0 {
            return Err(FfError::InvalidDegree(0));
        }
        let fp = Self::prime(p)?;
        if k == 1 {
            return Ok(fp);
        }
        let mut digits = vec![0u64; k];
        loop {
            let mut m = digits.clone();
            m.push(1);
            if m[0] != 0 && super::roots::is_irreducible_fp(&fp, &m) {
                return Ok(Self::build(p, m));
            }
            // increment the little-endian base-p counter
            let mut i = 0;
            loop {
                if i == k {
                    return Err(FfError::NoIrreducible { p, k });
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// `F_p[t]/(modulus)` for a caller-supplied monic modulus, checked for
    /// irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FfError> {
        let fp = Self::prime(p)?;
        let mut m: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(FfError::NotMonic);
        }
        if m.len() > 2 && !super::roots::is_irreducible_fp(&fp, &m) {
            return Err(FfError::Reducible);
        }
        Ok(Self::build(p, m))
    }

    fn check_prime(p: u64) -> Result<(), FfError> {
        if p > MAX_CHARACTERISTIC {
            return Err(FfError::CharacteristicTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FfError::NotPrime(p));
        }
        Ok(())
    }

    fn build(p: u64, modulus: Vec<u64>) -> Self {
        let k = modulus.len() - 1;
        let order = BigUint::from(p).pow(k as u32);
        let trace_basis = trace_basis(p, &modulus);
        let mut inner = Inner {
            p,
            k,
            modulus,
            order,
            trace_basis,
            frob: Vec::new(),
            small_p: p < (1 << 16),
            nonresidue: OnceLock::new(),
        };
        // (t^i)^p computed by plain exponentiation once
        let tmp = FiniteField(Arc::new(Inner {
            frob: Vec::new(),
            modulus: inner.modulus.clone(),
            order: inner.order.clone(),
            trace_basis: inner.trace_basis.clone(),
            nonresidue: OnceLock::new(),
            ..inner
        }));
        let t = tmp.gen();
        let tp = tmp.pow_u128(&t, p as u128);
        let mut rows = Vec::with_capacity(k);
        let mut cur = tmp.one();
        for _ in 0..k {
            rows.push(cur.0.clone());
            cur = tmp.mul(&cur, &tp);
        }
        inner.frob = rows;
        FiniteField(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Cardinality `p^k`.
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// Cardinality if it fits a `u128`.
    pub fn order_u128(&self) -> Option<u128> {
        self.0.order.to_u128()
    }

    pub fn zero(&self) -> Fe {
        Fe(smallvec![0; self.0.k])
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    /// The class of `t`, a generator of the field over `F_p`.
    pub fn gen(&self) -> Fe {
        let mut c: Coords = smallvec![0; self.0.k];
        if self.0.k == 1 {
            c[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            c[1] = 1;
        }
        Fe(c)
    }

    pub fn from_u64(&self, v: u64) -> Fe {
        let mut c: Coords = smallvec![0; self.0.k];
        c[0] = v % self.0.p;
        Fe(c)
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.from_u64(v.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element from power-basis coordinates; missing coordinates are zero.
    pub fn from_coords(&self, coords: &[u64]) -> Result<Fe, FfError> {
        if coords.len() > self.0.k {
            return Err(FfError::TooManyCoords { got: coords.len(), degree: self.0.k });
        }
        let mut c: Coords = smallvec![0; self.0.k];
        for (dst, &src) in c.iter_mut().zip(coords) {
            *dst = src % self.0.p;
        }
        Ok(Fe(c))
    }

    /// Whether `x` is a well-formed element of this field.
    pub fn contains(&self, x: &Fe) -> bool {
        x.0.len() == self.0.k && x.0.iter().all(|&c| c < self.0.p)
    }

    /// Bijection `[0, q) -> field`, base-`p` digits as coordinates.
    pub fn from_index(&self, mut idx: u128) -> Fe {
        let p = self.0.p as u128;
        let mut c: Coords = smallvec![0; self.0.k];
        for slot in c.iter_mut() {
            *slot = (idx % p) as u64;
            idx /= p;
        }
        Fe(c)
    }

    pub fn index(&self, x: &Fe) -> u128 {
        x.0.iter().rev().fold(0u128, |acc, &c| acc * self.0.p as u128 + c as u128)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let p = self.0.p;
        Fe((0..self.0.k).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn is_one(&self, x: &Fe) -> bool {
        x.0[0] == 1 && x.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p;
        Fe(a.0.iter().zip(&b.0).map(|(&x, &y)| {
            let s = x + y;
            if s >= p { s - p } else { s }
        }).collect())
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p;
        Fe(a.0.iter().zip(&b.0).map(|(&x, &y)| if x >= y { x - y } else { x + p - y }).collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.0.p;
        Fe(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    /// Multiplication by an element of the prime field.
    pub fn scale(&self, a: &Fe, s: u64) -> Fe {
        let p = self.0.p;
        let s = s % p;
        Fe(a.0.iter().map(|&x| x * s % p).collect())
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let Inner { p, k, .. } = *self.0;
        if k == 1 {
            return Fe(smallvec![a.0[0] * b.0[0] % p]);
        }
        let mut prod: SmallVec<[u64; 8]> = smallvec![0; 2 * k - 1];
        if self.0.small_p {
            for (i, &x) in a.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.0.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            // lazy reduction: every entry stays below 2 k p^2 < 2^64
            let modulus = &self.0.modulus;
            for i in (k..prod.len()).rev() {
                let c = prod[i] % p;
                if c != 0 {
                    let nc = p - c;
                    for j in 0..k {
                        prod[i - k + j] += nc * modulus[j];
                    }
                }
            }
            return Fe(prod[..k].iter().map(|&c| c % p).collect());
        } else {
            let mut wide: SmallVec<[u128; 8]> = smallvec![0; 2 * k - 1];
            for (i, &x) in a.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.0.iter().enumerate() {
                    wide[i + j] += (x * y) as u128;
                }
            }
            for (c, w) in prod.iter_mut().zip(&wide) {
                *c = (w % p as u128) as u64;
            }
        }
        self.reduce_wide(prod)
    }

    fn reduce_wide(&self, mut prod: SmallVec<[u64; 8]>) -> Fe {
        let Inner { p, k, ref modulus, .. } = *self.0;
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            let nc = p - c;
            for j in 0..k {
                let m = modulus[j];
                if m != 0 {
                    prod[i - k + j] = (prod[i - k + j] + nc * m) % p;
                }
            }
            prod[i] = 0;
        }
        prod.truncate(k);
        Fe(prod.into_iter().collect())
    }

    pub fn square(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe, FfError> {
        if a.is_zero() {
            return Err(FfError::ZeroInverse);
        }
        let Inner { p, k, ref modulus, .. } = *self.0;
        if k == 1 {
            return Ok(Fe(smallvec![inv_mod(a.0[0], p)]));
        }
        // extended Euclid in F_p[t]
        let mut r0: Vec<u64> = modulus.clone();
        let mut r1: Vec<u64> = a.0.to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (q, r) = fp_divrem(&r0, &r1, p);
            let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = inv_mod(r1[0], p);
        let mut out: Coords = smallvec![0; k];
        for (i, &s) in s1.iter().enumerate() {
            out[i] = s * c % p;
        }
        Ok(Fe(out))
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe, FfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow_u128(&self, a: &Fe, mut e: u128) -> Fe {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    pub fn pow(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The absolute Frobenius `x -> x^p`, applied as a linear map.
    pub fn frobenius(&self, a: &Fe) -> Fe {
        let Inner { p, k, ref frob, .. } = *self.0;
        if k == 1 {
            return a.clone();
        }
        let mut out: SmallVec<[u128; 8]> = smallvec![0; k];
        for (row, &c) in frob.iter().zip(&a.0) {
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o += (c * r) as u128;
            }
        }
        Fe(out.into_iter().map(|o| (o % p as u128) as u64).collect())
    }

    /// `x -> x^(p^j)`.
    pub fn frobenius_pow(&self, a: &Fe, j: usize) -> Fe {
        let j = j % self.0.k;
        let mut x = a.clone();
        for _ in 0..j {
            x = self.frobenius(&x);
        }
        x
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: &Fe) -> u64 {
        let p = self.0.p as u128;
        let s: u128 = a.0.iter().zip(&self.0.trace_basis).map(|(&c, &t)| (c * t) as u128).sum();
        (s % p) as u64
    }

    /// Quadratic character: 0 for zero, 1 for nonzero squares, -1 otherwise.
    /// In characteristic 2 every element is a square.
    pub fn quadratic_character(&self, a: &Fe) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.0.p == 2 {
            return 1;
        }
        // chi(a) = legendre(N(a), p) with N the norm to F_p
        let mut norm = a.clone();
        let mut conj = a.clone();
        for _ in 1..self.0.k {
            conj = self.frobenius(&conj);
            norm = self.mul(&norm, &conj);
        }
        jacobi(norm.0[0], self.0.p)
    }

    /// A square root, if one exists. Tonelli-Shanks for odd characteristic,
    /// `a^(q/2)` in characteristic 2.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(a.clone());
        }
        let q = &self.0.order;
        if self.0.p == 2 {
            return Some(self.pow(a, &(q >> 1)));
        }
        if self.quadratic_character(a) != 1 {
            return None;
        }
        let qm1 = q - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let odd = &qm1 >> s;
        let z = self.0.nonresidue.get_or_init(|| {
            // in even degree every element of F_p is a square
            let start = if self.0.k % 2 == 0 { self.0.p as u128 } else { 2 };
            (start..).map(|i| self.from_index(i)).find(|c| self.quadratic_character(c) == -1).expect("non-residue exists")
        });
        let mut m = s;
        let mut c = self.pow(z, &odd);
        let mut t = self.pow(a, &odd);
        let mut r = self.pow(a, &((&odd + 1u32) >> 1));
        while !self.is_one(&t) {
            let mut i = 0;
            let mut tt = t.clone();
            while !self.is_one(&tt) {
                tt = self.square(&tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// The order of the multiplicative group as a `BigUint`.
    pub fn unit_order(&self) -> BigUint {
        &self.0.order - BigUint::one()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

}

fn trace_basis(p: u64, m: &[u64]) -> Vec<u64> {
    // power sums of the roots of m via Newton's identities
    let k = m.len() - 1;
    let mut s = vec![0u64; k.max(1)];
    s[0] = k as u64 % p;
    for i in 1..k {
        let mut acc: u128 = (i as u128 % p as u128) * m[k - i] as u128;
        for j in 1..i {
            acc += m[k - j] as u128 * s[i - j] as u128;
        }
        let acc = (acc % p as u128) as u64;
        s[i] = if acc == 0 { 0 } else { p - acc };
    }
    s
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let lc_inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let d = r.len() - 1;
        let c = r[d] * lc_inv % p;
        q[d - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[d - db + j] = (r[d - db + j] + (p - c) * bj) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f4_multiplication_follows_modulus() {
        let k = FiniteField::new(2, 2).unwrap();
        assert_eq!(k.modulus(), &[1, 1, 1]);
        let t = k.gen();
        let tt = k.mul(&t, &t);
        assert_eq!(tt, k.add(&t, &k.one()));
    }

    #[test]
    fn inverse_of_one_and_zero() {
        for (p, d) in [(2, 1), (5, 3), (1031, 2), (2, 9)] {
            let k = FiniteField::new(p, d).unwrap();
            assert_eq!(k.inv(&k.one()).unwrap(), k.one());
            assert!(matches!(k.inv(&k.zero()), Err(FfError::ZeroInverse)));
        }
    }

    #[test]
    fn lagrange_and_frobenius_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, d) in [(2, 5), (3, 4), (5, 3), (7, 2), (1031, 2), (65521, 3)] {
            let k = FiniteField::new(p, d).unwrap();
            let qm1 = k.unit_order();
            for _ in 0..20 {
                let x = k.random_nonzero(&mut rng);
                assert!(k.is_one(&k.pow(&x, &qm1)));
                assert_eq!(k.frobenius_pow(&x, d), x);
                assert_eq!(k.frobenius(&x), k.pow_u128(&x, p as u128));
                let y = k.inv(&x).unwrap();
                assert!(k.is_one(&k.mul(&x, &y)));
            }
        }
    }

    #[test]
    fn trace_matches_sum_of_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, d) in [(2, 6), (3, 5), (13, 3)] {
            let k = FiniteField::new(p, d).unwrap();
            for _ in 0..10 {
                let x = k.random(&mut rng);
                let mut s = k.zero();
                for j in 0..d {
                    s = k.add(&s, &k.frobenius_pow(&x, j));
                }
                assert_eq!(s, k.from_u64(k.trace(&x)));
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, d) in [(2, 4), (5, 1), (17, 2), (1031, 3)] {
            let k = FiniteField::new(p, d).unwrap();
            for _ in 0..20 {
                let x = k.random(&mut rng);
                let sq = k.square(&x);
                let r = k.sqrt(&sq).unwrap();
                assert_eq!(k.square(&r), sq);
            }
        }
    }

    #[test]
    fn index_is_a_bijection() {
        let k = FiniteField::new(3, 3).unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in 0..27u128 {
            let x = k.from_index(i);
            assert_eq!(k.index(&x), i);
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(matches!(FiniteField::prime(9), Err(FfError::NotPrime(9))));
        assert!(FiniteField::with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn character_matches_euler_criterion() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, k) in [(3, 1), (1031, 1), (3, 5), (7, 3), (1031, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let e = (f.order() - 1u32) >> 1;
            for _ in 0..200 {
                let a = f.random_nonzero(&mut rng);
                let euler = if f.is_one(&f.pow(&a, &e)) { 1 } else { -1 };
                assert_eq!(f.quadratic_character(&a), euler);
            }
        }
    }
}
