use num_bigint::BigUint;
use rand::Rng;

use super::{Fe, FfError, FiniteField};

/// Univariate polynomial over a `FiniteField`, lowest degree first, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    c: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one(k: &FiniteField) -> Self {
        Poly { c: vec![k.one()] }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x(k: &FiniteField) -> Self {
        Poly { c: vec![k.zero(), k.one()] }
    }

    pub fn monomial(k: &FiniteField, c: Fe, d: usize) -> Self {
        let mut v = vec![k.zero(); d];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut c: Vec<Fe>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_u64s(k: &FiniteField, cs: &[u64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&v| k.from_u64(v)).collect())
    }

    pub fn from_i64s(k: &FiniteField, cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&v| k.from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.c
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, k: &FiniteField, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.c.last()
    }

    pub fn is_monic(&self, k: &FiniteField) -> bool {
        self.c.last().is_some_and(|c| k.is_one(c))
    }

    pub fn add(&self, o: &Poly, k: &FiniteField) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (dst, s) in c.iter_mut().zip(&short.c) {
            *dst = k.add(dst, s);
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly, k: &FiniteField) -> Poly {
        self.add(&o.neg(k), k)
    }

    pub fn neg(&self, k: &FiniteField) -> Poly {
        Poly { c: self.c.iter().map(|x| k.neg(x)).collect() }
    }

    pub fn scale(&self, s: &Fe, k: &FiniteField) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| k.mul(x, s)).collect() }
    }

    pub fn mul(&self, o: &Poly, k: &FiniteField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = k.add(&c[i + j], &k.mul(a, b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn square(&self, k: &FiniteField) -> Poly {
        self.mul(self, k)
    }

    /// Multiply by `x^d`.
    pub fn shift(&self, d: usize, k: &FiniteField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![k.zero(); d];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn divrem(&self, d: &Poly, k: &FiniteField) -> Result<(Poly, Poly), FfError> {
        let lc = d.leading().ok_or(FfError::DivisionByZeroPoly)?;
        if self.c.len() < d.c.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = k.inv(lc)?;
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = k.mul(&r[i], &lc_inv);
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[i - dd + j] = k.sub(&r[i - dd + j], &k.mul(&c, dj));
                }
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Poly, k: &FiniteField) -> Result<Poly, FfError> {
        Ok(self.divrem(d, k)?.1)
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly, k: &FiniteField) -> Result<Poly, FfError> {
        let (q, r) = self.divrem(d, k)?;
        if !r.is_zero() {
            return Err(FfError::InexactDivision);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly, k: &FiniteField) -> bool {
        match other.rem(self, k) {
            Ok(r) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    pub fn monic(&self, k: &FiniteField) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if k.is_one(lc) => self.clone(),
            Some(lc) => self.scale(&k.inv(lc).expect("nonzero leading coefficient"), k),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Poly, k: &FiniteField) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns `(d, s, t)` with `d = s*self + t*o` and `d` monic.
    pub fn xgcd(&self, o: &Poly, k: &FiniteField) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1, k), k);
            let t2 = t0.sub(&q.mul(&t1, k), k);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = k.inv(lc).expect("nonzero");
                (r0.scale(&inv, k), s0.scale(&inv, k), t0.scale(&inv, k))
            }
        }
    }

    pub fn eval(&self, x: &Fe, k: &FiniteField) -> Fe {
        let mut acc = k.zero();
        for c in self.c.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, k: &FiniteField) -> Poly {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.scale(c, i as u64))
                .collect(),
        )
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly, k: &FiniteField) -> Poly {
        self.mul(o, k).rem(m, k).expect("nonzero modulus")
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Poly, k: &FiniteField) -> Poly {
        let base = self.rem(m, k).expect("nonzero modulus");
        let mut acc = Poly::one(k).rem(m, k).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m, k);
            if e.bit(i) {
                acc = acc.mulmod(&base, m, k);
            }
        }
        acc
    }

    /// Apply a coefficient map, e.g. a Frobenius or a field embedding.
    pub fn map(&self, f: impl Fn(&Fe) -> Fe) -> Poly {
        Self::from_coeffs(self.c.iter().map(f).collect())
    }

    pub fn random<R: Rng + ?Sized>(k: &FiniteField, deg_bound: usize, rng: &mut R) -> Poly {
        Self::from_coeffs((0..deg_bound).map(|_| k.random(rng)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Fe], k: &FiniteField) -> Poly {
        roots.iter().fold(Poly::one(k), |acc, r| {
            acc.mul(&Poly::from_coeffs(vec![k.neg(r), k.one()]), k)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divrem_reconstructs() {
        let k = FiniteField::new(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = Poly::random(&k, 9, &mut rng);
            let b = Poly::random(&k, 4, &mut rng);
            if b.is_zero() {
                continue;
            }
            let (q, r) = a.divrem(&b, &k).unwrap();
            assert!(r.deg() < b.deg());
            assert_eq!(q.mul(&b, &k).add(&r, &k), a);
        }
    }

    #[test]
    fn xgcd_bezout() {
        let k = FiniteField::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = Poly::random(&k, 7, &mut rng);
            let b = Poly::random(&k, 5, &mut rng);
            let (d, s, t) = a.xgcd(&b, &k);
            assert_eq!(s.mul(&a, &k).add(&t.mul(&b, &k), &k), d);
            if !d.is_zero() {
                assert!(d.divides(&a, &k) && d.divides(&b, &k));
            }
        }
    }

    #[test]
    fn eval_matches_roots() {
        let k = FiniteField::new(5, 1).unwrap();
        let roots = [k.from_u64(1), k.from_u64(3)];
        let f = Poly::from_roots(&roots, &k);
        assert!(f.eval(&roots[0], &k).is_zero());
        assert!(!f.eval(&k.from_u64(2), &k).is_zero());
    }
}
