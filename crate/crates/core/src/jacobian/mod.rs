//! Class group of a hyperelliptic curve in Mumford representation.
//!
//! Elements are reduced divisors `E - deg(E)·∞` on an odd-degree model,
//! composed and reduced with Cantor's algorithm.

mod blackbox;
mod encoding;

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::curve::{CurveError, HyperellipticCurve, PrimeDivisor, Support};
use crate::ff::{make_extension, Embedding, Fe, FiniteField, Poly};

pub use blackbox::{blackbox_from_curve, closure, BlackBoxGroup, CyclicProduct, JacobianGroup};
pub use encoding::{Encoding, FORMAT_TAG};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("malformed encoding: {0}")]
    Decode(String),
    #[error("divisor is not reduced")]
    NotReduced,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("closure exceeded {0} elements")]
    ClosureLimit(usize),
}

/// `(u, v)` with `u` monic, `deg v < deg u <= g`, `u | v^2 + h v - f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MumfordDivisor {
    pub u: Poly,
    pub v: Poly,
}

/// `Cl^0` of an odd-degree hyperelliptic model over `F_{q^n}`.
#[derive(Clone, Debug)]
pub struct Jacobian {
    base: HyperellipticCurve,
    curve: HyperellipticCurve,
    emb: Embedding,
    n: usize,
}

impl Jacobian {
    /// Even-degree models are first moved to an odd-degree model through a
    /// rational Weierstrass point.
    pub fn new(curve: &HyperellipticCurve, n: usize) -> Result<Self, JacobianError> {
        let base = curve.to_odd_degree()?;
        let (_, emb) = make_extension(base.field(), n).map_err(CurveError::from)?;
        let over = base.base_change(&emb);
        Ok(Jacobian { base, curve: over, emb, n })
    }

    /// The odd-degree model over `F_q`.
    pub fn base_curve(&self) -> &HyperellipticCurve {
        &self.base
    }

    /// The odd-degree model over `F_{q^n}`.
    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    pub fn field(&self) -> &FiniteField {
        self.curve.field()
    }

    pub fn extension_degree(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn identity(&self) -> MumfordDivisor {
        MumfordDivisor { u: Poly::one(self.field()), v: Poly::zero() }
    }

    pub fn is_identity(&self, d: &MumfordDivisor) -> bool {
        d.u.deg() == 0
    }

    /// Checks the reduced-form invariants.
    pub fn is_reduced(&self, d: &MumfordDivisor) -> bool {
        let k = self.field();
        d.u.is_monic(k)
            && d.u.deg() as usize <= self.genus()
            && d.v.deg() < d.u.deg()
            && d.u.divides(&self.norm_residual(&d.v), k)
    }

    /// `v^2 + h v - f`.
    fn norm_residual(&self, v: &Poly) -> Poly {
        let k = self.field();
        v.square(k).add(&v.mul(self.curve.h(), k), k).sub(self.curve.f(), k)
    }

    /// The divisor `(x, y) - ∞`.
    pub fn from_point(&self, x: &Fe, y: &Fe) -> Result<MumfordDivisor, JacobianError> {
        if !self.curve.contains(x, y) {
            return Err(JacobianError::NotReduced);
        }
        let k = self.field();
        Ok(MumfordDivisor { u: Poly::from_coeffs(vec![k.neg(x), k.one()]), v: Poly::constant(y.clone()) })
    }

    /// Class of `E - e·∞` for a prime divisor of the base model.
    pub fn from_prime_divisor(&self, e: &PrimeDivisor) -> Result<MumfordDivisor, JacobianError> {
        match &e.support {
            Support::Affine { u, v } => {
                let u = self.emb.embed_poly(u);
                let v = self.emb.embed_poly(v);
                if !u.divides(&self.norm_residual(&v), self.field()) {
                    return Err(JacobianError::NotReduced);
                }
                Ok(self.reduce(u, v))
            }
            Support::Conjugate { .. } | Support::Infinity { s: None } => Ok(self.identity()),
            Support::Infinity { s: Some(_) } => {
                Err(JacobianError::Unsupported("prime divisor at infinity of an even-degree model".into()))
            }
            Support::Plane => Err(JacobianError::Unsupported("plane prime divisor".into())),
        }
    }

    /// Reduction: replaces `(u, v)` by `((f - v h - v^2)/u, -h - v mod u')`
    /// until `deg u <= g`.
    fn reduce(&self, mut u: Poly, mut v: Poly) -> MumfordDivisor {
        let k = self.field();
        let g = self.genus() as isize;
        let (f, h) = (self.curve.f(), self.curve.h());
        while u.deg() > g {
            let num = f.sub(&v.mul(h, k), k).sub(&v.square(k), k);
            let u2 = num.div_exact(&u, k).expect("u divides f - vh - v^2").monic(k);
            v = h.add(&v, k).neg(k).rem(&u2, k).expect("nonzero");
            u = u2;
        }
        let v = v.rem(&u, k).expect("nonzero");
        MumfordDivisor { u, v }
    }

    /// Cantor composition followed by reduction.
    pub fn add(&self, a: &MumfordDivisor, b: &MumfordDivisor) -> MumfordDivisor {
        let k = self.field();
        let (f, h) = (self.curve.f(), self.curve.h());
        let (d1, e1, e2) = a.u.xgcd(&b.u, k);
        let w = a.v.add(&b.v, k).add(h, k);
        let (d, c1, c2) = d1.xgcd(&w, k);
        let s1 = c1.mul(&e1, k);
        let s2 = c1.mul(&e2, k);
        let u = a.u.mul(&b.u, k).div_exact(&d.square(k), k).expect("d^2 | u1 u2");
        let num = s1
            .mul(&a.u, k)
            .mul(&b.v, k)
            .add(&s2.mul(&b.u, k).mul(&a.v, k), k)
            .add(&c2.mul(&a.v.mul(&b.v, k).add(f, k), k), k);
        let v = num.div_exact(&d, k).expect("d divides the numerator").rem(&u, k).expect("nonzero");
        self.reduce(u, v)
    }

    pub fn neg(&self, a: &MumfordDivisor) -> MumfordDivisor {
        let k = self.field();
        let v = a.v.add(self.curve.h(), k).neg(k).rem(&a.u, k).expect("nonzero");
        MumfordDivisor { u: a.u.clone(), v }
    }

    pub fn mul(&self, a: &MumfordDivisor, e: &BigUint) -> MumfordDivisor {
        let mut acc = self.identity();
        for i in (0..e.bits()).rev() {
            acc = self.add(&acc, &acc);
            if e.bit(i) {
                acc = self.add(&acc, a);
            }
        }
        acc
    }

    /// A point of the affine model chosen uniformly among `(x, y)` pairs
    /// hit by a random `x`; `None` if no affine point exists.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<(Fe, Fe)>, JacobianError> {
        let k = self.field();
        for _ in 0..256 {
            let x = k.random(rng);
            let ys = self.curve.fiber(&x, rng)?;
            if !ys.is_empty() {
                let y = ys[rng.gen_range(0..ys.len())].clone();
                return Ok(Some((x, y)));
            }
        }
        // small fields: exhaust
        let Some(q) = k.order_u128().filter(|&q| q <= 1 << 16) else {
            return Err(JacobianError::Unsupported("no affine point found".into()));
        };
        let mut pts = Vec::new();
        for i in 0..q {
            let x = k.from_index(i);
            for y in self.curve.fiber(&x, rng)? {
                pts.push((x.clone(), y));
            }
        }
        Ok((!pts.is_empty()).then(|| pts.swap_remove(rng.gen_range(0..pts.len()))))
    }

    /// Sum of `g` random point divisors. Not uniform; for tests and
    /// heuristics only.
    pub fn random_divisor<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MumfordDivisor, JacobianError> {
        let mut acc = self.identity();
        for _ in 0..self.genus().max(1) {
            if let Some((x, y)) = self.random_point(rng)? {
                acc = self.add(&acc, &self.from_point(&x, &y)?);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests;
