//! Random prime divisors of degree `e` from zero loci of random functions in
//! `L(j·d·∞)` on an odd-degree hyperelliptic model.

use num_bigint::BigUint;
use rand::{Rng, RngCore};

use crate::curve::{orbit_divisor, HyperellipticCurve, PrimeDivisor, Support};
use crate::ff::{distinct_roots, irreducible_factors_of_degree, make_extension, Embedding, Fe, FiniteField, Poly};

use super::{BUniformOracle, SamplingError};

/// Samples degree-`e` prime divisors of `curve` (over its own field).
#[derive(Clone, Debug)]
pub struct PrimeDivisorOracle {
    curve: HyperellipticCurve,
    e: usize,
    d: usize,
    j: usize,
    ext: FiniteField,
    emb: Embedding,
    over_ext: HyperellipticCurve,
    /// Exponents of the monomial basis: `(i, 0)` for `x^i`, `(i, 1)` for `x^i y`.
    basis: Vec<(usize, usize)>,
}

/// Checks `16 g < q^(e/2)` and builds the oracle.
pub fn prime_divisor_oracle(curve: &HyperellipticCurve, e: usize) -> Result<PrimeDivisorOracle, SamplingError> {
    let curve = curve.to_odd_degree()?;
    let g = curve.genus();
    let q = curve.field().order();
    if e == 0 || BigUint::from(256 * g * g) >= q.pow(e as u32) {
        return Err(SamplingError::Hypothesis { g, q: q.to_string(), e });
    }
    let d = curve.plane_degree();
    let j = (2 * g - 1 + e).div_ceil(d);
    let pole_y = 2 * g + 1;
    let mut basis = Vec::new();
    for i in 0..=j * d / 2 {
        if 2 * i <= j * d {
            basis.push((i, 0));
        }
        if 2 * i + pole_y <= j * d {
            basis.push((i, 1));
        }
    }
    let (ext, emb) = make_extension(curve.field(), e).map_err(crate::curve::CurveError::from)?;
    let over_ext = curve.base_change(&emb);
    Ok(PrimeDivisorOracle { curve, e, d, j, ext, emb, over_ext, basis })
}

impl PrimeDivisorOracle {
    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn plane_degree(&self) -> usize {
        self.d
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    /// Dimension of the sampled function space.
    pub fn space_dimension(&self) -> usize {
        self.basis.len()
    }

    /// Boost count for the raw sampler, `1024 e^2`.
    pub fn raw_budget(&self) -> usize {
        1024 * self.e * self.e
    }

    /// One raw invocation: a uniformly random `a(x) + b(x) y` in the space,
    /// then a uniform choice among the degree-`e` prime divisors in the
    /// zero locus of the corresponding plane form, `div(phi) + j d ∞`. `None` when there are none.
    pub fn raw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<PrimeDivisor>, SamplingError> {
        let k = self.curve.field();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for &(i, t) in &self.basis {
            let slot = if t == 0 { &mut a } else { &mut b };
            if slot.len() <= i {
                slot.resize(i + 1, k.zero());
            }
            slot[i] = k.random(rng);
        }
        let (a, b) = (Poly::from_coeffs(a), Poly::from_coeffs(b));
        if a.is_zero() && b.is_zero() {
            return Ok(None);
        }
        let (f, h) = (self.curve.f(), self.curve.h());
        // norm (a + b y)(a + b y') with y + y' = -h, y y' = -f
        let norm = a.square(k).sub(&a.mul(&b, k).mul(h, k), k).sub(&b.square(k).mul(f, k), k);
        if norm.deg() < 1 {
            return Ok(None);
        }
        let kk = &self.ext;
        let (ae, be) = (self.emb.embed_poly(&a), self.emb.embed_poly(&b));
        let mut found: Vec<PrimeDivisor> = Vec::new();
        for x in self.x_orbit_representatives(&norm, rng)? {
            for y in self.over_ext.fiber(&x, rng)? {
                let val = kk.add(&ae.eval(&x, kk), &kk.mul(&be.eval(&x, kk), &y));
                if !val.is_zero() {
                    continue;
                }
                if let Some(p) = orbit_divisor(kk, &self.emb, &x, &y, self.e) {
                    if !found.iter().any(|q| q.representative == p.representative) {
                        found.push(p);
                    }
                }
            }
        }
        // the zero divisor of the form is div(phi) + j d ∞
        let pole = (2 * a.deg()).max(if b.is_zero() { -1 } else { 2 * b.deg() + 2 * self.curve.genus() as isize + 1 });
        if self.e == 1 && pole < (self.j * self.d) as isize {
            found.push(PrimeDivisor {
                degree: 1,
                field: kk.clone(),
                representative: vec![],
                support: Support::Infinity { s: None },
            });
        }
        if found.is_empty() {
            return Ok(None);
        }
        let pick = rng.gen_range(0..found.len());
        Ok(Some(found.swap_remove(pick)))
    }
}

impl PrimeDivisorOracle {
    /// One root in `F_{q^e}` of each irreducible factor of `norm` over the
    /// base of degree `e` or `e/2`, the only possible `x`-degrees of a prime
    /// divisor of degree `e`.
    fn x_orbit_representatives<R: Rng + ?Sized>(&self, norm: &Poly, rng: &mut R) -> Result<Vec<Fe>, SamplingError> {
        let (k, kk) = (self.curve.field(), &self.ext);
        let ff = |e| SamplingError::Curve(crate::curve::CurveError::from(e));
        let degrees: &[usize] = if self.e % 2 == 0 { &[self.e / 2, self.e] } else { &[self.e] };
        let mut out = Vec::new();
        for &dx in degrees {
            for phi in irreducible_factors_of_degree(norm, dx, k, rng).map_err(ff)? {
                let root = if dx == 1 {
                    self.emb.embed(&k.neg(&phi.coeffs()[0]))
                } else {
                    let roots = distinct_roots(&self.emb.embed_poly(&phi), kk, rng).map_err(ff)?;
                    roots.into_iter().next().expect("irreducible factors split in F_{q^e}")
                };
                out.push(root);
            }
        }
        Ok(out)
    }
}

impl BUniformOracle for PrimeDivisorOracle {
    type Item = PrimeDivisor;

    /// `1 + (2g - 2 + d) / e`.
    fn bound(&self) -> f64 {
        1.0 + (2.0 * self.curve.genus() as f64 - 2.0 + self.d as f64) / self.e as f64
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<Option<PrimeDivisor>, SamplingError> {
        for _ in 0..self.raw_budget() {
            if let Some(p) = self.raw(rng)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{enumerate_prime_divisors, CurveModel};
    use crate::ff::standard_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn curve(p: u64, f: &[u64]) -> HyperellipticCurve {
        let k = standard_field(p, 1).unwrap();
        HyperellipticCurve::new(k.clone(), Poly::from_u64s(&k, f), Poly::zero()).unwrap()
    }

    #[test]
    fn parameters_and_hypothesis() {
        let o = prime_divisor_oracle(&curve(1031, &[1, 1, 0, 1]), 1).unwrap();
        assert_eq!(o.bound(), 4.0);
        assert_eq!(o.j(), 1);
        assert_eq!(o.space_dimension(), 3);
        assert!(matches!(prime_divisor_oracle(&curve(251, &[1, 1, 0, 1]), 1), Err(SamplingError::Hypothesis { .. })));
        assert!(prime_divisor_oracle(&curve(251, &[1, 1, 0, 1]), 2).is_ok());
    }

    #[test]
    fn outputs_have_exact_degree_and_cover_v() {
        let c = curve(263, &[1, 1, 0, 1]);
        for e in [1usize, 2] {
            let o = prime_divisor_oracle(&c, e).unwrap();
            let v: Vec<_> = enumerate_prime_divisors(&CurveModel::Hyperelliptic(c.clone()), e, 1 << 20)
                .unwrap()
                .into_iter()
                .map(|d| d.representative)
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(e as u64);
            let mut seen = HashMap::new();
            for _ in 0..2000 {
                let p = o.sample(&mut rng).unwrap().unwrap();
                assert_eq!(p.degree, e);
                assert!(v.contains(&p.representative));
                *seen.entry(p.representative).or_insert(0) += 1;
            }
            if e == 1 {
                assert!(seen.len() as f64 > 0.9 * v.len() as f64);
            }
        }
    }
}
