//! Prime divisors of a given degree as Frobenius orbits of points.

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ff::{distinct_roots, make_extension, Embedding, Fe, FiniteField, Poly};

use super::{CurveError, CurveModel, HyperellipticCurve, PlaneCurve};

/// How a degree-`e` prime divisor `E` sits relative to the point(s) at
/// infinity of a hyperelliptic model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    /// A place at infinity. `s` is the root of `s^2 + h_{g+1} s = f_{2g+2}`
    /// picking the branch; `None` for the single point of odd-degree models.
    Infinity { s: Option<Fe> },
    /// `E = div(u, v)`: `u` is the minimal polynomial of `x`, `v(x) = y` on
    /// the orbit, `deg v < deg u = e`.
    Affine { u: Poly, v: Poly },
    /// Both points over each root of `u`; `E = div(u(x))` up to infinity,
    /// so `E - e·∞` is principal. `deg u = e / 2`.
    Conjugate { u: Poly },
    /// A point of a plane model.
    Plane,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisor {
    pub degree: usize,
    /// `F_{q^e}`, the field of definition of the representative.
    pub field: FiniteField,
    /// Canonical orbit representative: `(x, y)` for affine hyperelliptic
    /// points, `[s]` or `[]` at infinity, `[X, Y, Z]` for plane points.
    pub representative: Vec<Fe>,
    pub support: Support,
}

/// All prime divisors of degree exactly `e`, in canonical order.
pub fn enumerate_prime_divisors(curve: &CurveModel, e: usize, budget: u128) -> Result<Vec<PrimeDivisor>, CurveError> {
    if e == 0 {
        return Ok(Vec::new());
    }
    match curve {
        CurveModel::Hyperelliptic(c) => hyperelliptic_divisors(c, e, budget),
        CurveModel::Plane(c) => plane_divisors(c, e, budget),
    }
}

/// Frobenius orbit of a tuple of coordinates, up to `e` steps.
fn orbit(kk: &FiniteField, a: usize, pt: &[Fe], e: usize) -> Vec<Vec<Fe>> {
    let mut out = vec![pt.to_vec()];
    for _ in 1..e {
        let next: Vec<Fe> = out.last().unwrap().iter().map(|c| kk.frobenius_pow(c, a)).collect();
        if next == out[0] {
            break;
        }
        out.push(next);
    }
    out
}

/// Orders points by field index, most significant coordinate first.
fn point_key(p: &[Fe]) -> Vec<Vec<u64>> {
    p.iter().map(|c| c.coords().iter().rev().copied().collect()).collect()
}

/// Whether `pt` has orbit size exactly `e` and is its minimal element.
fn canonical(kk: &FiniteField, a: usize, pt: &[Fe], e: usize) -> Option<Vec<Vec<Fe>>> {
    let orb = orbit(kk, a, pt, e);
    if orb.len() != e {
        return None;
    }
    let k0 = point_key(&orb[0]);
    orb.iter().skip(1).all(|p| point_key(p) > k0).then_some(orb)
}

fn budget_check(k: &FiniteField, e: usize, budget: u128) -> Result<u128, CurveError> {
    let big = k.order().pow(e as u32);
    big.to_u128().filter(|&v| v <= budget).ok_or_else(|| CurveError::Budget { needed: big.to_string(), budget })
}

fn hyperelliptic_divisors(c: &HyperellipticCurve, e: usize, budget: u128) -> Result<Vec<PrimeDivisor>, CurveError> {
    let qe = budget_check(c.field(), e, budget)?;
    let a = c.field().degree();
    let (kk, emb) = make_extension(c.field(), e)?;
    let ce = c.base_change(&emb);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();

    // places at infinity
    if c.is_odd_degree() {
        if e == 1 {
            out.push(PrimeDivisor { degree: 1, field: kk.clone(), representative: vec![], support: Support::Infinity { s: None } });
        }
    } else {
        let g = c.genus();
        let quad = Poly::from_coeffs(vec![kk.neg(&ce.f.coeff(&kk, 2 * g + 2)), ce.h.coeff(&kk, g + 1), kk.one()]);
        for s in distinct_roots(&quad, &kk, &mut rng)? {
            if canonical(&kk, a, std::slice::from_ref(&s), e).is_some() {
                out.push(PrimeDivisor {
                    degree: e,
                    field: kk.clone(),
                    representative: vec![s.clone()],
                    support: Support::Infinity { s: Some(s) },
                });
            }
        }
    }

    for idx in 0..qe {
        let x = kk.from_index(idx);
        for y in ce.fiber(&x, &mut rng)? {
            if let Some(d) = orbit_divisor(&kk, &emb, &x, &y, e) {
                if d.representative[0] == x && d.representative[1] == y {
                    out.push(d);
                }
            }
        }
    }
    Ok(out)
}

/// The degree-`e` prime divisor through the point `(x, y)` of the curve over
/// `emb.target()`, or `None` if the Frobenius orbit of the point over
/// `emb.source()` does not have size `e`. The representative is the orbit's
/// minimal element.
pub fn orbit_divisor(kk: &FiniteField, emb: &Embedding, x: &Fe, y: &Fe, e: usize) -> Option<PrimeDivisor> {
    let a = emb.source().degree();
    let mut orb = orbit(kk, a, &[x.clone(), y.clone()], e);
    if orb.len() != e {
        return None;
    }
    let start = (0..e).min_by_key(|&i| point_key(&orb[i])).unwrap();
    orb.rotate_left(start);
    let xs: Vec<Fe> = orbit(kk, a, std::slice::from_ref(&orb[0][0]), e).into_iter().map(|p| p[0].clone()).collect();
    let u = emb.descend_poly(&Poly::from_roots(&xs, kk)).expect("minimal polynomial over the base");
    let support = if xs.len() == e {
        let pts: Vec<(Fe, Fe)> = orb.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
        let v = emb.descend_poly(&interpolate(&pts, kk)).expect("interpolant over the base");
        Support::Affine { u, v }
    } else {
        Support::Conjugate { u }
    };
    Some(PrimeDivisor { degree: e, field: kk.clone(), representative: orb.swap_remove(0), support })
}

/// Lagrange interpolation through distinct abscissae.
fn interpolate(pts: &[(Fe, Fe)], k: &FiniteField) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut num = Poly::one(k);
        let mut den = k.one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                num = num.mul(&Poly::from_coeffs(vec![k.neg(xj), k.one()]), k);
                den = k.mul(&den, &k.sub(xi, xj));
            }
        }
        let c = k.div(yi, &den).expect("distinct abscissae");
        acc = acc.add(&num.scale(&c, k), k);
    }
    acc
}

fn plane_divisors(c: &PlaneCurve, e: usize, budget: u128) -> Result<Vec<PrimeDivisor>, CurveError> {
    let a = c.field().degree();
    let mut pts = Vec::new();
    let kk = c.visit_points(e, budget, &mut |p| pts.push(p))?;
    Ok(pts
        .into_iter()
        .filter(|p| canonical(&kk, a, p, e).is_some())
        .map(|p| PrimeDivisor { degree: e, field: kk.clone(), representative: p.to_vec(), support: Support::Plane })
        .collect())
}
