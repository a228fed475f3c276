//! Factorization helpers over finite fields: irreducibility testing,
//! distinct-degree splitting and Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::Rng;

use super::{Fe, FfError, FiniteField, Poly};

/// Attempts per equal-degree split before giving up. Each attempt succeeds
/// with probability at least 1/2, so hitting the cap means something is broken.
const SPLIT_ATTEMPTS: usize = 200;

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(Q^j) mod f` for `j = 0..=n`, `Q = |k|`.
fn frobenius_orbit_of_x(f: &Poly, n: usize, k: &FiniteField) -> Vec<Poly> {
    let x = Poly::x(k).rem(f, k).expect("nonzero modulus");
    let mut out = vec![x];
    for _ in 0..n {
        let next = out.last().unwrap().powmod(k.order(), f, k);
        out.push(next);
    }
    out
}

/// Rabin's irreducibility test over `k`.
pub fn is_irreducible(f: &Poly, k: &FiniteField) -> bool {
    let n = match f.deg() {
        d if d <= 0 => return false,
        1 => return true,
        d => d as usize,
    };
    let f = f.monic(k);
    let orbit = frobenius_orbit_of_x(&f, n, k);
    if orbit[n] != orbit[0] {
        return false;
    }
    prime_factors(n).into_iter().all(|r| {
        let g = orbit[n / r].sub(&Poly::x(k), k).gcd(&f, k);
        g.deg() == 0
    })
}

pub(crate) fn is_irreducible_fp(fp: &FiniteField, m: &[u64]) -> bool {
    is_irreducible(&Poly::from_u64s(fp, m), fp)
}

/// Splits a squarefree monic `g` whose irreducible factors all have degree
/// `d` into those factors.
pub fn equal_degree_split<R: Rng + ?Sized>(
    g: &Poly,
    d: usize,
    k: &FiniteField,
    rng: &mut R,
) -> Result<Vec<Poly>, FfError> {
    let n = g.deg();
    if n <= 0 {
        return Ok(vec![]);
    }
    if n as usize == d {
        return Ok(vec![g.monic(k)]);
    }
    let p = k.characteristic();
    let odd_exp = if p == 2 {
        None
    } else {
        Some((k.order().pow(d as u32) - 1u32) >> 1)
    };
    let abs_deg = k.degree() * d;
    for _ in 0..SPLIT_ATTEMPTS {
        let a = Poly::random(k, n as usize, rng);
        if a.deg() <= 0 {
            continue;
        }
        let b = match &odd_exp {
            Some(e) => a.powmod(e, g, k).sub(&Poly::one(k), k),
            None => {
                // absolute trace to F_2
                let mut acc = a.clone();
                let mut term = a.clone();
                for _ in 1..abs_deg {
                    term = term.mulmod(&term, g, k);
                    acc = acc.add(&term, k);
                }
                acc
            }
        };
        let h = b.gcd(g, k);
        if h.deg() > 0 && h.deg() < n {
            let rest = g.div_exact(&h, k)?;
            let mut out = equal_degree_split(&h, d, k, rng)?;
            out.extend(equal_degree_split(&rest, d, k, rng)?);
            return Ok(out);
        }
    }
    Err(FfError::SplittingFailed)
}

/// The distinct monic irreducible factors of `f` having degree exactly `e`,
/// sorted canonically.
pub fn irreducible_factors_of_degree<R: Rng + ?Sized>(
    f: &Poly,
    e: usize,
    k: &FiniteField,
    rng: &mut R,
) -> Result<Vec<Poly>, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    if e == 0 || f.deg() < e as isize {
        return Ok(vec![]);
    }
    let f = f.monic(k);
    let orbit = frobenius_orbit_of_x(&f, e, k);
    let x = Poly::x(k);
    let gcd_at = |j: usize| orbit[j].sub(&x, k).gcd(&f, k);
    let mut exact = gcd_at(e);
    for dd in 1..e {
        if e % dd == 0 && exact.deg() > 0 {
            let common = exact.gcd(&gcd_at(dd), k);
            if common.deg() > 0 {
                exact = exact.div_exact(&common, k)?;
            }
        }
    }
    let mut out = equal_degree_split(&exact, e, k, rng)?;
    out.sort();
    Ok(out)
}

/// All roots of `f` in `k` with multiplicities, sorted canonically.
///
/// The randomized splitting draws from `rng`; the returned set does not depend
/// on the seed.
pub fn poly_roots<R: Rng + ?Sized>(
    f: &Poly,
    k: &FiniteField,
    rng: &mut R,
) -> Result<Vec<(Fe, usize)>, FfError> {
    let linear = irreducible_factors_of_degree(f, 1, k, rng)?;
    let mut out = Vec::with_capacity(linear.len());
    for l in linear {
        let root = k.neg(&l.coeffs()[0]);
        let mut mult = 0;
        let mut rest = f.clone();
        while let Ok(q) = rest.div_exact(&l, k) {
            mult += 1;
            rest = q;
        }
        out.push((root, mult));
    }
    out.sort();
    Ok(out)
}

/// Roots only, without multiplicity.
pub fn distinct_roots<R: Rng + ?Sized>(
    f: &Poly,
    k: &FiniteField,
    rng: &mut R,
) -> Result<Vec<Fe>, FfError> {
    Ok(poly_roots(f, k, rng)?.into_iter().map(|(r, _)| r).collect())
}

/// Exponent helper used by callers that need `(Q^d - 1)/2`.
pub fn half_unit_order(k: &FiniteField, d: usize) -> BigUint {
    (k.order().pow(d as u32) - 1u32) >> 1
}
