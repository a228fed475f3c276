use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::inv_mod;
use super::roots::distinct_roots;
use super::{Fe, FfError, FiniteField, Poly};

/// Embedding of a subfield `F_q` into an extension `F_{q^n}`, determined by
/// the image of the subfield's generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    from: FiniteField,
    to: FiniteField,
    /// `gamma^i` for `i < from.degree()`, `gamma` the image of the generator.
    powers: Vec<Fe>,
    /// Left inverse of the coordinate matrix of `powers`: row `i` gives
    /// coordinate `i` in the subfield as an `F_p`-linear form on the big field.
    left_inverse: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn source(&self) -> &FiniteField {
        &self.from
    }

    pub fn target(&self) -> &FiniteField {
        &self.to
    }

    /// Extension degree `[to : from]`.
    pub fn relative_degree(&self) -> usize {
        self.to.degree() / self.from.degree()
    }

    pub fn embed(&self, x: &Fe) -> Fe {
        let k = &self.to;
        let mut acc = k.zero();
        for (c, g) in x.coords().iter().zip(&self.powers) {
            if *c != 0 {
                acc = k.add(&acc, &k.scale(g, *c));
            }
        }
        acc
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        f.map(|c| self.embed(c))
    }

    /// Preimage of `y`, or `None` if `y` is not in the image of the subfield.
    pub fn descend(&self, y: &Fe) -> Option<Fe> {
        let p = self.to.characteristic() as u128;
        let coords: Vec<u64> = self
            .left_inverse
            .iter()
            .map(|row| {
                let s: u128 = row.iter().zip(y.coords()).map(|(&a, &b)| (a * b) as u128).sum();
                (s % p) as u64
            })
            .collect();
        let x = self.from.from_coords(&coords).ok()?;
        (self.embed(&x) == *y).then_some(x)
    }

    pub fn descend_poly(&self, f: &Poly) -> Option<Poly> {
        let c: Option<Vec<Fe>> = f.coeffs().iter().map(|c| self.descend(c)).collect();
        c.map(Poly::from_coeffs)
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `FiniteField::new`, memoized per `(p, k)`.
pub fn standard_field(p: u64, k: usize) -> Result<FiniteField, FfError> {
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let f = FiniteField::new(p, k)?;
    field_cache().lock().unwrap().insert((p, k), f.clone());
    Ok(f)
}

/// Builds `F_{q^n}` (with its standard modulus) and the embedding of `base`
/// into it. The generator image is the smallest root of the base modulus, so
/// the result is reproducible.
pub fn make_extension(base: &FiniteField, n: usize) -> Result<(FiniteField, Embedding), FfError> {
    if n == 0 {
        return Err(FfError::InvalidDegree(0));
    }
    let p = base.characteristic();
    let to = standard_field(p, base.degree() * n)?;
    let emb = embedding_into(base, &to)?;
    Ok((to, emb))
}

type EmbeddingKey = (u64, Vec<u64>, Vec<u64>);

fn embedding_cache() -> &'static Mutex<HashMap<EmbeddingKey, Embedding>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbeddingKey, Embedding>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Embedding of `from` into `to`; `from.degree()` must divide `to.degree()`.
/// Memoized per pair of moduli.
pub fn embedding_into(from: &FiniteField, to: &FiniteField) -> Result<Embedding, FfError> {
    let key = (from.characteristic(), from.modulus().to_vec(), to.modulus().to_vec());
    if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = compute_embedding(from, to)?;
    embedding_cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

fn compute_embedding(from: &FiniteField, to: &FiniteField) -> Result<Embedding, FfError> {
    let p = from.characteristic();
    if to.characteristic() != p || to.degree() % from.degree() != 0 {
        return Err(FfError::NotASubfield);
    }
    let k = from.degree();
    let gamma = if k == 1 {
        to.zero()
    } else {
        let m = Poly::from_u64s(to, from.modulus());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        distinct_roots(&m, to, &mut rng)?
            .into_iter()
            .next()
            .ok_or(FfError::NotASubfield)?
    };
    let mut powers = Vec::with_capacity(k);
    let mut cur = to.one();
    for _ in 0..k {
        powers.push(cur.clone());
        cur = to.mul(&cur, &gamma);
    }
    let left_inverse = left_inverse(&powers, to.degree(), p)?;
    Ok(Embedding { from: from.clone(), to: to.clone(), powers, left_inverse })
}

fn left_inverse(cols: &[Fe], big: usize, p: u64) -> Result<Vec<Vec<u64>>, FfError> {
    let k = cols.len();
    // rows of M are the big-field coordinates; pick k independent rows
    let mut work: Vec<Vec<u64>> = cols.iter().map(|c| c.coords().to_vec()).collect(); // k x big
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for col in 0..big {
        if r == k {
            break;
        }
        let Some(piv) = (r..k).find(|&i| work[i][col] != 0) else { continue };
        work.swap(r, piv);
        let inv = inv_mod(work[r][col], p);
        for v in work[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..k {
            if i != r && work[i][col] != 0 {
                let f = work[i][col];
                for j in 0..big {
                    work[i][j] = (work[i][j] + (p - f) * work[r][j]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() < k {
        return Err(FfError::NotASubfield);
    }
    // square system: A[i][j] = coordinate pivots[i] of cols[j]; invert A
    let mut a: Vec<Vec<u64>> = pivots
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            let mut v: Vec<u64> = cols.iter().map(|c| c.coords()[row]).collect();
            v.extend((0..k).map(|j| u64::from(j == i)));
            v
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&i| a[i][c] != 0).ok_or(FfError::NotASubfield)?;
        a.swap(c, piv);
        let inv = inv_mod(a[c][c], p);
        for v in a[c].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..k {
            if i != c && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..2 * k {
                    a[i][j] = (a[i][j] + (p - f) * a[c][j]) % p;
                }
            }
        }
    }
    // A^{-1} maps pivot coordinates to subfield coordinates
    let mut out = vec![vec![0u64; big]; k];
    for (i, row) in out.iter_mut().enumerate() {
        for (t, &prow) in pivots.iter().enumerate() {
            row[prow] = a[i][k + t];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn identity_extension() {
        let f2 = FiniteField::prime(2).unwrap();
        let (k, e) = make_extension(&f2, 1).unwrap();
        assert_eq!(k, f2);
        assert_eq!(e.embed(&f2.one()), f2.one());
    }

    #[test]
    fn f4_from_f2() {
        let f2 = FiniteField::prime(2).unwrap();
        let (k, _) = make_extension(&f2, 2).unwrap();
        assert_eq!(k.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn constants_embed_as_constants() {
        let f5 = FiniteField::prime(5).unwrap();
        let (k, e) = make_extension(&f5, 3).unwrap();
        assert_eq!(k.order_u128(), Some(125));
        assert_eq!(e.embed(&f5.from_u64(3)), k.from_u64(3));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, a, n) in [(2, 3, 2), (3, 2, 3), (1031, 1, 2), (7, 2, 2)] {
            let base = FiniteField::new(p, a).unwrap();
            let (big, e) = make_extension(&base, n).unwrap();
            for _ in 0..30 {
                let x = base.random(&mut rng);
                let y = base.random(&mut rng);
                assert_eq!(e.embed(&base.add(&x, &y)), big.add(&e.embed(&x), &e.embed(&y)));
                assert_eq!(e.embed(&base.mul(&x, &y)), big.mul(&e.embed(&x), &e.embed(&y)));
                assert_eq!(e.descend(&e.embed(&x)), Some(x));
            }
            if n > 1 {
                // the generator of the big field is not in the subfield
                assert_eq!(e.descend(&big.gen()), None);
            }
        }
    }
}
