//! Black-box groups with unique encodings.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;

use crate::curve::HyperellipticCurve;

use super::{Encoding, Jacobian, JacobianError, MumfordDivisor};

/// A finite group seen only through fixed-width encodings and oracles.
/// Equal elements have equal encodings.
pub trait BlackBoxGroup {
    fn bit_length(&self) -> usize;
    fn identity(&self) -> Encoding;
    fn compose(&self, a: &Encoding, b: &Encoding) -> Result<Encoding, JacobianError>;
    fn invert(&self, a: &Encoding) -> Result<Encoding, JacobianError>;
    fn generators(&self) -> &[Encoding];

    /// Size of the presentation, `m · |T|`.
    fn input_length(&self) -> usize {
        self.bit_length() * self.generators().len()
    }

    /// Number of compose/invert calls so far.
    fn oracle_calls(&self) -> u64 {
        0
    }

    fn power(&self, a: &Encoding, e: &BigUint) -> Result<Encoding, JacobianError> {
        let mut acc = self.identity();
        for i in (0..e.bits()).rev() {
            acc = self.compose(&acc, &acc)?;
            if e.bit(i) {
                acc = self.compose(&acc, a)?;
            }
        }
        Ok(acc)
    }
}

/// The subgroup generated by `gens`, by breadth-first closure. Generators
/// already inside the current span are skipped. Fails once more than
/// `limit` elements are found.
pub fn closure<G: BlackBoxGroup + ?Sized>(
    g: &G,
    gens: &[Encoding],
    limit: usize,
) -> Result<HashSet<Encoding>, JacobianError> {
    let mut seen = HashSet::from([g.identity()]);
    let mut used: Vec<&Encoding> = Vec::new();
    for t in gens {
        if seen.contains(t) {
            continue;
        }
        used.push(t);
        let mut frontier: Vec<Encoding> = seen.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for u in &used {
                let y = g.compose(&x, u)?;
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return Err(JacobianError::ClosureLimit(limit));
                    }
                    frontier.push(y);
                }
            }
        }
    }
    Ok(seen)
}

/// `Cl(C_n)` behind the encoding layer.
#[derive(Debug)]
pub struct JacobianGroup {
    jac: Jacobian,
    gens: Vec<Encoding>,
    calls: AtomicU64,
}

impl JacobianGroup {
    pub fn jacobian(&self) -> &Jacobian {
        &self.jac
    }

    pub fn with_generators(mut self, gens: Vec<Encoding>) -> Self {
        self.gens = gens;
        self
    }
}

/// Black-box presentation of `Cl(C_n)` with the given generators.
pub fn blackbox_from_curve(
    curve: &HyperellipticCurve,
    n: usize,
    generators: &[MumfordDivisor],
) -> Result<JacobianGroup, JacobianError> {
    let jac = Jacobian::new(curve, n)?;
    let mut gens = Vec::with_capacity(generators.len());
    for d in generators {
        if !jac.is_reduced(d) {
            return Err(JacobianError::NotReduced);
        }
        gens.push(jac.encode(d));
    }
    Ok(JacobianGroup { jac, gens, calls: AtomicU64::new(0) })
}

impl BlackBoxGroup for JacobianGroup {
    fn bit_length(&self) -> usize {
        self.jac.bit_length()
    }

    fn identity(&self) -> Encoding {
        self.jac.encode(&self.jac.identity())
    }

    fn compose(&self, a: &Encoding, b: &Encoding) -> Result<Encoding, JacobianError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let s = self.jac.add(&self.jac.decode(a)?, &self.jac.decode(b)?);
        Ok(self.jac.encode(&s))
    }

    fn invert(&self, a: &Encoding) -> Result<Encoding, JacobianError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.jac.encode(&self.jac.neg(&self.jac.decode(a)?)))
    }

    fn generators(&self) -> &[Encoding] {
        &self.gens
    }

    fn oracle_calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

/// `Z/n_1 x ... x Z/n_k` with each component written in fixed width.
#[derive(Clone, Debug)]
pub struct CyclicProduct {
    moduli: Vec<u64>,
    widths: Vec<usize>,
    gens: Vec<Encoding>,
}

impl CyclicProduct {
    pub fn new(moduli: &[u64]) -> Self {
        let widths = moduli.iter().map(|&n| (u64::BITS - n.saturating_sub(1).leading_zeros()).max(1) as usize).collect();
        CyclicProduct { moduli: moduli.to_vec(), widths, gens: Vec::new() }
    }

    pub fn with_generators(mut self, gens: &[Vec<u64>]) -> Self {
        self.gens = gens.iter().map(|g| self.encode(g)).collect();
        self
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn encode(&self, x: &[u64]) -> Encoding {
        let bits = self.bit_length();
        let mut bytes = vec![0u8; bits.div_ceil(8)];
        let mut pos = 0;
        for ((&v, &n), &w) in x.iter().zip(&self.moduli).zip(&self.widths) {
            let v = v % n;
            for i in 0..w {
                if v >> i & 1 == 1 {
                    bytes[(pos + i) / 8] |= 1 << ((pos + i) % 8);
                }
            }
            pos += w;
        }
        Encoding::from_bytes(bytes, bits).expect("well-formed")
    }

    pub fn decode(&self, e: &Encoding) -> Result<Vec<u64>, JacobianError> {
        if e.len_bits() != self.bit_length() {
            return Err(JacobianError::Decode("length".into()));
        }
        let mut pos = 0;
        let mut out = Vec::with_capacity(self.moduli.len());
        for (&n, &w) in self.moduli.iter().zip(&self.widths) {
            let v = (0..w).filter(|&i| e.bit(pos + i)).fold(0u64, |acc, i| acc | 1 << i);
            if v >= n {
                return Err(JacobianError::Decode("component out of range".into()));
            }
            out.push(v);
            pos += w;
        }
        Ok(out)
    }
}

impl BlackBoxGroup for CyclicProduct {
    fn bit_length(&self) -> usize {
        self.widths.iter().sum::<usize>().max(1)
    }

    fn identity(&self) -> Encoding {
        self.encode(&vec![0; self.moduli.len()])
    }

    fn compose(&self, a: &Encoding, b: &Encoding) -> Result<Encoding, JacobianError> {
        let (a, b) = (self.decode(a)?, self.decode(b)?);
        let s: Vec<u64> = a.iter().zip(&b).zip(&self.moduli).map(|((x, y), n)| (x + y) % n).collect();
        Ok(self.encode(&s))
    }

    fn invert(&self, a: &Encoding) -> Result<Encoding, JacobianError> {
        let a = self.decode(a)?;
        let s: Vec<u64> = a.iter().zip(&self.moduli).map(|(x, n)| (n - x) % n).collect();
        Ok(self.encode(&s))
    }

    fn generators(&self) -> &[Encoding] {
        &self.gens
    }
}
