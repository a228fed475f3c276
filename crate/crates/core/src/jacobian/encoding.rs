//! Fixed-width bit strings for reduced divisors.
//!
//! Layout, least significant bit first within each field:
//! `tag (8) | deg u (ceil(log2(g+1))) | u_0..u_{g-1} | v_0..v_{g-1}`,
//! each coefficient as `a·n` coordinates of `ceil(log2 p)` bits. The
//! leading coefficient of the monic `u` is implied by the header.

use std::fmt;

use crate::ff::{Fe, Poly};

use super::{Jacobian, JacobianError, MumfordDivisor};

pub const FORMAT_TAG: u8 = 1;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Encoding {
    bits: usize,
    bytes: Vec<u8>,
}

impl Encoding {
    pub fn len_bits(&self) -> usize {
        self.bits
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bytes[i / 8] >> (i % 8) & 1 == 1
    }

    pub fn from_bytes(bytes: Vec<u8>, bits: usize) -> Result<Self, JacobianError> {
        if bytes.len() != bits.div_ceil(8) {
            return Err(JacobianError::Decode(format!("{} bytes for {bits} bits", bytes.len())));
        }
        if bits % 8 != 0 && bytes[bits / 8] >> (bits % 8) != 0 {
            return Err(JacobianError::Decode("nonzero padding".into()));
        }
        Ok(Encoding { bits, bytes })
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str, bits: usize) -> Result<Self, JacobianError> {
        if s.len() % 2 != 0 || !s.is_ascii() {
            return Err(JacobianError::Decode("odd-length hex".into()));
        }
        let bytes: Result<Vec<u8>, _> = (0..s.len()).step_by(2).map(|i| u8::from_str_radix(&s[i..i + 2], 16)).collect();
        Self::from_bytes(bytes.map_err(|e| JacobianError::Decode(e.to_string()))?, bits)
    }
}

impl fmt::Debug for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Encoding({})", self.to_hex())
    }
}

struct Writer {
    bytes: Vec<u8>,
    pos: usize,
}

impl Writer {
    fn put(&mut self, v: u64, width: usize) {
        for i in 0..width {
            if v >> i & 1 == 1 {
                self.bytes[(self.pos + i) / 8] |= 1 << ((self.pos + i) % 8);
            }
        }
        self.pos += width;
    }
}

struct Reader<'a> {
    e: &'a Encoding,
    pos: usize,
}

impl Reader<'_> {
    fn get(&mut self, width: usize) -> u64 {
        let mut v = 0;
        for i in 0..width {
            if self.e.bit(self.pos + i) {
                v |= 1 << i;
            }
        }
        self.pos += width;
        v
    }
}

fn ceil_log2(n: u64) -> usize {
    (u64::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

impl Jacobian {
    fn coord_bits(&self) -> usize {
        ceil_log2(self.field().characteristic()).max(1)
    }

    fn header_bits(&self) -> usize {
        ceil_log2(self.genus() as u64 + 1)
    }

    /// Total encoding length in bits.
    pub fn bit_length(&self) -> usize {
        8 + self.header_bits() + 2 * self.genus() * self.field().degree() * self.coord_bits()
    }

    pub fn encode(&self, d: &MumfordDivisor) -> Encoding {
        let bits = self.bit_length();
        let mut w = Writer { bytes: vec![0; bits.div_ceil(8)], pos: 0 };
        w.put(FORMAT_TAG as u64, 8);
        w.put(d.u.deg() as u64, self.header_bits());
        let k = self.field();
        let cb = self.coord_bits();
        for poly in [&d.u, &d.v] {
            for i in 0..self.genus() {
                let c = if (i as isize) < d.u.deg() { poly.coeff(k, i) } else { k.zero() };
                for &x in c.coords() {
                    w.put(x, cb);
                }
                for _ in c.coords().len()..k.degree() {
                    w.put(0, cb);
                }
            }
        }
        debug_assert_eq!(w.pos, bits);
        Encoding { bits, bytes: w.bytes }
    }

    /// Inverse of `encode`; rejects anything `encode` cannot produce.
    pub fn decode(&self, e: &Encoding) -> Result<MumfordDivisor, JacobianError> {
        if e.len_bits() != self.bit_length() {
            return Err(JacobianError::Decode(format!("expected {} bits, got {}", self.bit_length(), e.len_bits())));
        }
        let mut r = Reader { e, pos: 0 };
        let tag = r.get(8);
        if tag != FORMAT_TAG as u64 {
            return Err(JacobianError::Decode(format!("unknown format tag {tag}")));
        }
        let deg = r.get(self.header_bits()) as usize;
        if deg > self.genus() {
            return Err(JacobianError::Decode(format!("degree {deg} exceeds genus")));
        }
        let k = self.field();
        let p = k.characteristic();
        let cb = self.coord_bits();
        let read_poly = |r: &mut Reader| -> Result<Vec<Fe>, JacobianError> {
            let mut cs = Vec::with_capacity(self.genus());
            for i in 0..self.genus() {
                let coords: Vec<u64> = (0..k.degree()).map(|_| r.get(cb)).collect();
                if coords.iter().any(|&c| c >= p) {
                    return Err(JacobianError::Decode("coordinate out of range".into()));
                }
                if i >= deg && coords.iter().any(|&c| c != 0) {
                    return Err(JacobianError::Decode("nonzero coefficient beyond degree".into()));
                }
                cs.push(k.from_coords(&coords).map_err(|e| JacobianError::Decode(e.to_string()))?);
            }
            Ok(cs)
        };
        let mut u = read_poly(&mut r)?;
        let v = read_poly(&mut r)?;
        u.truncate(deg);
        u.push(k.one());
        let d = MumfordDivisor { u: Poly::from_coeffs(u), v: Poly::from_coeffs(v) };
        if !self.is_reduced(&d) {
            return Err(JacobianError::Decode("u does not divide v^2 + h v - f".into()));
        }
        Ok(d)
    }
}
