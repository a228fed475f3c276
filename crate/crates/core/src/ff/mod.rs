//! Exact arithmetic over prime fields, their extensions, and univariate
//! polynomials over them.

mod embed;
mod field;
mod poly;
pub mod roots;

use thiserror::Error;

pub use embed::{embedding_into, make_extension, standard_field, Embedding};
pub use field::{Coords, Fe, FiniteField, MAX_CHARACTERISTIC};
pub use poly::Poly;
pub use roots::{distinct_roots, irreducible_factors_of_degree, is_irreducible, poly_roots};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the supported maximum")]
    CharacteristicTooLarge(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(usize),
    #[error("no irreducible polynomial of degree {k} over F_{p} found")]
    NoIrreducible { p: u64, k: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible")]
    Reducible,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("{got} coordinates given for a field of degree {degree}")]
    TooManyCoords { got: usize, degree: usize },
    #[error("randomized equal-degree splitting failed repeatedly")]
    SplittingFailed,
    #[error("fields are not a subfield/extension pair")]
    NotASubfield,
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
