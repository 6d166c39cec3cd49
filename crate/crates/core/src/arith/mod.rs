//! Exact arithmetic in the finite rings everything else lives in.

mod mat2;
mod poly;
mod prime;
mod ring;
mod vpoly;

pub use mat2::{Mat2, RingValue};
pub use prime::{is_prime, p_digits, ExpRes, PrimeCtx};
pub use ring::{FieldElem, LocalRing, RingDescriptor, RingElem};
pub use vpoly::VPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is not irreducible mod p")]
    NotIrreducible,
    #[error("quotient ring is not local: modulus mod p is not a prime power")]
    NotLocal,
    #[error("element is not a unit")]
    NotUnit,
    #[error("operands live in different coefficient rings")]
    RingMismatch,
    #[error("domain error: {0}")]
    Domain(String),
}
