//! Prime contexts, residue exponents and base-`p` digits.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ring::{LocalRing, RingElem};
use super::ArithError;

/// Deterministic trial division; the primes in play are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo a positive modulus, always stored in `[0, modulus)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExpRes {
    value: u64,
    modulus: u64,
}

impl ExpRes {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "residue modulus must be positive");
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        ExpRes { value: v as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Representative as a signed integer, convenient in formulas.
    pub fn as_i64(self) -> i64 {
        self.value as i64
    }

    pub fn add(self, other: ExpRes) -> ExpRes {
        debug_assert_eq!(self.modulus, other.modulus);
        ExpRes::new(self.as_i64() + other.as_i64(), self.modulus)
    }

    pub fn add_int(self, k: i64) -> ExpRes {
        ExpRes::new(self.as_i64() + k, self.modulus)
    }

    pub fn mul_int(self, k: i64) -> ExpRes {
        ExpRes::new(
            ((self.value as i128 * k as i128) % self.modulus as i128) as i64,
            self.modulus,
        )
    }

    pub fn neg(self) -> ExpRes {
        ExpRes::new(-self.as_i64(), self.modulus)
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for ExpRes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for ExpRes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The session context: the prime `p`, the field `F_{p^f}` that holds every
/// `λ`, and the exponent modulus `p² − 1`.
#[derive(Clone, Debug)]
pub struct PrimeCtx {
    p: u64,
    f: u32,
    field: Arc<LocalRing>,
}

impl PrimeCtx {
    /// Builds a context with the lexicographically smallest irreducible
    /// modulus of degree `f`.
    pub fn new(p: u64, f: u32) -> Result<Self, ArithError> {
        let field = LocalRing::finite_field(p, f)?;
        Ok(PrimeCtx { p, f, field })
    }

    /// Builds a context over an explicit monic modulus (little-endian
    /// coefficients, leading 1 included).
    pub fn with_modulus(p: u64, modulus: &[i64]) -> Result<Self, ArithError> {
        if modulus.len() < 2 {
            return Err(ArithError::InvalidModulus("degree must be at least 1".into()));
        }
        let field = LocalRing::new(p, 1, modulus)?;
        if !field.is_field() {
            return Err(ArithError::NotIrreducible);
        }
        let f = (modulus.len() - 1) as u32;
        Ok(PrimeCtx { p, f, field })
    }

    /// Same as [`PrimeCtx::new`] but refuses `p = 2`, which the C-group side
    /// cannot handle.
    pub fn new_odd(p: u64, f: u32) -> Result<Self, ArithError> {
        if p == 2 {
            return Err(ArithError::Domain("p must be odd here".into()));
        }
        Self::new(p, f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// `p² − 1`.
    pub fn n(&self) -> u64 {
        self.p * self.p - 1
    }

    pub fn field(&self) -> &Arc<LocalRing> {
        &self.field
    }

    /// `p^f`.
    pub fn field_size(&self) -> u64 {
        self.field.size()
    }

    pub fn exp(&self, value: i64) -> ExpRes {
        ExpRes::new(value, self.n())
    }

    pub fn one(&self) -> RingElem {
        self.field.one()
    }

    pub fn elem(&self, coeffs: &[i64]) -> Result<RingElem, ArithError> {
        self.field.elem(coeffs)
    }

    pub fn int(&self, c: i64) -> RingElem {
        self.field.from_int(c)
    }

    /// Nonzero field elements in lexicographic order of their coefficient
    /// sequences.
    pub fn nonzero_elements(&self) -> Vec<RingElem> {
        self.field.elements().filter(|e| !e.is_zero()).collect()
    }

    /// The `i`-th nonzero field element in lexicographic order.
    pub fn lambda_by_index(&self, i: usize) -> Result<RingElem, ArithError> {
        self.nonzero_elements()
            .into_iter()
            .nth(i)
            .ok_or(ArithError::OutOfRange {
                what: "lambda index",
                value: i as i64,
                lo: 0,
                hi: self.field_size() as i64 - 2,
            })
    }

    pub fn p_digits(&self, x: i64) -> Result<(u64, u64), ArithError> {
        p_digits(x, self.p)
    }
}

/// Splits `x ∈ [0, p² − 2]` as `a0 + p·a1`.
pub fn p_digits(x: i64, p: u64) -> Result<(u64, u64), ArithError> {
    let hi = (p * p) as i64 - 2;
    if x < 0 || x > hi {
        return Err(ArithError::OutOfRange {
            what: "p-digit input",
            value: x,
            lo: 0,
            hi,
        });
    }
    let x = x as u64;
    Ok((x % p, x / p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_examples() {
        assert_eq!(p_digits(20, 7).unwrap(), (6, 2));
        assert_eq!(p_digits(0, 7).unwrap(), (0, 0));
        assert_eq!(p_digits(19, 5).unwrap(), (4, 3));
    }

    #[test]
    fn digits_out_of_range() {
        assert!(p_digits(48, 7).is_err());
        assert!(p_digits(-1, 7).is_err());
    }

    #[test]
    fn digits_round_trip_all_small_primes() {
        for p in (2..=31).filter(|&p| is_prime(p)) {
            for x in 0..=(p * p - 2) as i64 {
                let (a0, a1) = p_digits(x, p).unwrap();
                assert!(a0 < p && a1 < p);
                assert_eq!((a0 + p * a1) as i64, x);
            }
        }
    }

    #[test]
    fn residues_are_canonical() {
        let r = ExpRes::new(-3, 8);
        assert_eq!(r.value(), 5);
        assert_eq!(r.mul_int(-3).value(), 1);
        assert_eq!(ExpRes::new(21, 8).neg().value(), 3);
    }

    #[test]
    fn auto_modulus_is_smallest_irreducible() {
        let ctx = PrimeCtx::new(3, 2).unwrap();
        // x^2 + 1
        assert_eq!(ctx.field().modulus(), &[1, 0, 1]);
        let ctx = PrimeCtx::new(5, 1).unwrap();
        assert_eq!(ctx.field().modulus(), &[0, 1]);
        assert_eq!(ctx.nonzero_elements().len(), 4);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1 over F_3
        assert!(PrimeCtx::with_modulus(3, &[-1, 0, 1]).is_err());
        assert!(PrimeCtx::new(4, 1).is_err());
    }
}
