use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use super::ring::{LocalRing, RingElem};
use super::ArithError;

/// Exact polynomial in `v` over a [`LocalRing`], lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VPoly {
    ring: Arc<LocalRing>,
    coeffs: Vec<RingElem>,
}

impl VPoly {
    pub fn new(ring: &Arc<LocalRing>, coeffs: Vec<RingElem>) -> Result<Self, ArithError> {
        if coeffs.iter().any(|c| !Arc::ptr_eq(c.ring(), ring) && **c.ring() != **ring) {
            return Err(ArithError::RingMismatch);
        }
        let mut p = VPoly {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    pub fn zero(ring: &Arc<LocalRing>) -> Self {
        VPoly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: RingElem) -> Self {
        let ring = c.ring().clone();
        let mut p = VPoly {
            ring,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    pub fn one(ring: &Arc<LocalRing>) -> Self {
        Self::constant(ring.one())
    }

    /// The indeterminate `v`.
    pub fn v(ring: &Arc<LocalRing>) -> Self {
        VPoly {
            ring: ring.clone(),
            coeffs: vec![ring.zero(), ring.one()],
        }
    }

    /// `v + p`, the height element.
    pub fn v_plus_p(ring: &Arc<LocalRing>) -> Self {
        let mut out = VPoly {
            ring: ring.clone(),
            coeffs: vec![ring.from_int(ring.p() as i64), ring.one()],
        };
        out.trim();
        out
    }

    /// From integer coefficient rows, each row a ring element.
    pub fn from_ints(ring: &Arc<LocalRing>, rows: &[&[i64]]) -> Result<Self, ArithError> {
        let coeffs = rows
            .iter()
            .map(|r| ring.elem(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Arc<LocalRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    /// Coefficient of `v^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> RingElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn same_ring(&self, other: &VPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn try_add(&self, other: &VPoly) -> Result<VPoly, ArithError> {
        if !self.same_ring(other) {
            return Err(ArithError::RingMismatch);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        let mut out = VPoly {
            ring: self.ring.clone(),
            coeffs,
        };
        out.trim();
        Ok(out)
    }

    pub fn try_mul(&self, other: &VPoly) -> Result<VPoly, ArithError> {
        if !self.same_ring(other) {
            return Err(ArithError::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(VPoly::zero(&self.ring));
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut out = VPoly {
            ring: self.ring.clone(),
            coeffs,
        };
        out.trim();
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> VPoly {
        let mut out = VPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        out.trim();
        out
    }

    /// Coefficient-wise map into another ring (e.g. the residue field).
    pub fn map_coeffs(&self, target: &Arc<LocalRing>, f: impl Fn(&RingElem) -> RingElem) -> VPoly {
        let mut out = VPoly {
            ring: target.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        };
        out.trim();
        out
    }

    /// Exact division by `v + p` when it divides (synthetic division).
    pub fn div_v_plus_p(&self) -> Option<VPoly> {
        let Some(deg) = self.degree() else {
            return Some(self.clone());
        };
        if deg == 0 {
            return None;
        }
        // a(v) = (v + p) b(v): b_{n-1} = a_n, b_{i-1} = a_i − p·b_i
        let p = self.ring.from_int(self.ring.p() as i64);
        let mut b = vec![self.ring.zero(); deg];
        b[deg - 1] = self.coeffs[deg].clone();
        for i in (1..deg).rev() {
            b[i - 1] = &self.coeffs[i] - &(&p * &b[i]);
        }
        if &p * &b[0] != self.coeffs[0] {
            return None;
        }
        VPoly::new(&self.ring, b).ok()
    }
}

impl fmt::Debug for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*v"),
                _ => format!("{c}*v^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Serialized as the list of coefficient sequences, lowest degree first.
impl Serialize for VPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'a> Add<&'a VPoly> for &'a VPoly {
    type Output = VPoly;
    fn add(self, rhs: &'a VPoly) -> VPoly {
        self.try_add(rhs).expect("operands from different rings")
    }
}

impl<'a> Mul<&'a VPoly> for &'a VPoly {
    type Output = VPoly;
    fn mul(self, rhs: &'a VPoly) -> VPoly {
        self.try_mul(rhs).expect("operands from different rings")
    }
}

impl Neg for &VPoly {
    type Output = VPoly;
    fn neg(self) -> VPoly {
        VPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Sub<&'a VPoly> for &'a VPoly {
    type Output = VPoly;
    fn sub(self, rhs: &'a VPoly) -> VPoly {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_plus_p_divides_exactly() {
        let r = LocalRing::galois_ring(3, 2, 1).unwrap();
        let vp = VPoly::v_plus_p(&r);
        let u = VPoly::constant(r.from_int(4));
        let prod = &vp * &u;
        assert_eq!(prod.div_v_plus_p().unwrap(), u);
        assert!(VPoly::one(&r).div_v_plus_p().is_none());
        assert!(VPoly::v(&r).div_v_plus_p().is_none());
    }

    #[test]
    fn over_residue_field_v_plus_p_is_v() {
        let k = LocalRing::finite_field(3, 1).unwrap();
        assert_eq!(VPoly::v_plus_p(&k), VPoly::v(&k));
    }
}
