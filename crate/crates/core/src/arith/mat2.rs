use std::fmt::{self, Debug};

use serde::Serialize;

use super::ring::RingElem;
use super::vpoly::VPoly;
use super::ArithError;

/// Entries usable in a [`Mat2`]: elements of some commutative ring that know
/// which ring they belong to.
pub trait RingValue: Clone + PartialEq + Debug {
    fn same_ring(&self, other: &Self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingValue for RingElem {
    fn same_ring(&self, other: &Self) -> bool {
        RingElem::same_ring(self, other)
    }
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingValue for VPoly {
    fn same_ring(&self, other: &Self) -> bool {
        VPoly::same_ring(self, other)
    }
    fn zero_like(&self) -> Self {
        VPoly::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        VPoly::one(self.ring())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// A 2×2 matrix over a single coefficient ring, row-major.
#[derive(Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Mat2<T> {
    e: [[T; 2]; 2],
}

impl<T: RingValue> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self, ArithError> {
        if !(a.same_ring(&b) && a.same_ring(&c) && a.same_ring(&d)) {
            return Err(ArithError::RingMismatch);
        }
        Ok(Mat2 {
            e: [[a, b], [c, d]],
        })
    }

    pub fn diag(a: T, d: T) -> Result<Self, ArithError> {
        let z = a.zero_like();
        Self::new(a, z.clone(), z, d)
    }

    pub fn identity(like: &T) -> Self {
        Mat2 {
            e: [
                [like.one_like(), like.zero_like()],
                [like.zero_like(), like.one_like()],
            ],
        }
    }

    /// The antidiagonal `s = [[0,1],[1,0]]`.
    pub fn swap(like: &T) -> Self {
        Mat2 {
            e: [
                [like.zero_like(), like.one_like()],
                [like.one_like(), like.zero_like()],
            ],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[i][j]
    }

    pub fn entries(&self) -> &[[T; 2]; 2] {
        &self.e
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.e[0][0].same_ring(&other.e[0][0])
    }

    pub fn det(&self) -> T {
        self.e[0][0]
            .mul(&self.e[1][1])
            .sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    /// `adj(A)` with `adj(A)·A = A·adj(A) = det(A)·I`.
    pub fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = &self.e;
        Mat2 {
            e: [[d.clone(), b.neg()], [c.neg(), a.clone()]],
        }
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = &self.e;
        Mat2 {
            e: [[a.clone(), c.clone()], [b.clone(), d.clone()]],
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if !self.same_ring(other) {
            return Err(ArithError::RingMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let x = &self.e;
        let y = &o.e;
        let cell = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
        Mat2 {
            e: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        if !self.same_ring(other) {
            return Err(ArithError::RingMismatch);
        }
        let cell = |i: usize, j: usize| self.e[i][j].add(&other.e[i][j]);
        Ok(Mat2 {
            e: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        })
    }

    /// Scalar multiple `c·A`.
    pub fn scale(&self, c: &T) -> Self {
        let cell = |i: usize, j: usize| c.mul(&self.e[i][j]);
        Mat2 {
            e: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn map<U: RingValue>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2 {
            e: [
                [f(&self.e[0][0]), f(&self.e[0][1])],
                [f(&self.e[1][0]), f(&self.e[1][1])],
            ],
        }
    }

    /// `s·A·s`: swaps both rows and columns.
    pub fn conj_swap(&self) -> Self {
        let [[a, b], [c, d]] = &self.e;
        Mat2 {
            e: [[d.clone(), c.clone()], [b.clone(), a.clone()]],
        }
    }

    pub fn is_scalar(&self, c: &T) -> bool {
        self.e[0][0] == *c
            && self.e[1][1] == *c
            && self.e[0][1] == c.zero_like()
            && self.e[1][0] == c.zero_like()
    }
}

impl Mat2<RingElem> {
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let d = self.det().inverse()?;
        Ok(self.adjugate().scale(&d))
    }
}

impl<T: Debug> Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}
