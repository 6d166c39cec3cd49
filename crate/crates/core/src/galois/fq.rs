//! Dense lookup tables for a small finite field, used by the conjugacy
//! enumeration where `RingElem` arithmetic would dominate the runtime.

use std::collections::HashMap;

use crate::arith::{Mat2, PrimeCtx, RingElem};

pub(crate) struct FqTables {
    pub q: usize,
    elems: Vec<RingElem>,
    index: HashMap<Vec<u64>, u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    pub zero: u16,
}

impl FqTables {
    pub fn new(ctx: &PrimeCtx) -> Self {
        let elems: Vec<RingElem> = ctx.field().elements().collect();
        let q = elems.len();
        let index: HashMap<Vec<u64>, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.coeffs().to_vec(), i as u16))
            .collect();
        let id = |e: &RingElem| index[e.coeffs()];
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                add[i * q + j] = id(&(x + y));
                mul[i * q + j] = id(&(x * y));
            }
        }
        let neg = elems.iter().map(|x| id(&-x)).collect();
        let zero = id(&ctx.field().zero());
        FqTables {
            q,
            elems,
            index,
            add,
            mul,
            neg,
            zero,
        }
    }

    pub fn id(&self, e: &RingElem) -> u16 {
        self.index[e.coeffs()]
    }

    pub fn mat(&self, m: &Mat2<RingElem>) -> [[u16; 2]; 2] {
        let e = m.entries();
        [
            [self.id(&e[0][0]), self.id(&e[0][1])],
            [self.id(&e[1][0]), self.id(&e[1][1])],
        ]
    }

    #[allow(dead_code)]
    pub fn elem(&self, i: u16) -> &RingElem {
        &self.elems[i as usize]
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    pub fn matmul(&self, x: &[[u16; 2]; 2], y: &[[u16; 2]; 2]) -> [[u16; 2]; 2] {
        let cell = |i: usize, j: usize| {
            self.add(self.mul(x[i][0], y[0][j]), self.mul(x[i][1], y[1][j]))
        };
        [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
    }

    pub fn scale(&self, c: u16, x: &[[u16; 2]; 2]) -> [[u16; 2]; 2] {
        [
            [self.mul(c, x[0][0]), self.mul(c, x[0][1])],
            [self.mul(c, x[1][0]), self.mul(c, x[1][1])],
        ]
    }

    pub fn det(&self, x: &[[u16; 2]; 2]) -> u16 {
        self.sub(self.mul(x[0][0], x[1][1]), self.mul(x[0][1], x[1][0]))
    }

    pub fn units(&self) -> impl Iterator<Item = u16> + '_ {
        (0..self.q as u16).filter(move |&i| i != self.zero)
    }
}
