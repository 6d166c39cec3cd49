//! Finite local rings `(Z/p^m)[x]/(g)` and their elements.
//!
//! The family covers `F_{p^f}` (`m = 1`, `g` irreducible), Galois rings
//! `GR(p^m, f)` (`g` irreducible mod `p`) and ramified models such as
//! `(Z/p²)[ϖ]/(ϖ² − p)`. Locality is checked at construction: `g mod p` must
//! be a power of one irreducible `h`, so the maximal ideal is `(p, h(x))` and
//! the residue field is `F_p[x]/(h)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly;
use super::prime::is_prime;
use super::ArithError;

/// Serializable ring descriptor `{p, m, modulus}`; `modulus` is
/// little-endian with the leading 1 included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalRing {
    p: u64,
    m: u32,
    /// `p^m`
    q: u64,
    /// Monic, reduced mod `q`, little-endian.
    modulus: Vec<u64>,
    /// Monic irreducible `h` over `F_p` with `g ≡ h^e (mod p)`.
    residue_poly: Vec<u64>,
    ramification: u32,
    max_ideal_gens: Vec<Vec<u64>>,
}

impl LocalRing {
    /// Validates and builds `(Z/p^m)[x]/(modulus)`.
    pub fn new(p: u64, m: u32, modulus: &[i64]) -> Result<Arc<Self>, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if m == 0 {
            return Err(ArithError::Domain("nilpotency exponent m must be >= 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q < (1 << 31))
            .ok_or_else(|| ArithError::Domain("p^m too large".into()))?;
        if modulus.len() < 2 {
            return Err(ArithError::InvalidModulus("degree must be at least 1".into()));
        }
        let g: Vec<u64> = modulus
            .iter()
            .map(|&c| (((c as i128) % q as i128 + q as i128) % q as i128) as u64)
            .collect();
        if *g.last().unwrap() != 1 {
            return Err(ArithError::InvalidModulus("modulus must be monic".into()));
        }
        let gbar: Vec<u64> = g.iter().map(|&c| c % p).collect();
        let h = poly::smallest_factor(&gbar, p);
        let mut rest = gbar.clone();
        let mut e = 0u32;
        while rest.len() > 1 {
            match poly::div_exact_monic(&rest, &h, p) {
                Some(quot) => {
                    rest = quot;
                    e += 1;
                }
                None => return Err(ArithError::NotLocal),
            }
        }
        let d = g.len() - 1;
        let mut h_full = h.clone();
        h_full.resize(d, 0);
        let mut p_elem = vec![0u64; d];
        p_elem[0] = p % q;
        // (p, h) is principal when one generator already lies in the ideal of
        // the other; record both otherwise.
        let max_ideal_gens = if e == 1 {
            vec![p_elem]
        } else if m == 1 {
            vec![h_full]
        } else {
            vec![h_full, p_elem]
        };
        let ring = Arc::new(LocalRing {
            p,
            m,
            q,
            modulus: g,
            residue_poly: h,
            ramification: e,
            max_ideal_gens,
        });
        if ring.max_ideal_gens.len() == 2 && ring.size() <= 1 << 16 {
            // p ∈ (h) makes h alone a generator
            let gens = ring.max_ideal_gens();
            if ring.elements().any(|x| &gens[0] * &x == gens[1]) {
                let mut single = LocalRing::clone(&ring);
                single.max_ideal_gens.truncate(1);
                return Ok(Arc::new(single));
            }
        }
        Ok(ring)
    }

    /// `F_{p^f}` over the lexicographically smallest irreducible modulus.
    pub fn finite_field(p: u64, f: u32) -> Result<Arc<Self>, ArithError> {
        Self::galois_ring(p, 1, f)
    }

    /// `GR(p^m, f)` over the lexicographically smallest modulus irreducible
    /// mod `p`.
    pub fn galois_ring(p: u64, m: u32, f: u32) -> Result<Arc<Self>, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if f == 0 {
            return Err(ArithError::Domain("extension degree f must be >= 1".into()));
        }
        let g = poly::monic_of_degree(p, f as usize)
            .find(|g| poly::is_irreducible(g, p))
            .expect("irreducible polynomials exist in every degree");
        let g: Vec<i64> = g.into_iter().map(|c| c as i64).collect();
        Self::new(p, m, &g)
    }

    /// `(Z/p^m)[ϖ]/(ϖ^e − p)`, a totally ramified model.
    pub fn eisenstein(p: u64, m: u32, e: u32) -> Result<Arc<Self>, ArithError> {
        let mut g = vec![0i64; e as usize + 1];
        g[0] = -(p as i64);
        g[e as usize] = 1;
        Self::new(p, m, &g)
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    pub fn from_descriptor(d: &RingDescriptor) -> Result<Arc<Self>, ArithError> {
        let g: Vec<i64> = d.modulus.iter().map(|&c| c as i64).collect();
        Self::new(d.p, d.m, &g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Characteristic `p^m`.
    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn residue_poly(&self) -> &[u64] {
        &self.residue_poly
    }

    /// Residue degree `f` with residue field `F_{p^f}`.
    pub fn residue_degree(&self) -> usize {
        self.residue_poly.len() - 1
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn is_field(&self) -> bool {
        self.m == 1 && self.ramification == 1
    }

    pub fn size(&self) -> u64 {
        self.q.pow(self.degree() as u32)
    }

    pub fn max_ideal_gens(self: &Arc<Self>) -> Vec<RingElem> {
        self.max_ideal_gens
            .iter()
            .map(|c| RingElem::new_unchecked(self.clone(), c.clone()))
            .collect()
    }

    pub fn zero(self: &Arc<Self>) -> RingElem {
        RingElem::new_unchecked(self.clone(), vec![0; self.degree()])
    }

    pub fn one(self: &Arc<Self>) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, c: i64) -> RingElem {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = self.reduce_int(c);
        RingElem::new_unchecked(self.clone(), coeffs)
    }

    /// The class of `x`.
    pub fn gen(self: &Arc<Self>) -> RingElem {
        let mut coeffs = vec![0u64; self.degree() + 1];
        coeffs[1] = 1;
        let c = self.reduce_poly(&coeffs);
        RingElem::new_unchecked(self.clone(), c)
    }

    /// Element from little-endian integer coefficients; reduced modulo `g`.
    pub fn elem(self: &Arc<Self>, coeffs: &[i64]) -> Result<RingElem, ArithError> {
        let c: Vec<u64> = coeffs.iter().map(|&c| self.reduce_int(c)).collect();
        Ok(RingElem::new_unchecked(self.clone(), self.reduce_poly(&c)))
    }

    fn reduce_int(&self, c: i64) -> u64 {
        let q = self.q as i128;
        (((c as i128) % q + q) % q) as u64
    }

    fn reduce_poly(&self, c: &[u64]) -> Vec<u64> {
        let mut r = poly::rem_monic(c, &self.modulus, self.q);
        r.resize(self.degree(), 0);
        r
    }

    /// Every element, in lexicographic order of coefficient sequences.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = RingElem> + '_ {
        let d = self.degree();
        let q = self.q;
        (0..self.size()).map(move |mut i| {
            let mut coeffs = vec![0u64; d];
            for j in (0..d).rev() {
                coeffs[j] = i % q;
                i /= q;
            }
            RingElem::new_unchecked(self.clone(), coeffs)
        })
    }

    /// Elements of the maximal ideal (residue image zero).
    pub fn max_ideal_elements(self: &Arc<Self>) -> Vec<RingElem> {
        self.elements().filter(|e| !e.is_unit()).collect()
    }

    pub fn random<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> RingElem {
        let coeffs = (0..self.degree()).map(|_| rng.gen_range(0..self.q)).collect();
        RingElem::new_unchecked(self.clone(), coeffs)
    }

    pub fn random_unit<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> RingElem {
        loop {
            let e = self.random(rng);
            if e.is_unit() {
                return e;
            }
        }
    }

    pub fn random_nonunit<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> RingElem {
        // residue zero plus an arbitrary multiple of a maximal-ideal generator
        let gens = self.max_ideal_gens();
        let mut acc = self.zero();
        for g in &gens {
            acc = &acc + &(g * &self.random(rng));
        }
        acc
    }

    /// The residue field `F_p[x]/(h)` as a ring of the same family.
    pub fn residue_field(&self) -> Arc<LocalRing> {
        let h: Vec<i64> = self.residue_poly.iter().map(|&c| c as i64).collect();
        LocalRing::new(self.p, 1, &h).expect("residue polynomial is irreducible")
    }

    /// Image in the residue field, as raw coefficients mod `(p, h)`.
    fn residue_coeffs(&self, coeffs: &[u64]) -> Vec<u64> {
        let c: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        poly::rem_monic(&c, &self.residue_poly, self.p)
    }

    fn residue_inverse(&self, coeffs: &[u64]) -> Vec<u64> {
        // a^(|k| - 2) in the residue field k = F_p[x]/(h)
        let p = self.p;
        let h = &self.residue_poly;
        let k_size = p.pow((h.len() - 1) as u32);
        let mut base = self.residue_coeffs(coeffs);
        let mut acc = vec![1u64];
        let mut e = k_size - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly::rem_monic(&poly::mul(&acc, &base, p), h, p);
            }
            base = poly::rem_monic(&poly::mul(&base, &base, p), h, p);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{}^{})[x]/({:?})", self.p, self.m, self.modulus)
    }
}

/// An element of a [`LocalRing`]; coefficients have fixed length `deg g`.
#[derive(Clone)]
pub struct RingElem {
    ring: Arc<LocalRing>,
    coeffs: Vec<u64>,
}

/// Elements of `F_{p^f}` are elements of a ring with `m = 1`.
pub type FieldElem = RingElem;

impl RingElem {
    fn new_unchecked(ring: Arc<LocalRing>, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), ring.degree());
        RingElem { ring, coeffs }
    }

    pub fn ring(&self) -> &Arc<LocalRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn same_ring(&self, other: &RingElem) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check(&self, other: &RingElem) -> Result<(), ArithError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(ArithError::RingMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Unit iff the residue-field image is nonzero.
    pub fn is_unit(&self) -> bool {
        !self.ring.residue_coeffs(&self.coeffs).is_empty()
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem, ArithError> {
        self.check(other)?;
        let q = self.ring.q;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        Ok(RingElem::new_unchecked(self.ring.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem, ArithError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem, ArithError> {
        self.check(other)?;
        let prod = poly::mul(&self.coeffs, &other.coeffs, self.ring.q);
        Ok(RingElem::new_unchecked(
            self.ring.clone(),
            self.ring.reduce_poly(&prod),
        ))
    }

    fn neg_ref(&self) -> RingElem {
        let q = self.ring.q;
        let coeffs = self.coeffs.iter().map(|&c| (q - c) % q).collect();
        RingElem::new_unchecked(self.ring.clone(), coeffs)
    }

    pub fn scale_int(&self, k: i64) -> RingElem {
        self * &self.ring.from_int(k)
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Inverse by Newton lifting of the residue-field inverse.
    pub fn inverse(&self) -> Result<RingElem, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::NotUnit);
        }
        let mut y0 = self.ring.residue_inverse(&self.coeffs);
        y0.resize(self.ring.degree(), 0);
        let mut y = RingElem::new_unchecked(self.ring.clone(), y0);
        let two = self.ring.from_int(2);
        // 1 − e·y squares at each step and the maximal ideal is nilpotent.
        for _ in 0..64 {
            let ey = self * &y;
            if ey.is_one() {
                return Ok(y);
            }
            y = &y * &(&two - &ey);
        }
        Err(ArithError::Domain("Newton lifting did not converge".into()))
    }

    /// Image in [`LocalRing::residue_field`].
    pub fn residue(&self) -> RingElem {
        let k = self.ring.residue_field();
        let mut c = self.ring.residue_coeffs(&self.coeffs);
        c.resize(k.degree(), 0);
        RingElem::new_unchecked(k, c)
    }

    /// Image of the coefficient-wise reduction mod `p` in a ring whose
    /// modulus is `g mod p`; used for the `p ↦ 0` specialisation.
    pub fn reduce_mod_p(&self) -> RingElem {
        let g: Vec<i64> = self
            .ring
            .modulus
            .iter()
            .map(|&c| (c % self.ring.p) as i64)
            .collect();
        let target = LocalRing::new(self.ring.p, 1, &g).expect("reduction of a local ring is local");
        let c: Vec<i64> = self.coeffs.iter().map(|&c| (c % self.ring.p) as i64).collect();
        target.elem(&c).expect("coefficients are in range")
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_ring(other)
    }
}

impl Eq for RingElem {}

impl Hash for RingElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coefficient sequences.
impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a RingElem> for &'a RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &'a RingElem) -> RingElem {
                self.$try(rhs).expect("operands from different rings")
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$try(&rhs).expect("operands from different rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_ref()
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_ref()
    }
}
