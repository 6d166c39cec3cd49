//! Inertial types: principal-series types `τ_{a,b}`, C-valued types
//! `τ_w(a, b)`, genericity and orientation.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{p_digits, ExpRes, PrimeCtx};

use super::params::CParamNS;
use super::GaloisError;

/// Weyl group element labelling a C-valued type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weyl {
    One,
    S0,
}

impl Serialize for Weyl {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Weyl::One => "1",
            Weyl::S0 => "s0",
        })
    }
}

/// Restriction of a C-parameter to inertia: two `GL₂` exponents (unordered)
/// and the `G_m` exponent, all mod `p² − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CInertialType {
    gl2: [ExpRes; 2],
    gm: ExpRes,
}

impl CInertialType {
    pub fn new(ctx: &PrimeCtx, e1: i64, e2: i64, gm: i64) -> Self {
        let mut gl2 = [ctx.exp(e1), ctx.exp(e2)];
        gl2.sort();
        CInertialType {
            gl2,
            gm: ctx.exp(gm),
        }
    }

    /// Sorted.
    pub fn gl2_exponents(&self) -> [u64; 2] {
        [self.gl2[0].value(), self.gl2[1].value()]
    }

    pub fn gm_exponent(&self) -> u64 {
        self.gm.value()
    }
}

impl fmt::Debug for CInertialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}} gm={}", self.gl2[0], self.gl2[1], self.gm)
    }
}

impl Serialize for CInertialType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CInertialType", 2)?;
        st.serialize_field("exponents", &self.gl2_exponents())?;
        st.serialize_field("gm", &self.gm.value())?;
        st.end()
    }
}

/// `{p + 1 + r, −pr}` with `G_m` exponent `p + 1`.
pub fn c_inertia(ctx: &PrimeCtx, param: &CParamNS) -> CInertialType {
    let [e1, e2] = param.inertia_gl2_exponents(ctx);
    CInertialType {
        gl2: [e1, e2],
        gm: param.inertia_gm_exponent(ctx),
    }
}

pub fn tau_w(ctx: &PrimeCtx, w: Weyl, a: i64, b: i64) -> CInertialType {
    let p = ctx.p() as i64;
    let gm = p + 1;
    match w {
        Weyl::One => CInertialType::new(ctx, a + 1 + p * (1 - b), b - p * a, gm),
        Weyl::S0 => CInertialType::new(ctx, a + 1 - p * a, b + p * (1 - b), gm),
    }
}

/// Witness `(w, a, b)` for `n`-genericity of a C-parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenericWitness {
    pub w: Weyl,
    pub a: i64,
    pub b: i64,
}

/// `a = 0, −1, 1, −2, 2, …` within `[−(p² − 2), p² − 2]`.
fn a_window(ctx: &PrimeCtx) -> impl Iterator<Item = i64> {
    let hi = ctx.n() as i64 - 1;
    std::iter::once(0).chain((1..=hi).flat_map(|m| [-m, m]))
}

fn witness_for(ctx: &PrimeCtx, target: &CInertialType, n: u64, w: Weyl) -> Option<GenericWitness> {
    let p = ctx.p() as i64;
    let n = n as i64;
    for a in a_window(ctx) {
        // c = a − b + 1 strictly between n and p − n
        for c in (n + 1)..(p - n) {
            let b = a + 1 - c;
            if tau_w(ctx, w, a, b) == *target {
                return Some(GenericWitness { w, a, b });
            }
        }
    }
    None
}

/// First witness in the fixed search order: `w = 1` before `s₀`, then `a` by
/// absolute value (negative first), then `c = a − b + 1` ascending.
pub fn n_generic_witness(ctx: &PrimeCtx, param: &CParamNS, n: u64) -> Option<GenericWitness> {
    let target = c_inertia(ctx, param);
    witness_for(ctx, &target, n, Weyl::One).or_else(|| witness_for(ctx, &target, n, Weyl::S0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeylViolation {
    pub r: u64,
    pub s0_witness: GenericWitness,
}

/// Parameters that are `n`-generic only through an `s₀`-type witness.
/// The parameter's `λ` plays no role, so `r` runs over `[0, p² − 2]`.
pub fn weyl_triviality_check(ctx: &PrimeCtx, n: u64) -> Vec<WeylViolation> {
    let mut out = Vec::new();
    for r in 0..ctx.n() as i64 {
        let param = CParamNS::new(ctx, r, ctx.one()).expect("1 is a valid λ");
        let target = c_inertia(ctx, &param);
        if witness_for(ctx, &target, n, Weyl::One).is_some() {
            continue;
        }
        if let Some(w) = witness_for(ctx, &target, n, Weyl::S0) {
            out.push(WeylViolation {
                r: r as u64,
                s0_witness: w,
            });
        }
    }
    out
}

/// `τ_{a,b} = ω̃₂^a ⊕ ω̃₂^b`, exponents mod `p² − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PSInertialType {
    a: ExpRes,
    b: ExpRes,
}

impl PSInertialType {
    pub fn new(ctx: &PrimeCtx, a: i64, b: i64) -> Self {
        PSInertialType {
            a: ctx.exp(a),
            b: ctx.exp(b),
        }
    }

    pub fn a(&self) -> ExpRes {
        self.a
    }

    pub fn b(&self) -> ExpRes {
        self.b
    }

    /// `a ≢ b`; recorded, not enforced.
    pub fn is_principal_series(&self) -> bool {
        self.a != self.b
    }

    pub fn dual(&self) -> Self {
        PSInertialType {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    /// Twist by Frobenius: exponents times `p` (`p⁻¹ ≡ p`).
    pub fn frob_twist(&self, ctx: &PrimeCtx) -> Self {
        let p = ctx.p() as i64;
        PSInertialType {
            a: self.a.mul_int(p),
            b: self.b.mul_int(p),
        }
    }

    pub fn same_multiset(&self, other: &Self) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }

    /// Frobenius twist isomorphic to the dual.
    pub fn is_ftsd(&self, ctx: &PrimeCtx) -> bool {
        self.frob_twist(ctx).same_multiset(&self.dual())
    }
}

impl fmt::Debug for PSInertialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ({}, {})", self.a, self.b)
    }
}

/// Base-`p` digits of `−x` normalised into `[0, p² − 2]`.
fn neg_digits(ctx: &PrimeCtx, x: i64) -> (i64, i64) {
    let v = ctx.exp(-x).as_i64();
    let (d0, d1) = p_digits(v, ctx.p()).expect("normalised residue is in range");
    (d0 as i64, d1 as i64)
}

/// `n < |a_i − b_i| < p − n` for both digits of `−a`, `−b`.
pub fn ps_is_n_generic(ctx: &PrimeCtx, a: i64, b: i64, n: u64) -> bool {
    let p = ctx.p() as i64;
    let n = n as i64;
    let (a0, a1) = neg_digits(ctx, a);
    let (b0, b1) = neg_digits(ctx, b);
    [(a0, b0), (a1, b1)].iter().all(|&(x, y)| {
        let gap = (x - y).abs();
        n < gap && gap < p - n
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum W2 {
    Id,
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    pub w0: W2,
    pub w1: W2,
}

/// The two embedding-wise values `𝐚⁽⁰⁾ = a₀ + p·a₁` and `𝐚⁽¹⁾ = a₁ + p·a₀`
/// of the digits of `−a`.
pub fn embedding_values(ctx: &PrimeCtx, a: i64) -> [i64; 2] {
    let p = ctx.p() as i64;
    let (d0, d1) = neg_digits(ctx, a);
    [d0 + p * d1, d1 + p * d0]
}

/// `w_i = id` when the `a`-character is strictly larger at embedding `i`.
/// Ties leave the orientation undefined and are rejected.
pub fn orientation(ctx: &PrimeCtx, a: i64, b: i64) -> Result<Orientation, GaloisError> {
    let va = embedding_values(ctx, a);
    let vb = embedding_values(ctx, b);
    let pick = |i: usize| -> Result<W2, GaloisError> {
        match va[i].cmp(&vb[i]) {
            std::cmp::Ordering::Greater => Ok(W2::Id),
            std::cmp::Ordering::Less => Ok(W2::S),
            std::cmp::Ordering::Equal => Err(GaloisError::Precondition(format!(
                "orientation tie at embedding {i}"
            ))),
        }
    };
    Ok(Orientation {
        w0: pick(0)?,
        w1: pick(1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeCtx {
        PrimeCtx::new(p, 1).unwrap()
    }

    fn param(c: &PrimeCtx, r: i64) -> CParamNS {
        CParamNS::new(c, r, c.one()).unwrap()
    }

    #[test]
    fn c_inertia_examples() {
        let c3 = ctx(3);
        let t = c_inertia(&c3, &param(&c3, 0));
        assert_eq!((t.gl2_exponents(), t.gm_exponent()), ([0, 4], 4));
        let t = c_inertia(&c3, &param(&c3, 7));
        assert_eq!((t.gl2_exponents(), t.gm_exponent()), ([3, 3], 4));
        let c5 = ctx(5);
        let t = c_inertia(&c5, &param(&c5, 0));
        assert_eq!((t.gl2_exponents(), t.gm_exponent()), ([0, 6], 6));
    }

    #[test]
    fn tau_w_examples() {
        let c3 = ctx(3);
        assert_eq!(tau_w(&c3, Weyl::One, 1, 0), CInertialType::new(&c3, 5, 5, 4));
        assert_eq!(tau_w(&c3, Weyl::S0, 1, 0), CInertialType::new(&c3, 7, 3, 4));
        let c5 = ctx(5);
        assert_eq!(tau_w(&c5, Weyl::One, 0, 0), CInertialType::new(&c5, 6, 0, 6));
    }

    #[test]
    fn witness_examples() {
        let c5 = ctx(5);
        let p0 = param(&c5, 0);
        assert_eq!(
            n_generic_witness(&c5, &p0, 1),
            Some(GenericWitness {
                w: Weyl::One,
                a: -2,
                b: -4
            })
        );
        assert_eq!(n_generic_witness(&c5, &p0, 2), None);
        assert_eq!(
            n_generic_witness(&c5, &p0, 0),
            Some(GenericWitness {
                w: Weyl::One,
                a: 0,
                b: 0
            })
        );
    }

    #[test]
    fn weyl_examples() {
        for (p, n) in [(5, 0), (7, 1), (3, 0)] {
            assert!(weyl_triviality_check(&ctx(p), n).is_empty());
        }
    }

    #[test]
    fn ftsd_examples() {
        let c3 = ctx(3);
        assert!(PSInertialType::new(&c3, 1, 5).is_ftsd(&c3));
        assert!(PSInertialType::new(&c3, 2, 4).is_ftsd(&c3));
        assert!(!PSInertialType::new(&c3, 1, 2).is_ftsd(&c3));
        let t = PSInertialType::new(&c3, 1, 2);
        assert_eq!(t.dual(), PSInertialType::new(&c3, 7, 6));
        assert_eq!(t.frob_twist(&c3), PSInertialType::new(&c3, 3, 6));
    }

    #[test]
    fn genericity_examples() {
        let c7 = ctx(7);
        assert!(ps_is_n_generic(&c7, -20, -10, 0));
        assert!(!ps_is_n_generic(&c7, -20, -10, 1));
        let c5 = ctx(5);
        assert!(ps_is_n_generic(&c5, -7, -19, 1));
        for a in -30..30 {
            assert!(!ps_is_n_generic(&c5, a, a, 0));
        }
    }

    #[test]
    fn orientation_examples() {
        let c7 = ctx(7);
        let o = |a, b| orientation(&c7, a, b).unwrap();
        assert_eq!(o(-20, -10), Orientation { w0: W2::Id, w1: W2::Id });
        assert_eq!(o(-20, -26), Orientation { w0: W2::S, w1: W2::Id });
        assert_eq!(o(-26, -20), Orientation { w0: W2::Id, w1: W2::S });
        assert!(orientation(&c7, -20, -20).is_err());
    }
}
