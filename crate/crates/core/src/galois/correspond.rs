//! The semisimple correspondence with packets, base change to the
//! index-two subgroup, and polarisations.

use serde::Serialize;

use crate::arith::{ExpRes, FieldElem, Mat2, PrimeCtx};
use crate::reps::PacketIndex;

use super::params::CParamNS;
use super::GaloisError;

/// `Π(r, λ, k) ↦ ψ̃_{(r−1)+(1−p)k, λ}`.
pub fn param_for_packet(ctx: &PrimeCtx, idx: &PacketIndex) -> CParamNS {
    let p = ctx.p() as i64;
    let r = idx.r() as i64 - 1 + (1 - p) * idx.k() as i64;
    CParamNS::new(ctx, r, idx.lambda().clone()).expect("packet λ is valid")
}

/// All packet indices mapping to `param`, ordered by `(k, r)`.
pub fn packets_for_param(ctx: &PrimeCtx, param: &CParamNS) -> Vec<PacketIndex> {
    let p = ctx.p() as i64;
    let mut out = Vec::new();
    for k in 0..=p {
        for r in 0..p {
            if ctx.exp(r - 1 + (1 - p) * k) == param.r() {
                out.push(
                    PacketIndex::new(ctx, r, param.lambda().clone(), k)
                        .expect("indices are in range"),
                );
            }
        }
    }
    out
}

/// Restriction of a C-parameter to the unramified quadratic extension:
/// the `GL₂` value on `Frob²`, the inertia exponents, and the multiplier.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TameRep2 {
    pub frob2_gl2: Mat2<FieldElem>,
    pub inertia_exponents: [u64; 2],
}

/// Multiplier character, by its value on Frobenius and its inertia exponent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Multiplier {
    pub frob: FieldElem,
    pub inertia_exponent: u64,
}

impl Multiplier {
    /// `θ(Frob) = 1`, `θ|_I = ω^{p+1}`.
    pub fn cyclotomic(ctx: &PrimeCtx) -> Self {
        Multiplier {
            frob: ctx.one(),
            inertia_exponent: ctx.p() + 1,
        }
    }
}

/// `ψ̃(Frob)² = (A · det(A)⁻¹ A, 1) Frob²`, so the `GL₂` part is
/// `det(A)⁻¹ A² = diag(λ⁻¹, λ)` for `A = diag(1, λ)`.
pub fn base_change(ctx: &PrimeCtx, param: &CParamNS) -> (TameRep2, Multiplier) {
    let a = param.frob_gl2(ctx);
    let det_inv = a.det().inverse().expect("Frobenius image is invertible");
    let frob2 = a.try_mul(&a).expect("same field").scale(&det_inv);
    let [e1, e2] = param.inertia_gl2_exponents(ctx);
    let rep = TameRep2 {
        frob2_gl2: frob2,
        inertia_exponents: [e1.value(), e2.value()],
    };
    (rep, Multiplier::cyclotomic(ctx))
}

/// `α = [[0, −1], [1, 0]] · A⁻¹` with `A = diag(1, λ)`.
pub fn polarisation_of(ctx: &PrimeCtx, param: &CParamNS) -> Mat2<FieldElem> {
    let j = Mat2::new(ctx.int(0), ctx.int(-1), ctx.one(), ctx.int(0)).expect("same field");
    let a_inv = param.frob_gl2(ctx).inverse().expect("invertible");
    j.try_mul(&a_inv).expect("same field")
}

/// Checks that `α` is a polarisation of `rho2` with multiplier `theta`, on
/// the generators `Frob²` and a tame inertia generator:
///
/// * inertia: `α` intertwines the exponents `p·e` with `g − e`
///   (`g` the multiplier exponent), entrywise;
/// * `Frob²`: `α F = θ(Frob)² F^{−T} α`;
/// * the composite `α^{−T} α F` is `−θ(Frob)` times the identity.
pub fn verify_polarisation(
    ctx: &PrimeCtx,
    rho2: &TameRep2,
    theta: &Multiplier,
    alpha: &Mat2<FieldElem>,
) -> Result<bool, GaloisError> {
    let field = ctx.field();
    let in_field = |m: &Mat2<FieldElem>| m.entries().iter().flatten().all(|e| **e.ring() == **field);
    if !in_field(alpha) || !in_field(&rho2.frob2_gl2) || **theta.frob.ring() != **field {
        return Err(GaloisError::Mismatch("data over different fields".into()));
    }
    let Ok(alpha_inv) = alpha.inverse() else {
        return Ok(false);
    };
    let p = ctx.p() as i64;
    let g = ctx.exp(theta.inertia_exponent as i64);
    let e: Vec<ExpRes> = rho2.inertia_exponents.iter().map(|&x| ctx.exp(x as i64)).collect();
    let inertia_ok = (0..2).all(|i| {
        (0..2).all(|j| {
            alpha.get(i, j).is_zero() || e[j].mul_int(p) == g.add_int(-e[i].as_i64())
        })
    });
    if !inertia_ok {
        return Ok(false);
    }
    let f = &rho2.frob2_gl2;
    let f_inv_t = f.inverse()?.transpose();
    let t2 = &theta.frob * &theta.frob;
    let lhs = alpha.try_mul(f)?;
    let rhs = f_inv_t.try_mul(alpha)?.scale(&t2);
    if lhs != rhs {
        return Ok(false);
    }
    let composite = alpha_inv.transpose().try_mul(alpha)?.try_mul(f)?;
    Ok(composite.is_scalar(&-&theta.frob))
}
