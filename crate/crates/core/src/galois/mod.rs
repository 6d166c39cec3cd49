//! C-parameters and Langlands parameters as finite tame data.
//!
//! Every parameter here is tamely ramified of level dividing `p² − 1`, so it
//! is determined by its values on a Frobenius and on a tame inertia
//! generator. Inertia values are diagonal and stored as exponents of the
//! fundamental character `ω₂`; equalities of characters become congruences
//! mod `p² − 1`. The C-group is modelled as `GL₂ × G_m` with Frobenius acting
//! by `(G, b) ↦ (b det(G)⁻¹ G, b)`.

mod correspond;
mod fq;
mod params;
mod types;

pub use correspond::{
    base_change, packets_for_param, param_for_packet, polarisation_of, verify_polarisation,
    Multiplier, TameRep2,
};
pub use params::{
    cparam_equiv_bruteforce, cparam_equiv_bruteforce_unfiltered, cparam_equiv_fast,
    cparam_partner_r, literal_rule_discrepancies, lparam_equiv, CParamNS, LParam, TameCParam,
    BRUTEFORCE_LIMIT,
};
pub use types::{
    c_inertia, embedding_values, n_generic_witness, orientation, ps_is_n_generic, tau_w,
    weyl_triviality_check, CInertialType, GenericWitness, Orientation, PSInertialType,
    WeylViolation, Weyl, W2,
};

use thiserror::Error;

use crate::arith::{ArithError, FieldElem, PrimeCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("lambda must be a nonzero element of the session field")]
    BadLambda,
    #[error("field of size {field_size} too large for conjugacy enumeration")]
    Capacity { field_size: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

fn check_lambda(ctx: &PrimeCtx, lambda: &FieldElem) -> Result<(), GaloisError> {
    if lambda.is_zero() || **lambda.ring() != **ctx.field() {
        return Err(GaloisError::BadLambda);
    }
    Ok(())
}
