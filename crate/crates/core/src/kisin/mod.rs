//! Rank-two Kisin modules in gauge coordinates: the pair of partial
//! Frobenius matrices over `R[v]`, their shapes, the polarisation relation,
//! and the explicit deformation rings attached to each shape.

mod gauge;

pub use gauge::{
    check_polarisation, derive_seed, det_height_check, detect_shape, polarisation_partner,
    sample_gauge, validate_gauge, GaugeMatrix, GaugeSampler, KisinPair, Shape,
};

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, RingElem};
use crate::reps::{Base, GenKind, Generator, RingPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KisinError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("not in gauge form: {0}")]
    NotGauge(String),
    #[error("determinant is not a unit times (v + p)")]
    Height,
    #[error("no shape-w gauge matrix exists over {0}: no x, y in the maximal ideal with xy = -p")]
    Solvability(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

/// Extra formal variables on each side of the isomorphism between the
/// Galois deformation ring and the explicit ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisIsoNote {
    pub left_extra_vars: u32,
    pub right_extra_vars: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefRingMetadata {
    pub hodge_type: &'static str,
    pub multiplier: &'static str,
    pub potentially_crystalline: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefRingRecord {
    pub shape: Shape,
    pub presentation: RingPresentation,
    pub galois_iso_note: GaloisIsoNote,
    pub metadata: DefRingMetadata,
    /// What the isomorphism leaves undetermined.
    pub open_problem: &'static str,
}

const OPEN_PROBLEM: &str = "The isomorphism involves extra formal variables on both sides, so it \
does not pin down the Galois deformation ring itself; a presentation of that ring with no extra \
variables on the Galois side is not known.";

/// Explicit deformation ring of gauge-framed polarised deformations of a
/// module of the given shape. Generator names drop the `*` of the gauge
/// table; unit coefficients are marked by their kind instead.
pub fn explicit_defring(shape: Shape) -> DefRingRecord {
    let g = |name: &str, kind| Generator {
        name: name.into(),
        kind,
    };
    let (gens, relations) = match shape {
        Shape::T => (
            vec![
                g("c21", GenKind::Unrestricted),
                g("c11", GenKind::Unit),
                g("c22", GenKind::Unit),
            ],
            vec![],
        ),
        Shape::TPrime => (
            vec![
                g("c12", GenKind::Unrestricted),
                g("c11", GenKind::Unit),
                g("c22", GenKind::Unit),
            ],
            vec![],
        ),
        Shape::W => (
            vec![
                g("c11", GenKind::MaximalIdeal),
                g("c22", GenKind::MaximalIdeal),
                g("c12", GenKind::Unit),
                g("c21", GenKind::Unit),
            ],
            vec!["c11*c22 + p".to_string()],
        ),
    };
    let presentation =
        RingPresentation::new(Base::O, gens, relations, (2, 4)).expect("fixed presentation parses");
    DefRingRecord {
        shape,
        presentation,
        galois_iso_note: GaloisIsoNote {
            left_extra_vars: 2,
            right_extra_vars: 4,
        },
        metadata: DefRingMetadata {
            hodge_type: "(1,0,1)",
            multiplier: "cyclotomic",
            potentially_crystalline: true,
        },
        open_problem: OPEN_PROBLEM,
    }
}

/// Coefficients of a gauge matrix as a point of the explicit ring. For `𝔴`
/// the unit `c12*·c21*` is absorbed into `c11`, turning the gauge relation
/// `c11·c22 = −p·c12*·c21*` into `c11·c22 + p = 0`.
pub fn defring_point(g: &GaugeMatrix) -> Result<HashMap<String, RingElem>, KisinError> {
    let mut out: HashMap<String, RingElem> = g
        .coeffs()
        .iter()
        .map(|(k, v)| (k.trim_end_matches('*').to_string(), v.clone()))
        .collect();
    if g.shape() == Shape::W {
        let e = &out["c12"] * &out["c21"];
        let c11 = &out["c11"] * &e.inverse()?;
        out.insert("c11".into(), c11);
    }
    Ok(out)
}
