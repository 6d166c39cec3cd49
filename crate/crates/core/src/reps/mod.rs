//! Isomorphism classes of non-supercuspidal mod-`p` representations of
//! `U(1,1)`, tracked as labels: classification, semisimplifications,
//! packets and the deformation criteria.

mod presentation;

pub use presentation::{Base, Expr, GenKind, Generator, RingPresentation};

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{ArithError, ExpRes, FieldElem, PrimeCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepsError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{what} {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("lambda must be a nonzero element of the session field")]
    BadLambda,
    #[error("presentation: {0}")]
    Parse(String),
}

fn check_range(what: &'static str, value: i64, lo: i64, hi: i64) -> Result<(), RepsError> {
    if value < lo || value > hi {
        return Err(RepsError::OutOfRange { what, value, lo, hi });
    }
    Ok(())
}

fn check_lambda(ctx: &PrimeCtx, lambda: &FieldElem) -> Result<(), RepsError> {
    if lambda.is_zero() || **lambda.ring() != **ctx.field() {
        return Err(RepsError::BadLambda);
    }
    Ok(())
}

/// The torus character `μ_λ ω^r`, with `r` mod `p² − 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TChar {
    r: ExpRes,
    lambda: FieldElem,
}

impl TChar {
    pub fn new(ctx: &PrimeCtx, r: i64, lambda: FieldElem) -> Result<Self, RepsError> {
        check_lambda(ctx, &lambda)?;
        Ok(TChar {
            r: ctx.exp(r),
            lambda,
        })
    }

    pub fn r(&self) -> ExpRes {
        self.r
    }

    pub fn lambda(&self) -> &FieldElem {
        &self.lambda
    }
}

impl fmt::Debug for TChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, λ={})", self.r, self.lambda)
    }
}

/// The character `ω^k ∘ det` of `G`, with `k` mod `p + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GChar {
    k: ExpRes,
}

impl GChar {
    pub fn new(ctx: &PrimeCtx, k: i64) -> Self {
        GChar {
            k: ExpRes::new(k, ctx.p() + 1),
        }
    }

    pub fn k(self) -> u64 {
        self.k.value()
    }
}

impl fmt::Debug for GChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)
    }
}

/// Label of an irreducible non-supercuspidal representation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NonSCFactor {
    Character(GChar),
    Special(GChar),
    /// Only for characters that do not extend to `G`.
    PrincipalSeries(TChar),
}

impl fmt::Debug for NonSCFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonSCFactor::Character(k) => write!(f, "Char({k:?})"),
            NonSCFactor::Special(k) => write!(f, "Sp({k:?})"),
            NonSCFactor::PrincipalSeries(c) => write!(f, "PS{c:?}"),
        }
    }
}

impl Serialize for NonSCFactor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NonSCFactor::Character(k) | NonSCFactor::Special(k) => {
                let mut st = s.serialize_struct("NonSCFactor", 2)?;
                let tag = if matches!(self, NonSCFactor::Character(_)) {
                    "character"
                } else {
                    "special"
                };
                st.serialize_field("type", tag)?;
                st.serialize_field("k", &k.k())?;
                st.end()
            }
            NonSCFactor::PrincipalSeries(c) => {
                let mut st = s.serialize_struct("NonSCFactor", 3)?;
                st.serialize_field("type", "ps")?;
                st.serialize_field("r", &c.r.value())?;
                st.serialize_field("lambda", &c.lambda)?;
                st.end()
            }
        }
    }
}

/// A semisimple representation as a sorted multiset of factor labels.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SemisimpleNonSC {
    factors: Vec<NonSCFactor>,
}

impl SemisimpleNonSC {
    pub fn new(mut factors: Vec<NonSCFactor>) -> Self {
        factors.sort();
        SemisimpleNonSC { factors }
    }

    pub fn factors(&self) -> &[NonSCFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn union(&self, other: &SemisimpleNonSC) -> SemisimpleNonSC {
        SemisimpleNonSC::new(self.factors.iter().chain(&other.factors).cloned().collect())
    }

    pub fn twist(&self, ctx: &PrimeCtx, k: i64) -> SemisimpleNonSC {
        SemisimpleNonSC::new(self.factors.iter().map(|f| twist_factor(ctx, f, k)).collect())
    }

    /// Multiplicity of a label.
    pub fn count(&self, f: &NonSCFactor) -> usize {
        self.factors.iter().filter(|g| *g == f).count()
    }
}

impl fmt::Debug for SemisimpleNonSC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.factors).finish()
    }
}

/// Index `(r, λ, k)` of the packet `Π(r, λ, k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PacketIndex {
    r: u64,
    lambda: FieldElem,
    k: u64,
}

impl PacketIndex {
    pub fn new(ctx: &PrimeCtx, r: i64, lambda: FieldElem, k: i64) -> Result<Self, RepsError> {
        let p = ctx.p() as i64;
        check_range("r", r, 0, p - 1)?;
        check_range("k", k, 0, p)?;
        check_lambda(ctx, &lambda)?;
        Ok(PacketIndex {
            r: r as u64,
            lambda,
            k: k as u64,
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn lambda(&self) -> &FieldElem {
        &self.lambda
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

impl fmt::Debug for PacketIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.lambda, self.k)
    }
}

impl Serialize for PacketIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PacketIndex", 3)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

/// Outcome of a deformation criterion. `OutsideCriterion` only says the
/// hypothesis fails; it claims nothing about the deformation functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformStatus {
    Isomorphism,
    OutsideCriterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedStructure {
    Irreducible,
    /// `ω^k ∘ det` as sub, `(ω^k ∘ det) ⊗ St` as quotient.
    ReducibleLength2 { sub: GChar, quotient_special: GChar },
}

/// Restriction of `ω^k ∘ det` to the torus: `ω^{k(1−p)}`, `λ = 1`.
pub fn restrict_det_char(ctx: &PrimeCtx, k: GChar) -> TChar {
    TChar {
        r: ctx.exp(k.k() as i64 * (1 - ctx.p() as i64)),
        lambda: ctx.one(),
    }
}

/// `Some(k)` when `chi` is the restriction of `ω^k ∘ det`.
#[allow(non_snake_case)]
pub fn extends_to_G(ctx: &PrimeCtx, chi: &TChar) -> Option<GChar> {
    if !chi.lambda.is_one() {
        return None;
    }
    let p = ctx.p();
    let r = chi.r.value();
    if r % (p - 1) != 0 {
        return None;
    }
    // r = m(p − 1) with 0 ≤ m ≤ p, and χ = ω^{−m} ∘ det
    let m = r / (p - 1);
    Some(GChar::new(ctx, -(m as i64)))
}

pub fn induced_structure(ctx: &PrimeCtx, chi: &TChar) -> InducedStructure {
    match extends_to_G(ctx, chi) {
        Some(k) => InducedStructure::ReducibleLength2 {
            sub: k,
            quotient_special: k,
        },
        None => InducedStructure::Irreducible,
    }
}

/// Tensor with `ω^k ∘ det`.
pub fn twist_factor(ctx: &PrimeCtx, f: &NonSCFactor, k: i64) -> NonSCFactor {
    let p = ctx.p() as i64;
    match f {
        NonSCFactor::Character(g) => NonSCFactor::Character(GChar::new(ctx, g.k() as i64 + k)),
        NonSCFactor::Special(g) => NonSCFactor::Special(GChar::new(ctx, g.k() as i64 + k)),
        NonSCFactor::PrincipalSeries(c) => {
            let shift = ExpRes::new(k, p as u64 + 1).as_i64() * (1 - p);
            NonSCFactor::PrincipalSeries(TChar {
                r: c.r.add_int(shift),
                lambda: c.lambda.clone(),
            })
        }
    }
}

/// Semisimplification of `Ind_B^G(χ)`.
pub fn ind_ss(ctx: &PrimeCtx, chi: &TChar) -> SemisimpleNonSC {
    match induced_structure(ctx, chi) {
        InducedStructure::Irreducible => {
            SemisimpleNonSC::new(vec![NonSCFactor::PrincipalSeries(chi.clone())])
        }
        InducedStructure::ReducibleLength2 {
            sub,
            quotient_special,
        } => SemisimpleNonSC::new(vec![
            NonSCFactor::Character(sub),
            NonSCFactor::Special(quotient_special),
        ]),
    }
}

/// `π(r, λ)`, the semisimplification of `Ind(μ_{λ⁻¹} ω^{−pr})`.
pub fn pi_ss(ctx: &PrimeCtx, r: i64, lambda: &FieldElem) -> Result<SemisimpleNonSC, RepsError> {
    let p = ctx.p() as i64;
    check_range("r", r, 0, p - 1)?;
    check_lambda(ctx, lambda)?;
    let chi = TChar {
        r: ctx.exp(-p * r),
        lambda: lambda.inverse()?,
    };
    Ok(ind_ss(ctx, &chi))
}

/// `Π(r, λ, k) = (ω^k ∘ det) ⊗ (π(r, λ) ⊕ (ω^{r+1} ∘ det) ⊗ π(p−1−r, λ⁻¹))`.
pub fn packet(ctx: &PrimeCtx, idx: &PacketIndex) -> Result<SemisimpleNonSC, RepsError> {
    let p = ctx.p() as i64;
    let r = idx.r as i64;
    let first = pi_ss(ctx, r, &idx.lambda)?;
    let second = pi_ss(ctx, p - 1 - r, &idx.lambda.inverse()?)?.twist(ctx, r + 1);
    Ok(first.union(&second).twist(ctx, idx.k as i64))
}

/// Every irreducible non-supercuspidal label once: characters, specials,
/// then irreducible principal series by `(r, λ)`.
pub fn classify_all(ctx: &PrimeCtx) -> Vec<NonSCFactor> {
    let p = ctx.p() as i64;
    let mut out: Vec<NonSCFactor> = (0..=p)
        .map(|k| NonSCFactor::Character(GChar::new(ctx, k)))
        .collect();
    out.extend((0..=p).map(|k| NonSCFactor::Special(GChar::new(ctx, k))));
    let lambdas = ctx.nonzero_elements();
    for r in 0..ctx.n() as i64 {
        for lambda in &lambdas {
            let chi = TChar {
                r: ctx.exp(r),
                lambda: lambda.clone(),
            };
            if extends_to_G(ctx, &chi).is_none() {
                out.push(NonSCFactor::PrincipalSeries(chi));
            }
        }
    }
    out
}

/// When deformations of `Ind(μ_λ ω^r)` are controlled by those of the character:
/// `λ ≠ ±1` or `p − 1 ∤ r − 1`.
pub fn hss_induction_status(ctx: &PrimeCtx, chi: &TChar) -> DeformStatus {
    let lambda_sq_ne_one = !(&chi.lambda * &chi.lambda).is_one();
    let p1 = ctx.p() - 1;
    let r_minus_one = (chi.r.value() + ctx.n() - 1) % ctx.n();
    if lambda_sq_ne_one || r_minus_one % p1 != 0 {
        DeformStatus::Isomorphism
    } else {
        DeformStatus::OutsideCriterion
    }
}

/// Norm-group form of the same hypothesis: `χ̄` differs from `ω` somewhere
/// on `N(Q_{p²}^×) = ⟨p²⟩ × Z_p^×`. Evaluated on `p²` (value `λ²`) and on
/// each Teichmüller unit `u` (value `u^r` against `u`).
pub fn hss_norm_oracle(ctx: &PrimeCtx, chi: &TChar) -> bool {
    if !(&chi.lambda * &chi.lambda).is_one() {
        return true;
    }
    let p = ctx.p();
    let r = chi.r.value();
    (1..p).any(|u| pow_mod(u, r, p) != u)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Deformations of twisted Steinberg representations are always controlled
/// by those of the twisting character.
pub fn steinberg_status(_eta: GChar) -> DeformStatus {
    DeformStatus::Isomorphism
}

/// Universal deformation ring of a smooth character of `T ≅ Q_{p²}^×`,
/// i.e. the completed group ring of the pro-`p` completion of `T`.
///
/// For odd `p` that completion is `Z_p × (1 + pZ_{p²}) ≅ Z_p³`: one
/// generator for the value at `p`, two for the principal units. For `p = 2`
/// the principal units carry a `±1` torsion factor, which contributes a
/// generator `Y` (the deformation `1 + Y` of the sign) with `(1 + Y)² = 1`.
pub fn universal_char_defring(ctx: &PrimeCtx) -> RingPresentation {
    let mut gens: Vec<Generator> = ["X1", "X2", "X3"]
        .iter()
        .map(|n| Generator {
            name: n.to_string(),
            kind: GenKind::Unrestricted,
        })
        .collect();
    let mut relations = Vec::new();
    if ctx.p() == 2 {
        gens.push(Generator {
            name: "Y".into(),
            kind: GenKind::MaximalIdeal,
        });
        relations.push("Y^2 + 2*Y".to_string());
    }
    RingPresentation::new(Base::OPowerSeries, gens, relations, (0, 0))
        .expect("fixed presentation parses")
}
