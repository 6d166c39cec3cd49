//! Langlands and C-parameters as tame data, and their equivalence.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{ExpRes, FieldElem, Mat2, PrimeCtx};

use super::fq::FqTables;
use super::{check_lambda, GaloisError};

/// Largest `|F_q|^4` the conjugacy enumeration accepts.
pub const BRUTEFORCE_LIMIT: u64 = 10_000_000;

macro_rules! r_lambda_param {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            r: ExpRes,
            lambda: FieldElem,
        }

        impl $name {
            pub fn new(ctx: &PrimeCtx, r: i64, lambda: FieldElem) -> Result<Self, GaloisError> {
                check_lambda(ctx, &lambda)?;
                Ok($name {
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

            /// Every parameter of the session, by `r` then `λ`.
            pub fn all(ctx: &PrimeCtx) -> Vec<Self> {
                let lambdas = ctx.nonzero_elements();
                (0..ctx.n() as i64)
                    .flat_map(|r| {
                        lambdas.iter().map(move |l| $name {
                            r: ctx.exp(r),
                            lambda: l.clone(),
                        })
                    })
                    .collect()
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({}, {})", stringify!($name), self.r, self.lambda)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct(stringify!($name), 2)?;
                st.serialize_field("r", &self.r.value())?;
                st.serialize_field("lambda", &self.lambda)?;
                st.end()
            }
        }
    };
}

r_lambda_param!(LParam);
r_lambda_param!(CParamNS);

impl CParamNS {
    /// `{p + 1 + r, −pr}`, sorted.
    pub fn inertia_gl2_exponents(&self, ctx: &PrimeCtx) -> [ExpRes; 2] {
        let p = ctx.p() as i64;
        let mut e = [self.r.add_int(p + 1), self.r.mul_int(-p)];
        e.sort();
        e
    }

    pub fn inertia_gm_exponent(&self, ctx: &PrimeCtx) -> ExpRes {
        ctx.exp(ctx.p() as i64 + 1)
    }

    /// `diag(1, λ)`.
    pub fn frob_gl2(&self, ctx: &PrimeCtx) -> Mat2<FieldElem> {
        Mat2::diag(ctx.one(), self.lambda.clone()).expect("entries share the session field")
    }

    pub fn frob_gm(&self, ctx: &PrimeCtx) -> FieldElem {
        ctx.one()
    }

    /// The same parameter as general tame data.
    pub fn lift(&self, ctx: &PrimeCtx) -> TameCParam {
        let p = ctx.p() as i64;
        TameCParam {
            frob_gl2: self.frob_gl2(ctx),
            frob_gm: self.frob_gm(ctx),
            inertia: [self.r.add_int(p + 1), self.r.mul_int(-p)],
            inertia_gm: self.inertia_gm_exponent(ctx),
        }
    }
}

/// Tame C-parameter: values on Frobenius and on a tame inertia generator,
/// the latter diagonal with exponents of `ω₂`.
#[derive(Clone, PartialEq, Debug)]
pub struct TameCParam {
    frob_gl2: Mat2<FieldElem>,
    frob_gm: FieldElem,
    inertia: [ExpRes; 2],
    inertia_gm: ExpRes,
}

impl TameCParam {
    /// Checks invertibility and the tame relation
    /// `ρ(Frob) ρ(h) ρ(Frob)⁻¹ = ρ(h)^p` in the C-group, where Frobenius acts
    /// on `(G, b)` by `(b det(G)⁻¹ G, b)`.
    pub fn new(
        ctx: &PrimeCtx,
        frob_gl2: Mat2<FieldElem>,
        frob_gm: FieldElem,
        inertia: [i64; 2],
        inertia_gm: i64,
    ) -> Result<Self, GaloisError> {
        for e in frob_gl2.entries().iter().flatten().chain([&frob_gm]) {
            if **e.ring() != **ctx.field() {
                return Err(GaloisError::Mismatch("entries outside the session field".into()));
            }
        }
        if frob_gl2.det().is_zero() || frob_gm.is_zero() {
            return Err(GaloisError::Precondition("Frobenius image not invertible".into()));
        }
        let out = TameCParam {
            frob_gl2,
            frob_gm,
            inertia: [ctx.exp(inertia[0]), ctx.exp(inertia[1])],
            inertia_gm: ctx.exp(inertia_gm),
        };
        if !out.tame_relation_holds(ctx) {
            return Err(GaloisError::Precondition("tame relation fails".into()));
        }
        Ok(out)
    }

    pub fn tame_relation_holds(&self, ctx: &PrimeCtx) -> bool {
        let p = ctx.p() as i64;
        let g = self.inertia_gm;
        if g.mul_int(p) != g {
            return false;
        }
        // Frobenius sends (D, z) to diag(z/e2, z/e1); A must carry it to D^p.
        let twisted = [
            g.add_int(-self.inertia[1].as_i64()),
            g.add_int(-self.inertia[0].as_i64()),
        ];
        (0..2).all(|i| {
            (0..2).all(|j| {
                self.frob_gl2.get(i, j).is_zero() || twisted[j] == self.inertia[i].mul_int(p)
            })
        })
    }

    pub fn frob_gl2(&self) -> &Mat2<FieldElem> {
        &self.frob_gl2
    }

    pub fn frob_gm(&self) -> &FieldElem {
        &self.frob_gm
    }

    pub fn inertia(&self) -> [ExpRes; 2] {
        self.inertia
    }

    pub fn inertia_gm(&self) -> ExpRes {
        self.inertia_gm
    }

    fn sorted_inertia(&self) -> [ExpRes; 2] {
        let mut e = self.inertia;
        e.sort();
        e
    }
}

/// `ψ_{r,λ} ~ ψ_{r',λ'}` iff equal or `(r', λ') = (−pr, λ⁻¹)`.
pub fn lparam_equiv(ctx: &PrimeCtx, a: &LParam, b: &LParam) -> bool {
    if a == b {
        return true;
    }
    let p = ctx.p() as i64;
    b.r == a.r.mul_int(-p) && inverse_pair(&a.lambda, &b.lambda)
}

/// Conjugacy of non-supercuspidal C-parameters in closed form: equal, or
/// `(r', λ') = (−pr − (p + 1), λ⁻¹)`.
pub fn cparam_equiv_fast(ctx: &PrimeCtx, a: &CParamNS, b: &CParamNS) -> bool {
    if a == b {
        return true;
    }
    b.r == cparam_partner_r(ctx, a.r) && inverse_pair(&a.lambda, &b.lambda)
}

/// The index `−pr − (p + 1)` of the conjugate parameter.
pub fn cparam_partner_r(ctx: &PrimeCtx, r: ExpRes) -> ExpRes {
    let p = ctx.p() as i64;
    r.mul_int(-p).add_int(-(p + 1))
}

fn inverse_pair(x: &FieldElem, y: &FieldElem) -> bool {
    (x * y).is_one()
}

/// Conjugacy by enumeration of `(g, c) ∈ GL₂(F_q) × F_q^×`: the image of
/// inertia must match entrywise and the Frobenius images must satisfy
/// `c⁻¹ det(g) g A g⁻¹ = A'`.
///
/// The multiset of inertia exponents is a conjugacy invariant and is
/// compared first; `g` then only ranges over matrices whose support is
/// compatible with the exponents.
pub fn cparam_equiv_bruteforce(
    ctx: &PrimeCtx,
    a: &TameCParam,
    b: &TameCParam,
) -> Result<bool, GaloisError> {
    search_conjugator(ctx, a, b, true)
}

/// Same as [`cparam_equiv_bruteforce`] with no pre-filtering: every `g` and
/// `c` is tried and both conditions are checked directly.
pub fn cparam_equiv_bruteforce_unfiltered(
    ctx: &PrimeCtx,
    a: &TameCParam,
    b: &TameCParam,
) -> Result<bool, GaloisError> {
    search_conjugator(ctx, a, b, false)
}

fn search_conjugator(
    ctx: &PrimeCtx,
    a: &TameCParam,
    b: &TameCParam,
    prefilter: bool,
) -> Result<bool, GaloisError> {
    let q = ctx.field_size();
    if q.checked_pow(4).is_none_or(|x| x > BRUTEFORCE_LIMIT) {
        return Err(GaloisError::Capacity { field_size: q });
    }
    // Gm conjugation is trivial on both generators.
    if a.frob_gm != b.frob_gm || a.inertia_gm != b.inertia_gm {
        return Ok(false);
    }
    if prefilter && a.sorted_inertia() != b.sorted_inertia() {
        return Ok(false);
    }
    let t = FqTables::new(ctx);
    // g_ij may be nonzero only when e_j ≡ e'_i
    let allowed = |i: usize, j: usize| a.inertia[j] == b.inertia[i];
    let ranges: Vec<Vec<u16>> = (0..4)
        .map(|idx| {
            let (i, j) = (idx / 2, idx % 2);
            if prefilter && !allowed(i, j) {
                vec![t.zero]
            } else {
                (0..t.q as u16).collect()
            }
        })
        .collect();
    let fa = t.mat(&a.frob_gl2);
    let fb = t.mat(&b.frob_gl2);
    let units: Vec<u16> = t.units().collect();
    for &g00 in &ranges[0] {
        for &g01 in &ranges[1] {
            for &g10 in &ranges[2] {
                for &g11 in &ranges[3] {
                    let g = [[g00, g01], [g10, g11]];
                    let d = t.det(&g);
                    if d == t.zero {
                        continue;
                    }
                    if !prefilter {
                        let ok = (0..4).all(|idx| {
                            let (i, j) = (idx / 2, idx % 2);
                            g[i][j] == t.zero || allowed(i, j)
                        });
                        if !ok {
                            continue;
                        }
                    }
                    // det(g) g A = c A' g
                    let lhs = t.scale(d, &t.matmul(&g, &fa));
                    let bg = t.matmul(&fb, &g);
                    if units.iter().any(|&c| t.scale(c, &bg) == lhs) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Indices `r` for which the literal rule `(−pr, λ⁻¹)` pairs `ψ̃_{r,λ}` with
/// a parameter that is not conjugate to it, for any `λ`. Each entry is
/// `(r, −pr)`.
pub fn literal_rule_discrepancies(ctx: &PrimeCtx) -> Vec<(u64, u64)> {
    let p = ctx.p() as i64;
    let lambdas = ctx.nonzero_elements();
    (0..ctx.n() as i64)
        .filter_map(|r| {
            let r2 = ctx.exp(-p * r);
            let disagrees = lambdas.iter().any(|l| {
                let a = CParamNS::new(ctx, r, l.clone()).unwrap();
                let b = CParamNS::new(ctx, r2.as_i64(), l.inverse().unwrap()).unwrap();
                !cparam_equiv_fast(ctx, &a, &b)
            });
            disagrees.then_some((r as u64, r2.value()))
        })
        .collect()
}
