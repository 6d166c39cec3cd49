//! Partial-Frobenius matrices in gauge form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{LocalRing, Mat2, RingDescriptor, RingElem, VPoly};

use super::KisinError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    T,
    TPrime,
    W,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::T, Shape::TPrime, Shape::W];

    pub fn as_str(self) -> &'static str {
        match self {
            Shape::T => "t",
            Shape::TPrime => "t'",
            Shape::W => "w",
        }
    }

    pub fn parse(s: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|x| x.as_str() == s)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A matrix in gauge form together with its shape and named coefficients.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct GaugeMatrix {
    #[serde(serialize_with = "ser_ring")]
    ring: Arc<LocalRing>,
    shape: Shape,
    entries: Mat2<VPoly>,
    coeffs: BTreeMap<String, RingElem>,
}

fn ser_ring<S: Serializer>(r: &Arc<LocalRing>, s: S) -> Result<S::Ok, S::Error> {
    r.descriptor().serialize(s)
}

impl GaugeMatrix {
    /// Detects the shape and extracts the coefficients.
    pub fn from_matrix(a: Mat2<VPoly>) -> Result<Self, KisinError> {
        let shape = detect_shape(&a)?;
        let coeffs = match_shape(&a, shape).expect("detected shape matches");
        Ok(GaugeMatrix {
            ring: a.get(0, 0).ring().clone(),
            shape,
            entries: a,
            coeffs,
        })
    }

    /// Builds the matrix of `shape` from its named coefficients (`c11*`,
    /// `c21`, ... as in the gauge table) and validates it.
    pub fn from_coeffs(
        ring: &Arc<LocalRing>,
        shape: Shape,
        coeffs: &BTreeMap<String, RingElem>,
    ) -> Result<Self, KisinError> {
        let get = |n: &str| -> Result<VPoly, KisinError> {
            let c = coeffs
                .get(n)
                .ok_or_else(|| KisinError::NotGauge(format!("missing coefficient {n}")))?;
            if **c.ring() != **ring {
                return Err(KisinError::Mismatch("coefficient from another ring".into()));
            }
            Ok(VPoly::constant(c.clone()))
        };
        let vp = VPoly::v_plus_p(ring);
        let v = VPoly::v(ring);
        let z = VPoly::zero(ring);
        let m = match shape {
            Shape::T => Mat2::new(&vp * &get("c11*")?, z, &v * &get("c21")?, get("c22*")?),
            Shape::TPrime => Mat2::new(get("c11*")?, get("c12")?, z, &vp * &get("c22*")?),
            Shape::W => Mat2::new(get("c11")?, get("c12*")?, &v * &get("c21*")?, get("c22")?),
        }?;
        let out = GaugeMatrix::from_matrix(m)?;
        if out.shape != shape {
            return Err(KisinError::NotGauge(format!("coefficients do not give shape {shape}")));
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<LocalRing> {
        &self.ring
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn matrix(&self) -> &Mat2<VPoly> {
        &self.entries
    }

    pub fn coeffs(&self) -> &BTreeMap<String, RingElem> {
        &self.coeffs
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.ring.descriptor()
    }

    /// Entrywise image in the residue field.
    pub fn reduce(&self) -> Mat2<VPoly> {
        let k = self.ring.residue_field();
        self.entries.map(|e| e.map_coeffs(&k, |c| c.residue()))
    }
}

/// Constant term of a polynomial of degree ≤ 0.
fn constant(e: &VPoly) -> Option<RingElem> {
    match e.degree() {
        None => Some(e.ring().zero()),
        Some(0) => Some(e.coeff(0)),
        _ => None,
    }
}

/// `c` with `e = v·c`.
fn v_multiple(e: &VPoly) -> Option<RingElem> {
    if e.degree().is_some_and(|d| d > 1) || !e.coeff(0).is_zero() {
        return None;
    }
    Some(e.coeff(1))
}

/// `c` with `e = (v + p)·c`.
fn vp_multiple(e: &VPoly) -> Option<RingElem> {
    if e.degree().is_some_and(|d| d > 1) {
        return None;
    }
    let c = e.coeff(1);
    (e.coeff(0) == c.scale_int(e.ring().p() as i64)).then_some(c)
}

fn unit(c: Option<RingElem>) -> Option<RingElem> {
    c.filter(|c| c.is_unit())
}

fn nonunit(c: Option<RingElem>) -> Option<RingElem> {
    c.filter(|c| !c.is_unit())
}

/// The named coefficients if `a` has the pattern of `shape`.
fn match_shape(a: &Mat2<VPoly>, shape: Shape) -> Option<BTreeMap<String, RingElem>> {
    let e = a.entries();
    let named = |pairs: Vec<(&str, RingElem)>| {
        Some(pairs.into_iter().map(|(n, c)| (n.to_string(), c)).collect())
    };
    match shape {
        Shape::T => {
            if !e[0][1].is_zero() {
                return None;
            }
            named(vec![
                ("c11*", unit(vp_multiple(&e[0][0]))?),
                ("c21", v_multiple(&e[1][0])?),
                ("c22*", unit(constant(&e[1][1]))?),
            ])
        }
        Shape::TPrime => {
            if !e[1][0].is_zero() {
                return None;
            }
            named(vec![
                ("c11*", unit(constant(&e[0][0]))?),
                ("c12", constant(&e[0][1])?),
                ("c22*", unit(vp_multiple(&e[1][1]))?),
            ])
        }
        Shape::W => {
            let c11 = nonunit(constant(&e[0][0]))?;
            let c12 = unit(constant(&e[0][1]))?;
            let c21 = unit(v_multiple(&e[1][0]))?;
            let c22 = nonunit(constant(&e[1][1]))?;
            let p = c11.ring().from_int(c11.ring().p() as i64);
            if &c11 * &c22 != -&(&p * &(&c12 * &c21)) {
                return None;
            }
            named(vec![("c11", c11), ("c12*", c12), ("c21*", c21), ("c22", c22)])
        }
    }
}

/// The unique shape whose gauge pattern `a` matches.
pub fn detect_shape(a: &Mat2<VPoly>) -> Result<Shape, KisinError> {
    Shape::ALL
        .into_iter()
        .find(|&s| match_shape(a, s).is_some())
        .ok_or_else(|| KisinError::NotGauge(format!("{a:?} matches no gauge pattern")))
}

/// Entry patterns, unit conditions and (for `𝔴`) the diagonal relation.
pub fn validate_gauge(a: &Mat2<VPoly>, shape: Shape, ring: &Arc<LocalRing>) -> bool {
    a.entries().iter().flatten().all(|e| **e.ring() == **ring) && match_shape(a, shape).is_some()
}

/// `Some(u)` when `det(a) = u·(v + p)` with `u` a unit of the coefficients.
pub fn det_height_check(a: &Mat2<VPoly>) -> Option<RingElem> {
    let q = a.det().div_v_plus_p()?;
    unit(constant(&q))
}

/// `A0 = u⁻¹ · s · adj(A1)ᵀ · s`, the cleared form of `(v + p) s A1^{−t} s`.
pub fn polarisation_partner(a1: &GaugeMatrix) -> Result<GaugeMatrix, KisinError> {
    let u = det_height_check(&a1.entries).ok_or(KisinError::Height)?;
    let u_inv = VPoly::constant(u.inverse()?);
    let a0 = a1.entries.adjugate().transpose().conj_swap().scale(&u_inv);
    GaugeMatrix::from_matrix(a0)
}

/// `A0 · s · A1ᵀ · s = (v + p)·I`.
pub fn check_polarisation(a0: &Mat2<VPoly>, a1: &Mat2<VPoly>) -> bool {
    if !a0.same_ring(a1) {
        return false;
    }
    let Ok(prod) = a0.try_mul(&a1.transpose().conj_swap()) else {
        return false;
    };
    prod.is_scalar(&VPoly::v_plus_p(a0.get(0, 0).ring()))
}

/// Two gauge matrices for the two embeddings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KisinPair {
    a0: GaugeMatrix,
    a1: GaugeMatrix,
}

impl KisinPair {
    pub fn new(a0: GaugeMatrix, a1: GaugeMatrix) -> Result<Self, KisinError> {
        if *a0.ring != *a1.ring {
            return Err(KisinError::Mismatch("pair over two rings".into()));
        }
        Ok(KisinPair { a0, a1 })
    }

    /// The polarised pair determined by `a1`.
    pub fn polarised(a1: GaugeMatrix) -> Result<Self, KisinError> {
        let a0 = polarisation_partner(&a1)?;
        Ok(KisinPair { a0, a1 })
    }

    pub fn a0(&self) -> &GaugeMatrix {
        &self.a0
    }

    pub fn a1(&self) -> &GaugeMatrix {
        &self.a1
    }

    pub fn is_polarised(&self) -> bool {
        self.a0.shape == self.a1.shape && check_polarisation(&self.a0.entries, &self.a1.entries)
    }
}

/// Seeded generator of gauge matrices over one ring. Admissible `𝔴`
/// diagonals are enumerated once.
pub struct GaugeSampler {
    ring: Arc<LocalRing>,
    /// Pairs `(x, y)` in the maximal ideal with `x·y = −p`.
    w_diagonals: Vec<(RingElem, RingElem)>,
}

impl GaugeSampler {
    pub fn new(ring: &Arc<LocalRing>) -> Self {
        let m = ring.max_ideal_elements();
        let minus_p = ring.from_int(-(ring.p() as i64));
        let w_diagonals = m
            .iter()
            .flat_map(|x| m.iter().map(move |y| (x, y)))
            .filter(|(x, y)| *x * *y == minus_p)
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        GaugeSampler {
            ring: ring.clone(),
            w_diagonals,
        }
    }

    /// Whether shape `𝔴` has any point over this ring.
    pub fn admits_w(&self) -> bool {
        !self.w_diagonals.is_empty()
    }

    pub fn sample(&self, shape: Shape, seed: u64) -> Result<GaugeMatrix, KisinError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = &self.ring;
        let mut c = BTreeMap::new();
        match shape {
            Shape::T => {
                c.insert("c11*".into(), r.random_unit(&mut rng));
                c.insert("c21".into(), r.random(&mut rng));
                c.insert("c22*".into(), r.random_unit(&mut rng));
            }
            Shape::TPrime => {
                c.insert("c11*".into(), r.random_unit(&mut rng));
                c.insert("c12".into(), r.random(&mut rng));
                c.insert("c22*".into(), r.random_unit(&mut rng));
            }
            Shape::W => {
                let (x, y) = self
                    .w_diagonals
                    .choose(&mut rng)
                    .ok_or_else(|| KisinError::Solvability(r.to_string()))?;
                let c12 = r.random_unit(&mut rng);
                let c21 = r.random_unit(&mut rng);
                let w = r.random_unit(&mut rng);
                // (x w e)(y w⁻¹) = −p e with e = c12·c21
                let e = &c12 * &c21;
                c.insert("c11".into(), &(x * &w) * &e);
                c.insert("c22".into(), y * &w.inverse()?);
                c.insert("c12*".into(), c12);
                c.insert("c21*".into(), c21);
            }
        }
        GaugeMatrix::from_coeffs(r, shape, &c)
    }

    /// `count` samples with per-sample seeds derived from `seed`, generated
    /// in parallel; the output order does not depend on scheduling.
    pub fn sample_batch(
        &self,
        shape: Shape,
        seed: u64,
        count: usize,
    ) -> Result<Vec<GaugeMatrix>, KisinError> {
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.sample(shape, derive_seed(seed, i)))
            .collect()
    }
}

/// SplitMix64 step, so neighbouring indices give unrelated streams.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One seeded gauge matrix of the given shape.
pub fn sample_gauge(
    shape: Shape,
    ring: &Arc<LocalRing>,
    seed: u64,
) -> Result<GaugeMatrix, KisinError> {
    GaugeSampler::new(ring).sample(shape, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vc(r: &Arc<LocalRing>, c: i64) -> VPoly {
        VPoly::constant(r.from_int(c))
    }

    fn w_example() -> (Arc<LocalRing>, Mat2<VPoly>) {
        let r = LocalRing::eisenstein(3, 2, 2).unwrap();
        let w = VPoly::constant(r.gen());
        let a = Mat2::new(w.clone(), vc(&r, 1), VPoly::v(&r), -&w).unwrap();
        (r, a)
    }

    #[test]
    fn detect_examples() {
        let f3 = LocalRing::finite_field(3, 1).unwrap();
        let v = VPoly::v(&f3);
        let a = Mat2::new(&v * &vc(&f3, 2), vc(&f3, 0), vc(&f3, 0), vc(&f3, 1)).unwrap();
        assert_eq!(detect_shape(&a).unwrap(), Shape::T);
        let a = Mat2::new(vc(&f3, 1), vc(&f3, 0), vc(&f3, 0), v.clone()).unwrap();
        assert_eq!(detect_shape(&a).unwrap(), Shape::TPrime);
        let (_, a) = w_example();
        assert_eq!(detect_shape(&a).unwrap(), Shape::W);
        let id = Mat2::identity(&vc(&f3, 1));
        assert!(detect_shape(&id).is_err());
    }

    #[test]
    fn validate_examples() {
        let (r, a) = w_example();
        assert!(validate_gauge(&a, Shape::W, &r));
        assert!(!validate_gauge(&a, Shape::T, &r));
        let z9 = LocalRing::galois_ring(3, 2, 1).unwrap();
        let a = Mat2::new(vc(&z9, 1), vc(&z9, 0), vc(&z9, 0), VPoly::v_plus_p(&z9)).unwrap();
        assert!(validate_gauge(&a, Shape::TPrime, &z9));
        let f3 = LocalRing::finite_field(3, 1).unwrap();
        let a = Mat2::new(VPoly::v(&f3), vc(&f3, 0), vc(&f3, 0), vc(&f3, 1)).unwrap();
        assert!(!validate_gauge(&a, Shape::W, &f3));
        // wrong ring
        assert!(!validate_gauge(&a, Shape::T, &z9));
    }

    #[test]
    fn height_examples() {
        let z9 = LocalRing::galois_ring(3, 2, 1).unwrap();
        let a = Mat2::diag(VPoly::v_plus_p(&z9), vc(&z9, 1)).unwrap();
        assert_eq!(det_height_check(&a), Some(z9.one()));
        let (r, a) = w_example();
        assert_eq!(det_height_check(&a), Some(r.from_int(-1)));
        assert_eq!(det_height_check(&Mat2::identity(&vc(&z9, 1))), None);
    }

    #[test]
    fn partner_examples() {
        let z9 = LocalRing::galois_ring(3, 2, 1).unwrap();
        let d = Mat2::diag(VPoly::v_plus_p(&z9), vc(&z9, 1)).unwrap();
        let g = GaugeMatrix::from_matrix(d.clone()).unwrap();
        let partner = polarisation_partner(&g).unwrap();
        assert_eq!(partner.matrix(), &d);
        assert!(check_polarisation(&d, &d));

        let (r, a) = w_example();
        let g = GaugeMatrix::from_matrix(a).unwrap();
        let partner = polarisation_partner(&g).unwrap();
        let w = VPoly::constant(r.gen());
        let want = Mat2::new(-&w, vc(&r, 1), VPoly::v(&r), w).unwrap();
        assert_eq!(partner.matrix(), &want);
        assert_eq!(partner.shape(), Shape::W);
        assert!(check_polarisation(partner.matrix(), g.matrix()));
        assert_eq!(polarisation_partner(&partner).unwrap(), g);

        let id = Mat2::identity(&vc(&z9, 1));
        assert!(!check_polarisation(&id, &id));
    }

    #[test]
    fn sampling_examples() {
        let f5 = LocalRing::finite_field(5, 1).unwrap();
        let g = sample_gauge(Shape::T, &f5, 7).unwrap();
        assert_eq!(g.shape(), Shape::T);
        let u = det_height_check(g.matrix()).unwrap();
        assert_eq!(g.matrix().det(), VPoly::v(&f5).scale(&u));

        let ram = LocalRing::eisenstein(3, 2, 2).unwrap();
        assert!(sample_gauge(Shape::W, &ram, 1).is_ok());
        let z9 = LocalRing::galois_ring(3, 2, 1).unwrap();
        assert!(matches!(
            sample_gauge(Shape::W, &z9, 1),
            Err(KisinError::Solvability(_))
        ));
    }

    #[test]
    fn batches_are_deterministic() {
        let r = LocalRing::eisenstein(5, 2, 2).unwrap();
        let s = GaugeSampler::new(&r);
        let a = s.sample_batch(Shape::W, 3, 50).unwrap();
        let b = s.sample_batch(Shape::W, 3, 50).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn serializes_with_descriptor() {
        let (_, a) = w_example();
        let g = GaugeMatrix::from_matrix(a).unwrap();
        let js = serde_json::to_value(&g).unwrap();
        assert_eq!(js["shape"], "w");
        assert_eq!(js["ring"]["modulus"], serde_json::json!([6, 0, 1]));
        assert_eq!(js["coeffs"]["c12*"], serde_json::json!([1, 0]));
        assert_eq!(js["entries"][1][0], serde_json::json!([[0, 0], [1, 0]]));
    }
}
