use std::sync::Arc;

use proptest::prelude::*;
use u11_langlands::arith::{LocalRing, Mat2, RingElem, VPoly};
use u11_langlands::kisin::*;

fn rings(p: u64) -> Vec<(&'static str, Arc<LocalRing>)> {
    vec![
        ("F_p", LocalRing::finite_field(p, 1).unwrap()),
        ("F_p2", LocalRing::finite_field(p, 2).unwrap()),
        ("Z/p2", LocalRing::galois_ring(p, 2, 1).unwrap()),
        ("GR(p2,2)", LocalRing::galois_ring(p, 2, 2).unwrap()),
        ("ramified", LocalRing::eisenstein(p, 2, 2).unwrap()),
    ]
}

/// The determinant unit read off the coefficients: `c11*·c22*` for both
/// triangular shapes, `−c12*·c21*` for `𝔴`.
fn expected_unit(g: &GaugeMatrix) -> RingElem {
    let c = g.coeffs();
    match g.shape() {
        Shape::T | Shape::TPrime => &c["c11*"] * &c["c22*"],
        Shape::W => -&(&c["c12*"] * &c["c21*"]),
    }
}

/// Whether `m` over a field has the residual pattern of `shape`.
fn residual_pattern(m: &Mat2<VPoly>, shape: Shape) -> bool {
    let deg = |e: &VPoly| e.degree();
    let is_v_mult = |e: &VPoly| e.coeff(0).is_zero() && deg(e).map_or(true, |d| d == 1);
    let is_v_unit = |e: &VPoly| e.coeff(0).is_zero() && deg(e) == Some(1);
    let is_const_unit = |e: &VPoly| deg(e) == Some(0);
    let is_const = |e: &VPoly| deg(e).map_or(true, |d| d == 0);
    let e = m.entries();
    match shape {
        Shape::T => {
            is_v_unit(&e[0][0]) && e[0][1].is_zero() && is_v_mult(&e[1][0]) && is_const_unit(&e[1][1])
        }
        Shape::TPrime => {
            is_const_unit(&e[0][0]) && is_const(&e[0][1]) && e[1][0].is_zero() && is_v_unit(&e[1][1])
        }
        Shape::W => {
            e[0][0].is_zero() && is_const_unit(&e[0][1]) && is_v_unit(&e[1][0]) && e[1][1].is_zero()
        }
    }
}

#[test]
fn sampled_gauge_invariants() {
    for p in [3u64, 5] {
        for (name, ring) in rings(p) {
            let sampler = GaugeSampler::new(&ring);
            for shape in Shape::ALL {
                let batch = match sampler.sample_batch(shape, 0xC0FFEE ^ p, 1000) {
                    Ok(b) => b,
                    Err(KisinError::Solvability(_)) => {
                        assert_eq!(shape, Shape::W);
                        assert!(matches!(name, "Z/p2" | "GR(p2,2)"), "{name}");
                        continue;
                    }
                    Err(e) => panic!("{e}"),
                };
                for g in batch {
                    let a = g.matrix();
                    assert!(validate_gauge(a, shape, &ring));
                    assert_eq!(detect_shape(a).unwrap(), shape);
                    let others = Shape::ALL.iter().filter(|&&s| validate_gauge(a, s, &ring));
                    assert_eq!(others.count(), 1);
                    assert_eq!(det_height_check(a), Some(expected_unit(&g)), "{name}");

                    let partner = polarisation_partner(&g).unwrap();
                    assert!(check_polarisation(partner.matrix(), a));
                    assert_eq!(partner.shape(), shape);
                    assert_eq!(polarisation_partner(&partner).unwrap(), g);
                    assert!(KisinPair::polarised(g.clone()).unwrap().is_polarised());

                    assert!(residual_pattern(&g.reduce(), shape), "{name} {shape}");
                }
            }
        }
    }
}

#[test]
fn w_admissibility_by_ring() {
    for p in [3u64, 5, 7] {
        for (name, ring) in rings(p) {
            let admits = GaugeSampler::new(&ring).admits_w();
            // fields: x = y = 0; ramified: x = ϖ, y = −ϖ; unramified p²: none
            assert_eq!(admits, !matches!(name, "Z/p2" | "GR(p2,2)"), "p={p} {name}");
        }
    }
}

#[test]
fn defring_counts() {
    for shape in Shape::ALL {
        let rec = explicit_defring(shape);
        assert_eq!(rec.presentation.dimension_count(), 3);
        assert_eq!(rec.presentation.extra_formal_vars(), (2, 4));
        assert_eq!(
            (rec.galois_iso_note.left_extra_vars, rec.galois_iso_note.right_extra_vars),
            (2, 4)
        );
    }
}

fn small_poly(ring: &Arc<LocalRing>, c: [i64; 2]) -> VPoly {
    VPoly::from_ints(ring, &[&[c[0]], &[c[1]]]).unwrap()
}

proptest! {
    #[test]
    fn shapes_are_exclusive(cs in proptest::array::uniform8(-4i64..5), use_field in any::<bool>()) {
        let ring = if use_field {
            LocalRing::finite_field(3, 1).unwrap()
        } else {
            LocalRing::galois_ring(3, 2, 1).unwrap()
        };
        let e = |i: usize| small_poly(&ring, [cs[2 * i], cs[2 * i + 1]]);
        let a = Mat2::new(e(0), e(1), e(2), e(3)).unwrap();
        let valid: Vec<Shape> = Shape::ALL.into_iter().filter(|&s| validate_gauge(&a, s, &ring)).collect();
        prop_assert!(valid.len() <= 1);
        match detect_shape(&a) {
            Ok(s) => {
                prop_assert_eq!(valid, vec![s]);
                prop_assert!(det_height_check(&a).is_some());
            }
            Err(_) => prop_assert!(valid.is_empty()),
        }
    }

    #[test]
    fn partner_of_ramified_w_samples(seed in any::<u64>()) {
        let ring = LocalRing::eisenstein(5, 2, 2).unwrap();
        let g = sample_gauge(Shape::W, &ring, seed).unwrap();
        let rec = explicit_defring(Shape::W);
        prop_assert!(rec.presentation.is_point(&defring_point(&g).unwrap()).unwrap());
        let partner = polarisation_partner(&g).unwrap();
        prop_assert!(check_polarisation(partner.matrix(), g.matrix()));
    }
}
