//! Verification suites: exhaustive or seeded property batteries per module.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use u11_langlands::arith::{LocalRing, Mat2, VPoly};
use u11_langlands::galois::{self, CParamNS, PSInertialType, Weyl, BRUTEFORCE_LIMIT, W2};
use u11_langlands::kisin::{self, GaugeSampler, KisinError, Shape};
use u11_langlands::reps::{self, DeformStatus, GChar, PacketIndex, TChar};

use crate::{CliError, Config, Suite};

/// Counterexamples kept per property; the count is always exact.
const KEEP: usize = 5;

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub property: String,
    pub detail: String,
}

#[derive(Serialize)]
struct PropertyResult {
    property: String,
    checked: u64,
    failed: u64,
    passed: bool,
}

#[derive(Default)]
struct Checker {
    tally: BTreeMap<String, (u64, u64)>,
    violations: Vec<Violation>,
    observations: Map<String, Value>,
}

impl Checker {
    fn check(&mut self, property: &str, ok: bool, detail: impl FnOnce() -> String) {
        let entry = self.tally.entry(property.to_string()).or_default();
        entry.0 += 1;
        if !ok {
            entry.1 += 1;
            if entry.1 as usize <= KEEP {
                self.violations.push(Violation {
                    property: property.to_string(),
                    detail: detail(),
                });
            }
        }
    }

    /// Lists a property even if no input exercises it.
    fn declare(&mut self, property: &str) {
        self.tally.entry(property.to_string()).or_default();
    }

    fn observe(&mut self, key: &str, value: Value) {
        self.observations.insert(key.to_string(), value);
    }

    fn finish(mut self) -> (Value, Vec<Violation>) {
        let properties: Vec<PropertyResult> = self
            .tally
            .into_iter()
            .map(|(property, (checked, failed))| PropertyResult {
                property,
                checked,
                failed,
                passed: failed == 0,
            })
            .collect();
        self.violations
            .sort_by(|a, b| (&a.property, &a.detail).cmp(&(&b.property, &b.detail)));
        let results = json!({
            "properties": properties,
            "observations": Value::Object(self.observations),
        });
        (results, self.violations)
    }
}

pub fn verify(suite: Suite, cfg: &Config) -> Result<(Value, Vec<Violation>), CliError> {
    let mut c = Checker::default();
    let run = |s: Suite| suite == s || suite == Suite::All;
    if run(Suite::Arith) {
        arith(cfg, &mut c)?;
    }
    if run(Suite::Reps) {
        reps_suite(cfg, &mut c)?;
    }
    if run(Suite::Galois) {
        galois_suite(cfg, &mut c)?;
    }
    if run(Suite::Kisin) {
        kisin_suite(cfg, &mut c)?;
    }
    if run(Suite::Correspondence) {
        correspondence(cfg, &mut c)?;
    }
    Ok(c.finish())
}

fn arith_rings(cfg: &Config) -> Result<Vec<(String, Arc<LocalRing>)>, CliError> {
    let (p, m, f) = (cfg.p, cfg.m, cfg.f);
    Ok(vec![
        (format!("F_{p}^{f}"), LocalRing::finite_field(p, f)?),
        (format!("GR({p}^{m},{f})"), LocalRing::galois_ring(p, m, f)?),
        (format!("Z/{p}^{m}[w]/(w^2-{p})"), LocalRing::eisenstein(p, m, 2)?),
    ])
}

fn arith(cfg: &Config, c: &mut Checker) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (name, ring) in arith_rings(cfg)? {
        if ring.size() <= 1 << 16 {
            for u in ring.elements().filter(|u| u.is_unit()) {
                let ok = u.inverse().is_ok_and(|v| (&u * &v).is_one());
                c.check("arith.unit-inverse", ok, || format!("{name}: {u}"));
            }
        }
        let k = ring.residue_field();
        for _ in 0..cfg.samples {
            let (x, y) = (ring.random(&mut rng), ring.random(&mut rng));
            let ok = (&x * &y).residue() == &x.residue() * &y.residue()
                && (&x + &y).residue() == &x.residue() + &y.residue()
                && x.is_unit() == !x.residue().is_zero();
            c.check("arith.residue-homomorphism", ok, || format!("{name}: {x}, {y}"));

            let e: Vec<VPoly> = (0..4)
                .map(|_| VPoly::new(&ring, vec![ring.random(&mut rng), ring.random(&mut rng)]).unwrap())
                .collect();
            let a = Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone())?;
            let ok = a.adjugate().try_mul(&a)?.is_scalar(&a.det());
            c.check("arith.adjugate", ok, || format!("{name}: {a:?}"));

            let q = VPoly::new(&ring, (0..3).map(|_| ring.random(&mut rng)).collect())?;
            let back = (&VPoly::v_plus_p(&ring) * &q).div_v_plus_p();
            c.check("arith.v-plus-p-division", back.as_ref() == Some(&q), || format!("{name}: {q}"));
        }
        c.observe(
            &format!("arith.residue-field.{name}"),
            json!({"size": k.size(), "ring_size": ring.size()}),
        );
    }
    Ok(())
}

fn reps_suite(cfg: &Config, c: &mut Checker) -> Result<(), CliError> {
    let ctx = cfg.ctx()?;
    let p = ctx.p();
    let lambdas = ctx.nonzero_elements();
    let mut extending = 0u64;
    for r in 0..ctx.n() as i64 {
        for l in &lambdas {
            let chi = TChar::new(&ctx, r, l.clone()).map_err(|e| CliError::domain("reps", e))?;
            let by_search = (0..=p as i64)
                .map(|k| GChar::new(&ctx, k))
                .find(|&g| reps::restrict_det_char(&ctx, g) == chi);
            let got = reps::extends_to_G(&ctx, &chi);
            extending += u64::from(got.is_some());
            c.check("reps.extension-matches-search", got == by_search, || format!("{chi:?}"));
            let hyp = reps::hss_induction_status(&ctx, &chi) == DeformStatus::Isomorphism;
            c.check("reps.hss-criterion", hyp == reps::hss_norm_oracle(&ctx, &chi), || {
                format!("{chi:?}")
            });
        }
    }
    c.check("reps.extension-count", extending == p + 1, || format!("{extending} extend"));

    let all = reps::classify_all(&ctx);
    let want = 2 * (p + 1) + (ctx.n() * (ctx.field_size() - 1) - (p + 1));
    c.check("reps.classification-count", all.len() as u64 == want, || {
        format!("{} labels, expected {want}", all.len())
    });
    let distinct: HashSet<_> = all.iter().collect();
    c.check("reps.classification-distinct", distinct.len() == all.len(), || {
        "repeated labels".into()
    });

    let pi = p as i64;
    for l in &lambdas {
        let li = l.inverse()?;
        for r in 0..pi {
            for k in 0..=pi {
                let lhs = reps::packet(&ctx, &PacketIndex::new(&ctx, r, l.clone(), k).unwrap());
                let k2 = (k + r + 1).rem_euclid(pi + 1);
                let rhs =
                    reps::packet(&ctx, &PacketIndex::new(&ctx, pi - 1 - r, li.clone(), k2).unwrap());
                c.check("reps.packet-symmetry", lhs.is_ok() && lhs == rhs, || {
                    format!("r={r} k={k} λ={l}")
                });
            }
        }
    }
    Ok(())
}

fn galois_suite(cfg: &Config, c: &mut Checker) -> Result<(), CliError> {
    let ctx = cfg.odd_ctx()?;
    let n = ctx.n();
    let pi = ctx.p() as i64;
    for p in ["galois.witness-sound", "galois.witness-prefers-identity", "galois.orientation-unique"] {
        c.declare(p);
    }
    for level in cfg.n_list() {
        let v = galois::weyl_triviality_check(&ctx, level);
        c.check("galois.weyl-triviality", v.is_empty(), || format!("n={level}: {v:?}"));
        for r in 0..n as i64 {
            let x = CParamNS::new(&ctx, r, ctx.one()).unwrap();
            if let Some(w) = galois::n_generic_witness(&ctx, &x, level) {
                let d = w.a - w.b + 1;
                let ok = galois::tau_w(&ctx, w.w, w.a, w.b) == galois::c_inertia(&ctx, &x)
                    && (level as i64) < d
                    && d < pi - level as i64;
                c.check("galois.witness-sound", ok, || format!("n={level} r={r}: {w:?}"));
                c.check("galois.witness-prefers-identity", w.w == Weyl::One, || {
                    format!("n={level} r={r}")
                });
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            let t = PSInertialType::new(&ctx, a as i64, b as i64);
            let families = (a % (ctx.p() - 1) == 0 && b % (ctx.p() - 1) == 0)
                || b == ctx.exp(-pi * a as i64).value()
                || a == ctx.exp(-pi * b as i64).value();
            c.check("galois.ftsd-characterisation", t.is_ftsd(&ctx) == families, || {
                format!("({a},{b})")
            });
            if galois::ps_is_n_generic(&ctx, a as i64, b as i64, 2) {
                let va = galois::embedding_values(&ctx, a as i64);
                let vb = galois::embedding_values(&ctx, b as i64);
                let ok = match galois::orientation(&ctx, a as i64, b as i64) {
                    Ok(o) => {
                        let want = |i: usize| if va[i] > vb[i] { W2::Id } else { W2::S };
                        o.w0 == want(0) && o.w1 == want(1)
                    }
                    Err(_) => false,
                };
                c.check("galois.orientation-unique", ok, || format!("({a},{b})"));
            }
        }
    }

    for x in CParamNS::all(&ctx) {
        let (rho2, theta) = galois::base_change(&ctx, &x);
        let alpha = galois::polarisation_of(&ctx, &x);
        let ok = galois::verify_polarisation(&ctx, &rho2, &theta, &alpha).unwrap_or(false);
        c.check("galois.polarisation", ok, || format!("{x:?}"));
    }

    let lit = galois::literal_rule_discrepancies(&ctx);
    c.observe(
        "galois.literal-rule",
        json!({
            "rule": "(r, λ) ~ (−pr, λ⁻¹)",
            "conjugacy_rule": "(r, λ) ~ (−pr − (p + 1), λ⁻¹)",
            "indices_where_literal_rule_is_not_conjugacy": lit.len(),
            "examples": lit.iter().take(KEEP).map(|&(r, r2)| json!([r, r2])).collect::<Vec<_>>(),
        }),
    );
    Ok(())
}

fn kisin_rings(cfg: &Config) -> Result<Vec<(String, Arc<LocalRing>)>, CliError> {
    let p = cfg.p;
    Ok(vec![
        (format!("F_{p}"), LocalRing::finite_field(p, 1)?),
        (format!("F_{p}^2"), LocalRing::finite_field(p, 2)?),
        (format!("Z/{p}^2"), LocalRing::galois_ring(p, 2, 1)?),
        (format!("GR({p}^2,2)"), LocalRing::galois_ring(p, 2, 2)?),
        (format!("Z/{p}^2[w]/(w^2-{p})"), LocalRing::eisenstein(p, 2, 2)?),
    ])
}

fn kisin_suite(cfg: &Config, c: &mut Checker) -> Result<(), CliError> {
    if cfg.p == 2 {
        return Err(CliError::domain("arith", "p must be odd for this command"));
    }
    let mut admissible = Map::new();
    for (name, ring) in kisin_rings(cfg)? {
        let sampler = GaugeSampler::new(&ring);
        admissible.insert(name.clone(), Value::Bool(sampler.admits_w()));
        for shape in Shape::ALL {
            let batch = match sampler.sample_batch(shape, cfg.seed, cfg.samples) {
                Ok(b) => b,
                Err(KisinError::Solvability(_)) => {
                    c.check("kisin.solvability-only-for-w", shape == Shape::W, || {
                        format!("{name} {shape}")
                    });
                    continue;
                }
                Err(e) => return Err(CliError::domain("kisin", e)),
            };
            for g in &batch {
                let a = g.matrix();
                let what = || format!("{name} {shape}: {a:?}");
                c.check("kisin.validate", kisin::validate_gauge(a, shape, &ring), what);
                c.check("kisin.detect-round-trip", kisin::detect_shape(a).ok() == Some(shape), what);
                c.check("kisin.det-height", kisin::det_height_check(a).is_some(), what);
                match kisin::polarisation_partner(g) {
                    Ok(a0) => {
                        c.check(
                            "kisin.partner-polarises",
                            kisin::check_polarisation(a0.matrix(), a) && a0.shape() == shape,
                            what,
                        );
                        c.check(
                            "kisin.partner-involution",
                            kisin::polarisation_partner(&a0).ok().as_ref() == Some(g),
                            what,
                        );
                    }
                    Err(_) => c.check("kisin.partner-polarises", false, what),
                }
                let rec = kisin::explicit_defring(shape);
                let point = kisin::defring_point(g)
                    .ok()
                    .and_then(|pt| rec.presentation.is_point(&pt).ok());
                c.check("kisin.defring-point", point == Some(true), what);
            }
        }
    }
    c.observe("kisin.w-admissible", Value::Object(admissible));
    for shape in Shape::ALL {
        let rec = kisin::explicit_defring(shape);
        c.check("kisin.defring-count", rec.presentation.dimension_count() == 3, || {
            format!("{shape}")
        });
    }
    Ok(())
}

fn correspondence(cfg: &Config, c: &mut Checker) -> Result<(), CliError> {
    let ctx = cfg.odd_ctx()?;
    let mut image: HashMap<CParamNS, Option<reps::SemisimpleNonSC>> = HashMap::new();
    let all = CParamNS::all(&ctx);
    for x in &all {
        let packets: Vec<_> = galois::packets_for_param(&ctx, x)
            .iter()
            .map(|i| reps::packet(&ctx, i).expect("fiber indices are valid"))
            .collect();
        c.check(
            "correspondence.fiber-single-packet",
            packets.windows(2).all(|w| w[0] == w[1]),
            || format!("{x:?}"),
        );
        image.insert(x.clone(), packets.into_iter().next());
    }
    for x in &all {
        let y = CParamNS::new(
            &ctx,
            galois::cparam_partner_r(&ctx, x.r()).as_i64(),
            x.lambda().inverse()?,
        )
        .unwrap();
        if let (Some(a), Some(b)) = (&image[x], &image[&y]) {
            c.check("correspondence.equivalent-same-packet", a == b, || format!("{x:?} ~ {y:?}"));
        }
    }
    let q = ctx.field_size();
    let feasible = q.checked_pow(4).is_some_and(|v| v <= BRUTEFORCE_LIMIT) && all.len() <= 200;
    if feasible {
        let lifts: Vec<_> = all.iter().map(|x| x.lift(&ctx)).collect();
        for (i, x) in all.iter().enumerate() {
            for (j, y) in all.iter().enumerate() {
                let brute = galois::cparam_equiv_bruteforce(&ctx, &lifts[i], &lifts[j]);
                let ok = brute == Ok(galois::cparam_equiv_fast(&ctx, x, y));
                c.check("correspondence.fast-matches-conjugacy", ok, || format!("{x:?} {y:?}"));
            }
        }
    }
    c.observe("correspondence.conjugacy-search-run", Value::Bool(feasible));
    Ok(())
}
