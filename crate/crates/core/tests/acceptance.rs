//! Acceptance run: each criterion prints one PASS/FAIL line with its elapsed
//! time, and the process exits nonzero if any criterion fails or overruns.

use std::collections::{HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;
use u11_langlands::arith::{LocalRing, PrimeCtx};
use u11_langlands::galois::*;
use u11_langlands::kisin::*;
use u11_langlands::reps::*;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn modn(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

fn extension_count() -> Outcome {
    for p in [3u64, 5, 7, 11] {
        let ctx = PrimeCtx::new(p, 2).unwrap();
        let mut extending = 0;
        for r in 0..ctx.n() as i64 {
            for l in ctx.nonzero_elements() {
                let chi = TChar::new(&ctx, r, l).unwrap();
                if extends_to_G(&ctx, &chi).is_some() {
                    extending += 1;
                }
            }
        }
        ensure(extending == p + 1, || format!("p={p}: {extending} extend, want {}", p + 1))?;
        // the p + 1 restrictions of det-characters are exactly these
        let restricted: HashSet<TChar> = (0..=p as i64)
            .map(|k| restrict_det_char(&ctx, GChar::new(&ctx, k)))
            .collect();
        ensure(restricted.len() as u64 == p + 1, || format!("p={p}: restrictions collide"))?;
    }
    Ok(())
}

fn semisimplification_boundary() -> Outcome {
    for p in [3u64, 5, 7] {
        let ctx = PrimeCtx::new(p, 1).unwrap();
        let one = ctx.one();
        let triv = GChar::new(&ctx, 0);
        let wp = GChar::new(&ctx, p as i64);
        let want0 = SemisimpleNonSC::new(vec![NonSCFactor::Character(triv), NonSCFactor::Special(triv)]);
        let want1 = SemisimpleNonSC::new(vec![NonSCFactor::Character(wp), NonSCFactor::Special(wp)]);
        let got0 = pi_ss(&ctx, 0, &one).map_err(|e| e.to_string())?;
        let got1 = pi_ss(&ctx, p as i64 - 1, &one).map_err(|e| e.to_string())?;
        ensure(got0 == want0, || format!("p={p}: pi_ss(0,1) = {got0:?}"))?;
        ensure(got1 == want1, || format!("p={p}: pi_ss(p-1,1) = {got1:?}"))?;
    }
    Ok(())
}

fn classification_counts() -> Outcome {
    for p in [3u64, 5] {
        for f in [1u32, 2] {
            let ctx = PrimeCtx::new(p, f).unwrap();
            let all = classify_all(&ctx);
            let want = (p + 1) + (p + 1) + ((p * p - 1) * (p.pow(f) - 1) - (p + 1));
            ensure(all.len() as u64 == want, || format!("p={p} f={f}: {} labels, want {want}", all.len()))?;
            let distinct: HashSet<_> = all.iter().collect();
            ensure(distinct.len() == all.len(), || format!("p={p} f={f}: repeated labels"))?;
        }
    }
    Ok(())
}

fn correspondence_well_defined() -> Outcome {
    for p in [3u64, 5] {
        let ctx = PrimeCtx::new(p, 2).unwrap();
        let mut image: HashMap<CParamNS, Option<SemisimpleNonSC>> = HashMap::new();
        for x in CParamNS::all(&ctx) {
            let packets: Vec<_> = packets_for_param(&ctx, &x)
                .iter()
                .map(|i| packet(&ctx, i).unwrap())
                .collect();
            ensure(packets.windows(2).all(|w| w[0] == w[1]), || {
                format!("p={p}: fiber of {x:?} has several packets")
            })?;
            image.insert(x, packets.into_iter().next());
        }
        let all: Vec<_> = image.keys().cloned().collect();
        for x in &all {
            for y in &all {
                if cparam_equiv_fast(&ctx, x, y) {
                    if let (Some(a), Some(b)) = (&image[x], &image[y]) {
                        ensure(a == b, || format!("p={p}: {x:?} ~ {y:?} give different packets"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn equivalence_oracles_agree() -> Outcome {
    for f in [1u32, 2] {
        let ctx = PrimeCtx::new(3, f).unwrap();
        let all = CParamNS::all(&ctx);
        let lifts: Vec<_> = all.iter().map(|x| x.lift(&ctx)).collect();
        let bad: Vec<String> = (0..all.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let (all, lifts, ctx) = (&all, &lifts, &ctx);
                (0..all.len()).filter_map(move |j| {
                    let brute = cparam_equiv_bruteforce(ctx, &lifts[i], &lifts[j]);
                    let fast = cparam_equiv_fast(ctx, &all[i], &all[j]);
                    match brute {
                        Ok(b) if b == fast => None,
                        other => Some(format!("{:?} vs {:?}: fast={fast} brute={other:?}", all[i], all[j])),
                    }
                })
            })
            .collect();
        ensure(bad.is_empty(), || format!("f={f}: {} disagreements, e.g. {}", bad.len(), bad[0]))?;
    }
    Ok(())
}

/// Multiset `{a + 1 + p(1 − b), b − pa}` for `w = 1` and
/// `{a + 1 − pa, b + p(1 − b)}` for `s₀`, sorted.
fn tau_exponents(p: i64, n: u64, s0: bool, a: i64, b: i64) -> [u64; 2] {
    let mut e = if s0 {
        [modn(a + 1 - p * a, n), modn(b + p * (1 - b), n)]
    } else {
        [modn(a + 1 + p * (1 - b), n), modn(b - p * a, n)]
    };
    e.sort();
    e
}

fn weyl_triviality() -> Outcome {
    for p in [3u64, 5, 7, 11] {
        let ctx = PrimeCtx::new(p, 1).unwrap();
        let n = ctx.n();
        let pi = p as i64;
        for g in 0..3u64 {
            let lib = weyl_triviality_check(&ctx, g);
            ensure(lib.is_empty(), || format!("p={p} n={g}: {} violations", lib.len()))?;
            // independent sweep over a mod p² − 1 and admissible c = a − b + 1
            let reach = |s0: bool| -> HashSet<[u64; 2]> {
                let mut out = HashSet::new();
                for a in 0..n as i64 {
                    for c in (g as i64 + 1)..(pi - g as i64) {
                        out.insert(tau_exponents(pi, n, s0, a, a + 1 - c));
                    }
                }
                out
            };
            let (one, s0) = (reach(false), reach(true));
            for r in 0..n as i64 {
                let mut target = [modn(pi + 1 + r, n), modn(-pi * r, n)];
                target.sort();
                ensure(!s0.contains(&target) || one.contains(&target), || {
                    format!("p={p} n={g} r={r}: generic only through s0")
                })?;
            }
        }
    }
    Ok(())
}

fn ftsd_characterisation() -> Outcome {
    for p in [3u64, 5, 7] {
        let ctx = PrimeCtx::new(p, 1).unwrap();
        let n = ctx.n();
        let pi = p as i64;
        for a in 0..n {
            for b in 0..n {
                let t = PSInertialType::new(&ctx, a as i64, b as i64);
                let families = (a % (p - 1) == 0 && b % (p - 1) == 0)
                    || b == modn(-pi * a as i64, n)
                    || a == modn(-pi * b as i64, n);
                ensure(t.is_ftsd(&ctx) == families, || format!("p={p} (a,b)=({a},{b})"))?;
            }
        }
    }
    Ok(())
}

fn orientation_uniqueness() -> Outcome {
    for p in [5u64, 7] {
        let ctx = PrimeCtx::new(p, 1).unwrap();
        let n = ctx.n() as i64;
        let pi = p as i64;
        for a in 0..n {
            for b in 0..n {
                if !ps_is_n_generic(&ctx, a, b, 2) {
                    continue;
                }
                // digits of −a and −b, then the two embedding values
                let digits = |x: i64| {
                    let v = (-x).rem_euclid(n);
                    (v % pi, v / pi)
                };
                let ((a0, a1), (b0, b1)) = (digits(a), digits(b));
                let va = [a0 + pi * a1, a1 + pi * a0];
                let vb = [b0 + pi * b1, b1 + pi * b0];
                ensure(va[0] != vb[0] && va[1] != vb[1], || format!("p={p} ({a},{b}): tie"))?;
                let o = orientation(&ctx, a, b).map_err(|e| format!("p={p} ({a},{b}): {e}"))?;
                let want = |i: usize| if va[i] > vb[i] { W2::Id } else { W2::S };
                ensure(o.w0 == want(0) && o.w1 == want(1), || format!("p={p} ({a},{b}): {o:?}"))?;
            }
        }
    }
    Ok(())
}

fn hss_criterion() -> Outcome {
    for p in [2u64, 3, 5, 7, 11] {
        for f in [1u32, 2] {
            let ctx = PrimeCtx::new(p, f).unwrap();
            for r in 0..ctx.n() as i64 {
                for l in ctx.nonzero_elements() {
                    let chi = TChar::new(&ctx, r, l.clone()).unwrap();
                    let hyp = hss_induction_status(&ctx, &chi) == DeformStatus::Isomorphism;
                    // χ̄ = ω on ⟨p²⟩ × Z_p^× iff λ² = 1 and u^r = u for all u ∈ F_p^×
                    let on_units = (1..p).all(|u| (0..r).fold(1u64, |acc, _| acc * u % p) == u % p);
                    let differs = !(&l * &l).is_one() || !on_units;
                    ensure(hyp == differs && hss_norm_oracle(&ctx, &chi) == differs, || {
                        format!("p={p} f={f} r={r} λ={l:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Exhaustive search for `x, y` in the maximal ideal with `xy ∈ −p·R^×`.
fn w_solvable(ring: &std::sync::Arc<LocalRing>) -> bool {
    let m = ring.max_ideal_elements();
    let units: Vec<_> = ring.elements().filter(|u| u.is_unit()).collect();
    let minus_p = ring.from_int(-(ring.p() as i64));
    let targets: HashSet<_> = units.iter().map(|u| &minus_p * u).collect();
    m.iter().any(|x| m.iter().any(|y| targets.contains(&(x * y))))
}

fn kisin_gauge_invariants() -> Outcome {
    for p in [3u64, 5] {
        let rings = [
            ("F_p", LocalRing::finite_field(p, 1).unwrap()),
            ("F_p2", LocalRing::finite_field(p, 2).unwrap()),
            ("GR(p2,2)", LocalRing::galois_ring(p, 2, 2).unwrap()),
            ("ramified", LocalRing::eisenstein(p, 2, 2).unwrap()),
        ];
        for (name, ring) in &rings {
            let sampler = GaugeSampler::new(ring);
            for shape in Shape::ALL {
                let batch = sampler.sample_batch(shape, 1000 + p, 1000);
                if shape == Shape::W && !w_solvable(ring) {
                    ensure(matches!(batch, Err(KisinError::Solvability(_))), || {
                        format!("p={p} {name}: w sampled over a ring with no admissible diagonal")
                    })?;
                    continue;
                }
                let batch = batch.map_err(|e| format!("p={p} {name} {shape}: {e}"))?;
                ensure(batch.len() == 1000, || "short batch".into())?;
                for g in &batch {
                    let a = g.matrix();
                    let ctx = || format!("p={p} {name} {shape}: {a:?}");
                    ensure(det_height_check(a).is_some(), ctx)?;
                    ensure(detect_shape(a).ok() == Some(shape), ctx)?;
                    let partner = polarisation_partner(g).map_err(|e| e.to_string())?;
                    ensure(check_polarisation(partner.matrix(), a), ctx)?;
                    ensure(partner.shape() == shape, ctx)?;
                    ensure(polarisation_partner(&partner).ok().as_ref() == Some(g), ctx)?;
                }
            }
        }
        let zp2 = LocalRing::galois_ring(p, 2, 1).unwrap();
        ensure(!w_solvable(&zp2), || format!("p={p}: Z/p² admits w"))?;
        ensure(matches!(sample_gauge(Shape::W, &zp2, 0), Err(KisinError::Solvability(_))), || {
            format!("p={p}: w over Z/p² did not report solvability")
        })?;
    }
    Ok(())
}

fn defring_table() -> Outcome {
    let unit = |n: &str| json!({"name": n, "kind": "unit"});
    let want = [
        (
            Shape::T,
            json!({"base": "O", "gens": [{"name": "c21", "kind": "unrestricted"}, unit("c11"), unit("c22")],
                   "relations": [], "extra": [2, 4]}),
        ),
        (
            Shape::TPrime,
            json!({"base": "O", "gens": [{"name": "c12", "kind": "unrestricted"}, unit("c11"), unit("c22")],
                   "relations": [], "extra": [2, 4]}),
        ),
        (
            Shape::W,
            json!({"base": "O", "gens": [{"name": "c11", "kind": "maximal-ideal"},
                   {"name": "c22", "kind": "maximal-ideal"}, unit("c12"), unit("c21")],
                   "relations": ["c11*c22 + p"], "extra": [2, 4]}),
        ),
    ];
    for (shape, presentation) in want {
        let rec = explicit_defring(shape);
        let got = serde_json::to_value(&rec).unwrap();
        ensure(got["presentation"] == presentation, || format!("{shape}: {}", got["presentation"]))?;
        ensure(got["galois_iso_note"] == json!({"left_extra_vars": 2, "right_extra_vars": 4}), || {
            format!("{shape}: iso note")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("extension count", extension_count, Duration::from_secs(1)),
        ("semisimplification boundary", semisimplification_boundary, Duration::from_secs(1)),
        ("classification counts", classification_counts, Duration::from_secs(1)),
        ("correspondence well-defined", correspondence_well_defined, Duration::from_secs(30)),
        ("equivalence oracles agree", equivalence_oracles_agree, Duration::from_secs(300)),
        ("weyl triviality", weyl_triviality, Duration::from_secs(60)),
        ("ftsd characterisation", ftsd_characterisation, Duration::from_secs(10)),
        ("orientation uniqueness", orientation_uniqueness, Duration::from_secs(10)),
        ("hss criterion", hss_criterion, Duration::from_secs(5)),
        ("kisin gauge invariants", kisin_gauge_invariants, Duration::from_secs(30)),
        ("deformation ring table", defring_table, Duration::from_secs(1)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= *limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS [{}] {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
