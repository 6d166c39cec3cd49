use serde_json::{json, Value};

use u11_langlands::galois::{self, CParamNS, GaloisError};
use u11_langlands::kisin::{self, KisinError, KisinPair};
use u11_langlands::reps::{self, PacketIndex, RepsError};

use crate::suites::{self, Violation};
use crate::{require, CliError, Command, Config};

type Dispatched = Result<(Value, Vec<Violation>), CliError>;

fn reps_err(e: RepsError) -> CliError {
    CliError::domain("reps", e)
}

fn galois_err(e: GaloisError) -> CliError {
    let kind = match e {
        GaloisError::Capacity { .. } => "capacity",
        GaloisError::Precondition(_) => "precondition",
        _ => "galois",
    };
    CliError::domain(kind, e)
}

fn kisin_err(e: KisinError) -> CliError {
    let kind = match e {
        KisinError::Solvability(_) => "solvability",
        KisinError::Height => "height",
        _ => "kisin",
    };
    CliError::domain(kind, e)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

pub fn dispatch(cmd: &Command, cfg: &Config) -> Dispatched {
    let results = match cmd {
        Command::Classify => classify(cfg)?,
        Command::Packet => packet(cfg)?,
        Command::Correspond => correspond(cfg)?,
        Command::ParamEquiv => param_equiv(cfg)?,
        Command::Generic => generic(cfg)?,
        Command::Orientation => orientation(cfg)?,
        Command::Ftsd => ftsd(cfg)?,
        Command::Shape => shape(cfg)?,
        Command::Polarise => polarise(cfg)?,
        Command::Defring => {
            let s = require(cfg.shape, "--shape")?;
            to_json(&kisin::explicit_defring(s.into()))
        }
        Command::Verify { suite } => return suites::verify(*suite, cfg),
    };
    Ok((results, Vec::new()))
}

fn classify(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.ctx()?;
    let labels = reps::classify_all(&ctx);
    Ok(json!({"count": labels.len(), "labels": labels}))
}

fn packet_index(cfg: &Config, ctx: &u11_langlands::arith::PrimeCtx) -> Result<PacketIndex, CliError> {
    let r = require(cfg.r, "--r")?;
    let k = require(cfg.k, "--k")?;
    PacketIndex::new(ctx, r, cfg.lambda(ctx)?, k).map_err(reps_err)
}

fn packet(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.ctx()?;
    let idx = packet_index(cfg, &ctx)?;
    let factors = reps::packet(&ctx, &idx).map_err(reps_err)?;
    Ok(json!({"index": idx, "factors": factors}))
}

fn correspond(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.odd_ctx()?;
    let idx = packet_index(cfg, &ctx)?;
    let param = galois::param_for_packet(&ctx, &idx);
    let fiber = galois::packets_for_param(&ctx, &param);
    let factors = reps::packet(&ctx, &idx).map_err(reps_err)?;
    Ok(json!({
        "packet": idx,
        "parameter": param,
        "fiber": fiber,
        "packet_factors": factors,
    }))
}

fn cparam(cfg: &Config, ctx: &u11_langlands::arith::PrimeCtx) -> Result<CParamNS, CliError> {
    let r = require(cfg.r, "--r")?;
    CParamNS::new(ctx, r, cfg.lambda(ctx)?).map_err(galois_err)
}

fn param_equiv(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.odd_ctx()?;
    let x = cparam(cfg, &ctx)?;
    let p = ctx.p() as i64;
    let li = x.lambda().inverse()?;
    let partner = CParamNS::new(&ctx, galois::cparam_partner_r(&ctx, x.r()).as_i64(), li.clone())
        .map_err(galois_err)?;
    let literal = CParamNS::new(&ctx, -p * x.r().as_i64(), li).map_err(galois_err)?;
    // conjugacy search confirms both candidates when the field is small enough
    let search = |y: &CParamNS| match galois::cparam_equiv_bruteforce(&ctx, &x.lift(&ctx), &y.lift(&ctx)) {
        Ok(b) => Value::Bool(b),
        Err(GaloisError::Capacity { .. }) => Value::Null,
        Err(e) => Value::String(e.to_string()),
    };
    Ok(json!({
        "parameter": x,
        "partner": partner,
        "partner_conjugate": search(&partner),
        "literal_rule_partner": literal,
        "literal_rule_conjugate": search(&literal),
        "c_inertia": galois::c_inertia(&ctx, &x),
    }))
}

fn generic(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.odd_ctx()?;
    let n = require(cfg.n, "--n")?;
    if let (Some(a), Some(b)) = (cfg.a, cfg.b) {
        return Ok(json!({
            "type": {"a": ctx.exp(a).value(), "b": ctx.exp(b).value()},
            "n": n,
            "generic": galois::ps_is_n_generic(&ctx, a, b, n),
        }));
    }
    let x = cparam(cfg, &ctx)?;
    let witness = galois::n_generic_witness(&ctx, &x, n);
    Ok(json!({
        "parameter": x,
        "n": n,
        "generic": witness.is_some(),
        "witness": witness,
    }))
}

fn orientation(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.odd_ctx()?;
    let a = require(cfg.a, "--a")?;
    let b = require(cfg.b, "--b")?;
    let o = galois::orientation(&ctx, a, b).map_err(galois_err)?;
    Ok(json!({
        "embedding_values": {
            "a": galois::embedding_values(&ctx, a),
            "b": galois::embedding_values(&ctx, b),
        },
        "orientation": o,
    }))
}

fn ftsd(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.odd_ctx()?;
    let a = require(cfg.a, "--a")?;
    let b = require(cfg.b, "--b")?;
    let t = galois::PSInertialType::new(&ctx, a, b);
    Ok(json!({
        "type": {"a": t.a().value(), "b": t.b().value()},
        "principal_series": t.is_principal_series(),
        "ftsd": t.is_ftsd(&ctx),
    }))
}

fn shape(cfg: &Config) -> Result<Value, CliError> {
    if cfg.p == 2 {
        return Err(CliError::domain("arith", "p must be odd for this command"));
    }
    let ring = cfg.ring()?;
    let s = require(cfg.shape, "--shape")?;
    let g = kisin::sample_gauge(s.into(), &ring, cfg.seed).map_err(kisin_err)?;
    let unit = kisin::det_height_check(g.matrix());
    let pair = KisinPair::polarised(g.clone()).map_err(kisin_err)?;
    Ok(json!({
        "matrix": g,
        "detected_shape": kisin::detect_shape(g.matrix()).map_err(kisin_err)?,
        "det_unit": unit,
        "partner": pair.a0(),
        "polarised": pair.is_polarised(),
        "reduction": g.reduce(),
    }))
}

fn polarise(cfg: &Config) -> Result<Value, CliError> {
    let ctx = cfg.odd_ctx()?;
    let x = cparam(cfg, &ctx)?;
    let (rho2, theta) = galois::base_change(&ctx, &x);
    let alpha = galois::polarisation_of(&ctx, &x);
    let ok = galois::verify_polarisation(&ctx, &rho2, &theta, &alpha).map_err(galois_err)?;
    Ok(json!({
        "parameter": x,
        "base_change": rho2,
        "multiplier": theta,
        "alpha": alpha,
        "verified": ok,
    }))
}
