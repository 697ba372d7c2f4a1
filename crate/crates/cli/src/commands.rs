use std::io::Write;

use explicit_formula_core::curve::{
    closed_points, closed_points_oracle, frobenius_trace, prime_power_decompose, ClosedPointTable, Curve,
};
use explicit_formula_core::field::DEFAULT_ENUMERATION_CAP;
use explicit_formula_core::formula::{
    dolbeault_orbit_side, dolbeault_poisson, geometric_side_ff, orbit_spectrum, poisson_closed_form_ff,
    required_n_max, verify_identity, Identity,
};
use explicit_formula_core::report::{alpha_record, CurveRecord, IdentityRecord, RouteRecord};
use explicit_formula_core::riemann::{
    geometric_side_riemann, load_zeros, residual_curve, spectral_side_riemann, w_infty, WInfty, ZeroTable,
};
use explicit_formula_core::spectral::FrobeniusData;
use explicit_formula_core::test_function::{Bump, TestFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{RunConfig, DEFAULT_ORACLE_DEPTH, DEFAULT_ORACLE_SWEEP, DEFAULT_ORBIT_DEPTH};
use crate::error::CliError;

/// Tolerance for routes that are the same finite sum regrouped.
const EXACT_TOLERANCE: f64 = 1e-10;

const VERSION: &str = env!("CARGO_PKG_VERSION");

struct CurveData {
    fd: FrobeniusData,
    record: CurveRecord,
    curve: Option<Curve>,
}

fn resolve_curve(cfg: &RunConfig) -> Result<CurveData, CliError> {
    if let Some(cc) = &cfg.curve {
        let curve = cc.build()?;
        let a = frobenius_trace(&curve, DEFAULT_ENUMERATION_CAP)?;
        let fd = FrobeniusData::new(a, curve.q())?;
        Ok(CurveData { fd, record: CurveRecord { p: cc.p, r: cc.r, a }, curve: Some(curve) })
    } else if let Some(t) = cfg.trace {
        let (p, r) = prime_power_decompose(t.q)?;
        let fd = FrobeniusData::new(t.a, t.q)?;
        Ok(CurveData { fd, record: CurveRecord { p, r, a: t.a }, curve: None })
    } else {
        Err(CliError::Input("no curve: give a [curve] or [trace] table".into()))
    }
}

fn configured_alpha(cfg: &RunConfig) -> Result<Option<TestFunction>, CliError> {
    if cfg.alpha.is_empty() {
        return Ok(None);
    }
    let bumps = cfg.alpha.iter().map(|&[a, c, h]| Bump::new(a, c, h)).collect();
    Ok(Some(TestFunction::new(bumps)?))
}

/// Single bumps with support inside `(−3 log q, 3 log q)`.
pub fn random_bumps(seed: u64, count: usize, log_q: f64) -> Vec<TestFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = rng.gen_range(0.2..0.9) * log_q;
            let reach = 3.0 * log_q - h;
            let c = rng.gen_range(-reach..reach) * 0.999;
            let a = rng.gen_range(-2.0..2.0);
            TestFunction::single(Bump::new(a, c, h)).expect("valid bump")
        })
        .collect()
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Failure(format!("cannot write to stdout: {e}")))
        }
    }
}

fn emit_json<T: Serialize>(cfg: &RunConfig, doc: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| CliError::Failure(e.to_string()))?;
    text.push('\n');
    emit(cfg, &text)
}

#[derive(Serialize)]
struct FfDocument<'a> {
    version: &'static str,
    config: &'a RunConfig,
    reports: Vec<IdentityRecord>,
    pass: bool,
}

pub fn verify_ff(cfg: &RunConfig) -> Result<bool, CliError> {
    let data = resolve_curve(cfg)?;
    let identities = match cfg.identity.as_str() {
        "all" => vec![Identity::Eq2, Identity::Cor34, Identity::Thm41],
        name => vec![name.parse::<Identity>().map_err(CliError::Input)?],
    };
    let mut alphas: Vec<TestFunction> = configured_alpha(cfg)?.into_iter().collect();
    alphas.extend(random_bumps(cfg.seed, cfg.sweep, data.fd.log_q()));
    if alphas.is_empty() {
        return Err(CliError::Input("no test function: give alpha triples or a sweep count".into()));
    }
    let q = data.fd.q;
    let n_max = cfg
        .n_max
        .unwrap_or_else(|| alphas.iter().map(|a| required_n_max(q, a)).max().unwrap_or(1));
    let table = closed_points(data.fd.a, q, n_max)?;
    let mut reports = Vec::new();
    for alpha in &alphas {
        for &which in &identities {
            let report = verify_identity(which, &data.fd, &table, alpha, cfg.epsilon)?;
            reports.push(IdentityRecord::new(&report, data.record, alpha));
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    emit_json(cfg, &FfDocument { version: VERSION, config: cfg, reports, pass })?;
    Ok(pass)
}

fn load_table(cfg: &RunConfig) -> Result<ZeroTable, CliError> {
    let path = cfg
        .zeros_file
        .as_ref()
        .ok_or_else(|| CliError::Input("no zero table: pass --zeros-file".into()))?;
    let table = load_zeros(path)?;
    if table.suspicious_start {
        eprintln!("warning: first zero ordinate is not in (14, 15); is the table complete?");
    }
    Ok(table)
}

fn require_alpha(cfg: &RunConfig) -> Result<TestFunction, CliError> {
    configured_alpha(cfg)?.ok_or_else(|| CliError::Input("no test function: give alpha triples".into()))
}

#[derive(Serialize)]
struct ZeroSummary {
    count: usize,
    suspicious_start: bool,
}

#[derive(Serialize)]
struct RiemannDocument<'a> {
    version: &'static str,
    config: &'a RunConfig,
    alpha: Vec<[f64; 3]>,
    zeros: ZeroSummary,
    k: usize,
    routes: Vec<RouteRecord>,
    w_infty: WInfty,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

pub fn verify_riemann(cfg: &RunConfig) -> Result<bool, CliError> {
    let zeros = load_table(cfg)?;
    let alpha = require_alpha(cfg)?;
    let k = cfg.k_list.as_ref().and_then(|ks| ks.iter().max().copied()).unwrap_or(zeros.len());
    let spectral = spectral_side_riemann(&alpha, &zeros, k)?;
    let geometric = geometric_side_riemann(&alpha)?;
    let residual = (spectral.value - geometric.value).norm();
    let pass = residual <= cfg.tolerance;
    emit_json(
        cfg,
        &RiemannDocument {
            version: VERSION,
            config: cfg,
            alpha: alpha_record(&alpha),
            zeros: ZeroSummary { count: zeros.len(), suspicious_start: zeros.suspicious_start },
            k,
            routes: vec![RouteRecord::from(&spectral), RouteRecord::from(&geometric)],
            w_infty: w_infty(&alpha)?,
            residual,
            tolerance: cfg.tolerance,
            pass,
        },
    )?;
    Ok(pass)
}

/// Powers of ten below the table size, then the table size itself.
fn default_k_list(len: usize) -> Vec<usize> {
    let mut ks: Vec<usize> = std::iter::successors(Some(10usize), |k| k.checked_mul(10))
        .take_while(|&k| k < len)
        .collect();
    ks.push(len);
    ks
}

pub fn residual_curve_csv(cfg: &RunConfig) -> Result<bool, CliError> {
    let zeros = load_table(cfg)?;
    let alpha = require_alpha(cfg)?;
    let ks = cfg.k_list.clone().unwrap_or_else(|| default_k_list(zeros.len()));
    let (_, points) = residual_curve(&alpha, &zeros, &ks)?;
    let mut text = String::from("K,residual\n");
    for p in points {
        text.push_str(&format!("{},{:e}\n", p.k, p.residual));
    }
    emit(cfg, &text)?;
    Ok(true)
}

pub fn orbits_csv(cfg: &RunConfig) -> Result<bool, CliError> {
    let data = resolve_curve(cfg)?;
    let table = closed_points(data.fd.a, data.fd.q, cfg.n_max.unwrap_or(DEFAULT_ORBIT_DEPTH))?;
    let mut text = String::from("n,length,multiplicity\n");
    for e in orbit_spectrum(&table).entries {
        text.push_str(&format!("{},{},{}\n", e.n, e.length, e.multiplicity));
    }
    emit(cfg, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct ExactCheck {
    alpha: Vec<[f64; 3]>,
    poisson_vs_geometric: f64,
    dolbeault_poisson_vs_orbit: f64,
    pass: bool,
}

#[derive(Serialize)]
struct OracleDocument<'a> {
    version: &'static str,
    config: &'a RunConfig,
    curve: CurveRecord,
    closed_points: ClosedPointTable,
    oracle: ClosedPointTable,
    counts_match: bool,
    exact_identities: Vec<ExactCheck>,
    pass: bool,
}

pub fn oracle_check(cfg: &RunConfig) -> Result<bool, CliError> {
    let data = resolve_curve(cfg)?;
    let curve = data
        .curve
        .as_ref()
        .ok_or_else(|| CliError::Input("oracle-check needs explicit [curve] coefficients".into()))?;
    let n_max = cfg.n_max.unwrap_or(DEFAULT_ORACLE_DEPTH);
    let moebius = closed_points(data.fd.a, data.fd.q, n_max)?;
    let oracle = closed_points_oracle(curve, n_max, DEFAULT_ENUMERATION_CAP)?;
    let counts_match = moebius == oracle;

    let sweep = if cfg.sweep > 0 { cfg.sweep } else { DEFAULT_ORACLE_SWEEP };
    let mut exact_identities = Vec::new();
    for alpha in random_bumps(cfg.seed, sweep, data.fd.log_q()) {
        let table = closed_points(data.fd.a, data.fd.q, required_n_max(data.fd.q, &alpha))?;
        let pg = (poisson_closed_form_ff(&data.fd, &alpha)?.value - geometric_side_ff(&table, &alpha, 1)?.value).norm();
        let dd = (dolbeault_poisson(&data.fd, &alpha)?.value - dolbeault_orbit_side(&data.fd, &table, &alpha)?.value)
            .norm();
        exact_identities.push(ExactCheck {
            alpha: alpha_record(&alpha),
            poisson_vs_geometric: pg,
            dolbeault_poisson_vs_orbit: dd,
            pass: pg <= EXACT_TOLERANCE && dd <= EXACT_TOLERANCE,
        });
    }
    let pass = counts_match && exact_identities.iter().all(|c| c.pass);
    emit_json(
        cfg,
        &OracleDocument {
            version: VERSION,
            config: cfg,
            curve: data.record,
            closed_points: moebius,
            oracle,
            counts_match,
            exact_identities,
            pass,
        },
    )?;
    Ok(pass)
}
