//! Both sides of the classical explicit formula for the Riemann zeta
//! function:
//!
//! ```text
//! Φ(0) − Σ_ρ Φ(ρ) + Φ(1) = Σ_p log p Σ_{k≥1} α(k log p)
//!                         + Σ_p log p Σ_{k≤−1} p^k α(k log p) + W_∞(α)
//! ```
//!
//! Zeros come from an ingested table of ordinates `γ` (zeros `1/2 ± iγ`)
//! and are summed in ascending order, one conjugate pair at a time.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{Route, SideValue};
use crate::quadrature::{integrate, QuadError, Tolerance};
use crate::test_function::TestFunction;

/// Largest sieve bound accepted.
pub const SIEVE_CAP: u64 = 100_000_000;

/// Default split point between the regularized and the plain integrand.
pub const DEFAULT_DELTA: f64 = 1e-3;

/// `Φ` values whose rigorous decay bound is below this are not integrated.
const NEGLIGIBLE_PHI: f64 = 1e-18;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Error)]
pub enum RiemannError {
    #[error("cannot read zero table {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: cannot parse {text:?} as a number")]
    Parse { line: usize, text: String },
    #[error("line {line}: {value} is not above the previous entry")]
    NotAscending { line: usize, value: f64 },
    #[error("line {line}: zero ordinate {value} must be positive and finite")]
    NonPositive { line: usize, value: f64 },
    #[error("K = {k} exceeds the {available} zeros in the table")]
    TooFewZeros { k: usize, available: usize },
    #[error("K values must be ascending")]
    UnsortedK,
    #[error("support reaches log {bound}, above the sieve cap {cap}")]
    SieveTooLarge { bound: f64, cap: u64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroTable {
    pub gammas: Vec<f64>,
    pub source_path: String,
    /// Set when the first ordinate is outside `(14, 15)`, i.e. the table
    /// probably does not start at the first zero.
    pub suspicious_start: bool,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// Parse one ordinate per line; blank lines and `#` comments are skipped.
pub fn parse_zeros(text: &str, source_path: &str) -> Result<ZeroTable, RiemannError> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let value: f64 = body
            .parse()
            .map_err(|_| RiemannError::Parse { line, text: body.to_string() })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(RiemannError::NonPositive { line, value });
        }
        if gammas.last().is_some_and(|&prev| value <= prev) {
            return Err(RiemannError::NotAscending { line, value });
        }
        gammas.push(value);
    }
    let suspicious_start = gammas.first().is_some_and(|&g| !(g > 14.0 && g < 15.0));
    Ok(ZeroTable { gammas, source_path: source_path.to_string(), suspicious_start })
}

pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable, RiemannError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| RiemannError::Io { path: display.clone(), source })?;
    parse_zeros(&text, &display)
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: i64,
}

/// All `(p, k)`, `k ≠ 0`, with `k log p` in the support of `α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimePowerGrid {
    pub p_max: u64,
    pub entries: Vec<PrimePower>,
}

impl PrimePowerGrid {
    pub fn new(alpha: &TestFunction) -> Result<Self, RiemannError> {
        let Some((lo, hi)) = alpha.support() else {
            return Ok(Self { p_max: 1, entries: Vec::new() });
        };
        let reach = hi.max(-lo).max(0.0);
        let bound = reach.exp();
        if bound > SIEVE_CAP as f64 {
            return Err(RiemannError::SieveTooLarge { bound, cap: SIEVE_CAP });
        }
        let p_max = bound.floor() as u64;
        let mut entries = Vec::new();
        for p in primes_up_to(p_max) {
            let log_p = (p as f64).ln();
            let k_lo = (lo / log_p).ceil() as i64;
            let k_hi = (hi / log_p).floor() as i64;
            for k in k_lo..=k_hi {
                let t = k as f64 * log_p;
                if k != 0 && t > lo && t < hi {
                    entries.push(PrimePower { p, k });
                }
            }
        }
        Ok(Self { p_max, entries })
    }
}

/// `E_1(x)` for `x > 0`: power series below 1, continued fraction above.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 needs a positive argument");
    if x <= 1.0 {
        -EULER_GAMMA - x.ln() + ein(x)
    } else {
        // modified Lentz on e^{−x} / (x + 1 − 1/(x + 3 − 4/(x + 5 − …)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// `Ein(x) = ∫_0^x (1 − e^{−t})/t dt = Σ_{k≥1} (−1)^{k+1} x^k / (k·k!)`.
pub fn ein(x: f64) -> f64 {
    let mut term = 1.0;
    let mut total = 0.0;
    for k in 1..200 {
        term *= x / k as f64;
        let contrib = term / k as f64;
        total += if k % 2 == 1 { contrib } else { -contrib };
        if contrib.abs() < 1e-17 * total.abs() {
            break;
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WInfty {
    pub value: f64,
    pub quadrature_error: f64,
}

/// `W_∞(α) = α(0) log π + ∫_0^∞ [(α(t) + e^{−t}α(−t))/(1 − e^{−2t}) − α(0)e^{−2t}/t] dt`.
///
/// On `(0, δ]` the integrand is split as `G(t) + α(0)(1 − e^{−2t})/t` with
/// `G(t) = (α(t) + e^{−t}α(−t))/(1 − e^{−2t}) − α(0)/t` bounded (replaced by
/// its Taylor expansion below `10⁻⁴`), and the second piece integrates to
/// `α(0) Ein(2δ)`. Beyond the support only `−α(0)e^{−2t}/t` remains, which
/// integrates to `−α(0) E_1(2R)`.
pub fn w_infty_with_delta(alpha: &TestFunction, delta: f64) -> Result<WInfty, RiemannError> {
    if alpha.is_zero() {
        return Ok(WInfty { value: 0.0, quadrature_error: 0.0 });
    }
    let a0 = alpha.eval(0.0);
    let a1 = alpha.derivative(0.0, 1);
    let a2 = alpha.derivative(0.0, 2);
    let pair = |t: f64| alpha.eval(t) + (-t).exp() * alpha.eval(-t);
    let taylor_cut = 1e-4_f64.min(delta);
    let regular = |t: f64| {
        if t < taylor_cut {
            0.5 * a0 + 0.5 * t * (a0 / 6.0 + a1 + a2)
        } else {
            pair(t) / -(-2.0 * t).exp_m1() - a0 / t
        }
    };
    let tol = Tolerance { abs: 1e-14, rel: 1e-13 };
    let near = integrate(regular, &[0.0, taylor_cut, delta], tol)?;

    let radius = alpha.support_radius().max(delta);
    let mut breaks = vec![delta, radius];
    for b in alpha.terms() {
        for end in [b.center - b.half_width, b.center + b.half_width] {
            if end.abs() > delta && end.abs() < radius {
                breaks.push(end.abs());
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let full = |t: f64| pair(t) / -(-2.0 * t).exp_m1() - a0 * (-2.0 * t).exp() / t;
    let middle = integrate(full, &breaks, tol)?;

    let value = a0 * PI.ln() + near.value + a0 * ein(2.0 * delta) + middle.value - a0 * exp_integral_e1(2.0 * radius);
    Ok(WInfty { value, quadrature_error: near.error + middle.error })
}

pub fn w_infty(alpha: &TestFunction) -> Result<WInfty, RiemannError> {
    w_infty_with_delta(alpha, DEFAULT_DELTA)
}

/// Prime-power sums plus `W_∞(α)`.
pub fn geometric_side_riemann(alpha: &TestFunction) -> Result<SideValue, RiemannError> {
    let grid = PrimePowerGrid::new(alpha)?;
    let mut total = 0.0;
    for &PrimePower { p, k } in &grid.entries {
        let log_p = (p as f64).ln();
        let weight = if k < 0 { (p as f64).powi(k as i32) } else { 1.0 };
        total += log_p * weight * alpha.eval(k as f64 * log_p);
    }
    let w = w_infty(alpha)?;
    Ok(SideValue {
        value: Complex64::new(total + w.value, 0.0),
        truncation_error: 0.0,
        quadrature_error: w.quadrature_error,
        route: Route::Geometric,
    })
}

/// `Φ(1/2 + iγ) + Φ(1/2 − iγ) = 2 Re Φ(1/2 + iγ)` for each ordinate.
fn zero_pair_terms(alpha: &TestFunction, gammas: &[f64]) -> Result<Vec<(f64, f64)>, RiemannError> {
    gammas
        .iter()
        .map(|&g| {
            let phi = alpha.phi_or_negligible(Complex64::new(0.5, g), NEGLIGIBLE_PHI)?;
            Ok((2.0 * phi.value.re, 2.0 * phi.quad_error))
        })
        .collect()
}

fn spectral_from_terms(alpha: &TestFunction, terms: &[(f64, f64)]) -> Result<SideValue, RiemannError> {
    let p0 = alpha.phi(Complex64::new(0.0, 0.0))?;
    let p1 = alpha.phi(Complex64::new(1.0, 0.0))?;
    let mut value = p0.value.re + p1.value.re;
    let mut quad = p0.quad_error + p1.quad_error;
    for &(v, e) in terms {
        value -= v;
        quad += e;
    }
    let tail = terms.iter().rev().take(10).map(|t| t.0).sum::<f64>().abs();
    Ok(SideValue {
        value: Complex64::new(value, 0.0),
        truncation_error: tail,
        quadrature_error: quad,
        route: Route::Spectral,
    })
}

/// `Φ(0) + Φ(1) − Σ_{j≤K} [Φ(1/2 + iγ_j) + Φ(1/2 − iγ_j)]`. The truncation
/// error is the magnitude of the last ten pair terms, a heuristic only.
pub fn spectral_side_riemann(alpha: &TestFunction, zeros: &ZeroTable, k: usize) -> Result<SideValue, RiemannError> {
    if k > zeros.len() {
        return Err(RiemannError::TooFewZeros { k, available: zeros.len() });
    }
    let terms = zero_pair_terms(alpha, &zeros.gammas[..k])?;
    spectral_from_terms(alpha, &terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualPoint {
    pub k: usize,
    pub residual: f64,
    pub spectral: f64,
}

/// `|spectral(K) − geometric|` for each `K`, from one pass over the zeros.
pub fn residual_curve(
    alpha: &TestFunction,
    zeros: &ZeroTable,
    ks: &[usize],
) -> Result<(SideValue, Vec<ResidualPoint>), RiemannError> {
    if ks.windows(2).any(|w| w[1] < w[0]) {
        return Err(RiemannError::UnsortedK);
    }
    let k_max = ks.last().copied().unwrap_or(0);
    if k_max > zeros.len() {
        return Err(RiemannError::TooFewZeros { k: k_max, available: zeros.len() });
    }
    let geometric = geometric_side_riemann(alpha)?;
    let terms = zero_pair_terms(alpha, &zeros.gammas[..k_max])?;
    let points = ks
        .iter()
        .map(|&k| {
            let side = spectral_from_terms(alpha, &terms[..k])?;
            Ok(ResidualPoint { k, residual: (side.value.re - geometric.value.re).abs(), spectral: side.value.re })
        })
        .collect::<Result<_, RiemannError>>()?;
    Ok((geometric, points))
}
