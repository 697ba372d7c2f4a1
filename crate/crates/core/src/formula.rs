//! Both sides of the function-field explicit formula for an elliptic curve,
//! its closed-orbit form and the holomorphic index identity, each by
//! several routes:
//!
//! * spectral: truncated sums of `Φ` over vertical families of zeros and
//!   poles, with a rigorous tail bound;
//! * geometric: finite sums of `α` over closed points (or closed orbits);
//! * Poisson: the lattice form `log q · Σ_n c_n α(n log q)` with exact
//!   integer coefficients.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{closed_points, point_counts_tower, ClosedPointTable, CurveError};
use crate::quadrature::QuadError;
use crate::spectral::{FrobeniusData, SpectralError};
use crate::test_function::{TestFunction, TestFunctionError};

/// Largest `V` tried when truncating a vertical family.
pub const MAX_TRUNCATION_LEVEL: i64 = 200_000;

/// Slack added to every pairwise residual budget for floating regrouping.
pub const REGROUPING_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormulaError {
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("closed-point table up to degree {n_max} does not cover support radius {radius} (log q = {log_q})")]
    NInsufficient { n_max: usize, radius: f64, log_q: f64 },
    #[error("table is for q = {table} but the eigenvalues are for q = {frobenius}")]
    Mismatch { table: u64, frobenius: u64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    NoConvergence(#[from] TestFunctionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Spectral,
    Geometric,
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideValue {
    pub value: Complex64,
    pub truncation_error: f64,
    pub quadrature_error: f64,
    pub route: Route,
}

impl SideValue {
    fn exact(value: Complex64, route: Route) -> Self {
        Self { value, truncation_error: 0.0, quadrature_error: 0.0, route }
    }

    pub fn error_budget(&self) -> f64 {
        self.truncation_error + self.quadrature_error
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitEntry {
    /// `n · log q`
    pub length: f64,
    pub multiplicity: u128,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSpectrum {
    pub log_q: f64,
    pub n_max: usize,
    pub entries: Vec<OrbitEntry>,
}

/// Closed orbits: one entry of length `n log q` and multiplicity `a_n` per
/// degree with `a_n > 0`.
pub fn orbit_spectrum(table: &ClosedPointTable) -> OrbitSpectrum {
    let log_q = (table.q as f64).ln();
    let entries = (1..=table.n_max)
        .filter(|&n| table.count(n) > 0)
        .map(|n| OrbitEntry { length: n as f64 * log_q, multiplicity: table.count(n), n })
        .collect();
    OrbitSpectrum { log_q, n_max: table.n_max, entries }
}

fn check_epsilon(epsilon: f64) -> Result<(), FormulaError> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(FormulaError::BadEpsilon(epsilon))
    }
}

fn check_coverage(table: &ClosedPointTable, alpha: &TestFunction) -> Result<(), FormulaError> {
    let log_q = (table.q as f64).ln();
    let radius = alpha.support_radius();
    if alpha.is_zero() || table.n_max as f64 * log_q > radius {
        Ok(())
    } else {
        Err(FormulaError::NInsufficient { n_max: table.n_max, radius, log_q })
    }
}

/// Integers `k` with `k · step` in the support of `α`, excluding 0.
fn lattice_range(alpha: &TestFunction, step: f64) -> impl Iterator<Item = i64> {
    let (lo, hi) = alpha.support().unwrap_or((0.0, 0.0));
    let (k_lo, k_hi) = if alpha.is_zero() {
        (1, 0)
    } else {
        ((lo / step).ceil() as i64, (hi / step).floor() as i64)
    };
    (k_lo..=k_hi).filter(|&k| k != 0)
}

/// Smallest table degree covering the support of `α`.
pub fn required_n_max(q: u64, alpha: &TestFunction) -> usize {
    let log_q = (q as f64).ln();
    ((alpha.support_radius() / log_q).floor() as usize + 1).max(1)
}

/// One vertical family `{base + iνΔ}` summed over `ν ∈ [nu_lo, nu_hi]`
/// with multiplicity, in the order 0, ±1, ±2, … about the centre.
struct Family {
    base: Complex64,
    multiplicity: f64,
    nu_lo: i64,
    nu_hi: i64,
    tail: f64,
}

fn plan_family(
    alpha: &TestFunction,
    base: Complex64,
    multiplicity: f64,
    spacing: f64,
    budget: f64,
) -> Result<Family, FormulaError> {
    let (v, tail) = alpha.truncation_level(base.re, spacing, budget / multiplicity, MAX_TRUNCATION_LEVEL)?;
    // an offset of exactly half a spacing pairs ν with −ν−1 under conjugation
    let half_offset = (base.im.abs() - 0.5 * spacing).abs() <= 1e-12 * spacing;
    let nu_lo = if half_offset && base.im > 0.0 { -v - 1 } else { -v };
    let nu_hi = if half_offset && base.im < 0.0 { v + 1 } else { v };
    Ok(Family { base, multiplicity, nu_lo, nu_hi, tail: tail * multiplicity })
}

fn sum_family(alpha: &TestFunction, fam: &Family, spacing: f64) -> Result<(Complex64, f64), FormulaError> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad = 0.0;
    for nu in fam.nu_lo..=fam.nu_hi {
        let s = fam.base + Complex64::new(0.0, spacing * nu as f64);
        let phi = alpha.phi(s)?;
        value += phi.value;
        quad += phi.quad_error;
    }
    Ok((value * fam.multiplicity, quad * fam.multiplicity))
}

/// Complex value of `Σ_ν Φ(2πiν/log q) − Σ_ρ Φ(ρ) + Σ_ν Φ(1 + 2πiν/log q)`.
pub fn spectral_sum_ff(
    fd: &FrobeniusData,
    alpha: &TestFunction,
    epsilon: f64,
) -> Result<SideValue, FormulaError> {
    check_epsilon(epsilon)?;
    let spacing = fd.spacing();
    let spec = fd.spectrum();
    let budget = epsilon / 4.0;
    let mut families = vec![
        (1.0, plan_family(alpha, spec.pole_bases[0], 1.0, spacing, budget)?),
        (1.0, plan_family(alpha, spec.pole_bases[1], 1.0, spacing, budget)?),
    ];
    if fd.double_root {
        // one family of multiplicity 2, with the combined budget of two
        families.push((-1.0, plan_family(alpha, spec.zero_bases[0], 2.0, spacing, 2.0 * budget)?));
    } else {
        for base in spec.zero_bases {
            families.push((-1.0, plan_family(alpha, base, 1.0, spacing, budget)?));
        }
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad = 0.0;
    let mut trunc = 0.0;
    for (sign, fam) in &families {
        let (v, e) = sum_family(alpha, fam, spacing)?;
        value += v * *sign;
        quad += e;
        trunc += fam.tail;
    }
    Ok(SideValue { value, truncation_error: trunc, quadrature_error: quad, route: Route::Spectral })
}

/// Spectral side of the explicit formula, reported as a real number.
pub fn spectral_side_ff(
    fd: &FrobeniusData,
    alpha: &TestFunction,
    epsilon: f64,
) -> Result<SideValue, FormulaError> {
    let mut side = spectral_sum_ff(fd, alpha, epsilon)?;
    side.value.im = 0.0;
    Ok(side)
}

/// `α(0)(2 − 2g) log q + Σ_w log Nw Σ_{k≥1} α(k log Nw)
///  + Σ_w log Nw Σ_{k≤−1} Nw^k α(k log Nw)`.
pub fn geometric_side_ff(
    table: &ClosedPointTable,
    alpha: &TestFunction,
    genus: i64,
) -> Result<SideValue, FormulaError> {
    check_coverage(table, alpha)?;
    let q = table.q as f64;
    let log_q = q.ln();
    let mut total = alpha.eval(0.0) * (2 - 2 * genus) as f64 * log_q;
    for d in 1..=table.n_max {
        let count = table.count(d);
        if count == 0 {
            continue;
        }
        let log_norm = d as f64 * log_q;
        let mut inner = 0.0;
        for k in lattice_range(alpha, log_norm) {
            let weight = if k < 0 { q.powi((k * d as i64) as i32) } else { 1.0 };
            inner += weight * alpha.eval(k as f64 * log_norm);
        }
        total += count as f64 * log_norm * inner;
    }
    Ok(SideValue::exact(Complex64::new(total, 0.0), Route::Geometric))
}

/// Lattice coefficient `c_n = 1 − ξ^n − ξ̄^n + q^n` for each `n` with
/// `n log q` in the support: `N_n` for `n ≥ 1`, 0 for `n = 0` and
/// `q^{−m} N_m` for `n = −m`.
pub fn poisson_coefficients(fd: &FrobeniusData, alpha: &TestFunction) -> Result<Vec<(i64, f64)>, FormulaError> {
    let ns: Vec<i64> = lattice_range(alpha, fd.log_q()).collect();
    let m_max = ns.iter().map(|n| n.unsigned_abs() as usize).max().unwrap_or(0);
    let counts = point_counts_tower(fd.a, fd.q, m_max)?;
    let q = fd.q as f64;
    Ok(ns
        .into_iter()
        .map(|n| {
            let m = n.unsigned_abs() as usize;
            let count = counts[m - 1].to_f64().unwrap_or(f64::INFINITY);
            let c = if n > 0 { count } else { count * q.powi(-(m as i32)) };
            (n, c)
        })
        .collect())
}

/// `log q · Σ_n (1 − ξ^n − ξ̄^n + q^n) α(n log q)`, from exact point counts.
pub fn poisson_closed_form_ff(fd: &FrobeniusData, alpha: &TestFunction) -> Result<SideValue, FormulaError> {
    let log_q = fd.log_q();
    let total: f64 = poisson_coefficients(fd, alpha)?
        .into_iter()
        .map(|(n, c)| c * alpha.eval(n as f64 * log_q))
        .sum();
    Ok(SideValue::exact(Complex64::new(log_q * total, 0.0), Route::Poisson))
}

/// `T_0 − T_1 = Σ_ν Φ(2πiν/log q) − Σ_ν Φ(Log_q ξ̄ + 2πiν/log q)`.
pub fn dolbeault_spectral(
    fd: &FrobeniusData,
    alpha: &TestFunction,
    epsilon: f64,
) -> Result<SideValue, FormulaError> {
    check_epsilon(epsilon)?;
    let spacing = fd.spacing();
    let spec = fd.spectrum();
    let budget = epsilon / 2.0;
    let t0 = plan_family(alpha, spec.pole_bases[0], 1.0, spacing, budget)?;
    let t1 = plan_family(alpha, spec.zero_bases[1], 1.0, spacing, budget)?;
    let (v0, e0) = sum_family(alpha, &t0, spacing)?;
    let (v1, e1) = sum_family(alpha, &t1, spacing)?;
    Ok(SideValue {
        value: v0 - v1,
        truncation_error: t0.tail + t1.tail,
        quadrature_error: e0 + e1,
        route: Route::Spectral,
    })
}

/// `log q · Σ_n (1 − ξ̄^n) α(n log q)`, with `ξ̄^{−m} = ξ^m / q^m`.
pub fn dolbeault_poisson(fd: &FrobeniusData, alpha: &TestFunction) -> Result<SideValue, FormulaError> {
    let log_q = fd.log_q();
    let one = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for n in lattice_range(alpha, log_q) {
        total += (one - fd.xi_bar_pow(n)) * alpha.eval(n as f64 * log_q);
    }
    Ok(SideValue::exact(total * log_q, Route::Poisson))
}

/// `Σ_w log Nw Σ_{k≥1} (1 − ξ^{k deg w})^{−1} α(k log Nw)
///  + Σ_w log Nw Σ_{k≤−1} q^{k deg w} (1 − ξ^{k deg w})^{−1} α(k log Nw)`.
pub fn dolbeault_orbit_side(
    fd: &FrobeniusData,
    table: &ClosedPointTable,
    alpha: &TestFunction,
) -> Result<SideValue, FormulaError> {
    if table.q != fd.q {
        return Err(FormulaError::Mismatch { table: table.q, frobenius: fd.q });
    }
    check_coverage(table, alpha)?;
    let q = fd.q as f64;
    let log_q = fd.log_q();
    let one = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for d in 1..=table.n_max {
        let count = table.count(d);
        if count == 0 {
            continue;
        }
        let log_norm = d as f64 * log_q;
        let mut inner = Complex64::new(0.0, 0.0);
        for k in lattice_range(alpha, log_norm) {
            let m = k * d as i64;
            let weight = if k < 0 { q.powi(m as i32) } else { 1.0 };
            inner += (one - fd.xi_pow(m)).inv() * weight * alpha.eval(k as f64 * log_norm);
        }
        total += inner * (count as f64 * log_norm);
    }
    Ok(SideValue::exact(total, Route::Geometric))
}

/// `Σ_γ ℓ(γ) Σ_{k≥1} α(kℓ) + Σ_γ ℓ(γ) Σ_{k≤−1} e^{kℓ} α(kℓ)` over the
/// closed orbits.
pub fn de_rham_orbit_side(table: &ClosedPointTable, alpha: &TestFunction) -> Result<SideValue, FormulaError> {
    check_coverage(table, alpha)?;
    let spectrum = orbit_spectrum(table);
    let mut total = 0.0;
    for orbit in &spectrum.entries {
        let len = orbit.length;
        let mut inner = 0.0;
        for k in lattice_range(alpha, len) {
            let t = k as f64 * len;
            let weight = if k < 0 { t.exp() } else { 1.0 };
            inner += weight * alpha.eval(t);
        }
        total += orbit.multiplicity as f64 * len * inner;
    }
    Ok(SideValue::exact(Complex64::new(total, 0.0), Route::Geometric))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// Explicit formula: zeros and poles against closed points.
    Eq2,
    /// Explicit formula in closed-orbit form.
    Cor34,
    /// Holomorphic index identity.
    Thm41,
}

impl std::str::FromStr for Identity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq2" => Ok(Self::Eq2),
            "cor34" => Ok(Self::Cor34),
            "thm41" => Ok(Self::Thm41),
            other => Err(format!("unknown identity {other:?} (expected eq2, cor34 or thm41)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub routes: [Route; 2],
    pub residual: f64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub routes: Vec<SideValue>,
    pub residuals: Vec<Residual>,
    pub pass: bool,
}

/// Every route of `which`, pairwise residuals, and PASS iff each residual
/// is within the sum of both routes' error bounds plus [`REGROUPING_SLACK`].
pub fn verify_identity(
    which: Identity,
    fd: &FrobeniusData,
    table: &ClosedPointTable,
    alpha: &TestFunction,
    epsilon: f64,
) -> Result<VerificationReport, FormulaError> {
    if table.q != fd.q {
        return Err(FormulaError::Mismatch { table: table.q, frobenius: fd.q });
    }
    let routes = match which {
        Identity::Eq2 => vec![
            spectral_side_ff(fd, alpha, epsilon)?,
            geometric_side_ff(table, alpha, 1)?,
            poisson_closed_form_ff(fd, alpha)?,
        ],
        Identity::Cor34 => vec![
            spectral_side_ff(fd, alpha, epsilon)?,
            de_rham_orbit_side(table, alpha)?,
            poisson_closed_form_ff(fd, alpha)?,
        ],
        Identity::Thm41 => vec![
            dolbeault_spectral(fd, alpha, epsilon)?,
            dolbeault_orbit_side(fd, table, alpha)?,
            dolbeault_poisson(fd, alpha)?,
        ],
    };
    let mut residuals = Vec::new();
    for i in 0..routes.len() {
        for j in i + 1..routes.len() {
            let (x, y) = (&routes[i], &routes[j]);
            residuals.push(Residual {
                routes: [x.route, y.route],
                residual: (x.value - y.value).norm(),
                budget: x.error_budget() + y.error_budget() + REGROUPING_SLACK,
            });
        }
    }
    let pass = residuals.iter().all(|r| r.residual <= r.budget);
    Ok(VerificationReport { identity: which, routes, residuals, pass })
}

/// [`verify_identity`] from the trace alone, with a closed-point table just
/// deep enough for the support of `α`.
pub fn verify_identity_for_trace(
    which: Identity,
    a: i64,
    q: u64,
    alpha: &TestFunction,
    epsilon: f64,
) -> Result<VerificationReport, FormulaError> {
    let fd = FrobeniusData::new(a, q)?;
    let table = closed_points(a, q, required_n_max(q, alpha))?;
    verify_identity(which, &fd, &table, alpha, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_function::Bump;
    use proptest::prelude::*;

    fn bump(a: f64, c: f64, h: f64) -> TestFunction {
        TestFunction::single(Bump::new(a, c, h)).unwrap()
    }

    fn ln5() -> f64 {
        5f64.ln()
    }

    #[test]
    fn orbit_spectrum_examples() {
        let t = closed_points(-3, 5, 2).unwrap();
        let s = orbit_spectrum(&t);
        let got: Vec<_> = s.entries.iter().map(|e| (e.n, e.multiplicity)).collect();
        assert_eq!(got, vec![(1, 9), (2, 9)]);
        assert!((s.entries[1].length - 2.0 * ln5()).abs() < 1e-15);
        let t = closed_points(0, 5, 2).unwrap();
        let got: Vec<_> = orbit_spectrum(&t).entries.iter().map(|e| (e.n, e.multiplicity)).collect();
        assert_eq!(got, vec![(1, 6), (2, 15)]);
        let empty = ClosedPointTable { q: 5, n_max: 0, counts: vec![] };
        assert!(orbit_spectrum(&empty).entries.is_empty());
    }

    #[test]
    fn poisson_coefficients_examples() {
        let fd = FrobeniusData::new(-3, 5).unwrap();
        let alpha = bump(1.0, 0.0, 1.2 * ln5());
        let coeffs = poisson_coefficients(&fd, &alpha).unwrap();
        assert_eq!(coeffs, vec![(-1, 9.0 / 5.0), (1, 9.0)]);
    }

    #[test]
    fn zero_function_everywhere() {
        let fd = FrobeniusData::new(-3, 5).unwrap();
        let table = closed_points(-3, 5, 2).unwrap();
        let z = TestFunction::zero();
        for side in [
            spectral_side_ff(&fd, &z, 1e-6).unwrap(),
            geometric_side_ff(&table, &z, 1).unwrap(),
            poisson_closed_form_ff(&fd, &z).unwrap(),
            dolbeault_spectral(&fd, &z, 1e-6).unwrap(),
            dolbeault_poisson(&fd, &z).unwrap(),
            dolbeault_orbit_side(&fd, &table, &z).unwrap(),
            de_rham_orbit_side(&table, &z).unwrap(),
        ] {
            assert_eq!(side.value, Complex64::new(0.0, 0.0));
        }
        for which in [Identity::Eq2, Identity::Cor34, Identity::Thm41] {
            let r = verify_identity(which, &fd, &table, &z, 1e-6).unwrap();
            assert!(r.pass);
        }
    }

    #[test]
    fn bump_at_log5_single_terms() {
        let fd = FrobeniusData::new(-3, 5).unwrap();
        let table = closed_points(-3, 5, 2).unwrap();
        let alpha = bump(1.0, ln5(), 0.3);
        let at = alpha.eval(ln5());
        let geo = geometric_side_ff(&table, &alpha, 1).unwrap();
        assert!((geo.value.re - 9.0 * ln5() * at).abs() < 1e-14);
        let poi = poisson_closed_form_ff(&fd, &alpha).unwrap();
        assert!((poi.value.re - 9.0 * ln5() * at).abs() < 1e-14);
        let dol = dolbeault_poisson(&fd, &alpha).unwrap();
        let expected = (Complex64::new(1.0, 0.0) - fd.xi_bar) * ln5() * at;
        assert!((dol.value - expected).norm() < 1e-13);
        let orbit = dolbeault_orbit_side(&fd, &table, &alpha).unwrap();
        let expected = (Complex64::new(1.0, 0.0) - fd.xi).inv() * 9.0 * ln5() * at;
        assert!((orbit.value - expected).norm() < 1e-13);

        let neg = bump(1.0, -ln5(), 0.3);
        let de_rham = de_rham_orbit_side(&table, &neg).unwrap();
        assert!((de_rham.value.re - ln5() * 9.0 / 5.0 * neg.eval(-ln5())).abs() < 1e-14);
    }

    #[test]
    fn bump_between_lattice_points_vanishes() {
        let fd = FrobeniusData::new(-3, 5).unwrap();
        let table = closed_points(-3, 5, 2).unwrap();
        let inside = bump(1.0, 0.5, 0.4);
        assert_eq!(geometric_side_ff(&table, &inside, 1).unwrap().value.re, 0.0);
        assert_eq!(poisson_closed_form_ff(&fd, &inside).unwrap().value.re, 0.0);
        assert_eq!(dolbeault_poisson(&fd, &inside).unwrap().value.norm(), 0.0);
        let around_zero = bump(1.0, 0.0, 1.0);
        let spec = spectral_side_ff(&fd, &around_zero, 1e-6).unwrap();
        assert!(spec.value.re.abs() <= 1e-6 + spec.quadrature_error);
        assert_eq!(dolbeault_poisson(&fd, &around_zero).unwrap().value.norm(), 0.0);
    }

    #[test]
    fn genus_term() {
        let table = closed_points(-3, 5, 2).unwrap();
        let alpha = bump(1.0, 0.0, 1.0);
        let g0 = geometric_side_ff(&table, &alpha, 0).unwrap().value.re;
        let g1 = geometric_side_ff(&table, &alpha, 1).unwrap().value.re;
        let g2 = geometric_side_ff(&table, &alpha, 2).unwrap().value.re;
        assert!((g0 - g1 - 2.0 * (-1f64).exp() * ln5()).abs() < 1e-14);
        assert!((g1 - g2 - 2.0 * (-1f64).exp() * ln5()).abs() < 1e-14);
    }

    #[test]
    fn table_too_short() {
        let table = closed_points(-3, 5, 1).unwrap();
        let alpha = bump(1.0, 1.5, 0.5);
        assert!(matches!(geometric_side_ff(&table, &alpha, 1), Err(FormulaError::NInsufficient { .. })));
        assert!(matches!(de_rham_orbit_side(&table, &alpha), Err(FormulaError::NInsufficient { .. })));
    }

    #[test]
    fn bad_epsilon() {
        let fd = FrobeniusData::new(-3, 5).unwrap();
        let alpha = bump(1.0, 1.0, 0.5);
        assert!(matches!(spectral_side_ff(&fd, &alpha, -1.0), Err(FormulaError::BadEpsilon(_))));
        assert!(matches!(dolbeault_spectral(&fd, &alpha, 0.0), Err(FormulaError::BadEpsilon(_))));
    }

    #[test]
    fn eq2_pipeline_passes() {
        let alpha = bump(1.0, ln5(), 0.3);
        let r = verify_identity_for_trace(Identity::Eq2, -3, 5, &alpha, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.residuals.iter().all(|x| x.residual <= 1e-6));
    }

    #[test]
    fn thm41_pipeline_passes() {
        let alpha = bump(1.0, 2.0 * ln5(), 1.0);
        let r = verify_identity_for_trace(Identity::Thm41, 0, 5, &alpha, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn spectral_sum_is_real() {
        for (a, q) in [(-3, 5), (0, 5), (-4, 4), (4, 4), (1, 2)] {
            let fd = FrobeniusData::new(a, q).unwrap();
            let alpha = TestFunction::new(vec![Bump::new(0.8, 0.9, 0.6), Bump::new(-0.3, -0.4, 0.5)]).unwrap();
            let side = spectral_sum_ff(&fd, &alpha, 1e-6).unwrap();
            assert!(side.value.im.abs() <= 1e-10, "a = {a}, q = {q}: {}", side.value.im);
        }
    }

    #[test]
    fn double_root_matches_poisson() {
        for (a, q) in [(-4, 4), (4, 4)] {
            let fd = FrobeniusData::new(a, q).unwrap();
            let alpha = bump(1.0, 4f64.ln(), 0.8);
            let spec = spectral_side_ff(&fd, &alpha, 1e-6).unwrap();
            let poi = poisson_closed_form_ff(&fd, &alpha).unwrap();
            assert!((spec.value - poi.value).norm() <= 1e-6 + spec.quadrature_error, "a = {a}");
            let ds = dolbeault_spectral(&fd, &alpha, 1e-6).unwrap();
            let dp = dolbeault_poisson(&fd, &alpha).unwrap();
            assert!((ds.value - dp.value).norm() <= 1e-6 + ds.quadrature_error, "a = {a}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn exact_routes_agree(amp in -2.0f64..2.0, c in -2.5f64..2.5, h in 0.1f64..1.2) {
            let fd = FrobeniusData::new(-3, 5).unwrap();
            let alpha = bump(amp, c, h);
            let table = closed_points(-3, 5, required_n_max(5, &alpha)).unwrap();
            let geo = geometric_side_ff(&table, &alpha, 1).unwrap();
            let poi = poisson_closed_form_ff(&fd, &alpha).unwrap();
            let drm = de_rham_orbit_side(&table, &alpha).unwrap();
            prop_assert!((geo.value - poi.value).norm() <= 1e-10);
            prop_assert!((geo.value - drm.value).norm() <= 1e-12);
            let dp = dolbeault_poisson(&fd, &alpha).unwrap();
            let dor = dolbeault_orbit_side(&fd, &table, &alpha).unwrap();
            prop_assert!((dp.value - dor.value).norm() <= 1e-10);
        }
    }
}
