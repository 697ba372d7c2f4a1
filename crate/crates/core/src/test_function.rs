//! Smooth compactly supported test functions built from mollifier bumps,
//! their transform `Φ(s) = ∫ e^{ts} α(t) dt`, and decay bounds for `Φ` on
//! vertical lines.
//!
//! A bump is `A·ψ((t − c)/h)` with `ψ(u) = exp(−1/(1 − u²))` on `|u| < 1`
//! and 0 elsewhere. Derivatives have the closed form
//! `ψ^{(k)}(u) = P_k(u) (1 − u²)^{−2k} ψ(u)` with
//! `P_{k+1} = P_k′ (1 − u²)² + 4k u (1 − u²) P_k − 2u P_k`, `P_0 = 1`.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{integrate, uniform_breaks, QuadError, Tolerance};

/// Highest derivative order kept in the norm cache.
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TestFunctionError {
    #[error("bump half-width must be positive and finite, got {0}")]
    BadHalfWidth(f64),
    #[error("bump parameters must be finite")]
    NonFinite,
    #[error("no truncation level up to {max} meets the budget {budget:e}")]
    TruncationTooDeep { max: i64, budget: f64 },
}

/// One mollifier term `(A, c, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub amplitude: f64,
    pub center: f64,
    pub half_width: f64,
}

impl Bump {
    pub fn new(amplitude: f64, center: f64, half_width: f64) -> Self {
        Self { amplitude, center, half_width }
    }

    /// `A = 1, c = 0, h = 1`.
    pub fn standard() -> Self {
        Self::new(1.0, 0.0, 1.0)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }
}

fn derivative_polys() -> &'static Vec<Vec<f64>> {
    static POLYS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    POLYS.get_or_init(|| {
        let mut polys = vec![vec![1.0]];
        for k in 0..MAX_ORDER + 4 {
            let p = &polys[k];
            let mut next = vec![0.0; p.len() + 4];
            // P_k′ (1 − 2u² + u⁴)
            for (i, &c) in p.iter().enumerate().skip(1) {
                let d = c * i as f64;
                next[i - 1] += d;
                next[i + 1] -= 2.0 * d;
                next[i + 3] += d;
            }
            // 4k u (1 − u²) P_k − 2u P_k
            let kf = k as f64;
            for (i, &c) in p.iter().enumerate() {
                next[i + 1] += (4.0 * kf - 2.0) * c;
                next[i + 3] -= 4.0 * kf * c;
            }
            while next.last() == Some(&0.0) {
                next.pop();
            }
            polys.push(next);
        }
        polys
    })
}

/// `ψ^{(k)}(u)` for the standard mollifier.
pub fn standard_bump_derivative(u: f64, k: usize) -> f64 {
    if u.abs() >= 1.0 {
        return 0.0;
    }
    let w = 1.0 - u * u;
    let polys = derivative_polys();
    let p = if k < polys.len() {
        polys[k].iter().rev().fold(0.0, |acc, &c| acc * u + c)
    } else {
        panic!("derivative order {k} above {}", polys.len() - 1);
    };
    p * (-1.0 / w - 2.0 * k as f64 * w.ln()).exp()
}

/// `‖ψ^{(j)}‖₁` for `j = 0..=MAX_ORDER`. For `j ≥ 1` the sign changes of
/// `ψ^{(j)}` are the roots of `P_j` in `(−1, 1)`, so the norm is a sum of
/// increments of `ψ^{(j−1)}` between consecutive roots.
pub fn standard_norms() -> &'static [f64] {
    static NORMS: OnceLock<Vec<f64>> = OnceLock::new();
    NORMS.get_or_init(|| {
        let polys = derivative_polys();
        let mass = integrate(|u: f64| standard_bump_derivative(u, 0), &[-1.0, 0.0, 1.0], Tolerance::default())
            .expect("smooth integrand")
            .value;
        let mut norms = vec![mass];
        for j in 1..=MAX_ORDER {
            let p = |u: f64| polys[j].iter().rev().fold(0.0, |acc, &c| acc * u + c);
            let grid = 200_000;
            let mut points = vec![-1.0];
            let mut prev = (-1.0, p(-1.0));
            for i in 1..=grid {
                let u = -1.0 + 2.0 * i as f64 / grid as f64;
                let val = p(u);
                if prev.1 * val < 0.0 {
                    let (mut lo, mut hi) = (prev.0, u);
                    for _ in 0..80 {
                        let mid = 0.5 * (lo + hi);
                        if p(mid) * prev.1 > 0.0 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    points.push(0.5 * (lo + hi));
                }
                if val != 0.0 {
                    prev = (u, val);
                }
            }
            points.push(1.0);
            let total: f64 = points
                .windows(2)
                .map(|w| (standard_bump_derivative(w[1], j - 1) - standard_bump_derivative(w[0], j - 1)).abs())
                .sum();
            norms.push(total * (1.0 + 1e-12));
        }
        norms
    })
}

/// A finite sum of mollifier bumps, with upper bounds on the `L¹` norms of
/// its derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    terms: Vec<Bump>,
    /// Upper bounds on `‖α^{(j)}‖₁`, `j = 0..=MAX_ORDER`.
    norms: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiValue {
    pub s: Complex64,
    pub value: Complex64,
    pub quad_error: f64,
}

impl TestFunction {
    pub fn new(terms: Vec<Bump>) -> Result<Self, TestFunctionError> {
        for b in &terms {
            if !(b.amplitude.is_finite() && b.center.is_finite()) {
                return Err(TestFunctionError::NonFinite);
            }
            if !(b.half_width.is_finite() && b.half_width > 0.0) {
                return Err(TestFunctionError::BadHalfWidth(b.half_width));
            }
        }
        let standard = standard_norms();
        let norms = (0..=MAX_ORDER)
            .map(|j| {
                terms
                    .iter()
                    .map(|b| b.amplitude.abs() * b.half_width.powi(1 - j as i32) * standard[j])
                    .sum()
            })
            .collect();
        Ok(Self { terms, norms })
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new(), norms: vec![0.0; MAX_ORDER + 1] }
    }

    pub fn single(bump: Bump) -> Result<Self, TestFunctionError> {
        Self::new(vec![bump])
    }

    pub fn terms(&self) -> &[Bump] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|b| b.amplitude == 0.0)
    }

    /// Convex hull `[T⁻, T⁺]` of the supports; `None` for the empty sum.
    pub fn support(&self) -> Option<(f64, f64)> {
        self.terms.iter().map(Bump::support).reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// `max |t|` over the support.
    pub fn support_radius(&self) -> f64 {
        self.support().map_or(0.0, |(lo, hi)| lo.abs().max(hi.abs()))
    }

    /// Same function translated by `delta`.
    pub fn shifted(&self, delta: f64) -> Result<Self, TestFunctionError> {
        Self::new(
            self.terms
                .iter()
                .map(|b| Bump::new(b.amplitude, b.center + delta, b.half_width))
                .collect(),
        )
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.derivative(t, 0)
    }

    /// `α^{(k)}(t)` in closed form.
    pub fn derivative(&self, t: f64, k: usize) -> f64 {
        self.terms
            .iter()
            .map(|b| {
                let u = (t - b.center) / b.half_width;
                b.amplitude * standard_bump_derivative(u, k) / b.half_width.powi(k as i32)
            })
            .sum()
    }

    /// Upper bound `Σ |A| h^{1−j} ‖ψ^{(j)}‖₁` on `‖α^{(j)}‖₁`.
    pub fn l1_norm(&self, j: usize) -> f64 {
        self.norms[j]
    }

    /// `sup_{t ∈ supp α} e^{σt}`.
    pub fn exp_weight(&self, sigma: f64) -> f64 {
        match self.support() {
            None => 0.0,
            Some((lo, hi)) => (sigma * lo).exp().max((sigma * hi).exp()),
        }
    }

    /// Upper bound on `‖(e^{σt}α)^{(k)}‖₁ / sup e^{σt}`:
    /// `Σ_j C(k, j) |σ|^{k−j} ‖α^{(j)}‖₁`.
    fn weighted_norm(&self, sigma: f64, k: usize) -> f64 {
        let mut binom = 1.0;
        let mut total = 0.0;
        for j in (0..=k).rev() {
            // binom = C(k, j)
            total += binom * sigma.abs().powi((k - j) as i32) * self.norms[j];
            binom = binom * j as f64 / (k - j + 1) as f64;
        }
        total
    }

    /// `Φ(s) = ∫ e^{ts} α(t) dt`, summed bump by bump as
    /// `A h e^{cs} ∫_{−1}^{1} e^{hus} ψ(u) du`.
    pub fn phi(&self, s: Complex64) -> Result<PhiValue, QuadError> {
        let mut value = Complex64::new(0.0, 0.0);
        let mut quad_error = 0.0;
        let n = self.terms.len().max(1) as f64;
        for b in &self.terms {
            if b.amplitude == 0.0 {
                continue;
            }
            let h = b.half_width;
            let scale = b.amplitude * h * (s * b.center).exp();
            let hs = s * h;
            // about one period of e^{i h τ u} per initial panel
            let panels = ((hs.im.abs() / std::f64::consts::PI).ceil() as usize).max(2);
            let tol = Tolerance { abs: 1e-13 / (n * scale.norm()), rel: 1e-13 };
            let r = integrate(
                |u: f64| (hs * u).exp() * standard_bump_derivative(u, 0),
                &uniform_breaks(-1.0, 1.0, panels),
                tol,
            )?;
            value += scale * r.value;
            quad_error += scale.norm() * r.error;
        }
        Ok(PhiValue { s, value, quad_error })
    }

    /// As [`Self::phi`], except that when the best decay bound at `s` is at
    /// most `negligible` the value is taken as 0 and the bound is reported as
    /// the quadrature error.
    pub fn phi_or_negligible(&self, s: Complex64, negligible: f64) -> Result<PhiValue, QuadError> {
        if s.im != 0.0 {
            let bound = (2..=MAX_ORDER)
                .map(|k| self.vertical_decay_bound_order(s.re, s.im, k))
                .fold(f64::INFINITY, f64::min);
            if bound <= negligible {
                return Ok(PhiValue { s, value: Complex64::new(0.0, 0.0), quad_error: bound });
            }
        }
        self.phi(s)
    }

    /// `B(σ, τ) = sup e^{σt} · min(‖α‖₁, ‖(e^{σ·}α)″‖₁-bound / τ²)`, a bound
    /// on `|Φ(σ + iτ)|`.
    pub fn vertical_decay_bound(&self, sigma: f64, tau: f64) -> f64 {
        let w = self.exp_weight(sigma);
        let base = self.norms[0];
        if tau == 0.0 {
            return w * base;
        }
        w * base.min(self.weighted_norm(sigma, 2) / (tau * tau))
    }

    /// Order-`k` integration-by-parts bound on `|Φ(σ + iτ)|`.
    pub fn vertical_decay_bound_order(&self, sigma: f64, tau: f64, k: usize) -> f64 {
        self.exp_weight(sigma) * self.weighted_norm(sigma, k) / tau.abs().powi(k as i32)
    }

    /// Bound on `Σ_{|ν| > V} |Φ(σ + i(θ + νΔ))|` for any offset `|θ| ≤ Δ/2`,
    /// using the order-`k` bound and `|θ + νΔ| ≥ Δ(|ν| − 1/2)`.
    pub fn family_tail_bound(&self, sigma: f64, spacing: f64, v: i64, k: usize) -> f64 {
        assert!(k >= 2 && v >= 1);
        let c = self.exp_weight(sigma) * self.weighted_norm(sigma, k);
        let km1 = (k - 1) as f64;
        2.0 * c * spacing.powi(-(k as i32)) * (v as f64 - 0.5).powf(-km1) / km1
    }

    /// Smallest `V ≥ 1` whose tail bound (best order in `2..=MAX_ORDER`) is
    /// at most `budget`, together with that bound.
    pub fn truncation_level(
        &self,
        sigma: f64,
        spacing: f64,
        budget: f64,
        max_level: i64,
    ) -> Result<(i64, f64), TestFunctionError> {
        if self.is_zero() {
            return Ok((0, 0.0));
        }
        let c0 = self.exp_weight(sigma);
        let mut best: Option<i64> = None;
        for k in 2..=MAX_ORDER {
            let c = c0 * self.weighted_norm(sigma, k);
            let km1 = (k - 1) as f64;
            let need = 2.0 * c * spacing.powi(-(k as i32)) / (km1 * budget);
            let v = (0.5 + need.powf(1.0 / km1)).ceil().max(1.0);
            if v.is_finite() && v <= max_level as f64 {
                let v = v as i64;
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        }
        let v = best.ok_or(TestFunctionError::TruncationTooDeep { max: max_level, budget })?;
        let bound = (2..=MAX_ORDER)
            .map(|k| self.family_tail_bound(sigma, spacing, v, k))
            .fold(f64::INFINITY, f64::min);
        Ok((v, bound))
    }
}
