//! Globally adaptive composite Gauss–Legendre quadrature.
//!
//! Each panel is integrated with the 15-point Gauss–Legendre rule on the
//! whole panel and on its two halves; the difference is the panel's error
//! estimate and the two-half sum is the panel's value. The panel with the
//! largest estimate is bisected until the total estimate meets the
//! tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use thiserror::Error;

pub const GL_POINTS: usize = 15;
pub const MAX_DEPTH: u32 = 40;
const MAX_PANELS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge (bisection depth {depth}, error estimate {error:e})")]
    NoConvergence { depth: u32, error: f64 },
}

/// Values a quadrature can accumulate.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Default
{
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1]
/// (Newton iteration on the three-term recurrence).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_POINTS))
}

fn gl15<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> T {
    let (nodes, weights) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::default();
    for (x, w) in nodes.iter().zip(weights) {
        acc = acc + f(mid + half * x) * *w;
    }
    acc * half
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-13, rel: 1e-13 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Sum of the panel error estimates.
    pub error: f64,
}

struct Panel<T> {
    a: f64,
    b: f64,
    depth: u32,
    left: T,
    right: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn make_panel<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64, coarse: T, depth: u32) -> Panel<T> {
    let m = 0.5 * (a + b);
    let left = gl15(f, a, m);
    let right = gl15(f, m, b);
    let error = (coarse - (left + right)).magnitude();
    Panel { a, b, depth, left, right, error }
}

/// Integrate `f` over the union of the consecutive panels delimited by
/// `breaks` (ascending; at least two entries).
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<QuadResult<T>, QuadError> {
    let mut heap: BinaryHeap<Panel<T>> = BinaryHeap::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b > a {
            heap.push(make_panel(&f, a, b, gl15(&f, a, b), 0));
        }
    }
    let totals = |heap: &BinaryHeap<Panel<T>>| {
        let mut panels: Vec<&Panel<T>> = heap.iter().collect();
        panels.sort_by(|x, y| x.a.total_cmp(&y.a));
        panels.iter().fold((T::default(), 0.0), |(v, e), p| (v + p.left + p.right, e + p.error))
    };
    let (mut value, mut error) = totals(&heap);
    loop {
        if error <= tol.abs.max(tol.rel * value.magnitude()) {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= MAX_DEPTH || heap.len() >= MAX_PANELS {
            return Err(QuadError::NoConvergence { depth: worst.depth, error });
        }
        let m = 0.5 * (worst.a + worst.b);
        let l = make_panel(&f, worst.a, m, worst.left, worst.depth + 1);
        let r = make_panel(&f, m, worst.b, worst.right, worst.depth + 1);
        value = value - (worst.left + worst.right) + l.left + l.right + r.left + r.right;
        error = error - worst.error + l.error + r.error;
        heap.push(l);
        heap.push(r);
        if heap.len() % 4096 == 0 {
            // keep the running sums from drifting
            (value, error) = totals(&heap);
        }
    }
    let (value, error) = totals(&heap);
    Ok(QuadResult { value, error })
}

/// `n` equal panels over `[a, b]`, as breakpoints.
pub fn uniform_breaks(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n)
        .map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_degree_29_exactly() {
        let (x, w) = gauss_legendre(GL_POINTS);
        let sum_w: f64 = w.iter().sum();
        assert!((sum_w - 2.0).abs() < 1e-14);
        for k in [0u32, 2, 10, 28] {
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = 2.0 / (k as f64 + 1.0);
            assert!((approx - exact).abs() < 1e-14, "k = {k}");
        }
        let odd: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(29)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn smooth_integrals() {
        let r = integrate(|t: f64| t.exp(), &[0.0, 1.0], Tolerance::default()).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-14);
        let r = integrate(|t: f64| 1.0 / (1.0 + t * t), &[-50.0, 50.0], Tolerance::default()).unwrap();
        assert!((r.value - 2.0 * 50f64.atan()).abs() < 1e-12);
        assert!(r.error >= 0.0);
    }

    #[test]
    fn oscillatory_complex() {
        let tau = 400.0;
        let f = |t: f64| Complex64::new(0.0, tau * t).exp();
        let breaks = uniform_breaks(0.0, 1.0, 64);
        let r = integrate(f, &breaks, Tolerance::default()).unwrap();
        let exact = (Complex64::new(0.0, tau).exp() - 1.0) / Complex64::new(0.0, tau);
        assert!((r.value - exact).norm() < 1e-13);
    }

    #[test]
    fn kink_requires_bisection() {
        let r = integrate(|t: f64| t.abs(), &[-1.0, 0.3], Tolerance { abs: 1e-12, rel: 0.0 }).unwrap();
        assert!((r.value - (0.5 + 0.045)).abs() < 1e-12);
    }

    #[test]
    fn non_integrable_fails() {
        let r = integrate(|t: f64| 1.0 / t, &[0.0, 1.0], Tolerance::default());
        assert!(matches!(r, Err(QuadError::NoConvergence { .. })));
    }

    #[test]
    fn empty_and_degenerate_ranges() {
        let r = integrate(|t: f64| t, &[1.0, 1.0], Tolerance::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error, 0.0);
    }
}
