//! Frobenius eigenvalues and the zero/pole spectrum of the zeta function of
//! an elliptic curve,
//!
//! ```text
//! ζ̂_E(s) = (1 − ξ q^{−s})(1 − ξ̄ q^{−s}) / ((1 − q^{−s})(1 − q^{1−s})).
//! ```
//!
//! Zeros and poles are generated analytically as vertical families
//! `base + 2πiν / log q`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("trace {a} violates the Hasse bound for q = {q}")]
    HasseViolation { a: i64, q: u64 },
    #[error("s = {s} is within 1e-12 of a pole of the zeta function")]
    PoleHit { s: Complex64 },
}

/// Principal argument in `(−π, π]`; a signed zero imaginary part never
/// yields `−π`.
pub fn principal_arg(z: Complex64) -> f64 {
    if z.im == 0.0 {
        if z.re < 0.0 {
            PI
        } else {
            0.0
        }
    } else {
        z.im.atan2(z.re)
    }
}

/// `Log_q z = (ln|z| + i·Arg z) / ln q`.
pub fn log_base(z: Complex64, q: u64) -> Complex64 {
    Complex64::new(z.norm().ln(), principal_arg(z)) / (q as f64).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrobeniusData {
    pub q: u64,
    pub a: i64,
    pub xi: Complex64,
    pub xi_bar: Complex64,
    /// Sign of `a² − 4q` (never positive under Hasse).
    pub discriminant_sign: i8,
    /// `a² = 4q`, i.e. `ξ = ξ̄ = a/2`.
    pub double_root: bool,
}

impl FrobeniusData {
    /// Roots of `T² − aT + q`, `ξ = (a + i√(4q − a²))/2`.
    pub fn new(a: i64, q: u64) -> Result<Self, SpectralError> {
        let disc = (a as i128) * (a as i128) - 4 * q as i128;
        if disc > 0 {
            return Err(SpectralError::HasseViolation { a, q });
        }
        let double_root = disc == 0;
        let im = if double_root { 0.0 } else { ((-disc) as f64).sqrt() / 2.0 };
        let xi = Complex64::new(a as f64 / 2.0, im);
        Ok(Self {
            q,
            a,
            xi,
            xi_bar: xi.conj(),
            discriminant_sign: if double_root { 0 } else { -1 },
            double_root,
        })
    }

    pub fn log_q(&self) -> f64 {
        (self.q as f64).ln()
    }

    /// Spacing `2π / log q` of every vertical family.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.log_q()
    }

    /// `ξ^n` for any integer `n`, from exact Lucas data: `ξ^n = U_n ξ − q U_{n−1}`
    /// for `n ≥ 1` and `ξ^{−m} = ξ̄^m / q^m`.
    pub fn xi_pow(&self, n: i64) -> Complex64 {
        self.pow_of(self.xi, n)
    }

    pub fn xi_bar_pow(&self, n: i64) -> Complex64 {
        self.pow_of(self.xi_bar, n)
    }

    fn pow_of(&self, root: Complex64, n: i64) -> Complex64 {
        let other = if root == self.xi { self.xi_bar } else { self.xi };
        match n {
            0 => Complex64::new(1.0, 0.0),
            n if n > 0 => {
                let u = lucas_u(self.a, self.q, n as usize);
                let un = u[n as usize].to_f64().unwrap_or(f64::INFINITY);
                let un1 = u[n as usize - 1].to_f64().unwrap_or(f64::INFINITY);
                root * un - self.q as f64 * un1
            }
            n => {
                let m = -n;
                self.pow_of(other, m) / (self.q as f64).powi(m as i32)
            }
        }
    }

    pub fn spectrum(&self) -> ZeroPoleSpectrum {
        let mult = if self.double_root { 2 } else { 1 };
        ZeroPoleSpectrum {
            log_q: self.log_q(),
            zero_bases: [log_base(self.xi, self.q), log_base(self.xi_bar, self.q)],
            pole_bases: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            multiplicity: mult,
        }
    }
}

/// `U_0 = 0, U_1 = 1, U_n = a U_{n−1} − q U_{n−2}` for `n ≤ n_max`.
pub fn lucas_u(a: i64, q: u64, n_max: usize) -> Vec<BigInt> {
    let a = BigInt::from(a);
    let q = BigInt::from(q);
    let mut u = vec![BigInt::from(0), BigInt::from(1)];
    for n in 2..=n_max {
        let next = &a * &u[n - 1] - &q * &u[n - 2];
        u.push(next);
    }
    u.truncate(n_max + 1);
    u
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroPoleSpectrum {
    pub log_q: f64,
    /// `Log_q ξ` and `Log_q ξ̄`; equal when the root is double.
    pub zero_bases: [Complex64; 2],
    pub pole_bases: [Complex64; 2],
    /// Multiplicity of each zero family: 2 when `ξ = ξ̄`.
    pub multiplicity: u32,
}

/// Value of the rational zeta function at `s`.
pub fn zeta_value(fd: &FrobeniusData, s: Complex64) -> Result<Complex64, SpectralError> {
    let u = (-s * fd.log_q()).exp();
    let one = Complex64::new(1.0, 0.0);
    let inv_q = 1.0 / fd.q as f64;
    if (u - one).norm() < 1e-12 || (u - inv_q).norm() < 1e-12 {
        return Err(SpectralError::PoleHit { s });
    }
    let num = (one - fd.xi * u) * (one - fd.xi_bar * u);
    let den = (one - u) * (one - u * fd.q as f64);
    Ok(num / den)
}

/// Zeros `Log_q ξ + 2πiν/log q` and `Log_q ξ̄ + 2πiν/log q` for
/// `ν ∈ [nu_min, nu_max]`, with multiplicity. A double root yields one
/// family of multiplicity 2.
pub fn zeros(fd: &FrobeniusData, nu_min: i64, nu_max: i64) -> Vec<(Complex64, u32)> {
    let spec = fd.spectrum();
    let step = fd.spacing();
    let bases: &[Complex64] = if fd.double_root { &spec.zero_bases[..1] } else { &spec.zero_bases };
    let mut out = Vec::new();
    for base in bases {
        for nu in nu_min..=nu_max {
            out.push((base + Complex64::new(0.0, step * nu as f64), spec.multiplicity));
        }
    }
    out
}

/// Poles `2πiν/log q` and `1 + 2πiν/log q` for `ν ∈ [nu_min, nu_max]`.
pub fn poles(q: u64, nu_min: i64, nu_max: i64) -> Vec<Complex64> {
    let step = 2.0 * PI / (q as f64).ln();
    let mut out = Vec::new();
    for re in [0.0, 1.0] {
        for nu in nu_min..=nu_max {
            out.push(Complex64::new(re, step * nu as f64));
        }
    }
    out
}
