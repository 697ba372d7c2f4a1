//! Elliptic curves over `F_q`: validation, point counts over the tower
//! `F_{q^n}`, and closed-point tables.
//!
//! Two independent paths produce the closed-point counts `a_d`:
//! Möbius inversion of the exact integer counts `N_n = q^n + 1 - s_n`
//! ([`closed_points`]), and direct enumeration of Frobenius orbits on
//! `E(F_{q^M})` with `M = lcm(1..=n_max)` ([`closed_points_oracle`]).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldEmbedding, FieldError, FieldSpec, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("curve is singular (discriminant 0)")]
    SingularCurve,
    #[error("enumeration of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("trace {a} violates the Hasse bound for q = {q}")]
    HasseViolation { a: i64, q: u64 },
    #[error("closed-point count at degree {degree} is not a nonnegative integer")]
    NonIntegralCount { degree: usize },
    #[error("closed-point count at degree {degree} does not fit in 128 bits")]
    CountOverflow { degree: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

/// Labeling metadata: `a ≡ 0 mod p` is supersingular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    Ordinary,
    Supersingular,
}

impl Reduction {
    pub fn classify(a: i64, p: u64) -> Self {
        if a.rem_euclid(p as i64) == 0 {
            Reduction::Supersingular
        } else {
            Reduction::Ordinary
        }
    }
}

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` over `field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    field: FieldSpec,
    /// `[a1, a2, a3, a4, a6]`
    coeffs: [FieldElement; 5],
    discriminant: FieldElement,
}

fn long_weierstrass_discriminant(f: &FieldSpec, c: &[FieldElement; 5]) -> FieldElement {
    let [a1, a2, a3, a4, a6] = c;
    let k = |n: i64| f.from_int(n);
    let m = |x: &FieldElement, y: &FieldElement| f.mul(x, y);
    let b2 = f.add(&m(a1, a1), &m(&k(4), a2));
    let b4 = f.add(&m(&k(2), a4), &m(a1, a3));
    let b6 = f.add(&m(a3, a3), &m(&k(4), a6));
    // b8 = a1²a6 + 4a2a6 − a1a3a4 + a2a3² − a4²
    let b8 = [
        m(&m(a1, a1), a6),
        m(&k(4), &m(a2, a6)),
        f.neg(&m(&m(a1, a3), a4)),
        m(a2, &m(a3, a3)),
        f.neg(&m(a4, a4)),
    ]
    .iter()
    .fold(f.zero(), |acc, t| f.add(&acc, t));
    // Δ = −b2²b8 − 8b4³ − 27b6² + 9b2b4b6
    [
        f.neg(&m(&m(&b2, &b2), &b8)),
        f.neg(&m(&k(8), &m(&b4, &m(&b4, &b4)))),
        f.neg(&m(&k(27), &m(&b6, &b6))),
        m(&k(9), &m(&b2, &m(&b4, &b6))),
    ]
    .iter()
    .fold(f.zero(), |acc, t| f.add(&acc, t))
}

impl Curve {
    /// Long Weierstrass curve from `[a1, a2, a3, a4, a6]`.
    pub fn new(field: FieldSpec, coeffs: [FieldElement; 5]) -> Result<Self, CurveError> {
        if coeffs.iter().any(|c| !field.contains(c)) {
            return Err(FieldError::FieldMismatch.into());
        }
        let discriminant = long_weierstrass_discriminant(&field, &coeffs);
        if discriminant.is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(Self { field, coeffs, discriminant })
    }

    /// `y² = x³ + a4·x + a6` with integer coefficients in the prime subfield.
    pub fn short(field: FieldSpec, a4: i64, a6: i64) -> Result<Self, CurveError> {
        let z = field.zero();
        let coeffs = [z.clone(), z.clone(), z, field.from_int(a4), field.from_int(a6)];
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coefficients(&self) -> &[FieldElement; 5] {
        &self.coeffs
    }

    pub fn discriminant(&self) -> &FieldElement {
        &self.discriminant
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// Whether `(x, y)` satisfies the curve equation (coordinates in `field`
    /// after embedding the coefficients as `coeffs`).
    fn satisfies(f: &FieldSpec, c: &[FieldElement; 5], x: &FieldElement, y: &FieldElement) -> bool {
        let (lhs, rhs) = equation_sides(f, c, x, y);
        lhs == rhs
    }

    /// Coefficients carried into `F_{q^n}` along a concrete embedding.
    fn base_change(&self, n: usize, cap: u64) -> Result<(FieldSpec, [FieldElement; 5]), CurveError> {
        if n == 1 {
            return Ok((self.field.clone(), self.coeffs.clone()));
        }
        let p = self.field.characteristic();
        let r = self.field.degree();
        let size = checked_pow(self.q(), n).ok_or(CurveError::CapExceeded { size: u64::MAX, cap })?;
        if size > cap {
            return Err(CurveError::CapExceeded { size, cap });
        }
        let big = FieldSpec::new(p, r * n, Modulus::Auto)?;
        let emb = FieldEmbedding::new(&self.field, &big, cap)?;
        let mut coeffs = Vec::with_capacity(5);
        for c in &self.coeffs {
            coeffs.push(emb.embed(c)?);
        }
        let coeffs: [FieldElement; 5] = coeffs.try_into().expect("five coefficients");
        Ok((big, coeffs))
    }
}

fn equation_sides(
    f: &FieldSpec,
    c: &[FieldElement; 5],
    x: &FieldElement,
    y: &FieldElement,
) -> (FieldElement, FieldElement) {
    let [a1, _, a3, _, _] = c;
    let lhs = f.add(&f.mul(y, y), &f.mul(y, &f.add(&f.mul(a1, x), a3)));
    (lhs, cubic(f, c, x))
}

/// `x³ + a2·x² + a4·x + a6`
fn cubic(f: &FieldSpec, c: &[FieldElement; 5], x: &FieldElement) -> FieldElement {
    let [_, a2, _, a4, a6] = c;
    // ((x + a2)·x + a4)·x + a6
    let t = f.mul(&f.add(x, a2), x);
    f.add(&f.mul(&f.add(&t, a4), x), a6)
}

fn checked_pow(base: u64, n: usize) -> Option<u64> {
    u32::try_from(n).ok().and_then(|n| base.checked_pow(n))
}

/// Counts the `y` solving `y² + b·y = c` for every `x` of the field, from
/// histograms built by enumerating all `y`.
struct QuadraticCounter {
    /// `#{y : y² = v}` indexed by `v`.
    squares: Vec<u8>,
    /// Characteristic 2 only: `#{z : z² + z = w}` indexed by `w`.
    artin_schreier: Vec<u8>,
    half: Option<FieldElement>,
}

impl QuadraticCounter {
    fn new(f: &FieldSpec) -> Self {
        let q = f.order() as usize;
        let mut squares = vec![0u8; q];
        let mut artin_schreier = Vec::new();
        let even = f.characteristic() == 2;
        if even {
            artin_schreier = vec![0u8; q];
        }
        for i in 0..f.order() {
            let y = f.element_from_index(i);
            let y2 = f.mul(&y, &y);
            squares[f.index_of(&y2) as usize] += 1;
            if even {
                artin_schreier[f.index_of(&f.add(&y2, &y)) as usize] += 1;
            }
        }
        let half = if even { None } else { Some(f.inv(&f.from_int(2)).expect("2 invertible")) };
        Self { squares, artin_schreier, half }
    }

    fn count(&self, f: &FieldSpec, b: &FieldElement, c: &FieldElement) -> u64 {
        match &self.half {
            Some(half) => {
                // (y + b/2)² = c + (b/2)²
                let hb = f.mul(half, b);
                let d = f.add(c, &f.mul(&hb, &hb));
                self.squares[f.index_of(&d) as usize] as u64
            }
            None if b.is_zero() => self.squares[f.index_of(c) as usize] as u64,
            None => {
                // y = b·z: z² + z = c / b²
                let b2 = f.mul(b, b);
                let w = f.mul(c, &f.inv(&b2).expect("b nonzero"));
                self.artin_schreier[f.index_of(&w) as usize] as u64
            }
        }
    }
}

/// `N_n = #E(F_{q^n})`, point at infinity included, by exhaustive enumeration
/// of `x ∈ F_{q^n}`.
pub fn count_points_bruteforce(curve: &Curve, n: usize, cap: u64) -> Result<u64, CurveError> {
    let (f, c) = curve.base_change(n, cap)?;
    if f.order() > cap {
        return Err(CurveError::CapExceeded { size: f.order(), cap });
    }
    let counter = QuadraticCounter::new(&f);
    let [a1, _, a3, _, _] = &c;
    let mut total = 1u64;
    for i in 0..f.order() {
        let x = f.element_from_index(i);
        let b = f.add(&f.mul(a1, &x), a3);
        total += counter.count(&f, &b, &cubic(&f, &c, &x));
    }
    Ok(total)
}

/// Literal pair enumeration over `F_{q^n}²`; quadratic cost, test oracle only.
pub fn count_points_pairs(curve: &Curve, n: usize, cap: u64) -> Result<u64, CurveError> {
    let (f, c) = curve.base_change(n, cap)?;
    let elems = f.enumerate(cap)?;
    let mut total = 1u64;
    for x in &elems {
        for y in &elems {
            if Curve::satisfies(&f, &c, x, y) {
                total += 1;
            }
        }
    }
    Ok(total)
}

fn check_hasse(a: i64, q: u64) -> Result<(), CurveError> {
    let a2 = (a as i128) * (a as i128);
    if a2 > 4 * q as i128 {
        Err(CurveError::HasseViolation { a, q })
    } else {
        Ok(())
    }
}

/// Frobenius trace `a = q + 1 - N_1`.
pub fn frobenius_trace(curve: &Curve, cap: u64) -> Result<i64, CurveError> {
    let n1 = count_points_bruteforce(curve, 1, cap)?;
    let a = curve.q() as i64 + 1 - n1 as i64;
    check_hasse(a, curve.q())?;
    Ok(a)
}

/// Exact power sums `s_n = ξ^n + ξ̄^n` for `n = 0..=n_max`:
/// `s_0 = 2`, `s_1 = a`, `s_n = a·s_{n-1} - q·s_{n-2}`.
pub fn power_sums(a: i64, q: u64, n_max: usize) -> Vec<BigInt> {
    let a = BigInt::from(a);
    let q = BigInt::from(q);
    let mut s = vec![BigInt::from(2)];
    if n_max >= 1 {
        s.push(a.clone());
    }
    for n in 2..=n_max {
        let next = &a * &s[n - 1] - &q * &s[n - 2];
        s.push(next);
    }
    s
}

/// `[N_1, ..., N_{n_max}]` with `N_n = q^n + 1 - s_n`, in exact integers.
pub fn point_counts_tower(a: i64, q: u64, n_max: usize) -> Result<Vec<BigInt>, CurveError> {
    check_hasse(a, q)?;
    let s = power_sums(a, q, n_max);
    let qb = BigInt::from(q);
    let mut qn = BigInt::one();
    let mut out = Vec::with_capacity(n_max);
    for sn in s.iter().skip(1) {
        qn *= &qb;
        out.push(&qn + 1 - sn);
    }
    Ok(out)
}

/// Number of closed points of each degree `d = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedPointTable {
    pub q: u64,
    pub n_max: usize,
    /// `counts[d - 1] = a_d`
    pub counts: Vec<u128>,
}

impl ClosedPointTable {
    pub fn count(&self, degree: usize) -> u128 {
        if degree == 0 || degree > self.n_max {
            0
        } else {
            self.counts[degree - 1]
        }
    }

    /// `Σ_{d | n} d·a_d`
    pub fn divisor_sum(&self, n: usize) -> u128 {
        (1..=n).filter(|d| n % d == 0).map(|d| d as u128 * self.count(d)).sum()
    }
}

pub fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Closed points by Möbius inversion: `a_n = (1/n) Σ_{d|n} μ(n/d) N_d`.
pub fn closed_points(a: i64, q: u64, n_max: usize) -> Result<ClosedPointTable, CurveError> {
    let counts_n = point_counts_tower(a, q, n_max)?;
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let sum: BigInt = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| mobius(n / d) * &counts_n[d - 1])
            .sum();
        let nb = BigInt::from(n);
        if sum.is_negative() || !(&sum % &nb).is_zero() {
            return Err(CurveError::NonIntegralCount { degree: n });
        }
        let an = (sum / nb).to_u128().ok_or(CurveError::CountOverflow { degree: n })?;
        counts.push(an);
    }
    Ok(ClosedPointTable { q, n_max, counts })
}

fn lcm_up_to(n: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n).fold(1, |acc, k| acc / gcd(acc, k) * k)
}

/// All affine points of the curve over `f` (coefficients `c`), via square /
/// Artin–Schreier root tables built by enumerating the field.
fn affine_points(f: &FieldSpec, c: &[FieldElement; 5]) -> Vec<(u64, u64)> {
    let q = f.order();
    let mut sqrt = vec![u64::MAX; q as usize];
    let even = f.characteristic() == 2;
    let mut as_root = if even { vec![u64::MAX; q as usize] } else { Vec::new() };
    for i in 0..q {
        let y = f.element_from_index(i);
        let y2 = f.mul(&y, &y);
        sqrt[f.index_of(&y2) as usize] = i;
        if even {
            as_root[f.index_of(&f.add(&y2, &y)) as usize] = i;
        }
    }
    let [a1, _, a3, _, _] = c;
    let half = (!even).then(|| f.inv(&f.from_int(2)).expect("2 invertible"));
    let mut points = Vec::new();
    for i in 0..q {
        let x = f.element_from_index(i);
        let b = f.add(&f.mul(a1, &x), a3);
        let rhs = cubic(f, c, &x);
        let mut ys: Vec<FieldElement> = Vec::with_capacity(2);
        match &half {
            Some(half) => {
                let hb = f.mul(half, &b);
                let d = f.add(&rhs, &f.mul(&hb, &hb));
                let root = sqrt[f.index_of(&d) as usize];
                if root != u64::MAX {
                    let r = f.element_from_index(root);
                    ys.push(f.sub(&r, &hb));
                    ys.push(f.sub(&f.neg(&r), &hb));
                }
            }
            None if b.is_zero() => {
                ys.push(f.element_from_index(sqrt[f.index_of(&rhs) as usize]));
            }
            None => {
                let b2 = f.mul(&b, &b);
                let w = f.mul(&rhs, &f.inv(&b2).expect("b nonzero"));
                let root = as_root[f.index_of(&w) as usize];
                if root != u64::MAX {
                    let z = f.element_from_index(root);
                    ys.push(f.mul(&b, &z));
                    ys.push(f.mul(&b, &f.add(&z, &f.one())));
                }
            }
        }
        ys.sort();
        ys.dedup();
        for y in ys {
            debug_assert!(Curve::satisfies(f, c, &x, &y));
            points.push((i, f.index_of(&y)));
        }
    }
    points
}

/// Closed points by orbit enumeration: all points of `E(F_{q^M})`,
/// `M = lcm(1..=n_max)`, grouped into orbits of the coordinatewise `q`-power
/// Frobenius; `a_d` is the number of orbits of size exactly `d`.
pub fn closed_points_oracle(
    curve: &Curve,
    n_max: usize,
    cap: u64,
) -> Result<ClosedPointTable, CurveError> {
    let q = curve.q();
    let m = lcm_up_to(n_max.max(1));
    let (f, c) = curve.base_change(m, cap)?;
    let points = affine_points(&f, &c);
    let index: HashMap<(u64, u64), usize> =
        points.iter().enumerate().map(|(i, &pt)| (pt, i)).collect();
    let mut visited = vec![false; points.len()];
    let mut counts = vec![0u128; n_max];
    // point at infinity
    if n_max >= 1 {
        counts[0] += 1;
    }
    let frob = |i: u64| f.index_of(&f.pow(&f.element_from_index(i), q));
    for start in 0..points.len() {
        if visited[start] {
            continue;
        }
        let mut size = 0usize;
        let mut cur = start;
        loop {
            visited[cur] = true;
            size += 1;
            let (x, y) = points[cur];
            cur = *index
                .get(&(frob(x), frob(y)))
                .expect("Frobenius maps the curve to itself");
            if cur == start {
                break;
            }
        }
        if size <= n_max {
            counts[size - 1] += 1;
        }
    }
    Ok(ClosedPointTable { q, n_max, counts })
}

/// `(p, r)` with `q = p^r`.
pub fn prime_power_decompose(q: u64) -> Result<(u64, usize), CurveError> {
    if q < 2 {
        return Err(CurveError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut r = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(CurveError::NotPrimePower(q));
    }
    Ok((p, r))
}

/// Curve description as accepted from configuration files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub p: u64,
    #[serde(default = "one_usize")]
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
    #[serde(default)]
    pub a1: Vec<i64>,
    #[serde(default)]
    pub a2: Vec<i64>,
    #[serde(default)]
    pub a3: Vec<i64>,
    #[serde(default)]
    pub a4: Vec<i64>,
    #[serde(default)]
    pub a6: Vec<i64>,
}

fn one_usize() -> usize {
    1
}

impl CurveConfig {
    pub fn build(&self) -> Result<Curve, CurveError> {
        let modulus = match &self.modulus {
            Some(m) => Modulus::Given(m.clone()),
            None => Modulus::Auto,
        };
        let field = FieldSpec::new(self.p, self.r, modulus)?;
        let coeffs = [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .map(|c| field.element(c))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs: [FieldElement; 5] = coeffs.try_into().expect("five coefficients");
        Curve::new(field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_ENUMERATION_CAP as CAP;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn curve_f2_supersingular() -> Curve {
        let f2 = f(2);
        let z = f2.zero();
        Curve::new(f2.clone(), [z.clone(), z.clone(), f2.one(), z.clone(), z]).unwrap()
    }

    #[test]
    fn discriminants() {
        // −16(4·1³ + 27·1²) = −496 ≡ 4 mod 5
        assert_eq!((-496i64).rem_euclid(5), 4);
        let e = Curve::short(f(5), 1, 1).unwrap();
        assert_eq!(e.discriminant(), &f(5).from_int(4));
        assert_eq!(Curve::short(f(5), 0, 0), Err(CurveError::SingularCurve));
        assert_eq!(curve_f2_supersingular().discriminant(), &f(2).one());
    }

    #[test]
    fn short_form_discriminant_matches_minus_sixteen_formula() {
        for p in [5u64, 7, 11] {
            for a4 in 0..p as i64 {
                for a6 in 0..p as i64 {
                    let short = (-16 * (4 * a4.pow(3) + 27 * a6 * a6)).rem_euclid(p as i64);
                    match Curve::short(f(p), a4, a6) {
                        Ok(e) => assert_eq!(e.discriminant(), &f(p).from_int(short)),
                        Err(CurveError::SingularCurve) => assert_eq!(short, 0),
                        Err(other) => panic!("{other}"),
                    }
                }
            }
        }
    }

    #[test]
    fn point_counts_f5_f7() {
        let e1 = Curve::short(f(5), 1, 1).unwrap();
        let e2 = Curve::short(f(5), 0, 1).unwrap();
        let e3 = Curve::short(f(7), 1, 0).unwrap();
        for (e, n1, a) in [(&e1, 9, -3), (&e2, 6, 0), (&e3, 8, 0)] {
            assert_eq!(count_points_bruteforce(e, 1, CAP).unwrap(), n1);
            assert_eq!(count_points_pairs(e, 1, CAP).unwrap(), n1);
            assert_eq!(frobenius_trace(e, CAP).unwrap(), a);
        }
    }

    #[test]
    fn bruteforce_matches_pair_enumeration_small_fields() {
        for (p, r) in [(2u64, 1usize), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let field = FieldSpec::new(p, r, Modulus::Auto).unwrap();
            let elems = field.enumerate(CAP).unwrap();
            for a1 in &elems[..2] {
                for a3 in &elems[..2] {
                    for a4 in &elems {
                        for a6 in &elems {
                            let c = [a1.clone(), field.one(), a3.clone(), a4.clone(), a6.clone()];
                            let Ok(e) = Curve::new(field.clone(), c) else { continue };
                            for n in 1..=2 {
                                assert_eq!(
                                    count_points_bruteforce(&e, n, CAP).unwrap(),
                                    count_points_pairs(&e, n, CAP).unwrap()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tower_examples() {
        let to_vec = |v: Vec<BigInt>| v.into_iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_vec(point_counts_tower(-3, 5, 2).unwrap()), vec![9, 27]);
        assert_eq!(to_vec(point_counts_tower(0, 5, 2).unwrap()), vec![6, 36]);
        assert_eq!(to_vec(point_counts_tower(4, 4, 1).unwrap()), vec![1]);
        assert_eq!(
            point_counts_tower(5, 5, 1),
            Err(CurveError::HasseViolation { a: 5, q: 5 })
        );
    }

    #[test]
    fn tower_consistency_with_enumeration() {
        for e in [Curve::short(f(5), 1, 1).unwrap(), Curve::short(f(7), 3, 2).unwrap(), curve_f2_supersingular()]
        {
            let a = frobenius_trace(&e, CAP).unwrap();
            let q = e.q();
            let mut n_max = 1;
            while q.pow(n_max as u32 + 1) <= 100_000 {
                n_max += 1;
            }
            let tower = point_counts_tower(a, q, n_max).unwrap();
            for n in 1..=n_max {
                assert_eq!(
                    BigInt::from(count_points_bruteforce(&e, n, CAP).unwrap()),
                    tower[n - 1],
                    "n = {n}, q = {q}"
                );
            }
        }
    }

    #[test]
    fn closed_point_examples() {
        let t = closed_points(-3, 5, 2).unwrap();
        assert_eq!(t.counts, vec![9, 9]);
        let t = closed_points(0, 5, 2).unwrap();
        assert_eq!(t.counts, vec![6, 15]);
        for (a, q) in [(-3, 5), (2, 7), (4, 4), (-2, 2)] {
            let n1 = q as i64 + 1 - a;
            assert_eq!(closed_points(a, q, 1).unwrap().counts, vec![n1 as u128]);
        }
    }

    #[test]
    fn divisor_identity() {
        for (a, q) in [(-3i64, 5u64), (0, 5), (0, 2), (1, 2), (-4, 4), (5, 13)] {
            let t = closed_points(a, q, 12).unwrap();
            let tower = point_counts_tower(a, q, 12).unwrap();
            for n in 1..=12 {
                assert_eq!(BigInt::from(t.divisor_sum(n)), tower[n - 1]);
            }
        }
    }

    #[test]
    fn oracle_matches_mobius() {
        let e = Curve::short(f(5), 1, 1).unwrap();
        assert_eq!(closed_points_oracle(&e, 2, CAP).unwrap(), closed_points(-3, 5, 2).unwrap());
        let e = Curve::short(f(5), 0, 1).unwrap();
        assert_eq!(closed_points_oracle(&e, 2, CAP).unwrap(), closed_points(0, 5, 2).unwrap());
        let e = curve_f2_supersingular();
        let a = frobenius_trace(&e, CAP).unwrap();
        assert_eq!(closed_points_oracle(&e, 4, CAP).unwrap(), closed_points(a, 2, 4).unwrap());
    }

    #[test]
    fn oracle_degree_one_is_rational_points() {
        let e = Curve::short(f(7), 3, 2).unwrap();
        let t = closed_points_oracle(&e, 1, CAP).unwrap();
        assert_eq!(t.counts[0] as u64, count_points_bruteforce(&e, 1, CAP).unwrap());
    }

    #[test]
    fn oracle_cap() {
        let e = Curve::short(f(7), 1, 0).unwrap();
        // lcm(1..=4) = 12, 7^12 far above the cap
        assert!(matches!(closed_points_oracle(&e, 4, CAP), Err(CurveError::CapExceeded { .. })));
        assert!(matches!(count_points_bruteforce(&e, 8, CAP), Err(CurveError::CapExceeded { .. })));
    }

    #[test]
    fn extension_field_curve() {
        // y² + xy = x³ + 1 over F_4 (ordinary, j ≠ 0)
        let f4 = FieldSpec::new(2, 2, Modulus::Auto).unwrap();
        let z = f4.zero();
        let e = Curve::new(f4.clone(), [f4.one(), z.clone(), z.clone(), z, f4.one()]).unwrap();
        let a = frobenius_trace(&e, CAP).unwrap();
        let tower = point_counts_tower(a, 4, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(BigInt::from(count_points_bruteforce(&e, n, CAP).unwrap()), tower[n - 1]);
        }
        assert_eq!(closed_points_oracle(&e, 3, CAP).unwrap(), closed_points(a, 4, 3).unwrap());
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_decompose(5).unwrap(), (5, 1));
        assert_eq!(prime_power_decompose(49).unwrap(), (7, 2));
        assert_eq!(prime_power_decompose(32).unwrap(), (2, 5));
        assert_eq!(prime_power_decompose(12), Err(CurveError::NotPrimePower(12)));
    }

    #[test]
    fn reduction_labels() {
        assert_eq!(Reduction::classify(0, 5), Reduction::Supersingular);
        assert_eq!(Reduction::classify(-3, 5), Reduction::Ordinary);
        assert_eq!(Reduction::classify(4, 2), Reduction::Supersingular);
    }

    #[test]
    fn config_roundtrip_builds_curve() {
        let cfg = CurveConfig {
            p: 5,
            r: 1,
            modulus: None,
            a1: vec![],
            a2: vec![],
            a3: vec![],
            a4: vec![1],
            a6: vec![1],
        };
        let e = cfg.build().unwrap();
        assert_eq!(e, Curve::short(f(5), 1, 1).unwrap());
    }
}
