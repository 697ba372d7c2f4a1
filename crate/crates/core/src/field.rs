//! Exact arithmetic in `F_p` and `F_{p^r}`.
//!
//! Extension fields are realised concretely as `F_p[x]/(m(x))` for a monic
//! irreducible `m` of degree `r`. Elements are coefficient vectors of length
//! `r` (lowest degree first). Every element also has an integer *index*
//! `Σ c_i p^i` in `[0, q)`, which is the enumeration order used by
//! [`FieldSpec::enumerate`] and by the table-driven point counters.

use std::fmt;

use thiserror::Error;

/// Default cap on the number of field elements any enumeration may touch.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size p^r overflows u64 (p = {p}, r = {r})")]
    SizeOverflow { p: u64, r: usize },
    #[error("modulus is not a monic polynomial of degree {expected}")]
    MalformedModulus { expected: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("no monic irreducible polynomial of degree {r} over F_{p} found")]
    NoIrreducible { p: u64, r: usize },
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("enumeration of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("no embedding of F_{small} into F_{big}")]
    NoEmbedding { small: u64, big: u64 },
}

/// How the defining polynomial of an extension is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Modulus {
    /// Lexicographically least monic irreducible polynomial of the degree.
    Auto,
    /// Explicit coefficient list, lowest degree first, `r + 1` entries with a
    /// leading 1. Entries are reduced mod `p`.
    Given(Vec<i64>),
}

/// A validated finite field `F_q`, `q = p^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    r: usize,
    /// Monic, lowest degree first, length `r + 1`.
    modulus: Vec<u64>,
    q: u64,
}

/// A field element as a residue class polynomial of degree `< r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// The binary/unary operations exposed through [`FieldSpec::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense polynomials over `F_p`, lowest degree first, no trailing zeros.
mod poly {
    pub(super) type Poly = Vec<u64>;

    pub(super) fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub(super) fn inv_mod(a: u64, p: u64) -> u64 {
        super::pow_mod(a, p - 2, p)
    }

    pub(super) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] * lead_inv % p;
            if c != 0 {
                let shift = top - dm;
                for (j, &mj) in m.iter().enumerate() {
                    a[shift + j] = (a[shift + j] + p - c * mj % p) % p;
                }
            }
            a.pop();
            a = trim(a);
        }
        a
    }

    pub(super) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(out)
    }

    pub(super) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub(super) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^e mod m`.
    pub(super) fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
        let mut result = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    pub(super) fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Irreducibility of a monic polynomial of degree `r` over `F_p`.
///
/// Degree ≤ 3: irreducible iff no roots. Higher degree: Ben-Or's test,
/// `gcd(x^{p^k} - x, m) = 1` for `k = 1..=r/2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let r = m.len() - 1;
    if r == 1 {
        return true;
    }
    if r <= 3 {
        return (0..p).all(|x| poly::eval(m, x, p) != 0);
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=r / 2 {
        xp = poly::pow_mod(&xp, p, m, p);
        let g = poly::gcd(m, &poly::sub(&xp, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    /// Validate `(p, r, modulus)` and build the field.
    pub fn new(p: u64, r: usize, modulus: Modulus) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = u32::try_from(r)
            .ok()
            .and_then(|r32| p.checked_pow(r32))
            .ok_or(FieldError::SizeOverflow { p, r })?;
        let modulus = match modulus {
            Modulus::Auto => auto_modulus(p, r)?,
            Modulus::Given(coeffs) => {
                let m: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                if m.len() != r + 1 || m[r] != 1 {
                    return Err(FieldError::MalformedModulus { expected: r });
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                m
            }
        };
        Ok(Self { p, r, modulus, q })
    }

    /// The prime field `F_p` (modulus `x`).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, Modulus::Auto)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.r] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    /// Element from a (possibly short) coefficient list, lowest degree first;
    /// entries are reduced mod `p`.
    pub fn element(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.r {
            return Err(FieldError::FieldMismatch);
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u64;
        }
        Ok(e)
    }

    /// The class of `x` (a generator of the extension when `r > 1`).
    pub fn generator(&self) -> FieldElement {
        if self.r == 1 {
            // x ≡ -m_0 mod (x + m_0)
            return self.from_int(-(self.modulus[0] as i64));
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.r && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn element_from_index(&self, mut index: u64) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        e
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All `q` elements in index order (`0`, `1`, ...).
    pub fn enumerate(&self, cap: u64) -> Result<Vec<FieldElement>, FieldError> {
        if self.q > cap {
            return Err(FieldError::CapExceeded { size: self.q, cap });
        }
        Ok((0..self.q).map(|i| self.element_from_index(i)).collect())
    }

    /// Checked entry point for the four basic operations.
    pub fn apply(
        &self,
        op: FieldOp,
        a: &FieldElement,
        b: Option<&FieldElement>,
    ) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        match op {
            FieldOp::Add => {
                let b = b.ok_or(FieldError::FieldMismatch)?;
                self.check(b)?;
                Ok(self.add(a, b))
            }
            FieldOp::Mul => {
                let b = b.ok_or(FieldError::FieldMismatch)?;
                self.check(b)?;
                Ok(self.mul(a, b))
            }
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow(k) => Ok(self.pow(a, k)),
        }
    }

    // The unchecked operations below assume their inputs satisfy `contains`.

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let r = self.r;
        if r == 1 {
            return FieldElement { coeffs: vec![a.coeffs[0] * b.coeffs[0] % p] };
        }
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // x^k = x^{k-r} · x^r ≡ -x^{k-r} Σ_{j<r} m_j x^j
            for j in 0..r {
                let t = c * self.modulus[j] % p;
                let idx = k - r + j;
                prod[idx] = (prod[idx] + p - t) % p;
            }
        }
        prod.truncate(r);
        FieldElement { coeffs: prod }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Square-and-multiply.
    pub fn pow(&self, a: &FieldElement, mut k: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `a^p`, the absolute Frobenius.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Absolute trace to `F_p`: `Σ_{i<r} a^{p^i}` (lands in the constants).
    pub fn absolute_trace(&self, a: &FieldElement) -> u64 {
        let mut acc = self.zero();
        let mut x = a.clone();
        for _ in 0..self.r {
            acc = self.add(&acc, &x);
            x = self.frobenius(&x);
        }
        acc.coeffs[0]
    }

    /// `Σ c_i g^i` evaluated in `self` for a polynomial `c` over `F_p`.
    fn eval_poly_at(&self, coeffs: &[u64], g: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.from_int(c as i64));
        }
        acc
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// Lexicographically least monic irreducible of degree `r`: candidates are
/// visited in increasing order of `Σ c_i p^i` over the non-leading
/// coefficients.
fn auto_modulus(p: u64, r: usize) -> Result<Vec<u64>, FieldError> {
    let count = p
        .checked_pow(r as u32)
        .ok_or(FieldError::SizeOverflow { p, r })?;
    for mut idx in 0..count {
        let mut m = vec![0u64; r + 1];
        for c in m.iter_mut().take(r) {
            *c = idx % p;
            idx /= p;
        }
        m[r] = 1;
        if is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    Err(FieldError::NoIrreducible { p, r })
}

/// A concrete embedding `F_{p^s} → F_{p^r}` (`s | r`), determined by the
/// image of the small field's generator: the first root, in enumeration
/// order, of the small modulus inside the big field.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    small: FieldSpec,
    big: FieldSpec,
    generator_image: FieldElement,
}

impl FieldEmbedding {
    pub fn new(small: &FieldSpec, big: &FieldSpec, cap: u64) -> Result<Self, FieldError> {
        if small.p != big.p || big.r % small.r != 0 {
            return Err(FieldError::NoEmbedding { small: small.q, big: big.q });
        }
        let generator_image = if small.r == 1 {
            big.from_int(-(small.modulus[0] as i64))
        } else {
            if big.q > cap {
                return Err(FieldError::CapExceeded { size: big.q, cap });
            }
            (0..big.q)
                .map(|i| big.element_from_index(i))
                .find(|b| big.eval_poly_at(&small.modulus, b).is_zero())
                .ok_or(FieldError::NoEmbedding { small: small.q, big: big.q })?
        };
        Ok(Self { small: small.clone(), big: big.clone(), generator_image })
    }

    pub fn embed(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.small.check(a)?;
        Ok(self.big.eval_poly_at(&a.coeffs, &self.generator_image))
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }
}

/// One-shot embedding of `a` from `small` into `big`.
pub fn subfield_embed(
    small: &FieldSpec,
    big: &FieldSpec,
    a: &FieldElement,
) -> Result<FieldElement, FieldError> {
    FieldEmbedding::new(small, big, DEFAULT_ENUMERATION_CAP)?.embed(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldSpec {
        FieldSpec::new(2, 2, Modulus::Auto).unwrap()
    }

    #[test]
    fn auto_modulus_prime_field() {
        let f = FieldSpec::new(5, 1, Modulus::Auto).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 5);
    }

    #[test]
    fn auto_modulus_f4_matches_exhaustive_search() {
        // Oracle: the monic quadratics over F_2 are x², x²+1, x²+x, x²+x+1;
        // only the last has no root in F_2.
        let irreducible: Vec<[u64; 3]> = (0..4u64)
            .map(|i| [i & 1, i >> 1, 1])
            .filter(|m| (0..2).all(|x| (m[0] + m[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(f4().order(), 4);
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(FieldSpec::new(4, 1, Modulus::Auto), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldSpec::new(1, 1, Modulus::Auto), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x² + 1 = (x + 1)² over F_2
        let err = FieldSpec::new(2, 2, Modulus::Given(vec![1, 0, 1])).unwrap_err();
        assert_eq!(err, FieldError::ReducibleModulus(2));
        // (x² + x + 1)² over F_2 has no roots but is reducible
        let err = FieldSpec::new(2, 4, Modulus::Given(vec![1, 0, 1, 0, 1])).unwrap_err();
        assert_eq!(err, FieldError::ReducibleModulus(2));
        let err = FieldSpec::new(2, 2, Modulus::Given(vec![1, 1])).unwrap_err();
        assert_eq!(err, FieldError::MalformedModulus { expected: 2 });
    }

    #[test]
    fn ben_or_agrees_with_root_free_count_degree_four() {
        // Number of monic irreducible quartics over F_2 is (2^4 - 2^2)/4 = 3.
        let count = (0..16u64)
            .filter(|&i| {
                let m: Vec<u64> = (0..4).map(|k| (i >> k) & 1).chain([1]).collect();
                is_irreducible(&m, 2)
            })
            .count();
        assert_eq!(count, 3);
        // Over F_3: (3^4 - 3^2)/4 = 18.
        let count = (0..81u64)
            .filter(|&i| {
                let mut j = i;
                let mut m = Vec::new();
                for _ in 0..4 {
                    m.push(j % 3);
                    j /= 3;
                }
                m.push(1);
                is_irreducible(&m, 3)
            })
            .count();
        assert_eq!(count, 18);
    }

    #[test]
    fn basic_operations() {
        let f5 = FieldSpec::prime(5).unwrap();
        let two = f5.from_int(2);
        assert_eq!(f5.apply(FieldOp::Inv, &two, None).unwrap(), f5.from_int(3));
        assert_eq!(f5.apply(FieldOp::Pow(4), &two, None).unwrap(), f5.one());

        let f = f4();
        let x = f.generator();
        assert_eq!(f.apply(FieldOp::Mul, &x, Some(&x)).unwrap(), f.element(&[1, 1]).unwrap());
    }

    #[test]
    fn operation_errors() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.apply(FieldOp::Inv, &f5.zero(), None), Err(FieldError::ZeroInverse));
        let foreign = f4().one();
        assert_eq!(
            f5.apply(FieldOp::Add, &f5.one(), Some(&foreign)),
            Err(FieldError::FieldMismatch)
        );
    }

    #[test]
    fn enumeration_order_and_cap() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.enumerate(10).unwrap(), vec![f2.zero(), f2.one()]);
        let f5 = FieldSpec::prime(5).unwrap();
        let all = f5.enumerate(10).unwrap();
        assert_eq!(all, (0..5).map(|i| f5.from_int(i)).collect::<Vec<_>>());
        let f = f4();
        let all = f.enumerate(10).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], f.zero());
        assert_eq!(all[1], f.one());
        assert_eq!(
            FieldSpec::new(2, 4, Modulus::Auto).unwrap().enumerate(10),
            Err(FieldError::CapExceeded { size: 16, cap: 10 })
        );
    }

    #[test]
    fn enumeration_distinct() {
        let f = FieldSpec::new(3, 3, Modulus::Auto).unwrap();
        let mut all = f.enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 27);
    }

    #[test]
    fn inverse_and_fermat_exhaustive_small_fields() {
        for (p, r) in [(2, 1), (2, 3), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2), (61, 1)] {
            let f = FieldSpec::new(p, r, Modulus::Auto).unwrap();
            assert!(f.order() <= 64);
            for a in f.enumerate(64).unwrap() {
                assert_eq!(f.pow(&a, f.order()), a, "a^q = a in {f}");
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn ring_axioms_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (p, r) in [(2, 5), (3, 4), (5, 3), (7, 2), (101, 2)] {
            let f = FieldSpec::new(p, r, Modulus::Auto).unwrap();
            for _ in 0..200 {
                let mut pick = || f.element_from_index(rng.gen_range(0..f.order()));
                let (a, b, c) = (pick(), pick(), pick());
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let f = FieldSpec::new(3, 3, Modulus::Auto).unwrap();
        for i in 0..27 {
            assert_eq!(f.index_of(&f.element_from_index(i)), i);
        }
    }

    #[test]
    fn embeddings() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f = f4();
        assert_eq!(subfield_embed(&f2, &f, &f2.one()).unwrap(), f.one());
        assert_eq!(subfield_embed(&f2, &f, &f2.zero()).unwrap(), f.zero());

        let f5 = FieldSpec::prime(5).unwrap();
        let f25 = FieldSpec::new(5, 2, Modulus::Auto).unwrap();
        assert_eq!(
            subfield_embed(&f5, &f25, &f5.from_int(3)).unwrap(),
            f25.element(&[3]).unwrap()
        );

        let f8 = FieldSpec::new(2, 3, Modulus::Auto).unwrap();
        assert_eq!(
            subfield_embed(&f, &f8, &f.one()),
            Err(FieldError::NoEmbedding { small: 4, big: 8 })
        );
    }

    #[test]
    fn embedding_is_ring_homomorphism() {
        let small = FieldSpec::new(2, 2, Modulus::Auto).unwrap();
        let big = FieldSpec::new(2, 6, Modulus::Auto).unwrap();
        let emb = FieldEmbedding::new(&small, &big, DEFAULT_ENUMERATION_CAP).unwrap();
        let elems = small.enumerate(16).unwrap();
        for a in &elems {
            for b in &elems {
                let ea = emb.embed(a).unwrap();
                let eb = emb.embed(b).unwrap();
                assert_eq!(emb.embed(&small.mul(a, b)).unwrap(), big.mul(&ea, &eb));
                assert_eq!(emb.embed(&small.add(a, b)).unwrap(), big.add(&ea, &eb));
            }
        }
    }

    #[test]
    fn absolute_trace_of_constants() {
        let f = FieldSpec::new(2, 3, Modulus::Auto).unwrap();
        // Tr(1) = r mod p
        assert_eq!(f.absolute_trace(&f.one()), 1);
        let f = FieldSpec::new(2, 2, Modulus::Auto).unwrap();
        assert_eq!(f.absolute_trace(&f.one()), 0);
    }
}
