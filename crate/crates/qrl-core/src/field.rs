//! Exact arithmetic in finite fields `GF(p^k)`.
//!
//! A field is represented as `Z_p[X]/(m(X))` where `m` is the canonical
//! modulus for `(p, k)`: the monic irreducible polynomial of degree `k`
//! whose coefficient vector encodes the smallest integer in base `p`
//! (constant coefficient least significant). The choice is deterministic,
//! so printed element representations are reproducible across runs.
//!
//! Elements are coefficient vectors of length `k` over the prime field.
//! The field object carries the modulus; all operations take the field
//! explicitly, and elements are plain data.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible field cardinality. Exponent arithmetic in root
/// finding uses `u64`, so `p^k` must stay well below `2^63`.
const MAX_CARDINALITY: u128 = 1 << 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field GF({p}^{k}) exceeds the supported size bound")]
    TooLarge { p: u64, k: usize },
    #[error("no irreducible modulus of degree {0} found (internal error)")]
    NoModulus(usize),
    #[error("invalid field spec `{0}`: expected `p` or `p^k`")]
    BadSpec(String),
}

/// An element of a finite field: coefficients over the prime field,
/// little-endian in the field generator, always of length `field.degree()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// The field `GF(p^k)` with its canonical modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic modulus over `Z_p`, little-endian, length `k + 1`. For the
    /// prime field this is just `X`.
    modulus: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FiniteField {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// `GF(p^k)` with the canonical modulus for `(p, k)`.
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut card: u128 = 1;
        for _ in 0..k {
            card = card.saturating_mul(p as u128);
            if card > MAX_CARDINALITY {
                return Err(FieldError::TooLarge { p, k });
            }
        }
        if k == 1 {
            return Ok(FiniteField {
                p,
                k,
                modulus: vec![0, 1],
            });
        }
        let modulus = canonical_modulus(p, k).ok_or(FieldError::NoModulus(k))?;
        Ok(FiniteField { p, k, modulus })
    }

    /// Parses `"p"` or `"p^k"`.
    pub fn parse_spec(spec: &str) -> Result<Self, FieldError> {
        let spec = spec.trim();
        let bad = || FieldError::BadSpec(spec.to_string());
        if let Some((base, exp)) = spec.split_once('^') {
            let p: u64 = base.trim().parse().map_err(|_| bad())?;
            let k: usize = exp.trim().parse().map_err(|_| bad())?;
            FiniteField::new(p, k)
        } else {
            let p: u64 = spec.parse().map_err(|_| bad())?;
            FiniteField::prime(p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn cardinality(&self) -> u64 {
        let mut c = 1u64;
        for _ in 0..self.k {
            c *= self.p;
        }
        c
    }

    pub fn spec_string(&self) -> String {
        if self.k == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.k)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = n % self.p;
        FieldElement { coeffs }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        self.from_u64(r as u64)
    }

    /// The image of the field generator (the class of `X`). In the prime
    /// field this is the residue of `0 + 1·X mod X`, i.e. zero.
    pub fn generator(&self) -> FieldElement {
        if self.k == 1 {
            return self.zero();
        }
        let mut coeffs = vec![0; self.k];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    /// Element from its index in `0..cardinality()`: base-`p` digits,
    /// constant coefficient least significant. This is the enumeration
    /// order used everywhere a "least" element is selected.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn element_index(&self, a: &FieldElement) -> u64 {
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.cardinality()).map(move |i| self.element_from_index(i))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.k == 1 {
            let v = (a.coeffs[0] as u128 * b.coeffs[0] as u128) % self.p as u128;
            return FieldElement {
                coeffs: vec![v as u64],
            };
        }
        let mut prod = vec![0u128; 2 * self.k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % self.p as u128;
            }
        }
        self.reduce(prod)
    }

    /// Reduces a raw product modulo the (monic) modulus.
    fn reduce(&self, mut prod: Vec<u128>) -> FieldElement {
        let p = self.p as u128;
        for i in (self.k..prod.len()).rev() {
            let c = prod[i] % p;
            if c != 0 {
                // prod -= c * X^(i-k) * modulus
                for (j, &m) in self.modulus.iter().enumerate().take(self.k) {
                    let idx = i - self.k + j;
                    let s = (c * (m as u128)) % p;
                    prod[idx] = (prod[idx] + p * p - s) % p;
                }
            }
            prod[i] = 0;
        }
        FieldElement {
            coeffs: prod[..self.k].iter().map(|&c| (c % p) as u64).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2) = a^{-1} in GF(q).
        Some(self.pow(a, self.cardinality() - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The Frobenius endomorphism `x -> x^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// `x -> x^(p^e)`.
    pub fn frobenius_iter(&self, a: &FieldElement, e: usize) -> FieldElement {
        let mut x = a.clone();
        for _ in 0..e {
            x = self.frobenius(&x);
        }
        x
    }

    /// Smallest `e >= 1` with `a^(p^e) = a`; divides `k`.
    pub fn element_degree(&self, a: &FieldElement) -> usize {
        let mut x = self.frobenius(a);
        let mut e = 1;
        while &x != a {
            x = self.frobenius(&x);
            e += 1;
        }
        e
    }

    pub fn is_in_prime_field(&self, a: &FieldElement) -> bool {
        a.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// For prime-subfield elements, the residue in `0..p`.
    pub fn as_prime_residue(&self, a: &FieldElement) -> Option<u64> {
        if self.is_in_prime_field(a) {
            Some(a.coeffs[0])
        } else {
            None
        }
    }

    /// The index-least square root, if `a` is a square.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.p == 2 {
            // Frobenius is bijective: sqrt(a) = a^(q/2).
            return Some(self.pow(a, self.cardinality() / 2));
        }
        let q = self.cardinality();
        // Euler criterion, then bounded deterministic search.
        if self.pow(a, (q - 1) / 2) != self.one() {
            return None;
        }
        if q % 4 == 3 {
            let r = self.pow(a, (q + 1) / 4);
            let other = self.neg(&r);
            return Some(if self.element_index(&r) <= self.element_index(&other) {
                r
            } else {
                other
            });
        }
        for i in 0..q {
            let t = self.element_from_index(i);
            if self.mul(&t, &t) == *a {
                return Some(t);
            }
        }
        None
    }

    pub fn format_element(&self, a: &FieldElement) -> String {
        if self.k == 1 {
            return a.coeffs[0].to_string();
        }
        if self.is_zero(a) {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }

    /// The canonical degree-`d` extension together with the embedding of
    /// this field into it.
    pub fn extension(&self, d: usize) -> Result<(FiniteField, FieldEmbedding), FieldError> {
        if d == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let big = FiniteField::new(self.p, self.k * d)?;
        let embedding = FieldEmbedding::new(self, &big)?;
        Ok((big, embedding))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec_string())
    }
}

/// An embedding `GF(p^k) -> GF(p^m)` with `k | m`, determined by the
/// index-least root of the small field's modulus in the big field.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    from: FiniteField,
    to: FiniteField,
    gen_image: FieldElement,
}

impl FieldEmbedding {
    pub fn new(from: &FiniteField, to: &FiniteField) -> Result<Self, FieldError> {
        assert_eq!(from.p, to.p, "embedding requires equal characteristic");
        assert!(
            to.k % from.k == 0,
            "GF({}) does not embed in GF({})",
            from.spec_string(),
            to.spec_string()
        );
        let gen_image = if from.k == 1 {
            to.zero()
        } else {
            // Roots of the base modulus, coefficients lifted as constants.
            let f: Vec<FieldElement> = from.modulus.iter().map(|&c| to.from_u64(c)).collect();
            let roots = crate::unipoly::roots(to, &f);
            roots.into_iter().next().ok_or(FieldError::NoModulus(from.k))?
        };
        Ok(FieldEmbedding {
            from: from.clone(),
            to: to.clone(),
            gen_image,
        })
    }

    /// The identity embedding of a field into itself.
    pub fn identity(field: &FiniteField) -> Self {
        FieldEmbedding {
            from: field.clone(),
            to: field.clone(),
            gen_image: field.generator(),
        }
    }

    pub fn from_field(&self) -> &FiniteField {
        &self.from
    }

    pub fn to_field(&self) -> &FiniteField {
        &self.to
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        // Horner evaluation of a's coefficient polynomial at gen_image.
        let mut acc = self.to.zero();
        for &c in a.coeffs().iter().rev() {
            acc = self.to.mul(&acc, &self.gen_image);
            acc = self.to.add(&acc, &self.to.from_u64(c));
        }
        acc
    }

    /// Inverse image for elements that lie in the subfield: matches by
    /// exhaustive evaluation over the small field. Intended for small
    /// fields only (used when contracting factor coefficients).
    pub fn preimage(&self, b: &FieldElement) -> Option<FieldElement> {
        for a in self.from.elements() {
            if &self.apply(&a) == b {
                return Some(a);
            }
        }
        None
    }
}

/// Deterministic search for the canonical modulus: the monic irreducible
/// of degree `k` over `Z_p` with the smallest coefficient index.
fn canonical_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    let prime = FiniteField {
        p,
        k: 1,
        modulus: vec![0, 1],
    };
    let mut total: u128 = 1;
    for _ in 0..k {
        total *= p as u128;
    }
    for idx in 0..total {
        let mut rest = idx;
        let mut coeffs = Vec::with_capacity(k + 1);
        for _ in 0..k {
            coeffs.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        coeffs.push(1); // monic
        if is_irreducible(&prime, &coeffs) {
            return Some(coeffs);
        }
    }
    None
}

/// Irreducibility over the prime field: `X^(p^k) ≡ X (mod f)` and
/// `gcd(X^(p^(k/t)) - X, f) = 1` for every prime `t | k`. The gcd steps
/// are a divisor search: they detect factors of each proper degree.
fn is_irreducible(prime: &FiniteField, f: &[u64]) -> bool {
    use crate::unipoly as up;
    let k = f.len() - 1;
    let f: Vec<FieldElement> = f.iter().map(|&c| prime.from_u64(c)).collect();
    if k == 1 {
        return true;
    }
    if prime.is_zero(&f[0]) {
        // X divides f.
        return false;
    }
    let x = vec![prime.zero(), prime.one()];
    // frob[j] = X^(p^j) mod f, built by repeated p-th powers.
    let mut frob = x.clone();
    let mut js = Vec::new();
    let mut t = 2;
    let mut rem = k;
    while rem > 1 {
        if rem % t == 0 {
            js.push(k / t);
            while rem % t == 0 {
                rem /= t;
            }
        }
        t += 1;
    }
    for j in 1..=k {
        frob = up::pow_mod(prime, &frob, prime.characteristic(), &f);
        if js.contains(&j) {
            let diff = up::sub(prime, &frob, &x);
            let g = up::gcd(prime, &diff, &f);
            if up::degree(&g) != Some(0) {
                return false;
            }
        }
    }
    // frob is now X^(p^k) mod f.
    up::sub(prime, &frob, &x).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn prime_field_basics() {
        let f7 = FiniteField::prime(7).unwrap();
        let a = f7.from_u64(3);
        let b = f7.from_u64(5);
        assert_eq!(f7.add(&a, &b), f7.from_u64(1));
        assert_eq!(f7.mul(&a, &b), f7.from_u64(1));
        assert_eq!(f7.inv(&a), Some(f7.from_u64(5)));
        assert_eq!(f7.from_i64(-1), f7.from_u64(6));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::prime(6).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(FiniteField::new(5, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(FiniteField::new(2, 80).is_err());
    }

    #[test]
    fn parse_spec_roundtrip() {
        let f = FiniteField::parse_spec("2^3").unwrap();
        assert_eq!(f.cardinality(), 8);
        assert_eq!(f.spec_string(), "2^3");
        let f = FiniteField::parse_spec(" 11 ").unwrap();
        assert_eq!(f.cardinality(), 11);
        assert!(FiniteField::parse_spec("x").is_err());
        assert!(FiniteField::parse_spec("4").is_err());
    }

    #[test]
    fn canonical_modulus_is_deterministic() {
        let f8 = FiniteField::new(2, 3).unwrap();
        // x^3 + x + 1 encodes as index 3 and is the first irreducible cubic.
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f9 = FiniteField::new(3, 2).unwrap();
        // x^2 + 1 (index 1) is irreducible over GF(3).
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for field in [
            FiniteField::prime(2).unwrap(),
            FiniteField::prime(13).unwrap(),
            FiniteField::new(2, 4).unwrap(),
            FiniteField::new(3, 3).unwrap(),
            FiniteField::new(5, 2).unwrap(),
        ] {
            let q = field.cardinality();
            for _ in 0..200 {
                let a = field.element_from_index(rng.gen_range(0..q));
                let b = field.element_from_index(rng.gen_range(0..q));
                let c = field.element_from_index(rng.gen_range(0..q));
                let ab_c = field.mul(&field.mul(&a, &b), &c);
                let a_bc = field.mul(&a, &field.mul(&b, &c));
                assert_eq!(ab_c, a_bc);
                let left = field.mul(&a, &field.add(&b, &c));
                let right = field.add(&field.mul(&a, &b), &field.mul(&a, &c));
                assert_eq!(left, right);
                if !field.is_zero(&a) {
                    let ai = field.inv(&a).unwrap();
                    assert_eq!(field.mul(&a, &ai), field.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_endomorphism_of_order_dividing_k() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for field in [FiniteField::new(2, 6).unwrap(), FiniteField::new(7, 2).unwrap()] {
            let q = field.cardinality();
            for _ in 0..100 {
                let a = field.element_from_index(rng.gen_range(0..q));
                let b = field.element_from_index(rng.gen_range(0..q));
                let fa = field.frobenius(&a);
                let fb = field.frobenius(&b);
                assert_eq!(field.frobenius(&field.add(&a, &b)), field.add(&fa, &fb));
                assert_eq!(field.frobenius(&field.mul(&a, &b)), field.mul(&fa, &fb));
                assert_eq!(field.frobenius_iter(&a, field.degree()), a);
                assert!(field.degree() % field.element_degree(&a) == 0);
            }
        }
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let (f16, emb) = f4.extension(2).unwrap();
        assert_eq!(f16.cardinality(), 16);
        for a in f4.elements() {
            for b in f4.elements() {
                let lhs = emb.apply(&f4.mul(&a, &b));
                let rhs = f16.mul(&emb.apply(&a), &emb.apply(&b));
                assert_eq!(lhs, rhs);
                let lhs = emb.apply(&f4.add(&a, &b));
                let rhs = f16.add(&emb.apply(&a), &emb.apply(&b));
                assert_eq!(lhs, rhs);
            }
        }
        // Embedded base elements are fixed by Frobenius^k of the base.
        for a in f4.elements() {
            let img = emb.apply(&a);
            assert_eq!(f16.frobenius_iter(&img, 2), img);
            assert_eq!(emb.preimage(&img), Some(a));
        }
    }

    #[test]
    fn sqrt_finds_least_root() {
        for field in [
            FiniteField::prime(7).unwrap(),
            FiniteField::prime(13).unwrap(),
            FiniteField::new(2, 3).unwrap(),
            FiniteField::new(3, 2).unwrap(),
        ] {
            for a in field.elements() {
                let sq = field.mul(&a, &a);
                let r = field.sqrt(&sq).expect("square must have a root");
                assert_eq!(field.mul(&r, &r), sq);
            }
        }
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(f5.sqrt(&f5.from_u64(2)), None);
    }
}
