//! Univariate polynomial arithmetic over a [`FiniteField`].
//!
//! Polynomials are coefficient vectors, little-endian, with no trailing
//! zeros; the empty vector is the zero polynomial. Root finding is
//! deterministic: splitting elements are tried in field index order, so
//! results are reproducible across runs.

use crate::field::{FieldElement, FiniteField};

pub type UniPoly = Vec<FieldElement>;

pub fn trim(field: &FiniteField, mut f: UniPoly) -> UniPoly {
    while f.last().map_or(false, |c| field.is_zero(c)) {
        f.pop();
    }
    f
}

pub fn degree(f: &UniPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn constant(c: FieldElement, field: &FiniteField) -> UniPoly {
    trim(field, vec![c])
}

pub fn add(field: &FiniteField, f: &UniPoly, g: &UniPoly) -> UniPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| field.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| field.zero());
        out.push(field.add(&a, &b));
    }
    trim(field, out)
}

pub fn sub(field: &FiniteField, f: &UniPoly, g: &UniPoly) -> UniPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| field.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| field.zero());
        out.push(field.sub(&a, &b));
    }
    trim(field, out)
}

pub fn scale(field: &FiniteField, f: &UniPoly, c: &FieldElement) -> UniPoly {
    if field.is_zero(c) {
        return Vec::new();
    }
    f.iter().map(|a| field.mul(a, c)).collect()
}

pub fn mul(field: &FiniteField, f: &UniPoly, g: &UniPoly) -> UniPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if field.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            let t = field.mul(a, b);
            out[i + j] = field.add(&out[i + j], &t);
        }
    }
    trim(field, out)
}

/// Euclidean division `f = q*g + r` with `deg r < deg g`. Panics on zero
/// divisor.
pub fn divmod(field: &FiniteField, f: &UniPoly, g: &UniPoly) -> (UniPoly, UniPoly) {
    assert!(!g.is_empty(), "division by zero polynomial");
    let glead = field.inv(g.last().unwrap()).unwrap();
    let mut rem = f.clone();
    if rem.len() < g.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![field.zero(); rem.len() - g.len() + 1];
    while rem.len() >= g.len() {
        let c = field.mul(rem.last().unwrap(), &glead);
        let shift = rem.len() - g.len();
        if !field.is_zero(&c) {
            quot[shift] = c.clone();
            for (j, b) in g.iter().enumerate() {
                let t = field.mul(&c, b);
                rem[shift + j] = field.sub(&rem[shift + j], &t);
            }
        }
        rem.pop();
        rem = trim(field, rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim(field, quot), rem)
}

pub fn rem(field: &FiniteField, f: &UniPoly, g: &UniPoly) -> UniPoly {
    divmod(field, f, g).1
}

/// Monic gcd.
pub fn gcd(field: &FiniteField, f: &UniPoly, g: &UniPoly) -> UniPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    make_monic(field, a)
}

pub fn make_monic(field: &FiniteField, f: UniPoly) -> UniPoly {
    match f.last() {
        None => f,
        Some(lead) => {
            let li = field.inv(lead).unwrap();
            scale(field, &f, &li)
        }
    }
}

/// `x^e mod m` is `pow_mod(field, [0,1], e, m)`.
pub fn pow_mod(field: &FiniteField, base: &UniPoly, mut e: u64, m: &UniPoly) -> UniPoly {
    let mut b = rem(field, base, m);
    let mut acc = constant(field.one(), field);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), m);
        }
        b = rem(field, &mul(field, &b, &b), m);
        e >>= 1;
    }
    acc
}

pub fn eval(field: &FiniteField, f: &UniPoly, x: &FieldElement) -> FieldElement {
    let mut acc = field.zero();
    for c in f.iter().rev() {
        acc = field.mul(&acc, x);
        acc = field.add(&acc, c);
    }
    acc
}

pub fn derivative(field: &FiniteField, f: &UniPoly) -> UniPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, c) in f.iter().enumerate().skip(1) {
        out.push(field.mul(&field.from_u64(i as u64), c));
    }
    trim(field, out)
}

/// All distinct roots of `f` in `field`, sorted by element index.
///
/// First reduces to the product of `(x - r)` over the roots via
/// `gcd(f, x^q - x)`, then splits deterministically.
pub fn roots(field: &FiniteField, f: &UniPoly) -> Vec<FieldElement> {
    let f = trim(field, f.clone());
    if f.is_empty() {
        panic!("roots of the zero polynomial are not enumerable");
    }
    if f.len() == 1 {
        return Vec::new();
    }
    let q = field.cardinality();
    // For tiny fields exhaustive evaluation is cheapest and certainly exact.
    if q <= 64 {
        let out: Vec<FieldElement> = field
            .elements()
            .filter(|x| field.is_zero(&eval(field, &f, x)))
            .collect();
        return sort_by_index(field, out);
    }
    let x = vec![field.zero(), field.one()];
    let xq = pow_mod(field, &x, q, &f);
    let lin = gcd(field, &sub(field, &xq, &x), &f);
    let mut out = Vec::new();
    split_all_roots(field, lin, &mut out);
    sort_by_index(field, out)
}

fn sort_by_index(field: &FiniteField, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    v.sort_by_key(|e| field.element_index(e));
    v.dedup();
    v
}

/// `g` is monic and splits into distinct linear factors; extract them.
fn split_all_roots(field: &FiniteField, g: UniPoly, out: &mut Vec<FieldElement>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => {
            // x + c -> root -c
            out.push(field.neg(&g[0]));
        }
        Some(_) => {
            let (a, b) = split_once(field, &g);
            split_all_roots(field, a, out);
            split_all_roots(field, b, out);
        }
    }
}

/// Splits a monic product of >= 2 distinct linear factors into two proper
/// parts, trying shift elements in index order.
fn split_once(field: &FiniteField, g: &UniPoly) -> (UniPoly, UniPoly) {
    let q = field.cardinality();
    if field.characteristic() == 2 {
        // Trace splitting: gcd(g, Tr(c*x)) with Tr over GF(2).
        let m = (q as f64).log2().round() as u32;
        for ci in 0..q {
            let c = field.element_from_index(ci);
            if field.is_zero(&c) {
                continue;
            }
            let cx = vec![field.zero(), c];
            let mut tr = rem(field, &cx, g);
            let mut pw = tr.clone();
            for _ in 1..m {
                pw = rem(field, &mul(field, &pw, &pw), g);
                tr = add(field, &tr, &pw);
            }
            let h = gcd(field, &tr, g);
            let d = degree(&h);
            if d.is_some() && d != Some(0) && h.len() < g.len() {
                let (quot, _) = divmod(field, g, &h);
                return (h, make_monic(field, quot));
            }
        }
        unreachable!("trace splitting must succeed for squarefree split input");
    }
    for ci in 0..q {
        let c = field.element_from_index(ci);
        // gcd(g, (x + c)^((q-1)/2) - 1)
        let xc = vec![c, field.one()];
        let e = pow_mod(field, &xc, (q - 1) / 2, g);
        let em1 = sub(field, &e, &constant(field.one(), field));
        let h = gcd(field, &em1, g);
        let d = degree(&h);
        if d.is_some() && d != Some(0) && h.len() < g.len() {
            let (quot, _) = divmod(field, g, &h);
            return (h, make_monic(field, quot));
        }
    }
    unreachable!("splitting must succeed for squarefree split input");
}

/// Distinct monic irreducible factors of `f` with multiplicities, sorted by
/// (degree, coefficient indices). Exact and deterministic; intended for the
/// small degrees that arise from quartic restrictions.
pub fn factor(field: &FiniteField, f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let f = trim(field, f.clone());
    assert!(!f.is_empty(), "cannot factor the zero polynomial");
    let mut factors: Vec<(UniPoly, usize)> = Vec::new();
    let mut work = make_monic(field, f);
    while degree(&work).map_or(false, |d| d > 0) {
        let g = first_irreducible_factor(field, &work);
        let mut mult = 0;
        loop {
            let (q, r) = divmod(field, &work, &g);
            if r.is_empty() {
                work = q;
                mult += 1;
            } else {
                break;
            }
        }
        factors.push((g, mult));
    }
    factors.sort_by_key(|(g, _)| {
        let idxs: Vec<u64> = g.iter().map(|c| field.element_index(c)).collect();
        (g.len(), idxs)
    });
    factors
}

/// Finds one monic irreducible factor of minimal degree via distinct-degree
/// sieving and equal-degree splitting.
fn first_irreducible_factor(field: &FiniteField, f: &UniPoly) -> UniPoly {
    let q = field.cardinality();
    let n = degree(f).unwrap();
    let x = vec![field.zero(), field.one()];
    let mut xqd = x.clone();
    for d in 1..=n {
        xqd = pow_mod(field, &xqd, q, f);
        let g = gcd(field, &sub(field, &xqd, &x), f);
        if degree(&g).map_or(false, |dg| dg > 0) {
            // d is the first degree with factors, so every irreducible
            // factor of g has degree exactly d.
            return equal_degree_split(field, &g, d);
        }
    }
    f.clone()
}

/// The `idx`-th polynomial over `field` in the global index order: treats
/// `idx` as base-`q` digits used as coefficients `c_0, c_1, ...`.
fn poly_from_index(field: &FiniteField, mut idx: u128) -> UniPoly {
    let q = field.cardinality() as u128;
    let mut coeffs = Vec::new();
    while idx > 0 {
        coeffs.push(field.element_from_index((idx % q) as u64));
        idx /= q;
    }
    trim(field, coeffs)
}

/// Extracts one irreducible factor from a squarefree product of
/// irreducibles of common degree `d`, trying splitting polynomials in
/// global index order.
fn equal_degree_split(field: &FiniteField, g: &UniPoly, d: usize) -> UniPoly {
    let n = degree(g).unwrap();
    if n == d {
        return make_monic(field, g.clone());
    }
    let q = field.cardinality();
    let char2 = field.characteristic() == 2;
    let trace_len = if char2 {
        ((q as f64).log2().round() as u32) * d as u32
    } else {
        0
    };
    let e = if char2 {
        0
    } else {
        (pow_u128(q as u128, d as u32) - 1) / 2
    };
    // Skip constants: start at index q.
    for idx in (q as u128)..(q as u128).saturating_mul(1 << 16) {
        let h = poly_from_index(field, idx);
        if degree(&h).map_or(true, |dh| dh == 0) {
            continue;
        }
        let probe = if char2 {
            // Trace map h + h^2 + ... + h^(2^(trace_len - 1)) mod g.
            let mut tr = rem(field, &h, g);
            let mut pw = tr.clone();
            for _ in 1..trace_len {
                pw = rem(field, &mul(field, &pw, &pw), g);
                tr = add(field, &tr, &pw);
            }
            tr
        } else {
            let pw = pow_mod_u128(field, &h, e, g);
            sub(field, &pw, &constant(field.one(), field))
        };
        let w = gcd(field, &probe, g);
        if let Some(dw) = degree(&w) {
            if dw > 0 && dw < n {
                let part = if dw % d == 0 { w } else { divmod(field, g, &w).0 };
                return equal_degree_split(field, &make_monic(field, part), d);
            }
        }
    }
    unreachable!("equal-degree splitting must succeed");
}

fn pow_u128(b: u128, e: u32) -> u128 {
    let mut acc = 1u128;
    for _ in 0..e {
        acc *= b;
    }
    acc
}

fn pow_mod_u128(field: &FiniteField, base: &UniPoly, mut e: u128, m: &UniPoly) -> UniPoly {
    let mut b = rem(field, base, m);
    let mut acc = constant(field.one(), field);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), m);
        }
        b = rem(field, &mul(field, &b, &b), m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(field: &FiniteField, v: &[i64]) -> UniPoly {
        trim(field, v.iter().map(|&c| field.from_i64(c)).collect())
    }

    #[test]
    fn divmod_and_gcd() {
        let f7 = FiniteField::prime(7).unwrap();
        // (x+1)(x+2) = x^2 + 3x + 2
        let f = fe(&f7, &[2, 3, 1]);
        let g = fe(&f7, &[1, 1]);
        let (q, r) = divmod(&f7, &f, &g);
        assert!(r.is_empty());
        assert_eq!(q, fe(&f7, &[2, 1]));
        let h = fe(&f7, &[2, 1]);
        assert_eq!(gcd(&f7, &f, &h), fe(&f7, &[2, 1]));
    }

    #[test]
    fn roots_match_exhaustive_eval() {
        for field in [
            FiniteField::prime(5).unwrap(),
            FiniteField::prime(101).unwrap(),
            FiniteField::new(3, 4).unwrap(),
            FiniteField::new(2, 7).unwrap(),
        ] {
            // f = x(x-1)(x-2)·(irreducible-ish tail)
            let x = fe(&field, &[0, 1]);
            let a = fe(&field, &[-1, 1]);
            let b = fe(&field, &[-2, 1]);
            let t = fe(&field, &[1, 1, 0, 0, 1]);
            let f = mul(&field, &mul(&field, &x, &a), &mul(&field, &b, &t));
            let rs = roots(&field, &f);
            let expected: Vec<_> = field
                .elements()
                .filter(|e| field.is_zero(&eval(&field, &f, e)))
                .collect();
            let mut expected = expected;
            expected.sort_by_key(|e| field.element_index(e));
            assert_eq!(rs, expected);
        }
    }

    #[test]
    fn factor_recombines() {
        for field in [FiniteField::prime(3).unwrap(), FiniteField::new(2, 2).unwrap()] {
            let f = fe(&field, &[1, 0, 1, 1, 0, 1, 1]);
            let parts = factor(&field, &f);
            let mut prod = constant(field.one(), &field);
            for (g, m) in &parts {
                for _ in 0..*m {
                    prod = mul(&field, &prod, g);
                }
            }
            assert_eq!(prod, make_monic(&field, f));
        }
    }

    #[test]
    fn factor_finds_known_split() {
        let f5 = FiniteField::prime(5).unwrap();
        // (x^2+2)(x+1)^2 over GF(5); x^2+2 is irreducible.
        let f = mul(
            &f5,
            &fe(&f5, &[2, 0, 1]),
            &mul(&f5, &fe(&f5, &[1, 1]), &fe(&f5, &[1, 1])),
        );
        let parts = factor(&f5, &f);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (fe(&f5, &[1, 1]), 2));
        assert_eq!(parts[1], (fe(&f5, &[2, 0, 1]), 1));
    }
}
