//! Homogeneous trivariate polynomials over a finite field, projective
//! points, and the text parser for polynomial input.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := 'x' | 'y' | 'z' | uint | '(' expr ')'
//! ```
//!
//! Integer literals are reduced into the prime subfield; a leading minus
//! multiplies by the image of `p - 1`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldEmbedding, FiniteField};
use crate::unipoly::{self, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{var}` at position {pos}")]
    UnknownVariable { pos: usize, var: char },
    #[error("polynomial is not homogeneous: monomials of degrees {degrees:?}")]
    NonHomogeneous { degrees: Vec<usize> },
    #[error("polynomial is zero after reduction; it has no defined degree")]
    Zero,
    #[error("exponent {0} exceeds the supported bound")]
    ExponentTooLarge(u64),
}

/// A general (not necessarily homogeneous) polynomial in `x, y, z`; the
/// intermediate form produced by the parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FiniteField,
    terms: BTreeMap<[u8; 3], FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &FiniteField) -> Self {
        MultiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FiniteField, c: FieldElement) -> Self {
        let mut p = Self::zero(field);
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn variable(field: &FiniteField, var: usize) -> Self {
        let mut e = [0u8; 3];
        e[var] = 1;
        let mut p = Self::zero(field);
        p.add_term(e, field.one());
        p
    }

    fn add_term(&mut self, exps: [u8; 3], c: FieldElement) {
        if self.field.is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(|| self.field.zero());
        *entry = self.field.add(entry, &c);
        if self.field.is_zero(entry) {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = Self::zero(&self.field);
        for (e, c) in &self.terms {
            out.add_term(*e, self.field.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero(&self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> MultiPoly {
        let mut acc = Self::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Checks homogeneity and converts.
    pub fn into_homogeneous(self) -> Result<HomogeneousPoly, PolyError> {
        let mut degrees: Vec<usize> = self
            .terms
            .keys()
            .map(|e| (e[0] + e[1] + e[2]) as usize)
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        match degrees.as_slice() {
            [] => Err(PolyError::Zero),
            [d] => Ok(HomogeneousPoly {
                field: self.field,
                degree: *d,
                terms: self.terms,
            }),
            _ => Err(PolyError::NonHomogeneous { degrees }),
        }
    }
}

/// A nonzero homogeneous form in `x, y, z`. Zero coefficients are never
/// stored; every stored exponent triple sums to `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    field: FiniteField,
    degree: usize,
    terms: BTreeMap<[u8; 3], FieldElement>,
}

impl HomogeneousPoly {
    pub fn from_terms(
        field: &FiniteField,
        degree: usize,
        terms: impl IntoIterator<Item = ([u8; 3], FieldElement)>,
    ) -> Self {
        let mut p = MultiPoly::zero(field);
        for (e, c) in terms {
            assert_eq!(
                (e[0] + e[1] + e[2]) as usize,
                degree,
                "term degree mismatch"
            );
            p.add_term(e, c);
        }
        HomogeneousPoly {
            field: field.clone(),
            degree,
            terms: p.terms,
        }
    }

    /// Builds a form from integer-coefficient terms reduced into the field.
    pub fn from_integer_terms(
        field: &FiniteField,
        degree: usize,
        terms: &[(u8, u8, u8, i64)],
    ) -> Self {
        Self::from_terms(
            field,
            degree,
            terms
                .iter()
                .map(|&(i, j, k, c)| ([i, j, k], field.from_i64(c))),
        )
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u8; 3]) -> FieldElement {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &FieldElement) -> HomogeneousPoly {
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(c) {
            for (e, a) in &self.terms {
                terms.insert(*e, self.field.mul(a, c));
            }
        }
        HomogeneousPoly {
            field: self.field.clone(),
            degree: self.degree,
            terms,
        }
    }

    pub fn add(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        assert_eq!(self.degree, other.degree);
        let mut p = MultiPoly {
            field: self.field.clone(),
            terms: self.terms.clone(),
        };
        for (e, c) in &other.terms {
            p.add_term(*e, c.clone());
        }
        HomogeneousPoly {
            field: self.field.clone(),
            degree: self.degree,
            terms: p.terms,
        }
    }

    pub fn sub(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        let a = MultiPoly {
            field: self.field.clone(),
            terms: self.terms.clone(),
        };
        let b = MultiPoly {
            field: self.field.clone(),
            terms: other.terms.clone(),
        };
        HomogeneousPoly {
            field: self.field.clone(),
            degree: self.degree + other.degree,
            terms: a.mul(&b).terms,
        }
    }

    /// Canonical scaling: leading (lexicographically largest exponent)
    /// coefficient becomes one.
    pub fn normalized(&self) -> HomogeneousPoly {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, lead)) => {
                let li = self.field.inv(lead).unwrap();
                self.scale(&li)
            }
        }
    }

    pub fn partial(&self, var: usize) -> HomogeneousPoly {
        let mut p = MultiPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            let factor = self.field.from_u64(e[var] as u64);
            p.add_term(ne, self.field.mul(c, &factor));
        }
        HomogeneousPoly {
            field: self.field.clone(),
            degree: self.degree.saturating_sub(1),
            terms: p.terms,
        }
    }

    pub fn eval(&self, pt: &[FieldElement; 3]) -> FieldElement {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = self.field.mul(&t, &self.field.pow(&pt[v], exp as u64));
                }
            }
            acc = self.field.add(&acc, &t);
        }
        acc
    }

    /// Lifts coefficients along a field embedding.
    pub fn map_coefficients(&self, emb: &FieldEmbedding) -> HomogeneousPoly {
        assert_eq!(emb.from_field(), &self.field);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, emb.apply(c)))
            .collect();
        HomogeneousPoly {
            field: emb.to_field().clone(),
            degree: self.degree,
            terms,
        }
    }

    /// Tries to re-express a form over a subfield; succeeds when every
    /// coefficient lies in the image of the embedding.
    pub fn contract_coefficients(&self, emb: &FieldEmbedding) -> Option<HomogeneousPoly> {
        assert_eq!(emb.to_field(), &self.field);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, emb.preimage(c)?);
        }
        Some(HomogeneousPoly {
            field: emb.from_field().clone(),
            degree: self.degree,
            terms,
        })
    }

    /// Minimal `e` such that all coefficients are fixed by Frobenius^(k·e)
    /// where `k` is the degree of `sub` inside this field. Used to tag the
    /// field of definition of factors relative to a base field.
    pub fn coefficient_degree_over(&self, base_degree: usize) -> usize {
        let mut e = 1usize;
        let k = self.field.degree();
        assert!(k % base_degree == 0);
        let rel = k / base_degree;
        'outer: for cand in 1..=rel {
            if rel % cand != 0 {
                continue;
            }
            for c in self.terms.values() {
                if &self.field.frobenius_iter(c, base_degree * cand) != c {
                    continue 'outer;
                }
            }
            e = cand;
            break;
        }
        e
    }

    /// The restriction to the coordinate line `{var = 0}` as a binary form
    /// in the remaining two variables (in increasing variable order).
    pub fn coordinate_restriction(&self, var: usize) -> BinaryForm {
        let others: Vec<usize> = (0..3).filter(|&v| v != var).collect();
        let mut coeffs = vec![self.field.zero(); self.degree + 1];
        for (e, c) in &self.terms {
            if e[var] != 0 {
                continue;
            }
            let t = e[others[1]] as usize;
            coeffs[t] = self.field.add(&coeffs[t], c);
        }
        BinaryForm {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Division by a linear form; `None` when it does not divide.
    pub fn divide_by_linear(&self, line: &[FieldElement; 3]) -> Option<HomogeneousPoly> {
        if self.degree == 0 {
            return None;
        }
        let field = &self.field;
        let pivot = (0..3).rev().find(|&v| !field.is_zero(&line[v]))?;
        let inv = field.inv(&line[pivot]).unwrap();
        // line = a * (x_pivot - s) with s a linear form in the other vars.
        let mut s = [field.zero(), field.zero(), field.zero()];
        for v in 0..3 {
            if v != pivot {
                s[v] = field.neg(&field.mul(&line[v], &inv));
            }
        }
        // Horner division in the pivot variable: view self as
        // sum_i x_pivot^i * g_i(other vars).
        let mut layers: Vec<MultiPoly> = vec![MultiPoly::zero(field); self.degree + 1];
        for (e, c) in &self.terms {
            let i = e[pivot] as usize;
            let mut ne = *e;
            ne[pivot] = 0;
            layers[i].add_term(ne, c.clone());
        }
        let s_poly = {
            let mut p = MultiPoly::zero(field);
            for v in 0..3 {
                if v != pivot && !field.is_zero(&s[v]) {
                    let mut e = [0u8; 3];
                    e[v] = 1;
                    p.add_term(e, s[v].clone());
                }
            }
            p
        };
        let xp = MultiPoly::variable(field, pivot);
        let mut quot = MultiPoly::zero(field);
        let mut carry = MultiPoly::zero(field);
        for i in (1..=self.degree).rev() {
            carry = carry.add(&layers[i]);
            // quot += carry * x_pivot^(i-1)
            quot = quot.add(&carry.mul(&xp.pow((i - 1) as u64)));
            carry = carry.mul(&s_poly);
        }
        let remainder = carry.add(&layers[0]);
        if !remainder.terms.is_empty() {
            return None;
        }
        let scaled = quot.mul(&MultiPoly::constant(field, inv));
        Some(HomogeneousPoly {
            field: field.clone(),
            degree: self.degree - 1,
            terms: scaled.terms,
        })
    }

    /// Nested view for elimination: sets `one_var := 1` and returns the
    /// coefficients of powers of `outer_var` as univariate polynomials in
    /// the remaining variable.
    pub fn nested_in_chart(&self, one_var: usize, outer_var: usize) -> Vec<UniPoly> {
        assert_ne!(one_var, outer_var);
        let inner_var = (0..3).find(|&v| v != one_var && v != outer_var).unwrap();
        let mut layers: Vec<Vec<FieldElement>> = Vec::new();
        for (e, c) in &self.terms {
            let o = e[outer_var] as usize;
            let i = e[inner_var] as usize;
            while layers.len() <= o {
                layers.push(Vec::new());
            }
            let layer = &mut layers[o];
            while layer.len() <= i {
                layer.push(self.field.zero());
            }
            layer[i] = self.field.add(&layer[i], c);
        }
        let mut out: Vec<UniPoly> = layers
            .into_iter()
            .map(|l| unipoly::trim(&self.field, l))
            .collect();
        while out.last().map_or(false, |l| l.is_empty()) {
            out.pop();
        }
        out
    }

    /// Canonical printed form; parse(print(f)) == f for forms with
    /// prime-subfield coefficients.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let coeff_str = self.field.format_element(c);
            let is_one = c == &self.field.one();
            if !is_one || (e[0] == 0 && e[1] == 0 && e[2] == 0) {
                if self.field.is_in_prime_field(c) {
                    factors.push(coeff_str);
                } else {
                    factors.push(format!("({coeff_str})"));
                }
            }
            for (v, name) in ["x", "y", "z"].iter().enumerate() {
                match e[v] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    k => factors.push(format!("{name}^{k}")),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A homogeneous binary form; `coeffs[i]` multiplies `s^(d-i) t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: FiniteField,
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn new(field: &FiniteField, coeffs: Vec<FieldElement>) -> Self {
        BinaryForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Dehomogenization at `s = 1`, a univariate polynomial in `t`.
    pub fn dehomogenize(&self) -> UniPoly {
        unipoly::trim(&self.field, self.coeffs.clone())
    }

    /// Projective roots `[s : t]` in the target field of `emb`, normalized
    /// so the last nonzero coordinate is one. Includes `[0:1]` when the
    /// leading `s`-coefficient vanishes.
    pub fn proj_roots(&self, emb: &FieldEmbedding) -> Vec<(FieldElement, FieldElement)> {
        let big = emb.to_field();
        let lifted: UniPoly = unipoly::trim(
            big,
            self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        );
        assert!(!self.is_zero(), "zero binary form has no root set");
        let mut out = Vec::new();
        // Root at [0:1] iff coefficient of s^d (i.e. t-degree 0 ... careful:
        // coeffs[0] multiplies s^d; [0:1] plugs s=0: value = coeffs[d].
        if self.field.is_zero(self.coeffs.last().unwrap()) {
            out.push((big.zero(), big.one()));
        }
        // Finite roots [1 : t0]: roots of the dehomogenization in t...
        // dehomogenize(s=1) gives poly in t whose roots are t0.
        if !lifted.is_empty() {
            for r in unipoly::roots(big, &lifted) {
                out.push((big.one(), r));
            }
        }
        out
    }
}

/// A point of the projective plane, normalized so the last nonzero
/// coordinate is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn new(field: &FiniteField, coords: [FieldElement; 3]) -> Option<Self> {
        let last = (0..3).rev().find(|&i| !field.is_zero(&coords[i]))?;
        let inv = field.inv(&coords[last]).unwrap();
        let normalized = [
            field.mul(&coords[0], &inv),
            field.mul(&coords[1], &inv),
            field.mul(&coords[2], &inv),
        ];
        Some(ProjectivePoint { coords: normalized })
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    /// Minimal degree of the field of definition inside `field`, relative
    /// to the subfield of degree `base_degree`.
    pub fn degree_over(&self, field: &FiniteField, base_degree: usize) -> usize {
        let rel = field.degree() / base_degree;
        'outer: for e in 1..=rel {
            if rel % e != 0 {
                continue;
            }
            for c in &self.coords {
                if &field.frobenius_iter(c, base_degree * e) != c {
                    continue 'outer;
                }
            }
            return e;
        }
        rel
    }

    pub fn frobenius(&self, field: &FiniteField, base_degree: usize) -> ProjectivePoint {
        let coords = [
            field.frobenius_iter(&self.coords[0], base_degree),
            field.frobenius_iter(&self.coords[1], base_degree),
            field.frobenius_iter(&self.coords[2], base_degree),
        ];
        ProjectivePoint::new(field, coords).unwrap()
    }

    pub fn format(&self, field: &FiniteField) -> String {
        format!(
            "[{}:{}:{}]",
            field.format_element(&self.coords[0]),
            field.format_element(&self.coords[1]),
            field.format_element(&self.coords[2])
        )
    }
}

/// Enumerates all points of the projective plane over `field`.
pub fn projective_plane_points(field: &FiniteField) -> Vec<ProjectivePoint> {
    let q = field.cardinality();
    let mut out = Vec::new();
    // [x : y : 1]
    for yi in 0..q {
        for xi in 0..q {
            out.push(ProjectivePoint {
                coords: [
                    field.element_from_index(xi),
                    field.element_from_index(yi),
                    field.one(),
                ],
            });
        }
    }
    // [x : 1 : 0]
    for xi in 0..q {
        out.push(ProjectivePoint {
            coords: [field.element_from_index(xi), field.one(), field.zero()],
        });
    }
    out.push(ProjectivePoint {
        coords: [field.one(), field.zero(), field.zero()],
    });
    out
}

pub fn parse_poly(text: &str, field: &FiniteField) -> Result<HomogeneousPoly, PolyError> {
    let mut p = Parser {
        field,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(PolyError::Syntax {
            pos: p.pos,
            message: format!("unexpected `{}`", p.rest_preview()),
        });
    }
    e.into_homogeneous()
}

struct Parser<'a> {
    field: &'a FiniteField,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn rest_preview(&self) -> String {
        let rest = &self.bytes[self.pos..];
        let upto = rest.len().min(8);
        String::from_utf8_lossy(&rest[..upto]).into_owned()
    }

    fn parse_expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.parse_term()?.neg()
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.parse_uint()?;
            if e > 32 {
                return Err(PolyError::ExponentTooLarge(e));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(MultiPoly::variable(self.field, 0))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(MultiPoly::variable(self.field, 1))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(MultiPoly::variable(self.field, 2))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(MultiPoly::constant(self.field, self.field.from_u64(n)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(e)
                } else {
                    Err(PolyError::Syntax {
                        pos: self.pos,
                        message: "expected `)`".to_string(),
                    })
                }
            }
            Some(c) if c.is_ascii_alphabetic() => Err(PolyError::UnknownVariable {
                pos: self.pos,
                var: c as char,
            }),
            _ => Err(PolyError::Syntax {
                pos: self.pos,
                message: "expected a variable, number, or `(`".to_string(),
            }),
        }
    }

    fn parse_uint(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Syntax {
                pos: self.pos,
                message: "expected a number".to_string(),
            });
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<u64>().map_err(|_| PolyError::Syntax {
            pos: start,
            message: "number too large".to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn parses_appendix_quartic() {
        let f7 = gf(7);
        let f = parse_poly("(x*y+y*z+z*x)^2 - 4*x*y*z*(x+y+z)", &f7).unwrap();
        assert_eq!(f.degree(), 4);
        // Collected expansion: x^2y^2 + x^2z^2 + y^2z^2 - 2(x^2yz + xy^2z + xyz^2).
        let expected = HomogeneousPoly::from_integer_terms(
            &f7,
            4,
            &[
                (2, 2, 0, 1),
                (2, 0, 2, 1),
                (0, 2, 2, 1),
                (2, 1, 1, -2),
                (1, 2, 1, -2),
                (1, 1, 2, -2),
            ],
        );
        assert_eq!(f, expected);
        assert_eq!(f.num_terms(), 6);
    }

    #[test]
    fn parses_single_monomial() {
        let f5 = gf(5);
        let f = parse_poly("x^4", &f5).unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coeff([4, 0, 0]), f5.one());
    }

    #[test]
    fn rejects_non_homogeneous() {
        let f5 = gf(5);
        match parse_poly("x^3 + y", &f5) {
            Err(PolyError::NonHomogeneous { degrees }) => assert_eq!(degrees, vec![1, 3]),
            other => panic!("expected non-homogeneous error, got {other:?}"),
        }
    }

    #[test]
    fn reports_error_positions() {
        let f5 = gf(5);
        match parse_poly("x^2 + w*y", &f5) {
            Err(PolyError::UnknownVariable { pos, var }) => {
                assert_eq!(var, 'w');
                assert_eq!(pos, 6);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly("x^2 + (y", &f5),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(parse_poly("x - x", &f5), Err(PolyError::Zero)));
    }

    #[test]
    fn leading_minus_is_negation() {
        let f7 = gf(7);
        let a = parse_poly("-x^2 + y*z", &f7).unwrap();
        let b = parse_poly("6*x^2 + y*z", &f7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn print_parse_roundtrip() {
        let f7 = gf(7);
        for text in [
            "(x*y+y*z+z*x)^2 - 4*x*y*z*(x+y+z)",
            "x^4 + 3*x^2*y^2 + z^4",
            "x*y*z*(x+y+z)",
        ] {
            let f = parse_poly(text, &f7).unwrap();
            let printed = f.to_text();
            let g = parse_poly(&printed, &f7).unwrap();
            assert_eq!(f, g);
            assert_eq!(g.to_text(), printed);
        }
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let f7 = gf(7);
        let f = parse_poly("x^2 + y*z", &f7).unwrap();
        let g = parse_poly("x + y + z", &f7).unwrap();
        let fg = f.mul(&g);
        for pt in projective_plane_points(&f7) {
            let lhs = fg.eval(pt.coords());
            let rhs = f7.mul(&f.eval(pt.coords()), &g.eval(pt.coords()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn linear_division() {
        let f7 = gf(7);
        let f = parse_poly("x*y*z*(x+y+z)", &f7).unwrap();
        let line = [f7.one(), f7.one(), f7.one()];
        let q = f.divide_by_linear(&line).unwrap();
        let xyz = parse_poly("x*y*z", &f7).unwrap();
        assert_eq!(q, xyz);
        let bad = [f7.one(), f7.from_u64(2), f7.one()];
        assert!(f.divide_by_linear(&bad).is_none());
    }

    #[test]
    fn projective_point_normalization() {
        let f5 = gf(5);
        let p = ProjectivePoint::new(&f5, [f5.from_u64(2), f5.from_u64(4), f5.zero()]).unwrap();
        // last nonzero coordinate scaled to 1
        assert_eq!(
            p.coords().clone(),
            [f5.from_u64(3), f5.one(), f5.zero()]
        );
        let q = ProjectivePoint::new(&f5, [f5.from_u64(4), f5.from_u64(4), f5.zero()]).unwrap();
        assert_ne!(p, q);
        assert!(ProjectivePoint::new(&f5, [f5.zero(), f5.zero(), f5.zero()]).is_none());
    }

    #[test]
    fn plane_point_count() {
        let f3 = gf(3);
        assert_eq!(projective_plane_points(&f3).len(), 13);
    }
}
