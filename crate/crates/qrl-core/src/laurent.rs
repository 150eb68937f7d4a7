//! Formal Laurent differentials `(sum a_n t^n) dt` with finite principal
//! part and bounded truncation, plus rational differentials on the
//! projective line in partial-fraction form.
//!
//! A rational differential knows how to expand itself at any finite point
//! and at infinity (in the chart `u = 1/t` with `dt = -u^{-2} du`), so the
//! residue theorem is a literal computation over all poles.

use std::collections::BTreeMap;

use crate::field::{FieldElement, FiniteField};

/// Coefficients are tracked for exponents `n <= trunc`; a missing entry is
/// zero. Default truncation keeps 16 coefficients past degree 0.
pub const DEFAULT_TRUNCATION: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentDifferential {
    field: FiniteField,
    parameter: String,
    coeffs: BTreeMap<i64, FieldElement>,
    trunc: i64,
}

impl LaurentDifferential {
    pub fn new(
        field: &FiniteField,
        parameter: &str,
        terms: impl IntoIterator<Item = (i64, FieldElement)>,
        trunc: i64,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for (n, c) in terms {
            if field.is_zero(&c) || n > trunc {
                continue;
            }
            let e = coeffs.entry(n).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
            if field.is_zero(e) {
                coeffs.remove(&n);
            }
        }
        LaurentDifferential {
            field: field.clone(),
            parameter: parameter.to_string(),
            coeffs,
            trunc,
        }
    }

    pub fn zero(field: &FiniteField, parameter: &str, trunc: i64) -> Self {
        Self::new(field, parameter, [], trunc)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, n: i64) -> FieldElement {
        self.coeffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Least exponent with nonzero coefficient; 0 for a regular (or zero)
    /// series.
    pub fn min_exponent(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0).min(0).max(
            self.coeffs
                .keys()
                .next()
                .copied()
                .unwrap_or(0)
                .min(i64::MAX),
        )
    }

    /// Order of the pole: `max(0, -min_exponent)`.
    pub fn pole_order(&self) -> i64 {
        (-self.min_exponent()).max(0)
    }

    /// The residue `a_{-1}`.
    pub fn residue(&self) -> FieldElement {
        self.coeff(-1)
    }

    pub fn add(&self, other: &LaurentDifferential) -> LaurentDifferential {
        assert_eq!(self.parameter, other.parameter, "parameter mismatch");
        let trunc = self.trunc.min(other.trunc);
        let terms = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|(&n, c)| (n, c.clone()));
        LaurentDifferential::new(&self.field, &self.parameter, terms, trunc)
    }

    pub fn scale(&self, c: &FieldElement) -> LaurentDifferential {
        let terms = self
            .coeffs
            .iter()
            .map(|(&n, a)| (n, self.field.mul(a, c)));
        LaurentDifferential::new(&self.field, &self.parameter, terms, self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// The exact differential `d(f)` of a Laurent polynomial `f`; its residue
/// is zero in every characteristic.
pub fn exact_differential(
    field: &FiniteField,
    parameter: &str,
    f: impl IntoIterator<Item = (i64, FieldElement)>,
    trunc: i64,
) -> LaurentDifferential {
    let terms = f.into_iter().map(|(n, c)| {
        let factor = field.from_i64(n);
        (n - 1, field.mul(&factor, &c))
    });
    LaurentDifferential::new(field, parameter, terms, trunc)
}

/// Either a finite point of the affine line or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePoint {
    Finite(FieldElement),
    Infinity,
}

impl LinePoint {
    pub fn format(&self, field: &FiniteField) -> String {
        match self {
            LinePoint::Finite(c) => field.format_element(c),
            LinePoint::Infinity => "inf".to_string(),
        }
    }
}

/// A rational differential `f(t) dt` on the projective line, with `f`
/// stored in partial fractions: a polynomial part plus principal parts at
/// finitely many finite poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDifferential {
    field: FiniteField,
    /// Coefficient of `t^i`.
    poly: Vec<FieldElement>,
    /// Pole location (by element index) -> coefficients of `(t-c)^{-j}`,
    /// index `j-1`.
    poles: BTreeMap<u64, Vec<FieldElement>>,
}

impl RationalDifferential {
    pub fn new(
        field: &FiniteField,
        poly: Vec<FieldElement>,
        pole_parts: impl IntoIterator<Item = (FieldElement, Vec<FieldElement>)>,
    ) -> Self {
        let mut poles = BTreeMap::new();
        for (c, mut parts) in pole_parts {
            while parts.last().map_or(false, |a| field.is_zero(a)) {
                parts.pop();
            }
            if parts.is_empty() {
                continue;
            }
            poles.insert(field.element_index(&c), parts);
        }
        let mut poly = poly;
        while poly.last().map_or(false, |a| field.is_zero(a)) {
            poly.pop();
        }
        RationalDifferential {
            field: field.clone(),
            poly,
            poles,
        }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, Vec::new(), [])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.poles.is_empty()
    }

    pub fn add(&self, other: &RationalDifferential) -> RationalDifferential {
        let field = &self.field;
        let mut poly = self.poly.clone();
        while poly.len() < other.poly.len() {
            poly.push(field.zero());
        }
        for (i, c) in other.poly.iter().enumerate() {
            poly[i] = field.add(&poly[i], c);
        }
        let mut poles: BTreeMap<u64, Vec<FieldElement>> = self.poles.clone();
        for (idx, parts) in &other.poles {
            let entry = poles.entry(*idx).or_default();
            while entry.len() < parts.len() {
                entry.push(field.zero());
            }
            for (j, a) in parts.iter().enumerate() {
                entry[j] = field.add(&entry[j], a);
            }
        }
        RationalDifferential::new(
            field,
            poly,
            poles
                .into_iter()
                .map(|(idx, parts)| (field.element_from_index(idx), parts)),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> RationalDifferential {
        let field = &self.field;
        RationalDifferential::new(
            field,
            self.poly.iter().map(|a| field.mul(a, c)).collect(),
            self.poles.iter().map(|(idx, parts)| {
                (
                    field.element_from_index(*idx),
                    parts.iter().map(|a| field.mul(a, c)).collect(),
                )
            }),
        )
    }

    /// Formal derivative of the coefficient function, as a differential.
    pub fn coefficient_derivative(&self) -> RationalDifferential {
        let field = &self.field;
        let mut poly = Vec::new();
        for (i, c) in self.poly.iter().enumerate().skip(1) {
            poly.push(field.mul(&field.from_u64(i as u64), c));
        }
        let poles = self.poles.iter().map(|(idx, parts)| {
            // d/dt (t-c)^{-j} = -j (t-c)^{-j-1}
            let mut out = vec![field.zero(); parts.len() + 1];
            for (j0, a) in parts.iter().enumerate() {
                let j = (j0 + 1) as i64;
                out[j0 + 1] = field.mul(&field.from_i64(-j), a);
            }
            (field.element_from_index(*idx), out)
        });
        RationalDifferential::new(field, poly, poles)
    }

    pub fn pole_locations(&self) -> Vec<FieldElement> {
        self.poles
            .keys()
            .map(|&i| self.field.element_from_index(i))
            .collect()
    }

    /// Laurent expansion in the local parameter `s = t - a` at a finite
    /// point, exact up to the requested truncation.
    pub fn expand_at(&self, at: &LinePoint, trunc: i64) -> LaurentDifferential {
        match at {
            LinePoint::Finite(a) => self.expand_at_finite(a, trunc),
            LinePoint::Infinity => self.expand_at_infinity(trunc),
        }
    }

    fn expand_at_finite(&self, a: &FieldElement, trunc: i64) -> LaurentDifferential {
        let field = &self.field;
        let mut terms: Vec<(i64, FieldElement)> = Vec::new();
        // Polynomial part: sum_i b_i (s + a)^i expanded exactly.
        for (i, b) in self.poly.iter().enumerate() {
            if field.is_zero(b) {
                continue;
            }
            for k in 0..=i {
                let bin = binomial_in_field(field, i as u64, k as u64);
                let c = field.mul(b, &field.mul(&bin, &field.pow(a, (i - k) as u64)));
                terms.push((k as i64, c));
            }
        }
        for (idx, parts) in &self.poles {
            let c = field.element_from_index(*idx);
            if &c == a {
                for (j0, coef) in parts.iter().enumerate() {
                    terms.push((-(j0 as i64 + 1), coef.clone()));
                }
            } else {
                // (t - c)^{-j} = (s + (a-c))^{-j}
                //             = (a-c)^{-j} sum_i C(j+i-1, i) (-(a-c))^{-i} ... s^i
                let d = field.sub(a, &c);
                let dinv = field.inv(&d).unwrap();
                for (j0, coef) in parts.iter().enumerate() {
                    if field.is_zero(coef) {
                        continue;
                    }
                    let j = j0 as u64 + 1;
                    let base = field.pow(&dinv, j);
                    for i in 0..=trunc.max(0) as u64 {
                        let bin = binomial_in_field(field, j + i - 1, i);
                        let sign = field.pow(&field.neg(&dinv), i);
                        let c_i = field.mul(coef, &field.mul(&base, &field.mul(&bin, &sign)));
                        terms.push((i as i64, c_i));
                    }
                }
            }
        }
        LaurentDifferential::new(field, "s", terms, trunc)
    }

    /// Expansion at infinity in the chart `u = 1/t`, `dt = -u^{-2} du`.
    fn expand_at_infinity(&self, trunc: i64) -> LaurentDifferential {
        let field = &self.field;
        let mut terms: Vec<(i64, FieldElement)> = Vec::new();
        for (i, b) in self.poly.iter().enumerate() {
            // b t^i dt = -b u^{-i-2} du
            terms.push((-(i as i64) - 2, field.neg(b)));
        }
        for (idx, parts) in &self.poles {
            let c = field.element_from_index(*idx);
            for (j0, coef) in parts.iter().enumerate() {
                if field.is_zero(coef) {
                    continue;
                }
                let j = j0 as i64 + 1;
                // (t-c)^{-j} dt = -u^{j-2} (1 - c u)^{-j} du
                //   with (1-cu)^{-j} = sum_i C(j+i-1, i) c^i u^i.
                for i in 0..=(trunc - (j - 2)).max(0) as u64 {
                    let bin = binomial_in_field(field, j as u64 + i - 1, i);
                    let c_i = field.mul(coef, &field.mul(&bin, &field.pow(&c, i)));
                    terms.push((j - 2 + i as i64, field.neg(&c_i)));
                }
            }
        }
        LaurentDifferential::new(field, "u", terms, trunc)
    }

    pub fn residue_at(&self, at: &LinePoint) -> FieldElement {
        self.expand_at(at, 0).residue()
    }

    /// Sum of residues over all finite poles and infinity.
    pub fn residue_sum(&self) -> FieldElement {
        let field = &self.field;
        let mut acc = self.residue_at(&LinePoint::Infinity);
        for c in self.pole_locations() {
            acc = field.add(&acc, &self.residue_at(&LinePoint::Finite(c)));
        }
        acc
    }
}

/// `C(n, k)` computed exactly in `u128` and reduced into the field. The
/// recurrence in the field would divide by residues of small integers,
/// which vanish in small characteristic.
fn binomial_in_field(field: &FiniteField, n: u64, k: u64) -> FieldElement {
    if k > n {
        return field.zero();
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
        // keep the fraction reduced to avoid overflow
        let g = gcd_u128(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    field.from_u64((num % field.characteristic() as u128) as u64)
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn residue_reads_minus_one_coefficient() {
        let f7 = gf(7);
        // dt/t
        let d = LaurentDifferential::new(&f7, "t", [(-1, f7.one())], 16);
        assert_eq!(d.residue(), f7.one());
        // dt/t^2
        let d = LaurentDifferential::new(&f7, "t", [(-2, f7.one())], 16);
        assert_eq!(d.residue(), f7.zero());
        assert_eq!(d.pole_order(), 2);
        // (3/t + 2 + t) dt
        let d = LaurentDifferential::new(
            &f7,
            "t",
            [
                (-1, f7.from_u64(3)),
                (0, f7.from_u64(2)),
                (1, f7.one()),
            ],
            16,
        );
        assert_eq!(d.residue(), f7.from_u64(3));
    }

    #[test]
    fn residue_is_linear() {
        let f11 = gf(11);
        let d1 = LaurentDifferential::new(&f11, "t", [(-1, f11.from_u64(4)), (2, f11.one())], 16);
        let d2 = LaurentDifferential::new(&f11, "t", [(-1, f11.from_u64(9)), (-3, f11.one())], 16);
        let a = f11.from_u64(5);
        let b = f11.from_u64(7);
        let combo = d1.scale(&a).add(&d2.scale(&b));
        let expected = f11.add(
            &f11.mul(&a, &d1.residue()),
            &f11.mul(&b, &d2.residue()),
        );
        assert_eq!(combo.residue(), expected);
    }

    #[test]
    fn exact_differentials_have_zero_residue() {
        for p in [2, 3, 5, 7] {
            let field = gf(p);
            let f: Vec<(i64, FieldElement)> = (-5..=5)
                .map(|n| (n, field.from_i64(n * n + 1)))
                .collect();
            let df = exact_differential(&field, "t", f, 16);
            assert_eq!(df.residue(), field.zero());
        }
    }

    #[test]
    fn truncation_is_minimum_under_addition() {
        let f5 = gf(5);
        let d1 = LaurentDifferential::new(&f5, "t", [(0, f5.one())], 16);
        let d2 = LaurentDifferential::new(&f5, "t", [(0, f5.one())], 8);
        assert_eq!(d1.add(&d2).truncation(), 8);
    }

    #[test]
    fn expansion_of_simple_pole_away_from_pole() {
        let f7 = gf(7);
        // dt/(t-1), expanded at t=0: -(1 + t + t^2 + ...) dt
        let d = RationalDifferential::new(&f7, vec![], [(f7.one(), vec![f7.one()])]);
        let e = d.expand_at(&LinePoint::Finite(f7.zero()), 5);
        for n in 0..=5 {
            assert_eq!(e.coeff(n), f7.from_i64(-1), "coefficient of t^{n}");
        }
        assert_eq!(e.residue(), f7.zero());
        assert_eq!(d.residue_at(&LinePoint::Finite(f7.one())), f7.one());
        // At infinity the residue must be -1 so that the total sum is 0.
        assert_eq!(d.residue_at(&LinePoint::Infinity), f7.from_i64(-1));
        assert_eq!(d.residue_sum(), f7.zero());
    }

    #[test]
    fn polynomial_part_contributes_at_infinity_only() {
        let f5 = gf(5);
        // t^3 dt: no finite poles, pole of order 5 at infinity, residue 0.
        let d = RationalDifferential::new(&f5, vec![f5.zero(), f5.zero(), f5.zero(), f5.one()], []);
        assert!(d.pole_locations().is_empty());
        let inf = d.expand_at(&LinePoint::Infinity, 4);
        assert_eq!(inf.pole_order(), 5);
        assert_eq!(inf.residue(), f5.zero());
    }

    #[test]
    fn derivative_kills_pole_coefficients_in_char_matching_order() {
        let f2 = gf(2);
        // f = 1/t^2: f' = -2/t^3 = 0 in characteristic 2.
        let d = RationalDifferential::new(&f2, vec![], [(f2.zero(), vec![f2.zero(), f2.one()])]);
        assert!(d.coefficient_derivative().is_zero());
        let f3 = gf(3);
        let d = RationalDifferential::new(&f3, vec![], [(f3.zero(), vec![f3.zero(), f3.one()])]);
        assert!(!d.coefficient_derivative().is_zero());
    }
}
