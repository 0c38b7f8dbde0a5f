//! Truncated formal power series with Grothendieck–Witt coefficients.
//!
//! These carry the quadratically enriched zeta series: `geom_pow(q)` is the
//! generating series of the power operations `a_n(q)` (so additivity of the
//! power structure becomes multiplicativity of series), and
//! `kapranov_chi_zeta` pushes the symmetric-power series of an étale-linear
//! class through the Euler characteristic. Comparing the two is the central
//! consistency check of the whole artifact.
//!
//! Truncation is fixed and eager: a series of order `N` stores the `N + 1`
//! coefficients of `t^0 … t^N`, and arithmetic is defined only between
//! series of the same field and order.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::gw::GWElement;
use crate::k0::{sym_power_series, K0Class};
use crate::power::PowerContext;
use crate::seriesops::{inv_trunc, mul_trunc};

/// A truncated power series `c_0 + c_1 t + … + c_N t^N` over one base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWSeries {
    field: BaseField,
    order: usize,
    coeffs: Vec<GWElement>,
}

impl GWSeries {
    /// Builds a series from explicit coefficients; missing high-order
    /// coefficients are padded with zero.
    pub fn from_coeffs(
        field: BaseField,
        order: usize,
        coeffs: impl IntoIterator<Item = GWElement>,
    ) -> Result<Self> {
        let mut coeffs: Vec<GWElement> = coeffs.into_iter().collect();
        if coeffs.len() > order + 1 {
            return Err(Error::OutOfRange(format!(
                "{} coefficients exceed series order {order}",
                coeffs.len()
            )));
        }
        for c in &coeffs {
            field.require_same(&c.field())?;
        }
        while coeffs.len() < order + 1 {
            coeffs.push(GWElement::zero(field));
        }
        Ok(GWSeries {
            field,
            order,
            coeffs,
        })
    }

    /// The constant series 1.
    pub fn one(field: BaseField, order: usize) -> Self {
        GWSeries::from_coeffs(field, order, [GWElement::one(field)]).expect("fits")
    }

    /// The constant series 0.
    pub fn zero(field: BaseField, order: usize) -> Self {
        GWSeries::from_coeffs(field, order, []).expect("fits")
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[GWElement] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&GWElement> {
        self.coeffs.get(n)
    }

    fn check_compatible(&self, other: &GWSeries) -> Result<()> {
        self.field.require_same(&other.field)?;
        if self.order != other.order {
            return Err(Error::OutOfRange(format!(
                "series order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn s_add(&self, other: &GWSeries) -> Result<GWSeries> {
        self.check_compatible(other)?;
        let coeffs: Result<Vec<GWElement>> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        GWSeries::from_coeffs(self.field, self.order, coeffs?)
    }

    pub fn s_neg(&self) -> GWSeries {
        GWSeries {
            field: self.field,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn s_sub(&self, other: &GWSeries) -> Result<GWSeries> {
        self.s_add(&other.s_neg())
    }

    pub fn s_mul(&self, other: &GWSeries) -> Result<GWSeries> {
        self.check_compatible(other)?;
        let coeffs = mul_trunc(&self.coeffs, &other.coeffs, self.order);
        GWSeries::from_coeffs(self.field, self.order, coeffs)
    }

    /// Multiplicative inverse to the stored order. The constant term must
    /// represent 1 in the Grothendieck–Witt ring (not necessarily
    /// term-by-term); then `f · f⁻¹` is 1 coefficientwise up to ring
    /// equality.
    pub fn s_inv(&self) -> Result<GWSeries> {
        let one = GWElement::one(self.field);
        if !self.coeffs[0].eq(&one)? {
            return Err(Error::NotAUnit);
        }
        let coeffs = inv_trunc(&self.coeffs, self.order);
        GWSeries::from_coeffs(self.field, self.order, coeffs)
    }

    /// Coefficientwise ring equality.
    pub fn eq(&self, other: &GWSeries) -> Result<bool> {
        self.check_compatible(other)?;
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if !a.eq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ranks of the coefficients: the integer-series specialization.
    pub fn rank_coeffs(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.rank()).collect()
    }

    /// Signatures of the coefficients (needs a real embedding).
    pub fn signature_coeffs(&self) -> Result<Vec<i64>> {
        self.coeffs.iter().map(|c| c.signature()).collect()
    }

    /// Deterministic text form, e.g. `1 + (⟨1⟩ + ⟨-1⟩)t + 2⟨1⟩t^2 + O(t^3)`.
    /// Zero coefficients are skipped; a unit coefficient is left implicit.
    pub fn render(&self) -> String {
        let one = GWElement::one(self.field);
        let mut parts: Vec<String> = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_rep() {
                continue;
            }
            let var = match n {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{n}"),
            };
            if n == 0 {
                if *c == one {
                    parts.push("1".to_string());
                } else {
                    parts.push(c.render());
                }
                continue;
            }
            if *c == one {
                parts.push(var);
                continue;
            }
            let text = c.render();
            if text.contains(' ') || text.starts_with('-') {
                parts.push(format!("({text}){var}"));
            } else {
                parts.push(format!("{text}{var}"));
            }
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        parts.push(format!("O(t^{})", self.order + 1));
        parts.join(" + ")
    }
}

impl fmt::Display for GWSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The geometric power series `∑ a_n(q) tⁿ` to order `N` — formally
/// `(1 - t)^{-q}` for the power structure.
pub fn geom_pow(q: &GWElement, order: usize) -> Result<GWSeries> {
    let ctx = PowerContext::with_truncation(q.field(), order.max(1))?;
    let coeffs = ctx.series_coeffs(q, order)?;
    GWSeries::from_coeffs(q.field(), order, coeffs)
}

/// The Euler-characteristic image of the Kapranov zeta series:
/// coefficient `n` is `chi(Sym^n(x))`, computed on the geometric side by
/// Galois-orbit enumeration (never through the power structure).
pub fn kapranov_chi_zeta(x: &K0Class, order: usize) -> Result<GWSeries> {
    let sym = sym_power_series(x, order)?;
    let coeffs: Vec<GWElement> = sym.iter().map(|c| c.chi()).collect();
    GWSeries::from_coeffs(x.field(), order, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SquareClass;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn gw(s: &str) -> GWElement {
        GWElement::parse(q(), s).unwrap()
    }

    fn geometric_series(order: usize) -> GWSeries {
        GWSeries::from_coeffs(q(), order, (0..=order).map(|_| GWElement::one(q()))).unwrap()
    }

    #[test]
    fn one_minus_t_times_geometric_is_one() {
        let order = 8;
        let one_minus_t =
            GWSeries::from_coeffs(q(), order, [GWElement::one(q()), GWElement::one(q()).neg()])
                .unwrap();
        let product = one_minus_t.s_mul(&geometric_series(order)).unwrap();
        assert_eq!(product, GWSeries::one(q(), order));
    }

    #[test]
    fn inverse_of_one_minus_sign_twist() {
        let order = 6;
        let f = GWSeries::from_coeffs(
            q(),
            order,
            [
                GWElement::one(q()),
                GWElement::from_class(SquareClass::minus_one(q())).neg(),
            ],
        )
        .unwrap();
        let inv = f.s_inv().unwrap();
        for n in 0..=order {
            let expected = GWElement::from_class(SquareClass::minus_one(q()).pow(n as u64));
            assert_eq!(inv.coeff(n).unwrap(), &expected);
        }
        assert!(f.s_mul(&inv).unwrap().eq(&GWSeries::one(q(), order)).unwrap());
    }

    #[test]
    fn add_zero_is_identity() {
        let f = geom_pow(&gw("⟨2⟩ + ⟨3⟩"), 5).unwrap();
        assert_eq!(f.s_add(&GWSeries::zero(q(), 5)).unwrap(), f);
    }

    #[test]
    fn geometric_power_of_unit_and_zero() {
        assert_eq!(geom_pow(&GWElement::one(q()), 5).unwrap(), geometric_series(5));
        assert_eq!(
            geom_pow(&GWElement::zero(q()), 5).unwrap(),
            GWSeries::one(q(), 5)
        );
    }

    #[test]
    fn geometric_power_is_additive_to_multiplicative() {
        let order = 6;
        for (a, b) in [("⟨2⟩", "⟨3⟩"), ("⟨1⟩ + ⟨-1⟩", "⟨5⟩"), ("-⟨2⟩", "⟨2⟩ + ⟨7⟩")] {
            let x = gw(a);
            let y = gw(b);
            let lhs = geom_pow(&x.add(&y).unwrap(), order).unwrap();
            let rhs = geom_pow(&x, order)
                .unwrap()
                .s_mul(&geom_pow(&y, order).unwrap())
                .unwrap();
            assert!(lhs.eq(&rhs).unwrap(), "additivity on {a}, {b}");
        }
    }

    #[test]
    fn kapranov_zeta_examples() {
        let point = kapranov_chi_zeta(&K0Class::point(q()), 4).unwrap();
        assert_eq!(point, geometric_series(4));

        let p1 = kapranov_chi_zeta(&K0Class::proj_space(q(), 1), 2).unwrap();
        assert_eq!(p1.coeff(0).unwrap(), &GWElement::one(q()));
        assert_eq!(p1.coeff(1).unwrap(), &gw("⟨1⟩ + ⟨-1⟩"));
        assert_eq!(p1.coeff(2).unwrap(), &gw("2⟨1⟩ + ⟨-1⟩"));

        let a1 = kapranov_chi_zeta(&K0Class::affine(q(), 1), 3).unwrap();
        for n in 0..=3u64 {
            let expected = GWElement::from_class(SquareClass::minus_one(q()).pow(n));
            assert_eq!(a1.coeff(n as usize).unwrap(), &expected);
        }
    }

    #[test]
    fn kapranov_matches_geometric_power_for_torus() {
        let torus = K0Class::torus_1d(&q().square_class(3).unwrap()).unwrap();
        let geometric = kapranov_chi_zeta(&torus, 5).unwrap();
        let algebraic = geom_pow(&torus.chi(), 5).unwrap();
        assert!(geometric.eq(&algebraic).unwrap());
    }

    #[test]
    fn rank_and_signature_specializations() {
        let f = geom_pow(&gw("2⟨1⟩ + ⟨-1⟩"), 5).unwrap();
        let ranks = f.rank_coeffs();
        let expected: Vec<i64> = (0..=5i64).map(|n| (n + 1) * (n + 2) / 2).collect();
        assert_eq!(ranks, expected);
        // signature series (1-t)^{-2}(1+t)^{-1}: 1, 1, 2, 2, 3, 3
        assert_eq!(f.signature_coeffs().unwrap(), vec![1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn inversion_requires_unit_constant_term() {
        let f = GWSeries::from_coeffs(q(), 3, [gw("⟨2⟩")]).unwrap();
        assert_eq!(f.s_inv(), Err(Error::NotAUnit));
        // a constant term that is 1 only up to ring equality is accepted
        let g = GWSeries::from_coeffs(q(), 3, [gw("⟨4⟩")]).unwrap();
        assert!(g.s_inv().is_ok());
    }

    #[test]
    fn arithmetic_rejects_mismatched_operands() {
        let f = GWSeries::one(q(), 3);
        let g = GWSeries::one(q(), 4);
        assert!(matches!(f.s_add(&g), Err(Error::OutOfRange(_))));
        let h = GWSeries::one(BaseField::Reals, 3);
        assert!(matches!(f.s_mul(&h), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn rendering_examples() {
        assert_eq!(
            geom_pow(&GWElement::one(q()), 3).unwrap().render(),
            "1 + t + t^2 + t^3 + O(t^4)"
        );
        // coefficients come out of the convolution as-is, with no normal
        // form: the t^2 coefficient below carries the order-two summand
        // ⟨2⟩ - ⟨1⟩ + ⟨-1⟩ - ⟨-2⟩ on top of 2⟨1⟩ + ⟨-1⟩
        let h = gw("⟨1⟩ + ⟨-1⟩");
        let series = geom_pow(&h, 2).unwrap();
        assert_eq!(
            series.render(),
            "1 + (⟨1⟩ + ⟨-1⟩)t + (⟨1⟩ + ⟨2⟩ + 2⟨-1⟩ - ⟨-2⟩)t^2 + O(t^3)"
        );
        assert!(series.coeff(2).unwrap().eq(&gw("2⟨1⟩ + ⟨-1⟩")).unwrap());
        assert_eq!(GWSeries::zero(q(), 2).render(), "0 + O(t^3)");
    }
}
