//! Truncated formal power-series arithmetic over an arbitrary coefficient
//! ring, shared by the power-structure and symmetric-power machinery.
//!
//! A series truncated at order `N` is a `Vec` of `N + 1` coefficients
//! indexed by degree. All operations assume both operands use the same
//! truncation length and the same underlying ring (callers enforce field
//! agreement before descending here, so ring operations panic rather than
//! error on mismatch).

/// Coefficient rings usable inside truncated series.
pub(crate) trait SeriesRing: Clone {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

impl SeriesRing for crate::gw::GWElement {
    fn ring_zero(&self) -> Self {
        crate::gw::GWElement::zero(self.field())
    }
    fn ring_one(&self) -> Self {
        crate::gw::GWElement::one(self.field())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other).expect("series coefficients share a field")
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other).expect("series coefficients share a field")
    }
}

impl SeriesRing for crate::k0::K0Class {
    fn ring_zero(&self) -> Self {
        crate::k0::K0Class::zero(self.field())
    }
    fn ring_one(&self) -> Self {
        crate::k0::K0Class::point(self.field())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other).expect("series coefficients share a field")
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other).expect("series coefficients share a field")
    }
}

/// A constant-one series of the given truncation length, modeled on a sample
/// coefficient (which supplies the ring).
pub(crate) fn one_series<T: SeriesRing>(sample: &T, order: usize) -> Vec<T> {
    let mut out = vec![sample.ring_zero(); order + 1];
    out[0] = sample.ring_one();
    out
}

/// Truncated product of two coefficient vectors.
pub(crate) fn mul_trunc<T: SeriesRing>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    let sample = &a[0];
    let mut out = vec![sample.ring_zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = out[i + j].ring_add(&ai.ring_mul(bj));
        }
    }
    out
}

/// Truncated inverse of a series whose constant coefficient acts as 1.
///
/// Uses the recursion `g_0 = 1`, `g_n = -sum_{k=1}^{n} a_k g_{n-k}`, which
/// yields a two-sided inverse whenever `a_0` is the ring unit (callers check
/// unit-ness up to the appropriate notion of equality before calling).
pub(crate) fn inv_trunc<T: SeriesRing>(a: &[T], order: usize) -> Vec<T> {
    let sample = &a[0];
    let mut out = vec![sample.ring_zero(); order + 1];
    out[0] = sample.ring_one();
    for n in 1..=order {
        let mut acc = sample.ring_zero();
        for k in 1..=n.min(a.len() - 1) {
            acc = acc.ring_add(&a[k].ring_mul(&out[n - k]));
        }
        out[n] = acc.ring_neg();
    }
    out
}

/// Truncated integer power, with negative exponents through `inv_trunc`.
pub(crate) fn pow_trunc<T: SeriesRing>(a: &[T], m: i64, order: usize) -> Vec<T> {
    if m == 0 {
        return one_series(&a[0], order);
    }
    let base = if m < 0 {
        inv_trunc(a, order)
    } else {
        a.to_vec()
    };
    let mut exp = m.unsigned_abs();
    let mut acc = one_series(&a[0], order);
    let mut sq = base;
    loop {
        if exp & 1 == 1 {
            acc = mul_trunc(&acc, &sq, order);
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        sq = mul_trunc(&sq, &sq, order);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;
    use crate::gw::GWElement;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn int_series(coeffs: &[i64]) -> Vec<GWElement> {
        coeffs
            .iter()
            .map(|&c| GWElement::one(q()).scale(c))
            .collect()
    }

    #[test]
    fn multiplication_convolves() {
        // (1 + t)^2 = 1 + 2t + t^2
        let a = int_series(&[1, 1, 0]);
        let sq = mul_trunc(&a, &a, 2);
        assert_eq!(sq, int_series(&[1, 2, 1]));
    }

    #[test]
    fn inverse_of_one_minus_t_is_geometric() {
        let a = int_series(&[1, -1, 0, 0, 0]);
        let inv = inv_trunc(&a, 4);
        assert_eq!(inv, int_series(&[1, 1, 1, 1, 1]));
        // check the product really is 1 mod t^5
        let prod = mul_trunc(&a, &inv, 4);
        assert_eq!(prod, int_series(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn negative_powers_match_binomial_series() {
        // (1 - t)^{-3} has coefficients C(n+2, 2)
        let a = int_series(&[1, -1, 0, 0, 0, 0]);
        let p = pow_trunc(&a, -3, 5);
        assert_eq!(p, int_series(&[1, 3, 6, 10, 15, 21]));
        // (1 + t)^4 truncates the binomial row
        let b = int_series(&[1, 1, 0]);
        assert_eq!(pow_trunc(&b, 4, 2), int_series(&[1, 4, 6]));
        assert_eq!(pow_trunc(&b, 0, 2), int_series(&[1, 0, 0]));
    }
}
