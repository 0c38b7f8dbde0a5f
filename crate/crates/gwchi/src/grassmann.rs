//! Losanitsch's triangle and enriched Euler characteristics of
//! Grassmannians.
//!
//! The Euler characteristic of `Gr(d, r)` (d-planes in r-space) is
//! `e(d,r)·⟨1⟩ + o(d,r)·⟨-1⟩`, where `e` and `o` split the binomial
//! coefficient by the parity of a Schubert-cell statistic; `e(d,r)` is the
//! entry of Losanitsch's triangle. Both a parity-split recurrence and a
//! closed binomial formula are computed and compared on every call, so the
//! two derivations keep each other honest. Symmetric powers and the zeta
//! series follow from the same two integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{binom_big, binom_gen};
use crate::error::{Error, Result};
use crate::field::{BaseField, SquareClass};
use crate::gw::GWElement;
use crate::series::GWSeries;
use crate::seriesops::{mul_trunc, pow_trunc};

/// Indicator of the closed-form correction set: 1 unless `r` is even and
/// `d` is odd.
fn closed_indicator(d: u64, r: u64) -> bool {
    !(r % 2 == 0 && d % 2 == 1)
}

/// Triangle of pairs `(e(d,r), o(d,r))` for `0 <= d <= r <= max_row`,
/// computed by the parity-split recurrence.
#[derive(Debug, Clone)]
pub struct LosanitschTable {
    rows: Vec<Vec<(BigUint, BigUint)>>,
}

impl LosanitschTable {
    pub fn up_to(max_row: u32) -> Self {
        let mut rows: Vec<Vec<(BigUint, BigUint)>> = Vec::with_capacity(max_row as usize + 1);
        rows.push(vec![(BigUint::one(), BigUint::zero())]);
        for r in 1..=max_row as usize {
            let prev = &rows[r - 1];
            let mut row = Vec::with_capacity(r + 1);
            for d in 0..=r {
                let upper_left = if d >= 1 {
                    prev.get(d - 1).map(|(e, _)| e.clone()).unwrap_or_default()
                } else {
                    BigUint::zero()
                };
                let upper = if d % 2 == 0 {
                    prev.get(d).map(|(e, _)| e.clone()).unwrap_or_default()
                } else {
                    prev.get(d).map(|(_, o)| o.clone()).unwrap_or_default()
                };
                let e = upper_left + upper;
                let o = binom_big(r as u64, d as u64) - &e;
                row.push((e, o));
            }
            rows.push(row);
        }
        LosanitschTable { rows }
    }

    pub fn max_row(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn entry(&self, d: u32, r: u32) -> Result<&(BigUint, BigUint)> {
        if d > r || r > self.max_row() {
            return Err(Error::OutOfRange(format!(
                "triangle entry (d={d}, r={r}) outside 0 <= d <= r <= {}",
                self.max_row()
            )));
        }
        Ok(&self.rows[r as usize][d as usize])
    }
}

/// `(e(d,r), o(d,r))` by the closed formula
/// `e = (binom(r,d) + 1_A·binom(floor(r/2), floor(d/2))) / 2`.
pub fn losanitsch_closed(d: u32, r: u32) -> Result<(BigUint, BigUint)> {
    if d > r {
        return Err(Error::OutOfRange(format!(
            "losanitsch requires 0 <= d <= r, got d={d}, r={r}"
        )));
    }
    let total = binom_big(r as u64, d as u64);
    let correction = if closed_indicator(d as u64, r as u64) {
        binom_big(r as u64 / 2, d as u64 / 2)
    } else {
        BigUint::zero()
    };
    let doubled = &total + &correction;
    assert!(
        (&doubled % 2u32).is_zero(),
        "closed-form numerator must be even"
    );
    let e = doubled / 2u32;
    let o = total - &e;
    Ok((e, o))
}

/// `(e(d,r), o(d,r))`, computed by the recurrence and checked against the
/// closed formula.
pub fn losanitsch(d: u32, r: u32) -> Result<(BigUint, BigUint)> {
    if d > r {
        return Err(Error::OutOfRange(format!(
            "losanitsch requires 0 <= d <= r, got d={d}, r={r}"
        )));
    }
    let table = LosanitschTable::up_to(r);
    let by_recurrence = table.entry(d, r)?.clone();
    let by_closed = losanitsch_closed(d, r)?;
    assert_eq!(
        by_recurrence, by_closed,
        "recurrence and closed formula disagree at (d={d}, r={r})"
    );
    Ok(by_recurrence)
}

fn to_i64(value: &BigUint, what: &str) -> Result<i64> {
    u64::try_from(value)
        .ok()
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::OutOfRange(format!("{what} exceeds i64 range")))
}

/// `e(d,r)` and `o(d,r)` as machine integers.
pub fn losanitsch_i64(d: u32, r: u32) -> Result<(i64, i64)> {
    let (e, o) = losanitsch(d, r)?;
    Ok((to_i64(&e, "e(d,r)")?, to_i64(&o, "o(d,r)")?))
}

/// The enriched Euler characteristic `e(d,r)⟨1⟩ + o(d,r)⟨-1⟩`, checked
/// against the cell recursion
/// `χ(Gr(d,r)) = χ(Gr(d-1,r-1)) + ⟨(-1)^d⟩·χ(Gr(d,r-1))`.
pub fn chi_grassmannian(field: BaseField, d: u32, r: u32) -> Result<GWElement> {
    let (e, o) = losanitsch_i64(d, r)?;
    let closed = chi_from_counts(field, e, o);
    let recursive = chi_grassmannian_recursive(field, d, r)?;
    assert_eq!(
        closed, recursive,
        "closed form and cell recursion disagree at Gr({d},{r})"
    );
    Ok(closed)
}

fn chi_from_counts(field: BaseField, e: i64, o: i64) -> GWElement {
    let one = GWElement::one(field);
    let minus_one = GWElement::from_class(SquareClass::minus_one(field));
    one.scale(e).add(&minus_one.scale(o)).expect("same field")
}

/// The Euler characteristic by the cell recursion alone (no triangle).
pub fn chi_grassmannian_recursive(field: BaseField, d: u32, r: u32) -> Result<GWElement> {
    if d > r {
        return Err(Error::OutOfRange(format!(
            "Gr(d,r) requires 0 <= d <= r, got d={d}, r={r}"
        )));
    }
    // rows indexed by ambient dimension; row s holds chi(Gr(t, s)) for t <= s
    let mut rows: Vec<Vec<GWElement>> = vec![vec![GWElement::one(field)]];
    for s in 1..=r as usize {
        let prev = &rows[s - 1];
        let mut row = Vec::with_capacity(s + 1);
        for t in 0..=s {
            let from_smaller = if t >= 1 {
                prev.get(t - 1).cloned().unwrap_or_else(|| GWElement::zero(field))
            } else {
                GWElement::zero(field)
            };
            let from_same = prev.get(t).cloned().unwrap_or_else(|| GWElement::zero(field));
            let twist = SquareClass::minus_one(field).pow(t as u64);
            let term = GWElement::from_class(twist).mul(&from_same)?;
            row.push(from_smaller.add(&term)?);
        }
        rows.push(row);
    }
    Ok(rows[r as usize][d as usize].clone())
}

/// The `n`-th symmetric power of the Grassmannian's Euler characteristic,
/// by the theorem's binomial sum
/// `∑_i binom(e+i-1, i)·binom(o+n-i-1, n-i)·⟨(-1)^{n-i}⟩`.
pub fn chi_sym_grassmannian(field: BaseField, d: u32, r: u32, n: u32) -> Result<GWElement> {
    let (e, o) = losanitsch_i64(d, r)?;
    let mut out = GWElement::zero(field);
    for i in 0..=n {
        let even_count = binom_gen(e + i as i64 - 1, i);
        let odd_count = binom_gen(o + (n - i) as i64 - 1, n - i);
        let coeff = even_count
            .checked_mul(odd_count)
            .expect("multiplicity overflow");
        let class = SquareClass::minus_one(field).pow((n - i) as u64);
        out = out.add(&GWElement::from_class(class).scale(coeff))?;
    }
    Ok(out)
}

/// The zeta series `(1-t)^{-e(d,r)}·(1 - ⟨-1⟩t)^{-o(d,r)}` to order `N`.
pub fn grassmann_zeta(field: BaseField, d: u32, r: u32, order: usize) -> Result<GWSeries> {
    let (e, o) = losanitsch_i64(d, r)?;
    let one = GWElement::one(field);
    let minus_one = GWElement::from_class(SquareClass::minus_one(field));

    let mut one_minus_t = vec![GWElement::zero(field); order + 1];
    one_minus_t[0] = one.clone();
    if order >= 1 {
        one_minus_t[1] = one.neg();
    }
    let mut one_minus_twist_t = vec![GWElement::zero(field); order + 1];
    one_minus_twist_t[0] = one;
    if order >= 1 {
        one_minus_twist_t[1] = minus_one.neg();
    }

    let even_part = pow_trunc(&one_minus_t, -e, order);
    let odd_part = pow_trunc(&one_minus_twist_t, -o, order);
    let coeffs = mul_trunc(&even_part, &odd_part, order);
    GWSeries::from_coeffs(field, order, coeffs)
}

/// Coefficients of `(1-t)^{-binom(r,d)}`: the classical point-count series
/// forced by the rank specialization.
pub fn rank_series_closed(d: u32, r: u32, order: usize) -> Result<Vec<i64>> {
    if d > r {
        return Err(Error::OutOfRange(format!(
            "Gr(d,r) requires 0 <= d <= r, got d={d}, r={r}"
        )));
    }
    let total = to_i64(&binom_big(r as u64, d as u64), "binom(r,d)")?;
    Ok((0..=order)
        .map(|n| binom_gen(total + n as i64 - 1, n as u32))
        .collect())
}

/// Coefficients of `(1-t)^{-e(d,r)}·(1+t)^{-o(d,r)}`: the real-points
/// (signature) specialization of the zeta series.
pub fn sign_series_closed(d: u32, r: u32, order: usize) -> Result<Vec<i64>> {
    let (e, o) = losanitsch_i64(d, r)?;
    Ok((0..=order)
        .map(|n| {
            let n = n as u32;
            (0..=n)
                .map(|i| {
                    let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
                    binom_gen(e + i as i64 - 1, i)
                        .checked_mul(binom_gen(o + (n - i) as i64 - 1, n - i))
                        .and_then(|v| v.checked_mul(sign))
                        .expect("coefficient overflow")
                })
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::PowerContext;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn gw(s: &str) -> GWElement {
        GWElement::parse(q(), s).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn triangle_matches_published_rows() {
        // rows 0..=6 of Losanitsch's triangle
        let expected: [&[u64]; 7] = [
            &[1],
            &[1, 1],
            &[1, 1, 1],
            &[1, 2, 2, 1],
            &[1, 2, 4, 2, 1],
            &[1, 3, 6, 6, 3, 1],
            &[1, 3, 9, 10, 9, 3, 1],
        ];
        let table = LosanitschTable::up_to(6);
        for (r, row) in expected.iter().enumerate() {
            for (d, &e) in row.iter().enumerate() {
                assert_eq!(
                    table.entry(d as u32, r as u32).unwrap().0,
                    big(e),
                    "e({d},{r})"
                );
            }
        }
    }

    #[test]
    fn recurrence_agrees_with_closed_formula_up_to_row_20() {
        let table = LosanitschTable::up_to(20);
        for r in 0..=20u32 {
            for d in 0..=r {
                let closed = losanitsch_closed(d, r).unwrap();
                assert_eq!(table.entry(d, r).unwrap(), &closed, "(d,r)=({d},{r})");
            }
        }
    }

    #[test]
    fn triangle_invariants() {
        let table = LosanitschTable::up_to(16);
        for r in 0..=16u32 {
            assert_eq!(table.entry(0, r).unwrap().0, big(1));
            for d in 0..=r {
                let (e, o) = table.entry(d, r).unwrap();
                assert_eq!(e + o, binom_big(r as u64, d as u64));
                // symmetry of the triangle
                assert_eq!(e, &table.entry(r - d, r).unwrap().0);
            }
        }
    }

    #[test]
    fn specific_entries() {
        assert_eq!(losanitsch(2, 4).unwrap(), (big(4), big(2)));
        assert_eq!(losanitsch(1, 2).unwrap(), (big(1), big(1)));
        assert_eq!(losanitsch(0, 7).unwrap(), (big(1), big(0)));
        assert!(matches!(losanitsch(3, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn chi_known_values() {
        assert_eq!(chi_grassmannian(q(), 1, 2).unwrap(), gw("⟨1⟩ + ⟨-1⟩"));
        assert_eq!(chi_grassmannian(q(), 2, 4).unwrap(), gw("4⟨1⟩ + 2⟨-1⟩"));
        for r in 0..=8u32 {
            for d in 0..=r {
                let chi = chi_grassmannian(q(), d, r).unwrap();
                assert_eq!(chi.rank(), binom_gen(r as i64, d), "rank Gr({d},{r})");
                // signature: 0 when r even and d odd, else a middle binomial
                let expected_sign = if r % 2 == 0 && d % 2 == 1 {
                    0
                } else {
                    binom_gen((r / 2) as i64, d / 2)
                };
                assert_eq!(chi.signature().unwrap(), expected_sign, "sign Gr({d},{r})");
            }
        }
    }

    #[test]
    fn chi_recursion_survives_other_fields() {
        for field in [
            BaseField::Reals,
            BaseField::Complexes,
            BaseField::prime_field(7).unwrap(),
        ] {
            let chi = chi_grassmannian(field, 2, 5).unwrap();
            assert_eq!(chi.rank(), 10);
        }
    }

    #[test]
    fn symmetric_power_values() {
        // Sym^2 of the projective line is the projective plane
        let sym = chi_sym_grassmannian(q(), 1, 2, 2).unwrap();
        assert!(sym.eq(&gw("2⟨1⟩ + ⟨-1⟩")).unwrap());
        // n = 1 recovers chi itself
        for (d, r) in [(1, 3), (2, 4), (2, 5)] {
            let sym = chi_sym_grassmannian(q(), d, r, 1).unwrap();
            assert_eq!(sym, chi_grassmannian(q(), d, r).unwrap());
        }
        // rank of Sym^n is the multiset count
        let sym = chi_sym_grassmannian(q(), 2, 4, 3).unwrap();
        assert_eq!(sym.rank(), binom_gen(6 + 3 - 1, 3));
    }

    #[test]
    fn symmetric_power_matches_power_structure() {
        let ctx = PowerContext::new(q());
        for (d, r) in [(1, 2), (1, 3), (2, 4)] {
            let chi = chi_grassmannian(q(), d, r).unwrap();
            for n in 0..=5u32 {
                let theorem = chi_sym_grassmannian(q(), d, r, n).unwrap();
                let power = ctx.a_n(&chi, n).unwrap();
                assert!(theorem.eq(&power).unwrap(), "Gr({d},{r}), n={n}");
            }
        }
    }

    #[test]
    fn zeta_series_examples() {
        // a point: the geometric series
        let zeta = grassmann_zeta(q(), 0, 1, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(zeta.coeff(n).unwrap(), &GWElement::one(q()));
        }
        // the projective line
        let zeta = grassmann_zeta(q(), 1, 2, 2).unwrap();
        assert_eq!(zeta.coeff(0).unwrap(), &GWElement::one(q()));
        assert_eq!(zeta.coeff(1).unwrap(), &gw("⟨1⟩ + ⟨-1⟩"));
        assert_eq!(zeta.coeff(2).unwrap(), &gw("2⟨1⟩ + ⟨-1⟩"));
    }

    #[test]
    fn zeta_coefficients_match_theorem_sum() {
        for (d, r) in [(1, 2), (2, 4), (2, 5)] {
            let zeta = grassmann_zeta(q(), d, r, 6).unwrap();
            for n in 0..=6usize {
                let theorem = chi_sym_grassmannian(q(), d, r, n as u32).unwrap();
                assert!(
                    zeta.coeff(n).unwrap().eq(&theorem).unwrap(),
                    "Gr({d},{r}), n={n}"
                );
            }
        }
    }

    #[test]
    fn rank_and_sign_specializations_of_zeta() {
        for (d, r) in [(1, 2), (2, 4), (3, 6)] {
            let zeta = grassmann_zeta(q(), d, r, 8).unwrap();
            assert_eq!(zeta.rank_coeffs(), rank_series_closed(d, r, 8).unwrap());
            assert_eq!(
                zeta.signature_coeffs().unwrap(),
                sign_series_closed(d, r, 8).unwrap()
            );
        }
        // the rank series is (1-t)^{-binom(r,d)}, positive exponent refuted:
        // (1-t)^{+2} would have coefficient 1 at t^2, the zeta has 3
        let ranks = rank_series_closed(1, 2, 3).unwrap();
        assert_eq!(ranks, vec![1, 2, 3, 4]);
    }
}
