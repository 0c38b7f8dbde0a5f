//! Independent oracles for the verification suite.
//!
//! Each oracle recomputes a quantity from first principles, sharing as
//! little code as possible with the implementation it checks:
//!
//! * [`hilbert_oracle`] decides local solvability of `z² = ax² + by²` by
//!   exhaustive search for primitive solutions modulo a prime power high
//!   enough for Hensel lifting — no reciprocity formulas.
//! * [`trace_form_oracle`] builds the multiquadratic algebra's
//!   multiplication table and takes traces of the regular representation
//!   to obtain the Gram matrix of the trace form.
//! * [`product_class_oracle`] multiplies two étale spectra by enumerating
//!   Galois orbits on the product of their geometric-point sets, with the
//!   Galois translations obtained from global square-class characters.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Place;
use crate::gw::GWElement;
use crate::k0::{K0Class, K0Monomial, SqClassSubgroup};

/// Local solvability of `z² = a·x² + b·y²` at a place of ℚ, by search:
/// returns 1 if a nontrivial solution exists, else -1.
///
/// At a finite prime the equation is scaled so `a` and `b` have valuation
/// at most 1, then primitive solutions are sought modulo `p³` (odd `p`) or
/// `2⁶`; those moduli exceed twice the largest possible valuation of the
/// gradient at a primitive point, so a solution found always lifts and a
/// missing solution proves insolvability.
pub fn hilbert_oracle(a: i64, b: i64, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroInput("hilbert oracle needs nonzero entries"));
    }
    match place {
        Place::RealPlace => Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::PrimePlace(p) => {
            let modulus: u64 = if p == 2 { 64 } else { p.pow(3) };
            let a = reduce_entry(a, p, modulus);
            let b = reduce_entry(b, p, modulus);

            let mut square = vec![false; modulus as usize];
            let mut unit_square = vec![false; modulus as usize];
            for z in 0..modulus {
                let w = (z * z) % modulus;
                square[w as usize] = true;
                if z % p != 0 {
                    unit_square[w as usize] = true;
                }
            }
            for x in 0..modulus {
                let ax2 = (a * ((x * x) % modulus)) % modulus;
                let x_unit = x % p != 0;
                for y in 0..modulus {
                    let w = ((ax2 + b * ((y * y) % modulus)) % modulus) as usize;
                    let solvable = if x_unit || y % p != 0 {
                        // x or y already a unit: any z keeps it primitive
                        square[w]
                    } else {
                        // x, y both divisible by p: z must be a unit
                        unit_square[w]
                    };
                    if solvable {
                        return Ok(1);
                    }
                }
            }
            Ok(-1)
        }
    }
}

/// Strips square factors of `p` (harmless for solvability) and reduces to
/// a canonical residue.
fn reduce_entry(mut v: i64, p: u64, modulus: u64) -> u64 {
    let p2 = (p * p) as i64;
    while v % p2 == 0 {
        v /= p2;
    }
    v.rem_euclid(modulus as i64) as u64
}

/// The trace form of the multiquadratic algebra `k_G`, from the regular
/// representation: basis `b_S = ∏_{i∈S} √gᵢ` over generator subsets `S`,
/// Gram entry `Tr(mult by b_S·b_T)` read off the multiplication table. The
/// off-diagonal entries are asserted to vanish, and the diagonal is
/// returned as a Grothendieck–Witt element.
pub fn trace_form_oracle(g: &SqClassSubgroup) -> Result<GWElement> {
    let field = g.field();
    let r = g.rank() as usize;
    let dim = 1usize << r;
    let vals: Vec<i64> = g
        .generators()
        .iter()
        .map(|c| {
            i64::try_from(c.value())
                .map_err(|_| Error::OutOfRange("generator value exceeds i64".into()))
        })
        .collect::<Result<_>>()?;

    // b_S · b_T = (∏_{i ∈ S∩T} gᵢ) · b_{S xor T}
    let product = |s: usize, t: usize| -> (i64, usize) {
        let mut c: i64 = 1;
        for (i, &v) in vals.iter().enumerate() {
            if (s & t) >> i & 1 == 1 {
                c = c.checked_mul(v).expect("value overflow");
            }
        }
        (c, s ^ t)
    };

    let mut out = GWElement::zero(field);
    for s in 0..dim {
        for t in 0..dim {
            let (c, u) = product(s, t);
            // trace of multiplication by c·b_U
            let mut trace: i64 = 0;
            for w in 0..dim {
                let (cw, res) = product(u, w);
                if res == w {
                    trace += c.checked_mul(cw).expect("value overflow");
                }
            }
            if s == t {
                out = out.add(&GWElement::from_class(field.square_class(trace)?))?;
            } else {
                assert_eq!(
                    trace, 0,
                    "trace Gram matrix must be diagonal in the subset basis"
                );
            }
        }
    }
    Ok(out)
}

/// The product `[Spec k_{G1}]·[Spec k_{G2}]` by Galois-orbit enumeration.
///
/// Geometric points of the product form the group `D1 × D2` of character
/// pairs. A Galois element acts by translation by the restriction of a
/// global square-class character, so the available translations are the
/// image subgroup `T` of the restriction map — enumerated here over all
/// functionals on the joint coordinate space. Orbits are walked
/// explicitly; each is a closed point with residue algebra the compositum,
/// and the orbit size is checked against the compositum degree.
pub fn product_class_oracle(g1: &SqClassSubgroup, g2: &SqClassSubgroup) -> Result<K0Class> {
    let field = g1.field();
    field.require_same(&g2.field())?;
    let r1 = g1.rank() as usize;
    let r2 = g2.rank() as usize;
    let total = r1 + r2;
    if total > 10 {
        return Err(Error::SizeLimit(
            "orbit oracle supports combined rank <= 10".into(),
        ));
    }

    // joint coordinate space: unit bit + union of prime supports
    let mut primes: Vec<u64> = Vec::new();
    for c in g1.generators().iter().chain(g2.generators()) {
        for &p in c.support().1 {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    let dim = primes.len() + 1;
    if dim > 20 {
        return Err(Error::SizeLimit(
            "orbit oracle supports at most 19 distinct primes".into(),
        ));
    }
    let mask_of = |class: &crate::field::SquareClass| -> u64 {
        let (unit_bit, support) = class.support();
        let mut m: u64 = unit_bit as u64;
        for p in support {
            let idx = primes.binary_search(p).expect("support in frame");
            m |= 1u64 << (idx + 1);
        }
        m
    };
    let gen_masks: Vec<u64> = g1
        .generators()
        .iter()
        .chain(g2.generators())
        .map(mask_of)
        .collect();

    // translations available to the Galois action: the image of the
    // restriction map from global characters (functionals on coordinates)
    let dot = |c: u64, m: u64| -> u64 { ((c & m).count_ones() & 1) as u64 };
    let mut translations: BTreeSet<u64> = BTreeSet::new();
    for c in 0..(1u64 << dim) {
        let mut image: u64 = 0;
        for (bit, m) in gen_masks.iter().enumerate() {
            image |= dot(c, *m) << bit;
        }
        translations.insert(image);
    }

    // explicit orbit walk on the point set
    let points = 1usize << total;
    let mut seen = vec![false; points];
    let mut orbit_count: i64 = 0;
    let compositum = g1.join(g2)?;
    let expected_orbit_size = 1usize << compositum.rank();
    for start in 0..points {
        if seen[start] {
            continue;
        }
        let mut size = 0usize;
        for t in &translations {
            let q = start ^ (*t as usize);
            if !seen[q] {
                seen[q] = true;
                size += 1;
            }
        }
        assert_eq!(
            size,
            translations.len(),
            "translation orbits must be full cosets"
        );
        assert_eq!(
            size, expected_orbit_size,
            "orbit size must equal the compositum degree"
        );
        orbit_count += 1;
    }

    Ok(K0Class::from_monomial(
        field,
        K0Monomial::new(0, compositum),
        orbit_count,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn solvability_search_known_values() {
        let at = |a: i64, b: i64, p: u64| hilbert_oracle(a, b, Place::PrimePlace(p)).unwrap();
        // sums of three squares are never 0 mod 8 with a unit present
        assert_eq!(hilbert_oracle(-1, -1, Place::RealPlace).unwrap(), -1);
        assert_eq!(at(-1, -1, 2), -1);
        // z² = x² + b y² always solvable by (1, 0, 1)
        for b in [-5, 2, 7, 30] {
            assert_eq!(at(1, b, 2), 1);
            assert_eq!(at(1, b, 7), 1);
        }
        // 2 is a square modulo 7 but not modulo 3 or 5
        assert_eq!(at(2, 7, 7), 1);
        assert_eq!(at(3, 5, 5), -1);
        assert_eq!(at(2, 3, 3), -1);
        assert_eq!(at(2, 3, 2), -1);
        assert_eq!(at(2, 7, 2), 1);
    }

    #[test]
    fn trace_gram_matches_closed_form() {
        use crate::gw::trace_form;
        for gens in [&[][..], &[3][..], &[-1][..], &[3, 5][..], &[-1, 2, 3][..]] {
            let g = SqClassSubgroup::from_ints(q(), gens).unwrap();
            let oracle = trace_form_oracle(&g).unwrap();
            let implementation = trace_form(&g);
            assert!(
                oracle.eq(&implementation).unwrap(),
                "trace form of {gens:?}"
            );
        }
        // explicit diagonal for the quadratic case
        let g3 = SqClassSubgroup::from_ints(q(), &[3]).unwrap();
        assert_eq!(
            trace_form_oracle(&g3).unwrap(),
            GWElement::parse(q(), "⟨2⟩ + ⟨6⟩").unwrap()
        );
    }

    #[test]
    fn orbit_oracle_reproduces_the_product_rule() {
        let pairs: [(&[i64], &[i64]); 5] = [
            (&[3], &[3]),
            (&[3], &[5]),
            (&[3, 5], &[5, 7]),
            (&[], &[7]),
            (&[-1, 2], &[2, 3]),
        ];
        for (a, b) in pairs {
            let g1 = SqClassSubgroup::from_ints(q(), a).unwrap();
            let g2 = SqClassSubgroup::from_ints(q(), b).unwrap();
            let oracle = product_class_oracle(&g1, &g2).unwrap();
            let implementation = K0Class::from_algebra(g1).mul(&K0Class::from_algebra(g2)).unwrap();
            assert_eq!(oracle, implementation, "product of {a:?} and {b:?}");
        }
    }
}
