//! Base fields, canonical square classes, and local symbols.
//!
//! Supported base fields are the rationals, the reals, the complex numbers,
//! and prime fields of odd characteristic. A *square class* is an element of
//! the group k*/(k*)^2; every diagonal quadratic form in this crate is stored
//! with canonicalized square-class entries, so two forms with equal
//! representations are literally equal as diagonalizations.
//!
//! Canonical representatives:
//! * rationals: a sign together with the sorted prime support of the positive
//!   squarefree part (the stored data is the exponent vector, so products are
//!   symmetric differences and never overflow);
//! * reals: a sign;
//! * complexes: the single class of 1;
//! * prime fields F_p: a residue/non-residue bit, rendered as 1 or the
//!   smallest positive non-residue.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::{is_prime_u64, mod_pow};
use crate::error::{Error, Result};

/// Default trial-division bound used when canonicalizing rational classes.
/// Any prime factor up to the bound is found directly; a surviving cofactor
/// `r > 1` with `r <= bound^2` is certified prime.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

// ---- Base fields ----

/// One of the supported base fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseField {
    /// The rational numbers.
    Rationals,
    /// The real numbers.
    Reals,
    /// The complex numbers.
    Complexes,
    /// The prime field with this many elements (an odd prime).
    PrimeField(u64),
}

impl BaseField {
    /// Builds the prime field `F_p`, rejecting characteristic 2 and
    /// non-primes.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharTwo);
        }
        if !is_prime_u64(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(BaseField::PrimeField(p))
    }

    /// Parses a field label: `Q`, `R`, `C`, or `Fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(BaseField::Rationals),
            "R" => Ok(BaseField::Reals),
            "C" => Ok(BaseField::Complexes),
            _ => {
                if let Some(rest) = s.strip_prefix("Fp:") {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad field label `{s}`")))?;
                    BaseField::prime_field(p)
                } else {
                    Err(Error::Parse(format!(
                        "bad field label `{s}` (expected Q, R, C, or Fp:<p>)"
                    )))
                }
            }
        }
    }

    /// True when the field has a real embedding (so signatures make sense).
    pub fn has_real_place(&self) -> bool {
        matches!(self, BaseField::Rationals | BaseField::Reals)
    }

    pub(crate) fn mismatch(&self, other: &BaseField) -> Error {
        Error::FieldMismatch {
            left: self.to_string(),
            right: other.to_string(),
        }
    }

    /// Checks that two operands live over the same field.
    pub(crate) fn require_same(&self, other: &BaseField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(self.mismatch(other))
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Reals => write!(f, "R"),
            BaseField::Complexes => write!(f, "C"),
            BaseField::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

// ---- Square classes ----

/// Canonical representative data, per field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum ClassRep {
    /// Rational class: sign and sorted prime support of the squarefree part.
    Rational { negative: bool, primes: Vec<u64> },
    /// Real class: sign.
    Real { negative: bool },
    /// Complex class: the unique class.
    Complex,
    /// Class in F_p: whether it is the non-residue coset.
    PrimeFld { nonresidue: bool },
}

/// An element of k*/(k*)^2 in canonical form.
///
/// Equality of `SquareClass` values is equality in the square-class group.
/// The derived ordering (used for deterministic term order inside forms) is
/// by sign first, then lexicographically by prime support; rendering sorts by
/// numeric value instead.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass {
    field: BaseField,
    rep: ClassRep,
}

impl SquareClass {
    /// The trivial class (the class of 1).
    pub fn one(field: BaseField) -> Self {
        let rep = match field {
            BaseField::Rationals => ClassRep::Rational {
                negative: false,
                primes: Vec::new(),
            },
            BaseField::Reals => ClassRep::Real { negative: false },
            BaseField::Complexes => ClassRep::Complex,
            BaseField::PrimeField(_) => ClassRep::PrimeFld { nonresidue: false },
        };
        SquareClass { field, rep }
    }

    /// The class of -1.
    pub fn minus_one(field: BaseField) -> Self {
        let rep = match field {
            BaseField::Rationals => ClassRep::Rational {
                negative: true,
                primes: Vec::new(),
            },
            BaseField::Reals => ClassRep::Real { negative: true },
            BaseField::Complexes => ClassRep::Complex,
            // -1 is a square in F_p exactly when p = 1 mod 4.
            BaseField::PrimeField(p) => ClassRep::PrimeFld {
                nonresidue: p % 4 == 3,
            },
        };
        SquareClass { field, rep }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_one(&self) -> bool {
        *self == SquareClass::one(self.field)
    }

    /// Group law in k*/(k*)^2 (every class is its own inverse).
    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        self.field.require_same(&other.field)?;
        let rep = match (&self.rep, &other.rep) {
            (
                ClassRep::Rational { negative: n1, primes: p1 },
                ClassRep::Rational { negative: n2, primes: p2 },
            ) => ClassRep::Rational {
                negative: n1 ^ n2,
                primes: symmetric_difference(p1, p2),
            },
            (ClassRep::Real { negative: n1 }, ClassRep::Real { negative: n2 }) => {
                ClassRep::Real { negative: n1 ^ n2 }
            }
            (ClassRep::Complex, ClassRep::Complex) => ClassRep::Complex,
            (
                ClassRep::PrimeFld { nonresidue: n1 },
                ClassRep::PrimeFld { nonresidue: n2 },
            ) => ClassRep::PrimeFld { nonresidue: n1 ^ n2 },
            _ => unreachable!("fields already checked equal"),
        };
        Ok(SquareClass {
            field: self.field,
            rep,
        })
    }

    /// `n`-th power of the class: trivial for even `n`, the class itself for
    /// odd `n`.
    pub fn pow(&self, n: u64) -> SquareClass {
        if n % 2 == 0 {
            SquareClass::one(self.field)
        } else {
            self.clone()
        }
    }

    /// The class of the negative of any representative.
    pub fn negate(&self) -> SquareClass {
        self.mul(&SquareClass::minus_one(self.field))
            .expect("same field by construction")
    }

    /// Signed squarefree representative as an exact integer
    /// (rationals: the signed squarefree part; reals: +/-1; complexes: 1;
    /// F_p: 1 or the smallest positive non-residue).
    pub fn value(&self) -> BigInt {
        match &self.rep {
            ClassRep::Rational { negative, primes } => {
                let mut v = BigInt::from(1);
                for &p in primes {
                    v *= BigInt::from(p);
                }
                if *negative {
                    -v
                } else {
                    v
                }
            }
            ClassRep::Real { negative } => BigInt::from(if *negative { -1 } else { 1 }),
            ClassRep::Complex => BigInt::from(1),
            ClassRep::PrimeFld { nonresidue } => {
                if !*nonresidue {
                    BigInt::from(1)
                } else {
                    let p = match self.field {
                        BaseField::PrimeField(p) => p,
                        _ => unreachable!(),
                    };
                    let nr = (2..p)
                        .find(|&a| legendre(a as i64, p).expect("valid odd prime") == -1)
                        .expect("every odd prime field has a non-residue");
                    BigInt::from(nr)
                }
            }
        }
    }

    /// Rendering used inside angle brackets; the decimal value.
    pub fn render(&self) -> String {
        self.value().to_string()
    }

    /// Sort key used when rendering forms: sign, then numeric magnitude.
    pub(crate) fn render_key(&self) -> (bool, BigInt) {
        match &self.rep {
            ClassRep::Rational { negative, .. } => {
                let mut v = self.value();
                if *negative {
                    v = -v;
                }
                (*negative, v)
            }
            ClassRep::Real { negative } => (*negative, BigInt::from(1)),
            ClassRep::Complex => (false, BigInt::from(1)),
            ClassRep::PrimeFld { nonresidue } => (*nonresidue, BigInt::from(1)),
        }
    }

    /// Exponent-vector view used by the subgroup machinery: a distinguished
    /// bit (sign over Q/R, non-residue bit over F_p) and the prime support.
    pub(crate) fn support(&self) -> (bool, &[u64]) {
        match &self.rep {
            ClassRep::Rational { negative, primes } => (*negative, primes.as_slice()),
            ClassRep::Real { negative } => (*negative, &[]),
            ClassRep::Complex => (false, &[]),
            ClassRep::PrimeFld { nonresidue } => (*nonresidue, &[]),
        }
    }

    /// Rebuilds a class from its exponent-vector view. `primes` must be
    /// sorted and distinct; non-rational fields must pass an empty list.
    pub(crate) fn from_support(field: BaseField, unit_bit: bool, primes: Vec<u64>) -> Self {
        let rep = match field {
            BaseField::Rationals => ClassRep::Rational {
                negative: unit_bit,
                primes,
            },
            BaseField::Reals => {
                debug_assert!(primes.is_empty());
                ClassRep::Real { negative: unit_bit }
            }
            BaseField::Complexes => {
                debug_assert!(!unit_bit && primes.is_empty());
                ClassRep::Complex
            }
            BaseField::PrimeField(_) => {
                debug_assert!(primes.is_empty());
                ClassRep::PrimeFld { nonresidue: unit_bit }
            }
        };
        SquareClass { field, rep }
    }

    /// For rational classes: whether `p` divides the squarefree part.
    pub(crate) fn has_prime(&self, p: u64) -> bool {
        match &self.rep {
            ClassRep::Rational { primes, .. } => primes.binary_search(&p).is_ok(),
            _ => false,
        }
    }

    /// For rational classes: sign of the squarefree part.
    pub(crate) fn is_negative(&self) -> bool {
        match &self.rep {
            ClassRep::Rational { negative, .. } => *negative,
            ClassRep::Real { negative } => *negative,
            _ => false,
        }
    }

    /// For rational classes: the prime support.
    pub(crate) fn primes(&self) -> &[u64] {
        match &self.rep {
            ClassRep::Rational { primes, .. } => primes.as_slice(),
            _ => &[],
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{27e8}{}\u{27e9}", self.render())
    }
}

fn symmetric_difference(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

// ---- Canonicalization ----

impl BaseField {
    /// Canonical square class of a nonzero integer.
    pub fn square_class(&self, a: i64) -> Result<SquareClass> {
        self.square_class_ratio(a, 1)
    }

    /// Canonical square class of `num/den` (same class as `num*den`).
    pub fn square_class_ratio(&self, num: i64, den: i64) -> Result<SquareClass> {
        self.square_class_ratio_with_bound(num, den, DEFAULT_FACTOR_BOUND)
    }

    /// Canonicalization with an explicit trial-division bound (rationals
    /// only; the bound is ignored over the other fields).
    pub fn square_class_ratio_with_bound(
        &self,
        num: i64,
        den: i64,
        bound: u64,
    ) -> Result<SquareClass> {
        if num == 0 {
            return Err(Error::ZeroInput("square class of 0 is undefined"));
        }
        if den == 0 {
            return Err(Error::ZeroInput("zero denominator"));
        }
        let n: i128 = num as i128 * den as i128;
        match self {
            BaseField::Rationals => {
                let negative = n < 0;
                let primes = squarefree_support(n.unsigned_abs(), bound)
                    .ok_or(Error::FactorizationLimit { value: n, bound })?;
                Ok(SquareClass {
                    field: *self,
                    rep: ClassRep::Rational { negative, primes },
                })
            }
            BaseField::Reals => Ok(SquareClass {
                field: *self,
                rep: ClassRep::Real { negative: n < 0 },
            }),
            BaseField::Complexes => Ok(SquareClass {
                field: *self,
                rep: ClassRep::Complex,
            }),
            BaseField::PrimeField(p) => {
                let sym = legendre_i128(n, *p)?;
                if sym == 0 {
                    return Err(Error::ZeroInput("argument is divisible by the characteristic"));
                }
                Ok(SquareClass {
                    field: *self,
                    rep: ClassRep::PrimeFld {
                        nonresidue: sym == -1,
                    },
                })
            }
        }
    }
}

/// Odd-exponent prime support of `m`, or `None` when a cofactor cannot be
/// certified prime within the bound.
fn squarefree_support(mut m: u128, bound: u64) -> Option<Vec<u64>> {
    let mut primes = Vec::new();
    let push_if_odd = |p: u64, exp: u32, primes: &mut Vec<u64>| {
        if exp % 2 == 1 {
            primes.push(p);
        }
    };
    let mut exp = 0;
    while m % 2 == 0 {
        m /= 2;
        exp += 1;
    }
    push_if_odd(2, exp, &mut primes);
    let mut d: u64 = 3;
    while (d as u128) * (d as u128) <= m && d <= bound {
        if m % d as u128 == 0 {
            let mut exp = 0;
            while m % d as u128 == 0 {
                m /= d as u128;
                exp += 1;
            }
            push_if_odd(d, exp, &mut primes);
        }
        d += 2;
    }
    if m > 1 {
        // All prime factors below min(bound, sqrt(m)) are removed. If the
        // loop ended because d*d > m, the cofactor is prime. Otherwise it has
        // no factor <= bound, so it is certified prime exactly when
        // m <= bound^2.
        if m <= (bound as u128) * (bound as u128) {
            primes.push(m as u64);
        } else {
            return None;
        }
    }
    primes.sort_unstable();
    Some(primes)
}

// ---- Legendre symbol ----

/// Legendre symbol `(a|p)` for an odd prime `p`: 1 for nonzero squares,
/// -1 for non-squares, 0 when `p` divides `a`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    legendre_i128(a as i128, p)
}

fn legendre_i128(a: i128, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(Error::CharTwo);
    }
    if !is_prime_u64(p) {
        return Err(Error::BadPrime(p));
    }
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    let s = mod_pow(r, (p - 1) / 2, p);
    Ok(if s == 1 { 1 } else { -1 })
}

// ---- Places and the Hilbert symbol ----

/// A place of the rationals at which local symbols are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    /// The archimedean (real) place.
    RealPlace,
    /// The finite place at this prime.
    PrimePlace(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::RealPlace => write!(f, "inf"),
            Place::PrimePlace(p) => write!(f, "{p}"),
        }
    }
}

/// Hilbert symbol `(a, b)_v` over the rationals: +1 when `z^2 = a x^2 + b y^2`
/// has a nontrivial solution over the completion at `v`, else -1.
pub fn hilbert_symbol(a: i64, b: i64, v: Place) -> Result<i8> {
    let f = BaseField::Rationals;
    hilbert_symbol_classes(&f.square_class(a)?, &f.square_class(b)?, v)
}

/// Hilbert symbol on canonical rational square classes (the symbol only
/// depends on classes).
pub fn hilbert_symbol_classes(a: &SquareClass, b: &SquareClass, v: Place) -> Result<i8> {
    if a.field() != BaseField::Rationals || b.field() != BaseField::Rationals {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: BaseField::Rationals.to_string(),
        });
    }
    match v {
        Place::RealPlace => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::PrimePlace(2) => {
            let alpha = a.has_prime(2);
            let beta = b.has_prime(2);
            let u = odd_residue_mod8(a);
            let w = odd_residue_mod8(b);
            let eps = |x: u64| -> u64 { ((x - 1) / 2) % 2 }; // (u-1)/2 mod 2
            let omega = |x: u64| -> u64 { (x * x - 1) / 8 % 2 }; // (u^2-1)/8 mod 2
            let mut e = eps(u) * eps(w);
            if alpha {
                e += omega(w);
            }
            if beta {
                e += omega(u);
            }
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::PrimePlace(p) => {
            if !is_prime_u64(p) {
                return Err(Error::BadPrime(p));
            }
            let alpha = a.has_prime(p);
            let beta = b.has_prime(p);
            let u = unit_part_mod_p(a, p);
            let w = unit_part_mod_p(b, p);
            let mut sym: i8 = 1;
            if alpha && beta {
                sym *= legendre(-1, p)?;
            }
            if beta {
                sym *= legendre(u as i64, p)?;
            }
            if alpha {
                sym *= legendre(w as i64, p)?;
            }
            Ok(sym)
        }
    }
}

/// The odd part of a rational class representative, reduced mod 8
/// (sign included).
fn odd_residue_mod8(c: &SquareClass) -> u64 {
    let mut u: u64 = if c.is_negative() { 7 } else { 1 }; // -1 = 7 mod 8
    for &p in c.primes() {
        if p != 2 {
            u = u * (p % 8) % 8;
        }
    }
    u
}

/// The prime-to-p part of a rational class representative, reduced mod p.
fn unit_part_mod_p(c: &SquareClass, p: u64) -> u64 {
    let mut u: u64 = if c.is_negative() { p - 1 } else { 1 };
    for &q in c.primes() {
        if q != p {
            u = (u as u128 * (q % p) as u128 % p as u128) as u64;
        }
    }
    u
}

/// The places at which the Hilbert symbol of two rational classes can be
/// nontrivial: the real place, 2, and the odd primes in either support.
pub fn relevant_places(classes: &[&SquareClass]) -> Vec<Place> {
    let mut primes: Vec<u64> = vec![2];
    for c in classes {
        for &p in c.primes() {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    let mut places = vec![Place::RealPlace];
    places.extend(primes.into_iter().map(Place::PrimePlace));
    places
}
