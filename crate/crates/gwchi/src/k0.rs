//! Symbolic classes of étale-linear varieties in the Grothendieck ring.
//!
//! The implemented fragment is generated by affine spaces and spectra of
//! multiquadratic étale algebras `k_G = k(sqrt(g) : g in G)` for finite
//! subgroups `G` of the square-class group. A class is an integer
//! combination of monomials `[A^l]·[Spec k_G]`; subgroup arithmetic
//! (canonical generators, joins, intersections, annihilators) is F_2 linear
//! algebra on exponent vectors.
//!
//! Symmetric powers are computed geometrically: the `2^r` geometric points
//! of `Spec k_G` carry a Galois action by translations of the dual group,
//! and `Sym^n` decomposes by orbits of size-`n` multisets, each orbit
//! contributing the spectrum of the fixed field of its stabilizer. This
//! orbit enumeration is independent of the power structure on the
//! Grothendieck–Witt side, which is what makes the Euler-characteristic
//! comparison a genuine two-sided test.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::binom_big;
use crate::error::{Error, Result};
use crate::field::{BaseField, SquareClass};
use crate::gw::{trace_form, GWElement};
use crate::seriesops::{mul_trunc, one_series, pow_trunc};

// ---- F2 linear algebra on exponent vectors ----

/// Coordinate frame for exponent vectors: bit 0 is the unit bit (sign over
/// the rationals and reals, non-residue bit over prime fields), higher bits
/// are the primes listed here, ascending.
struct CoordSpace {
    field: BaseField,
    primes: Vec<u64>,
}

impl CoordSpace {
    fn spanning<'a>(field: BaseField, classes: impl Iterator<Item = &'a SquareClass>) -> Result<Self> {
        let mut primes: Vec<u64> = Vec::new();
        for c in classes {
            for &p in c.support().1 {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort_unstable();
        if primes.len() + 1 > 127 {
            return Err(Error::SizeLimit(
                "too many distinct primes in one subgroup computation".into(),
            ));
        }
        Ok(CoordSpace { field, primes })
    }

    fn mask(&self, class: &SquareClass) -> u128 {
        let (unit_bit, support) = class.support();
        let mut m: u128 = unit_bit as u128;
        for p in support {
            let idx = self
                .primes
                .binary_search(p)
                .expect("class support within frame");
            m |= 1u128 << (idx + 1);
        }
        m
    }

    fn class(&self, mask: u128) -> SquareClass {
        let unit_bit = mask & 1 == 1;
        let mut support = Vec::new();
        for (idx, &p) in self.primes.iter().enumerate() {
            if mask >> (idx + 1) & 1 == 1 {
                support.push(p);
            }
        }
        SquareClass::from_support(self.field, unit_bit, support)
    }
}

/// Reduced row-echelon basis of the span of `masks`, rows sorted by leading
/// (least significant) bit. This is a canonical form: two generating sets
/// span the same subgroup iff their reduced bases are identical.
fn rref(masks: impl IntoIterator<Item = u128>) -> Vec<u128> {
    let mut rows: Vec<u128> = Vec::new();
    for mut m in masks {
        for &r in &rows {
            if m >> r.trailing_zeros() & 1 == 1 {
                m ^= r;
            }
        }
        if m != 0 {
            rows.push(m);
            rows.sort_by_key(|r| r.trailing_zeros());
        }
    }
    for i in 0..rows.len() {
        let lead = rows[i].trailing_zeros();
        for j in 0..rows.len() {
            if j != i && rows[j] >> lead & 1 == 1 {
                rows[j] ^= rows[i];
            }
        }
    }
    rows.sort_by_key(|r| r.trailing_zeros());
    rows
}

/// Basis of the orthogonal complement (under the bit-dot pairing) of the
/// span of RREF `rows` inside an ambient space of dimension `dim`.
fn nullspace(rows: &[u128], dim: u32) -> Vec<u128> {
    let leads: Vec<u32> = rows.iter().map(|r| r.trailing_zeros()).collect();
    let mut out = Vec::new();
    for f in 0..dim {
        if leads.contains(&f) {
            continue;
        }
        let mut v: u128 = 1u128 << f;
        for (row, &lead) in rows.iter().zip(&leads) {
            if row >> f & 1 == 1 {
                v |= 1u128 << lead;
            }
        }
        out.push(v);
    }
    out
}

// ---- Square-class subgroups ----

/// A finite subgroup of the square-class group, stored by its canonical
/// reduced-echelon generating set. Encodes the multiquadratic étale algebra
/// `k_G`; the trivial subgroup encodes the base field itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SqClassSubgroup {
    field: BaseField,
    gens: Vec<SquareClass>,
}

impl SqClassSubgroup {
    /// The trivial subgroup (étale algebra = the base field).
    pub fn trivial(field: BaseField) -> Self {
        SqClassSubgroup {
            field,
            gens: Vec::new(),
        }
    }

    /// Subgroup generated by the given classes. Trivial and dependent
    /// generators are dropped; the result stores the canonical basis.
    pub fn new(field: BaseField, classes: impl IntoIterator<Item = SquareClass>) -> Result<Self> {
        let classes: Vec<SquareClass> = classes.into_iter().collect();
        for c in &classes {
            field.require_same(&c.field())?;
        }
        let frame = CoordSpace::spanning(field, classes.iter())?;
        let rows = rref(classes.iter().map(|c| frame.mask(c)));
        Ok(SqClassSubgroup {
            field,
            gens: rows.into_iter().map(|m| frame.class(m)).collect(),
        })
    }

    /// Convenience constructor from nonzero integers.
    pub fn from_ints(field: BaseField, gens: &[i64]) -> Result<Self> {
        let classes: Result<Vec<SquareClass>> =
            gens.iter().map(|&g| field.square_class(g)).collect();
        SqClassSubgroup::new(field, classes?)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    /// Dimension of the subgroup as an F_2 vector space.
    pub fn rank(&self) -> u32 {
        self.gens.len() as u32
    }

    /// Number of elements, `2^rank`.
    pub fn order(&self) -> u64 {
        1u64 << self.rank()
    }

    /// Canonical generators (reduced-echelon order).
    pub fn generators(&self) -> &[SquareClass] {
        &self.gens
    }

    /// All `2^rank` elements, indexed by generator-subset masks.
    pub fn elements(&self) -> Vec<SquareClass> {
        let r = self.gens.len();
        (0u64..1 << r)
            .map(|mask| {
                let mut acc = SquareClass::one(self.field);
                for (j, g) in self.gens.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        acc = acc.mul(g).expect("same field");
                    }
                }
                acc
            })
            .collect()
    }

    /// Membership test by F_2 reduction.
    pub fn contains(&self, class: &SquareClass) -> Result<bool> {
        self.field.require_same(&class.field())?;
        let frame = CoordSpace::spanning(self.field, self.gens.iter().chain([class]))?;
        let rows: Vec<u128> = self.gens.iter().map(|c| frame.mask(c)).collect();
        let mut m = frame.mask(class);
        for &r in &rows {
            if m >> r.trailing_zeros() & 1 == 1 {
                m ^= r;
            }
        }
        Ok(m == 0)
    }

    /// The subgroup generated by both operands.
    pub fn join(&self, other: &SqClassSubgroup) -> Result<SqClassSubgroup> {
        self.field.require_same(&other.field)?;
        SqClassSubgroup::new(
            self.field,
            self.gens.iter().chain(other.gens.iter()).cloned(),
        )
    }

    /// Order of the intersection, via the dimension formula
    /// `dim(G1 ∩ G2) = dim G1 + dim G2 - dim(G1·G2)`.
    pub fn intersection_order(&self, other: &SqClassSubgroup) -> Result<u64> {
        let join = self.join(other)?;
        let dim = self.rank() + other.rank() - join.rank();
        Ok(1u64 << dim)
    }
}

// ---- Monomials and classes ----

/// One monomial `[A^l]·[Spec k_G]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct K0Monomial {
    affine_exp: u32,
    algebra: SqClassSubgroup,
}

impl K0Monomial {
    pub fn new(affine_exp: u32, algebra: SqClassSubgroup) -> Self {
        K0Monomial {
            affine_exp,
            algebra,
        }
    }

    pub fn affine_exp(&self) -> u32 {
        self.affine_exp
    }

    pub fn algebra(&self) -> &SqClassSubgroup {
        &self.algebra
    }
}

/// An étale-linear class: an integer combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Class {
    field: BaseField,
    terms: BTreeMap<K0Monomial, i64>,
}

impl K0Class {
    pub fn zero(field: BaseField) -> Self {
        K0Class {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The class of a rational point, the ring unit.
    pub fn point(field: BaseField) -> Self {
        K0Class::from_monomial(field, K0Monomial::new(0, SqClassSubgroup::trivial(field)), 1)
    }

    /// The class of affine `l`-space.
    pub fn affine(field: BaseField, l: u32) -> Self {
        K0Class::from_monomial(field, K0Monomial::new(l, SqClassSubgroup::trivial(field)), 1)
    }

    /// The class of projective `n`-space, `sum_{i<=n} [A^i]`.
    pub fn proj_space(field: BaseField, n: u32) -> Self {
        let mut out = K0Class::zero(field);
        for i in 0..=n {
            out = out.add(&K0Class::affine(field, i)).expect("same field");
        }
        out
    }

    /// The class of the spectrum of the multiquadratic algebra `k_G`.
    pub fn from_algebra(algebra: SqClassSubgroup) -> Self {
        let field = algebra.field();
        K0Class::from_monomial(field, K0Monomial::new(0, algebra), 1)
    }

    /// The class of the multiplicative group: `[A^1] - 1`.
    pub fn gm(field: BaseField) -> Self {
        K0Class::affine(field, 1)
            .sub(&K0Class::point(field))
            .expect("same field")
    }

    /// The norm-one torus of the quadratic algebra for `α`:
    /// `[P^1] - [Spec k(sqrt α)]`. The class must be nontrivial.
    pub fn torus_1d(alpha: &SquareClass) -> Result<Self> {
        if alpha.is_one() {
            return Err(Error::TrivialClass(
                "the rank-one torus needs a nontrivial square class",
            ));
        }
        let field = alpha.field();
        let algebra = SqClassSubgroup::new(field, [alpha.clone()])?;
        K0Class::proj_space(field, 1).sub(&K0Class::from_algebra(algebra))
    }

    /// The class of a nodal cubic (two branches through the node):
    /// `2[G_m] + 1`.
    pub fn nodal_union(field: BaseField) -> Self {
        K0Class::gm(field)
            .scale(2)
            .add(&K0Class::point(field))
            .expect("same field")
    }

    /// The class of a cuspidal cubic: `[A^1] + 1`.
    pub fn cuspidal_cubic(field: BaseField) -> Self {
        K0Class::affine(field, 1)
            .add(&K0Class::point(field))
            .expect("same field")
    }

    pub fn from_monomial(field: BaseField, monomial: K0Monomial, mult: i64) -> Self {
        let mut out = K0Class::zero(field);
        out.insert(monomial, mult);
        out
    }

    fn insert(&mut self, monomial: K0Monomial, mult: i64) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(monomial.algebra.field(), self.field);
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                if mult != 0 {
                    slot.insert(mult);
                }
            }
            Entry::Occupied(mut slot) => {
                let m = slot.get().checked_add(mult).expect("multiplicity overflow");
                if m == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = m;
                }
            }
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K0Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero_rep(&self) -> bool {
        self.terms.is_empty()
    }

    // ---- Ring operations ----

    pub fn add(&self, other: &K0Class) -> Result<K0Class> {
        self.field.require_same(&other.field)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.insert(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &K0Class) -> Result<K0Class> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> K0Class {
        K0Class {
            field: self.field,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> K0Class {
        if k == 0 {
            return K0Class::zero(self.field);
        }
        K0Class {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), c.checked_mul(k).expect("multiplicity overflow")))
                .collect(),
        }
    }

    /// Ring product. On monomials,
    /// `[A^{l1}][Spec k_{G1}] · [A^{l2}][Spec k_{G2}]
    ///    = |G1 ∩ G2| · [A^{l1+l2}][Spec k_{G1·G2}]`,
    /// the tensor decomposition of multiquadratic algebras (re-derived in
    /// this artifact by Galois-orbit counting on products of dual groups —
    /// see the verification suite's orbit oracle).
    pub fn mul(&self, other: &K0Class) -> Result<K0Class> {
        self.field.require_same(&other.field)?;
        let mut out = K0Class::zero(self.field);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let inter = m1.algebra.intersection_order(&m2.algebra)? as i64;
                let join = m1.algebra.join(&m2.algebra)?;
                let l = m1
                    .affine_exp
                    .checked_add(m2.affine_exp)
                    .expect("affine exponent overflow");
                let coeff = c1
                    .checked_mul(c2)
                    .and_then(|c| c.checked_mul(inter))
                    .expect("multiplicity overflow");
                out.insert(K0Monomial::new(l, join), coeff);
            }
        }
        Ok(out)
    }

    // ---- The Euler-characteristic homomorphism ----

    /// Ring homomorphism to the Grothendieck–Witt ring, determined by
    /// `[A^1] -> <-1>` and `[Spec k_G] -> trace form of k_G`.
    pub fn chi(&self) -> GWElement {
        let mut out = GWElement::zero(self.field);
        for (m, &c) in &self.terms {
            let sign_class = SquareClass::minus_one(self.field).pow(m.affine_exp as u64);
            let part = GWElement::from_class(sign_class)
                .mul(&trace_form(&m.algebra))
                .expect("same field");
            out = out.add(&part.scale(c)).expect("same field");
        }
        out
    }
}

/// Blow-up along a center of codimension `c >= 1`:
/// `[Bl_Z X] = [X] - [Z] + [Z]·[P^{c-1}]`.
pub fn blowup_class(x: &K0Class, z: &K0Class, c: u32) -> Result<K0Class> {
    if c < 1 {
        return Err(Error::BadCodim(c));
    }
    x.field().require_same(&z.field())?;
    let bundle = z.mul(&K0Class::proj_space(x.field(), c - 1))?;
    x.sub(z)?.add(&bundle)
}

// ---- Symmetric powers ----

/// Bounds accepted by the orbit enumeration for nontrivial algebras.
const SYM_MAX_RANK: u32 = 3;
const SYM_MAX_POWER: u32 = 8;

/// `[Sym^n(Spec k_G)]`, by direct Galois-orbit enumeration.
///
/// The geometric points of `Spec k_G` form the dual group `D = Hom(G, ±1)`,
/// an F_2 space of dimension `rank(G)` on which the Galois action is by
/// translations. Orbits of size-`n` multisets are enumerated explicitly; an
/// orbit whose stabilizer is `H <= D` is a point with residue algebra
/// `k_{H^perp}`, where `H^perp <= G` is the annihilator under the canonical
/// pairing. A Burnside count (sum of orbit sizes = multiset count) guards
/// the enumeration.
pub fn sym_orbits(g: &SqClassSubgroup, n: u32) -> Result<K0Class> {
    let field = g.field();
    if n == 0 {
        return Ok(K0Class::point(field));
    }
    let r = g.rank();
    if r == 0 {
        // one geometric point: a single orbit for every n
        return Ok(K0Class::point(field));
    }
    if r > SYM_MAX_RANK || n > SYM_MAX_POWER {
        return Err(Error::SizeLimit(format!(
            "symmetric-power orbit enumeration supports algebra rank <= {SYM_MAX_RANK} and power <= {SYM_MAX_POWER} (got rank {r}, power {n})"
        )));
    }
    let points = 1usize << r;
    let mut out = K0Class::zero(field);
    let mut total_size: u64 = 0;

    let mut counts = vec![0u32; points];
    enumerate_multisets(&mut counts, 0, n, &mut |counts: &[u32]| {
        // canonical representative: lexicographically smallest translate
        let mut stabilizer: Vec<usize> = Vec::new();
        let mut is_canonical = true;
        for t in 0..points {
            let translated: Vec<u32> = (0..points).map(|i| counts[i ^ t]).collect();
            match translated.as_slice().cmp(counts) {
                std::cmp::Ordering::Less => {
                    is_canonical = false;
                    break;
                }
                std::cmp::Ordering::Equal => stabilizer.push(t),
                std::cmp::Ordering::Greater => {}
            }
        }
        if !is_canonical {
            return;
        }
        let orbit_size = (points / stabilizer.len()) as u64;
        total_size += orbit_size;
        let stab_rows = rref(stabilizer.iter().map(|&t| t as u128));
        let fixed_exponents = nullspace(&stab_rows, r);
        let residue_gens: Vec<SquareClass> = fixed_exponents
            .iter()
            .map(|&e| {
                let mut acc = SquareClass::one(field);
                for (j, gen) in g.generators().iter().enumerate() {
                    if e >> j & 1 == 1 {
                        acc = acc.mul(gen).expect("same field");
                    }
                }
                acc
            })
            .collect();
        let residue = SqClassSubgroup::new(field, residue_gens).expect("classes share the field");
        out.insert(K0Monomial::new(0, residue), 1);
    });

    let expected = binom_big(points as u64 + n as u64 - 1, n as u64);
    assert_eq!(
        BigUint::from(total_size),
        expected,
        "orbit sizes must add up to the multiset count"
    );
    Ok(out)
}

fn enumerate_multisets(
    counts: &mut Vec<u32>,
    index: usize,
    remaining: u32,
    visit: &mut impl FnMut(&[u32]),
) {
    if index == counts.len() - 1 {
        counts[index] = remaining;
        visit(counts);
        counts[index] = 0;
        return;
    }
    for c in 0..=remaining {
        counts[index] = c;
        enumerate_multisets(counts, index + 1, remaining - c, visit);
    }
    counts[index] = 0;
}

/// All symmetric powers `[Sym^k(x)]` for `k = 0..=order`.
///
/// Monomials use the affine-shift rule
/// `Sym^k([A^l][Spec k_G]) = [A^{kl}]·sym_orbits(G, k)`; sums extend by the
/// power-structure convolution, and negative coefficients go through series
/// inversion (the constant coefficient of every monomial series is 1).
pub fn sym_power_series(x: &K0Class, order: usize) -> Result<Vec<K0Class>> {
    let field = x.field();
    let mut acc = one_series(&K0Class::point(field), order);
    for (monomial, mult) in x.terms() {
        let mut base = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let orbits = sym_orbits(&monomial.algebra, k as u32)?;
            let shift = monomial
                .affine_exp
                .checked_mul(k as u32)
                .expect("affine exponent overflow");
            base.push(orbits.mul(&K0Class::affine(field, shift))?);
        }
        let powered = pow_trunc(&base, mult, order);
        acc = mul_trunc(&acc, &powered, order);
    }
    Ok(acc)
}

/// The single symmetric power `[Sym^n(x)]`.
pub fn sym_power(x: &K0Class, n: u32) -> Result<K0Class> {
    let mut series = sym_power_series(x, n as usize)?;
    Ok(series.pop().expect("order+1 coefficients"))
}

// ---- Rendering and parsing ----

fn monomial_text(m: &K0Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    if m.affine_exp >= 1 {
        parts.push(format!("A^{}", m.affine_exp));
    }
    if m.algebra.rank() > 0 {
        let gens: Vec<String> = m
            .algebra
            .generators()
            .iter()
            .map(|c| c.value().to_string())
            .collect();
        parts.push(format!("Et({})", gens.join(",")));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl K0Class {
    /// Deterministic text form, e.g. `A^2*Et(3,5) + 2*A^1 - Et(7)`.
    /// Terms are listed by descending affine exponent.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (monomial, mult)) in self.terms.iter().rev().enumerate() {
            let mag = mult.unsigned_abs();
            if idx == 0 {
                if *mult < 0 {
                    out.push('-');
                }
            } else if *mult < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let text = monomial_text(monomial);
            if text == "1" {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&text);
            }
        }
        out
    }

    /// Parses the same grammar `render` emits: terms joined by `+`/`-`, each
    /// a `*`-product of factors `A`, `A^l`, `Et(g1,g2,...)`, or an integer.
    pub fn parse(field: BaseField, input: &str) -> Result<Self> {
        let chars: Vec<char> = input
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let mut p = K0Parser {
            chars,
            pos: 0,
            field,
        };
        p.parse_element()
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct K0Parser {
    chars: Vec<char>,
    pos: usize,
    field: BaseField,
}

impl K0Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at position {}", self.pos)))
    }

    fn parse_element(&mut self) -> Result<K0Class> {
        self.skip_ws();
        if self.peek().is_none() {
            return self.fail("empty expression");
        }
        let mut out = K0Class::zero(self.field);
        let mut sign: i64 = 1;
        if self.peek() == Some('-') {
            self.bump();
            sign = -1;
        } else if self.peek() == Some('+') {
            self.bump();
        }
        loop {
            self.skip_ws();
            let term = self.parse_term()?;
            out = out.add(&term.scale(sign))?;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(_) => return self.fail("expected `+` or `-` between terms"),
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<K0Class> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                let f = self.parse_factor()?;
                acc = acc.mul(&f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_factor(&mut self) -> Result<K0Class> {
        match self.peek() {
            Some('A') => {
                self.bump();
                let l = if self.peek() == Some('^') {
                    self.bump();
                    self.parse_uint()? as u32
                } else {
                    1
                };
                Ok(K0Class::affine(self.field, l))
            }
            Some('E') => {
                self.bump();
                if self.bump() != Some('t') {
                    return self.fail("expected `Et`");
                }
                self.skip_ws();
                if self.bump() != Some('(') {
                    return self.fail("expected `(` after `Et`");
                }
                let mut gens: Vec<i64> = Vec::new();
                self.skip_ws();
                if self.peek() != Some(')') {
                    loop {
                        self.skip_ws();
                        gens.push(self.parse_int()?);
                        self.skip_ws();
                        match self.peek() {
                            Some(',') => {
                                self.bump();
                            }
                            Some(')') => break,
                            _ => return self.fail("expected `,` or `)` in generator list"),
                        }
                    }
                }
                self.bump(); // ')'
                let algebra = SqClassSubgroup::from_ints(self.field, &gens)?;
                Ok(K0Class::from_algebra(algebra))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(K0Class::point(self.field).scale(n))
            }
            _ => self.fail("expected `A`, `Et(...)`, or an integer"),
        }
    }

    fn parse_int(&mut self) -> Result<i64> {
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            self.bump();
            sign = -1;
        }
        Ok(sign * self.parse_uint()?)
    }

    fn parse_uint(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected a number");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>()
            .map_err(|_| Error::Parse(format!("number `{text}` does not fit in i64")))
    }
}
