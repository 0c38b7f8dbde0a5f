//! The Grothendieck–Witt ring of a base field, presented by diagonal forms.
//!
//! An element is a finite integer combination of rank-one generators, one per
//! square class. The representation is free: only the square-class entries
//! are canonicalized, so distinct term maps can present equal ring elements.
//! Ring equality is decided by [`GWElement::eq`] through the classification
//! of quadratic forms over the supported fields (rank over C; rank and
//! signature over R; rank and discriminant over F_p; rank, discriminant,
//! signature, and Hasse symbols over Q, where the Hasse–Minkowski theorem
//! plus Witt cancellation make these a complete invariant system).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{
    hilbert_symbol_classes, relevant_places, BaseField, Place, SquareClass,
};

// ---- Elements ----

/// A virtual quadratic form: an integer combination of classes `<a>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWElement {
    field: BaseField,
    terms: BTreeMap<SquareClass, i64>,
}

impl GWElement {
    /// The zero element.
    pub fn zero(field: BaseField) -> Self {
        GWElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit `<1>`.
    pub fn one(field: BaseField) -> Self {
        GWElement::from_class(SquareClass::one(field))
    }

    /// The rank-one form `<a>` for a canonical class.
    pub fn from_class(class: SquareClass) -> Self {
        let field = class.field();
        let mut terms = BTreeMap::new();
        terms.insert(class, 1);
        GWElement { field, terms }
    }

    /// The hyperbolic form `H = <1> + <-1>`.
    pub fn hyperbolic(field: BaseField) -> Self {
        let one = GWElement::one(field);
        let minus = GWElement::from_class(SquareClass::minus_one(field));
        one.add(&minus).expect("same field")
    }

    /// Diagonal form `<a_1, ..., a_k>` from nonzero integer entries.
    pub fn diag(field: BaseField, entries: &[i64]) -> Result<Self> {
        let mut out = GWElement::zero(field);
        for &a in entries {
            out.insert(field.square_class(a)?, 1);
        }
        Ok(out)
    }

    /// Builds an element from `(class, multiplicity)` pairs.
    pub fn from_terms<I>(field: BaseField, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SquareClass, i64)>,
    {
        let mut out = GWElement::zero(field);
        for (class, mult) in terms {
            field.require_same(&class.field())?;
            out.insert(class, mult);
        }
        Ok(out)
    }

    fn insert(&mut self, class: SquareClass, mult: i64) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(class.field(), self.field);
        // keep the map free of zero terms so stored representations are unique
        match self.terms.entry(class) {
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

    /// Term iterator in the deterministic internal order.
    pub fn terms(&self) -> impl Iterator<Item = (&SquareClass, i64)> {
        self.terms.iter().map(|(c, &m)| (c, m))
    }

    /// True when the stored representation has no terms at all.
    pub fn is_zero_rep(&self) -> bool {
        self.terms.is_empty()
    }

    // ---- Ring operations ----

    pub fn add(&self, other: &GWElement) -> Result<GWElement> {
        self.field.require_same(&other.field)?;
        let mut out = self.clone();
        for (class, &mult) in &other.terms {
            out.insert(class.clone(), mult);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GWElement) -> Result<GWElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GWElement {
        GWElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(c, &m)| (c.clone(), -m))
                .collect(),
        }
    }

    /// Multiplies every multiplicity by `k`.
    pub fn scale(&self, k: i64) -> GWElement {
        if k == 0 {
            return GWElement::zero(self.field);
        }
        GWElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(c, &m)| (c.clone(), m.checked_mul(k).expect("multiplicity overflow")))
                .collect(),
        }
    }

    pub fn mul(&self, other: &GWElement) -> Result<GWElement> {
        self.field.require_same(&other.field)?;
        let mut out = GWElement::zero(self.field);
        for (c1, &m1) in &self.terms {
            for (c2, &m2) in &other.terms {
                out.insert(
                    c1.mul(c2)?,
                    m1.checked_mul(m2).expect("multiplicity overflow"),
                );
            }
        }
        Ok(out)
    }

    // ---- Invariants ----

    /// Rank homomorphism: the total multiplicity.
    pub fn rank(&self) -> i64 {
        self.terms
            .values()
            .fold(0i64, |acc, &m| acc.checked_add(m).expect("rank overflow"))
    }

    /// Signature homomorphism (real and rational base fields only).
    pub fn signature(&self) -> Result<i64> {
        if !self.field.has_real_place() {
            return Err(Error::NoRealPlace(self.field.to_string()));
        }
        Ok(self.terms.iter().fold(0i64, |acc, (c, &m)| {
            let s = if c.is_negative() { -m } else { m };
            acc.checked_add(s).expect("signature overflow")
        }))
    }

    /// Discriminant: the product of the classes with odd multiplicity.
    pub fn disc(&self) -> SquareClass {
        let mut d = SquareClass::one(self.field);
        for (c, &m) in &self.terms {
            if m.rem_euclid(2) == 1 {
                d = d.mul(c).expect("same field");
            }
        }
        d
    }

    /// All classifying invariants at once. The Hasse symbols are reported
    /// only over the rationals and only when every multiplicity is
    /// nonnegative (so the element is a genuine form).
    pub fn invariants(&self) -> GWInvariants {
        let hasse = if self.field == BaseField::Rationals
            && self.terms.values().all(|&m| m >= 0)
        {
            let part: Vec<(&SquareClass, i64)> = self.terms().collect();
            let places = relevant_places(&part.iter().map(|(c, _)| *c).collect::<Vec<_>>());
            Some(
                places
                    .into_iter()
                    .map(|v| (v, hasse_of_part(&part, v)))
                    .collect(),
            )
        } else {
            None
        };
        GWInvariants {
            rank: self.rank(),
            signature: self.signature().ok(),
            disc: self.disc(),
            hasse,
        }
    }

    // ---- Equality in the ring ----

    /// Decides equality in GW(k).
    ///
    /// The difference is split into its positive part `P` and negated
    /// negative part `N`, both genuine forms; by Witt cancellation the
    /// elements are equal iff `P` and `N` have the same rank and are
    /// isometric, which is decided by the complete invariant system of the
    /// base field.
    pub fn eq(&self, other: &GWElement) -> Result<bool> {
        self.field.require_same(&other.field)?;
        let mut pos: Vec<(&SquareClass, i64)> = Vec::new();
        let mut neg_owned: Vec<(SquareClass, i64)> = Vec::new();
        let mut diff: BTreeMap<&SquareClass, i64> = BTreeMap::new();
        for (c, &m) in &self.terms {
            *diff.entry(c).or_insert(0) += m;
        }
        for (c, &m) in &other.terms {
            *diff.entry(c).or_insert(0) -= m;
        }
        for (c, m) in diff {
            if m > 0 {
                pos.push((c, m));
            } else if m < 0 {
                neg_owned.push((c.clone(), -m));
            }
        }
        let neg: Vec<(&SquareClass, i64)> = neg_owned.iter().map(|(c, m)| (c, *m)).collect();

        let rank = |part: &[(&SquareClass, i64)]| -> i64 {
            part.iter()
                .fold(0i64, |a, (_, m)| a.checked_add(*m).expect("rank overflow"))
        };
        if rank(&pos) != rank(&neg) {
            return Ok(false);
        }
        if pos.is_empty() && neg.is_empty() {
            return Ok(true);
        }
        match self.field {
            BaseField::Complexes => Ok(true),
            BaseField::Reals => Ok(signature_of_part(&pos) == signature_of_part(&neg)),
            BaseField::PrimeField(_) => {
                Ok(disc_of_part(self.field, &pos) == disc_of_part(self.field, &neg))
            }
            BaseField::Rationals => {
                if signature_of_part(&pos) != signature_of_part(&neg) {
                    return Ok(false);
                }
                if disc_of_part(self.field, &pos) != disc_of_part(self.field, &neg) {
                    return Ok(false);
                }
                let mut classes: Vec<&SquareClass> = pos.iter().map(|(c, _)| *c).collect();
                classes.extend(neg.iter().map(|(c, _)| *c));
                for v in relevant_places(&classes) {
                    if hasse_of_part(&pos, v) != hasse_of_part(&neg, v) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// True when the element equals `(rank/2) * H` in the ring.
    pub fn is_hyperbolic(&self) -> Result<bool> {
        let r = self.rank();
        if r.rem_euclid(2) != 0 {
            return Ok(false);
        }
        let target = GWElement::hyperbolic(self.field).scale(r / 2);
        self.eq(&target)
    }

    // ---- Rendering ----

    /// Deterministic text form, e.g. `2⟨1⟩ + ⟨-6⟩`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(&SquareClass, i64)> = self.terms().collect();
        items.sort_by_cached_key(|(c, _)| c.render_key());
        let mut out = String::new();
        for (idx, (class, mult)) in items.iter().enumerate() {
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
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&class.to_string());
        }
        out
    }
}

impl fmt::Display for GWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// ---- Invariant record ----

/// The classifying invariants of an element, as far as they are defined over
/// its base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWInvariants {
    pub rank: i64,
    /// Defined over the rationals and the reals.
    pub signature: Option<i64>,
    pub disc: SquareClass,
    /// Hasse symbols at the relevant places; reported for genuine forms over
    /// the rationals.
    pub hasse: Option<Vec<(Place, i8)>>,
}

fn signature_of_part(part: &[(&SquareClass, i64)]) -> i64 {
    part.iter().fold(0i64, |acc, (c, m)| {
        let s = if c.is_negative() { -m } else { *m };
        acc.checked_add(s).expect("signature overflow")
    })
}

fn disc_of_part(field: BaseField, part: &[(&SquareClass, i64)]) -> SquareClass {
    let mut d = SquareClass::one(field);
    for (c, m) in part {
        if m.rem_euclid(2) == 1 {
            d = d.mul(c).expect("same field");
        }
    }
    d
}

/// Hasse symbol of a genuine form given by distinct classes with
/// multiplicities: the product of Hilbert symbols over all unordered pairs of
/// expanded entries, computed multiplicity-aware (a class of multiplicity m
/// contributes its self-symbol C(m,2) times).
fn hasse_of_part(part: &[(&SquareClass, i64)], v: Place) -> i8 {
    let mut flips: u64 = 0;
    for (i, (ci, mi)) in part.iter().enumerate() {
        let self_pairs = (mi.rem_euclid(4) == 2 || mi.rem_euclid(4) == 3) as u64; // C(m,2) mod 2
        if self_pairs == 1 && hilbert_symbol_classes(ci, ci, v).expect("rational classes") == -1 {
            flips += 1;
        }
        for (cj, mj) in part.iter().skip(i + 1) {
            if (mi % 2 != 0) && (mj % 2 != 0)
                && hilbert_symbol_classes(ci, cj, v).expect("rational classes") == -1
            {
                flips += 1;
            }
        }
    }
    if flips % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---- Trace forms of multiquadratic étale algebras ----

/// The trace form of the étale algebra attached to a square-class subgroup
/// `G`: for `G = <g_1, ..., g_r>` it is the product of the rank-two forms
/// `<2> + <2 g_i>`, which expands to `<|G|> * sum_{g in G} <g>`.
pub fn trace_form(g: &crate::k0::SqClassSubgroup) -> GWElement {
    let field = g.field();
    let two = field
        .square_class(2)
        .expect("2 is a unit away from characteristic 2");
    let mut out = GWElement::one(field);
    for gen in g.generators() {
        let factor = GWElement::from_class(two.clone())
            .add(&GWElement::from_class(two.mul(gen).expect("same field")))
            .expect("same field");
        out = out.mul(&factor).expect("same field");
    }
    out
}

// ---- Parsing ----

impl GWElement {
    /// Parses expressions like `2⟨1⟩ + ⟨-6⟩ - 3H + 4`, where a bare integer
    /// means that multiple of `<1>`, `H` is the hyperbolic form, and entries
    /// may be rationals `a/b`. ASCII brackets `<...>` are accepted.
    pub fn parse(field: BaseField, input: &str) -> Result<Self> {
        let chars: Vec<char> = input
            .chars()
            .map(|c| match c {
                '\u{2212}' => '-', // unicode minus
                '\u{27e8}' => '<',
                '\u{27e9}' => '>',
                c => c,
            })
            .collect();
        let mut p = ElementParser {
            chars,
            pos: 0,
            field,
        };
        p.parse_element()
    }
}

struct ElementParser {
    chars: Vec<char>,
    pos: usize,
    field: BaseField,
}

impl ElementParser {
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

    fn parse_element(&mut self) -> Result<GWElement> {
        self.skip_ws();
        if self.peek().is_none() {
            return self.fail("empty expression");
        }
        let mut out = GWElement::zero(self.field);
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

    fn parse_term(&mut self) -> Result<GWElement> {
        let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.parse_uint()?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
            }
            Some(n)
        } else {
            None
        };
        match self.peek() {
            Some('<') => {
                let atom = self.parse_bracket()?;
                Ok(atom.scale(coeff.unwrap_or(1)))
            }
            Some('H') => {
                self.bump();
                Ok(GWElement::hyperbolic(self.field).scale(coeff.unwrap_or(1)))
            }
            _ => match coeff {
                Some(n) => Ok(GWElement::one(self.field).scale(n)),
                None => self.fail("expected an integer, `⟨a⟩`, or `H`"),
            },
        }
    }

    fn parse_bracket(&mut self) -> Result<GWElement> {
        debug_assert_eq!(self.peek(), Some('<'));
        self.bump();
        self.skip_ws();
        let num = self.parse_int()?;
        self.skip_ws();
        let den = if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            self.parse_int()?
        } else {
            1
        };
        self.skip_ws();
        if self.peek() != Some('>') {
            return self.fail("expected closing bracket");
        }
        self.bump();
        let class = self.field.square_class_ratio(num, den)?;
        Ok(GWElement::from_class(class))
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k0::SqClassSubgroup;
    use proptest::prelude::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn gw(s: &str) -> GWElement {
        GWElement::parse(q(), s).unwrap()
    }

    #[test]
    fn square_multiple_relation_holds() {
        assert!(gw("⟨3⟩").eq(&gw("⟨12⟩")).unwrap());
        assert_eq!(gw("⟨3⟩"), gw("⟨12⟩")); // even termwise: canonicalization
    }

    #[test]
    fn product_relation_holds() {
        let lhs = gw("⟨3⟩").mul(&gw("⟨5⟩")).unwrap();
        assert_eq!(lhs, gw("⟨15⟩"));
    }

    #[test]
    fn opposite_classes_sum_to_hyperbolic() {
        for a in [1i64, 2, 3, 5, 30, -7] {
            let x = GWElement::diag(q(), &[a, -a]).unwrap();
            assert!(x.eq(&GWElement::hyperbolic(q())).unwrap());
        }
    }

    #[test]
    fn two_dimensional_trade_relation_holds() {
        // <3> + <5> = <8> + <120> = <2> + <30>
        assert!(gw("⟨3⟩ + ⟨5⟩").eq(&gw("⟨2⟩ + ⟨30⟩")).unwrap());
        assert!(!gw("⟨3⟩ + ⟨5⟩").eq(&gw("⟨1⟩ + ⟨15⟩")).unwrap());
    }

    #[test]
    fn multiples_of_hyperbolic_absorb_products() {
        let x = gw("⟨3⟩ + ⟨5⟩");
        let h = GWElement::hyperbolic(q());
        let lhs = x.mul(&h).unwrap();
        assert!(lhs.eq(&h.scale(2)).unwrap());
        assert!(lhs.is_hyperbolic().unwrap());
    }

    #[test]
    fn equality_uses_the_field_classification() {
        let f5 = BaseField::prime_field(5).unwrap();
        let f7 = BaseField::prime_field(7).unwrap();
        let c = BaseField::Complexes;
        let r = BaseField::Reals;
        // <1>+<1> vs <1>+<-1>: equal over C and F_5 (disc -1 is a square),
        // distinct over R and F_7.
        let make = |f: BaseField| {
            (
                GWElement::diag(f, &[1, 1]).unwrap(),
                GWElement::diag(f, &[1, -1]).unwrap(),
            )
        };
        let (x, y) = make(c);
        assert!(x.eq(&y).unwrap());
        let (x, y) = make(f5);
        assert!(x.eq(&y).unwrap());
        let (x, y) = make(f7);
        assert!(!x.eq(&y).unwrap());
        let (x, y) = make(r);
        assert!(!x.eq(&y).unwrap());
        let (x, y) = make(q());
        assert!(!x.eq(&y).unwrap());
    }

    #[test]
    fn rationals_need_hasse_not_just_rank_disc_signature() {
        // <1>+<1>+<1>+<1> and <1>+<2>+<5>+<10> share rank 4, square
        // discriminant, and signature 4, but the Hasse symbols at 2 and 5
        // separate them: (2,5)(2,10)(5,10) = -1 at both places.
        let x = GWElement::diag(q(), &[1, 1, 1, 1]).unwrap();
        let y = GWElement::diag(q(), &[1, 2, 5, 10]).unwrap();
        assert!(!x.eq(&y).unwrap());
        // ... while <1>+<1> and <2>+<2> are genuinely equal (sum of two
        // squares represents 2), and so are their doublings — every Hasse
        // symbol of 4<2> is the even power (2,2)^6.
        let x = GWElement::diag(q(), &[1, 1]).unwrap();
        let y = GWElement::diag(q(), &[2, 2]).unwrap();
        assert!(x.eq(&y).unwrap());
        let x = GWElement::diag(q(), &[1, 1, 1, 1]).unwrap();
        let y = GWElement::diag(q(), &[2, 2, 2, 2]).unwrap();
        assert!(x.eq(&y).unwrap());
    }

    #[test]
    fn invariants_of_small_forms() {
        let x = gw("⟨1⟩ + ⟨-6⟩ + ⟨10⟩");
        let inv = x.invariants();
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.signature, Some(1));
        assert_eq!(inv.disc, q().square_class(-60).unwrap());
        let hasse = inv.hasse.unwrap();
        assert!(hasse.iter().any(|(v, _)| *v == Place::PrimePlace(5)));
        // virtual element: no Hasse data
        assert!(gw("⟨1⟩ - ⟨2⟩").invariants().hasse.is_none());
        // complex field: no signature
        let z = GWElement::diag(BaseField::Complexes, &[1, 1]).unwrap();
        assert_eq!(z.invariants().signature, None);
        assert!(matches!(z.signature(), Err(Error::NoRealPlace(_))));
    }

    #[test]
    fn trace_form_expands_to_scaled_group_sum() {
        let g = SqClassSubgroup::from_ints(q(), &[3, 5]).unwrap();
        let t = trace_form(&g);
        assert_eq!(t, gw("⟨1⟩ + ⟨3⟩ + ⟨5⟩ + ⟨15⟩"));
        let g1 = SqClassSubgroup::from_ints(q(), &[3]).unwrap();
        assert_eq!(trace_form(&g1), gw("⟨2⟩ + ⟨6⟩"));
        let triv = SqClassSubgroup::trivial(q());
        assert_eq!(trace_form(&triv), GWElement::one(q()));
    }

    #[test]
    fn rendering_is_sorted_and_signed() {
        let x = gw("⟨-6⟩ + 2⟨1⟩");
        assert_eq!(x.render(), "2\u{27e8}1\u{27e9} + \u{27e8}-6\u{27e9}");
        assert_eq!(GWElement::zero(q()).render(), "0");
        let y = gw("-H + ⟨3⟩");
        // -<1> + <3> - <-1>: positive entries first, then negatives by size
        assert_eq!(
            y.render(),
            "-\u{27e8}1\u{27e9} + \u{27e8}3\u{27e9} - \u{27e8}-1\u{27e9}"
        );
    }

    #[test]
    fn parser_accepts_sugar_and_rejects_garbage() {
        assert_eq!(gw("0"), GWElement::zero(q()));
        assert_eq!(gw("3"), GWElement::one(q()).scale(3));
        assert_eq!(gw("2H"), GWElement::hyperbolic(q()).scale(2));
        assert_eq!(gw("2*⟨3⟩"), gw("⟨3⟩ + ⟨3⟩"));
        assert_eq!(gw("<1/2>"), gw("⟨2⟩"));
        assert_eq!(gw("⟨-3/5⟩"), gw("⟨-15⟩"));
        assert!(matches!(
            GWElement::parse(q(), "⟨⟩"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(GWElement::parse(q(), ""), Err(Error::Parse(_))));
        assert!(matches!(
            GWElement::parse(q(), "⟨1⟩ ⟨2⟩"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            GWElement::parse(q(), "⟨0⟩"),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let x = GWElement::one(q());
        let y = GWElement::one(BaseField::Reals);
        assert!(matches!(x.add(&y), Err(Error::FieldMismatch { .. })));
        assert!(matches!(x.eq(&y), Err(Error::FieldMismatch { .. })));
    }

    fn arb_entry() -> impl Strategy<Value = i64> {
        prop_oneof![(-30i64..=30).prop_filter("nonzero", |&a| a != 0)]
    }

    proptest! {
        #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn render_parse_round_trips(entries in proptest::collection::vec(arb_entry(), 1..5),
                                    mults in proptest::collection::vec(-4i64..=4, 1..5)) {
            let mut x = GWElement::zero(q());
            for (a, m) in entries.iter().zip(mults.iter()) {
                let line = GWElement::from_class(q().square_class(*a).unwrap());
                x = x.add(&line.scale(*m)).unwrap();
            }
            let back = GWElement::parse(q(), &x.render()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn trade_relation_randomized(a in arb_entry(), b in arb_entry()) {
            prop_assume!(a + b != 0);
            let lhs = GWElement::diag(q(), &[a, b]).unwrap();
            let rhs = GWElement::diag(q(), &[a + b, a * b * (a + b)]).unwrap();
            prop_assert!(lhs.eq(&rhs).unwrap());
        }

        #[test]
        fn witt_cancellation_in_both_directions(
            xs in proptest::collection::vec(arb_entry(), 1..4),
            ys in proptest::collection::vec(arb_entry(), 1..4),
            zs in proptest::collection::vec(arb_entry(), 1..4),
        ) {
            let x = GWElement::diag(q(), &xs).unwrap();
            let y = GWElement::diag(q(), &ys).unwrap();
            let z = GWElement::diag(q(), &zs).unwrap();
            let xz = x.add(&z).unwrap();
            let yz = y.add(&z).unwrap();
            prop_assert_eq!(x.eq(&y).unwrap(), xz.eq(&yz).unwrap());
        }

        #[test]
        fn multiplication_distributes_over_addition(
            xs in proptest::collection::vec(arb_entry(), 1..3),
            ys in proptest::collection::vec(arb_entry(), 1..3),
            zs in proptest::collection::vec(arb_entry(), 1..3),
        ) {
            let x = GWElement::diag(q(), &xs).unwrap();
            let y = GWElement::diag(q(), &ys).unwrap();
            let z = GWElement::diag(q(), &zs).unwrap();
            let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
            let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
