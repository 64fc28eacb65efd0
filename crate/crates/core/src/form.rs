//! Graded exterior algebra on a finite set of generators.
//!
//! A monomial is a bit mask over generator slots; slot order is the canonical
//! wedge order. In a complex coframe of dimension `n` slot `2(j-1)` holds
//! `ω^j` and slot `2(j-1)+1` holds `ω̄^j`, so `ω^{1 1̄ 2 2̄}` is already
//! canonical.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{format_cx, Cx, Scalar};

/// One generator of a complex coframe: `ω^index` or `ω̄^index` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub index: usize,
    pub conjugated: bool,
}

impl Generator {
    pub fn holo(index: usize) -> Self {
        Generator { index, conjugated: false }
    }

    pub fn anti(index: usize) -> Self {
        Generator { index, conjugated: true }
    }

    /// 1-based rank: `ω^j ↦ 2j-1`, `ω̄^j ↦ 2j`.
    pub fn rank(self) -> usize {
        2 * self.index - usize::from(!self.conjugated)
    }

    pub fn slot(self) -> usize {
        self.rank() - 1
    }

    pub fn from_slot(slot: usize) -> Self {
        Generator { index: slot / 2 + 1, conjugated: slot % 2 == 1 }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugated {
            write!(f, "~w{}", self.index)
        } else {
            write!(f, "w{}", self.index)
        }
    }
}

/// A canonical wedge monomial, stored as a bit mask of generator slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_slots(slots: &[usize]) -> Option<(i32, Monomial)> {
        let mut acc = (1, Monomial::ONE);
        for &s in slots {
            let (sign, m) = acc.1.wedge(Monomial(1 << s))?;
            acc = (acc.0 * sign, m);
        }
        Some(acc)
    }

    pub fn from_generators(gens: &[Generator]) -> Option<(i32, Monomial)> {
        let slots: Vec<usize> = gens.iter().map(|g| g.slot()).collect();
        Self::from_slots(&slots)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, slot: usize) -> bool {
        self.0 & (1 << slot) != 0
    }

    pub fn slots(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |s| mask & (1 << s) != 0)
    }

    /// `(p, q)` counting holomorphic (even slots) and antiholomorphic (odd slots) generators.
    pub fn bidegree(self) -> (usize, usize) {
        let holo = (self.0 & 0x5555_5555).count_ones() as usize;
        (holo, self.degree() - holo)
    }

    /// `self ∧ other` as `(sign, monomial)`, or `None` when a generator repeats.
    pub fn wedge(self, other: Monomial) -> Option<(i32, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let low = rest.trailing_zeros();
            swaps += (self.0 >> low).count_ones();
            rest &= rest - 1;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// Sign and monomial obtained by swapping every `ω^j ↔ ω̄^j`.
    pub fn conjugate(self) -> (i32, Monomial) {
        let swapped: Vec<usize> = self.slots().map(|s| s ^ 1).collect();
        Monomial::from_slots(&swapped).expect("conjugation is a bijection on slots")
    }

    pub fn generators(self) -> Vec<Generator> {
        self.slots().map(Generator::from_slot).collect()
    }
}

/// A homogeneous differential form: a sparse linear combination of monomials
/// of one total degree over `gens` generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<S = Cx> {
    gens: usize,
    degree: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(gens: usize, degree: usize) -> Self {
        Form { gens, degree, terms: BTreeMap::new() }
    }

    pub fn constant(gens: usize, c: S) -> Self {
        Self::monomial(gens, Monomial::ONE, c)
    }

    pub fn monomial(gens: usize, m: Monomial, c: S) -> Self {
        let mut f = Self::zero(gens, m.degree());
        f.add_term(m, c);
        f
    }

    /// The 1-form given by a single generator slot.
    pub fn generator(gens: usize, slot: usize) -> Self {
        Self::monomial(gens, Monomial(1 << slot), S::one())
    }

    /// Builds a form from arbitrary (possibly repeated, possibly unsorted)
    /// slot lists. Rejects mixed total degrees.
    pub fn from_slot_terms<I>(gens: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, S)>,
    {
        let mut degree: Option<usize> = None;
        let mut f = Self::zero(gens, 0);
        for (slots, c) in terms {
            if let Some(bad) = slots.iter().find(|&&s| s >= gens) {
                return Err(Error::DimensionMismatch { expected: gens, found: bad + 1 });
            }
            match degree {
                None => {
                    degree = Some(slots.len());
                    f.degree = slots.len();
                }
                Some(d) if d != slots.len() => return Err(Error::MixedDegree(d, slots.len())),
                _ => {}
            }
            if let Some((sign, m)) = Monomial::from_slots(&slots) {
                f.add_term(m, if sign < 0 { -c } else { c });
            }
        }
        Ok(f)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> S {
        self.terms.get(&m).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c·m`, dropping the entry if it cancels. The caller keeps degrees consistent.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.negligible() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.negligible() {
                    self.terms.remove(&m);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.gens, other.gens, "forms over different generator sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.negligible() {
            return Self::zero(self.gens, self.degree);
        }
        self.map_coefficients(|c| c.clone() * s.clone())
    }

    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::zero(self.gens, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.gens, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.wedge(*mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// `self^k` (with `self^0 = 1`).
    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::constant(self.gens, S::one());
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Complex conjugation in a complex coframe: swaps `ω^j ↔ ω̄^j` and
    /// conjugates coefficients.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.gens, self.degree);
        for (m, c) in &self.terms {
            let (sign, cm) = m.conjugate();
            let v = c.conj();
            out.add_term(cm, if sign < 0 { -v } else { v });
        }
        out
    }

    /// Splits into pure-bidegree pieces (complex coframe convention).
    pub fn bidegree_components(&self) -> BTreeMap<(usize, usize), Form<S>> {
        let mut out: BTreeMap<(usize, usize), Form<S>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree())
                .or_insert_with(|| Self::zero(self.gens, self.degree))
                .add_term(*m, c.clone());
        }
        out
    }

    pub fn component(&self, p: usize, q: usize) -> Self {
        let mut out = Self::zero(self.gens, self.degree);
        for (m, c) in &self.terms {
            if m.bidegree() == (p, q) {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Left contraction with the dual vector of generator `slot`.
    pub fn interior(&self, slot: usize) -> Self {
        let bit = 1u32 << slot;
        let mut out = Self::zero(self.gens, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m.0 & bit != 0 {
                let below = (m.0 & (bit - 1)).count_ones();
                let v = c.clone();
                out.add_term(Monomial(m.0 & !bit), if below % 2 == 0 { v } else { -v });
            }
        }
        out
    }

    /// Applies the algebra homomorphism sending generator `s` to the 1-form
    /// `images[s]` (all images over the same target generator set).
    pub fn substitute(&self, images: &[Form<S>]) -> Form<S> {
        assert_eq!(images.len(), self.gens, "one image per generator");
        let target = images.first().map_or(0, |f| f.gens);
        let mut out = Form::zero(target, self.degree);
        for (m, c) in &self.terms {
            let mut acc = Form::constant(target, c.clone());
            for s in m.slots() {
                acc = acc.wedge(&images[s]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out.degree = self.degree;
        out
    }

    /// Derivation extending `d(generator s) = images[s]` (each image a 2-form).
    pub fn derivation(&self, images: &[Form<S>]) -> Form<S> {
        let mut out = Form::zero(self.gens, self.degree + 1);
        for (m, c) in &self.terms {
            for s in m.slots() {
                let img = &images[s];
                if img.is_zero() {
                    continue;
                }
                let bit = 1u32 << s;
                let below = (m.0 & (bit - 1)).count_ones();
                let rest = Monomial(m.0 & !bit);
                // (-1)^below · before ∧ dg ∧ after = (-1)^below · dg ∧ rest, as dg is even
                for (mi, ci) in &img.terms {
                    if let Some((sign, mm)) = mi.wedge(rest) {
                        let v = ci.clone() * c.clone();
                        let neg = (sign < 0) != (below % 2 == 1);
                        out.add_term(mm, if neg { -v } else { v });
                    }
                }
            }
        }
        out
    }
}

impl Form<Cx> {
    /// Whether every coefficient is real (for forms over a real coframe).
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }
}

impl fmt::Display for Form<Cx> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let gens: Vec<String> = if self.gens % 2 == 0 {
                m.generators().iter().map(|g| g.to_string()).collect()
            } else {
                m.slots().map(|s| format!("e{}", s + 1)).collect()
            };
            let mono = if gens.is_empty() { "1".to_string() } else { gens.join("^") };
            write!(f, "({})*{}", format_cx(c), mono)?;
        }
        Ok(())
    }
}
