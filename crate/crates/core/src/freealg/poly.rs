use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Coeff;

use super::word::{Letter, Word};

/// A finite linear combination of words with coefficients in `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: Coeff> Default for NcPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Coeff> NcPoly<F> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(F::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        Self::from_word(Word::letter(l))
    }

    pub fn scalar(c: F) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn term(c: F, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, F)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
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

    /// Terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, F)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    /// The coefficient when the polynomial is a multiple of `I`.
    pub fn as_scalar(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.sandwich(left, right), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `[self, other] = self·other - other·self`
    pub fn bracket(&self, other: &Self) -> Self {
        &self.mul(other) - &other.mul(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Maximum filtration degree over the support; 0 for the zero polynomial.
    pub fn filtration_degree(&self) -> usize {
        self.terms
            .keys()
            .map(Word::filtration_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn map_coeffs<G: Coeff>(&self, f: impl Fn(&F) -> G) -> NcPoly<G> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn try_map_coeffs<G: Coeff, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<NcPoly<G>, E> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl<F: Coeff> Add for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn add(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<F: Coeff> Sub for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn sub(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<F: Coeff> Mul for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn mul(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        NcPoly::mul(self, rhs)
    }
}

impl<F: Coeff> Neg for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn neg(self) -> NcPoly<F> {
        self.scale(&-F::one())
    }
}

/// Writes `c*body` with the sign pulled out, e.g. ` - (b/(m-1))*I`.
pub(crate) fn write_signed_term<F: Coeff>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &F,
    body: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = if neg { -c.clone() } else { c.clone() };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if abs.is_one() {
        write!(f, "{body}")
    } else if abs.is_atomic() {
        write!(f, "{abs}*{body}")
    } else {
        write!(f, "({abs})*{body}")
    }
}

impl<F: Coeff> fmt::Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, &w.to_string())?;
        }
        Ok(())
    }
}
