//! Sparse polynomials in the two parameters `m` and `b` with rational
//! coefficients, plus the small amount of dense univariate machinery needed
//! to cancel common factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(deg_m, deg_b)`. The derived lexicographic order is the
/// monomial order with `m > b`.
pub type Exponent = (u32, u32);

/// A polynomial in `m`, `b` over the rationals. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, deg_m: u32, deg_b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_m, deg_b), c);
        }
        Self { terms }
    }

    pub fn m() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn b() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no `m` or `b`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_free_of_b(&self) -> bool {
        self.terms.keys().all(|&(_, db)| db == 0)
    }

    /// Leading term under lex order with `m > b`.
    pub fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, m: &BigRational, b: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(dm, db), c) in &self.terms {
            acc += c * pow_rat(m, dm) * pow_rat(b, db);
        }
        acc
    }

    /// Swaps the roles of `m` and `b`.
    fn transpose(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(dm, db), c)| ((db, dm), c.clone()))
                .collect(),
        }
    }

    /// Views the polynomial as a polynomial in `b` whose coefficients are
    /// univariate polynomials in `m`.
    fn m_slices(&self) -> BTreeMap<u32, UniPoly> {
        let mut out: BTreeMap<u32, UniPoly> = BTreeMap::new();
        for (&(dm, db), c) in &self.terms {
            let slot = out.entry(db).or_default();
            slot.set(dm as usize, c.clone());
        }
        out
    }

    /// Greatest common divisor (monic, in `Q[m]`) of all the `m`-slices.
    fn m_content(&self) -> UniPoly {
        self.m_slices()
            .into_values()
            .fold(UniPoly::zero(), |g, s| UniPoly::gcd(&g, &s))
    }

    fn div_exact_m(&self, g: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (db, slice) in self.m_slices() {
            let (q, r) = slice.div_rem(g);
            debug_assert!(r.is_zero(), "inexact division by m-content");
            for (dm, c) in q.coeffs.into_iter().enumerate() {
                out.add_term((dm as u32, db), c);
            }
        }
        out
    }

    /// Cancels common factors of `num` and `den` that live purely in `Q[m]`
    /// or purely in `Q[b]`. When either side is free of `b` this yields lowest
    /// terms.
    pub(crate) fn cancel(num: Self, den: Self) -> (Self, Self) {
        let (num, den) = cancel_m(num, den);
        let (num, den) = cancel_m(num.transpose(), den.transpose());
        (num.transpose(), den.transpose())
    }

    /// Clears rational coefficients, removes the joint integer content and
    /// makes the leading coefficient of `den` positive.
    pub(crate) fn normalize_content(num: Self, den: Self) -> (Self, Self) {
        let mut lcm = BigInt::one();
        for c in num.terms.values().chain(den.terms.values()) {
            lcm = lcm.lcm(c.denom());
        }
        let scale = BigRational::from_integer(lcm);
        let num = num.scale(&scale);
        let den = den.scale(&scale);
        let mut g = BigInt::zero();
        for c in num.terms.values().chain(den.terms.values()) {
            g = g.gcd(c.numer());
        }
        let mut factor = BigRational::new(BigInt::one(), g);
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        (num.scale(&factor), den.scale(&factor))
    }
}

fn cancel_m(num: ParamPoly, den: ParamPoly) -> (ParamPoly, ParamPoly) {
    let g = UniPoly::gcd(&num.m_content(), &den.m_content());
    if g.degree().unwrap_or(0) == 0 {
        return (num, den);
    }
    (num.div_exact_m(&g), den.div_exact_m(&g))
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (&(m1, b1), c1) in &self.terms {
            for (&(m2, b2), c2) in &rhs.terms {
                out.add_term((m1 + m2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

fn write_rational_abs(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    let c = c.abs();
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Terms in descending lex order, e.g. `m^2-2*m*b+b^2`.
impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(dm, db), c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !c.abs().is_one() || (dm == 0 && db == 0) {
                factors.push(String::new());
            }
            for (var, d) in [("m", dm), ("b", db)] {
                match d {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{d}")),
                }
            }
            for (j, fac) in factors.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                if fac.is_empty() {
                    write_rational_abs(f, c)?;
                } else {
                    write!(f, "{fac}")?;
                }
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial over Q, ascending coefficients, no trailing
/// zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn set(&mut self, i: usize, c: BigRational) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, BigRational::zero());
        }
        self.coeffs[i] = c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn monic(mut self) -> Self {
        if let Some(lead) = self.coeffs.last().cloned() {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
        }
        self
    }

    fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = &r.coeffs[rd] / &lead;
            let shift = rd - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r.coeffs[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r.trim();
        }
        let mut q = UniPoly { coeffs: q };
        q.trim();
        (q, r)
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}
