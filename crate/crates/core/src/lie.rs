//! Lie polynomials in `A`, `B`.
//!
//! When `m` is not a root of unity the Lie subalgebra generated by `A`, `B`
//! has basis `A, B, C^k, C^k A^l, B^l C^k` (`k, l >= 1`) and
//! `I, A^n, B^n` (`n >= 2`) spans a linear complement. Membership is
//! therefore read off the normal form. Witnesses are built from
//!
//! ```text
//! C^(k+1) = ((1-m^k) b C^k - m^k/(1-m)^(k-1) [B, (ad C)^k A]) / (1-m^(k+1))
//! C^k A^l = (m^k-1)^(-l) (ad A)^l C^k
//! B^l C^k = (1-m^k)^(-l) (ad B)^l C^k
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Error;
use crate::freealg::{write_signed_term, Letter, NcPoly, Word};
use crate::linalg::Span;
use crate::rewrite::Algebra;
use crate::scalar::Coeff;

/// A bracket tree over the leaves `A`, `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieTree {
    Leaf(Letter),
    Node(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn a() -> Self {
        LieTree::Leaf(Letter::A)
    }

    pub fn b() -> Self {
        LieTree::Leaf(Letter::B)
    }

    /// `[A,B]`
    pub fn c() -> Self {
        Self::bracket(Self::a(), Self::b())
    }

    pub fn bracket(left: LieTree, right: LieTree) -> Self {
        LieTree::Node(Box::new(left), Box::new(right))
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Leaf(l) => write!(f, "{l}"),
            LieTree::Node(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

/// A finite linear combination of bracket trees.
#[derive(Clone, Debug, PartialEq)]
pub struct LieExpr<F> {
    terms: BTreeMap<LieTree, F>,
}

impl<F: Coeff> Default for LieExpr<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Coeff> LieExpr<F> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn tree(t: LieTree) -> Self {
        Self::term(F::one(), t)
    }

    pub fn term(c: F, t: LieTree) -> Self {
        let mut e = Self::zero();
        e.add_term(t, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LieTree, &F)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: LieTree, c: F) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&t).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(t, v);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// `[t, self]`, distributed over the terms.
    pub fn ad_left(&self, t: &LieTree) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_term(LieTree::bracket(t.clone(), x.clone()), c.clone());
        }
        out
    }
}

impl<F: Coeff> fmt::Display for LieExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, &t.to_string())?;
        }
        Ok(())
    }
}

/// Normal form of the interpreted expression.
pub fn expand<F: Coeff>(alg: &Algebra<F>, e: &LieExpr<F>) -> NcPoly<F> {
    fn go<F: Coeff>(
        alg: &Algebra<F>,
        t: &LieTree,
        memo: &mut HashMap<LieTree, NcPoly<F>>,
    ) -> NcPoly<F> {
        if let Some(hit) = memo.get(t) {
            return hit.clone();
        }
        let out = match t {
            LieTree::Leaf(l) => NcPoly::letter(*l),
            LieTree::Node(x, y) => {
                let (x, y) = (go(alg, x, memo), go(alg, y, memo));
                alg.bracket(&x, &y)
            }
        };
        memo.insert(t.clone(), out.clone());
        out
    }
    let mut memo = HashMap::new();
    let mut acc = NcPoly::zero();
    for (t, c) in e.terms() {
        acc.add_scaled(&go(alg, t, &mut memo), c);
    }
    acc
}

/// Normal form of `(ad x)^k (y)`.
pub fn ad_power<F: Coeff>(alg: &Algebra<F>, x: &NcPoly<F>, k: u32, y: &NcPoly<F>) -> NcPoly<F> {
    let x = alg.normal_form(x);
    (0..k).fold(alg.normal_form(y), |acc, _| alg.bracket(&x, &acc))
}

/// `I`, `A^n` or `B^n` with `n >= 2`.
pub fn is_complement_word(w: &Word) -> bool {
    let s = w.letters();
    s.len() != 1 && s.iter().all(|&l| l != Letter::C) && s.windows(2).all(|p| p[0] == p[1])
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F> {
    pub lie_part: NcPoly<F>,
    pub complement_part: NcPoly<F>,
}

pub fn decompose<F: Coeff>(alg: &Algebra<F>, p: &NcPoly<F>) -> Result<Decomposition<F>, Error> {
    alg.params().require_lie()?;
    let mut lie_part = NcPoly::zero();
    let mut complement_part = NcPoly::zero();
    for (w, c) in alg.normal_form(p).into_terms() {
        if is_complement_word(&w) {
            complement_part.add_term(w, c);
        } else {
            lie_part.add_term(w, c);
        }
    }
    Ok(Decomposition {
        lie_part,
        complement_part,
    })
}

pub fn is_lie_polynomial<F: Coeff>(alg: &Algebra<F>, p: &NcPoly<F>) -> Result<bool, Error> {
    Ok(decompose(alg, p)?.complement_part.is_zero())
}

/// Builds witnesses, caching the chain for `C^k`.
#[derive(Debug)]
pub struct Witnesser<'a, F> {
    alg: &'a Algebra<F>,
    /// `c_powers[k - 1]` expands to `C^k`.
    c_powers: Vec<LieExpr<F>>,
}

impl<'a, F: Coeff> Witnesser<'a, F> {
    pub fn new(alg: &'a Algebra<F>) -> Result<Self, Error> {
        alg.params().require_lie()?;
        Ok(Self {
            alg,
            c_powers: vec![LieExpr::tree(LieTree::c())],
        })
    }

    fn inv(x: F) -> F {
        x.inv().expect("m is not a root of unity")
    }

    /// Witness of `C^k`, `k >= 1`.
    pub fn c_power(&mut self, k: u32) -> &LieExpr<F> {
        assert!(k >= 1);
        let params = self.alg.params();
        let (one, b) = (F::one(), params.b().clone());
        while self.c_powers.len() < k as usize {
            let j = self.c_powers.len() as i64;
            let mj = params.m_power(j);
            let mut ad_c_a = LieTree::a();
            for _ in 0..j {
                ad_c_a = LieTree::bracket(LieTree::c(), ad_c_a);
            }
            let top = LieTree::bracket(LieTree::b(), ad_c_a);
            let one_minus_m = one.clone() - params.m().clone();
            let top_coeff = -(mj.clone() * Self::inv(one_minus_m.pow(j as u32 - 1)));
            let mut next = self.c_powers[j as usize - 1].scale(&((one.clone() - mj) * b.clone()));
            next.add_term(top, top_coeff);
            let scale = Self::inv(one.clone() - params.m_power(j + 1));
            self.c_powers.push(next.scale(&scale));
        }
        &self.c_powers[k as usize - 1]
    }

    /// Witness of a single Lie basis word.
    pub fn basis_word(&mut self, w: &Word) -> Result<LieExpr<F>, Error> {
        let s = w.letters();
        if s == [Letter::A] || s == [Letter::B] {
            return Ok(LieExpr::tree(LieTree::Leaf(s[0])));
        }
        if is_complement_word(w) || !crate::rewrite::is_irreducible(w) {
            return Err(Error::NotLiePolynomial {
                complement: w.to_string(),
            });
        }
        let k = s.iter().filter(|&&l| l == Letter::C).count() as u32;
        let a = s.iter().filter(|&&l| l == Letter::A).count() as u32;
        let bs = s.iter().filter(|&&l| l == Letter::B).count() as u32;
        let mk = self.alg.params().m_power(k as i64);
        let (leaf, l, factor) = if a > 0 {
            (LieTree::a(), a, mk - F::one())
        } else {
            (LieTree::b(), bs, F::one() - mk)
        };
        let mut e = self.c_power(k).clone();
        for _ in 0..l {
            e = e.ad_left(&leaf);
        }
        Ok(e.scale(&Self::inv(factor.pow(l))))
    }

    /// A bracket expression whose expansion is the normal form of `p`.
    pub fn witness(&mut self, p: &NcPoly<F>) -> Result<LieExpr<F>, Error> {
        let d = decompose(self.alg, p)?;
        if !d.complement_part.is_zero() {
            return Err(Error::NotLiePolynomial {
                complement: d.complement_part.to_string(),
            });
        }
        let mut out = LieExpr::zero();
        for (w, c) in d.lie_part.terms() {
            out.add_scaled(&self.basis_word(w)?, c);
        }
        Ok(out)
    }
}

pub fn witness<F: Coeff>(alg: &Algebra<F>, p: &NcPoly<F>) -> Result<LieExpr<F>, Error> {
    Witnesser::new(alg)?.witness(p)
}

/// The Lie basis words of filtration degree at most `d`.
pub fn predicted_basis(d: usize) -> Vec<Word> {
    let mut out = vec![Word::letter(Letter::A), Word::letter(Letter::B)];
    for k in 1..=d / 2 {
        out.push(Word::power(Letter::C, k));
        for l in 1..=d - 2 * k {
            out.push(Word::power(Letter::C, k).concat(&Word::power(Letter::A, l)));
            out.push(Word::power(Letter::B, l).concat(&Word::power(Letter::C, k)));
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct ClosureReport<F> {
    pub max_degree: usize,
    pub computed_basis: Vec<NcPoly<F>>,
    pub predicted_basis: Vec<NcPoly<F>>,
    pub spans_equal: bool,
}

/// Closes `{A, B}` under brackets, keeping elements of filtration degree at
/// most `d`, and compares the span with [`predicted_basis`].
pub fn lie_closure<F: Coeff>(alg: &Algebra<F>, d: usize) -> Result<ClosureReport<F>, Error> {
    alg.params().require_lie()?;
    let mut span = Span::new();
    let mut elems: Vec<NcPoly<F>> = Vec::new();
    for l in [Letter::A, Letter::B] {
        let g = NcPoly::letter(l);
        if g.filtration_degree() <= d && span.insert(&g) {
            elems.push(g);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..i {
            let br = alg.bracket(&elems[j], &elems[i]);
            if br.filtration_degree() <= d && span.insert(&br) {
                elems.push(br);
            }
        }
        i += 1;
    }
    let predicted: Vec<NcPoly<F>> = predicted_basis(d)
        .into_iter()
        .map(NcPoly::from_word)
        .collect();
    let mut predicted_span = Span::new();
    for p in &predicted {
        predicted_span.insert(p);
    }
    let spans_equal = span.dim() == predicted_span.dim()
        && predicted.iter().all(|p| span.contains(p))
        && elems.iter().all(|e| predicted_span.contains(e));
    Ok(ClosureReport {
        max_degree: d,
        computed_basis: elems,
        predicted_basis: predicted,
        spans_equal,
    })
}
