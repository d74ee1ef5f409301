//! The reduction system
//!
//! ```text
//! alpha:      AB      -> (mC - bI)/(m-1)
//! beta:       AC      -> mCA
//! gamma:      BA      -> (C - bI)/(m-1)
//! delta:      CB      -> mBC
//! epsilon(k): BC^kA   -> (C^(k+1) - bC^k)/(m^k (m-1))      k >= 1
//! ```
//!
//! and the normal forms it computes. Irreducible words are exactly `C^k A^l`
//! and `B^l C^k`. At any position of a word at most one rule matches, so the
//! leftmost strategy is deterministic; every step strictly decreases the
//! [`Measure`], so reduction terminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::freealg::{Letter, NcPoly, Word};
use crate::scalar::{Coeff, TwistParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleName {
    Alpha,
    Beta,
    Gamma,
    Delta,
    /// `epsilon(k)` with `k >= 1`.
    Epsilon(u32),
}

impl RuleName {
    pub fn lhs(self) -> Word {
        use Letter::*;
        match self {
            RuleName::Alpha => Word::new(vec![A, B]),
            RuleName::Beta => Word::new(vec![A, C]),
            RuleName::Gamma => Word::new(vec![B, A]),
            RuleName::Delta => Word::new(vec![C, B]),
            RuleName::Epsilon(k) => {
                let mut v = vec![B];
                v.extend(std::iter::repeat_n(C, k as usize));
                v.push(A);
                Word::new(v)
            }
        }
    }

    pub fn lhs_len(self) -> usize {
        match self {
            RuleName::Epsilon(k) => k as usize + 2,
            _ => 2,
        }
    }

    /// The four fixed rules followed by `epsilon(1..=max_k)`.
    pub fn catalogue(max_k: u32) -> Vec<RuleName> {
        let mut v = vec![
            RuleName::Alpha,
            RuleName::Beta,
            RuleName::Gamma,
            RuleName::Delta,
        ];
        v.extend((1..=max_k).map(RuleName::Epsilon));
        v
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleName::Alpha => write!(f, "alpha"),
            RuleName::Beta => write!(f, "beta"),
            RuleName::Gamma => write!(f, "gamma"),
            RuleName::Delta => write!(f, "delta"),
            RuleName::Epsilon(k) => write!(f, "epsilon({k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule<F> {
    pub name: RuleName,
    pub lhs: Word,
    pub rhs: NcPoly<F>,
}

/// Well-founded termination measure: word length, then the number of
/// out-of-order pairs `(A..C)` and `(C..B)`, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub length: usize,
    pub disorder: usize,
}

pub fn measure(w: &Word) -> Measure {
    let (mut a_seen, mut c_seen, mut disorder) = (0, 0, 0);
    for &l in w.letters() {
        match l {
            Letter::A => a_seen += 1,
            Letter::C => {
                disorder += a_seen;
                c_seen += 1;
            }
            Letter::B => disorder += c_seen,
        }
    }
    Measure {
        length: w.len(),
        disorder,
    }
}

/// A rule occurrence inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub position: usize,
    pub rule: RuleName,
}

/// The rule whose left-hand side starts at `pos`, if any.
pub fn redex_at(w: &Word, pos: usize) -> Option<RuleName> {
    use Letter::*;
    let s = w.letters();
    let next = *s.get(pos + 1)?;
    match (s[pos], next) {
        (A, B) => Some(RuleName::Alpha),
        (A, C) => Some(RuleName::Beta),
        (B, A) => Some(RuleName::Gamma),
        (C, B) => Some(RuleName::Delta),
        (B, C) => {
            let k = s[pos + 1..].iter().take_while(|&&l| l == C).count();
            (s.get(pos + 1 + k) == Some(&A)).then_some(RuleName::Epsilon(k as u32))
        }
        _ => None,
    }
}

pub fn find_leftmost_redex(w: &Word) -> Option<Redex> {
    (0..w.len()).find_map(|position| redex_at(w, position).map(|rule| Redex { position, rule }))
}

pub fn find_all_redexes(w: &Word) -> Vec<Redex> {
    (0..w.len())
        .filter_map(|position| redex_at(w, position).map(|rule| Redex { position, rule }))
        .collect()
}

/// True iff `w = C^k A^l` or `w = B^l C^k`.
pub fn is_irreducible(w: &Word) -> bool {
    let s = w.letters();
    let c_then_a = {
        let k = s.iter().take_while(|&&l| l == Letter::C).count();
        s[k..].iter().all(|&l| l == Letter::A)
    };
    let b_then_c = {
        let l = s.iter().take_while(|&&x| x == Letter::B).count();
        s[l..].iter().all(|&x| x == Letter::C)
    };
    c_then_a || b_then_c
}

/// One application `r_{L mu R}` of a rule at a fixed place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub left: Word,
    pub rule: RuleName,
    pub right: Word,
}

impl Step {
    pub fn new(left: Word, rule: RuleName, right: Word) -> Self {
        Self { left, rule, right }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r[{};{};{}]", self.left, self.rule, self.right)
    }
}

/// The rules instantiated at fixed parameters, optionally with some
/// right-hand sides replaced (used for mutation testing).
#[derive(Debug)]
pub struct ReductionSystem<F> {
    params: TwistParams<F>,
    fixed: [NcPoly<F>; 4],
    /// `1 / (m^k (m-1))`, indexed by `k - 1`.
    eps_scale: Mutex<Vec<F>>,
    overrides: BTreeMap<RuleName, NcPoly<F>>,
}

impl<F: Coeff> ReductionSystem<F> {
    pub fn new(params: TwistParams<F>) -> Self {
        let m = params.m().clone();
        let b = params.b().clone();
        let inv_m1 = (m.clone() - F::one())
            .inv()
            .expect("m != 1 is enforced by TwistParams");
        let c = || Word::letter(Letter::C);
        let alpha = NcPoly::from_terms([
            (c(), m.clone() * inv_m1.clone()),
            (Word::empty(), -(b.clone() * inv_m1.clone())),
        ]);
        let beta = NcPoly::term(m.clone(), Word::new(vec![Letter::C, Letter::A]));
        let gamma = NcPoly::from_terms([(c(), inv_m1.clone()), (Word::empty(), -(b * inv_m1))]);
        let delta = NcPoly::term(m, Word::new(vec![Letter::B, Letter::C]));
        Self {
            params,
            fixed: [alpha, beta, gamma, delta],
            eps_scale: Mutex::new(Vec::new()),
            overrides: BTreeMap::new(),
        }
    }

    /// Replaces the right-hand side of one rule.
    pub fn with_override(mut self, rule: RuleName, rhs: NcPoly<F>) -> Self {
        self.overrides.insert(rule, rhs);
        self
    }

    pub fn params(&self) -> &TwistParams<F> {
        &self.params
    }

    fn eps_scale(&self, k: u32) -> F {
        assert!(k >= 1, "epsilon(k) needs k >= 1");
        let mut cache = self.eps_scale.lock().expect("eps cache poisoned");
        while cache.len() < k as usize {
            let j = cache.len() as i64 + 1;
            let den = self.params.m_power(j) * (self.params.m().clone() - F::one());
            cache.push(den.inv().expect("m^k (m-1) is nonzero"));
        }
        cache[k as usize - 1].clone()
    }

    pub fn rhs(&self, rule: RuleName) -> NcPoly<F> {
        if let Some(p) = self.overrides.get(&rule) {
            return p.clone();
        }
        match rule {
            RuleName::Alpha => self.fixed[0].clone(),
            RuleName::Beta => self.fixed[1].clone(),
            RuleName::Gamma => self.fixed[2].clone(),
            RuleName::Delta => self.fixed[3].clone(),
            RuleName::Epsilon(k) => {
                let s = self.eps_scale(k);
                let ck = Word::power(Letter::C, k as usize);
                let ck1 = Word::power(Letter::C, k as usize + 1);
                NcPoly::from_terms([(ck1, s.clone()), (ck, -(self.params.b().clone() * s))])
            }
        }
    }

    pub fn rule(&self, name: RuleName) -> Rule<F> {
        Rule {
            name,
            lhs: name.lhs(),
            rhs: self.rhs(name),
        }
    }

    /// The linear map `r_{L mu R}`: the word `L·W_mu·R` is replaced by
    /// `L·f_mu·R`, every other word is fixed.
    pub fn reduce_at(&self, p: &NcPoly<F>, left: &Word, rule: RuleName, right: &Word) -> NcPoly<F> {
        let target = rule.lhs().sandwich(left, right);
        let c = p.coeff(&target);
        if c.is_zero() {
            return p.clone();
        }
        let mut out = p.clone();
        out.add_term(target, -c.clone());
        out.add_scaled(&self.rhs(rule).sandwich(left, right), &c);
        out
    }

    pub fn apply_step(&self, p: &NcPoly<F>, step: &Step) -> NcPoly<F> {
        self.reduce_at(p, &step.left, step.rule, &step.right)
    }

    /// Splits `w` around a redex into `(L, R)`.
    pub fn split(w: &Word, redex: Redex) -> (Word, Word) {
        let end = redex.position + redex.rule.lhs_len();
        (w.subword(0, redex.position), w.subword(end, w.len()))
    }

    /// Rewrites a single word at the given redex.
    pub fn rewrite_word(&self, w: &Word, redex: Redex) -> NcPoly<F> {
        let (l, r) = Self::split(w, redex);
        self.rhs(redex.rule).sandwich(&l, &r)
    }
}

/// The quotient algebra: a reduction system plus a cache of word normal
/// forms. The cache only ever stores true normal forms, so sharing it is
/// safe.
#[derive(Debug)]
pub struct Algebra<F> {
    system: ReductionSystem<F>,
    memo: Mutex<HashMap<Word, NcPoly<F>>>,
}

impl<F: Coeff> Algebra<F> {
    pub fn new(params: TwistParams<F>) -> Self {
        Self::with_system(ReductionSystem::new(params))
    }

    pub fn with_system(system: ReductionSystem<F>) -> Self {
        Self {
            system,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &TwistParams<F> {
        self.system.params()
    }

    pub fn system(&self) -> &ReductionSystem<F> {
        &self.system
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly<F> {
        let Some(redex) = find_leftmost_redex(w) else {
            return NcPoly::from_word(w.clone());
        };
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(w) {
            return hit.clone();
        }
        let mut acc = NcPoly::zero();
        for (w2, c) in self.system.rewrite_word(w, redex).terms() {
            acc.add_scaled(&self.normal_form_word(w2), c);
        }
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(w.clone(), acc.clone());
        acc
    }

    /// Leftmost-redex normal form, term by term.
    pub fn normal_form(&self, p: &NcPoly<F>) -> NcPoly<F> {
        let mut acc = NcPoly::zero();
        for (w, c) in p.terms() {
            if is_irreducible(w) {
                acc.add_term(w.clone(), c.clone());
            } else {
                acc.add_scaled(&self.normal_form_word(w), c);
            }
        }
        acc
    }

    /// Reduces by picking a random reducible word and a random redex in it at
    /// every step. No caching.
    pub fn normal_form_random<R: Rng + ?Sized>(&self, p: &NcPoly<F>, rng: &mut R) -> NcPoly<F> {
        let mut cur = p.clone();
        loop {
            let reducible: Vec<Word> = cur
                .support()
                .filter(|w| !is_irreducible(w))
                .cloned()
                .collect();
            let Some(w) = reducible.choose(rng) else {
                return cur;
            };
            let redexes = find_all_redexes(w);
            let redex = *redexes.choose(rng).expect("reducible word has a redex");
            let (l, r) = ReductionSystem::<F>::split(w, redex);
            cur = self.system.reduce_at(&cur, &l, redex.rule, &r);
        }
    }

    /// Normal form together with the sequence of reductions applied. At each
    /// step the first reducible word (canonical order) is reduced at its
    /// leftmost redex.
    pub fn normal_form_traced(&self, p: &NcPoly<F>) -> (NcPoly<F>, Vec<Step>) {
        let mut cur = p.clone();
        let mut steps = Vec::new();
        loop {
            let Some((w, redex)) = cur
                .support()
                .find_map(|w| find_leftmost_redex(w).map(|r| (w.clone(), r)))
            else {
                return (cur, steps);
            };
            let (l, r) = ReductionSystem::<F>::split(&w, redex);
            let step = Step::new(l, redex.rule, r);
            cur = self.system.apply_step(&cur, &step);
            steps.push(step);
        }
    }

    pub fn quotient_equal(&self, p: &NcPoly<F>, q: &NcPoly<F>) -> bool {
        self.normal_form(p) == self.normal_form(q)
    }

    /// Normal form of the product.
    pub fn mul(&self, p: &NcPoly<F>, q: &NcPoly<F>) -> NcPoly<F> {
        self.normal_form(&p.mul(q))
    }

    /// Normal form of `[p, q]`.
    pub fn bracket(&self, p: &NcPoly<F>, q: &NcPoly<F>) -> NcPoly<F> {
        self.normal_form(&p.bracket(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse;
    use crate::{RatFunc, Rational};
    use num_traits::One;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        Word::from_letters(s).unwrap()
    }

    fn sym() -> Algebra<RatFunc> {
        Algebra::new(TwistParams::symbolic())
    }

    fn p(alg: &Algebra<RatFunc>, s: &str) -> NcPoly<RatFunc> {
        parse(s, alg.params()).unwrap()
    }

    #[test]
    fn leftmost_redex_examples() {
        assert_eq!(
            find_leftmost_redex(&w("ABA")),
            Some(Redex {
                position: 0,
                rule: RuleName::Alpha
            })
        );
        assert_eq!(
            find_leftmost_redex(&w("BCCA")),
            Some(Redex {
                position: 0,
                rule: RuleName::Epsilon(2)
            })
        );
        assert_eq!(find_leftmost_redex(&w("CAA")), None);
        assert_eq!(
            find_leftmost_redex(&w("CCAC")),
            Some(Redex {
                position: 2,
                rule: RuleName::Beta
            })
        );
        assert_eq!(
            find_leftmost_redex(&w("BCCB")),
            Some(Redex {
                position: 2,
                rule: RuleName::Delta
            })
        );
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&w("CCAAA")));
        assert!(is_irreducible(&w("")));
        assert!(is_irreducible(&w("BBCC")));
        assert!(!is_irreducible(&w("ACA")));
        assert!(!is_irreducible(&w("BCA")));
    }

    #[test]
    fn irreducible_iff_no_redex_up_to_length_7() {
        for len in 0..=7 {
            for word in Word::all_of_length(len) {
                assert_eq!(
                    is_irreducible(&word),
                    find_leftmost_redex(&word).is_none(),
                    "{word}"
                );
            }
        }
    }

    #[test]
    fn every_rule_decreases_measure() {
        let alg = sym();
        for name in RuleName::catalogue(12) {
            let rule = alg.system().rule(name);
            assert_eq!(rule.lhs, name.lhs());
            for out in rule.rhs.support() {
                assert!(measure(out) < measure(&rule.lhs), "{name}: {out}");
            }
        }
    }

    #[test]
    fn reduce_at_examples() {
        let alg = sym();
        let sys = alg.system();
        let ac = p(&alg, "A*C");
        assert_eq!(
            sys.reduce_at(&ac, &Word::empty(), RuleName::Beta, &Word::empty()),
            p(&alg, "m*C*A")
        );
        let a = p(&alg, "A");
        assert_eq!(
            sys.reduce_at(&a, &Word::empty(), RuleName::Beta, &Word::empty()),
            a
        );
        let acc = p(&alg, "A*C*C");
        let once = sys.reduce_at(&acc, &Word::empty(), RuleName::Beta, &w("C"));
        assert_eq!(once, p(&alg, "m*C*A*C"));
        // a reduction at a different place fixes the word
        assert_eq!(
            sys.reduce_at(&acc, &w("C"), RuleName::Beta, &Word::empty()),
            acc
        );
    }

    #[test]
    fn normal_form_examples() {
        let alg = sym();
        assert_eq!(
            alg.normal_form(&p(&alg, "A*B")),
            p(&alg, "(m*C - b*I)/(m-1)")
        );
        assert_eq!(
            alg.normal_form(&p(&alg, "B*C*A")),
            p(&alg, "C^2/(m*(m-1)) - b*C/(m*(m-1))")
        );
        assert_eq!(
            alg.normal_form(&p(&alg, "A*B*A*B")),
            p(&alg, "(m^2*C^2 - 2*m*b*C + b^2*I)/(m-1)^2")
        );
        assert_eq!(
            alg.normal_form(&p(&alg, "A*B")).to_string(),
            "(m/(m-1))*C - (b/(m-1))*I"
        );
    }

    /// Exhaustive oracle: explores every reduction order on a polynomial and
    /// collects the set of fixpoints reached.
    fn all_normal_forms(alg: &Algebra<RatFunc>, start: &NcPoly<RatFunc>) -> Vec<NcPoly<RatFunc>> {
        let mut out: Vec<NcPoly<RatFunc>> = Vec::new();
        let mut stack = vec![start.clone()];
        while let Some(cur) = stack.pop() {
            let mut reducible = false;
            for word in cur.support() {
                for redex in find_all_redexes(word) {
                    reducible = true;
                    let (l, r) = ReductionSystem::<RatFunc>::split(word, redex);
                    stack.push(alg.system().reduce_at(&cur, &l, redex.rule, &r));
                }
            }
            if !reducible && !out.contains(&cur) {
                out.push(cur);
            }
        }
        out
    }

    #[test]
    fn abab_all_orders_agree() {
        let alg = sym();
        let start = p(&alg, "A*B*A*B");
        let nfs = all_normal_forms(&alg, &start);
        assert_eq!(nfs.len(), 1);
        assert_eq!(nfs[0], p(&alg, "(m^2*C^2 - 2*m*b*C + b^2*I)/(m-1)^2"));
    }

    #[test]
    fn quotient_equality() {
        let alg = sym();
        assert!(alg.quotient_equal(&p(&alg, "A*B"), &p(&alg, "m*B*A + b*I")));
        assert!(!alg.quotient_equal(&p(&alg, "A"), &p(&alg, "B")));
        assert!(alg.quotient_equal(&p(&alg, "A*(B*C)"), &p(&alg, "(A*B)*C")));
        assert!(alg.quotient_equal(&p(&alg, "C"), &p(&alg, "[A,B]")));
    }

    #[test]
    fn traced_matches_cached() {
        let alg = sym();
        let x = p(&alg, "A*B*C*B*A + 2*C*A*B - B*B*A");
        let (nf, steps) = alg.normal_form_traced(&x);
        assert_eq!(nf, alg.normal_form(&x));
        let replay = steps
            .iter()
            .fold(x, |acc, s| alg.system().apply_step(&acc, s));
        assert_eq!(replay, nf);
    }

    #[test]
    fn concrete_mode_specializes() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let alg = Algebra::new(TwistParams::concrete(half.clone(), third.clone()).unwrap());
        let s = sym();
        let word = w("ABBACAB");
        let concrete = alg.normal_form_word(&word);
        let symbolic = s.normal_form_word(&word);
        let params = TwistParams::concrete(half, third).unwrap();
        let specialized = symbolic
            .try_map_coeffs(|c| crate::scalar::specialize(c, &params))
            .unwrap();
        assert_eq!(concrete, specialized);
        assert!(!concrete.coeff(&w("C")).is_one());
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max_len)
            .prop_map(Word::new)
    }

    fn poly_strategy() -> impl Strategy<Value = NcPoly<Rational>> {
        prop::collection::vec((word_strategy(6), -3i64..4), 0..4).prop_map(|ts| {
            NcPoly::from_terms(
                ts.into_iter()
                    .map(|(w, c)| (w, Rational::from_integer(c.into()))),
            )
        })
    }

    fn concrete() -> Algebra<Rational> {
        Algebra::new(
            TwistParams::concrete(
                Rational::from_integer(3.into()),
                Rational::from_integer((-2).into()),
            )
            .unwrap(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn normal_form_support_is_irreducible(x in poly_strategy()) {
            let alg = concrete();
            let nf = alg.normal_form(&x);
            prop_assert!(nf.support().all(is_irreducible));
            prop_assert_eq!(alg.normal_form(&nf), nf);
        }

        #[test]
        fn normal_form_is_multiplicative(x in poly_strategy(), y in poly_strategy()) {
            let alg = concrete();
            let lhs = alg.normal_form(&x.mul(&y));
            let rhs = alg.normal_form(&alg.normal_form(&x).mul(&alg.normal_form(&y)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn random_strategy_agrees(x in poly_strategy(), seed in any::<u64>()) {
            let alg = concrete();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(alg.normal_form_random(&x, &mut rng), alg.normal_form(&x));
        }

        #[test]
        fn steps_decrease_measure(word in word_strategy(9)) {
            let alg = concrete();
            for redex in find_all_redexes(&word) {
                let out = alg.system().rewrite_word(&word, redex);
                for w2 in out.support() {
                    prop_assert!(measure(w2) < measure(&word));
                }
            }
        }
    }
}
