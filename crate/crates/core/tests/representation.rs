//! Oracle independent of the rewriting engine: the Fock-type representation
//!
//! ```text
//! B e_n = e_(n+1),   A e_n = b [n] e_(n-1),   C e_n = b m^n e_n,
//! [n] = 1 + m + ... + m^(n-1)
//! ```
//!
//! satisfies `AB - mBA = bI` and `C = AB - BA`, so an element and its normal
//! form act identically, and a quotient identity must hold on every `e_n`.

use std::collections::BTreeMap;

use lintwist::{parse, Algebra, Letter, NcPoly, Rational, TwistParams, Word};
use num_traits::{One, Zero};
use proptest::prelude::*;

type Vector = BTreeMap<usize, Rational>;

struct Fock {
    m: Rational,
    b: Rational,
}

impl Fock {
    fn bracket_n(&self, n: usize) -> Rational {
        let mut acc = Rational::zero();
        let mut p = Rational::one();
        for _ in 0..n {
            acc += &p;
            p *= &self.m;
        }
        acc
    }

    fn m_pow(&self, n: usize) -> Rational {
        (0..n).fold(Rational::one(), |acc, _| acc * &self.m)
    }

    fn letter(&self, l: Letter, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&n, c) in v {
            let (target, factor) = match l {
                Letter::B => (n + 1, Rational::one()),
                Letter::A if n == 0 => continue,
                Letter::A => (n - 1, &self.b * self.bracket_n(n)),
                Letter::C => (n, &self.b * self.m_pow(n)),
            };
            let e = out.entry(target).or_insert_with(Rational::zero);
            *e += c * factor;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn word(&self, w: &Word, v: &Vector) -> Vector {
        w.letters()
            .iter()
            .rev()
            .fold(v.clone(), |acc, &l| self.letter(l, &acc))
    }

    fn poly(&self, p: &NcPoly<Rational>, n: usize) -> Vector {
        let basis: Vector = [(n, Rational::one())].into();
        let mut out = Vector::new();
        for (w, c) in p.terms() {
            for (k, v) in self.word(w, &basis) {
                *out.entry(k).or_insert_with(Rational::zero) += v * c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn agrees(&self, x: &NcPoly<Rational>, y: &NcPoly<Rational>) -> bool {
        (0..5).all(|n| self.poly(x, n) == self.poly(y, n))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn points() -> Vec<(Rational, Rational)> {
    vec![
        (q(2, 1), q(1, 1)),
        (q(3, 1), q(-2, 1)),
        (q(1, 2), q(1, 3)),
        (q(-3, 2), q(5, 1)),
    ]
}

#[test]
fn representation_satisfies_relations() {
    for (m, b) in points() {
        let f = Fock {
            m: m.clone(),
            b: b.clone(),
        };
        let params = TwistParams::concrete(m, b).unwrap();
        let p = |s: &str| parse(s, &params).unwrap();
        assert!(f.agrees(&p("A*B"), &p("m*B*A + b*I")));
        assert!(f.agrees(&p("C"), &p("A*B - B*A")));
    }
}

#[test]
fn printed_bracket_a_bc_is_refuted_by_the_representation() {
    // m = 2, b = 1, x = y = 1: [A, BC] e_0 = e_0, while the printed right-hand
    // side (3/2) C^2 - (3/2) C gives 0
    let f = Fock {
        m: q(2, 1),
        b: q(1, 1),
    };
    let params = TwistParams::concrete(q(2, 1), q(1, 1)).unwrap();
    let p = |s: &str| parse(s, &params).unwrap();
    let lhs = p("[A, B*C]");
    let printed = p("((m - m^-1)/(m-1))*C^2 + ((m^-1 - m)/(m-1))*b*C");
    let corrected = p("((m - m^-1)/(m-1))*C^2 + ((m^-1 - 1)/(m-1))*b*C");
    assert_eq!(f.poly(&lhs, 0), [(0, q(1, 1))].into());
    assert!(f.poly(&printed, 0).is_empty());
    assert!(f.agrees(&lhs, &corrected));
}

#[test]
fn corrected_bracket_c_bc_matches_the_representation() {
    let f = Fock {
        m: q(3, 1),
        b: q(-2, 1),
    };
    let params = TwistParams::concrete(q(3, 1), q(-2, 1)).unwrap();
    let p = |s: &str| parse(s, &params).unwrap();
    // k = 1, x = 2, y = 1
    let lhs = p("[C, B*C^2]");
    assert!(f.agrees(&lhs, &p("(m - 1)*B*C^3")));
    assert!(!f.agrees(&lhs, &p("(m^2 - 1)*B*C^3")));
}

#[test]
fn reordering_table_holds_in_the_representation() {
    for (m, b) in points() {
        let f = Fock {
            m: m.clone(),
            b: b.clone(),
        };
        let params = TwistParams::concrete(m, b).unwrap();
        let p = |s: &str| parse(s, &params).unwrap();
        for x in 1..=3 {
            for y in 1..=3 {
                let lhs = p(&format!("[A, B^{y}*C^{x}]"));
                let rhs = p(&format!(
                    "((m^{y} - m^-{x})/(m-1))*B^{}*C^{} + ((m^-{x} - 1)/(m-1))*b*B^{}*C^{x}",
                    y - 1,
                    x + 1,
                    y - 1
                ));
                assert!(f.agrees(&lhs, &rhs), "x={x} y={y}");
                let lhs = p(&format!("[B, C^{x}*A^{y}]"));
                let rhs = p(&format!(
                    "((m^-{x} - m^{y})/(m-1))*C^{}*A^{} + ((1 - m^-{x})/(m-1))*b*C^{x}*A^{}",
                    x + 1,
                    y - 1,
                    y - 1
                ));
                assert!(f.agrees(&lhs, &rhs), "x={x} y={y}");
            }
        }
    }
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=8).prop_map(Word::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normal_form_acts_like_the_word(w in word(), point in 0usize..4) {
        let (m, b) = points()[point].clone();
        let f = Fock { m: m.clone(), b: b.clone() };
        let alg = Algebra::new(TwistParams::concrete(m, b).unwrap());
        let original = NcPoly::from_word(w.clone());
        prop_assert!(f.agrees(&original, &alg.normal_form_word(&w)));
    }
}
