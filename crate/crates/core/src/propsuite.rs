//! Verification runners producing a [`CheckReport`].
//!
//! Every check is an exact equality. A check whose printed form is refuted
//! while a corrected form holds is reported as [`Status::Misprint`] next to a
//! separate record for the corrected form; only [`Status::Fail`] counts as a
//! failure.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diamond;
use crate::freealg::{Letter, NcPoly, Word};
use crate::lie;
use crate::linalg::solve_combination;
use crate::rewrite::Algebra;
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A printed form is refuted; the corrected form has its own record.
    Misprint,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Misprint => "MISPRINT",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: String,
    pub status: Status,
    /// Present for `Fail` and `Misprint`.
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    fn new(name: impl Into<String>, params: impl Into<String>, failure: Option<String>) -> Self {
        let status = if failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Self {
            name: name.into(),
            params: params.into(),
            status,
            counterexample: failure,
            detail: None,
        }
    }

    /// Record for a printed form known to be suspect: a refutation is a
    /// `Misprint`, not a `Fail`.
    fn printed(
        name: impl Into<String>,
        params: impl Into<String>,
        failure: Option<String>,
    ) -> Self {
        let mut r = Self::new(name, params, failure);
        if r.status == Status::Fail {
            r.status = Status::Misprint;
        }
        r
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True when no record has status `Fail`.
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
    }

    fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }
}

/// `STATUS name [params]: counterexample (detail)`
impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}]", self.status, self.name, self.params)?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// One record per line.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn cw(k: u32) -> Word {
    Word::power(Letter::C, k as usize)
}

fn aw(l: u32) -> Word {
    Word::power(Letter::A, l as usize)
}

fn bw(l: u32) -> Word {
    Word::power(Letter::B, l as usize)
}

fn wp<F: Coeff>(w: Word) -> NcPoly<F> {
    NcPoly::from_word(w)
}

fn lt<F: Coeff>(l: Letter) -> NcPoly<F> {
    NcPoly::letter(l)
}

/// All tuples in `[1, n]^arity`.
fn tuples(arity: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

type Side<'a, F> = Box<dyn Fn(&[u32]) -> NcPoly<F> + 'a>;

struct Identity<'a, F> {
    name: &'static str,
    vars: &'static [&'static str],
    lhs: Side<'a, F>,
    rhs: Side<'a, F>,
}

impl<F: Coeff> Identity<'_, F> {
    fn params(&self, n: u32) -> String {
        format!("{} in 1..={n}", self.vars.join(","))
    }

    /// First exponent tuple where the two sides differ in the quotient.
    fn counterexample(&self, alg: &Algebra<F>, n: u32) -> Option<String> {
        tuples(self.vars.len(), n).into_iter().find_map(|t| {
            let l = alg.normal_form(&(self.lhs)(&t));
            let r = alg.normal_form(&(self.rhs)(&t));
            (l != r).then(|| {
                let at: Vec<String> = self
                    .vars
                    .iter()
                    .zip(&t)
                    .map(|(v, x)| format!("{v}={x}"))
                    .collect();
                format!("at {}: lhs = {l}, rhs = {r}", at.join(" "))
            })
        })
    }
}

fn id<'a, F>(
    name: &'static str,
    vars: &'static [&'static str],
    lhs: Side<'a, F>,
    rhs: Side<'a, F>,
) -> Identity<'a, F> {
    Identity {
        name,
        vars,
        lhs,
        rhs,
    }
}

fn bracket<F: Coeff>(x: Word, y: Word) -> NcPoly<F> {
    wp::<F>(x).bracket(&wp(y))
}

/// Reordering identities for all exponents in `[1, max_exp]`.
pub fn verify_reordering<F: Coeff>(alg: &Algebra<F>, max_exp: u32) -> CheckReport {
    let params = alg.params();
    let mp = |e: i64| params.m_power(e);
    let one = F::one;
    let b = params.b().clone();
    let m1inv = (params.m().clone() - F::one()).inv().expect("m != 1");
    let e = |x: u32| x as i64;

    let mixed_a_bc = |b_coeff: Box<dyn Fn(u32) -> F>| -> Side<'_, F> {
        let m1inv = m1inv.clone();
        let b = b.clone();
        Box::new(move |t: &[u32]| {
            let (x, y) = (t[0], t[1]);
            let c1 = (mp(e(y)) - mp(-e(x))) * m1inv.clone();
            NcPoly::from_terms([
                (bw(y - 1).concat(&cw(x + 1)), c1),
                (
                    bw(y - 1).concat(&cw(x)),
                    b_coeff(x) * m1inv.clone() * b.clone(),
                ),
            ])
        })
    };

    let plain: Vec<Identity<'_, F>> = vec![
        id(
            "A^l C^k = m^(kl) C^k A^l",
            &["k", "l"],
            Box::new(|t| wp(aw(t[1]).concat(&cw(t[0])))),
            Box::new(move |t| NcPoly::term(mp(e(t[0] * t[1])), cw(t[0]).concat(&aw(t[1])))),
        ),
        id(
            "C^k B^l = m^(kl) B^l C^k",
            &["k", "l"],
            Box::new(|t| wp(cw(t[0]).concat(&bw(t[1])))),
            Box::new(move |t| NcPoly::term(mp(e(t[0] * t[1])), bw(t[1]).concat(&cw(t[0])))),
        ),
        id(
            "[A, C^x] = (m^x-1) C^x A",
            &["x"],
            Box::new(|t| bracket(aw(1), cw(t[0]))),
            Box::new(move |t| NcPoly::term(mp(e(t[0])) - one(), cw(t[0]).concat(&aw(1)))),
        ),
        id(
            "[A, C^x A^y] = (m^x-1) C^x A^(y+1)",
            &["x", "y"],
            Box::new(|t| bracket(aw(1), cw(t[0]).concat(&aw(t[1])))),
            Box::new(move |t| NcPoly::term(mp(e(t[0])) - one(), cw(t[0]).concat(&aw(t[1] + 1)))),
        ),
        id(
            "[C^k, C^x A^y] = (1-m^(ky)) C^(k+x) A^y",
            &["k", "x", "y"],
            Box::new(|t| bracket(cw(t[0]), cw(t[1]).concat(&aw(t[2])))),
            Box::new(move |t| {
                NcPoly::term(
                    one() - mp(e(t[0] * t[2])),
                    cw(t[0] + t[1]).concat(&aw(t[2])),
                )
            }),
        ),
        id(
            "[C^k A^l, C^x A^y] = (m^(lx)-m^(ky)) C^(k+x) A^(l+y)",
            &["k", "l", "x", "y"],
            Box::new(|t| bracket(cw(t[0]).concat(&aw(t[1])), cw(t[2]).concat(&aw(t[3])))),
            Box::new(move |t| {
                NcPoly::term(
                    mp(e(t[1] * t[2])) - mp(e(t[0] * t[3])),
                    cw(t[0] + t[2]).concat(&aw(t[1] + t[3])),
                )
            }),
        ),
        id(
            "[B, C^x] = (1-m^x) B C^x",
            &["x"],
            Box::new(|t| bracket(bw(1), cw(t[0]))),
            Box::new(move |t| NcPoly::term(one() - mp(e(t[0])), bw(1).concat(&cw(t[0])))),
        ),
        id(
            "[B, B^y C^x] = (1-m^x) B^(y+1) C^x",
            &["x", "y"],
            Box::new(|t| bracket(bw(1), bw(t[1]).concat(&cw(t[0])))),
            Box::new(move |t| NcPoly::term(one() - mp(e(t[0])), bw(t[1] + 1).concat(&cw(t[0])))),
        ),
        id(
            "[B^l C^k, B^y C^x] = (m^(ky)-m^(lx)) B^(l+y) C^(k+x)",
            &["k", "l", "x", "y"],
            Box::new(|t| bracket(bw(t[1]).concat(&cw(t[0])), bw(t[3]).concat(&cw(t[2])))),
            Box::new(move |t| {
                NcPoly::term(
                    mp(e(t[0] * t[3])) - mp(e(t[1] * t[2])),
                    bw(t[1] + t[3]).concat(&cw(t[0] + t[2])),
                )
            }),
        ),
        id(
            "[B, C^x A^y] = (m^-x-m^y)/(m-1) C^(x+1) A^(y-1) + (1-m^-x)/(m-1) b C^x A^(y-1)",
            &["x", "y"],
            Box::new(|t| bracket(bw(1), cw(t[0]).concat(&aw(t[1])))),
            Box::new({
                let (m1inv, b) = (m1inv.clone(), b.clone());
                move |t| {
                    let (x, y) = (t[0], t[1]);
                    NcPoly::from_terms([
                        (
                            cw(x + 1).concat(&aw(y - 1)),
                            (mp(-e(x)) - mp(e(y))) * m1inv.clone(),
                        ),
                        (
                            cw(x).concat(&aw(y - 1)),
                            (one() - mp(-e(x))) * m1inv.clone() * b.clone(),
                        ),
                    ])
                }
            }),
        ),
    ];

    // (printed, corrected) pairs
    let pairs: Vec<(Identity<'_, F>, Identity<'_, F>)> = vec![
        (
            id("[C^k, B^y C^x] = (m^(xy)-1) B^y C^(k+x) (printed form)", &["k", "x", "y"],
                Box::new(|t| bracket(cw(t[0]), bw(t[2]).concat(&cw(t[1])))),
                Box::new(move |t| NcPoly::term(mp(e(t[1] * t[2])) - one(), bw(t[2]).concat(&cw(t[0] + t[1]))))),
            id("[C^k, B^y C^x] = (m^(ky)-1) B^y C^(k+x)", &["k", "x", "y"],
                Box::new(|t| bracket(cw(t[0]), bw(t[2]).concat(&cw(t[1])))),
                Box::new(move |t| NcPoly::term(mp(e(t[0] * t[2])) - one(), bw(t[2]).concat(&cw(t[0] + t[1]))))),
        ),
        (
            id("[A, B^y C^x] = (m^y-m^-x)/(m-1) B^(y-1) C^(x+1) + (m^-x-m)/(m-1) b B^(y-1) C^x (printed form)",
                &["x", "y"],
                Box::new(|t| bracket(aw(1), bw(t[1]).concat(&cw(t[0])))),
                mixed_a_bc(Box::new(move |x| mp(-e(x)) - mp(1)))),
            id("[A, B^y C^x] = (m^y-m^-x)/(m-1) B^(y-1) C^(x+1) + (m^-x-1)/(m-1) b B^(y-1) C^x",
                &["x", "y"],
                Box::new(|t| bracket(aw(1), bw(t[1]).concat(&cw(t[0])))),
                mixed_a_bc(Box::new(move |x| mp(-e(x)) - mp(0)))),
        ),
    ];

    let mut report = CheckReport::default();
    for ident in &plain {
        report.push(CheckRecord::new(
            ident.name,
            ident.params(max_exp),
            ident.counterexample(alg, max_exp),
        ));
    }
    for (printed, corrected) in &pairs {
        report.push(CheckRecord::printed(
            printed.name,
            printed.params(max_exp),
            printed.counterexample(alg, max_exp),
        ));
        report.push(CheckRecord::new(
            corrected.name,
            corrected.params(max_exp),
            corrected.counterexample(alg, max_exp),
        ));
    }
    report
}

fn product<F: Coeff>(factors: impl Iterator<Item = NcPoly<F>>) -> NcPoly<F> {
    factors.fold(NcPoly::one(), |acc, f| acc.mul(&f))
}

/// Shape check: NF is `(-1)^n b^n I` plus terms in positive powers of `C`.
fn shape_failure<F: Coeff>(nf: &NcPoly<F>, n: u32, b: &F) -> Option<String> {
    let expect_i = if n.is_multiple_of(2) {
        b.pow(n)
    } else {
        -b.pow(n)
    };
    if nf.coeff(&Word::empty()) != expect_i {
        return Some(format!(
            "n={n}: coefficient of I is {}, expected {expect_i}",
            nf.coeff(&Word::empty())
        ));
    }
    nf.support()
        .find(|w| !w.is_empty() && !w.letters().iter().all(|&l| l == Letter::C))
        .map(|w| format!("n={n}: word {w} is not a power of C"))
}

/// Products `A^n B^n`, `B^n A^n` for `n <= n_max`.
pub fn verify_equalexp<F: Coeff>(alg: &Algebra<F>, n_max: u32) -> CheckReport {
    let params = alg.params();
    let b = params.b().clone();
    let m1 = params.m().clone() - F::one();
    let c = lt::<F>(Letter::C);
    let lin = |coeff: F| {
        let mut p = c.scale(&coeff);
        p.add_term(Word::empty(), -b.clone());
        p
    };
    let range = format!("n in 1..={n_max}");
    let mut report = CheckReport::default();
    for (name, first, second) in [
        ("A^n B^n", Letter::A, Letter::B),
        ("B^n A^n", Letter::B, Letter::A),
    ] {
        let mut prod_fail = None;
        let mut shape_fail = None;
        for n in 1..=n_max {
            let lhs =
                wp::<F>(Word::power(first, n as usize).concat(&Word::power(second, n as usize)))
                    .scale(&m1.pow(n));
            let nf = alg.normal_form(&lhs);
            let rhs = if first == Letter::A {
                product((1..=n).map(|i| lin(params.m_power(i as i64))))
            } else {
                product((0..n).map(|i| lin(params.m_power(-(i as i64)))))
            };
            let rhs = alg.normal_form(&rhs);
            if prod_fail.is_none() && nf != rhs {
                prod_fail = Some(format!("n={n}: lhs = {nf}, rhs = {rhs}"));
            }
            if shape_fail.is_none() {
                shape_fail = shape_failure(&nf, n, &b);
            }
        }
        let prod_name = if first == Letter::A {
            "(m-1)^n A^n B^n = prod_{i=1..n} (m^i C - b I)"
        } else {
            "(m-1)^n B^n A^n = prod_{i=0..n-1} (m^-i C - b I)"
        };
        report.push(CheckRecord::new(prod_name, range.clone(), prod_fail));
        report.push(CheckRecord::new(
            format!("(m-1)^n {name} = (-1)^n b^n I + C f(C)"),
            range.clone(),
            shape_fail,
        ));
    }
    report
}

/// Powers of `ad C`, `ad A`, `ad B` and the recursion for `C^(k+1)`.
pub fn verify_ad_powers<F: Coeff>(alg: &Algebra<F>, k_max: u32, l_max: u32) -> CheckReport {
    let params = alg.params();
    let one = F::one();
    let m = params.m().clone();
    let b = params.b().clone();
    let (a, bb, c) = (lt::<F>(Letter::A), lt::<F>(Letter::B), lt::<F>(Letter::C));
    let mut report = CheckReport::default();

    let ad_c = (0..=k_max).find_map(|k| {
        let lhs = lie::ad_power(alg, &c, k, &a);
        let rhs = NcPoly::term((one.clone() - m.clone()).pow(k), cw(k).concat(&aw(1)));
        (lhs != rhs).then(|| format!("k={k}: lhs = {lhs}, rhs = {rhs}"))
    });
    report.push(CheckRecord::new(
        "(ad C)^k (A) = (1-m)^k C^k A",
        format!("k in 0..={k_max}"),
        ad_c,
    ));

    let power_c = (1..=k_max).find_map(|k| {
        let mk = params.m_power(k as i64);
        let lhs = NcPoly::term(one.clone() - params.m_power(k as i64 + 1), cw(k + 1));
        let top = alg.bracket(&bb, &lie::ad_power(alg, &c, k, &a));
        let mut rhs = NcPoly::term((one.clone() - mk.clone()) * b.clone(), cw(k));
        let factor = mk * (one.clone() - m.clone()).pow(k - 1).inv().expect("m != 1");
        rhs.add_scaled(&top, &-factor);
        let (lhs, rhs) = (alg.normal_form(&lhs), alg.normal_form(&rhs));
        (lhs != rhs).then(|| format!("k={k}: lhs = {lhs}, rhs = {rhs}"))
    });
    report.push(CheckRecord::new(
        "(1-m^(k+1)) C^(k+1) = (1-m^k) b C^k - m^k (ad B)(ad C)^k (A) / (1-m)^(k-1)",
        format!("k in 1..={k_max}"),
        power_c,
    ));

    let grid = format!("k in 1..={k_max}, l in 1..={l_max}");
    for (name, x, is_a) in [
        ("(ad A)^l (C^k) = (m^k-1)^l C^k A^l", &a, true),
        ("(ad B)^l (C^k) = (1-m^k)^l B^l C^k", &bb, false),
    ] {
        let fail = (1..=k_max)
            .flat_map(|k| (1..=l_max).map(move |l| (k, l)))
            .find_map(|(k, l)| {
                let lhs = lie::ad_power(alg, x, l, &wp(cw(k)));
                let mk = params.m_power(k as i64);
                let rhs = if is_a {
                    NcPoly::term((mk - one.clone()).pow(l), cw(k).concat(&aw(l)))
                } else {
                    NcPoly::term((one.clone() - mk).pow(l), bw(l).concat(&cw(k)))
                };
                (lhs != rhs).then(|| format!("k={k} l={l}: lhs = {lhs}, rhs = {rhs}"))
            });
        report.push(CheckRecord::new(name, grid.clone(), fail));
    }
    report
}

/// Ideal generators in the free algebra on `A`, `B`, `C`.
#[derive(Clone, Debug)]
pub struct PresentationIdentity<F> {
    pub name: String,
    pub value: NcPoly<F>,
}

/// `zeta1`, `zeta2` (defining relations) and `xi1..xi4` (the rules as
/// differences `lhs - rhs`).
pub fn presentation_generators<F: Coeff>(
    alg: &Algebra<F>,
) -> (Vec<PresentationIdentity<F>>, Vec<PresentationIdentity<F>>) {
    let params = alg.params();
    let (a, b, c) = (lt::<F>(Letter::A), lt::<F>(Letter::B), lt::<F>(Letter::C));
    let ab = a.mul(&b);
    let ba = b.mul(&a);
    let mut zeta1 = &ab - &ba.scale(params.m());
    zeta1.add_term(Word::empty(), -params.b().clone());
    let zeta2 = &(&c - &ab) + &ba;
    let zetas = vec![
        PresentationIdentity {
            name: "zeta1".into(),
            value: zeta1,
        },
        PresentationIdentity {
            name: "zeta2".into(),
            value: zeta2,
        },
    ];
    use crate::rewrite::RuleName::*;
    let xis = [Alpha, Beta, Gamma, Delta]
        .into_iter()
        .enumerate()
        .map(|(i, r)| PresentationIdentity {
            name: format!("xi{}", i + 1),
            value: &wp(r.lhs()) - &alg.system().rhs(r),
        })
        .collect();
    (zetas, xis)
}

/// `xi5(k) = B C^k A - (C^(k+1) - b C^k) / (m^k (m-1))`.
pub fn xi5<F: Coeff>(alg: &Algebra<F>, k: u32) -> NcPoly<F> {
    let r = crate::rewrite::RuleName::Epsilon(k);
    &wp(r.lhs()) - &alg.system().rhs(r)
}

fn render_combo<F: Coeff>(labels: &[String], coeffs: &[F]) -> String {
    let parts: Vec<String> = labels
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| format!("({c})*{l}"))
        .collect();
    parts.join(" + ")
}

/// Solves `target = sum c_(u,g,v) u g v` over `u, v` in `{I, A, B, C}` and
/// `g` in `gens`.
fn two_sided_combination<F: Coeff>(
    gens: &[PresentationIdentity<F>],
    target: &NcPoly<F>,
) -> Option<String> {
    let mults: Vec<Word> = ["", "A", "B", "C"]
        .iter()
        .map(|s| Word::from_letters(s).expect("word"))
        .collect();
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for g in gens {
        for u in &mults {
            for v in &mults {
                cols.push(g.value.sandwich(u, v));
                labels.push(format!("{u}.{}.{v}", g.name));
            }
        }
    }
    solve_combination(&cols, target).map(|c| render_combo(&labels, &c))
}

fn free_eq_failure<F: Coeff>(lhs: &NcPoly<F>, rhs: &NcPoly<F>) -> Option<String> {
    (lhs != rhs).then(|| format!("difference = {}", lhs - rhs))
}

/// Equality of the ideals generated by `{zeta1, zeta2}` and by the rules,
/// checked by expansion in the free algebra only.
pub fn verify_presentation_ideals<F: Coeff>(alg: &Algebra<F>, xi5_max_k: u32) -> CheckReport {
    let params = alg.params();
    let m = params.m().clone();
    let one = F::one();
    let (zetas, xis) = presentation_generators(alg);
    let (z1, z2) = (&zetas[0].value, &zetas[1].value);
    let (x1, x2, x3, x4) = (&xis[0].value, &xis[1].value, &xis[2].value, &xis[3].value);
    let a = lt::<F>(Letter::A);
    let b = lt::<F>(Letter::B);
    let c = lt::<F>(Letter::C);
    let inv_1m = (one.clone() - m.clone()).inv().expect("m != 1");
    let mut report = CheckReport::default();

    for target in &zetas {
        let combo = two_sided_combination(&xis, &target.value);
        let rec = CheckRecord::new(
            format!("{} in ideal(xi1..xi4)", target.name),
            "multipliers I,A,B,C",
            combo
                .is_none()
                .then(|| "no two-sided combination found".to_string()),
        );
        report.push(match combo {
            Some(s) => rec.with_detail(s),
            None => rec,
        });
    }
    for target in &xis {
        let combo = two_sided_combination(&zetas, &target.value);
        let rec = CheckRecord::new(
            format!("{} in ideal(zeta1, zeta2)", target.name),
            "multipliers I,A,B,C",
            combo
                .is_none()
                .then(|| "no two-sided combination found".to_string()),
        );
        report.push(match combo {
            Some(s) => rec.with_detail(s),
            None => rec,
        });
    }

    let none = "free algebra";
    report.push(CheckRecord::printed(
        "zeta1 = xi1 - m xi2 (printed form)",
        none,
        free_eq_failure(z1, &(x1 - &x2.scale(&m))),
    ));
    report.push(CheckRecord::new(
        "zeta1 = xi1 - m xi3",
        none,
        free_eq_failure(z1, &(x1 - &x3.scale(&m))),
    ));
    report.push(CheckRecord::printed(
        "zeta2 = -xi1 + xi2 (printed form)",
        none,
        free_eq_failure(z2, &(x2 - x1)),
    ));
    report.push(CheckRecord::new(
        "zeta2 = -xi1 + xi3",
        none,
        free_eq_failure(z2, &(x3 - x1)),
    ));
    report.push(CheckRecord::new(
        "xi1 = (zeta1 + m zeta2)/(1-m)",
        none,
        free_eq_failure(x1, &(z1 + &z2.scale(&m)).scale(&inv_1m)),
    ));
    let a_z1 = &a.bracket(z1) + &a.mul(z1);
    report.push(CheckRecord::printed(
        "xi2 = [A,zeta1] + A zeta1 - m zeta2 A (printed form)",
        none,
        free_eq_failure(x2, &(&a_z1 - &z2.mul(&a).scale(&m))),
    ));
    let corrected = &(&a.bracket(z1) + &a.mul(z2)) - &z2.mul(&a).scale(&m);
    report.push(CheckRecord::new(
        "xi2 = [A,zeta1] + A zeta2 - m zeta2 A",
        none,
        free_eq_failure(x2, &corrected),
    ));
    report.push(CheckRecord::new(
        "xi3 = (zeta1 + zeta2)/(1-m)",
        none,
        free_eq_failure(x3, &(z1 + z2).scale(&inv_1m)),
    ));
    let rhs = &(&z1.bracket(&b) + &z2.mul(&b)) - &b.mul(z2).scale(&m);
    report.push(CheckRecord::new(
        "xi4 = [zeta1,B] + zeta2 B - m B zeta2",
        none,
        free_eq_failure(x4, &rhs),
    ));

    let ks = format!("k in 1..={xi5_max_k}");
    let sum_part = |k: u32| {
        let mut s = NcPoly::zero();
        for i in 1..=k {
            let term = x4.sandwich(&cw(k - i), &cw(i - 1).concat(&aw(1)));
            s.add_scaled(&term, &params.m_power(i as i64 - 1 - k as i64));
        }
        s
    };
    let closed = |k: u32, with_ck: bool| {
        let lead = if with_ck {
            x3.sandwich(&cw(k), &Word::empty())
        } else {
            x3.clone()
        };
        &lead.scale(&params.m_power(-(k as i64))) - &sum_part(k)
    };
    let printed_fail = (1..=xi5_max_k).find_map(|k| {
        free_eq_failure(&xi5(alg, k), &closed(k, false)).map(|d| format!("k={k}: {d}"))
    });
    report.push(CheckRecord::printed(
        "xi5(k) = m^-k xi3 - sum_{i=1..k} m^(i-1-k) C^(k-i) xi4 C^(i-1) A (printed form)",
        ks.clone(),
        printed_fail,
    ));
    let corrected_fail = (1..=xi5_max_k).find_map(|k| {
        free_eq_failure(&xi5(alg, k), &closed(k, true)).map(|d| format!("k={k}: {d}"))
    });
    report.push(CheckRecord::new(
        "xi5(k) = m^-k C^k xi3 - sum_{i=1..k} m^(i-1-k) C^(k-i) xi4 C^(i-1) A",
        ks.clone(),
        corrected_fail,
    ));
    let minv = params.m_power(-1);
    let mut prev = x3.clone();
    let mut recursion_fail = None;
    for k in 1..=xi5_max_k {
        let step = &c.mul(&prev) - &x4.sandwich(&Word::empty(), &cw(k - 1).concat(&aw(1)));
        let step = step.scale(&minv);
        let actual = xi5(alg, k);
        if recursion_fail.is_none() {
            recursion_fail = free_eq_failure(&actual, &step).map(|d| format!("k={k}: {d}"));
        }
        prev = actual;
    }
    report.push(CheckRecord::new(
        "xi5(k) = m^-1 C xi5(k-1) - m^-1 xi4 C^(k-1) A, xi5(0) = xi3",
        ks,
        recursion_fail,
    ));
    report
}

/// Ambiguity enumeration, resolution and the tabulated resolutions.
pub fn verify_ambiguities<F: Coeff>(alg: &Algebra<F>, max_k: u32, table_k: u32) -> CheckReport {
    let mut report = CheckReport::default();
    let brute = diamond::enumerate_ambiguities(max_k);
    let closed = diamond::closed_form_ambiguities(max_k);
    let missing = closed
        .iter()
        .find(|a| !brute.contains(a))
        .map(|a| format!("{} not found", a.id()));
    let extra = brute
        .iter()
        .find(|a| !closed.contains(a))
        .map(|a| format!("unexpected {}", a.id()));
    let count = (brute.len() != closed.len())
        .then(|| format!("{} found, {} expected", brute.len(), closed.len()));
    report.push(CheckRecord::new(
        "overlap ambiguities = Phi1..Phi9 families",
        format!("k in 1..={max_k}"),
        missing.or(extra).or(count),
    ));
    let incl = diamond::enumerate_inclusions(max_k);
    report.push(CheckRecord::new(
        "no inclusion ambiguities",
        format!("k in 1..={max_k}"),
        incl.first()
            .map(|a| format!("{} ({} in {})", a.id(), a.mu, a.nu)),
    ));
    for index in 1..=9u8 {
        let ks: Vec<u32> = if index <= 5 {
            vec![0]
        } else {
            (1..=max_k).collect()
        };
        let fail = ks.iter().find_map(|&k| {
            diamond::resolve(alg, &diamond::family_member(index, k))
                .err()
                .map(|e| e.to_string())
        });
        let params = if index <= 5 {
            "-".to_string()
        } else {
            format!("k in 1..={max_k}")
        };
        report.push(CheckRecord::new(
            format!("Phi{index} resolves"),
            params,
            fail,
        ));
    }
    let rows = diamond::verify_resolution_table(alg, table_k);
    let bad = rows
        .iter()
        .find(|r| !r.matches || !r.agrees_with_resolve)
        .map(|r| {
            format!(
                "{}: lambda = [{}] gives {}, rho = [{}] gives {}",
                r.family,
                r.lambda.join(", "),
                r.lhs_value,
                r.rho.join(", "),
                r.rhs_value
            )
        });
    report.push(CheckRecord::new(
        "tabulated resolutions (lambda_i, rho_i)",
        format!("k in 1..={table_k}"),
        bad,
    ));
    report
}

/// A random element: up to three words of length at most `max_len` with
/// small nonzero integer coefficients.
pub fn random_poly<F: Coeff, R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> NcPoly<F> {
    let terms = rng.gen_range(1..=3);
    NcPoly::from_terms((0..terms).map(|_| {
        let len = rng.gen_range(0..=max_len);
        let w = Word::new((0..len).map(|_| Letter::ALL[rng.gen_range(0..3)]).collect());
        let mut c = rng.gen_range(-5i64..=4);
        if c >= 0 {
            c += 1;
        }
        (w, F::from_int(c))
    }))
}

/// Leftmost vs random redex choice on `trials` random elements.
pub fn verify_confluence<F: Coeff>(
    alg: &Algebra<F>,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fail = None;
    for t in 0..trials {
        let p: NcPoly<F> = random_poly(&mut rng, max_len);
        let left = alg.normal_form(&p);
        let random = alg.normal_form_random(&p, &mut rng);
        if left != random {
            fail = Some(format!(
                "trial {t}: {p} gives {left} (leftmost) vs {random} (random)"
            ));
            break;
        }
    }
    let mut report = CheckReport::default();
    report.push(CheckRecord::new(
        "leftmost and random redex choice agree",
        format!("{trials} trials, length <= {max_len}, seed {seed}"),
        fail,
    ));
    report
}

pub fn verify_closure<F: Coeff>(alg: &Algebra<F>, max_deg: usize) -> CheckReport {
    let mut report = CheckReport::default();
    let params = format!("D = {max_deg}");
    let rec = match lie::lie_closure(alg, max_deg) {
        Ok(r) if r.spans_equal => CheckRecord::new(
            "bracket closure of {A,B} = predicted Lie basis",
            params,
            None,
        )
        .with_detail(format!("dimension {}", r.computed_basis.len())),
        Ok(r) => CheckRecord::new(
            "bracket closure of {A,B} = predicted Lie basis",
            params,
            Some(format!(
                "computed dimension {}, predicted {}",
                r.computed_basis.len(),
                r.predicted_basis.len()
            )),
        ),
        Err(e) => CheckRecord::new(
            "bracket closure of {A,B} = predicted Lie basis",
            params,
            Some(e.to_string()),
        ),
    };
    report.push(rec);
    report
}

/// Which checks [`run_all`] performs; `None` disables a group.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub max_exp: Option<u32>,
    pub equalexp_n: Option<u32>,
    pub ad_powers: Option<(u32, u32)>,
    pub xi5_max_k: Option<u32>,
    pub max_k: Option<u32>,
    pub table_k: Option<u32>,
    pub trials: Option<usize>,
    pub trial_max_len: usize,
    pub closure_deg: Option<usize>,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            max_exp: Some(6),
            equalexp_n: Some(8),
            ad_powers: Some((6, 6)),
            xi5_max_k: Some(10),
            max_k: Some(20),
            table_k: Some(20),
            trials: Some(1000),
            trial_max_len: 10,
            closure_deg: Some(6),
            seed: 0,
        }
    }
}

impl CheckConfig {
    /// Runs nothing.
    pub fn empty() -> Self {
        Self {
            max_exp: None,
            equalexp_n: None,
            ad_powers: None,
            xi5_max_k: None,
            max_k: None,
            table_k: None,
            trials: None,
            trial_max_len: 10,
            closure_deg: None,
            seed: 0,
        }
    }
}

/// Runs every enabled check group in a fixed order. The closure check is
/// skipped when `m` may be a root of unity.
pub fn run_all<F: Coeff>(alg: &Algebra<F>, config: &CheckConfig) -> CheckReport {
    let mut report = CheckReport::default();
    if let Some(k) = config.max_k {
        report.extend(verify_ambiguities(
            alg,
            k,
            config.table_k.unwrap_or(0).min(k),
        ));
    } else if let Some(t) = config.table_k {
        report.extend(verify_ambiguities(alg, t, t));
    }
    if let Some(n) = config.trials {
        report.extend(verify_confluence(alg, n, config.trial_max_len, config.seed));
    }
    if let Some(e) = config.max_exp {
        report.extend(verify_reordering(alg, e));
    }
    if let Some(n) = config.equalexp_n {
        report.extend(verify_equalexp(alg, n));
    }
    if let Some((k, l)) = config.ad_powers {
        report.extend(verify_ad_powers(alg, k, l));
    }
    if let Some(k) = config.xi5_max_k {
        report.extend(verify_presentation_ideals(alg, k));
    }
    if let Some(d) = config.closure_deg {
        if alg.params().lie_ok() {
            report.extend(verify_closure(alg, d));
        }
    }
    report
}
