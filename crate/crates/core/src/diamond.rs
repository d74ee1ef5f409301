//! Ambiguities of the reduction system and their resolution.
//!
//! Overlaps `W_mu = L X`, `W_nu = X R` with `L`, `X`, `R` nonempty are
//! enumerated by brute force and matched against the closed-form families
//! `Phi1..Phi5`, `Phi6(k)..Phi9(k)`. Resolvability is certified by normal-form
//! equality; the explicit per-row resolutions `(lambda_i, rho_i)` are replayed
//! separately by [`verify_resolution_table`].

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::freealg::{Letter, NcPoly, Word};
use crate::rewrite::{Algebra, ReductionSystem, RuleName, Step};
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// Overlap: `W_mu = L X`, `W_nu = X R`. Inclusion: `W_mu = X`, `W_nu = L X R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub mu: RuleName,
    pub nu: RuleName,
    pub left: Word,
    pub overlap: Word,
    pub right: Word,
}

/// Name of a closed-form ambiguity family: `Phi1..Phi5` have no parameter,
/// `Phi6..Phi9` carry `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FamilyId {
    pub index: u8,
    pub k: Option<u32>,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "Phi{}({k})", self.index),
            None => write!(f, "Phi{}", self.index),
        }
    }
}

fn w(s: &str) -> Word {
    Word::from_letters(s).expect("literal word")
}

fn c_pow(k: u32) -> Word {
    Word::power(Letter::C, k as usize)
}

impl Ambiguity {
    fn overlap(mu: RuleName, nu: RuleName, left: Word, overlap: Word, right: Word) -> Self {
        Self {
            kind: AmbiguityKind::Overlap,
            mu,
            nu,
            left,
            overlap,
            right,
        }
    }

    /// The word `L X R` on which both rules act.
    pub fn word(&self) -> Word {
        self.overlap.sandwich(&self.left, &self.right)
    }

    /// `f_mu R` for overlaps, `L f_mu R` for inclusions.
    pub fn lhs_start<F: Coeff>(&self, sys: &ReductionSystem<F>) -> NcPoly<F> {
        match self.kind {
            AmbiguityKind::Overlap => sys.rhs(self.mu).sandwich(&Word::empty(), &self.right),
            AmbiguityKind::Inclusion => sys.rhs(self.mu).sandwich(&self.left, &self.right),
        }
    }

    /// `L f_nu` for overlaps, `f_nu` for inclusions.
    pub fn rhs_start<F: Coeff>(&self, sys: &ReductionSystem<F>) -> NcPoly<F> {
        match self.kind {
            AmbiguityKind::Overlap => sys.rhs(self.nu).sandwich(&self.left, &Word::empty()),
            AmbiguityKind::Inclusion => sys.rhs(self.nu),
        }
    }

    /// The closed-form family this ambiguity belongs to, if any.
    pub fn family(&self) -> Option<FamilyId> {
        closed_form_family(self)
    }

    pub fn id(&self) -> String {
        match self.family() {
            Some(f) => f.to_string(),
            None => format!(
                "({},{},{},{},{})",
                self.mu, self.nu, self.left, self.overlap, self.right
            ),
        }
    }
}

/// `Phi_index` (with `k` for indices 6..=9) as a tuple.
pub fn family_member(index: u8, k: u32) -> Ambiguity {
    use RuleName::*;
    let ck = c_pow(k);
    let cka = ck.concat(&w("A"));
    let bck = w("B").concat(&ck);
    let o = Ambiguity::overlap;
    match index {
        1 => o(Alpha, Gamma, w("A"), w("B"), w("A")),
        2 => o(Beta, Delta, w("A"), w("C"), w("B")),
        3 => o(Gamma, Alpha, w("B"), w("A"), w("B")),
        4 => o(Gamma, Beta, w("B"), w("A"), w("C")),
        5 => o(Delta, Gamma, w("C"), w("B"), w("A")),
        6 => o(Alpha, Epsilon(k), w("A"), w("B"), cka),
        7 => o(Delta, Epsilon(k), w("C"), w("B"), cka),
        8 => o(Epsilon(k), Alpha, bck, w("A"), w("B")),
        9 => o(Epsilon(k), Beta, bck, w("A"), w("C")),
        _ => panic!("no ambiguity family {index}"),
    }
}

/// `Phi1..Phi5` followed by `Phi6(k)..Phi9(k)` for `k = 1..=max_k`.
pub fn closed_form_ambiguities(max_k: u32) -> Vec<Ambiguity> {
    let mut out: Vec<Ambiguity> = (1..=5).map(|i| family_member(i, 0)).collect();
    for k in 1..=max_k {
        out.extend((6..=9).map(|i| family_member(i, k)));
    }
    out
}

fn closed_form_family(a: &Ambiguity) -> Option<FamilyId> {
    if a.kind != AmbiguityKind::Overlap {
        return None;
    }
    let k = [a.mu, a.nu].iter().find_map(|r| match r {
        RuleName::Epsilon(k) => Some(*k),
        _ => None,
    });
    let range: &[u8] = if k.is_some() {
        &[6, 7, 8, 9]
    } else {
        &[1, 2, 3, 4, 5]
    };
    range.iter().find_map(|&i| {
        let cand = family_member(i, k.unwrap_or(0));
        (cand == *a).then_some(FamilyId { index: i, k })
    })
}

/// Every overlap ambiguity among `alpha..delta, epsilon(1..=max_k)`, by
/// suffix/prefix matching of left-hand sides.
pub fn enumerate_ambiguities(max_k: u32) -> Vec<Ambiguity> {
    let rules = RuleName::catalogue(max_k);
    let mut out = Vec::new();
    for &mu in &rules {
        let wm = mu.lhs();
        for &nu in &rules {
            let wn = nu.lhs();
            let longest = wm.len().min(wn.len()) - 1;
            for t in 1..=longest {
                let suffix = wm.subword(wm.len() - t, wm.len());
                if suffix == wn.subword(0, t) {
                    out.push(Ambiguity::overlap(
                        mu,
                        nu,
                        wm.subword(0, wm.len() - t),
                        suffix,
                        wn.subword(t, wn.len()),
                    ));
                }
            }
        }
    }
    out
}

/// Every inclusion ambiguity: a left-hand side occurring inside a different
/// one. Empty for this system.
pub fn enumerate_inclusions(max_k: u32) -> Vec<Ambiguity> {
    let rules = RuleName::catalogue(max_k);
    let mut out = Vec::new();
    for &mu in &rules {
        let wm = mu.lhs();
        for &nu in &rules {
            let wn = nu.lhs();
            if mu == nu || wm.len() > wn.len() {
                continue;
            }
            for start in 0..=wn.len() - wm.len() {
                if wn.subword(start, start + wm.len()) == wm {
                    out.push(Ambiguity {
                        kind: AmbiguityKind::Inclusion,
                        mu,
                        nu,
                        left: wn.subword(0, start),
                        overlap: wm.clone(),
                        right: wn.subword(start + wm.len(), wn.len()),
                    });
                }
            }
        }
    }
    out
}

/// Both one-step results of an ambiguity driven to the common normal form.
#[derive(Clone, Debug)]
pub struct ResolutionTrace<F> {
    pub ambiguity: Ambiguity,
    pub lhs_start: NcPoly<F>,
    pub rhs_start: NcPoly<F>,
    pub lhs_steps: Vec<Step>,
    pub rhs_steps: Vec<Step>,
    pub common: NcPoly<F>,
}

pub fn resolve<F: Coeff>(alg: &Algebra<F>, a: &Ambiguity) -> Result<ResolutionTrace<F>, Error> {
    let lhs_start = a.lhs_start(alg.system());
    let rhs_start = a.rhs_start(alg.system());
    let (lnf, lhs_steps) = alg.normal_form_traced(&lhs_start);
    let (rnf, rhs_steps) = alg.normal_form_traced(&rhs_start);
    if lnf != rnf {
        return Err(Error::NotResolvable {
            id: a.id(),
            lhs: lnf.to_string(),
            rhs: rnf.to_string(),
        });
    }
    Ok(ResolutionTrace {
        ambiguity: a.clone(),
        lhs_start,
        rhs_start,
        lhs_steps,
        rhs_steps,
        common: lnf,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    A,
    B,
}

/// The steps of `a_k` or `b_k` in application order.
///
/// `a_k`: `r_{beta C^(k-1)}`, then `r_{C beta C^(k-2)}`, ..., `r_{C^(k-1) beta}`.
/// `b_k`: `r_{C^(k-1) delta}`, then `r_{C^(k-2) delta C}`, ..., `r_{delta C^(k-1)}`.
pub fn composition_steps(kind: Composition, k: u32) -> Vec<Step> {
    (0..k)
        .map(|i| match kind {
            Composition::A => Step::new(c_pow(i), RuleName::Beta, c_pow(k - 1 - i)),
            Composition::B => Step::new(c_pow(k - 1 - i), RuleName::Delta, c_pow(i)),
        })
        .collect()
}

/// Applies `a_k` or `b_k` to `p`.
pub fn compose_ab<F: Coeff>(
    sys: &ReductionSystem<F>,
    kind: Composition,
    k: u32,
    p: &NcPoly<F>,
) -> NcPoly<F> {
    apply_steps(sys, &composition_steps(kind, k), p)
}

pub fn apply_steps<F: Coeff>(sys: &ReductionSystem<F>, steps: &[Step], p: &NcPoly<F>) -> NcPoly<F> {
    steps
        .iter()
        .fold(p.clone(), |acc, s| sys.apply_step(&acc, s))
}

fn single(left: &str, rule: RuleName, right: &str) -> Vec<Step> {
    vec![Step::new(w(left), rule, w(right))]
}

/// The tabulated `(lambda_i, rho_i)` for family `index` at `k`, as step lists
/// in application order; an empty list is the identity.
pub fn table_resolution(index: u8, k: u32) -> (Vec<Step>, Vec<Step>) {
    use RuleName::*;
    let then =
        |first: Vec<Step>, second: Vec<Step>| first.into_iter().chain(second).collect::<Vec<_>>();
    match index {
        1 => (vec![], single("", Beta, "")),
        2 => (single("C", Alpha, ""), single("", Alpha, "C")),
        3 => (single("", Delta, ""), vec![]),
        4 => (vec![], single("", Epsilon(1), "")),
        5 => (single("", Epsilon(1), ""), vec![]),
        6 => (
            vec![],
            then(
                composition_steps(Composition::A, k + 1),
                composition_steps(Composition::A, k),
            ),
        ),
        7 => (single("", Epsilon(k + 1), ""), vec![]),
        8 => (
            then(
                composition_steps(Composition::B, k + 1),
                composition_steps(Composition::B, k),
            ),
            vec![],
        ),
        9 => (vec![], single("", Epsilon(k + 1), "")),
        _ => panic!("no ambiguity family {index}"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub family: FamilyId,
    pub lambda: Vec<String>,
    pub rho: Vec<String>,
    pub lhs_value: String,
    pub rhs_value: String,
    /// `lambda(f_mu R) = rho(L f_nu)` exactly in the free algebra.
    pub matches: bool,
    /// The common value equals the normal form reached by [`resolve`].
    pub agrees_with_resolve: bool,
}

/// Replays the tabulated resolutions for every family with `k <= max_k`.
pub fn verify_resolution_table<F: Coeff>(alg: &Algebra<F>, max_k: u32) -> Vec<TableRow> {
    let sys = alg.system();
    closed_form_ambiguities(max_k)
        .into_iter()
        .map(|a| {
            let family = a.family().expect("closed-form member");
            let (lambda, rho) = table_resolution(family.index, family.k.unwrap_or(0));
            let lhs = apply_steps(sys, &lambda, &a.lhs_start(sys));
            let rhs = apply_steps(sys, &rho, &a.rhs_start(sys));
            let matches = lhs == rhs;
            let agrees_with_resolve =
                matches!(resolve(alg, &a), Ok(t) if alg.normal_form(&lhs) == t.common);
            TableRow {
                family,
                lambda: lambda.iter().map(Step::to_string).collect(),
                rho: rho.iter().map(Step::to_string).collect(),
                lhs_value: lhs.to_string(),
                rhs_value: rhs.to_string(),
                matches,
                agrees_with_resolve,
            }
        })
        .collect()
}

/// One line of the ambiguity report.
#[derive(Clone, Debug, Serialize)]
pub struct AmbiguityRecord {
    pub id: String,
    pub k: Option<u32>,
    pub resolvable: bool,
    pub steps_lhs: Vec<String>,
    pub steps_rhs: Vec<String>,
    /// The common normal form, or both normal forms when they differ.
    pub common_nf: String,
}

/// Records sorted by family, then `k`.
pub fn ambiguity_report<F: Coeff>(alg: &Algebra<F>, max_k: u32) -> Vec<AmbiguityRecord> {
    let mut found = enumerate_ambiguities(max_k);
    found.sort_by_key(|a| a.family());
    found
        .iter()
        .map(|a| {
            let k = a.family().and_then(|f| f.k);
            match resolve(alg, a) {
                Ok(t) => AmbiguityRecord {
                    id: a.id(),
                    k,
                    resolvable: true,
                    steps_lhs: t.lhs_steps.iter().map(Step::to_string).collect(),
                    steps_rhs: t.rhs_steps.iter().map(Step::to_string).collect(),
                    common_nf: t.common.to_string(),
                },
                Err(e) => AmbiguityRecord {
                    id: a.id(),
                    k,
                    resolvable: false,
                    steps_lhs: vec![],
                    steps_rhs: vec![],
                    common_nf: e.to_string(),
                },
            }
        })
        .collect()
}
