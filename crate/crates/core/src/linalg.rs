//! Exact row reduction over a coefficient field, with words as columns.

use std::collections::{BTreeMap, HashMap};

use crate::freealg::{NcPoly, Word};
use crate::scalar::Coeff;

#[derive(Clone, Debug)]
struct Row<F> {
    poly: NcPoly<F>,
    /// `poly` as a combination of the inserted vectors, by insertion index.
    combo: BTreeMap<usize, F>,
}

/// An incrementally built subspace. Every stored row has a distinct leading
/// word (first word in canonical order), which is its pivot.
#[derive(Clone, Debug)]
pub struct Span<F> {
    rows: Vec<Row<F>>,
    pivots: HashMap<Word, usize>,
    inserted: usize,
}

impl<F: Coeff> Default for Span<F> {
    fn default() -> Self {
        Self::new()
    }
}

fn add_scaled_combo<F: Coeff>(acc: &mut BTreeMap<usize, F>, other: &BTreeMap<usize, F>, c: &F) {
    for (&i, v) in other {
        let entry = acc.entry(i).or_insert_with(F::zero);
        *entry = entry.clone() + v.clone() * c.clone();
        if entry.is_zero() {
            acc.remove(&i);
        }
    }
}

impl<F: Coeff> Span<F> {
    pub fn new() -> Self {
        Self {
            rows: Vec::new(),
            pivots: HashMap::new(),
            inserted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis of the span.
    pub fn basis(&self) -> impl Iterator<Item = &NcPoly<F>> {
        self.rows.iter().map(|r| &r.poly)
    }

    /// Eliminates pivot words from `v`. Returns the remainder and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, v: &NcPoly<F>) -> (NcPoly<F>, BTreeMap<usize, F>) {
        let mut rem = v.clone();
        let mut used = BTreeMap::new();
        loop {
            let hit = rem
                .terms()
                .find_map(|(w, c)| self.pivots.get(w).map(|&i| (i, w.clone(), c.clone())));
            let Some((i, w, c)) = hit else {
                return (rem, used);
            };
            let row = &self.rows[i];
            let factor = c * row
                .poly
                .coeff(&w)
                .inv()
                .expect("pivot coefficient is nonzero");
            rem.add_scaled(&row.poly, &-factor.clone());
            add_scaled_combo(&mut used, &row.combo, &factor);
        }
    }

    /// Adds `v` to the generating set. Returns true when the dimension grew.
    pub fn insert(&mut self, v: &NcPoly<F>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        if rem.is_zero() {
            return false;
        }
        let mut combo = BTreeMap::new();
        add_scaled_combo(&mut combo, &used, &-F::one());
        combo.insert(index, F::one());
        let pivot = rem.support().next().expect("nonzero remainder").clone();
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { poly: rem, combo });
        true
    }

    pub fn contains(&self, v: &NcPoly<F>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients `c_i` (by insertion index) with `v = sum c_i v_i`, when
    /// `v` lies in the span.
    pub fn express(&self, v: &NcPoly<F>) -> Option<BTreeMap<usize, F>> {
        let (rem, used) = self.reduce(v);
        rem.is_zero().then_some(used)
    }
}

/// Solves `sum c_i columns[i] = target` exactly. Returns one solution, or
/// `None` when the target is outside the column span.
pub fn solve_combination<F: Coeff>(columns: &[NcPoly<F>], target: &NcPoly<F>) -> Option<Vec<F>> {
    let mut span = Span::new();
    for c in columns {
        span.insert(c);
    }
    let combo = span.express(target)?;
    let mut out = vec![F::zero(); columns.len()];
    for (i, c) in combo {
        out[i] = c;
    }
    Some(out)
}
