//! Sparse exact elimination over `Q(q, eta)`, pivots keyed by leading word.

use std::collections::BTreeMap;

use crate::coeff::Scalar;
use crate::error::Result;
use crate::ncpoly::{CompositeOrder, NCPoly, SortKey, Word};

/// A sparse vector indexed by words, stored in composite order.
pub type Row = BTreeMap<SortKey, (Word, Scalar)>;

pub fn to_row(p: &NCPoly, order: &CompositeOrder) -> Result<Row> {
    let mut row = Row::new();
    for (w, c) in p.terms() {
        row.insert(order.sort_key(w)?, (w.clone(), c.clone()));
    }
    Ok(row)
}

pub fn from_row(r: &Row) -> NCPoly {
    NCPoly::from_terms(r.values().map(|(w, c)| (w.clone(), c.clone())))
}

/// `row -= c * other`.
fn sub_scaled(row: &mut Row, other: &Row, c: &Scalar) {
    for (k, (w, d)) in other {
        let delta = d.mul(c);
        match row.get_mut(k) {
            Some(entry) => {
                let s = entry.1.sub(&delta);
                if s.is_zero() {
                    row.remove(k);
                } else {
                    entry.1 = s;
                }
            }
            None => {
                row.insert(k.clone(), (w.clone(), delta.neg()));
            }
        }
    }
}

/// Row-echelon basis; each pivot row is monic in its largest word.
///
/// Rows may carry a tag polynomial that records the combination of inserted
/// inputs they represent.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<SortKey, (Row, NCPoly)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Top-reduces `row` (and its tag alongside) until its leading word has no pivot.
    fn reduce_top(&self, row: &mut Row, tag: &mut NCPoly) {
        loop {
            let Some((lead, (_, c))) = row.iter().next_back() else {
                return;
            };
            let Some((prow, ptag)) = self.pivots.get(lead) else {
                return;
            };
            let c = c.clone();
            sub_scaled(row, prow, &c);
            tag.add_scaled(ptag, &c.neg());
        }
    }

    /// Inserts a row; returns the reduced tag when the row was dependent.
    pub fn insert_tagged(&mut self, mut row: Row, mut tag: NCPoly) -> Option<NCPoly> {
        self.reduce_top(&mut row, &mut tag);
        let Some((lead, (_, c))) = row.iter().next_back() else {
            return Some(tag);
        };
        let lead = lead.clone();
        let inv = c.inv().expect("leading coefficient is nonzero");
        for v in row.values_mut() {
            v.1 = v.1.mul(&inv);
        }
        let tag = tag.scale(&inv);
        self.pivots.insert(lead, (row, tag));
        None
    }

    pub fn insert(&mut self, row: Row) -> bool {
        self.insert_tagged(row, NCPoly::zero()).is_none()
    }

    /// Whether `row` lies in the span.
    pub fn contains(&self, row: &Row) -> bool {
        self.remainder(row).is_empty()
    }

    /// What is left of `row` after reduction by the pivots, full (not only top).
    pub fn remainder(&self, row: &Row) -> Row {
        let mut r = row.clone();
        let mut tag = NCPoly::zero();
        let mut out = Row::new();
        loop {
            self.reduce_top(&mut r, &mut tag);
            match r.pop_last() {
                None => return out,
                Some((k, v)) => {
                    out.insert(k, v);
                }
            }
        }
    }

    /// Solves `row = sum c_i input_i` using the tags; `None` if not in the span.
    pub fn solve(&self, row: &Row) -> Option<NCPoly> {
        let mut r = row.clone();
        let mut tag = NCPoly::zero();
        self.reduce_top(&mut r, &mut tag);
        if r.is_empty() {
            Some(tag.neg())
        } else {
            None
        }
    }
}

impl Echelon {
    /// Pivot rows after back-substitution, ascending by leading word.
    pub fn reduced_rows(&self) -> Vec<Row> {
        let mut done: Vec<Row> = Vec::new();
        let mut reduced: BTreeMap<SortKey, Row> = BTreeMap::new();
        for (lead, (row, _)) in &self.pivots {
            let mut r = row.clone();
            // clear every non-leading entry that is itself a (reduced) pivot
            let keys: Vec<SortKey> = r.keys().filter(|k| *k != lead).cloned().collect();
            for k in keys.into_iter().rev() {
                if let (Some(p), Some((_, c))) = (reduced.get(&k), r.get(&k).cloned()) {
                    sub_scaled(&mut r, p, &c);
                }
            }
            reduced.insert(lead.clone(), r.clone());
            done.push(r);
        }
        done
    }
}
