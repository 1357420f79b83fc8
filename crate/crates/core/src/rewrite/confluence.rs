use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncpoly::Word;
use crate::report::Report;

use super::reducer::Reducer;
use super::Presentation;

/// A word reducible by two rule applications at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// All overlap and inclusion ambiguities whose word has length at most `max_len`.
pub fn ambiguities(p: &Presentation, max_len: usize) -> Vec<Ambiguity> {
    let rules = p.rules();
    let mut out = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        let l1 = &r1.lhs;
        for (j, r2) in rules.iter().enumerate() {
            let l2 = &r2.lhs;
            // overlap: proper suffix of l1 equals proper prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] && l1.len() + l2.len() - k <= max_len {
                    let word = l1.concat(&l2.subword(k, l2.len()));
                    out.push(Ambiguity {
                        word,
                        first: (i, 0),
                        second: (j, l1.len() - k),
                    });
                }
            }
            // inclusion: l2 occurs inside l1
            if i != j && l2.len() <= l1.len() && l1.len() <= max_len {
                for s in 0..=l1.len() - l2.len() {
                    if l1[s..s + l2.len()] == l2[..] && !(l1.len() == l2.len() && i > j) {
                        out.push(Ambiguity {
                            word: l1.clone(),
                            first: (i, 0),
                            second: (j, s),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Resolves every ambiguity up to `max_overlap_len`; unresolved ones are
/// reported with both normal forms.
pub fn critical_pairs(p: &Presentation, max_overlap_len: usize) -> Result<Report> {
    if max_overlap_len < p.max_lhs_len() {
        return Err(Error::invalid(format!(
            "overlap bound {max_overlap_len} is below the longest left-hand side ({})",
            p.max_lhs_len()
        )));
    }
    let amb = ambiguities(p, max_overlap_len);
    let results: Vec<Result<Option<(String, String)>>> = amb
        .par_iter()
        .map_init(
            || p.reducer(),
            |red: &mut Reducer<'_>, a| {
                let left = red.apply(&a.word, a.first.0, a.first.1);
                let right = red.apply(&a.word, a.second.0, a.second.1);
                let nl = red.reduce(&left)?;
                let nr = red.reduce(&right)?;
                if nl == nr {
                    Ok(None)
                } else {
                    Ok(Some((
                        format!(
                            "{} via `{}` and `{}`",
                            a.word,
                            p.format_rule(&p.rules()[a.first.0]),
                            p.format_rule(&p.rules()[a.second.0])
                        ),
                        format!("{}  vs  {}", p.format_poly(&nl), p.format_poly(&nr)),
                    )))
                }
            },
        )
        .collect();
    let mut report = Report::new("confluence");
    report.note(format!("{} ambiguities checked", amb.len()));
    for r in results {
        if let Some((ctx, expr)) = r? {
            report.fail(ctx, expr);
        }
    }
    Ok(report)
}
