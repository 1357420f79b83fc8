use std::collections::HashMap;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, Word};

use super::strategy::RewriteStrategy;
use super::Presentation;

/// Normal-form engine with a per-instance cache of word normal forms.
///
/// Not shared between threads; create one per task.
pub struct Reducer<'p> {
    p: &'p Presentation,
    strategy: &'static dyn RewriteStrategy,
    cache: HashMap<Word, NCPoly>,
}

impl<'p> Reducer<'p> {
    pub fn new(p: &'p Presentation, strategy: &'static dyn RewriteStrategy) -> Self {
        Reducer {
            p,
            strategy,
            cache: HashMap::new(),
        }
    }

    pub fn presentation(&self) -> &'p Presentation {
        self.p
    }

    /// One rewrite step at the selected redex, or `None` if `w` is normal.
    pub fn step(&self, w: &Word) -> Option<NCPoly> {
        let r = self.strategy.select(self.p, w)?;
        Some(self.apply(w, r.rule, r.start))
    }

    pub(crate) fn apply(&self, w: &Word, rule: usize, start: usize) -> NCPoly {
        let rule = &self.p.rules()[rule];
        let end = start + rule.lhs.len();
        let mut out = NCPoly::zero();
        for (m, c) in rule.rhs.terms() {
            out.add_term(w.splice(start, end, m), c.clone());
        }
        out
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.strategy.select(self.p, w).is_none()
    }

    pub fn reduce(&mut self, e: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        let mut steps = 0;
        for (w, c) in e.terms() {
            let nf = self.reduce_word_counted(w, &mut steps)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    pub fn reduce_word(&mut self, w: &Word) -> Result<NCPoly> {
        let mut steps = 0;
        self.reduce_word_counted(w, &mut steps)
    }

    fn reduce_word_counted(&mut self, w: &Word, steps: &mut u64) -> Result<NCPoly> {
        if let Some(nf) = self.cache.get(w) {
            return Ok(nf.clone());
        }
        let limit = self.p.step_limit();
        // explicit stack: a word is finished once all words of its one-step rewrite are
        let mut stack: Vec<(Word, Option<NCPoly>)> = vec![(w.clone(), None)];
        while let Some((top, expansion)) = stack.last_mut() {
            if self.cache.contains_key(top) {
                stack.pop();
                continue;
            }
            if expansion.is_none() {
                match self.step(top) {
                    None => {
                        let nf = NCPoly::word(top.clone());
                        self.cache.insert(top.clone(), nf);
                        stack.pop();
                        continue;
                    }
                    Some(next) => {
                        *steps += 1;
                        if *steps > limit {
                            return Err(Error::StepLimit(limit));
                        }
                        *expansion = Some(next);
                    }
                }
            }
            let exp = expansion.as_ref().expect("expansion set above");
            let pending: Vec<Word> = exp
                .terms()
                .map(|(u, _)| u)
                .filter(|u| !self.cache.contains_key(*u))
                .cloned()
                .collect();
            if pending.is_empty() {
                let mut nf = NCPoly::zero();
                for (u, c) in exp.terms() {
                    nf.add_scaled(&self.cache[u], c);
                }
                let key = top.clone();
                stack.pop();
                self.cache.insert(key, nf);
            } else {
                if stack.len() > limit as usize {
                    return Err(Error::StepLimit(limit));
                }
                stack.extend(pending.into_iter().map(|u| (u, None)));
            }
        }
        Ok(self.cache[w].clone())
    }

    /// Normal form of `a * b`.
    pub fn product(&mut self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        self.reduce(&a.mul(b))
    }

    /// Normal form of `[a, b]`.
    pub fn commutator(&mut self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        self.reduce(&a.commutator(b))
    }

    pub fn scaled_sum(&mut self, parts: &[(Scalar, NCPoly)]) -> Result<NCPoly> {
        let mut acc = NCPoly::zero();
        for (c, p) in parts {
            acc.add_scaled(p, c);
        }
        self.reduce(&acc)
    }
}
