//! Rewrite systems: presentations, normal forms and confluence diagnostics.

mod confluence;
mod presentation;
mod reducer;
pub mod strategy;

pub use confluence::{ambiguities, critical_pairs, Ambiguity};
pub use presentation::{default_step_limit, Presentation, Rule, DEFAULT_STEP_LIMIT};
pub use reducer::Reducer;
pub use strategy::{default_strategy, strategy, strategy_names, LeftmostInnermost, Redex, RewriteStrategy, RightmostOutermost};

use crate::error::Result;
use crate::ncpoly::NCPoly;
use crate::report::Report;

/// Lists every rule with a right-hand word not strictly below its left-hand side.
pub fn check_admissible(p: &Presentation) -> Report {
    let mut report = Report::new("admissibility");
    for rule in p.rules() {
        if rule.lhs.is_unit() {
            report.fail(p.format_rule(rule), "left-hand side is the unit word");
            continue;
        }
        for (w, _) in rule.rhs.terms() {
            match p.order().decreases_in_context(&rule.lhs, w) {
                Ok(Ok(())) => {}
                Ok(Err(reason)) => report.fail(p.format_rule(rule), reason),
                Err(e) => report.fail(p.format_rule(rule), e.to_string()),
            }
        }
    }
    report
}

pub fn normal_form(e: &NCPoly, p: &Presentation) -> Result<NCPoly> {
    p.normal_form(e)
}
