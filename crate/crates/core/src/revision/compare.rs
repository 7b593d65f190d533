use std::fmt;

use super::global::global_with;
use super::{contained_revision, RevisionConfig, RevisionError, RevisionResult};
use crate::consistency::{conflict_size, is_consistent};
use crate::kb::{Clause, KnowledgeBase};
use crate::space::SpaceGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Both engines produced the same minimal hitting sets.
    Equal,
    /// The results differ and some minimal conflict is wider than the
    /// cover thickness, so the containment assumption did not hold.
    Divergent { widest: usize, thickness: usize },
    /// The results differ although every conflict fits the covers.
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => f.write_str("EQUAL"),
            Verdict::Divergent { .. } => f.write_str("DIVERGENT (conjecture violated)"),
            Verdict::Mismatch => f.write_str("MISMATCH"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub contained: RevisionResult,
    pub global: RevisionResult,
    pub verdict: Verdict,
    /// Largest conflict size among the global engine's conflicts.
    pub widest_conflict: usize,
    /// Whether the contained engine's revised base is consistent.
    pub contained_consistent: bool,
}

/// Runs both engines on the same instance and classifies the outcome.
/// `contained.conjecture_verified` is set only when the hitting sets
/// coincide and the contained repair is globally consistent.
pub fn compare(
    kb: &KnowledgeBase,
    g: &SpaceGraph,
    config: &RevisionConfig,
) -> Result<Comparison, RevisionError> {
    let global = global_with(kb, config)?;
    let mut contained = contained_revision(kb, g, config)?;
    let mut widest = 0;
    for c in &global.diagnostics.conflicts {
        widest = widest.max(conflict_size(c, kb)?);
    }
    let thickness = config.kprime - config.k;
    let verdict = if contained.global_hitting_sets == global.global_hitting_sets {
        Verdict::Equal
    } else if widest > thickness {
        Verdict::Divergent { widest, thickness }
    } else {
        Verdict::Mismatch
    };
    let revised: Vec<&Clause> = contained.revised_kb.clauses().iter().collect();
    let contained_consistent = is_consistent(&revised);
    contained.conjecture_verified = verdict == Verdict::Equal && contained_consistent;
    Ok(Comparison {
        contained,
        global,
        verdict,
        widest_conflict: widest,
        contained_consistent,
    })
}
