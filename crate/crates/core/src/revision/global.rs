use std::collections::BTreeMap;
use std::time::Instant;

use super::{check_h0, RevisionConfig, RevisionDiagnostics, RevisionError, RevisionResult};
use crate::consistency::{max_conflict_size, minimal_conflicts, Budget};
use crate::hitting_sets::{filter_protected, hs_tree, prefer, MinCardinalityLex};
use crate::kb::{Clause, KnowledgeBase};

/// Unpartitioned revision: all minimal conflicts of the whole base, their
/// minimal hitting sets, protected-clause filtering, then the preferred
/// candidate.
pub fn global_rdr(
    kb: &KnowledgeBase,
    budget: &Budget,
    k_r: usize,
) -> Result<RevisionResult, RevisionError> {
    let start = Instant::now();
    let all: Vec<&Clause> = kb.clauses().iter().collect();
    let conflicts = minimal_conflicts(&all, budget)?;
    let detect = start.elapsed();

    let hs_start = Instant::now();
    let (candidates, hs_diag) = hs_tree(&conflicts);
    let repairs = filter_protected(&candidates, kb);
    if repairs.is_empty() {
        let culprit = conflicts
            .iter()
            .find(|c| c.clause_ids().iter().all(|&id| kb.is_protected(id)))
            .or(conflicts.first())
            .cloned()
            .expect("an empty repair set needs a conflict");
        return Err(RevisionError::UnrepairableConflict(culprit));
    }
    let chosen = prefer(&repairs, &MinCardinalityLex).expect("non-empty");
    let hs_time = hs_start.elapsed();

    let h0 = check_h0(max_conflict_size(&conflicts, kb)?, k_r);
    let mut warnings = Vec::new();
    if !h0.holds {
        warnings.push(format!("tractability gate fails: {h0}"));
    }
    let mut diagnostics = RevisionDiagnostics {
        hs: hs_diag,
        base_pass_conflicts: conflicts.len(),
        conflicts,
        local_runs: 1,
        ..Default::default()
    };
    diagnostics.timings.base_pass = detect;
    diagnostics.timings.hitting_sets = hs_time;
    diagnostics.timings.total = start.elapsed();
    Ok(RevisionResult {
        revised_kb: kb.without(chosen.clause_ids()),
        global_hitting_sets: repairs,
        chosen,
        regime_per_block: BTreeMap::new(),
        shifts_used: 0,
        h0,
        conjecture_verified: false,
        warnings,
        diagnostics,
    })
}

/// [`global_rdr`] with the budget and gate taken from a configuration.
pub(crate) fn global_with(
    kb: &KnowledgeBase,
    config: &RevisionConfig,
) -> Result<RevisionResult, RevisionError> {
    global_rdr(kb, &config.budget, config.k_r)
}
