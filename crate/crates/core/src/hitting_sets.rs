//! Minimal hitting sets of conflict collections: the HS-tree, protected
//! clause filtering, the two combination rules for split collections and
//! the preference choice among candidates.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::consistency::Conflict;
use crate::kb::{ClauseId, KnowledgeBase};

/// A set of clauses whose removal hits every conflict.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HittingSet(BTreeSet<ClauseId>);

impl HittingSet {
    pub fn new(ids: impl IntoIterator<Item = ClauseId>) -> Self {
        Self(ids.into_iter().collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn clause_ids(&self) -> &BTreeSet<ClauseId> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hits(&self, conflict: &Conflict) -> bool {
        conflict.clause_ids().iter().any(|id| self.0.contains(id))
    }

    pub fn is_subset(&self, other: &HittingSet) -> bool {
        self.0.is_subset(&other.0)
    }

    fn union(&self, other: &HittingSet) -> HittingSet {
        HittingSet(self.0.union(&other.0).copied().collect())
    }
}

impl fmt::Display for HittingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HsDiagnostics {
    pub nodes_expanded: usize,
    pub pruned: usize,
    pub conflicts_used: usize,
}

impl std::ops::AddAssign for HsDiagnostics {
    fn add_assign(&mut self, rhs: Self) {
        self.nodes_expanded += rhs.nodes_expanded;
        self.pruned += rhs.pruned;
        self.conflicts_used += rhs.conflicts_used;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HittingSetError {
    #[error("clause {0} occurs on both sides of an independent combination")]
    IndependenceViolated(ClauseId),
    #[error("no candidate hitting set to choose from")]
    EmptyCandidates,
}

/// All minimal hitting sets of `conflicts`.
pub fn hs_tree(conflicts: &[Conflict]) -> (BTreeSet<HittingSet>, HsDiagnostics) {
    hs_tree_restricted(conflicts, |_| true)
}

/// HS-tree whose branch labels are limited to clauses accepted by
/// `allowed`. The result equals the minimal hitting sets made only of
/// allowed clauses; a conflict without allowed clauses leaves none.
pub fn hs_tree_restricted(
    conflicts: &[Conflict],
    allowed: impl Fn(ClauseId) -> bool,
) -> (BTreeSet<HittingSet>, HsDiagnostics) {
    let mut labels: Vec<&Conflict> = conflicts.iter().collect();
    labels.sort();
    labels.dedup();
    let mut diag = HsDiagnostics::default();
    let mut used = vec![false; labels.len()];
    let mut found: Vec<BTreeSet<ClauseId>> = Vec::new();
    let mut seen: HashSet<BTreeSet<ClauseId>> = HashSet::new();
    let mut queue = VecDeque::from([BTreeSet::new()]);
    while let Some(path) = queue.pop_front() {
        if found.iter().any(|h| h.is_subset(&path)) {
            diag.pruned += 1;
            continue;
        }
        diag.nodes_expanded += 1;
        let label = labels
            .iter()
            .position(|c| c.clause_ids().is_disjoint(&path));
        let Some(li) = label else {
            found.push(path);
            continue;
        };
        used[li] = true;
        for &sigma in labels[li].clause_ids() {
            if !allowed(sigma) {
                continue;
            }
            let mut child = path.clone();
            child.insert(sigma);
            if seen.insert(child.clone()) {
                queue.push_back(child);
            } else {
                diag.pruned += 1;
            }
        }
    }
    diag.conflicts_used = used.iter().filter(|&&u| u).count();
    (minimize(found.into_iter().map(HittingSet)), diag)
}

/// Drops every hitting set that contains a protected clause.
pub fn filter_protected(hs: &BTreeSet<HittingSet>, kb: &KnowledgeBase) -> BTreeSet<HittingSet> {
    hs.iter()
        .filter(|h| h.0.iter().all(|&id| !kb.is_protected(id)))
        .cloned()
        .collect()
}

/// Pairwise unions of hitting sets computed for two independent
/// collections.
pub fn combine_independent(
    ha: &BTreeSet<HittingSet>,
    hb: &BTreeSet<HittingSet>,
) -> Result<BTreeSet<HittingSet>, HittingSetError> {
    let left: BTreeSet<ClauseId> = ha.iter().flat_map(|h| h.0.iter().copied()).collect();
    if let Some(&id) = hb
        .iter()
        .flat_map(|h| h.0.iter())
        .find(|id| left.contains(id))
    {
        return Err(HittingSetError::IndependenceViolated(id));
    }
    Ok(ha
        .iter()
        .flat_map(|a| hb.iter().map(move |b| a.union(b)))
        .collect())
}

/// Subset-minimal members of all element-wise unions across `parts`.
pub fn combine_min_union(parts: &[BTreeSet<HittingSet>]) -> BTreeSet<HittingSet> {
    let mut acc = BTreeSet::from([HittingSet::empty()]);
    for part in parts {
        acc = minimize(
            acc.iter()
                .flat_map(|a| part.iter().map(move |b| a.union(b))),
        );
    }
    acc
}

/// Keeps the subset-minimal members.
pub fn minimize(sets: impl IntoIterator<Item = HittingSet>) -> BTreeSet<HittingSet> {
    let mut all: Vec<HittingSet> = sets
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    all.sort_by_key(HittingSet::len);
    let mut kept: Vec<HittingSet> = Vec::new();
    for h in all {
        if !kept.iter().any(|k| k.is_subset(&h)) {
            kept.push(h);
        }
    }
    kept.into_iter().collect()
}

/// A strategy for picking one repair among the minimal hitting sets.
pub trait PreferenceOrder {
    fn choose(&self, candidates: &BTreeSet<HittingSet>) -> Option<HittingSet>;
}

/// Fewest clauses first; ties go to the lexicographically smallest sorted
/// id list.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinCardinalityLex;

impl PreferenceOrder for MinCardinalityLex {
    fn choose(&self, candidates: &BTreeSet<HittingSet>) -> Option<HittingSet> {
        candidates
            .iter()
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .cloned()
    }
}

pub fn prefer(
    hs: &BTreeSet<HittingSet>,
    ordering: &impl PreferenceOrder,
) -> Result<HittingSet, HittingSetError> {
    ordering.choose(hs).ok_or(HittingSetError::EmptyCandidates)
}
