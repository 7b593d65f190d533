//! Revision engines: the unpartitioned baseline and the block-contained
//! procedure, plus the tractability gate and a comparison harness.

mod compare;
mod contained;
mod global;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Duration;

use thiserror::Error;

use crate::consistency::{Budget, Conflict, ConsistencyError};
use crate::hitting_sets::{HittingSet, HsDiagnostics};
use crate::kb::{ClauseId, KnowledgeBase};
use crate::space::{Blocking, GraphError, SeedPolicy};

pub use compare::{compare, Comparison, Verdict};
pub use contained::contained_revision;
pub use global::global_rdr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RevisionError {
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
    #[error("conflict {0} consists of protected clauses only")]
    UnrepairableConflict(Conflict),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Tractability gate: holds when `3 * d_c <= k_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct H0Report {
    /// Largest conflict size seen (a lower bound on the true maximum).
    pub d_c: usize,
    /// Largest neighborhood size considered tractable.
    pub k_r: usize,
    pub holds: bool,
}

pub fn check_h0(d_c: usize, k_r: usize) -> H0Report {
    H0Report {
        d_c,
        k_r,
        holds: d_c.saturating_mul(3) <= k_r,
    }
}

impl fmt::Display for H0Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d_c={} (observed) k_r={} {}",
            self.d_c,
            self.k_r,
            if self.holds { "holds" } else { "fails" }
        )
    }
}

/// How the conflicts found in one block relate to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// No conflict contains a clause crossing into the cover.
    SpaceIndependent,
    /// Crossing conflicts share no clause with block-only conflicts.
    InfoIndependent,
    Dependent,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SpaceIndependent => "space-independent",
            Regime::InfoIndependent => "info-independent",
            Regime::Dependent => "dependent",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RevisionConfig {
    pub k: usize,
    pub kprime: usize,
    pub k_r: usize,
    pub seed_policy: SeedPolicy,
    pub budget: Budget,
    /// Worker threads for the per-block passes.
    pub jobs: usize,
}

impl Default for RevisionConfig {
    fn default() -> Self {
        Self {
            k: 2,
            kprime: 4,
            k_r: 12,
            seed_policy: SeedPolicy::Deterministic,
            budget: Budget::default(),
            jobs: 1,
        }
    }
}

/// What one base-pass block worked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTrace {
    pub block: usize,
    /// Clauses handed to local conflict detection.
    pub working: Vec<ClauseId>,
    /// Clauses of the window skipped because an earlier block owns them.
    pub removed: Vec<ClauseId>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub partition: Duration,
    pub base_pass: Duration,
    pub shift_pass: Duration,
    pub hitting_sets: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct RevisionDiagnostics {
    pub hs: HsDiagnostics,
    /// Every conflict that entered the hitting-set computation.
    pub conflicts: Vec<Conflict>,
    pub base_pass_conflicts: usize,
    pub shift_pass_conflicts: usize,
    /// Shifted blockings that contributed at least one new conflict.
    pub shifts_contributing: usize,
    /// Cover-only conflicts that no block claimed.
    pub unclaimed_deferred: usize,
    /// Local conflict detections actually run (identical windows are
    /// skipped).
    pub local_runs: usize,
    pub base: Option<Blocking>,
    pub block_traces: Vec<BlockTrace>,
    pub timings: PhaseTimings,
}

#[derive(Debug, Clone)]
pub struct RevisionResult {
    /// Minimal hitting sets made of revisable clauses only.
    pub global_hitting_sets: BTreeSet<HittingSet>,
    pub chosen: HittingSet,
    pub revised_kb: KnowledgeBase,
    pub regime_per_block: BTreeMap<usize, Regime>,
    pub shifts_used: usize,
    pub h0: H0Report,
    /// Set only once the result has been checked against the global
    /// engine; the contained engine never checks global consistency.
    pub conjecture_verified: bool,
    pub warnings: Vec<String>,
    pub diagnostics: RevisionDiagnostics,
}

impl RevisionResult {
    pub fn regime_histogram(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for r in self.regime_per_block.values() {
            out[*r as usize] += 1;
        }
        out
    }
}
