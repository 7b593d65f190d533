//! Satisfiability checks, minimal conflict enumeration and the spatial size
//! of a conflict.

mod mus;
mod sat;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::kb::{Atom, Clause, ClauseId, KnowledgeBase};

/// Which enumeration bound was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    /// A minimal conflict larger than this many clauses exists.
    Cardinality(usize),
    /// More than this many subsets had to be explored.
    Candidates(usize),
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetKind::Cardinality(n) => write!(f, "a minimal conflict exceeds {n} clauses"),
            BudgetKind::Candidates(n) => write!(f, "more than {n} candidate subsets"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error("conflict enumeration budget exceeded: {0}")]
    BudgetExceeded(BudgetKind),
    #[error("conflict footprint spans disconnected parcels")]
    DisconnectedFootprint,
    #[error("clause {0} is not in the knowledge base")]
    UnknownClause(ClauseId),
}

/// Bounds on conflict enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_cardinality: usize,
    pub max_candidates: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_cardinality: 6,
            max_candidates: 100_000,
        }
    }
}

impl Budget {
    pub fn unbounded() -> Self {
        Self {
            max_cardinality: usize::MAX,
            max_candidates: usize::MAX,
        }
    }

    pub fn with_cardinality(max_cardinality: usize) -> Self {
        Self {
            max_cardinality,
            ..Self::default()
        }
    }
}

/// A minimal inconsistent set of clauses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conflict {
    clause_ids: BTreeSet<ClauseId>,
}

impl Conflict {
    pub fn new(clause_ids: impl IntoIterator<Item = ClauseId>) -> Self {
        Self {
            clause_ids: clause_ids.into_iter().collect(),
        }
    }

    pub fn clause_ids(&self) -> &BTreeSet<ClauseId> {
        &self.clause_ids
    }

    pub fn len(&self) -> usize {
        self.clause_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clause_ids.is_empty()
    }

    pub fn contains(&self, id: ClauseId) -> bool {
        self.clause_ids.contains(&id)
    }
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.clause_ids.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

fn encode(clauses: &[&Clause]) -> mus::Encoded {
    let mut vars: BTreeMap<&Atom, usize> = BTreeMap::new();
    let mut encoded = Vec::with_capacity(clauses.len());
    for c in clauses {
        let lits = c
            .literals()
            .iter()
            .map(|l| {
                let next = vars.len();
                let v = *vars.entry(&l.atom).or_insert(next);
                sat::lit(v, l.positive)
            })
            .collect();
        encoded.push(lits);
    }
    mus::Encoded {
        num_vars: vars.len(),
        clauses: encoded,
    }
}

/// True iff some truth assignment satisfies every clause.
pub fn is_consistent(clauses: &[&Clause]) -> bool {
    let enc = encode(clauses);
    sat::solve(enc.num_vars, enc.clauses.iter().map(Vec::as_slice), false).is_some()
}

/// Every subset-minimal inconsistent subset of `clauses`, sorted by clause
/// ids. Fails rather than truncating when `budget` is exceeded.
pub fn minimal_conflicts(
    clauses: &[&Clause],
    budget: &Budget,
) -> Result<Vec<Conflict>, ConsistencyError> {
    let enc = encode(clauses);
    let mut out: Vec<Conflict> = mus::enumerate(&enc, budget)?
        .into_iter()
        .map(|idx| Conflict::new(idx.into_iter().map(|i| clauses[i].id())))
        .collect();
    out.sort();
    Ok(out)
}

/// Radius of the smallest neighborhood holding every parcel the conflict
/// mentions: the minimum over all vertices of the farthest footprint
/// parcel.
pub fn conflict_size(conf: &Conflict, kb: &KnowledgeBase) -> Result<usize, ConsistencyError> {
    let mut parcels = BTreeSet::new();
    for &id in conf.clause_ids() {
        let c = kb.get(id).ok_or(ConsistencyError::UnknownClause(id))?;
        parcels.extend(c.footprint());
    }
    let g = kb.graph();
    let mut ecc: Vec<Option<usize>> = vec![Some(0); g.vertex_count()];
    for p in parcels {
        let dist = g
            .distances_from(p)
            .expect("clause parcels belong to the graph");
        for (e, d) in ecc.iter_mut().zip(dist) {
            *e = match (*e, d) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
        }
    }
    ecc.into_iter()
        .flatten()
        .min()
        .ok_or(ConsistencyError::DisconnectedFootprint)
}

/// Largest [`conflict_size`] in the collection, 0 when it is empty.
pub fn max_conflict_size<'a>(
    confs: impl IntoIterator<Item = &'a Conflict>,
    kb: &KnowledgeBase,
) -> Result<usize, ConsistencyError> {
    confs
        .into_iter()
        .try_fold(0, |acc, c| Ok(acc.max(conflict_size(c, kb)?)))
}
