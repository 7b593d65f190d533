//! Parcel-anchored propositional clauses and the knowledge base that holds
//! them.

mod classify;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::space::{SpaceGraph, VertexId};

pub use classify::{classify, clauses_of, ClauseClass};
pub use parse::{parse_clauses, write_clauses};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseId(pub u32);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Revisable beliefs (`S1`) versus protected knowledge (`S2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    S1,
    S2,
}

impl Source {
    pub fn is_protected(self) -> bool {
        self == Source::S2
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::S1 => "S1",
            Source::S2 => "S2",
        })
    }
}

/// A property of one parcel, written `name@parcel`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub parcel: VertexId,
    pub name: String,
}

impl Atom {
    pub fn new(name: impl Into<String>, parcel: VertexId) -> Self {
        Self {
            parcel,
            name: name.into(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.parcel)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Self {
            atom,
            positive: true,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Self {
            atom,
            positive: false,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("clause {0} is empty")]
    EmptyClause(ClauseId),
    #[error("clause {0} is a tautology on {1}")]
    Tautology(ClauseId, Atom),
    #[error("clause id {0} used twice")]
    DuplicateId(ClauseId),
    #[error("clause {clause} mentions parcel {parcel}, which is not in the graph")]
    UnknownParcel { clause: ClauseId, parcel: VertexId },
    #[error("block index {0} out of range")]
    BadIndex(usize),
}

/// A disjunction of literals. Duplicate literals are merged; tautologies
/// and empty clauses cannot be built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    id: ClauseId,
    literals: Vec<Literal>,
    source: Source,
}

impl Clause {
    pub fn new(
        id: ClauseId,
        source: Source,
        literals: impl IntoIterator<Item = Literal>,
    ) -> Result<Self, KbError> {
        let literals: Vec<Literal> = literals
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if literals.is_empty() {
            return Err(KbError::EmptyClause(id));
        }
        // sorted by atom first, so complementary literals are adjacent
        if let Some(w) = literals.windows(2).find(|w| w[0].atom == w[1].atom) {
            return Err(KbError::Tautology(id, w[0].atom.clone()));
        }
        Ok(Self {
            id,
            literals,
            source,
        })
    }

    pub fn id(&self) -> ClauseId {
        self.id
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// Parcels mentioned by the clause.
    pub fn footprint(&self) -> BTreeSet<VertexId> {
        self.literals.iter().map(|l| l.atom.parcel).collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c {} {}", self.id, self.source)?;
        for lit in &self.literals {
            write!(f, " {lit}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`Clause::footprint`].
pub fn footprint(c: &Clause) -> BTreeSet<VertexId> {
    c.footprint()
}

/// Clauses anchored in a shared parcel graph, ordered by id.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    graph: Arc<SpaceGraph>,
    clauses: Vec<Clause>,
    by_id: BTreeMap<ClauseId, usize>,
    by_parcel: BTreeMap<VertexId, Vec<usize>>,
}

impl PartialEq for KnowledgeBase {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses && *self.graph == *other.graph
    }
}

impl KnowledgeBase {
    pub fn new(
        graph: Arc<SpaceGraph>,
        clauses: impl IntoIterator<Item = Clause>,
    ) -> Result<Self, KbError> {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_by_key(Clause::id);
        if let Some(w) = clauses.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(KbError::DuplicateId(w[0].id));
        }
        let mut by_parcel: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (idx, c) in clauses.iter().enumerate() {
            for parcel in c.footprint() {
                if !graph.contains(parcel) {
                    return Err(KbError::UnknownParcel {
                        clause: c.id,
                        parcel,
                    });
                }
                by_parcel.entry(parcel).or_default().push(idx);
            }
        }
        let by_id = clauses.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        Ok(Self {
            graph,
            clauses,
            by_id,
            by_parcel,
        })
    }

    pub fn graph(&self) -> &SpaceGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<SpaceGraph> {
        Arc::clone(&self.graph)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        self.by_id.get(&id).map(|&i| &self.clauses[i])
    }

    pub fn ids(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.clauses.iter().map(Clause::id)
    }

    pub fn is_protected(&self, id: ClauseId) -> bool {
        self.get(id).is_some_and(|c| c.source.is_protected())
    }

    /// Clauses whose footprint lies inside `parcels`, in id order.
    pub fn clauses_within(&self, parcels: &BTreeSet<VertexId>) -> Vec<&Clause> {
        let mut hits: BTreeSet<usize> = BTreeSet::new();
        for p in parcels {
            if let Some(list) = self.by_parcel.get(p) {
                hits.extend(list.iter().copied());
            }
        }
        hits.into_iter()
            .map(|i| &self.clauses[i])
            .filter(|c| c.literals.iter().all(|l| parcels.contains(&l.atom.parcel)))
            .collect()
    }

    /// The base with the given clauses removed.
    pub fn without(&self, removed: &BTreeSet<ClauseId>) -> KnowledgeBase {
        let kept = self
            .clauses
            .iter()
            .filter(|c| !removed.contains(&c.id))
            .cloned();
        KnowledgeBase::new(Arc::clone(&self.graph), kept).expect("subset of a valid base")
    }
}
