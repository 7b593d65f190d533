//! Locality classes of a clause relative to one block of a blocking.

use std::fmt;

use super::{Clause, KbError, KnowledgeBase};
use crate::space::Blocking;

/// Where a clause sits relative to block `i` and its cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseClass {
    /// Footprint inside the block.
    BClause,
    /// Footprint inside block plus cover, touching both.
    CClause,
    /// Footprint inside the cover.
    QClause,
    /// Anything else.
    NClause,
}

impl fmt::Display for ClauseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClauseClass::BClause => "b",
            ClauseClass::CClause => "c",
            ClauseClass::QClause => "q",
            ClauseClass::NClause => "n",
        })
    }
}

pub fn classify(c: &Clause, blocking: &Blocking, i: usize) -> Result<ClauseClass, KbError> {
    let block = blocking.block(i).ok_or(KbError::BadIndex(i))?;
    let cover = &blocking.covers()[i];
    let (mut in_block, mut in_cover, mut outside) = (false, false, false);
    for lit in c.literals() {
        let p = lit.atom.parcel;
        if block.contains(&p) {
            in_block = true;
        } else if cover.contains(&p) {
            in_cover = true;
        } else {
            outside = true;
        }
    }
    Ok(match (in_block, in_cover, outside) {
        (_, _, true) => ClauseClass::NClause,
        (true, false, false) => ClauseClass::BClause,
        (true, true, false) => ClauseClass::CClause,
        (false, true, false) => ClauseClass::QClause,
        (false, false, false) => unreachable!("clauses are never empty"),
    })
}

/// Clauses whose class at block `i` is one of `classes`, in id order.
pub fn clauses_of<'kb>(
    kb: &'kb KnowledgeBase,
    blocking: &Blocking,
    i: usize,
    classes: &[ClauseClass],
) -> Result<Vec<&'kb Clause>, KbError> {
    if i >= blocking.len() {
        return Err(KbError::BadIndex(i));
    }
    let mut out = Vec::new();
    for c in kb.clauses() {
        if classes.contains(&classify(c, blocking, i)?) {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::kb::{Atom, ClauseId, Literal, Source};
    use crate::space::{partition, SeedPolicy, SpaceGraph};

    fn clause(id: u32, parcels: &[u32]) -> Clause {
        Clause::new(
            ClauseId(id),
            Source::S1,
            parcels.iter().map(|&p| Literal::pos(Atom::new("P", p))),
        )
        .unwrap()
    }

    fn path_blocking() -> Blocking {
        // B0 = {0,1}, Q0 = {2}
        partition(&SpaceGraph::path(9), 1, 2, SeedPolicy::Deterministic).unwrap()
    }

    #[test]
    fn four_situations() {
        let b = path_blocking();
        assert_eq!(
            classify(&clause(0, &[0, 1]), &b, 0),
            Ok(ClauseClass::BClause)
        );
        assert_eq!(
            classify(&clause(1, &[1, 2]), &b, 0),
            Ok(ClauseClass::CClause)
        );
        assert_eq!(classify(&clause(2, &[2]), &b, 0), Ok(ClauseClass::QClause));
        assert_eq!(
            classify(&clause(3, &[1, 3]), &b, 0),
            Ok(ClauseClass::NClause)
        );
        assert_eq!(classify(&clause(4, &[5]), &b, 0), Ok(ClauseClass::NClause));
    }

    #[test]
    fn bad_index() {
        let b = path_blocking();
        assert_eq!(classify(&clause(0, &[0]), &b, 5), Err(KbError::BadIndex(5)));
        let kb = KnowledgeBase::new(Arc::new(SpaceGraph::path(9)), []).unwrap();
        assert_eq!(
            clauses_of(&kb, &b, 9, &[ClauseClass::BClause]),
            Err(KbError::BadIndex(9))
        );
    }

    #[test]
    fn selection_by_class() {
        let g = Arc::new(SpaceGraph::path(9));
        let b = path_blocking();
        let empty = KnowledgeBase::new(g.clone(), []).unwrap();
        assert!(clauses_of(&empty, &b, 0, &[ClauseClass::BClause])
            .unwrap()
            .is_empty());

        let local = KnowledgeBase::new(g.clone(), [clause(0, &[0]), clause(1, &[0, 1])]).unwrap();
        assert_eq!(
            clauses_of(&local, &b, 0, &[ClauseClass::BClause])
                .unwrap()
                .len(),
            2
        );

        let kb = KnowledgeBase::new(
            g,
            [
                clause(0, &[0]),
                clause(1, &[1, 2]),
                clause(2, &[2]),
                clause(3, &[2, 3]),
                clause(4, &[7]),
            ],
        )
        .unwrap();
        let window = b.window(0).unwrap();
        let selected: Vec<ClauseId> = clauses_of(
            &kb,
            &b,
            0,
            &[
                ClauseClass::BClause,
                ClauseClass::CClause,
                ClauseClass::QClause,
            ],
        )
        .unwrap()
        .iter()
        .map(|c| c.id())
        .collect();
        let by_footprint: Vec<ClauseId> = kb
            .clauses()
            .iter()
            .filter(|c| c.footprint().is_subset(&window))
            .map(|c| c.id())
            .collect();
        assert_eq!(selected, by_footprint);
        assert_eq!(selected, vec![ClauseId(0), ClauseId(1), ClauseId(2)]);
    }
}
