//! Flooding scenarios: water-level interval beliefs per parcel and flux
//! directions between adjacent parcels, compiled to anchored clauses.
//!
//! Atom `A<l>@x` reads "the water level at parcel x is at least l", for
//! `l` in `1..L`. Ladder axioms keep each parcel's atoms downward closed,
//! so a model picks exactly one level per parcel. Ladders and fluxes are
//! protected knowledge; interval bounds are the revisable beliefs.

mod generate;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::kb::{Atom, Clause, ClauseId, KnowledgeBase, Literal, Source};
use crate::space::{SpaceGraph, VertexId};

pub use generate::{generate, GeneratorParams, Layout};
pub use parse::{parse_scenario, write_scenario};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloodScenario {
    graph: Arc<SpaceGraph>,
    levels: u32,
    intervals: BTreeMap<VertexId, (u32, u32)>,
    fluxes: BTreeSet<(VertexId, VertexId)>,
}

impl FloodScenario {
    /// `levels` sampled heights `0..levels`; intervals are inclusive
    /// `(lo, hi)` bounds; a flux `(from, to)` runs along a graph edge.
    pub fn new(
        graph: Arc<SpaceGraph>,
        levels: u32,
        intervals: BTreeMap<VertexId, (u32, u32)>,
        fluxes: BTreeSet<(VertexId, VertexId)>,
    ) -> Result<Self, ScenarioError> {
        if levels == 0 {
            return Err(ScenarioError::InvalidScenario(
                "at least one water level is required".into(),
            ));
        }
        for (&p, &(lo, hi)) in &intervals {
            if !graph.contains(p) {
                return Err(ScenarioError::InvalidScenario(format!(
                    "interval on unknown parcel {p}"
                )));
            }
            if lo > hi || hi >= levels {
                return Err(ScenarioError::InvalidScenario(format!(
                    "interval ({lo}, {hi}) at parcel {p} is not within [0, {levels})"
                )));
            }
        }
        for &(from, to) in &fluxes {
            if !graph.has_edge(from, to) {
                return Err(ScenarioError::InvalidScenario(format!(
                    "flux {from}->{to} does not follow an edge"
                )));
            }
        }
        Ok(Self {
            graph,
            levels,
            intervals,
            fluxes,
        })
    }

    pub fn graph(&self) -> &Arc<SpaceGraph> {
        &self.graph
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn intervals(&self) -> &BTreeMap<VertexId, (u32, u32)> {
        &self.intervals
    }

    pub fn fluxes(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.fluxes
    }
}

/// Name of the atom "level at least `level`".
pub fn level_atom(parcel: VertexId, level: u32) -> Atom {
    Atom::new(format!("A{level}"), parcel)
}

/// A flux `upstream -> downstream` means water flows downhill: the
/// upstream level is at least the downstream one, level by level.
fn flux_literals(upstream: VertexId, downstream: VertexId, level: u32) -> [Literal; 2] {
    [
        Literal::neg(level_atom(downstream, level)),
        Literal::pos(level_atom(upstream, level)),
    ]
}

/// Compiles the scenario. Clause ids are assigned in this order: ladder
/// axioms by parcel, interval bounds by parcel, flux clauses by flux.
pub fn compile(s: &FloodScenario) -> KnowledgeBase {
    let top = s.levels - 1;
    let mut clauses = Vec::new();
    let mut push = |source: Source, lits: Vec<Literal>| {
        let id = ClauseId(clauses.len() as u32);
        clauses.push(Clause::new(id, source, lits).expect("compiled clauses are well formed"));
    };
    for &x in s.graph.vertices() {
        for l in 1..top {
            push(
                Source::S2,
                vec![
                    Literal::neg(level_atom(x, l + 1)),
                    Literal::pos(level_atom(x, l)),
                ],
            );
        }
    }
    for (&x, &(lo, hi)) in &s.intervals {
        if lo >= 1 {
            push(Source::S1, vec![Literal::pos(level_atom(x, lo))]);
        }
        if hi < top {
            push(Source::S1, vec![Literal::neg(level_atom(x, hi + 1))]);
        }
    }
    for &(from, to) in &s.fluxes {
        for l in 1..=top {
            push(Source::S2, flux_literals(from, to, l).to_vec());
        }
    }
    KnowledgeBase::new(Arc::clone(&s.graph), clauses).expect("compiled clauses stay on the graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{is_consistent, minimal_conflicts, Budget};

    fn scenario(
        g: SpaceGraph,
        levels: u32,
        intervals: &[(VertexId, (u32, u32))],
        fluxes: &[(VertexId, VertexId)],
    ) -> FloodScenario {
        FloodScenario::new(
            Arc::new(g),
            levels,
            intervals.iter().copied().collect(),
            fluxes.iter().copied().collect(),
        )
        .unwrap()
    }

    /// Levels allowed by the compiled clauses of a one-parcel scenario,
    /// by enumerating all assignments of its atoms.
    fn surviving_levels(kb: &KnowledgeBase, levels: u32) -> BTreeSet<u32> {
        let atoms = (levels - 1) as usize;
        let mut out = BTreeSet::new();
        for bits in 0u32..1 << atoms {
            let truth = |a: &Atom| {
                let l: u32 = a.name[1..].parse().unwrap();
                bits >> (l - 1) & 1 == 1
            };
            let sat = kb.clauses().iter().all(|c| {
                c.literals()
                    .iter()
                    .any(|lit| truth(&lit.atom) == lit.positive)
            });
            if sat {
                let level = (1..levels)
                    .filter(|&l| bits >> (l - 1) & 1 == 1)
                    .max()
                    .unwrap_or(0);
                out.insert(level);
            }
        }
        out
    }

    #[test]
    fn interval_compiles_to_two_units_and_ladders() {
        let s = scenario(SpaceGraph::path(1), 6, &[(0, (2, 4))], &[]);
        let kb = compile(&s);
        let units: Vec<String> = kb
            .clauses()
            .iter()
            .filter(|c| c.source() == Source::S1)
            .map(|c| c.to_string())
            .collect();
        assert_eq!(units, vec!["c 4 S1 A2@0", "c 5 S1 -A5@0"]);
        assert_eq!(
            kb.clauses()
                .iter()
                .filter(|c| c.source() == Source::S2)
                .count(),
            4
        );
        assert_eq!(surviving_levels(&kb, 6), BTreeSet::from([2, 3, 4]));
    }

    #[test]
    fn opposed_flux_bounds_conflict() {
        // x = 0 upstream with level <= 1, y = 1 downstream with level >= 3
        let s = scenario(
            SpaceGraph::path(2),
            6,
            &[(0, (0, 1)), (1, (3, 4))],
            &[(0, 1)],
        );
        let kb = compile(&s);
        let all: Vec<&Clause> = kb.clauses().iter().collect();
        assert!(!is_consistent(&all));
        let found = minimal_conflicts(&all, &Budget::default()).unwrap();
        // two derivations: drop a level at y then cross, or cross then drop
        assert_eq!(found.len(), 2);
        for conf in &found {
            let parcels: BTreeSet<VertexId> = conf
                .clause_ids()
                .iter()
                .flat_map(|&id| kb.get(id).unwrap().footprint())
                .collect();
            assert_eq!(parcels, BTreeSet::from([0, 1]));
            let sources: BTreeSet<Source> = conf
                .clause_ids()
                .iter()
                .map(|&id| kb.get(id).unwrap().source())
                .collect();
            assert_eq!(sources, BTreeSet::from([Source::S1, Source::S2]));
            assert_eq!(conf.len(), 4);
        }
    }

    #[test]
    fn bare_graph_is_consistent() {
        let s = scenario(SpaceGraph::grid(2, 3), 5, &[], &[]);
        let kb = compile(&s);
        assert_eq!(kb.len(), 6 * 3);
        let all: Vec<&Clause> = kb.clauses().iter().collect();
        assert!(is_consistent(&all));
    }

    #[test]
    fn footprints_are_small() {
        let s = scenario(
            SpaceGraph::path(4),
            4,
            &[(0, (1, 2)), (3, (0, 0))],
            &[(0, 1), (2, 1), (2, 3)],
        );
        assert!(compile(&s)
            .clauses()
            .iter()
            .all(|c| c.footprint().len() <= 2));
    }

    #[test]
    fn invalid_scenarios() {
        let g = Arc::new(SpaceGraph::path(3));
        let bad = |levels, iv: &[(VertexId, (u32, u32))], fx: &[(VertexId, VertexId)]| {
            FloodScenario::new(
                g.clone(),
                levels,
                iv.iter().copied().collect(),
                fx.iter().copied().collect(),
            )
            .is_err()
        };
        assert!(bad(0, &[], &[]));
        assert!(bad(4, &[(0, (2, 1))], &[]));
        assert!(bad(4, &[(0, (0, 4))], &[]));
        assert!(bad(4, &[(9, (0, 1))], &[]));
        assert!(bad(4, &[], &[(0, 2)]));
        assert!(!bad(4, &[(0, (0, 3))], &[(0, 1), (2, 1)]));
    }
}
