//! Independent brute-force oracles and seeded instance builders shared by
//! the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spacerev_core::consistency::{Budget, Conflict};
use spacerev_core::flood::{generate, FloodScenario, GeneratorParams, Layout};
use spacerev_core::hitting_sets::HittingSet;
use spacerev_core::kb::{Atom, Clause, ClauseId, KnowledgeBase, Literal, Source};
use spacerev_core::revision::RevisionConfig;
use spacerev_core::space::SpaceGraph;

pub fn ids(xs: &[u32]) -> BTreeSet<ClauseId> {
    xs.iter().map(|&x| ClauseId(x)).collect()
}

/// All subset-minimal sets over the union of `conflicts` that meet every
/// conflict, by enumerating every subset of that union.
pub fn brute_hitting_sets(conflicts: &[Conflict]) -> BTreeSet<HittingSet> {
    let universe: Vec<ClauseId> = conflicts
        .iter()
        .flat_map(|c| c.clause_ids().iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(universe.len() <= 20, "oracle universe too large");
    let masks: Vec<u32> = conflicts
        .iter()
        .map(|c| {
            universe
                .iter()
                .enumerate()
                .filter(|(_, id)| c.contains(**id))
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let hitting: Vec<u32> = (0u32..1 << universe.len())
        .filter(|s| masks.iter().all(|m| m & s != 0))
        .collect();
    hitting
        .iter()
        .filter(|&&s| !hitting.iter().any(|&t| t != s && t & s == t))
        .map(|&s| {
            HittingSet::new(
                universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .map(|(_, &id)| id),
            )
        })
        .collect()
}

/// All minimal unsatisfiable subsets, via truth tables over the atoms and
/// a superset-closure of the satisfiable clause masks.
pub fn brute_mus(clauses: &[&Clause]) -> Vec<Conflict> {
    let n = clauses.len();
    assert!(n <= 20, "oracle clause count too large");
    let atoms: BTreeMap<&Atom, usize> = {
        let set: BTreeSet<&Atom> = clauses
            .iter()
            .flat_map(|c| c.literals().iter().map(|l| &l.atom))
            .collect();
        set.into_iter().enumerate().map(|(i, a)| (a, i)).collect()
    };
    assert!(atoms.len() <= 16, "oracle atom count too large");
    let mut sat = vec![false; 1 << n];
    for assignment in 0u32..1 << atoms.len() {
        let mask = clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                c.literals()
                    .iter()
                    .any(|l| (assignment >> atoms[&l.atom] & 1 == 1) == l.positive)
            })
            .fold(0usize, |m, (i, _)| m | 1 << i);
        sat[mask] = true;
    }
    // a subset is satisfiable iff some satisfied-clause mask contains it
    for bit in 0..n {
        for s in (0..1usize << n).rev() {
            if s >> bit & 1 == 0 && sat[s | 1 << bit] {
                sat[s] = true;
            }
        }
    }
    let mut out: Vec<Conflict> = (0..1usize << n)
        .filter(|&s| {
            !sat[s]
                && (0..n)
                    .filter(|i| s >> i & 1 == 1)
                    .all(|i| sat[s & !(1 << i)])
        })
        .map(|s| Conflict::new((0..n).filter(|i| s >> i & 1 == 1).map(|i| clauses[i].id())))
        .collect();
    out.sort();
    out
}

/// All-pairs shortest hop counts by Floyd-Warshall; ids must be `0..n`.
pub fn apsp(g: &SpaceGraph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for (a, b) in g.edges() {
        d[a as usize][b as usize] = Some(1);
        d[b as usize][a as usize] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|z| x + y < z) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Smallest radius of a ball holding every parcel of the conflict, from an
/// all-pairs table.
pub fn brute_conflict_size(conf: &Conflict, kb: &KnowledgeBase) -> Option<usize> {
    let d = apsp(kb.graph());
    let parcels: BTreeSet<u32> = conf
        .clause_ids()
        .iter()
        .flat_map(|&id| kb.get(id).unwrap().footprint())
        .collect();
    (0..d.len())
        .filter_map(|c| {
            parcels
                .iter()
                .map(|&p| d[c][p as usize])
                .try_fold(0, |acc, x| x.map(|x| acc.max(x)))
        })
        .min()
}

pub fn random_conflicts(
    rng: &mut ChaCha8Rng,
    max_conflicts: usize,
    universe: u32,
) -> Vec<Conflict> {
    let count = rng.gen_range(0..=max_conflicts);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=4.min(universe as usize));
            Conflict::new((0..size).map(|_| ClauseId(rng.gen_range(0..universe))))
        })
        .collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SpaceGraph {
    let vertices: Vec<u32> = (0..n as u32).collect();
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    SpaceGraph::new(vertices, edges).unwrap()
}

/// Random clauses over `atoms` atom names spread on a path of `parcels`
/// parcels, each clause mentioning adjacent parcels only. Roughly a
/// quarter of the clauses are protected.
pub fn random_kb(
    rng: &mut ChaCha8Rng,
    max_clauses: usize,
    atoms: usize,
    parcels: usize,
) -> KnowledgeBase {
    let g = Arc::new(SpaceGraph::path(parcels));
    let count = rng.gen_range(1..=max_clauses);
    let mut clauses = Vec::new();
    while clauses.len() < count {
        let len = rng.gen_range(1..=3);
        let anchor = rng.gen_range(0..parcels as u32);
        let lits: Vec<Literal> = (0..len)
            .map(|_| {
                let parcel = if anchor + 1 < parcels as u32 && rng.gen_bool(0.3) {
                    anchor + 1
                } else {
                    anchor
                };
                let a = rng.gen_range(0..atoms);
                let atom = Atom::new(format!("p{a}"), parcel);
                if rng.gen_bool(0.5) {
                    Literal::pos(atom)
                } else {
                    Literal::neg(atom)
                }
            })
            .collect();
        let source = if rng.gen_bool(0.25) {
            Source::S2
        } else {
            Source::S1
        };
        if let Ok(c) = Clause::new(ClauseId(clauses.len() as u32), source, lits) {
            clauses.push(c);
        }
    }
    KnowledgeBase::new(g, clauses).unwrap()
}

/// Keeps atoms to at most `atoms` distinct (name, parcel) pairs by fixing
/// every clause to parcel 0; used where the oracle enumerates atoms.
pub fn single_parcel_kb(rng: &mut ChaCha8Rng, max_clauses: usize, atoms: usize) -> KnowledgeBase {
    random_kb(rng, max_clauses, atoms, 1)
}

/// Two base blocks on a 7-parcel path (k = 3, kprime = 4) with a conflict
/// straddling their boundary: parcel 3 caps the level at 1, parcel 5
/// demands at least 2, and water flows 3 -> 4 -> 5.
pub fn straddling_instance() -> (FloodScenario, RevisionConfig) {
    let s = spacerev_core::flood::parse_scenario(
        "levels 4\n\
         v 0\nv 1\nv 2\nv 3\nv 4\nv 5\nv 6\n\
         e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n\
         interval 0 1 2\ninterval 3 0 1\ninterval 5 2 3\n\
         flux 1 0\nflux 3 4\nflux 4 5\n",
    )
    .unwrap();
    let config = RevisionConfig {
        k: 3,
        kprime: 4,
        ..Default::default()
    };
    (s, config)
}

/// A random path or grid flood instance whose planted conflicts all have
/// spatial size at most `kprime - k`.
pub fn contained_instance(rng: &mut ChaCha8Rng) -> (FloodScenario, RevisionConfig) {
    let k = rng.gen_range(1..=2);
    let q = rng.gen_range(1..=2);
    let d = rng.gen_range(1..=q);
    let layout = if rng.gen_bool(0.5) {
        Layout::Path(rng.gen_range(2 * d + 1..=24))
    } else {
        Layout::Grid {
            rows: rng.gen_range(2 * d + 1..=5),
            cols: rng.gen_range(2..=5),
        }
    };
    let params = GeneratorParams {
        layout,
        levels: rng.gen_range(2..=4),
        interval_density: rng.gen_range(0.2..0.8),
        flux_density: rng.gen_range(0.2..0.8),
        planted_conflict_size: Some(d),
        planted_count: rng.gen_range(0..=2),
    };
    let seed = rng.gen();
    // a second chain may not fit; fall back to one
    let s = generate(&params, seed)
        .or_else(|_| {
            generate(
                &GeneratorParams {
                    planted_count: 1,
                    ..params
                },
                seed,
            )
        })
        .unwrap();
    let config = RevisionConfig {
        k,
        kprime: k + q,
        budget: Budget::with_cardinality(2 * q + 2),
        ..Default::default()
    };
    (s, config)
}

/// One planted conflict of spatial size 3 with k = 1, kprime = 2.
pub fn wide_instance(seed: u64) -> (FloodScenario, RevisionConfig) {
    let params = GeneratorParams {
        layout: Layout::Path(9),
        levels: 3,
        interval_density: 0.5,
        flux_density: 0.5,
        planted_conflict_size: Some(3),
        planted_count: 1,
    };
    let config = RevisionConfig {
        k: 1,
        kprime: 2,
        budget: Budget::with_cardinality(8),
        ..Default::default()
    };
    (generate(&params, seed).unwrap(), config)
}
