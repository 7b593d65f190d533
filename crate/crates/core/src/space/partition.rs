use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GraphError, SpaceGraph, VertexId};

/// How the next seed vertex is picked among the unassigned vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedPolicy {
    /// Lowest-id unassigned vertex.
    #[default]
    Deterministic,
    /// Uniform choice among unassigned vertices, from a seeded generator.
    Random(u64),
}

/// Where a blocking came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockingOrigin {
    Base,
    /// Centered seed chain along a path, starting at the given offset.
    PathShift(usize),
    /// Diamond-lattice seeds on a grid, translated by `(dx, dy)`.
    GridShift(usize, usize),
    /// Re-seeded partition for graphs that are neither paths nor grids.
    Reseeded(usize),
}

/// A partition of the vertices into blocks, each with the q-containment
/// (cover) of its seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocking {
    k: usize,
    kprime: usize,
    blocks: Vec<BTreeSet<VertexId>>,
    seeds: Vec<VertexId>,
    covers: Vec<BTreeSet<VertexId>>,
    block_of: BTreeMap<VertexId, usize>,
    origin: BlockingOrigin,
}

impl Blocking {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kprime(&self) -> usize {
        self.kprime
    }

    /// Cover thickness `kprime - k`.
    pub fn thickness(&self) -> usize {
        self.kprime - self.k
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[BTreeSet<VertexId>] {
        &self.blocks
    }

    pub fn covers(&self) -> &[BTreeSet<VertexId>] {
        &self.covers
    }

    pub fn seeds(&self) -> &[VertexId] {
        &self.seeds
    }

    pub fn block(&self, i: usize) -> Option<&BTreeSet<VertexId>> {
        self.blocks.get(i)
    }

    pub fn cover(&self, i: usize) -> Option<&BTreeSet<VertexId>> {
        self.covers.get(i)
    }

    /// Index of the block holding `v`.
    pub fn block_of(&self, v: VertexId) -> Option<usize> {
        self.block_of.get(&v).copied()
    }

    pub fn origin(&self) -> BlockingOrigin {
        self.origin
    }

    /// Block `i` together with its cover.
    pub fn window(&self, i: usize) -> Option<BTreeSet<VertexId>> {
        Some(
            self.blocks
                .get(i)?
                .union(&self.covers[i])
                .copied()
                .collect(),
        )
    }

    /// Re-derives every structural invariant against `g`.
    pub fn verify(&self, g: &SpaceGraph) -> Result<(), String> {
        if self.kprime <= self.k {
            return Err(format!("kprime {} <= k {}", self.kprime, self.k));
        }
        let mut covered = BTreeSet::new();
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(format!("block {i} is empty"));
            }
            for &v in block {
                if !covered.insert(v) {
                    return Err(format!("vertex {v} assigned twice"));
                }
            }
            let inner = g
                .k_neighborhood(self.seeds[i], self.k)
                .map_err(|e| e.to_string())?;
            let outer = g
                .k_neighborhood(self.seeds[i], self.kprime)
                .map_err(|e| e.to_string())?;
            if !block.is_subset(&inner) {
                return Err(format!("block {i} leaves the k-neighborhood of its seed"));
            }
            let annulus: BTreeSet<VertexId> = outer.difference(&inner).copied().collect();
            if annulus != self.covers[i] {
                return Err(format!("cover {i} is not the seed's q-containment"));
            }
            if !block.is_disjoint(&self.covers[i]) {
                return Err(format!("block {i} meets its cover"));
            }
        }
        let all: BTreeSet<VertexId> = g.vertices().iter().copied().collect();
        if covered != all {
            return Err("blocks do not cover the graph".into());
        }
        Ok(())
    }
}

/// Splits the graph into k-neighborhood blocks. Each block is the seed's
/// k-neighborhood minus already-assigned vertices; its cover is the seed's
/// full-graph annulus between radii `k` and `kprime`.
pub fn partition(
    g: &SpaceGraph,
    k: usize,
    kprime: usize,
    policy: SeedPolicy,
) -> Result<Blocking, GraphError> {
    check_radii(g, k, kprime)?;
    let mut rng = match policy {
        SeedPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        SeedPolicy::Deterministic => None,
    };
    Ok(build(
        g,
        k,
        kprime,
        &[],
        BlockingOrigin::Base,
        |unassigned, _| match rng.as_mut() {
            Some(rng) => {
                let idx = rng.gen_range(0..unassigned.len());
                *unassigned.iter().nth(idx).unwrap()
            }
            None => *unassigned.first().unwrap(),
        },
    ))
}

pub(super) fn check_radii(g: &SpaceGraph, k: usize, kprime: usize) -> Result<(), GraphError> {
    if kprime <= k {
        return Err(GraphError::InvalidRadii { k, kprime });
    }
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    Ok(())
}

/// Core partition loop over positions. Seeds from `chain` are used first
/// (skipping any already assigned); afterwards `pick` chooses among the
/// unassigned positions, receiving the index of the block being built.
pub(super) fn build(
    g: &SpaceGraph,
    k: usize,
    kprime: usize,
    chain: &[usize],
    origin: BlockingOrigin,
    mut pick: impl FnMut(&BTreeSet<usize>, usize) -> usize,
) -> Blocking {
    let mut unassigned: BTreeSet<usize> = (0..g.vertex_count()).collect();
    let mut chain = chain.iter().copied();
    let mut blocks = Vec::new();
    let mut seeds = Vec::new();
    let mut covers = Vec::new();
    let mut block_of = BTreeMap::new();
    while !unassigned.is_empty() {
        let seed = chain
            .by_ref()
            .find(|p| unassigned.contains(p))
            .unwrap_or_else(|| pick(&unassigned, blocks.len()));
        let dist = g.bfs(seed, kprime);
        let mut block = BTreeSet::new();
        let mut cover = BTreeSet::new();
        for (p, d) in dist.iter().enumerate() {
            match d {
                Some(d) if *d <= k => {
                    if unassigned.remove(&p) {
                        block.insert(g.id(p));
                        block_of.insert(g.id(p), blocks.len());
                    }
                }
                Some(_) => {
                    cover.insert(g.id(p));
                }
                None => {}
            }
        }
        seeds.push(g.id(seed));
        blocks.push(block);
        covers.push(cover);
    }
    Blocking {
        k,
        kprime,
        blocks,
        seeds,
        covers,
        block_of,
        origin,
    }
}
