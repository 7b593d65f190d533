use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FloodScenario, ScenarioError};
use crate::space::{SpaceGraph, VertexId};

/// Placement attempts per planted chain before giving up.
const PLACEMENT_TRIES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Path(usize),
    /// Row-major ids, as in [`SpaceGraph::grid`].
    Grid {
        rows: usize,
        cols: usize,
    },
}

impl Layout {
    pub fn parcel_count(self) -> usize {
        match self {
            Layout::Path(n) => n,
            Layout::Grid { rows, cols } => rows * cols,
        }
    }

    fn graph(self) -> SpaceGraph {
        match self {
            Layout::Path(n) => SpaceGraph::path(n),
            Layout::Grid { rows, cols } => SpaceGraph::grid(rows, cols),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorParams {
    pub layout: Layout,
    pub levels: u32,
    /// Probability that a parcel carries an interval belief.
    pub interval_density: f64,
    /// Probability that an edge carries a flux.
    pub flux_density: f64,
    /// Spatial size of each planted conflict; `None` plants nothing.
    pub planted_conflict_size: Option<usize>,
    pub planted_count: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            layout: Layout::Path(12),
            levels: 5,
            interval_density: 0.6,
            flux_density: 0.5,
            planted_conflict_size: Some(2),
            planted_count: 1,
        }
    }
}

impl GeneratorParams {
    fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |msg: String| Err(ScenarioError::InvalidParams(msg));
        for (name, p) in [
            ("interval_density", self.interval_density),
            ("flux_density", self.flux_density),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is not in [0, 1]"));
            }
        }
        if self.layout.parcel_count() == 0 {
            return bad("at least one parcel is required".into());
        }
        if self.levels == 0 {
            return bad("at least one water level is required".into());
        }
        if let Some(d) = self.planted_conflict_size {
            if self.planted_count > 0 {
                if d == 0 {
                    return bad("planted conflicts need spatial size at least 1".into());
                }
                if self.levels < 2 {
                    return bad("planted conflicts need at least 2 water levels".into());
                }
            }
        }
        Ok(())
    }
}

/// Generates a scenario. Without planting the result is consistent: it is
/// built around hidden true levels. A planted conflict of size `d` is a
/// straight flux chain over `2d + 1` parcels whose end intervals cannot
/// both hold; its parcels carry no other belief or flux, so the chain's
/// clauses form the only conflict through them.
pub fn generate(params: &GeneratorParams, seed: u64) -> Result<FloodScenario, ScenarioError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = params.layout.graph();
    let levels = params.levels;

    let truth: BTreeMap<VertexId, u32> = g
        .vertices()
        .iter()
        .map(|&v| (v, rng.gen_range(0..levels)))
        .collect();
    let mut fluxes = BTreeSet::new();
    for (a, b) in g.edges() {
        if rng.gen_bool(params.flux_density) {
            let forward = match truth[&a].cmp(&truth[&b]) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => rng.gen_bool(0.5),
            };
            fluxes.insert(if forward { (a, b) } else { (b, a) });
        }
    }
    let mut intervals = BTreeMap::new();
    for &v in g.vertices() {
        if rng.gen_bool(params.interval_density) {
            let t = truth[&v];
            intervals.insert(v, (rng.gen_range(0..=t), rng.gen_range(t..levels)));
        }
    }

    if let Some(d) = params.planted_conflict_size {
        let mut used = BTreeSet::new();
        for n in 0..params.planted_count {
            let chain = place_chain(params.layout, d, &used, &mut rng).ok_or_else(|| {
                ScenarioError::InvalidParams(format!(
                    "no room for planted conflict {} of size {d}",
                    n + 1
                ))
            })?;
            used.extend(chain.iter().copied());
            fluxes.retain(|(a, b)| !chain.contains(a) && !chain.contains(b));
            for v in &chain {
                intervals.remove(v);
            }
            for w in chain.windows(2) {
                fluxes.insert((w[0], w[1]));
            }
            let h = rng.gen_range(0..levels - 1);
            intervals.insert(chain[0], (0, h));
            intervals.insert(chain[chain.len() - 1], (h + 1, levels - 1));
        }
    }

    FloodScenario::new(Arc::new(g), levels, intervals, fluxes)
}

/// A straight run of `2d + 1` unused parcels, ordered upstream first.
fn place_chain(
    layout: Layout,
    d: usize,
    used: &BTreeSet<VertexId>,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<VertexId>> {
    let span = 2 * d + 1;
    for _ in 0..PLACEMENT_TRIES {
        let mut chain: Vec<VertexId> = match layout {
            Layout::Path(n) => {
                if span > n {
                    return None;
                }
                let start = rng.gen_range(0..=n - span);
                (start..start + span).map(|i| i as VertexId).collect()
            }
            Layout::Grid { rows, cols } => {
                let horizontal = match (span <= cols, span <= rows) {
                    (false, false) => return None,
                    (true, false) => true,
                    (false, true) => false,
                    (true, true) => rng.gen_bool(0.5),
                };
                if horizontal {
                    let r = rng.gen_range(0..rows);
                    let c = rng.gen_range(0..=cols - span);
                    (c..c + span).map(|c| (r * cols + c) as VertexId).collect()
                } else {
                    let c = rng.gen_range(0..cols);
                    let r = rng.gen_range(0..=rows - span);
                    (r..r + span).map(|r| (r * cols + c) as VertexId).collect()
                }
            }
        };
        if chain.iter().any(|v| used.contains(v)) {
            continue;
        }
        if rng.gen_bool(0.5) {
            chain.reverse();
        }
        return Some(chain);
    }
    None
}
