//! Shifted blockings: alternative partitions whose block-plus-cover
//! windows catch conflicts that straddle the base blocking's boundaries.
//!
//! Shifted blocks are centered on their seeds. On a path the seeds sit
//! `2k + 1` apart, so every interior block is a full k-neighborhood and its
//! window is the whole kprime-neighborhood of the seed. On a grid the seeds
//! form the lattice spanned by `(k, k+1)` and `(k+1, -k)`, whose radius-k
//! diamonds tile the plane. Vertices left over near the border are picked
//! up by lowest-id seeding.

use std::collections::BTreeSet;

use super::partition::{build, Blocking, BlockingOrigin};
use super::{Shape, SpaceGraph};

/// The shift family for `base`: `2q` blockings on paths, `4q²` on grids and
/// `2q` re-seeded blockings on any other graph, with `q = kprime - k`.
pub fn shift_blockings(g: &SpaceGraph, base: &Blocking) -> Vec<Blocking> {
    let (k, kprime) = (base.k(), base.kprime());
    if kprime <= k || g.is_empty() {
        return Vec::new();
    }
    let q = kprime - k;
    let lowest = |u: &BTreeSet<usize>, _: usize| *u.first().unwrap();
    match g.shape() {
        Shape::Path(order) => {
            let stride = 2 * k + 1;
            (1..=2 * q)
                .map(|j| {
                    let chain: Vec<usize> = order
                        .iter()
                        .copied()
                        .skip(j % stride)
                        .step_by(stride)
                        .collect();
                    build(g, k, kprime, &chain, BlockingOrigin::PathShift(j), lowest)
                })
                .collect()
        }
        &Shape::Grid { rows, cols } => {
            let mut out = Vec::with_capacity(4 * q * q);
            for dx in 0..2 * q {
                for dy in 0..2 * q {
                    let chain = lattice_seeds(rows, cols, k, dx, dy);
                    out.push(build(
                        g,
                        k,
                        kprime,
                        &chain,
                        BlockingOrigin::GridShift(dx, dy),
                        lowest,
                    ));
                }
            }
            out
        }
        Shape::General => {
            let base_seeds: Vec<usize> = base
                .seeds()
                .iter()
                .map(|&s| g.pos(s).expect("base blocking belongs to g"))
                .collect();
            (1..=2 * q)
                .map(|j| {
                    build(
                        g,
                        k,
                        kprime,
                        &[],
                        BlockingOrigin::Reseeded(j),
                        |unassigned, i| {
                            let far = base_seeds.get(i).and_then(|&s| {
                                let dist = g.bfs(s, usize::MAX);
                                unassigned
                                    .iter()
                                    .copied()
                                    .find(|&p| dist[p].is_none_or(|d| d >= j))
                            });
                            far.unwrap_or_else(|| *unassigned.first().unwrap())
                        },
                    )
                })
                .collect()
        }
    }
}

/// Grid positions of the translated diamond lattice, sorted.
fn lattice_seeds(rows: usize, cols: usize, k: usize, dx: usize, dy: usize) -> Vec<usize> {
    let (k, rows_i, cols_i) = (k as i64, rows as i64, cols as i64);
    // The lattice has determinant 2k^2 + 2k + 1; this range of coefficients
    // reaches every grid cell.
    let reach = rows_i + cols_i + 2;
    let mut seeds = Vec::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            let x = a * k + b * (k + 1) + dx as i64;
            let y = a * (k + 1) - b * k + dy as i64;
            if (0..cols_i).contains(&x) && (0..rows_i).contains(&y) {
                seeds.push((y * cols_i + x) as usize);
            }
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    seeds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{partition, SeedPolicy};

    #[test]
    fn path_family_size() {
        let g = SpaceGraph::path(9);
        let base = partition(&g, 1, 2, SeedPolicy::Deterministic).unwrap();
        let shifts = shift_blockings(&g, &base);
        assert_eq!(shifts.len(), 2);
        assert_eq!(shifts[0].origin(), BlockingOrigin::PathShift(1));
        assert_eq!(shifts[1].origin(), BlockingOrigin::PathShift(2));
        for s in &shifts {
            s.verify(&g).unwrap();
        }
    }

    #[test]
    fn grid_family_size() {
        let g = SpaceGraph::grid(6, 6);
        let base = partition(&g, 1, 2, SeedPolicy::Deterministic).unwrap();
        let shifts = shift_blockings(&g, &base);
        assert_eq!(shifts.len(), 4);
        for s in &shifts {
            s.verify(&g).unwrap();
        }
        let base = partition(&g, 1, 3, SeedPolicy::Deterministic).unwrap();
        assert_eq!(shift_blockings(&g, &base).len(), 16);
    }

    #[test]
    fn general_family_is_reseeded() {
        let g = SpaceGraph::new(0..5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let base = partition(&g, 0, 2, SeedPolicy::Deterministic).unwrap();
        let shifts = shift_blockings(&g, &base);
        assert_eq!(shifts.len(), 4);
        for (j, s) in shifts.iter().enumerate() {
            assert_eq!(s.origin(), BlockingOrigin::Reseeded(j + 1));
            s.verify(&g).unwrap();
        }
    }

    #[test]
    fn centered_path_blocks_are_full() {
        let g = SpaceGraph::path(20);
        let base = partition(&g, 2, 4, SeedPolicy::Deterministic).unwrap();
        let shift = &shift_blockings(&g, &base)[0];
        // seeds 1, 6, 11, 16 first, then leftovers
        assert_eq!(&shift.seeds()[..4], &[1, 6, 11, 16]);
        assert_eq!(shift.window(1).unwrap(), (2..=10).collect());
    }
}
