use std::fmt::Write as _;
use std::time::{Duration, Instant};

use spacerev_core::consistency::{Budget, ConsistencyError};
use spacerev_core::flood::{compile, generate, GeneratorParams, Layout};
use spacerev_core::revision::{contained_revision, global_rdr, RevisionConfig, RevisionError};

use crate::args::{BenchArgs, LayoutArg};
use crate::{scenario_params, CliError};

pub const BENCH_HEADER: &str =
    "d\tm\tk\tkprime\tt_global\tt_contained\tnodes_global\tnodes_contained\tblocks\tr_predicted\tr_measured";

/// One sweep point; times are minima over the repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub d: usize,
    pub m: usize,
    pub k: usize,
    pub kprime: usize,
    /// `None` once the global engine exceeded its budget.
    pub t_global: Option<Duration>,
    pub t_contained: Duration,
    pub nodes_global: Option<usize>,
    pub nodes_contained: usize,
    pub blocks: usize,
}

impl BenchRow {
    /// Predicted speedup `d^2 / m` of the contained procedure.
    pub fn r_predicted(&self) -> f64 {
        (self.d * self.d) as f64 / self.m as f64
    }

    pub fn r_measured(&self) -> Option<f64> {
        self.t_global
            .map(|g| g.as_secs_f64() / self.t_contained.as_secs_f64().max(f64::MIN_POSITIVE))
    }
}

pub fn bench_tsv(rows: &[BenchRow]) -> String {
    let mut out = format!("{BENCH_HEADER}\n");
    for r in rows {
        let na = || "NA".to_string();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.6}\t{}\t{}\t{}\t{:.3}\t{}",
            r.d,
            r.m,
            r.k,
            r.kprime,
            r.t_global
                .map_or_else(na, |t| format!("{:.6}", t.as_secs_f64())),
            r.t_contained.as_secs_f64(),
            r.nodes_global.map_or_else(na, |n| n.to_string()),
            r.nodes_contained,
            r.blocks,
            r.r_predicted(),
            r.r_measured().map_or_else(na, |x| format!("{x:.3}")),
        )
        .unwrap();
    }
    out
}

/// Sweeps scenario size at fixed block radii. On a path the parcel count
/// is `blocks * (k + 1)`, which is exactly that many base blocks under
/// lowest-id seeding; on a grid the column count grows the same way and
/// the real block count is reported.
pub fn cmd_bench(args: &BenchArgs) -> Result<Vec<BenchRow>, CliError> {
    if args.reps == 0 || args.step == 0 || args.min_blocks == 0 || args.min_blocks > args.max_blocks
    {
        return Err(CliError::input(
            "need reps >= 1, step >= 1 and 1 <= min-blocks <= max-blocks",
        ));
    }
    let config = RevisionConfig {
        k: args.k,
        kprime: args.kprime,
        k_r: args.kr,
        budget: Budget::with_cardinality(args.budget_card),
        ..Default::default()
    };
    let mut rows = Vec::new();
    let mut global_alive = true;
    for blocks in (args.min_blocks..=args.max_blocks).step_by(args.step) {
        let span = blocks * (args.k + 1);
        let layout = match args.scenario.layout {
            LayoutArg::Path => Layout::Path(span),
            LayoutArg::Grid => Layout::Grid {
                rows: args.rows,
                cols: span,
            },
        };
        let params = GeneratorParams {
            layout,
            ..scenario_params(&args.scenario)
        };
        let s = generate(&params, args.seed).map_err(|e| CliError::input(e.to_string()))?;
        let kb = compile(&s);

        let mut t_contained = Duration::MAX;
        let mut local = None;
        for _ in 0..args.reps {
            let start = Instant::now();
            let r = contained_revision(&kb, s.graph(), &config).map_err(CliError::from)?;
            t_contained = t_contained.min(start.elapsed());
            local = Some(r);
        }
        let local = local.expect("at least one repetition");

        let (mut t_global, mut nodes_global) = (None, None);
        if global_alive {
            let mut best = Duration::MAX;
            for _ in 0..args.reps {
                let start = Instant::now();
                match global_rdr(&kb, &config.budget, config.k_r) {
                    Ok(r) => {
                        best = best.min(start.elapsed());
                        nodes_global = Some(r.diagnostics.hs.nodes_expanded);
                    }
                    Err(RevisionError::Consistency(ConsistencyError::BudgetExceeded(_))) => {
                        global_alive = false;
                        break;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            if global_alive {
                t_global = Some(best);
            }
        }
        rows.push(BenchRow {
            d: kb.len(),
            m: s.graph().vertex_count(),
            k: args.k,
            kprime: args.kprime,
            t_global,
            t_contained,
            nodes_global,
            nodes_contained: local.diagnostics.hs.nodes_expanded,
            blocks: local.diagnostics.base.as_ref().map_or(0, |b| b.len()),
        });
    }
    Ok(rows)
}
