//! Block-contained revision.
//!
//! The base pass walks the blocks of a k-neighborhood partition. Each block
//! looks for minimal conflicts among the clauses of its block-plus-cover
//! window, minus the clauses owned by blocks already processed. Conflicts
//! made only of cover clauses are deferred to the block that owns them.
//! Shift passes then rerun detection over the full windows of every
//! shifted blocking to catch conflicts that straddle base boundaries. The
//! hitting sets of each batch of new conflicts are folded into the running
//! global set by minimal union.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use super::{
    check_h0, BlockTrace, Regime, RevisionConfig, RevisionDiagnostics, RevisionError,
    RevisionResult,
};
use crate::consistency::{
    max_conflict_size, minimal_conflicts, Budget, Conflict, ConsistencyError,
};
use crate::hitting_sets::{
    combine_min_union, hs_tree_restricted, prefer, HittingSet, MinCardinalityLex,
};
use crate::kb::{classify, Clause, ClauseClass, ClauseId, KnowledgeBase};
use crate::space::{partition, shift_blockings, Blocking, BlockingOrigin, SpaceGraph};

/// Conflicts already computed for a given working set.
type WindowCache = HashMap<Vec<ClauseId>, Vec<Conflict>>;

struct LocalRun {
    working: Vec<ClauseId>,
    removed: Vec<ClauseId>,
    conflicts: Result<Vec<Conflict>, ConsistencyError>,
    skipped: bool,
}

/// Running state of the fold over local results.
struct Fold<'kb> {
    kb: &'kb KnowledgeBase,
    hglobal: BTreeSet<HittingSet>,
    processed: BTreeSet<Conflict>,
    accepted: Vec<Conflict>,
    diag: RevisionDiagnostics,
    hs_time: Duration,
}

impl Fold<'_> {
    /// Folds a batch of new conflicts into the global hitting sets.
    fn absorb(&mut self, batch: Vec<Conflict>) -> Result<usize, RevisionError> {
        let fresh: Vec<Conflict> = batch
            .into_iter()
            .filter(|c| !self.processed.contains(c))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if fresh.is_empty() {
            return Ok(0);
        }
        let start = Instant::now();
        let kb = self.kb;
        let (local, d) = hs_tree_restricted(&fresh, |id| !kb.is_protected(id));
        self.diag.hs += d;
        if local.is_empty() {
            let culprit = fresh
                .iter()
                .find(|c| c.clause_ids().iter().all(|&id| kb.is_protected(id)))
                .unwrap_or(&fresh[0])
                .clone();
            return Err(RevisionError::UnrepairableConflict(culprit));
        }
        self.hglobal = combine_min_union(&[std::mem::take(&mut self.hglobal), local]);
        self.hs_time += start.elapsed();
        let n = fresh.len();
        for c in fresh {
            self.processed.insert(c.clone());
            self.accepted.push(c);
        }
        Ok(n)
    }
}

/// Block-contained revision of `kb` over `g`.
///
/// The result is a repair of every conflict that fits inside some block
/// window; conflicts wider than every window go unseen, and the revised
/// base is not checked for global consistency.
pub fn contained_revision(
    kb: &KnowledgeBase,
    g: &SpaceGraph,
    config: &RevisionConfig,
) -> Result<RevisionResult, RevisionError> {
    let start = Instant::now();
    let base = partition(g, config.k, config.kprime, config.seed_policy)?;
    let shifts = shift_blockings(g, &base);
    let partition_time = start.elapsed();

    let mut fold = Fold {
        kb,
        hglobal: BTreeSet::from([HittingSet::empty()]),
        processed: BTreeSet::new(),
        accepted: Vec::new(),
        diag: RevisionDiagnostics::default(),
        hs_time: Duration::ZERO,
    };
    let mut seen_windows: WindowCache = HashMap::new();
    let mut warnings = Vec::new();

    // base pass
    let base_start = Instant::now();
    let owner = owning_blocks(kb, &base);
    let runs = run_blocks(
        kb,
        &base,
        Some(&owner),
        &mut seen_windows,
        &config.budget,
        config.jobs,
    );
    let mut regimes = BTreeMap::new();
    let mut deferred: BTreeSet<Conflict> = BTreeSet::new();
    for (i, run) in runs.into_iter().enumerate() {
        fold.diag.block_traces.push(BlockTrace {
            block: i,
            working: run.working,
            removed: run.removed,
        });
        if !run.skipped {
            fold.diag.local_runs += 1;
        }
        let conflicts = run.conflicts?;
        let mut claimed = Vec::new();
        for c in conflicts {
            let classes = classes_at(kb, &c, &base, i);
            if classes.iter().all(|&cl| cl == ClauseClass::QClause) {
                deferred.insert(c);
            } else {
                claimed.push((c, classes));
            }
        }
        regimes.insert(i, regime_of(&claimed));
        fold.diag.base_pass_conflicts +=
            fold.absorb(claimed.into_iter().map(|(c, _)| c).collect())?;
    }
    let base_time = base_start.elapsed();

    // shift passes, full windows
    let shift_start = Instant::now();
    let mut heuristic = false;
    for blocking in &shifts {
        heuristic |= matches!(blocking.origin(), BlockingOrigin::Reseeded(_));
        let runs = run_blocks(
            kb,
            blocking,
            None,
            &mut seen_windows,
            &config.budget,
            config.jobs,
        );
        let mut contributed = 0;
        for run in runs {
            if !run.skipped {
                fold.diag.local_runs += 1;
            }
            contributed += fold.absorb(run.conflicts?)?;
        }
        fold.diag.shift_pass_conflicts += contributed;
        if contributed > 0 {
            fold.diag.shifts_contributing += 1;
        }
    }
    let survivors: Vec<Conflict> = deferred
        .into_iter()
        .filter(|c| !fold.processed.contains(c))
        .collect();
    if !survivors.is_empty() {
        warnings.push(format!(
            "{} cover-only conflict(s) were claimed by no block; repaired anyway",
            survivors.len()
        ));
        fold.diag.unclaimed_deferred = survivors.len();
        fold.absorb(survivors)?;
    }
    let shift_time = shift_start.elapsed();
    if heuristic {
        warnings.push(
            "graph is neither a path nor a grid: shifted blockings use the re-seeding heuristic"
                .to_string(),
        );
    }

    let chosen = prefer(&fold.hglobal, &MinCardinalityLex).expect("hglobal is never empty");
    let h0 = check_h0(max_conflict_size(&fold.accepted, kb)?, config.k_r);
    if !h0.holds {
        warnings.push(format!("tractability gate fails: {h0}"));
    }

    let mut diag = fold.diag;
    diag.conflicts = fold.accepted;
    diag.conflicts.sort();
    diag.base = Some(base);
    diag.timings.partition = partition_time;
    diag.timings.base_pass = base_time;
    diag.timings.shift_pass = shift_time;
    diag.timings.hitting_sets = fold.hs_time;
    diag.timings.total = start.elapsed();
    Ok(RevisionResult {
        revised_kb: kb.without(chosen.clause_ids()),
        global_hitting_sets: fold.hglobal,
        chosen,
        regime_per_block: regimes,
        shifts_used: shifts.len(),
        h0,
        conjecture_verified: false,
        warnings,
        diagnostics: diag,
    })
}

/// For each clause (by index), the block containing its whole footprint.
fn owning_blocks(kb: &KnowledgeBase, blocking: &Blocking) -> Vec<Option<usize>> {
    kb.clauses()
        .iter()
        .map(|c| {
            let mut blocks = c
                .literals()
                .iter()
                .map(|l| blocking.block_of(l.atom.parcel));
            let first = blocks.next().flatten()?;
            blocks.all(|b| b == Some(first)).then_some(first)
        })
        .collect()
}

/// Working clauses, base-pass removals and cached conflicts of one window.
type Plan<'kb> = (Vec<&'kb Clause>, Vec<ClauseId>, Option<Vec<Conflict>>);

fn run_blocks(
    kb: &KnowledgeBase,
    blocking: &Blocking,
    owner: Option<&[Option<usize>]>,
    cache: &mut WindowCache,
    budget: &Budget,
    jobs: usize,
) -> Vec<LocalRun> {
    let index: BTreeMap<ClauseId, usize> = kb
        .clauses()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id(), i))
        .collect();
    let mut plans: Vec<Plan<'_>> = Vec::with_capacity(blocking.len());
    for i in 0..blocking.len() {
        let window = blocking.window(i).expect("index in range");
        let mut working = Vec::new();
        let mut removed = Vec::new();
        for c in kb.clauses_within(&window) {
            let owned_earlier = owner
                .map(|o| matches!(o[index[&c.id()]], Some(j) if j < i))
                .unwrap_or(false);
            if owned_earlier {
                removed.push(c.id());
            } else {
                working.push(c);
            }
        }
        let key: Vec<ClauseId> = working.iter().map(|c| c.id()).collect();
        let cached = cache.get(&key).cloned();
        plans.push((working, removed, cached));
    }
    let results = parallel_map(&plans, jobs, |(working, _, cached)| match cached {
        Some(found) => Ok(found.clone()),
        None if working.is_empty() => Ok(Vec::new()),
        None => minimal_conflicts(working, budget),
    });
    plans
        .into_iter()
        .zip(results)
        .map(|((working, removed, cached), conflicts)| {
            let working: Vec<ClauseId> = working.iter().map(|c| c.id()).collect();
            if let Ok(found) = &conflicts {
                cache
                    .entry(working.clone())
                    .or_insert_with(|| found.clone());
            }
            LocalRun {
                working,
                removed,
                conflicts,
                skipped: cached.is_some(),
            }
        })
        .collect()
}

fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn classes_at(kb: &KnowledgeBase, c: &Conflict, blocking: &Blocking, i: usize) -> Vec<ClauseClass> {
    c.clause_ids()
        .iter()
        .map(|&id| {
            let clause = kb.get(id).expect("conflicts come from the base");
            classify(clause, blocking, i).expect("index in range")
        })
        .collect()
}

fn regime_of(claimed: &[(Conflict, Vec<ClauseClass>)]) -> Regime {
    let crossing: Vec<&Conflict> = claimed
        .iter()
        .filter(|(_, cls)| cls.contains(&ClauseClass::CClause))
        .map(|(c, _)| c)
        .collect();
    if crossing.is_empty() {
        return Regime::SpaceIndependent;
    }
    let block_only: BTreeSet<ClauseId> = claimed
        .iter()
        .filter(|(_, cls)| cls.iter().all(|&cl| cl == ClauseClass::BClause))
        .flat_map(|(c, _)| c.clause_ids().iter().copied())
        .collect();
    if crossing
        .iter()
        .all(|c| c.clause_ids().iter().all(|id| !block_only.contains(id)))
    {
        Regime::InfoIndependent
    } else {
        Regime::Dependent
    }
}
