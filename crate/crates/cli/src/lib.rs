//! Command-line front-end: ingest a graph and clauses or a flood scenario,
//! run contained or global revision, compare the two, and benchmark them.
//!
//! Exit codes: 0 success, 1 invalid input, 2 unrepairable conflict, 3
//! budget exceeded, 4 unexplained mismatch between the engines.

pub mod args;
mod bench;
mod report;

use std::fs;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use spacerev_core::consistency::{Budget, ConsistencyError};
use spacerev_core::flood::{
    compile, generate, parse_scenario, write_scenario, GeneratorParams, Layout,
};
use spacerev_core::kb::{parse_clauses, KnowledgeBase};
use spacerev_core::revision::{
    compare, contained_revision, RevisionConfig, RevisionError, Verdict,
};
use spacerev_core::space::{parse_graph, SeedPolicy, SpaceGraph};
use spacerev_core::text::ParseError;

use args::{
    Cli, Command, EngineArgs, Format, GenerateArgs, InputArgs, LayoutArg, RunArgs, ScenarioArgs,
    SeedPolicyArg,
};

pub use bench::{bench_tsv, cmd_bench, BenchRow, BENCH_HEADER};
pub use report::{RunReport, TSV_HEADER};

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const UNREPAIRABLE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const MISMATCH: i32 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: exit::INPUT,
            message: message.into(),
        }
    }
}

impl From<RevisionError> for CliError {
    fn from(e: RevisionError) -> Self {
        let code = match &e {
            RevisionError::UnrepairableConflict(_) => exit::UNREPAIRABLE,
            RevisionError::Consistency(ConsistencyError::BudgetExceeded(_)) => exit::BUDGET,
            _ => exit::INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: Cli) -> Outcome {
    let mut out = Outcome {
        code: exit::OK,
        stdout: String::new(),
        stderr: String::new(),
    };
    let result = match &cli.command {
        Command::Revise(a) => cmd_revise(a).and_then(|(r, code)| emit(a, &r, code, &mut out)),
        Command::Compare(a) => cmd_compare(a).and_then(|(r, code)| emit(a, &r, code, &mut out)),
        Command::Bench(a) => cmd_bench(a).and_then(|rows| {
            let tsv = bench_tsv(&rows);
            match &a.report {
                Some(path) => write_file(path, &tsv),
                None => {
                    out.stdout = tsv;
                    Ok(())
                }
            }
        }),
        Command::Generate(a) => cmd_generate(a).and_then(|text| match &a.out {
            Some(path) => write_file(path, &text),
            None => {
                out.stdout = text;
                Ok(())
            }
        }),
    };
    if let Err(e) = result {
        out.code = e.code;
        out.stderr.push_str(&format!("error: {}\n", e.message));
    }
    out
}

fn emit(args: &RunArgs, report: &RunReport, code: i32, out: &mut Outcome) -> Result<(), CliError> {
    out.code = code;
    match args.format {
        Format::Text => out.stdout = report.text(),
        Format::Tsv => {
            out.stdout = report.tsv();
            for w in &report.warnings {
                out.stderr.push_str(&format!("warning: {w}\n"));
            }
        }
    }
    if let Some(path) = &args.report {
        write_file(path, &report.tsv())?;
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> CliError {
    CliError::input(format!("{}: {e}", path.display()))
}

/// Loads the instance named by the input flags.
pub fn load_instance(input: &InputArgs) -> Result<(Arc<SpaceGraph>, KnowledgeBase), CliError> {
    match (&input.scenario, &input.graph, &input.clauses) {
        (Some(path), None, None) => {
            let s = parse_scenario(&read_file(path)?).map_err(|e| located(path, e))?;
            let kb = compile(&s);
            Ok((Arc::clone(s.graph()), kb))
        }
        (None, Some(gp), Some(cp)) => {
            let g = Arc::new(parse_graph(&read_file(gp)?).map_err(|e| located(gp, e))?);
            let kb = parse_clauses(&read_file(cp)?, Arc::clone(&g)).map_err(|e| located(cp, e))?;
            Ok((g, kb))
        }
        _ => Err(CliError::input(
            "give either --scenario or both --graph and --clauses",
        )),
    }
}

pub fn revision_config(e: &EngineArgs) -> RevisionConfig {
    RevisionConfig {
        k: e.k,
        kprime: e.kprime,
        k_r: e.kr,
        seed_policy: match e.seed_policy {
            SeedPolicyArg::Det => SeedPolicy::Deterministic,
            SeedPolicyArg::Random => SeedPolicy::Random(e.seed),
        },
        budget: Budget::with_cardinality(e.budget_card),
        jobs: e.jobs.max(1),
    }
}

pub fn cmd_revise(args: &RunArgs) -> Result<(RunReport, i32), CliError> {
    let (g, kb) = load_instance(&args.input)?;
    let config = revision_config(&args.engine);
    let r = contained_revision(&kb, &g, &config)?;
    let report = RunReport::from_revision(
        "revise",
        &r,
        kb.len(),
        g.vertex_count(),
        config.k,
        config.kprime,
    );
    Ok((report, exit::OK))
}

/// Exit code 0 when the engines agree or when their disagreement is
/// explained by a conflict wider than the cover thickness.
pub fn cmd_compare(args: &RunArgs) -> Result<(RunReport, i32), CliError> {
    let (g, kb) = load_instance(&args.input)?;
    let config = revision_config(&args.engine);
    let cmp = compare(&kb, &g, &config)?;
    let code = match cmp.verdict {
        Verdict::Equal | Verdict::Divergent { .. } => exit::OK,
        Verdict::Mismatch => exit::MISMATCH,
    };
    let report =
        RunReport::from_comparison(&cmp, kb.len(), g.vertex_count(), config.k, config.kprime);
    Ok((report, code))
}

pub(crate) fn scenario_params(a: &ScenarioArgs) -> GeneratorParams {
    GeneratorParams {
        layout: Layout::Path(1),
        levels: a.levels,
        interval_density: a.interval_density,
        flux_density: a.flux_density,
        planted_conflict_size: (a.planted_size > 0).then_some(a.planted_size),
        planted_count: a.planted_count,
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<String, CliError> {
    let layout = match args.scenario.layout {
        LayoutArg::Path => Layout::Path(args.parcels),
        LayoutArg::Grid => Layout::Grid {
            rows: args.rows,
            cols: args.parcels,
        },
    };
    let params = GeneratorParams {
        layout,
        ..scenario_params(&args.scenario)
    };
    let s = generate(&params, args.seed).map_err(|e| CliError::input(e.to_string()))?;
    Ok(write_scenario(&s))
}
