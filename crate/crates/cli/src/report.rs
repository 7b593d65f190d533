use std::fmt::Write as _;
use std::time::Duration;

use spacerev_core::hitting_sets::HittingSet;
use spacerev_core::revision::{Comparison, H0Report, PhaseTimings, RevisionResult};

/// Summary of one revise or compare run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: &'static str,
    /// Clause count of the ingested base.
    pub clauses: usize,
    /// Parcel count of the ingested graph.
    pub parcels: usize,
    pub k: usize,
    pub kprime: usize,
    pub blocks: usize,
    pub conflicts: usize,
    pub hitting_sets: usize,
    pub chosen: HittingSet,
    /// Blocks per regime: space-independent, info-independent, dependent.
    pub regimes: [usize; 3],
    pub shifts_used: usize,
    pub h0: H0Report,
    pub nodes_expanded: usize,
    pub timings: PhaseTimings,
    pub verdict: Option<String>,
    pub conjecture_verified: bool,
    pub global_time: Option<Duration>,
    pub warnings: Vec<String>,
}

pub const TSV_HEADER: &str = "command\td\tm\tk\tkprime\tblocks\tconflicts\thitting_sets\tchosen\tspace_independent\tinfo_independent\tdependent\tshifts_used\td_c\tk_r\th0\tnodes_expanded\tverdict\tconjecture_verified";

impl RunReport {
    pub(crate) fn from_revision(
        command: &'static str,
        r: &RevisionResult,
        clauses: usize,
        parcels: usize,
        k: usize,
        kprime: usize,
    ) -> Self {
        Self {
            command,
            clauses,
            parcels,
            k,
            kprime,
            blocks: r.diagnostics.base.as_ref().map_or(0, |b| b.len()),
            conflicts: r.diagnostics.conflicts.len(),
            hitting_sets: r.global_hitting_sets.len(),
            chosen: r.chosen.clone(),
            regimes: r.regime_histogram(),
            shifts_used: r.shifts_used,
            h0: r.h0,
            nodes_expanded: r.diagnostics.hs.nodes_expanded,
            timings: r.diagnostics.timings,
            verdict: None,
            conjecture_verified: r.conjecture_verified,
            global_time: None,
            warnings: r.warnings.clone(),
        }
    }

    pub(crate) fn from_comparison(
        cmp: &Comparison,
        clauses: usize,
        parcels: usize,
        k: usize,
        kprime: usize,
    ) -> Self {
        let mut report =
            Self::from_revision("compare", &cmp.contained, clauses, parcels, k, kprime);
        report.verdict = Some(cmp.verdict.to_string());
        report.global_time = Some(cmp.global.diagnostics.timings.total);
        report
    }

    /// One header row and one data row; contains no timings so that equal
    /// inputs give byte-identical reports.
    pub fn tsv(&self) -> String {
        let row = [
            self.command.to_string(),
            self.clauses.to_string(),
            self.parcels.to_string(),
            self.k.to_string(),
            self.kprime.to_string(),
            self.blocks.to_string(),
            self.conflicts.to_string(),
            self.hitting_sets.to_string(),
            if self.chosen.is_empty() {
                "-".to_string()
            } else {
                ids(&self.chosen, ",")
            },
            self.regimes[0].to_string(),
            self.regimes[1].to_string(),
            self.regimes[2].to_string(),
            self.shifts_used.to_string(),
            self.h0.d_c.to_string(),
            self.h0.k_r.to_string(),
            if self.h0.holds { "holds" } else { "fails" }.to_string(),
            self.nodes_expanded.to_string(),
            self.verdict.clone().unwrap_or_else(|| "-".into()),
            self.conjecture_verified.to_string(),
        ];
        format!("{TSV_HEADER}\n{}\n", row.join("\t"))
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(
            w,
            "instance: d={} clauses, m={} parcels",
            self.clauses, self.parcels
        )
        .unwrap();
        writeln!(
            w,
            "blocking: k={} kprime={} blocks={} shifts={}",
            self.k, self.kprime, self.blocks, self.shifts_used
        )
        .unwrap();
        writeln!(
            w,
            "conflicts: {} minimal, {} minimal hitting set(s)",
            self.conflicts, self.hitting_sets
        )
        .unwrap();
        writeln!(w, "chosen: {{{}}}", ids(&self.chosen, ", ")).unwrap();
        writeln!(
            w,
            "regimes: space-independent={} info-independent={} dependent={}",
            self.regimes[0], self.regimes[1], self.regimes[2]
        )
        .unwrap();
        writeln!(w, "h0: {}", self.h0).unwrap();
        writeln!(w, "hs-tree nodes: {}", self.nodes_expanded).unwrap();
        let t = &self.timings;
        writeln!(
            w,
            "timings: partition={} base={} shifts={} hitting-sets={} total={}",
            ms(t.partition),
            ms(t.base_pass),
            ms(t.shift_pass),
            ms(t.hitting_sets),
            ms(t.total)
        )
        .unwrap();
        if let Some(g) = self.global_time {
            writeln!(w, "global: total={}", ms(g)).unwrap();
        }
        if let Some(v) = &self.verdict {
            writeln!(w, "verdict: {v}").unwrap();
            writeln!(w, "conjecture verified: {}", self.conjecture_verified).unwrap();
        }
        for warning in &self.warnings {
            writeln!(w, "warning: {warning}").unwrap();
        }
        out
    }
}

fn ids(h: &HittingSet, sep: &str) -> String {
    h.clause_ids()
        .iter()
        .map(|id| id.0.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn ms(d: Duration) -> String {
    format!("{:.3}ms", d.as_secs_f64() * 1e3)
}
