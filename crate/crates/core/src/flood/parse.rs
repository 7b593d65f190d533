use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use super::FloodScenario;
use crate::space::{GraphLines, VertexId};
use crate::text::{expect_arity, field, tokenized_lines, ParseError};

/// Parses `levels <L>`, graph lines, `interval <parcel> <lo> <hi>` and
/// `flux <from> <to>` lines in any order.
pub fn parse_scenario(input: &str) -> Result<FloodScenario, ParseError> {
    let mut graph = GraphLines::default();
    let mut levels: Option<(usize, u32)> = None;
    let mut intervals: BTreeMap<VertexId, (usize, u32, u32)> = BTreeMap::new();
    let mut fluxes: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut last = 0;
    for (line, tokens) in tokenized_lines(input) {
        last = line;
        if graph.accept(line, &tokens)? {
            continue;
        }
        match tokens[0] {
            "levels" => {
                expect_arity(line, &tokens, 2)?;
                if levels.is_some() {
                    return Err(ParseError::new(line, "`levels` given twice"));
                }
                levels = Some((line, field(line, tokens[1], "levels")?));
            }
            "interval" => {
                expect_arity(line, &tokens, 4)?;
                let p = field(line, tokens[1], "parcel")?;
                let lo = field(line, tokens[2], "lower bound")?;
                let hi = field(line, tokens[3], "upper bound")?;
                if intervals.insert(p, (line, lo, hi)).is_some() {
                    return Err(ParseError::new(
                        line,
                        format!("second interval for parcel {p}"),
                    ));
                }
            }
            "flux" => {
                expect_arity(line, &tokens, 3)?;
                let from = field(line, tokens[1], "flux source")?;
                let to = field(line, tokens[2], "flux target")?;
                if fluxes.insert((from, to), line).is_some() {
                    return Err(ParseError::new(
                        line,
                        format!("duplicate flux {from}->{to}"),
                    ));
                }
            }
            other => {
                return Err(ParseError::new(
                    line,
                    format!("unknown construct `{other}`"),
                ));
            }
        }
    }
    let g = graph.finish()?;
    let Some((levels_line, levels)) = levels else {
        return Err(ParseError::new(last, "missing `levels` line"));
    };
    if levels == 0 {
        return Err(ParseError::new(
            levels_line,
            "at least one water level is required",
        ));
    }
    for (&p, &(line, lo, hi)) in &intervals {
        if !g.contains(p) {
            return Err(ParseError::new(line, format!("unknown parcel {p}")));
        }
        if lo > hi || hi >= levels {
            return Err(ParseError::new(
                line,
                format!("interval ({lo}, {hi}) is not within [0, {levels})"),
            ));
        }
    }
    for (&(from, to), &line) in &fluxes {
        if !g.has_edge(from, to) {
            return Err(ParseError::new(
                line,
                format!("flux {from}->{to} does not follow an edge"),
            ));
        }
    }
    let intervals = intervals
        .into_iter()
        .map(|(p, (_, lo, hi))| (p, (lo, hi)))
        .collect();
    let fluxes: BTreeSet<_> = fluxes.into_keys().collect();
    FloodScenario::new(Arc::new(g), levels, intervals, fluxes)
        .map_err(|e| ParseError::new(last, e.to_string()))
}

/// Renders a scenario in the format accepted by [`parse_scenario`].
pub fn write_scenario(s: &FloodScenario) -> String {
    let mut out = format!("levels {}\n", s.levels());
    out.push_str(&crate::space::write_graph(s.graph()));
    for (p, (lo, hi)) in s.intervals() {
        writeln!(out, "interval {p} {lo} {hi}").unwrap();
    }
    for (from, to) in s.fluxes() {
        writeln!(out, "flux {from} {to}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flood::{generate, GeneratorParams, Layout};
    use crate::space::SpaceGraph;

    const SAMPLE: &str = "\
# two parcels, water flows 0 -> 1
levels 6
v 0
v 1
e 0 1
interval 0 0 1
interval 1 3 4   # contradicts the flux
flux 0 1
";

    #[test]
    fn parses_sample() {
        let s = parse_scenario(SAMPLE).unwrap();
        assert_eq!(s.levels(), 6);
        assert_eq!(**s.graph(), SpaceGraph::path(2));
        assert_eq!(s.intervals()[&1], (3, 4));
        assert_eq!(s.fluxes().len(), 1);
    }

    #[test]
    fn round_trips_generated() {
        let p = GeneratorParams {
            layout: Layout::Grid { rows: 3, cols: 4 },
            planted_conflict_size: Some(1),
            ..Default::default()
        };
        for seed in 0..5 {
            let s = generate(&p, seed).unwrap();
            assert_eq!(parse_scenario(&write_scenario(&s)).unwrap(), s);
        }
    }

    #[test]
    fn errors_point_at_lines() {
        let line = |src: &str| parse_scenario(src).unwrap_err().line;
        assert_eq!(line("levels 3\nv 0\ninterval 0 1 3\n"), 3);
        assert_eq!(line("levels 3\nv 0\nv 1\nv 2\ne 0 1\nflux 0 2\n"), 6);
        assert_eq!(line("levels 3\nlevels 4\n"), 2);
        assert_eq!(line("v 0\n"), 1);
        assert_eq!(line("levels 3\nv 0\ninterval 0 1\n"), 3);
        assert_eq!(line("levels 3\nv 0\ninterval 4 0 1\n"), 3);
        assert_eq!(line("levels 3\nv 0\nrain 0\n"), 3);
    }
}
