//! Streamed graph6 search: one JSONL result per valid input line, in input
//! order, with graphs analyzed in parallel batches.

use std::io::{BufRead, Write};

use anyhow::Result;
use qwalk_core::graph::parse_graph6;
use qwalk_core::{HamiltonianKind, Tolerances};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{analyze_graph, AnalyzeOptions, SearchResult};

/// Lines per parallel batch; results of a batch are written before the next
/// batch is read.
const BATCH: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchFailure {
    pub line: usize,
    pub graph6: String,
    pub error: String,
    pub corollary_breach: bool,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SearchSummary {
    pub analyzed: usize,
    pub skipped: usize,
    /// Valid graphs whose analysis failed; each produced a failure line.
    pub failures: usize,
}

impl SearchSummary {
    pub fn is_clean(&self) -> bool {
        self.failures == 0
    }
}

enum Outcome {
    Ok(SearchResult),
    Failed(SearchFailure),
    Malformed(String),
}

fn process(line_no: usize, text: &str, kind: HamiltonianKind, tol: Tolerances) -> Outcome {
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => return Outcome::Malformed(format!("line {line_no}: {e}")),
    };
    let opts = AnalyzeOptions {
        source: text,
        tolerances: tol,
        dump_matrix: false,
    };
    match analyze_graph(&g, kind, &opts) {
        Ok(r) => Outcome::Ok(SearchResult::from_report(line_no, text, &r)),
        Err(e) => Outcome::Failed(SearchFailure {
            line: line_no,
            graph6: text.to_string(),
            corollary_breach: matches!(e, qwalk_core::Error::LaplacianCorollary { .. }),
            error: e.to_string(),
        }),
    }
}

/// Reads graph6 lines from `input` and writes JSONL to `out`. Blank lines
/// are ignored; malformed lines are reported on `warn` and skipped. Only
/// I/O errors abort.
pub fn run_search(
    input: impl BufRead,
    out: &mut impl Write,
    warn: &mut impl Write,
    kind: HamiltonianKind,
    tol: Tolerances,
) -> Result<SearchSummary> {
    let mut summary = SearchSummary::default();
    let mut lines = input.lines().enumerate();
    loop {
        let mut batch = Vec::with_capacity(BATCH);
        for (i, line) in lines.by_ref() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            batch.push((i + 1, trimmed.to_string()));
            if batch.len() == BATCH {
                break;
            }
        }
        if batch.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = batch
            .par_iter()
            .map(|(no, text)| process(*no, text, kind, tol))
            .collect();
        for outcome in outcomes {
            match outcome {
                Outcome::Ok(r) => {
                    serde_json::to_writer(&mut *out, &r)?;
                    writeln!(out)?;
                    summary.analyzed += 1;
                }
                Outcome::Failed(f) => {
                    serde_json::to_writer(&mut *out, &f)?;
                    writeln!(out)?;
                    summary.failures += 1;
                }
                Outcome::Malformed(msg) => {
                    writeln!(warn, "warning: skipping malformed graph6 at {msg}")?;
                    summary.skipped += 1;
                }
            }
        }
    }
    out.flush()?;
    Ok(summary)
}
