//! Filtering of externally produced graph6 streams.

use std::collections::HashSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::{Accumulator, Budget, Enumerated, EnumerationConfig, Sink, StreamSummary};
use crate::canon::label_rows;
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, Graph};
use crate::graph6::Graph6Reader;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterOptions {
    /// Keep only graphs of this order.
    pub order: Option<usize>,
    pub require_two_connected: bool,
    /// Drop graphs isomorphic to one already kept.
    pub dedup: bool,
    /// Stop at the first malformed line instead of skipping it.
    pub abort_on_malformed: bool,
}

impl Default for FilterOptions {
    fn default() -> Self {
        FilterOptions {
            order: None,
            require_two_connected: true,
            dedup: false,
            abort_on_malformed: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalformedLine {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub read: u64,
    pub kept: u64,
    pub rejected: u64,
    pub duplicates: u64,
    pub malformed: Vec<MalformedLine>,
}

/// Reads graph6 lines and forwards those passing `opts` to `keep`, each
/// together with its canonical string. Malformed lines are recorded and
/// skipped, or abort the run with [`Error::Graph6Line`] when requested.
pub fn filter_stream<R: BufRead>(
    input: R,
    opts: &FilterOptions,
    mut keep: impl FnMut(&Graph, &str),
) -> Result<FilterReport> {
    let mut report = FilterReport::default();
    let mut seen: HashSet<String> = HashSet::new();
    for (line, parsed) in Graph6Reader::new(input) {
        let g = match parsed {
            Ok(g) => g,
            Err(Error::Io(e)) => return Err(Error::Io(e)),
            Err(e) => {
                if opts.abort_on_malformed {
                    return Err(e);
                }
                let reason = match e {
                    Error::Graph6Line { reason, .. } => reason,
                    other => other.to_string(),
                };
                report.malformed.push(MalformedLine { line, reason });
                continue;
            }
        };
        report.read += 1;
        if opts.order.is_some_and(|n| g.order() != n)
            || (opts.require_two_connected && !is_two_connected(&g))
        {
            report.rejected += 1;
            continue;
        }
        let canonical = label_rows(g.rows()).canonical_string();
        if opts.dedup && !seen.insert(canonical.clone()) {
            report.duplicates += 1;
            continue;
        }
        report.kept += 1;
        keep(&g, &canonical);
    }
    Ok(report)
}

/// Feeds the 2-connected graphs of order `cfg.n` found in a graph6 stream
/// to an accumulator, deduplicated by canonical form.
pub fn stream_two_connected<R: BufRead, A: Accumulator>(
    input: R,
    cfg: &EnumerationConfig,
    acc: A,
) -> Result<(A, StreamSummary, FilterReport)> {
    cfg.validate()?;
    let budget = Budget::new(cfg.max_graphs);
    let mut sink = Sink::new(acc, cfg, &budget);
    let opts = FilterOptions {
        order: Some(cfg.n),
        require_two_connected: true,
        dedup: true,
        abort_on_malformed: false,
    };
    let report = filter_stream(input, &opts, |g, _| {
        let labeling = label_rows(g.rows());
        let canonical = labeling.canonical_string();
        sink.push(&Enumerated {
            graph: Graph::from_rows_unchecked(labeling.canonical_rows),
            canonical,
        });
    })?;
    let digest = sink.digest;
    Ok((
        sink.inner,
        StreamSummary {
            count: digest.count,
            digest,
            complete: !budget.stopped(),
        },
        report,
    ))
}
