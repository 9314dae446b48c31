//! Generate-and-deduplicate over all labelled graphs. Exponential in
//! `n(n-1)/2`; kept as an oracle for the canonical augmentation.

use std::collections::BTreeMap;

use super::{Accumulator, Budget, Enumerated, EnumerationConfig, Sink, StreamDigest};
use crate::canon::label_rows;
use crate::graph::{rows_two_connected, Graph};

pub(crate) fn run<A: Accumulator>(
    cfg: &EnumerationConfig,
    budget: &Budget,
    acc: A,
) -> (A, StreamDigest) {
    let n = cfg.n;
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut classes: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    let mut rows = vec![0u64; n];
    for mask in 0u64..1 << pairs.len() {
        rows.fill(0);
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        if rows.iter().any(|r| r.count_ones() < 2) || !rows_two_connected(&rows) {
            continue;
        }
        let labeling = label_rows(&rows);
        classes
            .entry(labeling.canonical_string())
            .or_insert(labeling.canonical_rows);
    }
    let mut sink = Sink::new(acc, cfg, budget);
    for (canonical, rows) in classes {
        sink.push(&Enumerated {
            graph: Graph::from_rows_unchecked(rows),
            canonical,
        });
        if sink.halted() {
            break;
        }
    }
    (sink.inner, sink.digest)
}
