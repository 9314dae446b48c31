//! Canonical augmentation by vertex addition.
//!
//! Intermediate levels hold every connected graph; the last level keeps only
//! 2-connected children. A child `C = P + w` (new vertex `w` joined to a
//! subset `S` of `P`) is accepted iff `w` lies in the automorphism orbit of
//! the canonically chosen vertex `m(C)`: among the non-cut vertices of `C`
//! with the smallest `(degree, sum of neighbour degrees)`, the one with the
//! largest canonical label. Removing a non-cut vertex keeps a graph
//! connected, so every connected (resp. 2-connected) graph has exactly one
//! accepted construction path. Subsets in the same orbit of `Aut(P)` give
//! isomorphic children, so only one subset per orbit is tried.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

use super::{Accumulator, Budget, CollectAll, Enumerated, EnumerationConfig, Sink, StreamDigest};
use crate::canon::{label_rows, Labeling};
use crate::graph::{cut_vertex_mask, full_mask, reach, rows_two_connected, Bits, Graph};

/// A generated graph with its labelling if one was computed on acceptance.
pub(crate) struct Node {
    rows: Vec<u64>,
    labeling: Option<Labeling>,
}

/// Counters for one generation run.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct GenerationStats {
    pub subsets_tried: u64,
    pub canonical_calls: u64,
    pub accepted: u64,
}

fn vertex_key(rows: &[u64], v: usize) -> u32 {
    let deg = rows[v].count_ones();
    let nbr: u32 = Bits(rows[v]).map(|u| rows[u].count_ones()).sum();
    deg << 16 | nbr
}

/// Representatives (smallest member) of the orbits of `Aut(P)` acting on
/// subsets of `V(P)`, excluding the empty set.
fn subset_representatives(k: usize, generators: &[Vec<usize>]) -> Vec<u64> {
    let total = 1usize << k;
    if generators.is_empty() {
        return (1..total as u64).collect();
    }
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for g in generators {
        for s in 1..total as u64 {
            let mut image = 0u64;
            for v in Bits(s) {
                image |= 1 << g[v];
            }
            let (a, b) = (find(&mut parent, s as u32), find(&mut parent, image as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    (1..total as u64)
        .filter(|&s| find(&mut parent, s as u32) == s as u32)
        .collect()
}

/// For `P + w` to be 2-connected, `S` must meet every component of `P - c`
/// for each cut vertex `c` of `P`.
fn hitting_masks(rows: &[u64]) -> Vec<u64> {
    let all = full_mask(rows.len());
    let mut masks = Vec::new();
    for c in Bits(cut_vertex_mask(rows)) {
        let mut left = all & !(1 << c);
        while left != 0 {
            let comp = reach(rows, left.trailing_zeros() as usize, all & !(1 << c));
            masks.push(comp);
            left &= !comp;
        }
    }
    masks.sort_unstable();
    masks.dedup();
    masks
}

pub(crate) struct Generator<'a> {
    pub(crate) n: usize,
    pub(crate) stats: GenerationStats,
    budget: Option<&'a Budget>,
}

impl<'a> Generator<'a> {
    pub(crate) fn new(n: usize, budget: Option<&'a Budget>) -> Self {
        Generator {
            n,
            stats: GenerationStats::default(),
            budget,
        }
    }

    fn halted(&self) -> bool {
        self.budget.is_some_and(Budget::stopped)
    }

    /// Calls `f` with every accepted child of `parent`; `last` selects the
    /// 2-connected final level.
    fn children(&mut self, parent: &Node, last: bool, mut f: impl FnMut(&mut Self, Node)) {
        let k = parent.rows.len();
        let own;
        let labeling = match &parent.labeling {
            Some(l) => l,
            None => {
                self.stats.canonical_calls += 1;
                own = label_rows(&parent.rows);
                &own
            }
        };
        let hits = if last {
            hitting_masks(&parent.rows)
        } else {
            Vec::new()
        };
        let mut child = vec![0u64; k + 1];
        for s in subset_representatives(k, &labeling.generators) {
            if last && (s.count_ones() < 2 || hits.iter().any(|&h| h & s == 0)) {
                continue;
            }
            self.stats.subsets_tried += 1;
            for (v, row) in parent.rows.iter().enumerate() {
                child[v] = row | (s >> v & 1) << k;
            }
            child[k] = s;
            debug_assert!(!last || rows_two_connected(&child));
            if let Some(l) = self.accept(&child, last) {
                self.stats.accepted += 1;
                f(
                    self,
                    Node {
                        rows: child.clone(),
                        labeling: l,
                    },
                );
                if self.halted() {
                    return;
                }
            }
        }
    }

    /// `None` to reject; `Some(labeling)` to accept, with the labelling when
    /// one had to be computed.
    fn accept(&mut self, child: &[u64], last: bool) -> Option<Option<Labeling>> {
        let w = child.len() - 1;
        let candidates = if last {
            full_mask(child.len())
        } else {
            full_mask(child.len()) & !cut_vertex_mask(child)
        };
        let mut best = u32::MAX;
        let mut ties = 0u64;
        for v in Bits(candidates) {
            let key = vertex_key(child, v);
            if key < best {
                best = key;
                ties = 1 << v;
            } else if key == best {
                ties |= 1 << v;
            }
        }
        if ties >> w & 1 == 0 {
            return None;
        }
        if ties == 1 << w {
            return Some(None);
        }
        self.stats.canonical_calls += 1;
        let labeling = label_rows(child);
        let chosen = Bits(ties)
            .max_by_key(|&v| labeling.permutation[v])
            .expect("nonempty ties");
        if labeling.orbits[chosen] == labeling.orbits[w] {
            Some(Some(labeling))
        } else {
            None
        }
    }

    /// Depth-first expansion of `node` down to order `n`, calling `emit` on
    /// every 2-connected graph of order `n`.
    pub(crate) fn expand(&mut self, node: &Node, emit: &mut dyn FnMut(&mut Self, Node)) {
        let last = node.rows.len() + 1 == self.n;
        self.children(node, last, |gen, child| {
            if last {
                emit(gen, child);
            } else {
                gen.expand(&child, emit);
            }
        });
    }

    /// Every connected graph of order `level`, in depth-first order.
    pub(crate) fn connected(&mut self, level: usize) -> Vec<Node> {
        let mut out = Vec::new();
        if level >= 1 {
            self.connected_from(
                Node {
                    rows: vec![0],
                    labeling: None,
                },
                level,
                &mut out,
            );
        }
        out
    }

    fn connected_from(&mut self, node: Node, level: usize, out: &mut Vec<Node>) {
        if node.rows.len() == level {
            out.push(node);
            return;
        }
        let mut kids = Vec::new();
        self.children(&node, false, |_, child| kids.push(child));
        for child in kids {
            self.connected_from(child, level, out);
        }
    }
}

fn finish(node: Node) -> Enumerated {
    let labeling = node.labeling.unwrap_or_else(|| label_rows(&node.rows));
    let canonical = labeling.canonical_string();
    Enumerated {
        graph: Graph::from_rows_unchecked(labeling.canonical_rows),
        canonical,
    }
}

fn split_level(n: usize) -> usize {
    n.saturating_sub(3).max(1)
}

pub(crate) fn run<A, F>(cfg: &EnumerationConfig, budget: &Budget, make: &F) -> (A, StreamDigest)
where
    A: Accumulator,
    F: Fn() -> A + Sync,
{
    let n = cfg.n;
    if n < 3 {
        return (make(), StreamDigest::default());
    }
    let level = split_level(n);
    let roots = Generator::new(n, Some(budget)).connected(level);
    let work = |gen: &mut Generator<'_>, sink: &mut Sink<'_, A>, root: &Node| {
        gen.expand(root, &mut |_, node| sink.push(&finish(node)));
    };
    if cfg.workers <= 1 {
        let mut gen = Generator::new(n, Some(budget));
        let mut sink = Sink::new(make(), cfg, budget);
        for root in &roots {
            work(&mut gen, &mut sink, root);
            if sink.halted() {
                break;
            }
        }
        return (sink.inner, sink.digest);
    }
    let next = AtomicUsize::new(0);
    let results: Vec<(A, StreamDigest)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..cfg.workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut gen = Generator::new(n, Some(budget));
                    let mut sink = Sink::new(make(), cfg, budget);
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= roots.len() || sink.halted() {
                            break;
                        }
                        work(&mut gen, &mut sink, &roots[i]);
                    }
                    (sink.inner, sink.digest)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut iter = results.into_iter();
    let (mut acc, mut digest) = iter.next().expect("at least one worker");
    for (a, d) in iter {
        acc.merge(a);
        digest.merge(&d);
    }
    (acc, digest)
}

/// Like [`run`], but hands graphs to `emit` grouped by root in root order,
/// so the sequence does not depend on the worker count. `max_graphs` is
/// applied to that sequence.
pub(crate) fn run_ordered(
    cfg: &EnumerationConfig,
    emit: &mut dyn FnMut(&Enumerated),
) -> (StreamDigest, bool) {
    let n = cfg.n;
    let mut digest = StreamDigest::default();
    if n < 3 {
        return (digest, true);
    }
    let unlimited = Budget::new(None);
    let roots = Generator::new(n, None).connected(split_level(n));
    let batch = |gen: &mut Generator<'_>, root: &Node| {
        let mut sink = Sink::new(CollectAll::default(), cfg, &unlimited);
        gen.expand(root, &mut |_, node| sink.push(&finish(node)));
        sink.inner.0
    };
    let mut left = cfg.max_graphs;
    let mut deliver = |items: Vec<Enumerated>, digest: &mut StreamDigest| -> bool {
        for item in &items {
            if left == Some(0) {
                return false;
            }
            left = left.map(|l| l - 1);
            digest.add(&item.canonical);
            emit(item);
        }
        true
    };
    if cfg.workers <= 1 {
        let mut gen = Generator::new(n, None);
        for root in &roots {
            if !deliver(batch(&mut gen, root), &mut digest) {
                return (digest, false);
            }
        }
        return (digest, true);
    }
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let mut complete = true;
    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::sync_channel::<(usize, Vec<Enumerated>)>(cfg.workers * 2);
        for _ in 0..cfg.workers {
            let tx = tx.clone();
            let (next, stop, roots, batch) = (&next, &stop, &roots, &batch);
            scope.spawn(move || {
                let mut gen = Generator::new(n, None);
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= roots.len() || stop.load(Ordering::Relaxed) {
                        break;
                    }
                    if tx.send((i, batch(&mut gen, &roots[i]))).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut want = 0;
        for (i, items) in rx.iter() {
            pending.insert(i, items);
            while let Some(items) = pending.remove(&want) {
                want += 1;
                if complete && !deliver(items, &mut digest) {
                    complete = false;
                    stop.store(true, Ordering::Relaxed);
                }
            }
        }
    });
    (digest, complete)
}

/// Number of connected graphs of order `k` produced by the intermediate
/// levels. Exposed for cross-checks against published counts.
pub fn count_connected(k: usize) -> usize {
    Generator::new(usize::MAX, None).connected(k).len()
}
