//! Isomorph-free generation of 2-connected graphs.
//!
//! Three sources feed the same accumulator interface:
//!
//! * [`Backend::InternalCanonical`]: canonical augmentation by vertex
//!   addition (see [`orderly`]), optionally spread over several workers.
//! * [`Backend::LabeledDedup`]: every labelled graph, filtered and
//!   deduplicated by canonical form. Small orders only; kept as an oracle.
//! * [`Backend::ExternalStream`]: graph6 lines produced by another tool,
//!   filtered by [`filter_stream`].
//!
//! Every emitted graph is canonically labelled and carries its canonical
//! graph6 string, which also feeds an order-independent [`StreamDigest`].

mod labeled;
pub mod orderly;
mod stream;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use stream::{filter_stream, stream_two_connected, FilterOptions, FilterReport, MalformedLine};

/// Largest order accepted by the internal generator.
pub const INTERNAL_MAX_ORDER: usize = 12;
/// Largest order accepted by the labelled oracle (2^28 labelled graphs).
pub const LABELED_MAX_ORDER: usize = 8;
/// Largest order for which [`collect_two_connected`] materialises a list.
pub const COLLECT_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backend {
    InternalCanonical,
    ExternalStream,
    LabeledDedup,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::InternalCanonical => "internal-canonical",
            Backend::ExternalStream => "external-stream",
            Backend::LabeledDedup => "labeled-dedup",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "internal-canonical" | "internal" => Ok(Backend::InternalCanonical),
            "external-stream" | "external" | "stream" => Ok(Backend::ExternalStream),
            "labeled-dedup" | "labeled" => Ok(Backend::LabeledDedup),
            other => Err(Error::InvalidParameters(format!(
                "unknown backend {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub n: usize,
    pub backend: Backend,
    pub workers: usize,
    pub min_edges: Option<usize>,
    pub max_edges: Option<usize>,
    /// Stop after this many graphs; the run is then reported incomplete.
    pub max_graphs: Option<u64>,
}

impl EnumerationConfig {
    pub fn new(n: usize) -> Self {
        EnumerationConfig {
            n,
            backend: Backend::InternalCanonical,
            workers: 1,
            min_edges: None,
            max_edges: None,
            max_graphs: None,
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let limit = match self.backend {
            Backend::InternalCanonical => INTERNAL_MAX_ORDER,
            Backend::LabeledDedup => LABELED_MAX_ORDER,
            Backend::ExternalStream => crate::graph::MAX_ORDER,
        };
        if self.n == 0 || self.n > limit {
            return Err(Error::ResourceLimit(format!(
                "{} backend supports 1 <= n <= {limit}, got {}",
                self.backend, self.n
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameters(
                "worker count must be at least 1".into(),
            ));
        }
        if let (Some(lo), Some(hi)) = (self.min_edges, self.max_edges) {
            if lo > hi {
                return Err(Error::InvalidParameters(format!(
                    "min edges {lo} > max edges {hi}"
                )));
            }
        }
        Ok(())
    }

    fn edge_filter(&self, g: &Graph) -> bool {
        let m = g.edge_count();
        self.min_edges.is_none_or(|lo| m >= lo) && self.max_edges.is_none_or(|hi| m <= hi)
    }
}

/// A canonically labelled graph and its canonical graph6 string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub graph: Graph,
    pub canonical: String,
}

/// Per-worker consumer of an enumeration. Partial results are combined
/// with [`Accumulator::merge`], which must be associative.
pub trait Accumulator: Send {
    fn accept(&mut self, item: &Enumerated);
    fn merge(&mut self, other: Self)
    where
        Self: Sized;
}

/// Collects every graph; only sensible for small orders.
#[derive(Debug, Default, Clone)]
pub struct CollectAll(pub Vec<Enumerated>);

impl Accumulator for CollectAll {
    fn accept(&mut self, item: &Enumerated) {
        self.0.push(item.clone());
    }

    fn merge(&mut self, other: Self) {
        self.0.extend(other.0);
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Discard;

impl Accumulator for Discard {
    fn accept(&mut self, _: &Enumerated) {}
    fn merge(&mut self, _: Self) {}
}

impl<A: Accumulator, B: Accumulator> Accumulator for (A, B) {
    fn accept(&mut self, item: &Enumerated) {
        self.0.accept(item);
        self.1.accept(item);
    }

    fn merge(&mut self, other: Self) {
        self.0.merge(other.0);
        self.1.merge(other.1);
    }
}

/// Order-independent fingerprint of a multiset of canonical strings.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamDigest {
    pub count: u64,
    sum: u64,
    xor: u64,
}

impl StreamDigest {
    pub fn add(&mut self, canonical: &str) {
        let h = Sha256::digest(canonical.as_bytes());
        let a = u64::from_le_bytes(h[0..8].try_into().expect("8 bytes"));
        let b = u64::from_le_bytes(h[8..16].try_into().expect("8 bytes"));
        self.count += 1;
        self.sum = self.sum.wrapping_add(a);
        self.xor ^= b;
    }

    pub fn merge(&mut self, other: &StreamDigest) {
        self.count += other.count;
        self.sum = self.sum.wrapping_add(other.sum);
        self.xor ^= other.xor;
    }

    pub fn hex(&self) -> String {
        format!("{:016x}{:016x}", self.sum, self.xor)
    }
}

impl Accumulator for StreamDigest {
    fn accept(&mut self, item: &Enumerated) {
        self.add(&item.canonical);
    }

    fn merge(&mut self, other: Self) {
        StreamDigest::merge(self, &other);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamSummary {
    pub count: u64,
    pub digest: StreamDigest,
    /// False when the run stopped at `max_graphs`.
    pub complete: bool,
}

/// Shared stop condition for `max_graphs`.
pub(crate) struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    stopped: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: Option<u64>) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        }
    }

    /// Claims one emission slot; false once the limit is reached.
    pub(crate) fn take(&self) -> bool {
        let Some(limit) = self.limit else { return true };
        let prior = self.used.fetch_add(1, Ordering::Relaxed);
        if prior >= limit {
            self.stopped.store(true, Ordering::Relaxed);
            false
        } else {
            true
        }
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }
}

/// Wraps a user accumulator with the edge filter, budget and digest.
pub(crate) struct Sink<'a, A> {
    pub(crate) inner: A,
    pub(crate) digest: StreamDigest,
    cfg: &'a EnumerationConfig,
    budget: &'a Budget,
}

impl<'a, A: Accumulator> Sink<'a, A> {
    pub(crate) fn new(inner: A, cfg: &'a EnumerationConfig, budget: &'a Budget) -> Self {
        Sink {
            inner,
            digest: StreamDigest::default(),
            cfg,
            budget,
        }
    }

    pub(crate) fn push(&mut self, item: &Enumerated) {
        if !self.cfg.edge_filter(&item.graph) || !self.budget.take() {
            return;
        }
        self.digest.add(&item.canonical);
        self.inner.accept(item);
    }

    pub(crate) fn halted(&self) -> bool {
        self.budget.stopped()
    }
}

/// Runs the configured backend, giving each worker an accumulator from
/// `make` and merging them in worker order.
pub fn enumerate_two_connected<A, F>(cfg: &EnumerationConfig, make: F) -> Result<(A, StreamSummary)>
where
    A: Accumulator,
    F: Fn() -> A + Sync,
{
    cfg.validate()?;
    let budget = Budget::new(cfg.max_graphs);
    let (acc, digest) = match cfg.backend {
        Backend::InternalCanonical => orderly::run(cfg, &budget, &make),
        Backend::LabeledDedup => labeled::run(cfg, &budget, make()),
        Backend::ExternalStream => {
            return Err(Error::InvalidParameters(
                "external-stream input is read with stream_two_connected".into(),
            ))
        }
    };
    Ok((
        acc,
        StreamSummary {
            count: digest.count,
            digest,
            complete: !budget.stopped(),
        },
    ))
}

/// Calls `f` on every 2-connected graph of order `cfg.n` in an order that
/// depends only on `n`, whatever the worker count.
pub fn for_each_two_connected(
    cfg: &EnumerationConfig,
    mut f: impl FnMut(&Enumerated),
) -> Result<StreamSummary> {
    cfg.validate()?;
    match cfg.backend {
        Backend::InternalCanonical => {
            let (digest, complete) = orderly::run_ordered(cfg, &mut f);
            Ok(StreamSummary {
                count: digest.count,
                digest,
                complete,
            })
        }
        Backend::LabeledDedup => {
            let (CollectAll(list), summary) = enumerate_two_connected(cfg, CollectAll::default)?;
            list.iter().for_each(f);
            Ok(summary)
        }
        Backend::ExternalStream => Err(Error::InvalidParameters(
            "external-stream input is read with stream_two_connected".into(),
        )),
    }
}

/// Every 2-connected graph of order `cfg.n`, materialised.
pub fn collect_two_connected(cfg: &EnumerationConfig) -> Result<Vec<Enumerated>> {
    if cfg.n > COLLECT_MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "refusing to materialise all graphs of order {} (limit {COLLECT_MAX_ORDER})",
            cfg.n
        )));
    }
    let (CollectAll(list), _) = enumerate_two_connected(cfg, CollectAll::default)?;
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_stream_ignores_worker_count() {
        let run = |workers, limit| {
            let mut cfg = EnumerationConfig::new(7).with_workers(workers);
            cfg.max_graphs = limit;
            let mut out = Vec::new();
            let summary = for_each_two_connected(&cfg, |e| out.push(e.canonical.clone())).unwrap();
            (out, summary)
        };
        let (one, s1) = run(1, None);
        let (three, s3) = run(3, None);
        assert_eq!(one.len(), 468);
        assert_eq!(one, three);
        assert_eq!(s1, s3);
        let (_, whole) = enumerate_two_connected(&EnumerationConfig::new(7), || Discard).unwrap();
        assert_eq!(s1.digest, whole.digest);
        let (head, s) = run(3, Some(100));
        assert_eq!(head[..], one[..100]);
        assert!(!s.complete);
    }

    #[test]
    fn config_guards() {
        assert!(EnumerationConfig::new(13).validate().is_err());
        assert!(EnumerationConfig::new(12).validate().is_ok());
        assert!(EnumerationConfig::new(9)
            .with_backend(Backend::LabeledDedup)
            .validate()
            .is_err());
        assert!(EnumerationConfig::new(5)
            .with_workers(0)
            .validate()
            .is_err());
        let mut cfg = EnumerationConfig::new(5);
        cfg.min_edges = Some(7);
        cfg.max_edges = Some(6);
        assert!(cfg.validate().is_err());
        assert!(collect_two_connected(&EnumerationConfig::new(9)).is_err());
    }

    #[test]
    fn digest_is_order_independent() {
        let mut a = StreamDigest::default();
        let mut b = StreamDigest::default();
        for s in ["Bw", "Cr", "C^", "C~"] {
            a.add(s);
        }
        for s in ["C~", "Bw", "C^", "Cr"] {
            b.add(s);
        }
        assert_eq!(a, b);
        let mut c = StreamDigest::default();
        c.add("Bw");
        assert_ne!(a.hex(), c.hex());
    }

    #[test]
    fn backend_names() {
        assert_eq!("labeled".parse::<Backend>().unwrap(), Backend::LabeledDedup);
        assert_eq!(Backend::InternalCanonical.to_string(), "internal-canonical");
        assert!("nauty".parse::<Backend>().is_err());
    }

    #[test]
    fn small_counts() {
        for (n, expected) in [(1, 0), (2, 0), (3, 1), (4, 3), (5, 10), (6, 56)] {
            let (_, summary) =
                enumerate_two_connected(&EnumerationConfig::new(n), || Discard).unwrap();
            assert_eq!(summary.count, expected, "n = {n}");
            assert!(summary.complete);
        }
    }

    #[test]
    fn edge_filters_and_budget() {
        let mut cfg = EnumerationConfig::new(4);
        cfg.min_edges = Some(5);
        let list = collect_two_connected(&cfg).unwrap();
        assert_eq!(list.len(), 2);
        let mut cfg = EnumerationConfig::new(6);
        cfg.max_graphs = Some(10);
        let (_, summary) = enumerate_two_connected(&cfg, || Discard).unwrap();
        assert_eq!(summary.count, 10);
        assert!(!summary.complete);
    }
}
