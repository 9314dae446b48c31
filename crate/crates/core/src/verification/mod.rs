//! Claim registry: each claim replays one computer-checkable statement
//! about Wiener-index orderings against constructed or enumerated graphs and
//! produces a [`ClaimReport`] with witnesses.

mod constructive;
mod exhaustive;
mod ranking;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use constructive::{
    verify_chord_exceptions, verify_closed_forms, verify_family_sweep, verify_h22_plus,
    verify_order_by_families, verify_theta_values, SweepFamily, THETA_VALUES,
};
pub use exhaustive::{
    report_conjecture, run_exhaustive, verify_cycle_maximum, verify_lemma_implications,
    verify_top_order, ExhaustiveClaim, ExhaustiveOptions,
};
pub use ranking::{rank_by_wiener, rank_enumerated, RankingEntry, Tier, TopK, TopTiers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    SkippedResource,
}

/// How a claim was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Every 2-connected graph of the order was examined.
    Exhaustive,
    /// Only explicitly constructed family members were examined.
    Constructed,
    /// Closed-form inequalities plus family sweeps, without enumeration.
    FamiliesAndClosedForms,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph6: String,
    pub wiener: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub n: Option<usize>,
    pub status: ClaimStatus,
    pub evidence: Evidence,
    /// Informational claims (conjectures) never count as failures.
    pub informational: bool,
    pub witnesses: Vec<Witness>,
    pub counts: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    pub wall_time_ms: f64,
}

impl ClaimReport {
    pub(crate) fn new(claim: &str, n: Option<usize>, evidence: Evidence) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            n,
            status: ClaimStatus::Pass,
            evidence,
            informational: false,
            witnesses: Vec::new(),
            counts: BTreeMap::new(),
            notes: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    /// Records a failed check. The report fails unless it is informational.
    pub(crate) fn fail(&mut self, note: impl Into<String>) {
        if !self.informational {
            self.status = ClaimStatus::Fail;
        }
        self.notes.push(note.into());
    }

    pub(crate) fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.fail(note());
        }
    }

    pub(crate) fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += by;
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == ClaimStatus::Fail && !self.informational
    }

    /// Copy with the timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        ClaimReport {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

/// Aligned text table followed by per-claim notes and witnesses.
pub fn render_text(reports: &[ClaimReport]) -> String {
    let status = |r: &ClaimReport| match (r.status, r.informational) {
        (_, true) => "info",
        (ClaimStatus::Pass, _) => "pass",
        (ClaimStatus::Fail, _) => "FAIL",
        (ClaimStatus::SkippedResource, _) => "skipped",
    };
    let evidence = |r: &ClaimReport| match r.evidence {
        Evidence::Exhaustive => "exhaustive",
        Evidence::Constructed => "constructed",
        Evidence::FamiliesAndClosedForms => "families+closed-forms",
        Evidence::None => "-",
    };
    let width = reports
        .iter()
        .map(|r| r.claim.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>3}  {:<7}  {:<21}  {:>10}",
        "claim", "n", "status", "evidence", "ms"
    );
    for r in reports {
        let n = r.n.map_or("-".to_string(), |n| n.to_string());
        let _ = writeln!(
            out,
            "{:<width$}  {:>3}  {:<7}  {:<21}  {:>10.1}",
            r.claim,
            n,
            status(r),
            evidence(r),
            r.wall_time_ms
        );
    }
    for r in reports {
        if r.notes.is_empty() && r.witnesses.is_empty() && r.counts.is_empty() {
            continue;
        }
        let n = r.n.map_or(String::new(), |n| format!(" (n = {n})"));
        let _ = writeln!(out, "\n{}{n}", r.claim);
        for (k, v) in &r.counts {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for note in &r.notes {
            let _ = writeln!(out, "  - {note}");
        }
        for w in &r.witnesses {
            let family = w.family.as_deref().unwrap_or("");
            let note = w
                .note
                .as_deref()
                .map(|s| format!("  [{s}]"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "    {:<12} W = {:<6} {family}{note}",
                w.graph6, w.wiener
            );
        }
    }
    out
}
