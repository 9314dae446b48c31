use std::collections::BTreeSet;

use wiener_core::canon::canonical_form;
use wiener_core::closed_forms::{closed_form, ClosedFormId};
use wiener_core::enumeration::{collect_two_connected, EnumerationConfig};
use wiener_core::families::{Exceptional, FamilySpec};
use wiener_core::verification::{
    rank_by_wiener, rank_enumerated, render_text, report_conjecture, run_exhaustive,
    verify_family_sweep, verify_lemma_implications, verify_top_order, ClaimReport, ClaimStatus,
    Evidence, ExhaustiveClaim, ExhaustiveOptions, SweepFamily,
};
use wiener_core::{wiener, Error};

fn canonical(spec: FamilySpec) -> String {
    canonical_form(&spec.build().unwrap()).string
}

fn theta(n: usize, p: usize, q: usize) -> FamilySpec {
    FamilySpec::Theta { n, p, q }
}

fn opts() -> ExhaustiveOptions {
    ExhaustiveOptions::default()
}

/// `(rank, W, canonical)` triples of the first `k` ranked graphs.
fn ranked(n: usize, k: usize) -> Vec<(usize, u64, String)> {
    let (entries, _) = rank_enumerated(&EnumerationConfig::new(n), k).unwrap();
    entries
        .into_iter()
        .map(|e| (e.rank, e.wiener, e.graph6))
        .collect()
}

fn tier(rows: &[(usize, u64, String)], rank: usize) -> (u64, BTreeSet<String>) {
    let members: Vec<_> = rows.iter().filter(|r| r.0 == rank).collect();
    (members[0].1, members.iter().map(|r| r.2.clone()).collect())
}

fn set(specs: &[FamilySpec]) -> BTreeSet<String> {
    specs.iter().map(|s| canonical(*s)).collect()
}

#[test]
fn ranking_order_seven() {
    let rows = ranked(7, 4);
    assert_eq!(tier(&rows, 1), (42, set(&[FamilySpec::Cycle { n: 7 }])));
    assert_eq!(tier(&rows, 2), (39, set(&[theta(7, 1, 2)])));
    assert_eq!(tier(&rows, 3), (38, set(&[theta(7, 1, 3), theta(7, 2, 2)])));
}

#[test]
fn ranking_order_four() {
    let rows = ranked(4, 8);
    assert_eq!(rows.len(), 3);
    let want = [
        (1, 8, FamilySpec::Cycle { n: 4 }),
        (2, 7, theta(4, 1, 2)),
        (3, 6, FamilySpec::Complete { n: 4 }),
    ];
    for (row, (rank, w, spec)) in rows.iter().zip(want) {
        assert_eq!(row, &(rank, w, canonical(spec)));
    }
}

#[test]
fn ranking_order_six() {
    let rows = ranked(6, 7);
    assert_eq!(tier(&rows, 1).0, 27);
    assert_eq!(tier(&rows, 2), (25, set(&[theta(6, 1, 3)])));
    assert_eq!(tier(&rows, 3), (24, set(&[theta(6, 1, 2)])));
    let ex = FamilySpec::Exceptional;
    let fourth = set(&[
        theta(6, 2, 2),
        ex(Exceptional::G6First),
        ex(Exceptional::G6Second),
        ex(Exceptional::G6Third),
    ]);
    assert_eq!(tier(&rows, 4), (23, fourth));
    assert!(rows.iter().all(|r| r.0 <= 4));
}

#[test]
fn ranking_names_families() {
    let (entries, _) = rank_enumerated(&EnumerationConfig::new(5), 3).unwrap();
    assert_eq!(entries[0].family.as_deref(), Some("C_5"));
    assert!(entries[1..].iter().all(|e| e.family.is_some()));
}

#[test]
fn ranking_a_stream_matches_enumeration() {
    let graphs = collect_two_connected(&EnumerationConfig::new(6)).unwrap();
    let streamed = rank_by_wiener(graphs.into_iter().map(|e| e.graph), 7).unwrap();
    let (enumerated, _) = rank_enumerated(&EnumerationConfig::new(6), 7).unwrap();
    assert_eq!(streamed, enumerated);
}

#[test]
fn ranking_rejects_bad_streams() {
    assert!(matches!(
        rank_by_wiener(Vec::new(), 3),
        Err(Error::EmptyStream)
    ));
    let mixed = vec![
        FamilySpec::Cycle { n: 4 }.build().unwrap(),
        FamilySpec::Cycle { n: 5 }.build().unwrap(),
    ];
    assert!(rank_by_wiener(mixed, 3).is_err());
}

#[test]
fn top_order_small_cases() {
    for n in [5, 8, 9] {
        let r = verify_top_order(n, &opts()).unwrap();
        assert_eq!(r.status, ClaimStatus::Pass, "n = {n}: {:?}", r.notes);
        assert_eq!(r.evidence, Evidence::Exhaustive);
    }
    let r = verify_top_order(8, &opts()).unwrap();
    let ws: Vec<u64> = r.witnesses.iter().map(|w| w.wiener).collect();
    assert_eq!(&ws[..5], &[64, 58, 58, 56, 56]);
}

#[test]
fn top_order_nine_has_fourth_value_from_h113() {
    let rows = ranked(9, 6);
    assert_eq!(tier(&rows, 3), (82, set(&[theta(9, 2, 2)])));
    let (w, members) = tier(&rows, 4);
    assert_eq!(w, closed_form(ClosedFormId::H113, 9).unwrap());
    assert!(members.contains(&canonical(theta(9, 1, 3))));
    assert!(members.contains(&canonical(FamilySpec::H22Plus { n: 9 })));
}

#[test]
fn conjecture_reports_tie_at_nine() {
    let r = report_conjecture(9, &opts()).unwrap();
    assert!(r.informational);
    assert!(!r.is_failure());
    assert_eq!(r.counts["tier4.wiener"], 81);
    assert!(r.counts["tier4.size"] >= 2);
    assert!(
        r.notes.iter().any(|n| n.contains("not a singleton")),
        "{:?}",
        r.notes
    );
}

#[test]
fn lemmas_hit_at_six_and_eight() {
    for n in [6, 8] {
        let r = verify_lemma_implications(n, &opts()).unwrap();
        assert_eq!(r.status, ClaimStatus::Pass, "{:?}", r.notes);
        assert!(!r.counts.contains_key("vacuous"), "n = {n}: {:?}", r.notes);
        assert!(r
            .counts
            .iter()
            .filter(|(k, _)| k.ends_with(".hits"))
            .all(|(_, &v)| v > 0));
    }
    assert_eq!(
        verify_lemma_implications(8, &opts()).unwrap().counts["graphs"],
        7123
    );
}

#[test]
fn lemmas_at_four_skip_dominance() {
    let r = verify_lemma_implications(4, &opts()).unwrap();
    assert_eq!(r.status, ClaimStatus::Pass);
    assert!(r.counts.keys().all(|k| !k.starts_with("k-dominance")));
    assert!(r.counts.keys().any(|k| k.starts_with("k-sum")));
    assert!(r.notes.iter().any(|n| n.contains("n >= 5")));
}

#[test]
fn two_chord_sweep_at_twelve() {
    let h22 = wiener(&theta(12, 2, 2).build().unwrap()).unwrap();
    assert_eq!(h22, 197);
    assert_eq!(h22, closed_form(ClosedFormId::H122, 12).unwrap());
    let r = verify_family_sweep(12, SweepFamily::I).unwrap();
    assert_eq!(r.status, ClaimStatus::Pass, "{:?}", r.notes);
    assert!(r.counts["members"] > 0);
}

#[test]
fn beyond_limit_is_skipped() {
    let small = ExhaustiveOptions::default().with_max_order(7);
    let reports = run_exhaustive(8, &ExhaustiveClaim::ALL, &small).unwrap();
    assert!(reports
        .iter()
        .all(|r| r.status == ClaimStatus::SkippedResource && !r.is_failure()));
    let nine = verify_top_order(9, &small).unwrap();
    assert_eq!(nine.evidence, Evidence::FamiliesAndClosedForms);
    assert_eq!(nine.status, ClaimStatus::Pass);
}

#[test]
fn reports_are_reproducible_and_round_trip() {
    let run = || -> Vec<ClaimReport> {
        run_exhaustive(7, &ExhaustiveClaim::ALL, &opts().with_workers(3))
            .unwrap()
            .iter()
            .map(ClaimReport::without_timing)
            .collect()
    };
    let (a, b) = (run(), run());
    let (ja, jb) = (
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap(),
    );
    assert_eq!(ja, jb);
    let back: Vec<ClaimReport> = serde_json::from_str(&ja).unwrap();
    assert_eq!(back, a);
    let text = render_text(&a);
    for r in &a {
        assert!(text.contains(&r.claim));
    }
}
