use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};

use serde_json::json;
use wiener_core::closed_forms::{closed_form, ClosedFormId};
use wiener_core::enumeration::{
    filter_stream, for_each_two_connected, stream_two_connected, Backend, EnumerationConfig,
    FilterOptions, FilterReport, INTERNAL_MAX_ORDER,
};
use wiener_core::families::{FamilyIndex, FamilySpec};
use wiener_core::graph6::Graph6Reader;
use wiener_core::invariants::{wiener_of_edge_list, DistanceProfile};
use wiener_core::verification::{
    rank_enumerated, render_text, run_exhaustive, verify_chord_exceptions, verify_closed_forms,
    verify_family_sweep, verify_h22_plus, verify_theta_values, ClaimReport, ExhaustiveClaim,
    ExhaustiveOptions, RankingEntry, SweepFamily, TopK,
};
use wiener_core::{canonical_form, encode_graph6, is_two_connected};

use crate::failure::{Failure, CLAIM_FAILED, MALFORMED, RESOURCE, USAGE};
use crate::range::OrderRange;
use crate::{BackendArg, ClaimSet, Command, Format};

/// Orders above this need `--extended`.
const DEFAULT_MAX_ORDER: usize = 10;

pub fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Compute { input, format } => compute(&input, format),
        Command::Construct { family, canonical } => construct(&family, canonical),
        Command::Enumerate {
            n,
            backend,
            min_edges,
            max_edges,
            max_graphs,
            extended,
            workers,
        } => {
            let mut cfg = config(n, extended, workers.workers)?;
            cfg.backend = match backend {
                BackendArg::Internal => Backend::InternalCanonical,
                BackendArg::Labeled => Backend::LabeledDedup,
            };
            cfg.min_edges = min_edges;
            cfg.max_edges = max_edges;
            cfg.max_graphs = max_graphs;
            enumerate(&cfg)
        }
        Command::Filter {
            input,
            n,
            keep_separable,
            no_dedup,
            strict,
        } => {
            let opts = FilterOptions {
                order: n,
                require_two_connected: !keep_separable,
                dedup: !no_dedup,
                abort_on_malformed: strict,
            };
            filter(&input, &opts)
        }
        Command::Rank {
            n,
            top,
            input,
            format,
            extended,
            workers,
        } => rank(n, top, input.as_deref(), format, extended, workers.workers),
        Command::Verify {
            set,
            n,
            format,
            extended,
            formula_max,
            workers,
        } => verify(set, n, format, extended, formula_max, workers.workers),
        Command::Formulas { n, format } => formulas(n, format),
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>, Failure> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|e| Failure::new(MALFORMED, format!("{path}: {e}")))?;
    Ok(Box::new(BufReader::new(file)))
}

fn config(n: usize, extended: bool, workers: usize) -> Result<EnumerationConfig, Failure> {
    if n > DEFAULT_MAX_ORDER && !extended {
        return Err(Failure::new(
            RESOURCE,
            format!("enumerating order {n} needs --extended"),
        ));
    }
    if extended && n > DEFAULT_MAX_ORDER {
        eprintln!("warning: extended mode, enumerating order {n} may take many hours");
    }
    let cfg = EnumerationConfig::new(n).with_workers(workers);
    cfg.validate()?;
    Ok(cfg)
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn compute(input: &str, format: Format) -> Result<u8, Failure> {
    let mut out = BufWriter::new(io::stdout().lock());
    let mut code = 0;
    if format == Format::Csv {
        writeln!(
            out,
            "graph6,order,wiener,transmissions,k_sequence,bad_vertices,b,two_connected"
        )?;
    }
    for (line, parsed) in Graph6Reader::new(open_input(input)?) {
        let g = match parsed {
            Ok(g) => g,
            Err(e) => {
                eprintln!("line {line}: {e}");
                code = MALFORMED;
                continue;
            }
        };
        let profile = match DistanceProfile::new(&g) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("line {line}: {e}");
                code = MALFORMED;
                continue;
            }
        };
        let g6 = encode_graph6(&g);
        let ks = profile.k_sequence();
        let bad = profile.bad_vertices();
        let b = profile.b();
        let two = is_two_connected(&g);
        match format {
            Format::Text => {
                writeln!(out, "{g6}")?;
                writeln!(out, "  order          {}", g.order())?;
                writeln!(out, "  wiener         {}", profile.wiener)?;
                writeln!(out, "  transmissions  {}", join(&profile.transmissions))?;
                writeln!(out, "  k-sequence     {}", join(ks.values()))?;
                let bad_text = if bad.is_empty() {
                    "-".to_string()
                } else {
                    join(
                        bad.iter()
                            .map(|r| format!("{}:{}/{}", r.vertex, r.k, r.k_prime)),
                    )
                };
                writeln!(out, "  bad vertices   {bad_text}")?;
                let flag = if two { "" } else { "  (not 2-connected)" };
                writeln!(out, "  b              {b}{flag}")?;
            }
            Format::Json => {
                let bad: Vec<_> = bad
                    .iter()
                    .map(|r| json!({"vertex": r.vertex, "k": r.k, "k_prime": r.k_prime}))
                    .collect();
                let value = json!({
                    "graph6": g6,
                    "order": g.order(),
                    "wiener": profile.wiener,
                    "transmissions": profile.transmissions,
                    "k_sequence": ks.values(),
                    "bad_vertices": bad,
                    "b": b,
                    "two_connected": two,
                });
                writeln!(out, "{value}")?;
            }
            Format::Csv => {
                let bad = join(
                    bad.iter()
                        .map(|r| format!("{}:{}/{}", r.vertex, r.k, r.k_prime)),
                );
                writeln!(
                    out,
                    "{},{},{},{},{},{},{b},{two}",
                    csv_field(&g6),
                    g.order(),
                    profile.wiener,
                    join(&profile.transmissions),
                    join(ks.values()),
                    bad
                )?;
            }
        }
    }
    out.flush()?;
    Ok(code)
}

/// Quotes fields holding commas or quotes.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn construct(family: &str, canonical: bool) -> Result<u8, Failure> {
    let spec: FamilySpec = family.parse()?;
    let g = spec.build()?;
    let g6 = if canonical {
        canonical_form(&g).string
    } else {
        encode_graph6(&g)
    };
    writeln!(io::stdout(), "{g6}")?;
    Ok(0)
}

fn enumerate(cfg: &EnumerationConfig) -> Result<u8, Failure> {
    let mut out = BufWriter::new(io::stdout().lock());
    let mut broken = None;
    let summary = for_each_two_connected(cfg, |e| {
        if broken.is_none() {
            if let Err(err) = writeln!(out, "{}", e.canonical) {
                broken = Some(err);
            }
        }
    })?;
    match broken {
        Some(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(0),
        Some(e) => return Err(e.into()),
        None => {}
    }
    match out.flush() {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    let state = if summary.complete {
        "complete"
    } else {
        "truncated"
    };
    eprintln!(
        "n={} graphs={} digest={} {state}",
        cfg.n,
        summary.count,
        summary.digest.hex()
    );
    Ok(0)
}

fn report_malformed(report: &FilterReport) -> u8 {
    for m in &report.malformed {
        eprintln!("line {}: {}", m.line, m.reason);
    }
    if report.malformed.is_empty() {
        0
    } else {
        MALFORMED
    }
}

fn filter(input: &str, opts: &FilterOptions) -> Result<u8, Failure> {
    let mut out = BufWriter::new(io::stdout().lock());
    let mut write_err = None;
    let report = filter_stream(open_input(input)?, opts, |g, _| {
        if write_err.is_none() {
            write_err = writeln!(out, "{}", encode_graph6(g)).err();
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    out.flush()?;
    eprintln!(
        "read={} kept={} rejected={} duplicates={} malformed={}",
        report.read,
        report.kept,
        report.rejected,
        report.duplicates,
        report.malformed.len()
    );
    Ok(report_malformed(&report))
}

fn rank(
    n: usize,
    top: usize,
    input: Option<&str>,
    format: Format,
    extended: bool,
    workers: usize,
) -> Result<u8, Failure> {
    if top == 0 {
        return Err(Failure::new(USAGE, "--top must be at least 1"));
    }
    let index = FamilyIndex::new(n).ok();
    let (entries, code) = match input {
        Some(path) => {
            let cfg = EnumerationConfig::new(n).with_backend(Backend::ExternalStream);
            let (top, summary, report) =
                stream_two_connected(open_input(path)?, &cfg, TopK::new(top))?;
            let code = report_malformed(&report);
            if summary.count == 0 {
                return Err(Failure::new(
                    MALFORMED,
                    format!("no 2-connected graphs of order {n} in the input"),
                ));
            }
            (top.into_ranking(index.as_ref()), code)
        }
        None => {
            let cfg = config(n, extended, workers)?;
            let (ranking, _) = rank_enumerated(&cfg, top)?;
            (ranking, 0)
        }
    };
    print_ranking(&entries, format)?;
    Ok(code)
}

fn print_ranking(entries: &[RankingEntry], format: Format) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(entries)?)?,
        Format::Csv => {
            writeln!(out, "rank,wiener,graph6,family")?;
            for e in entries {
                writeln!(
                    out,
                    "{},{},{},{}",
                    e.rank,
                    e.wiener,
                    csv_field(&e.graph6),
                    csv_field(e.family.as_deref().unwrap_or(""))
                )?;
            }
        }
        Format::Text => {
            let width = entries
                .iter()
                .map(|e| e.graph6.len())
                .max()
                .unwrap_or(6)
                .max(6);
            writeln!(
                out,
                "{:<4}  {:>6}  {:<width$}  family",
                "rank", "W", "graph6"
            )?;
            for e in entries {
                let family = e.family.as_deref().unwrap_or("");
                writeln!(
                    out,
                    "{:<4}  {:>6}  {:<width$}  {family}",
                    e.rank, e.wiener, e.graph6
                )?;
            }
        }
    }
    Ok(())
}

fn verify(
    set: ClaimSet,
    range: Option<OrderRange>,
    format: Format,
    extended: bool,
    formula_max: usize,
    workers: usize,
) -> Result<u8, Failure> {
    if format == Format::Csv {
        return Err(Failure::new(USAGE, "verify supports text and json output"));
    }
    let or = |lo, hi| range.unwrap_or(OrderRange { lo, hi });
    let max_order = if extended {
        INTERNAL_MAX_ORDER
    } else {
        DEFAULT_MAX_ORDER
    };
    let opts = ExhaustiveOptions::default()
        .with_workers(workers)
        .with_max_order(max_order);
    let mut reports: Vec<ClaimReport> = Vec::new();
    let everything = set == ClaimSet::All;

    if matches!(set, ClaimSet::Tables | ClaimSet::All) {
        reports.push(verify_theta_values()?);
        reports.push(verify_closed_forms(formula_max)?);
    }

    let exhaustive: Option<(&[ExhaustiveClaim], OrderRange)> = match set {
        ClaimSet::Theorem => Some((
            &[
                ExhaustiveClaim::CycleMaximum,
                ExhaustiveClaim::TransmissionBound,
                ExhaustiveClaim::TopOrder,
            ],
            or(4, 9),
        )),
        ClaimSet::Lemmas => Some((&[ExhaustiveClaim::Lemmas], or(4, 8))),
        ClaimSet::Conjecture => Some((&[ExhaustiveClaim::Conjecture], or(5, 9))),
        ClaimSet::All => Some((&ExhaustiveClaim::ALL, or(4, 9))),
        _ => None,
    };
    if let Some((claims, orders)) = exhaustive {
        if orders.hi > DEFAULT_MAX_ORDER {
            if extended {
                eprintln!(
                    "warning: extended mode, enumerating up to order {} may take many hours",
                    orders.hi
                );
            } else {
                eprintln!(
                    "note: orders above {DEFAULT_MAX_ORDER} are not enumerated without --extended"
                );
            }
        }
        for n in orders.iter() {
            reports.extend(run_exhaustive(n, claims, &opts)?);
        }
    }

    if matches!(set, ClaimSet::Case2 | ClaimSet::All) {
        let orders: Vec<usize> = [6, 8, 10]
            .into_iter()
            .filter(|n| range.is_none_or(|r| r.iter().contains(n)))
            .collect();
        if orders.is_empty() && !everything {
            return Err(Failure::new(
                USAGE,
                "the chord check is defined for n in {6, 8, 10}",
            ));
        }
        for n in orders {
            reports.push(verify_chord_exceptions(n)?);
        }
    }

    if matches!(set, ClaimSet::Props | ClaimSet::All) {
        let orders = range.unwrap_or(OrderRange { lo: 5, hi: 60 });
        for n in orders.iter() {
            for family in [SweepFamily::H, SweepFamily::I] {
                if n >= family.min_order() {
                    reports.push(verify_family_sweep(n, family)?);
                }
            }
        }
        if orders.hi >= 5 {
            reports.push(verify_h22_plus(orders.lo.max(5)..=orders.hi)?);
        }
    }

    match format {
        Format::Json => writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&reports)?)?,
        _ => write!(io::stdout(), "{}", render_text(&reports))?,
    }
    Ok(if reports.iter().any(ClaimReport::is_failure) {
        CLAIM_FAILED
    } else {
        0
    })
}

fn formulas(range: OrderRange, format: Format) -> Result<u8, Failure> {
    struct Row {
        n: usize,
        id: ClosedFormId,
        formula: u64,
        bfs: u64,
    }
    let mut rows = Vec::new();
    for n in range.iter() {
        for id in ClosedFormId::ALL {
            if (n as u64) < id.min_order() {
                continue;
            }
            let formula = closed_form(id, n as u64)?;
            let spec = id.family(n);
            let bfs = wiener_of_edge_list(n, &spec.edges()?)?;
            rows.push(Row {
                n,
                id,
                formula,
                bfs,
            });
        }
    }
    let mut out = io::stdout().lock();
    match format {
        Format::Csv => {
            writeln!(out, "n,family,closed_form,bfs,match")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    r.id,
                    r.formula,
                    r.bfs,
                    r.formula == r.bfs
                )?;
            }
        }
        Format::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|r| json!({"n": r.n, "family": r.id.label(), "closed_form": r.formula, "bfs": r.bfs, "match": r.formula == r.bfs}))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Text => {
            writeln!(
                out,
                "{:>4}  {:<6}  {:>12}  {:>12}",
                "n", "family", "closed form", "BFS"
            )?;
            for r in &rows {
                let flag = if r.formula == r.bfs { "" } else { "  MISMATCH" };
                writeln!(
                    out,
                    "{:>4}  {:<6}  {:>12}  {:>12}{flag}",
                    r.n, r.id, r.formula, r.bfs
                )?;
            }
        }
    }
    Ok(if rows.iter().any(|r| r.formula != r.bfs) {
        CLAIM_FAILED
    } else {
        0
    })
}
