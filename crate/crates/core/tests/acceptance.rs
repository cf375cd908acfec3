//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Every comparison is exact except the Verlinde check, which uses the
//! library's pinned tolerance of 1e-6. Wall-clock budgets are part of the
//! pass condition where a runtime target exists.

use std::process::ExitCode;
use std::time::Duration;

use fatpoints::closed_forms::VERLINDE_TOLERANCE;
use fatpoints::field::Field;
use fatpoints::verify::{run_suite, SuiteReport, VerifyOptions};

struct Criterion {
    id: &'static str,
    what: &'static str,
    suite: &'static str,
    budget: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: "1", what: "duality between powers of linear forms and fat points", suite: "duality", budget: Some(Duration::from_secs(120)) },
    Criterion { id: "2", what: "n+2 points: regularity formula vs oracle", suite: "n2-regularity", budget: Some(Duration::from_secs(300)) },
    Criterion { id: "3", what: "n+2 points: initial degree formula vs oracle", suite: "n2-alpha", budget: None },
    Criterion { id: "4", what: "n+3 points, even n: regularity and top dimension 1", suite: "n3-even", budget: None },
    Criterion { id: "5", what: "n+3 points, n=3, d=6: regularity 12, top dimension 1", suite: "n3-odd", budget: Some(Duration::from_secs(60)) },
    Criterion { id: "6", what: "Verlinde numbers vs oracle (tolerance 1e-6)", suite: "verlinde", budget: None },
    Criterion { id: "7", what: "Eulerian numbers, spline identity, peak second difference signs", suite: "eulerian", budget: None },
    Criterion { id: "8", what: "WLP witness identity and q=1 sign pattern", suite: "wlp-identity", budget: None },
    Criterion { id: "9", what: "WLP failure thresholds finite and equal to the frozen table", suite: "wlp-scan", budget: None },
    Criterion { id: "10", what: "reduction steps preserve oracle dimension; L_2(2d-1; d^4) = 0", suite: "reduction", budget: None },
    Criterion { id: "11", what: "containment, Chudnovsky and Demailly checks", suite: "containment", budget: None },
];

/// Further oracle suites run alongside the criteria.
const SUPPLEMENTARY: &[&str] = &["closed-forms", "n2-vanishing", "wlp-oracle"];

fn line(tag: &str, what: &str, rep: &SuiteReport, budget: Option<Duration>) -> bool {
    let in_time = budget.is_none_or(|b| rep.elapsed_ms <= b.as_millis());
    let pass = rep.ok() && in_time;
    let budget_note = budget.map_or(String::new(), |b| format!(", budget {}s", b.as_secs()));
    println!(
        "[{}] {tag}: {what} ({} cases, {} mismatches, {} flagged, {} ms{budget_note})",
        if pass { "PASS" } else { "FAIL" },
        rep.cases,
        rep.mismatches.len(),
        rep.flagged.len(),
        rep.elapsed_ms,
    );
    for p in rep.mismatches.iter().chain(&rep.flagged).take(10) {
        println!("       reproduce: {} :: {}", p.case, p.detail);
    }
    pass
}

fn main() -> ExitCode {
    assert_eq!(VERLINDE_TOLERANCE, 1e-6);
    let opts = VerifyOptions { seeds: 3, base_seed: 0, field: Field::default() };
    let mut all = true;
    for c in CRITERIA {
        match run_suite(c.suite, &opts) {
            Ok(rep) => all &= line(&format!("criterion {}", c.id), c.what, &rep, c.budget),
            Err(e) => {
                println!("[FAIL] criterion {}: {} (error: {e})", c.id, c.what);
                all = false;
            }
        }
    }
    for s in SUPPLEMENTARY {
        match run_suite(s, &opts) {
            Ok(rep) => all &= line("supplementary", s, &rep, None),
            Err(e) => {
                println!("[FAIL] supplementary: {s} (error: {e})");
                all = false;
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
