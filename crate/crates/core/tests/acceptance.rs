//! One pass/fail line per acceptance criterion.
//!
//! Exits non-zero when a criterion fails that is not listed in `KNOWN_FAILURES`.

use std::process::ExitCode;
use std::time::Instant;

use cremona_core::reproduce::{run, Report};

/// Criteria failing on table entries that have no known correction.
const KNOWN_FAILURES: [u32; 1] = [6];

const CRITERIA: [(u32, &str, &[&str]); 10] = [
    (1, "group counts", &["group-counts", "conjugacy-14"]),
    (2, "integrable growth", &["growth-A"]),
    (3, "Euler reproduction", &["euler-decomp", "euler-invariants"]),
    (4, "periodic case", &["growth-B"]),
    (5, "non-integrable case", &["growth-C", "entropy-C"]),
    (6, "invariant tables", &["tables-A", "tables-B", "tables-C"]),
    (7, "covariance", &["covariance"]),
    (8, "singular orbits", &["orbits"]),
    (9, "theta map", &["theta"]),
    (10, "generating-function round trip", &["gf-euler"]),
];

fn summary(reports: &[Report]) -> String {
    let failures: Vec<String> = reports.iter().flat_map(|r| r.failures.iter().map(move |f| format!("{}: {f}", r.id))).collect();
    let notes: Vec<String> = reports.iter().flat_map(|r| r.notes.iter().cloned()).collect();
    let mut parts = Vec::new();
    if !failures.is_empty() {
        parts.push(format!("failed [{}]", failures.join("; ")));
    }
    if !notes.is_empty() {
        parts.push(format!("notes [{}]", notes.join("; ")));
    }
    parts.join(" ")
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for (id, name, checks) in CRITERIA {
        let t = Instant::now();
        let reports: Vec<Report> = checks.iter().map(|c| run(c).expect("catalog id")).collect();
        let secs = t.elapsed().as_secs_f64();
        let pass = reports.iter().all(|r| r.pass);
        let status = match (pass, KNOWN_FAILURES.contains(&id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected.push(id);
                "FAIL"
            }
        };
        println!("criterion {id:>2} {status} [{secs:.2}s] {name} ({}) {}", checks.join(", "), summary(&reports));
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
