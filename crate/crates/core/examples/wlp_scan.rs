//! Scan even `n` for the degrees where the weak Lefschetz property is forced
//! to fail, and print the stabilization thresholds.
//!
//! `cargo run --release --example wlp_scan [n_max] [d_max] [--json]`

use fatpoints::wlp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let json = args.iter().any(|a| a == "--json");
    let nums: Vec<i64> = args.iter().filter_map(|a| a.parse().ok()).collect();
    let n_max = nums.first().copied().unwrap_or(20);
    let d_max = nums.get(1).copied().unwrap_or(400);

    let report = wlp::scan_failure(8..=n_max, 2..=d_max)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report.thresholds)?);
        return Ok(());
    }
    println!("{:>4} {:>6} {:>6} {:>11} {:>8}", "n", "d_max", "d0", "applicable", "failing");
    for t in &report.thresholds {
        let d0 = t.d0.map_or("-".to_string(), |d| d.to_string());
        println!("{:>4} {:>6} {:>6} {:>11} {:>8}", t.n, t.d_max, d0, t.applicable_cells, t.failing_cells);
    }
    let first = report.rows.iter().find(|r| r.verdict == wlp::Verdict::Fails);
    if let Some(r) = first {
        println!("\nfirst failing cell: n={} d={} witness Δh(r) = {} ({})", r.n, r.d, r.witness, r.clause.as_str());
    }
    Ok(())
}
