//! Eulerian numbers, their consecutive differences, and the shape scan.
//!
//! `cargo run --example eulerian [n_max]`

use fatpoints::combinatorics::{eulerian_row, peak_second_difference, scan_conjecture_71};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(15);

    for i in 1..=8 {
        let row: Vec<String> = eulerian_row(i)?.iter().map(ToString::to_string).collect();
        println!("A({i}, ·) = {}", row.join(" "));
    }

    println!("\npeak second differences:");
    for m in 2..=8 {
        println!("  m = {m}: {}", peak_second_difference(m)?);
    }

    println!("\ndifference shapes up to n = {n_max}:");
    for row in scan_conjecture_71(n_max)? {
        let mark = if row.conforms { "" } else { "  <- differs from the expected pattern" };
        println!("  n = {:>2}: {:?}{mark}", row.n, row.shape);
    }
    Ok(())
}
