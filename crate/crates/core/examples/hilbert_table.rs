//! Hilbert function of a monomial complete intersection and its differences.
//!
//! `cargo run --example hilbert_table [vars] [exponent]`

use fatpoints::hilbert::{check_shape, ci_hilbert, diff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let vars = args.first().copied().unwrap_or(4) as usize;
    let d = args.get(1).copied().unwrap_or(3);

    let h = ci_hilbert(vars, &vec![d; vars])?;
    let d1 = diff(&h, 1)?;
    let d2 = diff(&h, 2)?;
    println!("K[x_1..x_{vars}]/(x_i^{d})");
    println!("{:>3} {:>10} {:>10} {:>10}", "j", "h", "Δh", "Δ²h");
    for j in 0..=h.j_max() {
        println!("{j:>3} {:>10} {:>10} {:>10}", h.at(j), d1.at(j), d2.at(j));
    }
    println!("\nshape: {:?}", check_shape(&h)?);
    Ok(())
}
