//! Exact uniform B-splines: pieces, values at integers against Eulerian
//! numbers, the peak second difference, and the Gaussian limit.
//!
//! `cargo run --release --example splines [i]`

use fatpoints::splines::{bspline, gaussian_compare, lemma65_check, second_diff_sign};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let i: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);

    let b = bspline(i)?;
    println!("B_{i}: degree {}, support [0, {}], integral {}", b.degree(), b.support_end(), b.integral());
    for (j, piece) in b.pieces.iter().enumerate() {
        let c: Vec<String> = piece.iter().map(ToString::to_string).collect();
        println!("  on [{j}, {}): {}", j + 1, c.join(", "));
    }

    let rep = lemma65_check(i.max(2))?;
    println!("\n(i−1)!·B_i(j) equals A(i−1, j−1) for all j: {}", rep.holds);

    let signs: Vec<String> = (2..=10).map(|m| second_diff_sign(m).map(|s| format!("{s:+}"))).collect::<Result<_, _>>()?;
    println!("sign of the peak second difference of B_2m, m = 2..10: {}", signs.join(" "));

    let xs: Vec<f64> = (-12..=12).map(|t| t as f64 / 4.0).collect();
    for k in 0..=2 {
        let g = gaussian_compare(32, k, &xs)?;
        println!("B_32 derivative {k} vs Gaussian: max deviation {:.2e} (bound {:.2e})", g.max_deviation, g.bound.unwrap_or(f64::NAN));
    }
    Ok(())
}
