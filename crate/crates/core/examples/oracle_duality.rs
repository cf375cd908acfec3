//! The rank oracle: the same dimension computed from powers of linear forms
//! and from fat points, over a prime field and over the rationals.
//!
//! `cargo run --release --example oracle_duality`

use fatpoints::field::Field;
use fatpoints::oracle::{duality_check, random_config, regularity_oracle, alpha_oracle};
use fatpoints::closed_forms::ConfigClass;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for field in [Field::default(), Field::Rational] {
        let cfg = random_config(3, 5, None, 42, field)?;
        println!("5 general points in P^3 over {field}:");
        for j in 2..=5 {
            let r = duality_check(&cfg, &[3, 3, 2, 2, 2], j)?;
            println!("  j = {j}: powers side {}, fat points side {}, equal {}", r.power_side, r.fat_point_side, r.equal);
        }
    }

    let class = ConfigClass::SpanningN2 { n: 3, dep_t: 2 };
    let cfg = random_config(3, 5, Some(class), 7, Field::default())?;
    println!("\n{class}: rank {}, least dependent subset size {:?}", cfg.rank, cfg.min_dependent);
    for d in 1..=4 {
        println!("  regularity of {d}-th powers: {}", regularity_oracle(&cfg, d)?);
    }
    println!("  alpha of the third symbolic power: {:?}", alpha_oracle(&cfg, 3, 10)?);
    Ok(())
}
