//! Verlinde numbers as dimensions of fat-point linear systems, checked
//! against the rank oracle.
//!
//! `cargo run --release --example verlinde`

use fatpoints::closed_forms::{verlinde, ConfigClass};
use fatpoints::field::Field;
use fatpoints::oracle::{power_ideal_dim, random_config};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, two_j) in [(2u32, 2u32), (2, 4), (3, 1), (3, 3), (4, 2)] {
        let v = verlinde(n, two_j)?;
        let cfg = random_config(n as usize, n as usize + 3, Some(ConfigClass::LgpN3 { n }), 3, Field::default())?;
        let degree = (n as i64 + 1) * two_j as i64 / 2;
        let dim = power_ideal_dim(&cfg, &vec![two_j + 1; cfg.len()], degree)?;
        println!("n = {n}, j = {two_j}/2: formula {:.9} -> {}, oracle {dim}", v.raw, v.rounded);
    }
    Ok(())
}
