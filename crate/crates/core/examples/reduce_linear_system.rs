//! Reduce a planar (or higher) fat-point linear system to a base case and
//! compare with the rank oracle on random points.
//!
//! `cargo run --release --example reduce_linear_system -- "L_2(6; 3,3,3,2)"`

use fatpoints::linsys::{reduce, default_max_steps, LinearSystemSpec};
use fatpoints::oracle::{fat_point_dim, random_config};
use fatpoints::field::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "L_2(7; 4,4,4,4)".to_string());
    let spec: LinearSystemSpec = text.parse()?;

    let trace = reduce(&spec, default_max_steps(&spec))?;
    trace.replay()?;
    print!("{}", trace.render());

    if spec.s() > 0 {
        let cfg = random_config(spec.n as usize, spec.s(), None, 1, Field::default())?;
        println!("oracle at random points: {}", fat_point_dim(&cfg, &spec.mults, spec.j)?);
    }
    Ok(())
}
