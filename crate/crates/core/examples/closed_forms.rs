//! Initial degrees, regularity, Waldschmidt constants and the containment
//! checks for every configuration class in a small range.
//!
//! `cargo run --example closed_forms [n]`

use fatpoints::closed_forms::{
    alpha_symbolic, chudnovsky_check, demailly_check, regularity_powers, resurgence, waldschmidt, ConfigClass,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let mut classes = vec![ConfigClass::Hyperplane { n }, ConfigClass::SpanningN1 { n }];
    classes.extend((1..=n).map(|dep_t| ConfigClass::SpanningN2 { n, dep_t }));
    classes.push(ConfigClass::LgpN3 { n });

    for class in classes {
        println!("{class}");
        let alphas: Vec<String> = (1..=6)
            .map(|k| alpha_symbolic(&class, k).map(|r| format!("{}{}", r.value, if r.is_exact() { "" } else { "?" })))
            .collect::<Result<_, _>>()?;
        println!("  alpha(I^(k)), k = 1..6: {}", alphas.join(" "));
        if !matches!(class, ConfigClass::Hyperplane { .. }) {
            let regs: Vec<String> = (1..=6)
                .map(|d| regularity_powers(&class, d).map(|r| format!("{}{}", r.value, if r.is_exact() { "" } else { "≤" })))
                .collect::<Result<_, _>>()?;
            println!("  reg of d-th powers, d = 1..6: {}", regs.join(" "));
        }
        println!("  Waldschmidt constant: {}", waldschmidt(&class)?);
        println!("  Chudnovsky bound holds: {}", chudnovsky_check(&class)?);
        println!("  Demailly bound (k = 2): {:?}", demailly_check(&class, 2)?);
        match resurgence(&class) {
            Ok(r) => println!("  resurgence: {r}"),
            Err(e) => println!("  resurgence: {e}"),
        }
    }
    Ok(())
}
