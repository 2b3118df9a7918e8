//! Sugeno integrals of a capacity on the three-element chain.

use std::sync::Arc;

use lattice_functionals::formats::parse_capacity;
use lattice_functionals::{Continuity, Lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = Arc::new(Lattice::chain(3)?);
    let cap = parse_capacity(include_str!("data/majority.cap"), "data/majority.cap", l.clone())?;
    print!("{cap}");

    let table = cap.to_table()?;
    for f in table.inputs().take(9) {
        let names: Vec<&str> = f.iter().map(|&e| l.element_name(e)).collect();
        println!("S({}) = {}", names.join(","), l.element_name(cap.sugeno_integral(&f)?));
    }

    let report = table.classify(Continuity::Lenient)?;
    println!("\n{}", report.render(&l));
    Ok(())
}
