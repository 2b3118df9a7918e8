//! Builds lattices from covers and from the catalog, then reports the
//! structure the rest of the crate relies on.

use lattice_functionals::formats::parse_lattice;
use lattice_functionals::suite::{catalog, CATALOG};
use lattice_functionals::Lattice;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let diamond = Lattice::from_covers(
        "diamond",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )?;
    diamond.validate_axioms()?;
    println!("{diamond}\n");

    let a = diamond.element("a").unwrap();
    let b = diamond.element("b").unwrap();
    println!(
        "a ∧ b = {}, a ∨ b = {}",
        diamond.element_name(diamond.meet(a, b)),
        diamond.element_name(diamond.join(a, b))
    );
    if let Some((x, y, z)) = diamond.distributivity_witness() {
        let n = |e| diamond.element_name(e);
        println!("distributivity fails at x={}, y={}, z={}", n(x), n(y), n(z));
    }

    // Files use the same text as Display.
    let pentagon = parse_lattice(include_str!("data/n5.lat"), "data/n5.lat")?;
    println!("\n{} elements, distributive: {}", pentagon.len(), pentagon.is_distributive());

    println!("\ncatalog:");
    for (name, l) in CATALOG.iter().zip(catalog()) {
        println!("  {name:<14} n={}  distributive={}", l.len(), l.is_distributive());
    }
    Ok(())
}
