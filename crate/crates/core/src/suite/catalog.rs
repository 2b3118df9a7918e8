use std::sync::Arc;

use crate::lattice::Lattice;

/// Names of the built-in lattices, in report order.
pub const CATALOG: [&str; 9] = [
    "chain2",
    "chain3",
    "chain4",
    "chain5",
    "bool2",
    "bool3",
    "chain3xchain2",
    "n5",
    "m3",
];

/// A catalog lattice by name.
pub fn catalog_lattice(name: &str) -> Option<Lattice> {
    let chain = |n| Lattice::chain(n).expect("small chain");
    Some(match name {
        "chain2" => chain(2),
        "chain3" => chain(3),
        "chain4" => chain(4),
        "chain5" => chain(5),
        "bool2" => Lattice::boolean(2).expect("small boolean lattice"),
        "bool3" => Lattice::boolean(3).expect("small boolean lattice"),
        "chain3xchain2" => Lattice::product(&chain(3), &chain(2)).expect("small product"),
        "n5" => Lattice::n5(),
        "m3" => Lattice::m3(),
        _ => return None,
    })
}

/// Every catalog lattice, in [`CATALOG`] order.
pub fn catalog() -> Vec<Arc<Lattice>> {
    CATALOG
        .iter()
        .map(|n| Arc::new(catalog_lattice(n).expect("catalog names resolve")))
        .collect()
}
