//! Invariance under continuous self-maps: the median is invariant, the
//! median with a constant argument is not, and the witness says why.

use std::sync::Arc;

use lattice_functionals::maps::enumerate_continuous;
use lattice_functionals::{Continuity, FunctionalTable, Lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l3 = Arc::new(Lattice::chain(3)?);
    let maps = enumerate_continuous(&l3, Continuity::Lenient)?;
    println!("{} continuous maps on chain3:", maps.len());
    for g in &maps {
        println!("  {g}");
    }

    let median = FunctionalTable::from_fn(l3.clone(), 3, |f| l3.median(f[0], f[1], f[2]))?;
    let report = median.classify(Continuity::Lenient)?;
    println!("\nmedian: invariant={:?} sugeno={}", report.invariant, report.sugeno);

    let l4 = Arc::new(Lattice::chain(4)?);
    let a = l4.element("a").unwrap();
    let med_a = FunctionalTable::from_fn(l4.clone(), 2, |f| l4.median(f[0], a, f[1]))?;
    for mode in [Continuity::Lenient, Continuity::Strict] {
        let report = med_a.classify(mode)?;
        println!("\nmed(x1,a,x2), {mode:?} continuity:");
        print!("{}", report.render(&l4));
    }
    Ok(())
}
