//! Parses a term, prints its lower and upper normal forms and checks that
//! both describe the same functional.

use std::sync::Arc;

use lattice_functionals::{Lattice, Signature};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = Arc::new(Lattice::chain(4)?);
    let sig = Signature::new(l.clone(), &["x1", "x2", "x3"])?;
    let t = sig.parse("(x1 | b) & (x2 | x3) & (a | x1 | x3)")?;
    println!("term:      {}", sig.print(&t));

    let dnf = sig.dnf_of(&t)?;
    let cnf = sig.cnf_of(&t)?;
    let lower = sig.term_of(&dnf);
    let upper = sig.term_of(&cnf);
    println!("lower form: {}", sig.print(&lower));
    println!("upper form: {}", sig.print(&upper));
    println!("\ncoefficients F(I_X):\n{}", dnf.listing());

    println!("equivalent: {}", sig.equivalent(&lower, &upper)?);
    let f = [l.element("a").unwrap(), l.top(), l.bottom()];
    println!("F(a,1,0) = {}", l.element_name(sig.evaluate(&t, &f)?));
    Ok(())
}
