//! Blockers, cones and cross-cuts on a distributive and a
//! non-distributive lattice.

use lattice_functionals::duality::{
    crosscut_values, extend_to_ultracone, verify_complete_distributivity, Cone, SetFamily,
};
use lattice_functionals::Lattice;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let family = SetFamily::parse_indices(3, "{1,2},{2,3}")?;
    println!("family {family}, blocker {}", family.blocker()?);

    let starts = [
        (Lattice::boolean(2)?, "{a,b}", "{0,a,b},{0,a,1}"),
        (Lattice::n5(), "{y,z}", "{0,x,y},{0,x,z}"),
    ];
    for (l, h, k) in starts {
        println!("\n{}:", l.name());
        let cone = Cone::new(SetFamily::parse_elements(&l, h)?, SetFamily::parse_elements(&l, k)?)?;
        let ultra = extend_to_ultracone(&l, &cone)?;
        let (lower, upper) = crosscut_values(&l, &ultra);
        println!(
            "  ultracone from H = {h}, K = {k}: {} members, lower = {}, upper = {}",
            ultra.h.len() + ultra.k.len(),
            l.element_name(lower),
            l.element_name(upper)
        );

        let verdict = verify_complete_distributivity(&l, 3)?;
        match &verdict.witness {
            None => println!("  blocker identity holds on {} instances", verdict.instances),
            Some(w) => println!("  blocker identity fails: {}", w.describe(&l)),
        }
    }
    Ok(())
}
