use std::sync::Arc;

use proptest::prelude::*;

use lattice_functionals::duality::SetFamily;
use lattice_functionals::formats::{parse_capacity, parse_lattice, parse_table};
use lattice_functionals::suite::{catalog, random_capacity, random_family, random_nondecreasing, random_term};
use lattice_functionals::{Element, FunctionalTable, IndexSet, Lattice, Signature};

fn lattice() -> impl Strategy<Value = Arc<Lattice>> {
    (0..catalog().len()).prop_map(|i| catalog()[i].clone())
}

fn with_elements(count: usize) -> impl Strategy<Value = (Arc<Lattice>, Vec<Element>)> {
    lattice().prop_flat_map(move |l| {
        let n = l.len();
        (Just(l), proptest::collection::vec((0..n).prop_map(Element::new), count))
    })
}

proptest! {
    #[test]
    fn lattice_identities((l, e) in with_elements(3)) {
        let (x, y, z) = (e[0], e[1], e[2]);
        prop_assert_eq!(l.meet(x, y), l.meet(y, x));
        prop_assert_eq!(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
        prop_assert_eq!(l.meet(x, l.join(x, y)), x);
        prop_assert_eq!(l.join(x, l.meet(x, y)), x);
        prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
        // The distributive inequality holds in every lattice.
        prop_assert!(l.leq(l.join(l.meet(x, y), l.meet(x, z)), l.meet(x, l.join(y, z))));
        if l.is_distributive() {
            prop_assert_eq!(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
        }
    }

    #[test]
    fn printed_terms_reparse(l in lattice(), k in 1usize..4, depth in 0usize..5, seed: u64) {
        let sig = Signature::indexed(l, k).unwrap();
        let t = random_term(&sig, depth, seed);
        let printed = sig.print(&t);
        let back = sig.parse(&printed).unwrap();
        prop_assert_eq!(sig.print(&back), printed);
        prop_assert_eq!(sig.table(&back).unwrap(), sig.table(&t).unwrap());
    }

    #[test]
    fn normal_forms_are_equivalent_on_distributive_lattices(l in lattice(), k in 1usize..4, seed: u64) {
        prop_assume!(l.is_distributive());
        let sig = Signature::indexed(l, k).unwrap();
        let t = random_term(&sig, 3, seed);
        let dnf = sig.term_of(&sig.dnf_of(&t).unwrap());
        let cnf = sig.term_of(&sig.cnf_of(&t).unwrap());
        prop_assert!(sig.equivalent(&t, &dnf).unwrap());
        prop_assert!(sig.equivalent(&dnf, &cnf).unwrap());
    }

    #[test]
    fn sugeno_integral_matches_its_definition(l in lattice(), k in 1usize..4, seed: u64, input_seed: usize) {
        prop_assume!(l.is_distributive());
        let cap = random_capacity(&l, k, seed).unwrap();
        let n = l.len();
        let f: Vec<Element> = (0..k).map(|i| Element::new((input_seed >> (3 * i)) % n)).collect();
        let expected = l.join_all(
            IndexSet::all(k).map(|x| l.meet(cap.value(x), l.meet_all(x.positions().map(|p| f[p])))),
        );
        prop_assert_eq!(cap.sugeno_integral(&f).unwrap(), expected);
    }

    #[test]
    fn blocker_of_blocker_is_up_closure(k in 1usize..6, seed: u64) {
        let sets = random_family(k, seed).unwrap();
        let masks: Vec<u64> = sets.iter().map(|x| u64::from(x.bits())).collect();
        let family = SetFamily::from_masks(k, masks).unwrap();
        let twice = family.blocker().unwrap().blocker().unwrap();
        prop_assert_eq!(twice, family.up_closure().unwrap());
    }

    #[test]
    fn file_formats_round_trip(l in lattice(), k in 1usize..3, seed: u64) {
        prop_assert_eq!(&parse_lattice(&l.to_string(), "mem").unwrap(), l.as_ref());
        let t = random_nondecreasing(&l, k, seed).unwrap();
        prop_assert_eq!(parse_table(&t.to_string(), "mem", l.clone()).unwrap(), t);
        prop_assume!(l.is_distributive());
        let cap = random_capacity(&l, k, seed).unwrap();
        prop_assert_eq!(parse_capacity(&cap.to_string(), "mem", l.clone()).unwrap(), cap);
    }

    #[test]
    fn lower_and_upper_forms_agree_on_nondecreasing_tables(l in lattice(), seed: u64) {
        prop_assume!(l.is_distributive() && l.len() <= 6);
        let t: FunctionalTable = random_nondecreasing(&l, 2, seed).unwrap();
        let lower = t.p_lower();
        prop_assert_eq!(&lower, &t.p_upper());
        prop_assert!(lower.is_nondecreasing());
        prop_assert_eq!(lower == t, t.is_polynomial().unwrap());
    }
}
