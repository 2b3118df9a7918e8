use super::*;
use crate::lattice::Lattice;

fn fam(l: &Lattice, text: &str) -> SetFamily {
    SetFamily::parse_elements(l, text).unwrap()
}

fn el(l: &Lattice, name: &str) -> Element {
    l.element(name).unwrap()
}

#[test]
fn cone_property() {
    let c2 = Lattice::chain(2).unwrap();
    assert!(is_cone(&c2, &fam(&c2, "{0,1}"), &fam(&c2, "{1}")));
    assert!(!is_cone(&c2, &fam(&c2, "{0}"), &fam(&c2, "{1}")));
    let n5 = Lattice::n5();
    assert!(is_cone(&n5, &fam(&n5, "{x},{y}"), &fam(&n5, "{x,y}")));
    assert!(Cone::new(fam(&c2, "{0}"), fam(&c2, "{1}")).is_err());
}

#[test]
fn saturation_from_top_singletons() {
    let c2 = Lattice::chain(2).unwrap();
    let start = Cone::new(fam(&c2, "{1}"), fam(&c2, "{1}")).unwrap();
    let u = extend_to_ultracone(&c2, &start).unwrap();
    assert_eq!(u.h, fam(&c2, "{1},{0,1}"));
    assert_eq!(u.k, fam(&c2, "{1},{0,1}"));
    assert!(is_ultracone(&c2, &u).unwrap());
    assert_eq!(extend_to_ultracone(&c2, &u).unwrap(), u);
}

#[test]
fn non_maximal_cone_is_detected() {
    let c3 = Lattice::chain(3).unwrap();
    let c = Cone::new(fam(&c3, "{1}"), fam(&c3, "{1}")).unwrap();
    assert!(!is_ultracone(&c3, &c).unwrap());
}

#[test]
fn saturation_from_full_sets() {
    let l = Lattice::m3();
    let all = SetFamily::from_element_sets(&l, [l.universe()]).unwrap();
    let c = Cone::new(all.clone(), all).unwrap();
    let u = extend_to_ultracone(&l, &c).unwrap();
    assert!(is_ultracone(&l, &u).unwrap());
}

#[test]
fn blocker_cone_is_ultracone() {
    for l in [Lattice::chain(3).unwrap(), Lattice::n5(), Lattice::boolean(2).unwrap()] {
        let h = fam(&l, &format!("{{{}}}", l.element_names()[1]));
        let c = Cone::from_blocker(&h).unwrap();
        assert!(is_ultracone(&l, &c).unwrap());
    }
    let n5 = Lattice::n5();
    let c = Cone::from_blocker(&fam(&n5, "{z,x},{z,y}")).unwrap();
    assert!(is_ultracone(&n5, &c).unwrap());
}

#[test]
fn crosscut_fails_on_pentagon() {
    let n5 = Lattice::n5();
    let start = Cone::new(fam(&n5, "{z,x}"), fam(&n5, "{z},{x,y}")).unwrap();
    let u = extend_to_ultracone(&n5, &start).unwrap();
    assert!(is_ultracone(&n5, &u).unwrap());
    assert_eq!(crosscut_values(&n5, &u), (el(&n5, "x"), el(&n5, "z")));
}

#[test]
fn single_member_cone_has_equal_crosscut() {
    for l in [Lattice::n5(), Lattice::m3(), Lattice::chain(4).unwrap()] {
        for x in l.elements() {
            let h = SetFamily::from_element_sets(&l, [ElementSet::singleton(x)]).unwrap();
            let u = extend_to_ultracone(&l, &Cone::new(h.clone(), h).unwrap()).unwrap();
            assert_eq!(crosscut_values(&l, &u), (x, x));
        }
    }
}

#[test]
fn blockers() {
    let a = SetFamily::from_indices(3, &[&[1]]).unwrap();
    let b = a.blocker().unwrap();
    assert_eq!(b.len(), 4);
    assert!(b.members().all(|m| m & 1 == 1));

    let pairs = SetFamily::from_indices(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
    assert_eq!(pairs.blocker().unwrap().minimal_members(), pairs);

    let one = SetFamily::from_indices(2, &[&[1, 2]]).unwrap();
    assert_eq!(
        one.blocker().unwrap().minimal_members(),
        SetFamily::from_indices(2, &[&[1], &[2]]).unwrap()
    );

    assert_eq!(SetFamily::new(3).blocker(), Err(Error::EmptyFamily));
    assert_eq!(SetFamily::from_masks(3, [0]), Err(Error::EmptyMember));
}

#[test]
fn double_blocker_is_up_closure() {
    for fam_mask in 1u64..(1 << 7) {
        let masks = (0..7).filter(|b| fam_mask >> b & 1 == 1).map(|b| b + 1);
        let a = SetFamily::from_masks(3, masks).unwrap();
        assert_eq!(a.blocker().unwrap().blocker().unwrap(), a.up_closure().unwrap());
    }
}

#[test]
fn blocker_identity_on_pentagon_witness() {
    let n5 = Lattice::n5();
    let f = [el(&n5, "x"), el(&n5, "y"), el(&n5, "z")];
    let a = SetFamily::from_indices(3, &[&[3, 1], &[3, 2]]).unwrap();
    let r = blocker_identity(&n5, &a, &f).unwrap();
    assert_eq!((r.lower, r.upper, r.equal), (el(&n5, "x"), el(&n5, "z"), false));

    let single = SetFamily::from_indices(3, &[&[1]]).unwrap();
    let r = blocker_identity(&n5, &single, &f).unwrap();
    assert_eq!((r.lower, r.upper), (f[0], f[0]));
}

#[test]
fn complete_distributivity_search() {
    let b2 = Lattice::boolean(2).unwrap();
    assert!(verify_complete_distributivity(&b2, 3).unwrap().passed());

    for l in [Lattice::n5(), Lattice::m3()] {
        let v = verify_complete_distributivity(&l, 3).unwrap();
        let w = v.witness.expect("non-distributive lattice must fail");
        assert_eq!(w.ground.len(), 3);
        let again = blocker_identity(&l, &w.family, &w.ground).unwrap();
        assert_eq!((again.lower, again.upper), (w.lower, w.upper));
        assert!(!again.equal);
    }
    assert!(verify_complete_distributivity(&Lattice::n5(), 2).unwrap().passed());
}

#[test]
fn grid_law_cases() {
    let n5 = Lattice::n5();
    let g = |s: &str| el(&n5, s);
    let grid = vec![vec![g("z"), g("0")], vec![g("x"), g("y")]];
    let r = grid_law(&n5, &grid).unwrap();
    assert_eq!((r.lhs, r.rhs, r.equal), (g("z"), g("x"), false));

    let row = vec![vec![g("x"), g("y"), g("0")]];
    let r = grid_law(&n5, &row).unwrap();
    assert_eq!((r.lhs, r.rhs), (g("1"), g("1")));

    let c4 = Lattice::chain(4).unwrap();
    let e: Vec<Element> = c4.elements().collect();
    let grid = vec![vec![e[1], e[3], e[0]], vec![e[2], e[0], e[1]], vec![e[0], e[2], e[3]]];
    assert!(grid_law(&c4, &grid).unwrap().equal);

    let wide = vec![vec![e[0]; 20]; 6];
    assert!(matches!(grid_law(&c4, &wide), Err(Error::SizeGuard { .. })));
}

#[test]
fn family_text_round_trip() {
    let p = Lattice::product(&Lattice::chain(3).unwrap(), &Lattice::chain(2).unwrap()).unwrap();
    let f = fam(&p, "{(0,1),(a,0)}, {(1,1)}");
    assert_eq!(SetFamily::parse_elements(&p, &f.render_elements(&p)).unwrap(), f);
    assert_eq!(f.len(), 2);

    let i = SetFamily::parse_indices(3, "{1,3},{2}").unwrap();
    assert_eq!(i.render_indices(), "{2},{1,3}");
    assert!(SetFamily::parse_indices(3, "{1,4}").is_err());
    assert!(SetFamily::parse_indices(3, "{1},").is_err());
    assert_eq!(SetFamily::parse_indices(3, "{}"), Err(Error::EmptyMember));
}
