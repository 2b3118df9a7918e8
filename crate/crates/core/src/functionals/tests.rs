use std::sync::Arc;

use super::*;

fn chain(n: usize) -> Arc<Lattice> {
    Arc::new(Lattice::chain(n).unwrap())
}

fn el(l: &Lattice, name: &str) -> Element {
    l.element(name).unwrap()
}

fn tuple(l: &Lattice, names: &[&str]) -> Vec<Element> {
    names.iter().map(|n| el(l, n)).collect()
}

fn median3(l: &Arc<Lattice>) -> FunctionalTable {
    let m = l.clone();
    FunctionalTable::from_fn(l.clone(), 3, move |f| m.median(f[0], f[1], f[2])).unwrap()
}

fn med_with_constant(l: &Arc<Lattice>, c: &str) -> FunctionalTable {
    let c = el(l, c);
    let m = l.clone();
    FunctionalTable::from_fn(l.clone(), 2, move |f| m.median(f[0], c, f[1])).unwrap()
}

fn parity(l: &Arc<Lattice>) -> FunctionalTable {
    FunctionalTable::from_fn(l.clone(), 3, |f| {
        Element::new(f.iter().map(|e| e.index()).sum::<usize>() % 2)
    })
    .unwrap()
}

fn counterexample() -> FunctionalTable {
    symmetric_homogeneous_counterexample(chain(3)).unwrap()
}

#[test]
fn encoding_is_little_endian_mixed_radix() {
    let l = chain(3);
    let t = FunctionalTable::projection(l.clone(), 2, 0).unwrap();
    assert_eq!(t.encode(&tuple(&l, &["a", "0"])), 1);
    assert_eq!(t.encode(&tuple(&l, &["0", "a"])), 3);
    assert_eq!(t.decode(5), tuple(&l, &["1", "a"]));
    for i in 0..t.input_count() {
        assert_eq!(t.encode(&t.decode(i)), i);
    }
}

#[test]
fn table_shape_errors() {
    let l = chain(3);
    assert!(matches!(
        FunctionalTable::new(l.clone(), 2, vec![l.bottom(); 8]),
        Err(Error::ArityViolation(_))
    ));
    assert!(matches!(
        FunctionalTable::constant(l.clone(), 0, l.bottom()),
        Err(Error::ArityViolation(_))
    ));
    assert!(matches!(
        FunctionalTable::constant(l.clone(), 13, l.bottom()),
        Err(Error::SizeGuard { .. })
    ));
}

#[test]
fn characteristic_inputs() {
    let l = chain(3);
    assert_eq!(characteristic_input(&l, 3, IndexSet::EMPTY), vec![l.bottom(); 3]);
    assert_eq!(characteristic_input(&l, 3, IndexSet::full(3)), vec![l.top(); 3]);
    assert_eq!(
        characteristic_input(&l, 3, IndexSet::from_indices(&[1, 3])),
        tuple(&l, &["1", "0", "1"])
    );
}

#[test]
fn nondecreasing_checks() {
    let l = chain(3);
    for p in 0..3 {
        assert!(FunctionalTable::projection(l.clone(), 3, p).unwrap().is_nondecreasing());
    }
    let w = counterexample().check_nondecreasing().unwrap();
    // first cover step in scan order where the value drops
    assert!(l.leq(w.upper_value, w.lower_value) && w.upper_value != w.lower_value);
    assert_eq!(w.lower, tuple(&l, &["a", "0", "0"]));
    assert_eq!(w.upper, tuple(&l, &["a", "a", "0"]));
    assert_eq!(w.describe(&l), "(a,0,0) <= (a,a,0) but F = a vs 0");
    // the pair (0,0,a) <= (0,a,a) drops from a to 0 as well
    let t = counterexample();
    assert_eq!(t.value(&tuple(&l, &["0", "0", "a"])), el(&l, "a"));
    assert_eq!(t.value(&tuple(&l, &["0", "a", "a"])), l.bottom());

    let b = chain(2);
    let w = parity(&b).check_nondecreasing().unwrap();
    assert_eq!(w.lower, tuple(&b, &["1", "0", "0"]));
    assert_eq!(w.upper, tuple(&b, &["1", "1", "0"]));
}

#[test]
fn nondecreasing_agrees_with_all_pairs_oracle() {
    // all 3^3 unary tables on the three-chain plus every 2-ary table on chain(2)
    for (l, k) in [(chain(3), 1usize), (chain(2), 2)] {
        let n = l.len();
        let count = n.pow(k as u32);
        for code in 0..n.pow(count as u32) {
            let mut c = code;
            let values: Vec<Element> = (0..count)
                .map(|_| {
                    let e = Element::new(c % n);
                    c /= n;
                    e
                })
                .collect();
            let t = FunctionalTable::new(l.clone(), k, values).unwrap();
            let oracle = t.inputs().enumerate().all(|(i, f)| {
                t.inputs().enumerate().all(|(j, g)| {
                    let below = f.iter().zip(&g).all(|(&x, &y)| l.leq(x, y));
                    !below || l.leq(t.values()[i], t.values()[j])
                })
            });
            assert_eq!(t.is_nondecreasing(), oracle);
        }
    }
}

#[test]
fn idempotency() {
    let l = chain(3);
    assert!(median3(&l).is_idempotent());
    let w = FunctionalTable::constant(l.clone(), 3, l.bottom())
        .unwrap()
        .check_idempotent()
        .unwrap();
    assert_eq!(w.constant, el(&l, "a"));
    assert!(parity(&chain(2)).is_idempotent());
}

#[test]
fn sugeno_integrals() {
    let l = chain(3);
    let majority = Capacity::from_fn(l.clone(), 3, |x| if x.len() >= 2 { l.top() } else { l.bottom() }).unwrap();
    assert_eq!(majority.to_table().unwrap(), median3(&l));

    for i in 0..3 {
        let dictator =
            Capacity::from_fn(l.clone(), 3, |x| if x.contains(i) { l.top() } else { l.bottom() }).unwrap();
        assert_eq!(dictator.to_table().unwrap(), FunctionalTable::projection(l.clone(), 3, i).unwrap());
    }

    let a = el(&l, "a");
    let v = Capacity::new(l.clone(), 2, vec![l.bottom(), a, a, l.top()]).unwrap();
    assert_eq!(v.to_table().unwrap(), med_with_constant(&l, "a"));
    assert_eq!(v.sugeno_integral(&[l.bottom(), l.top()]).unwrap(), a);
}

#[test]
fn capacity_errors() {
    let l = chain(3);
    let a = el(&l, "a");
    let unnormalized = Capacity::new(l.clone(), 2, vec![a, a, a, l.top()]).unwrap();
    assert_eq!(
        unnormalized.sugeno_integral(&[a, a]),
        Err(Error::CapacityNotNormalized)
    );
    let non_monotone = Capacity::new(l.clone(), 2, vec![l.bottom(), l.top(), a, a]).unwrap();
    assert!(matches!(
        non_monotone.sugeno_integral(&[a, a]),
        Err(Error::CapacityNotMonotone { .. })
    ));
    assert!(Capacity::new(l.clone(), 2, vec![l.bottom(); 3]).is_err());
}

#[test]
fn normal_forms() {
    let l = chain(3);
    let m = median3(&l);
    assert_eq!(m.p_lower(), m);
    assert_eq!(m.p_upper(), m);
    let top = FunctionalTable::constant(l.clone(), 2, l.top()).unwrap();
    assert_eq!(top.p_lower(), top);
    assert_eq!(top.p_upper(), top);
    let cx = counterexample();
    assert_ne!(cx.p_lower(), cx);
    assert!(!cx.polynomial_by_normal_form());
}

#[test]
fn normal_forms_match_direct_formulas() {
    // direct evaluation of both formulas over explicit families
    let l = Arc::new(Lattice::boolean(2).unwrap());
    let t = FunctionalTable::from_fn(l.clone(), 2, |f| l.join(l.meet(f[0], Element::new(1)), f[1])).unwrap();
    let k = 2;
    for f in t.inputs() {
        let lower = l.join_all(IndexSet::all(k).filter_map(|x| {
            let c = t.value_at_characteristic(x);
            (c != l.bottom()).then(|| l.meet(c, l.meet_all(x.positions().map(|p| f[p]))))
        }));
        let upper = l.meet_all(IndexSet::all(k).filter_map(|x| {
            let c = t.value_at_characteristic(x.complement(k));
            (c != l.top()).then(|| l.join(c, l.join_all(x.positions().map(|p| f[p]))))
        }));
        assert_eq!(t.p_lower().value(&f), lower);
        assert_eq!(t.p_upper().value(&f), upper);
    }
}

#[test]
fn polynomial_routes() {
    let l = chain(3);
    assert!(med_with_constant(&l, "a").is_polynomial().unwrap());
    assert!(med_with_constant(&l, "a").polynomial_by_range_homogeneity());
    assert!(!counterexample().is_polynomial().unwrap());
    let c = FunctionalTable::constant(l.clone(), 2, el(&l, "a")).unwrap();
    assert!(c.is_polynomial().unwrap());
}

#[test]
fn homogeneity() {
    let l = chain(3);
    assert!(med_with_constant(&l, "a").is_homogeneous());
    assert!(median3(&l).is_homogeneous());
    assert!(counterexample().is_homogeneous());
    let c = FunctionalTable::constant(l.clone(), 2, el(&l, "a")).unwrap();
    let w = c.check_homogeneous().unwrap();
    assert_eq!(w.constant, l.bottom());
    assert_eq!(w.translation, Translation::Meet);
    assert_eq!(w.describe(&l), "c = 0, f = (0,0): F(f ∧ c) = a but F(f) ∧ c = 0");
    // on {0,1} the only translations are the identity and constant maps
    assert!(parity(&chain(2)).is_homogeneous());
}

#[test]
fn range_hull_and_clamp() {
    let l = chain(3);
    assert_eq!(median3(&l).range_hull(), l.universe());
    assert_eq!(med_with_constant(&l, "a").range_hull(), l.universe());
    let a = el(&l, "a");
    let c = FunctionalTable::constant(l.clone(), 2, a).unwrap();
    assert_eq!(c.range_hull(), ElementSet::singleton(a));
    assert!(c.is_range_homogeneous());
    let p = parity(&chain(2));
    assert!(p.is_range_homogeneous());
    assert!(!p.is_nondecreasing());

    let c4 = chain(4);
    let (ea, eb) = (el(&c4, "a"), el(&c4, "b"));
    let t = FunctionalTable::from_fn(c4.clone(), 1, |f| c4.median(ea, f[0], eb)).unwrap();
    assert_eq!(t.range_hull(), [ea, eb].into_iter().collect());
    assert_eq!(t.clamp_to_range(c4.top()), eb);
    assert_eq!(t.clamp_to_range(c4.bottom()), ea);
    assert_eq!(t.clamp_to_range(ea), ea);
}

#[test]
fn invariance() {
    let l = chain(3);
    assert!(median3(&l).is_invariant(Continuity::Lenient).unwrap());

    let c4 = chain(4);
    let med = med_with_constant(&c4, "a");
    let w = med.check_invariant(Continuity::Lenient).unwrap().unwrap();
    assert_ne!(w.transformed, w.expected);
    // the map raising a to b also breaks invariance at f = (0, 1)
    let raise = EndoMap::from_names(c4.clone(), &["0", "b", "b", "1"]).unwrap();
    let f = tuple(&c4, &["0", "1"]);
    assert_eq!(c4.element_name(med.value(&raise.apply_pointwise(&f))), "a");
    assert_eq!(c4.element_name(raise.apply(med.value(&f))), "b");
    let v = med.check_invariant_under(&[raise]).unwrap();
    assert_eq!(v.input, tuple(&c4, &["a", "0"]));

    let b2 = Arc::new(Lattice::boolean(2).unwrap());
    let fam = [IndexSet::from_indices(&[1, 2]), IndexSet::from_indices(&[3])];
    let t = term_functional_from_family(b2, 3, &fam).unwrap();
    assert!(t.is_invariant(Continuity::Lenient).unwrap());
}

#[test]
fn term_functional_and_sugeno_flags() {
    let l = chain(3);
    assert!(median3(&l).is_term_functional().unwrap());
    assert!(!med_with_constant(&l, "a").is_term_functional().unwrap());
    assert_eq!(med_with_constant(&l, "a").non_boolean_coefficient(), Some(IndexSet::from_indices(&[1])));
    let c = FunctionalTable::constant(l.clone(), 2, el(&l, "a")).unwrap();
    assert!(!c.is_term_functional().unwrap());
    assert!(med_with_constant(&l, "a").is_sugeno().unwrap());
    assert!(FunctionalTable::projection(l.clone(), 2, 1).unwrap().is_sugeno().unwrap());
    assert!(!c.is_sugeno().unwrap());
}

#[test]
fn classification_reports() {
    let l = chain(3);
    let r = counterexample().classify(Continuity::Lenient).unwrap();
    assert!(r.homogeneous);
    assert!(!r.nondecreasing);
    assert_eq!(r.invariant, Some(false));
    assert!(!r.polynomial);

    let r = median3(&l).classify(Continuity::Lenient).unwrap();
    assert!(r.term_functional && r.sugeno && r.polynomial && r.nondecreasing && r.homogeneous);
    assert_eq!(r.invariant, Some(true));
    assert!(r.witness_lines(&l).is_empty());

    let c = FunctionalTable::constant(l.clone(), 2, el(&l, "a")).unwrap();
    let r = c.classify(Continuity::Lenient).unwrap();
    assert!(r.polynomial && !r.sugeno);
    assert_eq!(r.invariant, Some(false));
    // the constant map to 0 already moves a
    let w = r.invariance_witness.unwrap();
    assert_eq!(w.map.image(), &[l.bottom(); 3]);
    assert!(r.idempotency_witness.is_some());
}

#[test]
fn families_to_term_functionals() {
    let l = chain(3);
    let singletons: Vec<IndexSet> = (1..=3).map(|i| IndexSet::from_indices(&[i])).collect();
    let join = FunctionalTable::from_fn(l.clone(), 3, |f| l.join_all(f.iter().copied())).unwrap();
    assert_eq!(term_functional_from_family(l.clone(), 3, &singletons).unwrap(), join);

    let pairs: Vec<IndexSet> = IndexSet::all(3).filter(|x| x.len() == 2).collect();
    assert_eq!(term_functional_from_family(l.clone(), 3, &pairs).unwrap(), median3(&l));

    let meet = FunctionalTable::from_fn(l.clone(), 3, |f| l.meet_all(f.iter().copied())).unwrap();
    assert_eq!(term_functional_from_family(l.clone(), 3, &[IndexSet::full(3)]).unwrap(), meet);

    assert_eq!(term_functional_from_family(l.clone(), 3, &[]), Err(Error::EmptyFamily));
    assert_eq!(
        term_functional_from_family(l.clone(), 3, &[IndexSet::EMPTY]),
        Err(Error::EmptyMember)
    );
}

#[test]
fn zero_one_capacity_matches_its_minimal_sets() {
    let l = chain(4);
    let v = Capacity::from_fn(l.clone(), 3, |x| {
        if x.contains(0) && x.len() >= 2 {
            l.top()
        } else {
            l.bottom()
        }
    })
    .unwrap();
    let minimal = v.minimal_top_sets();
    assert_eq!(
        minimal,
        vec![IndexSet::from_indices(&[1, 2]), IndexSet::from_indices(&[1, 3])]
    );
    assert_eq!(
        v.to_table().unwrap(),
        term_functional_from_family(l.clone(), 3, &minimal).unwrap()
    );
}

#[test]
fn counterexample_values() {
    let l = chain(3);
    let t = counterexample();
    assert_eq!(t.value(&tuple(&l, &["0", "0", "a"])), el(&l, "a"));
    for x in l.elements() {
        assert_eq!(t.value(&[x, x, x]), x);
    }
    assert_eq!(t.value(&tuple(&l, &["0", "a", "1"])), l.bottom());
    assert_eq!(t.value(&tuple(&l, &["a", "1", "a"])), el(&l, "a"));
    // symmetric under coordinate permutations
    for f in t.inputs() {
        let rotated = [f[1], f[2], f[0]];
        let swapped = [f[1], f[0], f[2]];
        assert_eq!(t.value(&f), t.value(&rotated));
        assert_eq!(t.value(&f), t.value(&swapped));
    }
    assert!(symmetric_homogeneous_counterexample(chain(4)).is_err());
}

#[test]
fn table_file_rendering() {
    let l = chain(2);
    let t = FunctionalTable::projection(l, 1, 0).unwrap();
    assert_eq!(t.to_string(), "functional k=1 lattice=chain2\n0 -> 0\n1 -> 1\n");
}
