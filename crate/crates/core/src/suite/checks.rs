use std::collections::{BTreeSet, HashSet};

use crate::duality::{
    blocker_identity, crosscut_values, grid_law, extend_to_ultracone, is_ultracone,
    verify_complete_distributivity, SetFamily,
};
use crate::error::{Error, Result};
use crate::functionals::{
    fmt_tuple, symmetric_homogeneous_counterexample, term_functional_from_family, FunctionalTable,
};
use crate::lattice::{Element, Lattice};
use crate::maps::{enumerate_continuous, is_continuous, Continuity, EndoMap};
use crate::subset::IndexSet;
use crate::terms::Signature;

use super::generators::{
    enumerate_all, enumerate_nondecreasing, random_capacity, random_cone, random_family,
    random_grid, random_nondecreasing, random_term,
};
use super::{CheckFn, Ctx, SuiteName, Tally};

type Applies = fn(&str) -> bool;

/// Number of monotone maps `2^X → {0,1}` for `|X| = 1, 2, 3`.
const DEDEKIND: [usize; 3] = [3, 6, 20];

fn any(_: &str) -> bool {
    true
}

fn distributive(n: &str) -> bool {
    !matches!(n, "n5" | "m3")
}

fn non_distributive(n: &str) -> bool {
    !distributive(n)
}

fn small_distributive(n: &str) -> bool {
    matches!(n, "chain2" | "chain3" | "chain4" | "chain5" | "bool2")
}

fn chain2(n: &str) -> bool {
    n == "chain2"
}

fn chain3(n: &str) -> bool {
    n == "chain3"
}

fn chain4(n: &str) -> bool {
    n == "chain4"
}

fn chain3_or_4(n: &str) -> bool {
    matches!(n, "chain3" | "chain4")
}

fn chain3_or_bool2(n: &str) -> bool {
    matches!(n, "chain3" | "bool2")
}

fn chain4_or_bool2(n: &str) -> bool {
    matches!(n, "chain4" | "bool2")
}

/// Checks of a suite with the lattices each applies to.
pub(crate) fn plan(suite: SuiteName) -> Vec<(&'static str, Applies, CheckFn)> {
    match suite {
        SuiteName::Lattice => vec![
            ("lattice.axioms", any as Applies, lattice_axioms as CheckFn),
            ("lattice.distributivity", any, lattice_distributivity),
        ],
        SuiteName::Thm32 => vec![
            ("thm32.enumerated", chain3 as Applies, normal_forms_enumerated as CheckFn),
            ("thm32.random", chain4_or_bool2, normal_forms_random),
            ("thm32.terms", distributive, normal_forms_terms),
            ("thm32.refutation", non_distributive, normal_forms_refutation),
        ],
        SuiteName::Cor33 => vec![("cor33.blocker", chain3_or_bool2 as Applies, boolean_coefficients as CheckFn)],
        SuiteName::Thm34 => vec![
            ("thm34.identity", any as Applies, blocker_identity_search as CheckFn),
            ("thm34.all_inputs", distributive, blocker_identity_all_inputs),
            ("thm34.grid", any, grid_law_random),
        ],
        SuiteName::Cones => vec![("cones.crosscut", any as Applies, cones_crosscut as CheckFn)],
        SuiteName::Props41 => vec![
            ("props41.sugeno", distributive as Applies, sugeno_homogeneity as CheckFn),
            ("props41.term_invariance", small_distributive, term_invariance),
        ],
        SuiteName::Thm43 => vec![("thm43.set_equality", chain3 as Applies, term_functional_set as CheckFn)],
        SuiteName::Prop45 => vec![
            ("prop45.space", chain3_or_4 as Applies, invariant_is_monotone as CheckFn),
            ("prop45.boolean", chain2, two_element_remark),
        ],
        SuiteName::Thm47 => vec![("thm47.space", chain3_or_4 as Applies, sugeno_characterization as CheckFn)],
        SuiteName::Thm48 => vec![("thm48.space", chain3_or_4 as Applies, polynomial_characterization as CheckFn)],
        SuiteName::Examples => vec![
            ("examples.counterexample", chain3 as Applies, example_counterexample as CheckFn),
            ("examples.median_constant", chain4, example_median_constant),
            ("examples.median", chain3, example_median),
        ],
    }
}

/// Arity used for full-space checks: 2 on `chain3`, 1 on `chain4`.
fn space_arity(l: &Lattice) -> usize {
    if l.len() <= 3 {
        2
    } else {
        1
    }
}

fn first_mismatch(a: &FunctionalTable, b: &FunctionalTable) -> Option<Vec<Element>> {
    (0..a.input_count())
        .find(|&i| a.values()[i] != b.values()[i])
        .map(|i| a.decode(i))
}

fn lattice_axioms(ctx: &Ctx<'_>) -> Result<Tally> {
    let mut t = Tally::new(false);
    t.instances = 1;
    if let Err(e) = ctx.lattice.validate_axioms() {
        t.fail(ctx, ctx.config.seed, e.to_string());
    }
    Ok(t)
}

fn lattice_distributivity(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let expected = distributive(l.name());
    let mut t = Tally::new(!expected);
    t.instances = 1;
    let seed = ctx.config.seed;
    if l.is_distributive() != expected {
        t.fail(ctx, seed, format!("is_distributive = {}", l.is_distributive()));
    }
    if l.is_completely_distributive() != l.is_distributive() {
        t.fail(ctx, seed, "complete distributivity disagrees with distributivity".into());
    }
    if let Some((a, b, c)) = l.distributivity_witness() {
        let lhs = l.meet(a, l.join(b, c));
        let rhs = l.join(l.meet(a, b), l.meet(a, c));
        if lhs == rhs {
            t.fail(ctx, seed, "reported distributivity witness satisfies the law".into());
        }
        t.witness = Some(fmt_tuple(l, &[a, b, c]));
    }
    t.require_witness(ctx);
    Ok(t)
}

/// Number of monotone maps from the product order on `L^k` into a chain
/// with `levels` elements, counted as chains of up-sets `U_1 ⊇ ... ⊇ U_{levels-1}`.
pub(crate) fn monotone_count_oracle(l: &Lattice, k: usize, levels: usize) -> u64 {
    let n = l.len();
    let m = n.pow(k as u32);
    assert!(m <= 20, "oracle enumerates all subsets of the input space");
    let digits = |mut i: usize| {
        (0..k)
            .map(|_| {
                let d = i % n;
                i /= n;
                Element::new(d)
            })
            .collect::<Vec<_>>()
    };
    let inputs: Vec<Vec<Element>> = (0..m).map(digits).collect();
    let below = |i: usize, j: usize| inputs[i].iter().zip(&inputs[j]).all(|(&a, &b)| l.leq(a, b));
    let up_sets: Vec<u32> = (0u32..(1 << m))
        .filter(|&s| {
            (0..m).all(|i| s >> i & 1 == 0 || (0..m).all(|j| !below(i, j) || s >> j & 1 == 1))
        })
        .collect();
    let mut ways = vec![1u64; up_sets.len()];
    for _ in 1..levels.saturating_sub(1) {
        ways = up_sets
            .iter()
            .map(|&inner| {
                up_sets
                    .iter()
                    .zip(&ways)
                    .filter(|(&outer, _)| outer & inner == inner)
                    .map(|(_, &w)| w)
                    .sum()
            })
            .collect();
    }
    if levels <= 1 {
        1
    } else {
        ways.iter().sum()
    }
}

fn normal_forms_enumerated(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let k = 2;
    let mut t = Tally::new(false);
    let mut seen = HashSet::new();
    for table in enumerate_nondecreasing(l, k)? {
        t.instances += 1;
        if !seen.insert(table.values().to_vec()) {
            t.fail(ctx, seed, format!("duplicate table {}", fmt_tuple(l, table.values())));
        }
        if !table.is_nondecreasing() {
            t.fail(ctx, seed, format!("enumerated table {} is not nondecreasing", fmt_tuple(l, table.values())));
        }
        if let Some(f) = first_mismatch(&table.p_lower(), &table.p_upper()) {
            t.fail(ctx, seed, format!("P_F != P^F at {} for {}", fmt_tuple(l, &f), fmt_tuple(l, table.values())));
        }
    }
    let oracle = monotone_count_oracle(l, k, l.len());
    let filtered = enumerate_all(l, k)?.filter(FunctionalTable::is_nondecreasing).count() as u64;
    if oracle != t.instances || filtered != t.instances {
        t.fail(
            ctx,
            seed,
            format!("enumerated {} tables, up-set oracle {oracle}, filter {filtered}", t.instances),
        );
    }
    t.note = Some(format!("{} nondecreasing tables", t.instances));
    Ok(t)
}

fn normal_forms_random(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(false);
    for i in 0..ctx.config.budget.monotone {
        let seed = ctx.instance_seed(i);
        let table = random_nondecreasing(l, 2, seed)?;
        t.instances += 1;
        if !table.is_nondecreasing() {
            t.fail(ctx, seed, "generated table is not nondecreasing".into());
        } else if let Some(f) = first_mismatch(&table.p_lower(), &table.p_upper()) {
            t.fail(ctx, seed, format!("P_F != P^F at {}", fmt_tuple(l, &f)));
        }
    }
    Ok(t)
}

fn normal_forms_terms(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(false);
    for i in 0..ctx.config.budget.terms {
        let seed = ctx.instance_seed(i);
        let k = 1 + (i % 3) as usize;
        let sig = Signature::indexed(l.clone(), k)?;
        let term = random_term(&sig, 3, seed);
        let f = sig.table(&term)?;
        t.instances += 1;
        let printed = sig.print(&term);
        if let Some(x) = first_mismatch(&f, &f.p_lower()) {
            t.fail(ctx, seed, format!("{printed}: F != P_F at {}", fmt_tuple(l, &x)));
        } else if let Some(x) = first_mismatch(&f, &f.p_upper()) {
            t.fail(ctx, seed, format!("{printed}: F != P^F at {}", fmt_tuple(l, &x)));
        } else if sig.table(&sig.term_of(&sig.dnf_of(&term)?))? != f || sig.table(&sig.term_of(&sig.cnf_of(&term)?))? != f {
            t.fail(ctx, seed, format!("{printed}: synthesized normal form differs"));
        }
    }
    Ok(t)
}

fn normal_forms_refutation(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(true);
    let family = [IndexSet::from_indices(&[1, 3]), IndexSet::from_indices(&[2, 3])];
    let table = term_functional_from_family(l.clone(), 3, &family)?;
    t.instances = 1;
    if let Some(f) = first_mismatch(&table.p_lower(), &table.p_upper()) {
        t.witness = Some(format!(
            "F = x1&x3 | x2&x3 at {}: P_F = {}, P^F = {}",
            fmt_tuple(l, &f),
            l.element_name(table.p_lower().value(&f)),
            l.element_name(table.p_upper().value(&f))
        ));
    }
    t.require_witness(ctx);
    Ok(t)
}

fn boolean_coefficients(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let mut t = Tally::new(false);
    let mut counts = Vec::new();
    for k in 1..=3usize {
        let subsets = 1usize << k;
        let monotone: Vec<u32> = (0u32..(1 << subsets))
            .filter(|&v| {
                (0..subsets).all(|x| (0..subsets).all(|y| x & y != x || v >> x & 1 <= v >> y & 1))
            })
            .collect();
        counts.push(monotone.len());
        let inputs: Vec<Vec<Element>> = FunctionalTable::constant(l.clone(), k, l.bottom())?.inputs().collect();
        for v in monotone {
            t.instances += 1;
            let family: Vec<usize> = (0..subsets).filter(|&x| v >> x & 1 == 1).collect();
            let blocker: Vec<usize> = (0..subsets).filter(|&b| family.iter().all(|&x| b & x != 0)).collect();
            let pick = |m: usize, f: &[Element]| (0..k).filter(move |p| m >> p & 1 == 1).map(|p| f[p]).collect::<Vec<_>>();
            for f in &inputs {
                let lower = l.join_all(family.iter().map(|&x| l.meet_all(pick(x, f))));
                let upper = l.meet_all(blocker.iter().map(|&b| l.join_all(pick(b, f))));
                if lower != upper {
                    t.fail(ctx, seed, format!("k={k}, v={v:#b}: P_A = {} but P^B = {} at {}",
                        l.element_name(lower), l.element_name(upper), fmt_tuple(l, f)));
                    break;
                }
            }
            let degenerate = family.is_empty() || family.contains(&0);
            if !degenerate {
                let fam = SetFamily::from_masks(k, family.iter().map(|&x| x as u64))?;
                let computed: Vec<u64> = fam.blocker()?.members().collect();
                let direct: Vec<u64> = blocker.iter().map(|&b| b as u64).collect();
                if computed != direct {
                    t.fail(ctx, seed, format!("k={k}: blocker of {} disagrees with the direct definition", fam.render_indices()));
                }
            }
        }
    }
    if counts != DEDEKIND {
        t.fail(ctx, seed, format!("monotone 0/1 set function counts {counts:?}, expected {DEDEKIND:?}"));
    }
    t.note = Some(format!("monotone 0/1 set functions for k=1..3: {counts:?}"));
    Ok(t)
}

fn blocker_identity_search(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let mut t = Tally::new(!l.is_distributive());
    match verify_complete_distributivity(l, 3) {
        Ok(v) => {
            t.instances = v.instances;
            if let Some(w) = v.witness {
                let again = blocker_identity(l, &w.family, &w.ground)?;
                if again.equal || (again.lower, again.upper) != (w.lower, w.upper) {
                    t.fail(ctx, seed, format!("witness does not replay: {}", w.describe(l)));
                }
                t.witness = Some(w.describe(l));
                if !t.expect_fail {
                    t.fail(ctx, seed, w.describe(l));
                }
            }
        }
        Err(Error::RouteDisagreement(m)) => t.fail(ctx, seed, m),
        Err(e) => return Err(e),
    }
    t.require_witness(ctx);
    Ok(t)
}

fn blocker_identity_all_inputs(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let k = 3;
    let mut t = Tally::new(false);
    let inputs: Vec<Vec<Element>> = FunctionalTable::constant(l.clone(), k, l.bottom())?.inputs().collect();
    for fam_mask in 1u64..(1 << 7) {
        let family = SetFamily::from_masks(k, (0..7).filter(|b| fam_mask >> b & 1 == 1).map(|b| b + 1))?;
        let minimal = family.blocker()?.minimal_members();
        for f in &inputs {
            t.instances += 1;
            let r = blocker_identity(l, &family, f)?;
            let via_minimal = l.meet_all(minimal.members().map(|m| {
                l.join_all((0..k).filter(|p| m >> p & 1 == 1).map(|p| f[p]))
            }));
            if !r.equal || via_minimal != r.upper {
                t.fail(ctx, seed, format!(
                    "family {} at {}: P_A = {}, P^B = {}, minimal P^B = {}",
                    family.render_indices(),
                    fmt_tuple(l, f),
                    l.element_name(r.lower),
                    l.element_name(r.upper),
                    l.element_name(via_minimal)
                ));
                break;
            }
        }
    }
    Ok(t)
}

fn grid_law_random(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(!l.is_distributive());
    for i in 0..ctx.config.budget.grids {
        let seed = ctx.instance_seed(i);
        let rows = 1 + (seed % 3) as usize;
        let cols = 1 + (seed / 3 % 3) as usize;
        let grid = random_grid(l, rows, cols, seed);
        let r = grid_law(l, &grid)?;
        t.instances += 1;
        if !r.equal {
            let text = format!(
                "rows {}: meet of joins = {}, join of meets = {}",
                grid.iter().map(|row| fmt_tuple(l, row)).collect::<Vec<_>>().join(" "),
                l.element_name(r.lhs),
                l.element_name(r.rhs)
            );
            if t.expect_fail {
                t.witness.get_or_insert(text);
            } else {
                t.fail(ctx, seed, text);
            }
        }
    }
    t.require_witness(ctx);
    Ok(t)
}

fn cones_crosscut(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(!l.is_distributive());
    for i in 0..ctx.config.budget.cones {
        let seed = ctx.instance_seed(i);
        let start = random_cone(l, seed)?;
        let u = extend_to_ultracone(l, &start)?;
        t.instances += 1;
        if !is_ultracone(l, &u)? {
            t.fail(ctx, seed, "saturation did not reach an ultracone".into());
            continue;
        }
        let (lower, upper) = crosscut_values(l, &u);
        if lower != upper {
            let text = format!(
                "start H = {}, K = {}: lower = {}, upper = {}",
                start.h.render_elements(l),
                start.k.render_elements(l),
                l.element_name(lower),
                l.element_name(upper)
            );
            if t.expect_fail {
                t.witness.get_or_insert(text);
            } else {
                t.fail(ctx, seed, text);
            }
        }
    }
    t.require_witness(ctx);
    Ok(t)
}

fn sugeno_homogeneity(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(false);
    for i in 0..ctx.config.budget.capacities {
        let seed = ctx.instance_seed(i);
        let k = 1 + (i % 3) as usize;
        let table = random_capacity(l, k, seed)?.to_table()?;
        t.instances += 1;
        if let Some(w) = table.check_nondecreasing() {
            t.fail(ctx, seed, format!("Sugeno integral not nondecreasing: {}", w.describe(l)));
        } else if let Some(w) = table.check_homogeneous() {
            t.fail(ctx, seed, format!("Sugeno integral not homogeneous: {}", w.describe(l)));
        }
    }
    Ok(t)
}

fn term_invariance(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let maps = enumerate_continuous(l, ctx.config.continuity)?;
    let mut t = Tally::new(false);
    for i in 0..ctx.config.budget.term_functionals {
        let seed = ctx.instance_seed(i);
        let k = 1 + (i % 3) as usize;
        let family = random_family(k, seed)?;
        let table = term_functional_from_family(l.clone(), k, &family)?;
        t.instances += 1;
        if let Some(w) = table.check_invariant_under(&maps) {
            let fam: Vec<String> = family.iter().map(ToString::to_string).collect();
            t.fail(ctx, seed, format!("family {}: {}", fam.join(","), w.describe(l)));
        }
    }
    Ok(t)
}

fn is_boolean_element(l: &Lattice, e: Element) -> bool {
    e == l.bottom() || e == l.top()
}

fn term_functional_set(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let k = 2;
    let maps = enumerate_continuous(l, ctx.config.continuity)?;
    let mut t = Tally::new(false);
    let mut lhs = BTreeSet::new();
    for table in enumerate_all(l, k)? {
        t.instances += 1;
        let boolean = table.characteristic_values().iter().all(|&c| is_boolean_element(l, c));
        if boolean && table.is_nondecreasing() && table.check_invariant_under(&maps).is_none() {
            lhs.insert(table.values().to_vec());
        }
    }
    let subsets = (1u32 << k) - 1;
    let mut rhs = BTreeSet::new();
    for fam_mask in 1u32..(1 << subsets) {
        let family: Vec<IndexSet> =
            (0..subsets).filter(|b| fam_mask >> b & 1 == 1).map(|b| IndexSet::from_bits(b + 1)).collect();
        rhs.insert(term_functional_from_family(l.clone(), k, &family)?.values().to_vec());
    }
    let term_count = rhs.len();
    if ctx.config.continuity == Continuity::Strict {
        // Constant 0 and 1 commute with every map fixing 0 and 1.
        for c in [l.bottom(), l.top()] {
            rhs.insert(vec![c; l.len().pow(k as u32)]);
        }
        t.note = Some("strict reading: the constants 0 and 1 are added to the term functionals".into());
    }
    if lhs != rhs {
        let diff: Vec<String> = lhs.symmetric_difference(&rhs).map(|v| fmt_tuple(l, v)).collect();
        t.fail(ctx, seed, format!("sets differ on tables {}", diff.join(" ")));
    }
    let note = format!("{} term functionals, {} tables in the characterized set", term_count, lhs.len());
    t.note = Some(match t.note.take() {
        Some(n) => format!("{note}; {n}"),
        None => note,
    });
    Ok(t)
}

fn invariant_is_monotone(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let k = space_arity(l);
    let maps = enumerate_continuous(l, ctx.config.continuity)?;
    let mut t = Tally::new(false);
    let mut invariant = 0u64;
    for table in enumerate_all(l, k)? {
        t.instances += 1;
        if table.check_invariant_under(&maps).is_none() {
            invariant += 1;
            if let Some(w) = table.check_nondecreasing() {
                t.fail(ctx, ctx.config.seed, format!(
                    "invariant table {} is not nondecreasing: {}",
                    fmt_tuple(l, table.values()),
                    w.describe(l)
                ));
            }
        }
    }
    t.note = Some(format!("k={k}: {invariant} invariant tables"));
    Ok(t)
}

fn two_element_remark(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let mut t = Tally::new(false);
    if ctx.config.continuity == Continuity::Strict {
        t.note = Some("skipped: the two-element case needs constant maps, which the strict reading excludes".into());
        return Ok(t);
    }
    let maps = enumerate_continuous(l, Continuity::Lenient)?;
    let mut non_monotone_invariant = 0u64;
    for k in 1..=3 {
        for table in enumerate_all(l, k)? {
            t.instances += 1;
            let invariant = table.check_invariant_under(&maps).is_none();
            if invariant != table.is_idempotent() {
                t.fail(ctx, seed, format!("k={k}, table {}: invariant = {invariant}", fmt_tuple(l, table.values())));
            }
            if invariant && !table.is_nondecreasing() {
                non_monotone_invariant += 1;
            }
        }
    }
    let parity = FunctionalTable::from_fn(l.clone(), 3, |f| {
        let ones = f.iter().filter(|&&x| x == l.top()).count();
        if ones % 2 == 1 {
            l.top()
        } else {
            l.bottom()
        }
    })?;
    t.instances += 1;
    if parity.check_invariant_under(&maps).is_some() || parity.is_nondecreasing() {
        t.fail(ctx, seed, "ternary parity should be invariant and not nondecreasing".into());
    }
    t.note = Some(format!("{non_monotone_invariant} invariant tables that are not nondecreasing"));
    Ok(t)
}

fn sugeno_characterization(ctx: &Ctx<'_>) -> Result<Tally> {
    space_equivalence(ctx, |t| t.is_nondecreasing() && t.is_homogeneous(), |t| {
        t.polynomial_by_normal_form() && t.is_idempotent()
    })
}

fn polynomial_characterization(ctx: &Ctx<'_>) -> Result<Tally> {
    space_equivalence(ctx, |t| t.is_nondecreasing() && t.is_range_homogeneous(), |t| {
        t.polynomial_by_normal_form()
    })
}

/// Asserts `lhs(F) ⟺ rhs(F)` over every table of the lattice's full space.
fn space_equivalence(
    ctx: &Ctx<'_>,
    lhs: fn(&FunctionalTable) -> bool,
    rhs: fn(&FunctionalTable) -> bool,
) -> Result<Tally> {
    let l = &ctx.lattice;
    let k = space_arity(l);
    let mut t = Tally::new(false);
    let mut members = 0u64;
    for table in enumerate_all(l, k)? {
        t.instances += 1;
        let (a, b) = (lhs(&table), rhs(&table));
        members += a as u64;
        if a != b {
            t.fail(ctx, ctx.config.seed, format!(
                "table {}: characterization {a}, normal form {b}",
                fmt_tuple(l, table.values())
            ));
        }
    }
    t.note = Some(format!("k={k}: {members} tables in both sets"));
    Ok(t)
}

fn example_counterexample(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(false);
    let table = symmetric_homogeneous_counterexample(l.clone())?;
    t.instances = 1;
    if !table.is_homogeneous() || table.is_nondecreasing() {
        t.fail(ctx, ctx.config.seed, format!(
            "homogeneous = {}, nondecreasing = {}",
            table.is_homogeneous(),
            table.is_nondecreasing()
        ));
    }
    Ok(t)
}

fn example_median_constant(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let seed = ctx.config.seed;
    let mut t = Tally::new(false);
    t.instances = 1;
    let sig = Signature::indexed(l.clone(), 2)?;
    let table = sig.table(&sig.parse("x1 & a | x1 & x2 | a & x2")?)?;
    let el = |n: &str| l.element_or_err(n);
    let gamma = EndoMap::new(l.clone(), vec![el("0")?, el("b")?, el("b")?, el("1")?])?;
    let f = [el("0")?, el("1")?];
    let lhs = table.value(&gamma.apply_pointwise(&f));
    let rhs = gamma.apply(table.value(&f));
    if !table.is_sugeno()? {
        t.fail(ctx, seed, "median with a constant should be a Sugeno integral".into());
    }
    if table.is_invariant(ctx.config.continuity)? {
        t.fail(ctx, seed, "median with a constant should not be invariant".into());
    }
    if !is_continuous(l, &gamma, ctx.config.continuity)? || lhs == rhs {
        t.fail(ctx, seed, "the map 0->0 a->b b->b 1->1 should break invariance at (0,1)".into());
    }
    t.witness = Some(format!(
        "{gamma}, f = (0,1): F(γ∘f) = {} but γ(F(f)) = {}",
        l.element_name(lhs),
        l.element_name(rhs)
    ));
    Ok(t)
}

fn example_median(ctx: &Ctx<'_>) -> Result<Tally> {
    let l = &ctx.lattice;
    let mut t = Tally::new(false);
    t.instances = 1;
    let table = FunctionalTable::from_fn(l.clone(), 3, |f| l.median(f[0], f[1], f[2]))?;
    if let Some(w) = table.check_invariant(ctx.config.continuity)? {
        t.fail(ctx, ctx.config.seed, format!("median not invariant: {}", w.describe(l)));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn up_set_oracle_counts() {
        let c2 = Lattice::chain(2).unwrap();
        let c3 = Lattice::chain(3).unwrap();
        assert_eq!(monotone_count_oracle(&c2, 1, 2), 3);
        assert_eq!(monotone_count_oracle(&c2, 2, 2), 6);
        assert_eq!(monotone_count_oracle(&c3, 1, 3), 10);
        assert_eq!(monotone_count_oracle(&c3, 2, 3), 175);
    }

    #[test]
    fn every_suite_has_checks() {
        for s in SuiteName::ALL {
            assert!(!plan(s).is_empty());
        }
    }
}
