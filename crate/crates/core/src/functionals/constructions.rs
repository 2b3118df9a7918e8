use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Element, Lattice};
use crate::subset::IndexSet;

use super::FunctionalTable;

/// `P_𝒜(f) = ⋁_{X ∈ 𝒜} ⋀_{x ∈ X} f(x)` for a nonempty family of nonempty
/// subsets of `{1..k}`.
pub fn term_functional_from_family(
    lattice: Arc<Lattice>,
    arity: usize,
    family: &[IndexSet],
) -> Result<FunctionalTable> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.iter().any(|x| x.is_empty()) {
        return Err(Error::EmptyMember);
    }
    if let Some(x) = family.iter().find(|x| x.max_index() > arity) {
        return Err(Error::ArityViolation(format!("member {x} exceeds arity {arity}")));
    }
    let l = lattice.clone();
    FunctionalTable::from_fn(lattice, arity, |f| {
        l.join_all(family.iter().map(|x| l.meet_all(x.positions().map(|p| f[p]))))
    })
}

/// A symmetric ternary functional on the three-element chain `0 < a < 1`
/// that is homogeneous but not nondecreasing:
///
/// * `F(x, x, x) = x`;
/// * two coordinates `0`, the third `a` or `1`: `F = a`;
/// * one coordinate `u ∈ {0, a}`, the other two in `{a, 1}`: `F = u`.
///
/// Every input must be covered by some case and all applicable cases must
/// agree; otherwise construction fails.
pub fn symmetric_homogeneous_counterexample(lattice: Arc<Lattice>) -> Result<FunctionalTable> {
    if lattice.len() != 3 || !lattice.is_chain() {
        return Err(Error::InvalidConfig(
            "the counterexample is defined on the three-element chain".into(),
        ));
    }
    let zero = lattice.bottom();
    let one = lattice.top();
    let a = lattice
        .elements()
        .find(|&e| e != zero && e != one)
        .expect("three-element chain has a middle element");
    let low = |x: Element| x == zero || x == a;
    let high = |x: Element| x == a || x == one;

    let mut conflict = None;
    let table = FunctionalTable::from_fn(lattice.clone(), 3, |f| {
        let mut candidates: Vec<Element> = Vec::new();
        if f[0] == f[1] && f[1] == f[2] {
            candidates.push(f[0]);
        }
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            if f[j] == zero && f[k] == zero && (f[i] == a || f[i] == one) {
                candidates.push(a);
            }
            if low(f[i]) && high(f[j]) && high(f[k]) {
                candidates.push(f[i]);
            }
        }
        match candidates.first() {
            Some(&v) if candidates.iter().all(|&c| c == v) => v,
            _ => {
                conflict.get_or_insert_with(|| f.to_vec());
                zero
            }
        }
    })?;
    if let Some(f) = conflict {
        return Err(Error::RouteDisagreement(format!(
            "case analysis does not determine a unique value at {}",
            super::fmt_tuple(&lattice, &f)
        )));
    }
    Ok(table)
}
