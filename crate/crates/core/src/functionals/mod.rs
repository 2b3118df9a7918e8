//! Functionals `F: L^A → L` for finite `A = {1..k}`, stored as lookup tables.
//!
//! An input tuple `f` is encoded mixed-radix with position 1 least
//! significant: `index(f) = Σ idx(f(i)) · n^(i-1)` where `n = |L|` and
//! `idx` is the element index. Table files list values in this order.

mod capacity;
mod classify;
mod constructions;

use std::fmt;
use std::sync::Arc;

use crate::error::{guard, Error, Result};
use crate::lattice::{Element, ElementSet, Lattice};
use crate::maps::{enumerate_continuous, same_lattice, Continuity, EndoMap};
use crate::subset::{IndexSet, MAX_ARITY};

pub use capacity::Capacity;
pub use classify::ClassificationReport;
pub use constructions::{symmetric_homogeneous_counterexample, term_functional_from_family};

/// Largest table (number of input tuples) a [`FunctionalTable`] may hold.
pub const MAX_TABLE_INPUTS: u128 = 1_000_000;

/// The tuple with top at the positions in `x` and bottom elsewhere.
pub fn characteristic_input(lattice: &Lattice, k: usize, x: IndexSet) -> Vec<Element> {
    (0..k)
        .map(|p| if x.contains(p) { lattice.top() } else { lattice.bottom() })
        .collect()
}

pub(crate) fn fmt_tuple(lattice: &Lattice, f: &[Element]) -> String {
    let parts: Vec<&str> = f.iter().map(|&e| lattice.element_name(e)).collect();
    format!("({})", parts.join(","))
}

/// Advances `f` to the next tuple in encoding order; false after the last.
pub(crate) fn next_input(f: &mut [Element], n: usize) -> bool {
    for slot in f.iter_mut() {
        if slot.index() + 1 < n {
            *slot = Element::new(slot.index() + 1);
            return true;
        }
        *slot = Element::new(0);
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalTable {
    lattice: Arc<Lattice>,
    arity: usize,
    values: Vec<Element>,
}

/// `f <= g` pointwise but `F(f) > F(g)` fails to hold; `upper` is `lower`
/// with one coordinate raised by a cover step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneViolation {
    pub lower: Vec<Element>,
    pub upper: Vec<Element>,
    pub lower_value: Element,
    pub upper_value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotencyViolation {
    pub constant: Element,
    pub value: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translation {
    /// `x ↦ x ∧ c`
    Meet,
    /// `x ↦ x ∨ c`
    Join,
}

/// `F(γ ∘ f) != γ(F(f))` for a translation `γ` by `constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityViolation {
    pub constant: Element,
    pub translation: Translation,
    pub input: Vec<Element>,
    pub transformed: Element,
    pub expected: Element,
}

/// `F(γ ∘ f) != γ(F(f))` for a continuous `γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceViolation {
    pub map: EndoMap,
    pub input: Vec<Element>,
    pub transformed: Element,
    pub expected: Element,
}

impl MonotoneViolation {
    pub fn describe(&self, l: &Lattice) -> String {
        format!(
            "{} <= {} but F = {} vs {}",
            fmt_tuple(l, &self.lower),
            fmt_tuple(l, &self.upper),
            l.element_name(self.lower_value),
            l.element_name(self.upper_value)
        )
    }
}

impl IdempotencyViolation {
    pub fn describe(&self, l: &Lattice) -> String {
        format!(
            "F(c,...,c) = {} for c = {}",
            l.element_name(self.value),
            l.element_name(self.constant)
        )
    }
}

impl HomogeneityViolation {
    pub fn describe(&self, l: &Lattice) -> String {
        let op = match self.translation {
            Translation::Meet => "∧",
            Translation::Join => "∨",
        };
        format!(
            "c = {}, f = {}: F(f {op} c) = {} but F(f) {op} c = {}",
            l.element_name(self.constant),
            fmt_tuple(l, &self.input),
            l.element_name(self.transformed),
            l.element_name(self.expected)
        )
    }
}

impl InvarianceViolation {
    pub fn describe(&self, l: &Lattice) -> String {
        format!(
            "{}, f = {}: F(γ∘f) = {} but γ(F(f)) = {}",
            self.map,
            fmt_tuple(l, &self.input),
            l.element_name(self.transformed),
            l.element_name(self.expected)
        )
    }
}

impl FunctionalTable {
    pub fn new(lattice: Arc<Lattice>, arity: usize, values: Vec<Element>) -> Result<FunctionalTable> {
        let expected = input_count(&lattice, arity)?;
        if values.len() != expected {
            return Err(Error::ArityViolation(format!(
                "table has {} entries, expected {}^{} = {}",
                values.len(),
                lattice.len(),
                arity,
                expected
            )));
        }
        if let Some(e) = values.iter().find(|e| !lattice.contains(**e)) {
            return Err(Error::UnknownElement(format!("#{}", e.index())));
        }
        Ok(FunctionalTable {
            lattice,
            arity,
            values,
        })
    }

    /// Tabulates `eval` over every input tuple.
    pub fn from_fn<F>(lattice: Arc<Lattice>, arity: usize, mut eval: F) -> Result<FunctionalTable>
    where
        F: FnMut(&[Element]) -> Element,
    {
        let count = input_count(&lattice, arity)?;
        let mut values = Vec::with_capacity(count);
        let mut f = vec![Element::new(0); arity];
        loop {
            values.push(eval(&f));
            if !next_input(&mut f, lattice.len()) {
                break;
            }
        }
        FunctionalTable::new(lattice, arity, values)
    }

    pub fn constant(lattice: Arc<Lattice>, arity: usize, c: Element) -> Result<FunctionalTable> {
        FunctionalTable::from_fn(lattice, arity, |_| c)
    }

    /// The projection onto zero-based position `position`.
    pub fn projection(lattice: Arc<Lattice>, arity: usize, position: usize) -> Result<FunctionalTable> {
        if position >= arity {
            return Err(Error::ArityViolation(format!(
                "projection onto position {} of a {arity}-ary functional",
                position + 1
            )));
        }
        FunctionalTable::from_fn(lattice, arity, |f| f[position])
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn input_count(&self) -> usize {
        self.values.len()
    }

    pub fn encode(&self, f: &[Element]) -> usize {
        debug_assert_eq!(f.len(), self.arity);
        let n = self.lattice.len();
        f.iter().rev().fold(0, |acc, e| acc * n + e.index())
    }

    pub fn decode(&self, mut index: usize) -> Vec<Element> {
        let n = self.lattice.len();
        (0..self.arity)
            .map(|_| {
                let e = Element::new(index % n);
                index /= n;
                e
            })
            .collect()
    }

    #[inline]
    pub fn value(&self, f: &[Element]) -> Element {
        self.values[self.encode(f)]
    }

    pub fn value_at_characteristic(&self, x: IndexSet) -> Element {
        self.value(&characteristic_input(&self.lattice, self.arity, x))
    }

    /// Input tuples in encoding order.
    pub fn inputs(&self) -> impl Iterator<Item = Vec<Element>> + '_ {
        (0..self.values.len()).map(|i| self.decode(i))
    }

    /// `F(f ∨ g)`-style pointwise combination: a new table with
    /// `F'(f) = op(self(f), other(f))`.
    pub fn zip_with<Op>(&self, other: &FunctionalTable, op: Op) -> Result<FunctionalTable>
    where
        Op: Fn(Element, Element) -> Element,
    {
        same_lattice(&self.lattice, &other.lattice)?;
        if self.arity != other.arity {
            return Err(Error::ArityViolation("tables of different arity".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        FunctionalTable::new(self.lattice.clone(), self.arity, values)
    }

    /// First cover-adjacent pair `f ⋖ g` in scan order (input index, then
    /// coordinate, then cover) with `F(f) ≰ F(g)`.
    pub fn check_nondecreasing(&self) -> Option<MonotoneViolation> {
        let l = &self.lattice;
        let n = l.len();
        let strides: Vec<usize> = (0..self.arity).map(|i| n.pow(i as u32)).collect();
        for idx in 0..self.values.len() {
            let f = self.decode(idx);
            for (i, &fi) in f.iter().enumerate() {
                for &u in l.upper_covers(fi) {
                    let up = idx - fi.index() * strides[i] + u.index() * strides[i];
                    if !l.leq(self.values[idx], self.values[up]) {
                        let mut g = f.clone();
                        g[i] = u;
                        return Some(MonotoneViolation {
                            lower: f,
                            upper: g,
                            lower_value: self.values[idx],
                            upper_value: self.values[up],
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.check_nondecreasing().is_none()
    }

    pub fn check_idempotent(&self) -> Option<IdempotencyViolation> {
        self.lattice.elements().find_map(|c| {
            let value = self.value(&vec![c; self.arity]);
            (value != c).then_some(IdempotencyViolation { constant: c, value })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.check_idempotent().is_none()
    }

    /// `F(I_X)` for every `X`, indexed by mask.
    pub fn characteristic_values(&self) -> Vec<Element> {
        IndexSet::all(self.arity).map(|x| self.value_at_characteristic(x)).collect()
    }

    /// The lower normal form `P_F(f) = ⋁_{X ∈ 𝒜} F(I_X) ∧ ⋀_{x ∈ X} f(x)`
    /// with `𝒜 = {X : F(I_X) != 0}`.
    pub fn p_lower(&self) -> FunctionalTable {
        let l = self.lattice.clone();
        let coeffs = self.characteristic_values();
        let k = self.arity;
        let mut partial = vec![l.top(); 1 << k];
        FunctionalTable::from_fn(l.clone(), k, |f| {
            let mut acc = l.bottom();
            for mask in 0..(1usize << k) {
                if mask > 0 {
                    let p = mask.trailing_zeros() as usize;
                    partial[mask] = l.meet(partial[mask & (mask - 1)], f[p]);
                }
                if coeffs[mask] != l.bottom() {
                    acc = l.join(acc, l.meet(coeffs[mask], partial[mask]));
                }
            }
            acc
        })
        .expect("same shape as an existing table")
    }

    /// The upper normal form `P^F(f) = ⋀_{X ∈ ℬ} F(I_{A∖X}) ∨ ⋁_{x ∈ X} f(x)`
    /// with `ℬ = {X : F(I_{A∖X}) != 1}`.
    pub fn p_upper(&self) -> FunctionalTable {
        let l = self.lattice.clone();
        let coeffs = self.characteristic_values();
        let k = self.arity;
        let full = (1usize << k) - 1;
        let mut partial = vec![l.bottom(); 1 << k];
        FunctionalTable::from_fn(l.clone(), k, |f| {
            let mut acc = l.top();
            for mask in 0..(1usize << k) {
                if mask > 0 {
                    let p = mask.trailing_zeros() as usize;
                    partial[mask] = l.join(partial[mask & (mask - 1)], f[p]);
                }
                let b = coeffs[full & !mask];
                if b != l.top() {
                    acc = l.meet(acc, l.join(b, partial[mask]));
                }
            }
            acc
        })
        .expect("same shape as an existing table")
    }

    /// First input where the table differs from its lower normal form.
    pub fn normal_form_mismatch(&self) -> Option<Vec<Element>> {
        let lower = self.p_lower();
        (0..self.values.len())
            .find(|&i| self.values[i] != lower.values[i])
            .map(|i| self.decode(i))
    }

    /// Polynomial by the normal form: nondecreasing and equal to `P_F`.
    pub fn polynomial_by_normal_form(&self) -> bool {
        self.is_nondecreasing() && self.normal_form_mismatch().is_none()
    }

    /// Polynomial by the homogeneity axioms: nondecreasing and
    /// range-homogeneous.
    pub fn polynomial_by_range_homogeneity(&self) -> bool {
        self.is_nondecreasing() && self.is_range_homogeneous()
    }

    /// Computes both characterizations; on a distributive lattice they must
    /// agree, and a disagreement is reported as an error.
    pub fn is_polynomial(&self) -> Result<bool> {
        let by_form = self.polynomial_by_normal_form();
        if self.lattice.is_distributive() && by_form != self.polynomial_by_range_homogeneity() {
            return Err(Error::RouteDisagreement(format!(
                "normal-form polynomial test says {by_form}, homogeneity test disagrees"
            )));
        }
        Ok(by_form)
    }

    /// Homogeneity restricted to translations by constants in `constants`.
    pub fn check_homogeneous_on(&self, constants: ElementSet) -> Option<HomogeneityViolation> {
        let l = &self.lattice;
        let mut g = vec![l.bottom(); self.arity];
        for c in constants.iter() {
            for (idx, f) in self.inputs().enumerate() {
                let value = self.values[idx];
                for translation in [Translation::Meet, Translation::Join] {
                    let op = |x: Element| match translation {
                        Translation::Meet => l.meet(x, c),
                        Translation::Join => l.join(x, c),
                    };
                    for (slot, &x) in g.iter_mut().zip(&f) {
                        *slot = op(x);
                    }
                    let transformed = self.value(&g);
                    let expected = op(value);
                    if transformed != expected {
                        return Some(HomogeneityViolation {
                            constant: c,
                            translation,
                            input: f,
                            transformed,
                            expected,
                        });
                    }
                }
            }
        }
        None
    }

    /// `F(f ∧ c) = F(f) ∧ c` and `F(f ∨ c) = F(f) ∨ c` for all `c` and `f`.
    pub fn check_homogeneous(&self) -> Option<HomogeneityViolation> {
        self.check_homogeneous_on(self.lattice.universe())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.check_homogeneous().is_none()
    }

    /// Convex hull of the realized range.
    pub fn range_hull(&self) -> ElementSet {
        let range: ElementSet = self.values.iter().copied().collect();
        self.lattice.convex_hull(range)
    }

    pub fn check_range_homogeneous(&self) -> Option<HomogeneityViolation> {
        self.check_homogeneous_on(self.range_hull())
    }

    pub fn is_range_homogeneous(&self) -> bool {
        self.check_range_homogeneous().is_none()
    }

    /// `⟨x⟩_F = med(⋀ hull, x, ⋁ hull)`.
    pub fn clamp_to_range(&self, x: Element) -> Element {
        let hull = self.range_hull();
        let l = &self.lattice;
        l.median(l.meet_set(hull), x, l.join_set(hull))
    }

    /// Invariance under the given maps; the first `(γ, f)` violation in
    /// scan order (maps in the given order, inputs in encoding order).
    pub fn check_invariant_under(&self, maps: &[EndoMap]) -> Option<InvarianceViolation> {
        let mut g = vec![self.lattice.bottom(); self.arity];
        for map in maps {
            for idx in 0..self.values.len() {
                let f = self.decode(idx);
                for (slot, &x) in g.iter_mut().zip(&f) {
                    *slot = map.apply(x);
                }
                let transformed = self.value(&g);
                let expected = map.apply(self.values[idx]);
                if transformed != expected {
                    return Some(InvarianceViolation {
                        map: map.clone(),
                        input: f,
                        transformed,
                        expected,
                    });
                }
            }
        }
        None
    }

    /// Invariance under every continuous self-map of the lattice.
    pub fn check_invariant(&self, mode: Continuity) -> Result<Option<InvarianceViolation>> {
        let maps = enumerate_continuous(&self.lattice, mode)?;
        Ok(self.check_invariant_under(&maps))
    }

    pub fn is_invariant(&self, mode: Continuity) -> Result<bool> {
        Ok(self.check_invariant(mode)?.is_none())
    }

    /// First `X` with `F(I_X)` outside `{0, 1}`.
    pub fn non_boolean_coefficient(&self) -> Option<IndexSet> {
        let l = &self.lattice;
        IndexSet::all(self.arity).find(|&x| {
            let v = self.value_at_characteristic(x);
            v != l.bottom() && v != l.top()
        })
    }

    pub fn sugeno_by_normal_form(&self) -> bool {
        self.polynomial_by_normal_form() && self.is_idempotent()
    }

    pub fn sugeno_by_homogeneity(&self) -> bool {
        self.is_nondecreasing() && self.is_homogeneous()
    }

    /// Idempotent polynomial; both characterizations are computed and
    /// cross-checked on distributive lattices.
    pub fn is_sugeno(&self) -> Result<bool> {
        let by_form = self.is_polynomial()? && self.is_idempotent();
        if self.lattice.is_distributive() && by_form != self.sugeno_by_homogeneity() {
            return Err(Error::RouteDisagreement(format!(
                "normal-form Sugeno test says {by_form}, homogeneity test disagrees"
            )));
        }
        Ok(by_form)
    }

    /// A Sugeno integral whose values on characteristic inputs are all 0 or 1.
    pub fn is_term_functional(&self) -> Result<bool> {
        Ok(self.is_sugeno()? && self.non_boolean_coefficient().is_none())
    }
}

impl fmt::Display for FunctionalTable {
    /// The table file body: one `v1 ... vk -> w` line per input.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.lattice;
        writeln!(f, "functional k={} lattice={}", self.arity, l.name())?;
        for (idx, input) in self.inputs().enumerate() {
            let names: Vec<&str> = input.iter().map(|&e| l.element_name(e)).collect();
            writeln!(f, "{} -> {}", names.join(" "), l.element_name(self.values[idx]))?;
        }
        Ok(())
    }
}

fn input_count(lattice: &Lattice, arity: usize) -> Result<usize> {
    if arity == 0 {
        return Err(Error::ArityViolation("functionals need at least one argument".into()));
    }
    guard("arity", arity as u128, MAX_ARITY as u128)?;
    let count = (lattice.len() as u128).pow(arity as u32);
    guard("table inputs", count, MAX_TABLE_INPUTS)?;
    Ok(count as usize)
}

#[cfg(test)]
mod tests;
