use std::fmt;
use std::sync::Arc;

use crate::error::{guard, Error, Result};
use crate::lattice::{Element, Lattice};
use crate::subset::{IndexSet, MAX_ARITY};

use super::FunctionalTable;

/// A set function `v` on the subsets of `{1..k}` with values in the lattice.
///
/// Construction only checks totality. Monotonicity and normalization
/// (`v(∅) = 0`, `v({1..k}) = 1`) are checked where the Sugeno integral is
/// evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Capacity {
    lattice: Arc<Lattice>,
    arity: usize,
    values: Vec<Element>,
}

impl Capacity {
    /// `values[mask]` is `v` of the subset with that mask.
    pub fn new(lattice: Arc<Lattice>, arity: usize, values: Vec<Element>) -> Result<Capacity> {
        guard("arity", arity as u128, MAX_ARITY as u128)?;
        if arity == 0 {
            return Err(Error::ArityViolation("capacity needs at least one index".into()));
        }
        if values.len() != 1 << arity {
            return Err(Error::ArityViolation(format!(
                "capacity lists {} subsets, expected {}",
                values.len(),
                1usize << arity
            )));
        }
        if let Some(e) = values.iter().find(|e| !lattice.contains(**e)) {
            return Err(Error::UnknownElement(format!("#{}", e.index())));
        }
        Ok(Capacity {
            lattice,
            arity,
            values,
        })
    }

    pub fn from_fn<F>(lattice: Arc<Lattice>, arity: usize, mut v: F) -> Result<Capacity>
    where
        F: FnMut(IndexSet) -> Element,
    {
        guard("arity", arity as u128, MAX_ARITY as u128)?;
        let values = IndexSet::all(arity).map(&mut v).collect();
        Capacity::new(lattice, arity, values)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn value(&self, x: IndexSet) -> Element {
        self.values[x.bits() as usize]
    }

    pub fn check_monotone(&self) -> Result<()> {
        let l = &self.lattice;
        for x in IndexSet::all(self.arity) {
            for p in x.positions() {
                let lower = x.without(p);
                if !l.leq(self.value(lower), self.value(x)) {
                    return Err(Error::CapacityNotMonotone {
                        lower: lower.to_string(),
                        upper: x.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn check_normalized(&self) -> Result<()> {
        let l = &self.lattice;
        if self.value(IndexSet::EMPTY) != l.bottom() || self.value(IndexSet::full(self.arity)) != l.top() {
            return Err(Error::CapacityNotNormalized);
        }
        Ok(())
    }

    pub fn is_zero_one_valued(&self) -> bool {
        let l = &self.lattice;
        self.values.iter().all(|&v| v == l.bottom() || v == l.top())
    }

    /// Minimal subsets with value top.
    pub fn minimal_top_sets(&self) -> Vec<IndexSet> {
        let top = self.lattice.top();
        let winners: Vec<IndexSet> = IndexSet::all(self.arity).filter(|&x| self.value(x) == top).collect();
        winners
            .iter()
            .copied()
            .filter(|&x| !winners.iter().any(|&y| y != x && y.is_subset(x)))
            .collect()
    }

    /// `⋁_{X ⊆ A} v(X) ∧ ⋀_{i ∈ X} f(i)`.
    pub fn sugeno_integral(&self, f: &[Element]) -> Result<Element> {
        self.check_monotone()?;
        self.check_normalized()?;
        if f.len() != self.arity {
            return Err(Error::ArityViolation(format!(
                "input has {} values for a {}-ary capacity",
                f.len(),
                self.arity
            )));
        }
        Ok(self.integral_unchecked(f))
    }

    fn integral_unchecked(&self, f: &[Element]) -> Element {
        let l = &self.lattice;
        l.join_all(IndexSet::all(self.arity).map(|x| {
            l.meet(self.value(x), l.meet_all(x.positions().map(|p| f[p])))
        }))
    }

    /// The Sugeno integral tabulated over all inputs.
    pub fn to_table(&self) -> Result<FunctionalTable> {
        self.check_monotone()?;
        self.check_normalized()?;
        FunctionalTable::from_fn(self.lattice.clone(), self.arity, |f| self.integral_unchecked(f))
    }
}

impl fmt::Display for Capacity {
    /// The capacity file body.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "capacity k={} lattice={}", self.arity, self.lattice.name())?;
        for x in IndexSet::canonical_order(self.arity) {
            writeln!(f, "{} -> {}", x, self.lattice.element_name(self.value(x)))?;
        }
        Ok(())
    }
}
