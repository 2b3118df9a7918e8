use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functionals::FunctionalTable;
use crate::lattice::{Element, Lattice};
use crate::subset::{IndexSet, MAX_ARITY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `⋁_{X ∈ 𝒜} (a_X ∧ ⋀ X)`.
    Dnf,
    /// `⋀_{X ∈ ℬ} (b_X ∨ ⋁ X)`.
    Cnf,
}

/// Coefficients of a disjunctive or conjunctive normal form.
///
/// A DNF stores `a_X` for the members of `𝒜` (absent subsets have
/// coefficient bottom); a CNF stores `b_X` for the members of `ℬ` (absent
/// subsets have coefficient top).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    lattice: Arc<Lattice>,
    arity: usize,
    kind: FormKind,
    coefficients: BTreeMap<IndexSet, Element>,
}

impl NormalForm {
    /// Builds a form from arbitrary coefficients. They need not be monotone
    /// in `X`; [`NormalForm::canonical`] recomputes them from the induced
    /// functional.
    pub fn new(
        lattice: Arc<Lattice>,
        arity: usize,
        kind: FormKind,
        coefficients: BTreeMap<IndexSet, Element>,
    ) -> Result<NormalForm> {
        if arity > MAX_ARITY {
            return Err(Error::SizeGuard {
                what: "normal form arity",
                actual: arity as u128,
                limit: MAX_ARITY as u128,
            });
        }
        let absent = match kind {
            FormKind::Dnf => lattice.bottom(),
            FormKind::Cnf => lattice.top(),
        };
        let full = IndexSet::full(arity);
        for (x, c) in &coefficients {
            if !x.is_subset(full) {
                return Err(Error::ArityViolation(format!("{x} is not a subset of {{1..{arity}}}")));
            }
            if !lattice.contains(*c) {
                return Err(Error::UnknownElement(format!("#{}", c.index())));
            }
        }
        let coefficients = coefficients.into_iter().filter(|(_, c)| *c != absent).collect();
        Ok(NormalForm { lattice, arity, kind, coefficients })
    }

    /// `values[mask] = F(I_X)`; the coefficients are `a_X = F(I_X)` or
    /// `b_X = F(I_{A∖X})`.
    pub(crate) fn from_characteristic_values(
        lattice: Arc<Lattice>,
        arity: usize,
        kind: FormKind,
        values: &[Element],
    ) -> NormalForm {
        let coefficients = IndexSet::all(arity)
            .filter_map(|x| match kind {
                FormKind::Dnf => {
                    let a = values[x.bits() as usize];
                    (a != lattice.bottom()).then_some((x, a))
                }
                FormKind::Cnf => {
                    let b = values[x.complement(arity).bits() as usize];
                    (b != lattice.top()).then_some((x, b))
                }
            })
            .collect();
        NormalForm { lattice, arity, kind, coefficients }
    }

    /// The normal form read off a table's characteristic inputs.
    pub fn of_table(table: &FunctionalTable, kind: FormKind) -> NormalForm {
        NormalForm::from_characteristic_values(
            table.lattice().clone(),
            table.arity(),
            kind,
            &table.characteristic_values(),
        )
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// Stored coefficients; subsets not listed take the absent value.
    pub fn coefficients(&self) -> &BTreeMap<IndexSet, Element> {
        &self.coefficients
    }

    pub fn coefficient(&self, x: IndexSet) -> Element {
        self.coefficients.get(&x).copied().unwrap_or(match self.kind {
            FormKind::Dnf => self.lattice.bottom(),
            FormKind::Cnf => self.lattice.top(),
        })
    }

    /// Value of the form at `f`.
    pub fn evaluate(&self, f: &[Element]) -> Element {
        let l = &self.lattice;
        match self.kind {
            FormKind::Dnf => l.join_all(self.coefficients.iter().map(|(x, a)| {
                l.meet(*a, l.meet_all(x.positions().map(|p| f[p])))
            })),
            FormKind::Cnf => l.meet_all(self.coefficients.iter().map(|(x, b)| {
                l.join(*b, l.join_all(x.positions().map(|p| f[p])))
            })),
        }
    }

    /// The functional the form denotes.
    pub fn to_table(&self) -> Result<FunctionalTable> {
        FunctionalTable::from_fn(self.lattice.clone(), self.arity, |f| self.evaluate(f))
    }

    /// The same functional with coefficients recomputed as `F(I_X)`. Only
    /// the characteristic inputs are evaluated.
    pub fn canonical(&self) -> NormalForm {
        let values: Vec<Element> = IndexSet::all(self.arity)
            .map(|x| {
                let f = crate::functionals::characteristic_input(&self.lattice, self.arity, x);
                self.evaluate(&f)
            })
            .collect();
        NormalForm::from_characteristic_values(self.lattice.clone(), self.arity, self.kind, &values)
    }

    /// One `{i,j} -> c` line per subset of `{1..k}` in canonical order,
    /// including absent coefficients.
    pub fn listing(&self) -> String {
        IndexSet::canonical_order(self.arity)
            .into_iter()
            .map(|x| format!("{x} -> {}\n", self.lattice.element_name(self.coefficient(x))))
            .collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FormKind::Dnf => "dnf",
            FormKind::Cnf => "cnf",
        };
        writeln!(f, "{kind} k={} lattice={}", self.arity, self.lattice.name())?;
        f.write_str(&self.listing())
    }
}
