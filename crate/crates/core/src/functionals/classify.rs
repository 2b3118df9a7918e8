use crate::error::{Error, Result};
use crate::lattice::{Element, Lattice};
use crate::maps::{enumerate_continuous, Continuity, MAX_ENUMERATION_ELEMENTS};
use crate::subset::IndexSet;

use super::{
    FunctionalTable, HomogeneityViolation, IdempotencyViolation, InvarianceViolation,
    MonotoneViolation,
};

/// Every predicate of a functional together with the first counterexample
/// for each predicate that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub nondecreasing: bool,
    pub idempotent: bool,
    pub homogeneous: bool,
    pub range_homogeneous: bool,
    /// `None` when the lattice is too large to enumerate continuous maps.
    pub invariant: Option<bool>,
    pub polynomial: bool,
    pub sugeno: bool,
    pub term_functional: bool,
    pub monotone_witness: Option<MonotoneViolation>,
    pub idempotency_witness: Option<IdempotencyViolation>,
    pub homogeneity_witness: Option<HomogeneityViolation>,
    pub range_homogeneity_witness: Option<HomogeneityViolation>,
    pub invariance_witness: Option<InvarianceViolation>,
    /// An input where `F` differs from its lower normal form.
    pub normal_form_witness: Option<Vec<Element>>,
    /// A subset `X` with `F(I_X)` outside `{0, 1}`.
    pub coefficient_witness: Option<IndexSet>,
}

impl FunctionalTable {
    pub fn classify(&self, mode: Continuity) -> Result<ClassificationReport> {
        let monotone_witness = self.check_nondecreasing();
        let idempotency_witness = self.check_idempotent();
        let homogeneity_witness = self.check_homogeneous();
        let range_homogeneity_witness = self.check_range_homogeneous();
        let invariance_witness = if self.lattice().len() <= MAX_ENUMERATION_ELEMENTS {
            let maps = enumerate_continuous(self.lattice(), mode)?;
            Some(self.check_invariant_under(&maps))
        } else {
            None
        };
        let normal_form_witness = self.normal_form_mismatch();
        let coefficient_witness = self.non_boolean_coefficient();

        let nondecreasing = monotone_witness.is_none();
        let polynomial = self.is_polynomial()?;
        let sugeno = self.is_sugeno()?;
        let report = ClassificationReport {
            nondecreasing,
            idempotent: idempotency_witness.is_none(),
            homogeneous: homogeneity_witness.is_none(),
            range_homogeneous: range_homogeneity_witness.is_none(),
            invariant: invariance_witness.as_ref().map(Option::is_none),
            polynomial,
            sugeno,
            term_functional: sugeno && coefficient_witness.is_none(),
            monotone_witness,
            idempotency_witness,
            homogeneity_witness,
            range_homogeneity_witness,
            invariance_witness: invariance_witness.flatten(),
            normal_form_witness,
            coefficient_witness,
        };
        report.check_implications(self, mode)?;
        Ok(report)
    }
}

impl ClassificationReport {
    /// Asserts the implications that hold between the flags.
    fn check_implications(&self, table: &FunctionalTable, mode: Continuity) -> Result<()> {
        let l = table.lattice();
        let mut broken = Vec::new();
        if self.term_functional && !self.sugeno {
            broken.push("term functional but not Sugeno");
        }
        if self.sugeno && !(self.polynomial && self.idempotent) {
            broken.push("Sugeno but not an idempotent polynomial");
        }
        if self.polynomial && !self.nondecreasing {
            broken.push("polynomial but not nondecreasing");
        }
        if self.homogeneous && !self.range_homogeneous {
            broken.push("homogeneous but not range-homogeneous");
        }
        // Translations are continuous only on distributive lattices and only
        // under the lenient reading.
        if mode == Continuity::Lenient
            && l.is_distributive()
            && self.invariant == Some(true)
            && !self.homogeneous
        {
            broken.push("invariant but not homogeneous");
        }
        if self.range_homogeneous {
            let hull = table.range_hull();
            if hull.iter().any(|c| table.value(&vec![c; table.arity()]) != c) {
                broken.push("range-homogeneous but not idempotent on the range hull");
            }
        }
        if broken.is_empty() {
            Ok(())
        } else {
            Err(Error::RouteDisagreement(broken.join("; ")))
        }
    }

    /// One `name=value` line per flag followed by witness lines.
    pub fn render(&self, l: &Lattice) -> String {
        let invariant = match self.invariant {
            Some(b) => b.to_string(),
            None => "skipped".to_string(),
        };
        let mut out = format!(
            "nondecreasing={}\nidempotent={}\nhomogeneous={}\nrange_homogeneous={}\ninvariant={}\npolynomial={}\nsugeno={}\nterm_functional={}\n",
            self.nondecreasing,
            self.idempotent,
            self.homogeneous,
            self.range_homogeneous,
            invariant,
            self.polynomial,
            self.sugeno,
            self.term_functional
        );
        for (name, text) in self.witness_lines(l) {
            out.push_str(&format!("witness {name}: {text}\n"));
        }
        out
    }

    /// `(predicate, description)` for every recorded witness.
    pub fn witness_lines(&self, l: &Lattice) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        if let Some(w) = &self.monotone_witness {
            v.push(("nondecreasing", w.describe(l)));
        }
        if let Some(w) = &self.idempotency_witness {
            v.push(("idempotent", w.describe(l)));
        }
        if let Some(w) = &self.homogeneity_witness {
            v.push(("homogeneous", w.describe(l)));
        }
        if let Some(w) = &self.range_homogeneity_witness {
            v.push(("range_homogeneous", w.describe(l)));
        }
        if let Some(w) = &self.invariance_witness {
            v.push(("invariant", w.describe(l)));
        }
        if let Some(f) = &self.normal_form_witness {
            v.push(("polynomial", format!("F differs from its normal form at {}", super::fmt_tuple(l, f))));
        }
        if let Some(x) = &self.coefficient_witness {
            v.push(("term_functional", format!("F(I_{x}) is neither 0 nor 1")));
        }
        v
    }
}
