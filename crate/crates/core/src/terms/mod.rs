//! Lattice terms over declared variables and lattice constants.
//!
//! Grammar (`∧` binds tighter than `∨`):
//!
//! ```text
//! expr := conj { ("|" | "∨" | "\/") conj }
//! conj := atom { ("&" | "∧" | "/\") atom }
//! atom := IDENT | "(" expr ")"
//! ```
//!
//! An identifier is a variable if it is declared as one, otherwise a lattice
//! element. Product-lattice names such as `(0,a)` are read as identifiers.

mod normal_form;
mod parse;

use std::sync::Arc;

use crate::error::{guard, Error, Result};
use crate::functionals::{characteristic_input, FunctionalTable, MAX_TABLE_INPUTS};
use crate::lattice::{Element, Lattice};
use crate::subset::{IndexSet, MAX_ARITY};

pub use normal_form::{FormKind, NormalForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// Zero-based position in the declared variable list.
    Var(usize),
    Const(Element),
    Meet(Vec<Term>),
    Join(Vec<Term>),
}

impl Term {
    /// Meet of `children`, flattening nested meets. A single child is
    /// returned as is.
    ///
    /// Panics if `children` is empty.
    pub fn meet(children: Vec<Term>) -> Term {
        Term::flat(children, true)
    }

    /// Join of `children`, flattening nested joins.
    ///
    /// Panics if `children` is empty.
    pub fn join(children: Vec<Term>) -> Term {
        Term::flat(children, false)
    }

    fn flat(children: Vec<Term>, is_meet: bool) -> Term {
        assert!(!children.is_empty(), "meet/join of no terms");
        let mut out = Vec::with_capacity(children.len());
        for c in children {
            match c {
                Term::Meet(inner) if is_meet => out.extend(inner),
                Term::Join(inner) if !is_meet => out.extend(inner),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            return out.pop().unwrap();
        }
        if is_meet {
            Term::Meet(out)
        } else {
            Term::Join(out)
        }
    }

    /// Variables occurring in the term.
    pub fn vars(&self) -> IndexSet {
        match self {
            Term::Var(v) => IndexSet::from_positions([*v]),
            Term::Const(_) => IndexSet::EMPTY,
            Term::Meet(cs) | Term::Join(cs) => cs
                .iter()
                .fold(IndexSet::EMPTY, |acc, c| IndexSet::from_bits(acc.bits() | c.vars().bits())),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Meet(cs) | Term::Join(cs) => 1 + cs.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

/// Variable names bound to a lattice; the context in which terms are read,
/// printed and evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    lattice: Arc<Lattice>,
    vars: Vec<String>,
}

impl Signature {
    pub fn new<S: AsRef<str>>(lattice: Arc<Lattice>, vars: &[S]) -> Result<Signature> {
        guard("variables", vars.len() as u128, MAX_ARITY as u128)?;
        if vars.is_empty() {
            return Err(Error::ArityViolation("at least one variable is required".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
            if lattice.element(v).is_some() {
                return Err(Error::NameCollision(v.clone()));
            }
            if v.is_empty() || v.chars().any(|c| c.is_whitespace() || "()&|∧∨/\\,".contains(c)) {
                return Err(Error::SyntaxError {
                    position: 0,
                    message: format!("`{v}` is not a valid variable name"),
                });
            }
        }
        Ok(Signature { lattice, vars })
    }

    /// Variables `x1, ..., xk`.
    pub fn indexed(lattice: Arc<Lattice>, k: usize) -> Result<Signature> {
        let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        Signature::new(lattice, &names)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn parse(&self, text: &str) -> Result<Term> {
        parse::parse(self, text)
    }

    /// Checks node arity, variable positions and constants.
    pub fn validate(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(v) if *v >= self.vars.len() => {
                Err(Error::UnknownIdentifier(format!("variable #{}", v + 1)))
            }
            Term::Const(c) if !self.lattice.contains(*c) => {
                Err(Error::UnknownIdentifier(format!("element #{}", c.index())))
            }
            Term::Var(_) | Term::Const(_) => Ok(()),
            Term::Meet(cs) | Term::Join(cs) => {
                if cs.len() < 2 {
                    return Err(Error::ArityViolation(format!(
                        "meet/join node with {} children",
                        cs.len()
                    )));
                }
                cs.iter().try_for_each(|c| self.validate(c))
            }
        }
    }

    /// Canonical text. Children are ordered by the first declared variable
    /// they mention (constant-only subterms last), then variables before
    /// constants before composite subterms, then by element index or printed
    /// form.
    pub fn print(&self, t: &Term) -> String {
        self.print_node(t).1
    }

    /// Returns the sort key and the printed text of a node.
    fn print_node(&self, t: &Term) -> (SortKey, String) {
        match t {
            Term::Var(v) => (
                SortKey {
                    first_var: *v,
                    category: 0,
                    index: *v,
                    text: String::new(),
                },
                self.vars[*v].clone(),
            ),
            Term::Const(c) => (
                SortKey {
                    first_var: usize::MAX,
                    category: 1,
                    index: c.index(),
                    text: String::new(),
                },
                self.lattice.element_name(*c).to_string(),
            ),
            Term::Meet(cs) | Term::Join(cs) => {
                let is_meet = matches!(t, Term::Meet(_));
                let mut parts: Vec<(SortKey, String)> = cs
                    .iter()
                    .map(|c| {
                        let (key, text) = self.print_node(c);
                        let text = if is_meet && matches!(c, Term::Join(_)) {
                            format!("({text})")
                        } else {
                            text
                        };
                        (key, text)
                    })
                    .collect();
                parts.sort();
                let sep = if is_meet { " & " } else { " | " };
                let text = parts.iter().map(|(_, s)| s.as_str()).collect::<Vec<_>>().join(sep);
                let first_var = t.vars().positions().next().unwrap_or(usize::MAX);
                (
                    SortKey {
                        first_var,
                        category: 2,
                        index: 0,
                        text: text.clone(),
                    },
                    text,
                )
            }
        }
    }

    /// Bottom-up fold with the lattice tables. `assignment[i]` is the value of
    /// the `i`-th declared variable.
    pub fn evaluate(&self, t: &Term, assignment: &[Element]) -> Result<Element> {
        if let Some(v) = t.vars().positions().find(|&v| v >= assignment.len()) {
            let name = self.vars.get(v).cloned().unwrap_or_else(|| format!("#{}", v + 1));
            return Err(Error::UnboundVariable(name));
        }
        Ok(self.eval_unchecked(t, assignment))
    }

    fn eval_unchecked(&self, t: &Term, f: &[Element]) -> Element {
        let l = &self.lattice;
        match t {
            Term::Var(v) => f[*v],
            Term::Const(c) => *c,
            Term::Meet(cs) => l.meet_all(cs.iter().map(|c| self.eval_unchecked(c, f))),
            Term::Join(cs) => l.join_all(cs.iter().map(|c| self.eval_unchecked(c, f))),
        }
    }

    /// Evaluates with variables bound by name; every variable of `t` must be
    /// bound.
    pub fn evaluate_named(&self, t: &Term, bindings: &[(&str, Element)]) -> Result<Element> {
        let mut f = vec![None; self.vars.len()];
        for (name, value) in bindings {
            let v = self.var(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
            f[v] = Some(*value);
        }
        for v in t.vars().positions() {
            if f[v].is_none() {
                return Err(Error::UnboundVariable(self.vars[v].clone()));
            }
        }
        let f: Vec<Element> = f.into_iter().map(|e| e.unwrap_or(self.lattice.bottom())).collect();
        Ok(self.eval_unchecked(t, &f))
    }

    /// The functional `L^A → L` induced by `t`.
    pub fn table(&self, t: &Term) -> Result<FunctionalTable> {
        self.validate(t)?;
        FunctionalTable::from_fn(self.lattice.clone(), self.arity(), |f| self.eval_unchecked(t, f))
    }

    /// Disjunctive normal form with `a_X = F(I_X)`, read off the
    /// characteristic inputs.
    pub fn dnf_of(&self, t: &Term) -> Result<NormalForm> {
        self.normal_form(t, FormKind::Dnf)
    }

    /// Conjunctive normal form with `b_X = F(I_{A∖X})`.
    pub fn cnf_of(&self, t: &Term) -> Result<NormalForm> {
        self.normal_form(t, FormKind::Cnf)
    }

    fn normal_form(&self, t: &Term, kind: FormKind) -> Result<NormalForm> {
        self.validate(t)?;
        let k = self.arity();
        let values: Vec<Element> = IndexSet::all(k)
            .map(|x| self.eval_unchecked(t, &characteristic_input(&self.lattice, k, x)))
            .collect();
        Ok(NormalForm::from_characteristic_values(self.lattice.clone(), k, kind, &values))
    }

    /// The term `⋁_{X ∈ 𝒜} (a_X ∧ ⋀ X)` (DNF) or `⋀_{X ∈ ℬ} (b_X ∨ ⋁ X)`
    /// (CNF). Clauses follow the canonical subset order; a top (DNF) or
    /// bottom (CNF) coefficient is left out of its clause.
    pub fn term_of(&self, nf: &NormalForm) -> Term {
        let l = &self.lattice;
        let (absent, neutral) = match nf.kind() {
            FormKind::Dnf => (l.bottom(), l.top()),
            FormKind::Cnf => (l.top(), l.bottom()),
        };
        let clauses: Vec<Term> = IndexSet::canonical_order(nf.arity())
            .into_iter()
            .filter_map(|x| {
                let c = nf.coefficient(x);
                if c == absent {
                    return None;
                }
                let mut parts = Vec::new();
                if c != neutral || x.is_empty() {
                    parts.push(Term::Const(c));
                }
                parts.extend(x.positions().map(Term::Var));
                Some(match nf.kind() {
                    FormKind::Dnf => Term::meet(parts),
                    FormKind::Cnf => Term::join(parts),
                })
            })
            .collect();
        match (nf.kind(), clauses.is_empty()) {
            (_, true) => Term::Const(absent),
            (FormKind::Dnf, false) => Term::join(clauses),
            (FormKind::Cnf, false) => Term::meet(clauses),
        }
    }

    /// Whether two terms induce the same functional, decided by their DNF
    /// coefficients. When the full table fits the size guard the answer is
    /// cross-checked by exhaustive evaluation.
    pub fn equivalent(&self, t1: &Term, t2: &Term) -> Result<bool> {
        let by_coefficients = self.dnf_of(t1)? == self.dnf_of(t2)?;
        let inputs = (self.lattice.len() as u128).pow(self.arity() as u32);
        if inputs <= MAX_TABLE_INPUTS {
            let by_tables = self.table(t1)? == self.table(t2)?;
            if by_tables != by_coefficients && self.lattice.is_distributive() {
                return Err(Error::RouteDisagreement(format!(
                    "coefficients say {by_coefficients}, exhaustive evaluation says {by_tables}"
                )));
            }
            if !self.lattice.is_distributive() {
                return Ok(by_tables);
            }
        }
        Ok(by_coefficients)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SortKey {
    first_var: usize,
    category: u8,
    index: usize,
    text: String,
}
