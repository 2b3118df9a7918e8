//! Cones, ultracones and blockers.
//!
//! A cone on `L` is a pair of families `(ℋ, 𝒦)` of subsets of `L` such that
//! every member of `ℋ` meets every member of `𝒦`. Ultracones are the
//! maximal cones. On a finite lattice the cross-cut values
//! `⋁_{H ∈ ℋ} ⋀H` and `⋀_{K ∈ 𝒦} ⋁K` agree on every ultracone exactly when
//! the lattice is distributive, and so does `P_𝒜(f) = P^ℬ(f)` for every
//! family `𝒜` with blocker `ℬ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::lattice::{Element, ElementSet, Lattice};

/// Largest ground set whose subsets are enumerated.
pub const MAX_GROUND: usize = 16;

/// Largest number of choice functions evaluated by [`grid_law`].
pub const MAX_CHOICE_FUNCTIONS: u128 = 1_000_000;

/// A family of nonempty subsets of a ground set `{0, .., ground - 1}`,
/// each stored as a bit mask. The ground set is either the elements of a
/// lattice (by index) or the index positions of `{1..k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: usize,
    members: BTreeSet<u64>,
}

impl SetFamily {
    pub fn new(ground: usize) -> SetFamily {
        SetFamily { ground, members: BTreeSet::new() }
    }

    pub fn from_masks<I: IntoIterator<Item = u64>>(ground: usize, masks: I) -> Result<SetFamily> {
        guard("ground set size", ground as u128, 64)?;
        let mut fam = SetFamily::new(ground);
        for m in masks {
            if m == 0 {
                return Err(Error::EmptyMember);
            }
            if ground < 64 && m >> ground != 0 {
                return Err(Error::ArityViolation(format!(
                    "member {m:#b} lies outside a ground set of size {ground}"
                )));
            }
            fam.members.insert(m);
        }
        Ok(fam)
    }

    /// A family over the elements of a lattice.
    pub fn from_element_sets<I: IntoIterator<Item = ElementSet>>(l: &Lattice, sets: I) -> Result<SetFamily> {
        SetFamily::from_masks(l.len(), sets.into_iter().map(ElementSet::bits))
    }

    /// A family over `{1..k}` given by one-based indices.
    pub fn from_indices(k: usize, sets: &[&[usize]]) -> Result<SetFamily> {
        let mut masks = Vec::new();
        for s in sets {
            let mut m = 0u64;
            for &i in *s {
                if i == 0 || i > k {
                    return Err(Error::ArityViolation(format!("index {i} outside {{1..{k}}}")));
                }
                m |= 1 << (i - 1);
            }
            masks.push(m);
        }
        SetFamily::from_masks(k, masks)
    }

    /// Parses `{x},{y,z}` over the element names of `l`. An empty string
    /// is the empty family.
    pub fn parse_elements(l: &Lattice, text: &str) -> Result<SetFamily> {
        let groups = split_groups(text)?;
        let mut masks = Vec::new();
        for g in groups {
            let mut m = 0u64;
            for name in g {
                m |= 1 << l.element_or_err(&name)?.index();
            }
            masks.push(m);
        }
        SetFamily::from_masks(l.len(), masks)
    }

    /// Parses `{1,2},{3}` over `{1..k}`.
    pub fn parse_indices(k: usize, text: &str) -> Result<SetFamily> {
        let groups = split_groups(text)?;
        let mut masks = Vec::new();
        for g in groups {
            let mut m = 0u64;
            for item in g {
                let i: usize = item.parse().map_err(|_| Error::SyntaxError {
                    position: 0,
                    message: format!("`{item}` is not an index"),
                })?;
                if i == 0 || i > k {
                    return Err(Error::ArityViolation(format!("index {i} outside {{1..{k}}}")));
                }
                m |= 1 << (i - 1);
            }
            masks.push(m);
        }
        SetFamily::from_masks(k, masks)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.contains(&mask)
    }

    /// Adds a nonempty member; returns whether it was new.
    pub fn insert(&mut self, mask: u64) -> bool {
        assert!(mask != 0, "families hold nonempty sets only");
        self.members.insert(mask)
    }

    /// Whether `mask` meets every member.
    pub fn is_met_by(&self, mask: u64) -> bool {
        self.members.iter().all(|&m| m & mask != 0)
    }

    fn full_mask(&self) -> u64 {
        if self.ground == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground) - 1
        }
    }

    fn nonempty_subsets(&self) -> Result<impl Iterator<Item = u64>> {
        guard("ground set size", self.ground as u128, MAX_GROUND as u128)?;
        Ok(1..=self.full_mask())
    }

    /// All subsets meeting every member. Never contains the empty set.
    pub fn blocker(&self) -> Result<SetFamily> {
        if self.members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let members = self.nonempty_subsets()?.filter(|&b| self.is_met_by(b)).collect();
        Ok(SetFamily { ground: self.ground, members })
    }

    /// All supersets of members.
    pub fn up_closure(&self) -> Result<SetFamily> {
        let members = self
            .nonempty_subsets()?
            .filter(|&s| self.members.iter().any(|&m| m & s == m))
            .collect();
        Ok(SetFamily { ground: self.ground, members })
    }

    /// Members with no proper subset in the family.
    pub fn minimal_members(&self) -> SetFamily {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| !self.members.iter().any(|&o| o != m && o & m == o))
            .collect();
        SetFamily { ground: self.ground, members }
    }

    /// `{z,x},{z,y}` with lattice element names, members in mask order.
    pub fn render_elements(&self, l: &Lattice) -> String {
        self.render(|p| l.element_name(Element::new(p)).to_string())
    }

    /// `{1,2},{3}` with one-based indices.
    pub fn render_indices(&self) -> String {
        self.render(|p| (p + 1).to_string())
    }

    fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.members.is_empty() {
            return "(empty)".to_string();
        }
        self.members
            .iter()
            .map(|&m| {
                let parts: Vec<String> = (0..64).filter(|p| m >> p & 1 == 1).map(&name).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Splits `{a,b},{c}` into member name lists. Commas inside parentheses
/// belong to the name, so product elements such as `(0,a)` survive.
fn split_groups(text: &str) -> Result<Vec<Vec<String>>> {
    let err = |position: usize, message: &str| Error::SyntaxError { position, message: message.to_string() };
    let chars: Vec<char> = text.chars().collect();
    let mut groups = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    while i < chars.len() {
        if chars[i] != '{' {
            return Err(err(i, "expected `{`"));
        }
        i += 1;
        let mut items = Vec::new();
        let mut cur = String::new();
        let mut depth = 0usize;
        loop {
            let Some(&c) = chars.get(i) else {
                return Err(err(i, "unterminated `{`"));
            };
            i += 1;
            match c {
                '(' => {
                    depth += 1;
                    cur.push(c);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(|| err(i - 1, "unbalanced `)`"))?;
                    cur.push(c);
                }
                ',' if depth == 0 => items.push(std::mem::take(&mut cur)),
                '}' if depth == 0 => {
                    items.push(std::mem::take(&mut cur));
                    break;
                }
                _ if c.is_whitespace() => {}
                _ => cur.push(c),
            }
        }
        if items.len() == 1 && items[0].is_empty() {
            return Err(Error::EmptyMember);
        }
        if items.iter().any(String::is_empty) {
            return Err(err(i - 1, "empty name in set"));
        }
        groups.push(items);
        skip_ws(&mut i);
        if i < chars.len() {
            if chars[i] != ',' {
                return Err(err(i, "expected `,` between sets"));
            }
            i += 1;
            skip_ws(&mut i);
            if i == chars.len() {
                return Err(err(i, "trailing `,`"));
            }
        }
    }
    Ok(groups)
}

/// A pair of families over the elements of a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub h: SetFamily,
    pub k: SetFamily,
}

impl Cone {
    /// Checks the cone property.
    pub fn new(h: SetFamily, k: SetFamily) -> Result<Cone> {
        if h.ground != k.ground {
            return Err(Error::NotACone("families over different ground sets".into()));
        }
        if let Some(hm) = h.members.iter().find(|&&hm| !k.is_met_by(hm)) {
            return Err(Error::NotACone(format!("member {hm:#b} of H misses a member of K")));
        }
        Ok(Cone { h, k })
    }

    /// The cone `(up-closure of ℋ, blocker of ℋ)`, which is always an
    /// ultracone.
    pub fn from_blocker(h: &SetFamily) -> Result<Cone> {
        Ok(Cone { h: h.up_closure()?, k: h.blocker()? })
    }
}

pub fn is_cone(l: &Lattice, h: &SetFamily, k: &SetFamily) -> bool {
    h.ground == l.len() && k.ground == l.len() && h.members.iter().all(|&hm| k.is_met_by(hm))
}

/// Saturates `ℋ` and then `𝒦` with every addable subset, scanning subsets
/// in mask order, until nothing changes.
pub fn extend_to_ultracone(l: &Lattice, c: &Cone) -> Result<Cone> {
    if !is_cone(l, &c.h, &c.k) {
        return Err(Error::NotACone("input is not a cone on this lattice".into()));
    }
    let mut h = c.h.clone();
    let mut k = c.k.clone();
    loop {
        let mut changed = false;
        for s in h.nonempty_subsets()? {
            if !h.contains(s) && k.is_met_by(s) {
                h.insert(s);
                changed = true;
            }
        }
        for s in k.nonempty_subsets()? {
            if !k.contains(s) && h.is_met_by(s) {
                k.insert(s);
                changed = true;
            }
        }
        if !changed {
            return Ok(Cone { h, k });
        }
    }
}

/// A cone to which no subset of `L` can be added on either side.
pub fn is_ultracone(l: &Lattice, c: &Cone) -> Result<bool> {
    if !is_cone(l, &c.h, &c.k) {
        return Ok(false);
    }
    for s in c.h.nonempty_subsets()? {
        if (!c.h.contains(s) && c.k.is_met_by(s)) || (!c.k.contains(s) && c.h.is_met_by(s)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(⋁_{H ∈ ℋ} ⋀H, ⋀_{K ∈ 𝒦} ⋁K)`.
pub fn crosscut_values(l: &Lattice, c: &Cone) -> (Element, Element) {
    let lower = l.join_all(c.h.members().map(|m| l.meet_set(ElementSet::from_bits(m))));
    let upper = l.meet_all(c.k.members().map(|m| l.join_set(ElementSet::from_bits(m))));
    (lower, upper)
}

/// Both sides of `P_𝒜(f) = P^ℬ(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockerIdentity {
    /// `⋁_{X ∈ 𝒜} ⋀_{x ∈ X} f(x)`.
    pub lower: Element,
    /// `⋀_{B ∈ ℬ} ⋁_{x ∈ B} f(x)` over every blocker set `B`.
    pub upper: Element,
    pub equal: bool,
}

/// Evaluates `P_𝒜(f)` and `P^ℬ(f)` for a family `𝒜` over `{1..k}`, `k = f.len()`.
pub fn blocker_identity(l: &Lattice, family: &SetFamily, f: &[Element]) -> Result<BlockerIdentity> {
    if family.ground != f.len() {
        return Err(Error::ArityViolation(format!(
            "family over {} indices, input of length {}",
            family.ground,
            f.len()
        )));
    }
    let blocker = family.blocker()?;
    let (lower, upper) = family_values(l, family, &blocker, f);
    Ok(BlockerIdentity { lower, upper, equal: lower == upper })
}

fn family_values(l: &Lattice, family: &SetFamily, blocker: &SetFamily, f: &[Element]) -> (Element, Element) {
    let pick = |m: u64| (0..f.len()).filter(move |p| m >> p & 1 == 1).map(|p| f[p]);
    let lower = l.join_all(family.members().map(|m| l.meet_all(pick(m))));
    let upper = l.meet_all(blocker.members().map(|m| l.join_all(pick(m))));
    (lower, upper)
}

/// A ground set `A ⊆ L` and a family over it for which `P_𝒜 ≠ P^ℬ` at the
/// identity on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdWitness {
    /// Members of `A` in index order.
    pub ground: Vec<Element>,
    /// Family over positions of `ground`.
    pub family: SetFamily,
    pub lower: Element,
    pub upper: Element,
}

impl CdWitness {
    /// The family re-expressed over the elements of `L`.
    pub fn family_in_lattice(&self, l: &Lattice) -> SetFamily {
        let masks = self.family.members().map(|m| {
            (0..self.ground.len())
                .filter(|p| m >> p & 1 == 1)
                .fold(0u64, |acc, p| acc | 1 << self.ground[p].index())
        });
        SetFamily::from_masks(l.len(), masks).expect("members stay nonempty")
    }

    pub fn describe(&self, l: &Lattice) -> String {
        let names: Vec<&str> = self.ground.iter().map(|&e| l.element_name(e)).collect();
        format!(
            "A = {{{}}}, family = {}: lower = {}, upper = {}",
            names.join(","),
            self.family_in_lattice(l).render_elements(l),
            l.element_name(self.lower),
            l.element_name(self.upper)
        )
    }
}

/// Outcome of [`verify_complete_distributivity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdVerdict {
    /// Number of `(A, 𝒜)` instances evaluated.
    pub instances: u64,
    /// First violation in scan order, if any.
    pub witness: Option<CdWitness>,
}

impl CdVerdict {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `P_𝒜(id) = P^ℬ(id)` for every `A ⊆ L` with `1 ≤ |A| ≤ max_ground`
/// and every nonempty family `𝒜` of nonempty subsets of `A`.
///
/// Ground sets are scanned by size, then lexicographically by element
/// index; families by bit mask over the nonempty subsets of `A` in mask
/// order. A failure on a distributive lattice is reported as
/// [`Error::RouteDisagreement`]; a pass on a non-distributive one only
/// means the budget was too small.
pub fn verify_complete_distributivity(l: &Lattice, max_ground: usize) -> Result<CdVerdict> {
    guard("ground set size for families", max_ground as u128, 4)?;
    let n = l.len();
    let mut grounds: Vec<Vec<Element>> = (1u64..(1 << n))
        .filter(|m| (m.count_ones() as usize) <= max_ground)
        .map(|m| ElementSet::from_bits(m).iter().collect())
        .collect();
    grounds.sort_by_key(|g: &Vec<Element>| (g.len(), g.clone()));

    let mut instances = 0u64;
    for ground in grounds {
        let m = ground.len();
        let subsets = (1u64 << m) - 1;
        for fam_mask in 1u64..(1 << subsets) {
            let masks = (0..subsets).filter(|b| fam_mask >> b & 1 == 1).map(|b| b + 1);
            let family = SetFamily::from_masks(m, masks)?;
            let blocker = family.blocker()?;
            let (lower, upper) = family_values(l, &family, &blocker, &ground);
            instances += 1;
            if lower != upper {
                if l.is_distributive() {
                    return Err(Error::RouteDisagreement(format!(
                        "distributive lattice {} fails the blocker identity",
                        l.name()
                    )));
                }
                return Ok(CdVerdict {
                    instances,
                    witness: Some(CdWitness { ground, family, lower, upper }),
                });
            }
        }
    }
    Ok(CdVerdict { instances, witness: None })
}

/// Both sides of `⋀_i ⋁_j x_ij = ⋁_{φ ∈ J^I} ⋀_i x_{iφ(i)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridLaw {
    pub lhs: Element,
    pub rhs: Element,
    pub equal: bool,
}

/// Evaluates both sides of the infinite distributive law on a finite grid,
/// enumerating every choice function for the right-hand side.
pub fn grid_law(l: &Lattice, grid: &[Vec<Element>]) -> Result<GridLaw> {
    let cols = grid.first().map_or(0, Vec::len);
    if grid.iter().any(|r| r.len() != cols) {
        return Err(Error::ArityViolation("grid rows differ in length".into()));
    }
    let choices = (cols as u128).checked_pow(grid.len() as u32).unwrap_or(u128::MAX);
    guard("choice functions", choices, MAX_CHOICE_FUNCTIONS)?;

    let lhs = l.meet_all(grid.iter().map(|row| l.join_all(row.iter().copied())));
    let mut rhs = l.bottom();
    let mut choice = vec![0usize; grid.len()];
    for _ in 0..choices {
        let term = l.meet_all(grid.iter().zip(&choice).map(|(row, &j)| row[j]));
        rhs = l.join(rhs, term);
        for c in choice.iter_mut() {
            *c += 1;
            if *c < cols {
                break;
            }
            *c = 0;
        }
    }
    Ok(GridLaw { lhs, rhs, equal: lhs == rhs })
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_indices())
    }
}

#[cfg(test)]
mod tests;
