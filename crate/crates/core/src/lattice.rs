//! Finite bounded lattices with precomputed order, meet and join tables.
//!
//! Elements are dense indices into the owning [`Lattice`]; every table is
//! built once at construction so downstream code only does lookups.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};

/// Hard cap on the number of elements. [`ElementSet`] is a `u64` bitset.
pub const MAX_ELEMENTS: usize = 64;

/// An element of some [`Lattice`], identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u8);

impl Element {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_ELEMENTS, "element index {index} out of range");
        Element(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of a lattice's universe.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(e: Element) -> Self {
        ElementSet(1 << e.index())
    }

    pub fn insert(&mut self, e: Element) {
        self.0 |= 1 << e.index();
    }

    pub fn contains(self, e: Element) -> bool {
        self.0 & (1 << e.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersects(self, other: ElementSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Element> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(Element::new(i))
        })
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

/// A finite bounded lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Element>,
    join: Vec<Element>,
    bottom: Element,
    top: Element,
    upper_covers: Vec<Vec<Element>>,
    height: Vec<usize>,
}

impl Lattice {
    /// Builds a lattice from a Hasse diagram. `covers` holds `(lower, upper)`
    /// name pairs; the order is their reflexive-transitive closure.
    pub fn from_covers<S: AsRef<str>>(
        name: &str,
        names: &[S],
        covers: &[(S, S)],
    ) -> Result<Lattice> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index = name_index(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = lookup(&index, lo.as_ref())?;
            let hi = lookup(&index, hi.as_ref())?;
            if lo == hi {
                return Err(Error::CyclicCovers(names[lo].clone()));
            }
            leq[lo * n + hi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CyclicCovers(names[i].clone()));
                }
            }
        }
        Lattice::from_order(name, names, leq)
    }

    /// Builds a lattice from a full order relation (`leq[i * n + j]` iff
    /// element `i` is below element `j`).
    pub fn from_order(name: &str, names: Vec<String>, leq: Vec<bool>) -> Result<Lattice> {
        name_index(&names)?;
        let n = names.len();
        guard("lattice elements", n as u128, MAX_ELEMENTS as u128)?;
        if leq.len() != n * n {
            return Err(Error::NotAPartialOrder(format!(
                "relation has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let le = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            if !le(i, i) {
                return Err(Error::NotAPartialOrder(format!("`{}` is not reflexive", names[i])));
            }
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(Error::NotAPartialOrder(format!(
                            "`{}` <= `{}` <= `{}` is not transitive",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }

        let bottoms: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| le(i, j))).collect();
        let tops: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| le(j, i))).collect();
        if tops.len() != 1 {
            return Err(Error::NoBoundedStructure("top"));
        }
        if bottoms.len() != 1 {
            return Err(Error::NoBoundedStructure("bottom"));
        }

        let mut meet = vec![Element(0); n * n];
        let mut join = vec![Element(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| le(d, c)));
                let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lub = upper.iter().copied().find(|&c| upper.iter().all(|&d| le(c, d)));
                match (glb, lub) {
                    (Some(g), Some(l)) => {
                        meet[a * n + b] = Element::new(g);
                        join[a * n + b] = Element::new(l);
                    }
                    (None, _) => {
                        return Err(Error::NotALattice(
                            names[a].clone(),
                            names[b].clone(),
                            "greatest lower bound",
                        ))
                    }
                    (_, None) => {
                        return Err(Error::NotALattice(
                            names[a].clone(),
                            names[b].clone(),
                            "least upper bound",
                        ))
                    }
                }
            }
        }

        let upper_covers: Vec<Vec<Element>> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| a != b && le(a, b) && !(0..n).any(|c| c != a && c != b && le(a, c) && le(c, b)))
                    .map(Element::new)
                    .collect()
            })
            .collect();
        // Longest chain from bottom; elements sorted by index within a rank.
        let mut height = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| le(j, i)).count());
        for &i in &order {
            for c in &upper_covers[i] {
                height[c.index()] = height[c.index()].max(height[i] + 1);
            }
        }

        Ok(Lattice {
            name: name.to_string(),
            names,
            leq,
            meet,
            join,
            bottom: Element::new(bottoms[0]),
            top: Element::new(tops[0]),
            upper_covers,
            height,
        })
    }

    /// The chain `0 < a < b < ... < 1` with `n` elements.
    pub fn chain(n: usize) -> Result<Lattice> {
        if n == 0 {
            return Err(Error::InvalidConfig("a chain needs at least one element".into()));
        }
        guard("lattice elements", n as u128, MAX_ELEMENTS as u128)?;
        let names: Vec<String> = (0..n)
            .map(|i| {
                if i == 0 {
                    "0".to_string()
                } else if i == n - 1 {
                    "1".to_string()
                } else if i <= 25 {
                    ((b'a' + (i - 1) as u8) as char).to_string()
                } else {
                    format!("c{i}")
                }
            })
            .collect();
        let leq = (0..n * n).map(|ij| ij / n <= ij % n).collect();
        Lattice::from_order(&format!("chain{n}"), names, leq)
    }

    /// Subsets of a `k`-set under inclusion. Atoms are named `a`, `b`, ...
    /// and other elements by concatenating their atoms; bottom and top are
    /// `0` and `1`.
    pub fn boolean(k: usize) -> Result<Lattice> {
        guard("boolean lattice rank", k as u128, 6)?;
        let n = 1usize << k;
        let names: Vec<String> = (0..n)
            .map(|m| {
                if m == 0 {
                    "0".to_string()
                } else if m == n - 1 {
                    "1".to_string()
                } else {
                    (0..k)
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| (b'a' + i as u8) as char)
                        .collect()
                }
            })
            .collect();
        let leq = (0..n * n).map(|ij| (ij / n) & !(ij % n) == 0).collect();
        Lattice::from_order(&format!("bool{k}"), names, leq)
    }

    /// Componentwise product. Element `(x, y)` has index `x + |L1| * y`.
    pub fn product(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
        let (n1, n2) = (l1.len(), l2.len());
        guard("lattice elements", (n1 * n2) as u128, MAX_ELEMENTS as u128)?;
        let n = n1 * n2;
        let split = |i: usize| (Element::new(i % n1), Element::new(i / n1));
        let names = (0..n)
            .map(|i| {
                let (x, y) = split(i);
                format!("({},{})", l1.element_name(x), l2.element_name(y))
            })
            .collect();
        let leq = (0..n * n)
            .map(|ij| {
                let ((x1, y1), (x2, y2)) = (split(ij / n), split(ij % n));
                l1.leq(x1, x2) && l2.leq(y1, y2)
            })
            .collect();
        Lattice::from_order(&format!("{}x{}", l1.name, l2.name), names, leq)
    }

    /// The pentagon `0 < x < z < 1`, `0 < y < 1`.
    pub fn n5() -> Lattice {
        Lattice::from_covers(
            "n5",
            &["0", "x", "y", "z", "1"],
            &[("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")],
        )
        .expect("pentagon is a lattice")
    }

    /// The diamond with three atoms `a`, `b`, `c`.
    pub fn m3() -> Lattice {
        Lattice::from_covers(
            "m3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .expect("diamond is a lattice")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len()).map(Element::new)
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet(if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 })
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(Element::new)
    }

    pub(crate) fn element_or_err(&self, name: &str) -> Result<Element> {
        self.element(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn element_name(&self, e: Element) -> &str {
        &self.names[e.index()]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, e: Element) -> bool {
        e.index() < self.len()
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn top(&self) -> Element {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: Element, b: Element) -> Element {
        self.meet[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn join(&self, a: Element, b: Element) -> Element {
        self.join[a.index() * self.len() + b.index()]
    }

    /// `med(a, b, c) = (a ∧ b) ∨ (a ∧ c) ∨ (b ∧ c)`.
    pub fn median(&self, a: Element, b: Element, c: Element) -> Element {
        self.join(self.join(self.meet(a, b), self.meet(a, c)), self.meet(b, c))
    }

    /// Meet of all elements yielded; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = Element>>(&self, items: I) -> Element {
        items.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// Join of all elements yielded; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = Element>>(&self, items: I) -> Element {
        items.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    pub fn meet_set(&self, s: ElementSet) -> Element {
        self.meet_all(s.iter())
    }

    pub fn join_set(&self, s: ElementSet) -> Element {
        self.join_all(s.iter())
    }

    pub fn upper_covers(&self, e: Element) -> &[Element] {
        &self.upper_covers[e.index()]
    }

    /// Length of the longest chain from bottom to `e`.
    pub fn lower_covers(&self, e: Element) -> Vec<Element> {
        self.elements().filter(|&d| self.upper_covers(d).contains(&e)).collect()
    }

    pub fn height(&self, e: Element) -> usize {
        self.height[e.index()]
    }

    /// Elements ordered by height, then index; a linear extension of the order.
    pub fn linear_extension(&self) -> Vec<Element> {
        let mut v: Vec<Element> = self.elements().collect();
        v.sort_by_key(|&e| (self.height(e), e));
        v
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// First triple `(a, b, c)` in index order with
    /// `a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<(Element, Element, Element)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Finite lattices are complete, and for them complete distributivity
    /// coincides with distributivity.
    pub fn is_completely_distributive(&self) -> bool {
        self.is_distributive()
    }

    /// `{c : a <= c <= b for some a, b in s}`. One sandwich step already
    /// yields a convex set.
    pub fn convex_hull(&self, s: ElementSet) -> ElementSet {
        let mut hull = s;
        for c in self.elements() {
            if s.iter().any(|a| self.leq(a, c)) && s.iter().any(|b| self.leq(c, b)) {
                hull.insert(c);
            }
        }
        hull
    }

    pub fn is_convex(&self, s: ElementSet) -> bool {
        self.convex_hull(s) == s
    }

    /// Exhaustive check of the lattice axioms against the stored tables.
    pub fn validate_axioms(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::AxiomViolation(msg));
        let nm = |e: Element| self.element_name(e).to_string();
        for x in self.elements() {
            if self.meet(x, x) != x || self.join(x, x) != x {
                return fail(format!("idempotence fails at {}", nm(x)));
            }
            if !self.leq(self.bottom, x) || !self.leq(x, self.top) {
                return fail(format!("{} is outside [bottom, top]", nm(x)));
            }
            for y in self.elements() {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return fail(format!("commutativity fails at ({}, {})", nm(x), nm(y)));
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return fail(format!("absorption fails at ({}, {})", nm(x), nm(y)));
                }
                let by_meet = self.meet(x, y) == x;
                let by_join = self.join(x, y) == y;
                if self.leq(x, y) != by_meet || by_meet != by_join {
                    return fail(format!("order and operations disagree at ({}, {})", nm(x), nm(y)));
                }
                for z in self.elements() {
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z))
                        || self.join(self.join(x, y), z) != self.join(x, self.join(y, z))
                    {
                        return fail(format!(
                            "associativity fails at ({}, {}, {})",
                            nm(x),
                            nm(y),
                            nm(z)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `f` is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Lattice, f: &[Element]) -> bool {
        if f.len() != self.len() || self.len() != other.len() {
            return false;
        }
        let image: ElementSet = f.iter().copied().collect();
        image.len() == self.len()
            && self
                .elements()
                .all(|a| self.elements().all(|b| self.leq(a, b) == other.leq(f[a.index()], f[b.index()])))
    }

    /// Searches for an isomorphism by backtracking; only meant for small
    /// lattices.
    pub fn find_isomorphism(&self, other: &Lattice) -> Option<Vec<Element>> {
        if self.len() != other.len() {
            return None;
        }
        let mut f: Vec<Element> = Vec::with_capacity(self.len());
        let mut used = vec![false; self.len()];
        if self.iso_extend(other, &mut f, &mut used) {
            Some(f)
        } else {
            None
        }
    }

    fn iso_extend(&self, other: &Lattice, f: &mut Vec<Element>, used: &mut [bool]) -> bool {
        let i = f.len();
        if i == self.len() {
            return true;
        }
        let a = Element::new(i);
        for b in other.elements() {
            if used[b.index()] || self.height(a) != other.height(b) {
                continue;
            }
            let ok = (0..i).all(|j| {
                let c = Element::new(j);
                self.leq(a, c) == other.leq(b, f[j]) && self.leq(c, a) == other.leq(f[j], b)
            });
            if ok {
                f.push(b);
                used[b.index()] = true;
                if self.iso_extend(other, f, used) {
                    return true;
                }
                f.pop();
                used[b.index()] = false;
            }
        }
        false
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lattice {}", self.name)?;
        writeln!(f, "elements: {}", self.names.join(" "))?;
        let covers: Vec<String> = self
            .elements()
            .flat_map(|a| {
                self.upper_covers(a)
                    .iter()
                    .map(move |&b| format!("{}<{}", self.element_name(a), self.element_name(b)))
            })
            .collect();
        write!(f, "covers: {}", covers.join(" "))
    }
}

fn name_index(names: &[String]) -> Result<HashMap<&str, usize>> {
    if names.is_empty() {
        return Err(Error::NoBoundedStructure("element (lattice is empty)"));
    }
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<&str, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_string()))
}
