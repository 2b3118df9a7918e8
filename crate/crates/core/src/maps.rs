//! Self-maps of a lattice and the continuity test.
//!
//! A map is *continuous* when it preserves all nonempty meets and joins. On a
//! finite lattice this is preservation of binary meets and joins. The empty
//! meet and join are not part of the default definition, so `x ∧ c`, `x ∨ c`
//! and constant maps are continuous; [`Continuity::Strict`] additionally
//! requires `γ(0) = 0` and `γ(1) = 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::lattice::{Element, Lattice};

/// Largest lattice for which [`enumerate_continuous`] runs.
pub const MAX_ENUMERATION_ELEMENTS: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuity {
    /// Preserves nonempty meets and joins.
    #[default]
    Lenient,
    /// Also preserves the empty meet (top) and empty join (bottom).
    Strict,
}

/// A self-map `γ: L → L`, stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMap {
    lattice: Arc<Lattice>,
    image: Vec<Element>,
}

impl EndoMap {
    pub fn new(lattice: Arc<Lattice>, image: Vec<Element>) -> Result<EndoMap> {
        if image.len() != lattice.len() {
            return Err(Error::ArityViolation(format!(
                "map lists {} images for {} elements",
                image.len(),
                lattice.len()
            )));
        }
        if let Some(e) = image.iter().find(|e| !lattice.contains(**e)) {
            return Err(Error::UnknownElement(format!("#{}", e.index())));
        }
        Ok(EndoMap { lattice, image })
    }

    /// Builds a map from element names listed in element order.
    pub fn from_names<S: AsRef<str>>(lattice: Arc<Lattice>, images: &[S]) -> Result<EndoMap> {
        let image = images
            .iter()
            .map(|s| lattice.element_or_err(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        EndoMap::new(lattice, image)
    }

    pub fn identity(lattice: Arc<Lattice>) -> EndoMap {
        let image = lattice.elements().collect();
        EndoMap { lattice, image }
    }

    pub fn constant(lattice: Arc<Lattice>, c: Element) -> EndoMap {
        let image = vec![c; lattice.len()];
        EndoMap { lattice, image }
    }

    /// `x ↦ x ∧ c`.
    pub fn meet_translation(lattice: Arc<Lattice>, c: Element) -> EndoMap {
        let image = lattice.elements().map(|x| lattice.meet(x, c)).collect();
        EndoMap { lattice, image }
    }

    /// `x ↦ x ∨ c`.
    pub fn join_translation(lattice: Arc<Lattice>, c: Element) -> EndoMap {
        let image = lattice.elements().map(|x| lattice.join(x, c)).collect();
        EndoMap { lattice, image }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn image(&self) -> &[Element] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.image[x.index()]
    }

    /// `γ ∘ f` for a tuple `f`.
    pub fn apply_pointwise(&self, f: &[Element]) -> Vec<Element> {
        f.iter().map(|&x| self.apply(x)).collect()
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &EndoMap) -> Result<EndoMap> {
        same_lattice(&self.lattice, &inner.lattice)?;
        let image = inner.image.iter().map(|&x| self.apply(x)).collect();
        Ok(EndoMap {
            lattice: self.lattice.clone(),
            image,
        })
    }

    pub fn is_order_preserving(&self) -> bool {
        let l = &self.lattice;
        l.elements()
            .all(|x| l.elements().all(|y| !l.leq(x, y) || l.leq(self.apply(x), self.apply(y))))
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.lattice;
        let parts: Vec<String> = l
            .elements()
            .map(|x| format!("{}->{}", l.element_name(x), l.element_name(self.apply(x))))
            .collect();
        write!(f, "map: {}", parts.join(" "))
    }
}

pub(crate) fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch)
    }
}

/// Whether `g` preserves binary meets and joins (and, in strict mode,
/// bottom and top).
pub fn is_continuous(lattice: &Lattice, g: &EndoMap, mode: Continuity) -> Result<bool> {
    if g.lattice.as_ref() != lattice {
        return Err(Error::LatticeMismatch);
    }
    if mode == Continuity::Strict
        && (g.apply(lattice.bottom()) != lattice.bottom() || g.apply(lattice.top()) != lattice.top())
    {
        return Ok(false);
    }
    Ok(lattice.elements().all(|x| {
        lattice.elements().all(|y| {
            g.apply(lattice.meet(x, y)) == lattice.meet(g.apply(x), g.apply(y))
                && g.apply(lattice.join(x, y)) == lattice.join(g.apply(x), g.apply(y))
        })
    }))
}

/// Every continuous self-map of `lattice`, in lexicographic order of image
/// vectors.
pub fn enumerate_continuous(lattice: &Arc<Lattice>, mode: Continuity) -> Result<Vec<EndoMap>> {
    let n = lattice.len();
    guard("lattice elements for map enumeration", n as u128, MAX_ENUMERATION_ELEMENTS as u128)?;
    let mut image = Vec::with_capacity(n);
    let mut out = Vec::new();
    extend_continuous(lattice, mode, &mut image, &mut out);
    Ok(out)
}

fn extend_continuous(
    l: &Arc<Lattice>,
    mode: Continuity,
    image: &mut Vec<Element>,
    out: &mut Vec<EndoMap>,
) {
    let i = image.len();
    if i == l.len() {
        out.push(EndoMap {
            lattice: l.clone(),
            image: image.clone(),
        });
        return;
    }
    let x = Element::new(i);
    for v in l.elements() {
        if mode == Continuity::Strict
            && ((x == l.bottom() && v != l.bottom()) || (x == l.top() && v != l.top()))
        {
            continue;
        }
        image.push(v);
        if consistent_prefix(l, image) {
            extend_continuous(l, mode, image, out);
        }
        image.pop();
    }
}

/// Checks the preservation equations whose four elements are all assigned,
/// restricted to those that involve the newest element.
fn consistent_prefix(l: &Lattice, image: &[Element]) -> bool {
    let i = image.len() - 1;
    for p in 0..=i {
        for q in p..=i {
            let (ep, eq) = (Element::new(p), Element::new(q));
            let (m, j) = (l.meet(ep, eq), l.join(ep, eq));
            let involves_new = q == i || m.index() == i || j.index() == i;
            if !involves_new {
                continue;
            }
            if m.index() <= i && image[m.index()] != l.meet(image[p], image[q]) {
                return false;
            }
            if j.index() <= i && image[j.index()] != l.join(image[p], image[q]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(l: Lattice) -> Arc<Lattice> {
        Arc::new(l)
    }

    /// All self-maps by brute force, filtered by the binary preservation test.
    fn brute_force(l: &Arc<Lattice>, mode: Continuity) -> Vec<Vec<Element>> {
        let n = l.len();
        let mut out = Vec::new();
        for code in 0..n.pow(n as u32) {
            let mut c = code;
            let mut img = vec![Element::new(0); n];
            for slot in img.iter_mut().rev() {
                *slot = Element::new(c % n);
                c /= n;
            }
            let g = EndoMap::new(l.clone(), img.clone()).unwrap();
            if is_continuous(l, &g, mode).unwrap() {
                out.push(img);
            }
        }
        out
    }

    #[test]
    fn basic_maps_are_continuous() {
        for l in [Lattice::chain(4).unwrap(), Lattice::boolean(2).unwrap(), Lattice::n5()] {
            let l = arc(l);
            assert!(is_continuous(&l, &EndoMap::identity(l.clone()), Continuity::Lenient).unwrap());
            for c in l.elements() {
                let k = EndoMap::constant(l.clone(), c);
                assert!(is_continuous(&l, &k, Continuity::Lenient).unwrap());
            }
        }
        let b3 = arc(Lattice::boolean(3).unwrap());
        for c in b3.elements() {
            let m = EndoMap::meet_translation(b3.clone(), c);
            let j = EndoMap::join_translation(b3.clone(), c);
            assert!(is_continuous(&b3, &m, Continuity::Lenient).unwrap());
            assert!(is_continuous(&b3, &j, Continuity::Lenient).unwrap());
        }
    }

    #[test]
    fn non_monotone_map_is_not_continuous() {
        let c3 = arc(Lattice::chain(3).unwrap());
        let g = EndoMap::from_names(c3.clone(), &["0", "1", "0"]).unwrap();
        assert!(!is_continuous(&c3, &g, Continuity::Lenient).unwrap());
        // the pair (a, 1) breaks joins: γ(a ∨ 1) = 0 but γ(a) ∨ γ(1) = 1
        let (a, t) = (c3.element("a").unwrap(), c3.top());
        assert_ne!(g.apply(c3.join(a, t)), c3.join(g.apply(a), g.apply(t)));
    }

    #[test]
    fn strict_mode_excludes_constants() {
        let c3 = arc(Lattice::chain(3).unwrap());
        let k = EndoMap::constant(c3.clone(), c3.top());
        assert!(!is_continuous(&c3, &k, Continuity::Strict).unwrap());
        let strict = enumerate_continuous(&c3, Continuity::Strict).unwrap();
        assert_eq!(strict.len(), 3);
    }

    #[test]
    fn mismatched_lattice_is_an_error() {
        let c3 = arc(Lattice::chain(3).unwrap());
        let c4 = arc(Lattice::chain(4).unwrap());
        let g = EndoMap::identity(c4.clone());
        assert_eq!(is_continuous(&c3, &g, Continuity::Lenient), Err(Error::LatticeMismatch));
        assert_eq!(
            EndoMap::identity(c3).compose(&g).unwrap_err(),
            Error::LatticeMismatch
        );
    }

    #[test]
    fn enumeration_counts() {
        let c2 = arc(Lattice::chain(2).unwrap());
        let maps = enumerate_continuous(&c2, Continuity::Lenient).unwrap();
        let images: Vec<Vec<usize>> =
            maps.iter().map(|m| m.image().iter().map(|e| e.index()).collect()).collect();
        assert_eq!(images, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        // monotone self-maps of a 3-chain: C(5, 2) = 10
        assert_eq!(enumerate_continuous(&arc(Lattice::chain(3).unwrap()), Continuity::Lenient).unwrap().len(), 10);
        assert_eq!(enumerate_continuous(&arc(Lattice::chain(1).unwrap()), Continuity::Lenient).unwrap().len(), 1);
        assert!(matches!(
            enumerate_continuous(&arc(Lattice::chain(9).unwrap()), Continuity::Lenient),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for l in [
            Lattice::chain(3).unwrap(),
            Lattice::chain(4).unwrap(),
            Lattice::boolean(2).unwrap(),
            Lattice::n5(),
            Lattice::m3(),
        ] {
            let l = arc(l);
            for mode in [Continuity::Lenient, Continuity::Strict] {
                let fast: Vec<Vec<Element>> = enumerate_continuous(&l, mode)
                    .unwrap()
                    .into_iter()
                    .map(|m| m.image)
                    .collect();
                assert_eq!(fast, brute_force(&l, mode), "{} {:?}", l.name(), mode);
            }
        }
    }

    #[test]
    fn continuous_maps_on_chains_are_the_monotone_maps() {
        let c4 = arc(Lattice::chain(4).unwrap());
        let monotone: Vec<Vec<Element>> = brute_force_monotone(&c4);
        let continuous: Vec<Vec<Element>> = enumerate_continuous(&c4, Continuity::Lenient)
            .unwrap()
            .into_iter()
            .map(|m| m.image)
            .collect();
        assert_eq!(monotone, continuous);
    }

    fn brute_force_monotone(l: &Arc<Lattice>) -> Vec<Vec<Element>> {
        let n = l.len();
        let mut out = Vec::new();
        for code in 0..n.pow(n as u32) {
            let mut c = code;
            let mut img = vec![Element::new(0); n];
            for slot in img.iter_mut().rev() {
                *slot = Element::new(c % n);
                c /= n;
            }
            let g = EndoMap::new(l.clone(), img.clone()).unwrap();
            if g.is_order_preserving() {
                out.push(img);
            }
        }
        out
    }

    #[test]
    fn continuous_maps_preserve_order_and_compose() {
        for l in [Lattice::chain(4).unwrap(), Lattice::boolean(2).unwrap(), Lattice::n5()] {
            let l = arc(l);
            let maps = enumerate_continuous(&l, Continuity::Lenient).unwrap();
            for g in &maps {
                assert!(g.is_order_preserving());
                for h in &maps {
                    assert!(is_continuous(&l, &g.compose(h).unwrap(), Continuity::Lenient).unwrap());
                }
            }
        }
    }

    #[test]
    fn translations_and_composition() {
        let c4 = arc(Lattice::chain(4).unwrap());
        let a = c4.element("a").unwrap();
        let m = EndoMap::meet_translation(c4.clone(), a);
        assert_eq!(m.to_string(), "map: 0->0 a->a b->a 1->a");
        assert_eq!(EndoMap::meet_translation(c4.clone(), c4.top()), EndoMap::identity(c4.clone()));
        assert_eq!(
            EndoMap::meet_translation(c4.clone(), c4.bottom()),
            EndoMap::constant(c4.clone(), c4.bottom())
        );

        let c3 = arc(Lattice::chain(3).unwrap());
        let g1 = EndoMap::from_names(c3.clone(), &["0", "a", "a"]).unwrap();
        let g2 = EndoMap::from_names(c3.clone(), &["0", "1", "1"]).unwrap();
        // direct oracle: (g1 ∘ g2)(x) = g1(g2(x))
        let expected: Vec<Element> = c3.elements().map(|x| g1.apply(g2.apply(x))).collect();
        assert_eq!(g1.compose(&g2).unwrap().image(), expected.as_slice());
        assert_eq!(g1.compose(&g2).unwrap().to_string(), "map: 0->0 a->a 1->a");
        assert_eq!(EndoMap::identity(c3.clone()).compose(&g1).unwrap(), g1);
        let k = EndoMap::constant(c3.clone(), a_of(&c3));
        assert_eq!(k.compose(&g1).unwrap(), k);
        assert_eq!(g2.apply_pointwise(&[c3.bottom(), a_of(&c3)]), vec![c3.bottom(), c3.top()]);
    }

    fn a_of(l: &Lattice) -> Element {
        l.element("a").unwrap()
    }
}
