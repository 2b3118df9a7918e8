//! Exhaustive and seeded-random instance generators.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::duality::{Cone, SetFamily};
use crate::error::{guard, Result};
use crate::functionals::{Capacity, FunctionalTable, MAX_TABLE_INPUTS};
use crate::lattice::{Element, Lattice};
use crate::subset::{IndexSet, MAX_ARITY};
use crate::terms::{Signature, Term};

/// Largest input space walked by [`enumerate_nondecreasing`].
pub const MAX_MONOTONE_INPUTS: u128 = 4096;

/// Largest number of tables produced by [`enumerate_all`].
pub const MAX_ALL_TABLES: u128 = 100_000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Input indices in a linear extension of the product order (by sum of
/// heights, then index), and for each position the positions of its lower
/// covers.
fn input_order(l: &Lattice, k: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = l.len();
    let count = n.pow(k as u32);
    let digits = |mut i: usize| {
        let mut d = Vec::with_capacity(k);
        for _ in 0..k {
            d.push(i % n);
            i /= n;
        }
        d
    };
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&i| {
        let h: usize = digits(i).iter().map(|&e| l.height(Element::new(e))).sum();
        (h, i)
    });
    let mut pos_of = vec![0; count];
    for (p, &i) in order.iter().enumerate() {
        pos_of[i] = p;
    }
    let lower: Vec<Vec<Element>> = l.elements().map(|e| l.lower_covers(e)).collect();
    let preds = order
        .iter()
        .map(|&i| {
            let d = digits(i);
            let mut stride = 1;
            let mut v = Vec::new();
            for &e in &d {
                for lc in &lower[e] {
                    v.push(pos_of[i - e * stride + lc.index() * stride]);
                }
                stride *= n;
            }
            v
        })
        .collect();
    (order, preds)
}

/// Lazily yields every nondecreasing table on `L^k` exactly once.
pub struct NondecreasingTables {
    lattice: Arc<Lattice>,
    arity: usize,
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
    values: Vec<usize>,
    started: bool,
    done: bool,
}

/// Backtracks over inputs in a linear extension of the product order,
/// giving each input a value above the values of its lower covers.
/// Candidate values are tried in element-index order.
pub fn enumerate_nondecreasing(l: &Arc<Lattice>, k: usize) -> Result<NondecreasingTables> {
    guard("arity", k as u128, MAX_ARITY as u128)?;
    guard("inputs for monotone enumeration", (l.len() as u128).pow(k as u32), MAX_MONOTONE_INPUTS)?;
    let (order, preds) = input_order(l, k);
    Ok(NondecreasingTables {
        lattice: l.clone(),
        arity: k,
        values: vec![0; order.len()],
        order,
        preds,
        started: false,
        done: false,
    })
}

impl NondecreasingTables {
    fn descend(&mut self, mut pos: usize, mut start: usize) -> bool {
        let l = &self.lattice;
        let n = l.len();
        loop {
            if pos == self.order.len() {
                return true;
            }
            let lb = l.join_all(self.preds[pos].iter().map(|&p| Element::new(self.values[p])));
            match (start..n).find(|&e| l.leq(lb, Element::new(e))) {
                Some(e) => {
                    self.values[pos] = e;
                    pos += 1;
                    start = 0;
                }
                None => {
                    if pos == 0 {
                        return false;
                    }
                    pos -= 1;
                    start = self.values[pos] + 1;
                }
            }
        }
    }
}

impl Iterator for NondecreasingTables {
    type Item = FunctionalTable;

    fn next(&mut self) -> Option<FunctionalTable> {
        if self.done {
            return None;
        }
        let found = if self.started {
            let last = self.order.len() - 1;
            let start = self.values[last] + 1;
            self.descend(last, start)
        } else {
            self.started = true;
            self.descend(0, 0)
        };
        if !found {
            self.done = true;
            return None;
        }
        let mut table = vec![Element::new(0); self.order.len()];
        for (p, &i) in self.order.iter().enumerate() {
            table[i] = Element::new(self.values[p]);
        }
        Some(FunctionalTable::new(self.lattice.clone(), self.arity, table).expect("shape checked by guard"))
    }
}

/// Every table on `L^k`, in odometer order over the value vector (input 0
/// varies fastest).
pub fn enumerate_all(l: &Arc<Lattice>, k: usize) -> Result<impl Iterator<Item = FunctionalTable>> {
    let n = l.len() as u128;
    let inputs = n.checked_pow(k as u32).unwrap_or(u128::MAX);
    guard("table inputs", inputs, MAX_TABLE_INPUTS)?;
    let tables = u32::try_from(inputs).ok().and_then(|i| n.checked_pow(i)).unwrap_or(u128::MAX);
    guard("tables for exhaustive enumeration", tables, MAX_ALL_TABLES)?;
    let l = l.clone();
    let inputs = inputs as usize;
    let mut values = vec![0usize; inputs];
    Ok((0..tables).map(move |t| {
        if t > 0 {
            for v in values.iter_mut() {
                *v += 1;
                if *v < l.len() {
                    break;
                }
                *v = 0;
            }
        }
        let vals = values.iter().map(|&v| Element::new(v)).collect();
        FunctionalTable::new(l.clone(), k, vals).expect("shape checked by guard")
    }))
}

/// A nondecreasing table drawn along a linear extension, each value uniform
/// among the elements above the join of the values at its lower covers.
pub fn random_nondecreasing(l: &Arc<Lattice>, k: usize, seed: u64) -> Result<FunctionalTable> {
    guard("arity", k as u128, MAX_ARITY as u128)?;
    guard("table inputs", (l.len() as u128).pow(k as u32), MAX_TABLE_INPUTS)?;
    let mut r = rng(seed);
    let (order, preds) = input_order(l, k);
    let mut values: Vec<Element> = Vec::with_capacity(order.len());
    for below in &preds {
        let lb = l.join_all(below.iter().map(|&p| values[p]));
        let allowed: Vec<Element> = l.elements().filter(|&e| l.leq(lb, e)).collect();
        values.push(*allowed.choose(&mut r).expect("top is always allowed"));
    }
    let mut table = vec![l.bottom(); order.len()];
    for (p, &i) in order.iter().enumerate() {
        table[i] = values[p];
    }
    FunctionalTable::new(l.clone(), k, table)
}

/// A capacity drawn along the subsets by size, each value uniform among the
/// elements above the values of its maximal proper subsets.
pub fn random_capacity(l: &Arc<Lattice>, k: usize, seed: u64) -> Result<Capacity> {
    guard("arity", k as u128, MAX_ARITY as u128)?;
    let mut r = rng(seed);
    let full = IndexSet::full(k);
    let mut values = vec![l.bottom(); 1 << k];
    for x in IndexSet::canonical_order(k) {
        values[x.bits() as usize] = if x.is_empty() {
            l.bottom()
        } else if x == full {
            l.top()
        } else {
            let lb = l.join_all(x.positions().map(|p| values[x.without(p).bits() as usize]));
            let allowed: Vec<Element> = l.elements().filter(|&e| l.leq(lb, e)).collect();
            *allowed.choose(&mut r).expect("top is always allowed")
        };
    }
    Capacity::new(l.clone(), k, values)
}

/// A random term of depth at most `depth`. Depth 0 gives a variable or a
/// constant.
pub fn random_term(sig: &Signature, depth: usize, seed: u64) -> Term {
    let mut r = rng(seed);
    grow(sig, depth, &mut r)
}

fn grow(sig: &Signature, depth: usize, r: &mut ChaCha8Rng) -> Term {
    if depth == 0 || r.gen_bool(0.25) {
        return if r.gen_bool(0.7) {
            Term::Var(r.gen_range(0..sig.arity()))
        } else {
            Term::Const(Element::new(r.gen_range(0..sig.lattice().len())))
        };
    }
    let width = r.gen_range(2..=3);
    let children = (0..width).map(|_| grow(sig, depth - 1, r)).collect();
    if r.gen_bool(0.5) {
        Term::meet(children)
    } else {
        Term::join(children)
    }
}

/// A nonempty family of nonempty subsets of `{1..k}`, uniform over all such
/// families.
pub fn random_family(k: usize, seed: u64) -> Result<Vec<IndexSet>> {
    guard("arity for random families", k as u128, 5)?;
    let mut r = rng(seed);
    let subsets = (1u64 << k) - 1;
    let mask: u64 = r.gen_range(1..(1u64 << subsets));
    Ok((0..subsets)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| IndexSet::from_bits(b as u32 + 1))
        .collect())
}

/// A cone `(ℋ₀, 𝒦₀)` with one to three random nonempty members in `𝒦₀` and
/// a single member in `ℋ₀` that picks one element from each of them.
pub fn random_cone(l: &Lattice, seed: u64) -> Result<Cone> {
    guard("lattice elements for cones", l.len() as u128, 16)?;
    let mut r = rng(seed);
    let n = l.len();
    let m = r.gen_range(1..=3);
    let ks: Vec<u64> = (0..m).map(|_| r.gen_range(1..(1u64 << n))).collect();
    let mut h = 0u64;
    for &km in &ks {
        let members: Vec<usize> = (0..n).filter(|p| km >> p & 1 == 1).collect();
        h |= 1 << members.choose(&mut r).expect("members are nonempty");
    }
    Cone::new(SetFamily::from_masks(n, [h])?, SetFamily::from_masks(n, ks)?)
}

/// A `rows × cols` grid of uniformly random elements.
pub fn random_grid(l: &Lattice, rows: usize, cols: usize, seed: u64) -> Vec<Vec<Element>> {
    let mut r = rng(seed);
    (0..rows)
        .map(|_| (0..cols).map(|_| Element::new(r.gen_range(0..l.len()))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn chain(n: usize) -> Arc<Lattice> {
        Arc::new(Lattice::chain(n).unwrap())
    }

    #[test]
    fn monotone_counts() {
        assert_eq!(enumerate_nondecreasing(&chain(2), 1).unwrap().count(), 3);
        assert_eq!(enumerate_nondecreasing(&chain(2), 2).unwrap().count(), 6);
        assert_eq!(enumerate_nondecreasing(&chain(3), 1).unwrap().count(), 10);
    }

    #[test]
    fn monotone_enumeration_matches_filter() {
        for (l, k) in [(chain(3), 2), (Arc::new(Lattice::n5()), 1), (Arc::new(Lattice::boolean(2).unwrap()), 1)] {
            let listed: Vec<FunctionalTable> = enumerate_nondecreasing(&l, k).unwrap().collect();
            assert!(listed.iter().all(FunctionalTable::is_nondecreasing));
            let distinct: HashSet<Vec<Element>> = listed.iter().map(|t| t.values().to_vec()).collect();
            assert_eq!(distinct.len(), listed.len());
            let filtered = enumerate_all(&l, k).unwrap().filter(|t| t.is_nondecreasing()).count();
            assert_eq!(listed.len(), filtered);
        }
    }

    #[test]
    fn exhaustive_counts_and_guard() {
        assert_eq!(enumerate_all(&chain(2), 1).unwrap().count(), 4);
        assert_eq!(enumerate_all(&chain(3), 2).unwrap().count(), 19683);
        assert!(matches!(enumerate_all(&chain(4), 2), Err(crate::Error::SizeGuard { .. })));
    }

    #[test]
    fn random_generators_are_deterministic_and_sound() {
        let l = Arc::new(Lattice::boolean(2).unwrap());
        for seed in 0..50 {
            let t = random_nondecreasing(&l, 2, seed).unwrap();
            assert!(t.is_nondecreasing());
            assert_eq!(t, random_nondecreasing(&l, 2, seed).unwrap());
            let c = random_capacity(&l, 3, seed).unwrap();
            assert!(c.check_monotone().is_ok() && c.check_normalized().is_ok());
            assert_eq!(c, random_capacity(&l, 3, seed).unwrap());
            let cone = random_cone(&l, seed).unwrap();
            assert_eq!(cone, random_cone(&l, seed).unwrap());
        }
    }

    #[test]
    fn depth_zero_terms_are_leaves() {
        let l = chain(3);
        let sig = Signature::indexed(l, 2).unwrap();
        for seed in 0..20 {
            assert!(matches!(random_term(&sig, 0, seed), Term::Var(_) | Term::Const(_)));
            let t = random_term(&sig, 3, seed);
            assert!(t.depth() <= 3);
            assert!(sig.validate(&t).is_ok());
        }
    }
}
