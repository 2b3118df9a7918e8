//! Subsets of a finite index set `{1, ..., k}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest index set supported by [`IndexSet`] operations that enumerate
/// all `2^k` subsets.
pub const MAX_ARITY: usize = 12;

/// A subset of `{1, ..., k}`. Position `p` (zero-based) stands for index
/// `p + 1`, and bit `p` of the mask is set when it is a member.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn full(k: usize) -> IndexSet {
        IndexSet(((1u64 << k) - 1) as u32)
    }

    pub fn from_bits(bits: u32) -> IndexSet {
        IndexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// From one-based indices, e.g. `[1, 3]` for `{1, 3}`.
    pub fn from_indices(indices: &[usize]) -> IndexSet {
        let mut s = IndexSet::EMPTY;
        for &i in indices {
            assert!((1..=32).contains(&i), "index {i} out of range");
            s.insert(i - 1);
        }
        s
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> IndexSet {
        let mut s = IndexSet::EMPTY;
        for p in positions {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, position: usize) {
        self.0 |= 1 << position;
    }

    pub fn contains(self, position: usize) -> bool {
        self.0 & (1 << position) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: IndexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn complement(self, k: usize) -> IndexSet {
        IndexSet(!self.0 & IndexSet::full(k).0)
    }

    pub fn without(self, position: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << position))
    }

    /// Zero-based member positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(p)
        })
    }

    /// Largest one-based index, or 0 for the empty set.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// All subsets of `{1..k}` in mask order.
    pub fn all(k: usize) -> impl Iterator<Item = IndexSet> {
        (0..(1u32 << k)).map(IndexSet)
    }

    /// All subsets of `{1..k}` ordered by size, then lexicographically by
    /// their sorted member lists.
    pub fn canonical_order(k: usize) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = IndexSet::all(k).collect();
        v.sort_by_key(|s| (s.len(), s.positions().collect::<Vec<_>>()));
        v
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions().map(|p| (p + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    /// Parses `{1,3}` or `{}`.
    fn from_str(s: &str) -> Result<IndexSet> {
        let bad = |message: &str| Error::SyntaxError {
            position: 0,
            message: format!("{message} in subset `{s}`"),
        };
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| bad("expected braces"))?;
        let mut set = IndexSet::EMPTY;
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok.parse().map_err(|_| bad("expected a positive index"))?;
            if i == 0 || i > 32 {
                return Err(bad("index out of range"));
            }
            set.insert(i - 1);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let s = IndexSet::from_indices(&[1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!("{1,3}".parse::<IndexSet>().unwrap(), s);
        assert_eq!("{}".parse::<IndexSet>().unwrap(), IndexSet::EMPTY);
        assert_eq!(" { 2 , 1 } ".parse::<IndexSet>().unwrap(), IndexSet::from_indices(&[1, 2]));
        assert!("1,2".parse::<IndexSet>().is_err());
        assert!("{0}".parse::<IndexSet>().is_err());
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let order: Vec<String> = IndexSet::canonical_order(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            order,
            ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
    }

    #[test]
    fn complement_and_max() {
        let s = IndexSet::from_indices(&[2]);
        assert_eq!(s.complement(3), IndexSet::from_indices(&[1, 3]));
        assert_eq!(IndexSet::from_indices(&[1, 3]).max_index(), 3);
        assert_eq!(IndexSet::EMPTY.max_index(), 0);
    }
}
