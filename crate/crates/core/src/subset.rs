//! Ground sets and subsets of them.
//!
//! Every algorithm in this crate enumerates subsets exhaustively, so subsets
//! are plain bit vectors and ground sets are capped at [`MAX_ELEMENTS`].

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

use crate::error::{Error, Result};

/// Hard cap on the size of any ground set.
pub const MAX_ELEMENTS: usize = 16;

/// A subset of a ground set, as a characteristic vector. Element `i` is bit `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The whole ground set of size `n`.
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub const fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub const fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub const fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1 << i))
    }

    pub const fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    /// Complement relative to a ground set of size `n`.
    pub const fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    /// True when every element lies in `0..n`.
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset(SubsetMask::full(n))
    }

    /// Re-bases the mask onto the ground set with element `i` removed:
    /// elements above `i` shift down by one. Bit `i` itself is dropped.
    pub const fn remove_index(self, i: usize) -> Self {
        let low = self.0 & ((1u32 << i) - 1);
        let high = (self.0 >> (i + 1)) << i;
        SubsetMask(low | high)
    }

    /// Inverse of [`remove_index`](Self::remove_index): opens a zero bit at
    /// position `i`.
    pub const fn insert_index(self, i: usize) -> Self {
        let low = self.0 & ((1u32 << i) - 1);
        let high = (self.0 >> i) << (i + 1);
        SubsetMask(low | high)
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All submasks of `self`, in increasing numeric order, starting with
    /// the empty set and ending with `self`.
    pub fn submasks(self) -> Submasks {
        Submasks {
            of: self.0,
            next: Some(0),
        }
    }

    /// All subsets of a ground set of size `n`, in increasing numeric order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> + Clone {
        (0..=SubsetMask::full(n).0).map(SubsetMask)
    }

    /// Binary string with element 0 as the rightmost (least significant) digit.
    pub fn to_binary_lsb_right(self, n: usize) -> String {
        (0..n)
            .rev()
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Binary string with element 0 as the leftmost digit.
    pub fn to_binary_lsb_left(self, n: usize) -> String {
        (0..n)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Parses the format produced by [`to_binary_lsb_left`](Self::to_binary_lsb_left).
    pub fn from_binary_lsb_left(s: &str) -> Option<Self> {
        if s.len() > MAX_ELEMENTS {
            return None;
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return None,
            }
        }
        Some(SubsetMask(bits))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: SubsetMask) -> SubsetMask {
        self.union(rhs)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: SubsetMask) -> SubsetMask {
        self.intersection(rhs)
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    fn bitxor(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 ^ rhs.0)
    }
}

#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

#[derive(Clone)]
pub struct Submasks {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        // (s - x) & x steps to the next larger submask of x.
        let step = cur.wrapping_sub(self.of) & self.of;
        self.next = if cur == self.of { None } else { Some(step) };
        Some(SubsetMask(cur))
    }
}

/// For every subset `m` of a ground set of size `n`, whether some member of
/// `family` contains `m`.
pub fn covered_by(family: &[SubsetMask], n: usize) -> Vec<bool> {
    let size = 1usize << n;
    let mut up = vec![false; size];
    for m in family {
        up[m.bits() as usize] = true;
    }
    for bit in 0..n {
        for m in 0..size {
            if m & (1 << bit) != 0 && up[m] {
                up[m ^ (1 << bit)] = true;
            }
        }
    }
    up
}

/// An ordered list of distinct element labels. Indices `0..n` are the
/// canonical element identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labelled `"0"`, `"1"`, ..., `"n-1"`.
    pub fn indexed(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: i,
                size: self.len(),
            })
        }
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.fits(self.len()) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask: mask.bits(),
                size: self.len(),
            })
        }
    }

    /// The ground set with element `i` dropped; surviving labels keep their order.
    pub fn without(&self, i: usize) -> GroundSet {
        let mut labels = self.labels.clone();
        labels.remove(i);
        GroundSet { labels }
    }

    pub fn format_mask(&self, mask: SubsetMask) -> String {
        let parts: Vec<&str> = mask.elements().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn submasks_are_increasing_and_complete() {
        let x = SubsetMask::from_bits(0b1011);
        let subs: Vec<u32> = x.submasks().map(SubsetMask::bits).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(SubsetMask::EMPTY.submasks().count(), 1);
    }

    #[test]
    fn binary_strings() {
        let x = SubsetMask::from_elements([0, 2]);
        assert_eq!(x.to_binary_lsb_right(4), "0101");
        assert_eq!(x.to_binary_lsb_left(4), "1010");
        assert_eq!(SubsetMask::from_binary_lsb_left("1010"), Some(x));
        assert_eq!(SubsetMask::from_binary_lsb_left("10x"), None);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert!(matches!(GroundSet::indexed(17), Err(Error::TooLarge(17))));
        assert!(GroundSet::indexed(16).is_ok());
    }

    #[test]
    fn covered_by_is_down_closure() {
        let fam = [SubsetMask::from_bits(0b110)];
        let up = covered_by(&fam, 3);
        let expect: Vec<bool> = (0..8u32).map(|m| m & !0b110 == 0).collect();
        assert_eq!(up, expect);
    }

    proptest! {
        #[test]
        fn remove_then_insert_index(bits in 0u32..(1 << 12), i in 0usize..12) {
            let m = SubsetMask::from_bits(bits).without(i);
            prop_assert_eq!(m.remove_index(i).insert_index(i), m);
            prop_assert_eq!(m.remove_index(i).len(), m.len());
        }

        #[test]
        fn complement_partitions(bits in 0u32..(1 << 10)) {
            let m = SubsetMask::from_bits(bits);
            let c = m.complement(10);
            prop_assert!(m.is_disjoint(c));
            prop_assert_eq!(m | c, SubsetMask::full(10));
        }
    }
}
