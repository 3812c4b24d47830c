//! Subsets of a finite abelian group as fixed-width bit-vectors keyed by
//! element index.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: GroupSpec,
    words: Vec<u64>,
}

impl GSet {
    pub fn empty(group: GroupSpec) -> GSet {
        let w = group.order().div_ceil(64);
        GSet {
            group,
            words: vec![0; w],
        }
    }

    pub fn full(group: GroupSpec) -> GSet {
        let mut s = GSet::empty(group);
        let n = s.group.order();
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        let spare = s.words.len() * 64 - n;
        if spare > 0 {
            *s.words.last_mut().unwrap() >>= spare;
        }
        s
    }

    pub fn from_elements(group: GroupSpec, elems: &[usize]) -> Result<GSet> {
        let mut s = GSet::empty(group);
        for &e in elems {
            if e >= s.group.order() {
                return Err(Error::invalid(format!(
                    "element {e} out of range for group of order {}",
                    s.group.order()
                )));
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn singleton(group: GroupSpec, e: usize) -> Result<GSet> {
        GSet::from_elements(group, &[e])
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub(crate) fn from_words(group: GroupSpec, words: Vec<u64>) -> GSet {
        debug_assert_eq!(words.len(), group.order().div_ceil(64));
        GSet { group, words }
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        self.words[e / 64] |= 1u64 << (e % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.words[e / 64] &= !(1u64 << (e % 64));
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.group.order()
    }

    pub fn union_with(&mut self, other: &GSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &GSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &GSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.group.order();
        (0..n).filter(move |&e| self.contains(e))
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// { a + x : x in self }.
    pub fn translate(&self, a: usize) -> GSet {
        let g = &self.group;
        let n = g.order();
        debug_assert!(a < n);
        if g.is_cyclic() && self.words.len() == 1 {
            let w = self.words[0];
            let rotated = if a == 0 {
                w
            } else {
                let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                (w << a | w >> (n - a)) & mask
            };
            return GSet::from_words(g.clone(), vec![rotated]);
        }
        let mut out = GSet::empty(g.clone());
        for x in self.iter() {
            out.insert(g.add_unchecked(a, x));
        }
        out
    }

    /// { -x : x in self }.
    pub fn negate(&self) -> GSet {
        let g = &self.group;
        let mut out = GSet::empty(g.clone());
        for x in self.iter() {
            out.insert(g.neg_unchecked(x));
        }
        out
    }

    /// { u * x : x in self } for a unit u of a cyclic group.
    pub fn dilate(&self, u: usize) -> GSet {
        let g = &self.group;
        let mut out = GSet::empty(g.clone());
        for x in self.iter() {
            out.insert(g.scale_unchecked(u, x));
        }
        out
    }

    /// True iff the set is a subgroup of its group.
    pub fn is_subgroup(&self) -> bool {
        if !self.contains(0) {
            return false;
        }
        let elems = self.elements();
        for &a in &elems {
            for &b in &elems {
                if !self.contains(self.group.add_unchecked(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the set is a coset of some subgroup.
    pub fn is_coset(&self) -> bool {
        match self.iter().next() {
            None => false,
            Some(a) => self.translate(self.group.neg_unchecked(a)).is_subgroup(),
        }
    }

    /// Parses "{0,2,4,6,8}" (braces optional).
    pub fn parse(group: GroupSpec, s: &str) -> Result<GSet> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        if body.trim().is_empty() {
            return Ok(GSet::empty(group));
        }
        let elems: Vec<usize> = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad set element {t:?}")))
            })
            .collect::<Result<_>>()?;
        GSet::from_elements(group, &elems)
    }
}

impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn basic_ops() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        let mut s = GSet::empty(z10.clone());
        assert!(s.is_empty());
        s.insert(3);
        s.insert(7);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3));
        assert!(!s.contains(4));
        assert_eq!(s.to_string(), "{3,7}");
        assert_eq!(GSet::parse(z10.clone(), "{3,7}").unwrap(), s);
        assert_eq!(GSet::parse(z10, "{}").unwrap().len(), 0);
    }

    #[test]
    fn translate_cyclic_and_generic() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        let evens = GSet::from_elements(z10, &[0, 2, 4, 6, 8]).unwrap();
        assert_eq!(evens.translate(1).elements(), vec![1, 3, 5, 7, 9]);
        assert_eq!(evens.translate(2), evens);

        let g = make_group(&[2, 6]).unwrap();
        let s = GSet::from_elements(g.clone(), &[0, 5]).unwrap();
        let t = s.translate(1);
        assert_eq!(t.len(), 2);
        assert!(t.contains(g.add_unchecked(1, 5)));
    }

    #[test]
    fn subgroup_and_coset_tests() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let h = GSet::from_elements(z12.clone(), &[0, 4, 8]).unwrap();
        assert!(h.is_subgroup());
        assert!(h.is_coset());
        let c = h.translate(1);
        assert!(!c.is_subgroup());
        assert!(c.is_coset());
        let not = GSet::from_elements(z12, &[0, 1, 4]).unwrap();
        assert!(!not.is_coset());
    }

    #[test]
    fn full_set_masks_spare_bits() {
        for n in [5, 63, 64, 65, 130] {
            let g = GroupSpec::cyclic(n).unwrap();
            let f = GSet::full(g);
            assert_eq!(f.len(), n);
            assert!(f.is_full());
        }
    }
}
