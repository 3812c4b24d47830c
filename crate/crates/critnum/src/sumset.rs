//! Exact h-fold sumsets, restricted sumsets, and subset-sum closures.

use crate::error::{Error, Result};
use crate::gset::GSet;

fn check_same_group(a: &GSet, b: &GSet) -> Result<()> {
    if a.group() == b.group() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "group mismatch: {} vs {}",
            a.group(),
            b.group()
        )))
    }
}

/// { a + b : a in A, b in B }. Empty if either side is empty.
pub fn pair_sumset(a: &GSet, b: &GSet) -> Result<GSet> {
    check_same_group(a, b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = GSet::empty(a.group().clone());
    for x in small.iter() {
        out.union_with(&large.translate(x));
    }
    Ok(out)
}

/// The h-fold unrestricted sumset hA, h >= 1.
pub fn h_fold(a: &GSet, h: usize) -> Result<GSet> {
    if h < 1 {
        return Err(Error::invalid("h_fold: h must be >= 1"));
    }
    if a.is_empty() {
        return Err(Error::invalid("h_fold: A must be nonempty"));
    }
    let mut acc = a.clone();
    for _ in 1..h {
        acc = pair_sumset(&acc, a)?;
    }
    Ok(acc)
}

/// The h-fold restricted sumset h^A (sums of h pairwise-distinct elements).
///
/// Layered recurrence: R_0 = {0}; each element a of A is folded in once,
/// updating R_j <- R_j | (R_{j-1} + a) with j descending from h to 1. The
/// descending order is what enforces distinctness. Returns {0} for h = 0
/// and the empty set when h > |A|.
pub fn h_fold_restricted(a: &GSet, h: usize) -> Result<GSet> {
    let group = a.group().clone();
    if h > a.len() {
        return Ok(GSet::empty(group));
    }
    let mut layers: Vec<GSet> = Vec::with_capacity(h + 1);
    layers.push(GSet::singleton(group.clone(), 0)?);
    for _ in 0..h {
        layers.push(GSet::empty(group.clone()));
    }
    for x in a.iter() {
        for j in (1..=h).rev() {
            let shifted = layers[j - 1].translate(x);
            layers[j].union_with(&shifted);
        }
    }
    Ok(layers.pop().unwrap())
}

/// The subset-sum closure: union of h^A over all h >= 0. Always contains 0
/// via the empty sum.
pub fn subset_sums(a: &GSet) -> Result<GSet> {
    let mut acc = GSet::singleton(a.group().clone(), 0)?;
    for x in a.iter() {
        let shifted = acc.translate(x);
        acc.union_with(&shifted);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    fn set(n: usize, elems: &[usize]) -> GSet {
        GSet::from_elements(GroupSpec::cyclic(n).unwrap(), elems).unwrap()
    }

    /// Independent combinations oracle for restricted sumsets: enumerates
    /// every h-element subset of A and collects the sums.
    pub(crate) fn naive_restricted(a: &GSet, h: usize) -> GSet {
        fn rec(
            g: &GroupSpec,
            elems: &[usize],
            start: usize,
            left: usize,
            sum: usize,
            out: &mut GSet,
        ) {
            if left == 0 {
                out.insert(sum);
                return;
            }
            for i in start..=elems.len().saturating_sub(left) {
                rec(g, elems, i + 1, left - 1, g.add_unchecked(sum, elems[i]), out);
            }
        }
        let elems = a.elements();
        let g = a.group().clone();
        let mut out = GSet::empty(g.clone());
        if h <= elems.len() {
            rec(&g, &elems, 0, h, 0, &mut out);
        }
        out
    }

    #[test]
    fn pair_sumset_examples() {
        let evens = set(10, &[0, 2, 4, 6, 8]);
        let one = set(10, &[1]);
        assert_eq!(pair_sumset(&evens, &one).unwrap().elements(), vec![1, 3, 5, 7, 9]);

        let a = set(5, &[1, 2]);
        assert_eq!(pair_sumset(&a, &a).unwrap().elements(), vec![2, 3, 4]);

        let zero = set(10, &[0]);
        assert_eq!(pair_sumset(&evens, &zero).unwrap(), evens);

        let empty = GSet::empty(GroupSpec::cyclic(10).unwrap());
        assert!(pair_sumset(&evens, &empty).unwrap().is_empty());

        let other = set(5, &[1]);
        assert!(pair_sumset(&evens, &other).is_err());
    }

    #[test]
    fn h_fold_examples() {
        let evens = set(10, &[0, 2, 4, 6, 8]);
        assert_eq!(h_fold(&evens, 2).unwrap(), evens);

        let sub = set(12, &[0, 4, 8]);
        assert_eq!(h_fold(&sub, 3).unwrap(), sub);

        let a = set(10, &[0, 1]);
        assert_eq!(h_fold(&a, 3).unwrap().elements(), vec![0, 1, 2, 3]);

        assert_eq!(h_fold(&a, 1).unwrap(), a);
        assert!(h_fold(&a, 0).is_err());
    }

    #[test]
    fn h_fold_restricted_examples() {
        let a = set(5, &[1, 2]);
        assert_eq!(h_fold_restricted(&a, 2).unwrap().elements(), vec![3]);

        let g = make_group(&[2, 2]).unwrap();
        let all = GSet::full(g);
        assert_eq!(h_fold_restricted(&all, 2).unwrap().elements(), vec![1, 2, 3]);

        let a = set(8, &[0, 1, 4, 5]);
        assert_eq!(h_fold_restricted(&a, 2).unwrap().elements(), vec![1, 4, 5, 6]);

        // h = 0 is the empty sum; h > |A| is empty
        assert_eq!(h_fold_restricted(&a, 0).unwrap().elements(), vec![0]);
        assert!(h_fold_restricted(&a, 5).unwrap().is_empty());
    }

    #[test]
    fn subset_sums_examples() {
        let empty = GSet::empty(GroupSpec::cyclic(7).unwrap());
        assert_eq!(subset_sums(&empty).unwrap().elements(), vec![0]);

        let a = set(7, &[1, 2]);
        assert_eq!(subset_sums(&a).unwrap().elements(), vec![0, 1, 2, 3]);

        let a = set(4, &[1, 2, 3]);
        assert!(subset_sums(&a).unwrap().is_full());
    }

    #[test]
    fn restricted_matches_naive_combinations() {
        // exhaustive on small cyclic groups
        for n in 2..=10usize {
            let g = GroupSpec::cyclic(n).unwrap();
            for mask in 0u32..(1 << n) {
                let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let a = GSet::from_elements(g.clone(), &elems).unwrap();
                for h in 0..=elems.len().min(4) {
                    assert_eq!(
                        h_fold_restricted(&a, h).unwrap(),
                        naive_restricted(&a, h),
                        "n={n} A={a} h={h}"
                    );
                }
            }
        }
    }

    #[test]
    fn restricted_matches_naive_on_noncyclic_samples() {
        for factors in [[2usize, 6].as_slice(), &[2, 2, 4], &[4, 4], &[3, 9]] {
            let g = make_group(factors).unwrap();
            let n = g.order();
            // deterministic pseudo-random subsets
            let mut seed = 0x9e3779b97f4a7c15u64;
            for _ in 0..40 {
                let mut elems = Vec::new();
                for i in 0..n {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if seed >> 33 & 3 == 0 {
                        elems.push(i);
                    }
                }
                elems.truncate(12);
                let a = GSet::from_elements(g.clone(), &elems).unwrap();
                for h in 0..=6.min(elems.len()) {
                    assert_eq!(h_fold_restricted(&a, h).unwrap(), naive_restricted(&a, h));
                }
            }
        }
    }
}
