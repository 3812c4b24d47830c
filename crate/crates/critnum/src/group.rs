//! Finite abelian groups in invariant-factor form, their elements, and
//! divisor utilities.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gset::GSet;

#[derive(Debug)]
struct GroupInner {
    /// Invariant factors d_1 | d_2 | ... | d_k, each >= 2, ascending.
    factors: Vec<usize>,
    /// Mixed-radix place values: places[i] = d_0 * d_1 * ... * d_{i-1}.
    places: Vec<usize>,
    order: usize,
}

/// The isomorphism type of a finite abelian group, canonicalized to
/// invariant factors. Two specs are equal iff the groups are isomorphic.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    inner: Arc<GroupInner>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.factors == other.inner.factors
    }
}
impl Eq for GroupSpec {}

impl std::hash::Hash for GroupSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.factors.hash(state);
    }
}

impl PartialOrd for GroupSpec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GroupSpec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.inner.factors.cmp(&other.inner.factors)
    }
}

/// Builds the canonical invariant-factor form of Z_{f_1} x ... x Z_{f_k}.
///
/// CRT merging: each input is split into prime powers; per prime the
/// exponents are sorted descending and zipped into chains, so the largest
/// factor collects the top prime power of every prime.
pub fn make_group(factors: &[usize]) -> Result<GroupSpec> {
    if factors.is_empty() {
        return Err(Error::invalid("group needs at least one cyclic factor"));
    }
    for &f in factors {
        if f < 2 {
            return Err(Error::invalid(format!("cyclic factor {f} < 2")));
        }
    }
    // prime -> exponents, one entry per input factor containing that prime
    let mut by_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for &f in factors {
        for (p, e) in factorize(f) {
            match by_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, es)) => es.push(e),
                None => by_prime.push((p, vec![e])),
            }
        }
    }
    for (_, es) in by_prime.iter_mut() {
        es.sort_unstable_by(|a, b| b.cmp(a));
    }
    let chain_len = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    // slot 0 holds the largest invariant factor
    let mut slots = vec![1usize; chain_len];
    for (p, es) in &by_prime {
        for (slot, &e) in es.iter().enumerate() {
            slots[slot] *= p.pow(e);
        }
    }
    slots.reverse();
    Ok(GroupSpec::from_canonical(slots))
}

impl GroupSpec {
    fn from_canonical(factors: Vec<usize>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        let mut places = Vec::with_capacity(factors.len());
        let mut acc = 1usize;
        for &d in &factors {
            places.push(acc);
            acc *= d;
        }
        GroupSpec {
            inner: Arc::new(GroupInner {
                factors,
                places,
                order: acc,
            }),
        }
    }

    /// Cyclic group of order n >= 2.
    pub fn cyclic(n: usize) -> Result<GroupSpec> {
        make_group(&[n])
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.inner.factors
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn exponent(&self) -> usize {
        *self.inner.factors.last().unwrap()
    }

    pub fn is_cyclic(&self) -> bool {
        self.inner.factors.len() == 1
    }

    /// Elementary abelian 2-group, i.e. exponent 2.
    pub fn is_elementary_2(&self) -> bool {
        self.exponent() == 2
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "element index {a} out of range for group of order {}",
                self.order()
            )))
        }
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Componentwise modular addition in mixed radix.
    pub fn add(&self, a: usize, b: usize) -> Result<usize> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.add_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, a: usize, b: usize) -> usize {
        let inner = &self.inner;
        if inner.factors.len() == 1 {
            let n = inner.order;
            let s = a + b;
            return if s >= n { s - n } else { s };
        }
        let mut out = 0usize;
        for (i, &d) in inner.factors.iter().enumerate() {
            let da = (a / inner.places[i]) % d;
            let db = (b / inner.places[i]) % d;
            let mut s = da + db;
            if s >= d {
                s -= d;
            }
            out += s * inner.places[i];
        }
        out
    }

    pub fn neg(&self, a: usize) -> Result<usize> {
        self.check_element(a)?;
        Ok(self.neg_unchecked(a))
    }

    #[inline]
    pub(crate) fn neg_unchecked(&self, a: usize) -> usize {
        let inner = &self.inner;
        if inner.factors.len() == 1 {
            let n = inner.order;
            return if a == 0 { 0 } else { n - a };
        }
        let mut out = 0usize;
        for (i, &d) in inner.factors.iter().enumerate() {
            let da = (a / inner.places[i]) % d;
            if da != 0 {
                out += (d - da) * inner.places[i];
            }
        }
        out
    }

    /// Repeated addition k*a.
    pub(crate) fn scale_unchecked(&self, k: usize, a: usize) -> usize {
        let inner = &self.inner;
        if inner.factors.len() == 1 {
            let n = inner.order;
            return ((k % n) * (a % n)) % n;
        }
        let mut out = 0usize;
        for (i, &d) in inner.factors.iter().enumerate() {
            let da = (a / inner.places[i]) % d;
            out += ((k % d) * da % d) * inner.places[i];
        }
        out
    }

    pub fn decode(&self, a: usize) -> Vec<usize> {
        self.inner
            .factors
            .iter()
            .enumerate()
            .map(|(i, &d)| (a / self.inner.places[i]) % d)
            .collect()
    }

    /// The 2-torsion subgroup L = { x : 2x = 0 }.
    pub fn two_torsion(&self) -> GSet {
        let mut s = GSet::empty(self.clone());
        for x in 0..self.order() {
            if self.add_unchecked(x, x) == 0 {
                s.insert(x);
            }
        }
        s
    }

    /// L_g = { x : 2x = g }; empty or of size |L|.
    pub fn halving_set(&self, g: usize) -> Result<GSet> {
        self.check_element(g)?;
        let mut s = GSet::empty(self.clone());
        for x in 0..self.order() {
            if self.add_unchecked(x, x) == g {
                s.insert(x);
            }
        }
        Ok(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.inner.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses "Z2xZ6", "z2 x z6", "Z_2xZ_6", or a bare order like "12"
    /// (meaning the cyclic group). Non-canonical products normalize.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let cleaned = s.trim();
        if cleaned.is_empty() {
            return Err(Error::invalid("empty group string"));
        }
        let mut factors = Vec::new();
        for part in cleaned.split(['x', 'X', '*']) {
            let p = part
                .trim()
                .trim_start_matches(['z', 'Z'])
                .trim_start_matches('_');
            let v: usize = p
                .parse()
                .map_err(|_| Error::invalid(format!("bad group component {part:?} in {s:?}")))?;
            factors.push(v);
        }
        make_group(&factors)
    }
}

/// Divisors and prime factorization of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorProfile {
    pub n: usize,
    pub divisors: Vec<usize>,
    pub prime_factorization: Vec<(usize, u32)>,
}

pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2usize;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn divisors(n: usize) -> Result<DivisorProfile> {
    if n < 1 {
        return Err(Error::invalid(format!("divisors: n = {n} < 1")));
    }
    let prime_factorization = factorize(n);
    let mut divs = vec![1usize];
    for &(p, e) in &prime_factorization {
        let prev = divs.clone();
        let mut pk = 1usize;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(DivisorProfile {
        n,
        divisors: divs,
        prime_factorization,
    })
}

/// All u in [1, n) with gcd(u, n) = 1.
pub fn units(n: usize) -> Result<Vec<usize>> {
    if n < 1 {
        return Err(Error::invalid(format!("units: n = {n} < 1")));
    }
    Ok((1..n).filter(|&u| gcd(u, n) == 1).collect())
}

pub fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All isomorphism types of abelian groups of order n, in lexicographic
/// order of invariant factors.
pub fn groups_of_order(n: usize) -> Result<Vec<GroupSpec>> {
    if n < 2 {
        return Err(Error::invalid(format!("groups_of_order: n = {n} < 2")));
    }
    let fact = factorize(n);
    // one partition choice per prime exponent
    let per_prime: Vec<(usize, Vec<Vec<u32>>)> = fact
        .iter()
        .map(|&(p, e)| (p, partitions(e)))
        .collect();
    let mut groups = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        // zip the chosen partitions (each descending) into invariant factors
        let chain_len = per_prime
            .iter()
            .zip(&choice)
            .map(|((_, parts), &c)| parts[c].len())
            .max()
            .unwrap();
        let mut slots = vec![1usize; chain_len];
        for ((p, parts), &c) in per_prime.iter().zip(&choice) {
            for (slot, &e) in parts[c].iter().enumerate() {
                slots[slot] *= p.pow(e);
            }
        }
        slots.reverse();
        groups.push(GroupSpec::from_canonical(slots));
        // advance the mixed-radix choice counter
        let mut i = 0;
        loop {
            if i == choice.len() {
                groups.sort();
                return Ok(groups);
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Partitions of e into non-increasing positive parts.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of e; used to cross-check groups_of_order.
pub fn partition_count(e: u32) -> u64 {
    let e = e as usize;
    let mut table = vec![0u64; e + 1];
    table[0] = 1;
    for part in 1..=e {
        for total in part..=e {
            table[total] += table[total - part];
        }
    }
    table[e]
}
