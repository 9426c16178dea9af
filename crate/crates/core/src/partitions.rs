//! Integer partitions and the arithmetic on Young diagrams used throughout
//! the crate.
//!
//! A [`Partition`] stores its positive parts in weakly decreasing order.
//! Trailing zeros are never stored; [`Partition::part`] returns 0 past the
//! last stored part, so two partitions that differ only by padding compare
//! equal.

use std::cmp::{max, min};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// dropped; a zero followed by a positive part is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, found {} before {}",
                w[0], w[1]
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(n-k, 1^k)`. Requires `k < n`, or `n == k == 0`.
    pub fn hook(n: usize, k: usize) -> Result<Self> {
        if n == 0 && k == 0 {
            return Ok(Partition::empty());
        }
        if k >= n {
            return Err(Error::InvalidInput(format!(
                "hook (n-k,1^k) needs k < n, got n={n}, k={k}"
            )));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of (positive) parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part, zero-based, with `part(i) == 0` past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `len` (never truncates).
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        v
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Pointwise maximum of parts: the union of the two Young diagrams.
    pub fn union(&self, other: &Partition) -> Partition {
        self.zip_with(other, max)
    }

    /// Pointwise minimum of parts: the intersection of the two Young diagrams.
    pub fn intersect(&self, other: &Partition) -> Partition {
        self.zip_with(other, min)
    }

    fn zip_with(&self, other: &Partition, f: impl Fn(usize, usize) -> usize) -> Partition {
        let len = max(self.length(), other.length());
        let parts = (0..len).map(|i| f(self.part(i), other.part(i))).collect();
        // Pointwise max/min/sum of weakly decreasing sequences stay weakly
        // decreasing; only trailing zeros need trimming.
        Partition::from_unsorted(parts)
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length()
            && (0..other.length()).all(|i| self.part(i) >= other.part(i))
    }

    /// Order of the centralizer of a permutation with cycle type `self`:
    /// `z = prod_i i^{m_i} m_i!`. The class has `n!/z` elements.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut m = 0usize;
            while i < self.parts.len() && self.parts[i] == p {
                m += 1;
                i += 1;
                z *= BigUint::from(p) * BigUint::from(m);
            }
        }
        z
    }

    /// `self` with a new first row of length `n - |self|` prepended, if that
    /// is still a partition.
    pub fn with_first_row(&self, n: usize) -> Option<Partition> {
        let size = self.size();
        if n < size || n - size < self.part(0) {
            return None;
        }
        let mut parts = Vec::with_capacity(self.length() + 1);
        parts.push(n - size);
        parts.extend_from_slice(&self.parts);
        Some(Partition::from_unsorted(parts))
    }

    /// `self` without its first part.
    pub fn tail(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: usize) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }
}

impl Add for &Partition {
    type Output = Partition;

    fn add(self, rhs: &Partition) -> Partition {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for Partition {
    type Output = Partition;

    fn add(self, rhs: Partition) -> Partition {
        &self + &rhs
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"p1,p2,..."`. The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// Partitions of `n`, optionally with at most `max_length` parts and parts
/// at most `max_part`, in decreasing lexicographic order.
pub fn partitions_of(n: usize, max_length: Option<usize>, max_part: Option<usize>) -> Partitions {
    Partitions::new(n, max_length, max_part)
}

/// Iterator behind [`partitions_of`].
pub struct Partitions {
    max_length: usize,
    max_part: usize,
    next: Option<Vec<usize>>,
}

impl Partitions {
    fn new(n: usize, max_length: Option<usize>, max_part: Option<usize>) -> Self {
        let max_length = max_length.unwrap_or(n);
        let max_part = max_part.unwrap_or(n);
        let mut it = Partitions {
            max_length,
            max_part,
            next: None,
        };
        it.next = it.first_with_prefix(Vec::new(), n, usize::MAX);
        it
    }

    /// Lexicographically largest admissible completion of `prefix` with
    /// `remaining` boxes and parts at most `cap`.
    fn first_with_prefix(
        &self,
        mut prefix: Vec<usize>,
        mut remaining: usize,
        cap: usize,
    ) -> Option<Vec<usize>> {
        let mut cap = min(cap, self.max_part);
        while remaining > 0 {
            if prefix.len() >= self.max_length || cap == 0 {
                return None;
            }
            let p = min(cap, remaining);
            prefix.push(p);
            remaining -= p;
            cap = p;
        }
        Some(prefix)
    }

    fn advance(&self, current: &[usize]) -> Option<Vec<usize>> {
        // Decrease the rightmost part that can be decreased while the rest
        // still fits, then refill greedily.
        let mut suffix_sum = 0;
        for i in (0..current.len()).rev() {
            suffix_sum += current[i];
            if current[i] > 1 {
                let mut prefix = current[..i].to_vec();
                let p = current[i] - 1;
                prefix.push(p);
                if let Some(next) = self.first_with_prefix(prefix, suffix_sum - p, p) {
                    return Some(next);
                }
            }
        }
        None
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = self.advance(&current);
        Some(Partition { parts: current })
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![3, 1, 0, 0]).unwrap(), p(&[3, 1]));
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[4]).conjugate(), p(&[1, 1, 1, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[6, 5, 5, 4, 2]).conjugate(), p(&[5, 5, 4, 4, 3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn union_and_intersection() {
        let lam = p(&[19, 15, 12, 5, 1]);
        let mu = p(&[16, 16, 14, 3, 3]);
        assert_eq!(lam.union(&mu), p(&[19, 16, 14, 5, 3]));
        assert_eq!(lam.intersect(&mu), p(&[16, 15, 12, 3, 1]));
        assert_eq!(lam.union(&lam), lam);
        assert_eq!(lam.intersect(&lam), lam);
        assert_eq!(p(&[3]).intersect(&p(&[1, 1, 1])), p(&[1]));
        assert_eq!(p(&[3]).union(&p(&[1, 1, 1])), p(&[3, 1, 1]));
    }

    #[test]
    fn addition() {
        assert_eq!(&p(&[2, 1]) + &p(&[2, 1]), p(&[4, 2]));
        assert_eq!(&p(&[3, 1]) + &Partition::empty(), p(&[3, 1]));
        assert_eq!(p(&[3, 1]) + p(&[1, 1]), p(&[4, 2]));
    }

    #[test]
    fn centralizers() {
        assert_eq!(p(&[1, 1, 1]).centralizer_order(), BigUint::from(6u32));
        assert_eq!(p(&[2, 1]).centralizer_order(), BigUint::from(2u32));
        assert_eq!(p(&[3]).centralizer_order(), BigUint::from(3u32));
        assert_eq!(Partition::empty().centralizer_order(), BigUint::one());
        // 2^2 * 2! * 1^1 * 1!
        assert_eq!(p(&[2, 2, 1]).centralizer_order(), BigUint::from(8u32));
    }

    #[test]
    fn enumeration() {
        let zero: Vec<_> = partitions_of(0, None, None).collect();
        assert_eq!(zero, vec![Partition::empty()]);
        assert_eq!(partitions_of(4, None, None).count(), 5);
        let two_rows: Vec<_> = partitions_of(6, Some(2), None).collect();
        assert_eq!(two_rows, vec![p(&[6]), p(&[5, 1]), p(&[4, 2]), p(&[3, 3])]);
        let counts: Vec<_> = (0..=12)
            .map(|n| partitions_of(n, None, None).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let bounded: Vec<_> = partitions_of(5, None, Some(2)).collect();
        assert_eq!(
            bounded,
            vec![p(&[2, 2, 1]), p(&[2, 1, 1, 1]), p(&[1, 1, 1, 1, 1])]
        );
        assert_eq!(partitions_of(3, Some(0), None).count(), 0);
        assert_eq!(partitions_of(0, Some(0), Some(0)).count(), 1);
    }

    #[test]
    fn enumeration_is_decreasing_lex() {
        for n in 0..=10 {
            let all: Vec<_> = partitions_of(n, None, None).collect();
            assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
            assert!(all.iter().all(|q| q.size() == n));
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 0..=9 {
            let nf = factorial(n);
            let total: BigUint = partitions_of(n, None, None)
                .map(|mu| &nf / mu.centralizer_order())
                .sum();
            assert_eq!(total, nf, "n = {n}");
        }
    }

    #[test]
    fn textual_form() {
        assert_eq!(
            "19,15,12,5,1".parse::<Partition>().unwrap(),
            p(&[19, 15, 12, 5, 1])
        );
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1, 1]).to_string(), "3,1,1");
        assert_eq!(Partition::empty().to_string(), "");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn first_row() {
        assert_eq!(p(&[2, 1]).with_first_row(6), Some(p(&[3, 2, 1])));
        assert_eq!(p(&[2, 1]).with_first_row(4), None);
        assert_eq!(Partition::empty().with_first_row(3), Some(p(&[3])));
        assert_eq!(Partition::hook(5, 2).unwrap(), p(&[3, 1, 1]));
    }

    fn small_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0usize..7, 0..6).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(lam in small_partition()) {
            prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
            prop_assert_eq!(lam.conjugate().size(), lam.size());
        }

        #[test]
        fn union_and_intersection_bracket(lam in small_partition(), mu in small_partition()) {
            let u = lam.union(&mu);
            let i = lam.intersect(&mu);
            prop_assert!(lam.contains(&i) && mu.contains(&i));
            prop_assert!(u.contains(&lam) && u.contains(&mu));
            prop_assert_eq!(u.size() + i.size(), lam.size() + mu.size());
        }
    }

    #[test]
    fn exhaustive_small_invariants() {
        for n in 0..=12 {
            for lam in partitions_of(n, None, None) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
        for n in 0..=6 {
            for m in 0..=(10 - n) {
                for lam in partitions_of(n, None, None) {
                    for mu in partitions_of(m, None, None) {
                        let (u, i) = (lam.union(&mu), lam.intersect(&mu));
                        assert!(lam.contains(&i) && u.contains(&lam));
                        assert_eq!(u.size() + i.size(), n + m);
                    }
                }
            }
        }
    }
}
