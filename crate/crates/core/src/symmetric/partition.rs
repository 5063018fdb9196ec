use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and strictly positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

/// Cell statistics of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u32,
    pub hook_sum: u32,
    pub kappa: i64,
    /// Hook lengths, row by row.
    pub hooks: Vec<u32>,
    /// Contents (column minus row), row by row.
    pub contents: Vec<i64>,
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::new(&parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates `parts`: positive and weakly decreasing.
    pub fn new(parts: &[i64]) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0 && p <= u32::MAX as i64) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        Ok(Self { parts: parts.iter().map(|&p| p as u32).collect() })
    }

    /// Builds from parts that may contain trailing zeros; panics if not weakly decreasing.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts not decreasing: {parts:?}");
        Self { parts }
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn single_row(n: u32) -> Self {
        Self::from_parts(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (zero-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let width = self.part(0) as usize;
        let parts = (0..width).map(|j| self.parts.iter().take_while(|&&p| p as usize > j).count() as u32).collect();
        Self { parts }
    }

    /// `κ = 2 Σ (column - row)`; always even.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 2 * i as i64 - 1)
            })
            .sum()
    }

    pub fn hook_sum(&self) -> u32 {
        self.hooks().iter().sum()
    }

    pub fn hooks(&self) -> Vec<u32> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = t.part(j) - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as i64 {
                out.push(j - i as i64);
            }
        }
        out
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            hook_sum: self.hook_sum(),
            kappa: self.kappa(),
            hooks: self.hooks(),
            contents: self.contents(),
        }
    }

    /// `λ ∪ μ`: the union of the multisets of parts.
    pub fn concat(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_unsorted(parts)
    }

    /// `λ^{∪k}`.
    pub fn concat_power(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::NegativePower(k));
        }
        Ok(self.concat_power_u(k as u32))
    }

    pub(crate) fn concat_power_u(&self, k: u32) -> Self {
        let mut parts = Vec::with_capacity(self.len() * k as usize);
        for &p in &self.parts {
            parts.extend(std::iter::repeat_n(p, k as usize));
        }
        Self { parts }
    }

    /// `Σ_j λ_j μ_j`, zero-padded.
    pub fn dot(&self, other: &Self) -> i64 {
        self.parts.iter().zip(&other.parts).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    /// Componentwise sum, zero-padded.
    pub fn componentwise_sum(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::from_parts((0..n).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// `self ≤ other` in dominance order; defined only for equal sizes.
    pub fn dominance_leq(&self, other: &Self) -> Result<bool> {
        let (a, b) = (self.size(), other.size());
        if a != b {
            return Err(Error::DominanceSizeMismatch(a, b));
        }
        let n = self.len().max(other.len());
        let (mut sa, mut sb) = (0u32, 0u32);
        for i in 0..n {
            sa += self.part(i);
            sb += other.part(i);
            if sa > sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the diagram of `other` lies inside the diagram of `self`.
    pub fn contains(&self, other: &Self) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Self> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with at most `n` cells.
    pub fn all_up_to(n: u32) -> Vec<Self> {
        (0..=n).flat_map(Self::all_of_size).collect()
    }

    /// All sub-diagrams `ν ⊆ self`.
    pub fn subdiagrams(&self) -> Vec<Self> {
        fn rec(outer: &[u32], i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition::from_parts(cur.clone()));
                return;
            }
            for p in 0..=outer[i].min(max) {
                cur.push(p);
                rec(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, u32::MAX, &mut Vec::new(), &mut out);
        out
    }

    /// Cycle-type multiplicities `m_i`, indexed by part value.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Multiplies every part by `m`.
    pub fn scale_parts(&self, m: u32) -> Self {
        Self { parts: self.parts.iter().map(|&p| p * m).collect() }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand used throughout the tests: `part![3, 1]`.
#[macro_export]
macro_rules! part {
    () => { $crate::symmetric::Partition::empty() };
    ($($p:expr),+ $(,)?) => { $crate::symmetric::Partition::from_parts(vec![$($p),+]) };
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_row_stats() {
        let s = part![3].stats();
        assert_eq!((s.size, s.hook_sum, s.kappa), (3, 6, 6));
        assert_eq!(s.hooks, vec![3, 2, 1]);
        assert_eq!(s.contents, vec![0, 1, 2]);
    }

    #[test]
    fn hook_stats() {
        let s = part![2, 1].stats();
        assert_eq!((s.hook_sum, s.kappa), (5, 0));
        assert_eq!(s.hooks, vec![3, 1, 1]);
        assert_eq!(s.contents, vec![0, 1, -1]);
        let e = Partition::empty().stats();
        assert_eq!((e.size, e.hook_sum, e.kappa), (0, 0, 0));
    }

    #[test]
    fn compositions() {
        assert_eq!(part![3, 2].concat(&part![1, 1]), part![3, 2, 1, 1]);
        assert_eq!(part![3, 1].transpose(), part![2, 1, 1]);
        assert_eq!(part![2, 1].dot(&part![1, 1]), 3);
        assert!(part![1, 1].dominance_leq(&part![2]).unwrap());
        assert_eq!(part![2, 1].componentwise_sum(&part![1, 1, 1]), part![3, 2, 1]);
        assert!(matches!(part![1].concat_power(-1), Err(Error::NegativePower(-1))));
        assert!(matches!(part![1].dominance_leq(&part![2]), Err(Error::DominanceSizeMismatch(1, 2))));
    }

    #[test]
    fn validation() {
        assert!(Partition::new(&[2, 3]).is_err());
        assert!(Partition::new(&[2, 0]).is_err());
        assert_eq!(Partition::new(&[3, 3, 1]).unwrap(), part![3, 3, 1]);
        let p: Partition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(p, part![2, 1]);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    pub(crate) fn arb_partition(max_size: u32) -> impl Strategy<Value = Partition> {
        let all = Partition::all_up_to(max_size);
        proptest::sample::select(all)
    }

    proptest! {
        #[test]
        fn transpose_is_involution(l in arb_partition(8)) {
            prop_assert_eq!(l.transpose().transpose(), l.clone());
            prop_assert_eq!(l.transpose().size(), l.size());
            prop_assert_eq!(l.transpose().kappa(), -l.kappa());
            prop_assert_eq!(l.kappa() % 2, 0);
            prop_assert_eq!(l.kappa(), 2 * l.contents().iter().sum::<i64>());
        }

        #[test]
        fn kappa_concat_law(l in arb_partition(5), m in arb_partition(5)) {
            let lhs = l.concat(&m).kappa() - m.kappa();
            let rhs = l.kappa() - 2 * l.transpose().dot(&m.transpose());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kappa_concat_monotone_in_dominance(l in arb_partition(3), n in 1u32..6) {
            let all = Partition::all_of_size(n);
            for a in &all {
                for b in &all {
                    if a.dominance_leq(b).unwrap() {
                        let fa = l.concat(a).kappa() - a.kappa();
                        let fb = l.concat(b).kappa() - b.kappa();
                        prop_assert!(fa <= fb, "{} {} {}", l, a, b);
                    }
                }
            }
        }
    }
}
