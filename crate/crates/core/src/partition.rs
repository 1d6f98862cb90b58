//! Partitions of `{0..N-1}` into contiguous blocks, their signature, and
//! exact orders of `T(X,P)`, `Sigma(X,P)` and `S(X,P)`.
//!
//! Blocks are kept in non-decreasing order of size, so block `i` covers
//! the elements `offset(i)..offset(i) + size(i)`. Only the multiset of block
//! sizes matters, which makes this labelling canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    block_of: Vec<usize>,
}

/// Counting parameters of a partition.
///
/// `p` counts sizes `>= 2` that occur at least twice, `q` sizes `>= 2` that
/// occur exactly once and `t` the singleton blocks. `s` is the number of
/// distinct sizes and `r_rep` the number of sizes (1 included) that occur at
/// least twice.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartitionSignature {
    pub p: usize,
    pub q: usize,
    pub t: usize,
    /// `(size, multiplicity)` for every size `>= 2` with multiplicity `>= 2`.
    pub repeated_sizes: Vec<(usize, usize)>,
    pub unique_sizes: Vec<usize>,
    pub distinct_sizes: Vec<usize>,
    pub s: usize,
    pub r_rep: usize,
}

impl Partition {
    pub fn new(sizes: impl Into<Vec<usize>>) -> Result<Self> {
        let mut sizes = sizes.into();
        if sizes.is_empty() {
            return Err(Error::InvalidArgument("a partition needs at least one block".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("block sizes must be positive".into()));
        }
        sizes.sort_unstable();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut block_of = Vec::with_capacity(sizes.iter().sum());
        for (i, &size) in sizes.iter().enumerate() {
            offsets.push(block_of.len());
            block_of.extend(std::iter::repeat_n(i, size));
        }
        Ok(Partition { sizes, offsets, block_of })
    }

    /// Parses `part ('+' part)*`; parts may come in any order.
    pub fn parse(spec: &str) -> Result<Self> {
        let err = |token: &str, reason| Error::Parse {
            what: "partition",
            input: spec.to_string(),
            token: token.to_string(),
            reason,
        };
        if spec.trim().is_empty() {
            return Err(err("", "empty partition"));
        }
        let mut sizes = Vec::new();
        for token in spec.split('+') {
            let t = token.trim();
            if t.is_empty() {
                return Err(err(token, "empty part"));
            }
            if t.starts_with('-') {
                return Err(err(t, "negative part"));
            }
            let v: usize = t.parse().map_err(|_| err(t, "not a decimal integer"))?;
            if v == 0 {
                return Err(err(t, "part must be at least 1"));
            }
            sizes.push(v);
        }
        Partition::new(sizes)
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `|X|`.
    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_size(&self, block: usize) -> usize {
        self.sizes[block]
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn block_range(&self, block: usize) -> Range<usize> {
        self.offsets[block]..self.offsets[block] + self.sizes[block]
    }

    /// Blocks with the given size, in index order.
    pub fn blocks_of_size(&self, size: usize) -> Range<usize> {
        let start = self.sizes.partition_point(|&s| s < size);
        let end = self.sizes.partition_point(|&s| s <= size);
        start..end
    }

    /// Distinct block sizes with their multiplicities, ascending.
    pub fn size_classes(&self) -> Vec<(usize, usize)> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &s in &self.sizes {
            *counts.entry(s).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    pub fn signature(&self) -> PartitionSignature {
        let classes = self.size_classes();
        let t = classes.iter().find(|c| c.0 == 1).map_or(0, |c| c.1);
        let repeated_sizes: Vec<(usize, usize)> = classes
            .iter()
            .copied()
            .filter(|&(s, m)| s >= 2 && m >= 2)
            .collect();
        let unique_sizes: Vec<usize> = classes
            .iter()
            .filter(|&&(s, m)| s >= 2 && m == 1)
            .map(|c| c.0)
            .collect();
        let distinct_sizes: Vec<usize> = classes.iter().map(|c| c.0).collect();
        let r_rep = classes.iter().filter(|c| c.1 >= 2).count();
        PartitionSignature {
            p: repeated_sizes.len(),
            q: unique_sizes.len(),
            t,
            s: distinct_sizes.len(),
            r_rep,
            repeated_sizes,
            unique_sizes,
            distinct_sizes,
        }
    }

    /// `|T(X,P)|`: every block independently picks a target block and a map into it.
    pub fn order_t(&self) -> BigUint {
        self.sizes
            .iter()
            .map(|&a| {
                self.sizes
                    .iter()
                    .map(|&b| BigUint::from(b).pow(a as u32))
                    .sum::<BigUint>()
            })
            .product()
    }

    /// `|Sigma(X,P)|`: the permanent of `M[i][j] = |P_j|^|P_i|`.
    ///
    /// Rows are processed block by block while the state records how many
    /// blocks of each size class have been used as targets, so the cost is
    /// polynomial in the multiplicities rather than factorial in `n`.
    pub fn order_sigma(&self) -> BigUint {
        let classes = self.size_classes();
        let mut states: FxHashMap<Vec<usize>, BigUint> = FxHashMap::default();
        states.insert(vec![0; classes.len()], BigUint::one());
        for &a in &self.sizes {
            let mut next: FxHashMap<Vec<usize>, BigUint> = FxHashMap::default();
            for (used, ways) in &states {
                for (c, &(b, m)) in classes.iter().enumerate() {
                    let free = m - used[c];
                    if free == 0 {
                        continue;
                    }
                    let mut key = used.clone();
                    key[c] += 1;
                    let w = ways * BigUint::from(free) * BigUint::from(b).pow(a as u32);
                    *next.entry(key).or_insert_with(BigUint::zero) += w;
                }
            }
            states = next;
        }
        states.into_values().sum()
    }

    /// `|S(X,P)|`: product over size classes of `(size!)^count * count!`.
    pub fn order_s(&self) -> BigUint {
        self.size_classes()
            .into_iter()
            .map(|(size, count)| factorial(size).pow(count as u32) * factorial(count))
            .product()
    }

    /// All partitions of `n`, each in canonical ascending form, ordered by
    /// descending rendering (`"3"`, `"2+1"`, `"1+1+1"` for `n = 3`).
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|s| Partition::new(s).expect("positive parts"))
            .collect()
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Serializes a big integer as a decimal string.
pub(crate) fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for Partition {
    /// Descending, `+`-joined: `3+2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in self.sizes.iter().rev() {
            if !first {
                f.write_str("+")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Partition::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sorts_ascending() {
        let p = Partition::parse("3+2+1").unwrap();
        assert_eq!(p.block_sizes(), &[1, 2, 3]);
        assert_eq!(p.degree(), 6);
        assert_eq!(Partition::parse("2+3").unwrap(), Partition::parse("3+2").unwrap());
        assert_eq!(Partition::parse("2+2").unwrap().block_sizes(), &[2, 2]);
        assert_eq!(Partition::parse("1").unwrap().degree(), 1);
        assert_eq!(p.to_string(), "3+2+1");
    }

    #[test]
    fn parse_errors_name_the_token() {
        for (input, token) in [("", ""), ("3+0", "0"), ("2+-1", "-1"), ("2+x", "x"), ("2++1", "")] {
            match Partition::parse(input) {
                Err(Error::Parse { token: t, .. }) => assert_eq!(t, token, "input {input:?}"),
                other => panic!("{input:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn blocks_are_contiguous() {
        let p = Partition::parse("3+2+2+1").unwrap();
        assert_eq!(p.block_range(0), 0..1);
        assert_eq!(p.block_range(1), 1..3);
        assert_eq!(p.block_range(2), 3..5);
        assert_eq!(p.block_range(3), 5..8);
        assert_eq!(p.blocks_of_size(2), 1..3);
        assert_eq!(p.blocks_of_size(4), 4..4);
        assert_eq!(p.block_of(4), 2);
    }

    #[test]
    fn signatures() {
        let s = Partition::parse("3+2+1").unwrap().signature();
        assert_eq!((s.p, s.q, s.t, s.s, s.r_rep), (0, 2, 1, 3, 0));
        let s = Partition::parse("2+2+1+1").unwrap().signature();
        assert_eq!((s.p, s.q, s.t, s.s, s.r_rep), (1, 0, 2, 2, 2));
        assert_eq!(s.repeated_sizes, vec![(2, 2)]);
        let s = Partition::parse("2+2").unwrap().signature();
        assert_eq!((s.p, s.q, s.t, s.s, s.r_rep), (1, 0, 0, 1, 1));
    }

    #[test]
    fn orders() {
        let p = |s: &str| Partition::parse(s).unwrap();
        assert_eq!(p("2+2").order_t(), 64u32.into());
        assert_eq!(p("2+2+1").order_t(), 405u32.into());
        assert_eq!(p("2+1").order_t(), 15u32.into());
        assert_eq!(p("2+1").order_sigma(), 6u32.into());
        assert_eq!(p("2+2").order_sigma(), 32u32.into());
        assert_eq!(p("1").order_sigma(), 1u32.into());
        assert_eq!(p("2+2").order_s(), 8u32.into());
        assert_eq!(p("3+2+1").order_s(), 12u32.into());
        assert_eq!(p("1+1+1").order_s(), 6u32.into());
    }

    #[test]
    fn all_of_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30]);
        let names: Vec<String> = Partition::all_of(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["3", "2+1", "1+1+1"]);
    }
}
