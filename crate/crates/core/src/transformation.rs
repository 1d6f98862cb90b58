//! Full transformations of `{0..N-1}`, written on the right and composed
//! left to right: `(x)(f*g) = ((x)f)g`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: impl Into<Vec<usize>>) -> Result<Self> {
        let images = images.into();
        let degree = images.len();
        if let Some(&image) = images.iter().find(|&&y| y >= degree) {
            return Err(Error::ImageOutOfRange { image, degree });
        }
        Ok(Transformation { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&y| y < images.len()));
        Transformation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Transformation { images: (0..degree).collect() }
    }

    pub fn constant(degree: usize, value: usize) -> Result<Self> {
        Transformation::new(vec![value; degree])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// Composition without the degree check; panics on mismatch.
    pub fn then(&self, other: &Transformation) -> Transformation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Transformation { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }

    pub fn pow(&self, k: usize) -> Transformation {
        let mut acc = Transformation::identity(self.degree());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        for &y in &self.images {
            if std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Option<Transformation> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(Transformation { images: inv })
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        for &y in &self.images {
            seen[y] = true;
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(y, _)| y).collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// Kernel classes, each sorted, ordered by their least element.
    pub fn kernel_classes(&self) -> Vec<Vec<usize>> {
        kernel_classes_of(self.images.iter().copied().enumerate())
    }

    pub fn same_kernel(&self, other: &Transformation) -> bool {
        self.kernel_classes() == other.kernel_classes()
    }

    /// Multiplicative order of a permutation; `None` for non-permutations.
    pub fn permutation_order(&self) -> Option<u64> {
        if !self.is_permutation() {
            return None;
        }
        let mut seen = vec![false; self.degree()];
        let mut order: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        Some(order)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Groups `(point, value)` pairs into classes of equal value.
pub(crate) fn kernel_classes_of(pairs: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut by_value: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (x, y) in pairs {
        by_value.entry(y).or_default().push(x);
    }
    let mut classes: Vec<Vec<usize>> = by_value.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Comma-separated 0-based images, e.g. `1,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |token: &str, reason| Error::Parse {
            what: "transformation",
            input: s.to_string(),
            token: token.to_string(),
            reason,
        };
        if s.trim().is_empty() {
            return Err(err("", "empty transformation"));
        }
        let images = s
            .split(',')
            .map(|tok| tok.trim().parse::<usize>().map_err(|_| err(tok.trim(), "not an unsigned integer")))
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(images)
    }
}

impl Serialize for Transformation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Transformation::new(images).map_err(serde::de::Error::custom)
    }
}

/// The map induced on block indices: `(i)f̄ = j` whenever `P_i f ⊆ P_j`.
/// `None` when some block is split across several blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BlockMap(pub Option<Vec<usize>>);

impl BlockMap {
    pub fn is_defined(&self) -> bool {
        self.0.is_some()
    }

    pub fn images(&self) -> Option<&[usize]> {
        self.0.as_deref()
    }

    pub fn is_permutation(&self) -> bool {
        match &self.0 {
            None => false,
            Some(v) => {
                let mut seen = vec![false; v.len()];
                v.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
            }
        }
    }

    pub fn image_size(&self) -> Option<usize> {
        self.0.as_ref().map(|v| {
            let mut seen = vec![false; v.len()];
            v.iter().filter(|&&j| !std::mem::replace(&mut seen[j], true)).count()
        })
    }
}

pub fn induced_block_map(partition: &Partition, f: &Transformation) -> BlockMap {
    if f.degree() != partition.degree() {
        return BlockMap(None);
    }
    let mut map = Vec::with_capacity(partition.num_blocks());
    for b in 0..partition.num_blocks() {
        let mut range = partition.block_range(b);
        let target = partition.block_of(f.apply(range.next().expect("blocks are nonempty")));
        if range.any(|x| partition.block_of(f.apply(x)) != target) {
            return BlockMap(None);
        }
        map.push(target);
    }
    BlockMap(Some(map))
}

/// Finest of `T(X,P) ⊇ Sigma(X,P) ⊇ S(X,P)` containing a transformation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Membership {
    NotInT,
    InT,
    InSigma,
    InS,
}

pub fn membership(partition: &Partition, f: &Transformation) -> Membership {
    let bar = induced_block_map(partition, f);
    if !bar.is_defined() {
        Membership::NotInT
    } else if !bar.is_permutation() {
        Membership::InT
    } else if f.is_permutation() {
        Membership::InS
    } else {
        Membership::InSigma
    }
}

/// Restriction of `f` to block `block` in local offsets, together with the
/// target block. Requires `f ∈ T(X,P)`.
pub(crate) fn local_map(partition: &Partition, f: &Transformation, block: usize) -> (usize, Vec<usize>) {
    let range = partition.block_range(block);
    let target = partition.block_of(f.apply(range.start));
    let off = partition.offset(target);
    (target, range.map(|x| f.apply(x) - off).collect())
}

/// Local image size of `f` on a block.
pub(crate) fn block_image_size(partition: &Partition, f: &Transformation, block: usize) -> usize {
    let (_, local) = local_map(partition, f, block);
    let mut v = local;
    v.sort_unstable();
    v.dedup();
    v.len()
}
