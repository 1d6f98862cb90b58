//! Membership predicates for the element classes that every generating set
//! of `T(X,P)` has to meet.
//!
//! * `A(a,b)`: block-injective, `|im f̄| = n - 1`, and the two merged blocks
//!   have sizes `a <= b`.
//! * `B(i)`: in `Sigma`; one block of size `l_i` goes injectively into a
//!   block of size `l_{i+1}`, one block of size `l_{i+1}` goes onto a block
//!   of size `l_i`, every other block goes bijectively to a block of equal size.
//! * `C(i)`: in `Sigma`; every block goes to a block of equal size, exactly
//!   one block of size `l_i` has image size `l_i - 1`, the rest are injective.
//!
//! Indices `i` are 1-based positions in the ascending list of distinct sizes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::transformation::{block_image_size, induced_block_map, Transformation};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum ClassLabel {
    Unit,
    /// In `Sigma(X,P)` but in none of the `B_i`, `C_i`.
    SigmaOnly,
    /// `blocks` are the merged pair, the smaller-or-equal one first.
    A { a: usize, b: usize, blocks: (usize, usize) },
    /// `grow` goes injectively into a larger block, `shrink` onto a smaller one.
    B { i: usize, grow: usize, shrink: usize },
    C { i: usize, block: usize },
    /// In `T(X,P) \ Sigma(X,P)` but not in `A`.
    PlainT,
}

impl ClassLabel {
    /// The short tag used in generating-set listings.
    pub fn tag(&self) -> String {
        match self {
            ClassLabel::Unit => "unit".into(),
            ClassLabel::SigmaOnly => "sigma".into(),
            ClassLabel::A { a, b, .. } => format!("A({a},{b})"),
            ClassLabel::B { i, .. } => format!("B({i})"),
            ClassLabel::C { i, .. } => format!("C({i})"),
            ClassLabel::PlainT => "T".into(),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, ClassLabel::Unit)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// 1-based index of `size` among the distinct block sizes.
pub(crate) fn size_index(partition: &Partition, size: usize) -> usize {
    let distinct = partition.signature().distinct_sizes;
    distinct.iter().position(|&s| s == size).expect("size occurs in partition") + 1
}

pub fn classify(partition: &Partition, f: &Transformation) -> Result<ClassLabel> {
    let bar = induced_block_map(partition, f).0.ok_or(Error::NotInT { index: 0 })?;
    let n = partition.num_blocks();
    let mut seen = vec![false; n];
    let bar_image = bar.iter().filter(|&&j| !std::mem::replace(&mut seen[j], true)).count();
    let local_rank: Vec<usize> = (0..n).map(|b| block_image_size(partition, f, b)).collect();
    let size = |b: usize| partition.block_size(b);

    if bar_image == n {
        if f.is_permutation() {
            return Ok(ClassLabel::Unit);
        }
        return Ok(classify_sigma(partition, &bar, &local_rank));
    }

    let injective = (0..n).all(|b| local_rank[b] == size(b));
    if injective && bar_image == n - 1 {
        let mut hits = vec![Vec::new(); n];
        for (b, &j) in bar.iter().enumerate() {
            hits[j].push(b);
        }
        let pair = hits.iter().find(|h| h.len() == 2).expect("exactly one merged pair");
        let (x, y) = if size(pair[0]) <= size(pair[1]) { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
        return Ok(ClassLabel::A { a: size(x), b: size(y), blocks: (x, y) });
    }
    Ok(ClassLabel::PlainT)
}

fn classify_sigma(partition: &Partition, bar: &[usize], local_rank: &[usize]) -> ClassLabel {
    let size = |b: usize| partition.block_size(b);
    let mut grow = Vec::new();
    let mut shrink = Vec::new();
    let mut lossy_same = Vec::new();
    for (b, &j) in bar.iter().enumerate() {
        match size(b).cmp(&size(j)) {
            std::cmp::Ordering::Less => grow.push(b),
            std::cmp::Ordering::Greater => shrink.push(b),
            std::cmp::Ordering::Equal if local_rank[b] < size(b) => lossy_same.push(b),
            std::cmp::Ordering::Equal => {}
        }
    }

    if grow.is_empty() && shrink.is_empty() {
        if let [block] = lossy_same[..] {
            if local_rank[block] + 1 == size(block) {
                return ClassLabel::C { i: size_index(partition, size(block)), block };
            }
        }
        return ClassLabel::SigmaOnly;
    }

    if let ([g], [s], []) = (&grow[..], &shrink[..], &lossy_same[..]) {
        let (g, s) = (*g, *s);
        let small = size(g);
        let large = size(bar[g]);
        let i = size_index(partition, small);
        let distinct = partition.signature().distinct_sizes;
        let consecutive = distinct.get(i) == Some(&large);
        let injective = local_rank[g] == small;
        let onto = size(s) == large && size(bar[s]) == small && local_rank[s] == small;
        if consecutive && injective && onto {
            return ClassLabel::B { i, grow: g, shrink: s };
        }
    }
    ClassLabel::SigmaOnly
}
