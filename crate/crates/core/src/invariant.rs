//! The double-coset invariant of an element of `T(X,P)` under the
//! two-sided action of the group of units.
//!
//! For every block `B` of size `a` mapped into a block of size `b`, the
//! multiset of kernel-class sizes of `f|_B` is recorded under `(a, b)`.
//! Elements of one `S f S` double coset have equal tables, and on
//! `Sigma(X,P)` equal tables imply the same double coset. Outside `Sigma`
//! the table misses how blocks sharing a target overlap: on `1+1` the
//! constant map and the identity have equal tables. [`same_double_coset`]
//! therefore compares the complete invariant [`DoubleCosetKey`].

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::transformation::{induced_block_map, kernel_classes_of, Transformation};

/// Inner multisets are stored as descending size lists, outer multisets as
/// sorted lists of those, so structural equality is multiset equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct JInvariant {
    table: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl JInvariant {
    pub fn get(&self, a: usize, b: usize) -> Option<&[Vec<usize>]> {
        self.table.get(&(a, b)).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Vec<usize>>)> {
        self.table.iter()
    }
}

impl Serialize for JInvariant {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            from_size: usize,
            to_size: usize,
            kernels: &'a [Vec<usize>],
        }
        let entries: Vec<Entry<'_>> = self
            .table
            .iter()
            .map(|(&(a, b), k)| Entry { from_size: a, to_size: b, kernels: k })
            .collect();
        entries.serialize(serializer)
    }
}

impl std::fmt::Display for JInvariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (&(a, b), classes)) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let inner: Vec<String> = classes
                .iter()
                .map(|c| format!("{{{}}}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            write!(f, "J({a},{b}) = {{{}}}", inner.join(", "))?;
        }
        Ok(())
    }
}

pub fn j_invariant(partition: &Partition, f: &Transformation) -> Result<JInvariant> {
    let bar = induced_block_map(partition, f).0.ok_or(Error::NotInT { index: 0 })?;
    let mut table: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for (block, &target) in bar.iter().enumerate() {
        let classes = kernel_classes_of(partition.block_range(block).map(|x| (x, f.apply(x))));
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        table
            .entry((partition.block_size(block), partition.block_size(target)))
            .or_default()
            .push(sizes);
    }
    for v in table.values_mut() {
        v.sort();
    }
    Ok(JInvariant { table })
}

/// A canonical form of `S f S`.
///
/// Each target block `Q` of `f` contributes a matrix with one row per point
/// `y` of `Q` and one column per block `B` mapped into `Q`, holding
/// `|B ∩ y f^-1|`. Units act by permuting rows and by permuting columns of
/// equal block size, so the key lists, per target, the lexicographically
/// least column-major reading over column orders, rows sorted descending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DoubleCosetKey(Vec<(usize, Vec<usize>, Vec<usize>)>);

impl std::fmt::Display for DoubleCosetKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn double_coset_key(partition: &Partition, f: &Transformation) -> Result<DoubleCosetKey> {
    let bar = induced_block_map(partition, f).0.ok_or(Error::NotInT { index: 0 })?;
    let mut components = Vec::new();
    for target in 0..partition.num_blocks() {
        let sources: Vec<usize> = (0..bar.len()).filter(|&b| bar[b] == target).collect();
        if sources.is_empty() {
            continue;
        }
        let offset = partition.offset(target);
        let rows = partition.block_size(target);
        let columns: Vec<(usize, Vec<usize>)> = sources
            .iter()
            .map(|&b| {
                let mut counts = vec![0; rows];
                for x in partition.block_range(b) {
                    counts[f.apply(x) - offset] += 1;
                }
                (partition.block_size(b), counts)
            })
            .collect();
        let mut sizes: Vec<usize> = columns.iter().map(|c| c.0).collect();
        sizes.sort_unstable();
        let mut best = None;
        canonical_columns(&columns, &mut vec![false; columns.len()], &[(0..rows).collect()], &mut Vec::new(), &mut best);
        components.push((rows, sizes, best.expect("at least one column")));
    }
    components.sort();
    Ok(DoubleCosetKey(components))
}

/// Branch and bound over column orders. Columns are taken in ascending
/// block size; `cells` are the groups of rows still tied, in order.
/// Identical columns are interchangeable, so only one of them is tried.
fn canonical_columns(
    columns: &[(usize, Vec<usize>)],
    used: &mut [bool],
    cells: &[Vec<usize>],
    prefix: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    let Some(size) = (0..columns.len()).filter(|&c| !used[c]).map(|c| columns[c].0).min() else {
        if best.as_ref().is_none_or(|b| prefix.as_slice() < b.as_slice()) {
            *best = Some(prefix.clone());
        }
        return;
    };
    let segment = |c: usize| -> Vec<usize> {
        cells
            .iter()
            .flat_map(|cell| {
                let mut v: Vec<usize> = cell.iter().map(|&y| columns[c].1[y]).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            })
            .collect()
    };
    let mut candidates: Vec<(Vec<usize>, usize)> = Vec::new();
    for c in (0..columns.len()).filter(|&c| !used[c] && columns[c].0 == size) {
        if candidates.iter().any(|&(_, d)| columns[d].1 == columns[c].1) {
            continue;
        }
        candidates.push((segment(c), c));
    }
    let least = candidates.iter().map(|(s, _)| s.clone()).min().expect("a column of this size");
    // A prefix already worse than the best complete reading cannot win.
    let mut extended = prefix.clone();
    extended.extend(&least);
    if let Some(b) = best.as_ref() {
        if extended.as_slice() > &b[..extended.len()] {
            return;
        }
    }
    for (seg, c) in candidates {
        if seg != least {
            continue;
        }
        let mut refined = Vec::new();
        for cell in cells {
            let mut cell = cell.clone();
            cell.sort_by_key(|&y| std::cmp::Reverse(columns[c].1[y]));
            for (_, group) in &cell.into_iter().chunk_by(|&y| columns[c].1[y]) {
                refined.push(group.collect());
            }
        }
        used[c] = true;
        let len = prefix.len();
        prefix.extend(&seg);
        canonical_columns(columns, used, &refined, prefix, best);
        prefix.truncate(len);
        used[c] = false;
    }
}

/// Whether `g` lies in `S(X,P) f S(X,P)`.
pub fn same_double_coset(partition: &Partition, f: &Transformation, g: &Transformation) -> Result<bool> {
    let kf = double_coset_key(partition, f).map_err(|_| Error::NotInT { index: 0 })?;
    let kg = double_coset_key(partition, g).map_err(|_| Error::NotInT { index: 1 })?;
    Ok(kf == kg)
}
