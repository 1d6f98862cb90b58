//! Explicit generating sets of `T(X,P)` of minimum size.
//!
//! The set is assembled in three layers: generators of the units, one
//! representative of every non-empty class `A(a,b)` (generating `T` over
//! `Sigma`), and one representative of every `B_i` plus every `C_i` whose
//! size `l_i` has no block of size `l_i - 1` (generating `Sigma` over `S`).

mod companion;
mod units;

use serde::Serialize;

pub use companion::{companion_of, decompose_sigma, is_companion, transposition_companion, SigmaDecomposition};
pub use units::{units_generators, wreath_pair, wreath_pair_seeded, WreathGenPair, DEFAULT_SEED};
pub(crate) use units::{unit_factors, UnitFactors};

use crate::classify::ClassLabel;
use crate::error::Result;
use crate::partition::Partition;
use crate::rank::SpecialCase;
use crate::transformation::Transformation;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Provenance {
    pub label: ClassLabel,
    pub note: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GeneratingSet {
    pub partition: Partition,
    pub elements: Vec<Transformation>,
    pub provenance: Vec<Provenance>,
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Transformation, &Provenance)> {
        self.elements.iter().zip(&self.provenance)
    }

    /// One `tag: images` line per element.
    pub fn to_lines(&self) -> Vec<String> {
        self.iter().map(|(t, p)| format!("{}: {}", p.label.tag(), t)).collect()
    }

    fn push(&mut self, t: Transformation, label: ClassLabel, note: impl Into<String>) {
        self.elements.push(t);
        self.provenance.push(Provenance { label, note: note.into() });
    }
}

/// Maps block `from` into block `to`: order-preserving when `to` is no
/// smaller, and `offset -> min(offset, |to| - 1)` otherwise.
pub(crate) fn write_block(partition: &Partition, images: &mut [usize], from: usize, to: usize) {
    let target = partition.offset(to);
    let last = partition.block_size(to) - 1;
    for (o, x) in partition.block_range(from).enumerate() {
        images[x] = target + o.min(last);
    }
}

/// One canonical element of every non-empty `A(a,b)`, ordered by `(a, b)`.
pub fn a_representatives(partition: &Partition) -> Vec<Transformation> {
    a_representatives_labelled(partition).into_iter().map(|(t, _)| t).collect()
}

fn a_representatives_labelled(partition: &Partition) -> Vec<(Transformation, ClassLabel)> {
    let classes = partition.size_classes();
    let mut out = Vec::new();
    for (ia, &(a, count_a)) in classes.iter().enumerate() {
        for &(b, _) in &classes[ia..] {
            if a == b && count_a < 2 {
                continue;
            }
            let from = partition.blocks_of_size(a).start;
            let to = if a == b { from + 1 } else { partition.blocks_of_size(b).start };
            let mut images: Vec<usize> = (0..partition.degree()).collect();
            write_block(partition, &mut images, from, to);
            out.push((Transformation::from_vec_unchecked(images), ClassLabel::A { a, b, blocks: (from, to) }));
        }
    }
    out
}

/// Canonical `B_i` for `i < r`, then canonical `C_i` for every qualifying `i`.
pub fn bc_representatives(partition: &Partition) -> Vec<Transformation> {
    bc_representatives_labelled(partition).into_iter().map(|(t, _)| t).collect()
}

fn bc_representatives_labelled(partition: &Partition) -> Vec<(Transformation, ClassLabel)> {
    let distinct = partition.signature().distinct_sizes;
    let identity = || (0..partition.degree()).collect::<Vec<usize>>();
    let mut out = Vec::new();
    for (idx, pair) in distinct.windows(2).enumerate() {
        let j = partition.blocks_of_size(pair[0]).start;
        let k = partition.blocks_of_size(pair[1]).start;
        let mut images = identity();
        write_block(partition, &mut images, j, k);
        write_block(partition, &mut images, k, j);
        out.push((Transformation::from_vec_unchecked(images), ClassLabel::B { i: idx + 1, grow: j, shrink: k }));
    }
    for (idx, &size) in distinct.iter().enumerate() {
        let qualifies = if idx == 0 { size != 1 } else { size - distinct[idx - 1] >= 2 };
        if !qualifies {
            continue;
        }
        let block = partition.blocks_of_size(size).start;
        let mut images = identity();
        let range = partition.block_range(block);
        let keep = range.start + size - 2;
        for x in range {
            images[x] = x.min(keep);
        }
        out.push((Transformation::from_vec_unchecked(images), ClassLabel::C { i: idx + 1, block }));
    }
    out
}

pub fn full_generating_set(partition: &Partition) -> Result<GeneratingSet> {
    full_generating_set_seeded(partition, DEFAULT_SEED)
}

pub fn full_generating_set_seeded(partition: &Partition, seed: u64) -> Result<GeneratingSet> {
    let mut set = GeneratingSet { partition: partition.clone(), elements: Vec::new(), provenance: Vec::new() };
    match SpecialCase::of(partition) {
        Some(case) => {
            // S(X,P) is cyclic here: its non-identity element, or the identity
            // when |X| = 1, generates it.
            let unit = match case {
                SpecialCase::Trivial => Transformation::identity(1),
                SpecialCase::SingleDoubleton | SpecialCase::TwoSingletons => {
                    Transformation::from_vec_unchecked(vec![1, 0])
                }
                SpecialCase::DoubletonAndSingleton => Transformation::from_vec_unchecked(vec![0, 2, 1]),
            };
            set.push(unit, ClassLabel::Unit, "generator of the cyclic group of units");
        }
        None => {
            for (t, role) in units::units_generators_with_roles(partition, seed)? {
                set.push(t, ClassLabel::Unit, role.to_string());
            }
        }
    }
    for (t, label) in a_representatives_labelled(partition) {
        set.push(t, label, "block-injective element merging two blocks");
    }
    for (t, label) in bc_representatives_labelled(partition) {
        let note = match label {
            ClassLabel::B { .. } => "swaps consecutive sizes, injective up and onto down",
            _ => "collapses two points of one block",
        };
        set.push(t, label, note);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::rank::rank_total;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn labels(part: &Partition, ts: &[Transformation]) -> Vec<String> {
        ts.iter().map(|t| classify(part, t).unwrap().tag()).collect()
    }

    #[test]
    fn a_reps() {
        let part = p("3+2+1");
        assert_eq!(labels(&part, &a_representatives(&part)), vec!["A(1,2)", "A(1,3)", "A(2,3)"]);
        let part = p("2+2");
        assert_eq!(labels(&part, &a_representatives(&part)), vec!["A(2,2)"]);
        let part = p("1+1");
        assert_eq!(a_representatives(&part), vec![Transformation::new(vec![1, 1]).unwrap()]);
    }

    #[test]
    fn bc_reps() {
        let part = p("3+2");
        assert_eq!(labels(&part, &bc_representatives(&part)), vec!["B(1)", "C(1)"]);
        let part = p("2+1");
        assert_eq!(labels(&part, &bc_representatives(&part)), vec!["B(1)"]);
        let part = p("3+1");
        assert_eq!(labels(&part, &bc_representatives(&part)), vec!["B(1)", "C(2)"]);
    }

    #[test]
    fn bc_image_sizes() {
        for n in 2..=9 {
            for part in Partition::all_of(n) {
                let distinct = part.signature().distinct_sizes;
                for t in bc_representatives(&part) {
                    match classify(&part, &t).unwrap() {
                        ClassLabel::B { i, .. } => {
                            assert_eq!(t.rank(), part.degree() - distinct[i] + distinct[i - 1]);
                        }
                        ClassLabel::C { .. } => assert_eq!(t.rank(), part.degree() - 1),
                        other => panic!("{part}: unexpected {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn sizes_match_rank() {
        assert_eq!(full_generating_set(&p("2+2")).unwrap().len(), 4);
        assert_eq!(full_generating_set(&p("3+2+1")).unwrap().len(), 7);
        assert_eq!(full_generating_set(&p("2+1")).unwrap().len(), 3);
        for n in 1..=12 {
            for part in Partition::all_of(n) {
                let set = full_generating_set(&part).unwrap();
                assert_eq!(set.len(), rank_total(&part).total, "{part}");
                for (t, prov) in set.iter() {
                    assert_eq!(classify(&part, t).unwrap().tag(), prov.label.tag(), "{part} {t}");
                }
            }
        }
    }

    #[test]
    fn layers_are_ordered() {
        let set = full_generating_set(&p("4+2+2+1")).unwrap();
        let rank = |l: &ClassLabel| match l {
            ClassLabel::Unit => 0,
            ClassLabel::A { .. } => 1,
            ClassLabel::B { .. } => 2,
            ClassLabel::C { .. } => 3,
            _ => 4,
        };
        let order: Vec<usize> = set.provenance.iter().map(|p| rank(&p.label)).collect();
        assert!(order.windows(2).all(|w| w[0] <= w[1]), "{order:?}");
    }
}
