//! Generators of the group of units `S(X,P)`.
//!
//! `S(X,P)` is a direct product of wreath products `S_n ≀ S_m`, one per
//! repeated size, of symmetric groups on the blocks of unique size, and of
//! `S_t` permuting the singletons when `t >= 2`. Each wreath factor gets a
//! verified generating pair; the remaining "lone" symmetric factors are
//! either fused into the last wreath pair (one lone factor) or handled by a
//! chain of elements pairing a transposition with an odd cycle.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::perm_group::group_order;
use crate::rank::SpecialCase;
use crate::transformation::Transformation;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

const RANDOM_ATTEMPTS: usize = 2000;

/// Two permutations of `{0..n*m-1}` generating `S_n ≀ S_m`, where block `b`
/// is the interval `b*n..(b+1)*n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathGenPair {
    pub n: usize,
    pub m: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl WreathGenPair {
    pub fn order(&self) -> BigUint {
        factorial(self.n).pow(self.m as u32) * factorial(self.m)
    }

    /// Places the pair on `m` consecutive blocks of size `n` starting at
    /// block `first_block`, identity elsewhere.
    pub fn place(&self, partition: &Partition, first_block: usize) -> (Transformation, Transformation) {
        let offset = partition.offset(first_block);
        let embed = |local: &[usize]| {
            let mut images: Vec<usize> = (0..partition.degree()).collect();
            for (x, &y) in local.iter().enumerate() {
                images[offset + x] = offset + y;
            }
            Transformation::from_vec_unchecked(images)
        };
        (embed(&self.x), embed(&self.y))
    }
}

/// Inner permutation on block 0 followed by a permutation of the blocks.
fn wreath_element(n: usize, m: usize, inner: &[usize], outer: &[usize]) -> Vec<usize> {
    (0..n * m)
        .map(|x| {
            let (b, o) = (x / n, x % n);
            let o = if b == 0 { inner[o] } else { o };
            outer[b] * n + o
        })
        .collect()
}

fn cycle(len: usize) -> Vec<usize> {
    (0..len).map(|i| (i + 1) % len).collect()
}

fn transposition(len: usize) -> Vec<usize> {
    (0..len).map(|i| if i < 2 { 1 - i } else { i }).collect()
}

/// Finds a generating pair for `S_n ≀ S_m` (`n, m >= 2`).
///
/// Structured candidates come first: an inner permutation of block 0 from
/// `{id, (0 1), n-cycle}` followed by a block permutation from
/// `{id, (0 1), m-cycle}`. If none of those pairs works, seeded random
/// pairs are tried. Every returned pair has its group order checked.
pub fn wreath_pair(n: usize, m: usize) -> Result<WreathGenPair> {
    wreath_pair_seeded(n, m, DEFAULT_SEED)
}

pub fn wreath_pair_seeded(n: usize, m: usize, seed: u64) -> Result<WreathGenPair> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidArgument(format!("wreath pair needs n, m >= 2, got ({n}, {m})")));
    }
    let degree = n * m;
    let target = factorial(n).pow(m as u32) * factorial(m);
    let identity = |k: usize| (0..k).collect::<Vec<_>>();
    let inners = [identity(n), transposition(n), cycle(n)];
    let outers = [identity(m), transposition(m), cycle(m)];
    let mut candidates = Vec::new();
    for inner in &inners {
        for outer in &outers {
            candidates.push(wreath_element(n, m, inner, outer));
        }
    }
    for (i, x) in candidates.iter().enumerate() {
        for y in &candidates[i + 1..] {
            if group_order(&[x.clone(), y.clone()], degree) == target {
                return Ok(WreathGenPair { n, m, x: x.clone(), y: y.clone() });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_element = |rng: &mut ChaCha8Rng| {
        let mut outer = identity(m);
        outer.shuffle(rng);
        let inner: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let mut p = identity(n);
                p.shuffle(rng);
                p
            })
            .collect();
        (0..degree).map(|x| outer[x / n] * n + inner[x / n][x % n]).collect::<Vec<_>>()
    };
    for _ in 0..RANDOM_ATTEMPTS {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        if group_order(&[x.clone(), y.clone()], degree) == target {
            return Ok(WreathGenPair { n, m, x, y });
        }
    }
    Err(Error::SearchFailure(format!("no generating pair found for S_{n} wr S_{m}")))
}

/// A symmetric factor acting on an ordered list of points.
#[derive(Clone, Debug)]
pub(crate) struct LoneFactor {
    pub points: Vec<usize>,
}

impl LoneFactor {
    fn len(&self) -> usize {
        self.points.len()
    }

    /// Writes the local permutation `local` of `0..len` into `images`.
    fn apply_into(&self, images: &mut [usize], local: &[usize]) {
        for (i, &j) in local.iter().enumerate() {
            images[self.points[i]] = self.points[j];
        }
    }

    /// The odd-length cycle `(2,...,l)` for even `l` and `(1,...,l)` for odd
    /// `l` (1-based points), in local 0-based form.
    fn odd_cycle(&self) -> Vec<usize> {
        let l = self.len();
        let start = usize::from(l.is_multiple_of(2));
        let mut local: Vec<usize> = (0..l).collect();
        let span = l - start;
        for (i, slot) in local.iter_mut().enumerate().skip(start) {
            *slot = start + (i - start + 1) % span;
        }
        local
    }
}

/// Wreath classes `(size, first_block, count)` and lone factors of `S(X,P)`.
pub(crate) struct UnitFactors {
    pub wreaths: Vec<(usize, usize, usize)>,
    pub lone: Vec<LoneFactor>,
}

pub(crate) fn unit_factors(partition: &Partition) -> UnitFactors {
    let mut wreaths = Vec::new();
    let mut lone = Vec::new();
    let mut singletons = Vec::new();
    for (size, count) in partition.size_classes() {
        let blocks = partition.blocks_of_size(size);
        if size == 1 {
            singletons.extend(blocks.map(|b| partition.offset(b)));
        } else if count >= 2 {
            wreaths.push((size, blocks.start, count));
        } else {
            lone.push(LoneFactor { points: partition.block_range(blocks.start).collect() });
        }
    }
    if singletons.len() >= 2 {
        lone.push(LoneFactor { points: singletons });
    }
    UnitFactors { wreaths, lone }
}

/// Where a unit generator came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitRole {
    WreathPair { size: usize, count: usize, which: usize },
    /// The three elements replacing the last wreath pair when there is
    /// exactly one lone factor.
    FusedTriple { which: usize },
    /// The two standard generators of a single symmetric factor.
    LoneSymmetric { which: usize },
    /// Element `which` of the transposition/odd-cycle chain (1-based).
    Chain { which: usize },
}

impl std::fmt::Display for UnitRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnitRole::WreathPair { size, count, which } => {
                write!(f, "wreath pair for S_{size} wr S_{count}, element {which}")
            }
            UnitRole::FusedTriple { which } => {
                let name = ["u", "v", "w"][*which];
                write!(f, "wreath pair fused with the lone factor, element {name}")
            }
            UnitRole::LoneSymmetric { which } => write!(f, "symmetric factor generator {which}"),
            UnitRole::Chain { which } => write!(f, "transposition/odd-cycle chain element w_{which}"),
        }
    }
}

pub fn units_generators(partition: &Partition) -> Result<Vec<Transformation>> {
    Ok(units_generators_with_roles(partition, DEFAULT_SEED)?.into_iter().map(|(t, _)| t).collect())
}

pub(crate) fn units_generators_with_roles(
    partition: &Partition,
    seed: u64,
) -> Result<Vec<(Transformation, UnitRole)>> {
    if SpecialCase::of(partition).is_some() {
        return Err(Error::SpecialCase { partition: partition.to_string() });
    }
    let degree = partition.degree();
    let UnitFactors { wreaths, lone } = unit_factors(partition);
    let k = wreaths.len();
    let u = lone.len();
    let id = || (0..degree).collect::<Vec<usize>>();

    let mut pairs = Vec::with_capacity(k);
    for &(size, first, count) in &wreaths {
        let pair = wreath_pair_seeded(size, count, seed)?;
        pairs.push((pair.place(partition, first), size, count));
    }

    let mut out = Vec::new();
    let wreath_roles = |out: &mut Vec<(Transformation, UnitRole)>, take: usize| {
        for ((x, y), size, count) in pairs.iter().take(take) {
            out.push((x.clone(), UnitRole::WreathPair { size: *size, count: *count, which: 1 }));
            out.push((y.clone(), UnitRole::WreathPair { size: *size, count: *count, which: 2 }));
        }
    };

    match (k, u) {
        (_, 0) => wreath_roles(&mut out, k),
        (0, 1) => {
            let f = &lone[0];
            let mut a = id();
            f.apply_into(&mut a, &transposition(f.len()));
            let mut b = id();
            f.apply_into(&mut b, &cycle(f.len()));
            out.push((Transformation::from_vec_unchecked(a), UnitRole::LoneSymmetric { which: 1 }));
            out.push((Transformation::from_vec_unchecked(b), UnitRole::LoneSymmetric { which: 2 }));
        }
        (_, 1) => {
            wreath_roles(&mut out, k - 1);
            let ((x, y), _, _) = &pairs[k - 1];
            let f = &lone[0];
            let gen_u = x.clone();
            let mut v = y.images().to_vec();
            f.apply_into(&mut v, &cycle(f.len()));
            let mut w = id();
            f.apply_into(&mut w, &transposition(f.len()));
            out.push((gen_u, UnitRole::FusedTriple { which: 0 }));
            out.push((Transformation::from_vec_unchecked(v), UnitRole::FusedTriple { which: 1 }));
            out.push((Transformation::from_vec_unchecked(w), UnitRole::FusedTriple { which: 2 }));
        }
        _ => {
            wreath_roles(&mut out, k);
            for i in 0..u {
                let mut w = id();
                if i + 1 < u {
                    lone[i].apply_into(&mut w, &transposition(lone[i].len()));
                    lone[i + 1].apply_into(&mut w, &lone[i + 1].odd_cycle());
                } else {
                    lone[0].apply_into(&mut w, &lone[0].odd_cycle());
                    lone[u - 1].apply_into(&mut w, &transposition(lone[u - 1].len()));
                }
                out.push((Transformation::from_vec_unchecked(w), UnitRole::Chain { which: i + 1 }));
            }
        }
    }
    Ok(out)
}
