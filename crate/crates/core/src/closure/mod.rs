//! Enumeration of the subsemigroup generated by a set of transformations.
//!
//! Plain breadth-first right multiplication with hashed deduplication.
//! Degrees up to 16 are packed four bits per point into a `u64`; larger
//! degrees fall back to boxed slices. Enumeration order is the BFS order and
//! depends only on the input.

mod search;

pub use search::{minimal_genset_search, SearchBudget, SearchOutcome};

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::transformation::{membership, Membership, Transformation};

pub const DEFAULT_RETAIN_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct ClosureOptions {
    /// Abort with [`Error::OverCap`] once more elements than this are found.
    pub cap: Option<u64>,
    /// Elements are returned only when the order is at most this.
    pub retain_limit: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { cap: None, retain_limit: DEFAULT_RETAIN_LIMIT }
    }
}

impl ClosureOptions {
    pub fn order_only() -> Self {
        ClosureOptions { cap: None, retain_limit: 0 }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = Some(cap);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureStats {
    pub multiplications: u64,
    /// Length of the longest word needed to reach a new element.
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub order: u64,
    pub elements: Option<Vec<Transformation>>,
    pub generator_count: usize,
    pub stats: ClosureStats,
}

trait Codec {
    type Key: Clone + Eq + std::hash::Hash;

    fn encode(&self, images: &[usize]) -> Self::Key;
    fn decode(&self, key: &Self::Key) -> Vec<usize>;
    fn mul(&self, key: &Self::Key, gen: &[usize]) -> Self::Key;
}

struct Nibbles {
    degree: usize,
}

impl Codec for Nibbles {
    type Key = u64;

    fn encode(&self, images: &[usize]) -> u64 {
        images.iter().enumerate().fold(0, |acc, (x, &y)| acc | (y as u64) << (4 * x))
    }

    fn decode(&self, key: &u64) -> Vec<usize> {
        (0..self.degree).map(|x| ((key >> (4 * x)) & 0xf) as usize).collect()
    }

    #[inline]
    fn mul(&self, key: &u64, gen: &[usize]) -> u64 {
        let mut out = 0u64;
        for x in 0..self.degree {
            let y = ((key >> (4 * x)) & 0xf) as usize;
            out |= (gen[y] as u64) << (4 * x);
        }
        out
    }
}

struct Wide;

impl Codec for Wide {
    type Key = Box<[u32]>;

    fn encode(&self, images: &[usize]) -> Box<[u32]> {
        images.iter().map(|&y| y as u32).collect()
    }

    fn decode(&self, key: &Box<[u32]>) -> Vec<usize> {
        key.iter().map(|&y| y as usize).collect()
    }

    fn mul(&self, key: &Box<[u32]>, gen: &[usize]) -> Box<[u32]> {
        key.iter().map(|&y| gen[y as usize] as u32).collect()
    }
}

fn run<C: Codec>(codec: &C, gens: &[Transformation], opts: &ClosureOptions) -> Result<ClosureResult> {
    let gen_images: Vec<&[usize]> = gens.iter().map(Transformation::images).collect();
    let mut seen: FxHashSet<C::Key> = FxHashSet::default();
    let mut queue: Vec<C::Key> = Vec::new();
    let over = |len: usize| opts.cap.is_some_and(|cap| len as u64 > cap);
    for g in &gen_images {
        let key = codec.encode(g);
        if seen.insert(key.clone()) {
            queue.push(key);
        }
    }
    if over(queue.len()) {
        return Err(Error::OverCap { cap: opts.cap.unwrap_or_default() });
    }
    let mut stats = ClosureStats { multiplications: 0, depth: 1 };
    let mut head = 0;
    // queue[..level_end] holds every element of word length <= stats.depth
    let mut level_end = queue.len();
    while head < queue.len() {
        if head == level_end {
            stats.depth += 1;
            level_end = queue.len();
        }
        let key = queue[head].clone();
        head += 1;
        for g in &gen_images {
            let product = codec.mul(&key, g);
            stats.multiplications += 1;
            if seen.insert(product.clone()) {
                queue.push(product);
            }
        }
        if over(queue.len()) {
            return Err(Error::OverCap { cap: opts.cap.unwrap_or_default() });
        }
    }
    let order = queue.len() as u64;
    let elements = (queue.len() <= opts.retain_limit).then(|| {
        queue.iter().map(|k| Transformation::from_vec_unchecked(codec.decode(k))).collect()
    });
    Ok(ClosureResult { order, elements, generator_count: gens.len(), stats })
}

/// The subsemigroup generated by `gens`.
pub fn closure(gens: &[Transformation], opts: &ClosureOptions) -> Result<ClosureResult> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let degree = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
    }
    if degree <= 16 {
        run(&Nibbles { degree }, gens, opts)
    } else {
        run(&Wide, gens, opts)
    }
}

/// Checks that every generator preserves `partition`, reporting the first
/// offender by index.
pub fn check_members(partition: &Partition, gens: &[Transformation]) -> Result<()> {
    for (index, g) in gens.iter().enumerate() {
        if g.degree() != partition.degree() {
            return Err(Error::DegreeMismatch { left: partition.degree(), right: g.degree() });
        }
        if membership(partition, g) == Membership::NotInT {
            return Err(Error::NotInT { index });
        }
    }
    Ok(())
}

/// Whether `gens` generates all of `T(X,P)`. Since every generator lies in
/// `T(X,P)`, equality of orders is equality of sets.
pub fn generates_t(partition: &Partition, gens: &[Transformation]) -> Result<bool> {
    Ok(verify_generation(partition, gens, None)?.generates())
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub partition: Partition,
    pub generator_count: usize,
    pub closure_order: u64,
    #[serde(serialize_with = "crate::partition::serialize_decimal")]
    pub oracle_order: BigUint,
    pub stats: ClosureStats,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl GenerationReport {
    pub fn generates(&self) -> bool {
        BigUint::from(self.closure_order) == self.oracle_order
    }
}

pub fn verify_generation(partition: &Partition, gens: &[Transformation], cap: Option<u64>) -> Result<GenerationReport> {
    check_members(partition, gens)?;
    let start = Instant::now();
    let oracle_order = partition.order_t();
    let mut opts = ClosureOptions::order_only();
    opts.cap = cap;
    let result = closure(gens, &opts)?;
    Ok(GenerationReport {
        partition: partition.clone(),
        generator_count: gens.len(),
        closure_order: result.order,
        oracle_order,
        stats: result.stats,
        elapsed: start.elapsed(),
    })
}
