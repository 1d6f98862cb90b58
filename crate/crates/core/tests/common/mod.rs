//! Independent helpers shared by the integration tests. Nothing here calls
//! the library's counting or generating code; elements are built directly
//! from the definitions.

#![allow(dead_code)]

use partrank::{Partition, Transformation};
use rand::seq::SliceRandom;
use rand::Rng;

/// Blocks as explicit point lists, built from the block sizes alone.
pub fn blocks(p: &Partition) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for &s in p.block_sizes() {
        out.push((start..start + s).collect());
        start += s;
    }
    out
}

fn block_index(blocks: &[Vec<usize>], degree: usize) -> Vec<usize> {
    let mut idx = vec![0; degree];
    for (b, pts) in blocks.iter().enumerate() {
        for &x in pts {
            idx[x] = b;
        }
    }
    idx
}

/// Whether `images` sends every block into a single block.
pub fn preserves(p: &Partition, images: &[usize]) -> bool {
    let bl = blocks(p);
    let idx = block_index(&bl, p.degree());
    bl.iter().all(|pts| pts.iter().all(|&x| idx[images[x]] == idx[images[pts[0]]]))
}

/// Counts `T(X,P)` by running through all `N^N` maps.
pub fn brute_force_order_t(p: &Partition) -> u64 {
    let n = p.degree();
    let mut images = vec![0usize; n];
    let mut count = 0;
    loop {
        if preserves(p, &images) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

/// Every element of `T(X,P)`, listed block by block.
pub fn all_of_t(p: &Partition) -> Vec<Transformation> {
    let bl = blocks(p);
    let n = p.degree();
    let mut out = vec![vec![0usize; n]];
    for pts in &bl {
        let mut next = Vec::new();
        for partial in &out {
            for target in &bl {
                let k = target.len();
                let mut choice = vec![0usize; pts.len()];
                loop {
                    let mut img = partial.clone();
                    for (i, &x) in pts.iter().enumerate() {
                        img[x] = target[choice[i]];
                    }
                    next.push(img);
                    let mut i = 0;
                    while i < choice.len() {
                        choice[i] += 1;
                        if choice[i] < k {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == choice.len() {
                        break;
                    }
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|v| Transformation::new(v).unwrap()).collect()
}

pub fn is_unit(p: &Partition, f: &Transformation) -> bool {
    f.is_permutation() && preserves(p, f.images())
}

/// Random element of `Sigma(X,P)` with its block permutation.
pub fn random_sigma(p: &Partition, rng: &mut impl Rng) -> Transformation {
    let bl = blocks(p);
    let mut tau: Vec<usize> = (0..bl.len()).collect();
    tau.shuffle(rng);
    let mut images = vec![0; p.degree()];
    for (b, pts) in bl.iter().enumerate() {
        let target = &bl[tau[b]];
        for &x in pts {
            images[x] = target[rng.random_range(0..target.len())];
        }
    }
    Transformation::new(images).unwrap()
}

/// Uniform random unit: a size-preserving block permutation with random
/// bijections between matched blocks.
pub fn random_unit(p: &Partition, rng: &mut impl Rng) -> Transformation {
    let bl = blocks(p);
    let mut images = vec![0; p.degree()];
    let mut by_size: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (b, pts) in bl.iter().enumerate() {
        by_size.entry(pts.len()).or_default().push(b);
    }
    for group in by_size.values() {
        let mut targets = group.clone();
        targets.shuffle(rng);
        for (&b, &t) in group.iter().zip(&targets) {
            let mut dest = bl[t].clone();
            dest.shuffle(rng);
            for (&x, &y) in bl[b].iter().zip(&dest) {
                images[x] = y;
            }
        }
    }
    Transformation::new(images).unwrap()
}

/// Every unit, by exhaustive listing of bijections inside `T(X,P)`.
pub fn all_units(p: &Partition) -> Vec<Transformation> {
    all_of_t(p).into_iter().filter(|f| f.is_permutation()).collect()
}

/// Block permutation induced by an element of `Sigma(X,P)`.
pub fn block_map(p: &Partition, f: &Transformation) -> Vec<usize> {
    let bl = blocks(p);
    let idx = block_index(&bl, p.degree());
    bl.iter().map(|pts| idx[f.apply(pts[0])]).collect()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `|S(X,P)|` from the wreath-product description.
pub fn order_s(p: &Partition) -> u64 {
    let mut counts: std::collections::BTreeMap<usize, u64> = Default::default();
    for &s in p.block_sizes() {
        *counts.entry(s).or_default() += 1;
    }
    counts.iter().map(|(&s, &m)| factorial(s as u64).pow(m as u32) * factorial(m)).product()
}

/// `2k + u`: two directions per repeated size at least 2, one per unique
/// size at least 2, one for at least two singletons.
pub fn parity_dimension_oracle(p: &Partition) -> usize {
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for &s in p.block_sizes() {
        *counts.entry(s).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&s, &m)| match (s, m) {
            (1, m) if m >= 2 => 1,
            (1, _) => 0,
            (_, 1) => 1,
            _ => 2,
        })
        .sum()
}

/// Rank of a set of bit vectors over GF(2).
pub fn gf2_rank(vectors: impl IntoIterator<Item = Vec<u8>>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for v in vectors {
        let mut m = v.iter().enumerate().fold(0u64, |m, (i, &b)| m | (b as u64) << i);
        for &b in &basis {
            m = m.min(m ^ b);
        }
        if m != 0 {
            basis.push(m);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// The partitions of `n` with parts at most `max`, descending parts.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.into_iter().map(|v| Partition::new(v).unwrap()).collect()
}

/// Labels every element of `elements` (all of `T`) by its `S x S` double
/// coset, by exhaustive multiplication.
pub fn double_coset_labels(elements: &[Transformation], units: &[Transformation]) -> Vec<usize> {
    let index: std::collections::HashMap<&[usize], usize> =
        elements.iter().enumerate().map(|(i, t)| (t.images(), i)).collect();
    let mut label = vec![usize::MAX; elements.len()];
    let mut next = 0;
    for i in 0..elements.len() {
        if label[i] != usize::MAX {
            continue;
        }
        for u in units {
            let uf = u.then(&elements[i]);
            for v in units {
                label[index[uf.then(v).images()]] = next;
            }
        }
        next += 1;
    }
    label
}
