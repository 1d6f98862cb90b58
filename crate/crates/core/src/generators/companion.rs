//! Companions of block permutations and the `e * h * g` factorisation of
//! elements of `Sigma(X,P)`.
//!
//! A companion of a permutation `tau` of the blocks is an element `g` of
//! `Sigma(X,P)` with `ḡ = tau` that is injective on every block whose
//! target is no smaller and surjective on every block whose target is no
//! larger. Companions are built from the adjacent ones `f_(k k+1)`, so they
//! lie in the subsemigroup generated by the units and the `B` classes.

use serde::Serialize;

use super::write_block;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::transformation::{induced_block_map, kernel_classes_of, membership, Membership, Transformation};

/// Companion of the transposition of blocks `i` and `j`.
///
/// For adjacent blocks this is `f_(k k+1)`: the larger block goes onto the
/// smaller by collapsing its tail, the smaller goes order-preservingly into
/// the larger, and every other point is fixed. For `i < j` it is the product
/// `f_(j-1 j) ... f_(i+1 i+2) f_(i i+1) f_(i+1 i+2) ... f_(j-1 j)`.
pub fn transposition_companion(partition: &Partition, i: usize, j: usize) -> Transformation {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    let degree = partition.degree();
    if i == j {
        return Transformation::identity(degree);
    }
    let adjacent = |k: usize| {
        let mut images: Vec<usize> = (0..degree).collect();
        write_block(partition, &mut images, k, k + 1);
        write_block(partition, &mut images, k + 1, k);
        Transformation::from_vec_unchecked(images)
    };
    let mut acc = Transformation::identity(degree);
    for k in (i..j).rev() {
        acc = acc.then(&adjacent(k));
    }
    for k in i + 1..j {
        acc = acc.then(&adjacent(k));
    }
    acc
}

/// Companion of a single cycle `x_1 -> x_2 -> ... -> x_k -> x_1`.
fn cycle_companion(partition: &Partition, cycle: &[usize]) -> Transformation {
    let len = cycle.len();
    if len == 2 {
        return transposition_companion(partition, cycle[0], cycle[1]);
    }
    // Split off the least block: (x_1 ... x_k) = (cycle without x_j)(x_j x_{j+1}).
    let j = (0..len).min_by_key(|&i| cycle[i]).expect("nonempty cycle");
    let xj = cycle[j];
    let next = cycle[(j + 1) % len];
    let prev = cycle[(j + len - 1) % len];
    let shorter: Vec<usize> = (1..len).map(|d| cycle[(j + d) % len]).collect();
    let h1 = cycle_companion(partition, &shorter);
    let ft = transposition_companion(partition, xj, next);

    // A unit permuting block `next` so that the image of block `prev`
    // under h1 covers a section of the kernel of ft on block `next`.
    let mut incoming: Vec<usize> = partition.block_range(prev).map(|x| h1.apply(x)).collect();
    incoming.sort_unstable();
    incoming.dedup();
    let section: Vec<usize> = kernel_classes_of(partition.block_range(next).map(|x| (x, ft.apply(x))))
        .into_iter()
        .map(|c| c[0])
        .collect();
    let block: Vec<usize> = partition.block_range(next).collect();
    let mut images: Vec<usize> = (0..partition.degree()).collect();
    let mut used = vec![false; partition.degree()];
    let mut assigned = vec![false; partition.degree()];
    for (&from, &to) in incoming.iter().zip(&section) {
        images[from] = to;
        used[to] = true;
        assigned[from] = true;
    }
    let mut free = block.iter().copied().filter(|&y| !used[y]);
    for &x in &block {
        if !assigned[x] {
            images[x] = free.next().expect("bijection completes");
        }
    }
    let g = Transformation::from_vec_unchecked(images);
    h1.then(&g).then(&ft)
}

/// Disjoint cycles of length at least 2 of a permutation given by images.
fn cycles(tau: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; tau.len()];
    let mut out = Vec::new();
    for start in 0..tau.len() {
        if seen[start] || tau[start] == start {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = tau[x];
        }
        out.push(c);
    }
    out
}

/// A companion of the block permutation `tau` (given by images).
pub fn companion_of(partition: &Partition, tau: &[usize]) -> Result<Transformation> {
    let n = partition.num_blocks();
    let mut seen = vec![false; n];
    if tau.len() != n || tau.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::InvalidArgument(format!("{tau:?} is not a permutation of {n} blocks")));
    }
    Ok(cycles(tau)
        .iter()
        .fold(Transformation::identity(partition.degree()), |acc, c| acc.then(&cycle_companion(partition, c))))
}

/// Checks the three companion clauses for `g` against `tau`.
pub fn is_companion(partition: &Partition, tau: &[usize], g: &Transformation) -> bool {
    if membership(partition, g) < Membership::InSigma {
        return false;
    }
    if induced_block_map(partition, g).images() != Some(tau) {
        return false;
    }
    (0..partition.num_blocks()).all(|b| {
        let (src, dst) = (partition.block_size(b), partition.block_size(tau[b]));
        let mut img: Vec<usize> = partition.block_range(b).map(|x| g.apply(x)).collect();
        img.sort_unstable();
        img.dedup();
        let injective = img.len() == src;
        let surjective = img.len() == dst;
        (src > dst || injective) && (src < dst || surjective)
    })
}

/// `f = e * h * g` with `e` idempotent, `ker e = ker f`, `e` mapping every
/// block into itself, `h` a unit fixing every block, and `g` a companion of
/// `f̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaDecomposition {
    pub idempotent: Transformation,
    pub unit: Transformation,
    pub companion: Transformation,
}

/// Factorises `f ∈ Sigma(X,P)`.
///
/// `companion` is [`companion_of`]`(f̄)` followed by a unit that permutes
/// points inside each block. The correction is needed on blocks that grow:
/// there `companion_of` has a fixed image, while `f` may land anywhere.
pub fn decompose_sigma(partition: &Partition, f: &Transformation) -> Result<SigmaDecomposition> {
    if membership(partition, f) < Membership::InSigma {
        return Err(Error::NotInSigma);
    }
    let degree = partition.degree();
    let tau = induced_block_map(partition, f).0.expect("f preserves P");
    let c = companion_of(partition, &tau)?;

    let mut e: Vec<usize> = (0..degree).collect();
    let mut h: Vec<usize> = (0..degree).collect();
    let mut k: Vec<usize> = (0..degree).collect();
    for (b, &target) in tau.iter().enumerate() {
        let classes = kernel_classes_of(partition.block_range(b).map(|x| (x, f.apply(x))));
        let reps: Vec<usize> = classes.iter().map(|cl| cl[0]).collect();
        for cl in &classes {
            for &x in cl {
                e[x] = cl[0];
            }
        }
        let block: Vec<usize> = partition.block_range(b).collect();
        let target_block: Vec<usize> = partition.block_range(target).collect();
        if partition.block_size(b) >= partition.block_size(target) {
            // c is onto the target block: send each representative to a
            // preimage of its f-value, keep k trivial on the target.
            let mut used = vec![false; degree];
            let mut assigned = vec![false; degree];
            for &r in &reps {
                let want = f.apply(r);
                let pre = block.iter().copied().find(|&y| !used[y] && c.apply(y) == want).expect("c is onto");
                h[r] = pre;
                used[pre] = true;
                assigned[r] = true;
            }
            complete_bijection(&block, &mut h, &assigned, &used);
        } else {
            // c is injective: keep h trivial and move c's image onto f's.
            let mut used = vec![false; degree];
            let mut assigned = vec![false; degree];
            for &r in &reps {
                let from = c.apply(r);
                k[from] = f.apply(r);
                used[f.apply(r)] = true;
                assigned[from] = true;
            }
            complete_bijection(&target_block, &mut k, &assigned, &used);
        }
    }
    let companion = c.then(&Transformation::from_vec_unchecked(k));
    Ok(SigmaDecomposition {
        idempotent: Transformation::from_vec_unchecked(e),
        unit: Transformation::from_vec_unchecked(h),
        companion,
    })
}

/// Fills the unassigned points of `block` with the unused ones, both in
/// ascending order.
fn complete_bijection(block: &[usize], map: &mut [usize], assigned: &[bool], used: &[bool]) {
    let mut free = block.iter().copied().filter(|&y| !used[y]);
    for &x in block {
        if !assigned[x] {
            map[x] = free.next().expect("sizes agree");
        }
    }
}
