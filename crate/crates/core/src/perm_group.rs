//! Orders of permutation groups by the deterministic Schreier-Sims method.
//!
//! Used to certify generator pairs of wreath products whose order is far
//! beyond what enumeration can reach.

use num_bigint::BigUint;
use num_traits::One;

type Perm = Vec<usize>;

fn mul(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

fn inv(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        r[y] = x;
    }
    r
}

fn is_identity(a: &Perm) -> bool {
    a.iter().enumerate().all(|(x, &y)| x == y)
}

struct Level {
    base: usize,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
    gens: Vec<Perm>,
}

fn build_level(base: usize, gens: Vec<Perm>, degree: usize) -> Level {
    let mut transversal = vec![None; degree];
    transversal[base] = Some((0..degree).collect::<Perm>());
    let mut orbit = vec![base];
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        head += 1;
        for g in &gens {
            let q = g[p];
            if transversal[q].is_none() {
                transversal[q] = Some(mul(transversal[p].as_ref().expect("in orbit"), g));
                orbit.push(q);
            }
        }
    }
    Level { base, transversal, orbit, gens }
}

/// Strips `g` through `levels`; returns the residue and the depth reached.
fn sift(levels: &[Level], mut g: Perm) -> (Perm, usize) {
    for (depth, level) in levels.iter().enumerate() {
        let b = g[level.base];
        match &level.transversal[b] {
            None => return (g, depth),
            Some(u) => g = mul(&g, &inv(u)),
        }
    }
    (g, levels.len())
}

/// Stabilizer chain data for the group generated by `gens`.
pub struct StabilizerChain {
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

impl StabilizerChain {
    pub fn order(&self) -> BigUint {
        self.orbit_sizes.iter().map(|&s| BigUint::from(s)).product::<BigUint>()
    }
}

pub fn stabilizer_chain(gens: &[Vec<usize>], degree: usize) -> StabilizerChain {
    let mut strong: Vec<Perm> = gens.iter().filter(|g| !is_identity(g)).cloned().collect();
    let mut base: Vec<usize> = Vec::new();
    for g in &strong {
        if base.iter().all(|&b| g[b] == b) {
            base.push((0..degree).find(|&x| g[x] != x).expect("non-identity"));
        }
    }

    'restart: loop {
        let levels: Vec<Level> = (0..base.len())
            .map(|i| {
                let fixes_prefix = |g: &&Perm| base[..i].iter().all(|&b| g[b] == b);
                let gens = strong.iter().filter(fixes_prefix).cloned().collect();
                build_level(base[i], gens, degree)
            })
            .collect();

        for i in (0..levels.len()).rev() {
            let level = &levels[i];
            for &p in &level.orbit {
                let up = level.transversal[p].as_ref().expect("in orbit");
                for s in &level.gens {
                    let q = s[p];
                    let uq = level.transversal[q].as_ref().expect("orbit closed");
                    let schreier = mul(&mul(up, s), &inv(uq));
                    let (residue, depth) = sift(&levels[i + 1..], schreier);
                    if !is_identity(&residue) {
                        if i + 1 + depth == levels.len() {
                            let moved = (0..degree).find(|&x| residue[x] != x).expect("non-identity");
                            base.push(moved);
                        }
                        strong.push(residue);
                        continue 'restart;
                    }
                }
            }
        }
        return StabilizerChain { orbit_sizes: levels.iter().map(|l| l.orbit.len()).collect(), base };
    }
}

pub fn group_order(gens: &[Vec<usize>], degree: usize) -> BigUint {
    if gens.iter().all(is_identity) {
        return BigUint::one();
    }
    stabilizer_chain(gens, degree).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_groups() {
        for n in 2..=8 {
            let transposition: Perm = (0..n).map(|x| if x < 2 { 1 - x } else { x }).collect();
            let cycle: Perm = (0..n).map(|x| (x + 1) % n).collect();
            let fact: BigUint = (1..=n).map(BigUint::from).product();
            assert_eq!(group_order(&[transposition, cycle], n), fact);
        }
    }

    #[test]
    fn alternating_and_cyclic() {
        // 3-cycles (0 1 2), (0 1 3), ... generate A_5
        let c = |a: usize, b: usize, c: usize| {
            let mut p: Perm = (0..5).collect();
            p[a] = b;
            p[b] = c;
            p[c] = a;
            p
        };
        assert_eq!(group_order(&[c(0, 1, 2), c(0, 1, 3), c(0, 1, 4)], 5), BigUint::from(60u32));
        let cycle: Perm = vec![1, 2, 3, 4, 5, 0];
        assert_eq!(group_order(&[cycle], 6), BigUint::from(6u32));
        assert_eq!(group_order(&[vec![0, 1, 2]], 3), BigUint::one());
    }

    #[test]
    fn direct_product() {
        // (0 1) and (2 3 4) commute: order 6
        assert_eq!(group_order(&[vec![1, 0, 2, 3, 4], vec![0, 1, 3, 4, 2]], 5), BigUint::from(6u32));
    }
}
