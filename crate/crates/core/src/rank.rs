//! Closed-form rank of `T(X,P)` and of its three layers.
//!
//! With `p`, `q`, `t` as in [`PartitionSignature`], and whenever
//! `|S(X,P)| >= 3`:
//!
//! ```text
//! rank S           = max{2, 2p + q + g(t)}
//! rank (T : Sigma) = C(s,2) + r
//! rank (Sigma : S) = p + q + g'(t) - 1 + l
//! ```
//!
//! where `g(t) = [t >= 2]`, `g'(t) = [t >= 1]` and `l` counts the sizes
//! `s >= 2` with no block of size `s - 1`. The four partitions with
//! `|S(X,P)| <= 2` are tabulated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, PartitionSignature};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// `|X| = 1`.
    Trivial,
    /// One block of size 2.
    SingleDoubleton,
    /// Two singleton blocks.
    TwoSingletons,
    /// A block of size 2 and a singleton.
    DoubletonAndSingleton,
}

impl SpecialCase {
    pub fn of(partition: &Partition) -> Option<SpecialCase> {
        match partition.block_sizes() {
            [1] => Some(SpecialCase::Trivial),
            [2] => Some(SpecialCase::SingleDoubleton),
            [1, 1] => Some(SpecialCase::TwoSingletons),
            [1, 2] => Some(SpecialCase::DoubletonAndSingleton),
            _ => None,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SpecialCase::Trivial => 1,
            SpecialCase::SingleDoubleton | SpecialCase::TwoSingletons => 2,
            SpecialCase::DoubletonAndSingleton => 3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RankParams {
    pub p: usize,
    pub q: usize,
    pub t: usize,
    pub s: usize,
    pub r_rep: usize,
    pub l: usize,
    pub g: usize,
    pub g_prime: usize,
    pub h: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RankBreakdown {
    pub partition: Partition,
    pub rank_units: usize,
    pub relrank_t_over_sigma: usize,
    pub relrank_sigma_over_s: usize,
    pub total: usize,
    pub params: RankParams,
    pub special_case: Option<SpecialCase>,
}

fn g(t: usize) -> usize {
    usize::from(t >= 2)
}

fn g_prime(t: usize) -> usize {
    usize::from(t >= 1)
}

fn h(p: usize, q: usize, t: usize) -> usize {
    match t {
        0 => 0,
        1 => p + q,
        _ => p + q + 1,
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of sizes `s >= 2` present with no block of size `s - 1`.
pub fn little_l(partition: &Partition) -> usize {
    let distinct = partition.signature().distinct_sizes;
    distinct
        .iter()
        .filter(|&&s| s >= 2 && distinct.binary_search(&(s - 1)).is_err())
        .count()
}

pub fn params(partition: &Partition) -> RankParams {
    let PartitionSignature { p, q, t, s, r_rep, .. } = partition.signature();
    RankParams { p, q, t, s, r_rep, l: little_l(partition), g: g(t), g_prime: g_prime(t), h: h(p, q, t) }
}

pub fn rank_units(partition: &Partition) -> Result<usize> {
    if SpecialCase::of(partition).is_some() {
        return Err(Error::SpecialCase { partition: partition.to_string() });
    }
    let RankParams { p, q, g, .. } = params(partition);
    Ok((2 * p + q + g).max(2))
}

pub fn relrank_t_over_sigma(partition: &Partition) -> usize {
    let RankParams { s, r_rep, .. } = params(partition);
    choose2(s) + r_rep
}

pub fn relrank_sigma_over_s(partition: &Partition) -> usize {
    let RankParams { p, q, g_prime, l, .. } = params(partition);
    p + q + g_prime + l - 1
}

pub fn rank_total(partition: &Partition) -> RankBreakdown {
    let prm = params(partition);
    let t_over_sigma = relrank_t_over_sigma(partition);
    let sigma_over_s = relrank_sigma_over_s(partition);
    match SpecialCase::of(partition) {
        Some(case) => RankBreakdown {
            partition: partition.clone(),
            // S(X,P) is cyclic of order 1 or 2 here, so one unit suffices;
            // the two relative ranks keep their general values.
            rank_units: 1,
            relrank_t_over_sigma: t_over_sigma,
            relrank_sigma_over_s: sigma_over_s,
            total: case.rank(),
            params: prm,
            special_case: Some(case),
        },
        None => {
            let units = rank_units(partition).expect("not a special case");
            let RankParams { p, q, g_prime, l, h, .. } = prm;
            let total = units + choose2(p + q) + 2 * p + q + g_prime + l + h - 1;
            debug_assert_eq!(total, units + t_over_sigma + sigma_over_s);
            RankBreakdown {
                partition: partition.clone(),
                rank_units: units,
                relrank_t_over_sigma: t_over_sigma,
                relrank_sigma_over_s: sigma_over_s,
                total,
                params: prm,
                special_case: None,
            }
        }
    }
}
