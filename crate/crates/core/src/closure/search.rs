//! Exhaustive search for the rank of a small `T(X,P)`.
//!
//! Candidates are built layer by layer. Products of non-units are never
//! units, and `T \ Sigma` is an ideal, so a set `U` generates `T(X,P)` only
//! if `U ∩ S` generates `S` and `U ∩ Sigma` generates `Sigma`; both checks
//! are made before the next layer is chosen. Within each layer the first
//! member of every `S x S` double coset is tried first.
//!
//! The main pass, ascending in `k`, also skips any full candidate that
//! fails [`certify_lower_bound`](crate::certify::certify_lower_bound)
//! without computing its closure. Once a generating `k`-set is found, size
//! `k - 1` is swept again with closures only, so the answer does not rest
//! on the certificate.

use itertools::Itertools;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::certify::{ElementFacts, LowerBound};
use crate::error::{Error, Result};
use crate::generators::full_generating_set;
use crate::invariant::double_coset_key;
use crate::partition::Partition;
use crate::transformation::{membership, Membership, Transformation};

use super::{closure, ClosureOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Largest `|T(X,P)|` accepted.
    pub max_order: u64,
    /// Largest number of closure computations before giving up.
    pub max_closures: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_order: 200, max_closures: 20_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Exact {
        rank: usize,
        witness: Vec<Transformation>,
        closures: u64,
        /// Candidates rejected by the certificate without a closure.
        certificate_skips: u64,
    },
    Inconclusive {
        reason: String,
        /// Every size below this was excluded.
        lower_bound: usize,
        closures: u64,
    },
}

impl SearchOutcome {
    pub fn rank(&self) -> Option<usize> {
        match self {
            SearchOutcome::Exact { rank, .. } => Some(*rank),
            SearchOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Multiplication table of an enumerated monoid with bitset closures.
struct Table {
    order: usize,
    words: usize,
    /// `mul[i * order + j]` is the index of `e_i * e_j`.
    mul: Vec<u16>,
}

impl Table {
    fn closure_size(&self, gens: &[usize], seen: &mut [u64], queue: &mut Vec<u16>) -> usize {
        seen.iter_mut().for_each(|w| *w = 0);
        queue.clear();
        for &g in gens {
            if seen[g / 64] & 1 << (g % 64) == 0 {
                seen[g / 64] |= 1 << (g % 64);
                queue.push(g as u16);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let row = queue[head] as usize * self.order;
            head += 1;
            for &g in gens {
                let p = self.mul[row + g] as usize;
                if seen[p / 64] & 1 << (p % 64) == 0 {
                    seen[p / 64] |= 1 << (p % 64);
                    queue.push(p as u16);
                }
            }
        }
        queue.len()
    }
}

struct Searcher<'a> {
    table: Table,
    units: Vec<usize>,
    sigma_only: Vec<usize>,
    rest: Vec<usize>,
    order_s: usize,
    order_sigma: usize,
    facts: Vec<ElementFacts>,
    lower_bound: LowerBound,
    budget: &'a SearchBudget,
    closures: u64,
    skips: u64,
    seen: Vec<u64>,
    queue: Vec<u16>,
}

enum Step {
    Found(Vec<usize>),
    NotFound,
    OverBudget,
}

impl Searcher<'_> {
    fn generates(&mut self, gens: &[usize], target: usize) -> Option<bool> {
        if self.closures >= self.budget.max_closures {
            return None;
        }
        self.closures += 1;
        Some(self.table.closure_size(gens, &mut self.seen, &mut self.queue) == target)
    }

    fn passes_certificate(&self, gens: &[usize]) -> bool {
        let refs: Vec<&ElementFacts> = gens.iter().map(|&i| &self.facts[i]).collect();
        self.lower_bound.check(&refs).0.iter().all(|o| o.satisfied_by.is_some())
    }

    /// Looks for a generating set of exactly `k` elements.
    fn search(&mut self, k: usize, use_certificate: bool) -> Step {
        let has_sigma_layer = !self.sigma_only.is_empty();
        let has_rest_layer = !self.rest.is_empty();
        let units = self.units.clone();
        let sigma_only = self.sigma_only.clone();
        let rest = self.rest.clone();
        for a in 1..=k.min(units.len()) {
            for ua in units.iter().copied().combinations(a) {
                match self.generates(&ua, self.order_s) {
                    None => return Step::OverBudget,
                    Some(false) => continue,
                    Some(true) => {}
                }
                let left = k - a;
                let b_range = if has_sigma_layer { 1..=left.min(sigma_only.len()) } else { 0..=0 };
                for b in b_range {
                    let c = left - b;
                    if (c == 0) == has_rest_layer || c > rest.len() {
                        continue;
                    }
                    for ub in sigma_only.iter().copied().combinations(b) {
                        let mut sigma_gens = ua.clone();
                        sigma_gens.extend(&ub);
                        match self.generates(&sigma_gens, self.order_sigma) {
                            None => return Step::OverBudget,
                            Some(false) => continue,
                            Some(true) => {}
                        }
                        for uc in rest.iter().copied().combinations(c) {
                            let mut gens = sigma_gens.clone();
                            gens.extend(&uc);
                            if use_certificate && !self.passes_certificate(&gens) {
                                self.skips += 1;
                                continue;
                            }
                            match self.generates(&gens, self.table.order) {
                                None => return Step::OverBudget,
                                Some(true) => return Step::Found(gens),
                                Some(false) => {}
                            }
                        }
                    }
                }
            }
        }
        Step::NotFound
    }
}

/// Orders `layer` so the first element seen of each double coset comes first.
fn representatives_first(partition: &Partition, elements: &[Transformation], layer: Vec<usize>) -> Vec<usize> {
    let mut classes = FxHashSet::default();
    let (mut reps, mut others) = (Vec::new(), Vec::new());
    for i in layer {
        let key = double_coset_key(partition, &elements[i]).expect("element of T");
        if classes.insert(key) {
            reps.push(i);
        } else {
            others.push(i);
        }
    }
    reps.extend(others);
    reps
}

/// The least `k` such that some `k` elements of `T(X,P)` generate it.
pub fn minimal_genset_search(partition: &Partition, budget: &SearchBudget) -> Result<SearchOutcome> {
    let order_t = partition.order_t();
    // table entries are u16
    if order_t > budget.max_order.min(u16::MAX as u64).into() {
        return Ok(SearchOutcome::Inconclusive {
            reason: format!("|T| = {order_t} exceeds the order limit {}", budget.max_order),
            lower_bound: 1,
            closures: 0,
        });
    }
    let gens = full_generating_set(partition)?;
    let enumerated = closure(&gens.elements, &ClosureOptions::default())?;
    let mut elements = enumerated.elements.ok_or_else(|| Error::SearchFailure("enumeration not retained".into()))?;
    elements.sort();
    let order = elements.len();
    let index: FxHashMap<&[usize], usize> = elements.iter().enumerate().map(|(i, t)| (t.images(), i)).collect();
    let mut mul = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            mul.push(index[a.then(b).images()] as u16);
        }
    }
    let table = Table { order, words: order.div_ceil(64), mul };

    let (mut units, mut sigma_only, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for (i, t) in elements.iter().enumerate() {
        match membership(partition, t) {
            Membership::InS => units.push(i),
            Membership::InSigma => sigma_only.push(i),
            _ => rest.push(i),
        }
    }
    let order_s = units.len();
    let order_sigma = units.len() + sigma_only.len();
    let sigma_only = representatives_first(partition, &elements, sigma_only);
    let rest = representatives_first(partition, &elements, rest);
    let facts =
        elements.iter().map(|t| LowerBound::facts(partition, t)).collect::<Result<Vec<ElementFacts>>>()?;
    let words = table.words;
    let mut searcher = Searcher {
        table,
        units,
        sigma_only,
        rest,
        order_s,
        order_sigma,
        facts,
        lower_bound: LowerBound::new(partition),
        budget,
        closures: 0,
        skips: 0,
        seen: vec![0; words],
        queue: Vec::with_capacity(order),
    };

    let inconclusive = |reason: &str, lower_bound: usize, closures: u64| SearchOutcome::Inconclusive {
        reason: reason.to_string(),
        lower_bound,
        closures,
    };
    let mut found = None;
    for k in 1..=order {
        match searcher.search(k, true) {
            Step::Found(w) => {
                found = Some((k, w));
                break;
            }
            Step::NotFound => {}
            Step::OverBudget => return Ok(inconclusive("closure budget exhausted", k, searcher.closures)),
        }
    }
    let Some((mut rank, mut witness)) = found else {
        return Err(Error::SearchFailure(format!("no subset of {partition} generates T(X,P)")));
    };
    while rank > 1 {
        match searcher.search(rank - 1, false) {
            Step::Found(w) => {
                rank -= 1;
                witness = w;
            }
            Step::NotFound => break,
            Step::OverBudget => {
                return Ok(inconclusive("closure budget exhausted during the exactness sweep", 1, searcher.closures))
            }
        }
    }
    Ok(SearchOutcome::Exact {
        rank,
        witness: witness.into_iter().map(|i| elements[i].clone()).collect(),
        closures: searcher.closures,
        certificate_skips: searcher.skips,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::rank_total;

    #[test]
    fn tiny_ranks() {
        for (spec, rank) in [("1", 1), ("2", 2), ("1+1", 2), ("2+1", 3), ("2+2", 4)] {
            let part = Partition::parse(spec).unwrap();
            let outcome = minimal_genset_search(&part, &SearchBudget::default()).unwrap();
            assert_eq!(outcome.rank(), Some(rank), "{spec}: {outcome:?}");
            assert_eq!(rank, rank_total(&part).total);
        }
    }

    #[test]
    fn witness_generates() {
        let part = Partition::parse("2+1").unwrap();
        let SearchOutcome::Exact { witness, .. } = minimal_genset_search(&part, &SearchBudget::default()).unwrap()
        else {
            panic!("expected an exact answer")
        };
        let result = closure(&witness, &ClosureOptions::order_only()).unwrap();
        assert_eq!(result.order, 15);
    }

    #[test]
    fn budget_limits_are_explicit() {
        let part = Partition::parse("3+1").unwrap();
        let tight = SearchBudget { max_order: 200, max_closures: 3 };
        assert!(matches!(minimal_genset_search(&part, &tight).unwrap(), SearchOutcome::Inconclusive { .. }));
        let small = SearchBudget { max_order: 50, max_closures: 1000 };
        assert!(matches!(minimal_genset_search(&part, &small).unwrap(), SearchOutcome::Inconclusive { .. }));
    }
}
