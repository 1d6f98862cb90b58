//! Lower-bound certificates for generating sets of `T(X,P)`.
//!
//! Every generating set must contain an element of each class `A(a,b)` that
//! is non-empty, of each `B(i)`, and of each qualifying `C(i)`. Its units
//! must generate `S(X,P)`, so their sign vectors have to span the parity
//! quotient `(C_2)^(2k+u)`, and when that quotient has dimension below 2
//! while `S(X,P)` is not cyclic a further unit is needed. Each obligation is
//! discharged by its own element, so a set passing with exactly as many
//! elements as obligations has minimum size.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::classify::{classify, ClassLabel};
use crate::error::{Error, Result};
use crate::generators::{full_generating_set, unit_factors, UnitFactors};
use crate::partition::Partition;
use crate::perm_group::group_order;
use crate::rank::{rank_total, SpecialCase};
use crate::transformation::{induced_block_map, lcm, Transformation};

/// Sign bits of a unit: for each repeated size (ascending) the product of
/// the inner signs and the sign of the block permutation, then one bit per
/// unique size at least 2 (ascending), then one bit for the singletons when
/// there are at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParityVector {
    pub bits: Vec<u8>,
}

impl ParityVector {
    pub fn xor(&self, other: &ParityVector) -> ParityVector {
        ParityVector { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() }
    }

    fn as_mask(&self) -> u64 {
        self.bits.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i)
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.bits.iter().map(u8::to_string).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// Parity of a permutation given by images.
fn sign(perm: &[usize]) -> u8 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0usize;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        transpositions += len.saturating_sub(1);
    }
    (transpositions % 2) as u8
}

/// Dimension `2k + u` of the parity quotient.
pub fn parity_dimension(partition: &Partition) -> usize {
    let UnitFactors { wreaths, lone } = unit_factors(partition);
    2 * wreaths.len() + lone.len()
}

pub fn parity_vector(partition: &Partition, f: &Transformation) -> Result<ParityVector> {
    if f.degree() != partition.degree() {
        return Err(Error::DegreeMismatch { left: partition.degree(), right: f.degree() });
    }
    let bar = induced_block_map(partition, f).0.ok_or(Error::NotUnit)?;
    if !f.is_permutation() {
        return Err(Error::NotUnit);
    }
    let UnitFactors { wreaths, lone } = unit_factors(partition);
    let mut bits = Vec::with_capacity(2 * wreaths.len() + lone.len());
    for &(size, first, count) in &wreaths {
        let mut inner = 0;
        for (b, &to) in bar.iter().enumerate().skip(first).take(count) {
            let target = partition.offset(to);
            let local: Vec<usize> = partition.block_range(b).map(|x| f.apply(x) - target).collect();
            inner ^= sign(&local);
        }
        let outer: Vec<usize> = (first..first + count).map(|b| bar[b] - first).collect();
        debug_assert!(outer.iter().all(|&j| j < count) && size >= 2);
        bits.push(inner);
        bits.push(sign(&outer));
    }
    for factor in &lone {
        let local: Vec<usize> = factor
            .points
            .iter()
            .map(|&x| factor.points.iter().position(|&y| y == f.apply(x)).expect("factor is invariant"))
            .collect();
        bits.push(sign(&local));
    }
    Ok(ParityVector { bits })
}

/// One necessary condition on a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obligation {
    /// Some element merges a block of size `a` with one of size `b`.
    A { a: usize, b: usize },
    B { i: usize },
    C { i: usize },
    /// The `index`-th independent direction of the parity quotient (0-based).
    Parity { index: usize },
    /// A second unit, needed because `S(X,P)` is not cyclic.
    NonCyclic,
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obligation::A { a, b } => write!(f, "A({a},{b})"),
            Obligation::B { i } => write!(f, "B({i})"),
            Obligation::C { i } => write!(f, "C({i})"),
            Obligation::Parity { index } => write!(f, "parity[{index}]"),
            Obligation::NonCyclic => f.write_str("non-cyclic units"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObligationStatus {
    pub obligation: Obligation,
    /// Index into the checked set, or `None` when missing.
    pub satisfied_by: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub partition: Partition,
    pub verdict: Verdict,
    pub obligations: Vec<ObligationStatus>,
    pub parity_dimension: usize,
    pub parity_rank: usize,
    pub set_size: usize,
    /// Human-readable reasons for a failing verdict.
    pub problems: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn missing(&self) -> impl Iterator<Item = &Obligation> {
        self.obligations.iter().filter(|o| o.satisfied_by.is_none()).map(|o| &o.obligation)
    }

    /// One line per obligation: requirement and witness index or `MISSING`.
    pub fn table(&self) -> Vec<String> {
        self.obligations
            .iter()
            .map(|o| match o.satisfied_by {
                Some(i) => format!("{:<18} element {i}", o.obligation.to_string()),
                None => format!("{:<18} MISSING", o.obligation.to_string()),
            })
            .collect()
    }
}

/// Obligations of a partition, fixed once so that many candidate sets can
/// be checked cheaply.
#[derive(Clone, Debug)]
pub(crate) struct LowerBound {
    structural: Vec<Obligation>,
    dimension: usize,
    needs_non_cyclic: bool,
}

/// What the checker needs to know about one element.
#[derive(Clone, Debug)]
pub(crate) struct ElementFacts {
    pub label: ClassLabel,
    /// Parity bits as a mask, for units.
    pub parity: Option<u64>,
    pub images: Vec<usize>,
}

impl LowerBound {
    pub(crate) fn new(partition: &Partition) -> Self {
        let classes = partition.size_classes();
        let mut structural = Vec::new();
        for (ia, &(a, count)) in classes.iter().enumerate() {
            for &(b, _) in &classes[ia..] {
                if a < b || count >= 2 {
                    structural.push(Obligation::A { a, b });
                }
            }
        }
        let distinct: Vec<usize> = classes.iter().map(|c| c.0).collect();
        for i in 1..distinct.len() {
            structural.push(Obligation::B { i });
        }
        for (idx, &size) in distinct.iter().enumerate() {
            let qualifies = if idx == 0 { size != 1 } else { size - distinct[idx - 1] >= 2 };
            if qualifies {
                structural.push(Obligation::C { i: idx + 1 });
            }
        }
        let dimension = parity_dimension(partition);
        let needs_non_cyclic = dimension < 2 && partition.order_s() >= BigUint::from(3u32);
        LowerBound { structural, dimension, needs_non_cyclic }
    }

    pub(crate) fn facts(partition: &Partition, f: &Transformation) -> Result<ElementFacts> {
        let label = classify(partition, f)?;
        let parity = if label.is_unit() { Some(parity_vector(partition, f)?.as_mask()) } else { None };
        Ok(ElementFacts { label, parity, images: f.images().to_vec() })
    }

    fn discharges(obligation: &Obligation, label: &ClassLabel) -> bool {
        match (obligation, label) {
            (Obligation::A { a, b }, ClassLabel::A { a: x, b: y, .. }) => a == x && b == y,
            (Obligation::B { i }, ClassLabel::B { i: j, .. }) => i == j,
            (Obligation::C { i }, ClassLabel::C { i: j, .. }) => i == j,
            _ => false,
        }
    }

    /// Evaluates the obligations against `set`.
    pub(crate) fn check(&self, set: &[&ElementFacts]) -> (Vec<ObligationStatus>, usize) {
        let mut out: Vec<ObligationStatus> = self
            .structural
            .iter()
            .map(|ob| ObligationStatus {
                obligation: ob.clone(),
                satisfied_by: set.iter().position(|e| Self::discharges(ob, &e.label)),
            })
            .collect();

        // Gaussian elimination over GF(2); each unit raising the rank
        // becomes the witness of the next parity direction.
        let mut basis: Vec<u64> = Vec::new();
        let mut pivots = Vec::new();
        for (idx, e) in set.iter().enumerate() {
            let Some(mut v) = e.parity else { continue };
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
                pivots.push(idx);
            }
        }
        let rank = pivots.len();
        for index in 0..self.dimension {
            out.push(ObligationStatus { obligation: Obligation::Parity { index }, satisfied_by: pivots.get(index).copied() });
        }
        if self.needs_non_cyclic {
            let units: Vec<usize> = (0..set.len()).filter(|&i| set[i].parity.is_some()).collect();
            let witness = if units_non_cyclic(&units.iter().map(|&i| set[i].images.clone()).collect::<Vec<_>>()) {
                units.iter().copied().find(|i| !pivots.contains(i))
            } else {
                None
            };
            out.push(ObligationStatus { obligation: Obligation::NonCyclic, satisfied_by: witness });
        }
        (out, rank)
    }
}

/// Whether the permutations generate a non-cyclic group.
fn units_non_cyclic(perms: &[Vec<usize>]) -> bool {
    let Some(first) = perms.first() else { return false };
    let degree = first.len();
    let mul = |a: &[usize], b: &[usize]| a.iter().map(|&x| b[x]).collect::<Vec<_>>();
    for (i, a) in perms.iter().enumerate() {
        for b in &perms[i + 1..] {
            if mul(a, b) != mul(b, a) {
                return true;
            }
        }
    }
    // Abelian: cyclic exactly when the exponent equals the order.
    let exponent = perms.iter().fold(1u64, |acc, p| {
        let order = Transformation::from_vec_unchecked(p.clone()).permutation_order().expect("unit");
        lcm(acc, order)
    });
    group_order(perms, degree) != BigUint::from(exponent)
}

/// Checks every necessary condition on `set`. Elements outside `T(X,P)`
/// are reported as an error with their index.
pub fn certify_lower_bound(partition: &Partition, set: &[Transformation]) -> Result<Certificate> {
    let lb = LowerBound::new(partition);
    let facts: Vec<ElementFacts> = set
        .iter()
        .enumerate()
        .map(|(index, f)| {
            if f.degree() != partition.degree() {
                return Err(Error::DegreeMismatch { left: partition.degree(), right: f.degree() });
            }
            LowerBound::facts(partition, f).map_err(|_| Error::NotInT { index })
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&ElementFacts> = facts.iter().collect();
    let (obligations, parity_rank) = lb.check(&refs);
    let problems: Vec<String> =
        obligations.iter().filter(|o| o.satisfied_by.is_none()).map(|o| format!("{} missing", o.obligation)).collect();
    Ok(Certificate {
        partition: partition.clone(),
        verdict: if problems.is_empty() { Verdict::Pass } else { Verdict::Fail },
        obligations,
        parity_dimension: lb.dimension,
        parity_rank,
        set_size: set.len(),
        problems,
    })
}

/// Certifies that the factory generating set has minimum size: it meets
/// every obligation, its size equals the closed-form rank, and no element
/// discharges two obligations.
pub fn certify_minimality(partition: &Partition) -> Result<Certificate> {
    if SpecialCase::of(partition).is_some() {
        return Err(Error::SpecialCase { partition: partition.to_string() });
    }
    let set = full_generating_set(partition)?;
    let mut cert = certify_lower_bound(partition, &set.elements)?;
    let total = rank_total(partition).total;
    if set.len() != total {
        cert.problems.push(format!("set has {} elements, rank formula gives {total}", set.len()));
    }
    if cert.obligations.len() != set.len() {
        cert.problems.push(format!("{} obligations for {} elements", cert.obligations.len(), set.len()));
    }
    let mut used = vec![false; set.len()];
    for o in &cert.obligations {
        if let Some(i) = o.satisfied_by {
            if std::mem::replace(&mut used[i], true) {
                cert.problems.push(format!("element {i} discharges more than one obligation"));
            }
        }
    }
    if !cert.problems.is_empty() {
        cert.verdict = Verdict::Fail;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parity_examples() {
        let part = p("2+2");
        assert_eq!(parity_vector(&part, &Transformation::identity(4)).unwrap().bits, vec![0, 0]);
        assert_eq!(parity_vector(&part, &t(&[2, 3, 0, 1])).unwrap().bits, vec![0, 1]);
        assert_eq!(parity_vector(&part, &t(&[1, 0, 2, 3])).unwrap().bits, vec![1, 0]);
        assert!(matches!(parity_vector(&part, &t(&[0, 0, 2, 3])), Err(Error::NotUnit)));
    }

    #[test]
    fn parity_bit_order() {
        // 3+2+2+1+1: (inner, outer) for the 2s, then the 3-block, then the singletons
        let part = p("3+2+2+1+1");
        assert_eq!(parity_dimension(&part), 4);
        let swap_singletons = t(&[1, 0, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(parity_vector(&part, &swap_singletons).unwrap().bits, vec![0, 0, 0, 1]);
        let twist_three = t(&[0, 1, 2, 3, 4, 5, 7, 6, 8]);
        assert_eq!(parity_vector(&part, &twist_three).unwrap().bits, vec![0, 0, 1, 0]);
    }

    #[test]
    fn factory_sets_pass() {
        let cert = certify_lower_bound(&p("3+2+1"), &full_generating_set(&p("3+2+1")).unwrap().elements).unwrap();
        assert!(cert.passed(), "{:?}", cert.problems);
        assert_eq!(cert.obligations.len(), 7);
    }

    #[test]
    fn missing_b_is_reported() {
        let part = p("2+2+1");
        let set = full_generating_set(&part).unwrap();
        let kept: Vec<Transformation> = set
            .iter()
            .filter(|(_, prov)| !matches!(prov.label, ClassLabel::B { .. }))
            .map(|(t, _)| t.clone())
            .collect();
        let cert = certify_lower_bound(&part, &kept).unwrap();
        assert!(!cert.passed());
        assert_eq!(cert.missing().collect::<Vec<_>>(), vec![&Obligation::B { i: 1 }]);
    }

    #[test]
    fn parity_shortfall_fails() {
        let part = p("2+2");
        let set: Vec<Transformation> =
            full_generating_set(&part).unwrap().elements.into_iter().filter(|f| !f.is_permutation()).collect();
        let mut with_one = set.clone();
        with_one.push(t(&[2, 3, 0, 1]));
        let cert = certify_lower_bound(&part, &with_one).unwrap();
        assert_eq!(cert.parity_rank, 1);
        assert_eq!(cert.missing().collect::<Vec<_>>(), vec![&Obligation::Parity { index: 1 }]);
    }

    #[test]
    fn non_cyclic_obligation() {
        let part = p("3");
        let cyclic = vec![t(&[1, 0, 2]), t(&[0, 0, 1])];
        let cert = certify_lower_bound(&part, &cyclic).unwrap();
        assert_eq!(cert.missing().collect::<Vec<_>>(), vec![&Obligation::NonCyclic]);
        let cert = certify_minimality(&part).unwrap();
        assert!(cert.passed(), "{:?}", cert.problems);
    }

    #[test]
    fn minimality_examples() {
        for (spec, count) in [("3+2+1", 7), ("2+2+1+1", 7), ("6+1", 5)] {
            let cert = certify_minimality(&p(spec)).unwrap();
            assert!(cert.passed(), "{spec}: {:?}", cert.problems);
            assert_eq!(cert.obligations.len(), count, "{spec}");
        }
        assert!(certify_minimality(&p("2+1")).is_err());
    }

    #[test]
    fn minimality_small_partitions() {
        for n in 1..=9 {
            for part in Partition::all_of(n).into_iter().filter(|q| SpecialCase::of(q).is_none()) {
                let cert = certify_minimality(&part).unwrap();
                assert!(cert.passed(), "{part}: {:?}", cert.problems);
            }
        }
    }
}
