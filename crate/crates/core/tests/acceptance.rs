//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process exits non-zero
//! if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use partrank::certify::{certify_lower_bound, certify_minimality, parity_dimension, parity_vector};
use partrank::closure::{closure, minimal_genset_search, ClosureOptions, SearchBudget};
use partrank::generators::{companion_of, decompose_sigma, full_generating_set, is_companion, units_generators};
use partrank::invariant::{j_invariant, same_double_coset};
use partrank::rank::{rank_total, SpecialCase};
use partrank::tables::{REFERENCE_RANKS, REFERENCE_SIZES};
use partrank::{Membership, Partition, Transformation};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn p(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn within(outcome: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if outcome.ok && elapsed > limit {
        fail(format!("{} but took {elapsed:.2?} (limit {limit:?})", outcome.detail))
    } else {
        Outcome { ok: outcome.ok, detail: format!("{} [{elapsed:.2?}]", outcome.detail) }
    }
}

fn rank_table() -> Outcome {
    // published ranks for |S| >= 3 partitions plus the three small cases
    let mut cases: Vec<(&str, usize)> = REFERENCE_RANKS.to_vec();
    cases.extend([("2", 2), ("1+1", 2), ("2+1", 3)]);
    let bad: Vec<String> = cases
        .iter()
        .filter(|(s, r)| rank_total(&p(s)).total != *r)
        .map(|(s, r)| format!("{s}: got {} want {r}", rank_total(&p(s)).total))
        .collect();
    if bad.is_empty() {
        pass(format!("{} table entries and the small cases match", REFERENCE_RANKS.len()))
    } else {
        fail(bad.join("; "))
    }
}

fn generation() -> Outcome {
    let mut count = 0;
    for n in 3..=7 {
        for part in partitions(n) {
            let set = full_generating_set(&part).unwrap();
            let order = closure(&set.elements, &ClosureOptions::order_only()).unwrap().order;
            if BigUint::from(order) != part.order_t() {
                return fail(format!("{part}: closure {order}, |T| {}", part.order_t()));
            }
            count += 1;
        }
    }
    pass(format!("{count} partitions of 3..7 generate T(X,P)"))
}

fn size_audit() -> Outcome {
    let mut problems = Vec::new();
    let mut reported = Vec::new();
    for &(spec, printed) in REFERENCE_SIZES {
        let part = p(spec);
        let computed = part.order_t();
        if part.degree() <= 4 {
            let brute = brute_force_order_t(&part);
            if BigUint::from(brute) != computed {
                problems.push(format!("{spec}: formula {computed} vs brute force {brute}"));
            }
        }
        if BigUint::from(printed) != computed {
            let expected = match spec {
                "2+1" => Some(15u32),
                "3+1" => Some(112),
                _ => None,
            };
            match expected {
                Some(v) if computed == BigUint::from(v) => reported.push(format!("{spec}: listed {printed}, actual {v}")),
                _ => problems.push(format!("{spec}: listed {printed}, computed {computed}")),
            }
        }
    }
    for n in 1..=4 {
        for part in partitions(n) {
            if BigUint::from(brute_force_order_t(&part)) != part.order_t() {
                problems.push(format!("{part}: brute force disagrees"));
            }
        }
    }
    if problems.is_empty() && reported.len() == 2 {
        pass(format!("all other sizes match; discrepancies: {}", reported.join(", ")))
    } else {
        fail(format!("{problems:?} {reported:?}"))
    }
}

fn search() -> Outcome {
    let mut found = Vec::new();
    for spec in ["2", "1+1", "2+1", "2+2", "3+1", "2+1+1"] {
        let part = p(spec);
        let outcome = minimal_genset_search(&part, &SearchBudget::default()).unwrap();
        let want = rank_total(&part).total;
        match outcome.rank() {
            Some(r) if r == want => found.push(format!("{spec}={r}")),
            _ => return fail(format!("{spec}: {outcome:?}, formula {want}")),
        }
    }
    pass(found.join(" "))
}

fn minimality() -> Outcome {
    let mut count = 0;
    for n in 3..=9 {
        for part in partitions(n) {
            if order_s(&part) < 3 {
                continue;
            }
            let cert = certify_minimality(&part).unwrap();
            let total = rank_total(&part).total;
            let set = full_generating_set(&part).unwrap();
            if !cert.passed() || cert.obligations.len() != total || set.len() != total {
                return fail(format!("{part}: {:?}", cert.problems));
            }
            count += 1;
        }
    }
    pass(format!("{count} partitions certified, obligations = |set| = rank"))
}

fn cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut trials, mut generating, mut failing) = (0, 0, 0);
    let mut counterexamples = Vec::new();
    for n in 1..=4 {
        for part in partitions(n) {
            let elements = all_of_t(&part);
            if elements.len() > 200 {
                continue;
            }
            let rank = rank_total(&part).total;
            let order_t = elements.len() as u64;
            let factory = full_generating_set(&part).unwrap().elements;
            for trial in 0..300 {
                // mix uniform subsets with perturbations of the factory set
                let u: Vec<Transformation> = if trial % 3 == 0 {
                    let mut v = factory.clone();
                    let drop = rng.random_range(0..v.len());
                    v.remove(drop);
                    let extra = rng.random_range(0..3);
                    v.extend(elements.choose_multiple(&mut rng, extra).cloned());
                    v
                } else {
                    let k = rng.random_range(1..=(rank + 4).min(elements.len()));
                    elements.choose_multiple(&mut rng, k).cloned().collect()
                };
                if u.is_empty() {
                    continue;
                }
                let cert = certify_lower_bound(&part, &u).unwrap();
                let gen = closure(&u, &ClosureOptions::order_only()).unwrap().order == order_t;
                trials += 1;
                generating += gen as usize;
                failing += !cert.passed() as usize;
                if gen && !cert.passed() {
                    counterexamples.push(format!("{part}: {u:?} misses {:?}", cert.problems));
                }
            }
        }
    }
    if counterexamples.is_empty() {
        pass(format!("{trials} trials, {failing} failed certification (none generate), {generating} generate"))
    } else {
        fail(format!("{} counterexamples, first {}", counterexamples.len(), counterexamples[0]))
    }
}

fn double_cosets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0u64;
    for n in 1..=4 {
        for part in partitions(n) {
            let elements = all_of_t(&part);
            if elements.len() > 200 {
                continue;
            }
            let units = all_units(&part);
            let labels = double_coset_labels(&elements, &units);
            let m = elements.len();
            let sample: Vec<(usize, usize)> = if m * m <= 10_000 {
                (0..m).cartesian_product(0..m).collect()
            } else {
                (0..10_000).map(|_| (rng.random_range(0..m), rng.random_range(0..m))).collect()
            };
            for (i, j) in sample {
                let claimed = same_double_coset(&part, &elements[i], &elements[j]).unwrap();
                if claimed != (labels[i] == labels[j]) {
                    return fail(format!("{part}: {} vs {}", elements[i], elements[j]));
                }
                pairs += 1;
            }
        }
    }
    let part = p("4+4");
    let f = Transformation::new(vec![1, 1, 3, 3, 4, 5, 6, 7]).unwrap();
    let g = Transformation::new(vec![1, 1, 2, 3, 5, 5, 6, 7]).unwrap();
    let jf = j_invariant(&part, &f).unwrap();
    let worked = jf.get(4, 4) == Some(&[vec![1, 1, 1, 1], vec![2, 2]][..])
        && !same_double_coset(&part, &f, &g).unwrap();
    if worked {
        pass(format!("{pairs} pairs agree; 4+4 examples reproduce"))
    } else {
        fail(format!("4+4 example: J(4,4) = {:?}", jf.get(4, 4)))
    }
}

fn group_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut closures, mut homs, mut spans) = (0, 0, 0);
    for n in 1..=9 {
        for part in partitions(n) {
            if SpecialCase::of(&part).is_some() {
                continue;
            }
            let os = order_s(&part);
            if os <= 1_000_000 {
                let gens = units_generators(&part).unwrap();
                let result = closure(&gens, &ClosureOptions::default()).unwrap();
                if result.order != os {
                    return fail(format!("{part}: units close to {} not {os}", result.order));
                }
                closures += 1;
                if os <= 10_000 {
                    let elements = result.elements.unwrap();
                    let rank = gf2_rank(elements.iter().map(|u| parity_vector(&part, u).unwrap().bits));
                    if rank != parity_dimension_oracle(&part) || rank != parity_dimension(&part) {
                        return fail(format!("{part}: parity image rank {rank}"));
                    }
                    spans += 1;
                }
            }
            for _ in 0..1000 {
                let (f, g) = (random_unit(&part, &mut rng), random_unit(&part, &mut rng));
                let lhs = parity_vector(&part, &f.then(&g)).unwrap();
                let rhs = parity_vector(&part, &f).unwrap().xor(&parity_vector(&part, &g).unwrap());
                if lhs != rhs {
                    return fail(format!("{part}: parity of {f} * {g}"));
                }
            }
            homs += 1;
        }
    }
    pass(format!("{closures} unit closures, {homs} homomorphism runs, {spans} exhaustive spans"))
}

fn companions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut perms, mut decomps) = (0, 0);
    for n in 1..=10 {
        for part in partitions(n).into_iter().filter(|q| q.num_blocks() <= 4) {
            for tau in (0..part.num_blocks()).permutations(part.num_blocks()) {
                let g = companion_of(&part, &tau).unwrap();
                if !is_companion(&part, &tau, &g) {
                    return fail(format!("{part}: companion of {tau:?}"));
                }
                perms += 1;
            }
        }
    }
    for n in 1..=7 {
        for part in partitions(n) {
            let bl = blocks(&part);
            for _ in 0..1000 {
                let f = random_sigma(&part, &mut rng);
                let d = decompose_sigma(&part, &f).unwrap();
                let (e, h, g) = (&d.idempotent, &d.unit, &d.companion);
                let ok = e.then(h).then(g) == f
                    && e.then(e) == *e
                    && e.same_kernel(&f)
                    && bl.iter().all(|b| b.iter().all(|&x| b.contains(&e.apply(x)) && b.contains(&h.apply(x))))
                    && is_unit(&part, h)
                    && is_companion(&part, &block_map(&part, &f), g)
                    && partrank::transformation::membership(&part, g) >= Membership::InSigma;
                if !ok {
                    return fail(format!("{part}: decomposition of {f}"));
                }
                decomps += 1;
            }
        }
    }
    pass(format!("{perms} block permutations, {decomps} decompositions"))
}

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 rank table reproduction", rank_table, 1),
        ("2 generation verification", generation, 60),
        ("3 size audit", size_audit, 5),
        ("4 independent rank oracle", search, 600),
        ("5 minimality certificates", minimality, 10),
        ("6 necessity cross-check", cross_check, 600),
        ("7 double-coset oracle", double_cosets, 600),
        ("8 group-theory properties", group_properties, 600),
        ("9 companions and decompositions", companions, 600),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let outcome = within(outcome, start.elapsed(), Duration::from_secs(limit));
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {name}: {}", outcome.detail);
        failures += !outcome.ok as usize;
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
