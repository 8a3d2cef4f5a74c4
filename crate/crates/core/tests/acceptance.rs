//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every tolerance and time budget is pinned below.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sldd_core::codes::{catalog, concatenate, count_parameters, lookup, CodeSpec};
use sldd_core::ddgs::{
    brute_force_minimal_ddgs, concatenated_sldd, cost, decouples, decoupling_set_of_size, error_basis,
    full_pauli_ddgs, plan_domains, sldd, CostModel, DdgsResult, Family,
};
use sldd_core::pauli::{centralizer, extract_generators, BitVec, GeneratorSet, PauliOperator};
use sldd_core::sequences::{cdd_sequence, first_order_filter_check, first_order_residual, nudd_sequence, PulseSequence};
use sldd_core::verifier::{decoupling_order_fit, log_grid, random_noise, FitOptions};

type Outcome = Result<String, String>;
/// Name, time budget in seconds, and the check itself.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Symplectic vector `v` (bit `i < n` is `x_i`, bit `n + i` is `z_i`) as a Pauli.
fn pauli_from_u64(v: u64, n: usize) -> PauliOperator {
    let bits: Vec<bool> = (0..2 * n).map(|i| v >> i & 1 == 1).collect();
    PauliOperator::from_symplectic(&BitVec::from_bools(&bits))
}

fn basis_of(vectors: &[u64], n: usize) -> GeneratorSet {
    let ops: Vec<PauliOperator> = vectors.iter().map(|&v| pauli_from_u64(v, n)).collect();
    extract_generators(n, &ops).unwrap()
}

// 1. Cardinality identities.
fn cardinalities() -> Outcome {
    let expected = [("steane", 8), ("bacon_shor(3)", 6), ("four_two_two", 6)];
    for (name, size) in expected {
        let got = sldd(&lookup(name).unwrap()).unwrap().size();
        ensure(got == size, || format!("|SLDD({name})| = {got}, expected {size}"))?;
    }
    for n in 1..=9 {
        let got = full_pauli_ddgs(n).unwrap().size();
        ensure(got == 2 * n, || format!("|full_pauli({n})| = {got}"))?;
    }
    let mut checked = 0;
    for (name, max_levels) in [("steane", 2u32), ("repetition(3)", 3)] {
        let code = lookup(name).unwrap();
        let (n, k, r) = (code.n as u64, code.k as u64, code.r as u64);
        for levels in 1..=max_levels {
            let formula = big(n).pow(levels) - big(k + r).pow(levels) + big(k).pow(levels) * 2u32;
            let counted = count_parameters(n, k, r, levels).unwrap().omega_size;
            let built = concatenated_sldd(&concatenate(&code, levels as usize).unwrap()).unwrap();
            let structural = big(built.size() as u64);
            ensure(counted == formula && structural == formula, || {
                format!("{name} R={levels}: formula {formula}, counted {counted}, built {structural}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("3 catalog sizes, full_pauli n<=9, {checked} concatenation levels"))
}

// 2. Cost relations.
fn cost_relations() -> Outcome {
    let mut checked = 0;
    for m in 2..=4u64 {
        let omega = sldd(&catalog("bacon_shor", Some(m as usize)).unwrap()).unwrap().size() as u64;
        ensure(omega == 2 * m, || format!("bacon_shor({m}) SLDD size {omega}"))?;
        for family in [Family::Cdd, Family::Nudd] {
            for order in 1..=3 {
                let model = CostModel::new(family, order).unwrap();
                let lhs = cost(omega, &model).pow(m as u32);
                let rhs = cost(2 * m * m, &model);
                ensure(lhs == rhs, || format!("m={m} {family} N={order}: {lhs} != {rhs}"))?;
                // Independent count: f(N)^{2m²}.
                let f = match family {
                    Family::Cdd => big(2).pow(order),
                    Family::Nudd => big(order as u64 + 1),
                };
                ensure(rhs == f.pow((2 * m * m) as u32), || format!("m={m} {family} N={order}: wrong f"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (m, family, N) triples"))
}

/// Every subgroup of `P_n / phases` as a basis, deduplicated by span.
fn all_subgroups(n: usize) -> Vec<Vec<u64>> {
    let nonzero: Vec<u64> = (1..1u64 << (2 * n)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for subset in 0u64..1 << nonzero.len() {
        let mut span = vec![0u64];
        let mut basis = Vec::new();
        for (i, &v) in nonzero.iter().enumerate() {
            if subset >> i & 1 == 1 && !span.contains(&v) {
                let shifted: Vec<u64> = span.iter().map(|s| s ^ v).collect();
                span.extend(shifted);
                basis.push(v);
            }
        }
        let mask = span.iter().fold(0u128, |m, &s| m | 1 << s);
        if seen.insert(mask) {
            out.push(basis);
        }
    }
    out
}

// 3. Minimal decoupling set size equals rank of the error basis.
fn minimal_size() -> Outcome {
    let mut tested = 0;
    for n in 1..=2 {
        let subgroups = all_subgroups(n);
        // Counts of subspaces of GF(2)^2 and GF(2)^4.
        let expected = if n == 1 { 5 } else { 67 };
        ensure(subgroups.len() == expected, || format!("n={n}: {} subgroups", subgroups.len()))?;
        for basis in subgroups {
            let b = basis_of(&basis, n);
            let found = brute_force_minimal_ddgs(&b, n, 2 * n).unwrap();
            ensure(found.minimal_size == Some(b.len()), || {
                format!("n={n} basis {:?}: minimal {:?}, rank {}", b.generators(), found.minimal_size, b.len())
            })?;
            tested += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..18 {
        let rank = 1 + i % 6;
        let mut vectors = Vec::new();
        while basis_of(&vectors, 3).len() < rank {
            vectors.push(rng.random_range(1..64u64));
        }
        let b = basis_of(&vectors, 3);
        let found = brute_force_minimal_ddgs(&b, 3, 6).unwrap();
        ensure(found.minimal_size == Some(rank), || {
            format!("n=3 basis {:?}: minimal {:?}", b.generators(), found.minimal_size)
        })?;
        tested += 1;
    }
    let p2 = full_pauli_ddgs(2).unwrap().omega;
    ensure(decoupling_set_of_size(&p2, 2, 3).unwrap().is_none(), || "a size-3 set decouples P_2".into())?;
    ensure(decouples(&full_pauli_ddgs(2).unwrap(), &p2).unwrap(), || "P_2 does not decouple itself".into())?;
    Ok(format!("{tested} error subgroups (n<=2 exhaustive, 18 sampled at n=3)"))
}

// 4. Centralizer against exhaustive enumeration.
fn centralizer_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=4usize {
        let all: Vec<PauliOperator> = PauliOperator::enumerate_all(n).collect();
        for _ in 0..50 {
            let count = rng.random_range(1..=2 * n);
            let ops: Vec<PauliOperator> = (0..count)
                .map(|_| pauli_from_u64(rng.random_range(0..1u64 << (2 * n)), n))
                .collect();
            let omega = extract_generators(n, &ops).unwrap();
            let c = centralizer(&omega);
            let mut commuting = 0u64;
            for p in &all {
                let inside = omega.iter().all(|g| sldd_core::pauli::commutes(g, p).unwrap());
                commuting += inside as u64;
                ensure(inside == c.span_contains(p), || format!("n={n} {:?}: disagreement at {p}", omega.generators()))?;
            }
            ensure(commuting == 1 << c.len(), || format!("n={n}: {commuting} commuting vs 2^{}", c.len()))?;
        }
    }
    let codes: Vec<CodeSpec> = ["repetition(3)", "repetition(5)", "five_qubit", "steane", "four_two_two", "bacon_shor(2)", "bacon_shor(3)"]
        .iter()
        .map(|r| lookup(r).unwrap())
        .collect();
    for code in &codes {
        let c = centralizer(&sldd(code).unwrap().omega);
        ensure(c.same_span(&code.stabilizer_gauge_set().unwrap()), || {
            format!("{}: centralizer of SLDD is not <S, G>", code.name)
        })?;
    }
    Ok(format!("200 random sets over n<=4, {} catalog codes", codes.len()))
}

fn scaling_model(seed: u64) -> sldd_core::verifier::NoiseModel {
    random_noise(1, 1, 1, 1.0, seed).unwrap()
}

// 5. Decoupling-order scaling on 1 system + 1 bath qubit.
fn scaling() -> Outcome {
    let grid = log_grid(1e-3, 1e-1, 6);
    let xz = full_pauli_ddgs(1).unwrap();
    let runs: [(&str, PulseSequence, (f64, f64)); 3] = [
        ("CDD1", cdd_sequence(&xz, 1).unwrap(), (1.7, 2.6)),
        ("NUDD2", nudd_sequence(&xz, 2).unwrap(), (2.6, 3.6)),
        ("baseline", PulseSequence::identity(1), (0.7, 1.3)),
    ];
    let mut summary = Vec::new();
    for (name, seq, (lo, hi)) in &runs {
        let mut slopes = Vec::new();
        for seed in [11u64, 12, 13] {
            let opts = FitOptions {
                target_order: Some(seq.order().max(1)),
                ..Default::default()
            };
            let r = decoupling_order_fit(seq, &scaling_model(seed), &xz, &grid, &opts).map_err(|e| e.to_string())?;
            let s = r.fitted_slope;
            ensure((*lo..=*hi).contains(&s), || format!("{name} seed {seed}: slope {s:.3} outside [{lo}, {hi}]"))?;
            let base = r.baseline_slope.unwrap_or(f64::NAN);
            ensure((0.7..=1.3).contains(&base), || format!("{name} seed {seed}: baseline slope {base:.3}"))?;
            slopes.push(format!("{s:.2}"));
        }
        summary.push(format!("{name} [{}]", slopes.join(", ")));
    }
    Ok(summary.join("; "))
}

// 6. Syndrome preservation for repetition(3).
fn syndrome_preservation() -> Outcome {
    let code = lookup("repetition(3)").unwrap();
    let omega = sldd(&code).unwrap();
    let seq = cdd_sequence(&omega, 1).unwrap();
    let full = cdd_sequence(&full_pauli_ddgs(3).unwrap(), 1).unwrap();
    ensure(seq.len() == 16 && full.len() == 64, || {
        format!("interval counts {} (SLDD) vs {} (full Pauli)", seq.len(), full.len())
    })?;
    let model = random_noise(3, 1, 2, 1.0, 21).unwrap();
    let opts = FitOptions {
        code: Some(code),
        ..Default::default()
    };
    let grid = log_grid(1e-3, 1e-1, 6);
    let r = decoupling_order_fit(&seq, &model, &omega, &grid, &opts).map_err(|e| e.to_string())?;
    let leak = r.syndrome.as_ref().ok_or("no leakage series")?;
    let slope = leak.leakage_slope.ok_or("leakage fit failed")?;
    ensure(slope >= 1.7, || format!("leakage slope {slope:.3} < 1.7"))?;
    let worst = leak.h0_leakage.iter().cloned().fold(0.0, f64::max);
    ensure(worst <= 1e-10, || format!("H_0 leakage {worst:e} > 1e-10"))?;
    Ok(format!(
        "leakage slope {slope:.2}, max H_0 leakage {worst:.1e}, intervals 16 (SLDD, 4 generators) vs 64 (full Pauli, 6)"
    ))
}

// 7. First-order filter for every synthesized sequence.
fn first_order_filter() -> Outcome {
    let mut omegas: Vec<DdgsResult> = (1..=3).map(|n| full_pauli_ddgs(n).unwrap()).collect();
    for name in ["repetition(3)", "five_qubit", "four_two_two", "bacon_shor(2)"] {
        let o = sldd(&lookup(name).unwrap()).unwrap();
        assert!(o.size() <= 6);
        omegas.push(o);
    }
    let mut checked = 0;
    for omega in &omegas {
        let errors = error_basis(omega);
        for order in 1..=3 {
            for seq in [cdd_sequence(omega, order).unwrap(), nudd_sequence(omega, order).unwrap()] {
                let label = format!("{:?} N={order} over {}", seq.family(), omega.source.join("+"));
                ensure(first_order_filter_check(&seq, omega).unwrap(), || format!("{label}: filter check fails"))?;
                for e in errors.iter() {
                    let res = first_order_residual(&seq, e);
                    ensure(res.abs() <= 1e-12, || format!("{label}: residual {res:e} for {e}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} sequences over {} generator sets", omegas.len()))
}

fn plan(k: u64, base: (u64, u64, u64), family: Family, order: u32, p: u32) -> sldd_core::ddgs::DomainPlan {
    plan_domains(k, base, CostModel::new(family, order).unwrap(), p).unwrap()
}

// 8. Domain planner.
fn planner() -> Outcome {
    let bases = [(7u64, 1u64, 0u64), (5, 1, 0), (3, 1, 0), (4, 2, 0), (9, 1, 4)];
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..Config::default()
    });
    let strategy = (1u64..=1_000_000, 0usize..bases.len(), 1u32..=4, 1u32..=3, any::<bool>(), 1u64..=1000);
    runner
        .run(&strategy, |(k, b, p, order, cdd, step)| {
            let family = if cdd { Family::Cdd } else { Family::Nudd };
            let here = plan(k, bases[b], family, order, p);
            let there = plan(k + step, bases[b], family, order, p);
            prop_assert!(there.generator_budget >= here.generator_budget);
            prop_assert!(there.levels >= here.levels);
            // W is pinned by f^W ≤ k^p < f^(W+1) in exact integers.
            let f = big(here.model.f_of_n);
            let budget = big(k).pow(p);
            let w = here.generator_budget as u32;
            prop_assert!(f.pow(w) <= budget && budget < f.pow(w + 1));
            if family == Family::Cdd && order == 1 {
                let doubled = plan(2 * k, bases[b], family, order, p);
                prop_assert_eq!(doubled.generator_budget, here.generator_budget + p as u64);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    // Exact boundaries: k = 2^j with f = 2 gives k^p = f^{pj} on the nose.
    for j in 1..=40u32 {
        for p in 1..=4 {
            let at = plan(1 << j, (7, 1, 0), Family::Cdd, 1, p);
            ensure(at.generator_budget == (p * j) as u64, || format!("k=2^{j}, p={p}: W={}", at.generator_budget))?;
            let below = plan((1 << j) - 1, (7, 1, 0), Family::Cdd, 1, p);
            ensure(below.generator_budget < at.generator_budget, || format!("k=2^{j}-1, p={p} not below boundary"))?;
        }
    }
    Ok("1000 random tuples, 160 exact power-of-two boundaries".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("cardinality identities", 1, cardinalities),
        ("cost relations", 1, cost_relations),
        ("minimal decoupling set size", 300, minimal_size),
        ("centralizer oracle", 60, centralizer_oracle),
        ("decoupling-order scaling", 600, scaling),
        ("syndrome preservation", 600, syndrome_preservation),
        ("first-order filter", 60, first_order_filter),
        ("domain planner", 1, planner),
    ];
    let mut failed = 0;
    for (i, (name, budget_s, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > Duration::from_secs(*budget_s) {
                Err(format!("{detail}; over the {budget_s} s budget"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {elapsed:.2?})", i + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
