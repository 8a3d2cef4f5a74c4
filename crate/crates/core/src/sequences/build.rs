//! CDD and nested-UDD constructions. Generators nest outermost-last.

use std::f64::consts::PI;

use super::{neumaier_sum, Interval, PulseSequence, SequenceFamily, MAX_GENERATORS};
use crate::ddgs::{CostModel, DdgsResult, Family};
use crate::error::{Error, Result};

/// Longest sequence either builder will produce.
pub const MAX_INTERVALS: usize = 1 << 24;

fn check_size(omega: &DdgsResult, family: Family, order: u32) -> Result<usize> {
    if order < 1 {
        return Err(Error::InvalidParameter("order N must be at least 1".into()));
    }
    let m = omega.size();
    if m > MAX_GENERATORS {
        return Err(Error::ResourceLimit(format!("{m} generators exceeds {MAX_GENERATORS}")));
    }
    let f = CostModel::new(family, order)?.f_of_n;
    let mut count = 1usize;
    for _ in 0..m {
        count = count
            .checked_mul(f as usize)
            .filter(|&c| c <= MAX_INTERVALS)
            .ok_or_else(|| {
                Error::ResourceLimit(format!(
                    "{family} order {order} over {m} generators needs {f}^{m} intervals, cap is {MAX_INTERVALS}"
                ))
            })?;
    }
    Ok(count)
}

/// Replaces each interval of `outer` with a copy of `inner` scaled by the
/// interval's fraction; the outer pulse lands after the copy's last interval.
fn substitute(outer: &[Interval], inner: &[Interval]) -> Vec<Interval> {
    let mut out = Vec::with_capacity(outer.len() * inner.len());
    for o in outer {
        let start = out.len();
        out.extend(inner.iter().map(|i| Interval {
            fraction: o.fraction * i.fraction,
            pulse: i.pulse,
        }));
        out.last_mut().expect("inner is nonempty").pulse ^= o.pulse;
        debug_assert!(out.len() > start);
    }
    out
}

/// Level-1 universal block: `B_0 = [free]`,
/// `B_j = B_{j-1} Ω_j B_{j-1} Ω_j`, with equal fractions.
fn universal_block(m: usize) -> Vec<Interval> {
    let mut block = vec![Interval {
        fraction: 1.0,
        pulse: 0,
    }];
    for j in 0..m {
        block.last_mut().expect("nonempty").pulse ^= 1 << j;
        let copy = block.clone();
        block.extend(copy);
        for iv in &mut block {
            iv.fraction *= 0.5;
        }
    }
    block
}

/// Concatenated DD: the level-1 block with `CDD_{N-1}` in every free
/// interval. `(2^N)^{|Ω̂|}` equal intervals. An empty `omega` gives the
/// identity sequence.
pub fn cdd_sequence(omega: &DdgsResult, order: u32) -> Result<PulseSequence> {
    check_size(omega, Family::Cdd, order)?;
    if omega.size() == 0 {
        return Ok(PulseSequence::identity(omega.n_qubits()));
    }
    let block = universal_block(omega.size());
    let mut seq = block.clone();
    for _ in 1..order {
        seq = substitute(&block, &seq);
    }
    PulseSequence::new(SequenceFamily::Cdd, order, omega.omega.clone(), seq)
}

/// The `N + 1` Uhrig fractions `sin²(iπ/(2N+2)) - sin²((i-1)π/(2N+2))`,
/// the last one taking the residual so they sum to 1.
pub fn udd_fractions(order: u32) -> Vec<f64> {
    let n = order as usize;
    let s2 = |i: usize| (i as f64 * PI / (2 * n + 2) as f64).sin().powi(2);
    let mut out: Vec<f64> = (1..=n).map(|i| s2(i) - s2(i - 1)).collect();
    let head = neumaier_sum(out.iter().copied());
    out.push(1.0 - head);
    out
}

/// Nested UDD: layer `j` splits every interval of layer `j - 1` into the
/// `N + 1` Uhrig fractions with `Ω_j` at each internal boundary, plus a
/// closing `Ω_j` when `N` is odd. `(N + 1)^{|Ω̂|}` intervals.
pub fn nudd_sequence(omega: &DdgsResult, order: u32) -> Result<PulseSequence> {
    check_size(omega, Family::Nudd, order)?;
    if omega.size() == 0 {
        return Ok(PulseSequence::identity(omega.n_qubits()));
    }
    let fractions = udd_fractions(order);
    let mut seq = vec![Interval {
        fraction: 1.0,
        pulse: 0,
    }];
    for j in 0..omega.size() {
        let bit = 1u64 << j;
        let last = fractions.len() - 1;
        let layer: Vec<Interval> = fractions
            .iter()
            .enumerate()
            .map(|(i, &fraction)| Interval {
                fraction,
                pulse: if i < last || order % 2 == 1 { bit } else { 0 },
            })
            .collect();
        seq = substitute(&layer, &seq);
    }
    let head = neumaier_sum(seq[..seq.len() - 1].iter().map(|iv| iv.fraction));
    seq.last_mut().expect("nonempty").fraction = 1.0 - head;
    PulseSequence::new(SequenceFamily::Nudd, order, omega.omega.clone(), seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddgs::{cost, full_pauli_ddgs};
    use crate::pauli::GeneratorSet;
    use num_bigint::BigUint;

    fn omega(n: usize, s: &[&str]) -> DdgsResult {
        DdgsResult::custom(GeneratorSet::parse(n, s).unwrap(), "test")
    }

    fn pulses(seq: &PulseSequence) -> Vec<String> {
        seq.pulses()
            .map(|p| p.map_or("-".to_string(), |p| p.to_string()))
            .collect()
    }

    #[test]
    fn spin_echo() {
        let seq = cdd_sequence(&omega(1, &["X"]), 1).unwrap();
        assert_eq!(pulses(&seq), ["X", "X"]);
        assert_eq!(seq.intervals()[0].fraction, 0.5);
        let udd1 = nudd_sequence(&omega(1, &["X"]), 1).unwrap();
        assert_eq!(pulses(&udd1), ["X", "X"]);
        assert!((udd1.intervals()[0].fraction - 0.5).abs() < 1e-15);
    }

    #[test]
    fn universal_block_over_x_and_z() {
        let seq = cdd_sequence(&full_pauli_ddgs(1).unwrap(), 1).unwrap();
        // f X f (X·Z) f X f (X·Z), with the last generator outermost
        assert_eq!(pulses(&seq), ["X", "Y", "X", "Y"]);
        let seq2 = cdd_sequence(&full_pauli_ddgs(1).unwrap(), 2).unwrap();
        assert_eq!(seq2.len(), 16);
        assert!(seq2.intervals().iter().all(|iv| iv.fraction == 1.0 / 16.0));
    }

    #[test]
    fn udd_two_fractions() {
        let f = udd_fractions(2);
        for (got, want) in f.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
        let seq = nudd_sequence(&omega(1, &["X"]), 2).unwrap();
        assert_eq!(pulses(&seq), ["X", "X", "-"]);
        assert_eq!(nudd_sequence(&full_pauli_ddgs(1).unwrap(), 2).unwrap().len(), 9);
    }

    #[test]
    fn counts_match_cost() {
        for n in 1..=3 {
            let om = full_pauli_ddgs(n).unwrap();
            for order in 1..=3 {
                for family in [Family::Cdd, Family::Nudd] {
                    let seq = match family {
                        Family::Cdd => cdd_sequence(&om, order),
                        Family::Nudd => nudd_sequence(&om, order),
                    }
                    .unwrap();
                    let want = cost(om.size() as u64, &CostModel::new(family, order).unwrap());
                    assert_eq!(BigUint::from(seq.len()), want, "{family} N={order} n={n}");
                }
            }
        }
    }

    #[test]
    fn oversized_requests_are_refused() {
        let om = full_pauli_ddgs(5).unwrap();
        assert!(matches!(cdd_sequence(&om, 3), Err(Error::ResourceLimit(_))));
        assert!(cdd_sequence(&om, 0).is_err());
    }

    #[test]
    fn empty_generator_set_gives_identity() {
        let om = DdgsResult::custom(GeneratorSet::empty(2), "none");
        let seq = cdd_sequence(&om, 2).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.pulse_count(), 0);
    }
}
