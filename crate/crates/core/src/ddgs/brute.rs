//! Exhaustive search for the smallest decoupling generator set.
//!
//! Paulis are packed as `2n`-bit masks `x | z << n`. A candidate set `Ω`
//! decouples `⟨B̂⟩` iff no nontrivial product of `B̂` commutes with all of
//! `Ω`, i.e. iff the `|B̂| × |Ω|` symplectic pairing matrix has full row
//! rank. Each candidate is stored as its pairing column against `B̂`, so the
//! test is a rank computation on at most six small words.

use serde::{Deserialize, Serialize};

use super::{decouples, DdgsResult};
use crate::error::{Error, Result};
use crate::pauli::{GeneratorSet, PauliOperator};

/// Largest register the search accepts.
pub const BRUTE_FORCE_MAX_QUBITS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSearch {
    pub n_qubits: usize,
    pub error_rank: usize,
    /// Smallest decoupling size up to `size_cap`, if any.
    pub minimal_size: Option<usize>,
    /// Lexicographically least decoupling set at `minimal_size`.
    pub witness: Option<GeneratorSet>,
    /// Whether `Ω̂ = B̂` itself decouples `⟨B̂⟩`. Fails whenever `⟨B̂⟩`
    /// contains a Pauli commuting with all of `B̂`, e.g. `B̂ = {Z}`.
    pub basis_itself_decouples: bool,
    /// Subsets examined across all sizes.
    pub subsets_checked: u64,
}

fn pack(p: &PauliOperator) -> u64 {
    p.symplectic().to_u64()
}

fn anticommute(a: u64, b: u64, n: usize) -> bool {
    let low = (1u64 << n) - 1;
    let swapped = (b >> n) | ((b & low) << n);
    (a & swapped).count_ones() & 1 == 1
}

fn full_rank(cols: &[u64], rank_needed: usize) -> bool {
    let mut pivots: Vec<u64> = Vec::with_capacity(cols.len());
    for &c in cols {
        let mut v = c;
        for &p in &pivots {
            v = v.min(v ^ p);
        }
        if v != 0 {
            pivots.push(v);
            pivots.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    pivots.len() == rank_needed
}

/// Advances `idx` to the next `k`-combination of `0..m` in lexicographic
/// order; false when exhausted.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

struct Search {
    n: usize,
    candidates: Vec<PauliOperator>,
    columns: Vec<u64>,
    rank_needed: usize,
}

impl Search {
    fn new(error_basis: &GeneratorSet, n: usize) -> Result<Self> {
        if n > BRUTE_FORCE_MAX_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "brute-force search is limited to {BRUTE_FORCE_MAX_QUBITS} qubits, got {n}"
            )));
        }
        if error_basis.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: error_basis.n_qubits(),
            });
        }
        let b: Vec<u64> = error_basis.iter().map(pack).collect();
        let candidates: Vec<PauliOperator> = PauliOperator::enumerate_all(n).skip(1).collect();
        let columns = candidates
            .iter()
            .map(|c| {
                let c = pack(c);
                b.iter()
                    .enumerate()
                    .filter(|&(_, &e)| anticommute(e, c, n))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok(Self {
            n,
            candidates,
            columns,
            rank_needed: b.len(),
        })
    }

    /// First decoupling subset of exactly `size`, and the subsets examined.
    fn at_size(&self, size: usize) -> (Option<Vec<usize>>, u64) {
        let m = self.candidates.len();
        if size > m {
            return (None, 0);
        }
        let mut idx: Vec<usize> = (0..size).collect();
        let mut cols = vec![0u64; size];
        let mut checked = 0u64;
        loop {
            checked += 1;
            for (c, &i) in cols.iter_mut().zip(&idx) {
                *c = self.columns[i];
            }
            if full_rank(&cols, self.rank_needed) {
                return (Some(idx), checked);
            }
            if !next_combination(&mut idx, m) {
                return (None, checked);
            }
        }
    }

    fn to_set(&self, idx: &[usize]) -> GeneratorSet {
        let gens = idx.iter().map(|&i| self.candidates[i].clone()).collect();
        GeneratorSet::new(self.n, gens).expect("a full-rank witness is independent")
    }
}

/// Lexicographically least decoupling set of exactly `size` Paulis, if any.
///
/// Candidates are the non-identity Paulis in `I < X < Y < Z` order.
pub fn decoupling_set_of_size(error_basis: &GeneratorSet, n: usize, size: usize) -> Result<Option<GeneratorSet>> {
    let search = Search::new(error_basis, n)?;
    Ok(search.at_size(size).0.map(|idx| search.to_set(&idx)))
}

/// Tries every subset of size `0, 1, …, size_cap` and stops at the first
/// size with a decoupling set.
pub fn brute_force_minimal_ddgs(error_basis: &GeneratorSet, n: usize, size_cap: usize) -> Result<MinimalSearch> {
    if size_cap > 2 * n {
        return Err(Error::InvalidParameter(format!(
            "size cap {size_cap} exceeds 2n = {}",
            2 * n
        )));
    }
    let search = Search::new(error_basis, n)?;
    let mut subsets_checked = 0;
    let mut found = None;
    for size in 0..=size_cap {
        let (hit, checked) = search.at_size(size);
        subsets_checked += checked;
        if let Some(idx) = hit {
            found = Some((size, search.to_set(&idx)));
            break;
        }
    }
    let self_dual = DdgsResult::custom(error_basis.clone(), "error basis");
    let (minimal_size, witness) = match found {
        Some((s, w)) => (Some(s), Some(w)),
        None => (None, None),
    };
    Ok(MinimalSearch {
        n_qubits: n,
        error_rank: error_basis.len(),
        minimal_size,
        witness,
        basis_itself_decouples: decouples(&self_dual, error_basis)?,
        subsets_checked,
    })
}
