//! Recursive concatenation of single-logical-qubit codes, plus the exact
//! generator counts for general `(n, k, r, R)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{CodeSpec, ConjugatePair};
use crate::error::{Error, Result};
use crate::pauli::gf2::rank;
use crate::pauli::{BitVec, GeneratorSet, PauliOperator};

/// Upper bound on `n^R` for structural concatenation.
pub const MAX_CONCAT_QUBITS: usize = 4096;

#[derive(Clone, Debug)]
pub struct ConcatenatedCode {
    pub base: CodeSpec,
    pub levels: usize,
    pub n_physical: usize,
    /// `per_level_stabilizers[q-1]` holds level-`q` generators on all
    /// `n^R` physical qubits.
    pub per_level_stabilizers: Vec<GeneratorSet>,
    pub top_logicals: ConjugatePair,
    /// Block logical pair at each level `0..=R`, on `n^q` qubits (level 0 is
    /// the bare `X`, `Z`).
    block_logicals: Vec<ConjugatePair>,
}

/// Exact counts after `R` levels of concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatCounts {
    #[serde(with = "crate::bigint_serde")]
    pub n_r: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub q_r: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub l_r: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub g_r: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub omega_size: BigUint,
}

/// `n(R) = n^R`, `L(R) = k^R`, `G(R) = (k+r)^R - k^R`,
/// `Q(R) = n^R - (k+r)^R` and `|Ω̂| = Q(R) + 2 L(R)`.
pub fn count_parameters(n: u64, k: u64, r: u64, levels: u32) -> Result<ConcatCounts> {
    if k < 1 || n <= k + r || levels < 1 {
        return Err(Error::InvalidParameter(format!(
            "need n > k + r, k >= 1, R >= 1; got n={n}, k={k}, r={r}, R={levels}"
        )));
    }
    let n_r = BigUint::from(n).pow(levels);
    let kr_r = BigUint::from(k + r).pow(levels);
    let l_r = BigUint::from(k).pow(levels);
    let g_r = &kr_r - &l_r;
    let q_r = &n_r - &kr_r;
    let omega_size = &q_r + &l_r * 2u32;
    Ok(ConcatCounts {
        n_r,
        q_r,
        l_r,
        g_r,
        omega_size,
    })
}

/// Substitutes each single-qubit factor of `op` (on `n` qubits) with the
/// matching logical of the corresponding sub-block.
fn lift(op: &PauliOperator, sub: &ConjugatePair) -> PauliOperator {
    let block = sub.x.n_qubits();
    let total = op.n_qubits() * block;
    let mut x = BitVec::zeros(total);
    let mut z = BitVec::zeros(total);
    let xor_block = |dst_x: &mut BitVec, dst_z: &mut BitVec, j: usize, src: &PauliOperator| {
        for i in src.x_bits().ones() {
            dst_x.flip(j * block + i);
        }
        for i in src.z_bits().ones() {
            dst_z.flip(j * block + i);
        }
    };
    for j in 0..op.n_qubits() {
        if op.x_bits().get(j) {
            xor_block(&mut x, &mut z, j, &sub.x);
        }
        if op.z_bits().get(j) {
            xor_block(&mut x, &mut z, j, &sub.z);
        }
    }
    PauliOperator::hermitian_from_bits(x, z).expect("equal halves")
}

fn place(op: &PauliOperator, n_total: usize, offset: usize) -> PauliOperator {
    let target: Vec<usize> = (offset..offset + op.n_qubits()).collect();
    op.embed(n_total, &target).expect("block lies inside the register")
}

/// Structural concatenation of a `k = 1`, `r = 0` code `levels` times.
///
/// Level 1 is the physical layer: `n^{R-1}` blocks of the base code. Level
/// `q` places `n^{R-q}` copies of the base stabilizers with every Pauli on
/// qubit `j` replaced by the level-`(q-1)` logical of sub-block `j`.
pub fn concatenate(code: &CodeSpec, levels: usize) -> Result<ConcatenatedCode> {
    if code.k != 1 || code.r != 0 {
        return Err(Error::InvalidParameter(format!(
            "structural concatenation needs k = 1 and r = 0, {} has k = {}, r = {}",
            code.name, code.k, code.r
        )));
    }
    if levels < 1 {
        return Err(Error::InvalidParameter("R must be at least 1".into()));
    }
    let n = code.n;
    let n_physical = u32::try_from(levels)
        .ok()
        .and_then(|l| n.checked_pow(l))
        .filter(|&q| q <= MAX_CONCAT_QUBITS)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "{n}^{levels} physical qubits exceeds {MAX_CONCAT_QUBITS}"
            ))
        })?;

    let mut block_logicals = vec![ConjugatePair::parse("X", "Z")?];
    let mut per_level_stabilizers = Vec::with_capacity(levels);
    for q in 1..=levels {
        let sub = &block_logicals[q - 1];
        let block_size = n.pow(q as u32);
        let lifted: Vec<PauliOperator> = code.stabilizers.iter().map(|s| lift(s, sub)).collect();
        let copies = n_physical / block_size;
        let mut gens = Vec::with_capacity(copies * lifted.len());
        for b in 0..copies {
            for s in &lifted {
                gens.push(place(s, n_physical, b * block_size));
            }
        }
        per_level_stabilizers.push(GeneratorSet::new(n_physical, gens)?);
        let logical = &code.logicals[0];
        let next = ConjugatePair::new(lift(&logical.x, sub), lift(&logical.z, sub));
        block_logicals.push(next);
    }
    let top = block_logicals[levels].clone();
    Ok(ConcatenatedCode {
        base: code.clone(),
        levels,
        n_physical,
        per_level_stabilizers,
        top_logicals: top,
        block_logicals,
    })
}

impl ConcatenatedCode {
    /// All stabilizer generators, level 1 first.
    pub fn all_stabilizers(&self) -> Vec<PauliOperator> {
        self.per_level_stabilizers
            .iter()
            .flat_map(|g| g.iter().cloned())
            .collect()
    }

    /// Logical pairs of every level-`q` block placed on the full register,
    /// for `q` in `0..=R` (level 0 are the single physical qubits).
    pub fn level_logicals(&self, q: usize) -> Vec<ConjugatePair> {
        let pair = &self.block_logicals[q];
        let size = pair.x.n_qubits();
        (0..self.n_physical / size)
            .map(|b| {
                ConjugatePair::new(
                    place(&pair.x, self.n_physical, b * size),
                    place(&pair.z, self.n_physical, b * size),
                )
            })
            .collect()
    }

    pub fn counts(&self) -> Result<ConcatCounts> {
        count_parameters(
            self.base.n as u64,
            self.base.k as u64,
            self.base.r as u64,
            self.levels as u32,
        )
    }

    /// Violated invariants; empty on success.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut out = Vec::new();
        let stabs = self.all_stabilizers();
        for (i, s) in stabs.iter().enumerate() {
            if let Some(t) = stabs[i + 1..].iter().find(|t| s.anticommutes_unchecked(t)) {
                out.push(format!("stabilizers {s} and {t} anticommute"));
            }
            for l in [&self.top_logicals.x, &self.top_logicals.z] {
                if s.anticommutes_unchecked(l) {
                    out.push(format!("stabilizer {s} anticommutes with a top logical"));
                }
            }
        }
        let mut rows: Vec<_> = stabs.iter().map(|s| s.symplectic()).collect();
        rows.push(self.top_logicals.x.symplectic());
        rows.push(self.top_logicals.z.symplectic());
        if rank(&rows) != rows.len() {
            out.push("generators are not independent".into());
        }
        match self.counts() {
            Ok(c) => {
                if BigUint::from(stabs.len()) != c.q_r {
                    out.push(format!("{} stabilizers, expected Q(R) = {}", stabs.len(), c.q_r));
                }
                if BigUint::from(self.n_physical) != c.n_r {
                    out.push(format!("{} qubits, expected n^R = {}", self.n_physical, c.n_r));
                }
            }
            Err(e) => out.push(e.to_string()),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::lookup;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn count_formula_examples() {
        assert_eq!(count_parameters(7, 1, 0, 2).unwrap().omega_size, big(50));
        assert_eq!(count_parameters(9, 1, 4, 1).unwrap().omega_size, big(6));
        assert_eq!(count_parameters(5, 1, 0, 1).unwrap().omega_size, big(6));
        let c = count_parameters(9, 1, 4, 2).unwrap();
        assert_eq!(c.n_r, big(81));
        assert_eq!(c.l_r, big(1));
        assert_eq!(c.g_r, big(24));
        assert_eq!(c.q_r, big(81 - 25));
    }

    #[test]
    fn count_domain_errors() {
        assert!(count_parameters(3, 1, 2, 1).is_err());
        assert!(count_parameters(3, 0, 0, 1).is_err());
        assert!(count_parameters(7, 1, 0, 0).is_err());
    }

    #[test]
    fn counts_are_exact_for_huge_levels() {
        let c = count_parameters(7, 1, 0, 40).unwrap();
        assert_eq!(c.omega_size, BigUint::from(7u32).pow(40) + 1u32);
    }

    #[test]
    fn repetition_level_two() {
        let cc = concatenate(&lookup("repetition(3)").unwrap(), 2).unwrap();
        assert_eq!(cc.n_physical, 9);
        assert_eq!(cc.all_stabilizers().len(), 8);
        let top: Vec<String> = cc.per_level_stabilizers[1].iter().map(|s| s.to_string()).collect();
        assert_eq!(top, ["ZIIZIIIII", "IIIZIIZII"]);
        assert_eq!(cc.top_logicals.x.to_string(), "XXXXXXXXX");
        assert!(cc.check_invariants().is_empty());
    }

    #[test]
    fn level_one_is_the_base_code() {
        let steane = lookup("steane").unwrap();
        let cc = concatenate(&steane, 1).unwrap();
        assert_eq!(cc.all_stabilizers(), steane.stabilizers);
        assert_eq!(cc.top_logicals, steane.logicals[0]);
    }

    #[test]
    fn structural_mode_rejects_multi_logical_and_gauge_codes() {
        assert!(concatenate(&lookup("four_two_two").unwrap(), 2).is_err());
        assert!(concatenate(&lookup("bacon_shor(3)").unwrap(), 2).is_err());
        assert!(matches!(
            concatenate(&lookup("steane").unwrap(), 5),
            Err(Error::ResourceLimit(_))
        ));
    }
}
