//! Syndrome-block structure of a Hamiltonian relative to a code.
//!
//! The joint eigenbasis of the stabilizers (times the bath) is found by
//! diagonalizing `M = Σ_μ 2^μ (I - S_μ)/2`, whose eigenvalue on syndrome
//! block `s` is the integer with bit `μ` set iff `s_μ = -1`. In that basis
//! `Π_{s'} H Π_s` is a plain sub-block.

use serde::{Deserialize, Serialize};

use super::norms::{hermitian_eigen, spectral_norm};
use super::twirl::{bath_qubits, twirl};
use crate::codes::{flatten, CodeSpec};
use crate::error::{Error, Result};
use crate::pauli::dense::{identity, CMatrix, DenseLimit, PauliAction, C64};

/// Worst-case block norms of one Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyndromeCheck {
    /// `max_{s' ≠ s} ‖Π_{s'} H Π_s‖`.
    pub max_leakage: f64,
    /// `max_s ‖Π_s (H - Tw_L(H)) Π_s‖`, the part of each block that acts on
    /// the logical qubits; `Tw_L` averages over the logical Pauli group.
    pub max_in_block_action: f64,
    pub blocks: usize,
}

/// Precomputed syndrome basis for a code with `n_bath` bath qubits.
pub struct SyndromeBasis {
    code: CodeSpec,
    n_bath: usize,
    basis: CMatrix,
    /// Start of each block in `basis`, plus the end.
    bounds: Vec<usize>,
}

impl SyndromeBasis {
    pub fn new(code: &CodeSpec, n_bath: usize, limit: DenseLimit) -> Result<Self> {
        limit.check(code.n + n_bath)?;
        let q = code.stabilizers.len();
        if q > 16 {
            return Err(Error::ResourceLimit(format!("{q} stabilizers give too many syndrome blocks")));
        }
        let d = 1usize << (code.n + n_bath);
        let mut m = CMatrix::zeros(d, d);
        let id = identity(d);
        for (mu, s) in code.stabilizers.iter().enumerate() {
            let s_mat = PauliAction::new(s, n_bath).left_mul(&id);
            m += (&id - s_mat) * C64::new((1u64 << mu) as f64 / 2.0, 0.0);
        }
        let (values, basis) = hermitian_eigen(&m);
        let blocks = 1usize << q;
        let block_len = d / blocks;
        let mut bounds = vec![0];
        for b in 0..blocks {
            let range = b * block_len..(b + 1) * block_len;
            if values[range].iter().any(|&v| (v - b as f64).abs() > 1e-8) {
                return Err(Error::Numerical(format!(
                    "syndrome block {b} does not have dimension {block_len}"
                )));
            }
            bounds.push((b + 1) * block_len);
        }
        Ok(Self {
            code: code.clone(),
            n_bath,
            basis,
            bounds,
        })
    }

    fn block(&self, m: &CMatrix, row: usize, col: usize) -> CMatrix {
        let (r0, r1) = (self.bounds[row], self.bounds[row + 1]);
        let (c0, c1) = (self.bounds[col], self.bounds[col + 1]);
        m.view((r0, c0), (r1 - r0, c1 - c0)).into_owned()
    }

    pub fn check(&self, h: &CMatrix) -> Result<SyndromeCheck> {
        let d = self.basis.nrows();
        if h.nrows() != d || h.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: self.code.n + self.n_bath,
                found: bath_qubits(h.nrows(), 0).unwrap_or(0),
            });
        }
        let blocks = self.bounds.len() - 1;
        let rotated = self.basis.adjoint() * h * &self.basis;
        let mut max_leakage = 0.0f64;
        for s in 0..blocks {
            for t in 0..blocks {
                if s != t {
                    max_leakage = max_leakage.max(spectral_norm(&self.block(&rotated, t, s)));
                }
            }
        }
        let logical = twirl(h, &flatten(&self.code.logicals), self.code.n)?;
        let rotated = self.basis.adjoint() * (h - logical) * &self.basis;
        let max_in_block_action = (0..blocks)
            .map(|s| spectral_norm(&self.block(&rotated, s, s)))
            .fold(0.0, f64::max);
        Ok(SyndromeCheck {
            max_leakage,
            max_in_block_action,
            blocks,
        })
    }
}

/// One-shot [`SyndromeBasis::check`], inferring the bath size from `h`.
pub fn syndrome_preservation(h: &CMatrix, code: &CodeSpec) -> Result<SyndromeCheck> {
    let n_bath = bath_qubits(h.nrows(), code.n)?;
    SyndromeBasis::new(code, n_bath, DenseLimit::DEFAULT)?.check(h)
}
