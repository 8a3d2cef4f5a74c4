//! Random k-local system-bath Hamiltonians.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::norms::hermitian_norm;
use crate::error::{Error, Result};
use crate::pauli::dense::{CMatrix, DenseLimit, PauliAction, C64};
use crate::pauli::PauliOperator;

/// Above this many system Paulis a seeded subset is kept.
pub const MAX_NOISE_TERMS: usize = 256;

/// One term `coefficient · system_pauli ⊗ bath_operator`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseTerm {
    pub coefficient: f64,
    pub system_pauli: PauliOperator,
    pub bath_operator: CMatrix,
}

/// Parameters that fully determine a [`NoiseModel`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub n_sys: usize,
    pub n_bath: usize,
    pub locality: usize,
    pub norm_target: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseModel {
    pub params: NoiseParams,
    pub terms: Vec<NoiseTerm>,
}

/// GUE-style sample: complex Gaussian entries, then `(A + A†)/2`.
fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Non-identity `n`-qubit Paulis of weight at most `k`, in enumeration order.
fn local_paulis(n: usize, k: usize) -> Vec<PauliOperator> {
    PauliOperator::enumerate_all(n)
        .filter(|p| !p.is_identity() && p.weight() <= k)
        .collect()
}

impl NoiseModel {
    /// Every system Pauli of support `≤ locality` (a seeded subset of
    /// [`MAX_NOISE_TERMS`] if there are more) times an independent random
    /// Hermitian bath operator, plus a pure-bath term, rescaled so the
    /// spectral norm is `norm_target`.
    pub fn random(params: NoiseParams, limit: DenseLimit) -> Result<Self> {
        let NoiseParams {
            n_sys,
            n_bath,
            locality,
            norm_target,
            seed,
        } = params;
        limit.check(n_sys + n_bath)?;
        if n_sys < 1 || locality < 1 || locality > n_sys {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= locality <= n_sys, got locality {locality} with {n_sys} system qubits"
            )));
        }
        if !(norm_target > 0.0 && norm_target.is_finite()) {
            return Err(Error::InvalidParameter(format!("norm target {norm_target} must be positive")));
        }
        let n_states = (4usize).checked_pow(n_sys as u32).ok_or_else(|| {
            Error::ResourceLimit(format!("4^{n_sys} system Paulis"))
        })?;
        if n_states > 1 << 24 {
            return Err(Error::ResourceLimit(format!("4^{n_sys} system Paulis to enumerate")));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut paulis = local_paulis(n_sys, locality);
        if paulis.len() > MAX_NOISE_TERMS {
            let mut keep = index::sample(&mut rng, paulis.len(), MAX_NOISE_TERMS).into_vec();
            keep.sort_unstable();
            paulis = keep.into_iter().map(|i| paulis[i].clone()).collect();
        }
        paulis.insert(0, PauliOperator::identity(n_sys));

        let db = 1usize << n_bath;
        let terms = paulis
            .into_iter()
            .map(|p| NoiseTerm {
                coefficient: 1.0,
                system_pauli: p,
                bath_operator: random_hermitian(&mut rng, db),
            })
            .collect();
        let mut model = NoiseModel { params, terms };
        let raw = hermitian_norm(&model.hamiltonian())?;
        if raw == 0.0 {
            return Err(Error::Numerical("sampled Hamiltonian vanished".into()));
        }
        let scale = norm_target / raw;
        for t in &mut model.terms {
            t.coefficient = scale;
        }
        Ok(model)
    }

    pub fn n_sys(&self) -> usize {
        self.params.n_sys
    }

    pub fn n_bath(&self) -> usize {
        self.params.n_bath
    }

    pub fn dim(&self) -> usize {
        1 << (self.params.n_sys + self.params.n_bath)
    }

    /// Dense `Σ c · P ⊗ B`, Hermitian by construction.
    pub fn hamiltonian(&self) -> CMatrix {
        let d = self.dim();
        let db = 1usize << self.params.n_bath;
        let mut h = CMatrix::zeros(d, d);
        for term in &self.terms {
            let action = PauliAction::new(&term.system_pauli, 0);
            for (col_sys, row_sys, c) in action.entries(1 << self.params.n_sys) {
                let c = c * term.coefficient;
                for j in 0..db {
                    for i in 0..db {
                        h[(row_sys * db + i, col_sys * db + j)] += c * term.bath_operator[(i, j)];
                    }
                }
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n_sys: usize, n_bath: usize, locality: usize, seed: u64) -> NoiseParams {
        NoiseParams {
            n_sys,
            n_bath,
            locality,
            norm_target: 1.0,
            seed,
        }
    }

    #[test]
    fn norm_and_hermiticity() {
        let m = NoiseModel::random(params(1, 1, 1, 7), DenseLimit::DEFAULT).unwrap();
        assert_eq!(m.terms.len(), 4);
        let h = m.hamiltonian();
        assert!((&h - h.adjoint()).iter().all(|z| z.norm() < 1e-15));
        assert!((hermitian_norm(&h).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn locality_is_respected() {
        let m = NoiseModel::random(params(3, 1, 2, 1), DenseLimit::DEFAULT).unwrap();
        assert_eq!(m.terms.len(), 1 + 9 + 27);
        assert!(m.terms.iter().all(|t| t.system_pauli.weight() <= 2));
        assert!(m.terms.iter().any(|t| t.system_pauli.weight() == 2));
    }

    #[test]
    fn closed_system_has_scalar_bath() {
        let m = NoiseModel::random(params(2, 0, 2, 3), DenseLimit::DEFAULT).unwrap();
        assert!(m.terms.iter().all(|t| t.bath_operator.shape() == (1, 1)));
        assert_eq!(m.hamiltonian().nrows(), 4);
    }

    #[test]
    fn seeds_are_deterministic() {
        let a = NoiseModel::random(params(2, 1, 2, 11), DenseLimit::DEFAULT).unwrap();
        let b = NoiseModel::random(params(2, 1, 2, 11), DenseLimit::DEFAULT).unwrap();
        let c = NoiseModel::random(params(2, 1, 2, 12), DenseLimit::DEFAULT).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.hamiltonian(), c.hamiltonian());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            NoiseModel::random(params(8, 8, 1, 0), DenseLimit::DEFAULT),
            Err(Error::DenseLimit { .. })
        ));
        assert!(NoiseModel::random(params(2, 1, 3, 0), DenseLimit::DEFAULT).is_err());
    }

    #[test]
    fn large_registers_sample_a_subset() {
        let m = NoiseModel::random(params(6, 0, 6, 5), DenseLimit::DEFAULT).unwrap();
        assert_eq!(m.terms.len(), MAX_NOISE_TERMS + 1);
    }
}
