//! Dense-matrix verification: random system-bath noise, pulsed evolution,
//! effective Hamiltonians, twirls and syndrome-block checks.

pub mod evolve;
pub mod fit;
pub mod noise;
pub mod norms;
pub mod syndrome;
pub mod twirl;

pub use evolve::{effective_hamiltonian, evolve, evolve_hamiltonian, exp_i_hermitian};
pub use fit::{decoupling_order_fit, fit_loglog, log_grid, DecouplingReport, FitOptions, LeakageSeries, LogLogFit};
pub use noise::{NoiseModel, NoiseParams, NoiseTerm};
pub use norms::{hermitian_norm, spectral_norm};
pub use syndrome::{syndrome_preservation, SyndromeBasis, SyndromeCheck};
pub use twirl::{moos_decompose, twirl};

use crate::error::Result;
use crate::pauli::dense::DenseLimit;

/// Random noise model with `‖H‖ = norm_target`, under the default dense limit.
pub fn random_noise(n_sys: usize, n_bath: usize, locality: usize, norm_target: f64, seed: u64) -> Result<NoiseModel> {
    let params = NoiseParams {
        n_sys,
        n_bath,
        locality,
        norm_target,
        seed,
    };
    NoiseModel::random(params, DenseLimit::DEFAULT)
}
