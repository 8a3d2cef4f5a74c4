//! Shared fixtures for the criterion benches.

use sldd_core::codes::lookup;
use sldd_core::ddgs::{full_pauli_ddgs, sldd, DdgsResult};
use sldd_core::verifier::{random_noise, NoiseModel};

/// SLDD of a catalog code.
pub fn sldd_of(reference: &str) -> DdgsResult {
    sldd(&lookup(reference).expect("catalog code")).expect("valid code")
}

pub fn full_pauli(n: usize) -> DdgsResult {
    full_pauli_ddgs(n).expect("n >= 1")
}

/// Unit-norm noise with one bath qubit and up to two-body system terms.
pub fn noise(n_sys: usize, seed: u64) -> NoiseModel {
    random_noise(n_sys, 1, n_sys.min(2), 1.0, seed).expect("small model")
}
