//! Spectral norms and Hermitian eigendecompositions.

use nalgebra::linalg::SymmetricEigen;

use crate::error::{Error, Result};
use crate::pauli::dense::CMatrix;

/// Spectral norm of a Hermitian matrix: largest `|λ|`.
pub fn hermitian_norm(h: &CMatrix) -> Result<f64> {
    if h.is_empty() {
        return Ok(0.0);
    }
    let eig = h.clone().symmetric_eigenvalues();
    let out = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Numerical("non-finite eigenvalue".into()))
    }
}

/// Spectral norm of an arbitrary matrix: largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().fold(0.0f64, |a, &v| a.max(v))
}

/// `h = V diag(λ) V†` with ascending `λ`.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}
