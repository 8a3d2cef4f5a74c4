//! Group twirl over a generator set, splitting `H = H_0 + H_r` into the
//! part commuting with every generator and the rest.
//!
//! Conjugations by commuting-or-anticommuting Paulis commute with each
//! other, so the average over all `2^m` subset products equals the product
//! of the per-generator projectors `(H + g H g)/2`; that costs `m`
//! conjugations instead of `2^m`.

use crate::ddgs::DdgsResult;
use crate::error::{Error, Result};
use crate::pauli::dense::{CMatrix, PauliAction, C64};
use crate::pauli::PauliOperator;

/// Qubits behind the system factor, from `dim = 2^(n_sys + n_bath)`.
pub(crate) fn bath_qubits(dim: usize, n_sys: usize) -> Result<usize> {
    if !dim.is_power_of_two() || (dim.trailing_zeros() as usize) < n_sys {
        return Err(Error::DimensionMismatch {
            expected: n_sys,
            found: dim.trailing_zeros() as usize,
        });
    }
    Ok(dim.trailing_zeros() as usize - n_sys)
}

/// Average of `g† H g` over the group generated by `ops` (system factor).
pub fn twirl(h: &CMatrix, ops: &[PauliOperator], n_sys: usize) -> Result<CMatrix> {
    let n_bath = bath_qubits(h.nrows(), n_sys)?;
    let half = C64::new(0.5, 0.0);
    let mut out = h.clone();
    for g in ops {
        if g.n_qubits() != n_sys {
            return Err(Error::DimensionMismatch {
                expected: n_sys,
                found: g.n_qubits(),
            });
        }
        let conj = PauliAction::new(g, n_bath).conjugate(&out);
        out = (out + conj) * half;
    }
    Ok(out)
}

/// `(H_0, H_r)` with `H_0` the twirl of `h` over `omega` and `H_r = h - H_0`.
pub fn moos_decompose(h: &CMatrix, omega: &DdgsResult) -> Result<(CMatrix, CMatrix)> {
    let h0 = twirl(h, omega.generators(), omega.n_qubits())?;
    let hr = h - &h0;
    Ok((h0, hr))
}
