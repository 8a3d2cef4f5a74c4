//! Piecewise-constant evolution with ideal pulses, and the effective
//! Hamiltonian `H_eff = log(U) / (iT)`, so that `U = e^{iT H_eff}`.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DVector;

use super::noise::NoiseModel;
use super::norms::hermitian_eigen;
use crate::error::{Error, Result};
use crate::pauli::dense::{i_pow, identity, CMatrix, PauliAction, C64};
use crate::pauli::PauliOperator;
use crate::sequences::PulseSequence;

/// Eigenphases closer than this to `±π` are rejected.
pub const BRANCH_MARGIN: f64 = 1e-4;
/// Allowed `max |(U†U - I)_{ij}|` and log round-trip error.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

/// Cached `exp(-i H τ)` for the distinct interval lengths of one run.
struct Propagator {
    values: Vec<f64>,
    vectors: CMatrix,
    cache: HashMap<u64, CMatrix>,
}

impl Propagator {
    fn new(h: &CMatrix) -> Self {
        let (values, vectors) = hermitian_eigen(h);
        Self {
            values,
            vectors,
            cache: HashMap::new(),
        }
    }

    fn step(&mut self, tau: f64) -> &CMatrix {
        let Self {
            values,
            vectors,
            cache,
        } = self;
        cache.entry(tau.to_bits()).or_insert_with(|| {
            let phases = DVector::from_iterator(
                values.len(),
                values.iter().map(|&l| C64::from_polar(1.0, -l * tau)),
            );
            let scaled = CMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| vectors[(r, c)] * phases[c]);
            scaled * vectors.adjoint()
        })
    }
}

fn max_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |a, z| a.max(z.norm()))
}

/// `U(T) = Π_j P_j e^{-iHτ_j}`, rightmost first, with `τ_j = fraction_j · T`.
///
/// Pulses are Hermitian representatives whose product is `i^k · I`; the
/// factor `i^{-k}` is divided out so that `U → I` as `T → 0`.
pub fn evolve(seq: &PulseSequence, model: &NoiseModel, total_time: f64) -> Result<CMatrix> {
    evolve_hamiltonian(seq, &model.hamiltonian(), model.n_bath(), total_time)
}

/// [`evolve`] for an explicit Hamiltonian on `seq.n_qubits() + n_bath` qubits.
pub fn evolve_hamiltonian(seq: &PulseSequence, h: &CMatrix, n_bath: usize, total_time: f64) -> Result<CMatrix> {
    let d = 1usize << (seq.n_qubits() + n_bath);
    if h.nrows() != d || h.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: seq.n_qubits() + n_bath,
            found: h.nrows().trailing_zeros() as usize,
        });
    }
    if !(total_time > 0.0 && total_time.is_finite()) {
        return Err(Error::InvalidParameter(format!("T = {total_time} must be positive")));
    }
    let mut prop = Propagator::new(h);
    let mut actions: HashMap<u64, (PauliOperator, PauliAction)> = HashMap::new();
    let mut product = PauliOperator::identity(seq.n_qubits());
    let mut u = identity(d);
    for iv in seq.intervals() {
        u = prop.step(iv.fraction * total_time) * &u;
        if iv.pulse != 0 {
            let (op, action) = actions.entry(iv.pulse).or_insert_with(|| {
                let op = seq.mask_operator(iv.pulse);
                let action = PauliAction::new(&op, n_bath);
                (op, action)
            });
            u = action.left_mul(&u);
            product = op.mul_unchecked(&product);
        }
    }
    debug_assert!(product.x_bits().is_zero() && product.z_bits().is_zero());
    u *= i_pow(4 - (product.phase_exp() & 3));
    let err = max_entry(&(u.adjoint() * &u - identity(d)));
    if err > UNITARITY_TOLERANCE {
        return Err(Error::Numerical(format!("evolution is not unitary (error {err:e})")));
    }
    Ok(u)
}

/// Principal-branch `H_eff` with `e^{iT H_eff} = U`.
///
/// Errors when an eigenphase lies within [`BRANCH_MARGIN`] of `±π`; the
/// branch is unambiguous for `T‖H‖ < π/2`.
pub fn effective_hamiltonian(u: &CMatrix, total_time: f64) -> Result<CMatrix> {
    if !(total_time > 0.0 && total_time.is_finite()) {
        return Err(Error::InvalidParameter(format!("T = {total_time} must be positive")));
    }
    let d = u.nrows();
    let schur = u
        .clone()
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let (q, t) = schur.unpack();
    let mut phases = Vec::with_capacity(d);
    for k in 0..d {
        let theta = t[(k, k)].arg();
        if PI - theta.abs() < BRANCH_MARGIN {
            return Err(Error::BranchCut {
                phase: theta,
                margin: BRANCH_MARGIN,
            });
        }
        phases.push(theta);
    }
    let apply = |f: &dyn Fn(f64) -> C64| {
        let scaled = CMatrix::from_fn(d, d, |r, c| q[(r, c)] * f(phases[c]));
        scaled * q.adjoint()
    };
    let back = apply(&|th| C64::from_polar(1.0, th));
    let err = max_entry(&(back - u));
    if err > UNITARITY_TOLERANCE {
        return Err(Error::Numerical(format!(
            "logarithm does not reproduce U (error {err:e}); is U unitary?"
        )));
    }
    let h = apply(&|th| C64::new(th / total_time, 0.0));
    Ok((&h + h.adjoint()) * C64::new(0.5, 0.0))
}

/// `exp(i t H)` for Hermitian `H`.
pub fn exp_i_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(h);
    let scaled = CMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| {
        vectors[(r, c)] * C64::from_polar(1.0, values[c] * t)
    });
    scaled * vectors.adjoint()
}
