//! Dense complex matrices for Pauli operators, and their action on dense
//! system ⊗ bath matrices without materializing the Pauli.

use nalgebra::DMatrix;
use num_traits::{One, Zero};

pub use nalgebra::Complex;

use super::PauliOperator;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Maximum total qubit count (system plus bath) for dense matrices.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DenseLimit(pub usize);

impl DenseLimit {
    pub const DEFAULT: DenseLimit = DenseLimit(12);

    pub fn check(self, qubits: usize) -> Result<()> {
        if qubits > self.0 {
            Err(Error::DenseLimit {
                qubits,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for DenseLimit {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub(crate) fn i_pow(k: u8) -> C64 {
    match k & 3 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `P ⊗ I_bath` as a signed permutation: `P|b⟩ = coef(b)|b ⊕ x⟩`.
#[derive(Clone, Debug)]
pub struct PauliAction {
    x_mask: usize,
    z_mask: usize,
    phase: u8,
    n_bath: usize,
}

impl PauliAction {
    /// Qubit 1 is the most significant bit of the system index; the bath
    /// occupies the low `n_bath` bits of the joint index.
    pub fn new(p: &PauliOperator, n_bath: usize) -> Self {
        let n = p.n_qubits();
        let mut x_mask = 0usize;
        let mut z_mask = 0usize;
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if p.x_bits().get(q) {
                x_mask |= bit;
            }
            if p.z_bits().get(q) {
                z_mask |= bit;
            }
        }
        Self {
            x_mask,
            z_mask,
            phase: p.phase_exp(),
            n_bath,
        }
    }

    #[inline]
    fn coef(&self, joint: usize) -> C64 {
        let sys = joint >> self.n_bath;
        let flips = ((sys & self.z_mask).count_ones() & 1) as u8;
        i_pow(self.phase + 2 * flips)
    }

    #[inline]
    fn target(&self, joint: usize) -> usize {
        joint ^ (self.x_mask << self.n_bath)
    }

    /// Nonzero entries `(column, row, value)` of the `dim × dim` matrix.
    pub fn entries(&self, dim: usize) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..dim).map(|b| (b, self.target(b), self.coef(b)))
    }

    /// `P · m`
    pub fn left_mul(&self, m: &CMatrix) -> CMatrix {
        let d = m.nrows();
        let mut out = CMatrix::zeros(d, m.ncols());
        for k in 0..d {
            let c = self.coef(k);
            let r = self.target(k);
            for col in 0..m.ncols() {
                out[(r, col)] = c * m[(k, col)];
            }
        }
        out
    }

    /// `P† · m · P`
    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        let d = m.nrows();
        let coefs: Vec<C64> = (0..d).map(|k| self.coef(k)).collect();
        let mut out = CMatrix::zeros(d, d);
        for b in 0..d {
            let tb = self.target(b);
            for a in 0..d {
                out[(a, b)] = coefs[a].conj() * coefs[b] * m[(self.target(a), tb)];
            }
        }
        out
    }
}

/// Exact `2^n × 2^n` matrix of `p`, phase included.
pub fn to_matrix(p: &PauliOperator, limit: DenseLimit) -> Result<CMatrix> {
    limit.check(p.n_qubits())?;
    let d = 1usize << p.n_qubits();
    let action = PauliAction::new(p, 0);
    let mut m = CMatrix::zeros(d, d);
    for (col, row, v) in action.entries(d) {
        m[(row, col)] = v;
    }
    Ok(m)
}

/// `A ⊗ B` with `A` the left (more significant) factor.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::from_diagonal_element(d, d, C64::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn close(a: &CMatrix, b: &CMatrix) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-14)
    }

    #[test]
    fn single_qubit_matrices() {
        let lim = DenseLimit::DEFAULT;
        assert!(close(&to_matrix(&p("I"), lim).unwrap(), &identity(2)));
        let z = to_matrix(&p("Z"), lim).unwrap();
        assert_eq!(z[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], C64::new(-1.0, 0.0));
        let y = to_matrix(&p("Y"), lim).unwrap();
        assert_eq!(y[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], C64::new(0.0, 1.0));
        let x = to_matrix(&p("X"), lim).unwrap();
        assert_eq!(x[(0, 1)], C64::new(1.0, 0.0));
    }

    #[test]
    fn tensor_order_is_qubit_one_leftmost() {
        let lim = DenseLimit::DEFAULT;
        let xz = to_matrix(&p("XZ"), lim).unwrap();
        let expect = kron(
            &to_matrix(&p("X"), lim).unwrap(),
            &to_matrix(&p("Z"), lim).unwrap(),
        );
        assert!(close(&xz, &expect));
    }

    #[test]
    fn dense_limit_refuses() {
        let big = PauliOperator::identity(5);
        assert!(matches!(
            to_matrix(&big, DenseLimit(4)),
            Err(Error::DenseLimit { .. })
        ));
    }

    #[test]
    fn action_matches_dense_product() {
        let lim = DenseLimit::DEFAULT;
        let op = p("-YX");
        let bath = CMatrix::from_fn(2, 2, |i, j| C64::new((i + 2 * j) as f64, i as f64 - j as f64));
        let m = kron(&to_matrix(&p("ZY"), lim).unwrap(), &bath);
        let full = kron(&to_matrix(&op, lim).unwrap(), &identity(2));
        let act = PauliAction::new(&op, 1);
        assert!(close(&act.left_mul(&m), &(&full * &m)));
        assert!(close(&act.conjugate(&m), &(full.adjoint() * &m * &full)));
    }
}
