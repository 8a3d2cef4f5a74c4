//! Binary-symplectic n-qubit Pauli operators with exact phase tracking.
//!
//! An operator is stored as `i^phase_exp · X^x Z^z`, where `X^x Z^z` is the
//! tensor product over qubits of `X^{x_q} Z^{z_q}` with qubit 1 leftmost.
//! Internally qubits are 0-based; text formats are 1-based and left-to-right.

pub mod dense;
pub mod generators;
pub mod gf2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
pub use gf2::BitVec;
pub use generators::{centralizer, extract_generators, subgroup_intersection_trivial, GeneratorSet};

/// Single-qubit Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    x: BitVec,
    z: BitVec,
    phase_exp: u8,
}

impl PauliOperator {
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            x: BitVec::zeros(n_qubits),
            z: BitVec::zeros(n_qubits),
            phase_exp: 0,
        }
    }

    /// Hermitian single-qubit Pauli `p` acting on `qubit` (0-based).
    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Self {
        let mut out = Self::identity(n_qubits);
        out.set_qubit(qubit, p);
        out
    }

    /// Builds `i^phase_exp X^x Z^z` from raw symplectic parts.
    pub fn from_bits(x: BitVec, z: BitVec, phase_exp: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self {
            n_qubits: x.len(),
            x,
            z,
            phase_exp: phase_exp & 3,
        })
    }

    /// Hermitian representative (`+` sign in string form) for the given
    /// symplectic parts.
    pub fn hermitian_from_bits(x: BitVec, z: BitVec) -> Result<Self> {
        let mut p = Self::from_bits(x, z, 0)?;
        p.phase_exp = (p.y_count() & 3) as u8;
        Ok(p)
    }

    /// Hermitian operator from a symplectic row `(x | z)` of length `2n`.
    pub fn from_symplectic(row: &BitVec) -> Self {
        let n = row.len() / 2;
        Self::hermitian_from_bits(row.slice(0, n), row.slice(n, 2 * n))
            .expect("halves of one row have equal length")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// The row `(x | z)` used by all GF(2) routines; phase is dropped.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    /// Overwrites one tensor factor, keeping the operator a `+` Hermitian
    /// representative relative to the string sign it had before.
    pub fn set_qubit(&mut self, qubit: usize, p: Pauli) {
        let sign = self.string_sign();
        let (x, z) = p.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
        self.phase_exp = ((sign as usize + self.y_count()) & 3) as u8;
    }

    fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    /// Exponent `s` such that the operator is `i^s` times a tensor product
    /// of Hermitian single-qubit Paulis.
    pub fn string_sign(&self) -> u8 {
        ((self.phase_exp as usize + 4 - (self.y_count() & 3)) & 3) as u8
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase_exp as usize & 1) == (self.y_count() & 1)
    }

    /// Same operator up to phase, rescaled to be a Hermitian involution.
    /// Hermitian inputs are returned unchanged (including a `-` sign).
    pub fn to_hermitian(&self) -> Self {
        if self.is_hermitian() {
            return self.clone();
        }
        let mut out = self.clone();
        out.phase_exp = (self.y_count() & 3) as u8;
        out
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        (0..self.n_qubits)
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .collect()
    }

    pub fn eq_mod_phase(&self, other: &Self) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Symplectic product `x_p·z_q + z_p·x_q (mod 2)`; caller checks sizes.
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // Z^{z1} X^{x2} = (-1)^{z1·x2} X^{x2} Z^{z1}
        let swap = self.z.and_count(&other.x);
        let phase = (self.phase_exp as usize + other.phase_exp as usize + 2 * swap) & 3;
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        Self {
            n_qubits: self.n_qubits,
            x,
            z,
            phase_exp: phase as u8,
        }
    }

    /// Places this operator on `target` qubits of a larger register.
    pub fn embed(&self, n_total: usize, target: &[usize]) -> Result<Self> {
        if target.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: target.len(),
            });
        }
        let mut x = BitVec::zeros(n_total);
        let mut z = BitVec::zeros(n_total);
        for (local, &global) in target.iter().enumerate() {
            if global >= n_total {
                return Err(Error::InvalidParameter(format!(
                    "qubit {} outside a {n_total}-qubit register",
                    global + 1
                )));
            }
            x.set(global, self.x.get(local));
            z.set(global, self.z.get(local));
        }
        Self::from_bits(x, z, 0).map(|mut p| {
            p.phase_exp = ((self.string_sign() as usize + p.y_count()) & 3) as u8;
            p
        })
    }

    /// All `4^n` Hermitian `+` Paulis on `n` qubits in lexicographic string
    /// order with `I < X < Y < Z` and qubit 1 most significant.
    pub fn enumerate_all(n_qubits: usize) -> impl Iterator<Item = PauliOperator> {
        let count = 1u64 << (2 * n_qubits);
        (0..count).map(move |mut code| {
            let mut p = PauliOperator::identity(n_qubits);
            for q in (0..n_qubits).rev() {
                let letter = match code & 3 {
                    0 => Pauli::I,
                    1 => Pauli::X,
                    2 => Pauli::Y,
                    _ => Pauli::Z,
                };
                code >>= 2;
                let (x, z) = letter.bits();
                p.x.set(q, x);
                p.z.set(q, z);
            }
            p.phase_exp = (p.y_count() & 3) as u8;
            p
        })
    }
}

fn check_same_size(p: &PauliOperator, q: &PauliOperator) -> Result<()> {
    if p.n_qubits != q.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: p.n_qubits,
            found: q.n_qubits,
        });
    }
    Ok(())
}

/// Exact group product `p · q` with the phase tracked mod 4.
pub fn multiply(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    check_same_size(p, q)?;
    Ok(p.mul_unchecked(q))
}

/// `true` iff `p` and `q` commute.
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    check_same_size(p, q)?;
    Ok(!p.anticommutes_unchecked(q))
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.string_sign() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.n_qubits {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::PauliParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let (sign, body) = if let Some(rest) = trimmed.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = trimmed.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = trimmed.strip_prefix("\u{2212}i") {
            (3, rest)
        } else if let Some(rest) = trimmed.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = trimmed.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = trimmed.strip_prefix('\u{2212}') {
            (2, rest)
        } else {
            (0, trimmed)
        };
        if body.is_empty() {
            return Err(err("no Pauli letters"));
        }
        let n = body.chars().count();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(err(&format!("unexpected character {c:?}"))),
            };
            let (bx, bz) = p.bits();
            x.set(q, bx);
            z.set(q, bz);
        }
        let mut p = PauliOperator::from_bits(x, z, 0)?;
        p.phase_exp = ((sign + p.y_count()) & 3) as u8;
        Ok(p)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        for q in PauliOperator::enumerate_all(2) {
            let id = PauliOperator::identity(2);
            assert_eq!(multiply(&id, &q).unwrap(), q);
            assert_eq!(multiply(&q, &id).unwrap(), q);
        }
    }

    #[test]
    fn x_squared_is_identity() {
        let x = p("X");
        let xx = multiply(&x, &x).unwrap();
        assert!(xx.is_identity());
        assert_eq!(xx.phase_exp(), 0);
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let xz = multiply(&p("X"), &p("Z")).unwrap();
        assert_eq!(xz.to_string(), "-iY");
        assert!(!xz.is_hermitian());
        assert_eq!(xz.to_hermitian(), p("Y"));
    }

    #[test]
    fn hermitian_squares_to_identity() {
        for q in PauliOperator::enumerate_all(3) {
            let sq = multiply(&q, &q).unwrap();
            assert!(sq.is_identity());
            assert_eq!(sq.phase_exp(), 0, "{q}");
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(!commutes(&p("X"), &p("Z")).unwrap());
        assert!(commutes(&p("XX"), &p("ZZ")).unwrap());
        assert!(commutes(&p("XI"), &p("IZ")).unwrap());
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(matches!(
            multiply(&p("X"), &p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(commutes(&p("X"), &p("XX")).is_err());
    }

    #[test]
    fn string_round_trip() {
        for s in ["XZIIY", "-X", "+iYZ", "-iZ", "I", "YYY", "-YIY"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("+XZ").to_string(), "XZ");
        assert_eq!(p("\u{2212}iZ").to_string(), "-iZ");
        assert!("XQ".parse::<PauliOperator>().is_err());
        assert!("-".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn enumeration_order() {
        let all: Vec<String> = PauliOperator::enumerate_all(1).map(|q| q.to_string()).collect();
        assert_eq!(all, ["I", "X", "Y", "Z"]);
        let two: Vec<String> = PauliOperator::enumerate_all(2).take(6).map(|q| q.to_string()).collect();
        assert_eq!(two, ["II", "IX", "IY", "IZ", "XI", "XX"]);
    }

    #[test]
    fn embedding_keeps_sign() {
        let e = p("-XY").embed(4, &[3, 1]).unwrap();
        assert_eq!(e.to_string(), "-IYIX");
    }
}
