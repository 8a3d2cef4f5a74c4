//! Independent generator sets of Pauli subgroups (phases modded out) and the
//! GF(2) constructions on them: extraction, centralizers, intersections.

use serde::{Deserialize, Serialize};

use super::gf2::{self, BitVec, EchelonBasis};
use super::PauliOperator;
use crate::error::{Error, Result};

/// Ordered, GF(2)-independent list of Hermitian Pauli generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGeneratorSet", into = "RawGeneratorSet")]
pub struct GeneratorSet {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
}

#[derive(Serialize, Deserialize)]
struct RawGeneratorSet {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
}

impl TryFrom<RawGeneratorSet> for GeneratorSet {
    type Error = Error;
    fn try_from(raw: RawGeneratorSet) -> Result<Self> {
        GeneratorSet::new(raw.n_qubits, raw.generators)
    }
}

impl From<GeneratorSet> for RawGeneratorSet {
    fn from(g: GeneratorSet) -> Self {
        RawGeneratorSet {
            n_qubits: g.n_qubits,
            generators: g.generators,
        }
    }
}

impl GeneratorSet {
    /// Validates size, hermiticity, pairwise (anti)commutation and independence.
    pub fn new(n_qubits: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        let mut basis = EchelonBasis::new(2 * n_qubits);
        for (i, g) in generators.iter().enumerate() {
            if g.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: g.n_qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidGenerators(format!(
                    "generator {} ({g}) is not Hermitian",
                    i + 1
                )));
            }
            if !basis.insert(&g.symplectic()) {
                return Err(Error::InvalidGenerators(format!(
                    "generator {} ({g}) is a product of earlier generators",
                    i + 1
                )));
            }
        }
        // Pauli pairs always commute or anticommute; a phase bug would show
        // up here as gh != ±hg.
        for (i, g) in generators.iter().enumerate() {
            for h in &generators[i + 1..] {
                let gh = g.mul_unchecked(h);
                let hg = h.mul_unchecked(g);
                let diff = (gh.phase_exp() + 4 - hg.phase_exp()) & 3;
                if diff & 1 == 1 {
                    return Err(Error::InvalidGenerators(format!(
                        "{g} and {h} neither commute nor anticommute"
                    )));
                }
            }
        }
        Ok(Self {
            n_qubits,
            generators,
        })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            generators: Vec::new(),
        }
    }

    /// Parses one Pauli string per entry.
    pub fn parse(n_qubits: usize, strings: &[&str]) -> Result<Self> {
        let gens = strings
            .iter()
            .map(|s| s.parse::<PauliOperator>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, gens)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PauliOperator> {
        self.generators.iter()
    }

    pub fn into_generators(self) -> Vec<PauliOperator> {
        self.generators
    }

    pub fn rows(&self) -> Vec<BitVec> {
        self.generators.iter().map(|g| g.symplectic()).collect()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn basis(&self) -> EchelonBasis {
        let mut b = EchelonBasis::new(2 * self.n_qubits);
        for r in self.rows() {
            b.insert(&r);
        }
        b
    }

    /// Whether `p` lies in the generated subgroup modulo phase.
    pub fn span_contains(&self, p: &PauliOperator) -> bool {
        p.n_qubits() == self.n_qubits && self.basis().contains(&p.symplectic())
    }

    /// Equality of generated subgroups modulo phase.
    pub fn same_span(&self, other: &GeneratorSet) -> bool {
        if self.n_qubits != other.n_qubits || self.len() != other.len() {
            return false;
        }
        let b = self.basis();
        other.rows().iter().all(|r| b.contains(r))
    }

    /// Copy without the generator at `index`.
    pub fn without(&self, index: usize) -> GeneratorSet {
        let mut generators = self.generators.clone();
        generators.remove(index);
        GeneratorSet {
            n_qubits: self.n_qubits,
            generators,
        }
    }

    /// Concatenation, failing if the result is not independent.
    pub fn union(&self, other: &GeneratorSet) -> Result<GeneratorSet> {
        let mut all = self.generators.clone();
        all.extend(other.generators.iter().cloned());
        GeneratorSet::new(self.n_qubits, all)
    }

    /// Every element commutes with every generator of `other`.
    pub fn commutes_with(&self, other: &GeneratorSet) -> bool {
        self.generators.iter().all(|g| {
            other
                .generators
                .iter()
                .all(|h| !g.anticommutes_unchecked(h))
        })
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a PauliOperator;
    type IntoIter = std::slice::Iter<'a, PauliOperator>;
    fn into_iter(self) -> Self::IntoIter {
        self.generators.iter()
    }
}

/// Greedy GF(2)-independent subset of `elements`, in input order.
///
/// Phases are discarded when testing dependence; kept generators are
/// returned as Hermitian representatives.
pub fn extract_generators(n_qubits: usize, elements: &[PauliOperator]) -> Result<GeneratorSet> {
    let mut basis = EchelonBasis::new(2 * n_qubits);
    let mut kept = Vec::new();
    for e in elements {
        if e.n_qubits() != n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                found: e.n_qubits(),
            });
        }
        if basis.insert(&e.symplectic()) {
            kept.push(e.to_hermitian());
        }
    }
    GeneratorSet::new(n_qubits, kept)
}

/// Generators of the subgroup of `P_n` commuting with every element of
/// `omega`; `2n - |omega|` of them.
pub fn centralizer(omega: &GeneratorSet) -> GeneratorSet {
    let n = omega.n_qubits();
    // v commutes with g iff v_x·g_z + v_z·g_x = 0, i.e. v ⟂ (g_z | g_x).
    let swapped: Vec<BitVec> = omega
        .iter()
        .map(|g| g.z_bits().concat(g.x_bits()))
        .collect();
    let gens = gf2::null_space(&swapped, 2 * n)
        .iter()
        .map(PauliOperator::from_symplectic)
        .collect();
    GeneratorSet::new(n, gens).expect("null-space basis is independent")
}

/// True iff the subgroups generated by `a` and `b` meet only in the identity
/// (modulo phase).
pub fn subgroup_intersection_trivial(a: &GeneratorSet, b: &GeneratorSet) -> Result<bool> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.n_qubits(),
            found: b.n_qubits(),
        });
    }
    let mut rows = a.rows();
    rows.extend(b.rows());
    Ok(gf2::rank(&rows) == a.rank() + b.rank())
}
