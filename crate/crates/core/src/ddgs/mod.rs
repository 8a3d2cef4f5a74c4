//! Decoupling generator sets: full-Pauli, SLDD (stabilizers plus logicals),
//! concatenated SLDD, and disjoint unions, with the centralizer-based
//! decoupling test, costs and domain planning.

mod brute;
mod cost;

use serde::{Deserialize, Serialize};

use crate::codes::{flatten, CodeSpec, ConcatenatedCode};
use crate::error::{Error, Result};
use crate::pauli::gf2::EchelonBasis;
use crate::pauli::{centralizer, subgroup_intersection_trivial, BitVec, GeneratorSet, Pauli, PauliOperator};

pub use brute::{brute_force_minimal_ddgs, decoupling_set_of_size, MinimalSearch, BRUTE_FORCE_MAX_QUBITS};
pub use cost::{cost, plan_domains, CostModel, DomainPlan, Family};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DdgsKind {
    FullPauli,
    Sldd,
    ConcatenatedSldd,
    Union,
    Custom,
}

/// A generator set `Ω̂` together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDdgs", into = "RawDdgs")]
pub struct DdgsResult {
    pub omega: GeneratorSet,
    pub kind: DdgsKind,
    /// Code or domain identifiers, one per constituent.
    pub source: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawDdgs {
    kind: DdgsKind,
    n_qubits: usize,
    generators: Vec<PauliOperator>,
    size: usize,
    #[serde(default)]
    source: Vec<String>,
}

impl TryFrom<RawDdgs> for DdgsResult {
    type Error = Error;
    fn try_from(raw: RawDdgs) -> Result<Self> {
        if raw.size != raw.generators.len() {
            return Err(Error::InvalidGenerators(format!(
                "size {} but {} generators listed",
                raw.size,
                raw.generators.len()
            )));
        }
        Ok(Self {
            omega: GeneratorSet::new(raw.n_qubits, raw.generators)?,
            kind: raw.kind,
            source: raw.source,
        })
    }
}

impl From<DdgsResult> for RawDdgs {
    fn from(d: DdgsResult) -> Self {
        Self {
            kind: d.kind,
            n_qubits: d.omega.n_qubits(),
            size: d.omega.len(),
            generators: d.omega.into_generators(),
            source: d.source,
        }
    }
}

impl DdgsResult {
    pub fn custom(omega: GeneratorSet, source: impl Into<String>) -> Self {
        Self {
            omega,
            kind: DdgsKind::Custom,
            source: vec![source.into()],
        }
    }

    /// `|Ω̂|`, which equals the GF(2) rank since generators are independent.
    pub fn size(&self) -> usize {
        self.omega.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.omega.n_qubits()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        self.omega.generators()
    }
}

/// `{X_i, Z_i}` for every qubit, size `2n`.
pub fn full_pauli_ddgs(n: usize) -> Result<DdgsResult> {
    if n < 1 {
        return Err(Error::InvalidParameter("full Pauli DDGS needs n >= 1".into()));
    }
    let gens = (0..n)
        .flat_map(|q| {
            [
                PauliOperator::single(n, q, Pauli::X),
                PauliOperator::single(n, q, Pauli::Z),
            ]
        })
        .collect();
    Ok(DdgsResult {
        omega: GeneratorSet::new(n, gens)?,
        kind: DdgsKind::FullPauli,
        source: vec![format!("full({n})")],
    })
}

/// Stabilizer generators followed by `X_L^(1), Z_L^(1), …`; size `n + k - r`.
pub fn sldd(code: &CodeSpec) -> Result<DdgsResult> {
    let code = code.clone().validated()?;
    let mut gens = code.stabilizers.clone();
    gens.extend(flatten(&code.logicals));
    Ok(DdgsResult {
        omega: GeneratorSet::new(code.n, gens)?,
        kind: DdgsKind::Sldd,
        source: vec![code.name],
    })
}

/// Every level's stabilizers plus the top-level logical pair.
pub fn concatenated_sldd(cc: &ConcatenatedCode) -> Result<DdgsResult> {
    let mut gens = cc.all_stabilizers();
    gens.push(cc.top_logicals.x.clone());
    gens.push(cc.top_logicals.z.clone());
    let kind = if cc.levels == 1 {
        DdgsKind::Sldd
    } else {
        DdgsKind::ConcatenatedSldd
    };
    let source = if cc.levels == 1 {
        cc.base.name.clone()
    } else {
        format!("{}^{}", cc.base.name, cc.levels)
    };
    Ok(DdgsResult {
        omega: GeneratorSet::new(cc.n_physical, gens)?,
        kind,
        source: vec![source],
    })
}

/// Embeds each part on its listed joint qubits (`targets[j]` receives local
/// qubit `j`) and concatenates the generators.
pub fn union_compose(parts: &[(DdgsResult, Vec<usize>)], n_total: usize) -> Result<DdgsResult> {
    let mut owner = vec![false; n_total];
    let mut gens = Vec::new();
    let mut source = Vec::new();
    for (part, targets) in parts {
        if targets.len() != part.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: part.n_qubits(),
                found: targets.len(),
            });
        }
        for &q in targets {
            match owner.get_mut(q) {
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "qubit {} outside a {n_total}-qubit register",
                        q + 1
                    )))
                }
                Some(true) => return Err(Error::OverlappingSupports(q + 1)),
                Some(slot) => *slot = true,
            }
        }
        for g in part.generators() {
            gens.push(g.embed(n_total, targets)?);
        }
        source.extend(part.source.iter().cloned());
    }
    Ok(DdgsResult {
        omega: GeneratorSet::new(n_total, gens)?,
        kind: DdgsKind::Union,
        source,
    })
}

/// Places the parts on consecutive qubit ranges in list order.
pub fn union_side_by_side(parts: &[DdgsResult]) -> Result<DdgsResult> {
    let mut offset = 0;
    let mut placed = Vec::with_capacity(parts.len());
    for p in parts {
        placed.push((p.clone(), (offset..offset + p.n_qubits()).collect()));
        offset += p.n_qubits();
    }
    union_compose(&placed, offset)
}

/// Whether `omega` decouples the group generated by `error_basis`: the
/// centralizer of `omega` meets it only in the identity.
pub fn decouples(omega: &DdgsResult, error_basis: &GeneratorSet) -> Result<bool> {
    subgroup_intersection_trivial(&centralizer(&omega.omega), error_basis)
}

/// Generators of `P_n` modulo `⟨sub⟩`: single-qubit `X_i`, `Z_i` appended
/// greedily to a basis of `sub`, in qubit order.
pub fn complement_basis(sub: &GeneratorSet) -> GeneratorSet {
    let n = sub.n_qubits();
    let mut basis = EchelonBasis::new(2 * n);
    for r in sub.rows() {
        basis.insert(&r);
    }
    let mut out = Vec::new();
    for q in 0..n {
        for bit in [q, n + q] {
            let mut unit = BitVec::zeros(2 * n);
            unit.set(bit, true);
            if basis.insert(&unit) {
                out.push(PauliOperator::from_symplectic(&unit));
            }
        }
    }
    GeneratorSet::new(n, out).expect("unit vectors are independent Hermitian Paulis")
}

/// Error basis `B̂` for `omega`: generators of `P_n` modulo the centralizer.
/// Always `|B̂| = |Ω̂|`.
pub fn error_basis(omega: &DdgsResult) -> GeneratorSet {
    complement_basis(&centralizer(&omega.omega))
}
