//! Stabilizer and subsystem codes: definition, validation, catalog entries,
//! cat-state ancillas, and concatenation.

pub mod catalog;
pub mod concat;
pub mod format;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::dense::{identity, CMatrix, PauliAction, C64};
use crate::pauli::gf2::rank;
use crate::pauli::{GeneratorSet, PauliOperator};

pub use catalog::{cat_state_stabilizers, catalog, lookup};
pub use concat::{concatenate, count_parameters, ConcatCounts, ConcatenatedCode};

/// Largest code for which `validate` also checks the dense stabilizer projector.
pub const DENSE_PROJECTOR_LIMIT: usize = 9;

/// A logical or gauge qubit's conjugate pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugatePair {
    pub x: PauliOperator,
    pub z: PauliOperator,
}

impl ConjugatePair {
    pub fn new(x: PauliOperator, z: PauliOperator) -> Self {
        Self { x, z }
    }

    pub fn parse(x: &str, z: &str) -> Result<Self> {
        Ok(Self::new(x.parse()?, z.parse()?))
    }
}

/// An `[[n,k,r,d]]` subsystem code (`r = 0` for subspace codes).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Label only; never computed.
    pub d: usize,
    pub stabilizers: Vec<PauliOperator>,
    pub logicals: Vec<ConjugatePair>,
    pub gauges: Vec<ConjugatePair>,
}

/// Every violated code invariant; empty on success.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }
}

impl CodeSpec {
    /// Number of stabilizer generators the parameters call for, `n - k - r`.
    pub fn expected_stabilizer_count(&self) -> usize {
        self.n.saturating_sub(self.k + self.r)
    }

    /// Builds and validates, failing with the full report on violations.
    pub fn validated(self) -> Result<Self> {
        let report = validate(&self);
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::InvalidCode(report.violations))
        }
    }

    pub fn stabilizer_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(self.n, self.stabilizers.clone())
    }

    /// `X_L^(1), Z_L^(1), …, X_L^(k), Z_L^(k)`.
    pub fn logical_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(self.n, flatten(&self.logicals))
    }

    pub fn gauge_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(self.n, flatten(&self.gauges))
    }

    /// Stabilizers followed by gauge generators.
    pub fn stabilizer_gauge_set(&self) -> Result<GeneratorSet> {
        let mut all = self.stabilizers.clone();
        all.extend(flatten(&self.gauges));
        GeneratorSet::new(self.n, all)
    }

    /// Parameter label `[[n,k,r,d]]`.
    pub fn label(&self) -> String {
        format!("[[{},{},{},{}]]", self.n, self.k, self.r, self.d)
    }
}

pub(crate) fn flatten(pairs: &[ConjugatePair]) -> Vec<PauliOperator> {
    pairs
        .iter()
        .flat_map(|p| [p.x.clone(), p.z.clone()])
        .collect()
}

fn anti(a: &PauliOperator, b: &PauliOperator) -> bool {
    a.anticommutes_unchecked(b)
}

/// Checks every code invariant without stopping at the first failure.
pub fn validate(code: &CodeSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = code.n;

    let all_ops = code
        .stabilizers
        .iter()
        .chain(code.logicals.iter().flat_map(|p| [&p.x, &p.z]))
        .chain(code.gauges.iter().flat_map(|p| [&p.x, &p.z]));
    let mut sized = true;
    for op in all_ops {
        if op.n_qubits() != n {
            report.push(format!("{op} acts on {} qubits, code has {n}", op.n_qubits()));
            sized = false;
        } else if !op.is_hermitian() {
            report.push(format!("{op} is not Hermitian"));
        }
    }
    if code.k + code.r >= n {
        report.push(format!("k + r = {} must be below n = {n}", code.k + code.r));
    }
    if code.stabilizers.len() != code.expected_stabilizer_count() {
        report.push(format!(
            "{} stabilizer generators, expected n - k - r = {}",
            code.stabilizers.len(),
            code.expected_stabilizer_count()
        ));
    }
    if code.logicals.len() != code.k {
        report.push(format!("{} logical pairs, expected k = {}", code.logicals.len(), code.k));
    }
    if code.gauges.len() != code.r {
        report.push(format!("{} gauge pairs, expected r = {}", code.gauges.len(), code.r));
    }
    if !sized {
        return report;
    }

    for (i, s) in code.stabilizers.iter().enumerate() {
        for (j, t) in code.stabilizers.iter().enumerate().skip(i + 1) {
            if anti(s, t) {
                report.push(format!("stabilizers {} ({s}) and {} ({t}) anticommute", i + 1, j + 1));
            }
        }
        for (role, pairs) in [("logical", &code.logicals), ("gauge", &code.gauges)] {
            for (j, pair) in pairs.iter().enumerate() {
                for (tag, op) in [("X", &pair.x), ("Z", &pair.z)] {
                    if anti(s, op) {
                        report.push(format!(
                            "stabilizer {} ({s}) anticommutes with {role} {tag}{} ({op})",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
    }

    // Logical and gauge pairs together must form symplectic pairs.
    let pairs: Vec<(String, &ConjugatePair)> = code
        .logicals
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("logical {}", i + 1), p))
        .chain(
            code.gauges
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("gauge {}", i + 1), p)),
        )
        .collect();
    for (a, (name_a, pa)) in pairs.iter().enumerate() {
        if !anti(&pa.x, &pa.z) {
            report.push(format!("{name_a}: X ({}) and Z ({}) commute", pa.x, pa.z));
        }
        for (name_b, pb) in pairs.iter().skip(a + 1) {
            for (ta, oa) in [("X", &pa.x), ("Z", &pa.z)] {
                for (tb, ob) in [("X", &pb.x), ("Z", &pb.z)] {
                    if anti(oa, ob) {
                        report.push(format!("{name_a} {ta} anticommutes with {name_b} {tb}"));
                    }
                }
            }
        }
    }

    let mut rows: Vec<_> = code.stabilizers.iter().map(|s| s.symplectic()).collect();
    rows.extend(flatten(&code.logicals).iter().map(|p| p.symplectic()));
    rows.extend(flatten(&code.gauges).iter().map(|p| p.symplectic()));
    let total = rows.len();
    let rk = rank(&rows);
    if rk != total {
        report.push(format!(
            "stabilizer, logical and gauge generators are dependent (rank {rk} of {total})"
        ));
    }

    if report.is_ok() && n <= DENSE_PROJECTOR_LIMIT {
        if let Some(msg) = projector_check(code) {
            report.push(msg);
        }
    }
    report
}

/// The product of `(I + S)/2` over stabilizers must be a rank-`2^{k+r}`
/// projector.
fn projector_check(code: &CodeSpec) -> Option<String> {
    let d = 1usize << code.n;
    let actions: Vec<PauliAction> = code.stabilizers.iter().map(|s| PauliAction::new(s, 0)).collect();
    let apply = |m: &CMatrix| {
        actions.iter().fold(m.clone(), |acc, a| {
            let moved = a.left_mul(&acc);
            (acc + moved) * C64::new(0.5, 0.0)
        })
    };
    let proj = apply(&identity(d));
    let square_err = (apply(&proj) - &proj).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let trace = proj.trace().re;
    let expected = (1u64 << (code.k + code.r)) as f64;
    if square_err > 1e-9 {
        Some(format!("stabilizer projector is not idempotent (error {square_err:e})"))
    } else if (trace - expected).abs() > 1e-6 {
        Some(format!("stabilizer projector has rank {trace}, expected {expected}"))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_steane_is_flagged() {
        let mut code = catalog("steane", None).unwrap();
        code.stabilizers[0] = code.logicals[0].x.clone();
        let report = validate(&code);
        assert!(!report.is_ok());
        assert!(report.violations.iter().any(|v| v.contains("anticommutes")));
        assert!(report.violations.iter().any(|v| v.contains("dependent")));
    }

    #[test]
    fn wrong_stabilizer_count_is_flagged() {
        let mut code = catalog("steane", None).unwrap();
        code.stabilizers.pop();
        let report = validate(&code);
        assert!(report.violations.iter().any(|v| v.contains("6")));
        assert!(matches!(code.validated(), Err(Error::InvalidCode(_))));
    }

    #[test]
    fn negative_stabilizer_pair_fails_projector_or_rank() {
        let mut code = catalog("repetition", Some(3)).unwrap();
        code.stabilizers[1] = "-ZZI".parse().unwrap();
        assert!(!validate(&code).is_ok());
    }

    #[test]
    fn report_is_exhaustive() {
        let mut code = catalog("four_two_two", None).unwrap();
        code.logicals[0].z = "ZZII".parse().unwrap();
        code.gauges.push(ConjugatePair::parse("XIII", "ZIII").unwrap());
        let report = validate(&code);
        assert!(report.violations.len() >= 3, "{:?}", report.violations);
    }
}
