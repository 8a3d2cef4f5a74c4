//! Verification run configs and the bundled presets.

use serde::{Deserialize, Serialize};

use sldd_core::codes::{concatenate, CodeSpec};
use sldd_core::ddgs::{concatenated_sldd, full_pauli_ddgs, sldd, DdgsResult};
use sldd_core::pauli::GeneratorSet;
use sldd_core::sequences::{cdd_sequence, nudd_sequence, PulseSequence};
use sldd_core::verifier::{log_grid, NoiseParams};
use sldd_core::Result;

use crate::load_code;

/// Named configs shipped with the binary; the files live in `configs/`.
pub const PRESETS: [(&str, &str); 3] = [
    ("echo-n1", include_str!("../configs/echo-n1.json")),
    ("rep3-sldd-cdd1", include_str!("../configs/rep3-sldd-cdd1.json")),
    ("identity-baseline", include_str!("../configs/identity-baseline.json")),
];

/// Where the generator set comes from. Exactly one field is set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_pauli: Option<usize>,
    /// Code reference or code file path; SLDD of that code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sldd: Option<String>,
    /// Concatenation depth for `sldd`; 1 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    /// Explicit Pauli strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

impl OmegaSpec {
    pub fn build(&self) -> Result<DdgsResult> {
        match (&self.full_pauli, &self.sldd, &self.generators) {
            (Some(n), None, None) => full_pauli_ddgs(*n),
            (None, Some(code), None) => {
                let code = load_code(code)?;
                match self.levels.unwrap_or(1) {
                    1 => sldd(&code),
                    r => concatenated_sldd(&concatenate(&code, r)?),
                }
            }
            (None, None, Some(gens)) => {
                let n = gens.first().map_or(0, |g| g.trim().len());
                let strs: Vec<&str> = gens.iter().map(String::as_str).collect();
                Ok(DdgsResult::custom(GeneratorSet::parse(n, &strs)?, gens.join(",")))
            }
            _ => Err(sldd_core::Error::InvalidParameter(
                "omega needs exactly one of full_pauli, sldd, generators".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Cdd,
    Nudd,
    /// No pulses at all.
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub n_bath: usize,
    pub locality: usize,
    pub norm: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: String,
    pub omega: OmegaSpec,
    pub sequence: SequenceKind,
    pub order: u32,
    /// Order the slope is judged against; the sequence order when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_order: Option<u32>,
    pub noise: NoiseSpec,
    pub t_grid: GridSpec,
    /// Code whose syndrome blocks are checked for leakage.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syndrome_code: Option<String>,
}

impl RunConfig {
    pub fn preset(name: &str) -> Option<RunConfig> {
        PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| serde_json::from_str(text).expect("bundled configs parse"))
    }

    pub fn sequence(&self, omega: &DdgsResult) -> Result<PulseSequence> {
        match self.sequence {
            SequenceKind::Cdd => cdd_sequence(omega, self.order),
            SequenceKind::Nudd => nudd_sequence(omega, self.order),
            SequenceKind::None => Ok(PulseSequence::identity(omega.n_qubits())),
        }
    }

    pub fn noise_params(&self, n_sys: usize) -> NoiseParams {
        NoiseParams {
            n_sys,
            n_bath: self.noise.n_bath,
            locality: self.noise.locality,
            norm_target: self.noise.norm,
            seed: self.noise.seed,
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        log_grid(self.t_grid.min, self.t_grid.max, self.t_grid.points)
    }

    pub fn code(&self) -> Result<Option<CodeSpec>> {
        self.syndrome_code.as_deref().map(load_code).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_and_build() {
        for (name, _) in PRESETS {
            let cfg = RunConfig::preset(name).unwrap();
            assert_eq!(cfg.name, name);
            let omega = cfg.omega.build().unwrap();
            cfg.sequence(&omega).unwrap();
            assert_eq!(cfg.grid().len(), cfg.t_grid.points);
        }
    }

    #[test]
    fn omega_needs_one_source() {
        let both = OmegaSpec {
            full_pauli: Some(1),
            generators: Some(vec!["X".into()]),
            ..Default::default()
        };
        assert!(both.build().is_err());
        assert!(OmegaSpec::default().build().is_err());
    }
}
