//! JSON form: fractions as 17-significant-digit decimal strings, pulses as
//! Pauli strings. Reading maps each pulse back onto the generator list.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Interval, PulseSequence, SequenceFamily};
use crate::error::{Error, Result};
use crate::pauli::gf2::BitVec;
use crate::pauli::{GeneratorSet, PauliOperator};

#[derive(Serialize, Deserialize)]
struct RawInterval {
    fraction: String,
    pulse: Option<PauliOperator>,
}

#[derive(Serialize, Deserialize)]
struct RawSequence {
    family: SequenceFamily,
    order: u32,
    n_qubits: usize,
    generator_order: Vec<PauliOperator>,
    intervals: Vec<RawInterval>,
}

/// `{:.16e}` round-trips every finite `f64`.
pub(crate) fn format_fraction(x: f64) -> String {
    format!("{x:.16e}")
}

/// Mask of generators whose product equals `p` modulo phase.
fn decompose(gens: &GeneratorSet, p: &PauliOperator) -> Option<u64> {
    // Echelon rows tagged with the generator combination they came from.
    let mut basis: Vec<(usize, BitVec, u64)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut v = g.symplectic();
        let mut tag = 1u64 << i;
        for (pivot, row, t) in &basis {
            if v.get(*pivot) {
                v.xor_assign(row);
                tag ^= t;
            }
        }
        let pivot = v.first_one()?;
        for (_, row, t) in basis.iter_mut() {
            if row.get(pivot) {
                row.xor_assign(&v);
                *t ^= tag;
            }
        }
        basis.push((pivot, v, tag));
    }
    let mut v = p.symplectic();
    let mut mask = 0u64;
    for (pivot, row, t) in &basis {
        if v.get(*pivot) {
            v.xor_assign(row);
            mask ^= t;
        }
    }
    v.is_zero().then_some(mask)
}

impl TryFrom<RawSequence> for PulseSequence {
    type Error = Error;
    fn try_from(raw: RawSequence) -> Result<Self> {
        let gens = GeneratorSet::new(raw.n_qubits, raw.generator_order)?;
        let intervals = raw
            .intervals
            .into_iter()
            .enumerate()
            .map(|(j, iv)| {
                let fraction: f64 = iv.fraction.trim().parse().map_err(|_| {
                    Error::SequenceFormat(format!("interval {}: bad fraction {:?}", j + 1, iv.fraction))
                })?;
                let pulse = match iv.pulse {
                    None => 0,
                    Some(p) if p.n_qubits() != raw.n_qubits => {
                        return Err(Error::DimensionMismatch {
                            expected: raw.n_qubits,
                            found: p.n_qubits(),
                        })
                    }
                    Some(p) => decompose(&gens, &p).ok_or_else(|| {
                        Error::SequenceFormat(format!(
                            "interval {}: pulse {p} is not generated by generator_order",
                            j + 1
                        ))
                    })?,
                };
                Ok(Interval { fraction, pulse })
            })
            .collect::<Result<Vec<_>>>()?;
        PulseSequence::new(raw.family, raw.order, gens, intervals)
    }
}

impl From<&PulseSequence> for RawSequence {
    fn from(seq: &PulseSequence) -> Self {
        Self {
            family: seq.family,
            order: seq.order,
            n_qubits: seq.n_qubits(),
            generator_order: seq.generators.generators().to_vec(),
            intervals: seq
                .intervals
                .iter()
                .zip(seq.pulses())
                .map(|(iv, pulse)| RawInterval {
                    fraction: format_fraction(iv.fraction),
                    pulse,
                })
                .collect(),
        }
    }
}

impl Serialize for PulseSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSequence::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PulseSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSequence::deserialize(d)?;
        PulseSequence::try_from(raw).map_err(serde::de::Error::custom)
    }
}
