//! Ideal-pulse DD schedules built from a generator set.
//!
//! A sequence is a list of intervals; interval `j` is free evolution for
//! `fraction_j · T` followed by `pulse_j`. Pulses are stored as bit masks
//! over the generator list (bit `i` set means `Ω_i` is a factor), so the
//! toggling frame of interval `j` is the XOR of all earlier masks. Phases
//! of pulses are global and not tracked.

mod build;
mod json;

use serde::{Deserialize, Serialize};

use crate::ddgs::{DdgsResult, Family};
use crate::error::{Error, Result};
use crate::pauli::gf2::{self, BitVec};
use crate::pauli::{centralizer, GeneratorSet, PauliOperator};

pub use build::{cdd_sequence, nudd_sequence, udd_fractions, MAX_INTERVALS};

/// Sum of fractions must be within this of 1.
pub const FRACTION_SUM_TOLERANCE: f64 = 1e-12;
/// First-order filter sums below this count as cancelled.
pub const FILTER_TOLERANCE: f64 = 1e-12;
/// Masks are `u64`.
pub const MAX_GENERATORS: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceFamily {
    Cdd,
    Nudd,
    Custom,
}

impl SequenceFamily {
    pub fn cost_family(self) -> Option<Family> {
        match self {
            SequenceFamily::Cdd => Some(Family::Cdd),
            SequenceFamily::Nudd => Some(Family::Nudd),
            SequenceFamily::Custom => None,
        }
    }
}

impl From<Family> for SequenceFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Cdd => SequenceFamily::Cdd,
            Family::Nudd => SequenceFamily::Nudd,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Interval {
    pub fraction: f64,
    /// Generators whose product is applied after this interval; 0 is no pulse.
    pub pulse: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence {
    family: SequenceFamily,
    order: u32,
    generators: GeneratorSet,
    intervals: Vec<Interval>,
}

impl PulseSequence {
    /// Validates fractions, masks and closure.
    pub fn new(
        family: SequenceFamily,
        order: u32,
        generators: GeneratorSet,
        intervals: Vec<Interval>,
    ) -> Result<Self> {
        if generators.len() > MAX_GENERATORS {
            return Err(Error::ResourceLimit(format!(
                "{} generators, pulse masks hold {MAX_GENERATORS}",
                generators.len()
            )));
        }
        if intervals.is_empty() {
            return Err(Error::SequenceFormat("no intervals".into()));
        }
        let allowed = if generators.len() == 64 {
            u64::MAX
        } else {
            (1u64 << generators.len()) - 1
        };
        let mut net = 0u64;
        for (j, iv) in intervals.iter().enumerate() {
            if !(iv.fraction > 0.0 && iv.fraction <= 1.0) {
                return Err(Error::SequenceFormat(format!(
                    "interval {} has fraction {} outside (0, 1]",
                    j + 1,
                    iv.fraction
                )));
            }
            if iv.pulse & !allowed != 0 {
                return Err(Error::SequenceFormat(format!(
                    "interval {} uses a generator index beyond {}",
                    j + 1,
                    generators.len()
                )));
            }
            net ^= iv.pulse;
        }
        let sum = neumaier_sum(intervals.iter().map(|iv| iv.fraction));
        if (sum - 1.0).abs() > FRACTION_SUM_TOLERANCE {
            return Err(Error::SequenceFormat(format!("fractions sum to {sum}, not 1")));
        }
        if net != 0 {
            return Err(Error::SequenceFormat(
                "pulse product is not the identity; the sequence does not close".into(),
            ));
        }
        Ok(Self {
            family,
            order,
            generators,
            intervals,
        })
    }

    /// A single free interval: no decoupling at all.
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            family: SequenceFamily::Custom,
            order: 0,
            generators: GeneratorSet::empty(n_qubits),
            intervals: vec![Interval {
                fraction: 1.0,
                pulse: 0,
            }],
        }
    }

    pub fn family(&self) -> SequenceFamily {
        self.family
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn n_qubits(&self) -> usize {
        self.generators.n_qubits()
    }

    pub fn generator_order(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of nonzero pulses.
    pub fn pulse_count(&self) -> usize {
        self.intervals.iter().filter(|iv| iv.pulse != 0).count()
    }

    /// Product of the generators selected by `mask`, in index order, as a
    /// Hermitian representative.
    pub fn mask_operator(&self, mask: u64) -> PauliOperator {
        let mut out = PauliOperator::identity(self.n_qubits());
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out = out.mul_unchecked(&self.generators.generators()[i]);
            m &= m - 1;
        }
        out.to_hermitian()
    }

    /// Pulse after each interval; `None` where there is no pulse.
    pub fn pulses(&self) -> impl Iterator<Item = Option<PauliOperator>> + '_ {
        self.intervals
            .iter()
            .map(|iv| (iv.pulse != 0).then(|| self.mask_operator(iv.pulse)))
    }

    /// Toggling-frame mask of each interval: XOR of all earlier pulses.
    pub fn frame_masks(&self) -> Vec<u64> {
        let mut acc = 0u64;
        self.intervals
            .iter()
            .map(|iv| {
                let g = acc;
                acc ^= iv.pulse;
                g
            })
            .collect()
    }

    /// Bit `i` set iff `e` anticommutes with generator `i`.
    pub fn anticommutation_mask(&self, e: &PauliOperator) -> u64 {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.anticommutes_unchecked(e))
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    }

    /// `Σ_t τ_j` per toggling frame, indexed by frame mask. Needs at most
    /// 24 generators.
    fn frame_weights(&self) -> Result<Vec<f64>> {
        let m = self.generators.len();
        if m > 24 {
            return Err(Error::ResourceLimit(format!(
                "frame histogram over {m} generators is too large"
            )));
        }
        let mut h = vec![0.0; 1 << m];
        for (g, iv) in self.frame_masks().into_iter().zip(&self.intervals) {
            h[g as usize] += iv.fraction;
        }
        Ok(h)
    }
}

/// Compensated summation, so residual fractions are accurate to an ulp.
pub(crate) fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Cumulative pulse products `g_j`, one per interval, starting at identity.
/// The toggling-frame Hamiltonian on interval `j` is `g_j† H g_j`.
pub fn toggling_pulse_products(seq: &PulseSequence) -> Vec<PauliOperator> {
    seq.frame_masks()
        .into_iter()
        .map(|g| seq.mask_operator(g))
        .collect()
}

/// `Σ_j τ_j s_j(E)` with `s_j = ±1` as `g_j† E g_j = ±E`. Zero exactly when
/// `E` cancels at first order.
pub fn first_order_residual(seq: &PulseSequence, e: &PauliOperator) -> f64 {
    let a = seq.anticommutation_mask(e);
    let terms = seq
        .frame_masks()
        .into_iter()
        .zip(&seq.intervals)
        .map(|(g, iv)| {
            if (g & a).count_ones() & 1 == 1 {
                -iv.fraction
            } else {
                iv.fraction
            }
        });
    neumaier_sum(terms)
}

/// In-place Walsh-Hadamard transform: `out[t] = Σ_g h[g] (-1)^{|t ∧ g|}`.
fn walsh_hadamard(h: &mut [f64]) {
    let mut len = 1;
    while len < h.len() {
        for start in (0..h.len()).step_by(2 * len) {
            for i in start..start + len {
                let (a, b) = (h[i], h[i + len]);
                h[i] = a + b;
                h[i + len] = a - b;
            }
        }
        len *= 2;
    }
}

/// Exact first-order cancellation for every Pauli outside the centralizer
/// of `omega`.
///
/// A Pauli `E` only enters through `t = anticommutation_mask(E)`, and its
/// first-order sum is the Walsh-Hadamard coefficient `W(t)` of the frame
/// weights. The check passes iff every `E` with `W(t(E)) ≠ 0` lies in
/// `C(omega)`.
pub fn first_order_filter_check(seq: &PulseSequence, omega: &DdgsResult) -> Result<bool> {
    if omega.n_qubits() != seq.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: seq.n_qubits(),
            found: omega.n_qubits(),
        });
    }
    let mut w = seq.frame_weights()?;
    walsh_hadamard(&mut w);

    // t = 0: every E commuting with the whole sequence survives.
    let seq_centralizer = centralizer(seq.generator_order());
    if !seq_centralizer.commutes_with(&omega.omega) {
        return Ok(false);
    }
    let n = seq.n_qubits();
    let rows: Vec<BitVec> = seq
        .generator_order()
        .iter()
        .map(|g| g.z_bits().concat(g.x_bits()))
        .collect();
    for (t, wt) in w.iter().enumerate().skip(1) {
        if wt.abs() <= FILTER_TOLERANCE {
            continue;
        }
        let rhs: Vec<bool> = (0..rows.len()).map(|i| t >> i & 1 == 1).collect();
        let Some(v) = gf2::solve(&rows, &rhs, 2 * n) else {
            continue;
        };
        let e = PauliOperator::from_symplectic(&v);
        if omega.generators().iter().any(|g| g.anticommutes_unchecked(&e)) {
            return Ok(false);
        }
    }
    Ok(true)
}
