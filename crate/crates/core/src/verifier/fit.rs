//! Decoupling-order measurement: residual `T‖H_r‖` over a grid of total
//! times, fitted on log-log axes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evolve::{effective_hamiltonian, evolve_hamiltonian};
use super::noise::{NoiseModel, NoiseParams};
use super::norms::hermitian_norm;
use super::syndrome::SyndromeBasis;
use super::twirl::moos_decompose;
use crate::codes::CodeSpec;
use crate::ddgs::DdgsResult;
use crate::error::{Error, Result};
use crate::pauli::dense::DenseLimit;
use crate::sequences::PulseSequence;

/// `slope_pass ⇔ slope ≥ (N + 1) - SLOPE_MARGIN`.
pub const SLOPE_MARGIN: f64 = 0.35;
/// Leakage passes with slope `≥ (N + 1) - LEAKAGE_SLOPE_MARGIN`.
pub const LEAKAGE_SLOPE_MARGIN: f64 = 0.3;
/// Largest allowed `T · max ‖Π_{s'} H_0 Π_s‖`.
pub const H0_LEAKAGE_BOUND: f64 = 1e-10;
/// Points below `FLOOR_RELATIVE · J` are saturated and left out of fits.
pub const FLOOR_RELATIVE: f64 = 1e-11;
/// Minimum decades spanned by the time grid.
pub const MIN_DECADES: f64 = 1.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Indices of grid points that entered the fit.
    pub used: Vec<usize>,
}

/// Least-squares line through `(log10 x, log10 y)` for `y ≥ floor`.
pub fn fit_loglog(xs: &[f64], ys: &[f64], floor: f64) -> Result<LogLogFit> {
    let used: Vec<usize> = (0..xs.len())
        .filter(|&i| ys[i] >= floor && ys[i] > 0.0 && xs[i] > 0.0)
        .collect();
    if used.len() < 3 {
        return Err(Error::TooFewPoints(used.len()));
    }
    let pts: Vec<(f64, f64)> = used.iter().map(|&i| (xs[i].log10(), ys[i].log10())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Numerical("fit needs distinct abscissae".into()));
    }
    let slope = sxy / sxx;
    Ok(LogLogFit {
        slope,
        intercept: my - slope * mx,
        used,
    })
}

/// `k` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..k)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (k - 1).max(1) as f64))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct FitOptions {
    /// Order to test against; defaults to the sequence's own order.
    pub target_order: Option<u32>,
    /// Adds syndrome-leakage checks for this code.
    pub code: Option<CodeSpec>,
    pub limit: Option<DenseLimit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceSummary {
    pub family: String,
    pub order: u32,
    pub n_qubits: usize,
    pub intervals: usize,
    pub pulses: usize,
    pub generator_order: Vec<String>,
}

impl From<&PulseSequence> for SequenceSummary {
    fn from(seq: &PulseSequence) -> Self {
        Self {
            family: serde_json::to_value(seq.family())
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            order: seq.order(),
            n_qubits: seq.n_qubits(),
            intervals: seq.len(),
            pulses: seq.pulse_count(),
            generator_order: seq.generator_order().iter().map(|g| g.to_string()).collect(),
        }
    }
}

/// Leakage series for a code, all scaled by `T` like the residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeakageSeries {
    pub code: String,
    pub heff_leakage: Vec<f64>,
    pub h0_leakage: Vec<f64>,
    pub h0_in_block_action: Vec<f64>,
    pub leakage_slope: Option<f64>,
    pub leakage_threshold: f64,
    pub leakage_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecouplingReport {
    pub sequence: SequenceSummary,
    pub noise: NoiseParams,
    pub omega: DdgsResult,
    pub target_order: u32,
    pub t_grid: Vec<f64>,
    /// `T ‖H_r^eff(T)‖` per grid point.
    pub residual_norms: Vec<f64>,
    /// The same quantity with no pulses.
    pub baseline_norms: Vec<f64>,
    pub floor: f64,
    pub fitted_slope: f64,
    pub points_used: usize,
    pub baseline_slope: Option<f64>,
    pub slope_threshold: f64,
    pub slope_pass: bool,
    pub syndrome: Option<LeakageSeries>,
    pub warnings: Vec<String>,
    pub sequence_echo: PulseSequence,
}

impl DecouplingReport {
    /// Slope criterion and, when a code was given, the leakage criterion.
    pub fn passed(&self) -> bool {
        self.slope_pass && self.syndrome.as_ref().is_none_or(|s| s.leakage_pass)
    }

    /// `T,residual,baseline,leakage` rows; leakage is empty without a code.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("T,residual,baseline,leakage\n");
        for i in 0..self.t_grid.len() {
            let leak = self
                .syndrome
                .as_ref()
                .map(|s| format!("{:e}", s.heff_leakage[i]))
                .unwrap_or_default();
            out.push_str(&format!(
                "{:e},{:e},{:e},{leak}\n",
                self.t_grid[i], self.residual_norms[i], self.baseline_norms[i]
            ));
        }
        out
    }
}

struct GridPoint {
    residual: f64,
    baseline: f64,
    leakage: Option<(f64, f64, f64)>,
}

fn check_grid(t_grid: &[f64], norm: f64) -> Result<()> {
    if t_grid.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "need at least 4 grid points, got {}",
            t_grid.len()
        )));
    }
    if t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("T grid must be positive and strictly increasing".into()));
    }
    let decades = (t_grid[t_grid.len() - 1] / t_grid[0]).log10();
    if decades < MIN_DECADES {
        return Err(Error::InvalidParameter(format!(
            "T grid spans {decades:.2} decades, need {MIN_DECADES}"
        )));
    }
    let top = t_grid[t_grid.len() - 1] * norm;
    if top >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::InvalidParameter(format!(
            "T‖H‖ = {top:.3} leaves the safe zone T‖H‖ < π/2"
        )));
    }
    Ok(())
}

/// Evolves under `seq` and under no pulses at each `T`, extracts `H_eff`,
/// twirls over `omega`, and fits the residual's log-log slope.
pub fn decoupling_order_fit(
    seq: &PulseSequence,
    model: &NoiseModel,
    omega: &DdgsResult,
    t_grid: &[f64],
    options: &FitOptions,
) -> Result<DecouplingReport> {
    if seq.n_qubits() != model.n_sys() || omega.n_qubits() != model.n_sys() {
        return Err(Error::DimensionMismatch {
            expected: model.n_sys(),
            found: if seq.n_qubits() != model.n_sys() {
                seq.n_qubits()
            } else {
                omega.n_qubits()
            },
        });
    }
    let h = model.hamiltonian();
    let norm = hermitian_norm(&h)?;
    check_grid(t_grid, norm)?;
    let limit = options.limit.unwrap_or_default();
    limit.check(model.n_sys() + model.n_bath())?;
    let syndrome = match &options.code {
        Some(code) if code.n != model.n_sys() => {
            return Err(Error::DimensionMismatch {
                expected: model.n_sys(),
                found: code.n,
            })
        }
        Some(code) => Some(SyndromeBasis::new(code, model.n_bath(), limit)?),
        None => None,
    };
    let idle = PulseSequence::identity(seq.n_qubits());
    let n_bath = model.n_bath();

    let points: Vec<GridPoint> = t_grid
        .par_iter()
        .map(|&t| -> Result<GridPoint> {
            let heff = effective_hamiltonian(&evolve_hamiltonian(seq, &h, n_bath, t)?, t)?;
            let (h0, hr) = moos_decompose(&heff, omega)?;
            let heff_idle = effective_hamiltonian(&evolve_hamiltonian(&idle, &h, n_bath, t)?, t)?;
            let (_, hr_idle) = moos_decompose(&heff_idle, omega)?;
            let leakage = match &syndrome {
                Some(basis) => {
                    let full = basis.check(&heff)?;
                    let zero = basis.check(&h0)?;
                    Some((t * full.max_leakage, t * zero.max_leakage, t * zero.max_in_block_action))
                }
                None => None,
            };
            Ok(GridPoint {
                residual: t * hermitian_norm(&hr)?,
                baseline: t * hermitian_norm(&hr_idle)?,
                leakage,
            })
        })
        .collect::<Result<_>>()?;

    let target_order = options.target_order.unwrap_or(seq.order());
    let floor = FLOOR_RELATIVE * model.params.norm_target;
    let residual_norms: Vec<f64> = points.iter().map(|p| p.residual).collect();
    let baseline_norms: Vec<f64> = points.iter().map(|p| p.baseline).collect();
    let mut warnings = Vec::new();

    let fit = fit_loglog(t_grid, &residual_norms, floor)?;
    if fit.used.len() < 4 {
        warnings.push(format!(
            "only {} of {} points lie above the floor {floor:e}",
            fit.used.len(),
            t_grid.len()
        ));
    }
    let baseline_slope = match fit_loglog(t_grid, &baseline_norms, floor) {
        Ok(f) => Some(f.slope),
        Err(e) => {
            warnings.push(format!("baseline fit: {e}"));
            None
        }
    };
    let slope_threshold = (target_order + 1) as f64 - SLOPE_MARGIN;

    let syndrome = options.code.as_ref().map(|code| {
        let heff_leakage: Vec<f64> = points.iter().map(|p| p.leakage.expect("code given").0).collect();
        let h0_leakage: Vec<f64> = points.iter().map(|p| p.leakage.expect("code given").1).collect();
        let h0_in_block_action = points.iter().map(|p| p.leakage.expect("code given").2).collect();
        let leakage_threshold = (target_order + 1) as f64 - LEAKAGE_SLOPE_MARGIN;
        let h0_ok = h0_leakage.iter().all(|&v| v <= H0_LEAKAGE_BOUND);
        let (leakage_slope, slope_ok) = match fit_loglog(t_grid, &heff_leakage, floor) {
            Ok(f) => (Some(f.slope), f.slope >= leakage_threshold),
            Err(e) => {
                let all_below = heff_leakage.iter().all(|&v| v < floor);
                warnings.push(format!("leakage fit: {e}"));
                (None, all_below)
            }
        };
        LeakageSeries {
            code: code.name.clone(),
            heff_leakage,
            h0_leakage,
            h0_in_block_action,
            leakage_slope,
            leakage_threshold,
            leakage_pass: h0_ok && slope_ok,
        }
    });

    Ok(DecouplingReport {
        sequence: SequenceSummary::from(seq),
        noise: model.params.clone(),
        omega: omega.clone(),
        target_order,
        t_grid: t_grid.to_vec(),
        residual_norms,
        baseline_norms,
        floor,
        fitted_slope: fit.slope,
        points_used: fit.used.len(),
        baseline_slope,
        slope_threshold,
        slope_pass: fit.slope >= slope_threshold,
        syndrome,
        warnings,
        sequence_echo: seq.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let xs = log_grid(1e-3, 1e-1, 6);
        assert!((xs[5] - 0.1).abs() < 1e-15);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        let f = fit_loglog(&xs, &ys, 0.0).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 3f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn floor_excludes_points() {
        let xs = log_grid(1e-3, 1e-1, 6);
        let ys: Vec<f64> = xs.iter().map(|x| x.powi(4)).collect();
        let f = fit_loglog(&xs, &ys, 1e-8).unwrap();
        assert_eq!(f.used, vec![3, 4, 5]);
        assert!(matches!(fit_loglog(&xs, &ys, 1e-6), Err(Error::TooFewPoints(2))));
    }

    #[test]
    fn grid_validation() {
        assert!(check_grid(&[1e-3, 1e-2, 1e-1], 1.0).is_err());
        assert!(check_grid(&[1e-2, 2e-2, 4e-2, 8e-2], 1.0).is_err());
        assert!(check_grid(&[1e-3, 1e-2, 1e-1, 2.0], 1.0).is_err());
        assert!(check_grid(&log_grid(1e-3, 1e-1, 6), 1.0).is_ok());
    }
}
