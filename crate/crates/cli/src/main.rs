//! `sldd`: catalog, validation, generator sets, cost tables, sequences,
//! verification runs and domain planning.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
//! 3 resource refusal.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use sldd_core::codes::{count_parameters, format::parse_code, lookup, validate, CodeSpec};
use sldd_core::ddgs::{cost, plan_domains, sldd, CostModel, DdgsResult, DomainPlan, Family};
use sldd_core::pauli::dense::DenseLimit;
use sldd_core::sequences::{cdd_sequence, nudd_sequence, PulseSequence};
use sldd_core::verifier::{decoupling_order_fit, DecouplingReport, FitOptions, NoiseModel};
use sldd_core::Error;

use config::{RunConfig, PRESETS};

/// Environment override for the dense-matrix qubit limit.
const DENSE_LIMIT_VAR: &str = "SLDD_DENSE_LIMIT";
/// Largest `|Ω̂|` for which `cost` prints exact integers.
const MAX_COST_EXPONENT: u64 = 100_000;

#[derive(Parser)]
#[command(name = "sldd", version, about = "Decoupling generator sets for stabilizer codes")]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Noise seed; overrides the config's seed in `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog codes with their SLDD and full-Pauli sizes.
    Catalog,
    /// Check a catalog code or a code file.
    Validate {
        /// Catalog reference such as `steane` or `bacon_shor(3)`, or a file path.
        code: String,
    },
    /// Build a decoupling generator set.
    Ddgs(OmegaArgs),
    /// SLDD versus full-Pauli cost.
    Cost {
        code: String,
        #[arg(long, default_value_t = 1)]
        levels: u32,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Emit a pulse sequence as JSON.
    Sequence {
        #[command(flatten)]
        omega: OmegaArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Write the sequence here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a decoupling-order verification.
    Verify {
        /// Config file.
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Bundled config: echo-n1, rep3-sldd-cdd1 or identity-baseline.
        #[arg(long)]
        preset: Option<String>,
        /// Directory for `<name>.json` and `<name>.csv`.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Largest concatenated domain within a polynomial cost budget.
    Plan {
        #[arg(long)]
        k_total: u64,
        /// Base code as a catalog reference or file.
        #[arg(long, conflicts_with = "base")]
        code: Option<String>,
        /// Base parameters `n,k,r`.
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<u64>>,
        #[command(flatten)]
        model: ModelArgs,
        /// Budget exponent `p` in `k_total^p`.
        #[arg(long)]
        p: u32,
    },
}

#[derive(Args)]
struct OmegaArgs {
    /// Code reference or file; SLDD of this code.
    #[arg(long, required_unless_present_any = ["full_pauli", "generators"])]
    code: Option<String>,
    /// Concatenation levels for `--code`.
    #[arg(long, default_value_t = 1)]
    levels: usize,
    /// All `X_q`, `Z_q` on this many qubits.
    #[arg(long, conflicts_with_all = ["code", "generators"])]
    full_pauli: Option<usize>,
    /// Comma-separated Pauli strings.
    #[arg(long, value_delimiter = ',', conflicts_with = "code")]
    generators: Option<Vec<String>>,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value = "cdd")]
    family: Family,
    #[arg(long, default_value_t = 1)]
    order: u32,
}

impl ModelArgs {
    fn model(&self) -> sldd_core::Result<CostModel> {
        CostModel::new(self.family, self.order)
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(String, ExitCode), Failure>;

/// Loads a code from a file path if one exists, else from the catalog.
pub(crate) fn load_code(reference: &str) -> sldd_core::Result<CodeSpec> {
    let path = Path::new(reference);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {reference}: {e}")))?;
        parse_code(&text)
    } else {
        lookup(reference)
    }
}

fn dense_limit() -> Result<DenseLimit, Failure> {
    match std::env::var(DENSE_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(DenseLimit)
            .map_err(|_| Failure::Usage(format!("{DENSE_LIMIT_VAR}={v:?} is not a qubit count"))),
        Err(_) => Ok(DenseLimit::DEFAULT),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("outputs serialize") + "\n"
}

fn build_omega(args: &OmegaArgs) -> sldd_core::Result<DdgsResult> {
    let spec = config::OmegaSpec {
        full_pauli: args.full_pauli,
        sldd: args.code.clone(),
        levels: args.code.as_ref().map(|_| args.levels),
        generators: args.generators.clone(),
    };
    spec.build()
}

#[derive(Serialize)]
struct CatalogRow {
    code: String,
    n: usize,
    k: usize,
    r: usize,
    d: usize,
    stabilizers: usize,
    sldd_size: usize,
    full_pauli_size: usize,
}

const CATALOG_ENTRIES: [&str; 8] = [
    "repetition(3)",
    "repetition(5)",
    "five_qubit",
    "steane",
    "four_two_two",
    "bacon_shor(2)",
    "bacon_shor(3)",
    "bacon_shor(4)",
];

fn cmd_catalog(json: bool) -> Outcome {
    let rows = CATALOG_ENTRIES
        .iter()
        .map(|name| {
            let code = lookup(name)?;
            Ok(CatalogRow {
                code: name.to_string(),
                n: code.n,
                k: code.k,
                r: code.r,
                d: code.d,
                stabilizers: code.stabilizers.len(),
                sldd_size: sldd(&code)?.size(),
                full_pauli_size: 2 * code.n,
            })
        })
        .collect::<sldd_core::Result<Vec<_>>>()?;
    if json {
        return Ok((to_json(&rows), ExitCode::SUCCESS));
    }
    let mut out = format!(
        "{:<14} {:>3} {:>3} {:>3} {:>3} {:>3} {:>7} {:>7}\n",
        "code", "n", "k", "r", "d", "Q", "|SLDD|", "|P_n|"
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>3} {:>3} {:>3} {:>3} {:>7} {:>7}",
            r.code, r.n, r.k, r.r, r.d, r.stabilizers, r.sldd_size, r.full_pauli_size
        );
    }
    Ok((out, ExitCode::SUCCESS))
}

#[derive(Serialize)]
struct ValidateOutput {
    code: String,
    label: String,
    valid: bool,
    violations: Vec<String>,
}

fn cmd_validate(reference: &str, json: bool) -> Outcome {
    let path = Path::new(reference);
    let code = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {reference}: {e}")))?;
        match parse_code(&text) {
            Ok(code) => code,
            Err(Error::InvalidCode(violations)) => {
                return finish_validate(reference, reference.to_string(), violations, json);
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        lookup(reference)?
    };
    finish_validate(reference, code.label(), validate(&code).violations, json)
}

fn finish_validate(reference: &str, label: String, violations: Vec<String>, json: bool) -> Outcome {
    let out = ValidateOutput {
        code: reference.to_string(),
        label,
        valid: violations.is_empty(),
        violations,
    };
    let exit = if out.valid { ExitCode::SUCCESS } else { ExitCode::from(1) };
    if json {
        return Ok((to_json(&out), exit));
    }
    let mut text = format!("{}: {}\n", out.label, if out.valid { "valid" } else { "INVALID" });
    for v in &out.violations {
        let _ = writeln!(text, "  - {v}");
    }
    Ok((text, exit))
}

fn cmd_ddgs(args: &OmegaArgs, json: bool) -> Outcome {
    let omega = build_omega(args)?;
    if json {
        return Ok((to_json(&omega), ExitCode::SUCCESS));
    }
    let value = serde_json::to_value(&omega).expect("ddgs serializes");
    let mut out = format!(
        "{} ({}), {} generators on {} qubits\n",
        value["source"].as_array().map_or(String::new(), |s| s
            .iter()
            .filter_map(|x| x.as_str())
            .collect::<Vec<_>>()
            .join(" + ")),
        value["kind"].as_str().unwrap_or(""),
        omega.size(),
        omega.n_qubits()
    );
    for g in omega.generators() {
        let _ = writeln!(out, "  {g}");
    }
    Ok((out, ExitCode::SUCCESS))
}

#[derive(Serialize)]
struct CostOutput {
    code: String,
    levels: u32,
    model: CostModel,
    omega_sldd: u64,
    omega_full_pauli: u64,
    cost_sldd: String,
    cost_full_pauli: String,
    /// `log c_SLDD / log c_full` as a reduced fraction.
    log_ratio: String,
    /// `m` with `c_SLDD^m = c_full` when one exists.
    exact_root: Option<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn small(x: &BigUint, what: &str) -> sldd_core::Result<u64> {
    u64::try_from(x)
        .ok()
        .filter(|&v| v <= MAX_COST_EXPONENT)
        .ok_or_else(|| Error::ResourceLimit(format!("{what} = {x} is too large to expand")))
}

fn cmd_cost(reference: &str, levels: u32, model: &ModelArgs, json: bool) -> Outcome {
    let code = load_code(reference)?;
    let model = model.model()?;
    let (omega, n_r) = if levels == 1 {
        (sldd(&code)?.size() as u64, code.n as u64)
    } else {
        let counts = count_parameters(code.n as u64, code.k as u64, code.r as u64, levels)?;
        (small(&counts.omega_size, "|Ω̂|")?, small(&counts.n_r, "n^R")?)
    };
    let full = 2 * n_r;
    small(&BigUint::from(full), "|P̂_n|")?;
    let g = gcd(omega, full).max(1);
    let out = CostOutput {
        code: format!("{} {}", code.name, code.label()),
        levels,
        omega_sldd: omega,
        omega_full_pauli: full,
        cost_sldd: cost(omega, &model).to_string(),
        cost_full_pauli: cost(full, &model).to_string(),
        log_ratio: format!("{}/{}", omega / g, full / g),
        exact_root: (omega > 0 && full % omega == 0).then(|| full / omega),
        model,
    };
    if json {
        return Ok((to_json(&out), ExitCode::SUCCESS));
    }
    let f = out.model.f_of_n;
    let mut text = format!(
        "{} R={} {} N={} (f = {f})\n",
        out.code, out.levels, out.model.family, out.model.order
    );
    let _ = writeln!(text, "  SLDD        |Ω̂| = {:>6}  cost = {f}^{} = {}", out.omega_sldd, out.omega_sldd, out.cost_sldd);
    let _ = writeln!(
        text,
        "  full Pauli  |Ω̂| = {:>6}  cost = {f}^{} = {}",
        out.omega_full_pauli, out.omega_full_pauli, out.cost_full_pauli
    );
    let _ = writeln!(text, "  log c_SLDD / log c_full = {}", out.log_ratio);
    if let Some(m) = out.exact_root {
        let _ = writeln!(text, "  c_SLDD^{m} = c_full exactly");
    }
    Ok((text, ExitCode::SUCCESS))
}

fn cmd_sequence(omega: &OmegaArgs, model: &ModelArgs, output: Option<&Path>, json: bool) -> Outcome {
    let omega = build_omega(omega)?;
    let seq = match model.family {
        Family::Cdd => cdd_sequence(&omega, model.order)?,
        Family::Nudd => nudd_sequence(&omega, model.order)?,
    };
    let text = to_json(&seq);
    if let Some(path) = output {
        std::fs::write(path, &text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    } else if json {
        return Ok((text, ExitCode::SUCCESS));
    }
    Ok((describe_sequence(&seq, output), ExitCode::SUCCESS))
}

/// How many intervals the table view prints before eliding.
const SHOWN_INTERVALS: usize = 32;

fn describe_sequence(seq: &PulseSequence, written: Option<&Path>) -> String {
    let mut out = format!(
        "{:?} N={} on {} qubits: {} intervals, {} pulses\n",
        seq.family(),
        seq.order(),
        seq.n_qubits(),
        seq.len(),
        seq.pulse_count()
    );
    if let Some(p) = written {
        let _ = writeln!(out, "written to {}", p.display());
        return out;
    }
    for (iv, pulse) in seq.intervals().iter().zip(seq.pulses()).take(SHOWN_INTERVALS) {
        let _ = writeln!(
            out,
            "  {:.16e}  {}",
            iv.fraction,
            pulse.map_or("-".to_string(), |p| p.to_string())
        );
    }
    if seq.len() > SHOWN_INTERVALS {
        let _ = writeln!(out, "  ... {} more (use --json)", seq.len() - SHOWN_INTERVALS);
    }
    out
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: &'a RunConfig,
    passed: bool,
    report: &'a DecouplingReport,
}

fn cmd_verify(config: Option<&Path>, preset: Option<&str>, out_dir: &Path, seed: Option<u64>, json: bool) -> Outcome {
    let mut cfg = match (config, preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))?
        }
        (None, Some(name)) => RunConfig::preset(name).ok_or_else(|| {
            let names: Vec<&str> = PRESETS.iter().map(|p| p.0).collect();
            Failure::Usage(format!("unknown preset {name:?}; choose one of {}", names.join(", ")))
        })?,
        _ => return Err(Failure::Usage("verify needs --config or --preset".into())),
    };
    if let Some(s) = seed {
        cfg.noise.seed = s;
    }
    let limit = dense_limit()?;
    let omega = cfg.omega.build()?;
    let seq = cfg.sequence(&omega)?;
    let model = NoiseModel::random(cfg.noise_params(omega.n_qubits()), limit)?;
    let options = FitOptions {
        target_order: cfg.target_order,
        code: cfg.code()?,
        limit: Some(limit),
    };
    let report = decoupling_order_fit(&seq, &model, &omega, &cfg.grid(), &options)?;
    let passed = report.passed();
    let out = VerifyOutput {
        config: &cfg,
        passed,
        report: &report,
    };
    let text = to_json(&out);
    std::fs::create_dir_all(out_dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", out_dir.display())))?;
    let json_path = out_dir.join(format!("{}.json", cfg.name));
    let csv_path = out_dir.join(format!("{}.csv", cfg.name));
    for (path, body) in [(&json_path, text.as_str()), (&csv_path, report.to_csv().as_str())] {
        std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let exit = if passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
    if json {
        return Ok((text, exit));
    }
    let mut s = format!(
        "{}: {}\n  slope {:.3} (needs >= {:.2}, {} points), baseline slope {}\n",
        cfg.name,
        if passed { "PASS" } else { "FAIL" },
        report.fitted_slope,
        report.slope_threshold,
        report.points_used,
        report.baseline_slope.map_or("n/a".into(), |b| format!("{b:.3}"))
    );
    if let Some(leak) = &report.syndrome {
        let h0 = leak.h0_leakage.iter().cloned().fold(0.0, f64::max);
        let _ = writeln!(
            s,
            "  leakage slope {} (needs >= {:.2}), max H_0 leakage {h0:.2e}: {}",
            leak.leakage_slope.map_or("n/a".into(), |v| format!("{v:.3}")),
            leak.leakage_threshold,
            if leak.leakage_pass { "pass" } else { "fail" }
        );
    }
    for w in &report.warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
    let _ = writeln!(s, "  wrote {} and {}", json_path.display(), csv_path.display());
    Ok((s, exit))
}

fn cmd_plan(k_total: u64, base: (u64, u64, u64), model: &ModelArgs, p: u32, json: bool) -> Outcome {
    let plan: DomainPlan = plan_domains(k_total, base, model.model()?, p)?;
    if json {
        return Ok((to_json(&plan), ExitCode::SUCCESS));
    }
    let mut out = format!(
        "k_total {} with base ({}, {}, {}), {} N={} (f = {}), budget k_total^{} = {}\n",
        plan.k_total,
        plan.base_n,
        plan.base_k,
        plan.base_r,
        plan.model.family,
        plan.model.order,
        plan.model.f_of_n,
        plan.budget_exponent,
        plan.budget
    );
    let _ = writeln!(out, "  generator budget W = {}", plan.generator_budget);
    if plan.levels == 0 {
        let _ = writeln!(
            out,
            "  infeasible: one level already needs |Ω̂| = {} > W",
            plan.omega_size_per_domain
        );
    } else {
        let _ = writeln!(out, "  levels R = {}", plan.levels);
    }
    let _ = writeln!(
        out,
        "  domain: {} logical / {} physical qubits, |Ω̂| = {}, cost {}",
        plan.domain_size_logical, plan.physical_qubits_per_domain, plan.omega_size_per_domain, plan.cost_per_domain
    );
    let _ = writeln!(
        out,
        "  {} domains, last holds {}; within budget: {}",
        plan.domain_count, plan.last_domain_size, plan.within_budget
    );
    Ok((out, ExitCode::SUCCESS))
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Catalog => cmd_catalog(json),
        Command::Validate { code } => cmd_validate(code, json),
        Command::Ddgs(args) => cmd_ddgs(args, json),
        Command::Cost { code, levels, model } => cmd_cost(code, *levels, model, json),
        Command::Sequence { omega, model, output } => cmd_sequence(omega, model, output.as_deref(), json),
        Command::Verify { config, preset, out_dir } => {
            cmd_verify(config.as_deref(), preset.as_deref(), out_dir, cli.seed, json)
        }
        Command::Plan {
            k_total,
            code,
            base,
            model,
            p,
        } => {
            let base = match (code, base) {
                (Some(c), None) => {
                    let code = load_code(c)?;
                    (code.n as u64, code.k as u64, code.r as u64)
                }
                (None, Some(b)) if b.len() == 3 => (b[0], b[1], b[2]),
                _ => return Err(Failure::Usage("plan needs --code or --base n,k,r".into())),
            };
            cmd_plan(*k_total, base, model, *p, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                _ if e.is_resource_refusal() => ExitCode::from(3),
                // The run itself was sound but could not be judged.
                Error::TooFewPoints(_) | Error::Numerical(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
