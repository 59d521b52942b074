//! Executes a validated [`RunConfig`].

use std::fmt;
use std::fs::File;
use std::io::BufReader;

use num_complex::Complex64;
use ptchain::analysis::{dos, edge_state_report, ipr_histogram, ipr_report, scaling_study, DosOptions, ScalingFit};
use ptchain::eigensolver::small_roots;
use ptchain::lattice::{build_chain, read_hopping_csv, HoppingProfile};
use ptchain::oracles::{run_suite, CaseStatus};
use ptchain::transform::{build_similarity, hermitize};
use ptchain::{solve_chain, Error, Mode, PtChain64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, RunConfig, Source};
use crate::output::csv_bytes;

/// Failure of a run, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or input files (exit 3).
    Usage(String),
    /// A Hermitian pipeline was requested for a chain that fails the reality criterion (exit 2).
    Criterion(String),
    /// Numerical or I/O failure after the input was accepted (exit 4).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Criterion(_) => 2,
            CliError::Usage(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Criterion(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::CriterionViolated(_) => CliError::Criterion(message),
            Error::NoConvergence { .. }
            | Error::RootsNoConvergence { .. }
            | Error::EndpointInconsistent(_)
            | Error::Io(_) => CliError::Runtime(message),
            _ => CliError::Usage(message),
        }
    }
}

/// Everything a command produces before it is written out.
pub struct Outcome {
    pub csv: Vec<u8>,
    pub data: Value,
    pub metadata: serde_json::Map<String, Value>,
    /// Human-readable lines for standard error.
    pub notes: Vec<String>,
    /// Set by `verify` when a case failed (exit 1).
    pub failed: bool,
}

impl Outcome {
    fn new(csv: Vec<u8>, data: Value) -> Self {
        Self {
            csv,
            data,
            metadata: serde_json::Map::new(),
            notes: Vec::new(),
            failed: false,
        }
    }

    fn meta(mut self, key: &str, value: impl Serialize) -> Self {
        self.metadata.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }
}

pub fn load_chain(source: &Source) -> Result<PtChain64, CliError> {
    match source {
        Source::PowerLaw { t0, alpha, n_sites } => Ok(build_chain(
            &HoppingProfile::PowerLaw { t0: *t0, alpha: *alpha },
            *n_sites,
        )?),
        Source::File { path, n_sites } => {
            let file = File::open(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let hopping = read_hopping_csv(BufReader::new(file))
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let found = hopping.len() + 1;
            if let Some(n) = n_sites {
                if *n != found {
                    return Err(CliError::Usage(format!(
                        "--sites {n} does not match the {found} sites described by {}",
                        path.display()
                    )));
                }
            }
            Ok(build_chain(&HoppingProfile::Explicit(hopping), found)?)
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let chain = config.source.as_ref().map(load_chain).transpose()?;
    let tol = config.phase_tol;
    match &config.command {
        Command::Spectrum { normalized } => spectrum(&chain.unwrap(), tol, *normalized),
        Command::Dos {
            bins,
            density,
            normalized,
            binning,
            pad,
        } => {
            let opts = DosOptions {
                bins: *bins,
                normalized: *density,
                energy_normalized: *normalized,
                binning: *binning,
                pad_half_spacing: *pad,
            };
            density_of_states(&chain.unwrap(), tol, &opts)
        }
        Command::Ipr {
            histogram_bins,
            log_bins,
            edge_threshold,
        } => participation(&chain.unwrap(), tol, *histogram_bins, *log_bins, *edge_threshold),
        Command::Scaling { t0, alpha, sizes } => scaling(*t0, *alpha, sizes),
        Command::Transform { couplings } => transform(&chain.unwrap(), tol, *couplings),
        Command::Roots => roots(&chain.unwrap(), tol),
        Command::Verify { suite } => verify(*suite, config.seed),
    }
}

fn criterion_json(chain: &PtChain64, tol: f64) -> Value {
    let r = chain.reality_criterion(tol);
    json!({
        "satisfied": r.satisfied,
        "first_violation": r.first_violation,
        "phase_mismatch": r.phase_mismatch,
    })
}

#[derive(Serialize)]
struct LevelRow {
    n: usize,
    energy: f64,
}

fn spectrum(chain: &PtChain64, tol: f64, normalized: bool) -> Result<Outcome, CliError> {
    let sol = solve_chain(chain, Mode::ValuesOnly, tol)?;
    let scale = sol.spectrum.values.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let energies: Vec<f64> = if normalized && scale > 0.0 {
        sol.spectrum.values.iter().map(|e| e / scale).collect()
    } else {
        sol.spectrum.values.clone()
    };
    let rows = energies.iter().enumerate().map(|(n, &energy)| LevelRow { n, energy });
    let csv = csv_bytes(rows)?;
    let data = json!({ "energies": energies, "normalized": normalized, "energy_scale": scale });
    Ok(Outcome::new(csv, data)
        .meta("n_sites", chain.n_sites())
        .meta("criterion", criterion_json(chain, tol)))
}

#[derive(Serialize)]
#[serde(untagged)]
enum Count {
    Whole(u64),
    Real(f64),
}

#[derive(Serialize)]
struct BinRow {
    bin_lo: f64,
    bin_hi: f64,
    count: Count,
}

fn bin_rows(edges: &[f64], counts: &[f64], whole: bool) -> Vec<BinRow> {
    counts
        .iter()
        .enumerate()
        .map(|(j, &c)| BinRow {
            bin_lo: edges[j],
            bin_hi: edges[j + 1],
            count: if whole { Count::Whole(c as u64) } else { Count::Real(c) },
        })
        .collect()
}

fn density_of_states(chain: &PtChain64, tol: f64, opts: &DosOptions) -> Result<Outcome, CliError> {
    let sol = solve_chain(chain, Mode::ValuesOnly, tol)?;
    let h = dos(&sol.spectrum.values, opts)?;
    let whole = !opts.normalized && opts.binning == ptchain::analysis::Binning::Count;
    let csv = csv_bytes(bin_rows(&h.bin_edges, &h.counts, whole))?;
    let data = json!({ "bin_edges": h.bin_edges, "counts": h.counts, "normalized": h.normalized });
    Ok(Outcome::new(csv, data)
        .meta("n_sites", chain.n_sites())
        .meta("criterion", criterion_json(chain, tol)))
}

#[derive(Serialize)]
struct IprRow {
    state: usize,
    energy: f64,
    ipr: f64,
}

fn participation(
    chain: &PtChain64,
    tol: f64,
    histogram_bins: Option<usize>,
    log_bins: bool,
    threshold: f64,
) -> Result<Outcome, CliError> {
    let sol = solve_chain(chain, Mode::Full, tol)?;
    let report = ipr_report(&sol.spectrum)?;
    let edges = edge_state_report(&sol.spectrum, &report, threshold)?;
    let histogram = histogram_bins.map(|b| ipr_histogram(&report, b, log_bins)).transpose()?;
    let csv = match &histogram {
        Some(h) => csv_bytes(bin_rows(&h.bin_edges, &h.counts, true))?,
        None => csv_bytes(report.per_state.iter().enumerate().map(|(state, &ipr)| IprRow {
            state,
            energy: sol.spectrum.values[state],
            ipr,
        }))?,
    };
    let data = json!({
        "states": report.per_state.iter().enumerate().map(|(state, &ipr)| json!({
            "state": state,
            "energy": sol.spectrum.values[state],
            "ipr": ipr,
        })).collect::<Vec<_>>(),
        "min_ipr": report.min_ipr,
        "max_ipr": report.max_ipr,
        "edge_states": edges,
        "histogram": histogram.as_ref().map(|h| json!({ "bin_edges": h.bin_edges, "counts": h.counts })),
    });
    let mut out = Outcome::new(csv, data)
        .meta("n_sites", chain.n_sites())
        .meta("criterion", criterion_json(chain, tol))
        .meta("edge_threshold", threshold)
        .meta("max_residual", sol.spectrum.max_residual)
        .meta("max_orthogonality_defect", sol.spectrum.max_orthogonality_defect);
    out.notes.push(format!(
        "ipr: min {:.6e}, max {:.6e}, {} states above {threshold}",
        report.min_ipr,
        report.max_ipr,
        edges.len()
    ));
    Ok(out)
}

fn describe_fit(label: &str, fit: &ScalingFit<f64>) -> String {
    if fit.saturated {
        format!(
            "{label}: saturated (relative spread {:.3e}, r^2 {:.4})",
            fit.relative_spread, fit.r_squared
        )
    } else {
        format!("{label}: exponent {:.4} (r^2 {:.6})", fit.exponent, fit.r_squared)
    }
}

fn scaling(t0: f64, alpha: f64, sizes: &[usize]) -> Result<Outcome, CliError> {
    let study = scaling_study(t0, alpha, sizes)?;
    let csv = csv_bytes(study.raw.iter())?;
    let data = serde_json::to_value(&study).expect("serializable");
    let mut out = Outcome::new(csv, data).meta("sizes", sizes);
    out.notes.push(describe_fit("min IPR (gamma)", &study.min_fit));
    out.notes.push(describe_fit("max IPR (eta)", &study.max_fit));
    Ok(out)
}

#[derive(Serialize)]
struct ScaleRow {
    k: usize,
    log_m: f64,
}

#[derive(Serialize)]
struct CouplingRow {
    k: usize,
    off_mag: f64,
    off_phase: f64,
}

fn transform(chain: &PtChain64, tol: f64, couplings: bool) -> Result<Outcome, CliError> {
    let scale = build_similarity(chain, tol)?;
    let h = hermitize(chain, tol)?;
    let csv = if couplings {
        csv_bytes(h.off_mag().iter().zip(h.off_phase()).enumerate().map(|(k, (&off_mag, &off_phase))| {
            CouplingRow {
                k: k + 1,
                off_mag,
                off_phase,
            }
        }))?
    } else {
        csv_bytes(scale.log_m().iter().enumerate().map(|(k, &log_m)| ScaleRow { k: k + 1, log_m }))?
    };
    let data = json!({ "log_m": scale.log_m(), "off_mag": h.off_mag(), "off_phase": h.off_phase() });
    Ok(Outcome::new(csv, data)
        .meta("n_sites", chain.n_sites())
        .meta("criterion", criterion_json(chain, tol)))
}

#[derive(Serialize)]
struct RootRow {
    n: usize,
    re: f64,
    im: f64,
}

/// Snaps components below `1e-12` of the largest root to zero, then re-sorts
/// by real and imaginary part.
fn clean(roots: &[Complex64]) -> Vec<Complex64> {
    let scale = roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let snap = |x: f64| if x.abs() <= 1e-12 * scale { 0.0 } else { x };
    let mut out: Vec<Complex64> = roots.iter().map(|z| Complex64::new(snap(z.re), snap(z.im))).collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

fn roots(chain: &PtChain64, tol: f64) -> Result<Outcome, CliError> {
    let e = chain.pt_elements();
    let roots = clean(&small_roots(&e.superdiag, &e.subdiag, &e.diag)?);
    let csv = csv_bytes(roots.iter().enumerate().map(|(n, z)| RootRow { n, re: z.re, im: z.im }))?;
    let data = json!({
        "roots": roots.iter().map(|z| json!({ "re": z.re, "im": z.im })).collect::<Vec<_>>(),
    });
    let report = chain.reality_criterion(tol);
    let mut out = Outcome::new(csv, data)
        .meta("n_sites", chain.n_sites())
        .meta("criterion", criterion_json(chain, tol));
    if let Some(k) = report.first_violation {
        out.notes.push(format!("roots: reality criterion fails first at bond k = {k}"));
    }
    Ok(out)
}

fn verify(suite: ptchain::oracles::Suite, seed: u64) -> Result<Outcome, CliError> {
    let cases = run_suite(suite, seed)?;
    let count = |s: CaseStatus| cases.iter().filter(|c| c.status == s).count();
    let failed = count(CaseStatus::Fail);
    let csv = csv_bytes(cases.iter())?;
    let data = json!({ "cases": cases, "passed": failed == 0 });
    let mut out = Outcome::new(csv, data).meta("suite", suite.name()).meta("seed", seed);
    for c in cases.iter().filter(|c| c.status != CaseStatus::Pass) {
        out.notes.push(format!("verify: {} {}: expected {}, got {}", c.status, c.name, c.expected, c.got));
    }
    out.notes.push(format!(
        "verify: {} passed, {failed} failed, {} informational",
        count(CaseStatus::Pass),
        count(CaseStatus::Info)
    ));
    out.failed = failed > 0;
    Ok(out)
}
