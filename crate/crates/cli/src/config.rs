//! Command-line flags and their validated form.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptchain::analysis::{Binning, DEFAULT_DOS_BINS, DEFAULT_EDGE_THRESHOLD, DEFAULT_SIZES};
use ptchain::lattice::DEFAULT_PHASE_TOL;
use ptchain::oracles::Suite;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "ptchain",
    version,
    about = "Spectra, densities of states and localization of PT-symmetric tight-binding chains",
    after_help = "Energies are in units of t0. Exit codes: 0 success, 1 verification failure, \
                  2 reality criterion violated, 3 usage or input error, 4 runtime failure."
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Sorted eigenvalues as `n,energy`
    Spectrum {
        #[command(flatten)]
        chain: ChainArgs,
        /// Divide energies by max |E|
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Density of states as `bin_lo,bin_hi,count`
    Dos {
        #[command(flatten)]
        chain: ChainArgs,
        /// Number of equal-width energy bins
        #[arg(long, default_value_t = DEFAULT_DOS_BINS, value_name = "COUNT")]
        bins: usize,
        /// Report counts / (N * bin width) instead of raw counts
        #[arg(long)]
        density: bool,
        /// Divide energies by max |E| before binning
        #[arg(long)]
        normalized: bool,
        /// Bin assignment rule
        #[arg(long, value_enum, default_value_t = BinningArg::Count)]
        binning: BinningArg,
        /// Widen the energy range by half the mean level spacing on each side
        #[arg(long)]
        pad: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Inverse participation ratios as `state,energy,ipr`
    Ipr {
        #[command(flatten)]
        chain: ChainArgs,
        /// Emit a histogram of IPRs (`bin_lo,bin_hi,count`) instead of per-state rows
        #[arg(long, value_name = "COUNT")]
        histogram_bins: Option<usize>,
        /// Use linear instead of log-spaced histogram bins
        #[arg(long, requires = "histogram_bins")]
        linear_bins: bool,
        /// IPR above which a state is reported as an edge state (dimensionless)
        #[arg(long, default_value_t = DEFAULT_EDGE_THRESHOLD, value_name = "IPR")]
        edge_threshold: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Min and max IPR against chain size as `N,min_ipr,max_ipr`, with power-law fits
    Scaling {
        /// Hopping exponent alpha in t_k = t0 k^alpha (dimensionless)
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Hopping scale t0 (energy unit)
        #[arg(long, default_value_t = 1.0, value_name = "ENERGY")]
        t0: f64,
        /// Comma-separated chain sizes (sites)
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES.to_vec(), value_name = "N,...")]
        sizes: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Similarity scale as `k,log_m`, or the Hermitian couplings as `k,off_mag,off_phase`
    Transform {
        #[command(flatten)]
        chain: ChainArgs,
        /// Emit the Hermitian counterpart's couplings instead of ln m_k
        #[arg(long)]
        couplings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Complex eigenvalues of a short chain (N <= 32) as `n,re,im`; works without the reality criterion
    Roots {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the solver against closed-form results
    Verify {
        /// Which comparisons to run
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Seed for the randomized cases
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct ChainArgs {
    /// Number of lattice sites N
    #[arg(long, value_name = "N")]
    sites: Option<usize>,
    /// Hopping exponent alpha in t_k = t0 k^alpha (dimensionless)
    #[arg(long, allow_negative_numbers = true, required_unless_present = "hopping_file")]
    alpha: Option<f64>,
    /// Hopping scale t0 (energy unit) [default: 1]
    #[arg(long, value_name = "ENERGY")]
    t0: Option<f64>,
    /// CSV of bond amplitudes with header `k,re,im`, k = 1..N-1 (energy units)
    #[arg(long, value_name = "PATH", conflicts_with_all = ["alpha", "t0"])]
    hopping_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write data here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Tolerance on |arg t_k - arg t_(N-k)| for the reality criterion (radians)
    #[arg(long, default_value_t = DEFAULT_PHASE_TOL, value_name = "RAD")]
    phase_tol: f64,
    /// Record wall time (seconds) in JSON metadata and on standard error
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BinningArg {
    Count,
    Linear,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Where the hopping amplitudes come from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    PowerLaw { t0: f64, alpha: f64, n_sites: usize },
    File { path: PathBuf, n_sites: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    Spectrum {
        normalized: bool,
    },
    Dos {
        bins: usize,
        density: bool,
        normalized: bool,
        #[serde(serialize_with = "binning_name")]
        binning: Binning,
        pad: bool,
    },
    Ipr {
        histogram_bins: Option<usize>,
        log_bins: bool,
        edge_threshold: f64,
    },
    Scaling {
        t0: f64,
        alpha: f64,
        sizes: Vec<usize>,
    },
    Transform {
        couplings: bool,
    },
    Roots,
    Verify {
        #[serde(serialize_with = "suite_name")]
        suite: Suite,
    },
}

fn binning_name<S: serde::Serializer>(b: &Binning, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match b {
        Binning::Count => "count",
        Binning::Linear => "linear",
    })
}

fn suite_name<S: serde::Serializer>(suite: &Suite, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(suite.name())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// `None` for commands that build their own chains.
    pub source: Option<Source>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub phase_tol: f64,
    pub timing: bool,
}

/// A rejected command line. `help` is set for `--help` and `--version`,
/// which print `message` to standard output and succeed.
#[derive(Debug)]
pub struct ArgError {
    pub message: String,
    pub help: bool,
}

fn usage(message: impl Into<String>) -> ArgError {
    ArgError {
        message: message.into(),
        help: false,
    }
}

impl ChainArgs {
    fn source(self) -> Result<Source, ArgError> {
        match (self.hopping_file, self.alpha) {
            (Some(path), _) => Ok(Source::File {
                path,
                n_sites: self.sites,
            }),
            (None, Some(alpha)) => {
                let n_sites = self.sites.ok_or_else(|| usage("--sites is required with --alpha"))?;
                Ok(Source::PowerLaw {
                    t0: self.t0.unwrap_or(1.0),
                    alpha,
                    n_sites,
                })
            }
            (None, None) => Err(usage("one of --alpha or --hopping-file is required")),
        }
    }
}

pub fn parse_args<I, S>(argv: I) -> Result<RunConfig, ArgError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
        let message = if help {
            e.to_string()
        } else {
            e.to_string().lines().next().unwrap_or("invalid arguments").to_string()
        };
        ArgError { message, help }
    })?;

    let (command, source, output, seed) = match cli.command {
        CliCommand::Spectrum { chain, normalized, output } => {
            (Command::Spectrum { normalized }, Some(chain.source()?), output, 0)
        }
        CliCommand::Dos {
            chain,
            bins,
            density,
            normalized,
            binning,
            pad,
            output,
        } => {
            if bins == 0 {
                return Err(usage("--bins must be at least 1"));
            }
            let binning = match binning {
                BinningArg::Count => Binning::Count,
                BinningArg::Linear => Binning::Linear,
            };
            let command = Command::Dos {
                bins,
                density,
                normalized,
                binning,
                pad,
            };
            (command, Some(chain.source()?), output, 0)
        }
        CliCommand::Ipr {
            chain,
            histogram_bins,
            linear_bins,
            edge_threshold,
            output,
        } => {
            if histogram_bins == Some(0) {
                return Err(usage("--histogram-bins must be at least 1"));
            }
            let command = Command::Ipr {
                histogram_bins,
                log_bins: !linear_bins,
                edge_threshold,
            };
            (command, Some(chain.source()?), output, 0)
        }
        CliCommand::Scaling { alpha, t0, sizes, output } => {
            if sizes.is_empty() {
                return Err(usage("--sizes must not be empty"));
            }
            (Command::Scaling { t0, alpha, sizes }, None, output, 0)
        }
        CliCommand::Transform { chain, couplings, output } => {
            (Command::Transform { couplings }, Some(chain.source()?), output, 0)
        }
        CliCommand::Roots { chain, output } => (Command::Roots, Some(chain.source()?), output, 0),
        CliCommand::Verify { suite, seed, output } => (Command::Verify { suite }, None, output, seed),
    };
    if !(output.phase_tol >= 0.0 && output.phase_tol.is_finite()) {
        return Err(usage("--phase-tol must be a finite non-negative number"));
    }
    Ok(RunConfig {
        command,
        source,
        output: output.out,
        format: output.format,
        seed,
        phase_tol: output.phase_tol,
        timing: output.timing,
    })
}
