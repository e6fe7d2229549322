//! Command-line front end. Exit codes: 0 success, 1 invalid input, 2
//! numerical failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::entropy::{renyi_entropy, EntropyOrder, LogBase};
use crate::error::{Error, Result};
use crate::experiments::{quantum_rate_convergence, rate_convergence, write_csv, ExperimentConfig, RateSeries};
use crate::io::{load_chain, load_density, load_distribution, load_matrix, load_quantum_source};
use crate::quantum::{quantum_renyi, smooth_quantum_renyi, weyl_check};
use crate::smoothing::{closeness_gap, smooth_subball, smooth_traceball, BallKind, SmoothingResult};
use crate::sources::{typical_fraction_mc, typical_set_report};

#[derive(Debug, Parser)]
#[command(name = "smooth-renyi", version, about = "Smooth Rényi entropies of classical and quantum sources")]
pub struct Cli {
    /// Logarithm base of reported entropies
    #[arg(long, global = true, default_value = "2")]
    base: LogBase,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rényi entropy of a distribution
    Entropy {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        alpha: EntropyOrder,
    },
    /// Smooth Rényi entropy of a distribution
    Smooth {
        #[arg(long)]
        dist: PathBuf,
        #[command(flatten)]
        smoothing: SmoothingArgs,
    },
    /// Trace-ball minus sub-normalized-ball smooth entropy
    Gap {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        alpha: EntropyOrder,
        #[arg(long)]
        eps: f64,
    },
    /// Normalized smooth entropy of a Markov chain over block lengths (CSV)
    Rate {
        #[arg(long)]
        chain: PathBuf,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Typical-set mass and cardinality of a Markov chain
    Aep {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Also estimate the typical fraction from this many sampled paths
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantum Rényi entropy of a density matrix
    QuantumEntropy {
        #[arg(long)]
        density: PathBuf,
        #[arg(long)]
        alpha: EntropyOrder,
    },
    /// Smooth quantum Rényi entropy of a density matrix
    QuantumSmooth {
        #[arg(long)]
        density: PathBuf,
        #[command(flatten)]
        smoothing: SmoothingArgs,
    },
    /// Normalized smooth entropy of a quantum block source (CSV)
    QuantumRate {
        #[arg(long)]
        source: PathBuf,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Ordered eigenvalue margins λ_i(A + B) - λ_i(A) for PSD B
    WeylCheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SmoothingArgs {
    #[arg(long)]
    alpha: EntropyOrder,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value = "sub")]
    ball: BallKind,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    alpha: EntropyOrder,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value = "sub")]
    ball: BallKind,
    /// Comma-separated, strictly ascending block lengths
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ExperimentArgs {
    fn config(&self, base: LogBase) -> Result<ExperimentConfig> {
        ExperimentConfig::new(self.alpha, self.eps, self.n.clone(), self.ball, self.seed, base)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn stdout_err(source: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn emit_series(series: &RateSeries, out: &mut dyn Write, path: Option<&Path>) -> Result<()> {
    if let Some(note) = &series.note {
        eprintln!("note: {note}");
    }
    if !series.exact {
        eprintln!("note: some values come from numeric search");
    }
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_err(p))?;
            let mut w = BufWriter::new(file);
            write_csv(series, &mut w).map_err(io_err(p))?;
            w.flush().map_err(io_err(p))
        }
        None => write_csv(series, out).map_err(stdout_err),
    }
}

fn report_smoothing(r: &SmoothingResult, base: LogBase, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", r.value.display(base)).map_err(stdout_err)?;
    if !r.exact {
        eprintln!("note: trace-ball value from numeric search, not certified optimal");
    }
    Ok(())
}

/// Runs a parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let base = cli.base;
    match &cli.command {
        Command::Entropy { dist, alpha } => {
            let p = load_distribution(dist)?;
            let h = renyi_entropy(&p, *alpha)?;
            writeln!(out, "{}", h.display(base)).map_err(stdout_err)?;
        }
        Command::Smooth { dist, smoothing } => {
            let p = load_distribution(dist)?;
            let r = match smoothing.ball {
                BallKind::SubNormalized => smooth_subball(&p, smoothing.alpha, smoothing.eps)?,
                BallKind::TraceDistance => smooth_traceball(&p, smoothing.alpha, smoothing.eps)?,
            };
            report_smoothing(&r, base, out)?;
        }
        Command::Gap { dist, alpha, eps } => {
            let p = load_distribution(dist)?;
            let g = closeness_gap(&p, *alpha, *eps)?;
            let w = |out: &mut dyn Write, k: &str, v: String| writeln!(out, "{k} {v}");
            (|| {
                w(out, "sub_value", g.sub_value.display(base))?;
                w(out, "trace_value", g.trace_value.display(base))?;
                w(out, "gap", g.gap.display(base))?;
                w(out, "bound", g.bound.display(base))?;
                w(out, "sandwich", if g.sandwich_ok { "ok".into() } else { "violated".into() })
            })()
            .map_err(stdout_err)?;
            if !g.exact {
                eprintln!("note: trace-ball value from numeric search, not certified optimal");
            }
        }
        Command::Rate { chain, experiment } => {
            let chain = load_chain(chain)?;
            let series = rate_convergence(&chain, &experiment.config(base)?)?;
            emit_series(&series, out, experiment.out.as_deref())?;
        }
        Command::Aep {
            chain,
            eps,
            n,
            samples,
            seed,
            out: path,
        } => {
            let chain = load_chain(chain)?;
            let mut text = String::from("n,eps,mass,log_card,log_card_bound,mass_ok,card_ok,mc_fraction\n");
            for &n in n {
                let r = typical_set_report(&chain, n, *eps, base)?;
                let mc = match samples {
                    Some(s) => format!("{:.6}", typical_fraction_mc(&chain, n, *eps, *s, *seed, base)?),
                    None => String::new(),
                };
                text.push_str(&format!(
                    "{},{:.6},{:.6},{:.6},{:.6},{},{},{}\n",
                    r.n, r.epsilon, r.mass, r.log_cardinality, r.log_card_bound, r.mass_ok, r.card_ok, mc
                ));
            }
            match path {
                Some(p) => std::fs::write(p, text).map_err(io_err(p))?,
                None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
            }
        }
        Command::QuantumEntropy { density, alpha } => {
            let rho = load_density(density)?;
            let s = quantum_renyi(&rho, *alpha)?;
            writeln!(out, "{}", s.display(base)).map_err(stdout_err)?;
        }
        Command::QuantumSmooth { density, smoothing } => {
            let rho = load_density(density)?;
            let r = match smoothing.ball {
                BallKind::SubNormalized => smooth_quantum_renyi(&rho, smoothing.alpha, smoothing.eps)?,
                BallKind::TraceDistance => smooth_traceball(
                    &rho.spectrum().to_prob_vector(),
                    smoothing.alpha,
                    smoothing.eps,
                )?,
            };
            report_smoothing(&r, base, out)?;
        }
        Command::QuantumRate { source, experiment } => {
            let source = load_quantum_source(source)?;
            let series = quantum_rate_convergence(&source, &experiment.config(base)?)?;
            emit_series(&series, out, experiment.out.as_deref())?;
        }
        Command::WeylCheck { a, b } => {
            let report = weyl_check(&load_matrix(a)?, &load_matrix(b)?)?;
            for (i, m) in report.margins.iter().enumerate() {
                writeln!(out, "margin[{i}] {m:.12}").map_err(stdout_err)?;
            }
            if report.violated {
                return Err(Error::numerical(format!(
                    "ordered eigenvalue decreased (min margin {:e})",
                    report.min_margin
                )));
            }
            writeln!(out, "ok").map_err(stdout_err)?;
        }
    }
    Ok(())
}
