//! The `netid` command line.
//!
//! Exit codes: 0 success (for `check`, every identity passed), 1 at least
//! one identity failed, 2 usage or input error.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::NetworkAnalysis;
use crate::error::{Error, Result};
use crate::format::{g17, json_number, matrix_json, matrix_tsv};
use crate::foster::{Certifier, Sources, DEFAULT_TOLERANCE};
use crate::generate::{random_graph, RandomGraphSpec};
use crate::graph::MetrizedGraph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the default identity tolerance.
pub const TOLERANCE_ENV: &str = "NETID_TOL";

#[derive(Debug, Parser)]
#[command(name = "netid", version, about = "Resistive-network analysis and Foster-identity certification")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Edge-list file (`-` for stdin).
    #[arg(long, short)]
    pub input: PathBuf,
    /// Output file; written atomically. Defaults to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify every identity and emit a report.
    Check(CheckArgs),
    /// Effective resistance of one pair, or the full matrix.
    Resistance {
        #[command(flatten)]
        io: Io,
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        pair: Option<Vec<String>>,
    },
    /// Voltage j_p(q,s).
    Voltage {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        base: String,
        #[arg(long, num_args = 2, value_names = ["Q", "S"], required = true)]
        pair: Vec<String>,
    },
    /// Discrete Laplacian.
    Laplacian {
        #[command(flatten)]
        io: Io,
    },
    /// Moore–Penrose pseudoinverse of the Laplacian.
    Pinv {
        #[command(flatten)]
        io: Io,
    },
    /// Equilibrium measure of one base vertex, or all of them (one per row).
    Equilibrium {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// k-step transition matrix, or the trace sequence with --traces.
    Kernel {
        #[command(flatten)]
        io: Io,
        #[arg(long, short, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Print tr(P^1..KMAX) instead of a matrix.
        #[arg(long, value_name = "KMAX", value_parser = clap::value_parser!(u64).range(1..))]
        traces: Option<u64>,
    },
    /// Monte-Carlo k-step position frequencies against exact probabilities.
    Walk {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        start: String,
        #[arg(long, short, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        walks: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random connected simple graph in edge-list format.
    Gen {
        #[arg(long, short)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        prob: f64,
        #[arg(long, default_value_t = 0.1)]
        min_len: f64,
        #[arg(long, default_value_t = 10.0)]
        max_len: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(long, env = TOLERANCE_ENV, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tol: f64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_k: u64,
    /// Source vertex id, or `all`.
    #[arg(long, default_value = "all")]
    pub source: String,
    /// Scale edge EDGE (index in the optimal edge list) by 1 + REL when
    /// computing left-hand-side potentials only. Negative control.
    #[arg(long, value_name = "EDGE:REL", value_parser = parse_perturbation)]
    pub perturb_lhs: Option<(usize, f64)>,
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

fn parse_perturbation(s: &str) -> std::result::Result<(usize, f64), String> {
    let (edge, rel) = s
        .split_once(':')
        .ok_or_else(|| "expected EDGE:REL, e.g. 0:0.01".to_string())?;
    let edge = edge.parse().map_err(|e| format!("edge index: {e}"))?;
    let rel: f64 = rel.parse().map_err(|e| format!("relative change: {e}"))?;
    if !(rel > -1.0 && rel.is_finite()) {
        return Err(format!("relative change must exceed -1, got {rel}"));
    }
    Ok((edge, rel))
}

/// Parses `argv` and runs, printing to stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(&config) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome, out) {
                let _ = writeln!(err, "netid: {e}");
                return EXIT_USAGE;
            }
            if outcome.identities_failed {
                EXIT_IDENTITY_FAILURE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "netid: {e}");
            EXIT_USAGE
        }
    }
}

struct Outcome {
    text: String,
    destination: Option<PathBuf>,
    identities_failed: bool,
}

fn emit(outcome: &Outcome, out: &mut dyn Write) -> Result<()> {
    match &outcome.destination {
        Some(path) => write_atomic(path, &outcome.text),
        None => Ok(out.write_all(outcome.text.as_bytes())?),
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn load(path: &Path) -> Result<MetrizedGraph> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    MetrizedGraph::parse_edge_list(&text)
}

fn analyse(io: &Io) -> Result<NetworkAnalysis> {
    NetworkAnalysis::new(&load(&io.input)?)
}

fn matrix_output(m: &nalgebra::DMatrix<f64>, format: Format) -> String {
    match format {
        Format::Tsv => matrix_tsv(m),
        Format::Json => matrix_json(m) + "\n",
    }
}

fn scalar_output(x: f64, format: Format) -> String {
    match format {
        Format::Tsv => format!("{}\n", g17(x)),
        Format::Json => format!("{}\n", json_number(x)),
    }
}

fn vector_output(values: &[f64], format: Format) -> String {
    let m = nalgebra::DMatrix::from_row_slice(1, values.len(), values);
    matrix_output(&m, format)
}

fn execute(config: &CliConfig) -> Result<Outcome> {
    let done = |text: String, io: &Io| Outcome {
        text,
        destination: io.output.clone(),
        identities_failed: false,
    };
    match &config.command {
        Command::Check(args) => check(args),
        Command::Resistance { io, pair } => {
            let net = analyse(io)?;
            let format = io.format.unwrap_or(Format::Tsv);
            let text = match pair {
                Some(ids) => {
                    let p = net.graph().index_of(&ids[0])?;
                    let q = net.graph().index_of(&ids[1])?;
                    scalar_output(net.resistance().get(p, q), format)
                }
                None => matrix_output(net.resistance().matrix(), format),
            };
            Ok(done(text, io))
        }
        Command::Voltage { io, base, pair } => {
            let net = analyse(io)?;
            let g = net.graph();
            let (p, q, s) = (g.index_of(base)?, g.index_of(&pair[0])?, g.index_of(&pair[1])?);
            Ok(done(scalar_output(net.voltage(p, q, s), io.format.unwrap_or(Format::Tsv)), io))
        }
        Command::Laplacian { io } => {
            let net = analyse(io)?;
            Ok(done(matrix_output(net.laplacian().matrix(), io.format.unwrap_or(Format::Tsv)), io))
        }
        Command::Pinv { io } => {
            let net = analyse(io)?;
            Ok(done(matrix_output(net.pinv().matrix(), io.format.unwrap_or(Format::Tsv)), io))
        }
        Command::Equilibrium { io, vertex } => {
            let net = analyse(io)?;
            let format = io.format.unwrap_or(Format::Tsv);
            let text = match vertex {
                Some(id) => {
                    let i = net.graph().index_of(id)?;
                    let nu = crate::network::equilibrium_measure(net.laplacian(), i)?;
                    vector_output(nu.values.as_slice(), format)
                }
                None => matrix_output(net.equilibria()?.matrix(), format),
            };
            Ok(done(text, io))
        }
        Command::Kernel { io, k, traces } => {
            let net = analyse(io)?;
            let format = io.format.unwrap_or(Format::Tsv);
            let text = match traces {
                Some(kmax) => vector_output(&net.kernel().trace_sequence(*kmax as usize)?, format),
                None => matrix_output(&*net.kernel().kstep(*k as usize)?, format),
            };
            Ok(done(text, io))
        }
        Command::Walk {
            io,
            start,
            k,
            walks,
            seed,
        } => {
            let net = analyse(io)?;
            let i = net.graph().index_of(start)?;
            let freq = net
                .kernel()
                .simulate_kstep_frequencies(i, *k, *walks as usize, *seed)?;
            let exact: Vec<f64> = if *k == 0 {
                (0..net.n()).map(|t| f64::from(u8::from(t == i))).collect()
            } else {
                net.kernel().kstep(*k)?.row(i).iter().copied().collect()
            };
            let text = match io.format.unwrap_or(Format::Tsv) {
                Format::Tsv => {
                    let mut s = String::from("vertex\tempirical\texact\n");
                    for t in 0..net.n() {
                        s.push_str(&format!("{}\t{}\t{}\n", net.graph().name(t), g17(freq[t]), g17(exact[t])));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<String> = (0..net.n())
                        .map(|t| {
                            format!(
                                "{{\"vertex\":{},\"empirical\":{},\"exact\":{}}}",
                                serde_json::to_string(net.graph().name(t)).expect("string serializes"),
                                json_number(freq[t]),
                                json_number(exact[t])
                            )
                        })
                        .collect();
                    format!("[{}]\n", rows.join(","))
                }
            };
            Ok(done(text, io))
        }
        Command::Gen {
            n,
            prob,
            min_len,
            max_len,
            seed,
            output,
        } => {
            let g = random_graph(RandomGraphSpec::new(*n, *prob, *seed).lengths(*min_len, *max_len))?;
            Ok(Outcome {
                text: g.to_edge_list(),
                destination: output.clone(),
                identities_failed: false,
            })
        }
    }
}

fn check(args: &CheckArgs) -> Result<Outcome> {
    let net = analyse(&args.io)?;
    let sources = if args.source == "all" {
        Sources::All
    } else {
        Sources::One(net.graph().index_of(&args.source)?)
    };
    let kmax = args.max_k as usize;
    let report = match args.perturb_lhs {
        None => Certifier::new(&net, args.tol).full_report(sources, kmax)?,
        Some((edge, rel)) => {
            let g = net.graph();
            let length = g
                .edges()
                .get(edge)
                .ok_or_else(|| Error::Domain(format!("edge index {edge} out of range for {} edges", g.e())))?
                .length;
            let bent = NetworkAnalysis::new(&g.with_edge_length(edge, length * (1.0 + rel))?)?;
            Certifier::with_potentials(&net, &bent, args.tol)?.full_report(sources, kmax)?
        }
    };
    let text = match args.io.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json() + "\n",
        Format::Tsv => report.to_tsv(),
    };
    Ok(Outcome {
        text,
        destination: args.io.output.clone(),
        identities_failed: !report.pass,
    })
}
