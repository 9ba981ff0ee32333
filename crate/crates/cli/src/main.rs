//! `psca`: construct, verify, bound and search for perfect sequence
//! covering arrays from the command line.
//!
//! Exit codes: 0 success or pass, 1 verification failure or no witness,
//! 2 usage or input error, 3 internal error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use psca::construct::{catalog, iterate_to_power, CATALOG_NAMES};
use psca::coverage::CoverageOptions;
use psca::format::{read_array, write_array, ArrayFile};
use psca::linalg::{bound_report, incidence_matrix_capped, rank_exact, rank_mod_p};
use psca::plane::{affine_plane, canned_plane_order3};
use psca::search::{exists_lambda, exists_lambda1, max_coverage, Budget, SearchOptions, SearchOutcome, SearchStatus};
use psca::verify::{certify, Claim};
use psca::{Error, PermutationArray};

#[derive(Parser)]
#[command(
    name = "psca",
    version,
    about = "Perfect sequence covering arrays",
    arg_required_else_help = true
)]
struct Cli {
    /// Worker threads for coverage counting (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on table memory, in MiB.
    #[arg(long, global = true, default_value_t = 512)]
    memory_cap_mb: u64,
    /// Wall-clock budget for searches, in seconds.
    #[arg(long, global = true)]
    budget_secs: Option<u64>,
    /// Reserved; every algorithm here is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLike,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Psca3,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Mode {
    Lambda1,
    Lambda,
    Maxcov,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a catalog array or a squaring-construction array.
    Construct {
        #[arg(long, conflicts_with = "target")]
        catalog: Option<String>,
        /// Build PSCA(3^r, 3) by repeated squaring.
        #[arg(long, value_enum, requires = "r")]
        target: Option<Target>,
        #[arg(long)]
        r: Option<u32>,
        /// List catalog names and exit.
        #[arg(long)]
        list: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify an array against a multiplicity claim.
    Verify {
        /// Array file, `-` for stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        /// Sequence length; defaults to the file header.
        #[arg(long)]
        k: Option<usize>,
        /// Claimed multiplicity; defaults to |X|/k!.
        #[arg(long, conflicts_with = "covering")]
        lambda: Option<u32>,
        /// Only require every sequence to be covered at least once.
        #[arg(long)]
        covering: bool,
    },
    /// Rank of the t-sequence incidence matrix of an array.
    Rank {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        /// Prime modulus; rank over the rationals when absent.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Lower and upper bounds on the least multiplicity g(n,k).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive search for small cases.
    Search {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Array size (maxcov).
        #[arg(long, required_if_eq("mode", "maxcov"))]
        m: Option<usize>,
        /// Multiplicity (lambda mode).
        #[arg(long, required_if_eq("mode", "lambda"))]
        lambda: Option<u32>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Do not fix the identity as a member.
        #[arg(long)]
        no_symmetry: bool,
        /// Count all optimal arrays (maxcov).
        #[arg(long)]
        enumerate_all: bool,
        /// Write the witness here in array format.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the blocks of the affine plane of order q.
    Plane {
        #[arg(long, required_unless_present = "canned")]
        q: Option<u64>,
        /// The hand-labelled plane of order 3.
        #[arg(long, conflicts_with = "q")]
        canned: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type Run = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Internal(_)) { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Run {
    let cov = CoverageOptions {
        memory_cap: (cli.memory_cap_mb as u128) << 20,
        ..CoverageOptions::default()
    };
    match &cli.cmd {
        Cmd::Construct {
            catalog: name,
            target,
            r,
            list,
            output,
        } => {
            if *list {
                for name in CATALOG_NAMES {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let (array, k) = match (name, target, r) {
                (Some(name), _, _) => {
                    let e = catalog(name)?;
                    (e.array, e.k)
                }
                (None, Some(Target::Psca3), Some(r)) => (iterate_to_power(*r, &cov)?, 3),
                _ => {
                    return Err(Failure::Usage(
                        "construct needs --catalog <name> or --target psca3 --r <r>".into(),
                    ))
                }
            };
            write_to(output.as_deref(), |w| write_array(w, &array, k))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            input,
            k,
            lambda,
            covering,
        } => {
            let file = read_input(input)?;
            let k = k.unwrap_or(file.k);
            let claim = if *covering {
                Claim::CoveringOnly
            } else if let Some(l) = lambda {
                Claim::Lambda(*l)
            } else {
                Claim::Lambda(implied_lambda(&file.array, k))
            };
            let cert = certify(&file.array, k, claim, &cov)?;
            emit(cli.format, &cert)?;
            Ok(if cert.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Rank { input, t, modulus } => {
            let file = read_input(input)?;
            let a = incidence_matrix_capped(&file.array, *t, cov.memory_cap)?;
            let rank = match modulus {
                Some(p) => rank_mod_p(&a, *p)?,
                None => rank_exact(&a),
            };
            let size = file.array.len();
            let report = RankReport {
                n: file.array.n(),
                t: *t,
                rows: a.rows(),
                cols: a.cols(),
                field: modulus.map_or("Q".to_string(), |p| format!("GF({p})")),
                rank,
                size,
                comparison: if rank == size { "rank = |X|" } else { "rank < |X|" },
            };
            emit(cli.format, &report)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bound { n, k } => {
            emit(cli.format, &bound_report(*n, *k)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Search {
            mode,
            n,
            k,
            m,
            lambda,
            max_nodes,
            no_symmetry,
            enumerate_all,
            output,
        } => {
            let opts = SearchOptions {
                budget: Budget {
                    max_time: cli.budget_secs.map(Duration::from_secs),
                    max_nodes: *max_nodes,
                },
                fix_identity: !no_symmetry,
                memory_cap: cov.memory_cap,
            };
            let outcome = match mode {
                Mode::Lambda1 => exists_lambda1(*n, *k, &opts)?,
                Mode::Lambda => exists_lambda(*n, *k, lambda.unwrap_or(1), &opts)?,
                Mode::Maxcov => max_coverage(*n, *k, m.unwrap_or(1), &opts, *enumerate_all)?,
            };
            if let (Some(path), Some(x)) = (output, &outcome.witness) {
                write_to(Some(path), |w| write_array(w, x, *k))?;
            }
            let found = outcome.status == SearchStatus::Found;
            emit(cli.format, &SearchSummary::new(*mode, *n, *k, *m, *lambda, outcome))?;
            Ok(if found { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Plane { q, canned } => {
            let plane = if *canned {
                canned_plane_order3()
            } else {
                affine_plane(q.expect("clap requires --q without --canned"))?
            };
            print!("{}", plane.dump());
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// `|X|/k!` rounded down, at least 1; a wrong size then fails the certificate.
fn implied_lambda(x: &PermutationArray, k: usize) -> u32 {
    let kfact = psca::combin::factorial(k as u64).unwrap_or(u128::MAX);
    u32::try_from(x.len() as u128 / kfact).unwrap_or(u32::MAX).max(1)
}

fn read_input(path: &Path) -> Result<ArrayFile, Failure> {
    if path.as_os_str() == "-" {
        Ok(read_array(io::stdin().lock())?)
    } else {
        let f = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(read_array(BufReader::new(f))?)
    }
}

fn write_to(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> psca::Result<()>) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RankReport {
    n: usize,
    t: usize,
    rows: usize,
    cols: usize,
    field: String,
    rank: usize,
    size: usize,
    comparison: &'static str,
}

#[derive(Serialize)]
struct SearchSummary {
    mode: Mode,
    n: usize,
    k: usize,
    m: Option<usize>,
    lambda: Option<u32>,
    status: SearchStatus,
    best_value: Option<u64>,
    optimal_count: Option<u64>,
    nodes_explored: u64,
    elapsed_secs: f64,
    witness: Vec<String>,
}

impl SearchSummary {
    fn new(mode: Mode, n: usize, k: usize, m: Option<usize>, lambda: Option<u32>, o: SearchOutcome) -> Self {
        let witness = o
            .witness
            .map(|x| {
                x.perms()
                    .iter()
                    .map(|p| if n <= 9 { p.compact() } else { p.to_string() })
                    .collect()
            })
            .unwrap_or_default();
        SearchSummary {
            mode,
            n,
            k,
            m,
            lambda,
            status: o.status,
            best_value: o.best_value,
            optimal_count: o.optimal_count,
            nodes_explored: o.nodes_explored,
            elapsed_secs: o.elapsed.as_secs_f64(),
            witness,
        }
    }
}

fn emit(format: Format, value: &impl Serialize) -> Result<(), Failure> {
    let v = serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?;
    let mut out = String::new();
    match format {
        Format::JsonLike => {
            out = serde_json::to_string_pretty(&v).map_err(|e| Error::Internal(e.to_string()))?;
            out.push('\n');
        }
        Format::Text => render(&v, 0, &mut out),
    }
    io::stdout().lock().write_all(out.as_bytes())?;
    Ok(())
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Indented `key: value` lines; arrays become `- item` lines.
fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None if matches!(val, Value::Array(a) if a.is_empty()) => {
                        out.push_str(&format!("{pad}{key}: []\n"))
                    }
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
