//! `bm`: exact Boros-Moll polynomials, property sweeps, Meixner-structure
//! enumeration, bijections and the quartic-integral cross-check.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage error,
//! 3 enumeration refused above the brute-force limit.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bm_core::boros_moll::Route;
use bm_core::structures::DEFAULT_BRUTE_LIMIT;
use clap::{Args, Parser, Subcommand, ValueEnum};

use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "bm",
    version,
    about = "Exact Boros-Moll polynomials and Meixner-structure enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest m for exhaustive enumeration.
    #[arg(long, global = true, env = "BM_BRUTE_LIMIT", default_value_t = DEFAULT_BRUTE_LIMIT)]
    brute_limit: usize,

    /// Worker threads for parallel sums (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct MRange {
    #[arg(long)]
    m: Option<usize>,
    /// Sweep m = 0..=m_max.
    #[arg(long)]
    m_max: Option<usize>,
}

impl MRange {
    pub fn values(&self) -> Vec<usize> {
        match (self.m, self.m_max) {
            (Some(m), _) => vec![m],
            (None, Some(max)) => (0..=max).collect(),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }

    pub fn single(&self) -> bool {
        self.m.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Double,
    Single,
    Hyp,
    Jacobi,
    All,
}

impl Method {
    pub fn routes(self) -> Vec<Route> {
        match self {
            Method::Double => vec![Route::Double],
            Method::Single => vec![Route::Single],
            Method::Hyp => vec![Route::Hyp],
            Method::Jacobi => vec![Route::Jacobi],
            Method::All => Route::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureKind {
    Reluctant,
    Endofunctions,
    BiEndofunctions,
    /// Bi-colored permutations (white, black).
    Colored2,
    /// 3-colored permutations (white, black, red).
    Colored3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Forward,
    Backward,
    Trace,
    RoundTrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeixnerKind {
    Endofunction,
    BiEndofunction,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate P_m at a rational point, or print P_m when --a is omitted.
    Eval {
        #[arg(long)]
        m: usize,
        /// Rational such as 3, -1/2 or 0.25.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Single)]
        method: Method,
    },
    /// Coefficient table d_0(m), ..., d_m(m).
    Coeffs(MRange),
    /// Positivity, unimodality, log-concavity and route equality.
    Check(MRange),
    /// Weighted-enumeration identity, closed forms and brute force.
    VerifyIdentity(MRange),
    /// List structures with their weights.
    Enumerate {
        #[arg(long, value_enum)]
        structure: StructureKind,
        #[arg(long, required_unless_present = "i")]
        m: Option<usize>,
        /// |A| for reluctant functions.
        #[arg(long, requires = "j")]
        i: Option<usize>,
        /// |B| for reluctant functions.
        #[arg(long, requires = "i")]
        j: Option<usize>,
    },
    /// Apply the Foata-type bijections.
    Bijection {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Structure type on the endofunction side.
        #[arg(long, value_enum, default_value_t = MeixnerKind::BiEndofunction)]
        structure: MeixnerKind,
        /// Size for round-trip mode.
        #[arg(long, required_if_eq("mode", "round-trip"))]
        m: Option<usize>,
        /// JSON input; read from stdin when neither this nor --input-file is given.
        #[arg(long, conflicts_with = "input_file")]
        input: Option<String>,
        #[arg(long)]
        input_file: Option<PathBuf>,
    },
    /// Adaptive quadrature of the quartic integral against its closed form.
    Integral {
        #[command(flatten)]
        range: MRange,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.5, 1.0, 2.0])]
        a: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// A row fails when |quadrature - closed form| reaches this value.
        #[arg(long, default_value_t = 1e-6)]
        max_residual: f64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(bm_core::Error),
    Io(String),
}

impl From<bm_core::Error> for CliError {
    fn from(e: bm_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use bm_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::LimitExceeded { .. }) => 3,
            CliError::Core(
                E::ParseRational(_)
                | E::InvalidArgument(_)
                | E::InvalidStructure(_)
                | E::MalformedWord(_)
                | E::RedIsolation(_)
                | E::IndexOutOfRange { .. },
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn run(cli: Cli) -> Result<render::Report, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let fmt = cli.format;
    let limit = cli.brute_limit;
    match cli.command {
        Command::Eval { m, a, method } => commands::eval(m, a.as_deref(), method, fmt),
        Command::Coeffs(range) => commands::coeffs(&range, fmt),
        Command::Check(range) => commands::check(&range, fmt),
        Command::VerifyIdentity(range) => commands::verify_identity(&range, limit, fmt),
        Command::Enumerate { structure, m, i, j } => {
            commands::enumerate(structure, m, i.zip(j), limit, fmt)
        }
        Command::Bijection {
            mode,
            structure,
            m,
            input,
            input_file,
        } => {
            if mode == Mode::RoundTrip {
                commands::round_trip(m.expect("clap requires --m"), limit, fmt)
            } else {
                let text = read_input(input, input_file)?;
                commands::bijection(mode, structure, &text, fmt)
            }
        }
        Command::Integral {
            range,
            a,
            tol,
            max_residual,
        } => commands::integral(&range, &a, tol, max_residual, fmt),
    }
}

fn read_input(inline: Option<String>, path: Option<PathBuf>) -> Result<String, CliError> {
    match (inline, path) {
        (Some(s), _) => Ok(s),
        (None, Some(p)) => std::fs::read_to_string(&p)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display()))),
        (None, None) => {
            std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn emit(body: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match output {
        Some(path) => std::fs::write(path, body).map_err(io),
        None => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(io),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let result = run(cli).and_then(|report| {
        emit(&report.body, output.as_ref())?;
        Ok(report.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("bm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
