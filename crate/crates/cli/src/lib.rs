//! Command-line front end: argument handling, corpus and report I/O, and the
//! seeded randomized verification drivers.
//!
//! Exit statuses: `0` success, `1` a check failed, `2` usage or parse error,
//! `3` a resource cap was exceeded.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod random;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fjump_core::arith::parse_rational;
use fjump_core::{parse_polynomial, parse_polynomial_list, MonomialOrder, Prime};
use thiserror::Error;

pub use config::{Caps, Format, RunConfig};
pub use corpus::{load_corpus, parse_corpus, CorpusEntry};
pub use random::{random_polynomial, seeded_rng};
pub use report::{Record, Report, Status};
pub use verify::RandomParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fjump_core::Error),
    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(fjump_core::Error::ResourceExceeded { .. }) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fjump",
    version,
    about = "Frobenius roots, test ideals and F-jumping coefficients over F_p"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y", value_delimiter = ',')]
    pub vars: Vec<String>,
    /// Monomial order for Gröbner bases: lex or grevlex.
    #[arg(long, global = true, default_value = "grevlex")]
    pub order: String,
    #[arg(long, global = true, default_value_t = 2)]
    pub e_max: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = Caps::default().max_terms)]
    pub max_terms: u64,
    #[arg(long, global = true, default_value_t = Caps::default().max_pairs)]
    pub max_pairs: u64,
    #[arg(long, global = true, default_value_t = Caps::default().max_pe)]
    pub max_pe: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Corpus file of `p=<prime>; vars=<a,b>; f=<expr>` lines.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    /// Record wall-clock time per check (reports are then not reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frobenius root I_e(f^a).
    Froot {
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 1)]
        power: u64,
        /// Expand f^a instead of recursing on its base-p digits.
        #[arg(long)]
        direct: bool,
        exprs: Vec<String>,
    },
    /// Test ideal tau(f^t), computed up to level --e-max.
    Tau {
        /// Rational exponent, `a/b` or an integer.
        #[arg(long)]
        t: String,
        exprs: Vec<String>,
    },
    /// Nested nu-intervals and a candidate F-pure threshold at the origin.
    Fpt {
        #[arg(long, default_value_t = 64)]
        d_max: u64,
        exprs: Vec<String>,
    },
    /// F-jumping coefficients in (0, 1] from the level --e-max chain.
    Jumps {
        #[arg(long, default_value_t = 64)]
        d_max: u64,
        exprs: Vec<String>,
    },
    /// Jacobian ideal generators.
    Jacobian {
        #[arg(long)]
        colength: bool,
        exprs: Vec<String>,
    },
    /// Reduced Gröbner basis; generators may also be separated by `;`.
    Gb { generators: Vec<String> },
    /// Randomized and corpus-driven checks.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
}

#[derive(Debug, Args, Clone, Copy)]
pub struct RandomArgs {
    /// Total degree bound of random polynomials.
    #[arg(long, default_value_t = 6)]
    pub degree: u32,
    /// Term count bound of random polynomials.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    /// Largest operator order drawn.
    #[arg(long)]
    pub max_order: Option<u64>,
}

impl From<RandomArgs> for RandomParams {
    fn from(a: RandomArgs) -> Self {
        RandomParams {
            degree: a.degree,
            terms: a.terms,
            max_order: a.max_order,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Sum over l of (l-1) D_l(f) D_{m-l}(f^{m-1}) vanishes.
    Identity(RandomArgs),
    /// Leibniz rule and composition law of divided powers.
    Leibniz(RandomArgs),
    /// D_{p^e}(f^{p^e}) = (df/dx_i)^{p^e}.
    Lemma31(RandomArgs),
    /// D_m is linear over p^e-th powers when m < p^e.
    Linearity(RandomArgs),
    /// The Jacobian ideal lies in tau(f^{1-1/p^e}) for e = 1..=e_max.
    Main { exprs: Vec<String> },
    /// Number of jumps in (0, 1] is at most dim R/Jac(f) + 1.
    Corollary { exprs: Vec<String> },
}

fn config_from(g: &GlobalArgs) -> Result<RunConfig, CliError> {
    let order: MonomialOrder = g.order.parse()?;
    let cfg = RunConfig {
        prime: g.prime,
        vars: g.vars.iter().map(|v| v.trim().to_string()).collect(),
        order,
        e_max: g.e_max,
        seed: g.seed,
        trials: g.trials,
        caps: Caps {
            max_terms: g.max_terms,
            max_pairs: g.max_pairs,
            max_pe: g.max_pe,
        },
        format: g.format,
        timing: g.timing,
        jobs: g.jobs,
    };
    cfg.validate()?;
    if let Some(p) = cfg.prime {
        Prime::new(p)?;
    }
    Ok(cfg)
}

/// Corpus entries followed by the positional expressions.
fn inputs(cfg: &RunConfig, corpus: &Option<PathBuf>, exprs: &[String]) -> Result<Vec<CorpusEntry>, CliError> {
    let mut out = match corpus {
        Some(path) => load_corpus(path, cfg.limits())?,
        None => Vec::new(),
    };
    if !exprs.is_empty() {
        let ring = cfg.fp_ring()?;
        for e in exprs {
            out.push(CorpusEntry {
                line: 0,
                prime: ring.prime(),
                ring: ring.clone(),
                f: parse_polynomial(&ring, e)?,
            });
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "no input polynomial: pass an expression or --corpus".into(),
        ));
    }
    Ok(out)
}

fn shell_quote(arg: &str) -> String {
    let plain = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_=.,/:+^*".contains(c));
    if plain {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

/// Executes one command and returns its report.
pub fn execute(cli: &Cli, command_echo: String) -> Result<Report, CliError> {
    let cfg = config_from(&cli.global)?;
    let corpus = &cli.global.corpus;
    let results = match &cli.command {
        Command::Froot {
            e,
            power,
            direct,
            exprs,
        } => commands::froot(&cfg, &inputs(&cfg, corpus, exprs)?, *e, *power, *direct)?,
        Command::Tau { t, exprs } => {
            let t = parse_rational(t)?;
            commands::tau(&cfg, &inputs(&cfg, corpus, exprs)?, &t)?
        }
        Command::Fpt { d_max, exprs } => commands::fpt(&cfg, &inputs(&cfg, corpus, exprs)?, *d_max)?,
        Command::Jumps { d_max, exprs } => commands::jumps(&cfg, &inputs(&cfg, corpus, exprs)?, *d_max)?,
        Command::Jacobian { colength, exprs } => commands::jacobian(&cfg, &inputs(&cfg, corpus, exprs)?, *colength)?,
        Command::Gb { generators } => {
            let ring = cfg.fp_ring()?;
            let mut gens = Vec::new();
            for g in generators {
                gens.extend(parse_polynomial_list(&ring, g)?);
            }
            if gens.is_empty() {
                return Err(CliError::Usage("no generators given".into()));
            }
            commands::gb(&cfg, &ring, gens, cfg.order)?
        }
        Command::Verify { check } => match check {
            VerifyCommand::Identity(a) => verify::verify_identity(&cfg, &(*a).into())?,
            VerifyCommand::Leibniz(a) => verify::verify_leibniz(&cfg, &(*a).into())?,
            VerifyCommand::Lemma31(a) => verify::verify_lemma31(&cfg, &(*a).into())?,
            VerifyCommand::Linearity(a) => verify::verify_linearity(&cfg, &(*a).into())?,
            VerifyCommand::Main { exprs } => verify::verify_main(&cfg, &inputs(&cfg, corpus, exprs)?)?,
            VerifyCommand::Corollary { exprs } => verify::verify_corollary(&cfg, &inputs(&cfg, corpus, exprs)?)?,
        },
    };
    Ok(Report {
        command: command_echo,
        config: cfg,
        results,
    })
}

/// Parses `args` (including the program name), runs the command, writes the
/// report to `out` and diagnostics to `err`, and returns the exit status.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let echo = std::iter::once("fjump".to_string())
        .chain(args.iter().skip(1).map(|a| shell_quote(&a.to_string_lossy())))
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli, echo) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.global.format).as_bytes());
            if report.failed() {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
