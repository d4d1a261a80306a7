use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use twisted_sylow::verify::{self, AnyGroup, Mode, Suite};
use twisted_sylow::{Error, Field, FieldSpec, Matrix, Ree, Suzuki, TwistedGroup};

/// Environment variable holding the worker count for parallel sweeps.
const WORKERS_ENV: &str = "TWISTED_SYLOW_WORKERS";

#[derive(Parser)]
#[command(
    name = "twisted-sylow",
    version,
    about = "Factor Suzuki and small Ree group elements into four unitriangular Sylow factors",
    after_help = "Set TWISTED_SYLOW_WORKERS to limit the number of worker threads."
)]
struct Cli {
    group: GroupKind,
    /// Field order: 2^(2m+1) for suzuki, 3^(2m+1) for ree.
    #[arg(long)]
    q: u64,
    /// Explicit field, e.g. "p=2 n=3 mod=1,1,0,1"; defaults to a fixed modulus.
    #[arg(long)]
    field: Option<FieldSpec>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Suzuki,
    Ree,
}

#[derive(Subcommand)]
enum Command {
    /// Factor one element read in the matrix text format.
    Factor {
        /// Matrix file, or "-" for standard input.
        #[arg(long, default_value = "-")]
        element: String,
    },
    /// Run a verification suite and print its report line.
    Verify {
        /// lemma1 (suzuki), lemma2 (ree), bruhat, factor, closure, form (suzuki).
        suite: Suite,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// List every element, or only count them.
    Enumerate {
        #[arg(long)]
        count_only: bool,
    },
    /// Factor uniformly random elements and self-check each product.
    Sample {
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Args)]
struct ModeArgs {
    /// Cover the whole parameter space (default for verify).
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Number of random cases.
    #[arg(long, value_name = "N")]
    sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        match self.sample {
            Some(count) if !self.exhaustive => Mode::Sample {
                count,
                seed: self.seed,
            },
            _ => Mode::Exhaustive,
        }
    }
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInGroup => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_workers() -> Result<(), String> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{WORKERS_ENV}={raw:?} is not a number"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn build_group(cli: &Cli) -> Result<AnyGroup, Failure> {
    let field = match &cli.field {
        Some(spec) if spec.order() != cli.q => {
            return Err(Failure::usage(format!(
                "--field has order {}, not {}",
                spec.order(),
                cli.q
            )));
        }
        Some(spec) => Field::new(spec.clone()),
        None => Field::with_order(cli.q)?,
    };
    let field = Arc::new(field);
    Ok(match cli.group {
        GroupKind::Suzuki => AnyGroup::Suzuki(Suzuki::with_field(field)?),
        GroupKind::Ree => AnyGroup::Ree(Ree::with_field(field)?),
    })
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let group = build_group(cli)?;
    match &group {
        AnyGroup::Suzuki(g) => run_command(g, &group, &cli.command, out),
        AnyGroup::Ree(g) => run_command(g, &group, &cli.command, out),
    }
}

fn run_command<G: TwistedGroup>(
    g: &G,
    any: &AnyGroup,
    command: &Command,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let io_err = |e: io::Error| Failure::usage(e);
    match command {
        Command::Factor { element } => {
            let text =
                read_source(element).map_err(|e| Failure::usage(format!("{element}: {e}")))?;
            let m = Matrix::parse(g.field(), G::DIM, &text)?;
            let fac = g.factor(&m)?;
            let ok = g.check_factorization(&m, &fac);
            write!(out, "{}", fac.to_text(G::NAME)).map_err(io_err)?;
            writeln!(out, "{}", if ok { "PRODUCT OK" } else { "PRODUCT FAILED" })
                .map_err(io_err)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Verify { suite, mode } => {
            let report = any.run_suite(*suite, mode.mode())?;
            writeln!(out, "{report}").map_err(io_err)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Enumerate { count_only } => {
            verify::check_exhaustive(g)?;
            if *count_only {
                writeln!(out, "{}", verify::distinct_elements(g).len()).map_err(io_err)?;
            } else {
                for m in g.elements() {
                    writeln!(out, "{}", m.to_text()).map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Sample { mode } => {
            let Mode::Sample { count, seed } = mode.mode() else {
                return Err(Failure::usage("sample needs --sample N"));
            };
            let results: Vec<(String, bool)> = (0..count)
                .into_par_iter()
                .map(|i| sample_one(g, seed, i))
                .collect::<Result<_, Error>>()?;
            let mut failures = 0;
            for (text, ok) in results {
                out.write_all(text.as_bytes()).map_err(io_err)?;
                failures += u64::from(!ok);
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn sample_one<G: TwistedGroup>(g: &G, seed: u64, index: u64) -> Result<(String, bool), Error> {
    let form = g.random_form(&mut verify::case_rng(seed, index));
    let m = g.rebuild(&form)?;
    let fac = g.factor(&m)?;
    let ok = g.check_factorization(&m, &fac);
    let mut text = fac.to_text(G::NAME);
    let _ = writeln!(text, "{}", if ok { "PRODUCT OK" } else { "PRODUCT FAILED" });
    Ok((text, ok))
}

fn read_source(source: &str) -> io::Result<String> {
    if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(source)
    }
}
