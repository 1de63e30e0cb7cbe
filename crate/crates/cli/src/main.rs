mod commands;
mod config;
mod error;
mod render;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockhall_core::hall::Basis;
use fockhall_core::wedge::Sign;

use commands::Central;
use config::{Format, Overrides, RunConfig};
use error::{CliError, EXIT_USAGE, EXIT_VERIFY};
use render::Output;
use verify::SuiteName;

#[derive(Parser)]
#[command(name = "fockhall", version, about = "Hall algebras of cyclic quivers and the q-deformed Fock space")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Number of vertices of the cyclic quiver.
    #[arg(long, global = true, allow_hyphen_values = true)]
    n: Option<i64>,
    /// Largest partition size (or total dimension) covered.
    #[arg(long, global = true, allow_hyphen_values = true)]
    max_size: Option<i64>,
    /// Heisenberg / central-element index.
    #[arg(long, global = true)]
    t: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Allow max-size beyond the hard cap.
    #[arg(long, global = true)]
    unsafe_scale: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Representation-theoretic combinatorics of multisegments and partitions.
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// The Ringel–Hall algebra.
    Hall {
        #[command(subcommand)]
        cmd: HallCmd,
    },
    /// Semi-infinite q-wedges.
    Wedge {
        #[command(subcommand)]
        cmd: WedgeCmd,
    },
    /// The Fock space.
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// Run a verification suite; exits 1 on the first failing identity.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteName,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Generic extension M(m1) * M(m2) (m1 quotient, m2 submodule).
    GenericExt {
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
        /// Work over the infinite line instead of the cycle.
        #[arg(long)]
        line: bool,
    },
    /// Whether a ≤_deg b.
    DegLeq {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        line: bool,
    },
    /// Ladder word of an n-regular partition.
    Ladder {
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    U,
    Tilde,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::U => Basis::U,
            BasisArg::Tilde => Basis::Tilde,
        }
    }
}

#[derive(Subcommand)]
enum HallCmd {
    /// Product of two Hall elements.
    Mul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value = "tilde")]
        basis: BasisArg,
    },
    /// Central elements c_t, x_t or z_t.
    Central {
        #[arg(long, value_enum, default_value = "c")]
        which: Central,
        #[arg(long, value_enum, default_value = "tilde")]
        basis: BasisArg,
    },
    /// The component γ_d of the restriction to the line.
    Gamma {
        #[arg(long)]
        d: String,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "tilde")]
        basis: BasisArg,
    },
    /// Canonical basis of one grade.
    Canonical {
        #[arg(long)]
        grade: String,
        #[arg(long)]
        line: bool,
        #[arg(long, value_enum, default_value = "tilde")]
        basis: BasisArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum WedgeCmd {
    /// Normal form of ω_{i_1} ∧ ⋯ ∧ ω_{i_N} ∧ |charge − N⟩ for any word.
    Straighten {
        #[arg(long)]
        wedge: String,
    },
    /// B_t^± and z_t^± applied to a normally ordered wedge vector.
    Heisenberg {
        #[arg(long)]
        wedge: String,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
}

#[derive(Subcommand)]
enum FockCmd {
    /// Canonical basis b_λ for all |λ| ≤ max-size, by content block.
    Canonical,
    /// Apply a generator (E<i>, F<i>, K<i>, Kinv<i>, Kdelta<t>, z+<t>, z-<t>) to |λ⟩.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
        #[arg(long)]
        lambda: String,
    },
    /// Bar involution of |λ⟩.
    Bar {
        #[arg(long)]
        lambda: String,
    },
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<(Output, Option<String>), CliError> {
    let n = cfg.n;
    let out = match &cli.command {
        Command::Quiver { cmd } => match cmd {
            QuiverCmd::GenericExt { m1, m2, line } => {
                let kind = commands::kind_of(cfg, *line)?;
                commands::generic_extension(&commands::multisegment(kind, m1, "m1")?, &commands::multisegment(kind, m2, "m2")?)?
            }
            QuiverCmd::DegLeq { a, b, line } => {
                let kind = commands::kind_of(cfg, *line)?;
                commands::degeneration(&commands::multisegment(kind, a, "a")?, &commands::multisegment(kind, b, "b")?)?
            }
            QuiverCmd::Ladder { lambda } => commands::ladder(&commands::partition(lambda)?, n)?,
        },
        Command::Hall { cmd } => match cmd {
            HallCmd::Mul { x, y, basis } => {
                commands::hall_mul(&commands::hall_element(x, "x")?, &commands::hall_element(y, "y")?, (*basis).into())?
            }
            HallCmd::Central { which, basis } => commands::hall_central(*which, cfg.t_max, n, (*basis).into())?,
            HallCmd::Gamma { d, x, basis } => {
                commands::hall_gamma(&commands::dim_vector(d, "d")?, &commands::hall_element(x, "x")?, (*basis).into())?
            }
            HallCmd::Canonical { grade, line, basis } => {
                commands::hall_canonical(commands::kind_of(cfg, *line)?, &commands::dim_vector(grade, "grade")?, (*basis).into())?
            }
        },
        Command::Wedge { cmd } => match cmd {
            WedgeCmd::Straighten { wedge } => commands::straighten_wedge(wedge, n)?,
            WedgeCmd::Heisenberg { wedge, sign } => {
                let sign = match sign {
                    SignArg::Plus => Sign::Plus,
                    SignArg::Minus => Sign::Minus,
                };
                commands::heisenberg(wedge, cfg.t_max, sign, n)?
            }
        },
        Command::Fock { cmd } => match cmd {
            FockCmd::Canonical => commands::canonical(cfg)?,
            FockCmd::Act { generator, lambda } => commands::act(&commands::generator(generator)?, &commands::partition(lambda)?, n)?,
            FockCmd::Bar { lambda } => commands::bar(&commands::partition(lambda)?, n)?,
        },
        Command::Verify { suite } => {
            let report = verify::run(cfg, *suite)?;
            let failure = report
                .first_failure()
                .map(|c| format!("{} / {}: counterexample {}", c.suite, c.identity, c.counterexample.as_deref().unwrap_or("")));
            return Ok((report.output(cfg), failure));
        }
    };
    Ok((out, None))
}

fn emit(text: &str, cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::internal(e.to_string()))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    let flags = Overrides {
        n: g.n,
        max_size: g.max_size,
        t_max: g.t,
        format: g.format,
        seed: g.seed,
        out: g.out.clone(),
        unsafe_scale: g.unsafe_scale,
    };
    let cfg = RunConfig::resolve(g.config.as_ref(), flags)?;
    let (output, failure) = dispatch(cli, &cfg)?;
    emit(&output.render(cfg.format), &cfg)?;
    match failure {
        Some(msg) => {
            eprintln!("verification failed: {msg}");
            Ok(EXIT_VERIFY)
        }
        None => Ok(0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
