//! `fermat`: runs the arrangement, ideal and containment checks from the
//! command line.
//!
//! Exit codes: 0 expected result confirmed, 1 deviation or evidence only,
//! 2 usage error, 3 budget exhausted.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermat_core::field::FieldKind;
use fermat_core::lab::Budgets;
use fermat_core::poly::CasDialect;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DEVIATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "fermat", version, about = "Exact checks for Fermat-type arrangements and their ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Target system for `--format cas-export`.
    #[arg(long, global = true, value_enum, default_value_t = Dialect::Macaulay2)]
    pub cas_dialect: Dialect,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "FERMAT_JOBS")]
    pub jobs: Option<usize>,

    /// Leave wall-clock timings out of reports so output is reproducible.
    #[arg(long, global = true)]
    pub no_timings: bool,

    /// S-pairs a Groebner computation may reduce before giving up.
    #[arg(long, global = true, env = "FERMAT_MAX_SPAIRS", default_value_t = Budgets::default().max_spairs)]
    pub max_spairs: usize,

    /// Cells (rows x columns) of a graded system over Q or Q(z).
    #[arg(long, global = true, env = "FERMAT_MAX_CELLS", default_value_t = Budgets::default().max_rational_cells)]
    pub max_cells: u64,

    /// Cells of a graded system modulo a prime.
    #[arg(long, global = true, env = "FERMAT_MAX_MODULAR_CELLS", default_value_t = Budgets::default().max_modular_cells)]
    pub max_modular_cells: u64,
}

impl Common {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            max_spairs: self.max_spairs,
            max_rational_cells: self.max_cells,
            max_modular_cells: self.max_modular_cells,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    CasExport,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Macaulay2,
    Singular,
}

impl From<Dialect> for CasDialect {
    fn from(d: Dialect) -> Self {
        match d {
            Dialect::Macaulay2 => CasDialect::Macaulay2,
            Dialect::Singular => CasDialect::Singular,
        }
    }
}

/// `N` and `n`.
#[derive(Args, Debug, Clone, Copy)]
pub struct Arrangement {
    /// Projective dimension (number of variables minus one).
    #[arg(long = "N")]
    pub dim: usize,
    /// Degree of the Fermat factors.
    #[arg(long = "n")]
    pub degree: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the bracket identities for all sizes up to --k-max.
    Lemmas {
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Comma-separated degrees.
        #[arg(long = "n", value_delimiter = ',', default_value = "3,4,5")]
        degrees: Vec<u32>,
    },
    /// List the codimension-two flats of the arrangement.
    Flats {
        #[command(flatten)]
        arr: Arrangement,
    },
    /// List the ideal generators.
    Gens {
        #[command(flatten)]
        arr: Arrangement,
        /// Coefficient field for the export.
        #[arg(long, default_value = "rational")]
        field: FieldKind,
    },
    /// Check that F lies in the third symbolic power but not in the square.
    Contain {
        #[command(flatten)]
        arr: Arrangement,
        /// Field for the ordinary-power part: rational, prime:P or cyclotomic:N.
        #[arg(long, default_value = "rational")]
        field: FieldKind,
        /// Primes tried when the rational system is over budget.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Also reduce F modulo a Groebner basis of the square.
        #[arg(long)]
        groebner_check: bool,
    },
    /// Check the cone-intersection and generator identities (N >= 3) or
    /// generator completeness (N = 2 or --completeness).
    Structure {
        #[command(flatten)]
        arr: Arrangement,
        /// Defaults to the smallest prime congruent to 1 mod n.
        #[arg(long)]
        field: Option<FieldKind>,
        #[arg(long)]
        completeness: bool,
    },
    /// Recompute the coefficients of the non-membership argument.
    Prooftrace {
        #[command(flatten)]
        arr: Arrangement,
        /// Skip the scan over all generator pairs.
        #[arg(long)]
        no_scan: bool,
    },
}

/// What a command produced.
pub struct Output {
    pub text: String,
    pub code: u8,
}

fn dispatch(cli: &Cli) -> Result<Output, commands::Failure> {
    let c = &cli.common;
    match &cli.command {
        Command::Lemmas { k_max, degrees } => commands::lemmas(c, *k_max, degrees),
        Command::Flats { arr } => commands::flats(c, arr),
        Command::Gens { arr, field } => commands::gens(c, arr, *field),
        Command::Contain { arr, field, primes, groebner_check } => {
            commands::contain(c, arr, *field, primes, *groebner_check)
        }
        Command::Structure { arr, field, completeness } => commands::structure(c, arr, *field, *completeness),
        Command::Prooftrace { arr, no_scan } => commands::prooftrace(c, arr, !*no_scan),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let jobs = cli.common.jobs.unwrap_or(0);
    let result = if jobs > 0 { fermat_core::par::with_threads(jobs, || dispatch(&cli)) } else { dispatch(&cli) };
    match result {
        Ok(out) => {
            let written = match &cli.common.output {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
