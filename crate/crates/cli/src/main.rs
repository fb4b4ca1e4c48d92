//! `hurwitz`: reports over split-bundle invariants of low-degree covers.
//!
//! Exit status is 0 on success, 1 when a computed verdict is false and 2
//! on usage errors or unsupported `(d, g)`.

mod commands;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hurwitz::sweep::configure_workers;
use hurwitz::{CoverClass, Error, Parallelism, SplitBundle};

use report::{Format, Report};

const TSV_HELP: &str = "With --format tsv the first line is a header naming the columns; \
they are the same keys, in the same order, as the JSON fields (without schema, command and formula).";

#[derive(Parser, Debug)]
#[command(
    name = "hurwitz",
    version,
    about = "Split-bundle invariants of degree 3, 4 and 5 covers of P^1"
)]
struct Cli {
    /// Worker threads for sweeps; 1 runs sequentially.
    #[arg(long, global = true, env = "HURWITZ_THREADS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

/// A closed genus interval written `A..B` (inclusive), `A..=B` or `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for GenusRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad bound {t:?}: {e}"))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(GenusRange { lo, hi })
    }
}

fn bundle_arg(s: &str) -> Result<SplitBundle, String> {
    s.parse::<SplitBundle>().map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BundleOp {
    H0,
    H1,
    Cohomology,
    Chi,
    Aut,
    Dual,
    Twist,
    Sum,
    Tensor,
    Sym,
    Wedge,
    Det,
    Ext,
    Specializes,
}

impl BundleOp {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverKind {
    D3,
    D4,
    D5,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    g: i64,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    d: i64,
    #[arg(long, conflicts_with = "g_range", required_unless_present = "g_range")]
    g: Option<i64>,
    /// Closed interval such as 5..60.
    #[arg(long)]
    g_range: Option<GenusRange>,
}

impl SweepArgs {
    fn range(&self) -> GenusRange {
        match (self.g, self.g_range) {
            (Some(g), _) => GenusRange { lo: g, hi: g },
            (None, Some(r)) => r,
            (None, None) => unreachable!("clap enforces one of --g, --g-range"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebra and cohomology of a split bundle, e.g. `bundle h0 --E -1,-1`.
    #[command(after_help = TSV_HELP)]
    Bundle {
        #[arg(value_enum)]
        op: BundleOp,
        #[arg(long = "E", value_parser = bundle_arg, allow_hyphen_values = true)]
        e: SplitBundle,
        #[arg(long = "F", value_parser = bundle_arg, allow_hyphen_values = true)]
        f: Option<SplitBundle>,
        /// Twist amount, or the power for sym and wedge.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Tame Tschirnhausen bundles grouped by minimal summand, or a tameness check of --E.
    #[command(after_help = "TSV columns: d, g, m, count, generic, members.")]
    TameEnum {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long = "E", value_parser = bundle_arg)]
        e: Option<SplitBundle>,
    },
    /// Codimensions of Maroni loci of the generic bundles E[m].
    #[command(after_help = "TSV columns: d, g, m, generic, codim, via_severi.")]
    Maroni {
        #[command(flatten)]
        class: ClassArgs,
        /// Lower bound on codim M(E) for a bundle with the generic minimal summand.
        #[arg(long = "E", value_parser = bundle_arg, conflicts_with = "divisor")]
        e: Option<SplitBundle>,
        /// Report the divisorial Maroni locus instead.
        #[arg(long)]
        divisor: bool,
    },
    /// Degree-4 Casnati-Ekedahl locus C(F).
    #[command(after_help = "TSV columns: d, g, F, nonempty, codim, min_F, min_F_needed.")]
    Ce {
        #[arg(long, default_value_t = 4)]
        d: i64,
        #[arg(long)]
        g: i64,
        #[arg(long = "F", value_parser = bundle_arg)]
        f: SplitBundle,
    },
    /// Codimension of M(E,F) for d = 4 or 5.
    #[command(after_help = TSV_HELP)]
    Mef {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long = "E", value_parser = bundle_arg)]
        e: SplitBundle,
        #[arg(long = "F", value_parser = bundle_arg)]
        f: SplitBundle,
    },
    /// Picard rank bound against the number of boundary divisors.
    #[command(
        after_help = "TSV columns: d, g, e_labels, chi_e, chi_f, e, bound, boundary, verdict."
    )]
    Picbound(SweepArgs),
    /// Parameter-space dimension against moduli plus group dimension.
    #[command(after_help = "TSV columns: d, g, lhs, rhs, holds.")]
    Dimcheck(SweepArgs),
    /// Test-curve intersection matrices and their determinants.
    #[command(
        after_help = "TSV columns: d, g, [rows,] det, nonsingular; rows is omitted with --sweep."
    )]
    Matrix {
        #[arg(long, conflicts_with = "d_range")]
        d: Option<i64>,
        #[arg(long)]
        d_range: Option<GenusRange>,
        #[arg(long, conflicts_with = "g_range")]
        g: Option<i64>,
        #[arg(long)]
        g_range: Option<GenusRange>,
        /// One compact row per (d, g).
        #[arg(long)]
        sweep: bool,
        /// Print the determinant as a polynomial in d and g.
        #[arg(long)]
        symbolic: bool,
    },
    /// Sample explicit cover equations with a fixed seed.
    #[command(after_help = TSV_HELP)]
    Cover {
        #[arg(value_enum)]
        kind: CoverKind,
        #[arg(long)]
        g: i64,
        #[arg(long = "E", value_parser = bundle_arg)]
        e: Option<SplitBundle>,
        #[arg(long = "F", value_parser = bundle_arg)]
        f: Option<SplitBundle>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        /// Draws allowed before a cubic is declared degenerate.
        #[arg(long, default_value_t = 100)]
        attempts: u32,
        /// Zero L12 and L13 and check that Q5 factors (d5 only).
        #[arg(long)]
        degenerate: bool,
    },
}

fn pick(single: Option<i64>, range: Option<GenusRange>, what: &str) -> Result<GenusRange, Error> {
    match (single, range) {
        (Some(v), _) => Ok(GenusRange { lo: v, hi: v }),
        (None, Some(r)) => Ok(r),
        (None, None) => Err(Error::Precondition(format!(
            "matrix needs --{what} or --{what}-range"
        ))),
    }
}

fn run(cli: Cli) -> Result<(Report, Format), Error> {
    let mode = match cli.jobs {
        Some(0) => return Err(Error::OutOfRange("--jobs must be at least 1".into())),
        Some(1) => Parallelism::Sequential,
        Some(n) => {
            configure_workers(n);
            Parallelism::available()
        }
        None => Parallelism::available(),
    };
    let mut format = cli.format;
    let report = match cli.command {
        Command::Bundle { op, e, f, n } => commands::bundle(op, &e, f.as_ref(), n)?,
        Command::TameEnum { class, e } => {
            commands::tame_enum(&CoverClass::new(class.d, class.g)?, e.as_ref(), mode)?
        }
        Command::Maroni { class, e, divisor } => commands::maroni(
            &CoverClass::new(class.d, class.g)?,
            e.as_ref(),
            divisor,
            mode,
        )?,
        Command::Ce { d, g, f } => commands::ce(&CoverClass::new(d, g)?, &f)?,
        Command::Mef { class, e, f } => commands::mef(&CoverClass::new(class.d, class.g)?, &e, &f)?,
        Command::Picbound(s) => commands::picbound(s.d, s.range(), mode)?,
        Command::Dimcheck(s) => commands::dimcheck(s.d, s.range(), mode)?,
        Command::Matrix {
            d,
            d_range,
            g,
            g_range,
            sweep,
            symbolic,
        } => {
            let (ds, gs) = if symbolic {
                (GenusRange { lo: 4, hi: 4 }, GenusRange { lo: 3, hi: 3 })
            } else {
                (pick(d, d_range, "d")?, pick(g, g_range, "g")?)
            };
            commands::matrix(ds, gs, sweep, symbolic)?
        }
        Command::Cover {
            kind,
            g,
            e,
            f,
            seed,
            json,
            attempts,
            degenerate,
        } => {
            if json {
                format = Format::Json;
            }
            if degenerate && kind != CoverKind::D5 {
                return Err(Error::Precondition(
                    "--degenerate applies to d5 only".into(),
                ));
            }
            commands::cover(&commands::CoverOptions {
                kind,
                g,
                e,
                f,
                seed,
                attempts,
                degenerate,
            })?
        }
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = report.emit(format, &mut out).and_then(|_| out.flush()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::NonUniqueGeneric { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
