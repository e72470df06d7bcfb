//! Command-line front end: reads wlskit-v1 JSON documents, runs the exact
//! group/matrix/spectral/ring procedures, and emits deterministic reports.
//! Exit codes: 0 decided, 1 invalid input, 2 budget exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wlskit_core::error::Error;

#[derive(Parser)]
#[command(name = "wlskit", version, disable_help_subcommand = true)]
#[command(about = "Exact-arithmetic toolkit for abelian groups, spectral sequences, \
integer-matrix orders, and cohomology ring invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Finitely generated abelian groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Integer matrix order and root procedures.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Spectral sequences of filtered cochain complexes.
    #[command(subcommand)]
    Ss(SsCmd),
    /// Graded cohomology rings and WLS invariants.
    #[command(subcommand)]
    Ring(RingCmd),
}

#[derive(Args)]
pub struct InFile {
    /// Input document path.
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Smith normal form of an integer matrix, with transforms.
    Snf(InFile),
    /// Canonical form (rank, torsion coefficients) of a presented group.
    Canon(InFile),
    /// Exponent of a presented group.
    Exp(InFile),
    /// Order of an automorphism given as a morphism document.
    Autorder(InFile),
    /// Birkhoff type of a subgroup of (Z/p^d)^m.
    Subtype {
        #[command(flatten)]
        input: InFile,
        /// Prime p.
        #[arg(long)]
        p: u64,
        /// Exponent d of the cyclic factors.
        #[arg(long)]
        d: u32,
        /// Rank m of the ambient group.
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
pub enum MatrixCmd {
    /// Minimal finite order of a GL(m,Z) matrix, or an infiniteness witness.
    Order(InFile),
    /// Quasi-unipotence test via cyclotomic factorization.
    Quasiunipotent(InFile),
    /// Exhaustive bounded search for an r-th root in GL(m,Z).
    Root {
        #[command(flatten)]
        input: InFile,
        /// Root index r (find B with B^r = A).
        #[arg(long)]
        r: u64,
        /// Entry bound of the search box.
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Binomial identities relating a unipotent B and A = B^s.
    Binomial {
        #[command(flatten)]
        input: InFile,
        /// Power s.
        #[arg(long)]
        s: u64,
    },
}

#[derive(Subcommand)]
pub enum SsCmd {
    /// All spectral pages E_2 .. E_{L+2} of a filtered complex.
    Pages(InFile),
    /// Compare integral page ranks with the rational spectral sequence.
    Tensorq(InFile),
    /// Does the rationalized spectral sequence degenerate at E_2?
    #[command(name = "degenerate-q")]
    DegenerateQ(InFile),
    /// Lattice inclusions E_k -> E_2 with exponent bounds.
    Inclusion {
        #[command(flatten)]
        input: InFile,
        /// Page index k >= 2.
        #[arg(long)]
        page: usize,
    },
    /// The lambda/mu/Lambda degeneracy bound chain.
    Bound {
        /// Base integer n.
        #[arg(long)]
        n: String,
        /// Filtration index p.
        #[arg(long)]
        p: u32,
        /// Complementary index q.
        #[arg(long)]
        q: u32,
        /// Page index k >= 2.
        #[arg(long)]
        k: u32,
        /// Exponent of the high-page inclusion.
        #[arg(long = "iota-high")]
        iota_high: String,
        /// Exponent of the page-3 inclusion.
        #[arg(long = "iota3")]
        iota_3: String,
        /// Exponent of the comparison map.
        #[arg(long)]
        w: String,
    },
}

#[derive(Subcommand)]
pub enum RingCmd {
    /// Check the graded ring axioms.
    Validate(InFile),
    /// Decide whether a degree-2 class is a WLS class.
    Wls {
        #[command(flatten)]
        input: InFile,
        /// Degree-2 class as a JSON array of rationals, e.g. "[1, 1/2]".
        #[arg(long)]
        omega: String,
    },
    /// Seeded search for a WLS class.
    #[command(name = "wls-find")]
    WlsFind {
        #[command(flatten)]
        input: InFile,
        /// Number of random attempts.
        #[arg(long, default_value_t = 500)]
        attempts: u32,
        /// Height bound for random rational coordinates.
        #[arg(long, default_value_t = 10)]
        height: i64,
    },
    /// Longest nonzero product of degree-1 classes.
    Tau(InFile),
    /// Cokernel order of the integral cup map in one degree.
    Delta {
        #[command(flatten)]
        input: InFile,
        /// Integral class as a JSON array, e.g. "[2, 0]".
        #[arg(long)]
        lambda: String,
        /// Target degree.
        #[arg(long)]
        d: usize,
    },
    /// max of the top two cup-map defects.
    C3 {
        #[command(flatten)]
        input: InFile,
        /// Integral class; when omitted, a seeded WLS search provides one.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Upper bound min(n, (n + tau)/2) for the discrete symmetry degree.
    #[command(name = "discsym-bound")]
    DiscsymBound(InFile),
    /// Tensor product of two rings (emits a ring document).
    Product {
        /// Left factor document.
        left: PathBuf,
        /// Right factor document.
        right: PathBuf,
    },
    /// Betti numbers with the 2^tau and binomial lower bounds.
    Betti(InFile),
    /// Check |G|^2 <= c3^2 |G_x|^n exactly.
    Stabilizer {
        /// The constant c3.
        #[arg(long)]
        c3: String,
        /// Manifold dimension n.
        #[arg(long)]
        n: usize,
        /// Order of the acting group.
        #[arg(long)]
        g: String,
        /// Order of the stabilizer.
        #[arg(long)]
        gx: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reserves exit code 2; invalid usage here is exit 1,
            // while --help and --version remain successes
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format;
    let out = cli.out.clone();
    match commands::execute(&cli) {
        Ok(report) => match output::emit(&report, format, out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded(_) => 2,
                _ => 1,
            };
            output::emit_error(&commands::command_name(&cli.command), &e, format, out.as_deref());
            ExitCode::from(code)
        }
    }
}
