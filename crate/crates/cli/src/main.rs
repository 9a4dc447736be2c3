//! `ibiskit`: base sizes, irredundant bases, and IBIS decisions for permutation groups.
//!
//! Exit status: 0 when a result was decided or constructed, 2 when the
//! outcome is `UNDECIDED` (budget exhausted or no witness found), 1 on usage,
//! input, or expectation failures.

mod commands;
mod spec;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ibiskit::Error;

#[derive(Parser)]
#[command(name = "ibiskit", version, about = "Decide whether permutation groups are IBIS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON (no timing information).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text with timing (the default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Args, Clone)]
pub struct Common {
    /// `catalog:NAME` or `file:PATH`.
    pub group: String,
    /// `natural`, `subsets:k`, or `cosets:SUBGROUP` (e.g. `cosets:file:H.grp`).
    #[arg(long, default_value = "natural")]
    pub action: String,
    /// Seed for randomized procedures.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Search-node budget.
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
    /// Largest degree allowed for an induced action.
    #[arg(long, default_value_t = 1_000_000)]
    pub index_cap: u128,
    /// Worker threads for the exhaustive search.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, order, and orbit structure.
    Order(Common),
    /// Minimum base size b(G).
    BaseSize(Common),
    /// Exhaustive IBIS decision with a certificate.
    IsIbis(Common),
    /// List irredundant bases, or irredundant tuples of a given length.
    EnumerateBases {
        #[command(flatten)]
        common: Common,
        /// Enumerate tuples of this length instead of full bases.
        #[arg(long)]
        length: Option<usize>,
        /// Every tuple rather than one per orbit.
        #[arg(long)]
        all: bool,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Extract the family of base point sets and check the exchange axiom.
    MatroidCheck(Common),
    /// Check that every reordering of every irredundant base is irredundant.
    ReorderCheck(Common),
    /// Random search for an irredundant tuple with nontrivial stabilizer.
    T1 {
        #[command(flatten)]
        common: Common,
        /// Tuple length (default: b(G)).
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_iters: u64,
    },
    /// Random descending chain of conjugate intersections of a subgroup.
    T2 {
        #[command(flatten)]
        common: Common,
        /// `file:PATH`, `stabilizer:P`, or `gens:C1;C2`, in the source group's points.
        #[arg(long)]
        subgroup: String,
        /// Chain length (default: b of the coset action).
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        max_iters: u64,
    },
    /// Random search inside a subgroup, lifted to the whole group.
    T3 {
        #[command(flatten)]
        common: Common,
        /// `file:PATH`, `stabilizer:P`, or `gens:C1;C2`, in the source group's points.
        #[arg(long)]
        restrict: String,
        /// Tuple length (default: b(G)).
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_iters: u64,
    },
    /// Transitivity and primitivity, with a block when imprimitive.
    Primitivity(Common),
    /// Build the action on cosets of a subgroup.
    CosetAction {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroup: String,
        /// Write the image group here, with labels in `<PATH>.labels`.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Decide the Mathieu natural actions and the non-IBIS controls.
    ReproduceTheorem {
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

/// What a command produced.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub code: u8,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    use commands as c;
    match &cli.command {
        Command::Order(o) => c::order(o),
        Command::BaseSize(o) => c::base_size(o),
        Command::IsIbis(o) => c::is_ibis(o),
        Command::EnumerateBases {
            common,
            length,
            all,
            count_only,
        } => c::enumerate(common, *length, *all, *count_only),
        Command::MatroidCheck(o) => c::matroid_check(o),
        Command::ReorderCheck(o) => c::reorder_check(o),
        Command::T1 { common, target, max_iters } => c::t1(common, *target, *max_iters),
        Command::T2 {
            common,
            subgroup,
            length,
            max_iters,
        } => c::t2(common, subgroup, *length, *max_iters),
        Command::T3 {
            common,
            restrict,
            target,
            max_iters,
        } => c::t3(common, restrict, *target, *max_iters),
        Command::Primitivity(o) => c::primitivity(o),
        Command::CosetAction { common, subgroup, out } => c::coset_action(common, subgroup, out.as_deref()),
        Command::ReproduceTheorem { budget, threads } => c::reproduce_theorem(*budget, *threads),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                print!("{}", out.json);
            } else {
                print!("{}", out.text);
                println!("time: {:.3}s", start.elapsed().as_secs_f64());
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExhausted { .. } => 2,
                _ => 1,
            })
        }
    }
}
