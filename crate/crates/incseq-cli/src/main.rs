//! Command-line interface for exploring coordinatewise-ordered tuple
//! families: exhaustive searches, explicit constructions, grid and graph
//! encodings, continuous cuboid optimization, and solution-free sets.
//!
//! Every run that writes an artifact also writes a JSON manifest next to the
//! first output recording the command, arguments, tool version, RNG seed, and
//! content digests of all files read and written, so identical invocations
//! can be checked to produce identical outputs.

mod cmds;
mod support;

use std::process;

use clap::{Parser, Subcommand};

use cmds::build::{
    run_construct, run_grow, run_sample, run_search, ConstructCmd, GrowArgs, SampleArgs, SearchArgs,
};
use cmds::family_ops::{
    run_conditions, run_decompose, run_gallery, run_grid, run_validate, ConditionsArgs,
    DecomposeArgs, GalleryArgs, GridArgs, ValidateArgs,
};
use cmds::graph::{run_hyper, run_ruzsa, HyperCmd, RuzsaCmd};
use cmds::numeric::{
    run_alpha, run_improve, run_optimize_x, run_profile, AlphaArgs, ImproveArgs, OptimizeXArgs,
    ProfileArgs,
};
use support::{Failure, RunContext};

#[derive(Parser)]
#[command(
    name = "incseq",
    version,
    about = "Ordered tuple families: search, construct, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a family file against its advertised mode
    Validate(ValidateArgs),
    /// Exhaustive branch-and-bound search for a maximum family
    Search(SearchArgs),
    /// Explicit constructions
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Named example families
    Gallery(GalleryArgs),
    /// Labelled-grid encoding of an arity-3 family
    Grid(GridArgs),
    /// Structural grid conditions of an arity-3 family
    Conditions(ConditionsArgs),
    /// Largest exponent the five-cuboid family sustains
    Alpha(AlphaArgs),
    /// Best split point for the five-cuboid family at a given exponent
    OptimizeX(OptimizeXArgs),
    /// Cross-sectional contribution profile of a cuboid family
    Profile(ProfileArgs),
    /// Try to improve a cuboid family by shifting a face
    Improve(ImproveArgs),
    /// Decomposability of an arity-3 family's grid encodings
    Decompose(DecomposeArgs),
    /// Tripartite hypergraph encodings
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Solution-free sets and their difference graphs
    #[command(subcommand)]
    Ruzsa(RuzsaCmd),
    /// Randomized greedy growth of a valid family
    Grow(GrowArgs),
    /// Random subsample retention experiment
    Sample(SampleArgs),
}

fn command_path(command: &Command) -> String {
    match command {
        Command::Validate(_) => "validate".into(),
        Command::Search(_) => "search".into(),
        Command::Construct(c) => c.name().into(),
        Command::Gallery(_) => "gallery".into(),
        Command::Grid(_) => "grid".into(),
        Command::Conditions(_) => "conditions".into(),
        Command::Alpha(_) => "alpha".into(),
        Command::OptimizeX(_) => "optimize-x".into(),
        Command::Profile(_) => "profile".into(),
        Command::Improve(_) => "improve".into(),
        Command::Decompose(_) => "decompose".into(),
        Command::Hyper(c) => c.name().into(),
        Command::Ruzsa(c) => c.name().into(),
        Command::Grow(_) => "grow".into(),
        Command::Sample(_) => "sample".into(),
    }
}

fn dispatch(command: &Command, ctx: &mut RunContext) -> Result<i32, Failure> {
    match command {
        Command::Validate(args) => run_validate(args, ctx),
        Command::Search(args) => run_search(args, ctx),
        Command::Construct(cmd) => run_construct(cmd, ctx),
        Command::Gallery(args) => run_gallery(args, ctx),
        Command::Grid(args) => run_grid(args, ctx),
        Command::Conditions(args) => run_conditions(args, ctx),
        Command::Alpha(args) => run_alpha(args, ctx),
        Command::OptimizeX(args) => run_optimize_x(args, ctx),
        Command::Profile(args) => run_profile(args, ctx),
        Command::Improve(args) => run_improve(args, ctx),
        Command::Decompose(args) => run_decompose(args, ctx),
        Command::Hyper(cmd) => run_hyper(cmd, ctx),
        Command::Ruzsa(cmd) => run_ruzsa(cmd, ctx),
        Command::Grow(args) => run_grow(args, ctx),
        Command::Sample(args) => run_sample(args, ctx),
    }
}

fn main() {
    // Restore the default SIGPIPE disposition so that piping output into a
    // consumer that exits early (`head`, `grep -q`) terminates this process
    // quietly, as Unix tools conventionally do, instead of panicking when a
    // print hits the closed pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let mut ctx = RunContext::new(command_path(&cli.command), argv);
    let code = match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    };
    if let Err(e) = ctx.finish() {
        eprintln!("error: failed to write run manifest: {e}");
        process::exit(2);
    }
    process::exit(code);
}
