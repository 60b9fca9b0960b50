//! Family-producing subcommands: search, construct, grow, sample.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Subcommand};
use incseq::construct::{affine_code, base_interleave, cyclic_boost, product};
use incseq::continuous::{discretize, CuboidFamily, FillStrategy};
use incseq::family::{BoxDims, Family, Mode};
use incseq::search::{
    comparable_sample, max_comparable_with_threads, max_increasing_with_threads, random_grow,
    Budget, GrowthPolicy, RNG_ALGORITHM,
};
use serde::Serialize;

use crate::cmds::family_ops::read_family;
use crate::support::{
    parse_ratio, parse_u32_list, print_family_summary, tuples_line, Failure, RunContext,
};

fn box_dims(text: &str) -> Result<BoxDims, Failure> {
    BoxDims::new(parse_u32_list(text, "dimension")?).map_err(Failure::usage)
}

fn write_family(
    ctx: &mut RunContext,
    out: &Option<PathBuf>,
    family: &Family,
) -> Result<(), Failure> {
    if let Some(path) = out {
        ctx.write_artifact(path, &family.to_json())?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct SearchArgs {
    /// Box sides, e.g. `4,4,4`
    #[arg(long)]
    pub dims: String,
    /// Comparability strength s
    #[arg(long)]
    pub s: u32,
    /// Family mode to maximize
    #[arg(long, value_parser = Mode::from_str)]
    pub mode: Mode,
    /// Node budget before the search gives up
    #[arg(long, default_value_t = 100_000_000)]
    pub max_nodes: u64,
    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = 900)]
    pub max_seconds: u64,
    /// Worker threads (results are thread-count independent)
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Write the search report as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_search(args: &SearchArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let dims = box_dims(&args.dims)?;
    let budget = Budget::new(args.max_nodes, Duration::from_secs(args.max_seconds));
    let report = match args.mode {
        Mode::Increasing => max_increasing_with_threads(&dims, args.s, &budget, args.threads),
        Mode::Comparable => max_comparable_with_threads(&dims, args.s, &budget, args.threads),
    }
    .map_err(|e| Failure::usage(e.to_string()))?;
    println!("size: {}", report.size);
    println!("provenOptimal: {}", report.proven_optimal);
    println!("nodesExplored: {}", report.nodes_explored);
    println!("elapsedMs: {}", report.elapsed_ms);
    println!("upperBound: {}", report.upper_bound);
    println!("witness: {}", tuples_line(report.witness.tuples()));
    if let Some(out) = &args.out {
        ctx.write_artifact(out, &report.to_json())?;
    }
    if report.proven_optimal {
        Ok(0)
    } else {
        eprintln!("budget exhausted before an optimality proof; best family found is reported");
        Ok(3)
    }
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

#[derive(Subcommand)]
pub enum ConstructCmd {
    /// Digit-interleaving family in base m
    BaseInterleave(BaseInterleaveArgs),
    /// Coordinatewise product of two families
    Product(ProductArgs),
    /// Blow a comparable family in [n²−1]³ up by the cyclic construction
    Boost(BoostArgs),
    /// Affine-evaluation code family over a finite field
    Affine(AffineArgs),
    /// Integer family from a comparable cuboid family
    Discretize(DiscretizeArgs),
}

impl ConstructCmd {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructCmd::BaseInterleave(_) => "construct base-interleave",
            ConstructCmd::Product(_) => "construct product",
            ConstructCmd::Boost(_) => "construct boost",
            ConstructCmd::Affine(_) => "construct affine",
            ConstructCmd::Discretize(_) => "construct discretize",
        }
    }
}

#[derive(Args)]
pub struct BaseInterleaveArgs {
    /// Digit base m
    #[arg(long)]
    pub base: u32,
    /// Tuple arity r
    #[arg(long)]
    pub arity: u32,
    /// Comparability strength s
    #[arg(long)]
    pub s: u32,
    /// Write the family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ProductArgs {
    /// Left factor family JSON file
    #[arg(long)]
    pub left: PathBuf,
    /// Right factor family JSON file
    #[arg(long)]
    pub right: PathBuf,
    /// Write the family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BoostArgs {
    /// Comparable arity-3 family JSON file (in a cube [n]³)
    #[arg(long)]
    pub family: PathBuf,
    /// Write the family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AffineArgs {
    /// Field order q (a supported prime power)
    #[arg(long)]
    pub order: u32,
    /// Point-space exponent k
    #[arg(long)]
    pub exponent: u32,
    /// Write the family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DiscretizeArgs {
    /// Comparable cuboid family JSON file
    #[arg(long)]
    pub cuboids: PathBuf,
    /// Block fill strategy
    #[arg(long, default_value = "best", value_parser = FillStrategy::from_str)]
    pub fill: FillStrategy,
    /// Write the family and block counts as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DiscretizeOut<'a> {
    family: &'a Family,
    block_counts: &'a [usize],
}

fn validated(family: Family, role: &str) -> Result<Family, Failure> {
    if family.is_valid() {
        Ok(family)
    } else {
        Err(Failure::validation(format!(
            "{role} fails validation in mode {}",
            family.mode()
        )))
    }
}

pub fn run_construct(cmd: &ConstructCmd, ctx: &mut RunContext) -> Result<i32, Failure> {
    match cmd {
        ConstructCmd::BaseInterleave(args) => {
            let family = base_interleave(args.base, args.arity, args.s)
                .map_err(|e| Failure::usage(e.to_string()))?;
            print_family_summary(&family, family.len() <= 128);
            write_family(ctx, &args.out, &family)?;
        }
        ConstructCmd::Product(args) => {
            let left = validated(read_family(ctx, &args.left)?, "left factor")?;
            let right = validated(read_family(ctx, &args.right)?, "right factor")?;
            let family = product(&left, &right).map_err(|e| Failure::usage(e.to_string()))?;
            print_family_summary(&family, family.len() <= 128);
            write_family(ctx, &args.out, &family)?;
        }
        ConstructCmd::Boost(args) => {
            let seed = validated(read_family(ctx, &args.family)?, "input family")?;
            let family = cyclic_boost(&seed).map_err(|e| Failure::usage(e.to_string()))?;
            print_family_summary(&family, family.len() <= 128);
            write_family(ctx, &args.out, &family)?;
        }
        ConstructCmd::Affine(args) => {
            let family = affine_code(args.order, args.exponent)
                .map_err(|e| Failure::usage(e.to_string()))?;
            print_family_summary(&family, family.len() <= 128);
            write_family(ctx, &args.out, &family)?;
        }
        ConstructCmd::Discretize(args) => {
            let text = ctx.read_input(&args.cuboids)?;
            let cuboids = CuboidFamily::from_json(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", args.cuboids.display())))?;
            let report =
                discretize(&cuboids, args.fill).map_err(|e| Failure::usage(e.to_string()))?;
            print_family_summary(&report.family, report.family.len() <= 128);
            println!("blockCounts: {:?}", report.block_counts);
            if let Some(out) = &args.out {
                let payload = DiscretizeOut {
                    family: &report.family,
                    block_counts: &report.block_counts,
                };
                let text = serde_json::to_string_pretty(&payload)
                    .map_err(|e| Failure::usage(format!("serialization failed: {e}")))?;
                ctx.write_artifact(out, &text)?;
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// grow
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct GrowArgs {
    /// Box sides, e.g. `4,4,4` (arity 3)
    #[arg(long)]
    pub dims: String,
    /// Comparability strength s
    #[arg(long)]
    pub s: u32,
    /// Tie-breaking policy among minimal candidates
    #[arg(long, default_value = "uniform-minimal", value_parser = GrowthPolicy::from_str)]
    pub policy: GrowthPolicy,
    /// RNG seed; the output is a pure function of box, policy, and seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_grow(args: &GrowArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    ctx.note_rng(RNG_ALGORITHM, args.seed);
    let dims = box_dims(&args.dims)?;
    let family = random_grow(&dims, args.s, args.policy, args.seed)
        .map_err(|e| Failure::usage(e.to_string()))?;
    println!("policy: {}", args.policy);
    println!("seed: {}", args.seed);
    print_family_summary(&family, family.len() <= 128);
    write_family(ctx, &args.out, &family)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct SampleArgs {
    /// Cube side n (the box is [n]^arity)
    #[arg(long)]
    pub n: u32,
    /// Tuple arity r
    #[arg(long)]
    pub arity: u32,
    /// Strength fraction β as `p/q`; the family uses s = ⌊β·r⌋
    #[arg(long)]
    pub beta: String,
    /// Number of uniform draws before pruning
    #[arg(long)]
    pub size: usize,
    /// RNG seed; the output is a pure function of the parameters and seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the retained family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_sample(args: &SampleArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    ctx.note_rng(RNG_ALGORITHM, args.seed);
    let beta = parse_ratio(&args.beta)?;
    let family = comparable_sample(args.n, args.arity, beta, args.size, args.seed)
        .map_err(|e| Failure::usage(e.to_string()))?;
    println!("seed: {}", args.seed);
    println!("drawn: {}", args.size);
    println!("retained: {}", family.len());
    print_family_summary(&family, false);
    write_family(ctx, &args.out, &family)?;
    Ok(0)
}
