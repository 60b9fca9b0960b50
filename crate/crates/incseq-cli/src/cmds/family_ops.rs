//! Family-centric subcommands: validate, gallery, grid, conditions,
//! decompose.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use incseq::construct::{gallery, GalleryId};
use incseq::decompose::{decompose_all, decompose_check};
use incseq::error::{DecomposeError, GridError};
use incseq::family::Family;
use incseq::grid::{grid_conditions, to_grid, Condition, LabelCoord, LabelledGrid};

use crate::support::{print_family_summary, Failure, RunContext};

pub fn read_family(ctx: &mut RunContext, path: &Path) -> Result<Family, Failure> {
    let text = ctx.read_input(path)?;
    Family::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn label_coord(number: u8) -> Result<LabelCoord, Failure> {
    LabelCoord::from_number(number)
        .ok_or_else(|| Failure::usage(format!("label coordinate must be 1, 2, or 3, got {number}")))
}

fn grid_for(family: &Family, coord: LabelCoord) -> Result<LabelledGrid, Failure> {
    to_grid(family, coord).map_err(|e| match e {
        // A collision means two tuples differ in at most one coordinate, so
        // the family already fails its advertised mode.
        GridError::CellCollision { .. } => Failure::validation(e.to_string()),
        other => Failure::usage(other.to_string()),
    })
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ValidateArgs {
    /// Family JSON file to check
    #[arg(long)]
    pub family: PathBuf,
    /// Write the full validation report as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_validate(args: &ValidateArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let family = read_family(ctx, &args.family)?;
    let report = family.validate();
    println!("dims: {:?}", family.dims().sides());
    println!("s: {}", family.s());
    println!("mode: {}", family.mode());
    println!("size: {}", family.len());
    println!("valid: {}", report.valid);
    if !report.valid {
        let shown = report.failures.len();
        let suffix = if report.truncated {
            " (witness list truncated)"
        } else {
            ""
        };
        println!("failures: {shown}{suffix}");
        for failure in &report.failures {
            println!("  - {:?} at indices {:?}", failure.kind, failure.witness);
        }
    }
    if let Some(out) = &args.out {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure::usage(format!("report serialization failed: {e}")))?;
        ctx.write_artifact(out, &text)?;
    }
    Ok(if report.valid { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, ValueEnum)]
pub enum RenderKind {
    /// Header plus the tuple list
    Tuples,
    /// ASCII grid (arity-3 families)
    Grid,
    /// Canonical family JSON on standard output
    Json,
}

#[derive(Args)]
pub struct GalleryArgs {
    /// Fixture name, e.g. `fig2a_28` (alias `fig2a`) or `prek_sharp(4)`
    pub name: String,
    /// How to print the fixture
    #[arg(long, value_enum, default_value_t = RenderKind::Tuples)]
    pub render: RenderKind,
    /// Which coordinate labels the grid render: 1, 2, or 3
    #[arg(long, default_value_t = 3)]
    pub label_coord: u8,
    /// Write the family as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn resolve_gallery(name: &str) -> Result<GalleryId, Failure> {
    let canonical = match name {
        "n4" => "n4_len8",
        "f42" => "f42_len10",
        "comp5" => "comp5_3cube",
        "fig2a" => "fig2a_28",
        "fig2b" => "fig2b_9",
        "lastfig" => "lastfig_15",
        other => other,
    };
    if let Some(rest) = canonical
        .strip_prefix("prek_sharp_")
        .or_else(|| canonical.strip_prefix("prek-sharp-"))
    {
        let n: u32 = rest
            .parse()
            .map_err(|_| Failure::usage(format!("bad grid side {rest:?} in {name:?}")))?;
        return Ok(GalleryId::PrekSharp(n));
    }
    canonical.parse::<GalleryId>().map_err(Failure::usage)
}

pub fn run_gallery(args: &GalleryArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let id = resolve_gallery(&args.name)?;
    let family = gallery(id).map_err(|e| Failure::usage(e.to_string()))?;
    match args.render {
        RenderKind::Tuples => {
            println!("name: {id}");
            print_family_summary(&family, true);
        }
        RenderKind::Grid => {
            let grid = grid_for(&family, label_coord(args.label_coord)?)?;
            print!("{}", grid.render());
        }
        RenderKind::Json => println!("{}", family.to_json()),
    }
    if let Some(out) = &args.out {
        ctx.write_artifact(out, &family.to_json())?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// grid
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct GridArgs {
    /// Arity-3 family JSON file
    #[arg(long)]
    pub family: PathBuf,
    /// Which coordinate labels the grid: 1, 2, or 3
    #[arg(long, default_value_t = 3)]
    pub label_coord: u8,
    /// Write the grid as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_grid(args: &GridArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let family = read_family(ctx, &args.family)?;
    let grid = grid_for(&family, label_coord(args.label_coord)?)?;
    print!("{}", grid.render());
    if let Some(out) = &args.out {
        let text = serde_json::to_string_pretty(&grid)
            .map_err(|e| Failure::usage(format!("grid serialization failed: {e}")))?;
        ctx.write_artifact(out, &text)?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// conditions
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ConditionsArgs {
    /// Arity-3 family JSON file
    #[arg(long)]
    pub family: PathBuf,
    /// Which coordinate labels the grid: 1, 2, or 3
    #[arg(long, default_value_t = 3)]
    pub label_coord: u8,
    /// Write the condition report as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn print_condition(name: &str, condition: &Condition) {
    if condition.holds {
        println!("{name}: holds");
        return;
    }
    match &condition.witness {
        Some(witness) => {
            let cells: Vec<String> = witness
                .cells
                .iter()
                .map(|c| match c.label {
                    Some(label) => format!("({},{})={label}", c.col, c.row),
                    None => format!("({},{})=.", c.col, c.row),
                })
                .collect();
            println!("{name}: fails — {} [{}]", witness.note, cells.join(" "));
        }
        None => println!("{name}: fails"),
    }
}

pub fn run_conditions(args: &ConditionsArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let family = read_family(ctx, &args.family)?;
    let grid = grid_for(&family, label_coord(args.label_coord)?)?;
    let report = grid_conditions(&grid);
    print_condition("C1", &report.c1);
    print_condition("C2", &report.c2);
    print_condition("C3", &report.c3);
    print_condition("C3'", &report.c3_prime);
    print_condition("C4", &report.c4);
    println!("all: {}", report.all_hold());
    if let Some(out) = &args.out {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure::usage(format!("report serialization failed: {e}")))?;
        ctx.write_artifact(out, &text)?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct DecomposeArgs {
    /// Arity-3 family JSON file
    #[arg(long)]
    pub family: PathBuf,
    /// Check a single label coordinate (1, 2, or 3) instead of all three
    #[arg(long)]
    pub label_coord: Option<u8>,
    /// Write the result (or three-coordinate summary) as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn map_decompose_error(e: DecomposeError) -> Failure {
    match e {
        DecomposeError::Grid(GridError::CellCollision { .. }) => Failure::validation(e.to_string()),
        DecomposeError::BadCertificate(_) => Failure::validation(e.to_string()),
        other => Failure::usage(other.to_string()),
    }
}

fn print_result(result: &incseq::decompose::DecompositionResult) {
    let verdict = if result.decomposable {
        "decomposable"
    } else if result.trivial {
        "trivial"
    } else {
        "indecomposable"
    };
    println!(
        "labelCoord {}: {verdict} ({} classes)",
        result.label_coord.number(),
        result.classes.len()
    );
    if let Some(blocks) = &result.blocks {
        for block in blocks {
            println!(
                "  block: cols {:?} rows {:?} labels {:?}",
                block.cols, block.rows, block.labels
            );
        }
        println!("  padding cells: {}", result.padding_cells);
    }
}

pub fn run_decompose(args: &DecomposeArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let family = read_family(ctx, &args.family)?;
    let text = match args.label_coord {
        Some(number) => {
            let result =
                decompose_check(&family, label_coord(number)?).map_err(map_decompose_error)?;
            print_result(&result);
            serde_json::to_string_pretty(&result)
        }
        None => {
            let summary = decompose_all(&family).map_err(map_decompose_error)?;
            for result in &summary.results {
                print_result(result);
            }
            println!("indecomposable: {}", summary.indecomposable);
            serde_json::to_string_pretty(&summary)
        }
    }
    .map_err(|e| Failure::usage(format!("result serialization failed: {e}")))?;
    if let Some(out) = &args.out {
        ctx.write_artifact(out, &text)?;
    }
    Ok(0)
}
