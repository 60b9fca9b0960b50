//! Continuous-relaxation subcommands: alpha, optimize-x, profile, improve.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use incseq::continuous::{
    cross_profile, improve_shift, optimize_x_trace, score, solve_alpha_trace, CuboidFamily,
    ShiftOutcome,
};
use serde::Serialize;

use crate::support::{Failure, RunContext};

fn read_cuboids(ctx: &mut RunContext, path: &Path) -> Result<CuboidFamily, Failure> {
    let text = ctx.read_input(path)?;
    CuboidFamily::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cuboids_value(family: &CuboidFamily) -> Result<serde_json::Value, Failure> {
    let text = family
        .to_json()
        .map_err(|e| Failure::usage(format!("cuboid serialization failed: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("cuboid round-trip failed: {e}")))
}

fn write_json(ctx: &mut RunContext, out: &Path, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::usage(format!("serialization failed: {e}")))?;
    ctx.write_artifact(out, &text)
}

// ---------------------------------------------------------------------------
// alpha
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct AlphaArgs {
    /// Bisection tolerance (at least 1e-12)
    #[arg(long)]
    pub tol: f64,
    /// Write the bisection probes as CSV
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the result as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct AlphaOut {
    tol: f64,
    alpha: f64,
    probes: usize,
}

pub fn run_alpha(args: &AlphaArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let (alpha, steps) = solve_alpha_trace(args.tol).map_err(|e| Failure::usage(e.to_string()))?;
    println!("alpha: {alpha}");
    println!("probes: {}", steps.len());
    if let Some(path) = &args.trace {
        let mut csv = String::from("index,alpha,score,holds,lo,hi\n");
        for (index, step) in steps.iter().enumerate() {
            let _ = writeln!(
                csv,
                "{index},{},{},{},{},{}",
                step.alpha, step.score, step.holds, step.lo, step.hi
            );
        }
        ctx.write_artifact(path, &csv)?;
    }
    if let Some(out) = &args.out {
        let payload = AlphaOut {
            tol: args.tol,
            alpha,
            probes: steps.len(),
        };
        write_json(ctx, out, &payload)?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// optimize-x
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct OptimizeXArgs {
    /// Score exponent α in (0, 1]
    #[arg(long)]
    pub alpha: f64,
    /// Write the golden-section iterations as CSV
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the result as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OptimizeXOut {
    alpha: f64,
    x_star: f64,
    score: f64,
    iterations: usize,
}

pub fn run_optimize_x(args: &OptimizeXArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let (x_star, value, steps) =
        optimize_x_trace(args.alpha).map_err(|e| Failure::usage(e.to_string()))?;
    println!("xStar: {x_star}");
    println!("score: {value}");
    println!("iterations: {}", steps.len());
    if let Some(path) = &args.trace {
        let mut csv = String::from("iteration,lo,hi,probeLow,probeHigh,scoreLow,scoreHigh\n");
        for (iteration, step) in steps.iter().enumerate() {
            let _ = writeln!(
                csv,
                "{iteration},{},{},{},{},{},{}",
                step.lo, step.hi, step.probe_low, step.probe_high, step.score_low, step.score_high
            );
        }
        ctx.write_artifact(path, &csv)?;
    }
    if let Some(out) = &args.out {
        let payload = OptimizeXOut {
            alpha: args.alpha,
            x_star,
            score: value,
            iterations: steps.len(),
        };
        write_json(ctx, out, &payload)?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// profile
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ProfileArgs {
    /// Comparable cuboid family JSON file
    #[arg(long)]
    pub cuboids: PathBuf,
    /// Axis to profile along: 1, 2, or 3
    #[arg(long)]
    pub axis: u8,
    /// Score exponent α in (0, 1]
    #[arg(long)]
    pub alpha: f64,
    /// Write the step function as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ProfileOut {
    axis: u8,
    alpha: f64,
    constant: bool,
    /// Exact rational breakpoints, e.g. `["0", "2/5", "1"]`.
    breakpoints: Vec<String>,
    values: Vec<f64>,
}

pub fn run_profile(args: &ProfileArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let family = read_cuboids(ctx, &args.cuboids)?;
    let profile =
        cross_profile(&family, args.axis, args.alpha).map_err(|e| Failure::usage(e.to_string()))?;
    println!("pieces: {}", profile.pieces());
    println!("constant: {}", profile.is_constant());
    for (i, value) in profile.values.iter().enumerate() {
        let close = if i + 1 == profile.values.len() {
            ']'
        } else {
            ')'
        };
        println!(
            "[{}, {}{close} -> {value}",
            profile.breakpoints[i],
            profile.breakpoints[i + 1]
        );
    }
    if let Some(out) = &args.out {
        let payload = ProfileOut {
            axis: args.axis,
            alpha: args.alpha,
            constant: profile.is_constant(),
            breakpoints: profile.breakpoints.iter().map(|b| b.to_string()).collect(),
            values: profile.values.clone(),
        };
        write_json(ctx, out, &payload)?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// improve
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ImproveArgs {
    /// Comparable cuboid family JSON file
    #[arg(long)]
    pub cuboids: PathBuf,
    /// Axis to shift along: 1, 2, or 3
    #[arg(long)]
    pub axis: u8,
    /// Score exponent α in (0, 1]
    #[arg(long)]
    pub alpha: f64,
    /// Write the outcome (with the resulting family) as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ImproveOut {
    outcome: &'static str,
    score_before: f64,
    score_after: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    /// The shifted family on improvement, the unchanged input otherwise.
    family: serde_json::Value,
}

pub fn run_improve(args: &ImproveArgs, ctx: &mut RunContext) -> Result<i32, Failure> {
    let family = read_cuboids(ctx, &args.cuboids)?;
    let before = score(&family, args.alpha).map_err(|e| Failure::usage(e.to_string()))?;
    let outcome =
        improve_shift(&family, args.axis, args.alpha).map_err(|e| Failure::usage(e.to_string()))?;
    let payload = match &outcome {
        ShiftOutcome::Improved(next) => {
            let after = score(next, args.alpha).map_err(|e| Failure::usage(e.to_string()))?;
            println!("outcome: improved");
            println!("scoreBefore: {before}");
            println!("scoreAfter: {after}");
            ImproveOut {
                outcome: "improved",
                score_before: before,
                score_after: after,
                note: None,
                family: cuboids_value(next)?,
            }
        }
        ShiftOutcome::Balanced { note } => {
            println!("outcome: balanced");
            println!("scoreBefore: {before}");
            println!("note: {note}");
            ImproveOut {
                outcome: "balanced",
                score_before: before,
                score_after: before,
                note: Some(note.clone()),
                family: cuboids_value(&family)?,
            }
        }
    };
    if let Some(out) = &args.out {
        write_json(ctx, out, &payload)?;
    }
    Ok(0)
}
