//! Shared CLI plumbing: exit-code mapping, file I/O with digest tracking,
//! and the per-run manifest sidecar.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// A command failure carrying its process exit code.
///
/// * `Validation` (exit 1): an input family or certificate fails the
///   property it advertises.
/// * `Usage` (exit 2): bad flags, unreadable files, malformed JSON, or
///   parameters outside an operation's domain.
///
/// Exit code 3 (search budget exhausted before an optimality proof) is not a
/// failure: the search still reports and saves everything it found, so its
/// runner returns the code directly instead of erroring out.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Usage(String),
}

impl Failure {
    pub fn validation(message: impl ToString) -> Self {
        Failure::Validation(message.to_string())
    }

    pub fn usage(message: impl ToString) -> Self {
        Failure::Usage(message.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

/// Seeded-generator record for the manifest.
#[derive(Serialize)]
pub struct RngInfo {
    pub algorithm: &'static str,
    pub seed: u64,
}

/// Path and content digest of one file touched by a run.
#[derive(Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// The manifest sidecar: enough to reproduce the run and verify its
/// artifacts. Two runs with identical manifests produced identical outputs,
/// since the output digests are part of the manifest.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunManifest<'a> {
    command: &'a str,
    argv: &'a [String],
    tool_version: &'a str,
    rng: Option<&'a RngInfo>,
    wall_ms: u64,
    inputs: &'a [FileDigest],
    outputs: &'a [FileDigest],
}

/// Tracks one CLI invocation: every file read or written (with digests) and
/// the seed in play, so `finish` can drop a manifest next to the artifacts.
pub struct RunContext {
    command: String,
    argv: Vec<String>,
    started: Instant,
    rng: Option<RngInfo>,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl RunContext {
    pub fn new(command: impl Into<String>, argv: Vec<String>) -> Self {
        RunContext {
            command: command.into(),
            argv,
            started: Instant::now(),
            rng: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Records the seed of a randomized subcommand.
    pub fn note_rng(&mut self, algorithm: &'static str, seed: u64) {
        self.rng = Some(RngInfo { algorithm, seed });
    }

    /// Reads an input file, recording its digest in the manifest.
    pub fn read_input(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
        });
        Ok(text)
    }

    /// Writes an artifact file (with a trailing newline), recording its
    /// digest in the manifest.
    pub fn write_artifact(&mut self, path: &Path, contents: &str) -> Result<(), Failure> {
        let mut text = contents.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        fs::write(path, &text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        self.outputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
        });
        Ok(())
    }

    /// Writes the manifest sidecar next to the first artifact, if the run
    /// produced any files.
    pub fn finish(self) -> Result<(), Failure> {
        let Some(first) = self.outputs.first() else {
            return Ok(());
        };
        let manifest_path = PathBuf::from(format!("{}.manifest.json", first.path));
        let manifest = RunManifest {
            command: &self.command,
            argv: &self.argv,
            tool_version: env!("CARGO_PKG_VERSION"),
            rng: self.rng.as_ref(),
            wall_ms: self.started.elapsed().as_millis() as u64,
            inputs: &self.inputs,
            outputs: &self.outputs,
        };
        let mut text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| Failure::usage(format!("manifest serialization failed: {e}")))?;
        text.push('\n');
        fs::write(&manifest_path, text).map_err(|e| {
            Failure::usage(format!("cannot write {}: {e}", manifest_path.display()))
        })?;
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses a comma-separated list of positive integers, e.g. `4,4,4`.
pub fn parse_u32_list(text: &str, what: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Failure::usage(format!("bad {what} entry {part:?} in {text:?}")))
        })
        .collect()
}

/// Parses a rational `p/q` (or a bare integer `p`) into a ratio.
pub fn parse_ratio(text: &str) -> Result<num_rational::Ratio<u32>, Failure> {
    let bad = || Failure::usage(format!("bad ratio {text:?}; expected p/q"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let numer: u32 = numer.parse().map_err(|_| bad())?;
    let denom: u32 = denom.parse().map_err(|_| bad())?;
    if denom == 0 {
        return Err(bad());
    }
    Ok(num_rational::Ratio::new(numer, denom))
}

/// Renders a tuple list as `(a,b,c) (d,e,f) …` for terminal output.
pub fn tuples_line(tuples: &[incseq::family::Tuple]) -> String {
    let mut line = String::new();
    for (i, t) in tuples.iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        line.push('(');
        for (j, c) in t.coords().iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            let _ = write!(line, "{c}");
        }
        line.push(')');
    }
    line
}

/// Standard terminal summary of a family; the tuple list is optional since
/// large samples would flood the terminal.
pub fn print_family_summary(family: &incseq::family::Family, with_tuples: bool) {
    println!("dims: {:?}", family.dims().sides());
    println!("s: {}", family.s());
    println!("mode: {}", family.mode());
    println!("size: {}", family.len());
    if with_tuples {
        println!("tuples: {}", tuples_line(family.tuples()));
    }
}
