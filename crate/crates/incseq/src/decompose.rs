//! Decomposability of labelled grids: the label-merging fixpoint algorithm,
//! explicit block certificates, and the three-coordinate summary verdict.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::DecomposeError;
use crate::family::{Coord, Family};
use crate::grid::{to_grid, LabelCoord, LabelledGrid};

/// One block of a decomposition: the Cartesian product of `cols` and `rows`
/// owns exactly the labels in `labels`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Block {
    pub cols: Vec<Coord>,
    pub rows: Vec<Coord>,
    pub labels: Vec<Coord>,
}

impl Block {
    fn cell_count(&self) -> usize {
        self.cols.len() * self.rows.len()
    }

    fn contains(&self, col: Coord, row: Coord) -> bool {
        self.cols.contains(&col) && self.rows.contains(&row)
    }
}

/// Outcome of a decomposability check for one label coordinate.
///
/// `classes` is the label partition at the merge fixpoint. When
/// `decomposable` is true, `blocks` holds one product block per class —
/// pairwise disjoint, together covering every labelled cell; the remaining
/// `padding_cells` unlabelled cells complete a full grid partition as
/// single-cell blocks with no labels.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionResult {
    pub label_coord: LabelCoord,
    pub decomposable: bool,
    /// Single-cell, single-label, or empty grids cannot decompose
    /// non-trivially and are flagged here.
    pub trivial: bool,
    pub classes: Vec<Vec<Coord>>,
    pub blocks: Option<Vec<Block>>,
    pub padding_cells: usize,
}

impl DecompositionResult {
    pub fn to_json(&self) -> Result<String, DecomposeError> {
        serde_json::to_string_pretty(self)
            .map_err(|e| DecomposeError::BadCertificate(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, DecomposeError> {
        serde_json::from_str(text).map_err(|e| DecomposeError::BadCertificate(e.to_string()))
    }
}

/// Per-class occupancy data during merging.
struct ClassData {
    labels: BTreeSet<Coord>,
    rows: BTreeSet<Coord>,
    cols: BTreeSet<Coord>,
}

/// Checks decomposability with the given coordinate as label: labels merge
/// whenever two classes co-occupy some row and also co-occupy some column,
/// iterated to a fixpoint. The grid decomposes exactly when at least two
/// classes remain, and then each class's minimal enclosing rectangle is its
/// block — any two such rectangles are disjoint at the fixpoint, since an
/// overlap cell would put both classes in one row and one column at once.
/// Every returned certificate is re-validated; a failure would disprove the
/// merge-fixpoint criterion itself, so it is surfaced as a hard error.
pub fn decompose_check(
    t: &Family,
    label_coord: LabelCoord,
) -> Result<DecompositionResult, DecomposeError> {
    if t.arity() != 3 {
        return Err(DecomposeError::NotArity3 { arity: t.arity() });
    }
    let grid = to_grid(t, label_coord)?;

    let mut classes: Vec<ClassData> = grid
        .labels_present()
        .into_iter()
        .map(|label| {
            let cells = grid.label_set(label);
            ClassData {
                labels: BTreeSet::from([label]),
                cols: cells.iter().map(|&(c, _)| c).collect(),
                rows: cells.iter().map(|&(_, r)| r).collect(),
            }
        })
        .collect();

    // Merge to fixpoint: the pass restarts after every merge, so on exit no
    // pair of classes shares both a row and a column.
    loop {
        let mut merged = false;
        'scan: for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                let share_row = !classes[i].rows.is_disjoint(&classes[j].rows);
                let share_col = !classes[i].cols.is_disjoint(&classes[j].cols);
                if share_row && share_col {
                    let absorbed = classes.swap_remove(j);
                    classes[i].labels.extend(absorbed.labels);
                    classes[i].rows.extend(absorbed.rows);
                    classes[i].cols.extend(absorbed.cols);
                    merged = true;
                    break 'scan;
                }
            }
        }
        if !merged {
            break;
        }
    }
    classes.sort_by_key(|c| c.labels.first().copied());

    let class_lists: Vec<Vec<Coord>> = classes
        .iter()
        .map(|c| c.labels.iter().copied().collect())
        .collect();
    let trivial = grid.is_empty()
        || (grid.cols() == 1 && grid.rows() == 1)
        || grid.labels_present().len() == 1;
    let decomposable = !trivial && class_lists.len() >= 2;

    let (blocks, padding_cells) = if decomposable {
        let blocks: Vec<Block> = classes
            .iter()
            .map(|c| Block {
                cols: c.cols.iter().copied().collect(),
                rows: c.rows.iter().copied().collect(),
                labels: c.labels.iter().copied().collect(),
            })
            .collect();
        let covered: usize = blocks.iter().map(Block::cell_count).sum();
        let total = grid.cols() as usize * grid.rows() as usize;
        validate_certificate(&grid, &blocks)?;
        (Some(blocks), total - covered)
    } else {
        (None, 0)
    };

    Ok(DecompositionResult {
        label_coord,
        decomposable,
        trivial,
        classes: class_lists,
        blocks,
        padding_cells,
    })
}

/// Machine-checks a block certificate against the decomposition invariants:
/// pairwise-disjoint products, every labelled cell inside the block owning
/// its label, each occurring label in exactly one block, and the
/// square-root block-size inequality against the full box.
fn validate_certificate(grid: &LabelledGrid, blocks: &[Block]) -> Result<(), DecomposeError> {
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate().skip(i + 1) {
            let cols_meet = a.cols.iter().any(|c| b.cols.contains(c));
            let rows_meet = a.rows.iter().any(|r| b.rows.contains(r));
            if cols_meet && rows_meet {
                return Err(DecomposeError::BadCertificate(format!(
                    "blocks {i} and {j} overlap"
                )));
            }
        }
    }
    let mut seen_labels = BTreeSet::new();
    for (i, b) in blocks.iter().enumerate() {
        for &label in &b.labels {
            if !seen_labels.insert(label) {
                return Err(DecomposeError::BadCertificate(format!(
                    "label {label} assigned to more than one block (block {i})"
                )));
            }
        }
    }
    let occurring: BTreeSet<Coord> = grid.labels_present().into_iter().collect();
    if seen_labels != occurring {
        return Err(DecomposeError::BadCertificate(
            "block label classes do not partition the occurring labels".into(),
        ));
    }
    for ((col, row), label) in grid.cells() {
        let owner = blocks.iter().position(|b| b.labels.contains(&label));
        let Some(owner) = owner else {
            return Err(DecomposeError::BadCertificate(format!(
                "label {label} not assigned to any block"
            )));
        };
        if !blocks[owner].contains(col, row) {
            return Err(DecomposeError::BadCertificate(format!(
                "cell ({col},{row}) with label {label} lies outside its block"
            )));
        }
    }
    // Square-root size inequality: sum of sqrt(|R||S||T|) over blocks never
    // exceeds sqrt of the full box volume.
    let total: f64 = blocks
        .iter()
        .map(|b| ((b.cols.len() * b.rows.len() * b.labels.len()) as f64).sqrt())
        .sum();
    let bound = (grid.cols() as f64 * grid.rows() as f64 * grid.label_bound() as f64).sqrt();
    if total > bound + 1e-9 {
        return Err(DecomposeError::BadCertificate(format!(
            "block size inequality violated: {total} > {bound}"
        )));
    }
    Ok(())
}

/// The three per-coordinate results plus the overall verdict:
/// `indecomposable` is true exactly when no coordinate decomposes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionSummary {
    pub results: Vec<DecompositionResult>,
    pub indecomposable: bool,
}

/// Runs [`decompose_check`] for each of the three label coordinates.
pub fn decompose_all(t: &Family) -> Result<DecompositionSummary, DecomposeError> {
    let results = LabelCoord::ALL
        .iter()
        .map(|&lc| decompose_check(t, lc))
        .collect::<Result<Vec<_>, _>>()?;
    let indecomposable = results.iter().all(|r| !r.decomposable);
    Ok(DecompositionSummary {
        results,
        indecomposable,
    })
}
