//! Grid views of arity-3 families.
//!
//! A triple `(a, b, c)` can be drawn as the point `(a, b)` of a 2-D grid
//! labelled with `c` (any of the three coordinates may play the label role).
//! For 2-comparable families this gives a partial labelling of the grid with
//! at most one label per cell, and the sequence/set properties turn into
//! local conditions on the labelling:
//!
//! * **C1** — labels strictly increase along rows (left to right) and up
//!   columns (bottom to top).
//! * **C2** — each label's cells form a 2-increasing set of 2-D points.
//! * **C3** — no cell has a row-mate and a column-mate sharing a label.
//! * **C3′** — no transitivity-breaking configuration (see [`grid_conditions`]).
//! * **C4** — the upper completion of any label is disjoint from the lower
//!   completion of any label.
//!
//! C1 ∧ C2 holds exactly when the underlying family is 2-comparable, and
//! C1 ∧ C2 ∧ C3′ exactly when it can be ordered into a 2-increasing sequence.
//! C3 follows from C1 ∧ C2.
//!
//! Rendering convention: columns left to right are the first free coordinate
//! ascending; rows top to bottom are the second free coordinate *descending*;
//! an empty cell prints `.`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::family::{BoxDims, Coord, Family, Mode, Tuple};

// ---------------------------------------------------------------------------
// Label coordinate
// ---------------------------------------------------------------------------

/// Which of the three coordinates supplies the labels. The remaining two, in
/// ascending coordinate order, become the column and row coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LabelCoord {
    First,
    Second,
    Third,
}

impl LabelCoord {
    /// All three choices, in coordinate order.
    pub const ALL: [LabelCoord; 3] = [LabelCoord::First, LabelCoord::Second, LabelCoord::Third];

    /// Parses the 1-based coordinate number.
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(LabelCoord::First),
            2 => Some(LabelCoord::Second),
            3 => Some(LabelCoord::Third),
            _ => None,
        }
    }

    /// 1-based coordinate number.
    pub fn number(self) -> u8 {
        match self {
            LabelCoord::First => 1,
            LabelCoord::Second => 2,
            LabelCoord::Third => 3,
        }
    }

    /// 0-based index of the label coordinate.
    pub fn index(self) -> usize {
        self.number() as usize - 1
    }

    /// 0-based indices of the (column, row) coordinates.
    pub fn free_axes(self) -> (usize, usize) {
        match self {
            LabelCoord::First => (1, 2),
            LabelCoord::Second => (0, 2),
            LabelCoord::Third => (0, 1),
        }
    }
}

impl fmt::Display for LabelCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for LabelCoord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for LabelCoord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = u8::deserialize(deserializer)?;
        LabelCoord::from_number(n).ok_or_else(|| {
            serde::de::Error::custom(format!("labelCoord must be 1, 2 or 3, got {n}"))
        })
    }
}

// ---------------------------------------------------------------------------
// The grid itself
// ---------------------------------------------------------------------------

/// A partial labelling of a `cols x rows` grid with labels in
/// `1..=label_bound`, at most one label per cell.
///
/// Cells are keyed `(col, row)`, both 1-based, rows counted bottom-up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelledGrid {
    cols: Coord,
    rows: Coord,
    label_bound: Coord,
    label_coord: LabelCoord,
    cells: BTreeMap<(Coord, Coord), Coord>,
}

impl LabelledGrid {
    /// Builds a grid, checking cell and label bounds and cell uniqueness.
    pub fn new(
        cols: Coord,
        rows: Coord,
        label_bound: Coord,
        label_coord: LabelCoord,
        cells: impl IntoIterator<Item = ((Coord, Coord), Coord)>,
    ) -> Result<Self, GridError> {
        let mut map = BTreeMap::new();
        let mut order: HashMap<(Coord, Coord), usize> = HashMap::new();
        for (index, ((col, row), label)) in cells.into_iter().enumerate() {
            if col < 1 || col > cols || row < 1 || row > rows {
                return Err(GridError::CellOutOfRange { col, row });
            }
            if label < 1 || label > label_bound {
                return Err(GridError::LabelOutOfRange { label });
            }
            if let Some(&first) = order.get(&(col, row)) {
                return Err(GridError::CellCollision {
                    first,
                    second: index,
                });
            }
            order.insert((col, row), index);
            map.insert((col, row), label);
        }
        Ok(LabelledGrid {
            cols,
            rows,
            label_bound,
            label_coord,
            cells: map,
        })
    }

    pub fn cols(&self) -> Coord {
        self.cols
    }

    pub fn rows(&self) -> Coord {
        self.rows
    }

    pub fn label_bound(&self) -> Coord {
        self.label_bound
    }

    pub fn label_coord(&self) -> LabelCoord {
        self.label_coord
    }

    /// Labelled cells in `(col, row)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((Coord, Coord), Coord)> + '_ {
        self.cells.iter().map(|(&cell, &label)| (cell, label))
    }

    /// Number of labelled cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Label at `(col, row)`, if any.
    pub fn label_at(&self, col: Coord, row: Coord) -> Option<Coord> {
        self.cells.get(&(col, row)).copied()
    }

    /// Cells carrying the given label, in `(col, row)` order.
    pub fn label_set(&self, label: Coord) -> Vec<(Coord, Coord)> {
        self.cells
            .iter()
            .filter(|&(_, &l)| l == label)
            .map(|(&cell, _)| cell)
            .collect()
    }

    /// Distinct labels present, ascending.
    pub fn labels_present(&self) -> Vec<Coord> {
        let set: BTreeSet<Coord> = self.cells.values().copied().collect();
        set.into_iter().collect()
    }

    /// ASCII rendering: rows top to bottom are the row coordinate descending,
    /// columns left to right ascending, `.` for empty cells, cells
    /// right-aligned to the widest present label and separated by one space.
    pub fn render(&self) -> String {
        let width = self
            .cells
            .values()
            .map(|l| l.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in (1..=self.rows).rev() {
            for col in 1..=self.cols {
                if col > 1 {
                    out.push(' ');
                }
                let cell = match self.cells.get(&(col, row)) {
                    Some(label) => label.to_string(),
                    None => ".".to_string(),
                };
                for _ in cell.len()..width {
                    out.push(' ');
                }
                out.push_str(&cell);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawGrid {
    cols: Coord,
    rows: Coord,
    label_bound: Coord,
    label_coord: LabelCoord,
    /// `[col, row, label]` triples.
    cells: Vec<(Coord, Coord, Coord)>,
}

impl Serialize for LabelledGrid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawGrid {
            cols: self.cols,
            rows: self.rows,
            label_bound: self.label_bound,
            label_coord: self.label_coord,
            cells: self.cells.iter().map(|(&(c, r), &l)| (c, r, l)).collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabelledGrid {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawGrid::deserialize(deserializer)?;
        LabelledGrid::new(
            raw.cols,
            raw.rows,
            raw.label_bound,
            raw.label_coord,
            raw.cells.into_iter().map(|(c, r, l)| ((c, r), l)),
        )
        .map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Family <-> grid
// ---------------------------------------------------------------------------

/// Draws an arity-3 family as a labelled grid, using `label_coord` as the
/// label and the remaining coordinates (ascending) as column and row.
///
/// Rejects families where two tuples land in the same cell — for a
/// 2-comparable family that cannot happen, so a collision signals
/// non-2-comparable input.
pub fn to_grid(family: &Family, label_coord: LabelCoord) -> Result<LabelledGrid, GridError> {
    if family.arity() != 3 {
        return Err(GridError::NotArity3 {
            arity: family.arity(),
        });
    }
    let (cx, cy) = label_coord.free_axes();
    let cl = label_coord.index();
    let dims = family.dims();
    LabelledGrid::new(
        dims.side(cx),
        dims.side(cy),
        dims.side(cl),
        label_coord,
        family
            .tuples()
            .iter()
            .map(|t| ((t.coord(cx), t.coord(cy)), t.coord(cl))),
    )
}

/// Inverse of [`to_grid`]: reassembles the triples from the labelled cells.
///
/// The grid stores neither `s` nor the mode, so the result is declared with
/// `s = 2` in `comparable` mode (the setting in which grids are faithful);
/// tuples come out in `(col, row)` cell order. `from_grid(to_grid(f))` has
/// the same tuple set and box as `f`.
pub fn from_grid(grid: &LabelledGrid) -> Family {
    let (cx, cy) = grid.label_coord.free_axes();
    let cl = grid.label_coord.index();
    let mut dims = [0u32; 3];
    dims[cx] = grid.cols;
    dims[cy] = grid.rows;
    dims[cl] = grid.label_bound;
    let tuples = grid
        .cells()
        .map(|((col, row), label)| {
            let mut t = [0u32; 3];
            t[cx] = col;
            t[cy] = row;
            t[cl] = label;
            Tuple::from(t)
        })
        .collect();
    Family::new(
        BoxDims::new(dims.to_vec()).expect("grid dims are positive"),
        2,
        Mode::Comparable,
        tuples,
    )
    .expect("grid cells are inside the box by construction")
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

/// A cell mentioned in a condition witness; `label` is `None` for an empty
/// (ambient) cell.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WitnessCell {
    pub col: Coord,
    pub row: Coord,
    pub label: Option<Coord>,
}

impl WitnessCell {
    fn filled(cell: (Coord, Coord), label: Coord) -> Self {
        WitnessCell {
            col: cell.0,
            row: cell.1,
            label: Some(label),
        }
    }

    fn empty(cell: (Coord, Coord)) -> Self {
        WitnessCell {
            col: cell.0,
            row: cell.1,
            label: None,
        }
    }
}

/// Outcome of one grid condition, with offending cells on failure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<ConditionWitness>,
}

impl Condition {
    fn pass() -> Self {
        Condition {
            holds: true,
            witness: None,
        }
    }

    fn fail(cells: Vec<WitnessCell>, note: impl Into<String>) -> Self {
        Condition {
            holds: false,
            witness: Some(ConditionWitness {
                cells,
                note: note.into(),
            }),
        }
    }
}

/// Cells demonstrating a condition failure, with a human-readable note.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConditionWitness {
    pub cells: Vec<WitnessCell>,
    pub note: String,
}

/// Per-condition report from [`grid_conditions`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub c1: Condition,
    pub c2: Condition,
    pub c3: Condition,
    pub c3_prime: Condition,
    pub c4: Condition,
}

impl ConditionReport {
    /// Whether every condition holds.
    pub fn all_hold(&self) -> bool {
        self.c1.holds && self.c2.holds && self.c3.holds && self.c3_prime.holds && self.c4.holds
    }
}

/// Evaluates the five grid conditions.
///
/// * C1: labels strictly increase left to right within each row and bottom to
///   top within each column.
/// * C2: for each label, its cells are strictly increasing in both
///   coordinates when sorted (a 2-increasing point set).
/// * C3: for every labelled cell `x`, no other cell in `x`'s row shares a
///   label with another cell in `x`'s column.
/// * C3′: there is no transitivity-breaking configuration — cells `(a, b)`
///   labelled `c` and `(a', b')` labelled `c'` with `a' > a`, `b' > b`,
///   `c' < c`, together with a third cell `(a'', b'')` labelled `c''` with
///   `c' < c'' < c` and either `a'' > a'` and `b'' < b`, or `a'' < a` and
///   `b'' > b`.
/// * C4: for every ordered pair of labels `(c, d)` (including `c = d`), the
///   upper completion of `c` and the lower completion of `d` are disjoint.
pub fn grid_conditions(grid: &LabelledGrid) -> ConditionReport {
    ConditionReport {
        c1: check_c1(grid),
        c2: check_c2(grid),
        c3: check_c3(grid),
        c3_prime: check_c3_prime(grid),
        c4: check_c4(grid),
    }
}

fn rows_index(grid: &LabelledGrid) -> BTreeMap<Coord, Vec<(Coord, Coord)>> {
    // row -> sorted (col, label)
    let mut rows: BTreeMap<Coord, Vec<(Coord, Coord)>> = BTreeMap::new();
    for ((col, row), label) in grid.cells() {
        rows.entry(row).or_default().push((col, label));
    }
    rows
}

fn cols_index(grid: &LabelledGrid) -> BTreeMap<Coord, Vec<(Coord, Coord)>> {
    // col -> sorted (row, label)
    let mut cols: BTreeMap<Coord, Vec<(Coord, Coord)>> = BTreeMap::new();
    for ((col, row), label) in grid.cells() {
        cols.entry(col).or_default().push((row, label));
    }
    for list in cols.values_mut() {
        list.sort_unstable();
    }
    cols
}

fn check_c1(grid: &LabelledGrid) -> Condition {
    for (row, cells) in rows_index(grid) {
        for pair in cells.windows(2) {
            let (c1, l1) = pair[0];
            let (c2, l2) = pair[1];
            if l1 >= l2 {
                return Condition::fail(
                    vec![
                        WitnessCell::filled((c1, row), l1),
                        WitnessCell::filled((c2, row), l2),
                    ],
                    "labels do not strictly increase along the row",
                );
            }
        }
    }
    for (col, cells) in cols_index(grid) {
        for pair in cells.windows(2) {
            let (r1, l1) = pair[0];
            let (r2, l2) = pair[1];
            if l1 >= l2 {
                return Condition::fail(
                    vec![
                        WitnessCell::filled((col, r1), l1),
                        WitnessCell::filled((col, r2), l2),
                    ],
                    "labels do not strictly increase up the column",
                );
            }
        }
    }
    Condition::pass()
}

fn check_c2(grid: &LabelledGrid) -> Condition {
    let mut by_label: BTreeMap<Coord, Vec<(Coord, Coord)>> = BTreeMap::new();
    for ((col, row), label) in grid.cells() {
        by_label.entry(label).or_default().push((col, row));
    }
    for (label, cells) in by_label {
        // Cells arrive sorted by (col, row); 2-increasing means strictly
        // ascending in both coordinates.
        for pair in cells.windows(2) {
            let (c1, r1) = pair[0];
            let (c2, r2) = pair[1];
            if c1 == c2 || r1 >= r2 {
                return Condition::fail(
                    vec![
                        WitnessCell::filled((c1, r1), label),
                        WitnessCell::filled((c2, r2), label),
                    ],
                    "two cells of one label are not strictly increasing in both coordinates",
                );
            }
        }
    }
    Condition::pass()
}

fn check_c3(grid: &LabelledGrid) -> Condition {
    let rows = rows_index(grid);
    let cols = cols_index(grid);
    for ((col, row), label) in grid.cells() {
        let row_mates = &rows[&row];
        let col_mates = &cols[&col];
        let mut row_labels: HashMap<Coord, Coord> = HashMap::new();
        for &(c, l) in row_mates {
            if c != col {
                row_labels.entry(l).or_insert(c);
            }
        }
        for &(r, l) in col_mates {
            if r == row {
                continue;
            }
            if let Some(&c) = row_labels.get(&l) {
                return Condition::fail(
                    vec![
                        WitnessCell::filled((col, row), label),
                        WitnessCell::filled((c, row), l),
                        WitnessCell::filled((col, r), l),
                    ],
                    "a row-mate and a column-mate of the first cell share a label",
                );
            }
        }
    }
    Condition::pass()
}

fn check_c3_prime(grid: &LabelledGrid) -> Condition {
    let cells: Vec<((Coord, Coord), Coord)> = grid.cells().collect();
    for &((a, b), c) in &cells {
        for &((a2, b2), c2) in &cells {
            if !(a2 > a && b2 > b && c2 < c) {
                continue;
            }
            for &((a3, b3), c3) in &cells {
                if c2 < c3 && c3 < c && ((a3 > a2 && b3 < b) || (a3 < a && b3 > b2)) {
                    return Condition::fail(
                        vec![
                            WitnessCell::filled((a, b), c),
                            WitnessCell::filled((a2, b2), c2),
                            WitnessCell::filled((a3, b3), c3),
                        ],
                        "transitivity-breaking configuration",
                    );
                }
            }
        }
    }
    Condition::pass()
}

fn check_c4(grid: &LabelledGrid) -> Condition {
    // cell -> first label whose upper completion contains it.
    let mut upper_of: HashMap<(Coord, Coord), Coord> = HashMap::new();
    for label in grid.labels_present() {
        let geometry = label_geometry_unchecked(grid, label);
        for &cell in &geometry.upper_completion {
            upper_of.entry(cell).or_insert(label);
        }
    }
    for d in grid.labels_present() {
        let geometry = label_geometry_unchecked(grid, d);
        for &cell in &geometry.lower_completion {
            if let Some(&c) = upper_of.get(&cell) {
                let (col, row) = cell;
                let mut x = WitnessCell::empty(cell);
                x.label = grid.label_at(col, row);
                // The defining neighbours: a c-cell below and to the right,
                // a d-cell above and to the left.
                let c_cells = grid.label_set(c);
                let d_cells = grid.label_set(d);
                let below = *c_cells
                    .iter()
                    .find(|&&(cc, rr)| cc == col && rr < row)
                    .expect("upper completion implies a cell below");
                let right = *c_cells
                    .iter()
                    .find(|&&(cc, rr)| rr == row && cc > col)
                    .expect("upper completion implies a cell to the right");
                let above = *d_cells
                    .iter()
                    .find(|&&(cc, rr)| cc == col && rr > row)
                    .expect("lower completion implies a cell above");
                let left = *d_cells
                    .iter()
                    .find(|&&(cc, rr)| rr == row && cc < col)
                    .expect("lower completion implies a cell to the left");
                return Condition::fail(
                    vec![
                        x,
                        WitnessCell::filled(below, c),
                        WitnessCell::filled(right, c),
                        WitnessCell::filled(above, d),
                        WitnessCell::filled(left, d),
                    ],
                    format!(
                        "cell ({col},{row}) lies in the upper completion of label {c} and the lower completion of label {d}"
                    ),
                );
            }
        }
    }
    Condition::pass()
}

// ---------------------------------------------------------------------------
// Label geometry
// ---------------------------------------------------------------------------

/// The geometry of one label's cells: the label set `S`, its completion `P`
/// (cells sharing both a row and a column with `S`), and the upper and lower
/// completions `P1` / `P2`.
///
/// `P1` holds the grid cells with an `S`-cell strictly below them in the same
/// column *and* strictly to their right in the same row; `P2` those with an
/// `S`-cell strictly above *and* strictly to the left. When `S` is
/// 2-increasing, `P = P1 ∪ P2 ∪ S` with the three parts disjoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LabelGeometry {
    pub label: Coord,
    pub label_set: BTreeSet<(Coord, Coord)>,
    pub completion: BTreeSet<(Coord, Coord)>,
    pub upper_completion: BTreeSet<(Coord, Coord)>,
    pub lower_completion: BTreeSet<(Coord, Coord)>,
}

/// Computes [`LabelGeometry`] for a label that occurs in the grid.
pub fn label_geometry(grid: &LabelledGrid, label: Coord) -> Result<LabelGeometry, GridError> {
    if grid.label_set(label).is_empty() {
        return Err(GridError::LabelOutOfRange { label });
    }
    Ok(label_geometry_unchecked(grid, label))
}

fn label_geometry_unchecked(grid: &LabelledGrid, label: Coord) -> LabelGeometry {
    let label_set: BTreeSet<(Coord, Coord)> = grid.label_set(label).into_iter().collect();
    // Per column: lowest and highest S-cell row; per row: leftmost and
    // rightmost S-cell column.
    let mut min_row: BTreeMap<Coord, Coord> = BTreeMap::new();
    let mut max_row: BTreeMap<Coord, Coord> = BTreeMap::new();
    let mut min_col: BTreeMap<Coord, Coord> = BTreeMap::new();
    let mut max_col: BTreeMap<Coord, Coord> = BTreeMap::new();
    for &(col, row) in &label_set {
        min_row
            .entry(col)
            .and_modify(|r| *r = (*r).min(row))
            .or_insert(row);
        max_row
            .entry(col)
            .and_modify(|r| *r = (*r).max(row))
            .or_insert(row);
        min_col
            .entry(row)
            .and_modify(|c| *c = (*c).min(col))
            .or_insert(col);
        max_col
            .entry(row)
            .and_modify(|c| *c = (*c).max(col))
            .or_insert(col);
    }
    let mut completion = BTreeSet::new();
    let mut upper = BTreeSet::new();
    let mut lower = BTreeSet::new();
    for &col in min_row.keys() {
        for &row in min_col.keys() {
            completion.insert((col, row));
            // S-cell strictly below in this column, and strictly to the
            // right in this row.
            if min_row[&col] < row && max_col[&row] > col {
                upper.insert((col, row));
            }
            // S-cell strictly above in this column, and strictly to the
            // left in this row.
            if max_row[&col] > row && min_col[&row] < col {
                lower.insert((col, row));
            }
        }
    }
    LabelGeometry {
        label,
        label_set,
        completion,
        upper_completion: upper,
        lower_completion: lower,
    }
}

// ---------------------------------------------------------------------------
// Labelled bipartite graphs and repeating cycles
// ---------------------------------------------------------------------------

/// An edge of a [`LabelledBipartite`] graph, 1-based endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BipartiteEdge {
    pub left: u32,
    pub right: u32,
    pub label: u32,
}

/// A bipartite graph with labelled edges.
///
/// Arity-3 families map onto these with the first two coordinates as the
/// sides and the third as the edge label.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LabelledBipartite {
    left_bound: u32,
    right_bound: u32,
    edges: Vec<BipartiteEdge>,
}

impl LabelledBipartite {
    /// Builds the graph, checking endpoint bounds and positive labels.
    pub fn new(
        left_bound: u32,
        right_bound: u32,
        edges: Vec<BipartiteEdge>,
    ) -> Result<Self, GridError> {
        for (index, e) in edges.iter().enumerate() {
            if e.left < 1
                || e.left > left_bound
                || e.right < 1
                || e.right > right_bound
                || e.label < 1
            {
                return Err(GridError::EdgeOutOfRange { index });
            }
        }
        Ok(LabelledBipartite {
            left_bound,
            right_bound,
            edges,
        })
    }

    /// Encodes an arity-3 family: coordinate 1 on the left side, coordinate 2
    /// on the right, coordinate 3 as edge label.
    pub fn from_family(family: &Family) -> Result<Self, GridError> {
        if family.arity() != 3 {
            return Err(GridError::NotArity3 {
                arity: family.arity(),
            });
        }
        let dims = family.dims();
        LabelledBipartite::new(
            dims.side(0),
            dims.side(1),
            family
                .tuples()
                .iter()
                .map(|t| BipartiteEdge {
                    left: t.coord(0),
                    right: t.coord(1),
                    label: t.coord(2),
                })
                .collect(),
        )
    }

    /// Encodes a grid's labelled cells as edges (columns left, rows right).
    pub fn from_grid(grid: &LabelledGrid) -> Self {
        LabelledBipartite {
            left_bound: grid.cols(),
            right_bound: grid.rows(),
            edges: grid
                .cells()
                .map(|((col, row), label)| BipartiteEdge {
                    left: col,
                    right: row,
                    label,
                })
                .collect(),
        }
    }

    pub fn edges(&self) -> &[BipartiteEdge] {
        &self.edges
    }

    /// Number of admissible left vertices.
    pub fn left_bound(&self) -> u32 {
        self.left_bound
    }

    /// Number of admissible right vertices.
    pub fn right_bound(&self) -> u32 {
        self.right_bound
    }
}

/// Result of the repeating-cycle search: `free` is true when no simple cycle
/// of length at most the bound carries a twice-repeated label word; otherwise
/// `witness` holds one offending cycle's edges in traversal order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RepeatingCycleReport {
    pub free: bool,
    pub witness: Option<Vec<BipartiteEdge>>,
}

/// Checks whether the graph has a simple cycle of length `2k <= max_cycle_len`
/// whose label word has the form `w w` (that is, label `i` equals label
/// `i + k` around the cycle). Returns `free = true` when none exists.
///
/// `max_cycle_len` must be an even number at least 4. Families that are
/// 2-comparable never produce such cycles, so a witness certifies
/// non-2-comparable structure.
pub fn repeating_cycle_free(
    graph: &LabelledBipartite,
    max_cycle_len: usize,
) -> Result<RepeatingCycleReport, GridError> {
    if max_cycle_len < 4 || !max_cycle_len.is_multiple_of(2) {
        return Err(GridError::BadCycleBound {
            given: max_cycle_len,
        });
    }

    // Compact vertex ids: left vertices first, then right.
    let mut left_ids: BTreeMap<u32, usize> = BTreeMap::new();
    let mut right_ids: BTreeMap<u32, usize> = BTreeMap::new();
    for e in &graph.edges {
        let next = left_ids.len();
        left_ids.entry(e.left).or_insert(next);
        let next = right_ids.len();
        right_ids.entry(e.right).or_insert(next);
    }
    let n_left = left_ids.len();
    let n = n_left + right_ids.len();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, e) in graph.edges.iter().enumerate() {
        let u = left_ids[&e.left];
        let v = n_left + right_ids[&e.right];
        adjacency[u].push((v, idx));
        adjacency[v].push((u, idx));
    }

    // Enumerate simple cycles whose minimal vertex is `start` by DFS over
    // vertices >= start. Cycle lengths are even automatically (bipartite).
    let mut visited = vec![false; n];
    for start in 0..n {
        let mut path_edges: Vec<usize> = Vec::new();
        if let Some(cycle) = dfs_repeating(
            graph,
            &adjacency,
            start,
            start,
            &mut visited,
            &mut path_edges,
            max_cycle_len,
        ) {
            return Ok(RepeatingCycleReport {
                free: false,
                witness: Some(cycle),
            });
        }
        debug_assert!(visited.iter().all(|&v| !v));
    }
    Ok(RepeatingCycleReport {
        free: true,
        witness: None,
    })
}

fn dfs_repeating(
    graph: &LabelledBipartite,
    adjacency: &[Vec<(usize, usize)>],
    start: usize,
    current: usize,
    visited: &mut [bool],
    path_edges: &mut Vec<usize>,
    max_len: usize,
) -> Option<Vec<BipartiteEdge>> {
    visited[current] = true;
    for &(next, edge) in &adjacency[current] {
        if next == start && path_edges.len() >= 3 {
            path_edges.push(edge);
            let word: Vec<u32> = path_edges.iter().map(|&i| graph.edges[i].label).collect();
            let repeating = {
                let k = word.len() / 2;
                word.len().is_multiple_of(2) && (0..k).all(|i| word[i] == word[i + k])
            };
            if repeating {
                let cycle = path_edges.iter().map(|&i| graph.edges[i]).collect();
                visited[current] = false;
                return Some(cycle);
            }
            path_edges.pop();
        } else if next > start && !visited[next] && path_edges.len() + 1 < max_len {
            path_edges.push(edge);
            if let Some(found) =
                dfs_repeating(graph, adjacency, start, next, visited, path_edges, max_len)
            {
                visited[current] = false;
                return Some(found);
            }
            path_edges.pop();
        }
    }
    visited[current] = false;
    None
}
