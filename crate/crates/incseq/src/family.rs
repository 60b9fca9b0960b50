//! Core objects: integer boxes, r-tuples, and s-increasing / s-comparable
//! tuple families.
//!
//! A tuple `a` is *s-less* than `b` (written `a <_s b`) when `a_i < b_i` in at
//! least `s` coordinates. The relation is irreflexive but in general neither
//! antisymmetric nor transitive; `2 <= 2s - r` restores antisymmetry and
//! acyclicity has to be checked explicitly otherwise.
//!
//! A family is *s-increasing* when every earlier tuple is s-less than every
//! later one (a property of the stored order), and *s-comparable* when every
//! unordered pair is s-less in one direction or the other (a property of the
//! set).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FamilyError;

/// 1-based coordinate value.
pub type Coord = u32;

/// Upper bound on tuple arity; keeps coordinate-subset masks in a `u64`.
pub const MAX_ARITY: usize = 64;

/// Cap on validation failure witnesses per report. The boolean verdict is
/// always exact; only the witness list is truncated.
pub const MAX_FAILURES: usize = 100;

/// An r-tuple of 1-based coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tuple(Vec<Coord>);

impl Tuple {
    /// Wraps a coordinate vector.
    pub fn new(coords: Vec<Coord>) -> Self {
        Tuple(coords)
    }

    /// Number of coordinates.
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Coordinate slice (1-based values).
    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    /// Coordinate `i` (0-based index).
    pub fn coord(&self, i: usize) -> Coord {
        self.0[i]
    }
}

impl fmt::Debug for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<&[Coord]> for Tuple {
    fn from(v: &[Coord]) -> Self {
        Tuple(v.to_vec())
    }
}

impl<const N: usize> From<[Coord; N]> for Tuple {
    fn from(v: [Coord; N]) -> Self {
        Tuple(v.to_vec())
    }
}

/// Number of coordinates where `a` is strictly below `b`.
///
/// Panics if arities differ; families guarantee uniform arity.
pub fn strict_less_count(a: &Tuple, b: &Tuple) -> usize {
    assert_eq!(a.arity(), b.arity(), "tuple arity mismatch");
    a.coords()
        .iter()
        .zip(b.coords())
        .filter(|(x, y)| x < y)
        .count()
}

/// `a <_s b`: strictly below in at least `s` coordinates.
pub fn less_s(a: &Tuple, b: &Tuple, s: u32) -> bool {
    strict_less_count(a, b) >= s as usize
}

/// `a <_s b` or `b <_s a`.
pub fn comparable_pair(a: &Tuple, b: &Tuple, s: u32) -> bool {
    let mut less = 0usize;
    let mut greater = 0usize;
    for (x, y) in a.coords().iter().zip(b.coords()) {
        if x < y {
            less += 1;
        } else if x > y {
            greater += 1;
        }
    }
    less >= s as usize || greater >= s as usize
}

/// `a <= b` in the coordinatewise partial order.
pub fn dominated(a: &Tuple, b: &Tuple) -> bool {
    a.coords().iter().zip(b.coords()).all(|(x, y)| x <= y)
}

/// The ambient box `[n_1] x ... x [n_r]` with 1-based coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxDims(Vec<Coord>);

impl BoxDims {
    /// Validates `1 <= r <= 64` and every side at least 1.
    pub fn new(dims: Vec<Coord>) -> Result<Self, FamilyError> {
        if dims.is_empty() {
            return Err(FamilyError::EmptyArity);
        }
        if dims.len() > MAX_ARITY {
            return Err(FamilyError::ArityTooLarge { arity: dims.len() });
        }
        if let Some(i) = dims.iter().position(|&d| d == 0) {
            return Err(FamilyError::ZeroSide { coord: i + 1 });
        }
        Ok(BoxDims(dims))
    }

    /// Number of coordinates (the arity `r`).
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Side lengths.
    pub fn sides(&self) -> &[Coord] {
        &self.0
    }

    /// Side length of coordinate `i` (0-based index).
    pub fn side(&self, i: usize) -> Coord {
        self.0[i]
    }

    /// Number of tuples in the box, saturating at `u128::MAX`.
    pub fn volume(&self) -> u128 {
        self.0
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
            .unwrap_or(u128::MAX)
    }

    /// Whether the tuple has the right arity and all coordinates in range.
    pub fn contains(&self, t: &Tuple) -> bool {
        t.arity() == self.arity()
            && t.coords()
                .iter()
                .zip(&self.0)
                .all(|(&c, &d)| c >= 1 && c <= d)
    }

    /// All tuples of the box in lexicographic order.
    ///
    /// Intended for search and enumeration at desk scale; callers guard the
    /// volume.
    pub fn enumerate(&self) -> Vec<Tuple> {
        let mut out = Vec::new();
        let mut cur = vec![1u32; self.arity()];
        loop {
            out.push(Tuple::new(cur.clone()));
            let mut i = self.arity();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.0[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Whether a family's stored order matters (`increasing`) or only its set of
/// tuples (`comparable`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every earlier tuple must be s-less than every later one.
    Increasing,
    /// Every unordered pair must be s-comparable.
    Comparable,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Increasing => write!(f, "increasing"),
            Mode::Comparable => write!(f, "comparable"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text {
            "increasing" => Ok(Mode::Increasing),
            "comparable" => Ok(Mode::Comparable),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Kind of a validation failure.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// Two tuples comparable in neither direction (mode `comparable`).
    PairIncomparable,
    /// An earlier tuple not s-less than a later one (mode `increasing`).
    OrderViolation,
    /// The `<_s` digraph on the family has a directed cycle, so no
    /// reordering can repair the sequence. Reported after order violations.
    Cycle,
    /// Two equal tuples.
    Duplicate,
}

/// A single validation failure with the 0-based indices that witness it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationFailure {
    pub kind: FailureKind,
    /// Offending tuple indices: a pair for pairwise kinds, a full cycle for
    /// [`FailureKind::Cycle`].
    pub witness: Vec<usize>,
}

/// Outcome of validating a family against its declared mode.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// At most [`MAX_FAILURES`] entries; `truncated` says whether more exist.
    pub failures: Vec<ValidationFailure>,
    pub truncated: bool,
}

impl ValidationReport {
    fn push(&mut self, kind: FailureKind, witness: Vec<usize>) {
        self.valid = false;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(ValidationFailure { kind, witness });
        } else {
            self.truncated = true;
        }
    }
}

/// An ordered family of tuples in a box, with the comparability parameter `s`
/// and the declared mode.
///
/// Construction checks shape invariants (arity, box membership, `1 <= s <= r`);
/// the sequence/set properties themselves are checked by [`Family::validate`],
/// so invalid sequences can be represented, inspected, and reported on.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Family {
    dims: BoxDims,
    s: u32,
    mode: Mode,
    tuples: Vec<Tuple>,
}

impl Family {
    /// Builds a family after checking shape invariants.
    pub fn new(dims: BoxDims, s: u32, mode: Mode, tuples: Vec<Tuple>) -> Result<Self, FamilyError> {
        let r = dims.arity();
        if s == 0 || s as usize > r {
            return Err(FamilyError::SOutOfRange { s, arity: r });
        }
        for (i, t) in tuples.iter().enumerate() {
            if t.arity() != r {
                return Err(FamilyError::TupleArityMismatch {
                    index: i,
                    expected: r,
                    got: t.arity(),
                });
            }
            if !dims.contains(t) {
                return Err(FamilyError::TupleOutOfBox { index: i });
            }
        }
        Ok(Family {
            dims,
            s,
            mode,
            tuples,
        })
    }

    pub fn dims(&self) -> &BoxDims {
        &self.dims
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Arity `r` of the box and every tuple.
    pub fn arity(&self) -> usize {
        self.dims.arity()
    }

    /// Same family with a different declared mode (tuples unchanged).
    pub fn with_mode(&self, mode: Mode) -> Family {
        Family {
            mode,
            ..self.clone()
        }
    }

    /// Checks the declared mode and reports all failures (witnesses capped).
    ///
    /// For `increasing` mode, order violations are reported first; if the
    /// family's `<_s` digraph is also cyclic, one `cycle` failure is appended
    /// to record that no reordering can repair the sequence. A sequence with
    /// no order violations is valid regardless of cycles (backward arcs are
    /// possible when `s <= r/2` and do not violate the definition).
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            valid: true,
            failures: Vec::new(),
            truncated: false,
        };

        // Duplicates, by first occurrence.
        let mut seen: HashMap<&Tuple, usize> = HashMap::new();
        for (j, t) in self.tuples.iter().enumerate() {
            match seen.get(t) {
                Some(&i) => report.push(FailureKind::Duplicate, vec![i, j]),
                None => {
                    seen.insert(t, j);
                }
            }
        }

        let mut any_order_violation = false;
        for i in 0..self.tuples.len() {
            for j in (i + 1)..self.tuples.len() {
                match self.mode {
                    Mode::Increasing => {
                        if !less_s(&self.tuples[i], &self.tuples[j], self.s) {
                            any_order_violation = true;
                            report.push(FailureKind::OrderViolation, vec![i, j]);
                        }
                    }
                    Mode::Comparable => {
                        if !comparable_pair(&self.tuples[i], &self.tuples[j], self.s) {
                            report.push(FailureKind::PairIncomparable, vec![i, j]);
                        }
                    }
                }
            }
        }

        if self.mode == Mode::Increasing && any_order_violation {
            if let Some(cycle) = self.cycle_witness() {
                report.push(FailureKind::Cycle, cycle);
            }
        }

        report
    }

    /// `validate().valid`.
    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    /// Whether the `<_s` digraph on the family has no directed cycle.
    ///
    /// For s-comparable sets this decides orderability: an s-comparable set
    /// can be arranged into an s-increasing sequence exactly when the digraph
    /// is acyclic.
    pub fn acyclic(&self) -> bool {
        self.cycle_witness().is_none()
    }

    /// A directed cycle in the `<_s` digraph as a list of 0-based indices
    /// (each arc `witness[k] <_s witness[k+1]`, wrapping around), or `None`.
    pub fn cycle_witness(&self) -> Option<Vec<usize>> {
        let n = self.tuples.len();
        // 0 = unvisited, 1 = on stack, 2 = done.
        let mut state = vec![0u8; n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut path: Vec<usize> = Vec::new();
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            stack.push((root, 0));
            state[root] = 1;
            path.push(root);
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                let mut advanced = false;
                while *next < n {
                    let v = *next;
                    *next += 1;
                    if v == u || !less_s(&self.tuples[u], &self.tuples[v], self.s) {
                        continue;
                    }
                    if state[v] == 1 {
                        let start = path.iter().position(|&w| w == v).expect("on stack");
                        return Some(path[start..].to_vec());
                    }
                    if state[v] == 0 {
                        state[v] = 1;
                        stack.push((v, 0));
                        path.push(v);
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    state[u] = 2;
                    stack.pop();
                    path.pop();
                }
            }
        }
        None
    }

    /// Serializes to the canonical JSON form
    /// `{"dims":[...],"s":...,"mode":"...","tuples":[[...],...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialization cannot fail")
    }

    /// Parses the canonical JSON form, re-checking shape invariants.
    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let raw: RawFamily =
            serde_json::from_str(text).map_err(|e| FamilyError::Json(e.to_string()))?;
        Family::new(BoxDims::new(raw.dims)?, raw.s, raw.mode, raw.tuples)
    }
}

#[derive(Deserialize)]
struct RawFamily {
    dims: Vec<Coord>,
    s: u32,
    mode: Mode,
    tuples: Vec<Tuple>,
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawFamily::deserialize(deserializer)?;
        let dims = BoxDims::new(raw.dims).map_err(serde::de::Error::custom)?;
        Family::new(dims, raw.s, raw.mode, raw.tuples).map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor for arity-3 families from coordinate triples.
pub fn triples_family(
    dims: [Coord; 3],
    s: u32,
    mode: Mode,
    triples: &[[Coord; 3]],
) -> Result<Family, FamilyError> {
    Family::new(
        BoxDims::new(dims.to_vec())?,
        s,
        mode,
        triples.iter().map(|&t| Tuple::from(t)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[Coord]) -> Tuple {
        Tuple::from(v)
    }

    #[test]
    fn less_s_counts_strict_coordinates() {
        assert!(less_s(&t(&[1, 1, 1]), &t(&[2, 2, 1]), 2));
        assert!(!less_s(&t(&[1, 1, 1]), &t(&[2, 1, 1]), 2));
        // Equal coordinates count for neither side.
        assert!(!less_s(&t(&[1, 1]), &t(&[1, 1]), 1));
        // s = 1 needs a single strict drop.
        assert!(less_s(&t(&[5, 1]), &t(&[5, 2]), 1));
    }

    #[test]
    fn less_s_is_not_antisymmetric_for_small_s() {
        // With s <= r/2 both directions can hold at once.
        let a = t(&[1, 2, 2]);
        let b = t(&[2, 1, 1]);
        assert!(less_s(&a, &b, 1));
        assert!(less_s(&b, &a, 1));
        // With 2s > r that cannot happen.
        assert!(!(less_s(&a, &b, 2) && less_s(&b, &a, 2)));
    }

    #[test]
    fn condorcet_triple_is_pairwise_less_but_cyclic() {
        let f = triples_family(
            [3, 3, 3],
            2,
            Mode::Comparable,
            &[[1, 2, 3], [2, 3, 1], [3, 1, 2]],
        )
        .unwrap();
        assert!(f.validate().valid, "pairwise 2-comparable");
        let cycle = f.cycle_witness().expect("the triple is a 3-cycle");
        assert_eq!(cycle.len(), 3);
        // Every ordering of the set fails as an increasing sequence.
        let perms: &[[usize; 3]] = &[
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for p in perms {
            let reordered = Family::new(
                f.dims().clone(),
                2,
                Mode::Increasing,
                p.iter().map(|&i| f.tuples()[i].clone()).collect(),
            )
            .unwrap();
            let report = reordered.validate();
            assert!(!report.valid);
            assert!(report
                .failures
                .iter()
                .any(|x| x.kind == FailureKind::OrderViolation));
            assert!(
                report.failures.iter().any(|x| x.kind == FailureKind::Cycle),
                "cycle diagnostic accompanies the order violations"
            );
        }
    }

    #[test]
    fn duplicate_tuples_are_flagged() {
        let f = triples_family(
            [2, 2, 2],
            2,
            Mode::Comparable,
            &[[1, 1, 1], [2, 2, 2], [1, 1, 1]],
        )
        .unwrap();
        let report = f.validate();
        assert!(!report.valid);
        let dup = report
            .failures
            .iter()
            .find(|x| x.kind == FailureKind::Duplicate)
            .expect("duplicate reported");
        assert_eq!(dup.witness, vec![0, 2]);
    }

    #[test]
    fn failure_witnesses_are_capped_but_verdict_exact() {
        // 30 copies of the same tuple: C(30,2) = 435 duplicate pairs... each
        // non-first occurrence reports once against the first, plus every
        // pair is incomparable. Far more than the cap either way.
        let tuples = vec![[1u32, 1, 1]; 30];
        let f = triples_family([1, 1, 1], 2, Mode::Comparable, &tuples).unwrap();
        let report = f.validate();
        assert!(!report.valid);
        assert_eq!(report.failures.len(), MAX_FAILURES);
        assert!(report.truncated);
    }

    #[test]
    fn empty_and_singleton_families_are_valid() {
        for mode in [Mode::Increasing, Mode::Comparable] {
            let f = triples_family([3, 3, 3], 2, mode, &[]).unwrap();
            assert!(f.validate().valid);
            let g = triples_family([3, 3, 3], 2, mode, &[[2, 2, 2]]).unwrap();
            assert!(g.validate().valid);
            assert!(g.acyclic());
        }
    }

    #[test]
    fn shape_invariants_are_rejected_at_construction() {
        assert!(matches!(BoxDims::new(vec![]), Err(FamilyError::EmptyArity)));
        assert!(matches!(
            BoxDims::new(vec![1; 65]),
            Err(FamilyError::ArityTooLarge { arity: 65 })
        ));
        assert!(matches!(
            BoxDims::new(vec![3, 0, 3]),
            Err(FamilyError::ZeroSide { coord: 2 })
        ));
        let dims = BoxDims::new(vec![3, 3, 3]).unwrap();
        assert!(matches!(
            Family::new(dims.clone(), 0, Mode::Comparable, vec![]),
            Err(FamilyError::SOutOfRange { .. })
        ));
        assert!(matches!(
            Family::new(dims.clone(), 4, Mode::Comparable, vec![]),
            Err(FamilyError::SOutOfRange { .. })
        ));
        assert!(matches!(
            Family::new(dims.clone(), 2, Mode::Comparable, vec![Tuple::from([1, 1])]),
            Err(FamilyError::TupleArityMismatch { index: 0, .. })
        ));
        assert!(matches!(
            Family::new(dims, 2, Mode::Comparable, vec![Tuple::from([1, 4, 1])]),
            Err(FamilyError::TupleOutOfBox { index: 0 })
        ));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let f = triples_family([4, 4, 4], 2, Mode::Increasing, &[[1, 1, 1], [2, 2, 2]]).unwrap();
        let json = f.to_json();
        assert_eq!(
            json,
            r#"{"dims":[4,4,4],"s":2,"mode":"increasing","tuples":[[1,1,1],[2,2,2]]}"#
        );
        let back = Family::from_json(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn json_rejects_out_of_box_tuples() {
        let text = r#"{"dims":[2,2,2],"s":2,"mode":"comparable","tuples":[[3,1,1]]}"#;
        assert!(Family::from_json(text).is_err());
    }

    #[test]
    fn box_enumeration_is_lexicographic_and_complete() {
        let b = BoxDims::new(vec![2, 3]).unwrap();
        let all = b.enumerate();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], Tuple::from([1, 1]));
        assert_eq!(all[1], Tuple::from([1, 2]));
        assert_eq!(all[5], Tuple::from([2, 3]));
        assert_eq!(b.volume(), 6);
    }
}
