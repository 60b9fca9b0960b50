//! Error types for the library.

use thiserror::Error;

/// Errors constructing or parsing tuple families.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a box needs at least one coordinate")]
    EmptyArity,
    #[error("arity {arity} exceeds the supported maximum of 64")]
    ArityTooLarge { arity: usize },
    #[error("box side for coordinate {coord} is zero; sides must be at least 1")]
    ZeroSide { coord: usize },
    #[error("s = {s} is outside 1..={arity}")]
    SOutOfRange { s: u32, arity: usize },
    #[error("tuple {index} has arity {got}, expected {expected}")]
    TupleArityMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("tuple {index} lies outside the box")]
    TupleOutOfBox { index: usize },
    #[error("invalid family JSON: {0}")]
    Json(String),
}

/// Errors building or rendering labelled grids.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid views need arity 3, got {arity}")]
    NotArity3 { arity: usize },
    #[error("tuples {first} and {second} collide in the same grid cell")]
    CellCollision { first: usize, second: usize },
    #[error("label {label} is outside the grid's label bound")]
    LabelOutOfRange { label: u32 },
    #[error("cell ({col},{row}) is outside the grid bounds")]
    CellOutOfRange { col: u32, row: u32 },
    #[error("cycle length bound must be an even number at least 4, got {given}")]
    BadCycleBound { given: usize },
    #[error("bipartite edge {index} has an out-of-range endpoint or a zero label")]
    EdgeOutOfRange { index: usize },
}

/// Errors in the deterministic constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("base must be at least 1, got {given}")]
    BadBase { given: u32 },
    #[error("construction size {size} exceeds the enumeration cap of {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("coordinate bound overflows: {0}")]
    SideOverflow(String),
    #[error("operands disagree: {0}")]
    Mismatch(String),
    #[error("{given} is not a supported prime power (2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedFieldOrder { given: u32 },
    #[error("field exponent must be at least 1")]
    BadExponent,
    #[error("arity-3 input required, got {arity}")]
    NotArity3 { arity: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Errors in exhaustive and randomized searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space of {volume} tuples exceeds the cap of {cap}")]
    SpaceTooLarge { volume: u128, cap: u128 },
    #[error("target size {target} exceeds the box volume {volume}")]
    TargetTooLarge { target: usize, volume: u128 },
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Errors in the continuous cuboid relaxation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CuboidError {
    #[error("interval endpoints must satisfy 0 <= lo < hi <= 1, got [{lo}, {hi}]")]
    BadInterval { lo: String, hi: String },
    #[error("cuboids {first} and {second} overlap")]
    Overlap { first: usize, second: usize },
    #[error("alpha must be positive, got {given}")]
    BadAlpha { given: f64 },
    #[error("parameter x must satisfy 0 < x < 1/2, got {given}")]
    BadSplit { given: f64 },
    #[error("tolerance must be positive and finite, got {given}")]
    BadTolerance { given: f64 },
    #[error("axis must be 1, 2, or 3, got {given}")]
    BadAxis { given: u8 },
    #[error("cuboids {first} and {second} are not 2-comparable")]
    NotComparable { first: usize, second: usize },
    #[error("axis {axis} needs a grid of {denominator} cells, beyond the supported size")]
    GridTooFine { axis: u8, denominator: String },
    #[error("family is empty")]
    Empty,
    #[error("invalid cuboid-family JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Errors in hypergraph encodings and pattern checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("arity-3 input required, got {arity}")]
    NotArity3 { arity: usize },
    #[error("duplicate triples produce parallel hyperedges: indices {first} and {second}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("hypergraph is not linear: edges {first} and {second} share two vertices")]
    NotLinear { first: usize, second: usize },
    #[error("ground set bound must be at least 1")]
    EmptyGround,
    #[error("set element {element} is outside 1..={bound}")]
    ElementOutOfRange { element: u32, bound: u32 },
    #[error("{0}")]
    BadParameter(String),
}

/// Errors in decomposition analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("arity-3 input required, got {arity}")]
    NotArity3 { arity: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("certificate invalid: {0}")]
    BadCertificate(String),
}
