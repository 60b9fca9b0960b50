//! Exact and randomized searches: branch-and-bound for the longest
//! s-increasing sequence, maximum-clique search for the largest s-comparable
//! set, the skew-triple-free cell problem on a square grid, and two seeded
//! randomized generators.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::SearchError;
use crate::family::{comparable_pair, dominated, less_s, BoxDims, Coord, Family, Mode, Tuple};

/// Identifier of the seeded generator used by all randomized operations,
/// recorded in run metadata so results are reproducible across builds.
pub const RNG_ALGORITHM: &str = "chacha8-seed64";

/// Largest box volume accepted by [`max_increasing`] and [`random_grow`].
pub const INCREASING_SPACE_CAP: u128 = 1 << 20;

/// Largest box volume accepted by [`max_comparable`] (the comparability
/// graph over all box tuples is materialized).
pub const CLIQUE_SPACE_CAP: u128 = 4096;

/// Largest grid side accepted by [`skew_triple_max`] (cells are tracked in a
/// 64-bit mask).
pub const SKEW_GRID_CAP: Coord = 8;

// ---------------------------------------------------------------------------
// Budget
// ---------------------------------------------------------------------------

/// Node and wall-clock limits for the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    /// 10⁸ nodes or 15 minutes, whichever is hit first.
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(900),
        }
    }
}

impl Budget {
    pub fn new(max_nodes: u64, max_time: Duration) -> Self {
        Budget {
            max_nodes,
            max_time,
        }
    }
}

/// Shared, thread-safe budget meter. Once either limit trips, every `tick`
/// returns `false` and the searches unwind with their best-so-far results.
struct BudgetMeter {
    max_nodes: u64,
    deadline: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl BudgetMeter {
    fn new(budget: &Budget) -> Self {
        BudgetMeter {
            max_nodes: budget.max_nodes,
            deadline: Instant::now() + budget.max_time,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts one search node; returns whether the search may continue.
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.max_nodes {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        // The clock is polled sparsely; node counting dominates.
        if n.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

// ---------------------------------------------------------------------------
// SearchReport
// ---------------------------------------------------------------------------

/// Outcome of an exact search: the best family found, whether optimality was
/// proven, and how much work it took.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    /// Size of the best family found (its tuple count).
    pub size: usize,
    /// `true` iff the search ran to completion, so `size` is the exact
    /// optimum for the instance.
    pub proven_optimal: bool,
    /// Search-tree nodes expanded (may vary across worker counts).
    pub nodes_explored: u64,
    /// Wall-clock time in milliseconds.
    pub elapsed_ms: u64,
    /// A cheap instance-level upper bound (counting argument), for context.
    pub upper_bound: u64,
    /// The best family found; always passes validation for its mode.
    pub witness: Family,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, SearchError> {
        serde_json::from_str(text).map_err(|e| SearchError::BadParameter(e.to_string()))
    }
}

/// The pigeonhole bound: in an s-increasing or s-comparable family, any two
/// tuples differ inside every set of `r − s + 1` coordinates, so projections
/// onto such a set are pairwise distinct. The best bound uses the smallest
/// `r − s + 1` box sides.
pub fn pigeonhole_bound(dims: &BoxDims, s: u32) -> u128 {
    let r = dims.arity();
    let keep = r - (s as usize) + 1;
    let mut sides: Vec<Coord> = dims.sides().to_vec();
    sides.sort_unstable();
    sides
        .iter()
        .take(keep)
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .unwrap_or(u128::MAX)
}

fn check_s(dims: &BoxDims, s: u32) -> Result<(), SearchError> {
    if s < 1 || s as usize > dims.arity() {
        return Err(SearchError::BadParameter(format!(
            "need 1 <= s <= arity {}, got s = {s}",
            dims.arity()
        )));
    }
    Ok(())
}

fn run_with_threads<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool construction cannot fail")
            .install(job)
    }
}

// ---------------------------------------------------------------------------
// Longest s-increasing sequence
// ---------------------------------------------------------------------------

/// Longest s-increasing sequence in the box, by exhaustive branch-and-bound;
/// single-threaded. See [`max_increasing_with_threads`].
pub fn max_increasing(
    dims: &BoxDims,
    s: u32,
    budget: &Budget,
) -> Result<SearchReport, SearchError> {
    max_increasing_with_threads(dims, s, budget, 1)
}

/// Longest s-increasing sequence in the box.
///
/// Branching is restricted to coordinatewise-minimal candidates: if `u`
/// extends a valid prefix and `v ≤ u` coordinatewise is also a candidate,
/// then `v` s-precedes everything `u` does, so some optimum uses only
/// minimal extensions at every step. Pruning combines the live candidate
/// count with the pigeonhole region bound (tuples after `t` project onto any
/// `r−s+1` coordinates outside the sub-box at or below `t`). The initial
/// lower bound comes from the digit-interleaving construction.
///
/// The optimum, the proven flag, and the bound are independent of the worker
/// count; the witness and node count may differ but the witness always
/// validates at the reported size.
pub fn max_increasing_with_threads(
    dims: &BoxDims,
    s: u32,
    budget: &Budget,
    threads: usize,
) -> Result<SearchReport, SearchError> {
    check_s(dims, s)?;
    let volume = dims.volume();
    if volume > INCREASING_SPACE_CAP {
        return Err(SearchError::SpaceTooLarge {
            volume,
            cap: INCREASING_SPACE_CAP,
        });
    }
    let start = Instant::now();
    let meter = BudgetMeter::new(budget);
    let r = dims.arity();

    // Seed: the largest digit-interleaving construction fitting the box.
    let min_side = *dims.sides().iter().min().expect("arity >= 1");
    let mut seed_m = 1u32;
    while (seed_m + 1 != 0)
        && (seed_m as u64 + 1).pow(s) <= min_side as u64
        && ((seed_m + 1) as u128).pow(r as u32) <= volume
    {
        seed_m += 1;
    }
    let seed = crate::construct::base_interleave(seed_m, r as u32, s)
        .map_err(|e| SearchError::BadParameter(e.to_string()))?;
    let seed_tuples: Vec<Tuple> = seed.tuples().to_vec();
    let seed_size = seed_tuples.len();

    // The first element of some optimum is the all-ones corner (replacing
    // any first element by the corner preserves all later relations).
    let corner = Tuple::new(vec![1; r]);
    let all = dims.enumerate();
    let after_corner: Vec<Tuple> = all
        .iter()
        .filter(|t| less_s(&corner, t, s))
        .cloned()
        .collect();
    let branch_set = minimal_elements(&after_corner);

    let shared_best = AtomicUsize::new(seed_size);
    let ctx = GrowCtx {
        dims,
        s,
        meter: &meter,
        shared_best: &shared_best,
    };

    let explore = |branch: &Tuple| -> (usize, Vec<Tuple>) {
        let mut chosen = vec![corner.clone(), branch.clone()];
        let cands: Vec<Tuple> = after_corner
            .iter()
            .filter(|t| less_s(branch, t, s))
            .cloned()
            .collect();
        let mut local = LocalBest {
            size: 0,
            witness: Vec::new(),
        };
        grow_increasing(&ctx, &mut chosen, &cands, &mut local);
        (local.size, local.witness)
    };

    let branch_results: Vec<(usize, Vec<Tuple>)> = run_with_threads(threads, || {
        if threads <= 1 {
            branch_set.iter().map(explore).collect()
        } else {
            branch_set.par_iter().map(explore).collect()
        }
    });

    // Deterministic reduction: seed first, then branches in branch order.
    let mut best_size = seed_size;
    let mut best_witness = seed_tuples;
    for (size, witness) in branch_results {
        if size > best_size {
            best_size = size;
            best_witness = witness;
        }
    }
    // A bare corner start covers boxes where nothing s-exceeds the corner.
    if best_size == 0 {
        best_size = 1;
        best_witness = vec![corner];
    }

    let witness = Family::new(dims.clone(), s, Mode::Increasing, best_witness)?;
    debug_assert!(witness.is_valid());
    Ok(SearchReport {
        size: best_size,
        proven_optimal: !meter.exhausted(),
        nodes_explored: meter.nodes(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        upper_bound: pigeonhole_bound(dims, s).min(u64::MAX as u128) as u64,
        witness,
    })
}

struct GrowCtx<'a> {
    dims: &'a BoxDims,
    s: u32,
    meter: &'a BudgetMeter,
    shared_best: &'a AtomicUsize,
}

struct LocalBest {
    size: usize,
    witness: Vec<Tuple>,
}

/// Coordinatewise-minimal elements of a lex-sorted candidate list. Any
/// dominating chain passes through a minimal element, so testing against the
/// minimals found so far suffices (dominators sort earlier in lex order).
fn minimal_elements(cands: &[Tuple]) -> Vec<Tuple> {
    let mut minimal: Vec<Tuple> = Vec::new();
    for t in cands {
        if !minimal.iter().any(|m| dominated(m, t)) {
            minimal.push(t.clone());
        }
    }
    minimal
}

/// Remaining-length bound at the prefix end `t`: every later tuple projects,
/// on any `r−s+1` coordinates, to a point outside the closed sub-box below
/// `t`'s projection, and those projections are pairwise distinct.
fn region_bound(dims: &BoxDims, s: u32, t: &Tuple) -> u128 {
    let r = dims.arity();
    let keep = r - (s as usize) + 1;
    // Enumerating all (r−s+1)-subsets is only worthwhile at small arity;
    // elsewhere the candidate count already prunes well.
    if r > 16 {
        return u128::MAX;
    }
    let mut best = u128::MAX;
    let mut subset: Vec<usize> = (0..keep).collect();
    loop {
        let full: u128 = subset
            .iter()
            .map(|&i| dims.side(i) as u128)
            .try_fold(1u128, u128::checked_mul)
            .unwrap_or(u128::MAX);
        let below: u128 = subset.iter().map(|&i| t.coord(i) as u128).product();
        best = best.min(full - below);
        // Next k-subset in lexicographic order.
        let mut i = keep;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if subset[i] < r - (keep - i) {
                subset[i] += 1;
                for j in i + 1..keep {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn grow_increasing(
    ctx: &GrowCtx<'_>,
    chosen: &mut Vec<Tuple>,
    cands: &[Tuple],
    local: &mut LocalBest,
) {
    if !ctx.meter.tick() {
        return;
    }
    if chosen.len() > local.size {
        local.size = chosen.len();
        local.witness = chosen.clone();
        ctx.shared_best.fetch_max(chosen.len(), Ordering::Relaxed);
    }
    if cands.is_empty() {
        return;
    }
    let hint = ctx.shared_best.load(Ordering::Relaxed).max(local.size);
    let last = chosen.last().expect("prefix is never empty");
    let remaining = (cands.len() as u128).min(region_bound(ctx.dims, ctx.s, last));
    if chosen.len() as u128 + remaining <= hint as u128 {
        return;
    }
    for branch in minimal_elements(cands) {
        let child: Vec<Tuple> = cands
            .iter()
            .filter(|t| less_s(&branch, t, ctx.s))
            .cloned()
            .collect();
        chosen.push(branch);
        grow_increasing(ctx, chosen, &child, local);
        chosen.pop();
    }
}

// ---------------------------------------------------------------------------
// Largest s-comparable set (maximum clique)
// ---------------------------------------------------------------------------

/// Largest s-comparable subset of the box, by exact maximum-clique search on
/// the comparability graph; single-threaded. See
/// [`max_comparable_with_threads`].
pub fn max_comparable(
    dims: &BoxDims,
    s: u32,
    budget: &Budget,
) -> Result<SearchReport, SearchError> {
    max_comparable_with_threads(dims, s, budget, 1)
}

/// Bit-set over the box's tuple universe (at most [`CLIQUE_SPACE_CAP`] bits).
#[derive(Clone, PartialEq, Eq, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn test(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersect(&mut self, other: &Bits) {
        for (w, o) in self.0.iter_mut().zip(&other.0) {
            *w &= o;
        }
    }

    fn subtract(&mut self, other: &Bits) {
        for (w, o) in self.0.iter_mut().zip(&other.0) {
            *w &= !o;
        }
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn disjoint(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a & b == 0)
    }

    fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

struct CliqueCtx<'a> {
    adj: &'a [Bits],
    /// `floors[i]` = vertices whose i-th coordinate equals 1.
    floors: &'a [Bits],
    meter: &'a BudgetMeter,
    shared_best: &'a AtomicUsize,
}

/// Greedy clique in vertex order, used as the initial lower bound.
fn greedy_clique(n: usize, adj: &[Bits]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for v in 0..n {
        if clique.iter().all(|&u| adj[u].test(v)) {
            clique.push(v);
        }
    }
    clique
}

/// Greedy coloring of the candidate set; returns vertices with their color
/// numbers, colors ascending. A clique meets each color class at most once,
/// so `|chosen| + color(v)` bounds any completion through `v` and earlier.
fn color_sort(p: &Bits, adj: &[Bits]) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut uncolored = p.clone();
    let mut color = 0usize;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first_set() {
            avail.clear(v);
            uncolored.clear(v);
            order.push(v);
            colors.push(color);
            avail.subtract(&adj[v]);
        }
    }
    (order, colors)
}

fn expand_clique(
    ctx: &CliqueCtx<'_>,
    chosen: &mut Vec<usize>,
    p: &Bits,
    floors_missing: u64,
    local: &mut LocalBestIds,
) {
    if !ctx.meter.tick() {
        return;
    }
    if chosen.len() > local.size {
        local.size = chosen.len();
        local.witness = chosen.clone();
        ctx.shared_best.fetch_max(chosen.len(), Ordering::Relaxed);
    }
    // A maximum clique exists touching value 1 in every coordinate
    // (translate any clique down); branches that can no longer reach some
    // floor cannot carry that clique.
    let mut fm = floors_missing;
    while fm != 0 {
        let i = fm.trailing_zeros() as usize;
        fm &= fm - 1;
        if p.disjoint(&ctx.floors[i]) {
            return;
        }
    }
    if p.is_empty() {
        return;
    }
    let (order, colors) = color_sort(p, ctx.adj);
    let mut p_mut = p.clone();
    for idx in (0..order.len()).rev() {
        let v = order[idx];
        let hint = ctx.shared_best.load(Ordering::Relaxed).max(local.size);
        if chosen.len() + colors[idx] <= hint {
            return;
        }
        let mut child = p_mut.clone();
        child.intersect(&ctx.adj[v]);
        let mut child_missing = floors_missing;
        let mut fm = floors_missing;
        while fm != 0 {
            let i = fm.trailing_zeros() as usize;
            fm &= fm - 1;
            if ctx.floors[i].test(v) {
                child_missing &= !(1u64 << i);
            }
        }
        chosen.push(v);
        expand_clique(ctx, chosen, &child, child_missing, local);
        chosen.pop();
        p_mut.clear(v);
    }
}

struct LocalBestIds {
    size: usize,
    witness: Vec<usize>,
}

/// Largest s-comparable subset of the box.
///
/// Exact maximum clique on the comparability graph of all box tuples, with
/// greedy-coloring bounds. Two symmetry facts cut the search: some maximum
/// clique touches coordinate value 1 on every axis (translate any clique
/// down), so (a) only vertices with first coordinate 1 start a clique — the
/// lex-least element of a floor-touching clique minimizes the first
/// coordinate — and (b) branches that can no longer reach a floor are cut.
pub fn max_comparable_with_threads(
    dims: &BoxDims,
    s: u32,
    budget: &Budget,
    threads: usize,
) -> Result<SearchReport, SearchError> {
    check_s(dims, s)?;
    let volume = dims.volume();
    if volume > CLIQUE_SPACE_CAP {
        return Err(SearchError::SpaceTooLarge {
            volume,
            cap: CLIQUE_SPACE_CAP,
        });
    }
    let start = Instant::now();
    let meter = BudgetMeter::new(budget);
    let r = dims.arity();
    if r > 64 {
        return Err(SearchError::BadParameter(format!(
            "arity {r} exceeds the floor-mask capacity of 64"
        )));
    }
    let vertices = dims.enumerate();
    let n = vertices.len();
    let words = n.div_ceil(64);
    let mut adj = vec![Bits::empty(words); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if comparable_pair(&vertices[i], &vertices[j], s) {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    let mut floors = vec![Bits::empty(words); r];
    for (v, t) in vertices.iter().enumerate() {
        for (i, floor) in floors.iter_mut().enumerate() {
            if t.coord(i) == 1 {
                floor.set(v);
            }
        }
    }

    let seed = greedy_clique(n, &adj);
    let shared_best = AtomicUsize::new(seed.len());
    let ctx = CliqueCtx {
        adj: &adj,
        floors: &floors,
        meter: &meter,
        shared_best: &shared_best,
    };
    let all_missing: u64 = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };

    // Only lex-least clique elements with first coordinate 1 need starting.
    let starts: Vec<usize> = (0..n).filter(|&v| vertices[v].coord(0) == 1).collect();
    let explore = |&v: &usize| -> (usize, Vec<usize>) {
        let mut chosen = vec![v];
        let mut p = Bits::empty(words);
        for w in (v + 1)..n {
            if adj[v].test(w) {
                p.set(w);
            }
        }
        let mut missing = all_missing;
        for (i, floor) in floors.iter().enumerate() {
            if floor.test(v) {
                missing &= !(1u64 << i);
            }
        }
        let mut local = LocalBestIds {
            size: 0,
            witness: Vec::new(),
        };
        expand_clique(&ctx, &mut chosen, &p, missing, &mut local);
        (local.size, local.witness)
    };
    let results: Vec<(usize, Vec<usize>)> = run_with_threads(threads, || {
        if threads <= 1 {
            starts.iter().map(explore).collect()
        } else {
            starts.par_iter().map(explore).collect()
        }
    });

    let mut best_size = seed.len();
    let mut best_ids = seed;
    for (size, ids) in results {
        if size > best_size {
            best_size = size;
            best_ids = ids;
        }
    }
    best_ids.sort_unstable();
    let tuples: Vec<Tuple> = best_ids.iter().map(|&v| vertices[v].clone()).collect();
    let witness = Family::new(dims.clone(), s, Mode::Comparable, tuples)?;
    debug_assert!(witness.is_valid());
    Ok(SearchReport {
        size: best_size,
        proven_optimal: !meter.exhausted(),
        nodes_explored: meter.nodes(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        upper_bound: pigeonhole_bound(dims, s).min(u64::MAX as u128) as u64,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Skew-triple-free subsets of the square grid
// ---------------------------------------------------------------------------

/// Whether two cells are weakly comparable: one is coordinatewise at most
/// the other (ties allowed).
pub fn weakly_comparable(a: &Tuple, b: &Tuple) -> bool {
    dominated(a, b) || dominated(b, a)
}

/// Searches `cells` for a skew triple: indices `(i, j, k)` whose cells
/// `x, y, z` satisfy `x <₂ y` (strictly less in both coordinates) while `z`
/// is weakly incomparable to both. Returns the first such triple in
/// lexicographic index order.
pub fn skew_triple_witness(cells: &[Tuple]) -> Option<[usize; 3]> {
    let skew = |a: &Tuple, b: &Tuple| !weakly_comparable(a, b);
    for i in 0..cells.len() {
        for j in 0..cells.len() {
            if i == j || !less_s(&cells[i], &cells[j], 2) {
                continue;
            }
            for k in 0..cells.len() {
                if k != i && k != j && skew(&cells[k], &cells[i]) && skew(&cells[k], &cells[j]) {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Largest subset of the `n × n` grid containing no skew triple, by
/// exhaustive branch-and-bound over cells in lexicographic order.
///
/// The witness is encoded as an arity-2 family with `s = 1` (any two
/// distinct cells are 1-comparable). Sides above [`SKEW_GRID_CAP`] are
/// rejected: cell sets are tracked in a 64-bit mask and larger instances are
/// out of exact-search range.
pub fn skew_triple_max(n: Coord, budget: &Budget) -> Result<SearchReport, SearchError> {
    if !(1..=SKEW_GRID_CAP).contains(&n) {
        return Err(SearchError::BadParameter(format!(
            "grid side must be in 1..={SKEW_GRID_CAP}, got {n}"
        )));
    }
    let start = Instant::now();
    let meter = BudgetMeter::new(budget);
    let cells: Vec<Tuple> = (1..=n)
        .flat_map(|a| (1..=n).map(move |b| Tuple::from([a, b])))
        .collect();
    let m = cells.len();
    // strict[v]: cells forming a strict pair with v (either direction);
    // skew[v]: cells weakly incomparable to v. Both relations are symmetric.
    let mut strict = vec![0u64; m];
    let mut skew = vec![0u64; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            if less_s(&cells[i], &cells[j], 2) || less_s(&cells[j], &cells[i], 2) {
                strict[i] |= 1 << j;
            }
            if !weakly_comparable(&cells[i], &cells[j]) {
                skew[i] |= 1 << j;
            }
        }
    }

    // Adding cell c to the set S creates a skew triple iff
    //  (a) some strict pair inside S ∩ skew(c) exists (c is the skew cell), or
    //  (b) some a ∈ S ∩ strict(c) has a common skew cell with c inside S.
    let conflicts = |c: usize, set: u64| -> bool {
        let t = set & skew[c];
        let mut rest = t;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if strict[a] & t != 0 {
                return true;
            }
        }
        let mut pairs = set & strict[c];
        while pairs != 0 {
            let a = pairs.trailing_zeros() as usize;
            pairs &= pairs - 1;
            if skew[a] & skew[c] & set != 0 {
                return true;
            }
        }
        false
    };

    // Seed: the sharp boundary construction (all of the grid for n = 2).
    let seed_family = crate::construct::prek_sharp(n.max(2))
        .map_err(|e| SearchError::BadParameter(e.to_string()))?;
    let mut seed_mask = 0u64;
    if n >= 2 {
        for t in seed_family.tuples() {
            seed_mask |= 1 << ((t.coord(0) - 1) as usize * n as usize + (t.coord(1) - 1) as usize);
        }
    } else {
        seed_mask = 1;
    }
    debug_assert!({
        let seed_cells: Vec<Tuple> = (0..m)
            .filter(|&i| seed_mask >> i & 1 == 1)
            .map(|i| cells[i].clone())
            .collect();
        skew_triple_witness(&seed_cells).is_none()
    });

    struct SkewCtx<'a> {
        conflicts: &'a dyn Fn(usize, u64) -> bool,
        meter: &'a BudgetMeter,
    }
    fn rec(ctx: &SkewCtx<'_>, set: u64, count: usize, cand: u64, best: &mut (usize, u64)) {
        if !ctx.meter.tick() {
            return;
        }
        if count > best.0 {
            *best = (count, set);
        }
        let mut cand = cand;
        while cand != 0 {
            if count + cand.count_ones() as usize <= best.0 {
                return;
            }
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let child_set = set | 1 << c;
            // Filter the remaining candidates against the grown set.
            let mut child_cand = 0u64;
            let mut rest = cand;
            while rest != 0 {
                let d = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if !(ctx.conflicts)(d, child_set) {
                    child_cand |= 1 << d;
                }
            }
            rec(ctx, child_set, count + 1, child_cand, best);
        }
    }

    let ctx = SkewCtx {
        conflicts: &conflicts,
        meter: &meter,
    };
    let mut best = (seed_mask.count_ones() as usize, seed_mask);
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    rec(&ctx, 0, 0, full, &mut best);

    let chosen: Vec<Tuple> = (0..m)
        .filter(|&i| best.1 >> i & 1 == 1)
        .map(|i| cells[i].clone())
        .collect();
    debug_assert!(skew_triple_witness(&chosen).is_none());
    let witness = Family::new(BoxDims::new(vec![n, n])?, 1, Mode::Comparable, chosen)?;
    Ok(SearchReport {
        size: best.0,
        proven_optimal: !meter.exhausted(),
        nodes_explored: meter.nodes(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        upper_bound: (n as u64) * (n as u64),
        witness,
    })
}

// ---------------------------------------------------------------------------
// Randomized growth
// ---------------------------------------------------------------------------

/// Tie-breaking rule for [`random_grow`]'s choice among the minimal
/// candidate tuples at each step.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthPolicy {
    /// Uniform choice among all minimal candidates.
    UniformMinimal,
    /// Minimize the sum of squared coordinates, uniform among ties.
    MinSumSquares,
    /// Maximize the smallest coordinate, uniform among ties.
    MaxMinCoordinate,
}

impl fmt::Display for GrowthPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthPolicy::UniformMinimal => write!(f, "uniform-minimal"),
            GrowthPolicy::MinSumSquares => write!(f, "min-sum-squares"),
            GrowthPolicy::MaxMinCoordinate => write!(f, "max-min-coordinate"),
        }
    }
}

impl FromStr for GrowthPolicy {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text {
            "uniform-minimal" => Ok(GrowthPolicy::UniformMinimal),
            "min-sum-squares" => Ok(GrowthPolicy::MinSumSquares),
            "max-min-coordinate" => Ok(GrowthPolicy::MaxMinCoordinate),
            other => Err(format!("unknown growth policy {other:?}")),
        }
    }
}

/// Grows a maximal s-increasing sequence of triples one tuple at a time.
///
/// At each step the candidate set holds every box tuple s-above all chosen
/// ones; the next tuple is drawn from the coordinatewise-minimal candidates
/// by the policy (ties resolved by a seeded uniform draw). The result is
/// maximal: no box tuple extends it. Deterministic for a fixed box, policy,
/// and seed; the generator is ChaCha8 keyed by the 64-bit seed
/// ([`RNG_ALGORITHM`]).
pub fn random_grow(
    dims: &BoxDims,
    s: u32,
    policy: GrowthPolicy,
    seed: u64,
) -> Result<Family, SearchError> {
    if dims.arity() != 3 {
        return Err(SearchError::BadParameter(format!(
            "random growth is defined for arity 3, got {}",
            dims.arity()
        )));
    }
    check_s(dims, s)?;
    let volume = dims.volume();
    if volume > INCREASING_SPACE_CAP {
        return Err(SearchError::SpaceTooLarge {
            volume,
            cap: INCREASING_SPACE_CAP,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cands = dims.enumerate();
    let mut chosen: Vec<Tuple> = Vec::new();
    while !cands.is_empty() {
        let minimal = minimal_elements(&cands);
        let pool: Vec<&Tuple> = match policy {
            GrowthPolicy::UniformMinimal => minimal.iter().collect(),
            GrowthPolicy::MinSumSquares => {
                let key = |t: &Tuple| -> u64 {
                    t.coords().iter().map(|&c| (c as u64) * (c as u64)).sum()
                };
                let bestk = minimal.iter().map(&key).min().expect("non-empty");
                minimal.iter().filter(|t| key(t) == bestk).collect()
            }
            GrowthPolicy::MaxMinCoordinate => {
                let key = |t: &Tuple| -> Coord { *t.coords().iter().min().expect("arity 3") };
                let bestk = minimal.iter().map(&key).max().expect("non-empty");
                minimal.iter().filter(|t| key(t) == bestk).collect()
            }
        };
        let pick = pool[rng.gen_range(0..pool.len())].clone();
        cands.retain(|t| less_s(&pick, t, s));
        chosen.push(pick);
    }
    let family = Family::new(dims.clone(), s, Mode::Increasing, chosen)?;
    debug_assert!(family.is_valid());
    Ok(family)
}

// ---------------------------------------------------------------------------
// Random comparable subsample
// ---------------------------------------------------------------------------

/// Draws `sample_size` uniform tuples from `[n]^r` and prunes to an
/// s-comparable subfamily with `s = ⌊beta · r⌋`.
///
/// Coordinates are drawn one tuple at a time, coordinate index ascending,
/// from ChaCha8 keyed by the seed ([`RNG_ALGORITHM`]). The pruning loop
/// repeatedly removes the tuple with the most incomparable partners
/// (earliest index on ties) until no incomparable pair remains — duplicates
/// count as incomparable, so the survivors always validate. Survivors keep
/// their draw order.
pub fn comparable_sample(
    n: Coord,
    r: u32,
    beta: Ratio<u32>,
    sample_size: usize,
    seed: u64,
) -> Result<Family, SearchError> {
    let dims = BoxDims::new(vec![n; r as usize])?;
    let s_floor = (*beta.numer() as u64 * r as u64) / *beta.denom() as u64;
    if s_floor < 1 || s_floor > r as u64 {
        return Err(SearchError::BadParameter(format!(
            "floor(beta * r) = {s_floor} is outside 1..={r}"
        )));
    }
    let s = s_floor as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Tuple> = (0..sample_size)
        .map(|_| Tuple::new((0..r).map(|_| rng.gen_range(1..=n)).collect()))
        .collect();

    // Incomparability adjacency over the sample.
    let k = draws.len();
    let mut incomp: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in (i + 1)..k {
            if !comparable_pair(&draws[i], &draws[j], s) {
                incomp[i].push(j);
                incomp[j].push(i);
            }
        }
    }
    let mut alive = vec![true; k];
    let mut degree: Vec<usize> = incomp.iter().map(Vec::len).collect();
    loop {
        let worst = (0..k)
            .filter(|&i| alive[i] && degree[i] > 0)
            .max_by(|&a, &b| degree[a].cmp(&degree[b]).then(b.cmp(&a)));
        let Some(victim) = worst else { break };
        alive[victim] = false;
        for &j in &incomp[victim] {
            if alive[j] {
                degree[j] -= 1;
            }
        }
    }
    let survivors: Vec<Tuple> = (0..k)
        .filter(|&i| alive[i])
        .map(|i| draws[i].clone())
        .collect();
    let family = Family::new(dims, s, Mode::Comparable, survivors)?;
    debug_assert!(family.is_valid());
    Ok(family)
}
