//! Tripartite hypergraph encodings of triple families, (u,v)-freeness
//! checking, and the solution-free-set pipeline that links comparable
//! families to labelled bipartite graphs and label-pattern-free paths.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::HypergraphError;
use crate::family::Family;
use crate::grid::{BipartiteEdge, LabelledBipartite};

/// Cap on edge count for the subset-enumeration freeness check.
const MAX_FREENESS_EDGES: usize = 40;
/// Cap on subset size for the freeness check.
const MAX_FREENESS_SUBSET: u32 = 6;
/// Longest supported label pattern.
const MAX_PATTERN_LEN: usize = 6;

// ---------------------------------------------------------------------------
// Tripartite hypergraphs
// ---------------------------------------------------------------------------

/// A tripartite 3-uniform hypergraph: one vertex part per coordinate, one
/// hyperedge per stored triple. Edges are distinct; linearity (no two edges
/// sharing two vertices) is a property to query, not an invariant.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TripartiteHypergraph {
    part_sizes: [u32; 3],
    edges: Vec<[u32; 3]>,
}

impl TripartiteHypergraph {
    /// Validates coordinate ranges and edge distinctness.
    pub fn new(part_sizes: [u32; 3], edges: Vec<[u32; 3]>) -> Result<Self, HypergraphError> {
        if part_sizes.contains(&0) {
            return Err(HypergraphError::EmptyGround);
        }
        for e in &edges {
            for part in 0..3 {
                if e[part] < 1 || e[part] > part_sizes[part] {
                    return Err(HypergraphError::ElementOutOfRange {
                        element: e[part],
                        bound: part_sizes[part],
                    });
                }
            }
        }
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if edges[i] == edges[j] {
                    return Err(HypergraphError::DuplicateEdge {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(TripartiteHypergraph { part_sizes, edges })
    }

    pub fn part_sizes(&self) -> [u32; 3] {
        self.part_sizes
    }

    pub fn edges(&self) -> &[[u32; 3]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The first pair of edges sharing at least two vertices, if any.
    pub fn linearity_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.edges.len() {
            for j in (i + 1)..self.edges.len() {
                let shared = (0..3)
                    .filter(|&p| self.edges[i][p] == self.edges[j][p])
                    .count();
                if shared >= 2 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether no two edges share two or more vertices.
    pub fn is_linear(&self) -> bool {
        self.linearity_witness().is_none()
    }

    pub fn to_json(&self) -> Result<String, HypergraphError> {
        serde_json::to_string_pretty(self).map_err(|e| HypergraphError::BadParameter(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, HypergraphError> {
        let raw: TripartiteHypergraph =
            serde_json::from_str(text).map_err(|e| HypergraphError::BadParameter(e.to_string()))?;
        TripartiteHypergraph::new(raw.part_sizes, raw.edges)
    }
}

/// Encodes an arity-3 family as a tripartite hypergraph, one hyperedge per
/// triple. 2-comparable inputs always produce linear hypergraphs (two
/// triples agreeing in two coordinates cannot differ strictly in two).
pub fn to_hypergraph(t: &Family) -> Result<TripartiteHypergraph, HypergraphError> {
    if t.arity() != 3 {
        return Err(HypergraphError::NotArity3 { arity: t.arity() });
    }
    let sides = t.dims().sides();
    TripartiteHypergraph::new(
        [sides[0], sides[1], sides[2]],
        t.tuples()
            .iter()
            .map(|u| [u.coord(0), u.coord(1), u.coord(2)])
            .collect(),
    )
}

/// Pair and triangle counts of the shadow graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShadowCounts {
    /// Number of distinct vertex pairs covered by hyperedges.
    pub edge_count: usize,
    /// Number of triangles in the shadow graph.
    pub triangle_count: usize,
}

/// Projects a linear hypergraph to its shadow graph — every pair of
/// vertices covered by a hyperedge — and counts its triangles exhaustively.
/// For linear inputs each hyperedge is a triangle and (when the family is
/// 2-comparable) these are the only ones, so the triangle count equals the
/// edge count of the hypergraph.
pub fn shadow_triangles(h: &TripartiteHypergraph) -> Result<ShadowCounts, HypergraphError> {
    if let Some((first, second)) = h.linearity_witness() {
        return Err(HypergraphError::NotLinear { first, second });
    }
    let mut xy = BTreeSet::new();
    let mut xz = BTreeSet::new();
    let mut yz = BTreeSet::new();
    for e in h.edges() {
        xy.insert((e[0], e[1]));
        xz.insert((e[0], e[2]));
        yz.insert((e[1], e[2]));
    }
    let mut triangles = 0usize;
    for &(x, y) in &xy {
        for z in 1..=h.part_sizes()[2] {
            if xz.contains(&(x, z)) && yz.contains(&(y, z)) {
                triangles += 1;
            }
        }
    }
    Ok(ShadowCounts {
        edge_count: xy.len() + xz.len() + yz.len(),
        triangle_count: triangles,
    })
}

// ---------------------------------------------------------------------------
// (u,v)-freeness
// ---------------------------------------------------------------------------

/// Verdict of a freeness check, with the offending edge subset when the
/// property fails (the lexicographically first one).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FreenessReport {
    pub free: bool,
    pub witness: Option<Vec<usize>>,
}

/// Whether every `v`-subset of hyperedges spans at least `u + 1` distinct
/// vertices (counted across all three parts). Subsets are enumerated in
/// lexicographic index order with a span-based prune (the span never shrinks
/// as edges are added); the witness, when present, is the lexicographically
/// first violating subset. Inputs beyond the enumeration budget
/// (more than 40 edges or `v` > 6) are rejected.
pub fn is_uv_free(
    h: &TripartiteHypergraph,
    u: u32,
    v: u32,
) -> Result<FreenessReport, HypergraphError> {
    is_uv_free_with_threads(h, u, v, 1)
}

/// [`is_uv_free`] with top-level subsets partitioned by leading edge across
/// a thread pool. The verdict and witness are independent of thread count.
pub fn is_uv_free_with_threads(
    h: &TripartiteHypergraph,
    u: u32,
    v: u32,
    threads: usize,
) -> Result<FreenessReport, HypergraphError> {
    if v == 0 {
        return Err(HypergraphError::BadParameter(
            "subset size v must be at least 1".into(),
        ));
    }
    if v > MAX_FREENESS_SUBSET {
        return Err(HypergraphError::BadParameter(format!(
            "subset size v = {v} exceeds the enumeration budget of {MAX_FREENESS_SUBSET}"
        )));
    }
    if h.edge_count() > MAX_FREENESS_EDGES {
        return Err(HypergraphError::BadParameter(format!(
            "{} edges exceed the enumeration budget of {MAX_FREENESS_EDGES}",
            h.edge_count()
        )));
    }
    let v = v as usize;
    let run = |lead: usize| -> Option<Vec<usize>> {
        let mut span = SpanCounter::new(h.part_sizes());
        span.add(&h.edges()[lead]);
        let mut chosen = vec![lead];
        let found = violating_subset(h, u as usize, v, lead + 1, &mut chosen, &mut span);
        if found {
            Some(chosen)
        } else {
            None
        }
    };
    let leads: Vec<usize> = if h.edge_count() >= v {
        (0..=h.edge_count() - v).collect()
    } else {
        Vec::new()
    };
    let results: Vec<Option<Vec<usize>>> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| HypergraphError::BadParameter(e.to_string()))?;
        pool.install(|| {
            use rayon::prelude::*;
            leads.par_iter().map(|&lead| run(lead)).collect()
        })
    } else {
        leads.iter().map(|&lead| run(lead)).collect()
    };
    // Any subset led by a smaller index precedes all subsets led by a larger
    // one, so the first per-lead hit is the global lexicographic first.
    let witness = results.into_iter().flatten().next();
    Ok(FreenessReport {
        free: witness.is_none(),
        witness,
    })
}

/// Incremental distinct-vertex counter over the three parts, tracking the
/// multiplicity of every vertex among the chosen edges.
struct SpanCounter {
    offsets: [usize; 3],
    hits: Vec<u32>,
    count: usize,
}

impl SpanCounter {
    fn new(part_sizes: [u32; 3]) -> Self {
        let offsets = [
            0,
            part_sizes[0] as usize,
            (part_sizes[0] + part_sizes[1]) as usize,
        ];
        let total = (part_sizes[0] + part_sizes[1] + part_sizes[2]) as usize;
        SpanCounter {
            offsets,
            hits: vec![0; total],
            count: 0,
        }
    }

    fn add(&mut self, edge: &[u32; 3]) {
        let offsets = self.offsets;
        for (offset, &vertex) in offsets.iter().zip(edge) {
            let id = offset + (vertex - 1) as usize;
            self.hits[id] += 1;
            if self.hits[id] == 1 {
                self.count += 1;
            }
        }
    }

    fn remove(&mut self, edge: &[u32; 3]) {
        let offsets = self.offsets;
        for (offset, &vertex) in offsets.iter().zip(edge) {
            let id = offset + (vertex - 1) as usize;
            self.hits[id] -= 1;
            if self.hits[id] == 0 {
                self.count -= 1;
            }
        }
    }

    fn count(&self) -> usize {
        self.count
    }
}

fn violating_subset(
    h: &TripartiteHypergraph,
    u: usize,
    v: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    span: &mut SpanCounter,
) -> bool {
    if span.count() > u {
        return false;
    }
    if chosen.len() == v {
        return true;
    }
    let remaining = v - chosen.len();
    for next in from..h.edge_count() {
        if h.edge_count() - next < remaining {
            break;
        }
        chosen.push(next);
        span.add(&h.edges()[next]);
        if violating_subset(h, u, v, next + 1, chosen, span) {
            return true;
        }
        span.remove(&h.edges()[next]);
        chosen.pop();
    }
    false
}

// ---------------------------------------------------------------------------
// Solution-free sets
// ---------------------------------------------------------------------------

/// Verdict of the solution-free check: `witness` is a quadruple
/// `(x, y, z, w)` with `2x + 2y = z + 3w` and not all entries equal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SolutionReport {
    pub free: bool,
    pub witness: Option<[u32; 4]>,
}

/// Whether every solution of `2x + 2y = z + 3w` with all four values in the
/// set is trivial (`x = y = z = w`). Enumerates `(z, w)` pairs and finds
/// `x + y` matches by a two-pointer sweep over the sorted set; the witness
/// is deterministic (first in that enumeration order, with `x ≤ y`).
pub fn ruzsa_free(a: &[u32]) -> SolutionReport {
    let sorted: Vec<u32> = {
        let mut v: Vec<u32> = a.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    for &z in &sorted {
        for &w in &sorted {
            let sum = z as u64 + 3 * w as u64;
            if !sum.is_multiple_of(2) {
                continue;
            }
            let target = sum / 2;
            let mut lo = 0usize;
            let mut hi = sorted.len().wrapping_sub(1);
            while lo < sorted.len() && lo <= hi {
                let pair = sorted[lo] as u64 + sorted[hi] as u64;
                if pair < target {
                    lo += 1;
                } else if pair > target {
                    if hi == 0 {
                        break;
                    }
                    hi -= 1;
                } else {
                    let (x, y) = (sorted[lo], sorted[hi]);
                    if !(x == y && y == z && z == w) {
                        return SolutionReport {
                            free: false,
                            witness: Some([x, y, z, w]),
                        };
                    }
                    lo += 1;
                    if hi == 0 {
                        break;
                    }
                    hi -= 1;
                }
            }
        }
    }
    SolutionReport {
        free: true,
        witness: None,
    }
}

/// Greedily builds a solution-free subset of `1..=n`: each value is kept
/// exactly when adding it preserves solution-freeness. Deterministic.
pub fn ruzsa_greedy(n: u32) -> Vec<u32> {
    let mut picked: Vec<u32> = Vec::new();
    for k in 1..=n {
        picked.push(k);
        if !ruzsa_free(&picked).free {
            picked.pop();
        }
    }
    picked
}

/// The labelled bipartite graph of a set on the ground range `[n]`: edges
/// `(x, y)` for `x > y` in `[n]` with `x + y` in the set, labelled `x − y`.
/// Labels are determined by the endpoints, so the induced triple system is
/// linear. Set members may be any achievable sum, i.e. at most `2n − 1`.
pub fn ruzsa_graph(a: &[u32], n: u32) -> Result<LabelledBipartite, HypergraphError> {
    if n == 0 {
        return Err(HypergraphError::EmptyGround);
    }
    let members: BTreeSet<u32> = a.iter().copied().collect();
    let bound = 2 * n - 1;
    if let Some(&bad) = members.iter().find(|&&m| m < 1 || m > bound) {
        return Err(HypergraphError::ElementOutOfRange {
            element: bad,
            bound,
        });
    }
    let mut edges = Vec::new();
    for x in 2..=n {
        for y in 1..x {
            if members.contains(&(x + y)) {
                edges.push(BipartiteEdge {
                    left: x,
                    right: y,
                    label: x - y,
                });
            }
        }
    }
    Ok(LabelledBipartite::new(n, n, edges).expect("edges are in range by construction"))
}

// ---------------------------------------------------------------------------
// Label-pattern-free paths
// ---------------------------------------------------------------------------

/// Verdict of a pattern search: `witness` is an offending simple path's
/// edges in traversal order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PatternReport {
    pub free: bool,
    pub witness: Option<Vec<BipartiteEdge>>,
}

/// Whether the graph has no simple path whose edge labels follow the
/// pattern: positions with the same pattern letter must carry equal labels,
/// positions with distinct letters must carry distinct labels. Patterns are
/// words of 1 to 6 ASCII letters (`"aa"`, `"aba"`, `"abcab"`, …).
pub fn pattern_free(
    g: &LabelledBipartite,
    pattern: &str,
) -> Result<PatternReport, HypergraphError> {
    if pattern.is_empty()
        || pattern.len() > MAX_PATTERN_LEN
        || !pattern.chars().all(|c| c.is_ascii_lowercase())
    {
        return Err(HypergraphError::BadParameter(format!(
            "pattern must be 1..={MAX_PATTERN_LEN} lowercase letters, got {pattern:?}"
        )));
    }
    let letters: Vec<usize> = {
        // Compress letters to dense indices in order of first appearance.
        let mut seen: Vec<char> = Vec::new();
        pattern
            .chars()
            .map(|c| {
                if let Some(i) = seen.iter().position(|&s| s == c) {
                    i
                } else {
                    seen.push(c);
                    seen.len() - 1
                }
            })
            .collect()
    };

    // Vertices: left side first, then right side, both ascending; edges from
    // each vertex in stored order. This fixes the witness deterministically.
    let mut vertices: Vec<(bool, u32)> = Vec::new();
    let mut adjacency: Vec<Vec<(usize, usize)>> = Vec::new();
    let vertex_id = |vertices: &mut Vec<(bool, u32)>,
                     adjacency: &mut Vec<Vec<(usize, usize)>>,
                     key: (bool, u32)| {
        if let Some(i) = vertices.iter().position(|&k| k == key) {
            i
        } else {
            vertices.push(key);
            adjacency.push(Vec::new());
            vertices.len() - 1
        }
    };
    let mut left_seen: Vec<u32> = g.edges().iter().map(|e| e.left).collect();
    left_seen.sort_unstable();
    left_seen.dedup();
    for &l in &left_seen {
        vertex_id(&mut vertices, &mut adjacency, (false, l));
    }
    let mut right_seen: Vec<u32> = g.edges().iter().map(|e| e.right).collect();
    right_seen.sort_unstable();
    right_seen.dedup();
    for &r in &right_seen {
        vertex_id(&mut vertices, &mut adjacency, (true, r));
    }
    for (idx, e) in g.edges().iter().enumerate() {
        let u = vertex_id(&mut vertices, &mut adjacency, (false, e.left));
        let v = vertex_id(&mut vertices, &mut adjacency, (true, e.right));
        adjacency[u].push((v, idx));
        adjacency[v].push((u, idx));
    }

    let mut visited = vec![false; vertices.len()];
    let mut bindings: Vec<Option<u32>> = vec![None; letters.iter().max().map_or(0, |m| m + 1)];
    let mut path: Vec<usize> = Vec::new();
    for start in 0..vertices.len() {
        visited[start] = true;
        if pattern_dfs(
            g,
            &adjacency,
            &letters,
            start,
            &mut visited,
            &mut bindings,
            &mut path,
        ) {
            let witness = path.iter().map(|&i| g.edges()[i]).collect();
            return Ok(PatternReport {
                free: false,
                witness: Some(witness),
            });
        }
        visited[start] = false;
    }
    Ok(PatternReport {
        free: true,
        witness: None,
    })
}

fn pattern_dfs(
    g: &LabelledBipartite,
    adjacency: &[Vec<(usize, usize)>],
    letters: &[usize],
    current: usize,
    visited: &mut [bool],
    bindings: &mut [Option<u32>],
    path: &mut Vec<usize>,
) -> bool {
    if path.len() == letters.len() {
        return true;
    }
    let letter = letters[path.len()];
    for &(next, edge) in &adjacency[current] {
        if visited[next] {
            continue;
        }
        let label = g.edges()[edge].label;
        let bound = bindings[letter];
        let consistent = match bound {
            Some(l) => l == label,
            // A fresh letter must take a label distinct from all others.
            None => bindings.iter().flatten().all(|&l| l != label),
        };
        if !consistent {
            continue;
        }
        visited[next] = true;
        if bound.is_none() {
            bindings[letter] = Some(label);
        }
        path.push(edge);
        if pattern_dfs(g, adjacency, letters, next, visited, bindings, path) {
            return true;
        }
        path.pop();
        if bound.is_none() {
            bindings[letter] = None;
        }
        visited[next] = false;
    }
    false
}

// ---------------------------------------------------------------------------
// Exhaustive small-case sweep
// ---------------------------------------------------------------------------

/// Tally of the exhaustive check that every labelled bipartite graph with
/// five edges on at most nine combined vertices and labels contains an
/// `aa`, `aba`, or `abcab` path.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    /// Surjective instances with left + right + label counts ≤ 9.
    pub instances: usize,
    /// The subset of instances using exactly 9 vertices and labels.
    pub span_nine_instances: usize,
    /// Instances with no qualifying path (expected empty).
    pub failures: Vec<LabelledBipartite>,
}

/// Enumerates every five-edge labelled bipartite graph on left size `p`,
/// right size `q`, and label set `[l]` with `p + q + l ≤ 9`, all three used
/// surjectively, and records which lack an `aa`, `aba`, and `abcab` path.
/// Counts are over concrete numberings (no isomorphism reduction), so every
/// isomorphism class is covered.
pub fn five_edge_pattern_sweep() -> SweepReport {
    let mut report = SweepReport {
        instances: 0,
        span_nine_instances: 0,
        failures: Vec::new(),
    };
    for p in 1..=5u32 {
        for q in 1..=5u32 {
            for l in 1..=5u32 {
                if p + q + l > 9 || p * q < 5 {
                    continue;
                }
                sweep_shape(p, q, l, &mut report);
            }
        }
    }
    report
}

fn sweep_shape(p: u32, q: u32, l: u32, report: &mut SweepReport) {
    let cells: Vec<(u32, u32)> = (1..=p).flat_map(|u| (1..=q).map(move |v| (u, v))).collect();
    // All 5-subsets of cells via ascending index recursion.
    fn rec(
        cells: &[(u32, u32)],
        from: usize,
        chosen: &mut Vec<usize>,
        p: u32,
        q: u32,
        l: u32,
        report: &mut SweepReport,
    ) {
        if chosen.len() == 5 {
            sweep_labelled(cells, chosen, p, q, l, report);
            return;
        }
        let need = 5 - chosen.len();
        for i in from..cells.len() {
            if cells.len() - i < need {
                break;
            }
            chosen.push(i);
            rec(cells, i + 1, chosen, p, q, l, report);
            chosen.pop();
        }
    }
    let mut chosen: Vec<usize> = Vec::new();
    rec(&cells, 0, &mut chosen, p, q, l, report);
}

fn sweep_labelled(
    cells: &[(u32, u32)],
    chosen: &[usize],
    p: u32,
    q: u32,
    l: u32,
    report: &mut SweepReport,
) {
    // Vertex surjectivity depends only on the cell choice.
    let mut left_mask = 0u32;
    let mut right_mask = 0u32;
    for &i in chosen {
        left_mask |= 1 << cells[i].0;
        right_mask |= 1 << cells[i].1;
    }
    if left_mask.count_ones() < p || right_mask.count_ones() < q {
        return;
    }
    let assignments = (l as usize).pow(5);
    for code in 0..assignments {
        let mut labels = [0u32; 5];
        let mut rest = code;
        let mut label_mask = 0u32;
        for slot in &mut labels {
            *slot = (rest % l as usize) as u32 + 1;
            rest /= l as usize;
            label_mask |= 1 << *slot;
        }
        if label_mask.count_ones() < l {
            continue;
        }
        report.instances += 1;
        if p + q + l == 9 {
            report.span_nine_instances += 1;
        }
        let edges: Vec<BipartiteEdge> = chosen
            .iter()
            .zip(labels)
            .map(|(&i, label)| BipartiteEdge {
                left: cells[i].0,
                right: cells[i].1,
                label,
            })
            .collect();
        let g = LabelledBipartite::new(p, q, edges).expect("cells are in range");
        let has_path = ["aa", "aba", "abcab"].iter().any(|pat| {
            !pattern_free(&g, pat)
                .expect("fixed patterns are valid")
                .free
        });
        if !has_path {
            report.failures.push(g);
        }
    }
}
