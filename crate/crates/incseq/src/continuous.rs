//! The continuous cuboid relaxation: families of disjoint open cuboids in
//! the unit cube, the α-score, the one-parameter five-cuboid optimization,
//! profile-balancing shifts, and discretization back to integer tuples.
//!
//! Endpoints are exact rationals; all geometry predicates (disjointness,
//! comparability, discretization) are exact, with floating point entering
//! only through the α-powers of the scores.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CuboidError;
use crate::family::{BoxDims, Coord, Family, Mode, Tuple};

/// Exact endpoint type for the continuous objects.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Tolerance for the step-function constancy test.
const PROFILE_EPS: f64 = 1e-9;

/// Maximum grid side per axis produced by [`discretize`].
const MAX_GRID_SIDE: u32 = 4096;

// ---------------------------------------------------------------------------
// Intervals, cuboids, families
// ---------------------------------------------------------------------------

/// An open subinterval of the unit interval with rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    /// Requires `0 ≤ lo < hi ≤ 1`.
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, CuboidError> {
        if lo.is_negative() || lo >= hi || hi > Rat::one() {
            return Err(CuboidError::BadInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Whether every point of `self` lies strictly below every point of
    /// `other` (touching endpoints allowed: the intervals are open).
    pub fn entirely_below(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    /// Whether the two open intervals intersect.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }
}

/// An axis-parallel open cuboid inside the unit cube.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cuboid {
    sides: [Interval; 3],
}

impl Cuboid {
    pub fn new(x: Interval, y: Interval, z: Interval) -> Self {
        Cuboid { sides: [x, y, z] }
    }

    /// Side interval along axis 0, 1, or 2.
    pub fn side(&self, axis: usize) -> &Interval {
        &self.sides[axis]
    }

    pub fn volume(&self) -> Rat {
        self.sides
            .iter()
            .map(Interval::length)
            .fold(Rat::one(), |acc, l| acc * l)
    }

    /// `self <₂ other`: strictly below in at least two of the three axes.
    pub fn less_two(&self, other: &Cuboid) -> bool {
        self.sides
            .iter()
            .zip(&other.sides)
            .filter(|(a, b)| a.entirely_below(b))
            .count()
            >= 2
    }

    /// 2-comparability in either direction.
    pub fn comparable(&self, other: &Cuboid) -> bool {
        self.less_two(other) || other.less_two(self)
    }

    /// Whether the open cuboids intersect.
    pub fn overlaps(&self, other: &Cuboid) -> bool {
        self.sides
            .iter()
            .zip(&other.sides)
            .all(|(a, b)| a.overlaps(b))
    }
}

/// A family of pairwise-disjoint open cuboids in the unit cube.
#[derive(Clone, PartialEq, Debug)]
pub struct CuboidFamily {
    cuboids: Vec<Cuboid>,
}

impl CuboidFamily {
    /// Validates pairwise disjointness (the unit-cube constraint is carried
    /// by the interval type).
    pub fn new(cuboids: Vec<Cuboid>) -> Result<Self, CuboidError> {
        for i in 0..cuboids.len() {
            for j in (i + 1)..cuboids.len() {
                if cuboids[i].overlaps(&cuboids[j]) {
                    return Err(CuboidError::Overlap {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(CuboidFamily { cuboids })
    }

    pub fn cuboids(&self) -> &[Cuboid] {
        &self.cuboids
    }

    pub fn len(&self) -> usize {
        self.cuboids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuboids.is_empty()
    }

    pub fn to_json(&self) -> Result<String, CuboidError> {
        let raw: Vec<RawCuboid> = self
            .cuboids
            .iter()
            .map(RawCuboid::from_cuboid)
            .collect::<Result<_, _>>()?;
        serde_json::to_string_pretty(&raw).map_err(|e| CuboidError::Json(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, CuboidError> {
        let raw: Vec<RawCuboid> =
            serde_json::from_str(text).map_err(|e| CuboidError::Json(e.to_string()))?;
        let cuboids = raw
            .into_iter()
            .map(RawCuboid::into_cuboid)
            .collect::<Result<Vec<_>, _>>()?;
        CuboidFamily::new(cuboids)
    }
}

/// Serialized form: each axis is `[lo_numer, lo_denom, hi_numer, hi_denom]`.
#[derive(Serialize, Deserialize)]
struct RawCuboid {
    x: [i64; 4],
    y: [i64; 4],
    z: [i64; 4],
}

impl RawCuboid {
    fn from_cuboid(c: &Cuboid) -> Result<RawCuboid, CuboidError> {
        let enc = |iv: &Interval| -> Result<[i64; 4], CuboidError> {
            let field = |v: &BigInt| {
                v.to_i64()
                    .ok_or_else(|| CuboidError::Json(format!("endpoint component {v} exceeds i64")))
            };
            Ok([
                field(iv.lo().numer())?,
                field(iv.lo().denom())?,
                field(iv.hi().numer())?,
                field(iv.hi().denom())?,
            ])
        };
        Ok(RawCuboid {
            x: enc(c.side(0))?,
            y: enc(c.side(1))?,
            z: enc(c.side(2))?,
        })
    }

    fn into_cuboid(self) -> Result<Cuboid, CuboidError> {
        let dec = |v: [i64; 4]| -> Result<Interval, CuboidError> {
            if v[1] == 0 || v[3] == 0 {
                return Err(CuboidError::Json("zero denominator".into()));
            }
            Interval::new(rat(v[0], v[1]), rat(v[2], v[3]))
        };
        Ok(Cuboid::new(dec(self.x)?, dec(self.y)?, dec(self.z)?))
    }
}

// ---------------------------------------------------------------------------
// Fixture families
// ---------------------------------------------------------------------------

/// The single unit cube.
pub fn unit_cube() -> CuboidFamily {
    let iv = || Interval::new(Rat::zero(), Rat::one()).expect("unit interval");
    CuboidFamily::new(vec![Cuboid::new(iv(), iv(), iv())]).expect("one cuboid")
}

/// The two-cuboid family `(0,½)×(0,½)×(0,1)` and `(½,1)×(½,1)×(0,1)`,
/// 2-comparable with α-score 1 at α = 1/2.
pub fn split_pair() -> CuboidFamily {
    let lo = || Interval::new(rat(0, 1), rat(1, 2)).expect("interval");
    let hi = || Interval::new(rat(1, 2), rat(1, 1)).expect("interval");
    let full = || Interval::new(rat(0, 1), rat(1, 1)).expect("interval");
    CuboidFamily::new(vec![
        Cuboid::new(lo(), lo(), full()),
        Cuboid::new(hi(), hi(), full()),
    ])
    .expect("disjoint pair")
}

/// The full `k × k × k` packing of side-`1/k` cubes.
pub fn cube_grid(k: u32) -> Result<CuboidFamily, CuboidError> {
    if k == 0 {
        return Err(CuboidError::Empty);
    }
    let iv = |c: u32| Interval::new(rat(c as i64 - 1, k as i64), rat(c as i64, k as i64));
    let mut cuboids = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            for c in 1..=k {
                cuboids.push(Cuboid::new(iv(a)?, iv(b)?, iv(c)?));
            }
        }
    }
    CuboidFamily::new(cuboids)
}

/// Embeds an arity-3 integer family into the unit cube: the tuple
/// `(a, b, c)` in `[n₁]×[n₂]×[n₃]` becomes the open cell
/// `((a−1)/n₁, a/n₁) × … `. Duplicate tuples are rejected as overlaps.
pub fn from_family(t: &Family) -> Result<CuboidFamily, CuboidError> {
    if t.arity() != 3 {
        return Err(CuboidError::Construct(
            crate::error::ConstructError::NotArity3 { arity: t.arity() },
        ));
    }
    let sides = t.dims().sides();
    let cell = |axis: usize, c: Coord| {
        Interval::new(
            rat(c as i64 - 1, sides[axis] as i64),
            rat(c as i64, sides[axis] as i64),
        )
    };
    let cuboids = t
        .tuples()
        .iter()
        .map(|u| {
            Ok(Cuboid::new(
                cell(0, u.coord(0))?,
                cell(1, u.coord(1))?,
                cell(2, u.coord(2))?,
            ))
        })
        .collect::<Result<Vec<_>, CuboidError>>()?;
    CuboidFamily::new(cuboids)
}

/// The five-cuboid one-parameter family: each axis splits into
/// `(0,x), (x,1−x), (1−x,1)` and the five cuboids follow the seed pattern
/// of the five-triple 2-comparable set in `[3]³` — two corner cubes of
/// volume `x³` and three slabs of volume `x²(1−2x)`.
pub fn five_cuboids(x: &Rat) -> Result<CuboidFamily, CuboidError> {
    if !x.is_positive() || x >= &rat(1, 2) {
        return Err(CuboidError::BadSplit {
            given: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    let one = Rat::one();
    let pieces = [
        Interval::new(Rat::zero(), x.clone())?,
        Interval::new(x.clone(), &one - x)?,
        Interval::new(&one - x, one.clone())?,
    ];
    let seed = crate::construct::gallery(crate::construct::GalleryId::Comp5_3Cube)
        .expect("seed fixture is well-formed");
    let cuboids = seed
        .tuples()
        .iter()
        .map(|t| {
            Cuboid::new(
                pieces[(t.coord(0) - 1) as usize].clone(),
                pieces[(t.coord(1) - 1) as usize].clone(),
                pieces[(t.coord(2) - 1) as usize].clone(),
            )
        })
        .collect();
    CuboidFamily::new(cuboids)
}

/// One product-refinement step: every cuboid is replaced by a scaled copy of
/// the whole family. Sizes multiply and `Φ_α` squares exactly.
pub fn refine(b: &CuboidFamily) -> Result<CuboidFamily, CuboidError> {
    let map = |outer: &Interval, inner: &Interval| -> Result<Interval, CuboidError> {
        let len = outer.length();
        Interval::new(
            outer.lo() + &len * inner.lo(),
            outer.lo() + &len * inner.hi(),
        )
    };
    let mut cuboids = Vec::with_capacity(b.len() * b.len());
    for outer in b.cuboids() {
        for inner in b.cuboids() {
            cuboids.push(Cuboid::new(
                map(outer.side(0), inner.side(0))?,
                map(outer.side(1), inner.side(1))?,
                map(outer.side(2), inner.side(2))?,
            ));
        }
    }
    CuboidFamily::new(cuboids)
}

// ---------------------------------------------------------------------------
// Scores
// ---------------------------------------------------------------------------

fn check_alpha(alpha: f64) -> Result<(), CuboidError> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(CuboidError::BadAlpha { given: alpha });
    }
    Ok(())
}

/// `Φ_α(B) = Σᵢ |Bᵢ|^α`, summed in family order.
///
/// This un-exponentiated sum is the primary score; the normalized
/// `‖B‖_α = Φ_α^{1/α}` is exposed as [`norm_score`]. The threshold
/// predicates `Φ_α ≥ 1` and `‖B‖_α ≥ 1` are equivalent.
pub fn score(b: &CuboidFamily, alpha: f64) -> Result<f64, CuboidError> {
    check_alpha(alpha)?;
    let mut total = 0.0;
    for c in b.cuboids() {
        let v = c.volume().to_f64().expect("unit-cube volumes fit in f64");
        total += v.powf(alpha);
    }
    Ok(total)
}

/// `‖B‖_α = Φ_α(B)^{1/α}`.
pub fn norm_score(b: &CuboidFamily, alpha: f64) -> Result<f64, CuboidError> {
    Ok(score(b, alpha)?.powf(1.0 / alpha))
}

/// Pairwise 2-comparability (`comparable`) or ordered 2-increase
/// (`increasing`, in stored order) of the cuboids, interval-wise.
pub fn cuboids_comparable(b: &CuboidFamily, mode: Mode) -> bool {
    let cs = b.cuboids();
    for i in 0..cs.len() {
        for j in (i + 1)..cs.len() {
            let ok = match mode {
                Mode::Increasing => cs[i].less_two(&cs[j]),
                Mode::Comparable => cs[i].comparable(&cs[j]),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Closed-form score of the five-cuboid family:
/// `2x^{3α} + 3x^{2α}(1−2x)^α` for `x ∈ (0, 1/2)`.
pub fn family_score(x: f64, alpha: f64) -> Result<f64, CuboidError> {
    check_alpha(alpha)?;
    if !(x > 0.0 && x < 0.5) {
        return Err(CuboidError::BadSplit { given: x });
    }
    Ok(2.0 * x.powf(3.0 * alpha) + 3.0 * x.powf(2.0 * alpha) * (1.0 - 2.0 * x).powf(alpha))
}

/// One golden-section iteration of [`optimize_x`]: the bracket after the
/// update together with the interior probes that produced it.
#[derive(Clone, Copy, Debug)]
pub struct GoldenStep {
    pub lo: f64,
    pub hi: f64,
    pub probe_low: f64,
    pub probe_high: f64,
    pub score_low: f64,
    pub score_high: f64,
}

/// Maximizes [`family_score`] over `x ∈ (0, 1/2)` for a fixed `α ∈ (0, 1]`.
///
/// A 10⁴-point scan brackets the peak (asserting the scan is single-peaked,
/// since unimodality is assumed rather than proven), then golden-section
/// search refines `x` to absolute tolerance 1e−10.
pub fn optimize_x(alpha: f64) -> Result<(f64, f64), CuboidError> {
    optimize_x_trace(alpha).map(|(x, value, _)| (x, value))
}

/// [`optimize_x`] plus the golden-section iteration trace.
pub fn optimize_x_trace(alpha: f64) -> Result<(f64, f64, Vec<GoldenStep>), CuboidError> {
    check_alpha(alpha)?;
    if alpha > 1.0 {
        return Err(CuboidError::BadAlpha { given: alpha });
    }
    const POINTS: usize = 10_000;
    let xs = |j: usize| 0.5 * j as f64 / (POINTS + 1) as f64;
    let mut values = Vec::with_capacity(POINTS);
    for j in 1..=POINTS {
        values.push(family_score(xs(j), alpha)?);
    }
    let peak = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("scores are finite"))
        .expect("scan is non-empty")
        .0;
    // Fail loudly if the scan is not single-peaked: rising after a fall
    // would mean golden-section cannot be trusted.
    let mut falling = false;
    for w in values.windows(2) {
        if w[1] < w[0] - 1e-15 {
            falling = true;
        } else if falling && w[1] > w[0] + 1e-15 {
            panic!("family score scan is not single-peaked at alpha = {alpha}");
        }
    }
    let mut lo = xs(peak.max(1));
    let mut hi = xs((peak + 2).min(POINTS + 1));
    // Golden-section search on the bracket.
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = family_score(a, alpha)?;
    let mut fb = family_score(b, alpha)?;
    let mut steps = Vec::new();
    while hi - lo > 1e-10 {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = family_score(b, alpha)?;
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = family_score(a, alpha)?;
        }
        steps.push(GoldenStep {
            lo,
            hi,
            probe_low: a,
            probe_high: b,
            score_low: fa,
            score_high: fb,
        });
    }
    let x_star = 0.5 * (lo + hi);
    Ok((x_star, family_score(x_star, alpha)?, steps))
}

/// One bisection probe of [`solve_alpha`]: the exponent evaluated, the
/// optimized score there, whether the threshold predicate held, and the
/// bracket after the update.
#[derive(Clone, Copy, Debug)]
pub struct AlphaStep {
    pub alpha: f64,
    pub score: f64,
    pub holds: bool,
    pub lo: f64,
    pub hi: f64,
}

/// Finds the largest α with `sup_x family_score(x, α) ≥ 1`, by bisection to
/// within `tol` (which must be ≥ 1e−12). The predicate's monotonicity in α
/// is asserted on the trace of evaluated points.
pub fn solve_alpha(tol: f64) -> Result<f64, CuboidError> {
    solve_alpha_trace(tol).map(|(alpha, _)| alpha)
}

/// [`solve_alpha`] plus the bisection probe trace.
pub fn solve_alpha_trace(tol: f64) -> Result<(f64, Vec<AlphaStep>), CuboidError> {
    if !tol.is_finite() || tol < 1e-12 {
        return Err(CuboidError::BadTolerance { given: tol });
    }
    let probe = |alpha: f64| -> Result<(f64, bool), CuboidError> {
        let (_, score) = optimize_x(alpha)?;
        Ok((score, score >= 1.0))
    };
    let mut lo = 0.5;
    let mut hi = 0.6;
    let mut trace: Vec<AlphaStep> = Vec::new();
    let (lo_score, lo_holds) = probe(lo)?;
    let (hi_score, hi_holds) = probe(hi)?;
    trace.push(AlphaStep {
        alpha: lo,
        score: lo_score,
        holds: lo_holds,
        lo,
        hi,
    });
    trace.push(AlphaStep {
        alpha: hi,
        score: hi_score,
        holds: hi_holds,
        lo,
        hi,
    });
    assert!(
        lo_holds && !hi_holds,
        "threshold must lie inside the bisection bracket [{lo}, {hi}]"
    );
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let (score, holds) = probe(mid)?;
        if holds {
            lo = mid;
        } else {
            hi = mid;
        }
        trace.push(AlphaStep {
            alpha: mid,
            score,
            holds,
            lo,
            hi,
        });
    }
    // Monotonicity of the threshold predicate across everything evaluated.
    let sup_true = trace
        .iter()
        .filter(|s| s.holds)
        .map(|s| s.alpha)
        .fold(f64::NEG_INFINITY, f64::max);
    let inf_false = trace
        .iter()
        .filter(|s| !s.holds)
        .map(|s| s.alpha)
        .fold(f64::INFINITY, f64::min);
    assert!(
        sup_true < inf_false,
        "score threshold is not monotone in alpha on the bisection trace"
    );
    Ok((0.5 * (lo + hi), trace))
}

// ---------------------------------------------------------------------------
// Cross profiles and balancing shifts
// ---------------------------------------------------------------------------

/// A piecewise-constant function on `[0,1]`: `breakpoints` has length
/// `pieces + 1` with first entry 0 and last entry 1; `values[i]` is the
/// value on the open piece `(breakpoints[i], breakpoints[i+1])`.
#[derive(Clone, Debug)]
pub struct StepFunction {
    pub breakpoints: Vec<Rat>,
    pub values: Vec<f64>,
}

impl StepFunction {
    pub fn pieces(&self) -> usize {
        self.values.len()
    }

    /// Whether the function takes a single value off the breakpoints
    /// (within a small numeric tolerance). An empty family's all-zero
    /// profile is vacuously constant.
    pub fn is_constant(&self) -> bool {
        self.values
            .iter()
            .all(|v| (v - self.values[0]).abs() <= PROFILE_EPS)
    }
}

/// The cross-section profile along an axis (1, 2, or 3): on each piece `t`
/// of the common endpoint refinement, the sum over cuboids whose axis
/// interval covers the piece of `len_axis^{α−1} · (other two lengths)^α`.
pub fn cross_profile(b: &CuboidFamily, axis: u8, alpha: f64) -> Result<StepFunction, CuboidError> {
    check_alpha(alpha)?;
    let ax = axis_index(axis)?;
    let mut breakpoints: Vec<Rat> = vec![Rat::zero(), Rat::one()];
    for c in b.cuboids() {
        breakpoints.push(c.side(ax).lo().clone());
        breakpoints.push(c.side(ax).hi().clone());
    }
    breakpoints.sort();
    breakpoints.dedup();
    let mut values = Vec::with_capacity(breakpoints.len() - 1);
    for w in breakpoints.windows(2) {
        let (plo, phi) = (&w[0], &w[1]);
        let mut total = 0.0;
        for c in b.cuboids() {
            let iv = c.side(ax);
            if iv.lo() <= plo && phi <= iv.hi() {
                let own = iv.length().to_f64().expect("length fits in f64");
                let others: f64 = (0..3)
                    .filter(|&i| i != ax)
                    .map(|i| c.side(i).length().to_f64().expect("length fits in f64"))
                    .product();
                total += own.powf(alpha - 1.0) * others.powf(alpha);
            }
        }
        values.push(total);
    }
    Ok(StepFunction {
        breakpoints,
        values,
    })
}

fn axis_index(axis: u8) -> Result<usize, CuboidError> {
    match axis {
        1..=3 => Ok(axis as usize - 1),
        other => Err(CuboidError::BadAxis { given: other }),
    }
}

/// Outcome of a balancing shift attempt.
#[derive(Clone, Debug)]
pub enum ShiftOutcome {
    /// A strictly better family (score increased at the given α).
    Improved(CuboidFamily),
    /// No improvement found: the profile is constant, or its variation is
    /// below numeric noise (the note says which).
    Balanced { note: String },
}

/// Tries to increase the score by a piecewise-linear reparameterization of
/// one axis: the piece where the cross profile is largest is stretched by δ
/// and the piece where it is smallest is shrunk by δ, leaving all other
/// piece lengths unchanged. δ starts at half the smaller of the two piece
/// lengths and is halved (up to 60 times) until the score strictly
/// increases.
///
/// The reparameterization is strictly increasing, so disjointness and any
/// comparability the input had are preserved; both are re-checked on every
/// improved family before it is returned.
pub fn improve_shift(b: &CuboidFamily, axis: u8, alpha: f64) -> Result<ShiftOutcome, CuboidError> {
    let ax = axis_index(axis)?;
    let profile = cross_profile(b, axis, alpha)?;
    if profile.is_constant() {
        return Ok(ShiftOutcome::Balanced {
            note: "cross profile is constant".into(),
        });
    }
    let argmax = profile
        .values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite values"))
        .expect("non-empty")
        .0;
    let argmin = profile
        .values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite values"))
        .expect("non-empty")
        .0;
    let piece_len = |i: usize| -> Rat { &profile.breakpoints[i + 1] - &profile.breakpoints[i] };
    let base_score = score(b, alpha)?;
    let was_comparable = cuboids_comparable(b, Mode::Comparable);
    let mut delta = piece_len(argmax).min(piece_len(argmin)) / rat(2, 1);
    for _ in 0..60 {
        let shifted = shift_axis(b, ax, &profile.breakpoints, argmax, argmin, &delta)?;
        if score(&shifted, alpha)? > base_score {
            assert!(
                !was_comparable || cuboids_comparable(&shifted, Mode::Comparable),
                "reparameterization must preserve 2-comparability"
            );
            return Ok(ShiftOutcome::Improved(shifted));
        }
        delta /= rat(2, 1);
    }
    Ok(ShiftOutcome::Balanced {
        note: "no strict improvement after 60 delta halvings; profile variation \
               is below numeric noise"
            .into(),
    })
}

/// Applies the piecewise-linear axis map that resizes the `grow`-th piece to
/// `len + delta` and the `shrink`-th piece to `len − delta`. Every interval
/// endpoint along the axis is a breakpoint, so endpoints map exactly.
fn shift_axis(
    b: &CuboidFamily,
    ax: usize,
    breakpoints: &[Rat],
    grow: usize,
    shrink: usize,
    delta: &Rat,
) -> Result<CuboidFamily, CuboidError> {
    let mut new_points = Vec::with_capacity(breakpoints.len());
    new_points.push(Rat::zero());
    for i in 0..breakpoints.len() - 1 {
        let mut len = &breakpoints[i + 1] - &breakpoints[i];
        if i == grow {
            len += delta;
        } else if i == shrink {
            len -= delta;
        }
        let prev = new_points.last().expect("seeded with 0").clone();
        new_points.push(prev + len);
    }
    debug_assert!(new_points.last() == Some(&Rat::one()));
    let remap = |v: &Rat| -> Rat {
        let idx = breakpoints
            .iter()
            .position(|p| p == v)
            .expect("cuboid endpoints are breakpoints of the profile");
        new_points[idx].clone()
    };
    let cuboids = b
        .cuboids()
        .iter()
        .map(|c| {
            let iv = c.side(ax);
            let mapped = Interval::new(remap(iv.lo()), remap(iv.hi()))?;
            let mut sides: [Interval; 3] = c.sides.clone();
            sides[ax] = mapped;
            Ok(Cuboid { sides })
        })
        .collect::<Result<Vec<_>, CuboidError>>()?;
    CuboidFamily::new(cuboids)
}

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

/// Strategy for filling an integer block with a 2-comparable set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FillStrategy {
    /// The larger of the interleaving and diagonal fills per block.
    Best,
    /// Always the two-axis diagonal fill.
    Diagonal,
    /// Always the digit-interleaving corner fill.
    Interleave,
}

impl fmt::Display for FillStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillStrategy::Best => write!(f, "best"),
            FillStrategy::Diagonal => write!(f, "diagonal"),
            FillStrategy::Interleave => write!(f, "interleave"),
        }
    }
}

impl FromStr for FillStrategy {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text {
            "best" => Ok(FillStrategy::Best),
            "diagonal" => Ok(FillStrategy::Diagonal),
            "interleave" => Ok(FillStrategy::Interleave),
            other => Err(format!("unknown fill strategy {other:?}")),
        }
    }
}

/// Result of a discretization: the assembled family and the number of
/// tuples contributed by each cuboid's block, in family order.
#[derive(Clone, Debug)]
pub struct DiscretizeReport {
    pub family: Family,
    pub block_counts: Vec<usize>,
}

/// Diagonal fill of an `a×b×c` block: along the axis pair with the largest
/// common range, tuples `(k, k)` with the remaining coordinate pinned at 1.
/// Any two of them differ strictly in both diagonal axes.
fn diagonal_fill(dims: [Coord; 3]) -> Vec<Tuple> {
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let (p, q) = pairs
        .into_iter()
        .max_by_key(|&(p, q)| dims[p].min(dims[q]))
        .expect("three pairs");
    let k = dims[p].min(dims[q]);
    (1..=k)
        .map(|i| {
            let mut coords = [1; 3];
            coords[p] = i;
            coords[q] = i;
            Tuple::from(coords)
        })
        .collect()
}

/// Interleaving fill: the largest `m` with `m² ≤ min side` gives the
/// digit-interleaving sequence in `[m²]³`, cycled `(x,y,z) ↦ (y,z,x)`,
/// placed at the block corner. For a cube block whose side is a perfect
/// square this realizes `side^{3/2}` tuples.
fn interleave_fill(dims: [Coord; 3]) -> Vec<Tuple> {
    let min_side = dims.iter().copied().min().expect("three sides");
    let mut m = 1u32;
    while (m + 1) * (m + 1) <= min_side {
        m += 1;
    }
    let base = crate::construct::base_interleave(m, 3, 2).expect("parameters are in range");
    base.tuples()
        .iter()
        .map(|t| Tuple::from([t.coord(1), t.coord(2), t.coord(0)]))
        .collect()
}

fn fill_block(dims: [Coord; 3], strategy: FillStrategy) -> Vec<Tuple> {
    match strategy {
        FillStrategy::Diagonal => diagonal_fill(dims),
        FillStrategy::Interleave => interleave_fill(dims),
        FillStrategy::Best => {
            let diag = diagonal_fill(dims);
            let inter = interleave_fill(dims);
            // Ties favor the interleaving fill (richer block structure).
            if diag.len() > inter.len() {
                diag
            } else {
                inter
            }
        }
    }
}

/// Discretizes a 2-comparable cuboid family onto the integer grid obtained
/// by clearing denominators per axis, filling each cuboid's block by the
/// strategy. The assembled family is 2-comparable.
pub fn discretize(
    b: &CuboidFamily,
    strategy: FillStrategy,
) -> Result<DiscretizeReport, CuboidError> {
    if b.is_empty() {
        return Err(CuboidError::Empty);
    }
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            if !b.cuboids()[i].comparable(&b.cuboids()[j]) {
                return Err(CuboidError::NotComparable {
                    first: i,
                    second: j,
                });
            }
        }
    }
    // Per-axis denominator clearing.
    let mut grid_sides = [0u32; 3];
    for (ax, grid_side) in grid_sides.iter_mut().enumerate() {
        let mut d = BigInt::one();
        for c in b.cuboids() {
            d = d.lcm(c.side(ax).lo().denom());
            d = d.lcm(c.side(ax).hi().denom());
        }
        let side =
            d.to_u32()
                .filter(|&v| v <= MAX_GRID_SIDE)
                .ok_or_else(|| CuboidError::GridTooFine {
                    axis: ax as u8 + 1,
                    denominator: d.to_string(),
                })?;
        *grid_side = side;
    }

    let mut tuples = Vec::new();
    let mut block_counts = Vec::with_capacity(b.len());
    for c in b.cuboids() {
        let mut origin = [0u32; 3];
        let mut block = [0u32; 3];
        for ax in 0..3 {
            let scale = rat(grid_sides[ax] as i64, 1);
            let lo = (c.side(ax).lo() * &scale)
                .to_integer()
                .to_u32()
                .expect("scaled endpoint is a small integer");
            let hi = (c.side(ax).hi() * &scale)
                .to_integer()
                .to_u32()
                .expect("scaled endpoint is a small integer");
            origin[ax] = lo;
            block[ax] = hi - lo;
        }
        let fill = fill_block(block, strategy);
        block_counts.push(fill.len());
        for t in fill {
            tuples.push(Tuple::from([
                origin[0] + t.coord(0),
                origin[1] + t.coord(1),
                origin[2] + t.coord(2),
            ]));
        }
    }
    let dims = BoxDims::new(grid_sides.to_vec()).map_err(crate::error::ConstructError::from)?;
    let family = Family::new(dims, 2, Mode::Comparable, tuples)
        .map_err(crate::error::ConstructError::from)?;
    let report = family.validate();
    assert!(
        report.valid,
        "assembled discretization must be 2-comparable: {:?}",
        report.failures.first()
    );
    Ok(DiscretizeReport {
        family,
        block_counts,
    })
}
