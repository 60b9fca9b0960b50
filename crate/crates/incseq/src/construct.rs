//! Deterministic generators: the digit-interleaving sequence, the product
//! booster, the affine-map code, and the hardcoded example gallery.

use std::fmt;
use std::str::FromStr;

use crate::error::ConstructError;
use crate::family::{BoxDims, Coord, Family, Mode, Tuple};
use crate::gf::GaloisField;

/// Cap on generated family sizes (tuple counts) for the enumerative
/// constructions.
pub const SIZE_CAP: u128 = 1 << 20;

// ---------------------------------------------------------------------------
// base_interleave
// ---------------------------------------------------------------------------

/// The digit-interleaving s-increasing sequence: `m^r` r-tuples in the box
/// `[m^s]^r`, listed in increasing order.
///
/// The `k`-th tuple is read off the base-`m` digits `d_0 … d_{r−1}` of `k`
/// (`d_0` least significant). Coordinate `i ∈ {1..r}` owns the digit window
/// `{s(i−1), s(i−1)+1, …, s(i−1)+s−1}` taken modulo `r`; its value is
/// `1 + Σ_j d_{w_j} · m^j` where `w_0 < w_1 < …` are the window's indices in
/// increasing order (a digit with higher global index is more significant).
/// Every digit lies in exactly `s` windows, so incrementing `k` increases at
/// least `s` coordinates — the sequence is s-increasing.
pub fn base_interleave(m: u32, r: u32, s: u32) -> Result<Family, ConstructError> {
    if m < 1 {
        return Err(ConstructError::BadBase { given: m });
    }
    if r < 1 || s < 1 || s > r {
        return Err(ConstructError::Mismatch(format!(
            "need 1 <= s <= r, got r={r}, s={s}"
        )));
    }
    let size = (m as u128)
        .checked_pow(r)
        .filter(|&v| v <= SIZE_CAP)
        .ok_or(ConstructError::TooLarge {
            size: (m as u128).saturating_pow(r),
            cap: SIZE_CAP,
        })?;
    let side = (m as u64)
        .checked_pow(s)
        .filter(|&v| v <= u32::MAX as u64)
        .ok_or_else(|| ConstructError::SideOverflow(format!("m^s = {m}^{s}")))?
        as u32;

    let r = r as usize;
    let s = s as usize;
    // windows[i] = digit indices of coordinate i+1, ascending.
    let windows: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            let mut w: Vec<usize> = (0..s).map(|j| (s * i + j) % r).collect();
            w.sort_unstable();
            w
        })
        .collect();

    let mut tuples = Vec::with_capacity(size as usize);
    let mut digits = vec![0u32; r];
    for k in 0..size {
        if k > 0 {
            // Increment the base-m counter.
            for d in digits.iter_mut() {
                if *d + 1 < m {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        let coords: Vec<Coord> = windows
            .iter()
            .map(|w| {
                let mut value = 0u32;
                for &idx in w.iter().rev() {
                    value = value * m + digits[idx];
                }
                value + 1
            })
            .collect();
        tuples.push(Tuple::new(coords));
    }
    Ok(Family::new(
        BoxDims::new(vec![side; r])?,
        s as u32,
        Mode::Increasing,
        tuples,
    )?)
}

// ---------------------------------------------------------------------------
// product and cyclic boost
// ---------------------------------------------------------------------------

/// Coordinatewise product of two families with the same arity, `s`, and mode.
///
/// For `u` in `a` and `v` in `b` (with `a` as the outer loop), the output
/// tuple is `w_i = (u_i − 1)·M_i + v_i` where `M_i` is `b`'s box side — an
/// order-respecting pairing, so validity in the shared mode is preserved and
/// sizes multiply exactly.
pub fn product(a: &Family, b: &Family) -> Result<Family, ConstructError> {
    if a.arity() != b.arity() {
        return Err(ConstructError::Mismatch(format!(
            "arity {} vs {}",
            a.arity(),
            b.arity()
        )));
    }
    if a.s() != b.s() {
        return Err(ConstructError::Mismatch(format!(
            "s parameter {} vs {}",
            a.s(),
            b.s()
        )));
    }
    if a.mode() != b.mode() {
        return Err(ConstructError::Mismatch(format!(
            "mode {} vs {}",
            a.mode(),
            b.mode()
        )));
    }
    for (name, f) in [("left", a), ("right", b)] {
        if !f.is_valid() {
            return Err(ConstructError::Mismatch(format!(
                "{name} operand fails validation in mode {}",
                f.mode()
            )));
        }
    }
    let size = (a.len() as u128) * (b.len() as u128);
    if size > SIZE_CAP {
        return Err(ConstructError::TooLarge {
            size,
            cap: SIZE_CAP,
        });
    }
    let dims: Vec<Coord> = a
        .dims()
        .sides()
        .iter()
        .zip(b.dims().sides())
        .map(|(&n, &m)| {
            n.checked_mul(m)
                .ok_or_else(|| ConstructError::SideOverflow(format!("{n} * {m}")))
        })
        .collect::<Result<_, _>>()?;
    let mut tuples = Vec::with_capacity(a.len() * b.len());
    for u in a.tuples() {
        for v in b.tuples() {
            let w: Vec<Coord> = u
                .coords()
                .iter()
                .zip(v.coords())
                .zip(b.dims().sides())
                .map(|((&ui, &vi), &mi)| (ui - 1) * mi + vi)
                .collect();
            tuples.push(Tuple::new(w));
        }
    }
    Ok(Family::new(BoxDims::new(dims)?, a.s(), a.mode(), tuples)?)
}

/// Rotates every triple one step: `(a, b, c) ↦ (c, a, b)`, with the box sides
/// rotated to match. Validity and mode are preserved (coordinate permutations
/// do not change strict-less counts).
fn rotate_triples(t: &Family) -> Result<Family, ConstructError> {
    if t.arity() != 3 {
        return Err(ConstructError::NotArity3 { arity: t.arity() });
    }
    let d = t.dims().sides();
    Ok(Family::new(
        BoxDims::new(vec![d[2], d[0], d[1]])?,
        t.s(),
        t.mode(),
        t.tuples()
            .iter()
            .map(|u| Tuple::from([u.coord(2), u.coord(0), u.coord(1)]))
            .collect(),
    )?)
}

/// Product of an arity-3 family with its two cyclic coordinate rotations:
/// `t ⊗ φ(t) ⊗ φ²(t)` with `φ(a,b,c) = (c,a,b)`.
///
/// The result lives in the cube `[n]^3` with `n` the product of the three
/// original box sides, and has `|t|³` tuples.
pub fn cyclic_boost(t: &Family) -> Result<Family, ConstructError> {
    let r1 = rotate_triples(t)?;
    let r2 = rotate_triples(&r1)?;
    product(&product(t, &r1)?, &r2)
}

// ---------------------------------------------------------------------------
// affine code
// ---------------------------------------------------------------------------

/// All `q^{k+1}` affine maps `x ↦ a·x + b` from `F_q^k` to `F_q`, each viewed
/// as the tuple of its values (plus one) over all `x ∈ F_q^k` in
/// lexicographic order.
///
/// Two distinct affine maps agree in at most `q^{k−1}` positions, so any pair
/// disagrees in at least `D = q^k − q^{k−1}` positions and one direction
/// holds at least `⌈D/2⌉` times: the family is s-comparable with
/// `s = ⌈D/2⌉`, mode `comparable`. Tuples are listed with `a ∈ F_q^k` in
/// lexicographic order (first component most significant) as the outer loop
/// and `b ∈ F_q` ascending inner.
pub fn affine_code(q: u32, k: u32) -> Result<Family, ConstructError> {
    if k < 1 {
        return Err(ConstructError::BadExponent);
    }
    let field = GaloisField::new(q)?;
    let r = (q as u128)
        .checked_pow(k)
        .filter(|&v| v <= 64)
        .ok_or(ConstructError::TooLarge {
            size: (q as u128).saturating_pow(k),
            cap: 64,
        })? as usize;

    // F_q^k in lexicographic order.
    let mut points: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..k {
        points = points
            .iter()
            .flat_map(|p| {
                (0..q).map(move |d| {
                    let mut next = p.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    debug_assert_eq!(points.len(), r);

    let disagreement = r as u32 - r as u32 / q;
    let s = disagreement.div_ceil(2);
    let mut tuples = Vec::with_capacity(r * q as usize);
    for a in &points {
        for b in 0..q {
            let coords: Vec<Coord> = points
                .iter()
                .map(|x| field.add(field.dot(a, x), b) + 1)
                .collect();
            tuples.push(Tuple::new(coords));
        }
    }
    Ok(Family::new(
        BoxDims::new(vec![q; r])?,
        s,
        Mode::Comparable,
        tuples,
    )?)
}

// ---------------------------------------------------------------------------
// Gallery
// ---------------------------------------------------------------------------

/// Identifier of a hardcoded example family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GalleryId {
    /// The maximal 2-increasing sequence of length 8 in `[4]^3`.
    N4Len8,
    /// A 2-increasing sequence of ten 4-tuples in `[3]^4`.
    F42Len10,
    /// The five-triple 2-comparable seed set in `[3]^3`.
    Comp5_3Cube,
    /// The 28-triple 2-comparable family in `[9]^3` (beats `9^{3/2}`).
    Fig2a28,
    /// The 9-triple 2-comparable family in `[4]×[5]×[4]` (beats `√80`).
    Fig2b9,
    /// The 15-triple 2-increasing family that is indecomposable for every
    /// label coordinate.
    Lastfig15,
    /// The sharp example for the skew-configuration bound: `4n−5` cells of
    /// `[n]²` (as an arity-2, 1-comparable family), `n ≥ 2`.
    PrekSharp(u32),
}

impl fmt::Display for GalleryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryId::N4Len8 => write!(f, "n4_len8"),
            GalleryId::F42Len10 => write!(f, "f42_len10"),
            GalleryId::Comp5_3Cube => write!(f, "comp5_3cube"),
            GalleryId::Fig2a28 => write!(f, "fig2a_28"),
            GalleryId::Fig2b9 => write!(f, "fig2b_9"),
            GalleryId::Lastfig15 => write!(f, "lastfig_15"),
            GalleryId::PrekSharp(n) => write!(f, "prek_sharp({n})"),
        }
    }
}

impl FromStr for GalleryId {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text {
            "n4_len8" => return Ok(GalleryId::N4Len8),
            "f42_len10" => return Ok(GalleryId::F42Len10),
            "comp5_3cube" => return Ok(GalleryId::Comp5_3Cube),
            "fig2a_28" => return Ok(GalleryId::Fig2a28),
            "fig2b_9" => return Ok(GalleryId::Fig2b9),
            "lastfig_15" => return Ok(GalleryId::Lastfig15),
            _ => {}
        }
        if let Some(arg) = text
            .strip_prefix("prek_sharp(")
            .and_then(|rest| rest.strip_suffix(')'))
        {
            let n: u32 = arg
                .parse()
                .map_err(|_| format!("bad prek_sharp argument {arg:?}"))?;
            return Ok(GalleryId::PrekSharp(n));
        }
        Err(format!("unknown gallery id {text:?}"))
    }
}

impl GalleryId {
    /// The fixed-`n`-free gallery names (everything except `prek_sharp`).
    pub const NAMED: [GalleryId; 6] = [
        GalleryId::N4Len8,
        GalleryId::F42Len10,
        GalleryId::Comp5_3Cube,
        GalleryId::Fig2a28,
        GalleryId::Fig2b9,
        GalleryId::Lastfig15,
    ];
}

/// Returns the hardcoded family for a gallery id. Every fixture re-validates
/// on load; the stored byte order is fixed.
pub fn gallery(id: GalleryId) -> Result<Family, ConstructError> {
    let family = match id {
        GalleryId::N4Len8 => from_triples(
            [4, 4, 4],
            2,
            Mode::Increasing,
            &[
                [1, 1, 1],
                [1, 2, 2],
                [2, 1, 3],
                [2, 2, 4],
                [3, 3, 1],
                [3, 4, 2],
                [4, 3, 3],
                [4, 4, 4],
            ],
        )?,
        GalleryId::F42Len10 => Family::new(
            BoxDims::new(vec![3, 3, 3, 3])?,
            2,
            Mode::Increasing,
            [
                [1, 1, 1, 1],
                [1, 1, 2, 2],
                [1, 2, 1, 3],
                [2, 1, 3, 1],
                [2, 2, 2, 2],
                [3, 3, 1, 1],
                [1, 3, 2, 3],
                [3, 1, 3, 2],
                [2, 2, 3, 3],
                [3, 3, 3, 3],
            ]
            .iter()
            .map(|&t| Tuple::from(t))
            .collect(),
        )?,
        GalleryId::Comp5_3Cube => from_triples(
            [3, 3, 3],
            2,
            Mode::Comparable,
            &[[1, 1, 1], [1, 2, 3], [2, 3, 1], [3, 1, 2], [3, 3, 3]],
        )?,
        GalleryId::Fig2a28 => from_triples(
            [9, 9, 9],
            2,
            Mode::Comparable,
            &[
                [5, 9, 4],
                [8, 9, 8],
                [9, 9, 9],
                [5, 8, 3],
                [8, 8, 6],
                [9, 8, 7],
                [5, 7, 2],
                [6, 7, 8],
                [7, 7, 9],
                [5, 6, 1],
                [6, 6, 6],
                [7, 6, 7],
                [1, 5, 6],
                [2, 5, 7],
                [3, 5, 8],
                [4, 5, 9],
                [3, 4, 3],
                [4, 4, 4],
                [9, 4, 5],
                [3, 3, 1],
                [4, 3, 2],
                [8, 3, 5],
                [1, 2, 3],
                [2, 2, 4],
                [7, 2, 5],
                [1, 1, 1],
                [2, 1, 2],
                [6, 1, 5],
            ],
        )?,
        GalleryId::Fig2b9 => from_triples(
            [4, 5, 4],
            2,
            Mode::Comparable,
            &[
                [1, 3, 4],
                [3, 4, 4],
                [4, 5, 4],
                [3, 1, 3],
                [4, 2, 3],
                [1, 2, 2],
                [2, 5, 2],
                [1, 1, 1],
                [2, 4, 1],
            ],
        )?,
        GalleryId::Lastfig15 => from_triples(
            [7, 7, 8],
            2,
            Mode::Increasing,
            &[
                [1, 1, 1],
                [2, 2, 1],
                [1, 3, 2],
                [3, 1, 3],
                [3, 2, 4],
                [4, 4, 1],
                [5, 3, 3],
                [1, 5, 5],
                [2, 5, 6],
                [4, 6, 4],
                [3, 7, 5],
                [6, 1, 7],
                [7, 2, 7],
                [5, 4, 8],
                [6, 5, 8],
            ],
        )?,
        GalleryId::PrekSharp(n) => prek_sharp(n)?,
    };
    debug_assert!(family.is_valid(), "gallery fixture {id} must validate");
    Ok(family)
}

fn from_triples(
    dims: [Coord; 3],
    s: u32,
    mode: Mode,
    triples: &[[Coord; 3]],
) -> Result<Family, ConstructError> {
    Ok(crate::family::triples_family(dims, s, mode, triples)?)
}

/// The sharp `4n−5` cell set for the skew-configuration bound: all cells
/// `(a, b) ∈ [n]²` with `a ∈ {n−1, n}` or `b ∈ {1, 2}`, except `(n, 1)`.
/// Encoded as an arity-2 family with `s = 1`, mode `comparable` (any two
/// distinct pairs are 1-comparable). Cells are listed in lexicographic order.
pub fn prek_sharp(n: u32) -> Result<Family, ConstructError> {
    if n < 2 {
        return Err(ConstructError::Mismatch(format!(
            "prek_sharp needs n >= 2, got {n}"
        )));
    }
    let mut cells = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            let in_right_columns = a >= n - 1;
            let in_bottom_rows = b <= 2;
            if (in_right_columns || in_bottom_rows) && !(a == n && b == 1) {
                cells.push(Tuple::from([a, b]));
            }
        }
    }
    Ok(Family::new(
        BoxDims::new(vec![n, n])?,
        1,
        Mode::Comparable,
        cells,
    )?)
}

/// The ten-triple 2-comparable family in `[5]×[5]×[4]` whose third-axis layer
/// counts are 3, 2, 2, 3 — the motivating example for cross-profile
/// balancing (its uneven layers leave room for improvement).
pub fn uneven_layer_family() -> Family {
    crate::family::triples_family(
        [5, 5, 4],
        2,
        Mode::Comparable,
        &[
            [1, 1, 1],
            [3, 1, 2],
            [2, 2, 1],
            [3, 2, 4],
            [4, 3, 1],
            [5, 3, 2],
            [1, 4, 3],
            [4, 4, 4],
            [2, 5, 3],
            [5, 5, 4],
        ],
    )
    .expect("fixture is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::less_s;

    #[test]
    fn base_interleave_matches_the_documented_small_cases() {
        // m=1: the single all-ones tuple.
        let f = base_interleave(1, 3, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.tuples()[0], Tuple::from([1, 1, 1]));

        // (m=2, r=3, s=2): 8 triples in [4]^3, valid 2-increasing.
        let f = base_interleave(2, 3, 2).unwrap();
        assert_eq!(f.dims().sides(), &[4, 4, 4]);
        assert_eq!(f.len(), 8);
        assert!(f.validate().valid);
        let expected = [
            [1, 1, 1],
            [2, 2, 1],
            [3, 1, 2],
            [4, 2, 2],
            [1, 3, 3],
            [2, 4, 3],
            [3, 3, 4],
            [4, 4, 4],
        ];
        for (t, e) in f.tuples().iter().zip(expected) {
            assert_eq!(t, &Tuple::from(e));
        }
    }

    #[test]
    fn base_interleave_position_3_of_the_27_column_display() {
        let f = base_interleave(3, 3, 2).unwrap();
        assert_eq!(f.len(), 27);
        assert_eq!(f.tuples()[3], Tuple::from([4, 1, 2]));
    }

    #[test]
    fn base_interleave_validates_exhaustively_at_small_parameters() {
        for m in 1..=4u32 {
            for r in 1..=5u32 {
                for s in 1..=r {
                    if (m as u128).pow(r) > 4096 {
                        continue;
                    }
                    let f = base_interleave(m, r, s).unwrap();
                    assert_eq!(f.len() as u128, (m as u128).pow(r));
                    assert!(
                        f.validate().valid,
                        "base_interleave({m},{r},{s}) must be {s}-increasing"
                    );
                }
            }
        }
    }

    #[test]
    fn n4_len8_is_a_coordinate_swap_of_base_interleave() {
        let base = base_interleave(2, 3, 2).unwrap();
        let swapped: Vec<Tuple> = base
            .tuples()
            .iter()
            .map(|t| Tuple::from([t.coord(2), t.coord(1), t.coord(0)]))
            .collect();
        let fixture = gallery(GalleryId::N4Len8).unwrap();
        assert_eq!(fixture.tuples(), &swapped[..]);
    }

    #[test]
    fn product_multiplies_sizes_and_preserves_validity() {
        let a = gallery(GalleryId::N4Len8).unwrap();
        let p = product(&a, &a).unwrap();
        assert_eq!(p.len(), 64);
        assert_eq!(p.dims().sides(), &[16, 16, 16]);
        assert!(p.validate().valid);

        let c = gallery(GalleryId::Comp5_3Cube).unwrap();
        let p = product(&c, &c).unwrap();
        assert_eq!(p.len(), 25);
        assert_eq!(p.dims().sides(), &[9, 9, 9]);
        assert!(p.validate().valid);
    }

    #[test]
    fn product_with_the_singleton_is_order_isomorphic() {
        let a = gallery(GalleryId::N4Len8).unwrap();
        let one =
            crate::family::triples_family([1, 1, 1], 2, Mode::Increasing, &[[1, 1, 1]]).unwrap();
        let p = product(&a, &one).unwrap();
        assert_eq!(p.len(), a.len());
        // With M_i = 1 the injection is (u_i - 1) * 1 + 1 = u_i.
        assert_eq!(p.tuples(), a.tuples());
    }

    #[test]
    fn product_rejects_mismatches() {
        let a = gallery(GalleryId::N4Len8).unwrap();
        let c = gallery(GalleryId::Comp5_3Cube).unwrap();
        assert!(matches!(product(&a, &c), Err(ConstructError::Mismatch(_))));
        let f4 = gallery(GalleryId::F42Len10).unwrap();
        assert!(matches!(product(&a, &f4), Err(ConstructError::Mismatch(_))));
        // An invalid operand is rejected even with matching shape.
        let bad =
            crate::family::triples_family([4, 4, 4], 2, Mode::Increasing, &[[2, 2, 2], [1, 1, 1]])
                .unwrap();
        assert!(matches!(
            product(&a, &bad),
            Err(ConstructError::Mismatch(_))
        ));
    }

    #[test]
    fn cyclic_boost_cubes_the_size() {
        let c = gallery(GalleryId::Comp5_3Cube).unwrap();
        let boosted = cyclic_boost(&c).unwrap();
        assert_eq!(boosted.len(), 125);
        assert_eq!(boosted.dims().sides(), &[27, 27, 27]);
        assert!(boosted.validate().valid);

        let one =
            crate::family::triples_family([1, 1, 1], 2, Mode::Increasing, &[[1, 1, 1]]).unwrap();
        let b = cyclic_boost(&one).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.dims().sides(), &[1, 1, 1]);
    }

    #[test]
    fn cyclic_boost_of_fig2b_beats_the_square_root_bound() {
        let f = gallery(GalleryId::Fig2b9).unwrap();
        let boosted = cyclic_boost(&f).unwrap();
        assert_eq!(boosted.len(), 729);
        assert_eq!(boosted.dims().sides(), &[80, 80, 80]);
        assert!(729.0 > 80f64.powf(1.5));
        // Validity is the expensive part of the chain; checked here once.
        assert!(boosted.validate().valid);
    }

    #[test]
    fn affine_code_small_cases_are_frozen() {
        let f = affine_code(2, 1).unwrap();
        assert_eq!(f.s(), 1);
        assert_eq!(f.dims().sides(), &[2, 2]);
        let expected = [[1, 1], [2, 2], [1, 2], [2, 1]];
        assert_eq!(f.len(), 4);
        for (t, e) in f.tuples().iter().zip(expected) {
            assert_eq!(t, &Tuple::from(e));
        }
        assert!(f.validate().valid);

        let f = affine_code(3, 1).unwrap();
        assert_eq!(f.len(), 9);
        assert_eq!(f.s(), 1);
        let expected: [[u32; 3]; 9] = [
            [1, 1, 1],
            [2, 2, 2],
            [3, 3, 3],
            [1, 2, 3],
            [2, 3, 1],
            [3, 1, 2],
            [1, 3, 2],
            [2, 1, 3],
            [3, 2, 1],
        ];
        for (t, e) in f.tuples().iter().zip(expected) {
            assert_eq!(t, &Tuple::from(e));
        }
        assert!(f.validate().valid);
    }

    #[test]
    fn affine_code_sizes_s_and_agreement_bounds() {
        for (q, k, expect_s) in [
            (2u32, 1u32, 1u32),
            (2, 2, 1),
            (3, 1, 1),
            (3, 2, 3),
            (4, 1, 2),
            (5, 1, 2),
        ] {
            let f = affine_code(q, k).unwrap();
            let r = (q as usize).pow(k);
            assert_eq!(f.arity(), r);
            assert_eq!(f.len(), (q as usize).pow(k + 1));
            assert_eq!(f.s(), expect_s, "s for (q,k)=({q},{k})");
            assert!(f.validate().valid, "affine({q},{k}) must be comparable");
            // Pairwise agreement bound: distinct tuples agree in at most
            // q^{k-1} coordinates.
            let bound = (q as usize).pow(k - 1);
            for i in 0..f.len() {
                for j in (i + 1)..f.len() {
                    let agree = f.tuples()[i]
                        .coords()
                        .iter()
                        .zip(f.tuples()[j].coords())
                        .filter(|(x, y)| x == y)
                        .count();
                    assert!(agree <= bound, "(q={q},k={k}) agreement {agree}");
                }
            }
        }
    }

    #[test]
    fn affine_code_rejects_bad_parameters() {
        assert!(matches!(
            affine_code(6, 1),
            Err(ConstructError::UnsupportedFieldOrder { given: 6 })
        ));
        assert!(matches!(
            affine_code(3, 0),
            Err(ConstructError::BadExponent)
        ));
        // 3^4 = 81 > 64 exceeds the arity cap.
        assert!(matches!(
            affine_code(3, 4),
            Err(ConstructError::TooLarge { .. })
        ));
    }

    #[test]
    fn gallery_fixtures_validate_at_their_advertised_shapes() {
        let cases: [(GalleryId, usize, &[Coord], Mode); 6] = [
            (GalleryId::N4Len8, 8, &[4, 4, 4], Mode::Increasing),
            (GalleryId::F42Len10, 10, &[3, 3, 3, 3], Mode::Increasing),
            (GalleryId::Comp5_3Cube, 5, &[3, 3, 3], Mode::Comparable),
            (GalleryId::Fig2a28, 28, &[9, 9, 9], Mode::Comparable),
            (GalleryId::Fig2b9, 9, &[4, 5, 4], Mode::Comparable),
            (GalleryId::Lastfig15, 15, &[7, 7, 8], Mode::Increasing),
        ];
        for (id, len, dims, mode) in cases {
            let f = gallery(id).unwrap();
            assert_eq!(f.len(), len, "{id}");
            assert_eq!(f.dims().sides(), dims, "{id}");
            assert_eq!(f.mode(), mode, "{id}");
            assert!(f.validate().valid, "{id}");
        }
    }

    #[test]
    fn gallery_ids_round_trip_through_strings() {
        for id in GalleryId::NAMED {
            assert_eq!(id.to_string().parse::<GalleryId>().unwrap(), id);
        }
        assert_eq!(
            "prek_sharp(4)".parse::<GalleryId>().unwrap(),
            GalleryId::PrekSharp(4)
        );
        assert!("mystery".parse::<GalleryId>().is_err());
        assert!("prek_sharp(x)".parse::<GalleryId>().is_err());
    }

    #[test]
    fn prek_sharp_has_size_4n_minus_5() {
        for n in 2..=8u32 {
            let f = gallery(GalleryId::PrekSharp(n)).unwrap();
            assert_eq!(f.len() as u32, 4 * n - 5, "n = {n}");
            assert!(f.validate().valid);
        }
        assert!(gallery(GalleryId::PrekSharp(1)).is_err());
    }

    #[test]
    fn fig2a_beats_the_three_halves_bound() {
        let f = gallery(GalleryId::Fig2a28).unwrap();
        // 28 exceeds 9^{3/2} = 27.
        assert!(f.len() as f64 > (f.dims().side(0) as f64).powf(1.5));
        assert_eq!(f.len(), 28);
        assert!(f.validate().valid);
        // The family is 2-comparable but cyclic (not orderable).
        assert!(!f.acyclic());
    }

    #[test]
    fn uneven_layer_fixture_shape() {
        let f = uneven_layer_family();
        assert!(f.validate().valid);
        assert!(!f.acyclic());
        // Layer counts along the third axis: 3, 2, 2, 3.
        let mut counts = [0usize; 4];
        for t in f.tuples() {
            counts[(t.coord(2) - 1) as usize] += 1;
        }
        assert_eq!(counts, [3, 2, 2, 3]);
    }

    #[test]
    fn ordered_increasing_chain_is_preserved_by_product() {
        // Spot-check the order-respecting injection on a tiny case.
        let a = base_interleave(2, 3, 2).unwrap();
        let p = product(&a, &a).unwrap();
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                assert!(less_s(&p.tuples()[i], &p.tuples()[j], 2));
            }
        }
    }
}
