//! An eight-element tile with a level-4 tiling of `Z^2` that is not
//! weakly periodic, built from a 4-periodic sign pattern and the carry
//! function of Beatty sequences of a quadratic irrational.
//!
//! All arithmetic is exact: floors of `sqrt(D) * m` come from integer
//! square roots, so membership is decidable at every point. The
//! non-weak-periodicity itself is certified only as finite-window
//! evidence; the full proof is infinitary.

use serde::Serialize;

use crate::error::TilingError;
use crate::point::{commensurable, isqrt_u128, Dim, Point};
use crate::tile::Tile;
use crate::Result;

/// `sqrt(D)` for a non-square positive integer `D`, with exact floors of
/// all integer multiples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadraticIrrational {
    d: i64,
}

impl QuadraticIrrational {
    pub fn new(d: i64) -> Result<QuadraticIrrational> {
        if d < 2 {
            return Err(TilingError::PreconditionFailed(
                "D must be at least 2".into(),
            ));
        }
        let r = isqrt_u128(d as u128) as i64;
        if r * r == d {
            return Err(TilingError::PreconditionFailed(format!(
                "D = {d} is a perfect square; sqrt(D) must be irrational"
            )));
        }
        Ok(QuadraticIrrational { d })
    }

    pub fn sqrt2() -> QuadraticIrrational {
        QuadraticIrrational { d: 2 }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `floor(sqrt(D) * m)`, exact for all integers `m`. For `m < 0` this
    /// is `-floor(sqrt(D) * |m|) - 1`, valid because `sqrt(D) * m` is
    /// never an integer for `m != 0`.
    pub fn floor_multiple(&self, m: i64) -> i64 {
        if m == 0 {
            return 0;
        }
        let am = m.unsigned_abs() as u128;
        let floor_pos = isqrt_u128(self.d as u128 * am * am) as i64;
        if m > 0 {
            floor_pos
        } else {
            -floor_pos - 1
        }
    }
}

/// The 4Z^2-periodic sign pattern `(-1)^(floor(m2/2) + m1)`.
pub fn chi(m1: i64, m2: i64) -> i64 {
    let e = m2.div_euclid(2) + m1;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The carry `floor(a(m1+m2)) - floor(a m1) - floor(a m2)`, always 0 or 1.
pub fn carry(alpha: QuadraticIrrational, m1: i64, m2: i64) -> i64 {
    let c = alpha.floor_multiple(m1 + m2) - alpha.floor_multiple(m1) - alpha.floor_multiple(m2);
    debug_assert!(c == 0 || c == 1, "carry out of range");
    c
}

/// The eight-element tile `{t1 (0,2) + t2 (1,0) + t3 (2,-2)}`.
pub fn tile_f8() -> Tile {
    let gens = [Point::new(0, 2), Point::new(1, 0), Point::new(2, -2)];
    let mut elems = Vec::with_capacity(8);
    for t1 in 0..2 {
        for t2 in 0..2 {
            for t3 in 0..2 {
                elems.push(gens[0].scale(t1) + gens[1].scale(t2) + gens[2].scale(t3));
            }
        }
    }
    Tile::new(Dim::Two, elems).expect("eight distinct vectors")
}

/// The three two-point tiles whose convolution gives `1_F8`.
pub fn f8_factors() -> [[Point; 2]; 3] {
    [
        [Point::new(0, 0), Point::new(0, 2)],
        [Point::new(0, 0), Point::new(1, 0)],
        [Point::new(0, 0), Point::new(2, -2)],
    ]
}

/// Membership in the level-4 tiling set: `carry` where the sign pattern
/// is `+1` and `1 - carry` where it is `-1`.
pub fn membership_a(alpha: QuadraticIrrational, m1: i64, m2: i64) -> i64 {
    let c = carry(alpha, m1, m2);
    if chi(m1, m2) == 1 {
        c
    } else {
        1 - c
    }
}

/// The counterexample tiling as an object: exact membership oracle plus
/// its tile.
#[derive(Debug, Clone)]
pub struct CounterexampleTiling {
    pub alpha: QuadraticIrrational,
    pub tile: Tile,
}

impl CounterexampleTiling {
    pub fn new(alpha: QuadraticIrrational) -> CounterexampleTiling {
        CounterexampleTiling { alpha, tile: tile_f8() }
    }

    pub fn contains(&self, p: Point) -> bool {
        membership_a(self.alpha, p.x, p.y) == 1
    }
}

/// Precomputed floors for window scans; membership becomes three table
/// lookups.
struct FloorCache {
    offset: i64,
    vals: Vec<i64>,
}

impl FloorCache {
    fn new(alpha: QuadraticIrrational, extent: i64) -> FloorCache {
        let offset = extent;
        let vals = (-extent..=extent).map(|m| alpha.floor_multiple(m)).collect();
        FloorCache { offset, vals }
    }

    fn floor(&self, m: i64) -> i64 {
        self.vals[(m + self.offset) as usize]
    }

    fn member(&self, m1: i64, m2: i64) -> i64 {
        let c = self.floor(m1 + m2) - self.floor(m1) - self.floor(m2);
        if chi(m1, m2) == 1 {
            c
        } else {
            1 - c
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiCancellationReport {
    pub window_radius: i64,
    /// One entry per two-point factor; true means the convolution is
    /// identically zero.
    pub identities: Vec<bool>,
}

impl ChiCancellationReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|&b| b)
    }
}

/// Verifies the three sign-pattern cancellations. The pattern is
/// 4Z^2-periodic, so the 4x4 check at radius >= 4 is already complete;
/// larger radii re-verify the periodic extension.
pub fn verify_chi_cancellations(window_radius: i64) -> Result<ChiCancellationReport> {
    if window_radius < 4 {
        return Err(TilingError::PreconditionFailed(
            "window radius must be at least 4".into(),
        ));
    }
    let identities = f8_factors()
        .iter()
        .map(|pair| {
            let mut ok = true;
            for x in -window_radius..=window_radius {
                for y in -window_radius..=window_radius {
                    let s: i64 = pair
                        .iter()
                        .map(|&v| chi(x - v.x, y - v.y))
                        .sum();
                    if s != 0 {
                        ok = false;
                    }
                }
            }
            ok
        })
        .collect();
    Ok(ChiCancellationReport { window_radius, identities })
}

#[derive(Debug, Clone, Serialize)]
pub struct Level4Report {
    pub d: i64,
    pub radius: i64,
    pub points_checked: u64,
    pub failures: Vec<Point>,
}

impl Level4Report {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Certifies `1_F8 * 1_A = 4` at every point of the given window. The
/// identity holds on all of `Z^2`; the window is the executable evidence.
pub fn verify_level4(alpha: QuadraticIrrational, radius: i64) -> Result<Level4Report> {
    let tile = tile_f8();
    let margin = 4; // tile coordinates range over [0,3] x [-2,2]
    if radius < margin {
        return Err(TilingError::PreconditionFailed(
            "radius must exceed the tile diameter".into(),
        ));
    }
    let cache = FloorCache::new(alpha, 2 * (radius + margin) + 2);
    let mut failures = Vec::new();
    let mut points = 0u64;
    for x in -radius..=radius {
        for y in -radius..=radius {
            points += 1;
            let mut s = 0i64;
            for &f in tile.elements() {
                s += cache.member(x - f.x, y - f.y);
            }
            if s != 4 {
                failures.push(Point::new(x, y));
            }
        }
    }
    Ok(Level4Report {
        d: alpha.d(),
        radius,
        points_checked: points,
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NonperiodicityReport {
    pub radius: i64,
    pub h_norm_cap_sq: i64,
    /// For each direction (canonical sign, norm within cap), a window
    /// point where translation by it changes membership.
    pub translation_violations: Vec<(Point, Point)>,
    /// Directions with no violation found in the window (empty is the
    /// expected outcome).
    pub unrefuted_directions: Vec<Point>,
    /// For each incommensurable pair of directions, a point of A that can
    /// join neither part of a two-piece one-periodic split.
    pub pair_refutations: Vec<(Point, Point, Point)>,
    pub unrefuted_pairs: Vec<(Point, Point)>,
}

impl NonperiodicityReport {
    pub fn fully_refuted(&self) -> bool {
        self.unrefuted_directions.is_empty() && self.unrefuted_pairs.is_empty()
    }
}

fn directions_within(cap_sq: i64) -> Vec<Point> {
    let r = crate::point::isqrt_i64(cap_sq);
    let mut out = Vec::new();
    for x in 0..=r {
        for y in -r..=r {
            let p = Point::new(x, y);
            if p.is_zero() || p.norm_sq() > cap_sq {
                continue;
            }
            if p.canonical_sign() == p {
                out.push(p);
            }
        }
    }
    out.sort_unstable_by_key(|p| (p.norm_sq(), std::cmp::Reverse(*p)));
    out
}

/// Window evidence that the level-4 set is not one-periodic and not a
/// union of two one-periodic sets, for all directions up to the cap.
pub fn nonperiodicity_evidence(
    alpha: QuadraticIrrational,
    radius: i64,
    h_norm_cap: i64,
) -> Result<NonperiodicityReport> {
    if radius < 8 || h_norm_cap < 1 {
        return Err(TilingError::PreconditionFailed(
            "radius must be at least 8 and the cap positive".into(),
        ));
    }
    let cap_sq = h_norm_cap * h_norm_cap;
    let cache = FloorCache::new(alpha, 2 * (radius + h_norm_cap) + 2);
    let dirs = directions_within(cap_sq);

    let mut translation_violations = Vec::new();
    let mut unrefuted_directions = Vec::new();
    for &h in &dirs {
        let mut found = None;
        'scan: for x in -radius..=radius - h.x.abs() {
            for y in (-radius + h.y.abs())..=(radius - h.y.abs()) {
                if cache.member(x, y) != cache.member(x + h.x, y + h.y) {
                    found = Some(Point::new(x, y));
                    break 'scan;
                }
            }
        }
        match found {
            Some(w) => translation_violations.push((h, w)),
            None => unrefuted_directions.push(h),
        }
    }

    // two-piece refutation: a point of A that exits A along both lines
    let mut pair_refutations = Vec::new();
    let mut unrefuted_pairs = Vec::new();
    for (i, &h1) in dirs.iter().enumerate() {
        for &h2 in &dirs[i + 1..] {
            if commensurable(h1, h2) {
                continue;
            }
            let mut found = None;
            'outer: for x in -radius / 2..=radius / 2 {
                for y in -radius / 2..=radius / 2 {
                    if cache.member(x, y) != 1 {
                        continue;
                    }
                    let exits = |h: Point| -> bool {
                        let mut n = 1i64;
                        loop {
                            let (px, py) = (x + n * h.x, y + n * h.y);
                            if px.abs() > radius || py.abs() > radius {
                                return false;
                            }
                            if cache.member(px, py) == 0 {
                                return true;
                            }
                            n += 1;
                        }
                    };
                    if exits(h1) && exits(h2) {
                        found = Some(Point::new(x, y));
                        break 'outer;
                    }
                }
            }
            match found {
                Some(w) => pair_refutations.push((h1, h2, w)),
                None => unrefuted_pairs.push((h1, h2)),
            }
        }
    }

    Ok(NonperiodicityReport {
        radius,
        h_norm_cap_sq: cap_sq,
        translation_violations,
        unrefuted_directions,
        pair_refutations,
        unrefuted_pairs,
    })
}
