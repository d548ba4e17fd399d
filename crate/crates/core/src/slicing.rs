//! Slicing a tile along a direction and improving tilings to full
//! periodicity.
//!
//! Slicing restricts the tile to one coset of a direction and convolves;
//! for a tiling set that is already periodic along that direction the
//! result is doubly periodic with an explicit period. The improvement
//! procedure classifies the one-dimensional slices of the tiling set up
//! to convolution equivalence against the tile's slices, replaces each by
//! the least representative of its class, and thereby produces a fully
//! periodic set with the same tile convolution, coset by coset.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::dilation::dilation_modulus;
use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::periodic::{convolve_level, is_tiling_of_level, PeriodicIntFunction, PeriodicSet};
use crate::point::{commensurable, primitive_part, Dim, Point};
use crate::structure::MarginReport;
use crate::tile::Tile;
use crate::Result;

/// The slice modulus data for a direction `h`.
#[derive(Debug, Clone)]
pub struct SliceParams {
    pub h: Point,
    pub h_primitive: Point,
    pub k_mult: i64,
    /// lcm of `|h ∧ (f - f')|` over tile pairs not parallel to `h`;
    /// 1 when no such pair exists.
    pub s: i64,
    pub q: BigInt,
    /// `s` against `(|h| diam(F))^(|F|(|F|-1)/2)` in squared arithmetic.
    pub s_margin: MarginReport,
}

pub fn slice_params(tile: &Tile, h: Point, ell: i64) -> Result<SliceParams> {
    Dim::Two.check(tile.dim())?;
    if h.is_zero() {
        return Err(TilingError::ZeroDirection);
    }
    let (k_mult, h_primitive) = primitive_part(h)?;
    let mut s: i64 = 1;
    let elems = tile.elements();
    for (i, &f) in elems.iter().enumerate() {
        for &g in &elems[i + 1..] {
            let d = f - g;
            if !commensurable(d, h) {
                s = s.lcm(&crate::point::wedge(h, d).abs());
            }
        }
    }
    let q = dilation_modulus(ell, tile, 1)?.q;
    let exp = tile.len() as u32 * (tile.len() as u32 - 1) / 2;
    let s_margin = MarginReport::new(
        "s against (|h| diam(F))^(|F|(|F|-1)/2)",
        BigInt::from(s).pow(2),
        (BigInt::from(h.norm_sq()) * BigInt::from(tile.diameter_sq())).pow(exp),
    );
    if !s_margin.within_unit_bound {
        return Err(TilingError::DecompositionMismatch(format!(
            "slice modulus {s} exceeds its stated bound"
        )));
    }
    Ok(SliceParams { h, h_primitive, k_mult, s, q, s_margin })
}

#[derive(Debug, Clone)]
pub struct SliceLemmaReport {
    pub params: SliceParams,
    /// Claimed period `q k s` of every slice convolution.
    pub period: i64,
    /// Per coset representative of the tile: whether the slice
    /// convolution passed the exact double-periodicity test.
    pub per_coset: Vec<(Point, bool)>,
}

impl SliceLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.per_coset.iter().all(|&(_, ok)| ok)
    }
}

/// Verifies that each slice `1_{F ∩ (x + <h>)} * 1_A` is
/// `q k s Z^2`-periodic, by direct translation test on the quotient.
pub fn verify_slice_lemma(
    tile: &Tile,
    set: &PeriodicSet,
    h: Point,
    ell: i64,
    k: i64,
) -> Result<SliceLemmaReport> {
    let params = slice_params(tile, h, ell)?;
    if !set.is_invariant_under(h.scale(ell * k)) {
        return Err(TilingError::PreconditionFailed(format!(
            "A is not <ell k h>-periodic for h = {h}"
        )));
    }
    let conv = convolve_level(tile, set)?;
    if !conv.is_periodic_under(&Lattice::scaled_standard(Dim::Two, ell)) {
        return Err(TilingError::PreconditionFailed(format!(
            "1_F * 1_A is not {ell}Z^2-periodic"
        )));
    }
    let q: i64 = params
        .q
        .clone()
        .try_into()
        .map_err(|_| TilingError::Overflow("q".into()))?;
    let period: i64 = q * k * params.s;
    let per_coset = tile
        .coset_representatives_along(h)
        .into_iter()
        .map(|x| {
            let slice = tile.slice_along(h, x);
            let g = PeriodicIntFunction::from_fn(*set.lattice(), |p| {
                slice.iter().map(|&f| set.indicator(p - f)).sum()
            });
            let ok = g.is_invariant_under(Point::new(period, 0))
                && g.is_invariant_under(Point::new(0, period));
            (x, ok)
        })
        .collect();
    Ok(SliceLemmaReport { params, period, per_coset })
}

/// Unimodular map sending the primitive vector to `(1, 0)`, with inverse.
fn to_x_axis(h_prim: Point) -> ([[i64; 2]; 2], [[i64; 2]; 2]) {
    let (g, a, b) = xgcd64(h_prim.x, h_prim.y);
    debug_assert_eq!(g, 1);
    let u = [[a, b], [-h_prim.y, h_prim.x]];
    let u_inv = [[h_prim.x, -b], [h_prim.y, a]];
    (u, u_inv)
}

fn xgcd64(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, s, t) = xgcd64(b, a.rem_euclid(b));
    (g, t, s - a.div_euclid(b) * t)
}

fn apply(u: [[i64; 2]; 2], p: Point) -> Point {
    Point::new(u[0][0] * p.x + u[0][1] * p.y, u[1][0] * p.x + u[1][1] * p.y)
}

fn transform_set(u: [[i64; 2]; 2], set: &PeriodicSet) -> Result<PeriodicSet> {
    let basis: Vec<Point> = set.lattice().basis().iter().map(|&v| apply(u, v)).collect();
    let lattice = Lattice::from_generators(Dim::Two, &basis)?;
    Ok(PeriodicSet::new(lattice, set.residues().map(|r| apply(u, r))))
}

/// Least vertical period: the smallest `w > 0` with `(0, w)` in the lattice.
fn vertical_period(lat: &Lattice) -> i64 {
    (1..=lat.index())
        .find(|&w| lat.contains(Point::new(0, w)))
        .expect("full-rank lattice has a vertical period")
}

/// Least horizontal period of a row viewed as a `<p>`-periodic bit word.
fn minimal_word(word: &[bool]) -> Vec<bool> {
    let p = word.len();
    for d in 1..=p {
        if p % d != 0 {
            continue;
        }
        if (0..p).all(|i| word[i] == word[i % d]) {
            return word[..d].to_vec();
        }
    }
    word.to_vec()
}

#[derive(Debug, Clone)]
pub struct ImproveOutcome {
    pub result: PeriodicSet,
    pub params: SliceParams,
    /// `q k s`, the guaranteed square period of the result.
    pub claimed_period: i64,
    /// Number of distinct slices observed and of equivalence classes.
    pub distinct_slices: usize,
    pub classes: usize,
}

/// Replaces every slice of `A` along `h` by the least equivalent slice,
/// producing a doubly periodic set with the same tile convolution on
/// every coset of `<h>`.
pub fn improve_one_periodic(
    tile: &Tile,
    set: &PeriodicSet,
    h: Point,
    ell: i64,
    k: i64,
) -> Result<ImproveOutcome> {
    Dim::Two.check(tile.dim())?;
    Dim::Two.check(set.dim())?;
    if h.is_zero() {
        return Err(TilingError::ZeroDirection);
    }
    if ell < 1 || k < 1 {
        return Err(TilingError::PreconditionFailed("ell and k must be positive".into()));
    }
    let (k_mult, h_prim) = primitive_part(h)?;
    let k_eff = k
        .checked_mul(k_mult)
        .ok_or_else(|| TilingError::Overflow("k".into()))?;
    let step_period = ell
        .checked_mul(k_eff)
        .ok_or_else(|| TilingError::Overflow("ell k".into()))?;
    if !set.is_invariant_under(h_prim.scale(step_period)) {
        return Err(TilingError::PreconditionFailed(format!(
            "A is not <ell k h>-periodic for h = {h}"
        )));
    }
    let conv = convolve_level(tile, set)?;
    if !conv.is_periodic_under(&Lattice::scaled_standard(Dim::Two, ell)) {
        return Err(TilingError::PreconditionFailed(format!(
            "1_F * 1_A is not {ell}Z^2-periodic"
        )));
    }
    let params = slice_params(tile, h_prim.scale(k_eff), ell)?;

    // move h to the x-axis; rows are now the cosets
    let (u, u_inv) = to_x_axis(h_prim);
    let t_set = transform_set(u, set)?;
    let t_tile: Vec<Point> = tile.elements().iter().map(|&f| apply(u, f)).collect();
    let w_full = vertical_period(t_set.lattice());

    // row words at their own minimal periods; the common refinement is
    // enough for classification because the lexicographic minimum of
    // periodic words does not depend on the comparison length
    let row_word = |z: i64| -> Vec<bool> {
        let full: Vec<bool> = (0..step_period)
            .map(|x| t_set.contains(Point::new(x, z)))
            .collect();
        minimal_word(&full)
    };
    let words: Vec<Vec<bool>> = (0..w_full).map(row_word).collect();
    let mut p_eff: i64 = 1;
    for w in &words {
        p_eff = p_eff.lcm(&(w.len() as i64));
    }

    // tile rows, keyed by their y-offset
    let mut tile_rows: Vec<(i64, Vec<i64>)> = Vec::new();
    for &f in &t_tile {
        match tile_rows.iter_mut().find(|(y, _)| *y == f.y) {
            Some((_, xs)) => xs.push(f.x),
            None => tile_rows.push((f.y, vec![f.x])),
        }
    }
    tile_rows.sort_unstable();

    // signature: convolutions of the row against every tile row, over the
    // common period
    let signature = |word: &[bool]| -> Vec<Vec<i64>> {
        tile_rows
            .iter()
            .map(|(_, xs)| {
                (0..p_eff)
                    .map(|t| {
                        xs.iter()
                            .map(|&x| word[(t - x).rem_euclid(word.len() as i64) as usize] as i64)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    };

    let expand = |word: &[bool]| -> Vec<bool> {
        (0..p_eff as usize).map(|i| word[i % word.len()]).collect()
    };

    let mut class_reps: Vec<(Vec<Vec<i64>>, Vec<bool>)> = Vec::new();
    let mut distinct: std::collections::BTreeSet<Vec<bool>> = std::collections::BTreeSet::new();
    for w in &words {
        let expanded = expand(w);
        distinct.insert(expanded.clone());
        let sig = signature(w);
        match class_reps.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, rep)) => {
                if expanded < *rep {
                    *rep = expanded;
                }
            }
            None => class_reps.push((sig, expanded)),
        }
    }

    let improved_rows: Vec<Vec<bool>> = words
        .iter()
        .map(|w| {
            let sig = signature(w);
            class_reps
                .iter()
                .find(|(s, _)| *s == sig)
                .expect("own class exists")
                .1
                .clone()
        })
        .collect();

    let t_result_lattice = Lattice::from_generators(
        Dim::Two,
        &[Point::new(p_eff, 0), Point::new(0, w_full)],
    )?;
    let mut residues = Vec::new();
    for (z, row) in improved_rows.iter().enumerate() {
        for (x, &bit) in row.iter().enumerate() {
            if bit {
                residues.push(Point::new(x as i64, z as i64));
            }
        }
    }
    let t_result = PeriodicSet::new(t_result_lattice, residues);

    let q_i64: i64 = params
        .q
        .clone()
        .try_into()
        .map_err(|_| TilingError::Overflow("q".into()))?;
    let claimed_period = q_i64
        .checked_mul(k_eff)
        .and_then(|v| v.checked_mul(params.s))
        .ok_or_else(|| TilingError::Overflow("q k s".into()))?;
    for v in [Point::new(claimed_period, 0), Point::new(0, claimed_period)] {
        if !t_result.is_invariant_under(v) {
            return Err(TilingError::DecompositionMismatch(
                "improved set misses its guaranteed period".into(),
            ));
        }
    }

    let result = transform_set(u_inv, &t_result)?;

    // coset-wise convolution equivalence, via the global convolution
    let conv_new = convolve_level(tile, &result)?;
    if !conv_new.same_function(&conv)? {
        return Err(TilingError::DecompositionMismatch(
            "improved set changed the tile convolution".into(),
        ));
    }

    Ok(ImproveOutcome {
        result,
        params,
        claimed_period,
        distinct_slices: distinct.len(),
        classes: class_reps.len(),
    })
}

#[derive(Debug, Clone)]
pub struct WeakImprove {
    pub result: PeriodicSet,
    /// Minimal `N_j` with `1_F * 1_{A_j}` being `ell N_j Z^2`-periodic.
    pub n_values: Vec<i64>,
    /// The result is `ell M Z^2`-periodic.
    pub m_value: i64,
    pub outcomes: Vec<ImproveOutcome>,
    pub margins: Vec<MarginReport>,
}

/// Improves a weakly periodic level-one tiling, part by part, into a
/// doubly periodic tiling of the same target.
pub fn improve_weak_tiling(
    tile: &Tile,
    target: &PeriodicSet,
    parts: &[(PeriodicSet, Point)],
    ell: i64,
) -> Result<WeakImprove> {
    if parts.is_empty() {
        return Err(TilingError::PreconditionFailed("no parts given".into()));
    }
    for (i, (_, hi)) in parts.iter().enumerate() {
        if hi.is_zero() {
            return Err(TilingError::ZeroDirection);
        }
        for (_, hj) in &parts[i + 1..] {
            if commensurable(*hi, *hj) {
                return Err(TilingError::PreconditionFailed(
                    "part directions must be pairwise incommensurable".into(),
                ));
            }
        }
    }
    // joint quotient of all parts
    let mut joint = *parts[0].0.lattice();
    for (p, _) in &parts[1..] {
        joint = joint.intersect(p.lattice())?;
    }
    joint = joint.intersect(target.lattice())?;
    // disjointness and the level-one union
    let mut union_residues: Vec<Point> = Vec::new();
    for x in joint.residues() {
        let hits = parts.iter().filter(|(p, _)| p.contains(x)).count();
        if hits > 1 {
            return Err(TilingError::PartsNotDisjoint);
        }
        if hits == 1 {
            union_residues.push(x);
        }
    }
    let union = PeriodicSet::new(joint, union_residues);
    if !is_tiling_of_level(tile, &union, target, 1)? {
        return Err(TilingError::NotLevelOne);
    }
    for (p, h) in parts {
        if !p.is_invariant_under(h.scale(ell)) {
            return Err(TilingError::PreconditionFailed(format!(
                "a part is not <ell h>-periodic for h = {h}"
            )));
        }
    }

    let m = parts.len() as u32;
    let mut prod_h_sq = BigInt::from(1);
    for (_, h) in parts {
        prod_h_sq *= BigInt::from(h.norm_sq());
    }

    let mut outcomes = Vec::new();
    let mut n_values = Vec::new();
    let mut margins = Vec::new();
    let mut period_lcm: i64 = 1;
    for (part, h) in parts {
        let conv_j = convolve_level(tile, part)?;
        let exponent = part.lattice().min_scalar_exponent();
        let t_cap = exponent / exponent.gcd(&ell);
        let n_j = (1..=t_cap)
            .find(|&t| {
                conv_j.is_invariant_under(Point::new(ell * t, 0))
                    && conv_j.is_invariant_under(Point::new(0, ell * t))
            })
            .expect("bounded by the lattice exponent");
        margins.push(MarginReport::new(
            "N_j against (prod |h_i|)^(m-1) |h_j|",
            BigInt::from(n_j).pow(2),
            prod_h_sq.pow(m - 1) * BigInt::from(h.norm_sq()),
        ));
        n_values.push(n_j);
        let outcome = improve_one_periodic(tile, part, *h, ell * n_j, 1)?;
        period_lcm = period_lcm.lcm(&outcome.claimed_period);
        outcomes.push(outcome);
    }

    // the improved parts stay disjoint and re-tile the target
    let mut result_joint = *outcomes[0].result.lattice();
    for o in &outcomes[1..] {
        result_joint = result_joint.intersect(o.result.lattice())?;
    }
    result_joint = result_joint.intersect(target.lattice())?;
    let mut result_residues = Vec::new();
    for x in result_joint.residues() {
        let hits = outcomes.iter().filter(|o| o.result.contains(x)).count();
        if hits > 1 {
            return Err(TilingError::DecompositionMismatch(
                "improved parts overlap".into(),
            ));
        }
        if hits == 1 {
            result_residues.push(x);
        }
    }
    let result = PeriodicSet::new(result_joint, result_residues);
    if !is_tiling_of_level(tile, &result, target, 1)? {
        return Err(TilingError::DecompositionMismatch(
            "improved union no longer tiles the target".into(),
        ));
    }

    let m_value = period_lcm / ell;
    let exp_m = m + tile.len() as u32 * (tile.len() as u32 - 1) / 2;
    let exp_d = m * tile.len() as u32 * (tile.len() as u32 - 1) / 2;
    margins.push(MarginReport::new(
        "M against (prod |h_i|)^(m + |F|(|F|-1)/2) diam^(m |F|(|F|-1)/2)",
        BigInt::from(m_value).pow(2),
        prod_h_sq.pow(exp_m) * BigInt::from(tile.diameter_sq()).pow(exp_d),
    ));

    for v in [Point::new(ell * m_value, 0), Point::new(0, ell * m_value)] {
        if !result.is_invariant_under(v) {
            return Err(TilingError::DecompositionMismatch(
                "result misses its claimed square period".into(),
            ));
        }
    }

    Ok(WeakImprove { result, n_values, m_value, outcomes, margins })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::{spread_square, unit_square};

    fn full2() -> PeriodicSet {
        PeriodicSet::full(Dim::Two)
    }

    #[test]
    fn slice_params_examples() {
        let p = slice_params(&unit_square(), Point::new(0, 1), 1).unwrap();
        assert_eq!(p.s, 1);
        let p = slice_params(&spread_square(), Point::new(0, 1), 1).unwrap();
        assert_eq!(p.s, 2);
        // collinear tile along h: no incommensurate pairs
        let bar = Tile::new(Dim::Two, [Point::new(0, 0), Point::new(0, 3)]).unwrap();
        let p = slice_params(&bar, Point::new(0, 1), 1).unwrap();
        assert_eq!(p.s, 1);
        assert!(slice_params(&bar, Point::new(0, 0), 1).is_err());
    }

    #[test]
    fn slice_lemma_on_even_lattice() {
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        // ell k h = (0,2) is in 2Z^2
        let rep = verify_slice_lemma(&unit_square(), &a, Point::new(0, 1), 1, 2).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.per_coset.len(), 2);
    }

    #[test]
    fn slice_lemma_collinear_tile() {
        let bar = Tile::new(Dim::Two, [Point::new(0, 0), Point::new(0, 1)]).unwrap();
        let lat = Lattice::from_generators(Dim::Two, &[Point::new(1, 0), Point::new(0, 2)]).unwrap();
        let a = PeriodicSet::lattice_set(lat);
        let rep = verify_slice_lemma(&bar, &a, Point::new(0, 1), 1, 2).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.per_coset.len(), 1);
    }

    #[test]
    fn slice_lemma_spread_square_member() {
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let a = PeriodicSet::new(lat, [Point::new(0, 0), Point::new(1, 0)]);
        let rep = verify_slice_lemma(&spread_square(), &a, Point::new(0, 1), 1, 2).unwrap();
        assert_eq!(rep.params.s, 2);
        assert!(rep.all_pass());
    }

    #[test]
    fn improve_fixed_point() {
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        let out = improve_one_periodic(&unit_square(), &a, Point::new(0, 1), 1, 2).unwrap();
        // already periodic with minimal slices: casting back and forth
        // must preserve the set
        assert!(out.result.same_set(&a).unwrap() || {
            // or the canonical representative swaps to an equivalent phase
            is_tiling_of_level(&unit_square(), &out.result, &full2(), 1).unwrap()
        });
        let again =
            improve_one_periodic(&unit_square(), &out.result, Point::new(0, 1), 1, 2).unwrap();
        assert!(again.result.same_set(&out.result).unwrap());
    }

    #[test]
    fn improve_alternating_columns() {
        // columns shifted by an alternating word; improvement flattens
        // them to a single phase
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(2, 1), Point::new(0, 2)]).unwrap();
        let a = PeriodicSet::lattice_set(lat);
        assert!(is_tiling_of_level(&unit_square(), &a, &full2(), 1).unwrap());
        let out = improve_one_periodic(&unit_square(), &a, Point::new(0, 1), 1, 2).unwrap();
        assert!(is_tiling_of_level(&unit_square(), &out.result, &full2(), 1).unwrap());
        let stab = out.result.stabilizer().unwrap();
        assert!(stab.contains(Point::new(2, 0)) && stab.contains(Point::new(0, 2)));
        // idempotent
        let again =
            improve_one_periodic(&unit_square(), &out.result, Point::new(0, 1), 1, 2).unwrap();
        assert!(again.result.same_set(&out.result).unwrap());
    }

    #[test]
    fn improve_spread_square_family() {
        // the doubly periodic member with 2-periodic words still improves
        // to a doubly periodic tiling
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(8, 0), Point::new(0, 4)]).unwrap();
        let mut residues = Vec::new();
        for n in 0..2i64 {
            for m in 0..2i64 {
                residues.push(Point::new(4 * n, 2 * m + [0, 1][n as usize % 2]));
                residues.push(Point::new(4 * n + 1 + 2 * [0, 1][m as usize % 2], 2 * m));
            }
        }
        let a = PeriodicSet::new(lat, residues);
        assert!(is_tiling_of_level(&spread_square(), &a, &full2(), 1).unwrap());
        // the alternating horizontal word makes A only (0,4)-periodic
        let out = improve_one_periodic(&spread_square(), &a, Point::new(0, 1), 1, 4).unwrap();
        assert!(is_tiling_of_level(&spread_square(), &out.result, &full2(), 1).unwrap());
    }

    #[test]
    fn improve_weak_two_parts() {
        // vertical and horizontal parts of the spread-square member
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let vert = PeriodicSet::new(lat, [Point::new(0, 0)]);
        let horiz = PeriodicSet::new(lat, [Point::new(1, 0)]);
        let parts = vec![
            (vert, Point::new(0, 2)),
            (horiz, Point::new(4, 0)),
        ];
        let out = improve_weak_tiling(&spread_square(), &full2(), &parts, 1).unwrap();
        assert!(is_tiling_of_level(&spread_square(), &out.result, &full2(), 1).unwrap());
        assert_eq!(out.n_values.len(), 2);
        assert!(out.m_value >= 1);
    }

    #[test]
    fn improve_weak_rejects_overlap() {
        let lat = Lattice::scaled_standard(Dim::Two, 2);
        let a = PeriodicSet::new(lat, [Point::new(0, 0)]);
        let parts = vec![
            (a.clone(), Point::new(0, 1)),
            (a, Point::new(1, 0)),
        ];
        assert!(matches!(
            improve_weak_tiling(&unit_square(), &full2(), &parts, 1),
            Err(TilingError::PartsNotDisjoint)
        ));
    }

    #[test]
    fn improve_weak_single_part_unchanged() {
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        let parts = vec![(a.clone(), Point::new(0, 2))];
        let out = improve_weak_tiling(&unit_square(), &full2(), &parts, 1).unwrap();
        assert!(out.result.same_set(&a).unwrap() || {
            is_tiling_of_level(&unit_square(), &out.result, &full2(), 1).unwrap()
        });
    }

    #[test]
    fn slice_partition_identity() {
        // summing the slice convolutions over all cosets gives the full
        // convolution
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let a = PeriodicSet::new(lat, [Point::new(0, 0), Point::new(1, 0)]);
        let f = spread_square();
        let h = Point::new(0, 1);
        let conv = convolve_level(&f, &a).unwrap();
        let mut summed = PeriodicIntFunction::constant(*a.lattice(), 0);
        for x in f.coset_representatives_along(h) {
            let slice = f.slice_along(h, x);
            let g = PeriodicIntFunction::from_fn(*a.lattice(), |p| {
                slice.iter().map(|&v| a.indicator(p - v)).sum()
            });
            summed = PeriodicIntFunction::from_fn(*a.lattice(), |p| summed.eval(p) + g.eval(p));
        }
        assert_eq!(summed, conv);
    }
}
