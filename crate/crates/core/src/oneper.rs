//! Non-one-periodic tilings: chameleon slices, slide tilings, and the
//! bound-relative decision procedure.
//!
//! Every tiling of a periodic target arises from a doubly periodic
//! scaffold by sliding one-dimensional slices to convolution-equivalent
//! replacements. A slice of a one-directional part is a chameleon when a
//! different replacement with the same tile convolution exists; two
//! chameleons in incommensurable directions combine into a tiling that is
//! periodic in no direction. The decision enumerates scaffold tilings
//! over a lattice schedule, splits each into direction-labelled parts in
//! every possible way, and scans the parts for chameleons; verdicts are
//! relative to the searched bounds because the theory's period constants
//! are not explicit.

use std::collections::BTreeMap;

use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::periodic::{is_tiling_of_level, PeriodicSet};
use crate::point::{commensurable, primitive_part, Dim, Point};
use crate::search2d::{build_torus_instance, search_tilings_on_torus, SearchLimit};
use crate::tile::{spread_square, unit_square, Tile};
use crate::Result;

/// A one-periodic replacement installed on one coset line of a scaffold.
/// The word gives the new pattern of the whole coset; it must have the
/// same tile convolution as the scaffold's own slice there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    /// Primitive direction of the coset line.
    pub direction: Point,
    /// A point of the line.
    pub anchor: Point,
    /// Word length in steps of the primitive direction.
    pub period: i64,
    /// `word[t]` is membership at `anchor + t * direction`.
    pub word: Vec<bool>,
}

impl Substitution {
    /// Step coordinate of `p` on the line, when `p` lies on it.
    fn step_of(&self, p: Point) -> Option<i64> {
        let d = p - self.anchor;
        if d.is_zero() {
            return Some(0);
        }
        if !commensurable(d, self.direction) {
            return None;
        }
        if self.direction.x != 0 {
            (d.x % self.direction.x == 0 && self.direction.scale(d.x / self.direction.x) == d)
                .then(|| d.x / self.direction.x)
        } else {
            (d.y % self.direction.y == 0 && self.direction.scale(d.y / self.direction.y) == d)
                .then(|| d.y / self.direction.y)
        }
    }

    fn member(&self, t: i64) -> bool {
        self.word[t.rem_euclid(self.period) as usize]
    }
}

/// A doubly periodic scaffold with finitely many coset substitutions.
/// Substitutions take precedence in list order at the finitely many
/// points where their lines cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideTiling {
    pub scaffold: PeriodicSet,
    pub substitutions: Vec<Substitution>,
}

impl SlideTiling {
    pub fn periodic(scaffold: PeriodicSet) -> SlideTiling {
        SlideTiling { scaffold, substitutions: Vec::new() }
    }

    /// Exact membership at any point.
    pub fn contains(&self, p: Point) -> bool {
        for sub in &self.substitutions {
            if let Some(t) = sub.step_of(p) {
                return sub.member(t);
            }
        }
        self.scaffold.contains(p)
    }

    /// The underlying periodic set when no substitutions are installed.
    pub fn as_periodic_set(&self) -> Option<&PeriodicSet> {
        self.substitutions.is_empty().then_some(&self.scaffold)
    }

    /// `1_F * 1_A` at one point.
    pub fn cover_count(&self, tile: &Tile, x: Point) -> i64 {
        tile.elements()
            .iter()
            .map(|&f| self.contains(x - f) as i64)
            .sum()
    }
}

/// A slice admitting a distinct convolution-equivalent replacement.
#[derive(Debug, Clone)]
pub struct ChameleonReport {
    /// The full period vector of admissible replacements.
    pub direction: Point,
    pub direction_primitive: Point,
    /// Coset representative of the line.
    pub anchor: Point,
    /// Joint period (in primitive steps) of the original slice and the
    /// replacement.
    pub period: i64,
    /// The part's slice on the line, over the joint period.
    pub original: Vec<bool>,
    /// The distinct equivalent replacement, over the joint period.
    pub alternative: Vec<bool>,
    /// Matched convolution values on the strip around the line.
    pub certificate: Vec<(Point, i64)>,
}

/// Enumerates the chameleon slices of a doubly periodic part along the
/// direction `h`: every coset line is sliced, and every `<h>`-periodic
/// subset of the line is tested for tile-convolution equality against
/// the slice. Exhaustive within the period of `h`.
pub fn find_chameleon_slices(
    tile: &Tile,
    part: &PeriodicSet,
    h: Point,
) -> Result<Vec<ChameleonReport>> {
    Dim::Two.check(tile.dim())?;
    Dim::Two.check(part.dim())?;
    if h.is_zero() {
        return Err(TilingError::ZeroDirection);
    }
    let (k_steps, h_prim) = primitive_part(h)?;
    let lat = part.lattice();

    // orbit length of the primitive direction in the quotient
    let t_line = {
        let mut t = 1i64;
        let mut p = lat.reduce(h_prim);
        while p != Point::new(0, 0) {
            p = lat.reduce(p + h_prim);
            t += 1;
        }
        t
    };
    let joint = num_integer::lcm(k_steps, t_line);

    // orbit representatives of the quotient under the line translation
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for r in lat.residues() {
        if seen.contains(&r) {
            continue;
        }
        reps.push(r);
        let mut p = r;
        loop {
            seen.insert(p);
            p = lat.reduce(p + h_prim);
            if p == r {
                break;
            }
        }
    }

    let mut out = Vec::new();
    for y in reps {
        let original: Vec<bool> = (0..joint)
            .map(|t| part.contains(y + h_prim.scale(t)))
            .collect();
        if original.iter().all(|&b| !b) {
            // an empty slice has positive-density equivalents only
            continue;
        }
        let conv_of = |word: &dyn Fn(i64) -> bool, z: Point| -> i64 {
            tile.elements()
                .iter()
                .filter_map(|&f| {
                    let d = z - f - y;
                    let t = if d.is_zero() {
                        Some(0)
                    } else if commensurable(d, h_prim) {
                        if h_prim.x != 0 {
                            (d.x % h_prim.x == 0).then(|| d.x / h_prim.x)
                        } else {
                            (d.y % h_prim.y == 0).then(|| d.y / h_prim.y)
                        }
                    } else {
                        None
                    };
                    t.map(|t| word(t) as i64)
                })
                .sum()
        };
        // strip points where either convolution can be nonzero
        let mut strip: Vec<Point> = Vec::new();
        for t in 0..joint {
            for &f in tile.elements() {
                let z = y + h_prim.scale(t) + f;
                if !strip.contains(&z) {
                    strip.push(z);
                }
            }
        }
        let orig_fn = |t: i64| original[t.rem_euclid(joint) as usize];
        let base: Vec<i64> = strip.iter().map(|&z| conv_of(&orig_fn, z)).collect();

        for bits in 0u64..(1u64 << k_steps) {
            let word: Vec<bool> = (0..k_steps).map(|i| (bits >> i) & 1 == 1).collect();
            let cand: Vec<bool> = (0..joint)
                .map(|t| word[(t % k_steps) as usize])
                .collect();
            if cand == original {
                continue;
            }
            let cand_fn = |t: i64| cand[t.rem_euclid(joint) as usize];
            let vals: Vec<i64> = strip.iter().map(|&z| conv_of(&cand_fn, z)).collect();
            if vals == base {
                out.push(ChameleonReport {
                    direction: h,
                    direction_primitive: h_prim,
                    anchor: y,
                    period: joint,
                    original: original.clone(),
                    alternative: cand,
                    certificate: strip.iter().copied().zip(vals).collect(),
                });
            }
        }
    }
    Ok(out)
}

/// A verified non-one-periodic witness.
#[derive(Debug, Clone)]
pub struct SlideWitness {
    pub tiling: SlideTiling,
    pub chameleons: (ChameleonReport, ChameleonReport),
    /// Radius of the window on which the level identity was verified.
    pub window: i64,
    /// Per direction within the cap, a point where translation fails.
    pub aperiodicity: Vec<(Point, Point)>,
}

/// Builds the slide tiling that installs two chameleon replacements on
/// incommensurable lines, verifies the level identity on a window, and
/// certifies the failure of every single period up to the norm cap.
pub fn build_slide_witness(
    tile: &Tile,
    target: &PeriodicSet,
    k: i64,
    scaffold: &PeriodicSet,
    c1: &ChameleonReport,
    c2: &ChameleonReport,
    h_norm_cap_sq: i64,
) -> Result<SlideWitness> {
    if commensurable(c1.direction_primitive, c2.direction_primitive) {
        return Err(TilingError::CommensurableDirections);
    }
    for c in [c1, c2] {
        if c.original == c.alternative {
            return Err(TilingError::PreconditionFailed(
                "a chameleon replacement must differ from the original slice".into(),
            ));
        }
    }

    let make_sub = |c: &ChameleonReport| -> Result<Substitution> {
        // whole-line word: scaffold minus the part's slice plus the
        // replacement
        let word: Vec<bool> = (0..c.period)
            .map(|t| {
                let p = c.anchor + c.direction_primitive.scale(t);
                let scaffold_bit = scaffold.contains(p);
                let orig = c.original[t as usize];
                let alt = c.alternative[t as usize];
                if alt && scaffold_bit && !orig {
                    return Err(TilingError::DecompositionMismatch(
                        "replacement collides with another part on its line".into(),
                    ));
                }
                Ok((scaffold_bit && !orig) || alt)
            })
            .collect::<Result<_>>()?;
        Ok(Substitution {
            direction: c.direction_primitive,
            anchor: c.anchor,
            period: c.period,
            word,
        })
    };

    let subs = vec![make_sub(c1)?, make_sub(c2)?];
    // the two lines cross in at most one point; list order decides it,
    // so try both orders against the window identity
    let radius = witness_radius(tile, c1, c2);
    let mut chosen: Option<SlideTiling> = None;
    for order in [[0usize, 1], [1, 0]] {
        let cand = SlideTiling {
            scaffold: scaffold.clone(),
            substitutions: vec![subs[order[0]].clone(), subs[order[1]].clone()],
        };
        if verify_window_level(tile, &cand, target, k, radius) {
            chosen = Some(cand);
            break;
        }
    }
    let tiling = chosen.ok_or_else(|| {
        TilingError::DecompositionMismatch(
            "substituted tiling failed the window level identity".into(),
        )
    })?;

    let aperiodicity = aperiodicity_certificate(&tiling, h_norm_cap_sq, radius)?;
    Ok(SlideWitness {
        tiling,
        chameleons: (c1.clone(), c2.clone()),
        window: radius,
        aperiodicity,
    })
}

fn witness_radius(tile: &Tile, c1: &ChameleonReport, c2: &ChameleonReport) -> i64 {
    let diam = crate::point::isqrt_i64(tile.diameter_sq()) + 1;
    let reach = |c: &ChameleonReport| {
        c.period * (c.direction_primitive.x.abs().max(c.direction_primitive.y.abs()))
            + c.anchor.x.abs().max(c.anchor.y.abs())
    };
    4 * reach(c1).max(reach(c2)).max(diam) + diam + 4
}

fn verify_window_level(
    tile: &Tile,
    tiling: &SlideTiling,
    target: &PeriodicSet,
    k: i64,
    radius: i64,
) -> bool {
    for x in -radius..=radius {
        for y in -radius..=radius {
            let p = Point::new(x, y);
            if tiling.cover_count(tile, p) != k * target.indicator(p) {
                return false;
            }
        }
    }
    true
}

fn aperiodicity_certificate(
    tiling: &SlideTiling,
    h_norm_cap_sq: i64,
    mut radius: i64,
) -> Result<Vec<(Point, Point)>> {
    let cap = crate::point::isqrt_i64(h_norm_cap_sq);
    let mut dirs: Vec<Point> = Vec::new();
    for x in 0..=cap {
        for y in -cap..=cap {
            let p = Point::new(x, y);
            if !p.is_zero() && p.norm_sq() <= h_norm_cap_sq && p.canonical_sign() == p {
                dirs.push(p);
            }
        }
    }
    dirs.sort_unstable_by_key(|p| (p.norm_sq(), std::cmp::Reverse(*p)));
    let mut out = Vec::new();
    'dirs: for h in dirs {
        for _ in 0..3 {
            for x in -radius..=radius {
                for y in -radius..=radius {
                    let p = Point::new(x, y);
                    if tiling.contains(p) != tiling.contains(p + h) {
                        out.push((h, p));
                        continue 'dirs;
                    }
                }
            }
            radius *= 2;
        }
        return Err(TilingError::DecompositionMismatch(format!(
            "no translation failure found for {h} within the search window"
        )));
    }
    Ok(out)
}

/// Bounds the decision was made under.
#[derive(Debug, Clone)]
pub struct DecisionBounds {
    pub lattices: Vec<Lattice>,
    pub h_norm_cap_sq: i64,
    pub scaffolds_examined: usize,
}

#[derive(Debug)]
pub enum OnePeriodicDecision {
    /// Every examined scaffold, under every part assignment, had
    /// chameleons in at most one direction class.
    AllOnePeriodicUnderBounds(DecisionBounds),
    /// A verified non-one-periodic tiling.
    NonOnePeriodicExists(Box<SlideWitness>),
    /// No periodic tiling exists within the schedule at all.
    NoTiling,
}

const MAX_ASSIGNMENTS: u64 = 200_000;

/// Decides, relative to the given scaffold schedule and direction cap,
/// whether the tile admits a non-one-periodic tiling of the target.
pub fn decide_non_one_periodic(
    tile: &Tile,
    target: &PeriodicSet,
    scaffold_lattices: &[Lattice],
    direction_cap_sq: i64,
) -> Result<OnePeriodicDecision> {
    Dim::Two.check(tile.dim())?;
    if scaffold_lattices.is_empty() {
        return Err(TilingError::PreconditionFailed("empty scaffold schedule".into()));
    }
    let classes = tile.direction_classes();
    let m = classes.len();
    let dirs: Vec<Point> = classes.iter().map(|(d, _)| *d).collect();

    let mut scaffolds_examined = 0usize;
    let mut any_tiling = false;
    let stab = target.stabilizer()?;

    for lattice in scaffold_lattices {
        if !lattice.is_sublattice_of(&stab) {
            continue;
        }
        let inst = build_torus_instance(tile, target, lattice, 1)?;
        let tilings = search_tilings_on_torus(&inst, SearchLimit::All);
        any_tiling |= !tilings.is_empty();
        for scaffold in &tilings {
            scaffolds_examined += 1;
            if m < 2 {
                continue;
            }
            let residues: Vec<Point> = scaffold.residues().collect();
            let n = residues.len();
            if (m as u64).pow(n as u32) > MAX_ASSIGNMENTS {
                return Err(TilingError::PreconditionFailed(format!(
                    "scaffold with {n} residues exceeds the partition enumeration cap"
                )));
            }
            // memoized chameleon scan per (part residues, class)
            let mut memo: BTreeMap<(Vec<Point>, usize), Option<ChameleonReport>> = BTreeMap::new();
            let mut scan = |part_residues: &[Point], j: usize| -> Result<Option<ChameleonReport>> {
                let key = (part_residues.to_vec(), j);
                if let Some(hit) = memo.get(&key) {
                    return Ok(hit.clone());
                }
                let part = PeriodicSet::new(*lattice, part_residues.iter().copied());
                let mut found = None;
                let mut t = 1i64;
                while (dirs[j].scale(t)).norm_sq() <= direction_cap_sq {
                    let reports = find_chameleon_slices(tile, &part, dirs[j].scale(t))?;
                    if let Some(r) = reports.into_iter().next() {
                        found = Some(r);
                        break;
                    }
                    t += 1;
                }
                memo.insert(key, found.clone());
                Ok(found)
            };

            let mut assignment = vec![0usize; n];
            loop {
                // group this assignment's parts
                let mut parts: Vec<Vec<Point>> = vec![Vec::new(); m];
                for (i, &r) in residues.iter().enumerate() {
                    parts[assignment[i]].push(r);
                }
                let mut hits: Vec<ChameleonReport> = Vec::new();
                for (j, part) in parts.iter().enumerate() {
                    if part.is_empty() {
                        continue;
                    }
                    if let Some(rep) = scan(part, j)? {
                        hits.push(rep);
                        if hits.len() == 2 {
                            break;
                        }
                    }
                }
                if hits.len() >= 2 {
                    let witness = build_slide_witness(
                        tile,
                        target,
                        1,
                        scaffold,
                        &hits[0],
                        &hits[1],
                        direction_cap_sq,
                    )?;
                    return Ok(OnePeriodicDecision::NonOnePeriodicExists(Box::new(witness)));
                }
                // next assignment in base m
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    assignment[i] += 1;
                    if assignment[i] < m {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }

    if !any_tiling {
        return Ok(OnePeriodicDecision::NoTiling);
    }
    Ok(OnePeriodicDecision::AllOnePeriodicUnderBounds(DecisionBounds {
        lattices: scaffold_lattices.to_vec(),
        h_norm_cap_sq: direction_cap_sq,
        scaffolds_examined,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlideFamilyKind {
    /// Squares in shifted columns: `{(2n, 2m + a(n))}`.
    A1,
    /// Interlocking columns and rows:
    /// `{(4n, 2m + a(n))} ∪ {(4n + 1 + 2 b(m), 2m)}`.
    A2,
}

/// Builds a member of one of the two slide families from finite words,
/// extended periodically, and verifies it tiles at level one.
pub fn generate_slide_family(
    kind: SlideFamilyKind,
    a_word: &[bool],
    b_word: &[bool],
) -> Result<SlideTiling> {
    if a_word.is_empty() || b_word.is_empty() {
        return Err(TilingError::PreconditionFailed("words must be nonempty".into()));
    }
    let la = a_word.len() as i64;
    let lb = b_word.len() as i64;
    let (tile, set) = match kind {
        SlideFamilyKind::A1 => {
            let lattice = Lattice::from_generators(
                Dim::Two,
                &[Point::new(2 * la, 0), Point::new(0, 2)],
            )?;
            let residues = (0..la).map(|n| Point::new(2 * n, a_word[n as usize] as i64));
            (unit_square(), PeriodicSet::new(lattice, residues))
        }
        SlideFamilyKind::A2 => {
            let lattice = Lattice::from_generators(
                Dim::Two,
                &[Point::new(4 * la, 0), Point::new(0, 2 * lb)],
            )?;
            let mut residues = Vec::new();
            for n in 0..la {
                for m in 0..lb {
                    residues.push(Point::new(4 * n, 2 * m + a_word[n as usize] as i64));
                }
            }
            for n in 0..la {
                for m in 0..lb {
                    residues.push(Point::new(
                        4 * n + 1 + 2 * b_word[m as usize] as i64,
                        2 * m,
                    ));
                }
            }
            (spread_square(), PeriodicSet::new(lattice, residues))
        }
    };
    if !is_tiling_of_level(&tile, &set, &PeriodicSet::full(Dim::Two), 1)? {
        return Err(TilingError::DecompositionMismatch(
            "slide family member failed its level-one check".into(),
        ));
    }
    Ok(SlideTiling::periodic(set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search2d::default_lattice_schedule;

    fn full2() -> PeriodicSet {
        PeriodicSet::full(Dim::Two)
    }

    #[test]
    fn unit_square_column_shift_is_a_chameleon() {
        // the column slices of the even lattice can slide by one step;
        // this is the one-parameter family of square tilings, so the
        // report is nonempty in the vertical direction
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        let reports = find_chameleon_slices(&unit_square(), &a, Point::new(0, 2)).unwrap();
        assert!(!reports.is_empty());
        let r = &reports[0];
        assert_ne!(r.original, r.alternative);
        // the shifted column: original occupies even steps, the
        // alternative odd steps
        assert_eq!(r.original.iter().filter(|&&b| b).count(), 1);
        assert_eq!(r.alternative.iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn no_chameleon_at_period_one() {
        // with the bare primitive period the only candidates are the
        // empty and the full line, neither equivalent to a proper column
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        let reports = find_chameleon_slices(&unit_square(), &a, Point::new(0, 1)).unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn spread_square_vertical_part_chameleons() {
        // the column part of the interlocking tiling slides by (0,1)
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let vert = PeriodicSet::new(lat, [Point::new(0, 0)]);
        let reports = find_chameleon_slices(&spread_square(), &vert, Point::new(0, 2)).unwrap();
        assert!(!reports.is_empty());
    }

    #[test]
    fn spread_square_horizontal_part_chameleons() {
        // the row part slides by (2,0)
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let horiz = PeriodicSet::new(lat, [Point::new(1, 0)]);
        let reports = find_chameleon_slices(&spread_square(), &horiz, Point::new(4, 0)).unwrap();
        assert!(!reports.is_empty());
        let r = &reports[0];
        // shift by two ground steps
        let shifted: Vec<bool> = (0..r.period)
            .map(|t| r.original[((t + 2) % r.period) as usize])
            .collect();
        assert!(reports.iter().any(|rep| rep.alternative == shifted));
    }

    #[test]
    fn zero_direction_rejected() {
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        assert!(matches!(
            find_chameleon_slices(&unit_square(), &a, Point::new(0, 0)),
            Err(TilingError::ZeroDirection)
        ));
    }

    #[test]
    fn decide_unit_square_is_one_periodic() {
        let schedule = default_lattice_schedule(1, 16);
        let d = decide_non_one_periodic(&unit_square(), &full2(), &schedule, 32).unwrap();
        match d {
            OnePeriodicDecision::AllOnePeriodicUnderBounds(b) => {
                assert!(b.scaffolds_examined > 0);
            }
            _ => panic!("expected the one-periodic verdict"),
        }
    }

    #[test]
    fn decide_spread_square_is_not() {
        let schedule = default_lattice_schedule(1, 16);
        let d = decide_non_one_periodic(&spread_square(), &full2(), &schedule, 32).unwrap();
        match d {
            OnePeriodicDecision::NonOnePeriodicExists(w) => {
                assert!(w.aperiodicity.len() > 10);
                assert!(!w.tiling.substitutions.is_empty());
            }
            _ => panic!("expected a non-one-periodic witness"),
        }
    }

    #[test]
    fn decide_collinear_tile() {
        let bar = Tile::new(Dim::Two, [Point::new(0, 0), Point::new(1, 0)]).unwrap();
        let schedule = default_lattice_schedule(1, 16);
        let d = decide_non_one_periodic(&bar, &full2(), &schedule, 32).unwrap();
        assert!(matches!(d, OnePeriodicDecision::AllOnePeriodicUnderBounds(_)));
    }

    #[test]
    fn decide_non_tiler() {
        let t = Tile::new(
            Dim::Two,
            [Point::new(0, 0), Point::new(1, 0), Point::new(3, 0)],
        )
        .unwrap();
        let schedule = default_lattice_schedule(1, 16);
        let d = decide_non_one_periodic(&t, &full2(), &schedule, 32).unwrap();
        assert!(matches!(d, OnePeriodicDecision::NoTiling));
    }

    #[test]
    fn witness_membership_agrees_off_the_lines() {
        let schedule = default_lattice_schedule(1, 16);
        let d = decide_non_one_periodic(&spread_square(), &full2(), &schedule, 32).unwrap();
        let OnePeriodicDecision::NonOnePeriodicExists(w) = d else {
            panic!("expected witness");
        };
        let mut differs = 0;
        for x in -20..20 {
            for y in -20..20 {
                let p = Point::new(x, y);
                let on_line = w
                    .tiling
                    .substitutions
                    .iter()
                    .any(|s| s.step_of(p).is_some());
                if !on_line {
                    assert_eq!(w.tiling.contains(p), w.tiling.scaffold.contains(p));
                } else if w.tiling.contains(p) != w.tiling.scaffold.contains(p) {
                    differs += 1;
                }
            }
        }
        assert!(differs > 0, "the witness must actually move something");
    }

    #[test]
    fn self_substitution_rejected() {
        let a = PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2));
        let reports = find_chameleon_slices(&unit_square(), &a, Point::new(0, 2)).unwrap();
        let mut c = reports[0].clone();
        c.alternative = c.original.clone();
        let c2 = ChameleonReport {
            direction: Point::new(2, 0),
            direction_primitive: Point::new(1, 0),
            ..reports[0].clone()
        };
        assert!(matches!(
            build_slide_witness(&unit_square(), &full2(), 1, &a, &c, &c2, 32),
            Err(TilingError::PreconditionFailed(_))
        ));
        // and commensurable directions are rejected outright
        assert!(matches!(
            build_slide_witness(&unit_square(), &full2(), 1, &a, &reports[0], &reports[0], 32),
            Err(TilingError::CommensurableDirections)
        ));
    }

    #[test]
    fn slide_family_a1_members() {
        let t = generate_slide_family(SlideFamilyKind::A1, &[false], &[false]).unwrap();
        assert!(t
            .as_periodic_set()
            .unwrap()
            .same_set(&PeriodicSet::lattice_set(Lattice::scaled_standard(Dim::Two, 2)))
            .unwrap());
        let t = generate_slide_family(SlideFamilyKind::A1, &[false, true], &[false]).unwrap();
        assert!(t.contains(Point::new(2, 1)));
        assert!(!t.contains(Point::new(2, 0)));
    }

    #[test]
    fn slide_family_a2_members() {
        let base = generate_slide_family(SlideFamilyKind::A2, &[false], &[false]).unwrap();
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let expect = PeriodicSet::new(lat, [Point::new(0, 0), Point::new(1, 0)]);
        assert!(base.as_periodic_set().unwrap().same_set(&expect).unwrap());
        // 2-periodic words still tile
        let t = generate_slide_family(SlideFamilyKind::A2, &[false, true], &[false]).unwrap();
        assert!(t.contains(Point::new(4, 1)));
    }

    #[test]
    fn random_a1_words_tile() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0xa1);
        for _ in 0..50 {
            let len = rng.gen_range(1..=8);
            let word: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
            let t = generate_slide_family(SlideFamilyKind::A1, &word, &[false]).unwrap();
            assert!(t.as_periodic_set().is_some());
        }
    }
}
