//! One-dimensional tilings: the explicit universal period, and a complete
//! enumerator built on a boundary-state automaton.
//!
//! The automaton is deterministic: with `0 ∈ F`, the cover constraint at
//! each new position forces the next membership bit from the last
//! `diam(F)` bits. Valid bi-infinite configurations therefore live on the
//! cycles of a functional graph with at most `2^diam * period(E)` states,
//! which makes the enumeration exhaustive and yields an explicit
//! completeness certificate.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::dilation::primes_upto;
use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::periodic::PeriodicSet;
use crate::point::{Dim, Point};
use crate::tile::Tile;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PeriodVariant {
    /// `q = lcm(ell, primes <= 2|F|)`; valid at every level.
    Paper,
    /// `q = lcm(ell, primes dividing |F|)`; valid at level one only.
    Tijdeman,
}

/// The universal period `q * n` for all tilings of a 1D tile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalPeriod1D {
    pub q: BigInt,
    /// lcm of `|f|` over the nonzero tile elements.
    pub n: i64,
    pub period: BigInt,
    pub variant: PeriodVariant,
}

pub fn universal_period_1d(
    tile: &Tile,
    ell: i64,
    variant: PeriodVariant,
) -> Result<UniversalPeriod1D> {
    Dim::One.check(tile.dim())?;
    if tile.len() < 2 {
        return Err(TilingError::PreconditionFailed(
            "universal period needs |F| >= 2".into(),
        ));
    }
    if ell < 1 {
        return Err(TilingError::PreconditionFailed("ell must be positive".into()));
    }
    let card = tile.len() as i64;
    let mut q = BigInt::from(ell);
    match variant {
        PeriodVariant::Paper => {
            for p in primes_upto(2 * card) {
                q = q.lcm(&BigInt::from(p));
            }
        }
        PeriodVariant::Tijdeman => {
            for p in primes_upto(card) {
                if card % p == 0 {
                    q = q.lcm(&BigInt::from(p));
                }
            }
        }
    }
    let mut n: i64 = 1;
    for f in tile.nonzero_elements() {
        n = n.lcm(&f.x.abs());
    }
    let period = &q * BigInt::from(n);
    Ok(UniversalPeriod1D { q, n, period, variant })
}

/// Result of the exhaustive 1D enumeration.
#[derive(Debug, Clone)]
pub struct Enumeration1D {
    /// Every tiling with minimal period at most the cap, each stored over
    /// its minimal period lattice. Sorted canonically.
    pub tilings: Vec<PeriodicSet>,
    /// Number of tilings excluded by the cap.
    pub excluded_by_cap: usize,
    /// True when the cap did not exclude anything; the enumeration is then
    /// a complete list of all tilings of E by F at this level.
    pub complete: bool,
    pub longest_cycle: i64,
    pub states: usize,
}

const MAX_STATES: usize = 1 << 22;

/// Enumerates every level-`k` tiling of the 1D periodic set `E` by `F`
/// whose minimal period is at most `period_cap`.
pub fn enumerate_1d_tilings(
    tile: &Tile,
    target: &PeriodicSet,
    k: i64,
    period_cap: i64,
) -> Result<Enumeration1D> {
    Dim::One.check(tile.dim())?;
    Dim::One.check(target.dim())?;
    if period_cap < 1 || k < 1 {
        return Err(TilingError::PreconditionFailed(
            "period cap and level must be positive".into(),
        ));
    }

    // shift the tile to start at zero; the tiling sets are unchanged when
    // the target is shifted the opposite way
    let min_x = tile.elements().iter().map(|p| p.x).min().unwrap();
    let offsets: Vec<i64> = tile.elements().iter().map(|p| p.x - min_x).collect();
    let diam = *offsets.iter().max().unwrap();
    let shifted_target = target.translate(Point::new_1d(-min_x));
    let l0 = minimal_period_1d(&shifted_target);
    let targets: Vec<i64> = (0..l0)
        .map(|x| k * shifted_target.indicator(Point::new_1d(x)))
        .collect();

    // degenerate singleton tile: A must equal E scaled by the level
    if diam == 0 {
        let mut tilings = Vec::new();
        if k == 1 {
            tilings.push(canonical_min_period(&shifted_target));
        } else if shifted_target.residue_count() == 0 {
            tilings.push(PeriodicSet::empty(Dim::One));
        }
        let longest = tilings
            .iter()
            .map(|t| t.lattice().index())
            .max()
            .unwrap_or(0);
        let excluded = tilings
            .iter()
            .filter(|t| t.lattice().index() > period_cap)
            .count();
        let tilings: Vec<PeriodicSet> = tilings
            .into_iter()
            .filter(|t| t.lattice().index() <= period_cap)
            .collect();
        return Ok(Enumeration1D {
            complete: excluded == 0,
            excluded_by_cap: excluded,
            tilings,
            longest_cycle: longest,
            states: 1,
        });
    }

    let width = diam as usize;
    if width >= 32 {
        return Err(TilingError::StateSpaceTooLarge(format!(
            "window width {width} is beyond the 2^31 state guard"
        )));
    }
    let n_windows = 1usize << width;
    let n_states = n_windows * l0 as usize;
    if n_states > MAX_STATES {
        return Err(TilingError::StateSpaceTooLarge(format!(
            "{n_states} states exceed the {MAX_STATES} cap"
        )));
    }
    let mask = (n_windows - 1) as u64;

    // state = window * l0 + phase; window bit j holds a(x - j)
    let successor = |state: usize| -> Option<usize> {
        let window = (state / l0 as usize) as u64;
        let phase = (state % l0 as usize) as i64;
        let next_phase = (phase + 1) % l0;
        let mut covered = 0i64;
        for &f in &offsets {
            if f > 0 {
                covered += ((window >> (f - 1)) & 1) as i64;
            }
        }
        let beta = targets[next_phase as usize] - covered;
        if beta == 0 || beta == 1 {
            let next_window = ((window << 1) | beta as u64) & mask;
            Some(next_window as usize * l0 as usize + next_phase as usize)
        } else {
            None
        }
    };

    // cycles of the functional graph, by three-color walk
    let mut color = vec![0u8; n_states];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n_states {
        if color[start] != 0 {
            continue;
        }
        let mut path: Vec<usize> = Vec::new();
        let mut s = start;
        loop {
            if color[s] == 1 {
                let at = path.iter().position(|&t| t == s).unwrap();
                cycles.push(path[at..].to_vec());
                break;
            }
            if color[s] == 2 {
                break;
            }
            color[s] = 1;
            path.push(s);
            match successor(s) {
                Some(t) => s = t,
                None => break,
            }
        }
        for t in path {
            color[t] = 2;
        }
    }

    let longest_cycle = cycles.iter().map(|c| c.len() as i64).max().unwrap_or(0);

    // unroll each cycle from each node, anchored at the node's phase
    let mut seen: BTreeSet<PeriodicSet> = BTreeSet::new();
    for cycle in &cycles {
        let p = cycle.len() as i64;
        let bits: Vec<i64> = cycle
            .iter()
            .map(|&s| ((s / l0 as usize) as u64 & 1) as i64)
            .collect();
        for (i, &s) in cycle.iter().enumerate() {
            let phase = (s % l0 as usize) as i64;
            let lattice = Lattice::scaled_standard(Dim::One, p);
            let residues = (0..p).filter_map(|t| {
                if bits[(i as i64 + t) as usize % p as usize] == 1 {
                    Some(Point::new_1d(phase + t))
                } else {
                    None
                }
            });
            let set = PeriodicSet::new(lattice, residues);
            seen.insert(canonical_min_period(&set));
        }
    }

    let excluded = seen
        .iter()
        .filter(|t| t.lattice().index() > period_cap)
        .count();
    let tilings: Vec<PeriodicSet> = seen
        .into_iter()
        .filter(|t| t.lattice().index() <= period_cap)
        .collect();
    Ok(Enumeration1D {
        complete: excluded == 0,
        excluded_by_cap: excluded,
        tilings,
        longest_cycle,
        states: n_states,
    })
}

/// Minimal set-period of a 1D periodic set.
fn minimal_period_1d(set: &PeriodicSet) -> i64 {
    let a = set.lattice().index();
    let mut divisors: Vec<i64> = (1..=a).filter(|d| a % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if set.is_invariant_under(Point::new_1d(d)) {
            return d;
        }
    }
    a
}

/// Re-expresses a 1D periodic set over its minimal period lattice.
fn canonical_min_period(set: &PeriodicSet) -> PeriodicSet {
    let p = minimal_period_1d(set);
    let lattice = Lattice::scaled_standard(Dim::One, p);
    PeriodicSet::new(
        lattice,
        (0..p)
            .map(Point::new_1d)
            .filter(|&x| set.contains(x)),
    )
}

#[derive(Debug, Clone)]
pub struct UniversalPeriodReport {
    pub bound: UniversalPeriod1D,
    /// `(tiling, minimal period, divides bound)` per enumerated tiling.
    pub entries: Vec<(PeriodicSet, i64, bool)>,
    pub enumeration_complete: bool,
    pub all_divide: bool,
}

/// Enumerates level-`k` tilings of `Z` by `F` and checks each minimal
/// period against the universal bound of the chosen variant.
pub fn verify_universal_period(
    tile: &Tile,
    ell: i64,
    k: i64,
    period_cap: i64,
    variant: PeriodVariant,
) -> Result<UniversalPeriodReport> {
    if variant == PeriodVariant::Tijdeman && k != 1 {
        return Err(TilingError::TijdemanRequiresLevelOne);
    }
    let bound = universal_period_1d(tile, ell, variant)?;
    let target = PeriodicSet::full(Dim::One);
    let enumeration = enumerate_1d_tilings(tile, &target, k, period_cap)?;
    let mut all = true;
    let entries: Vec<(PeriodicSet, i64, bool)> = enumeration
        .tilings
        .into_iter()
        .map(|t| {
            let p = t.lattice().index();
            let divides = (&bound.period % BigInt::from(p)).is_zero();
            all &= divides;
            (t, p, divides)
        })
        .collect();
    Ok(UniversalPeriodReport {
        bound,
        entries,
        enumeration_complete: enumeration.complete,
        all_divide: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_1d(period: i64, xs: &[i64]) -> PeriodicSet {
        PeriodicSet::new(
            Lattice::scaled_standard(Dim::One, period),
            xs.iter().map(|&x| Point::new_1d(x)),
        )
    }

    #[test]
    fn universal_period_values() {
        let domino = Tile::new_1d([0, 1]).unwrap();
        let up = universal_period_1d(&domino, 1, PeriodVariant::Paper).unwrap();
        assert_eq!((up.q.clone(), up.n), (BigInt::from(6), 1));
        assert_eq!(up.period, BigInt::from(6));

        let bar3 = Tile::new_1d([0, 1, 2]).unwrap();
        let up = universal_period_1d(&bar3, 1, PeriodVariant::Paper).unwrap();
        assert_eq!((up.q.clone(), up.n), (BigInt::from(30), 2));
        assert_eq!(up.period, BigInt::from(60));

        let spread = Tile::new_1d([0, 2]).unwrap();
        let up = universal_period_1d(&spread, 1, PeriodVariant::Tijdeman).unwrap();
        assert_eq!((up.q.clone(), up.n), (BigInt::from(2), 2));
        assert_eq!(up.period, BigInt::from(4));
    }

    #[test]
    fn enumerate_domino() {
        let domino = Tile::new_1d([0, 1]).unwrap();
        let e = PeriodicSet::full(Dim::One);
        let out = enumerate_1d_tilings(&domino, &e, 1, 6).unwrap();
        assert!(out.complete);
        assert_eq!(out.tilings.len(), 2);
        let expected: BTreeSet<PeriodicSet> =
            [set_1d(2, &[0]), set_1d(2, &[1])].into_iter().collect();
        assert_eq!(out.tilings.iter().cloned().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn enumerate_spread_domino() {
        let spread = Tile::new_1d([0, 2]).unwrap();
        let e = PeriodicSet::full(Dim::One);
        let out = enumerate_1d_tilings(&spread, &e, 1, 4).unwrap();
        assert!(out.complete);
        // the four phases of {0,1} + 4Z
        assert_eq!(out.tilings.len(), 4);
        for t in &out.tilings {
            assert_eq!(t.lattice().index(), 4);
            assert_eq!(t.residue_count(), 2);
        }
        let expected: BTreeSet<PeriodicSet> = (0..4)
            .map(|s| set_1d(4, &[s, s + 1]))
            .collect();
        assert_eq!(out.tilings.iter().cloned().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn enumerate_singleton() {
        let dot = Tile::new_1d([0]).unwrap();
        let e = PeriodicSet::full(Dim::One);
        let out = enumerate_1d_tilings(&dot, &e, 1, 4).unwrap();
        assert_eq!(out.tilings, vec![PeriodicSet::full(Dim::One)]);
        assert!(out.complete);
    }

    #[test]
    fn enumerate_013_is_empty_and_complete() {
        let t = Tile::new_1d([0, 1, 3]).unwrap();
        let e = PeriodicSet::full(Dim::One);
        let out = enumerate_1d_tilings(&t, &e, 1, 64).unwrap();
        assert!(out.complete);
        assert!(out.tilings.is_empty());
    }

    #[test]
    fn enumerate_respects_target_set() {
        // tile {0,1} filling the even integers along 4Z ∪ 4Z+1: the target
        // {0,1} + 4Z is itself tiled exactly by translates at 4Z
        let domino = Tile::new_1d([0, 1]).unwrap();
        let e = set_1d(4, &[0, 1]);
        let out = enumerate_1d_tilings(&domino, &e, 1, 8).unwrap();
        assert!(out.complete);
        assert_eq!(out.tilings, vec![set_1d(4, &[0])]);
    }

    #[test]
    fn negative_element_tiles_match_shifted() {
        let t = Tile::new(Dim::One, [Point::new_1d(-1), Point::new_1d(0)]).unwrap();
        let e = PeriodicSet::full(Dim::One);
        let out = enumerate_1d_tilings(&t, &e, 1, 4).unwrap();
        assert_eq!(out.tilings.len(), 2);
    }

    #[test]
    fn naive_oracle_agreement() {
        // all subsets of Z/p for p <= 12, tiles of diameter <= 4
        let tiles: Vec<Tile> = vec![
            Tile::new_1d([0, 1]).unwrap(),
            Tile::new_1d([0, 2]).unwrap(),
            Tile::new_1d([0, 1, 2]).unwrap(),
            Tile::new_1d([0, 1, 3]).unwrap(),
            Tile::new_1d([0, 2, 4]).unwrap(),
            Tile::new_1d([0, 1, 2, 3]).unwrap(),
            Tile::new_1d([0, 1, 4]).unwrap(),
        ];
        for tile in &tiles {
            for k in [1i64, 2] {
                let mut oracle: BTreeSet<PeriodicSet> = BTreeSet::new();
                for p in 1..=12i64 {
                    for bits in 0u32..(1 << p) {
                        let residues: Vec<Point> = (0..p)
                            .filter(|&i| (bits >> i) & 1 == 1)
                            .map(Point::new_1d)
                            .collect();
                        let a = PeriodicSet::new(
                            Lattice::scaled_standard(Dim::One, p),
                            residues,
                        );
                        let ok = (0..p).all(|x| {
                            let c: i64 = tile
                                .elements()
                                .iter()
                                .map(|&f| a.indicator(Point::new_1d(x) - f))
                                .sum();
                            c == k
                        });
                        if ok {
                            oracle.insert(canonical_min_period(&a));
                        }
                    }
                }
                let out =
                    enumerate_1d_tilings(tile, &PeriodicSet::full(Dim::One), k, 12).unwrap();
                let got: BTreeSet<PeriodicSet> = out.tilings.into_iter().collect();
                assert_eq!(got, oracle, "tile {:?} level {k}", tile.elements());
            }
        }
    }

    #[test]
    fn universal_period_divisibility() {
        for (xs, expect_min) in [
            (vec![0i64, 1], vec![2i64]),
            (vec![0, 2], vec![4]),
            (vec![0, 1, 2], vec![3]),
        ] {
            let tile = Tile::new_1d(xs.clone()).unwrap();
            let rep = verify_universal_period(&tile, 1, 1, 64, PeriodVariant::Paper).unwrap();
            assert!(rep.all_divide, "paper bound divides for {xs:?}");
            let minimals: Vec<i64> = rep.entries.iter().map(|e| e.1).collect();
            for m in expect_min {
                assert!(minimals.contains(&m));
            }
            let rep_t =
                verify_universal_period(&tile, 1, 1, 64, PeriodVariant::Tijdeman).unwrap();
            assert!(rep_t.all_divide, "tijdeman bound divides for {xs:?}");
        }
    }

    #[test]
    fn tijdeman_needs_level_one() {
        let tile = Tile::new_1d([0, 1]).unwrap();
        assert!(matches!(
            verify_universal_period(&tile, 1, 2, 16, PeriodVariant::Tijdeman),
            Err(TilingError::TijdemanRequiresLevelOne)
        ));
    }
}
