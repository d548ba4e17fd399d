//! Exhaustive search for Λ-periodic tilings as exact cover on the
//! quotient torus `Z^2 / Λ`, and the heuristic period bound.
//!
//! Choosing a Λ-periodic tiling set is choosing residues of the quotient;
//! each residue covers the cells of its tile placement, and level-`k`
//! tilings are exactly the residue subsets covering every cell with the
//! demanded multiplicity. The solver is a depth-first exact cover with
//! most-constrained-cell branching; a `u128` bitmask path handles the
//! common injective level-one case and a multiset path covers the rest.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::periodic::{is_tiling_of_level, PeriodicSet};
use crate::point::{isqrt_big, Point};
use crate::tile::Tile;
use crate::Result;

/// A tiling-search instance on `Z^2 / Λ`.
#[derive(Debug, Clone)]
pub struct TorusInstance {
    pub tile: Tile,
    pub lattice: Lattice,
    pub target: PeriodicSet,
    pub level: i64,
    /// Demanded multiplicity per cell, dense in `position` order.
    pub demands: Vec<i64>,
    /// For each residue, the covered cells with multiplicities, sorted.
    pub placements: Vec<Vec<(usize, i64)>>,
}

/// Builds the instance whose exact covers at multiplicity `k` biject with
/// Λ-periodic level-`k` tilings of `E` by `F`.
pub fn build_torus_instance(
    tile: &Tile,
    target: &PeriodicSet,
    lattice: &Lattice,
    k: i64,
) -> Result<TorusInstance> {
    tile.dim().check(target.dim())?;
    tile.dim().check(lattice.dim())?;
    if k < 1 {
        return Err(TilingError::PreconditionFailed("level must be positive".into()));
    }
    let compatible = lattice.is_sublattice_of(target.lattice())
        || lattice.is_sublattice_of(&target.stabilizer()?);
    if !compatible {
        return Err(TilingError::IncompatibleLattices(format!(
            "the target is not {lattice}-periodic"
        )));
    }
    let n = lattice.index() as usize;
    let demands: Vec<i64> = lattice
        .residues()
        .map(|p| k * target.indicator(p))
        .collect();
    let placements: Vec<Vec<(usize, i64)>> = lattice
        .residues()
        .map(|a| {
            let mut cells: Vec<(usize, i64)> = Vec::with_capacity(tile.len());
            for &f in tile.elements() {
                cells.push((lattice.position(a + f), 1));
            }
            cells.sort_unstable();
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(cells.len());
            for (c, m) in cells {
                match merged.last_mut() {
                    Some((lc, lm)) if *lc == c => *lm += m,
                    _ => merged.push((c, m)),
                }
            }
            merged
        })
        .collect();
    debug_assert_eq!(placements.len(), n);
    Ok(TorusInstance {
        tile: tile.clone(),
        lattice: *lattice,
        target: target.clone(),
        level: k,
        demands,
        placements,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchLimit {
    All,
    First(usize),
}

/// All (or the first `limit`) residue subsets whose placements cover the
/// demand exactly. Exhaustive, duplicate-free, canonically sorted.
pub fn search_tilings_on_torus(inst: &TorusInstance, limit: SearchLimit) -> Vec<PeriodicSet> {
    let injective = inst
        .placements
        .iter()
        .all(|p| p.iter().all(|&(_, m)| m == 1));
    let mut solutions: Vec<Vec<usize>> =
        if injective && inst.level == 1 && inst.demands.len() <= 128 {
            search_bitmask(inst, limit)
        } else {
            search_multiset(inst, limit)
        };
    solutions.sort_unstable();
    solutions.dedup();
    let residues: Vec<Point> = inst.lattice.residues().collect();
    solutions
        .into_iter()
        .map(|sol| {
            PeriodicSet::new(inst.lattice, sol.into_iter().map(|i| residues[i]))
        })
        .collect()
}

fn search_bitmask(inst: &TorusInstance, limit: SearchLimit) -> Vec<Vec<usize>> {
    let n = inst.demands.len();
    let masks: Vec<u128> = inst
        .placements
        .iter()
        .map(|p| p.iter().fold(0u128, |acc, &(c, _)| acc | (1u128 << c)))
        .collect();
    let full: u128 = inst
        .demands
        .iter()
        .enumerate()
        .fold(0u128, |acc, (c, &d)| if d > 0 { acc | (1u128 << c) } else { acc })
        ;
    // cells with demand 0 may never be covered; placements touching them
    // are excluded up front
    let candidates: Vec<usize> = (0..n).filter(|&i| masks[i] & !full == 0).collect();

    struct Ctx<'a> {
        masks: &'a [u128],
        by_cell: Vec<Vec<usize>>,
    }
    let mut by_cell: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &i in &candidates {
        let mut m = masks[i];
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            by_cell[c].push(i);
            m &= m - 1;
        }
    }
    let ctx = Ctx { masks: &masks, by_cell };

    fn dfs(
        ctx: &Ctx,
        remaining: u128,
        banned: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: Option<usize>,
    ) {
        if let Some(c) = cap {
            if out.len() >= c {
                return;
            }
        }
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        // most-constrained uncovered cell
        let mut best_cell = usize::MAX;
        let mut best_count = usize::MAX;
        let mut m = remaining;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            let count = ctx.by_cell[c]
                .iter()
                .filter(|&&i| !banned[i] && ctx.masks[i] & !remaining == 0)
                .count();
            if count < best_count {
                best_count = count;
                best_cell = c;
                if count == 0 {
                    return;
                }
            }
            m &= m - 1;
        }
        let options: Vec<usize> = ctx.by_cell[best_cell]
            .iter()
            .copied()
            .filter(|&i| !banned[i] && ctx.masks[i] & !remaining == 0)
            .collect();
        let mut newly_banned = Vec::new();
        for i in options {
            chosen.push(i);
            dfs(ctx, remaining & !ctx.masks[i], banned, chosen, out, cap);
            chosen.pop();
            banned[i] = true;
            newly_banned.push(i);
        }
        for i in newly_banned {
            banned[i] = false;
        }
    }

    let cap = match limit {
        SearchLimit::All => None,
        SearchLimit::First(c) => Some(c),
    };

    // root split for parallel enumeration; each branch is deterministic
    // and the branch order makes the merge canonical
    if cap.is_none() && full != 0 {
        let first_cell = full.trailing_zeros() as usize;
        let roots: Vec<usize> = ctx.by_cell[first_cell].clone();
        let branch_results: Vec<Vec<Vec<usize>>> = roots
            .par_iter()
            .enumerate()
            .map(|(idx, &i)| {
                let mut banned = vec![false; ctx.masks.len()];
                for &j in &roots[..idx] {
                    banned[j] = true;
                }
                let mut chosen = vec![i];
                let mut out = Vec::new();
                dfs(&ctx, full & !ctx.masks[i], &mut banned, &mut chosen, &mut out, None);
                out
            })
            .collect();
        branch_results.into_iter().flatten().collect()
    } else {
        let mut banned = vec![false; ctx.masks.len()];
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        dfs(&ctx, full, &mut banned, &mut chosen, &mut out, cap);
        out
    }
}

fn search_multiset(inst: &TorusInstance, limit: SearchLimit) -> Vec<Vec<usize>> {
    let n = inst.demands.len();
    let cap = match limit {
        SearchLimit::All => usize::MAX,
        SearchLimit::First(c) => c,
    };
    let mut remaining = inst.demands.clone();
    let mut banned = vec![false; n];
    let mut chosen: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();

    fn admissible(p: &[(usize, i64)], remaining: &[i64]) -> bool {
        p.iter().all(|&(c, m)| m <= remaining[c])
    }

    fn dfs(
        inst: &TorusInstance,
        remaining: &mut Vec<i64>,
        banned: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        let open = (0..remaining.len()).filter(|&c| remaining[c] > 0).min_by_key(|&c| {
            (0..inst.placements.len())
                .filter(|&i| {
                    !banned[i]
                        && inst.placements[i].iter().any(|&(cc, _)| cc == c)
                        && admissible(&inst.placements[i], remaining)
                })
                .count()
        });
        let Some(cell) = open else {
            out.push(chosen.clone());
            return;
        };
        let options: Vec<usize> = (0..inst.placements.len())
            .filter(|&i| {
                !banned[i]
                    && inst.placements[i].iter().any(|&(cc, _)| cc == cell)
                    && admissible(&inst.placements[i], remaining)
            })
            .collect();
        let mut newly_banned = Vec::new();
        for i in options {
            // banned inside its own subtree too: a residue enters a
            // tiling set at most once even at higher multiplicity
            banned[i] = true;
            newly_banned.push(i);
            for &(c, m) in &inst.placements[i] {
                remaining[c] -= m;
            }
            chosen.push(i);
            dfs(inst, remaining, banned, chosen, out, cap);
            chosen.pop();
            for &(c, m) in &inst.placements[i] {
                remaining[c] += m;
            }
        }
        for i in newly_banned {
            banned[i] = false;
        }
    }

    dfs(inst, &mut remaining, &mut banned, &mut chosen, &mut out, cap);
    out
}

/// Outcome of the schedule-relative decision.
#[derive(Debug, Clone)]
pub enum Decision2D {
    /// A periodic tiling was found.
    Tiles(PeriodicSet),
    /// No tiling whose period lies in the searched schedule. Definitive
    /// only relative to the schedule, which is therefore recorded.
    NoTilingUnderSchedule(Vec<Lattice>),
}

/// The default schedule: square lattices `l m Z^2` with index at most
/// `max_index`.
pub fn default_lattice_schedule(ell: i64, max_index: i64) -> Vec<Lattice> {
    let mut out = Vec::new();
    let mut m = 1i64;
    loop {
        let s = ell * m;
        if s * s > max_index {
            break;
        }
        out.push(Lattice::scaled_standard(crate::point::Dim::Two, s));
        m += 1;
    }
    out
}

/// Searches the schedule in order and returns the first witness.
pub fn decide_tiles_2d(
    tile: &Tile,
    target: &PeriodicSet,
    k: i64,
    schedule: &[Lattice],
) -> Result<Decision2D> {
    if schedule.is_empty() {
        return Err(TilingError::PreconditionFailed("empty lattice schedule".into()));
    }
    let stab = target.stabilizer()?;
    for lattice in schedule {
        // a Λ-periodic tiling forces E itself to be Λ-periodic, so
        // incompatible entries cannot host a witness
        if !lattice.is_sublattice_of(&stab) {
            continue;
        }
        let inst = build_torus_instance(tile, target, lattice, k)?;
        let found = search_tilings_on_torus(&inst, SearchLimit::First(1));
        if let Some(witness) = found.into_iter().next() {
            debug_assert!(is_tiling_of_level(tile, &witness, target, k)?);
            return Ok(Decision2D::Tiles(witness));
        }
    }
    Ok(Decision2D::NoTilingUnderSchedule(schedule.to_vec()))
}

/// One factor of the proof chain behind the heuristic period bound.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentTerm {
    pub source: String,
    pub exponent: i64,
}

/// The period bound `diam(F)^(sum of exponents)` with every suppressed
/// constant set to one. `sound` is always false: the true constants are
/// unspecified, so this is a search heuristic, never a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodBound2D {
    pub exponent_terms: Vec<ExponentTerm>,
    pub total_exponent: i64,
    pub heuristic_value: BigInt,
    pub sound: bool,
}

pub fn period_bound_2d(tile: &Tile, _ell: i64) -> Result<PeriodBound2D> {
    let f = tile.len() as i64;
    if f < 2 {
        return Err(TilingError::PreconditionFailed("|F| must be at least 2".into()));
    }
    let terms = vec![
        ExponentTerm {
            source: "one-period multiplier".into(),
            exponent: f * (f - 1),
        },
        ExponentTerm {
            source: "direction-product improvement".into(),
            exponent: (f + 2) * (f - 1).pow(3) / 2,
        },
        ExponentTerm {
            source: "slice modulus".into(),
            exponent: f * (f - 1).pow(2) / 2,
        },
    ];
    let total: i64 = terms.iter().map(|t| t.exponent).sum();
    // ceil(diam^total) computed in squared arithmetic
    let pow = BigInt::from(tile.diameter_sq()).pow(total as u32);
    let root = isqrt_big(&pow);
    let heuristic_value = if &root * &root == pow && !pow.is_zero() || pow.is_zero() {
        root
    } else {
        root + 1
    };
    Ok(PeriodBound2D {
        exponent_terms: terms,
        total_exponent: total,
        heuristic_value,
        sound: false,
    })
}
