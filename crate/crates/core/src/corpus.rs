//! A deterministic desk corpus of small periodic tilings, built by the
//! torus searcher over a fixed schedule of tiles and lattices. The
//! structure, dilation, weak-periodicity and improvement machinery are
//! all exercised against it.

use crate::lattice::Lattice;
use crate::periodic::PeriodicSet;
use crate::point::{Dim, Point};
use crate::search2d::{build_torus_instance, search_tilings_on_torus, SearchLimit};
use crate::tile::{spread_square, unit_square, Tile};

#[derive(Debug, Clone)]
pub struct CorpusTiling {
    pub name: String,
    pub tile: Tile,
    pub set: PeriodicSet,
    pub target: PeriodicSet,
    pub level: i64,
    pub ell: i64,
}

fn lat(rows: &[(i64, i64)]) -> Lattice {
    let pts: Vec<Point> = rows.iter().map(|&(x, y)| Point::new(x, y)).collect();
    Lattice::from_generators(Dim::Two, &pts).unwrap()
}

/// Level-one tilings of `Z^2` by small tiles over tori of index at most
/// 36, at most `per_instance` tilings from each torus, plus a few
/// higher-level entries. Deterministic.
pub fn desk_corpus() -> Vec<CorpusTiling> {
    let full = PeriodicSet::full(Dim::Two);
    let tiles: Vec<(&str, Tile)> = vec![
        ("unit-square", unit_square()),
        ("spread-square", spread_square()),
        (
            "domino-h",
            Tile::new(Dim::Two, [Point::new(0, 0), Point::new(1, 0)]).unwrap(),
        ),
        (
            "domino-diag",
            Tile::new(Dim::Two, [Point::new(0, 0), Point::new(1, 1)]).unwrap(),
        ),
        (
            "bar-3",
            Tile::new(
                Dim::Two,
                [Point::new(0, 0), Point::new(1, 0), Point::new(2, 0)],
            )
            .unwrap(),
        ),
        (
            "ell-tromino",
            Tile::new(
                Dim::Two,
                [Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)],
            )
            .unwrap(),
        ),
    ];
    let lattices: Vec<Lattice> = vec![
        lat(&[(2, 0), (0, 1)]),
        lat(&[(1, 0), (0, 2)]),
        lat(&[(2, 0), (0, 2)]),
        lat(&[(3, 0), (0, 1)]),
        lat(&[(3, 0), (0, 3)]),
        lat(&[(4, 0), (0, 2)]),
        lat(&[(2, 0), (0, 4)]),
        lat(&[(2, 1), (0, 3)]),
        lat(&[(4, 0), (2, 2)]),
    ];
    let per_instance = 4;

    let mut out = Vec::new();
    for (name, tile) in &tiles {
        for lattice in &lattices {
            if lattice.index() % tile.len() as i64 != 0 {
                continue;
            }
            let inst = match build_torus_instance(tile, &full, lattice, 1) {
                Ok(i) => i,
                Err(_) => continue,
            };
            let sols = search_tilings_on_torus(&inst, SearchLimit::All);
            for (i, set) in sols.into_iter().take(per_instance).enumerate() {
                out.push(CorpusTiling {
                    name: format!("{name}@{lattice}#{i}"),
                    tile: tile.clone(),
                    set,
                    target: full.clone(),
                    level: 1,
                    ell: 1,
                });
            }
        }
    }

    // a few higher-level entries
    let two_phases = PeriodicSet::new(
        Lattice::scaled_standard(Dim::Two, 2),
        [Point::new(0, 0), Point::new(1, 0)],
    );
    out.push(CorpusTiling {
        name: "unit-square level 2".into(),
        tile: unit_square(),
        set: two_phases,
        target: full.clone(),
        level: 2,
        ell: 1,
    });
    out.push(CorpusTiling {
        name: "domino-h level 2 on Z^2".into(),
        tile: Tile::new(Dim::Two, [Point::new(0, 0), Point::new(1, 0)]).unwrap(),
        set: full.clone(),
        target: full.clone(),
        level: 2,
        ell: 1,
    });

    out
}

/// The level-one subset of the corpus.
pub fn level_one_corpus() -> Vec<CorpusTiling> {
    desk_corpus().into_iter().filter(|c| c.level == 1).collect()
}
