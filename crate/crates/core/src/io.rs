//! Text and JSON formats for tiles, periodic sets and slide tilings.
//!
//! Text formats are line-oriented and hand-writable; `#` starts a
//! comment. The JSON forms mirror the serializers: objects with `dim` and
//! `elements` for tiles, `dim`, `lattice`, `residues` for periodic sets.
//! A leading `{` selects JSON on input.

use serde_json::Value;
use std::fmt::Write as _;

use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::oneper::{SlideTiling, Substitution};
use crate::periodic::PeriodicSet;
use crate::point::{primitive_part, Dim, Point};
use crate::tile::Tile;
use crate::Result;

fn parse_err(msg: impl Into<String>) -> TilingError {
    TilingError::Parse(msg.into())
}

fn logical_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_ints(line: &str) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| parse_err(format!("bad integer `{t}`"))))
        .collect()
}

fn dim_from(n: usize) -> Result<Dim> {
    match n {
        1 => Ok(Dim::One),
        2 => Ok(Dim::Two),
        _ => Err(parse_err(format!("dimension must be 1 or 2, got {n}"))),
    }
}

fn point_from_ints(dim: Dim, ints: &[i64]) -> Result<Point> {
    match (dim, ints) {
        (Dim::One, [x]) => Ok(Point::new_1d(*x)),
        (Dim::Two, [x, y]) => Ok(Point::new(*x, *y)),
        _ => Err(parse_err(format!(
            "expected {} coordinates, got {}",
            dim.as_usize(),
            ints.len()
        ))),
    }
}

// ---- tiles ----

pub fn tile_to_text(tile: &Tile) -> String {
    let mut s = format!("dim {}\n", tile.dim().as_usize());
    for p in tile.elements() {
        match tile.dim() {
            Dim::One => writeln!(s, "{}", p.x).unwrap(),
            Dim::Two => writeln!(s, "{} {}", p.x, p.y).unwrap(),
        }
    }
    s
}

pub fn tile_to_json(tile: &Tile) -> String {
    serde_json::to_string_pretty(tile).expect("tile serializes")
}

fn tile_from_text(text: &str) -> Result<Tile> {
    let mut lines = logical_lines(text);
    let header = lines.next().ok_or_else(|| parse_err("empty tile file"))?;
    let dim = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", d] => dim_from(d.parse::<usize>().map_err(|_| parse_err("bad dim"))?)?,
        _ => return Err(parse_err("tile file must start with `dim <d>`")),
    };
    let mut elems = Vec::new();
    for line in lines {
        elems.push(point_from_ints(dim, &parse_ints(line)?)?);
    }
    Tile::new(dim, elems)
}

fn json_points(dim: Dim, v: &Value, what: &str) -> Result<Vec<Point>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("`{what}` must be an array")))?;
    arr.iter()
        .map(|e| match (dim, e) {
            (Dim::One, Value::Number(n)) => Ok(Point::new_1d(
                n.as_i64().ok_or_else(|| parse_err("bad integer"))?,
            )),
            (_, Value::Array(_)) => {
                let ints: Vec<i64> = e
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| parse_err("bad integer")))
                    .collect::<Result<_>>()?;
                point_from_ints(dim, &ints)
            }
            _ => Err(parse_err(format!("bad entry in `{what}`"))),
        })
        .collect()
}

fn tile_from_json(text: &str) -> Result<Tile> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let dim = dim_from(v["dim"].as_u64().ok_or_else(|| parse_err("missing `dim`"))? as usize)?;
    Tile::new(dim, json_points(dim, &v["elements"], "elements")?)
}

pub fn parse_tile(text: &str) -> Result<Tile> {
    if text.trim_start().starts_with('{') {
        tile_from_json(text)
    } else {
        tile_from_text(text)
    }
}

// ---- periodic sets ----

pub fn periodic_set_to_text(set: &PeriodicSet) -> String {
    let basis = set.lattice().basis();
    let mut s = String::from("lattice");
    for row in &basis {
        match set.dim() {
            Dim::One => write!(s, " {}", row.x).unwrap(),
            Dim::Two => write!(s, " {} {}", row.x, row.y).unwrap(),
        }
    }
    s.push_str("\nresidues\n");
    for p in set.residues() {
        match set.dim() {
            Dim::One => writeln!(s, "{}", p.x).unwrap(),
            Dim::Two => writeln!(s, "{} {}", p.x, p.y).unwrap(),
        }
    }
    s
}

pub fn periodic_set_to_json(set: &PeriodicSet) -> String {
    serde_json::to_string_pretty(set).expect("periodic set serializes")
}

fn lattice_from_flat(ints: &[i64]) -> Result<Lattice> {
    match ints {
        [a] => Lattice::from_generators(Dim::One, &[Point::new_1d(*a)]),
        [a, b, c, d] => Lattice::from_generators(
            Dim::Two,
            &[Point::new(*a, *b), Point::new(*c, *d)],
        ),
        _ => Err(parse_err("`lattice` needs 1 or 4 integers")),
    }
}

fn periodic_set_from_text(text: &str) -> Result<PeriodicSet> {
    let mut lines = logical_lines(text).peekable();
    let header = lines.next().ok_or_else(|| parse_err("empty set file"))?;
    let rest = header
        .strip_prefix("lattice")
        .ok_or_else(|| parse_err("set file must start with `lattice ...`"))?;
    let lattice = lattice_from_flat(&parse_ints(rest)?)?;
    match lines.next() {
        Some("residues") => {}
        _ => return Err(parse_err("expected a `residues` line")),
    }
    let mut residues = Vec::new();
    for line in lines {
        residues.push(point_from_ints(lattice.dim(), &parse_ints(line)?)?);
    }
    Ok(PeriodicSet::new(lattice, residues))
}

fn periodic_set_from_json(text: &str) -> Result<PeriodicSet> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let dim = dim_from(v["dim"].as_u64().ok_or_else(|| parse_err("missing `dim`"))? as usize)?;
    let rows = json_points(dim, &v["lattice"], "lattice")?;
    let lattice = Lattice::from_generators(dim, &rows)?;
    Ok(PeriodicSet::new(
        lattice,
        json_points(dim, &v["residues"], "residues")?,
    ))
}

pub fn parse_periodic_set(text: &str) -> Result<PeriodicSet> {
    if text.trim_start().starts_with('{') {
        periodic_set_from_json(text)
    } else {
        periodic_set_from_text(text)
    }
}

// ---- slide tilings ----

pub fn slide_tiling_to_text(tiling: &SlideTiling) -> String {
    let mut s = String::from("scaffold\n");
    s.push_str(&periodic_set_to_text(&tiling.scaffold));
    for sub in &tiling.substitutions {
        let h = sub.direction.scale(sub.period);
        write!(
            s,
            "substitute {} {} {} {} period {} {} word ",
            sub.direction.x, sub.direction.y, sub.anchor.x, sub.anchor.y, h.x, h.y
        )
        .unwrap();
        for &b in &sub.word {
            s.push(if b { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

pub fn parse_slide_tiling(text: &str) -> Result<SlideTiling> {
    let mut scaffold_lines: Vec<&str> = Vec::new();
    let mut subs: Vec<Substitution> = Vec::new();
    let mut in_scaffold = false;
    for line in logical_lines(text) {
        if line == "scaffold" {
            in_scaffold = true;
            continue;
        }
        if let Some(rest) = line.strip_prefix("substitute ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 9 || toks[4] != "period" || toks[7] != "word" {
                return Err(parse_err(
                    "expected `substitute hx hy yx yy period px py word bits`",
                ));
            }
            let nums: Vec<i64> = [toks[0], toks[1], toks[2], toks[3], toks[5], toks[6]]
                .iter()
                .map(|t| t.parse::<i64>().map_err(|_| parse_err("bad integer")))
                .collect::<Result<_>>()?;
            let direction = Point::new(nums[0], nums[1]);
            let anchor = Point::new(nums[2], nums[3]);
            let period_vec = Point::new(nums[4], nums[5]);
            let word: Vec<bool> = toks[8]
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(parse_err("word must be 0/1 bits")),
                })
                .collect::<Result<_>>()?;
            let (_, prim) = primitive_part(direction)?;
            if prim != direction {
                return Err(parse_err("substitution direction must be primitive"));
            }
            if direction.scale(word.len() as i64) != period_vec {
                return Err(parse_err(
                    "period vector must be the direction times the word length",
                ));
            }
            subs.push(Substitution {
                direction,
                anchor,
                period: word.len() as i64,
                word,
            });
            continue;
        }
        if !in_scaffold {
            return Err(parse_err("slide file must start with `scaffold`"));
        }
        scaffold_lines.push(line);
    }
    let scaffold = periodic_set_from_text(&scaffold_lines.join("\n"))?;
    Ok(SlideTiling { scaffold, substitutions: subs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::{spread_square, unit_square};
    use proptest::prelude::*;

    #[test]
    fn tile_text_round_trip() {
        for t in [
            unit_square(),
            spread_square(),
            Tile::new_1d([0, 2, 5]).unwrap(),
            crate::counterexample::tile_f8(),
        ] {
            assert_eq!(parse_tile(&tile_to_text(&t)).unwrap(), t);
            assert_eq!(parse_tile(&tile_to_json(&t)).unwrap(), t);
        }
    }

    #[test]
    fn set_text_round_trip() {
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(2, 2)]).unwrap();
        let s = PeriodicSet::new(lat, [Point::new(0, 0), Point::new(3, 1)]);
        assert_eq!(parse_periodic_set(&periodic_set_to_text(&s)).unwrap(), s);
        assert_eq!(parse_periodic_set(&periodic_set_to_json(&s)).unwrap(), s);
        let one = PeriodicSet::new(
            Lattice::scaled_standard(Dim::One, 4),
            [Point::new_1d(0), Point::new_1d(1)],
        );
        assert_eq!(parse_periodic_set(&periodic_set_to_text(&one)).unwrap(), one);
        assert_eq!(parse_periodic_set(&periodic_set_to_json(&one)).unwrap(), one);
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# a tile\n dim 2 \n0 0 # origin\n\n1 0\n";
        let t = parse_tile(text).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn slide_round_trip() {
        let lat =
            Lattice::from_generators(Dim::Two, &[Point::new(4, 0), Point::new(0, 2)]).unwrap();
        let scaffold = PeriodicSet::new(lat, [Point::new(0, 0), Point::new(1, 0)]);
        let tiling = SlideTiling {
            scaffold,
            substitutions: vec![Substitution {
                direction: Point::new(0, 1),
                anchor: Point::new(0, 0),
                period: 2,
                word: vec![false, true],
            }],
        };
        let text = slide_tiling_to_text(&tiling);
        assert_eq!(parse_slide_tiling(&text).unwrap(), tiling);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(parse_tile("0 0\n1 0").is_err());
        assert!(parse_periodic_set("lattice 2 0 0\nresidues\n0 0").is_err());
        assert!(parse_slide_tiling("lattice 2 0 0 2\nresidues\n0 0").is_err());
        assert!(parse_tile("dim 3\n0 0 0").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_set_round_trip(
            ax in 1i64..6, cy in 1i64..6, cx in 0i64..6,
            res in proptest::collection::vec((0i64..6, 0i64..6), 0..8)) {
            let lat = Lattice::from_generators(
                Dim::Two,
                &[Point::new(ax, 0), Point::new(cx, cy)],
            ).unwrap();
            let s = PeriodicSet::new(lat, res.into_iter().map(|(x, y)| Point::new(x, y)));
            prop_assert_eq!(parse_periodic_set(&periodic_set_to_text(&s)).unwrap(), s.clone());
            prop_assert_eq!(parse_periodic_set(&periodic_set_to_json(&s)).unwrap(), s);
        }
    }
}
