//! Finite tiles: nonempty duplicate-free sets of integer vectors,
//! normalized to contain the origin.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::TilingError;
use crate::point::{commensurable, Dim, Point, ORIGIN};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    dim: Dim,
    elements: Vec<Point>,
}

impl Tile {
    /// Builds a tile from arbitrary elements. Duplicates are removed and,
    /// when the origin is absent, the whole set is translated by the
    /// lexicographically least element so that `0 ∈ F`.
    pub fn new(dim: Dim, elements: impl IntoIterator<Item = Point>) -> Result<Tile> {
        let mut elems: Vec<Point> = elements.into_iter().collect();
        if elems.is_empty() {
            return Err(TilingError::PreconditionFailed("tile must be nonempty".into()));
        }
        if dim == Dim::One && elems.iter().any(|p| p.y != 0) {
            return Err(TilingError::DimensionMismatch {
                expected: Dim::One,
                got: Dim::Two,
            });
        }
        elems.sort_unstable();
        elems.dedup();
        if !elems.contains(&ORIGIN) {
            let base = elems[0];
            for e in &mut elems {
                *e = *e - base;
            }
        }
        Ok(Tile { dim, elements: elems })
    }

    pub fn new_1d(xs: impl IntoIterator<Item = i64>) -> Result<Tile> {
        Tile::new(Dim::One, xs.into_iter().map(Point::new_1d))
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn contains(&self, p: Point) -> bool {
        self.elements.binary_search(&p).is_ok()
    }

    /// Squared diameter: the largest pairwise squared Euclidean distance.
    /// Kept squared so every comparison stays in integer arithmetic.
    pub fn diameter_sq(&self) -> i64 {
        let mut best = 0;
        for (i, &p) in self.elements.iter().enumerate() {
            for &q in &self.elements[i + 1..] {
                best = best.max((p - q).norm_sq());
            }
        }
        best
    }

    /// Elementwise dilation `rF`; preserves cardinality and normalization.
    pub fn dilate(&self, r: i64) -> Tile {
        assert!(r >= 1);
        Tile {
            dim: self.dim,
            elements: {
                let mut v: Vec<Point> = self.elements.iter().map(|&p| p.scale(r)).collect();
                v.sort_unstable();
                v
            },
        }
    }

    /// The nonzero elements.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Point> + '_ {
        self.elements.iter().copied().filter(|p| !p.is_zero())
    }

    /// Nonzero elements grouped into commensurability classes, each with a
    /// canonical-sign primitive direction; classes sorted by direction.
    pub fn direction_classes(&self) -> Vec<(Point, Vec<Point>)> {
        let mut classes: Vec<(Point, Vec<Point>)> = Vec::new();
        for f in self.nonzero_elements() {
            let (_, prim) = crate::point::primitive_part(f).expect("nonzero");
            let prim = prim.canonical_sign();
            match classes.iter_mut().find(|(d, _)| *d == prim) {
                Some((_, members)) => members.push(f),
                None => classes.push((prim, vec![f])),
            }
        }
        classes.sort_unstable_by_key(|(d, _)| *d);
        for (_, members) in &mut classes {
            members.sort_unstable();
        }
        classes
    }

    /// The elements lying on the coset `x + <h>` of the cyclic group
    /// generated by `h`.
    pub fn slice_along(&self, h: Point, x: Point) -> Vec<Point> {
        self.elements
            .iter()
            .copied()
            .filter(|&f| {
                let d = f - x;
                if d.is_zero() {
                    return true;
                }
                if !commensurable(d, h) {
                    return false;
                }
                // d must be an exact integer multiple of h
                if h.x != 0 {
                    d.x % h.x == 0 && h.scale(d.x / h.x) == d
                } else {
                    d.y % h.y == 0 && h.scale(d.y / h.y) == d
                }
            })
            .collect()
    }

    /// Representatives of the cosets of `<h>` that meet the tile.
    pub fn coset_representatives_along(&self, h: Point) -> Vec<Point> {
        let mut reps: Vec<Point> = Vec::new();
        'next: for &f in &self.elements {
            for &r in &reps {
                if self.slice_along(h, r).contains(&f) {
                    continue 'next;
                }
            }
            reps.push(f);
        }
        reps
    }
}

impl Serialize for Tile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Tile", 2)?;
        st.serialize_field("dim", &self.dim.as_usize())?;
        match self.dim {
            Dim::One => {
                let xs: Vec<i64> = self.elements.iter().map(|p| p.x).collect();
                st.serialize_field("elements", &xs)?;
            }
            Dim::Two => st.serialize_field("elements", &self.elements)?,
        }
        st.end()
    }
}

/// `{0,1}^2`, the unit square.
pub fn unit_square() -> Tile {
    Tile::new(
        Dim::Two,
        [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(x, y)| Point::new(x, y)),
    )
    .unwrap()
}

/// `{0,2} x {0,1}`, the tile with non-one-periodic tilings.
pub fn spread_square() -> Tile {
    Tile::new(
        Dim::Two,
        [(0, 0), (0, 1), (2, 0), (2, 1)].map(|(x, y)| Point::new(x, y)),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_contain_origin() {
        let t = Tile::new_1d([5, 6, 9]).unwrap();
        assert!(t.contains(ORIGIN));
        assert_eq!(
            t.elements(),
            &[Point::new_1d(0), Point::new_1d(1), Point::new_1d(4)]
        );
        // already contains 0: left untouched even if 0 is not lex-minimal
        let t = Tile::new(Dim::Two, [Point::new(0, 0), Point::new(-1, 3)]).unwrap();
        assert!(t.contains(Point::new(-1, 3)));
    }

    #[test]
    fn diameter_squared() {
        assert_eq!(unit_square().diameter_sq(), 2);
        assert_eq!(spread_square().diameter_sq(), 5);
        assert_eq!(Tile::new_1d([0, 7]).unwrap().diameter_sq(), 49);
    }

    #[test]
    fn dilation() {
        let f = unit_square();
        assert_eq!(f.dilate(1), f);
        let d = f.dilate(3);
        assert_eq!(d.len(), 4);
        assert!(d.contains(Point::new(3, 3)) && d.contains(Point::new(0, 3)));
        let g = Tile::new(Dim::Two, [Point::new(0, 0), Point::new(1, 2)]).unwrap();
        assert_eq!(
            g.dilate(5).elements(),
            &[Point::new(0, 0), Point::new(5, 10)]
        );
    }

    #[test]
    fn classes_of_unit_square() {
        let classes = unit_square().direction_classes();
        let dirs: Vec<Point> = classes.iter().map(|(d, _)| *d).collect();
        assert_eq!(dirs, vec![Point::new(0, 1), Point::new(1, 0), Point::new(1, 1)]);
    }

    #[test]
    fn slices() {
        let f = spread_square();
        let col = f.slice_along(Point::new(0, 1), Point::new(0, 0));
        assert_eq!(col, vec![Point::new(0, 0), Point::new(0, 1)]);
        let reps = f.coset_representatives_along(Point::new(0, 1));
        assert_eq!(reps.len(), 2);
        // an exact multiple is required: (0,2) is on <(0,1)> but not <(0,4)>
        let g = Tile::new(Dim::Two, [Point::new(0, 0), Point::new(0, 2)]).unwrap();
        assert_eq!(g.slice_along(Point::new(0, 4), ORIGIN).len(), 1);
    }
}
