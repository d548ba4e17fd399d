//! Full-rank integer lattices in Hermite normal form.
//!
//! A 2D lattice is stored by the unique basis `(a, 0), (c, b)` with
//! `a, b > 0` and `0 <= c < a`; here `a` generates the intersection with
//! the x-axis and `b` is the least positive y-coordinate in the lattice.
//! Equal lattices always get identical stored bases, so equality,
//! divisibility and coset enumeration are canonical. A 1D lattice `aZ`
//! is embedded as `(a, 0), (0, 1)`.

use num_integer::Integer;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

use crate::error::TilingError;
use crate::point::{Dim, Point};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    dim: Dim,
    a: i64,
    b: i64,
    c: i64,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            Dim::One => write!(f, "<{}>", self.a),
            Dim::Two => write!(f, "<({}, 0), ({}, {})>", self.a, self.c, self.b),
        }
    }
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, s, t) = xgcd(b, a.rem_euclid(b));
    (g, t, s - a.div_euclid(b) * t)
}

impl Lattice {
    /// `Z^d`.
    pub fn standard(dim: Dim) -> Lattice {
        Lattice { dim, a: 1, b: 1, c: 0 }
    }

    /// `l Z^d`.
    pub fn scaled_standard(dim: Dim, l: i64) -> Lattice {
        assert!(l >= 1, "scale must be positive");
        match dim {
            Dim::One => Lattice { dim, a: l, b: 1, c: 0 },
            Dim::Two => Lattice { dim, a: l, b: l, c: 0 },
        }
    }

    /// Canonicalizes a spanning set into HNF. Errors with `SingularBasis`
    /// when the rows do not span a full-rank lattice.
    pub fn from_generators(dim: Dim, rows: &[Point]) -> Result<Lattice> {
        match dim {
            Dim::One => {
                let mut a: i128 = 0;
                for r in rows {
                    if r.y != 0 {
                        return Err(TilingError::DimensionMismatch {
                            expected: Dim::One,
                            got: Dim::Two,
                        });
                    }
                    a = a.gcd(&(r.x as i128));
                }
                if a == 0 {
                    return Err(TilingError::SingularBasis);
                }
                Ok(Lattice { dim, a: a as i64, b: 1, c: 0 })
            }
            Dim::Two => {
                // Gaussian elimination over Z on the y-column; the pivot row
                // keeps the running gcd of y-components and eliminated rows
                // contribute x-axis generators.
                let mut xs: i128 = 0;
                let mut pivot: Option<(i128, i128)> = None;
                for r in rows {
                    let mut row = (r.x as i128, r.y as i128);
                    if row.1 == 0 {
                        xs = xs.gcd(&row.0);
                        continue;
                    }
                    match pivot {
                        None => pivot = Some(row),
                        Some(p) => {
                            let (g, s, t) = xgcd(p.1, row.1);
                            let new_pivot = (s * p.0 + t * row.0, g);
                            let complement = (p.1 / g) * row.0 - (row.1 / g) * p.0;
                            xs = xs.gcd(&complement);
                            row = new_pivot;
                            pivot = Some(row);
                        }
                    }
                }
                let (px, py) = pivot.ok_or(TilingError::SingularBasis)?;
                if xs == 0 {
                    return Err(TilingError::SingularBasis);
                }
                let a = xs.abs();
                let (px, py) = if py < 0 { (-px, -py) } else { (px, py) };
                let c = px.rem_euclid(a);
                let (a, b, c) = (
                    i64::try_from(a).map_err(|_| TilingError::Overflow("lattice basis".into()))?,
                    i64::try_from(py).map_err(|_| TilingError::Overflow("lattice basis".into()))?,
                    i64::try_from(c).map_err(|_| TilingError::Overflow("lattice basis".into()))?,
                );
                Ok(Lattice { dim: Dim::Two, a, b, c })
            }
        }
    }

    /// Canonicalizes a `d x d` basis matrix given as rows.
    pub fn canonicalize(dim: Dim, rows: &[Point]) -> Result<Lattice> {
        if rows.len() != dim.as_usize() {
            return Err(TilingError::Parse(format!(
                "expected {} basis rows, got {}",
                dim.as_usize(),
                rows.len()
            )));
        }
        Self::from_generators(dim, rows)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Index `[Z^d : Λ]`, always `a * b`.
    pub fn index(&self) -> i64 {
        self.a
            .checked_mul(self.b)
            .expect("lattice index overflow")
    }

    /// HNF basis rows.
    pub fn basis(&self) -> Vec<Point> {
        match self.dim {
            Dim::One => vec![Point::new_1d(self.a)],
            Dim::Two => vec![Point::new(self.a, 0), Point::new(self.c, self.b)],
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        if p.y % self.b != 0 {
            return false;
        }
        let n = p.y / self.b;
        (p.x as i128 - n as i128 * self.c as i128).rem_euclid(self.a as i128) == 0
    }

    /// Canonical representative of `p`'s coset in the HNF box
    /// `[0, a) x [0, b)`; floor semantics for negatives.
    pub fn reduce(&self, p: Point) -> Point {
        let n = p.y.div_euclid(self.b);
        let y = p.y - n * self.b;
        let x = (p.x as i128 - n as i128 * self.c as i128).rem_euclid(self.a as i128) as i64;
        Point::new(x, y)
    }

    /// Dense index of a (not necessarily reduced) point, in `0..index()`.
    pub fn position(&self, p: Point) -> usize {
        let r = self.reduce(p);
        (r.x * self.b + r.y) as usize
    }

    /// The canonical coset representatives, in `position` order.
    pub fn residues(&self) -> impl Iterator<Item = Point> {
        let (a, b) = (self.a, self.b);
        (0..a).flat_map(move |x| (0..b).map(move |y| Point::new(x, y)))
    }

    /// `self ⊆ other` as subgroups.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.basis().iter().all(|&v| other.contains(v))
    }

    /// `r Λ`.
    pub fn scaled(&self, r: i64) -> Lattice {
        assert!(r >= 1);
        match self.dim {
            Dim::One => Lattice { dim: self.dim, a: self.a * r, b: 1, c: 0 },
            Dim::Two => Lattice {
                dim: self.dim,
                a: self.a * r,
                b: self.b * r,
                c: self.c * r,
            },
        }
    }

    /// Intersection of two full-rank lattices; always full rank.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.dim.check(other.dim)?;
        let (a1, b1, c1) = (self.a as i128, self.b as i128, self.c as i128);
        let (a2, b2, c2) = (other.a as i128, other.b as i128, other.c as i128);
        let a = a1.lcm(&a2);
        // least positive y in the intersection: multiples t*B of B = lcm(b1, b2)
        // admit an x iff the two congruences agree mod gcd(a1, a2)
        let bb = b1.lcm(&b2);
        let g = a1.gcd(&a2);
        let delta = ((bb / b1) * c1 - (bb / b2) * c2).rem_euclid(g.max(1));
        let t = if g == 0 { 1 } else { g / delta.gcd(&g) };
        let b = t * bb;
        // CRT for the x-coordinate at height b
        let r1 = ((b / b1) * c1).rem_euclid(a1);
        let r2 = ((b / b2) * c2).rem_euclid(a2);
        let (gg, s, _) = xgcd(a1, a2);
        debug_assert_eq!((r2 - r1).rem_euclid(gg), 0);
        let k = ((r2 - r1) / gg * s).rem_euclid(a2 / gg);
        let c = (r1 + a1 * k).rem_euclid(a);
        let (a, b, c) = (
            i64::try_from(a).map_err(|_| TilingError::Overflow("lattice intersection".into()))?,
            i64::try_from(b).map_err(|_| TilingError::Overflow("lattice intersection".into()))?,
            i64::try_from(c).map_err(|_| TilingError::Overflow("lattice intersection".into()))?,
        );
        Ok(Lattice { dim: self.dim, a, b, c })
    }

    /// Least `t > 0` with `t Z^d ⊆ Λ`.
    pub fn min_scalar_exponent(&self) -> i64 {
        match self.dim {
            Dim::One => self.a,
            Dim::Two => {
                // (0, t) in Λ needs b | t and a | (t/b) c
                let u = if self.c == 0 { 1 } else { self.a / self.a.gcd(&self.c) };
                self.a.lcm(&(self.b * u))
            }
        }
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.dim {
            Dim::One => {
                let mut seq = serializer.serialize_seq(Some(1))?;
                seq.serialize_element(&vec![self.a])?;
                seq.end()
            }
            Dim::Two => {
                let mut seq = serializer.serialize_seq(Some(2))?;
                seq.serialize_element(&vec![self.a, 0])?;
                seq.serialize_element(&vec![self.c, self.b])?;
                seq.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat2(rows: &[(i64, i64)]) -> Lattice {
        let pts: Vec<Point> = rows.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Lattice::from_generators(Dim::Two, &pts).unwrap()
    }

    #[test]
    fn canonical_diagonal() {
        let l = lat2(&[(2, 0), (0, 2)]);
        assert_eq!(l.basis(), vec![Point::new(2, 0), Point::new(0, 2)]);
        assert_eq!(l.index(), 4);
    }

    #[test]
    fn unimodular_is_standard() {
        let l = lat2(&[(1, 1), (0, 1)]);
        assert_eq!(l, Lattice::standard(Dim::Two));
        assert_eq!(l.index(), 1);
    }

    #[test]
    fn hnf_4022() {
        let l = lat2(&[(4, 0), (2, 2)]);
        assert_eq!(l.basis(), vec![Point::new(4, 0), Point::new(2, 2)]);
        assert_eq!(l.index(), 8);
        // oracle: count inequivalent points of the 4x4 box by brute-force
        // membership scan
        let member = |p: Point| -> bool {
            for m in -8..=8i64 {
                for n in -8..=8i64 {
                    if Point::new(4 * m + 2 * n, 2 * n) == p {
                        return true;
                    }
                }
            }
            false
        };
        let mut residues = Vec::new();
        'outer: for x in 0..4i64 {
            for y in 0..4i64 {
                let p = Point::new(x, y);
                for &q in &residues {
                    if member(p - q) {
                        continue 'outer;
                    }
                }
                residues.push(p);
            }
        }
        assert_eq!(residues.len() as i64 * 16 / (4 * 4), 8);
        for x in 0..4 {
            for y in 0..4 {
                let p = Point::new(x, y);
                assert_eq!(l.contains(p), member(p), "membership mismatch at {p}");
            }
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            Lattice::from_generators(Dim::Two, &[Point::new(2, 4), Point::new(1, 2)]),
            Err(TilingError::SingularBasis)
        ));
    }

    #[test]
    fn reduce_floor_semantics() {
        let l = lat2(&[(4, 0), (2, 2)]);
        assert_eq!(l.reduce(Point::new(-1, -1)), Point::new(1, 1));
        for x in -10..10 {
            for y in -10..10 {
                let p = Point::new(x, y);
                let r = l.reduce(p);
                assert!(r.x >= 0 && r.x < 4 && r.y >= 0 && r.y < 2);
                assert!(l.contains(p - r));
            }
        }
    }

    #[test]
    fn one_dimensional() {
        let l = Lattice::from_generators(Dim::One, &[Point::new_1d(6), Point::new_1d(10)]).unwrap();
        assert_eq!(l.index(), 2);
        assert!(l.contains(Point::new_1d(-4)));
        assert!(!l.contains(Point::new_1d(3)));
    }

    #[test]
    fn intersection_examples() {
        let col = lat2(&[(1, 0), (0, 2)]); // Z x 2Z
        let row = lat2(&[(2, 0), (0, 1)]); // 2Z x Z
        assert_eq!(col.intersect(&row).unwrap(), lat2(&[(2, 0), (0, 2)]));

        let checker = lat2(&[(2, 0), (1, 1)]);
        assert_eq!(checker.intersect(&row).unwrap(), lat2(&[(2, 0), (0, 2)]));

        // intersection membership oracle on a window
        let l1 = lat2(&[(4, 0), (2, 2)]);
        let l2 = lat2(&[(3, 0), (1, 3)]);
        let li = l1.intersect(&l2).unwrap();
        for x in -15..15 {
            for y in -15..15 {
                let p = Point::new(x, y);
                assert_eq!(li.contains(p), l1.contains(p) && l2.contains(p));
            }
        }
    }

    #[test]
    fn scalar_exponent() {
        assert_eq!(lat2(&[(2, 0), (0, 2)]).min_scalar_exponent(), 2);
        assert_eq!(lat2(&[(4, 0), (2, 2)]).min_scalar_exponent(), 4);
        let l = lat2(&[(4, 0), (2, 2)]);
        let t = l.min_scalar_exponent();
        assert!(l.contains(Point::new(t, 0)) && l.contains(Point::new(0, t)));
        for s in 1..t {
            assert!(!(l.contains(Point::new(s, 0)) && l.contains(Point::new(0, s))));
        }
    }

    proptest! {
        #[test]
        fn canonicalize_idempotent_and_order_free(
            ax in -9i64..9, ay in -9i64..9, bx in -9i64..9, by in -9i64..9) {
            let r1 = Point::new(ax, ay);
            let r2 = Point::new(bx, by);
            prop_assume!(crate::point::wedge(r1, r2) != 0);
            let l = Lattice::from_generators(Dim::Two, &[r1, r2]).unwrap();
            let l_swapped = Lattice::from_generators(Dim::Two, &[r2, r1]).unwrap();
            prop_assert_eq!(l, l_swapped);
            let l_again = Lattice::from_generators(Dim::Two, &l.basis()).unwrap();
            prop_assert_eq!(l, l_again);
            prop_assert_eq!(l.index(), crate::point::wedge(r1, r2).abs());
            // generators are members, and reduce is a retraction
            prop_assert!(l.contains(r1) && l.contains(r2));
            for p in l.residues() {
                prop_assert_eq!(l.reduce(p), p);
            }
        }

        #[test]
        fn membership_matches_combination(
            ax in -6i64..6, ay in -6i64..6, bx in -6i64..6, by in -6i64..6,
            px in -12i64..12, py in -12i64..12) {
            let r1 = Point::new(ax, ay);
            let r2 = Point::new(bx, by);
            prop_assume!(crate::point::wedge(r1, r2) != 0);
            let l = Lattice::from_generators(Dim::Two, &[r1, r2]).unwrap();
            let p = Point::new(px, py);
            // solve p = m r1 + n r2 over the rationals; member iff integral
            let (c1, c2) = crate::point::cramer_decompose(p, r1, r2).unwrap();
            let integral = c1.is_integer() && c2.is_integer();
            prop_assert_eq!(l.contains(p), integral);
        }
    }
}
