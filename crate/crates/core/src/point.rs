//! Integer vectors in `Z^1` and `Z^2`, the wedge product, Cramer
//! decomposition and primitive parts.
//!
//! One-dimensional objects are stored with `y = 0`; the ambient dimension
//! travels on the containing tile, lattice or periodic set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::TilingError;
use crate::Result;

/// Ambient dimension of a tiling object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn as_usize(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }

    pub fn check(self, other: Dim) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(TilingError::DimensionMismatch {
                expected: self,
                got: other,
            })
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_usize())
    }
}

/// An integer vector. Doubles as a position and a direction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub const ORIGIN: Point = Point { x: 0, y: 0 };

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// A 1D point embedded on the x-axis.
    pub const fn new_1d(x: i64) -> Self {
        Point { x, y: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Squared Euclidean norm, exact.
    pub fn norm_sq(self) -> i64 {
        let n = (self.x as i128) * (self.x as i128) + (self.y as i128) * (self.y as i128);
        i64::try_from(n).expect("coordinate overflow in norm")
    }

    pub fn scale(self, r: i64) -> Point {
        Point::new(self.x * r, self.y * r)
    }

    /// Canonical sign for a direction line: flips so that `x > 0`, or
    /// `x == 0` and `y > 0`. The zero vector is returned unchanged.
    pub fn canonical_sign(self) -> Point {
        if self.x < 0 || (self.x == 0 && self.y < 0) {
            -self
        } else {
            self
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<i64> for Point {
    type Output = Point;
    fn mul(self, rhs: i64) -> Point {
        self.scale(rhs)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.end()
    }
}

/// 2x2 determinant of the matrix with rows `h1`, `h2`. Zero exactly when
/// the two vectors are commensurable.
pub fn wedge(h1: Point, h2: Point) -> i64 {
    let d = (h1.x as i128) * (h2.y as i128) - (h1.y as i128) * (h2.x as i128);
    i64::try_from(d).expect("coordinate overflow in wedge")
}

/// True when one vector is a rational multiple of the other.
pub fn commensurable(h1: Point, h2: Point) -> bool {
    wedge(h1, h2) == 0
}

/// Writes `v = c1 h1 + c2 h2` by Cramer's rule with exact rationals.
/// The denominators divide `h1 ∧ h2`, which also gives the lattice
/// inclusion `|h1 ∧ h2| Z^2 ⊂ <h1, h2>`.
pub fn cramer_decompose(v: Point, h1: Point, h2: Point) -> Result<(BigRational, BigRational)> {
    let d = wedge(h1, h2);
    if d == 0 {
        return Err(TilingError::CommensurableDirections);
    }
    let c1 = BigRational::new(BigInt::from(wedge(v, h2)), BigInt::from(d));
    let c2 = BigRational::new(BigInt::from(wedge(v, h1)), BigInt::from(-d));
    Ok((c1, c2))
}

/// Splits a nonzero vector as `multiplicity * primitive` with the primitive
/// part having coprime coordinates. The decomposition is unique.
pub fn primitive_part(h: Point) -> Result<(i64, Point)> {
    if h.is_zero() {
        return Err(TilingError::ZeroVector);
    }
    let g = h.x.abs().gcd(&h.y.abs());
    Ok((g, Point::new(h.x / g, h.y / g)))
}

/// Deterministic scan order over direction-line representatives of
/// `Z^2 \ {0}`: ascending squared norm, then descending x, then
/// descending y. Only canonical-sign representatives are produced.
pub fn direction_scan() -> impl Iterator<Item = Point> {
    (1i64..).flat_map(|n2| {
        // all representatives with norm_sq == n2
        let r = (n2 as f64).sqrt() as i64 + 1;
        let mut ring: Vec<Point> = Vec::new();
        for x in (0..=r).rev() {
            let rest = n2 - x * x;
            if rest < 0 {
                continue;
            }
            let mut ys: Vec<i64> = Vec::new();
            let ry = isqrt_i64(rest);
            if ry * ry == rest {
                if x == 0 {
                    ys.push(ry); // (0, y>0) only
                } else {
                    ys.push(ry);
                    if ry != 0 {
                        ys.push(-ry);
                    }
                }
            }
            ys.sort_unstable_by(|a, b| b.cmp(a));
            for y in ys {
                ring.push(Point::new(x, y));
            }
        }
        ring
    })
}

/// Floor of the square root of a nonnegative `i64`.
pub fn isqrt_i64(n: i64) -> i64 {
    assert!(n >= 0);
    isqrt_u128(n as u128) as i64
}

/// Floor of the square root of a `u128`, by Newton iteration.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = 1u128 << (n.ilog2() / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Floor of the square root of a nonnegative `BigInt`.
pub fn isqrt_big(n: &BigInt) -> BigInt {
    use num_traits::{One, Zero};
    assert!(n >= &BigInt::zero());
    if n < &BigInt::from(2) {
        return n.clone();
    }
    let bits = n.bits();
    let mut x = BigInt::one() << (bits / 2 + 1);
    loop {
        let y = (&x + n / &x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}
