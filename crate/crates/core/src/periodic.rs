//! Lattice-periodic sets and functions on the quotient `Z^d / Λ`, with
//! exact convolution against finite tiles.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::point::{Dim, Point};
use crate::tile::Tile;
use crate::Result;

/// A Λ-periodic subset of `Z^d`, stored as the set of canonical coset
/// representatives it occupies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicSet {
    lattice: Lattice,
    residues: BTreeSet<Point>,
}

impl PeriodicSet {
    pub fn new(lattice: Lattice, residues: impl IntoIterator<Item = Point>) -> PeriodicSet {
        let residues = residues.into_iter().map(|p| lattice.reduce(p)).collect();
        PeriodicSet { lattice, residues }
    }

    /// The lattice itself viewed as a set.
    pub fn lattice_set(lattice: Lattice) -> PeriodicSet {
        PeriodicSet::new(lattice, [Point::new(0, 0)])
    }

    /// All of `Z^d`.
    pub fn full(dim: Dim) -> PeriodicSet {
        PeriodicSet::lattice_set(Lattice::standard(dim))
    }

    pub fn empty(dim: Dim) -> PeriodicSet {
        PeriodicSet {
            lattice: Lattice::standard(dim),
            residues: BTreeSet::new(),
        }
    }

    pub fn dim(&self) -> Dim {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn residues(&self) -> impl Iterator<Item = Point> + '_ {
        self.residues.iter().copied()
    }

    pub fn residue_count(&self) -> usize {
        self.residues.len()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.residues.contains(&self.lattice.reduce(p))
    }

    pub fn indicator(&self, p: Point) -> i64 {
        self.contains(p) as i64
    }

    /// Density within one fundamental domain, as (occupied, index).
    pub fn density(&self) -> (usize, i64) {
        (self.residues.len(), self.lattice.index())
    }

    /// Re-expresses the same set over a finer lattice.
    pub fn refine_to(&self, finer: &Lattice) -> Result<PeriodicSet> {
        if !finer.is_sublattice_of(&self.lattice) {
            return Err(TilingError::IncompatibleLattices(format!(
                "{finer} is not a sublattice of {}",
                self.lattice,
            )));
        }
        Ok(PeriodicSet {
            lattice: *finer,
            residues: finer.residues().filter(|&p| self.contains(p)).collect(),
        })
    }

    /// Exact translation test: is the set invariant under `v`?
    pub fn is_invariant_under(&self, v: Point) -> bool {
        self.residues.iter().all(|&r| self.contains(r + v))
    }

    pub fn translate(&self, v: Point) -> PeriodicSet {
        PeriodicSet::new(self.lattice, self.residues.iter().map(|&r| r + v))
    }

    /// Set equality as subsets of `Z^d`, regardless of representation.
    pub fn same_set(&self, other: &PeriodicSet) -> Result<bool> {
        self.dim().check(other.dim())?;
        let joint = self.lattice.intersect(&other.lattice)?;
        Ok(joint
            .residues()
            .all(|p| self.contains(p) == other.contains(p)))
    }

    /// The full stabilizer `{v : A + v = A}` as a lattice. Quadratic in
    /// the index; intended for small quotients.
    pub fn stabilizer(&self) -> Result<Lattice> {
        let mut gens: Vec<Point> = self.lattice.basis();
        for v in self.lattice.residues() {
            if self.is_invariant_under(v) {
                gens.push(v);
            }
        }
        Lattice::from_generators(self.dim(), &gens)
    }

    /// Minimal period along direction `h`: least `t > 0` with `A + th = A`,
    /// if any exists with `th` in the stored lattice's span window.
    pub fn minimal_period_along(&self, h: Point) -> Option<i64> {
        // t h must eventually re-enter the lattice; the order of h in the
        // quotient bounds the search
        let idx = self.lattice.index();
        for t in 1..=idx {
            if self.is_invariant_under(h.scale(t)) {
                return Some(t);
            }
        }
        None
    }
}

impl Serialize for PeriodicSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PeriodicSet", 3)?;
        st.serialize_field("dim", &self.dim().as_usize())?;
        st.serialize_field("lattice", &self.lattice)?;
        match self.dim() {
            Dim::One => {
                let xs: Vec<i64> = self.residues.iter().map(|p| p.x).collect();
                st.serialize_field("residues", &xs)?;
            }
            Dim::Two => {
                let pts: Vec<Point> = self.residues.iter().copied().collect();
                st.serialize_field("residues", &pts)?;
            }
        }
        st.end()
    }
}

/// An integer-valued Λ-periodic function, dense over the fundamental domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicIntFunction {
    lattice: Lattice,
    values: Vec<i64>,
}

impl PeriodicIntFunction {
    pub fn from_fn(lattice: Lattice, mut f: impl FnMut(Point) -> i64) -> PeriodicIntFunction {
        let values = lattice.residues().map(&mut f).collect();
        PeriodicIntFunction { lattice, values }
    }

    pub fn constant(lattice: Lattice, v: i64) -> PeriodicIntFunction {
        let n = lattice.index() as usize;
        PeriodicIntFunction { lattice, values: vec![v; n] }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn eval(&self, p: Point) -> i64 {
        self.values[self.lattice.position(p)]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_invariant_under(&self, v: Point) -> bool {
        self.lattice.residues().all(|r| self.eval(r + v) == self.eval(r))
    }

    /// Invariance under every generator of `other`, checked exactly.
    pub fn is_periodic_under(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|&v| self.is_invariant_under(v))
    }

    /// Pointwise equality as functions on `Z^d`, via the joint quotient.
    pub fn same_function(&self, other: &PeriodicIntFunction) -> Result<bool> {
        self.lattice.dim().check(other.lattice.dim())?;
        let joint = self.lattice.intersect(&other.lattice)?;
        Ok(joint.residues().all(|p| self.eval(p) == other.eval(p)))
    }

    pub fn sum_over_domain(&self) -> i64 {
        self.values.iter().sum()
    }
}

/// An exact-rational Λ-periodic function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicRationalFunction {
    lattice: Lattice,
    values: Vec<BigRational>,
}

impl PeriodicRationalFunction {
    pub fn from_fn(
        lattice: Lattice,
        mut f: impl FnMut(Point) -> BigRational,
    ) -> PeriodicRationalFunction {
        let values = lattice.residues().map(&mut f).collect();
        PeriodicRationalFunction { lattice, values }
    }

    pub fn zero(lattice: Lattice) -> PeriodicRationalFunction {
        let n = lattice.index() as usize;
        PeriodicRationalFunction {
            lattice,
            values: vec![BigRational::zero(); n],
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn eval(&self, p: Point) -> &BigRational {
        &self.values[self.lattice.position(p)]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn add(&self, other: &PeriodicRationalFunction) -> Result<PeriodicRationalFunction> {
        let joint = self.lattice.intersect(&other.lattice)?;
        Ok(PeriodicRationalFunction::from_fn(joint, |p| {
            self.eval(p) + other.eval(p)
        }))
    }

    pub fn is_invariant_under(&self, v: Point) -> bool {
        self.lattice.residues().all(|r| self.eval(r + v) == self.eval(r))
    }

    /// Fractional part of every value; the mod-1 view.
    pub fn fract(&self) -> PeriodicRationalFunction {
        PeriodicRationalFunction {
            lattice: self.lattice,
            values: self.values.iter().map(|v| v - v.floor()).collect(),
        }
    }
}

/// `1_F * 1_A` as an exact integer function on `Z^d / lattice(A)`:
/// the number of representations `x = f + a`.
pub fn convolve_level(tile: &Tile, set: &PeriodicSet) -> Result<PeriodicIntFunction> {
    tile.dim().check(set.dim())?;
    let lat = *set.lattice();
    let mut dense = vec![false; lat.index() as usize];
    for r in set.residues() {
        dense[lat.position(r)] = true;
    }
    Ok(PeriodicIntFunction::from_fn(lat, |x| {
        tile.elements()
            .iter()
            .map(|&f| dense[lat.position(x - f)] as i64)
            .sum()
    }))
}

/// Is `A` a tiling of `E` by `F` at level `k`, i.e. `1_F * 1_A = k 1_E`?
/// Checked exactly on the joint quotient.
pub fn is_tiling_of_level(
    tile: &Tile,
    set: &PeriodicSet,
    target: &PeriodicSet,
    k: i64,
) -> Result<bool> {
    tile.dim().check(set.dim())?;
    tile.dim().check(target.dim())?;
    let conv = convolve_level(tile, set)?;
    let joint = set.lattice().intersect(target.lattice())?;
    Ok(joint
        .residues()
        .all(|x| conv.eval(x) == k * target.indicator(x)))
}

/// Discrete derivative `Δ_h f(x) = f(x) - f(x - h)`.
pub fn discrete_derivative(f: &PeriodicIntFunction, h: Point) -> PeriodicIntFunction {
    PeriodicIntFunction::from_fn(*f.lattice(), |x| f.eval(x) - f.eval(x - h))
}

/// Discrete derivative for rational functions.
pub fn discrete_derivative_rational(
    f: &PeriodicRationalFunction,
    h: Point,
) -> PeriodicRationalFunction {
    PeriodicRationalFunction::from_fn(*f.lattice(), |x| f.eval(x) - f.eval(x - h))
}
