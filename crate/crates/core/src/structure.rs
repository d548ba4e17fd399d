//! Exact structure decomposition of a periodic tiling: the indicator of
//! the tiling set equals the level function minus one ray-density term per
//! nonzero tile element, and the terms regroup by commensurability class
//! into finitely many one-directional periodic rational functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dilation::{dilation_modulus, phi_function, DilationModulus};
use crate::error::TilingError;
use crate::periodic::{
    convolve_level, is_tiling_of_level, PeriodicRationalFunction, PeriodicSet,
};
use crate::point::{primitive_part, Point};
use crate::tile::Tile;
use crate::Result;

/// One commensurability class of tile directions with its combined
/// density function.
#[derive(Debug, Clone)]
pub struct DirectionClass {
    /// Common period direction: the primitive class direction scaled by
    /// the lcm of the members' multiplicities. `phi` is `<q h>`-periodic.
    pub h: Point,
    /// The tile elements in this class.
    pub members: Vec<Point>,
    /// Sum of the members' ray densities; takes values in `[0, k]`.
    pub phi: PeriodicRationalFunction,
}

/// The verified decomposition `1_A = k 1_E - sum_j phi_j`.
#[derive(Debug, Clone)]
pub struct PhiDecomposition {
    pub tile: Tile,
    pub set: PeriodicSet,
    pub target: PeriodicSet,
    pub level: i64,
    pub ell: i64,
    pub modulus: DilationModulus,
    /// Per-element ray densities `(f, phi_f)` for `f` in `F \ {0}`.
    pub per_element: Vec<(Point, PeriodicRationalFunction)>,
    /// Classes sorted by canonical primitive direction.
    pub classes: Vec<DirectionClass>,
}

impl PhiDecomposition {
    pub fn m(&self) -> usize {
        self.classes.len()
    }

    /// The class period directions `h_1, ..., h_m`.
    pub fn directions(&self) -> Vec<Point> {
        self.classes.iter().map(|c| c.h).collect()
    }
}

/// Margin data for an inequality whose sharp constant the theory leaves
/// unspecified; compared in squared arithmetic and never asserted.
#[derive(Debug, Clone, Serialize)]
pub struct MarginReport {
    pub quantity: String,
    pub value_sq: BigInt,
    pub unit_bound_sq: BigInt,
    pub within_unit_bound: bool,
}

impl MarginReport {
    pub fn new(quantity: &str, value_sq: BigInt, unit_bound_sq: BigInt) -> MarginReport {
        let within = value_sq <= unit_bound_sq;
        MarginReport {
            quantity: quantity.to_string(),
            value_sq,
            unit_bound_sq,
            within_unit_bound: within,
        }
    }
}

/// Computes and fully verifies the structure decomposition of a level-`k`
/// tiling of `E` by `F`; every identity is checked pointwise with exact
/// rationals before returning.
pub fn structure_decomposition(
    tile: &Tile,
    set: &PeriodicSet,
    target: &PeriodicSet,
    k: i64,
    ell: i64,
) -> Result<PhiDecomposition> {
    if tile.len() < 2 {
        return Err(TilingError::PreconditionFailed(
            "structure decomposition needs |F| > 1".into(),
        ));
    }
    if !is_tiling_of_level(tile, set, target, k)? {
        return Err(TilingError::PreconditionFailed(format!(
            "input is not a level-{k} tiling of the target"
        )));
    }
    let conv = convolve_level(tile, set)?;
    let conv_periods = crate::lattice::Lattice::scaled_standard(tile.dim(), ell);
    if !conv.is_periodic_under(&conv_periods) {
        return Err(TilingError::PreconditionFailed(format!(
            "1_F * 1_A is not {ell}Z^d-periodic"
        )));
    }
    let modulus = dilation_modulus(ell, tile, 1)?;
    let lat = *set.lattice();

    let mut per_element: Vec<(Point, PeriodicRationalFunction)> = Vec::new();
    for f in tile.nonzero_elements() {
        per_element.push((f, phi_function(set, f, &modulus.q)?));
    }

    // the exact base identity, one term per nonzero element
    for x in lat.residues() {
        let mut sum = BigRational::zero();
        for (_, phi) in &per_element {
            sum += phi.eval(x);
        }
        let lhs = BigRational::from(BigInt::from(set.indicator(x)));
        let rhs = BigRational::from(BigInt::from(conv.eval(x))) - &sum;
        if lhs != rhs {
            return Err(TilingError::DecompositionMismatch(format!(
                "1_A(x) != 1_F*1_A(x) - sum phi_f(x) at x = {x}"
            )));
        }
    }

    // regroup by commensurability class
    let mut classes: Vec<DirectionClass> = Vec::new();
    for (prim, members) in tile.direction_classes() {
        let mut mult_lcm: i64 = 1;
        for &f in &members {
            let (m, _) = primitive_part(f).expect("nonzero");
            mult_lcm = mult_lcm.lcm(&m);
        }
        let h = prim.scale(mult_lcm);
        let mut phi = PeriodicRationalFunction::zero(lat);
        for &f in &members {
            let pf = &per_element
                .iter()
                .find(|(g, _)| *g == f)
                .expect("member present")
                .1;
            phi = phi.add(pf)?;
        }
        // phi_j is <q h_j>-periodic; test by reduced translation
        let q_red = modulus.q_mod(lat.index());
        if !phi.is_invariant_under(h.scale(q_red)) {
            return Err(TilingError::DecompositionMismatch(format!(
                "phi for class {h} is not <q h>-periodic"
            )));
        }
        // values lie in [0, k]
        let k_rat = BigRational::from(BigInt::from(k));
        if phi
            .values()
            .iter()
            .any(|v| v.is_negative() || *v > k_rat)
        {
            return Err(TilingError::DecompositionMismatch(format!(
                "phi for class {h} leaves [0, k]"
            )));
        }
        classes.push(DirectionClass { h, members, phi });
    }

    let m = classes.len();
    if m > tile.len() - 1 {
        return Err(TilingError::DecompositionMismatch(format!(
            "{m} classes exceed |F| - 1"
        )));
    }

    // grouped identity 1_A = k 1_E - sum_j phi_j and the level bound,
    // on the joint quotient with the target
    let joint = lat.intersect(target.lattice())?;
    let k_rat = BigRational::from(BigInt::from(k));
    for x in joint.residues() {
        let mut sum = BigRational::zero();
        for c in &classes {
            sum += c.phi.eval(x);
        }
        let lhs = BigRational::from(BigInt::from(set.indicator(x)));
        let rhs = BigRational::from(BigInt::from(k * target.indicator(x))) - &sum;
        if lhs != rhs {
            return Err(TilingError::DecompositionMismatch(format!(
                "1_A(x) != k 1_E(x) - sum phi_j(x) at x = {x}"
            )));
        }
        if sum > k_rat {
            return Err(TilingError::DecompositionMismatch(format!(
                "sum phi_j exceeds k at x = {x}"
            )));
        }
    }

    // product bound on the class directions, in squared arithmetic
    let mut prod_sq = BigInt::from(1);
    for c in &classes {
        prod_sq *= BigInt::from(c.h.norm_sq());
    }
    let bound_sq = BigInt::from(tile.diameter_sq()).pow((tile.len() - 1) as u32);
    if prod_sq > bound_sq {
        return Err(TilingError::DecompositionMismatch(format!(
            "product of direction norms exceeds diam(F)^(|F|-1): {prod_sq} > {bound_sq}"
        )));
    }

    Ok(PhiDecomposition {
        tile: tile.clone(),
        set: set.clone(),
        target: target.clone(),
        level: k,
        ell,
        modulus,
        per_element,
        classes,
    })
}

/// The pointwise level constraint `sum_j phi_j <= k` together with the
/// mod-1 identity `sum_f phi_f = 0 mod 1`, checked over the full quotient.
pub fn verify_level_one_constraint(dec: &PhiDecomposition) -> bool {
    let lat = dec.set.lattice();
    let k_rat = BigRational::from(BigInt::from(dec.level));
    lat.residues().all(|x| {
        let mut grouped = BigRational::zero();
        for c in &dec.classes {
            grouped += c.phi.eval(x);
        }
        let mut per_elem = BigRational::zero();
        for (_, phi) in &dec.per_element {
            per_elem += phi.eval(x);
        }
        grouped <= k_rat && per_elem.is_integer()
    })
}
