//! The dilation modulus, dilation-invariance verification, and exact ray
//! densities.
//!
//! For a tile `F` and a bounded integer function `g` with `1_F * g`
//! periodic, convolving against the dilated tile `rF` changes nothing
//! once `r = 1 mod q`, where `q` is the least common multiple of the
//! period scale and all primes up to twice the oscillation times `|F|`.
//! Averaging memberships along the progressions `x - (1+nq)f` yields the
//! exact ray densities that drive the structure decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::TilingError;
use crate::lattice::Lattice;
use crate::periodic::{PeriodicIntFunction, PeriodicRationalFunction, PeriodicSet};
use crate::point::Point;
use crate::tile::Tile;
use crate::Result;

/// All primes `p <= n`.
pub fn primes_upto(n: i64) -> Vec<i64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut m = p * p;
            while m <= n {
                sieve[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as i64).collect()
}

/// The modulus `q` controlling dilation invariance. `q` grows like a
/// primorial in `|F|`, so it is kept as a big integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationModulus {
    pub q: BigInt,
    pub ell: i64,
    /// `2 (sup g - inf g) |F|`, the prime cutoff.
    pub cardinality_bound: i64,
}

impl DilationModulus {
    /// `q` as a machine integer, for paths that must step by `q`.
    pub fn q_i64(&self) -> Result<i64> {
        self.q
            .to_i64()
            .ok_or_else(|| TilingError::Overflow(format!("dilation modulus {} exceeds i64", self.q)))
    }

    /// `q` reduced modulo `m > 0`.
    pub fn q_mod(&self, m: i64) -> i64 {
        (self.q.clone() % BigInt::from(m))
            .to_i64()
            .expect("reduced modulus fits")
    }
}

/// `q = lcm(ell, primes <= 2 * g_oscillation * |F|)`.
pub fn dilation_modulus(ell: i64, tile: &Tile, g_oscillation: i64) -> Result<DilationModulus> {
    if ell < 1 || g_oscillation < 1 {
        return Err(TilingError::PreconditionFailed(
            "ell and g_oscillation must be positive".into(),
        ));
    }
    let bound = 2 * g_oscillation * tile.len() as i64;
    let mut q = BigInt::from(ell);
    for p in primes_upto(bound) {
        q = q.lcm(&BigInt::from(p));
    }
    Ok(DilationModulus { q, ell, cardinality_bound: bound })
}

/// Outcome of one dilation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DilationOutcome {
    /// `r = 1 mod q` and `1_{rF} * g` equals `1_F * g` exactly.
    ExactEqual,
    /// `r` coprime to `q`; `1_{rF} * g` verified periodic only.
    PeriodicOnly,
    /// `r` shares a factor with `q`; nothing is claimed.
    NotApplicable,
    /// The lemma's conclusion failed, which signals an implementation bug.
    Violation(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct DilationCheck {
    pub r: i64,
    pub outcome: DilationOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct DilationReport {
    pub modulus: DilationModulus,
    pub checks: Vec<DilationCheck>,
}

impl DilationReport {
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, DilationOutcome::Violation(_)))
    }
}

/// Checks dilation invariance of `1_F * g` for `g` a periodic integer
/// function, over the listed dilation factors.
pub fn verify_dilation_lemma_fn(
    tile: &Tile,
    g: &PeriodicIntFunction,
    ell: i64,
    r_list: &[i64],
) -> Result<DilationReport> {
    let dim = tile.dim();
    dim.check(g.lattice().dim())?;
    let base = convolve_fn(tile, g);
    let ell_lattice = Lattice::scaled_standard(dim, ell);
    if !base.is_periodic_under(&ell_lattice) {
        return Err(TilingError::PreconditionFailed(format!(
            "1_F * g is not {ell}Z^{dim}-periodic"
        )));
    }
    let osc = g.values().iter().max().unwrap() - g.values().iter().min().unwrap();
    let modulus = dilation_modulus(ell, tile, osc.max(1))?;
    let mut checks = Vec::with_capacity(r_list.len());
    for &r in r_list {
        if r < 1 {
            return Err(TilingError::PreconditionFailed(
                "dilation factors must be positive".into(),
            ));
        }
        let outcome = if ((BigInt::from(r) - BigInt::one()) % &modulus.q).is_zero() {
            let dilated = convolve_fn(&tile.dilate(r), g);
            if dilated == base {
                DilationOutcome::ExactEqual
            } else {
                DilationOutcome::Violation(format!("1_{{{r}F}} * g differs from 1_F * g"))
            }
        } else if BigInt::from(r).gcd(&modulus.q).is_one() {
            let dilated = convolve_fn(&tile.dilate(r), g);
            if dilated.is_periodic_under(&ell_lattice) {
                DilationOutcome::PeriodicOnly
            } else {
                DilationOutcome::Violation(format!("1_{{{r}F}} * g is not {ell}Z^{dim}-periodic"))
            }
        } else {
            DilationOutcome::NotApplicable
        };
        checks.push(DilationCheck { r, outcome });
    }
    Ok(DilationReport { modulus, checks })
}

/// The indicator-set form: `g = 1_A`.
pub fn verify_dilation_lemma(
    tile: &Tile,
    set: &PeriodicSet,
    ell: i64,
    r_list: &[i64],
) -> Result<DilationReport> {
    let g = PeriodicIntFunction::from_fn(*set.lattice(), |p| set.indicator(p));
    verify_dilation_lemma_fn(tile, &g, ell, r_list)
}

fn convolve_fn(tile: &Tile, g: &PeriodicIntFunction) -> PeriodicIntFunction {
    PeriodicIntFunction::from_fn(*g.lattice(), |x| {
        tile.elements().iter().map(|&f| g.eval(x - f)).sum()
    })
}

/// Exact density of `A` along the progression `x - (1+nq)f`, `n >= 0`.
///
/// The progression projects to a coset of the cyclic subgroup generated by
/// `qf` in the quotient, so the limiting density is a finite average. The
/// result, as a function of `x`, is `<qf>`-periodic; these are the
/// functions subtracted in the structure decomposition.
pub fn phi_ray_density(set: &PeriodicSet, f: Point, q: &BigInt, x: Point) -> Result<BigRational> {
    if f.is_zero() {
        return Err(TilingError::ZeroDirection);
    }
    let lat = set.lattice();
    let q_red = (q % BigInt::from(lat.index()))
        .to_i64()
        .expect("reduced modulus fits");
    let step = lat.reduce(f.scale(q_red));
    let start = lat.reduce(x - f);
    let mut hits = 0i64;
    let mut period = 0i64;
    let mut p = start;
    loop {
        hits += set.indicator(p);
        period += 1;
        p = lat.reduce(p - step);
        if p == start {
            break;
        }
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(period)))
}

/// The whole ray-density function `x -> phi_f(x)` on `Z^d / lattice(A)`.
pub fn phi_function(set: &PeriodicSet, f: Point, q: &BigInt) -> Result<PeriodicRationalFunction> {
    if f.is_zero() {
        return Err(TilingError::ZeroDirection);
    }
    let lat = *set.lattice();
    let mut out = Vec::with_capacity(lat.index() as usize);
    for x in lat.residues() {
        out.push(phi_ray_density(set, f, q, x)?);
    }
    Ok(PeriodicRationalFunction::from_fn(lat, |x| {
        out[lat.position(x)].clone()
    }))
}
