//! Certified enclosures.
//!
//! `FixedBall` is the working representation inside the engine: an integer
//! mantissa and radius at a common power-of-two scale, so that every
//! comparison reduces to integer arithmetic. `BallValue` is the public,
//! exact-rational form used in results.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Enclosure `[(m - r) * 2^-prec, (m + r) * 2^-prec]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedBall {
    pub m: BigInt,
    pub r: BigInt,
    pub prec: u32,
}

impl FixedBall {
    pub fn exact(m: BigInt, prec: u32) -> Self {
        FixedBall {
            m,
            r: BigInt::zero(),
            prec,
        }
    }

    /// Smallest ball covering `[lo, hi]` at the given scale.
    pub fn from_bounds(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        let m: BigInt = (&lo + &hi) >> 1;
        let r = (&hi - &m).max(&m - &lo);
        FixedBall { m, r, prec }
    }

    pub fn lower(&self) -> BigInt {
        &self.m - &self.r
    }

    pub fn upper(&self) -> BigInt {
        &self.m + &self.r
    }

    /// Same enclosure re-expressed at a coarser or finer scale.
    pub fn rescale(&self, prec: u32) -> FixedBall {
        if prec >= self.prec {
            let s = prec - self.prec;
            FixedBall {
                m: &self.m << s,
                r: &self.r << s,
                prec,
            }
        } else {
            let s = self.prec - prec;
            // round the bounds outward
            let lo = self.lower() >> s;
            let hi = (self.upper() >> s) + 1;
            FixedBall::from_bounds(lo, hi, prec)
        }
    }

    pub fn to_ball_value(&self, bits: u32) -> BallValue {
        let den = BigInt::one() << self.prec;
        BallValue {
            center: BigRational::new(self.m.clone(), den.clone()),
            radius: BigRational::new(self.r.clone(), den),
            bits,
        }
    }
}

/// Certified enclosure of a real quantity, with the precision it was
/// requested at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallValue {
    pub center: BigRational,
    pub radius: BigRational,
    pub bits: u32,
}

impl BallValue {
    pub fn exact(center: BigRational, bits: u32) -> Self {
        BallValue {
            center,
            radius: BigRational::zero(),
            bits,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    pub fn lower(&self) -> BigRational {
        &self.center - &self.radius
    }

    pub fn upper(&self) -> BigRational {
        &self.center + &self.radius
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        (&self.center - x).abs() <= self.radius
    }

    /// Subset relation between enclosures.
    pub fn contained_in(&self, outer: &BallValue) -> bool {
        self.lower() >= outer.lower() && self.upper() <= outer.upper()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.center)
    }
}

/// Deterministic rational-to-f64 conversion (scaled integer division).
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let shift = 128u32;
    let q = (x.numer() << shift) / x.denom();
    match q.to_f64() {
        Some(v) => v / 2f64.powi(shift as i32),
        None => f64::NAN,
    }
}

/// Compare two integer intervals `a ± ra` and `b ± rb`.
/// `Some(Equal)` only when both are exact and coincide.
pub fn cmp_intervals(a: &BigInt, ra: &BigInt, b: &BigInt, rb: &BigInt) -> Option<Ordering> {
    if ra.is_zero() && rb.is_zero() {
        return Some(a.cmp(b));
    }
    if a + ra < b - rb {
        return Some(Ordering::Less);
    }
    if a - ra > b + rb {
        return Some(Ordering::Greater);
    }
    None
}
