//! Fixed-point evaluation of the supported irrational quantities with
//! explicit remainder bounds.
//!
//! Every function returns a [`FixedBall`] whose radius accounts for series
//! truncation and for each floor division performed along the way. The
//! accounting is deliberately coarse (a few ulps per term); the guard bits
//! absorb it.

use crate::ball::FixedBall;
use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

const GUARD: u32 = 32;

/// sqrt(d) for a positive non-square integer d.
pub fn sqrt_fixed(d: &BigUint, prec: u32) -> FixedBall {
    let s = BigInt::from((d << (2 * prec)).sqrt());
    // s <= sqrt(d)*2^prec < s+1
    FixedBall::from_bounds(s.clone(), s + 1, prec)
}

/// Alternating series for arctan(1/x), summed at scale 2^guard.
/// Returns (sum, error bound in ulps at 2^-guard).
fn arctan_inv(x: u64, guard: u32) -> (BigInt, BigInt) {
    let xx = BigInt::from(x) * x;
    let mut t: BigInt = (BigInt::one() << guard) / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &t / (2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        t = &t / &xx;
        k += 1;
    }
    // each of the k terms carries at most 3 ulps of floor error; the
    // truncated tail of the alternating series is below 3 ulps as well
    (sum, BigInt::from(3 * (k + 2)))
}

/// pi via Machin's formula 16*arctan(1/5) - 4*arctan(1/239).
pub fn pi_fixed(prec: u32) -> FixedBall {
    let guard = prec + GUARD;
    let (a, ea) = arctan_inv(5, guard);
    let (b, eb) = arctan_inv(239, guard);
    let m = (a << 4) - (b << 2);
    let r = (ea << 4) + (eb << 2);
    shift_down(m, r, guard, prec)
}

/// e as the exponential series with incremental floor divisions.
pub fn e_fixed(prec: u32) -> FixedBall {
    let guard = prec + GUARD;
    let mut t: BigInt = BigInt::one() << guard;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        sum += &t;
        k += 1;
        t = &t / k;
        if t.is_zero() {
            break;
        }
    }
    // <= 2 ulps of floor error per term, tail under 2 ulps
    let r = BigInt::from(2 * (k + 2));
    shift_down(sum, r, guard, prec)
}

/// atanh(n/d) for 0 <= n/d <= 1/2, at scale 2^guard.
/// Returns (sum, error bound in ulps).
fn atanh_frac(n: u64, d: u64, guard: u32) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::zero());
    }
    debug_assert!(2 * n <= d);
    let nn = BigInt::from(n) * n;
    let dd = BigInt::from(d) * d;
    let mut t: BigInt = (BigInt::one() << guard) * n / d;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &t / (2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        t = &t * &nn / &dd;
        k += 1;
    }
    (sum, BigInt::from(3 * (k + 2)))
}

/// ln(2) = 2*atanh(1/3).
pub fn ln2_fixed_guarded(guard: u32) -> (BigInt, BigInt) {
    let (s, e) = atanh_frac(1, 3, guard);
    (s << 1, (e << 1) + 1)
}

/// ln(b) for an integer b >= 1, as r*ln(2) + 2*atanh((b-2^r)/(b+2^r)).
pub fn ln_fixed(b: u64, prec: u32) -> FixedBall {
    assert!(b >= 1);
    let guard = prec + GUARD;
    let r = 63 - b.leading_zeros();
    let pow = 1u64 << r;
    let (l2, e2) = ln2_fixed_guarded(guard);
    let (at, ea) = atanh_frac(b - pow, b + pow, guard);
    let m = l2 * r + (at << 1);
    let e = e2 * r + (ea << 1) + 1;
    shift_down(m, e, guard, prec)
}

/// ln(b)^(wn/wd) for b >= 2 and wn/wd >= 1, certified via directed
/// integer roots on the interval endpoints.
pub fn ln_pow_fixed(b: u64, wn: u32, wd: u32, prec: u32) -> FixedBall {
    assert!(b >= 2 && wd >= 1 && wn >= wd);
    let l = ln_fixed(b, prec);
    let g = l.prec;
    let lo = l.lower().max(BigInt::zero()).to_biguint().expect(">= 0");
    let hi = l.upper().to_biguint().expect(">= 0");
    // ((x*2^-g)^wn)^(1/wd) at scale 2^-prec:
    // wd-th root of x^wn * 2^(prec*wd - g*wn)
    let shift = prec as i64 * wd as i64 - g as i64 * wn as i64;
    let adjust = |v: BigUint| -> BigUint {
        if shift >= 0 {
            v << (shift as u32)
        } else {
            v >> ((-shift) as u32)
        }
    };
    let root_lo = BigInt::from(adjust(lo.pow(wn)).nth_root(wd));
    let root_hi = BigInt::from(adjust(hi.pow(wn)).nth_root(wd)) + 2;
    FixedBall::from_bounds(root_lo, root_hi, prec)
}

fn shift_down(m: BigInt, r: BigInt, from: u32, to: u32) -> FixedBall {
    debug_assert!(from >= to);
    let s = from - to;
    let lo = (m.clone() - &r) >> s;
    let hi = ((m + r) >> s) + 1;
    FixedBall::from_bounds(lo, hi, to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Num;

    /// First 50 fractional decimal digits, from the ball's lower bound;
    /// the radius must be too small to disturb them.
    fn digits(ball: &FixedBall, int_part: &str, frac: &str) -> bool {
        let p = ball.prec;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let lo = (ball.lower() * &scale) >> p;
        let hi = (ball.upper() * &scale) >> p;
        let expect = BigInt::from_str_radix(&format!("{int_part}{frac}"), 10).unwrap();
        lo == expect && (hi.clone() == expect || hi == expect + 1)
    }

    #[test]
    fn pi_256_bits() {
        let b = pi_fixed(256);
        assert!(digits(
            &b,
            "3",
            "14159265358979323846264338327950288419716939937510"
        ));
        assert!(b.r < BigInt::from(16));
    }

    #[test]
    fn e_256_bits() {
        let b = e_fixed(256);
        assert!(digits(
            &b,
            "2",
            "71828182845904523536028747135266249775724709369995"
        ));
        assert!(b.r < BigInt::from(16));
    }

    #[test]
    fn sqrt2_256_bits() {
        let b = sqrt_fixed(&BigUint::from(2u32), 256);
        assert!(digits(
            &b,
            "1",
            "41421356237309504880168872420969807856967187537694"
        ));
    }

    #[test]
    fn ln2_via_ln_fixed() {
        let b = ln_fixed(2, 256);
        assert!(digits(
            &b,
            "0",
            "69314718055994530941723212145817656807550013436025"
        ));
    }

    #[test]
    fn ln10() {
        let b = ln_fixed(10, 256);
        assert!(digits(
            &b,
            "2",
            "30258509299404568401799145468436420760110148862877"
        ));
    }

    #[test]
    fn ln_pow_eleven_tenths() {
        // ln(100)^1.1 = 5.36500650402579030477185964111...
        let b = ln_pow_fixed(100, 11, 10, 192);
        let scale = BigInt::from(10u32).pow(20);
        let lo = (b.lower() * &scale) >> b.prec;
        let hi = (b.upper() * &scale) >> b.prec;
        let expect = BigInt::from_str_radix("536500650402579030477", 10).unwrap();
        assert!(lo <= expect && expect <= hi, "lo={lo} hi={hi}");
    }

    #[test]
    fn ln_monotone_on_integers() {
        let mut prev = ln_fixed(2, 128);
        for b in 3u64..200 {
            let cur = ln_fixed(b, 128);
            assert!(cur.lower() > prev.lower() - 8);
            prev = cur;
        }
    }
}
