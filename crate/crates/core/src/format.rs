//! Deterministic decimal rendering of exact rationals.
//!
//! All file output in this workspace prints numbers through these functions
//! so that reruns are byte-identical: normalized scientific notation with a
//! fixed count of significant digits, computed by exact integer division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// round to nearest, ties to even (for centers)
    NearestEven,
    /// round away from zero (for radii: never under-report)
    Up,
}

/// `x` in normalized scientific notation `d.ddd...e<exp>` with exactly
/// `sig` significant digits. Zero prints as `0`.
pub fn sci_string(x: &BigRational, sig: usize, rounding: Rounding) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();

    // initial decimal-exponent estimate from digit counts
    let mut e10 = num.to_string().len() as i64 - den.to_string().len() as i64;
    loop {
        let shift = sig as i64 - 1 - e10;
        let (n, d) = if shift >= 0 {
            (&num * pow10(shift as u32), den.clone())
        } else {
            (num.clone(), &den * pow10((-shift) as u32))
        };
        let digits = divide_rounded(&n, &d, rounding);
        let lo = pow10(sig as u32 - 1);
        let hi = pow10(sig as u32);
        match (digits.cmp(&lo), digits.cmp(&hi)) {
            (Ordering::Less, _) => e10 -= 1,
            (_, Ordering::Less) => {
                let s = digits.to_string();
                let mut out = String::with_capacity(sig + 8);
                if neg {
                    out.push('-');
                }
                out.push_str(&s[..1]);
                if sig > 1 {
                    out.push('.');
                    out.push_str(&s[1..]);
                }
                out.push('e');
                out.push_str(&e10.to_string());
                return out;
            }
            _ => e10 += 1,
        }
    }
}

fn pow10(d: u32) -> BigInt {
    BigInt::from(10u32).pow(d)
}

fn divide_rounded(n: &BigInt, d: &BigInt, rounding: Rounding) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(n, d);
    if r.is_zero() {
        return q;
    }
    match rounding {
        Rounding::Up => q + 1,
        Rounding::NearestEven => {
            let twice: BigInt = &r << 1;
            match twice.cmp(d) {
                Ordering::Less => q,
                Ordering::Greater => q + 1,
                Ordering::Equal => {
                    if num_integer::Integer::is_even(&q) {
                        q
                    } else {
                        q + 1
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn formats_simple_fractions() {
        assert_eq!(sci_string(&rat(1, 12), 10, Rounding::NearestEven), "8.333333333e-2");
        assert_eq!(sci_string(&rat(2, 3), 10, Rounding::NearestEven), "6.666666667e-1");
        assert_eq!(sci_string(&rat(1, 1), 5, Rounding::NearestEven), "1.0000e0");
        assert_eq!(sci_string(&rat(-1, 2), 3, Rounding::NearestEven), "-5.00e-1");
        assert_eq!(sci_string(&rat(0, 1), 10, Rounding::NearestEven), "0");
        assert_eq!(sci_string(&rat(1234, 1), 3, Rounding::NearestEven), "1.23e3");
    }

    #[test]
    fn forty_digit_goldens() {
        assert_eq!(
            sci_string(&rat(1, 12), 40, Rounding::NearestEven),
            "8.333333333333333333333333333333333333333e-2"
        );
        assert_eq!(
            sci_string(&rat(2, 3), 40, Rounding::NearestEven),
            "6.666666666666666666666666666666666666667e-1"
        );
    }

    #[test]
    fn carry_at_boundary() {
        // 0.9999999 rounds up to 1.000e0 at 4 digits
        assert_eq!(sci_string(&rat(9999999, 10000000), 4, Rounding::NearestEven), "1.000e0");
        assert_eq!(sci_string(&rat(999, 1000), 3, Rounding::Up), "9.99e-1");
        assert_eq!(sci_string(&rat(9991, 10000), 3, Rounding::Up), "1.00e0");
    }

    #[test]
    fn ties_go_to_even() {
        assert_eq!(sci_string(&rat(25, 100), 1, Rounding::NearestEven), "2e-1");
        assert_eq!(sci_string(&rat(35, 100), 1, Rounding::NearestEven), "4e-1");
    }

    #[test]
    fn rounding_up_never_shrinks() {
        let x = rat(1, 3);
        let s = sci_string(&x, 6, Rounding::Up);
        assert_eq!(s, "3.33334e-1");
    }
}
