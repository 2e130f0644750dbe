//! Continued fractions: certified expansion and convergents.
//!
//! Rationals expand by the Euclidean algorithm (canonical form: final term
//! at least 2 unless the expansion is a bare integer). Quadratics expand by
//! the exact integer recurrence on (A + sqrt(N))/B, so every partial
//! quotient is unconditionally correct. Named constants expand through a
//! shrinking rational enclosure, restarting at doubled precision until the
//! requested depth is certified. Decimal literals expand within their fixed
//! uncertainty interval and report the certified prefix when it runs out.

use crate::error::{Error, Result};
use crate::real::{NamedConstant, Quadratic, RealSpec};
use crate::transcend;
use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    /// integer part
    pub a0: BigInt,
    /// partial quotients after the integer part, all >= 1
    pub terms: Vec<BigInt>,
    /// true iff the real is rational and fully expanded here
    pub terminated: bool,
}

impl ContinuedFraction {
    pub fn len(&self) -> usize {
        1 + self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// First `n` partial quotients (counting the integer part) of the spec.
pub fn cf_expand(spec: &RealSpec, n: usize) -> Result<ContinuedFraction> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    match spec {
        RealSpec::Rational(x) => Ok(expand_rational(x, n)),
        RealSpec::Quadratic(q) => Ok(expand_quadratic(q, n)),
        RealSpec::Constant(c) => expand_constant(*c, n),
        RealSpec::Decimal(d) => {
            let u = d.uncertainty();
            expand_interval(&d.value - &u, &d.value + &u, n)
        }
    }
}

/// Convergents p_i/q_i of an expansion, by the standard recurrence.
/// Every fraction is automatically in lowest terms.
pub fn convergents(cf: &ContinuedFraction) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(cf.len());
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (cf.a0.clone(), BigInt::one());
    out.push((p.clone(), q.clone()));
    for a in &cf.terms {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
    }
    out
}

fn expand_rational(x: &BigRational, n: usize) -> ContinuedFraction {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let a0 = num.div_floor(&den);
    let mut rem = &num - &a0 * &den;
    let mut terms = Vec::new();
    let mut terminated = rem.is_zero();
    while !rem.is_zero() && terms.len() + 1 < n {
        num = std::mem::replace(&mut den, rem);
        let a = num.div_floor(&den);
        rem = num - &a * &den;
        terms.push(a);
        if rem.is_zero() {
            terminated = true;
        }
    }
    ContinuedFraction { a0, terms, terminated }
}

/// Floor of (a + sqrt(n))/b exactly, for non-square n > 0 and b != 0.
fn floor_quad(a: &BigInt, n: &BigUint, b: &BigInt) -> BigInt {
    let t = BigInt::from(n.sqrt()); // floor(sqrt(n))
    let mut q = if b.is_positive() {
        (a + &t).div_floor(b)
    } else {
        (a + &t + 1).div_floor(b)
    };
    // q is a lower bound; raise it while (a + sqrt(n))/b >= q + 1
    loop {
        let w = (&q + 1) * b - a;
        let ge_next = if b.is_positive() {
            sqrt_ge(n, &w)
        } else {
            sqrt_le(n, &w)
        };
        if ge_next {
            q += 1;
        } else {
            return q;
        }
    }
}

/// sqrt(n) >= w, exactly (n is non-square, so equality cannot occur).
fn sqrt_ge(n: &BigUint, w: &BigInt) -> bool {
    if !w.is_positive() {
        return true;
    }
    let w2 = (w * w).to_biguint().expect("positive");
    *n > w2
}

/// sqrt(n) <= w, exactly.
fn sqrt_le(n: &BigUint, w: &BigInt) -> bool {
    if !w.is_positive() {
        return false;
    }
    let w2 = (w * w).to_biguint().expect("positive");
    *n < w2
}

fn expand_quadratic(quad: &Quadratic, n: usize) -> ContinuedFraction {
    // rewrite (P + Q*sqrt(D))/R as (A + sqrt(N))/B with B | (N - A^2)
    let (mut a, nn, mut b) = if quad.r.is_positive() {
        (
            &quad.p * &quad.r,
            (&quad.q * &quad.q * &quad.d * &quad.r * &quad.r)
                .to_biguint()
                .expect("positive"),
            &quad.r * &quad.r,
        )
    } else {
        (
            -(&quad.p * &quad.r),
            (&quad.q * &quad.q * &quad.d * &quad.r * &quad.r)
                .to_biguint()
                .expect("positive"),
            -(&quad.r * &quad.r),
        )
    };
    let nn_int = BigInt::from(nn.clone());
    let a0 = floor_quad(&a, &nn, &b);
    let mut prev = a0.clone();
    let mut terms = Vec::with_capacity(n.saturating_sub(1));
    while terms.len() + 1 < n {
        // x' = 1/(x - a) = (A' + sqrt(N))/B' with A' = aB - A, B' = (N - A'^2)/B
        let a_next = &prev * &b - &a;
        let b_next = (&nn_int - &a_next * &a_next).div_floor(&b);
        debug_assert_eq!(&b_next * &b, &nn_int - &a_next * &a_next);
        a = a_next;
        b = b_next;
        let term = floor_quad(&a, &nn, &b);
        debug_assert!(term.is_positive());
        terms.push(term.clone());
        prev = term;
    }
    ContinuedFraction {
        a0,
        terms,
        terminated: false,
    }
}

/// Certified common prefix of the expansions of every real in [lo, hi].
fn interval_terms(mut lo: BigRational, mut hi: BigRational, n: usize) -> Vec<BigInt> {
    debug_assert!(lo <= hi);
    let mut terms = Vec::new();
    while terms.len() < n {
        let fl = lo.floor().to_integer();
        let fh = hi.floor().to_integer();
        if fl != fh {
            break;
        }
        terms.push(fl.clone());
        let frac_lo = &lo - BigRational::from(fl.clone());
        let frac_hi = &hi - BigRational::from(fl);
        if frac_lo.is_zero() {
            break; // endpoint hit: the next quotient is unbounded over the interval
        }
        lo = frac_hi.recip();
        hi = frac_lo.recip();
    }
    terms
}

fn expand_interval(lo: BigRational, hi: BigRational, n: usize) -> Result<ContinuedFraction> {
    let terms = interval_terms(lo, hi, n);
    if terms.len() < n {
        let certified = terms.len();
        let prefix = make_cf(terms);
        return Err(Error::CfDepth {
            certified,
            requested: n,
            prefix,
        });
    }
    Ok(make_cf(terms))
}

fn make_cf(mut terms: Vec<BigInt>) -> ContinuedFraction {
    if terms.is_empty() {
        return ContinuedFraction {
            a0: BigInt::zero(),
            terms,
            terminated: false,
        };
    }
    let a0 = terms.remove(0);
    ContinuedFraction {
        a0,
        terms,
        terminated: false,
    }
}

fn expand_constant(c: NamedConstant, n: usize) -> Result<ContinuedFraction> {
    let mut bits: u32 = 64 + 8 * n as u32;
    let cap: u32 = 1 << 20;
    loop {
        let ball = match c {
            NamedConstant::Pi => transcend::pi_fixed(bits),
            NamedConstant::EulerE => transcend::e_fixed(bits),
        };
        let den = BigInt::one() << ball.prec;
        let lo = BigRational::new(ball.lower(), den.clone());
        let hi = BigRational::new(ball.upper(), den);
        let terms = interval_terms(lo, hi, n);
        if terms.len() >= n {
            return Ok(make_cf(terms));
        }
        if bits >= cap {
            let certified = terms.len();
            return Err(Error::CfDepth {
                certified,
                requested: n,
                prefix: make_cf(terms),
            });
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn terms_of(text: &str, n: usize) -> Vec<i64> {
        let spec = parse_real(text).unwrap();
        let cf = cf_expand(&spec, n).unwrap();
        std::iter::once(&cf.a0)
            .chain(cf.terms.iter())
            .map(|t| i64::try_from(t).unwrap())
            .collect()
    }

    #[test]
    fn golden_ratio_is_all_ones() {
        assert_eq!(terms_of("quad:(1+1*sqrt(5))/2", 5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn sqrt2_is_one_then_twos() {
        assert_eq!(terms_of("quad:(0+1*sqrt(2))/1", 4), vec![1, 2, 2, 2]);
    }

    #[test]
    fn rational_terminates() {
        let spec = parse_real("rat:7/3").unwrap();
        let cf = cf_expand(&spec, 10).unwrap();
        assert!(cf.terminated);
        assert_eq!(cf.a0, BigInt::from(2));
        assert_eq!(cf.terms, vec![BigInt::from(3)]);
    }

    #[test]
    fn integer_is_single_term() {
        let spec = parse_real("rat:5/1").unwrap();
        let cf = cf_expand(&spec, 3).unwrap();
        assert!(cf.terminated);
        assert_eq!(cf.len(), 1);
    }

    #[test]
    fn negative_rational_floor_convention() {
        // -7/3 = [-3; 1, 2]
        let spec = parse_real("rat:-7/3").unwrap();
        let cf = cf_expand(&spec, 5).unwrap();
        assert_eq!(cf.a0, BigInt::from(-3));
        assert_eq!(cf.terms, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(cf.terminated);
    }

    #[test]
    fn pi_prefix() {
        // classical expansion, cross-checked against the interval walk at
        // two precisions by construction
        assert_eq!(
            terms_of("pi", 10),
            vec![3, 7, 15, 1, 292, 1, 1, 1, 2, 1]
        );
    }

    #[test]
    fn e_prefix() {
        assert_eq!(terms_of("e", 12), vec![2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8]);
    }

    #[test]
    fn sqrt_large_period() {
        // sqrt(61) = [7; 1,4,3,1,2,2,1,3,4,1,14, ...] (period 11)
        assert_eq!(
            terms_of("quad:(0+1*sqrt(61))/1", 12),
            vec![7, 1, 4, 3, 1, 2, 2, 1, 3, 4, 1, 14]
        );
    }

    #[test]
    fn negative_quadratic() {
        // -phi = [-2; 1, 1, 1, ...] wait: floor(-1.618) = -2, -1.618+2 = 0.382,
        // 1/0.382 = 2.618 = [2; 1, 1, ...]
        assert_eq!(
            terms_of("quad:(-1-1*sqrt(5))/2", 5),
            vec![-2, 2, 1, 1, 1]
        );
    }

    #[test]
    fn decimal_certified_prefix_and_failure() {
        // 3.14 +- 0.005: [3; 7, ...] certified for at most a couple of terms
        let spec = parse_real("dec:3.14").unwrap();
        let cf = cf_expand(&spec, 2).unwrap();
        assert_eq!(cf.a0, BigInt::from(3));
        assert_eq!(cf.terms, vec![BigInt::from(7)]);
        let err = cf_expand(&spec, 12).unwrap_err();
        match err {
            Error::CfDepth { certified, requested, prefix } => {
                assert_eq!(requested, 12);
                assert!(certified >= 2);
                assert_eq!(prefix.a0, BigInt::from(3));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn convergents_of_golden_prefix() {
        let spec = parse_real("quad:(1+1*sqrt(5))/2").unwrap();
        let cf = cf_expand(&spec, 5).unwrap();
        let conv = convergents(&cf);
        let expect: Vec<(i64, i64)> = vec![(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)];
        let got: Vec<(i64, i64)> = conv
            .iter()
            .map(|(p, q)| (i64::try_from(p).unwrap(), i64::try_from(q).unwrap()))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn convergent_determinant_identity() {
        for text in ["pi", "e", "quad:(0+1*sqrt(2))/1", "rat:355/113"] {
            let spec = parse_real(text).unwrap();
            let cf = cf_expand(&spec, 10).unwrap_or_else(|e| match e {
                Error::CfDepth { prefix, .. } => prefix,
                other => panic!("{other}"),
            });
            let conv = convergents(&cf);
            for w in conv.windows(2) {
                let det = &w[1].0 * &w[0].1 - &w[0].0 * &w[1].1;
                assert!(det.clone().abs() == BigInt::one(), "det = {det}");
            }
        }
    }

    #[test]
    fn rational_roundtrip_last_convergent() {
        let spec = parse_real("rat:355/113").unwrap();
        let cf = cf_expand(&spec, 50).unwrap();
        assert!(cf.terminated);
        let conv = convergents(&cf);
        let (p, q) = conv.last().unwrap();
        assert_eq!(p, &BigInt::from(355));
        assert_eq!(q, &BigInt::from(113));
    }
}
