//! Exact descriptions of target reals and their certified evaluation.
//!
//! The public mini-language, documented bit-exactly in the README:
//!
//! ```text
//! rat:<p>/<q>                      exact fraction, q != 0
//! quad:(<P>+<Q>*sqrt(<D>))/<R>     (P + Q*sqrt(D))/R, D > 0, R != 0
//! pi                               the circle constant
//! e                                Euler's number
//! dec:<digits>[.<digits>]          decimal literal, half-ulp uncertainty
//! ```
//!
//! Integers in `rat:` and `quad:` may carry a leading `-`; `quad:` also
//! accepts `-` in place of the middle `+`. A decimal literal may start with
//! `-`. Every spec normalizes to one canonical form: fractions are reduced
//! with positive denominator, quadratic parts have square-free D and Q > 0,
//! and a quadratic that collapses (Q = 0, or D a perfect square) is
//! reclassified as rational.

use crate::ball::{BallValue, FixedBall};
use crate::error::{Error, Result};
use crate::transcend;
use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Quadratic irrational (p + q*sqrt(d))/r in canonical form:
/// d square-free and >= 2, q > 0, gcd(p, q, r) = 1, r != 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    pub p: BigInt,
    pub q: BigInt,
    pub d: BigInt,
    pub r: BigInt,
}

/// Decimal literal with an explicit half-ulp uncertainty in its last digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecimalLiteral {
    /// exact value of the written digits
    pub value: BigRational,
    /// number of digits after the point
    pub frac_digits: u32,
    text: String,
}

impl DecimalLiteral {
    /// Half an ulp of the last written digit.
    pub fn uncertainty(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(2) * pow10(self.frac_digits))
    }

    /// Largest `bits` for which `eval` can honor its width contract.
    pub fn max_bits(&self) -> u32 {
        // need 2^(1-bits) >= 1/(2*10^d), i.e. 2^(bits-1) <= 2*10^d
        let bound = BigInt::from(2) * pow10(self.frac_digits);
        (bound.bits() - 1) as u32 + 1
    }
}

fn pow10(d: u32) -> BigInt {
    BigInt::from(10u32).pow(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedConstant {
    Pi,
    EulerE,
}

/// A target real in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealSpec {
    Rational(BigRational),
    Quadratic(Quadratic),
    Constant(NamedConstant),
    Decimal(DecimalLiteral),
}

impl fmt::Display for RealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSpec::Rational(x) => write!(f, "rat:{}/{}", x.numer(), x.denom()),
            RealSpec::Quadratic(q) => {
                write!(f, "quad:({}+{}*sqrt({}))/{}", q.p, q.q, q.d, q.r)
            }
            RealSpec::Constant(NamedConstant::Pi) => write!(f, "pi"),
            RealSpec::Constant(NamedConstant::EulerE) => write!(f, "e"),
            RealSpec::Decimal(d) => write!(f, "dec:{}", d.text),
        }
    }
}

impl RealSpec {
    pub fn is_rational(&self) -> bool {
        matches!(self, RealSpec::Rational(_))
    }

    /// The exact rational value this spec works from, when it has one.
    /// For decimal literals this is the written value, not the unknown real.
    pub fn exact_value(&self) -> Option<BigRational> {
        match self {
            RealSpec::Rational(x) => Some(x.clone()),
            RealSpec::Decimal(d) => Some(d.value.clone()),
            _ => None,
        }
    }

    /// Spec for `self + m`, canonical.
    pub fn shifted_by_integer(&self, m: &BigInt) -> RealSpec {
        match self {
            RealSpec::Rational(x) => RealSpec::Rational(x + BigRational::from(m.clone())),
            RealSpec::Quadratic(q) => RealSpec::Quadratic(Quadratic {
                p: &q.p + m * &q.r,
                q: q.q.clone(),
                d: q.d.clone(),
                r: q.r.clone(),
            }),
            RealSpec::Constant(_) => panic!("no shifted form for named constants"),
            RealSpec::Decimal(d) => {
                let value = &d.value + BigRational::from(m.clone());
                let text = decimal_text(&value, d.frac_digits);
                RealSpec::Decimal(DecimalLiteral {
                    value,
                    frac_digits: d.frac_digits,
                    text,
                })
            }
        }
    }

    /// Spec for `-self`, canonical.
    pub fn negated(&self) -> RealSpec {
        match self {
            RealSpec::Rational(x) => RealSpec::Rational(-x.clone()),
            RealSpec::Quadratic(q) => RealSpec::Quadratic(Quadratic {
                p: -q.p.clone(),
                q: q.q.clone(),
                d: q.d.clone(),
                r: -q.r.clone(),
            }),
            RealSpec::Constant(_) => panic!("no negated form for named constants"),
            RealSpec::Decimal(d) => {
                let value = -d.value.clone();
                let text = decimal_text(&value, d.frac_digits);
                RealSpec::Decimal(DecimalLiteral {
                    value,
                    frac_digits: d.frac_digits,
                    text,
                })
            }
        }
    }
}

fn decimal_text(value: &BigRational, frac_digits: u32) -> String {
    let scaled = (value * BigRational::from(pow10(frac_digits))).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = if digits.len() <= frac_digits as usize {
        format!("{}{}", "0".repeat(frac_digits as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - frac_digits as usize;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&digits[..split]);
    if frac_digits > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_int(input: &str, tok: &str) -> Result<BigInt> {
    tok.parse::<BigInt>()
        .map_err(|_| parse_err(input, format!("`{tok}` is not an integer")))
}

/// Parse the mini-language into a canonical [`RealSpec`].
pub fn parse_real(text: &str) -> Result<RealSpec> {
    let t = text.trim();
    match t {
        "pi" => return Ok(RealSpec::Constant(NamedConstant::Pi)),
        "e" => return Ok(RealSpec::Constant(NamedConstant::EulerE)),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("rat:") {
        let (p, q) = rest
            .split_once('/')
            .ok_or_else(|| parse_err(t, "expected rat:<p>/<q>"))?;
        let p = parse_int(t, p)?;
        let q = parse_int(t, q)?;
        if q.is_zero() {
            return Err(parse_err(t, "denominator q must be nonzero"));
        }
        return Ok(RealSpec::Rational(BigRational::new(p, q)));
    }
    if let Some(rest) = t.strip_prefix("quad:") {
        return parse_quadratic(t, rest);
    }
    if let Some(rest) = t.strip_prefix("dec:") {
        return parse_decimal(t, rest);
    }
    Err(parse_err(
        t,
        "expected one of rat:<p>/<q>, quad:(<P>+<Q>*sqrt(<D>))/<R>, pi, e, dec:<digits>[.<digits>]",
    ))
}

fn parse_quadratic(input: &str, rest: &str) -> Result<RealSpec> {
    // (<P>+<Q>*sqrt(<D>))/<R>
    let rest = rest
        .strip_prefix('(')
        .ok_or_else(|| parse_err(input, "expected `(` after quad:"))?;
    let (body, tail) = rest
        .rsplit_once(")/")
        .ok_or_else(|| parse_err(input, "expected `)/<R>`"))?;
    let r = parse_int(input, tail)?;
    // split body at the separating +/- that is not a leading sign
    let bytes = body.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            split = Some(i);
            break;
        }
    }
    let split = split.ok_or_else(|| parse_err(input, "expected <P>+<Q>*sqrt(<D>)"))?;
    let p = parse_int(input, &body[..split])?;
    let qterm = &body[split..];
    let (sign, qterm) = if let Some(s) = qterm.strip_prefix('+') {
        (1, s)
    } else if let Some(s) = qterm.strip_prefix('-') {
        (-1, s)
    } else {
        unreachable!()
    };
    let (qtok, dtok) = qterm
        .split_once("*sqrt(")
        .ok_or_else(|| parse_err(input, "expected <Q>*sqrt(<D>)"))?;
    let dtok = dtok
        .strip_suffix(')')
        .ok_or_else(|| parse_err(input, "unclosed sqrt("))?;
    let q = parse_int(input, qtok)? * sign;
    let d = parse_int(input, dtok)?;
    normalize_quadratic(input, p, q, d, r)
}

fn normalize_quadratic(input: &str, p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<RealSpec> {
    if r.is_zero() {
        return Err(parse_err(input, "denominator R must be nonzero"));
    }
    if d.is_negative() {
        return Err(parse_err(input, "D must be non-negative"));
    }
    if q.is_zero() {
        return Ok(RealSpec::Rational(BigRational::new(p, r)));
    }
    // pull square factors out of d
    let (core, scale) = squarefree_decompose(input, d)?;
    if core.is_one() || core.is_zero() {
        // perfect square: rational after all
        return Ok(RealSpec::Rational(BigRational::new(p + &q * scale * core, r)));
    }
    let q = q * scale;
    // canonical sign: q > 0 (flip the whole fraction if needed)
    let (p, q, r) = if q.is_negative() { (-p, -q, -r) } else { (p, q, r) };
    let g = p.gcd(&q).gcd(&r);
    Ok(RealSpec::Quadratic(Quadratic {
        p: p / &g,
        q: q / &g,
        d: core,
        r: r / g,
    }))
}

/// d = core * scale^2 with core square-free. Trial division; d is capped so
/// the factorization always completes.
fn squarefree_decompose(input: &str, d: BigInt) -> Result<(BigInt, BigInt)> {
    const CAP: u64 = 1_000_000_000_000;
    let mut n = d
        .to_u64()
        .filter(|&n| n <= CAP)
        .ok_or_else(|| parse_err(input, format!("D must be at most {CAP}")))?;
    let mut core = 1u64;
    let mut scale = 1u64;
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            let mut e = 0u32;
            while n % f == 0 {
                n /= f;
                e += 1;
            }
            if e % 2 == 1 {
                core *= f;
            }
            for _ in 0..e / 2 {
                scale *= f;
            }
        }
        f += 1;
    }
    core *= n; // remaining prime
    Ok((BigInt::from(core), BigInt::from(scale)))
}

fn parse_decimal(input: &str, rest: &str) -> Result<RealSpec> {
    let (sign, digits) = match rest.strip_prefix('-') {
        Some(s) => (-1, s),
        None => (1, rest),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || (digits.contains('.') && frac_part.is_empty())
    {
        return Err(parse_err(input, "expected dec:<digits>[.<digits>]"));
    }
    let frac_digits = frac_part.len() as u32;
    let mantissa: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| parse_err(input, "digits out of range"))?;
    let value = BigRational::new(mantissa * sign, pow10(frac_digits));
    Ok(RealSpec::Decimal(DecimalLiteral {
        value,
        frac_digits,
        text: rest.to_string(),
    }))
}

/// Certified evaluation: a ball of radius at most 2^(1-bits) around the
/// exact value. Rationals representable in binary come back exact.
pub fn eval(spec: &RealSpec, bits: u32) -> Result<BallValue> {
    if bits < 2 {
        return Err(Error::InvalidArgument("bits must be at least 2".into()));
    }
    match spec {
        RealSpec::Rational(x) => Ok(eval_rational(x, bits)),
        RealSpec::Quadratic(q) => {
            let ball = quadratic_fixed(q, bits + 64);
            Ok(widened(ball, bits))
        }
        RealSpec::Constant(NamedConstant::Pi) => Ok(widened(transcend::pi_fixed(bits + 64), bits)),
        RealSpec::Constant(NamedConstant::EulerE) => {
            Ok(widened(transcend::e_fixed(bits + 64), bits))
        }
        RealSpec::Decimal(d) => eval_decimal(d, bits),
    }
}

fn eval_rational(x: &BigRational, bits: u32) -> BallValue {
    // exactly representable iff the reduced denominator is a power of two
    let den = x.denom();
    if den.bits() as u64 - 1 == den.trailing_zeros().unwrap_or(0) {
        return BallValue::exact(x.clone(), bits);
    }
    let prec = bits + 64;
    let m = (x.numer() << prec).div_floor(den);
    let den2 = BigInt::one() << prec;
    BallValue {
        center: BigRational::new(m, den2),
        radius: BigRational::new(BigInt::one(), BigInt::one() << (bits + 16)),
        bits,
    }
}

/// Fixed-point enclosure of a canonical quadratic at the given scale.
pub(crate) fn quadratic_fixed(q: &Quadratic, prec: u32) -> FixedBall {
    let s = transcend::sqrt_fixed(q.d.magnitude(), prec);
    // numerator interval: P*2^prec + Q*[s.lower(), s.upper()]  (Q > 0)
    let base: BigInt = &q.p << prec;
    let lo_num = &base + &q.q * s.lower();
    let hi_num = base + &q.q * s.upper();
    let (lo, hi) = if q.r.is_positive() {
        (lo_num.div_floor(&q.r), hi_num.div_floor(&q.r) + 1)
    } else {
        (hi_num.div_floor(&q.r), lo_num.div_floor(&q.r) + 1)
    };
    FixedBall::from_bounds(lo, hi, prec)
}

/// Re-express an internally tight ball with the contractual public radius
/// 2^-(bits+16); keeps enclosures at increasing bits nested.
fn widened(ball: FixedBall, bits: u32) -> BallValue {
    let v = ball.to_ball_value(bits);
    let radius = BigRational::new(BigInt::one(), BigInt::one() << (bits + 16));
    debug_assert!(v.radius < radius);
    BallValue {
        center: v.center,
        radius,
        bits,
    }
}

fn eval_decimal(d: &DecimalLiteral, bits: u32) -> Result<BallValue> {
    let available = d.max_bits();
    if bits > available {
        return Err(Error::PrecisionExceedsLiteral {
            requested: bits,
            available,
        });
    }
    Ok(BallValue {
        center: d.value.clone(),
        radius: d.uncertainty(),
        bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn parses_golden_ratio() {
        let s = parse_real("quad:(1+1*sqrt(5))/2").unwrap();
        match &s {
            RealSpec::Quadratic(q) => {
                assert_eq!(q.p, BigInt::one());
                assert_eq!(q.q, BigInt::one());
                assert_eq!(q.d, BigInt::from(5));
                assert_eq!(q.r, BigInt::from(2));
            }
            _ => panic!("expected quadratic"),
        }
        assert_eq!(s.to_string(), "quad:(1+1*sqrt(5))/2");
    }

    #[test]
    fn reduces_rational() {
        let s = parse_real("rat:2/8").unwrap();
        assert_eq!(s, RealSpec::Rational(rat(1, 4)));
        // negative denominators canonicalize to positive
        let s = parse_real("rat:3/-6").unwrap();
        assert_eq!(s, RealSpec::Rational(rat(-1, 2)));
    }

    #[test]
    fn decimal_literal_uncertainty() {
        let s = parse_real("dec:3.14159").unwrap();
        match &s {
            RealSpec::Decimal(d) => {
                assert_eq!(d.value, rat(314159, 100000));
                assert_eq!(d.uncertainty(), rat(1, 200000));
                assert_eq!(s.to_string(), "dec:3.14159");
            }
            _ => panic!("expected decimal"),
        }
    }

    #[test]
    fn quadratic_normalization() {
        // sqrt(8) = 2*sqrt(2)
        let s = parse_real("quad:(0+1*sqrt(8))/1").unwrap();
        match s {
            RealSpec::Quadratic(q) => {
                assert_eq!(q.d, BigInt::from(2));
                assert_eq!(q.q, BigInt::from(2));
            }
            _ => panic!(),
        }
        // perfect square reclassifies as rational
        let s = parse_real("quad:(1+1*sqrt(9))/2").unwrap();
        assert_eq!(s, RealSpec::Rational(rat(2, 1)));
        // q = 0 reclassifies
        let s = parse_real("quad:(3+0*sqrt(7))/2").unwrap();
        assert_eq!(s, RealSpec::Rational(rat(3, 2)));
        // negative q absorbed: (1 - 1*sqrt(2))/3 = (-1 + sqrt(2))/(-3)
        let s = parse_real("quad:(1-1*sqrt(2))/3").unwrap();
        match s {
            RealSpec::Quadratic(q) => {
                assert!(q.q.is_positive());
                assert_eq!(q.r, BigInt::from(-3));
                assert_eq!(q.p, BigInt::from(-1));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_real("rat:1/0").is_err());
        assert!(parse_real("quad:(1+1*sqrt(5))/0").is_err());
        assert!(parse_real("quad:(1+1*sqrt(-5))/2").is_err());
        assert!(parse_real("dec:").is_err());
        assert!(parse_real("dec:1.").is_err());
        assert!(parse_real("nonsense").is_err());
        assert!(parse_real("rat:x/2").is_err());
    }

    #[test]
    fn eval_rational_width() {
        let s = parse_real("rat:1/3").unwrap();
        let b = eval(&s, 10).unwrap();
        assert!(b.contains(&rat(1, 3)));
        assert!(b.radius <= rat(1, 512)); // 2^(1-10)
        // dyadic rationals are exact
        let s = parse_real("rat:3/8").unwrap();
        let b = eval(&s, 10).unwrap();
        assert!(b.is_exact());
        assert_eq!(b.center, rat(3, 8));
    }

    #[test]
    fn eval_sqrt2_against_reference_digits() {
        // 1.4142135623730950488016887242096980785696_7187537694
        let s = parse_real("quad:(0+1*sqrt(2))/1").unwrap();
        let b = eval(&s, 64).unwrap();
        let reference = BigRational::new(
            "14142135623730950488016887242096980785696".parse().unwrap(),
            BigInt::from_u128(10).unwrap().pow(40),
        );
        assert!(b.contains(&reference) || (b.center.clone() - &reference).abs() < rat(1, 1 << 62));
        assert!(b.radius <= BigRational::new(BigInt::one(), BigInt::one() << 63));
    }

    #[test]
    fn eval_pi_against_reference_digits() {
        let s = parse_real("pi").unwrap();
        let b = eval(&s, 64).unwrap();
        let reference = BigRational::new(
            "31415926535897932384626433832795028841971".parse().unwrap(),
            BigInt::from_u128(10).unwrap().pow(40),
        );
        assert!((b.center.clone() - &reference).abs() < rat(1, 1i64 << 62));
    }

    #[test]
    fn eval_nested_precision() {
        for text in ["quad:(0+1*sqrt(2))/1", "pi", "e", "rat:22/7"] {
            let s = parse_real(text).unwrap();
            let coarse = eval(&s, 64).unwrap();
            let fine = eval(&s, 96).unwrap();
            assert!(fine.contained_in(&coarse), "{text}");
        }
    }

    #[test]
    fn eval_decimal_precision_guard() {
        let s = parse_real("dec:3.14159").unwrap();
        assert!(eval(&s, 10).is_ok());
        let err = eval(&s, 64).unwrap_err();
        assert!(matches!(err, Error::PrecisionExceedsLiteral { .. }));
    }

    #[test]
    fn shifted_and_negated() {
        let s = parse_real("quad:(1+1*sqrt(5))/2").unwrap();
        let t = s.shifted_by_integer(&BigInt::from(3));
        match &t {
            RealSpec::Quadratic(q) => assert_eq!(q.p, BigInt::from(7)),
            _ => panic!(),
        }
        let n = s.negated();
        let b1 = eval(&s, 64).unwrap();
        let b2 = eval(&n, 64).unwrap();
        assert!((b1.center + b2.center).abs() < rat(1, 1 << 30));
    }
}
