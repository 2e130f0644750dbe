//! Slow fixed-precision reference implementations.
//!
//! Everything in this crate exists to cross-check the main engine from tests.
//! The rules are: one global precision (200 bits), per-denominator
//! recomputation from scratch, no certified arithmetic, no shared code with
//! the engine. Integer square roots and n-th roots are hand-rolled here so
//! that an engine bug in a shared primitive cannot cancel out.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The reference precision, in bits, for all fixed-point values.
pub const ORACLE_BITS: u32 = 200;

/// Floor of the square root, by Newton iteration.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x: BigUint = BigUint::one() << ((n.bits() + 1) / 2) as u32;
    loop {
        let next = (&x + n / &x) >> 1u32;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// Floor of the k-th root, by binary search on the bit length.
pub fn nth_root_floor(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1);
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut lo = BigUint::zero();
    let mut hi: BigUint = BigUint::one() << (n.bits() as u32 / k + 2);
    // invariant: lo^k <= n < hi^k
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1u32;
        if mid.pow(k) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// A real number as the reference sees it: a raw 200-bit fixed-point
/// approximation, or an exact fraction.
#[derive(Clone, Debug)]
pub enum OracleReal {
    /// value ~= mantissa / 2^bits (floor-rounded, error below one ulp)
    Fixed { mantissa: BigInt, bits: u32 },
    /// exact num/den, den > 0, reduced
    Rational { num: BigInt, den: BigInt },
}

impl OracleReal {
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let (mut n, mut d) = (BigInt::from(num), BigInt::from(den));
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        OracleReal::Rational {
            num: n / &g,
            den: d / g,
        }
    }

    /// sqrt(d) for a non-square positive integer d.
    pub fn sqrt_int(d: u64, bits: u32) -> Self {
        let scaled = BigUint::from(d) << (2 * bits);
        OracleReal::Fixed {
            mantissa: BigInt::from(isqrt(&scaled)),
            bits,
        }
    }

    /// (1 + sqrt(5)) / 2
    pub fn golden_ratio(bits: u32) -> Self {
        let s5 = isqrt(&(BigUint::from(5u32) << (2 * bits)));
        let m = (BigInt::from(s5) + (BigInt::one() << bits)) >> 1;
        OracleReal::Fixed { mantissa: m, bits }
    }

    /// pi = 4*(arctan(1/2) + arctan(1/3)); each arctan summed term by term
    /// with fresh integer powers.
    pub fn pi(bits: u32) -> Self {
        let guard = bits + 32;
        let sum = arctan_inv_fixed(2, guard) + arctan_inv_fixed(3, guard);
        OracleReal::Fixed {
            mantissa: (sum << 2) >> (guard - bits),
            bits,
        }
    }

    /// e = sum over k of 1/k!, factorial recomputed per term.
    pub fn euler_e(bits: u32) -> Self {
        let guard = bits + 32;
        let scale: BigInt = BigInt::one() << guard;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        loop {
            let mut fact = BigInt::one();
            for i in 2..=k {
                fact *= i;
            }
            let term = &scale / fact;
            if term.is_zero() {
                break;
            }
            sum += term;
            k += 1;
        }
        OracleReal::Fixed {
            mantissa: sum >> (guard - bits),
            bits,
        }
    }
}

/// floor(arctan(1/x) * 2^guard), alternating series, powers recomputed fresh.
fn arctan_inv_fixed(x: u64, guard: u32) -> BigInt {
    let scale: BigInt = BigInt::one() << guard;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    loop {
        let mut pow = BigInt::one();
        for _ in 0..(2 * k + 1) {
            pow *= x;
        }
        let term = &scale / (pow * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    }
    sum
}

/// floor(ln(2) * 2^guard) via 2*atanh(1/3).
pub fn ln2_fixed(guard: u32) -> BigInt {
    let scale: BigInt = BigInt::one() << (guard + 1);
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    loop {
        let mut pow = BigInt::one();
        for _ in 0..(2 * k + 1) {
            pow *= 3u32;
        }
        let term = &scale / (pow * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    sum
}

/// floor(ln(b) * 2^guard) for integer b >= 1, via
/// ln(b) = r*ln(2) + 2*atanh((b - 2^r)/(b + 2^r)) with r = floor(log2 b).
pub fn ln_fixed(b: u64, guard: u32) -> BigInt {
    assert!(b >= 1);
    let r = 63 - b.leading_zeros() as u64 - (b.leading_zeros() == 0) as u64;
    let r = if b.is_power_of_two() {
        b.trailing_zeros() as u64
    } else {
        r
    };
    let num = BigInt::from(b) - (BigInt::one() << r);
    let den = BigInt::from(b) + (BigInt::one() << r);
    let scale: BigInt = BigInt::one() << (guard + 1);
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    if !num.is_zero() {
        loop {
            let np = num.pow(2 * k + 1);
            let dp = den.pow(2 * k + 1);
            let term = &scale * np / (dp * (2 * k + 1));
            if term.is_zero() {
                break;
            }
            sum += term;
            k += 1;
        }
    }
    sum + ln2_fixed(guard) * r
}

/// floor(ln(b)^(wn/wd) * 2^guard) for b >= 2 and wn/wd >= 1.
pub fn ln_pow_fixed(b: u64, wn: u32, wd: u32, guard: u32) -> BigInt {
    let x = ln_fixed(b, guard).to_biguint().expect("ln(b) >= 0");
    let powed = x.pow(wn);
    // (x*2^-g)^(wn/wd) at scale 2^-g: wd-th root of x^wn shifted by g*(wd-wn)
    let shifted = if wd >= wn {
        powed << (guard * (wd - wn))
    } else {
        powed >> (guard * (wn - wd))
    };
    BigInt::from(nth_root_floor(&shifted, wd))
}

/// One denominator of a sweep: the rounded numerator, the scaled residue
/// |alpha*b^k - a| (at 2^-bits for Fixed, at 1/den for Rational), and the
/// record flag.
#[derive(Clone, Debug)]
pub struct OracleSample {
    pub b: u64,
    pub a: BigInt,
    pub residue: BigInt,
    pub is_record: bool,
}

/// An exact fraction, for handing oracle results to assertions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleValue {
    pub num: BigInt,
    pub den: BigInt,
}

impl OracleValue {
    pub fn to_f64(&self) -> f64 {
        let scale = 1u64 << 60;
        let q = (&self.num * scale) / &self.den;
        q.to_f64().unwrap_or(f64::NAN) / scale as f64
    }
}

fn round_half_even(t: &BigInt, q: &BigInt) -> BigInt {
    let (d, r) = t.div_mod_floor(q);
    let twice: BigInt = &r << 1;
    match twice.cmp(q) {
        std::cmp::Ordering::Less => d,
        std::cmp::Ordering::Greater => d + 1,
        std::cmp::Ordering::Equal => {
            if d.is_even() {
                d
            } else {
                d + 1
            }
        }
    }
}

/// Nearest numerator and scaled residue for one denominator power.
fn step(x: &OracleReal, bk: &BigInt) -> (BigInt, BigInt) {
    match x {
        OracleReal::Fixed { mantissa, bits } => {
            let scaled = mantissa * bk;
            let half: BigInt = BigInt::one() << (bits - 1);
            let a = (&scaled + half) >> *bits;
            let residue = (&scaled - (&a << *bits)).abs();
            (a, residue)
        }
        OracleReal::Rational { num, den } => {
            let t = num * bk;
            let a = round_half_even(&t, den);
            let residue = (&t - &a * den).abs();
            (a, residue)
        }
    }
}

/// Full brute-force sweep stream with record flags.
///
/// Two distinct denominators can carry equal errors only when the two
/// fractions coincide in value; that exact tie is not a record.
pub fn sweep_stream(x: &OracleReal, k: u32, bmax: u64) -> Vec<OracleSample> {
    let mut out = Vec::with_capacity(bmax.min(1 << 22) as usize);
    let mut rec: Option<(BigInt, BigInt, BigInt)> = None; // (a, residue, b^k)
    for b in 1..=bmax {
        let bk = BigInt::from(b).pow(k);
        let (a, residue) = step(x, &bk);
        let is_record = match &rec {
            None => true,
            Some((ra, rn, rbk)) => {
                let tie = &a * rbk == ra * &bk;
                !tie && &residue * rbk < rn * &bk
            }
        };
        if is_record {
            rec = Some((a.clone(), residue.clone(), bk));
        }
        out.push(OracleSample {
            b,
            a,
            residue,
            is_record,
        });
    }
    out
}

/// Minimum of b^s * |alpha - a/b^k| over b <= bmax, with its denominator.
pub fn conjecture_min(x: &OracleReal, k: u32, s: u32, bmax: u64) -> (OracleValue, u64) {
    assert!(s > k);
    let mut best: Option<(BigInt, u64)> = None;
    for b in 1..=bmax {
        let bk = BigInt::from(b).pow(k);
        let (_, residue) = step(x, &bk);
        let score = residue * BigInt::from(b).pow(s - k);
        match &best {
            Some((m, _)) if *m <= score => {}
            _ => best = Some((score, b)),
        }
    }
    let (m, b) = best.expect("bmax >= 1");
    let den = match x {
        OracleReal::Fixed { bits, .. } => BigInt::one() << *bits,
        OracleReal::Rational { den, .. } => den.clone(),
    };
    (OracleValue { num: m, den }, b)
}

/// Minimum of b^3 * ln(b)^(1+eps) * |alpha - a/b^2| over 2 <= b <= bmax.
/// eps = en/ed > 0; k and the score exponent are fixed at 2 and 3.
pub fn bf_inf(x: &OracleReal, en: u32, ed: u32, bmax: u64) -> (OracleValue, u64) {
    assert!(bmax >= 2);
    let guard = ORACLE_BITS;
    let (wn, wd) = (ed + en, ed); // 1 + eps
    let mut best: Option<(BigInt, u64)> = None;
    for b in 2..=bmax {
        let bk = BigInt::from(b).pow(2);
        let (_, residue) = step(x, &bk);
        let weighted = residue * b * ln_pow_fixed(b, wn, wd, guard);
        match &best {
            Some((m, _)) if *m <= weighted => {}
            _ => best = Some((weighted, b)),
        }
    }
    let (m, b) = best.expect("bmax >= 2");
    let mut den = BigInt::one() << guard;
    den = match x {
        OracleReal::Fixed { bits, .. } => den << *bits,
        OracleReal::Rational { den: d, .. } => den * d,
    };
    (OracleValue { num: m, den }, b)
}

/// Count of b <= bmax with |alpha - a/b^2| < 1/b^(2+theta), theta = tn/td.
pub fn zaharescu_count(x: &OracleReal, tn: u32, td: u32, bmax: u64) -> (u64, Vec<u64>) {
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    for b in 1..=bmax {
        let bk = BigInt::from(b).pow(2);
        let (_, residue) = step(x, &bk);
        // residue/scale < b^-theta  <=>  residue^td * b^tn < scale^td
        let lhs = residue.pow(td) * BigInt::from(b).pow(tn);
        let rhs = match x {
            OracleReal::Fixed { bits, .. } => BigInt::one() << (bits * td),
            OracleReal::Rational { den, .. } => den.pow(td),
        };
        if lhs < rhs {
            count += 1;
            witnesses.push(b);
        }
    }
    (count, witnesses)
}

/// All (a, b) with b <= bmax and |alpha - a/b| < c/b^2, c = cn/cd.
/// When the two candidates around an exact half-way tie both qualify with
/// equal error, only the even numerator is listed.
pub fn hurwitz_solutions(x: &OracleReal, cn: u64, cd: u64, bmax: u64) -> Vec<(BigInt, u64)> {
    let mut out = Vec::new();
    for b in 1..=bmax {
        let bk = BigInt::from(b);
        let (a0, _) = step(x, &bk);
        // widest qualifying offset: |alpha*b - a| < c/b, so scan a0 +- j
        let span = (cn / (cd * b)) as i64 + 2;
        let mut hits: Vec<(BigInt, BigInt)> = Vec::new();
        for j in -span..=span {
            let a = &a0 + j;
            let residue = match x {
                OracleReal::Fixed { mantissa, bits } => {
                    let n = (mantissa * &bk - (&a << *bits)).abs();
                    // n/2^bits * b * cd < cn  scaled to integers
                    if &n * b * cd < (BigInt::from(cn) << *bits) {
                        Some(n)
                    } else {
                        None
                    }
                }
                OracleReal::Rational { num, den } => {
                    let n = (num * &bk - &a * den).abs();
                    if &n * b * cd < BigInt::from(cn) * den {
                        Some(n)
                    } else {
                        None
                    }
                }
            };
            if let Some(n) = residue {
                hits.push((a, n));
            }
        }
        hits.sort_by(|l, r| l.0.cmp(&r.0));
        let mut i = 0;
        while i < hits.len() {
            if i + 1 < hits.len() && hits[i].1 == hits[i + 1].1 {
                // exact tie pair: keep the even numerator
                let keep = if hits[i].0.is_even() { i } else { i + 1 };
                out.push((hits[keep].0.clone(), b));
                i += 2;
            } else {
                out.push((hits[i].0.clone(), b));
                i += 1;
            }
        }
    }
    out
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Number of primes up to and including pmax.
pub fn count_primes(pmax: u64) -> u64 {
    (2..=pmax).filter(|&n| is_prime(n)).count() as u64
}

/// Sweep over denominators {1} union primes <= pmax, with record flags.
pub fn prime_stream(x: &OracleReal, pmax: u64) -> Vec<OracleSample> {
    let denoms: Vec<u64> = std::iter::once(1)
        .chain((2..=pmax).filter(|&n| is_prime(n)))
        .collect();
    let mut out = Vec::with_capacity(denoms.len());
    let mut rec: Option<(BigInt, BigInt, BigInt)> = None;
    for p in denoms {
        let bk = BigInt::from(p);
        let (a, residue) = step(x, &bk);
        let is_record = match &rec {
            None => true,
            Some((ra, rn, rbk)) => {
                let tie = &a * rbk == ra * &bk;
                !tie && &residue * rbk < rn * &bk
            }
        };
        if is_record {
            rec = Some((a.clone(), residue.clone(), bk));
        }
        out.push(OracleSample {
            b: p,
            a,
            residue,
            is_record,
        });
    }
    out
}
