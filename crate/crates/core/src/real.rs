//! Configurable-precision real arithmetic.
//!
//! `Real` is a binary floating-point value `mantissa * 2^exp` with an
//! arbitrary-size mantissa. Every operation rounds to the working precision
//! of a [`PrecisionContext`] (round to nearest, ties to even), so a single
//! operation contributes at most half an ulp of error. The working precision
//! carries `guard_digits` extra decimal digits plus 32 extra bits over the
//! requested `digits`, which keeps accumulated rounding from chains of
//! thousands of operations far below the exported error budget of
//! `10^-digits`.
//!
//! Values are dyadic rationals, so comparisons, signs, and conversions back
//! to `Rat` are exact.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rational::Rat;

const LOG2_10: f64 = 3.321928094887362;
/// Alignment cap for additions; beyond this the smaller operand is sticky.
const MAX_ALIGN_BITS: u64 = 1 << 20;

/// Requested precision plus guard policy for all real-valued evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 16;
    pub const DEFAULT_GUARD: u32 = 10;

    /// Context with the default guard. `digits` is the number of decimal
    /// digits the caller may rely on; must be at least 16.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "digits must be >= {}, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(PrecisionContext { digits, guard_digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Working mantissa length in bits.
    pub fn prec_bits(&self) -> u64 {
        ((self.digits + self.guard_digits) as f64 * LOG2_10).ceil() as u64 + 32
    }

    /// Exported oracle error budget: 10^-digits as an exact dyadic value
    /// rounded at working precision.
    pub fn eps_oracle(&self) -> Real {
        Real::ten_pow(-(self.digits as i64), self)
    }

    /// Context with `extra` more reliable digits, for internal refinement.
    pub fn deepen(&self, extra: u32) -> PrecisionContext {
        PrecisionContext {
            digits: self.digits + extra,
            guard_digits: self.guard_digits,
        }
    }
}

/// Arbitrary-precision binary floating-point number.
#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} ~ {:e})", self.to_f64(), self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

fn bitlen(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

/// Round-half-even of `m / 2^drop` on the magnitude; `sticky` means extra
/// non-zero bits were already discarded below.
fn round_shift(m: &BigInt, drop: u64, sticky: bool) -> BigInt {
    if drop == 0 {
        let _ = sticky;
        return m.clone();
    }
    let (sign, mag) = (m.sign(), m.magnitude().clone());
    let q = &mag >> drop;
    let rem = &mag - (&q << drop);
    let half = num_bigint::BigUint::one() << (drop - 1);
    let round_up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            if sticky {
                true
            } else {
                // tie: round to even
                q.bit(0)
            }
        }
    };
    let q = if round_up { q + 1u32 } else { q };
    match sign {
        Sign::Minus => -BigInt::from(q),
        _ => BigInt::from(q),
    }
}

impl Real {
    fn raw(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Real { mant, exp: 0 };
        }
        Real { mant, exp }
    }

    /// Rounds to `bits` significant bits (no-op when already short enough).
    fn rounded(mant: BigInt, exp: i64, bits: u64, sticky: bool) -> Self {
        let len = bitlen(&mant);
        if len <= bits {
            return Self::raw(mant, exp);
        }
        let drop = len - bits;
        let m = round_shift(&mant, drop, sticky);
        // Rounding may carry into one extra bit (e.g. 0b111 -> 0b1000).
        Self::raw(m, exp + drop as i64)
    }

    pub fn zero() -> Self {
        Real { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Real { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::raw(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    /// Exact rational converted at working precision.
    pub fn from_rat(r: &Rat, ctx: &PrecisionContext) -> Self {
        let num = Self::from_bigint(r.numer().clone());
        let den = Self::from_bigint(r.denom().clone());
        num.div(&den, ctx)
    }

    /// 10^k at working precision (exact for k >= 0 up to rounding).
    pub fn ten_pow(k: i64, ctx: &PrecisionContext) -> Self {
        let bits = ctx.prec_bits();
        let ten = BigInt::from(10);
        if k >= 0 {
            Self::rounded(ten.pow(k as u32), 0, bits, false)
        } else {
            Real::one().div_impl(&Self::from_bigint(ten.pow((-k) as u32)), bits)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn neg(&self) -> Self {
        Real::raw(-self.mant.clone(), self.exp)
    }

    pub fn abs(&self) -> Self {
        Real::raw(self.mant.abs(), self.exp)
    }

    /// Exact scale by 2^k.
    pub fn mul2k(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Real::raw(self.mant.clone(), self.exp + k)
    }

    /// floor(log2 |x|), or `None` for zero.
    pub fn ilog2_abs(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bitlen(&self.mant) as i64 - 1)
        }
    }

    fn add_impl(&self, other: &Real, bits: u64) -> Real {
        if self.is_zero() {
            return Self::rounded(other.mant.clone(), other.exp, bits, false);
        }
        if other.is_zero() {
            return Self::rounded(self.mant.clone(), self.exp, bits, false);
        }
        let (hi, lo) = {
            let top_a = self.exp + bitlen(&self.mant) as i64;
            let top_b = other.exp + bitlen(&other.mant) as i64;
            if top_a >= top_b {
                (self, other)
            } else {
                (other, self)
            }
        };
        let gap = hi.exp - lo.exp;
        if gap >= 0 && gap as u64 > MAX_ALIGN_BITS {
            // The smaller operand is beyond any representable influence
            // except as a sticky nudge in the last working bit.
            let nudged = (&hi.mant << 8u32) + BigInt::from(lo.signum());
            return Self::rounded(nudged, hi.exp - 8, bits, true);
        }
        let (m, e) = if gap >= 0 {
            ((&hi.mant << gap as u64) + &lo.mant, lo.exp)
        } else {
            (&hi.mant + (&lo.mant << (-gap) as u64), hi.exp)
        };
        Self::rounded(m, e, bits, false)
    }

    pub fn add(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.add_impl(other, ctx.prec_bits())
    }

    pub fn sub(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.add_impl(&other.neg(), ctx.prec_bits())
    }

    fn mul_impl(&self, other: &Real, bits: u64) -> Real {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::rounded(&self.mant * &other.mant, self.exp + other.exp, bits, false)
    }

    pub fn mul(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.mul_impl(other, ctx.prec_bits())
    }

    fn div_impl(&self, other: &Real, bits: u64) -> Real {
        assert!(!other.is_zero(), "division by zero Real");
        if self.is_zero() {
            return Self::zero();
        }
        let la = bitlen(&self.mant);
        let lb = bitlen(&other.mant);
        // Give the quotient bits+2 significant bits before rounding.
        let shift = (bits + 2 + lb).saturating_sub(la.min(bits + 2 + lb)) + 2;
        let num = &self.mant << shift;
        let (q, r) = num_integer::Integer::div_rem(&num, &other.mant);
        let sticky = !r.is_zero();
        // Truncated quotients round correctly only with the sticky flag; the
        // sign of the remainder matches the quotient for BigInt div_rem.
        Self::rounded(q, self.exp - other.exp - shift as i64, bits, sticky)
    }

    pub fn div(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.div_impl(other, ctx.prec_bits())
    }

    fn div_u32_impl(&self, d: u32, bits: u64) -> Real {
        assert!(d != 0);
        if self.is_zero() {
            return Self::zero();
        }
        let shift = bits + 34;
        let num = &self.mant << shift;
        let den = BigInt::from(d);
        let (q, r) = num_integer::Integer::div_rem(&num, &den);
        Self::rounded(q, self.exp - shift as i64, bits, !r.is_zero())
    }

    pub fn div_u32(&self, d: u32, ctx: &PrecisionContext) -> Real {
        self.div_u32_impl(d, ctx.prec_bits())
    }

    pub fn recip(&self, ctx: &PrecisionContext) -> Real {
        Real::one().div(self, ctx)
    }

    fn sqrt_impl(&self, bits: u64) -> Result<Real> {
        if self.is_negative() {
            return Err(Error::OutsideDomain("square root of a negative value".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let len = bitlen(&self.mant);
        let want = 2 * (bits + 4);
        let mut shift = want.saturating_sub(len);
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let mag = self.mant.magnitude() << shift;
        let root = mag.sqrt();
        let sticky = &root * &root != mag;
        Ok(Self::rounded(
            BigInt::from(root),
            (self.exp - shift as i64) / 2,
            bits,
            sticky,
        ))
    }

    pub fn sqrt(&self, ctx: &PrecisionContext) -> Result<Real> {
        self.sqrt_impl(ctx.prec_bits())
    }

    /// Natural logarithm via atanh series after power-of-two reduction.
    pub fn ln(&self, ctx: &PrecisionContext) -> Result<Real> {
        if self.signum() <= 0 {
            return Err(Error::OutsideDomain("logarithm of a non-positive value".into()));
        }
        let bits = ctx.prec_bits();
        let wbits = bits + 32;
        // x = y * 2^f with y in [1, 2)
        let t = bitlen(&self.mant) as i64 - 1;
        let f = self.exp + t;
        let y = Real::raw(self.mant.clone(), -t);
        // z = (y-1)/(y+1) in [0, 1/3); ln y = 2 atanh z
        let z = y
            .add_impl(&Real::one().neg(), wbits)
            .div_impl(&y.add_impl(&Real::one(), wbits), wbits);
        let mut sum = z.clone();
        if !z.is_zero() {
            let z2 = z.mul_impl(&z, wbits);
            let mut term = z.clone();
            let mut k = 1u32;
            let cutoff = z.ilog2_abs().unwrap() - wbits as i64 - 4;
            loop {
                term = term.mul_impl(&z2, wbits);
                let contrib = term.div_u32_impl(2 * k + 1, wbits);
                if contrib.is_zero() || contrib.ilog2_abs().unwrap() < cutoff {
                    break;
                }
                sum = sum.add_impl(&contrib, wbits);
                k += 1;
            }
        }
        let mut result = sum.mul2k(1);
        if f != 0 {
            let extra = 64 - (f.unsigned_abs().leading_zeros() as u64);
            let l2 = ln2_bits(wbits + extra);
            let scaled = l2.mul_impl(&Real::from_i64(f), wbits + extra);
            result = result.add_impl(&scaled, wbits);
        }
        Ok(Self::rounded(result.mant, result.exp, bits, true))
    }

    /// Exponential via argument reduction against ln 2 and Taylor series.
    pub fn exp(&self, ctx: &PrecisionContext) -> Result<Real> {
        let bits = ctx.prec_bits();
        let wbits = bits + 32;
        if self.is_zero() {
            return Ok(Real::one());
        }
        if self.ilog2_abs().unwrap_or(0) > 40 {
            return Err(Error::InsufficientPrecision(
                "exp argument magnitude exceeds 2^40".into(),
            ));
        }
        let l2 = ln2_bits(wbits + 64);
        let q = self.div_impl(&l2, wbits);
        let n = q
            .add_impl(&Real::raw(BigInt::one(), -1), wbits)
            .floor()
            .to_i64()
            .expect("bounded exp reduction");
        let r = self.add_impl(&l2.mul_impl(&Real::from_i64(-n), wbits + 64), wbits);
        let mut sum = Real::one();
        let mut term = Real::one();
        let mut k = 1u32;
        loop {
            term = term.mul_impl(&r, wbits).div_u32_impl(k, wbits);
            if term.is_zero() || term.ilog2_abs().unwrap() < -(wbits as i64) - 4 {
                break;
            }
            sum = sum.add_impl(&term, wbits);
            k += 1;
        }
        let out = sum.mul2k(n);
        Ok(Self::rounded(out.mant, out.exp, bits, true))
    }

    /// Integer power with per-step rounding.
    pub fn powi(&self, n: i64, ctx: &PrecisionContext) -> Real {
        let bits = ctx.prec_bits() + 16;
        if n == 0 {
            return Real::one();
        }
        let mut base = if n < 0 {
            Real::one().div_impl(self, bits)
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Real::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base, bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base, bits);
            }
        }
        Self::rounded(acc.mant, acc.exp, ctx.prec_bits(), true)
    }

    /// pi at working precision (cached).
    pub fn pi(ctx: &PrecisionContext) -> Real {
        let bits = ctx.prec_bits();
        let m = pi_mant(bits + 32);
        Self::rounded(m, -((bits + 32) as i64), bits, true)
    }

    /// ln 2 at working precision (cached).
    pub fn ln2(ctx: &PrecisionContext) -> Real {
        let bits = ctx.prec_bits();
        let v = ln2_bits(bits + 32);
        Self::rounded(v.mant, v.exp, bits, true)
    }

    /// Exact conversion to a rational (every Real is dyadic).
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as u64)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Floor to an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            // BigInt shr rounds toward negative infinity.
            &self.mant >> (-self.exp) as u64
        }
    }

    /// Lossy conversion for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = bitlen(&self.mant);
        let (m, e) = if len > 64 {
            let drop = len - 64;
            (round_shift(&self.mant, drop, false), self.exp + drop as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let md = m.to_f64().unwrap_or(f64::NAN);
        md * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    pub fn cmp_real(&self, other: &Real) -> Ordering {
        let s = self.signum();
        let o = other.signum();
        if s != o {
            return s.cmp(&o);
        }
        if s == 0 {
            return Ordering::Equal;
        }
        let top_a = self.exp + bitlen(&self.mant) as i64;
        let top_b = other.exp + bitlen(&other.mant) as i64;
        if top_a != top_b {
            let by_mag = top_a.cmp(&top_b);
            return if s > 0 { by_mag } else { by_mag.reverse() };
        }
        // Equal binary magnitude: exact aligned comparison.
        let e = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e) as u64;
        let mb = &other.mant << (other.exp - e) as u64;
        ma.cmp(&mb)
    }

    /// Scientific-notation decimal with `sig` significant digits,
    /// round-half-even in the last displayed digit.
    pub fn to_decimal(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".into();
        }
        let neg = self.is_negative();
        let mag = self.abs();
        // First decimal-exponent estimate from the binary magnitude.
        let top = mag.ilog2_abs().unwrap();
        let mut d10 = ((top as f64) * 0.30102999566398114).floor() as i64;
        loop {
            let digits = decimal_digits(&mag, d10, sig);
            let s = digits.to_string();
            match s.len() as i64 - sig as i64 {
                0 => {
                    let (head, tail) = s.split_at(1);
                    let body = if tail.is_empty() {
                        head.to_string()
                    } else {
                        format!("{head}.{tail}")
                    };
                    return format!("{}{body}e{}", if neg { "-" } else { "" }, d10);
                }
                1 => d10 += 1,
                _ => d10 -= 1,
            }
        }
    }
}

/// round(|x| * 10^(sig-1-d10)) as a non-negative integer.
fn decimal_digits(mag: &Real, d10: i64, sig: u32) -> BigInt {
    let s = sig as i64 - 1 - d10;
    let ten = BigInt::from(10);
    let mut num = BigInt::from(mag.mant.magnitude().clone());
    let mut den = BigInt::one();
    if s >= 0 {
        num *= ten.pow(s as u32);
    } else {
        den *= ten.pow((-s) as u32);
    }
    if mag.exp >= 0 {
        num <<= mag.exp as u64;
    } else {
        den <<= (-mag.exp) as u64;
    }
    div_round_half_even(&num, &den)
}

fn div_round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(num, den);
    let r2: BigInt = &r * 2;
    match r2.cmp(den) {
        Ordering::Greater => q + 1,
        Ordering::Less => q,
        Ordering::Equal => {
            if q.bit(0) {
                q + 1
            } else {
                q
            }
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_real(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_real(other)
    }
}

static PI_CACHE: OnceLock<Mutex<HashMap<u64, BigInt>>> = OnceLock::new();
static LN2_CACHE: OnceLock<Mutex<HashMap<u64, BigInt>>> = OnceLock::new();

/// floor(pi * 2^bits) within a few units, by Machin's formula evaluated in
/// fixed point.
fn pi_mant(bits: u64) -> BigInt {
    let cache = PI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let wbits = bits + 24;
    let one = BigInt::one() << wbits;
    let atan_inv = |k: u64| -> BigInt {
        let k2 = BigInt::from(k * k);
        let mut x = &one / BigInt::from(k);
        let mut sum = x.clone();
        let mut i = 1u32;
        loop {
            x = &x / &k2;
            if x.is_zero() {
                break;
            }
            let t = &x / BigInt::from(2 * i + 1);
            if i % 2 == 1 {
                sum -= &t;
            } else {
                sum += &t;
            }
            if t.is_zero() {
                break;
            }
            i += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    let out = round_shift(&pi, 24, true);
    cache.lock().unwrap().insert(bits, out.clone());
    out
}

/// ln 2 = 2 atanh(1/3) at `bits` working precision (cached).
fn ln2_bits(bits: u64) -> Real {
    let cache = LN2_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return Real::raw(v.clone(), -(bits as i64));
    }
    let wbits = bits + 24;
    let one = BigInt::one() << wbits;
    let nine = BigInt::from(9);
    let mut x = &one / BigInt::from(3);
    let mut sum = x.clone();
    let mut j = 1u32;
    loop {
        x = &x / &nine;
        if x.is_zero() {
            break;
        }
        let t = &x / BigInt::from(2 * j + 1);
        if t.is_zero() {
            break;
        }
        sum += &t;
        j += 1;
    }
    let out = round_shift(&(sum * 2), 24, true);
    cache.lock().unwrap().insert(bits, out.clone());
    Real::raw(out, -(bits as i64))
}
