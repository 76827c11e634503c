//! Rational-coefficient polynomials: exact evaluation, formal derivatives,
//! Sturm-sequence real-root counting, and unconditional positivity
//! certificates.
//!
//! Everything here is exact arithmetic over `Rat`; no floating point is
//! involved, so a `PASS` certificate is a proof, not an estimate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{rat_int, sign_of, Rat};

/// Polynomial with exact rational coefficients, stored in ascending degree.
/// Trailing zero coefficients are trimmed, so the leading coefficient of a
/// non-zero polynomial is non-zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

/// One endpoint of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatBound {
    NegInf,
    At(Rat),
    PosInf,
}

impl RatBound {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            RatBound::At(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for RatBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatBound::NegInf => write!(f, "-inf"),
            RatBound::At(r) => write!(f, "{r}"),
            RatBound::PosInf => write!(f, "+inf"),
        }
    }
}

/// Evidence attached to a positivity `PASS`: zero Sturm roots in the open
/// interval plus one explicitly positive sample value.
#[derive(Clone, Debug)]
pub struct PositivityCertificate {
    pub sample_point: Rat,
    pub sample_value: Rat,
}

/// A concrete refutation of positivity.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A rational point with `p(at) <= 0`.
    Point { at: Rat, value: Rat },
    /// A root isolated in `[lo, hi]` at which the polynomial touches zero
    /// without a rational sign change nearby (even multiplicity).
    RootBracket { lo: Rat, hi: Rat },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point { at, value } => write!(f, "p({at}) = {value} <= 0"),
            Witness::RootBracket { lo, hi } => write!(f, "root isolated in [{lo}, {hi}]"),
        }
    }
}

/// Outcome of `certify_positive`.
#[derive(Clone, Debug)]
pub enum PositivityReport {
    Pass(PositivityCertificate),
    Fail(Witness),
}

impl PositivityReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, PositivityReport::Pass(_))
    }
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `x` itself.
    pub fn identity() -> Self {
        Self::new(vec![rat_int(0), rat_int(1)])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// Ascending coefficients from decimal integer or `p/q` strings; used by
    /// the proof-polynomial constants file where coefficients exceed i64.
    pub fn from_coeff_strs(coeffs: &[&str]) -> Result<Self> {
        let mut out = Vec::with_capacity(coeffs.len());
        for s in coeffs {
            out.push(parse_coeff(s)?);
        }
        Ok(Self::new(out))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Exact value at a rational point (Horner).
    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Formal derivative with exact coefficients.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut n: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(Rat::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// p(x + c) via Horner over polynomials (Taylor shift).
    pub fn compose_shift(&self, c: &Rat) -> Self {
        let shift = Self::new(vec![c.clone(), Rat::one()]);
        let mut acc = Self::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::constant(coeff.clone()));
        }
        acc
    }

    /// p(q(x)).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(coeff.clone()));
        }
        acc
    }

    /// Euclidean remainder `self mod divisor` over the rationals.
    fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let factor = r.last().unwrap() / &lead;
            for i in 0..=dd {
                let t = &divisor.coeffs[i] * &factor;
                r[k + i] -= t;
            }
            // The top coefficient cancels exactly.
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Divides out the coefficient content (gcd of numerators over lcm of
    /// denominators), keeping the sign. Controls growth in the Sturm chain.
    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scale = Rat::new(den_lcm, num_gcd);
        self.scale(&scale)
    }

    /// Square-free part: p / gcd(p, p').
    fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) <= 1 {
            return self.primitive_part();
        }
        let g = poly_gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        poly_div_exact(self, &g).primitive_part()
    }

    /// Cauchy root bound: every real root lies in (-M, M).
    pub fn cauchy_bound(&self) -> Rat {
        let lead = match self.leading() {
            Some(l) => l.abs(),
            None => return Rat::one(),
        };
        let mut max = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let v = c.abs() / &lead;
            if v > max {
                max = v;
            }
        }
        max + Rat::one()
    }
}

fn parse_coeff(s: &str) -> Result<Rat> {
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n).map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))?;
        let d = BigInt::from_str(d).map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("coefficient {s:?}: zero denominator")));
        }
        Ok(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))?;
        Ok(Rat::from_integer(n))
    }
}

fn poly_gcd(a: &RationalPolynomial, b: &RationalPolynomial) -> RationalPolynomial {
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    while !b.is_zero() {
        let r = a.rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a
}

/// Exact quotient for a known-divisible pair.
fn poly_div_exact(num: &RationalPolynomial, den: &RationalPolynomial) -> RationalPolynomial {
    let dd = den.degree().expect("division by zero polynomial");
    let nd = match num.degree() {
        Some(n) if n >= dd => n,
        _ => return RationalPolynomial::zero(),
    };
    let lead = den.leading().unwrap().clone();
    let mut r = num.coeffs.clone();
    let mut q = vec![Rat::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let factor = r[k + dd].clone() / &lead;
        q[k] = factor.clone();
        for i in 0..=dd {
            let t = &den.coeffs[i] * &factor;
            r[k + i] -= t;
        }
    }
    RationalPolynomial::new(q)
}

/// Sturm chain of the square-free part of `p`.
struct SturmChain {
    chain: Vec<RationalPolynomial>,
}

impl SturmChain {
    fn new(p: &RationalPolynomial) -> Self {
        let p0 = p.square_free();
        let mut chain = vec![p0.clone(), p0.derivative().primitive_part()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg().primitive_part();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    /// Sign changes of the chain at a finite point, zeros skipped.
    fn sign_changes_at(&self, x: &Rat) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| sign_of(&p.eval(x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
///
/// Infinite endpoints are replaced by a Cauchy bound bracketing every real
/// root, so `(-inf, +inf)` counts all real roots.
pub fn count_real_roots(p: &RationalPolynomial, lo: &RatBound, hi: &RatBound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    let chain = SturmChain::new(p);
    let bound = chain.chain[0].cauchy_bound();
    let lo_pt = resolve_endpoint(lo, &bound, false);
    let hi_pt = resolve_endpoint(hi, &bound, true);
    if lo_pt >= hi_pt {
        return Ok(0);
    }
    let v_lo = chain.sign_changes_at(&lo_pt);
    let v_hi = chain.sign_changes_at(&hi_pt);
    Ok(v_lo.saturating_sub(v_hi))
}

fn resolve_endpoint(b: &RatBound, cauchy: &Rat, upper: bool) -> Rat {
    match b {
        RatBound::At(r) => r.clone(),
        RatBound::NegInf => {
            debug_assert!(!upper);
            -cauchy.clone()
        }
        RatBound::PosInf => {
            debug_assert!(upper);
            cauchy.clone()
        }
    }
}

/// Default sample point for an interval: midpoint when finite, one unit
/// inside a half-line, zero on the full line.
fn sample_point(lo: &RatBound, hi: &RatBound) -> Rat {
    match (lo, hi) {
        (RatBound::At(a), RatBound::At(b)) => (a + b) / rat_int(2),
        (RatBound::At(a), RatBound::PosInf) => a + Rat::one(),
        (RatBound::NegInf, RatBound::At(b)) => b - Rat::one(),
        (RatBound::NegInf, RatBound::PosInf) => Rat::zero(),
        _ => unreachable!("interval endpoints out of order"),
    }
}

/// Certifies `p > 0` on the open interval `(lo, hi)`.
///
/// `PASS` carries the evidence (no Sturm roots inside, plus a positive
/// sample); `FAIL` carries a witness point with `p <= 0`, or an isolating
/// bracket when the offending root admits no rational witness.
pub fn certify_positive(
    p: &RationalPolynomial,
    lo: &RatBound,
    hi: &RatBound,
) -> Result<PositivityReport> {
    if p.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    if let (RatBound::At(a), RatBound::At(b)) = (lo, hi) {
        if a >= b {
            return Err(Error::Parse(format!("empty interval ({a}, {b})")));
        }
    }
    let sample = sample_point(lo, hi);
    let sample_value = p.eval(&sample);

    // Count roots in the *open* interval: count on (lo, hi] and drop hi if
    // it is itself a root.
    let mut roots = count_real_roots(p, lo, hi)?;
    if let RatBound::At(b) = hi {
        if p.eval(b).is_zero() {
            roots = roots.saturating_sub(1);
        }
    }

    if roots == 0 && sign_of(&sample_value) > 0 {
        return Ok(PositivityReport::Pass(PositivityCertificate {
            sample_point: sample,
            sample_value,
        }));
    }
    if sign_of(&sample_value) <= 0 {
        return Ok(PositivityReport::Fail(Witness::Point {
            at: sample,
            value: sample_value,
        }));
    }
    // Sample is positive but a root lies inside: isolate it and look for a
    // rational point at or below zero.
    let bound = p.cauchy_bound();
    let lo_pt = resolve_endpoint(lo, &bound, false);
    let hi_pt = resolve_endpoint(hi, &bound, true);
    Ok(PositivityReport::Fail(isolate_nonpositive_witness(
        p, lo_pt, hi_pt,
    )))
}

/// Certifies `p < 0` on `(lo, hi)` by certifying positivity of `-p`.
pub fn certify_negative(
    p: &RationalPolynomial,
    lo: &RatBound,
    hi: &RatBound,
) -> Result<PositivityReport> {
    let report = certify_positive(&p.neg(), lo, hi)?;
    Ok(match report {
        PositivityReport::Pass(mut c) => {
            c.sample_value = -c.sample_value;
            PositivityReport::Pass(c)
        }
        PositivityReport::Fail(Witness::Point { at, value }) => {
            PositivityReport::Fail(Witness::Point { at, value: -value })
        }
        fail => fail,
    })
}

/// Bisection search for a rational point with `p <= 0`, given that a root of
/// `p` lies in `(lo, hi)` (Sturm-established). Falls back to the isolating
/// bracket when 64 halvings find no sign change (even-multiplicity root).
fn isolate_nonpositive_witness(p: &RationalPolynomial, mut lo: Rat, mut hi: Rat) -> Witness {
    let chain = SturmChain::new(p);
    let two = rat_int(2);
    for _ in 0..64 {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if sign_of(&v) <= 0 {
            return Witness::Point { at: mid, value: v };
        }
        // Keep the half that still contains a root.
        let left_roots = chain.sign_changes_at(&lo).saturating_sub(chain.sign_changes_at(&mid));
        if left_roots > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Witness::RootBracket { lo, hi }
}
