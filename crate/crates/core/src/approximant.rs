//! The parametric logarithmic approximant `L(x, a)`, its partial
//! derivatives, and the four distinguished parameter values.
//!
//! ```text
//! L(x,a) = ln(x^2 + x + a + 1/3)        / (90 a^2 + 2)
//!        + ln(x^2 + x + 1/3 - 1/(45 a)) * 45 a^2 / (90 a^2 + 2)
//! ```
//!
//! defined for `(x, a)` in `(0, inf) x (1/15, inf)` or
//! `(-1, inf) x (4/15, inf)`. As `a -> inf` the weights collapse and
//! `L(x, inf) = ln(x^2 + x + 1/3) / 2`; the sentinel [`ParamA::Infinity`]
//! makes that limit a first-class parameter value.
//!
//! Distinguished constants:
//! * `a1 = (40 + 3 sqrt 205)/105`: `psi(x+1) < L(x,a)` on `(-1, inf)` iff
//!   `a >= a1`.
//! * `a0`: unique root of `psi(1) = L(0, a)`; `psi(x+1) > L(x,a)` on
//!   `(0, inf)` iff `a <= a0`.
//! * `a0' = (45 - 4 pi^2 + 3 sqrt(4 pi^4 - 80 pi^2 + 405))/(30(pi^2-9))`:
//!   largest `a` with decreasing residual.
//! * `a0''`: unique root of `psi''(1) = L_xx(0, a)`; largest `a` with convex
//!   residual.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::oracle::{self, PolygammaOrder};
use crate::rational::{parse_rat, rat, Rat};
use crate::real::{PrecisionContext, Real};

/// Validated approximant parameter.
#[derive(Clone, Debug)]
pub enum ParamA {
    /// Exact rational parameter in (1/15, inf).
    Rational(Rat),
    /// Context-evaluated numeric parameter (for irrational values such as
    /// sqrt(5)/15); must exceed 1/15.
    Value(Real),
    /// (40 + 3 sqrt 205)/105.
    A1,
    /// Root of psi(1) - L(0, a) = 0, solved per precision context.
    A0,
    /// Closed form in pi.
    A0Prime,
    /// Root of psi''(1) - L_xx(0, a) = 0, solved per precision context.
    A0DoublePrime,
    /// The a -> inf limit form.
    Infinity,
}

/// Parameter regime relative to the distinguished constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// (1/15, a0'')
    BelowA0DoublePrime,
    /// [a0'', a0']
    UpToA0Prime,
    /// (a0', a0]
    UpToA0,
    /// (a0, a1)
    Gap,
    /// [a1, inf) including the sentinel
    AtLeastA1,
}

impl ParamA {
    pub fn rational(r: Rat) -> Result<Self> {
        if r <= rat(1, 15) {
            return Err(Error::OutsideDomain(format!(
                "parameter a = {r} must exceed 1/15"
            )));
        }
        Ok(ParamA::Rational(r))
    }

    pub fn real_value(v: Real) -> Result<Self> {
        if v.to_rat() <= rat(1, 15) {
            return Err(Error::OutsideDomain("parameter a must exceed 1/15".into()));
        }
        Ok(ParamA::Value(v))
    }

    /// Parses `a1 | a0 | a0p | a0pp | inf` or a rational/decimal literal.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "a1" => Ok(ParamA::A1),
            "a0" => Ok(ParamA::A0),
            "a0p" => Ok(ParamA::A0Prime),
            "a0pp" => Ok(ParamA::A0DoublePrime),
            "inf" | "infinity" => Ok(ParamA::Infinity),
            other => ParamA::rational(parse_rat(other)?),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ParamA::Infinity)
    }

    /// Numeric value at context precision; errors on the sentinel.
    pub fn value(&self, ctx: &PrecisionContext) -> Result<Real> {
        Ok(match self {
            ParamA::Rational(r) => Real::from_rat(r, ctx),
            ParamA::Value(v) => v.clone(),
            ParamA::A1 => thresholds(ctx)?.a1.clone(),
            ParamA::A0 => thresholds(ctx)?.a0.clone(),
            ParamA::A0Prime => thresholds(ctx)?.a0_prime.clone(),
            ParamA::A0DoublePrime => thresholds(ctx)?.a0_double_prime.clone(),
            ParamA::Infinity => {
                return Err(Error::OutsideDomain(
                    "the infinite sentinel has no finite value".into(),
                ))
            }
        })
    }

    /// Regime classification with a `2 eps_oracle` ambiguity margin for
    /// numeric parameters; symbolic parameters classify exactly.
    pub fn regime(&self, ctx: &PrecisionContext) -> Result<Regime> {
        match self {
            ParamA::Infinity | ParamA::A1 => return Ok(Regime::AtLeastA1),
            ParamA::A0 => return Ok(Regime::UpToA0),
            ParamA::A0Prime | ParamA::A0DoublePrime => return Ok(Regime::UpToA0Prime),
            _ => {}
        }
        let a = self.value(ctx)?;
        let t = thresholds(ctx)?;
        let margin = ctx.eps_oracle().mul2k(1);
        let classify = |thr: &Real| -> Result<std::cmp::Ordering> {
            let d = a.sub(thr, ctx);
            if d.abs() < margin {
                return Err(Error::OutsideDomain(format!(
                    "a = {} is within the ambiguity margin of a threshold; use a symbolic token",
                    a.to_decimal(12)
                )));
            }
            Ok(d.cmp_real(&Real::zero()))
        };
        use std::cmp::Ordering::Less;
        Ok(if classify(&t.a0_double_prime)? == Less {
            Regime::BelowA0DoublePrime
        } else if classify(&t.a0_prime)? == Less {
            Regime::UpToA0Prime
        } else if classify(&t.a0)? == Less {
            Regime::UpToA0
        } else if classify(&t.a1)? == Less {
            Regime::Gap
        } else {
            Regime::AtLeastA1
        })
    }
}

impl fmt::Display for ParamA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamA::Rational(r) => write!(f, "{r}"),
            ParamA::Value(v) => write!(f, "{}", v.to_decimal(17)),
            ParamA::A1 => write!(f, "a1"),
            ParamA::A0 => write!(f, "a0"),
            ParamA::A0Prime => write!(f, "a0p"),
            ParamA::A0DoublePrime => write!(f, "a0pp"),
            ParamA::Infinity => write!(f, "inf"),
        }
    }
}

/// The distinguished constants at one working precision. Roots carry the
/// achieved bracket half-width.
#[derive(Clone, Debug)]
pub struct ThresholdSet {
    pub a1: Real,
    /// Companion root (40 - 3 sqrt 205)/105 of the limit numerator.
    pub a2: Real,
    pub a0_prime: Real,
    pub a0: Real,
    pub a0_tolerance: Real,
    pub a0_double_prime: Real,
    pub a0_double_prime_tolerance: Real,
}

impl ThresholdSet {
    /// a0'' < a0' < a0 < a1.
    pub fn ordering_holds(&self) -> bool {
        self.a0_double_prime < self.a0_prime && self.a0_prime < self.a0 && self.a0 < self.a1
    }
}

struct Quadratics {
    /// x^2 + x
    s: Real,
    /// x^2 + x + a + 1/3
    a_quad: Real,
    /// x^2 + x + 1/3 - 1/(45a)
    b_quad: Real,
    /// 45 a^2
    w45: Real,
    /// 90 a^2 + 2
    denom: Real,
}

fn one_third(ctx: &PrecisionContext) -> Real {
    Real::from_rat(&rat(1, 3), ctx)
}

/// Domain check per the two admissible rectangles, then the shifted
/// quadratics. Errors name the offending factor.
fn quadratics(x: &Real, a: &Real, ctx: &PrecisionContext) -> Result<Quadratics> {
    let fifteenth = Real::from_rat(&rat(1, 15), ctx);
    let four_fifteenth = Real::from_rat(&rat(4, 15), ctx);
    // x = 0 is admitted on the narrow-parameter side: the offset constants
    // evaluate L at 0 for every a > 1/15 and both log arguments stay
    // positive there.
    let ok_positive_x = x.signum() >= 0 && a > &fifteenth;
    let ok_wide_x = x > &Real::from_i64(-1) && a > &four_fifteenth;
    if !(ok_positive_x || ok_wide_x) {
        return Err(Error::OutsideDomain(format!(
            "(x, a) = ({}, {}) is in neither [0,inf)x(1/15,inf) nor (-1,inf)x(4/15,inf)",
            x.to_decimal(10),
            a.to_decimal(10)
        )));
    }
    let s = x.mul(&x.add(&Real::one(), ctx), ctx);
    let third = one_third(ctx);
    let a_quad = s.add(&a.add(&third, ctx), ctx);
    let inv45a = Real::from_i64(45).mul(a, ctx).recip(ctx);
    let b_quad = s.add(&third.sub(&inv45a, ctx), ctx);
    if !a_quad.is_positive() {
        return Err(Error::OutsideDomain(format!(
            "log argument x^2+x+a+1/3 = {} is not positive",
            a_quad.to_decimal(10)
        )));
    }
    if !b_quad.is_positive() {
        return Err(Error::OutsideDomain(format!(
            "log argument x^2+x+1/3-1/(45a) = {} is not positive",
            b_quad.to_decimal(10)
        )));
    }
    let a2 = a.mul(a, ctx);
    let w45 = Real::from_i64(45).mul(&a2, ctx);
    let denom = w45.mul2k(1).add(&Real::from_i64(2), ctx);
    Ok(Quadratics { s, a_quad, b_quad, w45, denom })
}

/// The sentinel quadratic x^2 + x + 1/3 on the x > -1 domain.
fn sentinel_quad(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if x <= &Real::from_i64(-1) {
        return Err(Error::OutsideDomain(format!(
            "x = {} must exceed -1 for the limit form",
            x.to_decimal(10)
        )));
    }
    let s = x.mul(&x.add(&Real::one(), ctx), ctx);
    Ok(s.add(&one_third(ctx), ctx))
}

/// `L(x, a)`.
pub fn l_value(x: &Real, a: &ParamA, ctx: &PrecisionContext) -> Result<Real> {
    if a.is_infinite() {
        return Ok(sentinel_quad(x, ctx)?.ln(ctx)?.mul2k(-1));
    }
    let av = a.value(ctx)?;
    let q = quadratics(x, &av, ctx)?;
    let term_a = q.a_quad.ln(ctx)?.div(&q.denom, ctx);
    let term_b = q.b_quad.ln(ctx)?.mul(&q.w45, ctx).div(&q.denom, ctx);
    Ok(term_a.add(&term_b, ctx))
}

/// `d^k L / dx^k` for k = 1, 2, 3 (k = 0 falls back to `L` itself); the
/// sentinel differentiates the limit form.
pub fn l_partial_x(order: u8, x: &Real, a: &ParamA, ctx: &PrecisionContext) -> Result<Real> {
    if order == 0 {
        return l_value(x, a, ctx);
    }
    if !(1..=3).contains(&order) {
        return Err(Error::Parse(format!("derivative order {order} not in 0..=3")));
    }
    let two_x_plus_1 = x.mul2k(1).add(&Real::one(), ctx);
    if a.is_infinite() {
        let q = sentinel_quad(x, ctx)?;
        let s = x.mul(&x.add(&Real::one(), ctx), ctx);
        return Ok(match order {
            // (x + 1/2) / (x^2+x+1/3)
            1 => two_x_plus_1.div(&q, ctx).mul2k(-1),
            // -(x^2+x+1/6) / (x^2+x+1/3)^2
            2 => {
                let num = s.add(&Real::from_rat(&rat(1, 6), ctx), ctx);
                num.div(&q.mul(&q, ctx), ctx).neg()
            }
            // (2x+1)(x^2+x) / (x^2+x+1/3)^3
            _ => {
                let num = two_x_plus_1.mul(&s, ctx);
                num.div(&q.powi(3, ctx), ctx)
            }
        });
    }
    let av = a.value(ctx)?;
    let q = quadratics(x, &av, ctx)?;
    // 45 a^2 + 1 = denom / 2
    let c = q.denom.mul2k(-1);
    let sixth = Real::from_rat(&rat(1, 6), ctx);
    Ok(match order {
        1 => {
            let t1 = two_x_plus_1.div(&q.a_quad, ctx).div(&q.denom, ctx);
            let t2 = two_x_plus_1
                .mul(&q.w45, ctx)
                .div(&q.b_quad, ctx)
                .div(&q.denom, ctx);
            t1.add(&t2, ctx)
        }
        2 => {
            // -(x^2+x-a+1/6)/(c A^2) - 45a^2 (x^2+x+1/(45a)+1/6)/(c B^2)
            let inv45a = Real::from_i64(45).mul(&av, ctx).recip(ctx);
            let num_a = q.s.sub(&av, ctx).add(&sixth, ctx);
            let num_b = q.s.add(&inv45a, ctx).add(&sixth, ctx);
            let t1 = num_a.div(&q.a_quad.mul(&q.a_quad, ctx), ctx).div(&c, ctx);
            let t2 = num_b
                .mul(&q.w45, ctx)
                .div(&q.b_quad.mul(&q.b_quad, ctx), ctx)
                .div(&c, ctx);
            t1.add(&t2, ctx).neg()
        }
        _ => {
            // (2x+1)(x^2+x-3a)/(c A^3) + 45a^2 (2x+1)(x^2+x+1/(15a))/(c B^3)
            let inv15a = Real::from_i64(15).mul(&av, ctx).recip(ctx);
            let num_a = q.s.sub(&av.mul(&Real::from_i64(3), ctx), ctx);
            let num_b = q.s.add(&inv15a, ctx);
            let t1 = two_x_plus_1
                .mul(&num_a, ctx)
                .div(&q.a_quad.powi(3, ctx), ctx)
                .div(&c, ctx);
            let t2 = two_x_plus_1
                .mul(&num_b, ctx)
                .mul(&q.w45, ctx)
                .div(&q.b_quad.powi(3, ctx), ctx)
                .div(&c, ctx);
            t1.add(&t2, ctx)
        }
    })
}

/// `dL/da` for finite parameters.
pub fn l_partial_a(x: &Real, a: &ParamA, ctx: &PrecisionContext) -> Result<Real> {
    if a.is_infinite() {
        return Err(Error::OutsideDomain("dL/da requires a finite parameter".into()));
    }
    let av = a.value(ctx)?;
    let q = quadratics(x, &av, ctx)?;
    // 45a/(45a^2+1)^2 ln(B/A) + (1/(90a^2+2)) (1/A + 1/B)
    let c = q.denom.mul2k(-1); // 45a^2+1
    let log_ratio = q.b_quad.div(&q.a_quad, ctx).ln(ctx)?;
    let t1 = Real::from_i64(45)
        .mul(&av, ctx)
        .mul(&log_ratio, ctx)
        .div(&c.mul(&c, ctx), ctx);
    let t2 = q
        .a_quad
        .recip(ctx)
        .add(&q.b_quad.recip(ctx), ctx)
        .div(&q.denom, ctx);
    Ok(t1.add(&t2, ctx))
}

static THRESHOLDS: OnceLock<Mutex<HashMap<(u32, u32), Arc<ThresholdSet>>>> = OnceLock::new();
static X0_CACHE: OnceLock<Mutex<HashMap<(u32, u32), (Real, Real)>>> = OnceLock::new();

/// Distinguished constants at context precision, solved once per context.
pub fn thresholds(ctx: &PrecisionContext) -> Result<Arc<ThresholdSet>> {
    let key = (ctx.digits(), ctx.guard_digits());
    let cache = THRESHOLDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let set = Arc::new(solve_thresholds(ctx)?);
    cache.lock().unwrap().insert(key, set.clone());
    Ok(set)
}

fn solve_thresholds(ctx: &PrecisionContext) -> Result<ThresholdSet> {
    let sqrt205 = Real::from_i64(205).sqrt(ctx)?;
    let three_s = sqrt205.mul(&Real::from_i64(3), ctx);
    let a1 = Real::from_i64(40).add(&three_s, ctx).div_u32(105, ctx);
    let a2 = Real::from_i64(40).sub(&three_s, ctx).div_u32(105, ctx);

    // a0' = (45 - 4 pi^2 + 3 sqrt(4 pi^4 - 80 pi^2 + 405)) / (30 (pi^2 - 9))
    let pi = Real::pi(ctx);
    let pi2 = pi.mul(&pi, ctx);
    let pi4 = pi2.mul(&pi2, ctx);
    let disc = pi4
        .mul2k(2)
        .sub(&pi2.mul(&Real::from_i64(80), ctx), ctx)
        .add(&Real::from_i64(405), ctx)
        .sqrt(ctx)?;
    let num = Real::from_i64(45)
        .sub(&pi2.mul2k(2), ctx)
        .add(&disc.mul(&Real::from_i64(3), ctx), ctx);
    let den = pi2.sub(&Real::from_i64(9), ctx).mul(&Real::from_i64(30), ctx);
    let a0_prime = num.div(&den, ctx);

    let tol = Real::ten_pow(-(ctx.digits() as i64) + 2, ctx);

    // a0: root of -gamma - L(0, a) on (1/2, 3/5); decreasing in a.
    let gamma = oracle::euler_gamma(ctx);
    let f_a0 = |a: &Real| -> Result<Real> {
        let p = ParamA::Value(a.clone());
        Ok(gamma.neg().sub(&l_value(&Real::zero(), &p, ctx)?, ctx))
    };
    let (a0, a0_tolerance) = solve_decreasing_root(
        &f_a0,
        Real::from_rat(&rat(1, 2), ctx),
        Real::from_rat(&rat(3, 5), ctx),
        &tol,
        ctx,
    )?;

    // a0'': root of psi''(1) - L_xx(0, a) on (1/3, 1/2); decreasing in a.
    let psi2_at_1 = oracle::polygamma(PolygammaOrder::Psi2, &Real::one(), ctx)?;
    let f_a0pp = |a: &Real| -> Result<Real> {
        let p = ParamA::Value(a.clone());
        Ok(psi2_at_1.sub(&l_partial_x(2, &Real::zero(), &p, ctx)?, ctx))
    };
    let (a0_double_prime, a0_double_prime_tolerance) = solve_decreasing_root(
        &f_a0pp,
        Real::from_rat(&rat(1, 3), ctx),
        Real::from_rat(&rat(1, 2), ctx),
        &tol,
        ctx,
    )?;

    Ok(ThresholdSet {
        a1,
        a2,
        a0_prime,
        a0,
        a0_tolerance,
        a0_double_prime,
        a0_double_prime_tolerance,
    })
}

/// Bracketed root of a strictly decreasing function: bisection with a
/// false-position polish (Illinois-style stagnation guard). Returns the
/// midpoint and achieved half-width once the bracket is narrower than `tol`.
fn solve_decreasing_root<F>(
    f: &F,
    mut lo: Real,
    mut hi: Real,
    tol: &Real,
    ctx: &PrecisionContext,
) -> Result<(Real, Real)>
where
    F: Fn(&Real) -> Result<Real>,
{
    let mut f_lo = f(&lo)?;
    let mut f_hi = f(&hi)?;
    if f_lo.signum() <= 0 || f_hi.signum() >= 0 {
        return Err(Error::RootBracketingFailed(format!(
            "no sign change on [{}, {}]: f(lo) = {}, f(hi) = {}",
            lo.to_decimal(8),
            hi.to_decimal(8),
            f_lo.to_decimal(8),
            f_hi.to_decimal(8)
        )));
    }
    let mut since_shrink_lo = 0u32;
    let mut since_shrink_hi = 0u32;
    loop {
        let width = hi.sub(&lo, ctx);
        if &width < tol {
            let mid = lo.add(&hi, ctx).mul2k(-1);
            return Ok((mid, width.mul2k(-1)));
        }
        // False position estimate, damped toward bisection when one side
        // stagnates.
        let denom = f_lo.sub(&f_hi, ctx);
        let mut x = if denom.is_zero() {
            lo.add(&hi, ctx).mul2k(-1)
        } else {
            let t = f_lo.div(&denom, ctx);
            lo.add(&width.mul(&t, ctx), ctx)
        };
        if x <= lo || x >= hi || since_shrink_lo > 1 || since_shrink_hi > 1 {
            x = lo.add(&hi, ctx).mul2k(-1);
        }
        let fx = f(&x)?;
        match fx.signum() {
            0 => {
                // Exact hit: report it with a half-tolerance certificate.
                let eps = tol.mul2k(-1);
                return Ok((x, eps));
            }
            s if s > 0 => {
                lo = x;
                f_lo = fx;
                since_shrink_lo = 0;
                since_shrink_hi += 1;
            }
            _ => {
                hi = x;
                f_hi = fx;
                since_shrink_hi = 0;
                since_shrink_lo += 1;
            }
        }
    }
}

/// Offset constant `c0(a) = L(0, a) + gamma` (the sentinel gives
/// `gamma - ln(3)/2`). Defined for every admissible parameter `a > 1/15`.
pub fn c0(a: &ParamA, ctx: &PrecisionContext) -> Result<Real> {
    let gamma = oracle::euler_gamma(ctx);
    if a.is_infinite() {
        let half_ln3 = Real::from_i64(3).ln(ctx)?.mul2k(-1);
        return Ok(gamma.sub(&half_ln3, ctx));
    }
    Ok(l_value(&Real::zero(), a, ctx)?.add(&gamma, ctx))
}

/// Offset constant `c1(a) = 1 - L(1, a)`.
pub fn c1(a: &ParamA, ctx: &PrecisionContext) -> Result<Real> {
    Ok(Real::one().sub(&l_value(&Real::one(), a, ctx)?, ctx))
}

/// The interior maximum of the residual at `a0`: the unique root `x0` of
/// `psi'(x+1) - L_x(x, a0)` in (0, 1/5), together with the residual value
/// there. `psi(x+1) - L(x, a0)` is bounded above by that value on all of
/// `(0, inf)`.
pub fn solve_x0(ctx: &PrecisionContext) -> Result<(Real, Real)> {
    let key = (ctx.digits(), ctx.guard_digits());
    let cache = X0_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let a0 = ParamA::A0;
    let f = |x: &Real| -> Result<Real> {
        let lhs = oracle::polygamma(PolygammaOrder::Psi1, &x.add(&Real::one(), ctx), ctx)?;
        Ok(lhs.sub(&l_partial_x(1, x, &a0, ctx)?, ctx))
    };
    let tol = Real::ten_pow(-(ctx.digits() as i64) + 2, ctx);
    let lo = Real::ten_pow(-6, ctx);
    let hi = Real::from_rat(&rat(1, 5), ctx);
    let (x0, _) = solve_decreasing_root(&f, lo, hi, &tol, ctx)?;
    let value = oracle::polygamma(PolygammaOrder::Psi, &x0.add(&Real::one(), ctx), ctx)?
        .sub(&l_value(&x0, &a0, ctx)?, ctx);
    let out = (x0, value);
    cache.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use rand::{Rng, SeedableRng};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    fn close(a: &Real, b: &Real, digits: i64) -> bool {
        let c = ctx();
        a.sub(b, &c).abs() < Real::ten_pow(-digits, &c)
    }

    fn real_from(s: &str) -> Real {
        Real::from_rat(&parse_rat(s).unwrap(), &ctx())
    }

    fn a_rat(n: i64, d: i64) -> ParamA {
        ParamA::rational(rat(n, d)).unwrap()
    }

    #[test]
    fn l_at_zero_half_matches_weighted_logs() {
        let c = ctx();
        // L(0, 1/2) = (2/49) ln(5/6) + (45/98) ln(13/45)
        let v = l_value(&Real::zero(), &a_rat(1, 2), &c).unwrap();
        let expect = real_from("5/6")
            .ln(&c)
            .unwrap()
            .mul(&real_from("2/49"), &c)
            .add(&real_from("13/45").ln(&c).unwrap().mul(&real_from("45/98"), &c), &c);
        assert!(close(&v, &expect, 55));
        assert!(close(&v, &real_from("-0.57761609368439851495"), 19));
    }

    #[test]
    fn sentinel_is_the_large_a_limit() {
        let c = ctx();
        // L(1, inf) = ln(7/3)/2
        let v = l_value(&Real::one(), &ParamA::Infinity, &c).unwrap();
        let expect = real_from("7/3").ln(&c).unwrap().mul2k(-1);
        assert!(close(&v, &expect, 55));
        // and large finite a approaches it from below
        let big = l_value(&Real::one(), &a_rat(1_000_000, 1), &c).unwrap();
        assert!(big < v);
        assert!(v.sub(&big, &c) < real_from("1e-8"));
    }

    #[test]
    fn am_gm_upper_estimate_holds() {
        let c = ctx();
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        let margin = c.eps_oracle().mul2k(1);
        for _ in 0..100 {
            let x = Real::from_rat(&rat(rng.gen_range(-90..4000), 100), &c);
            let a = a_rat(rng.gen_range(30..4000), 100);
            let (Ok(lhs), Ok(rhs)) = (l_value(&x, &a, &c), l_value(&x, &ParamA::Infinity, &c))
            else {
                continue;
            };
            assert!(
                lhs <= rhs.add(&margin, &c),
                "upper estimate violated at x={} a={a}",
                x.to_decimal(8)
            );
        }
    }

    #[test]
    fn partial_x_at_zero_half_is_213_over_130() {
        let c = ctx();
        let v = l_partial_x(1, &Real::zero(), &a_rat(1, 2), &c).unwrap();
        assert!(close(&v, &Real::from_rat(&rat(213, 130), &c), 55));
    }

    #[test]
    fn partials_match_central_differences() {
        let c = ctx();
        let x = Real::from_i64(2);
        let a = a_rat(1, 1);
        let h = Real::ten_pow(-(c.digits() as i64 / 3), &c);
        let tol = Real::ten_pow(-(c.digits() as i64 / 2), &c);
        for order in 1..=3u8 {
            let lower = l_partial_x(order - 1, &x.sub(&h, &c), &a, &c).unwrap();
            let upper = l_partial_x(order - 1, &x.add(&h, &c), &a, &c).unwrap();
            let fd = upper.sub(&lower, &c).div(&h.mul2k(1), &c);
            let exact = l_partial_x(order, &x, &a, &c).unwrap();
            assert!(
                fd.sub(&exact, &c).abs() < tol,
                "order {order}: fd {} vs exact {}",
                fd.to_decimal(20),
                exact.to_decimal(20)
            );
        }
        // dL/da against a central difference in a
        let da = l_partial_a(&x, &a, &c).unwrap();
        let ap = ParamA::Value(Real::one().add(&h, &c));
        let am = ParamA::Value(Real::one().sub(&h, &c));
        let fd = l_value(&x, &ap, &c)
            .unwrap()
            .sub(&l_value(&x, &am, &c).unwrap(), &c)
            .div(&h.mul2k(1), &c);
        assert!(fd.sub(&da, &c).abs() < tol);
    }

    #[test]
    fn partial_a_signs_and_decay() {
        let c = ctx();
        let v = l_partial_a(&Real::one(), &a_rat(1, 2), &c).unwrap();
        assert!(v.is_positive());
        // vanishes as x grows
        let far = l_partial_a(&Real::from_i64(1_000_000), &a_rat(1, 1), &c).unwrap();
        assert!(far.abs() < real_from("1e-10"));
        // sentinel is rejected
        assert!(l_partial_a(&Real::one(), &ParamA::Infinity, &c).is_err());
    }

    #[test]
    fn monotone_in_a_on_random_pairs() {
        let c = ctx();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let margin = c.eps_oracle().mul2k(1);
        let mut decided = 0;
        for _ in 0..50 {
            let x = Real::from_rat(&rat(rng.gen_range(-99..2000), 100), &c);
            if x <= Real::from_i64(-1) {
                continue;
            }
            let lo = rng.gen_range(27..1000);
            let hi = lo + rng.gen_range(1..1000);
            let (a, a2) = (a_rat(lo, 100), a_rat(hi, 100));
            let va = l_value(&x, &a, &c).unwrap();
            let vb = l_value(&x, &a2, &c).unwrap();
            let diff = vb.sub(&va, &c);
            if diff.abs() > margin {
                assert!(diff.is_positive(), "L not increasing in a at x={}", x.to_decimal(8));
                decided += 1;
            }
        }
        assert!(decided > 30, "too many indeterminate comparisons");
    }

    #[test]
    fn partial_monotonicity_in_a() {
        // For x > 0: L_x decreasing, L_xx increasing, L_xxx decreasing in a.
        let c = ctx();
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        let margin = c.eps_oracle().mul2k(1);
        for _ in 0..40 {
            let x = Real::from_rat(&rat(rng.gen_range(1..3000), 100), &c);
            let lo = rng.gen_range(7..500);
            let hi = lo + rng.gen_range(1..500);
            let (pa, pb) = (a_rat(lo, 100), a_rat(hi, 100));
            for (order, expect_sign) in [(1u8, -1i32), (2, 1), (3, -1)] {
                let va = l_partial_x(order, &x, &pa, &c).unwrap();
                let vb = l_partial_x(order, &x, &pb, &c).unwrap();
                let diff = vb.sub(&va, &c);
                if diff.abs() > margin {
                    assert_eq!(
                        diff.signum(),
                        expect_sign,
                        "order {order} monotonicity at x={} a={lo}/100..{hi}/100",
                        x.to_decimal(8)
                    );
                }
            }
        }
    }

    #[test]
    fn weight_identity_exact() {
        // 1/(90a^2+2) + 45a^2/(90a^2+2) = 1/2 exactly over the rationals
        for a in [rat(1, 2), rat(7, 9), rat(11, 10), rat(2, 15)] {
            let w = rat_int(90) * &a * &a + rat_int(2);
            let lhs = w.clone().recip() + rat_int(45) * &a * &a / &w;
            assert_eq!(lhs, rat(1, 2));
        }
    }

    #[test]
    fn threshold_values_match_references() {
        let c = ctx();
        let t = thresholds(&c).unwrap();
        assert!(t.ordering_holds());
        let a1_ref = real_from("0.790032982760276756793512416124773581918005081036869014036962");
        let a0p_ref = real_from("0.470530280964433404899914276119989994902540602456395459445149");
        let a0_ref = real_from("0.512967071402463520024336677531774659609736689285266945601216");
        let a0pp_ref = real_from("0.432180364458330449430742081704782246664125521480251964813066");
        assert!(close(&t.a1, &a1_ref, 55));
        assert!(close(&t.a0_prime, &a0p_ref, 55));
        assert!(close(&t.a0, &a0_ref, 45));
        assert!(close(&t.a0_double_prime, &a0pp_ref, 45));
        // published prefixes
        assert!(close(&t.a0, &real_from("0.512967071402"), 11));
        assert!(close(&t.a0_double_prime, &real_from("0.4321803644583305"), 13));
        // a2 is the negative companion root
        assert!(t.a2.is_negative());
        assert!(close(&t.a2, &real_from("-0.0281282208555148520316076542200116771561"), 38));
        // achieved tolerances honor the contract
        let tol = Real::ten_pow(-(c.digits() as i64) + 2, &c);
        assert!(t.a0_tolerance < tol);
        assert!(t.a0_double_prime_tolerance < tol);
    }

    #[test]
    fn c0_and_c1_reference_values() {
        let c = ctx();
        // Values recomputed exactly from the defining formulas.
        assert!(close(&c0(&a_rat(4, 5), &c).unwrap(), &real_from("0.0063968993312494652447"), 18));
        assert!(close(&c0(&a_rat(1, 1), &c).unwrap(), &real_from("0.0092314243088592681973"), 18));
        assert!(close(
            &c0(&ParamA::Infinity, &c).unwrap(),
            &real_from("0.027909520567478014909"),
            18
        ));
        assert!(close(&c0(&a_rat(1, 3), &c).unwrap(), &real_from("-0.0073046941001139408756"), 18));
        assert!(close(&c0(&a_rat(4, 15), &c).unwrap(), &real_from("-0.011709046925805313617"), 18));
        // a = sqrt(5)/15 via the numeric parameter: c0 = ln(4/45)/4 + gamma
        let s5 = Real::from_i64(5).sqrt(&c).unwrap().div_u32(15, &c);
        let v = c0(&ParamA::Value(s5), &c).unwrap();
        let expect = real_from("4/45")
            .ln(&c)
            .unwrap()
            .mul2k(-2)
            .add(&oracle::euler_gamma(&c), &c);
        assert!(close(&v, &expect, 50));
        assert!(close(&v, &real_from("-0.027876367261074424033"), 18));
        // c1
        assert!(close(&c1(&a_rat(1, 2), &c).unwrap(), &real_from("0.57725706193896056204"), 18));
        // touching case: L(1, a1) + c1(a1) = 1 by construction
        let lhs = l_value(&Real::one(), &ParamA::A1, &c)
            .unwrap()
            .add(&c1(&ParamA::A1, &c).unwrap(), &c);
        assert!(close(&lhs, &Real::one(), 55));
        // sentinel: c1(inf) = 1 - ln(7/3)/2
        let expect = Real::one().sub(&real_from("7/3").ln(&c).unwrap().mul2k(-1), &c);
        assert!(close(&c1(&ParamA::Infinity, &c).unwrap(), &expect, 55));
    }

    #[test]
    fn x0_and_residual_maximum() {
        let c = ctx();
        let (x0, f_at) = solve_x0(&c).unwrap();
        assert!(close(
            &x0,
            &real_from("0.14731187621954946949773666609395523923070574171236"),
            45
        ));
        // published prefix to 1e-10
        assert!(close(&x0, &real_from("0.147311876217"), 10));
        assert!(close(&f_at, &real_from("0.000465102218818319966807613322566"), 25));
        assert!(close(&f_at, &real_from("0.0004651"), 7));
        // stationarity: psi'(x0+1) = L_x(x0, a0)
        let deriv = oracle::polygamma(PolygammaOrder::Psi1, &x0.add(&Real::one(), &c), &c)
            .unwrap()
            .sub(&l_partial_x(1, &x0, &ParamA::A0, &c).unwrap(), &c);
        assert!(deriv.abs() < Real::ten_pow(-(c.digits() as i64) + 3, &c));
    }

    #[test]
    fn domain_violations_are_rejected() {
        let c = ctx();
        // x <= -1 always out
        assert!(l_value(&Real::from_i64(-2), &a_rat(9, 10), &c).is_err());
        // x in (-1, 0] needs a > 4/15
        assert!(l_value(&real_from("-0.5"), &a_rat(1, 5), &c).is_err());
        assert!(l_value(&real_from("-0.5"), &a_rat(9, 10), &c).is_ok());
        // a <= 1/15 rejected at construction
        assert!(ParamA::rational(rat(1, 15)).is_err());
        assert!(ParamA::rational(rat(1, 30)).is_err());
        // sentinel still requires x > -1
        assert!(l_value(&Real::from_i64(-1), &ParamA::Infinity, &c).is_err());
    }

    #[test]
    fn regime_classification() {
        let c = ctx();
        assert_eq!(a_rat(1, 3).regime(&c).unwrap(), Regime::BelowA0DoublePrime);
        assert_eq!(a_rat(45, 100).regime(&c).unwrap(), Regime::UpToA0Prime);
        assert_eq!(a_rat(1, 2).regime(&c).unwrap(), Regime::UpToA0);
        assert_eq!(a_rat(6, 10).regime(&c).unwrap(), Regime::Gap);
        assert_eq!(a_rat(4, 5).regime(&c).unwrap(), Regime::AtLeastA1);
        assert_eq!(ParamA::A1.regime(&c).unwrap(), Regime::AtLeastA1);
        assert_eq!(ParamA::A0.regime(&c).unwrap(), Regime::UpToA0);
        assert_eq!(ParamA::Infinity.regime(&c).unwrap(), Regime::AtLeastA1);
    }

    #[test]
    fn parse_tokens() {
        assert!(matches!(ParamA::parse("a1").unwrap(), ParamA::A1));
        assert!(matches!(ParamA::parse("inf").unwrap(), ParamA::Infinity));
        assert!(matches!(ParamA::parse("0.5").unwrap(), ParamA::Rational(_)));
        assert!(matches!(ParamA::parse("11/21").unwrap(), ParamA::Rational(_)));
        assert!(ParamA::parse("0.01").is_err());
        assert!(ParamA::parse("bogus").is_err());
    }
}
