//! Sequences converging to the Euler-Mascheroni constant, their error
//! table, scaled-limit checks, and empirical convergence-order estimation.
//!
//! The parametric sequence `l_n(a) = H_n - L(n, a)` converges like `n^-6`
//! for admissible `a != a1` and like `n^-8` at `a = a1`; the module also
//! carries the earlier sequences it is compared against, from the classical
//! `H_n - ln n` up to the averaged `tau_n` with rate `n^-5`.
//!
//! The `n^-6` limit constant is `-(315 a^2 - 240 a - 7) / (85050 a)`, i.e.
//! `-(a - a1)(a - a2) / (270 a)` after factoring out the quadratic's leading
//! coefficient. (Dropping that factor understates the limit by 315x; the
//! scaled-limit checks here pin the constant against the sequence itself.)

use std::fmt;

use crate::approximant::{self, ParamA};
use crate::error::{Error, Result};
use crate::oracle;
use crate::rational::{rat, rat_int, Rat};
use crate::real::{PrecisionContext, Real};

/// Identifier of a gamma-approximating sequence.
#[derive(Clone, Debug)]
pub enum SequenceId {
    /// `H_n - L(n, a)`; the sentinel parameter reproduces `sigma_n` exactly.
    LOfA(ParamA),
    /// `H_n - ln(n^2 + n + 1/3)/2`, rate `n^-4`.
    Sigma,
    /// `H_n + ln((e^(2/(n+1)) - 1)/(2n+2))/2`, rate `n^-4`.
    Theta,
    /// `(theta_n + sigma_n)/2` in closed form, rate `n^-5`.
    Tau,
    /// Mean of `u_n` and `v_n`, rate `n^-4`.
    Delta,
    /// `H_(n-1) + 1/((6-2 sqrt 6) n) - ln(n + 1/sqrt 6)`, rate `n^-3`.
    U,
    /// `H_(n-1) + 1/((6+2 sqrt 6) n) - ln(n - 1/sqrt 6)`, rate `n^-3`.
    V,
    /// `H_(n-2) + 23/(24(n-1)) + 1/(24n) - ln(n - 1/2)`, rate `n^-4`.
    Alpha,
    /// `H_n - ln(n + 1/2)`, rate `n^-2`.
    DeTemple,
    /// `H_n - ln(n + 1/2 + 1/(24n))`, rate `n^-3`.
    Toth,
    /// `H_n + ln((e^(1/(n+1)) - 1)/(n + 1/2))/2`, rate `n^-3`.
    Mu,
    /// `H_n - ln n`, rate `n^-1`.
    Classical,
}

impl SequenceId {
    /// Smallest index the formula is evaluated at. The mean sequences start
    /// at 1 with the empty-sum convention `H_0 = 0`; `alpha` starts at 3.
    pub fn min_n(&self) -> u64 {
        match self {
            SequenceId::Alpha => 3,
            _ => 1,
        }
    }

    /// Theoretical convergence order `p` in `n^-p`.
    pub fn theoretical_order(&self) -> u32 {
        match self {
            SequenceId::LOfA(ParamA::A1) => 8,
            SequenceId::LOfA(_) => 6,
            SequenceId::Sigma | SequenceId::Theta | SequenceId::Delta | SequenceId::Alpha => 4,
            SequenceId::Tau => 5,
            SequenceId::U | SequenceId::V | SequenceId::Toth | SequenceId::Mu => 3,
            SequenceId::DeTemple => 2,
            SequenceId::Classical => 1,
        }
    }

    /// Parses `delta | tau | sigma | theta | u | v | alpha | detemple |
    /// toth | mu | classical | l:<a>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(a) = s.strip_prefix("l:") {
            return Ok(SequenceId::LOfA(ParamA::parse(a)?));
        }
        Ok(match s {
            "sigma" => SequenceId::Sigma,
            "theta" => SequenceId::Theta,
            "tau" => SequenceId::Tau,
            "delta" => SequenceId::Delta,
            "u" => SequenceId::U,
            "v" => SequenceId::V,
            "alpha" => SequenceId::Alpha,
            "detemple" => SequenceId::DeTemple,
            "toth" => SequenceId::Toth,
            "mu" => SequenceId::Mu,
            "classical" => SequenceId::Classical,
            other => return Err(Error::Parse(format!("unknown sequence {other:?}"))),
        })
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::LOfA(a) => write!(f, "l:{a}"),
            SequenceId::Sigma => write!(f, "sigma"),
            SequenceId::Theta => write!(f, "theta"),
            SequenceId::Tau => write!(f, "tau"),
            SequenceId::Delta => write!(f, "delta"),
            SequenceId::U => write!(f, "u"),
            SequenceId::V => write!(f, "v"),
            SequenceId::Alpha => write!(f, "alpha"),
            SequenceId::DeTemple => write!(f, "detemple"),
            SequenceId::Toth => write!(f, "toth"),
            SequenceId::Mu => write!(f, "mu"),
            SequenceId::Classical => write!(f, "classical"),
        }
    }
}

/// One sequence evaluation with its signed and absolute error against the
/// oracle Euler constant at the same context.
#[derive(Clone, Debug)]
pub struct SequenceSample {
    pub n: u64,
    pub value: Real,
    pub error: Real,
    pub abs_error: Real,
}

/// Empirical order estimate `p_hat = log2(|e_n| / |e_2n|)`.
#[derive(Clone, Debug)]
pub struct OrderEstimate {
    pub n: u64,
    pub p_hat: Real,
}

/// `H_n` with the empty-sum convention for n = 0 (sequence-internal).
fn h(n: u64) -> Rat {
    if n == 0 {
        Rat::from_integer(0.into())
    } else {
        oracle::harmonic(n).expect("n >= 1")
    }
}

fn check_min(id: &SequenceId, n: u64) -> Result<()> {
    let min = id.min_n();
    if n < min {
        return Err(Error::SequenceMinN { seq: id.to_string(), min, n });
    }
    Ok(())
}

/// Evaluates one sequence member and its error against the Euler constant.
pub fn seq_value(id: &SequenceId, n: u64, ctx: &PrecisionContext) -> Result<SequenceSample> {
    check_min(id, n)?;
    let value = raw_value(id, n, ctx)?;
    let gamma = oracle::euler_gamma(ctx);
    let error = value.sub(&gamma, ctx);
    let abs_error = error.abs();
    Ok(SequenceSample { n, value, error, abs_error })
}

fn raw_value(id: &SequenceId, n: u64, ctx: &PrecisionContext) -> Result<Real> {
    let hn = Real::from_rat(&h(n), ctx);
    let nr = Real::from_u64(n);
    Ok(match id {
        SequenceId::LOfA(a) => hn.sub(&approximant::l_value(&nr, a, ctx)?, ctx),
        SequenceId::Sigma => {
            // H_n - ln(n^2 + n + 1/3)/2
            let q = Real::from_rat(&(rat_int(n as i64) * rat_int(n as i64 + 1) + rat(1, 3)), ctx);
            hn.sub(&q.ln(ctx)?.mul2k(-1), ctx)
        }
        SequenceId::Theta => {
            // H_n + ln((e^(2/(n+1)) - 1)/(2n+2))/2
            let e = Real::from_rat(&rat(2, n as i64 + 1), ctx).exp(ctx)?;
            let num = e.sub(&Real::one(), ctx);
            let den = Real::from_u64(2 * n + 2);
            hn.add(&num.div(&den, ctx).ln(ctx)?.mul2k(-1), ctx)
        }
        SequenceId::Tau => {
            // H_n + ln((e^(2/(n+1)) - 1)/(2n^3 + 4n^2 + 8n/3 + 2/3))/4
            let e = Real::from_rat(&rat(2, n as i64 + 1), ctx).exp(ctx)?;
            let num = e.sub(&Real::one(), ctx);
            let ni = rat_int(n as i64);
            let den_rat =
                rat_int(2) * &ni * &ni * &ni + rat_int(4) * &ni * &ni + rat(8, 3) * &ni + rat(2, 3);
            let den = Real::from_rat(&den_rat, ctx);
            hn.add(&num.div(&den, ctx).ln(ctx)?.mul2k(-2), ctx)
        }
        SequenceId::Delta => {
            let u = raw_value(&SequenceId::U, n, ctx)?;
            let v = raw_value(&SequenceId::V, n, ctx)?;
            u.add(&v, ctx).mul2k(-1)
        }
        SequenceId::U => {
            // H_(n-1) + 1/((6 - 2 sqrt 6) n) - ln(n + 1/sqrt 6)
            let sqrt6 = Real::from_i64(6).sqrt(ctx)?;
            let hprev = Real::from_rat(&h(n - 1), ctx);
            let coeff = Real::from_i64(6).sub(&sqrt6.mul2k(1), ctx).mul(&nr, ctx);
            let log_arg = nr.add(&sqrt6.recip(ctx), ctx);
            hprev.add(&coeff.recip(ctx), ctx).sub(&log_arg.ln(ctx)?, ctx)
        }
        SequenceId::V => {
            let sqrt6 = Real::from_i64(6).sqrt(ctx)?;
            let hprev = Real::from_rat(&h(n - 1), ctx);
            let coeff = Real::from_i64(6).add(&sqrt6.mul2k(1), ctx).mul(&nr, ctx);
            let log_arg = nr.sub(&sqrt6.recip(ctx), ctx);
            hprev.add(&coeff.recip(ctx), ctx).sub(&log_arg.ln(ctx)?, ctx)
        }
        SequenceId::Alpha => {
            // H_(n-2) + 23/(24(n-1)) + 1/(24n) - ln(n - 1/2)
            let hprev = Real::from_rat(&h(n - 2), ctx);
            let t1 = Real::from_rat(&rat(23, 24 * (n as i64 - 1)), ctx);
            let t2 = Real::from_rat(&rat(1, 24 * n as i64), ctx);
            let log_arg = Real::from_rat(&(rat_int(n as i64) - rat(1, 2)), ctx);
            hprev.add(&t1, ctx).add(&t2, ctx).sub(&log_arg.ln(ctx)?, ctx)
        }
        SequenceId::DeTemple => {
            let log_arg = Real::from_rat(&(rat_int(n as i64) + rat(1, 2)), ctx);
            hn.sub(&log_arg.ln(ctx)?, ctx)
        }
        SequenceId::Toth => {
            let log_arg =
                Real::from_rat(&(rat_int(n as i64) + rat(1, 2) + rat(1, 24 * n as i64)), ctx);
            hn.sub(&log_arg.ln(ctx)?, ctx)
        }
        SequenceId::Mu => {
            // H_n + ln((e^(1/(n+1)) - 1)/(n + 1/2))/2
            let e = Real::from_rat(&rat(1, n as i64 + 1), ctx).exp(ctx)?;
            let num = e.sub(&Real::one(), ctx);
            let den = Real::from_rat(&(rat_int(n as i64) + rat(1, 2)), ctx);
            hn.add(&num.div(&den, ctx).ln(ctx)?.mul2k(-1), ctx)
        }
        SequenceId::Classical => hn.sub(&nr.ln(ctx)?, ctx),
    })
}

/// Error-table grid: one row per `n`, one column per sequence.
#[derive(Clone, Debug)]
pub struct ErrorTable {
    pub ids: Vec<SequenceId>,
    pub ns: Vec<u64>,
    /// `rows[i][j]` is the sample of `ids[j]` at `ns[i]`.
    pub rows: Vec<Vec<SequenceSample>>,
}

pub fn error_table(ids: &[SequenceId], ns: &[u64], ctx: &PrecisionContext) -> Result<ErrorTable> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut row = Vec::with_capacity(ids.len());
        for id in ids {
            row.push(seq_value(id, n, ctx)?);
        }
        rows.push(row);
    }
    Ok(ErrorTable { ids: ids.to_vec(), ns: ns.to_vec(), rows })
}

/// The default comparison grid: `delta`, `tau`, `l(a1)`, `l(1/2)` at
/// n = 1, 2, 5, 10, 50, 100, 200, 500.
pub fn default_table_ids() -> Vec<SequenceId> {
    vec![
        SequenceId::Delta,
        SequenceId::Tau,
        SequenceId::LOfA(ParamA::A1),
        SequenceId::LOfA(ParamA::Rational(rat(1, 2))),
    ]
}

pub fn default_table_ns() -> Vec<u64> {
    vec![1, 2, 5, 10, 50, 100, 200, 500]
}

/// Closed-form `lim n^6 (l_n(a) - gamma) = -(315 a^2 - 240 a - 7)/(85050 a)`,
/// exactly zero at `a1` (where the quadratic vanishes and the rate improves
/// to `n^-8`). Exact rational parameters are evaluated exactly.
pub fn limit_constant(a: &ParamA, ctx: &PrecisionContext) -> Result<Real> {
    match a {
        ParamA::A1 => Ok(Real::zero()),
        ParamA::Infinity => Err(Error::OutsideDomain(
            "the n^-6 limit needs a finite parameter".into(),
        )),
        ParamA::Rational(r) => {
            let num = rat_int(315) * r * r - rat_int(240) * r - rat_int(7);
            let c = -num / (rat_int(85050) * r);
            Ok(Real::from_rat(&c, ctx))
        }
        other => {
            let av = other.value(ctx)?;
            let num = Real::from_i64(315)
                .mul(&av, ctx)
                .mul(&av, ctx)
                .sub(&Real::from_i64(240).mul(&av, ctx), ctx)
                .sub(&Real::from_i64(7), ctx);
            Ok(num.div(&Real::from_i64(85050).mul(&av, ctx), ctx).neg())
        }
    }
}

/// Which scaled-limit claim to check.
#[derive(Clone, Debug)]
pub enum ScaledLimitKind {
    /// `n^6 (l_n(a) - gamma) -> limit_constant(a)`
    L6(ParamA),
    /// `n^8 (l_n(a1) - gamma) -> -2/1225`
    L8A1,
    /// `n^4 (sigma_n - gamma) -> -1/180`
    Sigma4,
    /// `n^5 (tau_n - gamma) -> -1/180`
    Tau5,
}

/// Observed scaled error and its closed-form target. The unscaled error
/// must clear the cancellation floor `10^-(digits-10)`, otherwise the
/// observation would be precision noise and an error is returned instead.
pub fn scaled_limit_check(
    kind: &ScaledLimitKind,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<(Real, Real)> {
    let (id, power, target) = match kind {
        ScaledLimitKind::L6(a) => (
            SequenceId::LOfA(a.clone()),
            6,
            limit_constant(a, ctx)?,
        ),
        ScaledLimitKind::L8A1 => (
            SequenceId::LOfA(ParamA::A1),
            8,
            Real::from_rat(&rat(-2, 1225), ctx),
        ),
        ScaledLimitKind::Sigma4 => (SequenceId::Sigma, 4, Real::from_rat(&rat(-1, 180), ctx)),
        ScaledLimitKind::Tau5 => (SequenceId::Tau, 5, Real::from_rat(&rat(-1, 180), ctx)),
    };
    let sample = seq_value(&id, n, ctx)?;
    let floor = Real::ten_pow(-(ctx.digits() as i64) + 10, ctx);
    if sample.abs_error <= floor {
        return Err(Error::PrecisionGuard(format!(
            "|{id} error| = {} at n = {n} is below the cancellation floor {}",
            sample.abs_error.to_decimal(5),
            floor.to_decimal(3)
        )));
    }
    let observed = sample.error.mul(&Real::from_u64(n).powi(power, ctx), ctx);
    Ok((observed, target))
}

/// `p_hat = log2(|e_n| / |e_2n|)`; both errors must be resolvable at the
/// working precision.
pub fn order_estimate(id: &SequenceId, n: u64, ctx: &PrecisionContext) -> Result<OrderEstimate> {
    let e1 = seq_value(id, n, ctx)?.abs_error;
    let e2 = seq_value(id, 2 * n, ctx)?.abs_error;
    let floor = Real::ten_pow(-(ctx.digits() as i64) + 2, ctx);
    if e1 <= floor || e2 <= floor {
        return Err(Error::UnresolvableError(format!(
            "|e_{n}| = {} and |e_{}| = {} must both exceed {}",
            e1.to_decimal(5),
            2 * n,
            e2.to_decimal(5),
            floor.to_decimal(3)
        )));
    }
    let ratio = e1.div(&e2, ctx);
    let p_hat = ratio.ln(ctx)?.div(&Real::ln2(ctx), ctx);
    Ok(OrderEstimate { n, p_hat })
}
