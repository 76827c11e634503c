//! Independent high-precision reference values: `psi`, `psi'`, `psi''`,
//! `psi'''`, harmonic numbers, the Euler-Mascheroni constant, and `zeta(3)`.
//!
//! `psi^(k)(x)` is computed by shifting the argument upward with the exact
//! recurrence `psi^(k)(x+1) - psi^(k)(x) = (-1)^k k! / x^(k+1)` until it
//! clears a threshold, then summing the Bernoulli asymptotic series
//! `psi(z) ~ ln z - 1/(2z) - sum B_2j / (2j z^2j)` (or its termwise
//! derivatives). The series diverges, so truncation is error-budgeted: the
//! first omitted term must stay below `10^-(digits+5)`, and a growing term
//! aborts with an error rather than degrade silently.
//!
//! The Euler constant is defined operationally as `H_N - psi_asym(N+1)`
//! rather than a hard-coded literal, which keeps the oracle self-contained.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rat};
use crate::real::{PrecisionContext, Real};

/// Which polygamma function: `psi` itself or one of its first three
/// derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolygammaOrder {
    Psi,
    Psi1,
    Psi2,
    Psi3,
}

impl PolygammaOrder {
    pub fn k(self) -> u8 {
        match self {
            PolygammaOrder::Psi => 0,
            PolygammaOrder::Psi1 => 1,
            PolygammaOrder::Psi2 => 2,
            PolygammaOrder::Psi3 => 3,
        }
    }

    pub fn from_k(k: u8) -> Result<Self> {
        Ok(match k {
            0 => PolygammaOrder::Psi,
            1 => PolygammaOrder::Psi1,
            2 => PolygammaOrder::Psi2,
            3 => PolygammaOrder::Psi3,
            _ => return Err(Error::Parse(format!("polygamma order {k} not in 0..=3"))),
        })
    }
}

/// Shift threshold and series cap for the asymptotic evaluation.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Argument size above which the asymptotic series is used.
    pub shift_threshold: u32,
    /// Hard cap on Bernoulli-series terms before giving up.
    pub max_series_terms: usize,
}

impl OracleConfig {
    /// Threshold for a precision: 2*pi*T must comfortably exceed
    /// `(digits+12) ln 10`, since the smallest reachable term of the
    /// divergent series at argument T is about `e^(-2 pi T)`.
    pub fn for_context(ctx: &PrecisionContext) -> Self {
        let need = ((ctx.digits() as f64 + 12.0) * std::f64::consts::LN_10
            / (2.0 * std::f64::consts::PI))
            .ceil() as u32;
        let shift_threshold = need.max(30);
        OracleConfig {
            shift_threshold,
            max_series_terms: 4 * shift_threshold as usize + 120,
        }
    }

    pub fn validate(&self, ctx: &PrecisionContext) -> Result<()> {
        if self.shift_threshold < 10 {
            return Err(Error::InvalidPrecision(
                "shift_threshold must be >= 10".into(),
            ));
        }
        // log10 of the best-case first omitted term at the threshold
        let floor_log10 =
            -2.0 * std::f64::consts::PI * self.shift_threshold as f64 / std::f64::consts::LN_10
                + 6.0; // slack for the polynomial prefactors of k = 1..3
        if floor_log10 > -(ctx.digits() as f64 + 5.0) {
            return Err(Error::InsufficientPrecision(format!(
                "threshold {} cannot reach 10^-{} truncation",
                self.shift_threshold,
                ctx.digits() + 5
            )));
        }
        Ok(())
    }
}

static BERNOULLI: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();

/// Exact Bernoulli number `B_m` (B_1 = -1/2), generated by the defining
/// recurrence and cached for the life of the process.
pub fn bernoulli(m: usize) -> Rat {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![Rat::one(), rat(-1, 2)]));
    let mut table = cache.lock().unwrap();
    while table.len() <= m {
        let n = table.len(); // computing B_n
        if n % 2 == 1 {
            table.push(Rat::zero());
            continue;
        }
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        let mut acc = Rat::zero();
        let mut binom = BigInt::one(); // C(n+1, 0)
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rat::from_integer(binom.clone()) * b;
            }
            // C(n+1, j+1) = C(n+1, j) * (n+1-j) / (j+1)
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        let b_n = -acc / Rat::from_integer(BigInt::from(n + 1));
        table.push(b_n);
    }
    table[m].clone()
}

/// Exact harmonic number `H_n` by binary splitting.
pub fn harmonic(n: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::NMustBePositive);
    }
    let (num, den) = harmonic_split(1, n + 1);
    Ok(Rat::new(num, den))
}

/// Sum of 1/k over [lo, hi) as an unreduced fraction.
fn harmonic_split(lo: u64, hi: u64) -> (BigInt, BigInt) {
    debug_assert!(lo < hi);
    if hi - lo == 1 {
        return (BigInt::one(), BigInt::from(lo));
    }
    let mid = lo + (hi - lo) / 2;
    let (n1, d1) = harmonic_split(lo, mid);
    let (n2, d2) = harmonic_split(mid, hi);
    (&n1 * &d2 + &n2 * &d1, d1 * d2)
}

/// `H_n` as a working-precision real via fixed-point summation; intended for
/// n large enough that the exact rational form is impractical.
pub fn harmonic_real(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::NMustBePositive);
    }
    let wbits = ctx.prec_bits() + 24;
    let one = BigInt::one() << wbits;
    let mut acc = BigInt::zero();
    for k in 1..=n {
        acc += &one / BigInt::from(k);
    }
    // Each floor division drops less than one unit in the last working bit.
    let r = Real::from_bigint(acc).mul2k(-(wbits as i64));
    Ok(r.add(&Real::zero(), ctx))
}

/// `psi^(k)(x)` for `x > 0` to context precision.
pub fn polygamma(order: PolygammaOrder, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    polygamma_with(order, x, ctx, &OracleConfig::for_context(ctx))
}

/// `psi^(k)` with an explicit oracle configuration.
pub fn polygamma_with(
    order: PolygammaOrder,
    x: &Real,
    ctx: &PrecisionContext,
    cfg: &OracleConfig,
) -> Result<Real> {
    if x.signum() <= 0 {
        return Err(Error::PoleBranch { x: x.to_decimal(8) });
    }
    cfg.validate(ctx)?;
    let k = order.k();
    let threshold = Real::from_u64(cfg.shift_threshold as u64);

    // Recurrence shift: psi^(k)(x) = psi^(k)(x+m) - sum_{i<m} (-1)^k k!/(x+i)^(k+1)
    let mut shift_sum = Real::zero();
    let mut z = x.clone();
    let k_fact = Real::from_u64(factorial(k));
    while z < threshold {
        let inv = k_fact.div(&z.powi(k as i64 + 1, ctx), ctx);
        shift_sum = shift_sum.add(&inv, ctx);
        z = z.add(&Real::one(), ctx);
    }
    if k % 2 == 1 {
        shift_sum = shift_sum.neg();
    }

    let tail = asymptotic_polygamma(order, &z, ctx, cfg)?;
    Ok(tail.sub(&shift_sum, ctx))
}

fn factorial(k: u8) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

/// Asymptotic Bernoulli series for `psi^(k)(z)`, valid for z at or above the
/// shift threshold. Truncation stops once a term falls below
/// `10^-(digits+7)`; a term that grows back above that bound first means the
/// precision budget is unreachable at this argument.
fn asymptotic_polygamma(
    order: PolygammaOrder,
    z: &Real,
    ctx: &PrecisionContext,
    cfg: &OracleConfig,
) -> Result<Real> {
    let k = order.k();
    let inv_z = z.recip(ctx);
    let inv_z2 = inv_z.mul(&inv_z, ctx);

    // Leading closed-form part.
    let mut result = match order {
        PolygammaOrder::Psi => {
            // ln z - 1/(2z)
            z.ln(ctx)?.sub(&inv_z.mul2k(-1), ctx)
        }
        PolygammaOrder::Psi1 => {
            // 1/z + 1/(2 z^2)
            inv_z.add(&inv_z2.mul2k(-1), ctx)
        }
        PolygammaOrder::Psi2 => {
            // -1/z^2 - 1/z^3
            let inv_z3 = inv_z2.mul(&inv_z, ctx);
            inv_z2.neg().sub(&inv_z3, ctx)
        }
        PolygammaOrder::Psi3 => {
            // 2/z^3 + 3/z^4
            let inv_z3 = inv_z2.mul(&inv_z, ctx);
            let inv_z4 = inv_z3.mul(&inv_z, ctx);
            inv_z3.mul2k(1).add(&inv_z4.mul(&Real::from_i64(3), ctx), ctx)
        }
    };

    let tol = Real::ten_pow(-(ctx.digits() as i64 + 7), ctx);
    // z^(-2j-k) iterated; sign comes from B_2j themselves.
    let mut zpow = match k {
        0 => inv_z2.clone(),
        1 => inv_z2.mul(&inv_z, ctx),
        2 => inv_z2.mul(&inv_z2, ctx),
        3 => inv_z2.mul(&inv_z2, ctx).mul(&inv_z, ctx),
        _ => unreachable!(),
    };
    let mut prev_mag: Option<Real> = None;
    let mut converged = false;
    for j in 1..=cfg.max_series_terms {
        let b = bernoulli(2 * j);
        let factor = match order {
            PolygammaOrder::Psi => b / rat_int(2 * j as i64),
            PolygammaOrder::Psi1 => b,
            PolygammaOrder::Psi2 => b * rat_int(2 * j as i64 + 1),
            PolygammaOrder::Psi3 => b * rat_int(2 * j as i64 + 1) * rat_int(2 * j as i64 + 2),
        };
        let term = Real::from_rat(&factor, ctx).mul(&zpow, ctx);
        let mag = term.abs();
        if let Some(prev) = &prev_mag {
            if mag > *prev && mag > tol {
                return Err(Error::InsufficientPrecision(format!(
                    "asymptotic series diverges at term {j} before reaching 10^-{}",
                    ctx.digits() + 7
                )));
            }
        }
        // psi gets -sum, psi' gets +sum, psi'' gets -sum, psi''' gets +sum.
        result = if k % 2 == 0 {
            result.sub(&term, ctx)
        } else {
            result.add(&term, ctx)
        };
        if mag < tol {
            converged = true;
            break;
        }
        prev_mag = Some(mag);
        zpow = zpow.mul(&inv_z2, ctx);
    }
    if !converged {
        return Err(Error::InsufficientPrecision(format!(
            "series cap {} reached before truncation target",
            cfg.max_series_terms
        )));
    }
    Ok(result)
}

static GAMMA_CACHE: OnceLock<Mutex<HashMap<(u32, u32), Real>>> = OnceLock::new();

/// Euler-Mascheroni constant at context precision: `H_N - psi_asym(N+1)`
/// with N at the shift threshold, so the asymptotic tail meets the budget
/// with no recurrence and no circular dependence on the constant itself.
pub fn euler_gamma(ctx: &PrecisionContext) -> Real {
    let key = (ctx.digits(), ctx.guard_digits());
    let cache = GAMMA_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let cfg = OracleConfig::for_context(ctx);
    let n = cfg.shift_threshold as u64;
    let h = harmonic(n).expect("threshold is positive");
    let z = Real::from_u64(n + 1);
    let psi = asymptotic_polygamma(PolygammaOrder::Psi, &z, ctx, &cfg)
        .expect("threshold chosen to satisfy the truncation budget");
    let g = Real::from_rat(&h, ctx).sub(&psi, ctx);
    cache.lock().unwrap().insert(key, g.clone());
    g
}

/// Apery's constant `zeta(3) = -psi''(1)/2`.
pub fn zeta3(ctx: &PrecisionContext) -> Result<Real> {
    let psi2 = polygamma(PolygammaOrder::Psi2, &Real::one(), ctx)?;
    Ok(psi2.neg().mul2k(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rat;

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

    const GAMMA_72: &str =
        "0.577215664901532860606512090082402431042159335939923598805767234884867727";

    #[test]
    fn bernoulli_first_values() {
        assert_eq!(bernoulli(0), Rat::one());
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), Rat::zero());
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn harmonic_exact_values() {
        assert_eq!(harmonic(1).unwrap(), rat(1, 1));
        assert_eq!(harmonic(2).unwrap(), rat(3, 2));
        assert_eq!(harmonic(10).unwrap(), rat(7381, 2520));
        assert!(matches!(harmonic(0), Err(Error::NMustBePositive)));
    }

    #[test]
    fn harmonic_real_agrees_with_exact() {
        let c = ctx();
        let exact = Real::from_rat(&harmonic(1000).unwrap(), &c);
        let fixed = harmonic_real(1000, &c).unwrap();
        assert!(close(&exact, &fixed, 55));
    }

    #[test]
    fn polygamma_rejects_nonpositive_arguments() {
        let c = ctx();
        assert!(matches!(
            polygamma(PolygammaOrder::Psi, &Real::zero(), &c),
            Err(Error::PoleBranch { .. })
        ));
        assert!(polygamma(PolygammaOrder::Psi2, &Real::from_i64(-3), &c).is_err());
    }

    #[test]
    fn trigamma_at_one_is_pi_squared_over_six() {
        let c = ctx();
        let v = polygamma(PolygammaOrder::Psi1, &Real::one(), &c).unwrap();
        let pi = Real::pi(&c);
        let reference = pi.mul(&pi, &c).div_u32(6, &c);
        assert!(close(&v, &reference, 52));
    }

    #[test]
    fn digamma_recurrence_step_is_exact() {
        let c = ctx();
        let a = polygamma(PolygammaOrder::Psi, &Real::from_i64(2), &c).unwrap();
        let b = polygamma(PolygammaOrder::Psi, &Real::one(), &c).unwrap();
        assert!(close(&a.sub(&b, &c), &Real::one(), 52));
    }

    #[test]
    fn tetragamma_at_one_is_minus_two_zeta3() {
        let c = ctx();
        let v = polygamma(PolygammaOrder::Psi2, &Real::one(), &c).unwrap();
        let z3 = real_from(
            "1.20205690315959428539973816151144999076498629234049888179227155534183821",
        );
        assert!(close(&v, &z3.mul2k(1).neg(), 52));
        // 8-digit display per the zeta3 accessor
        assert_eq!(zeta3(&c).unwrap().to_decimal(8), "1.2020569e0");
    }

    #[test]
    fn euler_gamma_matches_reference_digits() {
        let c = ctx();
        let g = euler_gamma(&c);
        assert!(close(&g, &real_from(GAMMA_72), 52));
        // digits = 9 display from the module contract
        assert_eq!(g.to_decimal(9), "5.77215665e-1");
        // psi(1) = -gamma
        let psi1 = polygamma(PolygammaOrder::Psi, &Real::one(), &c).unwrap();
        assert!(close(&psi1.neg(), &g, 52));
    }

    #[test]
    fn polygamma_spot_checks() {
        // Frozen from an independent multiprecision evaluation.
        let c = ctx();
        let cases = [
            (PolygammaOrder::Psi, "4.7", "1.4374238096317816561441342364153171514440190581472"),
            (PolygammaOrder::Psi1, "0.3", "12.245364546107730465473603533088736435717782766342"),
            (
                PolygammaOrder::Psi2,
                "7.25",
                "-0.021828952295197739222229687080749026633069199625673",
            ),
            (PolygammaOrder::Psi3, "2.6", "0.19521740529947910140213338162667499054616643540771"),
            (PolygammaOrder::Psi3, "1.5", "1.4090910340024372364403326887051112497275856726854"),
        ];
        for (order, x, expect) in cases {
            let v = polygamma(order, &real_from(x), &c).unwrap();
            assert!(
                close(&v, &real_from(expect), 48),
                "psi^{} ({x}) = {} vs {expect}",
                order.k(),
                v.to_decimal(30)
            );
        }
    }

    #[test]
    fn recurrence_property_on_random_grid() {
        let c = ctx();
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        let tol = Real::ten_pow(-(c.digits() as i64 - 2), &c);
        for _ in 0..25 {
            let xr = rat(rng.gen_range(1..5000), 100); // x in (0, 50)
            let x = Real::from_rat(&xr, &c);
            for k in 0..=3u8 {
                let order = PolygammaOrder::from_k(k).unwrap();
                let hi = polygamma(order, &x.add(&Real::one(), &c), &c).unwrap();
                let lo = polygamma(order, &x, &c).unwrap();
                let step = hi.sub(&lo, &c);
                let expect = {
                    let p = Real::from_u64(factorial(k)).div(&x.powi(k as i64 + 1, &c), &c);
                    if k % 2 == 1 {
                        p.neg()
                    } else {
                        p
                    }
                };
                let rel = step.sub(&expect, &c).abs();
                let scale = expect.abs().add(&Real::one(), &c);
                assert!(
                    rel < scale.mul(&tol, &c),
                    "recurrence off at k={k} x={xr}: {}",
                    rel.to_decimal(8)
                );
            }
        }
    }

    #[test]
    fn psi3_positive_on_grid() {
        let c = ctx();
        for i in 1..=40 {
            let x = Real::from_rat(&rat(5 * i, 2), &c); // 2.5 .. 100
            let v = polygamma(PolygammaOrder::Psi3, &x, &c).unwrap();
            assert!(v.is_positive(), "psi''' must be positive at {i}");
        }
    }

    #[test]
    fn harmonic_gamma_consistency() {
        // psi(n+1) = H_n - gamma for a sample of n
        let c = ctx();
        let g = euler_gamma(&c);
        for n in [1u64, 2, 7, 41, 100] {
            let lhs = polygamma(PolygammaOrder::Psi, &Real::from_u64(n + 1), &c).unwrap();
            let rhs = Real::from_rat(&harmonic(n).unwrap(), &c).sub(&g, &c);
            assert!(close(&lhs, &rhs, 50), "mismatch at n={n}");
        }
    }

    #[test]
    fn config_validation() {
        let c = ctx();
        let bad = OracleConfig { shift_threshold: 9, max_series_terms: 100 };
        assert!(bad.validate(&c).is_err());
        // threshold 12 cannot deliver 50 digits
        let low = OracleConfig { shift_threshold: 12, max_series_terms: 400 };
        assert!(matches!(low.validate(&c), Err(Error::InsufficientPrecision(_))));
        assert!(OracleConfig::for_context(&c).validate(&c).is_ok());
        // a deep context raises the default threshold
        let deep = PrecisionContext::new(120).unwrap();
        assert!(OracleConfig::for_context(&deep).shift_threshold > 30);
        assert!(OracleConfig::for_context(&deep).validate(&deep).is_ok());
    }
}
