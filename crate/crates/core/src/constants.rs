//! High-accuracy evaluation of the prime products and prime sums used by the
//! asymptotic main terms, with truncation-tail estimates.
//!
//! Products are computed as `exp` of compensated sums of `ln(factor)`, with
//! each log taken through `ln_1p` on the factor's deviation from 1 so the
//! 1/p^2-sized deviations are not rounded away. Tail estimates come from the
//! numerically observed decay of the log-factors; they are reported, not
//! certified.

use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Euler–Mascheroni constant, fixed 20-digit literal.
pub const EULER_GAMMA: f64 = 0.57721566490153286061;
/// ln(2π), fixed 20-digit literal.
pub const LN_TWO_PI: f64 = 1.8378770664093454836;

/// Default prime cutoff for [`ConstantsBundle::compute`]: 5+ stable decimals
/// for every constant at desk runtime.
pub const DEFAULT_PRIME_LIMIT: u64 = 10_000_000;

/// Cap on the prime cutoff (sieve memory).
pub const PRIME_LIMIT_CAP: u64 = 1_000_000_000;

/// Simple bit sieve of Eratosthenes; returns all primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit > PRIME_LIMIT_CAP {
        return Err(Error::Capacity { requested: limit, cap: PRIME_LIMIT_CAP });
    }
    let n = limit as usize;
    if n < 2 {
        return Ok(Vec::new());
    }
    let words = n / 64 + 1;
    // bit set = composite
    let mut composite = vec![0u64; words];
    let mut p = 2usize;
    while p * p <= n {
        if composite[p / 64] & (1 << (p % 64)) == 0 {
            let mut m = p * p;
            while m <= n {
                composite[m / 64] |= 1 << (m % 64);
                m += p;
            }
        }
        p += 1;
    }
    let mut primes = Vec::with_capacity((n as f64 / (n as f64).ln().max(2.0) * 1.2) as usize + 16);
    for q in 2..=n {
        if composite[q / 64] & (1 << (q % 64)) == 0 {
            primes.push(q as u64);
        }
    }
    Ok(primes)
}

/// Which Euler product to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EulerFactor {
    /// ∏_{p>2} (1 − 1/(p−1)²), the twin-prime constant.
    C2,
    /// ∏_p (1 + (2 − 1/p)/(p−1)²).
    BigA,
    /// ∏_p (1 + 1/(p−1)³).
    ProdCubed,
    /// ∏_{(p,2d)=1} (1 − 1/(p−1)²); `Cd(1)` has the same factor set as `C2`.
    Cd(u64),
    /// J(s) = ∏_{p>2} (1 + (2p−3)/((p−2)² pˢ)) (1 − p^{−(s+1)})².
    JAtS(f64),
    /// g(s;a,b) = ∏_p (1 − (1 − p^{s−a+b}(1 − (1−1/p)^b)) / ((p−1)^b p^{2(s−a)+b})).
    G { s: f64, a: f64, b: f64 },
}

impl EulerFactor {
    /// ln of the factor at prime `p`, or `None` when `p` is excluded by the
    /// factor's coprimality side condition.
    fn log_factor(&self, p: u64) -> Option<f64> {
        let pf = p as f64;
        match *self {
            EulerFactor::C2 => {
                if p <= 2 {
                    return None;
                }
                let pm1 = pf - 1.0;
                Some((-1.0 / (pm1 * pm1)).ln_1p())
            }
            EulerFactor::BigA => {
                let pm1 = pf - 1.0;
                Some(((2.0 - 1.0 / pf) / (pm1 * pm1)).ln_1p())
            }
            EulerFactor::ProdCubed => {
                let pm1 = pf - 1.0;
                Some((1.0 / (pm1 * pm1 * pm1)).ln_1p())
            }
            EulerFactor::Cd(d) => {
                if p <= 2 || d % p == 0 {
                    return None;
                }
                let pm1 = pf - 1.0;
                Some((-1.0 / (pm1 * pm1)).ln_1p())
            }
            EulerFactor::JAtS(s) => {
                if p <= 2 {
                    return None;
                }
                let pm2 = pf - 2.0;
                let u = (2.0 * pf - 3.0) / (pm2 * pm2 * pf.powf(s));
                let v = pf.powf(-(s + 1.0));
                Some(u.ln_1p() + 2.0 * (-v).ln_1p())
            }
            EulerFactor::G { s, a, b } => Some(g_deviation(pf, s, a, b).ln_1p()),
        }
    }

    /// The factor's deviation from 1 at prime `p` (used for the numeric
    /// convergence check of `G`).
    fn deviation(&self, p: u64) -> Option<f64> {
        match *self {
            EulerFactor::G { s, a, b } => Some(g_deviation(p as f64, s, a, b)),
            _ => self.log_factor(p).map(f64::exp_m1),
        }
    }
}

/// Deviation of the g(s;a,b) factor from 1, with `1 − (1−1/p)^b` computed
/// cancellation-free through `exp_m1`/`ln_1p`.
fn g_deviation(pf: f64, s: f64, a: f64, b: f64) -> f64 {
    let w = -(b * (-1.0 / pf).ln_1p()).exp_m1();
    let num = 1.0 - pf.powf(s - a + b) * w;
    let den = (pf - 1.0).powf(b) * pf.powf(2.0 * (s - a) + b);
    -num / den
}

/// Which prime sum to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeSumId {
    /// Σ_p log p / (p(p−1)).
    L1,
    /// Σ_{p>2} log p / (p−1)².
    L2,
    /// Σ_p log p / (p(p−1)²).
    L3,
    /// Σ_p (p−2) log p / (p(p−1)²); the p = 2 term vanishes.
    L4,
}

impl PrimeSumId {
    fn term(&self, p: u64) -> f64 {
        let pf = p as f64;
        let lp = pf.ln();
        let pm1 = pf - 1.0;
        match *self {
            PrimeSumId::L1 => lp / (pf * pm1),
            PrimeSumId::L2 => {
                if p <= 2 {
                    0.0
                } else {
                    lp / (pm1 * pm1)
                }
            }
            PrimeSumId::L3 => lp / (pf * pm1 * pm1),
            PrimeSumId::L4 => (pf - 2.0) * lp / (pf * pm1 * pm1),
        }
    }

    /// Truncation-tail estimate at cutoff `p_limit`, from integrating the
    /// summand's leading decay.
    fn tail_estimate(&self, p_limit: u64) -> f64 {
        let pl = p_limit as f64;
        match *self {
            // summand ~ log t / t^2
            PrimeSumId::L1 | PrimeSumId::L2 | PrimeSumId::L4 => (pl.ln() + 1.0) / pl,
            // summand ~ log t / t^3
            PrimeSumId::L3 => (2.0 * pl.ln() + 1.0) / (4.0 * pl * pl),
        }
    }
}

fn euler_product_over(primes: &[u64], id: EulerFactor) -> Result<(f64, f64)> {
    let mut log_sum = KahanSum::new();
    let half = primes.last().copied().unwrap_or(0) / 2;
    let mut at_half: Option<(u64, f64)> = None;
    let mut at_end: Option<(u64, f64)> = None;
    for &p in primes {
        let Some(lf) = id.log_factor(p) else { continue };
        if !lf.is_finite() {
            return Err(Error::domain(format!(
                "divergent parameter combination: euler factor {id:?} is nonpositive at p = {p}"
            )));
        }
        log_sum.add(lf);
        if p <= half {
            at_half = Some((p, lf.abs()));
        }
        at_end = Some((p, lf.abs()));
    }
    if let EulerFactor::G { s, a, b } = id {
        // convergence region not known in closed form; require the factor to
        // decay at least like p^{-3/2} at the cutoff
        if let Some((p, _)) = at_end {
            let dev = id.deviation(p).unwrap_or(0.0);
            if !dev.is_finite() || dev.abs() >= (p as f64).powf(-1.5) {
                return Err(Error::domain(format!(
                    "divergent parameter combination: |g({s};{a},{b}) factor - 1| = {:.3e} \
                     at p = {p} does not decay like p^-1.5",
                    dev.abs()
                )));
            }
        }
    }
    let value = log_sum.value().exp();
    let tail_log = tail_from_decay(at_half, at_end);
    Ok((value, value.abs() * tail_log))
}

/// Tail of Σ_{p > P} |log factor| estimated from the observed decay exponent
/// between the sampled primes: Σ ≈ δ(P) · P / ((α−1) ln P).
fn tail_from_decay(at_half: Option<(u64, f64)>, at_end: Option<(u64, f64)>) -> f64 {
    let Some((p2, d2)) = at_end else { return 0.0 };
    if d2 == 0.0 {
        return 0.0;
    }
    let alpha = match at_half {
        Some((p1, d1)) if p1 < p2 && d1 > 0.0 => {
            let a = (d1 / d2).ln() / (p2 as f64 / p1 as f64).ln();
            if a.is_finite() {
                a.max(1.5)
            } else {
                2.0
            }
        }
        _ => 2.0,
    };
    let pf = p2 as f64;
    d2 * pf / ((alpha - 1.0) * pf.ln())
}

fn prime_sum_over(primes: &[u64], id: PrimeSumId, p_limit: u64) -> (f64, f64) {
    let mut sum = KahanSum::new();
    for &p in primes {
        sum.add(id.term(p));
    }
    (sum.value(), id.tail_estimate(p_limit))
}

/// Evaluates one Euler product over primes `p <= p_limit`.
///
/// Returns `(value, tail_estimate)` where the estimate bounds (heuristically)
/// the distance to the untruncated product.
pub fn euler_product(id: EulerFactor, p_limit: u64) -> Result<(f64, f64)> {
    if p_limit < 3 {
        return Err(Error::domain("prime cutoff must satisfy P >= 3"));
    }
    let primes = primes_up_to(p_limit)?;
    euler_product_over(&primes, id)
}

/// Evaluates one prime sum over primes `p <= p_limit`.
pub fn prime_sum(id: PrimeSumId, p_limit: u64) -> Result<(f64, f64)> {
    if p_limit < 2 {
        return Err(Error::domain("prime cutoff must satisfy P >= 2"));
    }
    let primes = primes_up_to(p_limit)?;
    Ok(prime_sum_over(&primes, id, p_limit))
}

/// |J(0)·C₂² − 1| with both products truncated at the same cutoff. The
/// identity holds factorwise, so the residual is pure floating-point noise.
pub fn verify_j0_identity(p_limit: u64) -> Result<f64> {
    let primes = primes_up_to(p_limit)?;
    let (j0, _) = euler_product_over(&primes, EulerFactor::JAtS(0.0))?;
    let (c2, _) = euler_product_over(&primes, EulerFactor::C2)?;
    Ok((j0 * c2 * c2 - 1.0).abs())
}

/// |H(1)·2C₂² − ∏_p(1 + 1/(p−1)³)| with all products truncated at `p_limit`.
pub fn verify_h1_identity(p_limit: u64) -> Result<f64> {
    let primes = primes_up_to(p_limit)?;
    let mut log_sum = KahanSum::new();
    for &p in &primes {
        if p <= 2 {
            continue;
        }
        let pf = p as f64;
        let pm2 = pf - 2.0;
        log_sum.add(((2.0 * pf - 3.0) / (pm2 * pm2 * pf)).ln_1p());
    }
    let h1 = log_sum.value().exp();
    let (c2, _) = euler_product_over(&primes, EulerFactor::C2)?;
    let (prod_cubed, _) = euler_product_over(&primes, EulerFactor::ProdCubed)?;
    Ok((h1 * 2.0 * c2 * c2 - prod_cubed).abs())
}

/// Central finite difference of log J at 0 against Σ_{p>2} log p/(p−1)²,
/// both at cutoff `p_limit`. Returns the absolute difference, expected
/// O(h²) plus rounding.
pub fn verify_j_logderivative(h: f64, p_limit: u64) -> Result<f64> {
    if !(h > 0.0 && h <= 1e-4) {
        return Err(Error::domain("step size must satisfy 0 < h <= 1e-4"));
    }
    let primes = primes_up_to(p_limit)?;
    let log_j = |s: f64| -> f64 {
        let mut sum = KahanSum::new();
        for &p in &primes {
            if let Some(lf) = EulerFactor::JAtS(s).log_factor(p) {
                sum.add(lf);
            }
        }
        sum.value()
    };
    let fd = (log_j(h) - log_j(-h)) / (2.0 * h);
    let (l2, _) = prime_sum_over(&primes, PrimeSumId::L2, p_limit);
    Ok((fd - l2).abs())
}

/// Truncation-tail estimates for the bundle's constants.
#[derive(Debug, Clone, Copy)]
pub struct TailEstimates {
    pub c2: f64,
    pub big_a: f64,
    pub prod_cubed: f64,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

/// Every prime product and prime sum the asymptotic main terms need,
/// evaluated once at a common cutoff.
#[derive(Debug, Clone, Copy)]
pub struct ConstantsBundle {
    /// Prime cutoff used for every product and sum below.
    pub prime_limit: u64,
    /// Twin-prime constant ∏_{p>2}(1 − 1/(p−1)²) ≈ 0.66016.
    pub c2: f64,
    /// ∏_p (1 + (2 − 1/p)/(p−1)²).
    pub big_a: f64,
    /// ∏_p (1 + 1/(p−1)³).
    pub prod_cubed: f64,
    /// 3/4 − ½ log 2π + ½ Σ_p (p−2) log p/(p(p−1)²).
    pub c_thm2: f64,
    /// γ − 3/2 + log 2π.
    pub c1: f64,
    /// Σ_p log p/(p(p−1)).
    pub l1: f64,
    /// Σ_{p>2} log p/(p−1)².
    pub l2: f64,
    /// Σ_p log p/(p(p−1)²).
    pub l3: f64,
    /// Σ_p (p−2) log p/(p(p−1)²).
    pub l4: f64,
    /// Euler–Mascheroni constant (literal, not computed).
    pub gamma: f64,
    pub tails: TailEstimates,
}

impl ConstantsBundle {
    /// Computes the bundle at the default cutoff.
    pub fn default_bundle() -> Result<ConstantsBundle> {
        Self::compute(DEFAULT_PRIME_LIMIT)
    }

    /// Computes every constant with a single prime sieve at cutoff `p_limit`.
    pub fn compute(p_limit: u64) -> Result<ConstantsBundle> {
        if p_limit < 3 {
            return Err(Error::domain("prime cutoff must satisfy P >= 3"));
        }
        let primes = primes_up_to(p_limit)?;
        let (c2, c2_tail) = euler_product_over(&primes, EulerFactor::C2)?;
        let (big_a, big_a_tail) = euler_product_over(&primes, EulerFactor::BigA)?;
        let (prod_cubed, prod_cubed_tail) = euler_product_over(&primes, EulerFactor::ProdCubed)?;
        let (l1, l1_tail) = prime_sum_over(&primes, PrimeSumId::L1, p_limit);
        let (l2, l2_tail) = prime_sum_over(&primes, PrimeSumId::L2, p_limit);
        let (l3, l3_tail) = prime_sum_over(&primes, PrimeSumId::L3, p_limit);
        let (l4, l4_tail) = prime_sum_over(&primes, PrimeSumId::L4, p_limit);
        Ok(ConstantsBundle {
            prime_limit: p_limit,
            c2,
            big_a,
            prod_cubed,
            c_thm2: 0.75 - 0.5 * LN_TWO_PI + 0.5 * l4,
            c1: EULER_GAMMA - 1.5 + LN_TWO_PI,
            l1,
            l2,
            l3,
            l4,
            gamma: EULER_GAMMA,
            tails: TailEstimates {
                c2: c2_tail,
                big_a: big_a_tail,
                prod_cubed: prod_cubed_tail,
                l1: l1_tail,
                l2: l2_tail,
                l3: l3_tail,
                l4: l4_tail,
            },
        })
    }

    /// Σ_p log p/(p−1)² over all primes (the Theorem-4 coefficient uses the
    /// p = 2 term too): L2 plus log 2.
    pub fn l2_all_primes(&self) -> f64 {
        self.l2 + std::f64::consts::LN_2
    }

    /// C(d) = ∏_{(p,2d)=1}(1 − 1/(p−1)²) at this bundle's cutoff, obtained
    /// from C₂ by dividing out the factors at odd primes dividing `d`.
    /// Depends only on the odd primes of `d`, so C(d) = C(rad(d)), and
    /// C(1) = C₂ exactly.
    pub fn c_d(&self, d: u64) -> Result<f64> {
        if d == 0 {
            return Err(Error::domain("C(d) requires d >= 1"));
        }
        let mut value = self.c2;
        let mut m = d;
        // strip twos; p = 2 is never part of the product
        while m % 2 == 0 {
            m /= 2;
        }
        let mut p = 3u64;
        while p * p <= m {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                if p <= self.prime_limit {
                    let pm1 = (p - 1) as f64;
                    value /= 1.0 - 1.0 / (pm1 * pm1);
                }
            }
            p += 2;
        }
        if m > 1 && m <= self.prime_limit {
            let pm1 = (m - 1) as f64;
            value /= 1.0 - 1.0 / (pm1 * pm1);
        }
        Ok(value)
    }

    /// Serializes the bundle as a single-line JSON object with 17-significant-
    /// digit floats; byte-identical across runs.
    pub fn to_json(&self) -> String {
        format!(
            concat!(
                "{{\"P\":{},\"C2\":{:.16e},\"A\":{:.16e},\"prodCubed\":{:.16e},",
                "\"cThm2\":{:.16e},\"c1\":{:.16e},\"L1\":{:.16e},\"L2\":{:.16e},",
                "\"L3\":{:.16e},\"L4\":{:.16e},\"tails\":{{\"C2\":{:.16e},\"A\":{:.16e},",
                "\"prodCubed\":{:.16e},\"L1\":{:.16e},\"L2\":{:.16e},\"L3\":{:.16e},",
                "\"L4\":{:.16e}}}}}"
            ),
            self.prime_limit,
            self.c2,
            self.big_a,
            self.prod_cubed,
            self.c_thm2,
            self.c1,
            self.l1,
            self.l2,
            self.l3,
            self.l4,
            self.tails.c2,
            self.tails.big_a,
            self.tails.prod_cubed,
            self.tails.l1,
            self.tails.l2,
            self.tails.l3,
            self.tails.l4,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_reproduces_printed_decimals() {
        let (c2, _) = euler_product(EulerFactor::C2, 1_000_000).unwrap();
        assert_eq!(format!("{c2:.5}"), "0.66016");
    }

    #[test]
    fn l1_and_l2_exact_at_tiny_cutoffs() {
        let (l1, _) = prime_sum(PrimeSumId::L1, 3).unwrap();
        let expected = 2f64.ln() / 2.0 + 3f64.ln() / 6.0;
        assert!((l1 - expected).abs() < 1e-16);

        let (l2, _) = prime_sum(PrimeSumId::L2, 3).unwrap();
        assert!((l2 - 3f64.ln() / 4.0).abs() < 1e-16);

        let (l4, _) = prime_sum(PrimeSumId::L4, 2).unwrap();
        assert_eq!(l4, 0.0);
    }

    #[test]
    fn cd_one_is_c2_bit_for_bit() {
        let (c2, _) = euler_product(EulerFactor::C2, 100_000).unwrap();
        let (cd1, _) = euler_product(EulerFactor::Cd(1), 100_000).unwrap();
        assert_eq!(c2.to_bits(), cd1.to_bits());
    }

    #[test]
    fn cd_depends_only_on_odd_radical() {
        let bundle = ConstantsBundle::compute(100_000).unwrap();
        let c3 = bundle.c_d(3).unwrap();
        assert_eq!(c3.to_bits(), bundle.c_d(9).unwrap().to_bits());
        assert_eq!(c3.to_bits(), bundle.c_d(6).unwrap().to_bits());
        assert_eq!(c3.to_bits(), bundle.c_d(24).unwrap().to_bits());
        assert_eq!(bundle.c_d(1).unwrap().to_bits(), bundle.c2.to_bits());
        // C(d) >= C2: fewer factors below 1
        for d in 1..=50u64 {
            assert!(bundle.c_d(d).unwrap() >= bundle.c2);
        }
        // direct product route agrees with the division route
        let (c15, _) = euler_product(EulerFactor::Cd(15), 100_000).unwrap();
        assert!((c15 - bundle.c_d(15).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn g_at_1_0_0_is_basel_inverse() {
        let (g, _) = euler_product(EulerFactor::G { s: 1.0, a: 0.0, b: 0.0 }, 1_000_000).unwrap();
        let expected = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!((g - expected).abs() < 1e-6, "g = {g}, expected {expected}");
    }

    #[test]
    fn g_divergent_parameters_rejected() {
        // g(0;0,0) has factor 0 at every prime
        assert!(euler_product(EulerFactor::G { s: 0.0, a: 0.0, b: 0.0 }, 1000).is_err());
        // slowly growing factor caught by the decay check
        assert!(euler_product(EulerFactor::G { s: -3.0, a: 0.0, b: 3.0 }, 1000).is_err());
    }

    #[test]
    fn j0_identity_tiny_cutoff_exact() {
        // P = 3: J(0) = 4·(2/3)² = 16/9, C2 = 3/4; product is exactly 1
        let residual = verify_j0_identity(3).unwrap();
        assert!(residual < 1e-15, "residual = {residual}");
    }

    #[test]
    fn j0_identity_at_1e5() {
        let residual = verify_j0_identity(100_000).unwrap();
        assert!(residual < 1e-8, "residual = {residual}");
    }

    #[test]
    fn j0_identity_holds_factorwise() {
        for p in [3u64, 5, 7, 11, 101] {
            let pf = p as f64;
            let j_factor = (1.0 + (2.0 * pf - 3.0) / ((pf - 2.0) * (pf - 2.0)))
                * (1.0 - 1.0 / pf)
                * (1.0 - 1.0 / pf);
            let c2_factor = 1.0 - 1.0 / ((pf - 1.0) * (pf - 1.0));
            assert!((j_factor * c2_factor * c2_factor - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn h1_identity_tiny_and_1e5() {
        // P = 3: H(1) factor at 3 is 1 + 3/3 = 2; 2·2·(3/4)² = 9/4 = prodCubed(3)
        assert!(verify_h1_identity(3).unwrap() < 1e-15);
        let residual = verify_h1_identity(100_000).unwrap();
        assert!(residual < 1e-8, "residual = {residual}");
    }

    #[test]
    fn j_logderivative_small_residual() {
        let residual = verify_j_logderivative(1e-5, 100_000).unwrap();
        assert!(residual < 1e-6, "residual = {residual}");
    }

    #[test]
    fn j_logderivative_second_order_in_h() {
        // halving h from 1e-4 shrinks the h-induced part by ~4x
        let r1 = verify_j_logderivative(1e-4, 10_000).unwrap();
        let r2 = verify_j_logderivative(5e-5, 10_000).unwrap();
        let ratio = r1 / r2;
        assert!(ratio > 2.5 && ratio < 6.0, "ratio = {ratio}");
    }

    #[test]
    fn j_logderivative_exact_at_p3() {
        // single p = 3 factor: d/ds log J at 0 is log 3/4 = L2(3)
        let residual = verify_j_logderivative(1e-5, 3).unwrap();
        assert!(residual < 1e-9, "residual = {residual}");
    }

    #[test]
    fn j_logderivative_rejects_bad_step() {
        assert!(verify_j_logderivative(0.0, 100).is_err());
        assert!(verify_j_logderivative(1e-3, 100).is_err());
    }

    #[test]
    fn monotone_stabilization_under_tail_estimates() {
        for p in [1_000u64, 10_000, 100_000] {
            let b1 = ConstantsBundle::compute(p).unwrap();
            let b2 = ConstantsBundle::compute(2 * p).unwrap();
            assert!((b2.c2 - b1.c2).abs() <= b1.tails.c2, "C2 at P={p}");
            assert!((b2.big_a - b1.big_a).abs() <= b1.tails.big_a, "A at P={p}");
            assert!(
                (b2.prod_cubed - b1.prod_cubed).abs() <= b1.tails.prod_cubed,
                "prodCubed at P={p}"
            );
            assert!((b2.l1 - b1.l1).abs() <= b1.tails.l1, "L1 at P={p}");
            assert!((b2.l2 - b1.l2).abs() <= b1.tails.l2, "L2 at P={p}");
            assert!((b2.l3 - b1.l3).abs() <= b1.tails.l3, "L3 at P={p}");
            assert!((b2.l4 - b1.l4).abs() <= b1.tails.l4, "L4 at P={p}");
            // tail estimates shrink as the cutoff grows
            assert!(b2.tails.c2 < b1.tails.c2);
            assert!(b2.tails.l1 < b1.tails.l1);
            assert!(b2.tails.l3 < b1.tails.l3);
        }
    }

    #[test]
    fn c_thm2_recomposition_is_bit_exact() {
        let b = ConstantsBundle::compute(10_000).unwrap();
        let recomposed = 0.75 - 0.5 * LN_TWO_PI + 0.5 * b.l4;
        assert_eq!(b.c_thm2.to_bits(), recomposed.to_bits());
    }

    #[test]
    fn bundle_json_shape_and_determinism() {
        let b = ConstantsBundle::compute(1_000).unwrap();
        let j = b.to_json();
        assert!(j.starts_with("{\"P\":1000,\"C2\":"));
        assert!(j.contains("\"tails\":{\"C2\":"));
        let again = ConstantsBundle::compute(1_000).unwrap().to_json();
        assert_eq!(j, again);
    }

    #[test]
    fn rejects_tiny_cutoff() {
        assert!(ConstantsBundle::compute(2).is_err());
        assert!(euler_product(EulerFactor::C2, 2).is_err());
    }
}
