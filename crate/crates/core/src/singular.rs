//! Ramanujan sums, the singular series of the prime-pair problem in product
//! and series form, Vaughan's coprime-restricted variant, truncations, tails,
//! and batched tables of all three over a range of offsets.
//!
//! The series form is Σ_q μ(q)²/φ(q)² c_q(−k); truncating at q ≤ y gives the
//! partial series, and the tail is stored as the exact difference between the
//! product-form value and the truncation.

use crate::arith::{gcd, ArithTables};
use crate::constants::ConstantsBundle;
use crate::error::{Error, Result};
use crate::sum::KahanSum;
use std::io::Write;

/// Cap on the truncation level for squarefree-q enumeration.
pub const DEFAULT_Y_CAP: f64 = 1_000_000.0;

/// Ramanujan sum c_q(n) by the closed form μ(q/g)·φ(q)/φ(q/g) with
/// g = gcd(|n|, q); integer-exact. c_q(0) = φ(q), and c_q(−n) = c_q(n).
pub fn ramanujan_sum(q: u64, n: i64, t: &ArithTables) -> Result<i64> {
    if q < 1 || q > t.limit() {
        return Err(Error::OutOfRange { value: q, limit: t.limit() });
    }
    // gcd(0, q) = q covers both n = 0 and q | n
    let g = gcd(n.unsigned_abs() % q, q);
    let m = q / g;
    let quotient = (t.phi(q) / t.phi(m)) as i64;
    Ok(t.mu(m) * quotient)
}

/// Product of (p−1)/(p−2) over odd primes dividing `k`, by repeated division
/// through the spf table. Factors are visited in ascending-prime order.
#[inline]
fn odd_prime_product(k: u64, t: &ArithTables) -> f64 {
    let mut m = k;
    let mut prod = 1.0;
    while m > 1 {
        let p = t.spf(m);
        while m % p == 0 {
            m /= p;
        }
        if p > 2 {
            prod *= (p - 1) as f64 / (p - 2) as f64;
        }
    }
    prod
}

/// Singular series 𝔖(k): 0 for odd k, 2·C₂·∏_{p|k, p>2}(p−1)/(p−2) for even
/// k ≠ 0. Depends on k only through its odd prime divisors.
pub fn singular_series(k: i64, c2: f64, t: &ArithTables) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("singular series is undefined at k = 0"));
    }
    let ka = k.unsigned_abs();
    if ka > t.limit() {
        return Err(Error::OutOfRange { value: ka, limit: t.limit() });
    }
    if ka % 2 == 1 {
        return Ok(0.0);
    }
    Ok(2.0 * c2 * odd_prime_product(ka, t))
}

/// Vaughan's variant 𝔊_d(k) = 2·C(d)·∏_{p|k, (p,2d)=1}(p−1)/(p−2).
///
/// `c_d` is C(d) at the caller's prime cutoff (see
/// [`ConstantsBundle::c_d`] or [`crate::constants::EulerFactor::Cd`]).
/// Unlike 𝔖, this does not vanish at odd k; instead 𝔊_d(k) = 𝔊_d(2k).
pub fn gd_series(d: u64, k: u64, t: &ArithTables, c_d: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::domain("gd_series requires d >= 1"));
    }
    if k < 1 || k > t.limit() {
        return Err(Error::OutOfRange { value: k, limit: t.limit() });
    }
    let mut m = k;
    let mut prod = 1.0;
    while m > 1 {
        let p = t.spf(m);
        while m % p == 0 {
            m /= p;
        }
        if p > 2 && d % p != 0 {
            prod *= (p - 1) as f64 / (p - 2) as f64;
        }
    }
    Ok(2.0 * c_d * prod)
}

fn floor_trunc_level(y: f64, t: &ArithTables) -> Result<u64> {
    if y > DEFAULT_Y_CAP {
        return Err(Error::Capacity { requested: y as u64, cap: DEFAULT_Y_CAP as u64 });
    }
    let q_max = y.floor() as u64;
    if q_max > t.limit() {
        return Err(Error::OutOfRange { value: q_max, limit: t.limit() });
    }
    Ok(q_max)
}

/// Truncated series 𝔖_y(k) = Σ_{q≤y} μ(q)²/φ(q)² c_q(−k), each term through
/// the closed-form Ramanujan sum, accumulated in ascending q. Empty sum
/// (y < 1) is 0. The truncation condition is exact: q ≤ ⌊y⌋.
pub fn truncated_series_direct(k: u64, y: f64, t: &ArithTables) -> Result<f64> {
    let q_max = floor_trunc_level(y, t)?;
    let mut sum = KahanSum::new();
    for q in 1..=q_max {
        if !t.is_squarefree(q) {
            continue;
        }
        let c = ramanujan_sum(q, k as i64, t)? as f64;
        let ph = t.phi(q) as f64;
        sum.add(c / (ph * ph));
    }
    Ok(sum.value())
}

/// Montgomery–Vaughan tail envelope d(k)·(log log 3y)²/y with implied
/// constant 1. Monitoring shape only; never asserted as a strict bound.
pub fn mv_tail_envelope(k: u64, y: f64, t: &ArithTables) -> Result<f64> {
    if y < 1.0 {
        return Err(Error::domain("mv_tail_envelope requires y >= 1"));
    }
    let dk = t.divisor_count(k)? as f64;
    let ll = (3.0 * y).ln().ln();
    Ok(dk * ll * ll / y)
}

/// Per-offset table of the singular series 𝔖(k), its truncation 𝔖_y(k) and
/// the tail 𝔖(k) − 𝔖_y(k) for k = 1..=N, at one truncation level y.
///
/// 𝔖 comes from the product form via spf factorization; 𝔖_y from a batched
/// divisor sieve realizing c_q(−k) = Σ_{d|(k,q)} d·μ(q/d): for each
/// squarefree q ≤ y and each d | q, the weight d·μ(q/d)·μ(q)²/φ(q)² is added
/// to every multiple of d. Accumulation order is fixed (q-major, then d,
/// then multiples) with per-element compensation, so identical builds give
/// bit-identical tables.
pub struct SeriesTable {
    n: u64,
    y: f64,
    c2: f64,
    s: Vec<f64>,
    sy: Vec<f64>,
    tail: Vec<f64>,
}

impl SeriesTable {
    /// Single-threaded canonical build.
    pub fn build(n: u64, y: f64, t: &ArithTables, c: &ConstantsBundle) -> Result<SeriesTable> {
        Self::build_with_threads(n, y, t, c, 1)
    }

    /// Build with the squarefree-q range split across `threads` workers, each
    /// accumulating into a private array; partial arrays are merged
    /// elementwise in a fixed chunk order.
    pub fn build_with_threads(
        n: u64,
        y: f64,
        t: &ArithTables,
        c: &ConstantsBundle,
        threads: usize,
    ) -> Result<SeriesTable> {
        if n < 1 {
            return Err(Error::domain("series table requires N >= 1"));
        }
        if n > t.limit() {
            return Err(Error::OutOfRange { value: n, limit: t.limit() });
        }
        let q_max = floor_trunc_level(y, t)?;
        let len = n as usize + 1;

        let mut s = vec![0.0f64; len];
        for k in (2..=n as usize).step_by(2) {
            s[k] = 2.0 * c.c2 * odd_prime_product(k as u64, t);
        }

        let (sum, comp) = if threads <= 1 {
            let mut sum = vec![0.0f64; len];
            let mut comp = vec![0.0f64; len];
            accumulate_q_range(1, q_max, n, t, &mut sum, &mut comp);
            (sum, comp)
        } else {
            accumulate_parallel(q_max, n, t, threads)
        };

        let mut sy = sum;
        for (v, e) in sy.iter_mut().zip(comp.iter()) {
            *v += *e;
        }
        let tail: Vec<f64> = s.iter().zip(sy.iter()).map(|(a, b)| a - b).collect();

        let table = SeriesTable { n, y, c2: c.c2, s, sy, tail };
        #[cfg(debug_assertions)]
        for k in [1, n / 2 + 1, n] {
            let direct = truncated_series_direct(k, y, t)?;
            let batch = table.sy(k);
            debug_assert!(
                (batch - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                "batch/direct mismatch at k = {k}: {batch} vs {direct}"
            );
        }
        Ok(table)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// The twin-prime constant the 𝔖 column was built with.
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// 𝔖(k); k must lie in 1..=N.
    #[inline]
    pub fn s(&self, k: u64) -> f64 {
        self.s[k as usize]
    }

    /// 𝔖_y(k).
    #[inline]
    pub fn sy(&self, k: u64) -> f64 {
        self.sy[k as usize]
    }

    /// Tail 𝔖(k) − 𝔖_y(k), exactly as stored (defined by subtraction).
    #[inline]
    pub fn tail(&self, k: u64) -> f64 {
        self.tail[k as usize]
    }

    /// 𝔖 values indexed by k (entry 0 is padding).
    pub fn s_slice(&self) -> &[f64] {
        &self.s
    }

    pub fn sy_slice(&self) -> &[f64] {
        &self.sy
    }

    pub fn tail_slice(&self) -> &[f64] {
        &self.tail
    }

    /// CSV export: header `k,S,Sy,tail`, one row per k, 17 significant
    /// digits, LF line endings. Byte-identical for identical tables.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "k,S,Sy,tail")?;
        for k in 1..=self.n as usize {
            writeln!(w, "{},{:.16e},{:.16e},{:.16e}", k, self.s[k], self.sy[k], self.tail[k])?;
        }
        Ok(())
    }
}

/// Adds the batched-sieve contribution of squarefree q in `[q_lo, q_hi]` to
/// `sum`/`comp` (per-element Neumaier compensation).
fn accumulate_q_range(
    q_lo: u64,
    q_hi: u64,
    n: u64,
    t: &ArithTables,
    sum: &mut [f64],
    comp: &mut [f64],
) {
    let n = n as usize;
    for q in q_lo..=q_hi {
        if !t.is_squarefree(q) {
            continue;
        }
        let ph = t.phi(q) as f64;
        let w = 1.0 / (ph * ph);
        for d in t.divisors(q).expect("q <= table limit") {
            let coeff = (d as i64 * t.mu(q / d)) as f64 * w;
            let step = d as usize;
            let mut j = step;
            while j <= n {
                let v = coeff;
                let s = sum[j];
                let t_new = s + v;
                if s.abs() >= v.abs() {
                    comp[j] += (s - t_new) + v;
                } else {
                    comp[j] += (v - t_new) + s;
                }
                sum[j] = t_new;
                j += step;
            }
        }
    }
}

/// Splits the squarefree q's into `threads` contiguous chunks, accumulates
/// each into a private array pair, and merges in ascending chunk order.
fn accumulate_parallel(
    q_max: u64,
    n: u64,
    t: &ArithTables,
    threads: usize,
) -> (Vec<f64>, Vec<f64>) {
    let len = n as usize + 1;
    let qs: Vec<u64> = (1..=q_max).filter(|&q| t.is_squarefree(q)).collect();
    let chunk_size = qs.len().div_ceil(threads.max(1)).max(1);
    let chunks: Vec<&[u64]> = qs.chunks(chunk_size).collect();

    let partials: Vec<(Vec<f64>, Vec<f64>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut sum = vec![0.0f64; len];
                    let mut comp = vec![0.0f64; len];
                    if let (Some(&lo), Some(&hi)) = (chunk.first(), chunk.last()) {
                        accumulate_q_range(lo, hi, n, t, &mut sum, &mut comp);
                    }
                    (sum, comp)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut sum = vec![0.0f64; len];
    let mut comp = vec![0.0f64; len];
    for (part_sum, part_comp) in partials {
        for j in 0..len {
            for v in [part_sum[j], part_comp[j]] {
                let s = sum[j];
                let t_new = s + v;
                if s.abs() >= v.abs() {
                    comp[j] += (s - t_new) + v;
                } else {
                    comp[j] += (v - t_new) + s;
                }
                sum[j] = t_new;
            }
        }
    }
    (sum, comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ArithTables;
    use crate::constants::ConstantsBundle;

    fn setup(limit: u64) -> (ArithTables, ConstantsBundle) {
        (ArithTables::build(limit).unwrap(), ConstantsBundle::compute(1_000_000).unwrap())
    }

    /// Direct complex exponential sum over residues coprime to q.
    fn ramanujan_brute(q: u64, n: i64) -> f64 {
        let mut re = 0.0;
        for a in 1..=q {
            if gcd(a, q) == 1 {
                let angle = 2.0 * std::f64::consts::PI * (a as f64) * (n as f64) / (q as f64);
                re += angle.cos();
            }
        }
        re
    }

    #[test]
    fn ramanujan_examples() {
        let t = ArithTables::build(100).unwrap();
        for n in [-7i64, 0, 1, 3, 12] {
            assert_eq!(ramanujan_sum(1, n, &t).unwrap(), 1);
        }
        assert_eq!(ramanujan_sum(6, 3, &t).unwrap(), -2);
        assert_eq!(ramanujan_sum(4, 2, &t).unwrap(), -2);
        assert_eq!(ramanujan_sum(5, 0, &t).unwrap(), 4); // c_q(0) = phi(q)
        assert!(ramanujan_sum(101, 1, &t).is_err());
        assert!(ramanujan_sum(0, 1, &t).is_err());
    }

    #[test]
    fn ramanujan_matches_exponential_sum() {
        let t = ArithTables::build(60).unwrap();
        for q in 1..=60u64 {
            for n in -60i64..=60 {
                let closed = ramanujan_sum(q, n, &t).unwrap() as f64;
                let brute = ramanujan_brute(q, n);
                assert!(
                    (closed - brute).abs() < 1e-8,
                    "c_{q}({n}): closed {closed}, brute {brute}"
                );
            }
        }
    }

    #[test]
    fn ramanujan_multiplicative_and_symmetric() {
        let t = ArithTables::build(90_000).unwrap();
        for q in 1..=300u64 {
            for qp in (q + 1)..=300u64 {
                if gcd(q, qp) != 1 {
                    continue;
                }
                for n in -300i64..=300 {
                    let lhs = ramanujan_sum(q * qp, n, &t).unwrap();
                    let rhs = ramanujan_sum(q, n, &t).unwrap() * ramanujan_sum(qp, n, &t).unwrap();
                    assert_eq!(lhs, rhs, "c_{{{q}*{qp}}}({n})");
                }
            }
        }
        for q in 1..=300u64 {
            for n in 0..=300i64 {
                assert_eq!(
                    ramanujan_sum(q, n, &t).unwrap(),
                    ramanujan_sum(q, -n, &t).unwrap()
                );
            }
        }
    }

    #[test]
    fn singular_series_examples() {
        let (t, c) = setup(100);
        assert_eq!(singular_series(3, c.c2, &t).unwrap(), 0.0);
        let s2 = singular_series(2, c.c2, &t).unwrap();
        assert!((s2 - 1.32032).abs() < 1e-5, "2C2 = {s2}");
        let s30 = singular_series(30, c.c2, &t).unwrap();
        let expected = 16.0 / 3.0 * c.c2;
        assert!((s30 - expected).abs() < 1e-15 * expected);
        // symmetric in sign, undefined at 0
        assert_eq!(
            singular_series(-30, c.c2, &t).unwrap().to_bits(),
            s30.to_bits()
        );
        assert!(matches!(singular_series(0, c.c2, &t), Err(Error::Domain(_))));
    }

    #[test]
    fn gd_series_reduces_to_singular_series_at_d1() {
        let (t, c) = setup(1000);
        let cd1 = c.c_d(1).unwrap();
        assert_eq!(cd1.to_bits(), c.c2.to_bits());
        assert_eq!(
            gd_series(1, 1, &t, cd1).unwrap().to_bits(),
            (2.0 * c.c2).to_bits()
        );
        // G_1(k) = S(2k) for every k
        for k in 1..=500u64 {
            let g = gd_series(1, k, &t, cd1).unwrap();
            let s = singular_series(2 * k as i64, c.c2, &t).unwrap();
            assert_eq!(g.to_bits(), s.to_bits(), "k = {k}");
        }
    }

    #[test]
    fn gd_series_invariant_under_doubling() {
        let (t, c) = setup(1000);
        for d in [1u64, 3, 5, 6, 15] {
            let cd = c.c_d(d).unwrap();
            for k in 1..=400u64 {
                let a = gd_series(d, k, &t, cd).unwrap();
                let b = gd_series(d, 2 * k, &t, cd).unwrap();
                assert_eq!(a.to_bits(), b.to_bits(), "d = {d}, k = {k}");
            }
        }
        // d = 3, k = 3: no prime of k is coprime to 2d, so plain 2C(3)
        let c3 = c.c_d(3).unwrap();
        assert_eq!(gd_series(3, 3, &t, c3).unwrap().to_bits(), (2.0 * c3).to_bits());
    }

    #[test]
    fn truncated_series_small_levels() {
        let (t, _) = setup(1000);
        for k in 1..=20u64 {
            assert_eq!(truncated_series_direct(k, 1.0, &t).unwrap(), 1.0);
        }
        // y = 2: c_2(-k) = (-1)^k
        assert_eq!(truncated_series_direct(4, 2.0, &t).unwrap(), 2.0);
        assert_eq!(truncated_series_direct(3, 2.0, &t).unwrap(), 0.0);
        // empty sum below q = 1
        assert_eq!(truncated_series_direct(5, 0.5, &t).unwrap(), 0.0);
    }

    #[test]
    fn truncated_series_approaches_product_form() {
        let (t, c) = setup(1000);
        let s6 = singular_series(6, c.c2, &t).unwrap();
        let sy6 = truncated_series_direct(6, 50.0, &t).unwrap();
        let envelope = mv_tail_envelope(6, 50.0, &t).unwrap();
        assert!((s6 - sy6).abs() <= 10.0 * envelope);
    }

    #[test]
    fn table_trivial_truncation() {
        let (t, c) = setup(100);
        let table = SeriesTable::build(100, 1.0, &t, &c).unwrap();
        for k in 1..=100u64 {
            assert_eq!(table.sy(k), 1.0);
            assert_eq!(table.tail(k), table.s(k) - 1.0);
        }
    }

    #[test]
    fn table_batch_matches_direct_pointwise() {
        let (t, c) = setup(2000);
        let table = SeriesTable::build(1000, 30.0, &t, &c).unwrap();
        for k in 1..=1000u64 {
            let direct = truncated_series_direct(k, 30.0, &t).unwrap();
            let batch = table.sy(k);
            let tol = 1e-12 * direct.abs().max(1.0);
            assert!((batch - direct).abs() <= tol, "k = {k}: {batch} vs {direct}");
        }
    }

    #[test]
    fn table_parallel_matches_serial() {
        let (t, c) = setup(2000);
        let serial = SeriesTable::build(1500, 40.0, &t, &c).unwrap();
        let par = SeriesTable::build_with_threads(1500, 40.0, &t, &c, 4).unwrap();
        let par_again = SeriesTable::build_with_threads(1500, 40.0, &t, &c, 4).unwrap();
        for k in 1..=1500u64 {
            assert!((serial.sy(k) - par.sy(k)).abs() <= 1e-12 * serial.sy(k).abs().max(1.0));
            // same thread count: bit-identical
            assert_eq!(par.sy(k).to_bits(), par_again.sy(k).to_bits());
        }
    }

    #[test]
    fn table_parity_and_lower_bound() {
        let (t, c) = setup(2000);
        let table = SeriesTable::build(2000, 25.0, &t, &c).unwrap();
        for k in 1..=2000u64 {
            if k % 2 == 1 {
                assert_eq!(table.s(k), 0.0);
            } else {
                assert!(table.s(k) >= 2.0 * c.c2);
                assert!(table.s(k) > 1.32);
            }
        }
    }

    #[test]
    fn table_truncation_periodic_for_tiny_y() {
        // q <= 3: every c_q(-k) has period dividing lcm(1,2,3) = 6
        let (t, c) = setup(100);
        let table = SeriesTable::build(100, 3.0, &t, &c).unwrap();
        for k in 1..=94u64 {
            assert_eq!(table.sy(k).to_bits(), table.sy(k + 6).to_bits(), "k = {k}");
        }
    }

    #[test]
    fn table_tail_is_difference_of_routes() {
        let (t, c) = setup(200);
        let table = SeriesTable::build(100, 10.0, &t, &c).unwrap();
        let s2 = singular_series(2, c.c2, &t).unwrap();
        let sy2 = truncated_series_direct(2, 10.0, &t).unwrap();
        assert!((table.tail(2) - (s2 - sy2)).abs() < 1e-13);
        // stored identity is exact by construction
        for k in 1..=100u64 {
            assert_eq!(table.tail(k).to_bits(), (table.s(k) - table.sy(k)).to_bits());
        }
    }

    #[test]
    fn squared_series_matches_product_relation() {
        // S(k)^2 = 4 C2^2 prod_{p|k, p>2} ((p-1)/(p-2))^2 for even k
        let (t, c) = setup(400);
        let table = SeriesTable::build(400, 1.0, &t, &c).unwrap();
        for k in (2..=400u64).step_by(2) {
            let mut g = 1.0;
            for (p, _) in t.factorize(k).unwrap() {
                if p > 2 {
                    let r = (p - 1) as f64 / (p - 2) as f64;
                    g *= r * r;
                }
            }
            let lhs = table.s(k) * table.s(k);
            let rhs = 4.0 * c.c2 * c.c2 * g;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
    }

    #[test]
    fn envelope_examples() {
        let t = ArithTables::build(100).unwrap();
        let ll = |y: f64| (3.0f64 * y).ln().ln();
        let e1 = mv_tail_envelope(1, 10.0, &t).unwrap();
        assert!((e1 - ll(10.0).powi(2) / 10.0).abs() < 1e-15);
        let e12 = mv_tail_envelope(12, 100.0, &t).unwrap();
        assert!((e12 - 6.0 * ll(100.0).powi(2) / 100.0).abs() < 1e-15);
        let e13 = mv_tail_envelope(13, 100.0, &t).unwrap();
        assert!((e13 - 2.0 * ll(100.0).powi(2) / 100.0).abs() < 1e-15);
        assert!(mv_tail_envelope(1, 0.5, &t).is_err());
    }

    #[test]
    fn tail_envelope_ratio_bounded_as_y_doubles() {
        let (t, c) = setup(20_000);
        let mut y = 16.0;
        let mut prev_envelope = f64::INFINITY;
        while y <= 16_384.0 {
            let table = SeriesTable::build(1000, y, &t, &c).unwrap();
            for k in 1..=1000u64 {
                let envelope = mv_tail_envelope(k, y, &t).unwrap();
                assert!(
                    table.tail(k).abs() <= 10.0 * envelope,
                    "k = {k}, y = {y}: tail {} vs envelope {envelope}",
                    table.tail(k)
                );
            }
            // the envelope itself decays monotonically in this range
            let e2 = mv_tail_envelope(2, y, &t).unwrap();
            assert!(e2 < prev_envelope);
            prev_envelope = e2;
            y *= 2.0;
        }
    }

    #[test]
    fn csv_export_golden_and_deterministic() {
        let (t, c) = setup(100);
        let table = SeriesTable::build(3, 2.0, &t, &c).unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "k,S,Sy,tail");
        assert_eq!(lines[1], "1,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0");
        // 2*C2 at the P = 1e6 cutoff (truncated product sits ~7e-8 above the limit)
        assert!(lines[2].starts_with("2,1.3203237"), "{}", lines[2]);
        assert!(!text.contains('\r'));
        let mut buf2 = Vec::new();
        SeriesTable::build(3, 2.0, &t, &c).unwrap().write_csv(&mut buf2).unwrap();
        assert_eq!(text.as_bytes(), buf2.as_slice());
    }

    #[test]
    fn table_range_errors() {
        let (t, c) = setup(100);
        assert!(matches!(
            SeriesTable::build(200, 1.0, &t, &c),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            SeriesTable::build(50, 2e6, &t, &c),
            Err(Error::Capacity { .. })
        ));
        assert!(SeriesTable::build(0, 1.0, &t, &c).is_err());
    }
}
