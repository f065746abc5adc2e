//! Compensated accumulation and double-double arithmetic.
//!
//! The weighted sums in this crate reach magnitude `N^3` while the quantities
//! read off them live at `N^2` and below, so plain `f64` accumulation would
//! burn the digits the residual analysis needs. Every large scan goes through
//! [`KahanSum`]; the sawtooth identities that must hold to ~1e-12 *absolute*
//! at magnitude ~1e8 go through the double-double type [`Dd`].

/// Kahan–Babuška–Neumaier compensated summation.
///
/// Tracks the running compensation plus the sum of absolute values, from
/// which an a-posteriori error bound is reported.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    count: u64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += v.abs();
        self.count += 1;
    }

    /// Current compensated value.
    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Number of terms accumulated.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Bound on the accumulated rounding error: ~2u · Σ|terms|.
    pub fn error_bound(&self) -> f64 {
        let n = self.count as f64;
        f64::EPSILON * self.abs_sum * (1.0 + n * f64::EPSILON)
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut k = Self::new();
        for v in iter {
            k.add(v);
        }
        k.value()
    }
}

/// Error-free transform: `a + b = s + e` exactly (Knuth).
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `two_sum` specialization valid when `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free transform: `a * b = p + e` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Unevaluated double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
///
/// Roughly 106 bits of precision; enough to check identities to 1e-12
/// absolute on quantities of magnitude 1e9.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, x);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * x);
        Dd { hi, lo }
    }

    /// Long division with two Newton correction steps.
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    /// Exact square of an `f64` as a double-double.
    #[inline]
    pub fn sqr_f64(x: f64) -> Dd {
        let (hi, lo) = two_prod(x, x);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_is_exact() {
        let (s, e) = two_sum(1e16, 1.0);
        assert_eq!(s, 1e16);
        assert_eq!(e, 1.0);
        let (s, e) = two_sum(0.1, 0.2);
        // s + e reproduces the exact sum of the two representable values
        assert_eq!(s, 0.1 + 0.2);
        assert!(e.abs() < f64::EPSILON);
    }

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + f64::EPSILON;
        let (p, e) = two_prod(a, a);
        // a^2 = 1 + 2eps + eps^2; the eps^2 lands in the error term
        assert_eq!(p, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(e, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn kahan_recovers_cancellation() {
        // 1 + 1e-16 repeated: naive summation flushes every tiny term
        let mut k = KahanSum::new();
        k.add(1.0);
        for _ in 0..1_000_000 {
            k.add(1e-16);
        }
        let exact = 1.0 + 1e-16 * 1e6;
        assert!((k.value() - exact).abs() < 1e-12);
        assert!(k.error_bound() < 1e-9);
        assert_eq!(k.count(), 1_000_001);
    }

    #[test]
    fn dd_div_thirds() {
        let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let one = third.mul_f64(3.0);
        assert!((one.to_f64() - 1.0).abs() < 1e-30);
        assert!((third.hi - 1.0 / 3.0).abs() < f64::EPSILON);
        assert!(third.lo.abs() > 0.0);
    }

    #[test]
    fn dd_add_tracks_low_bits() {
        let mut acc = Dd::ZERO;
        for _ in 0..10 {
            acc = acc.add_f64(0.1);
        }
        // 0.1 is not representable; the dd accumulation keeps the defect
        let defect = acc.sub(Dd::from_f64(1.0)).to_f64();
        assert!(defect.abs() < 1e-16);
        assert!(defect != 0.0 || acc.lo != 0.0);
    }
}
