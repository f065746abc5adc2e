//! Sieved arithmetic-function tables and exact factorization primitives.
//!
//! One linear (Euler) sieve pass fills three arrays up to `limit`: smallest
//! prime factor, Möbius function, and Euler totient. Everything downstream
//! (Ramanujan sums, singular-series products, divisor enumeration, von
//! Mangoldt weights) reads these tables; nothing else in the crate factors
//! integers on its own.

use crate::error::{Error, Result};

/// Default cap on the number of table entries (~0.9 GB at the cap).
pub const DEFAULT_ENTRY_CAP: u64 = 100_000_000;

/// Immutable sieved tables for `1..=limit`.
///
/// `spf[n]` is the smallest prime factor of `n` (sentinel 0 for `n <= 1`:
/// 1 has no prime factor), `mu[n]` the Möbius function, `phi[n]` the totient.
/// Construction is single-threaded; a finished table is safe to share.
pub struct ArithTables {
    limit: u64,
    spf: Vec<u32>,
    mu: Vec<i8>,
    phi: Vec<u32>,
}

impl ArithTables {
    /// Builds the tables with the default entry cap.
    pub fn build(limit: u64) -> Result<ArithTables> {
        Self::build_capped(limit, DEFAULT_ENTRY_CAP)
    }

    /// Builds the tables, refusing limits beyond `cap` entries.
    pub fn build_capped(limit: u64, cap: u64) -> Result<ArithTables> {
        if limit < 1 {
            return Err(Error::domain("table limit must be at least 1"));
        }
        if limit > cap {
            return Err(Error::Capacity { requested: limit, cap });
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut mu = vec![0i8; n + 1];
        let mut phi = vec![0u32; n + 1];
        mu[1] = 1;
        phi[1] = 1;
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                phi[i] = (i - 1) as u32;
                primes.push(i as u32);
            }
            let spf_i = spf[i];
            for &p in &primes {
                if p > spf_i {
                    break;
                }
                let ip = (i as u64) * (p as u64);
                if ip > limit {
                    break;
                }
                let ip = ip as usize;
                spf[ip] = p;
                if p == spf_i {
                    mu[ip] = 0;
                    phi[ip] = phi[i] * p;
                    break;
                } else {
                    mu[ip] = -mu[i];
                    phi[ip] = phi[i] * (p - 1);
                }
            }
        }
        Ok(ArithTables { limit, spf, mu, phi })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check_range(&self, n: u64) -> Result<()> {
        if n < 1 || n > self.limit {
            Err(Error::OutOfRange { value: n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Smallest prime factor of `n`; 0 for `n = 1`.
    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    #[inline]
    pub fn mu(&self, n: u64) -> i64 {
        self.mu[n as usize] as i64
    }

    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    #[inline]
    pub fn is_squarefree(&self, n: u64) -> bool {
        self.mu[n as usize] != 0
    }

    /// Raw Möbius slice (index = n), for batch scans.
    pub fn mu_slice(&self) -> &[i8] {
        &self.mu
    }

    /// Raw totient slice (index = n), for batch scans.
    pub fn phi_slice(&self) -> &[u32] {
        &self.phi
    }

    /// Prime factorization of `n` as `(p, e)` pairs with ascending primes.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        self.check_range(n)?;
        let mut out = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        Ok(out)
    }

    /// All divisors of `n`, ascending, each exactly once.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        let factors = self.factorize(n)?;
        let mut divs = vec![1u64];
        for (p, e) in factors {
            let base_len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..base_len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }

    /// Number of divisors d(n).
    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        let factors = self.factorize(n)?;
        Ok(factors.iter().map(|&(_, e)| (e + 1) as u64).product())
    }

    /// Von Mangoldt function: `log p` if `n = p^m`, otherwise 0.
    pub fn von_mangoldt(&self, n: u64) -> f64 {
        if n < 2 || n > self.limit {
            return 0.0;
        }
        let p = self.spf[n as usize] as u64;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }
}

/// Euclidean gcd; `gcd(0, b) = b`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
