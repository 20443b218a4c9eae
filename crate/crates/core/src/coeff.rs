//! Weight sequences of the disk spaces and the Dirichlet coefficients of
//! powers of the Riemann zeta function.
//!
//! `c_β(n)` are the Taylor coefficients of `(1 - z)^{-β}`. They are produced by
//! the forward recurrence `c_β(n) = c_β(n-1) (n - 1 + β) / n`, which never
//! overflows for the ranges used here.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

/// Taylor coefficient `c_β(n)` of `(1 - z)^{-β}`.
pub fn binom_coeff(beta: f64, n: usize) -> f64 {
    let mut c = 1.0;
    for k in 1..=n {
        let k = k as f64;
        c = c * (k - 1.0 + beta) / k;
    }
    c
}

/// `c_β(0), ..., c_β(n_max)`.
pub fn binom_coeffs(beta: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = 1.0;
    out.push(c);
    for k in 1..=n_max {
        let k = k as f64;
        c = c * (k - 1.0 + beta) / k;
        out.push(c);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence {
    pub beta: f64,
    pub values: Vec<f64>,
}

impl WeightSequence {
    pub fn new(beta: f64, n_max: usize) -> Self {
        Self {
            beta,
            values: binom_coeffs(beta, n_max),
        }
    }

    /// Like [`WeightSequence::new`] but refuses exponents for which the
    /// weights are not all strictly positive.
    pub fn positive(beta: f64, n_max: usize) -> Result<Self> {
        ensure(beta > 0.0, "beta", format!("must be > 0, got {beta}"))?;
        Ok(Self::new(beta, n_max))
    }

    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }
}

/// `A_k = c_{p/2}(k) c_{2/p+1}(k-1) / k`, strictly increasing in `k` when `p > 2`.
pub fn monotone_sequence(p: f64, k: usize) -> Result<f64> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    ensure(k >= 1, "k", "must be >= 1")?;
    Ok(binom_coeff(p / 2.0, k) * binom_coeff(2.0 / p + 1.0, k - 1) / k as f64)
}

/// Closed form of `A_{k+1} / A_k`. Defined for every `p > 0`; it is exactly
/// one at `p = 2`.
pub fn monotone_ratio(p: f64, k: usize) -> f64 {
    let k = k as f64;
    (k + p / 2.0) * (k + 2.0 / p) / ((k + 1.0) * (k + 1.0))
}

/// Smallest prime factor of every integer in `0..=n` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factorization of `k` as `(prime, exponent)` pairs in increasing order,
/// using a table from [`smallest_prime_factors`] that covers `k`.
pub fn factorize(mut k: usize, spf: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    while k > 1 {
        let p = spf[k];
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
        k /= p;
    }
    out
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: usize) -> Vec<usize> {
    let spf = smallest_prime_factors(n);
    (2..=n).filter(|&i| spf[i] == i).collect()
}

/// Dirichlet coefficients `d_α(1..=n)` of `ζ(s)^α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorSequence {
    pub alpha: f64,
    /// `values[k - 1] = d_α(k)`.
    pub values: Vec<f64>,
}

impl DivisorSequence {
    pub fn get(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `d_α(k)` for `k = 1..=n_max`, built multiplicatively from `d_α(q^a) = c_α(a)`.
pub fn zeta_power_coeffs(alpha: f64, n_max: usize) -> Result<DivisorSequence> {
    ensure(alpha > 0.0, "alpha", format!("must be > 0, got {alpha}"))?;
    ensure(n_max >= 1, "n_max", "must be >= 1")?;
    let spf = smallest_prime_factors(n_max);
    let max_exp = usize::BITS as usize - n_max.leading_zeros() as usize;
    let prime_power = binom_coeffs(alpha, max_exp);
    let values = (1..=n_max)
        .map(|k| {
            factorize(k, &spf)
                .iter()
                .map(|&(_, e)| prime_power[e as usize])
                .product()
        })
        .collect();
    Ok(DivisorSequence { alpha, values })
}
