//! Classical arithmetic used around order finding.

use std::fmt;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Continued-fraction convergents `(numerator, denominator)` of `num/den`.
pub fn convergents(mut num: u64, mut den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    while den != 0 {
        let a = num / den;
        (num, den) = (den, num % den);
        (h_prev, h) = (h, a * h + h_prev);
        (k_prev, k) = (k, a * k + k_prev);
        out.push((h, k));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodFailure {
    /// The sampled peak was `y = 0`, which carries no information.
    ZeroPeak,
    /// No convergent, nor any multiple of one up to `N_c`, passed `a^r ≡ 1`.
    NoValidDenominator,
}

impl fmt::Display for PeriodFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodFailure::ZeroPeak => f.write_str("y=0 carries no period information"),
            PeriodFailure::NoValidDenominator => {
                f.write_str("no convergent denominator is a period")
            }
        }
    }
}

/// Recovers the period `r` from a peak `y` measured on a register of size
/// `q = 2^k` by solving `y/q ≈ m/r`.
///
/// Convergents of `y/q` with denominator at most `n_c` and within `1/(2q)`
/// are tried smallest first. Each candidate `r'` is checked against
/// `a^{r'} ≡ 1 (mod n_c)`; if it fails, the multiples `2r', 3r', … ≤ n_c`
/// are tried, which recovers `r` when `m` and `r` share a factor.
pub fn continued_fraction_period(y: u64, q: u64, n_c: u64, a: u64) -> Result<u64, PeriodFailure> {
    if y == 0 {
        return Err(PeriodFailure::ZeroPeak);
    }
    for (m, r) in convergents(y, q) {
        if r == 0 || r > n_c {
            continue;
        }
        // |y/q - m/r| <= 1/(2q)  <=>  2|y r - m q| <= r
        let diff = (y as i128 * r as i128 - m as i128 * q as i128).abs();
        if 2 * diff > r as i128 {
            continue;
        }
        let mut candidate = r;
        while candidate <= n_c {
            if mod_pow(a, candidate, n_c) == 1 {
                return Ok(candidate);
            }
            candidate += r;
        }
    }
    Err(PeriodFailure::NoValidDenominator)
}
