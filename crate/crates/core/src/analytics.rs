//! Exact counts and threshold predicates.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigUint;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Gaussian binomial coefficient `[n k]_q`, the number of k-dimensional
/// subspaces of F_q^n. Evaluated with the product formula; every division is
/// checked to be exact.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<BigCount> {
    if k > n {
        return Err(Error::params(format!("k={k} exceeds n={n}")));
    }
    let k = k.min(n - k);
    let qq = big(q);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= qq.clone().pow(n - i) - 1u32;
        let den = qq.clone().pow(i + 1) - 1u32;
        let rem = &acc % &den;
        if !rem.is_zero() {
            return Err(Error::Internal(format!("inexact division computing [{n} {k}]_{q}")));
        }
        acc /= den;
    }
    Ok(acc)
}

/// `[n]_q = (q^n - 1)/(q - 1)`, the number of points of PG(n-1, q).
pub fn q_number(n: u64, q: u64) -> BigCount {
    if n == 0 {
        return BigUint::zero();
    }
    gaussian_binomial(n, 1, q).expect("1 <= n")
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * big(n - i) / big(i + 1))
}

/// Number of non-degenerate `[n, k]_q` codes by inclusion-exclusion over the
/// coordinate hyperplanes containing the code.
pub fn count_nondegenerate(n: u64, k: u64, q: u64) -> Result<BigCount> {
    if k > n {
        return Err(Error::params(format!("k={k} exceeds n={n}")));
    }
    let mut sum = BigInt::zero();
    for i in 0..=(n - k) {
        let term = BigInt::from(binomial(n, i) * gaussian_binomial(n - i, k, q)?);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_negative() {
        return Err(Error::Internal("negative inclusion-exclusion count".into()));
    }
    Ok(sum.to_biguint().expect("nonnegative"))
}

/// `n < (q+1)^2 + k - 2`: below this bound the restricted distance always
/// equals the Grassmann distance.
pub fn theorem1_predicate(n: u64, k: u64, q: u64) -> bool {
    (n as u128) + 2 < (q as u128 + 1).pow(2) + k as u128
}

/// `[k-m]_q (q+1) + m`, the smallest length for which the witness family with
/// intersection dimension `m` exists.
pub fn theorem2_bound(k: u64, m: u64, q: u64) -> Result<BigCount> {
    if k < 2 || m > k - 2 {
        return Err(Error::params(format!("need m <= k-2, got k={k}, m={m}")));
    }
    Ok(q_number(k - m, q) * big(q + 1) + big(m))
}

/// Checks `[k-m]_q (q+1) + m >= (q+1)^2 + k - 2` for every `m` in `0..=k-2`.
pub fn lemma3_check(k: u64, q: u64) -> Result<bool> {
    if k < 2 {
        return Err(Error::params(format!("need k >= 2, got {k}")));
    }
    let rhs = big(q + 1).pow(2u32) + big(k) - 2u32;
    for m in 0..=k - 2 {
        if theorem2_bound(k, m, q)? < rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Converts a count to `u128` when it fits.
pub fn to_u128(c: &BigCount) -> Option<u128> {
    c.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: u64, k: u64, q: u64) -> BigUint {
        if k == 0 || k == n {
            return BigUint::one();
        }
        pascal(n - 1, k - 1, q) + big(q).pow(k as u32) * pascal(n - 1, k, q)
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(7, 0, 3).unwrap(), big(1));
        assert_eq!(gaussian_binomial(4, 1, 2).unwrap(), big(15));
        assert_eq!(q_number(4, 2), big(15));
        assert_eq!(gaussian_binomial(9, 2, 2).unwrap(), big(511 * 255 / 3));
        assert_eq!(gaussian_binomial(9, 2, 2).unwrap(), big(43435));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn gaussian_identities() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            for n in 0..=10u64 {
                for k in 0..=n {
                    let g = gaussian_binomial(n, k, q).unwrap();
                    assert_eq!(g, gaussian_binomial(n, n - k, q).unwrap());
                    assert_eq!(g, pascal(n, k, q), "[{n} {k}]_{q}");
                }
            }
        }
    }

    #[test]
    fn nondegenerate_counts() {
        assert_eq!(count_nondegenerate(5, 5, 3).unwrap(), big(1));
        assert_eq!(count_nondegenerate(4, 2, 2).unwrap(), big(35 - 4 * 7 + 6));
    }

    #[test]
    fn thresholds() {
        assert!(theorem1_predicate(8, 2, 2));
        assert!(!theorem1_predicate(9, 2, 2));
        assert!(!theorem1_predicate(16, 2, 3));
        assert!(theorem1_predicate(6, 3, 2));
        assert_eq!(theorem2_bound(2, 0, 2).unwrap(), big(9));
        assert_eq!(theorem2_bound(3, 1, 2).unwrap(), big(3 * 3 + 1));
        assert_eq!(theorem2_bound(3, 0, 2).unwrap(), big(21));
        assert!(theorem2_bound(3, 2, 2).is_err());
    }

    #[test]
    fn witness_bound_meets_threshold() {
        for q in [2, 3, 4, 5] {
            assert_eq!(theorem2_bound(2, 0, q).unwrap(), big(q + 1).pow(2u32));
        }
        assert!(lemma3_check(5, 2).unwrap());
        assert!(lemma3_check(10, 3).unwrap());
        assert!(lemma3_check(1, 3).is_err());
    }

    #[test]
    fn thresholds_are_coherent() {
        // Whenever n >= (q+1)^2 + k - 2, the m = k-2 witness length is reached.
        for q in [2u64, 3, 4, 5] {
            for k in 2..8u64 {
                for n in k + 2..60 {
                    if !theorem1_predicate(n, k, q) {
                        assert!(theorem2_bound(k, k - 2, q).unwrap() <= big(n));
                    } else {
                        assert!(theorem2_bound(k, k - 2, q).unwrap() > big(n));
                    }
                }
            }
        }
    }
}
