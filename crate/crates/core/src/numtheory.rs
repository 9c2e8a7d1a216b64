//! Small integer helpers shared by the predicates and the polynomial layer.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// 2-adic valuation of `|x|`.
pub fn v2(x: i64) -> Result<u32> {
    if x == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(x.trailing_zeros())
}

/// Positive divisors of `n` in ascending order. Empty for `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Multipliers `1 <= t < n` with `gcd(n, t) = 1`.
pub fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..n.max(2)).filter(move |&t| gcd(n, t) == 1)
}

/// Prime factorisation as `(p, k)` pairs in ascending `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v2_values() {
        assert_eq!(v2(12).unwrap(), 2);
        assert_eq!(v2(-7).unwrap(), 0);
        assert_eq!(v2(1 << 10).unwrap(), 10);
        assert!(matches!(v2(0), Err(Error::ZeroArgument)));
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert!(divisors(0).is_empty());
    }

    #[test]
    fn phi_matches_count_of_units() {
        for n in 1..200u64 {
            let count = if n == 1 { 1 } else { units(n).count() as u64 };
            assert_eq!(euler_phi(n), count, "n = {n}");
        }
    }

    #[test]
    fn phi_sums_over_divisors() {
        for n in 1..200u64 {
            let total: u64 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}
