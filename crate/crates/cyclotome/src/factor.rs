//! Integer factorization: trial division, deterministic Miller-Rabin and
//! Pollard's rho. Everything here is exact for inputs below 2^63.

use crate::error::{Error, Result};

/// Largest input accepted by [`factorize`].
pub const FACTOR_BOUND: u64 = (1 << 63) - 1;

const TRIAL_LIMIT: u64 = 1_000_000;

// Known base set making Miller-Rabin deterministic below 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for any u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64, c: u64) -> Option<u64> {
    // Brent's cycle-finding variant with batched gcds.
    let mut x = 2u64;
    let mut y = 2u64;
    let mut d = 1u64;
    let mut prod = 1u64;
    let f = |v: u64| (mul_mod(v, v, n) + c) % n;
    let mut count = 0u32;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        prod = mul_mod(prod, x.abs_diff(y), n);
        count += 1;
        if count == 64 || prod == 0 {
            d = gcd(prod, n);
            if prod == 0 {
                // overshoot: fall back to single-step gcd
                d = gcd(x.abs_diff(y), n);
                if d == 1 {
                    return None;
                }
            }
            prod = 1;
            count = 0;
        }
        if x == y {
            return None;
        }
    }
    if d != n {
        Some(d)
    } else {
        None
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for c in 1.. {
        if let Some(d) = pollard_rho(n, c) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

/// Prime factorization with multiplicity, sorted ascending.
///
/// `factorize(728)` is `[2, 2, 2, 7, 13]`; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Vec<u64>> {
    if n == 0 || n > FACTOR_BOUND {
        return Err(Error::OutOfRange(n));
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    factor_into(n, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Distinct prime divisors, sorted ascending.
pub fn distinct_prime_factors(n: u64) -> Result<Vec<u64>> {
    let mut fs = factorize(n)?;
    fs.dedup();
    Ok(fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(728).unwrap(), vec![2, 2, 2, 7, 13]);
        assert_eq!(factorize(624).unwrap(), vec![2, 2, 2, 2, 3, 13]);
        assert_eq!(factorize(1).unwrap(), Vec::<u64>::new());
        assert_eq!(factorize(0), Err(Error::OutOfRange(0)));
    }

    #[test]
    fn factorize_large_semiprime() {
        let n = 1_000_003u64 * 1_000_033;
        assert_eq!(factorize(n).unwrap(), vec![1_000_003, 1_000_033]);
    }

    #[test]
    fn primality_edges() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime((1 << 61) - 1)); // Mersenne prime
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(65521));
        assert!(!is_prime(65521u64 * 65521));
    }

    #[test]
    fn recomposition_sample() {
        for n in (1u64..5000).chain([65535, 728, 624, 59048, 2u64.pow(32) - 1]) {
            let fs = factorize(n).unwrap();
            assert_eq!(fs.iter().product::<u64>(), n);
            for &f in &fs {
                assert!(is_prime(f), "{f} not prime in factorization of {n}");
            }
        }
    }
}
