//! Default moduli: Conway polynomials.
//!
//! Degree >= 2 polynomials come from the bundled table in `conway_data` (all
//! p^m <= 2^16); degree 1 is x - g with g the least primitive root, computed
//! on demand for any prime. `compute_conway` re-derives table entries from
//! the definition and backs the table generator.

use crate::error::{Error, Result};
use crate::factor::distinct_prime_factors;
use crate::gf::conway_data::CONWAY_POLYS;
use crate::gf::poly::{is_irreducible, Poly};
use crate::gf::{checked_pow, FieldCtx};

/// Smallest primitive root modulo a prime.
pub fn least_primitive_root(p: u64) -> Result<u64> {
    if !crate::factor::is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let primes = distinct_prime_factors(p - 1)?;
    let powmod = |a: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        let mut b = a % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = crate::gf::mulmod(acc, b, p);
            }
            b = crate::gf::mulmod(b, b, p);
            e >>= 1;
        }
        acc
    };
    for g in 2..p {
        if primes.iter().all(|&ell| powmod(g, (p - 1) / ell) != 1) {
            return Ok(g);
        }
    }
    unreachable!("every prime has a primitive root")
}

/// The Conway polynomial C_{p,m}, used as the default field modulus.
///
/// Degree 1 is computed for any prime; higher degrees are served from the
/// bundled table covering p^m <= 2^16.
pub fn conway_poly(p: u64, m: u32) -> Result<Poly> {
    if m == 1 {
        let g = least_primitive_root(p)?;
        return Ok(Poly::new(vec![(p - g) % p, 1]));
    }
    for &(tp, tm, coeffs) in CONWAY_POLYS {
        if tp == p && tm == m {
            return Ok(Poly::new(coeffs.to_vec()));
        }
    }
    if !crate::factor::is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    Err(Error::NoDefaultModulus { p, m })
}

/// Re-derive C_{p,m} from the definition: the word-order least monic
/// primitive polynomial of degree m over GF(p) compatible with C_{p,d}
/// for every proper divisor d.
///
/// The word of x^m + c_{m-1} x^{m-1} + ... + c_0 is
/// ((-1)^1 c_{m-1}, (-1)^2 c_{m-2}, ..., (-1)^m c_0) mod p, compared
/// lexicographically.
pub fn compute_conway(p: u64, m: u32) -> Result<Poly> {
    let subs: Vec<(u32, Poly)> = (1..m)
        .filter(|d| m % d == 0)
        .map(|d| conway_poly(p, d).map(|f| (d, f)))
        .collect::<Result<_>>()?;
    compute_conway_with_subs(p, m, &subs)
}

/// Search core; `subs` supplies C_{p,d} for every proper divisor d of m.
pub fn compute_conway_with_subs(p: u64, m: u32, subs: &[(u32, Poly)]) -> Result<Poly> {
    let field = FieldCtx::with_modulus(p, 1, &[(p - least_primitive_root(p)?) % p, 1])?;
    if m == 1 {
        return conway_poly(p, 1);
    }
    let n = m as usize;
    let big = checked_pow(p, m)?;
    let n1 = big - 1;
    let order_primes = distinct_prime_factors(n1)?;
    let g = least_primitive_root(p)?;
    // compatibility with C_{p,1} pins the constant coefficient:
    // norm(root) = (-1)^m c_0 must equal g, i.e. word digit w_0 = g.
    let c0 = if m % 2 == 0 { g } else { (p - g) % p };
    // iterate the remaining word digits (w_{m-1}, ..., w_1) in lex order
    let mut word = vec![0u64; n - 1];
    loop {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[0] = c0;
        coeffs[n] = 1;
        for (idx, &w) in word.iter().enumerate() {
            let i = n - 1 - idx; // coefficient degree
            coeffs[i] = if (n - i) % 2 == 1 { (p - w) % p } else { w };
        }
        let f = Poly::new(coeffs);
        if candidate_ok(&field, &f, subs, &order_primes, n1, big) {
            return Ok(f);
        }
        // odometer
        let mut pos = n - 1;
        loop {
            if pos == 0 {
                return Err(Error::NoDefaultModulus { p, m });
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < p {
                break;
            }
            word[pos] = 0;
        }
    }
}

fn candidate_ok(
    field: &FieldCtx,
    f: &Poly,
    subs: &[(u32, Poly)],
    order_primes: &[u64],
    n1: u64,
    big: u64,
) -> bool {
    if !is_irreducible(field, f) {
        return false;
    }
    for (d, sub) in subs {
        if *d == 1 {
            continue; // enforced via the constant-coefficient pin
        }
        let exp = n1 / (checked_pow(field.order(), *d).unwrap() - 1);
        let y = field.poly_powmod(&Poly::x(), exp, f);
        // evaluate sub at y mod f
        let mut acc = Poly::zero();
        for &c in sub.coeffs().iter().rev() {
            acc = field.poly_rem(&field.poly_mul(&acc, &y), f);
            acc = field.poly_add(&acc, &Poly::new(vec![c]));
        }
        if !acc.is_zero() {
            return false;
        }
    }
    debug_assert!(big - 1 == n1);
    let x = Poly::x();
    for &ell in order_primes {
        if field.poly_powmod(&x, n1 / ell, f) == Poly::one() {
            return false;
        }
    }
    true
}

/// Default primitive modulus for GF(q^n) over GF(q), together with the
/// default base-field context.
///
/// For prime q this is C_{q,n}. For q = p^s the returned polynomial is the
/// minimal polynomial over GF(q) of the canonical primitive root of the flat
/// Conway field GF(p^{sn}), so that contexts over different decompositions of
/// the same field share one primitive element.
pub fn default_cyclo_modulus(q: u64, n: u32) -> Result<(FieldCtx, Poly)> {
    let (p, s) = split_prime_power(q)?;
    let base = if s == 1 {
        FieldCtx::new(q, 1)?
    } else {
        FieldCtx::new(p, s)?
    };
    if s == 1 {
        let f = conway_poly(q, n)?;
        return Ok((base, f));
    }
    let flat_m = s
        .checked_mul(n)
        .ok_or(Error::OutOfRange(q))?;
    if checked_pow(p, flat_m).ok().filter(|&o| o <= crate::gf::DEFAULT_MODULUS_BOUND).is_none() {
        return Err(Error::NoDefaultModulus { p, m: flat_m });
    }
    let flat = FieldCtx::new(p, flat_m)?;
    let g = (flat.order() - 1) / (q - 1);
    debug_assert!({
        // the canonical embedding sends the base generator to alpha^g
        let root = flat.exp(g)?;
        let mut acc = 0u64;
        for &c in base.modulus().iter().rev() {
            acc = flat.add(flat.mul(acc, root), c);
        }
        acc == 0
    });
    // product of (x - alpha^(q^i)) for i in 0..n, coefficients in the flat field
    let mut coeffs: Vec<u64> = vec![1];
    for i in 0..n {
        let conj = flat.exp(checked_pow(q, i)?)?;
        let mut next = vec![0u64; coeffs.len() + 1];
        for (d, &c) in coeffs.iter().enumerate() {
            next[d + 1] = flat.add(next[d + 1], c);
            next[d] = flat.sub(next[d], flat.mul(c, conj));
        }
        coeffs = next;
    }
    // re-encode each coefficient from the subfield {alpha^(g*j)} into GF(q)
    let recoded: Vec<u64> = coeffs
        .iter()
        .map(|&c| -> Result<u64> {
            if c == 0 {
                return Ok(0);
            }
            let lg = flat.log(c)?;
            assert_eq!(lg % g, 0, "conjugate-product coefficient outside GF(q)");
            base.exp(lg / g)
        })
        .collect::<Result<_>>()?;
    Ok((base, Poly::new(recoded)))
}

/// Decompose a prime power as (p, s) with q = p^s.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("{q} is not a prime power")));
    }
    let fs = crate::factor::factorize(q)?;
    let p = fs[0];
    if fs.iter().any(|&f| f != p) {
        return Err(Error::InvalidParams(format!("{q} is not a prime power")));
    }
    Ok((p, fs.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_primitive_roots() {
        assert_eq!(least_primitive_root(2).unwrap(), 1);
        assert_eq!(least_primitive_root(3).unwrap(), 2);
        assert_eq!(least_primitive_root(5).unwrap(), 2);
        assert_eq!(least_primitive_root(7).unwrap(), 3);
        assert_eq!(least_primitive_root(191).unwrap(), 19);
        assert!(least_primitive_root(8).is_err());
    }

    #[test]
    fn published_conway_values() {
        let cases: &[(u64, u32, &[u64])] = &[
            (2, 1, &[1, 1]),
            (2, 2, &[1, 1, 1]),
            (2, 3, &[1, 1, 0, 1]),
            (2, 4, &[1, 1, 0, 0, 1]),
            (2, 5, &[1, 0, 1, 0, 0, 1]),
            (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
            (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
            (3, 1, &[1, 1]),
            (3, 2, &[2, 2, 1]),
            (3, 3, &[1, 2, 0, 1]),
            (3, 4, &[2, 0, 0, 2, 1]),
            (3, 5, &[1, 2, 0, 0, 0, 1]),
            (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
            (5, 1, &[3, 1]),
            (5, 2, &[2, 4, 1]),
            (5, 4, &[2, 4, 4, 0, 1]),
            (7, 1, &[4, 1]),
            (7, 2, &[3, 6, 1]),
        ];
        for &(p, m, want) in cases {
            assert_eq!(
                conway_poly(p, m).unwrap().coeffs(),
                want,
                "C_{{{p},{m}}} mismatch"
            );
        }
    }

    #[test]
    fn table_matches_recompute_sample() {
        for (p, m) in [(2, 2), (2, 6), (3, 4), (5, 3), (7, 2), (11, 2), (13, 3)] {
            assert_eq!(
                conway_poly(p, m).unwrap(),
                compute_conway(p, m).unwrap(),
                "recomputed C_{{{p},{m}}} differs from bundled entry"
            );
        }
    }

    #[test]
    fn bundled_entries_are_primitive_and_compatible() {
        use crate::gf::poly::is_primitive_poly;
        for &(p, m, coeffs) in crate::gf::conway_data::CONWAY_POLYS {
            if p.pow(m) > 4096 {
                continue; // keep the exhaustive part of this test quick
            }
            let field = FieldCtx::new(p, 1).unwrap();
            let f = Poly::new(coeffs.to_vec());
            assert!(
                is_primitive_poly(&field, &f).unwrap(),
                "bundled C_{{{p},{m}}} not primitive"
            );
            // norm compatibility with every proper subdegree
            let flat = FieldCtx::with_modulus(p, m, coeffs).unwrap();
            for d in 1..m {
                if m % d != 0 {
                    continue;
                }
                let sub = conway_poly(p, d).unwrap();
                let g = (flat.order() - 1) / (p.pow(d) - 1);
                let root = flat.exp(g).unwrap();
                let mut acc = 0u64;
                for &c in sub.coeffs().iter().rev() {
                    acc = flat.add(flat.mul(acc, root), c);
                }
                assert_eq!(acc, 0, "C_{{{p},{m}}} incompatible with C_{{{p},{d}}}");
            }
        }
    }

    #[test]
    fn missing_default_is_reported() {
        assert_eq!(
            conway_poly(2, 17).unwrap_err(),
            Error::NoDefaultModulus { p: 2, m: 17 }
        );
    }

    #[test]
    fn split_prime_powers() {
        assert_eq!(split_prime_power(9).unwrap(), (3, 2));
        assert_eq!(split_prime_power(1024).unwrap(), (2, 10));
        assert_eq!(split_prime_power(17).unwrap(), (17, 1));
        assert!(split_prime_power(6).is_err());
        assert!(split_prime_power(1).is_err());
    }

    #[test]
    fn derived_extension_moduli() {
        // canonical relative modulus for GF(9^3) over GF(9) and GF(4^3)/GF(4)
        let (base9, f) = default_cyclo_modulus(9, 3).unwrap();
        assert_eq!(base9.modulus(), &[2, 2, 1]);
        assert_eq!(f.coeffs(), &[6, 3, 8, 1]);
        let (base4, f) = default_cyclo_modulus(4, 3).unwrap();
        assert_eq!(base4.modulus(), &[1, 1, 1]);
        assert_eq!(f.coeffs(), &[2, 1, 1, 1]);
        // prime base goes straight to the Conway table
        let (_, f) = default_cyclo_modulus(5, 4).unwrap();
        assert_eq!(f.coeffs(), &[2, 4, 4, 0, 1]);
    }
}
