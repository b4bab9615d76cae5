//! Polynomials over a [`FieldCtx`], plus irreducibility, primitivity and
//! minimal-polynomial machinery.
//!
//! Coefficients are encoded field elements, low degree first. The caller
//! passes the coefficient field explicitly to every operation.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::distinct_prime_factors;
use crate::gf::{checked_pow, FieldCtx};

/// Dense polynomial with encoded coefficients, low degree first.
///
/// Normalized so the leading coefficient is nonzero; the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Parse the comma-separated coefficient format, low degree first:
    /// `"1,0,2,1"` is x^3 + 2x^2 + 1.
    pub fn parse(s: &str) -> Result<Poly> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParams(format!("bad coefficient list {s:?}")))?;
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("empty coefficient list".into()));
        }
        Ok(Poly::new(coeffs))
    }
}

impl fmt::Display for Poly {
    /// Comma-separated coefficient list, low degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FieldCtx {
    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.add(a.coeff(i), b.coeff(i));
        }
        Poly::new(out)
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.sub(a.coeff(i), b.coeff(i));
        }
        Poly::new(out)
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    out[i + j] = self.add(out[i + j], self.mul(x, y));
                }
            }
        }
        Poly::new(out)
    }

    pub fn poly_scale(&self, c: u64, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().map(|&x| self.mul(c, x)).collect())
    }

    /// Remainder of `a` by monic `g`.
    pub fn poly_rem(&self, a: &Poly, g: &Poly) -> Poly {
        assert!(g.is_monic(), "poly_rem requires a monic divisor");
        let dg = g.coeffs.len() - 1;
        let mut r = a.coeffs.clone();
        while r.len() > dg {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - dg;
            if c != 0 {
                for j in 0..dg {
                    let t = self.mul(c, g.coeffs[j]);
                    r[shift + j] = self.sub(r[shift + j], t);
                }
            }
            r.pop();
        }
        Poly::new(r)
    }

    /// base^e mod g, with g monic.
    pub fn poly_powmod(&self, base: &Poly, mut e: u64, g: &Poly) -> Poly {
        let mut acc = self.poly_rem(&Poly::one(), g);
        let mut b = self.poly_rem(base, g);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), g);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), g);
            e >>= 1;
        }
        acc
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut f = a.clone();
        let mut g = b.clone();
        while !g.is_zero() {
            let lc = *g.coeffs.last().unwrap();
            let gm = self.poly_scale(self.inv(lc).expect("nonzero leading coeff"), &g);
            let r = self.poly_rem(&f, &gm);
            f = gm;
            g = r;
        }
        if let Some(&lc) = f.coeffs.last() {
            self.poly_scale(self.inv(lc).unwrap(), &f)
        } else {
            f
        }
    }

    pub fn poly_eval(&self, a: &Poly, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// All coefficients are valid encoded elements of this field.
    pub fn poly_is_valid(&self, a: &Poly) -> bool {
        a.coeffs.iter().all(|&c| c < self.order())
    }
}

/// Rabin irreducibility test for a monic polynomial over GF(q).
pub fn is_irreducible(field: &FieldCtx, f: &Poly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    assert!(f.is_monic());
    let x = Poly::x();
    // x^(q^n) == x mod f
    let mut t = x.clone();
    for _ in 0..n {
        t = poly_frobenius(field, &t, f);
    }
    if t != field.poly_rem(&x, f) {
        return false;
    }
    // gcd(x^(q^(n/ell)) - x, f) == 1 for every prime ell | n
    for ell in distinct_prime_factors(n as u64).expect("small degree") {
        let d = n / ell as usize;
        let mut t = x.clone();
        for _ in 0..d {
            t = poly_frobenius(field, &t, f);
        }
        let diff = field.poly_sub(&t, &x);
        if field.poly_gcd(&diff, f).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// t^q mod f by square-and-multiply on the exponent q.
fn poly_frobenius(field: &FieldCtx, t: &Poly, f: &Poly) -> Poly {
    field.poly_powmod(t, field.order(), f)
}

/// True iff `f` is irreducible over GF(q) and a root generates GF(q^n)*.
///
/// The order test factors q^n - 1 and checks x^((q^n-1)/ell) != 1 in
/// GF(q)[x]/(f) for each prime ell.
pub fn is_primitive_poly(field: &FieldCtx, f: &Poly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().filter(|&n| n >= 1).ok_or(Error::DegreeMismatch {
        got: 0,
        want: 1,
    })? as u32;
    if !field.poly_is_valid(f) {
        return Err(Error::InvalidParams(
            "coefficient exceeds field order".into(),
        ));
    }
    if f.coeff(0) == 0 {
        // x divides f, or f = x itself whose root is 0
        return Ok(false);
    }
    if !is_irreducible(field, f) {
        return Ok(false);
    }
    let big = checked_pow(field.order(), n)?;
    let n1 = big - 1;
    let x = Poly::x();
    for ell in distinct_prime_factors(n1)? {
        if field.poly_powmod(&x, n1 / ell, f) == Poly::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monic minimal polynomial over GF(q) of alpha^t, where alpha is the residue
/// class of x in GF(q)[x]/(modulus).
///
/// Finds the least r with 1, alpha^t, ..., alpha^(rt) linearly dependent as
/// n-vectors over GF(q) and returns the dependency, made monic. The degree
/// always divides n.
pub fn minimal_poly_of_power(field: &FieldCtx, modulus: &Poly, t: u64) -> Result<Poly> {
    let n = modulus
        .degree()
        .filter(|&n| n >= 1)
        .ok_or(Error::DegreeMismatch { got: 0, want: 1 })?;
    let big = checked_pow(field.order(), n as u32)?;
    if t == 0 || t >= big - 1 {
        return Err(Error::InvalidParams(format!(
            "exponent {t} outside 1..{}",
            big - 1
        )));
    }
    let beta = field.poly_powmod(&Poly::x(), t, modulus);
    // Reduced basis rows: (vector, pivot column, combination over beta-powers).
    let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
    let mut power = Poly::one();
    for r in 0..=n {
        let mut v: Vec<u64> = (0..n).map(|i| power.coeff(i)).collect();
        let mut combo = vec![0u64; r + 1];
        combo[r] = 1;
        for (row, pivot, rcombo) in &rows {
            let c = v[*pivot];
            if c != 0 {
                for i in 0..n {
                    v[i] = field.sub(v[i], field.mul(c, row[i]));
                }
                for (i, &rc) in rcombo.iter().enumerate() {
                    combo[i] = field.sub(combo[i], field.mul(c, rc));
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&c| c != 0) {
            let inv = field.inv(v[pivot])?;
            let vn: Vec<u64> = v.iter().map(|&c| field.mul(c, inv)).collect();
            let cn: Vec<u64> = combo.iter().map(|&c| field.mul(c, inv)).collect();
            rows.push((vn, pivot, cn));
            power = field.poly_rem(&field.poly_mul(&power, &beta), modulus);
        } else {
            // dependency found; combo[r] == 1 so the result is monic
            debug_assert_eq!(combo[r], 1);
            let out = Poly::new(combo);
            debug_assert_eq!(n % (out.coeffs.len() - 1), 0);
            return Ok(out);
        }
    }
    unreachable!("powers of an n-dimensional field element must become dependent")
}
