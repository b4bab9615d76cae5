//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! An element of GF(p^m) is encoded as the integer whose base-p digits are its
//! polynomial coefficients, constant term least significant. The context owns
//! the modulus and, for orders within [`TABLE_BUDGET`], discrete-log and
//! antilog tables keyed by encoded element.

mod poly;

pub mod conway;
mod conway_data;

pub use poly::{is_irreducible, is_primitive_poly, minimal_poly_of_power, Poly};

use crate::error::{Error, Result};
use crate::factor::{distinct_prime_factors, is_prime};

/// Largest field order for which log/exp tables are built eagerly.
pub const TABLE_BUDGET: u64 = 1 << 24;

/// Largest order covered by the bundled default moduli.
pub const DEFAULT_MODULUS_BOUND: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

/// A concrete finite field GF(p^m) with modulus polynomial and element codec.
///
/// Immutable after construction; all operations are pure and thread-safe.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    order: u64,
    /// Monic degree-m irreducible over GF(p), low degree first, length m+1.
    modulus: Vec<u64>,
    /// Encoded primitive element backing the tables, if any.
    generator: Option<u64>,
    /// log_table[x] = discrete log of encoded x; NO_LOG at index 0.
    log_table: Vec<u32>,
    /// exp_table[i] = encoded generator^i, period order-1.
    exp_table: Vec<u32>,
}

impl FieldCtx {
    /// Field with the bundled default modulus (Conway polynomial).
    pub fn new(p: u64, m: u32) -> Result<FieldCtx> {
        let modulus = conway::conway_poly(p, m)?;
        Self::with_modulus(p, m, modulus.coeffs())
    }

    /// Field with an explicit monic degree-m modulus over GF(p).
    pub fn with_modulus(p: u64, m: u32, modulus: &[u64]) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { got: 0, want: 1 });
        }
        let order = checked_pow(p, m)?;
        if modulus.len() != m as usize + 1 {
            return Err(Error::DegreeMismatch {
                got: modulus.len().saturating_sub(1),
                want: m as usize,
            });
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        let mut ctx = FieldCtx {
            p,
            m,
            order,
            modulus,
            generator: None,
            log_table: Vec::new(),
            exp_table: Vec::new(),
        };
        if m > 1 && !ctx.modulus_is_irreducible() {
            return Err(Error::ReducibleModulus { p });
        }
        if order <= TABLE_BUDGET {
            ctx.build_tables()?;
        }
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        !self.exp_table.is_empty()
    }

    /// The primitive element the tables are built on (`exp(1)`).
    pub fn generator(&self) -> Result<u64> {
        self.generator
            .ok_or(Error::TableUnavailable { order: self.order })
    }

    // ---- element codec ----

    /// Coefficient vector (length m, low degree first) of an encoded element.
    pub fn decode(&self, mut x: u64) -> Vec<u64> {
        assert!(x < self.order, "element {x} out of field of order {}", self.order);
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    /// Inverse of [`decode`]; extra high coefficients must be absent.
    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        assert!(coeffs.len() <= self.m as usize);
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            debug_assert!(c < self.p);
            v = v * self.p + c;
        }
        v
    }

    // ---- arithmetic on encoded elements ----

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.zip_digits(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.zip_digits(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.zip_digits(0, a, |_, y| (self.p - y) % self.p)
    }

    pub fn scalar_mul(&self, s: u64, a: u64) -> u64 {
        let s = s % self.p;
        self.zip_digits(0, a, |_, y| (s * y) % self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        assert!(a < self.order && b < self.order);
        if a == 0 || b == 0 {
            return 0;
        }
        if self.has_tables() {
            let n1 = self.order - 1;
            let la = self.log_table[a as usize] as u64;
            let lb = self.log_table[b as usize] as u64;
            return self.exp_table[((la + lb) % n1) as usize] as u64;
        }
        if self.m == 1 {
            return mulmod(a, b, self.p);
        }
        self.mul_poly_path(a, b)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        assert!(a < self.order);
        if self.has_tables() {
            let n1 = self.order - 1;
            let la = self.log_table[a as usize] as u64;
            return Ok(self.exp_table[((n1 - la) % n1) as usize] as u64);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Square-and-multiply; the exponent is reduced mod p^m - 1 for nonzero base.
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n1 = self.order - 1;
        let e = e % n1;
        if self.has_tables() {
            let la = self.log_table[a as usize] as u64;
            return self.exp_table[(mulmod(la, e, n1)) as usize] as u64;
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Discrete log of a nonzero element with respect to [`generator`].
    pub fn log(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::InvalidParams("discrete log of zero".into()));
        }
        assert!(a < self.order);
        if !self.has_tables() {
            return Err(Error::TableUnavailable { order: self.order });
        }
        Ok(self.log_table[a as usize] as u64)
    }

    /// generator^i as an encoded element.
    pub fn exp(&self, i: u64) -> Result<u64> {
        if !self.has_tables() {
            return Err(Error::TableUnavailable { order: self.order });
        }
        Ok(self.exp_table[(i % (self.order - 1)) as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n1 = self.order - 1;
        let mut ord = n1;
        for ell in distinct_prime_factors(n1)? {
            while ord % ell == 0 && self.pow(a, ord / ell) == 1 {
                ord /= ell;
            }
        }
        Ok(ord)
    }

    // ---- internals ----

    fn zip_digits(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        debug_assert!(a < self.order && b < self.order);
        if self.m == 1 {
            return f(a, b);
        }
        let (mut a, mut b) = (a, b);
        let mut v = 0u64;
        let mut pw = 1u64;
        for _ in 0..self.m {
            v += f(a % self.p, b % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        v
    }

    /// Table-free multiplication: digit polynomials multiplied mod modulus.
    fn mul_poly_path(&self, a: u64, b: u64) -> u64 {
        let da = self.decode(a);
        let db = self.decode(b);
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let t = mulmod(c, self.modulus[j], self.p);
                prod[i - m + j] = (prod[i - m + j] + self.p - t) % self.p;
            }
        }
        self.encode(&prod[..m])
    }

    fn modulus_is_irreducible(&self) -> bool {
        let base = FieldCtx {
            p: self.p,
            m: 1,
            order: self.p,
            modulus: vec![0, 1],
            generator: None,
            log_table: Vec::new(),
            exp_table: Vec::new(),
        };
        is_irreducible(&base, &Poly::new(self.modulus.clone()))
    }

    fn build_tables(&mut self) -> Result<()> {
        let n1 = self.order - 1;
        let primes = distinct_prime_factors(n1)?;
        let is_primitive = |ctx: &FieldCtx, a: u64| -> bool {
            a != 0 && primes.iter().all(|&ell| ctx.pow(a, n1 / ell) != 1)
        };
        // Prefer x itself (encoded p) when the modulus is primitive; for
        // degree 1 the root of the modulus, then scan.
        let mut gen = None;
        let first = if self.m == 1 {
            (self.p - self.modulus[0] % self.p) % self.p
        } else {
            self.p
        };
        if first != 0 && is_primitive(self, first) {
            gen = Some(first);
        } else {
            for a in 2..self.order {
                if is_primitive(self, a) {
                    gen = Some(a);
                    break;
                }
            }
        }
        let gen = gen.ok_or(Error::TableUnavailable { order: self.order })?;
        let mut exp = vec![0u32; n1 as usize];
        let mut log = vec![NO_LOG; self.order as usize];
        let mut cur = 1u64;
        for i in 0..n1 {
            exp[i as usize] = cur as u32;
            log[cur as usize] = i as u32;
            cur = self.mul(cur, gen);
        }
        if cur != 1 {
            return Err(Error::ReducibleModulus { p: self.p });
        }
        self.generator = Some(gen);
        self.exp_table = exp;
        self.log_table = log;
        Ok(())
    }
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&v| v <= crate::factor::FACTOR_BOUND)
            .ok_or(Error::OutOfRange(base))?;
    }
    Ok(acc)
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}
