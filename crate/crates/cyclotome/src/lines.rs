//! Projective-line resolution in Z_e.
//!
//! For GF(q^n) with e = (q^n-1)/(q-1), the set S_k collects the exponents j
//! with alpha^j in the two-dimensional GF(q)-span of {1, alpha^k}: the line
//! of PG(n-1, q) through the points 0 and k. Everything here works on Singer
//! difference sets by translate intersections in Z_e; the field itself is
//! never touched after the difference set is generated.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gf::conway::{default_cyclo_modulus, split_prime_power};
use crate::gf::{checked_pow, is_primitive_poly, minimal_poly_of_power, mulmod, FieldCtx, Poly};
use crate::residue::ResidueSet;
use crate::singer::{singer_ds_unchecked, SingerParams};

/// Largest e for which resolved lines are memoized per context.
const SK_CACHE_BOUND: u64 = 1 << 20;

/// How a line index resolves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LineRoute {
    /// n = 2: every line is the whole of Z_{q+1}.
    WholeSpace,
    /// alpha^k lies in GF(q^d); the line is pulled back from there.
    Subfield(u32),
    /// Translate-intersection of the difference set.
    General,
}

/// Evaluation context for one presentation of GF(q^n) over GF(q).
///
/// Holds the base field, the primitive modulus, the cached Singer difference
/// set, lazily built subfield contexts for the proper divisors of n, and a
/// lock-free per-k cache of resolved lines. Line resolution is pure; the
/// caches are insert-once and safe for concurrent use.
pub struct CycloCtx {
    base: Arc<FieldCtx>,
    q: u64,
    n: u32,
    e: u64,
    f: u64,
    prim_poly: Poly,
    ds: ResidueSet,
    sk_cache: Option<Box<[OnceLock<ResidueSet>]>>,
    subfields: Mutex<HashMap<u32, Arc<CycloCtx>>>,
}

impl std::fmt::Debug for CycloCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CycloCtx")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("e", &self.e)
            .field("prim_poly", &self.prim_poly.to_string())
            .finish()
    }
}

impl CycloCtx {
    /// Context with the default (Conway-derived) modulus for GF(q^n).
    pub fn new(q: u64, n: u32) -> Result<CycloCtx> {
        let (base, poly) = default_cyclo_modulus(q, n)?;
        Self::from_parts(Arc::new(base), n, poly)
    }

    /// Context with an explicit primitive polynomial, coefficients encoded in
    /// the default presentation of GF(q).
    pub fn with_poly(q: u64, n: u32, poly: &Poly) -> Result<CycloCtx> {
        let (p, s) = split_prime_power(q)?;
        let base = if s == 1 {
            FieldCtx::new(q, 1)?
        } else {
            FieldCtx::new(p, s)?
        };
        Self::from_parts(Arc::new(base), n, poly.clone())
    }

    pub(crate) fn from_parts(base: Arc<FieldCtx>, n: u32, poly: Poly) -> Result<CycloCtx> {
        let q = base.order();
        if n < 2 {
            return Err(Error::InvalidParams(format!("degree {n} below 2")));
        }
        if poly.degree() != Some(n as usize) {
            return Err(Error::DegreeMismatch {
                got: poly.degree().unwrap_or(0),
                want: n as usize,
            });
        }
        if !is_primitive_poly(&base, &poly)? {
            return Err(Error::NotPrimitive { q });
        }
        let qn = checked_pow(q, n)?;
        let e = (qn - 1) / (q - 1);
        let f = q - 1;
        let ds = singer_ds_unchecked(&base, &poly);
        let sk_cache = (e <= SK_CACHE_BOUND)
            .then(|| (0..e.saturating_sub(1)).map(|_| OnceLock::new()).collect());
        Ok(CycloCtx {
            base,
            q,
            n,
            e,
            f,
            prim_poly: poly,
            ds,
            sk_cache,
            subfields: Mutex::new(HashMap::new()),
        })
    }

    /// Replace the cached difference set by another member of the same
    /// development (any translate of the generated one).
    pub fn with_difference_set(mut self, ds: ResidueSet) -> Result<CycloCtx> {
        if ds.modulus() != self.e || ds.len() != self.ds.len() {
            return Err(Error::InvalidParams(format!(
                "difference set incompatible with e={}",
                self.e
            )));
        }
        let std = &self.ds;
        let anchor = std.members()[0];
        let is_translate = ds
            .members()
            .iter()
            .any(|&m| std.translate((m as i64) - (anchor as i64)) == ds);
        if !is_translate {
            return Err(Error::InvalidParams(
                "difference set is not a translate of the generated Singer set".into(),
            ));
        }
        self.ds = ds;
        Ok(self)
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// e = (q^n - 1)/(q - 1): the order of the full cyclotomic table.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// f = q - 1: the class size divisor at order e.
    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn prim_poly(&self) -> &Poly {
        &self.prim_poly
    }

    pub fn singer_set(&self) -> &ResidueSet {
        &self.ds
    }

    pub fn params(&self) -> SingerParams {
        SingerParams::new(self.q, self.n).expect("validated at construction")
    }

    /// Proper divisors d of n with 1 < d < n, ascending.
    fn proper_divisors(&self) -> impl Iterator<Item = u32> + '_ {
        (2..self.n).filter(|d| self.n % d == 0)
    }

    /// The line through the points 0 and k.
    ///
    /// n = 2 yields the whole of Z_{q+1}; a k whose power lies in a proper
    /// subfield is delegated to that subfield's context; everything else goes
    /// through the hyperplane-intersection route. Results carry q+1 members
    /// including 0 and k, and are memoized per context.
    pub fn line_set(&self, k: u64) -> Result<ResidueSet> {
        if k == 0 || k >= self.e {
            return Err(Error::KOutOfRange { k, e: self.e });
        }
        if let Some(cache) = &self.sk_cache {
            if let Some(hit) = cache[(k - 1) as usize].get() {
                return Ok(hit.clone());
            }
        }
        let set = self.line_set_uncached(k)?;
        self.cache_line(k, set.clone());
        Ok(set)
    }

    /// Dispatch class of a line index: whole space for n = 2, subfield
    /// pullback when alpha^k generates a proper subfield, else the general
    /// hyperplane-intersection route.
    pub fn line_route(&self, k: u64) -> Result<LineRoute> {
        if k == 0 || k >= self.e {
            return Err(Error::KOutOfRange { k, e: self.e });
        }
        if self.n == 2 {
            return Ok(LineRoute::WholeSpace);
        }
        for d in self.proper_divisors() {
            if k % self.subfield_index(d) == 0 {
                return Ok(LineRoute::Subfield(d));
            }
        }
        Ok(LineRoute::General)
    }

    fn line_set_uncached(&self, k: u64) -> Result<ResidueSet> {
        match self.line_route(k)? {
            LineRoute::WholeSpace => Ok(ResidueSet::new(self.e, 0..self.e)),
            LineRoute::Subfield(d) => self.line_subfield(k, d),
            LineRoute::General => self.line_general(k),
        }
    }

    pub(crate) fn cache_line(&self, k: u64, set: ResidueSet) {
        if let Some(cache) = &self.sk_cache {
            let _ = cache[(k - 1) as usize].set(set);
        }
    }

    /// g = (q^n - 1)/(q^d - 1): the index multiplier of the GF(q^d) subfield.
    pub fn subfield_index(&self, d: u32) -> u64 {
        let qn = self.e * self.f + 1;
        (qn - 1) / (checked_pow(self.q, d).unwrap() - 1)
    }

    /// Hyperplane-intersection route, valid whenever alpha^k lies in no
    /// proper subfield (always the case for prime n).
    ///
    /// L is the intersection of the n-2 translates -ik + I; it must have
    /// q+1 points and a unique internal difference of k, whose position x
    /// shifts L onto the line through 0 and k.
    pub fn line_general(&self, k: u64) -> Result<ResidueSet> {
        let mut line = self.ds.clone();
        for i in 1..=(self.n as u64).saturating_sub(3) {
            let shift = mulmod(i, k, self.e);
            line = line.intersect(&self.ds.translate(-(shift as i64)));
        }
        let (shifted, _) = self.align_line(line, k)?;
        Ok(shifted)
    }

    /// Shift an unanchored line L onto {0, k}; returns (S_k, x) with
    /// x the unique member of L meeting -k + L.
    pub(crate) fn align_line(&self, line: ResidueSet, k: u64) -> Result<(ResidueSet, u64)> {
        if line.len() as u64 != self.q + 1 {
            return Err(Error::DegenerateIntersection {
                k,
                detail: format!("translate intersection has {} points, wanted {}", line.len(), self.q + 1),
            });
        }
        let anchored = line.intersect(&line.translate(-(k as i64)));
        if anchored.len() != 1 {
            return Err(Error::DegenerateIntersection {
                k,
                detail: format!(
                    "internal difference {k} realized {} times, wanted once",
                    anchored.len()
                ),
            });
        }
        let x = anchored.members()[0];
        let out = line.translate(-(x as i64));
        debug_assert!(out.contains(0) && out.contains(k));
        Ok((out, x))
    }

    /// Subfield route: with k = x*g for g = (q^n-1)/(q^d-1), the line is
    /// g times the corresponding line of the degree-d subfield context.
    pub fn line_subfield(&self, k: u64, d: u32) -> Result<ResidueSet> {
        let g = self.subfield_index(d);
        if d <= 1 || d >= self.n || self.n % d != 0 || k % g != 0 {
            return Err(Error::InvalidParams(format!(
                "k={k} is not a multiple of the GF(q^{d}) index"
            )));
        }
        let x = k / g;
        let sub = self.subfield_ctx(d)?;
        let inner = sub.line_set(x)?;
        let members: Vec<u64> = inner.iter().map(|s| mulmod(g, s, self.e)).collect();
        let set = ResidueSet::new(self.e, members);
        if !(set.contains(0) && set.contains(k)) {
            return Err(Error::IncompatibleSubfieldModulus { k });
        }
        Ok(set)
    }

    /// Context for GF(q^d) presented with the minimal polynomial of alpha^g,
    /// built on first use and shared afterwards.
    pub fn subfield_ctx(&self, d: u32) -> Result<Arc<CycloCtx>> {
        if let Some(hit) = self.subfields.lock().unwrap().get(&d) {
            return Ok(hit.clone());
        }
        let g = self.subfield_index(d);
        let modulus = minimal_poly_of_power(&self.base, &self.prim_poly, g)?;
        debug_assert_eq!(modulus.degree(), Some(d as usize));
        let ctx = Arc::new(CycloCtx::from_parts(self.base.clone(), d, modulus)?);
        let mut map = self.subfields.lock().unwrap();
        Ok(map.entry(d).or_insert(ctx).clone())
    }

    /// The line through the points i and j: j + S_{i-j}.
    pub fn line_pair(&self, i: u64, j: u64) -> Result<ResidueSet> {
        if i >= self.e || j >= self.e {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                order: self.e,
            });
        }
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        let diff = (i + self.e - j) % self.e;
        Ok(self.line_set(diff)?.translate(j as i64))
    }

    /// Intermediate data of the general route, for diagnostics: the raw
    /// intersection L and the shift element x with S_k = -x + L.
    pub fn line_general_trace(&self, k: u64) -> Result<(ResidueSet, u64, ResidueSet)> {
        if k == 0 || k >= self.e {
            return Err(Error::KOutOfRange { k, e: self.e });
        }
        let mut line = self.ds.clone();
        for i in 1..=(self.n as u64).saturating_sub(3) {
            let shift = mulmod(i, k, self.e);
            line = line.intersect(&self.ds.translate(-(shift as i64)));
        }
        let (s, x) = self.align_line(line.clone(), k)?;
        Ok((line, x, s))
    }
}
