//! Singer difference sets from primitive polynomials.
//!
//! The generating recurrence comes from the coefficient mirror of the
//! polynomial: for f(x) = x^n + a_1 x^(n-1) + ... + a_n over GF(q), the
//! sequence g_r = -sum a_i g_{r-i} with initial values (0, ..., 0, 1) has
//! zero positions forming a ((q^n-1)/(q-1), (q^(n-1)-1)/(q-1),
//! (q^(n-2)-1)/(q-1)) difference set in standard form.

use crate::error::{Error, Result};
use crate::gf::{checked_pow, is_primitive_poly, FieldCtx, Poly};
use crate::residue::ResidueSet;

/// Largest modulus for which [`blocks_through`] scans all translates.
pub const BLOCK_SCAN_BOUND: u64 = 1_000_000;

/// Parameters of the symmetric design carried by a Singer difference set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SingerParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub q: u64,
    pub n: u32,
}

impl SingerParams {
    pub fn new(q: u64, n: u32) -> Result<SingerParams> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("degree {n} below 2")));
        }
        let qn = checked_pow(q, n)?;
        let params = SingerParams {
            v: (qn - 1) / (q - 1),
            k: (qn / q - 1) / (q - 1),
            lambda: (qn / q / q - 1) / (q - 1),
            q,
            n,
        };
        debug_assert_eq!(
            params.k * (params.k - 1),
            params.lambda * (params.v - 1),
            "symmetric design identity"
        );
        Ok(params)
    }
}

/// Zero positions of the recurrence over one period: a Singer difference set
/// mod e = (q^n-1)/(q-1), in standard form (contains 0 and 1).
pub fn singer_ds(base: &FieldCtx, f: &Poly) -> Result<ResidueSet> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeMismatch { got: n, want: 2 });
    }
    if !is_primitive_poly(base, f)? {
        return Err(Error::NotPrimitive { q: base.order() });
    }
    Ok(singer_ds_unchecked(base, f))
}

/// The recurrence itself, for callers that have already validated primitivity.
pub(crate) fn singer_ds_unchecked(base: &FieldCtx, f: &Poly) -> ResidueSet {
    let n = f.degree().unwrap();
    let q = base.order();
    let e = (checked_pow(q, n as u32).unwrap() - 1) / (q - 1);
    // a_i = coefficient of x^(n-i), negated up front
    let neg_a: Vec<u64> = (1..=n).map(|i| base.neg(f.coeff(n - i))).collect();
    let mut seq: Vec<u64> = vec![0; n - 1];
    seq.push(1);
    let mut zeros: Vec<u64> = (0..n as u64 - 1).collect();
    seq.reserve(e as usize);
    for r in n as u64..e {
        let mut acc = 0u64;
        for (i, &na) in neg_a.iter().enumerate() {
            let s = seq[(r as usize) - 1 - i];
            if s != 0 && na != 0 {
                acc = base.add(acc, base.mul(na, s));
            }
        }
        if acc == 0 {
            zeros.push(r);
        }
        seq.push(acc);
    }
    let ds = ResidueSet::new(e, zeros);
    debug_assert_eq!(
        ds.len() as u64,
        (checked_pow(q, n as u32 - 1).unwrap() - 1) / (q - 1),
        "Singer set size"
    );
    ds
}

/// True iff the difference multiset of S covers every nonzero residue
/// exactly `lambda` times.
pub fn verify_difference_set(s: &ResidueSet, lambda: u64) -> bool {
    let v = s.modulus();
    let mut counts = vec![0u64; v as usize];
    for x in s.iter() {
        for y in s.iter() {
            if x != y {
                counts[((x + v - y) % v) as usize] += 1;
            }
        }
    }
    counts[0] == 0 && counts[1..].iter().all(|&c| c == lambda)
}

/// All translates of S containing every point of `pts`.
///
/// Scans the full development, so the modulus must stay within
/// [`BLOCK_SCAN_BOUND`].
pub fn blocks_through(s: &ResidueSet, pts: &[u64]) -> Result<Vec<ResidueSet>> {
    let v = s.modulus();
    if v > BLOCK_SCAN_BOUND {
        return Err(Error::OutOfRange(v));
    }
    let mut out = Vec::new();
    for t in 0..v {
        let block = s.translate(t as i64);
        if pts.iter().all(|&p| block.contains(p)) {
            out.push(block);
        }
    }
    Ok(out)
}
