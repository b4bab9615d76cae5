//! Cyclotomic number evaluation.
//!
//! At order e = (q^n-1)/(q-1) the numbers are read off the line sets:
//! (0,0) = f-1, rows and columns through 0 and the diagonal vanish, and
//! (i,j) is 1 exactly when i lies on the line through 0 and j (minus its
//! anchors). Orders dividing e are sums of order-e entries grouped by
//! residue, which the table builder accumulates in a single pass over all
//! lines. Uniform closed forms cover the n = 2 regime.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::is_prime;
use crate::gf::conway::split_prime_power;
use crate::gf::{checked_pow, mulmod};
use crate::lines::CycloCtx;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest order-e size for which whole tables are materialized.
pub const TABLE_BOUND: u64 = 1 << 24;

/// Sparse cyclotomic table of one order; absent entries are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloTable {
    q: u64,
    n: u32,
    order: u64,
    f_order: u64,
    /// keyed (j, i) so iteration follows the documented output ordering
    entries: BTreeMap<(u64, u64), u64>,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    q: u64,
    n: u32,
    order: u64,
    f: u64,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    i: u64,
    j: u64,
    count: u64,
}

impl CycloTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// (q^n - 1)/order: the class size at this order.
    pub fn f_order(&self) -> u64 {
        self.f_order
    }

    pub fn get(&self, i: u64, j: u64) -> u64 {
        self.entries.get(&(j, i)).copied().unwrap_or(0)
    }

    pub fn nonzero_len(&self) -> usize {
        self.entries.len()
    }

    /// Entries as ((i, j), count), sorted by (j, i).
    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), u64)> + '_ {
        self.entries.iter().map(|(&(j, i), &c)| ((i, j), c))
    }

    pub fn row(&self, j: u64) -> Vec<(u64, u64)> {
        self.entries
            .range((j, 0)..=(j, u64::MAX))
            .map(|(&(_, i), &c)| (i, c))
            .collect()
    }

    pub fn row_sum(&self, j: u64) -> u64 {
        self.row(j).iter().map(|&(_, c)| c).sum()
    }

    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            q: self.q,
            n: self.n,
            order: self.order,
            f: self.f_order,
            entries: self
                .iter()
                .map(|((i, j), count)| EntryDoc { i, j, count })
                .collect(),
        };
        serde_json::to_string(&doc).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<CycloTable> {
        let doc: TableDoc =
            serde_json::from_str(s).map_err(|e| Error::InvalidParams(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for e in doc.entries {
            if e.count == 0 || e.i >= doc.order || e.j >= doc.order {
                return Err(Error::InvalidParams("invalid table entry".into()));
            }
            if entries.insert((e.j, e.i), e.count).is_some() {
                return Err(Error::InvalidParams("duplicate table entry".into()));
            }
        }
        Ok(CycloTable {
            q: doc.q,
            n: doc.n,
            order: doc.order,
            f_order: doc.f,
            entries,
        })
    }

    /// CSV with header `i,j,count`, sorted by (j, i).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,count\n");
        for ((i, j), c) in self.iter() {
            out.push_str(&format!("{i},{j},{c}\n"));
        }
        out
    }
}

/// Multiset of cyclotomic class indices with multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassMultiset {
    modulus: u64,
    counts: BTreeMap<u64, u64>,
}

impl ClassMultiset {
    pub fn new(modulus: u64, counts: impl IntoIterator<Item = (u64, u64)>) -> ClassMultiset {
        let counts = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        ClassMultiset { modulus, counts }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn count(&self, class: u64) -> u64 {
        self.counts.get(&class).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }
}

/// Order-e cyclotomic number (i,j): f-1 at the origin, zero on the axes and
/// diagonal, else 1 exactly when i lies on the line through 0 and j.
pub fn cyclo_full(ctx: &CycloCtx, i: u64, j: u64) -> Result<u64> {
    let e = ctx.e();
    if i >= e || j >= e {
        return Err(Error::IndexOutOfRange { i, j, order: e });
    }
    if i == 0 && j == 0 {
        return Ok(ctx.f() - 1);
    }
    if i == 0 || j == 0 || i == j {
        return Ok(0);
    }
    Ok(ctx.line_set(j)?.contains(i) as u64)
}

/// Decomposition of the difference multiset of classes i and j into classes,
/// at order e. Off-diagonal multisets list each class of the connecting line
/// once (anchors removed); diagonal ones are f-1 copies of the class itself.
pub fn delta_decomposition(ctx: &CycloCtx, i: u64, j: u64) -> Result<ClassMultiset> {
    let e = ctx.e();
    if i >= e || j >= e {
        return Err(Error::IndexOutOfRange { i, j, order: e });
    }
    if i == j {
        return Ok(ClassMultiset::new(e, [(i, ctx.f() - 1)]));
    }
    let line = ctx.line_pair(i, j)?;
    Ok(ClassMultiset::new(
        e,
        line.iter().filter(|&h| h != i && h != j).map(|h| (h, 1)),
    ))
}

/// Cyclotomic number of order eps | e by summation over order-e entries.
pub fn cyclo_divisor(ctx: &CycloCtx, eps: u64, i: u64, j: u64) -> Result<u64> {
    let e = ctx.e();
    if eps < 2 {
        return Err(Error::InvalidParams(format!("order {eps} below 2")));
    }
    if e % eps != 0 {
        return Err(Error::NotADivisor { eps, e });
    }
    if i >= eps || j >= eps {
        return Err(Error::IndexOutOfRange { i, j, order: eps });
    }
    let col_count = |col: u64, residue: u64| -> Result<u64> {
        let line = ctx.line_set(col)?;
        Ok(line
            .iter()
            .filter(|&r| r != 0 && r != col && r % eps == residue)
            .count() as u64)
    };
    // sum over the nonzero columns that are multiples of eps
    let axis_sum = |residue: u64| -> Result<u64> {
        let mut acc = 0;
        let mut col = eps;
        while col < e {
            acc += col_count(col, residue)?;
            col += eps;
        }
        Ok(acc)
    };
    match (i, j) {
        (0, 0) => Ok(ctx.f() - 1 + axis_sum(0)?),
        (i, 0) => axis_sum(i),
        (0, j) => axis_sum(j),
        (i, j) if i == j => axis_sum(eps - i),
        (i, j) => {
            let mut acc = 0;
            let mut col = j;
            while col < e {
                if col != 0 {
                    acc += col_count(col, i)?;
                }
                col += eps;
            }
            Ok(acc)
        }
    }
}

/// Representatives of the orbits of multiplication by p on Z_e \ {0}.
fn frobenius_orbit_reps(e: u64, p: u64) -> Vec<u64> {
    let mut visited = vec![false; e as usize];
    let mut reps = Vec::new();
    for j in 1..e {
        if visited[j as usize] {
            continue;
        }
        reps.push(j);
        let mut cur = j;
        loop {
            visited[cur as usize] = true;
            cur = mulmod(p, cur, e);
            if cur == j {
                break;
            }
        }
    }
    reps
}

type Bucket = HashMap<(u64, u64), u64>;

/// Contributions of one Frobenius orbit of columns to the (i mod eps,
/// j mod eps) buckets. The remaining columns of the orbit reuse the resolved
/// line through index scaling.
fn bucket_orbit(ctx: &CycloCtx, eps: u64, rep: u64) -> Result<Bucket> {
    let e = ctx.e();
    let p = ctx.base().characteristic();
    let mut bucket = Bucket::new();
    let mut set = ctx.line_set(rep)?;
    let mut col = rep;
    loop {
        for r in set.iter() {
            if r != 0 && r != col {
                *bucket.entry((r % eps, col % eps)).or_insert(0) += 1;
            }
        }
        let next = mulmod(p, col, e);
        if next == rep {
            break;
        }
        set = set.scale(p);
        ctx.cache_line(next, set.clone());
        col = next;
    }
    Ok(bucket)
}

fn merge_buckets(mut a: Bucket, b: Bucket) -> Bucket {
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

fn build_table(ctx: &CycloCtx, eps: u64, parallel: bool) -> Result<CycloTable> {
    let e = ctx.e();
    if eps == 0 || e % eps != 0 {
        return Err(Error::NotADivisor { eps, e });
    }
    if e > TABLE_BOUND {
        return Err(Error::OutOfRange(e));
    }
    let reps = frobenius_orbit_reps(e, ctx.base().characteristic());
    let bucket = if parallel {
        #[cfg(feature = "parallel")]
        {
            reps.par_iter()
                .map(|&rep| bucket_orbit(ctx, eps, rep))
                .try_reduce(Bucket::new, |a, b| Ok(merge_buckets(a, b)))?
        }
        #[cfg(not(feature = "parallel"))]
        {
            unreachable!("parallel table build requires the `parallel` feature")
        }
    } else {
        let mut acc = Bucket::new();
        for &rep in &reps {
            acc = merge_buckets(acc, bucket_orbit(ctx, eps, rep)?);
        }
        acc
    };
    let mut entries: BTreeMap<(u64, u64), u64> = bucket
        .into_iter()
        .map(|((i, j), c)| ((j, i), c))
        .collect();
    if ctx.f() > 1 {
        *entries.entry((0, 0)).or_insert(0) += ctx.f() - 1;
    }
    let qn = ctx.e() * ctx.f() + 1;
    Ok(CycloTable {
        q: ctx.q(),
        n: ctx.n(),
        order: eps,
        f_order: (qn - 1) / eps,
        entries,
    })
}

/// Complete sparse table of all nonzero (i,j) at order eps | e.
///
/// One pass over the e-1 resolved lines, orbit-deduplicated, accumulating
/// into residue buckets; O(e*q) work. Runs data-parallel over orbits when the
/// `parallel` feature is enabled.
pub fn cyclo_table(ctx: &CycloCtx, eps: u64) -> Result<CycloTable> {
    build_table(ctx, eps, cfg!(feature = "parallel"))
}

/// Sequential fallback of [`cyclo_table`]; always available, used by the
/// benchmarks as the comparison baseline.
pub fn cyclo_table_seq(ctx: &CycloCtx, eps: u64) -> Result<CycloTable> {
    build_table(ctx, eps, false)
}

/// Closed form for GF(q^2) at order eps | q+1 (uniform cyclotomy).
pub fn uniform_closed_form(q: u64, eps: u64, i: u64, j: u64) -> Result<u64> {
    split_prime_power(q)?;
    let e = q + 1;
    if eps < 2 || e % eps != 0 {
        return Err(Error::NotADivisor { eps, e });
    }
    let m = (e / eps) as i128;
    let (i, j) = (i % eps, j % eps);
    let val: i128 = if i == 0 && j == 0 {
        m * m + (eps as i128 - 3) * m - 1
    } else if i == 0 || j == 0 || i == j {
        m * (m - 1)
    } else {
        m * m
    };
    Ok(val as u64)
}

/// True iff the cyclotomic numbers of order e over GF(p^2s) are uniform:
/// e divides p^t + 1 for some t | s, equivalently -1 is a power of p mod e.
pub fn is_uniform_order(p: u64, s: u32, e: u64) -> Result<bool> {
    if !is_prime(p) || s < 1 || e < 3 {
        return Err(Error::InvalidParams(format!(
            "need prime p, s >= 1, e >= 3; got p={p}, s={s}, e={e}"
        )));
    }
    let q2s = checked_pow(p, 2 * s)?;
    if (q2s - 1) % e != 0 {
        return Err(Error::InvalidParams(format!("{e} does not divide p^2s-1")));
    }
    for t in 1..=s {
        if s % t == 0 {
            let mut pw = 1u64;
            for _ in 0..t {
                pw = mulmod(pw, p, e);
            }
            if pw == (e - 1) % e {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The Baumert-Mills-Ward parametrization: q = r^2 with r = +-sqrt(q) chosen
/// so r = 1 mod e, and eta = (r-1)/e.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct UniformParams {
    pub p: u64,
    pub s: u32,
    pub e: u64,
    pub r: i64,
    pub eta: i64,
}

pub fn bmw_params(q: u64, e: u64) -> Result<UniformParams> {
    let (p, m) = split_prime_power(q)?;
    if m % 2 != 0 {
        return Err(Error::InvalidParams(format!("{q} is not a square")));
    }
    let rt = checked_pow(p, m / 2)? as i64;
    let e_i = e as i64;
    let r = [rt, -rt]
        .into_iter()
        .find(|r| r.rem_euclid(e_i) == 1)
        .ok_or_else(|| {
            Error::InvalidParams(format!("neither square root of {q} is 1 mod {e}"))
        })?;
    Ok(UniformParams {
        p,
        s: m / 2,
        e,
        r,
        eta: (r - 1) / e_i,
    })
}

/// Closed form of the uniform case from the BMW parametrization.
pub fn bmw_closed_form(q: u64, e: u64, i: u64, j: u64) -> Result<u64> {
    let params = bmw_params(q, e)?;
    let eta = params.eta as i128;
    let (i, j) = (i % e, j % e);
    let val: i128 = if i == 0 && j == 0 {
        eta * eta - (e as i128 - 3) * eta - 1
    } else if i == 0 || j == 0 || i == j {
        eta * eta + eta
    } else {
        eta * eta
    };
    if val < 0 {
        return Err(Error::InvalidParams(format!(
            "non-uniform configuration q={q}, e={e}"
        )));
    }
    Ok(val as u64)
}

/// Orbit of (i,j) under the index identities: reflection
/// (i,j) -> (order-i, j-i), the p-power map (i,j) -> (pi, pj), and the swap
/// (i,j) -> (j,i) when p = 2 or f is even. Returns the lexicographically
/// least representative and the full sorted orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StorerOrbit {
    pub canonical: (u64, u64),
    pub orbit: Vec<(u64, u64)>,
}

pub fn storer_orbit(order: u64, p: u64, f: u64, i: u64, j: u64) -> StorerOrbit {
    let m = order;
    let start = (i % m, j % m);
    let swap_allowed = p == 2 || f % 2 == 0;
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = vec![start];
    seen.insert(start);
    while let Some((i, j)) = queue.pop() {
        let push = |pair: (u64, u64), seen: &mut std::collections::BTreeSet<(u64, u64)>, queue: &mut Vec<(u64, u64)>| {
            if seen.insert(pair) {
                queue.push(pair);
            }
        };
        push(((m - i) % m, (j + m - i) % m), &mut seen, &mut queue);
        push((mulmod(p, i, m), mulmod(p, j, m)), &mut seen, &mut queue);
        if swap_allowed {
            push((j, i), &mut seen, &mut queue);
        }
    }
    let orbit: Vec<(u64, u64)> = seen.into_iter().collect();
    StorerOrbit {
        canonical: orbit[0],
        orbit,
    }
}

impl CycloCtx {
    /// [`storer_orbit`] at order e with this context's characteristic.
    pub fn storer_orbit(&self, i: u64, j: u64) -> StorerOrbit {
        storer_orbit(self.e(), self.base().characteristic(), self.f(), i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Poly;
    use crate::residue::ResidueSet;

    fn gf27() -> CycloCtx {
        CycloCtx::with_poly(3, 3, &Poly::parse("1,0,2,1").unwrap()).unwrap()
    }

    #[test]
    fn gf27_full_values() {
        let ctx = gf27();
        assert_eq!(cyclo_full(&ctx, 0, 0).unwrap(), 1);
        assert_eq!(cyclo_full(&ctx, 5, 1).unwrap(), 1);
        assert_eq!(cyclo_full(&ctx, 11, 1).unwrap(), 1);
        assert_eq!(cyclo_full(&ctx, 2, 1).unwrap(), 0);
        assert_eq!(cyclo_full(&ctx, 1, 0).unwrap(), 0);
        assert_eq!(cyclo_full(&ctx, 4, 4).unwrap(), 0);
    }

    #[test]
    fn gf27_table_has_25_entries() {
        let ctx = gf27();
        let table = cyclo_table(&ctx, 13).unwrap();
        assert_eq!(table.nonzero_len(), 25);
        assert_eq!(table.get(0, 0), 1);
        let units = [
            (5, 1), (11, 1), (3, 2), (7, 2), (2, 3), (7, 3), (10, 4), (12, 4), (1, 5), (11, 5),
            (8, 6), (9, 6), (2, 7), (3, 7), (6, 8), (9, 8), (6, 9), (8, 9), (4, 10), (12, 10),
            (1, 11), (5, 11), (4, 12), (10, 12),
        ];
        for (i, j) in units {
            assert_eq!(table.get(i, j), 1, "({i},{j})");
        }
    }

    #[test]
    fn gf64_values() {
        let ctx = CycloCtx::with_poly(4, 3, &Poly::parse("3,1,1,1").unwrap()).unwrap();
        assert_eq!(cyclo_full(&ctx, 0, 0).unwrap(), 2);
        for i in [4, 14, 16] {
            assert_eq!(cyclo_full(&ctx, i, 1).unwrap(), 1);
        }
        let d = delta_decomposition(&ctx, 1, 0).unwrap();
        assert_eq!(
            d,
            ClassMultiset::new(21, [(4, 1), (14, 1), (16, 1)])
        );
        let table = cyclo_table(&ctx, 21).unwrap();
        assert_eq!(table.row_sum(1), 3);
        for j in 0..21 {
            assert_eq!(table.row_sum(j), 3 - (j == 0) as u64, "row {j}");
        }
    }

    #[test]
    fn gf625_values() {
        let ctx = CycloCtx::new(5, 4).unwrap();
        assert_eq!(cyclo_full(&ctx, 23, 1).unwrap(), 1);
        assert_eq!(cyclo_full(&ctx, 29, 2).unwrap(), 1);
        let row2: Vec<u64> = (0..156)
            .filter(|&i| cyclo_full(&ctx, i, 2).unwrap() == 1)
            .collect();
        assert_eq!(row2, vec![29, 44, 95, 150]);
        // Frobenius orbit: (23,1) -> (115,5) under multiplication by 5
        let table = cyclo_table(&ctx, 156).unwrap();
        for i in [115, 48, 128, 17] {
            assert_eq!(table.get(i, 5), 1, "({i},5)");
        }
    }

    #[test]
    fn delta_decompositions() {
        let ctx = gf27();
        assert_eq!(
            delta_decomposition(&ctx, 1, 0).unwrap(),
            ClassMultiset::new(13, [(5, 1), (11, 1)])
        );
        assert_eq!(
            delta_decomposition(&ctx, 0, 0).unwrap(),
            ClassMultiset::new(13, [(0, 1)])
        );
        // total multiplicity for distinct classes is f
        assert_eq!(delta_decomposition(&ctx, 7, 2).unwrap().total(), 2);
    }

    #[test]
    fn gf729_over_gf9_divisor_rows() {
        // x^3 + x + w over GF(9), w the class of y in GF(3)[y]/(y^2+2y+2)
        let ctx = CycloCtx::with_poly(9, 3, &Poly::parse("3,1,0,1").unwrap()).unwrap();
        assert_eq!(
            ctx.singer_set(),
            &ResidueSet::new(91, [0, 1, 3, 9, 27, 49, 56, 61, 77, 81])
        );
        let want_row0 = [7, 4, 4, 4, 2, 4, 4, 6, 6, 4, 2, 6, 2];
        let want_row1 = [4, 2, 2, 6, 6, 5, 4, 6, 2, 6, 6, 5, 2];
        for (i, &want) in want_row0.iter().enumerate() {
            assert_eq!(
                cyclo_divisor(&ctx, 13, i as u64, 0).unwrap(),
                want,
                "({i},0)_13"
            );
        }
        for (i, &want) in want_row1.iter().enumerate() {
            assert_eq!(
                cyclo_divisor(&ctx, 13, i as u64, 1).unwrap(),
                want,
                "({i},1)_13"
            );
        }
        // the table builder agrees with the per-entry summation
        let table = cyclo_table(&ctx, 13).unwrap();
        for i in 0..13u64 {
            assert_eq!(table.get(i, 0), want_row0[i as usize]);
            assert_eq!(table.get(i, 1), want_row1[i as usize]);
        }
    }

    #[test]
    fn gf81_order4_uniform() {
        let ctx = CycloCtx::new(3, 4).unwrap();
        assert_eq!(cyclo_divisor(&ctx, 4, 0, 0).unwrap(), 1);
        for i in 1..4 {
            assert_eq!(cyclo_divisor(&ctx, 4, i, 0).unwrap(), 6);
            assert_eq!(cyclo_divisor(&ctx, 4, 0, i).unwrap(), 6);
            assert_eq!(cyclo_divisor(&ctx, 4, i, i).unwrap(), 6);
        }
        for i in 1..4u64 {
            for j in 1..4u64 {
                if i != j {
                    assert_eq!(cyclo_divisor(&ctx, 4, i, j).unwrap(), 4);
                }
            }
        }
        // BMW cross-check with r = 9, eta = 2
        let params = bmw_params(81, 4).unwrap();
        assert_eq!((params.r, params.eta), (9, 2));
        assert_eq!(bmw_closed_form(81, 4, 0, 0).unwrap(), 1);
        assert_eq!(bmw_closed_form(81, 4, 1, 0).unwrap(), 6);
        assert_eq!(bmw_closed_form(81, 4, 2, 1).unwrap(), 4);
    }

    #[test]
    fn gf243_order11() {
        let ctx = CycloCtx::with_poly(3, 5, &Poly::parse("1,2,2,1,0,1").unwrap()).unwrap();
        assert_eq!(cyclo_divisor(&ctx, 11, 0, 0).unwrap(), 1);
        for i in 1..11 {
            assert_eq!(cyclo_divisor(&ctx, 11, i, 0).unwrap(), 2, "({i},0)_11");
        }
        // also with the default modulus: these values are presentation-free
        let ctx = CycloCtx::new(3, 5).unwrap();
        assert_eq!(cyclo_divisor(&ctx, 11, 0, 0).unwrap(), 1);
        for i in 1..11 {
            assert_eq!(cyclo_divisor(&ctx, 11, i, 0).unwrap(), 2);
        }
    }

    #[test]
    fn gf25_divisors() {
        let ctx = CycloCtx::new(5, 2).unwrap();
        assert_eq!(cyclo_divisor(&ctx, 3, 0, 0).unwrap(), 3);
        assert_eq!(cyclo_divisor(&ctx, 3, 1, 0).unwrap(), 2);
        assert_eq!(cyclo_divisor(&ctx, 3, 1, 2).unwrap(), 4);
        assert_eq!(cyclo_divisor(&ctx, 2, 0, 0).unwrap(), 5);
        assert_eq!(cyclo_divisor(&ctx, 2, 1, 0).unwrap(), 6);
    }

    #[test]
    fn bounds_and_divisor_errors() {
        let ctx = gf27();
        assert!(matches!(
            cyclo_full(&ctx, 13, 0).unwrap_err(),
            Error::IndexOutOfRange { .. }
        ));
        assert!(matches!(
            cyclo_divisor(&ctx, 5, 0, 0).unwrap_err(),
            Error::NotADivisor { eps: 5, e: 13 }
        ));
        assert!(matches!(
            cyclo_divisor(&ctx, 13, 0, 13).unwrap_err(),
            Error::IndexOutOfRange { .. }
        ));
        assert!(matches!(
            cyclo_table(&ctx, 5).unwrap_err(),
            Error::NotADivisor { .. }
        ));
        assert!(matches!(
            uniform_closed_form(5, 4, 0, 0).unwrap_err(),
            Error::NotADivisor { .. }
        ));
    }

    #[test]
    fn uniform_closed_form_matches() {
        assert_eq!(uniform_closed_form(5, 3, 0, 0).unwrap(), 3);
        assert_eq!(uniform_closed_form(5, 3, 1, 0).unwrap(), 2);
        assert_eq!(uniform_closed_form(5, 3, 1, 2).unwrap(), 4);
        assert_eq!(uniform_closed_form(5, 2, 0, 0).unwrap(), 5);
        assert_eq!(uniform_closed_form(5, 2, 1, 0).unwrap(), 6);
        // eps = e degenerates to the order-e characterization: (0,0) = f-1
        assert_eq!(uniform_closed_form(9, 10, 0, 0).unwrap(), 7);
        assert_eq!(uniform_closed_form(3, 4, 0, 0).unwrap(), 1);
        // n=2 consistency across every divisor and entry
        for q in [3u64, 4, 5, 7, 9] {
            let ctx = CycloCtx::new(q, 2).unwrap();
            let e = q + 1;
            for eps in 2..=e {
                if e % eps != 0 {
                    continue;
                }
                for i in 0..eps {
                    for j in 0..eps {
                        assert_eq!(
                            cyclo_divisor(&ctx, eps, i, j).unwrap(),
                            uniform_closed_form(q, eps, i, j).unwrap(),
                            "q={q} eps={eps} ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bmw_negative_root() {
        // q = 25, e = 3 picks r = -5, eta = -2
        let params = bmw_params(25, 3).unwrap();
        assert_eq!((params.r, params.eta), (-5, -2));
        assert_eq!(bmw_closed_form(25, 3, 0, 0).unwrap(), 3);
        assert_eq!(bmw_closed_form(25, 3, 1, 0).unwrap(), 2);
        assert_eq!(bmw_closed_form(25, 3, 2, 1).unwrap(), 4);
    }

    #[test]
    fn uniform_order_predicate() {
        assert!(is_uniform_order(5, 1, 3).unwrap());
        assert!(is_uniform_order(3, 2, 4).unwrap());
        assert!(is_uniform_order(2, 1, 3).unwrap());
        assert!(!is_uniform_order(7, 1, 16).unwrap());
        assert!(is_uniform_order(4, 1, 3).is_err());
        assert!(is_uniform_order(5, 1, 7).is_err());
    }

    #[test]
    fn storer_orbits() {
        let ctx = CycloCtx::new(5, 4).unwrap();
        let orbit = ctx.storer_orbit(23, 1);
        assert!(orbit.orbit.contains(&(115, 5)));
        let orbit = storer_orbit(13, 3, 2, 5, 1);
        assert!(orbit.orbit.contains(&(2, 3)));
        let zero = storer_orbit(13, 3, 2, 0, 0);
        assert_eq!(zero.orbit, vec![(0, 0)]);
    }

    #[test]
    fn table_round_trips_and_csv() {
        let ctx = gf27();
        let table = cyclo_table(&ctx, 13).unwrap();
        let json = table.to_json();
        assert_eq!(CycloTable::from_json(&json).unwrap(), table);
        let csv = table.to_csv();
        assert!(csv.starts_with("i,j,count\n0,0,1\n"));
        assert_eq!(csv.lines().count(), 26);
    }

    #[test]
    fn parallel_matches_sequential() {
        let ctx = CycloCtx::new(3, 5).unwrap();
        for eps in [121, 11] {
            assert_eq!(
                cyclo_table(&ctx, eps).unwrap(),
                cyclo_table_seq(&ctx, eps).unwrap()
            );
        }
    }

    #[test]
    fn divisor_entry_matches_table() {
        let ctx = CycloCtx::new(3, 4).unwrap();
        for eps in [2u64, 4, 5, 8, 10, 20, 40] {
            let table = cyclo_table(&ctx, eps).unwrap();
            for i in 0..eps {
                for j in 0..eps {
                    if eps >= 2 {
                        assert_eq!(
                            table.get(i, j),
                            cyclo_divisor(&ctx, eps, i, j).unwrap(),
                            "eps={eps} ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_consistency_across_presentations() {
        // GF(729) as (q=3, n=6) and (q=9, n=3) with default moduli share a
        // primitive element, so common divisor orders agree entry-wise.
        let a = CycloCtx::new(3, 6).unwrap();
        let b = CycloCtx::new(9, 3).unwrap();
        for eps in [7u64, 13, 91] {
            let ta = cyclo_table(&a, eps).unwrap();
            let tb = cyclo_table(&b, eps).unwrap();
            for i in 0..eps {
                for j in 0..eps {
                    assert_eq!(ta.get(i, j), tb.get(i, j), "eps={eps} ({i},{j})");
                }
            }
        }
    }
}
