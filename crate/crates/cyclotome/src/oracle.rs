//! Brute-force verification path.
//!
//! Rebuilds GF(q^n) as GF(q)[x]/(f) with its own element encoding and its own
//! discrete-log tables, then counts cyclotomic solutions and enumerates line
//! spans directly. Shares nothing with the line-resolver or the evaluator
//! beyond base-field arithmetic, so agreement is meaningful evidence.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::lines::CycloCtx;
use crate::residue::ResidueSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default ceiling on q^n for oracle enumeration.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 24;

/// GF(q^n) tabulated by direct power enumeration.
///
/// Elements are encoded in mixed radix: sum of c_i * q^i for coefficient
/// vectors (c_0, ..., c_{n-1}) over GF(q).
#[derive(Debug)]
pub struct OracleField {
    base: Arc<FieldCtx>,
    q: u64,
    n: u32,
    order: u64,
    e: u64,
    /// exp[t] = encoded alpha^t for t in 0..order-1
    exp: Vec<u32>,
    /// log[x] = t with alpha^t = x, for nonzero encoded x
    log: Vec<u32>,
}

impl OracleField {
    /// Enumerate the powers of x in GF(q)[x]/(f) for the context's modulus.
    pub fn build(ctx: &CycloCtx, budget: u64) -> Result<OracleField> {
        let base = Arc::new(FieldCtx::with_modulus(
            ctx.base().characteristic(),
            ctx.base().degree(),
            ctx.base().modulus(),
        )?);
        let q = base.order();
        let n = ctx.n();
        let order = ctx.e() * ctx.f() + 1;
        if order > budget {
            return Err(Error::OracleBudgetExceeded {
                order,
                budget,
            });
        }
        let modulus = ctx.prim_poly();
        let nn = n as usize;
        let mut exp = vec![0u32; (order - 1) as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut state = vec![0u64; nn];
        state[0] = 1;
        let key = |state: &[u64]| -> u64 {
            let mut v = 0u64;
            for &c in state.iter().rev() {
                v = v * q + c;
            }
            v
        };
        for t in 0..order - 1 {
            let k = key(&state);
            exp[t as usize] = k as u32;
            log[k as usize] = t as u32;
            // multiply by alpha: shift up and reduce by the monic modulus
            let carry = state[nn - 1];
            for i in (1..nn).rev() {
                state[i] = state[i - 1];
            }
            state[0] = 0;
            if carry != 0 {
                for (i, slot) in state.iter_mut().enumerate() {
                    let t = base.mul(carry, modulus.coeff(i));
                    *slot = base.sub(*slot, t);
                }
            }
        }
        if key(&state) != 1 {
            return Err(Error::NotPrimitive { q });
        }
        // the powers must enumerate every nonzero element exactly once
        if log[1..].contains(&u32::MAX) {
            return Err(Error::NotPrimitive { q });
        }
        Ok(OracleField {
            base,
            q,
            n,
            order,
            e: ctx.e(),
            exp,
            log,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn decode(&self, mut key: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(key % self.q);
            key /= self.q;
        }
        out
    }

    /// encoded z - 1
    fn sub_one(&self, key: u64) -> u64 {
        let low = key % self.q;
        key - low + self.base.sub(low, 1)
    }

    /// Count pairs with z in class j, z - 1 in class i, classes of order m.
    ///
    /// z = 1 never counts: its z - 1 is zero, which lies in no class.
    pub fn cyclo(&self, m: u64, i: u64, j: u64) -> Result<u64> {
        if m == 0 || (self.order - 1) % m != 0 {
            return Err(Error::NotADivisor {
                eps: m,
                e: self.order - 1,
            });
        }
        if i >= m || j >= m {
            return Err(Error::IndexOutOfRange { i, j, order: m });
        }
        let mut count = 0u64;
        let mut lg = j;
        while lg < self.order - 1 {
            let z = self.exp[lg as usize] as u64;
            if z != 1 {
                let zm1 = self.sub_one(z);
                if self.log[zm1 as usize] as u64 % m == i {
                    count += 1;
                }
            }
            lg += m;
        }
        Ok(count)
    }

    /// All nonzero (i,j) of order m in one pass, keyed (j,i) like the
    /// evaluator's tables.
    pub fn table(&self, m: u64) -> Result<BTreeMap<(u64, u64), u64>> {
        self.table_impl(m, cfg!(feature = "parallel"))
    }

    /// Sequential fallback of [`table`].
    pub fn table_seq(&self, m: u64) -> Result<BTreeMap<(u64, u64), u64>> {
        self.table_impl(m, false)
    }

    fn table_impl(&self, m: u64, parallel: bool) -> Result<BTreeMap<(u64, u64), u64>> {
        if m == 0 || (self.order - 1) % m != 0 {
            return Err(Error::NotADivisor {
                eps: m,
                e: self.order - 1,
            });
        }
        let count_range = |range: std::ops::Range<u64>| -> BTreeMap<(u64, u64), u64> {
            let mut local = BTreeMap::new();
            for lg in range {
                let z = self.exp[lg as usize] as u64;
                if z == 1 {
                    continue;
                }
                let zm1 = self.sub_one(z);
                let i = self.log[zm1 as usize] as u64 % m;
                *local.entry((lg % m, i)).or_insert(0) += 1;
            }
            local
        };
        let total = self.order - 1;
        if parallel {
            #[cfg(feature = "parallel")]
            {
                let chunk = (total / 64).max(4096);
                let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
                return Ok(starts
                    .par_iter()
                    .map(|&s| count_range(s..(s + chunk).min(total)))
                    .reduce(BTreeMap::new, |mut a, b| {
                        for (k, c) in b {
                            *a.entry(k).or_insert(0) += c;
                        }
                        a
                    }));
            }
        }
        Ok(count_range(0..total))
    }

    /// The span {a + b*alpha^k} enumerated over all q^2 - 1 nonzero
    /// coefficient pairs, logged mod e: the line through 0 and k.
    pub fn line_set(&self, k: u64) -> Result<ResidueSet> {
        if k == 0 || k >= self.e {
            return Err(Error::KOutOfRange { k, e: self.e });
        }
        let x = self.decode(self.exp[k as usize] as u64);
        let mut members = Vec::new();
        for a in 0..self.q {
            for b in 0..self.q {
                if a == 0 && b == 0 {
                    continue;
                }
                let mut kv = 0u64;
                for (i, &xc) in x.iter().enumerate().rev() {
                    let mut c = self.base.mul(b, xc);
                    if i == 0 {
                        c = self.base.add(c, a);
                    }
                    kv = kv * self.q + c;
                }
                members.push(self.log[kv as usize] as u64 % self.e);
            }
        }
        let set = ResidueSet::new(self.e, members);
        debug_assert_eq!(set.len() as u64, self.q + 1);
        Ok(set)
    }
}

/// Outcome of one oracle-vs-evaluator comparison plus the identity suite.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub order: u64,
    pub pairs_checked: u64,
    /// (i, j, evaluator, oracle)
    pub mismatches: Vec<(u64, u64, u64, u64)>,
    pub identity_checks: u64,
    pub identity_failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.identity_failures.is_empty()
    }
}

/// Compare the evaluator against the oracle on every index pair of order m,
/// then run the index-identity suite (row sums, reflection, p-power
/// invariance, symmetry) over the computed table.
pub fn verify_order(ctx: &CycloCtx, m: u64, budget: u64) -> Result<VerifyReport> {
    let oracle = OracleField::build(ctx, budget)?;
    let table = crate::cyclo::cyclo_table(ctx, m)?;
    let otable = oracle.table(m)?;
    let mut report = VerifyReport {
        order: m,
        pairs_checked: m * m,
        ..Default::default()
    };
    // both sides are sparse with no explicit zeros, so comparing the entry
    // maps covers all m^2 pairs
    for ((i, j), c) in table.iter() {
        let theirs = otable.get(&(j, i)).copied().unwrap_or(0);
        if c != theirs {
            report.mismatches.push((i, j, c, theirs));
        }
    }
    for (&(j, i), &c) in &otable {
        if table.get(i, j) == 0 && c != 0 {
            report.mismatches.push((i, j, 0, c));
        }
    }
    let p = ctx.base().characteristic();
    let f_m = table.f_order();
    for j in 0..m {
        report.identity_checks += 1;
        let want = f_m - (j == 0) as u64;
        if table.row_sum(j) != want {
            report
                .identity_failures
                .push(format!("row {j} sums to {} wanted {want}", table.row_sum(j)));
        }
    }
    for ((i, j), c) in table.iter() {
        report.identity_checks += 3;
        let refl = table.get((m - i) % m, (j + m - i) % m);
        if refl != c {
            report
                .identity_failures
                .push(format!("reflection failed at ({i},{j})"));
        }
        let frob = table.get(crate::gf::mulmod(p, i, m), crate::gf::mulmod(p, j, m));
        if frob != c {
            report
                .identity_failures
                .push(format!("p-power invariance failed at ({i},{j})"));
        }
        if (p == 2 || f_m % 2 == 0) && table.get(j, i) != c {
            report
                .identity_failures
                .push(format!("symmetry failed at ({i},{j})"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Poly;

    fn gf27() -> CycloCtx {
        CycloCtx::with_poly(3, 3, &Poly::parse("1,0,2,1").unwrap()).unwrap()
    }

    #[test]
    fn gf27_counts() {
        let oracle = OracleField::build(&gf27(), DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(oracle.cyclo(13, 5, 1).unwrap(), 1);
        assert_eq!(oracle.cyclo(13, 0, 0).unwrap(), 1);
        assert_eq!(oracle.cyclo(13, 2, 1).unwrap(), 0);
    }

    #[test]
    fn gf25_order2() {
        let ctx = CycloCtx::new(5, 2).unwrap();
        let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(oracle.cyclo(2, 1, 0).unwrap(), 6);
        assert_eq!(oracle.cyclo(2, 0, 0).unwrap(), 5);
    }

    #[test]
    fn oracle_lines() {
        let ctx = CycloCtx::new(5, 4).unwrap();
        let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(
            oracle.line_set(1).unwrap(),
            ResidueSet::new(156, [0, 1, 23, 72, 88, 97])
        );
        let ctx = CycloCtx::with_poly(3, 6, &Poly::parse("2,1,1,1,2,0,1").unwrap()).unwrap();
        let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(
            oracle.line_set(2).unwrap(),
            ResidueSet::new(364, [0, 2, 90, 349])
        );
        // basis vectors always present
        for k in [5u64, 100, 200] {
            let s = oracle.line_set(k).unwrap();
            assert!(s.contains(0) && s.contains(k));
            assert_eq!(s.len(), 4);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = CycloCtx::new(5, 4).unwrap();
        assert!(matches!(
            OracleField::build(&ctx, 624).unwrap_err(),
            Error::OracleBudgetExceeded { order: 625, .. }
        ));
    }

    #[test]
    fn trivial_order_binary_values() {
        // order q^n - 1: every class is a singleton, counts are 0/1
        let ctx = gf27();
        let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
        let t = oracle.table(26).unwrap();
        assert!(t.values().all(|&c| c == 1));
        // row sums: f_m - delta_{0j} with f_m = 1
        let total: u64 = t.values().sum();
        assert_eq!(total, 25);
    }

    #[test]
    fn row_sums_from_oracle() {
        let ctx = CycloCtx::new(3, 4).unwrap();
        let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
        for m in [40u64, 8, 4, 2] {
            let t = oracle.table(m).unwrap();
            let f_m = 80 / m;
            for j in 0..m {
                let sum: u64 = (0..m).map(|i| t.get(&(j, i)).copied().unwrap_or(0)).sum();
                assert_eq!(sum, f_m - (j == 0) as u64, "m={m} row {j}");
            }
        }
    }

    #[test]
    fn parallel_table_matches_seq() {
        let ctx = CycloCtx::new(2, 10).unwrap();
        let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(oracle.table(1023).unwrap(), oracle.table_seq(1023).unwrap());
        assert_eq!(oracle.table(33).unwrap(), oracle.table_seq(33).unwrap());
    }

    #[test]
    fn verify_small_fields() {
        let report = verify_order(&gf27(), 13, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        assert_eq!(report.pairs_checked, 169);
        let ctx = CycloCtx::new(3, 5).unwrap();
        let report = verify_order(&ctx, 11, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(report.passed());
    }
}
