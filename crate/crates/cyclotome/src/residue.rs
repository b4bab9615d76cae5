//! Sorted residue sets in Z_v.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A set of residues in Z_v, stored strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ResidueSet {
    modulus: u64,
    members: Vec<u64>,
}

impl ResidueSet {
    /// Build from arbitrary input; members are reduced mod v, sorted and
    /// deduplicated.
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> ResidueSet {
        assert!(modulus > 0);
        let mut members: Vec<u64> = members.into_iter().map(|m| m % modulus).collect();
        members.sort_unstable();
        members.dedup();
        ResidueSet { modulus, members }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&(x % self.modulus)).is_ok()
    }

    /// {(s + t) mod v}; t may be negative.
    pub fn translate(&self, t: i64) -> ResidueSet {
        let v = self.modulus;
        let shift = t.rem_euclid(v as i64) as u64;
        let mut members: Vec<u64> = self
            .members
            .iter()
            .map(|&s| {
                let x = s + shift;
                if x >= v {
                    x - v
                } else {
                    x
                }
            })
            .collect();
        members.sort_unstable();
        ResidueSet {
            modulus: v,
            members,
        }
    }

    /// Intersection by linear merge; moduli must agree.
    pub fn intersect(&self, other: &ResidueSet) -> ResidueSet {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        ResidueSet {
            modulus: self.modulus,
            members: out,
        }
    }

    /// {(g * s) mod v}, re-sorted.
    pub fn scale(&self, g: u64) -> ResidueSet {
        let v = self.modulus;
        ResidueSet::new(
            v,
            self.members
                .iter()
                .map(|&s| ((g as u128 * s as u128) % v as u128) as u64),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("residue set serializes")
    }

    pub fn from_json(s: &str) -> Result<ResidueSet> {
        let rs: ResidueSet =
            serde_json::from_str(s).map_err(|e| Error::InvalidParams(e.to_string()))?;
        if rs.modulus == 0 || rs.members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("unsorted or invalid residue set".into()));
        }
        if rs.members.iter().any(|&m| m >= rs.modulus) {
            return Err(Error::InvalidParams("member exceeds modulus".into()));
        }
        Ok(rs)
    }
}

impl fmt::Display for ResidueSet {
    /// `{0,1,5,11} mod 13`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}} mod {}", strs.join(","), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_examples() {
        let i = ResidueSet::new(13, [0, 1, 5, 11]);
        assert_eq!(i.translate(-1).members(), &[0, 4, 10, 12]);
        assert_eq!(i.translate(-11).members(), &[0, 2, 3, 7]);
        assert_eq!(i.translate(0), i);
        assert_eq!(i.translate(13), i);
        assert_eq!(i.translate(-26), i);
    }

    #[test]
    fn intersect_merge() {
        let a = ResidueSet::new(40, [0, 1, 2, 8, 16, 18, 23, 25, 28, 29, 34, 37, 38]);
        let b = a.translate(-1);
        assert_eq!(a.intersect(&b).members(), &[0, 1, 28, 37]);
    }

    #[test]
    fn scale_wraps() {
        let s = ResidueSet::new(364, [0, 2, 5, 6]);
        assert_eq!(s.scale(28).members(), &[0, 56, 140, 168]);
    }

    #[test]
    fn json_round_trip() {
        let s = ResidueSet::new(21, [0, 1, 4, 14, 16]);
        let j = s.to_json();
        assert_eq!(j, r#"{"modulus":21,"members":[0,1,4,14,16]}"#);
        assert_eq!(ResidueSet::from_json(&j).unwrap(), s);
        assert!(ResidueSet::from_json(r#"{"modulus":5,"members":[7]}"#).is_err());
    }
}
