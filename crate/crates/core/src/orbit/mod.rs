//! Separable maximal ideals of `K[t_1, ..., t_n]`, the shift action, breaks
//! and orbit invariants.

mod ideal;
mod info;
mod residue;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value as Json};

use crate::error::{Error, Result};

pub use ideal::{Arity, SepMaxIdeal};
pub use info::{canonical_skeleton_rep, orbit_info, region_of, OrbitInfo, OrbitKind, Tau};
pub use residue::ResidueField;

/// Finitely supported integer vector; zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ShiftVector(BTreeMap<usize, i64>);

impl ShiftVector {
    pub fn zero() -> Self {
        ShiftVector(BTreeMap::new())
    }

    pub fn unit(i: usize) -> Self {
        ShiftVector::from_pairs(&[(i, 1)])
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        let mut v = ShiftVector::zero();
        for &(i, x) in pairs {
            v.set(i, v.get(i) + x);
        }
        v
    }

    /// Dense constructor: `entries[k]` is the value at index `k + 1`.
    pub fn dense(entries: &[i64]) -> Self {
        let mut v = ShiftVector::zero();
        for (k, &x) in entries.iter().enumerate() {
            v.set(k + 1, x);
        }
        v
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, x: i64) {
        if x == 0 {
            self.0.remove(&i);
        } else {
            self.0.insert(i, x);
        }
    }

    pub fn with(&self, i: usize, x: i64) -> Self {
        let mut v = self.clone();
        v.set(i, x);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&i, &x)| (i, x))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn max_index(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &ShiftVector) -> ShiftVector {
        let mut v = self.clone();
        for (i, x) in o.iter() {
            v.set(i, v.get(i) + x);
        }
        v
    }

    pub fn neg(&self) -> ShiftVector {
        ShiftVector(self.0.iter().map(|(&i, &x)| (i, -x)).collect())
    }

    pub fn sub(&self, o: &ShiftVector) -> ShiftVector {
        self.add(&o.neg())
    }

    /// Step by `delta` in coordinate `i`.
    pub fn step(&self, i: usize, delta: i64) -> ShiftVector {
        self.with(i, self.get(i) + delta)
    }

    /// Compact key `1:3,4:-2`; the zero vector is the empty string.
    pub fn key(&self) -> String {
        self.iter().map(|(i, x)| format!("{}:{}", i, x)).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(s: &str) -> Result<ShiftVector> {
        let mut v = ShiftVector::zero();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (i, x) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("bad weight key {:?}", s)))?;
            let i: usize = i.trim().parse().map_err(|_| Error::InvalidInput(format!("bad index in {:?}", s)))?;
            let x: i64 = x.trim().parse().map_err(|_| Error::InvalidInput(format!("bad entry in {:?}", s)))?;
            if i == 0 {
                return Err(Error::InvalidInput("indices start at 1".into()));
            }
            v.set(i, v.get(i) + x);
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Json {
        Json::Object(self.iter().map(|(i, x)| (i.to_string(), Json::from(x))).collect::<Map<_, _>>())
    }

    /// Accepts an object `{"1": 3}` or a key string `"1:3"`.
    pub fn from_json(j: &Json) -> Result<ShiftVector> {
        if let Some(s) = j.as_str() {
            return ShiftVector::parse_key(s);
        }
        let obj = j
            .as_object()
            .ok_or_else(|| Error::InvalidInput("shift vector must be an object or a key string".into()))?;
        let mut v = ShiftVector::zero();
        for (k, x) in obj {
            let i: usize = k.parse().map_err(|_| Error::InvalidInput(format!("bad index {:?}", k)))?;
            if i == 0 {
                return Err(Error::InvalidInput("indices start at 1".into()));
            }
            let x = x.as_i64().ok_or_else(|| Error::InvalidInput(format!("entry at {} must be an integer", k)))?;
            v.set(i, x);
        }
        Ok(v)
    }
}

impl fmt::Debug for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// Lexicographic on the dense vectors (index 1 first).
impl Ord for ShiftVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut keys: Vec<usize> = self.0.keys().chain(other.0.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for i in keys {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ShiftVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros() {
        let v = ShiftVector::from_pairs(&[(1, 2), (1, -2), (3, 1)]);
        assert_eq!(v, ShiftVector::unit(3));
        assert_eq!(v.key(), "3:1");
        assert_eq!(ShiftVector::parse_key("").unwrap(), ShiftVector::zero());
        assert_eq!(ShiftVector::parse_key("1:3,4:-2").unwrap(), ShiftVector::from_pairs(&[(1, 3), (4, -2)]));
    }

    #[test]
    fn ordering_is_dense_lexicographic() {
        let a = ShiftVector::dense(&[-1, 5]);
        let b = ShiftVector::dense(&[0, -3]);
        let c = ShiftVector::dense(&[0, 0]);
        assert!(a < b && b < c);
    }
}
