//! Exponent vectors: finitely supported multiplicities over generator
//! indices. The vector `{k₁: m₁, k₂: m₂, …}` denotes the element
//! `m₁·a_{k₁} + m₂·a_{k₂} + …` of the liken generated by `(a_k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Sparse map from 1-based generator index to a strictly positive
/// multiplicity. The empty map is the zero vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVec {
    entries: BTreeMap<u32, u32>,
}

impl ExponentVec {
    pub fn zero() -> ExponentVec {
        ExponentVec::default()
    }

    /// The unit vector `e_k`.
    pub fn unit(k: u32) -> ExponentVec {
        assert!(k >= 1, "generator indices are 1-based");
        let mut entries = BTreeMap::new();
        entries.insert(k, 1);
        ExponentVec { entries }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, u32)>) -> ExponentVec {
        let mut map = BTreeMap::new();
        for (k, m) in entries {
            assert!(k >= 1 && m >= 1, "entries must have index ≥ 1 and multiplicity ≥ 1");
            *map.entry(k).or_insert(0) += m;
        }
        ExponentVec { entries: map }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: u32) -> u32 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    /// Largest index in the support, if any.
    pub fn max_index(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.iter().map(|(&k, &m)| (k, m))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Σ multiplicities; 1 exactly for unit vectors.
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.entries.len() == 1 && *self.entries.values().next().unwrap() == 1
    }

    /// Self plus `e_k`.
    pub fn bumped(&self, k: u32) -> ExponentVec {
        let mut entries = self.entries.clone();
        *entries.entry(k).or_insert(0) += 1;
        ExponentVec { entries }
    }

    /// Self minus `e_k`; panics if `k` is not in the support.
    pub fn decremented(&self, k: u32) -> ExponentVec {
        let mut entries = self.entries.clone();
        match entries.get_mut(&k) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                entries.remove(&k);
            }
            None => panic!("decrement of index {k} outside support"),
        }
        ExponentVec { entries }
    }

    pub fn supports_disjoint(&self, other: &ExponentVec) -> bool {
        // Both supports are sorted; walk them together.
        let mut a = self.entries.keys().peekable();
        let mut b = other.entries.keys().peekable();
        while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl FromIterator<(u32, u32)> for ExponentVec {
    fn from_iter<T: IntoIterator<Item = (u32, u32)>>(iter: T) -> Self {
        ExponentVec::from_entries(iter)
    }
}

// Textual form: "k1^m1*k2^m2" with indices increasing; "0" for the zero vector.
impl fmt::Display for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, m) in &self.entries {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{k}^{m}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed exponent vector {0:?}")]
pub struct ParseExponentVecError(pub String);

impl FromStr for ExponentVec {
    type Err = ParseExponentVecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseExponentVecError(s.to_string());
        if s == "0" {
            return Ok(ExponentVec::zero());
        }
        let mut entries = BTreeMap::new();
        for part in s.split('*') {
            let (k, m) = part.split_once('^').ok_or_else(bad)?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            let m: u32 = m.trim().parse().map_err(|_| bad())?;
            if k == 0 || m == 0 || entries.insert(k, m).is_some() {
                return Err(bad());
            }
        }
        Ok(ExponentVec { entries })
    }
}

impl serde::Serialize for ExponentVec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ExponentVec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
