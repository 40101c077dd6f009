use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Path of 1-based child indices from the root; the empty path is the root.
///
/// The derived ordering is lexicographic on the path, which coincides with
/// preorder position inside one tree.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GornAddress(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed Gorn address {0:?}")]
pub struct AddressParseError(pub String);

impl GornAddress {
    pub fn root() -> Self {
        GornAddress(Vec::new())
    }

    /// Builds an address from 1-based indices. Zero indices are rejected.
    pub fn from_indices(indices: &[u32]) -> Option<Self> {
        if indices.contains(&0) {
            None
        } else {
            Some(GornAddress(indices.to_vec()))
        }
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Address of the `i`-th child (1-based).
    pub fn child(&self, i: u32) -> Self {
        debug_assert!(i >= 1);
        let mut v = self.0.clone();
        v.push(i);
        GornAddress(v)
    }

    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(GornAddress(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Concatenates two paths: `self` followed by `rest`.
    pub fn join(&self, rest: &GornAddress) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&rest.0);
        GornAddress(v)
    }

    pub fn is_prefix_of(&self, other: &GornAddress) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for GornAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GornAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GornAddress {
    type Err = AddressParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "e" {
            return Ok(GornAddress::root());
        }
        let err = || AddressParseError(s.to_string());
        let mut v = Vec::new();
        for part in s.split('.') {
            let i: u32 = part.parse().map_err(|_| err())?;
            if i == 0 {
                return Err(err());
            }
            v.push(i);
        }
        Ok(GornAddress(v))
    }
}
