use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer partition with weakly decreasing positive parts.
///
/// Trailing zeros are implicit and never stored, so every partition has one
/// representation. Ordering is lexicographic on the parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parts {0:?} are not weakly decreasing")]
pub struct NotAPartition(pub Vec<u32>);

impl Partition {
    /// Builds a partition from weakly decreasing parts; zero parts are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self, NotAPartition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(NotAPartition(parts));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `k` parts.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero past the stored parts.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn largest_part(&self) -> u32 {
        self.part(0)
    }

    /// Whether this partition lies in `Λ(|λ|, r)`, i.e. every part is at most `r`.
    pub fn fits_rank(&self, r: usize) -> bool {
        self.largest_part() as usize <= r
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let cols = self.largest_part();
        let parts = (1..=cols)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// All partitions of `k` with parts at most `max_part`, lexicographically decreasing.
    pub fn enumerate(k: u32, max_part: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill(k, max_part.min(k), &mut current, &mut out);
        out
    }

    /// Partition whose multiplicity of `i + 1` is `multiplicities[i]`.
    pub fn from_multiplicities(multiplicities: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &m) in multiplicities.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, m as usize));
        }
        Partition(parts)
    }

    /// Inverse of [`Partition::from_multiplicities`], padded to `slots` entries.
    pub fn multiplicities(&self, slots: usize) -> Vec<u32> {
        let mut m = vec![0; slots.max(self.largest_part() as usize)];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = NotAPartition;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
