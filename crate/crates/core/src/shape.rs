//! Cluster shapes and the table of indices attached to them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when building a [`ClusterShape`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    /// Cluster sizes must be at least 1.
    #[error("cluster {index} has size 0; cluster sizes must be at least 1")]
    ZeroClusterSize { index: usize },
    /// A shape string did not parse as comma-separated positive integers.
    #[error("invalid shape `{input}`: expected comma-separated positive integers")]
    Unparseable { input: String },
}

/// The tuple of cluster sizes `(k_1, ..., k_r)`, each at least 1.
///
/// The shape determines the index table: cluster `i` carries positions
/// `1..=k_i`. The empty shape (no clusters) is allowed; its configuration
/// space is a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClusterShape {
    sizes: Vec<u32>,
}

impl ClusterShape {
    pub fn new(sizes: Vec<u32>) -> Result<Self, ShapeError> {
        if let Some(index) = sizes.iter().position(|&k| k == 0) {
            return Err(ShapeError::ZeroClusterSize { index });
        }
        Ok(ClusterShape { sizes })
    }

    /// Number of clusters `r`.
    pub fn r(&self) -> usize {
        self.sizes.len()
    }

    /// Total number of points `|k| = k_1 + ... + k_r`.
    pub fn total(&self) -> u32 {
        self.sizes.iter().sum()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Size of cluster `i` (1-based).
    pub fn size_of(&self, cluster: u32) -> u32 {
        self.sizes[cluster as usize - 1]
    }

    /// Multiplicity `r(k)`: how many clusters have size exactly `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.sizes.iter().filter(|&&s| s == k).count()
    }

    /// The distinct cluster sizes occurring in the shape, ascending.
    pub fn distinct_sizes(&self) -> Vec<u32> {
        let mut out = self.sizes.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All table indices `(i, j)` in increasing lexicographic order.
    pub fn table_indices(&self) -> impl Iterator<Item = TableIndex> + '_ {
        self.sizes.iter().enumerate().flat_map(|(i, &k)| {
            (1..=k).map(move |j| TableIndex {
                cluster: i as u32 + 1,
                position: j,
            })
        })
    }

    /// Whether `(i, j)` lies inside the table of this shape.
    pub fn contains(&self, index: TableIndex) -> bool {
        index.cluster >= 1
            && (index.cluster as usize) <= self.sizes.len()
            && index.position >= 1
            && index.position <= self.size_of(index.cluster)
    }
}

impl fmt::Display for ClusterShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ClusterShape {
    type Err = ShapeError;

    /// Parses `"2,2,1"` style shape strings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return ClusterShape::new(Vec::new());
        }
        let sizes: Result<Vec<u32>, _> = trimmed.split(',').map(|p| p.trim().parse()).collect();
        match sizes {
            Ok(sizes) if !sizes.iter().any(|&k| k == 0) => ClusterShape::new(sizes),
            _ => Err(ShapeError::Unparseable {
                input: s.to_string(),
            }),
        }
    }
}

/// One cell `(i, j)` of the index table: point `j` of cluster `i`, 1-based.
///
/// The derived ordering is the lexicographic one: `(i, j) < (i', j')` iff
/// `i < i'`, or `i = i'` and `j < j'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TableIndex {
    pub cluster: u32,
    pub position: u32,
}

impl TableIndex {
    pub fn new(cluster: u32, position: u32) -> Self {
        TableIndex { cluster, position }
    }
}

impl fmt::Display for TableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.cluster, self.position)
    }
}
