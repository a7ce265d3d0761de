//! Ray partitions of an index table, their weights, statistics and component
//! labels.
//!
//! A ray partition splits the table of a [`ClusterShape`] into ordered blocks
//! ("rays"). Two axioms pin the representation down:
//!
//! - **R1** — blocks are listed so that their `<`-minima strictly increase;
//! - **R2** — each block's internal sequence starts at its `<`-minimum.
//!
//! Block internal order is stored as an explicit sequence; R2 is checked, not
//! enforced silently, so that validation failures surface as structured
//! errors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shape::{ClusterShape, TableIndex};
use crate::unionfind::UnionFind;

/// Structured rejection for raw block data that is not a ray partition.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayPartitionError {
    #[error("index {index} does not lie in the table of shape {shape}")]
    IndexOutOfShape { shape: ClusterShape, index: TableIndex },
    #[error("blocks do not partition the table: {detail}")]
    NotAPartition { detail: String },
    #[error("R1 violated: min of block {block} is not larger than min of block {previous}")]
    R1Violation { block: usize, previous: usize },
    #[error("R2 violated: first element {first} of block {block} is not its minimum {min}")]
    R2Violation {
        block: usize,
        first: TableIndex,
        min: TableIndex,
    },
    #[error("ray partition text form `{input}` is malformed")]
    UnparseableText { input: String },
}

/// A ray partition of the table of `shape`: ordered blocks, each an ordered
/// sequence of table indices, satisfying R1 and R2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RayPartition {
    shape: ClusterShape,
    blocks: Vec<Vec<TableIndex>>,
}

impl RayPartition {
    /// Validates raw block data against the partition and ray axioms.
    pub fn from_blocks(
        shape: ClusterShape,
        blocks: Vec<Vec<TableIndex>>,
    ) -> Result<Self, RayPartitionError> {
        let mut seen = vec![false; shape.total() as usize];
        let flat_index = |index: TableIndex| -> usize {
            let mut offset = 0usize;
            for &k in &shape.sizes()[..index.cluster as usize - 1] {
                offset += k as usize;
            }
            offset + index.position as usize - 1
        };
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(RayPartitionError::NotAPartition {
                    detail: format!("block {} is empty", b + 1),
                });
            }
            for &index in block {
                if !shape.contains(index) {
                    return Err(RayPartitionError::IndexOutOfShape {
                        shape: shape.clone(),
                        index,
                    });
                }
                let flat = flat_index(index);
                if seen[flat] {
                    return Err(RayPartitionError::NotAPartition {
                        detail: format!("index {index} occurs twice"),
                    });
                }
                seen[flat] = true;
            }
        }
        if let Some(flat) = seen.iter().position(|&s| !s) {
            let index = shape.table_indices().nth(flat).expect("flat index in range");
            return Err(RayPartitionError::NotAPartition {
                detail: format!("index {index} is missing"),
            });
        }
        for (b, block) in blocks.iter().enumerate() {
            let min = *block.iter().min().expect("block is nonempty");
            if block[0] != min {
                return Err(RayPartitionError::R2Violation {
                    block: b + 1,
                    first: block[0],
                    min,
                });
            }
        }
        for b in 1..blocks.len() {
            if blocks[b][0] <= blocks[b - 1][0] {
                return Err(RayPartitionError::R1Violation {
                    block: b + 1,
                    previous: b,
                });
            }
        }
        Ok(RayPartition { shape, blocks })
    }

    pub fn shape(&self) -> &ClusterShape {
        &self.shape
    }

    /// The blocks in R1 order; each block is its `≺`-sequence.
    pub fn blocks(&self) -> &[Vec<TableIndex>] {
        &self.blocks
    }

    /// Length `l(Q)`: the number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The weight `ω(Q)`: block sizes in block order.
    pub fn weight(&self) -> WeightVector {
        WeightVector::new(self.blocks.iter().map(|b| b.len() as u32).collect())
    }

    /// Agility `a(Q)`: the number of classes of blocks under the equivalence
    /// generated by "the two blocks intersect a common cluster".
    pub fn agility(&self) -> usize {
        agility_of_blocks(&self.shape, &self.blocks)
    }

    /// The component label `Σ(Q)` read off the stacked order `Q_l, ..., Q_1`.
    ///
    /// Meaningful for `q = 1`, where a configuration can only witness ray
    /// partitions carrying its own component label; it is defined (and
    /// computed) for every ray partition regardless of `q`.
    pub fn sigma(&self) -> ComponentLabel {
        sigma_of_blocks(&self.shape, &self.blocks)
    }

    /// Degree of the dual class of this ray partition:
    /// `p·(r − a(Q)) + (q−1)·(|k| − l(Q))`.
    pub fn degree(&self, p: u32, q: u32) -> u64 {
        assert!(q >= 1, "q must be at least 1");
        degree_of(
            &self.shape,
            self.blocks.len(),
            self.agility(),
            p,
            q,
        )
    }

    /// Full statistics for given ambient split `(p, q)`.
    pub fn stats(&self, p: u32, q: u32) -> RayPartitionStats {
        assert!(q >= 1, "q must be at least 1");
        let length = self.blocks.len();
        let agility = self.agility();
        let degree = degree_of(&self.shape, length, agility, p, q);
        let stratum_dim = self.shape.total() as u64
            + p as u64 * agility as u64
            + (q as u64 - 1) * length as u64;
        RayPartitionStats {
            length,
            agility,
            weight: self.weight(),
            sigma: self.sigma(),
            degree,
            stratum_dim,
        }
    }

    /// Canonical text form: blocks separated by `|`, indices as `i.j`,
    /// e.g. `1.1 2.1 | 1.2`.
    pub fn to_text(&self) -> String {
        self.blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|index| index.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// Parses the canonical text form and validates the result.
    pub fn parse(shape: ClusterShape, text: &str) -> Result<Self, RayPartitionError> {
        let malformed = || RayPartitionError::UnparseableText {
            input: text.to_string(),
        };
        let mut blocks = Vec::new();
        for chunk in text.split('|') {
            let mut block = Vec::new();
            for token in chunk.split_whitespace() {
                let (i, j) = token.split_once('.').ok_or_else(malformed)?;
                let cluster: u32 = i.parse().map_err(|_| malformed())?;
                let position: u32 = j.parse().map_err(|_| malformed())?;
                block.push(TableIndex::new(cluster, position));
            }
            blocks.push(block);
        }
        RayPartition::from_blocks(shape, blocks)
    }
}

impl fmt::Display for RayPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn agility_of_blocks(shape: &ClusterShape, blocks: &[Vec<TableIndex>]) -> usize {
    let mut uf = UnionFind::new(blocks.len());
    let mut first_block: Vec<Option<usize>> = vec![None; shape.r()];
    for (b, block) in blocks.iter().enumerate() {
        for index in block {
            let cluster = index.cluster as usize - 1;
            match first_block[cluster] {
                Some(other) => uf.union(b, other),
                None => first_block[cluster] = Some(b),
            }
        }
    }
    uf.class_count()
}

pub(crate) fn sigma_of_blocks(shape: &ClusterShape, blocks: &[Vec<TableIndex>]) -> ComponentLabel {
    let mut perms: Vec<Vec<u32>> = shape
        .sizes()
        .iter()
        .map(|&k| Vec::with_capacity(k as usize))
        .collect();
    for block in blocks.iter().rev() {
        for index in block {
            perms[index.cluster as usize - 1].push(index.position);
        }
    }
    ComponentLabel { perms }
}

pub(crate) fn degree_of(
    shape: &ClusterShape,
    length: usize,
    agility: usize,
    p: u32,
    q: u32,
) -> u64 {
    p as u64 * (shape.r() - agility) as u64
        + (q as u64 - 1) * (shape.total() as u64 - length as u64)
}

/// Sizes of the blocks of a ray partition, compared in the lexicographic
/// order inherited from right-padding with zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    pub fn new(entries: Vec<u32>) -> Self {
        WeightVector { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Lexicographic comparison after zero-padding; only meaningful between
    /// vectors of equal total (see [`compare_weights`]).
    pub(crate) fn lex_cmp(&self, other: &WeightVector) -> Ordering {
        let len = self.entries.len().max(other.entries.len());
        for i in 0..len {
            let a = self.entries.get(i).copied().unwrap_or(0);
            let b = other.entries.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                non_eq => return non_eq,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Error raised when comparing weights of different totals.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("weights have different totals {left} and {right}")]
    TotalMismatch { left: u32, right: u32 },
}

/// Compares two weight vectors of the same total in the lexicographic order
/// on zero-padded sequences.
pub fn compare_weights(a: &WeightVector, b: &WeightVector) -> Result<Ordering, WeightError> {
    let (left, right) = (a.total(), b.total());
    if left != right {
        return Err(WeightError::TotalMismatch { left, right });
    }
    Ok(a.lex_cmp(b))
}

/// A tuple `(σ_1, ..., σ_r)` of permutations, `σ_i` acting on `{1, ..., k_i}`.
///
/// `σ_i` is stored as its sequence of images: `perms[i-1][j-1] = σ_i(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentLabel {
    perms: Vec<Vec<u32>>,
}

impl ComponentLabel {
    /// Validates that each entry is a permutation of `{1, ..., k_i}` for the
    /// given shape.
    pub fn new(shape: &ClusterShape, perms: Vec<Vec<u32>>) -> Option<Self> {
        if perms.len() != shape.r() {
            return None;
        }
        for (i, perm) in perms.iter().enumerate() {
            let k = shape.sizes()[i] as usize;
            if perm.len() != k {
                return None;
            }
            let mut seen = vec![false; k];
            for &image in perm {
                if image < 1 || image as usize > k || seen[image as usize - 1] {
                    return None;
                }
                seen[image as usize - 1] = true;
            }
        }
        Some(ComponentLabel { perms })
    }

    /// The identity tuple for a shape.
    pub fn identity(shape: &ClusterShape) -> Self {
        ComponentLabel {
            perms: shape.sizes().iter().map(|&k| (1..=k).collect()).collect(),
        }
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn is_identity(&self) -> bool {
        self.perms
            .iter()
            .all(|perm| perm.iter().enumerate().all(|(j, &im)| im == j as u32 + 1))
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perms
            .iter()
            .map(|perm| {
                let images: Vec<String> = perm.iter().map(|v| v.to_string()).collect();
                format!("({})", images.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Summary statistics of a ray partition for a fixed ambient split `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayPartitionStats {
    /// Number of blocks `l(Q)`.
    pub length: usize,
    /// Number of block classes under cluster sharing, `a(Q)`.
    pub agility: usize,
    /// Block sizes in order.
    pub weight: WeightVector,
    /// Component label from the stacked order.
    pub sigma: ComponentLabel,
    /// Cohomological degree of the dual class.
    pub degree: u64,
    /// Dimension of the stratum: `|k| + p·a(Q) + (q−1)·l(Q)`.
    pub stratum_dim: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(sizes: &[u32]) -> ClusterShape {
        ClusterShape::new(sizes.to_vec()).unwrap()
    }

    fn idx(i: u32, j: u32) -> TableIndex {
        TableIndex::new(i, j)
    }

    #[test]
    fn validate_accepts_valid_partition() {
        let q = RayPartition::from_blocks(
            shape(&[2, 1]),
            vec![vec![idx(1, 1), idx(2, 1)], vec![idx(1, 2)]],
        )
        .unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.to_text(), "1.1 2.1 | 1.2");
    }

    #[test]
    fn validate_rejects_r2_violation() {
        let err = RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 2), idx(1, 1)]])
            .unwrap_err();
        assert_eq!(
            err,
            RayPartitionError::R2Violation {
                block: 1,
                first: idx(1, 2),
                min: idx(1, 1),
            }
        );
    }

    #[test]
    fn validate_rejects_r1_violation() {
        let err = RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 2)], vec![idx(1, 1)]])
            .unwrap_err();
        assert_eq!(
            err,
            RayPartitionError::R1Violation {
                block: 2,
                previous: 1
            }
        );
    }

    #[test]
    fn validate_rejects_partition_defects() {
        assert!(matches!(
            RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 1)]]),
            Err(RayPartitionError::NotAPartition { .. })
        ));
        assert!(matches!(
            RayPartition::from_blocks(
                shape(&[2]),
                vec![vec![idx(1, 1), idx(1, 2)], vec![idx(1, 2)]]
            ),
            Err(RayPartitionError::NotAPartition { .. })
        ));
        assert!(matches!(
            RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 1), idx(1, 2)], vec![]]),
            Err(RayPartitionError::NotAPartition { .. })
        ));
        assert!(matches!(
            RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 1), idx(1, 2), idx(3, 1)]]),
            Err(RayPartitionError::IndexOutOfShape { .. })
        ));
    }

    #[test]
    fn stats_worked_example() {
        // shape (2,1), Q = [[1.1, 2.1], [1.2]], p = 1, q = 2
        let q = RayPartition::from_blocks(
            shape(&[2, 1]),
            vec![vec![idx(1, 1), idx(2, 1)], vec![idx(1, 2)]],
        )
        .unwrap();
        let stats = q.stats(1, 2);
        assert_eq!(stats.length, 2);
        assert_eq!(stats.agility, 1); // both blocks touch cluster 1
        assert_eq!(stats.weight, WeightVector::new(vec![2, 1]));
        assert_eq!(stats.degree, 2); // 1·(2−1) + 1·(3−2)
        assert_eq!(stats.stratum_dim, 6); // 3 + 1·1 + 1·2
        assert_eq!(stats.degree + stats.stratum_dim, 1 * 2 + 2 * 3);
        assert_eq!(stats.sigma.perms(), &[vec![2, 1], vec![1]]);
    }

    #[test]
    fn sigma_of_single_block_is_identity() {
        let q =
            RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 1), idx(1, 2)]]).unwrap();
        assert!(q.sigma().is_identity());
        assert_eq!(q.degree(5, 1), 0);
    }

    #[test]
    fn sigma_of_stacked_singletons_is_transposition() {
        // Q_2's element precedes Q_1's in the stacked order.
        let q = RayPartition::from_blocks(shape(&[2]), vec![vec![idx(1, 1)], vec![idx(1, 2)]])
            .unwrap();
        assert_eq!(q.sigma().perms(), &[vec![2, 1]]);
        assert_eq!(q.agility(), 1);
        assert_eq!(q.degree(7, 1), 0); // p·(1−1)
    }

    #[test]
    fn compare_weights_examples() {
        let cmp = |a: &[u32], b: &[u32]| {
            compare_weights(&WeightVector::new(a.to_vec()), &WeightVector::new(b.to_vec()))
        };
        assert_eq!(cmp(&[3], &[2, 1]), Ok(Ordering::Greater));
        assert_eq!(cmp(&[1, 2], &[1, 1, 1]), Ok(Ordering::Greater));
        assert_eq!(cmp(&[2, 1], &[2, 1]), Ok(Ordering::Equal));
        assert_eq!(
            cmp(&[2], &[3]),
            Err(WeightError::TotalMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn text_form_round_trip() {
        let q = RayPartition::parse(shape(&[2, 1]), "1.1 2.1 | 1.2").unwrap();
        assert_eq!(q.to_text(), "1.1 2.1 | 1.2");
        assert!(RayPartition::parse(shape(&[2, 1]), "1.1 2x1 | 1.2").is_err());
    }

    #[test]
    fn component_label_validation() {
        let s = shape(&[2, 1]);
        assert!(ComponentLabel::new(&s, vec![vec![2, 1], vec![1]]).is_some());
        assert!(ComponentLabel::new(&s, vec![vec![2, 2], vec![1]]).is_none());
        assert!(ComponentLabel::new(&s, vec![vec![1, 2]]).is_none());
        assert!(ComponentLabel::identity(&s).is_identity());
        assert_eq!(ComponentLabel::identity(&s).to_string(), "(1,2);(1)");
    }

    fn weight_strategy(total: u32) -> impl Strategy<Value = WeightVector> {
        // random composition of `total`
        proptest::collection::vec(1..=total, 0..total as usize)
            .prop_map(move |cuts| {
                let mut remaining = total;
                let mut entries = Vec::new();
                for c in cuts {
                    if remaining == 0 {
                        break;
                    }
                    let part = c.min(remaining);
                    entries.push(part);
                    remaining -= part;
                }
                if remaining > 0 {
                    entries.push(remaining);
                }
                WeightVector::new(entries)
            })
    }

    proptest! {
        #[test]
        fn weight_order_is_total(
            a in weight_strategy(9),
            b in weight_strategy(9),
            c in weight_strategy(9),
        ) {
            let ab = compare_weights(&a, &b).unwrap();
            let ba = compare_weights(&b, &a).unwrap();
            prop_assert_eq!(ab, ba.reverse());
            // trichotomy: equality iff structural equality of entries
            prop_assert_eq!(ab == Ordering::Equal, a.entries() == b.entries());
            // transitivity
            let bc = compare_weights(&b, &c).unwrap();
            let ac = compare_weights(&a, &c).unwrap();
            if ab == bc {
                prop_assert_eq!(ac, ab.then(bc));
            }
            if ab == Ordering::Equal {
                prop_assert_eq!(ac, bc);
            }
            if bc == Ordering::Equal {
                prop_assert_eq!(ac, ab);
            }
        }
    }
}
