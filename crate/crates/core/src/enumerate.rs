//! Streaming enumeration of all ray partitions of a shape.
//!
//! Table indices are inserted in increasing `<`-order. Each new index either
//! opens a new block at the end of the block list (its minimum exceeds all
//! earlier minima, so R1 is preserved) or lands at a non-initial position of
//! an existing block (the first element stays the minimum, so R2 is
//! preserved). The index inserted at step `m` (1-based) therefore has exactly
//! `m` placements, every ray partition arises exactly once, and the total
//! count is `|k|!`.
//!
//! Enumeration is encoded by a choice vector: digit `m` ranges over `0..=m`
//! where `0` opens a new block and `c ≥ 1` selects the `c`-th non-initial
//! slot, counted block by block. Iteration is odometer-style over choice
//! vectors, so two runs emit the identical sequence, and work can be sharded
//! deterministically by fixing a prefix of the choice vector.

use thiserror::Error;

use crate::shape::{ClusterShape, TableIndex};

/// Guard for the factorial blow-up of full enumeration.
///
/// The default bound keeps accidental multi-hour runs opt-in: `12! ≈ 4.8·10^8`
/// already takes minutes, and every larger total is worse by a factor of the
/// total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_total: u32,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_total: 12 }
    }
}

impl EnumerationLimits {
    pub fn unbounded() -> Self {
        EnumerationLimits { max_total: u32::MAX }
    }

    pub fn check(&self, shape: &ClusterShape) -> Result<(), EnumerationError> {
        if shape.total() > self.max_total {
            return Err(EnumerationError::GuardExceeded {
                total: shape.total(),
                max_total: self.max_total,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("shape total {total} exceeds the enumeration guard {max_total}; raise the bound explicitly to proceed")]
    GuardExceeded { total: u32, max_total: u32 },
}

/// Blocks under construction during enumeration; each block is a `≺`-sequence.
pub(crate) type Blocks = Vec<Vec<TableIndex>>;

/// Where a placement choice put its index.
enum Placement {
    NewBlock,
    Inserted { block: usize, pos: usize },
}

/// Applies one placement choice for `index`: `0` opens a new block, `c ≥ 1`
/// inserts at the `c`-th non-initial slot counted across blocks in order.
fn apply_choice(blocks: &mut Blocks, index: TableIndex, choice: usize) -> Placement {
    if choice == 0 {
        blocks.push(vec![index]);
        return Placement::NewBlock;
    }
    let mut slot = choice - 1;
    for (b, block) in blocks.iter_mut().enumerate() {
        if slot < block.len() {
            block.insert(slot + 1, index);
            return Placement::Inserted {
                block: b,
                pos: slot + 1,
            };
        }
        slot -= block.len();
    }
    unreachable!("choice within radix");
}

fn undo_placement(blocks: &mut Blocks, placement: Placement) {
    match placement {
        Placement::NewBlock => {
            blocks.pop();
        }
        Placement::Inserted { block, pos } => {
            blocks[block].remove(pos);
        }
    }
}

/// Runs `f` on every ray partition of `shape`, in enumeration order,
/// continuing from the partial blocks built out of `indices[..depth]`.
fn visit_from<F: FnMut(&Blocks)>(
    indices: &[TableIndex],
    depth: usize,
    blocks: &mut Blocks,
    f: &mut F,
) {
    if depth == indices.len() {
        f(blocks);
        return;
    }
    let index = indices[depth];
    for choice in 0..=depth {
        let placement = apply_choice(blocks, index, choice);
        visit_from(indices, depth + 1, blocks, f);
        undo_placement(blocks, placement);
    }
}

/// Visits every ray partition of `shape` exactly once, in a deterministic
/// order, without materializing the collection.
pub(crate) fn visit_ray_partitions<F: FnMut(&Blocks)>(shape: &ClusterShape, mut f: F) {
    let indices: Vec<TableIndex> = shape.table_indices().collect();
    let mut blocks: Blocks = Vec::new();
    visit_from(&indices, 0, &mut blocks, &mut f);
}

/// All choice prefixes of length `depth`, in enumeration order. Restarting
/// [`visit_from`] on each prefix partitions the full enumeration into
/// independent shards whose outputs concatenate to the sequential order.
pub(crate) fn choice_prefixes(depth: usize) -> Vec<Vec<usize>> {
    let mut prefixes = vec![Vec::new()];
    for m in 0..depth {
        let mut next = Vec::with_capacity(prefixes.len() * (m + 1));
        for prefix in &prefixes {
            for choice in 0..=m {
                let mut extended = prefix.clone();
                extended.push(choice);
                next.push(extended);
            }
        }
        prefixes = next;
    }
    prefixes
}

/// Rebuilds the partial blocks described by a choice prefix.
pub(crate) fn blocks_of_prefix(indices: &[TableIndex], prefix: &[usize]) -> Blocks {
    let mut blocks = Blocks::new();
    for (m, &choice) in prefix.iter().enumerate() {
        apply_choice(&mut blocks, indices[m], choice);
    }
    blocks
}

/// Visits the ray partitions extending a given choice prefix.
pub(crate) fn visit_shard<F: FnMut(&Blocks)>(shape: &ClusterShape, prefix: &[usize], mut f: F) {
    let indices: Vec<TableIndex> = shape.table_indices().collect();
    let mut blocks = blocks_of_prefix(&indices, prefix);
    visit_from(&indices, prefix.len(), &mut blocks, &mut f);
}

/// Iterator over all ray partitions of a shape, in enumeration order.
pub struct RayPartitions {
    shape: ClusterShape,
    indices: Vec<TableIndex>,
    /// Next choice vector to emit; `None` once exhausted.
    choices: Option<Vec<usize>>,
}

impl Iterator for RayPartitions {
    type Item = crate::ray::RayPartition;

    fn next(&mut self) -> Option<Self::Item> {
        let choices = self.choices.as_mut()?;
        let mut blocks = Blocks::new();
        for (m, &choice) in choices.iter().enumerate() {
            apply_choice(&mut blocks, self.indices[m], choice);
        }
        let item = crate::ray::RayPartition::from_blocks(self.shape.clone(), blocks)
            .expect("insertion construction satisfies the ray axioms");
        // odometer increment: digit m has radix m+1
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                self.choices = None;
                break;
            }
            pos -= 1;
            if choices[pos] < pos {
                choices[pos] += 1;
                for later in choices.iter_mut().skip(pos + 1) {
                    *later = 0;
                }
                break;
            }
        }
        Some(item)
    }
}

/// Streams every ray partition of `shape` exactly once.
///
/// The caller is responsible for bounding `shape.total()`; the count is
/// exactly `|k|!`.
pub fn enumerate_ray_partitions(shape: &ClusterShape) -> RayPartitions {
    let indices: Vec<TableIndex> = shape.table_indices().collect();
    let choices = Some(vec![0; indices.len()]);
    RayPartitions {
        shape: shape.clone(),
        indices,
        choices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ray::RayPartition;

    fn shape(sizes: &[u32]) -> ClusterShape {
        ClusterShape::new(sizes.to_vec()).unwrap()
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product::<u64>().max(1)
    }

    #[test]
    fn single_index_shape() {
        let all: Vec<RayPartition> = enumerate_ray_partitions(&shape(&[1])).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].to_text(), "1.1");
    }

    #[test]
    fn two_singleton_clusters() {
        let all: Vec<String> = enumerate_ray_partitions(&shape(&[1, 1]))
            .map(|q| q.to_text())
            .collect();
        assert_eq!(all, vec!["1.1 | 2.1", "1.1 2.1"]);
    }

    #[test]
    fn counts_are_factorials() {
        for sizes in [
            vec![2u32, 1],
            vec![2, 2],
            vec![3, 1],
            vec![4],
            vec![1, 1, 1, 1],
            vec![3, 2, 1],
        ] {
            let s = shape(&sizes);
            let count = enumerate_ray_partitions(&s).count() as u64;
            assert_eq!(count, factorial(s.total() as u64), "shape {s}");
        }
    }

    #[test]
    fn empty_shape_has_one_partition() {
        let all: Vec<RayPartition> = enumerate_ray_partitions(&shape(&[])).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn iterator_matches_visitor() {
        let s = shape(&[2, 2]);
        let mut visited = Vec::new();
        visit_ray_partitions(&s, |blocks| visited.push(blocks.clone()));
        let iterated: Vec<_> = enumerate_ray_partitions(&s)
            .map(|q| q.blocks().to_vec())
            .collect();
        assert_eq!(visited, iterated);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let s = shape(&[2, 1, 1]);
        let first: Vec<String> = enumerate_ray_partitions(&s).map(|q| q.to_text()).collect();
        let second: Vec<String> = enumerate_ray_partitions(&s).map(|q| q.to_text()).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn shards_cover_enumeration_in_order() {
        let s = shape(&[2, 2]);
        let mut sequential = Vec::new();
        visit_ray_partitions(&s, |blocks| sequential.push(blocks.clone()));
        let mut sharded = Vec::new();
        for prefix in choice_prefixes(2) {
            visit_shard(&s, &prefix, |blocks| sharded.push(blocks.clone()));
        }
        assert_eq!(sequential, sharded);
    }

    #[test]
    fn guard_rejects_large_totals() {
        let limits = EnumerationLimits::default();
        assert!(limits.check(&shape(&[6, 6])).is_ok());
        assert_eq!(
            limits.check(&shape(&[7, 6])),
            Err(EnumerationError::GuardExceeded {
                total: 13,
                max_total: 12
            })
        );
        assert!(EnumerationLimits::unbounded().check(&shape(&[7, 7])).is_ok());
    }
}
