//! Global invariants of a configuration space: dimension, orientability and
//! path-component counts.

use num::BigUint;
use serde::Serialize;

use crate::shape::ClusterShape;

/// Dimension, orientability and component counts for the spaces attached to
/// a shape and an ambient split `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceProfile {
    pub shape: ClusterShape,
    pub p: u32,
    pub q: u32,
    /// Dimension of both the ordered and the unordered space: `p·r + q·|k|`.
    pub dimension: u64,
    /// Orientability of the unordered space (the ordered one is always
    /// orientable).
    pub unordered_orientable: bool,
    /// Number of path components of the ordered space.
    pub ordered_components: BigUint,
    /// Number of path components of the unordered space.
    pub unordered_components: BigUint,
}

pub(crate) fn factorial(n: u32) -> BigUint {
    let mut out = BigUint::from(1u32);
    for i in 2..=n {
        out *= BigUint::from(i);
    }
    out
}

/// Computes the [`SpaceProfile`] of a shape for a given split `(p, q)`,
/// `q ≥ 1`.
///
/// The unordered space is non-orientable exactly when `q ≥ 3` is odd and some
/// cluster has size at least 2, or when `p + q ≥ 2` and some size `k` with
/// `p + q·k` odd occurs at least twice.
pub fn space_profile(shape: &ClusterShape, p: u32, q: u32) -> SpaceProfile {
    assert!(q >= 1, "q must be at least 1");
    let dimension = p as u64 * shape.r() as u64 + q as u64 * shape.total() as u64;

    let swap_in_cluster = q >= 3 && q % 2 == 1 && shape.sizes().iter().any(|&k| k >= 2);
    let swap_clusters = p + q >= 2
        && shape
            .distinct_sizes()
            .iter()
            .any(|&k| (p as u64 + q as u64 * k as u64) % 2 == 1 && shape.multiplicity(k) >= 2);
    let unordered_orientable = !(swap_in_cluster || swap_clusters);

    let ordered_components = if q >= 2 {
        BigUint::from(1u32)
    } else if p >= 1 {
        shape
            .sizes()
            .iter()
            .map(|&k| factorial(k))
            .product::<BigUint>()
    } else {
        factorial(shape.total())
    };

    let unordered_components = if (p, q) != (0, 1) {
        BigUint::from(1u32)
    } else {
        // |k|! / (prod_k (k!)^{r(k)} · r(k)!)
        let mut denom = BigUint::from(1u32);
        for k in shape.distinct_sizes() {
            let mult = shape.multiplicity(k) as u32;
            denom *= factorial(k).pow(mult);
            denom *= factorial(mult);
        }
        factorial(shape.total()) / denom
    };

    SpaceProfile {
        shape: shape.clone(),
        p,
        q,
        dimension,
        unordered_orientable,
        ordered_components,
        unordered_components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(sizes: &[u32]) -> ClusterShape {
        ClusterShape::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn dimension_and_orientability_3422() {
        let profile = space_profile(&shape(&[3, 4, 2, 2]), 1, 1);
        assert_eq!(profile.dimension, 15); // 1·4 + 1·11
        // k = 2: p + q·k = 3 is odd and r(2) = 2
        assert!(!profile.unordered_orientable);
    }

    #[test]
    fn ordered_components_q1() {
        let profile = space_profile(&shape(&[2, 1]), 1, 1);
        assert_eq!(profile.ordered_components, BigUint::from(2u32)); // 2!·1!
        assert_eq!(profile.unordered_components, BigUint::from(1u32));
    }

    #[test]
    fn unordered_components_p0_q1() {
        let profile = space_profile(&shape(&[2, 1]), 0, 1);
        assert_eq!(profile.ordered_components, BigUint::from(6u32)); // 3!
        assert_eq!(profile.unordered_components, BigUint::from(3u32)); // 3!/(2!·1!)
    }

    #[test]
    fn connected_for_q2() {
        let profile = space_profile(&shape(&[2, 2, 2]), 0, 2);
        assert_eq!(profile.ordered_components, BigUint::from(1u32));
        assert_eq!(profile.unordered_components, BigUint::from(1u32));
        // q = 2 even, but p + q·k = 4 even too: orientable
        assert!(profile.unordered_orientable);
    }

    #[test]
    fn odd_q_with_big_cluster_is_nonorientable() {
        assert!(!space_profile(&shape(&[2]), 0, 3).unordered_orientable);
        // a single cluster of size 1 gives nothing to swap
        assert!(space_profile(&shape(&[1]), 0, 3).unordered_orientable);
    }

    #[test]
    fn cluster_swap_parity() {
        // p=0, q=3, k=1: p + q·k = 3 odd and r(1) = 2 → non-orientable
        assert!(!space_profile(&shape(&[1, 1]), 0, 3).unordered_orientable);
        // p=1, q=3, k=1: p + q·k = 4 even → orientable
        assert!(space_profile(&shape(&[1, 1]), 1, 3).unordered_orientable);
    }

    #[test]
    fn empty_shape() {
        let profile = space_profile(&shape(&[]), 0, 1);
        assert_eq!(profile.dimension, 0);
        assert_eq!(profile.ordered_components, BigUint::from(1u32));
        assert_eq!(profile.unordered_components, BigUint::from(1u32));
        assert!(profile.unordered_orientable);
    }
}
