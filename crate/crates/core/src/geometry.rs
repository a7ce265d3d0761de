//! Exact-rational analysis of concrete vertical configurations.
//!
//! A configuration is a list of clusters of points in `R^(p+q)`; within each
//! cluster all points share their first `p` coordinates. Everything here is
//! decided in exact rational arithmetic: which ray partitions a configuration
//! witnesses, the greedy maximal witnessed ray partition, the path component,
//! and the dexterity filtration data.

use num::{BigRational, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::rational::{
    coordinate_from_json, coordinate_to_json, distance_squared, sqrt_lower_bound, CoordinateError,
};
use crate::ray::{ComponentLabel, RayPartition};
use crate::shape::{ClusterShape, TableIndex};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("q must be at least 1, got {q}")]
    QOutOfRange { q: u32 },
    #[error("cluster {cluster} may not be empty")]
    EmptyCluster { cluster: usize },
    #[error(
        "point {point} of cluster {cluster} has {found} coordinates, expected p + q = {expected}"
    )]
    DimensionMismatch {
        cluster: usize,
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error(
        "verticality violated in cluster {cluster}: points {first} and {second} differ in coordinate {coordinate} (within the first p = {p})"
    )]
    VerticalityViolation {
        cluster: usize,
        first: usize,
        second: usize,
        coordinate: usize,
        p: u32,
    },
    #[error("points {first} and {second} collide")]
    CollisionError { first: TableIndex, second: TableIndex },
    #[error("ray partition shape {partition_shape} does not match configuration shape {configuration_shape}")]
    ShapeMismatch {
        partition_shape: ClusterShape,
        configuration_shape: ClusterShape,
    },
    #[error("dexterity is defined for q = 1 only, got q = {q}")]
    UnsupportedQ { q: u32 },
    #[error("stabilisation needs a first coordinate to move along; it is undefined for (p, q) = (0, 1)")]
    StabiliseUndefined,
    #[error("stabilisation cluster size must be at least 1")]
    StabiliseEmptyCluster,
    #[error(transparent)]
    Coordinate(#[from] CoordinateError),
    #[error("configuration file is malformed: {detail}")]
    Format { detail: String },
}

/// A point of `R^(p+q)` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// First `p` coordinates.
    pub fn pr1(&self, p: u32) -> &[BigRational] {
        &self.coords[..p as usize]
    }

    /// All but the last coordinate.
    pub fn pr_zeta(&self) -> &[BigRational] {
        &self.coords[..self.coords.len() - 1]
    }

    /// The last coordinate.
    pub fn pr_t(&self) -> &BigRational {
        self.coords.last().expect("points have dimension at least 1")
    }
}

/// Outcome of a witnessing check: either witnessed, or the first violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessResult {
    Witnessed,
    Violation(WitnessViolation),
}

impl WitnessResult {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, WitnessResult::Witnessed)
    }
}

/// The first failing axiom, with the offending block and pair of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessViolation {
    /// 1-based block number.
    pub block: usize,
    pub first: TableIndex,
    pub second: TableIndex,
    pub axiom: WitnessAxiom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessAxiom {
    /// Members of a block must share all but their last coordinate.
    W1,
    /// Last coordinates must strictly increase along the block sequence.
    W2,
}

/// The path component of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    /// `q ≥ 2`: the space is connected.
    Connected,
    /// `q = 1`: the tuple of per-cluster orderings by the last coordinate.
    Label(ComponentLabel),
}

/// Dexterity data of a `q = 1` configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DexterityResult {
    /// Classes of 1-based cluster indices under the equivalence generated by
    /// "aligned and entangled", ordered by smallest member.
    pub classes: Vec<Vec<u32>>,
    /// Number of classes.
    pub dexterity: usize,
    /// `r − δ`: which stratum of the dexterity filtration contains the
    /// configuration.
    pub filtration_index: usize,
}

/// An ordered configuration of vertical clusters with exact rational
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalConfiguration {
    p: u32,
    q: u32,
    clusters: Vec<Vec<RationalPoint>>,
}

impl VerticalConfiguration {
    /// Validates raw cluster data: dimensions, verticality within each
    /// cluster, and global distinctness of all points.
    pub fn new(
        p: u32,
        q: u32,
        clusters: Vec<Vec<RationalPoint>>,
    ) -> Result<Self, GeometryError> {
        if q < 1 {
            return Err(GeometryError::QOutOfRange { q });
        }
        let dim = (p + q) as usize;
        for (ci, cluster) in clusters.iter().enumerate() {
            if cluster.is_empty() {
                return Err(GeometryError::EmptyCluster { cluster: ci + 1 });
            }
            for (pi, point) in cluster.iter().enumerate() {
                if point.dim() != dim {
                    return Err(GeometryError::DimensionMismatch {
                        cluster: ci + 1,
                        point: pi + 1,
                        expected: dim,
                        found: point.dim(),
                    });
                }
            }
            for c in 0..p as usize {
                for (pi, point) in cluster.iter().enumerate().skip(1) {
                    if point.coords[c] != cluster[0].coords[c] {
                        return Err(GeometryError::VerticalityViolation {
                            cluster: ci + 1,
                            first: 1,
                            second: pi + 1,
                            coordinate: c + 1,
                            p,
                        });
                    }
                }
            }
        }
        let mut seen: Vec<(TableIndex, &RationalPoint)> = Vec::new();
        for (ci, cluster) in clusters.iter().enumerate() {
            for (pi, point) in cluster.iter().enumerate() {
                let index = TableIndex::new(ci as u32 + 1, pi as u32 + 1);
                if let Some((other, _)) = seen.iter().find(|(_, q)| *q == point) {
                    return Err(GeometryError::CollisionError {
                        first: *other,
                        second: index,
                    });
                }
                seen.push((index, point));
            }
        }
        Ok(VerticalConfiguration { p, q, clusters })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn clusters(&self) -> &[Vec<RationalPoint>] {
        &self.clusters
    }

    pub fn shape(&self) -> ClusterShape {
        ClusterShape::new(self.clusters.iter().map(|c| c.len() as u32).collect())
            .expect("validated clusters are nonempty")
    }

    /// The point at a table index (1-based cluster and position).
    pub fn point(&self, index: TableIndex) -> &RationalPoint {
        &self.clusters[index.cluster as usize - 1][index.position as usize - 1]
    }

    /// Checks whether this configuration witnesses a ray partition: every
    /// block lies on one vertical line (W1) and is stacked in sequence order
    /// (W2). Returns the first violation otherwise.
    pub fn witnesses(&self, partition: &RayPartition) -> Result<WitnessResult, GeometryError> {
        let shape = self.shape();
        if partition.shape() != &shape {
            return Err(GeometryError::ShapeMismatch {
                partition_shape: partition.shape().clone(),
                configuration_shape: shape,
            });
        }
        for (b, block) in partition.blocks().iter().enumerate() {
            let seed = self.point(block[0]);
            for (m, &index) in block.iter().enumerate().skip(1) {
                let point = self.point(index);
                if point.pr_zeta() != seed.pr_zeta() {
                    return Ok(WitnessResult::Violation(WitnessViolation {
                        block: b + 1,
                        first: block[0],
                        second: index,
                        axiom: WitnessAxiom::W1,
                    }));
                }
                let previous = block[m - 1];
                if self.point(previous).pr_t() >= point.pr_t() {
                    return Ok(WitnessResult::Violation(WitnessViolation {
                        block: b + 1,
                        first: previous,
                        second: index,
                        axiom: WitnessAxiom::W2,
                    }));
                }
            }
        }
        Ok(WitnessResult::Witnessed)
    }

    /// The unique maximal-weight ray partition witnessed by this
    /// configuration.
    ///
    /// Repeatedly seeds a new block with the smallest unassigned table index
    /// and collects every unassigned point on the upward ray from the seed
    /// (same projection, last coordinate not smaller), ordered by the last
    /// coordinate.
    pub fn greedy_ray_partition(&self) -> RayPartition {
        let shape = self.shape();
        let indices: Vec<TableIndex> = shape.table_indices().collect();
        let mut assigned = vec![false; indices.len()];
        let mut blocks: Vec<Vec<TableIndex>> = Vec::new();
        for seed_flat in 0..indices.len() {
            if assigned[seed_flat] {
                continue;
            }
            let seed = self.point(indices[seed_flat]);
            let mut member_flats: Vec<usize> = (seed_flat..indices.len())
                .filter(|&flat| {
                    if assigned[flat] {
                        return false;
                    }
                    let point = self.point(indices[flat]);
                    point.pr_zeta() == seed.pr_zeta() && point.pr_t() >= seed.pr_t()
                })
                .collect();
            member_flats.sort_by(|&a, &b| {
                self.point(indices[a])
                    .pr_t()
                    .cmp(self.point(indices[b]).pr_t())
            });
            for &flat in &member_flats {
                assigned[flat] = true;
            }
            blocks.push(member_flats.into_iter().map(|flat| indices[flat]).collect());
        }
        RayPartition::from_blocks(shape, blocks)
            .expect("the ray construction satisfies the ray axioms")
    }

    /// The path component: connected for `q ≥ 2`, the tuple of per-cluster
    /// orderings by the last coordinate for `q = 1`.
    pub fn component(&self) -> Component {
        if self.q >= 2 {
            return Component::Connected;
        }
        let perms: Vec<Vec<u32>> = self
            .clusters
            .iter()
            .map(|cluster| {
                let mut order: Vec<u32> = (1..=cluster.len() as u32).collect();
                order.sort_by(|&a, &b| {
                    cluster[a as usize - 1]
                        .pr_t()
                        .cmp(cluster[b as usize - 1].pr_t())
                });
                order
            })
            .collect();
        Component::Label(
            ComponentLabel::new(&self.shape(), perms).expect("sorting yields permutations"),
        )
    }

    /// Dexterity of a `q = 1` configuration: the number of cluster classes
    /// under the equivalence generated by "aligned and entangled".
    ///
    /// Two clusters are aligned when they share their projection to `R^p`,
    /// and entangled when their closed intervals of last coordinates
    /// intersect. Cluster sizes may differ.
    pub fn dexterity(&self) -> Result<DexterityResult, GeometryError> {
        if self.q != 1 {
            return Err(GeometryError::UnsupportedQ { q: self.q });
        }
        let r = self.clusters.len();
        let spans: Vec<(&[BigRational], &BigRational, &BigRational)> = self
            .clusters
            .iter()
            .map(|cluster| {
                let zeta = cluster[0].pr_zeta();
                let min = cluster.iter().map(|z| z.pr_t()).min().expect("nonempty");
                let max = cluster.iter().map(|z| z.pr_t()).max().expect("nonempty");
                (zeta, min, max)
            })
            .collect();
        let mut uf = UnionFind::new(r);
        for i in 0..r {
            for j in (i + 1)..r {
                let aligned = spans[i].0 == spans[j].0;
                let entangled = spans[i].1 <= spans[j].2 && spans[j].1 <= spans[i].2;
                if aligned && entangled {
                    uf.union(i, j);
                }
            }
        }
        let classes: Vec<Vec<u32>> = uf
            .classes()
            .into_iter()
            .map(|class| class.into_iter().map(|c| c as u32 + 1).collect())
            .collect();
        let dexterity = classes.len();
        Ok(DexterityResult {
            classes,
            dexterity,
            filtration_index: r - dexterity,
        })
    }

    /// Adds one vertical cluster of size `k` on the far right: first
    /// coordinate two beyond the current maximum, remaining coordinates 0,
    /// last coordinates `1..=k`.
    ///
    /// Defined whenever a first coordinate to move along exists, i.e. for
    /// every `(p, q)` except `(0, 1)`.
    pub fn stabilised(&self, k: u32) -> Result<VerticalConfiguration, GeometryError> {
        if self.p == 0 && self.q == 1 {
            return Err(GeometryError::StabiliseUndefined);
        }
        if k == 0 {
            return Err(GeometryError::StabiliseEmptyCluster);
        }
        let dim = (self.p + self.q) as usize;
        let max_first = self
            .clusters
            .iter()
            .flatten()
            .map(|point| &point.coords[0])
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let new_first = max_first + BigRational::from_integer(2.into());
        let mut clusters = self.clusters.clone();
        let cluster: Vec<RationalPoint> = (1..=k)
            .map(|j| {
                let mut coords = vec![BigRational::zero(); dim];
                coords[0] = new_first.clone();
                coords[dim - 1] = BigRational::from_integer(j.into());
                RationalPoint::new(coords)
            })
            .collect();
        clusters.push(cluster);
        VerticalConfiguration::new(self.p, self.q, clusters)
    }

    /// A rational lower bound for the minimum over all pairs of distinct
    /// projected values: distances between distinct `pr_ζ` projections and
    /// between distinct last coordinates. `None` when fewer than two points.
    ///
    /// Any motion of every point by strictly less than half this bound
    /// cannot increase the weight of the greedy ray partition.
    pub fn separation_lower_bound(&self) -> Option<BigRational> {
        let points: Vec<&RationalPoint> = self.clusters.iter().flatten().collect();
        let mut best: Option<BigRational> = None;
        let mut consider = |candidate: BigRational| {
            if candidate.is_zero() {
                return;
            }
            match &best {
                Some(current) if *current <= candidate => {}
                _ => best = Some(candidate),
            }
        };
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let zeta_sq = distance_squared(points[i].pr_zeta(), points[j].pr_zeta());
                if !zeta_sq.is_zero() {
                    consider(sqrt_lower_bound(&zeta_sq));
                }
                let dt = points[i].pr_t() - points[j].pr_t();
                if !dt.is_zero() {
                    consider(if dt < BigRational::zero() { -dt } else { dt });
                }
            }
        }
        best
    }

    /// Parses the configuration file format:
    /// `{"p": int, "q": int, "clusters": [{"points": [[coord, ...], ...]}, ...]}`
    /// with coordinates as integers, `"a/b"` strings, or finite decimal
    /// strings.
    pub fn from_json_str(text: &str) -> Result<Self, GeometryError> {
        let value: Value = serde_json::from_str(text).map_err(|e| GeometryError::Format {
            detail: e.to_string(),
        })?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self, GeometryError> {
        let object = value.as_object().ok_or_else(|| GeometryError::Format {
            detail: "top level must be an object".to_string(),
        })?;
        let field_u32 = |name: &str| -> Result<u32, GeometryError> {
            object
                .get(name)
                .and_then(Value::as_u64)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| GeometryError::Format {
                    detail: format!("missing or invalid field `{name}`"),
                })
        };
        let p = field_u32("p")?;
        let q = field_u32("q")?;
        let clusters_value = object
            .get("clusters")
            .and_then(Value::as_array)
            .ok_or_else(|| GeometryError::Format {
                detail: "missing or invalid field `clusters`".to_string(),
            })?;
        let mut clusters = Vec::with_capacity(clusters_value.len());
        for cluster_value in clusters_value {
            let points_value = cluster_value
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| GeometryError::Format {
                    detail: "each cluster must be an object with a `points` array".to_string(),
                })?;
            let mut cluster = Vec::with_capacity(points_value.len());
            for point_value in points_value {
                let coords_value =
                    point_value.as_array().ok_or_else(|| GeometryError::Format {
                        detail: "each point must be an array of coordinates".to_string(),
                    })?;
                let coords: Result<Vec<BigRational>, CoordinateError> =
                    coords_value.iter().map(coordinate_from_json).collect();
                cluster.push(RationalPoint::new(coords?));
            }
            clusters.push(cluster);
        }
        VerticalConfiguration::new(p, q, clusters)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "clusters": self
                .clusters
                .iter()
                .map(|cluster| {
                    json!({
                        "points": cluster
                            .iter()
                            .map(|point| {
                                Value::from(
                                    point
                                        .coords()
                                        .iter()
                                        .map(coordinate_to_json)
                                        .collect::<Vec<_>>(),
                                )
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn point(coords: &[i64]) -> RationalPoint {
        RationalPoint::new(coords.iter().map(|&c| int(c)).collect())
    }

    fn config(p: u32, q: u32, clusters: &[&[&[i64]]]) -> VerticalConfiguration {
        let clusters = clusters
            .iter()
            .map(|cluster| cluster.iter().map(|coords| point(coords)).collect())
            .collect();
        VerticalConfiguration::new(p, q, clusters).unwrap()
    }

    fn idx(i: u32, j: u32) -> TableIndex {
        TableIndex::new(i, j)
    }

    #[test]
    fn validation_examples() {
        // one aligned cluster
        assert!(VerticalConfiguration::new(
            1,
            1,
            vec![vec![point(&[0, 3]), point(&[0, 1]), point(&[0, 2])]],
        )
        .is_ok());
        // first coordinates differ within a cluster
        let err = VerticalConfiguration::new(1, 1, vec![vec![point(&[0, 1]), point(&[1, 2])]])
            .unwrap_err();
        assert_eq!(
            err,
            GeometryError::VerticalityViolation {
                cluster: 1,
                first: 1,
                second: 2,
                coordinate: 1,
                p: 1,
            }
        );
        // duplicate point across clusters
        let err = VerticalConfiguration::new(
            0,
            2,
            vec![vec![point(&[1, 2])], vec![point(&[1, 2])]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            GeometryError::CollisionError {
                first: idx(1, 1),
                second: idx(2, 1),
            }
        );
    }

    #[test]
    fn witness_examples() {
        // single cluster at x = 0 with t = (3, 1, 2)
        let z = config(1, 1, &[&[&[0, 3], &[0, 1], &[0, 2]]]);
        let shape = z.shape();
        let good = RayPartition::parse(shape.clone(), "1.1 | 1.2 1.3").unwrap();
        assert!(z.witnesses(&good).unwrap().is_witnessed());
        let bad = RayPartition::parse(shape.clone(), "1.1 1.2 | 1.3").unwrap();
        match z.witnesses(&bad).unwrap() {
            WitnessResult::Violation(v) => {
                assert_eq!(v.axiom, WitnessAxiom::W2);
                assert_eq!(v.block, 1);
                assert_eq!((v.first, v.second), (idx(1, 1), idx(1, 2)));
            }
            WitnessResult::Witnessed => panic!("t = 3 is not below t = 1"),
        }
        // all singletons are vacuously witnessed
        let singletons = RayPartition::parse(shape, "1.1 | 1.2 | 1.3").unwrap();
        assert!(z.witnesses(&singletons).unwrap().is_witnessed());
    }

    #[test]
    fn witness_w1_violation() {
        let z = config(1, 2, &[&[&[0, 0, 1], &[0, 1, 2]]]);
        let q = RayPartition::parse(z.shape(), "1.1 1.2").unwrap();
        match z.witnesses(&q).unwrap() {
            WitnessResult::Violation(v) => assert_eq!(v.axiom, WitnessAxiom::W1),
            WitnessResult::Witnessed => panic!("projections differ"),
        }
    }

    #[test]
    fn witness_shape_mismatch() {
        let z = config(1, 1, &[&[&[0, 1]]]);
        let q = RayPartition::parse(ClusterShape::new(vec![2]).unwrap(), "1.1 1.2").unwrap();
        assert!(matches!(
            z.witnesses(&q),
            Err(GeometryError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn greedy_examples() {
        let z = config(1, 1, &[&[&[0, 3], &[0, 1], &[0, 2]]]);
        let greedy = z.greedy_ray_partition();
        assert_eq!(greedy.to_text(), "1.1 | 1.2 1.3");
        assert_eq!(greedy.weight().entries(), &[1, 2]);
        assert!(z.witnesses(&greedy).unwrap().is_witnessed());

        // pairwise distinct projections: all singletons
        let generic = config(1, 1, &[&[&[0, 1]], &[&[2, 1]], &[&[4, 7]]]);
        assert_eq!(generic.greedy_ray_partition().to_text(), "1.1 | 2.1 | 3.1");

        // seed at the bottom collects the whole cluster
        let sorted = config(1, 1, &[&[&[0, 1], &[0, 2], &[0, 3]]]);
        let greedy = sorted.greedy_ray_partition();
        assert_eq!(greedy.to_text(), "1.1 1.2 1.3");
        assert_eq!(greedy.weight().entries(), &[3]);
    }

    #[test]
    fn component_examples() {
        let z = config(0, 2, &[&[&[0, 0]], &[&[1, 1]]]);
        assert_eq!(z.component(), Component::Connected);

        let sorted = config(1, 1, &[&[&[0, 1], &[0, 2], &[0, 3]]]);
        match sorted.component() {
            Component::Label(label) => assert!(label.is_identity()),
            Component::Connected => panic!("q = 1"),
        }

        let shuffled = config(1, 1, &[&[&[0, 3], &[0, 1], &[0, 2]]]);
        match shuffled.component() {
            Component::Label(label) => assert_eq!(label.perms(), &[vec![2, 3, 1]]),
            Component::Connected => panic!("q = 1"),
        }
    }

    #[test]
    fn greedy_sigma_matches_component() {
        let z = config(
            1,
            1,
            &[&[&[0, 5], &[0, 2]], &[&[0, 3], &[0, 9]], &[&[4, 1]]],
        );
        match z.component() {
            Component::Label(label) => assert_eq!(z.greedy_ray_partition().sigma(), label),
            Component::Connected => panic!("q = 1"),
        }
    }

    #[test]
    fn dexterity_examples() {
        // aligned and overlapping intervals
        let z = config(1, 1, &[&[&[0, 1], &[0, 3]], &[&[0, 2], &[0, 4]]]);
        let d = z.dexterity().unwrap();
        assert_eq!(d.dexterity, 1);
        assert_eq!(d.filtration_index, 1);
        assert_eq!(d.classes, vec![vec![1, 2]]);

        // pairwise distinct lines
        let z = config(1, 1, &[&[&[0, 1]], &[&[1, 1]], &[&[2, 1]]]);
        let d = z.dexterity().unwrap();
        assert_eq!(d.dexterity, 3);
        assert_eq!(d.filtration_index, 0);

        // six clusters, exactly one aligned pair entangled
        let z = config(
            1,
            1,
            &[
                &[&[0, 4], &[0, 8]],
                &[&[0, 3], &[0, 6]],
                &[&[1, 0], &[1, 1]],
                &[&[2, 0], &[2, 1]],
                &[&[3, 0], &[3, 1]],
                &[&[4, 0], &[4, 1]],
            ],
        );
        let d = z.dexterity().unwrap();
        assert_eq!(d.dexterity, 5);
        assert_eq!(d.filtration_index, 1);
    }

    #[test]
    fn dexterity_chains_through_entanglement() {
        // intervals [1,3], [2,5], [4,6] on one line: one class via the chain
        let z = config(
            1,
            1,
            &[
                &[&[0, 1], &[0, 3]],
                &[&[0, 2], &[0, 5]],
                &[&[0, 4], &[0, 6]],
            ],
        );
        assert_eq!(z.dexterity().unwrap().dexterity, 1);
    }

    #[test]
    fn dexterity_needs_q1() {
        let z = config(1, 2, &[&[&[0, 0, 0]]]);
        assert_eq!(z.dexterity(), Err(GeometryError::UnsupportedQ { q: 2 }));
    }

    #[test]
    fn stabilise_examples() {
        let empty = VerticalConfiguration::new(1, 1, Vec::new()).unwrap();
        let once = empty.stabilised(2).unwrap();
        assert_eq!(once.shape().sizes(), &[2]);
        assert_eq!(once.clusters()[0][0].coords(), &[int(2), int(1)]);
        assert_eq!(once.clusters()[0][1].coords(), &[int(2), int(2)]);

        let twice = once.stabilised(2).unwrap();
        assert_eq!(twice.clusters()[1][0].coords()[0], int(4));
        assert_eq!(twice.dexterity().unwrap().dexterity, 2);

        let z = config(1, 1, &[&[&[0, 1], &[0, 3]], &[&[0, 2], &[0, 4]]]);
        let before = z.dexterity().unwrap().dexterity;
        let after = z.stabilised(3).unwrap();
        assert_eq!(after.dexterity().unwrap().dexterity, before + 1);

        assert_eq!(
            config(0, 1, &[&[&[1]]]).stabilised(1),
            Err(GeometryError::StabiliseUndefined)
        );
    }

    #[test]
    fn stabilise_p0_q2_uses_first_ambient_coordinate() {
        let z = config(0, 2, &[&[&[5, 0]]]);
        let out = z.stabilised(2).unwrap();
        assert_eq!(out.clusters()[1][0].coords(), &[int(7), int(1)]);
        assert_eq!(out.clusters()[1][1].coords(), &[int(7), int(2)]);
    }

    #[test]
    fn separation_bound() {
        let z = config(1, 1, &[&[&[0, 0], &[0, 1]], &[&[3, 0], &[3, 4]]]);
        // distinct ζ distances: 3; distinct t distances: 1, 3, 4
        assert_eq!(z.separation_lower_bound(), Some(int(1)));
        let single = config(1, 1, &[&[&[0, 0]]]);
        assert_eq!(single.separation_lower_bound(), None);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "p": 1,
            "q": 1,
            "clusters": [
                {"points": [[0, 3], ["0", "1"], [0, "0.5"]]},
                {"points": [["1/2", "-2"]]}
            ]
        }"#;
        let z = VerticalConfiguration::from_json_str(text).unwrap();
        assert_eq!(z.shape().sizes(), &[3, 1]);
        assert_eq!(z.clusters()[0][2].coords()[1], ratio(1, 2));
        assert_eq!(z.clusters()[1][0].coords()[0], ratio(1, 2));
        let round = VerticalConfiguration::from_json_str(&z.to_json_string()).unwrap();
        assert_eq!(round, z);
    }

    #[test]
    fn json_rejects_floats_and_garbage() {
        assert!(VerticalConfiguration::from_json_str("[]").is_err());
        let text = r#"{"p": 1, "q": 1, "clusters": [{"points": [[0.5, 1]]}]}"#;
        assert!(matches!(
            VerticalConfiguration::from_json_str(text),
            Err(GeometryError::Coordinate(_))
        ));
    }
}
