//! Cluster-partition combinatorics behind the stability argument:
//! irreducible partitions, standard groups, the insertion map, distributions
//! and their degree and sign bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::geometry::{GeometryError, RationalPoint, VerticalConfiguration};
use crate::rational::{
    coordinate_from_json, coordinate_to_json, distance_squared, norm_squared, sqrt_lower_bound,
    CoordinateError,
};

#[derive(Debug, Error, PartialEq)]
pub enum ClusterError {
    #[error("w·k = {wk} exceeds the size guard {max_wk}; raise the bound explicitly to proceed")]
    SizeGuard { wk: u32, max_wk: u32 },
    #[error("blocks do not partition {{1,…,{expected}}} into blocks of size {k}: {detail}")]
    NotAPartition { expected: u32, k: u32, detail: String },
    #[error("partition is reducible: {{1,…,{prefix}}} is a union of blocks")]
    Reducible { prefix: u32 },
    #[error("expected {expected} disc parameters (one per block after the first), got {found}")]
    WrongParameterCount { expected: usize, found: usize },
    #[error("disc parameter {index} has {found} coordinates, expected p = {expected}")]
    XiDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("disc parameter {index} has squared norm above 1")]
    DiscViolation { index: usize },
    #[error("labelled point {index} has {found} coordinates, expected p + 1 = {expected}")]
    BasePointDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("labelled points {first} and {second} coincide")]
    DuplicateBasePoint { first: usize, second: usize },
    #[error("partition at point {index} has cluster size {found}, expected {expected}")]
    ClusterSizeMismatch {
        index: usize,
        expected: u32,
        found: u32,
    },
    #[error("permutation assignment does not match the distribution support: {detail}")]
    SupportMismatch { detail: String },
    #[error("labelled configuration file is malformed: {detail}")]
    Format { detail: String },
    #[error(transparent)]
    Coordinate(#[from] CoordinateError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Guard for the super-exponential growth of irreducible-partition
/// enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterLimits {
    pub max_wk: u32,
}

impl Default for ClusterLimits {
    fn default() -> Self {
        ClusterLimits { max_wk: 14 }
    }
}

impl ClusterLimits {
    pub fn unbounded() -> Self {
        ClusterLimits { max_wk: u32::MAX }
    }

    pub fn check(&self, wk: u32) -> Result<(), ClusterError> {
        if wk > self.max_wk {
            return Err(ClusterError::SizeGuard {
                wk,
                max_wk: self.max_wk,
            });
        }
        Ok(())
    }
}

/// Whether `blocks` (a partition of `{1,…,w·k}` into `k`-blocks) is
/// irreducible: no proper prefix `{1,…,i·k}` is a union of blocks.
pub fn is_irreducible(k: u32, blocks: &[Vec<u32>]) -> bool {
    let w = blocks.len() as u32;
    for i in 1..w {
        let prefix = i * k;
        if blocks
            .iter()
            .all(|block| block.iter().all(|&x| x <= prefix) || block.iter().all(|&x| x > prefix))
        {
            return false;
        }
    }
    true
}

/// An unordered partition of `{1,…,w·k}` into `w` blocks of size `k` with no
/// proper prefix union.
///
/// Blocks are stored sorted, listed with strictly increasing minima, so
/// equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreduciblePartition {
    k: u32,
    blocks: Vec<Vec<u32>>,
}

impl IrreduciblePartition {
    pub fn new(k: u32, blocks: Vec<Vec<u32>>) -> Result<Self, ClusterError> {
        let blocks = canonical_blocks(k, blocks)?;
        let w = blocks.len() as u32;
        for i in 1..w {
            let prefix = i * k;
            if blocks.iter().all(|block| {
                block.iter().all(|&x| x <= prefix) || block.iter().all(|&x| x > prefix)
            }) {
                return Err(ClusterError::Reducible { prefix });
            }
        }
        Ok(IrreduciblePartition { k, blocks })
    }

    /// The unique weight-1 partition: one block `{1,…,k}`.
    pub fn e0(k: u32) -> Self {
        IrreduciblePartition {
            k,
            blocks: vec![(1..=k).collect()],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The weight `w(e)`: the number of blocks.
    pub fn weight(&self) -> u32 {
        self.blocks.len() as u32
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn is_e0(&self) -> bool {
        self.blocks.len() == 1
    }
}

impl fmt::Display for IrreduciblePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_blocks(&self.blocks))
    }
}

/// Text form of a block list: blocks joined by `|`; elements concatenated
/// when single digits suffice, dot-separated otherwise (`13|24`, `1.13|…`).
pub fn format_blocks(blocks: &[Vec<u32>]) -> String {
    let compact = blocks.iter().flatten().all(|&x| x <= 9);
    blocks
        .iter()
        .map(|block| {
            let parts: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            parts.join(if compact { "" } else { "." })
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Sorts blocks internally and by minima; validates partition shape.
fn canonical_blocks(k: u32, mut blocks: Vec<Vec<u32>>) -> Result<Vec<Vec<u32>>, ClusterError> {
    let w = blocks.len() as u32;
    let expected = w * k;
    let fail = |detail: String| ClusterError::NotAPartition {
        expected,
        k,
        detail,
    };
    let mut seen = vec![false; expected as usize];
    for block in &mut blocks {
        if block.len() != k as usize {
            return Err(fail(format!("a block has size {}", block.len())));
        }
        block.sort_unstable();
        for &x in block.iter() {
            if x < 1 || x > expected {
                return Err(fail(format!("element {x} out of range")));
            }
            if seen[x as usize - 1] {
                return Err(fail(format!("element {x} occurs twice")));
            }
            seen[x as usize - 1] = true;
        }
    }
    blocks.sort_by_key(|block| block[0]);
    Ok(blocks)
}

/// All irreducible partitions of `{1,…,w·k}` into `k`-blocks, canonically
/// ordered (blocks by minima, partitions lexicographically).
pub fn enumerate_irreducible(
    k: u32,
    w: u32,
    limits: &ClusterLimits,
) -> Result<Vec<IrreduciblePartition>, ClusterError> {
    assert!(k >= 1 && w >= 1);
    limits.check(w * k)?;
    let mut out = Vec::new();
    let mut used = vec![false; (w * k) as usize];
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    enumerate_uniform(k, w, &mut used, &mut blocks, &mut |blocks| {
        if is_irreducible(k, blocks) {
            out.push(IrreduciblePartition {
                k,
                blocks: blocks.to_vec(),
            });
        }
    });
    Ok(out)
}

/// Generates every partition of `{1,…,w·k}` into `w` sorted `k`-blocks with
/// increasing minima, in lexicographic order; each unordered partition
/// appears exactly once.
pub(crate) fn enumerate_uniform<F: FnMut(&[Vec<u32>])>(
    k: u32,
    w: u32,
    used: &mut Vec<bool>,
    blocks: &mut Vec<Vec<u32>>,
    f: &mut F,
) {
    if blocks.len() == w as usize {
        f(blocks);
        return;
    }
    let seed = match used.iter().position(|&u| !u) {
        Some(pos) => pos as u32 + 1,
        None => return,
    };
    used[seed as usize - 1] = true;
    let mut block = vec![seed];
    extend_block(k, w, used, blocks, &mut block, seed, f);
    used[seed as usize - 1] = false;
}

fn extend_block<F: FnMut(&[Vec<u32>])>(
    k: u32,
    w: u32,
    used: &mut Vec<bool>,
    blocks: &mut Vec<Vec<u32>>,
    block: &mut Vec<u32>,
    last: u32,
    f: &mut F,
) {
    if block.len() == k as usize {
        blocks.push(block.clone());
        enumerate_uniform(k, w, used, blocks, f);
        blocks.pop();
        return;
    }
    for next in (last + 1)..=(w * k) {
        if used[next as usize - 1] {
            continue;
        }
        used[next as usize - 1] = true;
        block.push(next);
        extend_block(k, w, used, blocks, block, next, f);
        block.pop();
        used[next as usize - 1] = false;
    }
}

/// The standard cluster `T_S(ξ)` in `R^(p+1)`: one vertical cluster at disc
/// position `ξ` whose last coordinates are `−1 + 2h/(k·w+1)` for `h ∈ S`.
fn standard_cluster(k: u32, w: u32, block: &[u32], xi: &[BigRational]) -> Vec<RationalPoint> {
    let denom = BigInt::from(k as i64 * w as i64 + 1);
    block
        .iter()
        .map(|&h| {
            let mut coords: Vec<BigRational> = xi.to_vec();
            let t = BigRational::new(BigInt::from(2 * h as i64), denom.clone())
                - BigRational::one();
            coords.push(t);
            RationalPoint::new(coords)
        })
        .collect()
}

/// The standard group of an arbitrary `k`-uniform block list, without
/// requiring irreducibility. `xi` supplies one disc parameter per block
/// after the first; the first block sits at the disc centre.
pub fn standard_group_of_blocks(
    k: u32,
    blocks: &[Vec<u32>],
    xi: &[Vec<BigRational>],
    p: u32,
) -> Result<VerticalConfiguration, ClusterError> {
    let w = blocks.len() as u32;
    if xi.len() + 1 != w as usize {
        return Err(ClusterError::WrongParameterCount {
            expected: w as usize - 1,
            found: xi.len(),
        });
    }
    validate_disc_parameters(xi, p)?;
    let zero = vec![BigRational::zero(); p as usize];
    let clusters: Vec<Vec<RationalPoint>> = blocks
        .iter()
        .enumerate()
        .map(|(b, block)| {
            let position = if b == 0 { &zero } else { &xi[b - 1] };
            standard_cluster(k, w, block, position)
        })
        .collect();
    Ok(VerticalConfiguration::new(p, 1, clusters)?)
}

/// The standard group `T_e(ξ_2,…,ξ_w)` of an irreducible partition.
pub fn standard_group(
    e: &IrreduciblePartition,
    xi: &[Vec<BigRational>],
    p: u32,
) -> Result<VerticalConfiguration, ClusterError> {
    standard_group_of_blocks(e.k, &e.blocks, xi, p)
}

fn validate_disc_parameters(xi: &[Vec<BigRational>], p: u32) -> Result<(), ClusterError> {
    for (i, parameter) in xi.iter().enumerate() {
        if parameter.len() != p as usize {
            return Err(ClusterError::XiDimension {
                index: i + 1,
                expected: p as usize,
                found: parameter.len(),
            });
        }
        if norm_squared(parameter) > BigRational::one() {
            return Err(ClusterError::DiscViolation { index: i + 1 });
        }
    }
    Ok(())
}

/// A point of `R^(p+1)` labelled by an irreducible partition and its disc
/// parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub y: RationalPoint,
    pub partition: IrreduciblePartition,
    pub xi: Vec<Vec<BigRational>>,
}

/// A labelled configuration `Θ`: distinct base points in `R^(p+1)`, each
/// carrying an irreducible partition and `w(e)−1` disc parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledConfiguration {
    p: u32,
    k: u32,
    points: Vec<LabeledPoint>,
}

impl LabeledConfiguration {
    pub fn new(p: u32, k: u32, points: Vec<LabeledPoint>) -> Result<Self, ClusterError> {
        for (i, point) in points.iter().enumerate() {
            if point.y.dim() != p as usize + 1 {
                return Err(ClusterError::BasePointDimension {
                    index: i + 1,
                    expected: p as usize + 1,
                    found: point.y.dim(),
                });
            }
            if point.partition.k() != k {
                return Err(ClusterError::ClusterSizeMismatch {
                    index: i + 1,
                    expected: k,
                    found: point.partition.k(),
                });
            }
            if point.xi.len() != point.partition.weight() as usize - 1 {
                return Err(ClusterError::WrongParameterCount {
                    expected: point.partition.weight() as usize - 1,
                    found: point.xi.len(),
                });
            }
            validate_disc_parameters(&point.xi, p)?;
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].y == points[j].y {
                    return Err(ClusterError::DuplicateBasePoint {
                        first: i + 1,
                        second: j + 1,
                    });
                }
            }
        }
        Ok(LabeledConfiguration { p, k, points })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    /// The degree `(r, s)` of the underlying distribution: total weight and
    /// total weight defect.
    pub fn degree(&self) -> (u32, u32) {
        let r = self.points.iter().map(|pt| pt.partition.weight()).sum();
        let s = self
            .points
            .iter()
            .map(|pt| pt.partition.weight() - 1)
            .sum();
        (r, s)
    }

    /// Adds a far-right point labelled by `e_0`: first coordinate two beyond
    /// the current maximum, remaining coordinates zero, no disc parameters.
    /// Raises `r` by one and keeps `s` fixed.
    pub fn stabilised(&self) -> LabeledConfiguration {
        let max_first = self
            .points
            .iter()
            .map(|pt| &pt.y.coords()[0])
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let mut coords = vec![BigRational::zero(); self.p as usize + 1];
        coords[0] = max_first + BigRational::from_integer(2.into());
        let mut points = self.points.clone();
        points.push(LabeledPoint {
            y: RationalPoint::new(coords),
            partition: IrreduciblePartition::e0(self.k),
            xi: Vec::new(),
        });
        LabeledConfiguration {
            p: self.p,
            k: self.k,
            points,
        }
    }

    /// Parses the labelled configuration format:
    /// `{"p": int, "k": int, "points": [{"y": [...], "partition": [[...]], "xi": [[...]]}]}`.
    /// Partitions are validated for irreducibility on load.
    pub fn from_json_str(text: &str) -> Result<Self, ClusterError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ClusterError::Format {
            detail: e.to_string(),
        })?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self, ClusterError> {
        let object = value.as_object().ok_or_else(|| ClusterError::Format {
            detail: "top level must be an object".to_string(),
        })?;
        let field_u32 = |name: &str| -> Result<u32, ClusterError> {
            object
                .get(name)
                .and_then(Value::as_u64)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| ClusterError::Format {
                    detail: format!("missing or invalid field `{name}`"),
                })
        };
        let p = field_u32("p")?;
        let k = field_u32("k")?;
        let points_value = object
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| ClusterError::Format {
                detail: "missing or invalid field `points`".to_string(),
            })?;
        let coords_array = |value: &Value, what: &str| -> Result<Vec<BigRational>, ClusterError> {
            let array = value.as_array().ok_or_else(|| ClusterError::Format {
                detail: format!("{what} must be an array of coordinates"),
            })?;
            let coords: Result<Vec<BigRational>, CoordinateError> =
                array.iter().map(coordinate_from_json).collect();
            Ok(coords?)
        };
        let mut points = Vec::with_capacity(points_value.len());
        for point_value in points_value {
            let y = coords_array(
                point_value.get("y").unwrap_or(&Value::Null),
                "field `y`",
            )?;
            let blocks_value = point_value
                .get("partition")
                .and_then(Value::as_array)
                .ok_or_else(|| ClusterError::Format {
                    detail: "missing or invalid field `partition`".to_string(),
                })?;
            let mut blocks = Vec::with_capacity(blocks_value.len());
            for block_value in blocks_value {
                let bad_block = || ClusterError::Format {
                    detail: "partition blocks must be arrays of positive integers".to_string(),
                };
                let entries = block_value.as_array().ok_or_else(bad_block)?;
                let block = entries
                    .iter()
                    .map(|entry| {
                        entry
                            .as_u64()
                            .and_then(|v| u32::try_from(v).ok())
                            .ok_or_else(bad_block)
                    })
                    .collect::<Result<Vec<u32>, _>>()?;
                blocks.push(block);
            }
            let partition = IrreduciblePartition::new(k, blocks)?;
            let xi = match point_value.get("xi") {
                None | Some(Value::Null) => Vec::new(),
                Some(value) => {
                    let array = value.as_array().ok_or_else(|| ClusterError::Format {
                        detail: "field `xi` must be an array of vectors".to_string(),
                    })?;
                    array
                        .iter()
                        .map(|v| coords_array(v, "disc parameter"))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            points.push(LabeledPoint {
                y: RationalPoint::new(y),
                partition,
                xi,
            });
        }
        LabeledConfiguration::new(p, k, points)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "k": self.k,
            "points": self
                .points
                .iter()
                .map(|point| {
                    json!({
                        "y": point
                            .y
                            .coords()
                            .iter()
                            .map(coordinate_to_json)
                            .collect::<Vec<_>>(),
                        "partition": point.partition.blocks(),
                        "xi": point
                            .xi
                            .iter()
                            .map(|parameter| {
                                parameter.iter().map(coordinate_to_json).collect::<Vec<_>>()
                            })
                            .collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// The insertion map: replaces each labelled point by a scaled standard
/// group inside a cylinder of radius `ρ(Θ)`, the product-distance radius
/// `(1/5)·min d(y_l, y_m)` (or 1 for a single point).
///
/// The image has dexterity at least `r − s`, with equality exactly when all
/// disc parameters vanish.
pub fn insertion_map(theta: &LabeledConfiguration) -> Result<VerticalConfiguration, ClusterError> {
    let p = theta.p();
    let rho = insertion_radius(theta);
    let mut clusters: Vec<Vec<RationalPoint>> = Vec::new();
    let zero = vec![BigRational::zero(); p as usize];
    for point in theta.points() {
        let e = &point.partition;
        let w = e.weight();
        let y_zeta = &point.y.coords()[..p as usize];
        let y_t = &point.y.coords()[p as usize];
        for (b, block) in e.blocks().iter().enumerate() {
            let xi = if b == 0 { &zero } else { &point.xi[b - 1] };
            let cluster: Vec<RationalPoint> = standard_cluster(theta.k(), w, block, xi)
                .into_iter()
                .map(|standard_point| {
                    let coords: Vec<BigRational> = standard_point
                        .coords()
                        .iter()
                        .enumerate()
                        .map(|(c, value)| {
                            let base = if c < p as usize { &y_zeta[c] } else { y_t };
                            base + &rho * value
                        })
                        .collect();
                    RationalPoint::new(coords)
                })
                .collect();
            clusters.push(cluster);
        }
    }
    Ok(VerticalConfiguration::new(p, 1, clusters)?)
}

/// The cylinder radius `ρ(Θ)`.
///
/// The product distance takes the Euclidean distance of the first `p`
/// coordinates against the distance of the last; the Euclidean part is
/// irrational in general, so a rational lower bound stands in for it (exact
/// for `p ≤ 1`). Every property of the insertion map holds for any radius
/// not exceeding the exact one.
pub fn insertion_radius(theta: &LabeledConfiguration) -> BigRational {
    let points = theta.points();
    if points.len() <= 1 {
        return BigRational::one();
    }
    let p = theta.p() as usize;
    let mut min: Option<BigRational> = None;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let a = points[i].y.coords();
            let b = points[j].y.coords();
            let zeta_sq = distance_squared(&a[..p], &b[..p]);
            let zeta = sqrt_lower_bound(&zeta_sq);
            let mut dt = &a[p] - &b[p];
            if dt < BigRational::zero() {
                dt = -dt;
            }
            let product_distance = zeta.max(dt);
            min = Some(match min {
                Some(current) => current.min(product_distance),
                None => product_distance,
            });
        }
    }
    min.expect("at least one pair") / BigRational::from_integer(5.into())
}

/// A finitely supported multiset of irreducible partitions (all of one
/// cluster size), with entries in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    entries: Vec<(IrreduciblePartition, u32)>,
}

impl Distribution {
    /// Builds a distribution from partition multiplicities; entries with
    /// zero multiplicity are dropped and the rest sorted canonically.
    pub fn new(entries: Vec<(IrreduciblePartition, u32)>) -> Self {
        let mut merged: BTreeMap<IrreduciblePartition, u32> = BTreeMap::new();
        for (e, mult) in entries {
            if mult > 0 {
                *merged.entry(e).or_default() += mult;
            }
        }
        let mut entries: Vec<(IrreduciblePartition, u32)> = merged.into_iter().collect();
        entries.sort_by(|(a, _), (b, _)| {
            (a.weight(), a.blocks()).cmp(&(b.weight(), b.blocks()))
        });
        Distribution { entries }
    }

    pub fn entries(&self) -> &[(IrreduciblePartition, u32)] {
        &self.entries
    }

    pub fn multiplicity(&self, e: &IrreduciblePartition) -> u32 {
        self.entries
            .iter()
            .find(|(entry, _)| entry == e)
            .map(|(_, mult)| *mult)
            .unwrap_or(0)
    }

    /// The degree `(r, s) = (Σ α_e·w(e), Σ α_e·(w(e)−1))`.
    pub fn degree(&self) -> (u32, u32) {
        let r = self
            .entries
            .iter()
            .map(|(e, mult)| mult * e.weight())
            .sum();
        let s = self
            .entries
            .iter()
            .map(|(e, mult)| mult * (e.weight() - 1))
            .sum();
        (r, s)
    }

    /// The distribution with one more copy of `e_0`; raises `r` by 1 and
    /// keeps `s`.
    pub fn plus_e0(&self, k: u32) -> Distribution {
        let mut entries = self.entries.clone();
        entries.push((IrreduciblePartition::e0(k), 1));
        Distribution::new(entries)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(e, mult)| format!("{mult}*({e})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// All distributions over irreducible partitions of cluster size `k` with
/// degree exactly `(r, s)`, in a deterministic order.
///
/// Since every partition other than `e_0` has weight defect at least 1, only
/// weights up to `s + 1` can occur in the support, so the enumeration
/// terminates.
pub fn enumerate_distributions(
    k: u32,
    r: u32,
    s: u32,
    limits: &ClusterLimits,
) -> Result<Vec<Distribution>, ClusterError> {
    assert!(k >= 1);
    let mut pool: Vec<IrreduciblePartition> = Vec::new();
    for w in 2..=s.saturating_add(1) {
        pool.extend(enumerate_irreducible(k, w, limits)?);
    }
    let mut out = Vec::new();
    let mut multiplicities = vec![0u32; pool.len()];
    distribute(k, r, s, &pool, 0, &mut multiplicities, &mut out);
    Ok(out)
}

fn distribute(
    k: u32,
    r_left: u32,
    s_left: u32,
    pool: &[IrreduciblePartition],
    index: usize,
    multiplicities: &mut Vec<u32>,
    out: &mut Vec<Distribution>,
) {
    if index == pool.len() {
        if s_left > 0 {
            return;
        }
        // the remaining weight is soaked up by copies of e_0
        let mut entries: Vec<(IrreduciblePartition, u32)> = pool
            .iter()
            .cloned()
            .zip(multiplicities.iter().copied())
            .filter(|(_, mult)| *mult > 0)
            .collect();
        if r_left > 0 {
            entries.push((IrreduciblePartition::e0(k), r_left));
        }
        out.push(Distribution::new(entries));
        return;
    }
    let w = pool[index].weight();
    let max_mult = (s_left / (w - 1)).min(r_left / w);
    for mult in 0..=max_mult {
        multiplicities[index] = mult;
        distribute(
            k,
            r_left - mult * w,
            s_left - mult * (w - 1),
            pool,
            index + 1,
            multiplicities,
            out,
        );
    }
    multiplicities[index] = 0;
}

/// Sign of a permutation given as a sequence of 1-based images.
fn permutation_sign(perm: &[u32]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The orientation character of a distribution: the product over the support
/// of `sg(σ_e)` raised to `p·(w(e)−1)`.
///
/// `sigma` assigns to the `i`-th support entry a permutation of
/// `{1,…,α_{e_i}}`, aligned with `alpha.entries()`.
pub fn orientation_character(
    alpha: &Distribution,
    p: u32,
    sigma: &[Vec<u32>],
) -> Result<i8, ClusterError> {
    if sigma.len() != alpha.entries().len() {
        return Err(ClusterError::SupportMismatch {
            detail: format!(
                "distribution has {} support entries, got {} permutations",
                alpha.entries().len(),
                sigma.len()
            ),
        });
    }
    let mut character = 1i8;
    for ((e, mult), perm) in alpha.entries().iter().zip(sigma) {
        if perm.len() != *mult as usize {
            return Err(ClusterError::SupportMismatch {
                detail: format!(
                    "entry {e} has multiplicity {mult}, got a permutation of length {}",
                    perm.len()
                ),
            });
        }
        let mut seen = vec![false; *mult as usize];
        for &image in perm {
            if image < 1 || image > *mult || seen[image as usize - 1] {
                return Err(ClusterError::SupportMismatch {
                    detail: format!("not a permutation of 1..={mult}"),
                });
            }
            seen[image as usize - 1] = true;
        }
        let exponent = p as u64 * (e.weight() as u64 - 1);
        if exponent % 2 == 1 && permutation_sign(perm) == -1 {
            character = -character;
        }
    }
    Ok(character)
}

/// The largest homological degree in which adjoining one cluster is
/// guaranteed to induce an isomorphism: `⌊r/2⌋`.
pub fn stability_range(r: u64) -> u64 {
    r / 2
}
