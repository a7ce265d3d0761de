//! Independent brute-force verifiers for the algorithmic claims of the other
//! modules.
//!
//! Every oracle here stays independent of the implementation it checks: the
//! witnessed-partition filter never calls the greedy construction, and the
//! overlap-graph connectivity check never calls the prefix-based
//! irreducibility test. Random instances are generated from explicit seeds
//! with small exact rationals, and configurations sharing vertical lines are
//! produced with boosted probability, since uniform rationals would almost
//! never exercise the witnessing conditions.

use std::cmp::Ordering;

use num::{BigRational, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::betti::{closed_form_r3, arnold_polynomial, BettiTable, PoincarePolynomial};
use crate::cluster::{
    enumerate_distributions, enumerate_irreducible, is_irreducible, standard_group_of_blocks,
    ClusterLimits, IrreduciblePartition,
};
use crate::enumerate::{enumerate_ray_partitions, EnumerationLimits};
use crate::geometry::{Component, RationalPoint, VerticalConfiguration};
use crate::profile::factorial;
use crate::ray::RayPartition;
use crate::rational::{int, ratio};
use crate::shape::ClusterShape;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force over {total}! ray partitions is capped at total {max_total}")]
    SizeGuard { total: u32, max_total: u32 },
}

/// Outcome of one oracle run; a failing report always carries a concrete
/// counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub name: String,
    pub instance: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl OracleReport {
    fn pass(name: &str, instance: String) -> Self {
        OracleReport {
            name: name.to_string(),
            instance,
            passed: true,
            witness: None,
        }
    }

    fn fail(name: &str, instance: String, witness: String) -> Self {
        OracleReport {
            name: name.to_string(),
            instance,
            passed: false,
            witness: Some(witness),
        }
    }
}

const BRUTE_FORCE_MAX_TOTAL: u32 = 7;

/// All ray partitions witnessed by a configuration, found by filtering the
/// full enumeration through the witnessing check. Capped at seven points.
pub fn brute_force_witnessed(
    z: &VerticalConfiguration,
) -> Result<Vec<RayPartition>, OracleError> {
    let shape = z.shape();
    if shape.total() > BRUTE_FORCE_MAX_TOTAL {
        return Err(OracleError::SizeGuard {
            total: shape.total(),
            max_total: BRUTE_FORCE_MAX_TOTAL,
        });
    }
    Ok(enumerate_ray_partitions(&shape)
        .filter(|q| {
            z.witnesses(q)
                .expect("enumeration produces partitions of the right shape")
                .is_witnessed()
        })
        .collect())
}

/// Checks that the greedy ray partition of `z` is witnessed and has strictly
/// maximal weight among all witnessed ray partitions.
pub fn verify_maximality(z: &VerticalConfiguration) -> Result<OracleReport, OracleError> {
    let name = "greedy-maximality";
    let instance = format!("shape {} p={} q={}", z.shape(), z.p(), z.q());
    let witnessed = brute_force_witnessed(z)?;
    let greedy = z.greedy_ray_partition();
    if !witnessed.contains(&greedy) {
        return Ok(OracleReport::fail(
            name,
            instance,
            format!("greedy partition `{}` is not witnessed", greedy.to_text()),
        ));
    }
    for other in &witnessed {
        if *other == greedy {
            continue;
        }
        let cmp = compare_weights(&greedy.weight(), &other.weight())
            .expect("witnessed partitions share the total");
        if cmp != Ordering::Greater {
            return Ok(OracleReport::fail(
                name,
                instance,
                format!(
                    "witnessed partition `{}` has weight {} not below {}",
                    other.to_text(),
                    other.weight(),
                    greedy.weight()
                ),
            ));
        }
    }
    Ok(OracleReport::pass(name, instance))
}

/// Seeded random vertical configurations with small rational coordinates
/// and boosted alignment.
pub struct ConfigurationGenerator {
    rng: StdRng,
    max_total: u32,
}

impl ConfigurationGenerator {
    pub fn new(seed: u64, max_total: u32) -> Self {
        ConfigurationGenerator {
            rng: StdRng::seed_from_u64(seed),
            max_total,
        }
    }

    fn small_rational(&mut self) -> BigRational {
        let numer = self.rng.random_range(-12i64..=12);
        let denom = *[1i64, 2, 3].get(self.rng.random_range(0..3usize)).unwrap();
        ratio(numer, denom)
    }

    /// One random configuration. Cluster projections are drawn from a pool
    /// smaller than the cluster count, so shared vertical lines are common.
    pub fn next_configuration(&mut self) -> VerticalConfiguration {
        let p = self.rng.random_range(0..=2u32);
        let q = if self.rng.random_range(0..4u32) == 0 { 2 } else { 1 };
        let total_target = self.rng.random_range(2..=self.max_total.max(2));
        let mut sizes: Vec<u32> = Vec::new();
        let mut remaining = total_target;
        while remaining > 0 {
            let size = self.rng.random_range(1..=remaining.min(3));
            sizes.push(size);
            remaining -= size;
        }

        // a cramped pool of projections boosts alignment
        let pool_size = (sizes.len() / 2).max(1);
        let mut pool: Vec<Vec<BigRational>> = Vec::new();
        for _ in 0..pool_size {
            pool.push((0..p).map(|_| self.small_rational()).collect());
        }
        let mid_pool: Vec<BigRational> = vec![self.small_rational(), self.small_rational()];

        let mut used_lines: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut clusters: Vec<Vec<RationalPoint>> = Vec::new();
        for &size in &sizes {
            let x = pool[self.rng.random_range(0..pool.len())].clone();
            let mut cluster = Vec::with_capacity(size as usize);
            for _ in 0..size {
                loop {
                    let mut zeta = x.clone();
                    for _ in 0..q - 1 {
                        // middle coordinates also come from a small pool
                        let value = if self.rng.random_range(0..4u32) < 3 {
                            mid_pool[self.rng.random_range(0..mid_pool.len())].clone()
                        } else {
                            self.small_rational()
                        };
                        zeta.push(value);
                    }
                    let t = self.small_rational();
                    if !used_lines.iter().any(|(line, lt)| *line == zeta && *lt == t) {
                        used_lines.push((zeta.clone(), t.clone()));
                        let mut coords = zeta;
                        coords.push(t);
                        cluster.push(RationalPoint::new(coords));
                        break;
                    }
                }
            }
            clusters.push(cluster);
        }
        VerticalConfiguration::new(p, q, clusters)
            .expect("generator avoids collisions and shares first coordinates per cluster")
    }

    /// Moves every point of `z` by strictly less than half its separation
    /// bound: one shared shift for the first `p` coordinates of each cluster
    /// (keeping verticality) and an independent shift for the rest.
    pub fn perturb(&mut self, z: &VerticalConfiguration) -> VerticalConfiguration {
        let Some(epsilon) = z.separation_lower_bound() else {
            return z.clone();
        };
        let dim = (z.p() + z.q()) as usize;
        // per-coordinate budget: the 1-norm bounds the Euclidean norm
        let budget = epsilon / int(4 * dim as i64);
        let mut clusters: Vec<Vec<RationalPoint>> = Vec::new();
        for cluster in z.clusters() {
            let mut shared: Vec<BigRational> = Vec::new();
            for _ in 0..z.p() {
                shared.push(self.delta(&budget));
            }
            let mut moved = Vec::with_capacity(cluster.len());
            for point in cluster {
                let mut coords = Vec::with_capacity(dim);
                for (c, value) in point.coords().iter().enumerate() {
                    if c < shared.len() {
                        coords.push(value + &shared[c]);
                    } else {
                        coords.push(value + self.delta(&budget));
                    }
                }
                moved.push(RationalPoint::new(coords));
            }
            clusters.push(moved);
        }
        VerticalConfiguration::new(z.p(), z.q(), clusters)
            .expect("perturbations below half the separation preserve validity")
    }

    fn delta(&mut self, budget: &BigRational) -> BigRational {
        let numer = self.rng.random_range(-3i64..=3);
        ratio(numer, 4) * budget
    }
}

/// Runs `instances` seeded maximality checks on random configurations; for
/// `q = 1` also checks that the greedy partition's component label matches
/// the configuration's.
pub fn maximality_sweep(seed: u64, instances: u32, max_total: u32) -> Vec<OracleReport> {
    let mut generator = ConfigurationGenerator::new(seed, max_total.min(6));
    let mut reports = Vec::with_capacity(instances as usize);
    for index in 0..instances {
        let z = generator.next_configuration();
        let mut report = verify_maximality(&z).expect("generator respects the brute-force cap");
        report.instance = format!("seed {seed} instance {index}: {}", report.instance);
        if report.passed {
            if let Component::Label(label) = z.component() {
                let sigma = z.greedy_ray_partition().sigma();
                if sigma != label {
                    report.passed = false;
                    report.witness = Some(format!(
                        "greedy sigma {sigma} differs from component {label}"
                    ));
                }
            }
        }
        reports.push(report);
    }
    reports
}

/// Runs `instances` seeded perturbation checks: moving every point by less
/// than half the separation bound never increases the greedy weight.
pub fn perturbation_sweep(seed: u64, instances: u32, max_total: u32) -> Vec<OracleReport> {
    let name = "perturbation-stability";
    let mut generator = ConfigurationGenerator::new(seed, max_total.min(6));
    let mut reports = Vec::with_capacity(instances as usize);
    for index in 0..instances {
        let z = generator.next_configuration();
        let base_weight = z.greedy_ray_partition().weight();
        let perturbed = generator.perturb(&z);
        let moved_weight = perturbed.greedy_ray_partition().weight();
        let instance = format!("seed {seed} instance {index}: shape {}", z.shape());
        let cmp = compare_weights(&moved_weight, &base_weight)
            .expect("perturbation preserves the number of points");
        if cmp == Ordering::Greater {
            reports.push(OracleReport::fail(
                name,
                instance,
                format!("weight rose from {base_weight} to {moved_weight}"),
            ));
        } else {
            reports.push(OracleReport::pass(name, instance));
        }
    }
    reports
}

/// Bounds for [`consistency_suite`].
#[derive(Debug, Clone, Copy)]
pub struct ConsistencyLimits {
    /// Count identity checked for every composition up to this total.
    pub count_total_max: u32,
    /// Reference-polynomial cross-check up to this total.
    pub arnold_total_max: u32,
    /// Irreducibility equivalence checked for cluster sizes up to this bound …
    pub irreducible_k_max: u32,
    /// … and `w·k` up to this bound.
    pub irreducible_wk_max: u32,
    /// Degree inequality checked for all distributions with `r` up to this.
    pub distribution_r_max: u32,
}

impl Default for ConsistencyLimits {
    fn default() -> Self {
        ConsistencyLimits {
            count_total_max: 6,
            arnold_total_max: 6,
            irreducible_k_max: 3,
            irreducible_wk_max: 8,
            distribution_r_max: 6,
        }
    }
}

/// All compositions of `n` (ordered tuples of positive integers summing to
/// `n`).
fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn check_count_identity(total_max: u32) -> Vec<OracleReport> {
    let name = "count-identity";
    let mut reports = Vec::new();
    for n in 1..=total_max {
        for sizes in compositions(n) {
            let shape = ClusterShape::new(sizes).expect("parts are positive");
            let count = enumerate_ray_partitions(&shape).count();
            let expected = factorial(n);
            let instance = format!("shape {shape}");
            if num::BigUint::from(count) == expected {
                reports.push(OracleReport::pass(name, instance));
            } else {
                reports.push(OracleReport::fail(
                    name,
                    instance,
                    format!("counted {count}, expected {n}! = {expected}"),
                ));
            }
        }
    }
    reports
}

fn check_arnold(total_max: u32) -> Vec<OracleReport> {
    let name = "reference-polynomial";
    let limits = EnumerationLimits::unbounded();
    let mut reports = Vec::new();
    for n in 1..=total_max {
        for q in [2u32, 3] {
            let reference = arnold_polynomial(n, q);
            let mut shapes = vec![vec![n], vec![1; n as usize]];
            if n >= 3 {
                shapes.push(vec![2, n - 2]);
            }
            for sizes in shapes {
                let shape = ClusterShape::new(sizes).expect("positive parts");
                let table = BettiTable::compute(&shape, 0, q, None, &limits)
                    .expect("within explicit bounds");
                let instance = format!("shape {shape} q={q}");
                if PoincarePolynomial::from_betti(&table) == reference {
                    reports.push(OracleReport::pass(name, instance));
                } else {
                    reports.push(OracleReport::fail(
                        name,
                        instance,
                        format!("table {:?} does not match {reference}", table.ranks),
                    ));
                }
            }
        }
    }
    reports
}

fn check_component_symmetry() -> Vec<OracleReport> {
    let name = "component-symmetry";
    let limits = EnumerationLimits::unbounded();
    let mut reports = Vec::new();
    for sizes in [vec![2u32, 2], vec![2, 2, 2]] {
        let shape = ClusterShape::new(sizes).expect("positive parts");
        let instance = format!("shape {shape} p=1 q=1");
        let split = BettiTable::by_component(&shape, 1, &limits).expect("within bounds");
        let component_count: num::BigUint =
            shape.sizes().iter().map(|&k| factorial(k)).product();
        if num::BigUint::from(split.len()) != component_count {
            reports.push(OracleReport::fail(
                name,
                instance,
                format!("{} components, expected {component_count}", split.len()),
            ));
            continue;
        }
        let mut tables = split.values();
        let first = tables.next().expect("at least one component").ranks.clone();
        if let Some(differing) = split.values().find(|t| t.ranks != first) {
            reports.push(OracleReport::fail(
                name,
                instance,
                format!(
                    "component {} has a different table",
                    differing
                        .component
                        .as_ref()
                        .expect("per-component tables carry labels")
                ),
            ));
            continue;
        }
        let aggregate =
            BettiTable::compute(&shape, 1, 1, None, &limits).expect("within bounds");
        let scaled: std::collections::BTreeMap<u64, num::BigUint> = first
            .iter()
            .map(|(&degree, rank)| (degree, rank * &component_count))
            .collect();
        if aggregate.ranks == scaled {
            reports.push(OracleReport::pass(name, instance));
        } else {
            reports.push(OracleReport::fail(
                name,
                instance,
                "aggregate table is not the common table times the component count".to_string(),
            ));
        }
    }
    reports
}

/// Uniform partition generation for the equivalence check, written
/// independently of the `cluster` module's enumerator.
fn uniform_partitions(k: u32, w: u32) -> Vec<Vec<Vec<u32>>> {
    fn place(
        k: u32,
        total: u32,
        unused: &mut Vec<u32>,
        current: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if unused.is_empty() {
            out.push(current.clone());
            return;
        }
        let seed = unused[0];
        // choose k−1 companions for the seed from the remaining elements
        fn choose(
            pool: &[u32],
            need: usize,
            start: usize,
            picked: &mut Vec<u32>,
            sink: &mut dyn FnMut(&[u32]),
        ) {
            if need == 0 {
                sink(picked);
                return;
            }
            for i in start..=pool.len().saturating_sub(need) {
                picked.push(pool[i]);
                choose(pool, need - 1, i + 1, picked, sink);
                picked.pop();
            }
        }
        let pool: Vec<u32> = unused[1..].to_vec();
        let mut picked = Vec::new();
        let mut companions: Vec<Vec<u32>> = Vec::new();
        choose(&pool, k as usize - 1, 0, &mut picked, &mut |chosen| {
            companions.push(chosen.to_vec())
        });
        for companion in companions {
            let mut block = vec![seed];
            block.extend(&companion);
            let rest: Vec<u32> = unused
                .iter()
                .copied()
                .filter(|x| !block.contains(x))
                .collect();
            let saved = std::mem::replace(unused, rest);
            current.push(block);
            place(k, total, unused, current, out);
            current.pop();
            *unused = saved;
        }
    }
    let mut unused: Vec<u32> = (1..=w * k).collect();
    let mut current = Vec::new();
    let mut out = Vec::new();
    place(k, w * k, &mut unused, &mut current, &mut out);
    out
}

/// Connectivity of the interval-overlap graph of a block list: blocks are
/// nodes, joined when their `[min, max]` ranges intersect.
fn overlap_graph_connected(blocks: &[Vec<u32>]) -> bool {
    let spans: Vec<(u32, u32)> = blocks
        .iter()
        .map(|block| {
            (
                *block.iter().min().expect("blocks are nonempty"),
                *block.iter().max().expect("blocks are nonempty"),
            )
        })
        .collect();
    let mut reached = vec![false; spans.len()];
    let mut stack = vec![0usize];
    reached[0] = true;
    while let Some(node) = stack.pop() {
        for other in 0..spans.len() {
            if !reached[other]
                && spans[node].0 <= spans[other].1
                && spans[other].0 <= spans[node].1
            {
                reached[other] = true;
                stack.push(other);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

fn check_irreducibility_equivalence(k_max: u32, wk_max: u32) -> Vec<OracleReport> {
    let name = "irreducibility-equivalence";
    let mut reports = Vec::new();
    for k in 1..=k_max {
        for w in 1..=(wk_max / k).max(1) {
            if w * k > wk_max {
                continue;
            }
            let instance = format!("k={k} w={w}");
            let all = uniform_partitions(k, w);
            let mut irreducible_here = Vec::new();
            let mut failure = None;
            for blocks in &all {
                let by_definition = is_irreducible(k, blocks);
                let by_graph = overlap_graph_connected(blocks);
                let zeros = vec![vec![BigRational::zero()]; w as usize - 1];
                let group = standard_group_of_blocks(k, blocks, &zeros, 1)
                    .expect("centred standard group of any uniform partition is valid");
                let by_dexterity =
                    group.dexterity().expect("standard groups live at q = 1").dexterity == 1;
                if by_definition != by_graph || by_graph != by_dexterity {
                    failure = Some(format!(
                        "blocks {} disagree: definition {by_definition}, graph {by_graph}, dexterity {by_dexterity}",
                        crate::cluster::format_blocks(blocks),
                    ));
                    break;
                }
                if by_definition {
                    irreducible_here.push(blocks.clone());
                }
            }
            if let Some(witness) = failure {
                reports.push(OracleReport::fail(name, instance, witness));
                continue;
            }
            let listed: Vec<Vec<Vec<u32>>> =
                enumerate_irreducible(k, w, &ClusterLimits::unbounded())
                    .expect("unbounded")
                    .into_iter()
                    .map(|e| e.blocks().to_vec())
                    .collect();
            let mut expected = irreducible_here;
            expected.sort();
            let mut got = listed;
            got.sort();
            if expected == got {
                reports.push(OracleReport::pass(name, instance));
            } else {
                reports.push(OracleReport::fail(
                    name,
                    instance,
                    "enumerated irreducible set differs from the filtered brute force"
                        .to_string(),
                ));
            }
        }
    }
    reports
}

fn check_closed_form() -> Vec<OracleReport> {
    let name = "closed-form-r3";
    let limits = EnumerationLimits::unbounded();
    let mut reports = Vec::new();
    for k in [1u32, 2] {
        let shape = ClusterShape::new(vec![k, k, k]).expect("k >= 1");
        let identity = crate::ray::ComponentLabel::identity(&shape);
        let table = BettiTable::compute(&shape, 1, 1, Some(&identity), &limits)
            .expect("within bounds");
        let closed = closed_form_r3(k, 1);
        let instance = format!("k={k} p=1");
        if table.ranks == closed.ranks {
            reports.push(OracleReport::pass(name, instance));
        } else {
            reports.push(OracleReport::fail(
                name,
                instance,
                format!("enumerated {:?}, closed form {:?}", table.ranks, closed.ranks),
            ));
        }
    }
    reports
}

fn check_degree_inequality(r_max: u32) -> Vec<OracleReport> {
    let name = "degree-inequality";
    let mut reports = Vec::new();
    for k in [1u32, 2] {
        for r_plus_one in 2..=r_max {
            for s in 1..r_plus_one {
                let distributions = match enumerate_distributions(
                    k,
                    r_plus_one,
                    s,
                    &ClusterLimits::default(),
                ) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                for alpha in distributions {
                    if alpha.multiplicity(&IrreduciblePartition::e0(k)) > 0 {
                        continue;
                    }
                    let instance = format!("k={k} alpha={alpha} deg=({r_plus_one},{s})");
                    // p·s ≥ (r+1)/2 for all p ≥ 1 reduces to its p = 1 case
                    if 2 * s >= r_plus_one {
                        reports.push(OracleReport::pass(name, instance));
                    } else {
                        reports.push(OracleReport::fail(
                            name,
                            instance,
                            format!("2·{s} < {r_plus_one}"),
                        ));
                    }
                }
            }
        }
    }
    reports
}

/// Runs the six structural cross-checks and returns their reports, sorted by
/// name and instance. Items run independently in parallel; the merge is
/// order-independent.
pub fn consistency_suite(limits: &ConsistencyLimits) -> Vec<OracleReport> {
    let limits = *limits;
    let items: Vec<Box<dyn Fn() -> Vec<OracleReport> + Send + Sync>> = vec![
        Box::new(move || check_count_identity(limits.count_total_max)),
        Box::new(move || check_arnold(limits.arnold_total_max)),
        Box::new(check_component_symmetry),
        Box::new(move || {
            check_irreducibility_equivalence(limits.irreducible_k_max, limits.irreducible_wk_max)
        }),
        Box::new(check_closed_form),
        Box::new(move || check_degree_inequality(limits.distribution_r_max)),
    ];
    let mut reports: Vec<OracleReport> =
        items.par_iter().flat_map(|item| item()).collect();
    reports.sort_by(|a, b| (&a.name, &a.instance).cmp(&(&b.name, &b.instance)));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn config(p: u32, q: u32, clusters: &[&[&[i64]]]) -> VerticalConfiguration {
        let clusters = clusters
            .iter()
            .map(|cluster| {
                cluster
                    .iter()
                    .map(|coords| RationalPoint::new(coords.iter().map(|&c| int(c)).collect()))
                    .collect()
            })
            .collect();
        VerticalConfiguration::new(p, q, clusters).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        // single cluster, x = 0, t = (3, 1, 2)
        let z = config(1, 1, &[&[&[0, 3], &[0, 1], &[0, 2]]]);
        let witnessed: Vec<String> = brute_force_witnessed(&z)
            .unwrap()
            .iter()
            .map(|q| q.to_text())
            .collect();
        assert_eq!(witnessed.len(), 2);
        assert!(witnessed.contains(&"1.1 | 1.2 | 1.3".to_string()));
        assert!(witnessed.contains(&"1.1 | 1.2 1.3".to_string()));

        // pairwise distinct projections leave only singletons
        let generic = config(1, 1, &[&[&[0, 1]], &[&[5, 2]]]);
        let witnessed = brute_force_witnessed(&generic).unwrap();
        assert_eq!(witnessed.len(), 1);
        assert_eq!(witnessed[0].to_text(), "1.1 | 2.1");

        // sorted pair: both the singleton and the joined partition
        let sorted = config(1, 1, &[&[&[0, 1], &[0, 2]]]);
        let witnessed = brute_force_witnessed(&sorted).unwrap();
        assert_eq!(witnessed.len(), 2);
    }

    #[test]
    fn brute_force_guard() {
        let z = config(
            1,
            1,
            &[&[&[0, 1], &[0, 2], &[0, 3], &[0, 4]], &[&[1, 1], &[1, 2], &[1, 3], &[1, 4]]],
        );
        assert_eq!(
            brute_force_witnessed(&z),
            Err(OracleError::SizeGuard {
                total: 8,
                max_total: 7
            })
        );
    }

    #[test]
    fn maximality_examples() {
        let z = config(1, 1, &[&[&[0, 3], &[0, 1], &[0, 2]]]);
        assert!(verify_maximality(&z).unwrap().passed);
        let generic = config(1, 1, &[&[&[0, 1]], &[&[5, 2]]]);
        assert!(verify_maximality(&generic).unwrap().passed);
    }

    #[test]
    fn small_random_sweeps_pass() {
        assert!(maximality_sweep(7, 25, 5).iter().all(|r| r.passed));
        assert!(perturbation_sweep(11, 25, 5).iter().all(|r| r.passed));
    }

    #[test]
    fn suite_passes_at_small_limits() {
        let limits = ConsistencyLimits {
            count_total_max: 4,
            arnold_total_max: 4,
            irreducible_k_max: 2,
            irreducible_wk_max: 6,
            distribution_r_max: 4,
        };
        let reports = consistency_suite(&limits);
        assert!(!reports.is_empty());
        for report in &reports {
            assert!(report.passed, "{}: {:?}", report.name, report.witness);
        }
        // sorted by name, then instance
        let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn generator_is_reproducible() {
        let mut a = ConfigurationGenerator::new(42, 6);
        let mut b = ConfigurationGenerator::new(42, 6);
        for _ in 0..5 {
            assert_eq!(a.next_configuration(), b.next_configuration());
        }
    }
}
