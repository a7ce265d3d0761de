//! Betti tables of vertical cluster configuration spaces, aggregated by
//! streaming over ray partitions.
//!
//! The table of a shape at a split `(p, q)` is the histogram of the degree
//! `p·(r − a(Q)) + (q−1)·(|k| − l(Q))` over all ray partitions `Q` of that
//! shape; for `q = 1` the histogram may be restricted to the partitions
//! carrying a fixed component label. Partitions are never materialized:
//! memory is proportional to the number of distinct degrees (times the
//! number of components for the per-component map).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigUint, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{choice_prefixes, visit_ray_partitions, visit_shard, EnumerationError, EnumerationLimits};
use crate::profile::factorial;
use crate::ray::{agility_of_blocks, degree_of, sigma_of_blocks, ComponentLabel};
use crate::shape::ClusterShape;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BettiError {
    #[error(transparent)]
    Guard(#[from] EnumerationError),
    /// Components label path components only when `q = 1`; for `q ≥ 2` the
    /// space is connected.
    #[error("a component label was supplied with q = {q}; components are meaningful only for q = 1")]
    ComponentMeaningless { q: u32 },
    #[error("component label does not match shape {shape}")]
    ComponentShapeMismatch { shape: ClusterShape },
    #[error("aggregate rank at degree {degree} is not divisible by the component count")]
    NotDivisible { degree: u64 },
}

/// Map from cohomological degree to rank, for one shape and split — the
/// whole space or a single `q = 1` component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub shape: ClusterShape,
    pub p: u32,
    pub q: u32,
    pub component: Option<ComponentLabel>,
    pub ranks: BTreeMap<u64, BigUint>,
}

impl BettiTable {
    /// Histogram of degrees over all ray partitions of `shape`, restricted to
    /// one component when `component` is given (`q = 1` only).
    pub fn compute(
        shape: &ClusterShape,
        p: u32,
        q: u32,
        component: Option<&ComponentLabel>,
        limits: &EnumerationLimits,
    ) -> Result<Self, BettiError> {
        Self::compute_with_jobs(shape, p, q, component, limits, 1)
    }

    /// Like [`BettiTable::compute`], sharding the enumeration over `jobs`
    /// worker threads. Shards merge by rank addition, so the result is
    /// identical for every worker count.
    pub fn compute_with_jobs(
        shape: &ClusterShape,
        p: u32,
        q: u32,
        component: Option<&ComponentLabel>,
        limits: &EnumerationLimits,
        jobs: usize,
    ) -> Result<Self, BettiError> {
        assert!(q >= 1, "q must be at least 1");
        limits.check(shape)?;
        if component.is_some() && q >= 2 {
            return Err(BettiError::ComponentMeaningless { q });
        }
        if let Some(sigma) = component {
            if ComponentLabel::new(shape, sigma.perms().to_vec()).is_none() {
                return Err(BettiError::ComponentShapeMismatch {
                    shape: shape.clone(),
                });
            }
        }

        let tally = |ranks: &mut BTreeMap<u64, BigUint>, blocks: &crate::enumerate::Blocks| {
            if let Some(sigma) = component {
                if sigma_of_blocks(shape, blocks) != *sigma {
                    return;
                }
            }
            let degree = degree_of(shape, blocks.len(), agility_of_blocks(shape, blocks), p, q);
            *ranks.entry(degree).or_default() += 1u32;
        };

        let ranks = if jobs <= 1 {
            let mut ranks = BTreeMap::new();
            visit_ray_partitions(shape, |blocks| tally(&mut ranks, blocks));
            ranks
        } else {
            // shard on the placements of the first ceil(|k|/2) indices
            let depth = (shape.total() as usize).div_ceil(2);
            let prefixes = choice_prefixes(depth);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| {
                use rayon::prelude::*;
                prefixes
                    .par_iter()
                    .map(|prefix| {
                        let mut local = BTreeMap::new();
                        visit_shard(shape, prefix, |blocks| tally(&mut local, blocks));
                        local
                    })
                    .reduce(BTreeMap::new, merge_ranks)
            })
        };

        Ok(BettiTable {
            shape: shape.clone(),
            p,
            q,
            component: component.cloned(),
            ranks,
        })
    }

    /// Per-component tables for `q = 1`, keyed by component label, in one
    /// enumeration pass.
    pub fn by_component(
        shape: &ClusterShape,
        p: u32,
        limits: &EnumerationLimits,
    ) -> Result<BTreeMap<ComponentLabel, BettiTable>, BettiError> {
        limits.check(shape)?;
        let mut split: BTreeMap<ComponentLabel, BTreeMap<u64, BigUint>> = BTreeMap::new();
        visit_ray_partitions(shape, |blocks| {
            let sigma = sigma_of_blocks(shape, blocks);
            let degree = degree_of(shape, blocks.len(), agility_of_blocks(shape, blocks), p, 1);
            *split.entry(sigma).or_default().entry(degree).or_default() += 1u32;
        });
        Ok(split
            .into_iter()
            .map(|(sigma, ranks)| {
                let table = BettiTable {
                    shape: shape.clone(),
                    p,
                    q: 1,
                    component: Some(sigma.clone()),
                    ranks,
                };
                (sigma, table)
            })
            .collect())
    }

    /// Fast path for a single `q = 1` component: divides the aggregate table
    /// by the component count `∏ k_i!`.
    ///
    /// The underlying symmetry (all components carry identical tables) is
    /// itself checked by the oracle suite rather than assumed; this fails
    /// with [`BettiError::NotDivisible`] if a rank is not an exact multiple.
    pub fn component_table_by_symmetry(
        shape: &ClusterShape,
        p: u32,
        component: &ComponentLabel,
        limits: &EnumerationLimits,
    ) -> Result<Self, BettiError> {
        let aggregate = Self::compute(shape, p, 1, None, limits)?;
        let count: BigUint = shape.sizes().iter().map(|&k| factorial(k)).product();
        let mut ranks = BTreeMap::new();
        for (&degree, rank) in &aggregate.ranks {
            if !(rank % &count).is_zero() {
                return Err(BettiError::NotDivisible { degree });
            }
            ranks.insert(degree, rank / &count);
        }
        Ok(BettiTable {
            shape: shape.clone(),
            p,
            q: 1,
            component: Some(component.clone()),
            ranks,
        })
    }

    /// Total rank: the number of ray partitions counted, `|k|!` for the
    /// aggregate table.
    pub fn total_rank(&self) -> BigUint {
        self.ranks.values().sum()
    }

    /// `degree,rank` rows with a header, degrees ascending.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,rank\n");
        for (degree, rank) in &self.ranks {
            out.push_str(&format!("{degree},{rank}\n"));
        }
        out
    }
}

fn merge_ranks(
    mut into: BTreeMap<u64, BigUint>,
    from: BTreeMap<u64, BigUint>,
) -> BTreeMap<u64, BigUint> {
    for (degree, rank) in from {
        *into.entry(degree).or_default() += rank;
    }
    into
}

/// Formal polynomial in `t` with arbitrary-precision non-negative
/// coefficients; the generating function of a Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincarePolynomial {
    pub coefficients: BTreeMap<u64, BigUint>,
}

impl PoincarePolynomial {
    pub fn one() -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(0, BigUint::from(1u32));
        PoincarePolynomial { coefficients }
    }

    pub fn from_betti(table: &BettiTable) -> Self {
        PoincarePolynomial {
            coefficients: table.ranks.clone(),
        }
    }

    fn mul(&self, other: &PoincarePolynomial) -> PoincarePolynomial {
        let mut coefficients: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (&ea, ca) in &self.coefficients {
            for (&eb, cb) in &other.coefficients {
                *coefficients.entry(ea + eb).or_default() += ca * cb;
            }
        }
        PoincarePolynomial { coefficients }
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&exp, coeff) in &self.coefficients {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match exp {
                0 => write!(f, "{coeff}")?,
                1 if coeff == &BigUint::from(1u32) => f.write_str("t")?,
                1 => write!(f, "{coeff}t")?,
                _ if coeff == &BigUint::from(1u32) => write!(f, "t^{exp}")?,
                _ => write!(f, "{coeff}t^{exp}")?,
            }
        }
        Ok(())
    }
}

/// The Poincaré polynomial of the classical ordered configuration space of
/// `n` points in `R^q`: the product of `1 + i·t^(q−1)` for `i = 1..n−1`.
///
/// For `p = 0` the verticality condition is vacuous, so this is an
/// independent reference for any Betti table of a shape with total `n`.
pub fn arnold_polynomial(n: u32, q: u32) -> PoincarePolynomial {
    assert!(n >= 1, "n must be at least 1");
    assert!(q >= 2, "the reference product needs q at least 2");
    let mut out = PoincarePolynomial::one();
    for i in 1..n {
        let mut factor = PoincarePolynomial::one();
        factor
            .coefficients
            .insert(q as u64 - 1, BigUint::from(i));
        out = out.mul(&factor);
    }
    out
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::from(1u32);
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

/// Closed-form Betti table for three equal clusters of size `k` at `q = 1`,
/// `p ≥ 1`, restricted to the identity component: ranks `1`,
/// `3·(C(2k,k) − 1)` and `C(3k,k)·C(2k,k) − 3·C(2k,k) + 2` in degrees `0`,
/// `p` and `2p`.
pub fn closed_form_r3(k: u32, p: u32) -> BettiTable {
    assert!(k >= 1 && p >= 1);
    let c2k = binomial(2 * k as u64, k as u64);
    let c3k = binomial(3 * k as u64, k as u64);
    let (one, two, three) = (
        BigUint::from(1u32),
        BigUint::from(2u32),
        BigUint::from(3u32),
    );
    let mut ranks = BTreeMap::new();
    ranks.insert(0, BigUint::from(1u32));
    ranks.insert(p as u64, &three * (&c2k - &one));
    ranks.insert(2 * p as u64, &c3k * &c2k - &three * &c2k + &two);
    let shape = ClusterShape::new(vec![k, k, k]).expect("k >= 1");
    let component = ComponentLabel::identity(&shape);
    BettiTable {
        shape,
        p,
        q: 1,
        component: Some(component),
        ranks,
    }
}

/// One row of the arity-two inequality scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub k: u32,
    /// `C(3k,k)·C(2k,k) − 3·C(2k,k) + 2`: the rank in degree `2p`.
    pub lhs: BigUint,
    /// `(3·(C(2k,k) − 1))²`: the number of pairwise cup products available
    /// from degree `p`.
    pub rhs: BigUint,
    pub holds: bool,
    /// `lhs · 2πk / (√3 · 27^k)`, the ratio against the asymptotic growth.
    pub lhs_ratio: f64,
    /// `rhs · πk / (9 · 16^k)`.
    pub rhs_ratio: f64,
}

/// Scan report: rows for `k = 1..=k_max` and the first `k` (if any) where
/// `lhs > rhs`, i.e. where degree-`2p` classes cannot all be cup products.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureScan {
    pub rows: Vec<ConjectureRow>,
    pub minimal_failing_k: Option<u32>,
}

/// Evaluates, for `k = 1..=k_max`, whether the degree-`2p` rank of the
/// three-cluster table is bounded by the square of the degree-`p` rank, and
/// reports the asymptotic ratios of both sides.
pub fn conjecture_scan(k_max: u32) -> ConjectureScan {
    let mut rows = Vec::new();
    let mut minimal_failing_k = None;
    let (one, two, three) = (
        BigUint::from(1u32),
        BigUint::from(2u32),
        BigUint::from(3u32),
    );
    for k in 1..=k_max {
        let c2k = binomial(2 * k as u64, k as u64);
        let c3k = binomial(3 * k as u64, k as u64);
        let lhs = &c3k * &c2k - &three * &c2k + &two;
        let rhs = (&three * (&c2k - &one)).pow(2);
        let holds = lhs <= rhs;
        if !holds && minimal_failing_k.is_none() {
            minimal_failing_k = Some(k);
        }
        let kf = k as f64;
        let lhs_ratio =
            lhs.to_f64().unwrap_or(f64::INFINITY) * (2.0 * std::f64::consts::PI * kf)
                / (3f64.sqrt() * 27f64.powi(k as i32));
        let rhs_ratio = rhs.to_f64().unwrap_or(f64::INFINITY) * (std::f64::consts::PI * kf)
            / (9.0 * 16f64.powi(k as i32));
        rows.push(ConjectureRow {
            k,
            lhs,
            rhs,
            holds,
            lhs_ratio,
            rhs_ratio,
        });
    }
    ConjectureScan {
        rows,
        minimal_failing_k,
    }
}
