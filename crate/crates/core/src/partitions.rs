//! Integer partitions and r-sets.
//!
//! Partitions are stored with non-increasing positive parts. The empty
//! partition has no parts.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Builds a partition from arbitrary positive parts, sorting them.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Panics on a zero part. Intended for literals.
    pub fn from_parts(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("partition literal with a zero part")
    }

    pub fn single(part: u32) -> Self {
        if part == 0 {
            Self::empty()
        } else {
            Self { parts: vec![part] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Multiplicities `k -> m_k`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// The partition with the largest part removed.
    pub fn tail(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.largest().unwrap_or(0);
        let parts = (1..=width)
            .map(|col| self.parts.iter().filter(|&&p| p >= col).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn scale(&self, factor: u32) -> Result<Partition> {
        if factor == 0 {
            return Err(Error::InvalidInput("cannot scale a partition by 0".into()));
        }
        Ok(Partition {
            parts: self.parts.iter().map(|p| p * factor).collect(),
        })
    }

    /// Removes one occurrence of each part of `other`, if all are present.
    pub fn difference(&self, other: &Partition) -> Option<Partition> {
        let mut parts = self.parts.clone();
        for p in &other.parts {
            let pos = parts.iter().position(|q| q == p)?;
            parts.remove(pos);
        }
        Some(Partition { parts })
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            z: z_lambda(self),
            aut_size: aut_size(self),
            conjugate: self.conjugate(),
            content_gcd: content_gcd(self),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub z: BigInt,
    pub aut_size: BigInt,
    pub conjugate: Partition,
    pub content_gcd: u32,
}

/// Twice the content sum: `sum_i p_i (p_i - 2i + 1)`.
pub fn kappa(lambda: &Partition) -> i64 {
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let p = p as i64;
            p * (p - 2 * (i as i64 + 1) + 1)
        })
        .sum()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

pub fn aut_size(lambda: &Partition) -> BigInt {
    lambda
        .multiplicities()
        .values()
        .fold(BigInt::from(1), |acc, &m| acc * factorial(m))
}

/// Centralizer order of the cycle type `lambda`.
pub fn z_lambda(lambda: &Partition) -> BigInt {
    let prod: BigInt = lambda.parts.iter().map(|&p| BigInt::from(p)).product();
    prod * aut_size(lambda)
}

/// Gcd of the parts; 0 for the empty partition.
pub fn content_gcd(lambda: &Partition) -> u32 {
    lambda.parts.iter().fold(0, |acc, &p| acc.gcd(&p))
}

/// Gcd over a tuple of partitions, skipping empty ones. `None` when every
/// partition is empty.
pub fn tuple_gcd<'a>(tuple: impl IntoIterator<Item = &'a Partition>) -> Option<u32> {
    let g = tuple
        .into_iter()
        .map(content_gcd)
        .fold(0, |acc, g| acc.gcd(&g));
    (g != 0).then_some(g)
}

pub enum CombineOp<'a> {
    Union(&'a Partition, &'a Partition),
    Scale(u32, &'a Partition),
}

pub fn combine(op: CombineOp<'_>) -> Result<Partition> {
    match op {
        CombineOp::Union(a, b) => Ok(a.union(b)),
        CombineOp::Scale(k, p) => p.scale(k),
    }
}

static PARTITION_CACHE: Lazy<RwLock<Vec<Arc<[Partition]>>>> = Lazy::new(|| RwLock::new(Vec::new()));

/// All partitions of `d` in reverse-lexicographic order, shared from a cache.
pub fn partitions_of(d: u32) -> Arc<[Partition]> {
    let d = d as usize;
    if let Some(hit) = PARTITION_CACHE.read().unwrap().get(d) {
        return hit.clone();
    }
    let mut cache = PARTITION_CACHE.write().unwrap();
    while cache.len() <= d {
        let n = cache.len() as u32;
        cache.push(enumerate_uncached(n).into());
    }
    cache[d].clone()
}

/// All partitions of `d` in reverse-lexicographic order: `(d)` first,
/// `(1^d)` last.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    partitions_of(d).to_vec()
}

fn enumerate_uncached(d: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// A triple of partition r-tuples satisfying the cyclic balance
/// `|mu^i| + |lambda^i| = |nu^i| + |lambda^{i+1}|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RSet {
    pub mu: Vec<Partition>,
    pub nu: Vec<Partition>,
    pub lambda: Vec<Partition>,
}

impl RSet {
    pub fn new(mu: Vec<Partition>, nu: Vec<Partition>, lambda: Vec<Partition>) -> Result<Self> {
        let r = mu.len();
        if r < 2 || nu.len() != r || lambda.len() != r {
            return Err(Error::InvalidInput(format!(
                "r-set needs three tuples of equal length >= 2, got {}, {}, {}",
                mu.len(),
                nu.len(),
                lambda.len()
            )));
        }
        let set = Self { mu, nu, lambda };
        for i in 0..r {
            let left = set.mu[i].weight() + set.lambda[i].weight();
            let right = set.nu[i].weight() + set.lambda[(i + 1) % r].weight();
            if left != right {
                return Err(Error::InvalidInput(format!(
                    "r-set unbalanced at slot {}: {left} != {right}",
                    i + 1
                )));
            }
        }
        Ok(set)
    }

    pub fn r(&self) -> usize {
        self.mu.len()
    }

    pub fn degree(&self) -> Vec<u32> {
        self.mu
            .iter()
            .zip(&self.lambda)
            .map(|(m, l)| m.weight() + l.weight())
            .collect()
    }

    pub fn total_length(&self) -> usize {
        self.mu
            .iter()
            .chain(&self.nu)
            .chain(&self.lambda)
            .map(Partition::len)
            .sum()
    }

    /// `z_mu z_nu z_lambda` over all slots.
    pub fn z_product(&self) -> BigInt {
        self.mu
            .iter()
            .chain(&self.nu)
            .chain(&self.lambda)
            .map(z_lambda)
            .product()
    }

    /// Gcd of all parts; `None` for the all-empty r-set.
    pub fn part_gcd(&self) -> Option<u32> {
        tuple_gcd(self.mu.iter().chain(&self.nu).chain(&self.lambda))
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Partition]| {
            v.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "mu=[{}] nu=[{}] lambda=[{}]",
            show(&self.mu),
            show(&self.nu),
            show(&self.lambda)
        )
    }
}

fn check_degree(r: usize, degree: &[u32]) -> Result<()> {
    if r < 2 || degree.len() != r {
        return Err(Error::InvalidInput(format!(
            "degree vector {degree:?} must have length r = {r} >= 2"
        )));
    }
    if degree.iter().all(|&d| d == 0) {
        return Err(Error::InvalidInput(
            "the zero degree vector has no r-sets".into(),
        ));
    }
    Ok(())
}

/// Every r-set of the given degree. The lambda tuple is chosen first, then
/// mu and nu fill the remaining weight of each slot.
pub fn enumerate_rsets(r: usize, degree: &[u32]) -> Result<Vec<RSet>> {
    check_degree(r, degree)?;
    let mut lambdas: Vec<Vec<Partition>> = vec![Vec::new()];
    for i in 0..r {
        let cap = degree[i].min(degree[(i + r - 1) % r]);
        let mut next = Vec::new();
        for prefix in &lambdas {
            for w in 0..=cap {
                for lam in partitions_of(w).iter() {
                    let mut v = prefix.clone();
                    v.push(lam.clone());
                    next.push(v);
                }
            }
        }
        lambdas = next;
    }

    let mut out = Vec::new();
    for lambda in lambdas {
        let mu_weights: Vec<u32> = (0..r).map(|i| degree[i] - lambda[i].weight()).collect();
        let nu_weights: Vec<u32> = (0..r)
            .map(|i| degree[i] - lambda[(i + 1) % r].weight())
            .collect();
        let mut tuples: Vec<(Vec<Partition>, Vec<Partition>)> = vec![(Vec::new(), Vec::new())];
        for i in 0..r {
            let mut next = Vec::new();
            for (mu, nu) in &tuples {
                for m in partitions_of(mu_weights[i]).iter() {
                    for n in partitions_of(nu_weights[i]).iter() {
                        let mut mu = mu.clone();
                        let mut nu = nu.clone();
                        mu.push(m.clone());
                        nu.push(n.clone());
                        next.push((mu, nu));
                    }
                }
            }
            tuples = next;
        }
        for (mu, nu) in tuples {
            out.push(RSet {
                mu,
                nu,
                lambda: lambda.clone(),
            });
        }
    }
    Ok(out)
}
