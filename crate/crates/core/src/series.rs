//! Truncated multivariate series in `Q^d` with `QRatio` coefficients: the
//! partition function along three independent paths, its logarithm, and the
//! free energy as a sum over connected combined forests.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph_engine::enumerate_combined_forests;
use crate::partitions::{enumerate_rsets, kappa, partitions_of, Partition, RSet};
use crate::qalgebra::{qnum_product, QRatio};
use crate::schur_vertex::{matrix_element_char, w_vertex};

/// Degree vectors of length `r` with total at most `max_total_degree` and,
/// if `bound` is given, componentwise below it. Graded, then lexicographic.
pub fn degree_vectors(r: usize, max_total_degree: u32, bound: Option<&[u32]>) -> Vec<Vec<u32>> {
    fn rec(
        slot: usize,
        remaining: u32,
        bound: Option<&[u32]>,
        prefix: &mut Vec<u32>,
        r: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if slot == r {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let cap = bound.map_or(remaining, |b| b[slot].min(remaining));
        for d in 0..=cap {
            prefix.push(d);
            rec(slot + 1, remaining - d, bound, prefix, r, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=max_total_degree {
        rec(0, total, bound, &mut Vec::with_capacity(r), r, &mut out);
    }
    out
}

/// Truncated series over a down-closed set of degree vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSeries {
    r: usize,
    max_total_degree: u32,
    bound: Option<Vec<u32>>,
    order: Vec<Vec<u32>>,
    coefficients: HashMap<Vec<u32>, QRatio>,
}

impl DegreeSeries {
    pub fn zero(r: usize, max_total_degree: u32, bound: Option<Vec<u32>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidInput(format!("series need r >= 2, got {r}")));
        }
        if let Some(b) = &bound {
            if b.len() != r {
                return Err(Error::InvalidInput(format!(
                    "degree bound {b:?} does not have length {r}"
                )));
            }
        }
        let order = degree_vectors(r, max_total_degree, bound.as_deref());
        Ok(Self {
            r,
            max_total_degree,
            bound,
            order,
            coefficients: HashMap::new(),
        })
    }

    /// Fills every coefficient from `f`, evaluated in parallel.
    pub fn from_fn<F>(
        r: usize,
        max_total_degree: u32,
        bound: Option<Vec<u32>>,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&[u32]) -> Result<QRatio> + Sync,
    {
        let mut series = Self::zero(r, max_total_degree, bound)?;
        let values: Vec<QRatio> = series
            .order
            .par_iter()
            .map(|d| f(d))
            .collect::<Result<_>>()?;
        for (d, v) in series.order.clone().into_iter().zip(values) {
            series.set(&d, v)?;
        }
        Ok(series)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn bound(&self) -> Option<&[u32]> {
        self.bound.as_deref()
    }

    /// Degree vectors in graded-lex order, the zero vector first.
    pub fn degrees(&self) -> &[Vec<u32>] {
        &self.order
    }

    pub fn contains(&self, degree: &[u32]) -> bool {
        degree.len() == self.r
            && degree.iter().sum::<u32>() <= self.max_total_degree
            && self
                .bound
                .as_ref()
                .is_none_or(|b| degree.iter().zip(b).all(|(d, b)| d <= b))
    }

    pub fn coefficient(&self, degree: &[u32]) -> Option<QRatio> {
        if !self.contains(degree) {
            return None;
        }
        Some(self.coefficients.get(degree).cloned().unwrap_or_default())
    }

    pub fn constant(&self) -> QRatio {
        self.coefficient(&vec![0; self.r])
            .expect("zero degree is always in range")
    }

    pub fn set(&mut self, degree: &[u32], value: QRatio) -> Result<()> {
        if !self.contains(degree) {
            return Err(Error::InvalidInput(format!(
                "degree {degree:?} is outside the series range"
            )));
        }
        if value.is_zero() {
            self.coefficients.remove(degree);
        } else {
            self.coefficients.insert(degree.to_vec(), value);
        }
        Ok(())
    }

    fn same_shape(&self, other: &DegreeSeries) -> Result<()> {
        if self.r != other.r
            || self.max_total_degree != other.max_total_degree
            || self.bound != other.bound
        {
            return Err(Error::InvalidInput("series ranges differ".into()));
        }
        Ok(())
    }

    fn map_entries(&self, f: impl Fn(&[u32]) -> QRatio + Sync) -> DegreeSeries {
        let values: Vec<QRatio> = self.order.par_iter().map(|d| f(d)).collect();
        let mut out = Self {
            coefficients: HashMap::new(),
            ..self.clone()
        };
        for (d, v) in self.order.iter().zip(values) {
            if !v.is_zero() {
                out.coefficients.insert(d.clone(), v);
            }
        }
        out
    }

    pub fn add(&self, other: &DegreeSeries) -> Result<DegreeSeries> {
        self.same_shape(other)?;
        Ok(self.map_entries(|d| {
            self.coefficient(d).unwrap_or_default() + other.coefficient(d).unwrap_or_default()
        }))
    }

    pub fn scale(&self, factor: &BigRational) -> DegreeSeries {
        self.map_entries(|d| self.coefficient(d).unwrap_or_default().scale(factor))
    }

    /// Truncated product.
    pub fn mul(&self, other: &DegreeSeries) -> Result<DegreeSeries> {
        self.same_shape(other)?;
        Ok(self.map_entries(|d| {
            let mut total = QRatio::zero();
            for (left_degree, left) in &self.coefficients {
                if left_degree.iter().zip(d).any(|(a, b)| a > b) {
                    continue;
                }
                let rest: Vec<u32> = d.iter().zip(left_degree).map(|(a, b)| a - b).collect();
                if let Some(right) = other.coefficients.get(&rest) {
                    total += &(left * right);
                }
            }
            total
        }))
    }

    fn require_unit_constant(&self) -> Result<()> {
        if !self.constant().is_one() {
            return Err(Error::InvalidInput(format!(
                "logarithm needs constant term 1, got {}",
                self.constant()
            )));
        }
        Ok(())
    }

    /// `log Z = sum_{m >= 1} (-1)^{m+1} (Z - 1)^m / m`.
    pub fn log_series(&self) -> Result<DegreeSeries> {
        self.require_unit_constant()?;
        let mut shifted = self.clone();
        shifted.coefficients.remove(&vec![0; self.r]);
        let mut power = shifted.clone();
        let mut total = shifted.clone();
        for m in 2..=self.max_total_degree as i64 {
            power = power.mul(&shifted)?;
            if power.coefficients.is_empty() {
                break;
            }
            let sign = if m % 2 == 0 { -1 } else { 1 };
            total = total.add(&power.scale(&BigRational::new(sign.into(), m.into())))?;
        }
        Ok(total)
    }

    /// The same logarithm by `|d| F_d = |d| Z_d - sum_{0 < d' < d} |d'| F_{d'} Z_{d - d'}`.
    pub fn log_series_recurrence(&self) -> Result<DegreeSeries> {
        self.require_unit_constant()?;
        let mut out = Self {
            coefficients: HashMap::new(),
            ..self.clone()
        };
        for d in self.order.iter().skip(1) {
            let size: u32 = d.iter().sum();
            let mut acc = self
                .coefficient(d)
                .unwrap_or_default()
                .scale(&BigRational::from_integer(size.into()));
            for (fd, f) in &out.coefficients {
                if fd.iter().zip(d).any(|(a, b)| a > b) {
                    continue;
                }
                let rest: Vec<u32> = d.iter().zip(fd).map(|(a, b)| a - b).collect();
                if let Some(z) = self.coefficients.get(&rest) {
                    let weight = BigRational::from_integer(fd.iter().sum::<u32>().into());
                    acc -= &(f * z).scale(&weight);
                }
            }
            let value = acc.scale(&BigRational::new(1.into(), size.into()));
            if !value.is_zero() {
                out.coefficients.insert(d.clone(), value);
            }
        }
        Ok(out)
    }
}

fn check_input(gamma: &[i64], degree: &[u32]) -> Result<()> {
    if gamma.len() < 2 || gamma.len() != degree.len() {
        return Err(Error::InvalidInput(format!(
            "gamma {gamma:?} and degree {degree:?} must have the same length r >= 2"
        )));
    }
    Ok(())
}

fn sign_of(exponent: i64) -> BigRational {
    BigRational::from_integer(if exponent.rem_euclid(2) == 0 { 1 } else { -1 }.into())
}

fn gamma_dot(gamma: &[i64], degree: &[u32]) -> i64 {
    gamma.iter().zip(degree).map(|(g, &d)| g * d as i64).sum()
}

/// `Z_d` from the vertex-weight definition, summing over `lambda^i` of size
/// `d_i`.
pub fn z_coefficient_def(gamma: &[i64], degree: &[u32]) -> Result<QRatio> {
    check_input(gamma, degree)?;
    if degree.iter().all(|&d| d == 0) {
        return Ok(QRatio::one());
    }
    let r = degree.len();
    let choices: Vec<_> = degree.iter().map(|&d| partitions_of(d)).collect();
    let mut index = vec![0usize; r];
    let mut total = QRatio::zero();
    loop {
        let tuple: Vec<&Partition> = (0..r).map(|i| &choices[i][index[i]]).collect();
        let framing: i64 = (0..r).map(|i| gamma[i] * kappa(tuple[i])).sum();
        let mut term = QRatio::x_pow(framing);
        for i in 0..r {
            term = &term * &w_vertex(tuple[i], tuple[(i + 1) % r]);
            if term.is_zero() {
                break;
            }
        }
        total += &term;

        let mut slot = 0;
        loop {
            if slot == r {
                return Ok(total.scale(&sign_of(gamma_dot(gamma, degree))));
            }
            index[slot] += 1;
            if index[slot] < choices[slot].len() {
                break;
            }
            index[slot] = 0;
            slot += 1;
        }
    }
}

fn rsets_of(degree: &[u32]) -> Result<Vec<RSet>> {
    enumerate_rsets(degree.len(), degree)
}

fn inverse_weight(rset: &RSet) -> BigRational {
    BigRational::new(BigInt::from(1), rset.z_product())
}

/// `Z_d` through matrix elements of `q^{(gamma_i + 2) F_2}` over r-sets.
pub fn z_coefficient_matrix(gamma: &[i64], degree: &[u32]) -> Result<QRatio> {
    check_input(gamma, degree)?;
    if degree.iter().all(|&d| d == 0) {
        return Ok(QRatio::one());
    }
    let r = degree.len();
    let terms: Vec<QRatio> = rsets_of(degree)?
        .par_iter()
        .map(|rset| -> Result<QRatio> {
            let mut numerator = crate::qalgebra::QLaurent::one();
            let mut denominator = crate::qalgebra::QLaurent::one();
            for (i, &framing) in gamma.iter().enumerate() {
                let left = rset.lambda[i].union(&rset.mu[i]);
                let right = rset.nu[i].union(&rset.lambda[(i + 1) % r]);
                numerator = &numerator * &matrix_element_char(&left, framing + 2, &right)?;
                if numerator.is_zero() {
                    return Ok(QRatio::zero());
                }
                denominator = &denominator * &qnum_product(&rset.mu[i]);
                denominator = &denominator * &qnum_product(&rset.nu[i]);
            }
            let lengths: usize = rset.mu.iter().chain(&rset.nu).map(Partition::len).sum();
            let weight = inverse_weight(rset) * sign_of(lengths as i64);
            Ok(QRatio::from_laurents(&numerator, &denominator)?.scale(&weight))
        })
        .collect::<Result<_>>()?;
    let total: QRatio = terms.iter().sum();
    Ok(total.scale(&sign_of(gamma_dot(gamma, degree))))
}

fn forest_sum(gamma: &[i64], degree: &[u32], connected_only: bool) -> Result<QRatio> {
    check_input(gamma, degree)?;
    let terms: Vec<QRatio> = rsets_of(degree)?
        .par_iter()
        .map(|rset| -> Result<QRatio> {
            let forests = enumerate_combined_forests(rset, gamma, connected_only)?;
            let sum: QRatio = forests.iter().map(|w| w.amplitude_h()).sum();
            Ok(sum.scale(&inverse_weight(rset)))
        })
        .collect::<Result<_>>()?;
    Ok(terms.iter().sum())
}

/// `Z_d` as a sum of combined-forest amplitudes over all forests.
pub fn z_graphs(gamma: &[i64], degree: &[u32]) -> Result<QRatio> {
    if degree.iter().all(|&d| d == 0) {
        check_input(gamma, degree)?;
        return Ok(QRatio::one());
    }
    forest_sum(gamma, degree, false)
}

/// `F_d` as a sum over connected combined forests.
pub fn f_connected(gamma: &[i64], degree: &[u32]) -> Result<QRatio> {
    if degree.iter().all(|&d| d == 0) {
        check_input(gamma, degree)?;
        return Ok(QRatio::zero());
    }
    forest_sum(gamma, degree, true)
}

/// How the partition-function coefficients are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZPath {
    Definition,
    Matrix,
    Graphs,
}

impl ZPath {
    pub fn coefficient(self, gamma: &[i64], degree: &[u32]) -> Result<QRatio> {
        match self {
            ZPath::Definition => z_coefficient_def(gamma, degree),
            ZPath::Matrix => z_coefficient_matrix(gamma, degree),
            ZPath::Graphs => z_graphs(gamma, degree),
        }
    }
}

/// The partition function truncated to the given range.
pub fn z_series(
    gamma: &[i64],
    max_total_degree: u32,
    bound: Option<Vec<u32>>,
    path: ZPath,
) -> Result<DegreeSeries> {
    DegreeSeries::from_fn(gamma.len(), max_total_degree, bound, |d| {
        path.coefficient(gamma, d)
    })
}

/// The free energy `log Z` on the given range.
pub fn free_energy(
    gamma: &[i64],
    max_total_degree: u32,
    bound: Option<Vec<u32>>,
) -> Result<DegreeSeries> {
    z_series(gamma, max_total_degree, bound, ZPath::Definition)?.log_series()
}
