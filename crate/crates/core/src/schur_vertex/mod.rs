//! Skew Schur functions at the principal specialization, the vertex weight
//! `W_{mu,nu}(q)`, and matrix elements of `q^{a F_2}` between bosonic
//! states.

mod fock;

pub use fock::{apply_e, vev_fock, FockVector};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::characters::character;
use crate::error::{Error, Result};
use crate::partitions::{kappa, partitions_of, z_lambda, Partition};
use crate::qalgebra::{qnum_product, QLaurent, QRatio};

static SKEW_MEMO: Lazy<DashMap<(Partition, Partition), QRatio>> = Lazy::new(DashMap::new);
static VERTEX_MEMO: Lazy<DashMap<(Partition, Partition), QRatio>> = Lazy::new(DashMap::new);
static MATRIX_MEMO: Lazy<DashMap<(Partition, i64, Partition), QLaurent>> = Lazy::new(DashMap::new);

/// `s_{mu/eta}` evaluated at `p_i = -1/[i]`, via the power-sum expansion
/// `sum p_{mu'} chi_mu(mu' + eta') chi_eta(eta') / (z_{mu'} z_{eta'})`.
pub fn skew_schur_qrho(mu: &Partition, eta: &Partition) -> QRatio {
    if eta.weight() > mu.weight() {
        return QRatio::zero();
    }
    let key = (mu.clone(), eta.clone());
    if let Some(v) = SKEW_MEMO.get(&key) {
        return v.clone();
    }
    let outer = mu.weight() - eta.weight();
    let mut total = QRatio::zero();
    for mu_class in partitions_of(outer).iter() {
        let mut scalar = BigRational::zero();
        for eta_class in partitions_of(eta.weight()).iter() {
            let chi_eta = character(eta, eta_class);
            if chi_eta.is_zero() {
                continue;
            }
            let chi_mu = character(mu, &mu_class.union(eta_class));
            if chi_mu.is_zero() {
                continue;
            }
            scalar += BigRational::new(chi_mu * chi_eta, z_lambda(mu_class) * z_lambda(eta_class));
        }
        if scalar.is_zero() {
            continue;
        }
        if mu_class.len() % 2 == 1 {
            scalar = -scalar;
        }
        let power_sum = QRatio::from_laurents(&QLaurent::one(), &qnum_product(mu_class))
            .expect("q-numbers of positive parts are nonzero");
        total += &power_sum.scale(&scalar);
    }
    SKEW_MEMO.insert(key, total.clone());
    total
}

/// The vertex weight
/// `(-1)^{|mu|+|nu|} q^{(kappa(mu)+kappa(nu))/2} sum_eta s_{mu/eta} s_{nu/eta}`.
pub fn w_vertex(mu: &Partition, nu: &Partition) -> QRatio {
    let key = if mu <= nu {
        (mu.clone(), nu.clone())
    } else {
        (nu.clone(), mu.clone())
    };
    if let Some(v) = VERTEX_MEMO.get(&key) {
        return v.clone();
    }
    let mut total = QRatio::zero();
    for w in 0..=mu.weight().min(nu.weight()) {
        for eta in partitions_of(w).iter() {
            let left = skew_schur_qrho(mu, eta);
            if left.is_zero() {
                continue;
            }
            let right = skew_schur_qrho(nu, eta);
            total += &(&left * &right);
        }
    }
    let mut value = total.mul_x_pow(kappa(mu) + kappa(nu));
    if (mu.weight() + nu.weight()) % 2 == 1 {
        value = -value;
    }
    VERTEX_MEMO.insert(key, value.clone());
    value
}

/// `<mu| q^{a F_2} |nu> = sum_lambda chi_lambda(mu) chi_lambda(nu) q^{a kappa(lambda)/2}`.
pub fn matrix_element_char(mu: &Partition, a: i64, nu: &Partition) -> Result<QLaurent> {
    if mu.weight() != nu.weight() {
        return Err(Error::WeightMismatch {
            left: mu.to_string(),
            left_weight: mu.weight(),
            right: nu.to_string(),
            right_weight: nu.weight(),
        });
    }
    let key = (mu.clone(), a, nu.clone());
    if let Some(v) = MATRIX_MEMO.get(&key) {
        return Ok(v.clone());
    }
    let classes = partitions_of(mu.weight());
    let terms: Vec<_> = classes
        .iter()
        .filter_map(|lambda| {
            let c: BigInt = character(lambda, mu) * character(lambda, nu);
            (!c.is_zero()).then(|| (a * kappa(lambda), BigRational::from_integer(c)))
        })
        .collect();
    let value = QLaurent::from_terms(terms);
    MATRIX_MEMO.insert(key, value.clone());
    Ok(value)
}
