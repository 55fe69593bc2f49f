//! Irreducible characters of the symmetric groups by the
//! Murnaghan-Nakayama rule.

use std::collections::HashMap;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

static CHARACTER_MEMO: Lazy<DashMap<(Partition, Partition), BigInt>> = Lazy::new(DashMap::new);

/// `chi_lambda(mu)`: the character of the irreducible representation
/// `lambda` on the conjugacy class of cycle type `mu`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            left: lambda.to_string(),
            left_weight: lambda.weight(),
            right: mu.to_string(),
            right_weight: mu.weight(),
        });
    }
    Ok(character(lambda, mu))
}

/// Unchecked variant for callers that already matched the weights.
pub(crate) fn character(lambda: &Partition, mu: &Partition) -> BigInt {
    if mu.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = CHARACTER_MEMO.get(&key) {
        return v.clone();
    }
    let strip = mu.largest().unwrap();
    let rest = mu.tail();
    let mut total = BigInt::zero();
    for (sign, smaller) in remove_border_strips(lambda, strip) {
        let v = character(&smaller, &rest);
        if sign {
            total -= v;
        } else {
            total += v;
        }
    }
    CHARACTER_MEMO.insert(key, total.clone());
    total
}

/// All ways of removing a border strip of the given size. Each entry carries
/// `true` when the strip has odd height.
fn remove_border_strips(lambda: &Partition, size: u32) -> Vec<(bool, Partition)> {
    let n = lambda.len();
    // beta numbers lambda_i + n - 1 - i, strictly decreasing
    let beta: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (n - 1 - i) as u32)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < size {
            continue;
        }
        let target = b - size;
        if beta.contains(&target) {
            continue;
        }
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (n - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        out.push((crossed % 2 == 1, Partition::from_parts(&parts)));
    }
    out
}

/// Full character table of the symmetric group on `d` letters, rows and
/// columns in [`partitions_of`] order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub d: u32,
    pub partitions: Vec<Partition>,
    values: Vec<Vec<BigInt>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn new(d: u32) -> Self {
        let partitions = partitions_of(d).to_vec();
        let values = partitions
            .iter()
            .map(|lam| partitions.iter().map(|mu| character(lam, mu)).collect())
            .collect();
        let index = partitions
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Self {
            d,
            partitions,
            values,
            index,
        }
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        let i = *self.index.get(lambda)?;
        let j = *self.index.get(mu)?;
        Some(&self.values[i][j])
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[BigInt]> {
        self.index.get(lambda).map(|&i| self.values[i].as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::z_lambda;
    use num_rational::BigRational;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    fn hook_length_dimension(lambda: &Partition) -> BigInt {
        let n = lambda.weight();
        let conj = lambda.conjugate();
        let mut hooks = BigInt::one();
        for (i, &row) in lambda.parts().iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts()[j] as usize - i - 1;
                hooks *= arm + leg + 1;
            }
        }
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        fact / hooks
    }

    #[test]
    fn examples() {
        for mu in partitions_of(5).iter() {
            assert_eq!(mn_character(&p(&[5]), mu).unwrap(), BigInt::one());
        }
        assert_eq!(
            mn_character(&p(&[1, 1]), &p(&[2])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            mn_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            mn_character(&Partition::empty(), &Partition::empty()).unwrap(),
            BigInt::one()
        );
        assert!(matches!(
            mn_character(&p(&[2]), &p(&[1])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn identity_class_gives_dimension() {
        for d in 1..=8 {
            let identity = p(&vec![1; d as usize]);
            for lam in partitions_of(d).iter() {
                assert_eq!(
                    character(lam, &identity),
                    hook_length_dimension(lam),
                    "{lam}"
                );
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for d in 0..=8 {
            let parts = partitions_of(d);
            for mu in parts.iter() {
                for nu in parts.iter() {
                    let s: BigInt = parts
                        .iter()
                        .map(|l| character(l, mu) * character(l, nu))
                        .sum();
                    let expected = if mu == nu {
                        z_lambda(mu)
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expected, "{mu} {nu}");
                }
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for d in 1..=7 {
            let table = CharacterTable::new(d);
            for (i, a) in table.partitions.iter().enumerate() {
                for b in &table.partitions[i..] {
                    let s: BigRational = table
                        .partitions
                        .iter()
                        .map(|mu| {
                            BigRational::new(
                                table.value(a, mu).unwrap() * table.value(b, mu).unwrap(),
                                z_lambda(mu),
                            )
                        })
                        .sum();
                    let expected = if a == b {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    assert_eq!(s, expected);
                }
            }
        }
    }

    #[test]
    fn conjugation_twists_by_sign() {
        for d in 1..=6 {
            for mu in partitions_of(d).iter() {
                let odd = mu.parts().iter().filter(|&&k| k % 2 == 0).count() % 2 == 1;
                for lam in partitions_of(d).iter() {
                    let twisted = character(&lam.conjugate(), mu);
                    let base = character(lam, mu);
                    assert_eq!(twisted, if odd { -base } else { base });
                }
            }
        }
    }

    #[test]
    fn basis_change_round_trip() {
        // coordinates c_lambda -> b_mu = sum_lambda chi_lambda(mu) c_lambda
        // -> c'_lambda = sum_mu chi_lambda(mu) b_mu / z_mu
        for d in 1..=6 {
            let parts = partitions_of(d);
            let coords: Vec<BigRational> = (0..parts.len())
                .map(|i| {
                    BigRational::new(BigInt::from(3 * i as i64 - 2), BigInt::from(i as i64 + 1))
                })
                .collect();
            let bosonic: Vec<BigRational> = parts
                .iter()
                .map(|mu| {
                    parts
                        .iter()
                        .zip(&coords)
                        .map(|(l, c)| c * BigRational::from_integer(character(l, mu)))
                        .sum()
                })
                .collect();
            for (lam, c) in parts.iter().zip(&coords) {
                let back: BigRational = parts
                    .iter()
                    .zip(&bosonic)
                    .map(|(mu, b)| b * BigRational::new(character(lam, mu), z_lambda(mu)))
                    .sum();
                assert_eq!(&back, c);
            }
        }
    }
}
