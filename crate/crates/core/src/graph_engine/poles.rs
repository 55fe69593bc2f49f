//! Pole data of single trees at `t_m`, with `m` the gcd of the leaf parts.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::forest::Tree;
use crate::error::{Error, Result};
use crate::qalgebra::{pole_extract, PoleMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PoleType {
    /// `m` odd and `n_root / m` odd.
    I,
    /// `n_root / m` even.
    II,
    /// `m` even and `n_root / m` odd.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePoleData {
    pub m: u32,
    pub g: BigInt,
    pub pole_type: PoleType,
}

pub fn classify(m: u32, root_energy: i64) -> PoleType {
    let ratio = root_energy / m as i64;
    if ratio % 2 == 0 {
        PoleType::II
    } else if m % 2 == 1 {
        PoleType::I
    } else {
        PoleType::III
    }
}

/// Residue data of `B(T)` at `t_m`: plain for types I and II, with the
/// `(1 + t_{m/2}/2)` factor for type III.
pub fn tree_pole_data(tree: &Tree<'_>) -> Result<TreePoleData> {
    let (left, right) = tree.leaf_parts();
    let m = left.iter().chain(&right).fold(0u32, |acc, p| acc.gcd(p));
    if m == 0 {
        return Err(Error::Graph("tree without leaves".into()));
    }
    let root_energy = tree.root_label().energy;
    if root_energy % m as i64 != 0 {
        return Err(Error::Graph(format!(
            "root energy {root_energy} is not a multiple of the leaf gcd {m}"
        )));
    }
    let pole_type = classify(m, root_energy);
    let mode = match pole_type {
        PoleType::III => PoleMode::Half,
        _ => PoleMode::Plain,
    };
    let split = pole_extract(&tree.amplitude_b(), m, mode)?;
    if !split.g.is_integer() {
        return Err(Error::NoSuchDecomposition {
            k: m,
            reason: format!("residue {} is not an integer", split.g),
        });
    }
    if !split.remainder.is_integral() {
        return Err(Error::NoSuchDecomposition {
            k: m,
            reason: format!("regular part {} is not integral", split.remainder),
        });
    }
    Ok(TreePoleData {
        m,
        g: split.g.to_integer(),
        pole_type,
    })
}
