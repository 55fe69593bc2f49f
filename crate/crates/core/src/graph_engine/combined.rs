//! Combined forests: one forest per slot of an r-set, joined by bridges
//! along the shared lambda parts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::forest::{generate_vev_forests, matrix_element_word, Tree, VevForest};
use crate::error::{Error, Result};
use crate::gv::mobius;
use crate::partitions::{Partition, RSet};
use crate::qalgebra::{qnum_ratio, QRatio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Mu,
    Nu,
    Lambda,
}

/// Where a leaf of a slot forest comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LeafRole {
    pub block: Block,
    pub source: Source,
    pub part: u32,
}

/// A leaf addressed by slot index and 1-based word position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafRef {
    pub slot: usize,
    pub position: usize,
}

/// Joins the right-block lambda leaf of one slot to the left-block leaf of
/// the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bridge {
    pub right_leaf: LeafRef,
    pub left_leaf: LeafRef,
    pub label: u32,
}

/// How equal lambda parts are matched across consecutive slots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BridgePairing {
    /// k-th outermost leaf on one side to the k-th outermost on the other.
    #[default]
    OuterToOuter,
    /// Left-to-right order on both sides.
    LeftToLeft,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinedForest {
    pub slots: Vec<VevForest>,
    pub roles: Vec<Vec<LeafRole>>,
    pub bridges: Vec<Bridge>,
}

/// Leaf roles of one slot word `(mu + lambda_in | nu + lambda_out)`. Among
/// equal parts the outermost positions belong to lambda.
fn slot_roles(
    mu: &Partition,
    lambda_in: &Partition,
    nu: &Partition,
    lambda_out: &Partition,
) -> Vec<LeafRole> {
    let mut roles = Vec::new();
    let left_parts: Vec<u32> = mu.union(lambda_in).parts().iter().rev().copied().collect();
    let mut i = 0;
    while i < left_parts.len() {
        let value = left_parts[i];
        let run = left_parts[i..].iter().take_while(|&&p| p == value).count();
        let lam = lambda_in.parts().iter().filter(|&&p| p == value).count();
        for k in 0..run {
            let source = if k < lam { Source::Lambda } else { Source::Mu };
            roles.push(LeafRole {
                block: Block::Left,
                source,
                part: value,
            });
        }
        i += run;
    }
    let right_parts = nu.union(lambda_out).parts().to_vec();
    let mut i = 0;
    while i < right_parts.len() {
        let value = right_parts[i];
        let run = right_parts[i..].iter().take_while(|&&p| p == value).count();
        let lam = lambda_out.parts().iter().filter(|&&p| p == value).count();
        for k in 0..run {
            let source = if k >= run - lam {
                Source::Lambda
            } else {
                Source::Nu
            };
            roles.push(LeafRole {
                block: Block::Right,
                source,
                part: value,
            });
        }
        i += run;
    }
    roles
}

/// Bridge endpoints for an r-set: independent of the chosen forests.
fn bridge_plan(roles: &[Vec<LeafRole>], rset: &RSet, pairing: BridgePairing) -> Vec<Bridge> {
    let r = rset.r();
    let mut bridges = Vec::new();
    for slot in 0..r {
        let prev = (slot + r - 1) % r;
        let mut values: Vec<u32> = rset.lambda[slot].parts().to_vec();
        values.dedup();
        for value in values {
            // left block of `slot`, listed left to right
            let left: Vec<usize> = roles[slot]
                .iter()
                .enumerate()
                .filter(|(_, role)| {
                    role.block == Block::Left && role.source == Source::Lambda && role.part == value
                })
                .map(|(i, _)| i + 1)
                .collect();
            let mut right: Vec<usize> = roles[prev]
                .iter()
                .enumerate()
                .filter(|(_, role)| {
                    role.block == Block::Right
                        && role.source == Source::Lambda
                        && role.part == value
                })
                .map(|(i, _)| i + 1)
                .collect();
            if pairing == BridgePairing::OuterToOuter {
                // outermost on the right block is the rightmost
                right.reverse();
            }
            for (&l, &rr) in left.iter().zip(&right) {
                bridges.push(Bridge {
                    right_leaf: LeafRef {
                        slot: prev,
                        position: rr,
                    },
                    left_leaf: LeafRef { slot, position: l },
                    label: value,
                });
            }
        }
    }
    bridges
}

/// All combined forests of an r-set with `gamma`.
pub fn enumerate_combined_forests(
    rset: &RSet,
    gamma: &[i64],
    connected_only: bool,
) -> Result<Vec<CombinedForest>> {
    enumerate_combined_forests_with(rset, gamma, connected_only, BridgePairing::default())
}

pub fn enumerate_combined_forests_with(
    rset: &RSet,
    gamma: &[i64],
    connected_only: bool,
    pairing: BridgePairing,
) -> Result<Vec<CombinedForest>> {
    let r = rset.r();
    if gamma.len() != r {
        return Err(Error::InvalidInput(format!(
            "gamma has length {} but the r-set has r = {r}",
            gamma.len()
        )));
    }
    let mut roles = Vec::with_capacity(r);
    let mut choices = Vec::with_capacity(r);
    for (i, &framing) in gamma.iter().enumerate() {
        let next = (i + 1) % r;
        let left = rset.mu[i].union(&rset.lambda[i]);
        let right = rset.nu[i].union(&rset.lambda[next]);
        roles.push(slot_roles(
            &rset.mu[i],
            &rset.lambda[i],
            &rset.nu[i],
            &rset.lambda[next],
        ));
        let (charges, energies) = matrix_element_word(&left, framing + 2, &right);
        choices.push(generate_vev_forests(&charges, &energies)?);
    }
    let bridges = bridge_plan(&roles, rset, pairing);

    let mut out = Vec::new();
    let mut index = vec![0usize; r];
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let forest = CombinedForest {
            slots: index
                .iter()
                .enumerate()
                .map(|(i, &k)| choices[i][k].clone())
                .collect(),
            roles: roles.clone(),
            bridges: bridges.clone(),
        };
        if !connected_only || forest.is_connected() {
            out.push(forest);
        }
        let mut slot = 0;
        loop {
            if slot == r {
                return Ok(out);
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

/// A tree of a combined forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeRef {
    pub slot: usize,
    pub root: usize,
}

impl CombinedForest {
    pub fn r(&self) -> usize {
        self.slots.len()
    }

    pub fn trees(&self) -> Vec<TreeRef> {
        let mut out = Vec::new();
        for (slot, f) in self.slots.iter().enumerate() {
            for t in f.trees() {
                out.push(TreeRef {
                    slot,
                    root: t.root(),
                });
            }
        }
        out
    }

    pub fn tree(&self, tree: TreeRef) -> Tree<'_> {
        self.slots[tree.slot]
            .trees()
            .into_iter()
            .find(|t| t.root() == tree.root)
            .expect("tree reference from this forest")
    }

    fn tree_of_leaf(&self, leaf: LeafRef) -> TreeRef {
        let forest = &self.slots[leaf.slot];
        let vertex = forest
            .leaf_vertex(leaf.position)
            .expect("bridge leaf exists");
        TreeRef {
            slot: leaf.slot,
            root: forest.root_of(vertex),
        }
    }

    /// The contracted graph: vertices are trees, edges are bridges.
    pub fn tree_graph(&self) -> (Vec<TreeRef>, Vec<(usize, usize)>) {
        let trees = self.trees();
        let idx = |t: TreeRef| trees.iter().position(|&u| u == t).unwrap();
        let edges = self
            .bridges
            .iter()
            .map(|b| {
                (
                    idx(self.tree_of_leaf(b.right_leaf)),
                    idx(self.tree_of_leaf(b.left_leaf)),
                )
            })
            .collect();
        (trees, edges)
    }

    pub fn component_count(&self) -> usize {
        let (trees, edges) = self.tree_graph();
        let mut parent: Vec<usize> = (0..trees.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            parent[x] = root;
            root
        }
        let mut components = trees.len();
        for (a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Cycle rank of the contracted graph.
    pub fn cycle_rank(&self) -> usize {
        self.bridges.len() + self.component_count() - self.trees().len()
    }

    pub fn leaf_count(&self) -> usize {
        self.slots.iter().map(VevForest::leaf_count).sum()
    }

    /// `l(mu) + l(nu) + l(lambda)`.
    pub fn part_count(&self) -> usize {
        self.leaf_count() - self.bridges.len()
    }

    /// Sum of root energies.
    pub fn root_energy_sum(&self) -> i64 {
        self.trees()
            .iter()
            .map(|&t| self.tree(t).root_label().energy)
            .sum()
    }

    /// `(-1)^{L1 + L2} prod_T B(T) prod_b [h(b)]^2` with
    /// `L1 = #leaves - 2 #bridges` and `L2` the root energy sum.
    pub fn amplitude_h(&self) -> QRatio {
        let mut value = QRatio::one();
        for t in self.trees() {
            value = &value * &self.tree(t).amplitude_b();
        }
        for b in &self.bridges {
            let h = qnum_ratio(b.label as i64);
            value = &value * &(&h * &h);
        }
        let parity =
            self.leaf_count() as i64 - 2 * self.bridges.len() as i64 + self.root_energy_sum();
        if parity.rem_euclid(2) == 1 {
            -value
        } else {
            value
        }
    }

    /// Every vertex label and bridge label multiplied by `k`.
    pub fn scaled(&self, k: u32) -> CombinedForest {
        assert!(k >= 1, "scale factor must be positive");
        CombinedForest {
            slots: self.slots.iter().map(|f| f.scaled(k as i64)).collect(),
            roles: self
                .roles
                .iter()
                .map(|rs| {
                    rs.iter()
                        .map(|r| LeafRole {
                            part: r.part * k,
                            ..*r
                        })
                        .collect()
                })
                .collect(),
            bridges: self
                .bridges
                .iter()
                .map(|b| Bridge {
                    label: b.label * k,
                    ..*b
                })
                .collect(),
        }
    }

    /// `G_k(W) = sum_{k'|k} mu(k/k') k'^{1 - l(mu)-l(nu)-l(lambda)} H(W_(k'))|_{q -> q^{k/k'}}`.
    pub fn g_k(&self, k: u32) -> QRatio {
        let parts = self.part_count() as i32;
        let mut total = QRatio::zero();
        for k1 in (1..=k).filter(|d| k.is_multiple_of(*d)) {
            let m = mobius(k / k1);
            if m == 0 {
                continue;
            }
            let weight = BigRational::from_integer(BigInt::from(m))
                * BigRational::from_integer(BigInt::from(k1)).pow(1 - parts);
            let h = self.scaled(k1).amplitude_h().substitute_power(k / k1);
            total += &h.scale(&weight);
        }
        total
    }

    /// Dump of every slot forest followed by `bridge` records.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, f) in self.slots.iter().enumerate() {
            out.push_str(&format!("slot {}\n", i + 1));
            out.push_str(&f.to_text());
        }
        for b in &self.bridges {
            out.push_str(&format!(
                "bridge {}:{} {}:{} {}\n",
                b.right_leaf.slot + 1,
                b.right_leaf.position,
                b.left_leaf.slot + 1,
                b.left_leaf.position,
                b.label
            ));
        }
        out
    }
}

impl fmt::Display for CombinedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::qalgebra::{qnum_ratio, t_ratio};

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    fn e() -> Partition {
        Partition::empty()
    }

    #[test]
    fn roles_put_lambda_outside() {
        let roles = slot_roles(&p(&[1]), &p(&[1]), &p(&[2, 1]), &p(&[1]));
        let sources: Vec<Source> = roles.iter().map(|r| r.source).collect();
        assert_eq!(
            sources,
            vec![
                Source::Lambda,
                Source::Mu,
                Source::Nu,
                Source::Nu,
                Source::Lambda
            ]
        );
    }

    #[test]
    fn bridged_forest_count() {
        let rset = RSet::new(
            vec![p(&[1]), e(), e()],
            vec![e(), p(&[1]), e()],
            vec![p(&[1]), p(&[1, 1]), p(&[1])],
        )
        .unwrap();
        let all = enumerate_combined_forests(&rset, &[-1, -1, -1], false).unwrap();
        assert_eq!(all.len(), 9);
        for w in &all {
            assert_eq!(w.bridges.len(), 4);
        }
    }

    #[test]
    fn degree_one_has_no_bridges() {
        let rset = RSet::new(vec![p(&[1]), e()], vec![p(&[1]), e()], vec![e(), e()]).unwrap();
        for g in [-2, -1, 0, 1] {
            let all = enumerate_combined_forests(&rset, &[g, 0], false).unwrap();
            assert_eq!(all.len(), 1);
            assert!(all[0].bridges.is_empty());
            assert_eq!(all[0].trees().len(), 1);
        }
    }

    fn two_one_one_rset() -> RSet {
        RSet::new(
            vec![p(&[1]), p(&[1]), e()],
            vec![p(&[1]), p(&[1]), e()],
            vec![p(&[1]), p(&[1]), p(&[1])],
        )
        .unwrap()
    }

    /// Slot 1 splits into two two-leaf trees, slot 2 is a single tree.
    fn two_one_one_forest() -> CombinedForest {
        let all = enumerate_combined_forests(&two_one_one_rset(), &[-1, -1, -1], true).unwrap();
        all.into_iter()
            .find(|w| {
                w.slots[0].trees().len() == 2
                    && w.slots[1].trees().len() == 1
                    && w.cycle_rank() == 0
            })
            .expect("forest of the requested shape")
    }

    #[test]
    fn two_one_one_structure() {
        let w = two_one_one_forest();
        assert!(w.is_connected());
        assert_eq!(w.cycle_rank(), 0);
        assert_eq!(w.part_count(), 7);
        assert_eq!(w.trees().len(), 4);
        assert!(w.amplitude_h().abs_eq(&(QRatio::one() / t_ratio())));
    }

    #[test]
    fn amplitude_sign_tracks_root_energy() {
        let w = two_one_one_forest();
        assert_eq!(w.root_energy_sum(), 5);
        assert_eq!(w.amplitude_h(), -(QRatio::one() / t_ratio()));
        let w3 = w.scaled(3).amplitude_h();
        let expected =
            -(qnum_ratio(9).pow(5) * qnum_ratio(18) / (qnum_ratio(6) * qnum_ratio(3).pow(7)));
        assert_eq!(w3, expected);
    }

    impl QRatio {
        fn abs_eq(&self, other: &QRatio) -> bool {
            self == other || &-self == other
        }
    }
}
