//! Forests produced by rewriting an operator word into commutators.

use std::fmt;

use crate::error::{Error, Result};
use crate::qalgebra::{qnum_ratio, QRatio};

/// Operator label `(charge, energy)` of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub charge: i64,
    pub energy: i64,
}

impl Label {
    pub fn new(charge: i64, energy: i64) -> Self {
        Self { charge, energy }
    }

    fn is_null(self) -> bool {
        self.charge == 0 && self.energy == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub label: Label,
    pub color: Color,
    /// `(left, right)` upper neighbours of a merge vertex.
    pub children: Option<(usize, usize)>,
    /// 1-based position in the original word, for leaves.
    pub leaf: Option<usize>,
}

/// A forest of binary trees over the letters of an operator word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VevForest {
    vertices: Vec<Vertex>,
    roots: Vec<usize>,
}

/// One tree of a forest, addressed by its root.
#[derive(Clone, Copy, Debug)]
pub struct Tree<'a> {
    forest: &'a VevForest,
    root: usize,
}

impl VevForest {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Trees ordered by their smallest leaf index.
    pub fn trees(&self) -> Vec<Tree<'_>> {
        let mut trees: Vec<Tree<'_>> = self
            .roots
            .iter()
            .map(|&root| Tree { forest: self, root })
            .collect();
        trees.sort_by_key(|t| t.leaves().into_iter().map(|v| self.vertices[v].leaf).min());
        trees
    }

    pub fn leaf_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.leaf.is_some()).count()
    }

    /// Vertex id of the leaf at a 1-based word position.
    pub fn leaf_vertex(&self, position: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.leaf == Some(position))
    }

    /// Root of the tree containing a vertex.
    pub fn root_of(&self, vertex: usize) -> usize {
        *self
            .roots
            .iter()
            .find(|&&r| {
                Tree {
                    forest: self,
                    root: r,
                }
                .contains(vertex)
            })
            .expect("vertex belongs to a tree")
    }

    /// Product of the tree amplitudes.
    pub fn amplitude(&self) -> QRatio {
        self.roots
            .iter()
            .map(|&root| Tree { forest: self, root }.amplitude())
            .fold(QRatio::one(), |acc, a| &acc * &a)
    }

    /// Multiplies every label by `k`.
    pub fn scaled(&self, k: i64) -> VevForest {
        let mut out = self.clone();
        for v in &mut out.vertices {
            v.label = Label::new(v.label.charge * k, v.label.energy * k);
        }
        out
    }

    /// Canonical text for the equivalence class obtained by forgetting
    /// leaf positions.
    pub fn shape_key(&self) -> String {
        let mut parts: Vec<String> = self
            .roots
            .iter()
            .map(|&r| {
                Tree {
                    forest: self,
                    root: r,
                }
                .shape_key()
            })
            .collect();
        parts.sort();
        parts.join(" ")
    }

    /// Line-based dump: `vertex`, `edge` and `root` records.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, v) in self.vertices.iter().enumerate() {
            let color = match v.color {
                Color::Black => "black",
                Color::White => "white",
            };
            out.push_str(&format!(
                "vertex {id} {} {} {color}",
                v.label.charge, v.label.energy
            ));
            if let Some(leaf) = v.leaf {
                out.push_str(&format!(" leaf {leaf}"));
            }
            out.push('\n');
        }
        for (id, v) in self.vertices.iter().enumerate() {
            if let Some((l, r)) = v.children {
                out.push_str(&format!("edge {id} {l} {r}\n"));
            }
        }
        for r in &self.roots {
            out.push_str(&format!("root {r}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<VevForest> {
        let bad = |line: &str| Error::Graph(format!("malformed forest line {line:?}"));
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut roots = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<i64> {
                fields
                    .get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(line))
            };
            match fields[0] {
                "vertex" => {
                    if num(1)? as usize != vertices.len() {
                        return Err(bad(line));
                    }
                    let color = match fields.get(4) {
                        Some(&"black") => Color::Black,
                        Some(&"white") => Color::White,
                        _ => return Err(bad(line)),
                    };
                    let leaf = match fields.get(5) {
                        Some(&"leaf") => Some(num(6)? as usize),
                        None => None,
                        _ => return Err(bad(line)),
                    };
                    vertices.push(Vertex {
                        label: Label::new(num(2)?, num(3)?),
                        color,
                        children: None,
                        leaf,
                    });
                }
                "edge" => {
                    let parent = num(1)? as usize;
                    let slot = vertices.get_mut(parent).ok_or_else(|| bad(line))?;
                    slot.children = Some((num(2)? as usize, num(3)? as usize));
                }
                "root" => roots.push(num(1)? as usize),
                _ => return Err(bad(line)),
            }
        }
        let forest = VevForest { vertices, roots };
        forest.validate()?;
        Ok(forest)
    }

    /// Checks the label and color rules of every tree.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut seen = vec![0usize; n];
        for v in &self.vertices {
            if let Some((l, r)) = v.children {
                if l >= n || r >= n {
                    return Err(Error::Graph("edge to a missing vertex".into()));
                }
                seen[l] += 1;
                seen[r] += 1;
                let (lv, rv) = (&self.vertices[l], &self.vertices[r]);
                if lv.label.charge < 0 || rv.label.charge >= 0 {
                    return Err(Error::Graph("merge vertex with misordered charges".into()));
                }
                if v.label.charge != lv.label.charge + rv.label.charge
                    || v.label.energy != lv.label.energy + rv.label.energy
                {
                    return Err(Error::Graph("merge vertex label is not the sum".into()));
                }
            } else if v.leaf.is_none() {
                return Err(Error::Graph("vertex without children or leaf index".into()));
            }
            match v.color {
                Color::White if !v.label.is_null() => {
                    return Err(Error::Graph("white vertex with nonzero label".into()))
                }
                Color::Black if v.label.is_null() => {
                    return Err(Error::Graph("black vertex with null label".into()))
                }
                _ => {}
            }
        }
        for &r in &self.roots {
            if r >= n || seen[r] != 0 || self.vertices[r].label.charge != 0 {
                return Err(Error::Graph(format!("bad root {r}")));
            }
        }
        for (id, v) in self.vertices.iter().enumerate() {
            let is_root = self.roots.contains(&id);
            if !is_root && seen[id] != 1 {
                return Err(Error::Graph(format!(
                    "vertex {id} is not attached exactly once"
                )));
            }
            if v.color == Color::White && !is_root {
                return Err(Error::Graph(format!("white vertex {id} is not a root")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for VevForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Tree<'a> {
    pub fn forest(&self) -> &'a VevForest {
        self.forest
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// This tree alone with every label divided by `m`, if all labels are
    /// multiples of `m`. The result's only root has the same vertex id.
    pub fn reduced(&self, m: i64) -> Option<VevForest> {
        let ids = self.vertex_ids();
        let mut vertices = self.forest.vertices.clone();
        for &id in &ids {
            let label = vertices[id].label;
            if label.charge % m != 0 || label.energy % m != 0 {
                return None;
            }
            vertices[id].label = Label::new(label.charge / m, label.energy / m);
        }
        Some(VevForest {
            vertices,
            roots: vec![self.root],
        })
    }

    pub fn root_label(&self) -> Label {
        self.forest.vertices[self.root].label
    }

    pub fn vertex_ids(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            if let Some((l, r)) = self.forest.vertices[v].children {
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.vertex_ids().contains(&vertex)
    }

    /// Leaf vertex ids, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        self.vertex_ids()
            .into_iter()
            .filter(|&v| self.forest.vertices[v].leaf.is_some())
            .collect()
    }

    /// Leaf labels as `(positive charges, |negative charges|)`.
    pub fn leaf_parts(&self) -> (Vec<u32>, Vec<u32>) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for v in self.leaves() {
            let c = self.forest.vertices[v].label.charge;
            if c > 0 {
                left.push(c as u32);
            } else {
                right.push(c.unsigned_abs() as u32);
            }
        }
        (left, right)
    }

    /// `prod [zeta_v] / [n_root]`, or `c_{L(root)} prod_{v != root} [zeta_v]`
    /// for a white root.
    pub fn amplitude(&self) -> QRatio {
        let vertices = &self.forest.vertices;
        let root = &vertices[self.root];
        let mut value = QRatio::one();
        for v in self.vertex_ids() {
            let Some((l, r)) = vertices[v].children else {
                continue;
            };
            if v == self.root && root.color == Color::White {
                value = &value * &QRatio::from(vertices[l].label.charge);
                continue;
            }
            let (a, b) = (vertices[l].label, vertices[r].label);
            value = &value * &qnum_ratio(a.charge * b.energy - a.energy * b.charge);
        }
        if root.color == Color::Black {
            value = &value / &qnum_ratio(root.label.energy);
        }
        value
    }

    /// Amplitude divided by `[|c|]` over all leaves.
    pub fn amplitude_b(&self) -> QRatio {
        let mut den = QRatio::one();
        for v in self.leaves() {
            den = &den * &qnum_ratio(self.forest.vertices[v].label.charge.abs());
        }
        &self.amplitude() / &den
    }

    fn shape_key(&self) -> String {
        fn rec(forest: &VevForest, v: usize) -> String {
            let vertex = &forest.vertices[v];
            let head = format!("({},{})", vertex.label.charge, vertex.label.energy);
            match vertex.children {
                Some((l, r)) => format!("{head}[{}|{}]", rec(forest, l), rec(forest, r)),
                None => head,
            }
        }
        rec(self.forest, self.root)
    }
}

/// A letter of the word being rewritten.
#[derive(Clone)]
struct State {
    vertices: Vec<Vertex>,
    word: Vec<usize>,
    roots: Vec<usize>,
}

impl State {
    fn charge(&self, id: usize) -> i64 {
        self.vertices[id].label.charge
    }

    /// Peels zero-charge letters off the right end and drops the term when
    /// an end letter annihilates the vacuum. Returns `false` for a dead term.
    fn settle(&mut self) -> bool {
        loop {
            let Some(&last) = self.word.last() else {
                return true;
            };
            match self.charge(last) {
                c if c > 0 => return false,
                0 => {
                    self.word.pop();
                    self.roots.push(last);
                    continue;
                }
                _ => {}
            }
            return self.charge(self.word[0]) >= 0;
        }
    }
}

/// All forests of the operator word, with leaf positions 1..=len.
pub fn generate_vev_forests(charges: &[i64], energies: &[i64]) -> Result<Vec<VevForest>> {
    if charges.len() != energies.len() {
        return Err(Error::InvalidInput(format!(
            "operator word has {} charges but {} energies",
            charges.len(),
            energies.len()
        )));
    }
    if charges
        .iter()
        .zip(energies)
        .any(|(&c, &n)| c == 0 && n == 0)
    {
        return Err(Error::InvalidInput("operator word contains E_0(0)".into()));
    }
    if charges.iter().sum::<i64>() != 0 {
        return Err(Error::InvalidInput(
            "operator word has nonzero total charge".into(),
        ));
    }
    let vertices: Vec<Vertex> = charges
        .iter()
        .zip(energies)
        .enumerate()
        .map(|(i, (&c, &n))| Vertex {
            label: Label::new(c, n),
            color: Color::Black,
            children: None,
            leaf: Some(i + 1),
        })
        .collect();
    let state = State {
        word: (0..vertices.len()).collect(),
        vertices,
        roots: Vec::new(),
    };
    let mut out = Vec::new();
    rewrite(state, &mut out);
    Ok(out)
}

fn rewrite(mut state: State, out: &mut Vec<VevForest>) {
    loop {
        if !state.settle() {
            return;
        }
        if state.word.is_empty() {
            out.push(VevForest {
                vertices: state.vertices,
                roots: state.roots,
            });
            return;
        }
        let pos = (0..state.word.len() - 1)
            .rev()
            .find(|&i| state.charge(state.word[i]) >= 0 && state.charge(state.word[i + 1]) < 0)
            .expect("a settled nonempty word has an annihilating pair");

        let mut swapped = state.clone();
        swapped.word.swap(pos, pos + 1);
        rewrite(swapped, out);

        let (l, r) = (state.word[pos], state.word[pos + 1]);
        let (a, b) = (state.vertices[l].label, state.vertices[r].label);
        let label = Label::new(a.charge + b.charge, a.energy + b.energy);
        let color = if label.is_null() {
            Color::White
        } else {
            Color::Black
        };
        let id = state.vertices.len();
        state.vertices.push(Vertex {
            label,
            color,
            children: Some((l, r)),
            leaf: None,
        });
        if color == Color::White {
            state.word.drain(pos..=pos + 1);
            state.roots.push(id);
        } else {
            state.word.splice(pos..=pos + 1, [id]);
        }
    }
}

/// Sum of forest amplitudes: the vacuum expectation value of the word.
pub fn vev_graphs(charges: &[i64], energies: &[i64]) -> Result<QRatio> {
    if charges.len() == energies.len() && charges.iter().sum::<i64>() != 0 {
        return Ok(QRatio::zero());
    }
    Ok(generate_vev_forests(charges, energies)?
        .iter()
        .map(VevForest::amplitude)
        .sum())
}

/// The word computing `<mu| q^{a F_2} |nu>`: charges `(mu ascending, -nu
/// descending)`, energies `a * nu_j` on the right block.
pub fn matrix_element_word(
    mu: &crate::partitions::Partition,
    a: i64,
    nu: &crate::partitions::Partition,
) -> (Vec<i64>, Vec<i64>) {
    let mut charges: Vec<i64> = mu.parts().iter().rev().map(|&p| p as i64).collect();
    let mut energies = vec![0; charges.len()];
    for &p in nu.parts() {
        charges.push(-(p as i64));
        energies.push(a * p as i64);
    }
    (charges, energies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::qalgebra::t_ratio;

    #[test]
    fn two_letter_word() {
        for a in [-2, 1, 3] {
            let forests = generate_vev_forests(&[1, -1], &[0, a]).unwrap();
            assert_eq!(forests.len(), 1);
            assert_eq!(forests[0].roots().len(), 1);
            assert!(forests[0].amplitude().is_one());
        }
        // a = 0 gives a single white root with amplitude c_L = 1
        let forests = generate_vev_forests(&[1, -1], &[0, 0]).unwrap();
        assert_eq!(forests.len(), 1);
        assert_eq!(
            forests[0].vertices()[forests[0].roots()[0]].color,
            Color::White
        );
    }

    #[test]
    fn double_pair_word() {
        for c in 1..=3i64 {
            for d in 1..=3i64 {
                let forests = generate_vev_forests(&[c, c, -c, -c], &[0, 0, 0, d]).unwrap();
                assert_eq!(forests.len(), 2);
                let each = QRatio::from(c) * qnum_ratio(c * d) / qnum_ratio(d);
                for f in &forests {
                    assert_eq!(f.amplitude(), each);
                    f.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn single_part_against_three_parts() {
        // mu = (m1, m2, m3), nu = (d): one forest, amplitude
        // [a d m1][a d m2][a d m3] / [a d]
        let mu = Partition::from_parts(&[3, 2, 1]);
        let nu = Partition::from_parts(&[6]);
        for a in [1, 2] {
            let (c, n) = matrix_element_word(&mu, a, &nu);
            let forests = generate_vev_forests(&c, &n).unwrap();
            assert_eq!(forests.len(), 1);
            let d = 6;
            let expected = qnum_ratio(a * d * 3) * qnum_ratio(a * d * 2) * qnum_ratio(a * d)
                / qnum_ratio(a * d);
            assert_eq!(forests[0].amplitude(), expected);
        }
    }

    #[test]
    fn equal_pairs_with_energy() {
        // mu = nu = (c, c): the first amplitude has [2ac] in the denominator
        for (a, c) in [(1i64, 1i64), (1, 2), (2, 1)] {
            let pair = Partition::from_parts(&[c as u32, c as u32]);
            let (cs, ns) = matrix_element_word(&pair, a, &pair);
            let forests = generate_vev_forests(&cs, &ns).unwrap();
            let amps: Vec<QRatio> = forests.iter().map(VevForest::amplitude).collect();
            let first =
                qnum_ratio(a * c * c).pow(2) * qnum_ratio(2 * a * c * c) / qnum_ratio(2 * a * c);
            assert!(amps.contains(&first), "a={a} c={c}");
        }
        let total = vev_graphs(&[1, 1, -1, -1], &[0, 0, 1, 1]).unwrap();
        assert_eq!(total, t_ratio() + QRatio::from(2));
    }

    #[test]
    fn zero_energy_pairs() {
        for c in 1..=3u32 {
            let pair = Partition::from_parts(&[c, c]);
            let (cs, ns) = matrix_element_word(&pair, 0, &pair);
            let forests = generate_vev_forests(&cs, &ns).unwrap();
            assert_eq!(forests.len(), 2);
            for f in &forests {
                assert_eq!(f.amplitude(), QRatio::from((c * c) as i64));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let forests = generate_vev_forests(&[1, 1, -1, -1], &[0, 0, 1, 1]).unwrap();
        for f in &forests {
            let back = VevForest::from_text(&f.to_text()).unwrap();
            assert_eq!(&back, f);
        }
        assert!(VevForest::from_text("vertex 0 1 0 black leaf 1\nroot 0\n").is_err());
        assert!(VevForest::from_text("bogus").is_err());
    }

    #[test]
    fn rejects_bad_words() {
        assert!(generate_vev_forests(&[1, -1], &[0]).is_err());
        assert!(generate_vev_forests(&[0, 1, -1], &[0, 0, 1]).is_err());
        assert!(generate_vev_forests(&[1, 1], &[0, 0]).is_err());
        assert!(vev_graphs(&[1, 1], &[0, 0]).unwrap().is_zero());
    }
}
