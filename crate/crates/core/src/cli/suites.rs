//! Verification suites: exact identity and property checks that can be run
//! from the command line at a configurable scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::Result;
use crate::graph_engine::{
    check_edge_map, cycle_rank, edge_map, enumerate_combined_forests, generate_vev_forests,
    matrix_element_word, tree_pole_data, vev_graphs, CombinedForest,
};
use crate::gv::mobius;
use crate::partitions::{enumerate_rsets, partitions_of, Partition};
use crate::qalgebra::{
    pole_extract, qnum, qnum_product, qnum_ratio, t_image_summary, t_k_in_t, t_ratio, to_t_poly,
    to_y_poly, PoleMode, QLaurent, QRatio, RatPoly,
};
use crate::schur_vertex::{matrix_element_char, vev_fock};
use crate::series::{degree_vectors, f_connected, z_coefficient_def, z_graphs, z_series, ZPath};

/// Named verification suites.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    VevOracle,
    ExpFormula,
    PoleStructure,
    QLemmas,
    RsetSanity,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::VevOracle,
        Suite::ExpFormula,
        Suite::PoleStructure,
        Suite::QLemmas,
        Suite::RsetSanity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::VevOracle => "vev-oracle",
            Suite::ExpFormula => "exp-formula",
            Suite::PoleStructure => "pole-structure",
            Suite::QLemmas => "q-lemmas",
            Suite::RsetSanity => "rset-sanity",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Size limits for the exponential-cost checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct SuiteScale {
    /// Largest `|mu| = |nu|` for the operator-word checks.
    pub vev_weight: u32,
    /// Largest energy multiplier `|a|`.
    pub energy_range: i64,
    /// Largest `|d|` for combined-forest checks.
    pub forest_degree: u32,
    /// Framing vectors used by the forest checks.
    pub gammas: Vec<Vec<i64>>,
    /// Random samples for the randomized lemma checks.
    pub samples: usize,
    pub seed: u64,
    /// Largest vertex count for the edge-map check.
    pub graph_vertices: usize,
}

impl Default for SuiteScale {
    fn default() -> Self {
        Self {
            vev_weight: 4,
            energy_range: 2,
            forest_degree: 3,
            gammas: vec![
                vec![1, 1, 1],
                vec![-1, -1, -1],
                vec![0, -1, -2],
                vec![-1, -1],
                vec![0, -2],
                vec![2, 2],
                vec![0, 0],
            ],
            samples: 200,
            seed: 7,
            graph_vertices: 6,
        }
    }
}

/// Outcome of one suite or sub-check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn absorb(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures.extend(
            other
                .failures
                .into_iter()
                .map(|f| format!("{}: {f}", other.name)),
        );
    }
}

pub fn run_suite(suite: Suite, scale: &SuiteScale) -> Result<CheckReport> {
    let mut report = CheckReport::new(suite.name());
    let parts = match suite {
        Suite::VevOracle => vec![
            vev_three_paths(scale.vev_weight, scale.energy_range)?,
            vev_random_words(scale.samples, scale.seed)?,
        ],
        Suite::ExpFormula => {
            let mut out = Vec::new();
            for gamma in forest_gammas(scale) {
                out.push(exponential_formula(&gamma, scale.forest_degree)?);
            }
            out
        }
        Suite::PoleStructure => {
            let mut out = vec![
                tree_poles(scale.vev_weight, scale.energy_range)?,
                edge_maps(scale.graph_vertices)?,
            ];
            for gamma in forest_gammas(scale) {
                out.push(combined_poles(&gamma, scale.forest_degree)?);
                out.push(scaled_forests(&gamma, scale.forest_degree, 4)?);
            }
            out
        }
        Suite::QLemmas => vec![
            qnum_products(scale.samples.max(1), scale.seed)?,
            ratio_lemma(12)?,
            triple_lemma(scale.samples.max(1), 20, scale.seed)?,
            partition_lemma(6, 8)?,
            t_k_formula(20)?,
            mobius_sums(24),
        ],
        Suite::RsetSanity => vec![rset_counts(3, 3)?],
    };
    for part in parts {
        report.absorb(part);
    }
    Ok(report)
}

fn forest_gammas(scale: &SuiteScale) -> Vec<Vec<i64>> {
    scale
        .gammas
        .iter()
        .filter(|g| g.len() == 2 || g.len() == 3)
        .cloned()
        .collect()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn t_sub(k: u32) -> QRatio {
    qnum_ratio(k as i64).pow(2)
}

/// Graph sum, Fock-space action and character formula on every matrix
/// element word with `|mu| = |nu| <= max_weight`.
pub fn vev_three_paths(max_weight: u32, energy_range: i64) -> Result<CheckReport> {
    let mut report = CheckReport::new("vev three paths");
    for w in 1..=max_weight {
        for mu in partitions_of(w).iter() {
            for nu in partitions_of(w).iter() {
                for a in -energy_range..=energy_range {
                    let (charges, energies) = matrix_element_word(mu, a, nu);
                    let graphs = vev_graphs(&charges, &energies)?;
                    let fock = vev_fock(&charges, &energies)?;
                    let chars: QRatio = matrix_element_char(mu, a, nu)?.into();
                    report.check(graphs == fock && fock == chars, || {
                        format!("<{mu}|q^({a} F2)|{nu}>: graphs {graphs}, fock {fock}, characters {chars}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Random admissible words of length at most 5 with entries in `-3..=3`.
pub fn vev_random_words(samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("vev random words");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let len = rng.gen_range(2..=5);
        let mut charges: Vec<i64> = (0..len - 1).map(|_| rng.gen_range(-3..=3)).collect();
        let last = -charges.iter().sum::<i64>();
        if last.abs() > 3 {
            continue;
        }
        charges.push(last);
        let energies: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        if charges
            .iter()
            .zip(&energies)
            .any(|(&c, &n)| c == 0 && n == 0)
        {
            continue;
        }
        done += 1;
        let graphs = vev_graphs(&charges, &energies)?;
        let fock = vev_fock(&charges, &energies)?;
        report.check(graphs == fock, || {
            format!("word {charges:?} {energies:?}: graphs {graphs}, fock {fock}")
        });
    }
    Ok(report)
}

/// Log of the vertex-sum partition function against connected forests, and
/// all forests against the vertex sum, for every `|d| <= max_degree`.
pub fn exponential_formula(gamma: &[i64], max_degree: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(&format!("exponential formula {gamma:?}"));
    let f = z_series(gamma, max_degree, None, ZPath::Definition)?.log_series()?;
    for d in degree_vectors(gamma.len(), max_degree, None)
        .into_iter()
        .skip(1)
    {
        let connected = f_connected(gamma, &d)?;
        let logged = f.coefficient(&d).unwrap_or_default();
        report.check(connected == logged, || {
            format!("F at {d:?}: forests {connected}, log {logged}")
        });
        let all = z_graphs(gamma, &d)?;
        let direct = z_coefficient_def(gamma, &d)?;
        report.check(all == direct, || {
            format!("Z at {d:?}: forests {all}, vertices {direct}")
        });
    }
    Ok(report)
}

/// Tree residues: the pole part has the predicted shape, the regular part
/// is integral, and `g_T = g_{T_(0)} m^{l(mu)+l(nu)-1}`.
pub fn tree_poles(max_weight: u32, energy_range: i64) -> Result<CheckReport> {
    let mut report = CheckReport::new("tree poles");
    for w in 1..=max_weight {
        for mu in partitions_of(w).iter() {
            for nu in partitions_of(w).iter() {
                for a in -energy_range..=energy_range {
                    let (charges, energies) = matrix_element_word(mu, a, nu);
                    for forest in generate_vev_forests(&charges, &energies)? {
                        for tree in forest.trees() {
                            let data = match tree_pole_data(&tree) {
                                Ok(d) => d,
                                Err(e) => {
                                    report.check(false, || format!("{mu} {a} {nu}: {e}"));
                                    continue;
                                }
                            };
                            report.check(true, String::new);
                            if data.m == 1 {
                                continue;
                            }
                            let reduced =
                                tree.reduced(data.m as i64).expect("labels divisible by m");
                            let base = tree_pole_data(&reduced.trees()[0])?;
                            let leaves = tree.leaves().len() as u32;
                            let expected = &base.g * BigInt::from(data.m).pow(leaves - 1);
                            report.check(data.g == expected, || {
                                format!("{mu} {a} {nu}: g = {} but g0 m^(l-1) = {expected}", data.g)
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Connected forests over every r-set with `|d| <= max_degree`.
pub fn connected_forests(gamma: &[i64], max_degree: u32) -> Result<Vec<(u32, CombinedForest)>> {
    let mut out = Vec::new();
    for d in degree_vectors(gamma.len(), max_degree, None)
        .into_iter()
        .skip(1)
    {
        for rset in enumerate_rsets(gamma.len(), &d)? {
            let k = rset.part_gcd().expect("nonzero degree");
            for w in enumerate_combined_forests(&rset, gamma, true)? {
                out.push((k, w));
            }
        }
    }
    Ok(out)
}

/// Cycle rank zero: `t_k H` is an integral polynomial; positive cycle rank:
/// `H` itself is.
pub fn combined_poles(gamma: &[i64], max_degree: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(&format!("combined poles {gamma:?}"));
    for (k, w) in connected_forests(gamma, max_degree)? {
        let h = w.amplitude_h();
        let beta = w.cycle_rank();
        let target = if beta == 0 { &h * &t_sub(k) } else { h.clone() };
        let ok = to_t_poly(&target).is_ok_and(|p| p.is_integral());
        report.check(ok, || format!("beta {beta}, k {k}: H = {h}\n{w}"));
    }
    Ok(report)
}

/// Tree classes in a combined forest: `(m(T), n_root)` per tree.
fn tree_classes(w: &CombinedForest) -> Vec<(u32, i64)> {
    w.trees()
        .into_iter()
        .map(|t| {
            let tree = w.tree(t);
            let (left, right) = tree.leaf_parts();
            let m = left.iter().chain(&right).fold(0u32, |acc, p| acc.gcd(p));
            (m, tree.root_label().energy)
        })
        .collect()
}

/// Scaling of tree forests with label gcd 1: `H(W_(k))` against
/// `k^{L-1} H(W)|_{t -> t_k}` (with the even-`k` correction), and the pole
/// order of `G_k(W)`.
pub fn scaled_forests(gamma: &[i64], max_degree: u32, max_k: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(&format!("scaled forests {gamma:?}"));
    for (gcd, w) in connected_forests(gamma, max_degree)? {
        if gcd != 1 || w.cycle_rank() != 0 {
            continue;
        }
        let h = w.amplitude_h();
        let exponent = w.part_count() as u32 - 1;
        for k in 2..=max_k {
            let scaled = w.scaled(k).amplitude_h();
            let power = BigRational::from_integer(BigInt::from(k).pow(exponent));
            let mut expected = h.substitute_power(k).scale(&power);
            if k % 2 == 0 {
                if w.root_energy_sum().rem_euclid(2) == 1 {
                    expected = -expected;
                }
                for (m, root) in tree_classes(&w) {
                    if m % 2 == 1 && root.rem_euclid(2) == 1 {
                        let factor = QRatio::one() + t_sub(m * k / 2).scale(&rational(1, 2));
                        expected = &expected * &factor;
                    }
                }
            }
            let ok = to_t_poly(&(&scaled - &expected)).is_ok_and(|p| p.is_integral());
            report.check(ok, || {
                format!("k {k}: H(W_k) = {scaled}, predicted pole part {expected}\n{w}")
            });
        }
        for k in 1..=max_k {
            let g = w.g_k(k);
            let target = if k <= 2 { &g * &t_ratio() } else { g.clone() };
            report.check(to_t_poly(&target).is_ok(), || {
                format!("G_{k}(W) = {g} has the wrong poles\n{w}")
            });
        }
    }
    Ok(report)
}

/// All connected multigraph-free graphs on up to `max_vertices` vertices.
pub fn connected_graphs(vertices: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|a| (a + 1..vertices).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if edges.len() + 1 >= vertices && cycle_rank(vertices, &edges) + vertices == edges.len() + 1
        {
            out.push(edges);
        }
    }
    out
}

/// Edge maps on every connected simple graph, from every base vertex when
/// the graph is a tree.
pub fn edge_maps(max_vertices: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("edge maps");
    for n in 1..=max_vertices {
        for edges in connected_graphs(n) {
            if cycle_rank(n, &edges) == 0 {
                for base in 0..n {
                    let ok = edge_map(n, &edges, Some(base))
                        .and_then(|m| check_edge_map(n, &edges, Some(base), &m))
                        .is_ok();
                    report.check(ok, || format!("tree {edges:?} from {base}"));
                }
            } else {
                let ok = edge_map(n, &edges, None)
                    .and_then(|m| check_edge_map(n, &edges, None, &m))
                    .is_ok();
                report.check(ok, || format!("graph {edges:?}"));
            }
        }
    }
    Ok(report)
}

fn qnum_list(parts: &[i64]) -> QLaurent {
    parts
        .iter()
        .fold(QLaurent::one(), |acc, &a| &acc * &qnum(a))
}

/// Products `[a_1]...[a_m]`: in `Z[y]` iff `m` is even, in `Z[t]` iff `m`
/// and the sum are both even.
pub fn qnum_products(samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("q-number products");
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let m = rng.gen_range(1..=6);
        let parts: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=8)).collect();
        let product: QRatio = qnum_list(&parts).into();
        let in_y = to_y_poly(&product).is_ok_and(|p| p.is_integral());
        let in_t = to_t_poly(&product).is_ok_and(|p| p.is_integral());
        let sum: i64 = parts.iter().sum();
        report.check(in_y == (m % 2 == 0), || {
            format!("{parts:?} in Z[y]: {in_y}")
        });
        report.check(in_t == (m % 2 == 0 && sum % 2 == 0), || {
            format!("{parts:?} in Z[t]: {in_t}")
        });
    }
    Ok(report)
}

/// `[ka]/[a]` for `1 <= k, a <= limit`.
pub fn ratio_lemma(limit: i64) -> Result<CheckReport> {
    let mut report = CheckReport::new("[ka]/[a]");
    let y_quadratic = RatPoly::from_integers(&[0, 4, 1]);
    for k in 1..=limit {
        for a in 1..=limit {
            let f = QRatio::from_laurents(&qnum(k * a), &qnum(a))?;
            let in_y = to_y_poly(&f)?;
            report.check(in_y.is_integral(), || {
                format!("[{k}*{a}]/[{a}] not in Z[y]")
            });
            if k % 2 == 1 || a % 2 == 0 {
                let ok =
                    to_t_poly(&f).is_ok_and(|p| p.is_integral() && p.coeffs()[0] == rational(k, 1));
                report.check(ok, || {
                    format!("[{k}*{a}]/[{a}]: not in Z[t] with constant {k}")
                });
            } else {
                let (_, rem) = in_y.0.div_rem(&y_quadratic);
                let expected = RatPoly::new(vec![rational(k, 1), rational(k, 2)]);
                report.check(rem == expected, || {
                    format!("[{k}*{a}]/[{a}] mod y(y+4) = {rem:?}")
                });
            }
        }
    }
    Ok(report)
}

/// `[lcm][gcd(a,b)][gcd(b,c)][gcd(c,a)] / ([a][b][c][1])` on random triples
/// with `gcd(a,b,c) = 1`: integral in `t` with constant term 1.
pub fn triple_lemma(samples: usize, limit: i64, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("lcm-gcd triples");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let (a, b, c) = (
            rng.gen_range(1..=limit),
            rng.gen_range(1..=limit),
            rng.gen_range(1..=limit),
        );
        if a.gcd(&b).gcd(&c) != 1 {
            continue;
        }
        done += 1;
        let num = qnum_list(&[a.lcm(&b).lcm(&c), a.gcd(&b), b.gcd(&c), c.gcd(&a)]);
        let f = QRatio::from_laurents(&num, &qnum_list(&[a, b, c, 1]))?;
        let ok = t_image_summary(&f).is_ok_and(|s| s.integral && s.constant_term.is_one());
        report.check(ok, || format!("({a}, {b}, {c})"));
    }
    Ok(report)
}

/// `[k lambda]/([k]^2 [lambda]) = k^{l-2}/t + (integral polynomial)` under
/// the coprimality and parity conditions.
pub fn partition_lemma(max_weight: u32, max_k: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("[k lambda]/([k]^2 [lambda])");
    for w in 2..=max_weight {
        for lambda in partitions_of(w).iter().filter(|l| l.len() >= 2) {
            for k in 1..=max_k {
                let coprime = (0..lambda.len()).all(|i| {
                    lambda
                        .parts()
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .fold(k, |acc, (_, &p)| acc.gcd(&p))
                        == 1
                });
                if !coprime || (k % 2 == 0 && w % 2 == 1) {
                    continue;
                }
                let scaled = lambda.scale(k)?;
                let den = &qnum_product(lambda) * &(&qnum(k as i64) * &qnum(k as i64));
                let f = QRatio::from_laurents(&qnum_product(&scaled), &den)?;
                let expected =
                    BigRational::from_integer(BigInt::from(k).pow(lambda.len() as u32 - 2));
                let ok = pole_extract(&f, 1, PoleMode::Plain)
                    .is_ok_and(|p| p.g == expected && p.remainder.is_integral());
                report.check(ok, || format!("lambda {lambda}, k {k}"));
            }
        }
    }
    Ok(report)
}

/// The closed form of `t_k` in `t` against `[k]^2`.
pub fn t_k_formula(max_k: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("t_k in t");
    for k in 1..=max_k {
        let square = &qnum(k as i64) * &qnum(k as i64);
        let poly = t_k_in_t(k);
        report.check(poly.to_laurent() == square && poly.is_integral(), || {
            format!("t_{k}")
        });
    }
    Ok(report)
}

/// `sum_{k'|k} mu(k/k') = [k = 1]`.
pub fn mobius_sums(max_k: u32) -> CheckReport {
    let mut report = CheckReport::new("mobius sums");
    for k in 1..=max_k {
        let sum: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(k / d)).sum();
        report.check(sum == i64::from(k == 1), || format!("k = {k}: {sum}"));
    }
    report
}

/// r-set enumeration against a brute-force filter of all partition triples.
pub fn rset_counts(max_r: usize, max_degree: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("r-set enumeration");
    for r in 2..=max_r {
        for d in degree_vectors(r, max_degree, None).into_iter().skip(1) {
            let sets = enumerate_rsets(r, &d)?;
            report.check(sets.iter().all(|s| s.degree() == d), || {
                format!("{d:?}: wrong degree")
            });
            let mut sorted = sets.clone();
            sorted.sort();
            sorted.dedup();
            report.check(sorted.len() == sets.len(), || format!("{d:?}: duplicates"));
            report.check(sets.len() == brute_force_rset_count(&d), || {
                format!("{d:?}: {} r-sets", sets.len())
            });
        }
    }
    Ok(report)
}

fn brute_force_rset_count(degree: &[u32]) -> usize {
    let r = degree.len();
    let upto =
        |n: u32| -> Vec<Partition> { (0..=n).flat_map(|w| partitions_of(w).to_vec()).collect() };
    // lambda^i and mu^i fill slot i; nu^i is forced in weight
    let mut count = 0usize;
    let lambdas: Vec<Vec<Partition>> = degree.iter().map(|&d| upto(d)).collect();
    let mut index = vec![0usize; r];
    loop {
        let lam: Vec<&Partition> = (0..r).map(|i| &lambdas[i][index[i]]).collect();
        let mut ways = 1usize;
        for i in 0..r {
            let mu_weight = degree[i] as i64 - lam[i].weight() as i64;
            let nu_weight = degree[i] as i64 - lam[(i + 1) % r].weight() as i64;
            if mu_weight < 0 || nu_weight < 0 {
                ways = 0;
                break;
            }
            ways *= partitions_of(mu_weight as u32).len() * partitions_of(nu_weight as u32).len();
        }
        count += ways;
        let mut slot = 0;
        loop {
            if slot == r {
                return count;
            }
            index[slot] += 1;
            if index[slot] < lambdas[slot].len() {
                break;
            }
            index[slot] = 0;
            slot += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        // connected labelled graphs on n vertices: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn suites_pass_at_small_scale() {
        let scale = SuiteScale {
            vev_weight: 2,
            forest_degree: 2,
            samples: 10,
            graph_vertices: 4,
            gammas: vec![vec![1, 1, 1], vec![-1, -1]],
            ..SuiteScale::default()
        };
        for suite in Suite::ALL {
            let report = run_suite(suite, &scale).unwrap();
            assert!(report.passed(), "{}: {:?}", suite.name(), report.failures);
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::parse(suite.name()), Some(suite));
        }
        assert_eq!(Suite::parse("nope"), None);
    }
}
