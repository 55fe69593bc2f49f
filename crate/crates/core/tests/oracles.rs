//! Independent checks of the GV pipeline: published local P2 invariants
//! and compatibility of `G` with the substitution `q -> q^m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use gv_core::gv::{compute_reports, g_of_d, ReportRequest};
use gv_core::series::{degree_vectors, free_energy, DegreeSeries, ZPath};

/// Local P2 GV numbers `n^g_D` summed over the three fixed-curve classes,
/// as tabulated in the topological-string literature.
const LOCAL_P2: &[(u32, u32, i64)] = &[
    (1, 0, 3),
    (2, 0, -6),
    (3, 0, 27),
    (3, 1, -10),
    (4, 0, -192),
    (4, 1, 231),
    (4, 2, -102),
    (4, 3, 15),
    (5, 0, 1695),
    (5, 1, -4452),
    (5, 2, 5430),
    (5, 3, -3672),
    (5, 4, 1386),
    (5, 5, -270),
    (5, 6, 21),
    (6, 0, -17064),
    (6, 1, 80948),
];

#[test]
fn local_p2_matches_published_invariants() {
    let request = ReportRequest {
        gamma: vec![1, 1, 1],
        degrees: degree_vectors(3, 6, None).into_iter().skip(1).collect(),
        paths: vec![ZPath::Definition],
    };
    let mut summed: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    for report in compute_reports(&request).unwrap() {
        assert!(report.integral, "{:?}", report.degree);
        let total = report.degree.iter().sum();
        for n in &report.gv_numbers {
            *summed.entry((total, n.g)).or_default() += &n.n;
        }
    }
    for &(degree, genus, n) in LOCAL_P2 {
        assert_eq!(
            summed[&(degree, genus)],
            BigInt::from(n),
            "n^{genus}_{degree}"
        );
    }
    for degree in 1..=5 {
        let top = summed
            .keys()
            .filter(|k| k.0 == degree)
            .map(|k| k.1)
            .max()
            .unwrap();
        let expected_top = LOCAL_P2
            .iter()
            .filter(|e| e.0 == degree)
            .map(|e| e.1)
            .max()
            .unwrap();
        assert!(top >= expected_top);
        for genus in expected_top + 1..=top {
            assert_eq!(
                summed[&(degree, genus)],
                BigInt::from(0),
                "n^{genus}_{degree}"
            );
        }
    }
}

#[test]
fn g_commutes_with_substitution() {
    for gamma in [vec![1, 1, 1], vec![-1, -1], vec![0, -2]] {
        let f = free_energy(&gamma, 3, None).unwrap();
        for m in [2, 3] {
            let substituted = DegreeSeries::from_fn(gamma.len(), 3, None, |d| {
                Ok(f.coefficient(d).unwrap().substitute_power(m))
            })
            .unwrap();
            for d in degree_vectors(gamma.len(), 3, None).into_iter().skip(1) {
                let g = g_of_d(&d, &f).unwrap();
                assert_eq!(
                    g_of_d(&d, &substituted).unwrap(),
                    g.substitute_power(m),
                    "{gamma:?} {d:?} m={m}"
                );
            }
        }
    }
}
