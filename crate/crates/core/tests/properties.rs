use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use gv_core::partitions::{enumerate_partitions, kappa, partitions_of, z_lambda};
use gv_core::qalgebra::{qnum, qnum_ratio, t_image_summary, t_k_in_t, to_t_poly, to_y_poly};
use gv_core::schur_vertex::{apply_e, FockVector};
use gv_core::{Partition, QLaurent, QRatio};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=6, 0..=5)
        .prop_filter("weight at most 10", |p| p.iter().sum::<u32>() <= 10)
        .prop_map(|p| Partition::new(p).unwrap())
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..=5).prop_map(|terms| {
        QLaurent::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(c.into()))),
        )
    })
}

fn product(parts: &[i64]) -> QRatio {
    parts
        .iter()
        .fold(QLaurent::one(), |acc, &a| &acc * &qnum(a))
        .into()
}

/// Partition numbers from the pentagonal-number recurrence.
fn pentagonal_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n as i64 {
        let mut total = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[(m - g2) as usize];
            }
        }
        p[m as usize] = total;
    }
    p.into_iter().map(|x| x as u64).collect()
}

#[test]
fn partition_counts_follow_pentagonal_recurrence() {
    let expected = pentagonal_counts(30);
    for d in 0..=30u32 {
        assert_eq!(
            enumerate_partitions(d).len() as u64,
            expected[d as usize],
            "p({d})"
        );
    }
}

#[test]
fn class_sizes_sum_to_group_order() {
    for d in 1..=8u32 {
        let order: BigInt = (1..=d).map(BigInt::from).product();
        let total: BigInt = partitions_of(d).iter().map(|l| &order / z_lambda(l)).sum();
        assert_eq!(total, order, "d = {d}");
    }
}

#[test]
fn t_k_round_trips() {
    for k in 1..=20u32 {
        let tk = t_k_in_t(k);
        assert_eq!(tk.to_laurent(), &qnum(k as i64) * &qnum(k as i64));
        assert_eq!(to_t_poly(&tk.to_laurent().into()).unwrap(), tk);
    }
}

proptest! {
    #[test]
    fn kappa_is_even_and_odd_under_conjugation(lambda in partition()) {
        prop_assert_eq!(kappa(&lambda) % 2, 0);
        prop_assert_eq!(kappa(&lambda.conjugate()), -kappa(&lambda));
    }

    #[test]
    fn qnum_products_land_in_the_right_ring(parts in prop::collection::vec(1i64..=8, 1..=6)) {
        let f = product(&parts);
        let even_count = parts.len() % 2 == 0;
        let even_sum = parts.iter().sum::<i64>() % 2 == 0;
        prop_assert_eq!(to_y_poly(&f).is_ok_and(|p| p.is_integral()), even_count);
        prop_assert_eq!(to_t_poly(&f).is_ok_and(|p| p.is_integral()), even_count && even_sum);
    }

    #[test]
    fn coprime_triples_give_unit_constant_term(a in 1i64..=20, b in 1i64..=20, c in 1i64..=20) {
        prop_assume!(a.gcd(&b).gcd(&c) == 1);
        let lcm = a.lcm(&b).lcm(&c);
        let num = [lcm, a.gcd(&b), b.gcd(&c), c.gcd(&a)].iter().fold(QRatio::one(), |acc, &k| acc * qnum_ratio(k));
        let den = [a, b, c, 1].iter().fold(QRatio::one(), |acc, &k| acc * qnum_ratio(k));
        let summary = t_image_summary(&(num / den)).unwrap();
        prop_assert!(summary.integral);
        prop_assert!(summary.constant_term.is_one());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in laurent(), b in laurent(), shift in 1i64..=4, m in 1u32..=4) {
        prop_assert_eq!((&a + &b).substitute_power(m), &a.substitute_power(m) + &b.substitute_power(m));
        prop_assert_eq!((&a * &b).substitute_power(m), &a.substitute_power(m) * &b.substitute_power(m));
        let ra: QRatio = a.into();
        let rb = QRatio::from(b) / qnum_ratio(shift);
        prop_assert_eq!((&ra * &rb).substitute_power(m), &ra.substitute_power(m) * &rb.substitute_power(m));
        prop_assert_eq!((&ra + &rb).substitute_power(m), &ra.substitute_power(m) + &rb.substitute_power(m));
    }

    #[test]
    fn fermion_modes_satisfy_the_commutator(
        lambda in partition().prop_filter("small", |l| l.weight() <= 4),
        (a, m) in (-2i64..=2, -2i64..=2).prop_filter("nonzero mode", |&(a, m)| (a, m) != (0, 0)),
        (b, n) in (-2i64..=2, -2i64..=2).prop_filter("nonzero mode", |&(b, n)| (b, n) != (0, 0)),
    ) {
        let v = FockVector::basis(lambda);
        let ab = apply_e(a, m, &apply_e(b, n, &v).unwrap()).unwrap();
        let ba = apply_e(b, n, &apply_e(a, m, &v).unwrap()).unwrap();
        let lhs = ab.add(&ba.scale(&QRatio::from(-1)));
        let rhs = if a + b == 0 && m + n == 0 {
            v.scale(&QRatio::from(a))
        } else if a * n - b * m == 0 {
            FockVector::zero()
        } else {
            apply_e(a + b, m + n, &v).unwrap().scale(&qnum_ratio(a * n - b * m))
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ratio_constant_terms(k in 1i64..=12, a in 1i64..=12) {
        let f = qnum_ratio(k * a) / qnum_ratio(a);
        if k % 2 == 1 || a % 2 == 0 {
            let poly = to_t_poly(&f).unwrap();
            prop_assert!(poly.is_integral());
            prop_assert_eq!(poly.coeffs()[0].clone(), BigRational::from_integer(k.into()));
        } else {
            prop_assert!(to_t_poly(&f).is_err());
            prop_assert!(!to_y_poly(&f).unwrap().coeffs().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn image_summary_agrees_with_full_conversion(
        top in prop::collection::vec(1i64..=9, 0..=4),
        bottom in prop::collection::vec(1i64..=6, 0..=4),
    ) {
        let f = product(&top) / product(&bottom);
        match (to_t_poly(&f), t_image_summary(&f)) {
            (Ok(poly), Ok(summary)) => {
                prop_assert_eq!(summary.integral, poly.is_integral());
                let constant = poly.coeffs().first().cloned().unwrap_or_else(BigRational::zero);
                prop_assert_eq!(summary.constant_term, constant);
            }
            (Err(_), Err(_)) => {}
            (full, summary) => prop_assert!(false, "disagree: {:?} vs {:?}", full.is_ok(), summary.is_ok()),
        }
    }
}
