//! Gopakumar-Vafa extraction from the free energy: Möbius inversion over the
//! gcd of the degree, the `t`-integrality verdict, and the integers `n^g`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qalgebra::{t_ratio, to_t_poly, QRatio, RatPoly, TPoly};
use crate::series::{z_series, DegreeSeries, ZPath};

/// Möbius function.
pub fn mobius(n: u32) -> i64 {
    assert!(n > 0, "mobius(0) is undefined");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn degree_gcd(degree: &[u32]) -> u32 {
    degree.iter().fold(0, |acc, &d| acc.gcd(&d))
}

/// `G_d = sum_{k'|k} (k'/k) mu(k/k') F_{k'd/k}(q^{k/k'})` with `k = gcd(d)`.
pub fn g_of_d(degree: &[u32], free_energy: &DegreeSeries) -> Result<QRatio> {
    let k = degree_gcd(degree);
    if k == 0 {
        return Err(Error::InvalidInput(
            "G is not defined at degree zero".into(),
        ));
    }
    let mut total = QRatio::zero();
    for divisor in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let m = mobius(k / divisor);
        if m == 0 {
            continue;
        }
        let reduced: Vec<u32> = degree.iter().map(|&d| d / k * divisor).collect();
        let f = free_energy
            .coefficient(&reduced)
            .ok_or_else(|| Error::MissingCoefficient(reduced.clone()))?;
        let weight = BigRational::new(BigInt::from(m * divisor as i64), BigInt::from(k));
        total += &f.substitute_power(k / divisor).scale(&weight);
    }
    Ok(total)
}

/// One Gopakumar-Vafa number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvNumber {
    pub g: u32,
    #[serde(with = "integer_string")]
    pub n: BigInt,
}

/// Integrality verdict and GV numbers at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvReport {
    pub gamma: Vec<i64>,
    pub degree: Vec<u32>,
    /// Coefficients of `t G` in powers of `t`.
    #[serde(rename = "t_times_G")]
    pub g_poly: TPoly,
    pub integral: bool,
    #[serde(rename = "gv")]
    pub gv_numbers: Vec<GvNumber>,
    pub paths_agree: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

mod integer_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl GvReport {
    /// Builds the report from `G_d`; `n^g = (-1)^{g-1} [t^g] (t G)`.
    pub fn from_g(gamma: &[i64], degree: &[u32], g: &QRatio) -> GvReport {
        let mut report = GvReport {
            gamma: gamma.to_vec(),
            degree: degree.to_vec(),
            g_poly: TPoly(RatPoly::zero()),
            integral: false,
            gv_numbers: Vec::new(),
            paths_agree: true,
            notes: Vec::new(),
        };
        match to_t_poly(&(g * &t_ratio())) {
            Ok(poly) => {
                report.integral = poly.is_integral();
                if report.integral {
                    report.gv_numbers = poly
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(genus, c)| {
                            let n = c.to_integer();
                            GvNumber {
                                g: genus as u32,
                                n: if genus % 2 == 1 { n } else { -n },
                            }
                        })
                        .collect();
                } else {
                    report.notes.push("t G has non-integer coefficients".into());
                }
                report.g_poly = poly;
            }
            Err(e) => report
                .notes
                .push(format!("t G is not a polynomial in t: {e}")),
        }
        report
    }

    /// `n^g`, zero past the top genus.
    pub fn gv_number(&self, genus: u32) -> BigInt {
        self.gv_numbers
            .iter()
            .find(|n| n.g == genus)
            .map_or_else(BigInt::zero, |n| n.n.clone())
    }
}

/// What to compute for a batch of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRequest {
    pub gamma: Vec<i64>,
    pub degrees: Vec<Vec<u32>>,
    /// The first path feeds the free energy; the rest are compared with it.
    pub paths: Vec<ZPath>,
}

/// Smallest down-closed range containing `degrees`.
fn covering_range(r: usize, degrees: &[Vec<u32>]) -> (u32, Vec<u32>) {
    let mut bound = vec![0; r];
    let mut total = 0;
    for d in degrees {
        for (b, &x) in bound.iter_mut().zip(d) {
            *b = (*b).max(x);
        }
        total = total.max(d.iter().sum());
    }
    (total, bound)
}

/// Reports in the order of `request.degrees`.
pub fn compute_reports(request: &ReportRequest) -> Result<Vec<GvReport>> {
    let r = request.gamma.len();
    if r < 2 {
        return Err(Error::InvalidInput(format!(
            "gamma {:?} must have length >= 2",
            request.gamma
        )));
    }
    for d in &request.degrees {
        if d.len() != r {
            return Err(Error::InvalidInput(format!(
                "degree {d:?} does not have length {r}"
            )));
        }
        if d.iter().all(|&x| x == 0) {
            return Err(Error::InvalidInput("degree vectors must be nonzero".into()));
        }
    }
    let primary = *request.paths.first().unwrap_or(&ZPath::Definition);
    let (max_total, bound) = covering_range(r, &request.degrees);
    let z = z_series(&request.gamma, max_total, Some(bound.clone()), primary)?;
    let others: Vec<DegreeSeries> = request.paths[1.min(request.paths.len())..]
        .iter()
        .filter(|&&p| p != primary)
        .map(|&p| z_series(&request.gamma, max_total, Some(bound.clone()), p))
        .collect::<Result<_>>()?;
    let f = z.log_series()?;
    request
        .degrees
        .par_iter()
        .map(|d| {
            let mut report = GvReport::from_g(&request.gamma, d, &g_of_d(d, &f)?);
            for other in &others {
                if other.coefficient(d) != z.coefficient(d) {
                    report.paths_agree = false;
                    report
                        .notes
                        .push(format!("partition-function paths disagree at {d:?}"));
                }
            }
            Ok(report)
        })
        .collect()
}

/// True when every report is integral and its paths agree.
pub fn all_pass(reports: &[GvReport]) -> bool {
    reports.iter().all(|r| r.integral && r.paths_agree)
}

/// Sum of `n^0` over `reports`.
pub fn genus_zero_total(reports: &[GvReport]) -> BigInt {
    reports
        .iter()
        .map(|r| r.gv_number(0))
        .fold(BigInt::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{degree_vectors, free_energy};

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u32 + 1), m);
        }
    }

    #[test]
    fn degree_one_report() {
        let f = free_energy(&[1, 1, 1], 1, None).unwrap();
        let g = g_of_d(&[1, 0, 0], &f).unwrap();
        assert_eq!(g, -(QRatio::one() / t_ratio()));
        let report = GvReport::from_g(&[1, 1, 1], &[1, 0, 0], &g);
        assert!(report.integral);
        assert_eq!(report.g_poly.to_strings(), vec!["-1"]);
        assert_eq!(report.gv_number(0), BigInt::from(1));
    }

    #[test]
    fn divisor_expansion_at_two() {
        let f = free_energy(&[1, 1, 1], 2, None).unwrap();
        let expected = f.coefficient(&[2, 0, 0]).unwrap()
            - f.coefficient(&[1, 0, 0])
                .unwrap()
                .substitute_power(2)
                .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(g_of_d(&[2, 0, 0], &f).unwrap(), expected);
        assert!(matches!(
            g_of_d(&[3, 0, 0], &f),
            Err(Error::MissingCoefficient(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let request = ReportRequest {
            gamma: vec![1, 1, 1],
            degrees: degree_vectors(3, 2, None).into_iter().skip(1).collect(),
            paths: vec![ZPath::Definition, ZPath::Matrix],
        };
        let reports = compute_reports(&request).unwrap();
        assert!(all_pass(&reports));
        for report in &reports {
            let text = serde_json::to_string(report).unwrap();
            let back: GvReport = serde_json::from_str(&text).unwrap();
            assert_eq!(&back, report);
            assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }

    #[test]
    fn non_polynomial_is_flagged() {
        let g = QRatio::one() / (t_ratio() * t_ratio());
        let report = GvReport::from_g(&[0, 0], &[1, 1], &g);
        assert!(!report.integral);
        assert!(report.gv_numbers.is_empty());
        assert!(!report.notes.is_empty());
    }
}
