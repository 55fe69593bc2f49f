//! Symmetric Laurent polynomials as polynomials in `t = [1]^2` or
//! `y = [1/2]^2`, and pole extraction at `t_k = [k]^2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{fmt_rational, qnum, QLaurent};
use super::ratio::QRatio;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, ascending powers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "division by the zero polynomial");
        if self.coeffs.len() < dlen {
            return (RatPoly::zero(), self.clone());
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let factor = &rem[i + dlen - 1] / lead;
            if factor.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &factor * d;
            }
            quot[i] = factor;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &RatPoly::constant(c.clone());
        }
        acc
    }

    fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let coeff = fmt_rational(&mag);
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{coeff}*{var}")?,
                (_, true) => write!(f, "{var}^{i}")?,
                (_, false) => write!(f, "{coeff}*{var}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

macro_rules! symmetric_poly {
    ($name:ident, $var:literal, $base:expr) => {
        #[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $name(pub RatPoly);

        impl $name {
            pub fn coeffs(&self) -> &[BigRational] {
                self.0.coeffs()
            }

            pub fn is_integral(&self) -> bool {
                self.0.is_integral()
            }

            pub fn degree(&self) -> Option<usize> {
                self.0.degree()
            }

            /// Back to a Laurent polynomial in `x`.
            pub fn to_laurent(&self) -> QLaurent {
                let var: QLaurent = $base;
                let mut acc = QLaurent::zero();
                for c in self.0.coeffs().iter().rev() {
                    acc = &(&acc * &var) + &QLaurent::constant(c.clone());
                }
                acc
            }

            /// Coefficients as exact rational strings, index = power.
            pub fn to_strings(&self) -> Vec<String> {
                self.0.coeffs().iter().map(fmt_rational).collect()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in($var, f)
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                self.to_strings().serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(
                d: D,
            ) -> std::result::Result<Self, D::Error> {
                let raw = Vec::<String>::deserialize(d)?;
                let coeffs = raw
                    .iter()
                    .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Self(RatPoly::new(coeffs)))
            }
        }
    };
}

/// `x^step - 2 + x^-step`.
fn centered_square(step: i64) -> QLaurent {
    QLaurent::from_terms([
        (step, BigRational::one()),
        (0, BigRational::from_integer((-2).into())),
        (-step, BigRational::one()),
    ])
}

symmetric_poly!(TPoly, "t", centered_square(2));
symmetric_poly!(YPoly, "y", centered_square(1));

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let parse = |v: &str| {
        v.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad rational {s:?}: {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

/// `t_k` as a polynomial in `t`: `sum_j (k/j) C(j+k-1, 2j-1) t^j`.
pub fn t_k_in_t(k: u32) -> TPoly {
    assert!(k >= 1, "t_k needs k >= 1");
    TPoly(half_power_poly(k))
}

fn half_power_poly(k: u32) -> RatPoly {
    let mut coeffs = vec![BigRational::zero(); k as usize + 1];
    for j in 1..=k {
        let c = BigRational::new(BigInt::from(k), BigInt::from(j))
            * BigRational::from_integer(binomial(BigInt::from(j + k - 1), BigInt::from(2 * j - 1)));
        coeffs[j as usize] = c;
    }
    RatPoly::new(coeffs)
}

/// Which half of the parity split a symmetric Laurent polynomial uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variable {
    T,
    Y,
}

fn symmetric_image(f: &QRatio, var: Variable) -> Result<RatPoly> {
    let laurent = f
        .as_laurent()
        .ok_or_else(|| Error::NotSymmetric(format!("{f} has a nontrivial denominator")))?;
    if laurent.is_zero() {
        return Ok(RatPoly::zero());
    }
    let coeffs = laurent.poly.coeffs();
    let top = laurent.low + coeffs.len() as i64 - 1;
    if laurent.low != -top || coeffs.iter().ne(coeffs.iter().rev()) {
        return Err(Error::NotSymmetric(format!(
            "{f} is not invariant under q -> 1/q"
        )));
    }
    let stride = match var {
        Variable::T => 2,
        Variable::Y => 1,
    };
    if top % stride != 0
        || coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % stride as usize != 0 && !c.is_zero())
    {
        return Err(Error::NotSymmetric(format!(
            "{f} has half-integer powers of q"
        )));
    }
    // a_k multiplies s^k + s^-k, with s = x^stride
    let centre = top as usize;
    let half = (top / stride) as usize;
    let a = |k: usize| &coeffs[centre + k * stride as usize];

    // Clenshaw: b_k = a_k + u b_{k+1} - b_{k+2} with u = s + 1/s = v + 2
    let times_u = |b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); b.len() + 1];
        for (i, c) in b.iter().enumerate() {
            out[i + 1] += c;
            out[i] += c * 2;
        }
        out
    };
    let sub_into = |acc: &mut Vec<BigInt>, b: &[BigInt]| {
        if acc.len() < b.len() {
            acc.resize(b.len(), BigInt::zero());
        }
        for (x, y) in acc.iter_mut().zip(b) {
            *x -= y;
        }
    };
    let mut next: Vec<BigInt> = Vec::new();
    let mut after: Vec<BigInt> = Vec::new();
    for k in (1..=half).rev() {
        let mut current = times_u(&next);
        current[0] += a(k);
        sub_into(&mut current, &after);
        after = std::mem::replace(&mut next, current);
    }
    let mut total = times_u(&next);
    total[0] += a(0);
    let twice_after: Vec<BigInt> = after.iter().map(|c| c * 2).collect();
    sub_into(&mut total, &twice_after);
    let den = &laurent.den;
    Ok(RatPoly::new(
        total
            .into_iter()
            .map(|c| BigRational::new(c, den.clone()))
            .collect(),
    ))
}

/// Integrality data of the `t`-image without expanding it: a symmetric
/// Laurent polynomial in integer powers of `q` lies in `Z[t]` exactly when
/// its coefficients are integers, and its value at `t = 0` is its value at
/// `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TImageSummary {
    pub integral: bool,
    pub constant_term: BigRational,
}

pub fn t_image_summary(f: &QRatio) -> Result<TImageSummary> {
    let laurent = f
        .as_laurent()
        .ok_or_else(|| Error::NotSymmetric(format!("{f} has a nontrivial denominator")))?;
    if laurent.is_zero() {
        return Ok(TImageSummary {
            integral: true,
            constant_term: BigRational::zero(),
        });
    }
    let coeffs = laurent.poly.coeffs();
    let top = laurent.low + coeffs.len() as i64 - 1;
    if laurent.low != -top || coeffs.iter().ne(coeffs.iter().rev()) {
        return Err(Error::NotSymmetric(format!(
            "{f} is not invariant under q -> 1/q"
        )));
    }
    if top % 2 != 0
        || coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % 2 != 0 && !c.is_zero())
    {
        return Err(Error::NotSymmetric(format!(
            "{f} has half-integer powers of q"
        )));
    }
    let sum: BigInt = coeffs.iter().sum();
    Ok(TImageSummary {
        integral: laurent.den.is_one(),
        constant_term: BigRational::new(sum, laurent.den.clone()),
    })
}

/// Image of a `q -> 1/q` symmetric Laurent polynomial in integer powers of
/// `q` as a polynomial in `t`.
pub fn to_t_poly(f: &QRatio) -> Result<TPoly> {
    symmetric_image(f, Variable::T).map(TPoly)
}

/// Image of a `q^{1/2} -> q^{-1/2}` symmetric Laurent polynomial as a
/// polynomial in `y`.
pub fn to_y_poly(f: &QRatio) -> Result<YPoly> {
    symmetric_image(f, Variable::Y).map(YPoly)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoleMode {
    /// `f = g / t_k + r(t)`
    Plain,
    /// `f = (g / t_k)(1 + t_{k/2}/2) + r(t)`, even `k`
    Half,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleDecomposition {
    pub g: BigRational,
    pub remainder: TPoly,
}

/// Splits off the pole of `f` at `t_k = 0`.
pub fn pole_extract(f: &QRatio, k: u32, mode: PoleMode) -> Result<PoleDecomposition> {
    let fail = |reason: String| Error::NoSuchDecomposition { k, reason };
    if k == 0 {
        return Err(fail("k must be positive".into()));
    }
    let tk_q: QRatio = (&qnum(k as i64) * &qnum(k as i64)).into();
    let cleared =
        to_t_poly(&(f * &tk_q)).map_err(|e| fail(format!("f * t_k is not in Q[t]: {e}")))?;
    let modulus = t_k_in_t(k).0;
    let (quotient, rem) = cleared.0.div_rem(&modulus);
    match mode {
        PoleMode::Plain => {
            if rem.degree().unwrap_or(0) > 0 {
                return Err(fail(format!("remainder {} is not constant", TPoly(rem))));
            }
            Ok(PoleDecomposition {
                g: rem.coeff(0),
                remainder: TPoly(quotient),
            })
        }
        PoleMode::Half => {
            if !k.is_multiple_of(2) {
                return Err(fail("half mode needs even k".into()));
            }
            let shape = &RatPoly::from_integers(&[1])
                + &t_k_in_t(k / 2)
                    .0
                    .scale(&BigRational::new(1.into(), 2.into()));
            let g = rem.coeff(0);
            if shape.scale(&g) != rem {
                return Err(fail(format!(
                    "remainder {} is not a multiple of 1 + t_{}/2",
                    TPoly(rem),
                    k / 2
                )));
            }
            Ok(PoleDecomposition {
                g,
                remainder: TPoly(quotient),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::qalgebra::laurent::qnum_product;

    fn qr(k: i64) -> QRatio {
        qnum(k).into()
    }

    fn tpoly(c: &[i64]) -> TPoly {
        TPoly(RatPoly::from_integers(c))
    }

    #[test]
    fn t_k_small_cases() {
        assert_eq!(t_k_in_t(1), tpoly(&[0, 1]));
        assert_eq!(t_k_in_t(2), tpoly(&[0, 4, 1]));
        assert_eq!(t_k_in_t(3), tpoly(&[0, 9, 6, 1]));
    }

    #[test]
    fn t_k_round_trip() {
        for k in 1..=20 {
            let tk = t_k_in_t(k);
            assert!(tk.is_integral());
            let direct = &qnum(k as i64) * &qnum(k as i64);
            assert_eq!(tk.to_laurent(), direct, "k = {k}");
            assert_eq!(to_t_poly(&tk.to_laurent().into()).unwrap(), tk);
        }
    }

    #[test]
    fn symmetric_images() {
        let q_plus = QLaurent::from_terms([(2, BigRational::one()), (-2, BigRational::one())]);
        assert_eq!(to_t_poly(&q_plus.into()).unwrap(), tpoly(&[2, 1]));
        let ratio = &(&qr(3) * &qr(3)) / &(&qr(1) * &qr(1));
        assert_eq!(to_t_poly(&ratio).unwrap(), tpoly(&[9, 6, 1]));
        assert_eq!(to_t_poly(&QRatio::one()).unwrap(), tpoly(&[1]));
        assert!(to_t_poly(&qr(1)).is_err());
        assert!(to_t_poly(&(QRatio::one() / qr(1))).is_err());
        assert!(to_t_poly(&QRatio::x_pow(2)).is_err());
        // [1] = y-variable: [1]^2 = t = y(y + 4)
        assert_eq!(
            to_y_poly(&(&qr(1) * &qr(1))).unwrap(),
            YPoly(RatPoly::from_integers(&[0, 4, 1]))
        );
    }

    #[test]
    fn substitute_t_gives_t2() {
        let t: QRatio = (&qnum(1) * &qnum(1)).into();
        assert_eq!(
            to_t_poly(&t.substitute_power(2)).unwrap(),
            tpoly(&[0, 4, 1])
        );
    }

    #[test]
    fn pole_examples() {
        let f = &qr(9) / &qr(3).pow(3);
        let d = pole_extract(&f, 3, PoleMode::Plain).unwrap();
        assert_eq!(d.g, BigRational::from_integer(3.into()));
        assert_eq!(d.remainder, tpoly(&[1]));

        let f = &qr(1) / &qr(1).pow(3);
        let d = pole_extract(&f, 1, PoleMode::Plain).unwrap();
        assert_eq!(d.g, BigRational::one());
        assert_eq!(d.remainder, tpoly(&[]));

        // [12]/([6][2]^2) carries the (1 + t/2) factor on its pole
        let f = &qr(12) / &(&qr(6) * &qr(2).pow(2));
        assert!(pole_extract(&f, 2, PoleMode::Plain).is_err());
        let d = pole_extract(&f, 2, PoleMode::Half).unwrap();
        assert_eq!(d.g, BigRational::from_integer(2.into()));
        assert_eq!(d.remainder, tpoly(&[2, 1]));
    }

    #[test]
    fn pole_extract_rejects_bad_shapes() {
        let f = QRatio::one() / qr(1);
        assert!(matches!(
            pole_extract(&f, 1, PoleMode::Plain),
            Err(Error::NoSuchDecomposition { .. })
        ));
        assert!(pole_extract(&QRatio::one(), 3, PoleMode::Half).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational("7").unwrap(),
            BigRational::from_integer(7.into())
        );
        assert!(parse_rational("1/0").is_err());
        let p = tpoly(&[-1, 0, 3]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["-1","0","3"]"#);
        assert_eq!(serde_json::from_str::<TPoly>(&json).unwrap(), p);
    }

    #[test]
    fn product_parity_rules() {
        let lam = Partition::from_parts(&[3, 1]);
        assert!(to_t_poly(&qnum_product(&lam).into()).is_ok());
        let lam = Partition::from_parts(&[2, 1]);
        assert!(to_t_poly(&qnum_product(&lam).into()).is_err());
        assert!(to_y_poly(&qnum_product(&lam).into()).is_ok());
    }
}
