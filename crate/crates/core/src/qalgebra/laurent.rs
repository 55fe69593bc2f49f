use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::ZPoly;
use crate::partitions::Partition;

/// Laurent polynomial in `x = q^{1/2}` with rational coefficients.
///
/// Stored as `x^low * poly(x) / den` with `poly(0) != 0`, `den > 0` and
/// `gcd(content(poly), den) = 1`, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QLaurent {
    pub(crate) low: i64,
    pub(crate) poly: ZPoly,
    pub(crate) den: BigInt,
}

impl Default for QLaurent {
    fn default() -> Self {
        Self::zero()
    }
}

impl QLaurent {
    pub fn zero() -> Self {
        Self {
            low: 0,
            poly: ZPoly::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * x^exponent`.
    pub fn monomial(exponent: i64, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: exponent,
            poly: ZPoly::constant(c.numer().clone()),
            den: c.denom().clone(),
        }
    }

    /// `x^exponent`, i.e. `q^{exponent/2}`.
    pub fn x_pow(exponent: i64) -> Self {
        Self::monomial(exponent, BigRational::one())
    }

    pub(crate) fn from_parts(low: i64, poly: ZPoly, den: BigInt) -> Self {
        let mut out = Self { low, poly, den };
        out.normalize();
        out
    }

    /// Builds from `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| &acc + &Self::monomial(e, c))
    }

    fn normalize(&mut self) {
        if self.poly.is_zero() {
            *self = Self::zero();
            return;
        }
        let zeros = self.poly.low_zeros();
        if zeros > 0 {
            self.poly = self.poly.shift_down(zeros);
            self.low += zeros as i64;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.poly = -&self.poly;
        }
        let g = self.poly.content().gcd(&self.den);
        if !g.is_one() {
            self.poly = self.poly.div_scalar_exact(&g);
            self.den = &self.den / &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.den.is_one() && self.poly.is_one()
    }

    /// Lowest exponent present, `None` for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.poly.degree().map(|d| self.low + d as i64)
    }

    pub fn coefficient(&self, exponent: i64) -> BigRational {
        let idx = exponent - self.low;
        if idx < 0 {
            return BigRational::zero();
        }
        match self.poly.coeffs().get(idx as usize) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| {
                (
                    self.low + i as i64,
                    BigRational::new(c.clone(), self.den.clone()),
                )
            })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.low,
            self.poly.scale(factor.numer()),
            &self.den * factor.denom(),
        )
    }

    pub fn mul_x_pow(&self, exponent: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + exponent,
            ..self.clone()
        }
    }

    /// `x -> x^m`.
    pub fn substitute_power(&self, m: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low * m as i64,
            poly: self.poly.inflate(m as usize),
            den: self.den.clone(),
        }
    }

    /// `x -> 1/x`.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }
}

/// The q-number `[k] = q^{k/2} - q^{-k/2} = x^k - x^{-k}`.
pub fn qnum(k: i64) -> QLaurent {
    if k == 0 {
        return QLaurent::zero();
    }
    QLaurent::from_terms([(k, BigRational::one()), (-k, -BigRational::one())])
}

/// `prod_i [lambda_i]`.
pub fn qnum_product(lambda: &Partition) -> QLaurent {
    lambda
        .parts()
        .iter()
        .fold(QLaurent::one(), |acc, &p| &acc * &qnum(p as i64))
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let lift = |p: &QLaurent, factor: &BigInt| {
            let shift = (p.low - low) as usize;
            let mut coeffs = vec![BigInt::zero(); shift];
            coeffs.extend(p.poly.coeffs().iter().map(|c| c * factor));
            ZPoly::new(coeffs)
        };
        let den = self.den.lcm(&rhs.den);
        let a = lift(self, &(&den / &self.den));
        let b = lift(rhs, &(&den / &rhs.den));
        QLaurent::from_parts(low, &a + &b, den)
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            low: self.low,
            poly: -&self.poly,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        QLaurent::from_parts(
            self.low + rhs.low,
            &self.poly * &rhs.poly,
            &self.den * &rhs.den,
        )
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QLaurent {
    /// Descending exponents of `x`, e.g. `x^2 - 1/2 + 3*x^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (i, (e, c)) in terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let coeff = fmt_rational(&magnitude);
            match (*e, magnitude.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (e, true) => write!(f, "x^{e}")?,
                (e, false) => write!(f, "{coeff}*x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn qnum_basics() {
        assert!(qnum(0).is_zero());
        assert_eq!(qnum(1).to_string(), "x^1 - x^-1");
        assert_eq!(qnum(-3), -&qnum(3));
        assert_eq!(qnum_product(&Partition::empty()), QLaurent::one());
        assert_eq!(
            qnum_product(&Partition::from_parts(&[1, 1])),
            &qnum(1) * &qnum(1)
        );
    }

    #[test]
    fn qnum_product_matches_direct_expansion() {
        // [2][1] = (x^2 - x^-2)(x - x^-1) = x^3 - x - x^-1 + x^-3
        let direct =
            QLaurent::from_terms([(3, r(1, 1)), (1, r(-1, 1)), (-1, r(-1, 1)), (-3, r(1, 1))]);
        assert_eq!(qnum_product(&Partition::from_parts(&[2, 1])), direct);
    }

    #[test]
    fn rational_coefficients_normalize() {
        let a = QLaurent::from_terms([(2, r(1, 2)), (0, r(1, 3))]);
        let b = QLaurent::from_terms([(2, r(1, 2)), (0, r(-1, 3))]);
        assert_eq!(&a + &b, QLaurent::monomial(2, r(1, 1)));
        assert_eq!((&a - &a), QLaurent::zero());
        assert_eq!(a.coefficient(0), r(1, 3));
        assert_eq!(a.coefficient(5), r(0, 1));
        assert!(!a.is_integral());
    }

    #[test]
    fn substitution_and_inversion() {
        assert_eq!(qnum(2).substitute_power(3), qnum(6));
        assert_eq!(qnum(2).invert_variable(), qnum(-2));
        assert_eq!(QLaurent::x_pow(3).mul_x_pow(-5), QLaurent::x_pow(-2));
    }
}
