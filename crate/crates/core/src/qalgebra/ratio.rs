use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::QLaurent;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Reduced ratio `num / den` of Laurent polynomials in `x = q^{1/2}`.
///
/// The denominator is a primitive integer polynomial with nonzero constant
/// term and positive leading coefficient, coprime to the numerator. All
/// rational scalars live in the numerator. Equal values therefore have equal
/// representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRatio {
    num: QLaurent,
    den: ZPoly,
}

impl Default for QRatio {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<QLaurent> for QRatio {
    fn from(num: QLaurent) -> Self {
        Self {
            num,
            den: ZPoly::one(),
        }
    }
}

impl From<i64> for QRatio {
    fn from(c: i64) -> Self {
        QLaurent::integer(c).into()
    }
}

impl From<BigRational> for QRatio {
    fn from(c: BigRational) -> Self {
        QLaurent::constant(c).into()
    }
}

impl From<BigInt> for QRatio {
    fn from(c: BigInt) -> Self {
        BigRational::from_integer(c).into()
    }
}

impl QRatio {
    pub fn zero() -> Self {
        QLaurent::zero().into()
    }

    pub fn one() -> Self {
        QLaurent::one().into()
    }

    pub fn x_pow(exponent: i64) -> Self {
        QLaurent::x_pow(exponent).into()
    }

    /// `numerator / denominator`.
    pub fn from_laurents(numerator: &QLaurent, denominator: &QLaurent) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if numerator.is_zero() {
            return Ok(Self::zero());
        }
        let (content, prim) = denominator.poly.primitive();
        let num = QLaurent::from_parts(
            numerator.low - denominator.low,
            numerator.poly.scale(&denominator.den),
            &numerator.den * content,
        );
        Ok(Self::reduced(num, prim))
    }

    /// Cancels the common factor of a numerator and a primitive denominator.
    fn reduced(mut num: QLaurent, mut den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            return num.into();
        }
        if num.poly.may_divide(&den) {
            if let Some(quotient) = num.poly.div_exact(&den) {
                num.poly = quotient;
                return num.into();
            }
        }
        let g = num.poly.gcd(&den);
        if g.degree() != Some(0) {
            num.poly = num.poly.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &QLaurent {
        &self.num
    }

    pub fn denominator(&self) -> QLaurent {
        QLaurent::from_parts(0, self.den.clone(), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a unit, i.e. the value is a Laurent
    /// polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&QLaurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// The rational constant, if the value is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        let l = self.as_laurent()?;
        if l.is_zero() {
            return Some(BigRational::zero());
        }
        (l.min_exponent() == Some(0) && l.max_exponent() == Some(0)).then(|| l.coefficient(0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::from_laurents(&self.denominator(), &self.num)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(factor),
            den: self.den.clone(),
        }
    }

    pub fn mul_x_pow(&self, exponent: i64) -> Self {
        Self {
            num: self.num.mul_x_pow(exponent),
            den: self.den.clone(),
        }
    }

    /// The ring map `q -> q^m`.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitute_power needs m >= 1");
        // coprimality is preserved by x -> x^m
        Self {
            num: self.num.substitute_power(m),
            den: self.den.inflate(m as usize),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn checked_div(&self, rhs: &QRatio) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }
}

pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Dispatches one field operation; `Neg` ignores `b`.
pub fn field_arith(op: FieldOp, a: &QRatio, b: &QRatio) -> Result<QRatio> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
        FieldOp::Neg => -a,
    })
}

impl Add for &QRatio {
    type Output = QRatio;
    fn add(self, rhs: &QRatio) -> QRatio {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRatio::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_cof = self.den.div_exact(&g).unwrap();
        let b_cof = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &laurent(&b_cof)) + &(&rhs.num * &laurent(&a_cof));
        if num.is_zero() {
            return QRatio::zero();
        }
        // only g can share a factor with the new numerator
        let mut num = num;
        let mut g = g;
        if g.degree() != Some(0) {
            let h = num.poly.gcd(&g);
            if h.degree() != Some(0) {
                num.poly = num.poly.div_exact(&h).unwrap();
                g = g.div_exact(&h).unwrap();
            }
        }
        QRatio {
            num,
            den: &(&a_cof * &b_cof) * &g,
        }
    }
}

fn laurent(p: &ZPoly) -> QLaurent {
    QLaurent::from_parts(0, p.clone(), BigInt::one())
}

impl Mul for &QRatio {
    type Output = QRatio;
    fn mul(self, rhs: &QRatio) -> QRatio {
        if self.is_zero() || rhs.is_zero() {
            return QRatio::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return (&self.num * &rhs.num).into();
        }
        let mut a = self.num.clone();
        let mut b = rhs.num.clone();
        let mut a_den = self.den.clone();
        let mut b_den = rhs.den.clone();
        cancel(&mut a, &mut b_den);
        cancel(&mut b, &mut a_den);
        QRatio {
            num: &a * &b,
            den: &a_den * &b_den,
        }
    }
}

fn cancel(num: &mut QLaurent, den: &mut ZPoly) {
    if den.degree().unwrap_or(0) == 0 || num.poly.degree().unwrap_or(0) == 0 {
        return;
    }
    let g = num.poly.gcd(den);
    if g.degree() != Some(0) {
        num.poly = num.poly.div_exact(&g).unwrap();
        *den = den.div_exact(&g).unwrap();
    }
}

impl Sub for &QRatio {
    type Output = QRatio;
    fn sub(self, rhs: &QRatio) -> QRatio {
        self + &(-rhs)
    }
}

impl Neg for &QRatio {
    type Output = QRatio;
    fn neg(self) -> QRatio {
        QRatio {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QRatio {
    type Output = QRatio;
    fn neg(self) -> QRatio {
        -&self
    }
}

impl Div for &QRatio {
    type Output = QRatio;
    /// Panics on division by zero; see [`QRatio::checked_div`].
    fn div(self, rhs: &QRatio) -> QRatio {
        self.checked_div(rhs).expect("division by zero QRatio")
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for QRatio {
            type Output = QRatio;
            fn $method(self, rhs: QRatio) -> QRatio {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QRatio> for QRatio {
            type Output = QRatio;
            fn $method(self, rhs: &QRatio) -> QRatio {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QRatio> for QRatio {
    fn add_assign(&mut self, rhs: &QRatio) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QRatio> for QRatio {
    fn sub_assign(&mut self, rhs: &QRatio) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QRatio> for QRatio {
    fn mul_assign(&mut self, rhs: &QRatio) {
        *self = &*self * rhs;
    }
}

impl Sum for QRatio {
    fn sum<I: Iterator<Item = QRatio>>(iter: I) -> QRatio {
        iter.fold(QRatio::zero(), |acc, v| &acc + &v)
    }
}

impl<'a> Sum<&'a QRatio> for QRatio {
    fn sum<I: Iterator<Item = &'a QRatio>>(iter: I) -> QRatio {
        iter.fold(QRatio::zero(), |acc, v| &acc + v)
    }
}

impl fmt::Display for QRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denominator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::laurent::qnum;

    fn q(k: i64) -> QRatio {
        qnum(k).into()
    }

    #[test]
    fn field_examples() {
        let inv1 = QRatio::one() / q(1);
        assert!(field_arith(FieldOp::Add, &inv1, &-&inv1).unwrap().is_zero());
        let prod = field_arith(FieldOp::Mul, &(q(2) / q(1)), &(q(1) / q(2))).unwrap();
        assert!(prod.is_one());
        // [6]/[2] = q^2 + 1 + q^-2
        let ratio = field_arith(FieldOp::Div, &q(6), &q(2)).unwrap();
        let expected = QLaurent::from_terms([
            (4, BigRational::one()),
            (0, BigRational::one()),
            (-4, BigRational::one()),
        ]);
        assert_eq!(ratio.as_laurent(), Some(&expected));
        assert_eq!(
            field_arith(FieldOp::Div, &q(1), &QRatio::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn denominator_normalization() {
        // 1 / (-2 x^3 + 2 x) -> numerator absorbs the scalar and x power
        let den = QLaurent::from_terms([
            (3, BigRational::from_integer((-2).into())),
            (1, BigRational::from_integer(2.into())),
        ]);
        let v = QRatio::from_laurents(&QLaurent::one(), &den).unwrap();
        let d = v.denominator();
        assert_eq!(d.min_exponent(), Some(0));
        assert!(d.coefficient(d.max_exponent().unwrap()) > BigRational::zero());
        let back = &v * &QRatio::from(den);
        assert!(back.is_one());
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let f = q(1).recip().unwrap();
        assert_eq!(f.substitute_power(2), q(2).recip().unwrap());
        let a = &q(3) / &(&q(1) * &q(2));
        let b = &q(5) / &q(4) + QRatio::from(3);
        for m in 1..4 {
            assert_eq!(
                (&a + &b).substitute_power(m),
                a.substitute_power(m) + b.substitute_power(m)
            );
            assert_eq!(
                (&a * &b).substitute_power(m),
                a.substitute_power(m) * b.substitute_power(m)
            );
        }
    }

    #[test]
    fn addition_with_shared_factors() {
        // 1/[1]^2 - 1/[2] = 2 x^-1 / ([1][2]) -> check by clearing
        let a = QRatio::one() / (&q(1) * &q(1));
        let b = QRatio::one() / q(2);
        let diff = &a - &b;
        let expected =
            QRatio::x_pow(-1).scale(&BigRational::from_integer(2.into())) / (&q(1) * &q(2));
        assert_eq!(diff, expected);
    }
}
