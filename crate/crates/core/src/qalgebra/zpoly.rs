//! Dense univariate integer polynomials, ascending coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^k - 1`.
    #[cfg(test)]
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of vanishing low-order coefficients.
    pub fn low_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn div_scalar_exact(&self, divisor: &BigInt) -> Self {
        if divisor.is_one() {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / divisor).collect(),
        }
    }

    /// Primitive part with positive leading coefficient, together with the
    /// signed factor removed.
    pub fn primitive(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        (c.clone(), self.div_scalar_exact(&c))
    }

    /// `x -> x^m`.
    pub fn inflate(&self, m: usize) -> Self {
        if m == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Self { coeffs }
    }

    /// Exact division in `Z[x]`; `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if dlen == 1 {
            let d = &divisor.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(Self::new(out));
        }
        if self.coeffs.len() < dlen {
            return None;
        }
        let lead = divisor.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Cheap necessary condition for `divisor | self`: divisibility of the
    /// values at 2 and 3.
    pub fn may_divide(&self, divisor: &ZPoly) -> bool {
        [2, 3].iter().all(|&p| {
            let point = BigInt::from(p);
            let d = divisor.eval(&point);
            d.is_zero() || (self.eval(&point) % d).is_zero()
        })
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &ZPoly) -> ZPoly {
        let dlen = divisor.coeffs.len();
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() >= dlen {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() + 1 - dlen;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (j, d) in divisor.coeffs[..dlen - 1].iter().enumerate() {
                rem[shift + j] -= &top * d;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        ZPoly::new(rem)
    }

    /// Value at an integer point.
    fn eval(&self, point: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * point + c;
        }
        acc
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Primitive gcd with positive leading coefficient. Tries the integer
    /// evaluation heuristic first, then primitive remainder sequences.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive().1;
        }
        if other.is_zero() {
            return self.primitive().1;
        }
        let a = self.primitive().1;
        let b = other.primitive().1;
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return ZPoly::one();
        }
        if a == b {
            return a;
        }
        if let Some(g) = heuristic_gcd(&a, &b) {
            return g;
        }
        primitive_prs_gcd(a, b)
    }
}

fn primitive_prs_gcd(mut a: ZPoly, mut b: ZPoly) -> ZPoly {
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive().1;
    }
    a.primitive().1
}

/// Heuristic polynomial gcd: evaluate at a large integer, take the integer
/// gcd, and lift it back by balanced base-`xi` digits. Every candidate is
/// verified by exact division.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let bound = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        let ga = a.eval(&xi);
        let gb = b.eval(&xi);
        let h = ga.gcd(&gb);
        if !h.is_zero() {
            let candidate = lift_digits(h, &xi).primitive().1;
            if !candidate.is_zero()
                && a.div_exact(&candidate).is_some()
                && b.div_exact(&candidate).is_some()
            {
                return Some(candidate);
            }
        }
        // next evaluation point
        xi = (&xi * 73794u32) / 27011u32 + 1u32;
    }
    None
}

fn lift_digits(mut h: BigInt, xi: &BigInt) -> ZPoly {
    let half = xi / 2u32;
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let mut digit = h.mod_floor(xi);
        if digit > half {
            digit -= xi;
        }
        h = (h - &digit) / xi;
        coeffs.push(digit);
    }
    ZPoly::new(coeffs)
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        ZPoly::new(coeffs)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if let Some(fast) = small_mul(&self.coeffs, &rhs.coeffs) {
            return ZPoly::new(fast);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ZPoly::new(coeffs)
    }
}

/// Machine-word convolution when every product and partial sum fits in
/// `i128`.
fn small_mul(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let to_small = |v: &[BigInt]| -> Option<Vec<i64>> { v.iter().map(|c| c.to_i64()).collect() };
    let sa = to_small(a)?;
    let sb = to_small(b)?;
    let bits = |v: &[i64]| {
        v.iter()
            .map(|c| 64 - c.unsigned_abs().leading_zeros())
            .max()
            .unwrap_or(0)
    };
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros();
    if bits(&sa) + bits(&sb) + len_bits > 126 {
        return None;
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in sa.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in sb.iter().enumerate() {
            out[i + j] += x as i128 * y as i128;
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}
